//! Seeded random generators for every syntactic category.
//!
//! All output is deterministic per seed. Size budgets bound the number of
//! operator nodes (see `op_count` on each type); atoms and literal runs are
//! free. Generated values are always well-formed: negation is generated
//! only over tests, `bot` is kept out of concatenation operands so widths
//! stay inferable from text, and `dup` is kept out of star bodies so star
//! evaluation terminates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Cube, MatchExpr, Trit};
use crate::lba::{HeadMove, Lba, TapeSym};
use crate::netkat::{FieldSpec, History, NkTerm};
use crate::packet::{Packet, PacketSet};
use crate::table::{Table, TableRule};
use crate::term::Term;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn range(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn bool(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn packet(&mut self, width: u32) -> Packet {
        let value = self.rng.gen_range(0..(1u64 << width)) as u32;
        Packet::new(width, value).expect("value in range")
    }

    /// A uniformly random subset of the width-`width` packet space.
    pub fn packet_set(&mut self, width: u32) -> PacketSet {
        let mut set = PacketSet::empty(width);
        for value in 0..(1u64 << width) {
            if self.bool() {
                set.insert(Packet::new(width, value as u32).expect("value in range"));
            }
        }
        set
    }

    pub fn trit(&mut self) -> Trit {
        match self.range(0, 2) {
            0 => Trit::Zero,
            1 => Trit::One,
            _ => Trit::Any,
        }
    }

    pub fn cube(&mut self, width: u32) -> Cube {
        Cube::new((0..width).map(|_| self.trit()).collect())
    }

    /// A match expression of exactly the requested width.
    pub fn match_expr(&mut self, width: u32, budget: usize) -> MatchExpr {
        self.expr_inner(width, budget, true)
    }

    fn expr_inner(&mut self, width: u32, budget: usize, allow_bot: bool) -> MatchExpr {
        if width == 0 {
            return if allow_bot && self.chance(0.2) {
                MatchExpr::bot(0)
            } else {
                MatchExpr::Empty
            };
        }
        if budget == 0 || self.chance(0.25) {
            if allow_bot && self.chance(0.1) {
                return MatchExpr::bot(width);
            }
            return self.cube(width).to_expr();
        }
        let rest = budget - 1;
        match self.range(0, 4) {
            0 => {
                let (bl, br) = self.split_budget(rest);
                MatchExpr::union(
                    self.expr_inner(width, bl, allow_bot),
                    self.expr_inner(width, br, allow_bot),
                )
                .expect("equal widths")
            }
            1 => {
                let (bl, br) = self.split_budget(rest);
                MatchExpr::inter(
                    self.expr_inner(width, bl, allow_bot),
                    self.expr_inner(width, br, allow_bot),
                )
                .expect("equal widths")
            }
            2 => MatchExpr::compl(self.expr_inner(width, rest, allow_bot)),
            _ => {
                if width < 2 {
                    return self.cube(width).to_expr();
                }
                let left = self.range(1, width - 1);
                let (bl, br) = self.split_budget(rest);
                MatchExpr::concat(
                    self.expr_inner(left, bl, false),
                    self.expr_inner(width - left, br, false),
                )
            }
        }
    }

    fn split_budget(&mut self, budget: usize) -> (usize, usize) {
        if budget == 0 {
            return (0, 0);
        }
        let left = self.rng.gen_range(0..=budget);
        (left, budget - left)
    }

    /// A term over packets of size `n`.
    pub fn term(&mut self, n: u32, budget: usize) -> Term {
        if budget == 0 || self.chance(0.2) {
            return self.term_leaf(n);
        }
        let rest = budget - 1;
        match self.range(0, 5) {
            0 => {
                let (bl, br) = self.split_budget(rest);
                Term::plus(self.term(n, bl), self.term(n, br))
            }
            1 | 2 => {
                let (bl, br) = self.split_budget(rest);
                Term::seq(self.term(n, bl), self.term(n, br))
            }
            3 => Term::star(self.term(n, rest)),
            4 => Term::not(self.test_term(n, rest)),
            _ => Term::test(self.expr_inner(n, rest, true)),
        }
    }

    fn term_leaf(&mut self, n: u32) -> Term {
        match self.range(0, 5) {
            0 => Term::Bot,
            1 => Term::Top,
            2 | 3 => Term::assign(self.range(1, n), self.bool()),
            _ => Term::test(self.cube(n).to_expr()),
        }
    }

    /// A test (negation-closed fragment) over packets of size `n`.
    pub fn test_term(&mut self, n: u32, budget: usize) -> Term {
        if budget == 0 || self.chance(0.3) {
            return match self.range(0, 3) {
                0 => Term::Bot,
                1 => Term::Top,
                _ => Term::test(self.cube(n).to_expr()),
            };
        }
        let rest = budget - 1;
        match self.range(0, 3) {
            0 => {
                let (bl, br) = self.split_budget(rest);
                Term::plus(self.test_term(n, bl), self.test_term(n, br))
            }
            1 => {
                let (bl, br) = self.split_budget(rest);
                Term::seq(self.test_term(n, bl), self.test_term(n, br))
            }
            2 => Term::not(self.test_term(n, rest)),
            _ => Term::test(self.expr_inner(n, rest, true)),
        }
    }

    /// A field layout with up to `max_fields` fields totalling at most
    /// `max_total_bits` bits.
    pub fn field_spec(&mut self, max_fields: u32, max_total_bits: u32) -> FieldSpec {
        let count = self.range(1, max_fields.min(max_total_bits));
        let mut remaining = max_total_bits;
        let mut fields = Vec::new();
        for i in 1..=count {
            let left_after = count - i;
            let bits = self.range(1, remaining - left_after);
            fields.push((format!("f{i}"), bits));
            remaining -= bits;
        }
        FieldSpec::new(fields).expect("valid spec by construction")
    }

    /// A NetKAT term over `spec`. `dup` appears only when `allow_dup` is
    /// set, and never inside a star body.
    pub fn nk_term(&mut self, spec: &FieldSpec, budget: usize, allow_dup: bool) -> NkTerm {
        if budget == 0 || self.chance(0.2) {
            return self.nk_leaf(spec, allow_dup);
        }
        let rest = budget - 1;
        match self.range(0, 4) {
            0 => {
                let (bl, br) = self.split_budget(rest);
                NkTerm::plus(
                    self.nk_term(spec, bl, allow_dup),
                    self.nk_term(spec, br, allow_dup),
                )
            }
            1 | 2 => {
                let (bl, br) = self.split_budget(rest);
                NkTerm::seq(
                    self.nk_term(spec, bl, allow_dup),
                    self.nk_term(spec, br, allow_dup),
                )
            }
            3 => NkTerm::star(self.nk_term(spec, rest, false)),
            _ => NkTerm::not(self.nk_test(spec, rest)),
        }
    }

    fn nk_leaf(&mut self, spec: &FieldSpec, allow_dup: bool) -> NkTerm {
        if allow_dup && self.chance(0.15) {
            return NkTerm::Dup;
        }
        let (name, bits) = self.pick_field(spec);
        let value = self.rng.gen_range(0..(1u64 << bits));
        match self.range(0, 3) {
            0 => NkTerm::Zero,
            1 => NkTerm::One,
            2 => NkTerm::test(name, value),
            _ => NkTerm::assign(name, value),
        }
    }

    fn nk_test(&mut self, spec: &FieldSpec, budget: usize) -> NkTerm {
        if budget == 0 || self.chance(0.3) {
            let (name, bits) = self.pick_field(spec);
            let value = self.rng.gen_range(0..(1u64 << bits));
            return match self.range(0, 2) {
                0 => NkTerm::Zero,
                1 => NkTerm::One,
                _ => NkTerm::test(name, value),
            };
        }
        let rest = budget - 1;
        match self.range(0, 2) {
            0 => {
                let (bl, br) = self.split_budget(rest);
                NkTerm::plus(self.nk_test(spec, bl), self.nk_test(spec, br))
            }
            1 => {
                let (bl, br) = self.split_budget(rest);
                NkTerm::seq(self.nk_test(spec, bl), self.nk_test(spec, br))
            }
            _ => NkTerm::not(self.nk_test(spec, rest)),
        }
    }

    fn pick_field(&mut self, spec: &FieldSpec) -> (String, u32) {
        let fields = spec.fields();
        let (name, bits) = &fields[self.rng.gen_range(0..fields.len())];
        (name.clone(), *bits)
    }

    /// A history of 1..=`max_len` packets over the field layout's total width.
    pub fn history(&mut self, spec: &FieldSpec, max_len: u32) -> History {
        let width = spec.total_bits();
        let len = self.range(1, max_len);
        History::new((0..len).map(|_| self.packet(width)).collect()).expect("nonempty")
    }

    /// A table of up to `max_rules` rules (possibly none) at the given width.
    pub fn table(&mut self, width: u32, max_rules: u32) -> Table {
        let k = self.range(0, max_rules);
        let rules = (0..k)
            .map(|_| {
                let pattern = self.cube(width);
                let actions = (0..self.range(0, 3))
                    .map(|_| (self.range(1, width), self.bool()))
                    .collect();
                TableRule { pattern, actions }
            })
            .collect();
        Table::new(width, rules).expect("valid by construction")
    }

    /// A well-formed machine with 3 or 4 states and the given tape length.
    pub fn lba(&mut self, tape_len: u32) -> Lba {
        let mut states = vec!["s".to_string(), "t".to_string(), "r".to_string()];
        if self.bool() {
            states.push("q".to_string());
        }
        let non_halt: Vec<String> = states
            .iter()
            .filter(|s| *s != "t" && *s != "r")
            .cloned()
            .collect();
        let count = self.range(1, 6);
        let mut transitions = Vec::new();
        for _ in 0..count {
            let from = non_halt[self.rng.gen_range(0..non_halt.len())].clone();
            let to = states[self.rng.gen_range(0..states.len())].clone();
            let (read, write, mv) = match self.range(0, 3) {
                0 => (TapeSym::LeftMark, TapeSym::LeftMark, HeadMove::Right),
                1 => (TapeSym::RightMark, TapeSym::RightMark, HeadMove::Left),
                _ => {
                    let read = if self.bool() {
                        TapeSym::Zero
                    } else {
                        TapeSym::One
                    };
                    let write = if self.bool() {
                        TapeSym::Zero
                    } else {
                        TapeSym::One
                    };
                    let mv = if self.bool() {
                        HeadMove::Left
                    } else {
                        HeadMove::Right
                    };
                    (read, write, mv)
                }
            };
            transitions.push((from, read, to, write, mv));
        }
        Lba::new(states, "s", "t", "r", tape_len, transitions).expect("valid by construction")
    }
}
