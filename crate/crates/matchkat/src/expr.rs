//! Ternary match expressions over fixed-width binary strings.
//!
//! An expression of width `n` denotes a subset of the `2^n` binary strings of
//! that width. The leaves are the single-bit literals `0`, `1` and the
//! don't-care `x`, the empty expression (width 0) and bottom (matches
//! nothing); expressions combine by concatenation, union, intersection and
//! complement. [`interp`] computes the denoted set exactly, [`to_dnf`]
//! rewrites into a union of cubes, and [`expr_equiv`] decides semantic
//! equality, producing a witness string on failure.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};
use crate::packet::{Packet, PacketSet, DEFAULT_WIDTH_CAP};

/// A single ternary symbol: match 0, match 1, or match either.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trit {
    Zero,
    One,
    Any,
}

impl Trit {
    pub fn matches(self, bit: bool) -> bool {
        match self {
            Trit::Zero => !bit,
            Trit::One => bit,
            Trit::Any => true,
        }
    }

    pub fn from_char(c: char) -> Option<Trit> {
        match c {
            '0' => Some(Trit::Zero),
            '1' => Some(Trit::One),
            'x' => Some(Trit::Any),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Trit::Zero => '0',
            Trit::One => '1',
            Trit::Any => 'x',
        }
    }

    fn intersect(self, other: Trit) -> Option<Trit> {
        match (self, other) {
            (Trit::Any, t) | (t, Trit::Any) => Some(t),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }

    fn flipped(self) -> Trit {
        match self {
            Trit::Zero => Trit::One,
            Trit::One => Trit::Zero,
            Trit::Any => Trit::Any,
        }
    }
}

/// Syntax tree of a match expression.
///
/// Bottom carries a width tag so that width is total on syntax; all bottoms
/// of one width compare equal and every bottom denotes the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MatchExpr {
    /// The empty expression, matching only the empty string (width 0).
    Empty,
    /// Matches nothing, at the tagged width.
    Bot(u32),
    Lit(Trit),
    Concat(Box<MatchExpr>, Box<MatchExpr>),
    Union(Box<MatchExpr>, Box<MatchExpr>),
    Inter(Box<MatchExpr>, Box<MatchExpr>),
    Compl(Box<MatchExpr>),
}

impl MatchExpr {
    pub fn empty() -> MatchExpr {
        MatchExpr::Empty
    }

    pub fn bot(width: u32) -> MatchExpr {
        MatchExpr::Bot(width)
    }

    pub fn lit(t: Trit) -> MatchExpr {
        MatchExpr::Lit(t)
    }

    pub fn zero() -> MatchExpr {
        MatchExpr::Lit(Trit::Zero)
    }

    pub fn one() -> MatchExpr {
        MatchExpr::Lit(Trit::One)
    }

    pub fn any() -> MatchExpr {
        MatchExpr::Lit(Trit::Any)
    }

    /// The wildcard of the given width: a run of `x` literals, or the empty
    /// expression at width 0.
    pub fn top(width: u32) -> MatchExpr {
        MatchExpr::literal_run(&vec![Trit::Any; width as usize])
    }

    /// Left-nested concatenation of single-bit literals. An empty slice
    /// yields the empty expression.
    pub fn literal_run(trits: &[Trit]) -> MatchExpr {
        let mut iter = trits.iter();
        let first = match iter.next() {
            None => return MatchExpr::Empty,
            Some(&t) => MatchExpr::Lit(t),
        };
        iter.fold(first, |acc, &t| MatchExpr::concat(acc, MatchExpr::Lit(t)))
    }

    pub fn concat(left: MatchExpr, right: MatchExpr) -> MatchExpr {
        MatchExpr::Concat(Box::new(left), Box::new(right))
    }

    pub fn union(left: MatchExpr, right: MatchExpr) -> Result<MatchExpr, Error> {
        if left.width() != right.width() {
            return Err(Error::WidthMismatch {
                left: left.width(),
                right: right.width(),
            });
        }
        Ok(MatchExpr::Union(Box::new(left), Box::new(right)))
    }

    pub fn inter(left: MatchExpr, right: MatchExpr) -> Result<MatchExpr, Error> {
        if left.width() != right.width() {
            return Err(Error::WidthMismatch {
                left: left.width(),
                right: right.width(),
            });
        }
        Ok(MatchExpr::Inter(Box::new(left), Box::new(right)))
    }

    pub fn compl(e: MatchExpr) -> MatchExpr {
        MatchExpr::Compl(Box::new(e))
    }

    /// Width of the expression. Assumes a width-consistent tree; use
    /// [`MatchExpr::validate`] on untrusted input.
    pub fn width(&self) -> u32 {
        match self {
            MatchExpr::Empty => 0,
            MatchExpr::Bot(w) => *w,
            MatchExpr::Lit(_) => 1,
            MatchExpr::Concat(l, r) => l.width() + r.width(),
            MatchExpr::Union(l, _) | MatchExpr::Inter(l, _) => l.width(),
            MatchExpr::Compl(e) => e.width(),
        }
    }

    /// Recomputes the width, checking that union and intersection combine
    /// equal-width operands throughout.
    pub fn validate(&self) -> Result<u32, Error> {
        match self {
            MatchExpr::Empty => Ok(0),
            MatchExpr::Bot(w) => Ok(*w),
            MatchExpr::Lit(_) => Ok(1),
            MatchExpr::Concat(l, r) => Ok(l.validate()? + r.validate()?),
            MatchExpr::Union(l, r) | MatchExpr::Inter(l, r) => {
                let (wl, wr) = (l.validate()?, r.validate()?);
                if wl != wr {
                    return Err(Error::WidthMismatch {
                        left: wl,
                        right: wr,
                    });
                }
                Ok(wl)
            }
            MatchExpr::Compl(e) => e.validate(),
        }
    }

    /// Whether the expression matches the bits of `packet` starting at the
    /// base-1 position `start`.
    fn matches_range(&self, packet: &Packet, start: u32) -> bool {
        match self {
            MatchExpr::Empty => true,
            MatchExpr::Bot(_) => false,
            MatchExpr::Lit(t) => t.matches(packet.bit(start)),
            MatchExpr::Concat(l, r) => {
                l.matches_range(packet, start) && r.matches_range(packet, start + l.width())
            }
            MatchExpr::Union(l, r) => {
                l.matches_range(packet, start) || r.matches_range(packet, start)
            }
            MatchExpr::Inter(l, r) => {
                l.matches_range(packet, start) && r.matches_range(packet, start)
            }
            MatchExpr::Compl(e) => !e.matches_range(packet, start),
        }
    }

    /// Per-string membership test: whether `packet` is in the denoted set.
    pub fn matches_packet(&self, packet: &Packet) -> bool {
        debug_assert_eq!(
            self.width(),
            packet.width(),
            "expression/packet width mismatch"
        );
        self.matches_range(packet, 1)
    }

    pub fn size(&self) -> usize {
        match self {
            MatchExpr::Empty | MatchExpr::Bot(_) | MatchExpr::Lit(_) => 1,
            MatchExpr::Concat(l, r) | MatchExpr::Union(l, r) | MatchExpr::Inter(l, r) => {
                1 + l.size() + r.size()
            }
            MatchExpr::Compl(e) => 1 + e.size(),
        }
    }

    /// Operator count: union, intersection, complement, and concatenations
    /// other than plain literal runs. Literal runs and leaves are free.
    pub fn op_count(&self) -> usize {
        match self {
            MatchExpr::Empty | MatchExpr::Bot(_) | MatchExpr::Lit(_) => 0,
            MatchExpr::Concat(l, r) => {
                if self.is_literal_run() {
                    0
                } else {
                    1 + l.op_count() + r.op_count()
                }
            }
            MatchExpr::Union(l, r) | MatchExpr::Inter(l, r) => 1 + l.op_count() + r.op_count(),
            MatchExpr::Compl(e) => 1 + e.op_count(),
        }
    }

    /// Whether the tree is a left-nested chain of literals (the shape that
    /// prints and parses as one token such as `1x0`).
    pub fn is_literal_run(&self) -> bool {
        match self {
            MatchExpr::Lit(_) => true,
            MatchExpr::Concat(l, r) => matches!(**r, MatchExpr::Lit(_)) && l.is_literal_run(),
            _ => false,
        }
    }

    pub fn as_literal_run(&self) -> Option<Vec<Trit>> {
        match self {
            MatchExpr::Lit(t) => Some(vec![*t]),
            MatchExpr::Concat(l, r) => {
                if let MatchExpr::Lit(t) = **r {
                    let mut run = l.as_literal_run()?;
                    run.push(t);
                    Some(run)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn has_inter_or_compl(&self) -> bool {
        match self {
            MatchExpr::Empty | MatchExpr::Bot(_) | MatchExpr::Lit(_) => false,
            MatchExpr::Concat(l, r) | MatchExpr::Union(l, r) => {
                l.has_inter_or_compl() || r.has_inter_or_compl()
            }
            MatchExpr::Inter(_, _) | MatchExpr::Compl(_) => true,
        }
    }
}

/// The expression testing that bit `index` of a width-`width` string equals
/// `bit`: a literal at that position surrounded by don't-cares.
pub fn point_match(index: u32, bit: bool, width: u32) -> Result<MatchExpr, Error> {
    if index < 1 || index > width {
        return Err(Error::IndexOutOfRange { index, width });
    }
    let mut trits = vec![Trit::Any; width as usize];
    trits[(index - 1) as usize] = if bit { Trit::One } else { Trit::Zero };
    Ok(MatchExpr::literal_run(&trits))
}

/// The set of strings matched by an expression, computed by the inductive
/// set clauses with the default enumeration cap.
pub fn interp(e: &MatchExpr) -> Result<PacketSet, Error> {
    interp_with_cap(e, DEFAULT_WIDTH_CAP)
}

pub fn interp_with_cap(e: &MatchExpr, cap: u32) -> Result<PacketSet, Error> {
    let width = e.validate()?;
    if width > cap {
        return Err(Error::WidthCap { width, cap });
    }
    Ok(interp_raw(e))
}

fn interp_raw(e: &MatchExpr) -> PacketSet {
    match e {
        MatchExpr::Empty => PacketSet::universe(0),
        MatchExpr::Bot(w) => PacketSet::empty(*w),
        MatchExpr::Lit(t) => {
            let mut set = PacketSet::empty(1);
            if t.matches(false) {
                set.insert(Packet::zero(1));
            }
            if t.matches(true) {
                set.insert(Packet::zero(1).with_bit(1, true));
            }
            set
        }
        MatchExpr::Concat(l, r) => interp_raw(l).concat(&interp_raw(r)),
        MatchExpr::Union(l, r) => interp_raw(l).union(&interp_raw(r)),
        MatchExpr::Inter(l, r) => interp_raw(l).intersect(&interp_raw(r)),
        MatchExpr::Compl(e) => interp_raw(e).complement(),
    }
}

/// A concatenation of ternary literals. Every cube matches at least one
/// string; the empty set has no cube form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube(Vec<Trit>);

impl Cube {
    pub fn new(trits: Vec<Trit>) -> Cube {
        Cube(trits)
    }

    pub fn all_any(width: u32) -> Cube {
        Cube(vec![Trit::Any; width as usize])
    }

    pub fn width(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn trits(&self) -> &[Trit] {
        &self.0
    }

    pub fn matches(&self, packet: &Packet) -> bool {
        debug_assert_eq!(self.width(), packet.width());
        self.0
            .iter()
            .enumerate()
            .all(|(i, t)| t.matches(packet.bit(i as u32 + 1)))
    }

    pub fn to_expr(&self) -> MatchExpr {
        MatchExpr::literal_run(&self.0)
    }

    /// Position-wise intersection; `None` when some position conflicts.
    pub fn intersect(&self, other: &Cube) -> Option<Cube> {
        debug_assert_eq!(self.width(), other.width());
        let mut trits = Vec::with_capacity(self.0.len());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            trits.push(a.intersect(b)?);
        }
        Some(Cube(trits))
    }

    pub fn concat(&self, other: &Cube) -> Cube {
        let mut trits = self.0.clone();
        trits.extend_from_slice(&other.0);
        Cube(trits)
    }

    /// This cube widened with `extra` trailing don't-care positions.
    pub fn extend_any(&self, extra: u32) -> Cube {
        let mut trits = self.0.clone();
        trits.extend(std::iter::repeat_n(Trit::Any, extra as usize));
        Cube(trits)
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{}", t.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Cube {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseError::new("empty cube string", None));
        }
        let mut trits = Vec::with_capacity(s.len());
        for (i, c) in s.char_indices() {
            match Trit::from_char(c) {
                Some(t) => trits.push(t),
                None => {
                    return Err(ParseError::new(
                        format!("invalid cube character {c:?}"),
                        Some(crate::error::SourceSpan::new(i, i + c.len_utf8())),
                    )
                    .expecting(["0", "1", "x"]))
                }
            }
        }
        Ok(Cube(trits))
    }
}

/// Disjunctive normal form: a set of cubes whose union denotes the same set
/// as the input. The result contains no intersection and no complement by
/// construction. No minimality is promised, and the expansion can be
/// exponential in the width for complement-heavy inputs.
pub fn to_dnf(e: &MatchExpr) -> Result<BTreeSet<Cube>, Error> {
    let width = e.validate()?;
    if width == 0 {
        return Err(Error::Invalid(
            "dnf requires an expression of width >= 1".into(),
        ));
    }
    if width > DEFAULT_WIDTH_CAP {
        return Err(Error::WidthCap {
            width,
            cap: DEFAULT_WIDTH_CAP,
        });
    }
    Ok(dnf_raw(e))
}

fn dnf_raw(e: &MatchExpr) -> BTreeSet<Cube> {
    match e {
        MatchExpr::Empty => [Cube::new(Vec::new())].into(),
        MatchExpr::Bot(_) => BTreeSet::new(),
        MatchExpr::Lit(t) => [Cube::new(vec![*t])].into(),
        MatchExpr::Concat(l, r) => {
            let (ls, rs) = (dnf_raw(l), dnf_raw(r));
            let mut out = BTreeSet::new();
            for a in &ls {
                for b in &rs {
                    out.insert(a.concat(b));
                }
            }
            out
        }
        MatchExpr::Union(l, r) => {
            let mut out = dnf_raw(l);
            out.extend(dnf_raw(r));
            out
        }
        MatchExpr::Inter(l, r) => intersect_cube_sets(&dnf_raw(l), &dnf_raw(r)),
        MatchExpr::Compl(inner) => complement_cubes(&dnf_raw(inner), inner.width()),
    }
}

fn intersect_cube_sets(a: &BTreeSet<Cube>, b: &BTreeSet<Cube>) -> BTreeSet<Cube> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            if let Some(c) = x.intersect(y) {
                out.insert(c);
            }
        }
    }
    out
}

/// Cube cover of the complement of a cube union, by De Morgan: intersect the
/// per-cube complements, each of which is one flipped-literal cube per fixed
/// position.
fn complement_cubes(cubes: &BTreeSet<Cube>, width: u32) -> BTreeSet<Cube> {
    let mut acc: Option<BTreeSet<Cube>> = None;
    for cube in cubes {
        let mut single = BTreeSet::new();
        for (i, &t) in cube.trits().iter().enumerate() {
            if t != Trit::Any {
                let mut trits = vec![Trit::Any; width as usize];
                trits[i] = t.flipped();
                single.insert(Cube::new(trits));
            }
        }
        acc = Some(match acc {
            None => single,
            Some(prev) => intersect_cube_sets(&prev, &single),
        });
    }
    match acc {
        // Complement of the empty set is the whole space.
        None => [Cube::all_any(width)].into(),
        Some(set) => set,
    }
}

/// Union expression over a cube set; the empty set becomes bottom.
pub fn cubes_to_expr(cubes: &BTreeSet<Cube>, width: u32) -> MatchExpr {
    let mut iter = cubes.iter();
    let first = match iter.next() {
        None => return MatchExpr::bot(width),
        Some(c) => c.to_expr(),
    };
    iter.fold(first, |acc, c| {
        MatchExpr::Union(Box::new(acc), Box::new(c.to_expr()))
    })
}

/// Outcome of a match-expression equivalence query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprEquiv {
    Equivalent,
    /// A string in the symmetric difference of the two interpretations; the
    /// numerically smallest is returned.
    Witness(Packet),
}

/// Decides whether two expressions denote the same set, by exhaustive
/// interpretation.
pub fn expr_equiv(a: &MatchExpr, b: &MatchExpr) -> Result<ExprEquiv, Error> {
    let (wa, wb) = (a.validate()?, b.validate()?);
    if wa != wb {
        return Err(Error::WidthMismatch {
            left: wa,
            right: wb,
        });
    }
    let (sa, sb) = (interp(a)?, interp(b)?);
    if sa == sb {
        Ok(ExprEquiv::Equivalent)
    } else {
        let witness = sa
            .symmetric_difference(&sb)
            .min()
            .expect("nonempty difference");
        Ok(ExprEquiv::Witness(witness))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(width: u32, strings: &[&str]) -> PacketSet {
        PacketSet::from_packets(width, strings.iter().map(|s| s.parse().unwrap())).unwrap()
    }

    fn run(s: &str) -> MatchExpr {
        let trits: Vec<Trit> = s.chars().map(|c| Trit::from_char(c).unwrap()).collect();
        MatchExpr::literal_run(&trits)
    }

    #[test]
    fn interp_top_is_full_space() {
        assert_eq!(
            interp(&MatchExpr::top(2)).unwrap(),
            set(2, &["00", "01", "10", "11"])
        );
        for n in 1..=8 {
            assert_eq!(interp(&MatchExpr::top(n)).unwrap(), PacketSet::universe(n));
        }
    }

    #[test]
    fn interp_bot_is_empty() {
        assert_eq!(interp(&MatchExpr::bot(3)).unwrap(), PacketSet::empty(3));
    }

    #[test]
    fn interp_union_of_runs() {
        let e = MatchExpr::union(run("00"), run("11")).unwrap();
        assert_eq!(interp(&e).unwrap(), set(2, &["00", "11"]));
    }

    #[test]
    fn interp_complement_of_run() {
        let e = MatchExpr::compl(run("10"));
        assert_eq!(interp(&e).unwrap(), set(2, &["00", "01", "11"]));
    }

    #[test]
    fn interp_empty_is_epsilon() {
        let s = interp(&MatchExpr::Empty).unwrap();
        assert_eq!(s.width(), 0);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn interp_respects_cap() {
        let e = MatchExpr::top(6);
        assert!(matches!(
            interp_with_cap(&e, 4),
            Err(Error::WidthCap { width: 6, cap: 4 })
        ));
    }

    #[test]
    fn matches_packet_agrees_with_interp_on_samples() {
        // The set construction and the per-string matcher are independent
        // routes to the same predicate.
        let exprs = [
            MatchExpr::compl(MatchExpr::union(run("1x0"), run("x11")).unwrap()),
            MatchExpr::inter(run("1xx"), MatchExpr::compl(run("11x"))).unwrap(),
            MatchExpr::concat(MatchExpr::union(run("0"), run("1")).unwrap(), run("x0")),
            MatchExpr::bot(3),
        ];
        for e in &exprs {
            let by_set = interp(e).unwrap();
            let by_match = PacketSet::universe(3).filter(|p| e.matches_packet(p));
            assert_eq!(by_set, by_match, "{e:?}");
        }
    }

    #[test]
    fn point_match_examples() {
        let e = point_match(2, true, 3).unwrap();
        assert_eq!(e, run("x1x"));
        assert_eq!(interp(&e).unwrap(), set(3, &["010", "011", "110", "111"]));

        assert_eq!(point_match(1, false, 1).unwrap(), MatchExpr::zero());

        let e = point_match(3, false, 3).unwrap();
        assert_eq!(e, run("xx0"));
        let expect = PacketSet::universe(3).filter(|p| !p.bit(3));
        assert_eq!(interp(&e).unwrap(), expect);

        assert!(matches!(
            point_match(4, true, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            point_match(0, true, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn dnf_of_intersection_of_runs() {
        let e = MatchExpr::inter(run("1x"), run("x1")).unwrap();
        let cubes = to_dnf(&e).unwrap();
        assert_eq!(cubes, ["11".parse::<Cube>().unwrap()].into());
    }

    #[test]
    fn dnf_of_bot_is_empty() {
        assert!(to_dnf(&MatchExpr::bot(2)).unwrap().is_empty());
    }

    #[test]
    fn dnf_of_complement_covers_the_complement() {
        let e = MatchExpr::compl(run("11"));
        let cubes = to_dnf(&e).unwrap();
        let union = cubes_to_expr(&cubes, 2);
        assert_eq!(interp(&union).unwrap(), set(2, &["00", "01", "10"]));
        assert!(!union.has_inter_or_compl());
    }

    #[test]
    fn dnf_rejects_width_zero() {
        assert!(to_dnf(&MatchExpr::Empty).is_err());
    }

    #[test]
    fn equiv_one_plus_zero_is_any() {
        let e = MatchExpr::union(MatchExpr::one(), MatchExpr::zero()).unwrap();
        assert_eq!(
            expr_equiv(&e, &MatchExpr::any()).unwrap(),
            ExprEquiv::Equivalent
        );
    }

    #[test]
    fn equiv_one_inter_zero_is_bot() {
        let e = MatchExpr::inter(MatchExpr::one(), MatchExpr::zero()).unwrap();
        assert_eq!(
            expr_equiv(&e, &MatchExpr::bot(1)).unwrap(),
            ExprEquiv::Equivalent
        );
    }

    #[test]
    fn equiv_is_reflexive() {
        let e = MatchExpr::compl(MatchExpr::union(run("1x"), run("x0")).unwrap());
        assert_eq!(expr_equiv(&e, &e).unwrap(), ExprEquiv::Equivalent);
    }

    #[test]
    fn equiv_witness_is_smallest_in_symmetric_difference() {
        // Symmetric difference of 1x and x1 is {01, 10}; 01 is smaller.
        let w = match expr_equiv(&run("1x"), &run("x1")).unwrap() {
            ExprEquiv::Witness(p) => p,
            ExprEquiv::Equivalent => panic!("expected a witness"),
        };
        assert_eq!(w.to_string(), "01");
    }

    #[test]
    fn equiv_rejects_width_mismatch() {
        assert!(matches!(
            expr_equiv(&run("1"), &run("11")),
            Err(Error::WidthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn validate_catches_inconsistent_union() {
        let bad = MatchExpr::Union(Box::new(run("1")), Box::new(run("11")));
        assert!(bad.validate().is_err());
    }

    #[test]
    fn literal_run_shape() {
        let e = run("1x0");
        assert!(e.is_literal_run());
        assert_eq!(
            e.as_literal_run().unwrap(),
            vec![Trit::One, Trit::Any, Trit::Zero]
        );
        assert_eq!(e.op_count(), 0);
        let f = MatchExpr::concat(run("1"), MatchExpr::concat(run("x"), run("0")));
        assert!(!f.is_literal_run());
    }

    #[test]
    fn duplicated_halves_capture() {
        // Two width-2n expressions capturing exactly { bb | b in 2^n }: an
        // intersection over positions of "bit i equals bit n+i", and the
        // complement of the union of the per-position mismatches. Both must
        // agree with each other and with the direct set.
        for n in 1..=3u32 {
            let pair = |i: u32, left: Trit, right: Trit| {
                let mut trits = vec![Trit::Any; 2 * n as usize];
                trits[(i - 1) as usize] = left;
                trits[(n + i - 1) as usize] = right;
                MatchExpr::literal_run(&trits)
            };
            let agree = (1..=n)
                .map(|i| {
                    MatchExpr::union(
                        pair(i, Trit::Zero, Trit::Zero),
                        pair(i, Trit::One, Trit::One),
                    )
                    .unwrap()
                })
                .reduce(|a, b| MatchExpr::inter(a, b).unwrap())
                .unwrap();
            let no_mismatch = MatchExpr::compl(
                (1..=n)
                    .map(|i| {
                        MatchExpr::union(
                            pair(i, Trit::One, Trit::Zero),
                            pair(i, Trit::Zero, Trit::One),
                        )
                        .unwrap()
                    })
                    .reduce(|a, b| MatchExpr::union(a, b).unwrap())
                    .unwrap(),
            );
            let doubled = PacketSet::from_packets(
                2 * n,
                (0..(1u64 << n)).map(|b| Packet::new(2 * n, (b << n | b) as u32).unwrap()),
            )
            .unwrap();
            assert_eq!(interp(&agree).unwrap(), doubled);
            assert_eq!(
                expr_equiv(&agree, &no_mismatch).unwrap(),
                ExprEquiv::Equivalent
            );
        }
    }
}
