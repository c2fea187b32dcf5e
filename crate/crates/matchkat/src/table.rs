//! Compilation of packet-field idioms and match-action tables into terms.
//!
//! Range copy/compare and binary increment come first; on top of those,
//! [`compile_priority`] turns a prioritized rule list into a sum with
//! negated higher-priority guards, and [`compile_counter`] into a star over
//! a metadata counter appended after the data bits.
//! [`reference_table_semantics`] is the independent first-match-wins oracle
//! both encodings are checked against.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::expr::{point_match, Cube, Trit};
use crate::packet::Packet;
use crate::term::Term;

/// An inclusive 1-based bit range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitRange {
    pub lo: u32,
    pub hi: u32,
}

impl BitRange {
    pub fn new(lo: u32, hi: u32) -> Self {
        BitRange { lo, hi }
    }

    pub fn len(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    fn check(&self, n: u32, what: &str) -> Result<(), Error> {
        if self.is_empty() {
            return Err(Error::Invalid(format!(
                "{what} range {}..{} is empty",
                self.lo, self.hi
            )));
        }
        if self.lo < 1 || self.hi > n {
            return Err(Error::Invalid(format!(
                "{what} range {}..{} not within 1..{n}",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    fn overlaps(&self, other: &BitRange) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// Copies the contents of `src` into `dst`, bit by bit, as a composition of
/// guarded sums. The ranges must have equal length and be disjoint.
pub fn encode_range_assign(src: BitRange, dst: BitRange, n: u32) -> Result<Term, Error> {
    src.check(n, "source")?;
    dst.check(n, "destination")?;
    if src.len() != dst.len() {
        return Err(Error::Invalid(format!(
            "range lengths differ: {} vs {}",
            src.len(),
            dst.len()
        )));
    }
    if src.overlaps(&dst) {
        return Err(Error::Invalid("assignment ranges overlap".into()));
    }
    Ok(Term::seq_all(
        (0..src.len()).map(|d| copy_bit(src.lo + d, dst.lo + d, n, false)),
    ))
}

/// Tests that `a` and `b` hold equal contents, bit by bit.
pub fn encode_range_test(a: BitRange, b: BitRange, n: u32) -> Result<Term, Error> {
    a.check(n, "left")?;
    b.check(n, "right")?;
    if a.len() != b.len() {
        return Err(Error::Invalid(format!(
            "range lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(Term::seq_all(
        (0..a.len()).map(|d| copy_bit(a.lo + d, b.lo + d, n, true)),
    ))
}

/// `src≃0·dst←0 + src≃1·dst←1`, with the assignment replaced by a point
/// test in the test variant.
fn copy_bit(src: u32, dst: u32, n: u32, test_only: bool) -> Term {
    let branch = |bit: bool| {
        let guard = Term::test(point_match(src, bit, n).expect("checked range"));
        let act = if test_only {
            Term::test(point_match(dst, bit, n).expect("checked range"))
        } else {
            Term::assign(dst, bit)
        };
        Term::seq(guard, act)
    };
    Term::plus(branch(false), branch(true))
}

/// The term incrementing the binary value in bits `i..=j` modulo
/// `2^(j-i+1)`, leaving all other bits untouched. An empty range (`j < i`)
/// yields skip; the carry past the top bit is absorbed, so the all-ones
/// value wraps to zero.
pub fn encode_increment(i: u32, j: u32, n: u32) -> Result<Term, Error> {
    if j < i {
        return Ok(Term::Top);
    }
    BitRange::new(i, j).check(n, "increment")?;
    Ok(increment_raw(i, j, n))
}

fn increment_raw(i: u32, j: u32, n: u32) -> Term {
    if j < i {
        return Term::Top;
    }
    let low_zero = Term::seq(
        Term::test(point_match(j, false, n).expect("checked range")),
        Term::assign(j, true),
    );
    let low_one = Term::seq(
        Term::test(point_match(j, true, n).expect("checked range")),
        Term::seq(Term::assign(j, false), increment_raw(i, j - 1, n)),
    );
    Term::plus(low_zero, low_one)
}

/// Assigns the constant `value` (MSB first) into the bits of `range`.
pub(crate) fn assign_range_const(range: BitRange, value: u64, n: u32) -> Term {
    debug_assert!(range.hi <= n && !range.is_empty());
    let bits = range.len();
    Term::seq_all(
        (1..=bits).map(|j| Term::assign(range.lo + j - 1, (value >> (bits - j)) & 1 == 1)),
    )
}

/// Tests that the bits of `range` hold the constant `value`, as a single
/// cube with fixed positions over the range.
pub(crate) fn test_range_const(range: BitRange, value: u64, n: u32) -> Term {
    debug_assert!(range.hi <= n && !range.is_empty());
    let bits = range.len();
    let mut trits = vec![Trit::Any; n as usize];
    for j in 1..=bits {
        let bit = (value >> (bits - j)) & 1 == 1;
        trits[(range.lo + j - 2) as usize] = if bit { Trit::One } else { Trit::Zero };
    }
    Term::test(Cube::new(trits).to_expr())
}

/// One rule of a match-action table: a ternary pattern over the full packet
/// and a list of bit writes applied left to right (later writes win).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRule {
    pub pattern: Cube,
    pub actions: Vec<(u32, bool)>,
}

/// A prioritized rule list; the first rule is the highest priority.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    width: u32,
    rules: Vec<TableRule>,
}

impl Table {
    pub fn new(width: u32, rules: Vec<TableRule>) -> Result<Self, Error> {
        if width == 0 {
            return Err(Error::Invalid("table width must be at least 1".into()));
        }
        for (r, rule) in rules.iter().enumerate() {
            if rule.pattern.width() != width {
                return Err(Error::WidthMismatch {
                    left: rule.pattern.width(),
                    right: width,
                });
            }
            for &(bit, _) in &rule.actions {
                if bit < 1 || bit > width {
                    return Err(Error::Invalid(format!(
                        "rule {}: action bit {bit} out of range 1..={width}",
                        r + 1
                    )));
                }
            }
        }
        Ok(Table { width, rules })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn rules(&self) -> &[TableRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn actions_term(actions: &[(u32, bool)]) -> Term {
    Term::seq_all(actions.iter().map(|&(bit, value)| Term::assign(bit, value)))
}

/// First-match-wins encoding: each rule is guarded by the negations of all
/// higher-priority patterns, and the guarded rules are summed. The result
/// has `k-1` sums and `k(k-1)/2` negated guards for a `k`-rule table; the
/// empty table compiles to drop.
pub fn compile_priority(table: &Table) -> Term {
    let summands = table.rules.iter().enumerate().map(|(r, rule)| {
        let mut parts: Vec<Term> = table.rules[..r]
            .iter()
            .map(|higher| Term::not(Term::test(higher.pattern.to_expr())))
            .collect();
        parts.push(Term::test(rule.pattern.to_expr()));
        parts.push(actions_term(&rule.actions));
        Term::seq_all(parts)
    });
    Term::plus_all(summands)
}

/// Which guard the counter encoding negates on a failed match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CounterVariant {
    /// Negate the current rule's own guard.
    #[default]
    Fixed,
    /// Negate the first rule's guard on every failure branch. Kept for
    /// comparison; it strands packets that match rule 1's pattern while a
    /// later rule is being tried, so it does not agree with the priority
    /// encoding in general.
    Paper,
}

/// A counter-encoded table: the term operates on packets widened with
/// `meta_bits` counter bits appended after the `data_width` data bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterEncoding {
    pub term: Term,
    pub data_width: u32,
    pub meta_bits: u32,
    pub counter: BitRange,
}

impl CounterEncoding {
    pub fn total_width(&self) -> u32 {
        self.data_width + self.meta_bits
    }
}

fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}

/// Counter encoding of a table over `k` rules: initialize the counter, then
/// iterate a sum in which counter value `r` tries rule `r`; a match runs the
/// rule's actions and jumps the counter to the success value `k+1`, a failed
/// match advances the counter. A trailing test keeps exactly the packets
/// whose counter reached the success value.
///
/// The success value is reserved for matches: the failure branch of the last
/// rule moves to a distinct sink value `k+2` instead of incrementing into
/// `k+1`, and a table with no rules initializes straight to the sink, so
/// unmatched packets are dropped exactly as in the priority encoding. The
/// counter therefore needs `ceil(log2(k+3))` bits.
pub fn compile_counter(table: &Table, variant: CounterVariant) -> Result<CounterEncoding, Error> {
    let n = table.width;
    let k = table.rules.len() as u64;
    let meta_bits = ceil_log2(k + 3);
    let total = n
        .checked_add(meta_bits)
        .filter(|&t| t <= crate::packet::MAX_WIDTH)
        .ok_or(Error::WidthCap {
            width: n + meta_bits,
            cap: crate::packet::MAX_WIDTH,
        })?;
    let counter = BitRange::new(n + 1, n + meta_bits);
    let success = k + 1;
    let sink = k + 2;

    let init = assign_range_const(counter, if k == 0 { sink } else { 1 }, total);
    let summands = table.rules.iter().enumerate().map(|(idx, rule)| {
        let r = idx as u64 + 1;
        let guard_pattern = match variant {
            CounterVariant::Fixed => &rule.pattern,
            CounterVariant::Paper => &table.rules[0].pattern,
        };
        let matched = Term::seq_all([
            Term::test(rule.pattern.extend_any(meta_bits).to_expr()),
            actions_term(&rule.actions),
            assign_range_const(counter, success, total),
        ]);
        let advance = if r == k {
            assign_range_const(counter, sink, total)
        } else {
            encode_increment(counter.lo, counter.hi, total).expect("counter range valid")
        };
        let failed = Term::seq(
            Term::not(Term::test(guard_pattern.extend_any(meta_bits).to_expr())),
            advance,
        );
        Term::seq(
            test_range_const(counter, r, total),
            Term::plus(matched, failed),
        )
    });
    let term = Term::seq_all([
        init,
        Term::star(Term::plus_all(summands)),
        test_range_const(counter, success, total),
    ]);
    Ok(CounterEncoding {
        term,
        data_width: n,
        meta_bits,
        counter,
    })
}

/// First-match-wins oracle: scans rules in priority order, applies the
/// actions of the first matching rule, and drops the packet when nothing
/// matches.
pub fn reference_table_semantics(table: &Table, packet: &Packet) -> Option<Packet> {
    assert_eq!(table.width, packet.width(), "table/packet width mismatch");
    for rule in &table.rules {
        if rule.pattern.matches(packet) {
            let mut out = *packet;
            for &(bit, value) in &rule.actions {
                out = out.with_bit(bit, value);
            }
            return Some(out);
        }
    }
    None
}

/// How to combine pipeline stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineMode {
    Sequence,
    Parallel,
    Loop,
}

/// Folds stage terms with `;`, `+`, or wraps a single stage in star.
pub fn compose_pipeline(stages: Vec<Term>, mode: PipelineMode) -> Result<Term, Error> {
    match mode {
        PipelineMode::Sequence => Ok(Term::seq_all(stages)),
        PipelineMode::Parallel => Ok(Term::plus_all(stages)),
        PipelineMode::Loop => {
            if stages.len() != 1 {
                return Err(Error::Invalid(format!(
                    "loop mode requires exactly one stage, got {}",
                    stages.len()
                )));
            }
            Ok(Term::star(stages.into_iter().next().expect("one stage")))
        }
    }
}

/// On-disk table document.
#[derive(Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub width: u32,
    pub rules: Vec<TableRuleFile>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TableRuleFile {
    pub pattern: String,
    pub actions: Vec<TableActionFile>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TableActionFile {
    pub bit: u32,
    pub value: u8,
}

impl TryFrom<TableFile> for Table {
    type Error = Error;

    fn try_from(file: TableFile) -> Result<Table, Error> {
        let mut rules = Vec::with_capacity(file.rules.len());
        for rule in file.rules {
            let pattern: Cube = rule.pattern.parse().map_err(Error::Parse)?;
            let mut actions = Vec::with_capacity(rule.actions.len());
            for a in rule.actions {
                match a.value {
                    0 => actions.push((a.bit, false)),
                    1 => actions.push((a.bit, true)),
                    other => {
                        return Err(Error::Invalid(format!(
                            "action value must be 0 or 1, got {other}"
                        )))
                    }
                }
            }
            rules.push(TableRule { pattern, actions });
        }
        Table::new(file.width, rules)
    }
}

impl From<&Table> for TableFile {
    fn from(table: &Table) -> TableFile {
        TableFile {
            width: table.width,
            rules: table
                .rules
                .iter()
                .map(|r| TableRuleFile {
                    pattern: r.pattern.to_string(),
                    actions: r
                        .actions
                        .iter()
                        .map(|&(bit, value)| TableActionFile {
                            bit,
                            value: u8::from(value),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packet::PacketSet;
    use crate::term::{eval, term_equiv, TermEquiv};

    fn set(width: u32, strings: &[&str]) -> PacketSet {
        PacketSet::from_packets(width, strings.iter().map(|s| s.parse().unwrap())).unwrap()
    }

    fn cube(s: &str) -> Cube {
        s.parse().unwrap()
    }

    fn two_rule_table() -> Table {
        Table::new(
            2,
            vec![
                TableRule {
                    pattern: cube("1x"),
                    actions: vec![(2, true)],
                },
                TableRule {
                    pattern: cube("x1"),
                    actions: vec![(1, false)],
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn range_copy_moves_bits() {
        let t = encode_range_assign(BitRange::new(1, 1), BitRange::new(2, 2), 2).unwrap();
        assert_eq!(eval(&t, &set(2, &["10"])).unwrap(), set(2, &["11"]));
        assert_eq!(eval(&t, &set(2, &["01"])).unwrap(), set(2, &["00"]));
    }

    #[test]
    fn range_copy_onto_itself_is_an_error() {
        assert!(encode_range_assign(BitRange::new(1, 2), BitRange::new(1, 2), 4).is_err());
        assert!(encode_range_assign(BitRange::new(1, 2), BitRange::new(2, 3), 4).is_err());
    }

    #[test]
    fn range_copy_length_mismatch_is_an_error() {
        assert!(encode_range_assign(BitRange::new(1, 2), BitRange::new(3, 5), 6).is_err());
    }

    #[test]
    fn range_test_keeps_equal_ranges() {
        let t = encode_range_test(BitRange::new(1, 2), BitRange::new(3, 4), 4).unwrap();
        // 0101: bits 1..2 = 01, bits 3..4 = 01, kept.
        assert_eq!(eval(&t, &set(4, &["0101"])).unwrap(), set(4, &["0101"]));
        // 0110: 01 vs 10, dropped.
        assert!(eval(&t, &set(4, &["0110"])).unwrap().is_empty());
    }

    #[test]
    fn increment_steps_and_wraps() {
        let t = encode_increment(1, 2, 2).unwrap();
        assert_eq!(eval(&t, &set(2, &["01"])).unwrap(), set(2, &["10"]));
        assert_eq!(eval(&t, &set(2, &["11"])).unwrap(), set(2, &["00"]));
    }

    #[test]
    fn empty_increment_range_is_skip() {
        let t = encode_increment(3, 2, 4).unwrap();
        assert_eq!(
            term_equiv(&t, &Term::Top, 4).unwrap(),
            TermEquiv::Equivalent
        );
    }

    #[test]
    fn increment_rejects_out_of_range() {
        assert!(encode_increment(1, 5, 4).is_err());
        assert!(encode_increment(0, 2, 4).is_err());
    }

    #[test]
    fn increment_matches_arithmetic_oracle() {
        for n in 1..=4u32 {
            for i in 1..=n {
                for j in i..=n {
                    let width = j - i + 1;
                    let t = encode_increment(i, j, n).unwrap();
                    for v in 0..(1u32 << n) {
                        let p = Packet::new(n, v).unwrap();
                        let out = eval(&t, &PacketSet::singleton(p)).unwrap();
                        let mut expect = p;
                        let old =
                            (1..=width).fold(0u32, |acc, d| acc << 1 | u32::from(p.bit(i + d - 1)));
                        let new = (old + 1) % (1 << width);
                        for d in 1..=width {
                            expect = expect.with_bit(i + d - 1, (new >> (width - d)) & 1 == 1);
                        }
                        assert_eq!(out, PacketSet::singleton(expect), "n={n} i={i} j={j} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn priority_encoding_examples() {
        // Expected outputs computed with reference_table_semantics: 10 and
        // 11 match rule 1 (set bit 2), 01 falls to rule 2 whose action
        // writes bit 1 with the value it already has, 00 matches nothing.
        let table = two_rule_table();
        assert_eq!(
            reference_table_semantics(&table, &"10".parse().unwrap())
                .unwrap()
                .to_string(),
            "11"
        );
        assert_eq!(
            reference_table_semantics(&table, &"01".parse().unwrap())
                .unwrap()
                .to_string(),
            "01"
        );
        assert_eq!(
            reference_table_semantics(&table, &"11".parse().unwrap())
                .unwrap()
                .to_string(),
            "11"
        );
        assert_eq!(
            reference_table_semantics(&table, &"00".parse().unwrap()),
            None
        );

        let t = compile_priority(&table);
        assert_eq!(eval(&t, &set(2, &["10"])).unwrap(), set(2, &["11"]));
        assert_eq!(eval(&t, &set(2, &["01"])).unwrap(), set(2, &["01"]));
        assert_eq!(eval(&t, &set(2, &["11"])).unwrap(), set(2, &["11"]));
        assert!(eval(&t, &set(2, &["00"])).unwrap().is_empty());
    }

    #[test]
    fn priority_matches_reference_on_all_packets() {
        let table = two_rule_table();
        let t = compile_priority(&table);
        for v in 0..4 {
            let p = Packet::new(2, v).unwrap();
            let got = eval(&t, &PacketSet::singleton(p)).unwrap();
            let expect = match reference_table_semantics(&table, &p) {
                Some(q) => PacketSet::singleton(q),
                None => PacketSet::empty(2),
            };
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn empty_table_drops_everything() {
        let table = Table::new(2, vec![]).unwrap();
        assert_eq!(compile_priority(&table), Term::Bot);
        let enc = compile_counter(&table, CounterVariant::Fixed).unwrap();
        for v in 0..(1u32 << enc.total_width()) {
            let p = Packet::new(enc.total_width(), v).unwrap();
            assert!(eval(&enc.term, &PacketSet::singleton(p))
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn single_rule_table_has_no_negations() {
        let table = Table::new(
            2,
            vec![TableRule {
                pattern: cube("x1"),
                actions: vec![(1, true)],
            }],
        )
        .unwrap();
        let t = compile_priority(&table);
        assert_eq!(t.count_not(), 0);
        assert_eq!(t.count_plus(), 0);
    }

    #[test]
    fn priority_node_counts_are_quadratic_in_rules() {
        for k in 1..=4usize {
            let rules = (0..k)
                .map(|_| TableRule {
                    pattern: cube("xx"),
                    actions: vec![],
                })
                .collect();
            let t = compile_priority(&Table::new(2, rules).unwrap());
            assert_eq!(t.count_plus(), k - 1);
            assert_eq!(t.count_not(), k * (k - 1) / 2);
        }
    }

    fn counter_agrees_with_priority(table: &Table, variant: CounterVariant) -> bool {
        let n = table.width();
        let prio = compile_priority(table);
        let enc = compile_counter(table, variant).unwrap();
        let total = enc.total_width();
        for v in 0..(1u32 << total) {
            let p = Packet::new(total, v).unwrap();
            let data = Packet::new(n, v >> enc.meta_bits).unwrap();
            let expect = eval(&prio, &PacketSet::singleton(data)).unwrap();
            let got = eval(&enc.term, &PacketSet::singleton(p)).unwrap();
            let projected = PacketSet::from_packets(
                n,
                got.iter()
                    .map(|q| Packet::new(n, q.value() >> enc.meta_bits).unwrap()),
            )
            .unwrap();
            if projected != expect {
                return false;
            }
        }
        true
    }

    #[test]
    fn counter_encoding_matches_priority_for_all_metadata() {
        assert!(counter_agrees_with_priority(
            &two_rule_table(),
            CounterVariant::Fixed
        ));
    }

    #[test]
    fn counter_encoding_with_catch_all_rule_applies_rule_one() {
        let table = Table::new(
            2,
            vec![
                TableRule {
                    pattern: cube("xx"),
                    actions: vec![(1, true)],
                },
                TableRule {
                    pattern: cube("x0"),
                    actions: vec![(2, true)],
                },
            ],
        )
        .unwrap();
        assert!(counter_agrees_with_priority(&table, CounterVariant::Fixed));
        let enc = compile_counter(&table, CounterVariant::Fixed).unwrap();
        let p = Packet::zero(enc.total_width());
        let out = eval(&enc.term, &PacketSet::singleton(p)).unwrap();
        let heads: Vec<u32> = out.iter().map(|q| q.value() >> enc.meta_bits).collect();
        assert_eq!(heads, vec![0b10]);
    }

    #[test]
    fn first_guard_variant_double_fires() {
        // When every failure branch negates rule 1's guard, a packet that
        // fails rule 1 but matches rule 2 takes both the match branch and
        // the advance branch, and can fire rule 3 as well. Priority
        // semantics gives only rule 2's result.
        let table = Table::new(
            2,
            vec![
                TableRule {
                    pattern: cube("1x"),
                    actions: vec![],
                },
                TableRule {
                    pattern: cube("xx"),
                    actions: vec![(1, false)],
                },
                TableRule {
                    pattern: cube("xx"),
                    actions: vec![(1, true)],
                },
            ],
        )
        .unwrap();
        assert!(counter_agrees_with_priority(&table, CounterVariant::Fixed));
        assert!(!counter_agrees_with_priority(&table, CounterVariant::Paper));
    }

    #[test]
    fn counter_layout_sizes() {
        let table = two_rule_table();
        let enc = compile_counter(&table, CounterVariant::Fixed).unwrap();
        // k = 2: values 1..=4 need 3 bits.
        assert_eq!(enc.meta_bits, 3);
        assert_eq!(enc.data_width, 2);
        assert_eq!(enc.counter, BitRange::new(3, 5));
    }

    #[test]
    fn pipeline_modes() {
        let table = two_rule_table();
        let stage = compile_priority(&table);
        let seq =
            compose_pipeline(vec![stage.clone(), stage.clone()], PipelineMode::Sequence).unwrap();
        assert_eq!(seq, Term::seq(stage.clone(), stage.clone()));

        let par = compose_pipeline(vec![stage.clone(), Term::Bot], PipelineMode::Parallel).unwrap();
        assert_eq!(term_equiv(&par, &stage, 2).unwrap(), TermEquiv::Equivalent);

        let inc = encode_increment(1, 2, 2).unwrap();
        let looped = compose_pipeline(vec![inc], PipelineMode::Loop).unwrap();
        assert_eq!(
            eval(&looped, &set(2, &["00"])).unwrap(),
            PacketSet::universe(2)
        );

        assert!(compose_pipeline(vec![], PipelineMode::Loop).is_err());
        assert!(compose_pipeline(vec![Term::Top, Term::Top], PipelineMode::Loop).is_err());
    }

    #[test]
    fn table_file_round_trip() {
        let table = two_rule_table();
        let file = TableFile::from(&table);
        let json = serde_json::to_string(&file).unwrap();
        let back: TableFile = serde_json::from_str(&json).unwrap();
        assert_eq!(Table::try_from(back).unwrap(), table);
    }

    #[test]
    fn table_validation_errors() {
        assert!(Table::new(
            2,
            vec![TableRule {
                pattern: cube("1"),
                actions: vec![]
            }],
        )
        .is_err());
        assert!(Table::new(
            2,
            vec![TableRule {
                pattern: cube("1x"),
                actions: vec![(3, true)]
            }],
        )
        .is_err());
    }
}
