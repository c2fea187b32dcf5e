//! A reference NetKAT interpreter and the translations to and from it.
//!
//! NetKAT terms act on packet histories (nonempty head-first lists of
//! packets) and may emit several output histories; composition is Kleisli
//! composition in the powerset monad. `dup` snapshots the head packet onto
//! the history. The two translations are [`to_netkat`], which embeds a term
//! over `n` bits into NetKAT over `n` single-bit fields, and
//! [`from_netkat`], which flattens fields to bit positions and forgets
//! `dup`. The `check_*` functions evaluate both sides of the corresponding
//! semantic identities.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::expr::{point_match, MatchExpr};
use crate::packet::{Packet, PacketSet, DEFAULT_WIDTH_CAP, MAX_WIDTH};
use crate::term::{eval_raw, Term};

/// Default cap on history length; histories only grow through `dup`, and a
/// star over a `dup`-containing body would otherwise diverge. Exceeding the
/// cap is reported as a capacity error, not a hang.
pub const DEFAULT_HISTORY_CAP: usize = 16;

/// An ordered list of named fields with bit widths. Fields occupy disjoint
/// contiguous bit ranges, in order, covering positions `1..=total_bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    fields: Vec<(String, u32)>,
}

impl FieldSpec {
    pub fn new(fields: Vec<(String, u32)>) -> Result<Self, Error> {
        if fields.is_empty() {
            return Err(Error::Invalid(
                "field spec must declare at least one field".into(),
            ));
        }
        let mut total = 0u32;
        for (name, bits) in &fields {
            if *bits == 0 {
                return Err(Error::Invalid(format!("field {name} has zero width")));
            }
            if fields.iter().filter(|(n, _)| n == name).count() > 1 {
                return Err(Error::Invalid(format!("duplicate field name {name}")));
            }
            total += *bits;
        }
        if total > MAX_WIDTH {
            return Err(Error::WidthCap {
                width: total,
                cap: MAX_WIDTH,
            });
        }
        Ok(FieldSpec { fields })
    }

    /// `n` single-bit fields named `f1..fn`, the target of [`to_netkat`].
    pub fn single_bits(n: u32) -> Self {
        let fields = (1..=n).map(|i| (format!("f{i}"), 1)).collect();
        FieldSpec { fields }
    }

    pub fn fields(&self) -> &[(String, u32)] {
        &self.fields
    }

    pub fn total_bits(&self) -> u32 {
        self.fields.iter().map(|(_, b)| b).sum()
    }

    /// Offset (bits before the field) and width of a field.
    pub fn lookup(&self, name: &str) -> Option<(u32, u32)> {
        let mut offset = 0;
        for (n, bits) in &self.fields {
            if n == name {
                return Some((offset, *bits));
            }
            offset += *bits;
        }
        None
    }

    /// Resolves a field and checks that a value fits its width.
    pub fn check_value(&self, name: &str, value: u64) -> Result<(u32, u32), Error> {
        let (offset, bits) = self
            .lookup(name)
            .ok_or_else(|| Error::UnknownField(name.to_string()))?;
        if bits < 64 && value >> bits != 0 {
            return Err(Error::ValueOutOfRange {
                field: name.to_string(),
                value,
                bits,
            });
        }
        Ok((offset, bits))
    }
}

/// `j`-th bit (base-1, MSB first) of `value` written in `bits` binary digits.
fn bin_bit(value: u64, bits: u32, j: u32) -> bool {
    debug_assert!(j >= 1 && j <= bits);
    (value >> (bits - j)) & 1 == 1
}

fn field_value(p: &Packet, offset: u32, bits: u32) -> u64 {
    let mut v = 0u64;
    for j in 1..=bits {
        v = v << 1 | u64::from(p.bit(offset + j));
    }
    v
}

fn set_field(p: &Packet, offset: u32, bits: u32, value: u64) -> Packet {
    let mut out = *p;
    for j in 1..=bits {
        out = out.with_bit(offset + j, bin_bit(value, bits, j));
    }
    out
}

/// A NetKAT term over some [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NkTerm {
    Zero,
    One,
    /// Duplicates the head packet onto the history.
    Dup,
    /// `field = value`
    Test(String, u64),
    /// `field <- value`
    Assign(String, u64),
    Plus(Box<NkTerm>, Box<NkTerm>),
    Seq(Box<NkTerm>, Box<NkTerm>),
    Star(Box<NkTerm>),
    /// Complement of a test; only well-formed over tests.
    Not(Box<NkTerm>),
}

impl NkTerm {
    pub fn test(field: impl Into<String>, value: u64) -> NkTerm {
        NkTerm::Test(field.into(), value)
    }

    pub fn assign(field: impl Into<String>, value: u64) -> NkTerm {
        NkTerm::Assign(field.into(), value)
    }

    pub fn plus(l: NkTerm, r: NkTerm) -> NkTerm {
        NkTerm::Plus(Box::new(l), Box::new(r))
    }

    pub fn seq(l: NkTerm, r: NkTerm) -> NkTerm {
        NkTerm::Seq(Box::new(l), Box::new(r))
    }

    pub fn star(t: NkTerm) -> NkTerm {
        NkTerm::Star(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(t: NkTerm) -> NkTerm {
        NkTerm::Not(Box::new(t))
    }

    pub fn seq_all(terms: impl IntoIterator<Item = NkTerm>) -> NkTerm {
        let mut iter = terms.into_iter();
        match iter.next() {
            None => NkTerm::One,
            Some(first) => iter.fold(first, NkTerm::seq),
        }
    }

    pub fn is_test(&self) -> bool {
        match self {
            NkTerm::Zero | NkTerm::One | NkTerm::Test(_, _) => true,
            NkTerm::Plus(l, r) | NkTerm::Seq(l, r) => l.is_test() && r.is_test(),
            NkTerm::Not(t) => t.is_test(),
            NkTerm::Dup | NkTerm::Assign(_, _) | NkTerm::Star(_) => false,
        }
    }

    pub fn contains_dup(&self) -> bool {
        match self {
            NkTerm::Dup => true,
            NkTerm::Zero | NkTerm::One | NkTerm::Test(_, _) | NkTerm::Assign(_, _) => false,
            NkTerm::Plus(l, r) | NkTerm::Seq(l, r) => l.contains_dup() || r.contains_dup(),
            NkTerm::Star(t) | NkTerm::Not(t) => t.contains_dup(),
        }
    }

    pub fn well_formed(&self, spec: &FieldSpec) -> Result<(), Error> {
        match self {
            NkTerm::Zero | NkTerm::One | NkTerm::Dup => Ok(()),
            NkTerm::Test(f, v) | NkTerm::Assign(f, v) => {
                spec.check_value(f, *v)?;
                Ok(())
            }
            NkTerm::Plus(l, r) | NkTerm::Seq(l, r) => {
                l.well_formed(spec)?;
                r.well_formed(spec)
            }
            NkTerm::Star(t) => t.well_formed(spec),
            NkTerm::Not(t) => {
                if !t.is_test() {
                    return Err(Error::NegationOfAction);
                }
                t.well_formed(spec)
            }
        }
    }

    pub fn op_count(&self) -> usize {
        match self {
            NkTerm::Zero
            | NkTerm::One
            | NkTerm::Dup
            | NkTerm::Test(_, _)
            | NkTerm::Assign(_, _) => 0,
            NkTerm::Plus(l, r) | NkTerm::Seq(l, r) => 1 + l.op_count() + r.op_count(),
            NkTerm::Star(t) | NkTerm::Not(t) => 1 + t.op_count(),
        }
    }
}

/// A nonempty head-first list of packets of one width.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct History(Vec<Packet>);

impl History {
    pub fn single(p: Packet) -> History {
        History(vec![p])
    }

    pub fn new(packets: Vec<Packet>) -> Result<History, Error> {
        let head = packets
            .first()
            .ok_or_else(|| Error::Invalid("history must be nonempty".into()))?;
        let width = head.width();
        if packets.iter().any(|p| p.width() != width) {
            return Err(Error::Invalid(
                "history packets must share one width".into(),
            ));
        }
        Ok(History(packets))
    }

    pub fn head(&self) -> Packet {
        self.0[0]
    }

    pub fn packets(&self) -> &[Packet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn with_head(&self, p: Packet) -> History {
        let mut packets = self.0.clone();
        packets[0] = p;
        History(packets)
    }

    fn pushed(&self, p: Packet) -> History {
        let mut packets = Vec::with_capacity(self.0.len() + 1);
        packets.push(p);
        packets.extend_from_slice(&self.0);
        History(packets)
    }
}

/// Head packets of a set of histories, as a packet set.
pub fn heads(histories: &BTreeSet<History>, width: u32) -> PacketSet {
    let mut out = PacketSet::empty(width);
    for h in histories {
        out.insert(h.head());
    }
    out
}

/// Evaluates a NetKAT term on a packet history, producing the set of output
/// histories, with the default history-length cap.
pub fn nk_eval(term: &NkTerm, h: &History, spec: &FieldSpec) -> Result<BTreeSet<History>, Error> {
    nk_eval_with_cap(term, h, spec, DEFAULT_HISTORY_CAP)
}

pub fn nk_eval_with_cap(
    term: &NkTerm,
    h: &History,
    spec: &FieldSpec,
    history_cap: usize,
) -> Result<BTreeSet<History>, Error> {
    term.well_formed(spec)?;
    if h.head().width() != spec.total_bits() {
        return Err(Error::WidthMismatch {
            left: h.head().width(),
            right: spec.total_bits(),
        });
    }
    nk_eval_raw(term, h, spec, history_cap)
}

fn nk_eval_raw(
    term: &NkTerm,
    h: &History,
    spec: &FieldSpec,
    cap: usize,
) -> Result<BTreeSet<History>, Error> {
    Ok(match term {
        NkTerm::Zero => BTreeSet::new(),
        NkTerm::One => [h.clone()].into(),
        NkTerm::Dup => {
            if h.len() + 1 > cap {
                return Err(Error::HistoryCap {
                    len: h.len() + 1,
                    cap,
                });
            }
            [h.pushed(h.head())].into()
        }
        NkTerm::Test(f, v) => {
            let (offset, bits) = spec.lookup(f).expect("checked by well_formed");
            if field_value(&h.head(), offset, bits) == *v {
                [h.clone()].into()
            } else {
                BTreeSet::new()
            }
        }
        NkTerm::Assign(f, v) => {
            let (offset, bits) = spec.lookup(f).expect("checked by well_formed");
            [h.with_head(set_field(&h.head(), offset, bits, *v))].into()
        }
        NkTerm::Plus(l, r) => {
            let mut out = nk_eval_raw(l, h, spec, cap)?;
            out.extend(nk_eval_raw(r, h, spec, cap)?);
            out
        }
        NkTerm::Seq(l, r) => {
            let mut out = BTreeSet::new();
            for mid in nk_eval_raw(l, h, spec, cap)? {
                out.extend(nk_eval_raw(r, &mid, spec, cap)?);
            }
            out
        }
        NkTerm::Star(t) => {
            // Closure of iterated Kleisli composition over the reachable
            // histories; the history cap keeps the space finite.
            let mut acc: BTreeSet<History> = [h.clone()].into();
            let mut frontier: Vec<History> = vec![h.clone()];
            while let Some(cur) = frontier.pop() {
                for next in nk_eval_raw(t, &cur, spec, cap)? {
                    if acc.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
            acc
        }
        NkTerm::Not(t) => {
            // Complement at the test level: tests map h to ∅ or {h}.
            let mut out: BTreeSet<History> = [h.clone()].into();
            for passed in nk_eval_raw(t, h, spec, cap)? {
                out.remove(&passed);
            }
            out
        }
    })
}

/// Embeds a term over `n` bits into NetKAT over the `n` single-bit fields
/// `f1..fn`. The image never contains `dup`.
pub fn to_netkat(term: &Term, n: u32) -> Result<NkTerm, Error> {
    term.well_formed(n)?;
    Ok(term_to_nk(term))
}

fn term_to_nk(term: &Term) -> NkTerm {
    match term {
        Term::Bot => NkTerm::Zero,
        Term::Top => NkTerm::One,
        Term::Test(e) => expr_to_nk(e, 1),
        Term::Assign(i, k) => NkTerm::assign(format!("f{i}"), u64::from(*k)),
        Term::Plus(l, r) => NkTerm::plus(term_to_nk(l), term_to_nk(r)),
        Term::Seq(l, r) => NkTerm::seq(term_to_nk(l), term_to_nk(r)),
        Term::Star(t) => NkTerm::star(term_to_nk(t)),
        Term::Not(t) => NkTerm::not(term_to_nk(t)),
    }
}

/// Translates a match expression into single-bit field tests, tracking the
/// bit position each literal occupies.
fn expr_to_nk(e: &MatchExpr, start: u32) -> NkTerm {
    match e {
        MatchExpr::Empty => NkTerm::One,
        MatchExpr::Bot(_) => NkTerm::Zero,
        MatchExpr::Lit(t) => match t {
            crate::expr::Trit::Zero => NkTerm::test(format!("f{start}"), 0),
            crate::expr::Trit::One => NkTerm::test(format!("f{start}"), 1),
            crate::expr::Trit::Any => NkTerm::One,
        },
        MatchExpr::Concat(l, r) => {
            NkTerm::seq(expr_to_nk(l, start), expr_to_nk(r, start + l.width()))
        }
        MatchExpr::Union(l, r) => NkTerm::plus(expr_to_nk(l, start), expr_to_nk(r, start)),
        MatchExpr::Inter(l, r) => NkTerm::seq(expr_to_nk(l, start), expr_to_nk(r, start)),
        MatchExpr::Compl(inner) => NkTerm::not(expr_to_nk(inner, start)),
    }
}

/// Flattens a NetKAT term over `spec` into a term over
/// `spec.total_bits()` bits. Field tests become compositions of point tests
/// on the field's bit positions, field assignments become bit assignments,
/// and `dup` is forgotten (translated as skip).
pub fn from_netkat(term: &NkTerm, spec: &FieldSpec) -> Result<Term, Error> {
    term.well_formed(spec)?;
    Ok(nk_to_term(term, spec))
}

fn nk_to_term(term: &NkTerm, spec: &FieldSpec) -> Term {
    let n = spec.total_bits();
    match term {
        NkTerm::Zero => Term::Bot,
        NkTerm::One | NkTerm::Dup => Term::Top,
        NkTerm::Test(f, v) => {
            let (offset, bits) = spec.lookup(f).expect("checked by well_formed");
            Term::seq_all((1..=bits).map(|j| {
                Term::test(
                    point_match(offset + j, bin_bit(*v, bits, j), n).expect("position in range"),
                )
            }))
        }
        NkTerm::Assign(f, v) => {
            let (offset, bits) = spec.lookup(f).expect("checked by well_formed");
            Term::seq_all((1..=bits).map(|j| Term::assign(offset + j, bin_bit(*v, bits, j))))
        }
        NkTerm::Plus(l, r) => Term::plus(nk_to_term(l, spec), nk_to_term(r, spec)),
        NkTerm::Seq(l, r) => Term::seq(nk_to_term(l, spec), nk_to_term(r, spec)),
        NkTerm::Star(t) => Term::star(nk_to_term(t, spec)),
        NkTerm::Not(t) => Term::not(nk_to_term(t, spec)),
    }
}

/// Checks that applying `term` to `input` equals collecting the head packets
/// of its NetKAT image applied to each input packet as a fresh history.
pub fn check_to_netkat(term: &Term, input: &PacketSet) -> Result<bool, Error> {
    let n = input.width();
    let direct = crate::term::eval(term, input)?;
    let nk = to_netkat(term, n)?;
    let spec = FieldSpec::single_bits(n);
    let mut image = PacketSet::empty(n);
    for p in input.iter() {
        let out = nk_eval(&nk, &History::single(p), &spec)?;
        image = image.union(&heads(&out, n));
    }
    Ok(direct == image)
}

/// Checks that the head packets of `term` applied to `h` equal the flattened
/// term applied to the singleton set of the head of `h`.
pub fn check_from_netkat(term: &NkTerm, h: &History, spec: &FieldSpec) -> Result<bool, Error> {
    let n = spec.total_bits();
    let out = nk_eval(term, h, spec)?;
    let lhs = heads(&out, n);
    let flattened = from_netkat(term, spec)?;
    let rhs = crate::term::eval(&flattened, &PacketSet::singleton(h.head()))?;
    Ok(lhs == rhs)
}

/// Checks that translating a term to NetKAT and back preserves its semantics
/// on every singleton input at packet size `n`.
pub fn check_round_trip(term: &Term, n: u32) -> Result<bool, Error> {
    check_round_trip_with_cap(term, n, DEFAULT_WIDTH_CAP)
}

pub fn check_round_trip_with_cap(term: &Term, n: u32, cap: u32) -> Result<bool, Error> {
    if n > cap {
        return Err(Error::WidthCap { width: n, cap });
    }
    term.well_formed(n)?;
    let spec = FieldSpec::single_bits(n);
    let round = from_netkat(&to_netkat(term, n)?, &spec)?;
    for value in 0..(1u64 << n) {
        let input = PacketSet::singleton(Packet::new(n, value as u32).expect("in range"));
        if eval_raw(term, &input) != eval_raw(&round, &input) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether two NetKAT terms produce identical output history sets on every
/// singleton input history. For `dup`-free terms this decides semantic
/// equality.
pub fn nk_singleton_equiv(a: &NkTerm, b: &NkTerm, spec: &FieldSpec) -> Result<bool, Error> {
    let n = spec.total_bits();
    if n > DEFAULT_WIDTH_CAP {
        return Err(Error::WidthCap {
            width: n,
            cap: DEFAULT_WIDTH_CAP,
        });
    }
    for value in 0..(1u64 << n) {
        let h = History::single(Packet::new(n, value as u32).expect("in range"));
        if nk_eval(a, &h, spec)? != nk_eval(b, &h, spec)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Trit;

    fn spec_fg() -> FieldSpec {
        FieldSpec::new(vec![("f".into(), 3), ("g".into(), 1)]).unwrap()
    }

    fn run(s: &str) -> MatchExpr {
        let trits: Vec<Trit> = s.chars().map(|c| Trit::from_char(c).unwrap()).collect();
        MatchExpr::literal_run(&trits)
    }

    #[test]
    fn dup_duplicates_the_head() {
        let spec = FieldSpec::single_bits(2);
        let p: Packet = "10".parse().unwrap();
        let out = nk_eval(&NkTerm::Dup, &History::single(p), &spec).unwrap();
        assert_eq!(out, [History::new(vec![p, p]).unwrap()].into());
    }

    #[test]
    fn zero_drops_the_history() {
        let spec = FieldSpec::single_bits(2);
        let h = History::single("01".parse().unwrap());
        assert!(nk_eval(&NkTerm::Zero, &h, &spec).unwrap().is_empty());
    }

    #[test]
    fn test_dup_assign_pipeline() {
        // f = 6 ; dup ; g <- 1 on a head with f = 6: one output history,
        // one packet longer, head has g = 1.
        let spec = spec_fg();
        let head: Packet = "1100".parse().unwrap();
        let term = NkTerm::seq_all([NkTerm::test("f", 6), NkTerm::Dup, NkTerm::assign("g", 1)]);
        let out = nk_eval(&term, &History::single(head), &spec).unwrap();
        assert_eq!(out.len(), 1);
        let h = out.first().unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.head().to_string(), "1101");
        assert_eq!(h.packets()[1], head);

        // A head with f != 6 is dropped.
        let other = History::single("1010".parse().unwrap());
        assert!(nk_eval(&term, &other, &spec).unwrap().is_empty());
    }

    #[test]
    fn field_values_are_msb_first() {
        let p = set_field(&Packet::zero(4), 0, 3, 6);
        assert_eq!(p.to_string(), "1100");
        assert_eq!(field_value(&p, 0, 3), 6);
    }

    #[test]
    fn unknown_fields_and_wide_values_are_rejected() {
        let spec = spec_fg();
        let h = History::single(Packet::zero(4));
        assert!(matches!(
            nk_eval(&NkTerm::test("h", 0), &h, &spec),
            Err(Error::UnknownField(_))
        ));
        assert!(matches!(
            nk_eval(&NkTerm::assign("f", 8), &h, &spec),
            Err(Error::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn star_over_dup_reports_capacity() {
        let spec = FieldSpec::single_bits(1);
        let h = History::single(Packet::zero(1));
        let t = NkTerm::star(NkTerm::Dup);
        assert!(matches!(
            nk_eval_with_cap(&t, &h, &spec, 4),
            Err(Error::HistoryCap { .. })
        ));
    }

    #[test]
    fn to_netkat_of_assignment() {
        let t = Term::assign(3, true);
        assert_eq!(to_netkat(&t, 3).unwrap(), NkTerm::assign("f3", 1));
    }

    #[test]
    fn to_netkat_of_wildcard_test_is_skip_chain() {
        let t = Term::test(MatchExpr::top(3));
        let nk = to_netkat(&t, 3).unwrap();
        assert!(!nk.contains_dup());
        let spec = FieldSpec::single_bits(3);
        for v in 0..8 {
            let h = History::single(Packet::new(3, v).unwrap());
            assert_eq!(nk_eval(&nk, &h, &spec).unwrap(), [h].into());
        }
    }

    #[test]
    fn to_netkat_of_literal_run_tests_fixed_positions() {
        let nk = to_netkat(&Term::test(run("1x0")), 3).unwrap();
        assert_eq!(
            nk,
            NkTerm::seq(
                NkTerm::seq(NkTerm::test("f1", 1), NkTerm::One),
                NkTerm::test("f3", 0),
            )
        );
    }

    #[test]
    fn translation_image_is_dup_free() {
        let t = Term::star(Term::plus(
            Term::seq(Term::test(run("x1")), Term::assign(1, true)),
            Term::not(Term::test(run("0x"))),
        ));
        assert!(!to_netkat(&t, 2).unwrap().contains_dup());
    }

    #[test]
    fn from_netkat_forgets_dup() {
        let spec = spec_fg();
        assert_eq!(from_netkat(&NkTerm::Dup, &spec).unwrap(), Term::Top);
        assert_eq!(from_netkat(&NkTerm::One, &spec).unwrap(), Term::Top);
        assert_eq!(from_netkat(&NkTerm::Zero, &spec).unwrap(), Term::Bot);
    }

    #[test]
    fn from_netkat_expands_field_test_bitwise() {
        // f = 6 over |f| = 3 at positions 1..3 becomes point tests for
        // 1, 1, 0 in sequence.
        let spec = spec_fg();
        let t = from_netkat(&NkTerm::test("f", 6), &spec).unwrap();
        let expect = Term::seq_all([
            Term::test(point_match(1, true, 4).unwrap()),
            Term::test(point_match(2, true, 4).unwrap()),
            Term::test(point_match(3, false, 4).unwrap()),
        ]);
        assert_eq!(t, expect);
    }

    #[test]
    fn head_correspondence_examples() {
        // Drop on both sides.
        let p = PacketSet::from_packets(2, [Packet::zero(2)]).unwrap();
        assert!(check_to_netkat(&Term::Bot, &p).unwrap());

        // Assignment at n = 2 on {00, 10}: both sides give {10}.
        let input = PacketSet::from_packets(2, ["00", "10"].map(|s| s.parse().unwrap())).unwrap();
        let t = Term::assign(1, true);
        assert_eq!(
            crate::term::eval(&t, &input).unwrap(),
            PacketSet::from_packets(2, ["10".parse().unwrap()]).unwrap()
        );
        assert!(check_to_netkat(&t, &input).unwrap());
    }

    #[test]
    fn netkat_head_correspondence_examples() {
        let spec = spec_fg();
        let h = History::new(vec!["0110".parse().unwrap(), "0000".parse().unwrap()]).unwrap();
        assert!(check_from_netkat(&NkTerm::Dup, &h, &spec).unwrap());
        assert!(check_from_netkat(&NkTerm::assign("f", 5), &h, &spec).unwrap());
        let t = NkTerm::seq_all([NkTerm::test("g", 0), NkTerm::Dup, NkTerm::assign("f", 1)]);
        assert!(check_from_netkat(&t, &h, &spec).unwrap());
    }

    #[test]
    fn round_trip_preserves_point_tests_and_skip() {
        for n in 1..=4 {
            for i in 1..=n {
                let t = Term::test(point_match(i, true, n).unwrap());
                assert!(check_round_trip(&t, n).unwrap());
            }
            assert!(check_round_trip(&Term::Top, n).unwrap());
        }
    }

    #[test]
    fn singleton_equivalence_of_images_tracks_term_equivalence() {
        let spec = FieldSpec::single_bits(2);
        let a = Term::seq(Term::assign(1, true), Term::assign(2, false));
        let b = Term::seq(Term::assign(2, false), Term::assign(1, true));
        let c = Term::assign(1, true);
        let (na, nb, nc) = (
            to_netkat(&a, 2).unwrap(),
            to_netkat(&b, 2).unwrap(),
            to_netkat(&c, 2).unwrap(),
        );
        assert!(nk_singleton_equiv(&na, &nb, &spec).unwrap());
        assert!(!nk_singleton_equiv(&na, &nc, &spec).unwrap());
    }
}
