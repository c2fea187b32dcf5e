//! The term language and its packet-filtering semantics.
//!
//! Terms transform sets of packets: tests filter, bit assignments rewrite,
//! `+` takes both branches, `;` sequences, and star iterates to a fixpoint
//! (the packet space is finite, so the fixpoint is reached). Negation is
//! restricted to tests, which keeps every term additive over unions of
//! inputs; that additivity is what justifies deciding equivalence on
//! singleton inputs alone.

use crate::error::Error;
use crate::expr::MatchExpr;
use crate::packet::{Packet, PacketSet, DEFAULT_WIDTH_CAP};

/// A term over packets of some fixed size `n`. The size is not stored in the
/// term; operations take it from the input set or an explicit argument and
/// check well-formedness against it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// Drops every packet.
    Bot,
    /// Passes every packet through unchanged.
    Top,
    /// Filters by a match expression of width `n`.
    Test(MatchExpr),
    /// Sets bit `i` (base-1) to the given value.
    Assign(u32, bool),
    Plus(Box<Term>, Box<Term>),
    Seq(Box<Term>, Box<Term>),
    Star(Box<Term>),
    /// Complement of a test; only well-formed over tests.
    Not(Box<Term>),
}

impl Term {
    pub fn test(e: MatchExpr) -> Term {
        Term::Test(e)
    }

    pub fn assign(index: u32, bit: bool) -> Term {
        Term::Assign(index, bit)
    }

    pub fn plus(l: Term, r: Term) -> Term {
        Term::Plus(Box::new(l), Box::new(r))
    }

    pub fn seq(l: Term, r: Term) -> Term {
        Term::Seq(Box::new(l), Box::new(r))
    }

    pub fn star(t: Term) -> Term {
        Term::Star(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(t: Term) -> Term {
        Term::Not(Box::new(t))
    }

    /// Left-nested sequence of all terms; empty input yields `Top`.
    pub fn seq_all(terms: impl IntoIterator<Item = Term>) -> Term {
        let mut iter = terms.into_iter();
        match iter.next() {
            None => Term::Top,
            Some(first) => iter.fold(first, Term::seq),
        }
    }

    /// Left-nested sum of all terms; empty input yields `Bot`.
    pub fn plus_all(terms: impl IntoIterator<Item = Term>) -> Term {
        let mut iter = terms.into_iter();
        match iter.next() {
            None => Term::Bot,
            Some(first) => iter.fold(first, Term::plus),
        }
    }

    /// Tests are the terms built from match expressions, drop and skip with
    /// `+`, `;` and negation. Assignments and star are not tests.
    pub fn is_test(&self) -> bool {
        match self {
            Term::Bot | Term::Top | Term::Test(_) => true,
            Term::Plus(l, r) | Term::Seq(l, r) => l.is_test() && r.is_test(),
            Term::Not(t) => t.is_test(),
            Term::Assign(_, _) | Term::Star(_) => false,
        }
    }

    /// Checks the term against packet size `n`: embedded expressions have
    /// width exactly `n`, assignment indices are in range, and negation is
    /// applied only to tests.
    pub fn well_formed(&self, n: u32) -> Result<(), Error> {
        match self {
            Term::Bot | Term::Top => Ok(()),
            Term::Test(e) => {
                let w = e.validate()?;
                if w != n {
                    return Err(Error::WidthMismatch { left: w, right: n });
                }
                Ok(())
            }
            Term::Assign(i, _) => {
                if *i < 1 || *i > n {
                    return Err(Error::IndexOutOfRange {
                        index: *i,
                        width: n,
                    });
                }
                Ok(())
            }
            Term::Plus(l, r) | Term::Seq(l, r) => {
                l.well_formed(n)?;
                r.well_formed(n)
            }
            Term::Star(t) => t.well_formed(n),
            Term::Not(t) => {
                if !t.is_test() {
                    return Err(Error::NegationOfAction);
                }
                t.well_formed(n)
            }
        }
    }

    /// Total node count, including nodes of embedded match expressions.
    pub fn size(&self) -> usize {
        match self {
            Term::Bot | Term::Top | Term::Assign(_, _) => 1,
            Term::Test(e) => 1 + e.size(),
            Term::Plus(l, r) | Term::Seq(l, r) => 1 + l.size() + r.size(),
            Term::Star(t) | Term::Not(t) => 1 + t.size(),
        }
    }

    /// Operator count used for generator budgets: `+`, `;`, star, negation
    /// and the operators inside embedded expressions; atoms are free.
    pub fn op_count(&self) -> usize {
        match self {
            Term::Bot | Term::Top | Term::Assign(_, _) => 0,
            Term::Test(e) => e.op_count(),
            Term::Plus(l, r) | Term::Seq(l, r) => 1 + l.op_count() + r.op_count(),
            Term::Star(t) | Term::Not(t) => 1 + t.op_count(),
        }
    }

    pub fn count_plus(&self) -> usize {
        match self {
            Term::Bot | Term::Top | Term::Test(_) | Term::Assign(_, _) => 0,
            Term::Plus(l, r) => 1 + l.count_plus() + r.count_plus(),
            Term::Seq(l, r) => l.count_plus() + r.count_plus(),
            Term::Star(t) | Term::Not(t) => t.count_plus(),
        }
    }

    pub fn count_not(&self) -> usize {
        match self {
            Term::Bot | Term::Top | Term::Test(_) | Term::Assign(_, _) => 0,
            Term::Plus(l, r) | Term::Seq(l, r) => l.count_not() + r.count_not(),
            Term::Star(t) => t.count_not(),
            Term::Not(t) => 1 + t.count_not(),
        }
    }

    pub fn count_star(&self) -> usize {
        match self {
            Term::Bot | Term::Top | Term::Test(_) | Term::Assign(_, _) => 0,
            Term::Plus(l, r) | Term::Seq(l, r) => l.count_star() + r.count_star(),
            Term::Star(t) => 1 + t.count_star(),
            Term::Not(t) => t.count_star(),
        }
    }
}

/// Applies a term to a set of packets. The packet size is the width of the
/// input set; the term is checked against it first.
pub fn eval(term: &Term, input: &PacketSet) -> Result<PacketSet, Error> {
    term.well_formed(input.width())?;
    Ok(eval_raw(term, input))
}

pub(crate) fn eval_raw(term: &Term, input: &PacketSet) -> PacketSet {
    match term {
        Term::Bot => PacketSet::empty(input.width()),
        Term::Top => input.clone(),
        Term::Test(e) => input.filter(|p| e.matches_packet(p)),
        Term::Assign(i, k) => input.map(|p| p.with_bit(*i, *k)),
        Term::Plus(l, r) => eval_raw(l, input).union(&eval_raw(r, input)),
        Term::Seq(l, r) => eval_raw(r, &eval_raw(l, input)),
        Term::Star(t) => {
            // Least fixpoint of S = input ∪ eval(t, S); the space is finite
            // and S only grows, so this terminates.
            let mut acc = input.clone();
            loop {
                let next = eval_raw(t, &acc);
                if next.is_subset(&acc) {
                    return acc;
                }
                acc = acc.union(&next);
            }
        }
        // For a test t, eval(t, P) ⊆ P, so P minus the passed packets is the
        // complement relative to the input.
        Term::Not(t) => input.difference(&eval_raw(t, input)),
    }
}

/// Outcome of a term equivalence query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermEquiv {
    Equivalent,
    /// Lowest singleton input on which the two terms disagree, with both
    /// output sets.
    Witness {
        packet: Packet,
        left: PacketSet,
        right: PacketSet,
    },
}

/// Decides semantic equality of two terms at packet size `n` by comparing
/// their action on every singleton input, in ascending packet order. This is
/// complete because every term is additive over unions of inputs.
pub fn term_equiv(a: &Term, b: &Term, n: u32) -> Result<TermEquiv, Error> {
    term_equiv_with_cap(a, b, n, DEFAULT_WIDTH_CAP)
}

pub fn term_equiv_with_cap(a: &Term, b: &Term, n: u32, cap: u32) -> Result<TermEquiv, Error> {
    if n > cap {
        return Err(Error::WidthCap { width: n, cap });
    }
    a.well_formed(n)?;
    b.well_formed(n)?;
    for value in 0..(1u64 << n) {
        let packet = Packet::new(n, value as u32).expect("value in range");
        let input = PacketSet::singleton(packet);
        let left = eval_raw(a, &input);
        let right = eval_raw(b, &input);
        if left != right {
            return Ok(TermEquiv::Witness {
                packet,
                left,
                right,
            });
        }
    }
    Ok(TermEquiv::Equivalent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{point_match, MatchExpr, Trit};

    fn set(width: u32, strings: &[&str]) -> PacketSet {
        PacketSet::from_packets(width, strings.iter().map(|s| s.parse().unwrap())).unwrap()
    }

    fn run(s: &str) -> MatchExpr {
        let trits: Vec<Trit> = s.chars().map(|c| Trit::from_char(c).unwrap()).collect();
        MatchExpr::literal_run(&trits)
    }

    fn pm(i: u32, k: bool, n: u32) -> Term {
        Term::test(point_match(i, k, n).unwrap())
    }

    #[test]
    fn assign_rewrites_one_bit() {
        let out = eval(&Term::assign(2, true), &set(2, &["00"])).unwrap();
        assert_eq!(out, set(2, &["01"]));
    }

    #[test]
    fn tests_filter_by_intersection() {
        let t = Term::seq(Term::test(run("1x")), Term::test(run("x1")));
        let out = eval(&t, &set(2, &["10", "11", "01"])).unwrap();
        assert_eq!(out, set(2, &["11"]));
    }

    #[test]
    fn bot_drops_everything() {
        let out = eval(&Term::Bot, &set(2, &["00", "01", "10", "11"])).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn star_of_increment_reaches_all_values() {
        // Two-bit binary increment: flip bit 2, and on carry flip bit 1.
        let inc = Term::plus(
            Term::seq(pm(2, false, 2), Term::assign(2, true)),
            Term::seq(
                pm(2, true, 2),
                Term::seq(
                    Term::assign(2, false),
                    Term::plus(
                        Term::seq(pm(1, false, 2), Term::assign(1, true)),
                        Term::seq(pm(1, true, 2), Term::assign(1, false)),
                    ),
                ),
            ),
        );
        let out = eval(&Term::star(inc), &set(2, &["00"])).unwrap();
        assert_eq!(out, PacketSet::universe(2));
    }

    #[test]
    fn negation_of_test_filters_the_complement() {
        let t = Term::not(Term::test(run("1x")));
        let out = eval(&t, &set(2, &["10", "01", "00"])).unwrap();
        assert_eq!(out, set(2, &["00", "01"]));
    }

    #[test]
    fn negation_of_action_is_rejected() {
        let t = Term::not(Term::assign(1, true));
        assert_eq!(eval(&t, &set(1, &["0"])), Err(Error::NegationOfAction));
        assert_eq!(term_equiv(&t, &Term::Top, 1), Err(Error::NegationOfAction));
    }

    #[test]
    fn test_width_must_match_packet_size() {
        let t = Term::test(run("1x"));
        assert!(matches!(
            eval(&t, &set(3, &["000"])),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn contradictory_point_tests_are_bot() {
        for n in 1..=4 {
            for i in 1..=n {
                let t = Term::seq(pm(i, true, n), pm(i, false, n));
                assert_eq!(
                    term_equiv(&t, &Term::Bot, n).unwrap(),
                    TermEquiv::Equivalent
                );
            }
        }
    }

    #[test]
    fn point_test_is_idempotent() {
        let t = Term::seq(pm(2, true, 3), pm(2, true, 3));
        assert_eq!(
            term_equiv(&t, &pm(2, true, 3), 3).unwrap(),
            TermEquiv::Equivalent
        );
    }

    #[test]
    fn point_tests_sum_to_skip() {
        for n in 1..=4 {
            for i in 1..=n {
                let t = Term::plus(pm(i, false, n), pm(i, true, n));
                assert_eq!(
                    term_equiv(&t, &Term::Top, n).unwrap(),
                    TermEquiv::Equivalent
                );
            }
        }
    }

    #[test]
    fn assignments_to_distinct_bits_commute() {
        let a = Term::seq(Term::assign(1, true), Term::assign(2, false));
        let b = Term::seq(Term::assign(2, false), Term::assign(1, true));
        assert_eq!(term_equiv(&a, &b, 2).unwrap(), TermEquiv::Equivalent);
    }

    #[test]
    fn equivalence_is_reflexive() {
        let t = Term::star(Term::plus(Term::assign(1, true), pm(2, false, 2)));
        assert_eq!(term_equiv(&t, &t, 2).unwrap(), TermEquiv::Equivalent);
    }

    #[test]
    fn witness_is_lowest_diverging_singleton() {
        let out = term_equiv(&Term::assign(1, true), &Term::assign(1, false), 1).unwrap();
        assert_eq!(
            out,
            TermEquiv::Witness {
                packet: "0".parse().unwrap(),
                left: set(1, &["1"]),
                right: set(1, &["0"]),
            }
        );
    }

    #[test]
    fn equivalence_respects_cap() {
        assert!(matches!(
            term_equiv_with_cap(&Term::Top, &Term::Top, 8, 4),
            Err(Error::WidthCap { width: 8, cap: 4 })
        ));
    }

    #[test]
    fn eval_of_empty_set_is_empty() {
        let t = Term::star(Term::plus(
            Term::assign(1, true),
            Term::not(Term::test(run("0x"))),
        ));
        let out = eval(&t, &PacketSet::empty(2)).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn node_counters() {
        let t = Term::plus(
            Term::seq(Term::not(Term::test(run("1"))), Term::assign(1, true)),
            Term::star(Term::Top),
        );
        assert_eq!(t.count_plus(), 1);
        assert_eq!(t.count_not(), 1);
        assert_eq!(t.count_star(), 1);
    }
}
