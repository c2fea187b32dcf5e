//! Display implementations whose output parses back to the same tree.
//!
//! Printing is precedence-driven: a child is parenthesized when its
//! operator binds less tightly than its context requires, and the right
//! operand of a left-associative operator is required to bind strictly
//! tighter. Left-nested literal chains print as one run token (`1x0`),
//! matching how the lexer folds runs.

use std::fmt;

use crate::expr::{MatchExpr, Trit};
use crate::netkat::{FieldSpec, NkTerm};
use crate::term::Term;

// Precedence levels for match expressions.
const E_UNION: u8 = 0;
const E_INTER: u8 = 1;
const E_CONCAT: u8 = 2;
const E_COMPL: u8 = 3;
const E_ATOM: u8 = 4;

fn expr_prec(e: &MatchExpr) -> u8 {
    match e {
        MatchExpr::Union(_, _) => E_UNION,
        MatchExpr::Inter(_, _) => E_INTER,
        MatchExpr::Concat(_, _) => {
            if e.is_literal_run() {
                E_ATOM
            } else {
                E_CONCAT
            }
        }
        MatchExpr::Compl(_) => E_COMPL,
        MatchExpr::Empty | MatchExpr::Bot(_) | MatchExpr::Lit(_) => E_ATOM,
    }
}

fn write_expr(e: &MatchExpr, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    let prec = expr_prec(e);
    if prec < min {
        write!(f, "(")?;
        write_expr(e, f, 0)?;
        return write!(f, ")");
    }
    match e {
        MatchExpr::Empty => write!(f, "eps"),
        MatchExpr::Bot(_) => write!(f, "bot"),
        MatchExpr::Lit(t) => write!(f, "{}", t.to_char()),
        MatchExpr::Concat(l, r) => {
            if let Some(run) = e.as_literal_run() {
                for t in run {
                    write!(f, "{}", t.to_char())?;
                }
                Ok(())
            } else {
                write_expr(l, f, E_CONCAT)?;
                write!(f, " @ ")?;
                write_expr(r, f, E_CONCAT + 1)
            }
        }
        MatchExpr::Union(l, r) => {
            write_expr(l, f, E_UNION)?;
            write!(f, " + ")?;
            write_expr(r, f, E_UNION + 1)
        }
        MatchExpr::Inter(l, r) => {
            write_expr(l, f, E_INTER)?;
            write!(f, " & ")?;
            write_expr(r, f, E_INTER + 1)
        }
        MatchExpr::Compl(inner) => {
            write!(f, "~")?;
            write_expr(inner, f, E_COMPL)
        }
    }
}

impl fmt::Display for MatchExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, f, 0)
    }
}

// Precedence levels shared by terms and NetKAT terms.
const T_PLUS: u8 = 0;
const T_SEQ: u8 = 1;
const T_NOT: u8 = 2;
const T_STAR: u8 = 3;
const T_ATOM: u8 = 4;

fn term_prec(t: &Term) -> u8 {
    match t {
        Term::Plus(_, _) => T_PLUS,
        Term::Seq(_, _) => T_SEQ,
        Term::Not(_) => T_NOT,
        Term::Star(_) => T_STAR,
        Term::Bot | Term::Top | Term::Test(_) | Term::Assign(_, _) => T_ATOM,
    }
}

/// A test expression that is a literal run fixing exactly one position
/// prints as the `i == k` shorthand.
fn as_point_test(e: &MatchExpr) -> Option<(u32, bool)> {
    let run = e.as_literal_run()?;
    let mut fixed = None;
    for (i, t) in run.iter().enumerate() {
        match t {
            Trit::Any => {}
            Trit::Zero | Trit::One => {
                if fixed.is_some() {
                    return None;
                }
                fixed = Some((i as u32 + 1, *t == Trit::One));
            }
        }
    }
    fixed
}

fn write_term(t: &Term, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    let prec = term_prec(t);
    if prec < min {
        write!(f, "(")?;
        write_term(t, f, 0)?;
        return write!(f, ")");
    }
    match t {
        Term::Bot => write!(f, "drop"),
        Term::Top => write!(f, "skip"),
        Term::Test(e) => match as_point_test(e) {
            Some((i, k)) => write!(f, "{i} == {}", u8::from(k)),
            None => write!(f, "test({e})"),
        },
        Term::Assign(i, k) => write!(f, "{i} <- {}", u8::from(*k)),
        Term::Plus(l, r) => {
            write_term(l, f, T_PLUS)?;
            write!(f, " + ")?;
            write_term(r, f, T_PLUS + 1)
        }
        Term::Seq(l, r) => {
            write_term(l, f, T_SEQ)?;
            write!(f, " ; ")?;
            write_term(r, f, T_SEQ + 1)
        }
        Term::Star(inner) => {
            write_term(inner, f, T_STAR)?;
            write!(f, "*")
        }
        Term::Not(inner) => {
            write!(f, "!")?;
            write_term(inner, f, T_NOT)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, 0)
    }
}

fn nk_prec(t: &NkTerm) -> u8 {
    match t {
        NkTerm::Plus(_, _) => T_PLUS,
        NkTerm::Seq(_, _) => T_SEQ,
        NkTerm::Not(_) => T_NOT,
        NkTerm::Star(_) => T_STAR,
        NkTerm::Zero | NkTerm::One | NkTerm::Dup | NkTerm::Test(_, _) | NkTerm::Assign(_, _) => {
            T_ATOM
        }
    }
}

fn write_nk(t: &NkTerm, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    let prec = nk_prec(t);
    if prec < min {
        write!(f, "(")?;
        write_nk(t, f, 0)?;
        return write!(f, ")");
    }
    match t {
        NkTerm::Zero => write!(f, "0"),
        NkTerm::One => write!(f, "1"),
        NkTerm::Dup => write!(f, "dup"),
        NkTerm::Test(field, v) => write!(f, "{field} = {v}"),
        NkTerm::Assign(field, v) => write!(f, "{field} <- {v}"),
        NkTerm::Plus(l, r) => {
            write_nk(l, f, T_PLUS)?;
            write!(f, " + ")?;
            write_nk(r, f, T_PLUS + 1)
        }
        NkTerm::Seq(l, r) => {
            write_nk(l, f, T_SEQ)?;
            write!(f, " ; ")?;
            write_nk(r, f, T_SEQ + 1)
        }
        NkTerm::Star(inner) => {
            write_nk(inner, f, T_STAR)?;
            write!(f, "*")
        }
        NkTerm::Not(inner) => {
            write!(f, "!")?;
            write_nk(inner, f, T_NOT)
        }
    }
}

impl fmt::Display for NkTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_nk(self, f, 0)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fields ")?;
        for (i, (name, bits)) in self.fields().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}:{bits}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::point_match;
    use crate::parse::{parse_field_spec, parse_match_expr, parse_netkat, parse_term};

    fn run(s: &str) -> MatchExpr {
        let trits: Vec<Trit> = s.chars().map(|c| Trit::from_char(c).unwrap()).collect();
        MatchExpr::literal_run(&trits)
    }

    #[test]
    fn runs_print_fused() {
        assert_eq!(run("1x0").to_string(), "1x0");
        assert_eq!(MatchExpr::top(3).to_string(), "xxx");
    }

    #[test]
    fn right_nested_concat_round_trips() {
        // A right operand that happens to be a literal run prints as one
        // token, which reparses to the same left-nested chain.
        let e = MatchExpr::concat(run("1"), MatchExpr::concat(run("x"), run("0")));
        assert_eq!(e.to_string(), "1 @ x0");
        assert_eq!(parse_match_expr(&e.to_string(), 3).unwrap(), e);

        // A right operand that is not a run needs parentheses.
        let f = MatchExpr::concat(run("x"), MatchExpr::concat(run("1x"), run("0x")));
        assert_eq!(f.to_string(), "x @ (1x @ 0x)");
        assert_eq!(parse_match_expr(&f.to_string(), 5).unwrap(), f);
    }

    #[test]
    fn expr_operator_precedence_prints_minimal_parens() {
        let e = MatchExpr::Union(
            Box::new(MatchExpr::Inter(
                Box::new(MatchExpr::Compl(Box::new(run("1x")))),
                Box::new(run("x1")),
            )),
            Box::new(run("00")),
        );
        assert_eq!(e.to_string(), "~1x & x1 + 00");
        assert_eq!(parse_match_expr(&e.to_string(), 2).unwrap(), e);

        let f = MatchExpr::Compl(Box::new(MatchExpr::Union(
            Box::new(run("1x")),
            Box::new(run("x1")),
        )));
        assert_eq!(f.to_string(), "~(1x + x1)");
        assert_eq!(parse_match_expr(&f.to_string(), 2).unwrap(), f);
    }

    #[test]
    fn point_tests_print_as_shorthand() {
        let t = Term::test(point_match(2, false, 3).unwrap());
        assert_eq!(t.to_string(), "2 == 0");
        assert_eq!(parse_term(&t.to_string(), 3).unwrap(), t);

        let full = Term::test(run("10x"));
        assert_eq!(full.to_string(), "test(10x)");
        assert_eq!(parse_term(&full.to_string(), 3).unwrap(), full);
    }

    #[test]
    fn term_precedence_round_trips() {
        let t = Term::plus(
            Term::seq(Term::assign(1, true), Term::star(Term::Top)),
            Term::not(Term::test(point_match(1, false, 2).unwrap())),
        );
        assert_eq!(t.to_string(), "1 <- 1 ; skip* + !1 == 0");
        assert_eq!(parse_term(&t.to_string(), 2).unwrap(), t);

        let nested_star = Term::star(Term::seq(Term::Top, Term::Bot));
        assert_eq!(nested_star.to_string(), "(skip ; drop)*");
        assert_eq!(
            parse_term(&nested_star.to_string(), 2).unwrap(),
            nested_star
        );

        let double = Term::star(Term::star(Term::Top));
        assert_eq!(double.to_string(), "skip**");
        assert_eq!(parse_term(&double.to_string(), 2).unwrap(), double);
    }

    #[test]
    fn netkat_round_trips() {
        let spec = parse_field_spec("f:3, g:1").unwrap();
        let t = NkTerm::seq(
            NkTerm::plus(NkTerm::test("f", 6), NkTerm::Dup),
            NkTerm::star(NkTerm::assign("g", 1)),
        );
        assert_eq!(t.to_string(), "(f = 6 + dup) ; g <- 1*");
        assert_eq!(parse_netkat(&t.to_string(), &spec).unwrap(), t);
    }

    #[test]
    fn field_spec_header_round_trips() {
        let spec = parse_field_spec("fields f1:3, f2:1").unwrap();
        assert_eq!(spec.to_string(), "fields f1:3, f2:1");
        assert_eq!(parse_field_spec(&spec.to_string()).unwrap(), spec);
    }
}
