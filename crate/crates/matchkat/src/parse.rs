//! Parsers for the concrete syntaxes.
//!
//! Match expressions: literals `0 1 x` (juxtaposed runs such as `1x0` are
//! one token), `@` concatenation, `&` intersection, `+` union, `~`
//! complement (tightest), `eps`, `bot`, `T(n)`, parentheses. Precedence:
//! `~` > `@` > `&` > `+`.
//!
//! Terms: `drop`, `skip`, `test(EXPR)`, `i <- k`, `i == k`, `;`, `+`,
//! postfix `*`, `!` on tests, parentheses. Precedence: `*` > `!` > `;` > `+`.
//!
//! NetKAT: `0`, `1`, `dup`, `f = k`, `f <- k`, with the same operator
//! precedence as terms, over a field declaration `fields f1:3, f2:1`.
//!
//! Tables and machine descriptions are JSON documents; see [`TableFile`]
//! and [`LbaFile`] for the schemas.
//!
//! `bot` carries no width in the concrete syntax; the expression parser
//! infers widths from context against the expected width passed by the
//! caller. A concatenation in which neither side has a determinable width
//! (both sides built only from `bot`) is rejected.

use crate::error::{Error, ParseError, SourceSpan};
use crate::expr::{MatchExpr, Trit};
use crate::lba::{Lba, LbaFile};
use crate::netkat::{FieldSpec, NkTerm};
use crate::packet::Packet;
use crate::table::{Table, TableFile};
use crate::term::Term;

fn err(message: impl Into<String>, span: SourceSpan) -> ParseError {
    ParseError::new(message, Some(span))
}

// ---------------------------------------------------------------------------
// Match expressions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum ETok {
    Run(Vec<Trit>),
    Num(u64),
    Plus,
    Amp,
    At,
    Tilde,
    LParen,
    RParen,
    Eps,
    Bot,
    Top,
}

fn lex_expr(src: &str, offset: usize) -> Result<Vec<(ETok, SourceSpan)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i + offset;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(ETok::Plus),
            '&' => Some(ETok::Amp),
            '@' => Some(ETok::At),
            '~' => Some(ETok::Tilde),
            '(' => Some(ETok::LParen),
            ')' => Some(ETok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, SourceSpan::new(start, start + 1)));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == 'x' {
            let begin = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_digit() || bytes[i] == b'x') {
                i += 1;
            }
            let chunk = &src[begin..i];
            let span = SourceSpan::new(begin + offset, i + offset);
            if chunk.chars().all(|c| matches!(c, '0' | '1' | 'x')) {
                let trits = chunk.chars().map(|c| Trit::from_char(c).unwrap()).collect();
                out.push((ETok::Run(trits), span));
            } else if chunk.chars().all(|c| c.is_ascii_digit()) {
                let n = chunk
                    .parse::<u64>()
                    .map_err(|_| err(format!("number {chunk} out of range"), span))?;
                out.push((ETok::Num(n), span));
            } else {
                return Err(err(format!("malformed literal {chunk:?}"), span)
                    .expecting(["literal run over 0/1/x", "number"]));
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let begin = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &src[begin..i];
            let span = SourceSpan::new(begin + offset, i + offset);
            let tok = match word {
                "eps" => ETok::Eps,
                "bot" => ETok::Bot,
                "T" => ETok::Top,
                other => {
                    return Err(err(format!("unknown keyword {other:?}"), span)
                        .expecting(["eps", "bot", "T(n)"]))
                }
            };
            out.push((tok, span));
            continue;
        }
        return Err(err(
            format!("unexpected character {c:?}"),
            SourceSpan::new(start, start + 1),
        ));
    }
    Ok(out)
}

struct ExprParser {
    toks: Vec<(ETok, SourceSpan)>,
    pos: usize,
    end: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<&ETok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> SourceSpan {
        self.toks
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or(SourceSpan::new(self.end, self.end))
    }

    fn bump(&mut self) -> (ETok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: ETok, what: &str) -> Result<SourceSpan, ParseError> {
        if self.peek() == Some(&tok) {
            Ok(self.bump().1)
        } else {
            Err(err(format!("expected {what}"), self.span()).expecting([what]))
        }
    }

    fn union(&mut self) -> Result<MatchExpr, ParseError> {
        let mut acc = self.inter()?;
        while self.peek() == Some(&ETok::Plus) {
            self.bump();
            let rhs = self.inter()?;
            acc = MatchExpr::Union(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn inter(&mut self) -> Result<MatchExpr, ParseError> {
        let mut acc = self.cat()?;
        while self.peek() == Some(&ETok::Amp) {
            self.bump();
            let rhs = self.cat()?;
            acc = MatchExpr::Inter(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn cat(&mut self) -> Result<MatchExpr, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&ETok::At) {
            self.bump();
            let rhs = self.unary()?;
            acc = MatchExpr::Concat(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MatchExpr, ParseError> {
        if self.peek() == Some(&ETok::Tilde) {
            self.bump();
            let inner = self.unary()?;
            return Ok(MatchExpr::Compl(Box::new(inner)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<MatchExpr, ParseError> {
        match self.peek() {
            Some(ETok::Run(_)) => {
                let (tok, _) = self.bump();
                let ETok::Run(trits) = tok else {
                    unreachable!()
                };
                Ok(MatchExpr::literal_run(&trits))
            }
            Some(ETok::Eps) => {
                self.bump();
                Ok(MatchExpr::Empty)
            }
            Some(ETok::Bot) => {
                self.bump();
                // Width resolved by context in resolve_widths.
                Ok(MatchExpr::Bot(0))
            }
            Some(ETok::Top) => {
                self.bump();
                self.expect(ETok::LParen, "(")?;
                let n = self.number("wildcard width")?;
                self.expect(ETok::RParen, ")")?;
                if n > crate::packet::MAX_WIDTH as u64 {
                    return Err(err(format!("width {n} too large"), self.span()));
                }
                Ok(MatchExpr::top(n as u32))
            }
            Some(ETok::LParen) => {
                self.bump();
                let inner = self.union()?;
                self.expect(ETok::RParen, ")")?;
                Ok(inner)
            }
            _ => Err(err("expected an expression", self.span()).expecting([
                "literal run",
                "eps",
                "bot",
                "T(n)",
                "(",
                "~",
            ])),
        }
    }

    /// A number token, also accepting a run made of binary digits (the lexer
    /// cannot tell `10` inside `T(10)` from a literal run).
    fn number(&mut self, what: &str) -> Result<u64, ParseError> {
        match self.peek() {
            Some(ETok::Num(_)) => {
                let (tok, _) = self.bump();
                let ETok::Num(n) = tok else { unreachable!() };
                Ok(n)
            }
            Some(ETok::Run(_)) => {
                let (tok, span) = self.bump();
                let ETok::Run(trits) = tok else {
                    unreachable!()
                };
                let digits: Option<String> = trits
                    .iter()
                    .map(|t| match t {
                        Trit::Zero => Some('0'),
                        Trit::One => Some('1'),
                        Trit::Any => None,
                    })
                    .collect();
                let digits = digits.ok_or_else(|| err(format!("expected {what}"), span))?;
                digits
                    .parse::<u64>()
                    .map_err(|_| err(format!("{what} out of range"), span))
            }
            _ => Err(err(format!("expected {what}"), self.span()).expecting(["number"])),
        }
    }
}

/// Width of an expression as far as it is determined by its literals; `bot`
/// alone has no width of its own.
fn inferred_width(e: &MatchExpr) -> Option<u32> {
    match e {
        MatchExpr::Empty => Some(0),
        MatchExpr::Bot(_) => None,
        MatchExpr::Lit(_) => Some(1),
        MatchExpr::Concat(l, r) => Some(inferred_width(l)? + inferred_width(r)?),
        MatchExpr::Union(l, r) | MatchExpr::Inter(l, r) => {
            inferred_width(l).or_else(|| inferred_width(r))
        }
        MatchExpr::Compl(e) => inferred_width(e),
    }
}

/// Pushes the expected width down the tree, assigning widths to `bot` leaves
/// and checking every determined width on the way.
fn resolve_widths(e: MatchExpr, target: u32, whole: SourceSpan) -> Result<MatchExpr, ParseError> {
    let mismatch = |found: u32| {
        err(
            format!("expression has width {found}, expected {target}"),
            whole,
        )
    };
    match e {
        MatchExpr::Empty => {
            if target == 0 {
                Ok(MatchExpr::Empty)
            } else {
                Err(mismatch(0))
            }
        }
        MatchExpr::Bot(_) => Ok(MatchExpr::Bot(target)),
        MatchExpr::Lit(t) => {
            if target == 1 {
                Ok(MatchExpr::Lit(t))
            } else {
                Err(mismatch(1))
            }
        }
        MatchExpr::Union(l, r) => Ok(MatchExpr::Union(
            Box::new(resolve_widths(*l, target, whole)?),
            Box::new(resolve_widths(*r, target, whole)?),
        )),
        MatchExpr::Inter(l, r) => Ok(MatchExpr::Inter(
            Box::new(resolve_widths(*l, target, whole)?),
            Box::new(resolve_widths(*r, target, whole)?),
        )),
        MatchExpr::Compl(inner) => Ok(MatchExpr::Compl(Box::new(resolve_widths(
            *inner, target, whole,
        )?))),
        MatchExpr::Concat(l, r) => {
            let (wl, wr) = (inferred_width(&l), inferred_width(&r));
            let (wl, wr) = match (wl, wr) {
                (Some(a), Some(b)) => {
                    if a + b != target {
                        return Err(mismatch(a + b));
                    }
                    (a, b)
                }
                (Some(a), None) => {
                    if a > target {
                        return Err(err(
                            format!("left of @ has width {a}, wider than expected {target}"),
                            whole,
                        ));
                    }
                    (a, target - a)
                }
                (None, Some(b)) => {
                    if b > target {
                        return Err(err(
                            format!("right of @ has width {b}, wider than expected {target}"),
                            whole,
                        ));
                    }
                    (target - b, b)
                }
                (None, None) => {
                    return Err(err(
                        "cannot infer the width of bot on either side of @",
                        whole,
                    ))
                }
            };
            Ok(MatchExpr::Concat(
                Box::new(resolve_widths(*l, wl, whole)?),
                Box::new(resolve_widths(*r, wr, whole)?),
            ))
        }
    }
}

/// Parses a match expression of the expected width.
pub fn parse_match_expr(src: &str, width: u32) -> Result<MatchExpr, ParseError> {
    parse_match_expr_at(src, width, 0)
}

fn parse_match_expr_at(src: &str, width: u32, offset: usize) -> Result<MatchExpr, ParseError> {
    let toks = lex_expr(src, offset)?;
    let mut parser = ExprParser {
        toks,
        pos: 0,
        end: offset + src.len(),
    };
    let expr = parser.union()?;
    if parser.pos != parser.toks.len() {
        return Err(err("unexpected trailing input", parser.span()));
    }
    let whole = SourceSpan::new(offset, offset + src.len());
    let expr = resolve_widths(expr, width, whole)?;
    debug_assert_eq!(expr.validate().ok(), Some(width));
    Ok(expr)
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum TTok {
    Num(u64),
    Arrow,
    EqEq,
    Semi,
    Plus,
    Star,
    Bang,
    LParen,
    RParen,
    Drop,
    Skip,
    /// Raw text between the parentheses of `test(...)`.
    TestExpr(String, usize),
}

fn lex_term(src: &str) -> Result<Vec<(TTok, SourceSpan)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            ';' => Some(TTok::Semi),
            '+' => Some(TTok::Plus),
            '*' => Some(TTok::Star),
            '!' => Some(TTok::Bang),
            '(' => Some(TTok::LParen),
            ')' => Some(TTok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, SourceSpan::new(start, start + 1)));
            i += 1;
            continue;
        }
        if c == '<' {
            if bytes.get(i + 1) == Some(&b'-') {
                out.push((TTok::Arrow, SourceSpan::new(start, start + 2)));
                i += 2;
                continue;
            }
            return Err(err("stray '<'", SourceSpan::new(start, start + 1)).expecting(["<-"]));
        }
        if c == '=' {
            if bytes.get(i + 1) == Some(&b'=') {
                out.push((TTok::EqEq, SourceSpan::new(start, start + 2)));
                i += 2;
                continue;
            }
            return Err(err("stray '='", SourceSpan::new(start, start + 1)).expecting(["=="]));
        }
        if c.is_ascii_digit() {
            let begin = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n = src[begin..i]
                .parse::<u64>()
                .map_err(|_| err("number out of range", SourceSpan::new(begin, i)))?;
            out.push((TTok::Num(n), SourceSpan::new(begin, i)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let begin = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &src[begin..i];
            match word {
                "drop" => out.push((TTok::Drop, SourceSpan::new(begin, i))),
                "skip" => out.push((TTok::Skip, SourceSpan::new(begin, i))),
                "test" => {
                    // Slice out the balanced parenthesized expression and
                    // hand it to the expression parser later.
                    while i < bytes.len() && (bytes[i] as char).is_whitespace() {
                        i += 1;
                    }
                    if bytes.get(i) != Some(&b'(') {
                        return Err(err("expected '(' after test", SourceSpan::new(i, i + 1)));
                    }
                    let inner_start = i + 1;
                    let mut depth = 1;
                    let mut j = inner_start;
                    while j < bytes.len() && depth > 0 {
                        match bytes[j] {
                            b'(' => depth += 1,
                            b')' => depth -= 1,
                            _ => {}
                        }
                        j += 1;
                    }
                    if depth != 0 {
                        return Err(err("unclosed test(", SourceSpan::new(begin, bytes.len())));
                    }
                    let inner_end = j - 1;
                    out.push((
                        TTok::TestExpr(src[inner_start..inner_end].to_string(), inner_start),
                        SourceSpan::new(begin, j),
                    ));
                    i = j;
                }
                other => {
                    return Err(err(
                        format!("unknown keyword {other:?}"),
                        SourceSpan::new(begin, i),
                    )
                    .expecting(["drop", "skip", "test(...)"]))
                }
            }
            continue;
        }
        return Err(err(
            format!("unexpected character {c:?}"),
            SourceSpan::new(start, start + 1),
        ));
    }
    Ok(out)
}

struct TermParser {
    toks: Vec<(TTok, SourceSpan)>,
    pos: usize,
    end: usize,
    width: u32,
}

impl TermParser {
    fn peek(&self) -> Option<&TTok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> SourceSpan {
        self.toks
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or(SourceSpan::new(self.end, self.end))
    }

    fn bump(&mut self) -> (TTok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn plus(&mut self) -> Result<(Term, SourceSpan), ParseError> {
        let (mut acc, mut span) = self.seq()?;
        while self.peek() == Some(&TTok::Plus) {
            self.bump();
            let (rhs, rspan) = self.seq()?;
            acc = Term::plus(acc, rhs);
            span = SourceSpan::new(span.start, rspan.end);
        }
        Ok((acc, span))
    }

    fn seq(&mut self) -> Result<(Term, SourceSpan), ParseError> {
        let (mut acc, mut span) = self.not()?;
        while self.peek() == Some(&TTok::Semi) {
            self.bump();
            let (rhs, rspan) = self.not()?;
            acc = Term::seq(acc, rhs);
            span = SourceSpan::new(span.start, rspan.end);
        }
        Ok((acc, span))
    }

    fn not(&mut self) -> Result<(Term, SourceSpan), ParseError> {
        if self.peek() == Some(&TTok::Bang) {
            let bang = self.bump().1;
            let (inner, ispan) = self.not()?;
            if !inner.is_test() {
                return Err(err("negation applies only to tests", ispan));
            }
            return Ok((Term::not(inner), SourceSpan::new(bang.start, ispan.end)));
        }
        self.star()
    }

    fn star(&mut self) -> Result<(Term, SourceSpan), ParseError> {
        let (mut acc, mut span) = self.atom()?;
        while self.peek() == Some(&TTok::Star) {
            let s = self.bump().1;
            acc = Term::star(acc);
            span = SourceSpan::new(span.start, s.end);
        }
        Ok((acc, span))
    }

    fn atom(&mut self) -> Result<(Term, SourceSpan), ParseError> {
        match self.peek() {
            Some(TTok::Drop) => Ok((Term::Bot, self.bump().1)),
            Some(TTok::Skip) => Ok((Term::Top, self.bump().1)),
            Some(TTok::TestExpr(_, _)) => {
                let (tok, span) = self.bump();
                let TTok::TestExpr(text, offset) = tok else {
                    unreachable!()
                };
                let expr = parse_match_expr_at(&text, self.width, offset)?;
                Ok((Term::test(expr), span))
            }
            Some(TTok::Num(_)) => {
                let (tok, ispan) = self.bump();
                let TTok::Num(index) = tok else {
                    unreachable!()
                };
                if index < 1 || index > self.width as u64 {
                    return Err(err(
                        format!("bit index {index} out of range 1..={}", self.width),
                        ispan,
                    ));
                }
                let index = index as u32;
                match self.peek() {
                    Some(TTok::Arrow) => {
                        self.bump();
                        let (bit, vspan) = self.bit_value()?;
                        Ok((
                            Term::assign(index, bit),
                            SourceSpan::new(ispan.start, vspan.end),
                        ))
                    }
                    Some(TTok::EqEq) => {
                        self.bump();
                        let (bit, vspan) = self.bit_value()?;
                        let e = crate::expr::point_match(index, bit, self.width)
                            .expect("index checked above");
                        Ok((Term::test(e), SourceSpan::new(ispan.start, vspan.end)))
                    }
                    _ => Err(err("expected '<-' or '==' after bit index", self.span())
                        .expecting(["<-", "=="])),
                }
            }
            Some(TTok::LParen) => {
                let open = self.bump().1;
                let (inner, _) = self.plus()?;
                let close = self.span();
                if self.peek() != Some(&TTok::RParen) {
                    return Err(err("expected ')'", close).expecting([")"]));
                }
                self.bump();
                Ok((inner, SourceSpan::new(open.start, close.end)))
            }
            _ => Err(err("expected a term", self.span()).expecting([
                "drop",
                "skip",
                "test(...)",
                "i <- k",
                "i == k",
                "(",
                "!",
            ])),
        }
    }

    fn bit_value(&mut self) -> Result<(bool, SourceSpan), ParseError> {
        match self.peek() {
            Some(TTok::Num(0)) => Ok((false, self.bump().1)),
            Some(TTok::Num(1)) => Ok((true, self.bump().1)),
            _ => Err(err("expected bit value 0 or 1", self.span()).expecting(["0", "1"])),
        }
    }
}

/// Parses a term over packets of size `width`.
pub fn parse_term(src: &str, width: u32) -> Result<Term, ParseError> {
    let toks = lex_term(src)?;
    let mut parser = TermParser {
        toks,
        pos: 0,
        end: src.len(),
        width,
    };
    let (term, _) = parser.plus()?;
    if parser.pos != parser.toks.len() {
        return Err(err("unexpected trailing input", parser.span()));
    }
    Ok(term)
}

// ---------------------------------------------------------------------------
// NetKAT
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum NTok {
    Num(u64),
    Ident(String),
    Eq,
    Arrow,
    Semi,
    Plus,
    Star,
    Bang,
    LParen,
    RParen,
    Colon,
    Comma,
    Dup,
    Fields,
}

fn lex_netkat(src: &str) -> Result<Vec<(NTok, SourceSpan)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            ';' => Some(NTok::Semi),
            '+' => Some(NTok::Plus),
            '*' => Some(NTok::Star),
            '!' => Some(NTok::Bang),
            '(' => Some(NTok::LParen),
            ')' => Some(NTok::RParen),
            ':' => Some(NTok::Colon),
            ',' => Some(NTok::Comma),
            '=' => Some(NTok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, SourceSpan::new(start, start + 1)));
            i += 1;
            continue;
        }
        if c == '<' {
            if bytes.get(i + 1) == Some(&b'-') {
                out.push((NTok::Arrow, SourceSpan::new(start, start + 2)));
                i += 2;
                continue;
            }
            return Err(err("stray '<'", SourceSpan::new(start, start + 1)).expecting(["<-"]));
        }
        if c.is_ascii_digit() {
            let begin = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n = src[begin..i]
                .parse::<u64>()
                .map_err(|_| err("number out of range", SourceSpan::new(begin, i)))?;
            out.push((NTok::Num(n), SourceSpan::new(begin, i)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let begin = i;
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            let word = &src[begin..i];
            let span = SourceSpan::new(begin, i);
            let tok = match word {
                "dup" => NTok::Dup,
                "fields" => NTok::Fields,
                _ => NTok::Ident(word.to_string()),
            };
            out.push((tok, span));
            continue;
        }
        return Err(err(
            format!("unexpected character {c:?}"),
            SourceSpan::new(start, start + 1),
        ));
    }
    Ok(out)
}

struct NkParser<'s> {
    toks: Vec<(NTok, SourceSpan)>,
    pos: usize,
    end: usize,
    spec: &'s FieldSpec,
}

impl NkParser<'_> {
    fn peek(&self) -> Option<&NTok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> SourceSpan {
        self.toks
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or(SourceSpan::new(self.end, self.end))
    }

    fn bump(&mut self) -> (NTok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn plus(&mut self) -> Result<(NkTerm, SourceSpan), ParseError> {
        let (mut acc, mut span) = self.seq()?;
        while self.peek() == Some(&NTok::Plus) {
            self.bump();
            let (rhs, rspan) = self.seq()?;
            acc = NkTerm::plus(acc, rhs);
            span = SourceSpan::new(span.start, rspan.end);
        }
        Ok((acc, span))
    }

    fn seq(&mut self) -> Result<(NkTerm, SourceSpan), ParseError> {
        let (mut acc, mut span) = self.not()?;
        while self.peek() == Some(&NTok::Semi) {
            self.bump();
            let (rhs, rspan) = self.not()?;
            acc = NkTerm::seq(acc, rhs);
            span = SourceSpan::new(span.start, rspan.end);
        }
        Ok((acc, span))
    }

    fn not(&mut self) -> Result<(NkTerm, SourceSpan), ParseError> {
        if self.peek() == Some(&NTok::Bang) {
            let bang = self.bump().1;
            let (inner, ispan) = self.not()?;
            if !inner.is_test() {
                return Err(err("negation applies only to tests", ispan));
            }
            return Ok((NkTerm::not(inner), SourceSpan::new(bang.start, ispan.end)));
        }
        self.star()
    }

    fn star(&mut self) -> Result<(NkTerm, SourceSpan), ParseError> {
        let (mut acc, mut span) = self.atom()?;
        while self.peek() == Some(&NTok::Star) {
            let s = self.bump().1;
            acc = NkTerm::star(acc);
            span = SourceSpan::new(span.start, s.end);
        }
        Ok((acc, span))
    }

    fn atom(&mut self) -> Result<(NkTerm, SourceSpan), ParseError> {
        match self.peek() {
            Some(NTok::Num(0)) => Ok((NkTerm::Zero, self.bump().1)),
            Some(NTok::Num(1)) => Ok((NkTerm::One, self.bump().1)),
            Some(NTok::Num(_)) => {
                Err(err("only 0 and 1 are terms", self.span()).expecting(["0", "1"]))
            }
            Some(NTok::Dup) => Ok((NkTerm::Dup, self.bump().1)),
            Some(NTok::Ident(_)) => {
                let (tok, fspan) = self.bump();
                let NTok::Ident(field) = tok else {
                    unreachable!()
                };
                let op = match self.peek() {
                    Some(NTok::Eq) => true,
                    Some(NTok::Arrow) => false,
                    _ => {
                        return Err(err(
                            format!("expected '=' or '<-' after field {field}"),
                            self.span(),
                        )
                        .expecting(["=", "<-"]))
                    }
                };
                self.bump();
                let (value, vspan) = match self.peek() {
                    Some(NTok::Num(_)) => {
                        let (tok, s) = self.bump();
                        let NTok::Num(n) = tok else { unreachable!() };
                        (n, s)
                    }
                    _ => {
                        return Err(err("expected a field value", self.span()).expecting(["number"]))
                    }
                };
                self.spec
                    .check_value(&field, value)
                    .map_err(|e| err(e.to_string(), SourceSpan::new(fspan.start, vspan.end)))?;
                let term = if op {
                    NkTerm::test(field, value)
                } else {
                    NkTerm::assign(field, value)
                };
                Ok((term, SourceSpan::new(fspan.start, vspan.end)))
            }
            Some(NTok::LParen) => {
                let open = self.bump().1;
                let (inner, _) = self.plus()?;
                let close = self.span();
                if self.peek() != Some(&NTok::RParen) {
                    return Err(err("expected ')'", close).expecting([")"]));
                }
                self.bump();
                Ok((inner, SourceSpan::new(open.start, close.end)))
            }
            _ => Err(err("expected a NetKAT term", self.span())
                .expecting(["0", "1", "dup", "f = k", "f <- k", "(", "!"])),
        }
    }
}

/// Parses a NetKAT term against a field declaration.
pub fn parse_netkat(src: &str, spec: &FieldSpec) -> Result<NkTerm, ParseError> {
    let toks = lex_netkat(src)?;
    let mut parser = NkParser {
        toks,
        pos: 0,
        end: src.len(),
        spec,
    };
    let (term, _) = parser.plus()?;
    if parser.pos != parser.toks.len() {
        return Err(err("unexpected trailing input", parser.span()));
    }
    Ok(term)
}

/// Parses a field declaration such as `fields f1:3, f2:1`; the leading
/// `fields` keyword is optional.
pub fn parse_field_spec(src: &str) -> Result<FieldSpec, ParseError> {
    let toks = lex_netkat(src)?;
    let mut pos = 0;
    if toks.get(pos).map(|(t, _)| t) == Some(&NTok::Fields) {
        pos += 1;
    }
    let (fields, next) = parse_field_pairs(&toks, pos, src.len())?;
    if next != toks.len() {
        let span = toks[next].1;
        return Err(err("unexpected trailing input", span));
    }
    FieldSpec::new(fields).map_err(|e| ParseError::new(e.to_string(), None))
}

fn parse_field_pairs(
    toks: &[(NTok, SourceSpan)],
    mut pos: usize,
    end: usize,
) -> Result<(Vec<(String, u32)>, usize), ParseError> {
    let span_at = |p: usize| {
        toks.get(p)
            .map(|(_, s)| *s)
            .unwrap_or(SourceSpan::new(end, end))
    };
    let mut fields = Vec::new();
    loop {
        let name = match toks.get(pos) {
            Some((NTok::Ident(name), _)) => name.clone(),
            _ => return Err(err("expected a field name", span_at(pos)).expecting(["identifier"])),
        };
        pos += 1;
        if toks.get(pos).map(|(t, _)| t) != Some(&NTok::Colon) {
            return Err(err("expected ':' after field name", span_at(pos)).expecting([":"]));
        }
        pos += 1;
        let bits = match toks.get(pos) {
            Some((NTok::Num(n), _)) => *n,
            _ => return Err(err("expected a field width", span_at(pos)).expecting(["number"])),
        };
        if bits == 0 || bits > crate::packet::MAX_WIDTH as u64 {
            return Err(err(format!("bad field width {bits}"), span_at(pos)));
        }
        pos += 1;
        fields.push((name, bits as u32));
        if toks.get(pos).map(|(t, _)| t) == Some(&NTok::Comma) {
            pos += 1;
            continue;
        }
        break;
    }
    Ok((fields, pos))
}

/// Parses a document consisting of a `fields ...` header followed by a term.
pub fn parse_netkat_document(src: &str) -> Result<(FieldSpec, NkTerm), ParseError> {
    let toks = lex_netkat(src)?;
    if toks.first().map(|(t, _)| t) != Some(&NTok::Fields) {
        return Err(ParseError::new(
            "document must start with a 'fields' header",
            Some(SourceSpan::new(0, 0)),
        )
        .expecting(["fields f1:3, f2:1"]));
    }
    let (fields, next) = parse_field_pairs(&toks, 1, src.len())?;
    let spec = FieldSpec::new(fields).map_err(|e| ParseError::new(e.to_string(), None))?;
    let mut parser = NkParser {
        toks: toks[next..].to_vec(),
        pos: 0,
        end: src.len(),
        spec: &spec,
    };
    let (term, _) = parser.plus()?;
    if parser.pos != parser.toks.len() {
        return Err(err("unexpected trailing input", parser.span()));
    }
    Ok((spec, term))
}

// ---------------------------------------------------------------------------
// Packets, tables, machines
// ---------------------------------------------------------------------------

pub fn parse_packet(src: &str) -> Result<Packet, ParseError> {
    src.trim().parse()
}

/// Parses a comma-separated list of packet strings, all of the given width.
pub fn parse_packets_csv(src: &str, width: u32) -> Result<Vec<Packet>, ParseError> {
    let mut packets = Vec::new();
    for part in src.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(ParseError::new("empty packet entry in list", None));
        }
        let p: Packet = part.parse()?;
        if p.width() != width {
            return Err(ParseError::new(
                format!("packet {part} has width {}, expected {width}", p.width()),
                None,
            ));
        }
        packets.push(p);
    }
    Ok(packets)
}

fn json_error(src: &str, e: &serde_json::Error) -> ParseError {
    let offset = src
        .lines()
        .take(e.line().saturating_sub(1))
        .map(|l| l.len() + 1)
        .sum::<usize>()
        + e.column().saturating_sub(1);
    let offset = offset.min(src.len());
    ParseError::new(e.to_string(), Some(SourceSpan::new(offset, offset)))
}

/// Parses a JSON table document and validates it.
pub fn parse_table(src: &str) -> Result<Table, Error> {
    let file: TableFile = serde_json::from_str(src).map_err(|e| json_error(src, &e))?;
    Table::try_from(file)
}

/// Parses a JSON machine description and validates it.
pub fn parse_lba(src: &str) -> Result<Lba, Error> {
    let file: LbaFile = serde_json::from_str(src).map_err(|e| json_error(src, &e))?;
    Lba::try_from(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::point_match;

    fn run(s: &str) -> MatchExpr {
        let trits: Vec<Trit> = s.chars().map(|c| Trit::from_char(c).unwrap()).collect();
        MatchExpr::literal_run(&trits)
    }

    #[test]
    fn parses_literal_runs_left_nested() {
        assert_eq!(parse_match_expr("1x0", 3).unwrap(), run("1x0"));
    }

    #[test]
    fn expr_precedence_tilde_at_amp_plus() {
        // ~ binds the atom, @ before &, & before +.
        let e = parse_match_expr("~1 @ 0 & x1 + 00", 2).unwrap();
        let expect = MatchExpr::Union(
            Box::new(MatchExpr::Inter(
                Box::new(MatchExpr::Concat(
                    Box::new(MatchExpr::Compl(Box::new(run("1")))),
                    Box::new(run("0")),
                )),
                Box::new(run("x1")),
            )),
            Box::new(run("00")),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn expr_example_with_parens() {
        let e = parse_match_expr("~(1x) & x1", 2).unwrap();
        let expect = MatchExpr::Inter(
            Box::new(MatchExpr::Compl(Box::new(run("1x")))),
            Box::new(run("x1")),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn expr_keywords() {
        assert_eq!(parse_match_expr("eps", 0).unwrap(), MatchExpr::Empty);
        assert_eq!(parse_match_expr("bot", 3).unwrap(), MatchExpr::Bot(3));
        assert_eq!(parse_match_expr("T(2)", 2).unwrap(), MatchExpr::top(2));
        assert_eq!(parse_match_expr("T(0)", 0).unwrap(), MatchExpr::Empty);
        assert_eq!(parse_match_expr("T(10)", 10).unwrap(), MatchExpr::top(10));
    }

    #[test]
    fn bot_width_comes_from_context() {
        let e = parse_match_expr("bot + 1x0", 3).unwrap();
        assert_eq!(
            e,
            MatchExpr::Union(Box::new(MatchExpr::Bot(3)), Box::new(run("1x0")))
        );
        let e = parse_match_expr("bot @ 1x", 3).unwrap();
        assert_eq!(
            e,
            MatchExpr::Concat(Box::new(MatchExpr::Bot(1)), Box::new(run("1x")))
        );
    }

    #[test]
    fn unresolvable_bot_concat_is_rejected() {
        assert!(parse_match_expr("bot @ bot", 3).is_err());
    }

    #[test]
    fn expr_width_mismatches_are_rejected() {
        assert!(parse_match_expr("1x", 3).is_err());
        assert!(parse_match_expr("1 + 00", 2).is_err());
        assert!(parse_match_expr("1x & x", 2).is_err());
    }

    #[test]
    fn expr_syntax_errors_have_spans() {
        let e = parse_match_expr("1x + ", 2).unwrap_err();
        assert!(e.span.is_some());
        assert!(!e.expected.is_empty());
        assert!(parse_match_expr("1x ^ 00", 2).is_err());
        assert!(parse_match_expr("x2", 2).is_err());
        assert!(parse_match_expr("foo", 2).is_err());
    }

    #[test]
    fn parses_assign_seq_point_test() {
        let t = parse_term("1 <- 1 ; 2 == 0", 2).unwrap();
        let expect = Term::seq(
            Term::assign(1, true),
            Term::test(point_match(2, false, 2).unwrap()),
        );
        assert_eq!(t, expect);
    }

    #[test]
    fn term_precedence_star_bang_semi_plus() {
        let t = parse_term("!skip + 1 == 1* ; drop", 1).unwrap();
        let expect = Term::plus(
            Term::not(Term::Top),
            Term::seq(
                Term::star(Term::test(point_match(1, true, 1).unwrap())),
                Term::Bot,
            ),
        );
        assert_eq!(t, expect);
        // Star binds before '!', so '!drop*' negates a star, which is not
        // a test.
        assert!(parse_term("!drop*", 1).is_err());
    }

    #[test]
    fn term_test_embeds_expression_syntax() {
        let t = parse_term("test(~(1x) & x1)", 2).unwrap();
        let expect = Term::test(MatchExpr::Inter(
            Box::new(MatchExpr::Compl(Box::new(run("1x")))),
            Box::new(run("x1")),
        ));
        assert_eq!(t, expect);
    }

    #[test]
    fn negating_an_action_is_a_parse_error() {
        let e = parse_term("!(1 <- 1)", 2).unwrap_err();
        assert!(e.message.contains("negation"));
        assert!(parse_term("!(1 == 1)", 2).is_ok());
        assert!(parse_term("!skip*", 2).is_err());
    }

    #[test]
    fn term_index_and_value_checks() {
        assert!(parse_term("3 <- 1", 2).is_err());
        assert!(parse_term("0 <- 1", 2).is_err());
        assert!(parse_term("1 <- 2", 2).is_err());
        assert!(parse_term("test(1x0)", 2).is_err());
    }

    #[test]
    fn parses_netkat_terms() {
        let spec = FieldSpec::new(vec![("f".into(), 3), ("g".into(), 1)]).unwrap();
        let t = parse_netkat("f = 6 ; dup ; g <- 1", &spec).unwrap();
        let expect = NkTerm::seq(
            NkTerm::seq(NkTerm::test("f", 6), NkTerm::Dup),
            NkTerm::assign("g", 1),
        );
        assert_eq!(t, expect);

        assert!(parse_netkat("h = 1", &spec).is_err());
        assert!(parse_netkat("f = 8", &spec).is_err());
        assert!(parse_netkat("!dup", &spec).is_err());
        assert!(parse_netkat("2", &spec).is_err());
        let t = parse_netkat("(f = 1 + g = 0) ; 1*", &spec).unwrap();
        assert_eq!(
            t,
            NkTerm::seq(
                NkTerm::plus(NkTerm::test("f", 1), NkTerm::test("g", 0)),
                NkTerm::star(NkTerm::One),
            )
        );
    }

    #[test]
    fn parses_field_specs() {
        let spec = parse_field_spec("fields f1:3, f2:1").unwrap();
        assert_eq!(spec.total_bits(), 4);
        assert_eq!(spec.lookup("f2"), Some((3, 1)));
        let bare = parse_field_spec("a:2,b:2").unwrap();
        assert_eq!(bare.total_bits(), 4);
        assert!(parse_field_spec("a:0").is_err());
        assert!(parse_field_spec("a:1, a:2").is_err());
    }

    #[test]
    fn parses_netkat_documents() {
        let (spec, term) = parse_netkat_document("fields pt:2, dst:1\npt = 1 ; dst <- 1").unwrap();
        assert_eq!(spec.total_bits(), 3);
        assert_eq!(
            term,
            NkTerm::seq(NkTerm::test("pt", 1), NkTerm::assign("dst", 1))
        );
        assert!(parse_netkat_document("pt = 1").is_err());
    }

    #[test]
    fn parses_packet_lists() {
        let ps = parse_packets_csv("00, 01,11", 2).unwrap();
        assert_eq!(ps.len(), 3);
        assert!(parse_packets_csv("00,1", 2).is_err());
        assert!(parse_packets_csv("00,,01", 2).is_err());
    }

    #[test]
    fn parses_table_documents() {
        let src = r#"{
            "width": 2,
            "rules": [
                {"pattern": "1x", "actions": [{"bit": 2, "value": 1}]},
                {"pattern": "x1", "actions": [{"bit": 1, "value": 0}]}
            ]
        }"#;
        let table = parse_table(src).unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table.width(), 2);

        assert!(parse_table("{").is_err());
        assert!(
            parse_table(r#"{"width": 2, "rules": [{"pattern": "1", "actions": []}]}"#).is_err()
        );
    }

    #[test]
    fn json_errors_carry_offsets() {
        let src = "{\n  \"width\": oops\n}";
        let Err(Error::Parse(e)) = parse_table(src) else {
            panic!("expected a parse error");
        };
        let span = e.span.unwrap();
        assert!(span.start <= src.len());
        assert!(src[span.start..].starts_with("oops") || span.start == src.len());
    }
}
