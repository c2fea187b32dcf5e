//! Ternary match expressions and a Kleene-algebra-with-tests term language
//! for match-action packet processing.
//!
//! The building blocks are width-`n` [match expressions](expr::MatchExpr) —
//! ternary predicates over binary strings, closed under union, intersection
//! and complement — interpreted exactly as [sets of packets](packet::PacketSet).
//! [Terms](term::Term) combine those tests with bit assignments, choice,
//! sequencing and iteration, and act as transformers on packet sets;
//! [`term::term_equiv`] decides semantic equivalence and produces witnesses.
//!
//! On top of the core there are:
//!
//! - a [NetKAT interpreter and translations](netkat) in both directions,
//!   with executable checks of the semantic correspondences;
//! - [match-action table compilation](table) in two styles (negated
//!   priority guards and a metadata counter under star), checked against a
//!   first-match-wins oracle;
//! - an [encoding of linear-bounded-automaton word problems](lba) whose
//!   acceptance is decided by non-equivalence with drop, cross-checked
//!   against direct simulation;
//! - [parsers](parse), precedence-aware printers, [seeded generators](gen)
//!   and [law suites](checks) driving the CLI `check` command.

pub mod checks;
pub mod error;
pub mod expr;
pub mod gen;
pub mod lba;
pub mod netkat;
pub mod packet;
pub mod parse;
pub mod pretty;
pub mod table;
pub mod term;

pub use error::{Error, ParseError, SourceSpan};
pub use expr::{expr_equiv, interp, point_match, to_dnf, Cube, ExprEquiv, MatchExpr, Trit};
pub use packet::{Packet, PacketSet, DEFAULT_WIDTH_CAP, MAX_WIDTH};
pub use term::{eval, term_equiv, Term, TermEquiv};
