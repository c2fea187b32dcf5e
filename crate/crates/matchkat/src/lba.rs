//! Executable encoding of a linear-bounded-automaton word problem as a term.
//!
//! A machine configuration is packed into one packet: the tape cells, a
//! binary state code and a binary head-position code. The setup term writes
//! the initial configuration over any input packet, the step term is a sum
//! of guarded branches, one per (transition, head position) pair, and the
//! accept term tests the state code. The machine accepts its word exactly
//! when `setup ; step* ; accept` is not equivalent to drop.
//!
//! End markers sit at tape positions 1 and n but are dispatched on head
//! position alone: tape cells hold only binary symbols, and the marker
//! cells' bits are pinned to zero by the setup term and never touched.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::expr::{Cube, Trit};
use crate::packet::{Packet, PacketSet, DEFAULT_WIDTH_CAP};
use crate::table::{assign_range_const, test_range_const, BitRange};
use crate::term::{eval, term_equiv, Term, TermEquiv};

/// A tape symbol: a binary cell value or one of the immovable end markers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TapeSym {
    Zero,
    One,
    LeftMark,
    RightMark,
}

impl TapeSym {
    pub fn is_marker(self) -> bool {
        matches!(self, TapeSym::LeftMark | TapeSym::RightMark)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeadMove {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LbaTransition {
    pub from: usize,
    pub read: TapeSym,
    pub to: usize,
    pub write: TapeSym,
    pub mv: HeadMove,
}

/// A nondeterministic linear-bounded automaton over the binary alphabet with
/// end markers. The tape length `n` counts the two marker cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lba {
    states: Vec<String>,
    start: usize,
    accept: usize,
    reject: usize,
    tape_len: u32,
    transitions: Vec<LbaTransition>,
}

impl Lba {
    pub fn new(
        states: Vec<String>,
        start: &str,
        accept: &str,
        reject: &str,
        tape_len: u32,
        transitions: Vec<(String, TapeSym, String, TapeSym, HeadMove)>,
    ) -> Result<Self, Error> {
        if states.is_empty() {
            return Err(Error::Invalid("machine needs at least one state".into()));
        }
        for name in &states {
            if states.iter().filter(|s| *s == name).count() > 1 {
                return Err(Error::Invalid(format!("duplicate state name {name}")));
            }
        }
        let find = |name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::Invalid(format!("unknown state {name}")))
        };
        let (start, accept, reject) = (find(start)?, find(accept)?, find(reject)?);
        if accept == reject {
            return Err(Error::Invalid(
                "accept and reject states must differ".into(),
            ));
        }
        if tape_len < 2 {
            return Err(Error::Invalid("tape length must be at least 2".into()));
        }
        let mut resolved = Vec::with_capacity(transitions.len());
        for (from, read, to, write, mv) in transitions {
            let t = LbaTransition {
                from: find(&from)?,
                read,
                to: find(&to)?,
                write,
                mv,
            };
            if t.from == accept || t.from == reject {
                return Err(Error::Invalid(format!(
                    "no transitions may leave the accept or reject state ({from})"
                )));
            }
            match t.read {
                TapeSym::LeftMark => {
                    if t.write != TapeSym::LeftMark || t.mv != HeadMove::Right {
                        return Err(Error::Invalid(
                            "a left-marker transition must rewrite the marker and move right"
                                .into(),
                        ));
                    }
                }
                TapeSym::RightMark => {
                    if t.write != TapeSym::RightMark || t.mv != HeadMove::Left {
                        return Err(Error::Invalid(
                            "a right-marker transition must rewrite the marker and move left"
                                .into(),
                        ));
                    }
                }
                TapeSym::Zero | TapeSym::One => {
                    if t.write.is_marker() {
                        return Err(Error::Invalid(
                            "interior cells hold only binary symbols".into(),
                        ));
                    }
                }
            }
            resolved.push(t);
        }
        Ok(Lba {
            states,
            start,
            accept,
            reject,
            tape_len,
            transitions: resolved,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn tape_len(&self) -> u32 {
        self.tape_len
    }

    pub fn transitions(&self) -> &[LbaTransition] {
        &self.transitions
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn reject(&self) -> usize {
        self.reject
    }
}

fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}

/// Bit layout of an encoded configuration: tape cells first, then the state
/// code, then the head code. Head position `p` (1-based) is stored as
/// `p - 1` so positions fit in `ceil(log2(n))` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LbaLayout {
    pub tape_cells: u32,
    pub state: BitRange,
    pub head: BitRange,
}

impl LbaLayout {
    pub fn total_width(&self) -> u32 {
        self.head.hi
    }
}

pub fn packet_layout(m: &Lba) -> Result<LbaLayout, Error> {
    if m.states.len() < 3 {
        return Err(Error::Invalid("layout requires at least 3 states".into()));
    }
    let n = m.tape_len;
    let state_bits = ceil_log2(m.states.len() as u64);
    let head_bits = ceil_log2(n as u64);
    let total = n + state_bits + head_bits;
    if total > DEFAULT_WIDTH_CAP {
        return Err(Error::WidthCap {
            width: total,
            cap: DEFAULT_WIDTH_CAP,
        });
    }
    Ok(LbaLayout {
        tape_cells: n,
        state: BitRange::new(n + 1, n + state_bits),
        head: BitRange::new(n + state_bits + 1, total),
    })
}

/// The setup term: a pure assignment sequence writing the initial
/// configuration for `word`, so its output is the same singleton for any
/// nonempty input set. Marker cells are written as zero.
pub fn encode_setup(m: &Lba, word: &[bool]) -> Result<Term, Error> {
    let layout = packet_layout(m)?;
    if word.len() as u32 + 2 != m.tape_len {
        return Err(Error::Invalid(format!(
            "word length {} does not fit tape of {} cells (two are markers)",
            word.len(),
            m.tape_len
        )));
    }
    let total = layout.total_width();
    let mut parts = Vec::new();
    parts.push(Term::assign(1, false));
    for (i, &bit) in word.iter().enumerate() {
        parts.push(Term::assign(i as u32 + 2, bit));
    }
    parts.push(Term::assign(m.tape_len, false));
    parts.push(assign_range_const(layout.state, m.start as u64, total));
    parts.push(assign_range_const(layout.head, 0, total));
    Ok(Term::seq_all(parts))
}

/// The step term: a sum over all (transition, head position) branches. Each
/// branch is a single-cube guard on the state code, the head code and (for
/// interior positions) the scanned cell, followed by the write and the state
/// and head updates.
pub fn encode_step(m: &Lba) -> Result<Term, Error> {
    let layout = packet_layout(m)?;
    let total = layout.total_width();
    let n = m.tape_len;
    let mut branches = Vec::new();
    for t in &m.transitions {
        let positions: Vec<u32> = match t.read {
            TapeSym::LeftMark => vec![1],
            TapeSym::RightMark => vec![n],
            TapeSym::Zero | TapeSym::One => (2..n).collect(),
        };
        for p in positions {
            let mut trits = vec![Trit::Any; total as usize];
            write_code(&mut trits, layout.state, t.from as u64);
            write_code(&mut trits, layout.head, (p - 1) as u64);
            if let TapeSym::Zero | TapeSym::One = t.read {
                trits[(p - 1) as usize] = if t.read == TapeSym::One {
                    Trit::One
                } else {
                    Trit::Zero
                };
            }
            let guard = Term::test(Cube::new(trits).to_expr());

            let mut actions = Vec::new();
            if let TapeSym::Zero | TapeSym::One = t.write {
                actions.push(Term::assign(p, t.write == TapeSym::One));
            }
            actions.push(assign_range_const(layout.state, t.to as u64, total));
            let next = match t.mv {
                HeadMove::Left => p - 1,
                HeadMove::Right => p + 1,
            };
            actions.push(assign_range_const(layout.head, (next - 1) as u64, total));

            let mut parts = vec![guard];
            parts.extend(actions);
            branches.push(Term::seq_all(parts));
        }
    }
    Ok(Term::plus_all(branches))
}

fn write_code(trits: &mut [Trit], range: BitRange, value: u64) {
    let bits = range.len();
    for j in 1..=bits {
        let bit = (value >> (bits - j)) & 1 == 1;
        trits[(range.lo + j - 2) as usize] = if bit { Trit::One } else { Trit::Zero };
    }
}

/// The accept term: a test that the state code holds the accept state.
pub fn encode_accept(m: &Lba) -> Result<Term, Error> {
    let layout = packet_layout(m)?;
    Ok(test_range_const(
        layout.state,
        m.accept as u64,
        layout.total_width(),
    ))
}

/// Outcome of a word problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

/// The full program `setup ; step* ; accept` for a word.
pub fn encode_program(m: &Lba, word: &[bool]) -> Result<Term, Error> {
    Ok(Term::seq_all([
        encode_setup(m, word)?,
        Term::star(encode_step(m)?),
        encode_accept(m)?,
    ]))
}

/// Decides the word problem by checking whether the encoded program is
/// equivalent to drop. The setup term overwrites every bit, so the program
/// acts identically on every singleton; that shortcut is evaluated as well
/// and cross-checked against the full equivalence scan.
pub fn decide_word(m: &Lba, word: &[bool]) -> Result<Decision, Error> {
    let layout = packet_layout(m)?;
    let total = layout.total_width();
    let program = encode_program(m, word)?;

    let probe = PacketSet::singleton(Packet::zero(total));
    let by_probe = if eval(&program, &probe)?.is_empty() {
        Decision::Reject
    } else {
        Decision::Accept
    };

    let by_equiv = match term_equiv(&program, &Term::Bot, total)? {
        TermEquiv::Equivalent => Decision::Reject,
        TermEquiv::Witness { .. } => Decision::Accept,
    };
    assert_eq!(
        by_probe, by_equiv,
        "probe and equivalence decisions diverged"
    );
    Ok(by_equiv)
}

/// A machine configuration for the direct simulator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: usize,
    /// Head position, 1-based.
    pub pos: u32,
    pub tape: Vec<TapeSym>,
}

fn initial_config(m: &Lba, word: &[bool]) -> Result<Config, Error> {
    if word.len() as u32 + 2 != m.tape_len {
        return Err(Error::Invalid(format!(
            "word length {} does not fit tape of {} cells (two are markers)",
            word.len(),
            m.tape_len
        )));
    }
    let mut tape = Vec::with_capacity(m.tape_len as usize);
    tape.push(TapeSym::LeftMark);
    tape.extend(
        word.iter()
            .map(|&b| if b { TapeSym::One } else { TapeSym::Zero }),
    );
    tape.push(TapeSym::RightMark);
    Ok(Config {
        state: m.start,
        pos: 1,
        tape,
    })
}

fn successors(m: &Lba, c: &Config) -> Vec<Config> {
    let scanned = c.tape[(c.pos - 1) as usize];
    m.transitions
        .iter()
        .filter(|t| t.from == c.state && t.read == scanned)
        .map(|t| {
            let mut tape = c.tape.clone();
            tape[(c.pos - 1) as usize] = t.write;
            let pos = match t.mv {
                HeadMove::Left => c.pos - 1,
                HeadMove::Right => c.pos + 1,
            };
            Config {
                state: t.to,
                pos,
                tape,
            }
        })
        .collect()
}

/// All configurations reachable from the initial one, by breadth-first
/// search over the finite configuration graph.
pub fn reachable_configs(m: &Lba, word: &[bool]) -> Result<HashSet<Config>, Error> {
    let init = initial_config(m, word)?;
    let mut seen = HashSet::from([init.clone()]);
    let mut queue = VecDeque::from([init]);
    while let Some(cur) = queue.pop_front() {
        for next in successors(m, &cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Direct oracle for the word problem: reachability of the accept state.
pub fn simulate_lba(m: &Lba, word: &[bool]) -> Result<Decision, Error> {
    let reachable = reachable_configs(m, word)?;
    if reachable.iter().any(|c| c.state == m.accept) {
        Ok(Decision::Accept)
    } else {
        Ok(Decision::Reject)
    }
}

/// Packet encoding of a configuration under the machine's layout. Marker
/// cells are stored as zero bits, matching the setup term.
pub fn config_packet(layout: &LbaLayout, c: &Config) -> Packet {
    let mut p = Packet::zero(layout.total_width());
    for (i, sym) in c.tape.iter().enumerate() {
        if *sym == TapeSym::One {
            p = p.with_bit(i as u32 + 1, true);
        }
    }
    p = set_code(p, layout.state, c.state as u64);
    set_code(p, layout.head, (c.pos - 1) as u64)
}

fn set_code(mut p: Packet, range: BitRange, value: u64) -> Packet {
    let bits = range.len();
    for j in 1..=bits {
        p = p.with_bit(range.lo + j - 1, (value >> (bits - j)) & 1 == 1);
    }
    p
}

/// On-disk machine description.
#[derive(Debug, Serialize, Deserialize)]
pub struct LbaFile {
    pub states: Vec<String>,
    pub start: String,
    pub accept: String,
    pub reject: String,
    pub tape_length: u32,
    pub transitions: Vec<LbaTransitionFile>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LbaTransitionFile {
    pub from_state: String,
    pub read: TapeSymFile,
    pub to_state: String,
    pub write: TapeSymFile,
    #[serde(rename = "move")]
    pub mv: MoveFile,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum TapeSymFile {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "L_MARK")]
    LeftMark,
    #[serde(rename = "R_MARK")]
    RightMark,
}

impl From<TapeSymFile> for TapeSym {
    fn from(s: TapeSymFile) -> TapeSym {
        match s {
            TapeSymFile::Zero => TapeSym::Zero,
            TapeSymFile::One => TapeSym::One,
            TapeSymFile::LeftMark => TapeSym::LeftMark,
            TapeSymFile::RightMark => TapeSym::RightMark,
        }
    }
}

impl From<TapeSym> for TapeSymFile {
    fn from(s: TapeSym) -> TapeSymFile {
        match s {
            TapeSym::Zero => TapeSymFile::Zero,
            TapeSym::One => TapeSymFile::One,
            TapeSym::LeftMark => TapeSymFile::LeftMark,
            TapeSym::RightMark => TapeSymFile::RightMark,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum MoveFile {
    L,
    R,
}

impl From<&Lba> for LbaFile {
    fn from(m: &Lba) -> LbaFile {
        LbaFile {
            states: m.states.clone(),
            start: m.states[m.start].clone(),
            accept: m.states[m.accept].clone(),
            reject: m.states[m.reject].clone(),
            tape_length: m.tape_len,
            transitions: m
                .transitions
                .iter()
                .map(|t| LbaTransitionFile {
                    from_state: m.states[t.from].clone(),
                    read: t.read.into(),
                    to_state: m.states[t.to].clone(),
                    write: t.write.into(),
                    mv: match t.mv {
                        HeadMove::Left => MoveFile::L,
                        HeadMove::Right => MoveFile::R,
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<LbaFile> for Lba {
    type Error = Error;

    fn try_from(file: LbaFile) -> Result<Lba, Error> {
        let transitions = file
            .transitions
            .into_iter()
            .map(|t| {
                let mv = match t.mv {
                    MoveFile::L => HeadMove::Left,
                    MoveFile::R => HeadMove::Right,
                };
                (t.from_state, t.read.into(), t.to_state, t.write.into(), mv)
            })
            .collect();
        Lba::new(
            file.states,
            &file.start,
            &file.accept,
            &file.reject,
            file.tape_length,
            transitions,
        )
    }
}

/// Parity machine: scans the word left to right and accepts exactly the
/// words with an even number of ones. Used as a known-answer machine in
/// tests.
pub fn parity_machine(tape_len: u32) -> Lba {
    let tr =
        |from: &str, read, to: &str, write, mv| (from.to_string(), read, to.to_string(), write, mv);
    Lba::new(
        vec![
            "even".into(),
            "odd".into(),
            "accept".into(),
            "reject".into(),
        ],
        "even",
        "accept",
        "reject",
        tape_len,
        vec![
            tr(
                "even",
                TapeSym::LeftMark,
                "even",
                TapeSym::LeftMark,
                HeadMove::Right,
            ),
            tr(
                "even",
                TapeSym::Zero,
                "even",
                TapeSym::Zero,
                HeadMove::Right,
            ),
            tr("even", TapeSym::One, "odd", TapeSym::One, HeadMove::Right),
            tr("odd", TapeSym::Zero, "odd", TapeSym::Zero, HeadMove::Right),
            tr("odd", TapeSym::One, "even", TapeSym::One, HeadMove::Right),
            tr(
                "even",
                TapeSym::RightMark,
                "accept",
                TapeSym::RightMark,
                HeadMove::Left,
            ),
            tr(
                "odd",
                TapeSym::RightMark,
                "reject",
                TapeSym::RightMark,
                HeadMove::Left,
            ),
        ],
    )
    .expect("parity machine is well-formed")
}
