//! Command-line interface.
//!
//! Exit codes: 0 for success/equivalent/accept, 1 for differ/reject or a
//! failed check suite, 2 for usage or parse errors, 3 for capacity errors.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use matchkat::checks::{run_suite, Suite};
use matchkat::expr::{expr_equiv, to_dnf, ExprEquiv};
use matchkat::lba::{decide_word, Decision};
use matchkat::netkat::{from_netkat, to_netkat, FieldSpec};
use matchkat::packet::PacketSet;
use matchkat::parse;
use matchkat::table::{compile_counter, compile_priority, CounterVariant};
use matchkat::term::{eval, term_equiv, TermEquiv};
use matchkat::Error;

#[derive(Parser)]
#[command(
    name = "matchkat",
    version,
    about = "Match expressions, packet-filtering terms and their toolchain"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a term to a set of packets and print the resulting set.
    Eval {
        #[arg(long)]
        width: u32,
        /// Term file ('-' for stdin).
        #[arg(long)]
        term: PathBuf,
        /// Comma-separated packet strings, e.g. '00,01'.
        #[arg(long)]
        packets: String,
    },
    /// Decide semantic equivalence of two terms.
    Equiv {
        #[arg(long)]
        width: u32,
        a: PathBuf,
        b: PathBuf,
    },
    /// Decide semantic equivalence of two match expressions.
    MatchEquiv {
        #[arg(long)]
        width: u32,
        a: PathBuf,
        b: PathBuf,
    },
    /// Print a cube cover (disjunctive normal form) of a match expression.
    Dnf {
        #[arg(long)]
        width: u32,
        file: PathBuf,
    },
    /// Translate a term into NetKAT over single-bit fields.
    ToNetkat {
        #[arg(long)]
        width: u32,
        file: PathBuf,
    },
    /// Flatten a NetKAT term into a bit-level term.
    FromNetkat {
        /// Field declaration, e.g. 'f1:3, f2:1'. May be omitted when the
        /// file starts with a 'fields' header.
        #[arg(long)]
        fields: Option<String>,
        file: PathBuf,
    },
    /// Compile a JSON table document into a term.
    CompileTable {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: TableMode,
        #[arg(long, value_enum, default_value_t = VariantArg::Fixed)]
        counter_variant: VariantArg,
    },
    /// Run a machine on a word and report accept/reject.
    Lba {
        #[arg(long)]
        machine: PathBuf,
        /// The input word as a bit string; may be empty.
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Run a law suite.
    Check {
        /// One of: axioms, packet-algebra, thm1, thm2, lemma1, tables.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableMode {
    Priority,
    Counter,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Fixed,
    Paper,
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
    }
}

fn error_exit(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if e.is_capacity() {
        ExitCode::from(3)
    } else {
        ExitCode::from(2)
    }
}

fn usage_exit(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn print_set(set: &PacketSet) {
    for p in set.iter() {
        println!("{p}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => error_exit(&e),
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Eval {
            width,
            term,
            packets,
        } => {
            let src = read_input(&term).map_err(Error::Invalid)?;
            let term = parse::parse_term(&src, width)?;
            let packets = parse::parse_packets_csv(&packets, width)?;
            let input = PacketSet::from_packets(width, packets)?;
            let output = eval(&term, &input)?;
            print_set(&output);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Equiv { width, a, b } => {
            let (sa, sb) = (
                read_input(&a).map_err(Error::Invalid)?,
                read_input(&b).map_err(Error::Invalid)?,
            );
            let ta = parse::parse_term(&sa, width)?;
            let tb = parse::parse_term(&sb, width)?;
            match term_equiv(&ta, &tb, width)? {
                TermEquiv::Equivalent => {
                    println!("equivalent");
                    Ok(ExitCode::SUCCESS)
                }
                TermEquiv::Witness {
                    packet,
                    left,
                    right,
                } => {
                    println!("not equivalent");
                    println!("witness: {packet}");
                    println!("left: {left}");
                    println!("right: {right}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::MatchEquiv { width, a, b } => {
            let (sa, sb) = (
                read_input(&a).map_err(Error::Invalid)?,
                read_input(&b).map_err(Error::Invalid)?,
            );
            let ea = parse::parse_match_expr(&sa, width)?;
            let eb = parse::parse_match_expr(&sb, width)?;
            match expr_equiv(&ea, &eb)? {
                ExprEquiv::Equivalent => {
                    println!("equivalent");
                    Ok(ExitCode::SUCCESS)
                }
                ExprEquiv::Witness(p) => {
                    println!("not equivalent");
                    println!("witness: {p}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Dnf { width, file } => {
            let src = read_input(&file).map_err(Error::Invalid)?;
            let expr = parse::parse_match_expr(&src, width)?;
            for cube in to_dnf(&expr)? {
                println!("{cube}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ToNetkat { width, file } => {
            let src = read_input(&file).map_err(Error::Invalid)?;
            let term = parse::parse_term(&src, width)?;
            let nk = to_netkat(&term, width)?;
            println!("{}", FieldSpec::single_bits(width));
            println!("{nk}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::FromNetkat { fields, file } => {
            let src = read_input(&file).map_err(Error::Invalid)?;
            let (spec, nk) = match fields {
                Some(decl) => {
                    let spec = parse::parse_field_spec(&decl)?;
                    let nk = parse::parse_netkat(&src, &spec)?;
                    (spec, nk)
                }
                None => parse::parse_netkat_document(&src)?,
            };
            let term = from_netkat(&nk, &spec)?;
            println!("packet-size {}", spec.total_bits());
            println!("{term}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CompileTable {
            file,
            mode,
            counter_variant,
        } => {
            let src = read_input(&file).map_err(Error::Invalid)?;
            let table = parse::parse_table(&src)?;
            match mode {
                TableMode::Priority => {
                    println!("packet-size {}", table.width());
                    println!("{}", compile_priority(&table));
                }
                TableMode::Counter => {
                    let variant = match counter_variant {
                        VariantArg::Fixed => CounterVariant::Fixed,
                        VariantArg::Paper => CounterVariant::Paper,
                    };
                    let enc = compile_counter(&table, variant)?;
                    println!("packet-size {}", enc.total_width());
                    println!("{}", enc.term);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lba { machine, word } => {
            let src = read_input(&machine).map_err(Error::Invalid)?;
            let m = parse::parse_lba(&src)?;
            let word = word.trim();
            let mut bits = Vec::with_capacity(word.len());
            for c in word.chars() {
                match c {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    other => return Err(Error::Invalid(format!("bad word bit {other:?}"))),
                }
            }
            match decide_word(&m, &bits)? {
                Decision::Accept => {
                    println!("accept");
                    Ok(ExitCode::SUCCESS)
                }
                Decision::Reject => {
                    println!("reject");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Check { suite, seed, cases } => {
            let Some(suite) = Suite::from_cli_token(&suite) else {
                return Ok(usage_exit(&format!(
                    "unknown suite {suite:?}; expected axioms, packet-algebra, thm1, thm2, lemma1 or tables"
                )));
            };
            let report = run_suite(suite, seed, cases)?;
            for line in &report.lines {
                println!("{line}");
            }
            println!(
                "suite {}: {} cases, {} failures",
                report.suite,
                report.cases,
                report.failures.len()
            );
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
