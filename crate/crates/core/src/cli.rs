//! The `fcm` command line.
//!
//! Exit codes: 0 on success, 1 for a negative answer (lists not equal,
//! failing check, broken witness, no refinement, failing law), 2 for usage
//! and parse errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::cmon::{universal_check, CmonError, FinCMon, GeneratorMap};
use crate::derivation::Derivation;
use crate::literal;
use crate::multiset::{self, Multiset};
use crate::nbe::{self, Perm, PermWitness};
use crate::rel::{self, LawReport, RelMonoid, Suite};
use crate::symbol::{sym, SymList, Symbol};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fcm",
    version,
    about = "Multiset equality proofs and relational law checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prove two lists equal as multisets and write the derivation.
    Prove {
        lhs: String,
        rhs: String,
        /// Derivation file to write; stdout if omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check a derivation file against two lists.
    Check {
        file: PathBuf,
        lhs: String,
        rhs: String,
    },
    /// Print the permutation witnessed by a derivation.
    Eval { file: PathBuf },
    /// Turn a permutation file into a derivation of `lhs ≈ rhs`.
    Quote {
        perm: PathBuf,
        lhs: String,
        rhs: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Split `as + bs = cs + ds` into four corner multisets.
    Refine {
        r#as: String,
        bs: String,
        cs: String,
        ds: String,
    },
    /// Run a law suite on finite carriers.
    ///
    /// Suites: kleisli, dagger_compact, bialgebra, comonad, comonoid, seely,
    /// differential, singletons, refinement_transfer. Arguments may be given
    /// as flags or positionally: `fcm laws kleisli 2 -`.
    Laws {
        #[arg(long = "suite", value_name = "NAME", required_unless_present = "suite_pos")]
        suite: Option<String>,
        /// Carrier size.
        #[arg(long = "size", value_name = "N", required_unless_present = "size_pos")]
        size: Option<usize>,
        /// Truncation degree for suites on `!A`; `-` for none.
        #[arg(long = "degree", value_name = "K")]
        degree: Option<String>,
        /// A monoid table to check alongside the suite.
        #[arg(long)]
        monoid: Option<PathBuf>,
        #[arg(value_name = "SUITE", conflicts_with = "suite")]
        suite_pos: Option<String>,
        #[arg(value_name = "SIZE", conflicts_with = "size")]
        size_pos: Option<usize>,
        #[arg(value_name = "DEGREE", conflicts_with = "degree")]
        degree_pos: Option<String>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(err, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "{message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

fn negative(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_NEGATIVE,
        message: message.to_string(),
    }
}

fn io(path: &Path, e: std::io::Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

fn list(text: &str) -> Result<SymList, Failure> {
    literal::parse::<SymList>(text).map_err(|e| usage(format!("{text}: {e}")))
}

fn bag(text: &str) -> Result<Multiset<Symbol>, Failure> {
    literal::parse::<Multiset<Symbol>>(text).map_err(|e| usage(format!("{text}: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io(path, e))
}

fn read_derivation(path: &Path) -> Result<Derivation, Failure> {
    Derivation::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, dest: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match dest {
        Some(path) => fs::write(path, text).map_err(|e| io(path, e)),
        None => writeln!(out, "{text}").map_err(|e| usage(e.to_string())),
    }
}

fn answer(out: &mut dyn Write, text: impl std::fmt::Display, code: i32) -> Result<i32, Failure> {
    writeln!(out, "{text}").map_err(|e| usage(e.to_string()))?;
    Ok(code)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Prove {
            lhs,
            rhs,
            out: dest,
        } => {
            let (lhs, rhs) = (list(&lhs)?, list(&rhs)?);
            let Some(d) = nbe::decide(&lhs, &rhs) else {
                return answer(out, "NOT-EQUAL", EXIT_NEGATIVE);
            };
            emit(&d.to_json(), dest.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Check { file, lhs, rhs } => {
            let d = read_derivation(&file)?;
            let (lhs, rhs) = (list(&lhs)?, list(&rhs)?);
            match d.endpoints() {
                Ok((l, r)) if l == lhs && r == rhs => answer(out, "OK", EXIT_OK),
                Ok((l, r)) => Err(negative(format!("derivation proves {l} ≈ {r}"))),
                Err(e) => Err(negative(e)),
            }
        }
        Command::Eval { file } => {
            let d = read_derivation(&file)?;
            let w = nbe::eval(&d).map_err(negative)?;
            emit(&w.phi().to_json(), None, out)?;
            Ok(EXIT_OK)
        }
        Command::Quote {
            perm,
            lhs,
            rhs,
            out: dest,
        } => {
            let text = read(&perm)?;
            let phi =
                Perm::from_json(&text).map_err(|e| usage(format!("{}: {e}", perm.display())))?;
            let (lhs, rhs) = (list(&lhs)?, list(&rhs)?);
            let w = PermWitness::new(nbe::vectorise(&lhs), nbe::vectorise(&rhs), phi)
                .map_err(negative)?;
            emit(&nbe::quote(&w).to_json(), dest.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Refine { r#as, bs, cs, ds } => {
            let (a, b, c, d) = (bag(&r#as)?, bag(&bs)?, bag(&cs)?, bag(&ds)?);
            match multiset::refine(&a, &b, &c, &d) {
                Some(square) => answer(out, square, EXIT_OK),
                None => answer(out, "NO-REFINEMENT", EXIT_NEGATIVE),
            }
        }
        Command::Laws {
            suite,
            size,
            degree,
            monoid,
            suite_pos,
            size_pos,
            degree_pos,
        } => {
            let suite: Suite = suite
                .or(suite_pos)
                .ok_or_else(|| usage("missing suite"))?
                .parse()
                .map_err(usage)?;
            let size = size.or(size_pos).ok_or_else(|| usage("missing size"))?;
            let degree = degree.or(degree_pos).unwrap_or_else(|| "-".to_string());
            let degree = match degree.as_str() {
                "-" => 0,
                text => text
                    .parse::<usize>()
                    .map_err(|e| usage(format!("--degree {text}: {e}")))?,
            };
            let mut report = rel::law_suite(suite, size, degree).map_err(usage)?;
            if let Some(path) = monoid {
                report.merge(monoid_laws(&read(&path)?, degree)?);
            }
            write!(out, "{report}").map_err(|e| usage(e.to_string()))?;
            Ok(if report.all_pass() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

/// Laws for a monoid table read from a file: the monoid axioms, the
/// universal property for every map from `{a, b}` up to `degree`, and the
/// convolution monoid on its subsets.
fn monoid_laws(text: &str, degree: usize) -> Result<LawReport, Failure> {
    let mut report = LawReport::new();
    let m = match text.parse::<FinCMon>() {
        Ok(m) => m,
        Err(CmonError::LawViolation { law, detail }) => {
            report.check("monoid.file.laws", false, || (law.to_string(), detail));
            return Ok(report);
        }
        Err(e) => return Err(usage(e)),
    };
    report.check("monoid.file.laws", true, || unreachable!());
    let alphabet = [sym("a"), sym("b")];
    for f in GeneratorMap::all(&alphabet, m.size()) {
        let ok = universal_check(&alphabet, &m, &f, degree);
        report.check("monoid.file.universal", ok, || {
            let shown: Vec<String> =
                f.0.iter()
                    .map(|(a, &v)| format!("{a}->{}", m.carrier()[v]))
                    .collect();
            (shown.join(";"), "-".to_string())
        });
    }
    if m.size() <= rel::POWER_CARRIER_LIMIT {
        let conv = rel::convolution_monoid(&RelMonoid::from_cmon(&m));
        report.check("monoid.file.convolution", conv.is_ok(), || match conv {
            Err(e) => (e.to_string(), "-".to_string()),
            Ok(_) => unreachable!(),
        });
    }
    Ok(report)
}
