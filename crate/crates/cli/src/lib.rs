//! Command-line front end. Every subcommand is a thin adapter over a library
//! call; machine-readable records go to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 when every verdict passed, 1 when a verdict failed, 2 for
//! usage, file and parse errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use posetop::calculus::{exp_circle_type, grassmannian_type, oriented_grassmannian_type, partition_type};
use posetop::complementation::verify;
use posetop::configuration::{circle_model_check, neighborly_bound, predicted_betti_exp2, FuchsTable};
use posetop::diagram::cylinder_check;
use posetop::grassmann::property_battery;
use posetop::homology::philip_hall_check;
use posetop::{
    generate, reduced_homology, BoundedPoset, Coefficients, Error, FinitePoset, PosetDiagram, SimplicialComplex,
};

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: Vec<String>,
    pub stderr: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffArg {
    Z,
    Z2,
}

impl From<CoeffArg> for Coefficients {
    fn from(c: CoeffArg) -> Self {
        match c {
            CoeffArg::Z => Coefficients::Integers,
            CoeffArg::Z2 => Coefficients::Mod2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "posetop", version, about = "Order complexes, homology and complementation checks for finite posets")]
struct Cli {
    /// Coefficient ring for homology.
    #[arg(long, global = true, value_enum)]
    coeff: Option<CoeffArg>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced homology of a `.cplx` complex.
    Homology { file: PathBuf },
    /// Möbius number of a bounded `.poset`.
    Mobius { file: PathBuf },
    /// Order complex of a `.poset`, as `.cplx`.
    Ordercomplex { file: PathBuf },
    /// Möbius number against the reduced Euler characteristic.
    PhilipHall { file: PathBuf },
    /// Emits a generated poset in `.poset` format.
    Generate {
        /// boolean, partition, chain or exp-discrete.
        kind: String,
        params: Vec<usize>,
    },
    #[command(subcommand)]
    Complementation(ComplementationCommand),
    #[command(subcommand)]
    Calc(CalcCommand),
    #[command(subcommand)]
    Config(ConfigCommand),
    #[command(subcommand)]
    Grassmann(GrassmannCommand),
    #[command(subcommand)]
    Diagram(DiagramCommand),
}

#[derive(Debug, Subcommand)]
enum ComplementationCommand {
    /// Complement removal and wedge comparison at one element.
    Verify {
        file: PathBuf,
        #[arg(long)]
        z: String,
    },
}

#[derive(Debug, Args)]
struct N {
    #[arg(long)]
    n: u32,
}

#[derive(Debug, Subcommand)]
enum CalcCommand {
    Grassmannian {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
    Oriented(N),
    Partition(N),
    ExpCircle(N),
}

#[derive(Debug, Subcommand)]
enum ConfigCommand {
    Fuchs(N),
    Exp2Betti(N),
    Circle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    Neighborly(N),
}

#[derive(Debug, Subcommand)]
enum GrassmannCommand {
    /// Seeded property battery for the eigenvalue flag map.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
enum DiagramCommand {
    /// Grothendieck construction of a `.pdiag`, as `.poset`.
    Grothendieck { file: PathBuf },
    /// Diagram axioms, plus the cylinder check over a two-element chain.
    Check { file: PathBuf },
}

// Input or usage trouble; always exit 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Report {
    records: Vec<String>,
    pass: bool,
    summary: String,
}

impl Report {
    fn info(records: Vec<String>, summary: impl Into<String>) -> Self {
        Report {
            records,
            pass: true,
            summary: summary.into(),
        }
    }

    fn verdict(records: Vec<String>, pass: bool, summary: impl Into<String>) -> Self {
        Report {
            records,
            pass,
            summary: summary.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn lines(text: &str) -> Vec<String> {
    text.lines().map(String::from).collect()
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutcome {
                    code: 0,
                    stdout: lines(&text),
                    stderr: vec![],
                },
                _ => CommandOutcome {
                    code: 2,
                    stdout: vec![],
                    stderr: lines(&text),
                },
            };
        }
    };
    let quiet = cli.quiet;
    match dispatch(cli) {
        Ok(report) => CommandOutcome {
            code: if report.pass { 0 } else { 1 },
            stdout: report.records,
            stderr: if quiet { vec![] } else { vec![report.summary] },
        },
        Err(Failure(msg)) => CommandOutcome {
            code: 2,
            stdout: vec![],
            stderr: vec![format!("error: {msg}")],
        },
    }
}

fn dispatch(cli: Cli) -> Result<Report, Failure> {
    let coeff: Coefficients = cli.coeff.unwrap_or(CoeffArg::Z).into();
    match cli.command {
        Command::Homology { file } => {
            let k = SimplicialComplex::parse(&read(&file)?)?;
            let h = reduced_homology(&k, coeff);
            Ok(Report::info(h.records(), format!("{}: {h}", file.display())))
        }
        Command::Mobius { file } => {
            let p = BoundedPoset::new(FinitePoset::parse(&read(&file)?)?)?;
            let mu = p.mobius();
            Ok(Report::info(vec![format!("mobius {mu}")], format!("mu(0, 1) = {mu}")))
        }
        Command::Ordercomplex { file } => {
            let p = FinitePoset::parse(&read(&file)?)?;
            let k = p.order_complex();
            let summary = format!("{} maximal chains", k.facets().len());
            Ok(Report::info(lines(&k.to_cplx_text()), summary))
        }
        Command::PhilipHall { file } => {
            let p = BoundedPoset::new(FinitePoset::parse(&read(&file)?)?)?;
            let r = philip_hall_check(&p)?;
            let summary = format!("mobius {} vs reduced euler characteristic {}", r.mobius, r.euler_characteristic);
            Ok(Report::verdict(r.records(), r.pass, summary))
        }
        Command::Generate { kind, params } => {
            let p = generate(&kind, &params)?;
            Ok(Report::info(lines(&p.to_poset_text()), format!("{} elements", p.len())))
        }
        Command::Complementation(ComplementationCommand::Verify { file, z }) => {
            let l = BoundedPoset::new(FinitePoset::parse(&read(&file)?)?)?;
            let r = verify(&l, &z, coeff)?;
            let summary = format!(
                "Co({z}) has {} elements, antichain {}, remainder acyclic {}",
                r.complements.len(),
                r.antichain,
                r.acyclic
            );
            Ok(Report::verdict(r.records(), r.passed(), summary))
        }
        Command::Calc(c) => {
            let t = match c {
                CalcCommand::Grassmannian { n, d } => grassmannian_type(n, d)?,
                CalcCommand::Oriented(N { n }) => oriented_grassmannian_type(n)?,
                CalcCommand::Partition(N { n }) => partition_type(n)?,
                CalcCommand::ExpCircle(N { n }) => exp_circle_type(n)?,
            };
            Ok(Report::info(t.records(), t.to_string()))
        }
        Command::Config(c) => match c {
            ConfigCommand::Fuchs(N { n }) => {
                let t = FuchsTable::new(u64::from(n));
                Ok(Report::info(t.records(), format!("H^*(B(R^2, {n}); Z/2)")))
            }
            ConfigCommand::Exp2Betti(N { n }) => {
                let p = predicted_betti_exp2(u64::from(n))?;
                let summary = format!("{} nonzero reduced ranks", p.betti.len());
                Ok(Report::info(p.records(), summary))
            }
            ConfigCommand::Circle { n, m } => {
                let r = circle_model_check(n, m)?;
                let summary = format!("boundary of C({m}, {}): {}", 2 * n, r.homology);
                Ok(Report::verdict(r.records(), r.pass, summary))
            }
            ConfigCommand::Neighborly(N { n }) => {
                let b = neighborly_bound(u64::from(n))?;
                Ok(Report::info(vec![format!("bound {b}")], format!("dimension at least {b}")))
            }
        },
        Command::Grassmann(GrassmannCommand::Check { n, samples }) => {
            let seed = cli.seed.unwrap_or(0);
            let r = property_battery(n, samples, seed)?;
            let summary = format!("n = {n}, {samples} samples, seed {seed}");
            Ok(Report::verdict(r.records(), r.passed(), summary))
        }
        Command::Diagram(DiagramCommand::Grothendieck { file }) => {
            let d = PosetDiagram::parse(&read(&file)?)?;
            let g = d.grothendieck()?;
            Ok(Report::info(lines(&g.to_poset_text()), format!("{} elements", g.len())))
        }
        Command::Diagram(DiagramCommand::Check { file }) => {
            let d = PosetDiagram::parse(&read(&file)?)?;
            let v = d.validate();
            let mut records = v.records();
            let mut pass = v.passed();
            let base = d.base();
            if pass && base.len() == 2 && base.covers().len() == 1 {
                let c = cylinder_check(&d)?;
                pass = c.pass;
                records.extend(c.records().into_iter().filter(|r| !r.starts_with("verdict")));
            } else {
                records.push("cylinder n/a".into());
            }
            records.push(format!("verdict {}", if pass { "pass" } else { "fail" }));
            Ok(Report::verdict(records, pass, format!("{} base nodes", base.len())))
        }
    }
}
