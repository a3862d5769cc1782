use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lespec::descriptor::to_text_many;
use lespec::instances::catalog;
use lespec::{parse_descriptors, Error, InstanceDescriptor, LeModule, TopologyKind};

mod report;

const EXIT_INPUT: u8 = 1;
const EXIT_AXIOM: u8 = 2;
const EXIT_FALSIFIED: u8 = 3;

#[derive(Parser)]
#[command(name = "lespec", version, about = "Prime spectra of finite le-modules")]
struct Cli {
    /// Output format; `dot` only applies to `export-dot`.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Star,
    Prime,
    Quasi,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotTarget {
    Lattice,
    Specialization,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of the described instances.
    Validate { input: String },
    /// List Spec(M), colon ideals, Spec(R/Ann(M)) and the natural map.
    Spec { input: String },
    /// List the closed sets of a topology on Spec(M) with its properties.
    Topology {
        input: String,
        #[arg(long, value_enum, default_value_t = Which::Star)]
        which: Which,
    },
    /// Run every statement check; with no inputs, on the default catalog.
    Verify { inputs: Vec<String> },
    /// Graphviz output of the lattice or of the specialization order.
    ExportDot {
        input: String,
        #[arg(long, value_enum, default_value_t = DotTarget::Lattice)]
        target: DotTarget,
    },
    /// The built-in instance catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names of all catalog instances.
    List,
    /// Descriptor text of one catalog instance.
    Show { name: String },
}

enum Failure {
    Input(String),
    Axiom(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AxiomViolation { .. }
            | Error::ModuleAxiomViolation { .. }
            | Error::ZeroRing
            | Error::NotAPoset { .. }
            | Error::NotALattice(..)
            | Error::Unbounded => Failure::Axiom(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => match emit(&cli, &text) {
            Ok(()) => ExitCode::from(code),
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_INPUT)
            }
        },
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Axiom(msg)) => {
            eprintln!("invalid: {msg}");
            ExitCode::from(EXIT_AXIOM)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

/// A file path, `catalog` for the whole catalog, or `catalog:NAME`.
fn load(input: &str) -> Result<Vec<InstanceDescriptor>, Failure> {
    if input == "catalog" {
        return Ok(catalog());
    }
    if let Some(name) = input.strip_prefix("catalog:") {
        return catalog()
            .into_iter()
            .find(|d| d.name == name)
            .map(|d| vec![d])
            .ok_or_else(|| Failure::Input(format!("no catalog instance named `{name}`")));
    }
    let text = fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))?;
    parse_descriptors(&text).map_err(|e| Failure::Input(format!("{input}: {e}")))
}

fn load_one(input: &str) -> Result<(String, LeModule), Failure> {
    let mut descriptors = load(input)?;
    if descriptors.len() != 1 {
        return Err(Failure::Input(format!(
            "{input}: expected one descriptor, found {}",
            descriptors.len()
        )));
    }
    let d = descriptors.remove(0);
    let module = d.build()?;
    Ok((d.name, module))
}

fn structured<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let json = cli.format == Format::Structured;
    match &cli.command {
        Command::Validate { input } => {
            let mut out = Vec::new();
            for d in load(input)? {
                let module = d.build()?;
                out.push(report::validation(&d.name, &module));
            }
            let text = if json {
                structured(&out)
            } else {
                out.iter().map(|v| v.to_text()).collect()
            };
            Ok((text, 0))
        }
        Command::Spec { input } => {
            let (name, module) = load_one(input)?;
            let spec = report::spectrum(&name, &module);
            Ok((if json { structured(&spec) } else { spec.to_text() }, 0))
        }
        Command::Topology { input, which } => {
            let (name, module) = load_one(input)?;
            let kind = match which {
                Which::Star => TopologyKind::Star,
                Which::Prime => TopologyKind::Prime,
                Which::Quasi => TopologyKind::Quasi,
            };
            let top = report::topology(&name, &module, kind)?;
            Ok((if json { structured(&top) } else { top.to_text() }, 0))
        }
        Command::Verify { inputs } => {
            let descriptors = if inputs.is_empty() {
                catalog()
            } else {
                let mut all = Vec::new();
                for input in inputs {
                    all.extend(load(input)?);
                }
                all
            };
            let mut instances = Vec::with_capacity(descriptors.len());
            for d in descriptors {
                let module = d.build()?;
                instances.push((d.name, module));
            }
            let report = lespec::run_all(&instances);
            for (name, t) in &report.timing {
                eprintln!("{name}: {:.1} ms", t.as_secs_f64() * 1e3);
            }
            let code = if report.summary.falsified > 0 { EXIT_FALSIFIED } else { 0 };
            let text = if json { structured(&report) } else { report::verification_text(&report) };
            Ok((text, code))
        }
        Command::ExportDot { input, target } => {
            let (name, module) = load_one(input)?;
            let dot = match target {
                DotTarget::Lattice => report::lattice_dot(&name, &module),
                DotTarget::Specialization => report::specialization_dot(&name, &module),
            };
            Ok((dot, 0))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let names: Vec<String> = catalog().into_iter().map(|d| d.name).collect();
                let text = if json {
                    structured(&names)
                } else {
                    names.iter().map(|n| format!("{n}\n")).collect()
                };
                Ok((text, 0))
            }
            CatalogAction::Show { name } => {
                let d = load(&format!("catalog:{name}"))?;
                Ok((to_text_many(&d)?, 0))
            }
        },
    }
}
