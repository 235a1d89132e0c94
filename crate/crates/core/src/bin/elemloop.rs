use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use elemloop::classify::shift;
use elemloop::elementary::{elementary_loops_with, Method};
use elemloop::graph::{dependency_graph, elementary_subgraph, loops};
use elemloop::report::{analyze, names, render_text, AnalyzeOptions, CriterionResult};
use elemloop::semantics::is_model;
use elemloop::unfounded::{loop_formula_text, stable_via_witness, StabilityCriterion};
use elemloop::verify::{broken_shift, run, GenConfig, Hooks, VerifyConfig};
use elemloop::{parse_program, render_program, AtomSet, Error, Guard, Program, SourceProgram};

const OK: u8 = 0;
const GUARD: u8 = 1;
const SYNTAX: u8 = 2;
const NOT_STABLE: u8 = 3;
const VIOLATION: u8 = 4;
const NOT_A_MODEL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "elemloop",
    version,
    about = "Loops, elementary loops and stability checks for disjunctive programs"
)]
struct Cli {
    /// Largest set size any exhaustive enumeration may range over.
    #[arg(long, global = true, default_value_t = 20)]
    max_atoms: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    A,
    B,
    Bprime,
    C,
    D,
    E,
    Eprime,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    Shift,
}

#[derive(Subcommand)]
enum Command {
    /// Loops, classes, stable models and per-model stability details.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Decide elementary loops by the elementary subgraph alone.
        #[arg(long)]
        assume_hef: bool,
        /// Also list the maximal loops inside the shrunk model, for comparison.
        #[arg(long)]
        baseline: bool,
    },
    /// Check whether a set of atoms is a stable model.
    CheckModel {
        file: PathBuf,
        /// Comma-separated atom names; empty for the empty set.
        #[arg(long, allow_hyphen_values = true)]
        model: String,
        #[arg(long, value_enum, default_value = "all")]
        criterion: CriterionArg,
    },
    /// Print the shifted program.
    Shift { file: PathBuf },
    /// Print the dependency graph, or the elementary subgraph of a set.
    Graph {
        file: PathBuf,
        /// Graphviz output instead of an edge list.
        #[arg(long)]
        dot: bool,
        /// Comma-separated atoms whose elementary subgraph is wanted.
        #[arg(long)]
        elementary: Option<String>,
    },
    /// Loop formulas of every loop, for inspection.
    Formulas {
        file: PathBuf,
        /// Only elementary loops.
        #[arg(long)]
        elementary: bool,
    },
    /// Check the property catalogue on random programs.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long, default_value_t = 10)]
        max_rules: usize,
        /// Size of the atom pool programs draw from.
        #[arg(long, default_value_t = 6)]
        atoms: usize,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Summarise every `.lp` file in a directory.
    Corpus { dir: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

type Outcome = Result<u8, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } => SYNTAX,
            Error::GuardExceeded { .. } => GUARD,
            Error::PreconditionViolated(_) => NOT_A_MODEL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<Program, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: SYNTAX,
        message: format!("{}: {e}", path.display()),
    })?;
    let origin = path.display().to_string();
    Ok(parse_program(&SourceProgram::new(&text, &origin))?)
}

fn atom_list(p: &Program, list: &str) -> Result<AtomSet, String> {
    let names: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    p.table()
        .set_of(&names)
        .map_err(|n| format!("atom `{n}` does not occur in the program"))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("reports serialize")
    ));
}

fn cmd_analyze(path: &Path, format: Format, opts: AnalyzeOptions) -> Outcome {
    let p = load(path)?;
    let report = analyze(&p, opts)?;
    match format {
        Format::Json => print_json(&report),
        Format::Text => emit(&render_text(&report)),
    }
    Ok(OK)
}

#[derive(Serialize)]
struct CheckReport {
    model: Vec<String>,
    stable: bool,
    criteria: Vec<CriterionResult>,
}

fn cmd_check_model(path: &Path, model: &str, criterion: CriterionArg, guard: Guard) -> Outcome {
    let p = load(path)?;
    let not_a_model = |m: String| Failure {
        code: NOT_A_MODEL,
        message: m,
    };
    let x = atom_list(&p, model).map_err(not_a_model)?;
    if !is_model(&x, &p) {
        return Err(not_a_model(format!(
            "{} is not a model of the program; the criteria only apply to models",
            x.display(p.table())
        )));
    }
    let selected: Vec<StabilityCriterion> = match criterion {
        CriterionArg::All => StabilityCriterion::ALL.to_vec(),
        CriterionArg::A => vec![StabilityCriterion::A],
        CriterionArg::B => vec![StabilityCriterion::B],
        CriterionArg::Bprime => vec![StabilityCriterion::Bprime],
        CriterionArg::C => vec![StabilityCriterion::C],
        CriterionArg::D => vec![StabilityCriterion::D],
        CriterionArg::E => vec![StabilityCriterion::E],
        CriterionArg::Eprime => vec![StabilityCriterion::Eprime],
    };
    let verdicts = selected
        .iter()
        .map(|&c| stable_via_witness(&p, &x, c, guard))
        .collect::<Result<Vec<_>, _>>()?;
    let stable = verdicts[0].holds;
    let report = CheckReport {
        model: names(&p, &x),
        stable,
        criteria: verdicts
            .iter()
            .map(|v| CriterionResult::new(&p, v))
            .collect(),
    };
    print_json(&report);
    if verdicts.iter().any(|v| v.holds != stable) {
        return Err(Failure {
            code: VIOLATION,
            message: "stability criteria disagree".into(),
        });
    }
    Ok(if stable { OK } else { NOT_STABLE })
}

fn cmd_shift(path: &Path) -> Outcome {
    emit(&render_program(&shift(&load(path)?)));
    Ok(OK)
}

fn cmd_graph(path: &Path, dot: bool, elementary: Option<&str>) -> Outcome {
    let p = load(path)?;
    let (g, name) = match elementary {
        Some(list) => {
            let x = atom_list(&p, list).map_err(|m| Failure {
                code: NOT_A_MODEL,
                message: m,
            })?;
            (elementary_subgraph(&p, &x)?, "elementary")
        }
        None => (dependency_graph(&p), "dependency"),
    };
    if dot {
        emit(&g.to_dot(p.table(), name));
    } else {
        for (a, b) in g.edges() {
            emit(&format!("{} -> {}\n", p.name(*a), p.name(*b)));
        }
    }
    Ok(OK)
}

fn cmd_formulas(path: &Path, elementary: bool, guard: Guard) -> Outcome {
    let p = load(path)?;
    let sets = if elementary {
        elementary_loops_with(&p, Method::Auto, guard)?
    } else {
        loops(&p, guard)?
    };
    for s in &sets {
        emit(&format!("{}\n", loop_formula_text(&p, s)));
    }
    Ok(OK)
}

fn cmd_verify(cfg: VerifyConfig) -> Outcome {
    let report = run(&cfg);
    emit(&format!(
        "programs {}  checks {}  skipped {}  violations {}\n",
        report.programs,
        report.checks,
        report.skipped,
        report.failures.len()
    ));
    for f in &report.failures {
        emit(&format!(
            "\nviolated: {}\nprogram #{}: {}\nminimized counterexample:\n{}",
            f.property, f.index, f.message, f.program
        ));
    }
    Ok(if report.passed() { OK } else { VIOLATION })
}

#[derive(Serialize)]
struct CorpusLine {
    file: String,
    code: u8,
    rules: Option<usize>,
    atoms: Option<usize>,
    stable_models: Option<Vec<Vec<String>>>,
    error: Option<String>,
}

fn cmd_corpus(dir: &Path, guard: Guard) -> Outcome {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure {
            code: SYNTAX,
            message: format!("{}: {e}", dir.display()),
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "lp"))
        .collect();
    files.sort();
    let lines: Vec<CorpusLine> = files
        .par_iter()
        .map(|f| {
            let file = f
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let result = load(f).and_then(|p| {
                let r = analyze(
                    &p,
                    AnalyzeOptions {
                        guard,
                        ..Default::default()
                    },
                )?;
                Ok((p, r))
            });
            match result {
                Ok((p, r)) => CorpusLine {
                    file,
                    code: OK,
                    rules: Some(p.len()),
                    atoms: Some(p.atoms().len()),
                    stable_models: Some(r.stable_models),
                    error: None,
                },
                Err(e) => CorpusLine {
                    file,
                    code: e.code,
                    rules: None,
                    atoms: None,
                    stable_models: None,
                    error: Some(e.message),
                },
            }
        })
        .collect();
    for l in &lines {
        emit(&format!(
            "{}\n",
            serde_json::to_string(l).expect("lines serialize")
        ));
    }
    Ok(lines.iter().map(|l| l.code).max().unwrap_or(OK))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guard = Guard(cli.max_atoms);
    let outcome = match &cli.command {
        Command::Analyze {
            file,
            format,
            assume_hef,
            baseline,
        } => cmd_analyze(
            file,
            *format,
            AnalyzeOptions {
                guard,
                assume_hef: *assume_hef,
                baseline: *baseline,
            },
        ),
        Command::CheckModel {
            file,
            model,
            criterion,
        } => cmd_check_model(file, model, *criterion, guard),
        Command::Shift { file } => cmd_shift(file),
        Command::Graph {
            file,
            dot,
            elementary,
        } => cmd_graph(file, *dot, elementary.as_deref()),
        Command::Formulas { file, elementary } => cmd_formulas(file, *elementary, guard),
        Command::Verify {
            seed,
            count,
            max_rules,
            atoms,
            inject_fault,
        } => cmd_verify(VerifyConfig {
            seed: *seed,
            count: *count,
            gen: GenConfig {
                max_rules: *max_rules,
                atoms: *atoms,
            },
            guard,
            hooks: match inject_fault {
                Some(Fault::Shift) => Hooks {
                    shift: broken_shift,
                },
                None => Hooks::default(),
            },
        }),
        Command::Corpus { dir } => cmd_corpus(dir, guard),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
