//! Command-line front end. [`run_command`] never exits the process; `main`
//! prints its output and uses its exit code.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::decomposition::{decomposition_tree, substitution_decompose};
use crate::error::{Error, Result};
use crate::extensions::{
    bound, extend, extend_permutation, extend_poset, extend_tournament, ExtensionResult, Metadata,
    PermVariant, PosetVariant,
};
use crate::intervals::{is_simple, maximal_proper_intervals};
use crate::io::{normalize, parse_structure, write_structure};
use crate::oracle::{find_extension, minimal_extension_size, SearchBudget};
use crate::selftest::{run_all, run_criterion, CRITERIA};
use crate::structure::{ElementId, RelationalStructure, StructureClass};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONTRACT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "simplext", version, about = "Intervals, decompositions and simple extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report whether a structure is simple, with a maximal proper interval
    /// when it is not.
    Check { file: PathBuf },
    /// Print the substitution decomposition.
    Decompose { file: PathBuf },
    /// Print the substitution decomposition tree.
    Tree { file: PathBuf },
    /// Build a simple extension and print its report.
    Extend {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Auto)]
        variant: Variant,
    },
    /// Smallest number of added elements admitting a simple extension, by
    /// exhaustive search.
    SearchMin {
        file: PathBuf,
        #[arg(long = "max-add")]
        max_add: usize,
        /// Upper limit on enumerated candidates.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// The guaranteed number of added elements for a class on N elements.
    Bound { class: String, n: usize },
    /// Run the acceptance corpus.
    Selftest {
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Auto,
    Up,
    Down,
    Updown,
    Downup,
    T1,
    T2,
    T12,
}

/// Exit status and captured output of one command.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        let code = if matches!(e, Error::ContractViolation(_)) {
            EXIT_CONTRACT
        } else {
            EXIT_INPUT
        };
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutput::ok(text),
                _ => CommandOutput {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match cli.command {
        Command::Selftest { criterion } => selftest(criterion),
        other => match dispatch(other) {
            Ok(out) => out,
            Err(e) => CommandOutput::error(&e),
        },
    }
}

fn dispatch(cmd: Command) -> Result<CommandOutput> {
    let text = match cmd {
        Command::Check { file } => check_cmd(&load(&file)?)?,
        Command::Decompose { file } => decompose_cmd(&load(&file)?)?,
        Command::Tree { file } => {
            let (s, _) = load(&file)?;
            format!("{}\n", decomposition_tree(&s)?)
        }
        Command::Extend { file, variant } => {
            let (s, class) = load(&file)?;
            let e = build(&s, class, variant)?;
            report(&s, class, &e)?
        }
        Command::SearchMin { file, max_add, cap } => {
            let (s, class) = load(&file)?;
            search_cmd(&s, class, max_add, cap)?
        }
        Command::Bound { class, n } => format!("{}\n", bound(class.parse()?, n)?),
        Command::Selftest { .. } => unreachable!("handled by run_command"),
    };
    Ok(CommandOutput::ok(text))
}

fn load(path: &Path) -> Result<(RelationalStructure, StructureClass)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_structure(&text)
}

fn ids(v: &[ElementId]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn check_cmd((s, _): &(RelationalStructure, StructureClass)) -> Result<String> {
    if is_simple(s) {
        return Ok("simple\n".into());
    }
    let maximal = maximal_proper_intervals(s)?;
    let first = maximal
        .iter()
        .find(|m| m.len() > 1)
        .ok_or_else(|| Error::ContractViolation("non-simple structure without a proper interval".into()))?;
    Ok(format!("not simple\ninterval {}\n", ids(first)))
}

fn decompose_cmd((s, class): &(RelationalStructure, StructureClass)) -> Result<String> {
    let d = substitution_decompose(s)?;
    let (q, map) = normalize(&d.quotient, *class)?;
    let mut blocks = vec![Vec::new(); map.len()];
    for (i, m) in d.members.iter().enumerate() {
        blocks[map[i]] = m.clone();
    }
    let mut out = format!("degenerate {}\nquotient\n", d.degenerate);
    out.push_str(&write_structure(&q, *class)?);
    for (i, b) in blocks.iter().enumerate() {
        out.push_str(&format!("block {i}: {}\n", ids(b)));
    }
    Ok(out)
}

fn build(s: &RelationalStructure, class: StructureClass, v: Variant) -> Result<ExtensionResult> {
    use StructureClass as C;
    let wrong = || {
        let name = v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default();
        Error::InvalidInput(format!("variant {name} does not apply to class {class}"))
    };
    match (v, class) {
        (Variant::Auto, _) => extend(s, class),
        (Variant::T1 | Variant::T2 | Variant::T12, C::Tournament) => {
            let set = extend_tournament(s)?;
            match v {
                Variant::T1 => Ok(set.t1),
                Variant::T2 => Ok(set.t2),
                _ => set.t12.ok_or_else(|| {
                    Error::InvalidInput("T12 is built only when neither T1 nor T2 is simple".into())
                }),
            }
        }
        (Variant::Up | Variant::Down, C::Permutation) => {
            let pv = if v == Variant::Up { PermVariant::Up } else { PermVariant::Down };
            Ok(extend_permutation(s)?.get(pv).result.clone())
        }
        (Variant::Up | Variant::Down | Variant::Updown | Variant::Downup, C::Poset) => {
            let pv = match v {
                Variant::Up => PosetVariant::Up,
                Variant::Down => PosetVariant::Down,
                Variant::Updown => PosetVariant::UpDown,
                _ => PosetVariant::DownUp,
            };
            Ok(extend_poset(s)?.get(pv).result.clone())
        }
        _ => Err(wrong()),
    }
}

/// Metadata with its element ids passed through `map`.
fn relabeled(m: &Metadata, map: &[ElementId]) -> Metadata {
    let f = |x: &ElementId| map[*x];
    match m {
        Metadata::Permutation {
            variant,
            entry,
            exit,
            linking,
        } => Metadata::Permutation {
            variant: *variant,
            entry: f(entry),
            exit: f(exit),
            linking: linking.iter().map(f).collect(),
        },
        other => other.clone(),
    }
}

/// The extension report. Its `simple` line is re-derived from the written
/// structure block and must agree with the construction.
pub fn report(s: &RelationalStructure, class: StructureClass, e: &ExtensionResult) -> Result<String> {
    let (ext, map) = normalize(&e.extended, class)?;
    let mut added: Vec<ElementId> = e.added.iter().map(|&x| map[x]).collect();
    added.sort_unstable();
    let structure = write_structure(&ext, class)?;
    let simple = e.is_simple();
    let (reparsed, _) = parse_structure(&structure)?;
    if is_simple(&reparsed) != simple {
        return Err(Error::ContractViolation(
            "written extension disagrees with the constructed one on simplicity".into(),
        ));
    }
    let mut out = structure;
    out.push_str(if added.is_empty() { "added\n" } else { "added " });
    if !added.is_empty() {
        out.push_str(&format!("{}\n", ids(&added)));
    }
    for l in relabeled(&e.metadata, &map).lines() {
        out.push_str(&format!("metadata {l}\n"));
    }
    out.push_str(&format!("simple {simple}\n"));
    match bound(class, s.n()) {
        Ok(b) => out.push_str(&format!("bound {b}\n")),
        Err(_) => out.push_str("bound none\n"),
    }
    out.push_str(&format!("added_count {}\n", e.added_count()));
    Ok(out)
}

fn search_cmd(s: &RelationalStructure, class: StructureClass, max_add: usize, cap: Option<u64>) -> Result<String> {
    let mut budget = SearchBudget::new(max_add);
    if let Some(c) = cap {
        budget = budget.with_cap(c);
    }
    match minimal_extension_size(s, class, budget)? {
        None => Ok(format!("minimal_added none (searched up to {max_add})\n")),
        Some(m) => {
            let found = find_extension(s, class, m, budget)?
                .ok_or_else(|| Error::ContractViolation("search result not reproducible".into()))?;
            let (ext, _) = normalize(&found.extended, class)?;
            Ok(format!("minimal_added {m}\n{}", write_structure(&ext, class)?))
        }
    }
}

fn selftest(criterion: Option<u8>) -> CommandOutput {
    let reports = match criterion {
        Some(id) => match run_criterion(id) {
            Some(r) => vec![r],
            None => {
                return CommandOutput {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: format!("error: criteria are numbered 1 to {CRITERIA}\n"),
                }
            }
        },
        None => run_all(),
    };
    let mut out = String::new();
    for r in &reports {
        out.push_str(&format!("{r}\n"));
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!(
        "selftest: {} of {} criteria passed\n",
        reports.len() - failed,
        reports.len()
    ));
    CommandOutput {
        code: if failed == 0 { EXIT_OK } else { EXIT_CONTRACT },
        stdout: out,
        stderr: String::new(),
    }
}
