//! The `elpsplit` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use elpsplit_core::splitting::{enumerate_splitting_sets, esp_layered};
use elpsplit_core::syntax::validate_elp;
use elpsplit_core::topdown::{tdesp_layered, tdespb_layered};
use elpsplit_core::{
    answer_sets, check_equivalence, ground, parse_program, split, stratify, world_views, Atom, AtomSet,
    EquivalenceReport, Error, Interpretation, Limits, Program, Semantics, Stratification, SubjectiveLiteral,
    SubsetPolicy, WorldView,
};

pub mod corpus;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_SPLIT: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "elpsplit", version, about = "Answer sets, world views and epistemic splitting")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[arg(long, global = true, default_value_t = elpsplit_core::semantics::DEFAULT_MAX_ATOMS)]
    max_atoms: usize,

    #[arg(long, global = true, default_value_t = elpsplit_core::semantics::DEFAULT_MAX_SUBJECTIVE)]
    max_subjective: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Program file, or `-` for standard input
    file: PathBuf,
}

#[derive(Args, Debug)]
struct SemanticsArg {
    #[arg(long, short, value_parser = parse_semantics, default_value = "g91")]
    semantics: Semantics,
}

#[derive(Args, Debug)]
struct Layers {
    /// Splitting set as comma-separated atoms; repeat for nested sets,
    /// innermost first
    #[arg(long = "u", short = 'u', value_name = "ATOMS", required = true, allow_hyphen_values = true)]
    u: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Subsets {
    Maximal,
    All,
}

impl From<Subsets> for SubsetPolicy {
    fn from(s: Subsets) -> Self {
        match s {
            Subsets::Maximal => SubsetPolicy::Maximal,
            Subsets::All => SubsetPolicy::All,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the ground instantiation of a program
    Ground(Input),
    /// Answer sets of an objective program
    Solve(Input),
    /// World views under a semantics
    Worldviews {
        #[command(flatten)]
        semantics: SemanticsArg,
        #[command(flatten)]
        input: Input,
    },
    /// Bottom and top of a split, or every splitting set when `--u` is absent
    Split {
        #[arg(long = "u", short = 'u', value_name = "ATOMS", allow_hyphen_values = true)]
        u: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// World views composed bottom-up
    Esp {
        #[command(flatten)]
        semantics: SemanticsArg,
        #[command(flatten)]
        layers: Layers,
        #[command(flatten)]
        input: Input,
    },
    /// Candidate world views from whole bottom world views
    Tdespb {
        #[command(flatten)]
        semantics: SemanticsArg,
        #[command(flatten)]
        layers: Layers,
        #[command(flatten)]
        input: Input,
    },
    /// Candidate world views with top-down influence and subset selection
    Tdesp {
        #[command(flatten)]
        semantics: SemanticsArg,
        #[command(flatten)]
        layers: Layers,
        #[arg(long, value_enum, default_value = "maximal")]
        subsets: Subsets,
        #[command(flatten)]
        input: Input,
    },
    /// Direct, bottom-up and top-down world views side by side
    Compare {
        #[command(flatten)]
        semantics: SemanticsArg,
        #[arg(long = "u", short = 'u', value_name = "ATOMS", required = true, allow_hyphen_values = true)]
        u: String,
        #[arg(long, value_enum, default_value = "maximal")]
        subsets: Subsets,
        #[command(flatten)]
        input: Input,
    },
    /// Epistemic stratification: levels or a violating cycle
    Stratify(Input),
    /// Check every corpus file in a directory
    Corpus { dir: PathBuf },
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    s.parse().map_err(|_| format!("unknown semantics `{s}` (expected g91, k15, k15-classic or s16)"))
}

/// Parses `a,b,p(x)`. Commas inside parentheses belong to the atom.
pub fn parse_atom_list(text: &str) -> Result<AtomSet, Error> {
    let mut items = Vec::new();
    let (mut depth, mut start) = (0usize, 0usize);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                items.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    items.push(&text[start..]);
    let mut out = AtomSet::new();
    for item in items.into_iter().map(str::trim).filter(|s| !s.is_empty()) {
        let p = parse_program(&format!("{item}."))?;
        match p.rules.as_slice() {
            [r] if r.is_fact() && r.head.len() == 1 => out.extend(r.head.iter().cloned()),
            _ => {
                return Err(Error::Syntax {
                    line: 1,
                    column: 1,
                    message: format!("`{item}` is not an atom"),
                })
            }
        }
    }
    Ok(out)
}

pub(crate) enum Failure {
    Usage(String),
    Malformed(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::NoConstants | Error::NotGround(_) => EXIT_PARSE,
        Error::InvalidSplittingSet(_) => EXIT_SPLIT,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_FAILURE,
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Reads, parses and grounds a program, reporting indirect subjective
/// dependencies of constraints on `err`.
fn load(path: &Path, err: &mut dyn Write) -> Result<Program, Failure> {
    let p = ground(&parse_program(&read_text(path)?)?)?;
    for d in validate_elp(&p) {
        writeln!(err, "warning: {d}")?;
    }
    Ok(p)
}

pub fn interpretation_json(i: &Interpretation) -> Vec<String> {
    i.iter().map(ToString::to_string).collect()
}

pub fn world_view_json(w: &WorldView) -> Vec<Vec<String>> {
    w.iter().map(interpretation_json).collect()
}

fn views_json(views: &BTreeSet<WorldView>) -> Vec<Vec<Vec<String>>> {
    views.iter().map(world_view_json).collect()
}

fn literals_json(l: &BTreeSet<SubjectiveLiteral>) -> Vec<String> {
    l.iter().map(ToString::to_string).collect()
}

fn atoms_json(u: &AtomSet) -> Vec<String> {
    u.iter().map(ToString::to_string).collect()
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn write_views(out: &mut dyn Write, views: &BTreeSet<WorldView>) -> io::Result<()> {
    writeln!(out, "{}", plural(views.len(), "world view", "world views"))?;
    for w in views {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::other)?;
    writeln!(out)
}

#[derive(Serialize)]
struct ViewsJson<'a> {
    program: String,
    operation: &'a str,
    semantics: &'a str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    splitting_sets: Vec<Vec<String>>,
    world_views: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
pub struct VerdictsJson {
    pub esp_eq_direct: bool,
    pub tdespb_eq_direct: bool,
    pub tdesp_eq_direct: bool,
    pub tdespb_eq_esp: bool,
}

#[derive(Serialize)]
pub struct TraceJson {
    pub top_world_view: Vec<Vec<String>>,
    pub interface_world_view: Vec<Vec<String>>,
    pub es: Vec<String>,
    pub ec: Vec<String>,
    pub rq: Vec<String>,
}

#[derive(Serialize)]
pub struct CompareJson {
    pub program: String,
    pub semantics: String,
    pub splitting_set: Vec<String>,
    pub subsets: String,
    pub direct: Vec<Vec<Vec<String>>>,
    pub esp: Vec<Vec<Vec<String>>>,
    pub tdespb: Vec<Vec<Vec<String>>>,
    pub tdesp: Vec<Vec<Vec<String>>>,
    pub verdicts: VerdictsJson,
    pub tdesp_fixpoint: Vec<bool>,
    pub degenerate: bool,
    pub traces: Vec<TraceJson>,
}

impl CompareJson {
    pub fn new(program: String, r: &EquivalenceReport, policy: SubsetPolicy) -> Self {
        let v = r.verdicts();
        CompareJson {
            program,
            semantics: r.semantics.name().to_string(),
            splitting_set: atoms_json(&r.u),
            subsets: match policy {
                SubsetPolicy::Maximal => "maximal",
                SubsetPolicy::All => "all",
            }
            .to_string(),
            direct: views_json(&r.direct),
            esp: views_json(&r.esp),
            tdespb: views_json(&r.tdespb),
            tdesp: views_json(&r.tdesp),
            verdicts: VerdictsJson {
                esp_eq_direct: v.esp_eq_direct,
                tdespb_eq_direct: v.tdespb_eq_direct,
                tdesp_eq_direct: v.tdesp_eq_direct,
                tdespb_eq_esp: v.tdespb_eq_esp,
            },
            tdesp_fixpoint: r.tdesp_fixpoint.iter().map(|(_, ok)| *ok).collect(),
            degenerate: r.degenerate,
            traces: r
                .traces
                .iter()
                .map(|t| TraceJson {
                    top_world_view: world_view_json(&t.top_world_view),
                    interface_world_view: world_view_json(&t.interface_world_view),
                    es: literals_json(&t.requisites.es),
                    ec: literals_json(&t.requisites.ec),
                    rq: literals_json(&t.requisites.rq),
                })
                .collect(),
        }
    }
}

fn show_literals(l: &BTreeSet<SubjectiveLiteral>) -> String {
    let items: Vec<String> = l.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn show_atoms(u: &AtomSet) -> String {
    format!("{{{}}}", atoms_json(u).join(","))
}

fn write_compare(out: &mut dyn Write, r: &EquivalenceReport) -> io::Result<()> {
    writeln!(out, "semantics {}", r.semantics)?;
    writeln!(out, "splitting set {}", show_atoms(&r.u))?;
    if r.degenerate {
        writeln!(out, "note: degenerate splitting set")?;
    }
    for (name, views) in [("direct", &r.direct), ("esp", &r.esp), ("tdespb", &r.tdespb), ("tdesp", &r.tdesp)] {
        write!(out, "{name}: ")?;
        write_views(out, views)?;
    }
    let v = r.verdicts();
    writeln!(out, "esp = direct: {}", v.esp_eq_direct)?;
    writeln!(out, "tdespb = direct: {}", v.tdespb_eq_direct)?;
    writeln!(out, "tdesp = direct: {}", v.tdesp_eq_direct)?;
    writeln!(out, "tdespb = esp: {}", v.tdespb_eq_esp)?;
    for (w, ok) in &r.tdesp_fixpoint {
        writeln!(out, "tdesp candidate {w} fixpoint: {ok}")?;
    }
    for t in &r.traces {
        writeln!(
            out,
            "top {} es {} ec {} rq {}",
            t.top_world_view,
            show_literals(&t.requisites.es),
            show_literals(&t.requisites.ec),
            show_literals(&t.requisites.rq)
        )?;
    }
    Ok(())
}

fn layers(raw: &[String]) -> Result<Vec<AtomSet>, Failure> {
    raw.iter().map(|s| Ok(parse_atom_list(s)?)).collect()
}

fn views_output(
    out: &mut dyn Write,
    json: bool,
    file: &Path,
    operation: &str,
    semantics: Semantics,
    sets: &[AtomSet],
    views: &BTreeSet<WorldView>,
) -> io::Result<()> {
    if json {
        write_json(
            out,
            &ViewsJson {
                program: file.display().to_string(),
                operation,
                semantics: semantics.name(),
                splitting_sets: sets.iter().map(atoms_json).collect(),
                world_views: views_json(views),
            },
        )
    } else {
        write_views(out, views)
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let limits = Limits {
        max_subjective: cli.max_subjective,
        max_atoms: cli.max_atoms,
    };
    let json = cli.json;
    match cli.command {
        Command::Ground(input) => {
            let p = load(&input.file, err)?;
            write!(out, "{p}")?;
        }
        Command::Solve(input) => {
            let p = load(&input.file, err)?;
            let sets = answer_sets(&p)?;
            if json {
                write_json(out, &sets.iter().map(interpretation_json).collect::<Vec<_>>())?;
            } else {
                writeln!(out, "{}", plural(sets.len(), "answer set", "answer sets"))?;
                for s in &sets {
                    writeln!(out, "{s}")?;
                }
            }
        }
        Command::Worldviews { semantics, input } => {
            let p = load(&input.file, err)?;
            let views = world_views(&p, semantics.semantics, &limits)?;
            views_output(out, json, &input.file, "worldviews", semantics.semantics, &[], &views)?;
        }
        Command::Split { u, input } => {
            let p = load(&input.file, err)?;
            match u {
                Some(u) => {
                    let sp = split(&parse_atom_list(&u)?, &p)?;
                    if json {
                        #[derive(Serialize)]
                        struct SplitJson {
                            splitting_set: Vec<String>,
                            bottom: Vec<String>,
                            top: Vec<String>,
                        }
                        write_json(
                            out,
                            &SplitJson {
                                splitting_set: atoms_json(&sp.u),
                                bottom: sp.bottom.rules.iter().map(ToString::to_string).collect(),
                                top: sp.top.rules.iter().map(ToString::to_string).collect(),
                            },
                        )?;
                    } else {
                        writeln!(out, "% bottom")?;
                        write!(out, "{}", sp.bottom)?;
                        writeln!(out, "% top")?;
                        write!(out, "{}", sp.top)?;
                    }
                }
                None => {
                    let sets = enumerate_splitting_sets(&p, &limits)?;
                    if json {
                        write_json(out, &sets.iter().map(atoms_json).collect::<Vec<_>>())?;
                    } else {
                        writeln!(out, "{}", plural(sets.len(), "splitting set", "splitting sets"))?;
                        for u in &sets {
                            writeln!(out, "{}", show_atoms(u))?;
                        }
                    }
                }
            }
        }
        Command::Esp { semantics, layers: l, input } => {
            let p = load(&input.file, err)?;
            let sets = layers(&l.u)?;
            let views = esp_layered(&p, &sets, semantics.semantics, &limits)?;
            views_output(out, json, &input.file, "esp", semantics.semantics, &sets, &views)?;
        }
        Command::Tdespb { semantics, layers: l, input } => {
            let p = load(&input.file, err)?;
            let sets = layers(&l.u)?;
            let views = tdespb_layered(&p, &sets, semantics.semantics, &limits)?;
            views_output(out, json, &input.file, "tdespb", semantics.semantics, &sets, &views)?;
        }
        Command::Tdesp {
            semantics,
            layers: l,
            subsets,
            input,
        } => {
            let p = load(&input.file, err)?;
            let sets = layers(&l.u)?;
            let views = tdesp_layered(&p, &sets, semantics.semantics, subsets.into(), &limits)?;
            views_output(out, json, &input.file, "tdesp", semantics.semantics, &sets, &views)?;
        }
        Command::Compare {
            semantics,
            u,
            subsets,
            input,
        } => {
            let p = load(&input.file, err)?;
            let policy = subsets.into();
            let report = check_equivalence(&p, &parse_atom_list(&u)?, semantics.semantics, policy, &limits)?;
            if json {
                write_json(out, &CompareJson::new(input.file.display().to_string(), &report, policy))?;
            } else {
                write_compare(out, &report)?;
            }
        }
        Command::Stratify(input) => {
            let p = load(&input.file, err)?;
            let s = stratify(&p);
            if json {
                #[derive(Serialize)]
                struct StratJson {
                    stratified: bool,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    levels: Option<std::collections::BTreeMap<String, usize>>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    cycle: Option<Vec<String>>,
                }
                let body = match &s {
                    Stratification::Stratified(l) => StratJson {
                        stratified: true,
                        levels: Some(l.iter().map(|(a, n)| (a.to_string(), *n)).collect()),
                        cycle: None,
                    },
                    Stratification::Unstratified(c) => StratJson {
                        stratified: false,
                        levels: None,
                        cycle: Some(c.iter().map(Atom::to_string).collect()),
                    },
                };
                write_json(out, &body)?;
            } else {
                match &s {
                    Stratification::Stratified(l) => {
                        writeln!(out, "stratified")?;
                        for (a, n) in l {
                            writeln!(out, "{a} {n}")?;
                        }
                    }
                    Stratification::Unstratified(c) => {
                        writeln!(out, "not stratified")?;
                        let c: Vec<String> = c.iter().map(Atom::to_string).collect();
                        writeln!(out, "cycle {}", c.join(" > "))?;
                    }
                }
            }
        }
        Command::Corpus { dir } => return corpus::run_dir(&dir, &limits, out),
    }
    Ok(EXIT_OK)
}

/// Runs the command line given by `args` (including the program name) and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Malformed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PARSE
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
