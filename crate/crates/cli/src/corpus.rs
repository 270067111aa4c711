//! Corpus files: a program with expected results, in TOML.
//!
//! ```toml
//! name = "pi1"
//! program = "p | q. :- not K p."   # or: file = "../programs/pi1.elp"
//!
//! [[expect]]
//! operation = "tdesp"              # solve, worldviews, esp, tdespb, tdesp, stratify
//! semantics = "k15"
//! u = ["p,q"]                      # nested splitting sets, innermost first
//! world_views = [[["p"]]]
//! ```

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use elpsplit_core::splitting::esp_layered;
use elpsplit_core::topdown::{tdesp_layered, tdespb_layered};
use elpsplit_core::{
    answer_sets, ground, parse_program, stratify, world_views, AtomSet, Limits, Program, Semantics, SubsetPolicy,
};

use crate::{interpretation_json, parse_atom_list, world_view_json, Failure, EXIT_FAILURE, EXIT_OK};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub name: String,
    pub program: Option<String>,
    pub file: Option<PathBuf>,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    Solve,
    Worldviews,
    Esp,
    Tdespb,
    Tdesp,
    Stratify,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub operation: Operation,
    pub semantics: Option<String>,
    #[serde(default)]
    pub u: Vec<String>,
    pub subsets: Option<String>,
    pub world_views: Option<Vec<Vec<Vec<String>>>>,
    pub answer_sets: Option<Vec<Vec<String>>>,
    pub stratified: Option<bool>,
}

type Sets = BTreeSet<BTreeSet<String>>;

fn normalize_sets(sets: &[Vec<String>]) -> Sets {
    sets.iter().map(|s| s.iter().cloned().collect()).collect()
}

fn normalize_views(views: &[Vec<Vec<String>>]) -> BTreeSet<Sets> {
    views.iter().map(|w| normalize_sets(w)).collect()
}

fn show_views(views: &BTreeSet<Sets>) -> String {
    let items: Vec<String> = views
        .iter()
        .map(|w| {
            let sets: Vec<String> = w
                .iter()
                .map(|s| format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(",")))
                .collect();
            format!("[ {} ]", sets.join(" "))
        })
        .collect();
    format!("{{{}}}", items.join(", "))
}

impl Entry {
    pub fn load(path: &Path) -> Result<Entry, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    fn program(&self, base: &Path) -> Result<Program, String> {
        let text = match (&self.program, &self.file) {
            (Some(t), None) => t.clone(),
            (None, Some(f)) => {
                let path = base.join(f);
                std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?
            }
            _ => return Err(format!("{}: exactly one of `program` and `file` is required", self.name)),
        };
        parse_program(&text)
            .and_then(|p| ground(&p))
            .map_err(|e| format!("{}: {e}", self.name))
    }
}

impl Expectation {
    fn label(&self) -> String {
        let mut s = format!("{:?}", self.operation).to_lowercase();
        if let Some(sem) = &self.semantics {
            s.push('/');
            s.push_str(sem);
        }
        if !self.u.is_empty() {
            s.push_str(&format!(" u={}", self.u.join(";")));
        }
        s
    }

    /// `Ok(None)` on success, `Ok(Some(reason))` on a mismatch.
    fn check(&self, p: &Program, limits: &Limits) -> Result<Option<String>, String> {
        let semantics: Semantics = self
            .semantics
            .as_deref()
            .unwrap_or("g91")
            .parse()
            .map_err(|_| format!("unknown semantics {:?}", self.semantics))?;
        let policy = match self.subsets.as_deref() {
            None | Some("maximal") => SubsetPolicy::Maximal,
            Some("all") => SubsetPolicy::All,
            Some(other) => return Err(format!("unknown subset policy `{other}`")),
        };
        let layers: Vec<AtomSet> = self
            .u
            .iter()
            .map(|s| parse_atom_list(s).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let needs_layers = matches!(self.operation, Operation::Esp | Operation::Tdespb | Operation::Tdesp);
        if needs_layers && layers.is_empty() {
            return Err(format!("{} needs `u`", self.label()));
        }

        if self.operation == Operation::Stratify {
            let expected = self.stratified.ok_or("stratify needs `stratified`")?;
            let got = stratify(p).is_stratified();
            return Ok((got != expected).then(|| format!("stratified = {got}")));
        }
        if self.operation == Operation::Solve {
            let expected = normalize_sets(self.answer_sets.as_deref().ok_or("solve needs `answer_sets`")?);
            let got: Sets = answer_sets(p)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|i| interpretation_json(i).into_iter().collect())
                .collect();
            return Ok((got != expected).then(|| format!("answer sets {got:?}")));
        }

        let expected = normalize_views(self.world_views.as_deref().ok_or("needs `world_views`")?);
        let got = match self.operation {
            Operation::Worldviews => world_views(p, semantics, limits),
            Operation::Esp => esp_layered(p, &layers, semantics, limits),
            Operation::Tdespb => tdespb_layered(p, &layers, semantics, limits),
            Operation::Tdesp => tdesp_layered(p, &layers, semantics, policy, limits),
            Operation::Solve | Operation::Stratify => unreachable!(),
        }
        .map_err(|e| e.to_string())?;
        let got: BTreeSet<Sets> = got
            .iter()
            .map(|w| normalize_views(&[world_view_json(w)]).into_iter().next().expect("one view"))
            .collect();
        Ok((got != expected).then(|| format!("got {}", show_views(&got))))
    }
}

fn corpus_files(path: &Path) -> Result<Vec<PathBuf>, String> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(|e| format!("{}: {e}", path.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every check in `path` (a corpus file or a directory of them) and
/// prints one line per check plus a summary.
pub(crate) fn run_dir(path: &Path, limits: &Limits, out: &mut dyn Write) -> Result<i32, Failure> {
    let files = corpus_files(path).map_err(Failure::Usage)?;
    let (mut checks, mut failed) = (0usize, 0usize);
    for file in &files {
        let entry = Entry::load(file).map_err(Failure::Malformed)?;
        let base = file.parent().unwrap_or(Path::new("."));
        let program = entry.program(base).map_err(Failure::Malformed)?;
        for e in &entry.expect {
            checks += 1;
            match e.check(&program, limits) {
                Ok(None) => writeln!(out, "PASS {} {}", entry.name, e.label())?,
                Ok(Some(reason)) => {
                    failed += 1;
                    writeln!(out, "FAIL {} {}: {reason}", entry.name, e.label())?;
                }
                Err(reason) => {
                    failed += 1;
                    writeln!(out, "FAIL {} {}: {reason}", entry.name, e.label())?;
                }
            }
        }
    }
    writeln!(
        out,
        "{} files, {checks} checks, {} passed, {failed} failed",
        files.len(),
        checks - failed
    )?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}
