// SPDX-License-Identifier: Apache-2.0
//! Task files and reports.
//!
//! A task is a TOML file naming models (paths relative to the task file) and
//! what to do with them:
//!
//! ```toml
//! name = "bv"
//! kind = "verify"        # verify | equiv | eval | image | compose | param | empty | union
//! mode = "equal"         # or "include"
//! oracle_depth = 3       # optional bounded cross-check
//! pre = "pre.swta"
//! post = "post.swta"
//!
//! [[circuit]]
//! file = "h.wtt"         # a transducer file
//! [[circuit]]
//! box = "maj.wtt"        # a box, made into a staircase
//! offset = 2
//! dir = "right"
//! [[circuit]]
//! gates = "c.circ"       # a fixed-size gate list
//! ```
//!
//! `equiv` tasks give `bases` and two stage lists `left` and `right`. Reports
//! are JSON with a versioned `schema` field; everything except fields named
//! `seconds` is deterministic.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bench::{Check, Stage};
use crate::circuit::parse_circuit;
use crate::gates::GateError;
use crate::paramgen::{parameterize, validate_box, Dir, ParamError};
use crate::swta::{union, Swta};
use crate::text::{parse_model, print_swta, print_wtt, Model, ParseError};
use crate::trees::TreeStyle;
use crate::verify::{bounded_oracle, functional_relate, Mode, Stats, Verdict, WitnessKind};
use crate::wtt::{compose_all, image, Side, Wtt};
use crate::ModelError;

pub const SCHEMA: &str = "swtaq.report/1";

#[derive(Debug, Error)]
pub enum TaskError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("task file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Bench(#[from] crate::bench::BenchError),
    #[error("bounded oracle found a counterexample the verifier missed: {0}")]
    Unsound(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Verify,
    Equiv,
    Eval,
    Image,
    Compose,
    Param,
    Empty,
    Union,
}

/// One transducer of a pipeline: exactly one of `file`, `box`, `gates`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageSpec {
    pub name: Option<String>,
    pub file: Option<String>,
    #[serde(rename = "box")]
    pub box_file: Option<String>,
    pub offset: Option<usize>,
    pub dir: Option<String>,
    pub gates: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskFile {
    pub name: Option<String>,
    pub kind: Kind,
    pub mode: Option<String>,
    pub oracle_depth: Option<usize>,
    pub pre: Option<String>,
    pub post: Option<String>,
    pub bases: Option<String>,
    pub model: Option<String>,
    #[serde(default)]
    pub models: Vec<String>,
    /// eval: a word as [symbol, color] pairs.
    #[serde(default)]
    pub word: Vec<(String, String)>,
    #[serde(default)]
    pub circuit: Vec<StageSpec>,
    #[serde(default)]
    pub left: Vec<StageSpec>,
    #[serde(default)]
    pub right: Vec<StageSpec>,
    #[serde(rename = "box")]
    pub box_file: Option<String>,
    pub offset: Option<usize>,
    pub dir: Option<String>,
}

impl TaskFile {
    pub fn parse(text: &str) -> Result<TaskFile, TaskError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<(TaskFile, PathBuf), TaskError> {
        let text = read(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((TaskFile::parse(&text)?, base))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeReport {
    pub name: String,
    pub states: usize,
    pub transitions: usize,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub word: Vec<(String, String)>,
    /// Branch to a differing leaf, `0` = left.
    pub branch: String,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub domain_states: usize,
    pub lts_states: usize,
    pub vectors: usize,
    pub max_basis: usize,
    pub dim: usize,
    pub max_coeff_bits: u64,
}

impl From<&Stats> for StatsReport {
    fn from(s: &Stats) -> Self {
        StatsReport {
            domain_states: s.domain_states,
            lts_states: s.lts_states,
            vectors: s.vectors,
            max_basis: s.max_basis,
            dim: s.dim,
            max_coeff_bits: s.max_coeff_bits,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub depth: usize,
    pub holds: bool,
    pub words: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub task: String,
    pub kind: Kind,
    /// `holds` / `fails` for decision tasks, `empty` / `nonempty` for
    /// emptiness, absent otherwise.
    pub verdict: Option<String>,
    pub mode: Option<String>,
    pub witness: Option<WitnessReport>,
    /// Automaton sizes after each step, in order.
    pub sizes: Vec<SizeReport>,
    pub stats: Option<StatsReport>,
    pub oracle: Option<OracleReport>,
    /// Printed result model or tree, for construction tasks.
    pub output: Option<String>,
    pub verify_seconds: f64,
    pub total_seconds: f64,
}

impl Report {
    fn new(task: &str, kind: Kind) -> Self {
        Report {
            schema: SCHEMA,
            task: task.to_string(),
            kind,
            verdict: None,
            mode: None,
            witness: None,
            sizes: Vec::new(),
            stats: None,
            oracle: None,
            output: None,
            verify_seconds: 0.0,
            total_seconds: 0.0,
        }
    }

    /// 0 when the property holds (or there is nothing to decide), 1 when it
    /// fails.
    pub fn exit_code(&self) -> i32 {
        match self.verdict.as_deref() {
            Some("fails") => 1,
            _ => 0,
        }
    }

    /// A copy with every timing field zeroed.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        r.verify_seconds = 0.0;
        r.total_seconds = 0.0;
        for s in &mut r.sizes {
            s.seconds = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary; `stats` adds sizes and linear-algebra
    /// telemetry.
    pub fn to_text(&self, stats: bool) -> String {
        let mut out = String::new();
        let verdict = self.verdict.as_deref().unwrap_or("done");
        out.push_str(&format!("{}: {} ({:.3} s)\n", self.task, verdict, self.total_seconds));
        let width = self.sizes.iter().map(|s| s.name.chars().count()).max().unwrap_or(0);
        for s in self.sizes.iter().filter(|_| stats) {
            out.push_str(&format!(
                "  {:<width$} {:>6} states {:>7} transitions {:>9.3} s\n",
                s.name, s.states, s.transitions, s.seconds
            ));
        }
        if let Some(st) = self.stats.as_ref().filter(|_| stats) {
            out.push_str(&format!(
                "  lts states {}, vectors {}, max basis {}/{}, max coefficient bits {}\n",
                st.lts_states, st.vectors, st.max_basis, st.dim, st.max_coeff_bits
            ));
        }
        if let Some(o) = &self.oracle {
            out.push_str(&format!(
                "  bounded oracle (length <= {}): {} over {} words\n",
                o.depth,
                if o.holds { "holds" } else { "fails" },
                o.words
            ));
        }
        if let Some(w) = &self.witness {
            let word: Vec<String> = w.word.iter().map(|(a, c)| format!("<{a},{c}>")).collect();
            out.push_str(&format!(
                "  witness: {} ({}){}\n",
                if word.is_empty() { "eps".to_string() } else { word.join("") },
                w.kind,
                if w.branch.is_empty() { String::new() } else { format!(" at branch {}", w.branch) }
            ));
        }
        if let Some(o) = &self.output {
            out.push_str(o);
            if !o.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

fn read(path: &Path) -> Result<String, TaskError> {
    std::fs::read_to_string(path).map_err(|source| TaskError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_model(base: &Path, file: &str) -> Result<Model, TaskError> {
    let path = base.join(file);
    let text = read(&path)?;
    parse_model(&text).map_err(|source| TaskError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_swta(base: &Path, file: &str) -> Result<Swta, TaskError> {
    match load_model(base, file)? {
        Model::Swta(a) => Ok(a),
        Model::Wtt(_) => Err(TaskError::Invalid(format!("{file}: expected an SWTA, found a WTT"))),
    }
}

pub fn load_wtt(base: &Path, file: &str) -> Result<Wtt, TaskError> {
    match load_model(base, file)? {
        Model::Wtt(t) => Ok(t),
        Model::Swta(_) => Err(TaskError::Invalid(format!("{file}: expected a WTT, found an SWTA"))),
    }
}

fn parse_dir(dir: Option<&str>) -> Result<Dir, TaskError> {
    dir.unwrap_or("right").parse().map_err(TaskError::Invalid)
}

fn parse_mode(mode: Option<&str>) -> Result<Mode, TaskError> {
    mode.unwrap_or("equal").parse().map_err(TaskError::Invalid)
}

pub fn load_stage(base: &Path, spec: &StageSpec) -> Result<Stage, TaskError> {
    let given = [&spec.file, &spec.box_file, &spec.gates]
        .iter()
        .filter(|x| x.is_some())
        .count();
    if given != 1 {
        return Err(TaskError::Invalid(
            "a stage needs exactly one of `file`, `box`, `gates`".into(),
        ));
    }
    let (default_name, wtt) = if let Some(f) = &spec.file {
        (f.clone(), load_wtt(base, f)?)
    } else if let Some(f) = &spec.box_file {
        let bx = validate_box(&load_wtt(base, f)?)?;
        let offset = spec.offset.unwrap_or(1);
        let dir = parse_dir(spec.dir.as_deref())?;
        (format!("{f} staircase"), parameterize(&bx, offset, dir)?)
    } else {
        let f = spec.gates.as_ref().expect("counted above");
        let text = read(&base.join(f))?;
        let c = parse_circuit(&text).map_err(|source| TaskError::Parse {
            path: base.join(f).display().to_string(),
            source,
        })?;
        (f.clone(), c.to_wtt()?)
    };
    Ok(Stage::new(spec.name.as_deref().unwrap_or(&default_name), wtt))
}

fn load_stages(base: &Path, specs: &[StageSpec]) -> Result<Vec<Stage>, TaskError> {
    specs.iter().map(|s| load_stage(base, s)).collect()
}

fn need<'a>(x: &'a Option<String>, field: &str) -> Result<&'a str, TaskError> {
    x.as_deref()
        .ok_or_else(|| TaskError::Invalid(format!("task needs `{field}`")))
}

fn check_m<I: IntoIterator<Item = usize>>(ms: I) -> Result<(), TaskError> {
    let mut it = ms.into_iter();
    if let Some(first) = it.next() {
        for m in it {
            if m != first {
                return Err(ModelError::Modulus { expected: first, got: m }.into());
            }
        }
    }
    Ok(())
}

fn load_swta_m(m: Option<usize>, base: &Path, file: &str) -> Result<Swta, TaskError> {
    let a = load_swta(base, file)?;
    check_m(m.into_iter().chain([a.m()]))?;
    Ok(a)
}

fn load_wtt_m(m: Option<usize>, base: &Path, file: &str) -> Result<Wtt, TaskError> {
    let t = load_wtt(base, file)?;
    check_m(m.into_iter().chain([t.m()]))?;
    Ok(t)
}

fn load_stages_m(m: Option<usize>, base: &Path, specs: &[StageSpec]) -> Result<Vec<Stage>, TaskError> {
    let stages = load_stages(base, specs)?;
    check_m(m.into_iter().chain(stages.iter().map(|s| s.wtt.m())))?;
    Ok(stages)
}

/// Options shared by every verification run.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Cross-check with the bounded oracle up to this word length.
    pub oracle_depth: Option<usize>,
    /// Reject models whose modulus differs from this one.
    pub m: Option<usize>,
}

fn size(name: &str, a: &Swta, seconds: f64) -> SizeReport {
    SizeReport {
        name: name.to_string(),
        states: a.num_states(),
        transitions: a.num_transitions(),
        seconds,
    }
}

fn wsize(name: &str, t: &Wtt, seconds: f64) -> SizeReport {
    SizeReport {
        name: name.to_string(),
        states: t.num_states(),
        transitions: t.num_transitions(),
        seconds,
    }
}

fn push_images(report: &mut Report, label: &str, start: &Swta, stages: &[Stage]) -> Result<Swta, TaskError> {
    let mut cur = start.clone();
    for s in stages {
        let t0 = Instant::now();
        cur = image(&s.wtt, &cur)?;
        report
            .sizes
            .push(size(&format!("{label}{}", s.name), &cur, t0.elapsed().as_secs_f64()));
    }
    Ok(cur)
}

fn record_verdict(report: &mut Report, v: &Verdict) {
    report.verdict = Some(if v.holds { "holds" } else { "fails" }.to_string());
    report.stats = Some(StatsReport::from(&v.stats));
    report.witness = v.witness.as_ref().map(|w| WitnessReport {
        word: w.word.clone(),
        branch: w
            .branch
            .iter()
            .map(|s| if *s == Side::L { '0' } else { '1' })
            .collect(),
        kind: match w.kind {
            WitnessKind::OnlyLeft => "defined on the left only",
            WitnessKind::OnlyRight => "defined on the right only",
            WitnessKind::Value => "values differ",
        }
        .to_string(),
    });
}

fn decide(report: &mut Report, a: &Swta, b: &Swta, mode: Mode, opts: RunOptions) -> Result<(), TaskError> {
    report.mode = Some(mode.to_string());
    let t0 = Instant::now();
    let v = functional_relate(a, b, mode)?;
    report.verify_seconds = t0.elapsed().as_secs_f64();
    record_verdict(report, &v);
    if let Some(depth) = opts.oracle_depth {
        let o = bounded_oracle(a, b, depth, mode);
        if !o.holds && v.holds {
            return Err(TaskError::Unsound(
                o.witness.map(|w| w.to_string()).unwrap_or_default(),
            ));
        }
        report.oracle = Some(OracleReport {
            depth,
            holds: o.holds,
            words: o.stats.words,
        });
    }
    Ok(())
}

/// Runs a pre/post or equivalence check.
pub fn run_check(name: &str, check: &Check, opts: RunOptions) -> Result<Report, TaskError> {
    let start = Instant::now();
    let mut report;
    match check {
        Check::Verify {
            pre,
            circuit,
            post,
            mode,
        } => {
            report = Report::new(name, Kind::Verify);
            check_m(
                opts.m
                    .into_iter()
                    .chain([pre.m(), post.m()])
                    .chain(circuit.iter().map(|s| s.wtt.m())),
            )?;
            report.sizes.push(size("pre", pre, 0.0));
            for s in circuit {
                report.sizes.push(wsize(&format!("transducer {}", s.name), &s.wtt, 0.0));
            }
            let img = push_images(&mut report, "after ", pre, circuit)?;
            report.sizes.push(size("post", post, 0.0));
            decide(&mut report, &img, post, *mode, opts)?;
        }
        Check::Equiv { bases, left, right } => {
            report = Report::new(name, Kind::Equiv);
            check_m(
                opts.m
                    .into_iter()
                    .chain(std::iter::once(bases.m()))
                    .chain(left.iter().chain(right).map(|s| s.wtt.m())),
            )?;
            report.sizes.push(size("bases", bases, 0.0));
            let l = push_images(&mut report, "left after ", bases, left)?;
            let r = push_images(&mut report, "right after ", bases, right)?;
            decide(&mut report, &l, &r, Mode::Equal, opts)?;
        }
    }
    report.total_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Executes a task file. Paths are resolved against `base`.
pub fn run_task(task: &TaskFile, base: &Path, opts: RunOptions) -> Result<Report, TaskError> {
    let name = task.name.clone().unwrap_or_else(|| format!("{:?}", task.kind).to_lowercase());
    let opts = RunOptions {
        oracle_depth: opts.oracle_depth.or(task.oracle_depth),
        ..opts
    };
    let start = Instant::now();
    let mut report = match task.kind {
        Kind::Verify => {
            let check = Check::Verify {
                pre: load_swta_m(opts.m, base, need(&task.pre, "pre")?)?,
                circuit: load_stages_m(opts.m, base, &task.circuit)?,
                post: load_swta_m(opts.m, base, need(&task.post, "post")?)?,
                mode: parse_mode(task.mode.as_deref())?,
            };
            run_check(&name, &check, opts)?
        }
        Kind::Equiv => {
            let check = Check::Equiv {
                bases: load_swta_m(opts.m, base, need(&task.bases, "bases")?)?,
                left: load_stages_m(opts.m, base, &task.left)?,
                right: load_stages_m(opts.m, base, &task.right)?,
            };
            run_check(&name, &check, opts)?
        }
        Kind::Eval => {
            let mut r = Report::new(&name, Kind::Eval);
            let a = load_swta_m(opts.m, base, need(&task.model, "model")?)?;
            r.output = Some(match a.eval(&task.word) {
                Some(t) => t.render(TreeStyle::Vector),
                None => "undefined".to_string(),
            });
            r
        }
        Kind::Image => {
            let mut r = Report::new(&name, Kind::Image);
            let a = load_swta_m(opts.m, base, need(&task.model, "model")?)?;
            let stages = load_stages_m(opts.m, base, &task.circuit)?;
            r.sizes.push(size("input", &a, 0.0));
            let img = push_images(&mut r, "after ", &a, &stages)?;
            r.output = Some(print_swta(&img));
            r
        }
        Kind::Compose => {
            let mut r = Report::new(&name, Kind::Compose);
            let stages = load_stages_m(opts.m, base, &task.circuit)?;
            let t0 = Instant::now();
            let t = compose_all(&stages.iter().map(|s| s.wtt.clone()).collect::<Vec<_>>())?;
            r.sizes.push(wsize("composition", &t, t0.elapsed().as_secs_f64()));
            r.output = Some(print_wtt(&t));
            r
        }
        Kind::Param => {
            let mut r = Report::new(&name, Kind::Param);
            let bx = validate_box(&load_wtt_m(opts.m, base, need(&task.box_file, "box")?)?)?;
            let t0 = Instant::now();
            let t = parameterize(&bx, task.offset.unwrap_or(1), parse_dir(task.dir.as_deref())?)?;
            r.sizes.push(wsize("staircase", &t, t0.elapsed().as_secs_f64()));
            r.output = Some(print_wtt(&t));
            r
        }
        Kind::Empty => {
            let mut r = Report::new(&name, Kind::Empty);
            let a = load_swta_m(opts.m, base, need(&task.model, "model")?)?;
            r.verdict = Some(if a.is_empty() { "empty" } else { "nonempty" }.to_string());
            r
        }
        Kind::Union => {
            let mut r = Report::new(&name, Kind::Union);
            if task.models.len() < 2 {
                return Err(TaskError::Invalid("union needs at least two `models`".into()));
            }
            let ms = task
                .models
                .iter()
                .map(|f| load_swta_m(opts.m, base, f))
                .collect::<Result<Vec<_>, _>>()?;
            let mut u = ms[0].clone();
            for b in &ms[1..] {
                u = union(&u, b)?;
            }
            r.sizes.push(size("union", &u, 0.0));
            r.output = Some(print_swta(&u));
            r
        }
    };
    report.total_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Loads and runs a task file.
pub fn run_task_file(path: &Path, opts: RunOptions) -> Result<Report, TaskError> {
    let (task, base) = TaskFile::load(path)?;
    run_task(&task, &base, opts)
}

fn file_stem(name: &str) -> String {
    let mut out = String::new();
    for ch in name.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}

fn export_stages(files: &mut Vec<(String, String)>, toml: &mut String, table: &str, stages: &[Stage]) {
    for (i, s) in stages.iter().enumerate() {
        let stem = format!("{table}{:02}_{}", i + 1, file_stem(&s.name));
        toml.push_str(&format!("\n[[{table}]]\nname = {:?}\n", s.name));
        match &s.staircase {
            Some((bx, n, dir)) => {
                let file = format!("{stem}.box.wtt");
                toml.push_str(&format!("box = {file:?}\noffset = {n}\ndir = \"{dir}\"\n"));
                files.push((file, print_wtt(bx)));
            }
            None => {
                let file = format!("{stem}.wtt");
                toml.push_str(&format!("file = {file:?}\n"));
                files.push((file, print_wtt(&s.wtt)));
            }
        }
    }
}

/// A check as printed model files plus a `task.toml` that runs it. Returns
/// (file name, contents) pairs, task file first.
pub fn export_check(name: &str, check: &Check) -> Vec<(String, String)> {
    let mut files = Vec::new();
    let mut toml = format!("name = {name:?}\n");
    match check {
        Check::Verify {
            pre,
            circuit,
            post,
            mode,
        } => {
            toml.push_str(&format!(
                "kind = \"verify\"\nmode = \"{mode}\"\npre = \"pre.swta\"\npost = \"post.swta\"\n"
            ));
            files.push(("pre.swta".to_string(), print_swta(pre)));
            files.push(("post.swta".to_string(), print_swta(post)));
            export_stages(&mut files, &mut toml, "circuit", circuit);
        }
        Check::Equiv { bases, left, right } => {
            toml.push_str("kind = \"equiv\"\nbases = \"bases.swta\"\n");
            files.push(("bases.swta".to_string(), print_swta(bases)));
            export_stages(&mut files, &mut toml, "left", left);
            export_stages(&mut files, &mut toml, "right", right);
        }
    }
    files.insert(0, ("task.toml".to_string(), toml));
    files
}
