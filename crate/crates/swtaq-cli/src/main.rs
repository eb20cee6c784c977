// SPDX-License-Identifier: Apache-2.0
//! `swtaq`: command-line front end.
//!
//! Exit codes: 0 when the checked property holds (or the command has nothing
//! to decide), 1 when it fails, 2 on any error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};

use swtaq::bench::{self, Check, Stage};
use swtaq::circuit::parse_circuit;
use swtaq::paramgen::{parameterize, prime_tail, validate_box, Dir};
use swtaq::swta::{union, Swta};
use swtaq::task::{self, load_stage, Report, RunOptions, StageSpec, TaskError};
use swtaq::text::{print_swta, print_wtt};
use swtaq::trees::{PerfectTree, TreeStyle};
use swtaq::verify::{bounded_oracle, Mode};
use swtaq::wtt::{compose_all, image_all, Wtt};

#[derive(Parser, Debug)]
#[command(name = "swtaq", version, about = "Verify parameterized quantum circuits with weighted tree automata")]
struct Cli {
    /// Expected modulus m (omega = e^{i pi/m}); models with another m are rejected.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Worker threads for `run` and `bench`.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print automaton sizes and verification statistics.
    #[arg(long, global = true)]
    stats: bool,
    /// Cross-check verdicts with the bounded oracle up to this word length.
    #[arg(long, global = true)]
    max_oracle_depth: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Style {
    Vector,
    Dirac,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate an SWTA on a word like `a:1,a:2`.
    Eval {
        model: PathBuf,
        word: String,
        #[arg(long, value_enum, default_value_t = Style::Vector)]
        style: Style,
    },
    /// Check whether a tree (`tree h=.. labels=.. leaves=[..]`) is accepted.
    Accepts { model: PathBuf, tree: String },
    /// Decide emptiness of an SWTA.
    Empty { model: PathBuf },
    /// Union of SWTAs.
    Union {
        #[arg(required = true, num_args = 2..)]
        models: Vec<PathBuf>,
    },
    /// Image of an SWTA under a sequence of stages (the first acts first).
    Image {
        model: PathBuf,
        #[arg(required = true, num_args = 1..)]
        stages: Vec<String>,
    },
    /// Compose stages into one transducer (the first acts first).
    Compose {
        #[arg(required = true, num_args = 1..)]
        stages: Vec<String>,
    },
    /// Build the staircase transducer of a box.
    Param {
        r#box: PathBuf,
        #[arg(long, default_value_t = 1)]
        offset: usize,
        #[arg(long, default_value = "right")]
        dir: String,
    },
    /// Prime the last `k` levels of an SWTA.
    PrimeTail {
        model: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Print the transducer of one gate line, e.g. `CCX 1 2 3`.
    Gate {
        spec: String,
        #[arg(long)]
        qubits: usize,
    },
    /// Relate the image of `pre` under a circuit to `post`.
    Verify {
        #[arg(long)]
        pre: PathBuf,
        #[arg(long)]
        post: PathBuf,
        /// Stages: `t.wtt`, `c.circ` or `box:B.wtt[:offset[:dir]]`.
        #[arg(long, required = true, num_args = 1..)]
        circuit: Vec<String>,
        #[arg(long, default_value = "equal")]
        mode: String,
    },
    /// Check two circuits agree on every tree of `bases`.
    Equiv {
        #[arg(long)]
        bases: PathBuf,
        #[arg(long, required = true, num_args = 1..)]
        left: Vec<String>,
        #[arg(long, required = true, num_args = 1..)]
        right: Vec<String>,
    },
    /// Compare two SWTAs on all words up to `--max-oracle-depth` (default 4).
    Oracle {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "equal")]
        mode: String,
    },
    /// Run TOML task files.
    Run {
        #[arg(required = true, num_args = 1..)]
        tasks: Vec<PathBuf>,
    },
    /// Run the built-in case studies (all when none are named).
    Bench {
        names: Vec<String>,
        /// Write each case study as model files and a task.toml under DIR/<name>/ instead.
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
}

type Res<T> = Result<T, TaskError>;

fn invalid(msg: impl Into<String>) -> TaskError {
    TaskError::Invalid(msg.into())
}

fn split(path: &Path) -> (PathBuf, String) {
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    (base, file)
}

struct Ctx {
    m: Option<usize>,
}

impl Ctx {
    fn check_m(&self, got: usize) -> Res<()> {
        match self.m {
            Some(m) if m != got => Err(swtaq::ModelError::Modulus { expected: m, got }.into()),
            _ => Ok(()),
        }
    }

    fn swta(&self, path: &Path) -> Res<Swta> {
        let (base, file) = split(path);
        let a = task::load_swta(&base, &file)?;
        self.check_m(a.m())?;
        Ok(a)
    }

    fn wtt(&self, path: &Path) -> Res<Wtt> {
        let (base, file) = split(path);
        let t = task::load_wtt(&base, &file)?;
        self.check_m(t.m())?;
        Ok(t)
    }

    fn stage(&self, arg: &str) -> Res<Stage> {
        let mut spec = StageSpec::default();
        if let Some(rest) = arg.strip_prefix("box:") {
            let mut parts = rest.split(':');
            spec.box_file = parts.next().map(str::to_string);
            if let Some(o) = parts.next() {
                spec.offset = Some(o.parse().map_err(|_| invalid(format!("bad offset in `{arg}`")))?);
            }
            spec.dir = parts.next().map(str::to_string);
        } else if arg.ends_with(".circ") {
            spec.gates = Some(arg.to_string());
        } else {
            spec.file = Some(arg.to_string());
        }
        let s = load_stage(Path::new(""), &spec)?;
        self.check_m(s.wtt.m())?;
        Ok(s)
    }

    fn stages(&self, args: &[String]) -> Res<Vec<Stage>> {
        args.iter().map(|a| self.stage(a)).collect()
    }
}

fn parse_word(s: &str) -> Res<Vec<(String, String)>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|l| {
            let (a, c) = l
                .trim()
                .split_once(':')
                .ok_or_else(|| invalid(format!("letter `{l}` is not `symbol:color`")))?;
            Ok((a.to_string(), c.to_string()))
        })
        .collect()
}

fn parse_mode(s: &str) -> Res<Mode> {
    s.parse().map_err(invalid)
}

/// Output of one command: reports for decision commands, plain text for
/// constructions.
enum Out {
    Reports(Vec<Res<Report>>),
    Text(String, i32),
}

fn run_parallel<T: Sync, F: Fn(&T) -> Res<Report> + Sync>(items: &[T], jobs: usize, f: F) -> Vec<Res<Report>> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Res<Report>>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                *slots[i].lock().expect("slot") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot").expect("every task ran"))
        .collect()
}

fn execute(cli: &Cli) -> Res<Out> {
    let ctx = Ctx { m: cli.m };
    let opts = RunOptions {
        oracle_depth: cli.max_oracle_depth,
        m: cli.m,
    };
    Ok(match &cli.cmd {
        Cmd::Eval { model, word, style } => {
            let a = ctx.swta(model)?;
            let style = match style {
                Style::Vector => TreeStyle::Vector,
                Style::Dirac => TreeStyle::Dirac,
            };
            match a.eval(&parse_word(word)?) {
                Some(t) => Out::Text(t.render(style), 0),
                None => Out::Text("undefined".into(), 1),
            }
        }
        Cmd::Accepts { model, tree } => {
            let a = ctx.swta(model)?;
            let t = PerfectTree::parse(tree, a.m()).map_err(|e| invalid(e.to_string()))?;
            let yes = a.accepts(&t);
            Out::Text(if yes { "accepted" } else { "rejected" }.into(), if yes { 0 } else { 1 })
        }
        Cmd::Empty { model } => {
            let a = ctx.swta(model)?;
            match a.find_word() {
                None => Out::Text("empty".into(), 0),
                Some(w) => {
                    let w: Vec<String> = a.word_names(&w).iter().map(|(s, c)| format!("{s}:{c}")).collect();
                    Out::Text(format!("nonempty, e.g. {}", w.join(",")), 1)
                }
            }
        }
        Cmd::Union { models } => {
            let ms = models.iter().map(|p| ctx.swta(p)).collect::<Res<Vec<_>>>()?;
            let mut u = ms[0].clone();
            for b in &ms[1..] {
                u = union(&u, b)?;
            }
            Out::Text(print_swta(&u), 0)
        }
        Cmd::Image { model, stages } => {
            let a = ctx.swta(model)?;
            let ts: Vec<Wtt> = ctx.stages(stages)?.into_iter().map(|s| s.wtt).collect();
            Out::Text(print_swta(&image_all(&ts, &a)?), 0)
        }
        Cmd::Compose { stages } => {
            let ts: Vec<Wtt> = ctx.stages(stages)?.into_iter().map(|s| s.wtt).collect();
            Out::Text(print_wtt(&compose_all(&ts)?), 0)
        }
        Cmd::Param { r#box, offset, dir } => {
            let bx = validate_box(&ctx.wtt(r#box)?)?;
            let dir: Dir = dir.parse().map_err(invalid)?;
            Out::Text(print_wtt(&parameterize(&bx, *offset, dir)?), 0)
        }
        Cmd::PrimeTail { model, k } => Out::Text(print_swta(&prime_tail(&ctx.swta(model)?, *k)?), 0),
        Cmd::Gate { spec, qubits } => {
            let m = cli.m.unwrap_or(swtaq::algebra::DEFAULT_M);
            let text = format!("circuit qubits={qubits} m={m}\n{spec}\n");
            let c = parse_circuit(&text).map_err(|e| invalid(e.msg))?;
            Out::Text(print_wtt(&c.to_wtt()?), 0)
        }
        Cmd::Verify {
            pre,
            post,
            circuit,
            mode,
        } => {
            let check = Check::Verify {
                pre: ctx.swta(pre)?,
                circuit: ctx.stages(circuit)?,
                post: ctx.swta(post)?,
                mode: parse_mode(mode)?,
            };
            Out::Reports(vec![task::run_check("verify", &check, opts)])
        }
        Cmd::Equiv { bases, left, right } => {
            let check = Check::Equiv {
                bases: ctx.swta(bases)?,
                left: ctx.stages(left)?,
                right: ctx.stages(right)?,
            };
            Out::Reports(vec![task::run_check("equiv", &check, opts)])
        }
        Cmd::Oracle { a, b, mode } => {
            let (a, b) = (ctx.swta(a)?, ctx.swta(b)?);
            let depth = cli.max_oracle_depth.unwrap_or(4);
            let v = bounded_oracle(&a, &b, depth, parse_mode(mode)?);
            let mut text = if v.holds {
                format!("holds on all {} words of length <= {depth}", v.stats.words)
            } else {
                format!("fails after {} words of length <= {depth}", v.stats.words)
            };
            if let Some(w) = &v.witness {
                text.push_str(&format!("\nwitness: {w}"));
            }
            Out::Text(text, if v.holds { 0 } else { 1 })
        }
        Cmd::Run { tasks } => Out::Reports(run_parallel(tasks, cli.jobs, |p| task::run_task_file(p, opts))),
        Cmd::Bench { names, export } => {
            let names: Vec<String> = if names.is_empty() {
                bench::NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                names.clone()
            };
            if let Some(dir) = export {
                let mut written = Vec::new();
                for n in &names {
                    let sub = dir.join(n);
                    let io = |path: &Path, source| TaskError::Io {
                        path: path.display().to_string(),
                        source,
                    };
                    std::fs::create_dir_all(&sub).map_err(|e| io(&sub, e))?;
                    for (f, text) in task::export_check(n, &bench::by_name(n)?) {
                        let path = sub.join(f);
                        std::fs::write(&path, text).map_err(|e| io(&path, e))?;
                        written.push(path.display().to_string());
                    }
                }
                return Ok(Out::Text(written.join("\n"), 0));
            }
            Out::Reports(run_parallel(&names, cli.jobs, |n| {
                let check = bench::by_name(n)?;
                task::run_check(n, &check, opts)
            }))
        }
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let code = match out {
        Out::Text(text, code) => {
            if cli.format == Format::Json {
                let v = serde_json::json!({ "schema": task::SCHEMA, "output": text, "exit": code });
                emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
            } else {
                emit(&format!("{}\n", text.trim_end()));
            }
            code
        }
        Out::Reports(results) => {
            let mut code = 0;
            let mut reports = Vec::new();
            for r in results {
                match r {
                    Ok(rep) => {
                        code = code.max(rep.exit_code());
                        if cli.format == Format::Text {
                            emit(&rep.to_text(cli.stats));
                        }
                        reports.push(rep);
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        code = 2;
                    }
                }
            }
            if cli.format == Format::Json {
                let json = match reports.as_slice() {
                    [one] => one.to_json(),
                    many => serde_json::to_string_pretty(many).expect("reports serialize"),
                };
                emit(&format!("{json}\n"));
            }
            code
        }
    };
    ExitCode::from(code as u8)
}
