//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! `cargo test -p swtaq --test acceptance` (add `--release` for timings
//! closer to the reference numbers).

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::laws;
use swtaq::bench::{self, Check};
use swtaq::bench::bv_circuit;
use swtaq::fixtures::{a_bases, a_ex, b_ex, bv_pre, bv_res, t_ex, t_hall};
use swtaq::forms::LinearForm;
use swtaq::swta::StateForm as Form;
use swtaq::gates::{qft_wtt, qubit_symbols};
use swtaq::task::{run_check, RunOptions};
use swtaq::verify::{functional_relate, Mode};
use swtaq::wtt::{image, image_all};
use swtaq::{Algebraic, PerfectTree, Swta};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn word(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
    pairs.iter().map(|(a, c)| (a.to_string(), c.to_string())).collect()
}

fn ints(xs: &[i64]) -> Vec<Algebraic> {
    xs.iter().map(|&x| Algebraic::from_int(4, x)).collect()
}

fn alg(s: &str) -> Algebraic {
    Algebraic::parse(s, 4).unwrap()
}

fn golden() -> Outcome {
    let a_table = [
        ("1", "1", [4, 0, 0, 0]),
        ("1", "2", [0, 0, 0, 1]),
        ("2", "1", [0, 0, 4, 0]),
        ("2", "2", [0, 1, 0, 0]),
    ];
    let b_table = [
        ("1", "1", [0, 1, 0, 0]),
        ("1", "2", [4, 0, 0, 0]),
        ("2", "1", [0, 0, 4, 0]),
        ("2", "2", [0, 0, 0, 1]),
    ];
    for (name, a, table) in [("A_ex", a_ex(), a_table), ("B_ex", b_ex(), b_table)] {
        for (c1, c2, want) in table {
            let got = a.eval(&word(&[("a", c1), ("a", c2)]));
            ensure!(
                got.as_ref().map(|t| t.leaves()) == Some(ints(&want).as_slice()),
                "{name} on <a,{c1}><a,{c2}>: {got:?}"
            );
        }
    }
    let t = PerfectTree::from_parts(vec!["a".into(); 2], ints(&[0, 0, 0, 1])).unwrap();
    let want = vec![Algebraic::zero(4), -&alg("1/s2^1"), Algebraic::zero(4), alg("1/s2^1")];
    let got = t_ex().apply(&t);
    ensure!(got.as_ref().map(|t| t.leaves()) == Some(want.as_slice()), "T_ex: {got:?}");
    Ok("8 tree values and the T_ex result match exactly".into())
}

fn form(a: &Swta, q: &str, sym: &str, color: &str) -> Result<(Form, Form), String> {
    let t = a.transition_named(q, sym, color).ok_or(format!("no transition {q} {sym} {color}"))?;
    Ok((t.left.clone(), t.right.clone()))
}

fn bases_image() -> Outcome {
    let h = alg("1/s2^1");
    let a1 = image(&t_hall(), &a_bases()).map_err(|e| e.to_string())?;
    ensure!(a1.num_states() == 1, "image has {} states", a1.num_states());
    let q = a1.states()[0].clone();
    let single = |c: &Algebraic| LinearForm::single(0, c.clone());
    ensure!(form(&a1, &q, "a", "1")? == (single(&h), single(&h)), "A' color 1 pattern");
    ensure!(form(&a1, &q, "a", "2")? == (single(&h), single(&-&h)), "A' color 2 pattern");
    let a2 = image(&t_hall(), &a1).map_err(|e| e.to_string())?;
    let q2 = a2.states()[0].clone();
    let (one, zero) = (Algebraic::one(4), Algebraic::zero(4));
    ensure!(form(&a2, &q2, "a", "1")? == (single(&one), single(&zero)), "A'' color 1 pattern");
    ensure!(form(&a2, &q2, "a", "2")? == (single(&zero), single(&one)), "A'' color 2 pattern");
    let v = functional_relate(&a_bases(), &a2, Mode::Equal).map_err(|e| e.to_string())?;
    ensure!(v.holds, "A_bases and A'' differ: {:?}", v.witness);
    Ok(format!("A' = ({q}: h|h, h|-h), A'' = (1|0, 0|1), A_bases == A''"))
}

fn bv_pipeline() -> Outcome {
    let wtts: Vec<_> = bv_circuit().into_iter().map(|s| s.wtt).collect();
    let img = image_all(&wtts, &bv_pre()).map_err(|e| e.to_string())?;
    let v = functional_relate(&img, &bv_res(), Mode::Equal).map_err(|e| e.to_string())?;
    ensure!(v.holds, "pipeline image differs from A_res: {:?}", v.witness);
    let r = run_check("bv", &bench::bv().map_err(|e| e.to_string())?, RunOptions::default()).map_err(|e| e.to_string())?;
    ensure!(r.verdict.as_deref() == Some("holds"), "BV verdict {:?}", r.verdict);
    Ok(format!(
        "image == A_res ({} states), BV holds in {:.3} s",
        bv_res().num_states(),
        r.verify_seconds
    ))
}

fn bits(idx: usize, h: usize) -> Vec<bool> {
    (1..=h).map(|q| idx >> (h - q) & 1 == 1).collect()
}

fn index(b: &[bool]) -> usize {
    b.iter().fold(0, |acc, &x| acc << 1 | x as usize)
}

/// |c, b1, a1, ..., bn, an, z> -> |c, s1, a1, ..., sn, an, carry> with
/// s = a + b + c.
fn adder_reference(idx: usize, n: usize) -> usize {
    let h = 2 * n + 2;
    let mut b = bits(idx, h);
    assert!(!b[h - 1], "adder input has z set");
    let num = |off: usize| (0..n).map(|k| (b[2 * k + off] as usize) << k).sum::<usize>();
    let s = num(1) + num(2) + b[0] as usize;
    for k in 0..n {
        b[2 * k + 1] = s >> k & 1 == 1;
    }
    b[h - 1] = s >> n & 1 == 1;
    index(&b)
}

/// Ancilla a_i (qubit 2i-2) picks up x_{i-1} xor x_i.
fn syndrome_reference(idx: usize, n: usize) -> usize {
    let h = 2 * n - 1;
    let mut b = bits(idx, h);
    for i in 2..=n {
        assert!(!b[2 * i - 3], "qecc input has an ancilla set");
        b[2 * i - 3] = b[2 * i - 4] ^ b[2 * i - 2];
    }
    index(&b)
}

fn permute(v: &[Algebraic], f: impl Fn(usize) -> usize) -> Vec<Algebraic> {
    let mut out = vec![Algebraic::zero(4); v.len()];
    for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        out[f(i)] = x.clone();
    }
    out
}

/// Every tree of `pre` at height `h`: dense simulation of the gate list,
/// the independent reference, the post model and the staircase image agree.
fn dense_agreement(
    pre: &Swta,
    post: &Swta,
    img: &Swta,
    gates: &[swtaq::gates::GateSpec],
    h: usize,
    reference: impl Fn(usize) -> usize,
) -> Result<usize, String> {
    let mut count = 0;
    for w in pre.all_words(h) {
        let names = pre.word_names(&w);
        let Some(t) = pre.eval(&names) else { continue };
        let dense = common::simulate(gates, &t.leaves().to_vec(), 4, h);
        ensure!(dense == permute(t.leaves(), &reference), "dense vs reference at {names:?}");
        let p = post.eval(&names);
        ensure!(p.as_ref().map(|x| x.leaves()) == Some(dense.as_slice()), "post vs dense at {names:?}");
        let i = img.eval(&names);
        ensure!(i.as_ref().map(|x| x.leaves()) == Some(dense.as_slice()), "image vs dense at {names:?}");
        count += 1;
    }
    ensure!(count > 0, "no input trees at height {h}");
    Ok(count)
}

fn circuit_image(check: &Check) -> Result<(Swta, Swta, Swta), String> {
    let Check::Verify { pre, circuit, post, .. } = check else {
        return Err("not a verification check".into());
    };
    let wtts: Vec<_> = circuit.iter().map(|s| s.wtt.clone()).collect();
    let img = image_all(&wtts, pre).map_err(|e| e.to_string())?;
    Ok((pre.clone(), post.clone(), img))
}

fn case_studies(max_basis_ok: &mut Vec<(usize, usize)>) -> Outcome {
    let mut parts = Vec::new();
    for name in ["grover", "adder", "qecc", "heisenberg"] {
        let check = bench::by_name(name).map_err(|e| e.to_string())?;
        let opts = RunOptions { oracle_depth: Some(5), m: None };
        let r = run_check(name, &check, opts).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.verdict.as_deref() == Some("holds"), "{name}: verdict {:?}", r.verdict);
        if r.verify_seconds >= 600.0 {
            return Err(format!("{name}: {:.1} s over budget", r.verify_seconds));
        }
        if let Some(s) = &r.stats {
            max_basis_ok.push((s.max_basis, s.dim));
        }
        parts.push(format!("{name} {:.3} s", r.verify_seconds));
    }
    let adder = bench::adder().map_err(|e| e.to_string())?;
    let (pre, post, img) = circuit_image(&adder)?;
    let mut dense = Vec::new();
    for n in 1..=2 {
        let h = 2 * n + 2;
        let c = dense_agreement(&pre, &post, &img, &bench::adder_circuit(n), h, |i| adder_reference(i, n))?;
        dense.push(format!("adder {h}q x{c}"));
    }
    let qecc = bench::qecc().map_err(|e| e.to_string())?;
    let (pre, post, img) = circuit_image(&qecc)?;
    for n in 2..=3 {
        let h = 2 * n - 1;
        let c = dense_agreement(&pre, &post, &img, &bench::qecc_circuit(n), h, |i| syndrome_reference(i, n))?;
        dense.push(format!("qecc {h}q x{c}"));
    }
    Ok(format!("all hold: {}; dense agreement: {}", parts.join(", "), dense.join(", ")))
}

fn properties(max_basis_ok: &mut Vec<(usize, usize)>) -> Outcome {
    for seed in 0..100 {
        laws::composition(seed)?;
    }
    for seed in 0..50 {
        laws::image_language(seed)?;
        laws::domain_dfa(seed)?;
        let d = laws::differential(seed)?;
        max_basis_ok.push((d.max_basis, d.dim));
    }
    let mut gates = 0;
    for qubits in 1..=5 {
        let m = if qubits == 5 { 16 } else { 8 };
        for g in laws::all_gates(m, qubits) {
            laws::gate_on_bases(&g, m, qubits)?;
            gates += 1;
        }
    }
    for (name, bx, gs) in laws::staircase_boxes() {
        laws::staircase(name, &bx, &gs, 7)?;
    }
    for seed in 0..100 {
        laws::normalization(seed)?;
    }
    let runs = max_basis_ok.len();
    ensure!(
        max_basis_ok.iter().all(|(b, d)| b <= d),
        "basis larger than the state space in some run"
    );
    Ok(format!(
        "composition x100, image x50, domain x50, differential x50, {gates} gates, 3 staircases, normalization x100, basis bound on {runs} runs"
    ))
}

fn qft() -> Outcome {
    let (m, n, qubits) = (8, 4, 4);
    let t = qft_wtt(m, n, qubits).map_err(|e| e.to_string())?;
    let bound = 2 * (n * n + qubits);
    ensure!(t.num_states() <= bound, "{} states > {bound}", t.num_states());
    let f = common::qft_matrix(m, n);
    for i in 0..1usize << n {
        let got = t.apply(&PerfectTree::basis(qubit_symbols(qubits), i, m));
        let want: Vec<Algebraic> = f.iter().map(|row| row[i].clone()).collect();
        ensure!(got.as_ref().map(|x| x.leaves()) == Some(want.as_slice()), "column {i} differs");
    }
    Ok(format!("{} states (bound 2(n^2+m) = {bound}), 16 columns exact", t.num_states()))
}

fn main() -> ExitCode {
    let mut runs = Vec::new();
    let mut failed = 0;
    let mut report = |id: &str, title: &str, limit: f64, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        let out = match out {
            Ok(msg) if secs >= limit => Err(format!("{msg}; took {secs:.2} s, limit {limit} s")),
            o => o,
        };
        let (tag, msg) = match &out {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        failed += out.is_err() as usize;
        println!("{tag} {id} {title} [{secs:.2} s]: {msg}");
    };
    report("C1", "golden semantics", 1.0, &mut golden);
    report("C2", "bases image round trip", 1.0, &mut bases_image);
    report("C3", "BV pipeline", 10.0, &mut bv_pipeline);
    report("C4", "case studies", 4.0 * 600.0, &mut || case_studies(&mut runs));
    report("C5", "property suites", f64::INFINITY, &mut || properties(&mut runs));
    report("C6", "QFT", 30.0, &mut qft);
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
