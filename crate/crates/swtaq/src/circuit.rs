// SPDX-License-Identifier: Apache-2.0
//! Fixed-size circuits as gate lists.
//!
//! ```text
//! circuit qubits=3 m=4
//! H 1
//! CX 1 2          # control 1, target 2
//! CCX 1 2 3
//! CU (1|0|0|-1) 1 3
//! QFT 1..3
//! BROADCAST H
//! ```
//!
//! A gate name prefixed with `k` letters `C` takes `k` control qubits before
//! the target. `U` and `CU...` take an explicit matrix `(a|b|c|d)`.

use crate::gates::{qubit_symbols, GateError, GateSpec, Unitary2};
use crate::text::ParseError;
use crate::wtt::{compose_all, Wtt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub qubits: usize,
    pub m: usize,
    pub gates: Vec<GateSpec>,
}

impl Circuit {
    /// Level labels `x1..x{qubits}` of the trees this circuit acts on.
    pub fn labels(&self) -> Vec<String> {
        qubit_symbols(self.qubits)
    }

    /// One transducer per gate.
    pub fn stages(&self) -> Result<Vec<Wtt>, GateError> {
        self.gates.iter().map(|g| g.build(self.m, self.qubits)).collect()
    }

    /// The whole circuit as one transducer.
    pub fn to_wtt(&self) -> Result<Wtt, GateError> {
        if self.gates.is_empty() {
            return GateSpec::Composite(Vec::new()).build(self.m, self.qubits);
        }
        Ok(compose_all(&self.stages()?)?)
    }
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col: 1,
        msg: msg.into(),
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| err(line, format!("expected a qubit index, got `{tok}`")))
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hn, header) = lines.next().ok_or_else(|| err(1, "empty circuit file"))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("circuit") {
        return Err(err(hn, "expected `circuit qubits=<n> m=<m>`"));
    }
    let (mut qubits, mut m) = (None, crate::algebra::DEFAULT_M);
    for p in parts {
        if let Some(v) = p.strip_prefix("qubits=") {
            qubits = Some(v.parse().map_err(|_| err(hn, "bad qubit count"))?);
        } else if let Some(v) = p.strip_prefix("m=") {
            m = v.parse().map_err(|_| err(hn, "bad modulus"))?;
        } else {
            return Err(err(hn, format!("unknown header field `{p}`")));
        }
    }
    let qubits: usize = qubits.ok_or_else(|| err(hn, "missing `qubits=`"))?;
    if qubits == 0 {
        return Err(err(hn, "a circuit needs at least one qubit"));
    }
    if m == 0 || !m.is_power_of_two() {
        return Err(err(hn, format!("modulus {m} is not a power of two")));
    }
    let mut gates = Vec::new();
    for (n, line) in lines {
        gates.push(parse_gate(line, m, qubits).map_err(|e| err(n, e))?);
    }
    Ok(Circuit { qubits, m, gates })
}

fn parse_gate(line: &str, m: usize, qubits: usize) -> Result<GateSpec, String> {
    let (name, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let rest = rest.trim();
    let upper = name.to_ascii_uppercase();
    let check = |i: usize| -> Result<usize, String> {
        if i == 0 || i > qubits {
            Err(format!("qubit {i} outside 1..={qubits}"))
        } else {
            Ok(i)
        }
    };
    match upper.as_str() {
        "QFT" => {
            let (a, b) = rest
                .split_once("..")
                .ok_or_else(|| format!("expected `QFT <first>..<last>`, got `{rest}`"))?;
            let a = check(a.trim().parse().map_err(|_| "bad QFT range".to_string())?)?;
            let b = check(b.trim().parse().map_err(|_| "bad QFT range".to_string())?)?;
            if b < a {
                return Err("empty QFT range".into());
            }
            return Ok(GateSpec::Qft { first: a, n: b - a + 1 });
        }
        "BROADCAST" => {
            let u = Unitary2::named(rest, m).map_err(|e| e.to_string())?;
            return Ok(GateSpec::Broadcast { u });
        }
        _ => {}
    }
    let controls_n = upper.len() - upper.trim_start_matches('C').len();
    // as many leading Cs as possible are controls
    let mut split = None;
    for k in (0..=controls_n).rev() {
        let base = &upper[k..];
        if base == "U" || Unitary2::named(base, m).is_ok() {
            split = Some((k, base.to_string()));
            break;
        }
    }
    let (k, base) = split.ok_or_else(|| format!("unknown gate `{name}`"))?;
    let (u, args) = if base == "U" {
        let close = rest
            .find(')')
            .ok_or_else(|| "expected a matrix `(a|b|c|d)`".to_string())?;
        let u = Unitary2::parse(&rest[..=close], m).map_err(|e| e.to_string())?;
        (u, rest[close + 1..].trim())
    } else {
        (Unitary2::named(&base, m).map_err(|e| e.to_string())?, rest)
    };
    let idx: Vec<usize> = args
        .split_whitespace()
        .map(|t| parse_index(t, 0).map_err(|e| e.msg).and_then(check))
        .collect::<Result<_, _>>()?;
    if idx.len() != k + 1 {
        return Err(format!(
            "`{name}` takes {} qubit(s), got {}",
            k + 1,
            idx.len()
        ));
    }
    let target = idx[k];
    if k == 0 {
        Ok(GateSpec::Single { u, target })
    } else {
        Ok(GateSpec::Controlled {
            u,
            target,
            controls: idx[..k].to_vec(),
        })
    }
}
