// SPDX-License-Identifier: Apache-2.0
//! Line-based model files.
//!
//! ```text
//! swta m=4
//! root q
//! leaves u v
//! colors 1 2
//! trans q a 1 -> (1*r + 1*s | 1*r + -1*s)
//! ```
//!
//! WTT files use header `wtt m=<m>`, transitions without a color, and ground
//! terms `coef*q(L)`. Optional `states` and `symbols` lines fix id order. An
//! empty form is written `0`. Lines starting with `#` are comments.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::Algebraic;
use crate::forms::LinearForm;
use crate::swta::Swta;
use crate::wtt::{Side, Wtt};
use crate::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone)]
pub enum Model {
    Swta(Swta),
    Wtt(Wtt),
}

impl Model {
    pub fn m(&self) -> usize {
        match self {
            Model::Swta(a) => a.m(),
            Model::Wtt(t) => t.m(),
        }
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

fn col_of(line: &str, part: &str) -> usize {
    let base = line.as_ptr() as usize;
    let p = part.as_ptr() as usize;
    if p >= base && p <= base + line.len() {
        p - base + 1
    } else {
        1
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with('-')
        && !s.starts_with(|c: char| c.is_ascii_digit())
        && !s.chars().any(|c| c.is_whitespace() || "()|*+".contains(c))
}

/// Splits on `sep` at parenthesis depth zero.
fn split_depth0(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// One term `coef*target`, `target` or `-target`.
fn parse_term<'a>(
    term: &'a str,
    m: usize,
    line_no: usize,
    line: &str,
) -> Result<(Algebraic, &'a str), ParseError> {
    let t = term.trim();
    let at = |msg: String| err(line_no, col_of(line, t), msg);
    if t.is_empty() {
        return Err(at("empty term".into()));
    }
    let star = {
        let mut depth = 0i32;
        let mut found = None;
        for (i, ch) in t.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '*' if depth == 0 => {
                    found = Some(i);
                    break;
                }
                _ => {}
            }
        }
        found
    };
    match star {
        Some(i) => {
            let c = Algebraic::parse(&t[..i], m).map_err(|e| at(e.to_string()))?;
            Ok((c, t[i + 1..].trim()))
        }
        None => match t.strip_prefix('-') {
            Some(rest) => Ok((-Algebraic::one(m), rest.trim())),
            None => Ok((Algebraic::one(m), t)),
        },
    }
}

/// Raw form: list of (coefficient, target text).
fn parse_form<'a>(
    text: &'a str,
    m: usize,
    line_no: usize,
    line: &str,
) -> Result<Option<Vec<(Algebraic, &'a str)>>, ParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(err(
            line_no,
            col_of(line, text),
            "empty linear form; write `0` for the empty form",
        ));
    }
    if t == "0" {
        return Ok(None);
    }
    split_depth0(t, '+')
        .into_iter()
        .map(|term| parse_term(term, m, line_no, line))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

/// `(<left> | <right>)`.
fn split_pair<'a>(body: &'a str, line_no: usize, line: &str) -> Result<(&'a str, &'a str), ParseError> {
    let b = body.trim();
    let inner = b
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| err(line_no, col_of(line, b), "expected `(<left> | <right>)`"))?;
    let parts = split_depth0(inner, '|');
    if parts.len() != 2 {
        return Err(err(line_no, col_of(line, b), "expected exactly one `|`"));
    }
    Ok((parts[0], parts[1]))
}

fn parse_header(line: &str, kind: &str, line_no: usize) -> Result<usize, ParseError> {
    let mut toks = line.split_whitespace();
    if toks.next() != Some(kind) {
        return Err(err(line_no, 1, format!("expected `{kind} m=<modulus>` header")));
    }
    let m = toks
        .next()
        .and_then(|t| t.strip_prefix("m="))
        .ok_or_else(|| err(line_no, 1, "missing `m=`"))?;
    let m: usize = m.parse().map_err(|_| err(line_no, 1, "bad modulus"))?;
    if m == 0 || !m.is_power_of_two() {
        return Err(err(line_no, 1, format!("modulus {m} is not a power of two")));
    }
    Ok(m)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    let Some((n, first)) = content_lines(text).next() else {
        return Err(err(1, 1, "empty model file"));
    };
    match first.split_whitespace().next() {
        Some("swta") => parse_swta(text).map(Model::Swta),
        Some("wtt") => parse_wtt(text).map(Model::Wtt),
        _ => Err(err(n, 1, "expected `swta` or `wtt` header")),
    }
}

fn model_err(line_no: usize, e: ModelError) -> ParseError {
    err(line_no, 1, e.to_string())
}

pub fn parse_swta(text: &str) -> Result<Swta, ParseError> {
    let mut lines = content_lines(text);
    let (hn, header) = lines.next().ok_or_else(|| err(1, 1, "empty model file"))?;
    let m = parse_header(header, "swta", hn)?;
    let mut states: Vec<String> = Vec::new();
    let mut root: Option<String> = None;
    let mut pending: Vec<(usize, &str)> = Vec::new();
    for (n, line) in lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "states" => states = rest.split_whitespace().map(str::to_string).collect(),
            "root" => {
                let r = rest.trim();
                if !valid_name(r) {
                    return Err(err(n, col_of(line, rest), format!("bad state name `{r}`")));
                }
                root = Some(r.to_string());
            }
            _ => pending.push((n, line)),
        }
    }
    let root = root.ok_or_else(|| err(hn, 1, "missing `root` line"))?;
    let mut a = Swta::new(m, states.first().unwrap_or(&root));
    for s in &states {
        a.add_state(s);
    }
    let r = a.add_state(&root);
    a.set_root(r);
    for (n, line) in pending {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "leaves" => {
                for s in rest.split_whitespace() {
                    if !valid_name(s) {
                        return Err(err(n, col_of(line, s), format!("bad state name `{s}`")));
                    }
                    let q = a.add_state(s);
                    a.add_leaf(q);
                }
            }
            "symbols" => {
                for s in rest.split_whitespace() {
                    a.add_symbol(s);
                }
            }
            "colors" => {
                for s in rest.split_whitespace() {
                    a.add_color(s);
                }
            }
            "trans" => {
                let (lhs, body) = rest
                    .split_once("->")
                    .ok_or_else(|| err(n, col_of(line, rest), "expected `->`"))?;
                let head: Vec<&str> = lhs.split_whitespace().collect();
                if head.len() != 3 {
                    return Err(err(n, col_of(line, lhs), "expected `trans <state> <symbol> <color> ->`"));
                }
                if !valid_name(head[0]) {
                    return Err(err(n, col_of(line, head[0]), format!("bad state name `{}`", head[0])));
                }
                let (lt, rt) = split_pair(body, n, line)?;
                let mut forms = Vec::new();
                for ft in [lt, rt] {
                    let raw = parse_form(ft, m, n, line)?;
                    let mut f = LinearForm::empty();
                    for (c, target) in raw.unwrap_or_default() {
                        if !valid_name(target) {
                            return Err(err(n, col_of(line, target), format!("bad state name `{target}`")));
                        }
                        f.add_term(a.add_state(target), c);
                    }
                    forms.push(f);
                }
                let q = a.add_state(head[0]);
                let s = a.add_symbol(head[1]);
                let c = a.add_color(head[2]);
                let r = forms.pop().unwrap();
                let l = forms.pop().unwrap();
                a.add_transition(q, s, c, l, r).map_err(|e| model_err(n, e))?;
            }
            "swta" | "wtt" => return Err(err(n, 1, "repeated header")),
            _ => return Err(err(n, 1, format!("unknown directive `{kw}`"))),
        }
    }
    Ok(a)
}

pub fn parse_wtt(text: &str) -> Result<Wtt, ParseError> {
    let mut lines = content_lines(text);
    let (hn, header) = lines.next().ok_or_else(|| err(1, 1, "empty model file"))?;
    let m = parse_header(header, "wtt", hn)?;
    let mut states: Vec<String> = Vec::new();
    let mut root: Option<String> = None;
    let mut rest_lines = Vec::new();
    for (n, line) in lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "states" => states = rest.split_whitespace().map(str::to_string).collect(),
            "root" => {
                let r = rest.trim();
                if !valid_name(r) {
                    return Err(err(n, col_of(line, rest), format!("bad state name `{r}`")));
                }
                root = Some(r.to_string());
            }
            _ => rest_lines.push((n, line)),
        }
    }
    let root = root.ok_or_else(|| err(hn, 1, "missing `root` line"))?;
    let mut t = Wtt::new(m, states.first().unwrap_or(&root));
    for s in &states {
        t.add_state(s);
    }
    let r = t.add_state(&root);
    t.set_root(r);
    for (n, line) in rest_lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "leaves" => {
                for s in rest.split_whitespace() {
                    let q = t.add_state(s);
                    t.add_leaf(q);
                }
            }
            "symbols" => {
                for s in rest.split_whitespace() {
                    t.add_symbol(s);
                }
            }
            "trans" => {
                let (lhs, body) = rest
                    .split_once("->")
                    .ok_or_else(|| err(n, col_of(line, rest), "expected `->`"))?;
                let head: Vec<&str> = lhs.split_whitespace().collect();
                if head.len() != 2 {
                    return Err(err(n, col_of(line, lhs), "expected `trans <state> <symbol> ->`"));
                }
                let (lt, rt) = split_pair(body, n, line)?;
                let mut forms = Vec::new();
                for ft in [lt, rt] {
                    let raw = parse_form(ft, m, n, line)?;
                    let mut f = LinearForm::empty();
                    for (c, target) in raw.unwrap_or_default() {
                        let (name, side) = if let Some(x) = target.strip_suffix("(L)") {
                            (x, Side::L)
                        } else if let Some(x) = target.strip_suffix("(R)") {
                            (x, Side::R)
                        } else {
                            return Err(err(n, col_of(line, target), format!("expected ground term `q(L)` or `q(R)`, got `{target}`")));
                        };
                        let name = name.trim();
                        if !valid_name(name) {
                            return Err(err(n, col_of(line, target), format!("bad state name `{name}`")));
                        }
                        f.add_term((t.add_state(name), side), c);
                    }
                    forms.push(f);
                }
                if !valid_name(head[0]) {
                    return Err(err(n, col_of(line, head[0]), format!("bad state name `{}`", head[0])));
                }
                let q = t.add_state(head[0]);
                let s = t.add_symbol(head[1]);
                let r = forms.pop().unwrap();
                let l = forms.pop().unwrap();
                t.add_transition(q, s, l, r).map_err(|e| model_err(n, e))?;
            }
            "swta" | "wtt" => return Err(err(n, 1, "repeated header")),
            _ => return Err(err(n, 1, format!("unknown directive `{kw}`"))),
        }
    }
    Ok(t)
}

fn fmt_terms<I: Iterator<Item = (String, Algebraic)>>(it: I) -> String {
    let terms: Vec<String> = it.map(|(name, c)| format!("{c}*{name}")).collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn print_swta(a: &Swta) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "swta m={}", a.m());
    let _ = writeln!(s, "states {}", a.states().join(" "));
    let _ = writeln!(s, "root {}", a.state_name(a.root()));
    let leaves: Vec<&str> = a.leaves().iter().map(|&q| a.state_name(q)).collect();
    let _ = writeln!(s, "leaves {}", leaves.join(" "));
    let _ = writeln!(s, "symbols {}", a.symbols().join(" "));
    let _ = writeln!(s, "colors {}", a.colors().join(" "));
    for q in 0..a.num_states() {
        for (&(sym, col), t) in a.transitions(q) {
            let f = |form: &crate::swta::StateForm| {
                fmt_terms(form.iter().map(|(p, c)| (a.state_name(*p).to_string(), c.clone())))
            };
            let _ = writeln!(
                s,
                "trans {} {} {} -> ({} | {})",
                a.state_name(q),
                a.symbols()[sym],
                a.colors()[col],
                f(&t.left),
                f(&t.right)
            );
        }
    }
    s
}

pub fn print_wtt(t: &Wtt) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "wtt m={}", t.m());
    let _ = writeln!(s, "states {}", t.states().join(" "));
    let _ = writeln!(s, "root {}", t.state_name(t.root()));
    let leaves: Vec<&str> = t.leaves().iter().map(|&q| t.state_name(q)).collect();
    let _ = writeln!(s, "leaves {}", leaves.join(" "));
    let _ = writeln!(s, "symbols {}", t.symbols().join(" "));
    for q in 0..t.num_states() {
        for (&sym, tr) in t.transitions(q) {
            let f = |form: &crate::wtt::GroundForm| {
                fmt_terms(
                    form.iter()
                        .map(|((p, d), c)| (format!("{}({d})", t.state_name(*p)), c.clone())),
                )
            };
            let _ = writeln!(
                s,
                "trans {} {} -> ({} | {})",
                t.state_name(q),
                t.symbols()[sym],
                f(&tr.left),
                f(&tr.right)
            );
        }
    }
    s
}

pub fn print_model(model: &Model) -> String {
    match model {
        Model::Swta(a) => print_swta(a),
        Model::Wtt(t) => print_wtt(t),
    }
}

/// Checks that all models share one modulus.
pub fn check_same_m<'a, I: IntoIterator<Item = &'a Model>>(models: I) -> Result<usize, ModelError> {
    let mut m = None;
    for x in models {
        match m {
            None => m = Some(x.m()),
            Some(m0) if m0 != x.m() => {
                return Err(ModelError::Modulus {
                    expected: m0,
                    got: x.m(),
                })
            }
            _ => {}
        }
    }
    m.ok_or_else(|| ModelError::Invalid("no models".into()))
}
