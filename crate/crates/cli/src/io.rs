//! JSON formats for loops and complexes, and where inputs come from.

use std::fmt;
use std::io::Read;

use ccc_core::gentle_homotopy::ProjectiveComplex;
use ccc_core::path_algebra::{vertex_name, GentleAlgebra};
use ccc_core::surface_walks::{
    matrix_from_walk, reduce_walk, walk_from_matrix, CyclicWalk, Letter, LoopMatrix,
};
use ccc_core::Field;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Malformed input or flags; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// `-` or nothing reads stdin, text starting with `{` is taken inline,
/// anything else is a file path.
pub fn read_source(arg: Option<&str>) -> anyhow::Result<String> {
    match arg {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        Some(s) if s.trim_start().starts_with('{') || s.trim_start().starts_with('[') => {
            Ok(s.to_string())
        }
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoopInput {
    Matrix(LoopMatrix),
    Walk(CyclicWalk),
}

impl LoopInput {
    pub fn n(&self) -> usize {
        match self {
            LoopInput::Matrix(m) => m.n,
            LoopInput::Walk(w) => w.n,
        }
    }

    pub fn walk(&self) -> CyclicWalk {
        match self {
            LoopInput::Matrix(m) => walk_from_matrix(m),
            LoopInput::Walk(w) => w.clone(),
        }
    }

    /// The loop matrix, if the loop is a bundle loop.
    pub fn matrix(&self) -> Option<LoopMatrix> {
        match self {
            LoopInput::Matrix(m) => Some(m.clone()),
            LoopInput::Walk(w) => matrix_from_walk(w).ok(),
        }
    }
}

#[derive(Deserialize)]
struct MatrixJson {
    n: usize,
    r: usize,
    entries: Vec<i64>,
}

#[derive(Deserialize)]
struct WalkJson {
    n: usize,
    letters: Vec<Letter>,
}

/// A matrix object has `entries`, a walk object has `letters`.
pub fn parse_loop(text: &str) -> anyhow::Result<LoopInput> {
    let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("malformed JSON: {e}")))?;
    if v.get("entries").is_some() {
        let m: MatrixJson =
            serde_json::from_value(v).map_err(|e| usage(format!("malformed matrix: {e}")))?;
        if m.n == 0 || m.r == 0 {
            return Err(usage("matrix needs n >= 1 and r >= 1"));
        }
        let lm = LoopMatrix::new(m.n, m.r, m.entries).map_err(|e| usage(e.to_string()))?;
        Ok(LoopInput::Matrix(lm))
    } else if v.get("letters").is_some() {
        let w: WalkJson =
            serde_json::from_value(v).map_err(|e| usage(format!("malformed walk: {e}")))?;
        if w.n == 0 {
            return Err(usage("walk needs n >= 1"));
        }
        if let Some(l) = w.letters.iter().find(|l| l.col >= w.n || l.sign.abs() != 1) {
            return Err(usage(format!("bad letter {l:?} for n = {}", w.n)));
        }
        Ok(LoopInput::Walk(reduce_walk(&w.letters, w.n)?))
    } else {
        Err(usage(
            "expected a matrix (with \"entries\") or a walk (with \"letters\")",
        ))
    }
}

pub fn matrix_json(m: &LoopMatrix) -> Value {
    json!({ "n": m.n, "r": m.r, "entries": m.entries })
}

pub fn walk_json(w: &CyclicWalk) -> Value {
    json!({ "n": w.n, "letters": w.letters, "word": w.to_string() })
}

/// Both forms when the loop is a bundle loop.
pub fn loop_json(w: &CyclicWalk) -> Value {
    let mut v = walk_json(w);
    if let Ok(m) = matrix_from_walk(w) {
        v["matrix"] = matrix_json(&m);
    }
    v
}

/// Field elements go out as numbers when they are integers.
pub fn scalar_json<F: Field>(c: &F) -> Value {
    let s = c.to_string();
    s.parse::<i64>()
        .map(Value::from)
        .unwrap_or(Value::String(s))
}

#[derive(Serialize)]
struct ComplexJson {
    n: usize,
    vertices: Vec<String>,
    degrees: Vec<i64>,
    /// (row, col, path id, scalar): the entry from summand `col` to summand `row`.
    differential: Vec<(usize, usize, usize, Value)>,
    paths: Vec<(usize, String)>,
}

pub fn complex_json<F: Field>(x: &ProjectiveComplex<F>) -> Value {
    let alg = GentleAlgebra::new(x.n);
    let mut diff: Vec<(usize, usize, usize, Value)> = x
        .differential
        .iter()
        .map(|e| (e.tgt, e.src, e.path, scalar_json(&e.coeff)))
        .collect();
    diff.sort_by_key(|a| (a.0, a.1, a.2));
    let mut used: Vec<usize> = diff.iter().map(|d| d.2).collect();
    used.sort_unstable();
    used.dedup();
    serde_json::to_value(ComplexJson {
        n: x.n,
        vertices: x.summands.iter().map(|s| vertex_name(s.vertex)).collect(),
        degrees: x.summands.iter().map(|s| s.degree).collect(),
        differential: diff,
        paths: used.into_iter().map(|p| (p, alg.name(p))).collect(),
    })
    .expect("complex serializes")
}

pub fn parse_int_list(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("not an integer list: {s}")))
        })
        .collect()
}
