//! Loops on the n-punctured torus as reduced cyclic walks in the ribbon graph
//! Γ, and monotone loops as integer loop matrices.
//!
//! Γ has vertices v_0..v_{n-1}. The letter ε_j runs v_{j-1} → v_j (crossing
//! the j-th vertical arc), κ_j is a loop at v_j.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LetterKind {
    Eps,
    Kappa,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub kind: LetterKind,
    pub col: usize,
    pub sign: i8,
}

impl Letter {
    pub fn eps(col: usize) -> Self {
        Letter {
            kind: LetterKind::Eps,
            col,
            sign: 1,
        }
    }

    pub fn kappa(col: usize) -> Self {
        Letter {
            kind: LetterKind::Kappa,
            col,
            sign: 1,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            sign: -self.sign,
            ..self
        }
    }

    pub fn pow(self, s: i64) -> Self {
        if s < 0 {
            self.inv()
        } else {
            self
        }
    }

    pub fn source(self, n: usize) -> usize {
        match (self.kind, self.sign > 0) {
            (LetterKind::Kappa, _) => self.col,
            (LetterKind::Eps, true) => (self.col + n - 1) % n,
            (LetterKind::Eps, false) => self.col,
        }
    }

    pub fn target(self, n: usize) -> usize {
        self.inv().source(n)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            LetterKind::Eps => "e",
            LetterKind::Kappa => "k",
        };
        if self.sign > 0 {
            write!(f, "{k}{}", self.col)
        } else {
            write!(f, "{k}{}'", self.col)
        }
    }
}

/// A reduced, cyclically reduced, non-empty cyclic word, stored as its
/// lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicWalk {
    pub n: usize,
    pub letters: Vec<Letter>,
}

fn check_composable(raw: &[Letter], n: usize, cyclic: bool) -> Result<()> {
    for (i, l) in raw.iter().enumerate() {
        if l.col >= n || (l.sign != 1 && l.sign != -1) {
            return Err(Error::Invalid(format!("bad letter {i}")));
        }
    }
    let k = raw.len();
    let pairs = if cyclic { k } else { k.saturating_sub(1) };
    for i in 0..pairs {
        let j = (i + 1) % k;
        if raw[i].target(n) != raw[j].source(n) {
            return Err(Error::NotComposable(i, j));
        }
    }
    Ok(())
}

/// Free reduction of a path (not cyclic).
pub fn free_reduce(raw: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(mut w: Vec<Letter>) -> Vec<Letter> {
    w = free_reduce(w);
    let mut a = 0;
    let mut b = w.len();
    while b - a >= 2 && w[a] == w[b - 1].inv() {
        a += 1;
        b -= 1;
    }
    w[a..b].to_vec()
}

/// Starting index of the lexicographically least rotation.
fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

impl CyclicWalk {
    /// Build from letters already known to be composable and cyclically
    /// reduced.
    pub fn from_reduced(n: usize, mut letters: Vec<Letter>) -> Self {
        let k = least_rotation(&letters);
        letters.rotate_left(k);
        CyclicWalk { n, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let inv: Vec<Letter> = self.letters.iter().rev().map(|l| l.inv()).collect();
        CyclicWalk::from_reduced(self.n, inv)
    }

    /// Letter at a cyclic index.
    pub fn at(&self, i: i64) -> Letter {
        self.letters[i.rem_euclid(self.len() as i64) as usize]
    }

    /// The walk γ_Pic = ε_0 ε_1 … ε_{n-1}.
    pub fn pic(n: usize) -> Self {
        CyclicWalk::from_reduced(n, (0..n).map(Letter::eps).collect())
    }

    pub fn kappa(n: usize, i: usize) -> Self {
        CyclicWalk::from_reduced(n, vec![Letter::kappa(i)])
    }

    /// The boundary loop around the puncture between strips j-1 and j.
    pub fn puncture_loop(n: usize, j: usize) -> Self {
        let jm = (j + n - 1) % n;
        let w = vec![
            Letter::kappa(j),
            Letter::eps(j).inv(),
            Letter::kappa(jm).inv(),
            Letter::eps(j),
        ];
        reduce_walk(&w, n).expect("puncture loop is reduced")
    }

    /// Concatenate several copies (for building powers).
    pub fn power(&self, k: usize) -> Self {
        let mut v = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.letters);
        }
        CyclicWalk::from_reduced(self.n, v)
    }
}

impl fmt::Display for CyclicWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn reduce_walk(raw: &[Letter], n: usize) -> Result<CyclicWalk> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if raw.is_empty() {
        return Err(Error::ContractibleLoop);
    }
    check_composable(raw, n, true)?;
    let w = cyclic_reduce(raw.to_vec());
    if w.is_empty() {
        return Err(Error::ContractibleLoop);
    }
    Ok(CyclicWalk::from_reduced(n, w))
}

pub fn walks_equivalent(a: &CyclicWalk, b: &CyclicWalk) -> bool {
    a.n == b.n && (a == b || *a == b.inverse())
}

pub fn is_primitive(w: &CyclicWalk) -> bool {
    let k = w.len();
    (1..k)
        .filter(|d| k.is_multiple_of(*d))
        .all(|d| (0..k).any(|i| w.letters[i] != w.letters[(i + d) % k]))
}

pub fn is_cvb(w: &CyclicWalk) -> bool {
    let mut any_eps = false;
    for l in &w.letters {
        if l.kind == LetterKind::Eps {
            if l.sign < 0 {
                return false;
            }
            any_eps = true;
        }
    }
    any_eps
}

/// Cyclic integer sequence of length n·r; entry x lives in column x mod n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopMatrix {
    pub n: usize,
    pub r: usize,
    pub entries: Vec<i64>,
}

impl LoopMatrix {
    pub fn new(n: usize, r: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::Invalid("n and r must be positive".into()));
        }
        if entries.len() != n * r {
            return Err(Error::Invalid(format!(
                "expected {} entries, got {}",
                n * r,
                entries.len()
            )));
        }
        Ok(LoopMatrix { n, r, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn at(&self, x: i64) -> i64 {
        self.entries[x.rem_euclid(self.len() as i64) as usize]
    }

    pub fn row(&self, j: usize) -> &[i64] {
        &self.entries[j * self.n..(j + 1) * self.n]
    }

    pub fn multidegree(&self) -> Vec<i64> {
        let mut d = vec![0; self.n];
        for (x, &m) in self.entries.iter().enumerate() {
            d[x % self.n] += m;
        }
        d
    }

    pub fn total_degree(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Rotate by `k` rows.
    pub fn rotate_rows(&self, k: usize) -> Self {
        let mut e = self.entries.clone();
        e.rotate_left((k % self.r) * self.n);
        LoopMatrix {
            entries: e,
            ..self.clone()
        }
    }

    pub fn is_primitive(&self) -> bool {
        (1..self.r)
            .filter(|d| self.r.is_multiple_of(*d))
            .all(|d| self.rotate_rows(d) != *self)
    }

    /// Least row rotation, a canonical representative of the cyclic class.
    pub fn canonical(&self) -> Self {
        (0..self.r)
            .map(|k| self.rotate_rows(k))
            .min_by(|a, b| a.entries.cmp(&b.entries))
            .unwrap()
    }
}

/// Equality of loop matrices up to cyclic row rotation.
pub fn matrices_equivalent(a: &LoopMatrix, b: &LoopMatrix) -> bool {
    a.n == b.n && a.r == b.r && a.canonical() == b.canonical()
}

pub fn matrix_from_walk(w: &CyclicWalk) -> Result<LoopMatrix> {
    if !is_cvb(w) {
        return Err(Error::NotMonotone);
    }
    let n = w.n;
    let k = w.len();
    let start = w
        .letters
        .iter()
        .position(|l| l.kind == LetterKind::Eps && l.col == 0)
        .ok_or(Error::NotMonotone)?;
    let mut entries = Vec::new();
    for t in 0..k {
        let l = w.letters[(start + t) % k];
        match l.kind {
            LetterKind::Eps => entries.push(0),
            LetterKind::Kappa => *entries.last_mut().unwrap() += l.sign as i64,
        }
    }
    let r = entries.len() / n;
    LoopMatrix::new(n, r, entries)
}

pub fn walk_from_matrix(m: &LoopMatrix) -> CyclicWalk {
    let mut letters = Vec::new();
    for (x, &e) in m.entries.iter().enumerate() {
        let c = x % m.n;
        letters.push(Letter::eps(c));
        for _ in 0..e.unsigned_abs() {
            letters.push(Letter::kappa(c).pow(e));
        }
    }
    CyclicWalk::from_reduced(m.n, letters)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyClass {
    pub rank: i64,
    pub multidegree: Vec<i64>,
    pub total_degree: i64,
}

impl HomologyClass {
    pub fn new(rank: i64, multidegree: Vec<i64>) -> Self {
        let total_degree = multidegree.iter().sum();
        HomologyClass {
            rank,
            multidegree,
            total_degree,
        }
    }

    pub fn negate(&self) -> Self {
        HomologyClass::new(-self.rank, self.multidegree.iter().map(|d| -d).collect())
    }

    /// Algebraic intersection pairing on the closed torus, r·d̄′ − d̄·r′.
    pub fn pairing(&self, o: &HomologyClass) -> i64 {
        self.rank * o.total_degree - self.total_degree * o.rank
    }
}

pub fn homology_class(w: &CyclicWalk) -> HomologyClass {
    let mut eps = 0i64;
    let mut d = vec![0i64; w.n];
    for l in &w.letters {
        match l.kind {
            LetterKind::Eps => eps += l.sign as i64,
            LetterKind::Kappa => d[l.col] += l.sign as i64,
        }
    }
    HomologyClass::new(eps / w.n as i64, d)
}

/// Non-separating test for a loop the caller already knows to be simple.
/// The criterion is the class in the closed torus: a separating simple loop
/// bounds a planar subsurface, hence has (r, d̄) = (0, 0). The puncture
/// multidegree is not part of the test since a loop around one puncture has
/// multidegree e_j − e_{j-1}.
pub fn is_non_separating(w: &CyclicWalk, simple: bool) -> Result<bool> {
    if !simple {
        return Err(Error::NotSimple);
    }
    let h = homology_class(w);
    Ok(h.rank != 0 || h.total_degree != 0)
}

/// Merge columns q and q+1 of a loop matrix. For q = n-1 the merge pairs
/// column n-1 of each row with column 0 of the next one, and the merged
/// column becomes column 0.
pub fn contract(m: &LoopMatrix, q: usize) -> Result<LoopMatrix> {
    let n = m.n;
    if n < 2 {
        return Err(Error::Invalid("contraction needs n >= 2".into()));
    }
    if q >= n {
        return Err(Error::Invalid(format!("column {q} out of range")));
    }
    let len = m.len();
    let mut out = Vec::with_capacity((n - 1) * m.r);
    if q + 1 < n {
        for j in 0..m.r {
            let row = m.row(j);
            for c in 0..n {
                if c == q + 1 {
                    *out.last_mut().unwrap() += row[c];
                } else {
                    out.push(row[c]);
                }
            }
        }
    } else {
        for j in 0..m.r {
            let base = j * n;
            out.push(m.entries[(base + len - 1) % len] + m.entries[base]);
            out.extend_from_slice(&m.entries[base + 1..base + n - 1]);
        }
    }
    LoopMatrix::new(n - 1, m.r, out)
}

/// gcd that treats gcd(0, 0) as 0.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: usize) -> Letter {
        Letter::eps(c)
    }
    fn k(c: usize) -> Letter {
        Letter::kappa(c)
    }

    #[test]
    fn reduce_examples() {
        let w = reduce_walk(&[e(0), e(0).inv(), k(0)], 1).unwrap();
        assert_eq!(w.letters, vec![k(0)]);
        let w = reduce_walk(&[e(0), e(1)], 2).unwrap();
        assert_eq!(w.letters, vec![e(0), e(1)]);
        assert_eq!(
            reduce_walk(&[k(0), k(0).inv()], 1),
            Err(Error::ContractibleLoop)
        );
        assert!(matches!(
            reduce_walk(&[e(0), k(0)], 2),
            Err(Error::NotComposable(..))
        ));
    }

    #[test]
    fn reduce_is_idempotent() {
        let raw = [k(0), e(1), k(1), k(1).inv(), e(1).inv(), e(1), e(0)];
        let w = reduce_walk(&raw, 2).unwrap();
        let again = reduce_walk(&w.letters, 2).unwrap();
        assert_eq!(w, again);
    }

    #[test]
    fn least_rotation_matches_brute_force() {
        let cases: Vec<Vec<u8>> = vec![
            vec![3, 1, 2, 1, 1],
            vec![1, 1, 1],
            vec![2, 1, 2, 1],
            vec![5],
            vec![1, 2, 1, 1, 2, 1, 1, 1],
        ];
        for s in cases {
            let k = least_rotation(&s);
            let mut best = s.clone();
            for t in 0..s.len() {
                let mut r = s.clone();
                r.rotate_left(t);
                best = best.min(r);
            }
            let mut got = s.clone();
            got.rotate_left(k);
            assert_eq!(got, best, "{s:?}");
        }
    }

    #[test]
    fn equivalence_examples() {
        let a = reduce_walk(&[e(0), e(1)], 2).unwrap();
        let b = reduce_walk(&[e(1), e(0)], 2).unwrap();
        assert!(walks_equivalent(&a, &b));
        let a = reduce_walk(&[e(0), k(0)], 1).unwrap();
        let b = reduce_walk(&[k(0).inv(), e(0).inv()], 1).unwrap();
        assert!(walks_equivalent(&a, &b));
        assert!(!walks_equivalent(
            &CyclicWalk::kappa(1, 0),
            &CyclicWalk::pic(1)
        ));
    }

    #[test]
    fn primitivity() {
        let sq = reduce_walk(&[e(0), k(0), e(0), k(0)], 1).unwrap();
        assert!(!is_primitive(&sq));
        assert!(is_primitive(&reduce_walk(&[e(0), k(0)], 1).unwrap()));
        let m = LoopMatrix::new(2, 2, vec![1, -1, 1, 0]).unwrap();
        assert!(is_primitive(&walk_from_matrix(&m)));
        assert!(m.is_primitive());
        assert!(!LoopMatrix::new(1, 2, vec![1, 1]).unwrap().is_primitive());
    }

    #[test]
    fn cvb_examples() {
        assert!(is_cvb(&CyclicWalk::pic(3)));
        assert!(!is_cvb(&CyclicWalk::kappa(2, 1)));
        let w = reduce_walk(&[e(0), k(0), e(0).inv(), k(1)], 2).unwrap();
        assert!(!is_cvb(&w));
    }

    #[test]
    fn matrix_walk_round_trip() {
        let w = reduce_walk(&[e(0), e(1)], 2).unwrap();
        let m = matrix_from_walk(&w).unwrap();
        assert_eq!((m.r, m.entries.clone()), (1, vec![0, 0]));

        let raw = [e(0), k(0), e(1), k(1).inv(), e(0), k(0), e(1)];
        let w = reduce_walk(&raw, 2).unwrap();
        let m = matrix_from_walk(&w).unwrap();
        assert!(matrices_equivalent(
            &m,
            &LoopMatrix::new(2, 2, vec![1, -1, 1, 0]).unwrap()
        ));
        assert_eq!(walk_from_matrix(&m), w);

        let w = reduce_walk(&[e(0), k(0), k(0), k(0)], 1).unwrap();
        let m = matrix_from_walk(&w).unwrap();
        assert_eq!((m.r, m.entries.clone()), (1, vec![3]));
        assert!(walks_equivalent(&walk_from_matrix(&m), &w));

        assert_eq!(
            matrix_from_walk(&CyclicWalk::kappa(1, 0)),
            Err(Error::NotMonotone)
        );
    }

    #[test]
    fn homology_examples() {
        assert_eq!(
            homology_class(&CyclicWalk::pic(3)),
            HomologyClass::new(1, vec![0, 0, 0])
        );
        assert_eq!(
            homology_class(&CyclicWalk::kappa(3, 1)),
            HomologyClass::new(0, vec![0, 1, 0])
        );
        let m = LoopMatrix::new(2, 2, vec![1, -1, 1, 0]).unwrap();
        assert_eq!(
            homology_class(&walk_from_matrix(&m)),
            HomologyClass::new(2, vec![2, -1])
        );
    }

    #[test]
    fn puncture_loop_is_separating() {
        for n in 1..4 {
            for j in 0..n {
                let p = CyclicWalk::puncture_loop(n, j);
                let h = homology_class(&p);
                assert_eq!((h.rank, h.total_degree), (0, 0));
                assert_eq!(is_non_separating(&p, true), Ok(false));
            }
        }
        assert_eq!(is_non_separating(&CyclicWalk::pic(2), true), Ok(true));
        assert_eq!(is_non_separating(&CyclicWalk::kappa(2, 0), true), Ok(true));
        assert_eq!(
            is_non_separating(&CyclicWalk::pic(2), false),
            Err(Error::NotSimple)
        );
    }

    #[test]
    fn contraction() {
        let m = LoopMatrix::new(2, 2, vec![1, -1, 1, 0]).unwrap();
        let c = contract(&m, 0).unwrap();
        assert!(matrices_equivalent(
            &c,
            &LoopMatrix::new(1, 2, vec![0, 1]).unwrap()
        ));
        let c1 = contract(&m, 1).unwrap();
        assert_eq!(c1.r, 2);
        assert_eq!(c1.total_degree(), m.total_degree());
        let z = LoopMatrix::new(3, 2, vec![0; 6]).unwrap();
        for q in 0..3 {
            assert_eq!(contract(&z, q).unwrap().entries, vec![0; 4]);
        }
    }
}
