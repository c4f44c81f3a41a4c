//! Sparse exact elimination: rank, span membership, kernels.

use std::collections::HashMap;

use crate::field::Field;

/// Sparse vector, sorted by index, no explicit zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn normalize<F: Field>(mut v: Vec<(usize, F)>) -> SparseVec<F> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.clone() + x,
            _ => out.push((i, x)),
        }
        if let Some((_, y)) = out.last() {
            if y.is_zero() {
                out.pop();
            }
        }
    }
    out
}

/// `a + c * b`.
fn axpy<F: Field>(a: &[(usize, F)], c: &F, b: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.clone() * b[j].1.clone()));
            j += 1;
        } else {
            let s = a[i].1.clone() + c.clone() * b[j].1.clone();
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built one vector at a time. Each stored row has leading
/// coefficient 1. Optionally tracks how each row was combined from inputs.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: HashMap<usize, (SparseVec<F>, SparseVec<F>)>,
    inserted: usize,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            rows: HashMap::new(),
            inserted: 0,
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows, returning the residue and the
    /// combination (in input indices) that was subtracted off, tagged as
    /// `tag - combination`.
    fn reduce(&self, mut v: SparseVec<F>, mut tag: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut start = 0;
        while start < v.len() {
            let (lead, coef) = v[start].clone();
            if let Some((row, rtag)) = self.rows.get(&lead) {
                let c = -coef;
                v = axpy(&v, &c, row);
                tag = axpy(&tag, &c, rtag);
            } else {
                start += 1;
            }
        }
        (v, tag)
    }

    pub fn is_in_span(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v.clone(), Vec::new()).0.is_empty()
    }

    /// Add `v`. Returns `Err(relation)` if `v` was dependent, where `relation`
    /// is a vanishing combination over insertion indices, else `Ok(())`.
    pub fn insert(&mut self, v: SparseVec<F>) -> Result<(), SparseVec<F>> {
        let idx = self.inserted;
        self.inserted += 1;
        let (res, tag) = self.reduce(v, vec![(idx, F::one())]);
        if res.is_empty() {
            return Err(tag);
        }
        let lead = res[0].0;
        let inv = res[0].1.inv().expect("nonzero lead");
        let res: SparseVec<F> = res.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
        let tag: SparseVec<F> = tag.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
        self.rows.insert(lead, (res, tag));
        Ok(())
    }
}

pub fn rank<F: Field>(vectors: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        let _ = e.insert(v);
    }
    e.rank()
}

/// Kernel of the linear map sending basis vector `j` to `columns[j]`.
pub fn kernel<F: Field>(columns: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for c in columns {
        if let Err(rel) = e.insert(c.clone()) {
            out.push(rel);
        }
    }
    out
}

/// Dense determinant by Gaussian elimination.
pub fn determinant<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let k = m.len();
    let mut det = F::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det = det * pivot.clone();
        let inv = pivot.inv().unwrap();
        for r in c + 1..k {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone() * inv.clone();
            for cc in c..k {
                let t = m[c][cc].clone();
                m[r][cc] = m[r][cc].clone() - f.clone() * t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type F = Fp<101>;

    fn v(xs: &[(usize, i64)]) -> SparseVec<F> {
        normalize(xs.iter().map(|&(i, x)| (i, F::from_i64(x))).collect())
    }

    #[test]
    fn rank_and_span() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 1), (1, 2)])).is_ok());
        assert!(e.insert(v(&[(1, 1), (2, 1)])).is_ok());
        let dep = e.insert(v(&[(0, 1), (1, 3), (2, 1)]));
        assert!(dep.is_err());
        assert_eq!(e.rank(), 2);
        assert!(e.is_in_span(&v(&[(0, 2), (1, 4)])));
        assert!(!e.is_in_span(&v(&[(2, 1)])));
    }

    #[test]
    fn kernel_vectors_vanish() {
        let cols = vec![
            v(&[(0, 1)]),
            v(&[(0, 2), (1, 1)]),
            v(&[(0, 3), (1, 1)]),
            v(&[]),
        ];
        let ker = kernel(&cols);
        assert_eq!(ker.len(), 2);
        for k in ker {
            let mut acc: Vec<(usize, F)> = Vec::new();
            for (j, c) in &k {
                for (i, x) in &cols[*j] {
                    acc.push((*i, *c * *x));
                }
            }
            assert!(normalize(acc).is_empty());
        }
    }

    #[test]
    fn det() {
        let m = vec![
            vec![F::from_i64(2), F::from_i64(1)],
            vec![F::from_i64(1), F::from_i64(1)],
        ];
        assert_eq!(determinant(m), F::from_i64(1));
    }
}
