//! Cyclic sequences of simple vector bundles: the canonical sequence 𝕞(r, 𝕕),
//! the simplicity conditions, extension peeling and planar representatives.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gentle_homotopy::{
    build_band_complex, combine, cone, cone_with_inclusion, hom_basis, is_iso, minimize,
};
use crate::surface_walks::{gcd, LoopMatrix};

/// S_0 = 0, S_{x+1} = S_x + 𝕕(x mod n), for x < n·r.
pub fn partial_sums(r: usize, d: &[i64]) -> Vec<i64> {
    let n = d.len();
    let mut s = vec![0i64; n * r + 1];
    for x in 0..n * r {
        s[x + 1] = s[x] + d[x % n];
    }
    s
}

fn check_coprime(r: usize, d: &[i64]) -> Result<()> {
    let total: i64 = d.iter().sum();
    if d.is_empty() || r == 0 {
        return Err(Error::Invalid("need r >= 1 and n >= 1".into()));
    }
    if gcd(r as i64, total) != 1 {
        return Err(Error::NotCoprime {
            r: r as i64,
            d: total,
        });
    }
    Ok(())
}

/// 𝕞(r, 𝕕)_x is the signed number of multiples of r between S_x and S_{x+1}
/// (half-open on the left).
pub fn canonical_sequence(r: usize, d: &[i64]) -> Result<LoopMatrix> {
    check_coprime(r, d)?;
    let s = partial_sums(r, d);
    let ri = r as i64;
    let entries = (0..d.len() * r)
        .map(|x| s[x + 1].div_euclid(ri) - s[x].div_euclid(ri))
        .collect();
    LoopMatrix::new(d.len(), r, entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GapMode {
    /// Entries in the same column differ by at most one.
    #[default]
    Column,
    /// Any two entries differ by at most one.
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftRange {
    /// t ∈ nℤ ∩ [n, nr − n].
    #[default]
    Column,
    /// t ∈ [1, nr − 1].
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BdgOptions {
    pub cond2: GapMode,
    pub t_range: ShiftRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityReport {
    pub coprime_ok: bool,
    pub column_gap_ok: bool,
    pub pattern_ok: bool,
    /// Columns (or `None` in literal mode) whose spread exceeds one.
    pub gap_witnesses: Vec<(Option<usize>, i64, i64)>,
    /// (t, position) where a run ±1, 0, …, 0, ±1 starts.
    pub pattern_witnesses: Vec<(usize, usize)>,
}

impl SimplicityReport {
    pub fn passes(&self) -> bool {
        self.coprime_ok && self.column_gap_ok && self.pattern_ok
    }
}

pub fn bdg_check(m: &LoopMatrix, opts: BdgOptions) -> SimplicityReport {
    let (n, r, len) = (m.n, m.r, m.len());
    let coprime_ok = gcd(r as i64, m.total_degree()) == 1;

    let mut gap_witnesses = Vec::new();
    let spread = |xs: Vec<i64>| (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    match opts.cond2 {
        GapMode::Column => {
            for c in 0..n {
                let (lo, hi) = spread((0..r).map(|j| m.entries[j * n + c]).collect());
                if hi - lo > 1 {
                    gap_witnesses.push((Some(c), lo, hi));
                }
            }
        }
        GapMode::Literal => {
            let (lo, hi) = spread(m.entries.clone());
            if hi - lo > 1 {
                gap_witnesses.push((None, lo, hi));
            }
        }
    }

    let ts: Vec<usize> = match opts.t_range {
        ShiftRange::Column => (1..r).map(|k| k * n).collect(),
        ShiftRange::All => (1..len).collect(),
    };
    let mut pattern_witnesses = Vec::new();
    for t in ts {
        let diff: Vec<i64> = (0..len)
            .map(|x| m.entries[x] - m.entries[(x + t) % len])
            .collect();
        let nz: Vec<usize> = (0..len).filter(|&x| diff[x] != 0).collect();
        if nz.len() < 2 {
            continue;
        }
        for k in 0..nz.len() {
            let (p, q) = (nz[k], nz[(k + 1) % nz.len()]);
            if diff[p] == diff[q] && diff[p].abs() == 1 {
                pattern_witnesses.push((t, p));
            }
        }
    }

    SimplicityReport {
        coprime_ok,
        column_gap_ok: gap_witnesses.is_empty(),
        pattern_ok: pattern_witnesses.is_empty(),
        gap_witnesses,
        pattern_witnesses,
    }
}

/// Column contents of a simple bundle of rank r and column degree d:
/// (d mod r) copies of ⌊d/r⌋ + 1, the rest ⌊d/r⌋. Sorted.
pub fn degree_multiset(r: usize, d: i64) -> Vec<i64> {
    let ri = r as i64;
    let q = d.div_euclid(ri);
    let a = d.rem_euclid(ri) as usize;
    let mut v = vec![q; r - a];
    v.extend(std::iter::repeat_n(q + 1, a));
    v
}

pub const SEARCH_MAX_N: usize = 3;
pub const SEARCH_MAX_R: usize = 6;

/// All primitive sequences whose columns carry the degree multisets of
/// (r, 𝕕) and that pass the simplicity conditions, one per rotation class.
pub fn enumerate_simple_candidates(n: usize, r: usize, d: &[i64]) -> Result<Vec<LoopMatrix>> {
    if n > SEARCH_MAX_N || r > SEARCH_MAX_R {
        return Err(Error::SearchTooLarge { n, r });
    }
    if d.len() != n {
        return Err(Error::Invalid("multidegree length must be n".into()));
    }
    check_coprime(r, d)?;
    let ri = r as i64;
    let base: Vec<i64> = d.iter().map(|x| x.div_euclid(ri)).collect();
    let ones: Vec<usize> = d.iter().map(|x| x.rem_euclid(ri) as usize).collect();
    // per column, every choice of rows holding the extra 1
    let col_choices: Vec<Vec<u64>> = ones
        .iter()
        .map(|&a| {
            (0u64..1 << r)
                .filter(|mask| mask.count_ones() as usize == a)
                .collect()
        })
        .collect();
    let mut classes: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let mut entries = vec![0i64; n * r];
        for c in 0..n {
            let mask = col_choices[c][idx[c]];
            for j in 0..r {
                entries[j * n + c] = base[c] + ((mask >> j) & 1) as i64;
            }
        }
        let m = LoopMatrix::new(n, r, entries)?;
        if m.is_primitive() && bdg_check(&m, BdgOptions::default()).passes() {
            classes.insert(m.canonical().entries);
        }
        for c in 0..n {
            idx[c] += 1;
            if idx[c] < col_choices[c].len() {
                continue 'outer;
            }
            idx[c] = 0;
        }
        break;
    }
    classes
        .into_iter()
        .map(|e| LoopMatrix::new(n, r, e))
        .collect()
}

/// One extension step at column i: ℓ_i = max(𝕞_i, 𝕞_{i+n}) + 1 and
/// ℓ_{i+j} = 𝕞_{i+j}; the quotient drops positions i..i+n−1 and puts
/// 𝕞_i − ℓ_i + 𝕞_{i+n} at position i+n.
pub fn extension_peel_at(m: &LoopMatrix, i: usize) -> Result<(Vec<i64>, LoopMatrix)> {
    let (n, r, len) = (m.n, m.r, m.len());
    if r < 2 {
        return Err(Error::Invalid("peeling needs rank at least 2".into()));
    }
    let i = i % len;
    let at = |x: usize| m.entries[x % len];
    let mut ell = vec![0i64; n];
    for j in 0..n {
        ell[(i + j) % n] = at(i + j);
    }
    ell[i % n] = at(i).max(at(i + n)) + 1;
    let new_len = n * (r - 1);
    let mut out = vec![0i64; new_len];
    for k in 0..new_len {
        out[(i + k) % new_len] = at(i + n + k);
    }
    out[i % new_len] = at(i) - ell[i % n] + at(i + n);
    Ok((ell, LoopMatrix::new(n, r - 1, out)?))
}

pub fn extension_peel(m: &LoopMatrix) -> Result<(Vec<i64>, LoopMatrix)> {
    extension_peel_at(m, 0)
}

/// Peel down to rank one; returns the r line-bundle degree vectors.
pub fn peel_all(m: &LoopMatrix) -> Vec<Vec<i64>> {
    let mut cur = m.clone();
    let mut out = Vec::new();
    while cur.r > 1 {
        let (ell, next) = extension_peel(&cur).expect("rank >= 2");
        out.push(ell);
        cur = next;
    }
    out.push(cur.entries.clone());
    out
}

/// Parameter of the middle term of the extension P(m′)[−1] → P(ℓ)(λ_ℓ) →
/// P(m) when P(m′) carries λ_m′. Every negative entry flips the sign once.
pub fn extension_lambda<F: Field>(
    m: &LoopMatrix,
    ell: &[i64],
    m_prime: &LoopMatrix,
    lambda_ell: F,
    lambda_rest: F,
) -> F {
    let neg = m
        .entries
        .iter()
        .chain(ell)
        .chain(&m_prime.entries)
        .filter(|&&x| x < 0)
        .count();
    let p = lambda_ell * lambda_rest;
    if neg % 2 == 0 {
        -p
    } else {
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionCheck {
    pub ell: Vec<i64>,
    pub quotient: LoopMatrix,
    /// Hom¹(P(m′), P(ℓ)).
    pub ext_dim: usize,
    /// Cone of a random extension class is P(m) with the predicted parameter.
    pub middle_ok: bool,
    /// Cone of P(ℓ) → middle is P(m′).
    pub quotient_ok: bool,
}

/// Checks one peeling step against the homotopy category.
pub fn check_extension<F: Field, R: Rng>(
    m: &LoopMatrix,
    lambda_ell: F,
    lambda_rest: F,
    rng: &mut R,
) -> Result<ExtensionCheck> {
    let (ell, quotient) = extension_peel(m)?;
    let line = LoopMatrix::new(m.n, 1, ell.clone())?;
    let pl = build_band_complex(&line, lambda_ell.clone());
    let pq = build_band_complex(&quotient, lambda_rest.clone());
    let basis = hom_basis(&pq, &pl, 1);
    let bound = match F::characteristic() {
        0 => 1 << 20,
        p => p.min(1 << 30),
    } as i64;
    let coeffs: Vec<F> = basis
        .iter()
        .map(|_| F::from_i64(rng.gen_range(1..bound)))
        .collect();
    let f = combine(&basis, &coeffs);
    let (middle, incl) = cone_with_inclusion(&pq, &pl, &f)?;
    let lambda = extension_lambda(m, &ell, &quotient, lambda_ell, lambda_rest.clone());
    let middle_ok = !basis.is_empty()
        && is_iso(
            &minimize(&middle),
            &minimize(&build_band_complex(m, lambda)),
        )?;
    let quotient_ok = is_iso(&cone(&pl, &middle, &incl)?, &minimize(&pq))?;
    Ok(ExtensionCheck {
        ell,
        quotient,
        ext_dim: basis.len(),
        middle_ok,
        quotient_ok,
    })
}

/// Straight segment in strip `strip` from height `y0`/(2r) to `y1`/(2r),
/// heights taken in the universal cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub index: usize,
    pub strip: usize,
    pub y0: i64,
    pub y1: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarRepresentative {
    pub n: usize,
    pub r: usize,
    pub segments: Vec<Segment>,
}

/// Segment j joins the point at height (S_j + ½)/r on arc j mod n to the
/// point at height (S_{j+1} + ½)/r on the next arc; punctures sit at
/// integer heights.
pub fn geometric_representative(r: usize, d: &[i64]) -> Result<PlanarRepresentative> {
    check_coprime(r, d)?;
    let n = d.len();
    let s = partial_sums(r, d);
    let segments = (0..n * r)
        .map(|j| Segment {
            index: j,
            strip: j % n,
            y0: 2 * s[j] + 1,
            y1: 2 * s[j + 1] + 1,
        })
        .collect();
    Ok(PlanarRepresentative { n, r, segments })
}

impl PlanarRepresentative {
    /// Interior crossings between distinct segments, over all translates.
    /// Shared endpoints count too.
    pub fn crossing_count(&self) -> usize {
        let period = 2 * self.r as i64;
        let mut count = 0;
        for (a, sa) in self.segments.iter().enumerate() {
            for sb in &self.segments[a + 1..] {
                if sa.strip != sb.strip {
                    continue;
                }
                let lo_d = sa.y0 - sb.y0;
                let hi_d = sa.y1 - sb.y1;
                let (lo, hi) = (lo_d.min(hi_d), lo_d.max(hi_d));
                // translates k·period with lo ≤ k·period ≤ hi
                let first = lo.div_euclid(period) + i64::from(lo.rem_euclid(period) != 0);
                let last = hi.div_euclid(period);
                count += (last - first + 1).max(0) as usize;
            }
        }
        count
    }

    /// Number of times the loop crosses the puncture level inside each segment.
    pub fn level_crossings(&self) -> Vec<i64> {
        let p = 2 * self.r as i64;
        self.segments
            .iter()
            .map(|s| s.y1.div_euclid(p) - s.y0.div_euclid(p))
            .collect()
    }
}
