//! Geometric intersection numbers of loops, from loop matrices and from walks.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ribbon::{ccw_before, in_half_edge, out_half_edge, HalfEdge};
use crate::surface_walks::{
    homology_class, is_non_separating, is_primitive, walks_equivalent, CyclicWalk, Letter,
    LoopMatrix,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// A run `a, 0, …, 0, b` of the difference sequence at shift `shift`
    /// starting at index `start`.
    Subsequence {
        shift: usize,
        start: usize,
        zero_run: usize,
        sign: i8,
    },
    /// A crossing inside a strip between segments `x` and `y`.
    Triple { x: usize, y: usize, q: usize },
    /// A linked pair of passages at letter positions `i` and `j`.
    Linked {
        i: usize,
        j: usize,
        reversed: bool,
        run: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub count: usize,
    pub witnesses: Vec<Witness>,
}

impl IntersectionReport {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        IntersectionReport {
            count: witnesses.len(),
            witnesses,
        }
    }
}

/// Matrix-level homotopy test: `b` is a row rotation of `a`.
fn matrices_homotopic(a: &LoopMatrix, b: &LoopMatrix) -> bool {
    a.n == b.n && a.r == b.r && (0..b.r).any(|k| b.rotate_rows(k) == *a)
}

/// Witnesses from the difference sequence `a_{i+k} - b_{i+l+k}`.
fn subsequence_witnesses(
    a: &LoopMatrix,
    b: &LoopMatrix,
    skip_zero_shift: bool,
) -> Vec<(usize, usize, usize, i8)> {
    let n = a.n;
    let period = n * a.r.lcm(&b.r);
    let mut out = Vec::new();
    for li in 0..b.r {
        if skip_zero_shift && li == 0 {
            continue;
        }
        let l = li * n;
        for i in 0..a.len() {
            let diff = |k: usize| a.at((i + k) as i64) - b.at((i + l + k) as i64);
            let first = diff(0);
            if first == 0 {
                continue;
            }
            let Some(t) = (1..=period).find(|&k| diff(k) != 0) else {
                continue;
            };
            let last = diff(t);
            if first.signum() == last.signum() {
                out.push((l, i, t - 1, first.signum() as i8));
            }
        }
    }
    out
}

pub fn intersections_cvb(a: &LoopMatrix, b: &LoopMatrix) -> Result<IntersectionReport> {
    if a.n != b.n {
        return Err(Error::Invalid("matrices have different n".into()));
    }
    if matrices_homotopic(a, b) {
        return Err(Error::HomotopicInputs);
    }
    let mut w: Vec<Witness> = subsequence_witnesses(a, b, false)
        .into_iter()
        .map(|(shift, start, zero_run, sign)| Witness::Subsequence {
            shift,
            start,
            zero_run,
            sign,
        })
        .collect();
    for x in 0..a.len() {
        for y in (x % a.n..b.len()).step_by(a.n) {
            let gap = (a.entries[x] - b.entries[y]).unsigned_abs() as usize;
            for q in 0..gap.saturating_sub(1) {
                w.push(Witness::Triple { x, y, q });
            }
        }
    }
    Ok(IntersectionReport::from_witnesses(w))
}

pub fn self_intersections(a: &LoopMatrix) -> IntersectionReport {
    let len = a.len();
    // each crossing shows up once from either strand: keep one of the two
    let mut w: Vec<Witness> = subsequence_witnesses(a, a, true)
        .into_iter()
        .filter(|&(l, i, _, _)| (i, l) < ((i + l) % len, len - l))
        .map(|(shift, start, zero_run, sign)| Witness::Subsequence {
            shift,
            start,
            zero_run,
            sign,
        })
        .collect();
    for x in 0..len {
        for y in (x + a.n..len).step_by(a.n) {
            let gap = (a.entries[x] - a.entries[y]).unsigned_abs() as usize;
            for q in 0..gap.saturating_sub(1) {
                w.push(Witness::Triple { x, y, q });
            }
        }
    }
    IntersectionReport::from_witnesses(w)
}

/// A linked pair of passages of two reduced cyclic words. `i` indexes `w`,
/// `j` indexes `v`; the crossing sits at the vertex before `w[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Link {
    pub i: usize,
    pub j: usize,
    pub run: usize,
}

/// Linked pairs between `w` and `v` (as given, not inverted). With
/// `transverse` the single-vertex crossings are included too. If `w` and
/// `v` are the same word the trivial alignment is never a run start, so it
/// drops out on its own.
pub fn linked_pairs(w: &[Letter], v: &[Letter], n: usize, transverse: bool) -> Result<Vec<Link>> {
    let (lw, lv) = (w.len() as i64, v.len() as i64);
    let wa = |i: i64| w[i.rem_euclid(lw) as usize];
    let va = |j: i64| v[j.rem_euclid(lv) as usize];
    let cap = (lw + lv) as usize;
    let mut out = Vec::new();
    for i in 0..lw {
        for j in 0..lv {
            if wa(i) == va(j) {
                if wa(i - 1) == va(j - 1) {
                    continue;
                }
                let mut k = 1;
                while wa(i + k as i64) == va(j + k as i64) {
                    k += 1;
                    if k > cap {
                        return Err(Error::HomotopicInputs);
                    }
                }
                let (u, u2) = (wa(i - 1), va(j - 1));
                let (x, x2) = (wa(i + k as i64), va(j + k as i64));
                let start = ccw_before(
                    out_half_edge(wa(i), n),
                    in_half_edge(u, n),
                    in_half_edge(u2, n),
                );
                let end = ccw_before(
                    in_half_edge(wa(i + k as i64 - 1), n),
                    out_half_edge(x, n),
                    out_half_edge(x2, n),
                );
                if start == end {
                    out.push(Link {
                        i: i as usize,
                        j: j as usize,
                        run: k,
                    });
                }
            } else if transverse {
                let hw = [in_half_edge(wa(i - 1), n), out_half_edge(wa(i), n)];
                let hv = [in_half_edge(va(j - 1), n), out_half_edge(va(j), n)];
                if hw[0].vertex != hv[0].vertex {
                    continue;
                }
                let all = [hw[0], hw[1], hv[0], hv[1]];
                let distinct = (0..4).all(|a| (a + 1..4).all(|b| all[a] != all[b]));
                if distinct && separates(hw, hv) {
                    out.push(Link {
                        i: i as usize,
                        j: j as usize,
                        run: 0,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Do the half-edge pairs `p` and `q` interleave in the cyclic order?
fn separates(p: [HalfEdge; 2], q: [HalfEdge; 2]) -> bool {
    let inside = |h: HalfEdge| ccw_before(p[0], h, p[1]);
    inside(q[0]) != inside(q[1])
}

fn inverse_letters(w: &CyclicWalk) -> Vec<Letter> {
    w.letters.iter().rev().map(|l| l.inv()).collect()
}

pub fn intersections_general(a: &CyclicWalk, b: &CyclicWalk) -> Result<IntersectionReport> {
    if a.n != b.n {
        return Err(Error::Invalid("walks have different n".into()));
    }
    if walks_equivalent(a, b) {
        return Err(Error::HomotopicInputs);
    }
    let n = a.n;
    let mut wit = Vec::new();
    for l in linked_pairs(&a.letters, &b.letters, n, true)? {
        wit.push(Witness::Linked {
            i: l.i,
            j: l.j,
            reversed: false,
            run: l.run,
        });
    }
    for l in linked_pairs(&a.letters, &inverse_letters(b), n, false)? {
        wit.push(Witness::Linked {
            i: l.i,
            j: l.j,
            reversed: true,
            run: l.run,
        });
    }
    Ok(IntersectionReport::from_witnesses(wit))
}

/// Self-intersections of a primitive reduced walk.
pub fn self_intersections_general(a: &CyclicWalk) -> Result<IntersectionReport> {
    if !is_primitive(a) {
        return Err(Error::Invalid("walk is not primitive".into()));
    }
    let n = a.n;
    let len = a.len();
    let mut wit = Vec::new();
    for l in linked_pairs(&a.letters, &a.letters, n, true)? {
        if l.i < l.j {
            wit.push(Witness::Linked {
                i: l.i,
                j: l.j,
                reversed: false,
                run: l.run,
            });
        }
    }
    // position j of the inverse word is the passage of a[len-1-j], so each
    // reversed run is found twice, once from each strand
    let inv = inverse_letters(a);
    let rev = linked_pairs(&a.letters, &inv, n, false)?;
    for l in &rev {
        let twin = ((2 * len - l.j - l.run) % len, (2 * len - l.i - l.run) % len);
        if (l.i, l.j) < twin {
            wit.push(Witness::Linked {
                i: l.i,
                j: l.j,
                reversed: true,
                run: l.run,
            });
        }
    }
    Ok(IntersectionReport::from_witnesses(wit))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SphericalClass {
    Spherical,
    NotSimple,
    Separating,
    NotPrimitive,
}

pub fn classify_spherical(w: &CyclicWalk) -> SphericalClass {
    if !is_primitive(w) {
        return SphericalClass::NotPrimitive;
    }
    match self_intersections_general(w) {
        Ok(r) if r.count == 0 => {}
        _ => return SphericalClass::NotSimple,
    }
    if is_non_separating(w, true).unwrap_or(false) {
        SphericalClass::Spherical
    } else {
        SphericalClass::Separating
    }
}

/// |r_a d̄_b − r_b d̄_a|, the intersection number on the closed torus.
pub fn homological_bound(a: &CyclicWalk, b: &CyclicWalk) -> i64 {
    homology_class(a).pairing(&homology_class(b)).abs()
}
