//! Bounded complexes of indecomposable projective Λ_n-modules and their
//! graded morphism spaces in the homotopy category.
//!
//! A component P_x → P_y is a linear combination of paths from y to x. The
//! composite g∘f is labelled by the path of g followed by the path of f.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{determinant, kernel, normalize, Echelon, SparseVec};
use crate::path_algebra::{vertex, ArrowKind, GentleAlgebra, VertexKind};
use crate::surface_walks::LoopMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub vertex: usize,
    pub degree: i64,
}

/// One term `coeff · path` of the component from summand `src` to `tgt`.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry<F> {
    pub src: usize,
    pub tgt: usize,
    pub path: usize,
    pub coeff: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveComplex<F> {
    pub n: usize,
    pub summands: Vec<Summand>,
    pub differential: Vec<Entry<F>>,
}

/// A map X → Y raising degree by `shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F> {
    pub shift: i64,
    pub components: Vec<Entry<F>>,
}

/// Collect terms by (src, tgt, path), dropping zeros.
fn collect<F: Field>(terms: impl IntoIterator<Item = Entry<F>>) -> Vec<Entry<F>> {
    let mut acc: BTreeMap<(usize, usize, usize), F> = BTreeMap::new();
    for e in terms {
        let slot = acc.entry((e.src, e.tgt, e.path)).or_insert_with(F::zero);
        *slot = slot.clone() + e.coeff;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((src, tgt, path), coeff)| Entry {
            src,
            tgt,
            path,
            coeff,
        })
        .collect()
}

/// Composite of `g` after `f` as term lists.
fn compose<F: Field>(alg: &GentleAlgebra, g: &[Entry<F>], f: &[Entry<F>]) -> Vec<Entry<F>> {
    let mut by_src: HashMap<usize, Vec<&Entry<F>>> = HashMap::new();
    for e in g {
        by_src.entry(e.src).or_default().push(e);
    }
    let mut out = Vec::new();
    for ef in f {
        if let Some(gs) = by_src.get(&ef.tgt) {
            for eg in gs {
                if let Some(p) = alg.then(eg.path, ef.path) {
                    out.push(Entry {
                        src: ef.src,
                        tgt: eg.tgt,
                        path: p,
                        coeff: eg.coeff.clone() * ef.coeff.clone(),
                    });
                }
            }
        }
    }
    collect(out)
}

impl<F: Field> ProjectiveComplex<F> {
    pub fn zero(n: usize) -> Self {
        ProjectiveComplex {
            n,
            summands: vec![],
            differential: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.summands.iter().map(|s| s.degree).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.summands.iter().map(|s| s.degree).max()
    }

    /// Entries must go between summands on consecutive degrees along paths
    /// between the right vertices.
    pub fn is_well_formed(&self, alg: &GentleAlgebra) -> bool {
        self.differential.iter().all(|e| {
            let (s, t) = (self.summands[e.src], self.summands[e.tgt]);
            let p = &alg.paths[e.path];
            t.degree == s.degree + 1 && p.src == t.vertex && p.tgt == s.vertex
        })
    }

    pub fn d_squared_is_zero(&self, alg: &GentleAlgebra) -> bool {
        compose(alg, &self.differential, &self.differential).is_empty()
    }

    pub fn is_minimal(&self, alg: &GentleAlgebra) -> bool {
        collect(self.differential.clone())
            .iter()
            .all(|e| !alg.is_idempotent(e.path))
    }

    pub fn shifted(&self, k: i64) -> Self {
        // X[k]: degrees move down by k, differential picks up (-1)^k
        let sign = if k.rem_euclid(2) == 0 {
            F::one()
        } else {
            -F::one()
        };
        ProjectiveComplex {
            n: self.n,
            summands: self
                .summands
                .iter()
                .map(|s| Summand {
                    degree: s.degree - k,
                    ..*s
                })
                .collect(),
            differential: self
                .differential
                .iter()
                .map(|e| Entry {
                    coeff: sign.clone() * e.coeff.clone(),
                    ..e.clone()
                })
                .collect(),
        }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let off = self.len();
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&o.summands);
        let mut differential = self.differential.clone();
        differential.extend(o.differential.iter().map(|e| Entry {
            src: e.src + off,
            tgt: e.tgt + off,
            ..e.clone()
        }));
        ProjectiveComplex {
            n: self.n,
            summands,
            differential,
        }
    }

    /// Multiset of (vertex, degree).
    pub fn signature(&self) -> Vec<Summand> {
        let mut s = self.summands.clone();
        s.sort();
        s
    }
}

/// The band complex of a loop matrix with one-dimensional local system λ.
///
/// Piece x (column i = x mod n) runs from the top summand T_x on top_{i-1} to
/// T_{x+1} on top_i. For 𝕞_x = m ≥ 0 it is
///   T_x →b M_0 →a B_1 ←c M_1 →a … →a B_m ←c M_m ←d T_{x+1}
/// with tops in degree −1, middles in 0, bottoms in 1. For m < 0 it is
///   T_x →bc B_1 ←a M_1 →c B_2 ←a … M_{|m|-1} →c B_{|m|} ←da T_{x+1}
/// with tops and middles in −1, bottoms in 0. In both shapes the labels a_i
/// (and likewise c_i) occur |m| times once composites are counted. λ
/// multiplies the right end of piece 0.
pub fn build_band_complex<F: Field>(m: &LoopMatrix, lambda: F) -> ProjectiveComplex<F> {
    let n = m.n;
    let alg = GentleAlgebra::new(n);
    let len = m.len();
    let mut summands: Vec<Summand> = (0..len)
        .map(|x| Summand {
            vertex: vertex(VertexKind::Top, (x + n - 1) % n),
            degree: -1,
        })
        .collect();
    let mut entries = Vec::new();
    let add = |summands: &mut Vec<Summand>, v: VertexKind, col: usize, deg: i64| {
        summands.push(Summand {
            vertex: vertex(v, col),
            degree: deg,
        });
        summands.len() - 1
    };
    for x in 0..len {
        let i = x % n;
        let (left, right) = (x, (x + 1) % len);
        let scale = if x == 0 { lambda.clone() } else { F::one() };
        let e = |src: usize, tgt: usize, path: usize, coeff: F| Entry {
            src,
            tgt,
            path,
            coeff,
        };
        let mx = m.entries[x];
        if mx >= 0 {
            let mut mid = add(&mut summands, VertexKind::Mid, i, 0);
            entries.push(e(left, mid, alg.arrow(ArrowKind::B, i), F::one()));
            for _ in 0..mx {
                let bot = add(&mut summands, VertexKind::Bot, i, 1);
                entries.push(e(mid, bot, alg.arrow(ArrowKind::A, i), F::one()));
                mid = add(&mut summands, VertexKind::Mid, i, 0);
                entries.push(e(mid, bot, alg.arrow(ArrowKind::C, i), F::one()));
            }
            entries.push(e(right, mid, alg.arrow(ArrowKind::D, i), scale));
        } else {
            let mut bot = add(&mut summands, VertexKind::Bot, i, 0);
            entries.push(e(
                left,
                bot,
                alg.path2(ArrowKind::C, ArrowKind::B, i),
                F::one(),
            ));
            for _ in 0..(-mx - 1) {
                let mid = add(&mut summands, VertexKind::Mid, i, -1);
                entries.push(e(mid, bot, alg.arrow(ArrowKind::A, i), F::one()));
                bot = add(&mut summands, VertexKind::Bot, i, 0);
                entries.push(e(mid, bot, alg.arrow(ArrowKind::C, i), F::one()));
            }
            entries.push(e(
                right,
                bot,
                alg.path2(ArrowKind::A, ArrowKind::D, i),
                scale,
            ));
        }
    }
    ProjectiveComplex {
        n,
        summands,
        differential: collect(entries),
    }
}

pub fn build_picard<F: Field>(n: usize, lambda: F) -> ProjectiveComplex<F> {
    build_band_complex(&LoopMatrix::new(n, 1, vec![0; n]).unwrap(), lambda)
}

/// 𝕜(i, λ): P(mid_i) in degree −1 mapped to P(bot_i) in degree 0 by a_i + λc_i.
pub fn build_skyscraper<F: Field>(n: usize, i: usize, lambda: F) -> ProjectiveComplex<F> {
    let alg = GentleAlgebra::new(n);
    let i = i % n;
    ProjectiveComplex {
        n,
        summands: vec![
            Summand {
                vertex: vertex(VertexKind::Mid, i),
                degree: -1,
            },
            Summand {
                vertex: vertex(VertexKind::Bot, i),
                degree: 0,
            },
        ],
        differential: vec![
            Entry {
                src: 0,
                tgt: 1,
                path: alg.arrow(ArrowKind::A, i),
                coeff: F::one(),
            },
            Entry {
                src: 0,
                tgt: 1,
                path: alg.arrow(ArrowKind::C, i),
                coeff: lambda,
            },
        ],
    }
}

/// Basis of the space of degree-`s` maps X → Y with no commutation imposed.
struct MapSpace {
    vars: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

fn map_space<F>(
    alg: &GentleAlgebra,
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
    s: i64,
) -> MapSpace {
    let mut vars = Vec::new();
    for (t, xs) in x.summands.iter().enumerate() {
        for (u, ys) in y.summands.iter().enumerate() {
            if ys.degree != xs.degree + s {
                continue;
            }
            for &p in alg.paths_between(ys.vertex, xs.vertex) {
                vars.push((t, u, p));
            }
        }
    }
    let index = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    MapSpace { vars, index }
}

/// Columns of f ↦ d_Y f − (−1)^s f d_X from degree-s maps to degree-(s+1) maps.
fn hom_differential<F: Field>(
    alg: &GentleAlgebra,
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
    s: i64,
    from: &MapSpace,
    to: &MapSpace,
) -> Vec<SparseVec<F>> {
    let mut dy_by_src: HashMap<usize, Vec<&Entry<F>>> = HashMap::new();
    for e in &y.differential {
        dy_by_src.entry(e.src).or_default().push(e);
    }
    let mut dx_by_tgt: HashMap<usize, Vec<&Entry<F>>> = HashMap::new();
    for e in &x.differential {
        dx_by_tgt.entry(e.tgt).or_default().push(e);
    }
    let sign = if s.rem_euclid(2) == 0 {
        -F::one()
    } else {
        F::one()
    };
    from.vars
        .iter()
        .map(|&(t, u, p)| {
            let mut col = Vec::new();
            for e in dy_by_src.get(&u).into_iter().flatten() {
                if let Some(q) = alg.then(e.path, p) {
                    col.push((to.index[&(t, e.tgt, q)], e.coeff.clone()));
                }
            }
            for e in dx_by_tgt.get(&t).into_iter().flatten() {
                if let Some(q) = alg.then(p, e.path) {
                    col.push((to.index[&(e.src, u, q)], sign.clone() * e.coeff.clone()));
                }
            }
            normalize(col)
        })
        .collect()
}

fn check_same_n<F>(x: &ProjectiveComplex<F>, y: &ProjectiveComplex<F>) {
    assert_eq!(x.n, y.n, "complexes over different algebras");
}

/// dim Hom_K(X, Y[s]).
pub fn hom_dim<F: Field>(x: &ProjectiveComplex<F>, y: &ProjectiveComplex<F>, s: i64) -> usize {
    check_same_n(x, y);
    let alg = GentleAlgebra::new(x.n);
    hom_dim_with(&alg, x, y, s)
}

fn hom_dim_with<F: Field>(
    alg: &GentleAlgebra,
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
    s: i64,
) -> usize {
    let prev = map_space(alg, x, y, s - 1);
    let cur = map_space(alg, x, y, s);
    if cur.vars.is_empty() {
        return 0;
    }
    let next = map_space(alg, x, y, s + 1);
    let d_cur = hom_differential(alg, x, y, s, &cur, &next);
    let d_prev = hom_differential(alg, x, y, s - 1, &prev, &cur);
    let r_cur = crate::linalg::rank(d_cur);
    let r_prev = crate::linalg::rank(d_prev);
    cur.vars.len() - r_cur - r_prev
}

/// Shifts outside this window carry no components at all.
pub fn shift_window<F: Field>(
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
) -> Option<(i64, i64)> {
    Some((
        y.min_degree()? - x.max_degree()?,
        y.max_degree()? - x.min_degree()?,
    ))
}

/// Σ_s dim Hom_K(X, Y[s]).
pub fn hom_total<F: Field>(x: &ProjectiveComplex<F>, y: &ProjectiveComplex<F>) -> usize {
    hom_graded(x, y).iter().map(|(_, d)| d).sum()
}

/// Nonzero graded pieces (s, dim Hom(X, Y[s])).
pub fn hom_graded<F: Field>(
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
) -> Vec<(i64, usize)> {
    check_same_n(x, y);
    let Some((lo, hi)) = shift_window(x, y) else {
        return vec![];
    };
    let alg = GentleAlgebra::new(x.n);
    (lo..=hi)
        .map(|s| (s, hom_dim_with(&alg, x, y, s)))
        .filter(|&(_, d)| d > 0)
        .collect()
}

fn to_chain_map<F: Field>(space: &MapSpace, v: &SparseVec<F>, s: i64) -> ChainMap<F> {
    ChainMap {
        shift: s,
        components: v
            .iter()
            .map(|(k, c)| {
                let (t, u, p) = space.vars[*k];
                Entry {
                    src: t,
                    tgt: u,
                    path: p,
                    coeff: c.clone(),
                }
            })
            .collect(),
    }
}

/// All chain maps of degree s (a basis of the cycle space).
pub fn chain_map_basis<F: Field>(
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
    s: i64,
) -> Vec<ChainMap<F>> {
    check_same_n(x, y);
    let alg = GentleAlgebra::new(x.n);
    let cur = map_space(&alg, x, y, s);
    let next = map_space(&alg, x, y, s + 1);
    kernel(&hom_differential(&alg, x, y, s, &cur, &next))
        .iter()
        .map(|v| to_chain_map(&cur, v, s))
        .collect()
}

/// Chain maps of degree s representing a basis of Hom_K(X, Y[s]).
pub fn hom_basis<F: Field>(
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
    s: i64,
) -> Vec<ChainMap<F>> {
    check_same_n(x, y);
    let alg = GentleAlgebra::new(x.n);
    let prev = map_space(&alg, x, y, s - 1);
    let cur = map_space(&alg, x, y, s);
    let next = map_space(&alg, x, y, s + 1);
    let mut ech = Echelon::new();
    for c in hom_differential(&alg, x, y, s - 1, &prev, &cur) {
        let _ = ech.insert(c);
    }
    let mut out = Vec::new();
    for k in kernel(&hom_differential(&alg, x, y, s, &cur, &next)) {
        if ech.insert(k.clone()).is_ok() {
            out.push(to_chain_map(&cur, &k, s));
        }
    }
    out
}

pub fn is_chain_map<F: Field>(
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
    f: &ChainMap<F>,
) -> bool {
    let alg = GentleAlgebra::new(x.n);
    let shape_ok = f.components.iter().all(|e| {
        e.src < x.len()
            && e.tgt < y.len()
            && y.summands[e.tgt].degree == x.summands[e.src].degree + f.shift
            && alg.paths[e.path].src == y.summands[e.tgt].vertex
            && alg.paths[e.path].tgt == x.summands[e.src].vertex
    });
    if !shape_ok {
        return false;
    }
    let lhs = compose(&alg, &y.differential, &f.components);
    let sign = if f.shift.rem_euclid(2) == 0 {
        -F::one()
    } else {
        F::one()
    };
    let rhs = compose(&alg, &f.components, &x.differential);
    let total = lhs.into_iter().chain(rhs.into_iter().map(|e| Entry {
        coeff: sign.clone() * e.coeff,
        ..e
    }));
    collect(total).is_empty()
}

/// Strip contractible summands P → P by Gaussian elimination.
pub fn minimize<F: Field>(x: &ProjectiveComplex<F>) -> ProjectiveComplex<F> {
    let alg = GentleAlgebra::new(x.n);
    type Comp<F> = Vec<(usize, F)>;
    // (src, tgt) -> path combination
    let mut d: HashMap<(usize, usize), Comp<F>> = HashMap::new();
    for e in collect(x.differential.clone()) {
        d.entry((e.src, e.tgt)).or_default().push((e.path, e.coeff));
    }
    let mut alive = vec![true; x.len()];
    loop {
        let unit = d.iter().find_map(|(&(s, t), comb)| {
            comb.iter()
                .find(|(p, c)| alg.is_idempotent(*p) && !c.is_zero())
                .map(|(_, c)| (s, t, c.clone()))
        });
        let Some((s, t, u)) = unit else { break };
        let uinv = u.inv().unwrap();
        // d' = d − d(·, s) u^{-1} d(t, ·) restricted to the others
        let into_t: Vec<(usize, Comp<F>)> = d
            .iter()
            .filter(|((a, b), _)| *b == t && *a != s)
            .map(|((a, _), c)| (*a, c.clone()))
            .collect();
        let from_s: Vec<(usize, Comp<F>)> = d
            .iter()
            .filter(|((a, b), _)| *a == s && *b != t)
            .map(|((_, b), c)| (*b, c.clone()))
            .collect();
        for (a, cin) in &into_t {
            for (b, cout) in &from_s {
                let mut delta: Comp<F> = Vec::new();
                for (pg, cg) in cout {
                    for (pf, cf) in cin {
                        if let Some(p) = alg.then(*pg, *pf) {
                            delta.push((p, -(cg.clone() * uinv.clone() * cf.clone())));
                        }
                    }
                }
                if delta.is_empty() {
                    continue;
                }
                let slot = d.entry((*a, *b)).or_default();
                slot.extend(delta);
                let mut acc: BTreeMap<usize, F> = BTreeMap::new();
                for (p, c) in slot.drain(..) {
                    let e = acc.entry(p).or_insert_with(F::zero);
                    *e = e.clone() + c;
                }
                *slot = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
        }
        alive[s] = false;
        alive[t] = false;
        d.retain(|&(a, b), comb| a != s && a != t && b != s && b != t && !comb.is_empty());
    }
    let mut new_index = vec![usize::MAX; x.len()];
    let mut summands = Vec::new();
    for (k, s) in x.summands.iter().enumerate() {
        if alive[k] {
            new_index[k] = summands.len();
            summands.push(*s);
        }
    }
    let entries = d
        .into_iter()
        .flat_map(|((a, b), comb)| {
            let ni = &new_index;
            comb.into_iter().map(move |(p, c)| Entry {
                src: ni[a],
                tgt: ni[b],
                path: p,
                coeff: c,
            })
        })
        .collect::<Vec<_>>();
    ProjectiveComplex {
        n: x.n,
        summands,
        differential: collect(entries),
    }
}

/// Mapping cone of a chain map X → Y of degree s, minimized. For s ≠ 0 the
/// map is read as a degree-0 map X[−s] → Y.
pub fn cone<F: Field>(
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
    f: &ChainMap<F>,
) -> Result<ProjectiveComplex<F>> {
    Ok(minimize(&cone_with_inclusion(x, y, f)?.0))
}

/// The unminimized cone together with the inclusion Y → Cone(f).
pub fn cone_with_inclusion<F: Field>(
    x: &ProjectiveComplex<F>,
    y: &ProjectiveComplex<F>,
    f: &ChainMap<F>,
) -> Result<(ProjectiveComplex<F>, ChainMap<F>)> {
    if !is_chain_map(x, y, f) {
        return Err(Error::NotChainMap);
    }
    let xs = x.shifted(-f.shift);
    // Cone = X'[1] ⊕ Y with differential [−d_X', 0; f, d_Y]
    let x1 = xs.shifted(1);
    let off = x1.len();
    let mut summands = x1.summands.clone();
    summands.extend_from_slice(&y.summands);
    let mut d: Vec<Entry<F>> = x1.differential.clone();
    d.extend(y.differential.iter().map(|e| Entry {
        src: e.src + off,
        tgt: e.tgt + off,
        ..e.clone()
    }));
    d.extend(f.components.iter().map(|e| Entry {
        tgt: e.tgt + off,
        ..e.clone()
    }));
    let c = ProjectiveComplex {
        n: x.n,
        summands,
        differential: collect(d),
    };
    let alg = GentleAlgebra::new(x.n);
    let incl = ChainMap {
        shift: 0,
        components: y
            .summands
            .iter()
            .enumerate()
            .map(|(k, s)| Entry {
                src: k,
                tgt: k + off,
                path: alg.idempotent(s.vertex),
                coeff: F::one(),
            })
            .collect(),
    };
    Ok((c, incl))
}

/// Linear combination of chain maps of a common degree.
pub fn combine<F: Field>(maps: &[ChainMap<F>], coeffs: &[F]) -> ChainMap<F> {
    let shift = maps.first().map_or(0, |m| m.shift);
    let terms = maps.iter().zip(coeffs).flat_map(|(m, c)| {
        m.components.iter().map(move |e| Entry {
            coeff: c.clone() * e.coeff.clone(),
            ..e.clone()
        })
    });
    ChainMap {
        shift,
        components: collect(terms),
    }
}

/// Isomorphism test for minimal complexes. Between minimal complexes a chain
/// map is a homotopy equivalence iff its idempotent part is invertible on
/// each (vertex, degree) block, and null-homotopic maps have no idempotent
/// part. A random chain map is tested, a few times.
pub fn is_iso<F: Field>(x: &ProjectiveComplex<F>, y: &ProjectiveComplex<F>) -> Result<bool> {
    check_same_n(x, y);
    let alg = GentleAlgebra::new(x.n);
    if !x.is_minimal(&alg) || !y.is_minimal(&alg) {
        return Err(Error::NotMinimal);
    }
    if x.signature() != y.signature() {
        return Ok(false);
    }
    if x.is_empty() {
        return Ok(true);
    }
    let basis = chain_map_basis(x, y, 0);
    if basis.is_empty() {
        return Ok(false);
    }
    let mut blocks: BTreeMap<Summand, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (k, s) in x.summands.iter().enumerate() {
        blocks.entry(*s).or_default().0.push(k);
    }
    for (k, s) in y.summands.iter().enumerate() {
        blocks.entry(*s).or_default().1.push(k);
    }
    let char_bound = match F::characteristic() {
        0 => 1 << 20,
        p => p.min(1 << 30),
    } as i64;
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for _ in 0..4 {
        let coeffs: Vec<F> = basis
            .iter()
            .map(|_| F::from_i64(rng.gen_range(1..char_bound)))
            .collect();
        let mut unit: HashMap<(usize, usize), F> = HashMap::new();
        for (f, c) in basis.iter().zip(&coeffs) {
            for e in &f.components {
                if alg.is_idempotent(e.path) {
                    let slot = unit.entry((e.src, e.tgt)).or_insert_with(F::zero);
                    *slot = slot.clone() + c.clone() * e.coeff.clone();
                }
            }
        }
        let ok = blocks.values().all(|(xs, ys)| {
            let m: Vec<Vec<F>> = ys
                .iter()
                .map(|&u| {
                    xs.iter()
                        .map(|&t| unit.get(&(t, u)).cloned().unwrap_or_else(F::zero))
                        .collect()
                })
                .collect();
            !determinant(m).is_zero()
        });
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}
