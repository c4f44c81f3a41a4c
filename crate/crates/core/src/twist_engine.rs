//! Dehn twists on loops, at the level of cyclic sequences and of walks, and
//! the normalization of spherical loops to γ_Pic.
//!
//! The walk-level twist works in a chord model. Around every vertex of Γ take
//! a small disk; each passage of a strand through the vertex is a chord. On
//! each edge the strands of δ run side by side in a fixed lateral order, read
//! off from where they diverge, and a strand of w is slotted in between them
//! the same way. w then meets δ only inside the disks, where the crossings
//! are chord crossings, and the twist inserts a copy of δ^{±1} at each one.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intersection_calculus::self_intersections_general;
use crate::ribbon::{ccw_dist, in_half_edge, out_half_edge, HalfEdge};
use crate::surface_walks::{
    homology_class, is_cvb, is_primitive, reduce_walk, walks_equivalent, CyclicWalk, HomologyClass,
    Letter, LetterKind, LoopMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Pic,
    Vert(usize),
}

impl Generator {
    pub fn walk(self, n: usize) -> CyclicWalk {
        match self {
            Generator::Pic => CyclicWalk::pic(n),
            Generator::Vert(i) => CyclicWalk::kappa(n, i),
        }
    }
}

/// Twists applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwistWord(pub Vec<(Generator, i64)>);

impl TwistWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a step, merging with the previous one when the generator repeats.
    pub fn push(&mut self, g: Generator, k: i64) {
        if k == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == g {
                last.1 += k;
                if last.1 == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((g, k));
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for &(g, _) in &self.0 {
            if let Generator::Vert(i) = g {
                if i >= n {
                    return Err(Error::Invalid(format!(
                        "vertical generator {i} out of range for n = {n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Twisting along κ_i adds l to every entry of column i.
pub fn twist_vertical(m: &LoopMatrix, i: usize, l: i64) -> LoopMatrix {
    let mut out = m.clone();
    for (x, e) in out.entries.iter_mut().enumerate() {
        if x % m.n == i % m.n {
            *e += l;
        }
    }
    out
}

/// x + ⟨x, δ⟩ δ.
pub fn twisted_class(x: &HomologyClass, delta: &HomologyClass, power: i64) -> HomologyClass {
    let k = power * x.pairing(delta);
    let md = x
        .multidegree
        .iter()
        .zip(&delta.multidegree)
        .map(|(a, b)| a + k * b)
        .collect();
    HomologyClass::new(x.rank + k * delta.rank, md)
}

/// A strand running along an edge in its positive direction: `word[k]` is
/// the positive letter of the edge.
#[derive(Clone, Copy)]
struct Strand<'a> {
    word: &'a [Letter],
    k: usize,
}

impl Strand<'_> {
    fn at(&self, off: i64) -> Letter {
        let len = self.word.len() as i64;
        self.word[(self.k as i64 + off).rem_euclid(len) as usize]
    }
}

fn oriented<'a>(fwd: &'a [Letter], inv: &'a [Letter], j: usize) -> Strand<'a> {
    if fwd[j].sign > 0 {
        Strand { word: fwd, k: j }
    } else {
        Strand {
            word: inv,
            k: fwd.len() - 1 - j,
        }
    }
}

/// Is `s` to the right of `t` on their common edge? Decided where the two
/// first part going forward; `None` if they never do.
fn right_of(s: Strand, t: Strand, n: usize) -> Option<bool> {
    let cap = (s.word.len() + t.word.len()) as i64;
    for step in 1..=cap {
        let (ls, lt) = (s.at(step), t.at(step));
        if ls != lt {
            let h = in_half_edge(s.at(step - 1), n);
            return Some(ccw_dist(h, out_half_edge(ls, n)) < ccw_dist(h, out_half_edge(lt, n)));
        }
    }
    None
}

fn edge_key(l: Letter) -> (LetterKind, usize) {
    (l.kind, l.col)
}

fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// How δ's strands sit on each edge.
struct Layout {
    /// lateral rank from the right, per letter index of δ
    rank: Vec<usize>,
    /// number of δ strands per edge
    count: HashMap<(LetterKind, usize), usize>,
    /// δ strands per edge, right to left
    order: HashMap<(LetterKind, usize), Vec<usize>>,
    modulus: i64,
}

fn layout(d: &[Letter], dinv: &[Letter], n: usize) -> Result<Layout> {
    let mut order: HashMap<(LetterKind, usize), Vec<usize>> = HashMap::new();
    for (j, &l) in d.iter().enumerate() {
        order.entry(edge_key(l)).or_default().push(j);
    }
    let mut rank = vec![0; d.len()];
    for js in order.values_mut() {
        let mut err = false;
        js.sort_by(|&a, &b| {
            if a == b {
                return std::cmp::Ordering::Equal;
            }
            match right_of(oriented(d, dinv, a), oriented(d, dinv, b), n) {
                Some(true) => std::cmp::Ordering::Less,
                Some(false) => std::cmp::Ordering::Greater,
                None => {
                    err = true;
                    std::cmp::Ordering::Equal
                }
            }
        });
        if err {
            return Err(Error::NotSimpleTwistCurve);
        }
        for (rk, &j) in js.iter().enumerate() {
            rank[j] = rk;
        }
    }
    let count: HashMap<_, _> = order.iter().map(|(k, v)| (*k, v.len())).collect();
    let maxc = count.values().copied().max().unwrap_or(0) as i64;
    Ok(Layout {
        rank,
        count,
        order,
        modulus: 2 * maxc + 2,
    })
}

impl Layout {
    /// Point on the boundary of the disk at `h`, for a strand at doubled
    /// lateral coordinate `x` (from the right, along the edge's direction).
    fn key(&self, h: HalfEdge, l: Letter, x: i64) -> i64 {
        let c = *self.count.get(&edge_key(l)).unwrap_or(&0) as i64;
        let coord = if h.pos < 2 { x } else { 2 * c - x };
        h.pos as i64 * self.modulus + coord
    }

    fn period(&self) -> i64 {
        4 * self.modulus
    }
}

/// One crossing of w with δ: before w[i], against the passage of δ that
/// continues with δ[j]. `left_to_right` refers to δ's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub i: usize,
    pub j: usize,
    pub left_to_right: bool,
}

/// All crossings of w with the simple loop δ, in order along w.
/// Errors with `HomotopicInputs` if w runs along δ forever.
pub fn crossings(w: &CyclicWalk, delta: &CyclicWalk) -> Result<Vec<Crossing>> {
    let n = w.n;
    let d = &delta.letters;
    let dinv = inverse_word(d);
    let lay = layout(d, &dinv, n)?;
    let wl = &w.letters;
    let (lw, ld) = (wl.len(), d.len());

    // lateral coordinate of each letter of w among δ's strands; compared in
    // w's direction of travel so that a whole common run agrees
    let mut wx = vec![0i64; lw];
    for (t, &l) in wl.iter().enumerate() {
        let s = Strand { word: wl, k: t };
        let mut a = 0;
        for &j in lay
            .order
            .get(&edge_key(l))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
        {
            let ds = if d[j] == l {
                Strand { word: d, k: j }
            } else {
                Strand {
                    word: &dinv,
                    k: ld - 1 - j,
                }
            };
            match right_of(ds, s, n) {
                Some(b) if b == (l.sign > 0) => a += 1,
                Some(_) => {}
                None => return Err(Error::HomotopicInputs),
            }
        }
        wx[t] = 2 * a;
    }

    // δ passages grouped by vertex: (j, in key, out key)
    let mut passages: HashMap<usize, Vec<(usize, i64, i64)>> = HashMap::new();
    for j in 0..ld {
        let prev = d[(j + ld - 1) % ld];
        let hin = in_half_edge(prev, n);
        let hout = out_half_edge(d[j], n);
        let kin = lay.key(hin, prev, 2 * lay.rank[(j + ld - 1) % ld] as i64 + 1);
        let kout = lay.key(hout, d[j], 2 * lay.rank[j] as i64 + 1);
        passages
            .entry(hout.vertex)
            .or_default()
            .push((j, kin, kout));
    }

    let period = lay.period();
    let arc =
        |x: i64, from: i64, to: i64| (x - from).rem_euclid(period) < (to - from).rem_euclid(period);
    let mut out = Vec::new();
    for i in 0..lw {
        let prev = wl[(i + lw - 1) % lw];
        let hin = in_half_edge(prev, n);
        let hout = out_half_edge(wl[i], n);
        let p = lay.key(hin, prev, wx[(i + lw - 1) % lw]);
        let q = lay.key(hout, wl[i], wx[i]);
        let mut here: Vec<(i64, Crossing)> = Vec::new();
        for &(j, a, b) in passages
            .get(&hout.vertex)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
        {
            let (ia, ib) = (arc(a, p, q), arc(b, p, q));
            if ia == ib {
                continue;
            }
            let near = if ia { a } else { b };
            // the arc from δ's exit round to its entry lies on δ's left
            let left_to_right = arc(p, b, a);
            here.push((
                (near - p).rem_euclid(period),
                Crossing {
                    i,
                    j,
                    left_to_right,
                },
            ));
        }
        here.sort_by_key(|c| c.0);
        out.extend(here.into_iter().map(|c| c.1));
    }
    Ok(out)
}

fn check_twist_curve(delta: &CyclicWalk) -> Result<()> {
    if delta.is_empty() || !is_primitive(delta) {
        return Err(Error::NotSimpleTwistCurve);
    }
    match self_intersections_general(delta) {
        Ok(r) if r.count == 0 => Ok(()),
        _ => Err(Error::NotSimpleTwistCurve),
    }
}

/// Twist of w along the simple loop δ, power ±1.
pub fn twist_general(w: &CyclicWalk, delta: &CyclicWalk, power: i8) -> Result<CyclicWalk> {
    if power != 1 && power != -1 {
        return Err(Error::Invalid("twist power must be 1 or -1".into()));
    }
    if w.n != delta.n {
        return Err(Error::Invalid("walks have different n".into()));
    }
    check_twist_curve(delta)?;
    twist_unchecked(w, delta, power)
}

fn twist_unchecked(w: &CyclicWalk, delta: &CyclicWalk, power: i8) -> Result<CyclicWalk> {
    if walks_equivalent(w, delta) || walks_equivalent(w, &delta.inverse()) {
        return Ok(w.clone());
    }
    let cs = match crossings(w, delta) {
        Ok(cs) => cs,
        // w is a power of δ
        Err(Error::HomotopicInputs) => return Ok(w.clone()),
        Err(e) => return Err(e),
    };
    if cs.is_empty() {
        return Ok(w.clone());
    }
    let d = &delta.letters;
    let ld = d.len();
    let mut letters = Vec::with_capacity(w.len() + cs.len() * ld);
    let mut next = cs.iter().peekable();
    for (i, &l) in w.letters.iter().enumerate() {
        while let Some(c) = next.next_if(|c| c.i == i) {
            // turning onto δ: forwards when crossing from its left
            if c.left_to_right == (power > 0) {
                letters.extend((0..ld).map(|t| d[(c.j + t) % ld]));
            } else {
                letters.extend((1..=ld).map(|t| d[(c.j + ld - t) % ld].inv()));
            }
        }
        letters.push(l);
    }
    reduce_walk(&letters, w.n)
}

/// T_δ^k by iteration.
pub fn twist_power(w: &CyclicWalk, delta: &CyclicWalk, k: i64) -> Result<CyclicWalk> {
    check_twist_curve(delta)?;
    let step = if k >= 0 { 1 } else { -1 };
    let mut cur = w.clone();
    for _ in 0..k.unsigned_abs() {
        cur = twist_unchecked(&cur, delta, step)?;
    }
    Ok(cur)
}

pub fn apply_word(w: &CyclicWalk, word: &TwistWord) -> Result<CyclicWalk> {
    word.validate(w.n)?;
    let mut cur = w.clone();
    for &(g, k) in &word.0 {
        cur = twist_power(&cur, &g.walk(w.n), k)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    /// The word acts on w^{-1} instead of w (the loop is unoriented).
    pub reversed: bool,
    pub word: TwistWord,
}

const GREEDY_STEPS: usize = 64;
const EUCLID_STEPS: usize = 256;

struct Normalizer {
    n: usize,
    cur: CyclicWalk,
    reversed: bool,
    word: TwistWord,
}

impl Normalizer {
    fn twist(&mut self, g: Generator, k: i64) -> Result<()> {
        self.cur = twist_power(&self.cur, &g.walk(self.n), k)?;
        self.word.push(g, k);
        Ok(())
    }

    fn flip(&mut self) {
        self.cur = self.cur.inverse();
        self.reversed = !self.reversed;
    }

    /// Orient so that the rank is positive, or d̄ > 0 at rank zero.
    fn orient(&mut self) {
        let h = homology_class(&self.cur);
        if h.rank < 0 || (h.rank == 0 && h.total_degree < 0) {
            self.flip();
        }
    }
}

/// Number of ε^{-1} letters, the distance from CVb form used to steer
/// inputs that are not already bundle loops.
fn non_cvb_weight(w: &CyclicWalk) -> usize {
    let back = w
        .letters
        .iter()
        .filter(|l| l.kind == LetterKind::Eps && l.sign < 0)
        .count();
    let fwd = w
        .letters
        .iter()
        .filter(|l| l.kind == LetterKind::Eps && l.sign > 0)
        .count();
    back.min(fwd)
}

/// A twist word carrying the spherical loop w (suitably oriented) to γ_Pic.
///
/// Bundle loops (CVb up to orientation) are handled by Euclid's algorithm on
/// the rank: vertical twists put every column degree into [0, r) or into
/// (−r, 0], and a Picard twist whose power has the sign of those degrees takes
/// a bundle loop to a bundle loop. With at most three nonzero columns one of
/// the two choices has |d̄| < 2r, so the rank drops. Other inputs are first
/// steered towards CVb form greedily, which may fail.
pub fn normalize_to_pic(w: &CyclicWalk) -> Result<Normalization> {
    use crate::intersection_calculus::{classify_spherical, SphericalClass};
    match classify_spherical(w) {
        SphericalClass::Spherical => {}
        other => return Err(Error::NotSpherical(format!("{other:?}"))),
    }
    let n = w.n;
    let mut st = Normalizer {
        n,
        cur: w.clone(),
        reversed: false,
        word: TwistWord::default(),
    };
    if non_cvb_weight(&st.cur) > 0 {
        let mut moves = vec![(Generator::Pic, 1), (Generator::Pic, -1)];
        for i in 0..n {
            moves.push((Generator::Vert(i), 1));
            moves.push((Generator::Vert(i), -1));
        }
        for _ in 0..GREEDY_STEPS {
            if non_cvb_weight(&st.cur) == 0 {
                break;
            }
            let mut best: Option<((usize, usize), Generator, i64)> = None;
            for &(g, k) in &moves {
                let t = twist_power(&st.cur, &g.walk(n), k)?;
                let cost = (non_cvb_weight(&t), t.len());
                if best.as_ref().is_none_or(|b| cost < b.0) {
                    best = Some((cost, g, k));
                }
            }
            let (_, g, k) = best.expect("at least one move");
            st.twist(g, k)?;
        }
        if non_cvb_weight(&st.cur) > 0 {
            return Err(Error::Invalid(format!(
                "could not bring {w} to bundle form"
            )));
        }
    }
    if !is_cvb(&st.cur) {
        st.flip();
    }
    st.orient();

    let mut done = false;
    for _ in 0..EUCLID_STEPS {
        let h = homology_class(&st.cur);
        let r = h.rank;
        if r == 1 {
            done = true;
            for (i, &di) in h.multidegree.iter().enumerate() {
                st.twist(Generator::Vert(i), -di)?;
            }
            break;
        }
        if r == 0 {
            // a vertical loop; T_Pic^{-1} sends (0, d) to (d, d) with d = 1
            st.twist(Generator::Pic, -1)?;
            st.orient();
            continue;
        }
        let res: Vec<i64> = h.multidegree.iter().map(|d| d.rem_euclid(r)).collect();
        let s: i64 = res.iter().sum();
        let t: i64 = res.iter().filter(|&&x| x > 0).map(|x| r - x).sum();
        let (p, sigma) = if s <= t { (1, s) } else { (-1, t) };
        if sigma > 2 * r {
            return Err(Error::Invalid(format!(
                "no rank-reducing Picard twist from rank {r} (column residues {res:?})"
            )));
        }
        for (i, (&di, &ri)) in h.multidegree.iter().zip(&res).enumerate() {
            let target = if p > 0 || ri == 0 { ri } else { ri - r };
            st.twist(Generator::Vert(i), (target - di) / r)?;
        }
        let k = if sigma < r { (r - 1) / sigma } else { 1 };
        st.twist(Generator::Pic, p * k)?;
        st.orient();
    }
    if !done {
        return Err(Error::Invalid("normalization did not converge".into()));
    }
    if !walks_equivalent(&st.cur, &CyclicWalk::pic(n)) {
        return Err(Error::Invalid(format!(
            "normalization ended at {}, not at the Picard loop",
            st.cur
        )));
    }
    Ok(Normalization {
        reversed: st.reversed,
        word: st.word,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle_sequences::canonical_sequence;
    use crate::intersection_calculus::intersections_general;
    use crate::surface_walks::{matrix_from_walk, walk_from_matrix};

    fn lm(n: usize, r: usize, e: &[i64]) -> LoopMatrix {
        LoopMatrix::new(n, r, e.to_vec()).unwrap()
    }

    #[test]
    fn vertical_examples() {
        let m = canonical_sequence(2, &[2, -1]).unwrap();
        let t = twist_vertical(&m, 1, 1);
        assert_eq!(t.entries, vec![1, 0, 1, 1]);
        assert!(crate::surface_walks::matrices_equivalent(
            &t,
            &canonical_sequence(2, &[2, 1]).unwrap()
        ));
        assert_eq!(twist_vertical(&m, 0, 0), m);
        assert_eq!(twist_vertical(&twist_vertical(&m, 1, 3), 1, -3), m);
    }

    #[test]
    fn crossings_match_intersection_count() {
        let pairs = [
            (lm(2, 2, &[1, -1, 1, 0]), CyclicWalk::pic(2)),
            (lm(2, 2, &[1, -1, 1, 0]), CyclicWalk::kappa(2, 1)),
            (lm(1, 3, &[0, 1, 1]), walk_from_matrix(&lm(1, 2, &[0, 1]))),
            (
                lm(2, 3, &[0, 1, 1, 0, 1, 1]),
                walk_from_matrix(&lm(2, 2, &[1, 0, 0, 0])),
            ),
        ];
        for (m, d) in pairs {
            let w = walk_from_matrix(&m);
            let cs = crossings(&w, &d).unwrap();
            assert_eq!(
                cs.len(),
                intersections_general(&w, &d).unwrap().count,
                "{m:?} {d}"
            );
        }
    }

    #[test]
    fn kappa_twist_is_vertical() {
        let m = lm(2, 2, &[1, -1, 1, 0]);
        for i in 0..2 {
            for l in [-2, -1, 1, 2] {
                let got = twist_power(&walk_from_matrix(&m), &CyclicWalk::kappa(2, i), l).unwrap();
                assert!(
                    walks_equivalent(&got, &walk_from_matrix(&twist_vertical(&m, i, l))),
                    "i {i} l {l} got {got}"
                );
            }
        }
    }

    #[test]
    fn pic_twist_homology() {
        let w = walk_from_matrix(&canonical_sequence(2, &[2, -1]).unwrap());
        let t = twist_general(&w, &CyclicWalk::pic(2), 1).unwrap();
        let h = homology_class(&t);
        assert_eq!((h.rank, h.total_degree), (1, 1));
        assert_eq!(
            h,
            twisted_class(&homology_class(&w), &homology_class(&CyclicWalk::pic(2)), 1)
        );
        assert!(matrix_from_walk(&t).is_ok());
    }

    #[test]
    fn disjoint_and_self() {
        let k0 = CyclicWalk::kappa(2, 0);
        let k1 = CyclicWalk::kappa(2, 1);
        assert_eq!(twist_general(&k0, &k1, 1).unwrap(), k0);
        assert_eq!(twist_general(&k0, &k0, -1).unwrap(), k0);
        let p = CyclicWalk::puncture_loop(2, 0);
        assert_eq!(twist_general(&p, &CyclicWalk::pic(2), 1).unwrap(), p);
        let bad = walk_from_matrix(&lm(1, 2, &[0, 2]));
        assert_eq!(
            twist_general(&k0, &walk_from_matrix(&lm(2, 1, &[0, 0])).power(2), 1),
            Err(Error::NotSimpleTwistCurve)
        );
        assert!(twist_general(&k0, &bad, 1).is_err());
    }

    #[test]
    fn normalize_examples() {
        let pic = CyclicWalk::pic(2);
        assert!(normalize_to_pic(&pic).unwrap().word.is_empty());
        let w = walk_from_matrix(&canonical_sequence(2, &[2, -1]).unwrap());
        let nm = normalize_to_pic(&w).unwrap();
        assert!(nm.word.len() <= 6);
        assert!(walks_equivalent(&apply_word(&w, &nm.word).unwrap(), &pic));
        let k = CyclicWalk::kappa(2, 0);
        let nm = normalize_to_pic(&k).unwrap();
        assert_eq!(nm.word.0.first(), Some(&(Generator::Pic, -1)));
        assert!(walks_equivalent(&apply_word(&k, &nm.word).unwrap(), &pic));
        assert!(matches!(
            normalize_to_pic(&CyclicWalk::puncture_loop(2, 1)),
            Err(Error::NotSpherical(_))
        ));
    }

    #[test]
    fn word_serializes_as_list() {
        let mut w = TwistWord::default();
        w.push(Generator::Vert(1), 2);
        w.push(Generator::Vert(1), -1);
        w.push(Generator::Pic, -1);
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"[[{"vert":1},1],["pic",-1]]"#
        );
    }
}
