//! Ribbon structure of Γ: the counter-clockwise order of half-edges at each
//! vertex. At v_j the order is
//!
//!   0: ε_{j+1} leaving, 1: κ_j leaving, 2: ε_j arriving, 3: κ_j arriving.
//!
//! A half-edge is identified with the letter that leaves the vertex through
//! it, so `out_half_edge` is a bijection between the 4n letters and the 4n
//! half-edges.

use crate::surface_walks::{Letter, LetterKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub vertex: usize,
    pub pos: u8,
}

pub fn out_half_edge(l: Letter, n: usize) -> HalfEdge {
    let pos = match (l.kind, l.sign > 0) {
        (LetterKind::Eps, true) => 0,
        (LetterKind::Kappa, true) => 1,
        (LetterKind::Eps, false) => 2,
        (LetterKind::Kappa, false) => 3,
    };
    HalfEdge {
        vertex: l.source(n),
        pos,
    }
}

/// The half-edge through which `l` enters its target.
pub fn in_half_edge(l: Letter, n: usize) -> HalfEdge {
    out_half_edge(l.inv(), n)
}

/// The letter that leaves through a half-edge.
pub fn letter_of(h: HalfEdge, n: usize) -> Letter {
    let j = h.vertex;
    match h.pos {
        0 => Letter::eps((j + 1) % n),
        1 => Letter::kappa(j),
        2 => Letter::eps(j).inv(),
        _ => Letter::kappa(j).inv(),
    }
}

/// Counter-clockwise distance from `base` to `h` at the same vertex.
pub fn ccw_dist(base: HalfEdge, h: HalfEdge) -> u8 {
    debug_assert_eq!(base.vertex, h.vertex);
    (h.pos + 4 - base.pos) % 4
}

/// Going counter-clockwise from `base`, is `x` met before `y`?
pub fn ccw_before(base: HalfEdge, x: HalfEdge, y: HalfEdge) -> bool {
    ccw_dist(base, x) < ccw_dist(base, y)
}

/// Boundary cycles of the ribbon graph, as lists of letters. Each one runs
/// around a puncture.
pub fn faces(n: usize) -> Vec<Vec<Letter>> {
    let mut letters = Vec::new();
    for j in 0..n {
        for pos in 0..4 {
            letters.push(letter_of(HalfEdge { vertex: j, pos }, n));
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for &start in &letters {
        if seen.contains(&start) {
            continue;
        }
        let mut cyc = Vec::new();
        let mut l = start;
        while seen.insert(l) {
            cyc.push(l);
            let h = in_half_edge(l, n);
            // next half-edge clockwise
            let next = HalfEdge {
                vertex: h.vertex,
                pos: (h.pos + 3) % 4,
            };
            l = letter_of(next, n);
        }
        out.push(cyc);
    }
    out
}
