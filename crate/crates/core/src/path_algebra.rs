//! The gentle algebra Λ_n: quiver Q(n) with relations b_i a_i = 0 = d_i c_i.
//!
//! Vertices per column i: top_i, mid_i, bot_i. Arrows a_i, c_i: bot_i → mid_i,
//! b_i: mid_i → top_{i-1}, d_i: mid_i → top_i. Paths are stored in traversal
//! order; the composite "d_i a_i" walks a_i first.

use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Top,
    Mid,
    Bot,
}

pub fn vertex(kind: VertexKind, col: usize) -> usize {
    3 * col
        + match kind {
            VertexKind::Top => 0,
            VertexKind::Mid => 1,
            VertexKind::Bot => 2,
        }
}

pub fn vertex_kind(v: usize) -> (VertexKind, usize) {
    let k = match v % 3 {
        0 => VertexKind::Top,
        1 => VertexKind::Mid,
        _ => VertexKind::Bot,
    };
    (k, v / 3)
}

pub fn vertex_name(v: usize) -> String {
    let (k, c) = vertex_kind(v);
    let s = match k {
        VertexKind::Top => "top",
        VertexKind::Mid => "mid",
        VertexKind::Bot => "bot",
    };
    format!("{s}{c}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowKind {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub kind: ArrowKind,
    pub col: usize,
}

impl Arrow {
    pub fn source(self) -> usize {
        match self.kind {
            ArrowKind::A | ArrowKind::C => vertex(VertexKind::Bot, self.col),
            ArrowKind::B | ArrowKind::D => vertex(VertexKind::Mid, self.col),
        }
    }

    pub fn target(self, n: usize) -> usize {
        match self.kind {
            ArrowKind::A | ArrowKind::C => vertex(VertexKind::Mid, self.col),
            ArrowKind::B => vertex(VertexKind::Top, (self.col + n - 1) % n),
            ArrowKind::D => vertex(VertexKind::Top, self.col),
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            ArrowKind::A => 'a',
            ArrowKind::B => 'b',
            ArrowKind::C => 'c',
            ArrowKind::D => 'd',
        };
        write!(f, "{c}{}", self.col)
    }
}

/// A nonzero path of Λ_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<Arrow>,
}

/// Is the length-two path "x then y" killed by a relation?
fn killed(x: Arrow, y: Arrow) -> bool {
    x.col == y.col
        && matches!(
            (x.kind, y.kind),
            (ArrowKind::A, ArrowKind::B) | (ArrowKind::C, ArrowKind::D)
        )
}

#[derive(Clone, Debug)]
pub struct GentleAlgebra {
    pub n: usize,
    pub paths: Vec<Path>,
    index: HashMap<Vec<Arrow>, usize>,
    idempotent: Vec<usize>,
    between: HashMap<(usize, usize), Vec<usize>>,
    compose: Vec<Option<usize>>,
}

impl GentleAlgebra {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let vertices = 3 * n;
        let mut arrows = Vec::new();
        for col in 0..n {
            for kind in [ArrowKind::A, ArrowKind::B, ArrowKind::C, ArrowKind::D] {
                arrows.push(Arrow { kind, col });
            }
        }
        let mut paths: Vec<Path> = (0..vertices)
            .map(|v| Path {
                src: v,
                tgt: v,
                arrows: vec![],
            })
            .collect();
        // grow paths one arrow at a time; Q(n) is acyclic so this stops
        let mut frontier: Vec<Path> = Vec::new();
        for &a in &arrows {
            frontier.push(Path {
                src: a.source(),
                tgt: a.target(n),
                arrows: vec![a],
            });
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for &a in &arrows {
                    let last = *p.arrows.last().unwrap();
                    if a.source() == p.tgt && !killed(last, a) {
                        let mut ar = p.arrows.clone();
                        ar.push(a);
                        next.push(Path {
                            src: p.src,
                            tgt: a.target(n),
                            arrows: ar,
                        });
                    }
                }
            }
            paths.extend(frontier);
            frontier = next;
        }
        let index: HashMap<Vec<Arrow>, usize> = paths
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.arrows.is_empty())
            .map(|(i, p)| (p.arrows.clone(), i))
            .collect();
        let idempotent: Vec<usize> = (0..vertices).collect();
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, p) in paths.iter().enumerate() {
            between.entry((p.src, p.tgt)).or_default().push(i);
        }
        let np = paths.len();
        let mut compose = vec![None; np * np];
        for i in 0..np {
            for j in 0..np {
                let (p, q) = (&paths[i], &paths[j]);
                if p.tgt != q.src {
                    continue;
                }
                compose[i * np + j] = if p.arrows.is_empty() {
                    Some(j)
                } else if q.arrows.is_empty() {
                    Some(i)
                } else {
                    let mut ar = p.arrows.clone();
                    ar.extend_from_slice(&q.arrows);
                    let ok = ar.windows(2).all(|w| !killed(w[0], w[1]));
                    if ok {
                        index.get(&ar).copied()
                    } else {
                        None
                    }
                };
            }
        }
        GentleAlgebra {
            n,
            paths,
            index,
            idempotent,
            between,
            compose,
        }
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotent[v]
    }

    pub fn is_idempotent(&self, p: usize) -> bool {
        self.paths[p].arrows.is_empty()
    }

    pub fn arrow(&self, kind: ArrowKind, col: usize) -> usize {
        self.index[&vec![Arrow {
            kind,
            col: col % self.n,
        }]]
    }

    /// The path walking `first` then `second` (must be nonzero).
    pub fn path2(&self, first: ArrowKind, second: ArrowKind, col: usize) -> usize {
        let c = col % self.n;
        self.index[&vec![
            Arrow {
                kind: first,
                col: c,
            },
            Arrow {
                kind: second,
                col: c,
            },
        ]]
    }

    pub fn paths_between(&self, src: usize, tgt: usize) -> &[usize] {
        self.between
            .get(&(src, tgt))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Traverse `p` then `q`; `None` if not composable or zero.
    pub fn then(&self, p: usize, q: usize) -> Option<usize> {
        self.compose[p * self.paths.len() + q]
    }

    /// Name in the usual right-to-left notation, e.g. `d0a0`.
    pub fn name(&self, p: usize) -> String {
        let path = &self.paths[p];
        if path.arrows.is_empty() {
            return format!("e_{}", vertex_name(path.src));
        }
        path.arrows.iter().rev().map(|a| a.to_string()).collect()
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        (0..self.paths.len()).find(|&p| self.name(p) == name)
    }
}

pub fn dim_algebra(n: usize) -> usize {
    GentleAlgebra::new(n).dim()
}
