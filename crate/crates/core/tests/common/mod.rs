#![allow(dead_code)]

use ccc_core::bundle_sequences::canonical_sequence;
use ccc_core::surface_walks::{walk_from_matrix, CyclicWalk, LoopMatrix};
use ccc_core::twist_engine::{apply_word, Generator, TwistWord};
use rand::Rng;

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn primitive_matrix(rng: &mut impl Rng, n: usize, r_max: usize, bound: i64) -> LoopMatrix {
    loop {
        let r = rng.gen_range(1..=r_max);
        let e: Vec<i64> = (0..n * r).map(|_| rng.gen_range(-bound..=bound)).collect();
        let m = LoopMatrix::new(n, r, e).unwrap();
        if m.is_primitive() {
            return m;
        }
    }
}

pub fn coprime_degrees(
    rng: &mut impl Rng,
    n: usize,
    r_max: usize,
    bound: i64,
) -> (usize, Vec<i64>) {
    loop {
        let r = rng.gen_range(1..=r_max);
        let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if canonical_sequence(r, &d).is_ok() {
            return (r, d);
        }
    }
}

pub fn simple_walk(rng: &mut impl Rng, n: usize, r_max: usize, bound: i64) -> CyclicWalk {
    let (r, d) = coprime_degrees(rng, n, r_max, bound);
    walk_from_matrix(&canonical_sequence(r, &d).unwrap())
}

pub fn random_word(rng: &mut impl Rng, n: usize, len: usize) -> TwistWord {
    let mut w = TwistWord::default();
    for _ in 0..len {
        let g = if rng.gen_bool(0.5) {
            Generator::Pic
        } else {
            Generator::Vert(rng.gen_range(0..n))
        };
        w.push(g, if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    w
}

/// A simple loop that is usually not a bundle loop.
pub fn twisted_pic(rng: &mut impl Rng, n: usize, len: usize) -> CyclicWalk {
    let w = random_word(rng, n, len);
    apply_word(&CyclicWalk::pic(n), &w).unwrap()
}
