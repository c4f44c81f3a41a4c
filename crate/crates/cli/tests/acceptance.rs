//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::time::{Duration, Instant};

use ccc_cli::run_command;
use ccc_cli::verify::sample;
use ccc_core::bundle_sequences::{
    bdg_check, canonical_sequence, enumerate_simple_candidates, extension_lambda, extension_peel,
    geometric_representative, peel_all, BdgOptions,
};
use ccc_core::gentle_homotopy::{
    build_band_complex, combine, cone, cone_with_inclusion, hom_basis, hom_total, is_iso, minimize,
    ProjectiveComplex,
};
use ccc_core::intersection_calculus::{
    classify_spherical, intersections_cvb, intersections_general, self_intersections,
    SphericalClass,
};
use ccc_core::path_algebra::GentleAlgebra;
use ccc_core::surface_walks::{
    gcd, homology_class, matrices_equivalent, walk_from_matrix, walks_equivalent, CyclicWalk,
    LoopMatrix,
};
use ccc_core::twist_engine::{
    apply_word, normalize_to_pic, twist_general, twist_power, twist_vertical, Generator,
};
use ccc_core::Fp32003;
use rand::Rng;

type F = Fp32003;

const LIMIT_1: Duration = Duration::from_millis(1);
const LIMIT_2: Duration = Duration::from_secs(5);
const LIMIT_3: Duration = Duration::from_secs(10);
const LIMIT_4: Duration = Duration::from_secs(30);
const LIMIT_5: Duration = Duration::from_secs(60);
const LIMIT_6: Duration = Duration::from_secs(10);
const LIMIT_7: Duration = Duration::from_secs(30);
const LIMIT_8: Duration = Duration::from_secs(30);
const LIMIT_9: Duration = Duration::from_secs(30);

const PAIRS_5: usize = 200;
const SAMPLES_6: usize = 20;
const SAMPLES_7: usize = 20;
const SAMPLES_8: usize = 50;
const SAMPLES_9: usize = 50;

struct Outcome {
    ok: bool,
    detail: String,
}

/// d² over every complex the run constructs.
#[derive(Default)]
struct D2 {
    checked: usize,
    bad: usize,
}

impl D2 {
    fn note(&mut self, x: &ProjectiveComplex<F>) {
        self.checked += 1;
        if !x.d_squared_is_zero(&GentleAlgebra::new(x.n)) {
            self.bad += 1;
        }
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (ok, detail) = f();
    let el = t.elapsed();
    let in_time = el < limit;
    let detail = format!(
        "{detail}; {:.3} ms (limit {} ms){}",
        el.as_secs_f64() * 1e3,
        limit.as_millis(),
        if in_time { "" } else { " TOO SLOW" }
    );
    Outcome {
        ok: ok && in_time,
        detail,
    }
}

/// All coprime (r, 𝕕) with n ≤ 3, r ≤ 6, entries in [−6, 6].
fn sweep() -> Vec<(usize, Vec<i64>)> {
    let mut out = Vec::new();
    for n in 1..=3u32 {
        for r in 1..=6usize {
            for code in 0..13usize.pow(n) {
                let d: Vec<i64> = (0..n)
                    .map(|k| (code / 13usize.pow(k) % 13) as i64 - 6)
                    .collect();
                if gcd(r as i64, d.iter().sum()) == 1 {
                    out.push((r, d));
                }
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let t = Instant::now();
    let code = run_command(["ccc", "--json", "seq", "2", "2,-1"], &mut out, &mut err);
    let el = t.elapsed();
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap_or_default();
    let ok = code == 0 && v["entries"] == serde_json::json!([1, -1, 1, 0]) && el < LIMIT_1;
    Outcome {
        ok,
        detail: format!(
            "entries {}; {:.3} ms (limit 1 ms)",
            v["entries"],
            el.as_secs_f64() * 1e3
        ),
    }
}

fn criterion_2() -> Outcome {
    timed(LIMIT_2, || {
        let s = sweep();
        let bad = s
            .iter()
            .filter(|(r, d)| {
                !bdg_check(&canonical_sequence(*r, d).unwrap(), BdgOptions::default()).passes()
            })
            .count();
        (bad == 0, format!("{} sequences, {bad} failures", s.len()))
    })
}

fn criterion_3() -> Outcome {
    timed(LIMIT_3, || {
        let s = sweep();
        let mut bad = 0;
        for (r, d) in &s {
            let m = canonical_sequence(*r, d).unwrap();
            if self_intersections(&m).count != 0
                || geometric_representative(*r, d).unwrap().crossing_count() != 0
            {
                bad += 1;
            }
        }
        (
            bad == 0,
            format!("{} sequences, {bad} with crossings", s.len()),
        )
    })
}

fn criterion_4() -> Outcome {
    timed(LIMIT_4, || {
        let (mut cases, mut bad) = (0, 0);
        for n in 1..=2usize {
            for r in 1..=5i64 {
                for code in 0..r.pow(n as u32) {
                    let d: Vec<i64> = (0..n).map(|k| (code / r.pow(k as u32)) % r).collect();
                    if gcd(r, d.iter().sum()) != 1 {
                        continue;
                    }
                    cases += 1;
                    let found = enumerate_simple_candidates(n, r as usize, &d).unwrap();
                    let canon = canonical_sequence(r as usize, &d).unwrap();
                    if found.len() != 1 || !matrices_equivalent(&found[0], &canon) {
                        bad += 1;
                    }
                }
            }
        }
        (
            bad == 0,
            format!("{cases} degree vectors, {bad} not unique"),
        )
    })
}

fn criterion_5(d2: &mut D2) -> Outcome {
    timed(LIMIT_5, || {
        let mut rng = sample::rng(505);
        let (mut done, mut bad) = (0, 0);
        while done < PAIRS_5 {
            let n = rng.gen_range(1..=2);
            let a = sample::primitive_matrix(&mut rng, n, 3, 2);
            let b = sample::primitive_matrix(&mut rng, n, 3, 2);
            if matrices_equivalent(&a, &b) {
                continue;
            }
            done += 1;
            let pa = build_band_complex(&a, sample::scalar::<F>(&mut rng));
            let pb = build_band_complex(&b, sample::scalar::<F>(&mut rng));
            d2.note(&pa);
            d2.note(&pb);
            if intersections_cvb(&a, &b).map(|x| x.count).ok() != Some(hom_total(&pa, &pb)) {
                bad += 1;
            }
        }
        (
            bad == 0,
            format!("{done} pairs over F_32003, {bad} mismatches"),
        )
    })
}

fn criterion_6(d2: &mut D2) -> Outcome {
    timed(LIMIT_6, || {
        let mut rng = sample::rng(606);
        let mut dims = Vec::new();
        for _ in 0..SAMPLES_6 {
            let n = rng.gen_range(1..=3);
            let m = sample::canonical(&mut rng, n, 5, 4);
            let x = build_band_complex(&m, sample::scalar::<F>(&mut rng));
            d2.note(&x);
            dims.push(hom_total(&x, &x));
        }
        let bad = dims.iter().filter(|&&h| h != 2).count();
        (
            bad == 0,
            format!("{SAMPLES_6} samples, {bad} with hom != 2"),
        )
    })
}

fn criterion_7(d2: &mut D2) -> Outcome {
    timed(LIMIT_7, || {
        let mut rng = sample::rng(707);
        let mut bad = Vec::new();
        for k in 0..SAMPLES_7 {
            let n = rng.gen_range(1..=2);
            let (r, d) = sample::coprime_degrees(&mut rng, n, 2, 4, 4);
            let m = canonical_sequence(r, &d).unwrap();
            let (ell, mq) = extension_peel(&m).unwrap();
            let (la, lb) = (sample::scalar::<F>(&mut rng), sample::scalar::<F>(&mut rng));
            let pl = build_band_complex(&LoopMatrix::new(n, 1, ell.clone()).unwrap(), la);
            let pq = build_band_complex(&mq, lb);
            let basis = hom_basis(&pq, &pl, 1);
            let coeffs: Vec<F> = basis
                .iter()
                .map(|_| sample::scalar::<F>(&mut rng))
                .collect();
            let f = combine(&basis, &coeffs);
            let (middle, incl) = cone_with_inclusion(&pq, &pl, &f).unwrap();
            let c = cone(&pl, &middle, &incl).unwrap();
            let pm = build_band_complex(&m, extension_lambda(&m, &ell, &mq, la, lb));
            for x in [&pl, &pq, &middle, &c, &pm] {
                d2.note(x);
            }
            let middle_ok = is_iso(&minimize(&middle), &pm).unwrap();
            let cone_ok = is_iso(&c, &minimize(&pq)).unwrap();
            let lines = peel_all(&m);
            let mut sum = vec![0i64; n];
            for l in &lines {
                for (s, x) in sum.iter_mut().zip(l) {
                    *s += x;
                }
            }
            let tele = lines.len() == r && sum == d;
            if basis.is_empty() || !middle_ok || !cone_ok || !tele {
                bad.push(k);
            }
        }
        (
            bad.is_empty(),
            format!("{SAMPLES_7} samples with r >= 2, failing {bad:?}"),
        )
    })
}

/// Homology action of a twist, written out directly: for
/// x = (r, 𝕕), δ = (r′, 𝕕′), x ↦ x + k·(r d̄′ − d̄ r′)·δ.
fn expected_class(x: &CyclicWalk, delta: &CyclicWalk, k: i64) -> (i64, Vec<i64>) {
    let (hx, hd) = (homology_class(x), homology_class(delta));
    let pair = hx.rank * hd.total_degree - hx.total_degree * hd.rank;
    let c = k * pair;
    (
        hx.rank + c * hd.rank,
        hx.multidegree
            .iter()
            .zip(&hd.multidegree)
            .map(|(a, b)| a + c * b)
            .collect(),
    )
}

fn criterion_8() -> Outcome {
    timed(LIMIT_8, || {
        let mut rng = sample::rng(808);
        let (mut vert_bad, mut hom_bad, mut inv_bad, mut pairs) = (0, 0, 0, 0);
        for _ in 0..SAMPLES_8 {
            let n = rng.gen_range(1..=3);
            let m = sample::primitive_matrix(&mut rng, n, 4, 2);
            let i = rng.gen_range(0..n);
            let l: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let kappa = CyclicWalk::kappa(n, i);
            let w = walk_from_matrix(&m);
            let t = twist_general(&w, &kappa, l).unwrap();
            if !walks_equivalent(&t, &walk_from_matrix(&twist_vertical(&m, i, l as i64))) {
                vert_bad += 1;
            }
            let h = homology_class(&t);
            if (h.rank, h.multidegree) != expected_class(&w, &kappa, l as i64) {
                hom_bad += 1;
            }
        }
        while pairs < SAMPLES_8 {
            let n = rng.gen_range(1..=3);
            let x = sample::simple_walk(&mut rng, n, 4, 3);
            let y = sample::simple_walk(&mut rng, n, 4, 3);
            if walks_equivalent(&x, &y) || walks_equivalent(&x, &y.inverse()) {
                continue;
            }
            pairs += 1;
            let g = if rng.gen_bool(0.5) {
                Generator::Pic
            } else {
                Generator::Vert(rng.gen_range(0..n))
            };
            let k = if rng.gen_bool(0.5) { 1 } else { -1 };
            let delta = g.walk(n);
            let (tx, ty) = (
                twist_power(&x, &delta, k).unwrap(),
                twist_power(&y, &delta, k).unwrap(),
            );
            let h = homology_class(&tx);
            if (h.rank, h.multidegree) != expected_class(&x, &delta, k) {
                hom_bad += 1;
            }
            let before = intersections_general(&x, &y).unwrap().count;
            if intersections_general(&tx, &ty).map(|r| r.count).ok() != Some(before) {
                inv_bad += 1;
            }
        }
        let ok = vert_bad == 0 && hom_bad == 0 && inv_bad == 0;
        (ok, format!("vertical {vert_bad}/{SAMPLES_8}, homology {hom_bad}/{}, intersection {inv_bad}/{pairs} failures", 2 * SAMPLES_8))
    })
}

fn criterion_9() -> Outcome {
    timed(LIMIT_9, || {
        let mut rng = sample::rng(909);
        let (mut done, mut bad) = (0, 0);
        while done < SAMPLES_9 {
            let n = rng.gen_range(1..=3);
            let w = sample::simple_walk(&mut rng, n, 6, 6);
            if classify_spherical(&w) != SphericalClass::Spherical {
                continue;
            }
            done += 1;
            let ok = normalize_to_pic(&w)
                .and_then(|nm| {
                    apply_word(&if nm.reversed { w.inverse() } else { w.clone() }, &nm.word)
                })
                .map(|fin| walks_equivalent(&fin, &CyclicWalk::pic(n)))
                .unwrap_or(false);
            if !ok {
                bad += 1;
            }
        }
        (
            bad == 0,
            format!("{done} spherical inputs, {bad} not carried to the Picard loop"),
        )
    })
}

/// Path count by breadth-first search over arrow names, relations checked
/// on the spelled-out words.
fn enumerate_paths(n: usize) -> usize {
    let arrows: Vec<(String, usize, usize)> = (0..n)
        .flat_map(|i| {
            let (t, m, b, tp) = (3 * i, 3 * i + 1, 3 * i + 2, 3 * ((i + n - 1) % n));
            [
                (format!("a{i}"), b, m),
                (format!("c{i}"), b, m),
                (format!("b{i}"), m, tp),
                (format!("d{i}"), m, t),
            ]
        })
        .collect();
    let forbidden: Vec<String> = (0..n)
        .flat_map(|i| [format!("a{i}.b{i}"), format!("c{i}.d{i}")])
        .collect();
    let mut layer: Vec<(String, usize)> = arrows.iter().map(|a| (a.0.clone(), a.2)).collect();
    let mut total = 3 * n;
    while !layer.is_empty() {
        total += layer.len();
        let mut next = Vec::new();
        for (word, end) in &layer {
            let last = word.rsplit('.').next().unwrap();
            for a in arrows.iter().filter(|a| a.1 == *end) {
                if !forbidden.contains(&format!("{last}.{}", a.0)) {
                    next.push((format!("{word}.{}", a.0), a.2));
                }
            }
        }
        layer = next;
    }
    total
}

fn criterion_10(d2: &D2) -> Outcome {
    let dims: Vec<(usize, usize, usize)> = (1..=5)
        .map(|n| (n, GentleAlgebra::new(n).dim(), enumerate_paths(n)))
        .collect();
    let dim_ok = dims.iter().all(|&(n, a, b)| a == 9 * n && b == 9 * n);
    Outcome {
        ok: dim_ok && d2.bad == 0 && d2.checked > 0,
        detail: format!(
            "d^2 != 0 in {}/{} complexes; dims {:?}",
            d2.bad,
            d2.checked,
            dims.iter().map(|x| x.1).collect::<Vec<_>>()
        ),
    }
}

fn main() {
    let mut d2 = D2::default();
    let results = vec![
        ("canonical sequence exactness", criterion_1()),
        (
            "simplicity conditions on canonical sequences",
            criterion_2(),
        ),
        (
            "canonical sequences have no self-intersections",
            criterion_3(),
        ),
        ("uniqueness of simple sequences", criterion_4()),
        ("intersections equal total hom", criterion_5(&mut d2)),
        ("spherical endomorphisms", criterion_6(&mut d2)),
        ("cone and extension telescoping", criterion_7(&mut d2)),
        ("twist consistency", criterion_8()),
        ("normalization to the Picard loop", criterion_9()),
        ("structural checks", criterion_10(&d2)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "{} {:>2} {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        failed += usize::from(!o.ok);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
