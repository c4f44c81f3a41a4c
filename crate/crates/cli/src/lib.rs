//! `ccc`: batch front end for ccc-core. Every subcommand prints one JSON
//! document (or an SVG from `render`).

pub mod io;
pub mod svg;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use ccc_core::bundle_sequences::{
    bdg_check, canonical_sequence, extension_peel, geometric_representative, peel_all, BdgOptions,
    GapMode, ShiftRange,
};
use ccc_core::gentle_homotopy::{
    build_band_complex, combine, cone, hom_basis, hom_graded, hom_total,
};
use ccc_core::intersection_calculus::{
    classify_spherical, homological_bound, intersections_cvb, intersections_general,
    self_intersections, self_intersections_general,
};
use ccc_core::path_algebra::{dim_algebra, GentleAlgebra};
use ccc_core::surface_walks::{homology_class, is_primitive, LoopMatrix};
use ccc_core::twist_engine::{normalize_to_pic, twist_power, Generator};
use ccc_core::{with_prime, Field, PrimeVisitor, Rational, DEFAULT_PRIME, SUPPORTED_PRIMES};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use io::UsageError;
pub use verify::{verify_suite, VerificationReport, VerificationSuiteConfig};

use io::{
    complex_json, loop_json, matrix_json, parse_int_list, parse_loop, read_source, usage, LoopInput,
};

pub const PRIME_ENV: &str = "CCC_FIELD_PRIME";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Cond2Arg {
    Column,
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TRangeArg {
    Column,
    All,
}

#[derive(Parser, Debug)]
#[command(
    name = "ccc",
    version,
    about = "Loops, bundles and twists on the cycle of projective lines"
)]
struct Cli {
    /// Number of components (dim-lambda, verify).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Rank bound (verify).
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Prime for the coefficient field, 0 for the rationals.
    #[arg(long = "field-prime", global = true)]
    field_prime: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Compact JSON on one line.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long = "t-range", global = true, value_enum, default_value = "column")]
    t_range: TRangeArg,
    #[arg(long, global = true, value_enum, default_value = "column")]
    cond2: Cond2Arg,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Loop arguments are a file path, inline JSON, or `-`/absent for stdin.
#[derive(Subcommand, Debug)]
enum Cmd {
    /// Canonical sequence for rank R and degrees d0,...,d(n-1).
    Seq {
        r: usize,
        #[arg(allow_hyphen_values = true)]
        degrees: String,
    },
    /// Simplicity conditions for a sequence, or self-intersections for a walk.
    CheckSimple {
        input: Option<String>,
    },
    Intersect {
        a: String,
        b: String,
    },
    SelfIntersect {
        input: Option<String>,
    },
    /// Graded Hom between band complexes.
    Hom {
        a: String,
        b: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        mu: i64,
    },
    /// Minimal cone of a random map of the given degree (drawn from --seed).
    Cone {
        a: String,
        b: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        mu: i64,
    },
    /// Band complex of a bundle loop.
    Build {
        input: Option<String>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        lambda: i64,
    },
    /// Dehn twist along kappa_i (vert:i) or the Picard loop (pic).
    Twist {
        input: Option<String>,
        #[arg(long = "gen")]
        generator: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        pow: i64,
    },
    /// Twist word taking a spherical loop to the Picard loop.
    Normalize {
        input: Option<String>,
    },
    /// Extension peeling down to line bundles.
    Peel {
        input: Option<String>,
    },
    /// Straight representative as SVG.
    Render {
        input: Option<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cross-verification sweep.
    Verify {
        #[arg(long = "entry-bound", default_value_t = 2)]
        entry_bound: i64,
        #[arg(long, default_value_t = VerificationSuiteConfig::default().sample_count)]
        samples: usize,
    },
    /// Dimension of the algebra for --n.
    DimLambda,
}

enum Output {
    Json(Value),
    Text(String),
}

fn field_prime(cli: &Cli) -> anyhow::Result<u64> {
    let p = match cli.field_prime {
        Some(p) => p,
        None => match std::env::var(PRIME_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| usage(format!("{PRIME_ENV} is not a number: {s}")))?,
            Err(_) => DEFAULT_PRIME,
        },
    };
    if p != 0 && !SUPPORTED_PRIMES.contains(&p) {
        return Err(usage(format!(
            "unsupported prime {p}; choose 0 or one of {SUPPORTED_PRIMES:?}"
        )));
    }
    Ok(p)
}

fn bdg_options(cli: &Cli) -> BdgOptions {
    BdgOptions {
        cond2: match cli.cond2 {
            Cond2Arg::Column => GapMode::Column,
            Cond2Arg::Literal => GapMode::Literal,
        },
        t_range: match cli.t_range {
            TRangeArg::Column => ShiftRange::Column,
            TRangeArg::All => ShiftRange::All,
        },
    }
}

fn load(arg: Option<&str>) -> anyhow::Result<LoopInput> {
    parse_loop(&read_source(arg)?)
}

fn load_pair(a: &str, b: &str) -> anyhow::Result<(LoopInput, LoopInput)> {
    if a == "-" && b == "-" {
        return Err(usage("only one argument can come from stdin"));
    }
    let (x, y) = (load(Some(a))?, load(Some(b))?);
    if x.n() != y.n() {
        return Err(usage(format!(
            "loops live on different surfaces (n = {} and {})",
            x.n(),
            y.n()
        )));
    }
    Ok((x, y))
}

fn bundle(x: &LoopInput) -> anyhow::Result<LoopMatrix> {
    x.matrix().ok_or_else(|| {
        anyhow::Error::new(ccc_core::Error::NotMonotone).context("a bundle loop is required")
    })
}

fn parse_generator(s: &str) -> anyhow::Result<Generator> {
    if s == "pic" {
        return Ok(Generator::Pic);
    }
    s.strip_prefix("vert:")
        .and_then(|i| i.parse().ok())
        .map(Generator::Vert)
        .ok_or_else(|| usage(format!("--gen expects vert:<i> or pic, got {s}")))
}

fn scalar<F: Field>(v: i64) -> anyhow::Result<F> {
    let x = F::from_i64(v);
    if x.is_zero() {
        return Err(usage(format!("band parameter {v} vanishes in the field")));
    }
    Ok(x)
}

/// Subcommands that need the coefficient field.
struct FieldJob<'a>(&'a Cli);

impl PrimeVisitor for FieldJob<'_> {
    type Output = anyhow::Result<Value>;

    fn visit<F: Field>(self) -> anyhow::Result<Value> {
        let cli = self.0;
        match &cli.cmd {
            Cmd::Hom { a, b, lambda, mu } => {
                let (x, y) = load_pair(a, b)?;
                let (px, py) = (
                    build_band_complex(&bundle(&x)?, scalar::<F>(*lambda)?),
                    build_band_complex(&bundle(&y)?, scalar::<F>(*mu)?),
                );
                let graded = hom_graded(&px, &py);
                Ok(json!({ "total": hom_total(&px, &py), "graded": graded }))
            }
            Cmd::Cone {
                a,
                b,
                shift,
                lambda,
                mu,
            } => {
                let (x, y) = load_pair(a, b)?;
                let (px, py) = (
                    build_band_complex(&bundle(&x)?, scalar::<F>(*lambda)?),
                    build_band_complex(&bundle(&y)?, scalar::<F>(*mu)?),
                );
                let basis = hom_basis(&px, &py, *shift);
                let mut rng = verify::sample::rng(cli.seed);
                let coeffs: Vec<F> = basis
                    .iter()
                    .map(|_| verify::sample::scalar::<F>(&mut rng))
                    .collect();
                let f = combine(&basis, &coeffs);
                let c = cone(&px, &py, &f)?;
                Ok(json!({ "hom_dim": basis.len(), "cone": complex_json(&c) }))
            }
            Cmd::Build { input, lambda } => {
                let m = bundle(&load(input.as_deref())?)?;
                let x = build_band_complex(&m, scalar::<F>(*lambda)?);
                let alg = GentleAlgebra::new(m.n);
                Ok(json!({
                    "complex": complex_json(&x),
                    "d_squared_zero": x.d_squared_is_zero(&alg),
                    "minimal": x.is_minimal(&alg),
                }))
            }
            _ => unreachable!("not a field job"),
        }
    }
}

fn run_field(cli: &Cli) -> anyhow::Result<Value> {
    let p = field_prime(cli)?;
    if p == 0 {
        return FieldJob(cli).visit::<Rational>();
    }
    with_prime(p, FieldJob(cli)).expect("prime checked")
}

fn execute(cli: &Cli) -> anyhow::Result<Output> {
    let out = match &cli.cmd {
        Cmd::Seq { r, degrees } => {
            let d = parse_int_list(degrees)?;
            if *r == 0 || d.is_empty() {
                return Err(usage("seq needs r >= 1 and at least one degree"));
            }
            let m = canonical_sequence(*r, &d)?;
            let mut v = matrix_json(&m);
            v["multidegree"] = json!(d);
            Output::Json(v)
        }
        Cmd::CheckSimple { input } => {
            let x = load(input.as_deref())?;
            Output::Json(match x.matrix() {
                Some(m) => {
                    let rep = bdg_check(&m, bdg_options(cli));
                    json!({
                        "simple": rep.passes(),
                        "primitive": m.is_primitive(),
                        "self_intersections": self_intersections(&m).count,
                        "conditions": rep,
                    })
                }
                None => {
                    let w = x.walk();
                    let s = self_intersections_general(&w)?.count;
                    json!({ "simple": s == 0 && is_primitive(&w), "primitive": is_primitive(&w), "self_intersections": s })
                }
            })
        }
        Cmd::Intersect { a, b } => {
            let (x, y) = load_pair(a, b)?;
            let (wx, wy) = (x.walk(), y.walk());
            let mut v = match (x.matrix(), y.matrix()) {
                (Some(ma), Some(mb)) => {
                    let mut v = serde_json::to_value(intersections_cvb(&ma, &mb)?)?;
                    v["method"] = json!("cvb");
                    v
                }
                _ => {
                    let mut v = serde_json::to_value(intersections_general(&wx, &wy)?)?;
                    v["method"] = json!("general");
                    v
                }
            };
            v["homological_bound"] = json!(homological_bound(&wx, &wy));
            Output::Json(v)
        }
        Cmd::SelfIntersect { input } => {
            let x = load(input.as_deref())?;
            let mut v = match x.matrix() {
                Some(m) => serde_json::to_value(self_intersections(&m))?,
                None => serde_json::to_value(self_intersections_general(&x.walk())?)?,
            };
            v["spherical"] = json!(classify_spherical(&x.walk()));
            Output::Json(v)
        }
        Cmd::Hom { .. } | Cmd::Cone { .. } | Cmd::Build { .. } => Output::Json(run_field(cli)?),
        Cmd::Twist {
            input,
            generator,
            pow,
        } => {
            let x = load(input.as_deref())?;
            let g = parse_generator(generator)?;
            let n = x.n();
            if let Generator::Vert(i) = g {
                if i >= n {
                    return Err(usage(format!("vert:{i} out of range for n = {n}")));
                }
            }
            let w = twist_power(&x.walk(), &g.walk(n), *pow)?;
            Output::Json(json!({ "result": loop_json(&w), "homology": homology_class(&w) }))
        }
        Cmd::Normalize { input } => {
            let w = load(input.as_deref())?.walk();
            let nm = normalize_to_pic(&w)?;
            Output::Json(json!({ "reversed": nm.reversed, "word": nm.word }))
        }
        Cmd::Peel { input } => {
            let m = bundle(&load(input.as_deref())?)?;
            let mut steps = Vec::new();
            let mut cur = m.clone();
            while cur.r > 1 {
                let (ell, next) = extension_peel(&cur)?;
                steps.push(json!({ "line": ell, "quotient": matrix_json(&next) }));
                cur = next;
            }
            Output::Json(json!({ "input": matrix_json(&m), "steps": steps, "lines": peel_all(&m) }))
        }
        Cmd::Render { input, svg } => {
            let m = bundle(&load(input.as_deref())?)?;
            let rep = geometric_representative(m.r, &m.multidegree())?;
            let doc = svg::render(&rep);
            match svg {
                Some(path) => {
                    std::fs::write(path, &doc)
                        .with_context(|| format!("writing {}", path.display()))?;
                    Output::Json(json!({
                        "svg": path.display().to_string(),
                        "segments": rep.segments.len(),
                        "crossings": rep.crossing_count(),
                    }))
                }
                None => Output::Text(doc),
            }
        }
        Cmd::Verify {
            entry_bound,
            samples,
        } => {
            let base = VerificationSuiteConfig::default();
            let cfg = VerificationSuiteConfig {
                n_max: cli.n.unwrap_or(base.n_max),
                r_max: cli.r.unwrap_or(base.r_max),
                entry_bound: *entry_bound,
                sample_count: *samples,
                prime: field_prime(cli)?,
                seed: cli.seed,
                cond2: bdg_options(cli).cond2,
                t_range: bdg_options(cli).t_range,
            };
            let rep = verify_suite(&cfg)?;
            Output::Json(serde_json::to_value(rep)?)
        }
        Cmd::DimLambda => {
            let n = cli.n.ok_or_else(|| usage("dim-lambda needs --n"))?;
            if n == 0 {
                return Err(usage("n must be positive"));
            }
            Output::Json(json!({ "n": n, "dim": dim_algebra(n) }))
        }
    };
    Ok(out)
}

fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<UsageError>().is_some() {
        2
    } else {
        1
    }
}

/// Runs one invocation, writing the result to `out` and diagnostics to
/// `err`. Returns the process exit code: 0 ok, 1 domain error, 2 usage.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(Output::Json(v)) => {
            let s = if cli.json {
                serde_json::to_string(&v)
            } else {
                serde_json::to_string_pretty(&v)
            };
            let _ = writeln!(out, "{}", s.expect("json"));
            0
        }
        Ok(Output::Text(s)) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}
