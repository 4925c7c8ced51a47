//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use jsr2::cli::{run, RunConfig};
use jsr2_core::jsr::{canonical_route, lower_bound, upper_bound};
use jsr2_core::symmetrizer::canonicalize_via_eigenbasis;
use jsr2_core::{
    conjugate, decide_stability, detect_pattern, diagonal_symmetrizer, exact_fast_path, simulate_norm_decay,
    spd_feasibility, Mat2, MatrixFamily, Method, StabilityOptions, SwitchingSequence, Tol, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fam(members: Vec<Mat2>) -> MatrixFamily {
    MatrixFamily::with_default_tol(members).unwrap()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

// Oracle for the spectral radius: roots of λ² − tλ + det straight from the
// quadratic formula, no rescaling.
fn naive_radius(m: &[[f64; 2]; 2]) -> f64 {
    let t = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = t * t - 4.0 * det;
    if disc < 0.0 {
        det.abs().sqrt()
    } else {
        let r = disc.sqrt();
        ((t + r) / 2.0).abs().max(((t - r) / 2.0).abs())
    }
}

fn matmul(x: &[[f64; 2]; 2], y: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut z = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    z
}

// Oracle for the lower bound: every word of every length, running maximum.
fn naive_lower(members: &[[[f64; 2]; 2]], depth: usize) -> Vec<f64> {
    let mut best = Vec::with_capacity(depth);
    let mut level: Vec<[[f64; 2]; 2]> = vec![[[1.0, 0.0], [0.0, 1.0]]];
    let mut running = 0.0f64;
    for n in 1..=depth {
        let mut next = Vec::with_capacity(level.len() * members.len());
        for p in &level {
            for m in members {
                let q = matmul(p, m);
                running = running.max(naive_radius(&q).powf(1.0 / n as f64));
                next.push(q);
            }
        }
        level = next;
        best.push(running);
    }
    best
}

fn proportional_triple() -> MatrixFamily {
    fam(vec![
        Mat2::new(3f64.sqrt(), 1.0, 2.0, 1.3),
        Mat2::new(2f64.sqrt(), 10.0, 20.0, 7f64.sqrt()),
        Mat2::new(-1.0, 0.1, 0.2, 5f64.sqrt()),
    ])
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let tol = Tol::default();
    let (mut worst_asym, mut worst_radius, mut violations) = (0.0f64, 0.0f64, 0);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=3usize);
        let (b, c) = loop {
            let (b, c): (f64, f64) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            if b * c > 0.0 {
                break (b, c);
            }
        };
        let members: Vec<Mat2> = (0..=k)
            .map(|i| {
                let r = if i == 0 { 1.0 } else { rng.gen_range(-1.0..1.0) };
                Mat2::new(rng.gen_range(-10.0..10.0), r * b, r * c, rng.gen_range(-10.0..10.0))
            })
            .collect();
        let f = fam(members);
        let q = diagonal_symmetrizer(&detect_pattern(&f)).unwrap();
        for m in f.members() {
            let s = conjugate(&q, m, &tol).unwrap();
            let asym = (s.b - s.c).abs() / (1.0 + s.frobenius());
            let drift = rel(s.spectral_radius(), m.spectral_radius());
            worst_asym = worst_asym.max(asym);
            worst_radius = worst_radius.max(drift);
            if asym > 1e-9 || drift > 1e-9 {
                violations += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        violations == 0 && t < Duration::from_secs(5),
        format!(
            "diagonal symmetrizer, 1000 random pattern families: {violations} violations, \
             max asymmetry {worst_asym:.1e}, max radius drift {worst_radius:.1e}, {}",
            secs(t)
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let f = proportional_triple();
    let oracle = f.members().iter().map(|m| naive_radius(&m.rows())).fold(0.0, f64::max);
    let Some(fast) = exact_fast_path(&f) else { return outcome(false, "no fast path for the proportional triple") };
    let mut ok = fast.method == Method::ExactPattern && rel(fast.lower, oracle) <= 1e-12;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut at10 = 0.0;
    for depth in 1..=10 {
        let lo = lower_bound(&f, depth).unwrap().lower;
        worst_excess = worst_excess.max(lo - fast.lower);
        at10 = lo;
    }
    ok &= worst_excess <= 0.0 && rel(at10, fast.lower) <= 1e-9;
    let t = start.elapsed();
    outcome(
        ok && t < Duration::from_secs(10),
        format!(
            "proportional triple: method {}, rho {} (oracle {oracle}), depth-10 lower bound {at10}, \
             max excess over depths 1..10 {worst_excess:e}, {}",
            fast.method.as_str(),
            fast.lower,
            secs(t)
        ),
    )
}

fn criterion_3() -> Outcome {
    let s3 = 3f64.sqrt();
    let f = fam(vec![Mat2::new(2.0, 1.0, 0.0, 1.0), Mat2::new(-2.5, (2.0 * s3 - 11.0) / 2.0, 1.0, 4.0)]);
    let closed = 0.5 * (3.0 + (27.0 + 4.0 * s3).sqrt());
    let Some(r) = canonical_route(&f) else { return outcome(false, "canonicalization route did not apply") };
    // Independent evaluation of the same quantity.
    let direct = f.members().iter().map(|m| naive_radius(&m.rows())).fold(0.0, f64::max);
    outcome(
        r.method == Method::ExactCanonical && rel(r.lower, closed) <= 1e-12,
        format!(
            "eigenbasis pair: canonicalization route gives {} ({}); stated closed form (3+sqrt(27+4 sqrt3))/2 = {closed}; \
             direct max member radius {direct}; relative gap {:.3e}",
            r.lower,
            r.method.as_str(),
            rel(r.lower, closed)
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = Mat2::new(0.95, 0.03, 0.05, 0.97);
    let (mut checked, mut stated_miss, mut corrected_miss) = (0, 0, 0);
    for _ in 0..500 {
        let (b, c): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let f = fam(vec![a, Mat2::new(0.0, b, c, 0.0)]);
        let (t, _) = canonicalize_via_eigenbasis(&f, 0).unwrap();
        let m = t.members()[1];
        let product = m.b * m.c;
        let stated = 225.0 * b * b - 34.0 * b * c + c * c;
        let scale = 225.0 * b * b + 34.0 * (b * c).abs() + c * c;
        if stated.abs() <= 1e-9 * scale || product.abs() <= 1e-9 * (b * b + c * c) {
            continue;
        }
        checked += 1;
        if (product >= 0.0) != (stated <= 0.0) {
            stated_miss += 1;
        }
        if (product >= 0.0) != ((c - b) * (25.0 * b - 9.0 * c) >= 0.0) {
            corrected_miss += 1;
        }
    }
    outcome(
        stated_miss == 0,
        format!(
            "eigenbasis sign criterion: {stated_miss}/{checked} samples disagree with 225b^2-34bc+c^2 <= 0; \
             {corrected_miss}/{checked} disagree with (c-b)(25b-9c) >= 0"
        ),
    )
}

fn criterion_5() -> Outcome {
    let a0 = Mat2::new(-3.0, 3.5, -4.0, 4.5);
    let a1 = Mat2::diag(0.5, 1.0);
    let r = spd_feasibility(&fam(vec![a0, a1]));
    let rb = spd_feasibility(&fam(vec![Mat2::new(1.0, 0.0, 2.0, 0.5), Mat2::new(0.5, 1.0, 0.0, 1.0)]));

    // Oracle: fix s3 = 1 and solve the two constraint rows [b, d-a, -c] for
    // (s1, s2) by Cramer's rule.
    let row = |m: &Mat2| [m.b, m.d - m.a, -m.c];
    let (p, q) = (row(&a0), row(&a1));
    let det = p[0] * q[1] - p[1] * q[0];
    let s1 = (-p[2] * q[1] + p[1] * q[2]) / det;
    let s2 = (-p[0] * q[2] + p[2] * q[0]) / det;
    let n = (s1 * s1 + s2 * s2 + 1.0).sqrt();
    let oracle = [s1 / n, s2 / n, 1.0 / n];

    let mut gap = f64::INFINITY;
    let mut eqs = f64::INFINITY;
    if let [v] = r.subspace.basis.as_slice() {
        let sign = if v[2] * oracle[2] >= 0.0 { 1.0 } else { -1.0 };
        gap = (0..3).map(|i| (sign * v[i] - oracle[i]).abs()).fold(0.0, f64::max);
        eqs = v[1].abs().max((3.5 * v[0] + 4.0 * v[2]).abs());
    }
    let ok = !r.feasible() && !rb.feasible() && r.subspace.dim() == 1 && gap <= 1e-9 && eqs <= 1e-9;
    outcome(
        ok,
        format!(
            "skew pair: A-pair feasible={}, B-pair feasible={}, subspace dim {}, distance to solved basis {gap:.1e}, \
             residual of s2=0 and 3.5 s1+4 s3=0 {eqs:.1e}",
            r.feasible(),
            rb.feasible(),
            r.subspace.dim()
        ),
    )
}

fn criterion_6() -> Outcome {
    let f = fam(vec![Mat2::diag(0.9, 0.5), Mat2::new(0.0, 2.0, 0.3, 0.0)]);
    let seq = SwitchingSequence::new((0..100).map(|i| (i % 2, 1)).collect()).unwrap();
    let last = simulate_norm_decay(&f, &seq).unwrap().last().unwrap().log10_norm;
    let rho = exact_fast_path(&f).map_or(f64::NAN, |r| r.lower);
    let lo = lower_bound(&f, 10).unwrap().lower;
    outcome(
        last < -2.0 && rel(rho, 0.9) <= 1e-12 && (lo - 0.9).abs() <= 1e-9,
        format!("switched decay: log10 norm after 100 blocks {last}, fast path rho {rho}, depth-10 lower bound {lo}"),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut worst, mut violations) = (0.0f64, 0);
    for _ in 0..200 {
        let mut mat = || {
            Mat2::new(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            )
        };
        let f = fam(vec![mat(), mat()]);
        let rows: Vec<_> = f.members().iter().map(Mat2::rows).collect();
        let oracle = naive_lower(&rows, 8);
        for depth in 1..=8 {
            let got = lower_bound(&f, depth).unwrap().lower;
            let err = (got - oracle[depth - 1]).abs() / oracle[depth - 1].max(1.0);
            worst = worst.max(err);
            if err > 1e-12 {
                violations += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        violations == 0 && t < Duration::from_secs(60),
        format!(
            "necklace vs naive enumeration, 200 families x depths 1..8: {violations} violations, max error {worst:.1e}, {}",
            secs(t)
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut violations = Vec::new();
    for i in 0..500 {
        let k = rng.gen_range(1..=3usize);
        let depth = rng.gen_range(1..=6usize);
        let f = fam((0..k)
            .map(|_| {
                Mat2::new(
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                )
            })
            .collect());
        let s: f64 = rng.gen_range(0.1..10.0);
        let lo = lower_bound(&f, depth).unwrap().lower;
        let hi = upper_bound(&f, depth).unwrap();
        let member_max = f.max_member_radius().1;
        let g = f.scaled(s).unwrap();
        let lo_s = lower_bound(&g, depth).unwrap().lower;
        let hi_s = upper_bound(&g, depth).unwrap();
        // Bounds are reported as 2^(log2(x)/n); allow for the last-bit rounding.
        if member_max > lo * (1.0 + 1e-12) || lo > hi * (1.0 + 1e-12) {
            violations.push(format!("sandwich #{i}"));
        }
        if rel(lo_s, s * lo) > 1e-9 || rel(hi_s, s * hi) > 1e-9 {
            violations.push(format!("homogeneity #{i}"));
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "sandwich and homogeneity, 500 random families at depths 1..6: {} violations {:?}",
            violations.len(),
            violations
        ),
    )
}

fn criterion_9() -> Outcome {
    let f = proportional_triple();
    let opts = StabilityOptions::default();
    let scaled = decide_stability(&f.scaled(1.0 / 17.0).unwrap(), &opts).verdict;
    let unscaled = decide_stability(&f, &opts).verdict;
    let marginal_fam = fam(vec![Mat2::diag(1.0, 0.5), Mat2::new(0.5, 0.2, 0.1, 0.3)]);
    let marginal = decide_stability(&marginal_fam, &opts).verdict;

    // Same entry point as the binary: argument parsing, file loading, exit code.
    let examples = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../jsr2/examples");
    let code = |file: &str| {
        let path = examples.join(file);
        RunConfig::parse_from(["jsr2", "stability", path.to_str().unwrap()]).map_or(-1, |cfg| run(&cfg).code)
    };
    let codes = [code("proportional_scaled.json"), code("proportional.json"), code("marginal.json")];
    outcome(
        scaled == Verdict::Stable
            && unscaled == Verdict::Unstable
            && marginal == Verdict::Marginal
            && codes == [0, 1, 2],
        format!(
            "stability: 1/17-scaled {}, unscaled {}, max-rho-1 pattern family {}; CLI exit codes {codes:?}",
            scaled.as_str(),
            unscaled.as_str(),
            marginal.as_str()
        ),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (id, check) in criteria {
        let o = check();
        println!("{} criterion {id}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
