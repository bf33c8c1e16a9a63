//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_rational::Ratio;
use overlap_lab::density::{
    count_w_hat_by_formula, enumerate_counts, odd_totient_ratio_sum, LIMIT_ODD_TOTIENT_RATIO,
    LIMIT_TOTIENT_SUM, LIMIT_W, LIMIT_W_HAT, LIMIT_W_TILDE,
};
use overlap_lab::geometry::{endpoint_levels, measure_and_dimension};
use overlap_lab::numtheory::{in_gamma_level, totient_table};
use overlap_lab::oracles::{
    candidate_levels, check_polynomial_divisibility, coprime_pairs_by_sum, exhaustive_depth,
    find_overlap_witness, rank_equality_holds, search_overlap, verify_sweep,
};
use overlap_lab::{classify, ReducedRational};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Classifier, exhaustive witness search and divisibility agree on every
/// coprime p < q with p + q ≤ 60.
fn ac1_three_way_agreement() -> Outcome {
    let report = verify_sweep(60, false).map_err(err)?;
    ensure(report.all_agree(), || {
        format!("disagreements: {:?}", report.disagreements)
    })?;
    let mut witnesses = 0;
    for t in coprime_pairs_by_sum(60) {
        if let Some(w) = find_overlap_witness(t, exhaustive_depth(t)).map_err(err)? {
            ensure(w.verify(), || format!("invalid witness for {t}: {w:?}"))?;
            witnesses += 1;
        }
    }
    ensure(witnesses == report.overlaps, || {
        "witness count differs from overlap count".into()
    })?;
    Ok(format!(
        "{} pairs, {} overlaps, 0 disagreements",
        report.pairs_checked, report.overlaps
    ))
}

fn rank_sweep() -> Result<Vec<(u64, u64, u32, bool)>, String> {
    let mut rows = Vec::new();
    for t in coprime_pairs_by_sum(40) {
        for ell in candidate_levels(t).map_err(err)? {
            rows.push((
                t.p(),
                t.q(),
                ell,
                rank_equality_holds(t.p(), t.q(), ell).map_err(err)?,
            ));
        }
    }
    Ok(rows)
}

/// rank(A|b) = rank(A) ⇔ p ∈ Γ_ℓ or q ∈ Γ_ℓ, for p + q ≤ 40 and every ℓ with τ_ℓ ≤ 3p + 3q.
fn ac2_rank_gamma_levels() -> Outcome {
    let rows = rank_sweep()?;
    let mut failures = Vec::new();
    for &(p, q, ell, equal) in &rows {
        let expected = in_gamma_level(p, ell).map_err(err)? || in_gamma_level(q, ell).map_err(err)?;
        if equal != expected {
            failures.push((p, q, ell));
        }
    }
    ensure(failures.is_empty(), || format!("failures: {failures:?}"))?;
    Ok(format!("{} (p, q, ell) instances, 0 failures", rows.len()))
}

/// rank equality ⇔ polynomial divisibility on the same sweep.
fn ac3_rank_matches_divisibility() -> Outcome {
    let rows = rank_sweep()?;
    let mut failures = Vec::new();
    for &(p, q, ell, equal) in &rows {
        if equal != check_polynomial_divisibility(p, q, ell).map_err(err)? {
            failures.push((p, q, ell));
        }
    }
    ensure(failures.is_empty(), || format!("failures: {failures:?}"))?;
    Ok(format!("{} (p, q, ell) instances, 0 failures", rows.len()))
}

/// t_n = 1/(3·4ⁿ − 1): overlap, and the minimal witness is the zero-padded
/// pair 0 (3t) 0^{n−1} (3t+3) versus (3t) 0^{n+1}.
fn ac4_example_family() -> Outcome {
    for n in 1..=5u32 {
        let q = 3 * 4u64.pow(n) - 1;
        ensure(classify(1, q).map_err(err)?.overlap, || {
            format!("1/{q} not classified as overlap")
        })?;
        let t = ReducedRational::proper_reduced(1, q).map_err(err)?;
        let search = search_overlap(t, exhaustive_depth(t)).map_err(err)?;
        let w = search.witness.ok_or_else(|| format!("no witness for 1/{q}"))?;
        let (three_t, top) = (3, 3 + 3 * q);
        let mut long = vec![0, three_t];
        long.extend(std::iter::repeat_n(0, n as usize - 1));
        long.push(top);
        let mut short = vec![three_t];
        short.extend(std::iter::repeat_n(0, n as usize + 1));
        ensure(w.depth == n as usize + 2, || {
            format!("1/{q}: depth {} != {}", w.depth, n + 2)
        })?;
        let matches = (w.block_i == long && w.block_j == short) || (w.block_i == short && w.block_j == long);
        ensure(matches, || {
            format!("1/{q}: witness {w:?} is not the padded example")
        })?;
        ensure(w.verify(), || {
            format!("1/{q}: witness fails the integer identity")
        })?;
    }
    Ok("n = 1..5, depths 3..7, witnesses equal the padded example".into())
}

const DENSITY_TOLERANCES: [(u64, f64); 3] = [(100, 0.03), (1000, 0.01), (5000, 0.005)];

fn density_check(
    label: &str,
    limit: f64,
    pick: fn(&overlap_lab::DensityReport) -> f64,
) -> Result<String, String> {
    let mut parts = Vec::new();
    for (n, tol) in DENSITY_TOLERANCES {
        let r = enumerate_counts(n).map_err(err)?;
        let delta = (pick(&r) - limit).abs();
        ensure(delta <= tol, || {
            format!("{label} at N={n}: |{} − {limit}| = {delta} > {tol}", pick(&r))
        })?;
        parts.push(format!("N={n} Δ={delta:.2e}"));
    }
    Ok(format!("{label}: {}", parts.join(", ")))
}

fn ac5_density_w() -> Outcome {
    density_check("W vs 5/(3π²)", LIMIT_W, |r| r.ratio_w())
}

fn ac6_density_w_hat_and_tilde() -> Outcome {
    let a = density_check("Ŵ vs 4/(3π²)", LIMIT_W_HAT, |r| r.ratio_w_hat())?;
    let b = density_check("W̃ vs 10/(3π²)", LIMIT_W_TILDE, |r| r.ratio_w_tilde())?;
    Ok(format!("{a}; {b}"))
}

fn ac7_formula_exact() -> Outcome {
    for n in 1..=500u64 {
        let formula = count_w_hat_by_formula(n).map_err(err)?;
        let direct = enumerate_counts(n).map_err(err)?.count_w_hat;
        ensure(formula == direct, || {
            format!("N={n}: formula {formula} != enumeration {direct}")
        })?;
    }
    Ok("N = 1..500, exact equality".into())
}

fn ac8_totient_limits() -> Outcome {
    let n = 100_000u64;
    let odd = odd_totient_ratio_sum(n).map_err(err)?;
    let d1 = (odd.value - LIMIT_ODD_TOTIENT_RATIO).abs();
    ensure(d1 <= 1e-3, || {
        format!("odd totient mean {} off by {d1}", odd.value)
    })?;
    let sum: u64 = totient_table(n as usize).iter().sum();
    let ratio = sum as f64 / (n as f64 * n as f64);
    let d2 = (ratio - LIMIT_TOTIENT_SUM).abs();
    ensure(d2 <= 1e-3, || format!("totient sum ratio {ratio} off by {d2}"))?;
    Ok(format!("8/π² Δ={d1:.2e}, 3/π² Δ={d2:.2e}"))
}

fn ac9_geometry() -> Outcome {
    let t = |p, q| ReducedRational::proper_reduced(p, q).map_err(err);
    for level in 1..=8 {
        let m = measure_and_dimension(t(1, 2)?, level).map_err(err)?;
        ensure(m.measure() == Ratio::new(3, 2), || {
            format!("1/2 level {level}: measure {}", m.measure())
        })?;
    }
    let m = measure_and_dimension(t(2, 3)?, 6).map_err(err)?;
    ensure(m.measure() >= Ratio::new(1, 3), || {
        format!("2/3 level 6: measure {}", m.measure())
    })?;
    for (p, q) in [(1, 3), (1, 11)] {
        let tt = t(p, q)?;
        let m = measure_and_dimension(tt, 6).map_err(err)?;
        ensure(m.d_n < 4u64.pow(6) && m.dim_estimate < 1.0, || {
            format!("{p}/{q} level 6: D_6 = {}", m.d_n)
        })?;
        let depth = find_overlap_witness(tt, exhaustive_depth(tt))
            .map_err(err)?
            .ok_or_else(|| format!("{p}/{q}: no witness"))?
            .depth as u32;
        let levels = endpoint_levels(tt, depth).map_err(err)?;
        let d = levels[depth as usize - 1].distinct_count() as u64;
        ensure(d < 4u64.pow(depth), || {
            format!("{p}/{q}: D_{depth} = {d} is not collapsed")
        })?;
    }
    Ok(format!(
        "1/2 measure 3/2 on levels 1..8; 2/3 measure {} ≥ 1/3; 1/3 and 1/11 collapse",
        m.measure()
    ))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_overlap-lab"))
        .args(args)
        .output()
        .map_err(err)?;
    ensure(out.status.success(), || {
        format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(out.stdout)
}

fn ac10_determinism(dir: &Path) -> Outcome {
    let commands: Vec<Vec<&str>> = vec![
        vec!["classify", "--p", "1", "--q", "11", "--format", "json"],
        vec!["witness", "--p", "1", "--q", "3071", "--format", "json"],
        vec!["witness", "--p", "1", "--q", "2", "--format", "text"],
        vec!["verify", "--max-sum", "60", "--format", "json"],
        vec!["verify", "--max-sum", "40", "--jobs", "3"],
        vec!["density", "--N", "100,1000,5000", "--format", "csv"],
        vec![
            "measure", "--p", "1", "--q", "3", "--level", "6", "--format", "json",
        ],
        vec![
            "measure", "--p", "2", "--q", "3", "--level", "6", "--format", "csv",
        ],
    ];
    for cmd in &commands {
        let first = run_cli(cmd)?;
        let second = run_cli(cmd)?;
        ensure(!first.is_empty() && first == second, || {
            format!("{cmd:?} is not byte-identical")
        })?;
    }
    for format in ["pgm", "svg"] {
        let paths = [dir.join(format!("a.{format}")), dir.join(format!("b.{format}"))];
        for p in &paths {
            run_cli(&[
                "grid",
                "--N",
                "100",
                "--format",
                format,
                "--output",
                p.to_str().unwrap(),
            ])?;
        }
        let (a, b) = (
            std::fs::read(&paths[0]).map_err(err)?,
            std::fs::read(&paths[1]).map_err(err)?,
        );
        ensure(a == b, || format!("grid {format} differs between runs"))?;
    }
    Ok(format!(
        "{} commands plus PGM/SVG grids byte-identical across runs",
        commands.len()
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        (
            "AC1 three-way oracle agreement, p+q <= 60",
            Box::new(ac1_three_way_agreement),
        ),
        (
            "AC2 rank equality <=> Gamma_l membership, p+q <= 40",
            Box::new(ac2_rank_gamma_levels),
        ),
        (
            "AC3 rank equality <=> divisibility, p+q <= 40",
            Box::new(ac3_rank_matches_divisibility),
        ),
        (
            "AC4 example family t_n = 1/(3*4^n - 1)",
            Box::new(ac4_example_family),
        ),
        ("AC5 density of W", Box::new(ac5_density_w)),
        (
            "AC6 density of W_hat and W_tilde",
            Box::new(ac6_density_w_hat_and_tilde),
        ),
        (
            "AC7 W_hat formula equals enumeration, N <= 500",
            Box::new(ac7_formula_exact),
        ),
        ("AC8 totient averages at N = 1e5", Box::new(ac8_totient_limits)),
        ("AC9 geometry dichotomy", Box::new(ac9_geometry)),
        (
            "AC10 determinism of CLI artifacts",
            Box::new(move || ac10_determinism(dir.path())),
        ),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2}s): {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
