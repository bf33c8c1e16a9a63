use std::fmt::Write as _;

use overlap_lab::density::{self, DensityReport};
use overlap_lab::geometry::{self, endpoint_levels, MeasureEstimate};
use overlap_lab::numtheory::GammaWitness;
use overlap_lab::oracles::{self, exhaustive_depth, search_overlap};
use overlap_lab::{classify, ReducedRational};
use serde::Serialize;

use crate::args::{Cli, Command, Format, Pair};
use crate::output::{emit, json};
use crate::CliError;

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let bytes = pool.install(|| render(cli))?;
    emit(cli.output.as_deref(), &bytes)
}

fn unsupported(command: &str, format: Format, allowed: &[Format]) -> CliError {
    let allowed: Vec<String> = allowed.iter().map(ToString::to_string).collect();
    CliError::Usage(format!(
        "{command} does not support --format {format} (use one of: {})",
        allowed.join(", ")
    ))
}

fn render(cli: &Cli) -> Result<Vec<u8>, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Classify(pair) => classify_cmd(*pair, format),
        Command::Witness {
            pair,
            max_depth,
            human,
        } => witness_cmd(*pair, *max_depth, *human, format),
        Command::Verify { max_sum, no_rank } => verify_cmd(*max_sum, !*no_rank, format),
        Command::Density { n } => density_cmd(n, format),
        Command::Measure { pair, level } => measure_cmd(*pair, *level, format),
        Command::Grid { n } => grid_cmd(*n, format),
    }
}

fn describe_gamma(name: &str, value: u64, w: Option<GammaWitness>) -> String {
    match w {
        Some(w) => format!("{name} = {value} in Gamma: (2*{} - 1) * 2^{}", w.k, 2 * w.ell - 1),
        None => format!("{name} = {value} not in Gamma"),
    }
}

fn classify_cmd(pair: Pair, format: Format) -> Result<Vec<u8>, CliError> {
    let c = classify(pair.p, pair.q)?;
    match format {
        Format::Json => Ok(json(&c)),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "t = {}/{} (input {}/{}, {})",
                c.reduced_p, c.reduced_q, c.p, c.q, c.regime
            );
            let _ = writeln!(s, "exact overlap: {}", c.overlap);
            let _ = writeln!(s, "{}", describe_gamma("p", c.reduced_p, c.gamma_p));
            let _ = writeln!(s, "{}", describe_gamma("q", c.reduced_q, c.gamma_q));
            Ok(s.into_bytes())
        }
        other => Err(unsupported("classify", other, &[Format::Json, Format::Text])),
    }
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    #[serde(flatten)]
    witness: &'a oracles::OverlapWitness,
    #[serde(skip_serializing_if = "Option::is_none")]
    human: Option<String>,
}

#[derive(Serialize)]
struct NoWitnessJson {
    p: u64,
    q: u64,
    witness: Option<()>,
    max_depth: u64,
    exhaustive: bool,
}

fn witness_cmd(pair: Pair, max_depth: Option<u64>, human: bool, format: Format) -> Result<Vec<u8>, CliError> {
    let t = ReducedRational::proper(pair.p, pair.q)?;
    let depth = max_depth.unwrap_or_else(|| exhaustive_depth(t));
    let search = search_overlap(t, depth)?;
    match (format, &search.witness) {
        (Format::Json, Some(w)) => Ok(json(&WitnessJson {
            witness: w,
            human: human.then(|| w.render_human()),
        })),
        (Format::Json, None) => Ok(json(&NoWitnessJson {
            p: t.p(),
            q: t.q(),
            witness: None,
            max_depth: depth,
            exhaustive: search.exhaustive,
        })),
        (Format::Text, Some(w)) => {
            let blocks = if human {
                w.render_human()
            } else {
                let join = |b: &[u64]| b.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                format!("({}) ~ ({})", join(&w.block_i), join(&w.block_j))
            };
            Ok(format!("t = {t}: exact overlap at depth {}\n{blocks}\n", w.depth).into_bytes())
        }
        (Format::Text, None) if search.exhaustive => Ok(format!(
            "t = {t}: none within exhaustive bound (depth {depth}); no exact overlap\n"
        )
        .into_bytes()),
        (Format::Text, None) => Ok(format!(
            "t = {t}: none within depth {depth} (not exhaustive; the bound is {})\n",
            exhaustive_depth(t)
        )
        .into_bytes()),
        (other, _) => Err(unsupported("witness", other, &[Format::Json, Format::Text])),
    }
}

fn verify_cmd(max_sum: u64, with_rank: bool, format: Format) -> Result<Vec<u8>, CliError> {
    let report = oracles::verify_sweep(max_sum, with_rank)?;
    let bytes = match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut s = format!(
                "checked {} coprime pairs with p + q <= {} ({} with exact overlap)\noracles: classifier, witness search, divisibility{}\ndisagreements: {}\n",
                report.pairs_checked,
                report.max_sum,
                report.overlaps,
                if with_rank { ", rank" } else { "" },
                report.disagreements.len()
            );
            for d in &report.disagreements {
                let _ = writeln!(
                    s,
                    "  {}/{}: classifier={} witness={} divisibility={} rank={:?}",
                    d.p, d.q, d.classifier, d.witness, d.divisibility, d.rank
                );
            }
            s.into_bytes()
        }
        other => return Err(unsupported("verify", other, &[Format::Json, Format::Text])),
    };
    if !report.all_agree() {
        // still show what disagreed
        crate::output::emit(None, &bytes)?;
        return Err(CliError::Disagreement(format!(
            "{} oracle disagreements",
            report.disagreements.len()
        )));
    }
    Ok(bytes)
}

fn density_cmd(ns: &[u64], format: Format) -> Result<Vec<u8>, CliError> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let reports: Vec<DensityReport> = ns
        .iter()
        .map(|&n| density::enumerate_counts(n))
        .collect::<Result<_, _>>()?;
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            density::write_csv(&reports, &mut buf)?;
            Ok(buf)
        }
        Format::Json => Ok(json(&reports.iter().map(DensityReport::row).collect::<Vec<_>>())),
        Format::Text => {
            let mut s = format!(
                "{:>8} {:>12} {:>12} {:>12} {:>10} {:>10} {:>10}\n",
                "N", "#W", "#W_hat", "#W_tilde", "W/N^2", "W_hat/N^2", "W~/N^2"
            );
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{:>8} {:>12} {:>12} {:>12} {:>10.6} {:>10.6} {:>10.6}",
                    r.n,
                    r.count_w,
                    r.count_w_hat,
                    r.count_w_tilde,
                    r.ratio_w(),
                    r.ratio_w_hat(),
                    r.ratio_w_tilde()
                );
            }
            let _ = writeln!(
                s,
                "{:>8} {:>12} {:>12} {:>12} {:>10.6} {:>10.6} {:>10.6}",
                "limit",
                "",
                "",
                "",
                density::LIMIT_W,
                density::LIMIT_W_HAT,
                density::LIMIT_W_TILDE
            );
            Ok(s.into_bytes())
        }
        other => Err(unsupported(
            "density",
            other,
            &[Format::Csv, Format::Json, Format::Text],
        )),
    }
}

fn measure_cmd(pair: Pair, level: u32, format: Format) -> Result<Vec<u8>, CliError> {
    let t = ReducedRational::proper(pair.p, pair.q)?;
    let levels = endpoint_levels(t, level)?;
    let last = levels.last().expect("level ≥ 1");
    let estimate = MeasureEstimate::from_level(last);
    match format {
        Format::Json => Ok(json(&estimate)),
        Format::Csv => {
            let mut buf = Vec::new();
            geometry::write_endpoints_csv(&levels, &mut buf)?;
            Ok(buf)
        }
        Format::Text => {
            let mut s = format!(
                "t = {t}\n{:>5} {:>10} {:>24} {:>12}\n",
                "level", "D_n", "measure", "dim_est"
            );
            for l in &levels {
                let m = MeasureEstimate::from_level(l);
                let _ = writeln!(
                    s,
                    "{:>5} {:>10} {:>24} {:>12.9}",
                    m.level,
                    m.d_n,
                    format!("{}/{}", m.measure_num, m.measure_den),
                    m.dim_estimate
                );
            }
            Ok(s.into_bytes())
        }
        other => Err(unsupported(
            "measure",
            other,
            &[Format::Json, Format::Csv, Format::Text],
        )),
    }
}

fn grid_cmd(n: u64, format: Format) -> Result<Vec<u8>, CliError> {
    let grid = geometry::render_w_grid(n)?;
    match format {
        Format::Pgm => Ok(grid.to_pgm()),
        Format::Svg => Ok(grid.to_svg().into_bytes()),
        Format::Csv => {
            let mut buf = Vec::new();
            grid.write_csv(&mut buf)?;
            Ok(buf)
        }
        Format::Text => {
            let mut s = String::new();
            for q in 1..=n {
                for p in 1..=n {
                    s.push(if grid.get(p, q) { '#' } else { '.' });
                }
                s.push('\n');
            }
            Ok(s.into_bytes())
        }
        Format::Json => Err(unsupported(
            "grid",
            format,
            &[Format::Pgm, Format::Svg, Format::Csv, Format::Text],
        )),
    }
}
