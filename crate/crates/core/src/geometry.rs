//! Level-`n` approximations of `C_t`.
//!
//! Endpoints are kept as integers scaled by `q·4ⁿ`: the level-`n` left
//! endpoints are `v = Σ d_m 4^{n−m}` with `d_m ∈ {0, 3p, 3q, 3p+3q}`, and a
//! level-`n` cylinder is `[v, v + (p+q)]` in the same units, since `C_t` has
//! diameter `1 + t`.

use std::fmt::Write as _;
use std::io::Write;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{in_variant, ReducedRational, Variant};
use crate::error::{Error, Result};
use crate::oracles::DigitSet;

/// Deepest level served; `4^12` endpoints is the memory ceiling.
pub const MAX_LEVEL: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelApproximation {
    pub t: ReducedRational,
    pub level: u32,
    /// Sorted, distinct scaled left endpoints.
    pub endpoints: Vec<u64>,
}

impl LevelApproximation {
    /// `D_n`, the number of distinct level-`n` endpoints.
    pub fn distinct_count(&self) -> usize {
        self.endpoints.len()
    }

    /// Cylinder length `(1 + t)/4ⁿ`.
    pub fn interval_length(&self) -> Ratio<u64> {
        Ratio::new(self.t.p() + self.t.q(), self.scale())
    }

    fn scale(&self) -> u64 {
        self.t.q() << (2 * self.level)
    }

    /// `D_n = 4ⁿ`: no two level-`n` words share an endpoint.
    pub fn is_injective(&self) -> bool {
        self.endpoints.len() as u64 == 1u64 << (2 * self.level)
    }

    /// Exact Lebesgue measure of the union of level-`n` cylinders.
    pub fn union_measure(&self) -> Ratio<u64> {
        let len = self.t.p() + self.t.q();
        let covered: u64 = self
            .endpoints
            .windows(2)
            .map(|w| (w[1] - w[0]).min(len))
            .sum::<u64>()
            + if self.endpoints.is_empty() { 0 } else { len };
        Ratio::new(covered, self.scale())
    }
}

fn check_depth(t: ReducedRational, level: u32) -> Result<()> {
    if level == 0 {
        return Err(Error::NotPositive("level"));
    }
    if level > MAX_LEVEL {
        return Err(Error::Overflow("level endpoints beyond 4^12"));
    }
    // largest right end (p+q)·4ⁿ and the scale q·4ⁿ must both fit
    (t.p() + t.q())
        .checked_mul(1u64 << (2 * level))
        .ok_or(Error::Overflow("scaled endpoints"))?;
    Ok(())
}

/// Endpoint sets for every level `1..=n`.
pub fn endpoint_levels(t: ReducedRational, n: u32) -> Result<Vec<LevelApproximation>> {
    let t = ReducedRational::proper_reduced(t.p(), t.q())?;
    check_depth(t, n)?;
    let digits = DigitSet::new(t)?.digits();
    let mut current = vec![0u64];
    let mut out = Vec::with_capacity(n as usize);
    for level in 1..=n {
        let mut next: Vec<u64> = current
            .iter()
            .flat_map(|&v| digits.iter().map(move |&d| 4 * v + d))
            .collect();
        next.sort_unstable();
        next.dedup();
        out.push(LevelApproximation {
            t,
            level,
            endpoints: next.clone(),
        });
        current = next;
    }
    Ok(out)
}

pub fn level_endpoints(t: ReducedRational, n: u32) -> Result<LevelApproximation> {
    Ok(endpoint_levels(t, n)?.pop().expect("n ≥ 1 levels"))
}

pub fn write_endpoints_csv<W: Write>(levels: &[LevelApproximation], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["level", "scaled_endpoint"])?;
    for l in levels {
        for v in &l.endpoints {
            w.write_record([l.level.to_string(), v.to_string()])?;
        }
    }
    w.flush()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureEstimate {
    pub p: u64,
    pub q: u64,
    pub level: u32,
    pub measure_num: u64,
    pub measure_den: u64,
    #[serde(rename = "D_n")]
    pub d_n: u64,
    /// `log D_n / (n log 4)`.
    pub dim_estimate: f64,
}

impl MeasureEstimate {
    pub fn from_level(level: &LevelApproximation) -> Self {
        let measure = level.union_measure();
        let d_n = level.distinct_count() as u64;
        Self {
            p: level.t.p(),
            q: level.t.q(),
            level: level.level,
            measure_num: *measure.numer(),
            measure_den: *measure.denom(),
            d_n,
            dim_estimate: (d_n as f64).ln() / (f64::from(level.level) * 4f64.ln()),
        }
    }

    pub fn measure(&self) -> Ratio<u64> {
        Ratio::new(self.measure_num, self.measure_den)
    }
}

pub fn measure_and_dimension(t: ReducedRational, n: u32) -> Result<MeasureEstimate> {
    Ok(MeasureEstimate::from_level(&level_endpoints(t, n)?))
}

/// `W̃ ∩ [1, N]²`, row-major with `q` down and `p` across.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WGrid {
    pub n: u64,
    cells: Vec<bool>,
}

impl WGrid {
    pub fn get(&self, p: u64, q: u64) -> bool {
        self.cells[((q - 1) * self.n + (p - 1)) as usize]
    }

    pub fn true_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Binary PGM, one byte per cell: 0 for members, 255 otherwise.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.n, self.n).into_bytes();
        out.extend(self.cells.iter().map(|&c| if c { 0u8 } else { 255 }));
        out
    }

    pub fn to_svg(&self) -> String {
        let n = self.n;
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{n}\" height=\"{n}\" viewBox=\"0 0 {n} {n}\" shape-rendering=\"crispEdges\">\n\
             <rect width=\"{n}\" height=\"{n}\" fill=\"white\"/>\n"
        );
        for q in 1..=n {
            for p in 1..=n {
                if self.get(p, q) {
                    let _ = writeln!(
                        s,
                        "<rect x=\"{}\" y=\"{}\" width=\"1\" height=\"1\"/>",
                        p - 1,
                        q - 1
                    );
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["p", "q", "in_w_tilde"])?;
        for q in 1..=self.n {
            for p in 1..=self.n {
                let cell = u8::from(self.get(p, q));
                w.write_record([p.to_string(), q.to_string(), cell.to_string()])?;
            }
        }
        w.flush()
    }
}

pub fn render_w_grid(n: u64) -> Result<WGrid> {
    if n == 0 {
        return Err(Error::NotPositive("N"));
    }
    let side = usize::try_from(n).map_err(|_| Error::Overflow("grid size"))?;
    side.checked_mul(side)
        .filter(|&c| c <= 1 << 30)
        .ok_or(Error::Overflow("grid size"))?;
    let cells: Vec<bool> = (1..=n)
        .into_par_iter()
        .flat_map_iter(|q| (1..=n).map(move |p| in_variant(p, q, Variant::WTilde)))
        .collect();
    Ok(WGrid { n, cells })
}
