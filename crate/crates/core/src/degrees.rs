//! Degree statistics: average degree, density, degree distributions, the
//! Kolmogorov–Smirnov distance between cumulative distributions, and a
//! least-squares power-law fit.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Snapshot;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasicStats {
    pub average_degree: f64,
    pub density: f64,
    pub max_degree: u32,
}

/// `d° = 2m/n` and `δ = 2m/(n(n-1))`, each with a single rounding.
pub fn basic_stats(snapshot: &Snapshot) -> Result<BasicStats> {
    let n = u64::from(snapshot.n());
    if n < 2 {
        return Err(Error::TooFewNodes { needed: 2, actual: n });
    }
    let twice_m = 2 * snapshot.m();
    Ok(BasicStats {
        average_degree: twice_m as f64 / n as f64,
        density: twice_m as f64 / (n * (n - 1)) as f64,
        max_degree: snapshot.max_degree(),
    })
}

/// Sparse histogram: degree → number of nodes with exactly that degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DegreeDistribution {
    pub counts: BTreeMap<u32, u64>,
    pub n: u64,
    pub max_degree: u32,
}

impl DegreeDistribution {
    pub fn from_degrees<I: IntoIterator<Item = u32>>(degrees: I) -> Self {
        let mut dist = Self::default();
        for d in degrees {
            *dist.counts.entry(d).or_insert(0) += 1;
            dist.n += 1;
            dist.max_degree = dist.max_degree.max(d);
        }
        dist
    }

    pub fn from_counts<I: IntoIterator<Item = (u32, u64)>>(counts: I) -> Self {
        let mut dist = Self::default();
        for (k, c) in counts {
            if c == 0 {
                continue;
            }
            *dist.counts.entry(k).or_insert(0) += c;
            dist.n += c;
            dist.max_degree = dist.max_degree.max(k);
        }
        dist
    }

    /// Proportion of nodes with degree exactly `k`.
    pub fn p(&self, k: u32) -> f64 {
        match self.counts.get(&k) {
            Some(&c) => c as f64 / self.n as f64,
            None => 0.0,
        }
    }

    pub fn mean_degree(&self) -> f64 {
        let total: u64 = self.counts.iter().map(|(&k, &c)| u64::from(k) * c).sum();
        total as f64 / self.n as f64
    }
}

pub fn degree_distribution(snapshot: &Snapshot) -> DegreeDistribution {
    DegreeDistribution::from_degrees(snapshot.degrees())
}

/// `q_k`, the proportion of nodes of degree at least `k`, stored at each
/// degree present in the distribution. Between stored points `q` is a step
/// function; beyond the maximum degree it is 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulativeDistribution {
    /// `(k, q_k)` in ascending `k`.
    pub points: Vec<(u32, f64)>,
}

impl CumulativeDistribution {
    pub fn max_degree(&self) -> u32 {
        self.points.last().map_or(0, |&(k, _)| k)
    }

    pub fn q(&self, k: u32) -> f64 {
        let i = self.points.partition_point(|&(d, _)| d < k);
        self.points.get(i).map_or(0.0, |&(_, q)| q)
    }
}

/// Suffix sums of the distribution, taken over integer counts so each `q_k`
/// is a single division.
pub fn cumulative(dist: &DegreeDistribution) -> CumulativeDistribution {
    let mut points = Vec::with_capacity(dist.counts.len());
    let mut at_least = 0u64;
    for (&k, &c) in dist.counts.iter().rev() {
        at_least += c;
        points.push((k, at_least as f64 / dist.n as f64));
    }
    points.reverse();
    CumulativeDistribution { points }
}

/// `max_k |q_k - q'_k|` over `k ≥ 1`.
///
/// Both sides are step functions that only change right after a stored
/// degree, so it suffices to evaluate at `k = 1` and at every stored `k ≥ 1`.
pub fn ks_statistic(a: &CumulativeDistribution, b: &CumulativeDistribution) -> f64 {
    let ks = a.points.iter().chain(&b.points).map(|&(k, _)| k).filter(|&k| k >= 1);
    std::iter::once(1).chain(ks).map(|k| (a.q(k) - b.q(k)).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    /// Negated slope of the log-log regression line.
    pub alpha: f64,
    /// Coefficient of determination of the regression.
    pub r2: f64,
}

/// Fits `ln p_k = c - alpha ln k` by ordinary least squares over the
/// distribution's points with `k ≥ 1`.
pub fn powerlaw_fit(dist: &DegreeDistribution) -> Result<PowerLawFit> {
    let points: Vec<(f64, f64)> =
        dist.counts.iter().filter(|&(&k, _)| k >= 1).map(|(&k, &c)| (f64::from(k), c as f64 / dist.n as f64)).collect();
    fit_log_log(&points)
}

/// Least-squares line through `(ln x, ln y)` for points with `x, y > 0`.
pub fn fit_log_log(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    let logs: Vec<(f64, f64)> =
        points.iter().filter(|&&(x, y)| x > 0.0 && y > 0.0).map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len();
    let distinct_x = {
        let mut xs: Vec<f64> = logs.iter().map(|p| p.0).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs.len()
    };
    if distinct_x < 2 {
        return Err(Error::TooFewFitPoints(distinct_x));
    }
    let count = len as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / count;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &logs {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let ss_res: f64 = logs
        .iter()
        .map(|&(x, y)| {
            let e = y - (mean_y + slope * (x - mean_x));
            e * e
        })
        .sum();
    // a flat line is fitted exactly even though there is no variance to explain
    let r2 = if syy <= f64::EPSILON * f64::EPSILON * count * (1.0 + mean_y * mean_y) {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(PowerLawFit { alpha: -slope, r2 })
}
