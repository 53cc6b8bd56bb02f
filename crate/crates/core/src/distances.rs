//! Average distance estimation and diameter bounds on the giant component.
//!
//! Every routine here runs breadth-first searches from nodes of the giant
//! component, so nodes outside it are never reached and never counted.
//! The per-source mean distance includes the source itself at distance 0,
//! i.e. `d(v) = (1/n_g) Σ_u d(v, u)` with `n_g` the giant component size.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::connectivity::GiantComponent;
use crate::error::{Error, Result};
use crate::graph::Snapshot;

pub const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsResult {
    /// Hop count from the source, `UNREACHED` for other components.
    pub distances: Vec<u32>,
    /// Last node dequeued; it lies at maximum distance from the source.
    pub farthest: u32,
    pub eccentricity: u32,
}

/// Single-source BFS with a FIFO queue, neighbors scanned in ascending order.
pub fn bfs(snapshot: &Snapshot, source: u32) -> Result<BfsResult> {
    check_node(snapshot, source)?;
    let mut sweeper = Sweeper::new(snapshot);
    let sweep = sweeper.run(source, false);
    let mut distances = vec![UNREACHED; snapshot.n() as usize];
    for &v in &sweeper.order {
        distances[v as usize] = sweeper.dist[v as usize];
    }
    Ok(BfsResult { distances, farthest: sweep.farthest, eccentricity: sweep.eccentricity })
}

fn check_node(snapshot: &Snapshot, v: u32) -> Result<()> {
    if v >= snapshot.n() {
        return Err(Error::NodeOutOfRange { index: v, n: snapshot.n() });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
struct Sweep {
    farthest: u32,
    eccentricity: u32,
    distance_sum: u64,
}

/// Reusable BFS buffers; only entries touched by the previous run are reset.
struct Sweeper<'a> {
    snapshot: &'a Snapshot,
    dist: Vec<u32>,
    parent: Vec<u32>,
    order: Vec<u32>,
}

impl<'a> Sweeper<'a> {
    fn new(snapshot: &'a Snapshot) -> Self {
        let n = snapshot.n() as usize;
        Self { snapshot, dist: vec![UNREACHED; n], parent: Vec::new(), order: Vec::with_capacity(n) }
    }

    fn run(&mut self, source: u32, track_parents: bool) -> Sweep {
        for &v in &self.order {
            self.dist[v as usize] = UNREACHED;
        }
        self.order.clear();
        if track_parents && self.parent.len() != self.dist.len() {
            self.parent = vec![UNREACHED; self.dist.len()];
        }

        self.dist[source as usize] = 0;
        self.order.push(source);
        let mut head = 0;
        let mut distance_sum = 0u64;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            let du = self.dist[u as usize];
            distance_sum += u64::from(du);
            for &v in self.snapshot.neighbors(u) {
                if self.dist[v as usize] == UNREACHED {
                    self.dist[v as usize] = du + 1;
                    if track_parents {
                        self.parent[v as usize] = u;
                    }
                    self.order.push(v);
                }
            }
        }
        let farthest = *self.order.last().expect("source is always visited");
        Sweep { farthest, eccentricity: self.dist[farthest as usize], distance_sum }
    }

    /// Diameter of the BFS tree of the last run (which must have tracked
    /// parents), by a bottom-up pass over the BFS order.
    fn tree_diameter(&self) -> u32 {
        let mut height = vec![0u32; self.dist.len()];
        let mut diameter = 0;
        for &v in self.order.iter().skip(1).rev() {
            let p = self.parent[v as usize] as usize;
            let through = height[v as usize] + 1;
            diameter = diameter.max(height[p] + through);
            height[p] = height[p].max(through);
        }
        diameter
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimatorConfig {
    pub i_min: u32,
    pub epsilon: f64,
    pub rng_seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self { i_min: 10, epsilon: 0.1, rng_seed: 0 }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.i_min < 1 {
            return Err(Error::InvalidParameter("i_min must be at least 1".into()));
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(Error::InvalidParameter("epsilon must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceEstimate {
    pub estimate: f64,
    pub samples_used: u64,
}

fn require_giant(giant: &GiantComponent) -> Result<()> {
    if giant.len() < 2 {
        return Err(Error::TooFewNodes { needed: 2, actual: giant.len() as u64 });
    }
    Ok(())
}

/// Running estimate `d_i = (1/i) Σ_{j≤i} d(v_j)` over uniformly sampled
/// sources (with replacement). Stops at the first `i > i_min` such that the
/// last `i_min` successive estimates all moved by less than `epsilon`.
pub fn estimate_average_distance(
    snapshot: &Snapshot,
    giant: &GiantComponent,
    cfg: &EstimatorConfig,
) -> Result<DistanceEstimate> {
    cfg.validate()?;
    require_giant(giant)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut sweeper = Sweeper::new(snapshot);
    let n_g = giant.len() as u64;

    let mut total = 0u64;
    let mut samples = 0u64;
    let mut previous: Option<f64> = None;
    let mut calm_steps = 0u32;
    loop {
        let source = giant.members[rng.gen_range(0..giant.len())];
        total += sweeper.run(source, false).distance_sum;
        samples += 1;
        let current = total as f64 / (samples * n_g) as f64;
        if let Some(prev) = previous {
            if (current - prev).abs() < cfg.epsilon {
                calm_steps += 1;
            } else {
                calm_steps = 0;
            }
        }
        if calm_steps >= cfg.i_min {
            return Ok(DistanceEstimate { estimate: current, samples_used: samples });
        }
        previous = Some(current);
    }
}

/// Mean of `d(v)` over the given sources, without any stopping rule.
/// Passing every giant-component node once yields the exact average distance.
pub fn mean_source_distance<I>(snapshot: &Snapshot, giant: &GiantComponent, sources: I) -> Result<f64>
where
    I: IntoIterator<Item = u32>,
{
    require_giant(giant)?;
    let mut sweeper = Sweeper::new(snapshot);
    let (mut total, mut count) = (0u64, 0u64);
    for source in sources {
        if !giant.contains(source) {
            return Err(Error::NotInGiant(source));
        }
        total += sweeper.run(source, false).distance_sum;
        count += 1;
    }
    Ok(total as f64 / (count * giant.len() as u64) as f64)
}

/// Double sweep: BFS from `start` to its farthest node `u`, then BFS from
/// `u`. Returns the eccentricity of `u` and the node realizing it.
pub fn diameter_lower_bound(snapshot: &Snapshot, giant: &GiantComponent, start: u32) -> Result<(u32, u32)> {
    if !giant.contains(start) {
        return Err(Error::NotInGiant(start));
    }
    let mut sweeper = Sweeper::new(snapshot);
    Ok(double_sweep(&mut sweeper, start))
}

fn double_sweep(sweeper: &mut Sweeper<'_>, start: u32) -> (u32, u32) {
    let first = sweeper.run(start, false);
    let second = sweeper.run(first.farthest, false);
    (second.eccentricity, second.farthest)
}

/// Diameter of the BFS tree rooted at `root`; never below the graph diameter.
pub fn diameter_upper_bound(snapshot: &Snapshot, giant: &GiantComponent, root: u32) -> Result<u32> {
    if !giant.contains(root) {
        return Err(Error::NotInGiant(root));
    }
    let mut sweeper = Sweeper::new(snapshot);
    sweeper.run(root, true);
    Ok(sweeper.tree_diameter())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConfig {
    pub min_iterations: u32,
    pub gap_target: u32,
    pub iteration_cap: u32,
    pub rng_seed: u64,
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self { min_iterations: 10, gap_target: 5, iteration_cap: 100, rng_seed: 0 }
    }
}

impl BoundConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_iterations < 1 {
            return Err(Error::InvalidParameter("min_iterations must be at least 1".into()));
        }
        if self.iteration_cap < self.min_iterations {
            return Err(Error::InvalidParameter("iteration_cap must be at least min_iterations".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiameterBounds {
    pub lower: u32,
    pub upper: u32,
    pub iterations: u32,
    pub converged: bool,
    /// `(lower, upper)` after each iteration.
    pub trace: Vec<(u32, u32)>,
}

/// Alternates double sweeps from random giant nodes with BFS-tree bounds
/// rooted at giant nodes in decreasing degree order (ties by index).
///
/// Runs at least `min_iterations` rounds and continues while the gap is at
/// least `gap_target`, up to `iteration_cap` rounds. Roots start over from
/// the highest degree once every giant node has served.
pub fn diameter_bounds(snapshot: &Snapshot, giant: &GiantComponent, cfg: &BoundConfig) -> Result<DiameterBounds> {
    cfg.validate()?;
    require_giant(giant)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut roots = giant.members.clone();
    roots.sort_by_key(|&v| (std::cmp::Reverse(snapshot.degree(v)), v));

    let mut sweeper = Sweeper::new(snapshot);
    let (mut lower, mut upper) = (0u32, u32::MAX);
    let mut trace = Vec::new();
    for &root in roots.iter().cycle().take(cfg.iteration_cap as usize) {
        let t = trace.len() as u32;
        if t >= cfg.min_iterations && upper - lower < cfg.gap_target {
            break;
        }
        let start = giant.members[rng.gen_range(0..giant.len())];
        lower = lower.max(double_sweep(&mut sweeper, start).0);
        sweeper.run(root, true);
        upper = upper.min(sweeper.tree_diameter());
        trace.push((lower, upper));
    }
    Ok(DiameterBounds {
        lower,
        upper,
        iterations: trace.len() as u32,
        converged: upper - lower < cfg.gap_target,
        trace,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    pub avg_distance_estimate: f64,
    pub samples_used: u64,
    pub diameter_lower: u32,
    pub diameter_upper: u32,
    pub bound_iterations: u32,
    pub converged: bool,
}

pub fn distance_report(
    snapshot: &Snapshot,
    giant: &GiantComponent,
    estimator: &EstimatorConfig,
    bounds: &BoundConfig,
) -> Result<DistanceReport> {
    let estimate = estimate_average_distance(snapshot, giant, estimator)?;
    let bounds = diameter_bounds(snapshot, giant, bounds)?;
    Ok(DistanceReport {
        avg_distance_estimate: estimate.estimate,
        samples_used: estimate.samples_used,
        diameter_lower: bounds.lower,
        diameter_upper: bounds.upper,
        bound_iterations: bounds.iterations,
        converged: bounds.converged,
    })
}
