//! Replays an arrival stream through its checkpoint schedule and evaluates
//! the enabled statistics at every checkpoint.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::connectivity::{components, ComponentSummary, UnionFind};
use crate::degrees::{
    basic_stats, cumulative, degree_distribution, ks_statistic, powerlaw_fit, BasicStats, DegreeDistribution,
    PowerLawFit,
};
use crate::distances::{distance_report, BoundConfig, DistanceReport, EstimatorConfig};
use crate::error::{Error, Result};
use crate::graph::{GrowingGraph, Snapshot};
use crate::ingest::{checkpoint_sizes, load_stream, write_cache, ArrivalStream, ParseOptions};
use crate::triangles::{triangle_report, TriangleReport};

/// Which statistic groups to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StatGroups {
    pub connectivity: bool,
    pub degrees: bool,
    pub distances: bool,
    pub triangles: bool,
}

impl StatGroups {
    pub const ALL: StatGroups = StatGroups { connectivity: true, degrees: true, distances: true, triangles: true };

    pub fn any(&self) -> bool {
        self.connectivity || self.degrees || self.distances || self.triangles
    }
}

impl Default for StatGroups {
    fn default() -> Self {
        Self::ALL
    }
}

impl FromStr for StatGroups {
    type Err = Error;

    /// Comma-separated subset of `conn,deg,dist,tri`.
    fn from_str(s: &str) -> Result<Self> {
        let mut groups = StatGroups { connectivity: false, degrees: false, distances: false, triangles: false };
        for name in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match name {
                "conn" => groups.connectivity = true,
                "deg" => groups.degrees = true,
                "dist" => groups.distances = true,
                "tri" => groups.triangles = true,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown statistic group {other:?} (expected conn, deg, dist, tri)"
                    )))
                }
            }
        }
        if !groups.any() {
            return Err(Error::InvalidParameter("at least one statistic group must be enabled".into()));
        }
        Ok(groups)
    }
}

/// Everything that determines the values of a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisConfig {
    pub checkpoints: u64,
    pub groups: StatGroups,
    /// Stopping rule parameters; the seed field is ignored.
    pub estimator: EstimatorConfig,
    /// Bound loop parameters; the seed field is ignored.
    pub bounds: BoundConfig,
    pub seed: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            checkpoints: 100,
            groups: StatGroups::ALL,
            estimator: EstimatorConfig::default(),
            bounds: BoundConfig::default(),
            seed: 0,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.checkpoints < 1 {
            return Err(Error::InvalidParameter("checkpoint count must be at least 1".into()));
        }
        if !self.groups.any() {
            return Err(Error::InvalidParameter("at least one statistic group must be enabled".into()));
        }
        self.estimator.validate()?;
        self.bounds.validate()
    }

    /// Seeds of the randomized statistics at checkpoint `index`, so that a
    /// checkpoint can be recomputed in isolation.
    pub fn checkpoint_seeds(&self, index: usize) -> (u64, u64) {
        let base = splitmix64(self.seed ^ splitmix64(index as u64));
        (splitmix64(base ^ 1), splitmix64(base ^ 2))
    }

    /// Evaluates every enabled group on one snapshot. `connectivity` is the
    /// incrementally maintained summary when available; otherwise it is
    /// recomputed by BFS.
    pub fn evaluate(
        &self,
        index: usize,
        snapshot: &Snapshot,
        connectivity: Option<ComponentSummary>,
    ) -> Result<(CheckpointStats, GroupTimings)> {
        let mut timings = GroupTimings::default();
        let mut stats = CheckpointStats {
            index,
            n: u64::from(snapshot.n()),
            m: snapshot.m(),
            time: snapshot.checkpoint_time(),
            components: None,
            basic: None,
            distribution: None,
            ks_vs_final: None,
            powerlaw: None,
            distances: None,
            triangles: None,
        };

        if self.groups.connectivity {
            let clock = Instant::now();
            stats.components = Some(connectivity.unwrap_or_else(|| components(snapshot).summary()));
            timings.connectivity = clock.elapsed().as_secs_f64();
        }

        let basic = basic_stats(snapshot).ok();
        if self.groups.degrees {
            let clock = Instant::now();
            let dist = degree_distribution(snapshot);
            stats.basic = basic;
            stats.powerlaw = powerlaw_fit(&dist).ok();
            stats.distribution = Some(dist);
            timings.degrees = clock.elapsed().as_secs_f64();
        }

        if self.groups.distances {
            let clock = Instant::now();
            let giant = components(snapshot).giant_component();
            if giant.len() >= 2 {
                let (est_seed, bound_seed) = self.checkpoint_seeds(index);
                let estimator = EstimatorConfig { rng_seed: est_seed, ..self.estimator };
                let bounds = BoundConfig { rng_seed: bound_seed, ..self.bounds };
                stats.distances = Some(distance_report(snapshot, &giant, &estimator, &bounds)?);
            }
            timings.distances = clock.elapsed().as_secs_f64();
        }

        if self.groups.triangles {
            let clock = Instant::now();
            stats.triangles = Some(triangle_report(snapshot, basic.as_ref()));
            timings.triangles = clock.elapsed().as_secs_f64();
        }
        Ok((stats, timings))
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Wall-clock seconds spent on each group at one checkpoint.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct GroupTimings {
    pub snapshot: f64,
    pub connectivity: f64,
    pub degrees: f64,
    pub distances: f64,
    pub triangles: f64,
}

/// Statistics at one checkpoint. `None` marks a disabled group or an
/// undefined value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckpointStats {
    pub index: usize,
    pub n: u64,
    pub m: u64,
    pub time: Option<u64>,
    pub components: Option<ComponentSummary>,
    pub basic: Option<BasicStats>,
    #[serde(skip)]
    pub distribution: Option<DegreeDistribution>,
    pub ks_vs_final: Option<f64>,
    pub powerlaw: Option<PowerLawFit>,
    pub distances: Option<DistanceReport>,
    pub triangles: Option<TriangleReport>,
}

/// Result of replaying one stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub final_n: u64,
    pub final_m: u64,
    pub checkpoints: Vec<CheckpointStats>,
    pub timings: Vec<GroupTimings>,
}

/// Growing-prefix replay of `stream`.
///
/// Checkpoints whose replay position coincides with the previous one (two
/// targets reached by the same event) are merged. The last checkpoint always
/// consumes the whole stream.
pub fn evolve(stream: &ArrivalStream, cfg: &AnalysisConfig) -> Result<Evolution> {
    cfg.validate()?;
    if stream.is_empty() {
        return Err(Error::InvalidParameter("stream contains no links".into()));
    }
    let schedule = checkpoint_sizes(stream.final_n(), cfg.checkpoints);
    let mut graph = GrowingGraph::with_capacity(stream.final_n() as usize);
    let mut uf = UnionFind::default();
    let mut consumed = 0usize;
    let mut checkpoints = Vec::with_capacity(schedule.sizes.len());
    let mut timings = Vec::with_capacity(schedule.sizes.len());

    for &target in &schedule.sizes {
        let position =
            if target == stream.final_n() { stream.events().len() } else { stream.replay_to(consumed, target)? };
        if position == consumed && consumed > 0 {
            continue;
        }
        let clock = Instant::now();
        for link in &stream.events()[consumed..position] {
            graph.add_link(link.u, link.v)?;
            if cfg.groups.connectivity {
                uf.union(link.u, link.v);
            }
        }
        consumed = position;
        let n = stream.nodes_at(position) as u32;
        graph.ensure_nodes(n);
        uf.ensure_nodes(n);
        let snapshot = graph.snapshot_at(Some(stream.events()[position - 1].time));
        let build = clock.elapsed().as_secs_f64();

        let index = checkpoints.len();
        let summary = cfg.groups.connectivity.then(|| uf.summary());
        let (stats, mut t) = cfg.evaluate(index, &snapshot, summary).map_err(|e| Error::AtCheckpoint {
            index,
            n: u64::from(n),
            source: Box::new(e),
        })?;
        t.snapshot = build;
        checkpoints.push(stats);
        timings.push(t);
    }

    attach_ks_vs_final(&mut checkpoints);
    Ok(Evolution { final_n: stream.final_n(), final_m: stream.final_m(), checkpoints, timings })
}

/// Fills `ks_vs_final` from the retained distributions.
pub fn attach_ks_vs_final(checkpoints: &mut [CheckpointStats]) {
    let Some(last) = checkpoints.last().and_then(|c| c.distribution.as_ref()) else {
        return;
    };
    let reference = cumulative(last);
    for cp in checkpoints.iter_mut() {
        cp.ks_vs_final = cp.distribution.as_ref().map(|d| ks_statistic(&cumulative(d), &reference));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesRow {
    pub checkpoint: usize,
    pub n: u64,
    pub m: u64,
    pub time: Option<u64>,
    pub value: Option<f64>,
}

/// One property along the checkpoints; `value = None` is undefined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolutionSeries {
    pub property: &'static str,
    pub rows: Vec<SeriesRow>,
}

type Extractor = fn(&CheckpointStats) -> Option<f64>;

fn properties(groups: &StatGroups) -> Vec<(&'static str, Extractor)> {
    let mut out: Vec<(&'static str, Extractor)> = Vec::new();
    if groups.connectivity {
        out.extend([
            ("component_count", (|c: &CheckpointStats| c.components.map(|s| s.component_count as f64)) as Extractor),
            ("giant_size", |c| c.components.map(|s| s.giant_size as f64)),
            ("giant_fraction", |c| c.components.map(|s| s.giant_fraction)),
        ]);
    }
    if groups.degrees {
        out.extend([
            ("average_degree", (|c: &CheckpointStats| c.basic.map(|b| b.average_degree)) as Extractor),
            ("density", |c| c.basic.map(|b| b.density)),
            ("max_degree", |c| c.distribution.as_ref().map(|d| f64::from(d.max_degree))),
            ("ks_vs_final", |c| c.ks_vs_final),
            ("powerlaw_alpha", |c| c.powerlaw.map(|f| f.alpha)),
            ("powerlaw_r2", |c| c.powerlaw.map(|f| f.r2)),
        ]);
    }
    if groups.distances {
        out.extend([
            (
                "average_distance",
                (|c: &CheckpointStats| c.distances.as_ref().map(|d| d.avg_distance_estimate)) as Extractor,
            ),
            ("average_distance_samples", |c| c.distances.as_ref().map(|d| d.samples_used as f64)),
            ("diameter_lower", |c| c.distances.as_ref().map(|d| f64::from(d.diameter_lower))),
            ("diameter_upper", |c| c.distances.as_ref().map(|d| f64::from(d.diameter_upper))),
            ("diameter_iterations", |c| c.distances.as_ref().map(|d| f64::from(d.bound_iterations))),
            ("diameter_converged", |c| c.distances.as_ref().map(|d| f64::from(u8::from(d.converged)))),
        ]);
    }
    if groups.triangles {
        out.extend([
            ("triangles", (|c: &CheckpointStats| c.triangles.as_ref().map(|t| t.total_triangles as f64)) as Extractor),
            ("connected_triples", |c| c.triangles.as_ref().map(|t| t.connected_triples as f64)),
            ("clustering", |c| c.triangles.as_ref().and_then(|t| t.clustering_coefficient)),
            ("transitivity", |c| c.triangles.as_ref().and_then(|t| t.transitivity)),
            ("triangles_over_dmax2", |c| c.triangles.as_ref().and_then(|t| t.tr_over_dmax2)),
            ("clustering_over_density", |c| c.triangles.as_ref().and_then(|t| t.cc_over_density)),
        ]);
    }
    out
}

impl Evolution {
    pub fn series(&self, groups: &StatGroups) -> Vec<EvolutionSeries> {
        properties(groups)
            .into_iter()
            .map(|(property, extract)| EvolutionSeries {
                property,
                rows: self
                    .checkpoints
                    .iter()
                    .map(|c| SeriesRow { checkpoint: c.index, n: c.n, m: c.m, time: c.time, value: extract(c) })
                    .collect(),
            })
            .collect()
    }
}

fn cell<T: std::fmt::Display>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

pub fn series_csv(series: &EvolutionSeries) -> String {
    let mut out = String::from("checkpoint,n,m,time,value\n");
    for r in &series.rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.checkpoint, r.n, r.m, cell(r.time), cell(r.value));
    }
    out
}

/// `degree,count,p_k,q_k`, including degree 0 when present.
pub fn distribution_csv(dist: &DegreeDistribution) -> String {
    let q = cumulative(dist);
    let mut out = String::from("degree,count,p_k,q_k\n");
    for ((&k, &c), &(_, qk)) in dist.counts.iter().zip(&q.points) {
        let _ = writeln!(out, "{k},{c},{},{qk}", dist.p(k));
    }
    out
}

fn gnuplot_script(property: &str, csv: &str, loglog: bool) -> String {
    let scale = if loglog { "set logscale xy\n" } else { "set logscale x\n" };
    let (x, y) = if property == "m_vs_n" { (2, 3) } else { (2, 5) };
    format!(
        "set datafile separator ','\nset key off\n{scale}set xlabel 'n'\nset ylabel '{property}'\n\
         plot '../{csv}' every ::1 using {x}:{y} with linespoints\n"
    )
}

/// Full run: input, output directory and analysis parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub parse: ParseOptions,
    pub analysis: AnalysisConfig,
    pub out_dir: PathBuf,
    pub dump_distributions: bool,
    pub gnuplot: bool,
    /// Where to write the binary stream cache after parsing, if anywhere.
    pub cache: Option<PathBuf>,
    /// Where to write wall-clock timings. Kept out of the output tree by
    /// default so that reruns reproduce it byte for byte.
    pub timings: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            input: input.into(),
            parse: ParseOptions::default(),
            analysis: AnalysisConfig::default(),
            out_dir: out_dir.into(),
            dump_distributions: false,
            gnuplot: false,
            cache: None,
            timings: None,
        }
    }
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    input: String,
    final_n: u64,
    final_m: u64,
    checkpoints: usize,
    nominal_checkpoints: u64,
    seed: u64,
    groups: StatGroups,
    estimator: EstimatorParams,
    bounds: BoundParams,
    average_distance_convention: &'static str,
    timings_file: Option<String>,
    outputs: &'a [String],
}

#[derive(Debug, Serialize)]
struct EstimatorParams {
    i_min: u32,
    epsilon: f64,
}

#[derive(Debug, Serialize)]
struct BoundParams {
    min_iterations: u32,
    gap_target: u32,
    iteration_cap: u32,
}

#[derive(Debug, Serialize)]
struct Timings<'a> {
    ingest_seconds: f64,
    checkpoints: Vec<CheckpointTiming<'a>>,
}

#[derive(Debug, Serialize)]
struct CheckpointTiming<'a> {
    index: usize,
    n: u64,
    m: u64,
    #[serde(flatten)]
    seconds: &'a GroupTimings,
}

/// Parses, replays and writes every series and the manifest, plus the
/// timings if asked for. Everything under `out_dir` is a pure function of the
/// input and the configuration.
pub fn run_evolution(cfg: &RunConfig) -> Result<Evolution> {
    cfg.analysis.validate()?;
    let clock = Instant::now();
    let stream = load_stream(&cfg.input, cfg.parse)?;
    if let Some(cache) = &cfg.cache {
        write_cache(&stream, fs::File::create(cache)?)?;
    }
    let ingest_seconds = clock.elapsed().as_secs_f64();
    let evolution = evolve(&stream, &cfg.analysis)?;
    write_outputs(&evolution, cfg, ingest_seconds)?;
    Ok(evolution)
}

fn write_file(dir: &Path, name: &str, contents: &str, outputs: &mut Vec<String>) -> Result<()> {
    fs::write(dir.join(name), contents)?;
    outputs.push(name.to_string());
    Ok(())
}

pub fn write_outputs(evolution: &Evolution, cfg: &RunConfig, ingest_seconds: f64) -> Result<()> {
    let dir = &cfg.out_dir;
    fs::create_dir_all(dir)?;
    let mut outputs = Vec::new();

    let mut sizes = String::from("checkpoint,time,n,m\n");
    let mut mn = String::from("checkpoint,n,m\n");
    for c in &evolution.checkpoints {
        let _ = writeln!(sizes, "{},{},{},{}", c.index, cell(c.time), c.n, c.m);
        let _ = writeln!(mn, "{},{},{}", c.index, c.n, c.m);
    }
    write_file(dir, "nodes_links_vs_time.csv", &sizes, &mut outputs)?;
    write_file(dir, "m_vs_n.csv", &mn, &mut outputs)?;

    let series = evolution.series(&cfg.analysis.groups);
    for s in &series {
        write_file(dir, &format!("{}.csv", s.property), &series_csv(s), &mut outputs)?;
    }

    if cfg.dump_distributions && cfg.analysis.groups.degrees {
        let sub = dir.join("distributions");
        fs::create_dir_all(&sub)?;
        for c in &evolution.checkpoints {
            if let Some(d) = &c.distribution {
                let name = format!("checkpoint_{:03}.csv", c.index);
                fs::write(sub.join(&name), distribution_csv(d))?;
                outputs.push(format!("distributions/{name}"));
            }
        }
    }

    if cfg.gnuplot {
        let sub = dir.join("plots");
        fs::create_dir_all(&sub)?;
        let mut scripts = vec![("m_vs_n", "m_vs_n.csv".to_string(), true)];
        scripts.extend(series.iter().map(|s| (s.property, format!("{}.csv", s.property), false)));
        for (property, csv, loglog) in scripts {
            let name = format!("{property}.gp");
            fs::write(sub.join(&name), gnuplot_script(property, &csv, loglog))?;
            outputs.push(format!("plots/{name}"));
        }
    }

    let a = &cfg.analysis;
    outputs.push("manifest.json".into());
    let manifest = Manifest {
        tool: "netevo",
        version: env!("CARGO_PKG_VERSION"),
        input: cfg.input.display().to_string(),
        final_n: evolution.final_n,
        final_m: evolution.final_m,
        checkpoints: evolution.checkpoints.len(),
        nominal_checkpoints: a.checkpoints,
        seed: a.seed,
        groups: a.groups,
        estimator: EstimatorParams { i_min: a.estimator.i_min, epsilon: a.estimator.epsilon },
        bounds: BoundParams {
            min_iterations: a.bounds.min_iterations,
            gap_target: a.bounds.gap_target,
            iteration_cap: a.bounds.iteration_cap,
        },
        average_distance_convention:
            "giant component only; d(v) averages over all n_g giant nodes including v itself at distance 0",
        timings_file: cfg.timings.as_ref().map(|p| p.display().to_string()),
        outputs: &outputs,
    };
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;

    let Some(path) = &cfg.timings else {
        return Ok(());
    };
    let timings = Timings {
        ingest_seconds,
        checkpoints: evolution
            .checkpoints
            .iter()
            .zip(&evolution.timings)
            .map(|(c, t)| CheckpointTiming { index: c.index, n: c.n, m: c.m, seconds: t })
            .collect(),
    };
    fs::write(path, serde_json::to_string_pretty(&timings)? + "\n")?;
    Ok(())
}
