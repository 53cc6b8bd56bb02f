//! Growing-prefix analysis of complex-network measurement streams.
//!
//! A measurement is a time-ordered stream of link discoveries. Replaying it
//! up to successive node counts gives the graph that would have been observed
//! had the measurement stopped there; evaluating statistics at each of these
//! checkpoints shows whether a property has reached a steady state.
//!
//! The modules follow the pipeline: [`ingest`] parses and normalizes the
//! stream, [`graph`] stores the growing graph, [`connectivity`], [`degrees`],
//! [`distances`] and [`triangles`] compute statistics on snapshots, and
//! [`pipeline`] drives the replay and writes the evolution series.

pub mod connectivity;
pub mod degrees;
pub mod distances;
pub mod error;
pub mod generate;
pub mod graph;
pub mod ingest;
pub mod pipeline;
pub mod triangles;

pub use connectivity::{components, ComponentSummary, Components, GiantComponent, UnionFind};
pub use degrees::{
    basic_stats, cumulative, degree_distribution, ks_statistic, powerlaw_fit, BasicStats, CumulativeDistribution,
    DegreeDistribution, PowerLawFit,
};
pub use distances::{
    bfs, diameter_bounds, diameter_lower_bound, diameter_upper_bound, estimate_average_distance, BoundConfig,
    DiameterBounds, DistanceReport, EstimatorConfig,
};
pub use error::{Error, Result};
pub use generate::{generate, Model};
pub use graph::{GrowingGraph, Snapshot};
pub use ingest::{
    checkpoint_sizes, normalize, parse_event_stream, ArrivalStream, CheckpointSchedule, LinkArrival, ParseOptions,
    RawEvent,
};
pub use pipeline::{
    evolve, run_evolution, AnalysisConfig, CheckpointStats, Evolution, EvolutionSeries, RunConfig, StatGroups,
};
pub use triangles::{count_triangles, TriangleReport};
