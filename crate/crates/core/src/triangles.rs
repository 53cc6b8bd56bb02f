//! Triangle counting (compact-forward), clustering coefficient and
//! transitivity ratio.

use serde::Serialize;

use crate::degrees::BasicStats;
use crate::graph::Snapshot;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCounts {
    pub total: u64,
    /// Triangles containing each node, indexed by original node index.
    pub per_node: Vec<u64>,
}

/// Compact-forward triangle counting.
///
/// Nodes are ranked by non-increasing degree (ties by index) and each node
/// keeps only its lower-ranked neighbors, sorted by rank. For every link
/// `u < v` (by rank) the common lower neighbors `w < u` are found by merging
/// the two sorted lists, so each triangle `w < u < v` is seen exactly once.
pub fn count_triangles(snapshot: &Snapshot) -> TriangleCounts {
    let n = snapshot.n() as usize;
    let mut order: Vec<u32> = (0..snapshot.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(snapshot.degree(v)), v));
    let mut rank = vec![0u32; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v as usize] = r as u32;
    }

    let mut offsets = Vec::with_capacity(n + 1);
    let mut lower = Vec::with_capacity(snapshot.m() as usize);
    offsets.push(0usize);
    for (r, &v) in order.iter().enumerate() {
        let start = lower.len();
        lower.extend(snapshot.neighbors(v).iter().map(|&w| rank[w as usize]).filter(|&w| (w as usize) < r));
        lower[start..].sort_unstable();
        offsets.push(lower.len());
    }
    let lower_of = |r: u32| &lower[offsets[r as usize]..offsets[r as usize + 1]];

    let mut per_rank = vec![0u64; n];
    let mut total = 0u64;
    for v in 0..n as u32 {
        let lv = lower_of(v);
        for (i, &u) in lv.iter().enumerate() {
            // lv is sorted, so lv[..i] are exactly v's neighbors below u
            let (mut a, mut b) = (lower_of(u).iter().peekable(), lv[..i].iter().peekable());
            while let (Some(&&x), Some(&&y)) = (a.peek(), b.peek()) {
                if x < y {
                    a.next();
                } else if y < x {
                    b.next();
                } else {
                    total += 1;
                    per_rank[x as usize] += 1;
                    per_rank[u as usize] += 1;
                    per_rank[v as usize] += 1;
                    a.next();
                    b.next();
                }
            }
        }
    }

    let mut per_node = vec![0u64; n];
    for (r, &v) in order.iter().enumerate() {
        per_node[v as usize] = per_rank[r];
    }
    TriangleCounts { total, per_node }
}

/// Mean of `2 t(v) / (d(v) (d(v) - 1))` over nodes of degree at least 2;
/// `None` when there is no such node.
pub fn clustering_coefficient(snapshot: &Snapshot, per_node: &[u64]) -> Option<f64> {
    let (mut sum, mut eligible) = (0.0f64, 0u64);
    for (v, d) in snapshot.degrees().enumerate() {
        if d >= 2 {
            let d = u64::from(d);
            sum += (2 * per_node[v]) as f64 / (d * (d - 1)) as f64;
            eligible += 1;
        }
    }
    (eligible > 0).then(|| sum / eligible as f64)
}

/// Number of connected triples, `Σ_v C(d(v), 2)`.
pub fn connected_triples(snapshot: &Snapshot) -> u64 {
    snapshot
        .degrees()
        .map(|d| {
            let d = u64::from(d);
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// `3 N_Δ / N_∨` with the triple count; `None` when there are no triples.
pub fn transitivity(snapshot: &Snapshot, triangles: u64) -> (u64, Option<f64>) {
    let triples = connected_triples(snapshot);
    let tr = (triples > 0).then(|| (3 * triangles) as f64 / triples as f64);
    (triples, tr)
}

/// `N_Δ / d_max²` and `cc / δ`.
pub fn derived_ratios(triangles: u64, clustering: Option<f64>, basic: &BasicStats) -> (Option<f64>, Option<f64>) {
    let dmax = u64::from(basic.max_degree);
    let over_dmax2 = (dmax >= 1).then(|| triangles as f64 / (dmax * dmax) as f64);
    let over_density = clustering.filter(|_| basic.density > 0.0).map(|cc| cc / basic.density);
    (over_dmax2, over_density)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleReport {
    pub total_triangles: u64,
    pub connected_triples: u64,
    pub clustering_coefficient: Option<f64>,
    pub transitivity: Option<f64>,
    pub tr_over_dmax2: Option<f64>,
    pub cc_over_density: Option<f64>,
    #[serde(skip)]
    pub per_node_triangles: Vec<u64>,
}

pub fn triangle_report(snapshot: &Snapshot, basic: Option<&BasicStats>) -> TriangleReport {
    let counts = count_triangles(snapshot);
    let clustering = clustering_coefficient(snapshot, &counts.per_node);
    let (triples, tr) = transitivity(snapshot, counts.total);
    let (tr_over_dmax2, cc_over_density) = match basic {
        Some(basic) => derived_ratios(counts.total, clustering, basic),
        None => (None, None),
    };
    TriangleReport {
        total_triangles: counts.total,
        connected_triples: triples,
        clustering_coefficient: clustering,
        transitivity: tr,
        tr_over_dmax2,
        cc_over_density,
        per_node_triangles: counts.per_node,
    }
}
