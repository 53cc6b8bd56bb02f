mod common;

use std::collections::{BTreeMap, HashSet};

use common::*;
use netevo::degrees::fit_log_log;
use netevo::distances::mean_source_distance;
use netevo::ingest::{ArrivalStream, LinkArrival};
use netevo::triangles::{clustering_coefficient, transitivity};
use netevo::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn giant_of(s: &Snapshot) -> GiantComponent {
    components(s).giant_component()
}

#[test]
fn normalize_matches_pair_set_scan() {
    let mut rng = ChaCha20Rng::seed_from_u64(17);
    let mut raw = Vec::new();
    let mut emitted: Vec<(u32, u32)> = Vec::new();
    for t in 0..10_000u64 {
        let roll: f64 = rng.gen();
        let (a, b) = if roll < 0.05 {
            let a = rng.gen_range(0..3000u32);
            (a, a)
        } else if roll < 0.25 && !emitted.is_empty() {
            let (a, b) = emitted[rng.gen_range(0..emitted.len())];
            if rng.gen_bool(0.5) {
                (b, a)
            } else {
                (a, b)
            }
        } else {
            let pair = (rng.gen_range(0..3000u32), rng.gen_range(0..3000u32));
            if pair.0 != pair.1 {
                emitted.push(pair);
            }
            pair
        };
        raw.push(RawEvent::new(t, format!("n{a}"), format!("n{b}")));
    }
    let stream = normalize(&raw);

    let mut pairs = HashSet::new();
    let mut nodes = HashSet::new();
    for e in &raw {
        nodes.insert(e.src.clone());
        nodes.insert(e.dst.clone());
        if e.src != e.dst {
            let key = if e.src < e.dst { (e.src.clone(), e.dst.clone()) } else { (e.dst.clone(), e.src.clone()) };
            pairs.insert(key);
        }
    }
    assert_eq!(stream.final_m(), pairs.len() as u64);
    assert_eq!(stream.final_n(), nodes.len() as u64);
    assert_eq!(*stream.node_count_prefix().last().unwrap() as u64, stream.final_n());
    assert_eq!(normalize(&stream.to_raw_events()), stream);
}

#[test]
fn random_distinct_pairs_degree_sum() {
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let mut seen = HashSet::new();
    let mut g = GrowingGraph::new();
    while seen.len() < 100_000 {
        let (u, v) = (rng.gen_range(0..20_000u32), rng.gen_range(0..20_000u32));
        if u != v && seen.insert((u.min(v), u.max(v))) {
            g.add_link(u, v).unwrap();
        }
    }
    let s = g.finalize_snapshot();
    assert_eq!(s.m(), 100_000);
    assert_eq!(s.degrees().map(u64::from).sum::<u64>(), 200_000);
}

#[test]
fn successive_snapshots_match_rebuilt_prefixes() {
    let edges = gnp(400, 0.03, 5);
    let mut g = GrowingGraph::new();
    let step = edges.len().div_ceil(100);
    for (i, &(u, v)) in edges.iter().enumerate() {
        g.add_link(u, v).unwrap();
        if (i + 1) % step == 0 || i + 1 == edges.len() {
            let incremental = g.finalize_snapshot();
            let mut fresh = GrowingGraph::new();
            for &(a, b) in &edges[..=i] {
                fresh.add_link(a, b).unwrap();
            }
            assert_eq!(incremental, fresh.finalize_snapshot());
            let listed: HashSet<_> = incremental.links().collect();
            let expected: HashSet<_> = edges[..=i].iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            assert_eq!(listed, expected);
        }
    }
}

#[test]
fn has_link_matches_matrix() {
    let edges = gnp(50, 0.1, 11);
    let s = snapshot(50, &edges);
    let adj = matrix(50, &edges);
    let mut checked = 0;
    for u in 0..50 {
        for v in 0..50 {
            if u != v {
                assert_eq!(s.has_link(u, v).unwrap(), adj[u as usize][v as usize]);
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 2450);
}

#[test]
fn components_match_quick_find() {
    let edges = gnp(500, 0.002, 8);
    let s = snapshot(500, &edges);
    let ours = components(&s);
    let oracle = union_find_labels(500, &edges);
    let mut renaming = BTreeMap::new();
    for (v, &label) in ours.component_id.iter().enumerate() {
        let mapped = *renaming.entry(label).or_insert(oracle[v]);
        assert_eq!(mapped, oracle[v], "node {v}");
    }
    let distinct: HashSet<_> = oracle.iter().collect();
    assert_eq!(ours.component_count(), distinct.len() as u64);
    assert_eq!(ours.giant_component().members, giant_members(500, &edges));

    let mut uf = UnionFind::new(500);
    for &(u, v) in &edges {
        uf.union(u, v);
    }
    assert_eq!(uf.summary(), ours.summary());
}

#[test]
fn degree_histogram_matches_recount() {
    let edges = gnp(200, 0.05, 2);
    let s = snapshot(200, &edges);
    let mut deg = vec![0u32; 200];
    for &(u, v) in &edges {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    let mut expected = BTreeMap::new();
    for d in deg {
        *expected.entry(d).or_insert(0u64) += 1;
    }
    let dist = degree_distribution(&s);
    assert_eq!(dist.counts, expected);
    assert_eq!(dist.n, 200);
    let basic = basic_stats(&s).unwrap();
    assert_eq!(basic.average_degree, dist.mean_degree());
}

#[test]
fn ks_matches_brute_force_scan() {
    let a = DegreeDistribution::from_counts([(1, 1), (2, 1)]);
    let b = DegreeDistribution::from_counts([(1, 3), (3, 1)]);
    let brute = |x: &DegreeDistribution, y: &DegreeDistribution| {
        let top = x.max_degree.max(y.max_degree);
        (1..=top + 1)
            .map(|k| {
                let qx = x.counts.range(k..).map(|(_, &c)| c).sum::<u64>() as f64 / x.n as f64;
                let qy = y.counts.range(k..).map(|(_, &c)| c).sum::<u64>() as f64 / y.n as f64;
                (qx - qy).abs()
            })
            .fold(0.0, f64::max)
    };
    assert_eq!(brute(&a, &b), 0.25);
    assert_eq!(ks_statistic(&cumulative(&a), &cumulative(&b)), 0.25);

    let mut rng = ChaCha20Rng::seed_from_u64(1);
    for _ in 0..200 {
        let x = DegreeDistribution::from_counts(
            (0..rng.gen_range(1..12)).map(|_| (rng.gen_range(1..30), rng.gen_range(1..50))),
        );
        let y = DegreeDistribution::from_counts(
            (0..rng.gen_range(1..12)).map(|_| (rng.gen_range(1..30), rng.gen_range(1..50))),
        );
        assert_eq!(ks_statistic(&cumulative(&x), &cumulative(&y)), brute(&x, &y));
    }
}

/// Textbook closed-form slope, independent of the library's centered sums.
fn reference_ols_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let sxx: f64 = points.iter().map(|&(x, _)| x.ln() * x.ln()).sum();
    let sxy: f64 = points.iter().map(|&(x, y)| x.ln() * y.ln()).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[test]
fn powerlaw_fit_matches_reference_ols() {
    let links = generate(&Model::PreferentialAttachment { n: 20_000, k: 2 }, 12).unwrap();
    let s = snapshot(20_000, &links);
    let dist = degree_distribution(&s);
    let points: Vec<_> = dist.counts.iter().map(|(&k, &c)| (f64::from(k), c as f64 / dist.n as f64)).collect();
    let fit = powerlaw_fit(&dist).unwrap();
    assert!((fit.alpha + reference_ols_slope(&points)).abs() <= 0.05);
    assert!(fit.alpha > 0.5, "heavy tail expected, alpha = {}", fit.alpha);

    let exact: Vec<_> = (1..=100).map(|k| (f64::from(k), 3.0 * f64::from(k).powf(-2.5))).collect();
    let fit = fit_log_log(&exact).unwrap();
    assert!((fit.alpha - 2.5).abs() < 1e-9);
}

#[test]
fn bfs_matches_floyd_warshall() {
    let edges = gnp(300, 0.02, 4);
    let s = snapshot(300, &edges);
    let oracle = all_pairs(300, &edges);
    for source in [0u32, 17, 150, 299] {
        let r = bfs(&s, source).unwrap();
        assert_eq!(r.distances, oracle[source as usize]);
        let reached_max = r.distances.iter().filter(|&&d| d != INF).max().copied().unwrap();
        assert_eq!(r.eccentricity, reached_max);
        assert_eq!(r.distances[r.farthest as usize], reached_max);
    }
}

#[test]
fn estimator_close_to_exact_average() {
    let mut within = 0;
    for seed in 0..20 {
        let edges = gnp(500, 0.05, 100 + seed);
        let s = snapshot(500, &edges);
        let giant = giant_of(&s);
        let (_, exact) = exact_distance_stats(500, &edges, &giant.members);
        let cfg = EstimatorConfig { rng_seed: seed, ..Default::default() };
        let est = estimate_average_distance(&s, &giant, &cfg).unwrap();
        assert!(est.samples_used >= 11);
        if (est.estimate - exact).abs() <= 0.15 {
            within += 1;
        }
        let saturated = mean_source_distance(&s, &giant, giant.members.iter().copied()).unwrap();
        assert_eq!(saturated, exact);
    }
    assert!(within >= 19, "{within}/20 within tolerance");
}

#[test]
fn cycle_six_bounds_by_oracle() {
    let edges: Vec<_> = (0..6).map(|v| (v, (v + 1) % 6)).collect();
    let s = snapshot(6, &edges);
    let g = giant_of(&s);
    let (true_d, _) = exact_distance_stats(6, &edges, &g.members);
    assert_eq!(true_d, 3);
    assert_eq!(diameter_lower_bound(&s, &g, 0).unwrap().0, 3);
    // BFS tree 3-2-1-0-5-4 is a path on six nodes
    let tree = [(0, 1), (0, 5), (1, 2), (5, 4), (2, 3)];
    let (tree_d, _) = exact_distance_stats(6, &tree, &[0, 1, 2, 3, 4, 5]);
    assert_eq!(diameter_upper_bound(&s, &g, 0).unwrap(), tree_d);
    assert_eq!(tree_d, 5);
}

#[test]
fn random_graph_bounds_sandwich_true_diameter() {
    for seed in 0..20 {
        let edges = gnp(200, 0.015, 700 + seed);
        let s = snapshot(200, &edges);
        let g = giant_of(&s);
        let (true_d, _) = exact_distance_stats(200, &edges, &giant_members(200, &edges));
        let cfg = BoundConfig { rng_seed: seed, ..Default::default() };
        let b = diameter_bounds(&s, &g, &cfg).unwrap();
        assert!(b.lower <= true_d && true_d <= b.upper, "seed {seed}: {b:?} vs {true_d}");
        assert!(b.iterations >= 10);
    }
}

#[test]
fn triangles_match_brute_force_on_random_graphs() {
    for seed in 0..10 {
        let edges = gnp(100, 0.1, seed);
        let s = snapshot(100, &edges);
        let (total, per) = brute_triangles(100, &edges);
        let ours = count_triangles(&s);
        assert_eq!(ours.total, total);
        assert_eq!(ours.per_node, per);
        assert_eq!(ours.per_node.iter().sum::<u64>(), 3 * ours.total);
    }
}

#[test]
fn bowtie_clustering_and_transitivity_by_brute_force() {
    let edges = vec![(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)];
    let s = snapshot(5, &edges);
    let (total, per) = brute_triangles(5, &edges);
    let adj = matrix(5, &edges);
    let mut cc_sum = 0.0;
    let mut triples = 0u64;
    for v in 0..5 {
        let nb: Vec<usize> = (0..5).filter(|&u| adj[v][u]).collect();
        let d = nb.len() as u64;
        triples += d * (d - 1) / 2;
        let mut links = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                links += u64::from(adj[a][b]);
            }
        }
        assert_eq!(links, per[v]);
        cc_sum += (2 * links) as f64 / (d * (d - 1)) as f64;
    }
    let cc = clustering_coefficient(&s, &per).unwrap();
    assert!((cc - cc_sum / 5.0).abs() < 1e-15);
    assert!((cc - 13.0 / 15.0).abs() < 1e-15);
    assert_eq!(transitivity(&s, total), (triples, Some(0.6)));
}

#[test]
fn complete_graphs_are_fully_clustered() {
    for k in 3..=20 {
        let s = snapshot(k, &complete(k));
        let r = netevo::triangles::triangle_report(&s, None);
        assert_eq!(r.clustering_coefficient, Some(1.0), "K{k}");
        assert_eq!(r.transitivity, Some(1.0), "K{k}");
    }
}

#[test]
fn clustered_fixture_is_far_above_density() {
    // ring lattice where each node links to its 4 nearest on each side
    let n = 2000u32;
    let edges: Vec<_> = (0..n).flat_map(|v| (1..=4).map(move |j| (v, (v + j) % n))).collect();
    let s = snapshot(n, &edges);
    let basic = basic_stats(&s).unwrap();
    let r = netevo::triangles::triangle_report(&s, Some(&basic));
    assert!(r.cc_over_density.unwrap() > 10.0);
}

#[test]
fn replay_positions_are_monotone_and_nested() {
    let links = generate(&Model::PreferentialAttachment { n: 3000, k: 2 }, 6).unwrap();
    let raw: Vec<_> =
        links.iter().enumerate().map(|(t, &(u, v))| RawEvent::new(t as u64, u.to_string(), v.to_string())).collect();
    let stream: ArrivalStream = normalize(&raw);
    let schedule = checkpoint_sizes(stream.final_n(), 100);
    let mut cursor = 0;
    let mut previous: HashSet<LinkArrival> = HashSet::new();
    for &target in &schedule.sizes {
        let pos = stream.replay_to(cursor, target).unwrap();
        assert!(pos >= cursor);
        assert_eq!(pos, stream.replay_to(0, target).unwrap());
        assert!(stream.nodes_at(pos) >= target);
        assert!(pos == 0 || stream.nodes_at(pos - 1) < target);
        let current: HashSet<_> = stream.events()[..pos].iter().copied().collect();
        assert!(previous.is_subset(&current));
        previous = current;
        cursor = pos;
    }
}
