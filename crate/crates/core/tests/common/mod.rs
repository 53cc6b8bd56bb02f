//! Independent oracles shared by the integration tests. Nothing here calls
//! into the algorithms under test.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use netevo::Snapshot;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub type Edges = Vec<(u32, u32)>;

/// `G(n, p)` by one Bernoulli trial per pair.
pub fn gnp(n: u32, p: f64, seed: u64) -> Edges {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Uniformly random labeled tree by random parent attachment.
pub fn random_tree(n: u32, seed: u64) -> Edges {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

pub fn complete(n: u32) -> Edges {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn snapshot(n: u32, edges: &[(u32, u32)]) -> Snapshot {
    Snapshot::from_edges(n, edges).unwrap()
}

pub fn matrix(n: u32, edges: &[(u32, u32)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n as usize]; n as usize];
    for &(u, v) in edges {
        adj[u as usize][v as usize] = true;
        adj[v as usize][u as usize] = true;
    }
    adj
}

/// Triple loop over `u < v < w`.
pub fn brute_triangles(n: u32, edges: &[(u32, u32)]) -> (u64, Vec<u64>) {
    let adj = matrix(n, edges);
    let n = n as usize;
    let mut per = vec![0u64; n];
    let mut total = 0;
    for u in 0..n {
        for v in u + 1..n {
            if !adj[u][v] {
                continue;
            }
            for w in v + 1..n {
                if adj[u][w] && adj[v][w] {
                    total += 1;
                    per[u] += 1;
                    per[v] += 1;
                    per[w] += 1;
                }
            }
        }
    }
    (total, per)
}

pub const INF: u32 = u32::MAX;

/// Floyd–Warshall over the adjacency matrix.
pub fn all_pairs(n: u32, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let n = n as usize;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in edges {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                let via = d[i][k].saturating_add(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Plain BFS from every node over a freshly built adjacency list.
pub fn all_sources_bfs(n: u32, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); n as usize];
    for &(u, v) in edges {
        adj[u as usize].push(v as usize);
        adj[v as usize].push(u as usize);
    }
    (0..n as usize)
        .map(|s| {
            let mut dist = vec![INF; n as usize];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == INF {
                        dist[v] = dist[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}

/// Quick-find labels (smallest member of each class).
pub fn union_find_labels(n: u32, edges: &[(u32, u32)]) -> Vec<u32> {
    let mut label: Vec<u32> = (0..n).collect();
    for &(u, v) in edges {
        let (a, b) = (label[u as usize], label[v as usize]);
        if a != b {
            let (keep, drop) = (a.min(b), a.max(b));
            for l in label.iter_mut() {
                if *l == drop {
                    *l = keep;
                }
            }
        }
    }
    label
}

/// Members of the largest class (ties: smallest label) from quick-find.
pub fn giant_members(n: u32, edges: &[(u32, u32)]) -> Vec<u32> {
    let labels = union_find_labels(n, edges);
    let mut sizes = vec![0u32; n as usize];
    for &l in &labels {
        sizes[l as usize] += 1;
    }
    let best = (0..n as usize).max_by_key(|&l| (sizes[l], std::cmp::Reverse(l))).unwrap();
    (0..n).filter(|&v| labels[v as usize] == best as u32).collect()
}

/// Exact diameter and exact average distance (self-pairs included) of the
/// component holding `members`.
pub fn exact_distance_stats(n: u32, edges: &[(u32, u32)], members: &[u32]) -> (u32, f64) {
    let dist = all_sources_bfs(n, edges);
    let mut diameter = 0;
    let mut total = 0u64;
    for &u in members {
        for &v in members {
            let d = dist[u as usize][v as usize];
            assert_ne!(d, INF);
            diameter = diameter.max(d);
            total += u64::from(d);
        }
    }
    let k = members.len() as u64;
    (diameter, total as f64 / (k * k) as f64)
}

pub fn is_connected(n: u32, edges: &[(u32, u32)]) -> bool {
    n > 0 && union_find_labels(n, edges).iter().all(|&l| l == 0)
}

fn edges_of(n: u32, bits: u64) -> Edges {
    let mut edges = Vec::new();
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if bits >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    edges
}

fn bits_of(n: u32, adj: &[Vec<bool>], perm: &[usize]) -> u64 {
    let mut bits = 0u64;
    let mut bit = 0;
    for v in 1..n as usize {
        for u in 0..v {
            if adj[perm[u]][perm[v]] {
                bits |= 1 << bit;
            }
            bit += 1;
        }
    }
    bits
}

/// Canonical code: the largest adjacency code over relabelings that list
/// vertices by non-increasing degree.
fn canonical(n: u32, edges: &[(u32, u32)]) -> u64 {
    let adj = matrix(n, edges);
    let deg: Vec<usize> = adj.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    let mut order: Vec<usize> = (0..n as usize).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(cell) if deg[cell[0]] == deg[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = 0u64;
    let mut perm = Vec::with_capacity(n as usize);
    permute_cells(&cells, 0, &mut perm, &mut |p| {
        best = best.max(bits_of(n, &adj, p));
    });
    best
}

fn permute_cells(cells: &[Vec<usize>], i: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == cells.len() {
        f(perm);
        return;
    }
    let mut cell = cells[i].clone();
    let len = cell.len();
    heap_permutations(&mut cell, len, &mut |arr| {
        let len = perm.len();
        perm.extend_from_slice(arr);
        permute_cells(cells, i + 1, perm, f);
        perm.truncate(len);
    });
}

fn heap_permutations(arr: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(arr);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(arr, k - 1, f);
        if k.is_multiple_of(2) {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
    heap_permutations(arr, k - 1, f);
}

/// One representative per isomorphism class of graphs on `n` nodes, built
/// by adding a vertex to every representative on `n - 1` nodes.
pub fn nonisomorphic(n: u32) -> Vec<Edges> {
    let mut reps: Vec<Edges> = vec![vec![]];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for base in &reps {
            for mask in 0u32..(1 << (size - 1)) {
                let mut edges = base.clone();
                edges.extend((0..size - 1).filter(|u| mask >> u & 1 == 1).map(|u| (u, size - 1)));
                if seen.insert(canonical(size, &edges)) {
                    next.push(edges);
                }
            }
        }
        reps = next;
    }
    reps
}

/// Every connected graph on 1..=8 nodes, up to isomorphism: the classes on
/// at most 7 nodes exactly once, and on 8 nodes every one-vertex extension
/// of a 7-node class (which covers every 8-node class, some more than once).
pub fn connected_graphs_up_to_8() -> Vec<(u32, Edges)> {
    let mut out = Vec::new();
    for n in 1..=7 {
        for edges in nonisomorphic(n) {
            if is_connected(n, &edges) {
                out.push((n, edges));
            }
        }
    }
    for base in nonisomorphic(7) {
        for mask in 1u32..(1 << 7) {
            let mut edges = base.clone();
            edges.extend((0..7).filter(|u| mask >> u & 1 == 1).map(|u| (u, 7)));
            if is_connected(8, &edges) {
                out.push((8, edges));
            }
        }
    }
    out
}

pub fn decode_all_labeled(n: u32) -> impl Iterator<Item = Edges> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..(1 << pairs)).map(move |bits| edges_of(n, bits))
}
