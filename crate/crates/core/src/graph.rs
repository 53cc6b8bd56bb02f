//! Growing adjacency store and its immutable sorted-adjacency snapshots.

use crate::error::{Error, Result};

/// Append-only undirected graph, grown one link at a time.
///
/// Neighbor lists are kept sorted lazily: a node's list is marked dirty when
/// it receives a neighbor, and only dirty lists are re-sorted when a snapshot
/// is taken.
#[derive(Debug, Clone, Default)]
pub struct GrowingGraph {
    adjacency: Vec<Vec<u32>>,
    dirty: Vec<bool>,
    dirty_nodes: Vec<u32>,
    m: u64,
}

impl GrowingGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(nodes: usize) -> Self {
        Self { adjacency: Vec::with_capacity(nodes), dirty: Vec::with_capacity(nodes), ..Self::default() }
    }

    pub fn n(&self) -> u32 {
        self.adjacency.len() as u32
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Makes room for nodes `0..n` (isolated until linked).
    pub fn ensure_nodes(&mut self, n: u32) {
        let n = n as usize;
        if n > self.adjacency.len() {
            self.adjacency.resize_with(n, Vec::new);
            self.dirty.resize(n, false);
        }
    }

    /// Adds the undirected link `{u, v}`. The caller guarantees it is new.
    pub fn add_link(&mut self, u: u32, v: u32) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.ensure_nodes(u.max(v) + 1);
        self.adjacency[u as usize].push(v);
        self.adjacency[v as usize].push(u);
        self.mark(u);
        self.mark(v);
        self.m += 1;
        Ok(())
    }

    fn mark(&mut self, node: u32) {
        let flag = &mut self.dirty[node as usize];
        if !*flag {
            *flag = true;
            self.dirty_nodes.push(node);
        }
    }

    fn sort_dirty(&mut self) {
        for node in self.dirty_nodes.drain(..) {
            self.adjacency[node as usize].sort_unstable();
            self.dirty[node as usize] = false;
        }
    }

    /// Sorts the lists touched since the previous snapshot and copies the
    /// graph into a compact snapshot. The graph stays usable for growth.
    pub fn finalize_snapshot(&mut self) -> Snapshot {
        self.snapshot_at(None)
    }

    pub fn snapshot_at(&mut self, checkpoint_time: Option<u64>) -> Snapshot {
        self.sort_dirty();
        let mut offsets = Vec::with_capacity(self.adjacency.len() + 1);
        let mut neighbors = Vec::with_capacity(2 * self.m as usize);
        offsets.push(0);
        for list in &self.adjacency {
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        Snapshot { offsets, neighbors, m: self.m, checkpoint_time }
    }
}

/// Immutable graph in sorted adjacency-array form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    m: u64,
    checkpoint_time: Option<u64>,
}

impl Default for Snapshot {
    fn default() -> Self {
        Self { offsets: vec![0], neighbors: Vec::new(), m: 0, checkpoint_time: None }
    }
}

impl Snapshot {
    /// Builds a snapshot from an edge list over nodes `0..n`.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = GrowingGraph::with_capacity(n as usize);
        g.ensure_nodes(n);
        for &(u, v) in edges {
            g.add_link(u, v)?;
        }
        Ok(g.finalize_snapshot())
    }

    pub fn n(&self) -> u32 {
        (self.offsets.len() - 1) as u32
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn checkpoint_time(&self) -> Option<u64> {
        self.checkpoint_time
    }

    #[inline]
    pub fn neighbors(&self, u: u32) -> &[u32] {
        let u = u as usize;
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: u32) -> u32 {
        let u = u as usize;
        (self.offsets[u + 1] - self.offsets[u]) as u32
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.offsets.windows(2).map(|w| (w[1] - w[0]) as u32)
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().max().unwrap_or(0)
    }

    /// Iterates every link once as `(u, v)` with `u < v`.
    pub fn links(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n()).flat_map(move |u| {
            let ns = self.neighbors(u);
            let start = ns.partition_point(|&v| v <= u);
            ns[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Membership test by binary search in `u`'s sorted segment.
    pub fn has_link(&self, u: u32, v: u32) -> Result<bool> {
        let n = self.n();
        for index in [u, v] {
            if index >= n {
                return Err(Error::NodeOutOfRange { index, n });
            }
        }
        Ok(self.neighbors(u).binary_search(&v).is_ok())
    }
}
