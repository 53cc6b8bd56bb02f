//! Connected components and the giant component.
//!
//! Between checkpoints components are tracked with a union-find structure
//! since links are only ever added. A full BFS labeling is computed when the
//! members of the giant component are needed.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::Snapshot;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub component_count: u64,
    pub giant_size: u64,
    pub giant_fraction: f64,
}

impl ComponentSummary {
    fn new(component_count: u64, giant_size: u64, n: u64) -> Self {
        let giant_fraction = if n == 0 { 0.0 } else { giant_size as f64 / n as f64 };
        Self { component_count, giant_size, giant_fraction }
    }
}

/// Disjoint sets with union by size and path halving.
///
/// Besides sizes it keeps the smallest node of each set so that the giant
/// component can be chosen deterministically: largest size, then smallest
/// minimum node.
#[derive(Debug, Clone, Default)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    min_node: Vec<u32>,
    sets: u64,
    giant: (u32, u32),
}

impl UnionFind {
    pub fn new(n: u32) -> Self {
        let mut uf = Self::default();
        uf.ensure_nodes(n);
        uf
    }

    pub fn len(&self) -> u32 {
        self.parent.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn ensure_nodes(&mut self, n: u32) {
        let old = self.len();
        if n <= old {
            return;
        }
        self.parent.extend(old..n);
        self.size.resize(n as usize, 1);
        self.min_node.extend(old..n);
        self.sets += u64::from(n - old);
        if old == 0 {
            self.giant = (1, 0);
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false when already joined.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        self.ensure_nodes(a.max(b) + 1);
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        let low = self.min_node[ra as usize].min(self.min_node[rb as usize]);
        self.min_node[ra as usize] = low;
        self.sets -= 1;

        let candidate = (self.size[ra as usize], low);
        let (best_size, best_min) = self.giant;
        if candidate.0 > best_size || (candidate.0 == best_size && candidate.1 < best_min) {
            self.giant = candidate;
        }
        true
    }

    pub fn component_count(&self) -> u64 {
        self.sets
    }

    pub fn summary(&self) -> ComponentSummary {
        let giant = if self.is_empty() { 0 } else { self.giant.0 };
        ComponentSummary::new(self.sets, u64::from(giant), u64::from(self.len()))
    }
}

/// Per-node component labels from a BFS sweep.
///
/// Labels are assigned in order of each component's smallest node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub component_id: Vec<u32>,
    pub sizes: Vec<u32>,
    pub giant: Option<u32>,
}

impl Components {
    pub fn component_count(&self) -> u64 {
        self.sizes.len() as u64
    }

    pub fn giant_size(&self) -> u64 {
        self.giant.map_or(0, |g| u64::from(self.sizes[g as usize]))
    }

    pub fn summary(&self) -> ComponentSummary {
        ComponentSummary::new(self.component_count(), self.giant_size(), self.component_id.len() as u64)
    }

    pub fn giant_component(&self) -> GiantComponent {
        let label = self.giant;
        let contains: Vec<bool> = self.component_id.iter().map(|&c| Some(c) == label).collect();
        let members = contains.iter().enumerate().filter_map(|(v, &inside)| inside.then_some(v as u32)).collect();
        GiantComponent { members, contains }
    }
}

/// BFS labeling in Θ(n) space and Θ(n + m) time.
pub fn components(snapshot: &Snapshot) -> Components {
    const UNSEEN: u32 = u32::MAX;
    let n = snapshot.n();
    let mut component_id = vec![UNSEEN; n as usize];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if component_id[start as usize] != UNSEEN {
            continue;
        }
        let label = sizes.len() as u32;
        let mut size = 0u32;
        component_id[start as usize] = label;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in snapshot.neighbors(u) {
                if component_id[v as usize] == UNSEEN {
                    component_id[v as usize] = label;
                    queue.push_back(v);
                }
            }
        }
        sizes.push(size);
    }
    // first maximum wins, i.e. the component with the smallest minimum node
    let giant = sizes
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, u32)>, (label, &size)| match best {
            Some((_, s)) if s >= size => best,
            _ => Some((label, size)),
        })
        .map(|(label, _)| label as u32);
    Components { component_id, sizes, giant }
}

/// Node set of the giant component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GiantComponent {
    /// Members in ascending order.
    pub members: Vec<u32>,
    contains: Vec<bool>,
}

impl GiantComponent {
    pub fn contains(&self, v: u32) -> bool {
        self.contains.get(v as usize).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
