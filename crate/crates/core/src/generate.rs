//! Seeded synthetic arrival streams.

use std::collections::HashSet;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Model {
    Path {
        n: u32,
    },
    Complete {
        n: u32,
    },
    /// Erdős–Rényi `G(n, p)`, links emitted in lexicographic pair order.
    RandomGnp {
        n: u32,
        p: f64,
    },
    /// Barabási–Albert growth from a `(k+1)`-clique, `k` links per new node.
    PreferentialAttachment {
        n: u32,
        k: u32,
    },
    /// Preferential attachment up to `switch_at` nodes, after which every
    /// arriving node also triggers `extra` uniformly random links among the
    /// nodes already present, so the average degree keeps growing.
    TwoPhase {
        n: u32,
        k: u32,
        switch_at: u32,
        extra: u32,
    },
}

impl Model {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            Model::Path { n } | Model::Complete { n } if n < 1 => bad("n must be at least 1".into()),
            Model::RandomGnp { n, p } => {
                if n < 1 {
                    bad("n must be at least 1".into())
                } else if !(0.0..=1.0).contains(&p) {
                    bad(format!("probability {p} outside [0, 1]"))
                } else {
                    Ok(())
                }
            }
            Model::PreferentialAttachment { n, k } => check_pa(n, k),
            Model::TwoPhase { n, k, switch_at, .. } => {
                check_pa(switch_at, k)?;
                if switch_at > n {
                    bad(format!("switch_at {switch_at} exceeds n {n}"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

fn check_pa(n: u32, k: u32) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if n <= k {
        return Err(Error::InvalidParameter(format!("preferential attachment needs more than k = {k} nodes, got {n}")));
    }
    Ok(())
}

/// Links of the model in arrival order. Deterministic for a given seed.
pub fn generate(model: &Model, seed: u64) -> Result<Vec<(u32, u32)>> {
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match *model {
        Model::Path { n } => (1..n).map(|v| (v - 1, v)).collect(),
        Model::Complete { n } => (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect(),
        Model::RandomGnp { n, p } => gnp(n, p, &mut rng),
        Model::PreferentialAttachment { n, k } => {
            let mut g = Attachment::new(k);
            for v in k + 1..n {
                g.attach(v, &mut rng);
            }
            g.links
        }
        Model::TwoPhase { n, k, switch_at, extra } => {
            let mut g = Attachment::new(k);
            let mut present: HashSet<(u32, u32)> = g.links.iter().copied().collect();
            for v in k + 1..n {
                let start = g.links.len();
                g.attach(v, &mut rng);
                present.extend(g.links[start..].iter().map(|&(a, b)| ordered(a, b)));
                if v >= switch_at {
                    densify(&mut g, &mut present, v + 1, extra, &mut rng);
                }
            }
            g.links
        }
    })
}

fn ordered(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Geometric skipping over the pairs `(u, v)`, `u < v`, in order of `v`.
fn gnp(n: u32, p: f64, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut links = Vec::new();
    if p <= 0.0 || n < 2 {
        return links;
    }
    if p >= 1.0 {
        return (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    }
    let log_q = (1.0 - p).ln();
    let (mut v, mut w) = (1i64, -1i64);
    let n = i64::from(n);
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            links.push((w as u32, v as u32));
        }
    }
    links
}

struct Attachment {
    k: u32,
    links: Vec<(u32, u32)>,
    /// Every link endpoint once, so a uniform pick is degree-proportional.
    endpoints: Vec<u32>,
}

impl Attachment {
    fn new(k: u32) -> Self {
        let mut links = Vec::new();
        for v in 1..=k {
            for u in 0..v {
                links.push((u, v));
            }
        }
        let endpoints = links.iter().flat_map(|&(u, v)| [u, v]).collect();
        Self { k, links, endpoints }
    }

    fn attach(&mut self, v: u32, rng: &mut ChaCha8Rng) {
        let mut targets: Vec<u32> = Vec::with_capacity(self.k as usize);
        while targets.len() < self.k as usize {
            let t = self.endpoints[rng.gen_range(0..self.endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for t in targets {
            self.links.push((v, t));
            self.endpoints.extend([v, t]);
        }
    }
}

fn densify(g: &mut Attachment, present: &mut HashSet<(u32, u32)>, nodes: u32, extra: u32, rng: &mut ChaCha8Rng) {
    let capacity = u64::from(nodes) * u64::from(nodes - 1) / 2;
    let mut added = 0;
    while added < extra && (present.len() as u64) < capacity {
        let a = rng.gen_range(0..nodes);
        let b = rng.gen_range(0..nodes);
        if a != b && present.insert(ordered(a, b)) {
            g.links.push((a, b));
            g.endpoints.extend([a, b]);
            added += 1;
        }
    }
}

/// Writes `<time> <u> <v>` lines, the time being the link's position.
pub fn write_stream<W: Write>(links: &[(u32, u32)], mut writer: W) -> Result<()> {
    let mut w = std::io::BufWriter::new(&mut writer);
    for (t, &(u, v)) in links.iter().enumerate() {
        writeln!(w, "{t} {u} {v}")?;
    }
    w.flush()?;
    Ok(())
}
