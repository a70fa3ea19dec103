//! Instance generators: the tight lower-bound family, random graphs with a
//! planted modulator, and small named graphs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

/// Draws of clique sizes before giving up on an instance with at least two vertices.
const RETRY_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("lower-bound family needs d >= 1")]
    ZeroD,
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
}

/// The lower-bound graph for parameter `d`, with its block labels.
///
/// Numbering: modulator vertices first, then one vertex per pair `(i, j)`,
/// then the big clique as blocks ordered by the bitmask of the subset they see.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundGraph {
    pub graph: Graph,
    pub d: usize,
    pub x: VertexSet,
    /// Singleton clique for each pair `1 <= i < j <= d`.
    pub pair_cliques: BTreeMap<(usize, usize), Vertex>,
    /// Block of the big clique whose vertices see exactly the modulator vertices in the mask (bit `i-1` for `v_i`).
    pub blocks: BTreeMap<u32, VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairLabel {
    pub i: usize,
    pub j: usize,
    pub vertex: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLabel {
    pub mask: u32,
    /// 1-based indices of the modulator vertices seen by the block.
    pub sees: Vec<usize>,
    pub vertices: Vec<Vertex>,
}

/// Serializable labels of a lower-bound graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundLabels {
    pub d: usize,
    pub x: Vec<Vertex>,
    pub pair_cliques: Vec<PairLabel>,
    pub blocks: Vec<BlockLabel>,
}

impl LowerBoundGraph {
    pub fn big_clique(&self) -> VertexSet {
        self.blocks.values().flatten().copied().collect()
    }

    pub fn labels(&self) -> LowerBoundLabels {
        LowerBoundLabels {
            d: self.d,
            x: self.x.iter().copied().collect(),
            pair_cliques: self.pair_cliques.iter().map(|(&(i, j), &vertex)| PairLabel { i, j, vertex }).collect(),
            blocks: self
                .blocks
                .iter()
                .map(|(&mask, vs)| BlockLabel {
                    mask,
                    sees: (1..=self.d).filter(|i| mask >> (i - 1) & 1 == 1).collect(),
                    vertices: vs.iter().copied().collect(),
                })
                .collect(),
        }
    }

    /// Re-derives the structural invariants from the adjacency alone.
    pub fn check_structure(&self) -> Result<(), String> {
        let g = &self.graph;
        let d = self.d;
        if d == 0 {
            return Err("d must be positive".into());
        }
        let expected_n = d + d * (d - 1) / 2 + ((d + 1) << d);
        if g.n() != expected_n {
            return Err(format!("{} vertices, expected {expected_n}", g.n()));
        }
        if self.x.len() != d || !g.is_independent(&self.x) {
            return Err("modulator is not an independent set of size d".into());
        }
        let xs: Vec<Vertex> = self.x.iter().copied().collect();
        for (&(i, j), &v) in &self.pair_cliques {
            let want: VertexSet = [xs[i - 1], xs[j - 1]].into();
            if g.neighbors(v) != &want {
                return Err(format!("pair vertex {v} has neighborhood {:?}", g.neighbors(v)));
            }
        }
        if self.pair_cliques.len() != d * (d - 1) / 2 {
            return Err("wrong number of pair cliques".into());
        }
        let big = self.big_clique();
        if big.len() != (d + 1) << d || !g.is_clique(&big) {
            return Err("big clique has the wrong size or is not complete".into());
        }
        if self.blocks.len() != 1 << d {
            return Err("wrong number of blocks".into());
        }
        for (&mask, block) in &self.blocks {
            if block.len() != d + 1 {
                return Err(format!("block {mask:b} has {} vertices", block.len()));
            }
            let want: VertexSet = (0..d).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).collect();
            for &v in block {
                let seen: VertexSet = g.neighbors(v).intersection(&self.x).copied().collect();
                if seen != want {
                    return Err(format!("block vertex {v} sees {seen:?}, expected {want:?}"));
                }
                if g.neighbors(v).iter().any(|u| !self.x.contains(u) && !big.contains(u)) {
                    return Err(format!("block vertex {v} leaves the big clique"));
                }
            }
        }
        Ok(())
    }
}

pub fn gen_lower_bound(d: usize) -> Result<LowerBoundGraph, GenError> {
    if d == 0 {
        return Err(GenError::ZeroD);
    }
    if d > 16 {
        return Err(GenError::Parameters(format!("d = {d} is too large to materialize")));
    }
    let x: VertexSet = (0..d).collect();
    let mut next = d;
    let mut edges = Vec::new();
    let mut pair_cliques = BTreeMap::new();
    for i in 1..=d {
        for j in i + 1..=d {
            edges.push((i - 1, next));
            edges.push((j - 1, next));
            pair_cliques.insert((i, j), next);
            next += 1;
        }
    }
    let mut blocks = BTreeMap::new();
    for mask in 0u32..(1 << d) {
        let block: VertexSet = (next..next + d + 1).collect();
        next += d + 1;
        for &v in &block {
            edges.extend((0..d).filter(|i| mask >> i & 1 == 1).map(|i| (i, v)));
        }
        blocks.insert(mask, block);
    }
    let big: Vec<Vertex> = blocks.values().flatten().copied().collect();
    for (a, &u) in big.iter().enumerate() {
        edges.extend(big[a + 1..].iter().map(|&v| (u, v)));
    }
    let graph = Graph::from_edges(next, &edges).expect("construction stays in range");
    Ok(LowerBoundGraph { graph, d, x, pair_cliques, blocks })
}

/// Random connected graph made of disjoint cliques plus `x_size` modulator vertices wired with
/// probability `edge_prob`. Vertex labels are shuffled. The returned set is a valid modulator.
pub fn gen_random_cluster_plus(
    x_size: usize,
    n_cliques: usize,
    max_clique: usize,
    edge_prob: f64,
    seed: u64,
) -> Result<(Graph, VertexSet), GenError> {
    if n_cliques == 0 || max_clique == 0 || !(0.0..=1.0).contains(&edge_prob) {
        return Err(GenError::Parameters("need n_cliques, max_clique >= 1 and edge_prob in [0, 1]".into()));
    }
    if x_size == 0 && n_cliques > 1 {
        return Err(GenError::Parameters("several cliques cannot be connected without modulator vertices".into()));
    }
    if x_size + n_cliques * max_clique < 2 {
        return Err(GenError::Parameters("a single vertex cannot be colored".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sizes: Vec<usize> = Vec::new();
    for _ in 0..RETRY_CAP {
        sizes = (0..n_cliques).map(|_| rng.gen_range(1..=max_clique)).collect();
        if x_size + sizes.iter().sum::<usize>() >= 2 {
            break;
        }
    }
    let clique_total: usize = sizes.iter().sum();
    let n = clique_total + x_size;
    if n < 2 {
        return Err(GenError::Parameters(format!("no instance with two vertices after {RETRY_CAP} draws")));
    }
    // Unshuffled layout: cliques at 0..clique_total, modulator after.
    let mut edges = Vec::new();
    let mut start = 0;
    for &s in &sizes {
        for u in start..start + s {
            edges.extend((u + 1..start + s).map(|v| (u, v)));
        }
        start += s;
    }
    let xs: Vec<Vertex> = (clique_total..n).collect();
    for (a, &x) in xs.iter().enumerate() {
        for v in 0..clique_total {
            if rng.gen_bool(edge_prob) {
                edges.push((v, x));
            }
        }
        for &y in &xs[a + 1..] {
            if rng.gen_bool(edge_prob) {
                edges.push((x, y));
            }
        }
    }
    let g = Graph::from_edges(n, &edges).expect("generated edges are valid");
    let comps = g.components();
    if comps.len() > 1 {
        let hub = xs[0];
        for comp in comps.iter().filter(|c| !c.contains(&hub)) {
            let target = comp.iter().copied().find(|&v| v < clique_total).unwrap_or(comp.iter().copied().next().unwrap());
            edges.push((hub, target));
        }
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let relabeled: Vec<_> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    let graph = Graph::from_edges(n, &relabeled).expect("relabeling preserves validity");
    let x = xs.iter().map(|&v| perm[v]).collect();
    Ok((graph, x))
}

/// `P<n>`, `C<n>`, `K<n>` or `star_<k>`.
pub fn named_graph(name: &str) -> Result<Graph, GenError> {
    let unknown = || GenError::UnknownName(name.to_string());
    let (kind, num) = if let Some(k) = name.strip_prefix("star_") {
        ("star", k)
    } else if name.len() > 1 && name.is_char_boundary(1) {
        name.split_at(1)
    } else {
        return Err(unknown());
    };
    let k: usize = num.parse().map_err(|_| unknown())?;
    let edges: Vec<(Vertex, Vertex)> = match kind {
        "P" if k >= 2 => (1..k).map(|v| (v - 1, v)).collect(),
        "C" if k >= 3 => (0..k).map(|v| (v, (v + 1) % k)).collect(),
        "K" if k >= 1 => crate::oracle::all_pairs(k),
        "star" if k >= 2 => (1..=k).map(|v| (0, v)).collect(),
        _ => return Err(unknown()),
    };
    let n = if kind == "star" { k + 1 } else { k };
    Ok(Graph::from_edges(n, &edges).expect("named graphs are simple"))
}
