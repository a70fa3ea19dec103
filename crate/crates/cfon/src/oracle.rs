//! Independent ground truth: a coloring verifier, an exact solver for the
//! minimum palette, and an exhaustive sweep over small labeled graphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{color_graph_traced, Color, Coloring, Trace, UNCOLORED};
use crate::graph::{Graph, Vertex};
use crate::modulator::brute_force_dc;

pub const CHI_GUARD: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Failure {
    Uncolored,
    /// No color occurs exactly once among the neighbors.
    NoUniqueColor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessFailure {
    NotANeighbor,
    NotUnique,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub failures: Vec<(Vertex, Failure)>,
    /// Problems with recorded witnesses. Informational: validity depends on colors alone.
    pub witness_failures: Vec<(Vertex, WitnessFailure)>,
}

fn occurrences(g: &Graph, color: &[Color], v: Vertex, c: Color) -> usize {
    g.neighbors(v).iter().filter(|&&u| color[u] == c).count()
}

fn has_unique_color(g: &Graph, color: &[Color], v: Vertex) -> bool {
    g.neighbors(v).iter().any(|&u| occurrences(g, color, v, color[u]) == 1)
}

/// Checks that every vertex is colored and sees some color exactly once.
pub fn verify_cfon(g: &Graph, coloring: &Coloring) -> VerifyReport {
    let color = &coloring.color;
    let mut report = VerifyReport::default();
    for v in g.vertices() {
        if color.get(v).copied().unwrap_or(UNCOLORED) == UNCOLORED {
            report.failures.push((v, Failure::Uncolored));
        }
    }
    if color.len() < g.n() {
        report.valid = false;
        return report;
    }
    if report.failures.is_empty() {
        for v in g.vertices() {
            if !has_unique_color(g, color, v) {
                report.failures.push((v, Failure::NoUniqueColor));
            }
        }
    }
    for v in g.vertices() {
        let Some(w) = coloring.witness.get(v).copied().flatten() else { continue };
        if !g.has_edge(v, w) {
            report.witness_failures.push((v, WitnessFailure::NotANeighbor));
        } else if occurrences(g, color, v, color[w]) != 1 {
            report.witness_failures.push((v, WitnessFailure::NotUnique));
        }
    }
    report.valid = report.failures.is_empty();
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChiError {
    #[error("vertex {0} is isolated; no conflict-free coloring exists")]
    Isolated(Vertex),
    #[error("exact search refused: {n} vertices exceeds guard {guard}")]
    TooLarge { n: usize, guard: usize },
    #[error("more than {k_max} colors needed")]
    ExceedsKmax { k_max: usize },
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<Vertex>,
    /// Vertices whose neighborhoods become fully colored once position `i` is assigned.
    closes_at: Vec<Vec<Vertex>>,
    color: Vec<Color>,
    k: Color,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, used: Color) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        for c in 1..=self.k.min(used + 1) {
            self.color[v] = c;
            let feasible = self.closes_at[pos].iter().all(|&u| has_unique_color(self.g, &self.color, u));
            if feasible && self.run(pos + 1, used.max(c)) {
                return true;
            }
        }
        self.color[v] = UNCOLORED;
        false
    }
}

/// Minimum palette together with a coloring attaining it, by backtracking over `k = 1, 2, ...`.
pub fn exact_chi_on_with(g: &Graph, k_max: usize, guard: usize) -> Result<(usize, Vec<Color>), ChiError> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(ChiError::Isolated(v));
    }
    if g.n() > guard {
        return Err(ChiError::TooLarge { n: g.n(), guard });
    }
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos_of = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos_of[v] = i;
    }
    let mut closes_at = vec![Vec::new(); g.n()];
    for u in g.vertices() {
        if let Some(last) = g.neighbors(u).iter().map(|&w| pos_of[w]).max() {
            closes_at[last].push(u);
        }
    }
    for k in 1..=k_max {
        let mut s = Search { g, order: order.clone(), closes_at: closes_at.clone(), color: vec![UNCOLORED; g.n()], k };
        if s.run(0, 0) {
            return Ok((k, s.color));
        }
    }
    Err(ChiError::ExceedsKmax { k_max })
}

/// Minimum number of colors in a conflict-free open-neighborhood coloring.
pub fn exact_chi_on(g: &Graph, k_max: usize) -> Result<usize, ChiError> {
    exact_chi_on_with(g, k_max, CHI_GUARD).map(|(k, _)| k)
}

/// Which check a sweep counterexample failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Check {
    /// The engine errored, produced an invalid coloring, or exceeded the bound.
    Engine,
    /// The exact optimum exceeded the colors used or the bound.
    Optimum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: Check,
    pub edge_list: String,
    pub modulator: Vec<Vertex>,
    pub reason: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    pub graphs_checked: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub trace: Trace,
}

/// Edges of the complete graph on `n` vertices, in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every connected labeled graph on exactly `n >= 2` vertices: colors it with a minimum
/// modulator, verifies, and compares the palette against the exact optimum and the bound.
pub fn exhaustive_small_sweep(n: usize) -> SweepReport {
    let pairs = all_pairs(n);
    let mut report = SweepReport { n, ..SweepReport::default() };
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).expect("pairs are in range and loop-free");
        if n < 2 || !g.is_connected() {
            continue;
        }
        report.graphs_checked += 1;
        if let Err((check, reason)) = check_one(&g, &mut report.trace) {
            let xs = brute_force_dc(&g).map(|m| m.x.into_iter().collect()).unwrap_or_default();
            report.counterexamples.push(Counterexample { check, edge_list: g.to_edge_list(), modulator: xs, reason });
        }
    }
    report
}

fn check_one(g: &Graph, trace: &mut Trace) -> Result<(), (Check, String)> {
    let engine = |m: String| (Check::Engine, m);
    let m = brute_force_dc(g).map_err(|e| engine(e.to_string()))?;
    let bound = (m.size() + 1).max(3);
    let (coloring, t) = color_graph_traced(g, Some(&m.x)).map_err(|e| engine(e.to_string()))?;
    trace.merge(&t);
    let report = verify_cfon(g, &coloring);
    if !report.valid {
        return Err(engine(format!("invalid coloring: {:?}", report.failures)));
    }
    let used = coloring.palette_size();
    if used > bound {
        return Err(engine(format!("{used} colors exceed bound {bound}")));
    }
    let chi = exact_chi_on(g, bound).map_err(|e| (Check::Optimum, e.to_string()))?;
    if chi > used {
        return Err((Check::Optimum, format!("exact optimum {chi} above colors used {used}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StressConfig {
    pub count: u64,
    pub seed: u64,
    pub max_n: usize,
    pub max_x: usize,
    /// Instances up to this size are also compared against the exact optimum.
    pub chi_guard: usize,
}

impl Default for StressConfig {
    fn default() -> Self {
        StressConfig { count: 100, seed: 0, max_n: 40, max_x: 6, chi_guard: 12 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StressFailure {
    pub seed: u64,
    pub edge_list: String,
    pub modulator: Vec<Vertex>,
    pub reason: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct StressReport {
    pub instances: u64,
    pub chi_checked: u64,
    pub max_n_seen: usize,
    /// Failures in ascending seed order.
    pub failures: Vec<StressFailure>,
    #[serde(skip)]
    pub trace: Trace,
}

/// Random generator parameters for one stress seed, keeping the vertex count within `max_n`.
pub fn stress_params(seed: u64, max_n: usize, max_x: usize) -> (usize, usize, usize, f64) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cf0e);
    let x_size = rng.gen_range(0..=max_x.min(max_n.saturating_sub(1)));
    let room = max_n.saturating_sub(x_size).max(1);
    let n_cliques = if x_size == 0 { 1 } else { rng.gen_range(1..=room.min(8)) };
    let max_clique = rng.gen_range(1..=(room / n_cliques).clamp(1, 8));
    let edge_prob = [0.05, 0.15, 0.3, 0.5, 0.8, 1.0][rng.gen_range(0..6)];
    let max_clique = if x_size == 0 { max_clique.max(2) } else { max_clique };
    (x_size, n_cliques, max_clique, edge_prob)
}

/// Generates, colors, verifies and (for small instances) compares against the optimum.
pub fn run_stress(cfg: &StressConfig) -> StressReport {
    let mut report = StressReport::default();
    for seed in cfg.seed..cfg.seed.saturating_add(cfg.count) {
        let (x_size, n_cliques, max_clique, edge_prob) = stress_params(seed, cfg.max_n, cfg.max_x);
        let (g, x) = match crate::generators::gen_random_cluster_plus(x_size, n_cliques, max_clique, edge_prob, seed) {
            Ok(inst) => inst,
            Err(e) => {
                report.failures.push(StressFailure {
                    seed,
                    edge_list: String::new(),
                    modulator: Vec::new(),
                    reason: format!("generator: {e}"),
                });
                continue;
            }
        };
        report.instances += 1;
        report.max_n_seen = report.max_n_seen.max(g.n());
        let outcome = stress_one(&g, &x, cfg.chi_guard, &mut report);
        if let Err(reason) = outcome {
            report.failures.push(StressFailure {
                seed,
                edge_list: g.to_edge_list(),
                modulator: x.iter().copied().collect(),
                reason,
            });
        }
    }
    report
}

fn stress_one(g: &Graph, x: &crate::graph::VertexSet, chi_guard: usize, report: &mut StressReport) -> Result<(), String> {
    let bound = (x.len() + 1).max(3);
    let (coloring, t) = color_graph_traced(g, Some(x)).map_err(|e| e.to_string())?;
    report.trace.merge(&t);
    let verdict = verify_cfon(g, &coloring);
    if !verdict.valid {
        return Err(format!("invalid coloring: {:?}", verdict.failures));
    }
    let used = coloring.palette_size();
    if used > bound {
        return Err(format!("{used} colors exceed bound {bound}"));
    }
    if g.n() <= chi_guard {
        report.chi_checked += 1;
        let chi = exact_chi_on_with(g, used, chi_guard).map_err(|e| e.to_string())?.0;
        if chi > used {
            return Err(format!("exact optimum {chi} above colors used {used}"));
        }
    }
    Ok(())
}
