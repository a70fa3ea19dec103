//! Cluster-deletion sets: validation, exact and heuristic search.

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

pub const DEFAULT_K_MAX: usize = 12;
pub const BRUTE_FORCE_GUARD: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModulatorError {
    #[error("G - X contains the induced path {0}-{1}-{2}")]
    NotCluster(Vertex, Vertex, Vertex),
    #[error("modulator vertex {vertex} out of range for graph with {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("no modulator of size at most {k_max} (budget exceeded)")]
    BudgetExceeded { k_max: usize },
    #[error("brute force refused: {n} vertices exceeds guard {guard}")]
    TooLarge { n: usize, guard: usize },
}

/// A vertex set `x` whose removal leaves disjoint cliques, plus that decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulator {
    pub x: VertexSet,
    /// Components of `G - x`, ordered by smallest member.
    pub cliques: Vec<VertexSet>,
    /// Clique id of every vertex outside `x`.
    pub clique_of: Vec<Option<usize>>,
}

impl Modulator {
    pub fn size(&self) -> usize {
        self.x.len()
    }

    pub fn in_x(&self, v: Vertex) -> bool {
        self.clique_of[v].is_none()
    }

    /// Serialized form: the indices of `x` on one line.
    pub fn to_line(&self) -> String {
        self.x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    }
}

pub fn validate_modulator(g: &Graph, x: &VertexSet) -> Result<Modulator, ModulatorError> {
    if let Some(&v) = x.iter().find(|&&v| v >= g.n()) {
        return Err(ModulatorError::OutOfRange { vertex: v, n: g.n() });
    }
    let deleted: Vec<bool> = g.vertices().map(|v| x.contains(&v)).collect();
    if let Some((a, b, c)) = g.find_induced_p3_avoiding(&deleted) {
        return Err(ModulatorError::NotCluster(a, b, c));
    }
    let mut clique_of = vec![None; g.n()];
    let mut cliques: Vec<VertexSet> = Vec::new();
    for v in g.vertices().filter(|v| !x.contains(v)) {
        if clique_of[v].is_some() {
            continue;
        }
        // No induced P3 remains, so the component of v is v plus its surviving neighbors.
        let mut k: VertexSet = g.neighbors(v).iter().copied().filter(|w| !x.contains(w)).collect();
        k.insert(v);
        for &w in &k {
            clique_of[w] = Some(cliques.len());
        }
        cliques.push(k);
    }
    Ok(Modulator { x: x.clone(), cliques, clique_of })
}

/// Minimum modulator by branching on the least induced P3 with iterative deepening.
pub fn exact_dc(g: &Graph, k_max: usize) -> Result<Modulator, ModulatorError> {
    let mut deleted = vec![false; g.n()];
    for k in 0..=k_max {
        if branch(g, &mut deleted, k) {
            let x = g.vertices().filter(|&v| deleted[v]).collect();
            return validate_modulator(g, &x);
        }
    }
    Err(ModulatorError::BudgetExceeded { k_max })
}

fn branch(g: &Graph, deleted: &mut [bool], budget: usize) -> bool {
    let Some((a, b, c)) = g.find_induced_p3_avoiding(deleted) else {
        return true;
    };
    if budget == 0 || disjoint_p3_packing(g, deleted, budget + 1) > budget {
        return false;
    }
    for v in [a, b, c] {
        deleted[v] = true;
        let found = branch(g, deleted, budget - 1);
        if found {
            return true;
        }
        deleted[v] = false;
    }
    false
}

/// Greedy count of vertex-disjoint induced P3s, stopping at `cap`; a lower bound on the remaining deletions.
fn disjoint_p3_packing(g: &Graph, deleted: &[bool], cap: usize) -> usize {
    let mut used = deleted.to_vec();
    let mut count = 0;
    while count < cap {
        match g.find_induced_p3_avoiding(&used) {
            Some((a, b, c)) => {
                used[a] = true;
                used[b] = true;
                used[c] = true;
                count += 1;
            }
            None => break,
        }
    }
    count
}

/// Minimum modulator by enumerating subsets in order of size, then lexicographic.
pub fn brute_force_dc(g: &Graph) -> Result<Modulator, ModulatorError> {
    let n = g.n();
    if n > BRUTE_FORCE_GUARD {
        return Err(ModulatorError::TooLarge { n, guard: BRUTE_FORCE_GUARD });
    }
    for size in 0..=n {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let x: VertexSet = pick.iter().copied().collect();
            if let Ok(m) = validate_modulator(g, &x) {
                return Ok(m);
            }
            if !next_combination(&mut pick, n) {
                break;
            }
        }
    }
    unreachable!("deleting every vertex always leaves a cluster graph")
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Repeatedly deletes the vertex lying on the most induced P3s (ties to the least index).
pub fn greedy_dc(g: &Graph) -> Modulator {
    let mut deleted = vec![false; g.n()];
    loop {
        let mut hits = vec![0usize; g.n()];
        let mut any = false;
        for b in g.vertices().filter(|&b| !deleted[b]) {
            let nb: Vec<Vertex> = g.neighbors(b).iter().copied().filter(|&w| !deleted[w]).collect();
            for (i, &a) in nb.iter().enumerate() {
                for &c in &nb[i + 1..] {
                    if !g.has_edge(a, c) {
                        hits[a] += 1;
                        hits[b] += 1;
                        hits[c] += 1;
                        any = true;
                    }
                }
            }
        }
        if !any {
            break;
        }
        let best = (0..g.n()).max_by_key(|&v| (hits[v], std::cmp::Reverse(v))).unwrap();
        deleted[best] = true;
    }
    let x = g.vertices().filter(|&v| deleted[v]).collect();
    validate_modulator(g, &x).expect("greedy deletion ends with no induced P3")
}
