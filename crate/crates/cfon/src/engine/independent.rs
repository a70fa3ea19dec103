//! Independent modulators with at least three vertices.

use super::cases::{Case, Trace};
use super::state::{Coloring, PhaseState};
use super::EngineError;
use crate::graph::{Vertex, VertexSet};

/// Every clique vertex has at most one modulator neighbor: a complete coloring with `d + 1` colors.
pub(crate) fn run_atmost1(mut st: PhaseState<'_>) -> Result<(Coloring, Trace), EngineError> {
    let extra = st.extra();
    let xs = st.xs().to_vec();
    for &x in &xs {
        st.paint(x, extra);
    }
    // Each modulator vertex claims its least neighbor, colored with its rank.
    for (i, &x) in xs.iter().enumerate() {
        let w = *st.graph.neighbors(x).iter().next().ok_or(EngineError::Isolated(x))?;
        st.paint(w, i + 1);
        st.rely(x, w);
    }

    for k in 0..st.num_cliques() {
        let clique: Vec<Vertex> = st.clique(k).iter().copied().collect();
        let painted: Vec<Vertex> = clique.iter().copied().filter(|&w| st.colored(w)).collect();
        let lone_x = |st: &PhaseState, w: Vertex| st.x_nbrs(w).first().copied();
        if clique.len() == 1 {
            let w = clique[0];
            if !st.colored(w) {
                st.paint(w, extra);
            }
            st.rely(w, lone_x(&st, w).ok_or(EngineError::Disconnected)?);
            st.hit(Case::IaoSingleton);
        } else if painted.len() >= 2 {
            let (v, v2) = (painted[0], painted[1]);
            st.fill(k, extra);
            st.rely(v, v2);
            st.all_rely_on(k, v, &[]);
            st.hit(Case::IaoTwoColored);
        } else if painted.len() == 1 {
            let v = painted[0];
            let j = st.color(v);
            let others: Vec<Vertex> = clique.iter().copied().filter(|&w| w != v).collect();
            if clique.len() == 2 {
                let v2 = others[0];
                let owner_j = xs[j - 1];
                let c = if !st.adj(v2, owner_j) {
                    st.hit(Case::IaoPairMissing);
                    j
                } else {
                    st.hit(Case::IaoPairShared);
                    (1..=st.d()).find(|&c| c != j).unwrap()
                };
                st.paint(v2, c);
                st.rely(v2, v);
                st.rely(v, v2);
            } else {
                // A second vertex takes a rank whose owner it does not see.
                let (v2, l) = others
                    .iter()
                    .find_map(|&w| {
                        (1..=st.d()).find(|&l| l != j && !st.adj(w, xs[l - 1])).map(|l| (w, l))
                    })
                    .expect("d >= 3 leaves a rank avoiding j and the single neighbor");
                st.paint(v2, l);
                st.fill(k, extra);
                st.rely(v2, v);
                st.all_rely_on(k, v, &[]);
                st.hit(Case::IaoOneColoredLarge);
            }
        } else {
            let avoid = |st: &PhaseState, w: Vertex, skip: Option<usize>| {
                (1..=st.d()).find(|&l| Some(l) != skip && !st.adj(w, xs[l - 1])).unwrap()
            };
            let (v, v2) = (clique[0], clique[1]);
            let j = avoid(&st, v, None);
            let l = avoid(&st, v2, Some(j));
            st.paint(v, j);
            st.paint(v2, l);
            st.fill(k, extra);
            st.rely(v, v2);
            st.all_rely_on(k, v, &[]);
            st.hit(Case::IaoUncolored);
        }
    }
    Ok(st.finish())
}

/// `S_K`: modulator vertices outside `N(anchor)` whose whole neighborhood lies in clique `k`.
/// With `unmatched_only` the set is restricted to modulator vertices without modulator neighbors.
pub(crate) fn s_k(st: &PhaseState<'_>, k: usize, anchor: Vertex, unmatched_only: bool) -> VertexSet {
    st.xs()
        .iter()
        .copied()
        .filter(|&x| !(unmatched_only && st.in_y(x)))
        .filter(|&x| !st.adj(x, anchor))
        .filter(|&x| st.graph.neighbors(x).iter().all(|&w| st.modulator.clique_of[w] == Some(k)))
        .collect()
}

/// Initial phase when some clique vertex sees two or more modulator vertices.
pub(crate) fn initial_deg2<'g>(mut st: PhaseState<'g>) -> Result<PhaseState<'g>, EngineError> {
    let g = st.graph;
    let extra = st.extra();
    let shared = |st: &PhaseState, w: Vertex| !st.in_x(w) && st.deg_x(w) >= 2;

    let single = g.vertices().find(|&w| shared(&st, w) && st.clique(st.clique_id(w)).len() == 1);
    let v = match single {
        Some(v) => v,
        None => g.vertices().find(|&w| shared(&st, w)).ok_or(EngineError::Precondition("no shared neighbor"))?,
    };
    let k = st.clique_id(v);
    let nx = st.x_nbrs(v);
    let (i1, i2) = (st.base(nx[0]), st.base(nx[1]));
    let rely_all_on_v = |st: &mut PhaseState| {
        for &x in &nx {
            st.rely(x, v);
        }
    };

    if single.is_some() {
        st.paint(v, i1);
        st.rely(v, st.owner_of(i1));
        rely_all_on_v(&mut st);
        st.free_color = Some(i2);
        st.hit(Case::IdSingleton);
        st.refresh_colored_cliques();
        return Ok(st);
    }

    let sk = s_k(&st, k, v, false);
    st.paint(v, i1);
    rely_all_on_v(&mut st);
    if !sk.is_empty() {
        st.free_color = Some(i2);
        for &x in &sk {
            let w = *g.neighbors(x).iter().next().ok_or(EngineError::Isolated(x))?;
            if !st.colored(w) {
                st.paint(w, st.base(x));
            }
            st.rely(x, w);
        }
        let uncolored: Vec<Vertex> = st.clique(k).iter().copied().filter(|&w| !st.colored(w)).collect();
        if uncolored.is_empty() {
            st.rely(v, st.owner_of(i1));
            for &w in st.clique(k).iter().filter(|&&w| w != v) {
                st.rely(w, st.owner_of(st.color(w)));
            }
            st.hit(Case::IdSkAllColored);
        } else if let Some(&bare) = uncolored.iter().find(|&&w| st.unique_nbr(w).is_none()) {
            st.paint(v, i2);
            st.paint(bare, extra);
            st.fill(k, i1);
            st.free_color = Some(i1);
            st.rely(bare, v);
            st.all_rely_on(k, bare, &[]);
            st.hit(Case::IdSkReassign);
        } else {
            for &w in &uncolored {
                let u = st.unique_nbr(w).unwrap();
                st.rely(w, u);
            }
            for &w in &uncolored {
                st.paint(w, extra);
            }
            st.rely(v, st.owner_of(i1));
            for &w in st.clique(k).iter().filter(|&&w| w != v && !uncolored.contains(&w)) {
                st.rely(w, st.owner_of(st.color(w)));
            }
            st.hit(Case::IdSkWitnessed);
        }
    } else if let Some(v2) = st.clique(k).iter().copied().find(|&w| w != v && !st.adj(w, st.owner_of(i1))) {
        st.paint(v2, extra);
        st.fill(k, i2);
        st.free_color = Some(i2);
        st.rely(v2, v);
        st.all_rely_on(k, v2, &[]);
        st.hit(Case::IdNoSkEscape);
    } else {
        st.paint(v, i2);
        st.fill(k, extra);
        st.free_color = Some(i1);
        let o = st.owner_of(i1);
        for &w in st.clique(k) {
            st.rely(w, o);
        }
        st.hit(Case::IdNoSkAllSee);
    }
    st.refresh_colored_cliques();
    Ok(st)
}
