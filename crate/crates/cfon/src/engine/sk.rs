//! Coloring a clique while protecting unmatched modulator vertices whose
//! whole neighborhood lies inside it.

use std::collections::{BTreeMap, BTreeSet};

use super::cases::Case;
use super::independent::s_k;
use super::state::{Color, PhaseState};
use super::EngineError;
use crate::graph::{Vertex, VertexSet};

/// Working data for one clique: the protected set and the witnesses picked for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkContext {
    pub clique: usize,
    pub anchor: Vertex,
    pub s_k: VertexSet,
    pub chosen_witness: BTreeMap<Vertex, Vertex>,
    /// Colors actually painted inside the clique by the witness-picking loop.
    pub used_colors: BTreeSet<Color>,
    pub m: usize,
    pub m_prime: usize,
}

impl SkContext {
    /// Computes the protected set from the graph.
    pub fn new(st: &PhaseState<'_>, clique: usize, anchor: Vertex) -> Self {
        let s_k = s_k(st, clique, anchor, true);
        SkContext {
            clique,
            anchor,
            m: s_k.len(),
            s_k,
            chosen_witness: BTreeMap::new(),
            used_colors: BTreeSet::new(),
            m_prime: 0,
        }
    }
}

pub(crate) fn run_sk(st: &mut PhaseState<'_>, ctx: &mut SkContext) -> Result<(), EngineError> {
    let k = ctx.clique;
    let v = ctx.anchor;
    let extra = st.extra();
    let f = st.free_color.ok_or(EngineError::Precondition("free color not chosen"))?;
    let clique = st.clique(k);
    if clique.len() < 2 || !clique.contains(&v) || !st.colored(v) {
        return Err(EngineError::Precondition("anchor must be colored inside a clique of size at least two"));
    }
    if clique.iter().any(|&w| w != v && st.colored(w)) {
        return Err(EngineError::Precondition("clique already partly colored"));
    }
    if !st.witness_ok(v) || st.color(st.witness(v).unwrap()) == f {
        return Err(EngineError::Precondition("anchor relies on the free color"));
    }
    let vf = st.owner_of(f);

    for &vi in &ctx.s_k {
        let w = match st.graph.neighbors(vi).iter().copied().find(|&w| !st.colored(w)) {
            Some(w) => {
                st.paint(w, st.base(vi));
                ctx.used_colors.insert(st.base(vi));
                w
            }
            None => st.unique_nbr(vi).ok_or(EngineError::Precondition("protected vertex has no usable neighbor"))?,
        };
        st.rely(vi, w);
        ctx.chosen_witness.insert(vi, w);
    }
    ctx.m_prime = ctx.used_colors.len();
    for &w in clique {
        if w != v && st.colored(w) {
            st.rely(w, st.owner_of(st.color(w)));
        }
    }

    let uncolored: Vec<Vertex> = clique.iter().copied().filter(|&w| !st.colored(w)).collect();
    let starved = |st: &PhaseState, ctx: &SkContext| {
        ctx.s_k.iter().copied().find(|&x| !ctx.used_colors.contains(&st.base(x)))
    };
    let painted_others = |st: &PhaseState, except: Vertex| {
        clique.iter().copied().filter(|&w| w != v && w != except && st.colored(w)).min()
    };

    match uncolored.len() {
        0 => st.hit(Case::SkAllColored),
        1 => {
            let v1 = uncolored[0];
            if let Some(u) = st.unique_nbr(v1) {
                st.paint(v1, extra);
                st.rely(v1, u);
                st.hit(Case::SkOneWitnessed);
            } else if ctx.m == ctx.m_prime {
                let near = clique.iter().copied().find(|&w| w != v && w != v1 && st.adj(w, vf));
                if let Some(v2) = near {
                    let c = st.color(v2);
                    let vk = st.owner_of(c);
                    st.paint(v1, c);
                    st.paint(v2, extra);
                    st.rely(v1, vk);
                    st.rely(v2, vf);
                    st.rely(vk, v1);
                    st.hit(Case::SkOneEqualNearFree);
                } else {
                    let v2 = painted_others(st, v1).ok_or(EngineError::Precondition("no painted vertex to recolor"))?;
                    let vk = st.owner_of(st.color(v2));
                    st.paint(v2, f);
                    st.paint(v1, extra);
                    st.rely(v1, vk);
                    st.rely(vk, v1);
                    st.rely(v2, v1);
                    st.admit_exception(vk);
                    st.hit(Case::SkOneEqualFarFree);
                }
            } else {
                let vj = starved(st, ctx).expect("fewer colors than protected vertices");
                let v2 = ctx.chosen_witness[&vj];
                st.paint(v2, st.base(vj));
                st.paint(v1, extra);
                st.rely(v1, v2);
                st.rely(v2, v1);
                st.hit(Case::SkOneMore);
            }
        }
        _ => {
            let with_unique = uncolored.iter().copied().find_map(|u| {
                st.graph
                    .neighbors(u)
                    .iter()
                    .copied()
                    .find(|&w| st.colored(w) && st.color(w) != f && st.count_in_nbhd(u, st.color(w)) == 1)
                    .map(|w| (u, w))
            });
            if let Some((v1, w)) = with_unique {
                st.paint(v1, extra);
                st.rely(v1, w);
                for &u in &uncolored {
                    if u != v1 {
                        st.paint(u, f);
                        st.rely(u, v1);
                    }
                }
                st.hit(Case::SkManyWitnessed);
            } else if ctx.m == ctx.m_prime {
                let w = painted_others(st, v).ok_or(EngineError::Precondition("no painted vertex to recolor"))?;
                let vj = st.owner_of(st.color(w));
                let v1 = uncolored[0];
                st.paint(w, f);
                st.paint(v1, extra);
                st.fill(k, f);
                st.rely(v1, vj);
                st.rely(vj, v1);
                st.admit_exception(vj);
                st.all_rely_on(k, v1, &[v]);
                st.hit(Case::SkManyEqual);
            } else {
                let vj = starved(st, ctx).expect("fewer colors than protected vertices");
                let (v1, v2) = (uncolored[0], uncolored[1]);
                st.paint(v1, extra);
                st.paint(v2, st.base(vj));
                st.fill(k, f);
                st.rely(v1, v2);
                for &u in &uncolored {
                    if u != v1 {
                        st.rely(u, v1);
                    }
                }
                st.hit(Case::SkManyMore);
            }
        }
    }
    st.refresh_colored_cliques();
    Ok(())
}
