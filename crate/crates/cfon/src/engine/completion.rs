//! Completion phase: extends a rule-abiding partial coloring to the whole component.

use super::cases::{Case, Trace};
use super::state::{validate_rules, Color, Coloring, PhaseState};
use super::EngineError;
use crate::graph::{Vertex, VertexSet};

fn least(it: impl IntoIterator<Item = Vertex>) -> Option<Vertex> {
    it.into_iter().min()
}

pub(crate) fn complete(mut st: PhaseState<'_>) -> Result<(Coloring, Trace), EngineError> {
    st.trace.boundary_checks += 1;
    validate_rules(&st).map_err(EngineError::Rules)?;
    let g = st.graph;
    let extra = st.extra();
    let f = st.free_color.expect("checked by the rule validator");
    let vf = st.owner_of(f);
    let unmatched: Vec<Vertex> = st.xs().iter().copied().filter(|&x| !st.in_y(x)).collect();
    let pending: Vec<Vertex> = unmatched.iter().copied().filter(|&x| !st.witness_ok(x)).collect();
    // Colors of unmatched vertices that lacked a witness; painting them near other vertices is unsafe.
    let risky: VertexSet = pending.iter().map(|&x| st.base(x)).collect();
    let fresh_cliques: Vec<usize> = (0..st.num_cliques()).filter(|k| !st.colored_cliques.contains(k)).collect();

    let mut painted_for: Vec<Option<Vertex>> = vec![None; g.n()];
    for &vj in &pending {
        if let Some(w) = least(g.neighbors(vj).iter().copied().filter(|&w| !st.colored(w))) {
            st.paint(w, st.base(vj));
            st.rely(vj, w);
            painted_for[w] = Some(vj);
            st.hit(Case::CProcessFresh);
        } else {
            let w = g
                .neighbors(vj)
                .iter()
                .copied()
                .find(|&w| painted_for[w].is_some() && st.count_in_nbhd(vj, st.color(w)) == 1)
                .ok_or(EngineError::Precondition("unmatched vertex has neither witness nor uncolored neighbor"))?;
            st.rely(vj, w);
            st.hit(Case::CProcessReuse);
        }
    }

    let reliers = |st: &PhaseState, w: Vertex| -> Vec<Vertex> {
        unmatched.iter().copied().filter(|&x| st.witness(x) == Some(w)).collect()
    };

    for k in fresh_cliques {
        let clique: Vec<Vertex> = st.clique(k).iter().copied().collect();
        let painted: Vec<Vertex> = clique.iter().copied().filter(|&w| st.colored(w)).collect();
        let rest_to = |st: &mut PhaseState, c: Color, hub: Vertex| {
            for &u in &clique {
                if !st.colored(u) {
                    st.paint(u, c);
                }
                if u != hub {
                    st.rely(u, hub);
                }
            }
        };

        if painted.is_empty() {
            if clique.len() == 1 {
                let w = clique[0];
                st.paint(w, extra);
                st.rely(w, st.x_nbrs(w).first().copied().ok_or(EngineError::Disconnected)?);
                st.hit(Case::C1Singleton);
            } else if let Some(w) = clique.iter().copied().find(|&u| st.deg_x(u) == 0) {
                let w_ = clique.iter().copied().find(|&u| st.deg_x(u) > 0).ok_or(EngineError::Disconnected)?;
                let nx = st.x_nbrs(w_);
                st.paint(w_, extra);
                if nx == [vf] {
                    let c = (1..=st.d()).find(|&c| c != f).unwrap();
                    st.paint(w, c);
                    rest_to(&mut st, f, w_);
                    st.rely(w_, w);
                    st.hit(Case::C1LoneFree);
                } else {
                    let vi = *nx.iter().find(|&&x| x != vf).unwrap();
                    rest_to(&mut st, f, w_);
                    st.rely(w_, vi);
                    st.hit(Case::C1LoneOther);
                }
            } else {
                for &u in &clique {
                    st.paint(u, extra);
                    st.rely(u, st.x_nbrs(u)[0]);
                }
                st.hit(Case::C1AllSee);
            }
        } else if painted.len() == 1 {
            let v = painted[0];
            let j = st.color(v);
            let vj = painted_for[v].expect("painted by the witness process");
            st.rely(v, vj);
            if clique.len() == 1 {
                st.hit(Case::C2Singleton);
            } else if clique.len() == 2 {
                let v_ = clique[0] + clique[1] - v;
                let nx = st.x_nbrs(v_);
                if nx.is_empty() {
                    st.paint(v_, extra);
                    st.rely(v, v_);
                    st.rely(v_, v);
                    st.hit(Case::C2PairBare);
                } else if let Some(&vk) = nx.iter().find(|&&x| x != vj) {
                    st.paint(v_, extra);
                    st.rely(v, v_);
                    st.rely(v_, vk);
                    st.hit(Case::C2PairOther);
                } else if let Some(vl) = reliers(&st, v).into_iter().find(|&x| x != vj) {
                    st.paint(v, st.base(vl));
                    st.paint(v_, extra);
                    st.rely(v, v_);
                    st.rely(v_, v);
                    st.hit(Case::C2PairShared);
                } else if let Some(vk) = st.x_nbrs(v).into_iter().find(|&x| x != vj) {
                    st.paint(v, extra);
                    st.paint(v_, j);
                    st.rely(v_, v);
                    st.rely(v, vk);
                    st.rely(vj, v_);
                    painted_for[v_] = Some(vj);
                    st.hit(Case::C2PairMove);
                } else {
                    let seen: VertexSet =
                        g.neighbors(vj).iter().filter(|&&u| u != v && st.colored(u)).map(|&u| st.color(u)).collect();
                    let options: Vec<Color> = (1..=st.d()).filter(|&c| c != j && c != f).collect();
                    let c = options
                        .iter()
                        .copied()
                        .find(|c| !seen.contains(c) && !risky.contains(c))
                        .or_else(|| options.iter().copied().find(|c| !seen.contains(c)))
                        .unwrap_or_else(|| {
                            st.trace.fallback_picks += 1;
                            options[0]
                        });
                    st.paint(v, c);
                    st.paint(v_, extra);
                    st.rely(v, v_);
                    st.rely(v_, v);
                    st.hit(Case::C2PairRecolor);
                }
            } else if let Some(v_) = clique.iter().copied().find(|&u| u != v && !st.adj(u, vj)) {
                st.paint(v_, extra);
                rest_to(&mut st, f, v_);
                st.rely(v_, v);
                st.hit(Case::C2LargeMiss);
            } else {
                let other = clique.iter().copied().filter(|&u| u != v).find_map(|u| {
                    st.x_nbrs(u).into_iter().find(|&x| x != vj && x != vf).map(|x| (u, x))
                });
                if let Some((v_, vk)) = other {
                    st.paint(v_, extra);
                    rest_to(&mut st, f, v_);
                    st.rely(v_, vk);
                    st.hit(Case::C2LargeOther);
                } else if let Some(v2) = clique.iter().copied().find(|&u| u != v && !st.adj(u, vf)) {
                    let v_ = clique.iter().copied().find(|&u| u != v && u != v2).unwrap();
                    let c = (1..=st.d()).find(|&c| c != j && c != f).unwrap();
                    st.paint(v2, c);
                    st.paint(v_, extra);
                    rest_to(&mut st, f, v_);
                    st.rely(v_, v2);
                    st.hit(Case::C2LargeFreeOnly);
                } else {
                    for &u in &clique {
                        if u != v {
                            st.paint(u, extra);
                            st.rely(u, vf);
                        }
                    }
                    st.hit(Case::C2LargeFreeOnlyAll);
                }
                st.rely(v, vj);
            }
        } else if let Some(v_) = painted.iter().copied().find(|&w| reliers(&st, w).len() >= 2) {
            let vj = painted_for[v_].expect("painted by the witness process");
            let vk = reliers(&st, v_).into_iter().find(|&x| x != vj).unwrap();
            match clique.iter().copied().find(|&u| !st.colored(u)) {
                None => {
                    for &w in &painted {
                        st.rely(w, painted_for[w].unwrap());
                    }
                    st.hit(Case::C3AllColored);
                }
                Some(v) => {
                    st.paint(v, extra);
                    // Unreachable in practice: a reusing vertex had no uncolored neighbor.
                    if st.adj(v, vk) {
                        st.rely(v, vk);
                        st.hit(Case::C3SeesSecond);
                    } else {
                        st.paint(v_, st.base(vk));
                        st.rely(v, v_);
                        st.hit(Case::C3MissSecond);
                    }
                    rest_to(&mut st, f, v);
                }
            }
        } else {
            let (v, v_) = (painted[0], painted[1]);
            let (vj, vk) = (painted_for[v].unwrap(), painted_for[v_].unwrap());
            let both = |st: &PhaseState, u: Vertex| st.adj(u, vj) && st.adj(u, vk);
            if both(&st, v) || both(&st, v_) {
                let (keep, drop, dropped_owner) = if both(&st, v) { (v, v_, vk) } else { (v_, v, vj) };
                st.paint(drop, extra);
                rest_to(&mut st, f, drop);
                st.rely(drop, dropped_owner);
                st.rely(dropped_owner, keep);
                st.hit(Case::C4OnPair);
            } else if let Some(v2) = painted.iter().copied().find(|&u| u != v && u != v_ && both(&st, u)) {
                st.paint(v, extra);
                st.paint(v_, f);
                rest_to(&mut st, f, v);
                st.rely(v, vj);
                st.rely(vj, v2);
                st.rely(vk, v2);
                st.hit(Case::C4OnThird);
            } else if let Some(v2) = clique.iter().copied().find(|&u| !st.colored(u) && both(&st, u)) {
                let k_color = st.color(v_);
                st.paint(v, extra);
                st.paint(v_, f);
                st.paint(v2, k_color);
                rest_to(&mut st, f, v);
                st.rely(v, vj);
                st.rely(vj, v2);
                st.rely(vk, v2);
                st.hit(Case::C4Uncolored);
            } else {
                for &u in &clique {
                    if !st.colored(u) {
                        st.paint(u, f);
                    }
                    if u != v && u != v_ {
                        let hub = if st.adj(u, vj) { v_ } else { v };
                        st.rely(u, hub);
                    }
                }
                st.rely(v, vj);
                st.rely(v_, vk);
                st.hit(Case::C4Neither);
            }
        }
    }
    st.refresh_colored_cliques();
    Ok(st.finish())
}
