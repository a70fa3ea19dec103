//! Initial phase when `G[X]` has maximum degree one and some modulator vertex
//! has no modulator neighbor.

use super::cases::Case;
use super::sk::{run_sk, SkContext};
use super::state::PhaseState;
use super::EngineError;
use crate::graph::Vertex;

fn least(it: impl IntoIterator<Item = Vertex>) -> Option<Vertex> {
    it.into_iter().min()
}

fn unmatched_nbrs(st: &PhaseState<'_>, w: Vertex) -> Vec<Vertex> {
    st.x_nbrs(w).into_iter().filter(|&x| !st.in_y(x)).collect()
}

fn matched_nbrs(st: &PhaseState<'_>, w: Vertex) -> Vec<Vertex> {
    st.x_nbrs(w).into_iter().filter(|&x| st.in_y(x)).collect()
}

fn partner(st: &PhaseState<'_>, x: Vertex) -> Vertex {
    st.x_nbrs(x)[0]
}

fn protect(st: &mut PhaseState<'_>, k: usize, anchor: Vertex) -> Result<(), EngineError> {
    let mut ctx = SkContext::new(st, k, anchor);
    run_sk(st, &mut ctx)
}

pub(crate) fn initial_iso_matching<'g>(mut st: PhaseState<'g>) -> Result<PhaseState<'g>, EngineError> {
    let g = st.graph;
    let extra = st.extra();
    let xs = st.xs().to_vec();
    if xs.len() < 3
        || xs.iter().any(|&x| st.x_nbrs(x).len() > 1)
        || xs.iter().all(|&x| st.in_y(x))
        || xs.iter().all(|&x| !st.in_y(x))
    {
        return Err(EngineError::Precondition("modulator must mix matched and unmatched vertices"));
    }
    let c = |st: &PhaseState, x: Vertex| st.base(x);
    for &x in &xs {
        if st.in_y(x) {
            st.rely(x, partner(&st, x));
        }
    }
    let nonx: Vec<Vertex> = g.vertices().filter(|&w| !st.in_x(w)).collect();

    if let Some(v) = nonx.iter().copied().find(|&w| unmatched_nbrs(&st, w).len() >= 2) {
        let k = st.clique_id(v);
        let fx = unmatched_nbrs(&st, v);
        let (v1, v2) = (fx[0], fx[1]);
        let other = least(st.clique(k).iter().copied().filter(|&u| u != v && !st.adj(u, v1)));
        if st.clique(k).len() == 1 {
            st.paint(v, c(&st, v1));
            st.rely(v, v1);
            st.free_color = Some(c(&st, v2));
            st.hit(Case::Iso1Single);
        } else if !SkContext::new(&st, k, v).s_k.is_empty() {
            st.paint(v, c(&st, v1));
            st.rely(v, v1);
            st.free_color = Some(c(&st, v2));
            for &x in &fx {
                st.rely(x, v);
            }
            protect(&mut st, k, v)?;
            st.hit(Case::Iso1Sk);
        } else if let Some(v_) = other {
            st.paint(v, c(&st, v1));
            st.paint(v_, extra);
            st.fill(k, c(&st, v2));
            st.rely(v_, v);
            st.all_rely_on(k, v_, &[]);
            st.free_color = Some(c(&st, v2));
            st.hit(Case::Iso1Miss);
        } else {
            st.paint(v, c(&st, v2));
            st.fill(k, extra);
            for &u in st.clique(k) {
                st.rely(u, v1);
            }
            st.free_color = Some(c(&st, v1));
            st.hit(Case::Iso1AllSee);
        }
        for &x in &fx {
            st.rely(x, v);
        }
        st.refresh_colored_cliques();
        return Ok(st);
    }

    let lone = |st: &PhaseState, w: Vertex| unmatched_nbrs(st, w).len() == 1;
    let adjacent_pair = |st: &PhaseState, w: Vertex| {
        let ys = matched_nbrs(st, w);
        ys.iter().copied().find(|&a| ys.contains(&partner(st, a))).map(|a| (a, partner(st, a)))
    };

    if let Some(v) = nonx.iter().copied().find(|&w| lone(&st, w) && adjacent_pair(&st, w).is_some()) {
        let k = st.clique_id(v);
        let v1 = unmatched_nbrs(&st, v)[0];
        let (v2, v3) = adjacent_pair(&st, v).unwrap();
        let size = st.clique(k).len();
        let has_sk = size >= 2 && !SkContext::new(&st, k, v).s_k.is_empty();
        let on_v = |st: &mut PhaseState| {
            for x in [v1, v2, v3] {
                st.rely(x, v);
            }
        };

        if size == 1 || has_sk {
            st.paint(v, c(&st, v1));
            st.rely(v, v1);
            on_v(&mut st);
            st.free_color = Some(c(&st, v2));
            if has_sk {
                protect(&mut st, k, v)?;
                st.hit(if size == 2 { Case::Iso2PairSk } else { Case::Iso2LargeSk });
            } else {
                st.hit(Case::Iso2Single);
            }
        } else if size == 2 {
            let v_ = *st.clique(k).iter().find(|&&u| u != v).unwrap();
            if !st.adj(v_, v1) {
                st.paint(v, c(&st, v1));
                st.paint(v_, extra);
                st.rely(v, v1);
                st.rely(v_, v);
                on_v(&mut st);
                st.free_color = Some(c(&st, v2));
                st.hit(Case::Iso2PairMiss);
            } else {
                let touching = |st: &PhaseState, y: Vertex| {
                    (0..st.num_cliques()).find(|&kk| kk != k && st.clique(kk).iter().any(|&u| st.adj(u, y)))
                };
                let hat = match touching(&st, v3) {
                    Some(kk) => Some((kk, v2, v3)),
                    None => touching(&st, v2).map(|kk| (kk, v3, v2)),
                };
                match hat {
                    None => {
                        st.paint(v3, c(&st, v2));
                        st.relabeled.insert(v3);
                        st.paint(v, c(&st, v3));
                        st.paint(v_, extra);
                        st.rely(v, v1);
                        on_v(&mut st);
                        st.rely(v_, v);
                        st.free_color = Some(c(&st, v2));
                        st.hit(Case::Iso2PairRelabel);
                    }
                    Some((kh, p, q)) => {
                        st.paint(v, c(&st, p));
                        st.paint(v_, extra);
                        st.rely(v, v1);
                        st.rely(v_, v1);
                        st.rely(v1, v);
                        st.rely(p, v);
                        let w = least(st.clique(kh).iter().copied().filter(|&u| st.adj(u, q))).unwrap();
                        let lone_free: Vec<Vertex> = unmatched_nbrs(&st, w).into_iter().filter(|&x| x != v1).collect();
                        let has_sk_hat = st.clique(kh).len() >= 2 && !SkContext::new(&st, kh, w).s_k.is_empty();
                        if has_sk_hat {
                            st.paint(w, c(&st, q));
                            st.rely(q, w);
                            st.rely(w, q);
                            for &x in &lone_free {
                                st.rely(x, w);
                            }
                            st.free_color = Some(c(&st, v1));
                            protect(&mut st, kh, w)?;
                            st.hit(Case::Iso2HatSk);
                        } else if let Some(w_) =
                            least(st.clique(kh).iter().copied().filter(|&u| u != w && !st.adj(u, q)))
                        {
                            st.paint(w, c(&st, q));
                            st.paint(w_, extra);
                            st.fill(kh, c(&st, v1));
                            st.rely(q, w);
                            st.rely(w_, w);
                            st.all_rely_on(kh, w_, &[]);
                            st.free_color = Some(c(&st, v1));
                            st.hit(Case::Iso2HatMiss);
                        } else {
                            st.paint(w, c(&st, v1));
                            st.fill(kh, extra);
                            st.rely(q, w);
                            for &u in st.clique(kh) {
                                st.rely(u, q);
                            }
                            st.free_color = Some(c(&st, q));
                            st.hit(Case::Iso2HatAllSee);
                        }
                        for &x in &lone_free {
                            st.rely(x, w);
                        }
                    }
                }
            }
        } else if let Some(v_) = least(st.clique(k).iter().copied().filter(|&u| u != v && !st.adj(u, v1))) {
            st.paint(v, c(&st, v1));
            st.paint(v_, extra);
            st.fill(k, c(&st, v3));
            st.all_rely_on(k, v_, &[]);
            st.rely(v_, v);
            on_v(&mut st);
            st.free_color = Some(c(&st, v3));
            st.hit(Case::Iso2LargeMiss);
        } else {
            st.paint(v, c(&st, v1));
            match least(st.clique(k).iter().copied().filter(|&u| u != v && !st.adj(u, v2))) {
                Some(v_far) => {
                    let v_ = least(st.clique(k).iter().copied().filter(|&u| u != v && u != v_far)).unwrap();
                    st.paint(v_, c(&st, v2));
                    st.paint(v_far, extra);
                    st.fill(k, c(&st, v3));
                    st.all_rely_on(k, v_far, &[]);
                    st.rely(v_far, v_);
                    st.hit(Case::Iso2LargeAllSee);
                }
                None => {
                    let v_ = least(st.clique(k).iter().copied().filter(|&u| u != v)).unwrap();
                    st.paint(v_, extra);
                    st.fill(k, c(&st, v3));
                    st.all_rely_on(k, v_, &[]);
                    st.rely(v_, v2);
                    st.hit(Case::Iso2LargeAllSeePartner);
                }
            }
            on_v(&mut st);
            st.free_color = Some(c(&st, v3));
        }
        st.refresh_colored_cliques();
        return Ok(st);
    }

    if let Some(v) = nonx.iter().copied().find(|&w| lone(&st, w) && !matched_nbrs(&st, w).is_empty()) {
        let k = st.clique_id(v);
        let v1 = unmatched_nbrs(&st, v)[0];
        let v2 = matched_nbrs(&st, v)[0];
        let v3 = partner(&st, v2);
        st.free_color = Some(c(&st, v3));
        let size = st.clique(k).len();
        if size == 1 || !SkContext::new(&st, k, v).s_k.is_empty() {
            st.paint(v, c(&st, v1));
            st.rely(v, v1);
            st.rely(v1, v);
            st.rely(v2, v);
            if size == 1 {
                st.hit(Case::Iso3Single);
            } else {
                protect(&mut st, k, v)?;
                st.hit(Case::Iso3Sk);
            }
        } else if let Some(v_) = least(st.clique(k).iter().copied().filter(|&u| u != v && st.adj(u, v2))) {
            st.paint(v, c(&st, v1));
            st.paint(v_, extra);
            st.fill(k, c(&st, v3));
            st.all_rely_on(k, v_, &[]);
            st.rely(v_, v2);
            st.hit(Case::Iso3SeesY);
        } else {
            st.paint(v, c(&st, v2));
            st.fill(k, extra);
            st.all_rely_on(k, v, &[]);
            st.rely(v, v1);
            st.hit(Case::Iso3MissY);
        }
        st.rely(v1, v);
        st.rely(v2, v);
        st.rely(v3, v2);
        st.refresh_colored_cliques();
        return Ok(st);
    }

    // Every vertex seeing an unmatched modulator vertex sees no matched one.
    let pick = (0..st.num_cliques()).find_map(|k| {
        let v = least(st.clique(k).iter().copied().filter(|&u| !unmatched_nbrs(&st, u).is_empty()))?;
        let v_ = least(st.clique(k).iter().copied().filter(|&u| !matched_nbrs(&st, u).is_empty()))?;
        Some((k, v, v_))
    });
    let (k, v, v_) = pick.ok_or(EngineError::Disconnected)?;
    let v1 = unmatched_nbrs(&st, v)[0];
    let v2 = matched_nbrs(&st, v_)[0];
    let v3 = partner(&st, v2);
    st.paint(v, c(&st, v3));
    st.rely(v1, v);
    let sk = SkContext::new(&st, k, v).s_k;
    for &vi in &sk {
        let w = least(g.neighbors(vi).iter().copied().filter(|&u| !st.colored(u)))
            .ok_or(EngineError::Precondition("protected vertex has no uncolored neighbor"))?;
        st.paint(w, c(&st, vi));
        st.rely(vi, w);
    }
    st.paint(v_, extra);
    st.fill(k, c(&st, v1));
    st.all_rely_on(k, v_, &[]);
    st.rely(v_, v2);
    st.free_color = Some(c(&st, v1));
    st.hit(if sk.is_empty() { Case::Iso4 } else { Case::Iso4Sk });
    st.refresh_colored_cliques();
    Ok(st)
}
