//! Initial phase when the modulator has edges.

use super::cases::Case;
use super::state::PhaseState;
use super::{EngineError, Started};
use crate::graph::{Vertex, VertexSet};

fn least(it: impl IntoIterator<Item = Vertex>) -> Option<Vertex> {
    it.into_iter().min()
}

/// Components of `G[X]`, ordered by smallest member.
fn x_components(st: &PhaseState<'_>) -> Vec<Vec<Vertex>> {
    let sub = st.graph.induced(&st.modulator.x).expect("modulator in range");
    sub.graph.components().into_iter().map(|c| c.into_iter().map(|i| sub.to_parent[i]).collect()).collect()
}

pub(crate) fn initial_nonindep<'g>(mut st: PhaseState<'g>) -> Result<Started<'g>, EngineError> {
    let comps = x_components(&st);
    let deg_a = |st: &PhaseState, x: Vertex| st.x_nbrs(x).len();
    let path_end = comps
        .iter()
        .filter(|a| a.len() >= 3)
        .find_map(|a| a.iter().copied().find(|&x| deg_a(&st, x) == 1).map(|x| (a.clone(), x)));
    let dense = comps.iter().find(|a| a.len() >= 3).cloned();

    let (big, vj) = if let Some((a, vj)) = path_end {
        let vk = st.x_nbrs(vj)[0];
        let vl = st.x_nbrs(vk).into_iter().find(|&u| u != vj).expect("component has three vertices");
        for &x in &a {
            let w = if x == vk { vl } else { st.x_nbrs(x)[0] };
            st.rely(x, w);
        }
        st.hit(Case::NiPathEnd);
        (a, vj)
    } else if let Some(a) = dense {
        let vj = a[0];
        for &x in &a {
            let w = st.x_nbrs(x).into_iter().find(|&u| u != vj).expect("every degree is at least two");
            st.rely(x, w);
        }
        st.hit(Case::NiDense);
        (a, vj)
    } else if comps.iter().all(|a| a.len() == 2) {
        st.hit(Case::NiPerfectMatching);
        return initial_perfect_matching(st);
    } else {
        st.hit(Case::NiIsoMatching);
        return super::iso::initial_iso_matching(st).map(Started::Partial);
    };

    for a in comps.iter().filter(|a| a.len() >= 2 && **a != big) {
        for &x in a {
            st.rely(x, st.x_nbrs(x)[0]);
        }
    }
    st.free_color = Some(st.base(vj));
    st.refresh_colored_cliques();
    Ok(Started::Partial(st))
}

/// `G[X]` is a perfect matching on `d >= 4` vertices.
pub(crate) fn initial_perfect_matching<'g>(mut st: PhaseState<'g>) -> Result<Started<'g>, EngineError> {
    let g = st.graph;
    let d = st.d();
    let extra = st.extra();
    if d < 4 || d % 2 == 1 || st.xs().iter().any(|&x| st.x_nbrs(x).len() != 1) {
        return Err(EngineError::Precondition("modulator is not a perfect matching on at least four vertices"));
    }
    let xs = st.xs().to_vec();
    let partner = |st: &PhaseState, x: Vertex| st.x_nbrs(x)[0];
    let pairs: Vec<(Vertex, Vertex)> =
        xs.iter().map(|&x| (x, partner(&st, x))).filter(|&(a, b)| a < b).collect();
    let other_pair = |used: &[Vertex]| {
        *pairs.iter().find(|(a, b)| !used.contains(a) && !used.contains(b)).expect("at least two pairs")
    };
    let c = |st: &PhaseState, x: Vertex| st.base(x);
    let nonx: Vec<Vertex> = g.vertices().filter(|&w| !st.in_x(w)).collect();

    // Modulator vertices not listed in `set` rely on `hub`.
    let rest_rely = |st: &mut PhaseState, hub: Vertex, set: &[Vertex]| {
        for &x in &xs {
            if !set.contains(&x) {
                st.rely(x, hub);
            }
        }
    };
    let rest_on_partner = |st: &mut PhaseState, set: &[Vertex]| {
        for &x in &xs {
            if !set.contains(&x) {
                let p = st.x_nbrs(x)[0];
                st.rely(x, p);
            }
        }
    };

    if let Some(v) = nonx.iter().copied().find(|&w| st.deg_x(w) == d) {
        let k1 = st.clique_id(v);
        let k1_len = st.clique(k1).len();
        let k1_other = |st: &PhaseState, pred: &dyn Fn(Vertex) -> bool| {
            least(st.clique(k1).iter().copied().filter(|&u| u != v && pred(u)))
        };

        if st.num_cliques() == 1 {
            let (v1, v2) = pairs[0];
            for &x in &xs {
                if x != v1 {
                    st.paint(x, extra);
                    st.relabeled.insert(x);
                }
            }
            st.paint(v, c(&st, v2));
            st.fill(k1, extra);
            st.rely(v, v1);
            for u in g.vertices().filter(|&u| u != v && u != v1) {
                st.rely(u, v);
            }
            st.rely(v1, v);
            st.hit(Case::Pm11);
            return Ok(Started::Complete(st.finish()));
        }

        let single = nonx
            .iter()
            .copied()
            .find(|&w| w != v && st.clique(st.clique_id(w)).len() == 1 && st.deg_x(w) >= 2);
        if let Some(w) = single {
            let nw = st.x_nbrs(w);
            if let Some(&(v1, v2)) = pairs.iter().find(|(a, b)| nw.contains(a) && nw.contains(b)) {
                let (v3, v4) = other_pair(&[v1, v2]);
                st.paint(w, c(&st, v3));
                if k1_len == 1 {
                    st.paint(v, c(&st, v1));
                    st.rely(v, v1);
                    st.rely(w, v1);
                    st.rely(v2, w);
                    rest_rely(&mut st, v, &[v2]);
                    st.hit(Case::Pm12AdjSingle);
                } else {
                    let v_ = k1_other(&st, &|u| !st.adj(u, v1));
                    let (miss, v_) = match v_ {
                        Some(u) => (true, u),
                        None => (false, k1_other(&st, &|_| true).unwrap()),
                    };
                    st.paint(v_, extra);
                    st.rely(w, v2);
                    if miss {
                        st.paint(v, c(&st, v1));
                        st.rely(v2, w);
                        rest_rely(&mut st, v, &[v2]);
                        st.rely(v_, v);
                        st.hit(Case::Pm12AdjMissV1);
                    } else {
                        st.paint(v, c(&st, v2));
                        st.rely(v1, w);
                        rest_rely(&mut st, v, &[v1]);
                        st.rely(v_, v1);
                        st.hit(Case::Pm12AdjSeesV1);
                    }
                    st.fill(k1, c(&st, v4));
                    st.all_rely_on(k1, v_, &[]);
                }
                st.free_color = Some(c(&st, v4));
            } else {
                let (v1, v3) = (nw[0], nw[1]);
                let (v2, v4) = (partner(&st, v1), partner(&st, v3));
                if k1_len == 1 {
                    st.paint(v, c(&st, v4));
                    st.paint(w, c(&st, v1));
                    st.rely(w, v1);
                    st.rely(v, v1);
                    st.rely(v3, w);
                    rest_rely(&mut st, v, &[v3]);
                    st.free_color = Some(c(&st, v3));
                    st.hit(Case::Pm12SplitSingle);
                } else if let Some(v_) = k1_other(&st, &|u| !st.adj(u, v2)) {
                    st.paint(w, c(&st, v3));
                    st.paint(v, c(&st, v2));
                    st.paint(v_, extra);
                    st.fill(k1, c(&st, v4));
                    st.rely(w, v1);
                    st.rely(v1, w);
                    rest_rely(&mut st, v, &[v1]);
                    st.rely(v_, v);
                    st.all_rely_on(k1, v_, &[]);
                    st.free_color = Some(c(&st, v4));
                    st.hit(Case::Pm12SplitMissV2);
                } else {
                    let v_ = k1_other(&st, &|_| true).unwrap();
                    st.paint(w, c(&st, v1));
                    st.paint(v, c(&st, v4));
                    st.paint(v_, extra);
                    st.fill(k1, c(&st, v3));
                    st.rely(w, v1);
                    st.rely(v3, w);
                    rest_rely(&mut st, v, &[v3]);
                    st.rely(v_, v2);
                    st.all_rely_on(k1, v_, &[]);
                    st.free_color = Some(c(&st, v3));
                    st.hit(Case::Pm12SplitSeesV2);
                }
            }
            st.refresh_colored_cliques();
            return Ok(Started::Partial(st));
        }

        let pendant = nonx.iter().copied().find(|&w| w != v && st.clique(st.clique_id(w)).len() == 1);
        if let Some(w) = pendant {
            let v1 = st.x_nbrs(w)[0];
            let v2 = partner(&st, v1);
            let (v3, v4) = other_pair(&[v1, v2]);
            st.rely(w, v1);
            if k1_len == 1 {
                st.paint(v, c(&st, v2));
                st.paint(w, c(&st, v3));
                st.rely(v, v1);
                st.rely(v1, w);
                rest_rely(&mut st, v, &[v1]);
                st.hit(Case::Pm13Single);
            } else if let Some(v_) = k1_other(&st, &|u| !st.adj(u, v2)) {
                st.paint(v, c(&st, v2));
                st.paint(w, c(&st, v3));
                st.paint(v_, extra);
                st.fill(k1, c(&st, v4));
                st.rely(v1, w);
                rest_rely(&mut st, v, &[v1]);
                st.rely(v_, v);
                st.all_rely_on(k1, v_, &[]);
                st.hit(Case::Pm13Miss);
            } else {
                let v_ = k1_other(&st, &|_| true).unwrap();
                st.paint(w, c(&st, v4));
                st.paint(v, c(&st, v1));
                st.paint(v_, c(&st, v3));
                st.fill(k1, extra);
                st.rely(v2, v_);
                rest_rely(&mut st, v, &[v2]);
                for &u in st.clique(k1) {
                    st.rely(u, v2);
                }
                st.hit(Case::Pm13AllSee);
            }
            st.free_color = Some(c(&st, v4));
            st.refresh_colored_cliques();
            return Ok(Started::Partial(st));
        }

        let k2 = (0..st.num_cliques()).find(|&k| k != k1 && st.clique(k).len() >= 2).expect("another clique exists");
        let w = least(st.clique(k2).iter().copied().filter(|&u| st.deg_x(u) > 0)).ok_or(EngineError::Disconnected)?;
        let v1 = st.x_nbrs(w)[0];
        let v2 = partner(&st, v1);
        let (v3, v4) = other_pair(&[v1, v2]);
        let k2_other = |st: &PhaseState, pred: &dyn Fn(Vertex) -> bool| {
            least(st.clique(k2).iter().copied().filter(|&u| u != w && pred(u)))
        };
        let k2_miss = |st: &PhaseState| k2_other(st, &|u| !st.adj(u, v3));
        let k1_miss = if k1_len == 1 { None } else { k1_other(&st, &|u| !st.adj(u, v2)) };

        if k1_len == 1 || k1_miss.is_some() {
            st.paint(v, c(&st, v2));
            st.rely(v1, w);
            rest_rely(&mut st, v, &[v1]);
            let w_ = k2_miss(&st);
            if let Some(v_) = k1_miss {
                st.paint(v_, extra);
                st.rely(v_, v);
                st.all_rely_on(k1, v_, &[]);
            } else {
                st.rely(v, v1);
            }
            match w_ {
                Some(w_) => {
                    st.paint(w, c(&st, v3));
                    st.paint(w_, extra);
                    st.fill(k2, c(&st, v4));
                    st.rely(w_, w);
                    st.all_rely_on(k2, w_, &[]);
                    st.fill(k1, c(&st, v4));
                    st.free_color = Some(c(&st, v4));
                    st.hit(if k1_len == 1 { Case::Pm14SingleMiss } else { Case::Pm14MissMiss });
                }
                None => {
                    st.paint(w, c(&st, v4));
                    st.fill(k2, extra);
                    st.rely(w, v1);
                    st.all_rely_on(k2, v3, &[w]);
                    st.fill(k1, c(&st, v1));
                    st.free_color = Some(c(&st, v1));
                    st.hit(if k1_len == 1 { Case::Pm14SingleAllSee } else { Case::Pm14MissAllSee });
                }
            }
        } else {
            let v_ = k1_other(&st, &|_| true).unwrap();
            st.paint(v, c(&st, v1));
            st.paint(v_, c(&st, v3));
            st.fill(k1, c(&st, v4));
            for &u in st.clique(k1) {
                st.rely(u, v2);
            }
            st.rely(v2, v_);
            rest_rely(&mut st, v, &[v2]);
            st.free_color = Some(c(&st, v4));
            st.hit(Case::Pm14AllSee);
        }
        st.refresh_colored_cliques();
        return Ok(Started::Partial(st));
    }

    if let Some(v) = nonx.iter().copied().find(|&w| st.deg_x(w) >= 2) {
        let k = st.clique_id(v);
        let nv: VertexSet = st.x_nbrs(v).into_iter().collect();
        let other = |st: &PhaseState, pred: &dyn Fn(Vertex) -> bool| {
            least(st.clique(k).iter().copied().filter(|&u| u != v && pred(u)))
        };
        let single = st.clique(k).len() == 1;
        if let Some(&(v3, v4)) = pairs.iter().find(|(a, b)| nv.contains(a) && nv.contains(b)) {
            let v1 = *xs.iter().find(|x| !nv.contains(x)).expect("degree below d");
            let v2 = partner(&st, v1);
            st.rely(v3, v);
            st.rely(v4, v);
            rest_on_partner(&mut st, &[v3, v4]);
            if single {
                st.paint(v, c(&st, v2));
                st.rely(v, v3);
                st.free_color = Some(c(&st, v3));
                st.hit(Case::Pm2AdjSingle);
            } else if let Some(v_) = other(&st, &|u| !st.adj(u, v2)) {
                st.paint(v, c(&st, v2));
                st.paint(v_, extra);
                st.fill(k, c(&st, v4));
                st.rely(v_, v);
                st.all_rely_on(k, v_, &[]);
                st.free_color = Some(c(&st, v4));
                st.hit(Case::Pm2AdjMiss);
            } else {
                let v_ = other(&st, &|_| true).unwrap();
                st.paint(v, c(&st, v1));
                st.paint(v_, c(&st, v3));
                st.fill(k, extra);
                st.rely(v, v4);
                st.all_rely_on(k, v2, &[v]);
                st.rely(v2, v_);
                st.free_color = Some(c(&st, v4));
                st.hit(Case::Pm2AdjAllSee);
            }
        } else {
            let nvv: Vec<Vertex> = nv.iter().copied().collect();
            let (v2, v4) = (nvv[0], nvv[1]);
            st.rely(v2, v);
            st.rely(v4, v);
            rest_on_partner(&mut st, &[v2, v4]);
            st.free_color = Some(c(&st, partner(&st, v4)));
            if single {
                st.paint(v, c(&st, v2));
                st.rely(v, v2);
                st.hit(Case::Pm2SplitSingle);
            } else if let Some(v_) = other(&st, &|u| !st.adj(u, v2)) {
                st.paint(v, c(&st, v2));
                st.paint(v_, extra);
                st.fill(k, c(&st, partner(&st, v4)));
                st.rely(v_, v);
                st.all_rely_on(k, v_, &[]);
                st.hit(Case::Pm2SplitMiss);
            } else {
                st.paint(v, c(&st, v4));
                st.fill(k, extra);
                st.rely(v, v2);
                st.all_rely_on(k, v2, &[v]);
                st.hit(Case::Pm2SplitAllSee);
            }
        }
        st.refresh_colored_cliques();
        return Ok(Started::Partial(st));
    }

    let v = nonx.iter().copied().find(|&w| st.deg_x(w) == 1).ok_or(EngineError::Disconnected)?;
    let k = st.clique_id(v);
    let v1 = st.x_nbrs(v)[0];
    let v2 = partner(&st, v1);
    st.rely(v1, v);
    rest_on_partner(&mut st, &[v1]);
    st.free_color = Some(c(&st, v2));
    if st.clique(k).len() == 1 {
        st.paint(v, c(&st, v1));
        st.rely(v, v1);
        st.hit(Case::Pm3Single);
    } else if let Some(v_) = least(st.clique(k).iter().copied().filter(|&u| u != v && !st.adj(u, v1))) {
        st.paint(v, c(&st, v1));
        st.paint(v_, extra);
        st.fill(k, c(&st, v2));
        st.rely(v_, v);
        st.all_rely_on(k, v_, &[]);
        st.hit(Case::Pm3Miss);
    } else {
        let (v3, _) = other_pair(&[v1, v2]);
        st.paint(v, c(&st, v3));
        st.fill(k, extra);
        for &u in st.clique(k) {
            st.rely(u, v1);
        }
        st.hit(Case::Pm3AllSee);
    }
    st.refresh_colored_cliques();
    Ok(Started::Partial(st))
}
