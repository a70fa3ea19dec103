//! Colorers for components whose modulator has at most two vertices. Palette `{1, 2, 3}`.

use super::cases::{Case, Trace};
use super::state::{Color, Coloring, PhaseState};
use super::EngineError;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::modulator::{validate_modulator, Modulator};

fn least(it: impl IntoIterator<Item = Vertex>) -> Option<Vertex> {
    it.into_iter().min()
}

/// A clique component without modulator.
pub(crate) fn run_x0(g: &Graph) -> Result<(Coloring, Trace), EngineError> {
    if g.n() == 2 {
        let m = validate_modulator(g, &VertexSet::new())?;
        let mut st = PhaseState::new(g, &m);
        st.paint(0, 1);
        st.paint(1, 1);
        st.rely(0, 1);
        st.rely(1, 0);
        st.hit(Case::X0Pair);
        return Ok(st.finish());
    }
    let m = validate_modulator(g, &VertexSet::from([0]))?;
    let (c, mut t) = run_x1(g, &m)?;
    t.hit(Case::X0Promote);
    Ok((c, t))
}

pub(crate) fn run_x1(g: &Graph, m: &Modulator) -> Result<(Coloring, Trace), EngineError> {
    let mut st = PhaseState::new(g, m);
    let x = st.xs()[0];
    st.paint(x, 1);

    let k0 = 0;
    let v = least(st.clique(k0).iter().copied().filter(|&w| st.adj(w, x))).ok_or(EngineError::Disconnected)?;
    if st.clique(k0).len() == 1 {
        st.paint(v, 2);
        st.rely(x, v);
        st.rely(v, x);
        st.hit(Case::X1InitSingleton);
    } else {
        let v2 = least(st.clique(k0).iter().copied().filter(|&w| w != v)).unwrap();
        st.paint(v, 2);
        st.paint(v2, 3);
        st.fill(k0, 1);
        st.rely(x, v);
        st.rely(v2, v);
        st.all_rely_on(k0, v2, &[]);
        st.hit(Case::X1InitClique);
    }

    for k in 1..st.num_cliques() {
        let miss = least(st.clique(k).iter().copied().filter(|&w| !st.adj(w, x)));
        match miss {
            None => {
                st.fill(k, 3);
                for &w in st.clique(k) {
                    st.rely(w, x);
                }
                st.hit(Case::X1CompAllSee);
            }
            Some(v) => {
                let v2 = least(st.clique(k).iter().copied().filter(|&w| w != v)).ok_or(EngineError::Disconnected)?;
                st.paint(v, 2);
                st.paint(v2, 3);
                st.fill(k, 1);
                st.rely(v2, v);
                st.all_rely_on(k, v2, &[]);
                st.hit(Case::X1CompSomeMiss);
            }
        }
    }
    Ok(st.finish())
}

pub(crate) fn run_x2(g: &Graph, m: &Modulator) -> Result<(Coloring, Trace), EngineError> {
    let st = PhaseState::new(g, m);
    let (a, b) = (st.xs()[0], st.xs()[1]);
    if st.adj(a, b) {
        x2_edge(st, a, b)
    } else {
        let both = least(g.vertices().filter(|&w| !st.in_x(w) && st.deg_x(w) == 2));
        match both {
            None => Ok(x2_indep_sparse(st, a, b)?.finish()),
            Some(v) => Ok(x2_indep_shared(st, a, b, v).finish()),
        }
    }
}

/// Independent pair, every clique vertex sees at most one of them.
fn x2_indep_sparse<'g>(mut st: PhaseState<'g>, a: Vertex, b: Vertex) -> Result<PhaseState<'g>, EngineError> {
    let k0 = (0..st.num_cliques())
        .find(|&k| st.clique(k).iter().any(|&w| st.adj(w, a)) && st.clique(k).iter().any(|&w| st.adj(w, b)))
        .ok_or(EngineError::Disconnected)?;
    let v = least(st.clique(k0).iter().copied().filter(|&w| st.adj(w, a))).unwrap();
    let v2 = least(st.clique(k0).iter().copied().filter(|&w| st.adj(w, b))).unwrap();
    st.paint(a, 3);
    st.paint(b, 3);
    st.paint(v, 1);
    st.paint(v2, 2);
    st.fill(k0, 3);
    st.rely(a, v);
    st.rely(b, v2);
    st.rely(v, v2);
    st.all_rely_on(k0, v, &[]);
    st.hit(Case::X2IndepAInit);

    for k in (0..st.num_cliques()).filter(|&k| k != k0) {
        let bare = least(st.clique(k).iter().copied().filter(|&w| st.deg_x(w) == 0));
        match bare {
            None => {
                for &w in st.clique(k) {
                    let (c, x) = if st.adj(w, a) { (2, a) } else { (1, b) };
                    st.paint(w, c);
                    st.rely(w, x);
                }
                st.hit(Case::X2IndepACompDeg1);
            }
            Some(v) => {
                let v2 = least(st.clique(k).iter().copied().filter(|&w| st.deg_x(w) > 0))
                    .ok_or(EngineError::Disconnected)?;
                // v2 must not repeat the unique color of its own modulator neighbor.
                let (cv, cv2) = if st.adj(v2, a) { (1, 2) } else { (2, 1) };
                st.paint(v, cv);
                st.paint(v2, cv2);
                st.fill(k, 3);
                st.rely(v, v2);
                st.all_rely_on(k, v, &[]);
                st.hit(Case::X2IndepACompDeg0);
            }
        }
    }
    Ok(st)
}

/// Independent pair with a common neighbor `v`.
fn x2_indep_shared<'g>(mut st: PhaseState<'g>, a: Vertex, b: Vertex, v: Vertex) -> PhaseState<'g> {
    st.paint(a, 1);
    st.paint(b, 2);
    let k0 = st.clique_id(v);
    let unique: Color;
    if st.clique(k0).len() == 1 {
        st.paint(v, 1);
        st.rely(v, a);
        unique = 1;
        st.hit(Case::X2IndepBSingleton);
    } else if let Some(v2) = least(st.clique(k0).iter().copied().filter(|&w| w != v && !st.adj(w, b))) {
        st.paint(v, 2);
        st.paint(v2, 3);
        st.fill(k0, 1);
        st.rely(v2, v);
        st.all_rely_on(k0, v2, &[]);
        unique = 2;
        st.hit(Case::X2IndepBEscape);
    } else {
        st.paint(v, 1);
        st.fill(k0, 3);
        for &w in st.clique(k0) {
            st.rely(w, b);
        }
        unique = 1;
        st.hit(Case::X2IndepBAllSee);
    }
    st.rely(a, v);
    st.rely(b, v);

    let free = 3 - unique;
    let (xu, xf) = if unique == 1 { (a, b) } else { (b, a) };
    for k in (0..st.num_cliques()).filter(|&k| k != k0) {
        if let Some(w) = least(st.clique(k).iter().copied().filter(|&w| st.adj(w, xu))) {
            st.paint(w, 3);
            st.fill(k, free);
            st.rely(w, xu);
            st.all_rely_on(k, w, &[]);
            st.hit(Case::X2IndepBCompSeesUnique);
        } else if st.clique(k).iter().all(|&w| st.adj(w, xf)) {
            st.fill(k, 3);
            for &w in st.clique(k) {
                st.rely(w, xf);
            }
            st.hit(Case::X2IndepBCompAllFree);
        } else {
            let w = least(st.clique(k).iter().copied().filter(|&w| st.adj(w, xf))).expect("connected");
            let w2 = least(st.clique(k).iter().copied().filter(|&w| !st.adj(w, xf))).unwrap();
            st.paint(w, 3);
            st.paint(w2, unique);
            st.fill(k, free);
            st.rely(w, w2);
            st.all_rely_on(k, w, &[]);
            st.hit(Case::X2IndepBCompMixed);
        }
    }
    st
}

/// Adjacent pair `a`-`b`.
fn x2_edge(mut st: PhaseState<'_>, a: Vertex, b: Vertex) -> Result<(Coloring, Trace), EngineError> {
    let g = st.graph;
    let sees = |st: &PhaseState, k: usize, x: Vertex| st.clique(k).iter().all(|&w| st.adj(w, x));
    let lone = least(g.vertices().filter(|&w| {
        !st.in_x(w) && st.deg_x(w) == 1 && {
            let k = st.clique_id(w);
            !sees(&st, k, a) && !sees(&st, k, b)
        }
    }));

    if let Some(v) = lone {
        // One clique mixes a lone neighbor of `p` with a vertex missing `p`.
        let p = st.x_nbrs(v)[0];
        let q = if p == a { b } else { a };
        let k0 = st.clique_id(v);
        let v2 = least(st.clique(k0).iter().copied().filter(|&w| !st.adj(w, p))).unwrap();
        st.paint(p, 1);
        st.paint(q, 2);
        st.paint(v, 1);
        st.paint(v2, 3);
        st.fill(k0, 2);
        st.rely(p, v);
        st.rely(q, p);
        st.rely(v2, v);
        st.all_rely_on(k0, v2, &[]);
        st.hit(Case::X2EdgeMixedInit);
        for k in (0..st.num_cliques()).filter(|&k| k != k0) {
            if let Some(w) = least(st.clique(k).iter().copied().filter(|&w| st.adj(w, p))) {
                st.paint(w, 3);
                st.fill(k, 2);
                st.rely(w, p);
                st.all_rely_on(k, w, &[]);
                st.hit(Case::X2EdgeMixedCompSeesA);
            } else if st.clique(k).iter().all(|&w| st.adj(w, q)) {
                st.fill(k, 3);
                for &w in st.clique(k) {
                    st.rely(w, q);
                }
                st.hit(Case::X2EdgeMixedCompOnlyB);
            } else {
                let w = least(st.clique(k).iter().copied().filter(|&w| st.deg_x(w) == 0)).unwrap();
                let w2 = least(st.clique(k).iter().copied().filter(|&u| u != w)).ok_or(EngineError::Disconnected)?;
                st.paint(w, 1);
                st.paint(w2, 3);
                st.fill(k, 2);
                st.rely(w2, w);
                st.all_rely_on(k, w2, &[]);
                st.hit(Case::X2EdgeMixedCompDeg0);
            }
        }
        return Ok(st.finish());
    }

    st.paint(a, 1);
    st.paint(b, 2);
    let both = least(g.vertices().filter(|&w| !st.in_x(w) && st.deg_x(w) == 2));
    let mut done: Vec<usize> = Vec::new();
    if let Some(v) = both {
        let k0 = st.clique_id(v);
        st.paint(v, 3);
        st.fill(k0, 2);
        st.rely(a, v);
        st.rely(b, v);
        st.rely(v, a);
        st.all_rely_on(k0, v, &[]);
        done.push(k0);
        st.hit(Case::X2EdgeDeg2Init);
    } else {
        let ka = (0..st.num_cliques()).find(|&k| sees(&st, k, a));
        let kb = (0..st.num_cliques()).find(|&k| sees(&st, k, b));
        match (ka, kb) {
            (Some(ka), Some(kb)) => {
                for (k, x, rest) in [(ka, a, 2), (kb, b, 1)] {
                    let v = *st.clique(k).iter().next().unwrap();
                    st.paint(v, 3);
                    st.fill(k, rest);
                    st.rely(x, v);
                    st.rely(v, x);
                    st.all_rely_on(k, v, &[]);
                    done.push(k);
                }
                st.hit(Case::X2EdgeSplitInit);
            }
            (_, None) => return shrink(g, a),
            (None, _) => return shrink(g, b),
        }
    }

    for k in (0..st.num_cliques()).filter(|k| !done.contains(k)) {
        if let Some(v) = least(st.clique(k).iter().copied().filter(|&w| st.deg_x(w) == 0)) {
            let v2 = least(st.clique(k).iter().copied().filter(|&w| st.deg_x(w) > 0)).ok_or(EngineError::Disconnected)?;
            st.paint(v, 3);
            st.paint(v2, 1);
            st.fill(k, 2);
            st.rely(v, v2);
            st.all_rely_on(k, v, &[]);
            st.hit(Case::X2EdgeCompDeg0);
        } else {
            let (c, x) = if sees(&st, k, a) { (2, a) } else { (1, b) };
            st.fill(k, c);
            for &w in st.clique(k) {
                st.rely(w, x);
            }
            st.hit(Case::X2EdgeCompSeeing);
        }
    }
    Ok(st.finish())
}

/// The other modulator vertex only sees `keep`, so `{keep}` is a modulator on its own.
fn shrink(g: &Graph, keep: Vertex) -> Result<(Coloring, Trace), EngineError> {
    let m = validate_modulator(g, &VertexSet::from([keep]))?;
    let (c, mut t) = run_x1(g, &m)?;
    t.hit(Case::X2EdgeShrink);
    Ok((c, t))
}
