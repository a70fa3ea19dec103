//! The constructive coloring engine: per-component dispatch, initial phases and completion.

mod cases;
mod completion;
mod independent;
mod iso;
mod matching;
mod sk;
mod small;
mod state;

use thiserror::Error;

pub use cases::{Case, Trace};
pub use sk::SkContext;
pub use state::{validate_rules, Color, Coloring, PhaseState, Rule, RuleViolation, UNCOLORED};

use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::modulator::{exact_dc, greedy_dc, validate_modulator, Modulator, ModulatorError, DEFAULT_K_MAX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("vertex {0} is isolated; no conflict-free coloring exists")]
    Isolated(Vertex),
    #[error("graph is not connected")]
    Disconnected,
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Modulator(#[from] ModulatorError),
    #[error("{0}")]
    Rules(RuleViolation),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Result of an initial phase.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Initial<'g> {
    /// Rule-abiding partial coloring, to be finished by `complete_coloring`.
    Partial(PhaseState<'g>),
    /// The phase already colored everything.
    Complete(Coloring),
}

pub(crate) enum Started<'g> {
    Partial(PhaseState<'g>),
    Complete((Coloring, Trace)),
}

impl<'g> Started<'g> {
    fn public(self) -> Initial<'g> {
        match self {
            Started::Partial(st) => Initial::Partial(st),
            Started::Complete((c, _)) => Initial::Complete(c),
        }
    }

    fn finish(self) -> Result<(Coloring, Trace), EngineError> {
        match self {
            Started::Partial(st) => completion::complete(st),
            Started::Complete(done) => Ok(done),
        }
    }
}

fn connected_without_isolated(g: &Graph) -> Result<(), EngineError> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(EngineError::Isolated(v));
    }
    if !g.is_connected() {
        return Err(EngineError::Disconnected);
    }
    Ok(())
}

/// Colors one connected, isolated-vertex-free component with respect to a valid modulator.
fn color_component(g: &Graph, m: &Modulator) -> Result<(Coloring, Trace), EngineError> {
    connected_without_isolated(g)?;
    match m.size() {
        0 => small::run_x0(g),
        1 => small::run_x1(g, m),
        2 => small::run_x2(g, m),
        _ if g.is_independent(&m.x) => {
            let all_atmost1 = g.vertices().filter(|&v| !m.in_x(v)).all(|v| g.count_in(v, &m.x) <= 1);
            if all_atmost1 {
                independent::run_atmost1(PhaseState::new(g, m))
            } else {
                completion::complete(independent::initial_deg2(PhaseState::with_base_colors(g, m))?)
            }
        }
        _ => matching::initial_nonindep(PhaseState::with_base_colors(g, m))?.finish(),
    }
}

/// Colors `g` with at most `max(3, |X| + 1)` colors, also returning the case trace.
/// Without a modulator, an exact one is searched within the default budget, else a greedy one is used.
pub fn color_graph_traced(g: &Graph, x: Option<&VertexSet>) -> Result<(Coloring, Trace), EngineError> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(EngineError::Isolated(v));
    }
    let x = match x {
        Some(x) => validate_modulator(g, x)?.x,
        None => exact_dc(g, DEFAULT_K_MAX).unwrap_or_else(|_| greedy_dc(g)).x,
    };
    let mut out = Coloring::uncolored(g.n(), 0);
    let mut trace = Trace::default();
    for comp in g.components() {
        let sub = g.induced(&comp)?;
        let local_x: VertexSet = x.iter().filter_map(|&v| sub.local(v)).collect();
        let m = validate_modulator(&sub.graph, &local_x)?;
        let (c, t) = color_component(&sub.graph, &m)?;
        for (i, &p) in sub.to_parent.iter().enumerate() {
            out.color[p] = c.color[i];
            out.witness[p] = c.witness[i].map(|w| sub.to_parent[w]);
        }
        out.c_max = out.c_max.max(c.c_max);
        trace.merge(&t);
    }
    Ok((out, trace))
}

pub fn color_graph(g: &Graph, x: Option<&VertexSet>) -> Result<Coloring, EngineError> {
    color_graph_traced(g, x).map(|(c, _)| c)
}

/// Colors a connected clique (no modulator) of size at least two.
pub fn color_x0(g: &Graph) -> Result<Coloring, EngineError> {
    connected_without_isolated(g)?;
    small::run_x0(g).map(|(c, _)| c)
}

fn require(ok: bool, what: &'static str) -> Result<(), EngineError> {
    if ok {
        Ok(())
    } else {
        Err(EngineError::Precondition(what))
    }
}

pub fn color_x1(g: &Graph, m: &Modulator) -> Result<Coloring, EngineError> {
    require(m.size() == 1, "modulator must have exactly one vertex")?;
    connected_without_isolated(g)?;
    small::run_x1(g, m).map(|(c, _)| c)
}

pub fn color_x2(g: &Graph, m: &Modulator) -> Result<Coloring, EngineError> {
    require(m.size() == 2, "modulator must have exactly two vertices")?;
    connected_without_isolated(g)?;
    small::run_x2(g, m).map(|(c, _)| c)
}

fn check_independent(g: &Graph, m: &Modulator) -> Result<(), EngineError> {
    require(m.size() >= 3, "modulator must have at least three vertices")?;
    require(g.is_independent(&m.x), "modulator must be independent")?;
    connected_without_isolated(g)
}

/// Independent modulator where every clique vertex has at most one modulator neighbor.
pub fn color_indep_atmost1(g: &Graph, m: &Modulator) -> Result<Coloring, EngineError> {
    check_independent(g, m)?;
    if g.vertices().any(|v| !m.in_x(v) && g.count_in(v, &m.x) > 1) {
        return Err(EngineError::Precondition("some clique vertex has two modulator neighbors"));
    }
    independent::run_atmost1(PhaseState::new(g, m)).map(|(c, _)| c)
}

/// Initial phase for an independent modulator with some clique vertex seeing two modulator vertices.
pub fn initial_indep_deg2<'g>(g: &'g Graph, m: &'g Modulator) -> Result<PhaseState<'g>, EngineError> {
    check_independent(g, m)?;
    independent::initial_deg2(PhaseState::with_base_colors(g, m))
}

fn check_nonindep(g: &Graph, m: &Modulator) -> Result<(), EngineError> {
    require(m.size() >= 3, "modulator must have at least three vertices")?;
    require(!g.is_independent(&m.x), "modulator must span an edge")?;
    connected_without_isolated(g)
}

/// Initial phase for a modulator spanning at least one edge.
pub fn initial_nonindep<'g>(g: &'g Graph, m: &'g Modulator) -> Result<Initial<'g>, EngineError> {
    check_nonindep(g, m)?;
    Ok(matching::initial_nonindep(PhaseState::with_base_colors(g, m))?.public())
}

/// Initial phase for a modulator inducing a perfect matching.
pub fn initial_perfect_matching<'g>(g: &'g Graph, m: &'g Modulator) -> Result<Initial<'g>, EngineError> {
    check_nonindep(g, m)?;
    if m.x.iter().any(|&v| g.count_in(v, &m.x) != 1) {
        return Err(EngineError::Precondition("modulator must induce a perfect matching"));
    }
    Ok(matching::initial_perfect_matching(PhaseState::with_base_colors(g, m))?.public())
}

/// Initial phase for a modulator of maximum degree one with an isolated modulator vertex.
pub fn initial_iso_matching<'g>(g: &'g Graph, m: &'g Modulator) -> Result<PhaseState<'g>, EngineError> {
    check_nonindep(g, m)?;
    let degs: Vec<usize> = m.x.iter().map(|&v| g.count_in(v, &m.x)).collect();
    if degs.iter().any(|&d| d > 1) || !degs.contains(&0) {
        return Err(EngineError::Precondition("modulator must have max degree one and an isolated vertex"));
    }
    iso::initial_iso_matching(PhaseState::with_base_colors(g, m))
}

/// Colors the clique `ctx.clique` around its colored anchor while protecting `ctx.s_k`.
pub fn handle_sk<'g>(mut state: PhaseState<'g>, ctx: &mut SkContext) -> Result<PhaseState<'g>, EngineError> {
    sk::run_sk(&mut state, ctx)?;
    Ok(state)
}

/// Extends a rule-abiding partial coloring to a total one.
pub fn complete_coloring(state: PhaseState<'_>) -> Result<Coloring, EngineError> {
    completion::complete(state).map(|(c, _)| c)
}

/// As `complete_coloring`, keeping the accumulated trace.
pub fn complete_coloring_traced(state: PhaseState<'_>) -> Result<(Coloring, Trace), EngineError> {
    completion::complete(state)
}
