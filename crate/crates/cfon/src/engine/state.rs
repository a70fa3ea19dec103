//! Partial colorings, the mid-run phase state and its rule checker.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cases::{Case, Trace};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::modulator::Modulator;

pub type Color = usize;
pub const UNCOLORED: Color = 0;

/// Vertex colors (1-based, `UNCOLORED` for none) with designated uniquely colored neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub color: Vec<Color>,
    pub witness: Vec<Option<Vertex>>,
    pub c_max: Color,
}

impl Coloring {
    pub fn uncolored(n: usize, c_max: Color) -> Self {
        Coloring { color: vec![UNCOLORED; n], witness: vec![None; n], c_max }
    }

    pub fn n(&self) -> usize {
        self.color.len()
    }

    pub fn is_total(&self) -> bool {
        self.color.iter().all(|&c| c != UNCOLORED)
    }

    /// Number of distinct colors in use.
    pub fn palette_size(&self) -> usize {
        self.color.iter().filter(|&&c| c != UNCOLORED).collect::<BTreeSet<_>>().len()
    }

    /// One line `v color witness` per vertex, `-` for a missing witness.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, (&c, w)) in self.color.iter().zip(&self.witness).enumerate() {
            let w = w.map_or_else(|| "-".to_string(), |w| w.to_string());
            out.push_str(&format!("{v} {c} {w}\n"));
        }
        out
    }

    /// Parses the `to_text` format for a graph on `n` vertices. Lines starting with `#` are skipped;
    /// vertices without a line stay uncolored. The budget is set to the largest color seen.
    pub fn parse_text(text: &str, n: usize) -> Result<Coloring, String> {
        let mut c = Coloring::uncolored(n, 0);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: &str| format!("line {}: {m}", i + 1);
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() < 2 || tokens.len() > 3 {
                return Err(err("expected `vertex color [witness]`"));
            }
            let v: Vertex = tokens[0].parse().map_err(|_| err("bad vertex"))?;
            if v >= n {
                return Err(err("vertex out of range"));
            }
            c.color[v] = tokens[1].parse().map_err(|_| err("bad color"))?;
            c.witness[v] = match tokens.get(2) {
                None | Some(&"-") => None,
                Some(t) => Some(t.parse().ok().filter(|&w: &Vertex| w < n).ok_or_else(|| err("bad witness"))?),
            };
        }
        c.c_max = c.color.iter().copied().max().unwrap_or(0);
        Ok(c)
    }
}

/// Which completion rule a phase state breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// Modulator vertices carry their base colors.
    BaseColors,
    /// Cliques are colored all-or-nothing.
    WholeCliques,
    /// Matched modulator vertices and colored clique vertices have a unique neighbor color.
    ColoredHaveWitness,
    /// Modulator vertices with fully colored neighborhoods have a recorded witness.
    SaturatedHaveWitness,
    /// A free color exists and nobody relies on it.
    FreeColor,
    /// Colors of witness-less unmatched modulator vertices are unused outside the modulator.
    FreshColors,
    /// Exception vertices see only one clique.
    Exceptions,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::BaseColors => "(i) base colors",
            Rule::WholeCliques => "(ii) whole cliques",
            Rule::ColoredHaveWitness => "(iii) colored vertices have witnesses",
            Rule::SaturatedHaveWitness => "(iv) saturated modulator vertices have witnesses",
            Rule::FreeColor => "(v) free color",
            Rule::FreshColors => "(vi) fresh colors",
            Rule::Exceptions => "exception confinement",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleViolation {
    pub rule: Rule,
    pub vertex: Option<Vertex>,
    pub detail: String,
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} violated", self.rule)?;
        if let Some(v) = self.vertex {
            write!(f, " at vertex {v}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// Snapshot between the initial and completion phases for one connected component.
#[derive(Debug, Clone)]
pub struct PhaseState<'g> {
    pub graph: &'g Graph,
    pub modulator: &'g Modulator,
    pub coloring: Coloring,
    /// Modulator vertices with a neighbor inside the modulator.
    pub y: VertexSet,
    pub free_color: Option<Color>,
    pub colored_cliques: BTreeSet<usize>,
    /// Modulator vertices allowed to rely on the extra color.
    pub exception_vertices: VertexSet,
    /// Modulator vertices deliberately given a color other than their base color.
    pub relabeled: VertexSet,
    pub trace: Trace,
    xs: Vec<Vertex>,
}

impl<'g> PhaseState<'g> {
    /// All vertices uncolored; the color budget is `max(3, d + 1)`.
    pub fn new(graph: &'g Graph, modulator: &'g Modulator) -> Self {
        let xs: Vec<Vertex> = modulator.x.iter().copied().collect();
        let y = xs.iter().copied().filter(|&v| graph.count_in(v, &modulator.x) > 0).collect();
        let c_max = (xs.len() + 1).max(3);
        PhaseState {
            graph,
            modulator,
            coloring: Coloring::uncolored(graph.n(), c_max),
            y,
            free_color: None,
            colored_cliques: BTreeSet::new(),
            exception_vertices: VertexSet::new(),
            relabeled: VertexSet::new(),
            trace: Trace::default(),
            xs,
        }
    }

    /// As `new`, with every modulator vertex painted its base color.
    pub fn with_base_colors(graph: &'g Graph, modulator: &'g Modulator) -> Self {
        let mut st = Self::new(graph, modulator);
        for i in 0..st.xs.len() {
            st.paint(st.xs[i], i + 1);
        }
        st
    }

    pub fn d(&self) -> usize {
        self.xs.len()
    }

    /// The color reserved for neither modulator vertex nor free color: `d + 1`.
    pub fn extra(&self) -> Color {
        self.xs.len() + 1
    }

    /// Modulator vertices in ascending order.
    pub fn xs(&self) -> &[Vertex] {
        &self.xs
    }

    /// Base color of a modulator vertex: its 1-based rank in the modulator.
    pub fn base(&self, x: Vertex) -> Color {
        self.xs.binary_search(&x).expect("not a modulator vertex") + 1
    }

    /// Modulator vertex whose base color is `c`.
    pub fn owner_of(&self, c: Color) -> Vertex {
        self.xs[c - 1]
    }

    pub fn in_x(&self, v: Vertex) -> bool {
        self.modulator.in_x(v)
    }

    pub fn in_y(&self, v: Vertex) -> bool {
        self.y.contains(&v)
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.coloring.color[v]
    }

    pub fn colored(&self, v: Vertex) -> bool {
        self.coloring.color[v] != UNCOLORED
    }

    pub fn paint(&mut self, v: Vertex, c: Color) {
        debug_assert!(c >= 1 && c <= self.coloring.c_max, "color {c} outside budget");
        self.coloring.color[v] = c;
    }

    pub fn rely(&mut self, v: Vertex, w: Vertex) {
        debug_assert!(self.graph.has_edge(v, w), "witness {w} not adjacent to {v}");
        self.coloring.witness[v] = Some(w);
    }

    pub fn witness(&self, v: Vertex) -> Option<Vertex> {
        self.coloring.witness[v]
    }

    pub fn adj(&self, u: Vertex, v: Vertex) -> bool {
        self.graph.has_edge(u, v)
    }

    /// `N(v) ∩ X` in ascending order.
    pub fn x_nbrs(&self, v: Vertex) -> Vec<Vertex> {
        self.graph.neighbors(v).iter().copied().filter(|&w| self.in_x(w)).collect()
    }

    pub fn deg_x(&self, v: Vertex) -> usize {
        self.graph.count_in(v, &self.modulator.x)
    }

    pub fn clique(&self, k: usize) -> &'g VertexSet {
        &self.modulator.cliques[k]
    }

    pub fn clique_id(&self, v: Vertex) -> usize {
        self.modulator.clique_of[v].expect("vertex lies in the modulator")
    }

    pub fn num_cliques(&self) -> usize {
        self.modulator.cliques.len()
    }

    /// Occurrences of color `c` among colored neighbors of `v`.
    pub fn count_in_nbhd(&self, v: Vertex, c: Color) -> usize {
        self.graph.neighbors(v).iter().filter(|&&w| self.color(w) == c).count()
    }

    /// Whether the recorded witness of `v` is currently uniquely colored in `N(v)`.
    pub fn witness_ok(&self, v: Vertex) -> bool {
        match self.witness(v) {
            Some(w) => self.adj(v, w) && self.colored(w) && self.count_in_nbhd(v, self.color(w)) == 1,
            None => false,
        }
    }

    /// Least neighbor whose color is unique among the colored neighbors of `v`.
    pub fn unique_nbr(&self, v: Vertex) -> Option<Vertex> {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| self.colored(w) && self.count_in_nbhd(v, self.color(w)) == 1)
    }

    pub fn hit(&mut self, case: Case) {
        self.trace.hit(case);
    }

    pub fn x_with_witness(&self) -> VertexSet {
        self.xs.iter().copied().filter(|&x| self.witness_ok(x)).collect()
    }

    pub fn admit_exception(&mut self, x: Vertex) {
        if self.exception_vertices.insert(x) {
            self.trace.exceptions += 1;
        }
    }

    /// Paints `color` on every uncolored vertex of `k`.
    pub fn fill(&mut self, k: usize, color: Color) {
        for &v in self.clique(k) {
            if !self.colored(v) {
                self.paint(v, color);
            }
        }
    }

    /// Every vertex of `k` except `except` relies on `w`.
    pub fn all_rely_on(&mut self, k: usize, w: Vertex, except: &[Vertex]) {
        for &v in self.clique(k) {
            if v != w && !except.contains(&v) {
                self.rely(v, w);
            }
        }
    }

    pub fn refresh_colored_cliques(&mut self) {
        self.colored_cliques =
            (0..self.num_cliques()).filter(|&k| self.clique(k).iter().all(|&v| self.colored(v))).collect();
    }

    /// Finalizes witnesses: keeps each recorded witness that holds, otherwise takes the least valid one.
    pub fn finish(mut self) -> (Coloring, Trace) {
        for v in self.graph.vertices() {
            if self.witness_ok(v) {
                continue;
            }
            if self.witness(v).is_some() {
                self.trace.stale_witnesses += 1;
                if self.in_x(v) {
                    self.trace.stale_x_witnesses += 1;
                }
            }
            self.coloring.witness[v] = self.unique_nbr(v);
        }
        (self.coloring, self.trace)
    }
}

/// Checks the completion preconditions against a phase state.
pub fn validate_rules(st: &PhaseState<'_>) -> Result<(), RuleViolation> {
    let fail = |rule, vertex: Option<Vertex>, detail: String| Err(RuleViolation { rule, vertex, detail });
    let extra = st.extra();

    for &x in st.xs() {
        if !st.relabeled.contains(&x) && st.color(x) != st.base(x) {
            return fail(Rule::BaseColors, Some(x), format!("color {} instead of {}", st.color(x), st.base(x)));
        }
    }

    for (k, clique) in st.modulator.cliques.iter().enumerate() {
        let n_col = clique.iter().filter(|&&v| st.colored(v)).count();
        if n_col != 0 && n_col != clique.len() {
            return fail(Rule::WholeCliques, clique.iter().next().copied(), format!("clique {k} partly colored"));
        }
        if (n_col == clique.len()) != st.colored_cliques.contains(&k) {
            return fail(Rule::WholeCliques, None, format!("colored-clique ledger wrong for clique {k}"));
        }
    }

    for v in st.graph.vertices() {
        if st.in_x(v) {
            if st.in_y(v) && !st.witness_ok(v) {
                return fail(Rule::ColoredHaveWitness, Some(v), "matched vertex lacks a valid witness".into());
            }
        } else if st.colored(v) && st.unique_nbr(v).is_none() {
            return fail(Rule::ColoredHaveWitness, Some(v), "colored vertex sees no unique color".into());
        }
    }

    for &x in st.xs() {
        let saturated = st.graph.neighbors(x).iter().all(|&w| st.colored(w));
        if saturated && !st.witness_ok(x) {
            return fail(Rule::SaturatedHaveWitness, Some(x), "neighborhood colored but no witness".into());
        }
    }

    let Some(f) = st.free_color else {
        return fail(Rule::FreeColor, None, "no free color".into());
    };
    if f == 0 || f > st.d() {
        return fail(Rule::FreeColor, None, format!("free color {f} outside 1..={}", st.d()));
    }
    let vf = st.owner_of(f);
    if !st.witness_ok(vf) {
        return fail(Rule::FreeColor, Some(vf), "owner of the free color lacks a witness".into());
    }
    for &x in st.xs() {
        if st.exception_vertices.contains(&x) || !st.witness_ok(x) {
            continue;
        }
        let c = st.color(st.witness(x).unwrap());
        if c == f || c == extra {
            return fail(Rule::FreeColor, Some(x), format!("relies on reserved color {c}"));
        }
    }

    for &x in st.xs() {
        if st.in_y(x) || st.witness_ok(x) {
            continue;
        }
        let c = st.base(x);
        if let Some(w) = st.graph.vertices().find(|&w| !st.in_x(w) && st.color(w) == c) {
            return fail(Rule::FreshColors, Some(x), format!("its color {c} already used on {w}"));
        }
    }

    for &x in &st.exception_vertices {
        let cliques: BTreeSet<usize> = st.graph.neighbors(x).iter().filter_map(|&w| st.modulator.clique_of[w]).collect();
        let inside_x = st.graph.neighbors(x).iter().any(|&w| st.in_x(w));
        if cliques.len() > 1 || inside_x {
            return fail(Rule::Exceptions, Some(x), "exception vertex sees more than one clique".into());
        }
    }
    Ok(())
}
