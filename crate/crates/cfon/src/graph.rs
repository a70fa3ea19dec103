//! Simple undirected graphs over dense `0..n` vertex indices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

pub type Vertex = usize;

/// Ordered set of vertex indices.
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("self-loop on vertex {vertex}{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    SelfLoop { vertex: Vertex, line: Option<usize> },
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

/// Immutable simple graph. Adjacency is symmetric and loop-free by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    names: Option<Vec<String>>,
}

/// An induced subgraph together with the map from its vertices to the parent's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    pub to_parent: Vec<Vertex>,
}

impl Induced {
    /// Local index of a parent vertex, if it belongs to the subgraph.
    pub fn local(&self, parent: Vertex) -> Option<Vertex> {
        self.to_parent.binary_search(&parent).ok()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![VertexSet::new(); n], names: None }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.insert_edge(u, v, None)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: Vertex, v: Vertex, line: Option<usize>) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u, line });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Neighbor set of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adj[v]
    }

    /// Checked open neighborhood.
    pub fn neighborhood(&self, v: Vertex) -> Result<&VertexSet, GraphError> {
        self.check(v)?;
        Ok(&self.adj[v])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    /// Number of neighbors of `v` inside `a`.
    pub fn deg_in(&self, v: Vertex, a: &VertexSet) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.count_in(v, a))
    }

    pub(crate) fn count_in(&self, v: Vertex, a: &VertexSet) -> usize {
        let (small, large) = if self.adj[v].len() <= a.len() { (&self.adj[v], a) } else { (a, &self.adj[v]) };
        small.iter().filter(|w| large.contains(w)).count()
    }

    /// Edges `(u, v)` with `u < v` in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.adj[v].is_empty()).collect()
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Subgraph induced by `a`, with local vertices numbered in ascending parent order.
    pub fn induced(&self, a: &VertexSet) -> Result<Induced, GraphError> {
        for &v in a {
            self.check(v)?;
        }
        let to_parent: Vec<Vertex> = a.iter().copied().collect();
        let local: BTreeMap<Vertex, Vertex> = to_parent.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::empty(to_parent.len());
        for (i, &v) in to_parent.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = local.get(w) {
                    g.adj[i].insert(j);
                }
            }
        }
        if let Some(names) = &self.names {
            g.names = Some(to_parent.iter().map(|&v| names[v].clone()).collect());
        }
        Ok(Induced { graph: g, to_parent })
    }

    /// Connected components, each listed once, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = VertexSet::new();
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Lexicographically least `(a, b, c)` with `a < c`, `b` adjacent to both and `a`, `c` non-adjacent.
    pub fn find_induced_p3(&self) -> Option<(Vertex, Vertex, Vertex)> {
        self.find_induced_p3_avoiding(&[])
    }

    /// Same search restricted to vertices `v` with `!deleted[v]`. An empty slice deletes nothing.
    pub(crate) fn find_induced_p3_avoiding(&self, deleted: &[bool]) -> Option<(Vertex, Vertex, Vertex)> {
        let gone = |v: Vertex| deleted.get(v).copied().unwrap_or(false);
        for a in self.vertices().filter(|&a| !gone(a)) {
            for &b in self.adj[a].iter().filter(|&&b| !gone(b)) {
                for &c in self.adj[b].range(a + 1..) {
                    if !gone(c) && !self.adj[a].contains(&c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_clique(&self, a: &VertexSet) -> bool {
        a.iter().all(|&u| a.iter().all(|&v| u == v || self.adj[u].contains(&v)))
    }

    pub fn is_independent(&self, a: &VertexSet) -> bool {
        a.iter().all(|&u| self.adj[u].iter().all(|v| !a.contains(v)))
    }

    /// Serializes as a `p edge n m` header followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p edge {} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Parses the edge-list text format.
    ///
    /// Tokens may be integers or names. With a `p edge n m` header and purely
    /// integer tokens the header fixes the vertex range; otherwise vertices are
    /// numbered by first appearance. A leading `e` token on an edge line is accepted.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut header_n: Option<usize> = None;
        let mut raw: Vec<(usize, String, String)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            if toks[0] == "p" {
                if header_n.is_some() || !raw.is_empty() {
                    return Err(parse_err(lineno, "header must be the first non-comment line"));
                }
                if toks.len() != 4 || toks[1] != "edge" {
                    return Err(parse_err(lineno, "expected header `p edge n m`"));
                }
                let n = toks[2].parse().map_err(|_| parse_err(lineno, "bad vertex count in header"))?;
                toks[3].parse::<usize>().map_err(|_| parse_err(lineno, "bad edge count in header"))?;
                header_n = Some(n);
                continue;
            }
            let toks = if toks[0] == "e" && toks.len() == 3 { &toks[1..] } else { &toks[..] };
            if toks.len() != 2 {
                return Err(parse_err(lineno, &format!("expected two tokens, found {}", toks.len())));
            }
            raw.push((lineno, toks[0].to_string(), toks[1].to_string()));
        }

        let all_int = raw.iter().all(|(_, a, b)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());
        if let (Some(n), true) = (header_n, all_int) {
            let mut g = Graph::empty(n);
            for (line, a, b) in &raw {
                let (u, v) = (a.parse().unwrap(), b.parse().unwrap());
                match g.insert_edge(u, v, Some(*line)) {
                    Err(GraphError::OutOfRange { vertex, n }) => {
                        return Err(parse_err(*line, &format!("vertex {vertex} exceeds header count {n}")))
                    }
                    r => r?,
                }
            }
            return Ok(g);
        }

        let mut index: BTreeMap<String, Vertex> = BTreeMap::new();
        let mut names: Vec<String> = Vec::new();
        let mut edges = Vec::with_capacity(raw.len());
        for (line, a, b) in &raw {
            let mut id = |t: &String| {
                *index.entry(t.clone()).or_insert_with(|| {
                    names.push(t.clone());
                    names.len() - 1
                })
            };
            let (u, v) = (id(a), id(b));
            edges.push((*line, u, v));
        }
        let mut g = Graph::empty(names.len().max(header_n.unwrap_or(0)));
        for (line, u, v) in edges {
            g.insert_edge(u, v, Some(line))?;
        }
        let identity = names.iter().enumerate().all(|(i, s)| *s == i.to_string());
        if !identity {
            names.resize_with(g.n(), String::new);
            g.names = Some(names);
        }
        Ok(g)
    }
}

fn parse_err(line: usize, message: &str) -> GraphError {
    GraphError::Parse { line, message: message.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn parses_integer_path() {
        let g = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert!(g.has_edge(1, 2));
    }

    #[test]
    fn named_tokens_dedup() {
        let g = Graph::parse_edge_list("a b\nb a").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(g.names().unwrap(), ["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn self_loop_rejected_with_line() {
        let err = Graph::parse_edge_list("# c\n0 0").unwrap_err();
        assert_eq!(err, GraphError::SelfLoop { vertex: 0, line: Some(2) });
    }

    #[test]
    fn malformed_line_reports_number() {
        match Graph::parse_edge_list("0 1\n1 2 3\n") {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn header_keeps_isolated_vertices() {
        let g = Graph::parse_edge_list("p edge 4 1\n2 3\n").unwrap();
        assert_eq!(g.n(), 4);
        assert!(g.has_edge(2, 3));
        assert!(Graph::parse_edge_list("p edge 2 1\n2 3\n").is_err());
    }

    #[test]
    fn components_ordered_by_min() {
        assert_eq!(Graph::empty(3).components(), vec![set(&[0]), set(&[1]), set(&[2])]);
        assert_eq!(path(4).components(), vec![set(&[0, 1, 2, 3])]);
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![set(&[0, 1, 2]), set(&[3, 4])]);
    }

    #[test]
    fn neighborhood_and_deg_in() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.neighborhood(0).unwrap(), &set(&[1, 2]));
        assert!(k3.neighborhood(5).is_err());
        assert_eq!(path(4).deg_in(1, &set(&[0, 3])).unwrap(), 1);
        let sub = path(4).induced(&set(&[0, 1])).unwrap();
        assert_eq!((sub.graph.n(), sub.graph.m()), (2, 1));
        assert_eq!(sub.to_parent, vec![0, 1]);
    }

    #[test]
    fn p3_search() {
        assert_eq!(path(3).find_induced_p3(), Some((0, 1, 2)));
        let k4: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        assert_eq!(Graph::from_edges(4, &k4).unwrap().find_induced_p3(), None);
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let (a, b, c) = g.find_induced_p3().unwrap();
        assert_eq!(b, 0);
        assert!(a == 3 || c == 3);
    }

    #[test]
    fn serialize_round_trip() {
        let g = Graph::from_edges(5, &[(3, 1), (0, 4), (2, 1)]).unwrap();
        let text = g.to_edge_list();
        assert!(text.starts_with("p edge 5 3\n0 4\n1 2\n1 3\n"));
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }
}
