//! Simple undirected graphs on dense vertex ids `0..n`, with optional role
//! annotations, plus the edge-list text format.

mod classify;
mod family;
mod ops;

pub use classify::{classify, Structure};
pub use family::{generate, FamilySpec};
pub use ops::{
    delete_pendent_edge, edit_edge, induced_subgraph, strong_product_k2, subdivide_all, EdgeEdit,
    Relabeled,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Undirected edge stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    /// Builds the canonical form of `{a, b}`.
    pub fn new(a: usize, b: usize) -> Edge {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn other(self, x: usize) -> usize {
        if x == self.0 {
            self.1
        } else {
            self.0
        }
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 == x || self.1 == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Plain,
    /// Vertex of the original graph inside a derived graph.
    Base,
    /// Vertex created by subdividing an edge.
    Middle,
    /// Non-base vertex of a K4-block in the hardness reduction.
    Inner,
}

impl Role {
    fn tag(self) -> &'static str {
        match self {
            Role::Plain => "plain",
            Role::Base => "base",
            Role::Middle => "middle",
            Role::Inner => "inner",
        }
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Role, String> {
        match s {
            "plain" => Ok(Role::Plain),
            "base" => Ok(Role::Base),
            "middle" => Ok(Role::Middle),
            "inner" => Ok(Role::Inner),
            other => Err(format!("unknown role tag `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeRole {
    Plain,
    BaseEdge,
}

impl EdgeRole {
    fn tag(self) -> &'static str {
        match self {
            EdgeRole::Plain => "plain",
            EdgeRole::BaseEdge => "base-edge",
        }
    }
}

impl FromStr for EdgeRole {
    type Err = String;

    fn from_str(s: &str) -> Result<EdgeRole, String> {
        match s {
            "plain" => Ok(EdgeRole::Plain),
            "base-edge" => Ok(EdgeRole::BaseEdge),
            other => Err(format!("unknown edge role tag `{other}`")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0} is not pendent")]
    NotPendent(Edge),
    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),
    #[error("edge {0} is already in the graph")]
    DuplicateEdge(Edge),
    #[error("role map covers {got} vertices, expected {expected}")]
    RoleCoverage { got: usize, expected: usize },
    #[error("{0}")]
    Family(String),
}

/// Immutable simple undirected graph.
///
/// Vertices are `0..n`. Edges are kept sorted and deduplicated; adjacency
/// lists are sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    roles: Option<Vec<Role>>,
    edge_roles: Option<BTreeMap<Edge, EdgeRole>>,
}

impl Graph {
    /// Builds a graph from an edge iterator, deduplicating repeated edges.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push(Edge::new(u, v));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![Vec::new(); n];
        for e in &list {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
            roles: None,
            edge_roles: None,
        })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    /// Attaches vertex roles; the slice must cover every vertex.
    pub fn with_roles(mut self, roles: Vec<Role>) -> Result<Graph, GraphError> {
        if roles.len() != self.n {
            return Err(GraphError::RoleCoverage {
                got: roles.len(),
                expected: self.n,
            });
        }
        self.roles = Some(roles);
        Ok(self)
    }

    /// Attaches edge roles; every edge must be covered and no foreign edge may appear.
    pub fn with_edge_roles(mut self, roles: BTreeMap<Edge, EdgeRole>) -> Result<Graph, GraphError> {
        for e in roles.keys() {
            if !self.has_edge(e.0, e.1) {
                return Err(GraphError::MissingEdge(*e));
            }
        }
        if roles.len() != self.edges.len() {
            return Err(GraphError::RoleCoverage {
                got: roles.len(),
                expected: self.edges.len(),
            });
        }
        self.edge_roles = Some(roles);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&Edge::new(u, v)).ok()
    }

    pub fn roles(&self) -> Option<&[Role]> {
        self.roles.as_deref()
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles.as_ref().map_or(Role::Plain, |r| r[v])
    }

    pub fn edge_roles(&self) -> Option<&BTreeMap<Edge, EdgeRole>> {
        self.edge_roles.as_ref()
    }

    pub fn edge_role(&self, e: Edge) -> EdgeRole {
        self.edge_roles
            .as_ref()
            .and_then(|m| m.get(&e).copied())
            .unwrap_or(EdgeRole::Plain)
    }

    /// Returns a copy with annotations dropped.
    pub fn plain(&self) -> Graph {
        Graph {
            roles: None,
            edge_roles: None,
            ..self.clone()
        }
    }

    /// Adjacency bitmasks, available when `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|a| a.iter().fold(0u64, |m, &w| m | (1u64 << w)))
                .collect(),
        )
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when the graph has no vertices or no edges.
    pub fn is_null(&self) -> bool {
        self.edges.is_empty()
    }

    /// Serializes to the canonical edge-list text.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.0, e.1));
        }
        if let Some(roles) = &self.roles {
            for (v, r) in roles.iter().enumerate() {
                out.push_str(&format!("role {} {}\n", v, r.tag()));
            }
        }
        if let Some(roles) = &self.edge_roles {
            for (e, r) in roles {
                out.push_str(&format!("edgerole {} {} {}\n", e.0, e.1, r.tag()));
            }
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(tok: &str, line: usize, what: &str) -> Result<usize, GraphError> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`, then
/// optional `role v tag` and `edgerole u v tag` lines. Blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n = parse_num(toks[0], hline, "vertex count")?;
    let m = parse_num(toks[1], hline, "edge count")?;

    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(hline + k + 1, format!("expected {m} edges, found {k}")))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(ln, "edge line must be `u v`"));
        }
        let u = parse_num(toks[0], ln, "endpoint")?;
        let v = parse_num(toks[1], ln, "endpoint")?;
        if u >= n || v >= n {
            return Err(parse_err(ln, format!("endpoint out of range 0..{n}")));
        }
        if u == v {
            return Err(parse_err(ln, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    let mut graph = Graph::new(n, edges).map_err(|e| parse_err(hline, e.to_string()))?;

    let mut roles: Vec<Option<Role>> = Vec::new();
    let mut edge_roles = BTreeMap::new();
    let mut last_line = hline;
    for (ln, l) in lines {
        last_line = ln;
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.as_slice() {
            ["role", v, tag] => {
                let v = parse_num(v, ln, "vertex")?;
                if v >= n {
                    return Err(parse_err(ln, format!("role vertex {v} out of range")));
                }
                let r: Role = tag.parse().map_err(|m: String| parse_err(ln, m))?;
                if roles.is_empty() {
                    roles = vec![None; n];
                }
                roles[v] = Some(r);
            }
            ["edgerole", u, v, tag] => {
                let u = parse_num(u, ln, "endpoint")?;
                let v = parse_num(v, ln, "endpoint")?;
                if !graph.has_edge(u, v) {
                    return Err(parse_err(ln, format!("edge role for missing edge {u} {v}")));
                }
                let r: EdgeRole = tag.parse().map_err(|m: String| parse_err(ln, m))?;
                edge_roles.insert(Edge::new(u, v), r);
            }
            _ => return Err(parse_err(ln, format!("unexpected line `{l}`"))),
        }
    }
    if !roles.is_empty() {
        let covered: Option<Vec<Role>> = roles.into_iter().collect();
        let roles = covered.ok_or_else(|| parse_err(last_line, "roles must cover every vertex"))?;
        graph = graph.with_roles(roles).expect("length checked");
    }
    if !edge_roles.is_empty() {
        graph = graph
            .with_edge_roles(edge_roles)
            .map_err(|e| parse_err(last_line, e.to_string()))?;
    }
    Ok(graph)
}
