//! Simple undirected graphs, the standard families used throughout the crate,
//! and the neighborhood corona `G1 ★ G2`.
//!
//! Vertex order of a corona on `n1 (1 + n2)` vertices: the `n1` apex vertices
//! `(x, 0)` first in `G1` order, then copy `x` of `G2` for each `x` in `G1`
//! order, each copy in `G2` order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Dense simple graph. Adjacency is stored row-major as booleans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        Ok(Self { n, adj: vec![false; n * n], labels: None })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
        }
        self.adj[i * self.n + j] = true;
        self.adj[j * self.n + i] = true;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i * self.n + j]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n].iter().filter(|&&a| a).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.adj[v * self.n + w])
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj[i * self.n + j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| if self.adj[i * self.n + j] { 1.0 } else { 0.0 })
    }

    /// Adjacency as 0/1 integers, row-major.
    pub fn adjacency_entries(&self) -> Vec<i64> {
        self.adj.iter().map(|&a| a as i64).collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(vertices.len())?;
        for (a, &i) in vertices.iter().enumerate() {
            self.check_vertex(i)?;
            for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }

    /// Recovers `(G1, G2)` when this graph carries corona vertex labels
    /// `"(x,y)"` in corona order and its edges agree with `G1 ★ G2`.
    pub fn corona_factors(&self) -> Option<(Graph, Graph)> {
        let labels = self.labels.as_ref()?;
        let pairs: Vec<CoronaVertex> =
            labels.iter().map(|l| l.parse().ok()).collect::<Option<_>>()?;
        let n1 = pairs.iter().filter(|p| p.y.is_none()).count();
        if n1 == 0 || !self.n.is_multiple_of(n1) || self.n / n1 < 2 {
            return None;
        }
        let layout = CoronaLayout { n1, n2: self.n / n1 - 1 };
        if pairs.iter().enumerate().any(|(i, p)| layout.index(*p) != Some(i)) {
            return None;
        }
        let g1 = self.induced_subgraph(&(0..n1).collect::<Vec<_>>()).ok()?;
        let copy0: Vec<usize> = (0..layout.n2).map(|j| n1 + j).collect();
        let g2 = self.induced_subgraph(&copy0).ok()?;
        let rebuilt = neighborhood_corona(&g1, &g2);
        (rebuilt.adj == self.adj).then_some((g1, g2))
    }
}

/// The standard families `P_n`, `C_n`, `K_n` and the edgeless `\bar K_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Empty,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "path" | "p" => Ok(Family::Path),
            "cycle" | "c" => Ok(Family::Cycle),
            "complete" | "k" => Ok(Family::Complete),
            "empty" | "kbar" | "edgeless" => Ok(Family::Empty),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Empty => "empty",
        };
        f.write_str(name)
    }
}

/// `name:size`, e.g. `cycle:4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub size: usize,
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, size) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `name:size`, got `{s}`")))?;
        let size = size
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad family size in `{s}`")))?;
        Ok(FamilySpec { family: name.trim().parse()?, size })
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        build_family(self.family, self.size)
    }
}

pub fn build_family(family: Family, size: usize) -> Result<Graph> {
    if size == 0 {
        return Err(Error::InvalidArgument("family size must be at least 1".into()));
    }
    let mut g = Graph::empty(size)?;
    match family {
        Family::Path => {
            for i in 1..size {
                g.add_edge(i - 1, i)?;
            }
        }
        Family::Cycle => {
            if size < 3 {
                return Err(Error::InvalidArgument(format!(
                    "a cycle needs at least 3 vertices, got {size}"
                )));
            }
            for i in 0..size {
                g.add_edge(i, (i + 1) % size)?;
            }
        }
        Family::Complete => {
            for i in 0..size {
                for j in i + 1..size {
                    g.add_edge(i, j)?;
                }
            }
        }
        Family::Empty => {}
    }
    Ok(g)
}

/// Vertex `(x, y)` of `G1 ★ G2`; `y = None` is the apex marker `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoronaVertex {
    pub x: usize,
    pub y: Option<usize>,
}

impl CoronaVertex {
    pub fn apex(x: usize) -> Self {
        Self { x, y: None }
    }

    pub fn is_apex(&self) -> bool {
        self.y.is_none()
    }
}

/// Labels use the pair `(x,y)` with `y = 0` for apexes and
/// `y = 1..=n2` for the vertices of copy `x`.
impl fmt::Display for CoronaVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.y {
            None => write!(f, "({},0)", self.x),
            Some(y) => write!(f, "({},{})", self.x, y + 1),
        }
    }
}

impl FromStr for CoronaVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a corona vertex label: `{s}`"));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        let x: usize = x.trim().parse().map_err(|_| bad())?;
        let y: usize = y.trim().parse().map_err(|_| bad())?;
        Ok(CoronaVertex { x, y: y.checked_sub(1) })
    }
}

/// Index arithmetic for the fixed corona vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoronaLayout {
    pub n1: usize,
    pub n2: usize,
}

impl CoronaLayout {
    pub fn order(&self) -> usize {
        self.n1 * (1 + self.n2)
    }

    pub fn index(&self, v: CoronaVertex) -> Option<usize> {
        if v.x >= self.n1 {
            return None;
        }
        match v.y {
            None => Some(v.x),
            Some(y) if y < self.n2 => Some(self.n1 + v.x * self.n2 + y),
            Some(_) => None,
        }
    }

    pub fn vertex(&self, i: usize) -> Option<CoronaVertex> {
        if i < self.n1 {
            Some(CoronaVertex::apex(i))
        } else if i < self.order() {
            let r = i - self.n1;
            Some(CoronaVertex { x: r / self.n2, y: Some(r % self.n2) })
        } else {
            None
        }
    }
}

/// The three-case adjacency relation of the neighborhood corona, evaluated
/// directly on vertex pairs.
pub fn corona_adjacent(g1: &Graph, g2: &Graph, a: CoronaVertex, b: CoronaVertex) -> bool {
    match (a.y, b.y) {
        (None, None) => g1.has_edge(a.x, b.x),
        (Some(y), Some(y2)) => a.x == b.x && g2.has_edge(y, y2),
        _ => g1.has_edge(a.x, b.x),
    }
}

/// Builds `G1 ★ G2` from the block form
/// `[[A1, A1 ⊗ jᵀ], [A1 ⊗ j, I ⊗ A2]]` and labels its vertices.
pub fn neighborhood_corona(g1: &Graph, g2: &Graph) -> Graph {
    let layout = CoronaLayout { n1: g1.n, n2: g2.n };
    let n = layout.order();
    let mut adj = vec![false; n * n];
    let (n1, n2) = (g1.n, g2.n);
    for x in 0..n1 {
        for x2 in 0..n1 {
            if !g1.has_edge(x, x2) {
                continue;
            }
            adj[x * n + x2] = true;
            for y in 0..n2 {
                let c = n1 + x2 * n2 + y;
                adj[x * n + c] = true;
                adj[c * n + x] = true;
            }
        }
        for y in 0..n2 {
            for y2 in 0..n2 {
                if g2.has_edge(y, y2) {
                    adj[(n1 + x * n2 + y) * n + n1 + x * n2 + y2] = true;
                }
            }
        }
    }
    let labels = (0..n).map(|i| layout.vertex(i).expect("index in range").to_string()).collect();
    Graph { n, adj, labels: Some(labels) }
}

/// `Some(k)` iff every vertex has degree `k`.
pub fn regularity_degree(g: &Graph) -> Option<usize> {
    let k = g.degree(0);
    (1..g.n).all(|v| g.degree(v) == k).then_some(k)
}

/// On-disk graph format: 0-based edges with `i < j`, no duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        GraphFile {
            n: g.n,
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
            labels: g.labels.clone(),
        }
    }
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Graph> {
        let mut g = Graph::empty(file.n)?;
        for [i, j] in file.edges {
            if i >= j {
                return Err(Error::InvalidGraph(format!("edge [{i}, {j}] must satisfy i < j")));
            }
            g.check_vertex(j)?;
            if g.has_edge(i, j) {
                return Err(Error::InvalidGraph(format!("duplicate edge [{i}, {j}]")));
            }
            g.add_edge(i, j)?;
        }
        match file.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from(self)).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let file: GraphFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::try_from(file)
    }
}
