//! Graphs read off a binary matrix: the unipartite adjacency view and the
//! bipartite treatment–block (Levi) view.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::designs::IncidenceMatrix;
use crate::error::{Error, Result};

/// Girth is only computed up to this many vertices.
pub const GIRTH_VERTEX_LIMIT: usize = 64;

/// Read-only adjacency access shared by both graph views.
pub trait GraphView {
    fn vertex_count(&self) -> usize;
    /// Neighbours of `vertex`, ascending, loops excluded.
    fn neighbors(&self, vertex: usize) -> &[usize];
    fn label(&self, vertex: usize) -> String;

    fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.neighbors(v).len()).collect()
    }
}

fn adjacency_lists(vertex_count: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); vertex_count];
    for (a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// Simple graph of a symmetric 0/1 matrix. Diagonal 1s are kept apart as loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    loops: BTreeSet<usize>,
    adjacency: Vec<Vec<usize>>,
}

impl MGraph {
    fn from_parts(vertex_count: usize, edges: BTreeSet<(usize, usize)>, loops: BTreeSet<usize>) -> Self {
        let adjacency = adjacency_lists(vertex_count, edges.iter().copied());
        MGraph {
            vertex_count,
            edges,
            loops,
            adjacency,
        }
    }

    /// Edges `(a, b)` with `a < b`, zero-based.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn loops(&self) -> &BTreeSet<usize> {
        &self.loops
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        if doc.bipartition.is_some() {
            return Err(Error::Json("adjacency graph has no bipartition".into()));
        }
        let index = |label: &str| parse_label(label, 'v');
        let vertex_count = doc.vertices.len();
        for (expected, label) in doc.vertices.iter().enumerate() {
            if index(label)? != expected {
                return Err(Error::Json(format!("unexpected vertex {label:?}")));
            }
        }
        let mut edges = BTreeSet::new();
        for [a, b] in &doc.edges {
            let (a, b) = (index(a)?, index(b)?);
            if a >= vertex_count || b >= vertex_count || a == b {
                return Err(Error::Json(format!("bad edge ({a}, {b})")));
            }
            edges.insert((a.min(b), a.max(b)));
        }
        let loops = doc
            .loops
            .iter()
            .map(|l| index(l))
            .collect::<Result<BTreeSet<_>>>()?;
        if loops.iter().any(|&l| l >= vertex_count) {
            return Err(Error::Json("loop on unknown vertex".into()));
        }
        Ok(MGraph::from_parts(vertex_count, edges, loops))
    }
}

impl GraphView for MGraph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn neighbors(&self, vertex: usize) -> &[usize] {
        &self.adjacency[vertex]
    }

    fn label(&self, vertex: usize) -> String {
        format!("v{}", vertex + 1)
    }
}

pub fn adjacency_graph(b: &IncidenceMatrix) -> Result<MGraph> {
    if !b.is_square() {
        return Err(Error::Dimension(format!(
            "adjacency matrix must be square, got {}x{}",
            b.v(),
            b.b()
        )));
    }
    if let Some((row, col)) = b.asymmetry() {
        return Err(Error::NotSymmetric {
            row: row + 1,
            col: col + 1,
        });
    }
    let n = b.v();
    let mut edges = BTreeSet::new();
    let mut loops = BTreeSet::new();
    for x in 0..n {
        if b.get(x, x) == 1 {
            loops.insert(x);
        }
        for y in x + 1..n {
            if b.get(x, y) == 1 {
                edges.insert((x, y));
            }
        }
    }
    Ok(MGraph::from_parts(n, edges, loops))
}

/// Bipartite graph of a design. Vertices `0..v` are treatments,
/// `v..v+b` are blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl LeviGraph {
    fn from_parts(left: usize, right: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let adjacency = adjacency_lists(left + right, edges.iter().map(|&(t, b)| (t, left + b)));
        LeviGraph {
            left,
            right,
            edges,
            adjacency,
        }
    }

    /// Number of treatment vertices.
    pub fn left(&self) -> usize {
        self.left
    }

    /// Number of block vertices.
    pub fn right(&self) -> usize {
        self.right
    }

    /// `(treatment, block)` pairs, zero-based, ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        (0..self.left).map(|t| self.adjacency[t].len()).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        (0..self.right).map(|b| self.adjacency[self.left + b].len()).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let parts = doc
            .bipartition
            .as_ref()
            .ok_or_else(|| Error::Json("Levi graph needs a bipartition".into()))?;
        let (left, right) = (parts.left.len(), parts.right.len());
        for (i, label) in parts.left.iter().enumerate() {
            if parse_label(label, 't')? != i {
                return Err(Error::Json(format!("unexpected treatment {label:?}")));
            }
        }
        for (i, label) in parts.right.iter().enumerate() {
            if parse_label(label, 'b')? != i {
                return Err(Error::Json(format!("unexpected block {label:?}")));
            }
        }
        if doc.vertices.len() != left + right || !doc.loops.is_empty() {
            return Err(Error::Json("vertex list does not match bipartition".into()));
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for [t, b] in &doc.edges {
            let (t, b) = (parse_label(t, 't')?, parse_label(b, 'b')?);
            if t >= left || b >= right {
                return Err(Error::Json(format!("bad edge (t{}, b{})", t + 1, b + 1)));
            }
            edges.push((t, b));
        }
        Ok(LeviGraph::from_parts(left, right, edges))
    }
}

impl GraphView for LeviGraph {
    fn vertex_count(&self) -> usize {
        self.left + self.right
    }

    fn neighbors(&self, vertex: usize) -> &[usize] {
        &self.adjacency[vertex]
    }

    fn label(&self, vertex: usize) -> String {
        if vertex < self.left {
            format!("t{}", vertex + 1)
        } else {
            format!("b{}", vertex - self.left + 1)
        }
    }
}

pub fn levi_graph(n: &IncidenceMatrix) -> LeviGraph {
    let mut edges = Vec::new();
    for t in 0..n.v() {
        for b in 0..n.b() {
            if n.get(t, b) == 1 {
                edges.push((t, b));
            }
        }
    }
    LeviGraph::from_parts(n.v(), n.b(), edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub degree_sequence: Vec<usize>,
    pub regular: bool,
    pub bipartite: bool,
    pub components: usize,
    /// `None` for forests and for graphs above [`GIRTH_VERTEX_LIMIT`].
    pub girth: Option<usize>,
}

pub fn graph_stats<G: GraphView + ?Sized>(g: &G) -> GraphStats {
    let n = g.vertex_count();
    let degree_sequence = g.degrees();
    let regular = degree_sequence.windows(2).all(|w| w[0] == w[1]);

    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut components = 0;
    let mut bipartite = true;
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        components += 1;
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => bipartite = false,
                    Some(_) => {}
                }
            }
        }
    }

    GraphStats {
        vertex_count: n,
        edge_count: degree_sequence.iter().sum::<usize>() / 2,
        degree_sequence,
        regular,
        bipartite,
        components,
        girth: (n <= GIRTH_VERTEX_LIMIT).then(|| girth(g)).flatten(),
    }
}

/// Shortest cycle length by breadth-first search from every vertex.
fn girth<G: GraphView + ?Sized>(g: &G) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    for start in 0..n {
        let mut dist: Vec<Option<usize>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for &w in g.neighbors(u) {
                match dist[w] {
                    None => {
                        dist[w] = Some(du + 1);
                        parent[w] = u;
                        queue.push_back(w);
                    }
                    Some(dw) if parent[u] != w => {
                        let len = du + dw + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::Usage(format!(
                "unknown graph format {other:?} (expected dot or json)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bipartition {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

/// Serialized graph. Arrays follow vertex index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub loops: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<Bipartition>,
}

fn parse_label(label: &str, prefix: char) -> Result<usize> {
    label
        .strip_prefix(prefix)
        .and_then(|rest| rest.parse::<usize>().ok())
        .filter(|&i| i >= 1)
        .map(|i| i - 1)
        .ok_or_else(|| Error::Json(format!("bad vertex label {label:?}")))
}

pub trait Exportable: GraphView {
    fn graph_name(&self) -> &'static str;
    fn edge_list(&self) -> Vec<(usize, usize)>;
    fn loop_list(&self) -> Vec<usize>;
    fn bipartition(&self) -> Option<Bipartition>;

    fn to_json_doc(&self) -> GraphJson {
        GraphJson {
            vertices: (0..self.vertex_count()).map(|v| self.label(v)).collect(),
            edges: self
                .edge_list()
                .into_iter()
                .map(|(a, b)| [self.label(a), self.label(b)])
                .collect(),
            loops: self.loop_list().into_iter().map(|v| self.label(v)).collect(),
            bipartition: self.bipartition(),
        }
    }

    fn to_dot(&self) -> String {
        let mut out = format!("graph {} {{\n", self.graph_name());
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {};", self.label(v));
        }
        for (a, b) in self.edge_list() {
            let _ = writeln!(out, "  {} -- {};", self.label(a), self.label(b));
        }
        for v in self.loop_list() {
            let label = self.label(v);
            let _ = writeln!(out, "  {label} -- {label};");
        }
        out.push_str("}\n");
        out
    }
}

impl Exportable for MGraph {
    fn graph_name(&self) -> &'static str {
        "mgraph"
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    fn loop_list(&self) -> Vec<usize> {
        self.loops.iter().copied().collect()
    }

    fn bipartition(&self) -> Option<Bipartition> {
        None
    }
}

impl Exportable for LeviGraph {
    fn graph_name(&self) -> &'static str {
        "levi"
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(t, b)| (t, self.left + b)).collect()
    }

    fn loop_list(&self) -> Vec<usize> {
        Vec::new()
    }

    fn bipartition(&self) -> Option<Bipartition> {
        Some(Bipartition {
            left: (0..self.left).map(|v| self.label(v)).collect(),
            right: (self.left..self.left + self.right).map(|v| self.label(v)).collect(),
        })
    }
}

pub fn export_graph<G: Exportable + ?Sized>(g: &G, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => g.to_dot(),
        ExportFormat::Json => {
            let mut text = serde_json::to_string_pretty(&g.to_json_doc()).expect("graph json serializes");
            text.push('\n');
            text
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::to_incidence;
    use crate::matrixgen::{sign_matrix, GeneratorRule, SignConvention};

    fn incidence(n: usize) -> IncidenceMatrix {
        to_incidence(&sign_matrix(GeneratorRule::Type3CyclicSum, n, SignConvention::OddPlus).unwrap())
    }

    #[test]
    fn adjacency_of_order_three() {
        let g = adjacency_graph(&incidence(3)).unwrap();
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        assert_eq!(g.loops().iter().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(g.degrees(), vec![2, 1, 1]);
    }

    #[test]
    fn zero_matrix_is_empty() {
        let z = IncidenceMatrix::new(&[vec![0, 0], vec![0, 0]]).unwrap();
        let g = adjacency_graph(&z).unwrap();
        assert!(g.edges().is_empty() && g.loops().is_empty());
        let s = graph_stats(&g);
        assert_eq!(s.components, 2);
        assert_eq!(s.girth, None);
        let dot = export_graph(&g, ExportFormat::Dot);
        assert_eq!(dot.lines().filter(|l| l.ends_with(';') && !l.contains("--")).count(), 2);
        assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 0);
    }

    #[test]
    fn asymmetric_rejected() {
        let a = IncidenceMatrix::new(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(adjacency_graph(&a), Err(Error::NotSymmetric { row: 1, col: 2 }));
        let r = IncidenceMatrix::new(&[vec![0, 1]]).unwrap();
        assert!(matches!(adjacency_graph(&r), Err(Error::Dimension(_))));
    }

    #[test]
    fn degree_plus_loop_is_row_sum() {
        let n = incidence(9);
        let g = adjacency_graph(&n).unwrap();
        for (x, (&d, &s)) in g.degrees().iter().zip(&n.row_sums()).enumerate() {
            assert_eq!(d + usize::from(g.loops().contains(&x)), s);
            assert!(d == 4 || d == 5);
        }
    }

    #[test]
    fn levi_of_order_three_is_hexagon() {
        let l = levi_graph(&incidence(3));
        assert_eq!(l.edges().len(), 6);
        let s = graph_stats(&l);
        assert!(s.regular && s.bipartite);
        assert_eq!(s.degree_sequence, vec![2; 6]);
        assert_eq!((s.components, s.girth), (1, Some(6)));
        let dot = export_graph(&l, ExportFormat::Dot);
        assert_eq!(dot.lines().filter(|l| l.ends_with(';')).count(), 12);
    }

    #[test]
    fn levi_of_order_five() {
        let l = levi_graph(&incidence(5));
        assert_eq!(l.left_degrees(), vec![3; 5]);
        assert_eq!(l.right_degrees(), vec![3; 5]);
        assert_eq!(graph_stats(&l).components, 1);
    }

    #[test]
    fn single_incidence() {
        let l = levi_graph(&IncidenceMatrix::new(&[vec![1]]).unwrap());
        assert_eq!(l.edges(), &[(0, 0)]);
        assert_eq!(graph_stats(&l).edge_count, 1);
    }

    #[test]
    fn odd_cycle_is_not_bipartite() {
        let tri = IncidenceMatrix::new(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        let s = graph_stats(&adjacency_graph(&tri).unwrap());
        assert!(!s.bipartite);
        assert_eq!(s.girth, Some(3));
    }

    #[test]
    fn json_round_trip() {
        let n = incidence(5);
        let g = adjacency_graph(&n).unwrap();
        assert_eq!(MGraph::from_json(&export_graph(&g, ExportFormat::Json)).unwrap(), g);
        let l = levi_graph(&n);
        assert_eq!(LeviGraph::from_json(&export_graph(&l, ExportFormat::Json)).unwrap(), l);
        assert!(MGraph::from_json(r#"{"vertices":[],"edges":[],"loops":[],"extra":1}"#).is_err());
    }

    #[test]
    fn format_parse() {
        assert_eq!("dot".parse(), Ok(ExportFormat::Dot));
        assert!(matches!("svg".parse::<ExportFormat>(), Err(Error::Usage(_))));
    }
}
