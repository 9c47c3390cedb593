//! Simple undirected graphs and the constructions used throughout the crate.
//!
//! Vertex ordering of every composite construction is fixed so that
//! matrix-level identities hold entrywise:
//!
//! * `blow_up(g, n)` orders `Z_n x V(g)` copy-major: vertex `(c, v)` has index
//!   `c * |V(g)| + v`, so the adjacency matrix is `J_n (x) A(g)`.
//! * `cartesian_product(g, h)` orders `V(g) x V(h)` lexicographically: vertex
//!   `(a, b)` has index `a * |V(h)| + b`, so the adjacency matrix is
//!   `A(g) (x) I + I (x) A(h)`.
//! * `cone(g)` appends the apex as the last vertex.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// A labelled simple undirected graph. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph on `n` vertices labelled `0..n` from an edge list.
    ///
    /// Loops, out-of-range endpoints and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return param("a graph needs n_vertices ≥ 1");
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return param(format!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            if u == v {
                return param(format!("loop at vertex {u}"));
            }
            if adj[u].contains(&v) {
                return param(format!("repeated edge ({u}, {v})"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Graph { adj, labels })
    }

    fn from_parts(adj: Vec<Vec<usize>>, labels: Vec<String>) -> Graph {
        debug_assert_eq!(adj.len(), labels.len());
        Graph { adj, labels }
    }

    /// Replaces the vertex labels. The number of labels must match.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n_vertices() {
            return param(format!(
                "{} labels given for {} vertices",
                labels.len(),
                self.n_vertices()
            ));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n_edges());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Regular degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let n = self.n_vertices();
        let mut a = DMatrix::zeros(n, n);
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                a[(u, v)] = 1.0;
            }
        }
        a
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.n_vertices() {
            return param(format!(
                "vertex {u} out of range for {} vertices",
                self.n_vertices()
            ));
        }
        Ok(())
    }

    /// Decides whether `N(u) \ {v} = N(v) \ {u}`.
    pub fn are_twins(&self, u: usize, v: usize) -> Result<TwinVerdict> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return param("twin query needs two distinct vertices");
        }
        let nu = self.adj[u].iter().copied().filter(|&w| w != v);
        let nv: Vec<usize> = self.adj[v].iter().copied().filter(|&w| w != u).collect();
        let nu: Vec<usize> = nu.collect();
        let witness = nu
            .iter()
            .find(|w| nv.binary_search(w).is_err())
            .or_else(|| nv.iter().find(|w| nu.binary_search(w).is_err()))
            .copied();
        Ok(TwinVerdict {
            are_twins: witness.is_none(),
            adjacent: self.has_edge(u, v),
            witness,
        })
    }

    /// Partition of the vertex set into classes of equal open neighbourhood.
    ///
    /// These are the maximal sets of pairwise non-adjacent twins. Adjacent
    /// twins land in different classes; query them with [`Graph::are_twins`].
    /// Classes are ordered by their smallest member.
    pub fn twin_partition(&self) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for (u, list) in self.adj.iter().enumerate() {
            classes.entry(list.as_slice()).or_default().push(u);
        }
        let mut out: Vec<Vec<usize>> = classes.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }
}

/// Outcome of a twin query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinVerdict {
    pub are_twins: bool,
    pub adjacent: bool,
    /// A vertex adjacent to exactly one of the pair; present iff not twins.
    pub witness: Option<usize>,
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    CompleteBipartite(usize, usize),
    DoubleStar(usize, usize),
    SubdividedStar(usize),
    Empty(usize),
    Hypercube(usize),
}

impl Family {
    /// Name used by the expression language.
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Complete(_) => "complete",
            Family::Star(_) => "star",
            Family::CompleteBipartite(..) => "complete_bipartite",
            Family::DoubleStar(..) => "double_star",
            Family::SubdividedStar(_) => "subdivided_star",
            Family::Empty(_) => "empty",
            Family::Hypercube(_) => "hypercube",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            Family::Path(n)
            | Family::Cycle(n)
            | Family::Complete(n)
            | Family::Star(n)
            | Family::SubdividedStar(n)
            | Family::Empty(n)
            | Family::Hypercube(n) => vec![n],
            Family::CompleteBipartite(a, b) | Family::DoubleStar(a, b) => vec![a, b],
        }
    }

    /// Builds a family from its expression-language name and parameters.
    pub fn from_name(name: &str, params: &[usize]) -> Result<Family> {
        let arity = match name {
            "complete_bipartite" | "double_star" => 2,
            "path" | "cycle" | "complete" | "star" | "subdivided_star" | "empty"
            | "hypercube" => 1,
            _ => return Err(Error::Unsupported(format!("unknown family `{name}`"))),
        };
        if params.len() != arity {
            return param(format!(
                "{name} takes {arity} parameter(s), got {}",
                params.len()
            ));
        }
        let f = match name {
            "path" => Family::Path(params[0]),
            "cycle" => Family::Cycle(params[0]),
            "complete" => Family::Complete(params[0]),
            "star" => Family::Star(params[0]),
            "complete_bipartite" => Family::CompleteBipartite(params[0], params[1]),
            "double_star" => Family::DoubleStar(params[0], params[1]),
            "subdivided_star" => Family::SubdividedStar(params[0]),
            "empty" => Family::Empty(params[0]),
            _ => Family::Hypercube(params[0]),
        };
        f.validate()?;
        Ok(f)
    }

    /// Checks the documented parameter bounds.
    pub fn validate(&self) -> Result<()> {
        let (ok, bound) = match *self {
            Family::Path(n) => (n >= 1, "path n ≥ 1"),
            Family::Cycle(n) => (n >= 3, "cycle n ≥ 3"),
            Family::Complete(m) => (m >= 1, "complete m ≥ 1"),
            Family::Star(m) => (m >= 1, "star m ≥ 1"),
            Family::CompleteBipartite(r, s) => (r >= 1 && s >= 1, "complete_bipartite r, s ≥ 1"),
            Family::DoubleStar(k, l) => (k >= 1 && l >= 1, "double_star k, l ≥ 1"),
            Family::SubdividedStar(m) => (m >= 1, "subdivided_star m ≥ 1"),
            Family::Empty(m) => (m >= 1, "empty m ≥ 1"),
            Family::Hypercube(d) => ((1..=16).contains(&d), "hypercube 1 ≤ d ≤ 16"),
        };
        if ok {
            Ok(())
        } else {
            param(format!("{self} violates bound {bound}"))
        }
    }

    /// Builds the canonical labelled graph.
    ///
    /// Orderings and labels:
    /// * `path(n)`: vertices labelled `1..=n`, edges `(u, u+1)`.
    /// * `cycle(n)`, `complete(m)`, `empty(m)`: labelled `0..n`.
    /// * `star(m)`: equals `cone(empty(m))`; leaves `0..m`, centre last, labelled `apex`.
    /// * `complete_bipartite(r, s)`: parts `0..r` and `r..r+s`.
    /// * `double_star(k, l)`: `u` (index 0, carries k leaves), `v` (index 1),
    ///   leaves `w1..wk` of u, then leaves `x1..xl` of v.
    /// * `subdivided_star(m)`: centre `c` (index 0), subdivision vertices
    ///   `s1..sm` (indices 1..=m), leaves `l1..lm`; leaf `li` hangs off `si`.
    /// * `hypercube(d)`: bit strings, index = binary value; equals the
    ///   d-fold Cartesian power of `path(2)` under the lexicographic ordering.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let num = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let g = match *self {
            Family::Path(n) => {
                let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                Graph::from_edges(n, &edges)?.with_labels((1..=n).map(|i| i.to_string()).collect())?
            }
            Family::Cycle(n) => {
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edges(n, &edges)?
            }
            Family::Complete(m) => {
                let mut edges = Vec::new();
                for u in 0..m {
                    for v in u + 1..m {
                        edges.push((u, v));
                    }
                }
                Graph::from_edges(m, &edges)?
            }
            Family::Star(m) => cone(&Family::Empty(m).build()?),
            Family::CompleteBipartite(r, s) => {
                let mut edges = Vec::new();
                for u in 0..r {
                    for v in r..r + s {
                        edges.push((u, v));
                    }
                }
                Graph::from_edges(r + s, &edges)?
            }
            Family::DoubleStar(k, l) => {
                let mut edges = vec![(0, 1)];
                edges.extend((0..k).map(|i| (0, 2 + i)));
                edges.extend((0..l).map(|i| (1, 2 + k + i)));
                let mut labels = vec!["u".to_string(), "v".to_string()];
                labels.extend((1..=k).map(|i| format!("w{i}")));
                labels.extend((1..=l).map(|i| format!("x{i}")));
                Graph::from_edges(2 + k + l, &edges)?.with_labels(labels)?
            }
            Family::SubdividedStar(m) => {
                let mut edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
                edges.extend((1..=m).map(|i| (i, m + i)));
                let mut labels = vec!["c".to_string()];
                labels.extend((1..=m).map(|i| format!("s{i}")));
                labels.extend((1..=m).map(|i| format!("l{i}")));
                Graph::from_edges(2 * m + 1, &edges)?.with_labels(labels)?
            }
            Family::Empty(m) => Graph::from_edges(m, &[])?.with_labels(num(m))?,
            Family::Hypercube(d) => {
                let n = 1usize << d;
                let mut edges = Vec::new();
                for u in 0..n {
                    for b in 0..d {
                        let v = u ^ (1 << b);
                        if v > u {
                            edges.push((u, v));
                        }
                    }
                }
                edges.sort_unstable();
                let labels = (0..n).map(|u| format!("{u:0width$b}", width = d)).collect();
                Graph::from_edges(n, &edges)?.with_labels(labels)?
            }
        };
        Ok(g)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.name(), params.join(","))
    }
}

/// Replaces every vertex by an independent set of `n` copies.
///
/// Vertex `(c, v)` has index `c * |V| + v` and label `(c,label(v))`.
pub fn blow_up(g: &Graph, n: usize) -> Result<Graph> {
    if n == 0 {
        return param("blow-up needs n ≥ 1");
    }
    let m = g.n_vertices();
    let mut adj = vec![Vec::with_capacity(0); n * m];
    let mut labels = Vec::with_capacity(n * m);
    for c in 0..n {
        for v in 0..m {
            let mut list = Vec::with_capacity(n * g.degree(v));
            for d in 0..n {
                list.extend(g.neighbors(v).iter().map(|&w| d * m + w));
            }
            list.sort_unstable();
            adj[c * m + v] = list;
            labels.push(format!("({c},{})", g.label(v)));
        }
    }
    Ok(Graph::from_parts(adj, labels))
}

/// Adds an apex adjacent to every vertex. The apex is the last vertex and is
/// labelled `apex`.
pub fn cone(g: &Graph) -> Graph {
    let m = g.n_vertices();
    let mut adj: Vec<Vec<usize>> = g.adj.clone();
    for list in &mut adj {
        list.push(m);
    }
    adj.push((0..m).collect());
    let mut labels = g.labels.clone();
    labels.push("apex".to_string());
    Graph::from_parts(adj, labels)
}

/// Cartesian product with adjacency `A(g) (x) I + I (x) A(h)`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let (m, k) = (g.n_vertices(), h.n_vertices());
    let mut adj = Vec::with_capacity(m * k);
    let mut labels = Vec::with_capacity(m * k);
    for a in 0..m {
        for b in 0..k {
            let mut list: Vec<usize> = g.neighbors(a).iter().map(|&x| x * k + b).collect();
            list.extend(h.neighbors(b).iter().map(|&y| a * k + y));
            list.sort_unstable();
            adj.push(list);
            labels.push(format!("({},{})", g.label(a), h.label(b)));
        }
    }
    Graph::from_parts(adj, labels)
}

/// Parses the edge-list text format: a header line `n <count>` followed by
/// one `u v` pair per line, 0-based. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse {
            offset: start,
            message: msg.to_string(),
        };
        match n {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(bad("expected header `n <count>`"));
                }
                n = Some(fields[1].parse().map_err(|_| bad("vertex count is not an integer"))?);
            }
            Some(_) => {
                if fields.len() != 2 {
                    return Err(bad("expected an edge `u v`"));
                }
                let u = fields[0].parse().map_err(|_| bad("endpoint is not an integer"))?;
                let v = fields[1].parse().map_err(|_| bad("endpoint is not an integer"))?;
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        offset: text.len(),
        message: "missing header `n <count>`".into(),
    })?;
    Graph::from_edges(n, &edges)
}

/// Renders a graph in the edge-list text format.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n_vertices());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn family_sizes() {
        let p3 = Family::Path(3).build().unwrap();
        assert_eq!((p3.n_vertices(), p3.n_edges()), (3, 2));
        let sk = Family::SubdividedStar(3).build().unwrap();
        assert_eq!((sk.n_vertices(), sk.n_edges()), (7, 6));
        assert_eq!(sorted_degrees(&sk), vec![1, 1, 1, 2, 2, 2, 3]);
        let ds = Family::DoubleStar(1, 1).build().unwrap();
        let p4 = Family::Path(4).build().unwrap();
        assert_eq!(ds.n_edges(), 3);
        assert_eq!(sorted_degrees(&ds), sorted_degrees(&p4));
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(Family::Cycle(2).build(), Err(Error::Parameter(m)) if m.contains("n ≥ 3")));
        assert!(Family::Path(0).build().is_err());
        assert!(Family::DoubleStar(0, 2).build().is_err());
        assert!(Family::from_name("path", &[1, 2]).is_err());
        assert!(matches!(Family::from_name("wheel", &[5]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn path_labels_are_one_based() {
        let p = Family::Path(5).build().unwrap();
        assert_eq!(p.label(0), "1");
        assert_eq!(p.vertex_by_label("5"), Some(4));
    }

    #[test]
    fn blow_up_of_p3_matches_figure() {
        let p3 = Family::Path(3).build().unwrap();
        let b = blow_up(&p3, 2).unwrap();
        assert_eq!((b.n_vertices(), b.n_edges()), (6, 8));
        assert_eq!(b.label(4), "(1,2)");
        // (0,a)-(1,b) and (1,a)-(0,b) present, copies of one vertex never adjacent
        assert!(b.has_edge(0, 4) && b.has_edge(3, 1));
        assert!(!b.has_edge(0, 3));
    }

    #[test]
    fn blow_up_identity_and_c4() {
        let g = Family::Cycle(5).build().unwrap();
        assert_eq!(blow_up(&g, 1).unwrap().edges(), g.edges());
        let k2 = Family::Complete(2).build().unwrap();
        let b = blow_up(&k2, 2).unwrap();
        assert_eq!((b.n_vertices(), b.n_edges(), b.regular_degree()), (4, 4, Some(2)));
        assert!(blow_up(&k2, 0).is_err());
    }

    #[test]
    fn cones() {
        let star = cone(&Family::Empty(4).build().unwrap());
        assert_eq!(star.edges(), Family::Star(4).build().unwrap().edges());
        let wheel = cone(&Family::Cycle(5).build().unwrap());
        assert_eq!(wheel.n_vertices(), 6);
        assert_eq!(wheel.degree(5), 5);
        assert_eq!(wheel.label(5), "apex");
        let k4 = cone(&Family::Complete(3).build().unwrap());
        assert_eq!(k4.edges(), Family::Complete(4).build().unwrap().edges());
    }

    #[test]
    fn cartesian_products() {
        let p2 = Family::Path(2).build().unwrap();
        let c4 = cartesian_product(&p2, &p2);
        assert_eq!((c4.n_vertices(), c4.n_edges(), c4.regular_degree()), (4, 4, Some(2)));
        let mut q = p2.clone();
        for _ in 1..4 {
            q = cartesian_product(&q, &p2);
        }
        assert_eq!(q.edges(), Family::Hypercube(4).build().unwrap().edges());
        let p3 = Family::Path(3).build().unwrap();
        let g = cartesian_product(&p3, &p3);
        assert_eq!((g.n_vertices(), g.n_edges()), (9, 12));
    }

    #[test]
    fn twins() {
        let p3 = Family::Path(3).build().unwrap();
        let b = blow_up(&p3, 2).unwrap();
        let t = b.are_twins(1, 4).unwrap();
        assert!(t.are_twins && !t.adjacent && t.witness.is_none());
        let star = Family::Star(3).build().unwrap();
        assert!(star.are_twins(0, 1).unwrap().are_twins);
        assert!(p3.are_twins(0, 2).unwrap().are_twins);
        let no = p3.are_twins(0, 1).unwrap();
        assert!(!no.are_twins && no.adjacent && no.witness == Some(2));
        assert!(p3.are_twins(1, 1).is_err());
        let k2 = Family::Complete(2).build().unwrap();
        assert!(k2.are_twins(0, 1).unwrap().are_twins);
        assert_eq!(k2.twin_partition(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn twin_partition_of_blown_up_p3() {
        let b = blow_up(&Family::Path(3).build().unwrap(), 2).unwrap();
        assert_eq!(b.twin_partition(), vec![vec![0, 2, 3, 5], vec![1, 4]]);
    }

    #[test]
    fn edge_list_format() {
        let text = "# a triangle\nn 3\n0 1\n\n1 2 # comment\n2 0\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        assert!(matches!(parse_edge_list("n 2\n0 x\n"), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(parse_edge_list("0 1\n"), Err(Error::Parse { offset: 0, .. })));
        assert!(parse_edge_list("n 2\n0 0\n").is_err());
    }
}
