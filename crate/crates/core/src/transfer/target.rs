//! Which vertex pair an analysis is about, resolved from a graph expression
//! and vertex names.

use crate::error::{param, Error, Result};
use crate::expr::GraphExpr;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// Copies `(0,u)`, `(1,u)` of base vertex `u` in `blowup(copies, base)`.
    Twin { base: GraphExpr, u: usize, copies: usize },
    /// `((0,u), x0)` and `((1,u), x_last)` in `cartesian(blowup(2, factor), other)`.
    Product { factor: GraphExpr, other: GraphExpr, u: usize },
    /// An arbitrary pair of the graph.
    Pair { expr: GraphExpr, a: usize, b: usize },
}

impl Target {
    /// The whole graph the pair lives in.
    pub fn graph_expr(&self) -> GraphExpr {
        match self {
            Target::Twin { base, copies, .. } => GraphExpr::blowup(*copies, base.clone()),
            Target::Product { factor, other, .. } => {
                GraphExpr::cartesian(GraphExpr::blowup(2, factor.clone()), other.clone())
            }
            Target::Pair { expr, .. } => expr.clone(),
        }
    }

    /// Indices of the pair in the whole graph.
    pub fn pair_indices(&self) -> Result<(usize, usize)> {
        match self {
            Target::Twin { base, u, .. } => Ok((*u, base.build()?.n_vertices() + u)),
            Target::Product { factor, other, u } => {
                let (gn, xn) = (factor.build()?.n_vertices(), other.build()?.n_vertices());
                Ok((u * xn, (gn + u) * xn + xn - 1))
            }
            Target::Pair { a, b, .. } => Ok((*a, *b)),
        }
    }
}

/// Resolves a vertex name: labels first, then 0-based indices.
pub fn resolve_vertex(g: &Graph, text: &str) -> Result<usize> {
    let text = text.trim();
    if let Some(v) = g.vertex_by_label(text) {
        return Ok(v);
    }
    match text.parse::<usize>() {
        Ok(i) if i < g.n_vertices() => Ok(i),
        Ok(i) => param(format!("vertex {i} out of range for {} vertices", g.n_vertices())),
        Err(_) => param(format!("unknown vertex `{text}`")),
    }
}

/// Resolves a vertex of `blowup(n, base)`: `c:b`, `apex<c>`, a label of the
/// blown-up graph, or an index.
fn resolve_blowup_vertex(base: &Graph, n: usize, whole: &Graph, text: &str) -> Result<usize> {
    let m = base.n_vertices();
    let copy = |c: &str| -> Result<usize> {
        let c: usize = c.trim().parse().map_err(|_| Error::Parameter(format!("bad copy index in `{text}`")))?;
        if c >= n {
            return param(format!("copy {c} out of range for {n} copies"));
        }
        Ok(c)
    };
    if let Some((c, b)) = text.split_once(':') {
        return Ok(copy(c)? * m + resolve_vertex(base, b)?);
    }
    if let Some(c) = text.trim().strip_prefix("apex") {
        if !c.is_empty() {
            let apex = base
                .vertex_by_label("apex")
                .ok_or_else(|| Error::Parameter("the base graph has no apex".into()))?;
            return Ok(copy(c)? * m + apex);
        }
    }
    resolve_vertex(whole, text)
}

/// Resolves a vertex of the whole graph `expr`, accepting the blow-up forms
/// when `expr` is a blow-up.
pub fn resolve_in(expr: &GraphExpr, whole: &Graph, text: &str) -> Result<usize> {
    match expr {
        GraphExpr::Blowup(n, base) => resolve_blowup_vertex(&base.build()?, *n, whole, text),
        _ => resolve_vertex(whole, text),
    }
}

/// Builds a target from command-line style arguments.
///
/// With a pair, the pair is taken in the whole graph. Otherwise the vertex is
/// a base vertex: of `G` for `blowup(k, G)` (which fixes the number of copies)
/// and for `cartesian(blowup(2, G), X)`, and of the expression itself with
/// `copies` copies (default 2) for anything else.
pub fn resolve_target(
    expr: &GraphExpr,
    vertex: Option<&str>,
    pair: Option<(&str, &str)>,
    copies: Option<usize>,
) -> Result<Target> {
    if let Some((a, b)) = pair {
        let whole = expr.build()?;
        let (a, b) = (resolve_in(expr, &whole, a)?, resolve_in(expr, &whole, b)?);
        if a == b {
            return param("the pair needs two distinct vertices");
        }
        return Ok(Target::Pair { expr: expr.clone(), a, b });
    }
    let vertex = vertex.ok_or_else(|| Error::Parameter("a vertex or a pair is required".into()))?;
    let base_vertex = |g: &GraphExpr| -> Result<usize> {
        let built = g.build()?;
        // `c:b` names the base vertex b
        let text = vertex.split_once(':').map_or(vertex, |(_, b)| b);
        resolve_vertex(&built, text)
    };
    match expr {
        GraphExpr::Cartesian(left, right) => {
            if let GraphExpr::Blowup(2, factor) = left.as_ref() {
                return Ok(Target::Product {
                    factor: (**factor).clone(),
                    other: (**right).clone(),
                    u: base_vertex(factor)?,
                });
            }
            param("twin analysis of a product needs the form cartesian(blowup(2, G), X)")
        }
        GraphExpr::Blowup(n, base) => {
            if *n < 2 {
                return param("twin analysis needs n ≥ 2 copies");
            }
            Ok(Target::Twin {
                base: (**base).clone(),
                u: base_vertex(base)?,
                copies: *n,
            })
        }
        _ => {
            let copies = copies.unwrap_or(2);
            if copies < 2 {
                return param("twin analysis needs n ≥ 2 copies");
            }
            Ok(Target::Twin {
                base: expr.clone(),
                u: base_vertex(expr)?,
                copies,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> GraphExpr {
        GraphExpr::parse(s).unwrap()
    }

    #[test]
    fn labels_before_indices() {
        // path labels are 1-based
        let t = resolve_target(&parse("path(11)"), Some("2"), None, None).unwrap();
        assert_eq!(t, Target::Twin { base: parse("path(11)"), u: 1, copies: 2 });
        let t = resolve_target(&parse("cycle(5)"), Some("2"), None, Some(3)).unwrap();
        assert_eq!(t, Target::Twin { base: parse("cycle(5)"), u: 2, copies: 3 });
    }

    #[test]
    fn blowup_forms() {
        let e = parse("blowup(2,star(4))");
        let t = resolve_target(&e, None, Some(("apex0", "apex1")), None).unwrap();
        assert_eq!(t, Target::Pair { expr: e.clone(), a: 4, b: 9 });
        let t = resolve_target(&e, None, Some(("0:1", "(1,1)")), None).unwrap();
        assert_eq!(t, Target::Pair { expr: e.clone(), a: 1, b: 6 });
        let t = resolve_target(&e, Some("apex"), None, Some(7)).unwrap();
        assert_eq!(t, Target::Twin { base: parse("star(4)"), u: 4, copies: 2 });
        assert!(resolve_target(&e, None, Some(("apex2", "apex0")), None).is_err());
        assert!(resolve_target(&e, None, Some(("apex0", "apex0")), None).is_err());
    }

    #[test]
    fn products() {
        let e = parse("cartesian(blowup(2,star(2)),hypercube(2))");
        let t = resolve_target(&e, Some("apex"), None, None).unwrap();
        assert_eq!(
            t,
            Target::Product { factor: parse("star(2)"), other: parse("hypercube(2)"), u: 2 }
        );
        assert_eq!(t.graph_expr(), e);
        assert!(resolve_target(&parse("cartesian(path(2),path(2))"), Some("0"), None, None).is_err());
    }
}
