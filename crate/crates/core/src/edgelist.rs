//! Plain-text edge lists with 1-indexed vertex labels.
//!
//! One graph per line: the order, then each edge as `i-j`, all separated by
//! single spaces. Edges are written with `i < j` in graph6 bit order, so
//! `3 1-2 2-3` is the path `v1 - v2 - v3` and `1` is the single vertex.

use crate::error::EdgeListError;
use crate::graph::Graph;

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = g.order().to_string();
    for (i, j) in g.edges() {
        out.push_str(&format!(" {}-{}", i + 1, j + 1));
    }
    out
}

/// Parses one line. `line` is the 1-based line number used in errors.
pub fn parse_edge_list(text: &str, line: usize) -> Result<Graph, EdgeListError> {
    let syntax = |message: String| EdgeListError::Syntax { line, message };
    let mut fields = text.split_whitespace();
    let n: usize = fields
        .next()
        .ok_or_else(|| syntax("missing order".into()))?
        .parse()
        .map_err(|e| syntax(format!("bad order: {e}")))?;
    let mut edges = Vec::new();
    for field in fields {
        let (a, b) = field
            .split_once('-')
            .ok_or_else(|| syntax(format!("edge {field:?} is not of the form i-j")))?;
        let label = |s: &str| -> Result<usize, EdgeListError> {
            let v: usize = s
                .parse()
                .map_err(|e| syntax(format!("bad vertex label {s:?}: {e}")))?;
            if v == 0 {
                return Err(syntax("vertex labels start at 1".into()));
            }
            Ok(v - 1)
        };
        edges.push((label(a)?, label(b)?));
    }
    Graph::from_edges(n, edges).map_err(|source| EdgeListError::Graph { line, source })
}

pub fn parse_edge_lists(text: &str) -> Result<Vec<Graph>, EdgeListError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_edge_list(l, i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::GraphError;

    #[test]
    fn path_round_trip() {
        let p3 = Graph::from_edges(3, [(1, 2), (0, 1)]).unwrap();
        assert_eq!(emit_edge_list(&p3), "3 1-2 2-3");
        assert_eq!(parse_edge_list("3 1-2 2-3", 1).unwrap(), p3);
        assert_eq!(parse_edge_list("3   2-3  1-2", 1).unwrap(), p3);
        assert_eq!(emit_edge_list(&Graph::empty(1).unwrap()), "1");
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(
            parse_edge_list("", 4),
            Err(EdgeListError::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1:2", 1),
            Err(EdgeListError::Syntax { .. })
        ));
        assert!(matches!(
            parse_edge_list("3 0-2", 1),
            Err(EdgeListError::Syntax { .. })
        ));
        assert_eq!(
            parse_edge_list("3 1-4", 2),
            Err(EdgeListError::Graph {
                line: 2,
                source: GraphError::VertexOutOfRange { vertex: 3, n: 3 }
            })
        );
        assert_eq!(
            parse_edge_list("3 2-2", 1),
            Err(EdgeListError::Graph {
                line: 1,
                source: GraphError::SelfLoop { vertex: 1 }
            })
        );
    }
}
