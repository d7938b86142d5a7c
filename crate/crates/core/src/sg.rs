//! Plain-text signed/weighted edge list (`.sg`).
//!
//! ```text
//! # comment
//! n m
//! u v s        (m lines, s is +1 or -1)
//! w v x        (optional, weight x > 0 for vertex v; default 1.0)
//! ```
//!
//! All indices are 0-based decimal.

use crate::error::{Error, Result};
use crate::graph::{Graph, Sign, SignedGraph, WeightedSignedGraph};

pub fn parse_sg(text: &str) -> Result<WeightedSignedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::ParseLine {
        line: 1,
        message: "missing 'n m' header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(perr(hline, "header must be 'n m'"));
    };
    let n: usize = n.parse().map_err(|_| perr(hline, "bad vertex count"))?;
    let m: usize = m.parse().map_err(|_| perr(hline, "bad edge count"))?;

    let mut edges = Vec::with_capacity(m);
    let mut edge_signs = Vec::with_capacity(m);
    for k in 0..m {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| perr(hline, &format!("expected {m} edges, found {k}")))?;
        let f: Vec<&str> = l.split_whitespace().collect();
        let [u, v, s] = f[..] else {
            return Err(perr(ln, "edge line must be 'u v s'"));
        };
        let u: usize = u.parse().map_err(|_| perr(ln, "bad vertex index"))?;
        let v: usize = v.parse().map_err(|_| perr(ln, "bad vertex index"))?;
        let s = s
            .parse::<i64>()
            .ok()
            .and_then(Sign::from_value)
            .ok_or_else(|| perr(ln, "sign must be +1 or -1"))?;
        edges.push((u, v));
        edge_signs.push(s);
    }
    let g = Graph::from_edges(n, &edges).map_err(|e| perr(hline, &e.to_string()))?;
    let mut signs = vec![Sign::Positive; m];
    for (&(u, v), s) in edges.iter().zip(edge_signs) {
        signs[g.edge_index(u, v).expect("edge inserted above")] = s;
    }

    let mut weights = vec![1.0; n];
    for (ln, l) in lines {
        let f: Vec<&str> = l.split_whitespace().collect();
        let ["w", v, x] = f[..] else {
            return Err(perr(ln, "expected weight line 'w v x'"));
        };
        let v: usize = v.parse().map_err(|_| perr(ln, "bad vertex index"))?;
        let x: f64 = x.parse().map_err(|_| perr(ln, "bad weight"))?;
        if v >= n {
            return Err(perr(ln, "weight vertex out of range"));
        }
        if !(x.is_finite() && x > 0.0) {
            return Err(perr(ln, "weight must be positive"));
        }
        weights[v] = x;
    }
    WeightedSignedGraph::new(SignedGraph::new(g, signs)?, weights)
}

fn perr(line: usize, message: &str) -> Error {
    Error::ParseLine {
        line,
        message: message.to_string(),
    }
}

/// Writes the `.sg` form. Weight lines are emitted only for weights other
/// than 1.0; floats use the shortest round-tripping representation.
pub fn write_sg(ws: &WeightedSignedGraph) -> String {
    let s = ws.signed();
    let g = s.underlying();
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (&(u, v), sign) in g.edges().iter().zip(s.signs()) {
        let sv = match sign {
            Sign::Positive => "+1",
            Sign::Negative => "-1",
        };
        out.push_str(&format!("{u} {v} {sv}\n"));
    }
    for (v, &w) in ws.weights().iter().enumerate() {
        if w != 1.0 {
            out.push_str(&format!("w {v} {w:?}\n"));
        }
    }
    out
}
