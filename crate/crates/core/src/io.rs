//! JSON and DOT serialization of groups and McKay diagrams.
//!
//! Writers are hand-formatted so output bytes depend only on the data.

use std::fmt::Write as _;
use std::io::Write;

use serde::Deserialize;

use crate::chartab::Parity;
use crate::error::{Error, Result};
use crate::group::FiniteSubgroup;
use crate::mckay::{ColoredMcKayGraph, McKayVertex};
use crate::quat::{Quaternion, UnitQuaternionPair};

/// Shortest-exact-enough float formatting: 17 significant digits.
fn float(x: f64) -> String {
    // normalize negative zero so equal groups serialize identically
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn group_json(g: &FiniteSubgroup) -> String {
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"order\": {},", g.order());
    let _ = writeln!(s, "  \"ambient\": \"{}\",", g.ambient().as_str());
    s.push_str("  \"elements\": [");
    for (i, p) in g.elements().iter().enumerate() {
        let coords: Vec<String> = p.coords().iter().map(|&x| float(x)).collect();
        let sep = if i == 0 { "\n" } else { ",\n" };
        let _ = write!(s, "{sep}    [{}]", coords.join(", "));
    }
    s.push_str(if g.order() == 0 { "],\n" } else { "\n  ],\n" });
    let gens: Vec<String> = g.generator_indices().iter().map(|i| i.to_string()).collect();
    let _ = writeln!(s, "  \"generators\": [{}]", gens.join(", "));
    s.push_str("}\n");
    s
}

pub fn emit_group_json(g: &FiniteSubgroup, out: &mut impl Write) -> Result<usize> {
    write_all(out, &group_json(g))
}

fn write_all(out: &mut impl Write, s: &str) -> Result<usize> {
    out.write_all(s.as_bytes())?;
    Ok(s.len())
}

fn parity_json(p: Option<Parity>) -> &'static str {
    match p {
        Some(Parity::Even) => "1",
        Some(Parity::Odd) => "-1",
        None => "null",
    }
}

pub fn graph_json(g: &ColoredMcKayGraph) -> String {
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"dim_w\": {},", g.dim_w());
    if g.is_empty() {
        s.push_str("  \"vertices\": [],\n");
    } else {
        s.push_str("  \"vertices\": [\n");
        for (i, v) in g.vertices().iter().enumerate() {
            let _ = write!(
                s,
                "    {{\n      \"id\": {i},\n      \"dim\": {},\n      \"parity\": {},\n      \"trivial\": {}\n    }}",
                v.dim,
                parity_json(v.parity),
                v.is_trivial
            );
            s.push_str(if i + 1 < g.len() { ",\n" } else { "\n" });
        }
        s.push_str("  ],\n");
    }
    let edges: Vec<_> = g.edges().collect();
    if edges.is_empty() {
        s.push_str("  \"edges\": []\n");
    } else {
        s.push_str("  \"edges\": [\n");
        for (k, ((u, v, c), m)) in edges.iter().enumerate() {
            let _ = write!(
                s,
                "    {{\n      \"u\": {u},\n      \"v\": {v},\n      \"color\": {c},\n      \"mult\": {m}\n    }}"
            );
            s.push_str(if k + 1 < edges.len() { ",\n" } else { "\n" });
        }
        s.push_str("  ]\n");
    }
    s.push_str("}\n");
    s
}

pub fn emit_graph_json(g: &ColoredMcKayGraph, out: &mut impl Write) -> Result<usize> {
    write_all(out, &graph_json(g))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    #[serde(default = "two")]
    dim_w: u32,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

fn two() -> u32 {
    2
}

fn one() -> u32 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: usize,
    #[serde(default = "one")]
    dim: u32,
    #[serde(default)]
    parity: Option<i64>,
    #[serde(default)]
    trivial: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    u: usize,
    v: usize,
    #[serde(default = "one_u8")]
    color: u8,
    #[serde(default = "one")]
    mult: u32,
}

fn one_u8() -> u8 {
    1
}

/// Reads the graph schema written by [`graph_json`]. Vertex ids must be
/// `0..n` in order; `dim`, `parity`, `trivial`, `color` and `mult` may be
/// omitted in hand-written files.
pub fn read_graph_json(text: &str) -> Result<ColoredMcKayGraph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    if doc.dim_w != 2 && doc.dim_w != 4 {
        return Err(Error::Input(format!("dim_w must be 2 or 4, got {}", doc.dim_w)));
    }
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for (i, v) in doc.vertices.iter().enumerate() {
        if v.id != i {
            return Err(Error::Input(format!("vertex {i} has id {}", v.id)));
        }
        let parity = match v.parity {
            None => None,
            Some(s) => Some(
                Parity::from_sign(s).ok_or_else(|| Error::Input(format!("parity {s} is not ±1")))?,
            ),
        };
        vertices.push(McKayVertex { irrep_id: i, dim: v.dim, parity, is_trivial: v.trivial });
    }
    let n = vertices.len();
    let mut g = ColoredMcKayGraph::new(vertices, doc.dim_w);
    for e in &doc.edges {
        if e.u >= n || e.v >= n {
            return Err(Error::Input(format!("edge ({}, {}) out of range", e.u, e.v)));
        }
        if !g.colors().contains(&e.color) {
            return Err(Error::Input(format!("color {} invalid for dim_w {}", e.color, doc.dim_w)));
        }
        if g.multiplicity(e.u, e.v, e.color) != 0 {
            return Err(Error::Input(format!("duplicate edge ({}, {}, {})", e.u, e.v, e.color)));
        }
        g.set_edge(e.u, e.v, e.color, e.mult);
    }
    Ok(g)
}

pub fn dot(g: &ColoredMcKayGraph) -> String {
    let mut s = String::from("graph mckay {\n  node [shape=circle];\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let mut attrs = vec![format!("label=\"d={}\"", v.dim)];
        if v.is_trivial {
            attrs.push("shape=doublecircle".into());
        }
        if v.parity == Some(Parity::Even) {
            attrs.push("style=filled".into());
        }
        let _ = writeln!(s, "  v{i} [{}];", attrs.join(", "));
    }
    for ((u, v, c), m) in g.edges() {
        let style = match (g.dim_w(), c) {
            (4, 1) => "color=red, style=solid",
            (4, _) => "color=blue, style=dashed",
            _ => "color=black, style=solid",
        };
        for _ in 0..m {
            let _ = writeln!(s, "  v{u} -- v{v} [{style}];");
        }
    }
    s.push_str("}\n");
    s
}

pub fn emit_dot(g: &ColoredMcKayGraph, out: &mut impl Write) -> Result<usize> {
    write_all(out, &dot(g))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GensDoc {
    pairs: Vec<Vec<f64>>,
}

/// Parses a generator file `{"pairs": [[a1,b1,c1,d1,a2,b2,c2,d2], ...]}`.
/// Pairs are renormalized; a norm deviating from 1 by more than `1e-6` is
/// rejected.
pub fn read_generators(text: &str) -> Result<Vec<UnitQuaternionPair>> {
    let doc: GensDoc = serde_json::from_str(text)?;
    if doc.pairs.is_empty() {
        return Err(Error::Input("generator file lists no pairs".into()));
    }
    doc.pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let c: [f64; 8] = p
                .as_slice()
                .try_into()
                .map_err(|_| Error::Input(format!("pair {i} has {} coordinates, expected 8", p.len())))?;
            let q1 = Quaternion::new(c[0], c[1], c[2], c[3]);
            let q2 = Quaternion::new(c[4], c[5], c[6], c[7]);
            for q in [q1, q2] {
                let dev = (q.norm_sqr().sqrt() - 1.0).abs();
                if dev > 1e-6 {
                    return Err(Error::Input(format!("pair {i} deviates from unit norm by {dev:e}")));
                }
            }
            Ok(UnitQuaternionPair::new(q1, q2).normalized())
        })
        .collect()
}

pub fn generators_json(pairs: &[UnitQuaternionPair]) -> String {
    let mut s = String::from("{\n  \"pairs\": [");
    for (i, p) in pairs.iter().enumerate() {
        let coords: Vec<String> = p.coords().iter().map(|&x| float(x)).collect();
        let sep = if i == 0 { "\n" } else { ",\n" };
        let _ = write!(s, "{sep}    [{}]", coords.join(", "));
    }
    s.push_str("\n  ]\n}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::group::{binary_tetrahedral, conjugacy_classes, cyclic, diagonal, FiniteSubgroup};
    use crate::mckay::mckay_graph;

    fn graph_of(g: &FiniteSubgroup) -> ColoredMcKayGraph {
        let part = conjugacy_classes(g);
        let t = character_table(g, &part, 0).unwrap();
        mckay_graph(g, &part, &t, 1e-6).unwrap()
    }

    #[test]
    fn c2_graph_json() {
        let s = graph_json(&graph_of(&cyclic(2).unwrap()));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
        let edges = v["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0]["mult"], 2);
        assert!(s.ends_with("}\n"));
    }

    #[test]
    fn tetrahedral_round_trip() {
        let g = graph_of(&binary_tetrahedral().unwrap());
        let s = graph_json(&g);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 7);
        assert_eq!(v["edges"].as_array().unwrap().len(), 6);
        let back = read_graph_json(&s).unwrap();
        assert_eq!(back.vertices().iter().map(|v| v.dim).collect::<Vec<_>>(), g.dims());
        assert_eq!(graph_json(&back), s);
    }

    #[test]
    fn empty_graph() {
        let s = graph_json(&ColoredMcKayGraph::new(Vec::new(), 2));
        assert!(s.contains("\"vertices\": []"));
        assert!(s.contains("\"edges\": []"));
        assert!(read_graph_json(&s).unwrap().is_empty());
    }

    #[test]
    fn dot_styles() {
        let d = dot(&graph_of(&diagonal(&binary_tetrahedral().unwrap()).unwrap()));
        let red = d.lines().filter(|l| l.contains("color=red, style=solid")).count();
        let blue = d.lines().filter(|l| l.contains("color=blue, style=dashed")).count();
        assert_eq!((red, blue), (6, 6));
        assert_eq!(d.matches("doublecircle").count(), 1);

        let c4 = dot(&graph_of(&cyclic(4).unwrap()));
        assert_eq!(c4.lines().filter(|l| l.contains(" -- ")).count(), 4);
        assert!(c4.contains("color=black"));
    }

    #[test]
    fn group_floats_have_seventeen_digits() {
        let s = group_json(&cyclic(3).unwrap());
        assert!(s.contains("\"order\": 3"));
        assert!(s.contains("-4.9999999999999978e-1") || s.contains("-5.0000000000000000e-1"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn generator_files() {
        let pairs = [UnitQuaternionPair::new(Quaternion::I, Quaternion::ONE)];
        let back = read_generators(&generators_json(&pairs)).unwrap();
        assert_eq!(back, pairs);
        assert!(read_generators(r#"{"pairs": [[1,0,0,0,2,0,0,0]]}"#).is_err());
        assert!(read_generators(r#"{"pairs": [[1,0,0]]}"#).is_err());
        assert!(read_generators(r#"{"pairs": []}"#).is_err());
    }
}
