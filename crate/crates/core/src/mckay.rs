//! Edge-coloured McKay diagrams.

use std::collections::BTreeMap;

use faer::Mat;

use crate::chartab::{natural_character, CharacterTable, NaturalFactor, Parity, C64};
use crate::diagram::Multigraph;
use crate::error::{snap, Error, Result};
use crate::group::{Ambient, ConjugacyPartition, FiniteSubgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McKayVertex {
    /// Row of the character table this vertex came from.
    pub irrep_id: usize,
    pub dim: u32,
    pub parity: Option<Parity>,
    pub is_trivial: bool,
}

/// Vertices are irreducibles; `edges[(i, j, k)]` (with `i ≤ j`) is the
/// multiplicity of `V_i` in `W_k ⊗ V_j`. SU(2) diagrams use colour 1 only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredMcKayGraph {
    vertices: Vec<McKayVertex>,
    edges: BTreeMap<(usize, usize, u8), u32>,
    dim_w: u32,
}

impl ColoredMcKayGraph {
    pub fn new(vertices: Vec<McKayVertex>, dim_w: u32) -> Self {
        ColoredMcKayGraph { vertices, edges: BTreeMap::new(), dim_w }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim_w(&self) -> u32 {
        self.dim_w
    }

    pub fn colors(&self) -> &'static [u8] {
        if self.dim_w == 4 {
            &[1, 2]
        } else {
            &[1]
        }
    }

    pub fn vertices(&self) -> &[McKayVertex] {
        &self.vertices
    }

    pub fn dims(&self) -> Vec<u32> {
        self.vertices.iter().map(|v| v.dim).collect()
    }

    /// Sets the multiplicity of an unordered pair; zero removes the edge.
    pub fn set_edge(&mut self, i: usize, j: usize, color: u8, mult: u32) {
        let key = (i.min(j), i.max(j), color);
        if mult == 0 {
            self.edges.remove(&key);
        } else {
            self.edges.insert(key, mult);
        }
    }

    pub fn multiplicity(&self, i: usize, j: usize, color: u8) -> u32 {
        self.edges.get(&(i.min(j), i.max(j), color)).copied().unwrap_or(0)
    }

    /// `n_ij = n_ij¹ + n_ij²`.
    pub fn total_multiplicity(&self, i: usize, j: usize) -> u32 {
        self.colors().iter().map(|&k| self.multiplicity(i, j, k)).sum()
    }

    /// Nonzero edges `((u, v, color), mult)` sorted by `(u, v, color)`, `u ≤ v`.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize, u8), u32)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    /// Edges of one colour as a plain multigraph.
    pub fn layer(&self, color: u8) -> Multigraph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|((_, _, k), _)| *k == color)
            .map(|(&(u, v, _), &m)| (u, v, m))
            .collect();
        Multigraph::from_edges(self.len(), &edges)
    }

    /// All colours summed.
    pub fn total_graph(&self) -> Multigraph {
        let edges: Vec<_> = self.edges.iter().map(|(&(u, v, _), &m)| (u, v, m)).collect();
        Multigraph::from_edges(self.len(), &edges)
    }

    pub fn trivial_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.vertices[v].is_trivial).collect()
    }

    /// Largest deviation of `Σ_j n_ij dim_j` from `dim_w · dim_i`, as integers.
    pub fn dimension_defect(&self) -> i64 {
        (0..self.len())
            .map(|i| {
                let s: i64 = (0..self.len())
                    .map(|j| self.total_multiplicity(i, j) as i64 * self.vertices[j].dim as i64)
                    .sum();
                (s - self.dim_w as i64 * self.vertices[i].dim as i64).abs()
            })
            .max()
            .unwrap_or(0)
    }
}

/// Multiplicity matrix `⟨χ_i, χ_W χ_j⟩` for a real class function `χ_W`.
fn multiplicities(
    table: &CharacterTable,
    w: &[C64],
    order: usize,
    tol: f64,
) -> Result<Vec<Vec<u32>>> {
    let r = table.len();
    let x = Mat::<C64>::from_fn(r, r, |i, c| table.value(i, c));
    let weights = Mat::<C64>::from_fn(r, r, |c, d| {
        if c == d {
            w[c] * table.class_sizes()[c] as f64 / order as f64
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let n = &x * &weights * x.adjoint();
    let mut out = vec![vec![0u32; r]; r];
    for i in 0..r {
        for j in 0..r {
            let z = n[(i, j)];
            if z.im.abs() >= tol {
                return Err(Error::Snap { what: format!("n[{i}][{j}] imaginary part"), value: z.im, tol });
            }
            let m = snap(z.re, tol, || format!("multiplicity n[{i}][{j}]"))?;
            if m < 0 {
                return Err(Error::Invariant(format!("negative multiplicity n[{i}][{j}] = {m}")));
            }
            out[i][j] = m as u32;
        }
    }
    for i in 0..r {
        for j in 0..i {
            if out[i][j] != out[j][i] {
                return Err(Error::Invariant(format!(
                    "asymmetric multiplicities n[{i}][{j}] = {} but n[{j}][{i}] = {}",
                    out[i][j], out[j][i]
                )));
            }
        }
    }
    Ok(out)
}

/// McKay diagram of the natural representation, one colour per SU(2) factor.
pub fn mckay_graph(
    g: &FiniteSubgroup,
    part: &ConjugacyPartition,
    table: &CharacterTable,
    tol: f64,
) -> Result<ColoredMcKayGraph> {
    let parities = table.parities();
    let vertices = (0..table.len())
        .map(|i| McKayVertex {
            irrep_id: i,
            dim: table.degrees()[i],
            parity: parities.map(|p| p[i]),
            is_trivial: i == table.trivial_row(),
        })
        .collect();
    let factors: &[(u8, NaturalFactor)] = match g.ambient() {
        Ambient::Su2 => &[(1, NaturalFactor::First)],
        Ambient::Su2xSu2 => &[(1, NaturalFactor::First), (2, NaturalFactor::Second)],
    };
    let dim_w = 2 * factors.len() as u32;
    let mut graph = ColoredMcKayGraph::new(vertices, dim_w);
    for &(color, factor) in factors {
        let w = natural_character(g, part, factor)?;
        let n = multiplicities(table, &w.values, g.order(), tol)?;
        for (i, row) in n.iter().enumerate() {
            for (j, &m) in row.iter().enumerate().skip(i) {
                graph.set_edge(i, j, color, m);
            }
        }
    }
    Ok(graph)
}

/// Remove the trivial representation.
pub fn reduced(graph: &ColoredMcKayGraph) -> Result<ColoredMcKayGraph> {
    let trivial = graph.trivial_vertices();
    let [t] = trivial.as_slice() else {
        return Err(Error::Precondition(format!(
            "expected exactly one trivial vertex, found {}",
            trivial.len()
        )));
    };
    let keep: Vec<usize> = (0..graph.len()).filter(|v| v != t).collect();
    let vertices = keep.iter().map(|&v| graph.vertices[v].clone()).collect();
    let mut out = ColoredMcKayGraph::new(vertices, graph.dim_w);
    for (a, &u) in keep.iter().enumerate() {
        for (b, &v) in keep.iter().enumerate().skip(a) {
            for &k in graph.colors() {
                out.set_edge(a, b, k, graph.multiplicity(u, v, k));
            }
        }
    }
    Ok(out)
}

/// `Γ_k`: all vertices, colour-`k` edges only.
pub fn color_subgraph(graph: &ColoredMcKayGraph, color: u8) -> Result<ColoredMcKayGraph> {
    if graph.dim_w != 4 {
        return Err(Error::Precondition("colour subgraphs need an SU(2)×SU(2) diagram".into()));
    }
    if color != 1 && color != 2 {
        return Err(Error::OutOfRange(format!("colour {color}")));
    }
    let mut out = ColoredMcKayGraph::new(graph.vertices.clone(), graph.dim_w);
    out.edges = graph.edges.iter().filter(|((_, _, k), _)| *k == color).map(|(&k, &m)| (k, m)).collect();
    Ok(out)
}

/// Vertices split by parity `(even, odd)`; every edge must cross.
pub fn parity_bipartition(graph: &ColoredMcKayGraph) -> Result<(Vec<usize>, Vec<usize>)> {
    let parity = |v: usize| {
        graph.vertices[v]
            .parity
            .ok_or_else(|| Error::Precondition(format!("vertex {v} has no parity")))
    };
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for v in 0..graph.len() {
        match parity(v)? {
            Parity::Even => even.push(v),
            Parity::Odd => odd.push(v),
        }
    }
    for ((u, v, _), _) in graph.edges() {
        if parity(u)? == parity(v)? {
            return Err(Error::Invariant(format!("edge {u}–{v} joins vertices of equal parity")));
        }
    }
    Ok((even, odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::diagram::{classify, DiagramType};
    use crate::group::{binary_icosahedral, binary_tetrahedral, conjugacy_classes, cyclic, diagonal, product};

    fn graph_of(g: &FiniteSubgroup) -> ColoredMcKayGraph {
        let part = conjugacy_classes(g);
        let t = character_table(g, &part, 0).unwrap();
        mckay_graph(g, &part, &t, 1e-6).unwrap()
    }

    #[test]
    fn cyclic_four_is_a_square() {
        let gr = graph_of(&cyclic(4).unwrap());
        assert_eq!(gr.len(), 4);
        assert!(gr.edges().all(|(_, m)| m == 1));
        assert_eq!(gr.edges().count(), 4);
        assert_eq!(classify(&gr.total_graph()).unwrap(), DiagramType::ExtA(3));
    }

    #[test]
    fn cyclic_two_is_a_double_edge() {
        let gr = graph_of(&cyclic(2).unwrap());
        assert_eq!(gr.multiplicity(0, 1, 1), 2);
        assert_eq!(gr.edges().count(), 1);
        let (even, odd) = parity_bipartition(&gr).unwrap();
        assert_eq!((even.len(), odd.len()), (1, 1));
    }

    #[test]
    fn trivial_group_has_a_loop() {
        let gr = graph_of(&cyclic(1).unwrap());
        assert_eq!(gr.multiplicity(0, 0, 1), 2);
        assert_eq!(classify(&gr.total_graph()).unwrap(), DiagramType::Other);
        assert!(reduced(&gr).unwrap().is_empty());
    }

    #[test]
    fn tetrahedral_is_e6_tilde() {
        let gr = graph_of(&binary_tetrahedral().unwrap());
        assert_eq!(classify(&gr.total_graph()).unwrap(), DiagramType::ExtE(6));
        assert_eq!(gr.dimension_defect(), 0);
        let center = (0..7).find(|&v| gr.vertices()[v].dim == 3).unwrap();
        assert_eq!(gr.total_graph().degree(center), 3);
    }

    #[test]
    fn icosahedral_reduced_is_e8_and_parts_match() {
        let gr = graph_of(&binary_icosahedral().unwrap());
        let red = reduced(&gr).unwrap();
        assert_eq!(red.len(), 8);
        assert_eq!(classify(&red.total_graph()).unwrap(), DiagramType::E(8));
        let (even, odd) = parity_bipartition(&gr).unwrap();
        let dims = |vs: &[usize]| {
            let mut d: Vec<u32> = vs.iter().map(|&v| gr.vertices()[v].dim).collect();
            d.sort();
            d
        };
        assert_eq!(dims(&even), vec![1, 3, 3, 4, 5]);
        assert_eq!(dims(&odd), vec![2, 2, 4, 6]);
    }

    #[test]
    fn colour_layers() {
        let c2 = cyclic(2).unwrap();
        let gr = graph_of(&product(&c2, &c2).unwrap());
        let g1 = color_subgraph(&gr, 1).unwrap();
        let comps = g1.total_graph().components();
        assert_eq!(comps.len(), 2);
        assert!(g1.edges().all(|(_, m)| m == 2));
        assert!(color_subgraph(&graph_of(&c2), 1).is_err());

        let t = binary_tetrahedral().unwrap();
        let gd = graph_of(&diagonal(&t).unwrap());
        let l1 = color_subgraph(&gd, 1).unwrap().total_graph();
        assert_eq!(classify(&l1).unwrap(), DiagramType::ExtE(6));
    }

    #[test]
    fn parity_needs_minus_one() {
        let gr = graph_of(&cyclic(3).unwrap());
        assert!(matches!(parity_bipartition(&gr), Err(Error::Precondition(_))));
    }
}
