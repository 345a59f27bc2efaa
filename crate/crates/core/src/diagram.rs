//! Simply-laced Dynkin and Euclidean (extended Dynkin) diagrams.

use std::collections::VecDeque;
use std::fmt;

use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use crate::error::{snap, Error, Result};
use crate::mckay::ColoredMcKayGraph;

/// Tolerance for treating an eigenvalue as zero when deciding definiteness.
pub const DEFINITENESS_TOL: f64 = 1e-9;
/// Required eigen-residual of a Perron vector.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-8;
const POWER_ITERATION_LIMIT: usize = 100_000;

/// Undirected multigraph on vertices `0..n`, stored as a dense symmetric
/// multiplicity matrix. `mult(i, i)` is the number of loops at `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    adj: Vec<u32>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, adj: vec![0; n * n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Self {
        let mut g = Multigraph::new(n);
        for &(u, v, m) in edges {
            g.add_edge(u, v, m);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mult(&self, i: usize, j: usize) -> u32 {
        self.adj[i * self.n + j]
    }

    pub fn add_edge(&mut self, u: usize, v: usize, m: u32) {
        self.adj[u * self.n + v] += m;
        if u != v {
            self.adj[v * self.n + u] += m;
        }
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|i| self.mult(i, i) > 0)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| j != i && self.mult(i, j) > 0)
    }

    /// Number of distinct neighbours.
    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Sum of edge multiplicities at `i`, loops counted once.
    pub fn weighted_degree(&self, i: usize) -> u32 {
        (0..self.n).map(|j| self.mult(i, j)).sum()
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
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
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

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        let k = vertices.len();
        let mut g = Multigraph::new(k);
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                g.adj[a * k + b] = self.mult(u, v);
            }
        }
        g
    }

    pub fn adjacency(&self) -> Mat<f64> {
        Mat::from_fn(self.n, self.n, |i, j| self.mult(i, j) as f64)
    }

    /// `A x` using the sparse structure.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let row = &self.adj[i * self.n..(i + 1) * self.n];
                row.iter().zip(x).filter(|(m, _)| **m > 0).map(|(&m, &v)| m as f64 * v).sum()
            })
            .collect()
    }
}

/// `c_ij = 2δ_ij − n_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    /// Exact integer product `C x`.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum()).collect()
    }

    fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) as f64 * x[j]).sum()).collect()
    }

    fn to_matrix(&self) -> Mat<f64> {
        Mat::from_fn(self.n, self.n, |i, j| self.get(i, j) as f64)
    }
}

pub fn cartan(g: &Multigraph) -> Result<CartanMatrix> {
    if g.has_loops() {
        return Err(Error::Precondition("Cartan matrix of a graph with loops".into()));
    }
    let n = g.len();
    let entries = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            if i == j {
                2
            } else {
                -(g.mult(i, j) as i64)
            }
        })
        .collect();
    Ok(CartanMatrix { n, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

/// Definiteness from the sign of the smallest eigenvalue.
pub fn definiteness_by_eigenvalues(c: &CartanMatrix) -> Definiteness {
    if c.is_empty() {
        return Definiteness::PositiveDefinite;
    }
    let min = symmetric_eigenvalues(&c.to_matrix()).first().copied().unwrap_or(0.0);
    if min > DEFINITENESS_TOL {
        Definiteness::PositiveDefinite
    } else if min >= -DEFINITENESS_TOL {
        Definiteness::PositiveSemidefinite
    } else {
        Definiteness::Indefinite
    }
}

/// Definiteness from a positive test vector: the Perron vector `x > 0` of the
/// adjacency matrix satisfies `Cx > 0` (definite), `Cx = 0` (semidefinite) or
/// `Cx < 0` (indefinite) entrywise.
pub fn definiteness_by_vector(c: &CartanMatrix) -> Result<Definiteness> {
    let n = c.len();
    let mut g = Multigraph::new(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                g.adj[i * n + j] = (-c.get(i, j)) as u32;
            }
        }
    }
    let x = perron_vector(&g)?.vector;
    let cx = c.apply_f64(&x);
    let tol = EIGEN_RESIDUAL_TOL * x.iter().fold(1.0, |m: f64, v| m.max(*v));
    if cx.iter().all(|&v| v > tol) {
        Ok(Definiteness::PositiveDefinite)
    } else if cx.iter().all(|&v| v.abs() <= tol) {
        Ok(Definiteness::PositiveSemidefinite)
    } else if cx.iter().all(|&v| v < -tol) {
        Ok(Definiteness::Indefinite)
    } else {
        Err(Error::Invariant(format!("Cx has mixed signs for a Perron vector: {cx:?}")))
    }
}

/// Definiteness of the Cartan matrix of a connected diagram, computed two
/// independent ways that must agree.
pub fn definiteness(c: &CartanMatrix) -> Result<Definiteness> {
    let by_eig = definiteness_by_eigenvalues(c);
    let by_vec = definiteness_by_vector(c)?;
    if by_eig != by_vec {
        return Err(Error::Invariant(format!(
            "eigenvalue test says {by_eig:?} but vector test says {by_vec:?}"
        )));
    }
    Ok(by_eig)
}

/// Catalog of connected simply-laced diagrams. `ExtA(1)` is the double edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagramType {
    A(u32),
    D(u32),
    E(u32),
    ExtA(u32),
    ExtD(u32),
    ExtE(u32),
    Other,
}

impl DiagramType {
    pub fn is_dynkin(self) -> bool {
        matches!(self, DiagramType::A(_) | DiagramType::D(_) | DiagramType::E(_))
    }

    pub fn is_extended(self) -> bool {
        matches!(self, DiagramType::ExtA(_) | DiagramType::ExtD(_) | DiagramType::ExtE(_))
    }

    /// The Dynkin diagram obtained by deleting the extending node.
    pub fn finite_part(self) -> Option<DiagramType> {
        match self {
            DiagramType::ExtA(n) => Some(DiagramType::A(n)),
            DiagramType::ExtD(n) => Some(DiagramType::D(n)),
            DiagramType::ExtE(n) => Some(DiagramType::E(n)),
            _ => None,
        }
    }

    pub fn vertex_count(self) -> Option<usize> {
        match self {
            DiagramType::A(n) | DiagramType::D(n) | DiagramType::E(n) => Some(n as usize),
            DiagramType::ExtA(n) | DiagramType::ExtD(n) | DiagramType::ExtE(n) => {
                Some(n as usize + 1)
            }
            DiagramType::Other => None,
        }
    }

    fn is_valid(self) -> bool {
        match self {
            DiagramType::A(n) | DiagramType::ExtA(n) => n >= 1,
            DiagramType::D(n) | DiagramType::ExtD(n) => n >= 4,
            DiagramType::E(n) | DiagramType::ExtE(n) => (6..=8).contains(&n),
            DiagramType::Other => true,
        }
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramType::A(n) => write!(f, "A({n})"),
            DiagramType::D(n) => write!(f, "D({n})"),
            DiagramType::E(n) => write!(f, "E({n})"),
            DiagramType::ExtA(n) => write!(f, "ExtA({n})"),
            DiagramType::ExtD(n) => write!(f, "ExtD({n})"),
            DiagramType::ExtE(n) => write!(f, "ExtE({n})"),
            DiagramType::Other => write!(f, "Other"),
        }
    }
}

/// Structural type of a simple tree, or `Other`.
fn classify_tree(g: &Multigraph) -> DiagramType {
    let n = g.len();
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    let arm_lengths = |center: usize| -> Vec<usize> {
        let mut lens: Vec<usize> = g
            .neighbors(center)
            .map(|start| {
                let (mut prev, mut cur, mut len) = (center, start, 1);
                while g.degree(cur) == 2 {
                    let next = g.neighbors(cur).find(|&w| w != prev).unwrap();
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                len
            })
            .collect();
        lens.sort_unstable();
        lens
    };
    match branch.as_slice() {
        [] => DiagramType::A(n as u32),
        [c] if g.degree(*c) == 3 => match arm_lengths(*c).as_slice() {
            [1, 1, k] => DiagramType::D(*k as u32 + 3),
            [1, 2, 2] => DiagramType::E(6),
            [1, 2, 3] => DiagramType::E(7),
            [1, 2, 4] => DiagramType::E(8),
            [2, 2, 2] => DiagramType::ExtE(6),
            [1, 3, 3] => DiagramType::ExtE(7),
            [1, 2, 5] => DiagramType::ExtE(8),
            _ => DiagramType::Other,
        },
        [c] if g.degree(*c) == 4 && n == 5 => DiagramType::ExtD(4),
        [b1, b2] if g.degree(*b1) == 3 && g.degree(*b2) == 3 => {
            let leaves = |b: usize| g.neighbors(b).filter(|&w| g.degree(w) == 1).count();
            if leaves(*b1) == 2 && leaves(*b2) == 2 {
                DiagramType::ExtD(n as u32 - 1)
            } else {
                DiagramType::Other
            }
        }
        _ => DiagramType::Other,
    }
}

/// Recognize a connected multigraph from its shape alone.
pub fn classify_structure(g: &Multigraph) -> DiagramType {
    let n = g.len();
    if n == 0 || g.has_loops() {
        return DiagramType::Other;
    }
    if n == 1 {
        return DiagramType::A(1);
    }
    let mut max_mult = 0;
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            let m = g.mult(i, j);
            max_mult = max_mult.max(m);
            if m > 0 {
                edges += 1;
            }
        }
    }
    if max_mult >= 3 {
        return DiagramType::Other;
    }
    if max_mult == 2 {
        return if n == 2 { DiagramType::ExtA(1) } else { DiagramType::Other };
    }
    if edges == n && (0..n).all(|v| g.degree(v) == 2) {
        DiagramType::ExtA(n as u32 - 1)
    } else if edges + 1 == n {
        classify_tree(g)
    } else {
        DiagramType::Other
    }
}

/// Catalog type of a connected diagram. Graphs with loops are `Other`.
///
/// The structural match is cross-checked against [`definiteness`]: Dynkin types
/// must be positive definite, Euclidean types positive semidefinite, and
/// everything else indefinite.
pub fn classify(g: &Multigraph) -> Result<DiagramType> {
    if !g.is_connected() {
        return Err(Error::Precondition("classify requires a connected graph".into()));
    }
    if g.is_empty() || g.has_loops() {
        return Ok(DiagramType::Other);
    }
    let t = classify_structure(g);
    let d = definiteness(&cartan(g)?)?;
    let expected = if t.is_dynkin() {
        Definiteness::PositiveDefinite
    } else if t.is_extended() {
        Definiteness::PositiveSemidefinite
    } else {
        Definiteness::Indefinite
    };
    if d != expected {
        return Err(Error::Invariant(format!("shape {t} but Cartan matrix is {d:?}")));
    }
    Ok(t)
}

/// Standard drawing of a catalog diagram; vertex order matches
/// [`canonical_null_vector`].
pub fn catalog_graph(t: DiagramType) -> Result<Multigraph> {
    if !t.is_valid() || t == DiagramType::Other {
        return Err(Error::OutOfRange(format!("no catalog diagram {t}")));
    }
    let chain = |g: &mut Multigraph, len: usize| {
        for v in 1..len {
            g.add_edge(v - 1, v, 1);
        }
    };
    let n = t.vertex_count().unwrap();
    let mut g = Multigraph::new(n);
    match t {
        DiagramType::A(_) => chain(&mut g, n),
        DiagramType::D(_) => {
            g.add_edge(0, 2, 1);
            g.add_edge(1, 2, 1);
            for v in 3..n {
                g.add_edge(v - 1, v, 1);
            }
        }
        DiagramType::ExtD(_) => {
            g.add_edge(0, 2, 1);
            g.add_edge(1, 2, 1);
            for v in 3..n - 2 {
                g.add_edge(v - 1, v, 1);
            }
            g.add_edge(n - 3, n - 2, 1);
            g.add_edge(n - 3, n - 1, 1);
        }
        DiagramType::E(_) => {
            chain(&mut g, n - 1);
            g.add_edge(2, n - 1, 1);
        }
        DiagramType::ExtA(1) => g.add_edge(0, 1, 2),
        DiagramType::ExtA(_) => {
            chain(&mut g, n);
            g.add_edge(n - 1, 0, 1);
        }
        DiagramType::ExtE(6) => {
            chain(&mut g, 5);
            g.add_edge(2, 5, 1);
            g.add_edge(5, 6, 1);
        }
        DiagramType::ExtE(7) => {
            chain(&mut g, 7);
            g.add_edge(3, 7, 1);
        }
        DiagramType::ExtE(8) => {
            chain(&mut g, 8);
            g.add_edge(2, 8, 1);
        }
        _ => unreachable!(),
    }
    Ok(g)
}

/// The positive integer null vector (minimum entry 1) of an extended diagram's
/// Cartan matrix, in [`catalog_graph`] vertex order.
pub fn canonical_null_vector(t: DiagramType) -> Result<Vec<u32>> {
    if !t.is_extended() || !t.is_valid() {
        return Err(Error::Precondition(format!("{t} is not an extended diagram")));
    }
    Ok(match t {
        DiagramType::ExtA(n) => vec![1; n as usize + 1],
        DiagramType::ExtD(n) => {
            let mut v = vec![1, 1];
            v.extend(std::iter::repeat_n(2, n as usize - 3));
            v.extend([1, 1]);
            v
        }
        DiagramType::ExtE(6) => vec![1, 2, 3, 2, 1, 2, 1],
        DiagramType::ExtE(7) => vec![1, 2, 3, 4, 3, 2, 1, 2],
        DiagramType::ExtE(8) => vec![2, 4, 6, 5, 4, 3, 2, 1, 3],
        _ => unreachable!(),
    })
}

/// The canonical null vector transported onto `g`'s own vertex order.
pub fn null_vector_on(g: &Multigraph, t: DiagramType) -> Result<Vec<u32>> {
    let labels = canonical_null_vector(t)?;
    let model = catalog_graph(t)?;
    let iso = isomorphism(&model, g)
        .ok_or_else(|| Error::Precondition(format!("graph is not of type {t}")))?;
    let mut out = vec![0; g.len()];
    for (v, &w) in iso.iter().enumerate() {
        out[w] = labels[v];
    }
    Ok(out)
}

/// Dominant eigenpair of a connected multigraph's adjacency matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub eigenvalue: f64,
    /// Strictly positive, scaled to minimum entry 1.
    pub vector: Vec<f64>,
}

/// Perron eigenpair by power iteration on `A + I` (the shift removes the
/// `−λ` eigenvalue of bipartite graphs from the top of the spectrum).
pub fn perron_vector(g: &Multigraph) -> Result<EigenResult> {
    let n = g.len();
    if n == 0 || !g.is_connected() {
        return Err(Error::Precondition("Perron vector of a disconnected graph".into()));
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..POWER_ITERATION_LIMIT {
        let ax = g.apply(&x);
        let lambda: f64 = ax.iter().zip(&x).map(|(a, b)| a * b).sum();
        let residual: f64 =
            ax.iter().zip(&x).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
        if residual < 1e-13 * lambda.max(1.0) {
            let min = x.iter().copied().fold(f64::INFINITY, f64::min);
            if min <= 0.0 {
                return Err(Error::Eigen("Perron vector is not positive".into()));
            }
            let vector: Vec<f64> = x.iter().map(|v| v / min).collect();
            let av = g.apply(&vector);
            let res: f64 =
                av.iter().zip(&vector).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
            if res >= EIGEN_RESIDUAL_TOL {
                return Err(Error::Eigen(format!("Perron residual {res:e}")));
            }
            return Ok(EigenResult { eigenvalue: lambda, vector });
        }
        let mut y: Vec<f64> = ax.iter().zip(&x).map(|(a, b)| a + b).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        y.iter_mut().for_each(|v| *v /= norm);
        x = y;
    }
    Err(Error::Eigen(format!("power iteration did not converge in {POWER_ITERATION_LIMIT} steps")))
}

/// All adjacency eigenvalues, ascending.
pub fn spectrum(g: &Multigraph) -> Vec<f64> {
    symmetric_eigenvalues(&g.adjacency())
}

/// Eigenvalues of a real symmetric matrix, ascending.
fn symmetric_eigenvalues(m: &Mat<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut vals = m
        .self_adjoint_eigenvalues(Side::Lower)
        .expect("symmetric eigenvalue iteration converges");
    vals.sort_by(f64::total_cmp);
    vals
}

/// Dimension of the adjacency eigenspace at `lambda`: the number of singular
/// values of `A − λI` below `tol`.
pub fn eigenspace_dim(g: &Multigraph, lambda: f64, tol: f64) -> usize {
    // A is symmetric, so the singular values of A − λI are |μ − λ|.
    spectrum(g).iter().filter(|&&mu| (mu - lambda).abs() < tol).count()
}

/// Group order read off a McKay diagram: the positive eigenvector at `dim_w`,
/// scaled to minimum entry 1 and snapped to integers, has squared length |G|.
pub fn order_from_diagram(g: &Multigraph, dim_w: u32, tol: f64) -> Result<u64> {
    let k = eigenspace_dim(g, dim_w as f64, tol);
    if k != 1 {
        return Err(Error::Precondition(format!("eigenspace at {dim_w} has dimension {k}")));
    }
    let p = perron_vector(g)?;
    if (p.eigenvalue - dim_w as f64).abs() >= tol {
        return Err(Error::Eigen(format!(
            "positive eigenvector belongs to {} instead of {dim_w}",
            p.eigenvalue
        )));
    }
    let mut total = 0u64;
    for (i, &x) in p.vector.iter().enumerate() {
        let v = snap(x, tol, || format!("eigenvector entry {i}"))?;
        total += (v * v) as u64;
    }
    Ok(total)
}

/// Proper 2-colouring (`false`/`true` per vertex), or `None` if an odd cycle or a
/// loop exists.
pub fn bipartition(g: &Multigraph) -> Option<Vec<bool>> {
    if g.has_loops() {
        return None;
    }
    let mut side: Vec<Option<bool>> = vec![None; g.len()];
    for s in 0..g.len() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let sx = side[x].unwrap();
            for y in g.neighbors(x) {
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        queue.push_back(y);
                    }
                    Some(sy) if sy == sx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(Option::unwrap).collect())
}

/// An isomorphism `a → b` preserving all multiplicities (loops included), by
/// backtracking with degree pruning. Returns `map[v_a] = v_b`.
pub fn isomorphism(a: &Multigraph, b: &Multigraph) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let signature = |g: &Multigraph, v: usize| (g.degree(v), g.weighted_degree(v), g.mult(v, v));
    let mut sa: Vec<_> = (0..n).map(|v| signature(a, v)).collect();
    let mut sb: Vec<_> = (0..n).map(|v| signature(b, v)).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    // visit a's vertices so that each one (after a component's first) has an
    // already-placed neighbour
    let mut order = Vec::with_capacity(n);
    let mut anchor = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for comp in a.components() {
        let root = *comp.iter().max_by_key(|&&v| (a.degree(v), std::cmp::Reverse(v))).unwrap();
        seen[root] = true;
        order.push(root);
        anchor.push(None);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for y in a.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                    anchor.push(Some(x));
                    queue.push_back(y);
                }
            }
        }
    }

    fn extend(
        a: &Multigraph,
        b: &Multigraph,
        order: &[usize],
        anchor: &[Option<usize>],
        pos: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let candidates: Vec<usize> = match anchor[pos] {
            Some(u) => b.neighbors(map[u]).collect(),
            None => (0..b.len()).collect(),
        };
        for w in candidates {
            if used[w]
                || a.degree(v) != b.degree(w)
                || a.weighted_degree(v) != b.weighted_degree(w)
                || a.mult(v, v) != b.mult(w, w)
            {
                continue;
            }
            let consistent = order[..pos].iter().all(|&u| a.mult(v, u) == b.mult(w, map[u]));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(a, b, order, anchor, pos + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &order, &anchor, 0, &mut map, &mut used).then_some(map)
}

/// Witness that a coloured McKay diagram is a product `D₁ × D₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductWitness {
    pub first: DiagramType,
    pub second: DiagramType,
    /// `bijection[v] = (a, b)`: vertex `v` is `(a, b) ∈ V(D₁) × V(D₂)`.
    pub bijection: Vec<(usize, usize)>,
    pub first_graph: Multigraph,
    pub second_graph: Multigraph,
}

/// Decide whether colour-1 edges are `D₁ ⊗ δ` and colour-2 edges `δ ⊗ D₂` for
/// two Euclidean diagrams `D₁`, `D₂`.
///
/// The `Γ₂` components index `V(D₁)` and the `Γ₁` components index `V(D₂)`,
/// both in order of smallest vertex.
pub fn detect_product(graph: &ColoredMcKayGraph) -> Option<ProductWitness> {
    if graph.dim_w() != 4 {
        return None;
    }
    let n = graph.len();
    let l1 = graph.layer(1);
    let l2 = graph.layer(2);
    let comps1 = l1.components();
    let comps2 = l2.components();
    if comps1.len() * comps2.len() != n {
        return None;
    }
    let mut comp1_of = vec![0; n];
    let mut comp2_of = vec![0; n];
    for (b, comp) in comps1.iter().enumerate() {
        comp.iter().for_each(|&v| comp1_of[v] = b);
    }
    for (a, comp) in comps2.iter().enumerate() {
        comp.iter().for_each(|&v| comp2_of[v] = a);
    }
    // transversal: every (Γ₂, Γ₁) component pair meets in exactly one vertex
    let mut cell = vec![usize::MAX; n];
    for v in 0..n {
        let k = comp2_of[v] * comps1.len() + comp1_of[v];
        if cell[k] != usize::MAX {
            return None;
        }
        cell[k] = v;
    }
    let at = |a: usize, b: usize| cell[a * comps1.len() + b];

    let first_model = l1.induced(&comps1[0]);
    if comps1.iter().any(|c| isomorphism(&first_model, &l1.induced(c)).is_none()) {
        return None;
    }
    let second_model = l2.induced(&comps2[0]);
    if comps2.iter().any(|c| isomorphism(&second_model, &l2.induced(c)).is_none()) {
        return None;
    }

    let (na, nb) = (comps2.len(), comps1.len());
    let mut d1 = Multigraph::new(na);
    for a in 0..na {
        for a2 in 0..na {
            d1.adj[a * na + a2] = l1.mult(at(a, 0), at(a2, 0));
        }
    }
    let mut d2 = Multigraph::new(nb);
    for b in 0..nb {
        for b2 in 0..nb {
            d2.adj[b * nb + b2] = l2.mult(at(0, b), at(0, b2));
        }
    }
    for a in 0..na {
        for a2 in 0..na {
            if (0..nb).any(|b| l1.mult(at(a, b), at(a2, b)) != d1.mult(a, a2)) {
                return None;
            }
        }
    }
    for b in 0..nb {
        for b2 in 0..nb {
            if (0..na).any(|a| l2.mult(at(a, b), at(a, b2)) != d2.mult(b, b2)) {
                return None;
            }
        }
    }
    let first = classify(&d1).ok().filter(|t| t.is_extended())?;
    let second = classify(&d2).ok().filter(|t| t.is_extended())?;
    let bijection = (0..n).map(|v| (comp2_of[v], comp1_of[v])).collect();
    Some(ProductWitness { first, second, bijection, first_graph: d1, second_graph: d2 })
}

/// Decide whether both colours carry the same multiplicities and form a single
/// Euclidean diagram; returns its type.
pub fn detect_doubled(graph: &ColoredMcKayGraph) -> Option<DiagramType> {
    if graph.dim_w() != 4 {
        return None;
    }
    let l1 = graph.layer(1);
    if l1 != graph.layer(2) || !l1.is_connected() {
        return None;
    }
    classify(&l1).ok().filter(|t| t.is_extended())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
        Multigraph::from_edges(n, &edges)
    }

    fn path(n: usize) -> Multigraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
        Multigraph::from_edges(n, &edges)
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan(&path(2)).unwrap().rows(), vec![vec![2, -1], vec![-1, 2]]);
        let double = Multigraph::from_edges(2, &[(0, 1, 2)]);
        assert_eq!(cartan(&double).unwrap().rows(), vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(cartan(&Multigraph::new(1)).unwrap().rows(), vec![vec![2]]);
        let looped = Multigraph::from_edges(1, &[(0, 0, 2)]);
        assert!(cartan(&looped).is_err());
    }

    #[test]
    fn definiteness_examples() {
        assert_eq!(definiteness(&cartan(&path(2)).unwrap()).unwrap(), Definiteness::PositiveDefinite);
        assert_eq!(
            definiteness(&cartan(&cycle(3)).unwrap()).unwrap(),
            Definiteness::PositiveSemidefinite
        );
        let mut t = cycle(3);
        t.add_edge(0, 1, 1);
        assert_eq!(definiteness(&cartan(&t).unwrap()).unwrap(), Definiteness::Indefinite);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&cycle(4)).unwrap(), DiagramType::ExtA(3));
        let star = Multigraph::from_edges(5, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]);
        assert_eq!(classify(&star).unwrap(), DiagramType::ExtD(4));
        assert_eq!(classify(&path(5)).unwrap(), DiagramType::A(5));
        assert_eq!(classify(&Multigraph::new(1)).unwrap(), DiagramType::A(1));
        assert_eq!(classify(&Multigraph::from_edges(2, &[(0, 1, 2)])).unwrap(), DiagramType::ExtA(1));
        assert_eq!(classify(&Multigraph::from_edges(2, &[(0, 1, 3)])).unwrap(), DiagramType::Other);
        assert_eq!(classify(&Multigraph::from_edges(1, &[(0, 0, 2)])).unwrap(), DiagramType::Other);
        let star5 = Multigraph::from_edges(
            6,
            &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1), (0, 5, 1)],
        );
        assert_eq!(classify(&star5).unwrap(), DiagramType::Other);
        assert!(classify(&Multigraph::new(2)).is_err());
    }

    #[test]
    fn catalog_round_trips_through_classify() {
        let mut types = vec![DiagramType::E(6), DiagramType::E(7), DiagramType::E(8)];
        types.extend([DiagramType::ExtE(6), DiagramType::ExtE(7), DiagramType::ExtE(8)]);
        for n in 1..=10 {
            types.push(DiagramType::A(n));
            types.push(DiagramType::ExtA(n));
        }
        for n in 4..=10 {
            types.push(DiagramType::D(n));
            types.push(DiagramType::ExtD(n));
        }
        for t in types {
            let g = catalog_graph(t).unwrap();
            assert_eq!(classify(&g).unwrap(), t, "{t}");
        }
    }

    #[test]
    fn null_vectors() {
        assert_eq!(canonical_null_vector(DiagramType::ExtA(3)).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(canonical_null_vector(DiagramType::ExtE(7)).unwrap(), vec![1, 2, 3, 4, 3, 2, 1, 2]);
        assert_eq!(canonical_null_vector(DiagramType::ExtD(4)).unwrap(), vec![1, 1, 2, 1, 1]);
        assert!(canonical_null_vector(DiagramType::E(6)).is_err());
        // transported labels on a relabelled Ẽ₆
        let g = catalog_graph(DiagramType::ExtE(6)).unwrap();
        let perm = [6, 0, 5, 1, 4, 2, 3];
        let mut h = Multigraph::new(7);
        for i in 0..7 {
            for j in 0..i {
                if g.mult(i, j) > 0 {
                    h.add_edge(perm[i], perm[j], g.mult(i, j));
                }
            }
        }
        let labels = null_vector_on(&h, DiagramType::ExtE(6)).unwrap();
        let c = cartan(&h).unwrap();
        let x: Vec<i64> = labels.iter().map(|&v| v as i64).collect();
        assert!(c.apply(&x).iter().all(|&v| v == 0));
        assert_eq!(labels[perm[2]], 3);
    }

    #[test]
    fn perron_examples() {
        let p = perron_vector(&cycle(5)).unwrap();
        assert!((p.eigenvalue - 2.0).abs() < 1e-10);
        assert!(p.vector.iter().all(|v| (v - 1.0).abs() < 1e-9));
        let p = perron_vector(&path(2)).unwrap();
        assert!((p.eigenvalue - 1.0).abs() < 1e-10);
        assert!(p.vector.iter().all(|v| (v - 1.0).abs() < 1e-9));
        let e6 = catalog_graph(DiagramType::ExtE(6)).unwrap();
        let p = perron_vector(&e6).unwrap();
        assert!((p.eigenvalue - 2.0).abs() < 1e-10);
        for (x, l) in p.vector.iter().zip(canonical_null_vector(DiagramType::ExtE(6)).unwrap()) {
            assert!((x - l as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn eigenspaces_and_orders() {
        assert_eq!(eigenspace_dim(&path(2), 3.0, 1e-6), 0);
        assert_eq!(eigenspace_dim(&path(2), 1.0, 1e-6), 1);
        let e8 = catalog_graph(DiagramType::ExtE(8)).unwrap();
        assert_eq!(order_from_diagram(&e8, 2, 1e-6).unwrap(), 120);
        assert_eq!(order_from_diagram(&cycle(7), 2, 1e-6).unwrap(), 7);
        let mut doubled = catalog_graph(DiagramType::ExtE(6)).unwrap();
        doubled = Multigraph { n: 7, adj: doubled.adj.iter().map(|m| 2 * m).collect() };
        assert_eq!(order_from_diagram(&doubled, 4, 1e-6).unwrap(), 24);
        assert!(order_from_diagram(&path(3), 2, 1e-6).is_err());
    }

    #[test]
    fn bipartitions() {
        assert!(bipartition(&cycle(6)).is_some());
        assert!(bipartition(&cycle(5)).is_none());
        let side = bipartition(&catalog_graph(DiagramType::ExtE(8)).unwrap()).unwrap();
        let ones = side.iter().filter(|&&s| s).count();
        assert_eq!([ones, 9 - ones].iter().copied().max(), Some(5));
    }

    #[test]
    fn isomorphism_respects_multiplicity() {
        let a = Multigraph::from_edges(3, &[(0, 1, 2), (1, 2, 1)]);
        let b = Multigraph::from_edges(3, &[(2, 1, 1), (1, 0, 2)]);
        let c = Multigraph::from_edges(3, &[(0, 1, 1), (1, 2, 2)]);
        assert!(isomorphism(&a, &b).is_some());
        let m = isomorphism(&a, &c).unwrap();
        assert_eq!(m, vec![2, 1, 0]);
        assert!(isomorphism(&cycle(6), &Multigraph::from_edges(
            6,
            &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)]
        ))
        .is_none());
    }
}
