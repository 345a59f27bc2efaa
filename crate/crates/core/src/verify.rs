//! Theorem checks over concrete groups, reported as named pass/fail entries.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chartab::{character_table_with_tol, natural_character, CharacterTable, NaturalFactor, Parity};
use crate::diagram::{
    bipartition, classify, detect_doubled, detect_product, eigenspace_dim, null_vector_on,
    order_from_diagram, DiagramType, Multigraph,
};
use crate::error::{Error, Result};
use crate::group::{central_minus_one, conjugacy_classes, Ambient, ConjugacyPartition, FiniteSubgroup};
use crate::mckay::{mckay_graph, parity_bipartition, reduced, ColoredMcKayGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub witnesses: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: String,
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn new(group: &str, suite: &str) -> Self {
        VerificationReport { group: group.to_string(), suite: suite.to_string(), checks: Vec::new() }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>, witnesses: Value) {
        self.checks.push(Check {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            witnesses,
        });
    }

    fn skip(&mut self, name: &str, detail: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            status: Status::Skip,
            detail: detail.to_string(),
            witnesses: Value::Null,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// A group together with everything derived from it.
#[derive(Debug, Clone)]
pub struct GroupAnalysis {
    pub label: String,
    pub group: FiniteSubgroup,
    pub partition: ConjugacyPartition,
    pub table: CharacterTable,
    pub graph: ColoredMcKayGraph,
    pub tol: f64,
}

impl GroupAnalysis {
    pub fn new(label: impl Into<String>, group: FiniteSubgroup, seed: u64, tol: f64) -> Result<Self> {
        let partition = conjugacy_classes(&group);
        let table = character_table_with_tol(&group, &partition, seed, tol)?;
        let graph = mckay_graph(&group, &partition, &table, tol)?;
        Ok(GroupAnalysis { label: label.into(), group, partition, table, graph, tol })
    }

    pub fn has_minus_one(&self) -> bool {
        central_minus_one(&self.group).is_some()
    }

    /// Degrees in canonical row order.
    pub fn dims(&self) -> Vec<u32> {
        self.table.degrees().to_vec()
    }
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

fn describe(t: &Result<DiagramType>) -> String {
    match t {
        Ok(t) => t.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Checks shared by the SU(2) and SU(2)×SU(2) suites.
fn common_checks(a: &GroupAnalysis, report: &mut VerificationReport) {
    let gr = &a.graph;
    let total = gr.total_graph();
    let n = a.group.order();

    let w = natural_character(&a.group, &a.partition, NaturalFactor::Both);
    let max_im = w
        .as_ref()
        .map(|w| w.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max))
        .unwrap_or(f64::INFINITY);
    report.check(
        "undirected",
        max_im < a.tol,
        "W is self-dual (real character), so n_ij = n_ji",
        json!({ "max_imaginary_part": max_im }),
    );
    let comps = total.components().len();
    report.check("connected", comps == 1, format!("{comps} component(s)"), json!({ "components": comps }));
    let defect = gr.dimension_defect();
    report.check(
        "dimension_eigenvector",
        defect == 0,
        format!("max |Σ_j n_ij dim_j − {}·dim_i| = {defect}", gr.dim_w()),
        json!({ "defect": defect, "dim_w": gr.dim_w() }),
    );
    let k = eigenspace_dim(&total, gr.dim_w() as f64, a.tol);
    report.check(
        "eigenspace_one_dimensional",
        k == 1,
        format!("eigenspace at λ = {} has dimension {k}", gr.dim_w()),
        json!({ "dimension": k, "lambda": gr.dim_w() }),
    );
    let recovered = order_from_diagram(&total, gr.dim_w(), a.tol);
    report.check(
        "order_recovery",
        matches!(recovered, Ok(o) if o == n as u64),
        match &recovered {
            Ok(o) => format!("Σ x_i² = {o}, |G| = {n}"),
            Err(e) => format!("error: {e}"),
        },
        json!({ "recovered": recovered.as_ref().ok(), "order": n }),
    );
}

fn parity_check(a: &GroupAnalysis, report: &mut VerificationReport) {
    if !a.has_minus_one() {
        report.skip("parity_bipartition", "−1 ∉ G");
        return;
    }
    let res = parity_bipartition(&a.graph);
    report.check(
        "parity_bipartition",
        res.is_ok(),
        match &res {
            Ok((e, o)) => format!("{} even / {} odd vertices, every edge crosses", e.len(), o.len()),
            Err(e) => e.to_string(),
        },
        Value::Null,
    );
}

/// McKay correspondence for a finite subgroup of SU(2).
pub fn verify_su2(a: &GroupAnalysis) -> Result<VerificationReport> {
    if a.group.ambient() != Ambient::Su2 {
        return Err(Error::Ambient("verify_su2 needs an SU(2) group".into()));
    }
    let mut report = VerificationReport::new(&a.label, "su2");
    common_checks(a, &mut report);

    let total = a.graph.total_graph();
    let full = if total.is_connected() { classify(&total) } else { Err(Error::Precondition("disconnected".into())) };
    let full_ok = matches!(full, Ok(t) if t.is_extended());
    report.check("extended_type", full_ok, describe(&full), json!({ "type": describe(&full) }));

    let red = reduced(&a.graph).map(|r| r.total_graph());
    let red_type = match &red {
        Ok(g) if g.is_empty() => Ok(DiagramType::Other),
        Ok(g) if g.is_connected() => classify(g),
        Ok(_) => Err(Error::Precondition("reduced diagram is disconnected".into())),
        Err(e) => Err(Error::Precondition(e.to_string())),
    };
    let red_ok = match (&full, &red_type) {
        (Ok(f), Ok(r)) => f.finite_part() == Some(*r),
        _ => false,
    };
    report.check("reduced_dynkin_type", red_ok, describe(&red_type), json!({ "type": describe(&red_type) }));

    let dims = a.graph.dims();
    let labels = full.as_ref().ok().filter(|t| t.is_extended()).and_then(|&t| null_vector_on(&total, t).ok());
    report.check(
        "dimension_labels",
        labels.as_deref() == Some(&dims[..]),
        "irreducible dimensions equal the canonical null vector",
        json!({ "dims": dims, "null_vector": labels }),
    );
    parity_check(a, &mut report);
    Ok(report)
}

/// Orthogonality and degree checks on the character table.
pub fn verify_table(a: &GroupAnalysis) -> VerificationReport {
    let mut report = VerificationReport::new(&a.label, "table");
    let t = &a.table;
    let row = t.row_orthogonality_error();
    report.check(
        "row_orthogonality",
        row < a.tol,
        format!("max |⟨χ_i, χ_j⟩ − δ_ij| = {row:e}"),
        json!({ "error": row }),
    );
    let col = t.column_orthogonality_error();
    report.check(
        "column_orthogonality",
        col < a.tol,
        format!("max |Σ_i χ_i(C) conj χ_i(D) − δ_CD |G|/|C|| = {col:e}"),
        json!({ "error": col }),
    );
    let sum_sq: u64 = t.degrees().iter().map(|&d| d as u64 * d as u64).sum();
    let n = a.group.order() as u64;
    report.check(
        "sum_of_squared_degrees",
        sum_sq == n,
        format!("Σ d² = {sum_sq}, |G| = {n}"),
        json!({ "sum_of_squares": sum_sq, "order": n }),
    );
    report
}

/// Parity bipartition of the McKay diagram of a group containing −1.
pub fn verify_parity(a: &GroupAnalysis) -> Result<VerificationReport> {
    let m = central_minus_one(&a.group).ok_or_else(|| Error::Precondition("−1 ∉ G".into()))?;
    let mut report = VerificationReport::new(&a.label, "parity");
    let gr = &a.graph;
    let cm = a.partition.class_of(m);

    let parities: Vec<Option<Parity>> = gr.vertices().iter().map(|v| v.parity).collect();
    let all_defined = parities.iter().all(Option::is_some);
    let ratios: Vec<f64> =
        (0..a.table.len()).map(|i| a.table.value(i, cm).re / a.table.degrees()[i] as f64).collect();
    report.check(
        "parity_defined",
        all_defined,
        "χ_i(−1) = ±χ_i(1) for every irreducible",
        json!({ "ratios": ratios }),
    );

    let mut crossing_violations = 0;
    for ((u, v, _), _) in gr.edges() {
        if parities[u].is_none() || parities[u] == parities[v] {
            crossing_violations += 1;
        }
    }
    report.check(
        "edges_cross_parity",
        all_defined && crossing_violations == 0,
        format!("{crossing_violations} edge(s) join equal parities"),
        json!({ "violations": crossing_violations }),
    );

    let structural = bipartition(&gr.total_graph()).is_some();
    report.check("bipartite", structural, "the diagram has no odd cycle", Value::Null);

    let half = a.group.order() as u64 / 2;
    let mass = |p: Parity| -> u64 {
        gr.vertices().iter().filter(|v| v.parity == Some(p)).map(|v| (v.dim as u64).pow(2)).sum()
    };
    let dims_of = |p: Parity| -> Vec<u32> {
        sorted(gr.vertices().iter().filter(|v| v.parity == Some(p)).map(|v| v.dim).collect())
    };
    for (name, p) in [("even_part_mass", Parity::Even), ("odd_part_mass", Parity::Odd)] {
        let s = mass(p);
        report.check(
            name,
            s == half && a.group.order().is_multiple_of(2),
            format!("Σ dim² = {s}, |G|/2 = {half}"),
            json!({ "sum_of_squares": s, "dims": dims_of(p) }),
        );
    }
    Ok(report)
}

/// Structure of the coloured diagram of a subgroup of SU(2)×SU(2), without the
/// parity part (so it also applies when `(−1, −1) ∉ G`).
pub fn verify_so4_structure(a: &GroupAnalysis) -> Result<VerificationReport> {
    if a.group.ambient() != Ambient::Su2xSu2 {
        return Err(Error::Ambient("SU(2)×SU(2) suite on an SU(2) group".into()));
    }
    let mut report = VerificationReport::new(&a.label, "so4");
    so4_checks(a, &mut report);
    Ok(report)
}

fn so4_checks(a: &GroupAnalysis, report: &mut VerificationReport) {
    let gr = &a.graph;
    common_checks(a, report);
    let dims = gr.dims();

    let mut types = Vec::new();
    let mut all_extended = true;
    let mut labels_ok = true;
    let mut layer_comps = Vec::new();
    for color in [1u8, 2] {
        let layer = gr.layer(color);
        let comps = layer.components();
        let mut names = Vec::new();
        for comp in &comps {
            let sub = layer.induced(comp);
            let t = classify(&sub);
            names.push(describe(&t));
            match t {
                Ok(t) if t.is_extended() => {
                    labels_ok &= proportional(&sub, t, comp, &dims);
                }
                _ => {
                    all_extended = false;
                    labels_ok = false;
                }
            }
        }
        types.push(names);
        layer_comps.push(comps);
    }
    report.check(
        "colour_components_euclidean",
        all_extended,
        "every component of Γ₁ and Γ₂ is a Euclidean diagram",
        json!({ "gamma1": types[0], "gamma2": types[1] }),
    );

    let mut misses = 0;
    for c1 in &layer_comps[0] {
        for c2 in &layer_comps[1] {
            if !c1.iter().any(|v| c2.binary_search(v).is_ok()) {
                misses += 1;
            }
        }
    }
    report.check(
        "transversal",
        misses == 0,
        format!("{misses} component pair(s) of Γ₁ × Γ₂ are disjoint"),
        json!({ "gamma1_components": layer_comps[0].len(), "gamma2_components": layer_comps[1].len() }),
    );
    report.check(
        "component_labels",
        labels_ok,
        "dimensions on each component are a multiple of its canonical null vector",
        json!({ "dims": dims }),
    );
}

fn proportional(sub: &Multigraph, t: DiagramType, comp: &[usize], dims: &[u32]) -> bool {
    let Ok(labels) = null_vector_on(sub, t) else { return false };
    let (d0, l0) = (dims[comp[0]], labels[0]);
    if d0 % l0 != 0 {
        return false;
    }
    let scale = d0 / l0;
    comp.iter().zip(&labels).all(|(&v, &l)| dims[v] == scale * l)
}

/// Full SU(2)×SU(2) suite: colour decomposition, transversality, eigenvector
/// uniqueness, per-component labels, order recovery and parity.
pub fn verify_so4(a: &GroupAnalysis) -> Result<VerificationReport> {
    if a.group.ambient() != Ambient::Su2xSu2 {
        return Err(Error::Ambient("verify_so4 needs an SU(2)×SU(2) group".into()));
    }
    if !a.has_minus_one() {
        return Err(Error::Precondition("(−1, −1) ∉ G".into()));
    }
    let mut report = VerificationReport::new(&a.label, "so4");
    so4_checks(a, &mut report);
    parity_check(a, &mut report);
    Ok(report)
}

pub const MAX_SO4_DIM: u32 = 36;
pub const ODD_WITHOUT_THREE: &str = "odd > 1 without 3";

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn dimension_rules(dims: &[u32], report: &mut VerificationReport) {
    let max = dims.iter().copied().max().unwrap_or(0);
    report.check(
        "max_dim_at_most_36",
        max <= MAX_SO4_DIM,
        format!("max dimension {max}"),
        json!({ "max_dim": max }),
    );
    let mut bad: Vec<u32> = dims
        .iter()
        .flat_map(|&d| prime_factors(d))
        .filter(|p| ![2, 3, 5].contains(p))
        .collect();
    bad.sort_unstable();
    bad.dedup();
    report.check(
        "primes_in_2_3_5",
        bad.is_empty(),
        if bad.is_empty() { "all prime divisors are 2, 3 or 5".to_string() } else { format!("prime {bad:?}") },
        json!({ "bad_primes": bad }),
    );
    let mut odd: Vec<u32> = dims.iter().copied().filter(|&d| d > 1 && d % 2 == 1).collect();
    odd.sort_unstable();
    odd.dedup();
    let ok = odd.is_empty() || dims.contains(&3);
    report.check(
        "odd_dim_implies_3",
        ok,
        if ok { "ok".to_string() } else { format!("{ODD_WITHOUT_THREE}: odd dims {odd:?}") },
        json!({ "odd_dims": odd }),
    );
}

/// Dimension constraints on irreducibles of finite subgroups of SO(4).
pub fn verify_applications(a: &GroupAnalysis) -> Result<VerificationReport> {
    if a.group.ambient() != Ambient::Su2xSu2 {
        return Err(Error::Ambient("verify_applications needs an SU(2)×SU(2) group".into()));
    }
    if !a.has_minus_one() {
        return Err(Error::Precondition("(−1, −1) ∉ G".into()));
    }
    let mut report = VerificationReport::new(&a.label, "apps");
    dimension_rules(&a.dims(), &mut report);
    Ok(report)
}

/// The same constraints as necessary conditions on an abstract list of
/// irreducible dimensions.
pub fn check_dimension_multiset(dims: &[u32]) -> Result<VerificationReport> {
    if dims.is_empty() {
        return Err(Error::Input("empty dimension multiset".into()));
    }
    let label = format!("{:?}", sorted(dims.to_vec()));
    let mut report = VerificationReport::new(&label, "dims");
    dimension_rules(dims, &mut report);
    Ok(report)
}

/// How a corpus group was built, for the product/diagonal recognition suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Product(DiagramType, DiagramType),
    Diagonal(DiagramType),
    Other,
}

/// `detect_product` must succeed exactly on products (recovering the factor
/// types) and `detect_doubled` exactly on diagonals.
pub fn verify_characterization(a: &GroupAnalysis, built: Construction) -> VerificationReport {
    let mut report = VerificationReport::new(&a.label, "characterization");
    let product = detect_product(&a.graph).map(|w| (w.first, w.second));
    let doubled = detect_doubled(&a.graph);
    let show = |p: Option<(DiagramType, DiagramType)>| p.map(|(x, y)| format!("{x} × {y}"));
    let (want_product, want_doubled) = match built {
        Construction::Product(x, y) => (Some((x, y)), None),
        Construction::Diagonal(t) => (None, Some(t)),
        Construction::Other => (None, None),
    };
    report.check(
        "product_detection",
        product == want_product,
        format!("detected {:?}, expected {:?}", show(product), show(want_product)),
        json!({ "detected": show(product) }),
    );
    report.check(
        "doubled_detection",
        doubled == want_doubled,
        format!("detected {:?}, expected {:?}", doubled.map(|t| t.to_string()), want_doubled.map(|t| t.to_string())),
        json!({ "detected": doubled.map(|t| t.to_string()) }),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_on_five_letters_is_rejected() {
        let r = check_dimension_multiset(&[1, 1, 4, 4, 5, 5, 6]).unwrap();
        assert!(!r.passed());
        let f = r.first_failure().unwrap();
        assert_eq!(f.name, "odd_dim_implies_3");
        assert!(f.detail.starts_with(ODD_WITHOUT_THREE));
    }

    #[test]
    fn multiset_rules() {
        assert!(check_dimension_multiset(&[1]).unwrap().passed());
        let r = check_dimension_multiset(&[1, 2, 3, 7]).unwrap();
        assert_eq!(r.first_failure().unwrap().name, "primes_in_2_3_5");
        let r = check_dimension_multiset(&[1, 40]).unwrap();
        assert_eq!(r.first_failure().unwrap().name, "max_dim_at_most_36");
        assert_eq!(r.checks.len(), 3);
        assert!(check_dimension_multiset(&[]).is_err());
    }

    #[test]
    fn factorization() {
        assert_eq!(prime_factors(36), vec![2, 3]);
        assert_eq!(prime_factors(35), vec![5, 7]);
        assert_eq!(prime_factors(1), Vec::<u32>::new());
    }
}
