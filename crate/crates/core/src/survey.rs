//! The fixed verification corpus and the survey that runs every applicable
//! suite over it.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::diagram::{classify, DiagramType};
use crate::error::{Error, Result};
use crate::group::{from_generators, Ambient, FiniteSubgroup, ORDER_CAP};
use crate::groupspec::{Family, GroupSpec};
use crate::quat::{Quaternion, UnitQuaternionPair};
use crate::verify::{
    check_dimension_multiset, verify_applications, verify_characterization, verify_parity, verify_so4,
    verify_so4_structure, verify_su2, verify_table, Construction, GroupAnalysis, Status, VerificationReport,
};

pub const MAX_CYCLIC_IN_CORPUS: u32 = 24;
pub const MAX_DIHEDRAL_IN_CORPUS: u32 = 12;

/// The SU(2) groups of the corpus: `C2..C24`, `D1..D12`, `2T`, `2O`, `2I`.
pub fn su2_families() -> Vec<Family> {
    let mut out: Vec<Family> = (2..=MAX_CYCLIC_IN_CORPUS).map(Family::Cyclic).collect();
    out.extend((1..=MAX_DIHEDRAL_IN_CORPUS).map(Family::Dihedral));
    out.extend([Family::Tetrahedral, Family::Octahedral, Family::Icosahedral]);
    out
}

/// Subgroups of SU(2)×SU(2) that are neither products nor diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goursat {
    /// `⟨(ζ₈, ζ₈³)⟩`, cyclic of order 8.
    TwistedCyclic8,
    /// `Q₈ ×_{C₂} Q₈`: both factors of `Q₈ × Q₈`, glued over `Q₈/C₂` diagonally.
    QuaternionFibre,
    /// `2T ×_{C₃} 2T`: `Q₈ × Q₈` extended by the diagonal order-3 element.
    TetrahedralFibre,
}

impl Goursat {
    pub const ALL: [Goursat; 3] = [Goursat::TwistedCyclic8, Goursat::QuaternionFibre, Goursat::TetrahedralFibre];

    pub fn name(self) -> &'static str {
        match self {
            Goursat::TwistedCyclic8 => "twisted-C8",
            Goursat::QuaternionFibre => "Q8-over-C2",
            Goursat::TetrahedralFibre => "2T-over-C3",
        }
    }

    pub fn generators(self) -> Vec<UnitQuaternionPair> {
        use Quaternion as Q;
        let p = UnitQuaternionPair::new;
        match self {
            Goursat::TwistedCyclic8 => {
                vec![p(Q::exp_i(PI / 4.0), Q::exp_i(3.0 * PI / 4.0))]
            }
            Goursat::QuaternionFibre => vec![p(Q::I, Q::ONE), p(Q::ONE, Q::I), p(Q::J, Q::J)],
            Goursat::TetrahedralFibre => {
                let w = Q::new(0.5, 0.5, 0.5, 0.5);
                vec![p(Q::I, Q::ONE), p(Q::J, Q::ONE), p(Q::ONE, Q::I), p(Q::ONE, Q::J), p(w, w)]
            }
        }
    }

    pub fn order(self) -> u64 {
        match self {
            Goursat::TwistedCyclic8 => 8,
            Goursat::QuaternionFibre => 32,
            Goursat::TetrahedralFibre => 192,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusKind {
    Su2(Family),
    Product(Family, Family),
    Diagonal(Family),
    Goursat(Goursat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub label: String,
    pub kind: CorpusKind,
}

impl CorpusEntry {
    fn new(kind: CorpusKind) -> Self {
        let label = match &kind {
            CorpusKind::Su2(f) => GroupSpec::Family(*f).to_string(),
            CorpusKind::Product(a, b) => {
                GroupSpec::Prod(Box::new(GroupSpec::Family(*a)), Box::new(GroupSpec::Family(*b))).to_string()
            }
            CorpusKind::Diagonal(f) => GroupSpec::Diag(*f).to_string(),
            CorpusKind::Goursat(g) => format!("goursat:{}", g.name()),
        };
        CorpusEntry { label, kind }
    }

    pub fn order(&self) -> u64 {
        match self.kind {
            CorpusKind::Su2(f) | CorpusKind::Diagonal(f) => f.order(),
            CorpusKind::Product(a, b) => a.order() * b.order(),
            CorpusKind::Goursat(g) => g.order(),
        }
    }

    pub fn build(&self) -> Result<FiniteSubgroup> {
        match self.kind {
            CorpusKind::Goursat(g) => from_generators(&g.generators(), ORDER_CAP),
            CorpusKind::Su2(f) => GroupSpec::Family(f).build(),
            CorpusKind::Product(a, b) => {
                GroupSpec::Prod(Box::new(GroupSpec::Family(a)), Box::new(GroupSpec::Family(b))).build()
            }
            CorpusKind::Diagonal(f) => GroupSpec::Diag(f).build(),
        }
    }
}

/// The whole corpus, sorted by label: the SU(2) groups, every unordered
/// product of two of them with order at most [`ORDER_CAP`], every diagonal,
/// and the [`Goursat`] subgroups.
pub fn corpus() -> Vec<CorpusEntry> {
    let fams = su2_families();
    let mut out: Vec<CorpusEntry> = fams.iter().map(|&f| CorpusEntry::new(CorpusKind::Su2(f))).collect();
    for (i, &a) in fams.iter().enumerate() {
        for &b in &fams[i..] {
            if a.order() * b.order() <= ORDER_CAP as u64 {
                out.push(CorpusEntry::new(CorpusKind::Product(a, b)));
            }
        }
    }
    out.extend(fams.iter().map(|&f| CorpusEntry::new(CorpusKind::Diagonal(f))));
    out.extend(Goursat::ALL.iter().map(|&g| CorpusEntry::new(CorpusKind::Goursat(g))));
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSurvey {
    pub group: String,
    pub ambient: Option<&'static str>,
    pub order: Option<usize>,
    pub classes: Option<usize>,
    /// Sorted irreducible dimensions.
    pub dims: Vec<u32>,
    pub reports: Vec<VerificationReport>,
    pub error: Option<String>,
    #[serde(skip)]
    pub numeric_error: bool,
}

impl GroupSurvey {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.reports.iter().all(VerificationReport::passed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveySummary {
    pub groups: usize,
    pub groups_passed: usize,
    pub checks: usize,
    pub failed_checks: usize,
    pub skipped_checks: usize,
    pub errors: usize,
    pub max_dim: u32,
    pub max_dim_groups: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyReport {
    pub max_order: u64,
    pub seed: u64,
    pub tol: f64,
    pub summary: SurveySummary,
    pub groups: Vec<GroupSurvey>,
}

impl SurveyReport {
    pub fn passed(&self) -> bool {
        self.groups.iter().all(GroupSurvey::passed)
    }

    pub fn has_numeric_error(&self) -> bool {
        self.groups.iter().any(|g| g.numeric_error)
    }

    /// Pretty JSON, two-space indented and newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("survey report serializes");
        s.push('\n');
        s
    }
}

/// Extended type of the full McKay diagram of an SU(2) family.
fn family_type(f: Family, seed: u64, tol: f64) -> Result<DiagramType> {
    let a = GroupAnalysis::new(f.to_string(), f.build()?, seed, tol)?;
    let t = classify(&a.graph.total_graph())?;
    if !t.is_extended() {
        return Err(Error::Invariant(format!("{f} has non-extended diagram {t}")));
    }
    Ok(t)
}

/// The reports run on one analysed corpus group.
pub fn suites_for(a: &GroupAnalysis, built: Construction) -> Result<Vec<VerificationReport>> {
    let mut reports = vec![verify_table(a)];
    match a.group.ambient() {
        Ambient::Su2 => {
            reports.push(verify_su2(a)?);
            if a.has_minus_one() {
                reports.push(verify_parity(a)?);
            }
        }
        Ambient::Su2xSu2 => {
            if a.has_minus_one() {
                reports.push(verify_so4(a)?);
                reports.push(verify_parity(a)?);
                reports.push(verify_applications(a)?);
            } else {
                reports.push(verify_so4_structure(a)?);
            }
        }
    }
    reports.push(check_dimension_multiset(&a.dims())?);
    if a.group.ambient() == Ambient::Su2xSu2 {
        reports.push(verify_characterization(a, built));
    }
    Ok(reports)
}

/// Runs the survey over every corpus group of order at most `max_order`,
/// handing each analysis to `visit` before it is dropped.
pub fn run_survey_with(
    max_order: u64,
    seed: u64,
    tol: f64,
    mut visit: impl FnMut(&CorpusEntry, &GroupAnalysis, &GroupSurvey),
) -> SurveyReport {
    let mut types: BTreeMap<Family, Result<DiagramType>> = BTreeMap::new();
    let mut factor_type = |f: Family| -> Result<DiagramType> {
        let t = types.entry(f).or_insert_with(|| family_type(f, seed, tol));
        t.as_ref().map(|t| *t).map_err(|e| Error::Invariant(format!("factor {f}: {e}")))
    };

    let mut groups = Vec::new();
    for entry in corpus().into_iter().filter(|e| e.order() <= max_order) {
        let built = match entry.kind {
            CorpusKind::Product(a, b) => factor_type(a).and_then(|x| Ok(Construction::Product(x, factor_type(b)?))),
            CorpusKind::Diagonal(f) => factor_type(f).map(Construction::Diagonal),
            _ => Ok(Construction::Other),
        };
        let mut survey = GroupSurvey {
            group: entry.label.clone(),
            ambient: None,
            order: None,
            classes: None,
            dims: Vec::new(),
            reports: Vec::new(),
            error: None,
            numeric_error: false,
        };
        let analysis = entry.build().and_then(|g| GroupAnalysis::new(entry.label.clone(), g, seed, tol));
        match analysis.and_then(|a| Ok((suites_for(&a, built?)?, a))) {
            Ok((reports, a)) => {
                survey.ambient = Some(a.group.ambient().as_str());
                survey.order = Some(a.group.order());
                survey.classes = Some(a.partition.len());
                let mut dims = a.dims();
                dims.sort_unstable();
                survey.dims = dims;
                survey.reports = reports;
                visit(&entry, &a, &survey);
            }
            Err(e) => {
                survey.numeric_error = e.is_numeric();
                survey.error = Some(e.to_string());
            }
        }
        groups.push(survey);
    }

    let checks = groups.iter().flat_map(|g| &g.reports).flat_map(|r| &r.checks);
    let count = |s: Status| checks.clone().filter(|c| c.status == s).count();
    let max_dim = groups.iter().flat_map(|g| g.dims.last()).copied().max().unwrap_or(0);
    let summary = SurveySummary {
        groups: groups.len(),
        groups_passed: groups.iter().filter(|g| g.passed()).count(),
        checks: checks.clone().count(),
        failed_checks: count(Status::Fail),
        skipped_checks: count(Status::Skip),
        errors: groups.iter().filter(|g| g.error.is_some()).count(),
        max_dim,
        max_dim_groups: groups
            .iter()
            .filter(|g| g.dims.last() == Some(&max_dim))
            .map(|g| g.group.clone())
            .collect(),
    };
    SurveyReport { max_order, seed, tol, summary, groups }
}

pub fn run_survey(max_order: u64, seed: u64, tol: f64) -> SurveyReport {
    run_survey_with(max_order, seed, tol, |_, _, _| {})
}
