//! Finite subgroups of SU(2) and SU(2)×SU(2) as closed, indexed element sets.

use std::collections::VecDeque;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{canonical_key, pair_mul, CanonicalKey, Quaternion, UnitQuaternionPair};

/// Two elements closer than this (max-coordinate distance) are the same element.
pub const MATCH_TOL: f64 = 1e-6;
/// Distinct stored elements must be at least this far apart.
pub const MIN_SEPARATION: f64 = 1e-3;
/// Hard cap on any constructed group.
pub const ORDER_CAP: usize = 20000;
pub const MAX_CYCLIC: u32 = 1024;
pub const MAX_DIHEDRAL: u32 = 256;

const LOOKUP_GRID: f64 = 1e-4;
const EXHAUSTIVE_CLOSURE_LIMIT: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    #[serde(rename = "SU2")]
    Su2,
    #[serde(rename = "SU2xSU2")]
    Su2xSu2,
}

impl Ambient {
    pub fn as_str(self) -> &'static str {
        match self {
            Ambient::Su2 => "SU2",
            Ambient::Su2xSu2 => "SU2xSU2",
        }
    }
}

/// Grid hash from canonical keys to element indices.
///
/// A query whose coordinates sit within `MATCH_TOL` of a cell boundary also probes
/// the neighbouring cell in that coordinate, so every stored element within
/// `MATCH_TOL` of the query is reachable.
#[derive(Debug, Clone, Default)]
struct ElementLookup {
    map: FxHashMap<CanonicalKey, usize>,
}

impl ElementLookup {
    fn insert(&mut self, p: UnitQuaternionPair, index: usize) {
        self.map.insert(canonical_key(p, LOOKUP_GRID), index);
    }

    fn find(&self, p: UnitQuaternionPair, elements: &[UnitQuaternionPair]) -> Option<usize> {
        let scaled = p.coords().map(|x| x / LOOKUP_GRID);
        let key = scaled.map(|s| s.round() as i64);
        let hit = |k: &CanonicalKey| {
            self.map
                .get(k)
                .copied()
                .filter(|&i| elements[i].max_dist(p) < MATCH_TOL)
        };
        if let Some(i) = hit(&key) {
            return Some(i);
        }
        let margin = MATCH_TOL / LOOKUP_GRID;
        let mut near = Vec::new();
        for (c, (&s, &k)) in scaled.iter().zip(&key).enumerate() {
            let f = s - k as f64;
            if 0.5 - f.abs() < margin {
                near.push((c, if f > 0.0 { k + 1 } else { k - 1 }));
            }
        }
        for mask in 1u32..(1 << near.len()) {
            let mut probe = key;
            for (bit, &(c, alt)) in near.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    probe[c] = alt;
                }
            }
            if let Some(i) = hit(&probe) {
                return Some(i);
            }
        }
        None
    }
}

/// A finite group of unit quaternion pairs. The identity always has index 0.
#[derive(Debug, Clone)]
pub struct FiniteSubgroup {
    elements: Vec<UnitQuaternionPair>,
    lookup: ElementLookup,
    inverses: Vec<usize>,
    minus_one_index: Option<usize>,
    generator_indices: Vec<usize>,
    ambient: Ambient,
}

impl FiniteSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[UnitQuaternionPair] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> UnitQuaternionPair {
        self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn minus_one_index(&self) -> Option<usize> {
        self.minus_one_index
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn index_of(&self, p: UnitQuaternionPair) -> Option<usize> {
        self.lookup.find(p, &self.elements)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Index of `elements[i] * elements[j]`.
    ///
    /// Panics if the product is not found, which cannot happen for a group that
    /// passed its construction-time closure check.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let p = pair_mul(self.elements[i], self.elements[j]);
        self.index_of(p)
            .unwrap_or_else(|| panic!("product of elements {i} and {j} left the group"))
    }

    /// Assemble a group from a complete element list (identity first) and validate it.
    fn from_elements(
        elements: Vec<UnitQuaternionPair>,
        generator_indices: Vec<usize>,
        ambient: Ambient,
    ) -> Result<Self> {
        if elements.len() > ORDER_CAP {
            return Err(Error::CapExceeded { cap: ORDER_CAP });
        }
        check_separation(&elements)?;
        let mut lookup = ElementLookup::default();
        for (i, &p) in elements.iter().enumerate() {
            lookup.insert(p, i);
        }
        let mut g = FiniteSubgroup {
            elements,
            lookup,
            inverses: Vec::new(),
            minus_one_index: None,
            generator_indices,
            ambient,
        };
        g.finish()?;
        Ok(g)
    }

    /// Fill in inverses and the central element, then check the group axioms.
    fn finish(&mut self) -> Result<()> {
        if self.elements[0].max_dist(UnitQuaternionPair::IDENTITY) >= MATCH_TOL {
            return Err(Error::Closure("identity is not the first element".into()));
        }
        if self.ambient == Ambient::Su2
            && self.elements.iter().any(|p| p.q2.max_dist(Quaternion::ONE) >= MATCH_TOL)
        {
            return Err(Error::Ambient("SU(2) group with nontrivial second factor".into()));
        }
        self.inverses = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, p)| {
                self.index_of(p.inverse())
                    .ok_or_else(|| Error::Closure(format!("inverse of element {i} missing")))
            })
            .collect::<Result<_>>()?;
        self.minus_one_index = self.index_of(UnitQuaternionPair::MINUS_ONE);
        self.verify_closure()
    }

    fn verify_closure(&self) -> Result<()> {
        let n = self.order();
        let check = |i: usize, j: usize| -> Result<()> {
            let p = pair_mul(self.elements[i], self.elements[j]);
            match self.index_of(p) {
                Some(_) => Ok(()),
                None => Err(Error::Closure(format!("product of elements {i} and {j} missing"))),
            }
        };
        if n <= EXHAUSTIVE_CLOSURE_LIMIT {
            for i in 0..n {
                for j in 0..n {
                    check(i, j)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..10 * n {
                check(rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }
}

/// Reject element lists containing two distinct entries closer than `MIN_SEPARATION`.
///
/// Sweeps the elements sorted by a fixed generic projection; any pair within
/// `MIN_SEPARATION` in max-coordinate distance is within `MIN_SEPARATION * |u|_1`
/// in projection.
fn check_separation(elements: &[UnitQuaternionPair]) -> Result<()> {
    const DIRECTION: [f64; 8] = [
        0.8414709848, 0.4546487134, -0.7568024953, 0.2794154982, 0.9092974268, -0.5440211109,
        0.6569865987, 0.9893582466,
    ];
    let l1: f64 = DIRECTION.iter().map(|x| x.abs()).sum();
    let window = MIN_SEPARATION * l1;
    let proj: Vec<f64> = elements
        .iter()
        .map(|p| p.coords().iter().zip(DIRECTION).map(|(x, u)| x * u).sum())
        .collect();
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by(|&a, &b| proj[a].total_cmp(&proj[b]));
    for (pos, &a) in order.iter().enumerate() {
        for &b in &order[pos + 1..] {
            if proj[b] - proj[a] > window {
                break;
            }
            if elements[a].max_dist(elements[b]) < MIN_SEPARATION {
                return Err(Error::Separation(a.min(b), a.max(b)));
            }
        }
    }
    Ok(())
}

/// C_n generated by `cos(2π/n) + sin(2π/n) i`.
pub fn cyclic(n: u32) -> Result<FiniteSubgroup> {
    if !(1..=MAX_CYCLIC).contains(&n) {
        return Err(Error::OutOfRange(format!("cyclic order {n} not in 1..={MAX_CYCLIC}")));
    }
    let elements = (0..n)
        .map(|k| UnitQuaternionPair::su2(Quaternion::exp_i(2.0 * PI * k as f64 / n as f64)))
        .collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteSubgroup::from_elements(elements, gens, Ambient::Su2)
}

/// Binary dihedral group of order 4n, generated by `exp(iπ/n)` and `j`.
pub fn binary_dihedral(n: u32) -> Result<FiniteSubgroup> {
    if !(1..=MAX_DIHEDRAL).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "binary dihedral parameter {n} not in 1..={MAX_DIHEDRAL}"
        )));
    }
    let m = 2 * n as usize;
    let rotations: Vec<Quaternion> =
        (0..m).map(|k| Quaternion::exp_i(PI * k as f64 / n as f64)).collect();
    let elements = rotations
        .iter()
        .copied()
        .chain(rotations.iter().map(|&r| r * Quaternion::J))
        .map(UnitQuaternionPair::su2)
        .collect();
    FiniteSubgroup::from_elements(elements, vec![1, m], Ambient::Su2)
}

fn hurwitz_units() -> Vec<Quaternion> {
    let mut units = vec![Quaternion::ONE];
    for (idx, s) in [(0usize, -1.0), (1, 1.0), (1, -1.0), (2, 1.0), (2, -1.0), (3, 1.0), (3, -1.0)]
    {
        let mut c = [0.0; 4];
        c[idx] = s;
        units.push(Quaternion::new(c[0], c[1], c[2], c[3]));
    }
    for signs in 0..16u32 {
        let s = |bit: u32| if signs & (1 << bit) == 0 { 0.5 } else { -0.5 };
        units.push(Quaternion::new(s(0), s(1), s(2), s(3)));
    }
    units
}

fn su2_from_list(list: Vec<Quaternion>, gens: &[Quaternion]) -> Result<FiniteSubgroup> {
    let elements: Vec<_> = list.into_iter().map(UnitQuaternionPair::su2).collect();
    let gen_indices = gens
        .iter()
        .map(|&q| {
            elements
                .iter()
                .position(|p| p.q1.max_dist(q) < MATCH_TOL)
                .ok_or_else(|| Error::Closure(format!("generator {q} not in element list")))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteSubgroup::from_elements(elements, gen_indices, Ambient::Su2)
}

const OMEGA: Quaternion = Quaternion::new(0.5, 0.5, 0.5, 0.5);

/// The 24 Hurwitz units.
pub fn binary_tetrahedral() -> Result<FiniteSubgroup> {
    su2_from_list(hurwitz_units(), &[Quaternion::I, OMEGA])
}

/// Hurwitz units plus the 24 units with two nonzero coordinates `±1/√2`.
pub fn binary_octahedral() -> Result<FiniteSubgroup> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut list = hurwitz_units();
    for a in 0..4 {
        for b in a + 1..4 {
            for (sa, sb) in [(h, h), (h, -h), (-h, h), (-h, -h)] {
                let mut c = [0.0; 4];
                c[a] = sa;
                c[b] = sb;
                list.push(Quaternion::new(c[0], c[1], c[2], c[3]));
            }
        }
    }
    su2_from_list(list, &[Quaternion::new(h, h, 0.0, 0.0), OMEGA])
}

/// Hurwitz units plus the 96 even coordinate permutations of `½(±φ, ±1, ±1/φ, 0)`.
pub fn binary_icosahedral() -> Result<FiniteSubgroup> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let base = [phi / 2.0, 0.5, 1.0 / (2.0 * phi), 0.0];
    let mut list = hurwitz_units();
    for perm in even_permutations() {
        for signs in 0..8u32 {
            let mut v = base;
            for (bit, x) in v.iter_mut().take(3).enumerate() {
                if signs & (1 << bit) != 0 {
                    *x = -*x;
                }
            }
            let mut c = [0.0; 4];
            for (src, &dst) in perm.iter().enumerate() {
                c[dst] = v[src];
            }
            list.push(Quaternion::new(c[0], c[1], c[2], c[3]));
        }
    }
    let g = Quaternion::new(base[0], base[1], base[2], base[3]);
    su2_from_list(list, &[Quaternion::I, OMEGA, g])
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|x| p.contains(&x));
                    if !distinct {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn require_su2(g: &FiniteSubgroup, what: &str) -> Result<()> {
    if g.ambient != Ambient::Su2 {
        return Err(Error::Ambient(format!("{what} requires SU(2) arguments")));
    }
    Ok(())
}

/// All pairs `(g1, g2)`; element `i * |G2| + j` is `(G1[i], G2[j])`.
pub fn product(g1: &FiniteSubgroup, g2: &FiniteSubgroup) -> Result<FiniteSubgroup> {
    require_su2(g1, "product")?;
    require_su2(g2, "product")?;
    let (n1, n2) = (g1.order(), g2.order());
    if n1 * n2 > ORDER_CAP {
        return Err(Error::CapExceeded { cap: ORDER_CAP });
    }
    let mut elements = Vec::with_capacity(n1 * n2);
    for a in &g1.elements {
        for b in &g2.elements {
            elements.push(UnitQuaternionPair::new(a.q1, b.q1));
        }
    }
    let gens = g1
        .generator_indices
        .iter()
        .map(|&i| i * n2)
        .chain(g2.generator_indices.iter().copied())
        .collect();
    FiniteSubgroup::from_elements(elements, gens, Ambient::Su2xSu2)
}

/// `{(g, g)}`.
pub fn diagonal(g: &FiniteSubgroup) -> Result<FiniteSubgroup> {
    require_su2(g, "diagonal")?;
    let elements = g.elements.iter().map(|p| UnitQuaternionPair::new(p.q1, p.q1)).collect();
    FiniteSubgroup::from_elements(elements, g.generator_indices.clone(), Ambient::Su2xSu2)
}

/// Breadth-first closure of `gens` under right multiplication.
///
/// The result is an SU(2) group when every generator has trivial second factor.
pub fn from_generators(gens: &[UnitQuaternionPair], cap: usize) -> Result<FiniteSubgroup> {
    if cap > ORDER_CAP {
        return Err(Error::OutOfRange(format!("closure cap {cap} exceeds {ORDER_CAP}")));
    }
    let gens: Vec<UnitQuaternionPair> = gens
        .iter()
        .map(|p| {
            if p.q1.is_unit(1e-6) && p.q2.is_unit(1e-6) {
                Ok(p.normalized())
            } else {
                Err(Error::Input(format!("generator ({}, {}) is not unit norm", p.q1, p.q2)))
            }
        })
        .collect::<Result<_>>()?;
    let ambient = if gens.iter().all(|p| p.q2.max_dist(Quaternion::ONE) < MATCH_TOL) {
        Ambient::Su2
    } else {
        Ambient::Su2xSu2
    };

    let mut elements = vec![UnitQuaternionPair::IDENTITY];
    let mut lookup = ElementLookup::default();
    lookup.insert(elements[0], 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = pair_mul(elements[x], *s);
            if lookup.find(y, &elements).is_none() {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                lookup.insert(y, elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    let gen_indices = gens
        .iter()
        .map(|&s| lookup.find(s, &elements).expect("generator is a product of itself"))
        .collect();
    check_separation(&elements)?;
    let mut g = FiniteSubgroup {
        elements,
        lookup,
        inverses: Vec::new(),
        minus_one_index: None,
        generator_indices: gen_indices,
        ambient,
    };
    g.finish()?;
    Ok(g)
}

/// Index of `(−1, −1)` (for SU(2) groups, of `−1`), if present.
pub fn central_minus_one(g: &FiniteSubgroup) -> Option<usize> {
    match g.ambient {
        Ambient::Su2xSu2 => g.minus_one_index,
        Ambient::Su2 => g.index_of(UnitQuaternionPair::su2(-Quaternion::ONE)),
    }
}

/// Partition of a group into conjugacy classes.
///
/// Classes are numbered by their smallest element index, so class 0 is `{identity}`.
#[derive(Debug, Clone)]
pub struct ConjugacyPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ConjugacyPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// Class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }
}

/// Conjugacy classes as orbits under conjugation by the generators.
pub fn conjugacy_classes(g: &FiniteSubgroup) -> ConjugacyPartition {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let conjugators: Vec<(UnitQuaternionPair, UnitQuaternionPair)> = g
        .generator_indices
        .iter()
        .map(|&s| (g.elements[s], g.elements[g.inverses[s]]))
        .collect();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = classes.len();
        class_of[start] = c;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(s, s_inv) in &conjugators {
                let y = pair_mul(pair_mul(s, g.elements[x]), s_inv);
                let iy = g.index_of(y).expect("conjugate stays in the group");
                if class_of[iy] == usize::MAX {
                    class_of[iy] = c;
                    members.push(iy);
                    stack.push(iy);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let inverse_class = classes.iter().map(|cl| class_of[g.inverses[cl[0]]]).collect();
    ConjugacyPartition { classes, class_of, inverse_class }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure_order(g: &FiniteSubgroup) -> usize {
        let gens: Vec<_> = g.generator_indices().iter().map(|&i| g.element(i)).collect();
        from_generators(&gens, ORDER_CAP).unwrap().order()
    }

    #[test]
    fn cyclic_orders() {
        let c1 = cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert!(central_minus_one(&c1).is_none());
        let c2 = cyclic(2).unwrap();
        assert_eq!(c2.order(), 2);
        assert!(central_minus_one(&c2).is_some());
        let c4 = cyclic(4).unwrap();
        for q in [Quaternion::ONE, -Quaternion::ONE, Quaternion::I, -Quaternion::I] {
            assert!(c4.index_of(UnitQuaternionPair::su2(q)).is_some());
        }
        assert!(central_minus_one(&cyclic(3).unwrap()).is_none());
        assert_eq!(cyclic(1024).unwrap().order(), 1024);
        assert!(matches!(cyclic(0), Err(Error::OutOfRange(_))));
        assert!(matches!(cyclic(1025), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn dihedral_orders_match_generator_closure() {
        for n in 1..=6 {
            let g = binary_dihedral(n).unwrap();
            assert_eq!(g.order(), 4 * n as usize);
            assert_eq!(closure_order(&g), g.order());
            assert!(central_minus_one(&g).is_some());
        }
        let q8 = binary_dihedral(2).unwrap();
        for q in [Quaternion::I, Quaternion::J, Quaternion::K] {
            assert!(q8.index_of(UnitQuaternionPair::su2(q)).is_some());
            assert!(q8.index_of(UnitQuaternionPair::su2(-q)).is_some());
        }
        assert!(binary_dihedral(0).is_err());
        assert!(binary_dihedral(257).is_err());
    }

    #[test]
    fn polyhedral_orders() {
        for (g, n) in [
            (binary_tetrahedral().unwrap(), 24),
            (binary_octahedral().unwrap(), 48),
            (binary_icosahedral().unwrap(), 120),
        ] {
            assert_eq!(g.order(), n);
            assert_eq!(closure_order(&g), n);
        }
    }

    #[test]
    fn icosian_keys_are_distinct() {
        let g = binary_icosahedral().unwrap();
        let mut keys: Vec<_> = g.elements().iter().map(|&p| canonical_key(p, 1e-6)).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 120);
    }

    #[test]
    fn products_and_diagonals() {
        let c2 = cyclic(2).unwrap();
        let c4 = cyclic(4).unwrap();
        assert_eq!(product(&c2, &c2).unwrap().order(), 4);
        let p = product(&c2, &c4).unwrap();
        assert!(central_minus_one(&p).is_some());
        let d = diagonal(&c2).unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(d.minus_one_index(), Some(1));
        let t = binary_tetrahedral().unwrap();
        assert_eq!(diagonal(&t).unwrap().order(), 24);
        assert!(central_minus_one(&diagonal(&t).unwrap()).is_some());
        assert!(matches!(product(&p, &c2), Err(Error::Ambient(_))));
        let i = binary_icosahedral().unwrap();
        assert_eq!(product(&t, &i).unwrap().order(), 2880);
    }

    #[test]
    fn generator_closures() {
        assert_eq!(from_generators(&[], 10).unwrap().order(), 1);
        let g = from_generators(&[UnitQuaternionPair::su2(Quaternion::I)], 100).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.ambient(), Ambient::Su2);
        let z = Quaternion::exp_i(PI / 3.0);
        let g = from_generators(&[UnitQuaternionPair::new(z, z)], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.ambient(), Ambient::Su2xSu2);
        // an irrational rotation never closes
        let z = Quaternion::exp_i(1.0);
        assert!(matches!(
            from_generators(&[UnitQuaternionPair::su2(z)], 2000),
            Err(Error::CapExceeded { .. }) | Err(Error::Separation(..))
        ));
        let bad = UnitQuaternionPair::su2(Quaternion::new(1.1, 0.0, 0.0, 0.0));
        assert!(matches!(from_generators(&[bad], 10), Err(Error::Input(_))));
    }

    #[test]
    fn class_counts() {
        for n in [1, 2, 5, 12] {
            assert_eq!(conjugacy_classes(&cyclic(n).unwrap()).len(), n as usize);
        }
        for n in 1..=8 {
            assert_eq!(conjugacy_classes(&binary_dihedral(n).unwrap()).len(), n as usize + 3);
        }
        assert_eq!(conjugacy_classes(&binary_tetrahedral().unwrap()).len(), 7);
        assert_eq!(conjugacy_classes(&binary_octahedral().unwrap()).len(), 8);
        assert_eq!(conjugacy_classes(&binary_icosahedral().unwrap()).len(), 9);
    }

    #[test]
    fn classes_closed_under_full_conjugation() {
        let g = binary_octahedral().unwrap();
        let part = conjugacy_classes(&g);
        assert_eq!(part.class(0), &[0]);
        assert_eq!(part.class_sizes().iter().sum::<usize>(), g.order());
        for x in 0..g.order() {
            for h in 0..g.order() {
                let y = g.mul_index(g.mul_index(h, x), g.inverse_index(h));
                assert_eq!(part.class_of(y), part.class_of(x));
            }
        }
    }
}
