//! Irreducible character tables from class-algebra structure constants.
//!
//! The class sums `K_C` span the centre of the group algebra and multiply as
//! `K_C K_D = Σ_E a_CDE K_E`. Each irreducible character determines a common
//! eigenvector of the operators "multiply by `K_C`". In the orthonormal basis
//! `K_C / √|C|` these operators are normal, with `K_C` adjoint to `K_{C⁻¹}`, so a
//! random real combination of their Hermitian and anti-Hermitian parts is a
//! Hermitian matrix whose (generically simple) eigenvectors are exactly the
//! central idempotents.

use std::cmp::Ordering;

use faer::{Mat, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{snap, Error, Result};
use crate::group::{central_minus_one, Ambient, ConjugacyPartition, FiniteSubgroup};
use crate::quat::su2_trace;

pub type C64 = faer::c64;

pub const DEFAULT_TOL: f64 = 1e-6;
const MAX_RETRIES: u32 = 32;
const RESIDUAL_BLOCK: usize = 32;

/// Sign of `χ(−1) / χ(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn from_sign(s: i64) -> Option<Parity> {
        match s {
            1 => Some(Parity::Even),
            -1 => Some(Parity::Odd),
            _ => None,
        }
    }
}

/// A complex-valued function on conjugacy classes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<C64>,
}

impl ClassFunction {
    pub fn new(values: Vec<C64>) -> Self {
        ClassFunction { values }
    }

    pub fn at(&self, class: usize) -> C64 {
        self.values[class]
    }

    /// Pointwise product.
    pub fn product(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(self.values.iter().zip(&other.values).map(|(x, y)| x * y).collect())
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    values: Vec<Vec<C64>>,
    degrees: Vec<u32>,
    class_sizes: Vec<usize>,
    parities: Option<Vec<Parity>>,
    trivial_row: usize,
    order: usize,
}

impl CharacterTable {
    /// Number of irreducibles (= number of classes).
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn value(&self, row: usize, class: usize) -> C64 {
        self.values[row][class]
    }

    pub fn row(&self, row: usize) -> ClassFunction {
        ClassFunction::new(self.values[row].clone())
    }

    pub fn rows(&self) -> &[Vec<C64>] {
        &self.values
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn trivial_row(&self) -> usize {
        self.trivial_row
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    /// Parity of every row, present iff the group contains its central `−1`.
    pub fn parities(&self) -> Option<&[Parity]> {
        self.parities.as_deref()
    }

    /// Largest deviation of the row Gram matrix from the identity.
    pub fn row_orthogonality_error(&self) -> f64 {
        let r = self.len();
        let n = self.order as f64;
        let x = Mat::<C64>::from_fn(r, r, |i, c| self.values[i][c] * (self.class_sizes[c] as f64 / n).sqrt());
        let gram = &x * x.adjoint();
        max_deviation(&gram, |_| 1.0)
    }

    /// Largest deviation of `Σ_i χ_i(C) conj χ_i(D)` from `δ_CD |G|/|C|`.
    pub fn column_orthogonality_error(&self) -> f64 {
        let r = self.len();
        let x = Mat::<C64>::from_fn(r, r, |i, c| self.values[i][c]);
        let gram = x.transpose() * x.conjugate();
        max_deviation(&gram, |c| self.order as f64 / self.class_sizes[c] as f64)
    }
}

/// `max |m[i][j] − δ_ij diag(i)|`.
fn max_deviation(m: &Mat<C64>, diag: impl Fn(usize) -> f64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let target = if i == j { diag(i) } else { 0.0 };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst
}

fn hermitian(x: &[C64], y: &[C64], sizes: &[usize], order: usize) -> C64 {
    x.iter()
        .zip(y)
        .zip(sizes)
        .map(|((a, b), &s)| a * b.conj() * s as f64)
        .sum::<C64>()
        / order as f64
}

/// `(1/|G|) Σ_C |C| x(C) conj(y(C))`.
pub fn inner_product(x: &ClassFunction, y: &ClassFunction, part: &ConjugacyPartition) -> C64 {
    hermitian(&x.values, &y.values, &part.class_sizes(), part.group_order())
}

/// [`inner_product`] snapped to an integer; fails if the value is not within `tol`
/// of a (real) integer.
pub fn inner_product_int(
    x: &ClassFunction,
    y: &ClassFunction,
    part: &ConjugacyPartition,
    tol: f64,
) -> Result<i64> {
    let v = inner_product(x, y, part);
    if v.im.abs() >= tol {
        return Err(Error::Snap { what: "inner product (imaginary part)".into(), value: v.im, tol });
    }
    snap(v.re, tol, || "inner product".into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaturalFactor {
    First,
    Second,
    Both,
}

/// Character of the defining representation: `W₁`, `W₂`, or `W = W₁ ⊕ W₂`.
///
/// For SU(2) groups only `First` and `Both` are meaningful and coincide.
pub fn natural_character(
    g: &FiniteSubgroup,
    part: &ConjugacyPartition,
    factor: NaturalFactor,
) -> Result<ClassFunction> {
    if g.ambient() == Ambient::Su2 && factor == NaturalFactor::Second {
        return Err(Error::Ambient("W₂ is undefined for an SU(2) group".into()));
    }
    let values = (0..part.len())
        .map(|c| {
            let p = g.element(part.representative(c));
            let v = match (g.ambient(), factor) {
                (Ambient::Su2, _) | (_, NaturalFactor::First) => su2_trace(p.q1),
                (_, NaturalFactor::Second) => su2_trace(p.q2),
                (_, NaturalFactor::Both) => su2_trace(p.q1) + su2_trace(p.q2),
            };
            C64::new(v, 0.0)
        })
        .collect();
    Ok(ClassFunction::new(values))
}

/// Parity of a class function at the central `−1`.
pub fn class_function_parity(
    f: &ClassFunction,
    g: &FiniteSubgroup,
    part: &ConjugacyPartition,
    tol: f64,
) -> Result<Parity> {
    let m = central_minus_one(g)
        .ok_or_else(|| Error::Precondition("group does not contain −1".into()))?;
    let at_one = f.at(0);
    let at_minus = f.at(part.class_of(m));
    if at_one.norm() < tol {
        return Err(Error::Invariant("parity of a class function vanishing at 1".into()));
    }
    if (at_minus - at_one).norm() < tol {
        Ok(Parity::Even)
    } else if (at_minus + at_one).norm() < tol {
        Ok(Parity::Odd)
    } else {
        Err(Error::Invariant(format!(
            "χ(−1) = {at_minus} is neither +χ(1) nor −χ(1) = {at_one}"
        )))
    }
}

/// Parity of irreducible `row`: `+1` if `χ(−1) = χ(1)`, `−1` if `χ(−1) = −χ(1)`.
pub fn minus_one_parity(
    row: usize,
    g: &FiniteSubgroup,
    part: &ConjugacyPartition,
    table: &CharacterTable,
) -> Result<Parity> {
    class_function_parity(&table.row(row), g, part, DEFAULT_TOL)
}

/// Character table with the default tolerance.
pub fn character_table(
    g: &FiniteSubgroup,
    part: &ConjugacyPartition,
    seed: u64,
) -> Result<CharacterTable> {
    character_table_with_tol(g, part, seed, DEFAULT_TOL)
}

/// Burnside's method: diagonalize a random combination of class matrices.
///
/// Rows come out in canonical order: ascending degree, then even parity before
/// odd (when `−1 ∈ G`), then descending lexicographic order of the class values
/// rounded to `1e-6`, which puts the trivial character first.
pub fn character_table_with_tol(
    g: &FiniteSubgroup,
    part: &ConjugacyPartition,
    seed: u64,
    tol: f64,
) -> Result<CharacterTable> {
    let n = g.order();
    let r = part.len();
    let sizes = part.class_sizes();

    // landing[e * n + x] = class of x⁻¹ z_e, where z_e represents class e.
    let mut landing = vec![0u32; r * n];
    for e in 0..r {
        let z = part.representative(e);
        for x in 0..n {
            landing[e * n + x] = part.class_of(g.mul_index(g.inverse_index(x), z)) as u32;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempt = 0;
    let eigvecs = loop {
        if attempt == MAX_RETRIES {
            return Err(Error::Eigen(format!(
                "eigenvalues of the class-matrix combination collided {MAX_RETRIES} times"
            )));
        }
        attempt += 1;
        let weights: Vec<C64> = (0..r)
            .map(|c| {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                z / sizes[c] as f64
            })
            .collect();
        // N = Σ_C w_C A_C in the basis K_C, then conjugated into the orthonormal basis.
        let mut m = Mat::<C64>::zeros(r, r);
        for e in 0..r {
            for x in 0..n {
                let d = landing[e * n + x] as usize;
                m[(e, d)] += weights[part.class_of(x)];
            }
        }
        for e in 0..r {
            for d in 0..r {
                m[(e, d)] *= (sizes[e] as f64 / sizes[d] as f64).sqrt();
            }
        }
        let h = &m + m.adjoint();
        let eig = h
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::Eigen(format!("{e:?}")))?;
        // eigenvalues come back sorted ascending
        let vals: Vec<f64> = (0..r).map(|k| eig.S()[k].re).collect();
        let gap = vals.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        if gap >= tol {
            break eig.U().to_owned();
        }
    };

    let mut rows: Vec<(u32, Vec<C64>)> = Vec::with_capacity(r);
    let mut ys: Vec<Vec<C64>> = Vec::with_capacity(r);
    for k in 0..r {
        let w = eigvecs.col(k);
        let mut y: Vec<C64> = (0..r).map(|d| w[d] / (sizes[d] as f64).sqrt()).collect();
        let y0 = y[0];
        if y0.norm() < 1e-12 {
            return Err(Error::Eigen("eigenvector vanishes on the identity class".into()));
        }
        y.iter_mut().for_each(|v| *v /= y0);
        let weight: f64 = (0..r).map(|d| sizes[d] as f64 * y[d].norm_sqr()).sum();
        let deg = snap((n as f64 / weight).sqrt(), tol, || "character degree".into())?;
        if deg < 1 {
            return Err(Error::Invariant("non-positive character degree".into()));
        }
        let values = (0..r).map(|c| y[c].conj() * deg as f64).collect();
        rows.push((deg as u32, values));
        ys.push(y);
    }

    check_residuals(&landing, part, n, &ys, tol)?;

    let parities = match central_minus_one(g) {
        Some(m) => {
            let cm = part.class_of(m);
            let p = rows
                .iter()
                .map(|(d, vals)| {
                    let ratio = vals[cm].re / *d as f64;
                    let s = snap(ratio, tol, || "χ(−1)/χ(1)".into())?;
                    Parity::from_sign(s).ok_or_else(|| {
                        Error::Invariant(format!("χ(−1)/χ(1) = {ratio} is not ±1"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Some(p)
        }
        None => None,
    };

    let mut perm: Vec<usize> = (0..r).collect();
    let rounded: Vec<Vec<(i64, i64)>> = rows
        .iter()
        .map(|(_, v)| v.iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect())
        .collect();
    perm.sort_by(|&a, &b| {
        rows[a]
            .0
            .cmp(&rows[b].0)
            .then_with(|| match &parities {
                Some(p) => p[a].cmp(&p[b]),
                None => Ordering::Equal,
            })
            .then_with(|| rounded[b].cmp(&rounded[a]))
    });

    let degrees: Vec<u32> = perm.iter().map(|&k| rows[k].0).collect();
    let values: Vec<Vec<C64>> = perm.iter().map(|&k| rows[k].1.clone()).collect();
    let parities = parities.map(|p| perm.iter().map(|&k| p[k]).collect());

    let sum_sq: u64 = degrees.iter().map(|&d| d as u64 * d as u64).sum();
    if sum_sq != n as u64 {
        return Err(Error::Invariant(format!("Σ d² = {sum_sq} but |G| = {n}")));
    }
    let trivial_row = values
        .iter()
        .position(|row| row.iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < tol))
        .ok_or_else(|| Error::Invariant("no trivial character".into()))?;

    let table = CharacterTable { values, degrees, class_sizes: sizes, parities, trivial_row, order: n };
    let err = table.row_orthogonality_error();
    if err >= tol {
        return Err(Error::Invariant(format!("row orthogonality violated by {err:e}")));
    }
    Ok(table)
}

/// Verify `A_C y = ω(C) y` for every class matrix and every extracted eigenvector.
fn check_residuals(
    landing: &[u32],
    part: &ConjugacyPartition,
    n: usize,
    ys: &[Vec<C64>],
    tol: f64,
) -> Result<()> {
    let r = part.len();
    let class_of: Vec<usize> = (0..n).map(|x| part.class_of(x)).collect();
    // Split re/im rows indexed [d * r + k] = y_k(d), so each landing step adds
    // one contiguous run and the residual arithmetic vectorizes.
    let mut y_re = vec![0.0f64; r * r];
    let mut y_im = vec![0.0f64; r * r];
    let mut om_re = vec![0.0f64; r * r];
    let mut om_im = vec![0.0f64; r * r];
    for (k, y) in ys.iter().enumerate() {
        for d in 0..r {
            y_re[d * r + k] = y[d].re;
            y_im[d * r + k] = y[d].im;
            let om = y[part.inverse_class(d)] * part.class_size(d) as f64;
            om_re[d * r + k] = om.re;
            om_im[d * r + k] = om.im;
        }
    }
    // residual[c * r + k] accumulates |A_C y_k - ω_k(C) y_k|² over rows e.
    // Eigenvectors are processed in blocks so the accumulators stay in cache.
    let mut residual = vec![0.0f64; r * r];
    let block = RESIDUAL_BLOCK.min(r);
    let mut acc_re = vec![0.0f64; r * block];
    let mut acc_im = vec![0.0f64; r * block];
    for k0 in (0..r).step_by(block) {
        let kn = block.min(r - k0);
        for e in 0..r {
            acc_re.iter_mut().for_each(|a| *a = 0.0);
            acc_im.iter_mut().for_each(|a| *a = 0.0);
            for (x, &d) in landing[e * n..(e + 1) * n].iter().enumerate() {
                let c = class_of[x];
                let src = d as usize * r + k0;
                add_assign(&mut acc_re[c * block..c * block + kn], &y_re[src..src + kn]);
                add_assign(&mut acc_im[c * block..c * block + kn], &y_im[src..src + kn]);
            }
            let yr = &y_re[e * r + k0..e * r + k0 + kn];
            let yi = &y_im[e * r + k0..e * r + k0 + kn];
            for c in 0..r {
                let ar = &acc_re[c * block..c * block + kn];
                let ai = &acc_im[c * block..c * block + kn];
                let or = &om_re[c * r + k0..c * r + k0 + kn];
                let oi = &om_im[c * r + k0..c * r + k0 + kn];
                let res = &mut residual[c * r + k0..c * r + k0 + kn];
                accumulate_residual(res, ar, ai, or, oi, yr, yi);
            }
        }
    }
    if let Some((i, res)) = residual.iter().map(|v| v.sqrt()).enumerate().find(|(_, res)| *res >= tol) {
        return Err(Error::Eigen(format!(
            "class {} eigen-residual {res:e} exceeds {tol:e}",
            i / r
        )));
    }
    Ok(())
}

/// `res[j] += |a_j − o_j y_j|²` over split complex slices of equal length.
fn accumulate_residual(res: &mut [f64], ar: &[f64], ai: &[f64], or: &[f64], oi: &[f64], yr: &[f64], yi: &[f64]) {
    let n = res.len();
    let (ar, ai, or, oi, yr, yi) = (&ar[..n], &ai[..n], &or[..n], &oi[..n], &yr[..n], &yi[..n]);
    for j in 0..n {
        let dr = ar[j] - (or[j] * yr[j] - oi[j] * yi[j]);
        let di = ai[j] - (or[j] * yi[j] + oi[j] * yr[j]);
        res[j] += dr * dr + di * di;
    }
}

fn add_assign(dst: &mut [f64], src: &[f64]) {
    for (a, v) in dst.iter_mut().zip(src) {
        *a += v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{binary_icosahedral, binary_tetrahedral, conjugacy_classes, cyclic};

    fn table_of(g: &FiniteSubgroup) -> (ConjugacyPartition, CharacterTable) {
        let part = conjugacy_classes(g);
        let t = character_table(g, &part, 0).unwrap();
        (part, t)
    }

    #[test]
    fn order_two() {
        let g = cyclic(2).unwrap();
        let (_, t) = table_of(&g);
        assert_eq!(t.degrees(), &[1, 1]);
        let sign = t.row(1);
        assert!((sign.at(0) - 1.0).norm() < 1e-9);
        assert!((sign.at(1) + 1.0).norm() < 1e-9);
        assert_eq!(t.parities().unwrap(), &[Parity::Even, Parity::Odd]);
    }

    #[test]
    fn cyclic_four_is_powers_of_i() {
        let g = cyclic(4).unwrap();
        let (part, t) = table_of(&g);
        // element k of C4 is i^k; every row must be k -> i^{jk} for some j
        let mut seen = [false; 4];
        for row in t.rows() {
            let j = (0..4)
                .find(|&j| {
                    (0..4).all(|c| {
                        let k = part.representative(c);
                        (row[c] - C64::i().powu((j * k) as u32)).norm() < 1e-9
                    })
                })
                .expect("row is a character of C4");
            seen[j] = true;
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(t.trivial_row(), 0);
    }

    #[test]
    fn tetrahedral_degrees() {
        let (_, t) = table_of(&binary_tetrahedral().unwrap());
        let mut d = t.degrees().to_vec();
        d.sort();
        assert_eq!(d, vec![1, 1, 1, 2, 2, 2, 3]);
        assert!(t.row_orthogonality_error() < 1e-9);
        assert!(t.column_orthogonality_error() < 1e-9);
    }

    #[test]
    fn natural_character_values() {
        use crate::group::{diagonal, product};
        let c2 = cyclic(2).unwrap();
        let d = diagonal(&c2).unwrap();
        let part = conjugacy_classes(&d);
        let w = natural_character(&d, &part, NaturalFactor::Both).unwrap();
        assert!((w.at(0) - 4.0).norm() < 1e-12);
        assert!((w.at(part.class_of(1)) + 4.0).norm() < 1e-12);
        let c4 = cyclic(4).unwrap();
        let p = product(&c4, &c2).unwrap();
        let part = conjugacy_classes(&p);
        // element 1 * |C2| + 0 is (i, 1)
        let w1 = natural_character(&p, &part, NaturalFactor::First).unwrap();
        assert!(w1.at(part.class_of(2)).norm() < 1e-12);
        let gp = conjugacy_classes(&c4);
        assert!(natural_character(&c4, &gp, NaturalFactor::Second).is_err());
    }

    #[test]
    fn natural_rep_of_icosahedral_is_irreducible() {
        let g = binary_icosahedral().unwrap();
        let part = conjugacy_classes(&g);
        let w = natural_character(&g, &part, NaturalFactor::First).unwrap();
        assert_eq!(inner_product_int(&w, &w, &part, 1e-6).unwrap(), 1);
        // brute-force element sum agrees
        let brute: f64 =
            g.elements().iter().map(|p| su2_trace(p.q1).powi(2)).sum::<f64>() / g.order() as f64;
        assert!((brute - 1.0).abs() < 1e-9);
        assert_eq!(class_function_parity(&w, &g, &part, 1e-6).unwrap(), Parity::Odd);
    }

    #[test]
    fn parity_requires_minus_one() {
        let g = cyclic(3).unwrap();
        let (part, t) = table_of(&g);
        assert!(t.parities().is_none());
        assert!(matches!(minus_one_parity(0, &g, &part, &t), Err(Error::Precondition(_))));
    }

    #[test]
    fn snapping_failure_is_reported() {
        let g = cyclic(3).unwrap();
        let part = conjugacy_classes(&g);
        let half = ClassFunction::new(vec![C64::new(0.5, 0.0); 3]);
        let one = ClassFunction::new(vec![C64::new(1.0, 0.0); 3]);
        assert!(matches!(inner_product_int(&half, &one, &part, 1e-6), Err(Error::Snap { .. })));
    }
}
