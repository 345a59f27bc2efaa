//! Unit quaternions and pairs of unit quaternions.
//!
//! A quaternion `a + bi + cj + dk` of unit norm is identified with the SU(2) matrix
//! `[[a + bi, c + di], [-c + di, a - bi]]`, so the trace of that matrix is `2a`.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    /// `cos(theta) + sin(theta) i`
    pub fn exp_i(theta: f64) -> Self {
        Quaternion::new(theta.cos(), theta.sin(), 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn normalized(self) -> Self {
        let n = self.norm_sqr().sqrt();
        Quaternion::new(self.a / n, self.b / n, self.c / n, self.d / n)
    }

    pub fn coords(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Max-coordinate (Chebyshev) distance.
    pub fn max_dist(self, other: Quaternion) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_unit(self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() < tol
    }
}

/// Raw Hamilton product, no renormalization.
impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, y: Quaternion) -> Quaternion {
        let x = self;
        Quaternion::new(
            x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
            x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
            x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// Hamilton product of two unit quaternions, renormalized to unit norm.
pub fn qmul(x: Quaternion, y: Quaternion) -> Quaternion {
    (x * y).normalized()
}

/// Trace of the SU(2) matrix of `q`.
pub fn su2_trace(q: Quaternion) -> f64 {
    2.0 * q.a
}

/// An element of SU(2)×SU(2). SU(2) itself is embedded as `(q, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitQuaternionPair {
    pub q1: Quaternion,
    pub q2: Quaternion,
}

impl UnitQuaternionPair {
    pub const IDENTITY: UnitQuaternionPair = UnitQuaternionPair {
        q1: Quaternion::ONE,
        q2: Quaternion::ONE,
    };
    pub const MINUS_ONE: UnitQuaternionPair = UnitQuaternionPair {
        q1: Quaternion::new(-1.0, 0.0, 0.0, 0.0),
        q2: Quaternion::new(-1.0, 0.0, 0.0, 0.0),
    };

    pub const fn new(q1: Quaternion, q2: Quaternion) -> Self {
        UnitQuaternionPair { q1, q2 }
    }

    pub const fn su2(q: Quaternion) -> Self {
        UnitQuaternionPair { q1: q, q2: Quaternion::ONE }
    }

    pub fn inverse(self) -> Self {
        UnitQuaternionPair::new(self.q1.conj(), self.q2.conj())
    }

    pub fn coords(self) -> [f64; 8] {
        let [a, b, c, d] = self.q1.coords();
        let [e, f, g, h] = self.q2.coords();
        [a, b, c, d, e, f, g, h]
    }

    pub fn from_coords(x: [f64; 8]) -> Self {
        UnitQuaternionPair::new(
            Quaternion::new(x[0], x[1], x[2], x[3]),
            Quaternion::new(x[4], x[5], x[6], x[7]),
        )
    }

    pub fn max_dist(self, other: UnitQuaternionPair) -> f64 {
        self.q1.max_dist(other.q1).max(self.q2.max_dist(other.q2))
    }

    pub fn normalized(self) -> Self {
        UnitQuaternionPair::new(self.q1.normalized(), self.q2.normalized())
    }
}

impl Mul for UnitQuaternionPair {
    type Output = UnitQuaternionPair;

    fn mul(self, rhs: UnitQuaternionPair) -> UnitQuaternionPair {
        pair_mul(self, rhs)
    }
}

/// Componentwise renormalized product.
pub fn pair_mul(x: UnitQuaternionPair, y: UnitQuaternionPair) -> UnitQuaternionPair {
    UnitQuaternionPair::new(qmul(x.q1, y.q1), qmul(x.q2, y.q2))
}

/// Grid-cell coordinates of a pair; see [`canonical_key`].
pub type CanonicalKey = [i64; 8];

/// Snap every coordinate of `p` to the nearest multiple of `grid`.
///
/// Two pairs closer than `grid / 2` to the same grid point share a key. Lookups
/// that must tolerate noise straddling a cell boundary probe the neighbouring
/// cell as well (see `group::ElementLookup`).
pub fn canonical_key(p: UnitQuaternionPair, grid: f64) -> CanonicalKey {
    debug_assert!(grid > 0.0);
    p.coords().map(|x| (x / grid).round() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: Quaternion, y: Quaternion) -> bool {
        x.max_dist(y) < 1e-12
    }

    #[test]
    fn hamilton_relations() {
        use Quaternion as Q;
        assert!(close(qmul(Q::I, Q::J), Q::K));
        assert!(close(qmul(Q::J, Q::K), Q::I));
        assert!(close(qmul(Q::K, Q::I), Q::J));
        assert!(close(qmul(Q::J, Q::I), -Q::K));
        assert!(close(qmul(Q::I, Q::I), -Q::ONE));
        let q = Quaternion::new(0.5, -0.5, 0.5, 0.5);
        assert!(close(qmul(Q::ONE, q), q));
        assert!(close(qmul(q, Q::ONE), q));
    }

    #[test]
    fn omega_squared() {
        // (a + v)^2 = a^2 - |v|^2 + 2 a v with a = 1/2, v = (i + j + k)/2
        let w = Quaternion::new(0.5, 0.5, 0.5, 0.5);
        assert!(close(qmul(w, w), Quaternion::new(-0.5, 0.5, 0.5, 0.5)));
    }

    #[test]
    fn pair_products() {
        let one = UnitQuaternionPair::IDENTITY;
        let g = UnitQuaternionPair::new(Quaternion::I, Quaternion::new(0.5, 0.5, 0.5, 0.5));
        assert!(pair_mul(one, g).max_dist(g) < 1e-12);
        let x = UnitQuaternionPair::su2(Quaternion::I);
        let y = UnitQuaternionPair::new(Quaternion::ONE, Quaternion::J);
        let xy = pair_mul(x, y);
        assert!(xy.max_dist(UnitQuaternionPair::new(Quaternion::I, Quaternion::J)) < 1e-12);
        let w = Quaternion::new(0.5, 0.5, 0.5, 0.5);
        let p = UnitQuaternionPair::new(w, Quaternion::I);
        let pp = pair_mul(p, p);
        let expected = UnitQuaternionPair::new(
            Quaternion::new(-0.5, 0.5, 0.5, 0.5),
            Quaternion::new(-1.0, 0.0, 0.0, 0.0),
        );
        assert!(pp.max_dist(expected) < 1e-12);
    }

    #[test]
    fn traces() {
        assert_eq!(su2_trace(Quaternion::ONE), 2.0);
        assert_eq!(su2_trace(-Quaternion::ONE), -2.0);
        assert_eq!(su2_trace(Quaternion::I), 0.0);
    }

    #[test]
    fn keys() {
        let p = UnitQuaternionPair::new(Quaternion::new(0.6, 0.8, 0.0, 0.0), Quaternion::ONE);
        let mut q = p;
        q.q1.a += 1e-12;
        q.q2.d -= 1e-12;
        assert_eq!(canonical_key(p, 1e-6), canonical_key(q, 1e-6));
        assert_ne!(
            canonical_key(UnitQuaternionPair::IDENTITY, 1e-6),
            canonical_key(UnitQuaternionPair::MINUS_ONE, 1e-6)
        );
    }
}
