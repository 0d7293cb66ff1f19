//! Singular relations `aτ₁ + bτ₂ + cτ₃ + d(τ₂² − τ₁τ₃) + e = 0` and their
//! rational / analytic representations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::HumbertError;
use crate::exactarith::FieldElement;
use crate::siegel::{Mat2, SiegelPoint, SymplecticMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct SingularRelation {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
}

impl fmt::Display for SingularRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.a, self.b, self.c, self.d, self.e)
    }
}

impl SingularRelation {
    pub const fn new(a: i64, b: i64, c: i64, d: i64, e: i64) -> Self {
        SingularRelation { a, b, c, d, e }
    }

    pub fn from_array(v: [i64; 5]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4])
    }

    pub fn to_array(&self) -> [i64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    pub fn from_bigints(v: &[BigInt]) -> Result<Self, HumbertError> {
        let g = |i: usize| v[i].to_i64().ok_or(HumbertError::Overflow);
        Ok(Self::new(g(0)?, g(1)?, g(2)?, g(3)?, g(4)?))
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(|&x| x == 0)
    }

    pub fn is_linear(&self) -> bool {
        self.d == 0
    }

    pub fn content(&self) -> i64 {
        self.to_array().iter().fold(0i64, |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Divides out the content and makes the first nonzero coordinate positive.
    pub fn canonical(&self) -> Self {
        let g = self.content();
        if g == 0 {
            return *self;
        }
        let first = self.to_array().into_iter().find(|&x| x != 0).unwrap();
        let s = if first < 0 { -g } else { g };
        Self::from_array(self.to_array().map(|x| x / s))
    }

    pub fn neg(&self) -> Self {
        Self::from_array(self.to_array().map(|x| -x))
    }

    /// `Δ = b² − 4(ac + de)`.
    pub fn discriminant(&self) -> i128 {
        bilinear(self, self)
    }

    /// `tr` and `det` of the analytic representation: `(b, ac + de)`.
    pub fn trace_det(&self) -> (i64, i128) {
        (self.b, self.a as i128 * self.c as i128 + self.d as i128 * self.e as i128)
    }

    /// The normalized relation of discriminant `delta` (`delta ≡ 0, 1 mod 4`).
    pub fn normalized(delta: i128) -> Option<Self> {
        let q = |x: i128| i64::try_from(x).ok();
        match delta.rem_euclid(4) {
            0 => Some(Self::new(q(-delta / 4)?, 0, 1, 0, 0)),
            1 => Some(Self::new(q((1 - delta) / 4)?, 1, 1, 0, 0)),
            _ => None,
        }
    }
}

/// Polar form of `Δ`: `B(x, x) = Δ(x)`.
pub fn bilinear(x: &SingularRelation, y: &SingularRelation) -> i128 {
    let w = |v: i64| v as i128;
    w(x.b) * w(y.b) - 2 * (w(x.a) * w(y.c) + w(x.c) * w(y.a)) - 2 * (w(x.d) * w(y.e) + w(x.e) * w(y.d))
}

pub fn discriminant(rel: &SingularRelation) -> i128 {
    rel.discriminant()
}

/// Exact evaluation of the relation at `tau`.
pub fn relation_value(tau: &SiegelPoint, rel: &SingularRelation) -> FieldElement {
    let k = tau.tau1().field();
    let n = |x: i64| FieldElement::from_int(k, x);
    let mut s = &n(rel.a) * tau.tau1();
    s = &s + &(&n(rel.b) * tau.tau2());
    s = &s + &(&n(rel.c) * tau.tau3());
    s = &s - &(&n(rel.d) * &tau.det());
    &s + &n(rel.e)
}

pub fn verify_relation(tau: &SiegelPoint, rel: &SingularRelation) -> bool {
    relation_value(tau, rel).is_zero()
}

/// `R = (A B; C ᵗA)` with `A = (0 a; −c b)`, `B = (0 d; −d 0)`, `C = (0 e; −e 0)`.
pub fn rel_to_rational_rep(rel: &SingularRelation) -> [[i64; 4]; 4] {
    let SingularRelation { a, b, c, d, e } = *rel;
    [[0, a, 0, d], [-c, b, -d, 0], [0, e, 0, -c], [-e, 0, a, b]]
}

/// `ρ_a = τB + ᵗA`.
pub fn analytic_rep(rel: &SingularRelation, tau: &SiegelPoint) -> Result<Mat2, HumbertError> {
    if !verify_relation(tau, rel) {
        return Err(HumbertError::RelationNotSatisfied);
    }
    let k = tau.tau1().field();
    let n = |x: i64| FieldElement::from_int(k, x);
    let d = n(rel.d);
    Ok([
        [-&(&d * tau.tau2()), &(&d * tau.tau1()) - &n(rel.c)],
        [&n(rel.a) - &(&d * tau.tau3()), &(&d * tau.tau2()) + &n(rel.b)],
    ])
}

fn mul4(x: &[[i128; 4]; 4], y: &[[i128; 4]; 4]) -> Result<[[i128; 4]; 4], HumbertError> {
    let mut r = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut s: i128 = 0;
            for k in 0..4 {
                s = x[i][k]
                    .checked_mul(y[k][j])
                    .and_then(|t| s.checked_add(t))
                    .ok_or(HumbertError::Overflow)?;
            }
            r[i][j] = s;
        }
    }
    Ok(r)
}

fn widen(m: &[[i64; 4]; 4]) -> [[i128; 4]; 4] {
    m.map(|r| r.map(|x| x as i128))
}

/// The relation satisfied by `Mτ` whenever `rel` is satisfied by `τ`, read off
/// from `ᵗM⁻¹ R ᵗM` after removing its scalar part.
pub fn transform_relation(m: &SymplecticMatrix, rel: &SingularRelation) -> Result<SingularRelation, HumbertError> {
    let r = widen(&rel_to_rational_rep(rel));
    let mt = widen(m.transpose().entries());
    let mti = widen(m.inverse().transpose().entries());
    let mut c = mul4(&mul4(&mti, &r)?, &mt)?;
    let a1 = c[0][0];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] -= a1;
    }
    let shape_ok = (0..2).all(|i| (0..2).all(|j| c[i][j + 2] == -c[j][i + 2] && c[i + 2][j] == -c[j + 2][i] && c[i + 2][j + 2] == c[j][i]));
    if !shape_ok || c[0][0] != 0 {
        return Err(HumbertError::ShapeViolation);
    }
    let t = |x: i128| i64::try_from(x).map_err(|_| HumbertError::Overflow);
    Ok(SingularRelation::new(t(c[0][1])?, t(c[1][1])?, t(-c[1][0])?, t(c[0][3])?, t(c[2][1])?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::rational::int;
    use crate::exactarith::NumberField;
    use crate::siegel::{is_siegel, sp4_act, sp4_random_word};

    fn diag_i_2i() -> SiegelPoint {
        let k = NumberField::quadratic(-1).unwrap();
        let i = FieldElement::generator(&k);
        is_siegel(i.clone(), FieldElement::zero(&k), i.scale(&int(2))).unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(SingularRelation::new(-1, 1, 1, 0, 0).discriminant(), 5);
        assert_eq!(SingularRelation::default().discriminant(), 0);
        assert_eq!(SingularRelation::new(1, 1, -1, 0, 0).discriminant(), 5);
        assert_eq!(SingularRelation::normalized(5), Some(SingularRelation::new(-1, 1, 1, 0, 0)));
        assert_eq!(SingularRelation::normalized(8), Some(SingularRelation::new(-2, 0, 1, 0, 0)));
        assert_eq!(SingularRelation::normalized(7), None);
    }

    #[test]
    fn rational_rep_blocks() {
        let r = rel_to_rational_rep(&SingularRelation::new(0, 24, 0, 1, 114));
        assert_eq!(r, [[0, 0, 0, 1], [0, 24, -1, 0], [0, 114, 0, 0], [-114, 0, 0, 24]]);
    }

    #[test]
    fn analytic_rep_trace_det() {
        let tau = diag_i_2i();
        let rel = SingularRelation::new(2, 0, -1, 0, 0);
        assert!(verify_relation(&tau, &rel));
        let rho = analytic_rep(&rel, &tau).unwrap();
        let k = tau.tau1().field();
        assert_eq!(rho[0][1], FieldElement::from_int(k, 1));
        assert_eq!(rho[1][0], FieldElement::from_int(k, 2));
        assert!(analytic_rep(&SingularRelation::new(1, 0, 0, 0, 0), &tau).is_err());
    }

    #[test]
    fn transform_commutes_with_action() {
        let tau = diag_i_2i();
        let rels = [SingularRelation::new(2, 0, -1, 0, 0), SingularRelation::new(0, 1, 0, 0, 0), SingularRelation::new(0, 0, 0, 1, -2)];
        for seed in 0..20 {
            let m = sp4_random_word(8, seed);
            let t2 = sp4_act(&m, &tau).unwrap();
            for rel in &rels {
                assert!(verify_relation(&tau, rel));
                let r2 = transform_relation(&m, rel).unwrap();
                assert!(verify_relation(&t2, &r2), "seed {seed} rel {rel}");
                assert_eq!(r2.discriminant(), rel.discriminant());
            }
        }
        assert_eq!(transform_relation(&SymplecticMatrix::identity(), &rels[0]).unwrap(), rels[0]);
    }
}
