//! The Hilbert-modular embedding `φ: ℍ² → H₂` for a real quadratic field, the
//! correspondence between linear singular relations and Hirzebruch–Zagier
//! equations, and the quaternion-splitting obstruction for Shimura curves.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactarith::rational::{int, rat, Rational};
use crate::exactarith::{FieldElement, FieldError, NumberField, QPoly};
use crate::humbert::{verify_relation, SingularRelation};
use crate::siegel::{is_siegel, SiegelError, SiegelPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HilbertError {
    #[error("{0} is not a fundamental discriminant congruent to 1 mod 4")]
    NotFundamental(i64),
    #[error("point is not in the upper half-plane")]
    NotInUpperHalfPlane,
    #[error("point does not satisfy the normalized relation")]
    RelationNotSatisfied,
    #[error("coefficient {0} is not an integer")]
    NonIntegralCoefficient(String),
    #[error("gamma is not in the codifferent")]
    InvalidSkewHermitian,
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("relation is trivial modulo the normalized relation")]
    TrivialRelation,
    #[error("relation is not linear")]
    NotLinear,
    #[error("element does not belong to the expected field")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Siegel(#[from] SiegelError),
}

fn is_squarefree(n: i64) -> bool {
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % (d * d) == 0 {
            return false;
        }
        if m % d == 0 {
            m /= d;
        }
        d += 1;
    }
    true
}

/// `K = ℚ(√Δ)` for a fundamental `Δ ≡ 1 (mod 4)`, generated by `w = (1+√Δ)/2`.
#[derive(Debug, Clone)]
pub struct RealQuadraticData {
    pub delta: i64,
    pub field: Arc<NumberField>,
}

impl RealQuadraticData {
    pub fn new(delta: i64) -> Result<Self, HilbertError> {
        if delta <= 1 || delta % 4 != 1 || !is_squarefree(delta) {
            return Err(HilbertError::NotFundamental(delta));
        }
        let k = (delta - 1) / 4;
        let root = (1.0 + (delta as f64).sqrt()) / 2.0;
        let field = NumberField::with_root_near(QPoly::from_ints(&[-k, -1, 1]), root, 0.0, "w")?;
        Ok(RealQuadraticData { delta, field })
    }

    /// `(Δ − 1)/4`, so that `w² = w + (Δ − 1)/4`.
    pub fn k(&self) -> i64 {
        (self.delta - 1) / 4
    }

    pub fn w(&self) -> FieldElement {
        FieldElement::generator(&self.field)
    }

    pub fn wbar(&self) -> FieldElement {
        &FieldElement::one(&self.field) - &self.w()
    }

    /// `√Δ = 2w − 1`.
    pub fn sqrt_delta(&self) -> FieldElement {
        FieldElement::from_ints(&self.field, &[-1, 2])
    }

    /// Norm of the different `∂_K = (√Δ)`.
    pub fn different_norm(&self) -> i64 {
        self.delta
    }

    /// `a + b w` as an element of `K`.
    pub fn element(&self, a: Rational, b: Rational) -> FieldElement {
        FieldElement::new(&self.field, vec![a, b]).unwrap()
    }

    /// Whether `x ∈ O_K = ℤ[w]`.
    pub fn is_integral(&self, x: &FieldElement) -> bool {
        x.coords().iter().all(|c| c.is_integer())
    }

    /// `w` inside a field `L` that contains `sqrt_delta` (a positive square root of `Δ`).
    pub fn embed_in(&self, sqrt_delta: &FieldElement) -> Result<Embedded, HilbertError> {
        let l = sqrt_delta.field();
        if (sqrt_delta * sqrt_delta) != FieldElement::from_int(l, self.delta)
            || sqrt_delta.re_sign()? != Ordering::Greater
        {
            return Err(HilbertError::FieldMismatch);
        }
        let half = rat(1, 2);
        let one = FieldElement::one(l);
        Ok(Embedded {
            delta: self.delta,
            w: (&one + sqrt_delta).scale(&half),
            wbar: (&one - sqrt_delta).scale(&half),
            sqrt_delta: sqrt_delta.clone(),
        })
    }

    /// `L = ℚ(√Δ, √d)` with `w` embedded; also returns `√d ∈ L`.
    pub fn with_quadratic(&self, d: i64) -> Result<(Embedded, FieldElement), HilbertError> {
        let (_, sd, s) = NumberField::biquadratic(self.delta, d)?;
        Ok((self.embed_in(&sd)?, s))
    }

    /// `ι(x) ∈ L` for `x ∈ K`.
    pub fn map_into(&self, x: &FieldElement, e: &Embedded) -> FieldElement {
        let c = x.coords();
        &e.one().scale(&c[0]) + &e.w.scale(&c[1])
    }
}

/// `w`, `w̄` and `√Δ` inside a field that also holds the points `z₁, z₂`.
#[derive(Debug, Clone)]
pub struct Embedded {
    pub delta: i64,
    pub w: FieldElement,
    pub wbar: FieldElement,
    pub sqrt_delta: FieldElement,
}

impl Embedded {
    pub fn field(&self) -> &Arc<NumberField> {
        self.w.field()
    }

    fn one(&self) -> FieldElement {
        FieldElement::one(self.field())
    }
}

/// `(Δ − 1)/4 · τ₁ + τ₂ − τ₃ = 0`.
pub fn normalized_relation(delta: i64) -> SingularRelation {
    SingularRelation::new((delta - 1) / 4, 1, -1, 0, 0)
}

/// On `φ(z₁, z₂)` the normalized relation has `zᵢ`-coefficients `(Δ−1)/4 + ω − ω²`
/// for `ω = w, w̄`; both vanish using only `w² = w + (Δ−1)/4`.
pub fn normalized_relation_identity(kd: &RealQuadraticData) -> bool {
    let k = FieldElement::from_int(&kd.field, kd.k());
    [kd.w(), kd.wbar()].iter().all(|om| (&(&k + om) - &(om * om)).is_zero())
}

/// `(z₁, z₂) ↦ ᵗR diag(z₁, z₂) R` with `R = (1 w; 1 w̄)`.
pub fn phi(z1: &FieldElement, z2: &FieldElement, e: &Embedded) -> Result<SiegelPoint, HilbertError> {
    if !z1.same_field(&e.w) || !z2.same_field(&e.w) {
        return Err(HilbertError::FieldMismatch);
    }
    if z1.im_sign()? != Ordering::Greater || z2.im_sign()? != Ordering::Greater {
        return Err(HilbertError::NotInUpperHalfPlane);
    }
    let t1 = z1 + z2;
    let t2 = &(z1 * &e.w) + &(z2 * &e.wbar);
    let t3 = &(&(z1 * &e.w) * &e.w) + &(&(z2 * &e.wbar) * &e.wbar);
    Ok(is_siegel(t1, t2, t3)?)
}

/// `z₁ = (τ₂ − w̄τ₁)/√Δ`, `z₂ = (wτ₁ − τ₂)/√Δ`.
pub fn phi_inverse(tau: &SiegelPoint, e: &Embedded) -> Result<(FieldElement, FieldElement), HilbertError> {
    if !tau.tau1().same_field(&e.w) {
        return Err(HilbertError::FieldMismatch);
    }
    if !verify_relation(tau, &normalized_relation(e.delta)) {
        return Err(HilbertError::RelationNotSatisfied);
    }
    let s = e.sqrt_delta.inv();
    let z1 = &(tau.tau2() - &(&e.wbar * tau.tau1())) * &s;
    let z2 = &(&(&e.w * tau.tau1()) - tau.tau2()) * &s;
    Ok((z1, z2))
}

/// `B = (p√Δ, γ; −γ̄, (q/Δ)√Δ)`, giving `p√Δ z₁z₂ − γ̄z₁ + γz₂ + q/√Δ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewHermitian {
    pub p: i64,
    pub q: i64,
    pub gamma: FieldElement,
}

impl SkewHermitian {
    /// `√Δ·γ ∈ O_K`.
    pub fn is_valid(&self, kd: &RealQuadraticData) -> bool {
        self.gamma.field().same_as(&kd.field) && kd.is_integral(&(&kd.sqrt_delta() * &self.gamma))
    }

    /// `det B = pq + N(γ)`.
    pub fn det(&self) -> Rational {
        int(self.p) * int(self.q) + self.gamma.norm()
    }

    pub fn neg(&self) -> SkewHermitian {
        SkewHermitian { p: -self.p, q: -self.q, gamma: -&self.gamma }
    }
}

/// Eliminates `τ₃` with the normalized relation, then
/// `(a′, b′, d, e) ↦ (p, q, γ) = (−d, e, (a′ + b′w̄)/√Δ)`.
pub fn hsr_to_hz(rel: &SingularRelation, kd: &RealQuadraticData) -> SkewHermitian {
    let a = rel.a + rel.c * kd.k();
    let b = rel.b + rel.c;
    let num = &FieldElement::from_int(&kd.field, a) + &kd.wbar().scale(&int(b));
    SkewHermitian { p: -rel.d, q: rel.e, gamma: &num * &kd.sqrt_delta().inv() }
}

/// `tr(γw)·τ₁ − tr(γ)·τ₂ + p·det 𝛕 + q = 0`.
pub fn hz_to_hsr(bm: &SkewHermitian, kd: &RealQuadraticData) -> Result<SingularRelation, HilbertError> {
    if !bm.gamma.field().same_as(&kd.field) {
        return Err(HilbertError::FieldMismatch);
    }
    let to_int = |x: Rational, what: &str| -> Result<i64, HilbertError> {
        if x.is_integer() {
            i64::try_from(x.to_integer()).map_err(|_| HilbertError::NonIntegralCoefficient(what.into()))
        } else {
            Err(HilbertError::NonIntegralCoefficient(format!("{} = {}", what, x)))
        }
    };
    let a = to_int((&bm.gamma * &kd.w()).trace(), "tr(gamma w)")?;
    let b = to_int(-bm.gamma.trace(), "-tr(gamma)")?;
    Ok(SingularRelation::new(a, b, 0, -bm.p, bm.q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HzDiscriminant {
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub m: Rational,
    /// `B = 0`.
    pub degenerate: bool,
}

/// `M = N(∂_K)·det B`.
pub fn hz_discriminant(bm: &SkewHermitian, kd: &RealQuadraticData) -> HzDiscriminant {
    HzDiscriminant {
        m: int(kd.different_norm()) * bm.det(),
        degenerate: bm.p == 0 && bm.q == 0 && bm.gamma.is_zero(),
    }
}

/// The quaternion algebra `(a, b / ℚ)` with basis `1, I, J, IJ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionAlgebraQ {
    pub a: Rational,
    pub b: Rational,
}

pub type Quaternion = [Rational; 4];

impl QuaternionAlgebraQ {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuaternionAlgebraQ { a, b }
    }

    pub fn mul(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        let (a, b) = (&self.a, &self.b);
        let ab = a * b;
        [
            &x[0] * &y[0] + a * &x[1] * &y[1] + b * &x[2] * &y[2] - &ab * &x[3] * &y[3],
            &x[0] * &y[1] + &x[1] * &y[0] - b * &x[2] * &y[3] + b * &x[3] * &y[2],
            &x[0] * &y[2] + &x[2] * &y[0] + a * &x[1] * &y[3] - a * &x[3] * &y[1],
            &x[0] * &y[3] + &x[3] * &y[0] + &x[1] * &y[2] - &x[2] * &y[1],
        ]
    }

    pub fn conj(&self, x: &Quaternion) -> Quaternion {
        [x[0].clone(), -x[1].clone(), -x[2].clone(), -x[3].clone()]
    }
}

/// `x² − a y² − b z² + ab t²`.
pub fn quaternion_norm(alg: &QuaternionAlgebraQ, x: &Quaternion) -> Rational {
    let ab = &alg.a * &alg.b;
    &x[0] * &x[0] - &alg.a * &x[1] * &x[1] - &alg.b * &x[2] * &x[2] + ab * &x[3] * &x[3]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness {
    pub algebra: QuaternionAlgebraQ,
    pub mu: Quaternion,
}

/// For `α = a + b√Δ`, `μ = a + bI + J` has norm `a² − Δb² − N(α) = 0` in `(Δ, N(α)/ℚ)`.
pub fn split_witness(kd: &RealQuadraticData, alpha: &FieldElement) -> Result<SplitWitness, HilbertError> {
    if !alpha.field().same_as(&kd.field) {
        return Err(HilbertError::FieldMismatch);
    }
    if alpha.is_zero() {
        return Err(HilbertError::ZeroAlpha);
    }
    // x + y w = (x + y/2) + (y/2)√Δ
    let c = alpha.coords();
    let half = rat(1, 2);
    let a = &c[0] + &c[1] * &half;
    let b = &c[1] * &half;
    let algebra = QuaternionAlgebraQ::new(int(kd.delta), alpha.norm());
    Ok(SplitWitness { algebra, mu: [a, b, Rational::one(), Rational::zero()] })
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub delta: i64,
    pub relation: SingularRelation,
    pub skew_hermitian: SkewHermitian,
    pub alpha: FieldElement,
    pub witness: SplitWitness,
    pub witness_norm: Rational,
    pub split: bool,
    pub verdict: String,
}

/// A linear relation together with the normalized `Δ`-relation would force the
/// quaternion algebra `(Δ, N(α)/ℚ)` to split, so no Shimura curve carries both.
pub fn shimura_linear_obstruction(kd: &RealQuadraticData, rel: &SingularRelation) -> Result<ObstructionReport, HilbertError> {
    if !rel.is_linear() {
        return Err(HilbertError::NotLinear);
    }
    let bm = hsr_to_hz(rel, kd);
    if bm.gamma.is_zero() {
        return Err(HilbertError::TrivialRelation);
    }
    let alpha = &bm.gamma * &kd.sqrt_delta().inv();
    let witness = split_witness(kd, &alpha)?;
    let witness_norm = quaternion_norm(&witness.algebra, &witness.mu);
    let split = witness_norm.is_zero();
    let verdict = if split {
        format!(
            "the quaternion algebra ({}, {}/Q) splits; a Shimura curve (compact) cannot carry this configuration",
            kd.delta,
            crate::exactarith::format_rational(&witness.algebra.b)
        )
    } else {
        "split witness failed".to_string()
    };
    Ok(ObstructionReport { delta: kd.delta, relation: *rel, skew_hermitian: bm, alpha, witness, witness_norm, split, verdict })
}
