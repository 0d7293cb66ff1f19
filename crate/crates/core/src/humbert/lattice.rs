//! The lattice `L_τ` of singular relations, its discriminant form and what it
//! says about the endomorphism algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::relation::{bilinear, verify_relation, SingularRelation};
use super::HumbertError;
use crate::exactarith::linalg::{hnf, integer_kernel, integer_saturate, rank, rational_kernel};
use crate::exactarith::rational::{self, squarefree_part, Rational};
use crate::exactarith::FieldElement;
use crate::siegel::SiegelPoint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    basis: Vec<SingularRelation>,
    lin_basis: Vec<SingularRelation>,
    gram: Vec<Vec<i128>>,
}

impl RelationLattice {
    /// Lattice spanned by a saturated basis; the linear part is recomputed.
    pub fn from_basis(basis: Vec<SingularRelation>) -> Result<Self, HumbertError> {
        let lin_basis = linear_part(&basis)?;
        let gram = gram_matrix(&basis);
        Ok(RelationLattice { basis, lin_basis, gram })
    }

    pub fn basis(&self) -> &[SingularRelation] {
        &self.basis
    }
    pub fn lin_basis(&self) -> &[SingularRelation] {
        &self.lin_basis
    }
    pub fn gram(&self) -> &[Vec<i128>] {
        &self.gram
    }
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
    pub fn lin_rank(&self) -> usize {
        self.lin_basis.len()
    }

    /// Leading principal minors of the Gram matrix.
    pub fn principal_minors(&self) -> Vec<Rational> {
        (1..=self.rank())
            .map(|k| {
                let m: Vec<Vec<Rational>> = (0..k).map(|i| (0..k).map(|j| wide(self.gram[i][j])).collect()).collect();
                crate::exactarith::linalg::det(&m)
            })
            .collect()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.principal_minors().iter().all(|m| m.is_positive())
    }

    /// Whether `rel` lies in the lattice.
    pub fn contains(&self, rel: &SingularRelation) -> bool {
        let mut rows: Vec<Vec<Rational>> = self.basis.iter().map(to_q).collect();
        let r0 = rank(&rows);
        rows.push(to_q(rel));
        if rank(&rows) != r0 {
            return false;
        }
        // saturated, so rational membership is integral membership
        true
    }
}

fn wide(x: i128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn to_q(r: &SingularRelation) -> Vec<Rational> {
    r.to_array().iter().map(|&x| rational::int(x)).collect()
}

pub fn gram_matrix(basis: &[SingularRelation]) -> Vec<Vec<i128>> {
    basis.iter().map(|x| basis.iter().map(|y| bilinear(x, y)).collect()).collect()
}

fn linear_part(basis: &[SingularRelation]) -> Result<Vec<SingularRelation>, HumbertError> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let dmap = vec![basis.iter().map(|r| BigInt::from(r.d)).collect::<Vec<_>>()];
    let coeffs = integer_kernel(&dmap, basis.len());
    let vecs: Vec<Vec<BigInt>> = coeffs
        .iter()
        .map(|c| {
            (0..5)
                .map(|k| c.iter().zip(basis).map(|(ci, r)| ci * BigInt::from(r.to_array()[k])).sum())
                .collect()
        })
        .collect();
    hnf(&vecs).iter().map(|v| SingularRelation::from_bigints(v)).collect()
}

/// Field coordinates of `τ₁, τ₂, τ₃, τ₂² − τ₁τ₃, 1` (the columns for `a..e`).
fn coordinate_matrix(tau: &SiegelPoint) -> Vec<Vec<Rational>> {
    let k = tau.tau1().field();
    let cols: [FieldElement; 5] =
        [tau.tau1().clone(), tau.tau2().clone(), tau.tau3().clone(), -&tau.det(), FieldElement::one(k)];
    (0..k.degree()).map(|i| cols.iter().map(|c| c.coords()[i].clone()).collect()).collect()
}

pub fn relation_lattice(tau: &SiegelPoint) -> Result<RelationLattice, HumbertError> {
    let ker = rational_kernel(&coordinate_matrix(tau), 5);
    let sat = integer_saturate(&ker, 5);
    let basis: Vec<SingularRelation> = sat.iter().map(|v| SingularRelation::from_bigints(v)).collect::<Result<_, _>>()?;
    debug_assert!(basis.iter().all(|r| verify_relation(tau, r)));
    RelationLattice::from_basis(basis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// `End₀ = ℚ`.
    Rational,
    /// Commutative, strictly larger than `ℚ`.
    Commutative,
    IndefiniteQuaternion,
    /// `M₂(K)` for `K` imaginary quadratic.
    IsotypicCm,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Rational => "End0 = Q",
            Classification::Commutative => "End0 commutative, not Q",
            Classification::IndefiniteQuaternion => "End0 indefinite quaternion algebra over Q",
            Classification::IsotypicCm => "End0 = M2(K), K imaginary quadratic (isotypic CM)",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn classify(lat: &RelationLattice) -> Classification {
    match lat.rank() {
        0 => Classification::Rational,
        1 => Classification::Commutative,
        2 => Classification::IndefiniteQuaternion,
        _ => Classification::IsotypicCm,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiscriminantMeaning {
    /// `Δ = δ²`: isogenous to a product of elliptic curves.
    Product { delta_root: i128 },
    /// Real multiplication by the order of discriminant `Δ` in `ℚ(√d)`.
    RealMultiplication { discriminant: i128, field_d: i128, conductor: i128, fundamental: bool },
}

impl fmt::Display for DiscriminantMeaning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscriminantMeaning::Product { delta_root } => {
                write!(f, "isogenous to a product of elliptic curves (degree {}^2)", delta_root)
            }
            DiscriminantMeaning::RealMultiplication { discriminant, field_d, conductor, fundamental } => {
                if *fundamental {
                    write!(f, "real multiplication by the maximal order of Q(sqrt({})), discriminant {}", field_d, discriminant)
                } else {
                    write!(
                        f,
                        "real multiplication by the order of conductor {} in Q(sqrt({})), discriminant {}",
                        conductor, field_d, discriminant
                    )
                }
            }
        }
    }
}

pub fn interpret_discriminant(delta: i128) -> Result<DiscriminantMeaning, HumbertError> {
    if delta <= 0 || delta.rem_euclid(4) > 1 {
        return Err(HumbertError::InvalidDiscriminant(delta));
    }
    let r = delta.sqrt();
    if r * r == delta {
        return Ok(DiscriminantMeaning::Product { delta_root: r });
    }
    let d = squarefree_part(&BigInt::from(delta));
    let d: i128 = i128::try_from(d).map_err(|_| HumbertError::Overflow)?;
    let d0 = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    let conductor = (delta / d0).sqrt();
    Ok(DiscriminantMeaning::RealMultiplication { discriminant: delta, field_d: d, conductor, fundamental: conductor == 1 })
}

/// Exact LLL reduction (`δ = 3/4`) of a positive-definite Gram matrix.
/// Returns the unimodular `T` (rows are the new basis) and `T G Tᵀ`.
pub fn lll_reduce(gram: &[Vec<i128>]) -> Result<(Vec<Vec<BigInt>>, Vec<Vec<i128>>), HumbertError> {
    let n = gram.len();
    let g0: Vec<Vec<BigInt>> = gram.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut t: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
    let gram_of = |t: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        let tg: Vec<Vec<BigInt>> =
            t.iter().map(|r| (0..n).map(|j| (0..n).map(|k| &r[k] * &g0[k][j]).sum()).collect()).collect();
        tg.iter().map(|r| t.iter().map(|s| r.iter().zip(s).map(|(a, b)| a * b).sum()).collect()).collect()
    };
    let gso = |g: &[Vec<BigInt>]| -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let mut mu = vec![vec![Rational::zero(); n]; n];
        let mut b = vec![Rational::zero(); n];
        for i in 0..n {
            for j in 0..i {
                let mut s = Rational::from_integer(g[i][j].clone());
                for l in 0..j {
                    s -= &mu[j][l] * &mu[i][l] * &b[l];
                }
                mu[i][j] = s / &b[j];
            }
            let mut s = Rational::from_integer(g[i][i].clone());
            for l in 0..i {
                s -= &mu[i][l] * &mu[i][l] * &b[l];
            }
            b[i] = s;
        }
        (mu, b)
    };
    let half = rational::rat(1, 2);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gso(&gram_of(&t));
            let r = rational::floor(&(&mu[k][j] + &half));
            if !r.is_zero() {
                let tj = t[j].clone();
                for (x, y) in t[k].iter_mut().zip(&tj) {
                    *x -= &r * y;
                }
            }
        }
        let (mu, b) = gso(&gram_of(&t));
        let m = &mu[k][k - 1];
        if b[k] < (rational::rat(3, 4) - m * m) * &b[k - 1] {
            t.swap(k, k - 1);
            k = (k - 1).max(1);
        } else {
            k += 1;
        }
    }
    let reduced = gram_of(&t)
        .iter()
        .map(|r| r.iter().map(|x| i128::try_from(x).map_err(|_| HumbertError::Overflow)).collect())
        .collect::<Result<_, _>>()?;
    Ok((t, reduced))
}

/// Nonzero `x` with `xᵀ G x ≤ bound`, one per `±` pair, with their values.
/// Enumerates in an LLL-reduced basis and reports coordinates in the given one.
pub fn short_vectors(gram: &[Vec<i128>], bound: i128) -> Vec<(Vec<i64>, i128)> {
    let n = gram.len();
    if n == 0 || bound <= 0 {
        return Vec::new();
    }
    let (t, reduced) = lll_reduce(gram).expect("Gram matrix of a relation lattice fits in i128 after reduction");
    let mut out: Vec<(Vec<i64>, i128)> = short_vectors_in(&reduced, bound)
        .into_iter()
        .map(|(y, v)| {
            let x = (0..n)
                .map(|j| {
                    let c: BigInt = (0..n).map(|i| BigInt::from(y[i]) * &t[i][j]).sum();
                    c.to_i64_checked()
                })
                .collect();
            (x, v)
        })
        .collect();
    for (v, _) in out.iter_mut() {
        if v.iter().find(|&&t| t != 0).is_some_and(|&t| t < 0) {
            v.iter_mut().for_each(|t| *t = -*t);
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Fincke–Pohst enumeration in the given basis.
fn short_vectors_in(gram: &[Vec<i128>], bound: i128) -> Vec<(Vec<i64>, i128)> {
    let n = gram.len();
    // G = Uᵀ D U with U unit upper triangular; q[i][i] = D_i, q[i][j] = U_ij.
    let g = |i: usize, j: usize| wide(gram[i][j]);
    let mut q = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        let mut qii = g(i, i);
        for k in 0..i {
            qii -= &q[k][k] * &q[k][i] * &q[k][i];
        }
        q[i][i] = qii;
        for j in i + 1..n {
            let mut s = g(i, j);
            for k in 0..i {
                s -= &q[k][k] * &q[k][i] * &q[k][j];
            }
            q[i][j] = s / &q[i][i];
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    enumerate(&q, n - 1, wide(bound), &mut x, &mut out, gram);
    out.retain(|(v, _)| v.iter().find(|&&t| t != 0).is_some_and(|&t| t > 0));
    out
}

fn enumerate(
    q: &[Vec<Rational>],
    i: usize,
    remaining: Rational,
    x: &mut Vec<i64>,
    out: &mut Vec<(Vec<i64>, i128)>,
    gram: &[Vec<i128>],
) {
    let n = q.len();
    let mut center = Rational::zero();
    for j in i + 1..n {
        center -= &q[i][j] * rational::int(x[j]);
    }
    let radius = rational::sqrt_upper(&(&remaining / &q[i][i]), 32);
    let lo = rational::floor(&(&center - &radius)).to_i64_checked();
    let hi = rational::floor(&(&center + &radius)).to_i64_checked() + 1;
    for xi in lo..=hi {
        let t = rational::int(xi) - &center;
        let used = &q[i][i] * &t * &t;
        if used > remaining {
            continue;
        }
        x[i] = xi;
        let rest = &remaining - &used;
        if i == 0 {
            if x.iter().any(|&v| v != 0) {
                let val: i128 = (0..n).map(|a| (0..n).map(|b| gram[a][b] * x[a] as i128 * x[b] as i128).sum::<i128>()).sum();
                out.push((x.clone(), val));
            }
        } else {
            enumerate(q, i - 1, rest, x, out, gram);
        }
    }
    x[i] = 0;
}

trait ToI64 {
    fn to_i64_checked(&self) -> i64;
}

impl ToI64 for BigInt {
    fn to_i64_checked(&self) -> i64 {
        num_traits::ToPrimitive::to_i64(self).expect("short-vector bound out of range")
    }
}

fn combine(basis: &[SingularRelation], coeffs: &[i64]) -> Result<SingularRelation, HumbertError> {
    let mut v = [0i64; 5];
    for (r, &c) in basis.iter().zip(coeffs) {
        for (o, x) in v.iter_mut().zip(r.to_array()) {
            *o = c.checked_mul(x).and_then(|t| o.checked_add(t)).ok_or(HumbertError::Overflow)?;
        }
    }
    Ok(SingularRelation::from_array(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalRelations {
    pub min_delta: i128,
    pub relations: Vec<SingularRelation>,
}

/// All primitive relations (up to sign) attaining the minimal positive `Δ`.
pub fn minimal_relations(lat: &RelationLattice) -> Result<MinimalRelations, HumbertError> {
    if lat.rank() == 0 {
        return Err(HumbertError::EmptyLattice);
    }
    let (_, reduced) = lll_reduce(&lat.gram)?;
    let bound = (0..lat.rank()).map(|i| reduced[i][i]).min().unwrap();
    let sv = short_vectors(&lat.gram, bound);
    let min_delta = sv.iter().map(|(_, v)| *v).min().ok_or(HumbertError::EmptyLattice)?;
    let relations = sv
        .iter()
        .filter(|(_, v)| *v == min_delta)
        .map(|(c, _)| combine(&lat.basis, c).map(|r| r.canonical()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MinimalRelations { min_delta, relations })
}

/// Counts of lattice vectors (up to sign) by value of `Δ`, up to `bound`.
pub fn represented_values(lat: &RelationLattice, bound: i128) -> BTreeMap<i128, usize> {
    let mut m = BTreeMap::new();
    for (_, v) in short_vectors(&lat.gram, bound) {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

/// Default enumeration bound: four times the smallest diagonal entry of the
/// reduced Gram matrix.
pub fn default_bound(lat: &RelationLattice) -> i128 {
    let g = lll_reduce(&lat.gram).map(|r| r.1).unwrap_or_else(|_| lat.gram.clone());
    4 * (0..lat.rank()).map(|i| g[i][i]).min().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrdegReport {
    pub span_dim: usize,
    pub trdeg_bound: usize,
    /// Whether `trdeg_bound` is claimed as an equality (CM input) or only an upper bound.
    pub equality: bool,
    pub conditional_label: String,
    /// Approximations of `q_l = e^{2πiτ_l}` as `(re, im)`.
    pub q_values: Option<[(f64, f64); 3]>,
}

/// Span dimension of `1, τ₁, τ₂, τ₃` and the transcendence degree it predicts
/// for `ℚ(q₁, q₂, q₃, j₁, j₂, j₃)`.
pub fn trdeg_report(tau: &SiegelPoint, lat: &RelationLattice, is_cm: bool) -> TrdegReport {
    let span_dim = 4 - lat.lin_rank();
    let (equality, label) = match (is_cm, span_dim) {
        (true, 2) => (true, "unconditional (Gelfond-Schneider theorem)".to_string()),
        (true, _) => (true, "conditional on the Gelfond-Schneider conjecture (a consequence of Schanuel's conjecture)".to_string()),
        (false, _) => (false, "upper bound, valid only when j1, j2, j3 are algebraic".to_string()),
    };
    let q = |t: &FieldElement| {
        let (re, im) = t.approx();
        let r = (-2.0 * std::f64::consts::PI * im).exp();
        let a = 2.0 * std::f64::consts::PI * re;
        (r * a.cos(), r * a.sin())
    };
    TrdegReport {
        span_dim,
        trdeg_bound: span_dim - 1,
        equality,
        conditional_label: label,
        q_values: Some([q(tau.tau1()), q(tau.tau2()), q(tau.tau3())]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImaginaryQuadraticWitness {
    /// Squarefree `d < 0` with `K = ℚ(√d)`.
    pub d: i64,
    /// Minimal polynomial of `τ₁` over `ℚ`, ascending coefficients.
    pub tau1_min_poly: Vec<String>,
    /// `rank L_τ`, which must be 3.
    pub lattice_rank: usize,
}

/// Detects whether every entry of `τ` lies in the imaginary quadratic field `ℚ(τ₁)`.
pub fn detect_imaginary_quadratic(tau: &SiegelPoint) -> Result<Option<ImaginaryQuadraticWitness>, HumbertError> {
    let k = tau.tau1().field();
    let one = FieldElement::one(k);
    let t1 = tau.tau1();
    let row = |x: &FieldElement| x.coords().to_vec();
    let base = vec![row(&one), row(t1)];
    if rank(&base) < 2 {
        return Ok(None);
    }
    // all of τ₁², τ₂, τ₃ must lie in span(1, τ₁)
    for x in [&(t1 * t1), tau.tau2(), tau.tau3()] {
        let mut m = base.clone();
        m.push(row(x));
        if rank(&m) > 2 {
            return Ok(None);
        }
    }
    // τ₁² = u + v τ₁  ⇒  x² − v x − u
    let (u, v) = solve_in_span(&one, t1, &(t1 * t1));
    let disc = &v * &v + rational::int(4) * &u;
    let scaled = (&disc * Rational::from_integer(disc.denom() * disc.denom())).to_integer();
    let d = squarefree_part(&scaled);
    let d = num_traits::ToPrimitive::to_i64(&d).ok_or(HumbertError::Overflow)?;
    let lat = relation_lattice(tau)?;
    let poly = vec![rational::format_rational(&-u), rational::format_rational(&-v), "1".to_string()];
    Ok(Some(ImaginaryQuadraticWitness { d, tau1_min_poly: poly, lattice_rank: lat.rank() }))
}

/// `(u, v)` with `x = u·p + v·q`, assuming such a combination exists.
fn solve_in_span(p: &FieldElement, q: &FieldElement, x: &FieldElement) -> (Rational, Rational) {
    let n = p.coords().len();
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| vec![p.coords()[i].clone(), q.coords()[i].clone(), -x.coords()[i].clone()])
        .collect();
    let ker = rational_kernel(&m, 3);
    let k = &ker[0];
    (&k[0] / &k[2], &k[1] / &k[2])
}
