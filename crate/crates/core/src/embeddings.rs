//! Modular embeddings into `H₂`: Hashimoto's Shimura-curve map and Kani's
//! family of modular curves.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::exactarith::rational::{int, Rational};
use crate::exactarith::{FPoly, FieldElement, FieldError, NumberField, RationalFunction};
use crate::humbert::{bilinear, short_vectors, HumbertError, RelationLattice, SingularRelation};
use crate::siegel::{is_siegel, BigPeriodMatrix, SiegelError, SiegelPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("coefficient {0} is not an integer")]
    NonIntegralCoefficient(String),
    #[error("point is not in the upper half-plane")]
    NotInUpperHalfPlane,
    #[error("z is a pole of the embedding")]
    Pole,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Siegel(#[from] SiegelError),
    #[error(transparent)]
    Humbert(#[from] HumbertError),
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_squarefree(n: i64) -> bool {
    let f = prime_factors(n);
    f.windows(2).all(|w| w[0] != w[1])
}

/// Parameters of Hashimoto's embedding: `a²DN + 1 = pb`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShimuraParams {
    #[serde(rename = "D")]
    pub d: i64,
    #[serde(rename = "N")]
    pub n: i64,
    pub p: i64,
    pub a: i64,
    pub b: i64,
}

impl ShimuraParams {
    /// `p` defaults to the smallest prime `≡ 1 (mod 4)` dividing `a²DN + 1`.
    pub fn new(d: i64, n: i64, a: i64, p: Option<i64>) -> Result<Self, EmbeddingError> {
        let bad = |m: &str| Err(EmbeddingError::InvalidParams(m.to_string()));
        if d <= 1 || !is_squarefree(d) || !prime_factors(d).len().is_multiple_of(2) {
            return bad("D must be a squarefree product of an even number of primes");
        }
        if n < 1 || !is_squarefree(n) || d.gcd(&n) != 1 {
            return bad("N must be squarefree and coprime to D");
        }
        let m = a
            .checked_mul(a)
            .and_then(|x| x.checked_mul(d))
            .and_then(|x| x.checked_mul(n))
            .and_then(|x| x.checked_add(1))
            .ok_or_else(|| EmbeddingError::InvalidParams("a^2 D N + 1 overflows".into()))?;
        let p = match p {
            Some(p) => p,
            None => match prime_factors(m).into_iter().find(|q| q % 4 == 1) {
                Some(q) => q,
                None => return bad("no prime p = 1 mod 4 divides a^2 D N + 1"),
            },
        };
        if !is_prime(p) || p % 4 != 1 {
            return bad("p must be a prime congruent to 1 mod 4");
        }
        if m % p != 0 {
            return bad("p must divide a^2 D N + 1");
        }
        Ok(ShimuraParams { d, n, p, a, b: m / p })
    }

    fn dn(&self) -> i64 {
        self.d * self.n
    }
}

/// `Ω(z)` as a matrix of rational functions in `z` over `ℚ(√p)`.
#[derive(Debug, Clone)]
pub struct HashimotoOmega {
    pub field: Arc<NumberField>,
    pub entries: [[RationalFunction; 2]; 2],
}

impl HashimotoOmega {
    pub fn is_symmetric(&self) -> bool {
        self.entries[0][1] == self.entries[1][0]
    }
}

/// Entries of `pz·Ω(z)` as coefficient triples `(c₀, c₁, c₂)` in `z`.
fn omega_numerators(pr: &ShimuraParams, sqrt_p: &FieldElement) -> [[[FieldElement; 3]; 2]; 2] {
    let k = sqrt_p.field();
    let half = Rational::new(1.into(), 2.into());
    let one = FieldElement::one(k);
    let eps = (&one + sqrt_p).scale(&half);
    let epsb = (&one - sqrt_p).scale(&half);
    let (p, a, dn) = (pr.p, pr.a, pr.dn());
    let q = |x: i64| FieldElement::from_int(k, x);
    let e11 = [-&(&epsb * &epsb), FieldElement::from_rational(k, Rational::new(((p - 1) * a * dn).into(), 2.into())), (&eps * &eps).scale(&int(dn))];
    let e12 = || [epsb.clone(), q(-(p - 1) * a * dn), -&eps.scale(&int(dn))];
    let e22 = [q(-1), q(-2 * a * dn), q(dn)];
    [[e11, e12()], [e12(), e22]]
}

pub fn hashimoto_omega(pr: &ShimuraParams) -> Result<HashimotoOmega, EmbeddingError> {
    let k = NumberField::quadratic(pr.p)?;
    let s = FieldElement::generator(&k);
    let nums = omega_numerators(pr, &s);
    let z = FPoly::var(&k);
    let den = z.scale(&FieldElement::from_int(&k, pr.p));
    let rf = |c: &[FieldElement; 3]| RationalFunction::new(FPoly::new(&k, c.to_vec()), den.clone()).unwrap();
    let entries = [[rf(&nums[0][0]), rf(&nums[0][1])], [rf(&nums[1][0]), rf(&nums[1][1])]];
    Ok(HashimotoOmega { field: k, entries })
}

/// `Ω(z)` at a point `z` of a field that also contains `sqrt_p` (`sqrt_p² = p`).
pub fn hashimoto_point(pr: &ShimuraParams, sqrt_p: &FieldElement, z: &FieldElement) -> Result<SiegelPoint, EmbeddingError> {
    if (sqrt_p * sqrt_p) != FieldElement::from_int(sqrt_p.field(), pr.p) || !sqrt_p.same_field(z) {
        return Err(EmbeddingError::InvalidParams("sqrt_p must square to p in the field of z".into()));
    }
    if z.im_sign()? != std::cmp::Ordering::Greater {
        return Err(EmbeddingError::NotInUpperHalfPlane);
    }
    let nums = omega_numerators(pr, sqrt_p);
    let inv = z.scale(&int(pr.p)).inv();
    let ev = |c: &[FieldElement; 3]| &(&(&c[0] + &(&c[1] * z)) + &(&(&c[2] * z) * z)) * &inv;
    Ok(is_siegel(ev(&nums[0][0]), ev(&nums[0][1]), ev(&nums[1][1]))?)
}

/// `x τ₁ + (x + 2aDNy) τ₂ − (p−1)/4·x τ₃ + y(τ₂² − τ₁τ₃) + (a²DN − b)DN y = 0`.
pub fn hashimoto_relation(pr: &ShimuraParams, x: i64, y: i64) -> Result<SingularRelation, EmbeddingError> {
    let num = (pr.p - 1) * x;
    if num % 4 != 0 {
        return Err(EmbeddingError::NonIntegralCoefficient(format!("-({}-1)/4 * {}", pr.p, x)));
    }
    let dn = pr.dn();
    Ok(SingularRelation::new(x, x + 2 * pr.a * dn * y, -num / 4, y, (pr.a * pr.a * dn - pr.b) * dn * y))
}

/// Substitutes `Ω(z)` into the relation and checks it vanishes as a rational function.
pub fn hashimoto_identity(omega: &HashimotoOmega, rel: &SingularRelation) -> bool {
    let k = &omega.field;
    let c = |x: i64| FieldElement::from_int(k, x);
    let [[t1, t2], [_, t3]] = &omega.entries;
    let det = t2.mul(t2).sub(&t1.mul(t3));
    let e = RationalFunction::from_poly(FPoly::constant(c(rel.e)));
    let sum = t1
        .scale(&c(rel.a))
        .add(&t2.scale(&c(rel.b)))
        .add(&t3.scale(&c(rel.c)))
        .add(&det.scale(&c(rel.d)))
        .add(&e);
    sum.is_zero()
}

/// Kani's parameters: `b, c > 0`, `bc − Na² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KaniParams {
    #[serde(rename = "N")]
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl KaniParams {
    pub fn new(n: i64, a: i64, b: i64, c: i64) -> Result<Self, EmbeddingError> {
        if n < 1 || b <= 0 || c <= 0 || b * c - n * a * a != 1 {
            return Err(EmbeddingError::InvalidParams("need N >= 1, b, c > 0 and bc - N a^2 = 1".into()));
        }
        Ok(KaniParams { n, a, b, c })
    }

    /// All parameter tuples with `1 ≤ N ≤ max_n`, `|a| ≤ max_a`, `1 ≤ c ≤ max_c`, `c | Na² + 1`.
    pub fn sweep(max_n: i64, max_a: i64, max_c: i64) -> Vec<KaniParams> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for a in -max_a..=max_a {
                for c in 1..=max_c {
                    let m = n * a * a + 1;
                    if m % c == 0 {
                        out.push(KaniParams { n, a, b: m / c, c });
                    }
                }
            }
        }
        out
    }

    /// `μ = (aN −b; cN −aN)`.
    pub fn mu(&self) -> [[i64; 2]; 2] {
        [[self.a * self.n, -self.b], [self.c * self.n, -self.a * self.n]]
    }

    /// The symplectic basis `α₁, …, α₄` of the Eichler order.
    pub fn basis(&self) -> [[[i64; 2]; 2]; 4] {
        let (n, a, b, c) = (self.n, self.a, self.b, self.c);
        [[[b, 0], [a * n, 0]], [[a * n, 0], [c * n, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]]
    }
}

/// `t ↦ (bt, aNt; aNt, cNt)`.
pub fn kani_tau(pr: &KaniParams, t: &FieldElement) -> Result<SiegelPoint, EmbeddingError> {
    if t.im_sign()? != std::cmp::Ordering::Greater {
        return Err(EmbeddingError::NotInUpperHalfPlane);
    }
    let s = |x: i64| t.scale(&int(x));
    Ok(is_siegel(s(pr.b), s(pr.a * pr.n), s(pr.c * pr.n))?)
}

/// `Π(t) = (α₁v, α₂v, α₃v, α₄v)` with `v = (t, 1)ᵀ`.
pub fn kani_big_period(pr: &KaniParams, t: &FieldElement) -> BigPeriodMatrix {
    let k = t.field();
    let one = FieldElement::one(k);
    let col = |m: &[[i64; 2]; 2]| {
        let e = |i: usize| &t.scale(&int(m[i][0])) + &one.scale(&int(m[i][1]));
        [e(0), e(1)]
    };
    let cols: Vec<[FieldElement; 2]> = pr.basis().iter().map(col).collect();
    let row = |i: usize| [cols[0][i].clone(), cols[1][i].clone(), cols[2][i].clone(), cols[3][i].clone()];
    BigPeriodMatrix { rows: [row(0), row(1)] }
}

type QMat2 = [[Rational; 2]; 2];

fn q2(m: &[[i64; 2]; 2]) -> QMat2 {
    m.map(|r| r.map(int))
}

fn qmul(x: &QMat2, y: &QMat2) -> QMat2 {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn adj(x: &QMat2) -> QMat2 {
    [[x[1][1].clone(), -x[0][1].clone()], [-x[1][0].clone(), x[0][0].clone()]]
}

/// Gram matrix of `E_μ(x, y) = tr(μ⁻¹ x adj(y))` on `α₁, …, α₄`.
pub fn kani_gram(pr: &KaniParams) -> [[Rational; 4]; 4] {
    let mu = q2(&pr.mu());
    let det = &mu[0][0] * &mu[1][1] - &mu[0][1] * &mu[1][0];
    let mu_inv = adj(&mu).map(|r| r.map(|x| x / &det));
    let al = pr.basis().map(|m| q2(&m));
    let e = |x: &QMat2, y: &QMat2| {
        let m = qmul(&qmul(&mu_inv, x), &adj(y));
        &m[0][0] + &m[1][1]
    };
    std::array::from_fn(|i| std::array::from_fn(|j| e(&al[i], &al[j])))
}

/// Whether `α₁, …, α₄` is a symplectic basis for `E_μ` (Gram matrix equal to `J`).
pub fn kani_symplectic_check(pr: &KaniParams) -> bool {
    let j: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]];
    kani_gram(pr) == j.map(|r| r.map(int))
}

/// Binary quadratic form `Ax² + Bxy + Cy²` attached to level `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TypeNForm {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "C")]
    pub c: i64,
    #[serde(rename = "N")]
    pub n: i64,
}

impl TypeNForm {
    pub fn discriminant(&self) -> i128 {
        (self.b as i128).pow(2) - 4 * self.a as i128 * self.c as i128
    }

    pub fn value(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KaniLattice {
    pub generators: [SingularRelation; 2],
    pub form: TypeNForm,
    /// Both generators vanish identically on `kani_tau`.
    pub generators_verified: bool,
    /// The Gram form agrees with `c²x² + 2aN(bc+2)xy + b²N(bc+3)y²`.
    pub matches_standard_form: bool,
}

impl KaniLattice {
    pub fn lattice(&self) -> Result<RelationLattice, HumbertError> {
        RelationLattice::from_basis(self.generators.to_vec())
    }
}

pub fn kani_generators(pr: &KaniParams) -> [SingularRelation; 2] {
    let (n, a, b, c) = (pr.n, pr.a, pr.b, pr.c);
    [SingularRelation::new(0, -c, a, 0, 0), SingularRelation::new(-n, -n * a * b, b * b, 0, 0)]
}

/// On `(bt, aNt; aNt, cNt)` a linear relation reduces to `t·(a'b + b'aN + c'cN) + e'`.
fn vanishes_on_kani_curve(pr: &KaniParams, r: &SingularRelation) -> bool {
    r.d == 0 && r.e == 0 && r.a * pr.b + r.b * pr.a * pr.n + r.c * pr.c * pr.n == 0
}

pub fn kani_lattice(pr: &KaniParams) -> KaniLattice {
    let g = kani_generators(pr);
    let form = TypeNForm {
        a: g[0].discriminant() as i64,
        b: 2 * bilinear(&g[0], &g[1]) as i64,
        c: g[1].discriminant() as i64,
        n: pr.n,
    };
    let (n, a, b, c) = (pr.n, pr.a, pr.b, pr.c);
    let standard = TypeNForm { a: c * c, b: 2 * a * n * (b * c + 2), c: b * b * n * (b * c + 3), n };
    KaniLattice {
        generators: g,
        form,
        generators_verified: g.iter().all(|r| vanishes_on_kani_curve(pr, r)),
        matches_standard_form: form == standard,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeNReport {
    pub discriminant_ok: bool,
    pub congruence_ok: bool,
    /// A primitive `(x, y)` whose value is a square prime to `N`.
    pub square_witness: Option<(i64, i64, i128)>,
    pub is_type_n: bool,
}

fn is_square(v: i128) -> bool {
    v >= 0 && {
        let r = num_integer::Roots::sqrt(&v);
        r * r == v
    }
}

/// Checks the three defining properties of a form of type `N`.
pub fn is_type_n_form(f: &TypeNForm) -> TypeNReport {
    let discriminant_ok = f.discriminant() == -16 * f.n as i128;
    // values mod 4 depend only on (x, y) mod 4
    let congruence_ok = (0..4).all(|x| (0..4).all(|y| f.value(x, y).rem_euclid(4) <= 1));
    let mut square_witness = None;
    if f.is_positive_definite() {
        // grow the search radius so that large forms stay cheap when a small witness exists
        let limit = (64 * (f.a.max(f.c) as i128)).min(1 << 18).max(f.a.min(f.c) as i128);
        let gram = vec![vec![2 * f.a as i128, f.b as i128], vec![f.b as i128, 2 * f.c as i128]];
        let mut bound = f.a.min(f.c) as i128;
        while square_witness.is_none() && bound <= limit {
            square_witness = short_vectors(&gram, 2 * bound)
                .into_iter()
                .map(|(v, twice)| (v[0], v[1], twice / 2))
                .filter(|&(x, y, val)| x.gcd(&y) == 1 && is_square(val) && val.gcd(&(f.n as i128)) == 1)
                .min_by_key(|&(x, y, val)| (val, x.abs(), y.abs(), x < 0, y < 0));
            bound *= 2;
        }
    }
    TypeNReport {
        discriminant_ok,
        congruence_ok,
        is_type_n: discriminant_ok && congruence_ok && square_witness.is_some(),
        square_witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shimura_parameters() {
        let p = ShimuraParams::new(6, 1, 2, None).unwrap();
        assert_eq!((p.p, p.b), (5, 5));
        assert!(ShimuraParams::new(6, 1, 2, Some(3)).is_err());
        assert!(ShimuraParams::new(4, 1, 1, None).is_err());
        assert!(ShimuraParams::new(2, 1, 1, None).is_err());
    }

    #[test]
    fn omega_entries() {
        let pr = ShimuraParams::new(6, 1, 2, None).unwrap();
        let om = hashimoto_omega(&pr).unwrap();
        assert!(om.is_symmetric());
        let k = &om.field;
        let c = |x: i64| FieldElement::from_int(k, x);
        // (2,2) entry: (−1 − 24z + 6z²)/(5z)
        let z = FPoly::var(k);
        let expect = RationalFunction::new(
            FPoly::new(k, vec![c(-1), c(-24), c(6)]),
            z.scale(&c(5)),
        )
        .unwrap();
        assert_eq!(om.entries[1][1], expect);
        assert_eq!(hashimoto_relation(&pr, 0, 1).unwrap(), SingularRelation::new(0, 24, 0, 1, 114));
        assert_eq!(hashimoto_relation(&pr, 1, 0).unwrap(), SingularRelation::new(1, 1, -1, 0, 0));
        for x in -2..=2 {
            for y in -2..=2 {
                assert!(hashimoto_identity(&om, &hashimoto_relation(&pr, x, y).unwrap()));
            }
        }
        assert!(!hashimoto_identity(&om, &SingularRelation::new(1, 0, 0, 0, 0)));
    }

    #[test]
    fn kani_checks() {
        let pr = KaniParams::new(2, 1, 3, 1).unwrap();
        assert!(kani_symplectic_check(&pr));
        assert!(kani_symplectic_check(&KaniParams::new(1, 0, 1, 1).unwrap()));
        let kl = kani_lattice(&pr);
        assert_eq!(kl.form, TypeNForm { a: 1, b: 20, c: 108, n: 2 });
        assert!(kl.generators_verified && kl.matches_standard_form);
        assert_eq!(kl.form.discriminant(), -32);
        assert_eq!(kl.form.value(9, -1), 9);
        let rep = is_type_n_form(&kl.form);
        assert!(rep.is_type_n);
        assert_eq!(rep.square_witness, Some((1, 0, 1)));
        assert!(!is_type_n_form(&TypeNForm { a: 1, b: 0, c: 1, n: 1 }).is_type_n);
        assert!(!is_type_n_form(&TypeNForm { a: 4, b: 4, c: 5, n: 1 }).is_type_n);
    }
}
