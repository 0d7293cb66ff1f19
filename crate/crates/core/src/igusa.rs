//! Igusa invariants of genus-2 curves `y² = f(x)` from the roots of the sextic.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactarith::ball::Ball;
use crate::exactarith::roots::RootError;
use crate::exactarith::{certified_roots, ComplexInterval, FieldElement, FieldError, QPoly, Rational};

pub const PRECISION_CAP: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IgusaError {
    #[error("expected 7 coefficients with nonzero leading coefficient")]
    NotSextic,
    #[error("the sextic has a repeated root")]
    RepeatedRoot,
    #[error("I10 vanishes: the curve is singular")]
    SingularCurve,
    #[error("I2 vanishes: the absolute invariants j1, j2, j3 are undefined in this normalization")]
    IZeroUnsupported,
    #[error("could not decide within {0} bits")]
    PrecisionExhausted(u32),
    #[error("expected 6 roots, got {0}")]
    WrongRootCount(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<RootError> for IgusaError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::RepeatedRoot => IgusaError::RepeatedRoot,
            _ => IgusaError::PrecisionExhausted(PRECISION_CAP),
        }
    }
}

/// `f(x) = Σ cᵢ xⁱ` of degree exactly 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sextic {
    coeffs: Vec<Rational>,
}

impl Sextic {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, IgusaError> {
        if coeffs.len() != 7 || coeffs[6].is_zero() {
            return Err(IgusaError::NotSextic);
        }
        Ok(Sextic { coeffs })
    }

    pub fn from_ints(c: &[i64]) -> Result<Self, IgusaError> {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// `lc · Π (x − rᵢ)`.
    pub fn from_roots(lc: &Rational, roots: &[Rational]) -> Result<Self, IgusaError> {
        Self::new(QPoly::from_roots(lc, roots).coeffs().to_vec())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rational {
        &self.coeffs[6]
    }

    pub fn poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    /// `f(ux + v)`.
    pub fn substitute(&self, u: &Rational, v: &Rational) -> Result<Sextic, IgusaError> {
        Self::new(self.poly().compose_linear(u, v).coeffs().to_vec())
    }

    /// Least common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }
}

/// How the permutation sums are normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Each distinct product counted once (sum over 720 divided by the stabilizer order).
    #[default]
    Deduplicated,
    /// The literal sum over all 720 permutations.
    RawPermutationSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IgusaValues<T> {
    pub i2: T,
    pub i4: T,
    pub i6: T,
    pub i10: T,
}

impl<T> IgusaValues<T> {
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> IgusaValues<U> {
        IgusaValues { i2: f(&self.i2), i4: f(&self.i4), i6: f(&self.i6), i10: f(&self.i10) }
    }
}

type Term = Vec<(u8, u8)>;

struct Terms {
    i2: Vec<Term>,
    i4: Vec<Term>,
    i6: Vec<Term>,
}

fn permutations6() -> Vec<[u8; 6]> {
    let mut out = Vec::with_capacity(720);
    let mut p = [0u8, 1, 2, 3, 4, 5];
    fn heap(k: usize, p: &mut [u8; 6], out: &mut Vec<[u8; 6]>) {
        if k == 1 {
            out.push(*p);
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(6, &mut p, &mut out);
    out
}

/// Distinct products appearing in each permutation sum, as lists of index pairs.
fn terms() -> &'static Terms {
    static T: OnceLock<Terms> = OnceLock::new();
    T.get_or_init(|| {
        let pat2: &[(usize, usize)] = &[(1, 2), (3, 4), (5, 6)];
        let pat4: &[(usize, usize)] = &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)];
        let pat6: &[(usize, usize)] = &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (3, 6)];
        let collect = |pat: &[(usize, usize)]| -> Vec<Term> {
            let mut set = BTreeSet::new();
            for p in permutations6() {
                let mut t: Term = pat
                    .iter()
                    .map(|&(i, j)| {
                        let (x, y) = (p[i - 1], p[j - 1]);
                        (x.min(y), x.max(y))
                    })
                    .collect();
                t.sort();
                set.insert(t);
            }
            set.into_iter().collect()
        };
        Terms { i2: collect(pat2), i4: collect(pat4), i6: collect(pat6) }
    })
}

/// Number of distinct products in the `I₂`, `I₄`, `I₆` sums.
pub fn distinct_term_counts() -> (usize, usize, usize) {
    let t = terms();
    (t.i2.len(), t.i4.len(), t.i6.len())
}

/// Arithmetic needed to evaluate the invariants on roots.
pub trait IgusaRing: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn zero_like(&self) -> Self;
    /// Keeps representation size bounded (interval rounding); identity for exact types.
    fn tidy(self, _bits: u32) -> Self {
        self
    }
}

impl IgusaRing for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
}

impl IgusaRing for FieldElement {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, q: &Rational) -> Self {
        FieldElement::scale(self, q)
    }
    fn zero_like(&self) -> Self {
        FieldElement::zero(self.field())
    }
}

impl IgusaRing for ComplexInterval {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, q: &Rational) -> Self {
        ComplexInterval::scale(self, q)
    }
    fn zero_like(&self) -> Self {
        ComplexInterval::zero()
    }
    fn tidy(self, bits: u32) -> Self {
        self.round_outward(bits)
    }
}

impl IgusaRing for Ball {
    fn add(&self, o: &Self) -> Self {
        Ball::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Ball::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Ball::mul(self, o)
    }
    fn scale(&self, q: &Rational) -> Self {
        Ball::scale(self, q)
    }
    fn zero_like(&self) -> Self {
        Ball::zero(self.prec)
    }
}

fn stabilizers(conv: Convention) -> [i64; 3] {
    match conv {
        Convention::Deduplicated => [1, 1, 1],
        Convention::RawPermutationSum => [48, 72, 12],
    }
}

/// `I₂, I₄, I₆, I₁₀` from the six roots and the leading coefficient;
/// `I_{2k}` carries the factor `lc^{2k}` so that `I₁₀ = disc(f)`.
pub fn igusa_from_roots<T: IgusaRing>(roots: &[T], lc: &Rational, conv: Convention, bits: u32) -> Result<IgusaValues<T>, IgusaError> {
    if roots.len() != 6 {
        return Err(IgusaError::WrongRootCount(roots.len()));
    }
    let mut sq = vec![vec![roots[0].zero_like(); 6]; 6];
    for i in 0..6 {
        for j in i + 1..6 {
            let d = roots[i].sub(&roots[j]);
            sq[i][j] = d.mul(&d).tidy(bits);
        }
    }
    let sum = |ts: &[Term]| -> T {
        let mut acc = roots[0].zero_like();
        for t in ts {
            let mut p = sq[t[0].0 as usize][t[0].1 as usize].clone();
            for &(i, j) in &t[1..] {
                p = p.mul(&sq[i as usize][j as usize]).tidy(bits);
            }
            acc = acc.add(&p);
        }
        acc
    };
    let t = terms();
    let st = stabilizers(conv);
    let lc_pow = |k: u32| num_traits::pow(lc.clone(), k as usize);
    let mut i10 = sq[0][1].clone();
    for i in 0..6 {
        for j in i + 1..6 {
            if (i, j) != (0, 1) {
                i10 = i10.mul(&sq[i][j]).tidy(bits);
            }
        }
    }
    Ok(IgusaValues {
        i2: sum(&t.i2).scale(&(lc_pow(2) * Rational::from_integer(st[0].into()))),
        i4: sum(&t.i4).scale(&(lc_pow(4) * Rational::from_integer(st[1].into()))),
        i6: sum(&t.i6).scale(&(lc_pow(6) * Rational::from_integer(st[2].into()))),
        i10: i10.scale(&lc_pow(10)),
    })
}

/// Six disjoint complex intervals, each holding exactly one root of `f`.
pub fn certified_sextic_roots(f: &Sextic, precision: u32) -> Result<Vec<ComplexInterval>, IgusaError> {
    let p = f.poly();
    if p.discriminant().is_zero() {
        return Err(IgusaError::RepeatedRoot);
    }
    Ok(certified_roots(&p, precision)?.iter().map(|r| r.disk.to_interval()).collect())
}

/// Certified enclosures of the invariants with roots isolated to `precision` bits.
pub fn igusa_interval(f: &Sextic, precision: u32, conv: Convention) -> Result<IgusaValues<ComplexInterval>, IgusaError> {
    let roots = certified_sextic_roots(f, precision)?;
    let work = precision + 64;
    let balls: Vec<Ball> = roots.iter().map(|r| Ball::from_interval(r, work)).collect();
    Ok(igusa_from_roots(&balls, f.leading(), conv, work)?.map(Ball::to_interval))
}

/// Exact invariants of a rational sextic, recovered from certified enclosures:
/// for `L·f ∈ ℤ[x]`, `I_{2k}(f) ∈ L^{-2k}ℤ`, so an enclosure narrower than
/// `L^{-2k}` pins the value down.
pub fn igusa_exact(f: &Sextic, conv: Convention) -> Result<IgusaValues<Rational>, IgusaError> {
    let l = Rational::from_integer(f.denominator_lcm());
    let mut prec = 64;
    while prec <= PRECISION_CAP {
        let v = igusa_interval(f, prec, Convention::Deduplicated)?;
        let snap = |z: &ComplexInterval, k: usize| -> Option<Rational> {
            let s = num_traits::pow(l.clone(), k);
            let re = z.re.scale(&s);
            if re.width() >= Rational::one() || !z.im.contains_zero() {
                return None;
            }
            let n = re.lo.ceil();
            (n <= re.hi).then(|| n / s)
        };
        if let (Some(i2), Some(i4), Some(i6), Some(i10)) = (snap(&v.i2, 2), snap(&v.i4, 4), snap(&v.i6, 6), snap(&v.i10, 10)) {
            let st = stabilizers(conv);
            let m = |x: Rational, s: i64| x * Rational::from_integer(s.into());
            return Ok(IgusaValues { i2: m(i2, st[0]), i4: m(i4, st[1]), i6: m(i6, st[2]), i10 });
        }
        prec *= 2;
    }
    Err(IgusaError::PrecisionExhausted(PRECISION_CAP))
}

/// Invariants from exact roots in a caller-supplied splitting field.
pub fn igusa_exact_roots(roots: &[FieldElement], lc: &Rational, conv: Convention) -> Result<IgusaValues<FieldElement>, IgusaError> {
    igusa_from_roots(roots, lc, conv, 0)
}

/// Arithmetic for `j = I₂⁵/I₁₀, I₂³I₄/I₁₀, I₂²I₆/I₁₀` over exact types.
pub trait ExactValue: IgusaRing {
    fn is_zero_value(&self) -> bool;
    fn div(&self, o: &Self) -> Self;
}

impl ExactValue for Rational {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl ExactValue for FieldElement {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn div(&self, o: &Self) -> Self {
        self * &o.inv()
    }
}

pub fn absolute_invariants<T: ExactValue>(v: &IgusaValues<T>) -> Result<[T; 3], IgusaError> {
    if v.i10.is_zero_value() {
        return Err(IgusaError::SingularCurve);
    }
    if v.i2.is_zero_value() {
        return Err(IgusaError::IZeroUnsupported);
    }
    let p = |x: &T, k: u32| {
        let mut r = x.clone();
        for _ in 1..k {
            r = r.mul(x);
        }
        r
    };
    let i2 = &v.i2;
    Ok([
        p(i2, 5).div(&v.i10),
        p(i2, 3).mul(&v.i4).div(&v.i10),
        p(i2, 2).mul(&v.i6).div(&v.i10),
    ])
}

/// Interval enclosures of `j₁, j₂, j₃`; fails if `I₁₀` or `I₂` cannot be bounded away from 0.
pub fn absolute_invariants_interval(v: &IgusaValues<ComplexInterval>) -> Result<[ComplexInterval; 3], IgusaError> {
    let inv10 = v.i10.recip().ok_or(IgusaError::PrecisionExhausted(0))?;
    if v.i2.contains_zero() {
        return Err(IgusaError::PrecisionExhausted(0));
    }
    let i2 = &v.i2;
    let i2_2 = i2 * i2;
    let i2_3 = &i2_2 * i2;
    let i2_5 = &i2_3 * &i2_2;
    Ok([&i2_5 * &inv10, &(&i2_3 * &v.i4) * &inv10, &(&i2_2 * &v.i6) * &inv10])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::rational::{int, rat};

    #[test]
    fn term_counts() {
        assert_eq!(distinct_term_counts(), (15, 10, 60));
    }

    #[test]
    fn disc_of_x6_minus_1() {
        let f = Sextic::from_ints(&[-1, 0, 0, 0, 0, 0, 1]).unwrap();
        let v = igusa_exact(&f, Convention::Deduplicated).unwrap();
        assert_eq!(v.i10, f.poly().discriminant());
        let roots = certified_sextic_roots(&f, 64).unwrap();
        assert_eq!(roots.len(), 6);
    }

    #[test]
    fn x6_minus_x_has_vanishing_i2() {
        let f = Sextic::from_ints(&[0, -1, 0, 0, 0, 0, 1]).unwrap();
        let v = igusa_exact(&f, Convention::Deduplicated).unwrap();
        assert_eq!((v.i2.clone(), v.i4.clone(), v.i6.clone(), v.i10.clone()), (int(0), int(0), int(0), int(3125)));
        assert_eq!(absolute_invariants(&v), Err(IgusaError::IZeroUnsupported));
    }

    #[test]
    fn repeated_root_rejected() {
        let f = Sextic::from_ints(&[1, 0, 0, -2, 0, 0, 1]).unwrap();
        assert_eq!(certified_sextic_roots(&f, 64), Err(IgusaError::RepeatedRoot));
    }

    #[test]
    fn exact_roots_match_snapped_values() {
        let roots = [int(0), int(1), int(-1), int(2), rat(1, 2), int(3)];
        let lc = int(3);
        let f = Sextic::from_roots(&lc, &roots).unwrap();
        let a = igusa_from_roots(&roots, &lc, Convention::Deduplicated, 0).unwrap();
        let b = igusa_exact(&f, Convention::Deduplicated).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.i10, f.poly().discriminant());
        let raw = igusa_from_roots(&roots, &lc, Convention::RawPermutationSum, 0).unwrap();
        assert_eq!(raw.i2, &a.i2 * int(48));
        assert_eq!(raw.i6, &a.i6 * int(12));
    }
}
