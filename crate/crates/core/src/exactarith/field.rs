//! Number fields `ℚ[x]/(m(x))` with a distinguished complex embedding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::{ComplexInterval, Interval};
use super::poly::QPoly;
use super::rational::{self, format_rational, Rational};
use super::roots::{certified_roots, refine_root, RootDisk, RootError};

/// Sign decisions give up past this many bits.
pub const SIGN_PRECISION_CAP: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("minimal polynomial must be monic with integer coefficients and degree >= 1")]
    NotMonicIntegral,
    #[error("minimal polynomial {0} is reducible over Q")]
    Reducible(String),
    #[error("root disk does not isolate exactly one root of the minimal polynomial")]
    NotIsolating,
    #[error("division by zero")]
    DivisionByZero,
    #[error("conjugation is only defined in quadratic fields (degree {0})")]
    ConjUndefined(usize),
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("could not certify a sign within {0} bits")]
    PrecisionExhausted(u32),
    #[error(transparent)]
    Root(#[from] RootError),
}

pub struct NumberField {
    min_poly: QPoly,
    degree: usize,
    /// Root disk as supplied (or chosen) at construction.
    root_hint: RootDisk,
    /// Certified disk holding exactly the distinguished root.
    isolating: RootDisk,
    real: bool,
    refined: RwLock<RootDisk>,
    /// `x^k mod m(x)` for `k < 2·degree − 1`.
    powers: Vec<Vec<Rational>>,
    gen_name: String,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({} = 0, root ≈ {:?})", self.min_poly, self.isolating.center_f64())
    }
}

impl NumberField {
    /// Builds `ℚ(θ)` where `θ` is the unique root of `min_poly` inside `root`.
    pub fn new(min_poly: QPoly, root: RootDisk) -> Result<Arc<NumberField>, FieldError> {
        Self::named(min_poly, root, "a")
    }

    pub fn named(min_poly: QPoly, root: RootDisk, gen_name: &str) -> Result<Arc<NumberField>, FieldError> {
        let degree = match min_poly.degree() {
            Some(d) if d >= 1 && min_poly.is_monic_integral() => d,
            _ => return Err(FieldError::NotMonicIntegral),
        };
        if !is_irreducible(&min_poly)? {
            return Err(FieldError::Reducible(min_poly.to_string()));
        }
        let (isolating, real) = isolate_in(&min_poly, &root)?;
        Ok(Arc::new(Self::assemble(min_poly, degree, root, isolating, real, gen_name)))
    }

    /// Picks the root of `min_poly` closest to `(re, im)`.
    pub fn with_root_near(min_poly: QPoly, re: f64, im: f64, gen_name: &str) -> Result<Arc<NumberField>, FieldError> {
        let degree = match min_poly.degree() {
            Some(d) if d >= 1 && min_poly.is_monic_integral() => d,
            _ => return Err(FieldError::NotMonicIntegral),
        };
        if !is_irreducible(&min_poly)? {
            return Err(FieldError::Reducible(min_poly.to_string()));
        }
        let roots = certified_roots(&min_poly, 64)?;
        let target = num_complex::Complex64::new(re, im);
        let best = roots
            .iter()
            .min_by(|a, b| {
                let da = (a.disk.center_f64() - target).norm();
                let db = (b.disk.center_f64() - target).norm();
                da.partial_cmp(&db).unwrap_or(Ordering::Equal)
            })
            .expect("degree >= 1");
        let disk = best.disk.clone();
        Ok(Arc::new(Self::assemble(min_poly, degree, disk.clone(), disk, best.real, gen_name)))
    }

    fn assemble(min_poly: QPoly, degree: usize, root_hint: RootDisk, isolating: RootDisk, real: bool, gen_name: &str) -> Self {
        let mut powers = Vec::with_capacity(2 * degree);
        let mut cur = QPoly::constant(Rational::one());
        for _ in 0..(2 * degree).max(2) - 1 {
            let r = cur.rem(&min_poly);
            powers.push((0..degree).map(|i| r.coeff(i)).collect());
            cur = &cur * &QPoly::x();
        }
        NumberField {
            min_poly,
            degree,
            root_hint,
            refined: RwLock::new(isolating.clone()),
            isolating,
            real,
            powers,
            gen_name: gen_name.to_string(),
        }
    }

    /// `ℚ` itself, generated by the root `0` of `x`.
    pub fn rationals() -> Arc<NumberField> {
        let zero = RootDisk { re: Rational::zero(), im: Rational::zero(), radius: Rational::zero() };
        Arc::new(Self::assemble(QPoly::x(), 1, zero.clone(), zero, true, "a"))
    }

    /// `ℚ(√d)` generated by `√d` (positive real, or `i·√|d|` for `d < 0`).
    pub fn quadratic(d: i64) -> Result<Arc<NumberField>, FieldError> {
        let (re, im) = if d > 0 { ((d as f64).sqrt(), 0.0) } else { (0.0, (-d as f64).sqrt()) };
        let name = if d == -1 { "i".to_string() } else { format!("sqrt({})", d) };
        Self::with_root_near(QPoly::from_ints(&[-d, 0, 1]), re, im, &name)
    }

    /// `ℚ(ζ_n)` generated by `e^{2πi/n}`.
    pub fn cyclotomic(n: u32) -> Result<Arc<NumberField>, FieldError> {
        let phi = cyclotomic_poly(n);
        let t = 2.0 * std::f64::consts::PI / n as f64;
        Self::with_root_near(phi, t.cos(), t.sin(), &format!("zeta{}", n))
    }

    /// `ℚ(√m, √n)` generated by `θ = √m + √n`; also returns `√m` and `√n`.
    pub fn biquadratic(m: i64, n: i64) -> Result<(Arc<NumberField>, FieldElement, FieldElement), FieldError> {
        let c = |d: i64| -> num_complex::Complex64 {
            if d >= 0 {
                num_complex::Complex64::new((d as f64).sqrt(), 0.0)
            } else {
                num_complex::Complex64::new(0.0, (-d as f64).sqrt())
            }
        };
        let theta = c(m) + c(n);
        let p = QPoly::from_ints(&[(m - n) * (m - n), 0, -2 * (m + n), 0, 1]);
        let k = Self::with_root_near(p, theta.re, theta.im, "t")?;
        if m == n {
            return Err(FieldError::Reducible(k.min_poly.to_string()));
        }
        // θ³ = (m+n)θ + 2(m√n + n√m),  √m + √n = θ
        let g = FieldElement::generator(&k);
        let g3 = g.pow(3);
        let s = (&g3 - &g.scale(&rational::int(m + n))).scale(&rational::rat(1, 2));
        let sqrt_m = (&s - &g.scale(&rational::int(m))).scale(&rational::rat(1, n - m));
        let sqrt_n = &g - &sqrt_m;
        Ok((k, sqrt_m, sqrt_n))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min_poly
    }

    pub fn root_hint(&self) -> &RootDisk {
        &self.root_hint
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn gen_name(&self) -> &str {
        &self.gen_name
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<NumberField>) -> bool {
        Arc::ptr_eq(self, other)
            || (self.min_poly == other.min_poly && !self.isolating.disjoint(&other.isolating))
    }

    /// Enclosure of the distinguished root with radius `≤ 2^-bits`.
    pub fn root_interval(&self, bits: u32) -> Result<ComplexInterval, FieldError> {
        let target = rational::pow2_neg(bits);
        {
            let cached = self.refined.read().expect("poisoned");
            if cached.radius <= target {
                return Ok(self.disk_to_interval(&cached));
            }
        }
        let d = refine_root(&self.min_poly, &self.isolating, bits)?;
        let iv = self.disk_to_interval(&d);
        *self.refined.write().expect("poisoned") = d;
        Ok(iv)
    }

    fn disk_to_interval(&self, d: &RootDisk) -> ComplexInterval {
        let mut iv = d.to_interval();
        if self.real {
            iv.im = Interval::zero();
        }
        iv
    }

    fn reduce(&self, prod: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.degree];
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.powers[k]) {
                *o += c * p;
            }
        }
        out
    }
}

/// `Φ_n(x)`.
pub fn cyclotomic_poly(n: u32) -> QPoly {
    let mut p = QPoly::new({
        let mut v = vec![Rational::zero(); n as usize + 1];
        v[0] = -Rational::one();
        v[n as usize] = Rational::one();
        v
    });
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic_poly(d)).0;
        }
    }
    p
}

fn isolate_in(p: &QPoly, hint: &RootDisk) -> Result<(RootDisk, bool), FieldError> {
    let n = p.degree().unwrap();
    let mut prec = 64;
    while prec <= 2048 {
        let roots = certified_roots(p, prec)?;
        let inside: Vec<_> = roots.iter().filter(|r| hint.contains_disk(&r.disk)).collect();
        let outside = roots.iter().filter(|r| hint.disjoint(&r.disk)).count();
        if inside.len() + outside == n {
            return match inside.as_slice() {
                [one] => Ok((one.disk.clone(), one.real)),
                _ => Err(FieldError::NotIsolating),
            };
        }
        prec *= 2;
    }
    Err(FieldError::NotIsolating)
}

/// Irreducibility of a monic integer polynomial: every candidate factor
/// `Π_{i∈S}(x − α_i)` with `|S| ≤ n/2` must fail to have integer coefficients.
pub fn is_irreducible(p: &QPoly) -> Result<bool, FieldError> {
    let n = p.degree().ok_or(FieldError::NotMonicIntegral)?;
    if n <= 1 {
        return Ok(true);
    }
    if !p.is_squarefree() {
        return Ok(false);
    }
    let mut prec = 64u32;
    'outer: while prec <= 4096 {
        let roots = certified_roots(p, prec)?;
        let ivs: Vec<ComplexInterval> = roots.iter().map(|r| r.disk.to_interval()).collect();
        for k in 1..=n / 2 {
            for subset in subsets(n, k) {
                let mut f = vec![ComplexInterval::real(Rational::one())];
                for &i in &subset {
                    let mut g = vec![ComplexInterval::zero(); f.len() + 1];
                    for (j, c) in f.iter().enumerate() {
                        g[j + 1] = &g[j + 1] + c;
                        g[j] = &g[j] - &(c * &ivs[i]);
                    }
                    f = g;
                }
                let mut cand = Vec::with_capacity(f.len());
                let mut possible = true;
                for c in &f {
                    if c.re.width() >= Rational::one() || c.im.width() >= Rational::one() {
                        prec *= 2;
                        continue 'outer;
                    }
                    let lo = c.re.lo.ceil();
                    if !c.im.contains_zero() || lo > c.re.hi {
                        possible = false;
                        break;
                    }
                    cand.push(lo);
                }
                if possible {
                    let q = QPoly::new(cand);
                    if p.rem(&q).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        return Ok(true);
    }
    Err(FieldError::PrecisionExhausted(4096))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Element of a number field in power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.field.same_as(&o.field) && self.coords == o.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rational>) -> Result<Self, FieldError> {
        if coords.len() != field.degree {
            return Err(FieldError::WrongLength { expected: field.degree, got: coords.len() });
        }
        Ok(FieldElement { field: field.clone(), coords })
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree];
        coords[0] = q;
        FieldElement { field: field.clone(), coords }
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, rational::int(n))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn generator(field: &Arc<NumberField>) -> Self {
        if field.degree == 1 {
            // the generator of ℚ = ℚ[x]/(x) is 0
            return Self::zero(field);
        }
        let mut coords = vec![Rational::zero(); field.degree];
        coords[1] = Rational::one();
        FieldElement { field: field.clone(), coords }
    }

    /// `Σ c_i θ^i` from small integer coordinates, padded with zeros.
    pub fn from_ints(field: &Arc<NumberField>, c: &[i64]) -> Self {
        let mut coords = vec![Rational::zero(); field.degree];
        let mut acc = FieldElement { field: field.clone(), coords: coords.clone() };
        if c.len() <= field.degree {
            for (o, &x) in coords.iter_mut().zip(c) {
                *o = rational::int(x);
            }
            return FieldElement { field: field.clone(), coords };
        }
        let g = Self::generator(field);
        let mut pw = Self::one(field);
        for &x in c {
            acc = &acc + &pw.scale(&rational::int(x));
            pw = &pw * &g;
        }
        acc
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    pub fn same_field(&self, o: &FieldElement) -> bool {
        self.field.same_as(&o.field)
    }

    pub fn scale(&self, c: &Rational) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|x| x * c).collect() }
    }

    fn as_poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    pub fn checked_inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s, _) = QPoly::xgcd(&self.as_poly(), &self.field.min_poly);
        debug_assert_eq!(g.degree(), Some(0));
        let r = s.rem(&self.field.min_poly);
        Ok(FieldElement { field: self.field.clone(), coords: (0..self.field.degree).map(|i| r.coeff(i)).collect() })
    }

    /// Inverse; panics on zero.
    pub fn inv(&self) -> FieldElement {
        self.checked_inv().expect("inverse of zero field element")
    }

    pub fn checked_div(&self, o: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self * &o.checked_inv()?)
    }

    pub fn pow(&self, e: i64) -> FieldElement {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = FieldElement::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Nontrivial automorphism of a quadratic field.
    pub fn conj(&self) -> Result<FieldElement, FieldError> {
        if self.field.degree != 2 {
            return Err(FieldError::ConjUndefined(self.field.degree));
        }
        // θ ↦ −p − θ for m(x) = x² + p x + q
        let p = self.field.min_poly.coeff(1);
        let c0 = &self.coords[0] - &self.coords[1] * &p;
        let c1 = -self.coords[1].clone();
        Ok(FieldElement { field: self.field.clone(), coords: vec![c0, c1] })
    }

    /// Field trace over ℚ.
    pub fn trace(&self) -> Rational {
        let n = self.field.degree;
        let g = FieldElement::generator(&self.field);
        let mut basis = FieldElement::one(&self.field);
        let mut t = Rational::zero();
        for i in 0..n {
            let col = &(self * &basis);
            t += &col.coords[i];
            basis = &basis * &g;
        }
        t
    }

    /// Field norm over ℚ, as the determinant of multiplication.
    pub fn norm(&self) -> Rational {
        let n = self.field.degree;
        let g = FieldElement::generator(&self.field);
        let mut basis = FieldElement::one(&self.field);
        let mut m = Vec::with_capacity(n);
        for _ in 0..n {
            m.push((self * &basis).coords);
            basis = &basis * &g;
        }
        super::linalg::det(&m)
    }

    /// Enclosure of the image under the distinguished embedding, radius `≤ 2^-precision`.
    pub fn embed(&self, precision: u32) -> Result<ComplexInterval, FieldError> {
        if self.is_rational() {
            return Ok(ComplexInterval::real(self.coords[0].clone()));
        }
        let target = rational::pow2_neg(precision);
        let mut wp = precision + 16;
        loop {
            let root = self.field.root_interval(wp)?;
            let mut acc = ComplexInterval::zero();
            for c in self.coords.iter().rev() {
                acc = (&(&acc * &root) + &ComplexInterval::real(c.clone())).round_outward(wp + 16);
            }
            if self.field.real {
                acc.im = Interval::zero();
            }
            if acc.radius() <= target {
                return Ok(acc);
            }
            if wp > 8 * SIGN_PRECISION_CAP {
                return Err(FieldError::PrecisionExhausted(wp));
            }
            wp *= 2;
        }
    }

    /// Certified sign of the imaginary part under the embedding.
    pub fn im_sign(&self) -> Result<Ordering, FieldError> {
        if self.is_rational() || self.field.real {
            return Ok(Ordering::Equal);
        }
        self.sign_by(|z| z.im.clone())
    }

    /// Certified sign of the real part under the embedding.
    pub fn re_sign(&self) -> Result<Ordering, FieldError> {
        if let Some(q) = self.to_rational() {
            return Ok(q.cmp(&Rational::zero()));
        }
        self.sign_by(|z| z.re.clone())
    }

    fn sign_by(&self, part: impl Fn(&ComplexInterval) -> Interval) -> Result<Ordering, FieldError> {
        let mut prec = 32;
        while prec <= SIGN_PRECISION_CAP {
            let z = self.embed(prec)?;
            match part(&z).sign() {
                Some(Ordering::Equal) | None => prec *= 2,
                Some(s) => return Ok(s),
            }
        }
        Err(FieldError::PrecisionExhausted(SIGN_PRECISION_CAP))
    }

    /// Approximate complex value (midpoint of a 64-bit enclosure).
    pub fn approx(&self) -> (f64, f64) {
        self.embed(64).map(|z| z.mid_f64()).unwrap_or((f64::NAN, f64::NAN))
    }
}

/// Binary/unary operations on number-field elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(i64),
    Conj,
}

/// Checked arithmetic entry point.
pub fn field_arith(op: FieldOp, x: &FieldElement, y: Option<&FieldElement>) -> Result<FieldElement, FieldError> {
    let need_y = || -> Result<&FieldElement, FieldError> {
        let y = y.ok_or(FieldError::FieldMismatch)?;
        if !x.same_field(y) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(y)
    };
    match op {
        FieldOp::Add => Ok(x + need_y()?),
        FieldOp::Sub => Ok(x - need_y()?),
        FieldOp::Mul => Ok(x * need_y()?),
        FieldOp::Inv => x.checked_inv(),
        FieldOp::Pow(e) => {
            if e < 0 && x.is_zero() {
                Err(FieldError::DivisionByZero)
            } else {
                Ok(x.pow(e))
            }
        }
        FieldOp::Conj => x.conj(),
    }
}

fn check(a: &FieldElement, b: &FieldElement) {
    assert!(a.same_field(b), "field mismatch in arithmetic");
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        check(self, o);
        FieldElement { field: self.field.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        check(self, o);
        FieldElement { field: self.field.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        check(self, o);
        let n = self.field.degree;
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        FieldElement { field: self.field.clone(), coords: self.field.reduce(&prod) }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement { (&self).$m(&o) }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.field.gen_name.as_str();
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if !first {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let cs = format_rational(&a);
            match (i, a.is_one()) {
                (0, _) => write!(f, "{}", cs)?,
                (1, true) => write!(f, "{}", name)?,
                (1, false) => write!(f, "{}*{}", cs, name)?,
                (_, true) => write!(f, "{}^{}", name, i)?,
                (_, false) => write!(f, "{}*{}^{}", cs, name, i)?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integer helper used by callers that build elements from `BigInt`s.
pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::rational::{int, rat};

    #[test]
    fn golden_ratio_conjugate() {
        let k = NumberField::quadratic(5).unwrap();
        let s = FieldElement::generator(&k);
        let w = (&FieldElement::one(&k) + &s).scale(&rat(1, 2));
        let wb = w.conj().unwrap();
        assert_eq!(wb, (&FieldElement::one(&k) - &s).scale(&rat(1, 2)));
        assert_eq!(&w * &wb, FieldElement::from_int(&k, -1));
        assert_eq!(s.inv(), s.scale(&rat(1, 5)));
        assert_eq!(w.norm(), int(-1));
        assert_eq!(w.trace(), int(1));
    }

    #[test]
    fn cyclotomic_relation() {
        let k = NumberField::cyclotomic(5).unwrap();
        let xi = FieldElement::generator(&k);
        assert_eq!(xi.pow(4), FieldElement::from_ints(&k, &[-1, -1, -1, -1]));
        assert_eq!(xi.pow(5), FieldElement::one(&k));
        assert_eq!(xi.pow(-1), xi.pow(4));
        assert_eq!(xi.conj(), Err(FieldError::ConjUndefined(4)));
    }

    #[test]
    fn embeddings() {
        let k = NumberField::cyclotomic(5).unwrap();
        let xi = FieldElement::generator(&k);
        let z = xi.embed(64).unwrap();
        assert!(z.radius() <= rational::pow2_neg(64));
        let (re, im) = z.mid_f64();
        assert!((re - 0.30901699437494745).abs() < 1e-15);
        assert!((im - 0.9510565162951535).abs() < 1e-15);
        let q = FieldElement::from_rational(&k, rat(3, 4));
        assert_eq!(q.embed(64).unwrap(), ComplexInterval::real(rat(3, 4)));
        assert_eq!(xi.im_sign().unwrap(), Ordering::Greater);
    }

    #[test]
    fn errors() {
        let k = NumberField::quadratic(-1).unwrap();
        let z = FieldElement::zero(&k);
        assert_eq!(field_arith(FieldOp::Inv, &z, None), Err(FieldError::DivisionByZero));
        let r = NumberField::quadratic(2).unwrap();
        let x = FieldElement::one(&r);
        assert_eq!(field_arith(FieldOp::Add, &x, Some(&z)), Err(FieldError::FieldMismatch));
        assert!(matches!(
            NumberField::with_root_near(QPoly::from_ints(&[-1, 0, 1]), 1.0, 0.0, "a"),
            Err(FieldError::Reducible(_))
        ));
    }

    #[test]
    fn biquadratic_square_roots() {
        let (k, s5, i) = NumberField::biquadratic(5, -1).unwrap();
        assert_eq!(&s5 * &s5, FieldElement::from_int(&k, 5));
        assert_eq!(&i * &i, FieldElement::from_int(&k, -1));
        assert_eq!(s5.re_sign().unwrap(), Ordering::Greater);
        assert_eq!(i.im_sign().unwrap(), Ordering::Greater);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&QPoly::from_ints(&[1, 1, 1, 1, 1])).unwrap());
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        assert!(!is_irreducible(&QPoly::from_ints(&[4, 0, 0, 0, 1])).unwrap());
        assert!(is_irreducible(&QPoly::from_ints(&[-2, 0, 0, 1])).unwrap());
    }
}
