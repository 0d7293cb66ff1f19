//! Certified isolation of complex roots of squarefree polynomials over ℚ.
//!
//! Approximations come from an Aberth iteration in `f64`, are polished by
//! Newton steps in exact dyadic arithmetic, and are certified with the
//! inclusion disk `D(z, n·|p(z)|/|p'(z)|)`, which always contains a root.
//! Once `n` such disks are pairwise disjoint each holds exactly one root.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::interval::{ComplexInterval, Interval};
use super::poly::QPoly;
use super::rational::{self, Rational};

const MAX_BITS: u32 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial has a repeated root (zero discriminant)")]
    RepeatedRoot,
    #[error("polynomial has degree < 1")]
    Constant,
    #[error("root isolation did not converge within the precision cap")]
    NoConvergence,
    #[error("isolating disk does not contain exactly one root")]
    NotIsolating,
}

/// Closed disk with rational center and radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDisk {
    pub re: Rational,
    pub im: Rational,
    pub radius: Rational,
}

impl RootDisk {
    pub fn to_interval(&self) -> ComplexInterval {
        ComplexInterval::new(
            Interval::around(&self.re, &self.radius),
            Interval::around(&self.im, &self.radius),
        )
    }

    fn dist_sqr(&self, re: &Rational, im: &Rational) -> Rational {
        let dx = &self.re - re;
        let dy = &self.im - im;
        &dx * &dx + &dy * &dy
    }

    pub fn disjoint(&self, o: &RootDisk) -> bool {
        let r = &self.radius + &o.radius;
        self.dist_sqr(&o.re, &o.im) > &r * &r
    }

    /// `o ⊆ self`.
    pub fn contains_disk(&self, o: &RootDisk) -> bool {
        let slack = &self.radius - &o.radius;
        !slack.is_negative() && self.dist_sqr(&o.re, &o.im) <= &slack * &slack
    }

    pub fn center_f64(&self) -> Complex64 {
        Complex64::new(rational::to_f64(&self.re), rational::to_f64(&self.im))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedRoot {
    pub disk: RootDisk,
    /// Certified real (the disk's conjugate meets no other root disk).
    pub real: bool,
}

#[derive(Clone, Debug)]
struct CRat {
    re: Rational,
    im: Rational,
}

impl CRat {
    fn mul(&self, o: &CRat) -> CRat {
        CRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn eval_exact(p: &QPoly, z: &CRat) -> CRat {
    let mut acc = CRat { re: Rational::zero(), im: Rational::zero() };
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

fn aberth(p: &QPoly) -> Vec<Complex64> {
    let n = p.degree().unwrap();
    let c: Vec<f64> = p.coeffs().iter().map(rational::to_f64).collect();
    let lead = c[n];
    let ev = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let r = (c[0].abs() / lead.abs()).powf(1.0 / n as f64).max(0.5)
        + c.iter().take(n).map(|a| (a / lead).abs()).fold(0.0, f64::max).min(1.0) * 0.1;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = ev(z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        s += 1.0 / diff;
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn newton_polish(p: &QPoly, dp: &QPoly, start: Complex64, bits: u32) -> CRat {
    let mut z = CRat { re: rational::from_f64(start.re), im: rational::from_f64(start.im) };
    let mut b = 53u32;
    loop {
        b = (2 * b).min(bits + 16);
        let v = eval_exact(p, &z);
        let d = eval_exact(dp, &z);
        let nd = d.norm_sqr();
        if nd.is_zero() {
            break;
        }
        // v / d = v * conj(d) / |d|^2
        let q = CRat {
            re: (&v.re * &d.re + &v.im * &d.im) / &nd,
            im: (&v.im * &d.re - &v.re * &d.im) / &nd,
        };
        z = CRat {
            re: rational::round_nearest(&(&z.re - &q.re), b),
            im: rational::round_nearest(&(&z.im - &q.im), b),
        };
        if b >= bits + 16 {
            break;
        }
    }
    z
}

/// Inclusion radius `n·|p(z)|/|p'(z)|` rounded up to a dyadic.
fn inclusion_radius(p: &QPoly, dp: &QPoly, z: &CRat, bits: u32) -> Option<Rational> {
    let n = p.degree().unwrap() as i64;
    let v = eval_exact(p, z).norm_sqr();
    let d = eval_exact(dp, z).norm_sqr();
    if d.is_zero() {
        return None;
    }
    let r2 = v * rational::int(n * n) / d;
    Some(rational::sqrt_upper(&r2, bits + 8))
}

/// All roots of a squarefree `p`, each in a disk of radius `≤ 2^-precision`.
pub fn certified_roots(p: &QPoly, precision: u32) -> Result<Vec<CertifiedRoot>, RootError> {
    let n = match p.degree() {
        None | Some(0) => return Err(RootError::Constant),
        Some(n) => n,
    };
    if !p.is_squarefree() {
        return Err(RootError::RepeatedRoot);
    }
    let dp = p.derivative();
    let approx = aberth(p);
    let target = rational::pow2_neg(precision);
    let mut bits = precision.max(32) + 8;
    while bits <= MAX_BITS {
        let mut disks = Vec::with_capacity(n);
        let mut ok = true;
        for &a in &approx {
            let z = newton_polish(p, &dp, a, bits);
            match inclusion_radius(p, &dp, &z, bits) {
                Some(r) if r <= target => disks.push(RootDisk { re: z.re, im: z.im, radius: r }),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && pairwise_disjoint(&disks) {
            return Ok(finish(disks));
        }
        bits *= 2;
    }
    Err(RootError::NoConvergence)
}

fn pairwise_disjoint(d: &[RootDisk]) -> bool {
    (0..d.len()).all(|i| (i + 1..d.len()).all(|j| d[i].disjoint(&d[j])))
}

fn finish(disks: Vec<RootDisk>) -> Vec<CertifiedRoot> {
    let n = disks.len();
    (0..n)
        .map(|i| {
            let c = RootDisk { re: disks[i].re.clone(), im: -disks[i].im.clone(), radius: disks[i].radius.clone() };
            let real = (0..n).filter(|&j| j != i).all(|j| c.disjoint(&disks[j]));
            let mut disk = disks[i].clone();
            if real {
                disk.im = Rational::zero();
            }
            CertifiedRoot { disk, real }
        })
        .collect()
}

/// Refines the unique root inside `isolating` to radius `≤ 2^-precision`.
pub fn refine_root(p: &QPoly, isolating: &RootDisk, precision: u32) -> Result<RootDisk, RootError> {
    let dp = p.derivative();
    let target = rational::pow2_neg(precision);
    let start = isolating.center_f64();
    let mut bits = precision.max(32) + 8;
    while bits <= MAX_BITS {
        let z = newton_polish(p, &dp, start, bits);
        if let Some(r) = inclusion_radius(p, &dp, &z, bits) {
            let d = RootDisk { re: z.re, im: z.im, radius: r };
            if d.radius <= target && isolating.contains_disk(&d) {
                return Ok(d);
            }
        }
        bits *= 2;
    }
    // Newton from the center strayed; fall back to isolating every root.
    let roots = certified_roots(p, precision)?;
    let hits: Vec<_> = roots.into_iter().filter(|r| !r.disk.disjoint(isolating)).collect();
    match hits.as_slice() {
        [one] => Ok(one.disk.clone()),
        _ => Err(RootError::NotIsolating),
    }
}
