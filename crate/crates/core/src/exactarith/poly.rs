//! Dense univariate polynomials over ℚ, coefficients in ascending degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::ComplexInterval;
use super::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        QPoly::new(c.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn x() -> Self {
        QPoly::from_ints(&[0, 1])
    }

    /// `lc · Π (x − r)`.
    pub fn from_roots(lc: &Rational, roots: &[Rational]) -> Self {
        let mut p = QPoly::constant(lc.clone());
        for r in roots {
            p = &p * &QPoly::new(vec![-r.clone(), Rational::one()]);
        }
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> QPoly {
        let l = self.lead();
        if l.is_zero() {
            return self.clone();
        }
        QPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, z: &ComplexInterval) -> ComplexInterval {
        let mut acc = ComplexInterval::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &ComplexInterval::real(c.clone());
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let dl = d.lead();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn xgcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (QPoly::constant(Rational::one()), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = r0.lead();
        if l.is_zero() {
            return (r0, s0, t0);
        }
        let inv = l.recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Resultant by the Euclidean remainder sequence.
    pub fn resultant(a: &QPoly, b: &QPoly) -> Rational {
        let (Some(mut m), Some(mut n)) = (a.degree(), b.degree()) else {
            return Rational::zero();
        };
        let (mut f, mut g) = (a.clone(), b.clone());
        let mut acc = Rational::one();
        loop {
            if n == 0 {
                return acc * num_traits::pow(g.lead(), m);
            }
            let r = f.rem(&g);
            let Some(k) = r.degree() else {
                return Rational::zero();
            };
            // res(f, g) = (-1)^{mn} lc(g)^{m-k} res(g, r)
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(g.lead(), m - k);
            f = g;
            g = r;
            m = n;
            n = k;
        }
    }

    /// Discriminant `(-1)^{n(n-1)/2} res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Rational {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return Rational::one();
        }
        let r = QPoly::resultant(self, &self.derivative()) / self.lead();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    pub fn is_squarefree(&self) -> bool {
        QPoly::gcd(self, &self.derivative()).degree().unwrap_or(0) == 0
    }

    /// `p(u·x + v)`.
    pub fn compose_linear(&self, u: &Rational, v: &Rational) -> QPoly {
        let lin = QPoly::new(vec![v.clone(), u.clone()]);
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &QPoly::constant(c.clone());
        }
        acc
    }

    /// Integer coefficients if all are integral.
    pub fn to_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
            .collect()
    }

    pub fn is_monic_integral(&self) -> bool {
        self.lead().is_one() && self.to_integer_coeffs().is_some()
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
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
            let cs = if a.is_one() && i > 0 { String::new() } else { format_rational(&a) };
            match i {
                0 => write!(f, "{}", cs)?,
                1 => write!(f, "{}x", cs)?,
                _ => write!(f, "{}x^{}", cs, i)?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::rational::int;

    #[test]
    fn division_and_gcd() {
        let f = QPoly::from_ints(&[-1, 0, 0, 0, 0, 0, 1]);
        let g = QPoly::from_ints(&[-1, 0, 0, 1]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, QPoly::from_ints(&[1, 0, 0, 1]));
        assert_eq!(QPoly::gcd(&f, &g), g);
    }

    #[test]
    fn xgcd_identity() {
        let a = QPoly::from_ints(&[1, 1, 1, 1, 1]);
        let b = QPoly::from_ints(&[3, -2, 1]);
        let (g, s, t) = QPoly::xgcd(&a, &b);
        assert_eq!(g, QPoly::from_ints(&[1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn discriminants() {
        // x^2 + b x + c  ->  b^2 - 4c
        assert_eq!(QPoly::from_ints(&[3, 5, 1]).discriminant(), int(13));
        // x^6 - x has discriminant 3125
        assert_eq!(QPoly::from_ints(&[0, -1, 0, 0, 0, 0, 1]).discriminant(), int(3125));
        // (x^3 - 1)^2 is not squarefree
        let sq = QPoly::from_ints(&[1, 0, 0, -2, 0, 0, 1]);
        assert!(!sq.is_squarefree());
        assert_eq!(sq.discriminant(), int(0));
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_ints(&[-1, 0, 1]).to_string(), "x^2 - 1");
    }
}
