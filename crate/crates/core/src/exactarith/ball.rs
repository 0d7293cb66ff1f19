//! Fixed-point complex balls: centre `(re + i·im)·2^{-p}`, radius `rad·2^{-p}`
//! bounding the modulus of the error. Multiplication costs two big-integer
//! products and no gcds, which matters for long sums of products.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::interval::{ComplexInterval, Interval};
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub re: BigInt,
    pub im: BigInt,
    pub rad: BigInt,
    pub prec: u32,
}

fn ceil_shift(x: &BigInt, p: u32) -> BigInt {
    // x ≥ 0
    let q: BigInt = x >> p;
    if (&q << p) == *x {
        q
    } else {
        q + 1
    }
}

fn floor_to_scale(x: &Rational, p: u32) -> BigInt {
    let n: BigInt = x.numer() << p;
    n.div_floor(x.denom())
}

impl Ball {
    pub fn zero(prec: u32) -> Ball {
        Ball { re: BigInt::zero(), im: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    /// The smallest ball (at this precision) containing the box.
    pub fn from_interval(z: &ComplexInterval, prec: u32) -> Ball {
        let re = floor_to_scale(&z.re.mid(), prec);
        let im = floor_to_scale(&z.im.mid(), prec);
        let half = (z.re.width() + z.im.width()) / Rational::from_integer(2.into());
        let rad = floor_to_scale(&half, prec) + 3;
        Ball { re, im, rad, prec }
    }

    pub fn to_interval(&self) -> ComplexInterval {
        let s = Rational::from_integer(BigInt::from(1) << self.prec);
        let iv = |c: &BigInt| {
            Interval::new(Rational::from_integer(c - &self.rad) / &s, Rational::from_integer(c + &self.rad) / &s)
        };
        ComplexInterval::new(iv(&self.re), iv(&self.im))
    }

    fn modulus_bound(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }

    pub fn add(&self, o: &Ball) -> Ball {
        Ball { re: &self.re + &o.re, im: &self.im + &o.im, rad: &self.rad + &o.rad, prec: self.prec }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        Ball { re: &self.re - &o.re, im: &self.im - &o.im, rad: &self.rad + &o.rad, prec: self.prec }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        let p = self.prec;
        let re = (&self.re * &o.re - &self.im * &o.im) >> p;
        let im = (&self.re * &o.im + &self.im * &o.re) >> p;
        let err = self.modulus_bound() * &o.rad + o.modulus_bound() * &self.rad + &self.rad * &o.rad;
        Ball { re, im, rad: ceil_shift(&err, p) + 2, prec: p }
    }

    pub fn scale(&self, q: &Rational) -> Ball {
        let (n, d) = (q.numer(), q.denom());
        let rad = (&self.rad * n.abs()).div_ceil(d) + 2;
        let f = |c: &BigInt| (c * n).div_floor(d);
        Ball { re: f(&self.re), im: f(&self.im), rad, prec: self.prec }
    }

    pub fn contains_zero_re(&self) -> bool {
        self.re.abs() <= self.rad
    }

    pub fn sign_of_re(&self) -> Option<Sign> {
        if self.contains_zero_re() {
            None
        } else {
            Some(self.re.sign())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::rational::rat;

    #[test]
    fn encloses_exact_products() {
        let pt = |a: Rational, b: Rational| ComplexInterval::new(Interval::point(a), Interval::point(b));
        let x = Ball::from_interval(&pt(rat(1, 3), rat(-2, 7)), 80);
        let y = Ball::from_interval(&pt(rat(5, 11), rat(3, 13)), 80);
        let z = x.mul(&y).sub(&x).scale(&rat(-7, 3)).to_interval();
        // (1/3 − 2i/7)(5/11 + 3i/13) − (1/3 − 2i/7), times −7/3
        let (a, b, c, d) = (rat(1, 3), rat(-2, 7), rat(5, 11), rat(3, 13));
        let re = (&a * &c - &b * &d - &a) * rat(-7, 3);
        let im = (&a * &d + &b * &c - &b) * rat(-7, 3);
        assert!(z.re.contains(&re) && z.im.contains(&im));
        assert!(z.re.width() < rat(1, 1 << 60));
    }
}
