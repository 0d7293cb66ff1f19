//! Closed real intervals and complex rectangles with rational endpoints.
//!
//! Endpoints are exact rationals; `round_outward` trims them to dyadics so
//! repeated products do not blow up in size.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn around(mid: &Rational, rad: &Rational) -> Self {
        Interval { lo: mid - rad, hi: mid + rad }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certified sign, or `None` when the interval meets zero without being `[0,0]`.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            Interval::new(Rational::zero(), a.max(b))
        } else if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    /// Reciprocal; `None` if the interval contains zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    pub fn round_outward(&self, bits: u32) -> Interval {
        Interval::new(rational::round_down(&self.lo, bits), rational::round_up(&self.hi, bits))
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", rational::to_f64(&self.lo), rational::to_f64(&self.hi))
    }
}

/// Complex rectangle `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn point(re: Rational, im: Rational) -> Self {
        ComplexInterval { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn real(x: Rational) -> Self {
        ComplexInterval::point(x, Rational::zero())
    }

    pub fn zero() -> Self {
        ComplexInterval::real(Rational::zero())
    }

    /// Largest half-width of the two components.
    pub fn radius(&self) -> Rational {
        let w = self.re.width().max(self.im.width());
        w / rational::int(2)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &ComplexInterval) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self) -> Interval {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn conj(&self) -> ComplexInterval {
        ComplexInterval { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, c: &Rational) -> ComplexInterval {
        ComplexInterval { re: self.re.scale(c), im: self.im.scale(c) }
    }

    /// Reciprocal; `None` when the rectangle may contain zero.
    pub fn recip(&self) -> Option<ComplexInterval> {
        let n = self.norm_sqr().recip()?;
        let c = self.conj();
        Some(ComplexInterval { re: &c.re * &n, im: &c.im * &n })
    }

    pub fn round_outward(&self, bits: u32) -> ComplexInterval {
        ComplexInterval { re: self.re.round_outward(bits), im: self.im.round_outward(bits) }
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.re.mid()), rational::to_f64(&self.im.mid()))
    }
}

impl Add for &ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Neg for &ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval { re: -&self.re, im: -&self.im }
    }
}

impl Mul for &ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, o: &ComplexInterval) -> ComplexInterval {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        ComplexInterval { re, im }
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::rational::{int, rat};

    #[test]
    fn product_encloses() {
        let a = Interval::new(int(-1), int(2));
        let b = Interval::new(int(3), int(4));
        let p = &a * &b;
        assert_eq!(p, Interval::new(int(-4), int(8)));
        assert_eq!(a.sqr(), Interval::new(int(0), int(4)));
        assert_eq!(a.sign(), None);
        assert_eq!(b.sign(), Some(Ordering::Greater));
    }

    #[test]
    fn complex_recip() {
        let z = ComplexInterval::point(int(0), int(2));
        let r = z.recip().unwrap();
        assert_eq!(r, ComplexInterval::point(int(0), rat(-1, 2)));
        assert!(ComplexInterval::zero().recip().is_none());
    }
}
