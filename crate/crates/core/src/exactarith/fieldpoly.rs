//! Univariate polynomials and rational functions with number-field coefficients.

use std::fmt;
use std::sync::Arc;

use super::field::{FieldElement, NumberField};

#[derive(Clone)]
pub struct FPoly {
    field: Arc<NumberField>,
    /// Ascending, without trailing zeros.
    coeffs: Vec<FieldElement>,
}

impl PartialEq for FPoly {
    fn eq(&self, o: &Self) -> bool {
        self.field.same_as(&o.field) && self.coeffs == o.coeffs
    }
}

impl Eq for FPoly {}

impl fmt::Debug for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", c),
                1 => format!("({})*z", c),
                _ => format!("({})*z^{}", c, i),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FPoly {
    pub fn new(field: &Arc<NumberField>, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        let k = c.field().clone();
        Self::new(&k, vec![c])
    }

    /// The variable `z`.
    pub fn var(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![FieldElement::zero(field), FieldElement::one(field)])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &FPoly) -> FPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = FieldElement::zero(&self.field);
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        FPoly::new(&self.field, c)
    }

    pub fn neg(&self) -> FPoly {
        FPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &FPoly) -> FPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FPoly) -> FPoly {
        if self.is_zero() || o.is_zero() {
            return FPoly::zero(&self.field);
        }
        let mut c = vec![FieldElement::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        FPoly::new(&self.field, c)
    }

    pub fn scale(&self, s: &FieldElement) -> FPoly {
        FPoly::new(&self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Panics when dividing by the zero polynomial.
    pub fn div_rem(&self, d: &FPoly) -> (FPoly, FPoly) {
        let dl = d.lead().expect("division by zero polynomial").inv();
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        let mut q = vec![FieldElement::zero(&self.field); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.lead().unwrap() * &dl;
            let shift = rd - dd;
            q[shift] = c.clone();
            let mut t = vec![FieldElement::zero(&self.field); shift];
            t.extend(d.coeffs.iter().map(|x| x * &c));
            r = r.sub(&FPoly::new(&self.field, t));
        }
        (FPoly::new(&self.field, q), r)
    }

    pub fn monic(&self) -> FPoly {
        match self.lead() {
            Some(l) => self.scale(&l.inv()),
            None => self.clone(),
        }
    }

    pub fn gcd(a: &FPoly, b: &FPoly) -> FPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn eval(&self, z: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }
}

/// `num / den` with coprime parts and monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: FPoly,
    den: FPoly,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

impl RationalFunction {
    /// `None` when `den` is zero.
    pub fn new(num: FPoly, den: FPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let g = FPoly::gcd(&num, &den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let l = d.lead().unwrap().inv();
        n = n.scale(&l);
        d = d.scale(&l);
        Some(RationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: FPoly) -> Self {
        let k = p.field().clone();
        RationalFunction { num: p, den: FPoly::constant(FieldElement::one(&k)) }
    }

    pub fn num(&self) -> &FPoly {
        &self.num
    }

    pub fn den(&self) -> &FPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).unwrap()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::new(self.num.scale(s), self.den.clone()).unwrap()
    }

    /// `None` at a pole.
    pub fn eval(&self, z: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(z) * &d.inv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::rational::int;

    #[test]
    fn reduction_and_arithmetic() {
        let k = NumberField::quadratic(5).unwrap();
        let s = FieldElement::generator(&k);
        let z = FPoly::var(&k);
        let c = |x: FieldElement| FPoly::constant(x);
        // (z² − 5)/(z − √5) = z + √5
        let num = z.mul(&z).sub(&c(FieldElement::from_int(&k, 5)));
        let den = z.sub(&c(s.clone()));
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r.den().degree(), Some(0));
        assert_eq!(r.num(), &z.add(&c(s.clone())));
        let one = RationalFunction::from_poly(c(FieldElement::one(&k)));
        let inv_z = RationalFunction::new(c(FieldElement::one(&k)), z.clone()).unwrap();
        let sum = inv_z.add(&inv_z).sub(&inv_z.scale(&FieldElement::from_int(&k, 2)));
        assert!(sum.is_zero());
        assert_eq!(one.mul(&inv_z), inv_z);
        assert_eq!(inv_z.eval(&FieldElement::from_int(&k, 2)).unwrap(), FieldElement::from_rational(&k, int(1) / int(2)));
        assert!(inv_z.eval(&FieldElement::zero(&k)).is_none());
    }
}
