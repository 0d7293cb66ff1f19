//! Exact rational, interval, polynomial and number-field arithmetic.

pub mod ball;
pub mod field;
pub mod fieldpoly;
pub mod interval;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod roots;

pub use fieldpoly::{FPoly, RationalFunction};
pub use field::{field_arith, FieldElement, FieldError, FieldOp, NumberField};
pub use interval::{ComplexInterval, Interval};
pub use poly::QPoly;
pub use rational::{format_rational, parse_rational, Rational};
pub use roots::{certified_roots, CertifiedRoot, RootDisk};
