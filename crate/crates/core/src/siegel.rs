//! Degree-2 Siegel upper half-space, `Sp₄(ℤ)` and its fractional-linear action.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactarith::{FieldElement, FieldError};

const PD_PRECISION_CAP: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SiegelError {
    #[error("not in the Siegel upper half-space: {0}")]
    NotInH2(String),
    #[error("entries lie in different number fields")]
    FieldMismatch,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("C·tau + D is singular")]
    SingularDenominator,
    #[error("right 2x2 block of the big period matrix is singular")]
    SingularOmega2,
    #[error("action produced a non-symmetric matrix")]
    NotSymmetric,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// 2×2 matrix over a number field.
pub type Mat2 = [[FieldElement; 2]; 2];

pub fn mat2_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_add(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &x[i][j] + &y[i][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_det(x: &Mat2) -> FieldElement {
    &(&x[0][0] * &x[1][1]) - &(&x[0][1] * &x[1][0])
}

pub fn mat2_inv(x: &Mat2) -> Option<Mat2> {
    let d = mat2_det(x).checked_inv().ok()?;
    Some([
        [&x[1][1] * &d, -&(&x[0][1] * &d)],
        [-&(&x[1][0] * &d), &x[0][0] * &d],
    ])
}

fn int_mat2(f: &FieldElement, m: [[i64; 2]; 2]) -> Mat2 {
    let k = f.field();
    let e = |i: usize, j: usize| FieldElement::from_int(k, m[i][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Symmetric `τ = (τ₁ τ₂; τ₂ τ₃)` with positive definite imaginary part.
#[derive(Clone, PartialEq, Eq)]
pub struct SiegelPoint {
    tau1: FieldElement,
    tau2: FieldElement,
    tau3: FieldElement,
}

impl fmt::Debug for SiegelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.tau1, self.tau2, self.tau2, self.tau3)
    }
}

impl SiegelPoint {
    pub fn tau1(&self) -> &FieldElement {
        &self.tau1
    }
    pub fn tau2(&self) -> &FieldElement {
        &self.tau2
    }
    pub fn tau3(&self) -> &FieldElement {
        &self.tau3
    }

    pub fn matrix(&self) -> Mat2 {
        [[self.tau1.clone(), self.tau2.clone()], [self.tau2.clone(), self.tau3.clone()]]
    }

    /// `τ₁τ₃ − τ₂²`.
    pub fn det(&self) -> FieldElement {
        &(&self.tau1 * &self.tau3) - &(&self.tau2 * &self.tau2)
    }

    pub fn degree(&self) -> usize {
        self.tau1.field().degree()
    }

    /// Certified lower bound for `det Im τ` is positive.
    pub fn certify(&self) -> Result<(), SiegelError> {
        check_h2(&self.tau1, &self.tau2, &self.tau3)
    }
}

/// Validates `(τ₁ τ₂; τ₂ τ₃)` as a point of `H₂`.
pub fn is_siegel(tau1: FieldElement, tau2: FieldElement, tau3: FieldElement) -> Result<SiegelPoint, SiegelError> {
    if !tau1.same_field(&tau2) || !tau1.same_field(&tau3) {
        return Err(SiegelError::FieldMismatch);
    }
    check_h2(&tau1, &tau2, &tau3)?;
    Ok(SiegelPoint { tau1, tau2, tau3 })
}

fn check_h2(t1: &FieldElement, t2: &FieldElement, t3: &FieldElement) -> Result<(), SiegelError> {
    let upper = |t: &FieldElement, name: &str| -> Result<(), SiegelError> {
        match t.im_sign() {
            Ok(Ordering::Greater) => Ok(()),
            Ok(_) => Err(SiegelError::NotInH2(format!("Im {} <= 0", name))),
            Err(FieldError::PrecisionExhausted(_)) => Err(SiegelError::NotInH2(format!("Im {} not certified positive", name))),
            Err(e) => Err(e.into()),
        }
    };
    upper(t1, "tau1")?;
    upper(t3, "tau3")?;
    let mut prec = 32;
    while prec <= PD_PRECISION_CAP {
        let (z1, z2, z3) = (t1.embed(prec)?, t2.embed(prec)?, t3.embed(prec)?);
        let d = &(&z1.im * &z3.im) - &z2.im.sqr();
        match d.sign() {
            Some(Ordering::Greater) => return Ok(()),
            Some(Ordering::Less) => {
                return Err(SiegelError::NotInH2("(Im tau2)^2 >= Im tau1 * Im tau3".into()));
            }
            _ => prec *= 2,
        }
    }
    Err(SiegelError::NotInH2("(Im tau2)^2 < Im tau1 * Im tau3 could not be certified".into()))
}

pub type IMat2 = [[i64; 2]; 2];

/// Integer 4×4 matrix `M` with `ᵗM J M = J`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticMatrix {
    m: [[i64; 4]; 4],
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.m.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{:>4} {:>4} {:>4} {:>4}]", r[0], r[1], r[2], r[3])?;
        }
        Ok(())
    }
}

fn checked_mul4(x: &[[i64; 4]; 4], y: &[[i64; 4]; 4]) -> Option<[[i64; 4]; 4]> {
    let mut r = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut s: i64 = 0;
            for k in 0..4 {
                s = s.checked_add(x[i][k].checked_mul(y[k][j])?)?;
            }
            r[i][j] = s;
        }
    }
    Some(r)
}

fn mul4(x: &[[i64; 4]; 4], y: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    checked_mul4(x, y).expect("symplectic entry overflow")
}

fn transpose4(x: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut r = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            r[i][j] = x[j][i];
        }
    }
    r
}

const J4: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]];

/// Accepts `m` iff `ᵗM J M = J` exactly.
pub fn sp4_check(m: [[i64; 4]; 4]) -> Result<SymplecticMatrix, SiegelError> {
    let lhs = checked_mul4(&transpose4(&m), &J4).and_then(|t| checked_mul4(&t, &m));
    if lhs == Some(J4) {
        Ok(SymplecticMatrix { m })
    } else {
        Err(SiegelError::NotSymplectic)
    }
}

impl SymplecticMatrix {
    pub fn identity() -> Self {
        let mut m = [[0; 4]; 4];
        for (i, r) in m.iter_mut().enumerate() {
            r[i] = 1;
        }
        SymplecticMatrix { m }
    }

    pub fn j() -> Self {
        SymplecticMatrix { m: J4 }
    }

    /// `(A B; C D)` from blocks.
    pub fn from_blocks(a: IMat2, b: IMat2, c: IMat2, d: IMat2) -> Result<Self, SiegelError> {
        let mut m = [[0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][j];
                m[i][j + 2] = b[i][j];
                m[i + 2][j] = c[i][j];
                m[i + 2][j + 2] = d[i][j];
            }
        }
        sp4_check(m)
    }

    /// `(I S; 0 I)` for symmetric `S = (s11 s12; s12 s22)`.
    pub fn translation(s11: i64, s12: i64, s22: i64) -> Self {
        Self::from_blocks([[1, 0], [0, 1]], [[s11, s12], [s12, s22]], [[0, 0], [0, 0]], [[1, 0], [0, 1]]).unwrap()
    }

    /// `(ᵗU⁻¹ 0; 0 U)` for `U ∈ GL₂(ℤ)`.
    pub fn from_gl2(u: IMat2) -> Result<Self, SiegelError> {
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        if det.abs() != 1 {
            return Err(SiegelError::NotSymplectic);
        }
        // ᵗU⁻¹ = det · (d −c; −b a)
        let a = [[det * u[1][1], -det * u[1][0]], [-det * u[0][1], det * u[0][0]]];
        Self::from_blocks(a, [[0, 0], [0, 0]], [[0, 0], [0, 0]], u)
    }

    /// `J` acting on the first coordinate only.
    pub fn partial_j() -> Self {
        Self::from_blocks([[0, 0], [0, 1]], [[1, 0], [0, 0]], [[-1, 0], [0, 0]], [[0, 0], [0, 1]]).unwrap()
    }

    pub fn entries(&self) -> &[[i64; 4]; 4] {
        &self.m
    }

    fn block(&self, r: usize, c: usize) -> IMat2 {
        [[self.m[r][c], self.m[r][c + 1]], [self.m[r + 1][c], self.m[r + 1][c + 1]]]
    }
    pub fn a(&self) -> IMat2 {
        self.block(0, 0)
    }
    pub fn b(&self) -> IMat2 {
        self.block(0, 2)
    }
    pub fn c(&self) -> IMat2 {
        self.block(2, 0)
    }
    pub fn d(&self) -> IMat2 {
        self.block(2, 2)
    }

    /// Product; panics on `i64` overflow (see [`SymplecticMatrix::checked_mul`]).
    pub fn mul(&self, o: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix { m: mul4(&self.m, &o.m) }
    }

    pub fn checked_mul(&self, o: &SymplecticMatrix) -> Option<SymplecticMatrix> {
        checked_mul4(&self.m, &o.m).map(|m| SymplecticMatrix { m })
    }

    pub fn transpose(&self) -> SymplecticMatrix {
        SymplecticMatrix { m: transpose4(&self.m) }
    }

    /// `M⁻¹ = −J ᵗM J`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let mut r = mul4(&mul4(&J4, &transpose4(&self.m)), &J4);
        for row in r.iter_mut() {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
        SymplecticMatrix { m: r }
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.m.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }
}

/// `Mτ = (Aτ + B)(Cτ + D)⁻¹`, re-certified as a point of `H₂`.
pub fn sp4_act(m: &SymplecticMatrix, tau: &SiegelPoint) -> Result<SiegelPoint, SiegelError> {
    let p = act_unchecked(m, tau)?;
    p.certify()?;
    Ok(p)
}

/// The action without re-certifying positivity (exact symmetry is still checked).
pub fn act_unchecked(m: &SymplecticMatrix, tau: &SiegelPoint) -> Result<SiegelPoint, SiegelError> {
    let t = tau.matrix();
    let f = &tau.tau1;
    let num = mat2_add(&mat2_mul(&int_mat2(f, m.a()), &t), &int_mat2(f, m.b()));
    let den = mat2_add(&mat2_mul(&int_mat2(f, m.c()), &t), &int_mat2(f, m.d()));
    let inv = mat2_inv(&den).ok_or(SiegelError::SingularDenominator)?;
    let r = mat2_mul(&num, &inv);
    if r[0][1] != r[1][0] {
        return Err(SiegelError::NotSymmetric);
    }
    let [[t1, t2], [_, t3]] = r;
    Ok(SiegelPoint { tau1: t1, tau2: t2, tau3: t3 })
}

/// Standard generators: translations by `E₁₁`, `E₂₂`, `E₁₂ + E₂₁`, `J`, and
/// `(ᵗU⁻¹ 0; 0 U)` for `U` among `(1 1; 0 1)`, `(0 1; 1 0)`, `diag(−1, 1)`.
pub fn standard_generators() -> Vec<SymplecticMatrix> {
    vec![
        SymplecticMatrix::translation(1, 0, 0),
        SymplecticMatrix::translation(0, 0, 1),
        SymplecticMatrix::translation(0, 1, 0),
        SymplecticMatrix::j(),
        SymplecticMatrix::from_gl2([[1, 1], [0, 1]]).unwrap(),
        SymplecticMatrix::from_gl2([[0, 1], [1, 0]]).unwrap(),
        SymplecticMatrix::from_gl2([[-1, 0], [0, 1]]).unwrap(),
    ]
}

/// Generators together with their inverses.
pub fn generators_with_inverses() -> Vec<SymplecticMatrix> {
    let mut out = Vec::new();
    for g in standard_generators() {
        let gi = g.inverse();
        out.push(g);
        if gi != g {
            out.push(gi);
        }
    }
    out
}

/// Deterministic product of `length` matrices drawn from `generators`.
pub fn random_word(generators: &[SymplecticMatrix], length: usize, seed: u64) -> SymplecticMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = SymplecticMatrix::identity();
    for _ in 0..length {
        let g = &generators[rng.gen_range(0..generators.len())];
        m = m.mul(g);
    }
    m
}

/// Random word in the standard generators and their inverses.
pub fn sp4_random_word(length: usize, seed: u64) -> SymplecticMatrix {
    random_word(&generators_with_inverses(), length, seed)
}

/// `Π = (Ω₁ | Ω₂)`, a 2×4 matrix over a number field.
#[derive(Debug, Clone)]
pub struct BigPeriodMatrix {
    pub rows: [[FieldElement; 4]; 2],
}

impl BigPeriodMatrix {
    pub fn omega1(&self) -> Mat2 {
        let r = &self.rows;
        [[r[0][0].clone(), r[0][1].clone()], [r[1][0].clone(), r[1][1].clone()]]
    }
    pub fn omega2(&self) -> Mat2 {
        let r = &self.rows;
        [[r[0][2].clone(), r[0][3].clone()], [r[1][2].clone(), r[1][3].clone()]]
    }

    /// Reorders columns: new column `k` is old column `perm[k]`.
    pub fn permute_columns(&self, perm: [usize; 4]) -> BigPeriodMatrix {
        let r = &self.rows;
        let row = |i: usize| [r[i][perm[0]].clone(), r[i][perm[1]].clone(), r[i][perm[2]].clone(), r[i][perm[3]].clone()];
        BigPeriodMatrix { rows: [row(0), row(1)] }
    }
}

/// `Ω₂⁻¹ Ω₁`; membership in `H₂` is left to the caller.
pub fn normalize_big_period(pi: &BigPeriodMatrix) -> Result<Mat2, SiegelError> {
    let inv = mat2_inv(&pi.omega2()).ok_or(SiegelError::SingularOmega2)?;
    Ok(mat2_mul(&inv, &pi.omega1()))
}
