//! Exact linear algebra over ℚ and ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

pub type QMatrix = Vec<Vec<Rational>>;
pub type ZMatrix = Vec<Vec<BigInt>>;

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref(m: &[Vec<Rational>]) -> (QMatrix, Vec<usize>) {
    let mut a: QMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : M x = 0}`; `ncols` is needed when `m` has no rows.
pub fn rational_kernel(m: &[Vec<Rational>], ncols: usize) -> QMatrix {
    let (a, pivots) = rref(m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        out.push(v);
    }
    out
}

pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Scales a rational vector to a primitive integer vector (same direction).
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Row Hermite normal form: positive pivots, entries above each pivot reduced
/// into `[0, pivot)`, zero rows dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> ZMatrix {
    let mut a: ZMatrix = rows.to_vec();
    let n = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        // gcd-reduce column c below row r
        loop {
            let nz: Vec<usize> = (r..n).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                for j in c..cols {
                    let t = &q * &a[r][j];
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in c..cols {
                let t = &q * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// ℤ-basis of `{x ∈ ℤ^n : A x = 0}`, in Hermite normal form.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> ZMatrix {
    let k = a.len();
    // rows [Aᵀ e_j | e_j], reduce the first k columns unimodularly
    let mut rows: ZMatrix = (0..n)
        .map(|j| {
            let mut r: Vec<BigInt> = (0..k).map(|i| a[i][j].clone()).collect();
            r.extend((0..n).map(|t| if t == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    rows = hnf_full(&rows, k);
    let kernel: ZMatrix = rows
        .into_iter()
        .filter(|r| r[..k].iter().all(|x| x.is_zero()))
        .map(|r| r[k..].to_vec())
        .collect();
    hnf(&kernel)
}

/// Row echelon over ℤ on the first `k` columns, keeping every row.
fn hnf_full(rows: &[Vec<BigInt>], k: usize) -> ZMatrix {
    let mut a = rows.to_vec();
    let n = a.len();
    let mut r = 0;
    for c in 0..k {
        if r == n {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..n).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let len = a[r].len();
                for j in 0..len {
                    let t = &q * &a[r][j];
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[r][c].is_zero() {
            r += 1;
        }
    }
    a
}

/// `V ∩ ℤ^n` for `V` spanned by the given rational vectors, in HNF.
pub fn integer_saturate(span: &[Vec<Rational>], n: usize) -> ZMatrix {
    if span.is_empty() || rank(span) == 0 {
        return Vec::new();
    }
    let perp = rational_kernel(span, n);
    let a: ZMatrix = perp.iter().map(|v| primitive(v)).collect();
    if a.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    integer_kernel(&a, n)
}

pub fn to_rational_matrix(m: &[Vec<BigInt>]) -> QMatrix {
    m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
}
