use humbert_core::exactarith::rational::{int, rat, to_f64};
use humbert_core::exactarith::Rational;
use humbert_core::igusa::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn exact(c: &[i64]) -> IgusaValues<Rational> {
    igusa_exact(&Sextic::from_ints(c).unwrap(), Convention::Deduplicated).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

// Reference values from 720-term permutation sums over high-precision roots,
// divided by the stabilizer orders and rounded to integers.
#[test]
fn frozen_reference_values() {
    let v = exact(&[-1, 0, 0, 0, 0, 0, 1]);
    assert_eq!([v.i2.clone(), v.i4.clone(), v.i6.clone(), v.i10.clone()], [int(240), int(1620), int(119880), int(46656)]);
    assert_eq!(absolute_invariants(&v).unwrap(), [q(51200000, 3), int(480000), int(148000)]);

    let v = exact(&[1, 1, 0, 0, 0, 0, 1]);
    assert_eq!([v.i2.clone(), v.i4.clone(), v.i6.clone(), v.i10.clone()], [int(-240), int(1620), int(-119880), int(-43531)]);
    let j = absolute_invariants(&v).unwrap();
    assert_eq!(j, [
        Rational::new(796262400000i64.into(), 43531.into()),
        Rational::new(22394880000i64.into(), 43531.into()),
        Rational::new(6905088000i64.into(), 43531.into()),
    ]);

    let v = exact(&[0, 1, 0, -2, 0, 0, 3]);
    assert_eq!([v.i2.clone(), v.i4.clone(), v.i6.clone(), v.i10.clone()], [int(24), int(0), int(-40500), int(222021)]);
    assert_eq!(absolute_invariants(&v).unwrap(), [q(98304, 2741), int(0), q(-288000, 2741)]);
}

#[test]
fn i10_is_the_discriminant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 20 {
        let mut c: Vec<i64> = (0..7).map(|_| rng.gen_range(-4..=4)).collect();
        if c[6] == 0 {
            c[6] = 1;
        }
        let f = Sextic::from_ints(&c).unwrap();
        if f.poly().discriminant() == int(0) {
            continue;
        }
        let v = igusa_exact(&f, Convention::Deduplicated).unwrap();
        assert_eq!(v.i10, f.poly().discriminant(), "{:?}", c);
        checked += 1;
    }
}

#[test]
fn rational_roots_agree_with_snapping() {
    let roots = [int(-2), int(-1), rat(1, 3), int(1), int(2), int(5)];
    let lc = rat(-2, 1);
    let direct = igusa_from_roots(&roots, &lc, Convention::Deduplicated, 0).unwrap();
    let snapped = igusa_exact(&Sextic::from_roots(&lc, &roots).unwrap(), Convention::Deduplicated).unwrap();
    assert_eq!(direct, snapped);
}

#[test]
fn affine_substitution_preserves_j_exactly() {
    let f = Sextic::from_ints(&[1, 1, 0, 0, 0, 0, 1]).unwrap();
    let j = absolute_invariants(&igusa_exact(&f, Convention::Deduplicated).unwrap()).unwrap();
    for (u, v) in [(int(2), int(0)), (int(1), int(1)), (rat(-1, 2), int(3)), (int(3), rat(-2, 3))] {
        let g = f.substitute(&u, &v).unwrap();
        let jg = absolute_invariants(&igusa_exact(&g, Convention::Deduplicated).unwrap()).unwrap();
        assert_eq!(j, jg);
    }
}

#[test]
fn interval_mode_overlaps_exact() {
    let f = Sextic::from_ints(&[0, 1, 0, -2, 0, 0, 3]).unwrap();
    let e = absolute_invariants(&igusa_exact(&f, Convention::Deduplicated).unwrap()).unwrap();
    let iv = absolute_invariants_interval(&igusa_interval(&f, 128, Convention::Deduplicated).unwrap()).unwrap();
    for (x, z) in e.iter().zip(iv.iter()) {
        assert!(z.re.contains(x) && z.im.contains(&int(0)));
        assert!(to_f64(&z.re.width()) <= 1e-9 * to_f64(x).abs().max(1.0));
    }
}

#[test]
fn singular_and_degenerate_inputs() {
    let repeated = Sextic::from_ints(&[0, 0, 1, 0, 0, 0, 1]).unwrap();
    assert_eq!(igusa_exact(&repeated, Convention::Deduplicated).unwrap_err(), IgusaError::RepeatedRoot);
    assert_eq!(Sextic::from_ints(&[1, 0, 0, 0, 0, 1, 0]).unwrap_err(), IgusaError::NotSextic);
    let v = exact(&[0, -1, 0, 0, 0, 0, 1]);
    assert_eq!(absolute_invariants(&v).unwrap_err(), IgusaError::IZeroUnsupported);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// The literal sums over all 720 orderings of the roots.
fn naive_sums(r: &[Rational], lc: &Rational) -> [Rational; 4] {
    let sq = |a: &Rational, b: &Rational| {
        let d = a - b;
        &d * &d
    };
    let prod = |s: &[usize], pairs: &[(usize, usize)]| -> Rational {
        pairs.iter().map(|&(i, j)| sq(&r[s[i - 1]], &r[s[j - 1]])).product()
    };
    let c1 = [(1, 2), (2, 3), (3, 1)];
    let c2 = [(4, 5), (5, 6), (6, 4)];
    let c3 = [(1, 4), (2, 5), (3, 6)];
    let (mut i2, mut i4, mut i6) = (int(0), int(0), int(0));
    for s in permutations(6) {
        i2 += prod(&s, &[(1, 2), (3, 4), (5, 6)]);
        i4 += prod(&s, &[c1, c2].concat());
        i6 += prod(&s, &[c1, c2, c3].concat());
    }
    let mut i10 = int(1);
    for i in 0..6 {
        for j in i + 1..6 {
            i10 *= sq(&r[i], &r[j]);
        }
    }
    let p = |k: usize| num_traits::pow(lc.clone(), k);
    [i2 * p(2), i4 * p(4), i6 * p(6), i10 * p(10)]
}

#[test]
fn agrees_with_naive_permutation_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let mut roots: Vec<Rational> = Vec::new();
        while roots.len() < 6 {
            let x = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            if !roots.contains(&x) {
                roots.push(x);
            }
        }
        let lc = rat(rng.gen_range(1..=5), rng.gen_range(1..=3));
        let raw = igusa_from_roots(&roots, &lc, Convention::RawPermutationSum, 0).unwrap();
        let naive = naive_sums(&roots, &lc);
        assert_eq!([raw.i2, raw.i4, raw.i6, raw.i10], naive);
    }
}
