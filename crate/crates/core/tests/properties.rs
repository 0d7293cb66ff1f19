use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use humbert_core::embeddings::{kani_lattice, kani_symplectic_check, KaniParams};
use humbert_core::exactarith::linalg::{integer_kernel, integer_saturate, to_rational_matrix};
use humbert_core::exactarith::rational::{int, rat};
use humbert_core::exactarith::{format_rational, parse_rational, FieldElement, NumberField, Rational};
use humbert_core::hilbert::{hsr_to_hz, hz_to_hsr, quaternion_norm, split_witness, RealQuadraticData};
use humbert_core::humbert::*;
use humbert_core::siegel::*;

fn cyclo5() -> Arc<NumberField> {
    NumberField::cyclotomic(5).unwrap()
}

fn element(k: &Arc<NumberField>, c: &[(i64, i64)]) -> FieldElement {
    FieldElement::new(k, c.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 4)
}

/// Points spanning lattice ranks 0–3.
fn fixture_points() -> Vec<SiegelPoint> {
    let k5 = cyclo5();
    let e = |c: &[i64]| FieldElement::from_ints(&k5, c);
    let cm5 = is_siegel(e(&[0, 0, 0, 0, -1]), e(&[1, 0, 1]), e(&[0, 0, 1, -1])).unwrap();
    let ki = NumberField::quadratic(-1).unwrap();
    let i = FieldElement::generator(&ki);
    let iso = is_siegel(i.clone(), FieldElement::zero(&ki), i.scale(&int(2))).unwrap();
    let k3 = NumberField::with_root_near(humbert_core::exactarith::QPoly::from_ints(&[-2, 0, 0, 1]), -0.63, 1.09, "t").unwrap();
    let t = FieldElement::generator(&k3);
    let kani = is_siegel(t.scale(&int(3)), t.scale(&int(2)), t.scale(&int(2))).unwrap();
    let ks = NumberField::with_root_near(humbert_core::exactarith::QPoly::from_ints(&[-1, -1, 0, 0, 0, 1]), 0.18, 1.08, "s").unwrap();
    let s = FieldElement::generator(&ks);
    let s2 = &s * &s;
    let generic = is_siegel(s.clone(), s2.scale(&rat(1, 10)), &(&s2 * &s) + &s.scale(&int(2))).unwrap();
    vec![cm5, iso, kani, generic]
}

/// `(s, s²/10, 2s + s²)` for the root `s ≈ re + i·im` of the given polynomial.
fn generic_point(poly: &[i64], re: f64, im: f64) -> SiegelPoint {
    let k = NumberField::with_root_near(humbert_core::exactarith::QPoly::from_ints(poly), re, im, "s").unwrap();
    let s = FieldElement::generator(&k);
    let s2 = &s * &s;
    is_siegel(s.clone(), s2.scale(&rat(1, 10)), &s.scale(&int(2)) + &s2).unwrap()
}


proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_ring_axioms(a in coords(), b in coords(), c in coords()) {
        let k = cyclo5();
        let (x, y, z) = (element(&k, &a), element(&k, &b), element(&k, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.inv(), x.clone());
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }
    }

    #[test]
    fn embedding_is_multiplicative(a in coords(), b in coords()) {
        let k = cyclo5();
        let (x, y) = (element(&k, &a), element(&k, &b));
        let exy = (&x * &y).embed(64).unwrap();
        let prod = &x.embed(64).unwrap() * &y.embed(64).unwrap();
        prop_assert!(exy.overlaps(&prod));
    }

    #[test]
    fn integer_kernel_is_saturated(m in prop::collection::vec(prop::collection::vec(-9i64..=9, 5), 1..4)) {
        let a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let ker = integer_kernel(&a, 5);
        for v in &ker {
            for r in &a {
                let s: BigInt = r.iter().zip(v).map(|(x, y)| x * y).sum();
                prop_assert_eq!(s, BigInt::from(0));
            }
        }
        // saturating an already saturated lattice changes nothing (index 1)
        let again = integer_saturate(&to_rational_matrix(&ker), 5);
        prop_assert_eq!(again.len(), ker.len());
        let both: Vec<Vec<BigInt>> = ker.iter().chain(again.iter()).cloned().collect();
        prop_assert_eq!(humbert_core::exactarith::linalg::hnf(&both), humbert_core::exactarith::linalg::hnf(&ker));
    }

    #[test]
    fn rational_format_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn random_words_are_symplectic(len in 0usize..20, seed in any::<u64>()) {
        let m = sp4_random_word(len, seed);
        prop_assert!(sp4_check(*m.entries()).is_ok());
        prop_assert_eq!(m.mul(&m.inverse()), SymplecticMatrix::identity());
    }

    #[test]
    fn action_is_invertible_and_stays_in_h2(len in 1usize..10, seed in any::<u64>(), which in 0usize..3) {
        let tau = &fixture_points()[which];
        let m = sp4_random_word(len, seed);
        let t2 = sp4_act(&m, tau).unwrap();
        prop_assert!(t2.certify().is_ok());
        let back = sp4_act(&m.inverse(), &t2).unwrap();
        prop_assert_eq!(back.matrix(), tau.matrix());
    }

    #[test]
    fn transform_commutes_with_action(len in 1usize..10, seed in any::<u64>()) {
        let tau = &fixture_points()[0];
        let rel = relation_lattice(tau).unwrap().basis()[0];
        let m = sp4_random_word(len, seed);
        let r2 = transform_relation(&m, &rel).unwrap();
        prop_assert!(verify_relation(&act_unchecked(&m, tau).unwrap(), &r2));
        prop_assert_eq!(r2.discriminant(), rel.discriminant());
    }

    #[test]
    fn discriminant_is_invariant(v in prop::array::uniform5(-30i64..=30), len in 1usize..8, seed in any::<u64>()) {
        let rel = SingularRelation::from_array(v);
        let m = sp4_random_word(len, seed);
        prop_assert_eq!(transform_relation(&m, &rel).unwrap().discriminant(), rel.discriminant());
    }

    #[test]
    fn quaternion_witness_norm_zero(n1 in -50i64..50, d1 in 1i64..9, n2 in -50i64..50, d2 in 1i64..9, which in 0usize..3) {
        prop_assume!(n1 != 0 || n2 != 0);
        let kd = RealQuadraticData::new([5, 13, 17][which]).unwrap();
        let w = split_witness(&kd, &kd.element(rat(n1, d1), rat(n2, d2))).unwrap();
        prop_assert_eq!(quaternion_norm(&w.algebra, &w.mu), Rational::from_integer(0.into()));
    }

    #[test]
    fn hz_round_trip(v in prop::array::uniform5(-40i64..=40)) {
        let kd = RealQuadraticData::new(13).unwrap();
        let rel = SingularRelation::from_array(v);
        let bm = hsr_to_hz(&rel, &kd);
        prop_assert!(bm.is_valid(&kd));
        let back = hz_to_hsr(&bm, &kd).unwrap();
        prop_assert_eq!(back.c, 0);
        prop_assert_eq!(hsr_to_hz(&back, &kd), bm);
    }

    #[test]
    fn kani_gram_is_standard(n in 1i64..60, a in -8i64..=8, c in 1i64..40) {
        prop_assume!((n * a * a + 1) % c == 0);
        let pr = KaniParams::new(n, a, (n * a * a + 1) / c, c).unwrap();
        prop_assert!(kani_symplectic_check(&pr));
        let kl = kani_lattice(&pr);
        prop_assert!(kl.matches_standard_form && kl.generators_verified);
        prop_assert_eq!(kl.form.discriminant(), -16 * n as i128);
    }
}

#[test]
fn lattice_invariants_on_fixtures() {
    let pts = fixture_points();
    let ranks: Vec<usize> = pts.iter().map(|t| relation_lattice(t).unwrap().rank()).collect();
    assert_eq!(ranks, vec![1, 3, 2, 0]);
    for tau in &pts {
        let lat = relation_lattice(tau).unwrap();
        assert!(lat.is_positive_definite());
        assert!(lat.lin_rank() <= lat.rank().min(2));
        if lat.rank() == 3 {
            assert_eq!(lat.lin_rank(), 2);
        }
        for r in lat.basis() {
            assert!(verify_relation(tau, r));
            assert!(r.is_primitive());
            let rho = analytic_rep(r, tau).unwrap();
            let k = tau.tau1().field();
            assert_eq!(&rho[0][0] + &rho[1][1], FieldElement::from_int(k, r.b));
            assert_eq!(mat2_det(&rho), FieldElement::from_int(k, r.a * r.c + r.d * r.e));
        }
        // saturation: the lattice equals the integer points of its rational span
        let span: Vec<Vec<Rational>> = lat.basis().iter().map(|r| r.to_array().iter().map(|&x| int(x)).collect()).collect();
        if !span.is_empty() {
            assert_eq!(integer_saturate(&span, 5).len(), lat.rank());
            for v in integer_saturate(&span, 5) {
                let r = SingularRelation::from_bigints(&v).unwrap();
                assert!(lat.contains(&r));
            }
        }
    }
}

/// Five elements `1, τ₁, τ₂, τ₃, det τ` of a quartic field are always ℚ-linearly
/// dependent, so a point over a quartic field never has rank 0.
#[test]
fn quartic_points_always_carry_a_relation() {
    let tau = generic_point(&[3, 1, 0, 0, 1], 0.94, 1.07);
    let lat = relation_lattice(&tau).unwrap();
    assert_eq!(lat.rank(), 1);
    assert!(lat.is_positive_definite());
}
