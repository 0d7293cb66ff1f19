use humbert_core::exactarith::rational::{int, rat};
use humbert_core::exactarith::FieldElement;
use humbert_core::hilbert::*;
use humbert_core::humbert::{relation_value, verify_relation, SingularRelation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn phi_round_trips() {
    for delta in [5, 13, 17] {
        let kd = RealQuadraticData::new(delta).unwrap();
        assert!(normalized_relation_identity(&kd));
        let (e, i) = kd.with_quadratic(-1).unwrap();
        let z1 = i.clone();
        let z2 = &i.scale(&int(2)) + &FieldElement::from_rational(i.field(), rat(1, 3));
        let tau = phi(&z1, &z2, &e).unwrap();
        assert!(verify_relation(&tau, &normalized_relation(delta)));
        assert_eq!(phi_inverse(&tau, &e).unwrap(), (z1, z2));
        let again = phi(&phi_inverse(&tau, &e).unwrap().0, &phi_inverse(&tau, &e).unwrap().1, &e).unwrap();
        assert_eq!(again.matrix(), tau.matrix());

        // a quadratic irrationality on the diagonal
        let (e3, s3) = kd.with_quadratic(-3).unwrap();
        let z = (&FieldElement::one(s3.field()) + &s3).scale(&rat(1, 2));
        let tau = phi(&z, &z, &e3).unwrap();
        assert_eq!(phi_inverse(&tau, &e3).unwrap(), (z.clone(), z));
    }
}

#[test]
fn image_of_phi_for_delta_5() {
    let kd = RealQuadraticData::new(5).unwrap();
    let (e, i) = kd.with_quadratic(-1).unwrap();
    let tau = phi(&i, &i.scale(&int(2)), &e).unwrap();
    assert_eq!(tau.tau1(), &i.scale(&int(3)));
    assert_eq!(tau.tau2(), &(&(&i * &e.w) + &(&i.scale(&int(2)) * &e.wbar)));
    // det Im φ(i, i) = Δ
    let t = phi(&i, &i, &e).unwrap();
    let im = |x: &FieldElement| (x * &i).scale(&int(-1));
    let d = &(&im(t.tau1()) * &im(t.tau3())) - &(&im(t.tau2()) * &im(t.tau2()));
    assert_eq!(d, FieldElement::from_int(i.field(), 5));
}

/// `√Δ·(p√Δ z₁z₂ − γ̄z₁ + γz₂ + q/√Δ)` equals the relation evaluated at `φ(z₁, z₂)`.
#[test]
fn hz_equation_matches_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for delta in [5, 13] {
        let kd = RealQuadraticData::new(delta).unwrap();
        let (e, i) = kd.with_quadratic(-1).unwrap();
        let l = i.field().clone();
        for _ in 0..10 {
            let c: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-6..=6));
            let rel = SingularRelation::from_array(c);
            let bm = hsr_to_hz(&rel, &kd);
            let z1 = &i.scale(&rat(rng.gen_range(1..5), rng.gen_range(1..4))) + &FieldElement::from_int(&l, rng.gen_range(-3..3));
            let z2 = &i.scale(&rat(rng.gen_range(1..5), rng.gen_range(1..4))) + &FieldElement::from_int(&l, rng.gen_range(-3..3));
            let tau = phi(&z1, &z2, &e).unwrap();
            let g = kd.map_into(&bm.gamma, &e);
            let gbar = kd.map_into(&bm.gamma.conj().unwrap(), &e);
            let s = &e.sqrt_delta;
            let hz = &(&(&(&(s * &z1) * &z2).scale(&int(bm.p)) - &(&gbar * &z1)) + &(&g * &z2))
                + &s.inv().scale(&int(bm.q));
            assert_eq!(relation_value(&tau, &rel), s * &hz, "{:?}", c);
        }
    }
}

#[test]
fn hz_round_trips_on_random_gamma() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for delta in [5, 13] {
        let kd = RealQuadraticData::new(delta).unwrap();
        for _ in 0..50 {
            let (m, n) = (rng.gen_range(-10..=10), rng.gen_range(-10..=10));
            let (p, q) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5));
            let gamma = &kd.element(int(m), int(n)) * &kd.sqrt_delta().inv();
            let bm = SkewHermitian { p, q, gamma };
            assert!(bm.is_valid(&kd));
            let rel = hz_to_hsr(&bm, &kd).unwrap();
            assert_eq!(hsr_to_hz(&rel, &kd), bm);
            let d = hz_discriminant(&bm, &kd);
            assert_eq!(d, hz_discriminant(&bm.neg(), &kd));
            assert!(d.m.is_integer());
        }
    }
}

#[test]
fn split_witnesses_have_norm_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for delta in [5, 13] {
        let kd = RealQuadraticData::new(delta).unwrap();
        let mut n = 0;
        while n < 50 {
            let alpha = kd.element(rat(rng.gen_range(-20..=20), rng.gen_range(1..=6)), rat(rng.gen_range(-20..=20), rng.gen_range(1..=6)));
            if alpha.is_zero() {
                continue;
            }
            let w = split_witness(&kd, &alpha).unwrap();
            assert_eq!(w.algebra.b, alpha.norm());
            assert_eq!(quaternion_norm(&w.algebra, &w.mu), int(0));
            n += 1;
        }
    }
}

#[test]
fn obstruction_reports() {
    let kd = RealQuadraticData::new(5).unwrap();
    let r = shimura_linear_obstruction(&kd, &SingularRelation::new(0, 1, 0, 0, 0)).unwrap();
    assert!(r.split && r.witness_norm == int(0));
    assert_eq!(r.alpha, &kd.wbar() * &kd.element(rat(1, 5), int(0)));
    assert_eq!(RealQuadraticData::new(8).unwrap_err(), HilbertError::NotFundamental(8));
    assert_eq!(
        shimura_linear_obstruction(&kd, &SingularRelation::new(0, 0, 0, 0, 0)).unwrap_err(),
        HilbertError::TrivialRelation
    );
}
