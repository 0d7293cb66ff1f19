use humbert_core::embeddings::*;
use humbert_core::exactarith::{FieldElement, NumberField, QPoly};
use humbert_core::humbert::{relation_lattice, verify_relation, SingularRelation};
use humbert_core::siegel::normalize_big_period;

const SHIMURA_SETS: [(i64, i64, i64, i64); 4] = [(6, 1, 2, 5), (10, 1, 2, 41), (14, 1, 1, 5), (15, 1, 2, 61)];

#[test]
fn hashimoto_family_vanishes_identically() {
    for (d, n, a, p) in SHIMURA_SETS {
        let pr = ShimuraParams::new(d, n, a, None).unwrap();
        assert_eq!(pr.p, p);
        let om = hashimoto_omega(&pr).unwrap();
        assert!(om.is_symmetric());
        for x in -2..=2 {
            for y in -2..=2 {
                let r = hashimoto_relation(&pr, x, y).unwrap();
                assert!(hashimoto_identity(&om, &r), "{:?} {} {}", pr, x, y);
            }
        }
        assert_eq!(hashimoto_relation(&pr, 1, 0).unwrap().discriminant(), p as i128);
        let wrong = hashimoto_relation(&pr, 1, 0).unwrap();
        let wrong = SingularRelation::new(wrong.a, wrong.b, wrong.c, wrong.d, wrong.e + 1);
        assert!(!hashimoto_identity(&om, &wrong));
    }
}

#[test]
fn hashimoto_point_carries_the_family() {
    let pr = ShimuraParams::new(6, 1, 2, None).unwrap();
    let (_, sqrt_p, i) = NumberField::biquadratic(pr.p, -1).unwrap();
    let k = sqrt_p.field().clone();
    let z = &FieldElement::from_ints(&k, &[1]) .scale(&humbert_core::exactarith::rational::rat(1, 3)) + &i;
    let tau = hashimoto_point(&pr, &sqrt_p, &z).unwrap();
    for (x, y) in [(1, 0), (0, 1), (2, -1)] {
        assert!(verify_relation(&tau, &hashimoto_relation(&pr, x, y).unwrap()));
    }
    let lat = relation_lattice(&tau).unwrap();
    assert!(lat.rank() >= 2);
    assert!(lat.is_positive_definite());
    assert!(hashimoto_point(&pr, &sqrt_p, &(-&z)).is_err());
}

#[test]
fn kani_sweep() {
    let sweep = KaniParams::sweep(30, 5, 20);
    assert!(sweep.len() > 300);
    for pr in sweep {
        assert!(kani_symplectic_check(&pr), "{:?}", pr);
        let kl = kani_lattice(&pr);
        assert!(kl.generators_verified && kl.matches_standard_form, "{:?}", pr);
        let f = kl.form;
        assert_eq!(f.discriminant(), -16 * pr.n as i128);
        assert_eq!(f.value(1, 0), (pr.c * pr.c) as i128);
        assert_eq!(f.value(pr.b * pr.b, -pr.a), (pr.b * pr.b) as i128);
        assert!(is_type_n_form(&f).is_type_n, "{:?}", pr);
    }
}

fn cube_root_of_two_in_h() -> FieldElement {
    let k = NumberField::with_root_near(QPoly::from_ints(&[-2, 0, 0, 1]), -0.63, 1.09, "t").unwrap();
    FieldElement::generator(&k)
}

#[test]
fn kani_point_has_linear_rank_two() {
    let t = cube_root_of_two_in_h();
    for (n, a, b, c) in [(2, 1, 3, 1), (1, 1, 2, 1), (3, 2, 13, 1), (5, -1, 3, 2)] {
        let pr = KaniParams::new(n, a, b, c).unwrap();
        let tau = kani_tau(&pr, &t).unwrap();
        let lat = relation_lattice(&tau).unwrap();
        assert_eq!((lat.rank(), lat.lin_rank()), (2, 2), "{:?}", pr);
        let kl = kani_lattice(&pr);
        assert!(kl.generators.iter().all(|g| lat.contains(g)));
        assert!(kl.generators.iter().all(|g| verify_relation(&tau, g)));
        let pi = kani_big_period(&pr, &t);
        assert_eq!(normalize_big_period(&pi).unwrap(), tau.matrix());
    }
}

#[test]
fn kani_rejects_bad_input() {
    assert!(KaniParams::new(2, 1, 3, 2).is_err());
    let pr = KaniParams::new(1, 0, 1, 1).unwrap();
    assert_eq!(kani_tau(&pr, &(-&cube_root_of_two_in_h())).unwrap_err(), EmbeddingError::NotInUpperHalfPlane);
}

#[test]
fn type_n_rejects_wrong_discriminant_and_congruence() {
    let r = is_type_n_form(&TypeNForm { a: 4, b: 4, c: 5, n: 1 });
    assert!(!r.discriminant_ok && !r.is_type_n);
    // discriminant −16 but represents 2 mod 4
    let r = is_type_n_form(&TypeNForm { a: 2, b: 0, c: 2, n: 1 });
    assert!(r.discriminant_ok && !r.congruence_ok);
}
