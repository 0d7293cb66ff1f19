use humbert_core::exactarith::{FieldElement, NumberField};
use humbert_core::humbert::*;
use humbert_core::siegel::*;

fn example_point() -> SiegelPoint {
    let k = NumberField::cyclotomic(5).unwrap();
    let t1 = FieldElement::from_ints(&k, &[0, 0, 0, 0, -1]);
    let t2 = FieldElement::from_ints(&k, &[1, 0, 1]);
    let t3 = FieldElement::from_ints(&k, &[0, 0, 1, -1]);
    is_siegel(t1, t2, t3).unwrap()
}

fn linearizing_matrix() -> SymplecticMatrix {
    sp4_check([[-1, 0, 0, 0], [0, 1, 0, 1], [-3, 0, -1, 0], [0, 2, 0, 3]]).unwrap()
}

#[test]
fn transformed_point_solves_linear_relation() {
    let tau = example_point();
    let tp = sp4_act(&linearizing_matrix(), &tau).unwrap();
    assert!(verify_relation(&tp, &SingularRelation::new(-1, 1, 1, 0, 0)));
}

#[test]
fn lattices_before_and_after() {
    let tau = example_point();
    let lat = relation_lattice(&tau).unwrap();
    assert_eq!((lat.rank(), lat.lin_rank()), (1, 0));
    let tp = sp4_act(&linearizing_matrix(), &tau).unwrap();
    let lat2 = relation_lattice(&tp).unwrap();
    assert_eq!(lat2.rank(), 1);
    assert!(lat2.lin_rank() >= 1);
    assert!(lat2.contains(&SingularRelation::new(-1, 1, 1, 0, 0)));
    let g = lat.basis()[0];
    assert_eq!(g.discriminant(), lat2.basis()[0].discriminant());
    assert_eq!(g.discriminant(), 5);
    let moved = transform_relation(&linearizing_matrix(), &g).unwrap();
    assert_eq!(moved.canonical(), SingularRelation::new(1, -1, -1, 0, 0));
    assert_eq!(classify(&lat), Classification::Commutative);
    assert!(detect_imaginary_quadratic(&tau).unwrap().is_none());
    assert_eq!(trdeg_report(&tau, &lat, true).trdeg_bound, 3);
    assert_eq!(trdeg_report(&tp, &lat2, true).trdeg_bound, 2);
}

#[test]
fn normalizer_certifies_on_example() {
    let tau = example_point();
    let g = relation_lattice(&tau).unwrap().basis()[0];
    let n = humbert_normalize(&tau, &g, DEFAULT_BUDGET).unwrap();
    assert_eq!(n.normalized, SingularRelation::new(-1, 1, 1, 0, 0));
    let image = sp4_act(&n.matrix, &tau).unwrap();
    assert!(verify_relation(&image, &n.normalized));
}
