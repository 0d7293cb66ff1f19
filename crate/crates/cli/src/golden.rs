//! Replays the worked examples: the CM point over `ℚ(ζ₅)` and its linearizing
//! matrix, the block formulas, the Hashimoto and Kani displays.

use serde::Serialize;

use humbert_core::embeddings::{hashimoto_omega, kani_lattice, kani_symplectic_check, KaniParams, ShimuraParams};
use humbert_core::exactarith::{FPoly, FieldElement, NumberField, RationalFunction};
use humbert_core::humbert::{
    classify, humbert_normalize, interpret_discriminant, minimal_relations, rel_to_rational_rep, relation_lattice,
    transform_relation, trdeg_report, verify_relation, Classification, DiscriminantMeaning, SingularRelation,
    DEFAULT_BUDGET,
};
use humbert_core::json::{self as hjson, siegel_from_json, SiegelPointJson};
use humbert_core::siegel::{is_siegel, sp4_act, sp4_check, sp4_random_word, SiegelPoint};

pub const CM5_FIXTURE: &str = include_str!("../fixtures/cm5_root.json");

/// The linearizing matrix for the CM point over `ℚ(ζ₅)`.
pub const LINEARIZING_M: [[i64; 4]; 4] = [[-1, 0, 0, 0], [0, 1, 0, 1], [-3, 0, -1, 0], [0, 2, 0, 3]];

pub const LINEAR_RELATION: SingularRelation = SingularRelation { a: -1, b: 1, c: 1, d: 0, e: 0 };

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// `(−ζ⁴, 1 + ζ², ζ² − ζ³)` over `ℚ(ζ₅)`.
pub fn cm5_point() -> SiegelPoint {
    let k = NumberField::cyclotomic(5).unwrap();
    let e = |c: &[i64]| FieldElement::from_ints(&k, c);
    is_siegel(e(&[0, 0, 0, 0, -1]), e(&[1, 0, 1]), e(&[0, 0, 1, -1])).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<String, String> {
    if ok {
        Ok(String::new())
    } else {
        Err(msg())
    }
}

fn run(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    match f() {
        Ok(detail) => Check { name, passed: true, detail },
        Err(detail) => Check { name, passed: false, detail },
    }
}

pub fn verify_paper(seed: u64) -> Vec<Check> {
    verify_paper_with(LINEARIZING_M, seed)
}

/// Runs every golden check with `m` in place of the linearizing matrix.
pub fn verify_paper_with(m: [[i64; 4]; 4], seed: u64) -> Vec<Check> {
    let tau = cm5_point();
    let mut out = Vec::new();

    out.push(run("cm5_point_in_siegel_space", || tau.certify().map(|_| String::new()).map_err(|e| e.to_string())));
    out.push(run("cm5_fixture_matches", || {
        let j: SiegelPointJson = hjson::from_str(CM5_FIXTURE).map_err(|e| e.to_string())?;
        let t = siegel_from_json(&j).map_err(|e| e.to_string())?;
        ensure(t.matrix() == tau.matrix(), || "fixture differs from the hand-built point".into())
    }));
    out.push(run("linearizing_matrix_symplectic", || sp4_check(m).map(|_| String::new()).map_err(|e| e.to_string())));
    out.push(run("linearizing_matrix_relation", || {
        let mm = sp4_check(m).map_err(|e| e.to_string())?;
        let t2 = sp4_act(&mm, &tau).map_err(|e| e.to_string())?;
        ensure(verify_relation(&t2, &LINEAR_RELATION), || "-t1 + t2 + t3 != 0 at M tau".into())
    }));
    out.push(run("cm5_rank_one", || {
        let lat = relation_lattice(&tau).map_err(|e| e.to_string())?;
        ensure(lat.rank() == 1 && lat.lin_rank() == 0, || format!("rank {}, lin rank {}", lat.rank(), lat.lin_rank()))
    }));
    out.push(run("rational_rep_blocks", || {
        let r = rel_to_rational_rep(&LINEAR_RELATION);
        let a = [[r[0][0], r[0][1]], [r[1][0], r[1][1]]];
        let b = [[r[0][2], r[0][3]], [r[1][2], r[1][3]]];
        let c = [[r[2][0], r[2][1]], [r[3][0], r[3][1]]];
        ensure(a == [[0, -1], [-1, 1]] && b == [[0; 2]; 2] && c == [[0; 2]; 2], || format!("{:?}", r))
    }));
    out.push(run("transformed_generator_linear", || {
        let mm = sp4_check(m).map_err(|e| e.to_string())?;
        let lat = relation_lattice(&tau).map_err(|e| e.to_string())?;
        let g = transform_relation(&mm, &lat.basis()[0]).map_err(|e| e.to_string())?;
        ensure(g.canonical() == LINEAR_RELATION.canonical(), || format!("got {}", g))
    }));
    out.push(run("cm5_commutative", || {
        let lat = relation_lattice(&tau).map_err(|e| e.to_string())?;
        let c = classify(&lat);
        let md = minimal_relations(&lat).map_err(|e| e.to_string())?.min_delta;
        ensure(c == Classification::Commutative && md == 5, || format!("{:?}, min discriminant {}", c, md))
    }));
    out.push(run("discriminant_5_fundamental", || {
        let d = interpret_discriminant(5).map_err(|e| e.to_string())?;
        let ok = matches!(d, DiscriminantMeaning::RealMultiplication { field_d: 5, fundamental: true, .. });
        ensure(ok, || format!("{:?}", d))
    }));
    out.push(run("trdeg_cm5_before", || {
        let lat = relation_lattice(&tau).map_err(|e| e.to_string())?;
        let r = trdeg_report(&tau, &lat, true);
        ensure(r.trdeg_bound == 3, || format!("trdeg {}", r.trdeg_bound))
    }));
    out.push(run("trdeg_cm5_after", || {
        let mm = sp4_check(m).map_err(|e| e.to_string())?;
        let t2 = sp4_act(&mm, &tau).map_err(|e| e.to_string())?;
        let lat = relation_lattice(&t2).map_err(|e| e.to_string())?;
        let r = trdeg_report(&t2, &lat, true);
        ensure(r.trdeg_bound == 2, || format!("trdeg {}", r.trdeg_bound))
    }));
    out.push(run("trdeg_isotypic", || {
        let k = NumberField::quadratic(-1).unwrap();
        let i = FieldElement::generator(&k);
        let t = is_siegel(i.clone(), FieldElement::zero(&k), i.scale(&humbert_core::exactarith::rational::int(2))).map_err(|e| e.to_string())?;
        let lat = relation_lattice(&t).map_err(|e| e.to_string())?;
        let r = trdeg_report(&t, &lat, true);
        ensure(lat.rank() == 3 && r.trdeg_bound == 1, || format!("rank {}, trdeg {}", lat.rank(), r.trdeg_bound))
    }));
    out.push(run("humbert_normalize_cm5", || {
        let lat = relation_lattice(&tau).map_err(|e| e.to_string())?;
        let n = humbert_normalize(&tau, &lat.basis()[0], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(n.normalized.discriminant() == 5, || format!("normalized {}", n.normalized))
    }));
    out.push(run("hashimoto_entry_22", || {
        let pr = ShimuraParams::new(6, 1, 2, None).map_err(|e| e.to_string())?;
        let om = hashimoto_omega(&pr).map_err(|e| e.to_string())?;
        let k = &om.field;
        let c = |x: i64| FieldElement::from_int(k, x);
        let expect = RationalFunction::new(FPoly::new(k, vec![c(-1), c(-24), c(6)]), FPoly::var(k).scale(&c(5)))
            .ok_or("zero denominator")?;
        ensure(om.entries[1][1] == expect, || format!("got {}", om.entries[1][1]))
    }));
    let kp = KaniParams::new(2, 1, 3, 1).unwrap();
    out.push(run("kani_form_discriminant", || {
        let f = kani_lattice(&kp).form;
        ensure((f.a, f.b, f.c) == (1, 20, 108) && f.discriminant() == -32, || format!("{:?}", f))
    }));
    out.push(run("kani_delta_1_0", || {
        let f = kani_lattice(&kp).form;
        ensure(f.value(1, 0) == (kp.c * kp.c) as i128, || format!("{}", f.value(1, 0)))
    }));
    out.push(run("kani_delta_b2_minus_a", || {
        let f = kani_lattice(&kp).form;
        let v = f.value(kp.b * kp.b, -kp.a);
        ensure(v == (kp.b * kp.b) as i128, || format!("{}", v))
    }));
    out.push(run("kani_symplectic_gram", || ensure(kani_symplectic_check(&kp), || "Gram matrix is not J".into())));
    out.push(run("sp4_invariance_sample", || {
        let lat = relation_lattice(&tau).map_err(|e| e.to_string())?;
        for i in 0..10 {
            let w = sp4_random_word(8, seed.wrapping_add(i));
            let t2 = sp4_act(&w, &tau).map_err(|e| e.to_string())?;
            let l2 = relation_lattice(&t2).map_err(|e| e.to_string())?;
            let md = minimal_relations(&l2).map_err(|e| e.to_string())?.min_delta;
            if l2.rank() != lat.rank() || md != 5 {
                return Err(format!("word {} changed rank or discriminant", i));
            }
        }
        Ok(String::new())
    }));
    out
}
