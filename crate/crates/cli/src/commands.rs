use std::io::Read;

use serde::Deserialize;
use serde_json::{json, Value};

use humbert_core::embeddings::{
    hashimoto_identity, hashimoto_omega, hashimoto_point, hashimoto_relation, is_type_n_form, kani_gram, kani_lattice,
    kani_symplectic_check, kani_tau, KaniParams, ShimuraParams,
};
use humbert_core::exactarith::rational::to_f64;
use humbert_core::exactarith::{format_rational, ComplexInterval, FieldElement, NumberField, Rational};
use humbert_core::hilbert::{
    hsr_to_hz, hz_discriminant, hz_to_hsr, normalized_relation, phi, phi_inverse, shimura_linear_obstruction,
    Embedded, RealQuadraticData,
};
use humbert_core::humbert::{
    classify, detect_imaginary_quadratic, humbert_normalize, interpret_discriminant, minimal_relations,
    normalize_relation, relation_lattice, transform_relation, trdeg_report, verify_relation, RelationLattice,
    SingularRelation,
};
use humbert_core::igusa::{
    absolute_invariants, absolute_invariants_interval, igusa_exact, igusa_interval, Convention, IgusaError, IgusaValues,
    Sextic,
};
use humbert_core::json::{
    self as hjson, element_from_json, element_to_json, field_from_json, field_to_json, rationals_at, siegel_from_json,
    siegel_to_json, strings, symplectic_to_json, FieldJson, SiegelPointJson,
};
use humbert_core::siegel::{act_unchecked, SiegelPoint};

use crate::error::CliError;

/// A command result in both renderings.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub text: String,
}

/// Inline JSON if the argument starts with `{` or `[`, standard input for `-`, otherwise a file path.
pub fn read_input(arg: &str) -> Result<String, CliError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(format!("stdin: {}", e)))?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::Parse(format!("cannot read {}: {}", arg, e)))
}

fn int_json(x: i128) -> Value {
    i64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::String(x.to_string()))
}

fn rel_json(r: &SingularRelation) -> Value {
    json!(r.to_array())
}

fn rels_json(rs: &[SingularRelation]) -> Value {
    Value::Array(rs.iter().map(rel_json).collect())
}

fn gram_json(g: &[Vec<i128>]) -> Value {
    Value::Array(g.iter().map(|r| Value::Array(r.iter().map(|&x| int_json(x)).collect())).collect())
}

fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn lattice_json(lat: &RelationLattice) -> Value {
    json!({
        "rank": lat.rank(),
        "lin_rank": lat.lin_rank(),
        "basis": rels_json(lat.basis()),
        "lin_basis": rels_json(lat.lin_basis()),
        "gram": gram_json(lat.gram()),
        "principal_minors": lat.principal_minors().iter().map(q).collect::<Vec<_>>(),
        "positive_definite": lat.is_positive_definite(),
    })
}

// ---------------------------------------------------------------- classify

pub fn classify_cmd(text: &str, assume_cm: bool) -> Result<Output, CliError> {
    let j: SiegelPointJson = hjson::from_str(text)?;
    let tau = siegel_from_json(&j)?;
    classify_point(&tau, assume_cm)
}

pub fn classify_point(tau: &SiegelPoint, assume_cm: bool) -> Result<Output, CliError> {
    let lat = relation_lattice(tau)?;
    let class = classify(&lat);
    let minimal = if lat.rank() > 0 { Some(minimal_relations(&lat)?) } else { None };
    let meaning = minimal.as_ref().and_then(|m| interpret_discriminant(m.min_delta).ok());
    let iq = detect_imaginary_quadratic(tau)?;
    let is_cm = assume_cm || iq.is_some();
    let tr = trdeg_report(tau, &lat, is_cm);
    let cm_source = if iq.is_some() {
        "detected (all entries in one imaginary quadratic field)"
    } else if assume_cm {
        "assumed (--cm)"
    } else {
        "not assumed"
    };
    let mut js = lattice_json(&lat);
    let obj = js.as_object_mut().unwrap();
    obj.insert("min_delta".into(), minimal.as_ref().map(|m| int_json(m.min_delta)).unwrap_or(Value::Null));
    obj.insert(
        "minimal_relations".into(),
        minimal.as_ref().map(|m| rels_json(&m.relations)).unwrap_or(Value::Null),
    );
    obj.insert("discriminant_meaning".into(), serde_json::to_value(&meaning).unwrap());
    obj.insert("classification".into(), serde_json::to_value(class).unwrap());
    obj.insert("classification_tag".into(), json!(class.tag()));
    obj.insert("imaginary_quadratic".into(), serde_json::to_value(&iq).unwrap());
    obj.insert("trdeg_report".into(), serde_json::to_value(&tr).unwrap());
    obj.insert(
        "provenance".into(),
        json!({ "trdeg": tr.conditional_label, "cm": cm_source }),
    );

    let mut text = format!("rank L = {}, lin rank = {}\n", lat.rank(), lat.lin_rank());
    for r in lat.basis() {
        text += &format!("  relation {}\n", r);
    }
    if let Some(m) = &minimal {
        text += &format!("min discriminant = {}", m.min_delta);
        if let Some(mm) = &meaning {
            text += &format!(" ({})", mm);
        }
        text += "\n";
    }
    text += &format!("classification: {}\n", class);
    let rel = if tr.equality { "=" } else { "<=" };
    text += &format!("trdeg {} {} [{}; CM {}]\n", rel, tr.trdeg_bound, tr.conditional_label, cm_source);
    Ok(Output { json: js, text })
}

// ---------------------------------------------------------------- igusa

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum IgusaMode {
    #[default]
    Exact,
    Interval,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ConventionInput {
    #[default]
    Deduplicated,
    RawPermutationSum,
}

fn default_precision() -> u32 {
    128
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IgusaInput {
    coeffs: Vec<String>,
    #[serde(default)]
    mode: IgusaMode,
    #[serde(default = "default_precision")]
    precision: u32,
    #[serde(default)]
    convention: ConventionInput,
}

fn interval_json(z: &ComplexInterval) -> Value {
    json!({
        "re": [q(&z.re.lo), q(&z.re.hi)],
        "im": [q(&z.im.lo), q(&z.im.hi)],
        "approx": [to_f64(&z.re.mid()), to_f64(&z.im.mid())],
    })
}

fn values_json<T>(v: &IgusaValues<T>, f: impl Fn(&T) -> Value) -> Value {
    json!({ "I2": f(&v.i2), "I4": f(&v.i4), "I6": f(&v.i6), "I10": f(&v.i10) })
}

/// `precision` overrides the document's working precision in interval mode.
pub fn igusa_cmd(text: &str, precision: Option<u32>) -> Result<Output, CliError> {
    let mut inp: IgusaInput = hjson::from_str(text)?;
    if let Some(p) = precision {
        inp.precision = p;
    }
    if inp.coeffs.len() != 7 {
        return Err(CliError::Parse(format!("coeffs: expected 7 entries c0..c6, got {}", inp.coeffs.len())));
    }
    let f = Sextic::new(rationals_at(&inp.coeffs, "coeffs")?)?;
    let conv = match inp.convention {
        ConventionInput::Deduplicated => Convention::Deduplicated,
        ConventionInput::RawPermutationSum => Convention::RawPermutationSum,
    };
    let (invariants, js, js_text, note, text_vals) = match inp.mode {
        IgusaMode::Exact => {
            let v = igusa_exact(&f, conv)?;
            let j = absolute_invariants(&v);
            let tv = v.map(format_rational);
            let (jv, jt, note) = match j {
                Ok(j) => {
                    let s: Vec<String> = j.iter().map(format_rational).collect();
                    (json!(s), s.join(", "), None)
                }
                Err(e @ IgusaError::IZeroUnsupported) => (Value::Null, "undefined".into(), Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            (values_json(&v, q), jv, jt, note, tv)
        }
        IgusaMode::Interval => {
            let v = igusa_interval(&f, inp.precision, conv)?;
            let tv = v.map(|z| z.to_string());
            let (jv, jt, note) = match absolute_invariants_interval(&v) {
                Ok(j) => (
                    Value::Array(j.iter().map(interval_json).collect()),
                    j.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(", "),
                    None,
                ),
                Err(e @ IgusaError::IZeroUnsupported) => (Value::Null, "undefined".into(), Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            (values_json(&v, interval_json), jv, jt, note, tv)
        }
    };
    let json = json!({
        "mode": if inp.mode == IgusaMode::Exact { "exact" } else { "interval" },
        "convention": serde_json::to_value(conv).unwrap(),
        "invariants": invariants,
        "j": js,
        "note": note,
    });
    let text = format!(
        "I2 = {}\nI4 = {}\nI6 = {}\nI10 = {}\nj = ({})\n",
        text_vals.i2, text_vals.i4, text_vals.i6, text_vals.i10, js_text
    );
    Ok(Output { json, text })
}

// ---------------------------------------------------------------- normalize

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NormalizeInput {
    #[serde(default)]
    point: Option<SiegelPointJson>,
    relation: [i64; 5],
}

pub fn normalize_cmd(text: &str, budget: usize) -> Result<Output, CliError> {
    let inp: NormalizeInput = hjson::from_str(text)?;
    let rel = SingularRelation::from_array(inp.relation);
    let (matrix, normalized, image) = match &inp.point {
        Some(pj) => {
            let tau = siegel_from_json(pj)?;
            let n = humbert_normalize(&tau, &rel, budget)?;
            let image = act_unchecked(&n.matrix, &tau)?;
            (n.matrix, n.normalized, Some(image))
        }
        None => {
            let (m, n) = normalize_relation(&rel, budget)?;
            (m, n, None)
        }
    };
    let transformed = transform_relation(&matrix, &rel)?;
    let certified = match &image {
        Some(t) => verify_relation(t, &normalized),
        None => transformed == normalized || transformed == normalized.neg(),
    };
    let json = json!({
        "matrix": symplectic_to_json(&matrix),
        "normalized": rel_json(&normalized),
        "discriminant": int_json(normalized.discriminant()),
        "transformed": rel_json(&transformed),
        "certified": certified,
        "image": image.as_ref().map(|t| serde_json::to_value(siegel_to_json(t)).unwrap()),
    });
    let text = format!(
        "M =\n{}\nnormalized relation {} (discriminant {}), certified: {}\n",
        matrix,
        normalized,
        normalized.discriminant(),
        certified
    );
    Ok(Output { json, text })
}

// ---------------------------------------------------------------- embed

/// `z = x + y√d` for the Shimura embedding.
#[derive(Debug, Clone)]
pub struct QuadraticPoint {
    pub d: i64,
    pub x: Rational,
    pub y: Rational,
}

pub fn embed_shimura(d: i64, n: i64, a: i64, p: Option<i64>, z: Option<QuadraticPoint>) -> Result<Output, CliError> {
    let pr = ShimuraParams::new(d, n, a, p)?;
    let om = hashimoto_omega(&pr)?;
    let r10 = hashimoto_relation(&pr, 1, 0)?;
    let r01 = hashimoto_relation(&pr, 0, 1)?;
    let mut grid = true;
    for x in -2..=2 {
        for y in -2..=2 {
            grid &= hashimoto_identity(&om, &hashimoto_relation(&pr, x, y)?);
        }
    }
    let e = &om.entries;
    let mut json = json!({
        "params": pr,
        "omega": { "tau1": e[0][0].to_string(), "tau2": e[0][1].to_string(), "tau3": e[1][1].to_string(), "variable": "z", "sqrt_p": om.field.gen_name() },
        "symmetric": om.is_symmetric(),
        "relations": { "x=1,y=0": rel_json(&r10), "x=0,y=1": rel_json(&r01) },
        "identity_on_grid": grid,
        "discriminant_x1_y0": int_json(r10.discriminant()),
    });
    let mut text = format!(
        "D={} N={} p={} a={} b={}\ntau1 = {}\ntau2 = {}\ntau3 = {}\nrelations x*{} + y*{}; identity on grid: {}\n",
        pr.d, pr.n, pr.p, pr.a, pr.b, e[0][0], e[0][1], e[1][1], r10, r01, grid
    );
    if let Some(z) = z {
        let (_, sp, sd) = NumberField::biquadratic(pr.p, z.d)?;
        let k = sp.field().clone();
        let zz = &FieldElement::from_rational(&k, z.x.clone()) + &sd.scale(&z.y);
        let tau = hashimoto_point(&pr, &sp, &zz)?;
        let lat = relation_lattice(&tau)?;
        json["point"] = serde_json::to_value(siegel_to_json(&tau)).unwrap();
        json["lattice"] = lattice_json(&lat);
        text += &format!("at z = {}: rank L = {}, lin rank = {}\n", zz, lat.rank(), lat.lin_rank());
    }
    Ok(Output { json, text })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldValue {
    field: FieldJson,
    value: Vec<String>,
}

pub fn embed_kani(n: i64, a: i64, b: i64, c: i64, tau: Option<&str>) -> Result<Output, CliError> {
    let pr = KaniParams::new(n, a, b, c)?;
    let gram = kani_gram(&pr);
    let sym = kani_symplectic_check(&pr);
    let kl = kani_lattice(&pr);
    let rep = is_type_n_form(&kl.form);
    let mut json = json!({
        "params": pr,
        "mu": pr.mu(),
        "gram": gram.iter().map(|r| r.iter().map(q).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "symplectic": sym,
        "generators": rels_json(&kl.generators),
        "generators_verified": kl.generators_verified,
        "form": kl.form,
        "form_discriminant": int_json(kl.form.discriminant()),
        "matches_standard_form": kl.matches_standard_form,
        "delta_1_0": int_json(kl.form.value(1, 0)),
        "delta_b2_minus_a": int_json(kl.form.value(b * b, -a)),
        "type_n": rep,
    });
    let f = kl.form;
    let mut text = format!(
        "N={} a={} b={} c={}\nsymplectic basis: {}\nform {}x^2 + {}xy + {}y^2, discriminant {}, type N: {}\n",
        n,
        a,
        b,
        c,
        sym,
        f.a,
        f.b,
        f.c,
        f.discriminant(),
        rep.is_type_n
    );
    if let Some(t) = tau {
        let fv: FieldValue = hjson::from_str(t)?;
        let k = field_from_json(&fv.field, "tau.field")?;
        let t = element_from_json(&k, &fv.value, "tau.value")?;
        let point = kani_tau(&pr, &t)?;
        let lat = relation_lattice(&point)?;
        json["point"] = serde_json::to_value(siegel_to_json(&point)).unwrap();
        json["lattice"] = lattice_json(&lat);
        text += &format!("at t = {}: rank L = {}, lin rank = {}\n", t, lat.rank(), lat.lin_rank());
    }
    Ok(Output { json, text })
}

// ---------------------------------------------------------------- hilbert

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertCommand {
    Embed,
    Invert,
    ToHz,
    Obstruct,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HilbertEmbedInput {
    #[serde(default)]
    d: Option<i64>,
    #[serde(default)]
    field: Option<FieldJson>,
    #[serde(default)]
    sqrt_delta: Option<Vec<String>>,
    z1: Vec<String>,
    z2: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HilbertInvertInput {
    point: SiegelPointJson,
    sqrt_delta: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationInput {
    relation: [i64; 5],
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn hilbert_cmd(delta: i64, cmd: HilbertCommand, text: &str) -> Result<Output, CliError> {
    let kd = RealQuadraticData::new(delta)?;
    match cmd {
        HilbertCommand::Embed => {
            let inp: HilbertEmbedInput = hjson::from_str(text)?;
            let (e, z1, z2): (Embedded, FieldElement, FieldElement) = match (&inp.d, &inp.field, &inp.sqrt_delta) {
                (Some(d), None, None) => {
                    let (e, s) = kd.with_quadratic(*d)?;
                    let k = e.field().clone();
                    let z = |v: &[String], path: &str| -> Result<FieldElement, CliError> {
                        let c = rationals_at(v, path)?;
                        if c.len() != 2 {
                            return Err(parse_err(format!("{}: expected [x, y] for x + y*sqrt(d)", path)));
                        }
                        Ok(&FieldElement::from_rational(&k, c[0].clone()) + &s.scale(&c[1]))
                    };
                    let z1 = z(&inp.z1, "z1")?;
                    let z2 = z(&inp.z2, "z2")?;
                    (e, z1, z2)
                }
                (None, Some(fj), Some(sd)) => {
                    let k = field_from_json(fj, "field")?;
                    let s = element_from_json(&k, sd, "sqrt_delta")?;
                    let e = kd.embed_in(&s)?;
                    (e, element_from_json(&k, &inp.z1, "z1")?, element_from_json(&k, &inp.z2, "z2")?)
                }
                _ => return Err(parse_err("give either \"d\" or both \"field\" and \"sqrt_delta\"")),
            };
            let tau = phi(&z1, &z2, &e)?;
            let rel = normalized_relation(delta);
            let holds = verify_relation(&tau, &rel);
            let json = json!({
                "point": siegel_to_json(&tau),
                "sqrt_delta": element_to_json(&e.sqrt_delta),
                "relation": rel_json(&rel),
                "relation_holds": holds,
            });
            let text = format!(
                "tau1 = {}\ntau2 = {}\ntau3 = {}\nrelation {} holds: {}\n",
                tau.tau1(),
                tau.tau2(),
                tau.tau3(),
                rel,
                holds
            );
            Ok(Output { json, text })
        }
        HilbertCommand::Invert => {
            let inp: HilbertInvertInput = hjson::from_str(text)?;
            let tau = siegel_from_json(&inp.point)?;
            let s = element_from_json(tau.tau1().field(), &inp.sqrt_delta, "sqrt_delta")?;
            let e = kd.embed_in(&s)?;
            let (z1, z2) = phi_inverse(&tau, &e)?;
            let back = phi(&z1, &z2, &e)?;
            let round_trip = back.matrix() == tau.matrix();
            let json = json!({
                "z1": element_to_json(&z1),
                "z2": element_to_json(&z2),
                "field": field_to_json(e.field()),
                "round_trip": round_trip,
            });
            let text = format!("z1 = {}\nz2 = {}\nround trip: {}\n", z1, z2, round_trip);
            Ok(Output { json, text })
        }
        HilbertCommand::ToHz => {
            let inp: RelationInput = hjson::from_str(text)?;
            let rel = SingularRelation::from_array(inp.relation);
            let bm = hsr_to_hz(&rel, &kd);
            let disc = hz_discriminant(&bm, &kd);
            let back = hz_to_hsr(&bm, &kd)?;
            let json = json!({
                "p": bm.p,
                "q": bm.q,
                "gamma": element_to_json(&bm.gamma),
                "gamma_display": bm.gamma.to_string(),
                "basis": "gamma = g0 + g1*w, w = (1+sqrt(Delta))/2",
                "valid": bm.is_valid(&kd),
                "discriminant": q(&disc.m),
                "degenerate": disc.degenerate,
                "back": rel_json(&back),
            });
            let text = format!(
                "p = {}, q = {}, gamma = {}\nHZ discriminant M = {}{}\nback to relation: {}\n",
                bm.p,
                bm.q,
                bm.gamma,
                format_rational(&disc.m),
                if disc.degenerate { " (degenerate)" } else { "" },
                back
            );
            Ok(Output { json, text })
        }
        HilbertCommand::Obstruct => {
            let inp: RelationInput = hjson::from_str(text)?;
            let rel = SingularRelation::from_array(inp.relation);
            let r = shimura_linear_obstruction(&kd, &rel)?;
            let json = json!({
                "delta": r.delta,
                "relation": rel_json(&r.relation),
                "skew_hermitian": { "p": r.skew_hermitian.p, "q": r.skew_hermitian.q, "gamma": element_to_json(&r.skew_hermitian.gamma) },
                "alpha": element_to_json(&r.alpha),
                "algebra": [q(&r.witness.algebra.a), q(&r.witness.algebra.b)],
                "witness": strings(&r.witness.mu),
                "witness_norm": q(&r.witness_norm),
                "split": r.split,
                "verdict": r.verdict,
            });
            let m = &r.witness.mu;
            let text = format!(
                "alpha = {}\nmu = {} + {}*I + {}*J + {}*IJ in ({}, {}/Q), norm {}\n{}\n",
                r.alpha,
                m[0],
                m[1],
                m[2],
                m[3],
                r.witness.algebra.a,
                r.witness.algebra.b,
                r.witness_norm,
                r.verdict
            );
            Ok(Output { json, text })
        }
    }
}
