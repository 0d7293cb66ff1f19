//! Searches over `Sp₄(ℤ)` acting on relations: reduction to the normalized
//! relation of a discriminant, and simultaneous linearization.

use std::collections::{HashSet, VecDeque};

use super::lattice::relation_lattice;
use super::relation::{transform_relation, verify_relation, SingularRelation};
use super::HumbertError;
use crate::siegel::{act_unchecked, generators_with_inverses, SiegelPoint, SymplecticMatrix};

/// Default cap on the number of states a search may visit.
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub matrix: SymplecticMatrix,
    /// The normalized relation of the same discriminant, satisfied by `Mτ`.
    pub normalized: SingularRelation,
}

fn moves() -> Vec<SymplecticMatrix> {
    let mut g = generators_with_inverses();
    let pj = SymplecticMatrix::partial_j();
    g.push(pj);
    g.push(pj.inverse());
    g
}

/// Majorant `b² + 2(a² + c² + d² + e²)` of the indefinite form `Δ`.
fn height(v: &SingularRelation) -> i128 {
    let s = |x: i64| (x as i128) * (x as i128);
    s(v.b) + 2 * (s(v.a) + s(v.c) + s(v.d) + s(v.e))
}

fn sign_key(v: &SingularRelation) -> [i64; 5] {
    let a = v.to_array();
    let b = v.neg().to_array();
    a.max(b)
}

fn finishable(v: &SingularRelation) -> bool {
    v.d == 0 && v.c.abs() == 1
}

/// Picks `s` with `coord(g(s)·v) = target`, assuming the coordinate is affine in `s`.
fn solve_affine(
    family: impl Fn(i64) -> Option<SymplecticMatrix>,
    v: &SingularRelation,
    coord: impl Fn(&SingularRelation) -> i64,
    target: impl Fn(i64, i64) -> Option<i64>,
) -> Option<(SymplecticMatrix, SingularRelation)> {
    let at = |s: i64| family(s).and_then(|m| transform_relation(&m, v).ok().map(|r| (m, r)));
    let (_, r0) = at(0)?;
    let (_, r1) = at(1)?;
    let slope = coord(&r1) - coord(&r0);
    let s = target(coord(&r0), slope)?;
    at(s)
}

/// From `d = 0, c = ±1`, reach the normalized relation by a translation and a
/// unipotent change of basis.
fn finish(v: &SingularRelation, delta: i128) -> Option<(SymplecticMatrix, SingularRelation)> {
    let target = SingularRelation::normalized(delta)?;
    let v = if v.c == -1 { v.neg() } else { *v };
    // kill e
    let (m1, v1) = solve_affine(
        |s| Some(SymplecticMatrix::translation(0, 0, s)),
        &v,
        |r| r.e,
        |e0, slope| (slope != 0 && e0 % slope == 0).then(|| -e0 / slope),
    )?;
    if v1.e != 0 || v1.d != 0 || v1.c != 1 {
        return None;
    }
    // reduce b into {0, 1}
    let families: [fn(i64) -> Option<SymplecticMatrix>; 2] = [
        |k| SymplecticMatrix::from_gl2([[1, k], [0, 1]]).ok(),
        |k| SymplecticMatrix::from_gl2([[1, 0], [k, 1]]).ok(),
    ];
    for fam in families {
        let Some((m2, v2)) = solve_affine(fam, &v1, |r| r.b, |b0, slope| {
            (slope.abs() == 2).then(|| -num_integer::Integer::div_floor(&b0, &slope))
        }) else {
            continue;
        };
        if v2 == target {
            return Some((m2.mul(&m1), v2));
        }
        if v2.neg() == target {
            return Some((m2.mul(&m1), v2));
        }
    }
    None
}

/// Finds `M ∈ Sp₄(ℤ)` taking `rel` to `±` the normalized relation of `Δ(rel)`.
pub fn normalize_relation(rel: &SingularRelation, budget: usize) -> Result<(SymplecticMatrix, SingularRelation), HumbertError> {
    if !rel.is_primitive() {
        return Err(HumbertError::NotPrimitive);
    }
    let delta = rel.discriminant();
    if delta <= 0 || delta.rem_euclid(4) > 1 {
        return Err(HumbertError::InvalidDiscriminant(delta));
    }
    let gens = moves();
    // greedy descent of the majorant
    let mut m = SymplecticMatrix::identity();
    let mut v = *rel;
    loop {
        let best = gens
            .iter()
            .filter_map(|g| transform_relation(g, &v).ok().map(|r| (height(&r), *g, r)))
            .min_by_key(|(h, _, r)| (*h, sign_key(r)));
        match best {
            Some((h, g, r)) if h < height(&v) => {
                v = r;
                m = match g.checked_mul(&m) {
                    Some(x) => x,
                    None => break,
                };
            }
            _ => break,
        }
    }
    // breadth-first search inside a growing height cap
    let mut cap = height(&v).max(height(&SingularRelation::normalized(delta).unwrap())) * 2;
    let mut spent = 0usize;
    loop {
        let mut seen: HashSet<[i64; 5]> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(sign_key(&v));
        queue.push_back((v, m));
        let mut capped = false;
        while let Some((u, mu)) = queue.pop_front() {
            spent += 1;
            if spent > budget {
                return Err(HumbertError::SearchBudgetExceeded(spent - 1));
            }
            if finishable(&u) {
                if let Some((mf, n)) = finish(&u, delta) {
                    if let Some(total) = mf.checked_mul(&mu) {
                        if transform_relation(&total, rel).map(|r| r == n || r.neg() == n).unwrap_or(false) {
                            return Ok((total, n));
                        }
                    }
                }
            }
            for g in &gens {
                let Ok(r) = transform_relation(g, &u) else { continue };
                if height(&r) > cap {
                    capped = true;
                    continue;
                }
                if seen.insert(sign_key(&r)) {
                    if let Some(mr) = g.checked_mul(&mu) {
                        queue.push_back((r, mr));
                    }
                }
            }
        }
        if !capped {
            return Err(HumbertError::SearchBudgetExceeded(spent));
        }
        cap *= 4;
    }
}

/// Certified reduction of `rel` at `tau` to the normalized relation.
pub fn humbert_normalize(tau: &SiegelPoint, rel: &SingularRelation, budget: usize) -> Result<Normalization, HumbertError> {
    if !verify_relation(tau, rel) {
        return Err(HumbertError::RelationNotSatisfied);
    }
    let (matrix, normalized) = normalize_relation(rel, budget)?;
    let image = act_unchecked(&matrix, tau)?;
    if !verify_relation(&image, &normalized) {
        return Err(HumbertError::RelationNotSatisfied);
    }
    Ok(Normalization { matrix, normalized })
}

/// Looks for `M` (a word of length `≤ max_len`) with `rank L^lin_{Mτ} ≥ 2`.
/// Returning `None` is not a proof that no such `M` exists.
pub fn simultaneous_linearize_search(
    tau: &SiegelPoint,
    max_len: usize,
    budget: usize,
) -> Result<Option<SymplecticMatrix>, HumbertError> {
    let lat = relation_lattice(tau)?;
    if lat.rank() < 2 {
        return Err(HumbertError::Precondition(format!("rank L = {} < 2", lat.rank())));
    }
    if lat.lin_rank() >= 2 {
        return Ok(Some(SymplecticMatrix::identity()));
    }
    let gens = generators_with_inverses();
    let start: Vec<SingularRelation> = lat.basis().to_vec();
    let good = |b: &[SingularRelation]| b.len() - usize::from(b.iter().any(|r| r.d != 0)) >= 2;
    let mut seen: HashSet<Vec<[i64; 5]>> = HashSet::new();
    seen.insert(start.iter().map(|r| r.to_array()).collect());
    let mut frontier = vec![(start, SymplecticMatrix::identity())];
    let mut spent = 0;
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (basis, m) in &frontier {
            for g in &gens {
                spent += 1;
                if spent > budget {
                    return Ok(None);
                }
                let Ok(nb) = basis.iter().map(|r| transform_relation(g, r)).collect::<Result<Vec<_>, _>>() else { continue };
                let Some(nm) = g.checked_mul(m) else { continue };
                if good(&nb) {
                    let image = act_unchecked(&nm, tau)?;
                    if relation_lattice(&image)?.lin_rank() >= 2 {
                        return Ok(Some(nm));
                    }
                }
                if seen.insert(nb.iter().map(|r| r.to_array()).collect()) {
                    next.push((nb, nm));
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}
