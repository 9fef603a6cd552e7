//! Cohen–Macaulay covers, sandwich interpolation and the realization
//! explorer for `(c, d, q, h)`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinat::{binom, floor_rat};
use crate::complex::{Indeg, SimplicialComplex};
use crate::error::{Error, Result};
use crate::families::{bruns_hibi_dual, cyclic_dual, disjoint_union_q2, hanano, skeleton_complex};
use crate::hochster::betti_table;
use crate::homology::reduced_homology;
use crate::linalg::{ExactMatrix, FieldSpec};
use crate::props::{h_bound, is_buchsbaum, is_cohen_macaulay};
use crate::vset::VertexSet;

/// Prime field used for the generic linear forms.
pub const GENERICITY_PRIME: u64 = 32003;

/// Maximum number of coefficient draws in [`cm_cover`].
pub const RETRY_CAP: usize = 16;

/// A Cohen–Macaulay `d`-linear complex containing the input.
#[derive(Debug, Clone, Serialize)]
pub struct CoverResult {
    pub cover: SimplicialComplex,
    pub added_facets: Vec<Vec<usize>>,
    /// Number of coefficient draws used, including the successful one.
    pub attempts: usize,
    pub seed: u64,
}

/// Indeg `q` and regularity `q - 1`.
fn is_linear(cx: &SimplicialComplex, field: FieldSpec, q: usize) -> Result<bool> {
    if cx.indeg() != Indeg::Finite(q) {
        return Ok(false);
    }
    Ok(betti_table(cx, field)?.regularity() == q as i64 - 1)
}

/// Sparse polynomial over GF(p), keyed by exponent vectors.
type Poly = HashMap<Vec<u8>, u64>;

fn mul_linear(poly: &Poly, form: &[u64], p: u64) -> Poly {
    let mut out = Poly::new();
    for (mono, &a) in poly {
        for (j, &b) in form.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let mut m = mono.clone();
            m[j] += 1;
            let e = out.entry(m).or_insert(0);
            *e = (*e + a * b) % p;
        }
    }
    out
}

/// Exponent vectors of total degree `d` in `c` variables.
fn monomials(c: usize, d: usize) -> Vec<Vec<u8>> {
    fn rec(c: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() + 1 == c {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k as u8);
            rec(c, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(c, d, &mut Vec::new(), &mut out);
    out
}

/// The matrix whose row for a non-face `M` holds the coefficients of
/// `∏_{i ∈ M} ℓ_i` in the degree-`d` monomials of `x_0..x_{c-1}`, where
/// `ℓ_i = x_i` for `i < c` and `ℓ_i = Σ_j coef[i-c][j] x_j` otherwise.
fn substitution_matrix(
    nonfaces: &[VertexSet],
    coef: &[Vec<u64>],
    c: usize,
    d: usize,
) -> ExactMatrix {
    let p = GENERICITY_PRIME;
    let monos = monomials(c, d);
    let index: HashMap<&Vec<u8>, usize> = monos.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut m = ExactMatrix::zeros(FieldSpec::PrimeField(p), nonfaces.len(), monos.len());
    for (r, face) in nonfaces.iter().enumerate() {
        let mut poly = Poly::from([(vec![0u8; c], 1u64)]);
        for v in face.iter() {
            let form: Vec<u64> = if v < c {
                (0..c).map(|j| u64::from(j == v)).collect()
            } else {
                coef[v - c].clone()
            };
            poly = mul_linear(&poly, &form, p);
        }
        for (mono, a) in poly {
            if a != 0 {
                m.set(r, index[&mono], a as i64);
            }
        }
    }
    m
}

/// Whether `cover` contains `input`, has the same dimension, multiplicity
/// `C(n-1, d-1)`, and is Cohen–Macaulay and `d`-linear over `field`.
pub fn is_cm_cover(
    input: &SimplicialComplex,
    cover: &SimplicialComplex,
    field: FieldSpec,
) -> Result<bool> {
    let (n, d) = (input.n(), input.krull_dim());
    Ok(input.is_subcomplex_of(cover)
        && cover.krull_dim() == d
        && cover.multiplicity() as u128 == binom(n as u64 - 1, d as u64 - 1)
        && is_cohen_macaulay(cover, field)
        && is_linear(cover, field, d)?)
}

/// Builds a Cohen–Macaulay `d`-linear cover of a Buchsbaum `d`-linear
/// complex by adding `h = dim H̃_{d-2}` facets.
///
/// The last `d` vertices are replaced by generic linear forms in the first
/// `c` over GF(32003); the non-faces of size `d` whose substituted products
/// are left out of a greedily chosen basis become the new facets. The cover
/// is then verified over `field`; failed verifications and rank-deficient
/// draws are retried with a fresh draw and a shuffled row order.
pub fn cm_cover(cx: &SimplicialComplex, field: FieldSpec, seed: u64) -> Result<CoverResult> {
    let (n, d, c) = (cx.n(), cx.krull_dim(), cx.codim());
    if !is_buchsbaum(cx, field) {
        return Err(Error::PreconditionFailed(format!(
            "complex is not Buchsbaum over {field}"
        )));
    }
    if c == 0 || d < 2 || !is_linear(cx, field, d)? {
        return Err(Error::PreconditionFailed(format!(
            "complex does not have {d}-linear resolution over {field}"
        )));
    }
    let h = reduced_homology(cx, field).get(d as isize - 2) as usize;
    if h == 0 {
        if is_cm_cover(cx, cx, field)? {
            return Ok(CoverResult {
                cover: cx.clone(),
                added_facets: Vec::new(),
                attempts: 0,
                seed,
            });
        }
        return Err(Error::VerificationFailed(
            "input with h = 0 is not Cohen-Macaulay".into(),
        ));
    }
    let nonfaces: Vec<VertexSet> = VertexSet::full(n)
        .subsets_of_size(d)
        .filter(|s| !cx.contains_face(*s))
        .collect();
    let width = binom(n as u64 - 1, d as u64) as usize;
    if nonfaces.len() != width + h {
        return Err(Error::PreconditionFailed(format!(
            "{} non-faces of size {d}, expected {}",
            nonfaces.len(),
            width + h
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..nonfaces.len()).collect();
    for attempt in 1..=RETRY_CAP {
        let coef: Vec<Vec<u64>> = (0..d)
            .map(|_| (0..c).map(|_| rng.gen_range(0..GENERICITY_PRIME)).collect())
            .collect();
        if attempt > 1 {
            order.shuffle(&mut rng);
        }
        let rows: Vec<VertexSet> = order.iter().map(|&k| nonfaces[k]).collect();
        let a = substitution_matrix(&rows, &coef, c, d);
        let kept = a.select_independent_rows();
        if kept.len() != width {
            continue;
        }
        let mut added: Vec<VertexSet> = (0..rows.len())
            .filter(|k| !kept.contains(k))
            .map(|k| rows[k])
            .collect();
        added.sort();
        let cover = cx.with_faces(&added)?;
        if is_cm_cover(cx, &cover, field)? {
            return Ok(CoverResult {
                cover,
                added_facets: added.iter().map(|f| f.to_vec()).collect(),
                attempts: attempt,
                seed,
            });
        }
    }
    Err(Error::GenericityExhausted(RETRY_CAP))
}

/// `Δ⁻` plus `target - e(Δ⁻)` facets of `Δ⁺` not in `Δ⁻`, sampled
/// uniformly without replacement. The result is re-verified to be
/// Buchsbaum and `d`-linear over `field`.
pub fn sandwich_family(
    minus: &SimplicialComplex,
    plus: &SimplicialComplex,
    target: usize,
    field: FieldSpec,
    seed: u64,
) -> Result<SimplicialComplex> {
    if !minus.is_subcomplex_of(plus) {
        return Err(Error::NotNested);
    }
    let d = minus.krull_dim();
    if plus.krull_dim() != d {
        return Err(Error::PreconditionFailed(
            "complexes differ in dimension".into(),
        ));
    }
    for (name, cx) in [("lower", minus), ("upper", plus)] {
        if !is_buchsbaum(cx, field) || !is_linear(cx, field, d)? {
            return Err(Error::PreconditionFailed(format!(
                "{name} complex is not Buchsbaum {d}-linear over {field}"
            )));
        }
    }
    let (lo, hi) = (minus.multiplicity() as usize, plus.multiplicity() as usize);
    if target < lo || target > hi {
        return Err(Error::TargetOutOfRange { target, lo, hi });
    }
    let mut pool: Vec<VertexSet> = plus
        .facets()
        .iter()
        .copied()
        .filter(|f| !minus.contains_face(*f))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pool.shuffle(&mut rng);
    pool.truncate(target - lo);
    let out = minus.with_faces(&pool)?;
    if !is_buchsbaum(&out, field) || !is_linear(&out, field, d)? {
        return Err(Error::VerificationFailed(format!(
            "sandwiched complex is not Buchsbaum {d}-linear over {field}"
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RealizationStatus {
    Realized,
    InfeasibleByBound,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RealizationMethod {
    /// A 2-linear Cohen–Macaulay complex plus `h` disjoint simplices.
    DisjointUnionQ2,
    /// Alexander dual of a cyclic polytope boundary (`h = 1`).
    CyclicDual,
    /// Alexander dual of the Bruns–Hibi complex.
    BrunsHibiDual,
    /// A Cohen–Macaulay `q`-linear complex (`h = 0`).
    CMExample,
    /// A Hanano complex, its Cohen–Macaulay cover, and a sandwich between.
    Sandwich3,
    /// A known Buchsbaum `d`-linear complex, its cover, and a sandwich.
    Sandwich,
    /// A seeded random search over pure complexes.
    RandomSearch,
    /// Nothing applied and the bounded search found no witness.
    SearchFail,
    /// No construction was attempted.
    NotAttempted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RealizationParams {
    pub c: usize,
    pub d: usize,
    pub q: usize,
    pub h: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RealizationOutcome {
    pub params: RealizationParams,
    pub status: RealizationStatus,
    pub witness: Option<SimplicialComplex>,
    pub method: RealizationMethod,
}

/// Checks `dim = d`, `codim = c`, Buchsbaum, `q`-linear and
/// `dim H̃_{q-2} = h` over `field`.
pub fn verify_witness(
    cx: &SimplicialComplex,
    p: RealizationParams,
    field: FieldSpec,
) -> Result<bool> {
    Ok(cx.krull_dim() == p.d
        && cx.codim() == p.c
        && is_buchsbaum(cx, field)
        && is_linear(cx, field, p.q)?
        && reduced_homology(cx, field).get(p.q as isize - 2) == p.h as u64)
}

/// Cohen–Macaulay `q`-linear complex of dimension `d - 1` and codimension
/// `c`: the `(q-2)`-skeleton of a simplex on `c + q - 1` vertices, joined
/// with a simplex on `d - q + 1` further vertices.
pub fn cm_linear_example(c: usize, d: usize, q: usize) -> Result<SimplicialComplex> {
    if c < 1 || q < 2 || q > d {
        return Err(Error::ParameterRange(format!(
            "needs c >= 1 and 2 <= q <= d, got (c, d, q) = ({c}, {d}, {q})"
        )));
    }
    let m = c + q - 1;
    let base = skeleton_complex(m, q - 1)?;
    let cone: Vec<usize> = (m..c + d).collect();
    SimplicialComplex::from_facets(
        c + d,
        base.facet_lists().into_iter().map(|mut f| {
            f.extend(&cone);
            f
        }),
    )
}

/// A Buchsbaum `d`-linear complex with codimension `c` and the largest
/// known `h` for `(c, d)`, if one of the implemented families fits. The
/// methods label the complex itself and a sandwich below it.
fn known_linear_source(
    c: usize,
    d: usize,
) -> Option<(SimplicialComplex, RealizationMethod, RealizationMethod)> {
    use RealizationMethod::*;
    if d == 3 && c >= 2 {
        return hanano(c + 3).ok().map(|cx| (cx, Sandwich3, Sandwich3));
    }
    if c == 2 {
        return cyclic_dual(d, d).ok().map(|cx| (cx, CyclicDual, Sandwich));
    }
    if c == 3 && d % 2 == 1 {
        return bruns_hibi_dual(d + 3)
            .ok()
            .map(|cx| (cx, BrunsHibiDual, Sandwich));
    }
    None
}

/// Attempts a bounded number of seeded random pure complexes with the
/// multiplicity forced by `(c, d, q, h)`.
fn random_search(
    p: RealizationParams,
    field: FieldSpec,
    seed: u64,
    tries: usize,
) -> Option<SimplicialComplex> {
    let n = p.c + p.d;
    if n > 10 {
        return None;
    }
    let e = binom((p.c + p.q - 1) as u64, p.q as u64 - 1) as i128
        - p.h as i128 * binom(p.d as u64 - 1, p.q as u64 - 1) as i128;
    let all: Vec<VertexSet> = VertexSet::full(n).subsets_of_size(p.d).collect();
    if e <= 0 || e as usize > all.len() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let pick: Vec<VertexSet> = all.choose_multiple(&mut rng, e as usize).copied().collect();
        let Ok(cx) = SimplicialComplex::from_vertex_sets(n, pick, true) else {
            continue;
        };
        if cx.indeg() != Indeg::Finite(p.q) {
            continue;
        }
        if verify_witness(&cx, p, field).unwrap_or(false) {
            return Some(cx);
        }
    }
    None
}

/// Number of random complexes tried before reporting `Unknown`.
pub const SEARCH_TRIES: usize = 256;

/// Looks for a Buchsbaum `q`-linear complex of dimension `d - 1`,
/// codimension `c` and `dim H̃_{q-2} = h`. Every `Realized` witness is
/// verified over `field`.
pub fn realize(
    c: usize,
    d: usize,
    q: usize,
    h: usize,
    field: FieldSpec,
    seed: u64,
) -> Result<RealizationOutcome> {
    let bound = h_bound(c, d, q)?;
    let params = RealizationParams { c, d, q, h };
    let outcome = |status, witness, method| RealizationOutcome {
        params,
        status,
        witness,
        method,
    };
    if num_bigint::BigInt::from(h) > floor_rat(&bound) {
        return Ok(outcome(
            RealizationStatus::InfeasibleByBound,
            None,
            RealizationMethod::NotAttempted,
        ));
    }
    let built: Option<(SimplicialComplex, RealizationMethod)> = if q == 2 {
        Some((
            disjoint_union_q2(c, d, h)?,
            RealizationMethod::DisjointUnionQ2,
        ))
    } else if h == 0 {
        Some((cm_linear_example(c, d, q)?, RealizationMethod::CMExample))
    } else if c == d - q + 2 && h == 1 {
        Some((cyclic_dual(d, q)?, RealizationMethod::CyclicDual))
    } else if q == d {
        match known_linear_source(c, d) {
            Some((source, exact, method)) => {
                let h0 = reduced_homology(&source, field).get(d as isize - 2) as usize;
                if h == h0 {
                    Some((source, exact))
                } else if h < h0 {
                    let cover = cm_cover(&source, field, seed)?;
                    let target = source.multiplicity() as usize + (h0 - h);
                    let mid = sandwich_family(&source, &cover.cover, target, field, seed)?;
                    Some((mid, method))
                } else {
                    None
                }
            }
            None => None,
        }
    } else {
        None
    };
    let found = built.or_else(|| {
        random_search(params, field, seed, SEARCH_TRIES)
            .map(|cx| (cx, RealizationMethod::RandomSearch))
    });
    match found {
        Some((cx, method)) => {
            if !verify_witness(&cx, params, field)? {
                return Err(Error::VerificationFailed(format!(
                    "{method:?} witness for (c, d, q, h) = ({c}, {d}, {q}, {h}) failed verification"
                )));
            }
            Ok(outcome(RealizationStatus::Realized, Some(cx), method))
        }
        None => Ok(outcome(
            RealizationStatus::Unknown,
            None,
            RealizationMethod::SearchFail,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hibi_cycle, moebius, rp2};

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomials(1, 4), vec![vec![4]]);
    }

    #[test]
    fn pentagon_cover() {
        let p = hibi_cycle(3).unwrap();
        let r = cm_cover(&p, FieldSpec::Rationals, 0).unwrap();
        assert_eq!(r.added_facets.len(), 1);
        assert_eq!(r.cover.multiplicity(), 6);
        assert!(is_cohen_macaulay(&r.cover, FieldSpec::Rationals));
    }

    #[test]
    fn moebius_cover_over_gf2_avoids_rp2() {
        let f = FieldSpec::prime(2).unwrap();
        let r = cm_cover(&moebius(), f, 7).unwrap();
        assert_eq!(r.cover.multiplicity(), 10);
        assert_ne!(r.cover, rp2());
        assert!(!is_cm_cover(&moebius(), &rp2(), f).unwrap());
    }

    #[test]
    fn cover_is_deterministic() {
        let p = hanano(6).unwrap();
        let a = cm_cover(&p, FieldSpec::Rationals, 3).unwrap();
        let b = cm_cover(&p, FieldSpec::Rationals, 3).unwrap();
        assert_eq!(a.cover, b.cover);
        assert_eq!(a.attempts, b.attempts);
    }

    #[test]
    fn cm_input_is_returned() {
        let cx = cm_linear_example(2, 3, 3).unwrap();
        let r = cm_cover(&cx, FieldSpec::Rationals, 0).unwrap();
        assert!(r.added_facets.is_empty());
        assert_eq!(r.cover, cx);
    }

    #[test]
    fn sandwich_endpoints() {
        let f = FieldSpec::Rationals;
        let m = moebius();
        let out = sandwich_family(&m, &rp2(), 10, f, 0).unwrap();
        assert_eq!(out, rp2());
        assert!(matches!(
            sandwich_family(&m, &rp2(), 11, f, 0),
            Err(Error::TargetOutOfRange { .. })
        ));
        assert!(matches!(
            sandwich_family(&rp2(), &m, 9, f, 0),
            Err(Error::NotNested)
        ));
    }

    #[test]
    fn realize_dispatch() {
        let f = FieldSpec::Rationals;
        let r = realize(3, 3, 3, 2, f, 1).unwrap();
        assert_eq!(r.status, RealizationStatus::Realized);
        assert_eq!(r.method, RealizationMethod::Sandwich3);
        let r = realize(2, 3, 3, 5, f, 0).unwrap();
        assert_eq!(r.status, RealizationStatus::InfeasibleByBound);
        let r = realize(6, 3, 2, 2, f, 0).unwrap();
        assert_eq!(r.method, RealizationMethod::DisjointUnionQ2);
        let r = realize(3, 4, 3, 0, f, 0).unwrap();
        assert_eq!(r.method, RealizationMethod::CMExample);
        assert!(matches!(
            realize(0, 3, 3, 0, f, 0),
            Err(Error::ParameterRange(_))
        ));
    }
}
