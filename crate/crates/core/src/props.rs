//! Ring-theoretic classification of a complex over a field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::combinat::{binom, binom_i, floor_rat, is_integral, rat, rat_string};
use crate::complex::{FVector, HVector, Indeg, SimplicialComplex};
use crate::error::{Error, Result};
use crate::hochster::{
    a_invariant_from_links, betti_table, depth_from_links, link_homologies, BettiTable,
    LinkHomology,
};
use crate::homology::reduced_homology;
use crate::linalg::FieldSpec;
use crate::vset::VertexSet;

fn cm_from_links(links: &[LinkHomology]) -> bool {
    links
        .iter()
        .all(|l| (-1..l.link_dim).all(|i| l.hom.get(i) == 0))
}

fn buchsbaum_from_links(cx: &SimplicialComplex, links: &[LinkHomology]) -> bool {
    cx.is_pure()
        && links
            .iter()
            .filter(|l| !l.face.is_empty())
            .all(|l| (-1..l.link_dim).all(|i| l.hom.get(i) == 0))
}

/// Reisner's criterion: every link (including `Δ` itself) has vanishing
/// reduced homology below its dimension.
pub fn is_cohen_macaulay(cx: &SimplicialComplex, field: FieldSpec) -> bool {
    !cx.is_void() && cm_from_links(&link_homologies(cx, field))
}

/// `Δ` is pure and every nonempty face's link has vanishing reduced
/// homology below its dimension.
pub fn is_buchsbaum(cx: &SimplicialComplex, field: FieldSpec) -> bool {
    !cx.is_void() && buchsbaum_from_links(cx, &link_homologies(cx, field))
}

fn require_buchsbaum(cx: &SimplicialComplex, field: FieldSpec) -> Result<()> {
    if is_buchsbaum(cx, field) {
        Ok(())
    } else {
        Err(Error::NotBuchsbaum(field.to_string()))
    }
}

/// `q = indeg` with `2 ≤ q ≤ d`, or a `ParameterRange` error.
fn q_in_range(cx: &SimplicialComplex) -> Result<usize> {
    let d = cx.krull_dim();
    match cx.indeg() {
        Indeg::Finite(q) if (2..=d).contains(&q) => Ok(q),
        q => Err(Error::ParameterRange(format!(
            "initial degree {q} outside [2, {d}]"
        ))),
    }
}

/// `I(k[Δ]) = Σ_{i=0}^{d-1} C(d-1, i) dim H̃_{i-1}(Δ)`.
pub fn i_invariant(cx: &SimplicialComplex, field: FieldSpec) -> Result<u64> {
    require_buchsbaum(cx, field)?;
    let d = cx.krull_dim() as u64;
    let hom = reduced_homology(cx, field);
    Ok((0..d)
        .map(|i| binom(d - 1, i) as u64 * hom.get(i as isize - 1))
        .sum())
}

/// `h_{c,d,q} = c(c+1)⋯(c+q-2) / d(d-1)⋯(d-q+2)`.
pub fn h_bound(c: usize, d: usize, q: usize) -> Result<BigRational> {
    if c < 1 || q < 2 || q > d {
        return Err(Error::ParameterRange(format!(
            "h bound needs c >= 1 and 2 <= q <= d, got (c, d, q) = ({c}, {d}, {q})"
        )));
    }
    Ok((0..q - 1).fold(BigRational::one(), |acc, k| {
        acc * BigRational::new(BigInt::from(c + k), BigInt::from(d - k))
    }))
}

/// `(c+d)/d · C(c+q-2, q-2)`.
pub fn min_mult_lower_bound(c: usize, d: usize, q: usize) -> Result<BigRational> {
    if c < 1 || q < 2 || q > d {
        return Err(Error::ParameterRange(format!(
            "bound needs c >= 1 and 2 <= q <= d, got (c, d, q) = ({c}, {d}, {q})"
        )));
    }
    Ok(BigRational::new(BigInt::from(c + d), BigInt::from(d))
        * rat(binom((c + q - 2) as u64, (q - 2) as u64) as i128))
}

fn predicted_h_rational(c: usize, d: usize, q: usize, h: &BigRational) -> Vec<BigRational> {
    (0..=d)
        .map(|p| {
            if p < q {
                rat(binom_i((c + p) as i64 - 1, p as i64))
            } else {
                let sign = if (p - q + 1).is_multiple_of(2) { 1 } else { -1 };
                rat(sign * binom(d as u64, p as u64) as i128) * h
            }
        })
        .collect()
}

/// `h_p = C(c+p-1, p)` for `p < q` and `(-1)^{p-q+1} C(d, p) h` for `p ≥ q`.
pub fn predicted_h_vector(c: usize, d: usize, q: usize, h: u64) -> Result<HVector> {
    if c < 1 || q < 2 || q > d {
        return Err(Error::ParameterRange(format!(
            "h-vector formula needs c >= 1 and 2 <= q <= d, got (c, d, q) = ({c}, {d}, {q})"
        )));
    }
    let v = predicted_h_rational(c, d, q, &rat(h as i128));
    Ok(HVector(
        v.iter()
            .map(|x| x.to_integer().to_i64().expect("small"))
            .collect(),
    ))
}

fn e_rational(cx: &SimplicialComplex) -> BigRational {
    rat(cx.multiplicity() as i128)
}

/// `e = (c+d)/d · C(c+q-2, q-2)`. Requires a Buchsbaum complex with
/// `2 ≤ q ≤ d`.
pub fn is_min_mult_type_q(cx: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    require_buchsbaum(cx, field)?;
    let q = q_in_range(cx)?;
    Ok(e_rational(cx) == min_mult_lower_bound(cx.codim(), cx.krull_dim(), q)?)
}

/// q-linear Buchsbaum with `dim H̃_{q-2} = ⌊h_{c,d,q}⌋`.
pub fn has_maximal_homology(cx: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    require_buchsbaum(cx, field)?;
    let q = q_in_range(cx)?;
    let bound = h_bound(cx.codim(), cx.krull_dim(), q)?;
    let reg = betti_table(cx, field)?.regularity();
    let h = reduced_homology(cx, field).get(q as isize - 2);
    Ok(reg == q as i64 - 1 && BigInt::from(h) == floor_rat(&bound))
}

fn vertex_links(cx: &SimplicialComplex) -> Vec<SimplicialComplex> {
    (0..cx.n())
        .map(|v| cx.vertex_link(v).expect("vertex is a face"))
        .collect()
}

fn a_of(cx: &SimplicialComplex, field: FieldSpec) -> Option<i64> {
    a_invariant_from_links(&link_homologies(cx, field), cx.krull_dim())
}

fn links_a_at_most(cx: &SimplicialComplex, field: FieldSpec, bound: i64) -> bool {
    vertex_links(cx)
        .iter()
        .all(|l| a_of(l, field).is_none_or(|a| a <= bound))
}

/// `H̃_i(Δ) = 0` for `i ≠ q-2`, and `a(link v) ≤ q-d` for every vertex.
pub fn hibi_criterion(cx: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    require_buchsbaum(cx, field)?;
    let q = q_in_range(cx)? as isize;
    let d = cx.krull_dim() as i64;
    let hom = reduced_homology(cx, field);
    let homology_ok = hom.entries().all(|(i, v)| i == q - 2 || v == 0);
    Ok(homology_ok && links_a_at_most(cx, field, q as i64 - d))
}

/// `H̃_{q-1}(Δ) = 0`, and `a(link v) ≤ q-d` for every vertex.
pub fn improved_criterion(cx: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    require_buchsbaum(cx, field)?;
    let q = q_in_range(cx)? as isize;
    let d = cx.krull_dim() as i64;
    let homology_ok = reduced_homology(cx, field).get(q - 1) == 0;
    Ok(homology_ok && links_a_at_most(cx, field, q as i64 - d))
}

/// Pure of dimension `d-1` and containing every `(d-1)`-subset of `V`.
pub fn is_d_full(cx: &SimplicialComplex) -> bool {
    let d = cx.krull_dim();
    if cx.is_void() || d == 0 || !cx.is_pure() {
        return false;
    }
    cx.faces_of_size(d - 1).len() as u128 == binom(cx.n() as u64, d as u64 - 1)
}

fn is_linear_of(cx: &SimplicialComplex, field: FieldSpec, q: usize) -> Result<bool> {
    match cx.indeg() {
        Indeg::Finite(p) if p == q => Ok(betti_table(cx, field)?.regularity() == q as i64 - 1),
        _ => Ok(false),
    }
}

/// Decomposes `Δ` into connected components and checks that each one is
/// Cohen–Macaulay and either a simplex or 2-linear on its own vertices.
/// Requires a Buchsbaum complex with initial degree 2.
pub fn is_froberg_q2(cx: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    require_buchsbaum(cx, field)?;
    if cx.indeg() != Indeg::Finite(2) {
        return Err(Error::ParameterRange(format!(
            "initial degree {} is not 2",
            cx.indeg()
        )));
    }
    if cx.support() != VertexSet::full(cx.n()) {
        return Ok(false);
    }
    for comp in cx.components() {
        let part = cx.induced(comp);
        if !is_cohen_macaulay(&part, field) {
            return Ok(false);
        }
        let simplex = part.facets().len() == 1;
        if !simplex && !is_linear_of(&part, field, 2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The seven conditions of the minimal-multiplicity characterization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thm45Check {
    /// `e = (c+d)/d · C(c+q-2, q-2)`.
    pub multiplicity: bool,
    /// q-linear and `dim H̃_{q-2} = h_{c,d,q}`.
    pub linear_with_bound: bool,
    /// The h-vector matches the predicted one with `h = h_{c,d,q}`.
    pub h_vector: bool,
    /// Every vertex link is `(q-1)`-linear.
    pub links_linear: bool,
    /// Every vertex link has `a = q-d-1`.
    pub links_a_invariant: bool,
    /// `a(Δ) = q-d-2`.
    pub a_invariant: bool,
    /// `Δ*` is Cohen–Macaulay with a pure almost linear resolution and
    /// `a(Δ*) = 0`.
    pub dual_shape: bool,
}

impl Thm45Check {
    pub fn values(&self) -> [bool; 7] {
        [
            self.multiplicity,
            self.linear_with_bound,
            self.h_vector,
            self.links_linear,
            self.links_a_invariant,
            self.a_invariant,
            self.dual_shape,
        ]
    }

    /// All seven conditions agree.
    pub fn consistent(&self) -> bool {
        let v = self.values();
        v.iter().all(|&b| b == v[0])
    }
}

/// Evaluates each of the seven conditions independently. Requires a
/// Buchsbaum complex with codimension at least 2 and `2 ≤ q ≤ d`.
pub fn check_thm45_equivalence(cx: &SimplicialComplex, field: FieldSpec) -> Result<Thm45Check> {
    require_buchsbaum(cx, field)?;
    let q = q_in_range(cx)?;
    let (c, d, n) = (cx.codim(), cx.krull_dim(), cx.n());
    if c < 2 {
        return Err(Error::ParameterRange(format!("codimension {c} < 2")));
    }
    let bound = h_bound(c, d, q)?;
    let hom = reduced_homology(cx, field);

    let multiplicity = e_rational(cx) == min_mult_lower_bound(c, d, q)?;

    let linear = is_linear_of(cx, field, q)?;
    let linear_with_bound = linear && rat(hom.get(q as isize - 2) as i128) == bound;

    let predicted = predicted_h_rational(c, d, q, &bound);
    let h_vector = cx
        .h_vector()
        .0
        .iter()
        .zip(&predicted)
        .all(|(&x, y)| rat(x as i128) == *y);

    let links = vertex_links(cx);
    let mut links_linear = true;
    for l in &links {
        if !is_linear_of(l, field, q - 1)? {
            links_linear = false;
            break;
        }
    }
    let target = q as i64 - d as i64 - 1;
    let links_a_invariant = links.iter().all(|l| a_of(l, field) == Some(target));

    let a_invariant = a_of(cx, field) == Some(q as i64 - d as i64 - 2);

    let dual = cx.alexander_dual()?;
    let dual_betti = betti_table(&dual, field)?;
    let shape = dual_betti
        .iter()
        .all(|((i, j), _)| (i < q && j == c + i - 1) || (i == q && j == n));
    let dual_shape = shape && is_cohen_macaulay(&dual, field) && a_of(&dual, field) == Some(0);

    Ok(Thm45Check {
        multiplicity,
        linear_with_bound,
        h_vector,
        links_linear,
        links_a_invariant,
        a_invariant,
        dual_shape,
    })
}

/// Compact view of a Betti table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BettiSummary {
    pub regularity: i64,
    pub projective_dimension: usize,
    /// `β_i = Σ_j β_{i,j}` for `i = 0 ..= projective dimension`.
    pub totals: Vec<u64>,
    pub table: BettiTable,
}

impl BettiSummary {
    pub fn from_table(table: BettiTable) -> Self {
        let pd = table.projective_dimension();
        BettiSummary {
            regularity: table.regularity(),
            projective_dimension: pd,
            totals: (0..=pd).map(|i| table.total(i)).collect(),
            table,
        }
    }
}

fn ser_rat_opt<S: Serializer>(
    v: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&rat_string(r)),
        None => s.serialize_none(),
    }
}

/// Every computed invariant and verdict for one complex over one field.
///
/// `h` is always `dim H̃_{q-2}(Δ)`; it equals `dim H^{q-1}_m` only for
/// q-linear Buchsbaum complexes.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub field: FieldSpec,
    pub n: usize,
    pub d: usize,
    pub c: usize,
    pub q: Indeg,
    pub pure: bool,
    pub fvec: FVector,
    pub hvec: HVector,
    pub e: u64,
    pub depth: usize,
    pub cm: bool,
    pub buchsbaum: bool,
    #[serde(rename = "dFull")]
    pub d_full: bool,
    #[serde(rename = "qLinear")]
    pub q_linear: bool,
    pub h: u64,
    #[serde(rename = "I")]
    pub i_invariant: Option<u64>,
    #[serde(rename = "aInv")]
    pub a_inv: Option<i64>,
    #[serde(
        rename = "hBound",
        serialize_with = "ser_rat_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub h_bound: Option<BigRational>,
    #[serde(rename = "minMultTypeQ")]
    pub min_mult_type_q: bool,
    #[serde(rename = "maxHomology")]
    pub max_homology: bool,
    #[serde(rename = "bettiSummary")]
    pub betti_summary: BettiSummary,
}

impl PropertyReport {
    pub fn compute(cx: &SimplicialComplex, field: FieldSpec) -> Result<Self> {
        let (n, d, c) = (cx.n(), cx.krull_dim(), cx.codim());
        let links = link_homologies(cx, field);
        let cm = !cx.is_void() && cm_from_links(&links);
        let buchsbaum = !cx.is_void() && buchsbaum_from_links(cx, &links);
        let depth = if cx.is_void() {
            0
        } else {
            depth_from_links(&links, field, d, n)
        };
        let a_inv = a_invariant_from_links(&links, d);
        let table = betti_table(cx, field)?;
        let q = cx.indeg();
        let q_linear = match q {
            Indeg::Finite(q) => table.regularity() == q as i64 - 1,
            Indeg::Infinite => false,
        };
        let hom = reduced_homology(cx, field);
        let h = match q {
            Indeg::Finite(q) => hom.get(q as isize - 2),
            Indeg::Infinite => 0,
        };
        let i_invariant = buchsbaum.then(|| {
            (0..d as u64)
                .map(|i| binom(d as u64 - 1, i) as u64 * hom.get(i as isize - 1))
                .sum()
        });
        let q_ok = q.finite().filter(|&q| c >= 1 && (2..=d).contains(&q));
        let h_bound = q_ok.map(|q| h_bound(c, d, q).expect("checked range"));
        let e = cx.multiplicity();
        let min_mult_type_q = match q_ok {
            Some(q) if buchsbaum => {
                rat(e as i128) == min_mult_lower_bound(c, d, q).expect("checked range")
            }
            _ => false,
        };
        let max_homology = match &h_bound {
            Some(b) if buchsbaum && q_linear => BigInt::from(h) == floor_rat(b),
            _ => false,
        };
        Ok(PropertyReport {
            field,
            n,
            d,
            c,
            q,
            pure: cx.is_pure(),
            fvec: cx.f_vector(),
            hvec: cx.h_vector(),
            e,
            depth,
            cm,
            buchsbaum,
            d_full: is_d_full(cx),
            q_linear,
            h,
            i_invariant,
            a_inv,
            h_bound,
            min_mult_type_q,
            max_homology,
            betti_summary: BettiSummary::from_table(table),
        })
    }

    /// Human-readable summary with one `key: value` per line.
    pub fn to_text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let vec_str = |v: Vec<String>| format!("({})", v.join(", "));
        let lines = [
            ("field", self.field.to_string()),
            ("n", self.n.to_string()),
            ("d", self.d.to_string()),
            ("c", self.c.to_string()),
            ("q", self.q.to_string()),
            ("pure", self.pure.to_string()),
            (
                "f-vector",
                vec_str(self.fvec.0.iter().map(|x| x.to_string()).collect()),
            ),
            (
                "h-vector",
                vec_str(self.hvec.0.iter().map(|x| x.to_string()).collect()),
            ),
            ("e", self.e.to_string()),
            ("depth", self.depth.to_string()),
            ("cohen-macaulay", self.cm.to_string()),
            ("buchsbaum", self.buchsbaum.to_string()),
            ("d-full", self.d_full.to_string()),
            ("q-linear", self.q_linear.to_string()),
            ("h", self.h.to_string()),
            ("I", opt(self.i_invariant.map(|v| v.to_string()))),
            ("a-invariant", opt(self.a_inv.map(|v| v.to_string()))),
            ("h-bound", opt(self.h_bound.as_ref().map(rat_string))),
            ("min-mult-type-q", self.min_mult_type_q.to_string()),
            ("max-homology", self.max_homology.to_string()),
            ("regularity", self.betti_summary.regularity.to_string()),
            (
                "betti-totals",
                vec_str(
                    self.betti_summary
                        .totals
                        .iter()
                        .map(|x| x.to_string())
                        .collect(),
                ),
            ),
        ];
        lines.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }
}

/// Whether `h_{c,d,q}` is an integer.
pub fn h_bound_is_integral(c: usize, d: usize, q: usize) -> Result<bool> {
    Ok(is_integral(&h_bound(c, d, q)?))
}

/// `⌊h_{c,d,q}⌋` as an integer.
pub fn h_bound_floor(c: usize, d: usize, q: usize) -> Result<u64> {
    let f = floor_rat(&h_bound(c, d, q)?);
    Ok(if f.is_zero() {
        0
    } else {
        f.to_u64().expect("small")
    })
}
