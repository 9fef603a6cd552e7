//! Graded Betti numbers and local cohomology through Hochster's formulas.
//!
//! Betti numbers come from homology of restrictions `Δ_W`; local
//! cohomology dimensions come from homology of links. No resolution is ever
//! constructed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::combinat::binom;
use crate::complex::{Indeg, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, HomologyProfile};
use crate::linalg::FieldSpec;
use crate::vset::{VertexSet, MAX_VERTICES};

/// Default vertex cap for Betti tables (the subset scan is `2^n`).
pub const DEFAULT_BETTI_CAP: usize = 20;

/// Nonzero graded Betti numbers `β_{i,j}` for `i ≥ 1`; `β_{0,0} = 1` is
/// implicit. Serializes as a list of `[i, j, value]` sorted by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: FieldSpec,
    pub n: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(field: FieldSpec, n: usize) -> Self {
        BettiTable {
            field,
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        if i == 0 {
            return u64::from(j == 0);
        }
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, v: u64) {
        if v > 0 {
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    /// `((i, j), β_{i,j})` for nonzero entries with `i ≥ 1`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `β_i = Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        if i == 0 {
            return 1;
        }
        self.iter()
            .filter(|((a, _), _)| *a == i)
            .map(|(_, v)| v)
            .sum()
    }

    /// `max{j - i : β_{i,j} ≠ 0}`, and 0 for the zero ideal.
    pub fn regularity(&self) -> i64 {
        self.iter()
            .map(|((i, j), _)| j as i64 - i as i64)
            .max()
            .unwrap_or(0)
    }

    /// Largest `i` with a nonzero row.
    pub fn projective_dimension(&self) -> usize {
        self.iter().map(|((i, _), _)| i).max().unwrap_or(0)
    }

    /// `min{j : β_{1,j} ≠ 0}`.
    pub fn indeg(&self) -> Indeg {
        self.iter()
            .filter(|((i, _), _)| *i == 1)
            .map(|((_, j), _)| j)
            .min()
            .map_or(Indeg::Infinite, Indeg::Finite)
    }

    /// Coefficients of `Σ_{i,j} (-1)^i β_{i,j} t^j` (with `β_{0,0} = 1`),
    /// indexed by `j = 0..=n`.
    pub fn alternating_polynomial(&self) -> Vec<i64> {
        let mut poly = vec![0i64; self.n + 1];
        poly[0] = 1;
        for ((i, j), v) in self.iter() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            poly[j] += sign * v as i64;
        }
        poly
    }
}

/// Rows are indexed by `j - i`, columns by `i`; zeros print as `.`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pd = self.projective_dimension();
        let reg = self.regularity().max(0) as usize;
        let cell = |v: u64| {
            if v == 0 {
                ".".to_string()
            } else {
                v.to_string()
            }
        };
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        rows.push((String::new(), (0..=pd).map(|i| i.to_string()).collect()));
        rows.push((
            "total:".into(),
            (0..=pd).map(|i| self.total(i).to_string()).collect(),
        ));
        for r in 0..=reg {
            let cells = (0..=pd).map(|i| cell(self.get(i, i + r))).collect();
            rows.push((format!("{r}:"), cells));
        }
        let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let col_w = rows
            .iter()
            .flat_map(|(_, cs)| cs.iter().map(String::len))
            .max()
            .unwrap_or(1);
        for (label, cells) in rows {
            write!(f, "{label:>label_w$}")?;
            for c in cells {
                write!(f, " {c:>col_w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for ((i, j), v) in self.iter() {
            seq.serialize_element(&[i as u64, j as u64, v])?;
        }
        seq.end()
    }
}

/// Hochster's Betti formula with the default vertex cap.
pub fn betti_table(cx: &SimplicialComplex, field: FieldSpec) -> Result<BettiTable> {
    betti_table_capped(cx, field, DEFAULT_BETTI_CAP)
}

/// `β_{i,j} = Σ_{|W| = j} dim H̃_{j-i-1}(Δ_W)`, evaluated over all `W ⊆ V`
/// in parallel.
pub fn betti_table_capped(
    cx: &SimplicialComplex,
    field: FieldSpec,
    cap: usize,
) -> Result<BettiTable> {
    let n = cx.n();
    if n > cap.min(MAX_VERTICES - 1) {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    let contributions: Vec<Vec<(usize, usize, u64)>> = (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let w = VertexSet(bits);
            let j = w.len();
            if j == 0 {
                return Vec::new();
            }
            let hom = reduced_homology(&cx.restriction(w), field);
            hom.entries()
                .filter(|&(_, v)| v > 0)
                .filter_map(|(p, v)| {
                    let i = j as isize - p - 1;
                    (i >= 1).then_some((i as usize, j, v))
                })
                .collect()
        })
        .collect();
    let mut table = BettiTable::new(field, n);
    for (i, j, v) in contributions.into_iter().flatten() {
        table.add(i, j, v);
    }
    Ok(table)
}

/// Whether the ideal has a `q`-linear resolution (`reg = indeg - 1`),
/// returning `q = indeg`.
pub fn is_q_linear(cx: &SimplicialComplex, field: FieldSpec) -> Result<(bool, usize)> {
    let Indeg::Finite(q) = cx.indeg() else {
        return Err(Error::NoGenerators);
    };
    let table = betti_table(cx, field)?;
    Ok((table.regularity() == q as i64 - 1, q))
}

/// Dimensions of one local cohomology module over a degree window `[lo, 0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub field: FieldSpec,
    pub i: usize,
    pub lo: i64,
    /// `dims[k] = dim [H^i]_{lo + k}`.
    dims: Vec<u64>,
}

impl GradedDims {
    /// Dimension in degree `j`; zero outside the window and for `j ≥ 1`.
    pub fn get(&self, j: i64) -> u64 {
        if j < self.lo || j > 0 {
            return 0;
        }
        self.dims[(j - self.lo) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&v| v == 0)
    }

    /// `Σ_j dim [H^i]_j` over the window.
    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Nonzero `(degree, dimension)` pairs, highest degree first.
    pub fn nonzero(&self) -> Vec<(i64, u64)> {
        (self.lo..=0)
            .rev()
            .map(|j| (j, self.get(j)))
            .filter(|&(_, v)| v > 0)
            .collect()
    }
}

/// A face together with the dimension and reduced homology of its link.
#[derive(Debug, Clone)]
pub struct LinkHomology {
    pub face: VertexSet,
    pub link_dim: isize,
    pub hom: HomologyProfile,
}

/// Link data for every face of `Δ`, ordered by face size then
/// lexicographically.
pub fn link_homologies(cx: &SimplicialComplex, field: FieldSpec) -> Vec<LinkHomology> {
    cx.faces()
        .into_par_iter()
        .map(|face| {
            let link = cx.link_unindexed(face).expect("face of the complex");
            LinkHomology {
                face,
                link_dim: link.dim(),
                hom: reduced_homology(&link, field),
            }
        })
        .collect()
}

pub(crate) fn graded_from_links(
    links: &[LinkHomology],
    field: FieldSpec,
    i: usize,
    lo: i64,
) -> GradedDims {
    let width = (-lo) as usize;
    let mut dims = vec![0u64; width + 1];
    for l in links {
        let s = l.face.len();
        let v = l.hom.get(i as isize - s as isize - 1);
        if v == 0 {
            continue;
        }
        if s == 0 {
            dims[width] += v;
            continue;
        }
        for p in s..=width {
            dims[width - p] += binom(p as u64 - 1, s as u64 - 1) as u64 * v;
        }
    }
    GradedDims { field, i, lo, dims }
}

/// `dim [H^i_m(k[Δ])]_{-p}` for `lo ≤ -p ≤ 0`, expanding
/// `Σ_F dim H̃_{i-|F|-1}(link F) (t^{-1}/(1-t^{-1}))^{|F|}` termwise: a face
/// of size `s ≥ 1` contributes `C(p-1, s-1)` in degree `-p` for `p ≥ s`.
pub fn local_cohomology_dims(
    cx: &SimplicialComplex,
    field: FieldSpec,
    i: usize,
    lo: i64,
) -> Result<GradedDims> {
    if lo > 0 {
        return Err(Error::ParameterRange(format!("window start {lo} > 0")));
    }
    if cx.is_void() {
        return Ok(GradedDims {
            field,
            i,
            lo,
            dims: vec![0; (-lo) as usize + 1],
        });
    }
    Ok(graded_from_links(&link_homologies(cx, field), field, i, lo))
}

/// `a(k[Δ]) = -min{|F| : H̃_{d-|F|-1}(link F) ≠ 0}`; `None` stands for
/// minus infinity.
pub fn a_invariant(cx: &SimplicialComplex, field: FieldSpec) -> Option<i64> {
    a_invariant_from_links(&link_homologies(cx, field), cx.krull_dim())
}

pub(crate) fn a_invariant_from_links(links: &[LinkHomology], d: usize) -> Option<i64> {
    links
        .iter()
        .filter(|l| l.hom.get(d as isize - l.face.len() as isize - 1) > 0)
        .map(|l| -(l.face.len() as i64))
        .max()
}

/// `min{i : H^i_m(k[Δ]) ≠ 0}`, scanning each module over `[-n, 0]`.
pub fn depth(cx: &SimplicialComplex, field: FieldSpec) -> usize {
    let d = cx.krull_dim();
    if cx.is_void() {
        return 0;
    }
    let links = link_homologies(cx, field);
    depth_from_links(&links, field, d, cx.n())
}

pub(crate) fn depth_from_links(
    links: &[LinkHomology],
    field: FieldSpec,
    d: usize,
    n: usize,
) -> usize {
    (0..=d)
        .find(|&i| !graded_from_links(links, field, i, -(n as i64)).is_zero())
        .unwrap_or(d)
}

/// Whether `reg ≤ a + d + 1`. Requires a Buchsbaum complex.
pub fn hoa_miyazaki_check(cx: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    if !crate::props::is_buchsbaum(cx, field) {
        return Err(Error::NotBuchsbaum(field.to_string()));
    }
    let reg = betti_table(cx, field)?.regularity();
    let Some(a) = a_invariant(cx, field) else {
        return Ok(false);
    };
    Ok(reg <= a + cx.krull_dim() as i64 + 1)
}

/// Betti numbers of a pure resolution with shifts `c_1 < … < c_q`:
/// `β_i = |Π_{j≠i} c_j / (c_j - c_i)|`.
pub fn herzog_kuhl_pure_betti(degrees: &[u64]) -> Result<Vec<BigRational>> {
    if degrees.is_empty() || degrees[0] == 0 || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DegenerateDegrees);
    }
    Ok(degrees
        .iter()
        .enumerate()
        .map(|(i, &ci)| {
            degrees
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(
                    BigRational::from_integer(BigInt::from(1)),
                    |acc, (_, &cj)| {
                        acc * BigRational::new(
                            BigInt::from(cj),
                            BigInt::from(cj as i64 - ci as i64),
                        )
                    },
                )
                .abs()
        })
        .collect())
}

/// `β_{i,j}(k[Δ*])` from links of `Δ`:
/// `Σ_{F ∈ Δ, |F| = n - j} dim H̃_{i-2}(link_Δ F)`.
pub fn dual_betti_via_links(cx: &SimplicialComplex, field: FieldSpec) -> BettiTable {
    let n = cx.n();
    let mut table = BettiTable::new(field, n);
    for l in link_homologies(cx, field) {
        let j = n - l.face.len();
        for (p, v) in l.hom.entries() {
            let i = p + 2;
            if i >= 1 && v > 0 {
                table.add(i as usize, j, v);
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::rat;

    fn pentagon() -> SimplicialComplex {
        SimplicialComplex::from_facets(5, (0..5).map(|i| [i, (i + 1) % 5, (i + 2) % 5])).unwrap()
    }

    #[test]
    fn betti_display() {
        let t = betti_table(&pentagon(), FieldSpec::Rationals).unwrap();
        assert_eq!(
            t.to_string(),
            "       0 1 2 3\ntotal: 1 5 5 1\n    0: 1 . . .\n    1: . . . .\n    2: . 5 5 1\n"
        );
    }

    #[test]
    fn pentagon_betti() {
        let t = betti_table(&pentagon(), FieldSpec::Rationals).unwrap();
        let entries: Vec<_> = t.iter().collect();
        assert_eq!(entries, vec![((1, 3), 5), ((2, 4), 5), ((3, 5), 1)]);
        assert_eq!(t.regularity(), 2);
        assert_eq!(t.indeg(), Indeg::Finite(3));
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            "[[1,3,5],[2,4,5],[3,5,1]]"
        );
    }

    #[test]
    fn full_simplex_table_is_empty() {
        let t = betti_table(&SimplicialComplex::simplex(3), FieldSpec::Rationals).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.regularity(), 0);
        assert_eq!(
            is_q_linear(&SimplicialComplex::simplex(3), FieldSpec::Rationals),
            Err(Error::NoGenerators)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let big = SimplicialComplex::simplex(21);
        assert!(matches!(
            betti_table(&big, FieldSpec::Rationals),
            Err(Error::SizeCapExceeded { n: 21, .. })
        ));
    }

    #[test]
    fn two_points_local_cohomology() {
        let two = SimplicialComplex::from_facets(2, [[0], [1]]).unwrap();
        let g = local_cohomology_dims(&two, FieldSpec::Rationals, 1, -4).unwrap();
        assert_eq!(g.get(0), 1);
        for p in 1..=4 {
            assert_eq!(g.get(-p), 2);
        }
        assert_eq!(g.get(1), 0);
    }

    #[test]
    fn pentagon_local_cohomology() {
        let g = local_cohomology_dims(&pentagon(), FieldSpec::Rationals, 2, -5).unwrap();
        assert_eq!(g.nonzero(), vec![(0, 1)]);
        assert_eq!(a_invariant(&pentagon(), FieldSpec::Rationals), Some(-2));
        assert_eq!(depth(&pentagon(), FieldSpec::Rationals), 2);
        assert!(hoa_miyazaki_check(&pentagon(), FieldSpec::Rationals).unwrap());
    }

    #[test]
    fn simplex_a_invariant() {
        assert_eq!(
            a_invariant(&SimplicialComplex::simplex(4), FieldSpec::Rationals),
            Some(-4)
        );
        let c5 = SimplicialComplex::from_facets(5, (0..5).map(|i| [i, (i + 1) % 5])).unwrap();
        assert_eq!(a_invariant(&c5, FieldSpec::Rationals), Some(0));
    }

    #[test]
    fn herzog_kuhl_examples() {
        let b = herzog_kuhl_pure_betti(&[2, 3, 5]).unwrap();
        assert_eq!(b[2], rat(1));
        assert_eq!(
            herzog_kuhl_pure_betti(&[1, 2]).unwrap(),
            vec![rat(2), rat(1)]
        );
        assert_eq!(
            herzog_kuhl_pure_betti(&[2, 2]),
            Err(Error::DegenerateDegrees)
        );
    }

    #[test]
    fn dual_betti_agrees_on_pentagon() {
        let p = pentagon();
        let direct = betti_table(&p.alexander_dual().unwrap(), FieldSpec::Rationals).unwrap();
        assert_eq!(dual_betti_via_links(&p, FieldSpec::Rationals), direct);
    }
}
