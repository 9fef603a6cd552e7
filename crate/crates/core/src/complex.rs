//! Simplicial complexes given by their facets.
//!
//! A complex on `n` vertices stores only its facets (an antichain of vertex
//! sets, sorted lexicographically). Faces are derived on demand. By default
//! every vertex must lie in some facet; the relaxed constructors allow
//! vertices outside every face ("ghost" vertices), which then behave as
//! degree-one generators of the Stanley–Reisner ideal. Links and
//! restrictions are built this way.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::combinat::binom_i;
use crate::error::{Error, Result};
use crate::vset::{VertexSet, MAX_VERTICES};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

/// Initial degree of the Stanley–Reisner ideal; `Infinite` when the ideal
/// is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indeg {
    Finite(usize),
    Infinite,
}

impl Indeg {
    pub fn finite(self) -> Option<usize> {
        match self {
            Indeg::Finite(q) => Some(q),
            Indeg::Infinite => None,
        }
    }
}

impl fmt::Display for Indeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indeg::Finite(q) => write!(f, "{q}"),
            Indeg::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Indeg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Indeg::Finite(q) => s.serialize_u64(*q as u64),
            Indeg::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `(f_{-1}, f_0, ..., f_{d-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_i`, the number of faces with `i + 1` vertices (`i >= -1`).
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.0.get(k).copied())
            .unwrap_or(0)
    }
}

/// `(h_0, ..., h_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

fn maximal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// Builds a complex from facet lists, requiring every vertex to occur.
    pub fn from_facets<I, F>(n: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let sets = Self::collect_sets(n, facets)?;
        Self::from_vertex_sets(n, sets, true)
    }

    /// Like [`from_facets`](Self::from_facets) but allows vertices outside
    /// every facet.
    pub fn from_facets_relaxed<I, F>(n: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let sets = Self::collect_sets(n, facets)?;
        Self::from_vertex_sets(n, sets, false)
    }

    fn collect_sets<I, F>(n: usize, facets: I) -> Result<Vec<VertexSet>>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        if n > MAX_VERTICES {
            return Err(Error::SizeCapExceeded {
                n,
                cap: MAX_VERTICES,
            });
        }
        facets
            .into_iter()
            .map(|f| {
                let f = f.as_ref();
                if let Some(&v) = f.iter().find(|&&v| v >= n) {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                Ok(VertexSet::from_slice(f))
            })
            .collect()
    }

    pub fn from_vertex_sets(
        n: usize,
        sets: Vec<VertexSet>,
        require_coverage: bool,
    ) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeCapExceeded {
                n,
                cap: MAX_VERTICES,
            });
        }
        let all = VertexSet::full(n);
        if let Some(s) = sets.iter().find(|s| !s.is_subset(all)) {
            return Err(Error::VertexOutOfRange {
                vertex: s.difference(all).max().unwrap(),
                n,
            });
        }
        let facets = maximal_sets(sets);
        if require_coverage {
            if facets.is_empty() && n > 0 {
                return Err(Error::EmptyFacetList(n));
            }
            let covered = facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
            if let Some(v) = all.difference(covered).iter().next() {
                return Err(Error::UncoveredVertex(v));
            }
        }
        Ok(SimplicialComplex { n, facets })
    }

    /// The full simplex `2^V` on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::full(n)],
        }
    }

    /// The void complex (no faces at all).
    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![] }
    }

    /// The irrelevant complex `{∅}`.
    pub fn irrelevant(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::EMPTY],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Krull dimension of `k[Δ]`: the size of the largest face.
    pub fn krull_dim(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// `dim Δ = d - 1`; `-1` for `{∅}`, and also for the void complex.
    pub fn dim(&self) -> isize {
        self.krull_dim() as isize - 1
    }

    pub fn codim(&self) -> usize {
        self.n - self.krull_dim()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.krull_dim();
        self.facets.iter().all(|f| f.len() == d)
    }

    /// Vertices that lie in some face.
    pub fn support(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |a, f| a.union(*f))
    }

    pub fn contains_face(&self, f: VertexSet) -> bool {
        self.facets.iter().any(|g| f.is_subset(*g))
    }

    /// Faces with exactly `k` vertices, sorted lexicographically.
    pub fn faces_of_size(&self, k: usize) -> Vec<VertexSet> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= k {
                set.extend(f.subsets_of_size(k));
            }
        }
        set.into_iter().collect()
    }

    /// All faces, ordered by size and then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        (0..=self.krull_dim())
            .flat_map(|k| self.faces_of_size(k))
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        if self.is_void() {
            return FVector(vec![0]);
        }
        FVector(
            (0..=self.krull_dim())
                .map(|k| self.faces_of_size(k).len() as u64)
                .collect(),
        )
    }

    /// Coefficients of `Σ f_{i-1} t^i (1-t)^{d-i}`.
    pub fn h_vector(&self) -> HVector {
        let f = self.f_vector();
        let d = self.krull_dim() as i64;
        let h = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binom_i(d - i, k - i) as i64 * f.0[i as usize] as i64
                    })
                    .sum()
            })
            .collect();
        HVector(h)
    }

    /// `e(k[Δ]) = f_{d-1}`, the number of faces of maximal size.
    pub fn multiplicity(&self) -> u64 {
        let d = self.krull_dim();
        self.facets.iter().filter(|f| f.len() == d).count() as u64
    }

    /// The link of `face`, re-indexed onto `V \ face`. The returned map
    /// sends each new index to its original vertex.
    pub fn link(&self, face: VertexSet) -> Result<(SimplicialComplex, Vec<usize>)> {
        let raw = self.link_unindexed(face)?;
        let map: Vec<usize> = VertexSet::full(self.n).difference(face).to_vec();
        let mut inverse = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let facets = raw
            .facets
            .iter()
            .map(|g| g.iter().map(|v| inverse[v]).collect())
            .collect();
        let cx = SimplicialComplex::from_vertex_sets(map.len(), facets, false)?;
        Ok((cx, map))
    }

    /// Link of a single vertex, re-indexed onto `V \ {v}`.
    pub fn vertex_link(&self, v: usize) -> Result<SimplicialComplex> {
        Ok(self.link(VertexSet::singleton(v))?.0)
    }

    /// The link on the original vertex set (vertices of `face` become ghosts).
    pub fn link_unindexed(&self, face: VertexSet) -> Result<SimplicialComplex> {
        if !self.contains_face(face) {
            return Err(Error::FaceNotInComplex);
        }
        let sets = self
            .facets
            .iter()
            .filter(|g| face.is_subset(**g))
            .map(|g| g.difference(face))
            .collect();
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximal_sets(sets),
        })
    }

    /// `Δ_W = {G ∈ Δ : G ⊆ W}` on the same vertex set.
    pub fn restriction(&self, w: VertexSet) -> SimplicialComplex {
        if self.is_void() {
            return self.clone();
        }
        let sets = self.facets.iter().map(|f| f.intersection(w)).collect();
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(sets),
        }
    }

    /// All faces of dimension at most `r`.
    pub fn skeleton(&self, r: isize) -> Result<SimplicialComplex> {
        if r < -1 || r > self.dim() {
            return Err(Error::ParameterRange(format!(
                "skeleton dimension {r} outside [-1, {}]",
                self.dim()
            )));
        }
        let k = (r + 1) as usize;
        let mut sets: Vec<VertexSet> = self
            .facets
            .iter()
            .copied()
            .filter(|f| f.len() < k)
            .collect();
        sets.extend(self.faces_of_size(k));
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximal_sets(sets),
        })
    }

    /// Inclusion-minimal vertex sets that are not faces, sorted
    /// lexicographically. These index the generators of `I_Δ`.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let mut out = BTreeSet::new();
        let all = VertexSet::full(self.n);
        if self.is_void() {
            out.insert(VertexSet::EMPTY);
            return out.into_iter().collect();
        }
        for v in all.iter() {
            if !self.contains_face(VertexSet::singleton(v)) {
                out.insert(VertexSet::singleton(v));
            }
        }
        for k in 1..=self.krull_dim() {
            for f in self.faces_of_size(k) {
                let Some(top) = f.max() else { continue };
                for v in all.iter().filter(|&v| v > top) {
                    let cand = f.with(v);
                    if !self.contains_face(cand)
                        && cand.iter().all(|u| self.contains_face(cand.without(u)))
                    {
                        out.insert(cand);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn indeg(&self) -> Indeg {
        self.minimal_nonfaces()
            .iter()
            .map(|s| s.len())
            .min()
            .map_or(Indeg::Infinite, Indeg::Finite)
    }

    /// `Δ* = {F ⊆ V : V \ F ∉ Δ}`. Requires codimension at least 2 and
    /// initial degree at least 2.
    pub fn alexander_dual(&self) -> Result<SimplicialComplex> {
        let c = self.codim();
        if c < 2 {
            return Err(Error::DualUndefined(format!("codimension {c} < 2")));
        }
        match self.indeg() {
            Indeg::Infinite => return Err(Error::DualUndefined("ideal is zero".into())),
            Indeg::Finite(q) if q < 2 => {
                return Err(Error::DualUndefined(format!("initial degree {q} < 2")))
            }
            _ => {}
        }
        Ok(self.dual_unchecked())
    }

    pub(crate) fn dual_unchecked(&self) -> SimplicialComplex {
        let all = VertexSet::full(self.n);
        let sets = self
            .minimal_nonfaces()
            .into_iter()
            .map(|nf| all.difference(nf))
            .collect();
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(sets),
        }
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.n == other.n && self.facets.iter().all(|f| other.contains_face(*f))
    }

    /// Adds faces (and their subsets); the result is re-normalized.
    pub fn with_faces(&self, extra: &[VertexSet]) -> Result<SimplicialComplex> {
        let mut sets = self.facets.clone();
        sets.extend_from_slice(extra);
        SimplicialComplex::from_vertex_sets(self.n, sets, false)
    }

    /// Removes the given facets.
    pub fn without_facets(&self, gone: &[VertexSet]) -> SimplicialComplex {
        SimplicialComplex {
            n: self.n,
            facets: self
                .facets
                .iter()
                .copied()
                .filter(|f| !gone.contains(f))
                .collect(),
        }
    }

    /// Vertex sets of the connected components of the support.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut comps: Vec<VertexSet> = Vec::new();
        for f in self.facets.iter().filter(|f| !f.is_empty()) {
            let mut merged = *f;
            comps.retain(|c| {
                if c.is_disjoint(merged) {
                    true
                } else {
                    merged = merged.union(*c);
                    false
                }
            });
            comps.push(merged);
        }
        comps.sort();
        comps
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        assert_eq!(perm.len(), self.n);
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|v| perm[v]).collect())
            .collect();
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(facets),
        }
    }

    /// Restriction to `w`, re-indexed onto `0..|w|`.
    pub fn induced(&self, w: VertexSet) -> SimplicialComplex {
        let map = w.to_vec();
        let mut inverse = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let facets = self
            .restriction(w)
            .facets
            .iter()
            .map(|f| f.iter().map(|v| inverse[v]).collect())
            .collect();
        SimplicialComplex {
            n: map.len(),
            facets: maximal_sets(facets),
        }
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, facets=", self.n)?;
        f.debug_list().entries(self.facets.iter()).finish()?;
        write!(f, ")")
    }
}

/// Serializes as `{"n": <vertices>, "facets": [[...], ...]}`.
impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SimplicialComplex", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("facets", &self.facet_lists())?;
        st.end()
    }
}
