//! Reduced simplicial homology over a field, from boundary-matrix ranks.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::LazyLock;

use lru::LruCache;
use parking_lot::Mutex;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::linalg::{ExactMatrix, FieldSpec};
use crate::vset::VertexSet;

/// `dims[p + 1] = dim_k H̃_p(Δ; k)` for `p = -1 ..= dim Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub field: FieldSpec,
    dims: Vec<u64>,
}

impl HomologyProfile {
    /// `dim H̃_p`; zero outside the stored range.
    pub fn get(&self, p: isize) -> u64 {
        usize::try_from(p + 1)
            .ok()
            .and_then(|k| self.dims.get(k).copied())
            .unwrap_or(0)
    }

    /// `(p, dim H̃_p)` for `p = -1 ..= dim Δ`.
    pub fn entries(&self) -> impl Iterator<Item = (isize, u64)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &v)| (k as isize - 1, v))
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&v| v == 0)
    }

    /// `Σ_p (-1)^p dim H̃_p`.
    pub fn euler_characteristic(&self) -> i64 {
        self.entries()
            .map(|(p, v)| {
                if p.rem_euclid(2) == 0 {
                    v as i64
                } else {
                    -(v as i64)
                }
            })
            .sum()
    }
}

/// Matrix of `∂_p : C_p → C_{p-1}`. Rows are indexed by the `p`-faces and
/// columns by the `(p-1)`-faces, both in lexicographic order. The face
/// `{v_1 < … < v_{p+1}}` maps to `Σ_j (-1)^j (face minus v_j)` with `j`
/// counted from 1.
pub fn boundary_matrix(cx: &SimplicialComplex, p: isize, field: FieldSpec) -> ExactMatrix {
    let rows = faces_of_dim(cx, p);
    let cols = faces_of_dim(cx, p - 1);
    boundary_between(&rows, &cols, field)
}

fn faces_of_dim(cx: &SimplicialComplex, p: isize) -> Vec<VertexSet> {
    if p < -1 || cx.is_void() {
        return Vec::new();
    }
    cx.faces_of_size((p + 1) as usize)
}

fn boundary_between(rows: &[VertexSet], cols: &[VertexSet], field: FieldSpec) -> ExactMatrix {
    let index: HashMap<VertexSet, usize> = cols.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut m = ExactMatrix::zeros(field, rows.len(), cols.len());
    for (r, face) in rows.iter().enumerate() {
        for (j, v) in face.iter().enumerate() {
            let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
            if let Some(&c) = index.get(&face.without(v)) {
                m.set(r, c, sign);
            }
        }
    }
    m
}

/// Reduced homology computed from scratch (no cache).
pub fn reduced_homology_uncached(cx: &SimplicialComplex, field: FieldSpec) -> HomologyProfile {
    if cx.is_void() {
        return HomologyProfile {
            field,
            dims: vec![0],
        };
    }
    let top = cx.dim();
    let faces: Vec<Vec<VertexSet>> = (-1..=top).map(|p| faces_of_dim(cx, p)).collect();
    // ranks[k] = rank ∂_{k-1}; the entries for ∂_{-1} and ∂_{top+1} stay 0.
    let mut ranks = vec![0usize; faces.len() + 1];
    for k in 1..faces.len() {
        ranks[k] = boundary_between(&faces[k], &faces[k - 1], field).rank();
    }
    let dims = (0..faces.len())
        .map(|k| (faces[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    HomologyProfile { field, dims }
}

const CACHE_CAPACITY: usize = 1 << 16;

type CacheKey = (Vec<u64>, FieldSpec);

static CACHE: LazyLock<Mutex<LruCache<CacheKey, HomologyProfile>>> =
    LazyLock::new(|| Mutex::new(LruCache::new(NonZeroUsize::new(CACHE_CAPACITY).unwrap())));

/// Reduced homology, memoized by (facet set, field). Ghost vertices do not
/// affect homology, so the vertex count is not part of the key.
pub fn reduced_homology(cx: &SimplicialComplex, field: FieldSpec) -> HomologyProfile {
    let key: CacheKey = (cx.facets().iter().map(|f| f.bits()).collect(), field);
    if let Some(hit) = CACHE.lock().get(&key) {
        return hit.clone();
    }
    let profile = reduced_homology_uncached(cx, field);
    CACHE.lock().put(key, profile.clone());
    profile
}

/// `Σ_{i=-1}^{d-1} (-1)^i f_i`.
pub fn euler_from_f_vector(cx: &SimplicialComplex) -> i64 {
    cx.f_vector()
        .0
        .iter()
        .enumerate()
        .map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) })
        .sum()
}
