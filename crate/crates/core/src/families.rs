//! Deterministic generators for the named complexes.
//!
//! Modular families reduce indices mod the cycle length and deduplicate facets
//! as sets; every output passes `from_facets` validation.

use std::fmt;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::is_prime;

fn range_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::ParameterRange(msg.into()))
}

/// All `d`-subsets of `[n]` as facets.
pub fn skeleton_complex(n: usize, d: usize) -> Result<SimplicialComplex> {
    if d < 1 || d + 1 > n || n > 64 {
        return range_err(format!(
            "skeleton needs 1 <= d <= n-1, got n = {n}, d = {d}"
        ));
    }
    let full = crate::vset::VertexSet::full(n);
    SimplicialComplex::from_vertex_sets(n, full.subsets_of_size(d).collect(), true)
}

/// `c + 1` vertices `X_0..X_c` (labels `0..=c`), each joined with the
/// simplex on `Y_1..Y_{d-1}` (labels `c+1..c+d-1`). Cohen–Macaulay with
/// 2-linear resolution; `c = 0` gives a single simplex.
pub fn max_embdim_cm(c: usize, d: usize) -> Result<SimplicialComplex> {
    if d < 2 || c + d > 64 {
        return range_err(format!("max_embdim_cm needs d >= 2, got c = {c}, d = {d}"));
    }
    let ys: Vec<usize> = (c + 1..c + d).collect();
    SimplicialComplex::from_facets(
        c + d,
        (0..=c).map(|x| {
            let mut f = vec![x];
            f.extend(&ys);
            f
        }),
    )
}

/// `max_embdim_cm(c - dh, d)` followed by `h` disjoint `(d-1)`-simplices,
/// giving codimension `c` and `dim H̃_0 = h`.
pub fn disjoint_union_q2(c: usize, d: usize, h: usize) -> Result<SimplicialComplex> {
    if c < 1 || d < 2 {
        return range_err(format!(
            "disjoint union needs c >= 1, d >= 2, got c = {c}, d = {d}"
        ));
    }
    if d * h > c {
        return range_err(format!("h = {h} exceeds c/d = {c}/{d}"));
    }
    let base = max_embdim_cm(c - d * h, d)?;
    let offset = base.n();
    let mut facets = base.facet_lists();
    for k in 0..h {
        let start = offset + k * d;
        facets.push((start..start + d).collect());
    }
    SimplicialComplex::from_facets(c + d, facets)
}

/// `2d-1` vertices with the cyclic intervals `{i, ..., i+d-1}` mod `2d-1`.
pub fn hibi_cycle(d: usize) -> Result<SimplicialComplex> {
    if d < 2 || 2 * d - 1 > 64 {
        return range_err(format!("hibi_cycle needs 2 <= d <= 32, got {d}"));
    }
    let n = 2 * d - 1;
    SimplicialComplex::from_facets(
        n,
        (0..n).map(|i| (0..d).map(|k| (i + k) % n).collect::<Vec<_>>()),
    )
}

/// Vertices `1..=n` (stored as `0..n`); facets `{a, b, a+b}` with `a < b`,
/// `a + b ≤ n`, and `{a, b, c}` with `a < b < c`, `a + b + c = 2n + 1`.
pub fn terai_complex(n: usize) -> Result<SimplicialComplex> {
    if n <= 3 || n > 64 || !is_prime(2 * n as u64 + 1) {
        return range_err(format!(
            "terai_complex needs n > 3 with 2n+1 prime, got {n}"
        ));
    }
    let mut facets = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if a + b <= n {
                facets.push(vec![a - 1, b - 1, a + b - 1]);
            }
            let c = (2 * n + 1).checked_sub(a + b);
            if let Some(c) = c.filter(|&c| c > b && c <= n) {
                facets.push(vec![a - 1, b - 1, c - 1]);
            }
        }
    }
    SimplicialComplex::from_facets(n, facets)
}

fn modular(m: usize, triples: impl Iterator<Item = [usize; 3]>) -> Vec<Vec<usize>> {
    triples.map(|t| t.iter().map(|x| x % m).collect()).collect()
}

/// Hanano's 3-dimensional complexes on `n ≥ 5` vertices. For `n ≡ 1 (mod 3)`
/// the extra vertex is labelled `n - 1` and the others are taken mod `n - 1`.
pub fn hanano(n: usize) -> Result<SimplicialComplex> {
    if !(5..=64).contains(&n) {
        return range_err(format!("hanano needs 5 <= n <= 64, got {n}"));
    }
    let k = n / 3;
    let facets = match n % 3 {
        0 => {
            let first = (0..k).map(|i| [i, i + k, i + 2 * k]);
            let second = (0..3 * k).flat_map(|i| (k + 1..2 * k).map(move |j| [i, i + k, i + j]));
            modular(n, first.chain(second))
        }
        2 => modular(
            n,
            (0..n).flat_map(|i| (0..k).map(move |j| [i, i + 1, i + 3 * j + 2])),
        ),
        _ => {
            let m = n - 1;
            let inf = n - 1;
            let mut fs: Vec<Vec<usize>> = (0..m).map(|i| vec![inf, i, (i + 1) % m]).collect();
            fs.extend(modular(
                m,
                (0..m).flat_map(|i| (1..k).map(move |j| [i, i + 1, i + 3 * j])),
            ));
            fs
        }
    };
    SimplicialComplex::from_facets(n, facets)
}

/// Boundary of the cyclic `f`-polytope on `n` vertices: the `f`-subsets of
/// `0..n` satisfying Gale's evenness condition.
pub fn cyclic_boundary(n: usize, f: usize) -> Result<SimplicialComplex> {
    if f < 2 || n < f + 1 || n > 64 {
        return range_err(format!(
            "cyclic_boundary needs 2 <= f < n, got n = {n}, f = {f}"
        ));
    }
    let full = crate::vset::VertexSet::full(n);
    let facets = full
        .subsets_of_size(f)
        .filter(|s| gale_even(s.to_vec(), n))
        .collect();
    SimplicialComplex::from_vertex_sets(n, facets, true)
}

/// Every maximal run of consecutive elements avoiding `0` and `n - 1` has
/// even length.
fn gale_even(sorted: Vec<usize>, n: usize) -> bool {
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[j] + 1 {
            j += 1;
        }
        let touches_end = sorted[i] == 0 || sorted[j] == n - 1;
        if !touches_end && (j - i + 1) % 2 == 1 {
            return false;
        }
        i = j + 1;
    }
    true
}

/// Alexander dual of `∂C(2d-q+2, 2(d-q+1))`.
pub fn cyclic_dual(d: usize, q: usize) -> Result<SimplicialComplex> {
    if q < 2 || q > d {
        return range_err(format!(
            "cyclic_dual needs 2 <= q <= d, got d = {d}, q = {q}"
        ));
    }
    cyclic_boundary(2 * d - q + 2, 2 * (d - q + 1))?.alexander_dual()
}

/// `{i, i+1, i+2k}` mod `n` for `k = 1 .. n/2 - 1`.
pub fn bruns_hibi(n: usize) -> Result<SimplicialComplex> {
    if n < 6 || n % 2 == 1 || n > 64 {
        return range_err(format!("bruns_hibi needs even n >= 6, got {n}"));
    }
    SimplicialComplex::from_facets(
        n,
        modular(
            n,
            (0..n).flat_map(|i| (1..n / 2).map(move |k| [i, i + 1, i + 2 * k])),
        ),
    )
}

pub fn bruns_hibi_dual(n: usize) -> Result<SimplicialComplex> {
    bruns_hibi(n)?.alexander_dual()
}

const RP2: [[usize; 3]; 10] = [
    [1, 2, 5],
    [1, 2, 6],
    [1, 3, 4],
    [1, 3, 6],
    [1, 4, 5],
    [2, 3, 4],
    [2, 3, 5],
    [2, 4, 6],
    [3, 5, 6],
    [4, 5, 6],
];

/// Six-vertex triangulation of the real projective plane, labels shifted
/// from `1..=6` to `0..6`.
pub fn rp2() -> SimplicialComplex {
    SimplicialComplex::from_facets(6, RP2.iter().map(|f| f.map(|v| v - 1)))
        .expect("valid facet list")
}

/// `rp2()` without the facet `{3, 4, 5}`.
pub fn moebius() -> SimplicialComplex {
    SimplicialComplex::from_facets(6, RP2[..9].iter().map(|f| f.map(|v| v - 1)))
        .expect("valid facet list")
}

/// A family name with its integer parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Skeleton { n: usize, d: usize },
    MaxEmbDimCM { c: usize, d: usize },
    DisjointUnionQ2 { c: usize, d: usize, h: usize },
    HibiCycle { d: usize },
    Terai { n: usize },
    Hanano { n: usize },
    CyclicBoundary { n: usize, f: usize },
    CyclicDual { d: usize, q: usize },
    BrunsHibi { n: usize },
    BrunsHibiDual { n: usize },
    RP2,
    Moebius,
}

/// `(name, parameter names)` for every family, as accepted by
/// [`FamilySpec::parse`].
pub const FAMILY_NAMES: [(&str, &[&str]); 12] = [
    ("skeleton", &["n", "d"]),
    ("max-embdim-cm", &["c", "d"]),
    ("disjoint-union-q2", &["c", "d", "h"]),
    ("hibi-cycle", &["d"]),
    ("terai", &["n"]),
    ("hanano", &["n"]),
    ("cyclic-boundary", &["n", "f"]),
    ("cyclic-dual", &["d", "q"]),
    ("bruns-hibi", &["n"]),
    ("bruns-hibi-dual", &["n"]),
    ("rp2", &[]),
    ("moebius", &[]),
];

impl FamilySpec {
    /// Builds a spec from a kebab-case family name and its parameters.
    pub fn parse(name: &str, params: &[usize]) -> Result<Self> {
        let Some((_, names)) = FAMILY_NAMES.iter().find(|(n, _)| *n == name) else {
            return range_err(format!("unknown family `{name}`"));
        };
        if params.len() != names.len() {
            return range_err(format!(
                "family `{name}` takes {} parameter(s) ({}), got {}",
                names.len(),
                names.join(", "),
                params.len()
            ));
        }
        let p = params;
        Ok(match name {
            "skeleton" => Self::Skeleton { n: p[0], d: p[1] },
            "max-embdim-cm" => Self::MaxEmbDimCM { c: p[0], d: p[1] },
            "disjoint-union-q2" => Self::DisjointUnionQ2 {
                c: p[0],
                d: p[1],
                h: p[2],
            },
            "hibi-cycle" => Self::HibiCycle { d: p[0] },
            "terai" => Self::Terai { n: p[0] },
            "hanano" => Self::Hanano { n: p[0] },
            "cyclic-boundary" => Self::CyclicBoundary { n: p[0], f: p[1] },
            "cyclic-dual" => Self::CyclicDual { d: p[0], q: p[1] },
            "bruns-hibi" => Self::BrunsHibi { n: p[0] },
            "bruns-hibi-dual" => Self::BrunsHibiDual { n: p[0] },
            "rp2" => Self::RP2,
            _ => Self::Moebius,
        })
    }

    pub fn generate(&self) -> Result<SimplicialComplex> {
        match *self {
            Self::Skeleton { n, d } => skeleton_complex(n, d),
            Self::MaxEmbDimCM { c, d } => max_embdim_cm(c, d),
            Self::DisjointUnionQ2 { c, d, h } => disjoint_union_q2(c, d, h),
            Self::HibiCycle { d } => hibi_cycle(d),
            Self::Terai { n } => terai_complex(n),
            Self::Hanano { n } => hanano(n),
            Self::CyclicBoundary { n, f } => cyclic_boundary(n, f),
            Self::CyclicDual { d, q } => cyclic_dual(d, q),
            Self::BrunsHibi { n } => bruns_hibi(n),
            Self::BrunsHibiDual { n } => bruns_hibi_dual(n),
            Self::RP2 => Ok(rp2()),
            Self::Moebius => Ok(moebius()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Skeleton { n, d } => write!(f, "skeleton({n}, {d})"),
            Self::MaxEmbDimCM { c, d } => write!(f, "max-embdim-cm({c}, {d})"),
            Self::DisjointUnionQ2 { c, d, h } => write!(f, "disjoint-union-q2({c}, {d}, {h})"),
            Self::HibiCycle { d } => write!(f, "hibi-cycle({d})"),
            Self::Terai { n } => write!(f, "terai({n})"),
            Self::Hanano { n } => write!(f, "hanano({n})"),
            Self::CyclicBoundary { n, f: g } => write!(f, "cyclic-boundary({n}, {g})"),
            Self::CyclicDual { d, q } => write!(f, "cyclic-dual({d}, {q})"),
            Self::BrunsHibi { n } => write!(f, "bruns-hibi({n})"),
            Self::BrunsHibiDual { n } => write!(f, "bruns-hibi-dual({n})"),
            Self::RP2 => write!(f, "rp2"),
            Self::Moebius => write!(f, "moebius"),
        }
    }
}
