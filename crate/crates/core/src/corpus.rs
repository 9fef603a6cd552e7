//! A fixed collection of small named complexes used by the verification
//! bundles and the test suites.

use crate::complex::SimplicialComplex;
use crate::cover::{cm_cover, cm_linear_example};
use crate::families::*;
use crate::linalg::FieldSpec;
use crate::vset::VertexSet;

#[derive(Debug, Clone)]
pub struct Named {
    pub name: String,
    pub complex: SimplicialComplex,
}

fn named(name: impl Into<String>, complex: SimplicialComplex) -> Named {
    Named {
        name: name.into(),
        complex,
    }
}

fn drop_first_facet(cx: &SimplicialComplex) -> SimplicialComplex {
    let first: VertexSet = cx.facets()[0];
    cx.without_facets(&[first])
}

/// Every generated family at desk-scale parameters (at most 9 vertices).
pub fn families() -> Vec<Named> {
    let mut out = Vec::new();
    for d in 3..=5 {
        out.push(named(format!("hibi-cycle({d})"), hibi_cycle(d).unwrap()));
    }
    for n in 5..=9 {
        out.push(named(format!("hanano({n})"), hanano(n).unwrap()));
    }
    for n in [5, 6, 8, 9] {
        out.push(named(format!("terai({n})"), terai_complex(n).unwrap()));
    }
    out.push(named("rp2", rp2()));
    out.push(named("moebius", moebius()));
    for (d, q) in [(3, 2), (3, 3), (4, 3), (4, 4), (5, 4)] {
        out.push(named(
            format!("cyclic-dual({d}, {q})"),
            cyclic_dual(d, q).unwrap(),
        ));
        let (n, f) = (2 * d - q + 2, 2 * (d - q + 1));
        out.push(named(
            format!("cyclic-boundary({n}, {f})"),
            cyclic_boundary(n, f).unwrap(),
        ));
    }
    out.push(named("bruns-hibi(6)", bruns_hibi(6).unwrap()));
    out.push(named("bruns-hibi-dual(6)", bruns_hibi_dual(6).unwrap()));
    out.push(named("bruns-hibi-dual(8)", bruns_hibi_dual(8).unwrap()));
    out.push(named("skeleton(5, 3)", skeleton_complex(5, 3).unwrap()));
    out.push(named("skeleton(6, 2)", skeleton_complex(6, 2).unwrap()));
    out.push(named("max-embdim-cm(2, 2)", max_embdim_cm(2, 2).unwrap()));
    out.push(named("max-embdim-cm(3, 3)", max_embdim_cm(3, 3).unwrap()));
    out.push(named(
        "disjoint-union-q2(3, 3, 1)",
        disjoint_union_q2(3, 3, 1).unwrap(),
    ));
    out.push(named(
        "disjoint-union-q2(6, 3, 2)",
        disjoint_union_q2(6, 3, 2).unwrap(),
    ));
    out.push(named(
        "cm-linear(2, 3, 3)",
        cm_linear_example(2, 3, 3).unwrap(),
    ));
    out.push(named(
        "cm-linear(3, 4, 3)",
        cm_linear_example(3, 4, 3).unwrap(),
    ));
    out
}

/// Complexes obtained by removing or adding facets to family members, so
/// that minimal multiplicity, linearity or purity break.
pub fn perturbations() -> Vec<Named> {
    let q = FieldSpec::Rationals;
    let mut out = Vec::new();
    for d in 3..=4 {
        out.push(named(
            format!("hibi-cycle({d}) minus a facet"),
            drop_first_facet(&hibi_cycle(d).unwrap()),
        ));
    }
    out.push(named(
        "hanano(6) minus a facet",
        drop_first_facet(&hanano(6).unwrap()),
    ));
    out.push(named(
        "terai(6) minus a facet",
        drop_first_facet(&terai_complex(6).unwrap()),
    ));
    for (name, base) in [
        ("hibi-cycle(3)", hibi_cycle(3).unwrap()),
        ("hanano(6)", hanano(6).unwrap()),
        ("hanano(7)", hanano(7).unwrap()),
        ("moebius", moebius()),
    ] {
        let cover = cm_cover(&base, q, 0).expect("cover exists over the rationals");
        out.push(named(format!("cover of {name}"), cover.cover.clone()));
        if let Some(first) = cover.added_facets.first() {
            let one = VertexSet::from_slice(first);
            if cover.added_facets.len() > 1 {
                out.push(named(
                    format!("{name} plus one cover facet"),
                    base.with_faces(&[one]).unwrap(),
                ));
            }
        }
    }
    out.push(named(
        "triangle and edge",
        SimplicialComplex::from_facets(5, [vec![0, 1, 2], vec![3, 4]]).unwrap(),
    ));
    out.push(named(
        "two triangles sharing a vertex",
        SimplicialComplex::from_facets(5, [[0, 1, 2], [2, 3, 4]]).unwrap(),
    ));
    out
}

/// [`families`] followed by [`perturbations`].
pub fn corpus() -> Vec<Named> {
    let mut all = families();
    all.extend(perturbations());
    all
}
