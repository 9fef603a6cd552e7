//! Acceptance criteria 1-12. Each criterion runs in isolation and prints one
//! PASS/FAIL line; the test fails if any criterion fails.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use reisner::combinat::{binom, floor_rat, rat};
use reisner::corpus::{corpus, Named};
use reisner::cover::{cm_cover, realize, RealizationStatus};
use reisner::families::*;
use reisner::hochster::{
    a_invariant, betti_table, depth, dual_betti_via_links, hoa_miyazaki_check,
};
use reisner::homology::boundary_matrix;
use reisner::props::*;
use reisner::{reduced_homology, FieldSpec, Indeg, SimplicialComplex};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rationals() -> FieldSpec {
    FieldSpec::Rationals
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn regularity(cx: &SimplicialComplex, f: FieldSpec) -> i64 {
    betti_table(cx, f).unwrap().regularity()
}

fn is_linear(cx: &SimplicialComplex, f: FieldSpec) -> Option<usize> {
    let q = cx.indeg().finite()?;
    (regularity(cx, f) == q as i64 - 1).then_some(q)
}

fn h_of(cx: &SimplicialComplex, f: FieldSpec, q: usize) -> u64 {
    reduced_homology(cx, f).get(q as isize - 2)
}

fn c1_hibi_family() -> Outcome {
    for d in 3..=5 {
        let cx = hibi_cycle(d).unwrap();
        for f in [rationals(), gf(2), gf(3)] {
            ensure!(
                is_buchsbaum(&cx, f),
                "hibi-cycle({d}) not Buchsbaum over {f}"
            );
            ensure!(
                is_linear(&cx, f) == Some(3),
                "hibi-cycle({d}) not 3-linear over {f}"
            );
            ensure!(
                cx.multiplicity() == 2 * d as u64 - 1,
                "hibi-cycle({d}): e = {}",
                cx.multiplicity()
            );
            ensure!(
                is_min_mult_type_q(&cx, f).unwrap(),
                "hibi-cycle({d}) not min-mult over {f}"
            );
            ensure!(
                h_of(&cx, f, 3) == 1,
                "hibi-cycle({d}): h = {}",
                h_of(&cx, f, 3)
            );
        }
    }
    Ok(())
}

fn c2_hanano_family() -> Outcome {
    for n in 5..=9i64 {
        let cx = hanano(n as usize).unwrap();
        let last = if n % 3 == 1 {
            -(n - 1) * (n - 4) / 6
        } else {
            -(n - 2) * (n - 3) / 6
        };
        let expected = vec![1, n - 3, (n - 2) * (n - 3) / 2, last];
        ensure!(
            cx.h_vector().0 == expected,
            "hanano({n}): h = {:?}, expected {expected:?}",
            cx.h_vector().0
        );
        let e = cx.multiplicity() as i64;
        for f in [rationals(), gf(2)] {
            let mm = is_min_mult_type_q(&cx, f).unwrap();
            let mh = has_maximal_homology(&cx, f).unwrap();
            if n % 3 == 1 {
                ensure!(3 * e == (n - 1) * (n - 1), "hanano({n}): e = {e}");
                ensure!(
                    mh && !mm,
                    "hanano({n}) over {f}: max homology {mh}, min mult {mm}"
                );
            } else {
                ensure!(3 * e == n * (n - 2), "hanano({n}): e = {e}");
                ensure!(mm, "hanano({n}) over {f}: not min mult");
            }
        }
    }
    Ok(())
}

fn c3_terai_family() -> Outcome {
    for n in [5u64, 6, 8, 9] {
        let cx = terai_complex(n as usize).unwrap();
        ensure!(
            3 * cx.multiplicity() == n * (n - 2),
            "terai({n}): e = {}",
            cx.multiplicity()
        );
        for f in [rationals(), gf(2)] {
            ensure!(
                is_min_mult_type_q(&cx, f).unwrap(),
                "terai({n}) not min mult over {f}"
            );
        }
    }
    Ok(())
}

fn c4_projective_plane() -> Outcome {
    let p = rp2();
    for f in [rationals(), gf(3)] {
        ensure!(is_cohen_macaulay(&p, f), "rp2 not CM over {f}");
        ensure!(is_linear(&p, f) == Some(3), "rp2 not 3-linear over {f}");
        ensure!(regularity(&p, f) == 2, "rp2 reg over {f}");
    }
    let f = gf(2);
    ensure!(is_buchsbaum(&p, f), "rp2 not Buchsbaum over GF(2)");
    ensure!(!is_cohen_macaulay(&p, f), "rp2 CM over GF(2)");
    ensure!(
        regularity(&p, f) == 3,
        "rp2 reg over GF(2) = {}",
        regularity(&p, f)
    );
    ensure!(
        !hibi_criterion(&p, f).unwrap(),
        "hibi criterion holds for rp2 over GF(2)"
    );
    let m = moebius();
    for f in [rationals(), gf(2)] {
        ensure!(is_buchsbaum(&m, f), "moebius not Buchsbaum over {f}");
        ensure!(is_linear(&m, f) == Some(3), "moebius not 3-linear over {f}");
        ensure!(h_of(&m, f, 3) == 1, "moebius h over {f}");
    }
    ensure!(
        m.h_vector().0 == vec![1, 3, 6, -1],
        "moebius h-vector {:?}",
        m.h_vector().0
    );
    Ok(())
}

fn c5_cyclic_duals() -> Outcome {
    let f = rationals();
    for (d, q) in [(3, 2), (3, 3), (4, 3), (4, 4), (5, 4)] {
        let cx = cyclic_dual(d, q).unwrap();
        ensure!(
            cx.krull_dim() == d,
            "cyclic-dual({d},{q}): dim {}",
            cx.krull_dim()
        );
        ensure!(is_buchsbaum(&cx, f), "cyclic-dual({d},{q}) not Buchsbaum");
        ensure!(
            is_linear(&cx, f) == Some(q),
            "cyclic-dual({d},{q}) not {q}-linear"
        );
        ensure!(
            h_of(&cx, f, q) == 1,
            "cyclic-dual({d},{q}): h = {}",
            h_of(&cx, f, q)
        );
        ensure!(
            is_min_mult_type_q(&cx, f).unwrap(),
            "cyclic-dual({d},{q}) not min mult"
        );
        let (n, fd) = (2 * d - q + 2, 2 * (d - q + 1));
        let b = cyclic_boundary(n, fd).unwrap();
        ensure!(
            a_invariant(&b, f) == Some(0),
            "boundary({n},{fd}): a = {:?}",
            a_invariant(&b, f)
        );
        ensure!(
            b.indeg() == Indeg::Finite(fd / 2 + 1),
            "boundary({n},{fd}): indeg {}",
            b.indeg()
        );
    }
    Ok(())
}

fn thm45_applicable(cx: &SimplicialComplex, f: FieldSpec) -> bool {
    let q = cx.indeg().finite();
    is_buchsbaum(cx, f) && cx.codim() >= 2 && q.is_some_and(|q| (2..=cx.krull_dim()).contains(&q))
}

fn c6_seven_way_equivalence() -> Outcome {
    for f in [rationals(), gf(2)] {
        let mut evaluated = 0;
        let mut negatives = 0;
        for Named { name, complex } in corpus() {
            if !thm45_applicable(&complex, f) {
                continue;
            }
            let check = check_thm45_equivalence(&complex, f).unwrap();
            ensure!(
                check.consistent(),
                "{name} over {f}: inconsistent {:?}",
                check.values()
            );
            evaluated += 1;
            if !check.multiplicity {
                negatives += 1;
            }
        }
        ensure!(
            evaluated >= 12,
            "only {evaluated} applicable complexes over {f}"
        );
        ensure!(
            negatives >= 1,
            "no instance breaks minimal multiplicity over {f}"
        );
    }
    Ok(())
}

fn buchsbaum_linear(cx: &SimplicialComplex, f: FieldSpec) -> Option<usize> {
    if !is_buchsbaum(cx, f) {
        return None;
    }
    is_linear(cx, f)
}

fn c7_h_vector_formula() -> Outcome {
    let mut seen = 0;
    for f in [rationals(), gf(2)] {
        for Named { name, complex } in corpus() {
            let (c, d) = (complex.codim(), complex.krull_dim());
            let Some(q) = buchsbaum_linear(&complex, f) else {
                continue;
            };
            if c < 1 || q > d {
                continue;
            }
            let h = h_of(&complex, f, q);
            let predicted = predicted_h_vector(c, d, q, h).unwrap();
            ensure!(
                predicted == complex.h_vector(),
                "{name} over {f}: {:?} vs {:?}",
                complex.h_vector().0,
                predicted.0
            );
            let bound = h_bound(c, d, q).unwrap();
            ensure!(
                rat(h as i128) <= bound,
                "{name} over {f}: h = {h} above the bound"
            );
            seen += 1;
        }
    }
    ensure!(seen >= 20, "only {seen} instances checked");
    Ok(())
}

fn c8_multiplicity_identities() -> Outcome {
    let mut strict = 0;
    for f in [rationals(), gf(2)] {
        for Named { name, complex } in corpus() {
            let (c, d, e) = (
                complex.codim(),
                complex.krull_dim(),
                complex.multiplicity() as i128,
            );
            let Some(indeg) = complex.indeg().finite() else {
                continue;
            };
            if !is_buchsbaum(&complex, f) || c < 1 || d < 2 || indeg < 2 {
                continue;
            }
            let linear = is_linear(&complex, f).is_some();
            if linear && indeg <= d {
                let h = h_of(&complex, f, indeg) as i128;
                let formula = binom((c + indeg - 1) as u64, indeg as u64 - 1) as i128
                    - h * binom(d as u64 - 1, indeg as u64 - 1) as i128;
                ensure!(e == formula, "{name} over {f}: e = {e}, formula {formula}");
            }
            let i_inv = i_invariant(&complex, f).unwrap() as i128;
            for q in 2..=indeg {
                let lower = binom((c + q - 1) as u64, q as u64 - 1) as i128 - i_inv;
                ensure!(e >= lower, "{name} over {f}, q = {q}: e = {e} < {lower}");
                let q_linear = linear && q == indeg;
                ensure!(
                    (e == lower) == q_linear,
                    "{name} over {f}, q = {q}: equality {} but q-linear {q_linear}",
                    e == lower
                );
                if e > lower && q == indeg {
                    strict += 1;
                }
            }
        }
    }
    ensure!(strict >= 1, "no non-linear Buchsbaum instance at q = indeg");
    let p = rp2();
    let f = gf(2);
    let lower = binom(5, 2) as i128 - i_invariant(&p, f).unwrap() as i128;
    ensure!(
        (p.multiplicity() as i128) > lower,
        "rp2 over GF(2) reaches the bound"
    );
    Ok(())
}

fn c9_cm_covers() -> Outcome {
    let f = rationals();
    for (name, cx) in [
        ("hibi-cycle(3)", hibi_cycle(3).unwrap()),
        ("moebius", moebius()),
        ("hanano(6)", hanano(6).unwrap()),
        ("hanano(7)", hanano(7).unwrap()),
    ] {
        let (n, d) = (cx.n() as u64, cx.krull_dim());
        let h = h_of(&cx, f, d);
        let r = cm_cover(&cx, f, 0).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            r.added_facets.len() as u64 == h,
            "{name}: {} facets added, h = {h}",
            r.added_facets.len()
        );
        ensure!(
            cx.is_subcomplex_of(&r.cover),
            "{name}: cover does not contain input"
        );
        ensure!(is_cohen_macaulay(&r.cover, f), "{name}: cover not CM");
        ensure!(
            is_linear(&r.cover, f) == Some(d),
            "{name}: cover not {d}-linear"
        );
        ensure!(
            r.cover.multiplicity() as u128 == binom(n - 1, d as u64 - 1),
            "{name}: cover e = {}",
            r.cover.multiplicity()
        );
    }
    let g2 = gf(2);
    let r = cm_cover(&moebius(), g2, 0).map_err(|e| format!("moebius over GF(2): {e}"))?;
    ensure!(
        is_cohen_macaulay(&r.cover, g2),
        "moebius cover over GF(2) not CM"
    );
    ensure!(
        is_linear(&r.cover, g2) == Some(3),
        "moebius cover over GF(2) not 3-linear"
    );
    ensure!(
        r.cover.multiplicity() == 10,
        "moebius cover over GF(2): e = {}",
        r.cover.multiplicity()
    );
    ensure!(
        !is_cohen_macaulay(&rp2(), g2),
        "rp2 passes the CM verifier over GF(2)"
    );
    Ok(())
}

fn c10_realization() -> Outcome {
    let f = rationals();
    for c in 1..=4usize {
        let top = floor_rat(&h_bound(c, 3, 3).unwrap());
        let top: usize = top.try_into().unwrap();
        ensure!(top == c * (c + 1) / 6, "c = {c}: floor bound {top}");
        for h in 0..=top {
            let r = realize(c, 3, 3, h, f, 0).map_err(|e| format!("(c, h) = ({c}, {h}): {e}"))?;
            ensure!(
                r.status == RealizationStatus::Realized,
                "(c, h) = ({c}, {h}): {:?}",
                r.status
            );
            let w = r.witness.unwrap();
            ensure!(
                w.krull_dim() == 3 && w.codim() == c,
                "(c, h) = ({c}, {h}): shape ({}, {})",
                w.krull_dim(),
                w.codim()
            );
            ensure!(is_buchsbaum(&w, f), "(c, h) = ({c}, {h}): not Buchsbaum");
            ensure!(
                is_linear(&w, f) == Some(3),
                "(c, h) = ({c}, {h}): not 3-linear"
            );
            ensure!(
                h_of(&w, f, 3) == h as u64,
                "(c, h) = ({c}, {h}): witness h = {}",
                h_of(&w, f, 3)
            );
        }
        let r = realize(c, 3, 3, top + 1, f, 0).unwrap();
        ensure!(
            r.status == RealizationStatus::InfeasibleByBound,
            "(c, h) = ({c}, {}): {:?}",
            top + 1,
            r.status
        );
    }
    Ok(())
}

fn c11_property_suites() -> Outcome {
    for f in [rationals(), gf(2)] {
        for Named { name, complex: cx } in corpus() {
            let (n, c) = (cx.n(), cx.codim());
            let table = betti_table(&cx, f).unwrap();

            let mut rhs = vec![0i64; n + 1];
            for (k, &hk) in cx.h_vector().0.iter().enumerate() {
                for m in 0..=c {
                    let sign = if m % 2 == 0 { 1 } else { -1 };
                    rhs[k + m] += sign * hk * binom(c as u64, m as u64) as i64;
                }
            }
            ensure!(
                table.alternating_polynomial() == rhs,
                "{name} over {f}: alternating identity"
            );

            for p in 0..=cx.dim() + 1 {
                let prod = boundary_matrix(&cx, p, f).mul(&boundary_matrix(&cx, p - 1, f));
                ensure!(
                    prod.is_zero(),
                    "{name} over {f}: boundary squares to nonzero at {p}"
                );
            }

            let pd = table.projective_dimension();
            ensure!(
                depth(&cx, f) == n - pd,
                "{name} over {f}: depth {} vs n - pd {}",
                depth(&cx, f),
                n - pd
            );

            if cx.facets().len() > 1 || cx.facets()[0].len() < n {
                let dual = cx.alexander_dual().unwrap();
                ensure!(
                    dual.alexander_dual().unwrap() == cx,
                    "{name}: dual is not an involution"
                );
                let q = cx.indeg().finite().unwrap();
                ensure!(
                    dual.krull_dim() + q == n,
                    "{name}: dim Δ* + indeg = {}",
                    dual.krull_dim() + q
                );
                let hd = reduced_homology(&dual, f);
                let h = reduced_homology(&cx, f);
                for i in 1..=n as isize + 1 {
                    ensure!(
                        hd.get(i - 2) == h.get(n as isize - i - 1),
                        "{name} over {f}: duality fails at i = {i}"
                    );
                }
                let lhs = table.regularity() - q as i64 + 1;
                let rhs = dual.krull_dim() as i64 - depth(&dual, f) as i64;
                ensure!(
                    lhs == rhs,
                    "{name} over {f}: reg - indeg + 1 = {lhs}, dim - depth of dual = {rhs}"
                );
            }

            if is_buchsbaum(&cx, f) {
                ensure!(
                    hoa_miyazaki_check(&cx, f).unwrap(),
                    "{name} over {f}: Hoa-Miyazaki fails"
                );
                if let Some(q) = is_linear(&cx, f) {
                    let a = a_invariant(&cx, f).unwrap();
                    let base = q as i64 - cx.krull_dim() as i64;
                    ensure!(
                        a == base - 2 || a == base - 1,
                        "{name} over {f}: a = {a}, q - d = {base}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn c12_dual_betti_oracle() -> Outcome {
    let mut checked = 0;
    for f in [rationals(), gf(2)] {
        for Named { name, complex: cx } in corpus() {
            let Ok(dual) = cx.alexander_dual() else {
                continue;
            };
            let direct = betti_table(&dual, f).unwrap();
            let via_links = dual_betti_via_links(&cx, f);
            ensure!(
                direct == via_links,
                "{name} over {f}: dual Betti tables differ"
            );
            checked += 1;
        }
    }
    ensure!(checked >= 40, "only {checked} dualizable instances");
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("Hibi cycles are min-mult type 3 with h = 1", c1_hibi_family),
        (
            "Hanano h-vectors, multiplicities and classification",
            c2_hanano_family,
        ),
        ("Terai complexes are min-mult type 3", c3_terai_family),
        (
            "RP2 characteristic split and the Moebius band",
            c4_projective_plane,
        ),
        ("Alexander duals of cyclic polytopes", c5_cyclic_duals),
        (
            "seven-way equivalence is consistent on the corpus",
            c6_seven_way_equivalence,
        ),
        ("h-vector formula and upper bound on h", c7_h_vector_formula),
        (
            "multiplicity formula and the I-invariant inequality",
            c8_multiplicity_identities,
        ),
        ("Cohen-Macaulay covers", c9_cm_covers),
        ("realization for d = q = 3", c10_realization),
        ("property suites over Q and GF(2)", c11_property_suites),
        (
            "dual Betti numbers computed two ways",
            c12_dual_betti_oracle,
        ),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (k, (title, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => writeln!(out, "criterion {:>2}: PASS  {title}", k + 1).unwrap(),
            Err(why) => {
                writeln!(out, "criterion {:>2}: FAIL  {title}: {why}", k + 1).unwrap();
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn bound_floor_matches_integer_arithmetic() {
    for c in 1..=12usize {
        let floor = floor_rat(&h_bound(c, 3, 3).unwrap());
        assert_eq!(floor, BigInt::from(c * (c + 1) / 6));
    }
}
