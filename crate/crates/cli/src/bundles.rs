//! Named verification bundles: executable assertions over the bundled
//! corpus and the generated families.

use clap::ValueEnum;
use reisner::combinat::binom;
use reisner::corpus::{corpus, Named};
use reisner::cover::{
    cm_cover, is_cm_cover, realize, sandwich_family, verify_witness, RealizationStatus,
};
use reisner::families::{hanano, hibi_cycle, moebius, rp2, terai_complex};
use reisner::hochster::{betti_table, is_q_linear};
use reisner::props::{
    check_thm45_equivalence, h_bound_floor, has_maximal_homology, hibi_criterion, is_buchsbaum,
    is_cohen_macaulay, is_min_mult_type_q, predicted_h_vector,
};
use reisner::sc::to_sc;
use reisner::{reduced_homology, FieldSpec, Result, SimplicialComplex};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bundle {
    /// h-vector formula and upper bound on h for linear Buchsbaum complexes.
    #[value(name = "thm2.6", alias = "h-vector-bound")]
    Thm26,
    /// The seven minimal-multiplicity conditions agree on every complex.
    #[value(name = "thm4.5", alias = "min-mult-equivalence")]
    Thm45,
    /// Complexes between a linear Buchsbaum complex and its cover.
    #[value(name = "thm5.6", alias = "sandwich")]
    Thm56,
    /// Realization of every admissible h for d = q = 3 and c = 1..4.
    #[value(name = "thm5.8", alias = "realize-d3")]
    Thm58,
    /// The projective plane and the Möbius band over the chosen field.
    #[value(name = "ex5.7", alias = "rp2-moebius")]
    Ex57,
    /// Multiplicity classification of 3-dimensional indeg-3 complexes.
    #[value(name = "lemma4.11", alias = "d3-multiplicity")]
    Lemma411,
    /// Alternating Betti sum against the h-polynomial.
    #[value(name = "rmk2.9", alias = "betti-h-identity")]
    Rmk29,
    /// Every bundle above.
    All,
}

impl Bundle {
    const EACH: [Bundle; 7] = [
        Bundle::Thm26,
        Bundle::Thm45,
        Bundle::Thm56,
        Bundle::Thm58,
        Bundle::Ex57,
        Bundle::Lemma411,
        Bundle::Rmk29,
    ];

    pub fn expand(self) -> Vec<Bundle> {
        match self {
            Bundle::All => Self::EACH.to_vec(),
            b => vec![b],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Bundle::Thm26 => "thm2.6",
            Bundle::Thm45 => "thm4.5",
            Bundle::Thm56 => "thm5.6",
            Bundle::Thm58 => "thm5.8",
            Bundle::Ex57 => "ex5.7",
            Bundle::Lemma411 => "lemma4.11",
            Bundle::Rmk29 => "rmk2.9",
            Bundle::All => "all",
        }
    }

    pub fn run(self, field: FieldSpec, seed: u64) -> BundleReport {
        let mut run = Run::new(self.name(), field);
        match self {
            Bundle::Thm26 => thm2_6(&mut run),
            Bundle::Thm45 => thm4_5(&mut run),
            Bundle::Thm56 => thm5_6(&mut run, seed),
            Bundle::Thm58 => thm5_8(&mut run, seed),
            Bundle::Ex57 => ex5_7(&mut run, seed),
            Bundle::Lemma411 => lemma4_11(&mut run),
            Bundle::Rmk29 => rmk2_9(&mut run),
            Bundle::All => unreachable!("expanded before running"),
        }
        run.report
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub check: String,
    pub complex: String,
    pub detail: String,
    /// The offending complex in `.sc` form.
    pub sc: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BundleReport {
    pub bundle: &'static str,
    pub field: FieldSpec,
    pub checks: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

struct Run {
    report: BundleReport,
}

impl Run {
    fn new(bundle: &'static str, field: FieldSpec) -> Self {
        Run {
            report: BundleReport {
                bundle,
                field,
                checks: 0,
                passed: true,
                failures: Vec::new(),
            },
        }
    }

    fn field(&self) -> FieldSpec {
        self.report.field
    }

    fn fail(&mut self, check: &str, name: &str, cx: Option<&SimplicialComplex>, detail: String) {
        self.report.passed = false;
        self.report.failures.push(Failure {
            check: check.into(),
            complex: name.into(),
            detail,
            sc: cx.map(to_sc),
        });
    }

    /// Records one assertion; `detail` is only rendered on failure.
    fn check(
        &mut self,
        check: &str,
        name: &str,
        cx: Option<&SimplicialComplex>,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.report.checks += 1;
        if !ok {
            self.fail(check, name, cx, detail());
        }
    }

    /// Like [`Run::check`], with library errors counted as failures.
    fn check_result(
        &mut self,
        check: &str,
        name: &str,
        cx: Option<&SimplicialComplex>,
        outcome: Result<bool>,
        detail: impl FnOnce() -> String,
    ) {
        match outcome {
            Ok(ok) => self.check(check, name, cx, ok, detail),
            Err(e) => {
                self.report.checks += 1;
                self.fail(check, name, cx, format!("{}: {e}", e.code()));
            }
        }
    }

    /// Unwraps a library result, recording a failure on error.
    fn attempt<T>(
        &mut self,
        check: &str,
        name: &str,
        cx: Option<&SimplicialComplex>,
        r: Result<T>,
    ) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.report.checks += 1;
                self.fail(check, name, cx, format!("{}: {e}", e.code()));
                None
            }
        }
    }
}

/// `Some(q)` when the complex is Buchsbaum with `c ≥ 1` and `2 ≤ q ≤ d`.
fn buchsbaum_in_range(cx: &SimplicialComplex, field: FieldSpec) -> Option<usize> {
    let q = cx.indeg().finite()?;
    let ok = cx.codim() >= 1 && (2..=cx.krull_dim()).contains(&q) && is_buchsbaum(cx, field);
    ok.then_some(q)
}

fn is_linear(cx: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    Ok(is_q_linear(cx, field)?.0)
}

fn thm2_6(run: &mut Run) {
    let f = run.field();
    for Named { name, complex: cx } in corpus() {
        let Some(q) = buchsbaum_in_range(&cx, f) else {
            continue;
        };
        let Some(true) = run.attempt("linearity", &name, Some(&cx), is_linear(&cx, f)) else {
            continue;
        };
        let (c, d) = (cx.codim(), cx.krull_dim());
        let h = reduced_homology(&cx, f).get(q as isize - 2);
        let hvec = cx.h_vector();
        run.check_result(
            "h-vector formula",
            &name,
            Some(&cx),
            predicted_h_vector(c, d, q, h).map(|p| p == hvec),
            || {
                format!(
                    "h-vector {:?} differs from the prediction for h = {h}",
                    hvec.0
                )
            },
        );
        let floor = run.attempt("bound", &name, Some(&cx), h_bound_floor(c, d, q));
        if let Some(floor) = floor {
            run.check("upper bound on h", &name, Some(&cx), h <= floor, || {
                format!("h = {h} exceeds the bound {floor}")
            });
        }
    }
}

fn thm4_5(run: &mut Run) {
    let f = run.field();
    for Named { name, complex: cx } in corpus() {
        if buchsbaum_in_range(&cx, f).is_none() || cx.codim() < 2 {
            continue;
        }
        let result = check_thm45_equivalence(&cx, f);
        if let Some(check) = run.attempt("seven conditions", &name, Some(&cx), result) {
            run.check(
                "seven conditions",
                &name,
                Some(&cx),
                check.consistent(),
                || format!("condition values {:?}", check.values()),
            );
        }
    }
}

fn sandwich_bases() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("hibi-cycle(3)", hibi_cycle(3).expect("valid parameter")),
        ("moebius", moebius()),
        ("hanano(6)", hanano(6).expect("valid parameter")),
        ("hanano(7)", hanano(7).expect("valid parameter")),
        ("terai(6)", terai_complex(6).expect("valid parameter")),
    ]
}

fn thm5_6(run: &mut Run, seed: u64) {
    let f = run.field();
    for (name, base) in sandwich_bases() {
        let Some(cover) = run.attempt("cover", name, Some(&base), cm_cover(&base, f, seed)) else {
            continue;
        };
        let d = base.krull_dim();
        let h0 = reduced_homology(&base, f).get(d as isize - 2);
        let e0 = base.multiplicity();
        for j in 0..=h0 {
            let label = format!("{name} plus {j} cover facet(s)");
            let target = (e0 + j) as usize;
            let r = sandwich_family(&base, &cover.cover, target, f, seed.wrapping_add(j));
            let Some(mid) = run.attempt("sandwich", &label, Some(&base), r) else {
                continue;
            };
            run.check(
                "buchsbaum",
                &label,
                Some(&mid),
                is_buchsbaum(&mid, f),
                || "not Buchsbaum".into(),
            );
            run.check_result("linear", &label, Some(&mid), is_linear(&mid, f), || {
                format!("not {d}-linear")
            });
            let h = reduced_homology(&mid, f).get(d as isize - 2);
            run.check(
                "h drops by one per facet",
                &label,
                Some(&mid),
                h == h0 - j,
                || format!("h = {h}, expected {}", h0 - j),
            );
        }
    }
}

fn thm5_8(run: &mut Run, seed: u64) {
    let f = run.field();
    for c in 1..=4 {
        let Some(floor) = run.attempt("bound", &format!("c = {c}"), None, h_bound_floor(c, 3, 3))
        else {
            continue;
        };
        for h in 0..=floor as usize + 1 {
            let label = format!("(c, d, q, h) = ({c}, 3, 3, {h})");
            let Some(out) = run.attempt("realize", &label, None, realize(c, 3, 3, h, f, seed))
            else {
                continue;
            };
            if h as u64 > floor {
                run.check(
                    "infeasible",
                    &label,
                    None,
                    out.status == RealizationStatus::InfeasibleByBound,
                    || format!("status {:?}, expected InfeasibleByBound", out.status),
                );
                continue;
            }
            match &out.witness {
                Some(w) if out.status == RealizationStatus::Realized => {
                    run.check_result(
                        "witness",
                        &label,
                        Some(w),
                        verify_witness(w, out.params, f),
                        || "witness does not verify".into(),
                    );
                }
                _ => run.check("realized", &label, None, false, || {
                    format!("status {:?} via {:?}", out.status, out.method)
                }),
            }
        }
    }
}

fn ex5_7(run: &mut Run, seed: u64) {
    let f = run.field();
    let (p, m) = (rp2(), moebius());
    let rp2_reg = betti_table(&p, f).map(|t| t.regularity());
    if f.characteristic() == 2 {
        run.check(
            "rp2 buchsbaum",
            "rp2",
            Some(&p),
            is_buchsbaum(&p, f),
            || "not Buchsbaum".into(),
        );
        run.check(
            "rp2 not cohen-macaulay",
            "rp2",
            Some(&p),
            !is_cohen_macaulay(&p, f),
            || "Cohen-Macaulay in characteristic 2".into(),
        );
        run.check_result(
            "rp2 regularity 3",
            "rp2",
            Some(&p),
            rp2_reg.map(|r| r == 3),
            || "regularity is not 3".into(),
        );
        run.check_result(
            "rp2 hibi criterion",
            "rp2",
            Some(&p),
            hibi_criterion(&p, f).map(|b| !b),
            || "criterion holds".into(),
        );
        run.check_result(
            "rp2 rejected as cover",
            "rp2",
            Some(&p),
            is_cm_cover(&m, &p, f).map(|b| !b),
            || "accepted as a Cohen-Macaulay cover of the Möbius band".into(),
        );
    } else {
        run.check(
            "rp2 cohen-macaulay",
            "rp2",
            Some(&p),
            is_cohen_macaulay(&p, f),
            || "not Cohen-Macaulay".into(),
        );
        run.check_result("rp2 linear", "rp2", Some(&p), is_linear(&p, f), || {
            "not 3-linear".into()
        });
        run.check_result(
            "rp2 regularity 2",
            "rp2",
            Some(&p),
            rp2_reg.map(|r| r == 2),
            || "regularity is not 2".into(),
        );
        run.check_result(
            "rp2 accepted as cover",
            "rp2",
            Some(&p),
            is_cm_cover(&m, &p, f),
            || "rejected as a Cohen-Macaulay cover of the Möbius band".into(),
        );
    }
    run.check(
        "moebius buchsbaum",
        "moebius",
        Some(&m),
        is_buchsbaum(&m, f),
        || "not Buchsbaum".into(),
    );
    run.check_result(
        "moebius linear",
        "moebius",
        Some(&m),
        is_linear(&m, f),
        || "not 3-linear".into(),
    );
    let h = reduced_homology(&m, f).get(1);
    run.check("moebius h = 1", "moebius", Some(&m), h == 1, || {
        format!("h = {h}")
    });
    let hvec = m.h_vector();
    run.check(
        "moebius h-vector",
        "moebius",
        Some(&m),
        hvec.0 == [1, 3, 6, -1],
        || format!("h-vector {:?}", hvec.0),
    );
    if let Some(cover) = run.attempt("moebius cover", "moebius", Some(&m), cm_cover(&m, f, seed)) {
        run.check(
            "moebius cover adds one facet",
            "moebius",
            Some(&cover.cover),
            cover.added_facets.len() == 1,
            || format!("{} facets added", cover.added_facets.len()),
        );
        run.check_result(
            "moebius cover verifies",
            "moebius",
            Some(&cover.cover),
            is_cm_cover(&m, &cover.cover, f),
            || "cover is not a Cohen-Macaulay 3-linear cover".into(),
        );
    }
}

fn lemma4_11(run: &mut Run) {
    let f = run.field();
    for Named { name, complex: cx } in corpus() {
        if cx.krull_dim() != 3 || cx.indeg().finite() != Some(3) || !is_buchsbaum(&cx, f) {
            continue;
        }
        let (n, e) = (cx.n() as u64, cx.multiplicity());
        let Some(min_mult) = run.attempt("min mult", &name, Some(&cx), is_min_mult_type_q(&cx, f))
        else {
            continue;
        };
        run.check(
            "min mult iff e = n(n-2)/3",
            &name,
            Some(&cx),
            min_mult == (3 * e == n * (n - 2)),
            || format!("n = {n}, e = {e}, min mult {min_mult}"),
        );
        let Some(max_hom) = run.attempt(
            "max homology",
            &name,
            Some(&cx),
            has_maximal_homology(&cx, f),
        ) else {
            continue;
        };
        let extremal = max_hom && !min_mult;
        run.check(
            "max homology iff e = (n-1)^2/3",
            &name,
            Some(&cx),
            extremal == (3 * e == (n - 1) * (n - 1)),
            || format!("n = {n}, e = {e}, max homology {max_hom}, min mult {min_mult}"),
        );
    }
}

fn rmk2_9(run: &mut Run) {
    let f = run.field();
    for Named { name, complex: cx } in corpus() {
        let Some(table) = run.attempt("betti", &name, Some(&cx), betti_table(&cx, f)) else {
            continue;
        };
        let (n, c) = (cx.n(), cx.codim());
        let mut rhs = vec![0i64; n + 1];
        for (k, &hk) in cx.h_vector().0.iter().enumerate() {
            for m in 0..=c {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                rhs[k + m] += sign * hk * binom(c as u64, m as u64) as i64;
            }
        }
        let lhs = table.alternating_polynomial();
        run.check("alternating identity", &name, Some(&cx), lhs == rhs, || {
            format!("betti side {lhs:?}, h-vector side {rhs:?}")
        });
    }
}
