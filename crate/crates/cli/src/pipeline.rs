use std::time::Instant;

use hodge_matroid::chow::{default_submodular, ChowRing};
use hodge_matroid::corpus::CorpusEntry;
use hodge_matroid::fan::{
    ample_check, bergman_fan_filtered, is_pure, is_unimodular, reduced_bergman_fan, validate_fan,
    PlFunction,
};
use hodge_matroid::lattice::{
    char_poly, f_vector_polynomial, is_log_concave, is_positive, mason_min_ratio,
    matching_flag_interpretations, mu_vector, reduced_char_poly, whitney_first, CharPolyAlgorithm,
};
use hodge_matroid::linalg::{rat, Rational};
use hodge_matroid::moebius_algebra::{topheavy_check, topheavy_sweep, TopHeavyReport};
use hodge_matroid::oracle::{component_count, proper_colorings, torus_point_count};
use hodge_matroid::{Error, Exec, Filter, Matroid, Subset};
use serde_json::{json, Value};

use crate::report::{CheckResult, Verdict};

/// Largest `r = rk(M) - 1` the Hodge pipeline attempts.
pub const HODGE_MAX_DEGREE: usize = 4;

#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub exec: Exec,
    pub timings: bool,
}

impl Ctx {
    fn run(&self, out: &mut Vec<CheckResult>, f: impl FnOnce() -> CheckResult) {
        let start = Instant::now();
        let c = f();
        out.push(c.timed(start.elapsed(), self.timings));
    }
}

fn failed(name: &str, e: &Error) -> CheckResult {
    CheckResult::new(
        name,
        Verdict::Fail,
        e.to_string(),
        json!({ "error": e.to_string() }),
    )
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report values serialize")
}

fn poly_value(p: &hodge_matroid::IntPolynomial) -> Value {
    json!(p.coeffs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FanCheck {
    Valid,
    Unimodular,
    Pure,
    Ample,
}

#[derive(Debug, Clone)]
pub enum Ell {
    Default,
    /// Values `c(P)` on subsets; unlisted subsets get 0.
    Custom(Vec<(Subset, Rational)>),
}

impl Ell {
    fn value(&self, n: usize, p: Subset) -> Rational {
        match self {
            Ell::Default => default_submodular(n)(p),
            Ell::Custom(values) => values
                .iter()
                .find(|(s, _)| *s == p)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| rat(0)),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Degrees {
    All,
    One(usize),
}

pub enum TopHeavyMode {
    Pair(usize, usize),
    Sweep,
}

pub fn validate_checks(m: &Matroid, ctx: Ctx) -> Vec<CheckResult> {
    let mut out = Vec::new();
    ctx.run(&mut out, || {
        let loops = m.loops();
        CheckResult::new(
            "flat-axioms",
            Verdict::Pass,
            format!(
                "{} flats; {}",
                m.num_flats(),
                if m.is_simple() {
                    "simple".to_string()
                } else {
                    format!("loops {loops}")
                }
            ),
            json!({
                "flats_by_rank": m.whitney_second(),
                "loops": loops,
                "simple": m.is_simple(),
                "representable": m.known_representable(),
            }),
        )
    });
    out
}

/// The failing check for a file whose flat family is not a matroid.
pub fn axiom_failure(e: &Error) -> CheckResult {
    let payload = match e {
        Error::AxiomViolation { axiom, detail } => {
            json!({ "axiom": axiom.to_string(), "detail": detail })
        }
        _ => json!({ "error": e.to_string() }),
    };
    CheckResult::new("flat-axioms", Verdict::Fail, e.to_string(), payload)
}

pub fn invariant_checks(m: &Matroid, ctx: Ctx) -> Vec<CheckResult> {
    let mut out = Vec::new();
    ctx.run(&mut out, || {
        let polys: Result<Vec<_>, Error> = CharPolyAlgorithm::ALL
            .iter()
            .map(|&a| char_poly(m, a))
            .collect();
        match polys {
            Ok(p) => {
                let agree = p.windows(2).all(|w| w[0] == w[1]);
                CheckResult::new(
                    "char-poly",
                    Verdict::from_bool(agree),
                    format!("chi = {}", p[1]),
                    json!({
                        "subset_sum": poly_value(&p[0]),
                        "moebius": poly_value(&p[1]),
                        "deletion_contraction": poly_value(&p[2]),
                        "agree": agree,
                    }),
                )
            }
            Err(e) => failed("char-poly", &e),
        }
    });
    ctx.run(&mut out, || {
        if m.ground_size() == 0 {
            return CheckResult::skipped("reduced-char-poly", "empty ground set");
        }
        match reduced_char_poly(m) {
            Ok(p) => CheckResult::new(
                "reduced-char-poly",
                Verdict::Reported,
                format!("{p}"),
                poly_value(&p),
            ),
            Err(e) => failed("reduced-char-poly", &e),
        }
    });
    ctx.run(&mut out, || {
        if m.has_loops() || m.rank() == 0 {
            return CheckResult::skipped(
                "mu-log-concave",
                "needs a loopless matroid of positive rank",
            );
        }
        match mu_vector(m) {
            Ok(mu) => {
                let ok = is_positive(&mu) && is_log_concave(&mu);
                CheckResult::new(
                    "mu-log-concave",
                    Verdict::from_bool(ok),
                    format!("mu = {mu:?}"),
                    json!(mu),
                )
            }
            Err(e) => failed("mu-log-concave", &e),
        }
    });
    ctx.run(&mut out, || {
        let w = whitney_first(m);
        CheckResult::new(
            "whitney-first-log-concave",
            Verdict::from_bool(is_log_concave(&w)),
            format!("w = {w:?}"),
            json!(w),
        )
    });
    ctx.run(&mut out, || {
        let w = m.whitney_second();
        CheckResult::new(
            "whitney-second",
            Verdict::Reported,
            format!("W = {w:?}"),
            json!(w),
        )
    });
    ctx.run(&mut out, || {
        let f = match m.f_vector() {
            Ok(f) => f,
            Err(e) => return failed("f-vector-log-concave", &e),
        };
        let fi: Vec<i64> = f.iter().map(|&x| x as i64).collect();
        let brylawski = m
            .free_coextension()
            .and_then(|c| reduced_char_poly(&c))
            .map(|p| p == f_vector_polynomial(&f));
        match brylawski {
            Ok(b) => CheckResult::new(
                "f-vector-log-concave",
                Verdict::from_bool(b && is_log_concave(&fi)),
                format!("f = {f:?}"),
                json!({ "f": f, "free_coextension_identity": b }),
            ),
            Err(e) => failed("f-vector-log-concave", &e),
        }
    });
    ctx.run(&mut out, || {
        let f = m.f_vector().unwrap_or_default();
        match mason_min_ratio(&f) {
            Some(r) => CheckResult::new(
                "mason-ratio",
                Verdict::Reported,
                format!(
                    "min f_k^2/(f_(k-1) f_(k+1)) = {} at k = {} (bound {})",
                    r.ratio, r.k, r.bound
                ),
                to_value(&r),
            ),
            None => CheckResult::skipped("mason-ratio", "fewer than three nonzero terms"),
        }
    });
    ctx.run(&mut out, || {
        if !m.is_simple() || m.rank() == 0 {
            return CheckResult::skipped("flag-interpretations", "needs a geometry");
        }
        match matching_flag_interpretations(m) {
            Ok(v) => CheckResult::new(
                "flag-interpretations",
                Verdict::Reported,
                format!("{v:?}"),
                to_value(&v),
            ),
            Err(e) => failed("flag-interpretations", &e),
        }
    });
    out
}

pub fn chow_checks(m: &Matroid, filter: &Filter, mu: bool, ctx: Ctx) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if m.has_loops() || m.rank() == 0 {
        out.push(CheckResult::skipped(
            "chow-ring",
            "needs a loopless matroid of positive rank",
        ));
        return out;
    }
    let start = Instant::now();
    let ring = match ChowRing::new(m, filter) {
        Ok(r) => r,
        Err(e) => {
            out.push(failed("chow-ring", &e).timed(start.elapsed(), ctx.timings));
            return out;
        }
    };
    let ok =
        ring.dim(ring.top_degree()) == 1 && ring.vanishes_above_top() && ring.top_monomials_agree();
    let names: Vec<String> = ring.labels().iter().map(ToString::to_string).collect();
    out.push(
        CheckResult::new(
            "chow-ring",
            Verdict::from_bool(ok),
            format!("dims {:?}", ring.hilbert()),
            json!({
                "hilbert": ring.hilbert(),
                "generators": names,
                "filter": filter.flats(),
                "top_monomials": ring.top_monomial_count(),
            }),
        )
        .timed(start.elapsed(), ctx.timings),
    );
    if mu {
        ctx.run(&mut out, || {
            match (ring.mu_vector_via_chow(), mu_vector(m)) {
                (Ok(via), Ok(direct)) => {
                    let payload = json!({ "via_degrees": via, "from_char_poly": direct });
                    if filter.is_full(m) {
                        CheckResult::new(
                            "mu-via-chow",
                            Verdict::from_bool(via == direct),
                            format!("mu = {via:?}"),
                            payload,
                        )
                    } else {
                        let msg = format!("degrees {via:?} on a partial filter");
                        CheckResult::new("mu-via-chow", Verdict::Reported, msg, payload)
                    }
                }
                (Err(e), _) | (_, Err(e)) => failed("mu-via-chow", &e),
            }
        });
    }
    out
}

pub fn hodge_checks(m: &Matroid, ell: &Ell, degrees: Degrees, ctx: Ctx) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if m.has_loops() || m.rank() == 0 {
        out.push(CheckResult::skipped(
            "hodge",
            "needs a loopless matroid of positive rank",
        ));
        return out;
    }
    if m.rank() - 1 > HODGE_MAX_DEGREE {
        out.push(CheckResult::skipped(
            "hodge",
            format!("r = {} exceeds {HODGE_MAX_DEGREE}", m.rank() - 1),
        ));
        return out;
    }
    let start = Instant::now();
    let ring = match ChowRing::full(m) {
        Ok(r) => r,
        Err(e) => {
            out.push(failed("chow-ring", &e));
            return out;
        }
    };
    let n = m.ground_size();
    let class = ring.ample_from_submodular(|p| ell.value(n, p), ctx.exec);
    let ell_class = match class {
        Ok(c) => {
            out.push(
                CheckResult::new(
                    "ample-class",
                    Verdict::Pass,
                    "strictly convex on every cone",
                    Value::Null,
                )
                .timed(start.elapsed(), ctx.timings),
            );
            c
        }
        Err(e) => {
            out.push(failed("ample-class", &e).timed(start.elapsed(), ctx.timings));
            return out;
        }
    };
    let r = ring.top_degree();
    let ks: Vec<usize> = match degrees {
        Degrees::All => (0..=r).collect(),
        Degrees::One(k) => vec![k],
    };
    for &k in &ks {
        ctx.run(&mut out, || match ring.poincare_pairing(k) {
            Ok(p) => {
                let det = p
                    .determinant
                    .as_ref()
                    .map_or("none".into(), ToString::to_string);
                CheckResult::new(
                    format!("poincare-duality[{k}]"),
                    Verdict::from_bool(p.unimodular && p.integral_bases),
                    format!(
                        "{}x{} pairing, determinant {det}",
                        p.gram.nrows(),
                        p.gram.ncols()
                    ),
                    to_value(&p),
                )
            }
            Err(e) => failed(&format!("poincare-duality[{k}]"), &e),
        });
    }
    for &k in ks.iter().filter(|&&k| 2 * k <= r) {
        ctx.run(&mut out, || {
            match ring.hard_lefschetz_check(&ell_class, k) {
                Ok(l) => CheckResult::new(
                    format!("hard-lefschetz[{k}]"),
                    Verdict::from_bool(l.holds),
                    format!("rank {} of {}x{}", l.rank, l.target_dim, l.source_dim),
                    to_value(&l),
                ),
                Err(e) => failed(&format!("hard-lefschetz[{k}]"), &e),
            }
        });
        ctx.run(&mut out, || match ring.hr_check(&ell_class, k) {
            Ok(h) => CheckResult::new(
                format!("hodge-riemann[{k}]"),
                Verdict::from_bool(h.positive_on_primitives),
                format!(
                    "primitive signature {} on dimension {}",
                    h.primitive_signature, h.primitive_dim
                ),
                to_value(&h),
            ),
            Err(e) => failed(&format!("hodge-riemann[{k}]"), &e),
        });
        ctx.run(&mut out, || {
            match ring.lefschetz_decomposition(&ell_class, k) {
                Ok(d) => CheckResult::new(
                    format!("lefschetz-decomposition[{k}]"),
                    Verdict::from_bool(d.direct && d.orthogonal),
                    format!("pieces {:?}", d.piece_dims),
                    to_value(&d),
                ),
                Err(e) => failed(&format!("lefschetz-decomposition[{k}]"), &e),
            }
        });
    }
    if matches!(degrees, Degrees::All) {
        ctx.run(&mut out, || {
            if r < 2 {
                return CheckResult::skipped("khovanskii-teissier", "needs r >= 2");
            }
            match ring.kt_inequality_check(&ring.alpha(), &ring.beta()) {
                Ok(kt) => CheckResult::new(
                    "khovanskii-teissier",
                    Verdict::from_bool(kt.holds),
                    format!("{} <= {}", kt.lhs, kt.rhs),
                    to_value(&kt),
                ),
                Err(e) => failed("khovanskii-teissier", &e),
            }
        });
    }
    out
}

pub fn fan_checks(m: &Matroid, filter: &Filter, checks: &[FanCheck], ctx: Ctx) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if m.has_loops() || m.rank() == 0 {
        out.push(CheckResult::skipped(
            "fan",
            "needs a loopless matroid of positive rank",
        ));
        return out;
    }
    let fan = match bergman_fan_filtered(m, filter) {
        Ok(f) => f,
        Err(e) => {
            out.push(failed("fan", &e));
            return out;
        }
    };
    for check in checks {
        ctx.run(&mut out, || match check {
            FanCheck::Valid => {
                let v = validate_fan(&fan, ctx.exec);
                CheckResult::new(
                    "fan-valid",
                    Verdict::from_bool(v.is_valid()),
                    format!("{} rays, {} cones", fan.rays().len(), fan.cones().len()),
                    to_value(&v),
                )
            }
            FanCheck::Unimodular => {
                let ok = is_unimodular(&fan);
                CheckResult::new("unimodular", Verdict::from_bool(ok), "", json!(ok))
            }
            FanCheck::Pure => {
                let d = m.rank() - 1;
                match reduced_bergman_fan(m, filter) {
                    Ok(reduced) => {
                        let ok = is_pure(&reduced, d);
                        let summary = format!("reduced fan, dimension {d}");
                        CheckResult::new("pure", Verdict::from_bool(ok), summary, json!(ok))
                    }
                    Err(e) => failed("pure", &e),
                }
            }
            FanCheck::Ample => {
                let phi = PlFunction::from_subset_fn(&fan, default_submodular(m.ground_size()));
                let ok = ample_check(&fan, &phi, ctx.exec);
                CheckResult::new(
                    "ample",
                    Verdict::from_bool(ok),
                    "c(P) = |P| (n - |P|)",
                    json!(ok),
                )
            }
        });
    }
    out
}

fn pair_result(r: &TopHeavyReport, representable: bool) -> CheckResult {
    let verdict = if representable {
        Verdict::from_bool(r.passed())
    } else {
        Verdict::Reported
    };
    let matched = r.matching.as_ref().map_or("no matching".to_string(), |m| {
        format!("{} matched", m.len())
    });
    CheckResult::new(
        format!("topheavy[{},{}]", r.p, r.q),
        verdict,
        format!(
            "rank {} of W_p = {}, W_q = {}, {matched}",
            r.rank, r.w_p, r.w_q
        ),
        to_value(r),
    )
}

pub fn topheavy_checks(m: &Matroid, mode: TopHeavyMode, ctx: Ctx) -> Vec<CheckResult> {
    let representable = m.known_representable() == Some(true);
    let mut out = Vec::new();
    let start = Instant::now();
    match mode {
        TopHeavyMode::Pair(p, q) => match topheavy_check(m, p, q) {
            Ok(r) => out.push(pair_result(&r, representable).timed(start.elapsed(), ctx.timings)),
            Err(e) => out.push(failed(&format!("topheavy[{p},{q}]"), &e)),
        },
        TopHeavyMode::Sweep => match topheavy_sweep(m, ctx.exec) {
            Ok(s) => {
                out.push(
                    CheckResult::new(
                        "whitney-second-shape",
                        Verdict::Reported,
                        format!(
                            "W = {:?}, log-concave {}, unimodal {}",
                            s.whitney, s.whitney_log_concave, s.whitney_unimodal
                        ),
                        json!({
                            "whitney": s.whitney,
                            "log_concave": s.whitney_log_concave,
                            "unimodal": s.whitney_unimodal,
                            "rank_implies_matching": s.rank_implies_matching(),
                        }),
                    )
                    .timed(start.elapsed(), ctx.timings),
                );
                out.extend(s.pairs.iter().map(|r| pair_result(r, representable)));
            }
            Err(e) => out.push(failed("topheavy", &e)),
        },
    }
    out
}

/// Torus point counts and coloring counts against `χ`.
pub fn oracle_checks(e: &CorpusEntry, ctx: Ctx) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let chi = match char_poly(&e.matroid, CharPolyAlgorithm::Moebius) {
        Ok(c) => c,
        Err(err) => return vec![failed("oracles", &err)],
    };
    for a in &e.realizations {
        let p = a.prime();
        ctx.run(&mut out, || {
            let rows: Vec<Vec<i64>> = (0..a.nrows())
                .map(|i| (0..a.ncols()).map(|j| a.get(i, j) as i64).collect())
                .collect();
            match torus_point_count(p, &rows) {
                Ok(count) => {
                    let expected = chi.eval(p as i64);
                    CheckResult::new(
                        format!("torus-identity[{p}]"),
                        Verdict::from_bool(count as i128 == expected),
                        format!("{count} points, chi({p}) = {expected}"),
                        json!({ "points": count, "chi": expected.to_string() }),
                    )
                }
                Err(err) => failed(&format!("torus-identity[{p}]"), &err),
            }
        });
    }
    if let Some(g) = &e.graph {
        ctx.run(&mut out, || {
            let c = component_count(g.vertices(), g.edges()) as u32;
            let mut rows = Vec::new();
            let mut ok = true;
            for q in 2..=5i64 {
                let lhs = (q as i128).pow(c) * chi.eval(q);
                match proper_colorings(g.vertices(), g.edges(), q as u64) {
                    Ok(count) => {
                        ok &= lhs == count as i128;
                        rows.push(json!({ "q": q, "colorings": count, "chi": lhs.to_string() }));
                    }
                    Err(err) => return failed("chromatic-identity", &err),
                }
            }
            CheckResult::new(
                "chromatic-identity",
                Verdict::from_bool(ok),
                "q = 2..5",
                json!(rows),
            )
        });
    }
    out
}
