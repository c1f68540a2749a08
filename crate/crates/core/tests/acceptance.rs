//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hodge_matroid::chow::{default_submodular, flip_chain, ChowRing};
use hodge_matroid::corpus::{corpus, CorpusEntry};
use hodge_matroid::error::FlatAxiom;
use hodge_matroid::fan::{
    bergman_fan, bergman_fan_filtered, fan_chow_presentation, is_pure, is_unimodular, validate_fan,
    PlFunction, RayLabel,
};
use hodge_matroid::lattice::{
    char_poly, f_vector_polynomial, is_log_concave, is_positive, mu_vector, reduced_char_poly,
    whitney_first, CharPolyAlgorithm,
};
use hodge_matroid::linalg::rat;
use hodge_matroid::matroid::{fano, uniform};
use hodge_matroid::moebius_algebra::{topheavy_check, topheavy_sweep};
use hodge_matroid::oracle::{component_count, proper_colorings, torus_point_count};
use hodge_matroid::ring::GradedRing;
use hodge_matroid::{Error, Exec, Filter, IntPolynomial, Matroid, Subset};

type Check = std::result::Result<String, String>;

struct Runner {
    failures: usize,
}

impl Runner {
    fn run(&mut self, id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit:?} limit")),
            Err(e) => (false, e),
        };
        if !ok {
            self.failures += 1;
        }
        println!(
            "{} {id:>2} {name:<28} {:>10.3?} (limit {limit:?})  {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed
        );
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn matrix_rows(e: &CorpusEntry) -> Vec<(u64, Vec<Vec<i64>>)> {
    e.realizations
        .iter()
        .map(|a| {
            let rows = (0..a.nrows())
                .map(|i| (0..a.ncols()).map(|j| a.get(i, j) as i64).collect())
                .collect();
            (a.prime(), rows)
        })
        .collect()
}

/// Every maximal chain of proper nonempty flats, bottom first.
fn complete_flags(m: &Matroid) -> Vec<Vec<Subset>> {
    let mut out = vec![Vec::new()];
    for k in 1..m.rank() {
        out = out
            .into_iter()
            .flat_map(|flag: Vec<Subset>| {
                m.flats_of_rank(k)
                    .iter()
                    .filter(|&&p| flag.last().is_none_or(|q| q.is_subset_of(p)))
                    .map(|&p| {
                        let mut f = flag.clone();
                        f.push(p);
                        f
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn main() -> ExitCode {
    let entries = corpus().expect("bundled corpus loads");
    let geometries: Vec<&CorpusEntry> = entries.iter().filter(|e| e.is_geometry()).collect();
    let mut rings: HashMap<String, ChowRing> = HashMap::new();
    let mut runner = Runner { failures: 0 };
    let secs = Duration::from_secs;

    runner.run(1, "chi base cases", Duration::from_millis(1), || {
        let coloop = Matroid::from_flats(1, &[Subset::EMPTY, Subset::singleton(0)]).map_err(err)?;
        let single_loop = Matroid::from_flats(1, &[Subset::singleton(0)]).map_err(err)?;
        let looped =
            Matroid::from_flats(2, &[Subset::singleton(1), Subset::full(2)]).map_err(err)?;
        for alg in CharPolyAlgorithm::ALL {
            let c = char_poly(&coloop, alg).map_err(err)?;
            ensure(c == IntPolynomial::t_minus_one(), || {
                format!("{alg:?}: {c:?} for one coloop")
            })?;
            for m in [&single_loop, &looped] {
                let c = char_poly(m, alg).map_err(err)?;
                ensure(c.is_zero(), || format!("{alg:?}: {c:?} with a loop"))?;
            }
        }
        Ok("T - 1 and 0 under all three algorithms".into())
    });

    runner.run(2, "triple agreement", secs(5), || {
        ensure(entries.len() >= 12, || {
            format!("corpus has {} entries", entries.len())
        })?;
        for e in &entries {
            let polys: Vec<IntPolynomial> = CharPolyAlgorithm::ALL
                .iter()
                .map(|&a| char_poly(&e.matroid, a))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            ensure(polys.windows(2).all(|w| w[0] == w[1]), || {
                format!("{}: {polys:?}", e.name)
            })?;
        }
        Ok(format!("{} matroids", entries.len()))
    });

    runner.run(3, "chromatic identity", secs(1), || {
        let mut checks = 0;
        for name in ["k4", "c5"] {
            let e = entries
                .iter()
                .find(|e| e.name == name)
                .ok_or("missing graph")?;
            let g = e.graph.as_ref().ok_or("entry has no graph")?;
            let chi = char_poly(&e.matroid, CharPolyAlgorithm::Moebius).map_err(err)?;
            let c = component_count(g.vertices(), g.edges()) as u32;
            for q in 2..=5i64 {
                let lhs = (q as i128).pow(c) * chi.eval(q);
                let rhs = proper_colorings(g.vertices(), g.edges(), q as u64).map_err(err)? as i128;
                ensure(lhs == rhs, || format!("{name} at q = {q}: {lhs} vs {rhs}"))?;
                checks += 1;
            }
        }
        Ok(format!("{checks} evaluations"))
    });

    runner.run(4, "finite-field identity", secs(10), || {
        let mut primes = Vec::new();
        for e in &entries {
            let chi = char_poly(&e.matroid, CharPolyAlgorithm::Moebius).map_err(err)?;
            for (p, rows) in matrix_rows(e) {
                let count = torus_point_count(p, &rows).map_err(err)? as i128;
                ensure(count == chi.eval(p as i64), || {
                    format!("{} over F_{p}: {count}", e.name)
                })?;
                primes.push(p);
            }
        }
        for p in [2, 3, 5] {
            ensure(primes.contains(&p), || format!("no realization over F_{p}"))?;
        }
        Ok(format!("{} realizations", primes.len()))
    });

    runner.run(5, "mu via intersection numbers", secs(60), || {
        let mut flags = 0;
        for e in geometries.iter().filter(|e| e.matroid.rank() <= 5) {
            let m = &e.matroid;
            let a = ChowRing::full(m).map_err(err)?;
            let via = a.mu_vector_via_chow().map_err(err)?;
            let direct = mu_vector(m).map_err(err)?;
            ensure(via == direct, || {
                format!("{}: {via:?} vs {direct:?}", e.name)
            })?;
            let r = a.top_degree();
            let d = a.degree(&a.pow(&a.alpha(), r)).map_err(err)?;
            ensure(d == rat(1), || format!("{}: deg alpha^r = {d}", e.name))?;
            for flag in complete_flags(m) {
                let labels: Vec<RayLabel> = flag.into_iter().map(RayLabel::Flat).collect();
                let mon = a
                    .monomial(&labels)
                    .ok_or("flag monomial has unknown generator")?;
                let d = a.degree(&mon).map_err(err)?;
                ensure(d == rat(1), || {
                    format!("{}: flag {labels:?} has degree {d}", e.name)
                })?;
                flags += 1;
            }
            rings.insert(e.name.clone(), a);
        }
        Ok(format!(
            "{} geometries, {flags} complete flags",
            rings.len()
        ))
    });

    runner.run(6, "log-concavity", secs(10), || {
        for e in &geometries {
            let m = &e.matroid;
            let mu = mu_vector(m).map_err(err)?;
            ensure(is_positive(&mu) && is_log_concave(&mu), || {
                format!("{}: mu {mu:?}", e.name)
            })?;
            let w = whitney_first(m);
            ensure(is_log_concave(&w), || format!("{}: w {w:?}", e.name))?;
        }
        for e in &entries {
            let f = e.matroid.f_vector().map_err(err)?;
            let fi: Vec<i64> = f.iter().map(|&x| x as i64).collect();
            ensure(is_log_concave(&fi), || format!("{}: f {f:?}", e.name))?;
            let coext = e.matroid.free_coextension().map_err(err)?;
            let lhs = reduced_char_poly(&coext).map_err(err)?;
            ensure(lhs == f_vector_polynomial(&f), || {
                format!("{}: free coextension gives {lhs:?}", e.name)
            })?;
        }
        Ok(format!(
            "mu and w on {} geometries, f on {} matroids",
            geometries.len(),
            entries.len()
        ))
    });

    runner.run(7, "Poincare duality", secs(60), || {
        let mut count = 0;
        for e in &geometries {
            let Some(a) = rings.get(&e.name).filter(|a| a.top_degree() <= 4) else {
                continue;
            };
            for k in 0..=a.top_degree() {
                let p = a.poincare_pairing(k).map_err(err)?;
                ensure(p.unimodular && p.integral_bases, || {
                    format!("{} degree {k}: determinant {:?}", e.name, p.determinant)
                })?;
            }
            count += 1;
        }
        Ok(format!("{count} geometries"))
    });

    runner.run(8, "Hard Lefschetz and Hodge-Riemann", secs(300), || {
        let mut count = 0;
        for e in &geometries {
            let Some(a) = rings.get(&e.name).filter(|a| a.top_degree() <= 4) else {
                continue;
            };
            let ell = a
                .ample_from_submodular(default_submodular(e.matroid.ground_size()), Exec::Parallel)
                .map_err(err)?;
            let report = a.hodge_report(&ell, Exec::Parallel).map_err(err)?;
            for d in &report.degrees {
                let hr = &d.hodge_riemann;
                let sig = hr.primitive_signature;
                ensure(d.lefschetz.holds, || {
                    format!(
                        "{} degree {}: Lefschetz rank {}",
                        e.name, hr.degree, d.lefschetz.rank
                    )
                })?;
                ensure(
                    sig.positive == hr.primitive_dim && sig.negative == 0 && sig.zero == 0,
                    || {
                        format!(
                            "{} degree {}: primitive signature {sig:?}",
                            e.name, hr.degree
                        )
                    },
                )?;
            }
            ensure(report.all_hold(), || {
                format!("{}: decomposition fails", e.name)
            })?;
            count += 1;
        }
        Ok(format!("{count} geometries"))
    });

    runner.run(9, "Khovanskii-Teissier", secs(1), || {
        let mut count = 0;
        for e in &geometries {
            let Some(a) = rings.get(&e.name).filter(|a| a.top_degree() >= 2) else {
                continue;
            };
            let kt = a.kt_inequality_check(&a.alpha(), &a.beta()).map_err(err)?;
            ensure(kt.holds, || format!("{}: {} > {}", e.name, kt.lhs, kt.rhs))?;
            count += 1;
        }
        Ok(format!("{count} geometries"))
    });

    runner.run(10, "fan suite", secs(60), || {
        let mut filters = 0;
        for e in &geometries {
            let m = &e.matroid;
            let f = bergman_fan(m).map_err(err)?;
            let v = validate_fan(&f, Exec::Parallel);
            ensure(v.is_valid(), || format!("{}: {:?}", e.name, v.problems))?;
            ensure(is_unimodular(&f) && is_pure(&f, m.rank() - 1), || {
                format!("{}: not unimodular and pure", e.name)
            })?;
            if m.rank() > 4 || m.num_flats() > 40 {
                continue;
            }
            let mut filter = Filter::top(m);
            let centers = filter.flip_sequence_to_full(m);
            for c in std::iter::once(None).chain(centers.into_iter().map(Some)) {
                if let Some(c) = c {
                    filter = filter.flip(m, c).map_err(err)?;
                }
                let f = bergman_fan_filtered(m, &filter).map_err(err)?;
                let v = validate_fan(&f, Exec::Parallel);
                ensure(v.is_valid(), || {
                    format!("{} filter {:?}: {:?}", e.name, filter.flats(), v.problems)
                })?;
                let a = ChowRing::new(m, &filter).map_err(err)?;
                let r = a.top_degree();
                let ring =
                    GradedRing::build(&fan_chow_presentation(&f).map_err(err)?, r).map_err(err)?;
                ensure(ring.hilbert() == a.hilbert(), || {
                    format!(
                        "{} filter {:?}: {:?} vs {:?}",
                        e.name,
                        filter.flats(),
                        ring.hilbert(),
                        a.hilbert()
                    )
                })?;
                filters += 1;
            }
        }
        Ok(format!(
            "{} Bergman fans, {filters} filtered fans",
            geometries.len()
        ))
    });

    runner.run(11, "flip decomposition", secs(120), || {
        let mut steps = 0;
        for (name, m) in [
            ("boolean3", hodge_matroid::matroid::boolean(3)),
            ("U(3,5)", uniform(3, 5)),
        ] {
            let m = m.map_err(err)?;
            for rep in flip_chain(&m).map_err(err)? {
                ensure(rep.holds(), || format!("{name} at {}: {rep:?}", rep.center))?;
                steps += 1;
            }
        }
        Ok(format!("{steps} flips"))
    });

    runner.run(12, "top-heavy", secs(10), || {
        let mut pairs = 0;
        let mut notes = Vec::new();
        for e in &entries {
            let sweep = topheavy_sweep(&e.matroid, Exec::Parallel).map_err(err)?;
            if e.realizations.is_empty() {
                notes.push(format!(
                    "{} reported: {}",
                    e.name,
                    if sweep.all_passed() {
                        "passes"
                    } else {
                        "fails"
                    }
                ));
                continue;
            }
            for r in &sweep.pairs {
                ensure(r.passed(), || {
                    format!(
                        "{} (p, q) = ({}, {}): rank {} of {}",
                        e.name, r.p, r.q, r.rank, r.w_p
                    )
                })?;
            }
            pairs += sweep.pairs.len();
        }
        let fano_lines = topheavy_check(&fano().map_err(err)?, 1, 2).map_err(err)?;
        let matched = fano_lines.matching.as_ref().map_or(0, Vec::len);
        ensure(matched == 7 && fano_lines.w_q == 7, || {
            format!("Fano matching covers {matched} points")
        })?;
        Ok(format!("{pairs} pairs; {}", notes.join(", ")))
    });

    runner.run(13, "negative controls", secs(10), || {
        let m = fano().map_err(err)?;
        let line = m.flats_of_rank(2)[0];
        let corrupted: Vec<Subset> = m.flats().iter().copied().filter(|&f| f != line).collect();
        match Matroid::from_flats(7, &corrupted) {
            Err(Error::AxiomViolation {
                axiom: FlatAxiom::Cover,
                detail,
            }) => ensure(!detail.is_empty(), || "violation without witness".into())?,
            other => return Err(format!("corrupted flats gave {other:?}")),
        }
        let f = bergman_fan(&m).map_err(err)?;
        let broken = f.without_cone(&f.maximal_cones()[0][..1]);
        ensure(!validate_fan(&broken, Exec::Parallel).is_valid(), || {
            "corrupted fan passes".into()
        })?;
        let zero = PlFunction::zero(&f);
        ensure(
            !hodge_matroid::fan::ample_check(&f, &zero, Exec::Parallel),
            || "zero function is ample".into(),
        )?;
        let u = uniform(2, 3).map_err(err)?;
        let a = ChowRing::full(&u).map_err(err)?;
        ensure(
            matches!(
                a.ample_from_submodular(|_| rat(0), Exec::Parallel),
                Err(Error::NotAmple(_))
            ),
            || "zero class certified".into(),
        )?;
        Ok("flats, fan and PL function rejected".into())
    });

    if runner.failures == 0 {
        println!("all 13 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", runner.failures);
        ExitCode::FAILURE
    }
}
