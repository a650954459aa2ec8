//! Acceptance criteria, one pass/fail line each. Exits nonzero on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use hahn_core::cg::oracle;
use hahn_core::dunkl::{build_sd2, check_sd2, identify_dual_hahn};
use hahn_core::howe::{
    build_howe, check_casimir_correspondence, check_commuting_actions, check_dictionary, check_howe_osp12,
};
use hahn_core::osp::{build_irrep, build_tensor_from, check_coproduct_casimir, check_irrep, check_kappa_algebra};
use hahn_core::spinor::{
    build_commutant, build_spinor_model, check_commutant_closure, check_commutant_property, check_o_n, AngularMomentum,
};
use hahn_core::{solve_cg, Basis, BigRational, CheckKind, CheckOptions, Gauss, RelationReport, Result, Verdict, C64};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Every gating result exact, non-vacuous and within `max_budget`.
fn exact_within(r: &RelationReport, max_budget: u32) -> std::result::Result<usize, String> {
    let gating: Vec<_> = r
        .results
        .iter()
        .filter(|x| !x.informational && x.kind != CheckKind::Control)
        .collect();
    for x in &gating {
        if x.verdict != Verdict::ExactZero {
            return Err(format!("{} is {}", x.tag, x.verdict.label()));
        }
        if x.budget > max_budget || x.window_columns == 0 {
            return Err(format!(
                "{} used budget {} on {} columns",
                x.tag, x.budget, x.window_columns
            ));
        }
    }
    Ok(gating.len())
}

fn count(r: &RelationReport, kind: CheckKind) -> usize {
    r.results.iter().filter(|x| x.kind == kind).count()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome>) -> Outcome {
    let start = Instant::now();
    let mut out = f().unwrap_or_else(|e| Outcome {
        ok: false,
        detail: format!("error: {e}"),
    });
    let elapsed = start.elapsed();
    out.detail = format!("{} in {:.1}s", out.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        out.ok &= elapsed <= limit;
        out.detail.push_str(&format!(" (limit {}s)", limit.as_secs()));
    }
    out
}

fn check_all(parts: Vec<(&str, std::result::Result<usize, String>)>) -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for (name, r) in parts {
        match r {
            Ok(n) => detail.push(format!("{name} {n}")),
            Err(e) => {
                ok = false;
                detail.push(format!("{name} FAILED ({e})"));
            }
        }
    }
    Outcome {
        ok,
        detail: detail.join(", "),
    }
}

fn criterion_1() -> Outcome {
    timed(Some(Duration::from_secs(60)), || {
        let m = build_spinor_model::<Gauss>(2, 2, 4)?;
        let opts = CheckOptions::default();
        let mut parts = Vec::new();
        for which in [AngularMomentum::Orbital, AngularMomentum::Spin, AngularMomentum::Total] {
            let r = check_o_n(&m, which, &opts)?;
            let n = exact_within(&r, 2).and_then(|n| {
                if count(&r, CheckKind::Relation) == 15 {
                    Ok(n)
                } else {
                    Err("expected 15 relations".into())
                }
            });
            parts.push((which.label(), n));
        }
        Ok(check_all(parts))
    })
}

fn criterion_2() -> Outcome {
    timed(Some(Duration::from_secs(120)), || {
        let m = build_spinor_model::<Gauss>(2, 2, 4)?;
        let g = build_commutant(&m)?;
        let opts = CheckOptions::default();
        let prop = check_commutant_property(&m, &g, &opts)?;
        let closure = check_commutant_closure(&m, &g, &opts)?;
        let p = exact_within(&prop, 5).and_then(|n| {
            if n == 15 {
                Ok(n)
            } else {
                Err(format!("{n} checks, expected 15"))
            }
        });
        let c = exact_within(&closure, 5).and_then(|n| {
            if count(&closure, CheckKind::Relation) == 6 {
                Ok(n)
            } else {
                Err("expected 6 closure relations".into())
            }
        });
        Ok(check_all(vec![("commutation", p), ("closure+audit", c)]))
    })
}

fn criterion_3() -> Outcome {
    timed(None, || {
        let r = build_sd2::<Gauss>(&q(1, 3), &q(1, 5), 6, Basis::Analytic)?;
        let opts = CheckOptions::default();
        let sd2 = check_sd2(&r, &opts)?;
        let hahn = identify_dual_hahn(&r, &opts)?;
        let h = exact_within(&hahn, 6).and_then(|n| {
            if count(&hahn, CheckKind::Relation) == 6 && count(&hahn, CheckKind::Centrality) == 12 {
                Ok(n)
            } else {
                Err("expected 6 relations and 12 centrality checks".into())
            }
        });
        Ok(check_all(vec![
            ("sd2", exact_within(&sd2, 6)),
            ("dual -1 Hahn+audit", h),
        ]))
    })
}

fn criterion_4() -> Outcome {
    timed(None, || {
        let opts = CheckOptions::default();
        let mut parts = Vec::new();
        for (mu, eps, name) in [(q(1, 3), 1, "irrep(1/3,+)"), (q(1, 5), -1, "irrep(1/5,-)")] {
            let ir = build_irrep::<Gauss>(&mu, eps, 8, Basis::Analytic)?;
            parts.push((name, exact_within(&check_irrep(&ir, &opts)?, 3)));
        }
        let t8 = build_tensor_from::<Gauss>(&q(1, 3), 1, &q(1, 5), 1, 8, Basis::Analytic)?;
        parts.push((
            "coproduct Casimir",
            exact_within(&check_coproduct_casimir(&t8, &opts)?, 8),
        ));
        let t6 = build_tensor_from::<Gauss>(&q(1, 3), 1, &q(1, 5), 1, 6, Basis::Analytic)?;
        parts.push(("kappa algebra", exact_within(&check_kappa_algebra(&t6, &opts)?, 6)));
        Ok(check_all(parts))
    })
}

fn criterion_5() -> Outcome {
    timed(Some(Duration::from_secs(180)), || {
        let m = build_spinor_model::<Gauss>(2, 2, 4)?;
        let g = build_commutant(&m)?;
        let h = build_howe(&m, &g)?;
        let opts = CheckOptions::default();
        let expect = |r: std::result::Result<usize, String>, n: usize| {
            r.and_then(|k| {
                if k == n {
                    Ok(k)
                } else {
                    Err(format!("{k} checks, expected {n}"))
                }
            })
        };
        Ok(check_all(vec![
            ("osp12 copies", exact_within(&check_howe_osp12(&h, &opts)?, 4)),
            ("dictionary", expect(exact_within(&check_dictionary(&h, &opts)?, 4), 7)),
            (
                "commuting",
                expect(exact_within(&check_commuting_actions(&h, &opts)?, 4), 24),
            ),
            (
                "Casimirs",
                expect(exact_within(&check_casimir_correspondence(&h, &opts)?, 4), 3),
            ),
        ]))
    })
}

fn criterion_6() -> Outcome {
    timed(None, || {
        let t = build_tensor_from::<C64>(&q(1, 3), 1, &q(1, 5), 1, 10, Basis::Orthonormal)?;
        let cg = solve_cg(&t, 4)?;
        let dev = oracle::max_deviation(&t, &cg);
        let r = &cg.residuals;
        let ok = r.orthonormality <= 1e-10 && r.casimir <= 1e-10 && dev <= 1e-8;
        Ok(Outcome {
            ok,
            detail: format!(
                "{} vectors, orthonormality {:.1e}, Casimir {:.1e}, oracle {:.1e}",
                cg.vectors.len(),
                r.orthonormality,
                r.casimir,
                dev
            ),
        })
    })
}

fn criterion_7() -> Outcome {
    timed(None, || {
        let opts = CheckOptions::default();
        let t = build_tensor_from::<Gauss>(&q(1, 3), 1, &q(1, 5), 1, 8, Basis::Analytic)?;
        let coproduct = check_coproduct_casimir(&t, &opts)?;
        let m = build_spinor_model::<Gauss>(2, 2, 4)?;
        let g = build_commutant(&m)?;
        let h = build_howe(&m, &g)?;
        let casimir = check_casimir_correspondence(&h, &opts)?;
        let commuting = check_commuting_actions(&h, &opts)?;
        let mut detail = Vec::new();
        let mut ok = true;
        for (r, tag) in [
            (&coproduct, "control:coproduct-transposed-P"),
            (&casimir, "control:C_1234-unshifted"),
            (&commuting, "control:[J13,Ap_12]"),
        ] {
            let x = r.get(tag);
            let nonzero =
                x.is_some_and(|x| matches!(x.verdict, Verdict::Residual { max_abs } if max_abs > 0.0) && x.passed);
            ok &= nonzero;
            detail.push(format!(
                "{tag} {}",
                x.map_or("missing".to_string(), |x| format!("{:.3}", x.verdict.max_abs()))
            ));
        }
        Ok(Outcome {
            ok,
            detail: detail.join(", "),
        })
    })
}

fn criterion_8() -> Outcome {
    timed(None, || {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_hahn"))
                .args([
                    "verify", "all", "--cutoff", "4", "--mu1", "1/3", "--mu2", "1/5", "--output", "json",
                ])
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        let ok = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
        Ok(Outcome {
            ok,
            detail: format!(
                "exit {:?}/{:?}, {} bytes, identical: {}",
                a.status.code(),
                b.status.code(),
                a.stdout.len(),
                a.stdout == b.stdout
            ),
        })
    })
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "o(4) relations for -iL, -iSigma, J (cutoff 4, budget <= 2)",
            criterion_1,
        ),
        ("commutant and closure relations (cutoff 4, budget <= 5)", criterion_2),
        ("sd(2) and dual -1 Hahn identification (cutoff 6)", criterion_3),
        ("osp(1|2) irreps, coproduct Casimir, kappa algebra", criterion_4),
        ("Howe copies, dictionary, commuting actions, Casimirs", criterion_5),
        ("CG solver against brute-force oracle (cutoff 10, j <= 4)", criterion_6),
        ("negative controls are nonzero", criterion_7),
        ("byte-identical JSON across runs", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.ok);
        println!(
            "criterion {}: {} | {} | {}",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
