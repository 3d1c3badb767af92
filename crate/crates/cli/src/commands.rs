use serde_json::{json, Map, Value};

use alexmod::arrangements::{
    builtin_presentation, delta_closed_form, delta_from_pipeline, hodge_report, intersection_data, os_algebra,
    purity_criterion, ArrangementSpec, DeltaProvenance,
};
use alexmod::fixtures::{presentation_fixtures, run_acceptance};
use alexmod::invariants::{jordan_bound, jordan_bound_check, jordan_profile, roots_of_unity_check, semisimplicity_check};
use alexmod::laurent::LaurentPoly;
use alexmod::localsys::{alexander_homology, torsion_via_psi_with, PresentationSpec, PsiOptions};
use alexmod::rational::Rational;
use alexmod::rmodule::{conjugate, torsion_part, FgRModule};
use alexmod::thicken::{structural_suite, thicken_cdga, torsion_of_thickening, BifilteredCdga, Direction};
use alexmod::{Error, Result};

use crate::{DeltaSource, Outcome, Report, Suite, Via};

fn ok(body: Value) -> Outcome {
    Outcome { body, ok: true }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn alexander(src: &str, degree: i64, via: Via) -> Result<Outcome> {
    let pc = PresentationSpec::from_json(src)?.complex()?;
    if !(0..=2).contains(&degree) {
        return Err(Error::DegreeOutOfRange { degree, lo: 0, hi: 2 });
    }
    let homology = alexander_homology(&pc, degree)?;
    let snf = || -> Result<FgRModule> {
        if degree == 0 {
            return Ok(FgRModule::zero());
        }
        Ok(conjugate(&torsion_part(&alexander_homology(&pc, degree - 1)?)))
    };
    let psi = || torsion_via_psi_with(&pc, degree, &PsiOptions::from_env());
    let mut body = json!({
        "command": "alexander",
        "degree": degree,
        "via": format!("{via:?}").to_lowercase(),
        "homology": to_value(&homology),
    });
    match via {
        Via::Snf => body["torsion"] = to_value(&snf()?),
        Via::Psi => {
            let p = psi()?;
            body["torsion"] = to_value(&p.module);
            body["cover_order"] = json!(p.cover_order);
            body["stable_m"] = json!(p.stable_m);
        }
        Via::Both => {
            let (s, p) = (snf()?, psi()?);
            if s != p.module {
                return Ok(Outcome {
                    body: json!({
                        "command": "alexander",
                        "degree": degree,
                        "error": "OracleMismatch",
                        "diff": { "snf": to_value(&s), "psi": to_value(&p.module) },
                    }),
                    ok: false,
                });
            }
            body["torsion"] = to_value(&s);
            body["pipelines_agree"] = json!(true);
            body["cover_order"] = json!(p.cover_order);
        }
    }
    Ok(ok(body))
}

pub fn thicken(src: &str, eta: &str, m: usize, checks: bool) -> Result<Outcome> {
    let a = BifilteredCdga::from_json(src)?;
    let eta = Direction::parse(eta)?;
    let t = thicken_cdga(&a, &eta, m)?;
    let mut degrees = Vec::new();
    for p in 0..=a.top_degree() {
        let torsion = torsion_of_thickening(&a, &eta, p)?;
        degrees.push(json!({
            "degree": p,
            "dim": t.dim(p),
            "cohomology_dim": t.cohomology_dim(p),
            "torsion": to_value(&torsion),
            "torsion_dim": torsion.torsion_dim(),
        }));
    }
    let mut body = json!({ "command": "thicken", "m": m, "degrees": degrees });
    let mut passed = true;
    if checks {
        let zero = vec![Rational::default(); a.dim_in(0)];
        let report = structural_suite(&a, &eta, &zero, &zero, m)?;
        passed = report.all_ok();
        body["checks"] = to_value(&report);
        body["failures"] = json!(report.failures());
    }
    Ok(Outcome { body, ok: passed })
}

pub fn arrangement(src: &str, report: Option<Report>, delta: Option<DeltaSource>, delta_value: Option<&str>) -> Result<Outcome> {
    let arr = ArrangementSpec::from_json(src)?.arrangement()?;
    let d = arr.len();
    let data = intersection_data(&arr);
    let os = os_algebra(&arr)?;
    let purity = purity_criterion(&arr)?;
    let computed = match (delta_value, delta) {
        (Some(s), _) => Some((s.parse::<LaurentPoly>()?.normalize(), DeltaProvenance::UserSupplied)),
        (None, Some(DeltaSource::ClosedForm)) => Some((delta_closed_form(&arr)?, DeltaProvenance::ClosedForm)),
        (None, Some(DeltaSource::Pipeline)) => Some((delta_from_pipeline(&arr)?, DeltaProvenance::PresentationPipeline)),
        (None, None) if builtin_presentation(&arr).is_ok() => {
            Some((delta_from_pipeline(&arr)?, DeltaProvenance::PresentationPipeline))
        }
        (None, None) => delta_closed_form(&arr).ok().map(|p| (p, DeltaProvenance::ClosedForm)),
    };
    let mut body = json!({
        "command": "arrangement",
        "d": d,
        "intersections": to_value(&data),
        "betti": [1, d, os.dim_in(2)],
        "purity": to_value(&purity),
        "delta1": computed.as_ref().map(|(p, _)| p.to_string()),
        "provenance": computed.as_ref().map(|(_, src)| to_value(src)),
    });
    if report == Some(Report::Hodge) {
        let (delta1, provenance) =
            computed.ok_or_else(|| Error::NoPresentation("no presentation or closed form gives Δ_1".into()))?;
        body["hodge"] = to_value(&hodge_report(d, &delta1, provenance)?);
    }
    Ok(ok(body))
}

fn parse_module(src: &str) -> Result<FgRModule> {
    let value: Value = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    if let Value::Array(items) = &value {
        let orders = items
            .iter()
            .map(|v| v.as_str().ok_or_else(|| Error::Parse("expected polynomial strings".into()))?.parse())
            .collect::<Result<Vec<LaurentPoly>>>()?;
        return Ok(FgRModule::from_cyclic_orders(0, &orders));
    }
    serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))
}

pub fn check(src: &str, suites: &[Suite], degree: Option<usize>, dim: Option<usize>) -> Result<Outcome> {
    let m = parse_module(src)?;
    let mut results = Map::new();
    let mut failed: Option<&str> = None;
    for suite in suites {
        match suite {
            Suite::Roots => {
                let r = roots_of_unity_check(&m);
                if !r.ok {
                    failed.get_or_insert("NotRootsOfUnity");
                }
                results.insert("roots".into(), to_value(&r));
            }
            Suite::Semisimple => {
                let ok = semisimplicity_check(&m)?;
                if !ok {
                    failed.get_or_insert("NotSemisimple");
                }
                results.insert("semisimple".into(), json!({ "ok": ok }));
            }
            Suite::Jordan => {
                let (Some(i), Some(n)) = (degree, dim) else {
                    return Err(Error::Invalid("the jordan suite needs --degree and --dim".into()));
                };
                let ok = jordan_bound_check(&m, i, n)?;
                if !ok {
                    failed.get_or_insert("JordanBoundExceeded");
                }
                results.insert(
                    "jordan".into(),
                    json!({ "ok": ok, "bound": jordan_bound(i, n), "profile": to_value(&jordan_profile(&m)?) }),
                );
            }
        }
    }
    let mut body = json!({ "command": "check", "module": to_value(&m), "checks": results });
    if let Some(name) = failed {
        body["error"] = json!(name);
    }
    Ok(Outcome { body, ok: failed.is_none() })
}

pub fn fixtures(run_all: bool) -> Outcome {
    let names: Vec<&str> = presentation_fixtures().iter().map(|f| f.name).collect();
    if !run_all {
        return ok(json!({ "command": "fixtures", "fixtures": names }));
    }
    let outcomes = run_acceptance();
    for o in &outcomes {
        eprintln!("{}", o.line());
    }
    let all = outcomes.iter().all(|o| o.passed);
    Outcome { body: json!({ "command": "fixtures", "criteria": to_value(&outcomes), "all_passed": all }), ok: all }
}
