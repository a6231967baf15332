use std::collections::BTreeMap;

use serde_json::{json, Value};
use ybtwist_core::algebra::DEFAULT_MAX_DEGREE;
use ybtwist_core::census::{enumerate_solutions_with, natural_gradings, MAX_SIZE};
use ybtwist_core::isotope::isotope_formulas;
use ybtwist_core::{
    enumerate_twist_systems, hilbert_function_with, isotope_birack, polynomial_hilbert,
    quadratic_relations, twist_relations, validate_twist_system, verify_twist_isomorphism, Birack,
    Error, HilbertOptions, QuadraticRelationSet, RightQuasigroup, Solution, TwistLevel,
};

use crate::input::{InputDocument, Malformed, Structure};

/// Checks reported by `check` but only enforced on request.
pub const OPTIONAL_CHECKS: &[&str] = &[
    "lri",
    "distributive",
    "two_reductive",
    "square_free",
    "l1",
    "r1",
    "lr3",
];

pub struct Settings {
    pub max_degree: usize,
    pub max_entries: usize,
    pub level: TwistLevel,
    pub require: Vec<String>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_degree: DEFAULT_MAX_DEGREE,
            max_entries: HilbertOptions::default().max_entries,
            level: TwistLevel::Strong,
            require: Vec::new(),
        }
    }
}

impl Settings {
    fn hilbert_options(&self) -> HilbertOptions {
        HilbertOptions {
            max_entries: self.max_entries,
            ..HilbertOptions::default()
        }
    }
}

/// A finished command: the JSON report, stderr summary lines, and whether
/// every enforced property held.
pub struct Outcome {
    pub report: Value,
    pub summary: Vec<String>,
    pub passed: bool,
    /// A document for `--output`, when the command produces one.
    pub document: Option<InputDocument>,
}

fn level_name(level: TwistLevel) -> &'static str {
    match level {
        TwistLevel::Weak => "weak",
        TwistLevel::Strong => "strong",
    }
}

fn relations_json(r: &QuadraticRelationSet) -> Value {
    r.relations()
        .iter()
        .map(|rel| {
            let terms: Vec<Value> = rel
                .terms()
                .iter()
                .map(|&((x, y), c)| json!([x, y, c]))
                .collect();
            json!({ "text": rel.to_string(), "terms": terms })
        })
        .collect()
}

/// Why a command stopped early.
pub enum Stop {
    Malformed(Malformed),
    /// A property or hypothesis failed; the outcome explains which.
    Failed(Box<Outcome>),
}

impl From<Malformed> for Stop {
    fn from(m: Malformed) -> Self {
        Stop::Malformed(m)
    }
}

/// A failed outcome for an error from the core library.
fn failure(command: &str, e: Error) -> Stop {
    let mut summary = vec![format!("{command}: FAIL: {e}")];
    let report = match &e {
        Error::HypothesisViolated(hs) => {
            let names: Vec<String> = hs.iter().map(ToString::to_string).collect();
            summary.extend(names.iter().map(|h| format!("  {h}")));
            json!({ "command": command, "passed": false, "failed_hypotheses": names })
        }
        _ => json!({ "command": command, "passed": false, "error": e.to_string() }),
    };
    Stop::Failed(Box::new(Outcome {
        report,
        summary,
        passed: false,
        document: None,
    }))
}

fn hilbert(command: &str, r: &QuadraticRelationSet, s: &Settings) -> Result<Vec<u64>, Stop> {
    match hilbert_function_with(r, s.max_degree, &s.hilbert_options()) {
        Ok(h) => Ok(h.dims),
        Err(Error::BudgetExceeded(d)) => Err(Stop::Malformed(Malformed(format!(
            "--max-degree: degree {d} needs more than {} matrix entries; lower the degree or raise --max-entries",
            s.max_entries
        )))),
        Err(e) => Err(failure(command, e)),
    }
}

pub fn check(st: &Structure, s: &Settings) -> Outcome {
    let n = st.n;
    let q = &st.left;
    let mut checks: BTreeMap<&str, Option<bool>> = BTreeMap::new();
    let mut witnesses: BTreeMap<&str, Value> = BTreeMap::new();
    checks.insert("left_quasigroup", Some(true));
    checks.insert("nondegenerate", Some(q.is_nondegenerate()));
    let rc = q.right_cyclic_counterexample();
    checks.insert("right_cyclic", Some(rc.is_none()));
    if let Some((x, y)) = rc {
        witnesses.insert("right_cyclic", json!([x, y]));
    }
    checks.insert("two_reductive", Some(q.is_two_reductive()));

    let right = match &st.right {
        Some(r) => Some(r.clone()),
        None => RightQuasigroup::validate(st.derived_bullet()).ok(),
    };
    checks.insert("right_quasigroup", Some(right.is_some()));
    let birack = right.and_then(|r| Birack::from_tables(q.circ().clone(), r.bullet().clone()).ok());
    let mut group_order = None;
    match &birack {
        Some(b) => {
            let verdict = b.verify();
            if let Err(v) = &verdict {
                witnesses.insert("birack", json!(format!("{v:?}")));
            }
            checks.insert("birack", Some(verdict.is_ok()));
            checks.insert("involutive", Some(b.is_involutive()));
            if let Some((x, y)) = b.involutive_counterexample() {
                witnesses.insert("involutive", json!([x, y]));
            }
            checks.insert("lri", Some(b.satisfies_lri()));
            checks.insert("distributive", Some(b.is_distributive()));
            if st.grading_given {
                checks.insert("graded", Some(b.is_graded(&st.grading)));
            }
            let sol = Solution::from_birack(b).ok();
            checks.insert("square_free", sol.as_ref().map(Solution::is_square_free));
            checks.insert("braided", sol.as_ref().map(Solution::is_braided));
            if let Some(t) = sol.as_ref().and_then(Solution::braid_counterexample) {
                witnesses.insert("braided", json!([t.0, t.1, t.2]));
            }
            let conds = sol.as_ref().and_then(|s| s.check_l1_r1_lr3().ok());
            checks.insert("l1", conds.as_ref().map(|c| c.l1_holds()));
            checks.insert("r1", conds.as_ref().map(|c| c.r1_holds()));
            checks.insert("lr3", conds.as_ref().map(|c| c.lr3_holds()));
            group_order = sol.as_ref().and_then(|s| s.permutation_group_order().ok());
        }
        None => {
            for name in [
                "birack",
                "involutive",
                "lri",
                "square_free",
                "braided",
                "l1",
                "r1",
                "lr3",
            ] {
                checks.insert(name, None);
            }
            checks.insert("distributive", Some(q.is_distributive()));
            if st.grading_given {
                checks.insert("graded", Some(q.is_graded(&st.grading)));
            }
        }
    }
    let mut twist = Value::Null;
    if let Some(phis) = &st.phi {
        let verdict = ybtwist_core::TwistSystem::new(st.grading.clone(), phis.clone())
            .and_then(|t| validate_twist_system(q, &t, s.level));
        let failures: Vec<String> = match &verdict {
            Ok(v) => v.failures.iter().map(ToString::to_string).collect(),
            Err(e) => vec![e.to_string()],
        };
        checks.insert("twist_system", Some(failures.is_empty()));
        twist = json!({ "level": level_name(s.level), "failures": failures });
    }

    let mut requested = vec![
        "left_quasigroup",
        "right_quasigroup",
        "nondegenerate",
        "right_cyclic",
        "birack",
        "involutive",
        "braided",
    ];
    for name in ["graded", "twist_system"] {
        if checks.contains_key(name) {
            requested.push(name);
        }
    }
    for name in &s.require {
        if !requested.contains(&name.as_str()) {
            if let Some(c) = OPTIONAL_CHECKS
                .iter()
                .copied()
                .find(|c| *c == name.as_str())
            {
                requested.push(c);
            }
        }
    }
    let failed: Vec<&str> = requested
        .iter()
        .copied()
        .filter(|c| checks.get(c).copied().flatten() != Some(true))
        .collect();
    let passed = failed.is_empty();

    let mut summary = vec![format!(
        "check: {} (n = {n})",
        if passed { "PASS" } else { "FAIL" }
    )];
    for (name, v) in &checks {
        let mark = match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        let enforced = if requested.contains(name) {
            ""
        } else {
            " (informational)"
        };
        summary.push(format!("  {name:<16} {mark}{enforced}"));
    }
    if let Some(order) = group_order {
        summary.push(format!("  permutation group order {order}"));
    }
    Outcome {
        report: json!({
            "command": "check",
            "n": n,
            "checks": checks,
            "counterexamples": witnesses,
            "permutation_group_order": group_order,
            "twist_system": twist,
            "requested": requested,
            "failed": failed,
            "passed": passed,
        }),
        summary,
        passed,
        document: None,
    }
}

pub fn isotope(st: &Structure, s: &Settings) -> Result<Outcome, Stop> {
    let t = st.twist_system()?;
    let b = st.birack().map_err(|e| failure("isotope", e))?;
    let g = &st.grading;
    let iso = match s.level {
        TwistLevel::Strong => isotope_birack(&b, g, &t),
        TwistLevel::Weak => validate_twist_system(b.left(), &t, TwistLevel::Weak).and_then(|v| {
            if v.is_valid() {
                isotope_formulas(&b, &t)
            } else {
                Err(Error::HypothesisViolated(
                    v.failures
                        .into_iter()
                        .map(ybtwist_core::Hypothesis::Twist)
                        .collect(),
                ))
            }
        }),
    };
    let iso = iso.map_err(|e| failure("isotope", e))?;
    let n = iso.n();
    let lri_form = (0..n).all(|x| (0..n).all(|y| iso.bullet_op(y, x) == iso.left().div(x, y)));
    let post: BTreeMap<&str, bool> = BTreeMap::from([
        ("birack", iso.is_birack()),
        ("involutive", iso.is_involutive()),
        ("graded", iso.is_graded(g)),
        ("lri", iso.satisfies_lri()),
        ("lri_characterization", lri_form),
        ("nondegenerate", iso.left().is_nondegenerate()),
        ("right_cyclic", iso.left().is_right_cyclic()),
    ]);
    let passed = post.values().all(|&v| v);
    let doc = InputDocument::from_birack(&iso, st.grading_given.then_some(g));
    let mut summary = vec![format!(
        "isotope: {} ({} validation){}",
        if passed { "PASS" } else { "FAIL" },
        level_name(s.level),
        if iso.is_projection() {
            ", result is the projection birack"
        } else {
            ""
        }
    )];
    summary.extend(
        post.iter()
            .map(|(k, v)| format!("  {k:<20} {}", if *v { "yes" } else { "no" })),
    );
    Ok(Outcome {
        report: json!({
            "command": "isotope",
            "level": level_name(s.level),
            "post_checks": post,
            "is_projection": iso.is_projection(),
            "document": doc,
            "passed": passed,
        }),
        summary,
        passed,
        document: Some(doc),
    })
}

pub fn twist(st: &Structure, s: &Settings) -> Result<Outcome, Stop> {
    let t = st.twist_system()?;
    let b = st.birack().map_err(|e| failure("twist", e))?;
    let verdict = validate_twist_system(b.left(), &t, s.level).map_err(|e| failure("twist", e))?;
    let failures: Vec<String> = verdict.failures.iter().map(ToString::to_string).collect();
    let original = quadratic_relations(&b);
    let twisted = twist_relations(&original, &t).map_err(|e| failure("twist", e))?;
    let passed = failures.is_empty();
    let mut summary = vec![
        format!(
            "twist: {} ({} validation)",
            if passed { "PASS" } else { "FAIL" },
            level_name(s.level)
        ),
        format!("  relations {original}"),
        format!("  twisted   {twisted}"),
    ];
    summary.extend(failures.iter().map(|f| format!("  {f}")));
    Ok(Outcome {
        report: json!({
            "command": "twist",
            "level": level_name(s.level),
            "relations": relations_json(&original),
            "twisted": relations_json(&twisted),
            "twist_failures": failures,
            "passed": passed,
        }),
        summary,
        passed,
        document: None,
    })
}

pub fn hilbert_cmd(st: &Structure, s: &Settings) -> Result<Outcome, Stop> {
    let b = st.birack().map_err(|e| failure("hilbert", e))?;
    let r = quadratic_relations(&b);
    let dims = hilbert("hilbert", &r, s)?;
    let polynomial = polynomial_hilbert(b.n(), s.max_degree).dims;
    let summary = vec![
        format!("hilbert: dims {dims:?} to degree {}", s.max_degree),
        format!("  polynomial reference {polynomial:?}"),
    ];
    Ok(Outcome {
        report: json!({
            "command": "hilbert",
            "max_degree": s.max_degree,
            "relations": relations_json(&r),
            "dims": dims,
            "polynomial": polynomial,
            "matches_polynomial": dims == polynomial,
            "passed": true,
        }),
        summary,
        passed: true,
        document: None,
    })
}

pub fn theorem1(st: &Structure, s: &Settings) -> Result<Outcome, Stop> {
    let t = st.twist_system()?;
    let b = st.birack().map_err(|e| failure("theorem1", e))?;
    let cert = verify_twist_isomorphism(&b, &st.grading, &t).map_err(|e| failure("theorem1", e))?;
    let h_original = hilbert("theorem1", &cert.original, s)?;
    let h_isotope = hilbert("theorem1", &cert.isotope_relations, s)?;
    let passed = cert.holds();
    let (twisted_only, isotope_only) = cert.difference();
    let mut summary = vec![
        format!("theorem1: {}", if passed { "CERTIFIED" } else { "FAIL" }),
        format!("  original relations {}", cert.original),
        format!("  isotope relations  {}", cert.isotope_relations),
        format!("  twisted relations  {}", cert.twisted),
        format!(
            "  elementwise equal {}, span equal {}",
            cert.elementwise_equal, cert.span_equal
        ),
        format!("  Hilbert original {h_original:?}"),
        format!("  Hilbert isotope  {h_isotope:?}"),
    ];
    if !passed {
        summary.push(format!(
            "  twisted only {twisted_only:?}, isotope only {isotope_only:?}"
        ));
    }
    let text =
        |v: Vec<&ybtwist_core::TensorVector>| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    Ok(Outcome {
        report: json!({
            "command": "theorem1",
            "original": relations_json(&cert.original),
            "isotope_relations": relations_json(&cert.isotope_relations),
            "twisted": relations_json(&cert.twisted),
            "elementwise_equal": cert.elementwise_equal,
            "span_equal": cert.span_equal,
            "hilbert_original": h_original,
            "hilbert_isotope": h_isotope,
            "difference": { "twisted_only": text(twisted_only), "isotope_only": text(isotope_only) },
            "passed": passed,
        }),
        summary,
        passed,
        document: None,
    })
}

pub struct EnumerateFlags {
    pub up_to_iso: bool,
    pub distributive_only: bool,
    pub with_twists: bool,
    pub tables: bool,
}

pub fn enumerate(n: usize, f: &EnumerateFlags) -> Result<Outcome, Stop> {
    let all = enumerate_solutions_with(n, f.up_to_iso, true)
        .map_err(|_| Malformed(format!("n: census size must be in 1..={MAX_SIZE}, got {n}")))?;
    let selected: Vec<&Birack> = all
        .iter()
        .filter(|b| !f.distributive_only || b.is_distributive())
        .collect();
    let mut report = json!({
        "command": "enumerate",
        "n": n,
        "up_to_iso": f.up_to_iso,
        "distributive_only": f.distributive_only,
        "count": selected.len(),
        "distributive": selected.iter().filter(|b| b.is_distributive()).count(),
        "lri": selected.iter().filter(|b| b.satisfies_lri()).count(),
    });
    let mut summary = vec![format!(
        "enumerate: {} {}solutions of size {n}",
        selected.len(),
        if f.distributive_only {
            "distributive "
        } else {
            ""
        }
    )];
    let mut passed = true;
    if f.tables {
        let tables: Vec<InputDocument> = selected
            .iter()
            .map(|b| InputDocument::from_birack(b, None))
            .collect();
        report["solutions"] = json!(tables);
    }
    if f.with_twists {
        let (mut certified, mut failures) = (0usize, Vec::new());
        for b in selected.iter().filter(|b| b.satisfies_lri()) {
            for g in natural_gradings(b) {
                for t in enumerate_twist_systems(b, &g, TwistLevel::Strong)
                    .map_err(|e| failure("enumerate", e))?
                {
                    match verify_twist_isomorphism(b, &g, &t) {
                        Ok(c) if c.holds() => certified += 1,
                        other => failures.push(json!({
                            "circ": b.circ().to_rows(),
                            "grading": g.blocks(),
                            "phi": t.phis().iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
                            "error": other.err().map(|e| e.to_string()),
                        })),
                    }
                }
            }
        }
        passed = failures.is_empty();
        summary.push(format!(
            "  {certified} twist certificates, {} failures",
            failures.len()
        ));
        report["twists"] = json!({ "certified": certified, "failures": failures });
    }
    report["passed"] = json!(passed);
    Ok(Outcome {
        report,
        summary,
        passed,
        document: None,
    })
}
