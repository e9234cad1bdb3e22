use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use supertriple::cohomology::{
    adjoint_representation, check_representation, coboundary, cohomology, semidirect_sum, verify_complex, Cochain, Representation, RepresentationReport,
};
use supertriple::deformation::{
    certify_trivial, check_deformation, check_lambda_family, first_order_equivalence, is_nijenhuis, nijenhuis_infinitesimal, rigidity_report,
    FirstOrderEquivalence, TrivialWitness,
};
use supertriple::io::{load_deformation, load_nijenhuis, load_representation, load_system, load_trilinear, save_system};
use supertriple::linalg::rational::format;
use supertriple::operators::{operator_space, verify_witnesses, OperatorKind};
use supertriple::random::random_valid_systems;
use supertriple::theorems::verify_structure_theorems;
use supertriple::{verify_axioms, Rational, Result, TripleSystem};

use crate::args::{Command, DeformCommand, NijenhuisCommand, RepArgs};
use crate::report::{mark, matrix_json, matrix_lines, sparse_json, sparse_lines, system_line, system_summary, vector_json};

/// What a command found: its JSON payload, whether any check failed, and
/// the human-readable rendering.
pub struct Outcome {
    pub results: Value,
    pub violations: bool,
    pub lines: Vec<String>,
}

pub fn execute(cmd: &Command, detail: bool) -> Result<Outcome> {
    match cmd {
        Command::Verify { system } => verify(system),
        Command::Spaces { system, kind, k } => spaces(system, *kind, *k, detail),
        Command::Theorems { system } => theorems(system),
        Command::RepCheck { system, rep } => rep_check(system, rep),
        Command::Semidirect { system, rep, output } => semidirect(system, rep, output),
        Command::Cohomology { system, n, rep } => cohomology_cmd(system, usize::from(*n), rep, detail),
        Command::ComplexCheck { system, rep } => complex_check(system, rep),
        Command::Deform(DeformCommand::Check { file }) => deform_check(file),
        Command::Deform(DeformCommand::Equiv { system, f1, f1p }) => deform_equiv(system, f1, f1p),
        Command::Deform(DeformCommand::Rigidity { system }) => rigidity(system),
        Command::Nijenhuis(NijenhuisCommand::Check { file, lambdas }) => nijenhuis(file, lambdas, detail),
        Command::Selftest { seed, count, max_dim } => selftest(*seed, *count, *max_dim as usize),
    }
}

fn verify(path: &Path) -> Result<Outcome> {
    let t = load_system(path)?;
    let report = verify_axioms(&t);
    let mut lines = vec![system_line(&t)];
    for c in &report.checks {
        let mut line = format!("  {:<22} {}", c.axiom.label(), mark(c.holds));
        if let Some(v) = &c.violation {
            line += &format!(
                "  at {:?}: lhs [{}] rhs [{}]",
                v.indices,
                v.lhs.iter().map(format).collect::<Vec<_>>().join(", "),
                v.rhs.iter().map(format).collect::<Vec<_>>().join(", ")
            );
        }
        lines.push(line);
    }
    Ok(Outcome {
        results: json!({ "system": system_summary(&t), "axioms": report }),
        violations: !report.all_hold(),
        lines,
    })
}

fn spaces(path: &Path, kind: Option<OperatorKind>, k: Option<u32>, detail: bool) -> Result<Outcome> {
    let t = load_system(path)?;
    let kinds: Vec<OperatorKind> = kind.map_or_else(|| OperatorKind::ALL.to_vec(), |k| vec![k]);
    let mut entries = Vec::new();
    let mut lines = vec![system_line(&t), format!("  {:<9} {:>2} {:>6} {:>6}  witnesses", "space", "k", "even", "odd")];
    let mut violations = false;
    for kind in kinds {
        let ks: Vec<Option<u32>> = if kind.has_k() { k.map_or_else(|| vec![Some(0), Some(1)], |k| vec![Some(k)]) } else { vec![None] };
        for k in ks {
            let s = operator_space(&t, kind, k.unwrap_or(0));
            let ok = verify_witnesses(&t, &s);
            violations |= !ok;
            let k_text = k.map_or("-".to_string(), |k| k.to_string());
            lines.push(format!("  {:<9} {:>2} {:>6} {:>6}  {}", kind.name(), k_text, s.dim_even(), s.dim_odd(), mark(ok)));
            let mut entry = json!({
                "kind": kind.name(),
                "k": k,
                "dim_even": s.dim_even(),
                "dim_odd": s.dim_odd(),
                "witnesses_verified": ok,
                "derived_identities_hold": s.derived_identities_hold,
            });
            if detail {
                let mut basis = serde_json::Map::new();
                for (label, degree) in [("even", 0u8), ("odd", 1u8)] {
                    let items: Vec<Value> = if kind == OperatorKind::Center {
                        s.part(degree).basis_vectors().map(vector_json).collect()
                    } else {
                        s.basis_maps(&t, degree).iter().map(|m| matrix_json(m.matrix())).collect()
                    };
                    if !items.is_empty() {
                        lines.push(format!("    {label} basis:"));
                        for (i, item) in items.iter().enumerate() {
                            lines.push(format!("      [{i}] {item}"));
                        }
                    }
                    basis.insert(label.into(), Value::Array(items));
                }
                entry["basis"] = Value::Object(basis);
            }
            entries.push(entry);
        }
    }
    Ok(Outcome { results: json!({ "system": system_summary(&t), "spaces": entries }), violations, lines })
}

fn theorems(path: &Path) -> Result<Outcome> {
    let t = load_system(path)?;
    let report = verify_structure_theorems(&t);
    let mut lines = vec![system_line(&t)];
    for c in &report.claims {
        let k = c.k.map_or("-".to_string(), |k| k.to_string());
        let status = if c.informational && !c.holds { "info" } else { mark(c.holds) };
        lines.push(format!("  {:<20} k={k}  {status:<4}  {}", c.id, c.statement));
    }
    Ok(Outcome { results: json!({ "system": system_summary(&t), "theorems": report }), violations: !report.all_hold(), lines })
}

fn load_rep(t: &TripleSystem, rep: &RepArgs) -> Result<(Representation, Value)> {
    let r = match &rep.rep {
        Some(p) => load_representation(t, p)?,
        None => adjoint_representation(t),
    };
    let source = rep.rep.as_ref().map_or("adjoint".to_string(), |p| p.display().to_string());
    let desc = json!({ "source": source, "dim": r.dim(), "parity": r.module().parities() });
    Ok((r, desc))
}

fn rep_lines(desc: &Value, report: &RepresentationReport) -> Vec<String> {
    let mut lines = vec![format!("representation {} (dim {})", desc["source"].as_str().unwrap_or("?"), desc["dim"])];
    for c in report.identities.iter().chain(&report.lambdas) {
        let at = c.violation.map_or(String::new(), |v| format!("  at {v:?}"));
        lines.push(format!("  {:<28} {}{at}", c.label, mark(c.holds)));
    }
    lines
}

fn rep_check(path: &Path, rep: &RepArgs) -> Result<Outcome> {
    let t = load_system(path)?;
    let (r, desc) = load_rep(&t, rep)?;
    let report = check_representation(&t, &r)?;
    let mut lines = vec![system_line(&t)];
    lines.extend(rep_lines(&desc, &report));
    Ok(Outcome {
        results: json!({ "system": system_summary(&t), "representation": desc, "report": report }),
        violations: !report.all_hold(),
        lines,
    })
}

fn semidirect(path: &Path, rep: &RepArgs, output: &Path) -> Result<Outcome> {
    let t = load_system(path)?;
    let (r, desc) = load_rep(&t, rep)?;
    let report = check_representation(&t, &r)?;
    let mut lines = vec![system_line(&t)];
    lines.extend(rep_lines(&desc, &report));
    if !report.is_representation() {
        lines.push("not a representation; nothing written".into());
        return Ok(Outcome {
            results: json!({ "system": system_summary(&t), "representation": desc, "report": report, "written": false }),
            violations: true,
            lines,
        });
    }
    let s = semidirect_sum(&t, &r)?;
    save_system(&s, output)?;
    let reloaded = load_system(output)?;
    let round_trip = reloaded == s;
    let axioms = verify_axioms(&s);
    lines.push(format!("wrote {}", output.display()));
    lines.push(system_line(&s));
    for c in &axioms.checks {
        lines.push(format!("  {:<22} {}", c.axiom.label(), mark(c.holds)));
    }
    lines.push(format!("  {:<22} {}", "reload round trip", mark(round_trip)));
    Ok(Outcome {
        results: json!({
            "system": system_summary(&t),
            "representation": desc,
            "report": report,
            "written": true,
            "output": output.display().to_string(),
            "semidirect": system_summary(&s),
            "axioms": axioms,
            "round_trip": round_trip,
        }),
        violations: !axioms.all_hold() || !round_trip,
        lines,
    })
}

/// Rejects modules that are not representations before any cochain work.
fn require_representation(t: &TripleSystem, r: &Representation, desc: &Value, lines: &mut Vec<String>) -> Result<Option<Outcome>> {
    let report = check_representation(t, r)?;
    if report.is_representation() {
        return Ok(None);
    }
    lines.extend(rep_lines(desc, &report));
    lines.push("not a representation".into());
    Ok(Some(Outcome {
        results: json!({ "system": system_summary(t), "representation": desc, "report": report }),
        violations: true,
        lines: std::mem::take(lines),
    }))
}

fn opt(v: Option<usize>) -> String {
    v.map_or("-".to_string(), |v| v.to_string())
}

fn cohomology_cmd(path: &Path, n: usize, rep: &RepArgs, detail: bool) -> Result<Outcome> {
    let t = load_system(path)?;
    let (r, desc) = load_rep(&t, rep)?;
    let mut lines = vec![system_line(&t)];
    if let Some(o) = require_representation(&t, &r, &desc, &mut lines)? {
        return Ok(o);
    }
    let report = cohomology(&t, &r, n)?;
    lines.push(format!("cohomology in arity {n}, representation {}", desc["source"].as_str().unwrap_or("?")));
    lines.push(format!("  {:<7} {:>6} {:>6} {:>6} {:>6}", "degree", "dim C", "dim Z", "dim B", "dim H"));
    let mut degrees = Vec::new();
    let mut violations = false;
    for d in &report.degrees {
        violations |= d.b_in_z == Some(false);
        lines.push(format!("  {:<7} {:>6} {:>6} {:>6} {:>6}", d.degree, d.dim_c, d.dim_z, opt(d.dim_b), opt(d.dim_h)));
        if d.b_in_z == Some(false) {
            lines.push("    FAIL: coboundaries are not cocycles".into());
        }
        let mut entry = serde_json::to_value(d).expect("serializable");
        if detail {
            entry["representatives"] = Value::Array(d.representatives.iter().map(sparse_json).collect());
            for (i, rep) in d.representatives.iter().enumerate() {
                lines.push(format!("    representative {i}:"));
                lines.extend(sparse_lines(rep).into_iter().map(|l| format!("      {l}")));
            }
        }
        degrees.push(entry);
    }
    lines.push(format!("  {:<7} {:>6} {:>6} {:>6} {:>6}", "total", report.dim_c, report.dim_z, opt(report.dim_b), opt(report.dim_h)));
    Ok(Outcome {
        results: json!({
            "system": system_summary(&t),
            "representation": desc,
            "n": n,
            "degrees": degrees,
            "dim_c": report.dim_c,
            "dim_z": report.dim_z,
            "dim_b": report.dim_b,
            "dim_h": report.dim_h,
        }),
        violations,
        lines,
    })
}

fn complex_check(path: &Path, rep: &RepArgs) -> Result<Outcome> {
    let t = load_system(path)?;
    let (r, desc) = load_rep(&t, rep)?;
    let mut lines = vec![system_line(&t)];
    if let Some(o) = require_representation(&t, &r, &desc, &mut lines)? {
        return Ok(o);
    }
    let report = verify_complex(&t, &r)?;
    lines.push(format!("  {:<7} {:>6} {:>6} {:>6}  {:<6} {:<6} {:<8} {:<8} {}", "degree", "dim C1", "dim C2", "dim C3", "d3d1", "d4d2", "d1 in C3", "d2 in C4", "d3 in C5 (info)"));
    for d in &report.degrees {
        lines.push(format!(
            "  {:<7} {:>6} {:>6} {:>6}  {:<6} {:<6} {:<8} {:<8} {}",
            d.degree,
            d.dim_c1,
            d.dim_c2,
            d.dim_c3,
            mark(d.d3d1_zero),
            mark(d.d4d2_zero),
            mark(d.d1_lands_in_c3),
            mark(d.d2_lands_in_c4),
            if d.d3_lands_in_c5 { "yes" } else { "no" }
        ));
    }
    for f in &report.failures {
        lines.push(format!("  failure: {} degree {} basis {} tuple {:?} rule {:?}", f.stage, f.degree, f.basis_index, f.tuple, f.rule));
    }
    Ok(Outcome {
        results: json!({ "system": system_summary(&t), "representation": desc, "complex": report }),
        violations: !report.all_hold(),
        lines,
    })
}

fn deform_check(file: &Path) -> Result<Outcome> {
    let fd = load_deformation(file)?;
    let report = check_deformation(&fd)?;
    let mut lines = vec![system_line(&fd.base), format!("deformation of order {}", fd.order())];
    for o in &report.orders {
        let at = o.violation.as_ref().map_or(String::new(), |v| format!("  at {v:?}"));
        lines.push(format!("  order {:<3} {}{at}", o.order, mark(o.holds)));
    }
    for term in &report.terms {
        let ok = term.violation.is_none();
        let why = term.violation.as_ref().map_or(String::new(), |v| format!("  {} rule at {:?}", v.rule, v.tuple));
        lines.push(format!("  f{:<7} {}{why}", term.order, if ok { "is a cochain" } else { "FAIL" }));
    }
    if let Some(c) = report.infinitesimal_cocycle {
        lines.push(format!("  f1 is a cocycle: {}", if c { "yes" } else { "no" }));
    }
    Ok(Outcome {
        results: json!({ "system": system_summary(&fd.base), "order": fd.order(), "report": report }),
        violations: !report.all_hold(),
        lines,
    })
}

fn deform_equiv(system: &Path, f1: &Path, f1p: &Path) -> Result<Outcome> {
    let t = load_system(system)?;
    let a = load_trilinear(&t, f1)?;
    let b = load_trilinear(&t, f1p)?;
    let outcome = first_order_equivalence(&t, &a, &b)?;
    let mut lines = vec![system_line(&t)];
    let (verified, violations) = match &outcome {
        FirstOrderEquivalence::Cohomologous { phi } => {
            let d = coboundary(&t, &adjoint_representation(&t), &Cochain::from_hom(phi))?;
            let ok = a.sub(&b)? == d;
            lines.push("cohomologous: f1 - f1' = d1(phi) with phi =".into());
            lines.extend(matrix_lines(phi.matrix()).into_iter().map(|l| format!("  {l}")));
            lines.push(format!("  witness check {}", mark(ok)));
            (Some(ok), !ok)
        }
        FirstOrderEquivalence::NotCohomologous => {
            lines.push("not cohomologous".into());
            (None, true)
        }
    };
    Ok(Outcome { results: json!({ "system": system_summary(&t), "equivalence": outcome, "witness_verified": verified }), violations, lines })
}

fn rigidity(path: &Path) -> Result<Outcome> {
    let t = load_system(path)?;
    let r = rigidity_report(&t)?;
    let lines = vec![
        system_line(&t),
        format!("  even degree: dim Z3 {}, dim B3 {}, dim H3 {}", r.dim_z3, r.dim_b3, r.dim_h3),
        format!("  odd degree:  dim H3 {}", r.dim_h3_odd),
        format!("  {}", if r.rigid_sufficient { "H3 = 0: rigid" } else { "H3 != 0: rigidity not decided" }),
    ];
    Ok(Outcome { results: json!({ "system": system_summary(&t), "rigidity": r }), violations: false, lines })
}

fn nijenhuis(file: &Path, lambdas: &[Rational], detail: bool) -> Result<Outcome> {
    let (t, n_map) = load_nijenhuis(file)?;
    let report = is_nijenhuis(&t, &n_map)?;
    let mut lines = vec![system_line(&t), "operator N =".into()];
    lines.extend(matrix_lines(n_map.matrix()).into_iter().map(|l| format!("  {l}")));
    lines.push(format!("  {:<28} {}", "[Nx, Ny, Nz] = 0", mark(report.image_bracket_vanishes)));
    lines.push(format!("  {:<28} {}", "Nijenhuis identity", mark(report.quadratic_identity)));
    let base = json!({ "system": system_summary(&t), "N": matrix_json(n_map.matrix()), "nijenhuis": report });
    if !report.is_nijenhuis() {
        if let Some((id, triple)) = report.violation {
            lines.push(format!("  first failure: {id} at {triple:?}"));
        }
        return Ok(Outcome { results: base, violations: true, lines });
    }
    let psi = nijenhuis_infinitesimal(&t, &n_map)?;
    let family = check_lambda_family(&t, &psi, lambdas)?;
    let trivial = certify_trivial(&t, &n_map, lambdas)?;
    if detail {
        lines.push("psi = d1(N):".into());
        lines.extend(sparse_lines(&psi).into_iter().map(|l| format!("  {l}")));
    }
    lines.push(format!("  {:<28} {}", "psi satisfies the axioms", mark(family.psi_is_system)));
    lines.push(format!("  {:<28} {}", "psi is a cocycle", mark(family.psi_cocycle)));
    lines.push(format!("  {:<10} {:<10} {}", "lambda", "T_lambda", "id + lambda N"));
    let mut violations = !family.predicted_valid || !family.agrees;
    for (s, w) in family.samples.iter().zip(&trivial.samples) {
        let witness = match &w.witness {
            TrivialWitness::Holds => "pass".to_string(),
            TrivialWitness::Fails { triple } => format!("FAIL at {triple:?}"),
            TrivialWitness::Singular => "singular".to_string(),
        };
        violations |= !s.valid || matches!(w.witness, TrivialWitness::Fails { .. });
        lines.push(format!("  {:<10} {:<10} {witness}", format(&s.lambda), mark(s.valid)));
    }
    lines.push(format!("  family certified for all lambda: {}", if family.certified && family.predicted_valid { "yes" } else { "no" }));
    lines.push(format!("  trivial for all lambda:          {}", if trivial.certified { "yes" } else { "no" }));
    let mut results = base;
    results["psi"] = sparse_json(&psi);
    results["family"] = serde_json::to_value(&family).expect("serializable");
    results["trivial"] = serde_json::to_value(&trivial).expect("serializable");
    Ok(Outcome { results, violations, lines })
}

fn selftest(seed: u64, count: usize, max_dim: usize) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems = random_valid_systems(&mut rng, count, max_dim);
    let mut lines = vec![format!("{} random systems, seed {seed}", systems.len())];
    lines.push(format!("  {:<24} {:<6} {:<6} {:<10} {:<7} {}", "system", "axioms", "adjoint", "semidirect", "complex", "theorems"));
    let mut entries = Vec::new();
    let mut violations = false;
    for t in &systems {
        let axioms = verify_axioms(t).all_hold();
        let rep = adjoint_representation(t);
        let rep_ok = check_representation(t, &rep)?.all_hold();
        let semi_ok = verify_axioms(&semidirect_sum(t, &rep)?).all_hold();
        let complex_ok = verify_complex(t, &rep)?.all_hold();
        let th = verify_structure_theorems(t);
        let theorems_ok = th.all_hold();
        let failing: Vec<String> = th.failing().iter().map(|c| format!("{}(k={})", c.id, c.k.map_or("-".to_string(), |k| k.to_string()))).collect();
        let ok = axioms && rep_ok && semi_ok && complex_ok && theorems_ok;
        violations |= !ok;
        lines.push(format!(
            "  {:<24} {:<6} {:<7} {:<10} {:<7} {}",
            t.name(),
            mark(axioms),
            mark(rep_ok),
            mark(semi_ok),
            mark(complex_ok),
            mark(theorems_ok)
        ));
        if !failing.is_empty() {
            lines.push(format!("    failing claims: {}", failing.join(", ")));
        }
        entries.push(json!({
            "system": system_summary(t),
            "axioms": axioms,
            "adjoint_representation": rep_ok,
            "semidirect_axioms": semi_ok,
            "complex": complex_ok,
            "theorems": theorems_ok,
            "failing_claims": failing,
        }));
    }
    Ok(Outcome { results: json!({ "seed": seed, "systems": entries }), violations, lines })
}
