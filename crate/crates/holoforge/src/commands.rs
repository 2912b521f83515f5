//! Command implementations behind the CLI, each producing a [`RunReport`].

use std::path::Path;

use holoforge_core::conjugacy::{cyclic_conjugate_field, cyclic_conjugate_ring, verify_witness, RingSearch, Verdict};
use holoforge_core::normal_forms::{is_similar, rcf, similarity_witness, unipotent_partition};
use holoforge_core::oracle::{are_isomorphic, verify_isomorphism, verify_lindo, LindoScope, WITNESS_SAMPLES};
use holoforge_core::Polynomial;
use serde_json::{json, Value};

use crate::error::Result;
use crate::matfile::read_matrix;
use crate::report::{ReportBuilder, RunReport};
use crate::repro::{run_example, Params};
use crate::spec::{group_report, GroupSpec};
use crate::suites::run_suite;

fn poly(f: &Polynomial) -> Value {
    json!({"coeffs": f.coeffs(), "text": f.to_string()})
}

fn path_input(paths: &[&Path]) -> Value {
    json!(paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>())
}

pub fn cmd_rcf(path: &Path) -> Result<RunReport> {
    let a = read_matrix(path)?;
    let mut b = ReportBuilder::new("rcf", path_input(&[path]));
    let r = rcf(&a)?;
    let check = r.transform.mul(&a)?.mul(&r.transform.inverse()?)?;
    b.check("X·a·X⁻¹ equals the form", r.form.to_rows(), check.to_rows());
    b.result("form", r.form.to_rows());
    b.result("transform", r.transform.to_rows());
    b.result("invariant_factors", r.invariant_factors.factors().iter().map(poly).collect::<Vec<_>>());
    Ok(b.finish())
}

pub fn cmd_similar(a_path: &Path, b_path: &Path) -> Result<RunReport> {
    let (a, c) = (read_matrix(a_path)?, read_matrix(b_path)?);
    let mut b = ReportBuilder::new("similar", path_input(&[a_path, b_path]));
    let similar = is_similar(&a, &c)?;
    b.result("similar", similar);
    if similar {
        let x = similarity_witness(&a, &c)?;
        b.check("X·a·X⁻¹ = b", c.to_rows(), x.mul(&a)?.mul(&x.inverse()?)?.to_rows());
        b.result("witness", x.to_rows());
    }
    b.answer(similar);
    Ok(b.finish())
}

pub fn cmd_minpoly(path: &Path) -> Result<RunReport> {
    let a = read_matrix(path)?;
    let mut b = ReportBuilder::new("minpoly", path_input(&[path]));
    let m = a.minpoly()?;
    b.check("m(a) = 0", true, m.eval_matrix(&a)?.is_zero());
    b.result("minpoly", poly(&m));
    b.result("charpoly", poly(&a.charpoly()?));
    let factors: Vec<Value> = m.factor()?.iter().map(|(f, e)| json!({"factor": poly(f), "multiplicity": e})).collect();
    b.result("factors", factors);
    b.result("squarefree", m.is_squarefree()?);
    Ok(b.finish())
}

pub fn cmd_partition(path: &Path) -> Result<RunReport> {
    let a = read_matrix(path)?;
    let mut b = ReportBuilder::new("partition", path_input(&[path]));
    let p = unipotent_partition(&a)?;
    b.check("Σ i·e_i = n", a.rows(), p.dimension());
    b.check("Jordan matrix is similar to the input", true, is_similar(&a, &p.jordan_matrix(a.ring())?)?);
    b.result("partition", p.multiplicities());
    Ok(b.finish())
}

pub fn cmd_holiso(a_path: &Path, b_path: &Path) -> Result<RunReport> {
    let (a, c) = (read_matrix(a_path)?, read_matrix(b_path)?);
    let mut b = ReportBuilder::new("holiso", path_input(&[a_path, b_path]));
    let d = cyclic_conjugate_field(&a, &c)?;
    let iso = d.verdict == Verdict::Conjugate;
    if let Some(w) = &d.witness {
        b.check("witness verified", true, verify_witness(&a, &c, w)?);
        b.result("exponent", w.exponent);
        b.result("conjugator", w.conjugator.to_rows());
    }
    if let Some(s) = &d.separating_invariant {
        b.result("separating_invariant", s.to_string());
    }
    b.result("isomorphic", iso);
    b.answer(iso);
    Ok(b.finish())
}

pub fn cmd_conj_ring(a_path: &Path, b_path: &Path, budget: u64, seed: u64) -> Result<RunReport> {
    let (a, c) = (read_matrix(a_path)?, read_matrix(b_path)?);
    let mut b = ReportBuilder::new("conj-ring", json!({"files": path_input(&[a_path, b_path]), "budget": budget, "seed": seed}));
    let d = cyclic_conjugate_ring(&a, &c, &RingSearch { budget, seed, witness: None })?;
    if let Some(w) = &d.witness {
        b.check("witness verified", true, verify_witness(&a, &c, w)?);
    }
    b.result("decision", serde_json::to_value(&d)?);
    if let Some(s) = &d.separating_invariant {
        b.result("separating_invariant_text", s.to_string());
    }
    match d.verdict {
        Verdict::Conjugate => b.answer(true),
        Verdict::NotConjugate => b.answer(false),
        Verdict::Unknown => {}
    }
    Ok(b.finish())
}

pub fn cmd_group(path: &Path, cap: usize) -> Result<RunReport> {
    let g = GroupSpec::read(path)?.build(cap)?;
    let mut b = ReportBuilder::new("group", path_input(&[path]));
    let r = group_report(&g);
    for (k, v) in serde_json::to_value(&r)?.as_object().expect("struct").iter() {
        b.result(k, v);
    }
    Ok(b.finish())
}

pub fn cmd_oracle_iso(g1: &Path, g2: &Path, budget: u64, cap: usize, seed: u64) -> Result<RunReport> {
    let g = GroupSpec::read(g1)?.build(cap)?;
    let h = GroupSpec::read(g2)?.build(cap)?;
    let mut b = ReportBuilder::new("oracle-iso", json!({"files": path_input(&[g1, g2]), "budget": budget}));
    let r = are_isomorphic(&g, &h, budget)?;
    if let Some(w) = &r.witness {
        b.check("witness verified", true, verify_isomorphism(&g, &h, w, WITNESS_SAMPLES, seed));
        let images: Vec<Value> = g.generators().iter().map(|&x| json!([x, w[x as usize]])).collect();
        b.result("witness", json!({"generator_images": images}));
    }
    b.result("isomorphic", r.isomorphic);
    b.result("spent", r.spent);
    b.answer(r.isomorphic);
    Ok(b.finish())
}

pub fn cmd_verify_lindo(p: u64, n: usize, scope: LindoScope, budget: u64) -> Result<RunReport> {
    let mut b = ReportBuilder::new("verify-lindo", json!({"p": p, "n": n, "scope": scope, "budget": budget}));
    let r = verify_lindo(p, n, scope, budget)?;
    b.result("pairs", r.pairs);
    b.result("isomorphic_pairs", r.isomorphic_pairs);
    let dis: Vec<Value> = r.disagreements.iter().map(|(x, y)| json!([x.to_rows(), y.to_rows()])).collect();
    b.check("disagreements", 0, dis.len());
    b.result("disagreements", dis);
    Ok(b.finish())
}

pub fn cmd_example(name: &str, params: Params, cap: usize) -> Result<RunReport> {
    run_example(name, params, cap)
}

pub fn cmd_verify(suite: &str, seed: u64, cases: usize) -> Result<RunReport> {
    run_suite(suite, seed, cases)
}

/// `all`, `reps` or `max-order:K`.
pub fn parse_scope(s: &str) -> Option<LindoScope> {
    match s {
        "all" => Some(LindoScope::All),
        "reps" => Some(LindoScope::ClassRepresentatives),
        _ => s.strip_prefix("max-order:")?.parse().ok().map(LindoScope::MaxOrder),
    }
}
