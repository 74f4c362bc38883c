//! Verification suite runners. Each returns the shared report type; the
//! binary decides between JSON and a rendered table.

use crate::config::RunConfig;
use gassym_core::catalog::{
    builtin_catalog, load_catalog, CatalogEntry, CatalogPolicy, EntryCheck,
};
use gassym_core::expr::{is_zero, Expr, FuncDef, ZeroPolicy};
use gassym_core::gasdyn::{
    build_blowup_family, build_isochoric_family, pressure_residual, residuals, verify_reduction,
    FamilyParams,
};
use gassym_core::lie::{
    basis, compute_structure_table, generator_name, reference_table, verify_automorphism,
    verify_jacobi, AUTOMORPHISM_FAMILIES, DIM,
};
use gassym_core::report::{ReportEntry, VerificationReport};
use rayon::prelude::*;
use std::path::Path;
use std::time::Instant;

fn timed(mut entry: ReportEntry, start: Instant) -> ReportEntry {
    entry.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    entry
}

pub fn run_commutators(cfg: &RunConfig) -> VerificationReport {
    let reference = reference_table();
    let computed = compute_structure_table(&basis(), cfg.seed);
    let mut entries = Vec::new();
    match computed {
        Err(e) => entries.push(ReportEntry::fail("structure table", "error", e.to_string())),
        Ok(table) => {
            for i in 0..DIM {
                for j in (i + 1)..DIM {
                    let start = Instant::now();
                    let subject = format!("[{}, {}]", generator_name(i), generator_name(j));
                    let matches = (0..DIM).all(|k| table.c(i, j, k) == reference.c(i, j, k));
                    let entry = if matches {
                        ReportEntry::pass(subject, "matches reference")
                    } else {
                        let got: Vec<String> = (0..DIM)
                            .filter(|&k| !table.is_zero_entry(i, j, k))
                            .map(|k| format!("{} {}", table.c(i, j, k), generator_name(k)))
                            .collect();
                        ReportEntry::fail(subject, "mismatch", got.join(" + "))
                    };
                    entries.push(timed(entry, start));
                }
            }
        }
    }
    VerificationReport::new("commutators", cfg.seed, cfg.samples, entries)
}

pub fn run_jacobi(cfg: &RunConfig) -> VerificationReport {
    let table = reference_table();
    let start = Instant::now();
    let outcome = verify_jacobi(&table);
    let mut entries = Vec::new();
    let per = start.elapsed().as_secs_f64() * 1e3 / 220.0;
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            for k in (j + 1)..DIM {
                let subject = format!(
                    "({}, {}, {})",
                    generator_name(i),
                    generator_name(j),
                    generator_name(k)
                );
                let bad = outcome
                    .violations
                    .iter()
                    .find(|v| (v.0, v.1, v.2) == (i, j, k));
                let mut entry = match bad {
                    None => ReportEntry::pass(subject, "identity holds"),
                    Some(v) => ReportEntry::fail(
                        subject,
                        "violated",
                        format!("first failing target index {}", v.3),
                    ),
                };
                entry.wall_time_ms = per;
                entries.push(entry);
            }
        }
    }
    VerificationReport::new("jacobi", cfg.seed, cfg.samples, entries)
}

pub fn run_automorphisms(cfg: &RunConfig) -> VerificationReport {
    let table = reference_table();
    let entries: Vec<ReportEntry> = AUTOMORPHISM_FAMILIES
        .par_iter()
        .map(|family| {
            let start = Instant::now();
            let outcome = verify_automorphism(family, &table, cfg.samples, cfg.seed);
            let entry = if outcome.passed() {
                ReportEntry::pass(
                    *family,
                    format!("bracket-preserving over {} draws", outcome.draws),
                )
            } else {
                let (draw, i, j) = outcome.failure.unwrap();
                ReportEntry::fail(
                    *family,
                    "bracket broken",
                    format!(
                        "draw {draw}, pair [{}, {}]",
                        generator_name(i),
                        generator_name(j)
                    ),
                )
            };
            timed(entry, start)
        })
        .collect();
    VerificationReport::new("automorphisms", cfg.seed, cfg.samples, entries)
}

/// Normalizes an id query so plain ASCII spellings match the catalog ids.
fn normalize_id(s: &str) -> String {
    s.replace("!=", "≠").replace("eps", "ε").replace("^2", "²")
}

pub fn run_subalgebras(
    cfg: &RunConfig,
    id_filter: Option<&str>,
    catalog_path: Option<&Path>,
) -> Result<VerificationReport, String> {
    let catalog: Vec<CatalogEntry> = match catalog_path {
        Some(path) => load_catalog(path).map_err(|e| e.to_string())?,
        None => builtin_catalog(),
    };
    let selected: Vec<&CatalogEntry> = match id_filter {
        None => catalog.iter().collect(),
        Some(q) => {
            let q = normalize_id(q);
            let hits: Vec<&CatalogEntry> = catalog
                .iter()
                .filter(|e| e.spec.id.starts_with(&q))
                .collect();
            if hits.is_empty() {
                return Err(format!("no catalog entry matches id '{q}'"));
            }
            hits
        }
    };
    let table = reference_table();
    let policy = CatalogPolicy {
        draws: cfg.samples,
        seed: cfg.seed,
        independence_points: 3,
        rank_threshold: 1e-8,
    };
    let entries: Vec<ReportEntry> = selected
        .par_iter()
        .flat_map(|entry| {
            let start = Instant::now();
            let check = EntryCheck::run(entry, &table, &policy);
            let id = &check.id;
            let mut out = Vec::with_capacity(3);
            out.push(match &check.closure {
                Ok(()) => ReportEntry::pass(format!("{id} closure"), "bracket rank <= 4"),
                Err(e) => ReportEntry::fail(format!("{id} closure"), "not closed", e.clone()),
            });
            let bad: Vec<String> = check
                .annihilation
                .iter()
                .filter(|(_, _, v)| !v.is_zero())
                .map(|(g, i, v)| format!("{g} on {i}: witness {:?}", v.witness))
                .collect();
            let verdicts = check
                .annihilation
                .iter()
                .map(|(_, _, v)| v.kind_str())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()
                .join(", ");
            out.push(if bad.is_empty() {
                ReportEntry::pass(
                    format!("{id} annihilation"),
                    format!("20 pairs: {verdicts}"),
                )
            } else {
                ReportEntry::fail(
                    format!("{id} annihilation"),
                    "candidate erratum",
                    bad.join("; "),
                )
            });
            out.push(match &check.independence {
                Ok(ranks) => ReportEntry::pass(
                    format!("{id} independence"),
                    format!("Jacobian rank 5 at {} points", ranks.len()),
                ),
                Err(e) => {
                    ReportEntry::fail(format!("{id} independence"), "rank-deficient", e.clone())
                }
            });
            let per = start.elapsed().as_secs_f64() * 1e3 / 3.0;
            for e in &mut out {
                e.wall_time_ms = per;
            }
            out
        })
        .collect();
    Ok(VerificationReport::new(
        "subalgebras",
        cfg.seed,
        cfg.samples,
        entries,
    ))
}

pub fn run_reduction(cfg: &RunConfig) -> VerificationReport {
    let start = Instant::now();
    let diffs = verify_reduction(&FamilyParams::symbolic());
    let entries = diffs
        .into_iter()
        .map(|(name, diff)| {
            let entry = if diff.is_zero_expr() {
                ReportEntry::pass(name, "reduced equation reproduced exactly")
            } else {
                ReportEntry::fail(name, "mismatch", diff.to_string())
            };
            timed(entry, start)
        })
        .collect();
    VerificationReport::new("reduction", cfg.seed, cfg.samples, entries)
}

pub struct SolutionArgs {
    pub family: String,
    pub gamma: Option<u8>,
    pub phi: Option<FuncDef>,
    pub f: Option<FuncDef>,
}

pub fn run_solution(cfg: &RunConfig, args: &SolutionArgs) -> Result<VerificationReport, String> {
    let gamma = match args.gamma {
        None => Expr::sym("gamma"),
        Some(0) => Expr::zero(),
        Some(1) => Expr::one(),
        Some(other) => return Err(format!("gamma must be 0 or 1, got {other}")),
    };
    let params = FamilyParams::new(Expr::sym("a"), Expr::sym("b"), gamma, Expr::sym("rho0"))
        .map_err(|e| e.to_string())?;
    let fields = match args.family.as_str() {
        "isochoric" => build_isochoric_family(&params, args.phi.as_ref()),
        "blowup" => build_blowup_family(&params, args.phi.as_ref(), args.f.as_ref()),
        other => return Err(format!("unknown family '{other}'")),
    }
    .map_err(|e| e.to_string())?;

    let policy = ZeroPolicy::new(cfg.samples, cfg.seed);
    let mut entries = Vec::new();
    let r = residuals(&fields);
    for (name, e) in r.named() {
        let start = Instant::now();
        let verdict = is_zero(e, &policy);
        let entry = if verdict.is_zero() {
            ReportEntry::pass(name, verdict.kind_str())
        } else {
            ReportEntry::fail(
                name,
                verdict.kind_str(),
                format!("{:?}", verdict.witness.map(|w| w.scalars)),
            )
        };
        entries.push(timed(entry, start));
    }
    let start = Instant::now();
    let pf = pressure_residual(&fields);
    let verdict = is_zero(&pf, &policy);
    let entry = if verdict.is_zero() {
        ReportEntry::pass("pressure-form", verdict.kind_str())
    } else {
        ReportEntry::fail(
            "pressure-form",
            verdict.kind_str(),
            format!("{:?}", verdict.witness.map(|w| w.scalars)),
        )
    };
    entries.push(timed(entry, start));
    Ok(VerificationReport::new(
        format!("solution/{}", args.family),
        cfg.seed,
        cfg.samples,
        entries,
    ))
}

pub fn render_table(report: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "suite: {}   seed: {}   samples: {}\n",
        report.suite, report.seed, report.samples
    ));
    let width = report
        .entries
        .iter()
        .map(|e| e.subject.len())
        .max()
        .unwrap_or(8)
        .max(8);
    for e in &report.entries {
        let status = match e.status {
            gassym_core::report::Status::Pass => "pass",
            gassym_core::report::Status::Fail => "FAIL",
        };
        out.push_str(&format!(
            "  {:width$}  {}  {}\n",
            e.subject,
            status,
            e.verdict.as_deref().unwrap_or(""),
            width = width
        ));
        if let Some(w) = &e.witness {
            out.push_str(&format!(
                "  {:width$}        witness: {w}\n",
                "",
                width = width
            ));
        }
    }
    out.push_str(&format!(
        "summary: {} passed, {} failed\n",
        report.summary.pass, report.summary.fail
    ));
    out
}
