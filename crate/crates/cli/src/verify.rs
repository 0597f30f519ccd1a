//! Running registry identities over a grid and summarising the outcome.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use umbral_core::mixed::{
    identity_eval_range, registry, required_order, Aux, AuxDomain, Discrepancy, Form, IdentityDescriptor,
    IdentityKind, IdentityReport, LambdaRule, MixedParams, Point, Status, Suite, VariantKind, Workbench, YValue,
};
use umbral_core::Rational;

use crate::grid::GridConfig;
use crate::UsageError;

/// Where the printed right-hand side (or one variant) failed first.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub params: MixedParams,
    #[serde(skip_serializing_if = "aux_is_empty")]
    pub aux: Aux,
    #[serde(flatten)]
    pub discrepancy: Discrepancy,
}

fn aux_is_empty(aux: &Aux) -> bool {
    aux.s.is_none() && aux.y.is_none()
}

#[derive(Clone, Debug, Serialize)]
pub struct FormSummary {
    pub form: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<VariantKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_token: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replacement: Option<String>,
    pub status: Status,
    pub points: usize,
    pub passed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_fail: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitySection {
    pub id: String,
    pub suite: Suite,
    pub kind: IdentityKind,
    pub statement: String,
    pub n_min: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolved_by: Option<String>,
    pub printed: FormSummary,
    pub variants: Vec<FormSummary>,
    /// One report per grid point for the printed form.
    pub reports: Vec<IdentityReport>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub errata_resolved: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub grid: GridConfig,
    pub working_order: usize,
    pub identities: Vec<IdentitySection>,
    pub summary: Summary,
    pub success: bool,
}

/// Resolves a comma list of ids, or every id when `all` is set.
pub fn select(ids: &[String], all: bool) -> Result<Vec<&'static IdentityDescriptor>, UsageError> {
    if all {
        return Ok(registry().iter().collect());
    }
    if ids.is_empty() {
        return Err(UsageError("pass --identities <ids> or --all".into()));
    }
    let mut out: Vec<&'static IdentityDescriptor> = Vec::new();
    for id in ids {
        let d = umbral_core::mixed::find(id.trim()).map_err(|e| UsageError(e.to_string()))?;
        if !out.iter().any(|o| o.id == d.id) {
            out.push(d);
        }
    }
    // registry order keeps reports stable regardless of the flag order
    out.sort_by_key(|d| registry().iter().position(|r| r.id == d.id));
    Ok(out)
}

pub fn select_suite(suite: Suite) -> Vec<&'static IdentityDescriptor> {
    registry().iter().filter(|d| d.suite == suite).collect()
}

fn lambdas_for(desc: &IdentityDescriptor, grid: &GridConfig) -> Vec<Rational> {
    match desc.lambda {
        LambdaRule::Any => grid.lambda.clone(),
        LambdaRule::MustBeOne => vec![Rational::one()],
        LambdaRule::NotOne => grid.lambda.iter().filter(|l| !l.is_one()).cloned().collect(),
    }
}

fn aux_for(desc: &IdentityDescriptor, grid: &GridConfig) -> Vec<Aux> {
    match desc.aux {
        AuxDomain::None => vec![Aux::none()],
        AuxDomain::S => grid.s.iter().map(|&s| Aux::with_s(s)).collect(),
        AuxDomain::Y => grid
            .y
            .iter()
            .map(|y| Aux::with_y(YValue::Point(y.clone())))
            .chain(std::iter::once(Aux::with_y(YValue::Symbolic)))
            .collect(),
    }
}

/// Working order: enough for every selected identity, raised further by
/// `order_floor` when given.
pub fn working_order(descs: &[&IdentityDescriptor], n_max: usize, order_floor: Option<usize>) -> usize {
    let needed = descs.iter().map(|d| required_order(d, n_max)).max().unwrap_or(n_max + 2);
    needed.max(order_floor.unwrap_or(0))
}

struct Outcome {
    desc: usize,
    point: Point,
    /// Printed form first, then each variant in declaration order.
    forms: Vec<IdentityReport>,
}

pub fn run(
    descs: &[&'static IdentityDescriptor],
    grid: &GridConfig,
    order_floor: Option<usize>,
) -> anyhow::Result<VerifyReport> {
    for d in descs {
        if grid.n_max < d.min_n {
            return Err(UsageError(format!("{} needs --n-max >= {}, got {}", d.id, d.min_n, grid.n_max)).into());
        }
    }
    let order = working_order(descs, grid.n_max, order_floor);

    // Every (k, lambda, mu) any selected identity needs, in grid order.
    let mut triples: Vec<MixedParams> = Vec::new();
    for d in descs {
        for lambda in lambdas_for(d, grid) {
            for &k in &grid.k {
                for &mu in &grid.mu {
                    let p = MixedParams::new(k, lambda.clone(), mu);
                    if !triples.contains(&p) {
                        triples.push(p);
                    }
                }
            }
        }
    }

    let per_triple: Vec<Vec<Outcome>> = triples
        .par_iter()
        .map(|params| -> anyhow::Result<Vec<Outcome>> {
            let wb = Workbench::new(order);
            let mut out = Vec::new();
            for (di, d) in descs.iter().enumerate() {
                if !d.lambda.admits(&params.lambda) {
                    continue;
                }
                for aux in aux_for(d, grid) {
                    let point = Point { params: params.clone(), aux };
                    let mut forms = vec![identity_eval_range(d, Form::Printed, &wb, &point, grid.n_max)?];
                    for vi in 0..d.variants.len() {
                        forms.push(identity_eval_range(d, Form::Variant(vi), &wb, &point, grid.n_max)?);
                    }
                    out.push(Outcome { desc: di, point, forms });
                }
            }
            Ok(out)
        })
        .collect::<anyhow::Result<_>>()?;

    let mut sections = Vec::with_capacity(descs.len());
    let mut summary = Summary::default();
    for (di, d) in descs.iter().enumerate() {
        let outcomes: Vec<&Outcome> = per_triple.iter().flatten().filter(|o| o.desc == di).collect();
        let summarize = |fi: usize| -> FormSummary {
            let passed = outcomes.iter().filter(|o| o.forms[fi].status == Status::Verified).count();
            let first_fail = outcomes.iter().find_map(|o| {
                o.forms[fi].first_fail.clone().map(|discrepancy| Witness {
                    params: o.point.params.clone(),
                    aux: o.point.aux.clone(),
                    discrepancy,
                })
            });
            let variant = fi.checked_sub(1).map(|vi| &d.variants[vi]);
            FormSummary {
                form: if fi == 0 { "printed".into() } else { Form::Variant(fi - 1).label(d) },
                kind: variant.map(|v| v.kind),
                printed_token: variant.map(|v| v.printed.to_string()),
                replacement: variant.map(|v| v.replacement.to_string()),
                status: if passed == outcomes.len() { Status::Verified } else { Status::Failed },
                points: outcomes.len(),
                passed,
                first_fail,
            }
        };
        let printed = summarize(0);
        let variants: Vec<FormSummary> = (1..=d.variants.len()).map(summarize).collect();
        let (status, resolved_by) = if printed.status == Status::Verified {
            (Status::Verified, None)
        } else if d.suite == Suite::B {
            match variants
                .iter()
                .find(|v| v.kind == Some(VariantKind::Correction) && v.status == Status::Verified)
            {
                Some(v) => (Status::ErrataResolved, Some(v.form.clone())),
                None => (Status::Failed, None),
            }
        } else {
            (Status::Failed, None)
        };
        match status {
            Status::Verified => summary.verified += 1,
            Status::ErrataResolved => summary.errata_resolved += 1,
            Status::Failed => summary.failed += 1,
        }
        sections.push(IdentitySection {
            id: d.id.to_string(),
            suite: d.suite,
            kind: d.kind,
            statement: d.statement.to_string(),
            n_min: d.min_n,
            status,
            resolved_by,
            printed,
            variants,
            reports: outcomes.iter().map(|o| o.forms[0].clone()).collect(),
        });
    }
    let success = summary.failed == 0;
    Ok(VerifyReport { grid: grid.clone(), working_order: order, identities: sections, summary, success })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::ErrataResolved => "errata-resolved",
        Status::Failed => "FAILED",
    }
}

fn describe_witness(w: &Witness) -> String {
    let mut s = format!("k={}, lambda={}, mu={}", w.params.k, w.params.lambda, w.params.mu);
    if let Some(v) = w.aux.s {
        let _ = write!(s, ", s={v}");
    }
    if let Some(y) = &w.aux.y {
        match y {
            YValue::Point(y) => {
                let _ = write!(s, ", y={y}");
            }
            YValue::Symbolic => s.push_str(", y symbolic"),
        }
    }
    let d = &w.discrepancy;
    let _ = write!(s, ", n={}", d.n);
    if let Some(m) = d.m {
        let _ = write!(s, ", m={m}");
    } else {
        let _ = write!(s, ", coefficient of x^{}", d.coeff_index);
        if let Some(j) = d.y_power {
            let _ = write!(s, " y^{j}");
        }
    }
    let _ = write!(s, ": lhs = {}, rhs = {}", d.lhs, d.rhs);
    s
}

/// One line per identity.
pub fn render_summary(report: &VerifyReport) -> String {
    let mut out = String::new();
    for s in &report.identities {
        let _ = write!(
            out,
            "{:<6} suite {:?}  {:<16} printed {}/{}",
            s.id,
            s.suite,
            status_word(s.status),
            s.printed.passed,
            s.printed.points
        );
        if let Some(r) = &s.resolved_by {
            let _ = write!(out, "  [{r}]");
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "{} verified, {} errata-resolved, {} failed (n <= {}, working order {})",
        report.summary.verified, report.summary.errata_resolved, report.summary.failed, report.grid.n_max, report.working_order
    );
    out
}

/// Human-readable errata document.
pub fn render_errata(report: &VerifyReport) -> String {
    let mut out = String::new();
    let g = &report.grid;
    let _ = writeln!(out, "ERRATA REPORT");
    let _ = writeln!(
        out,
        "grid: k {:?}, lambda [{}], mu {:?}, s {:?}, y [{}], n <= {}",
        g.k,
        join(&g.lambda),
        g.mu,
        g.s,
        join(&g.y),
        g.n_max
    );
    let _ = writeln!(out, "ground truth: generating-function expansion, exact rational arithmetic\n");

    let _ = writeln!(out, "== Suite A: identities required to hold as printed ==");
    for s in report.identities.iter().filter(|s| s.suite == Suite::A) {
        let _ = writeln!(out, "{:<6} {} ({}/{} points); no correction proposed", s.id, status_word(s.status), s.printed.passed, s.printed.points);
        if let Some(w) = &s.printed.first_fail {
            let _ = writeln!(out, "       witness: {}", describe_witness(w));
        }
    }

    let _ = writeln!(out, "\n== Suite B: long displays checked for transcription errors ==");
    for s in report.identities.iter().filter(|s| s.suite == Suite::B) {
        let _ = writeln!(out, "\n{}  {}", s.id, s.statement);
        let _ = writeln!(out, "  printed form: {} at {}/{} points", status_word(s.printed.status), s.printed.passed, s.printed.points);
        if let Some(w) = &s.printed.first_fail {
            let _ = writeln!(out, "    witness: {}", describe_witness(w));
        }
        for v in &s.variants {
            let _ = writeln!(out, "  {}: {} at {}/{} points", v.form, status_word(v.status), v.passed, v.points);
            if let Some(w) = &v.first_fail {
                let _ = writeln!(out, "    witness: {}", describe_witness(w));
            }
        }
        let resolution = match (&s.status, &s.resolved_by) {
            (Status::ErrataResolved, Some(r)) => format!("errata-resolved ({r})"),
            (st, _) => status_word(*st).to_string(),
        };
        let _ = writeln!(out, "  resolution: {resolution}");
    }
    let _ = writeln!(
        out,
        "\n{} verified as printed, {} errata-resolved, {} unresolved",
        report.summary.verified, report.summary.errata_resolved, report.summary.failed
    );
    out
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
