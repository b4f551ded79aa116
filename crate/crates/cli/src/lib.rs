//! Command implementations behind the `liesym` binary. Each command returns
//! its rendered output and an exit code; nothing here touches the workspace file.

pub mod workspace;

use std::fmt::Write as _;
use std::str::FromStr;

use liesym_core::classify::{build_table, ClassificationTable};
use liesym_core::determining::{
    check_equivalence_family, determining_system, equivalence_context, equivalence_lift, equivalence_residuals,
    symmetry_context, EquivalenceField,
};
use liesym_core::error::{Error, Result};
use liesym_core::expr::{Bindings, Expr, Rational};
use liesym_core::fixtures::{parse_table, table_context};
use liesym_core::jet::{JetSpace, T, U, X};
use liesym_core::lie_algebra::{compare_tables, TableComparison, PARAM};
use liesym_core::optimal::render_vector;
use serde_json::json;

pub use workspace::Workspace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DELTA: i32 = 1;
pub const EXIT_ALGEBRA: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (text, latex, json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn new(output: String, pass: bool) -> Self {
        Outcome {
            output,
            code: if pass { EXIT_OK } else { EXIT_DELTA },
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedAlgebra(_) => EXIT_UNSUPPORTED,
        _ => EXIT_ALGEBRA,
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn render_grid(names: &[String], cells: &[Vec<String>]) -> String {
    let mut widths = vec![names.iter().map(String::len).max().unwrap_or(0)];
    for (j, n) in names.iter().enumerate() {
        let w = cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0);
        widths.push(w.max(n.len()));
    }
    let mut out = String::new();
    let mut line = |row: Vec<&str>| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join(" | ").trim_end());
    };
    line(std::iter::once("").chain(names.iter().map(String::as_str)).collect());
    line(widths.iter().map(|_| "").collect());
    for (n, r) in names.iter().zip(cells) {
        line(std::iter::once(n.as_str()).chain(r.iter().map(String::as_str)).collect());
    }
    out.lines()
        .enumerate()
        .map(|(i, l)| {
            if i == 1 {
                widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-")
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

fn latex_grid(corner: &str, names: &[String], cells: &[Vec<String>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\begin{{tabular}}{{l|{}}}", "l".repeat(names.len()));
    let _ = writeln!(out, "{corner} & {} \\\\ \\hline", names.join(" & "));
    for (n, r) in names.iter().zip(cells) {
        let _ = writeln!(out, "{n} & {} \\\\", r.iter().map(|c| format!("${c}$")).collect::<Vec<_>>().join(" & "));
    }
    let _ = writeln!(out, "\\end{{tabular}}");
    out
}

fn strings(t: &[Vec<Expr>]) -> Vec<Vec<String>> {
    t.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn comparison_text(label: &str, c: &TableComparison) -> String {
    let mut out = String::new();
    if c.passed() {
        let _ = writeln!(out, "PASS: {}/{} cells match {label}", c.matched, c.total);
    } else {
        let _ = writeln!(out, "FAIL: {}/{} cells match {label}", c.matched, c.total);
        for d in &c.mismatches {
            let _ = writeln!(out, "  ({}, {}): printed {}, computed {}", d.row, d.col, d.printed, d.computed);
        }
    }
    let _ = writeln!(out, "orientation: {}", c.orientation);
    out
}

fn table_command(
    ws: &Workspace,
    format: Format,
    label: &str,
    corner: &str,
    computed: Vec<Vec<Expr>>,
    printed: Option<&[Vec<String>]>,
) -> Result<Outcome> {
    let names = ws.names();
    let comparison = printed.map(|p| Ok::<_, Error>(compare_tables(&parse_table(p, &names)?, &computed))).transpose()?;
    let cells = strings(&computed);
    let pass = comparison.as_ref().is_none_or(TableComparison::passed);
    let output = match format {
        Format::Json => pretty(&json!({ "names": names, "cells": cells, "comparison": comparison })),
        Format::Latex => latex_grid(corner, &names, &cells),
        Format::Text => {
            let mut s = render_grid(&names, &cells);
            match &comparison {
                Some(c) => s.push_str(&comparison_text(label, c)),
                None => s.push_str("no fixture declared\n"),
            }
            s
        }
    };
    Ok(Outcome::new(output, pass))
}

pub fn cmd_commutators(ws: &Workspace, format: Format) -> Result<Outcome> {
    let alg = ws.algebra()?;
    let fx = ws.fixtures()?;
    table_command(
        ws,
        format,
        "Table 1",
        "[,]",
        alg.commutator_cells(),
        fx.as_ref().map(|f| f.table1.as_slice()),
    )
}

/// `at` substitutes a value for the group parameter and skips the fixture comparison.
pub fn cmd_adjoint(ws: &Workspace, format: Format, at: Option<&str>) -> Result<Outcome> {
    let alg = ws.algebra()?;
    let table = alg.adjoint_table()?;
    match at {
        Some(v) => {
            let value = table_context(&ws.names())?.parse(v)?;
            let b = Bindings::new().bind_sym(PARAM, value);
            let cells = table
                .iter()
                .map(|r| r.iter().map(|e| e.substitute(&b).map_err(Error::from)).collect())
                .collect::<Result<Vec<Vec<Expr>>>>()?;
            table_command(ws, format, "", "Ad", cells, None)
        }
        None => {
            let fx = ws.fixtures()?;
            table_command(ws, format, "Table 2", "Ad", table, fx.as_ref().map(|f| f.table2.as_slice()))
        }
    }
}

fn base_field(ws: &Workspace, name: &str) -> Result<liesym_core::field::VectorField> {
    let v = ws
        .field(name)
        .ok_or_else(|| Error::Invalid(format!("no basis field named `{name}`")))?;
    for c in [X, T, U] {
        if !v.coords().iter().any(|d| &**d == c) {
            return Err(Error::Invalid(format!("workspace has no `{c}` coordinate")));
        }
    }
    Ok(v.clone())
}

pub fn cmd_determine(ws: &Workspace, format: Format, name: &str, f: &str, g: &str) -> Result<Outcome> {
    let space = JetSpace::default();
    let ctx = symmetry_context(&space);
    let (f, g) = (ctx.parse(f)?, ctx.parse(g)?);
    let field = base_field(ws, name)?.restrict(&[X, T, U]);
    let sys = determining_system(&space, &field, &f, &g)?;
    let output = match format {
        Format::Json => pretty(&json!({
            "field": name,
            "operator": field.to_string(),
            "f": f.to_string(),
            "g": g.to_string(),
            "residual": sys.residual().to_string(),
            "equations": sys.equations().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "field: {name} = {field}");
            let _ = writeln!(s, "equation: u_t = ({f})*u_x^2 + ({g})*u_xx");
            let _ = writeln!(s, "residual: {}", sys.residual());
            if !sys.is_empty() {
                let _ = writeln!(s, "determining equations: {}", sys.equations().len());
                for e in sys.equations() {
                    let _ = writeln!(s, "  {e}");
                }
            }
            s
        }
    };
    Ok(Outcome::new(output, true))
}

pub fn cmd_equivalence_check(ws: &Workspace, format: Format) -> Result<Outcome> {
    let space = JetSpace::default();
    let mut generators = Vec::new();
    let mut pass = true;
    for (name, v) in ws.names().iter().zip(ws.fields()) {
        let y = EquivalenceField::from_field(v)?;
        let r = equivalence_residuals(&space, &y)?;
        let lift = equivalence_lift(&space, y.base())?;
        pass &= r.all_zero();
        generators.push((name.clone(), v.to_string(), r, lift));
    }
    let ctx = equivalence_context(&space);
    let family = check_equivalence_family(
        &space,
        &ctx.parse("a(x)")?,
        &ctx.parse("b(x)")?,
        &ctx.parse("c1")?,
        &ctx.parse("c2")?,
    )?;
    pass &= family.exact_as_printed();
    let output = match format {
        Format::Json => pretty(&json!({
            "generators": generators.iter().map(|(n, v, r, l)| json!({
                "name": n,
                "operator": v,
                "generator": r.all_zero(),
                "residuals": { "main": r.main.to_string(), "f_t": r.ft.to_string(), "g_t": r.gt.to_string() },
                "forced": { "mu": l.mu.to_string(), "nu": l.nu.to_string(), "consistent": l.is_consistent() },
            })).collect::<Vec<_>>(),
            "family": family,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "basis fields as equivalence generators");
            for (n, v, r, l) in &generators {
                if r.all_zero() {
                    let _ = writeln!(s, "  {n} = {v}: generator");
                } else {
                    let _ = writeln!(s, "  {n} = {v}: not a generator");
                    for (label, e) in [("main", &r.main), ("f_t", &r.ft), ("g_t", &r.gt)] {
                        if !e.is_zero() {
                            let _ = writeln!(s, "    {label} residual: {e}");
                        }
                    }
                    if l.is_consistent() {
                        let _ = writeln!(s, "    forced by its (x,t,u) part: mu = {}, nu = {}", l.mu, l.nu);
                    }
                }
            }
            let _ = writeln!(s, "family a(x), b(x), c1, c2");
            let _ = writeln!(s, "  printed mu: {}", family.printed_mu);
            let _ = writeln!(s, "  printed nu: {}", family.printed_nu);
            let _ = writeln!(s, "  printed constraint: {} = 0", family.printed_constraint);
            let _ = writeln!(s, "  derived mu: {}", family.derived.mu);
            let _ = writeln!(s, "  derived nu: {}", family.derived.nu);
            for c in &family.derived.constraints {
                let _ = writeln!(s, "  derived constraint: {c}");
            }
            let _ = writeln!(s, "  residual of the printed family: {} equation(s)", family.system.equations().count());
            for (label, e) in family.system.equations() {
                let _ = writeln!(s, "    {label}: {e}");
            }
            if family.deltas.is_empty() {
                let _ = writeln!(s, "  no deltas");
            }
            for d in &family.deltas {
                let _ = writeln!(s, "  delta: {d}");
            }
            s
        }
    };
    Ok(Outcome::new(output, pass))
}

pub fn parse_vector(text: &str) -> std::result::Result<Vec<Rational>, String> {
    text.split(',')
        .map(|p| Rational::from_str(p.trim()).map_err(|e| format!("`{}`: {e}", p.trim())))
        .collect()
}

pub enum OptimalRequest<'a> {
    Vector(&'a [Rational]),
    Survey { n: usize, seed: u64 },
}

pub fn cmd_optimal(ws: &Workspace, format: Format, req: OptimalRequest<'_>) -> Result<Outcome> {
    let sys = ws.optimal_system()?;
    match req {
        OptimalRequest::Vector(v) => {
            if v.len() != sys.algebra().dim() {
                return Err(Error::Invalid(format!(
                    "vector {} needs {} entries",
                    render_vector(v),
                    sys.algebra().dim()
                )));
            }
            let r = sys.normalize_case_tree(v)?;
            let pass = r.representative.is_some() && r.discrepancies.is_empty();
            let output = match format {
                Format::Json => pretty(&serde_json::to_value(&r).expect("report")),
                _ => r.to_string(),
            };
            Ok(Outcome::new(output, pass))
        }
        OptimalRequest::Survey { n, seed } => {
            let s = sys.survey(n, seed)?;
            let conjugacies = sys.conjugacies()?;
            let pass = s.unmatched == 0 && s.discrepancies().next().is_none() && conjugacies.is_empty();
            let output = match format {
                Format::Json => pretty(&json!({ "survey": s, "conjugate_representatives": conjugacies })),
                _ => {
                    let mut out = format!("{s}every word certified by exact replay\n");
                    if !conjugacies.is_empty() {
                        let _ = writeln!(out, "listed representatives joined by one adjoint step");
                        for c in &conjugacies {
                            let _ = writeln!(out, "  {c}");
                        }
                    }
                    out
                }
            };
            Ok(Outcome::new(output, pass))
        }
    }
}

pub fn classification(ws: &Workspace) -> Result<ClassificationTable> {
    let sys = ws.optimal_system()?;
    let fx = ws.fixtures()?;
    build_table(&JetSpace::default(), &sys, fx.as_ref())
}

pub fn cmd_classify(ws: &Workspace, format: Format) -> Result<Outcome> {
    let t = classification(ws)?;
    let pass = t.all_verified() && t.deltas.is_empty();
    let output = match format {
        Format::Json => pretty(&serde_json::to_value(&t).expect("table")),
        Format::Latex => {
            let mut s = t.render_latex();
            for d in &t.deltas {
                let _ = writeln!(s, "% row {} {}: printed {} | machine {}", d.row, d.column, d.printed, d.machine);
            }
            s
        }
        Format::Text => t.render_text(),
    };
    Ok(Outcome::new(output, pass))
}

