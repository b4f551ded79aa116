//! Classification rows: project optimal-system operators to `(x, u, f, g)`,
//! take invariants in closed form, solve for `f` and `g`, and check every
//! listed operator against the resulting equation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::determining::{equivalence_lift, symmetry_residual, F, G};
use crate::error::{Error, Result};
use crate::expr::{ser_rational, Bindings, Context, Expr, LinearForm, Rational, Var};
use crate::field::{join_signed, scaled_symbol, VectorField};
use crate::fixtures::{FixtureSet, PrintedRow};
use crate::jet::{JetSpace, T, U, X};
use crate::linalg;
use crate::optimal::OptimalSystem;

pub const PHI: &str = "Phi";
pub const PSI: &str = "Psi";
const PROJECTED: [&str; 4] = [X, U, F, G];
const BASE: [&str; 3] = [T, X, U];

/// `α ∂_x + (β u + β₀) ∂_u + γ f ∂_f + δ g ∂_g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectedOperator {
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub beta: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub beta0: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub delta: Rational,
}

fn constant_of(e: &Expr, what: &str) -> Result<Rational> {
    e.as_constant()
        .ok_or_else(|| Error::Shape(format!("{what} coefficient `{e}` is not constant")))
}

impl ProjectedOperator {
    pub fn from_field(v: &VectorField) -> Result<Self> {
        let linear = |dir: &str| -> Result<(Rational, Rational)> {
            let c = v.coeff(dir);
            let slope = constant_of(&c.differentiate(&Var::sym(dir)), dir)?;
            let rest = &c - &(&Expr::sym(dir) * &Expr::constant(slope.clone()));
            Ok((slope, constant_of(&rest, dir)?))
        };
        let alpha = constant_of(&v.coeff(X), X)?;
        let (beta, beta0) = linear(U)?;
        let (gamma, f0) = linear(F)?;
        let (delta, g0) = linear(G)?;
        if !f0.is_zero() || !g0.is_zero() {
            return Err(Error::Shape(format!("`{v}` translates f or g")));
        }
        for d in v.coords() {
            if !PROJECTED.contains(&&**d) && !v.coeff(d).is_zero() {
                return Err(Error::Shape(format!("`{v}` has a ∂_{d} component")));
            }
        }
        Ok(ProjectedOperator {
            alpha,
            beta,
            beta0,
            gamma,
            delta,
        })
    }

    pub fn field(&self) -> VectorField {
        let c = |q: &Rational| Expr::constant(q.clone());
        VectorField::zero(&PROJECTED)
            .with(X, c(&self.alpha))
            .with(U, &(&c(&self.beta) * &Expr::sym(U)) + &c(&self.beta0))
            .with(F, &c(&self.gamma) * &Expr::sym(F))
            .with(G, &c(&self.delta) * &Expr::sym(G))
    }

    fn parts(&self) -> [&Rational; 5] {
        [&self.alpha, &self.beta, &self.beta0, &self.gamma, &self.delta]
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ProjectedOperator {
            alpha: &self.alpha * k,
            beta: &self.beta * k,
            beta0: &self.beta0 * k,
            gamma: &self.gamma * k,
            delta: &self.delta * k,
        }
    }

    /// Representative of the line through this operator: first nonzero part is 1.
    pub fn normalized(&self) -> Self {
        match self.parts().into_iter().find(|q| !q.is_zero()) {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }

    pub fn moves_x_or_u(&self) -> bool {
        !(self.alpha.is_zero() && self.beta.is_zero() && self.beta0.is_zero())
    }
}

/// Drops `∂_t`; `None` when neither `x` nor `u` moves.
pub fn project(y: &VectorField) -> Result<Option<ProjectedOperator>> {
    let rest: Vec<&str> = y
        .coords()
        .iter()
        .map(|c| &**c)
        .filter(|c| *c != T)
        .collect();
    let p = ProjectedOperator::from_field(&y.restrict(&rest))?;
    Ok(p.moves_x_or_u().then_some(p))
}

/// `λ` and the factors `w_f, w_g` with invariants `I_f = f·w_f`, `I_g = g·w_g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantBasis {
    pub lambda: Expr,
    pub w_f: Expr,
    pub w_g: Expr,
}

impl InvariantBasis {
    pub fn i_f(&self) -> Expr {
        &Expr::sym(F) * &self.w_f
    }

    pub fn i_g(&self) -> Expr {
        &Expr::sym(G) * &self.w_g
    }

    /// `f` from `I_f = Φ(λ)`.
    pub fn f_form(&self) -> Result<Expr> {
        Ok(&Expr::func(PHI, &["p"], vec![self.lambda.clone()]) * &self.w_f.recip()?)
    }

    /// `g` from `I_g = Ψ(λ)`.
    pub fn g_form(&self) -> Result<Expr> {
        Ok(&Expr::func(PSI, &["p"], vec![self.lambda.clone()]) * &self.w_g.recip()?)
    }
}

fn exp_x(k: Rational) -> Expr {
    if k.is_zero() {
        Expr::one()
    } else {
        Expr::exp(LinearForm::single(X, k))
    }
}

fn integer_power(q: &Rational, what: &str) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::Shape(format!("{what} would need the non-integer power {q}")));
    }
    q.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Shape(format!("{what}: power {q} out of range")))
}

pub fn invariants(z: &ProjectedOperator) -> Result<InvariantBasis> {
    let zero = Rational::zero();
    let basis = if !z.alpha.is_zero() && z.beta0.is_zero() {
        InvariantBasis {
            lambda: &Expr::sym(U) * &exp_x(-(&z.beta / &z.alpha)),
            w_f: exp_x(-(&z.gamma / &z.alpha)),
            w_g: exp_x(-(&z.delta / &z.alpha)),
        }
    } else if z.alpha.is_zero() && !z.beta.is_zero() && z.beta0.is_zero() {
        let kf = integer_power(&-(&z.gamma / &z.beta), "I_f")?;
        let kg = integer_power(&-(&z.delta / &z.beta), "I_g")?;
        InvariantBasis {
            lambda: Expr::sym(X),
            w_f: Expr::sym(U).pow(kf)?,
            w_g: Expr::sym(U).pow(kg)?,
        }
    } else if z.alpha.is_zero() && z.beta.is_zero() && !z.beta0.is_zero() && z.gamma == zero && z.delta == zero {
        InvariantBasis {
            lambda: Expr::sym(X),
            w_f: Expr::one(),
            w_g: Expr::one(),
        }
    } else if !z.moves_x_or_u() {
        return Err(Error::Shape("operator does not move x or u".into()));
    } else {
        return Err(Error::Shape(format!("no closed-form invariants for {}", z.field())));
    };
    check_invariants(z, &basis)?;
    Ok(basis)
}

/// `Z(I) = 0` for all three, and the Jacobian in `(x, u, f, g)` has rank 3
/// at `x = 0, u = 3/2, f = 5/3, g = 7/5`.
fn check_invariants(z: &ProjectedOperator, b: &InvariantBasis) -> Result<()> {
    let zf = z.field();
    let all = [b.lambda.clone(), b.i_f(), b.i_g()];
    for i in &all {
        let r = zf.apply(i);
        if !r.is_zero() {
            return Err(Error::Verification(format!("Z({i}) = {r}")));
        }
    }
    let point = Bindings::new()
        .bind_sym(X, Expr::zero())
        .bind_sym(U, Expr::constant(crate::expr::ratio(3, 2)))
        .bind_sym(F, Expr::constant(crate::expr::ratio(5, 3)))
        .bind_sym(G, Expr::constant(crate::expr::ratio(7, 5)));
    let jac = all
        .iter()
        .map(|i| {
            PROJECTED
                .iter()
                .map(|v| {
                    let d = i.differentiate(&Var::sym(v)).substitute(&point)?;
                    d.as_constant()
                        .ok_or_else(|| Error::Verification(format!("∂{i}/∂{v} not constant at the test point")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if linalg::rank(&jac) < 3 {
        return Err(Error::Verification(format!(
            "invariants {}, {}, {} are functionally dependent",
            all[0], all[1], all[2]
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub n: usize,
    /// Optimal-system indices grouped into this row.
    pub sources: Vec<usize>,
    /// Projection of the first source as it stands in the algebra.
    pub projected: ProjectedOperator,
    /// The operator actually used; differs when the projection had to be
    /// replaced by the one carrying the forced `∂_f, ∂_g` part.
    pub z: ProjectedOperator,
    pub invariants: InvariantBasis,
    pub f: Expr,
    pub g: Expr,
    pub operators: Vec<VectorField>,
    pub residuals: Vec<Expr>,
}

impl ClassificationRow {
    pub fn corrected(&self) -> bool {
        self.projected != self.z
    }

    pub fn verified(&self) -> bool {
        self.residuals.iter().all(Expr::is_zero)
    }

    /// Cells in the order N, Z, Invariant, Equation, Additional operators.
    pub fn cells(&self) -> [String; 5] {
        render_cells(
            self.n,
            &self.z.field(),
            &self.invariants.lambda,
            &self.f,
            &self.g,
            &self.operators,
        )
    }
}

pub fn render_equation(f: &Expr, g: &Expr) -> String {
    let mut parts = Vec::new();
    if !f.is_zero() {
        parts.push(scaled_symbol(f, "u_x^2"));
    }
    if !g.is_zero() {
        parts.push(scaled_symbol(g, "u_xx"));
    }
    format!("u_t = {}", join_signed(&parts))
}

fn render_operators(ops: &[VectorField]) -> String {
    ops.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn render_cells(
    n: usize,
    z: &VectorField,
    lambda: &Expr,
    f: &Expr,
    g: &Expr,
    ops: &[VectorField],
) -> [String; 5] {
    [
        n.to_string(),
        z.to_string(),
        lambda.to_string(),
        render_equation(f, g),
        render_operators(ops),
    ]
}

/// A row from the operator `z` and the optimal-system elements `ys` projecting onto it.
pub fn classification_row(
    space: &JetSpace,
    n: usize,
    sources: Vec<usize>,
    projected: ProjectedOperator,
    z: ProjectedOperator,
    ys: &[VectorField],
) -> Result<ClassificationRow> {
    let invariants = invariants(&z)?;
    let f = invariants.f_form()?;
    let g = invariants.g_form()?;
    let mut operators: Vec<VectorField> = Vec::new();
    for y in ys {
        let x = y.restrict(&BASE);
        if !operators.contains(&x) {
            operators.push(x);
        }
    }
    let residuals = operators
        .iter()
        .map(|x| symmetry_residual(space, x, &f, &g))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationRow {
        n,
        sources,
        projected,
        z,
        invariants,
        f,
        g,
        operators,
        residuals,
    })
}

/// The `(x,u,f,g)` operator whose `∂_f, ∂_g` part is forced by the `(t,x,u)` part of `y`.
pub fn lifted_projection(space: &JetSpace, y: &VectorField) -> Result<ProjectedOperator> {
    let lift = equivalence_lift(space, &y.restrict(&[X, T, U]))?;
    if !lift.is_consistent() {
        return Err(Error::Verification(format!(
            "{} has no equivalence lift",
            y.restrict(&BASE)
        )));
    }
    let v = y.restrict(&PROJECTED).with(F, lift.mu).with(G, lift.nu);
    ProjectedOperator::from_field(&v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellDelta {
    pub row: usize,
    pub column: String,
    pub printed: String,
    /// The printed cell in the expression grammar, when it has one.
    pub reading: Option<String>,
    pub machine: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationTable {
    pub rows: Vec<ClassificationRow>,
    pub deltas: Vec<CellDelta>,
    /// Rows whose rendered cells equal the rendered printed reading exactly.
    pub identical_rows: Vec<usize>,
}

fn group_key(p: &ProjectedOperator) -> ProjectedOperator {
    p.normalized()
}

pub fn build_table(space: &JetSpace, sys: &OptimalSystem, fx: Option<&FixtureSet>) -> Result<ClassificationTable> {
    let mut groups: Vec<(ProjectedOperator, ProjectedOperator, Vec<usize>, Vec<VectorField>)> = Vec::new();
    for r in sys.representatives() {
        let Some(p) = project(&r.field)? else { continue };
        let key = group_key(&p);
        match groups.iter_mut().find(|g| g.0 == key) {
            Some(g) => {
                g.2.push(r.index);
                g.3.push(r.field.clone());
            }
            None => groups.push((key, p, vec![r.index], vec![r.field.clone()])),
        }
    }
    let mut rows = Vec::new();
    for (n, (_, projected, sources, ys)) in groups.into_iter().enumerate() {
        let n = n + 1;
        let row = classification_row(space, n, sources.clone(), projected.clone(), projected.clone(), &ys)?;
        let row = if row.verified() {
            row
        } else {
            let z = lifted_projection(space, &ys[0])?;
            let fixed = classification_row(space, n, sources, projected, z, &ys)?;
            if !fixed.verified() {
                return Err(Error::Verification(format!(
                    "row {n}: residuals {:?} remain after correcting Z",
                    fixed.residuals.iter().map(ToString::to_string).collect::<Vec<_>>()
                )));
            }
            fixed
        };
        rows.push(row);
    }
    let (deltas, identical_rows) = match fx {
        Some(fx) => compare_with_printed(&rows, fx)?,
        None => (Vec::new(), Vec::new()),
    };
    Ok(ClassificationTable {
        rows,
        deltas,
        identical_rows,
    })
}

fn printed_context() -> Result<Context> {
    Ok(Context::new()
        .coordinate(T)?
        .coordinate(X)?
        .coordinate(U)?
        .coordinate(F)?
        .coordinate(G)?
        .function(PHI, &["p"])?
        .function(PSI, &["p"])?)
}

fn compare_with_printed(rows: &[ClassificationRow], fx: &FixtureSet) -> Result<(Vec<CellDelta>, Vec<usize>)> {
    let ctx = printed_context()?;
    let mut deltas = Vec::new();
    let mut identical = Vec::new();
    for row in rows {
        let Some(p) = fx.table3.iter().find(|p| p.n == row.n) else {
            deltas.push(CellDelta {
                row: row.n,
                column: "row".into(),
                printed: String::new(),
                reading: None,
                machine: row.cells().join(" | "),
                note: "no printed row".into(),
            });
            continue;
        };
        let printed_z = fx
            .projections
            .iter()
            .find(|z| z.z == row.n)
            .map(|z| VectorField::parse(&ctx, &PROJECTED, &z.printed))
            .transpose()?;
        let printed_from = fx.projections.iter().find(|z| z.z == row.n).map(|z| z.from.clone());
        let reading = PrintedReading::parse(&ctx, p, printed_z)?;
        row_deltas(row, p, &reading, printed_from, &mut deltas);
        if reading.cells(row.n) == Some(row.cells()) {
            identical.push(row.n);
        }
    }
    Ok((deltas, identical))
}

struct PrintedReading {
    z: Option<VectorField>,
    lambda: Option<Expr>,
    f: Option<Expr>,
    g: Option<Expr>,
    ops: Vec<VectorField>,
}

impl PrintedReading {
    fn parse(ctx: &Context, p: &PrintedRow, z: Option<VectorField>) -> Result<Self> {
        let cell = |c: &crate::fixtures::Cell| -> Result<Option<Expr>> {
            c.expr.as_deref().map(|s| ctx.parse(s)).transpose().map_err(Into::into)
        };
        let ops = p
            .operators
            .fields
            .iter()
            .map(|m| VectorField::parse(ctx, &BASE, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(PrintedReading {
            z,
            lambda: cell(&p.invariant)?,
            f: cell(&p.f)?,
            g: cell(&p.g)?,
            ops,
        })
    }

    fn cells(&self, n: usize) -> Option<[String; 5]> {
        Some(render_cells(
            n,
            self.z.as_ref()?,
            self.lambda.as_ref()?,
            self.f.as_ref()?,
            self.g.as_ref()?,
            &self.ops,
        ))
    }
}

fn row_deltas(
    row: &ClassificationRow,
    p: &PrintedRow,
    reading: &PrintedReading,
    printed_from: Option<Vec<i64>>,
    out: &mut Vec<CellDelta>,
) {
    let mut push = |column: &str, printed: &str, reading: Option<String>, machine: String, note: String| {
        out.push(CellDelta {
            row: row.n,
            column: column.into(),
            printed: printed.into(),
            reading,
            machine,
            note,
        })
    };
    let zf = row.z.field();
    if reading.z.as_ref() != Some(&zf) {
        let note = if row.corrected() {
            format!(
                "the projection {} gives forms that fail the residual check; the (t,x,u) part forces {}",
                row.projected.field(),
                zf
            )
        } else {
            "projection differs".into()
        };
        push("Z", &p.z, reading.z.as_ref().map(ToString::to_string), zf.to_string(), note);
    }
    if let Some(from) = printed_from {
        let machine: Vec<i64> = row.sources.iter().map(|&i| i as i64).collect();
        if from != machine {
            push(
                "sources",
                &format!("{from:?}"),
                None,
                format!("{machine:?}"),
                "optimal-system elements grouped under this projection".into(),
            );
        }
    }
    let zp = row.z.field();
    match &reading.lambda {
        Some(l) if *l == row.invariants.lambda => {}
        other => {
            let note = match other {
                Some(l) if zp.apply(l).is_zero() => "a different generator of the same invariant field".into(),
                Some(l) => format!("printed invariant is not annihilated: Z({l}) = {}", zp.apply(l)),
                None => "printed cell has no reading".into(),
            };
            push(
                "Invariant",
                &p.invariant.latex,
                other.as_ref().map(ToString::to_string),
                row.invariants.lambda.to_string(),
                note,
            );
        }
    }
    for (col, printed, machine, latex) in [
        ("f", &reading.f, &row.f, &p.f.latex),
        ("g", &reading.g, &row.g, &p.g.latex),
    ] {
        if printed.as_ref() != Some(machine) {
            let note = match printed {
                Some(_) => "printed form differs from the verified form".into(),
                None => "printed form has no reading in the expression grammar".into(),
            };
            push(col, latex, printed.as_ref().map(ToString::to_string), machine.to_string(), note);
        }
    }
    if reading.ops != row.operators {
        push(
            "Additional operators",
            &p.operators.latex,
            Some(render_operators(&reading.ops)),
            render_operators(&row.operators),
            "operator list differs".into(),
        );
    }
}

impl ClassificationTable {
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(ClassificationRow::verified)
    }

    pub fn verification_count(&self) -> usize {
        self.rows.iter().map(|r| r.residuals.len()).sum()
    }

    pub fn render_text(&self) -> String {
        let header = ["N", "Z", "Invariant", "Equation", "Additional operators"];
        let body: Vec<[String; 5]> = self.rows.iter().map(ClassificationRow::cells).collect();
        let mut widths = header.map(str::len);
        for r in &body {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: &[String], out: &mut String| {
            let padded: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join(" | ").trim_end());
        };
        line(&header.map(String::from), &mut out);
        let _ = writeln!(out, "{}", widths.map(|w| "-".repeat(w)).join("-+-"));
        for r in &body {
            line(r, &mut out);
        }
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "row {}: sources {:?}, {} operator(s) verified{}",
                r.n,
                r.sources,
                r.residuals.iter().filter(|e| e.is_zero()).count(),
                if r.corrected() { ", Z corrected" } else { "" }
            );
        }
        if !self.identical_rows.is_empty() {
            let _ = writeln!(out, "identical to printed: rows {:?}", self.identical_rows);
        }
        if !self.deltas.is_empty() {
            let _ = writeln!(out, "\ndeltas against the printed table");
            for d in &self.deltas {
                let _ = writeln!(
                    out,
                    "  row {} {}: printed {}{} | machine {} | {}",
                    d.row,
                    d.column,
                    d.printed,
                    d.reading.as_ref().map(|r| format!(" (read as {r})")).unwrap_or_default(),
                    d.machine,
                    d.note
                );
            }
        }
        out
    }

    pub fn render_latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "\\begin{{tabular}}{{lllll}}");
        let _ = writeln!(out, "\\hline");
        let _ = writeln!(out, "N & Z & Invariant & Equation & Additional operator $X^{{(2)}}$ \\\\ \\hline");
        for r in &self.rows {
            let ops: Vec<String> = r.operators.iter().map(latex_field).collect();
            let _ = writeln!(
                out,
                "{} & ${}$ & ${}$ & $u_t={}u_x^2+{}u_{{xx}}$ & ${}$ \\\\",
                r.n,
                latex_field(&r.z.field()),
                latex_expr(&r.invariants.lambda),
                latex_factor(&r.f),
                latex_factor(&r.g),
                ops.join(",\\;")
            );
        }
        let _ = writeln!(out, "\\hline");
        let _ = writeln!(out, "\\end{{tabular}}");
        out
    }
}

fn latex_name(n: &str) -> String {
    match n {
        PHI | PSI | "lambda" => format!("\\{n}"),
        _ => n.to_string(),
    }
}

fn latex_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_monomial(m: &crate::expr::Monomial) -> String {
    let mut parts = Vec::new();
    for (a, k) in m.factors() {
        let base = match a {
            crate::expr::Atom::Sym(s) => latex_name(s),
            crate::expr::Atom::Jet(j) => {
                let s = j.to_string();
                let (dep, sub) = s.split_once('_').unwrap_or((&s, ""));
                format!("{dep}_{{{sub}}}")
            }
            crate::expr::Atom::Func(fa) => {
                let args: Vec<String> = fa.args().iter().map(latex_expr).collect();
                let head = if fa.order() == 0 {
                    latex_name(fa.name())
                } else {
                    format!("{}^{{({})}}", latex_name(fa.name()), fa.order())
                };
                format!("{head}({})", args.join(","))
            }
        };
        parts.push(if k == 1 { base } else { format!("{base}^{{{k}}}") });
    }
    if !m.exp_form().is_zero() {
        parts.push(format!("e^{{{}}}", latex_expr(&m.exp_form().to_expr())));
    }
    parts.join(" ")
}

pub fn latex_expr(e: &Expr) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in e.terms().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i > 0 {
            out.push_str(if neg { "-" } else { "+" });
        } else if neg {
            out.push('-');
        }
        if m.is_one() {
            out.push_str(&latex_rational(&abs));
        } else {
            if !num_traits::One::is_one(&abs) {
                out.push_str(&latex_rational(&abs));
            }
            out.push_str(&latex_monomial(m));
        }
    }
    out
}

fn latex_factor(e: &Expr) -> String {
    if e.len() > 1 {
        format!("({})", latex_expr(e))
    } else {
        latex_expr(e)
    }
}

pub fn latex_field(v: &VectorField) -> String {
    let parts: Vec<String> = v
        .coords()
        .iter()
        .zip(v.coeffs())
        .filter(|(_, c)| !c.is_zero())
        .map(|(x, c)| {
            let d = format!("\\partial_{x}");
            if *c == Expr::one() {
                d
            } else if *c == -Expr::one() {
                format!("-{d}")
            } else {
                format!("{}{d}", latex_factor(c))
            }
        })
        .collect();
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if !p.starts_with('-') {
            out.push('+');
        }
        out.push_str(p);
    }
    out
}

/// Per-row summary used by callers that only need counts.
pub fn delta_columns(t: &ClassificationTable) -> BTreeMap<usize, Vec<String>> {
    let mut out: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for d in &t.deltas {
        out.entry(d.row).or_default().push(d.column.clone());
    }
    out
}
