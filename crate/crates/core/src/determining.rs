//! Determining functions for `u_t = f(x,u) u_x² + g(x,u) u_xx`.
//!
//! Two branches share the prolongation machinery:
//!
//! * the symmetry branch, where `f` and `g` are given expressions in `(x, u)`
//!   and a field on `(x, t, u)` is tested for invariance of one equation;
//! * the equivalence branch, where `f` and `g` are extra coordinates with their
//!   own derivative atoms `f_x, f_u, f_t, ...` and the operator carries
//!   `μ ∂_f + ν ∂_g`.
//!
//! Nothing here integrates a determining system. Candidate operators are
//! checked and residual coefficient sets are reported.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{Bindings, Context, Expr, JetCoord, Monomial, Var};
use crate::field::VectorField;
use crate::jet::{JetSpace, T, U, X};

pub const F: &str = "f";
pub const G: &str = "g";

/// One determining equation: `coefficient = 0`, read off at `monomial`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equation {
    #[serde(serialize_with = "ser_display")]
    pub monomial: Monomial,
    pub coefficient: Expr,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} = 0", self.monomial, self.coefficient)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterminingSystem {
    residual: Expr,
    equations: Vec<Equation>,
}

impl DeterminingSystem {
    /// Splits `residual` by monomials in `basis`.
    pub fn from_residual(residual: Expr, basis: &BTreeSet<Var>) -> Result<Self> {
        let equations = residual
            .collect(basis)?
            .into_iter()
            .map(|(monomial, coefficient)| Equation {
                monomial,
                coefficient,
            })
            .collect();
        Ok(DeterminingSystem {
            residual,
            equations,
        })
    }

    /// Splits by every jet coordinate occurring in the residual.
    pub fn by_jets(residual: Expr) -> Result<Self> {
        let basis = jet_basis(&residual);
        Self::from_residual(residual, &basis)
    }

    pub fn residual(&self) -> &Expr {
        &self.residual
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Coefficient at `m`, zero if absent.
    pub fn coefficient(&self, m: &Monomial) -> Expr {
        self.equations
            .iter()
            .find(|e| e.monomial == *m)
            .map(|e| e.coefficient.clone())
            .unwrap_or_default()
    }

    /// `Σ monomial · coefficient`, which equals the residual.
    pub fn reconstruct(&self) -> Expr {
        self.equations
            .iter()
            .map(|e| e.coefficient.mul_monomial(&e.monomial, &num_traits::One::one()))
            .sum()
    }
}

impl fmt::Display for DeterminingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "residual: {}", self.residual)?;
        for e in &self.equations {
            writeln!(f, "  {e}")?;
        }
        Ok(())
    }
}

fn jet_basis(e: &Expr) -> BTreeSet<Var> {
    e.jets().into_iter().map(Var::Jet).collect()
}

fn u_t(space: &JetSpace) -> Var {
    Var::Jet(space.jet(0, 1))
}

/// Symmetry-branch context: `x, t, u`, jets of `u`, and the arbitrary
/// functions used by the classification (`f, g` of `(x,u)`, `Phi, Psi` of one
/// argument, generic `xi1, xi2, phi` of `(x,t,u)`, `a, b` of `x`).
pub fn symmetry_context(space: &JetSpace) -> Context {
    let build = || -> std::result::Result<Context, crate::expr::ExprError> {
        space
            .context()
            .function(F, &[X, U])?
            .function(G, &[X, U])?
            .function("Phi", &["p"])?
            .function("Psi", &["p"])?
            .function("xi1", &[X, T, U])?
            .function("xi2", &[X, T, U])?
            .function("phi", &[X, T, U])?
            .function("a", &[X])?
            .function("b", &[X])?
            .constant("c1")?
            .constant("c2")?
            .constant("alpha")?
            .constant("beta")?
            .constant("gamma")
    };
    build().expect("fresh context")
}

/// Equivalence-branch context: coordinates `x, t, u, f, g`; `u` depends on
/// `(x,t)`, `f` and `g` on `(x,t,u)`.
pub fn equivalence_context(space: &JetSpace) -> Context {
    let build = || -> std::result::Result<Context, crate::expr::ExprError> {
        space
            .context()
            .coordinate(F)?
            .coordinate(G)?
            .dependent(F, &[X, T, U])?
            .dependent(G, &[X, T, U])?
            .function("a", &[X])?
            .function("b", &[X])?
            .function("xi1", &[X, T, U])?
            .function("xi2", &[X, T, U])?
            .function("phi", &[X, T, U])?
            .constant("c1")?
            .constant("c2")?
            .constant("b0")
    };
    build().expect("fresh context")
}

fn check_class_coefficient(e: &Expr) -> Result<()> {
    if e.contains_var(&Var::sym(T)) {
        return Err(Error::DependsOnTime(e.to_string()));
    }
    if let Some(j) = e.jets().into_iter().next() {
        return Err(Error::Invalid(format!("`{e}` contains jet coordinate `{j}`")));
    }
    Ok(())
}

/// The determining function of `X` for the equation with coefficients `f, g`,
/// with `u_t` eliminated through the equation. Zero iff `X` is a symmetry.
pub fn symmetry_residual(space: &JetSpace, field: &VectorField, f: &Expr, g: &Expr) -> Result<Expr> {
    check_class_coefficient(f)?;
    check_class_coefficient(g)?;
    let pr = space.prolong2(field)?;
    let xi1 = field.coeff(X);
    let phi = field.coeff(U);
    let act = |h: &Expr| {
        &xi1 * &h.differentiate(&Var::sym(X)) + &phi * &h.differentiate(&Var::sym(U))
    };
    let (ux, uxx) = (space.u_x(), space.u_xx());
    let two = Expr::int(2);
    let raw = pr.phi_t().clone()
        - &act(f) * &(&ux * &ux)
        - &act(g) * &uxx
        - &(&(&two * f) * pr.phi_x()) * &ux
        - g * pr.phi_xx();
    let on_shell = f * &(&ux * &ux) + g * &uxx;
    Ok(raw.substitute(&Bindings::new().bind(u_t(space), on_shell))?)
}

/// The residual split into one equation per jet monomial.
pub fn determining_system(
    space: &JetSpace,
    field: &VectorField,
    f: &Expr,
    g: &Expr,
) -> Result<DeterminingSystem> {
    DeterminingSystem::by_jets(symmetry_residual(space, field, f, g)?)
}

/// Operator on the equivalence space `(x, t, u, f, g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceField {
    base: VectorField,
    mu: Expr,
    nu: Expr,
}

impl EquivalenceField {
    pub fn new(base: &VectorField, mu: Expr, nu: Expr) -> Result<Self> {
        let base = base.restrict(&[X, T, U]);
        for c in base.coeffs() {
            if c.contains_var(&Var::sym(F)) || c.contains_var(&Var::sym(G)) {
                return Err(Error::Invalid(format!(
                    "coefficient `{c}` on (x,t,u) must not depend on f or g"
                )));
            }
        }
        for c in base.coeffs().iter().chain([&mu, &nu]) {
            if let Some(j) = c.jets().into_iter().next() {
                return Err(Error::Invalid(format!("`{c}` contains jet coordinate `{j}`")));
            }
        }
        Ok(EquivalenceField { base, mu, nu })
    }

    /// Splits a field whose coordinate list includes `f` and `g`.
    pub fn from_field(field: &VectorField) -> Result<Self> {
        Self::new(field, field.coeff(F), field.coeff(G))
    }

    pub fn base(&self) -> &VectorField {
        &self.base
    }
    pub fn mu(&self) -> &Expr {
        &self.mu
    }
    pub fn nu(&self) -> &Expr {
        &self.nu
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceResiduals {
    pub main: Expr,
    pub ft: Expr,
    pub gt: Expr,
}

impl EquivalenceResiduals {
    pub fn all_zero(&self) -> bool {
        self.main.is_zero() && self.ft.is_zero() && self.gt.is_zero()
    }
}

fn fjet(dep: &str, var: &str) -> JetCoord {
    JetCoord::new(dep, &[(var, 1)])
}

/// `D̃_t = ∂_t + f_t ∂_f + g_t ∂_g` on functions of `(x, t, u, f, g)`.
fn extended_dt(e: &Expr) -> Expr {
    e.differentiate(&Var::sym(T))
        + &Expr::jet(fjet(F, T)) * &e.differentiate(&Var::sym(F))
        + &Expr::jet(fjet(G, T)) * &e.differentiate(&Var::sym(G))
}

/// `μ^t` (or `ν^t`) for the differential variable `dep` over `(x, t, u)`.
fn coefficient_prolongation(dep: &str, top: &Expr, base: &VectorField) -> Expr {
    extended_dt(top)
        - &Expr::jet(fjet(dep, X)) * &extended_dt(&base.coeff(X))
        - &Expr::jet(fjet(dep, T)) * &extended_dt(&base.coeff(T))
        - &Expr::jet(fjet(dep, U)) * &extended_dt(&base.coeff(U))
}

/// Invariance conditions of the system `{equation, f_t = 0, g_t = 0}`. The
/// atoms `f_t, g_t` are set to zero after prolongation.
pub fn equivalence_residuals(space: &JetSpace, y: &EquivalenceField) -> Result<EquivalenceResiduals> {
    let pr = space.prolong2(&y.base)?;
    let (ux, uxx) = (space.u_x(), space.u_xx());
    let (f, g) = (Expr::sym(F), Expr::sym(G));
    let main = pr.phi_t().clone()
        - &(&(&Expr::int(2) * &f) * &ux) * pr.phi_x()
        - &g * pr.phi_xx()
        - &y.mu * &(&ux * &ux)
        - &y.nu * &uxx;
    let on_shell = &f * &(&ux * &ux) + &g * &uxx;
    let main = main.substitute(&Bindings::new().bind(u_t(space), on_shell))?;

    let frozen = Bindings::new()
        .bind(Var::Jet(fjet(F, T)), Expr::zero())
        .bind(Var::Jet(fjet(G, T)), Expr::zero());
    let ft = coefficient_prolongation(F, &y.mu, &y.base).substitute(&frozen)?;
    let gt = coefficient_prolongation(G, &y.nu, &y.base).substitute(&frozen)?;
    Ok(EquivalenceResiduals { main, ft, gt })
}

/// The three residuals, each split by its jet monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceSystem {
    pub main: DeterminingSystem,
    pub ft: DeterminingSystem,
    pub gt: DeterminingSystem,
}

impl EquivalenceSystem {
    pub fn is_empty(&self) -> bool {
        self.main.is_empty() && self.ft.is_empty() && self.gt.is_empty()
    }

    pub fn equations(&self) -> impl Iterator<Item = (&'static str, &Equation)> {
        self.main
            .equations()
            .iter()
            .map(|e| ("main", e))
            .chain(self.ft.equations().iter().map(|e| ("f_t", e)))
            .chain(self.gt.equations().iter().map(|e| ("g_t", e)))
    }
}

pub fn equivalence_system(space: &JetSpace, y: &EquivalenceField) -> Result<EquivalenceSystem> {
    let r = equivalence_residuals(space, y)?;
    Ok(EquivalenceSystem {
        main: DeterminingSystem::by_jets(r.main)?,
        ft: DeterminingSystem::by_jets(r.ft)?,
        gt: DeterminingSystem::by_jets(r.gt)?,
    })
}

/// The `∂_f, ∂_g` part forced on a base operator on `(x,t,u)`.
///
/// The main residual is affine in `μ, ν` with coefficients `−u_x²` and
/// `−u_xx`, so they are read off from the residual at `μ = ν = 0`. Whatever
/// else survives (split over jets and over `f, g`) must vanish for the base to
/// extend to an equivalence operator at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceLift {
    pub mu: Expr,
    pub nu: Expr,
    pub constraints: Vec<Equation>,
}

impl EquivalenceLift {
    pub fn is_consistent(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn field(&self, base: &VectorField) -> Result<EquivalenceField> {
        EquivalenceField::new(base, self.mu.clone(), self.nu.clone())
    }
}

pub fn equivalence_lift(space: &JetSpace, base: &VectorField) -> Result<EquivalenceLift> {
    let bare = EquivalenceField::new(base, Expr::zero(), Expr::zero())?;
    let r0 = equivalence_residuals(space, &bare)?;
    let ux2 = Monomial::atom(crate::expr::Atom::Jet(space.jet(1, 0)), 2);
    let uxx = Monomial::atom(crate::expr::Atom::Jet(space.jet(2, 0)), 1);
    let main = DeterminingSystem::by_jets(r0.main)?;
    let mu = main.coefficient(&ux2);
    let nu = main.coefficient(&uxx);
    let lifted = EquivalenceField::new(base, mu.clone(), nu.clone())?;
    let r = equivalence_residuals(space, &lifted)?;
    let mut constraints = Vec::new();
    for residual in [r.main, r.ft, r.gt] {
        let mut basis = jet_basis(&residual);
        basis.insert(Var::sym(F));
        basis.insert(Var::sym(G));
        constraints.extend(DeterminingSystem::from_residual(residual, &basis)?.equations);
    }
    Ok(EquivalenceLift {
        mu,
        nu,
        constraints,
    })
}

/// Audit of the printed equivalence family
/// `Y = a ∂_x + (c1 t + c2) ∂_t + (c1 u + b) ∂_u − 2f(c1 − a) ∂_f − g(c1 − a') ∂_g`
/// subject to `b'' = c1 − a'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    /// Residual system of the family exactly as printed.
    pub system: EquivalenceSystem,
    pub printed_mu: Expr,
    pub printed_nu: Expr,
    pub printed_constraint: Expr,
    /// Forced by the residual for the same `(x,t,u)` part.
    pub derived: EquivalenceLift,
    pub deltas: Vec<String>,
}

impl FamilyReport {
    pub fn exact_as_printed(&self) -> bool {
        self.system.is_empty() && self.deltas.is_empty()
    }
}

pub fn check_equivalence_family(
    space: &JetSpace,
    a: &Expr,
    b: &Expr,
    c1: &Expr,
    c2: &Expr,
) -> Result<FamilyReport> {
    let x = Var::sym(X);
    let (f, g) = (Expr::sym(F), Expr::sym(G));
    let a_prime = a.differentiate(&x);
    let base = VectorField::zero(&[X, T, U])
        .with(X, a.clone())
        .with(T, c1 * &Expr::sym(T) + c2.clone())
        .with(U, c1 * &Expr::sym(U) + b.clone());
    let printed_mu = &(&Expr::int(-2) * &f) * &(c1 - a);
    let printed_nu = &(-&g) * &(c1 - &a_prime);
    let printed_constraint = b.differentiate(&x).differentiate(&x) - c1.clone() + a_prime;
    let y = EquivalenceField::new(&base, printed_mu.clone(), printed_nu.clone())?;
    let system = equivalence_system(space, &y)?;
    let derived = equivalence_lift(space, &base)?;

    let mut deltas = Vec::new();
    if derived.mu != printed_mu {
        deltas.push(format!("mu: printed {printed_mu}, derived {}", derived.mu));
    }
    if derived.nu != printed_nu {
        deltas.push(format!("nu: printed {printed_nu}, derived {}", derived.nu));
    }
    let derived_constraints: Vec<String> = derived
        .constraints
        .iter()
        .map(|e| e.coefficient.to_string())
        .collect();
    let printed_set = if printed_constraint.is_zero() {
        vec![]
    } else {
        vec![printed_constraint.to_string()]
    };
    if derived_constraints != printed_set {
        deltas.push(format!(
            "constraints: printed [{}], derived [{}]",
            printed_set.join(", "),
            derived_constraints
                .iter()
                .map(|c| format!("{c} = 0"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    Ok(FamilyReport {
        system,
        printed_mu,
        printed_nu,
        printed_constraint,
        derived,
        deltas,
    })
}
