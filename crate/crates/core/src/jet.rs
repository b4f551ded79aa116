//! Jet-space bookkeeping for one dependent variable `u(x, t)`: total
//! derivatives, characteristics and second prolongation.

use crate::error::{Error, Result};
use crate::expr::{name, Context, Expr, JetCoord, Name, Var};
use crate::field::VectorField;

pub const X: &str = "x";
pub const T: &str = "t";
pub const U: &str = "u";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    X,
    T,
}

impl Dir {
    pub fn var(self) -> &'static str {
        match self {
            Dir::X => X,
            Dir::T => T,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetSpace {
    cap: u32,
    vars: [Name; 2],
}

impl Default for JetSpace {
    fn default() -> Self {
        JetSpace::new(4).expect("default cap is valid")
    }
}

impl JetSpace {
    pub fn new(cap: u32) -> Result<Self> {
        if cap < 3 {
            return Err(Error::InvalidCap(cap));
        }
        Ok(JetSpace {
            cap,
            vars: [name(X), name(T)],
        })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// `u` differentiated `nx` times in x and `nt` times in t (order ≥ 1).
    pub fn jet(&self, nx: u32, nt: u32) -> JetCoord {
        JetCoord::new(U, &[(X, nx), (T, nt)])
    }

    pub fn u_x(&self) -> Expr {
        Expr::jet(self.jet(1, 0))
    }
    pub fn u_t(&self) -> Expr {
        Expr::jet(self.jet(0, 1))
    }
    pub fn u_xx(&self) -> Expr {
        Expr::jet(self.jet(2, 0))
    }
    pub fn u_xt(&self) -> Expr {
        Expr::jet(self.jet(1, 1))
    }

    /// Parser context with `x, t, u` and jets of `u`.
    pub fn context(&self) -> Context {
        Context::new()
            .coordinate(X)
            .and_then(|c| c.coordinate(T))
            .and_then(|c| c.coordinate(U))
            .and_then(|c| c.dependent(U, &[X, T]))
            .expect("fresh context")
    }

    /// `D_v e = ∂_v e + u_v ∂_u e + Σ_J u_{J,v} ∂e/∂u_J`.
    pub fn total_derivative(&self, e: &Expr, dir: Dir) -> Result<Expr> {
        let v = dir.var();
        let mut out = e.differentiate(&Var::sym(v));
        let du = e.differentiate(&Var::sym(U));
        if !du.is_zero() {
            out += &(&Expr::jet(self.jet(u32::from(dir == Dir::X), u32::from(dir == Dir::T))) * &du);
        }
        for j in e.jets().into_iter().filter(|j| &**j.dep() == U) {
            let raised = j.raise(v, &self.vars);
            if raised.order() > self.cap {
                return Err(Error::OrderCap {
                    coord: raised.to_string(),
                    cap: self.cap,
                });
            }
            let d = e.differentiate(&Var::Jet(j));
            out += &(&Expr::jet(raised) * &d);
        }
        Ok(out)
    }

    pub fn characteristic(&self, field: &VectorField) -> Characteristic {
        let q = field.coeff(U) - &field.coeff(X) * &self.u_x() - &field.coeff(T) * &self.u_t();
        Characteristic { q }
    }

    /// Second prolongation coefficients.
    pub fn prolong2(&self, field: &VectorField) -> Result<ProlongedField> {
        for c in field.coeffs() {
            if let Some(j) = c.jets().into_iter().next() {
                return Err(Error::Invalid(format!(
                    "vector field coefficient `{c}` contains jet coordinate `{j}`"
                )));
            }
        }
        let xi1 = field.coeff(X);
        let xi2 = field.coeff(T);
        let phi = field.coeff(U);
        let d = |e: &Expr, dir| self.total_derivative(e, dir);

        let dx_xi1 = d(&xi1, Dir::X)?;
        let dx_xi2 = d(&xi2, Dir::X)?;
        let dt_xi1 = d(&xi1, Dir::T)?;
        let dt_xi2 = d(&xi2, Dir::T)?;

        let phi_x = d(&phi, Dir::X)? - &self.u_x() * &dx_xi1 - &self.u_t() * &dx_xi2;
        let phi_t = d(&phi, Dir::T)? - &self.u_x() * &dt_xi1 - &self.u_t() * &dt_xi2;
        let phi_xx = d(&phi_x, Dir::X)? - &self.u_xx() * &dx_xi1 - &self.u_xt() * &dx_xi2;
        let phi_xt = d(&phi_x, Dir::T)? - &self.u_xx() * &dt_xi1 - &self.u_xt() * &dt_xi2;
        Ok(ProlongedField {
            base: field.clone(),
            phi_x,
            phi_t,
            phi_xx,
            phi_xt,
        })
    }

    /// First-order coefficient from the characteristic:
    /// `φ^ι = D_ι Q + ξ¹ u_{xι} + ξ² u_{tι}`.
    pub fn first_order_via_characteristic(&self, field: &VectorField, dir: Dir) -> Result<Expr> {
        let q = self.characteristic(field).q;
        let (ax, at) = (u32::from(dir == Dir::X), u32::from(dir == Dir::T));
        Ok(self.total_derivative(&q, dir)?
            + &field.coeff(X) * &Expr::jet(self.jet(1 + ax, at))
            + &field.coeff(T) * &Expr::jet(self.jet(ax, 1 + at)))
    }

    /// Second-order coefficient from the characteristic:
    /// `φ^{ιȷ} = D_ι D_ȷ Q + ξ¹ u_{xιȷ} + ξ² u_{tιȷ}`.
    pub fn second_order_via_characteristic(
        &self,
        field: &VectorField,
        a: Dir,
        b: Dir,
    ) -> Result<Expr> {
        let q = self.characteristic(field).q;
        let inner = self.total_derivative(&q, b)?;
        let nx = u32::from(a == Dir::X) + u32::from(b == Dir::X);
        let nt = u32::from(a == Dir::T) + u32::from(b == Dir::T);
        Ok(self.total_derivative(&inner, a)?
            + &field.coeff(X) * &Expr::jet(self.jet(nx + 1, nt))
            + &field.coeff(T) * &Expr::jet(self.jet(nx, nt + 1)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characteristic {
    pub q: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProlongedField {
    base: VectorField,
    phi_x: Expr,
    phi_t: Expr,
    phi_xx: Expr,
    phi_xt: Expr,
}

impl ProlongedField {
    pub fn base(&self) -> &VectorField {
        &self.base
    }
    pub fn phi_x(&self) -> &Expr {
        &self.phi_x
    }
    pub fn phi_t(&self) -> &Expr {
        &self.phi_t
    }
    pub fn phi_xx(&self) -> &Expr {
        &self.phi_xx
    }
    pub fn phi_xt(&self) -> &Expr {
        &self.phi_xt
    }
}
