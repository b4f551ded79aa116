//! First-order differential operators `Σ ξ^k ∂_k` with expression coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::expr::{name, Context, Expr, Name, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    coords: Vec<Name>,
    coeffs: Vec<Expr>,
}

impl VectorField {
    /// The zero field on `coords`.
    pub fn zero(coords: &[&str]) -> Self {
        VectorField {
            coords: coords.iter().map(|c| name(c)).collect(),
            coeffs: vec![Expr::zero(); coords.len()],
        }
    }

    pub fn from_names(coords: Vec<Name>, coeffs: Vec<Expr>) -> Self {
        assert_eq!(coords.len(), coeffs.len());
        VectorField { coords, coeffs }
    }

    /// Builder: sets the coefficient of `∂_dir`. Panics on an unknown direction.
    pub fn with(mut self, dir: &str, e: Expr) -> Self {
        let i = self
            .index(dir)
            .unwrap_or_else(|| panic!("no direction `{dir}` in {:?}", self.coords));
        self.coeffs[i] = e;
        self
    }

    /// Parses per-direction coefficient strings.
    pub fn parse(ctx: &Context, coords: &[&str], coeffs: &BTreeMap<String, String>) -> Result<Self> {
        let mut field = VectorField::zero(coords);
        for (dir, text) in coeffs {
            let i = field
                .index(dir)
                .ok_or_else(|| Error::Invalid(format!("unknown direction `{dir}`")))?;
            field.coeffs[i] = ctx.parse(text)?;
        }
        Ok(field)
    }

    fn index(&self, dir: &str) -> Option<usize> {
        self.coords.iter().position(|c| &**c == dir)
    }

    pub fn coords(&self) -> &[Name] {
        &self.coords
    }

    pub fn coeffs(&self) -> &[Expr] {
        &self.coeffs
    }

    /// Coefficient of `∂_dir`; zero if the field has no such direction.
    pub fn coeff(&self, dir: &str) -> Expr {
        self.index(dir)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Expr::is_zero)
    }

    /// `X(e) = Σ ξ^k ∂e/∂x^k`.
    pub fn apply(&self, e: &Expr) -> Expr {
        self.coords
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(x, c)| c * &e.differentiate(&Var::Sym(x.clone())))
            .sum()
    }

    fn same_coords(&self, other: &VectorField) -> Result<()> {
        if self.coords == other.coords {
            Ok(())
        } else {
            Err(Error::CoordinateMismatch(
                self.coords.join(","),
                other.coords.join(","),
            ))
        }
    }

    /// Lie bracket `[X, Y]^k = X(η^k) − Y(ξ^k)`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.same_coords(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(xi, eta)| self.apply(eta) - other.apply(xi))
            .collect();
        Ok(VectorField {
            coords: self.coords.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, k: &Rational) -> VectorField {
        VectorField {
            coords: self.coords.clone(),
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn scale_expr(&self, k: &Expr) -> VectorField {
        VectorField {
            coords: self.coords.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// The same operator written on `coords`, dropping other directions.
    pub fn restrict(&self, coords: &[&str]) -> VectorField {
        VectorField {
            coords: coords.iter().map(|c| name(c)).collect(),
            coeffs: coords.iter().map(|c| self.coeff(c)).collect(),
        }
    }

    pub fn try_add(&self, other: &VectorField) -> Result<VectorField> {
        self.same_coords(other)?;
        Ok(VectorField {
            coords: self.coords.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    /// Panics on mismatched coordinates; use [`VectorField::try_add`] otherwise.
    fn add(self, rhs: &VectorField) -> VectorField {
        self.try_add(rhs).expect("coordinate lists must match")
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self.try_add(&rhs.scale(&-Rational::from_integer(1.into())))
            .expect("coordinate lists must match")
    }
}

impl serde::Serialize for VectorField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(x, c)| scaled_symbol(c, &format!("d_{x}")))
            .collect();
        f.write_str(&join_signed(&parts))
    }
}

/// `c*sym` with the usual shortcuts for ±1 and parenthesised sums.
pub fn scaled_symbol(c: &Expr, sym: &str) -> String {
    let one = Expr::one();
    if *c == one {
        sym.to_string()
    } else if *c == -&one {
        format!("-{sym}")
    } else if c.len() == 1 {
        format!("{c}*{sym}")
    } else {
        format!("({c})*{sym}")
    }
}

/// Joins already-signed parts as `a + b - c`; empty input renders `0`.
pub fn join_signed(parts: &[String]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}
