use std::collections::{BTreeMap, BTreeSet};

use super::{Atom, Expr, ExprError, Monomial, Var};

/// Coefficients keyed by monomials in the basis atoms; `Monomial::one()` keys
/// the basis-free remainder.
pub type Collected = BTreeMap<Monomial, Expr>;

impl Expr {
    /// Groups terms by their monomial in `basis`. Fails if a basis atom occurs
    /// inside a function argument or exponential, or with a negative power.
    pub fn collect(&self, basis: &BTreeSet<Var>) -> Result<Collected, ExprError> {
        let atoms: BTreeSet<Atom> = basis.iter().map(Var::as_atom).collect();
        let mut out: Collected = BTreeMap::new();
        for (m, c) in self.terms() {
            let (key, rest) = m.split(|a| atoms.contains(a));
            for (a, k) in key.factors() {
                if k < 0 {
                    return Err(ExprError::NotPolynomial {
                        atom: a.to_string(),
                        term: Expr::term(m.clone(), c.clone()).to_string(),
                    });
                }
            }
            for (a, _) in rest.factors() {
                if let Atom::Func(fa) = a {
                    if let Some(v) = basis
                        .iter()
                        .find(|v| fa.args().iter().any(|arg| arg.contains_var(v)))
                    {
                        return Err(ExprError::NotPolynomial {
                            atom: v.to_string(),
                            term: Expr::term(m.clone(), c.clone()).to_string(),
                        });
                    }
                }
            }
            if let Some(v) = basis.iter().find(|v| match v {
                Var::Sym(n) => !num_traits::Zero::is_zero(&rest.exp_form().coeff(n)),
                Var::Jet(_) => false,
            }) {
                return Err(ExprError::NotPolynomial {
                    atom: v.to_string(),
                    term: Expr::term(m.clone(), c.clone()).to_string(),
                });
            }
            let slot = out.entry(key).or_default();
            *slot += Expr::term(rest, c.clone());
        }
        out.retain(|_, e| !e.is_zero());
        Ok(out)
    }
}

/// Inverse of [`Expr::collect`].
pub fn recombine(parts: &Collected) -> Expr {
    parts
        .iter()
        .map(|(m, c)| c.mul_monomial(m, &num_traits::One::one()))
        .sum()
}
