use std::collections::BTreeMap;

use super::{Atom, Expr, ExprError, FuncApp, LinearForm, Monomial, Name, Var};

/// A concrete body standing in for an arbitrary function, e.g. `λ(p,q). p²·q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub params: Vec<Name>,
    pub body: Expr,
}

impl Template {
    pub fn new(params: &[&str], body: Expr) -> Self {
        Template {
            params: params.iter().map(|p| super::name(p)).collect(),
            body,
        }
    }

    /// Body of the mixed partial `derivs` (one count per parameter slot).
    pub fn derivative(&self, derivs: &[u32]) -> Expr {
        let mut body = self.body.clone();
        for (p, k) in self.params.iter().zip(derivs) {
            for _ in 0..*k {
                body = body.differentiate(&Var::Sym(p.clone()));
            }
        }
        body
    }

    /// `F^(derivs)(args)` with the template in place of `F`.
    pub fn apply(&self, fname: &str, derivs: &[u32], args: &[Expr]) -> Result<Expr, ExprError> {
        if args.len() != self.params.len() {
            return Err(ExprError::Arity {
                name: fname.to_string(),
                expected: self.params.len(),
                found: args.len(),
            });
        }
        let mut b = Bindings::new();
        for (p, a) in self.params.iter().zip(args) {
            b.vars.insert(Var::Sym(p.clone()), a.clone());
        }
        substitute_unchecked(&self.derivative(derivs), &b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionBinding {
    Rename { name: Name, arity: usize },
    Template(Template),
}

/// Simultaneous substitution map.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    pub vars: BTreeMap<Var, Expr>,
    pub functions: BTreeMap<Name, FunctionBinding>,
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn bind(mut self, v: Var, e: Expr) -> Self {
        self.vars.insert(v, e);
        self
    }

    pub fn bind_sym(self, s: &str, e: Expr) -> Self {
        self.bind(Var::sym(s), e)
    }

    pub fn bind_function(mut self, f: &str, b: FunctionBinding) -> Self {
        self.functions.insert(super::name(f), b);
        self
    }

    fn check_cycles(&self) -> Result<(), ExprError> {
        for (v, e) in &self.vars {
            if e.contains_var(v) {
                return Err(ExprError::Cyclic(v.to_string()));
            }
        }
        for (f, b) in &self.functions {
            let hit = match b {
                FunctionBinding::Rename { name, .. } => name == f,
                FunctionBinding::Template(t) => t.body.function_names().contains(f),
            };
            if hit {
                return Err(ExprError::Cyclic(f.to_string()));
            }
        }
        Ok(())
    }
}

impl Expr {
    /// Simultaneous substitution; the result is canonical.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Expr, ExprError> {
        bindings.check_cycles()?;
        substitute_unchecked(self, bindings)
    }

    pub fn subs(&self, v: &Var, value: &Expr) -> Result<Expr, ExprError> {
        self.substitute(&Bindings::new().bind(v.clone(), value.clone()))
    }
}

fn substitute_unchecked(e: &Expr, b: &Bindings) -> Result<Expr, ExprError> {
    let mut out = Expr::zero();
    for (m, c) in e.terms() {
        out += subst_monomial(m, b)?.scale(c);
    }
    Ok(out)
}

fn subst_monomial(m: &Monomial, b: &Bindings) -> Result<Expr, ExprError> {
    let mut acc = subst_exp(&m.exp, b)?;
    for (a, k) in m.factors() {
        let replaced = subst_atom(a, b)?;
        acc = &acc * &replaced.pow(k)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

fn subst_exp(lf: &LinearForm, b: &Bindings) -> Result<Expr, ExprError> {
    if lf.is_zero() {
        return Ok(Expr::one());
    }
    let touched = lf
        .terms()
        .any(|(n, _)| b.vars.contains_key(&Var::Sym(n.clone())));
    if !touched {
        return Ok(Expr::exp(lf.clone()));
    }
    let arg = substitute_unchecked(&lf.to_expr(), b)?;
    Ok(Expr::exp(LinearForm::from_expr(&arg)?))
}

fn subst_atom(a: &Atom, b: &Bindings) -> Result<Expr, ExprError> {
    match a {
        Atom::Sym(n) => Ok(b
            .vars
            .get(&Var::Sym(n.clone()))
            .cloned()
            .unwrap_or_else(|| Expr::atom(a.clone()))),
        Atom::Jet(j) => Ok(b
            .vars
            .get(&Var::Jet(j.clone()))
            .cloned()
            .unwrap_or_else(|| Expr::atom(a.clone()))),
        Atom::Func(fa) => {
            let args = fa
                .args
                .iter()
                .map(|x| substitute_unchecked(x, b))
                .collect::<Result<Vec<_>, _>>()?;
            match b.functions.get(&fa.name) {
                None => Ok(Expr::atom(Atom::Func(FuncApp {
                    args,
                    ..fa.clone()
                }))),
                Some(FunctionBinding::Rename { name, arity }) => {
                    if *arity != fa.args.len() {
                        return Err(ExprError::Arity {
                            name: name.to_string(),
                            expected: fa.args.len(),
                            found: *arity,
                        });
                    }
                    Ok(Expr::atom(Atom::Func(FuncApp {
                        name: name.clone(),
                        params: fa.params.clone(),
                        derivs: fa.derivs.clone(),
                        args,
                    })))
                }
                Some(FunctionBinding::Template(t)) => t.apply(&fa.name, &fa.derivs, &args),
            }
        }
    }
}
