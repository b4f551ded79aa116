use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Atom, Expr, ExprError, LinearForm, Name, Rational, Template, Var};

#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    /// Decimal digits kept when approximating `exp` of a nonzero argument.
    pub exp_digits: u32,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { exp_digits: 30 }
    }
}

/// Numeric value of `e` under a rational assignment. Arbitrary functions are
/// replaced by the given polynomial models. Exact unless an `exp` with a
/// nonzero argument is hit.
pub fn evaluate(
    e: &Expr,
    assignment: &BTreeMap<Var, Rational>,
    models: &BTreeMap<Name, Template>,
    opts: EvalOptions,
) -> Result<Rational, ExprError> {
    let mut total = Rational::zero();
    for (m, c) in e.terms() {
        let mut value = c.clone();
        for (a, k) in m.factors() {
            let base = eval_atom(a, assignment, models, opts)?;
            value *= int_pow(&base, k)?;
        }
        if !m.exp_form().is_zero() {
            value *= exp_approx(&eval_form(m.exp_form(), assignment)?, opts.exp_digits);
        }
        total += value;
    }
    Ok(total)
}

fn eval_atom(
    a: &Atom,
    assignment: &BTreeMap<Var, Rational>,
    models: &BTreeMap<Name, Template>,
    opts: EvalOptions,
) -> Result<Rational, ExprError> {
    match a {
        Atom::Sym(n) => assignment
            .get(&Var::Sym(n.clone()))
            .cloned()
            .ok_or_else(|| ExprError::MissingBinding(n.to_string())),
        Atom::Jet(j) => assignment
            .get(&Var::Jet(j.clone()))
            .cloned()
            .ok_or_else(|| ExprError::MissingBinding(a.to_string())),
        Atom::Func(fa) => {
            let model = models
                .get(fa.name())
                .ok_or_else(|| ExprError::MissingBinding(fa.name().to_string()))?;
            if model.params.len() != fa.args().len() {
                return Err(ExprError::Arity {
                    name: fa.name().to_string(),
                    expected: fa.args().len(),
                    found: model.params.len(),
                });
            }
            let mut inner = assignment.clone();
            for (p, arg) in model.params.iter().zip(fa.args()) {
                let v = evaluate(arg, assignment, models, opts)?;
                inner.insert(Var::Sym(p.clone()), v);
            }
            evaluate(&model.derivative(fa.derivs()), &inner, models, opts)
        }
    }
}

fn eval_form(lf: &LinearForm, assignment: &BTreeMap<Var, Rational>) -> Result<Rational, ExprError> {
    lf.terms().try_fold(Rational::zero(), |acc, (n, c)| {
        let v = assignment
            .get(&Var::Sym(n.clone()))
            .ok_or_else(|| ExprError::MissingBinding(n.to_string()))?;
        Ok(acc + c * v)
    })
}

fn int_pow(base: &Rational, k: i64) -> Result<Rational, ExprError> {
    if k < 0 && base.is_zero() {
        return Err(ExprError::DivisionByZero);
    }
    let b = if k < 0 { base.recip() } else { base.clone() };
    Ok(num_traits::pow(b, k.unsigned_abs() as usize))
}

/// Rational approximation of `exp(q)`, within about `10^-digits` relative error.
pub fn exp_approx(q: &Rational, digits: u32) -> Rational {
    if q.is_zero() {
        return Rational::one();
    }
    let scale = num_traits::pow(BigInt::from(10), digits as usize + 10);
    let round = |r: Rational| -> Rational {
        let n = (r * Rational::from_integer(scale.clone())).round().to_integer();
        Rational::new(n, scale.clone())
    };
    // halve until |q| <= 1/2, sum the series, square back up
    let mut halvings = 0u32;
    let mut r = q.clone();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    while r.abs() > half {
        r /= Rational::from_integer(BigInt::from(2));
        halvings += 1;
    }
    let eps = Rational::new(BigInt::one(), scale.clone());
    let mut sum = Rational::one();
    let mut term = Rational::one();
    let mut n = 1u64;
    loop {
        term = round(&term * &r / Rational::from_integer(BigInt::from(n)));
        if term.abs() < eps {
            break;
        }
        sum += &term;
        n += 1;
    }
    for _ in 0..halvings {
        sum = round(&sum * &sum);
    }
    sum
}
