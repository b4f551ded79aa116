//! Exact symbolic expressions in canonical sum-of-terms form.
//!
//! An [`Expr`] is a finite sum of rational multiples of [`Monomial`]s. A
//! monomial is a product of integer powers of [`Atom`]s times at most one
//! exponential `exp(L)`, where `L` is a rational linear form in plain symbols.
//! Construction always goes through the arithmetic below, so two expressions
//! with the same mathematical content have identical representations and can
//! be compared with `==`.

mod collect;
mod context;
mod diff;
mod eval;
mod parse;
mod render;
mod subst;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use collect::{recombine, Collected};
pub use context::{Context, Symbol, SymbolKind};
pub use eval::{evaluate, exp_approx, EvalOptions};
pub use subst::{Bindings, FunctionBinding, Template};

pub type Name = Arc<str>;
pub type Rational = BigRational;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{0}` is already declared")]
    Duplicate(String),
    #[error("arity mismatch for `{name}`: expected {expected}, found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("cyclic binding: `{0}` is bound to an expression containing itself")]
    Cyclic(String),
    #[error("`{atom}` is not polynomial in term `{term}`")]
    NotPolynomial { atom: String, term: String },
    #[error("exponent argument is not a rational linear form: {0}")]
    NonLinearExponent(String),
    #[error("division by a non-monomial expression: {0}")]
    NonMonomialDivisor(String),
    #[error("non-integer exponent: {0}")]
    NonIntegerPower(String),
    #[error("missing binding for `{0}`")]
    MissingBinding(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// A derivative coordinate `dep_{v1 v2 ...}` of a dependent variable.
///
/// `derivs` holds nonzero counts in the dependent's declared variable order,
/// so `u_tx` and `u_xt` are the same atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetCoord {
    dep: Name,
    derivs: Vec<(Name, u32)>,
}

impl JetCoord {
    /// Builds a jet coordinate; `counts` pairs variables with multiplicities and
    /// must already be listed in the dependent's variable order.
    pub fn new(dep: &str, counts: &[(&str, u32)]) -> Self {
        JetCoord {
            dep: name(dep),
            derivs: counts
                .iter()
                .filter(|(_, k)| *k > 0)
                .map(|(v, k)| (name(v), *k))
                .collect(),
        }
    }

    pub fn dep(&self) -> &Name {
        &self.dep
    }

    pub fn derivs(&self) -> &[(Name, u32)] {
        &self.derivs
    }

    pub fn order(&self) -> u32 {
        self.derivs.iter().map(|(_, k)| k).sum()
    }

    pub fn count(&self, var: &str) -> u32 {
        self.derivs
            .iter()
            .find(|(v, _)| &**v == var)
            .map_or(0, |(_, k)| *k)
    }

    /// One more derivative in `var`, keeping the order given by `var_order`.
    pub fn raise(&self, var: &str, var_order: &[Name]) -> JetCoord {
        let derivs = var_order
            .iter()
            .filter_map(|v| {
                let k = self.count(v) + u32::from(&**v == var);
                (k > 0).then(|| (v.clone(), k))
            })
            .collect();
        JetCoord {
            dep: self.dep.clone(),
            derivs,
        }
    }
}

/// `D[F, ...](args)`: a mixed partial derivative of an arbitrary function.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncApp {
    name: Name,
    params: Arc<[Name]>,
    derivs: Vec<u32>,
    args: Vec<Expr>,
}

impl FuncApp {
    pub fn name(&self) -> &Name {
        &self.name
    }
    pub fn params(&self) -> &[Name] {
        &self.params
    }
    pub fn derivs(&self) -> &[u32] {
        &self.derivs
    }
    pub fn args(&self) -> &[Expr] {
        &self.args
    }
    pub fn order(&self) -> u32 {
        self.derivs.iter().sum()
    }

    fn bumped(&self, slot: usize) -> FuncApp {
        let mut next = self.clone();
        next.derivs[slot] += 1;
        next
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Sym(Name),
    Func(FuncApp),
    Jet(JetCoord),
}

/// Something an expression can be differentiated with respect to or bound in a
/// substitution.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Sym(Name),
    Jet(JetCoord),
}

impl Var {
    pub fn sym(s: &str) -> Var {
        Var::Sym(name(s))
    }

    fn as_atom(&self) -> Atom {
        match self {
            Var::Sym(n) => Atom::Sym(n.clone()),
            Var::Jet(j) => Atom::Jet(j.clone()),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.as_atom(), f)
    }
}

/// Rational linear combination of symbols, the argument of an `exp` atom.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(BTreeMap<Name, Rational>);

impl LinearForm {
    pub fn single(var: &str, coeff: Rational) -> Self {
        let mut lf = LinearForm::default();
        lf.add_term(name(var), coeff);
        lf
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, var: &str) -> Rational {
        self.0.get(var).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Name, &Rational)> {
        self.0.iter()
    }

    fn add_term(&mut self, var: Name, c: Rational) {
        let entry = self.0.entry(var.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&var);
        }
    }

    fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for (v, c) in &other.0 {
            out.add_term(v.clone(), c.clone());
        }
        out
    }

    fn scale(&self, k: &Rational) -> LinearForm {
        if k.is_zero() {
            return LinearForm::default();
        }
        LinearForm(self.0.iter().map(|(v, c)| (v.clone(), c * k)).collect())
    }

    pub fn to_expr(&self) -> Expr {
        self.0
            .iter()
            .map(|(v, c)| Expr::sym(v).scale(c))
            .fold(Expr::zero(), |acc, e| acc + e)
    }

    /// Reads a linear form back out of an expression; fails on constants,
    /// products, or non-symbol atoms.
    pub fn from_expr(e: &Expr) -> Result<LinearForm, ExprError> {
        let mut lf = LinearForm::default();
        for (m, c) in e.terms() {
            let bad = || ExprError::NonLinearExponent(e.to_string());
            if !m.exp.is_zero() || m.factors.len() != 1 {
                return Err(bad());
            }
            let (atom, k) = m.factors.iter().next().unwrap();
            match atom {
                Atom::Sym(n) if *k == 1 => lf.add_term(n.clone(), c.clone()),
                _ => return Err(bad()),
            }
        }
        Ok(lf)
    }
}

/// Product of integer powers of atoms times `exp(L)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    factors: BTreeMap<Atom, i64>,
    exp: LinearForm,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn atom(a: Atom, k: i64) -> Self {
        let mut m = Monomial::one();
        if k != 0 {
            m.factors.insert(a, k);
        }
        m
    }

    pub fn exp(lf: LinearForm) -> Self {
        Monomial {
            factors: BTreeMap::new(),
            exp: lf,
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.exp.is_zero()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Atom, i64)> {
        self.factors.iter().map(|(a, k)| (a, *k))
    }

    pub fn exp_form(&self) -> &LinearForm {
        &self.exp
    }

    pub fn power_of(&self, a: &Atom) -> i64 {
        self.factors.get(a).copied().unwrap_or(0)
    }

    /// Total degree in the jet coordinates.
    pub fn jet_degree(&self) -> i64 {
        self.factors
            .iter()
            .filter(|(a, _)| matches!(a, Atom::Jet(_)))
            .map(|(_, k)| k)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (a, k) in &other.factors {
            out.mul_atom(a.clone(), *k);
        }
        out.exp = self.exp.add(&other.exp);
        out
    }

    fn mul_atom(&mut self, a: Atom, k: i64) {
        let entry = self.factors.entry(a.clone()).or_insert(0);
        *entry += k;
        if *entry == 0 {
            self.factors.remove(&a);
        }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|(a, p)| (a.clone(), p * k)).collect(),
            exp: self.exp.scale(&rat(k)),
        }
    }

    /// Splits into (factors whose atom satisfies `pred`, the rest).
    pub fn split(&self, pred: impl Fn(&Atom) -> bool) -> (Monomial, Monomial) {
        let mut hit = Monomial::one();
        let mut rest = Monomial {
            factors: BTreeMap::new(),
            exp: self.exp.clone(),
        };
        for (a, k) in &self.factors {
            if pred(a) {
                hit.factors.insert(a.clone(), *k);
            } else {
                rest.factors.insert(a.clone(), *k);
            }
        }
        (hit, rest)
    }
}

/// Canonical exact expression.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr {
    terms: BTreeMap<Monomial, Rational>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::constant(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(rat(n))
    }

    pub fn constant(c: Rational) -> Self {
        Expr::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut e = Expr::zero();
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn atom(a: Atom) -> Self {
        Expr::term(Monomial::atom(a, 1), Rational::one())
    }

    pub fn sym(s: &str) -> Self {
        Expr::atom(Atom::Sym(name(s)))
    }

    pub fn jet(j: JetCoord) -> Self {
        Expr::atom(Atom::Jet(j))
    }

    pub fn var(v: &Var) -> Self {
        Expr::atom(v.as_atom())
    }

    pub fn exp(lf: LinearForm) -> Self {
        Expr::term(Monomial::exp(lf), Rational::one())
    }

    /// `F(args)` with the function's declared parameter names.
    pub fn func(fname: &str, params: &[&str], args: Vec<Expr>) -> Self {
        Expr::func_deriv(fname, params, vec![0; params.len()], args)
    }

    pub fn func_deriv(fname: &str, params: &[&str], derivs: Vec<u32>, args: Vec<Expr>) -> Self {
        assert_eq!(params.len(), args.len(), "arity mismatch building {fname}");
        assert_eq!(params.len(), derivs.len(), "arity mismatch building {fname}");
        Expr::atom(Atom::Func(FuncApp {
            name: name(fname),
            params: params.iter().map(|p| name(p)).collect(),
            derivs,
            args,
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, k: &Rational) -> Expr {
        if k.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Expr {
        let mut out = Expr::zero();
        for (tm, tc) in &self.terms {
            out.add_term(tm.mul(m), tc * c);
        }
        out
    }

    /// Integer power. Negative powers are only defined for single terms.
    pub fn pow(&self, k: i64) -> Result<Expr, ExprError> {
        if k >= 0 {
            let mut out = Expr::one();
            for _ in 0..k {
                out = &out * self;
            }
            return Ok(out);
        }
        self.recip()?.pow(-k)
    }

    pub fn recip(&self) -> Result<Expr, ExprError> {
        match self.as_monomial() {
            Some((m, c)) => Ok(Expr::term(m.pow(-1), c.recip())),
            None if self.is_zero() => Err(ExprError::DivisionByZero),
            None => Err(ExprError::NonMonomialDivisor(self.to_string())),
        }
    }

    pub fn div(&self, other: &Expr) -> Result<Expr, ExprError> {
        Ok(self * &other.recip()?)
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.free_vars().contains(v)
    }

    /// Every symbol and jet coordinate occurring anywhere, including inside
    /// function arguments and exponentials.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut out);
        out
    }

    fn visit_vars(&self, out: &mut BTreeSet<Var>) {
        for m in self.terms.keys() {
            for n in m.exp.0.keys() {
                out.insert(Var::Sym(n.clone()));
            }
            for a in m.factors.keys() {
                match a {
                    Atom::Sym(n) => {
                        out.insert(Var::Sym(n.clone()));
                    }
                    Atom::Jet(j) => {
                        out.insert(Var::Jet(j.clone()));
                    }
                    Atom::Func(fa) => fa.args.iter().for_each(|e| e.visit_vars(out)),
                }
            }
        }
    }

    /// Names of all arbitrary functions applied anywhere in the expression.
    pub fn function_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit_functions(&mut out);
        out
    }

    fn visit_functions(&self, out: &mut BTreeSet<Name>) {
        for m in self.terms.keys() {
            for a in m.factors.keys() {
                if let Atom::Func(fa) = a {
                    out.insert(fa.name.clone());
                    fa.args.iter().for_each(|e| e.visit_functions(out));
                }
            }
        }
    }

    /// Jet coordinates that appear as top-level factors.
    pub fn jets(&self) -> BTreeSet<JetCoord> {
        self.free_vars()
            .into_iter()
            .filter_map(|v| match v {
                Var::Jet(j) => Some(j),
                Var::Sym(_) => None,
            })
            .collect()
    }

    /// Maps each term through `f`, summing the results.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Rational) -> Expr) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            out += f(m, c);
        }
        out
    }

    /// The value as an `i64`, when this is an integer constant.
    pub fn as_integer(&self) -> Option<i64> {
        let c = self.as_constant()?;
        if c.is_integer() {
            c.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn is_negative_leading(&self) -> bool {
        self.terms
            .values()
            .next()
            .is_some_and(|c| c.is_negative())
    }
}

impl From<Rational> for Expr {
    fn from(c: Rational) -> Self {
        Expr::constant(c)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl AddAssign<Expr> for Expr {
    fn add_assign(&mut self, rhs: Expr) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Expr> for Expr {
    fn add_assign(&mut self, rhs: &Expr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, rhs: Expr) -> Expr {
        self += rhs;
        self
    }
}

impl Add<&Expr> for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(mut self) -> Expr {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -self.clone()
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Sub<&Expr> for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        self + &(-rhs)
    }
}

impl Mul<&Expr> for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &rhs.terms {
            out += self.mul_monomial(m, c);
        }
        out
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        &self * &rhs
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |acc, e| acc + e)
    }
}

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_vanish() {
        let x = Expr::sym("x");
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn exponentials_merge_and_cancel() {
        let a = Expr::exp(LinearForm::single("x", rat(2)));
        let b = Expr::exp(LinearForm::single("x", rat(-2)));
        assert_eq!(&a * &b, Expr::one());
    }

    #[test]
    fn negative_power_of_sum_is_rejected() {
        let e = Expr::sym("x") + Expr::one();
        assert!(matches!(e.pow(-1), Err(ExprError::NonMonomialDivisor(_))));
    }

    #[test]
    fn jet_raise_keeps_x_before_t() {
        let vars = [name("x"), name("t")];
        let ut = JetCoord::new("u", &[("t", 1)]);
        assert_eq!(ut.raise("x", &vars), JetCoord::new("u", &[("x", 1), ("t", 1)]));
    }
}

/// Serializes a rational as its `p/q` spelling.
pub fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}
