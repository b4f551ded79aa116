#![allow(dead_code)]

use std::collections::BTreeMap;

use liesym_core::expr::{ratio, Context, Expr, JetCoord, LinearForm, Rational, Var};
use liesym_core::field::VectorField;
use liesym_core::jet::JetSpace;
use proptest::prelude::*;

/// One product term `c · x^px t^pt u^pu · F · exp(ex·x)`.
#[derive(Debug, Clone)]
pub struct Term {
    pub c: i64,
    pub px: u32,
    pub pt: u32,
    pub pu: u32,
    /// 0 none, 1 `f(x,u)`, 2 `f(x + u, x*u)`, 3 `g(u^2)`.
    pub func: u8,
    pub ex: i64,
}

pub fn monomial(px: u32, pt: u32, pu: u32) -> Expr {
    let p = |v: &str, k: u32| Expr::sym(v).pow(i64::from(k)).unwrap();
    &(&p("x", px) * &p("t", pt)) * &p("u", pu)
}

pub fn func_factor(kind: u8) -> Expr {
    let (x, u) = (Expr::sym("x"), Expr::sym("u"));
    match kind {
        1 => Expr::func("f", &["p", "q"], vec![x, u]),
        2 => Expr::func("f", &["p", "q"], vec![&x + &u, &x * &u]),
        3 => Expr::func("g", &["p"], vec![&u * &u]),
        _ => Expr::one(),
    }
}

impl Term {
    pub fn expr(&self) -> Expr {
        let mut e = &monomial(self.px, self.pt, self.pu) * &func_factor(self.func);
        if self.ex != 0 {
            e = &e * &Expr::exp(LinearForm::single("x", Rational::from_integer(self.ex.into())));
        }
        e.scale(&Rational::from_integer(self.c.into()))
    }
}

pub fn term(funcs: bool, exps: bool) -> impl Strategy<Value = Term> {
    let func = if funcs { 0u8..4 } else { 0u8..1 };
    let ex = if exps { -2i64..3 } else { 0i64..1 };
    (
        prop_oneof![-4i64..0, 1i64..5],
        0u32..3,
        0u32..3,
        0u32..3,
        func,
        ex,
    )
        .prop_map(|(c, px, pt, pu, func, ex)| Term {
            c,
            px,
            pt,
            pu,
            func,
            ex,
        })
}

pub fn terms(funcs: bool, exps: bool) -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(term(funcs, exps), 1..5)
}

pub fn sum(ts: &[Term]) -> Expr {
    ts.iter().map(Term::expr).sum()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..7, 1i64..5).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..0, 1i64..7], 1i64..5).prop_map(|(n, d)| ratio(n, d))
}

/// Polynomial over `(x, t, u)` with small exponents, as `(px, pt, pu) → c`.
pub fn poly_map() -> impl Strategy<Value = BTreeMap<(u32, u32, u32), i64>> {
    prop::collection::btree_map((0u32..3, 0u32..3, 0u32..3), prop_oneof![-3i64..0, 1i64..4], 0..4)
}

pub fn poly(m: &BTreeMap<(u32, u32, u32), i64>) -> Expr {
    m.iter()
        .map(|(&(a, b, c), &k)| monomial(a, b, c).scale(&Rational::from_integer(k.into())))
        .sum()
}

pub fn base_field(xi1: &Expr, xi2: &Expr, phi: &Expr) -> VectorField {
    VectorField::zero(&["x", "t", "u"])
        .with("x", xi1.clone())
        .with("t", xi2.clone())
        .with("u", phi.clone())
}

/// Jet factor of order at most 2: `u_x, u_t, u_xx, u_xt` (index 0 is none).
pub fn jet_factor(space: &JetSpace, k: u8) -> Expr {
    match k {
        1 => space.u_x(),
        2 => space.u_t(),
        3 => space.u_xx(),
        4 => space.u_xt(),
        _ => Expr::one(),
    }
}

pub fn jet_var(j: JetCoord) -> Var {
    Var::Jet(j)
}

pub fn ctx5() -> Context {
    ["t", "x", "u", "f", "g"]
        .iter()
        .fold(Context::new(), |c, s| c.coordinate(s).unwrap())
}

pub fn field5(pairs: &[(&str, &str)]) -> VectorField {
    let c = ctx5();
    pairs
        .iter()
        .fold(VectorField::zero(&["t", "x", "u", "f", "g"]), |v, (d, e)| {
            v.with(d, c.parse(e).unwrap())
        })
}

/// The five-dimensional basis in declared order.
pub fn burgers_basis() -> Vec<VectorField> {
    vec![
        field5(&[("x", "1")]),
        field5(&[("t", "1")]),
        field5(&[("u", "1")]),
        field5(&[("t", "t"), ("u", "u"), ("f", "-2*f"), ("g", "-g")]),
        field5(&[("x", "1"), ("f", "2*f"), ("g", "g")]),
    ]
}

pub fn burgers_names() -> Vec<String> {
    (1..=5).map(|i| format!("Y{i}")).collect()
}
