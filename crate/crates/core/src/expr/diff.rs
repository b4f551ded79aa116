use num_traits::Zero;

use super::{rat, Atom, Expr, Monomial, Rational, Var};

impl Expr {
    /// Exact partial derivative with respect to `v`, treating every other atom
    /// as independent. Function applications use the chain rule through their
    /// arguments.
    pub fn differentiate(&self, v: &Var) -> Expr {
        self.map_terms(|m, c| diff_term(m, c, v))
    }

    /// Repeated differentiation, one variable per entry.
    pub fn differentiate_many(&self, vars: &[Var]) -> Expr {
        vars.iter().fold(self.clone(), |e, v| e.differentiate(v))
    }
}

fn diff_term(m: &Monomial, c: &Rational, v: &Var) -> Expr {
    let mut out = Expr::zero();
    if let Var::Sym(n) = v {
        let k = m.exp.coeff(n);
        if !k.is_zero() {
            out.add_term(m.clone(), c * k);
        }
    }
    for (a, power) in m.factors() {
        let da = diff_atom(a, v);
        if da.is_zero() {
            continue;
        }
        let mut rest = m.clone();
        rest.mul_atom(a.clone(), -1);
        out += da.mul_monomial(&rest, &(c * rat(power)));
    }
    out
}

fn diff_atom(a: &Atom, v: &Var) -> Expr {
    match (a, v) {
        (Atom::Sym(n), Var::Sym(w)) if n == w => Expr::one(),
        (Atom::Jet(j), Var::Jet(w)) if j == w => Expr::one(),
        (Atom::Func(fa), _) => {
            let mut out = Expr::zero();
            for (slot, arg) in fa.args.iter().enumerate() {
                let inner = arg.differentiate(v);
                if inner.is_zero() {
                    continue;
                }
                out += &Expr::atom(Atom::Func(fa.bumped(slot))) * &inner;
            }
            out
        }
        _ => Expr::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Context, LinearForm};
    use super::*;

    fn ctx() -> Context {
        Context::new()
            .coordinate("x")
            .unwrap()
            .coordinate("u")
            .unwrap()
            .function("f", &["x", "u"])
            .unwrap()
            .function("Phi", &["p"])
            .unwrap()
    }

    #[test]
    fn product_and_exponential_rule() {
        let c = ctx();
        let e = c.parse("u*exp(-x)").unwrap();
        assert_eq!(e.differentiate(&Var::sym("x")), c.parse("-u*exp(-x)").unwrap());
    }

    #[test]
    fn chain_rule_through_argument() {
        let c = ctx();
        let e = c.parse("Phi(u*exp(-x))").unwrap();
        let want = c.parse("-u*exp(-x)*D[Phi,p](u*exp(-x))").unwrap();
        assert_eq!(e.differentiate(&Var::sym("x")), want);
    }

    #[test]
    fn product_rule_with_function() {
        let c = ctx();
        let e = c.parse("f(x,u)*u").unwrap();
        let want = c.parse("f(x,u) + u*D[f,u]").unwrap();
        assert_eq!(e.differentiate(&Var::sym("u")), want);
    }

    #[test]
    fn negative_power() {
        let c = ctx();
        let e = c.parse("u^-2").unwrap();
        assert_eq!(e.differentiate(&Var::sym("u")), c.parse("-2*u^-3").unwrap());
    }

    #[test]
    fn exponential_alone() {
        let e = Expr::exp(LinearForm::single("x", rat(3)));
        assert_eq!(e.differentiate(&Var::sym("x")), e.scale(&rat(3)));
    }
}
