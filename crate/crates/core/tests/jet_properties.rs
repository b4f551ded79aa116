mod common;

use common::*;
use liesym_core::expr::{Expr, Rational};
use liesym_core::jet::{Dir, JetSpace};
use proptest::prelude::*;

fn jet_expr(space: &JetSpace, ts: &[Term], jets: &[u8]) -> Expr {
    ts.iter()
        .zip(jets.iter().cycle())
        .map(|(t, &j)| &t.expr() * &jet_factor(space, j))
        .sum()
}

fn coefficient() -> impl Strategy<Value = Expr> {
    terms(true, true).prop_map(|ts| sum(&ts))
}

fn scaled(v: &liesym_core::field::VectorField, k: &Rational) -> liesym_core::field::VectorField {
    v.scale(k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn total_derivatives_commute(ts in terms(true, true), jets in prop::collection::vec(0u8..5, 1..5)) {
        let space = JetSpace::default();
        let e = jet_expr(&space, &ts, &jets);
        let xt = space.total_derivative(&space.total_derivative(&e, Dir::T).unwrap(), Dir::X).unwrap();
        let tx = space.total_derivative(&space.total_derivative(&e, Dir::X).unwrap(), Dir::T).unwrap();
        prop_assert_eq!(xt, tx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prolongation_is_linear(
        v in (coefficient(), coefficient(), coefficient()),
        w in (coefficient(), coefficient(), coefficient()),
        a in rational(),
        b in rational(),
    ) {
        let space = JetSpace::default();
        let v = base_field(&v.0, &v.1, &v.2);
        let w = base_field(&w.0, &w.1, &w.2);
        let combined = scaled(&v, &a).try_add(&scaled(&w, &b)).unwrap();
        let (pc, pv, pw) = (
            space.prolong2(&combined).unwrap(),
            space.prolong2(&v).unwrap(),
            space.prolong2(&w).unwrap(),
        );
        let lin = |l: &Expr, r: &Expr| &l.scale(&a) + &r.scale(&b);
        prop_assert_eq!(pc.phi_x(), &lin(pv.phi_x(), pw.phi_x()));
        prop_assert_eq!(pc.phi_t(), &lin(pv.phi_t(), pw.phi_t()));
        prop_assert_eq!(pc.phi_xx(), &lin(pv.phi_xx(), pw.phi_xx()));
        prop_assert_eq!(pc.phi_xt(), &lin(pv.phi_xt(), pw.phi_xt()));
    }

    #[test]
    fn characteristic_identity(v in (coefficient(), coefficient(), coefficient())) {
        let space = JetSpace::default();
        let v = base_field(&v.0, &v.1, &v.2);
        let p = space.prolong2(&v).unwrap();
        prop_assert_eq!(p.phi_x(), &space.first_order_via_characteristic(&v, Dir::X).unwrap());
        prop_assert_eq!(p.phi_t(), &space.first_order_via_characteristic(&v, Dir::T).unwrap());
        prop_assert_eq!(p.phi_xx(), &space.second_order_via_characteristic(&v, Dir::X, Dir::X).unwrap());
        prop_assert_eq!(p.phi_xt(), &space.second_order_via_characteristic(&v, Dir::X, Dir::T).unwrap());
    }
}
