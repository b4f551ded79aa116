mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use liesym_core::expr::{
    evaluate, name, recombine, Bindings, EvalOptions, Expr, FunctionBinding, Rational, Template, Var,
};
use liesym_core::jet::JetSpace;
use proptest::prelude::*;

fn x() -> Var {
    Var::sym("x")
}

fn u() -> Var {
    Var::sym("u")
}

fn template_body(params: &[&str], coeffs: &[(u32, u32, i64)]) -> Expr {
    coeffs
        .iter()
        .map(|&(a, b, c)| {
            let p = Expr::sym(params[0]).pow(i64::from(a)).unwrap();
            let q = match params.get(1) {
                Some(q) => Expr::sym(q).pow(i64::from(b)).unwrap(),
                None => Expr::one(),
            };
            (&p * &q).scale(&Rational::from_integer(c.into()))
        })
        .sum()
}

fn models_strategy() -> impl Strategy<Value = (Vec<(u32, u32, i64)>, Vec<(u32, u32, i64)>)> {
    let coeffs = || prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4);
    (coeffs(), coeffs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_term_order(ts in terms(true, true), seed in any::<u64>()) {
        let mut shuffled = ts.clone();
        let n = shuffled.len();
        for i in 0..n {
            shuffled.swap(i, (seed as usize).wrapping_add(i * 7) % n);
        }
        let forward = sum(&ts);
        let backward = ts.iter().rev().map(Term::expr).fold(Expr::zero(), |a, b| &b + &a);
        prop_assert_eq!(&forward, &sum(&shuffled));
        prop_assert_eq!(&forward, &backward);
        prop_assert_eq!(forward.to_string(), sum(&shuffled).to_string());
    }

    #[test]
    fn canonical_form_ignores_factor_order(ts in terms(true, true)) {
        let factors: Vec<Expr> = ts.iter().map(Term::expr).collect();
        let left = factors.iter().fold(Expr::one(), |a, b| &a * b);
        let right = factors.iter().rev().fold(Expr::one(), |a, b| b * &a);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn ring_laws(a in terms(true, true), b in terms(true, true), c in terms(true, false)) {
        let (a, b, c) = (sum(&a), sum(&b), sum(&c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn clairaut(ts in terms(true, true)) {
        let e = sum(&ts);
        prop_assert_eq!(
            e.differentiate(&x()).differentiate(&u()),
            e.differentiate(&u()).differentiate(&x())
        );
    }

    #[test]
    fn power_rule_oracle(m in poly_map()) {
        let mut dx: BTreeMap<(u32, u32, u32), i64> = BTreeMap::new();
        for (&(a, b, c), &k) in &m {
            if a > 0 {
                *dx.entry((a - 1, b, c)).or_insert(0) += k * i64::from(a);
            }
        }
        prop_assert_eq!(poly(&m).differentiate(&x()), poly(&dx));
    }

    #[test]
    fn symbolic_derivative_matches_substituted_polynomial(
        ts in terms(true, false),
        (fc, gc) in models_strategy(),
        px in rational(),
        pt in rational(),
        pu in rational(),
        wrt in 0usize..3,
    ) {
        let e = sum(&ts);
        let v = Var::sym(["x", "t", "u"][wrt]);
        let f_model = Template::new(&["p", "q"], template_body(&["p", "q"], &fc));
        let g_model = Template::new(&["p"], template_body(&["p"], &gc));
        let assignment: BTreeMap<Var, Rational> =
            [(Var::sym("x"), px), (Var::sym("t"), pt), (Var::sym("u"), pu)].into_iter().collect();
        let models: BTreeMap<_, _> =
            [(name("f"), f_model.clone()), (name("g"), g_model.clone())].into_iter().collect();
        let symbolic = evaluate(&e.differentiate(&v), &assignment, &models, EvalOptions::default()).unwrap();

        let b = Bindings::new()
            .bind_function("f", FunctionBinding::Template(f_model))
            .bind_function("g", FunctionBinding::Template(g_model));
        let substituted = e.substitute(&b).unwrap();
        prop_assert!(substituted.function_names().is_empty());
        let oracle = evaluate(&substituted.differentiate(&v), &assignment, &BTreeMap::new(), EvalOptions::default()).unwrap();
        prop_assert_eq!(symbolic, oracle);
    }

    #[test]
    fn collect_round_trip(ts in terms(true, true), jets in prop::collection::vec(0u8..5, 1..5)) {
        let space = JetSpace::default();
        let e: Expr = ts
            .iter()
            .zip(jets.iter().cycle())
            .map(|(t, &j)| &t.expr() * &jet_factor(&space, j))
            .sum();
        let basis: BTreeSet<Var> = [space.u_x(), space.u_xx(), space.u_xt()]
            .iter()
            .flat_map(|j| j.jets())
            .map(jet_var)
            .collect();
        let parts = e.collect(&basis).unwrap();
        prop_assert_eq!(recombine(&parts), e);
    }
}
