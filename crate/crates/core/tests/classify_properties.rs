mod common;

use common::*;
use liesym_core::classify::{build_table, invariants, project, ProjectedOperator};
use liesym_core::fixtures;
use liesym_core::jet::JetSpace;
use liesym_core::lie_algebra::LieAlgebra;
use liesym_core::optimal::OptimalSystem;
use proptest::prelude::*;

fn system() -> OptimalSystem {
    let alg = LieAlgebra::new(burgers_names(), burgers_basis()).unwrap();
    OptimalSystem::from_fixtures(alg, &[2, 1, 3, 4, 5], &fixtures::lookup("burgers-g5").unwrap()).unwrap()
}

fn row_operators() -> Vec<ProjectedOperator> {
    let t = build_table(&JetSpace::default(), &system(), None).unwrap();
    t.rows.iter().map(|r| r.z.clone()).collect()
}

#[test]
fn every_row_basis_is_annihilated() {
    let ops = row_operators();
    assert_eq!(ops.len(), 6);
    for z in ops {
        let b = invariants(&z).unwrap();
        let zf = z.field();
        for i in [b.lambda.clone(), b.i_f(), b.i_g()] {
            assert!(zf.apply(&i).is_zero(), "Z = {zf}, I = {i}");
        }
    }
}

#[test]
fn shared_projections_give_identical_bases() {
    let sys = system();
    let t = build_table(&JetSpace::default(), &sys, None).unwrap();
    for row in &t.rows {
        let bases: Vec<_> = row
            .sources
            .iter()
            .map(|i| {
                let r = sys.representatives().iter().find(|r| r.index == *i).unwrap();
                invariants(&project(&r.field).unwrap().unwrap()).unwrap()
            })
            .collect();
        assert!(bases.windows(2).all(|w| w[0] == w[1]), "row {}", row.n);
    }
    let five = [5usize, 10, 11];
    assert_eq!(t.rows[3].sources, five);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn scaling_leaves_forms_unchanged(c in nonzero_rational(), row in 0usize..6) {
        let z = &row_operators()[row];
        let (a, b) = (invariants(z).unwrap(), invariants(&z.scale(&c)).unwrap());
        prop_assert_eq!(a.f_form().unwrap(), b.f_form().unwrap());
        prop_assert_eq!(a.g_form().unwrap(), b.g_form().unwrap());
    }
}
