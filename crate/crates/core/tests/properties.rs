mod common;

use std::sync::Arc;

use proptest::prelude::*;
use qideal_core::completion::ideal_space;
use qideal_core::exec;
use qideal_core::fuzzy::{self, FuzzySet, Kind};
use qideal_core::ideal::{sequence_generated_ideals, IdealClass, IdealContext};
use qideal_core::io::FiniteOrder;
use qideal_core::quantale::{boolean4, godel_chain, lukasiewicz_chain, FiniteCarrier, IntervalQuantale, Quantale, TNorm};
use qideal_core::random;
use qideal_core::scott::{Mode, ScottContext};
use qideal_core::Budget;

fn order(which: usize, n: usize, seed: u64) -> FiniteOrder {
    let q = Arc::new(match which {
        0 => boolean4(),
        1 => lukasiewicz_chain(3).unwrap(),
        _ => godel_chain(4).unwrap(),
    });
    random::random_qorders(q, n..=n, 1, seed).unwrap().remove(0)
}

fn orders() -> impl Strategy<Value = FiniteOrder> {
    (0usize..3, 1usize..=3, any::<u64>()).prop_map(|(w, n, s)| order(w, n, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn yoneda_embeds_into_every_class(a in orders()) {
        let budget = Budget::default();
        for class in IdealClass::IDEALS {
            let space = ideal_space(&a, class, &budget).unwrap();
            prop_assert!(space.yoneda_fully_faithful());
        }
    }

    #[test]
    fn fc_ideals_are_principal_flat_and_irreducible(a in orders()) {
        let ctx = IdealContext::new(&a, Budget::default());
        let fc = ctx.ideals(IdealClass::ForwardCauchy).unwrap();
        let flat = ctx.ideals(IdealClass::Flat).unwrap();
        let irr = ctx.ideals(IdealClass::Irreducible).unwrap();
        for phi in &fc {
            prop_assert!(common::is_principal(&a, &phi.values));
            prop_assert!(flat.contains(phi) && irr.contains(phi));
        }
        let principal = (0..a.len()).map(|x| fuzzy::yoneda(&a, x));
        for y in principal {
            prop_assert!(fc.contains(&y));
        }
    }

    #[test]
    fn forward_cauchy_routes_agree(a in orders()) {
        let mut by_decider = IdealContext::new(&a, Budget::default()).ideals(IdealClass::ForwardCauchy).unwrap();
        let mut by_sequences = sequence_generated_ideals(&a, 3);
        by_decider.sort();
        by_sequences.sort();
        prop_assert_eq!(by_decider, by_sequences);
    }

    #[test]
    fn lower_sets_are_closed_under_lattice_and_tensor(a in orders(), p in 0usize..4) {
        let q = a.quantale();
        let p = q.value_at(p % q.size());
        let lowers = fuzzy::enumerate_monotone(&a, Kind::Lower, &Budget::default()).unwrap();
        for phi in &lowers {
            prop_assert!(common::is_lower(&a, &fuzzy::tensor_const(q, p, phi).values));
            prop_assert!(common::is_lower(&a, &fuzzy::residuate_from(q, p, phi).values));
            for psi in &lowers {
                prop_assert!(common::is_lower(&a, &fuzzy::meet(q, phi, psi).values));
                prop_assert!(common::is_lower(&a, &fuzzy::join(q, phi, psi).values));
            }
        }
    }

    #[test]
    fn sub_absorbs_constants(a in orders(), p in 0usize..4) {
        let q = a.quantale();
        let p = q.value_at(p % q.size());
        let lowers = fuzzy::enumerate_monotone(&a, Kind::Lower, &Budget::default()).unwrap();
        for phi in &lowers {
            for psi in &lowers {
                let lhs = fuzzy::sub(q, &fuzzy::tensor_const(q, p, phi), psi);
                prop_assert_eq!(lhs, q.residuate(p, fuzzy::sub(q, phi, psi)));
            }
        }
    }

    #[test]
    fn sequential_matches_parallel(a in orders()) {
        let budget = Budget::default();
        for class in IdealClass::IDEALS {
            let par = IdealContext::new(&a, budget).ideals(class).unwrap();
            let seq = exec::sequential(|| IdealContext::new(&a, budget).ideals(class).unwrap());
            prop_assert_eq!(&par, &seq);
            for mode in [Mode::Topology, Mode::Cotopology] {
                let par = ScottContext::new(&a, class, &budget).unwrap().members(mode).unwrap();
                let seq = exec::sequential(|| ScottContext::new(&a, class, &budget).unwrap().members(mode).unwrap());
                prop_assert_eq!(par, seq);
            }
        }
    }

    #[test]
    fn scott_members_include_constants(a in orders()) {
        let q = a.quantale();
        let ctx = ScottContext::new(&a, IdealClass::Flat, &Budget::default()).unwrap();
        for p in q.values() {
            let c = FuzzySet::constant(p, a.len());
            prop_assert!(ctx.is_member(&c, Mode::Topology));
            prop_assert!(ctx.is_member(&c, Mode::Cotopology));
        }
    }

    #[test]
    fn interval_residuation_is_adjoint(p in 0.0f64..=1.0, r in 0.0f64..=1.0, s in 0.0f64..=1.0, t in 0usize..4) {
        let tnorm = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz, TNorm::NilpotentMinimum][t].clone();
        let q = IntervalQuantale::new(tnorm);
        let tol = 1e-12;
        // p & s <= r  iff  s <= p -> r, away from the boundary
        let lhs = q.tensor(p, s);
        let rhs = q.residuate(p, r);
        if (lhs - r).abs() > tol && (s - rhs).abs() > tol {
            prop_assert_eq!(lhs <= r, s <= rhs);
        }
        prop_assert!(q.tensor(p, q.residuate(p, r)) <= r + tol);
    }
}
