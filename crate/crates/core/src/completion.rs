//! Ideal spaces `Phi(A)`, weighted joins, saturation, and completeness and
//! continuity with respect to an ideal class.

use serde::Serialize;

use crate::error::{Budget, Error, Result};
use crate::exec;
use crate::fuzzy::{self, FuzzySet};
use crate::ideal::{IdealClass, IdealContext};
use crate::qorder::QOrderedSet;
use crate::quantale::FiniteCarrier;

/// The members of one ideal class of `A`, ordered by inclusion degree.
#[derive(Debug, Clone)]
pub struct IdealSpace<Q: FiniteCarrier> {
    pub base: QOrderedSet<Q>,
    pub class: IdealClass,
    pub carrier: Vec<FuzzySet<Q::Value>>,
    /// The carrier as a Q-ordered set with `hom[i][j] = sub(phi_i, phi_j)`.
    pub space: QOrderedSet<Q>,
    /// `yoneda[a]` is the carrier index of `y(a)`.
    pub yoneda: Vec<usize>,
}

impl<Q: FiniteCarrier> IdealSpace<Q> {
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn index_of(&self, phi: &FuzzySet<Q::Value>) -> Option<usize> {
        self.carrier.iter().position(|c| c == phi)
    }

    /// `sub(y(a), y(b)) = A(a, b)` for all `a, b`.
    pub fn yoneda_fully_faithful(&self) -> bool {
        let q = self.base.quantale();
        let n = self.base.len();
        (0..n).all(|a| {
            (0..n).all(|b| q.equiv(self.space.hom(self.yoneda[a], self.yoneda[b]), self.base.hom(a, b)))
        })
    }

    /// `y_A->(phi)` on the space: `psi |-> join_x phi(x) & sub(psi, y(x))`.
    pub fn yoneda_forward(&self, phi: &FuzzySet<Q::Value>) -> FuzzySet<Q::Value> {
        let q = self.base.quantale();
        FuzzySet::new(
            (0..self.len())
                .map(|i| {
                    q.join_all(
                        (0..self.base.len())
                            .map(|x| q.tensor(phi.at(x), self.space.hom(i, self.yoneda[x]))),
                    )
                })
                .collect(),
        )
    }

    /// `Lambda o y_A`, a fuzzy set on the base.
    pub fn restrict_along_yoneda(&self, lambda: &FuzzySet<Q::Value>) -> FuzzySet<Q::Value> {
        FuzzySet::new(self.yoneda.iter().map(|&i| lambda.at(i)).collect())
    }
}

pub fn ideal_space<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    class: IdealClass,
    budget: &Budget,
) -> Result<IdealSpace<Q>> {
    let carrier = IdealContext::new(a, *budget).ideals(class)?;
    space_from_carrier(a, class, carrier, budget)
}

pub(crate) fn space_from_carrier<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    class: IdealClass,
    carrier: Vec<FuzzySet<Q::Value>>,
    budget: &Budget,
) -> Result<IdealSpace<Q>> {
    let q = a.quantale();
    let m = carrier.len();
    budget.charge_pairs("ideal space", (m as u128).pow(2) * a.len() as u128)?;
    let mut yoneda = Vec::with_capacity(a.len());
    for x in 0..a.len() {
        let y = fuzzy::yoneda(a, x);
        let i = carrier.iter().position(|c| *c == y).ok_or_else(|| {
            Error::Precondition(format!("y({}) is missing from the ideal space", a.label(x)))
        })?;
        yoneda.push(i);
    }
    let hom = exec::map_range(m * m, |k| fuzzy::sub(q, &carrier[k / m], &carrier[k % m]));
    let labels = carrier.iter().map(|c| fuzzy::format(q, c)).collect();
    let space = QOrderedSet::from_parts(a.quantale_arc().clone(), labels, hom);
    Ok(IdealSpace {
        base: a.clone(),
        class,
        carrier,
        space,
        yoneda,
    })
}

/// `x |-> join_i Lambda(phi_i) & phi_i(x)` for a lower set `Lambda` of the
/// ideal space.
pub fn weighted_join<Q: FiniteCarrier>(
    space: &IdealSpace<Q>,
    lambda: &FuzzySet<Q::Value>,
) -> Result<FuzzySet<Q::Value>> {
    if lambda.len() != space.len() {
        return Err(Error::BaseMismatch {
            expected: space.len(),
            found: lambda.len(),
        });
    }
    if let Some((x, y)) = fuzzy::lower_witness(&space.space, lambda) {
        return Err(Error::NotLower { x, y });
    }
    Ok(weighted_join_unchecked(space, lambda))
}

fn weighted_join_unchecked<Q: FiniteCarrier>(
    space: &IdealSpace<Q>,
    lambda: &FuzzySet<Q::Value>,
) -> FuzzySet<Q::Value> {
    let q = space.base.quantale();
    FuzzySet::new(
        (0..space.base.len())
            .map(|x| {
                q.join_all(
                    space
                        .carrier
                        .iter()
                        .enumerate()
                        .map(|(i, phi)| q.tensor(lambda.at(i), phi.at(x))),
                )
            })
            .collect(),
    )
}

/// Whether `join` is a supremum of `Lambda` once the space is included in
/// the power order: `sub(join, psi) = meet_i Lambda(phi_i) -> sub(phi_i, psi)`
/// for every lower set `psi` in `lowers`. Returns the first failing `psi`.
pub fn supremum_witness<Q: FiniteCarrier>(
    space: &IdealSpace<Q>,
    lambda: &FuzzySet<Q::Value>,
    join: &FuzzySet<Q::Value>,
    lowers: &[FuzzySet<Q::Value>],
) -> Option<usize> {
    let q = space.base.quantale();
    lowers.iter().position(|psi| {
        let want = q.meet_all(
            space
                .carrier
                .iter()
                .enumerate()
                .map(|(i, phi)| q.residuate(lambda.at(i), fuzzy::sub(q, phi, psi))),
        );
        !q.equiv(fuzzy::sub(q, join, psi), want)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaturationReport<V> {
    pub class: IdealClass,
    pub space_size: usize,
    pub second_space_size: usize,
    /// Members `Lambda` of the second-level class whose weighted join
    /// leaves the class, with that join.
    pub violators: Vec<(FuzzySet<V>, FuzzySet<V>)>,
}

impl<V> SaturationReport<V> {
    pub fn saturated(&self) -> bool {
        self.violators.is_empty()
    }
}

/// For every `Lambda` in `class(Phi(A))`, checks that its weighted join lies
/// in `class(A)`.
pub fn check_saturation<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    class: IdealClass,
    budget: &Budget,
) -> Result<SaturationReport<Q::Value>> {
    let space = ideal_space(a, class, budget)?;
    if space.len() > budget.ideal_space_cap {
        return Err(Error::BudgetExceeded {
            what: "ideal space before the second level",
            count: space.len() as u128,
            budget: budget.ideal_space_cap as u64,
        });
    }
    let second = IdealContext::new(&space.space, *budget).ideals(class)?;
    let ctx = IdealContext::new(a, *budget);
    let verdicts = exec::map_range(second.len(), |i| {
        let join = weighted_join_unchecked(&space, &second[i]);
        ctx.is_member(class, &join).map(|ok| (!ok).then_some(join))
    });
    let mut violators = Vec::new();
    for (lambda, v) in second.iter().zip(verdicts) {
        if let Some(join) = v? {
            violators.push((lambda.clone(), join));
        }
    }
    Ok(SaturationReport {
        class,
        space_size: space.len(),
        second_space_size: second.len(),
        violators,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessReport {
    pub complete: bool,
    pub continuous: bool,
    /// Index (in the class enumeration) of the first ideal without a
    /// supremum.
    pub missing_supremum: Option<usize>,
    /// A chosen supremum for every class ideal, when complete.
    pub sup: Vec<usize>,
    /// `g(a)` as an index into the class enumeration, when continuous.
    pub left_adjoint: Option<Vec<usize>>,
    /// The first point with no admissible `g(a)`.
    pub adjoint_witness: Option<usize>,
}

/// Completeness: every class ideal has a supremum. Continuity: `sup` has a
/// left adjoint `g` with `Phi(A)(g a, phi) = A(a, sup phi)`. The identity
/// constrains each `g(a)` on its own, so the exhaustive search runs per
/// point over all class ideals.
pub fn check_completeness_continuity<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    class: IdealClass,
    budget: &Budget,
) -> Result<(CompletenessReport, IdealSpace<Q>)> {
    let space = ideal_space(a, class, budget)?;
    let q = a.quantale();
    let sups: Vec<Vec<usize>> = exec::map_range(space.len(), |i| {
        fuzzy::suprema_unchecked(a, &space.carrier[i])
    });
    if let Some(i) = sups.iter().position(Vec::is_empty) {
        let report = CompletenessReport {
            complete: false,
            continuous: false,
            missing_supremum: Some(i),
            sup: Vec::new(),
            left_adjoint: None,
            adjoint_witness: None,
        };
        return Ok((report, space));
    }
    let sup: Vec<usize> = sups.iter().map(|s| s[0]).collect();
    budget.charge_pairs("adjoint search", (a.len() * space.len() * space.len()) as u128)?;
    let m = space.len();
    let choices: Vec<Option<usize>> = exec::map_range(a.len(), |x| {
        (0..m).find(|&g| (0..m).all(|i| q.equiv(space.space.hom(g, i), a.hom(x, sup[i]))))
    });
    let adjoint_witness = choices.iter().position(Option::is_none);
    let left_adjoint = match adjoint_witness {
        None => Some(choices.into_iter().map(Option::unwrap).collect()),
        Some(_) => None,
    };
    let report = CompletenessReport {
        complete: true,
        continuous: left_adjoint.is_some(),
        missing_supremum: None,
        sup,
        left_adjoint,
        adjoint_witness,
    };
    Ok((report, space))
}

/// The free-completion check on `Phi(A)`: it is complete and continuous for
/// `class`, and the left adjoint of its `sup` is `y_A->` restricted to the
/// class. Returns the report on `Phi(A)` and whether the adjoint matched.
pub fn check_free_completion<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    class: IdealClass,
    budget: &Budget,
) -> Result<(CompletenessReport, bool)> {
    let first = ideal_space(a, class, budget)?;
    if first.len() > budget.ideal_space_cap {
        return Err(Error::BudgetExceeded {
            what: "ideal space before the second level",
            count: first.len() as u128,
            budget: budget.ideal_space_cap as u64,
        });
    }
    let (report, second) = check_completeness_continuity(&first.space, class, budget)?;
    let matches = match &report.left_adjoint {
        Some(g) => (0..first.len()).all(|i| {
            let expected = first.yoneda_forward(&first.carrier[i]);
            second.carrier[g[i]] == expected
        }),
        None => false,
    };
    Ok((report, matches))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{godel_chain, lukasiewicz_chain, FiniteQuantale, Quantale};
    use std::sync::Arc;

    fn crisp_chain() -> QOrderedSet<FiniteQuantale> {
        let q = Arc::new(godel_chain(2).unwrap());
        let (t, f) = (q.top(), q.bottom());
        QOrderedSet::new(q, vec!["x".into(), "y".into()], vec![vec![t, t], vec![f, t]]).unwrap()
    }

    #[test]
    fn classical_ideal_completion_of_a_chain() {
        let a = crisp_chain();
        let s = ideal_space(&a, IdealClass::Flat, &Budget::default()).unwrap();
        assert_eq!(s.carrier, vec![fuzzy::yoneda(&a, 0), fuzzy::yoneda(&a, 1)]);
        assert!(s.yoneda_fully_faithful());
        assert!(check_saturation(&a, IdealClass::Flat, &Budget::default())
            .unwrap()
            .saturated());
    }

    #[test]
    fn weighted_joins() {
        let q = Arc::new(lukasiewicz_chain(3).unwrap());
        let a = QOrderedSet::discrete(q.clone(), 2).unwrap();
        let s = ideal_space(&a, IdealClass::AllLower, &Budget::default()).unwrap();
        let lowers = s.carrier.clone();
        for i in 0..s.len() {
            let lambda = fuzzy::yoneda(&s.space, i);
            let j = weighted_join(&s, &lambda).unwrap();
            assert_eq!(j, s.carrier[i]);
            assert_eq!(supremum_witness(&s, &lambda, &j, &lowers), None);
        }
        let all = FuzzySet::constant(q.top(), s.len());
        let j = weighted_join(&s, &all).unwrap();
        assert_eq!(j, FuzzySet::constant(q.top(), 2));
    }

    #[test]
    fn d_left_is_flat_complete() {
        let q = Arc::new(lukasiewicz_chain(3).unwrap());
        let a = QOrderedSet::d_left(q);
        let (r, _) = check_completeness_continuity(&a, IdealClass::Flat, &Budget::default()).unwrap();
        assert!(r.complete);
    }

    #[test]
    fn free_completion_on_small_bases() {
        for q in [godel_chain(2).unwrap(), lukasiewicz_chain(3).unwrap()] {
            let a = QOrderedSet::discrete(Arc::new(q), 2).unwrap();
            for class in IdealClass::IDEALS {
                let (r, matched) = check_free_completion(&a, class, &Budget::default()).unwrap();
                assert!(r.complete && r.continuous && matched, "{class}");
            }
        }
    }
}
