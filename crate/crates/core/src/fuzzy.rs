//! Fuzzy sets over a Q-ordered set: lower and upper sets, inclusion and
//! tensor degrees, images along maps, and suprema.

use serde::Serialize;

use crate::error::{checked_power, Budget, Error, Result};
use crate::exec;
use crate::qorder::{QMap, QOrderedSet};
use crate::quantale::{FiniteCarrier, Quantale};

/// A map from the carrier of a Q-ordered set to the quantale, stored in
/// carrier order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FuzzySet<V> {
    pub values: Vec<V>,
}

impl<V: Copy> FuzzySet<V> {
    pub fn new(values: Vec<V>) -> Self {
        FuzzySet { values }
    }

    pub fn constant(value: V, len: usize) -> Self {
        FuzzySet {
            values: vec![value; len],
        }
    }

    #[inline]
    pub fn at(&self, x: usize) -> V {
        self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map(&self, f: impl Fn(V) -> V) -> Self {
        FuzzySet {
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip(&self, other: &Self, f: impl Fn(V, V) -> V) -> Self {
        FuzzySet {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Lower,
    Upper,
}

/// Outcome of [`classify`]; witnesses are carrier index pairs `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub lower: bool,
    pub upper: bool,
    pub inhabited: bool,
    /// `phi(y) & A(x,y) > phi(x)`
    pub lower_witness: Option<(usize, usize)>,
    /// `A(x,y) & psi(x) > psi(y)`
    pub upper_witness: Option<(usize, usize)>,
}

fn check_base<Q: Quantale>(a: &QOrderedSet<Q>, phi: &FuzzySet<Q::Value>) -> Result<()> {
    if phi.len() != a.len() {
        return Err(Error::BaseMismatch {
            expected: a.len(),
            found: phi.len(),
        });
    }
    Ok(())
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

pub fn lower_witness<Q: Quantale>(a: &QOrderedSet<Q>, phi: &FuzzySet<Q::Value>) -> Option<(usize, usize)> {
    let q = a.quantale();
    pairs(a.len()).find(|&(x, y)| !q.leq(q.tensor(phi.at(y), a.hom(x, y)), phi.at(x)))
}

pub fn upper_witness<Q: Quantale>(a: &QOrderedSet<Q>, psi: &FuzzySet<Q::Value>) -> Option<(usize, usize)> {
    let q = a.quantale();
    pairs(a.len()).find(|&(x, y)| !q.leq(q.tensor(a.hom(x, y), psi.at(x)), psi.at(y)))
}

pub fn is_lower<Q: Quantale>(a: &QOrderedSet<Q>, phi: &FuzzySet<Q::Value>) -> bool {
    lower_witness(a, phi).is_none()
}

pub fn is_upper<Q: Quantale>(a: &QOrderedSet<Q>, psi: &FuzzySet<Q::Value>) -> bool {
    upper_witness(a, psi).is_none()
}

/// `join_x phi(x) = 1`.
pub fn is_inhabited<Q: Quantale>(q: &Q, phi: &FuzzySet<Q::Value>) -> bool {
    q.is_top(q.join_all(phi.values.iter().copied()))
}

pub fn classify<Q: Quantale>(a: &QOrderedSet<Q>, phi: &FuzzySet<Q::Value>) -> Result<Classification> {
    check_base(a, phi)?;
    let lower_witness = lower_witness(a, phi);
    let upper_witness = upper_witness(a, phi);
    Ok(Classification {
        lower: lower_witness.is_none(),
        upper: upper_witness.is_none(),
        inhabited: is_inhabited(a.quantale(), phi),
        lower_witness,
        upper_witness,
    })
}

/// `sub(phi1, phi2) = meet_x phi1(x) -> phi2(x)`.
pub fn sub<Q: Quantale>(q: &Q, phi1: &FuzzySet<Q::Value>, phi2: &FuzzySet<Q::Value>) -> Q::Value {
    q.meet_all(
        phi1.values
            .iter()
            .zip(&phi2.values)
            .map(|(&a, &b)| q.residuate(a, b)),
    )
}

/// `join_x phi(x) & psi(x)` without checking the kinds of the arguments.
pub fn tensor<Q: Quantale>(q: &Q, phi: &FuzzySet<Q::Value>, psi: &FuzzySet<Q::Value>) -> Q::Value {
    q.join_all(
        phi.values
            .iter()
            .zip(&psi.values)
            .map(|(&a, &b)| q.tensor(a, b)),
    )
}

/// Inclusion degree with a base check.
pub fn sub_degree<Q: Quantale>(
    a: &QOrderedSet<Q>,
    phi1: &FuzzySet<Q::Value>,
    phi2: &FuzzySet<Q::Value>,
) -> Result<Q::Value> {
    check_base(a, phi1)?;
    check_base(a, phi2)?;
    Ok(sub(a.quantale(), phi1, phi2))
}

/// `phi (x) psi` for a lower `phi` and an upper `psi`.
pub fn tensor_degree<Q: Quantale>(
    a: &QOrderedSet<Q>,
    phi: &FuzzySet<Q::Value>,
    psi: &FuzzySet<Q::Value>,
) -> Result<Q::Value> {
    check_base(a, phi)?;
    check_base(a, psi)?;
    if let Some((x, y)) = lower_witness(a, phi) {
        return Err(Error::NotLower { x, y });
    }
    if let Some((x, y)) = upper_witness(a, psi) {
        return Err(Error::NotUpper { x, y });
    }
    Ok(tensor(a.quantale(), phi, psi))
}

/// The principal lower set `y(x) = A(-, x)`.
pub fn yoneda<Q: Quantale>(a: &QOrderedSet<Q>, x: usize) -> FuzzySet<Q::Value> {
    FuzzySet::new((0..a.len()).map(|z| a.hom(z, x)).collect())
}

/// The principal upper set `A(x, -)`.
pub fn coyoneda<Q: Quantale>(a: &QOrderedSet<Q>, x: usize) -> FuzzySet<Q::Value> {
    FuzzySet::new((0..a.len()).map(|z| a.hom(x, z)).collect())
}

/// `f->(phi)(y) = join_x phi(x) & B(y, f x)`.
pub fn forward<Q: Quantale>(f: &QMap<'_, Q>, phi: &FuzzySet<Q::Value>) -> Result<FuzzySet<Q::Value>> {
    check_base(f.source, phi)?;
    let q = f.source.quantale();
    Ok(FuzzySet::new(
        (0..f.target.len())
            .map(|y| {
                q.join_all(
                    (0..f.source.len()).map(|x| q.tensor(phi.at(x), f.target.hom(y, f.apply(x)))),
                )
            })
            .collect(),
    ))
}

/// `f<-(psi) = psi o f`.
pub fn backward<Q: Quantale>(f: &QMap<'_, Q>, psi: &FuzzySet<Q::Value>) -> Result<FuzzySet<Q::Value>> {
    check_base(f.target, psi)?;
    Ok(FuzzySet::new(
        (0..f.source.len()).map(|x| psi.at(f.apply(x))).collect(),
    ))
}

/// All `s` with `A(s, x) = sub(phi, y(x))` for every `x`; empty when `phi`
/// has no supremum.
pub fn suprema<Q: Quantale>(a: &QOrderedSet<Q>, phi: &FuzzySet<Q::Value>) -> Result<Vec<usize>> {
    check_base(a, phi)?;
    if let Some((x, y)) = lower_witness(a, phi) {
        return Err(Error::NotLower { x, y });
    }
    Ok(suprema_unchecked(a, phi))
}

pub(crate) fn suprema_unchecked<Q: Quantale>(a: &QOrderedSet<Q>, phi: &FuzzySet<Q::Value>) -> Vec<usize> {
    let q = a.quantale();
    let n = a.len();
    let target: Vec<Q::Value> = (0..n).map(|x| sub(q, phi, &yoneda(a, x))).collect();
    (0..n)
        .filter(|&s| (0..n).all(|x| q.equiv(a.hom(s, x), target[x])))
        .collect()
}

/// Pointwise `p & phi`.
pub fn tensor_const<Q: Quantale>(q: &Q, p: Q::Value, phi: &FuzzySet<Q::Value>) -> FuzzySet<Q::Value> {
    phi.map(|v| q.tensor(p, v))
}

/// Pointwise `p -> phi`.
pub fn residuate_from<Q: Quantale>(q: &Q, p: Q::Value, phi: &FuzzySet<Q::Value>) -> FuzzySet<Q::Value> {
    phi.map(|v| q.residuate(p, v))
}

/// Pointwise `phi -> p`.
pub fn residuate_into<Q: Quantale>(q: &Q, phi: &FuzzySet<Q::Value>, p: Q::Value) -> FuzzySet<Q::Value> {
    phi.map(|v| q.residuate(v, p))
}

pub fn meet<Q: Quantale>(q: &Q, a: &FuzzySet<Q::Value>, b: &FuzzySet<Q::Value>) -> FuzzySet<Q::Value> {
    a.zip(b, |x, y| q.meet(x, y))
}

pub fn join<Q: Quantale>(q: &Q, a: &FuzzySet<Q::Value>, b: &FuzzySet<Q::Value>) -> FuzzySet<Q::Value> {
    a.zip(b, |x, y| q.join(x, y))
}

pub fn negate<Q: Quantale>(q: &Q, a: &FuzzySet<Q::Value>) -> FuzzySet<Q::Value> {
    a.map(|x| q.neg(x))
}

/// Renders `(v0,v1,...)` with quantale labels.
pub fn format<Q: Quantale>(q: &Q, phi: &FuzzySet<Q::Value>) -> String {
    let parts: Vec<String> = phi.values.iter().map(|&v| q.format(v)).collect();
    format!("({})", parts.join(","))
}

/// Every lower (or upper) set of `a`, in lexicographic order of the value
/// indices with the first carrier point most significant.
pub fn enumerate_monotone<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    kind: Kind,
    budget: &Budget,
) -> Result<Vec<FuzzySet<Q::Value>>> {
    let size = a.quantale().size();
    let count = checked_power(size, a.len());
    if count > budget.enumeration as u128 {
        return Err(Error::BudgetExceeded {
            what: "fuzzy-set enumeration",
            count,
            budget: budget.enumeration,
        });
    }
    let chunks = exec::map_range(size, |first| {
        let mut out = Vec::new();
        let mut current = vec![a.quantale().value_at(first); a.len()];
        extend(a, kind, &mut current, 1, &mut out);
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

fn consistent<Q: Quantale>(a: &QOrderedSet<Q>, kind: Kind, v: &[Q::Value], k: usize) -> bool {
    let q = a.quantale();
    // phi(y) & A(x,y) <= phi(x) for lower sets; the upper law is the mirror
    let ok = |x: usize, y: usize| match kind {
        Kind::Lower => q.leq(q.tensor(v[y], a.hom(x, y)), v[x]),
        Kind::Upper => q.leq(q.tensor(a.hom(x, y), v[x]), v[y]),
    };
    (0..k).all(|j| ok(j, k) && ok(k, j))
}

fn extend<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    kind: Kind,
    current: &mut Vec<Q::Value>,
    k: usize,
    out: &mut Vec<FuzzySet<Q::Value>>,
) {
    if k == current.len() {
        out.push(FuzzySet::new(current.clone()));
        return;
    }
    let q = a.quantale();
    for i in 0..q.size() {
        current[k] = q.value_at(i);
        if consistent(a, kind, current, k) {
            extend(a, kind, current, k + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{godel_chain, lukasiewicz_chain, FiniteQuantale};
    use std::sync::Arc;

    fn luk3() -> Arc<FiniteQuantale> {
        Arc::new(lukasiewicz_chain(3).unwrap())
    }

    fn brute_force<Q: FiniteCarrier>(a: &QOrderedSet<Q>, kind: Kind) -> Vec<FuzzySet<Q::Value>> {
        crate::qorder::odometer(a.quantale().size(), a.len())
            .map(|ix| FuzzySet::new(ix.into_iter().map(|i| a.quantale().value_at(i)).collect()))
            .filter(|phi| match kind {
                Kind::Lower => is_lower(a, phi),
                Kind::Upper => is_upper(a, phi),
            })
            .collect()
    }

    #[test]
    fn enumeration_matches_filtering() {
        let q = luk3();
        let a = QOrderedSet::d_left(q.clone());
        for kind in [Kind::Lower, Kind::Upper] {
            let fast = enumerate_monotone(&a, kind, &Budget::default()).unwrap();
            assert_eq!(fast, brute_force(&a, kind));
            let seq = exec::sequential(|| enumerate_monotone(&a, kind, &Budget::default()).unwrap());
            assert_eq!(fast, seq);
        }
        let d = QOrderedSet::discrete(q, 2).unwrap();
        assert_eq!(enumerate_monotone(&d, Kind::Lower, &Budget::default()).unwrap().len(), 9);
    }

    #[test]
    fn enumeration_budget() {
        let a = QOrderedSet::discrete(luk3(), 4).unwrap();
        let err = enumerate_monotone(&a, Kind::Lower, &Budget::with_limit(80)).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                what: "fuzzy-set enumeration",
                count: 81,
                budget: 80
            }
        );
    }

    #[test]
    fn principal_sets_and_yoneda_lemma() {
        let q = luk3();
        let a = QOrderedSet::d_left(q.clone());
        let lowers = enumerate_monotone(&a, Kind::Lower, &Budget::default()).unwrap();
        for x in 0..3 {
            let y = yoneda(&a, x);
            let c = classify(&a, &y).unwrap();
            assert!(c.lower && c.inhabited);
            assert_eq!(suprema(&a, &y).unwrap(), vec![x]);
            for phi in &lowers {
                assert_eq!(sub(&*q, &y, phi), phi.at(x));
            }
        }
        // y(1/2) = (1, 1, 1/2) and sub(y(1/2), const 1/2) = 1/2
        let half = q.parse("1/2").unwrap();
        let y = yoneda(&a, 1);
        assert_eq!(y.values, vec![q.top(), q.top(), half]);
        assert_eq!(sub(&*q, &y, &FuzzySet::constant(half, 3)), half);
        // d_L(1/2, -) is upper and meets y(1/2) in degree 1
        let up = coyoneda(&a, 1);
        assert_eq!(tensor_degree(&a, &y, &up).unwrap(), q.top());
        assert!(matches!(
            tensor_degree(&a, &up, &up),
            Err(Error::NotLower { .. })
        ));
    }

    #[test]
    fn suprema_on_d_left_and_d_right() {
        let q = Arc::new(godel_chain(4).unwrap());
        let dl = QOrderedSet::d_left(q.clone());
        let dr = QOrderedSet::d_right(q.clone());
        for phi in enumerate_monotone(&dl, Kind::Lower, &Budget::default()).unwrap() {
            let want = q.join_all(q.elements().map(|p| q.tensor(p, phi.at(p.index()))));
            assert_eq!(suprema(&dl, &phi).unwrap(), vec![want.index()]);
        }
        for phi in enumerate_monotone(&dr, Kind::Lower, &Budget::default()).unwrap() {
            let want = q.meet_all(q.elements().map(|p| q.residuate(phi.at(p.index()), p)));
            assert_eq!(suprema(&dr, &phi).unwrap(), vec![want.index()]);
        }
    }

    #[test]
    fn classical_lower_sets_of_a_chain() {
        let q = Arc::new(godel_chain(2).unwrap());
        let (t, f) = (q.top(), q.bottom());
        // x <= y crisply
        let a = QOrderedSet::new(
            q.clone(),
            vec!["x".into(), "y".into()],
            vec![vec![t, t], vec![f, t]],
        )
        .unwrap();
        let lowers = enumerate_monotone(&a, Kind::Lower, &Budget::default()).unwrap();
        assert_eq!(
            lowers,
            vec![
                FuzzySet::new(vec![f, f]),
                FuzzySet::new(vec![t, f]),
                FuzzySet::new(vec![t, t])
            ]
        );
    }

    #[test]
    fn images_along_maps() {
        let q = luk3();
        let a = QOrderedSet::discrete(q.clone(), 2).unwrap();
        let b = QOrderedSet::d_left(q.clone());
        let f = QMap::new(&a, &b, vec![0, 2]).unwrap();
        for x in 0..2 {
            assert_eq!(forward(&f, &yoneda(&a, x)).unwrap(), yoneda(&b, f.apply(x)));
        }
        let id = QMap::identity(&b);
        let phi = yoneda(&b, 1);
        assert_eq!(forward(&id, &phi).unwrap(), phi);
        assert_eq!(backward(&id, &phi).unwrap(), phi);
    }
}
