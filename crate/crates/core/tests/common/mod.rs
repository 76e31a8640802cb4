//! Brute-force oracles written straight from the definitions, sharing no
//! code with the library deciders beyond the quantale operations.

#![allow(dead_code)]

use qideal_core::qorder::QOrderedSet;
use qideal_core::quantale::{FiniteCarrier, Quantale};

pub type Set<V> = Vec<V>;

/// Every vector of values, first coordinate most significant.
pub fn all_vectors<Q: FiniteCarrier>(q: &Q, n: usize) -> Vec<Set<Q::Value>> {
    let vals: Vec<Q::Value> = q.values().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Q::Value>| {
                vals.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn is_lower<Q: FiniteCarrier>(a: &QOrderedSet<Q>, phi: &[Q::Value]) -> bool {
    let q = a.quantale();
    let n = a.len();
    (0..n).all(|x| (0..n).all(|y| q.leq(q.tensor(phi[y], a.hom(x, y)), phi[x])))
}

pub fn is_upper<Q: FiniteCarrier>(a: &QOrderedSet<Q>, psi: &[Q::Value]) -> bool {
    let q = a.quantale();
    let n = a.len();
    (0..n).all(|x| (0..n).all(|y| q.leq(q.tensor(a.hom(x, y), psi[x]), psi[y])))
}

pub fn lowers<Q: FiniteCarrier>(a: &QOrderedSet<Q>) -> Vec<Set<Q::Value>> {
    all_vectors(a.quantale(), a.len()).into_iter().filter(|p| is_lower(a, p)).collect()
}

pub fn uppers<Q: FiniteCarrier>(a: &QOrderedSet<Q>) -> Vec<Set<Q::Value>> {
    all_vectors(a.quantale(), a.len()).into_iter().filter(|p| is_upper(a, p)).collect()
}

pub fn tensor<Q: Quantale>(q: &Q, phi: &[Q::Value], psi: &[Q::Value]) -> Q::Value {
    phi.iter().zip(psi).fold(q.bottom(), |acc, (&a, &b)| q.join(acc, q.tensor(a, b)))
}

pub fn sub<Q: Quantale>(q: &Q, phi: &[Q::Value], psi: &[Q::Value]) -> Q::Value {
    phi.iter().zip(psi).fold(q.top(), |acc, (&a, &b)| q.meet(acc, q.residuate(a, b)))
}

pub fn inhabited<Q: Quantale>(q: &Q, phi: &[Q::Value]) -> bool {
    q.is_top(phi.iter().fold(q.bottom(), |acc, &v| q.join(acc, v)))
}

/// Tensoring with `phi` preserves binary meets of upper sets.
pub fn is_flat<Q: FiniteCarrier>(a: &QOrderedSet<Q>, phi: &[Q::Value], uppers: &[Set<Q::Value>]) -> bool {
    let q = a.quantale();
    inhabited(q, phi)
        && uppers.iter().all(|p1| {
            uppers.iter().all(|p2| {
                let m: Vec<_> = p1.iter().zip(p2).map(|(&x, &y)| q.meet(x, y)).collect();
                tensor(q, phi, &m) == q.meet(tensor(q, phi, p1), tensor(q, phi, p2))
            })
        })
}

/// Inclusion of `phi` preserves binary joins of lower sets.
pub fn is_irreducible<Q: FiniteCarrier>(a: &QOrderedSet<Q>, phi: &[Q::Value], lowers: &[Set<Q::Value>]) -> bool {
    let q = a.quantale();
    inhabited(q, phi)
        && lowers.iter().all(|l1| {
            lowers.iter().all(|l2| {
                let j: Vec<_> = l1.iter().zip(l2).map(|(&x, &y)| q.join(x, y)).collect();
                sub(q, phi, &j) == q.join(sub(q, phi, l1), sub(q, phi, l2))
            })
        })
}

/// On a finite carrier a forward Cauchy ideal is `A(-, z)` for some `z`.
pub fn is_principal<Q: FiniteCarrier>(a: &QOrderedSet<Q>, phi: &[Q::Value]) -> bool {
    (0..a.len()).any(|z| (0..a.len()).all(|x| phi[x] == a.hom(x, z)))
}

/// `s` is a supremum of `phi`: `A(s, x) = sub(phi, A(-, x))` for all `x`.
pub fn is_sup<Q: FiniteCarrier>(a: &QOrderedSet<Q>, phi: &[Q::Value], s: usize) -> bool {
    let q = a.quantale();
    (0..a.len()).all(|x| {
        let col: Vec<_> = (0..a.len()).map(|y| a.hom(y, x)).collect();
        a.hom(s, x) == sub(q, phi, &col)
    })
}

pub fn sups<Q: FiniteCarrier>(a: &QOrderedSet<Q>, phi: &[Q::Value]) -> Vec<usize> {
    (0..a.len()).filter(|&s| is_sup(a, phi, s)).collect()
}
