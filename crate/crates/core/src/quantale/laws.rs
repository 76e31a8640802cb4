//! Exhaustive (or sampled) checks of the residuation laws.
//!
//! Every checker returns at most one violation per law, the first in the
//! canonical order of the sample.

use serde::Serialize;

use super::Quantale;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: &'static str,
    pub witness: Vec<String>,
}

/// Index subsets of `0..n`: all of them when `n <= 10`, otherwise those of
/// size at most `fallback`. The empty set comes first.
pub fn subsets(n: usize, fallback: usize) -> Vec<Vec<usize>> {
    if n <= 10 {
        return (0u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
    }
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..fallback {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&l: &usize| l + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

struct Collector<'a, Q: Quantale> {
    q: &'a Q,
    found: Vec<LawViolation>,
}

impl<Q: Quantale> Collector<'_, Q> {
    fn check(&mut self, law: &'static str, ok: bool, witness: &[Q::Value]) {
        if !ok && !self.found.iter().any(|v| v.law == law) {
            self.found.push(LawViolation {
                law,
                witness: witness.iter().map(|&v| self.q.format(v)).collect(),
            });
        }
    }
}

/// The seven basic identities of `&` and `->`, over all pairs and triples of
/// `sample`, all subsets for the two join/meet laws, and `sample` as the
/// range of the meet in the double-residuum law.
pub fn basic_identities<Q: Quantale>(q: &Q, sample: &[Q::Value]) -> Vec<LawViolation> {
    let mut c = Collector { q, found: Vec::new() };
    let top = q.top();
    for &p in sample {
        c.check("1->p = p", q.equiv(q.residuate(top, p), p), &[p]);
        let dd = q.meet_all(sample.iter().map(|&r| q.residuate(q.residuate(p, r), r)));
        c.check("p = meet_q((p->q)->q)", q.equiv(dd, p), &[p]);
        for &r in sample {
            let one = q.is_top(q.residuate(p, r));
            c.check("p<=q iff p->q = 1", q.leq(p, r) == one, &[p, r]);
            c.check(
                "p&(p->q) <= q",
                q.leq(q.tensor(p, q.residuate(p, r)), r),
                &[p, r],
            );
            for &s in sample {
                let lhs = q.residuate(p, q.residuate(r, s));
                let rhs = q.residuate(q.tensor(p, r), s);
                c.check("p->(q->r) = (p&q)->r", q.equiv(lhs, rhs), &[p, r, s]);
            }
        }
    }
    for idx in subsets(sample.len(), 3) {
        let family: Vec<Q::Value> = idx.iter().map(|&i| sample[i]).collect();
        for &r in sample {
            let lhs = q.residuate(q.join_all(family.iter().copied()), r);
            let rhs = q.meet_all(family.iter().map(|&p| q.residuate(p, r)));
            let mut w = family.clone();
            w.push(r);
            c.check("(join p_j)->q = meet(p_j->q)", q.equiv(lhs, rhs), &w);
            let lhs = q.residuate(r, q.meet_all(family.iter().copied()));
            let rhs = q.meet_all(family.iter().map(|&s| q.residuate(r, s)));
            c.check("p->(meet q_j) = meet(p->q_j)", q.equiv(lhs, rhs), &w);
        }
    }
    c.found
}

/// `p & q <= r` iff `q <= p -> r` over all triples of `sample`.
pub fn adjunction<Q: Quantale>(q: &Q, sample: &[Q::Value]) -> Vec<LawViolation> {
    let mut c = Collector { q, found: Vec::new() };
    for &p in sample {
        for &s in sample {
            for &r in sample {
                let left = q.leq(q.tensor(p, s), r);
                let right = q.leq(s, q.residuate(p, r));
                c.check("p&q <= r iff q <= p->r", left == right, &[p, s, r]);
                if !c.found.is_empty() {
                    return c.found;
                }
            }
        }
    }
    c.found
}

/// The negation laws of quantales with double negation, over all pairs and
/// all subsets of size at most three.
pub fn double_negation_laws<Q: Quantale>(q: &Q, sample: &[Q::Value]) -> Vec<LawViolation> {
    let mut c = Collector { q, found: Vec::new() };
    let n = |p| q.neg(p);
    for &p in sample {
        c.check("not not p = p", q.equiv(n(n(p)), p), &[p]);
        for &r in sample {
            let imp = q.residuate(p, r);
            c.check("p->q = not(p & not q)", q.equiv(imp, n(q.tensor(p, n(r)))), &[p, r]);
            c.check("p->q = not q -> not p", q.equiv(imp, q.residuate(n(r), n(p))), &[p, r]);
            let t = q.tensor(p, r);
            c.check("p&q = not(q -> not p)", q.equiv(t, n(q.residuate(r, n(p)))), &[p, r]);
            c.check("p&q = not(p -> not q)", q.equiv(t, n(q.residuate(p, n(r)))), &[p, r]);
        }
    }
    for idx in subsets(sample.len().min(11), 3) {
        if idx.len() > 3 {
            continue;
        }
        let family: Vec<Q::Value> = idx.iter().map(|&i| sample[i]).collect();
        let lhs = n(q.meet_all(family.iter().copied()));
        let rhs = q.join_all(family.iter().map(|&p| n(p)));
        c.check("not(meet p_i) = join not p_i", q.equiv(lhs, rhs), &family);
    }
    c.found
}

/// The dyadic grid `{0, 1/m, ..., 1}`.
pub fn dyadic_grid(m: usize) -> Vec<f64> {
    (0..=m).map(|k| k as f64 / m as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{
        boolean4, godel_chain, lukasiewicz_chain, nilpotent_minimum_chain, IntervalQuantale, TNorm,
    };

    #[test]
    fn finite_catalog_satisfies_identities() {
        let mut all = vec![boolean4()];
        for n in 2..=6 {
            all.push(lukasiewicz_chain(n).unwrap());
            all.push(godel_chain(n).unwrap());
            all.push(nilpotent_minimum_chain(n).unwrap());
        }
        for q in &all {
            let sample: Vec<_> = q.elements().collect();
            assert_eq!(basic_identities(q, &sample), vec![]);
            assert_eq!(adjunction(q, &sample), vec![]);
            if q.properties().has_double_negation {
                assert_eq!(double_negation_laws(q, &sample), vec![]);
            }
        }
    }

    #[test]
    fn godel_fails_negation_laws() {
        let q = godel_chain(3).unwrap();
        let sample: Vec<_> = q.elements().collect();
        let v = double_negation_laws(&q, &sample);
        assert_eq!(v[0].law, "not not p = p");
        assert_eq!(v[0].witness, vec!["1/2"]);
    }

    #[test]
    fn interval_adjunction_on_grid() {
        let grid = dyadic_grid(64);
        for t in [
            TNorm::Minimum,
            TNorm::Product,
            TNorm::Lukasiewicz,
            TNorm::NilpotentMinimum,
        ] {
            let q = IntervalQuantale::new(t);
            assert_eq!(adjunction(&q, &grid), vec![]);
        }
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets(3, 1).len(), 8);
        // 1 + 12 + 66 subsets of size <= 2 of a 12-set
        assert_eq!(subsets(12, 2).len(), 79);
    }
}
