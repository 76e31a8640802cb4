//! Seeded random Q-orders and exhaustive families of small instances.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Budget, Error, Result};
use crate::qorder::{odometer, QOrderedSet};
use crate::quantale::{FiniteCarrier, Quantale};

fn point_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Smallest Q-order above `hom`: iterate `A(x,z) v= A(y,z) & A(x,y)` to a
/// fixpoint and set the diagonal to top.
fn transitive_closure<Q: Quantale>(q: &Q, n: usize, hom: &mut [Q::Value]) {
    for x in 0..n {
        hom[x * n + x] = q.top();
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let via = q.tensor(hom[y * n + z], hom[x * n + y]);
                    let old = hom[x * n + z];
                    let new = q.join(old, via);
                    if new != old {
                        hom[x * n + z] = new;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// A Q-order on `n` points: uniformly random off-diagonal entries, closed
/// under transitivity. The same seed always gives the same order.
pub fn random_qorder<Q: FiniteCarrier>(quantale: Arc<Q>, n: usize, rng: &mut ChaCha8Rng) -> Result<QOrderedSet<Q>> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let size = quantale.size();
    let mut hom: Vec<Q::Value> = (0..n * n).map(|_| quantale.value_at(rng.gen_range(0..size))).collect();
    transitive_closure(&*quantale, n, &mut hom);
    let a = QOrderedSet::from_parts(quantale, point_labels(n), hom);
    debug_assert!(a.validate().is_ok());
    Ok(a)
}

/// `count` random Q-orders with sizes drawn from `sizes`, from one seed.
pub fn random_qorders<Q: FiniteCarrier>(
    quantale: Arc<Q>,
    sizes: std::ops::RangeInclusive<usize>,
    count: usize,
    seed: u64,
) -> Result<Vec<QOrderedSet<Q>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(sizes.clone());
            random_qorder(Arc::clone(&quantale), n, &mut rng)
        })
        .collect()
}

/// Every Q-order on `n` labelled points, in odometer order of the
/// off-diagonal entries.
pub fn all_qorders<Q: FiniteCarrier>(quantale: Arc<Q>, n: usize, budget: &Budget) -> Result<Vec<QOrderedSet<Q>>> {
    let off = n * n.saturating_sub(1);
    budget.check_power(quantale.size(), off)?;
    let labels = point_labels(n);
    Ok(odometer(quantale.size(), off)
        .filter_map(|entries| {
            let mut it = entries.into_iter();
            let hom = (0..n * n)
                .map(|k| {
                    if k / n == k % n {
                        quantale.top()
                    } else {
                        quantale.value_at(it.next().expect("entry"))
                    }
                })
                .collect();
            let a = QOrderedSet::from_parts(Arc::clone(&quantale), labels.clone(), hom);
            a.validate().is_ok().then_some(a)
        })
        .collect())
}

/// Every partial order on `n` labelled points as a crisp Q-order, i.e. the
/// separated Q-orders valued in `{bottom, top}`.
pub fn crisp_posets<Q: FiniteCarrier>(quantale: Arc<Q>, n: usize) -> Vec<QOrderedSet<Q>> {
    let off = n * n.saturating_sub(1);
    let labels = point_labels(n);
    let (t, f) = (quantale.top(), quantale.bottom());
    odometer(2, off)
        .filter_map(|bits| {
            let mut it = bits.into_iter();
            let hom: Vec<Q::Value> = (0..n * n)
                .map(|k| if k / n == k % n || it.next() == Some(1) { t } else { f })
                .collect();
            let a = QOrderedSet::from_parts(Arc::clone(&quantale), labels.clone(), hom);
            (a.validate().is_ok() && a.is_separated()).then_some(a)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{godel_chain, lukasiewicz_chain};

    #[test]
    fn seeds_are_reproducible() {
        let q = Arc::new(lukasiewicz_chain(4).unwrap());
        let a = random_qorders(q.clone(), 1..=3, 10, 7).unwrap();
        let b = random_qorders(q, 1..=3, 10, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn poset_counts() {
        // labelled posets on 1..4 points: 1, 3, 19, 219
        let q = Arc::new(godel_chain(2).unwrap());
        let counts: Vec<usize> = (1..=4).map(|n| crisp_posets(q.clone(), n).len()).collect();
        assert_eq!(counts, vec![1, 3, 19, 219]);
    }

    #[test]
    fn every_two_point_matrix_is_an_order() {
        let q = Arc::new(lukasiewicz_chain(3).unwrap());
        assert_eq!(all_qorders(q, 2, &Budget::default()).unwrap().len(), 9);
    }
}
