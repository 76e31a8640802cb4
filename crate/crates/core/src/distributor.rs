//! Distributors `phi: A -+-> B` between Q-ordered sets.

use crate::error::{Error, Result};
use crate::qorder::QOrderedSet;
use crate::quantale::Quantale;

/// A matrix `phi(a, b)` compatible with both hom matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct QDistributor<Q: Quantale> {
    source: QOrderedSet<Q>,
    target: QOrderedSet<Q>,
    matrix: Vec<Q::Value>,
}

impl<Q: Quantale> QDistributor<Q> {
    /// Validates `B(b,b') & phi(a,b) & A(a',a) <= phi(a',b')`; on failure
    /// the first offending `(a, a', b, b')` is reported.
    pub fn new(source: QOrderedSet<Q>, target: QOrderedSet<Q>, matrix: Vec<Vec<Q::Value>>) -> Result<Self> {
        if !source.same_quantale(&target) {
            return Err(Error::QuantaleMismatch);
        }
        if matrix.len() != source.len() {
            return Err(Error::ShapeMismatch {
                expected: source.len(),
                found: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != target.len()) {
            return Err(Error::ShapeMismatch {
                expected: target.len(),
                found: row.len(),
            });
        }
        let d = QDistributor {
            source,
            target,
            matrix: matrix.into_iter().flatten().collect(),
        };
        if let Some((a, a2, b, b2)) = d.violation() {
            return Err(Error::Precondition(format!(
                "not a distributor: B({1},{3}) & phi({0},{1}) & A({2},{0}) > phi({2},{3})",
                d.source.label(a),
                d.target.label(b),
                d.source.label(a2),
                d.target.label(b2)
            )));
        }
        Ok(d)
    }

    /// The hom matrix of `A` as a distributor `A -+-> A`.
    pub fn identity(a: &QOrderedSet<Q>) -> Self {
        let n = a.len();
        QDistributor {
            source: a.clone(),
            target: a.clone(),
            matrix: (0..n * n).map(|k| a.hom(k / n, k % n)).collect(),
        }
    }

    pub fn source(&self) -> &QOrderedSet<Q> {
        &self.source
    }

    pub fn target(&self) -> &QOrderedSet<Q> {
        &self.target
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Q::Value {
        self.matrix[a * self.target.len() + b]
    }

    pub fn rows(&self) -> Vec<Vec<Q::Value>> {
        self.matrix
            .chunks(self.target.len())
            .map(<[_]>::to_vec)
            .collect()
    }

    fn violation(&self) -> Option<(usize, usize, usize, usize)> {
        let q = self.source.quantale();
        let (na, nb) = (self.source.len(), self.target.len());
        for a in 0..na {
            for a2 in 0..na {
                for b in 0..nb {
                    for b2 in 0..nb {
                        let lhs = q.tensor(
                            q.tensor(self.target.hom(b, b2), self.get(a, b)),
                            self.source.hom(a2, a),
                        );
                        if !q.leq(lhs, self.get(a2, b2)) {
                            return Some((a, a2, b, b2));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    /// `(psi o phi)(a, c) = join_b psi(b, c) & phi(a, b)` where `self = phi`.
    pub fn then(&self, psi: &QDistributor<Q>) -> Result<QDistributor<Q>> {
        compose(psi, self)
    }
}

/// `psi o phi` for `phi: A -+-> B` and `psi: B -+-> C`.
pub fn compose<Q: Quantale>(psi: &QDistributor<Q>, phi: &QDistributor<Q>) -> Result<QDistributor<Q>> {
    if !phi.target.same_quantale(&psi.source) {
        return Err(Error::QuantaleMismatch);
    }
    if phi.target != psi.source {
        return Err(Error::ShapeMismatch {
            expected: phi.target.len(),
            found: psi.source.len(),
        });
    }
    let q = phi.source.quantale();
    let (na, nb, nc) = (phi.source.len(), phi.target.len(), psi.target.len());
    let matrix = (0..na * nc)
        .map(|k| {
            let (a, c) = (k / nc, k % nc);
            q.join_all((0..nb).map(|b| q.tensor(psi.get(b, c), phi.get(a, b))))
        })
        .collect();
    Ok(QDistributor {
        source: phi.source.clone(),
        target: psi.target.clone(),
        matrix,
    })
}

impl<Q: Quantale> QDistributor<Q> {
    /// A fuzzy lower set of `A` as a distributor `A -+-> *`.
    pub fn from_lower(a: &QOrderedSet<Q>, values: &[Q::Value]) -> Result<Self> {
        let point = QOrderedSet::point(a.quantale_arc().clone());
        Self::new(a.clone(), point, values.iter().map(|&v| vec![v]).collect())
    }

    /// A fuzzy upper set of `A` as a distributor `* -+-> A`.
    pub fn from_upper(a: &QOrderedSet<Q>, values: &[Q::Value]) -> Result<Self> {
        let point = QOrderedSet::point(a.quantale_arc().clone());
        Self::new(point, a.clone(), vec![values.to_vec()])
    }
}
