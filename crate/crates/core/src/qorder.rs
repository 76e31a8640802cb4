//! Q-ordered sets, maps between them, and their standard constructions.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Budget, Error, Result};
use crate::quantale::{FiniteCarrier, Quantale};

/// The first failing instance of reflexivity or transitivity.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum OrderViolation {
    Reflexivity { x: String, value: String },
    Transitivity {
        x: String,
        y: String,
        z: String,
        /// `A(y,z) & A(x,y)`
        lhs: String,
        /// `A(x,z)`
        rhs: String,
    },
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderViolation::Reflexivity { x, value } => write!(f, "A({x},{x}) = {value} != 1"),
            OrderViolation::Transitivity { x, y, z, lhs, rhs } => write!(
                f,
                "A({y},{z}) & A({x},{y}) = {lhs} is not below A({x},{z}) = {rhs}"
            ),
        }
    }
}

/// A finite set with a hom matrix `A(x, y)` valued in a quantale.
#[derive(Debug)]
pub struct QOrderedSet<Q: Quantale> {
    quantale: Arc<Q>,
    labels: Vec<String>,
    hom: Vec<Q::Value>,
}

impl<Q: Quantale> Clone for QOrderedSet<Q> {
    fn clone(&self) -> Self {
        QOrderedSet {
            quantale: Arc::clone(&self.quantale),
            labels: self.labels.clone(),
            hom: self.hom.clone(),
        }
    }
}

impl<Q: Quantale> PartialEq for QOrderedSet<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.same_quantale(other) && self.labels == other.labels && self.hom == other.hom
    }
}

impl<Q: Quantale> QOrderedSet<Q> {
    /// Validates `hom` (row `x`, column `y` holds `A(x, y)`).
    pub fn new(quantale: Arc<Q>, labels: Vec<String>, hom: Vec<Vec<Q::Value>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if hom.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: hom.len(),
            });
        }
        if let Some(row) = hom.iter().find(|r| r.len() != n) {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: row.len(),
            });
        }
        let set = QOrderedSet {
            quantale,
            labels,
            hom: hom.into_iter().flatten().collect(),
        };
        set.validate().map_err(Error::NotAQOrder)?;
        Ok(set)
    }

    /// Skips validation; callers guarantee the Q-order laws.
    pub(crate) fn from_parts(quantale: Arc<Q>, labels: Vec<String>, hom: Vec<Q::Value>) -> Self {
        debug_assert_eq!(hom.len(), labels.len() * labels.len());
        QOrderedSet {
            quantale,
            labels,
            hom,
        }
    }

    /// Reflexivity, then transitivity in `(x, y, z)` order.
    pub fn validate(&self) -> std::result::Result<(), OrderViolation> {
        let q = &*self.quantale;
        let n = self.len();
        for x in 0..n {
            let v = self.hom(x, x);
            if !q.is_top(v) {
                return Err(OrderViolation::Reflexivity {
                    x: self.labels[x].clone(),
                    value: q.format(v),
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = q.tensor(self.hom(y, z), self.hom(x, y));
                    let rhs = self.hom(x, z);
                    if !q.leq(lhs, rhs) {
                        return Err(OrderViolation::Transitivity {
                            x: self.labels[x].clone(),
                            y: self.labels[y].clone(),
                            z: self.labels[z].clone(),
                            lhs: q.format(lhs),
                            rhs: q.format(rhs),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
    }

    pub fn quantale_arc(&self) -> &Arc<Q> {
        &self.quantale
    }

    pub fn same_quantale(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.quantale, &other.quantale) || *self.quantale == *other.quantale
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn hom(&self, x: usize, y: usize) -> Q::Value {
        self.hom[x * self.labels.len() + y]
    }

    pub fn hom_rows(&self) -> Vec<Vec<Q::Value>> {
        self.hom.chunks(self.len()).map(<[_]>::to_vec).collect()
    }

    /// `A^op(x, y) = A(y, x)`.
    pub fn opposite(&self) -> Self {
        let n = self.len();
        let hom = (0..n * n).map(|k| self.hom(k % n, k / n)).collect();
        Self::from_parts(Arc::clone(&self.quantale), self.labels.clone(), hom)
    }

    /// `n` points with `A(x, y) = 1` iff `x = y`, otherwise bottom.
    pub fn discrete(quantale: Arc<Q>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let (top, bottom) = (quantale.top(), quantale.bottom());
        let hom = (0..n * n)
            .map(|k| if k / n == k % n { top } else { bottom })
            .collect();
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        Ok(Self::from_parts(quantale, labels, hom))
    }

    /// The one-point Q-ordered set.
    pub fn point(quantale: Arc<Q>) -> Self {
        let top = quantale.top();
        Self::from_parts(quantale, vec!["*".into()], vec![top])
    }

    /// True iff `A(x, y) = A(y, x) = 1` forces `x = y`; otherwise the first
    /// such pair.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let q = &*self.quantale;
        let n = self.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| q.is_top(self.hom(x, y)) && q.is_top(self.hom(y, x)))
    }

    pub fn is_separated(&self) -> bool {
        self.separation_witness().is_none()
    }

    /// `x` and `y` are isomorphic: `A(x, y) = A(y, x) = 1`.
    pub fn isomorphic(&self, x: usize, y: usize) -> bool {
        let q = &*self.quantale;
        q.is_top(self.hom(x, y)) && q.is_top(self.hom(y, x))
    }
}

impl<Q: FiniteCarrier> QOrderedSet<Q> {
    fn on_carrier(quantale: Arc<Q>, f: impl Fn(&Q, Q::Value, Q::Value) -> Q::Value) -> Self {
        let q = &*quantale;
        let values: Vec<Q::Value> = q.values().collect();
        let labels = values.iter().map(|&v| q.format(v)).collect();
        let hom = values
            .iter()
            .flat_map(|&p| values.iter().map(move |&r| (p, r)))
            .map(|(p, r)| f(q, p, r))
            .collect();
        Self::from_parts(Arc::clone(&quantale), labels, hom)
    }

    /// `(Q, d_L)` with `d_L(p, q) = p -> q`.
    pub fn d_left(quantale: Arc<Q>) -> Self {
        Self::on_carrier(quantale, |q, p, r| q.residuate(p, r))
    }

    /// `(Q, d_R)` with `d_R(p, q) = q -> p`.
    pub fn d_right(quantale: Arc<Q>) -> Self {
        Self::on_carrier(quantale, |q, p, r| q.residuate(r, p))
    }

    /// All maps `X -> Q` ordered by `sub_X`, in lexicographic order of their
    /// value indices.
    pub fn power(quantale: Arc<Q>, x_labels: &[String], budget: &Budget) -> Result<Self> {
        let size = quantale.size();
        budget.check_power(size, x_labels.len())?;
        let maps: Vec<Vec<usize>> = odometer(size, x_labels.len()).collect();
        budget.charge_pairs(
            "power order",
            (maps.len() as u128).pow(2) * x_labels.len() as u128,
        )?;
        let q = &*quantale;
        let labels = maps
            .iter()
            .map(|m| {
                let parts: Vec<String> = m.iter().map(|&i| q.format(q.value_at(i))).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let hom = maps
            .iter()
            .flat_map(|a| maps.iter().map(move |b| (a, b)))
            .map(|(a, b)| {
                q.meet_all(
                    a.iter()
                        .zip(b)
                        .map(|(&i, &j)| q.residuate(q.value_at(i), q.value_at(j))),
                )
            })
            .collect();
        Ok(Self::from_parts(Arc::clone(&quantale), labels, hom))
    }
}

/// All tuples in `0..base` of length `len`, last coordinate fastest.
pub(crate) fn odometer(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if base == 0 && len > 0 {
        None
    } else {
        Some(vec![0; len])
    };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        for i in (0..len).rev() {
            succ[i] += 1;
            if succ[i] < base {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    })
}

/// A total function between the carriers of two Q-ordered sets.
#[derive(Debug, Clone)]
pub struct QMap<'a, Q: Quantale> {
    pub source: &'a QOrderedSet<Q>,
    pub target: &'a QOrderedSet<Q>,
    pub mapping: Vec<usize>,
}

impl<'a, Q: Quantale> QMap<'a, Q> {
    pub fn new(
        source: &'a QOrderedSet<Q>,
        target: &'a QOrderedSet<Q>,
        mapping: Vec<usize>,
    ) -> Result<Self> {
        if !source.same_quantale(target) {
            return Err(Error::QuantaleMismatch);
        }
        if mapping.len() != source.len() {
            return Err(Error::ShapeMismatch {
                expected: source.len(),
                found: mapping.len(),
            });
        }
        if let Some(&bad) = mapping.iter().find(|&&t| t >= target.len()) {
            return Err(Error::ShapeMismatch {
                expected: target.len(),
                found: bad,
            });
        }
        Ok(QMap {
            source,
            target,
            mapping,
        })
    }

    pub fn identity(a: &'a QOrderedSet<Q>) -> Self {
        QMap {
            source: a,
            target: a,
            mapping: (0..a.len()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    /// First pair with `A(x1, x2) > B(f x1, f x2)`, if any.
    pub fn order_witness(&self) -> Option<(usize, usize)> {
        let q = self.source.quantale();
        let n = self.source.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| {
                !q.leq(
                    self.source.hom(x, y),
                    self.target.hom(self.apply(x), self.apply(y)),
                )
            })
    }

    pub fn is_order_preserving(&self) -> bool {
        self.order_witness().is_none()
    }

    /// Every map between the carriers, in lexicographic order.
    pub fn all_maps(
        source: &'a QOrderedSet<Q>,
        target: &'a QOrderedSet<Q>,
        budget: &Budget,
    ) -> Result<Vec<Self>> {
        budget.check_power(target.len(), source.len())?;
        odometer(target.len(), source.len())
            .map(|m| QMap::new(source, target, m))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapReport {
    pub order_preserving: bool,
    /// `(x1, x2)` with `A(x1, x2) > B(f x1, f x2)`.
    pub order_witness: Option<(usize, usize)>,
    pub adjoint: Option<bool>,
    /// `(x, y)` with `A(x, g y) != B(f x, y)`.
    pub adjoint_witness: Option<(usize, usize)>,
}

/// Order preservation of `f` and, when `g` is given, whether
/// `A(x, g y) = B(f x, y)` for all `x, y`.
pub fn check_map_and_adjunction<Q: Quantale>(
    f: &QMap<'_, Q>,
    g: Option<&QMap<'_, Q>>,
) -> Result<MapReport> {
    let order_witness = f.order_witness();
    let mut report = MapReport {
        order_preserving: order_witness.is_none(),
        order_witness,
        adjoint: None,
        adjoint_witness: None,
    };
    if let Some(g) = g {
        if !f.source.same_quantale(g.source) {
            return Err(Error::QuantaleMismatch);
        }
        if g.source != f.target || g.target != f.source {
            return Err(Error::Precondition("g must map the target of f back to its source".into()));
        }
        let (a, b) = (f.source, f.target);
        let q = a.quantale();
        let witness = (0..a.len())
            .flat_map(|x| (0..b.len()).map(move |y| (x, y)))
            .find(|&(x, y)| !q.equiv(a.hom(x, g.apply(y)), b.hom(f.apply(x), y)));
        report.adjoint = Some(witness.is_none());
        report.adjoint_witness = witness;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{boolean4, lukasiewicz_chain, FiniteQuantale};

    fn luk(n: usize) -> Arc<FiniteQuantale> {
        Arc::new(lukasiewicz_chain(n).unwrap())
    }

    #[test]
    fn discrete_and_reflexivity() {
        let q = luk(3);
        assert!(QOrderedSet::discrete(q.clone(), 3).unwrap().validate().is_ok());
        let half = q.parse("1/2").unwrap();
        let one = q.top();
        let err = QOrderedSet::new(
            q.clone(),
            vec!["x".into(), "y".into()],
            vec![vec![half, one], vec![one, one]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::NotAQOrder(OrderViolation::Reflexivity {
                x: "x".into(),
                value: "1/2".into()
            })
        );
        assert_eq!(
            QOrderedSet::<FiniteQuantale>::new(q, vec![], vec![]).unwrap_err(),
            Error::EmptyCarrier
        );
    }

    #[test]
    fn d_left_over_lukasiewicz() {
        let q = luk(3);
        let a = QOrderedSet::d_left(q.clone());
        assert!(a.validate().is_ok());
        assert!(a.is_separated());
        let (one, half) = (a.index_of("1").unwrap(), a.index_of("1/2").unwrap());
        assert_eq!(q.label(a.hom(one, half)), "1/2");
        assert_eq!(a.opposite(), QOrderedSet::d_right(q.clone()));
        assert_eq!(a.opposite().opposite(), a);
    }

    #[test]
    fn power_of_one_point_is_d_left() {
        let q = Arc::new(boolean4());
        let p = QOrderedSet::power(q.clone(), &["x".into()], &Budget::default()).unwrap();
        let d = QOrderedSet::d_left(q);
        assert_eq!(p.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p.hom(i, j), d.hom(i, j));
            }
        }
        assert!(p.is_separated());
        let tiny = Budget::with_limit(15);
        assert!(matches!(
            QOrderedSet::power(Arc::new(boolean4()), &["x".into(), "y".into()], &tiny),
            Err(Error::PowerTooLarge { count: 16, .. })
        ));
    }

    #[test]
    fn residuation_is_an_adjunction_of_maps() {
        let q = luk(4);
        let a = QOrderedSet::d_left(q.clone());
        for c in q.elements() {
            let f = QMap::new(&a, &a, q.elements().map(|p| q.tensor(p, c).index()).collect())
                .unwrap();
            let g = QMap::new(&a, &a, q.elements().map(|r| q.residuate(c, r).index()).collect())
                .unwrap();
            let report = check_map_and_adjunction(&f, Some(&g)).unwrap();
            assert!(report.order_preserving);
            assert_eq!(report.adjoint, Some(true));
        }
        let id = QMap::identity(&a);
        let report = check_map_and_adjunction(&id, Some(&id)).unwrap();
        assert!(report.order_preserving && report.adjoint == Some(true));
        let top = QMap::new(&a, &a, vec![3; 4]).unwrap();
        assert!(top.is_order_preserving());
    }

    #[test]
    fn odometer_order() {
        let all: Vec<_> = odometer(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(odometer(3, 0).count(), 1);
    }
}
