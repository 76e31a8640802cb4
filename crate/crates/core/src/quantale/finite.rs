use serde::{Deserialize, Serialize};

use super::{FiniteCarrier, Quantale, Rational};
use crate::error::QuantaleError;

/// Index of an element of a [`FiniteQuantale`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct Elem(pub u8);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Raw tables as they appear in a quantale file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteSpec {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

/// A validated finite integral commutative quantale. All operations are
/// table lookups; the residuum and negation are derived at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuantale {
    labels: Vec<String>,
    numeric: Option<Vec<Rational>>,
    n: usize,
    leq: Vec<bool>,
    tensor: Vec<Elem>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    residuum: Vec<Elem>,
    negation: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    frame: bool,
}

impl FiniteQuantale {
    /// Validates a quantale given by labelled tables.
    pub fn build(spec: &FiniteSpec) -> Result<Self, QuantaleError> {
        let n = spec.elements.len();
        if n == 0 {
            return Err(QuantaleError::Shape("no elements".into()));
        }
        if n > u8::MAX as usize {
            return Err(QuantaleError::Shape(format!("{n} elements exceeds 255")));
        }
        for (i, l) in spec.elements.iter().enumerate() {
            if spec.elements[..i].contains(l) {
                return Err(QuantaleError::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |l: &str| -> Result<Elem, QuantaleError> {
            spec.elements
                .iter()
                .position(|e| e == l)
                .map(|i| Elem(i as u8))
                .ok_or_else(|| QuantaleError::UnknownLabel(l.to_string()))
        };
        if spec.leq.len() != n || spec.leq.iter().any(|r| r.len() != n) {
            return Err(QuantaleError::Shape(format!("leq must be {n}x{n}")));
        }
        if spec.tensor.len() != n || spec.tensor.iter().any(|r| r.len() != n) {
            return Err(QuantaleError::Shape(format!("tensor must be {n}x{n}")));
        }
        let leq: Vec<bool> = spec.leq.iter().flatten().copied().collect();
        let mut tensor = Vec::with_capacity(n * n);
        for l in spec.tensor.iter().flatten() {
            tensor.push(lookup(l)?);
        }
        let unit = lookup(&spec.unit)?;
        // labels that are all rationals double as numeric values
        let numeric: Option<Vec<Rational>> = spec.elements.iter().map(|l| super::parse_rational(l)).collect();
        Self::from_tables(spec.elements.clone(), numeric, leq, tensor, unit)
    }

    /// Validates a quantale given by index tables (row-major, `n x n`).
    pub fn from_tables(
        labels: Vec<String>,
        numeric: Option<Vec<Rational>>,
        leq: Vec<bool>,
        tensor: Vec<Elem>,
        unit: Elem,
    ) -> Result<Self, QuantaleError> {
        let n = labels.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(QuantaleError::Shape(format!("{n} elements")));
        }
        if leq.len() != n * n || tensor.len() != n * n {
            return Err(QuantaleError::Shape(format!("tables must be {n}x{n}")));
        }
        if tensor.iter().any(|e| e.index() >= n) || unit.index() >= n {
            return Err(QuantaleError::Shape("element index out of range".into()));
        }
        let name = |i: usize| labels[i].clone();
        let le = |a: usize, b: usize| leq[a * n + b];

        for a in 0..n {
            if !le(a, a) {
                return Err(QuantaleError::NotALattice {
                    reason: "order is not reflexive".into(),
                    witness: vec![name(a)],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(QuantaleError::NotALattice {
                        reason: "order is not antisymmetric".into(),
                        witness: vec![name(a), name(b)],
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(QuantaleError::NotALattice {
                            reason: "order is not transitive".into(),
                            witness: vec![name(a), name(b), name(c)],
                        });
                    }
                }
            }
        }

        let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let is_bound = |c: usize| {
                if upper {
                    le(a, c) && le(b, c)
                } else {
                    le(c, a) && le(c, b)
                }
            };
            let bounds: Vec<usize> = (0..n).filter(|&c| is_bound(c)).collect();
            bounds.iter().copied().find(|&c| {
                bounds
                    .iter()
                    .all(|&d| if upper { le(c, d) } else { le(d, c) })
            })
        };
        let mut join = vec![Elem(0); n * n];
        let mut meet = vec![Elem(0); n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = match bound(a, b, true) {
                    Some(c) => Elem(c as u8),
                    None => {
                        return Err(QuantaleError::NotALattice {
                            reason: "no least upper bound".into(),
                            witness: vec![name(a), name(b)],
                        })
                    }
                };
                meet[a * n + b] = match bound(a, b, false) {
                    Some(c) => Elem(c as u8),
                    None => {
                        return Err(QuantaleError::NotALattice {
                            reason: "no greatest lower bound".into(),
                            witness: vec![name(a), name(b)],
                        })
                    }
                };
            }
        }
        let bottom = (0..n).find(|&c| (0..n).all(|d| le(c, d))).expect("finite lattice");
        let top = (0..n).find(|&c| (0..n).all(|d| le(d, c))).expect("finite lattice");

        let t = |a: usize, b: usize| tensor[a * n + b].index();
        for a in 0..n {
            for b in 0..n {
                if t(a, b) != t(b, a) {
                    return Err(QuantaleError::NotCommutative(name(a), name(b)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t(t(a, b), c) != t(a, t(b, c)) {
                        return Err(QuantaleError::NotAssociative(name(a), name(b), name(c)));
                    }
                }
            }
        }
        let u = unit.index();
        if let Some(a) = (0..n).find(|&a| t(u, a) != a) {
            return Err(QuantaleError::NotUnital {
                unit: name(u),
                witness: name(a),
            });
        }
        if u != top {
            return Err(QuantaleError::NotIntegral {
                unit: name(u),
                top: name(top),
            });
        }
        for p in 0..n {
            if t(p, bottom) != bottom {
                return Err(QuantaleError::NotDistributive {
                    p: name(p),
                    q: name(bottom),
                    r: name(bottom),
                });
            }
            for q in 0..n {
                for r in 0..n {
                    let j = join[q * n + r].index();
                    if t(p, j) != join[t(p, q) * n + t(p, r)].index() {
                        return Err(QuantaleError::NotDistributive {
                            p: name(p),
                            q: name(q),
                            r: name(r),
                        });
                    }
                }
            }
        }

        // p -> r is the join of all s with p & s <= r.
        let mut residuum = vec![Elem(0); n * n];
        for p in 0..n {
            for r in 0..n {
                let mut acc = bottom;
                for s in 0..n {
                    if le(t(p, s), r) {
                        acc = join[acc * n + s].index();
                    }
                }
                residuum[p * n + r] = Elem(acc as u8);
            }
        }
        let negation = (0..n).map(|p| residuum[p * n + bottom]).collect();
        let frame = tensor == meet;

        Ok(FiniteQuantale {
            labels,
            numeric,
            n,
            leq,
            tensor,
            join,
            meet,
            residuum,
            negation,
            bottom: Elem(bottom as u8),
            top: Elem(top as u8),
            frame,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.index()]
    }

    /// Exact numeric meaning of each element, present for chains on `[0, 1]`.
    pub fn numeric(&self) -> Option<&[Rational]> {
        self.numeric.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (0..self.n).map(|i| Elem(i as u8))
    }

    /// Looks an element up by label, or by rational value on numeric chains.
    pub fn parse(&self, text: &str) -> Option<Elem> {
        let text = text.trim();
        if let Some(i) = self.labels.iter().position(|l| l == text) {
            return Some(Elem(i as u8));
        }
        let value = super::parse_rational(text)?;
        self.by_value(value)
    }

    pub fn by_value(&self, value: Rational) -> Option<Elem> {
        let numeric = self.numeric.as_ref()?;
        numeric.iter().position(|v| *v == value).map(|i| Elem(i as u8))
    }

    /// Nearest element to a float, accepted when within `tolerance`.
    pub fn by_float(&self, value: f64, tolerance: f64) -> Option<Elem> {
        let numeric = self.numeric.as_ref()?;
        numeric
            .iter()
            .position(|v| (super::catalog::to_f64(*v) - value).abs() <= tolerance)
            .map(|i| Elem(i as u8))
    }

    /// True when the tensor is the lattice meet.
    pub fn is_frame(&self) -> bool {
        self.frame
    }

    /// True when the order is total.
    pub fn is_chain(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| (0..n).all(|b| self.leq[a * n + b] || self.leq[b * n + a]))
    }

    /// The input tables in file form.
    pub fn to_spec(&self) -> FiniteSpec {
        let n = self.n;
        FiniteSpec {
            elements: self.labels.clone(),
            leq: (0..n)
                .map(|a| (0..n).map(|b| self.leq[a * n + b]).collect())
                .collect(),
            tensor: (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| self.labels[self.tensor[a * n + b].index()].clone())
                        .collect()
                })
                .collect(),
            unit: self.labels[self.top.index()].clone(),
        }
    }
}

impl Quantale for FiniteQuantale {
    type Value = Elem;

    #[inline]
    fn top(&self) -> Elem {
        self.top
    }
    #[inline]
    fn bottom(&self) -> Elem {
        self.bottom
    }
    #[inline]
    fn tensor(&self, p: Elem, q: Elem) -> Elem {
        self.tensor[p.index() * self.n + q.index()]
    }
    #[inline]
    fn residuate(&self, p: Elem, r: Elem) -> Elem {
        self.residuum[p.index() * self.n + r.index()]
    }
    #[inline]
    fn join(&self, p: Elem, q: Elem) -> Elem {
        self.join[p.index() * self.n + q.index()]
    }
    #[inline]
    fn meet(&self, p: Elem, q: Elem) -> Elem {
        self.meet[p.index() * self.n + q.index()]
    }
    #[inline]
    fn leq(&self, p: Elem, q: Elem) -> bool {
        self.leq[p.index() * self.n + q.index()]
    }
    #[inline]
    fn equiv(&self, p: Elem, q: Elem) -> bool {
        p == q
    }
    #[inline]
    fn is_top(&self, p: Elem) -> bool {
        p == self.top
    }
    #[inline]
    fn neg(&self, p: Elem) -> Elem {
        self.negation[p.index()]
    }
    fn way_below(&self, p: Elem, r: Elem) -> bool {
        self.leq(p, r)
    }
    fn format(&self, p: Elem) -> String {
        self.labels[p.index()].clone()
    }
}

impl FiniteCarrier for FiniteQuantale {
    fn size(&self) -> usize {
        self.n
    }
    fn value_at(&self, index: usize) -> Elem {
        Elem(index as u8)
    }
    fn index_of(&self, value: Elem) -> usize {
        value.index()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(elements: &[&str], leq: &[&[u8]], tensor: &[&[&str]], unit: &str) -> FiniteSpec {
        FiniteSpec {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            leq: leq
                .iter()
                .map(|r| r.iter().map(|&b| b == 1).collect())
                .collect(),
            tensor: tensor
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
            unit: unit.to_string(),
        }
    }

    fn boolean4() -> FiniteSpec {
        spec(
            &["0", "a", "b", "1"],
            &[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1], &[0, 0, 0, 1]],
            &[
                &["0", "0", "0", "0"],
                &["0", "a", "0", "a"],
                &["0", "0", "b", "b"],
                &["0", "a", "b", "1"],
            ],
            "1",
        )
    }

    #[test]
    fn boolean4_residuation_by_adjunction_search() {
        let q = FiniteQuantale::build(&boolean4()).unwrap();
        let e = |l| q.parse(l).unwrap();
        // oracle: the largest s with p & s <= r, found by scanning all 16 pairs
        for p in q.elements() {
            for r in q.elements() {
                let candidates: Vec<Elem> = q
                    .elements()
                    .filter(|&s| q.leq(q.tensor(p, s), r))
                    .collect();
                let max = candidates
                    .iter()
                    .copied()
                    .find(|&c| candidates.iter().all(|&d| q.leq(d, c)))
                    .unwrap();
                assert_eq!(q.residuate(p, r), max);
            }
        }
        assert_eq!(q.residuate(e("a"), e("0")), e("b"));
        assert_eq!(q.neg(e("b")), e("a"));
        assert!(q.is_frame());
        assert!(!q.is_chain());
    }

    #[test]
    fn two_chain_is_classical_implication() {
        let q = FiniteQuantale::build(&spec(
            &["0", "1"],
            &[&[1, 1], &[0, 1]],
            &[&["0", "0"], &["0", "1"]],
            "1",
        ))
        .unwrap();
        let (f, t) = (Elem(0), Elem(1));
        assert_eq!(q.residuate(f, f), t);
        assert_eq!(q.residuate(f, t), t);
        assert_eq!(q.residuate(t, f), f);
        assert_eq!(q.residuate(t, t), t);
    }

    #[test]
    fn unit_below_top_is_not_integral() {
        // chain 0 < u < t with u a genuine unit
        let err = FiniteQuantale::build(&spec(
            &["0", "u", "t"],
            &[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]],
            &[&["0", "0", "0"], &["0", "u", "t"], &["0", "t", "t"]],
            "u",
        ))
        .unwrap_err();
        assert!(matches!(err, QuantaleError::NotIntegral { .. }), "{err}");
    }

    #[test]
    fn rejects_each_law_with_witness() {
        let mut s = boolean4();
        s.tensor[1][2] = "a".into();
        assert!(matches!(
            FiniteQuantale::build(&s),
            Err(QuantaleError::NotCommutative(..))
        ));

        // 0, a, b, 1 with a and b incomparable and no top
        let no_join = spec(
            &["0", "a", "b"],
            &[&[1, 1, 1], &[0, 1, 0], &[0, 0, 1]],
            &[&["0", "0", "0"], &["0", "a", "0"], &["0", "0", "b"]],
            "a",
        );
        assert!(matches!(
            FiniteQuantale::build(&no_join),
            Err(QuantaleError::NotALattice { .. })
        ));

        // 4-chain with x & x = 0, x & y = x, y & y = x:
        // (x & y) & y = x but x & (y & y) = 0
        let nonassoc = spec(
            &["0", "x", "y", "1"],
            &[&[1, 1, 1, 1], &[0, 1, 1, 1], &[0, 0, 1, 1], &[0, 0, 0, 1]],
            &[
                &["0", "0", "0", "0"],
                &["0", "0", "x", "x"],
                &["0", "x", "x", "y"],
                &["0", "x", "y", "1"],
            ],
            "1",
        );
        let err = FiniteQuantale::build(&nonassoc).unwrap_err();
        assert_eq!(
            err,
            QuantaleError::NotAssociative("x".into(), "y".into(), "y".into())
        );

        // 0 & 0 = 1 breaks p & bottom = bottom (and the unit law first)
        let nondist = spec(
            &["0", "1"],
            &[&[1, 1], &[0, 1]],
            &[&["1", "0"], &["0", "1"]],
            "1",
        );
        assert!(FiniteQuantale::build(&nondist).is_err());
    }

    #[test]
    fn distributivity_violation_is_reported() {
        // the diamond with a & a = 0, b & b = 0, a & b = 0 and 1 unit:
        // a & (a v b) = a & 1 = a but (a & a) v (a & b) = 0
        let diamond = spec(
            &["0", "a", "b", "1"],
            &[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1], &[0, 0, 0, 1]],
            &[
                &["0", "0", "0", "0"],
                &["0", "0", "0", "a"],
                &["0", "0", "0", "b"],
                &["0", "a", "b", "1"],
            ],
            "1",
        );
        let err = FiniteQuantale::build(&diamond).unwrap_err();
        assert_eq!(
            err,
            QuantaleError::NotDistributive {
                p: "a".into(),
                q: "a".into(),
                r: "b".into()
            }
        );
    }
}
