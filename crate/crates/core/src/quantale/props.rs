use serde::Serialize;

use super::{Elem, FiniteQuantale, IntervalQuantale, Quantale, TNorm};

/// An interval of idempotent values, possibly degenerate or open at `lo`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Span<T> {
    pub lo: T,
    pub hi: T,
    pub lo_open: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Idempotents<T> {
    Elements(Vec<T>),
    Spans(Vec<Span<T>>),
}

impl<T> Idempotents<T> {
    pub fn map<U>(self, f: impl Fn(T) -> U) -> Idempotents<U> {
        match self {
            Idempotents::Elements(v) => Idempotents::Elements(v.into_iter().map(f).collect()),
            Idempotents::Spans(v) => Idempotents::Spans(
                v.into_iter()
                    .map(|s| Span {
                        lo: f(s.lo),
                        hi: f(s.hi),
                        lo_open: s.lo_open,
                    })
                    .collect(),
            ),
        }
    }
}

/// Structural flags of a quantale. `is_archimedean` is only decided for the
/// interval backend.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantaleProps<T> {
    pub idempotents: Idempotents<T>,
    pub is_integral: bool,
    pub is_commutative: bool,
    pub is_prelinear: bool,
    pub is_divisible: bool,
    pub has_double_negation: bool,
    pub is_archimedean: Option<bool>,
    pub is_meet_continuous: bool,
    pub is_dually_meet_continuous: bool,
}

impl FiniteQuantale {
    /// Every flag by exhaustive check over the carrier.
    pub fn properties(&self) -> QuantaleProps<Elem> {
        let pairs = || {
            self.elements()
                .flat_map(move |p| self.elements().map(move |q| (p, q)))
        };
        let top = self.top();
        QuantaleProps {
            idempotents: Idempotents::Elements(
                self.elements().filter(|&p| self.tensor(p, p) == p).collect(),
            ),
            // both are enforced at construction
            is_integral: true,
            is_commutative: true,
            is_prelinear: pairs()
                .all(|(p, q)| self.join(self.residuate(p, q), self.residuate(q, p)) == top),
            is_divisible: pairs()
                .all(|(p, q)| self.tensor(p, self.residuate(p, q)) == self.meet(p, q)),
            has_double_negation: self.elements().all(|p| self.neg(self.neg(p)) == p),
            is_archimedean: None,
            is_meet_continuous: true,
            is_dually_meet_continuous: true,
        }
    }
}

impl IntervalQuantale {
    /// Catalog facts about the t-norm.
    pub fn properties(&self) -> QuantaleProps<f64> {
        let point = |x: f64| Span {
            lo: x,
            hi: x,
            lo_open: false,
        };
        let (idempotents, prelinear, divisible, dn, arch) = match self.tnorm() {
            TNorm::Minimum => (
                Idempotents::Spans(vec![Span {
                    lo: 0.0,
                    hi: 1.0,
                    lo_open: false,
                }]),
                true,
                true,
                false,
                false,
            ),
            TNorm::Product => (Idempotents::Elements(vec![0.0, 1.0]), true, true, false, true),
            TNorm::Lukasiewicz => (Idempotents::Elements(vec![0.0, 1.0]), true, true, true, true),
            TNorm::NilpotentMinimum => (
                Idempotents::Spans(vec![
                    point(0.0),
                    Span {
                        lo: 0.5,
                        hi: 1.0,
                        lo_open: true,
                    },
                ]),
                true,
                false,
                true,
                false,
            ),
            TNorm::OrdinalSum(pieces) => {
                // the complement of the open pieces
                let mut spans = Vec::new();
                let mut cursor = 0.0;
                for p in pieces {
                    spans.push(point(cursor));
                    spans.last_mut().unwrap().hi = p.lo;
                    cursor = p.hi;
                }
                spans.push(Span {
                    lo: cursor,
                    hi: 1.0,
                    lo_open: false,
                });
                let whole = pieces.len() == 1 && pieces[0].lo == 0.0 && pieces[0].hi == 1.0;
                let dn = whole && pieces[0].kind == super::PieceKind::Lukasiewicz;
                (Idempotents::Spans(spans), true, true, dn, whole)
            }
        };
        QuantaleProps {
            idempotents,
            is_integral: true,
            is_commutative: true,
            is_prelinear: prelinear,
            is_divisible: divisible,
            has_double_negation: dn,
            is_archimedean: Some(arch),
            is_meet_continuous: true,
            is_dually_meet_continuous: true,
        }
    }
}
