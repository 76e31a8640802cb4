//! Integral commutative quantales: the truth-value algebras.
//!
//! Two backends implement [`Quantale`]: [`FiniteQuantale`] stores every
//! operation as an exact table, [`IntervalQuantale`] evaluates a catalog
//! t-norm on `[0, 1]` and its residuum in closed form.

use std::fmt;

mod catalog;
mod finite;
mod interval;
pub mod laws;
mod props;

pub use catalog::{
    boolean4, chain_with, godel_chain, lukasiewicz_chain, nilpotent_minimum_chain, parse_rational,
    product_chain, standard_quantale, AnyQuantale, Catalog, Rational,
};
pub use finite::{Elem, FiniteQuantale, FiniteSpec};
pub use interval::{IntervalQuantale, PieceKind, SumPiece, TNorm, DEFAULT_TOLERANCE};
pub use props::{Idempotents, QuantaleProps, Span};

/// A complete lattice with a commutative, associative, join-preserving tensor
/// whose unit is the top element.
pub trait Quantale: fmt::Debug + PartialEq + Send + Sync {
    type Value: Copy + PartialEq + fmt::Debug + Send + Sync;

    fn top(&self) -> Self::Value;
    fn bottom(&self) -> Self::Value;
    fn tensor(&self, p: Self::Value, q: Self::Value) -> Self::Value;
    /// `p -> r`, the right adjoint of `p & -`.
    fn residuate(&self, p: Self::Value, r: Self::Value) -> Self::Value;
    fn join(&self, p: Self::Value, q: Self::Value) -> Self::Value;
    fn meet(&self, p: Self::Value, q: Self::Value) -> Self::Value;
    fn leq(&self, p: Self::Value, q: Self::Value) -> bool;
    fn way_below(&self, p: Self::Value, r: Self::Value) -> bool;
    fn format(&self, p: Self::Value) -> String;

    fn equiv(&self, p: Self::Value, q: Self::Value) -> bool {
        self.leq(p, q) && self.leq(q, p)
    }

    fn is_top(&self, p: Self::Value) -> bool {
        self.leq(self.top(), p)
    }

    fn neg(&self, p: Self::Value) -> Self::Value {
        self.residuate(p, self.bottom())
    }

    fn join_all<I: IntoIterator<Item = Self::Value>>(&self, items: I) -> Self::Value {
        items
            .into_iter()
            .fold(self.bottom(), |acc, v| self.join(acc, v))
    }

    fn meet_all<I: IntoIterator<Item = Self::Value>>(&self, items: I) -> Self::Value {
        items.into_iter().fold(self.top(), |acc, v| self.meet(acc, v))
    }
}

/// Quantales whose carrier can be listed.
pub trait FiniteCarrier: Quantale {
    fn size(&self) -> usize;
    fn value_at(&self, index: usize) -> Self::Value;
    fn index_of(&self, value: Self::Value) -> usize;

    fn values(&self) -> Box<dyn Iterator<Item = Self::Value> + '_> {
        Box::new((0..self.size()).map(move |i| self.value_at(i)))
    }
}

/// `p -> r` for either backend.
pub fn residuate<Q: Quantale>(q: &Q, p: Q::Value, r: Q::Value) -> Q::Value {
    q.residuate(p, r)
}

/// `p << r`. On finite lattices this is `p <= r`; on `[0, 1]` it is
/// `p = 0 or p < r`.
pub fn way_below<Q: Quantale>(q: &Q, p: Q::Value, r: Q::Value) -> bool {
    q.way_below(p, r)
}
