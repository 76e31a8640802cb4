use serde_json::Value;

use super::{catalog::to_f64, parse_rational, Quantale};
use crate::error::QuantaleError;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceKind {
    Lukasiewicz,
    Product,
}

/// One summand `[lo, hi]` of an ordinal sum, carrying a rescaled copy of an
/// Archimedean t-norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumPiece {
    pub lo: f64,
    pub hi: f64,
    pub kind: PieceKind,
}

impl SumPiece {
    pub fn new(lo: f64, hi: f64, kind: PieceKind) -> Self {
        SumPiece { lo, hi, kind }
    }

    #[inline]
    fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    fn contains_open(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    fn scale(&self, x: f64) -> f64 {
        (x - self.lo) / (self.hi - self.lo)
    }

    fn unscale(&self, x: f64) -> f64 {
        self.lo + (self.hi - self.lo) * x
    }

    /// Accepts `{"lo": .., "hi": .., "kind": ..}` or `[lo, hi, kind]`, with
    /// numbers given as floats or `"p/q"` strings.
    pub fn list_from_json(v: &Value) -> Result<Vec<SumPiece>, QuantaleError> {
        let bad = |m: &str| QuantaleError::InvalidParameter(format!("ordinal-sum piece: {m}"));
        let num = |v: &Value| -> Result<f64, QuantaleError> {
            match v {
                Value::Number(n) => n.as_f64().ok_or_else(|| bad("number")),
                Value::String(s) => parse_rational(s).map(to_f64).ok_or_else(|| bad(s)),
                _ => Err(bad("expected a number")),
            }
        };
        let kind = |v: &Value| -> Result<PieceKind, QuantaleError> {
            match v.as_str() {
                Some("lukasiewicz") => Ok(PieceKind::Lukasiewicz),
                Some("product") => Ok(PieceKind::Product),
                _ => Err(bad("kind must be lukasiewicz or product")),
            }
        };
        let items = v.as_array().ok_or_else(|| bad("expected a list"))?;
        items
            .iter()
            .map(|item| match item {
                Value::Array(a) if a.len() == 3 => {
                    Ok(SumPiece::new(num(&a[0])?, num(&a[1])?, kind(&a[2])?))
                }
                Value::Object(o) => Ok(SumPiece::new(
                    num(o.get("lo").ok_or_else(|| bad("lo"))?)?,
                    num(o.get("hi").ok_or_else(|| bad("hi"))?)?,
                    kind(o.get("kind").ok_or_else(|| bad("kind"))?)?,
                )),
                _ => Err(bad("expected [lo, hi, kind]")),
            })
            .collect()
    }
}

/// Left-continuous t-norms on `[0, 1]` with closed-form residua.
#[derive(Debug, Clone, PartialEq)]
pub enum TNorm {
    Minimum,
    Product,
    Lukasiewicz,
    NilpotentMinimum,
    /// Disjoint pieces sorted by `lo`; `min` outside their squares.
    OrdinalSum(Vec<SumPiece>),
}

impl TNorm {
    pub fn ordinal_sum(mut pieces: Vec<SumPiece>) -> Result<Self, QuantaleError> {
        pieces.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for p in &pieces {
            if !(0.0 <= p.lo && p.lo < p.hi && p.hi <= 1.0) {
                return Err(QuantaleError::InvalidParameter(format!(
                    "piece [{}, {}] is not a proper subinterval of [0, 1]",
                    p.lo, p.hi
                )));
            }
        }
        for w in pieces.windows(2) {
            if w[0].hi > w[1].lo {
                return Err(QuantaleError::InvalidParameter(format!(
                    "pieces ({}, {}) and ({}, {}) overlap",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        Ok(TNorm::OrdinalSum(pieces))
    }

    pub fn from_json(v: &Value) -> Result<Self, QuantaleError> {
        match v {
            Value::String(s) => TNorm::from_name(s),
            Value::Object(o) => match o.get("name").and_then(Value::as_str) {
                Some("ordinal_sum") => TNorm::ordinal_sum(SumPiece::list_from_json(
                    o.get("pieces").unwrap_or(&Value::Null),
                )?),
                Some(name) => TNorm::from_name(name),
                None => Err(QuantaleError::InvalidParameter("t-norm needs a name".into())),
            },
            _ => Err(QuantaleError::InvalidParameter("bad t-norm".into())),
        }
    }

    pub fn from_name(name: &str) -> Result<Self, QuantaleError> {
        Ok(match name {
            "min" | "minimum" | "godel" => TNorm::Minimum,
            "product" => TNorm::Product,
            "lukasiewicz" => TNorm::Lukasiewicz,
            "nilpotent_minimum" => TNorm::NilpotentMinimum,
            other => {
                return Err(QuantaleError::InvalidParameter(format!(
                    "unknown t-norm `{other}`"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            TNorm::Minimum => "min",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::NilpotentMinimum => "nilpotent_minimum",
            TNorm::OrdinalSum(_) => "ordinal_sum",
        }
    }

    /// Ordinal-sum pieces of a continuous t-norm; `None` for the
    /// discontinuous nilpotent minimum.
    pub fn decomposition(&self) -> Option<Vec<SumPiece>> {
        match self {
            TNorm::Minimum => Some(Vec::new()),
            TNorm::Product => Some(vec![SumPiece::new(0.0, 1.0, PieceKind::Product)]),
            TNorm::Lukasiewicz => Some(vec![SumPiece::new(0.0, 1.0, PieceKind::Lukasiewicz)]),
            TNorm::NilpotentMinimum => None,
            TNorm::OrdinalSum(p) => Some(p.clone()),
        }
    }

    pub fn is_continuous(&self) -> bool {
        !matches!(self, TNorm::NilpotentMinimum)
    }
}

fn archimedean_tensor(kind: PieceKind, a: f64, b: f64) -> f64 {
    match kind {
        PieceKind::Lukasiewicz => (a + b - 1.0).max(0.0),
        PieceKind::Product => a * b,
    }
}

fn archimedean_residuum(kind: PieceKind, a: f64, b: f64) -> f64 {
    if a <= b {
        return 1.0;
    }
    match kind {
        PieceKind::Lukasiewicz => (1.0 - a + b).min(1.0),
        PieceKind::Product => b / a,
    }
}

/// `[0, 1]` with a catalog t-norm. Comparisons use `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalQuantale {
    tnorm: TNorm,
    tolerance: f64,
}

impl IntervalQuantale {
    pub fn new(tnorm: TNorm) -> Self {
        IntervalQuantale {
            tnorm,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// The piece whose closed square contains `(x, y)`, if any.
    pub fn piece_of(&self, x: f64, y: f64) -> Option<SumPiece> {
        match &self.tnorm {
            TNorm::OrdinalSum(pieces) => pieces
                .iter()
                .find(|p| p.contains(x) && p.contains(y))
                .copied(),
            _ => None,
        }
    }

    /// The piece whose open square contains `(x, y)`, if any.
    pub fn open_piece_of(&self, x: f64, y: f64) -> Option<SumPiece> {
        self.tnorm
            .decomposition()?
            .into_iter()
            .find(|p| p.contains_open(x) && p.contains_open(y))
    }
}

impl Quantale for IntervalQuantale {
    type Value = f64;

    fn top(&self) -> f64 {
        1.0
    }
    fn bottom(&self) -> f64 {
        0.0
    }

    fn tensor(&self, a: f64, b: f64) -> f64 {
        match &self.tnorm {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
            TNorm::NilpotentMinimum => {
                if a + b <= 1.0 {
                    0.0
                } else {
                    a.min(b)
                }
            }
            TNorm::OrdinalSum(_) => match self.piece_of(a, b) {
                Some(p) => p.unscale(archimedean_tensor(p.kind, p.scale(a), p.scale(b))),
                None => a.min(b),
            },
        }
    }

    fn residuate(&self, a: f64, b: f64) -> f64 {
        if a <= b {
            return 1.0;
        }
        match &self.tnorm {
            TNorm::Minimum => b,
            TNorm::Product => b / a,
            TNorm::Lukasiewicz => (1.0 - a + b).min(1.0),
            TNorm::NilpotentMinimum => (1.0 - a).max(b),
            TNorm::OrdinalSum(_) => match self.piece_of(a, b) {
                Some(p) => p.unscale(archimedean_residuum(p.kind, p.scale(a), p.scale(b))),
                None => b,
            },
        }
    }

    fn join(&self, p: f64, q: f64) -> f64 {
        p.max(q)
    }
    fn meet(&self, p: f64, q: f64) -> f64 {
        p.min(q)
    }
    fn leq(&self, p: f64, q: f64) -> bool {
        p <= q + self.tolerance
    }
    fn way_below(&self, p: f64, r: f64) -> bool {
        p == 0.0 || p < r
    }
    fn format(&self, p: f64) -> String {
        format!("{p}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(t: TNorm) -> IntervalQuantale {
        IntervalQuantale::new(t)
    }

    #[test]
    fn catalog_formulas() {
        let l = q(TNorm::Lukasiewicz);
        assert!((l.residuate(0.7, 0.4) - 0.7).abs() < 1e-12);
        assert!((l.tensor(0.7, 0.4) - 0.1).abs() < 1e-12);
        let m = q(TNorm::Minimum);
        assert_eq!(m.residuate(0.3, 0.6), 1.0);
        assert_eq!(m.residuate(0.6, 0.3), 0.3);
        let p = q(TNorm::Product);
        assert_eq!(p.residuate(0.5, 0.25), 0.5);
        assert_eq!(p.tensor(0.5, 0.5), 0.25);
        let nm = q(TNorm::NilpotentMinimum);
        assert_eq!(nm.tensor(0.5, 0.5), 0.0);
        assert_eq!(nm.tensor(0.6, 0.7), 0.6);
        assert!((nm.residuate(0.7, 0.2) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn ordinal_sum_is_min_outside_and_rescaled_inside() {
        let t = TNorm::ordinal_sum(vec![SumPiece::new(0.0, 0.5, PieceKind::Lukasiewicz)]).unwrap();
        let s = q(t);
        // outside [0, 1/2]^2 the tensor is min
        assert_eq!(s.tensor(0.3, 0.8), 0.3);
        assert_eq!(s.tensor(0.6, 0.9), 0.6);
        // inside: 1/2 * max(0.8 + 0.6 - 1, 0) = 0.2
        assert!((s.tensor(0.4, 0.3) - 0.2).abs() < 1e-12);
        // residuum: 1 when a <= b, piece formula inside, b otherwise
        assert_eq!(s.residuate(0.2, 0.4), 1.0);
        // largest s with 0.4 & s <= 0.3 inside the piece is 0.4
        assert!((s.residuate(0.4, 0.3) - 0.4).abs() < 1e-12);
        assert_eq!(s.residuate(0.8, 0.3), 0.3);
        assert_eq!(s.residuate(0.9, 0.6), 0.6);
    }

    #[test]
    fn rejects_overlapping_pieces() {
        let r = TNorm::ordinal_sum(vec![
            SumPiece::new(0.0, 0.5, PieceKind::Product),
            SumPiece::new(0.4, 0.8, PieceKind::Lukasiewicz),
        ]);
        assert!(r.is_err());
        assert!(TNorm::ordinal_sum(vec![SumPiece::new(0.5, 0.5, PieceKind::Product)]).is_err());
    }

    #[test]
    fn way_below_on_the_interval() {
        let l = q(TNorm::Lukasiewicz);
        assert!(!l.way_below(0.5, 0.5));
        assert!(l.way_below(0.0, 0.0));
        assert!(l.way_below(0.4, 0.5));
    }
}
