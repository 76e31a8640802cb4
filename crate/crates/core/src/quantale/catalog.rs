use num_rational::Ratio;
use serde_json::{Map, Value};

use super::{Elem, FiniteQuantale, IntervalQuantale, QuantaleProps, SumPiece, TNorm};
use crate::error::QuantaleError;

/// Exact rational numbers used for chain carriers.
pub type Rational = Ratio<i64>;

/// Parses `"p/q"`, `"p"`, or a terminating decimal such as `"0.25"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Ratio::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: i64 = if whole.is_empty() || whole == "-" {
            0
        } else {
            whole.parse().ok()?
        };
        let scale = 10i64.pow(frac.len() as u32);
        let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
        let frac = if negative { -frac } else { frac };
        return Some(Ratio::new(whole * scale + frac, scale));
    }
    text.parse::<i64>().ok().map(Ratio::from_integer)
}

pub(crate) fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The named quantales the library can build.
#[derive(Debug, Clone, PartialEq)]
pub enum Catalog {
    Boolean2,
    Boolean4,
    LukasiewiczChain(usize),
    GodelChain(usize),
    NilpotentMinimumChain(usize),
    /// Present so that the closure check can reject it for `n >= 3`.
    ProductChain(usize),
    Interval(TNorm),
}

/// Either backend, as produced by [`standard_quantale`] or a quantale file.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyQuantale {
    Finite(FiniteQuantale),
    Interval(IntervalQuantale),
}

impl AnyQuantale {
    pub fn properties(&self) -> QuantaleProps<String> {
        match self {
            AnyQuantale::Finite(q) => {
                let p = q.properties();
                QuantaleProps {
                    idempotents: p.idempotents.map(|e| q.label(e).to_string()),
                    is_integral: p.is_integral,
                    is_commutative: p.is_commutative,
                    is_prelinear: p.is_prelinear,
                    is_divisible: p.is_divisible,
                    has_double_negation: p.has_double_negation,
                    is_archimedean: p.is_archimedean,
                    is_meet_continuous: p.is_meet_continuous,
                    is_dually_meet_continuous: p.is_dually_meet_continuous,
                }
            }
            AnyQuantale::Interval(q) => {
                let p = q.properties();
                QuantaleProps {
                    idempotents: p.idempotents.map(|v| format!("{v}")),
                    is_integral: p.is_integral,
                    is_commutative: p.is_commutative,
                    is_prelinear: p.is_prelinear,
                    is_divisible: p.is_divisible,
                    has_double_negation: p.has_double_negation,
                    is_archimedean: p.is_archimedean,
                    is_meet_continuous: p.is_meet_continuous,
                    is_dually_meet_continuous: p.is_dually_meet_continuous,
                }
            }
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteQuantale> {
        match self {
            AnyQuantale::Finite(q) => Some(q),
            AnyQuantale::Interval(_) => None,
        }
    }

    pub fn into_finite(self) -> Option<FiniteQuantale> {
        match self {
            AnyQuantale::Finite(q) => Some(q),
            AnyQuantale::Interval(_) => None,
        }
    }
}

impl Catalog {
    /// Reads a catalog tag and its parameters, e.g. `("godel_chain", {"n": 5})`.
    pub fn parse(name: &str, params: &Map<String, Value>) -> Result<Self, QuantaleError> {
        let n = || -> Result<usize, QuantaleError> {
            let n = params
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| QuantaleError::InvalidParameter(format!("{name} needs n")))?;
            if n < 2 {
                return Err(QuantaleError::InvalidParameter(format!("n = {n} < 2")));
            }
            Ok(n as usize)
        };
        Ok(match name {
            "boolean2" => Catalog::Boolean2,
            "boolean4" => Catalog::Boolean4,
            "lukasiewicz_chain" => Catalog::LukasiewiczChain(n()?),
            "godel_chain" => Catalog::GodelChain(n()?),
            "nilpotent_minimum_chain" => Catalog::NilpotentMinimumChain(n()?),
            "product_chain" => Catalog::ProductChain(n()?),
            "interval" => {
                let tnorm = params
                    .get("tnorm")
                    .ok_or_else(|| QuantaleError::InvalidParameter("interval needs tnorm".into()))?;
                Catalog::Interval(TNorm::from_json(tnorm)?)
            }
            "ordinal_sum" => {
                let pieces = params.get("pieces").ok_or_else(|| {
                    QuantaleError::InvalidParameter("ordinal_sum needs pieces".into())
                })?;
                Catalog::Interval(TNorm::ordinal_sum(SumPiece::list_from_json(pieces)?)?)
            }
            other => {
                return Err(QuantaleError::InvalidParameter(format!(
                    "unknown catalog quantale `{other}`"
                )))
            }
        })
    }

    pub fn build(&self) -> Result<AnyQuantale, QuantaleError> {
        Ok(match self {
            Catalog::Boolean2 => AnyQuantale::Finite(godel_chain(2)?),
            Catalog::Boolean4 => AnyQuantale::Finite(boolean4()),
            Catalog::LukasiewiczChain(n) => AnyQuantale::Finite(lukasiewicz_chain(*n)?),
            Catalog::GodelChain(n) => AnyQuantale::Finite(godel_chain(*n)?),
            Catalog::NilpotentMinimumChain(n) => {
                AnyQuantale::Finite(nilpotent_minimum_chain(*n)?)
            }
            Catalog::ProductChain(n) => AnyQuantale::Finite(product_chain(*n)?),
            Catalog::Interval(t) => AnyQuantale::Interval(IntervalQuantale::new(t.clone())),
        })
    }
}

/// Builds a named quantale from its catalog tag and parameters.
pub fn standard_quantale(name: &str, params: &Map<String, Value>) -> Result<AnyQuantale, QuantaleError> {
    Catalog::parse(name, params)?.build()
}

/// The four-element Boolean algebra `{0, a, b, 1}` with `& = meet`.
pub fn boolean4() -> FiniteQuantale {
    let labels: Vec<String> = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
    // bit encoding: 0 = 00, a = 01, b = 10, 1 = 11
    let leq = (0..16).map(|k| (k / 4) & !(k % 4) == 0).collect();
    let tensor = (0..16).map(|k| Elem(((k / 4) & (k % 4)) as u8)).collect();
    FiniteQuantale::from_tables(labels, None, leq, tensor, Elem(3)).expect("boolean4 is valid")
}

/// The grid `{0, 1/(n-1), ..., 1}` with `tnorm`, computed in exact rationals.
/// Fails with `ChainNotClosed` when some product leaves the grid.
pub fn chain_with(
    name: &str,
    n: usize,
    tnorm: impl Fn(Rational, Rational) -> Rational,
) -> Result<FiniteQuantale, QuantaleError> {
    if n < 2 {
        return Err(QuantaleError::InvalidParameter(format!("n = {n} < 2")));
    }
    if n > u8::MAX as usize {
        return Err(QuantaleError::InvalidParameter(format!("n = {n} > 255")));
    }
    let step = (n - 1) as i64;
    let values: Vec<Rational> = (0..n as i64).map(|k| Ratio::new(k, step)).collect();
    let labels: Vec<String> = values.iter().map(|v| format_rational(*v)).collect();
    let mut tensor = Vec::with_capacity(n * n);
    for a in &values {
        for b in &values {
            let v = tnorm(*a, *b);
            let idx = values.iter().position(|w| *w == v).ok_or_else(|| {
                QuantaleError::ChainNotClosed {
                    tnorm: name.to_string(),
                    a: format_rational(*a),
                    b: format_rational(*b),
                    value: format_rational(v),
                }
            })?;
            tensor.push(Elem(idx as u8));
        }
    }
    let leq = (0..n * n).map(|k| k / n <= k % n).collect();
    FiniteQuantale::from_tables(labels, Some(values), leq, tensor, Elem((n - 1) as u8))
}

pub fn lukasiewicz_chain(n: usize) -> Result<FiniteQuantale, QuantaleError> {
    let one = Ratio::from_integer(1);
    let zero = Ratio::from_integer(0);
    chain_with("lukasiewicz", n, |a, b| (a + b - one).max(zero))
}

pub fn godel_chain(n: usize) -> Result<FiniteQuantale, QuantaleError> {
    chain_with("min", n, |a, b| a.min(b))
}

pub fn nilpotent_minimum_chain(n: usize) -> Result<FiniteQuantale, QuantaleError> {
    let one = Ratio::from_integer(1);
    chain_with("nilpotent_minimum", n, |a, b| {
        if a + b <= one {
            Ratio::from_integer(0)
        } else {
            a.min(b)
        }
    })
}

pub fn product_chain(n: usize) -> Result<FiniteQuantale, QuantaleError> {
    chain_with("product", n, |a, b| a * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::Quantale;

    fn r(p: i64, q: i64) -> Rational {
        Ratio::new(p, q)
    }

    #[test]
    fn lukasiewicz_three_chain() {
        let q = lukasiewicz_chain(3).unwrap();
        assert_eq!(q.labels(), &["0", "1/2", "1"]);
        let half = q.parse("1/2").unwrap();
        let zero = q.parse("0").unwrap();
        assert_eq!(q.tensor(half, half), zero);
        assert_eq!(q.residuate(half, zero), half);
    }

    #[test]
    fn godel_five_chain_all_idempotent() {
        let q = godel_chain(5).unwrap();
        assert_eq!(q.labels(), &["0", "1/4", "1/2", "3/4", "1"]);
        assert!(q.elements().all(|e| q.tensor(e, e) == e));
    }

    #[test]
    fn product_grid_is_not_closed() {
        let err = product_chain(3).unwrap_err();
        assert_eq!(
            err,
            QuantaleError::ChainNotClosed {
                tnorm: "product".into(),
                a: "1/2".into(),
                b: "1/2".into(),
                value: "1/4".into()
            }
        );
        assert!(product_chain(2).is_ok());
    }

    #[test]
    fn chain_residua_match_closed_forms() {
        let one = Ratio::from_integer(1);
        for n in 2..=7 {
            let luk = lukasiewicz_chain(n).unwrap();
            let nm = nilpotent_minimum_chain(n).unwrap();
            let god = godel_chain(n).unwrap();
            let vals = luk.numeric().unwrap().to_vec();
            for (i, &a) in vals.iter().enumerate() {
                for (j, &b) in vals.iter().enumerate() {
                    let (ei, ej) = (Elem(i as u8), Elem(j as u8));
                    let want = (one - a + b).min(one);
                    assert_eq!(luk.numeric().unwrap()[luk.residuate(ei, ej).index()], want);
                    let want = if a <= b { one } else { (one - a).max(b) };
                    assert_eq!(nm.numeric().unwrap()[nm.residuate(ei, ej).index()], want);
                    let want = if a <= b { one } else { b };
                    assert_eq!(god.numeric().unwrap()[god.residuate(ei, ej).index()], want);
                }
            }
        }
    }

    #[test]
    fn parse_values() {
        assert_eq!(parse_rational("1/2"), Some(r(1, 2)));
        assert_eq!(parse_rational("2/4"), Some(r(1, 2)));
        assert_eq!(parse_rational("0.25"), Some(r(1, 4)));
        assert_eq!(parse_rational("1"), Some(r(1, 1)));
        assert_eq!(parse_rational("x"), None);
        let q = lukasiewicz_chain(5).unwrap();
        assert_eq!(q.parse("2/4"), q.parse("1/2"));
        assert_eq!(q.parse("0.75"), q.parse("3/4"));
    }

    #[test]
    fn catalog_from_json() {
        let params: Map<String, Value> = serde_json::from_str(r#"{"n": 4}"#).unwrap();
        let q = standard_quantale("lukasiewicz_chain", &params).unwrap();
        assert_eq!(q.as_finite().unwrap().labels().len(), 4);
        let params: Map<String, Value> = serde_json::from_str(
            r#"{"pieces": [{"lo": "0", "hi": "1/2", "kind": "lukasiewicz"}]}"#,
        )
        .unwrap();
        let q = standard_quantale("ordinal_sum", &params).unwrap();
        assert!(matches!(q, AnyQuantale::Interval(_)));
        assert!(standard_quantale("nope", &Map::new()).is_err());
    }
}
