//! The three ideal classes (forward Cauchy, flat, irreducible) on finite
//! Q-ordered sets, and ideals generated by eventually periodic sequences.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Budget, Error, Result};
use crate::exec;
use crate::fuzzy::{self, FuzzySet, Kind};
use crate::qorder::{odometer, QOrderedSet};
use crate::quantale::{FiniteCarrier, Quantale};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealClass {
    ForwardCauchy,
    Flat,
    Irreducible,
    /// Every fuzzy lower set, inhabited or not.
    AllLower,
}

impl IdealClass {
    pub const IDEALS: [IdealClass; 3] = [
        IdealClass::ForwardCauchy,
        IdealClass::Flat,
        IdealClass::Irreducible,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            IdealClass::ForwardCauchy => "fc",
            IdealClass::Flat => "flat",
            IdealClass::Irreducible => "irr",
            IdealClass::AllLower => "all",
        }
    }
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdealClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fc" | "forward_cauchy" => IdealClass::ForwardCauchy,
            "flat" => IdealClass::Flat,
            "irr" | "irreducible" => IdealClass::Irreducible,
            "all" | "all-lower" | "lower" => IdealClass::AllLower,
            other => return Err(Error::Format(format!("unknown ideal class `{other}`"))),
        })
    }
}

/// Why a fuzzy set fails a class. Every variant recomputes to a strict
/// violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Failure<V> {
    /// `phi(y) & A(x,y) > phi(x)`
    NotLower { x: usize, y: usize },
    NotInhabited,
    /// `phi (x) (psi1 ^ psi2) != (phi (x) psi1) ^ (phi (x) psi2)`
    UpperPair { psi1: FuzzySet<V>, psi2: FuzzySet<V> },
    /// `sub(phi, phi1 v phi2) != sub(phi, phi1) v sub(phi, phi2)`
    LowerPair { phi1: FuzzySet<V>, phi2: FuzzySet<V> },
    /// No `z` with `phi(z) = 1`, `phi(x) <= A(x,z)` and `phi(y) <= A(y,z)`.
    NoCommonBound { x: usize, y: usize },
}

/// Outcome of all three deciders on one fuzzy set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport<V> {
    pub lower: bool,
    pub inhabited: bool,
    pub flat: bool,
    pub irreducible: bool,
    pub forward_cauchy: bool,
    pub flat_witness: Option<Failure<V>>,
    pub irreducible_witness: Option<Failure<V>>,
    pub forward_cauchy_witness: Option<Failure<V>>,
}

/// A Q-ordered set together with its (lazily enumerated) lower and upper
/// sets, shared by repeated decider calls.
pub struct IdealContext<'a, Q: FiniteCarrier> {
    base: &'a QOrderedSet<Q>,
    budget: Budget,
    frame: bool,
    lowers: OnceLock<Result<Vec<FuzzySet<Q::Value>>>>,
    uppers: OnceLock<Result<Vec<FuzzySet<Q::Value>>>>,
}

impl<'a, Q: FiniteCarrier> IdealContext<'a, Q> {
    pub fn new(base: &'a QOrderedSet<Q>, budget: Budget) -> Self {
        let q = base.quantale();
        let frame = q
            .values()
            .all(|p| q.values().all(|r| q.equiv(q.tensor(p, r), q.meet(p, r))));
        IdealContext {
            base,
            budget,
            frame,
            lowers: OnceLock::new(),
            uppers: OnceLock::new(),
        }
    }

    pub fn base(&self) -> &'a QOrderedSet<Q> {
        self.base
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn lowers(&self) -> Result<&[FuzzySet<Q::Value>]> {
        self.lowers
            .get_or_init(|| fuzzy::enumerate_monotone(self.base, Kind::Lower, &self.budget))
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn uppers(&self) -> Result<&[FuzzySet<Q::Value>]> {
        self.uppers
            .get_or_init(|| fuzzy::enumerate_monotone(self.base, Kind::Upper, &self.budget))
            .as_deref()
            .map_err(Clone::clone)
    }

    fn q(&self) -> &Q {
        self.base.quantale()
    }

    fn check(&self, phi: &FuzzySet<Q::Value>) -> Result<Option<Failure<Q::Value>>> {
        if phi.len() != self.base.len() {
            return Err(Error::BaseMismatch {
                expected: self.base.len(),
                found: phi.len(),
            });
        }
        if let Some((x, y)) = fuzzy::lower_witness(self.base, phi) {
            return Ok(Some(Failure::NotLower { x, y }));
        }
        if !fuzzy::is_inhabited(self.q(), phi) {
            return Ok(Some(Failure::NotInhabited));
        }
        Ok(None)
    }

    /// `None` when `phi` is a flat ideal, otherwise the first failure.
    pub fn flat_failure(&self, phi: &FuzzySet<Q::Value>) -> Result<Option<Failure<Q::Value>>> {
        if let Some(f) = self.check(phi)? {
            return Ok(Some(f));
        }
        if self.frame {
            let shortcut = self.frame_shortcut(phi);
            if shortcut {
                debug_assert!(self.flat_brute_force(phi)?.is_none());
                return Ok(None);
            }
            let witness = self.flat_brute_force(phi)?;
            debug_assert!(witness.is_some());
            return Ok(witness);
        }
        self.flat_brute_force(phi)
    }

    /// `phi(x) ^ phi(y) <= join_z phi(z) ^ A(x,z) ^ A(y,z)`, the flatness
    /// criterion when `& = ^`.
    pub fn frame_shortcut(&self, phi: &FuzzySet<Q::Value>) -> bool {
        let (a, q) = (self.base, self.q());
        let n = a.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let rhs = q.join_all(
                    (0..n).map(|z| q.meet(q.meet(phi.at(z), a.hom(x, z)), a.hom(y, z))),
                );
                q.leq(q.meet(phi.at(x), phi.at(y)), rhs)
            })
        })
    }

    fn flat_brute_force(&self, phi: &FuzzySet<Q::Value>) -> Result<Option<Failure<Q::Value>>> {
        let uppers = self.uppers()?;
        let u = uppers.len() as u128;
        self.budget
            .charge_pairs("flatness check", u * (u + 1) / 2 * self.base.len() as u128)?;
        let q = self.q();
        let degrees: Vec<Q::Value> = uppers.iter().map(|psi| fuzzy::tensor(q, phi, psi)).collect();
        Ok(exec::find_map_first(uppers.len(), |i| {
            (i..uppers.len()).find_map(|j| {
                let both = fuzzy::meet(q, &uppers[i], &uppers[j]);
                let lhs = fuzzy::tensor(q, phi, &both);
                (!q.equiv(lhs, q.meet(degrees[i], degrees[j]))).then(|| Failure::UpperPair {
                    psi1: uppers[i].clone(),
                    psi2: uppers[j].clone(),
                })
            })
        }))
    }

    /// `None` when `phi` is an irreducible ideal, otherwise the first
    /// failure.
    pub fn irreducible_failure(&self, phi: &FuzzySet<Q::Value>) -> Result<Option<Failure<Q::Value>>> {
        if let Some(f) = self.check(phi)? {
            return Ok(Some(f));
        }
        let lowers = self.lowers()?;
        let l = lowers.len() as u128;
        self.budget
            .charge_pairs("irreducibility check", l * (l + 1) / 2 * self.base.len() as u128)?;
        let q = self.q();
        let degrees: Vec<Q::Value> = lowers.iter().map(|l| fuzzy::sub(q, phi, l)).collect();
        Ok(exec::find_map_first(lowers.len(), |i| {
            (i..lowers.len()).find_map(|j| {
                let either = fuzzy::join(q, &lowers[i], &lowers[j]);
                let lhs = fuzzy::sub(q, phi, &either);
                (!q.equiv(lhs, q.join(degrees[i], degrees[j]))).then(|| Failure::LowerPair {
                    phi1: lowers[i].clone(),
                    phi2: lowers[j].clone(),
                })
            })
        }))
    }

    /// `None` when `phi` is a forward Cauchy ideal. On a finite quantale the
    /// way-below relation is the order, so it suffices that every pair
    /// `x, y` has a common `z` with `phi(z) = 1`, `phi(x) <= A(x,z)` and
    /// `phi(y) <= A(y,z)`.
    pub fn forward_cauchy_failure(&self, phi: &FuzzySet<Q::Value>) -> Result<Option<Failure<Q::Value>>> {
        if let Some(f) = self.check(phi)? {
            return Ok(Some(f));
        }
        let (a, q) = (self.base, self.q());
        let n = a.len();
        let tops: Vec<usize> = (0..n).filter(|&z| q.is_top(phi.at(z))).collect();
        let bounded = |x: usize, z: usize| q.leq(phi.at(x), a.hom(x, z));
        Ok((0..n)
            .flat_map(|x| (x..n).map(move |y| (x, y)))
            .find(|&(x, y)| !tops.iter().any(|&z| bounded(x, z) && bounded(y, z)))
            .map(|(x, y)| Failure::NoCommonBound { x, y }))
    }

    pub fn failure(
        &self,
        class: IdealClass,
        phi: &FuzzySet<Q::Value>,
    ) -> Result<Option<Failure<Q::Value>>> {
        match class {
            IdealClass::ForwardCauchy => self.forward_cauchy_failure(phi),
            IdealClass::Flat => self.flat_failure(phi),
            IdealClass::Irreducible => self.irreducible_failure(phi),
            IdealClass::AllLower => Ok(fuzzy::lower_witness(self.base, phi)
                .map(|(x, y)| Failure::NotLower { x, y })),
        }
    }

    pub fn is_member(&self, class: IdealClass, phi: &FuzzySet<Q::Value>) -> Result<bool> {
        Ok(self.failure(class, phi)?.is_none())
    }

    pub fn classify(&self, phi: &FuzzySet<Q::Value>) -> Result<IdealReport<Q::Value>> {
        let pre = self.check(phi)?;
        let flat = self.flat_failure(phi)?;
        let irr = self.irreducible_failure(phi)?;
        let fc = self.forward_cauchy_failure(phi)?;
        Ok(IdealReport {
            lower: !matches!(pre, Some(Failure::NotLower { .. })),
            inhabited: fuzzy::is_inhabited(self.q(), phi),
            flat: flat.is_none(),
            irreducible: irr.is_none(),
            forward_cauchy: fc.is_none(),
            flat_witness: flat,
            irreducible_witness: irr,
            forward_cauchy_witness: fc,
        })
    }

    /// The members of `class` among all lower sets, in enumeration order.
    pub fn ideals(&self, class: IdealClass) -> Result<Vec<FuzzySet<Q::Value>>> {
        let lowers = self.lowers()?;
        if class == IdealClass::AllLower {
            return Ok(lowers.to_vec());
        }
        // warm the caches before fanning out
        match class {
            IdealClass::Flat => {
                self.uppers()?;
            }
            IdealClass::Irreducible => {
                self.lowers()?;
            }
            _ => {}
        }
        let verdicts = exec::map_range(lowers.len(), |i| self.is_member(class, &lowers[i]));
        let mut out = Vec::new();
        for (phi, v) in lowers.iter().zip(verdicts) {
            if v? {
                out.push(phi.clone());
            }
        }
        Ok(out)
    }
}

/// Convenience wrapper: the class members among all lower sets of `a`.
pub fn enumerate_ideals<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    class: IdealClass,
    budget: &Budget,
) -> Result<Vec<FuzzySet<Q::Value>>> {
    IdealContext::new(a, *budget).ideals(class)
}

pub fn classify_ideal<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    phi: &FuzzySet<Q::Value>,
    budget: &Budget,
) -> Result<IdealReport<Q::Value>> {
    IdealContext::new(a, *budget).classify(phi)
}

/// The sequence `prefix . cycle . cycle . ...` of carrier indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EventuallyPeriodicSequence {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl EventuallyPeriodicSequence {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Precondition("cycle must be nonempty".into()));
        }
        Ok(EventuallyPeriodicSequence { prefix, cycle })
    }

    pub fn constant(x: usize) -> Self {
        EventuallyPeriodicSequence {
            prefix: Vec::new(),
            cycle: vec![x],
        }
    }

    pub fn at(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }
}

/// `join_i meet_{j >= i} A(-, x_j)`. Every tail past the prefix visits every
/// ordered pair of cycle positions, so the sequence is forward Cauchy iff
/// `A(c_p, c_q) = 1` for all cycle entries, and the generated set is the
/// meet of `A(-, c)` over the cycle.
pub fn ideal_from_sequence<Q: Quantale>(
    a: &QOrderedSet<Q>,
    s: &EventuallyPeriodicSequence,
) -> Result<FuzzySet<Q::Value>> {
    let n = a.len();
    if let Some(&bad) = s.prefix.iter().chain(&s.cycle).find(|&&x| x >= n) {
        return Err(Error::ShapeMismatch {
            expected: n,
            found: bad,
        });
    }
    let q = a.quantale();
    let m = s.cycle.len();
    for p in 0..m {
        for r in 0..m {
            if !q.is_top(a.hom(s.cycle[p], s.cycle[r])) {
                let j = s.prefix.len() + p;
                let k = s.prefix.len() + r + if r <= p { m } else { 0 };
                return Err(Error::NotForwardCauchy { j, k });
            }
        }
    }
    Ok(FuzzySet::new(
        (0..n)
            .map(|x| q.meet_all(s.cycle.iter().map(|&c| a.hom(x, c))))
            .collect(),
    ))
}

/// The distinct ideals generated by forward Cauchy sequences whose cycle has
/// length at most `max_cycle` (the prefix never affects the result).
pub fn sequence_generated_ideals<Q: Quantale>(
    a: &QOrderedSet<Q>,
    max_cycle: usize,
) -> Vec<FuzzySet<Q::Value>> {
    let mut out: Vec<FuzzySet<Q::Value>> = Vec::new();
    for len in 1..=max_cycle {
        for cycle in odometer(a.len(), len) {
            let s = EventuallyPeriodicSequence {
                prefix: Vec::new(),
                cycle,
            };
            if let Ok(phi) = ideal_from_sequence(a, &s) {
                if !out.contains(&phi) {
                    out.push(phi);
                }
            }
        }
    }
    out
}
