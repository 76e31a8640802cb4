//! Scott Q-topologies and Q-cotopologies generated by an ideal class.
//!
//! An upper set `psi` is open when `psi(s) = phi (x) psi` for every class
//! ideal `phi` and every supremum `s` of `phi`; a lower set `lambda` is
//! closed when `sub(phi, lambda) = lambda(s)` likewise.

mod interval;

pub use interval::{
    cauchy_degree, check_family, left_limit_residuum, scott_closed_on_interval, sequence_generated,
    verify_ordinal_sum_generation, ClosedCheck, FamilyKind, FamilyReport, GenerationReport, Generator,
    SampledFunction, DEFAULT_PROBES,
};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Budget, Error, Result};
use crate::exec;
use crate::fuzzy::{self, FuzzySet, Kind};
use crate::ideal::{IdealClass, IdealContext};
use crate::qorder::{QMap, QOrderedSet};
use crate::quantale::FiniteCarrier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Topology,
    Cotopology,
}

impl Mode {
    fn kind(self) -> Kind {
        match self {
            Mode::Topology => Kind::Upper,
            Mode::Cotopology => Kind::Lower,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Topology => "top",
            Mode::Cotopology => "cotop",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "top" | "topology" | "open" => Ok(Mode::Topology),
            "cotop" | "cotopology" | "closed" => Ok(Mode::Cotopology),
            other => Err(Error::Format(format!("unknown mode `{other}`"))),
        }
    }
}

/// Why a fuzzy set is not a member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ScottFailure {
    /// The set is not upper (topology) or not lower (cotopology) at `(x, y)`.
    WrongKind { x: usize, y: usize },
    /// The defining equation fails for the `ideal`-th class ideal (in
    /// enumeration order) at its supremum `sup`.
    Ideal { ideal: usize, sup: usize },
}

/// The class ideals of a base that have suprema, with all their suprema.
pub struct ScottContext<'a, Q: FiniteCarrier> {
    base: &'a QOrderedSet<Q>,
    class: IdealClass,
    ideals: Vec<FuzzySet<Q::Value>>,
    sups: Vec<Vec<usize>>,
    budget: Budget,
}

impl<'a, Q: FiniteCarrier> ScottContext<'a, Q> {
    pub fn new(base: &'a QOrderedSet<Q>, class: IdealClass, budget: &Budget) -> Result<Self> {
        let ideals = IdealContext::new(base, *budget).ideals(class)?;
        let sups = exec::map_range(ideals.len(), |i| fuzzy::suprema_unchecked(base, &ideals[i]));
        Ok(ScottContext {
            base,
            class,
            ideals,
            sups,
            budget: *budget,
        })
    }

    pub fn base(&self) -> &'a QOrderedSet<Q> {
        self.base
    }

    pub fn ideals(&self) -> &[FuzzySet<Q::Value>] {
        &self.ideals
    }

    /// Suprema of the `i`-th class ideal (empty when it has none).
    pub fn suprema(&self, i: usize) -> &[usize] {
        &self.sups[i]
    }

    pub fn failure(&self, set: &FuzzySet<Q::Value>, mode: Mode) -> Option<ScottFailure> {
        let (a, q) = (self.base, self.base.quantale());
        let wrong = match mode {
            Mode::Topology => fuzzy::upper_witness(a, set),
            Mode::Cotopology => fuzzy::lower_witness(a, set),
        };
        if let Some((x, y)) = wrong {
            return Some(ScottFailure::WrongKind { x, y });
        }
        self.equation_failure(q, set, mode)
    }

    fn equation_failure(&self, q: &Q, set: &FuzzySet<Q::Value>, mode: Mode) -> Option<ScottFailure> {
        for (i, phi) in self.ideals.iter().enumerate() {
            if self.sups[i].is_empty() {
                continue;
            }
            let degree = match mode {
                Mode::Topology => fuzzy::tensor(q, phi, set),
                Mode::Cotopology => fuzzy::sub(q, phi, set),
            };
            if let Some(&s) = self.sups[i].iter().find(|&&s| !q.equiv(set.at(s), degree)) {
                return Some(ScottFailure::Ideal { ideal: i, sup: s });
            }
        }
        None
    }

    pub fn is_member(&self, set: &FuzzySet<Q::Value>, mode: Mode) -> bool {
        self.failure(set, mode).is_none()
    }

    /// All members, in enumeration order of the upper (lower) sets.
    pub fn members(&self, mode: Mode) -> Result<Vec<FuzzySet<Q::Value>>> {
        let candidates = fuzzy::enumerate_monotone(self.base, mode.kind(), &self.budget)?;
        let q = self.base.quantale();
        Ok(exec::filter_map(&candidates, |c| {
            self.equation_failure(q, c, mode).is_none().then(|| c.clone())
        }))
    }

    pub fn structure(&self, mode: Mode) -> Result<ScottStructure<Q::Value>> {
        let members = self.members(mode)?;
        let axioms = check_structure_axioms(self.base.quantale(), self.base.len(), &members, mode);
        Ok(ScottStructure {
            mode,
            class: self.class,
            members,
            axioms,
        })
    }
}

pub fn is_scott_member<Q: FiniteCarrier>(
    set: &FuzzySet<Q::Value>,
    a: &QOrderedSet<Q>,
    class: IdealClass,
    mode: Mode,
    budget: &Budget,
) -> Result<Option<ScottFailure>> {
    if set.len() != a.len() {
        return Err(Error::BaseMismatch {
            expected: a.len(),
            found: set.len(),
        });
    }
    Ok(ScottContext::new(a, class, budget)?.failure(set, mode))
}

pub fn generate_scott_structure<Q: FiniteCarrier>(
    a: &QOrderedSet<Q>,
    class: IdealClass,
    mode: Mode,
    budget: &Budget,
) -> Result<ScottStructure<Q::Value>> {
    ScottContext::new(a, class, budget)?.structure(mode)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScottStructure<V> {
    pub mode: Mode,
    pub class: IdealClass,
    pub members: Vec<FuzzySet<V>>,
    pub axioms: AxiomFlags,
}

/// Axioms 1-5 of a Q-topology (or cotopology). For a topology: constants,
/// binary meets, arbitrary joins, `p & -`, `p -> -`. For a cotopology:
/// constants, binary joins, arbitrary meets, `p -> -`, `p & -`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFlags {
    pub holds: [bool; 5],
    /// A description of the first missing set for each failing axiom.
    pub witnesses: [Option<String>; 5],
}

impl AxiomFlags {
    /// Axioms 1-4: a stratified (co)topology.
    pub fn stratified(&self) -> bool {
        self.holds[..4].iter().all(|&h| h)
    }

    pub fn strong(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }

    pub fn co_stratified(&self) -> bool {
        self.holds[..3].iter().all(|&h| h) && self.holds[4]
    }
}

/// Checks the five closure axioms over `members`. Arbitrary joins (meets)
/// are covered by the binary ones plus the join (meet) of all members,
/// which suffices for a finite family; the empty join is a constant.
pub fn check_structure_axioms<Q: FiniteCarrier>(
    q: &Q,
    len: usize,
    members: &[FuzzySet<Q::Value>],
    mode: Mode,
) -> AxiomFlags {
    let key = |s: &FuzzySet<Q::Value>| -> Vec<usize> { s.values.iter().map(|&v| q.index_of(v)).collect() };
    let set: HashSet<Vec<usize>> = members.iter().map(key).collect();
    let contains = |s: &FuzzySet<Q::Value>| set.contains(&key(s));
    let values: Vec<Q::Value> = q.values().collect();
    let (binary, unbounded): (fn(&Q, Q::Value, Q::Value) -> Q::Value, fn(&Q, Q::Value, Q::Value) -> Q::Value) =
        match mode {
            Mode::Topology => (|q, a, b| q.meet(a, b), |q, a, b| q.join(a, b)),
            Mode::Cotopology => (|q, a, b| q.join(a, b), |q, a, b| q.meet(a, b)),
        };
    let tensor_action = |p: Q::Value, s: &FuzzySet<Q::Value>| fuzzy::tensor_const(q, p, s);
    let residuum_action = |p: Q::Value, s: &FuzzySet<Q::Value>| fuzzy::residuate_from(q, p, s);

    let mut witnesses: [Option<String>; 5] = Default::default();
    witnesses[0] = values
        .iter()
        .map(|&p| FuzzySet::constant(p, len))
        .find(|c| !contains(c))
        .map(|c| format!("constant {}", fuzzy::format(q, &c)));
    let pair = |op: fn(&Q, Q::Value, Q::Value) -> Q::Value| {
        exec::find_map_first(members.len(), |i| {
            members[i..].iter().find_map(|m| {
                let r = members[i].zip(m, |a, b| op(q, a, b));
                (!contains(&r)).then(|| fuzzy::format(q, &r))
            })
        })
    };
    witnesses[1] = pair(binary);
    witnesses[2] = pair(unbounded).or_else(|| {
        let init = match mode {
            Mode::Topology => q.bottom(),
            Mode::Cotopology => q.top(),
        };
        let all = members
            .iter()
            .fold(FuzzySet::constant(init, len), |acc, m| acc.zip(m, |a, b| unbounded(q, a, b)));
        (!contains(&all)).then(|| fuzzy::format(q, &all))
    });
    let action = |f: &(dyn Fn(Q::Value, &FuzzySet<Q::Value>) -> FuzzySet<Q::Value> + Sync)| {
        members.iter().find_map(|m| {
            values.iter().find_map(|&p| {
                let r = f(p, m);
                (!contains(&r)).then(|| format!("{} from {}", fuzzy::format(q, &r), q.format(p)))
            })
        })
    };
    let (fourth, fifth) = match mode {
        Mode::Topology => (action(&tensor_action), action(&residuum_action)),
        Mode::Cotopology => (action(&residuum_action), action(&tensor_action)),
    };
    witnesses[3] = fourth;
    witnesses[4] = fifth;
    AxiomFlags {
        holds: std::array::from_fn(|i| witnesses[i].is_none()),
        witnesses,
    }
}

/// First member of `topology` whose negation is not in `cotopology`, or
/// vice versa.
pub fn negation_duality_witness<Q: FiniteCarrier>(
    q: &Q,
    topology: &[FuzzySet<Q::Value>],
    cotopology: &[FuzzySet<Q::Value>],
) -> Option<String> {
    let key = |s: &FuzzySet<Q::Value>| -> Vec<usize> { s.values.iter().map(|&v| q.index_of(v)).collect() };
    let opens: HashSet<Vec<usize>> = topology.iter().map(key).collect();
    let closeds: HashSet<Vec<usize>> = cotopology.iter().map(key).collect();
    if let Some(s) = topology.iter().find(|s| !closeds.contains(&key(&fuzzy::negate(q, s)))) {
        return Some(format!("open {} has a non-closed negation", fuzzy::format(q, s)));
    }
    cotopology
        .iter()
        .find(|s| !opens.contains(&key(&fuzzy::negate(q, s))))
        .map(|s| format!("closed {} has a non-open negation", fuzzy::format(q, s)))
}

/// Outcome of the cocontinuity checks for one map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocontinuityReport {
    pub cocontinuous: bool,
    pub closed_preimage: bool,
    pub agree: bool,
    /// `(x1, x2)` breaking order preservation.
    pub order_witness: Option<(usize, usize)>,
    /// A class ideal (index in the source enumeration) whose supremum is
    /// not sent to a supremum of its image.
    pub sup_witness: Option<usize>,
    /// A closed set of the target (index in its member list) whose preimage
    /// is not closed.
    pub preimage_witness: Option<usize>,
}

/// Precomputed data for testing many maps `A -> B` against one class.
pub struct CocontinuityChecker<'a, Q: FiniteCarrier> {
    source: ScottContext<'a, Q>,
    target: &'a QOrderedSet<Q>,
    closed: Vec<FuzzySet<Q::Value>>,
    open: Vec<FuzzySet<Q::Value>>,
}

impl<'a, Q: FiniteCarrier> CocontinuityChecker<'a, Q> {
    pub fn new(
        source: &'a QOrderedSet<Q>,
        target: &'a QOrderedSet<Q>,
        class: IdealClass,
        budget: &Budget,
    ) -> Result<Self> {
        if !source.same_quantale(target) {
            return Err(Error::QuantaleMismatch);
        }
        let target_ctx = ScottContext::new(target, class, budget)?;
        let closed = target_ctx.members(Mode::Cotopology)?;
        let open = target_ctx.members(Mode::Topology)?;
        Ok(CocontinuityChecker {
            source: ScottContext::new(source, class, budget)?,
            target,
            closed,
            open,
        })
    }

    /// Order preserving, and every supremum of a class ideal is sent to a
    /// supremum of its forward image.
    fn cocontinuity(&self, f: &QMap<'_, Q>) -> (Option<(usize, usize)>, Option<usize>) {
        if let Some(w) = f.order_witness() {
            return (Some(w), None);
        }
        let q = self.target.quantale();
        let sup_witness = self.source.ideals().iter().enumerate().find_map(|(i, phi)| {
            let sups = self.source.suprema(i);
            if sups.is_empty() {
                return None;
            }
            let image = fuzzy::forward(f, phi).expect("same base");
            let target: Vec<Q::Value> = (0..self.target.len())
                .map(|y| fuzzy::sub(q, &image, &fuzzy::yoneda(self.target, y)))
                .collect();
            let is_sup = |t: usize| (0..self.target.len()).all(|y| q.equiv(self.target.hom(t, y), target[y]));
            sups.iter().any(|&s| !is_sup(f.apply(s))).then_some(i)
        });
        (None, sup_witness)
    }

    pub fn check(&self, mapping: &[usize]) -> Result<CocontinuityReport> {
        let f = QMap::new(self.source.base(), self.target, mapping.to_vec())?;
        let (order_witness, sup_witness) = self.cocontinuity(&f);
        let cocontinuous = order_witness.is_none() && sup_witness.is_none();
        let preimage_witness = self.closed.iter().position(|lambda| {
            let pre = fuzzy::backward(&f, lambda).expect("same base");
            !self.source.is_member(&pre, Mode::Cotopology)
        });
        let closed_preimage = preimage_witness.is_none();
        Ok(CocontinuityReport {
            cocontinuous,
            closed_preimage,
            agree: cocontinuous == closed_preimage,
            order_witness,
            sup_witness,
            preimage_witness,
        })
    }

    /// For a cocontinuous map, the first open set of the target whose
    /// preimage is not open; `None` also when the map is not cocontinuous.
    pub fn open_preimage_failure(&self, mapping: &[usize]) -> Result<Option<usize>> {
        let f = QMap::new(self.source.base(), self.target, mapping.to_vec())?;
        let (o, s) = self.cocontinuity(&f);
        if o.is_some() || s.is_some() {
            return Ok(None);
        }
        Ok(self.open.iter().position(|psi| {
            let pre = fuzzy::backward(&f, psi).expect("same base");
            !self.source.is_member(&pre, Mode::Topology)
        }))
    }

    pub fn closed_sets(&self) -> &[FuzzySet<Q::Value>] {
        &self.closed
    }
}

/// Runs [`CocontinuityChecker::check`] on a single map.
pub fn cocontinuity_equivalence<Q: FiniteCarrier>(
    f: &QMap<'_, Q>,
    class: IdealClass,
    budget: &Budget,
) -> Result<CocontinuityReport> {
    CocontinuityChecker::new(f.source, f.target, class, budget)?.check(&f.mapping)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{boolean4, godel_chain, lukasiewicz_chain, FiniteQuantale, Quantale};
    use std::sync::Arc;

    fn crisp_chain() -> QOrderedSet<FiniteQuantale> {
        let q = Arc::new(godel_chain(2).unwrap());
        let (t, f) = (q.top(), q.bottom());
        QOrderedSet::new(q, vec!["x".into(), "y".into()], vec![vec![t, t], vec![f, t]]).unwrap()
    }

    #[test]
    fn classical_scott_topology_of_two_chain() {
        let a = crisp_chain();
        let q = a.quantale();
        let (t, f) = (q.top(), q.bottom());
        let s = generate_scott_structure(&a, IdealClass::Flat, Mode::Topology, &Budget::default()).unwrap();
        assert_eq!(
            s.members,
            vec![
                FuzzySet::new(vec![f, f]),
                FuzzySet::new(vec![f, t]),
                FuzzySet::new(vec![t, t])
            ]
        );
        assert!(s.axioms.strong());
    }

    #[test]
    fn constants_are_members() {
        let q = Arc::new(lukasiewicz_chain(3).unwrap());
        let a = QOrderedSet::d_left(q.clone());
        let ctx = ScottContext::new(&a, IdealClass::Flat, &Budget::default()).unwrap();
        for p in q.elements() {
            let c = FuzzySet::constant(p, 3);
            assert!(ctx.is_member(&c, Mode::Topology));
            assert!(ctx.is_member(&c, Mode::Cotopology));
        }
    }

    #[test]
    fn identity_is_open_on_lukasiewicz_four() {
        let q = Arc::new(lukasiewicz_chain(4).unwrap());
        let a = QOrderedSet::d_left(q.clone());
        let id = FuzzySet::new(q.elements().collect());
        let w = is_scott_member(&id, &a, IdealClass::Flat, Mode::Topology, &Budget::default()).unwrap();
        assert_eq!(w, None);
    }

    #[test]
    fn boolean4_duality() {
        let q = Arc::new(boolean4());
        let a = QOrderedSet::discrete(q.clone(), 2).unwrap();
        let ctx = ScottContext::new(&a, IdealClass::Irreducible, &Budget::default()).unwrap();
        let top = ctx.members(Mode::Topology).unwrap();
        let cotop = ctx.members(Mode::Cotopology).unwrap();
        assert_eq!(negation_duality_witness(&*q, &top, &cotop), None);
    }

    #[test]
    fn identity_map_is_cocontinuous() {
        let q = Arc::new(lukasiewicz_chain(3).unwrap());
        let a = QOrderedSet::d_left(q);
        let r = cocontinuity_equivalence(&QMap::identity(&a), IdealClass::Irreducible, &Budget::default())
            .unwrap();
        assert!(r.cocontinuous && r.closed_preimage && r.agree);
    }
}
