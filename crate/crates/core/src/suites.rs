//! Named checks over generated desk-scale instances, as run by
//! `qideal check`. Every suite is deterministic for a fixed seed.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Budget, Error, Result};
use crate::fuzzy::{self, FuzzySet, Kind};
use crate::ideal::{classify_ideal, IdealClass, IdealContext};
use crate::io::{self, failure_json, FiniteOrder};
use crate::qorder::{QMap, QOrderedSet};
use crate::quantale::laws;
use crate::quantale::{
    boolean4, godel_chain, lukasiewicz_chain, nilpotent_minimum_chain, product_chain, Elem, FiniteQuantale,
    FiniteCarrier, IntervalQuantale, Quantale, TNorm,
};
use crate::random;
use crate::scott::{
    check_family, negation_duality_witness, scott_closed_on_interval, verify_ordinal_sum_generation,
    CocontinuityChecker, FamilyKind, Mode, SampledFunction, ScottContext,
};

pub type Params = BTreeMap<String, String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A claim outside the proven statements did not hold.
    Finding,
    Budget,
}

/// A JSON file that reproduces a violation when fed back to a decider.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub file: String,
    pub description: String,
    pub content: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub params: Params,
    pub seed: u64,
    pub instances: Vec<String>,
    pub verdict: Verdict,
    pub summary: String,
    pub details: Value,
    pub witnesses: Vec<Witness>,
    pub elapsed_ms: f64,
}

impl SuiteResult {
    /// The report without its timing, for determinism checks.
    pub fn stable_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("elapsed_ms");
        v
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    pub budget: Budget,
    pub tolerance: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 42,
            budget: Budget::default(),
            tolerance: 1e-9,
        }
    }
}

pub const SUITES: &[&str] = &[
    "QUANTALE_LAWS",
    "LOWER_UPPER_IDENTITIES",
    "FC_SUBSET_IRR",
    "FC_SUBSET_FLAT",
    "IRR_SUBSET_FLAT_PRELINEAR",
    "FLAT_EQ_IRR_DOUBLENEG",
    "LINEAR_IRR_EQ_FC",
    "BOOLEAN4_COUNTEREXAMPLE",
    "GODEL_FLAT_NOT_IRR",
    "INTERVAL_FC_FAMILIES",
    "SATURATION_FC",
    "SATURATION_FLAT",
    "SATURATION_IRR",
    "FREE_COMPLETION",
    "SCOTT_AXIOMS",
    "COCONTINUITY_EQUIV",
    "INTERVAL_CLOSED",
    "ORDINAL_SUM_GENERATION",
    "CLASSICAL_DEGENERATION",
    "NEGATION_DUALITY",
];

struct Outcome {
    instances: Vec<String>,
    verdict: Verdict,
    summary: String,
    details: Value,
    witnesses: Vec<Witness>,
}

impl Outcome {
    fn new(instances: Vec<String>) -> Self {
        Outcome {
            instances,
            verdict: Verdict::Pass,
            summary: String::new(),
            details: Value::Null,
            witnesses: Vec::new(),
        }
    }

    fn verdict_if(mut self, ok: bool, otherwise: Verdict, summary: String) -> Self {
        if !ok {
            self.verdict = otherwise;
        }
        self.summary = summary;
        self
    }
}

pub fn run_suite(name: &str, params: &Params, opts: &SuiteOptions) -> Result<SuiteResult> {
    let name = name.to_ascii_uppercase();
    if !SUITES.contains(&name.as_str()) {
        return Err(Error::UnknownSuite(name));
    }
    let start = Instant::now();
    let ctx = Ctx { params, opts };
    let outcome = match dispatch(&name, &ctx) {
        Ok(o) => o,
        Err(e @ (Error::BudgetExceeded { .. } | Error::PowerTooLarge { .. })) => {
            let mut o = Outcome::new(Vec::new());
            o.verdict = Verdict::Budget;
            o.summary = e.to_string();
            o
        }
        Err(e) => return Err(e),
    };
    let mut witnesses = outcome.witnesses;
    for (k, w) in witnesses.iter_mut().enumerate() {
        w.file = format!("{}-{k}.json", name.to_ascii_lowercase());
    }
    Ok(SuiteResult {
        suite: name,
        params: params.clone(),
        seed: opts.seed,
        instances: outcome.instances,
        verdict: outcome.verdict,
        summary: outcome.summary,
        details: outcome.details,
        witnesses,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn dispatch(name: &str, c: &Ctx) -> Result<Outcome> {
    use IdealClass::*;
    match name {
        "QUANTALE_LAWS" => quantale_laws(),
        "LOWER_UPPER_IDENTITIES" => lower_upper_identities(c),
        "FC_SUBSET_IRR" => inclusion(c, ForwardCauchy, Irreducible, false, |_| true, Verdict::Fail),
        "FC_SUBSET_FLAT" => inclusion(c, ForwardCauchy, Flat, false, |_| true, Verdict::Fail),
        "IRR_SUBSET_FLAT_PRELINEAR" => inclusion(c, Irreducible, Flat, false, |q| q.properties().is_prelinear, Verdict::Fail),
        "FLAT_EQ_IRR_DOUBLENEG" => {
            inclusion(c, Flat, Irreducible, true, |q| q.properties().has_double_negation, Verdict::Fail)
        }
        "LINEAR_IRR_EQ_FC" => inclusion(c, Irreducible, ForwardCauchy, true, FiniteQuantale::is_chain, Verdict::Finding),
        "BOOLEAN4_COUNTEREXAMPLE" => boolean4_counterexample(),
        "GODEL_FLAT_NOT_IRR" => godel_flat_not_irr(c),
        "INTERVAL_FC_FAMILIES" => interval_families(c),
        "SATURATION_FC" => saturation(c, ForwardCauchy),
        "SATURATION_FLAT" => saturation(c, Flat),
        "SATURATION_IRR" => saturation(c, Irreducible),
        "FREE_COMPLETION" => free_completion(c),
        "SCOTT_AXIOMS" => scott_axioms(c),
        "COCONTINUITY_EQUIV" => cocontinuity_sweep(c),
        "INTERVAL_CLOSED" => interval_closed(c),
        "ORDINAL_SUM_GENERATION" => interval_generation(c),
        "CLASSICAL_DEGENERATION" => classical_degeneration(c),
        "NEGATION_DUALITY" => negation_duality(c),
        _ => unreachable!("checked against SUITES"),
    }
}

struct Ctx<'a> {
    params: &'a Params,
    opts: &'a SuiteOptions,
}

impl Ctx<'_> {
    fn usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::Format(format!("parameter {key}={v} is not a count"))),
        }
    }

    fn str<'s>(&'s self, key: &str, default: &'s str) -> &'s str {
        self.params.get(key).map_or(default, String::as_str)
    }

    fn class(&self, default: IdealClass) -> Result<IdealClass> {
        self.params.get("class").map_or(Ok(default), |s| s.parse())
    }

    fn budget(&self) -> &Budget {
        &self.opts.budget
    }
}

/// A named desk instance.
pub struct Instance {
    pub name: String,
    pub order: FiniteOrder,
}

fn named(q: FiniteQuantale, name: &str) -> (String, Arc<FiniteQuantale>) {
    (name.to_string(), Arc::new(q))
}

fn crisp_chain(q: Arc<FiniteQuantale>) -> FiniteOrder {
    let (t, f) = (q.top(), q.bottom());
    QOrderedSet::new(q, vec!["x".into(), "y".into()], vec![vec![t, t], vec![f, t]]).expect("a chain")
}

/// Every 2-point Q-order over boolean4, the 3-element Lukasiewicz chain and
/// the 4-element Goedel chain, then `random` seeded 3-point instances.
pub fn inclusion_instances(seed: u64, random: usize, budget: &Budget) -> Result<Vec<Instance>> {
    let quantales = [
        named(boolean4(), "boolean4"),
        named(lukasiewicz_chain(3)?, "L3"),
        named(godel_chain(4)?, "G4"),
    ];
    let mut out = Vec::new();
    for (name, q) in &quantales {
        for (k, a) in random::all_qorders(Arc::clone(q), 2, budget)?.into_iter().enumerate() {
            out.push(Instance {
                name: format!("{name}/2pt#{k}"),
                order: a,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..random {
        let (name, q) = &quantales[rng.gen_range(0..quantales.len())];
        out.push(Instance {
            name: format!("{name}/rand3#{k}"),
            order: random::random_qorder(Arc::clone(q), 3, &mut rng)?,
        });
    }
    Ok(out)
}

/// 2-point discrete and 2-point chain bases over the 2- and 3-element
/// Lukasiewicz chains.
pub fn saturation_instances() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in [2, 3] {
        let q = Arc::new(lukasiewicz_chain(n)?);
        out.push(Instance {
            name: format!("L{n}/discrete2"),
            order: QOrderedSet::discrete(Arc::clone(&q), 2)?,
        });
        out.push(Instance {
            name: format!("L{n}/chain2"),
            order: crisp_chain(q),
        });
    }
    Ok(out)
}

fn names(instances: &[Instance]) -> Vec<String> {
    instances.iter().map(|i| i.name.clone()).collect()
}

fn set_witness(a: &FiniteOrder, phi: &FuzzySet<Elem>, description: String) -> Witness {
    Witness {
        file: String::new(),
        description,
        content: io::fuzzy_set_to_json(a, phi, io::qorder_to_json(a)),
    }
}

fn quantale_laws() -> Result<Outcome> {
    let mut finite = vec![("boolean4".to_string(), boolean4())];
    for n in 2..=6 {
        finite.push((format!("L{n}"), lukasiewicz_chain(n)?));
        finite.push((format!("G{n}"), godel_chain(n)?));
        finite.push((format!("NM{n}"), nilpotent_minimum_chain(n)?));
    }
    finite.push(("P2".into(), product_chain(2)?));
    let mut violations = Vec::new();
    let mut instances = Vec::new();
    for (name, q) in &finite {
        let sample: Vec<Elem> = q.elements().collect();
        let mut found = laws::basic_identities(q, &sample);
        found.extend(laws::adjunction(q, &sample));
        if q.properties().has_double_negation {
            found.extend(laws::double_negation_laws(q, &sample));
        }
        violations.extend(found.into_iter().map(|v| json!({"quantale": name, "law": v.law, "witness": v.witness})));
        instances.push(name.clone());
    }
    let grid = laws::dyadic_grid(8);
    for t in [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz, TNorm::NilpotentMinimum] {
        let q = IntervalQuantale::new(t.clone());
        let mut found = laws::basic_identities(&q, &grid);
        found.extend(laws::adjunction(&q, &grid));
        if matches!(t, TNorm::Lukasiewicz | TNorm::NilpotentMinimum) {
            found.extend(laws::double_negation_laws(&q, &grid));
        }
        let name = format!("interval/{} on 1/8 grid", t.name());
        violations.extend(found.into_iter().map(|v| json!({"quantale": name, "law": v.law, "witness": v.witness})));
        instances.push(name);
    }
    let ok = violations.is_empty();
    let summary = format!("{} violations over {} quantales", violations.len(), instances.len());
    let mut o = Outcome::new(instances).verdict_if(ok, Verdict::Fail, summary);
    o.details = json!({ "violations": violations });
    Ok(o)
}

/// Tensor/sub duality for all lower-upper and lower-lower pairs, and the
/// forward-image/preimage adjunction for all self-maps.
fn lower_upper_identities(c: &Ctx) -> Result<Outcome> {
    let budget = c.budget();
    let mut instances = Vec::new();
    for (name, q) in [named(lukasiewicz_chain(3)?, "L3"), named(boolean4(), "boolean4")] {
        for (k, a) in random::all_qorders(q, 2, budget)?.into_iter().enumerate() {
            instances.push(Instance {
                name: format!("{name}/2pt#{k}"),
                order: a,
            });
        }
    }
    let qs = [Arc::new(lukasiewicz_chain(3)?), Arc::new(boolean4())];
    let mut rng = ChaCha8Rng::seed_from_u64(c.opts.seed);
    for k in 0..c.usize("random", 100)? {
        let q = &qs[k % 2];
        let n = rng.gen_range(1..=3);
        instances.push(Instance {
            name: format!("{}/rand{n}#{k}", if k % 2 == 0 { "L3" } else { "boolean4" }),
            order: random::random_qorder(Arc::clone(q), n, &mut rng)?,
        });
    }
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for inst in &instances {
        let a = &inst.order;
        let q = a.quantale();
        let dn = q.properties().has_double_negation;
        let lowers = fuzzy::enumerate_monotone(a, Kind::Lower, budget)?;
        let uppers = fuzzy::enumerate_monotone(a, Kind::Upper, budget)?;
        let values: Vec<Elem> = q.elements().collect();
        let mut bad = |what: &str, sets: Vec<&FuzzySet<Elem>>| {
            let shown: Vec<String> = sets.iter().map(|s| fuzzy::format(q, s)).collect();
            violations.push(json!({"instance": inst.name, "identity": what, "sets": shown}));
        };
        for phi in &lowers {
            for psi in &uppers {
                let lhs = fuzzy::tensor(q, phi, psi);
                let rhs = q.meet_all(values.iter().map(|&p| {
                    q.residuate(fuzzy::sub(q, phi, &fuzzy::residuate_into(q, psi, p)), p)
                }));
                if lhs != rhs {
                    bad("tensor via sub", vec![phi, psi]);
                }
                if dn && lhs != q.neg(fuzzy::sub(q, phi, &fuzzy::negate(q, psi))) {
                    bad("tensor via sub, negation form", vec![phi, psi]);
                }
                checked += 1;
            }
            for phi2 in &lowers {
                let lhs = fuzzy::sub(q, phi, phi2);
                let rhs = q.meet_all(values.iter().map(|&p| {
                    q.residuate(fuzzy::tensor(q, phi, &fuzzy::residuate_into(q, phi2, p)), p)
                }));
                if lhs != rhs {
                    bad("sub via tensor", vec![phi, phi2]);
                }
                if dn && lhs != q.neg(fuzzy::tensor(q, phi, &fuzzy::negate(q, phi2))) {
                    bad("sub via tensor, negation form", vec![phi, phi2]);
                }
                checked += 1;
            }
        }
        for f in QMap::all_maps(a, a, budget)? {
            for phi in &lowers {
                let image = fuzzy::forward(&f, phi)?;
                for psi in &lowers {
                    let pre = fuzzy::backward(&f, psi)?;
                    if fuzzy::sub(q, &image, psi) != fuzzy::sub(q, phi, &pre) {
                        bad("forward image adjunction", vec![phi, psi]);
                    }
                    checked += 1;
                }
            }
        }
    }
    violations.truncate(20);
    let ok = violations.is_empty();
    let summary = format!("{checked} identity instances checked on {} bases", instances.len());
    let mut o = Outcome::new(names(&instances)).verdict_if(ok, Verdict::Fail, summary);
    o.details = json!({ "checked": checked, "violations": violations });
    Ok(o)
}

/// Every member of `sub` lies in `sup` (and conversely when `both_ways`) on
/// the inclusion instances whose quantale passes `filter`.
fn inclusion(
    c: &Ctx,
    sub: IdealClass,
    sup: IdealClass,
    both_ways: bool,
    filter: fn(&FiniteQuantale) -> bool,
    on_violation: Verdict,
) -> Result<Outcome> {
    let random = c.usize("random", 50)?;
    let instances: Vec<Instance> = inclusion_instances(c.opts.seed, random, c.budget())?
        .into_iter()
        .filter(|i| filter(i.order.quantale()))
        .collect();
    let mut witnesses = Vec::new();
    let mut counted = 0usize;
    for inst in &instances {
        let ctx = IdealContext::new(&inst.order, *c.budget());
        let small = ctx.ideals(sub)?;
        let large = ctx.ideals(sup)?;
        counted += small.len().max(large.len());
        let large_set: HashSet<&FuzzySet<Elem>> = large.iter().collect();
        let small_set: HashSet<&FuzzySet<Elem>> = small.iter().collect();
        for phi in small.iter().filter(|p| !large_set.contains(p)) {
            let why = ctx.failure(sup, phi)?.map(|f| failure_json(&inst.order, &f));
            witnesses.push(set_witness(
                &inst.order,
                phi,
                format!("{}: {} ideal that is not {} ({})", inst.name, sub, sup, json!(why)),
            ));
        }
        if both_ways {
            for phi in large.iter().filter(|p| !small_set.contains(p)) {
                let why = ctx.failure(sub, phi)?.map(|f| failure_json(&inst.order, &f));
                witnesses.push(set_witness(
                    &inst.order,
                    phi,
                    format!("{}: {} ideal that is not {} ({})", inst.name, sup, sub, json!(why)),
                ));
            }
        }
    }
    let relation = if both_ways { "=" } else { "<=" };
    let summary = format!(
        "{sub} {relation} {sup}: {} violations over {} instances ({counted} ideals)",
        witnesses.len(),
        instances.len()
    );
    let mut o = Outcome::new(names(&instances)).verdict_if(witnesses.is_empty(), on_violation, summary);
    o.details = json!({ "violations": witnesses.len(), "ideals": counted });
    witnesses.truncate(20);
    o.witnesses = witnesses;
    Ok(o)
}

fn boolean4_counterexample() -> Result<Outcome> {
    let q = Arc::new(boolean4());
    let a = QOrderedSet::discrete(Arc::clone(&q), 2)?;
    let phi = FuzzySet::new(vec![q.parse("a").expect("a"), q.parse("b").expect("b")]);
    let r = classify_ideal(&a, &phi, &Budget::default())?;
    let ok = r.inhabited && r.irreducible && r.flat && !r.forward_cauchy;
    let summary = format!(
        "(a,b): inhabited {} irreducible {} flat {} forward Cauchy {}",
        r.inhabited, r.irreducible, r.flat, r.forward_cauchy
    );
    let mut o = Outcome::new(vec!["boolean4/discrete2".into()]).verdict_if(ok, Verdict::Fail, summary);
    o.details = json!({
        "inhabited": r.inhabited,
        "irreducible": r.irreducible,
        "flat": r.flat,
        "forward_cauchy": r.forward_cauchy,
        "forward_cauchy_witness": r.forward_cauchy_witness.as_ref().map(|f| failure_json(&a, f)),
    });
    if !ok {
        o.witnesses.push(set_witness(&a, &phi, "the four-element counterexample".into()));
    }
    Ok(o)
}

fn godel_flat_not_irr(c: &Ctx) -> Result<Outcome> {
    let n = c.usize("n", 5)?;
    let q = Arc::new(godel_chain(n)?);
    let parse = |key: &str, default: &str| {
        let text = c.str(key, default);
        q.parse(text)
            .ok_or_else(|| Error::Format(format!("{key}={text} is not an element of the {n}-chain")))
    };
    let (b, lvl) = (parse("b", "1/2")?, parse("a", "1/4")?);
    let a = QOrderedSet::d_left(Arc::clone(&q));
    let phi = FuzzySet::new(q.elements().map(|x| q.join(b, q.residuate(x, lvl))).collect());
    let r = classify_ideal(&a, &phi, c.budget())?;
    let ok = r.lower && r.flat && !r.irreducible && !r.forward_cauchy;
    let summary = format!(
        "{} on (G{n}, d_L): flat {} irreducible {} forward Cauchy {}",
        fuzzy::format(&*q, &phi),
        r.flat,
        r.irreducible,
        r.forward_cauchy
    );
    let mut o = Outcome::new(vec![format!("G{n}/d_left")]).verdict_if(ok, Verdict::Fail, summary);
    o.details = json!({
        "phi": fuzzy::format(&*q, &phi),
        "flat": r.flat,
        "irreducible": r.irreducible,
        "forward_cauchy": r.forward_cauchy,
        "irreducible_witness": r.irreducible_witness.as_ref().map(|f| failure_json(&a, f)),
        "forward_cauchy_witness": r.forward_cauchy_witness.as_ref().map(|f| failure_json(&a, f)),
    });
    if !ok {
        o.witnesses.push(set_witness(&a, &phi, "expected flat and not irreducible".into()));
    }
    Ok(o)
}

fn tnorms(c: &Ctx, default: &str) -> Result<Vec<TNorm>> {
    c.str("tnorms", default)
        .split(',')
        .map(|s| TNorm::from_name(s.trim()).map_err(Error::from))
        .collect()
}

fn interval_families(c: &Ctx) -> Result<Outcome> {
    let m = c.usize("grid", 256)?;
    let terms = c.usize("terms", 48)?;
    let tol = c.opts.tolerance;
    let mut reports = Vec::new();
    let mut instances = Vec::new();
    let mut ok = true;
    for t in tnorms(c, "product,lukasiewicz")? {
        let q = IntervalQuantale::new(t.clone()).with_tolerance(tol);
        for a in [0.0, 0.25, 0.5, 1.0] {
            for kind in [FamilyKind::Principal, FamilyKind::LeftLimit] {
                if kind == FamilyKind::LeftLimit && a == 0.0 {
                    continue;
                }
                let r = check_family(&q, kind, a, m, terms)?;
                ok &= r.passes(tol);
                instances.push(format!("{}/{:?}/a={a}", t.name(), kind));
                reports.push(json!({"tnorm": t.name(), "report": r, "passes": r.passes(tol)}));
            }
        }
    }
    let summary = format!(
        "{} family members compared with their sequence-generated sets on the 1/{m} grid",
        reports.len()
    );
    let mut o = Outcome::new(instances).verdict_if(ok, Verdict::Fail, summary);
    o.details = json!({ "members": reports, "checked_on": "grid" });
    Ok(o)
}

fn saturation(c: &Ctx, class: IdealClass) -> Result<Outcome> {
    let instances = saturation_instances()?;
    let mut reports = Vec::new();
    let mut witnesses = Vec::new();
    for inst in &instances {
        let r = crate::completion::check_saturation(&inst.order, class, c.budget())?;
        if !r.saturated() {
            let space = crate::completion::ideal_space(&inst.order, class, c.budget())?;
            for (lambda, join) in r.violators.iter().take(5) {
                let q = inst.order.quantale();
                witnesses.push(set_witness(
                    &space.space,
                    lambda,
                    format!(
                        "{}: weighted join {} leaves the class",
                        inst.name,
                        fuzzy::format(q, join)
                    ),
                ));
            }
        }
        reports.push(json!({
            "instance": inst.name,
            "space_size": r.space_size,
            "second_space_size": r.second_space_size,
            "violators": r.violators.len(),
        }));
    }
    let summary = format!("{class} saturation on {} bases: {} violators", instances.len(), witnesses.len());
    let mut o = Outcome::new(names(&instances)).verdict_if(witnesses.is_empty(), Verdict::Fail, summary);
    o.details = json!({ "instances": reports });
    o.witnesses = witnesses;
    Ok(o)
}

fn free_completion(c: &Ctx) -> Result<Outcome> {
    let class = c.class(IdealClass::Flat)?;
    let instances = saturation_instances()?;
    let mut reports = Vec::new();
    let mut ok = true;
    for inst in &instances {
        let (r, matches) = crate::completion::check_free_completion(&inst.order, class, c.budget())?;
        let good = r.complete && r.continuous && matches;
        ok &= good;
        reports.push(json!({
            "instance": inst.name,
            "complete": r.complete,
            "continuous": r.continuous,
            "adjoint_is_yoneda_image": matches,
        }));
    }
    let summary = format!("{class} ideal spaces of {} bases: complete, continuous, adjoint = y->: {ok}", instances.len());
    let mut o = Outcome::new(names(&instances)).verdict_if(ok, Verdict::Fail, summary);
    o.details = json!({ "instances": reports });
    Ok(o)
}

fn scott_axioms(c: &Ctx) -> Result<Outcome> {
    let budget = c.budget();
    let random = c.usize("random", 50)?;
    let max_points = c.usize("max_points", 4)?;
    let instances = inclusion_instances(c.opts.seed, random, budget)?;
    let mut problems = Vec::new();
    for inst in &instances {
        let top = ScottContext::new(&inst.order, IdealClass::Flat, budget)?.structure(Mode::Topology)?;
        if !top.axioms.stratified() {
            problems.push(json!({"instance": inst.name, "mode": "top", "axioms": top.axioms}));
        }
        let cotop = ScottContext::new(&inst.order, IdealClass::Irreducible, budget)?.structure(Mode::Cotopology)?;
        if !cotop.axioms.stratified() {
            problems.push(json!({"instance": inst.name, "mode": "cotop", "axioms": cotop.axioms}));
        }
    }
    let b2 = Arc::new(godel_chain(2)?);
    let mut posets = 0;
    for n in 1..=max_points {
        for a in random::crisp_posets(Arc::clone(&b2), n) {
            posets += 1;
            let uppers = fuzzy::enumerate_monotone(&a, Kind::Upper, budget)?;
            let lowers = fuzzy::enumerate_monotone(&a, Kind::Lower, budget)?;
            for class in IdealClass::IDEALS {
                let ctx = ScottContext::new(&a, class, budget)?;
                if ctx.members(Mode::Topology)? != uppers || ctx.members(Mode::Cotopology)? != lowers {
                    problems.push(json!({"instance": format!("crisp poset {:?}", a.hom_rows()), "class": class}));
                }
            }
        }
    }
    // the strong-cotopology analogue on Lukasiewicz chains is exploratory
    let mut findings = Vec::new();
    let mut explored = Vec::new();
    for n in [3, 4] {
        let q = Arc::new(lukasiewicz_chain(n)?);
        let bases = [
            ("d_left", QOrderedSet::d_left(Arc::clone(&q))),
            ("d_right", QOrderedSet::d_right(Arc::clone(&q))),
            ("discrete2", QOrderedSet::discrete(Arc::clone(&q), 2)?),
        ];
        for (name, a) in &bases {
            for class in [IdealClass::Flat, IdealClass::Irreducible] {
                let s = ScottContext::new(a, class, budget)?.structure(Mode::Cotopology)?;
                explored.push(format!("L{n}/{name}/{class}"));
                if !s.axioms.strong() {
                    findings.push(json!({"instance": format!("L{n}/{name}"), "class": class, "axioms": s.axioms}));
                }
            }
        }
    }
    let mut o = Outcome::new(names(&instances));
    o.summary = format!(
        "{} instances and {posets} crisp posets: {} problems; strong cotopology on Lukasiewicz chains: {} of {} fail",
        instances.len(),
        problems.len(),
        findings.len(),
        explored.len()
    );
    o.verdict = if !problems.is_empty() {
        Verdict::Fail
    } else if !findings.is_empty() {
        Verdict::Finding
    } else {
        Verdict::Pass
    };
    problems.truncate(20);
    o.details = json!({
        "problems": problems,
        "crisp_posets": posets,
        "strong_cotopology_explored": explored,
        "strong_cotopology_findings": findings,
    });
    Ok(o)
}

/// The two 3-point bases of the sweep: `(L3, d_L)` and `(L3, d_R)`.
pub fn sweep_bases() -> Result<(FiniteOrder, FiniteOrder)> {
    let q = Arc::new(lukasiewicz_chain(3)?);
    Ok((QOrderedSet::d_left(Arc::clone(&q)), QOrderedSet::d_right(q)))
}

fn map_witness(source: &FiniteOrder, target: &FiniteOrder, mapping: &[usize], description: String) -> Witness {
    let m: serde_json::Map<String, Value> = mapping
        .iter()
        .enumerate()
        .map(|(x, &y)| (source.label(x).to_string(), json!(target.label(y))))
        .collect();
    Witness {
        file: String::new(),
        description,
        content: json!({
            "source": io::qorder_to_json(source),
            "target": io::qorder_to_json(target),
            "mapping": m,
        }),
    }
}

fn cocontinuity_sweep(c: &Ctx) -> Result<Outcome> {
    let budget = c.budget();
    let (a, b) = sweep_bases()?;
    let classes = match c.params.get("class") {
        Some(s) => vec![s.parse()?],
        None => IdealClass::IDEALS.to_vec(),
    };
    let maps = QMap::all_maps(&a, &b, budget)?;
    let mut per_class = Vec::new();
    let mut witnesses = Vec::new();
    for class in classes {
        let checker = CocontinuityChecker::new(&a, &b, class, budget)?;
        let (mut cocontinuous, mut disagreements, mut open_failures) = (0, 0, 0);
        for f in &maps {
            let r = checker.check(&f.mapping)?;
            cocontinuous += r.cocontinuous as usize;
            if !r.agree {
                disagreements += 1;
                witnesses.push(map_witness(&a, &b, &f.mapping, format!("{class}: {r:?}")));
            }
            // continuity of cocontinuous maps is claimed for subclasses of flat
            if class != IdealClass::Irreducible {
                if let Some(i) = checker.open_preimage_failure(&f.mapping)? {
                    open_failures += 1;
                    witnesses.push(map_witness(
                        &a,
                        &b,
                        &f.mapping,
                        format!("{class}: preimage of open set #{i} is not open"),
                    ));
                }
            }
        }
        per_class.push(json!({
            "class": class,
            "maps": maps.len(),
            "cocontinuous": cocontinuous,
            "disagreements": disagreements,
            "open_preimage_failures": open_failures,
            "closed_sets_of_target": checker.closed_sets().len(),
        }));
    }
    let ok = witnesses.is_empty();
    let summary = format!("{} maps (L3,d_L) -> (L3,d_R): {} disagreements or open-preimage failures", maps.len(), witnesses.len());
    let mut o = Outcome::new(vec!["L3/d_left -> L3/d_right".into()]).verdict_if(ok, Verdict::Fail, summary);
    o.details = json!({ "classes": per_class });
    witnesses.truncate(20);
    o.witnesses = witnesses;
    Ok(o)
}

fn interval_closed(c: &Ctx) -> Result<Outcome> {
    let m = c.usize("grid", 256)?;
    let q = IntervalQuantale::new(TNorm::Lukasiewicz).with_tolerance(c.opts.tolerance);
    let cases: [(&str, fn(f64) -> f64, bool); 3] = [
        ("identity", |x| x, true),
        ("min(1, x + 1/4)", |x| (x + 0.25).min(1.0), true),
        ("left-continuous step at 1/2", |x| if x <= 0.5 { 0.0 } else { 1.0 }, false),
    ];
    let mut ok = true;
    let mut reports = Vec::new();
    for (name, f, expected) in cases {
        let r = scott_closed_on_interval(&q, &SampledFunction::sample(f, m))?;
        ok &= r.closed() == expected;
        reports.push(json!({"function": name, "closed": r.closed(), "expected": expected, "check": r}));
    }
    let summary = format!("closedness on ([0,1], d_R) under lukasiewicz, 1/{m} grid: as expected {ok}");
    let mut o = Outcome::new(cases.iter().map(|c| c.0.to_string()).collect()).verdict_if(ok, Verdict::Fail, summary);
    o.details = json!({ "functions": reports, "checked_on": "grid" });
    Ok(o)
}

fn interval_generation(c: &Ctx) -> Result<Outcome> {
    let m = c.usize("grid", 256)?;
    let tol = c.opts.tolerance;
    let luk = IntervalQuantale::new(TNorm::Lukasiewicz).with_tolerance(tol);
    let min = IntervalQuantale::new(TNorm::Minimum).with_tolerance(tol);
    let cases: [(&str, &IntervalQuantale, fn(f64) -> f64); 4] = [
        ("lukasiewicz, min(1, x + 1/4)", &luk, |x| (x + 0.25).min(1.0)),
        ("lukasiewicz, identity", &luk, |x| x),
        ("min, identity", &min, |x| x),
        ("min, constant 1", &min, |_| 1.0),
    ];
    let mut ok = true;
    let mut reports = Vec::new();
    for (name, q, f) in cases {
        let pieces = q.tnorm().decomposition().expect("continuous");
        let r = verify_ordinal_sum_generation(q, &SampledFunction::sample(f, m), &pieces)?;
        ok &= r.within(tol) && r.generators_dominate;
        reports.push(json!({"case": name, "report": r}));
    }
    let summary = format!("infimum of the generating family on the 1/{m} grid within {tol}: {ok}");
    let mut o = Outcome::new(cases.iter().map(|c| c.0.to_string()).collect()).verdict_if(ok, Verdict::Fail, summary);
    o.details = json!({ "cases": reports, "checked_on": "grid" });
    Ok(o)
}

fn classical_degeneration(c: &Ctx) -> Result<Outcome> {
    let max_points = c.usize("max_points", 4)?;
    let b2 = Arc::new(godel_chain(2)?);
    let mut witnesses = Vec::new();
    let mut count = 0;
    for n in 1..=max_points {
        for a in random::crisp_posets(Arc::clone(&b2), n) {
            count += 1;
            // on a finite poset the directed lower sets are the principal ones
            let mut classical: Vec<FuzzySet<Elem>> = (0..n).map(|x| fuzzy::yoneda(&a, x)).collect();
            classical.sort();
            let ctx = IdealContext::new(&a, *c.budget());
            for class in IdealClass::IDEALS {
                let mut got = ctx.ideals(class)?;
                got.sort();
                if got != classical {
                    let extra = got.iter().chain(&classical).find(|p| !(got.contains(p) && classical.contains(p)));
                    if let Some(phi) = extra {
                        witnesses.push(set_witness(&a, phi, format!("{class} ideals differ from the classical ones")));
                    }
                }
            }
        }
    }
    let summary = format!("{count} crisp posets on at most {max_points} points: {} mismatches", witnesses.len());
    let mut o = Outcome::new(vec![format!("boolean2/posets<= {max_points}")]).verdict_if(witnesses.is_empty(), Verdict::Fail, summary);
    o.details = json!({ "posets": count });
    witnesses.truncate(20);
    o.witnesses = witnesses;
    Ok(o)
}

fn negation_duality(c: &Ctx) -> Result<Outcome> {
    let budget = c.budget();
    let mut quantales = vec![named(boolean4(), "boolean4")];
    for n in 2..=c.usize("max_n", 5)? {
        quantales.push(named(nilpotent_minimum_chain(n)?, &format!("NM{n}")));
    }
    let mut instances = Vec::new();
    for (name, q) in &quantales {
        if !q.properties().has_double_negation {
            return Err(Error::Precondition(format!("{name} lacks double negation")));
        }
        instances.push(Instance {
            name: format!("{name}/d_left"),
            order: QOrderedSet::d_left(Arc::clone(q)),
        });
        instances.push(Instance {
            name: format!("{name}/d_right"),
            order: QOrderedSet::d_right(Arc::clone(q)),
        });
        for (k, a) in random::all_qorders(Arc::clone(q), 2, budget)?.into_iter().enumerate() {
            instances.push(Instance {
                name: format!("{name}/2pt#{k}"),
                order: a,
            });
        }
    }
    let mut problems = Vec::new();
    let mut members = 0;
    for inst in &instances {
        for class in [IdealClass::Flat, IdealClass::Irreducible] {
            let ctx = ScottContext::new(&inst.order, class, budget)?;
            let top = ctx.members(Mode::Topology)?;
            let cotop = ctx.members(Mode::Cotopology)?;
            members += top.len() + cotop.len();
            let mismatch = top.len() != cotop.len();
            if let Some(w) = negation_duality_witness(inst.order.quantale(), &top, &cotop) {
                problems.push(json!({"instance": inst.name, "class": class, "witness": w}));
            } else if mismatch {
                problems.push(json!({"instance": inst.name, "class": class, "witness": "member counts differ"}));
            }
        }
    }
    let summary = format!("{} instances, {members} members: {} mismatches", instances.len(), problems.len());
    let mut o = Outcome::new(names(&instances)).verdict_if(problems.is_empty(), Verdict::Fail, summary);
    problems.truncate(20);
    o.details = json!({ "problems": problems });
    Ok(o)
}

/// What `search_counterexample` looks for: members of `member` outside
/// `outside`, over the instances described by the shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Shape {
    pub quantale: String,
    pub n: Option<u64>,
    pub points: usize,
    pub count: usize,
    pub member: IdealClass,
    pub outside: IdealClass,
}

impl std::str::FromStr for Shape {
    type Err = Error;

    /// `quantale=godel_chain,n=4,points=3,count=200,separate=flat/irr`
    fn from_str(s: &str) -> Result<Self> {
        let mut shape = Shape {
            quantale: "boolean4".into(),
            n: None,
            points: 2,
            count: 100,
            member: IdealClass::Flat,
            outside: IdealClass::Irreducible,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("shape entry `{part}` is not key=value")))?;
            let bad = || Error::Format(format!("bad shape value {k}={v}"));
            match k {
                "quantale" => shape.quantale = v.to_string(),
                "n" => shape.n = Some(v.parse().map_err(|_| bad())?),
                "points" => shape.points = v.parse().map_err(|_| bad())?,
                "count" => shape.count = v.parse().map_err(|_| bad())?,
                "separate" => {
                    let (a, b) = v.split_once('/').ok_or_else(bad)?;
                    shape.member = a.parse()?;
                    shape.outside = b.parse()?;
                }
                _ => return Err(Error::Format(format!("unknown shape key `{k}`"))),
            }
        }
        if shape.points == 0 {
            return Err(Error::EmptyCarrier);
        }
        Ok(shape)
    }
}

/// Exhaustive over all Q-orders of the shape when they fit in the budget's
/// pair allowance, otherwise `count` seeded random ones. Stops at the first
/// separating ideal, which is a finding.
pub fn search_counterexample(shape: &Shape, opts: &SuiteOptions) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut params = Params::new();
    params.insert("quantale".into(), shape.quantale.clone());
    if let Some(n) = shape.n {
        params.insert("n".into(), n.to_string());
    }
    params.insert("points".into(), shape.points.to_string());
    params.insert("separate".into(), format!("{}/{}", shape.member, shape.outside));
    let mut catalog = serde_json::Map::new();
    if let Some(n) = shape.n {
        catalog.insert("n".into(), json!(n));
    }
    let q = Arc::new(
        crate::quantale::standard_quantale(&shape.quantale, &catalog)?
            .into_finite()
            .ok_or_else(|| Error::Precondition("search needs a finite quantale".into()))?,
    );
    let size = q.size() as u128;
    let off = (shape.points * (shape.points - 1)) as u32;
    let exhaustive = size.checked_pow(off).is_some_and(|c| c <= 10_000);
    let (mode, candidates) = if exhaustive {
        ("exhaustive", random::all_qorders(Arc::clone(&q), shape.points, &opts.budget)?)
    } else {
        params.insert("count".into(), shape.count.to_string());
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let list = (0..shape.count)
            .map(|_| random::random_qorder(Arc::clone(&q), shape.points, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        ("random", list)
    };
    params.insert("mode".into(), mode.into());
    let mut searched = 0;
    let mut found = None;
    for (k, a) in candidates.iter().enumerate() {
        searched += 1;
        let ctx = IdealContext::new(a, opts.budget);
        let hit = ctx
            .ideals(shape.member)?
            .into_iter()
            .find_map(|phi| match ctx.failure(shape.outside, &phi) {
                Ok(Some(f)) => Some(Ok((phi, f))),
                Ok(None) => None,
                Err(e) => Some(Err(e)),
            })
            .transpose()?;
        if let Some((phi, f)) = hit {
            found = Some((k, a, phi, f));
            break;
        }
    }
    let (verdict, summary, witnesses, details) = match found {
        Some((k, a, phi, f)) => {
            let why = failure_json(a, &f);
            let desc = format!(
                "instance #{k}: {} is {} but not {}",
                fuzzy::format(a.quantale(), &phi),
                shape.member,
                shape.outside
            );
            let mut w = set_witness(a, &phi, desc.clone());
            w.file = "search-0.json".into();
            (Verdict::Finding, desc, vec![w], json!({"searched": searched, "failure": why}))
        }
        None => (
            Verdict::Pass,
            format!("no {} ideal outside {} in {searched} instances", shape.member, shape.outside),
            Vec::new(),
            json!({"searched": searched}),
        ),
    };
    Ok(SuiteResult {
        suite: "search-counterexample".into(),
        params,
        seed: opts.seed,
        instances: vec![format!("{} {mode} {}-point Q-orders", shape.quantale, shape.points)],
        verdict,
        summary,
        details,
        witnesses,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
