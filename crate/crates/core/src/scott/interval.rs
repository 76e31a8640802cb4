//! Grid-and-probe checks for functions on `[0, 1]`. Every verdict here is
//! "checked on the grid", not a proof.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantale::{IntervalQuantale, PieceKind, Quantale, SumPiece};

/// Offsets used to approximate right limits.
pub const DEFAULT_PROBES: [f64; 2] = [1.0 / (1u64 << 36) as f64, 1.0 / (1u64 << 40) as f64];

/// A function `[0, 1] -> [0, 1]` sampled on a grid, with values just to the
/// right of every grid point below 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledFunction {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub probes: Vec<f64>,
    /// `right[i][k]` is the value at `grid[i] + probes[k]` (unused at 1).
    pub right: Vec<Vec<f64>>,
}

impl SampledFunction {
    /// Samples `f` on `{0, 1/m, ..., 1}` with the default probes.
    pub fn sample(f: impl Fn(f64) -> f64, m: usize) -> Self {
        let grid: Vec<f64> = (0..=m).map(|k| k as f64 / m as f64).collect();
        Self::sample_on(f, grid, DEFAULT_PROBES.to_vec())
    }

    pub fn sample_on(f: impl Fn(f64) -> f64, grid: Vec<f64>, probes: Vec<f64>) -> Self {
        let values = grid.iter().map(|&x| f(x)).collect();
        let right = grid
            .iter()
            .map(|&x| probes.iter().map(|&d| f((x + d).min(1.0))).collect())
            .collect();
        SampledFunction {
            grid,
            values,
            probes,
            right,
        }
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// All sampled `(x, f(x))` pairs, grid first, then probe points.
    fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let probes = self.grid.iter().enumerate().flat_map(move |(i, &x)| {
            self.probes
                .iter()
                .zip(&self.right[i])
                .filter(move |(&d, _)| x + d < 1.0)
                .map(move |(&d, &v)| (x + d, v))
        });
        self.grid.iter().copied().zip(self.values.iter().copied()).chain(probes)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedCheck {
    pub order_preserving: bool,
    pub right_continuous: bool,
    /// Grid points `(x, y)` with `x -> y > f(x) -> f(y)`.
    pub order_witness: Option<(f64, f64)>,
    /// A grid point where a right probe moves away from the value.
    pub continuity_witness: Option<f64>,
}

impl ClosedCheck {
    pub fn closed(&self) -> bool {
        self.order_preserving && self.right_continuous
    }
}

/// Closedness in the Scott cotopology of `([0,1], d_R)`: `f` preserves
/// `d_L` on all grid pairs and is right continuous at every grid point.
pub fn scott_closed_on_interval(q: &IntervalQuantale, f: &SampledFunction) -> Result<ClosedCheck> {
    if f.len() < 17 {
        return Err(Error::GridTooCoarse { points: f.len() });
    }
    let tol = q.tolerance();
    let n = f.len();
    let order_witness = (0..n * n).map(|k| (k / n, k % n)).find_map(|(i, j)| {
        let lhs = q.residuate(f.grid[i], f.grid[j]);
        let rhs = q.residuate(f.values[i], f.values[j]);
        (lhs > rhs + tol).then_some((f.grid[i], f.grid[j]))
    });
    let continuity_witness = (0..n).find_map(|i| {
        let x = f.grid[i];
        let moved = f
            .probes
            .iter()
            .zip(&f.right[i])
            .any(|(&d, &v)| x + d < 1.0 && (v - f.values[i]).abs() > tol);
        moved.then_some(x)
    });
    Ok(ClosedCheck {
        order_preserving: order_witness.is_none(),
        right_continuous: continuity_witness.is_none(),
        order_witness,
        continuity_witness,
    })
}

/// One member `g_x(y) = c v (d -> y)` of the generating family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Generator {
    pub x: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationReport {
    pub max_deviation: f64,
    /// Grid point where the deviation is largest.
    pub worst_y: f64,
    pub generators: usize,
    /// Every generator satisfies `g_x >= f` on the grid.
    pub generators_dominate: bool,
}

impl GenerationReport {
    pub fn within(&self, tolerance: f64) -> bool {
        self.max_deviation <= tolerance
    }
}

fn decomposition_mismatch(q: &IntervalQuantale, pieces: &[SumPiece], grid: &[f64]) -> Option<String> {
    let tol = q.tolerance();
    let idempotent = |e: f64| (q.tensor(e, e) - e).abs() <= tol;
    for p in pieces {
        for e in [p.lo, p.hi] {
            if !idempotent(e) {
                return Some(format!("endpoint {e} is not idempotent"));
            }
        }
        let mid = (p.lo + p.hi) / 2.0;
        if idempotent(mid) {
            return Some(format!("{mid} inside piece [{}, {}] is idempotent", p.lo, p.hi));
        }
    }
    grid.iter()
        .find(|&&x| !pieces.iter().any(|p| p.lo < x && x < p.hi) && !idempotent(x))
        .map(|x| format!("{x} lies outside every piece but is not idempotent"))
}

/// Rebuilds `f` as the pointwise infimum of the family `g_x`, taken over the
/// grid and the right probe points, and reports the worst deviation on the
/// grid. `f` must be closed and above the identity.
pub fn verify_ordinal_sum_generation(
    q: &IntervalQuantale,
    f: &SampledFunction,
    pieces: &[SumPiece],
) -> Result<GenerationReport> {
    let tol = q.tolerance();
    let check = scott_closed_on_interval(q, f)?;
    if !check.closed() {
        return Err(Error::Precondition(format!(
            "function is not closed on the grid ({check:?})"
        )));
    }
    if let Some((x, v)) = f.points().find(|&(x, v)| v < x - tol) {
        return Err(Error::Precondition(format!("f({x}) = {v} is below the identity")));
    }
    if let Some(m) = decomposition_mismatch(q, pieces, &f.grid) {
        return Err(Error::DecompositionMismatch(m));
    }
    let open_piece = |x: f64, y: f64| pieces.iter().find(|p| p.lo < x && x < p.hi && p.lo < y && y < p.hi);
    let generators: Vec<Generator> = f
        .points()
        .map(|(x, fx)| {
            let d = match open_piece(x, fx) {
                Some(_) if fx > x + tol => q.residuate(fx, x),
                Some(p) => p.hi,
                None => x,
            };
            Generator { x, c: fx, d }
        })
        .collect();
    let g = |gen: &Generator, y: f64| gen.c.max(q.residuate(gen.d, y));
    let mut report = GenerationReport {
        max_deviation: 0.0,
        worst_y: 0.0,
        generators: generators.len(),
        generators_dominate: true,
    };
    for (i, &y) in f.grid.iter().enumerate() {
        let inf = generators.iter().map(|gen| g(gen, y)).fold(1.0f64, f64::min);
        let dev = (inf - f.values[i]).abs();
        if dev > report.max_deviation {
            report.max_deviation = dev;
            report.worst_y = y;
        }
    }
    report.generators_dominate = generators.iter().all(|gen| {
        f.grid.iter().zip(&f.values).all(|(&y, &fy)| g(gen, y) >= fy - tol)
    });
    Ok(report)
}

/// `sup_{b < a} (x -> b)` in closed form.
pub fn left_limit_residuum(q: &IntervalQuantale, x: f64, a: f64) -> f64 {
    use crate::quantale::TNorm;
    if x < a {
        return 1.0;
    }
    let piece = |lo: f64, hi: f64, kind: PieceKind| {
        let s = |v: f64| (v - lo) / (hi - lo);
        let r = match kind {
            PieceKind::Lukasiewicz => (1.0 - s(x) + s(a)).min(1.0),
            PieceKind::Product => {
                if s(x) == 0.0 {
                    1.0
                } else {
                    (s(a) / s(x)).min(1.0)
                }
            }
        };
        lo + (hi - lo) * r
    };
    match q.tnorm() {
        TNorm::Minimum => a,
        TNorm::Product => piece(0.0, 1.0, PieceKind::Product),
        TNorm::Lukasiewicz => piece(0.0, 1.0, PieceKind::Lukasiewicz),
        TNorm::NilpotentMinimum => a.max(1.0 - x),
        TNorm::OrdinalSum(pieces) => pieces
            .iter()
            .find(|p| p.lo < a && a <= p.hi && p.lo <= x && x <= p.hi)
            .map_or(a, |p| piece(p.lo, p.hi, p.kind)),
    }
}

/// The lower set generated by a finite stretch of a sequence,
/// `x |-> join_i meet_{i <= j} (x -> seq[j])`, at `x`.
pub fn sequence_generated(q: &IntervalQuantale, seq: &[f64], x: f64) -> f64 {
    let mut tail = 1.0f64;
    let mut best = 0.0f64;
    for &s in seq.iter().rev() {
        tail = tail.min(q.residuate(x, s));
        best = best.max(tail);
    }
    best
}

/// `join_i meet_{i <= j <= k} (seq[j] -> seq[k])` over the stretch.
pub fn cauchy_degree(q: &IntervalQuantale, seq: &[f64]) -> f64 {
    let n = seq.len();
    (0..n)
        .map(|i| {
            let mut m = 1.0f64;
            for j in i..n {
                for k in j..n {
                    m = m.min(q.residuate(seq[j], seq[k]));
                }
            }
            m
        })
        .fold(0.0, f64::max)
}

/// One of the two irreducible families at level `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// `x -> a`, generated by the constant sequence.
    Principal,
    /// `sup_{b < a} (x -> b)`, generated by `a - 2^-n`.
    LeftLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub kind: FamilyKind,
    pub a: f64,
    pub cauchy_degree: f64,
    pub max_deviation: f64,
    pub lower_on_grid: bool,
}

impl FamilyReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        (1.0 - self.cauchy_degree) <= tolerance && self.max_deviation <= tolerance && self.lower_on_grid
    }
}

/// Compares the closed form of a family member with the lower set generated
/// by `terms` terms of its sequence, on the grid `{0, 1/m, ..., 1}`.
pub fn check_family(q: &IntervalQuantale, kind: FamilyKind, a: f64, m: usize, terms: usize) -> Result<FamilyReport> {
    let seq: Vec<f64> = match kind {
        FamilyKind::Principal => vec![a; terms],
        FamilyKind::LeftLimit => {
            if a <= 0.0 {
                return Err(Error::Precondition("the left-limit family needs a > 0".into()));
            }
            let start = (1..).find(|&n| 2f64.powi(-n) < a).unwrap_or(1);
            (0..terms as i32).map(|n| a - 2f64.powi(-(start + n))).collect()
        }
    };
    let closed = |x: f64| match kind {
        FamilyKind::Principal => q.residuate(x, a),
        FamilyKind::LeftLimit => left_limit_residuum(q, x, a),
    };
    let grid: Vec<f64> = (0..=m).map(|k| k as f64 / m as f64).collect();
    let max_deviation = grid
        .iter()
        .map(|&x| (closed(x) - sequence_generated(q, &seq, x)).abs())
        .fold(0.0, f64::max);
    let tol = q.tolerance();
    let lower_on_grid = grid.iter().all(|&x| {
        grid.iter()
            .all(|&y| q.tensor(closed(y), q.residuate(x, y)) <= closed(x) + tol)
    });
    Ok(FamilyReport {
        kind,
        a,
        cauchy_degree: cauchy_degree(q, &seq),
        max_deviation,
        lower_on_grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::TNorm;

    fn luk() -> IntervalQuantale {
        IntervalQuantale::new(TNorm::Lukasiewicz)
    }

    #[test]
    fn identity_and_shift_are_closed() {
        let q = luk();
        assert!(scott_closed_on_interval(&q, &SampledFunction::sample(|x| x, 64)).unwrap().closed());
        let shift = SampledFunction::sample(|x| (x + 0.25).min(1.0), 64);
        assert!(scott_closed_on_interval(&q, &shift).unwrap().closed());
    }

    #[test]
    fn left_continuous_step_is_rejected_at_the_jump() {
        let q = luk();
        let step = SampledFunction::sample(|x| if x <= 0.5 { 0.0 } else { 1.0 }, 64);
        let c = scott_closed_on_interval(&q, &step).unwrap();
        assert!(!c.right_continuous);
        assert_eq!(c.continuity_witness, Some(0.5));
    }

    #[test]
    fn coarse_grid_is_an_error() {
        let f = SampledFunction::sample(|x| x, 8);
        assert!(matches!(
            scott_closed_on_interval(&luk(), &f),
            Err(Error::GridTooCoarse { points: 9 })
        ));
    }

    #[test]
    fn shift_is_regenerated_under_lukasiewicz() {
        let q = luk();
        let f = SampledFunction::sample(|x| (x + 0.25).min(1.0), 256);
        let pieces = q.tnorm().decomposition().unwrap();
        let r = verify_ordinal_sum_generation(&q, &f, &pieces).unwrap();
        assert!(r.within(1e-9), "{r:?}");
        assert!(r.generators_dominate);
    }

    #[test]
    fn identity_is_regenerated_under_min() {
        let q = IntervalQuantale::new(TNorm::Minimum);
        let f = SampledFunction::sample(|x| x, 64);
        let r = verify_ordinal_sum_generation(&q, &f, &[]).unwrap();
        assert!(r.within(1e-9), "{r:?}");
        let one = SampledFunction::sample(|_| 1.0, 64);
        assert_eq!(verify_ordinal_sum_generation(&q, &one, &[]).unwrap().max_deviation, 0.0);
    }

    #[test]
    fn wrong_decomposition_is_detected() {
        // min has no Archimedean pieces, so claiming one must fail
        let q = IntervalQuantale::new(TNorm::Minimum);
        let f = SampledFunction::sample(|x| x, 64);
        let fake = [SumPiece::new(0.0, 1.0, PieceKind::Lukasiewicz)];
        assert!(matches!(
            verify_ordinal_sum_generation(&q, &f, &fake),
            Err(Error::DecompositionMismatch(_))
        ));
    }

    #[test]
    fn left_limit_differs_from_principal_only_for_min() {
        let min = IntervalQuantale::new(TNorm::Minimum);
        assert_eq!(left_limit_residuum(&min, 0.5, 0.5), 0.5);
        assert_eq!(min.residuate(0.5, 0.5), 1.0);
        let prod = IntervalQuantale::new(TNorm::Product);
        assert!((left_limit_residuum(&prod, 0.8, 0.5) - 0.625).abs() < 1e-12);
    }

    #[test]
    fn families_are_sequence_generated() {
        for q in [luk(), IntervalQuantale::new(TNorm::Product), IntervalQuantale::new(TNorm::Minimum)] {
            for a in [0.0, 0.25, 0.5, 1.0] {
                let r = check_family(&q, FamilyKind::Principal, a, 64, 48).unwrap();
                assert!(r.passes(1e-9), "{r:?}");
                if a > 0.0 {
                    let r = check_family(&q, FamilyKind::LeftLimit, a, 64, 48).unwrap();
                    assert!(r.passes(1e-9), "{r:?}");
                }
            }
        }
    }
}
