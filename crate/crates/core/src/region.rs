//! Rate-energy regions: exhaustive sweeps and Pareto frontiers.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::protocols::{enumerate_controls, Evaluator, OperatingPoint, ProtocolId};
use crate::scenario::Scenario;

/// Default grid resolution per free control axis.
pub const DEFAULT_GRID: usize = 101;

/// Anything that lives in the (rate, harvested power) plane.
pub trait RateEnergy {
    fn rate(&self) -> f64;
    fn energy(&self) -> f64;
}

impl RateEnergy for OperatingPoint {
    fn rate(&self) -> f64 {
        self.rate
    }
    fn energy(&self) -> f64 {
        self.harvested_power
    }
}

impl RateEnergy for (f64, f64) {
    fn rate(&self) -> f64 {
        self.0
    }
    fn energy(&self) -> f64 {
        self.1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateEnergyRegion {
    /// Every feasible evaluated point, in grid order.
    pub points: Vec<OperatingPoint>,
    /// Pareto-maximal points by ascending rate (strictly decreasing energy).
    pub frontier: Vec<OperatingPoint>,
    pub protocol: ProtocolId,
    pub grid_points_per_axis: usize,
}

impl RateEnergyRegion {
    pub fn max_energy(&self) -> Result<f64> {
        max_energy(self)
    }

    pub fn max_rate(&self) -> Result<f64> {
        max_rate(self)
    }
}

/// Evaluates every control tuple of the protocol's grid. Infeasible tuples
/// are skipped; a region with no feasible tuple is an error.
pub fn sweep(scenario: &Scenario, protocol: ProtocolId, grid_points_per_axis: usize) -> Result<RateEnergyRegion> {
    let evaluator = Evaluator::new(scenario)?;
    sweep_with(&evaluator, protocol, grid_points_per_axis)
}

/// Like [`sweep`], reusing a prepared evaluator.
pub fn sweep_with(evaluator: &Evaluator, protocol: ProtocolId, grid_points_per_axis: usize) -> Result<RateEnergyRegion> {
    let grid = enumerate_controls(protocol, grid_points_per_axis)?;
    let evaluated: Vec<Result<OperatingPoint>> = grid
        .par_iter()
        .map(|c| evaluator.evaluate(protocol, c))
        .collect();

    let mut points = Vec::with_capacity(evaluated.len());
    for r in evaluated {
        match r {
            Ok(p) => points.push(p),
            Err(Error::InfeasibleControls(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if points.is_empty() {
        return Err(Error::DegenerateRegion(format!(
            "protocol {protocol} has no feasible control setting"
        )));
    }
    let frontier = pareto(&points);
    Ok(RateEnergyRegion {
        points,
        frontier,
        protocol,
        grid_points_per_axis,
    })
}

/// Indices of the Pareto-maximal points, ordered by ascending rate.
///
/// Exact duplicates collapse onto the earliest index.
pub fn pareto_indices<T: RateEnergy>(points: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (&points[i], &points[j]);
        b.rate()
            .total_cmp(&a.rate())
            .then(b.energy().total_cmp(&a.energy()))
            .then(i.cmp(&j))
    });

    let mut keep = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for i in order {
        let e = points[i].energy();
        if e > best {
            keep.push(i);
            best = e;
        }
    }
    keep.reverse();
    keep
}

/// Pareto frontier of a point set, sorted by ascending rate.
pub fn pareto<T: RateEnergy + Clone>(points: &[T]) -> Vec<T> {
    pareto_indices(points)
        .into_iter()
        .map(|i| points[i].clone())
        .collect()
}

pub fn max_energy(region: &RateEnergyRegion) -> Result<f64> {
    region
        .points
        .iter()
        .map(|p| p.harvested_power)
        .reduce(f64::max)
        .ok_or_else(|| Error::DegenerateRegion("empty region".into()))
}

pub fn max_rate(region: &RateEnergyRegion) -> Result<f64> {
    region
        .points
        .iter()
        .map(|p| p.rate)
        .reduce(f64::max)
        .ok_or_else(|| Error::DegenerateRegion("empty region".into()))
}

/// True iff every frontier point of `b` is weakly dominated by a frontier
/// point of `a`.
pub fn dominates(a: &RateEnergyRegion, b: &RateEnergyRegion) -> bool {
    frontier_dominates(&a.frontier, &b.frontier)
}

/// [`dominates`] on raw frontiers; `a` must be sorted by ascending rate with
/// decreasing energy, as [`pareto`] returns it.
pub fn frontier_dominates<T: RateEnergy>(a: &[T], b: &[T]) -> bool {
    b.iter().all(|q| {
        // first point of `a` with enough rate carries the most energy among those
        let i = a.partition_point(|p| p.rate() < q.rate());
        a.get(i).is_some_and(|p| p.energy() >= q.energy())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::default_scenario;

    #[test]
    fn pareto_examples() {
        assert_eq!(pareto(&[(1.0, 1.0)]), vec![(1.0, 1.0)]);
        assert_eq!(
            pareto(&[(1.0, 2.0), (2.0, 1.0), (1.5, 1.5), (0.5, 0.5)]),
            vec![(1.0, 2.0), (1.5, 1.5), (2.0, 1.0)]
        );
        assert_eq!(pareto_indices(&[(1.0, 1.0), (1.0, 1.0)]), vec![0]);
        assert!(pareto::<(f64, f64)>(&[]).is_empty());
    }

    #[test]
    fn rf_grid_two() {
        let r = sweep(&default_scenario(), ProtocolId::RfOnly, 2).unwrap();
        assert_eq!(r.points.len(), 2);
        assert_eq!(r.points[1].rate, 0.0);
        assert_eq!(r.points[0].harvested_power, 0.0);
        assert_eq!(r.max_energy().unwrap(), r.points[1].harvested_power);
        assert_eq!(r.max_rate().unwrap(), r.points[0].rate);
        assert_eq!(r.frontier.len(), 2);
    }

    #[test]
    fn nirl_grid_three_matches_brute_force() {
        let r = sweep(&default_scenario(), ProtocolId::NirlOnly, 3).unwrap();
        assert_eq!(r.points.len(), 9);
        let brute: Vec<OperatingPoint> = r
            .points
            .iter()
            .enumerate()
            .filter(|(i, q)| {
                !r.points.iter().enumerate().any(|(j, p)| {
                    let ge = p.rate >= q.rate && p.harvested_power >= q.harvested_power;
                    let gt = p.rate > q.rate || p.harvested_power > q.harvested_power;
                    (ge && gt) || (j < *i && p.rate == q.rate && p.harvested_power == q.harvested_power)
                })
            })
            .map(|(_, p)| *p)
            .collect();
        let mut brute = brute;
        brute.sort_by(|a, b| a.rate.total_cmp(&b.rate));
        assert_eq!(r.frontier, brute);
        assert!((r.max_energy().unwrap() - 9.60e-3).abs() / 9.60e-3 < 2e-3);
    }

    #[test]
    fn sweeps_are_deterministic() {
        let s = default_scenario();
        assert_eq!(
            sweep(&s, ProtocolId::D, 7).unwrap(),
            sweep(&s, ProtocolId::D, 7).unwrap()
        );
    }

    #[test]
    fn dominance_basics() {
        let s = default_scenario();
        let a = sweep(&s, ProtocolId::A, 21).unwrap();
        let nirl = sweep(&s, ProtocolId::NirlOnly, 21).unwrap();
        assert!(dominates(&a, &a));
        assert!(dominates(&a, &nirl));
        assert!(!dominates(&nirl, &a));
    }

    #[test]
    fn degenerate_region_when_nothing_is_feasible() {
        let mut s = default_scenario();
        // 1250 lx undimmed; no grid-3 DC share lands in [200, 300] lx
        s.luminous_efficacy = 3000.0;
        s.safety.illuminance_max = 300.0;
        assert!(matches!(
            sweep(&s, ProtocolId::C, 3),
            Err(Error::DegenerateRegion(_))
        ));
    }
}
