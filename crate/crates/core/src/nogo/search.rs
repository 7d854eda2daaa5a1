//! Adaptive Nelder-Mead with seeded restarts.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{unitary_from_coefficients, UnitaryParams};
use crate::error::{Error, Result};
use crate::linalg::random::seeded_rng;
use crate::linalg::ComplexMatrix;
use crate::states::GellMannBasis;

/// Parameter layout: `dim² − 1` unitary coordinates followed by `aux`
/// free real parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    pub dim: usize,
    pub aux: usize,
}

impl SearchSpace {
    pub fn new(dim: usize, aux: usize) -> Self {
        Self { dim, aux }
    }

    fn unitary_params(&self) -> usize {
        self.dim * self.dim - 1
    }

    fn len(&self) -> usize {
        self.unitary_params() + self.aux
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Evaluation budget per restart is this times the parameter count.
    pub evaluations_per_parameter: usize,
    /// Convergence threshold on the simplex diameter.
    pub diameter_tolerance: f64,
    pub initial_step: f64,
}

impl SearchOptions {
    pub fn new(restarts: usize, seed: u64) -> Self {
        Self {
            restarts,
            seed,
            ..Self::default()
        }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 50,
            seed: 42,
            evaluations_per_parameter: 2000,
            diameter_tolerance: 1e-8,
            initial_step: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    /// Minimum over all restarts, converged or not.
    pub best_objective: f64,
    pub best_params: UnitaryParams,
    pub best_aux: Vec<f64>,
    pub restarts: usize,
    pub evaluations: usize,
    pub seed: u64,
    pub converged_restart_objectives: Vec<f64>,
    /// Restarts that exhausted their budget before the simplex collapsed.
    pub unconverged_restart_objectives: Vec<f64>,
}

struct Restart {
    x: Vec<f64>,
    f: f64,
    evaluations: usize,
    converged: bool,
}

/// Minimizes `objective(U(θ), aux)` from `options.restarts` independent
/// starting points. Restart `r` draws its start uniformly from `[−π, π]ⁿ`
/// using seed `options.seed + r`; restarts run in parallel and are reduced
/// in index order, so the result does not depend on scheduling.
pub fn minimize<F>(objective: F, space: SearchSpace, options: &SearchOptions) -> Result<SearchResult>
where
    F: Fn(&ComplexMatrix, &[f64]) -> f64 + Sync,
{
    if options.restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    if space.dim < 2 {
        return Err(Error::BadDimension(space.dim));
    }
    let basis = GellMannBasis::cached(space.dim)?;
    let k = space.unitary_params();
    let n = space.len();
    let eval = |x: &[f64]| {
        let u = unitary_from_coefficients(&basis, &x[..k]);
        let v = objective(&u, &x[k..]);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let budget = options.evaluations_per_parameter.saturating_mul(n).max(n + 1);
    let runs: Vec<Restart> = (0..options.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = seeded_rng(options.seed.wrapping_add(r as u64));
            let start: Vec<f64> = (0..n)
                .map(|_| rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI))
                .collect();
            nelder_mead(&eval, start, options.initial_step, options.diameter_tolerance, budget)
        })
        .collect();

    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.f < runs[best].f {
            best = i;
        }
    }
    let x = &runs[best].x;
    Ok(SearchResult {
        best_objective: runs[best].f,
        best_params: UnitaryParams::new(space.dim, x[..k].to_vec())?,
        best_aux: x[k..].to_vec(),
        restarts: options.restarts,
        evaluations: runs.iter().map(|r| r.evaluations).sum(),
        seed: options.seed,
        converged_restart_objectives: runs.iter().filter(|r| r.converged).map(|r| r.f).collect(),
        unconverged_restart_objectives: runs.iter().filter(|r| !r.converged).map(|r| r.f).collect(),
    })
}

/// Gao-Han adaptive coefficients: reflection 1, expansion `1 + 2/n`,
/// contraction `¾ − 1/(2n)`, shrink `1 − 1/n`.
fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    start: Vec<f64>,
    step: f64,
    tolerance: f64,
    budget: usize,
) -> Restart {
    let n = start.len();
    if n == 0 {
        let value = f(&start);
        return Restart { x: start, f: value, evaluations: 1, converged: true };
    }
    let nf = n as f64;
    let (alpha, beta, gamma, delta) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let f0 = f(&start);
    simplex.push((start.clone(), f0));
    for i in 0..n {
        let mut x = start.clone();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }
    let mut evaluations = n + 1;
    let mut converged = false;

    let along = |c: &[f64], toward: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(toward).map(|(a, b)| a + t * (b - a)).collect()
    };

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max);
        if diameter < tolerance {
            converged = true;
            break;
        }
        if evaluations >= budget {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / nf;
            }
        }
        let worst = simplex[n].clone();
        let second = simplex[n - 1].1;
        let best = simplex[0].1;

        let xr = along(&centroid, &worst.0, -alpha);
        let fr = f(&xr);
        evaluations += 1;

        if fr < best {
            let xe = along(&centroid, &xr, beta);
            let fe = f(&xe);
            evaluations += 1;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < second {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc, accept) = if fr < worst.1 {
            let xc = along(&centroid, &xr, gamma);
            let fc = f(&xc);
            (xc, fc, fc <= fr)
        } else {
            let xc = along(&centroid, &worst.0, gamma);
            let fc = f(&xc);
            (xc, fc, fc < worst.1)
        };
        evaluations += 1;
        if accept {
            simplex[n] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = along(&anchor, &vertex.0, delta);
            let v = f(&x);
            *vertex = (x, v);
        }
        evaluations += n;
    }
    let (x, value) = simplex.swap_remove(0);
    Restart { x, f: value, evaluations, converged }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nogo::{distance_to_target, search_target, unitary_from_params};
    use crate::protocols::energy_cloner;

    #[test]
    fn finds_minimum_of_quadratic_in_aux() {
        let result = minimize(
            |_: &ComplexMatrix, aux: &[f64]| (aux[0] - 1.0).powi(2) + (aux[1] + 0.5).powi(2),
            SearchSpace::new(2, 2),
            &SearchOptions::new(3, 7),
        )
        .unwrap();
        assert!(result.best_objective < 1e-12);
        assert!((result.best_aux[0] - 1.0).abs() < 1e-6);
        assert!((result.best_aux[1] + 0.5).abs() < 1e-6);
        assert_eq!(result.converged_restart_objectives.len(), 3);
    }

    #[test]
    fn reaches_cnot_up_to_phase() {
        let cnot = energy_cloner(2).unwrap();
        let result = search_target(&cnot, &SearchOptions::new(10, 1)).unwrap();
        assert!(result.best_objective < 1e-6, "best {}", result.best_objective);
        let u = unitary_from_params(&result.best_params);
        assert!(distance_to_target(&u, &cnot).unwrap() < 1e-6);
    }

    #[test]
    fn best_is_min_over_restarts() {
        let cnot = energy_cloner(2).unwrap();
        let result = search_target(&cnot, &SearchOptions::new(4, 3)).unwrap();
        let all = result
            .converged_restart_objectives
            .iter()
            .chain(&result.unconverged_restart_objectives);
        let min = all.clone().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(result.best_objective, min);
        assert_eq!(all.count(), 4);
    }

    #[test]
    fn result_is_independent_of_thread_count() {
        let cnot = energy_cloner(2).unwrap();
        let opts = SearchOptions::new(6, 11);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| search_target(&cnot, &opts).unwrap())
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a, b);
        assert_eq!(a.best_objective.to_bits(), b.best_objective.to_bits());
    }

    #[test]
    fn rejects_zero_restarts() {
        let r = minimize(|_: &ComplexMatrix, _: &[f64]| 0.0, SearchSpace::new(2, 0), &SearchOptions::new(0, 1));
        assert!(r.is_err());
    }

    #[test]
    fn nan_objective_is_treated_as_infinite() {
        let r = minimize(
            |_: &ComplexMatrix, aux: &[f64]| if aux[0] > 3.0 { f64::NAN } else { aux[0] * aux[0] },
            SearchSpace::new(2, 1),
            &SearchOptions::new(2, 5),
        )
        .unwrap();
        assert!(r.best_objective < 1e-12);
    }
}
