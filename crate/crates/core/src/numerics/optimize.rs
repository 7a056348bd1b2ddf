use super::RandomSource;
use crate::{Error, Result};

/// Per-coordinate reparameterisation applied inside the optimizer.
///
/// The simplex lives in an unconstrained space `u`; the objective only ever
/// sees `x = to_external(u)`, which lies inside the coordinate's domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Identity,
    /// `x = exp(u)`, for `x > 0`.
    Log,
    /// `x = 1 / (1 + exp(-u))`, for `x ∈ (0, 1)`.
    Logit,
    /// `x = lo + exp(u)`, for `x > lo`.
    LowerBound(f64),
    /// `x = lo + (hi - lo) / (1 + exp(-u))`, for `x ∈ (lo, hi)`.
    Interval(f64, f64),
}

impl Transform {
    fn to_internal(self, x: f64) -> Option<f64> {
        let u = match self {
            Transform::Identity => x,
            Transform::Log => {
                if x <= 0.0 {
                    return None;
                }
                x.ln()
            }
            Transform::Logit => {
                if x <= 0.0 || x >= 1.0 {
                    return None;
                }
                (x / (1.0 - x)).ln()
            }
            Transform::LowerBound(lo) => {
                if x <= lo {
                    return None;
                }
                (x - lo).ln()
            }
            Transform::Interval(lo, hi) => {
                if x <= lo || x >= hi {
                    return None;
                }
                let t = (x - lo) / (hi - lo);
                (t / (1.0 - t)).ln()
            }
        };
        u.is_finite().then_some(u)
    }

    fn to_external(self, u: f64) -> f64 {
        match self {
            Transform::Identity => u,
            Transform::Log => u.exp(),
            Transform::Logit => 1.0 / (1.0 + (-u).exp()),
            Transform::LowerBound(lo) => lo + u.exp(),
            Transform::Interval(lo, hi) => lo + (hi - lo) / (1.0 + (-u).exp()),
        }
    }
}

/// An objective over ℝᵈ with a starting point and per-coordinate transforms.
pub struct OptimizationProblem<F> {
    pub objective: F,
    pub initial_point: Vec<f64>,
    pub transforms: Vec<Transform>,
}

impl<F: Fn(&[f64]) -> f64> OptimizationProblem<F> {
    /// Unconstrained problem.
    pub fn new(objective: F, initial_point: Vec<f64>) -> Self {
        let transforms = vec![Transform::Identity; initial_point.len()];
        Self { objective, initial_point, transforms }
    }

    pub fn with_transforms(mut self, transforms: Vec<Transform>) -> Self {
        self.transforms = transforms;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadSettings {
    /// Relative tolerance on both the simplex diameter and the spread of
    /// objective values across vertices.
    pub tol: f64,
    /// Iteration cap per run (restarts get their own budget).
    pub max_iter: usize,
    /// Maximum number of restarts from a perturbed best point.
    pub restarts: usize,
    /// Initial simplex edge, relative to the magnitude of each coordinate.
    pub initial_step: f64,
}

impl Default for NelderMeadSettings {
    fn default() -> Self {
        Self { tol: 1e-8, max_iter: 10_000, restarts: 3, initial_step: 0.1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub argmin: Vec<f64>,
    pub min_value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub restarts_used: usize,
}

struct Run {
    point: Vec<f64>,
    value: f64,
    iterations: usize,
    converged: bool,
}

/// Minimize with the Nelder–Mead simplex method and restart from a
/// perturbed copy of the best point until a restart stops improving.
///
/// Non-finite objective values are never accepted as simplex moves; a
/// vertex that evaluates to NaN or ±∞ ranks behind every finite vertex.
pub fn nelder_mead_minimize<F>(
    problem: &OptimizationProblem<F>,
    settings: &NelderMeadSettings,
    rng: &mut RandomSource,
) -> Result<OptimizationResult>
where
    F: Fn(&[f64]) -> f64,
{
    let dim = problem.initial_point.len();
    if dim == 0 {
        return Err(Error::Usage("optimization problem has no coordinates".into()));
    }
    if problem.transforms.len() != dim {
        return Err(Error::Usage(format!(
            "{} transforms for a {dim}-dimensional problem",
            problem.transforms.len()
        )));
    }
    let start: Vec<f64> = problem
        .initial_point
        .iter()
        .zip(&problem.transforms)
        .map(|(&x, t)| {
            t.to_internal(x).ok_or_else(|| {
                Error::Domain(format!("initial coordinate {x} outside the domain of {t:?}"))
            })
        })
        .collect::<Result<_>>()?;

    let mut external = vec![0.0; dim];
    let mut eval = |u: &[f64]| -> f64 {
        for ((e, &ui), t) in external.iter_mut().zip(u).zip(&problem.transforms) {
            *e = t.to_external(ui);
        }
        let v = (problem.objective)(&external);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let steps: Vec<f64> = start.iter().map(|u| settings.initial_step * u.abs().max(1.0)).collect();
    let mut best = run_once(&mut eval, &start, &steps, settings)?;
    let mut iterations = best.iterations;
    let mut restarts_used = 0;
    for _ in 0..settings.restarts {
        let perturbed: Vec<f64> =
            best.point.iter().zip(&steps).map(|(u, s)| u + 0.5 * s * rng.normal()).collect();
        let origin = if eval(&perturbed).is_finite() { perturbed } else { best.point.clone() };
        let run = match run_once(&mut eval, &origin, &steps, settings) {
            Ok(run) => run,
            Err(_) => break,
        };
        restarts_used += 1;
        iterations += run.iterations;
        let threshold = settings.tol * best.value.abs().max(1.0);
        let improved = run.value < best.value - threshold;
        if run.value < best.value || (!best.converged && run.converged && run.value <= best.value + threshold) {
            best = run;
        }
        if !improved && best.converged {
            break;
        }
    }

    let argmin = best.point.iter().zip(&problem.transforms).map(|(&u, t)| t.to_external(u)).collect();
    Ok(OptimizationResult {
        argmin,
        min_value: best.value,
        iterations,
        converged: best.converged,
        restarts_used,
    })
}

fn run_once(
    eval: &mut impl FnMut(&[f64]) -> f64,
    origin: &[f64],
    steps: &[f64],
    settings: &NelderMeadSettings,
) -> Result<Run> {
    let dim = origin.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let f0 = eval(origin);
    simplex.push((origin.to_vec(), f0));
    for i in 0..dim {
        let mut vertex = origin.to_vec();
        let mut step = steps[i];
        let mut value = f64::INFINITY;
        for attempt in 0..40 {
            vertex[i] = origin[i] + step;
            value = eval(&vertex);
            if value.is_finite() {
                break;
            }
            step *= if attempt % 2 == 0 { -1.0 } else { -0.5 };
        }
        simplex.push((vertex, value));
    }
    if simplex.iter().all(|(_, f)| !f.is_finite()) {
        return Err(Error::Numerical("objective is non-finite at every initial simplex vertex".into()));
    }

    let mut centroid = vec![0.0; dim];
    let mut trial = vec![0.0; dim];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < settings.max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best_point, best_value) = (&simplex[0].0, simplex[0].1);
        let scale_x = best_point.iter().fold(1.0f64, |m, u| m.max(u.abs()));
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(v, _)| v.iter().zip(best_point).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        let spread = simplex[dim].1 - best_value;
        if diameter <= settings.tol * scale_x && spread <= settings.tol * best_value.abs().max(1.0) {
            converged = true;
            break;
        }
        iterations += 1;

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for (v, _) in &simplex[..dim] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim as f64;
            }
        }
        let worst_value = simplex[dim].1;
        let second_worst = simplex[dim - 1].1;

        let point_along = |coef: f64, out: &mut Vec<f64>, worst: &[f64]| {
            for ((o, c), w) in out.iter_mut().zip(&centroid).zip(worst) {
                *o = c + coef * (c - w);
            }
        };

        point_along(1.0, &mut trial, &simplex[dim].0);
        let reflected = trial.clone();
        let f_reflected = eval(&reflected);

        if f_reflected < best_value {
            point_along(2.0, &mut trial, &simplex[dim].0);
            let f_expanded = eval(&trial);
            simplex[dim] = if f_expanded < f_reflected {
                (trial.clone(), f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < second_worst {
            simplex[dim] = (reflected, f_reflected);
            continue;
        }
        if f_reflected < worst_value {
            point_along(0.5, &mut trial, &simplex[dim].0);
            let f_contracted = eval(&trial);
            if f_contracted <= f_reflected {
                simplex[dim] = (trial.clone(), f_contracted);
                continue;
            }
        } else {
            point_along(-0.5, &mut trial, &simplex[dim].0);
            let f_contracted = eval(&trial);
            if f_contracted < worst_value {
                simplex[dim] = (trial.clone(), f_contracted);
                continue;
            }
        }
        // Shrink toward the best vertex.
        let anchor = simplex[0].0.clone();
        for (v, f) in simplex[1..].iter_mut() {
            for (x, a) in v.iter_mut().zip(&anchor) {
                *x = a + 0.5 * (*x - a);
            }
            *f = eval(v);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (point, value) = simplex.swap_remove(0);
    Ok(Run { point, value, iterations, converged })
}
