//! Preconditioned limited-memory quasi-Newton descent with Armijo
//! backtracking, used by the energetic incremental minimization.

use nalgebra::DVector;
use std::collections::VecDeque;

/// Result of a minimization run.
#[derive(Debug, Clone)]
pub struct MinimizeOutcome {
    pub x: DVector<f64>,
    pub value: f64,
    /// Dual norm sqrt(g . H0 g) of the gradient at the returned point.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

const LBFGS_MEMORY: usize = 10;
const ARMIJO_C1: f64 = 1e-4;
const ARMIJO_SHRINK: f64 = 0.5;
const ARMIJO_MAX_HALVINGS: usize = 60;

/// Minimizes `objective` starting from `x0`.
///
/// `objective` returns (value, gradient). `precondition` applies a fixed
/// symmetric positive-definite approximation H0 of the inverse Hessian (here:
/// the inverse elastic stiffness), which both seeds the two-loop recursion
/// and defines the dual norm used for the stopping test
/// sqrt(g . H0 g) <= tol.
pub fn minimize<F, P>(
    objective: F,
    precondition: P,
    x0: DVector<f64>,
    tol: f64,
    max_iter: usize,
) -> MinimizeOutcome
where
    F: Fn(&DVector<f64>) -> (f64, DVector<f64>),
    P: Fn(&DVector<f64>) -> DVector<f64>,
{
    let mut x = x0;
    let (mut fx, mut g) = objective(&x);
    let mut pairs: VecDeque<(DVector<f64>, DVector<f64>, f64)> = VecDeque::new();
    let mut iterations = 0;

    loop {
        let hg = precondition(&g);
        let residual = g.dot(&hg).max(0.0).sqrt();
        if residual <= tol {
            return MinimizeOutcome {
                x,
                value: fx,
                residual,
                iterations,
                converged: true,
            };
        }
        if iterations >= max_iter {
            return MinimizeOutcome {
                x,
                value: fx,
                residual,
                iterations,
                converged: false,
            };
        }
        iterations += 1;

        // Line search over up to two direction candidates: the quasi-Newton
        // direction, then (after clearing the memory) preconditioned steepest
        // descent. Near the optimum the predicted decrease can fall below the
        // floating-point resolution of the objective; there a step is instead
        // accepted when it does not measurably increase the value but reduces
        // the dual gradient norm.
        let floor = 1e-15 * (1.0 + fx.abs());
        let mut accepted = None;
        for attempt in 0..2 {
            let mut d = if attempt == 0 && !pairs.is_empty() {
                let mut d = two_loop(&g, &pairs, &precondition);
                d.neg_mut();
                d
            } else {
                pairs.clear();
                -&hg
            };
            let mut slope = g.dot(&d);
            if !(slope < 0.0) {
                pairs.clear();
                d = -&hg;
                slope = g.dot(&d);
            }
            let mut step = 1.0;
            for _ in 0..=ARMIJO_MAX_HALVINGS {
                let xt = &x + &d * step;
                let (ft, gt) = objective(&xt);
                let ok = if 0.5 * step * (-slope) > floor {
                    ft <= fx + ARMIJO_C1 * step * slope
                } else {
                    ft <= fx + floor && {
                        let hgt = precondition(&gt);
                        gt.dot(&hgt).max(0.0).sqrt() < residual
                    }
                };
                if ok {
                    accepted = Some((xt, ft, gt));
                    break;
                }
                step *= ARMIJO_SHRINK;
            }
            if accepted.is_some() || pairs.is_empty() {
                break;
            }
        }
        let Some((xn, fn_, gn)) = accepted else {
            // No decrease found in either direction family: report the best
            // iterate with the current residual.
            return MinimizeOutcome {
                x,
                value: fx,
                residual,
                iterations,
                converged: residual <= tol,
            };
        };

        let s = &xn - &x;
        let yv = &gn - &g;
        let sy = s.dot(&yv);
        if sy > 1e-14 * s.norm() * yv.norm() {
            if pairs.len() == LBFGS_MEMORY {
                pairs.pop_front();
            }
            pairs.push_back((s, yv, sy));
        }
        x = xn;
        fx = fn_;
        g = gn;
    }
}

fn two_loop<P>(
    g: &DVector<f64>,
    pairs: &VecDeque<(DVector<f64>, DVector<f64>, f64)>,
    precondition: &P,
) -> DVector<f64>
where
    P: Fn(&DVector<f64>) -> DVector<f64>,
{
    let mut q = g.clone();
    let mut alphas = Vec::with_capacity(pairs.len());
    for (s, y, sy) in pairs.iter().rev() {
        let a = s.dot(&q) / sy;
        q.axpy(-a, y, 1.0);
        alphas.push(a);
    }
    let mut r = precondition(&q);
    for ((s, y, sy), a) in pairs.iter().zip(alphas.into_iter().rev()) {
        let b = y.dot(&r) / sy;
        r.axpy(a - b, s, 1.0);
    }
    r
}
