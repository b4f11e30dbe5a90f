//! Pointwise loading/unloading path simulation: drive a prescribed opening
//! path (y1(t), y2(t)), track the history variable, and record energies and
//! tractions for both the potential-based and the direct-tension models.

use crate::error::LawError;
use crate::laws1d::CohesiveLaw1D;
use crate::mixedmode::{CouplingF, CouplingMode, HistoryPair, LoadingDensity, MixedModeLaw};

/// Default horizon and sampling for the representative cases: long enough to
/// include at least two unloading/reloading events for every case.
pub const DEFAULT_T_END: f64 = 50.0;
pub const DEFAULT_SAMPLES: usize = 2000;

/// Rectified sinusoidal opening path y_i(t) = |a_i sin(b_i t)| on a strictly
/// increasing time grid.
#[derive(Debug, Clone)]
pub struct LoadingPath {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub t_grid: Vec<f64>,
}

impl LoadingPath {
    /// Uniform grid of `n` samples on [0, t_end].
    pub fn sinusoidal(a: [f64; 2], b: [f64; 2], t_end: f64, n: usize) -> Self {
        let n = n.max(2);
        let t_grid = (0..n)
            .map(|k| t_end * k as f64 / (n - 1) as f64)
            .collect();
        Self { a, b, t_grid }
    }

    pub fn opening(&self, t: f64) -> [f64; 2] {
        [
            (self.a[0] * (self.b[0] * t).sin()).abs(),
            (self.a[1] * (self.b[1] * t).sin()).abs(),
        ]
    }
}

/// One record of a simulated path.
#[derive(Debug, Clone, Copy)]
pub struct TraceSample {
    pub t: f64,
    pub y: [f64; 2],
    /// History after the update at this sample.
    pub z: [f64; 2],
    /// Stored energy Phi(y, z) of the potential construction.
    pub phi: f64,
    /// Gradient of the potential construction.
    pub grad: [f64; 2],
    /// Traction of the model actually simulated (grad Phi or T by mode).
    pub traction: [f64; 2],
}

#[derive(Debug, Clone)]
pub struct PathTrace {
    pub samples: Vec<TraceSample>,
}

impl PathTrace {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Index of the first sample at which some component unloads (y_i drops
    /// strictly below the pre-update history), or None for pure loading.
    pub fn first_unloading_index(&self) -> Option<usize> {
        let mut z = [0.0f64; 2];
        for (k, s) in self.samples.iter().enumerate() {
            if s.y[0] < z[0] - 1e-14 || s.y[1] < z[1] - 1e-14 {
                return Some(k);
            }
            z = [z[0].max(s.y[0]), z[1].max(s.y[1])];
        }
        None
    }

    /// Maximal index ranges over which component `l` strictly decreases and,
    /// when `both` is set, the other component strictly decreases too.
    /// Intervals shorter than `min_len` samples are dropped.
    pub fn unloading_intervals(&self, l: usize, both: bool, min_len: usize) -> Vec<(usize, usize)> {
        let j = 1 - l;
        let mut out = Vec::new();
        let mut start: Option<usize> = None;
        for k in 1..self.samples.len() {
            let dec_l = self.samples[k].y[l] < self.samples[k - 1].y[l];
            let dec_j = self.samples[k].y[j] < self.samples[k - 1].y[j];
            let active = dec_l && (!both || dec_j);
            match (start, active) {
                (None, true) => start = Some(k - 1),
                (Some(s), false) => {
                    if k - s >= min_len {
                        out.push((s, k - 1));
                    }
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            if self.samples.len() - s > min_len {
                out.push((s, self.samples.len() - 1));
            }
        }
        out
    }

    pub fn peak_traction(&self, l: usize) -> f64 {
        self.samples
            .iter()
            .fold(0.0f64, |m, s| m.max(s.traction[l].abs()))
    }

    /// The trace as CSV with one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,y1,y2,z1,z2,phi,grad1,grad2,t1,t2\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e}\n",
                s.t,
                s.y[0],
                s.y[1],
                s.z[0],
                s.z[1],
                s.phi,
                s.grad[0],
                s.grad[1],
                s.traction[0],
                s.traction[1]
            ));
        }
        out
    }
}

/// Drives the law along the path. At each sample the law is evaluated at
/// (y(t), z^-) with z^- the history before the update, then z <- z v y(t).
/// By the replacement identity the opposite order gives identical values;
/// this is asserted in debug builds.
pub fn simulate_path(
    law: &MixedModeLaw,
    path: &LoadingPath,
    z0: HistoryPair,
) -> Result<PathTrace, LawError> {
    let mut z = z0;
    let mut samples = Vec::with_capacity(path.t_grid.len());
    for &t in &path.t_grid {
        let [y1, y2] = path.opening(t);
        let phi = law.phi(y1, y2, z)?;
        let grad = law.grad_phi(y1, y2, z)?;
        let traction = law.traction(y1, y2, z)?;
        #[cfg(debug_assertions)]
        {
            let tr_joined = law.traction(y1, y2, z.join(y1, y2))?;
            debug_assert!(
                (traction[0] - tr_joined[0]).abs() <= 1e-14
                    && (traction[1] - tr_joined[1]).abs() <= 1e-14,
                "history update order changed the traction"
            );
        }
        z = z.join(y1, y2);
        samples.push(TraceSample {
            t,
            y: [y1, y2],
            z: [z.z1, z.z2],
            phi,
            grad,
            traction,
        });
    }
    Ok(PathTrace { samples })
}

/// Parameters of one representative case: fracture energies and the path
/// amplitudes/frequencies. All cases share alpha = 2, sigma = 2, lambda = 0.2.
#[derive(Debug, Clone, Copy)]
pub struct CaseSetup {
    pub phi: [f64; 2],
    pub a: [f64; 2],
    pub b: [f64; 2],
}

/// The four representative cases.
pub fn case_setup(n: usize) -> CaseSetup {
    match n {
        1 => CaseSetup {
            phi: [2.0, 2.0],
            a: [1.0, 1.0],
            b: [0.2, 0.2],
        },
        2 => CaseSetup {
            phi: [2.0, 2.0],
            a: [1.0, 1.0],
            b: [0.2, 0.3],
        },
        // The large amplitude must drive direction 1: only the coefficient
        // multiplying psi2' can change sign (at psi1 > phi2 / alpha), so the
        // nonphysical negative branch of the potential model appears exactly
        // when direction 1 is driven deep into its softening range.
        3 => CaseSetup {
            phi: [6.0, 2.0],
            a: [3.0, 1.0],
            b: [0.2, 0.3],
        },
        4 => CaseSetup {
            phi: [2.0, 2.0],
            a: [1.0, 0.5],
            b: [0.125, 0.4],
        },
        _ => panic!("case number must be 1..=4, got {n}"),
    }
}

/// Builds the mixed-mode PPR law for case `n` in the requested mode.
pub fn case_law(n: usize, mode: CouplingMode) -> Result<MixedModeLaw, LawError> {
    let setup = case_setup(n);
    let psi1 = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, setup.phi[0])?;
    let psi2 = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, setup.phi[1])?;
    let coupling = CouplingF::ppr(setup.phi[0], setup.phi[1], mode)?;
    Ok(MixedModeLaw::new(LoadingDensity::new(coupling, psi1, psi2)))
}

/// Runs case `n` for both models on the default horizon; returns the
/// (potential, non-potential) pair of traces.
pub fn run_case(n: usize, n_samples: usize) -> Result<(PathTrace, PathTrace), LawError> {
    let setup = case_setup(n);
    let path = LoadingPath::sinusoidal(setup.a, setup.b, DEFAULT_T_END, n_samples);
    let z0 = HistoryPair::default();
    let pot = simulate_path(&case_law(n, CouplingMode::Potential)?, &path, z0)?;
    let non = simulate_path(&case_law(n, CouplingMode::NonPotential)?, &path, z0)?;
    Ok((pot, non))
}

/// Largest residual of the points (y_l, traction_l) over the interval from a
/// straight line through the origin (slope fitted by least squares).
pub fn origin_line_residual(trace: &PathTrace, range: (usize, usize), l: usize) -> f64 {
    let pts: Vec<(f64, f64)> = trace.samples[range.0..=range.1]
        .iter()
        .map(|s| (s.y[l], s.traction[l]))
        .collect();
    let (sxx, sxy) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, t)| (a + x * x, b + x * t));
    if sxx == 0.0 {
        return 0.0;
    }
    let slope = sxy / sxx;
    pts.iter()
        .fold(0.0f64, |m, (x, t)| m.max((t - slope * x).abs()))
}

/// Largest deviation of the points (y_l, traction_l) from the chord between
/// the interval endpoints.
pub fn chord_residual(trace: &PathTrace, range: (usize, usize), l: usize) -> f64 {
    let a = &trace.samples[range.0];
    let b = &trace.samples[range.1];
    let (xa, ta) = (a.y[l], a.traction[l]);
    let (xb, tb) = (b.y[l], b.traction[l]);
    if (xb - xa).abs() < 1e-14 {
        return 0.0;
    }
    let slope = (tb - ta) / (xb - xa);
    trace.samples[range.0..=range.1]
        .iter()
        .fold(0.0f64, |m, s| {
            m.max((s.traction[l] - (ta + slope * (s.y[l] - xa))).abs())
        })
}

/// Unloading sweep of component `l` at frozen cross opening: from the trace
/// state at the global peak of y_l, sweep y_l from the attained history down
/// to 0 while holding the other component and the history fixed, recording
/// (y_l, traction_l). This isolates the unloading branch of one component.
pub fn frozen_unloading_sweep(
    law: &MixedModeLaw,
    trace: &PathTrace,
    l: usize,
    n: usize,
) -> Result<Vec<(f64, f64)>, LawError> {
    let peak = trace
        .samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.y[l].partial_cmp(&b.1.y[l]).unwrap())
        .map(|(k, _)| k)
        .unwrap();
    let s = &trace.samples[peak];
    let z = HistoryPair::new(s.z[0], s.z[1])?;
    let zl = s.z[l];
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let yl = zl * k as f64 / (n - 1) as f64;
        let (y1, y2) = if l == 0 { (yl, s.y[1]) } else { (s.y[0], yl) };
        let tr = law.traction(y1, y2, z)?;
        out.push((yl, tr[l]));
    }
    Ok(out)
}
