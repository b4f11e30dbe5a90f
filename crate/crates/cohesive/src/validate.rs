//! Automated checkers for the hypothesis lists: the 1-D density assumptions,
//! Psi1-Psi6 on the loading density, Phi1-Phi9 on the constructed potential,
//! and S1-S3 / T1-T6 on the tension construction.
//!
//! Every checker is deterministic given (law, grid): grids are tensor
//! log+linear spacings plus a fixed-seed pseudo-random cloud, and reports are
//! emitted in a fixed order keyed by hypothesis id.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::LawError;
use crate::laws1d::CohesiveLaw1D;
use crate::mixedmode::{HistoryPair, LoadingDensity, MixedModeLaw};

/// Tolerance groups, matching the precision of the closed forms.
pub const TOL_EXACT: f64 = 1e-12;
pub const TOL_SIGN: f64 = 1e-9;
pub const TOL_FD: f64 = 1e-6;
const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
            CheckStatus::NotApplicable => write!(f, "n/a"),
        }
    }
}

/// Outcome of a single hypothesis check. A failing report carries a concrete
/// witness point; a passing one records the worst slack seen.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: String,
    pub status: CheckStatus,
    /// Largest violation (Fail) or worst slack margin (Pass).
    pub worst: f64,
    /// Location of the worst point, as raw coordinates.
    pub witness: Vec<f64>,
    pub grid: String,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Accumulates signed violations (positive = violated) over sample points.
struct Acc {
    worst: f64,
    witness: Vec<f64>,
    count: usize,
}

impl Acc {
    fn new() -> Self {
        Self {
            worst: f64::NEG_INFINITY,
            witness: Vec::new(),
            count: 0,
        }
    }

    fn push(&mut self, violation: f64, at: &[f64]) {
        self.count += 1;
        if violation > self.worst {
            self.worst = violation;
            self.witness = at.to_vec();
        }
    }

    fn report(self, id: &str, tol: f64, grid: &str) -> CheckReport {
        let status = if self.count == 0 {
            CheckStatus::NotApplicable
        } else if self.worst > tol {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        };
        CheckReport {
            id: id.to_string(),
            status,
            worst: self.worst,
            witness: self.witness,
            grid: grid.to_string(),
        }
    }
}

/// Sampling grid description for the 2-D checkers.
#[derive(Debug, Clone)]
pub struct GridSpec {
    /// Points per axis for the tensor part (half log-spaced, half linear).
    pub n_axis: usize,
    /// Pseudo-random interior samples.
    pub n_random: usize,
    /// Seed for the random cloud.
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_axis: 40,
            n_random: 10_000,
            seed: 42,
        }
    }
}

impl GridSpec {
    fn describe(&self, span1: f64, span2: f64) -> String {
        format!(
            "tensor {}x{} log+linear on [0,{:.3}]x[0,{:.3}] + {} random (seed {})",
            self.n_axis, self.n_axis, span1, span2, self.n_random, self.seed
        )
    }
}

/// Log+linear 1-D spacing on [0, span].
fn axis_points(n: usize, span: f64) -> Vec<f64> {
    let mut pts = Vec::with_capacity(n + 1);
    pts.push(0.0);
    let half = n / 2;
    // log-spaced from span*1e-6 up to span
    for i in 0..half {
        let t = i as f64 / (half.max(2) - 1) as f64;
        pts.push(span * 1e-6 * (1e6f64).powf(t));
    }
    // linear
    for i in 1..=(n - half) {
        pts.push(span * i as f64 / (n - half) as f64);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    pts
}

fn random_cloud(spec: &GridSpec, span1: f64, span2: f64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.n_random)
        .map(|_| (rng.gen::<f64>() * span1, rng.gen::<f64>() * span2))
        .collect()
}

// ---------------------------------------------------------------------------
// 1-D density checks
// ---------------------------------------------------------------------------

/// Checks the 1-D density assumptions on a grid of at least `n` points
/// covering [0, 10 * opening].
pub fn check_psi1d(law: &CohesiveLaw1D, n: usize) -> Result<Vec<CheckReport>, LawError> {
    let span = 10.0 * law.reference_opening();
    let n = n.max(1000);
    let grid = format!("{} log+linear points on [0,{:.3}]", n, span);
    let pts = axis_points(n, span);
    let zbar = law.concavity_threshold();
    let opening = law.opening();

    let mut nonneg = Acc::new();
    let mut monotone = Acc::new();
    let mut assumption_a = Acc::new();
    let mut assumption_b = Acc::new();
    let mut concavity = Acc::new();
    let mut fd = Acc::new();

    // law-specific bound for y * psi'(y): the grid max over [0, opening] with
    // headroom; for infinite-opening laws the tail is covered by the span.
    let mut y_dpsi_peak = 0.0f64;
    for &y in &pts {
        let (_, d1, _) = law.eval(y)?;
        y_dpsi_peak = y_dpsi_peak.max(y * d1);
    }
    let y_dpsi_bound = 1.0 + 1.05 * y_dpsi_peak;

    for &y in &pts {
        let (v, d1, d2) = law.eval(y)?;
        let at = [y];
        nonneg.push((-v).max(v - 1.0), &at);
        monotone.push(-d1, &at);
        assumption_a.push(-(d1 - y * d2), &at);
        assumption_b.push(y * d1 - y_dpsi_bound, &at);
        if y >= zbar {
            concavity.push(d2, &at);
        }
        // finite-difference consistency away from kink points
        let h = FD_STEP * law.reference_opening().max(1.0);
        let near_kink = |p: f64| {
            (y - p).abs() < 10.0 * h || ((y - h) - p) * ((y + h) - p) < 0.0
        };
        let kinky = near_kink(zbar) || (opening.is_finite() && near_kink(opening));
        if y > h && !kinky {
            let (vp, _, _) = law.eval(y + h)?;
            let (vm, _, _) = law.eval(y - h)?;
            let fd1 = (vp - vm) / (2.0 * h);
            fd.push((d1 - fd1).abs() - TOL_FD * (1.0 + d1.abs()), &at);
        }
    }

    Ok(vec![
        nonneg.report("psi-range", TOL_SIGN, &grid),
        monotone.report("psi-monotone", TOL_SIGN, &grid),
        assumption_a.report("psi-assumption-a", TOL_SIGN, &grid),
        assumption_b.report("psi-assumption-b", 0.0, &grid),
        concavity.report("psi-concavity", TOL_SIGN, &grid),
        fd.report("psi-fd-consistency", 0.0, &grid),
    ])
}

// ---------------------------------------------------------------------------
// Loading density checks (Psi1-Psi6)
// ---------------------------------------------------------------------------

fn spans(density: &LoadingDensity) -> (f64, f64) {
    (
        10.0 * density.psi1.reference_opening(),
        10.0 * density.psi2.reference_opening(),
    )
}

pub fn check_loading_density(
    density: &LoadingDensity,
    spec: &GridSpec,
) -> Result<Vec<CheckReport>, LawError> {
    let (span1, span2) = spans(density);
    let grid = spec.describe(span1, span2);
    let axis1 = axis_points(spec.n_axis, span1);
    let axis2 = axis_points(spec.n_axis, span2);
    let mut samples: Vec<(f64, f64)> = Vec::new();
    for &a in &axis1 {
        for &b in &axis2 {
            samples.push((a, b));
        }
    }
    samples.extend(random_cloud(spec, span1, span2));

    let zbar1 = density.psi1.concavity_threshold();
    let zbar2 = density.psi2.concavity_threshold();

    let mut psi1 = Acc::new();
    let mut psi2 = Acc::new();
    let mut psi3 = Acc::new();
    let mut psi4 = Acc::new();
    let mut psi6 = Acc::new();

    psi1.push(density.eval(0.0, 0.0)?.value.abs(), &[0.0, 0.0]);

    let f = &density.coupling;
    let sup_bound = f.phi1 + f.phi2;
    let mut grad_peak = 0.0f64;
    let mut inner_cross = 0.0f64;
    let mut outer_cross = f64::NEG_INFINITY;
    for &(y1, y2) in &samples {
        let e = density.eval(y1, y2)?;
        let at = [y1, y2];
        // Psi2: bounded with finite Lipschitz constant
        psi2.push((-e.value).max(e.value - sup_bound - TOL_SIGN), &at);
        grad_peak = grad_peak.max(e.grad[0].abs()).max(e.grad[1].abs());
        // Psi3: d_i Psi >= (y_i d_ii Psi) v 0 and d12 Psi <= (y_i d_iij Psi) ^ 0
        let v3 = (-e.grad[0])
            .max(-(e.grad[0] - y1 * e.diag[0]))
            .max(-e.grad[1])
            .max(-(e.grad[1] - y2 * e.diag[1]))
            .max(e.d12)
            .max(e.d12 - y1 * e.third[0])
            .max(e.d12 - y2 * e.third[1]);
        psi3.push(v3, &at);
        // Psi4: (y1+y2)|d12 Psi| stays bounded; the far field must not exceed
        // the near field
        let cross = (y1 + y2) * e.d12.abs();
        if y1 + y2 > 0.5 * (span1 + span2) {
            outer_cross = outer_cross.max(cross);
        } else {
            inner_cross = inner_cross.max(cross);
        }
        // Psi6: 2 d_ii Psi <= (y_j d_iij Psi) ^ 0 for y_i past the elastic
        // threshold
        if y1 >= zbar1 {
            psi6.push(
                (2.0 * e.diag[0]).max(2.0 * e.diag[0] - y2 * e.third[0]),
                &at,
            );
        }
        if y2 >= zbar2 {
            psi6.push(
                (2.0 * e.diag[1]).max(2.0 * e.diag[1] - y1 * e.third[1]),
                &at,
            );
        }
    }
    psi2.push(
        if grad_peak.is_finite() { -grad_peak } else { 1.0 },
        &[f64::NAN, f64::NAN],
    );
    psi4.push(outer_cross - inner_cross.max(TOL_SIGN), &[span1, span2]);

    // Psi5: gradients vanish at infinity iff the coupling kills the F-edge
    // derivatives, d1 F(.,1) = phi1 - alpha and d2 F(1,.) = phi2 - alpha.
    let mut psi5 = Acc::new();
    psi5.push((f.phi1 - f.alpha).abs() - TOL_EXACT, &[span1, 1.0]);
    psi5.push((f.phi2 - f.alpha).abs() - TOL_EXACT, &[1.0, span2]);

    Ok(vec![
        psi1.report("Psi1", TOL_EXACT, &grid),
        psi2.report("Psi2", TOL_SIGN, &grid),
        psi3.report("Psi3", TOL_SIGN, &grid),
        psi4.report("Psi4", TOL_SIGN, &grid),
        psi5.report("Psi5", 0.0, &grid),
        psi6.report("Psi6", TOL_SIGN, &grid),
    ])
}

// ---------------------------------------------------------------------------
// Constructed potential checks (Phi1-Phi9)
// ---------------------------------------------------------------------------

pub fn check_constructed_potential(
    law: &MixedModeLaw,
    spec: &GridSpec,
) -> Result<Vec<CheckReport>, LawError> {
    let density = &law.density;
    let (span1, span2) = spans(density);
    let grid = spec.describe(span1, span2);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let zbar1 = density.psi1.concavity_threshold();
    let zbar2 = density.psi2.concavity_threshold();

    let mut phi1 = Acc::new();
    let mut phi2 = Acc::new();
    let mut phi3 = Acc::new();
    let mut phi4 = Acc::new();
    let mut phi5 = Acc::new();
    let mut phi6 = Acc::new();
    let mut phi7 = Acc::new();
    let mut phi8 = Acc::new();
    let mut phi9 = Acc::new();

    phi1.push(
        law.phi(0.0, 0.0, HistoryPair::default())?.abs(),
        &[0.0, 0.0, 0.0, 0.0],
    );

    let sup_psi = density.eval(span1, span2)?.value.max(
        density.coupling.phi1 + density.coupling.phi2,
    );
    let mut grad_bound = 0.0f64;

    // histories concentrate in the cohesive-active range [0, ~opening] so
    // that the unloading branches carry nontrivial coefficients; openings mix
    // near-field and far-field samples
    let ref1 = density.psi1.reference_opening();
    let ref2 = density.psi2.reference_opening();
    let n = spec.n_random.max(1000);
    for _ in 0..n {
        let z1 = rng.gen::<f64>() * 1.2 * ref1 + 1e-3 * ref1;
        let z2 = rng.gen::<f64>() * 1.2 * ref2 + 1e-3 * ref2;
        let z = HistoryPair::new(z1, z2)?;
        let far = rng.gen::<f64>() < 0.3;
        let y1 = rng.gen::<f64>() * if far { span1 } else { 1.5 * ref1 };
        let y2 = rng.gen::<f64>() * if far { span2 } else { 1.5 * ref2 };
        let at = [y1, y2, z1, z2];

        let v = law.phi(y1, y2, z)?;
        let g = law.grad_phi(y1, y2, z)?;
        let dz = law.dz_phi(y1, y2, z)?;

        // Phi2: 0 <= Phi <= sup Psi, plus continuity at the nearest region
        // boundary
        phi2.push((-v).max(v - sup_psi - TOL_SIGN), &at);
        let eps = 1e-9 * span1;
        if z1 > 2.0 * eps {
            let a = law.phi(z1, y2, z)?;
            let b = law.phi(z1 - eps, y2, z)?;
            phi2.push((a - b).abs() / (1.0 + a.abs()) - 1e-6, &[z1, y2, z1, z2]);
        }

        // Phi3: uniform Lipschitz bound in y
        grad_bound = grad_bound.max(g[0].abs()).max(g[1].abs());

        // Phi4: replacement identity, evaluated on both sides
        let joined = z.join(y1, y2);
        phi4.push((v - law.phi(y1, y2, joined)?).abs(), &at);

        // Phi5 / Phi6: monotonicity in z and y
        phi5.push((-dz[0]).max(-dz[1]), &at);
        phi6.push((-g[0]).max(-g[1]), &at);

        // Phi7: quadratic/convex below z, concave above max(z, zbar), along
        // each direction
        let h1 = z1 / 6.0;
        if h1 > 0.0 {
            // unloading side: three second differences of a quadratic agree
            let q: Vec<f64> = (0..5)
                .map(|k| law.phi(k as f64 * h1, y2, z))
                .collect::<Result<_, _>>()?;
            let d2a = q[0] - 2.0 * q[1] + q[2];
            let d2b = q[1] - 2.0 * q[2] + q[3];
            let d2c = q[2] - 2.0 * q[3] + q[4];
            let scale = 1.0 + q.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            phi7.push(
                ((d2a - d2b).abs().max((d2b - d2c).abs()) / scale - TOL_SIGN)
                    .max(-d2a / scale - TOL_SIGN),
                &at,
            );
        }
        // loading-side concavity via monotonicity of the exact gradient:
        // concave in y_l iff d_{y_l} Phi is nonincreasing there (robust to
        // the C^{1,1} kinks of the densities)
        let y1_load = z1.max(zbar1) + rng.gen::<f64>() * ref1;
        let hl = ref1 * 1e-3;
        let ga = law.grad_phi(y1_load, y2, z)?;
        let gb = law.grad_phi(y1_load + hl, y2, z)?;
        phi7.push((gb[0] - ga[0]) / hl - TOL_SIGN / hl, &[y1_load, y2, z1, z2]);
        let y2_load = z2.max(zbar2) + rng.gen::<f64>() * ref2;
        let hl2 = ref2 * 1e-3;
        let ea = law.grad_phi(y1, y2_load, z)?;
        let eb = law.grad_phi(y1, y2_load + hl2, z)?;
        phi7.push((eb[1] - ea[1]) / hl2 - TOL_SIGN / hl2, &[y1, y2_load, z1, z2]);

        // Phi8: y_j -> d_{y_l} Phi is nonincreasing (l != j)
        let hj = span2 * FD_STEP;
        if y2 + hj <= span2 {
            let gp = law.grad_phi(y1, y2 + hj, z)?;
            phi8.push((gp[0] - g[0]) / hj - TOL_SIGN / hj, &at);
        }
        let hi = span1 * FD_STEP;
        if y1 + hi <= span1 {
            let gp = law.grad_phi(y1 + hi, y2, z)?;
            phi8.push((gp[1] - g[1]) / hi - TOL_SIGN / hi, &at);
        }

        // Phi9: decay along rays
        let far = law.grad_phi(span1, span2, z)?;
        phi9.push(
            far[0].abs().max(far[1].abs()) - TOL_FD * (1.0 + grad_bound),
            &[span1, span2, z1, z2],
        );
    }
    phi3.push(
        if grad_bound.is_finite() { -grad_bound } else { 1.0 },
        &[f64::NAN; 4],
    );

    Ok(vec![
        phi1.report("Phi1", TOL_EXACT, &grid),
        phi2.report("Phi2", 0.0, &grid),
        phi3.report("Phi3", 0.0, &grid),
        phi4.report("Phi4", 1e-14, &grid),
        phi5.report("Phi5", TOL_SIGN, &grid),
        phi6.report("Phi6", TOL_SIGN, &grid),
        phi7.report("Phi7", 0.0, &grid),
        phi8.report("Phi8", 0.0, &grid),
        phi9.report("Phi9", 0.0, &grid),
    ])
}

// ---------------------------------------------------------------------------
// Tension checks (S1-S3, T1-T6)
// ---------------------------------------------------------------------------

pub fn check_tension(law: &MixedModeLaw, spec: &GridSpec) -> Result<Vec<CheckReport>, LawError> {
    let density = &law.density;
    let (span1, span2) = spans(density);
    let grid = spec.describe(span1, span2);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let zbar1 = density.psi1.concavity_threshold();
    let zbar2 = density.psi2.concavity_threshold();

    let mut s1 = Acc::new();
    let mut s2 = Acc::new();
    let mut s3 = Acc::new();
    let mut t1 = Acc::new();
    let mut t2 = Acc::new();
    let mut t3 = Acc::new();
    let mut t4 = Acc::new();
    let mut t5 = Acc::new();
    let mut t6 = Acc::new();

    let ref1 = density.psi1.reference_opening();
    let ref2 = density.psi2.reference_opening();
    let mut s_peak = 0.0f64;
    let mut t_peak = 0.0f64;
    let n = spec.n_random.max(1000);
    for _ in 0..n {
        let far = rng.gen::<f64>() < 0.3;
        let y1 = rng.gen::<f64>() * if far { span1 } else { 1.5 * ref1 };
        let y2 = rng.gen::<f64>() * if far { span2 } else { 1.5 * ref2 };
        let z1 = rng.gen::<f64>() * 1.2 * ref1 + 1e-3 * ref1;
        let z2 = rng.gen::<f64>() * 1.2 * ref2 + 1e-3 * ref2;
        let z = HistoryPair::new(z1, z2)?;
        let at = [y1, y2, z1, z2];

        let s = density.loading_tension(y1, y2)?;
        let t = law.tension(y1, y2, z)?;
        s_peak = s_peak.max(s[0]).max(s[1]);
        t_peak = t_peak.max(t[0].abs()).max(t[1].abs());

        // S1 / T1: bounded (no NaN/inf) and continuous across the region
        // boundary
        s1.push(
            if s[0].is_finite() && s[1].is_finite() { -1.0 } else { 1.0 },
            &at,
        );
        let eps = 1e-9 * span1;
        if z1 > 2.0 * eps {
            let a = law.tension(z1, y2, z)?;
            let b = law.tension(z1 - eps, y2, z)?;
            t1.push(
                (a[0] - b[0]).abs().max((a[1] - b[1]).abs()) / (1.0 + t_peak) - 1e-6,
                &[z1, y2, z1, z2],
            );
        }

        // S3: components nonincreasing (own direction only past the elastic
        // threshold)
        let h1 = span1 * FD_STEP;
        let h2 = span2 * FD_STEP;
        let sp1 = density.loading_tension(y1 + h1, y2)?;
        let sp2 = density.loading_tension(y1, y2 + h2)?;
        if y1 >= zbar1 {
            s3.push((sp1[0] - s[0]) / h1 - TOL_SIGN / h1, &at);
        }
        s3.push((sp1[1] - s[1]) / h1 - TOL_SIGN / h1, &at);
        s3.push((sp2[0] - s[0]) / h2 - TOL_SIGN / h2, &at);
        if y2 >= zbar2 {
            s3.push((sp2[1] - s[1]) / h2 - TOL_SIGN / h2, &at);
        }

        // T2: replacement identity
        let tj = law.tension(y1, y2, z.join(y1, y2))?;
        t2.push((t[0] - tj[0]).abs().max((t[1] - tj[1]).abs()), &at);

        // T3: nonnegative
        t3.push((-t[0]).max(-t[1]), &at);

        // T4: exactly linear through the unloading zone: zero second
        // difference of three collinear samples, nondecreasing there, and
        // nonincreasing on the loading side past the threshold
        let ta = law.tension(0.0, y2, z)?;
        let tb = law.tension(z1 / 2.0, y2, z)?;
        let tc = law.tension(z1, y2, z)?;
        t4.push((ta[0] - 2.0 * tb[0] + tc[0]).abs() - TOL_EXACT, &at);
        t4.push(ta[0] - TOL_EXACT, &at); // linear through the origin
        t4.push((tb[0] - tc[0]) - TOL_SIGN, &at); // nondecreasing in unloading
        let ua = law.tension(y1, 0.0, z)?;
        let ub = law.tension(y1, z2 / 2.0, z)?;
        let uc = law.tension(y1, z2, z)?;
        t4.push((ua[1] - 2.0 * ub[1] + uc[1]).abs() - TOL_EXACT, &at);
        let y1_load = z1.max(zbar1) + rng.gen::<f64>() * ref1;
        let la = law.tension(y1_load, y2, z)?;
        let lb = law.tension(y1_load + h1, y2, z)?;
        t4.push((lb[0] - la[0]) / h1 - TOL_SIGN / h1, &[y1_load, y2, z1, z2]);

        // T5: cross-direction nonincreasing
        let tp2 = law.tension(y1, (y2 + h2).min(span2), z)?;
        t5.push((tp2[0] - t[0]) / h2 - TOL_SIGN / h2, &at);
        let tp1 = law.tension((y1 + h1).min(span1), y2, z)?;
        t5.push((tp1[1] - t[1]) / h1 - TOL_SIGN / h1, &at);

        // S2 / T6: decay at radius 10x opening
        let sf = density.loading_tension(span1, span2)?;
        s2.push((-s[0]).max(-s[1]), &at);
        s2.push(
            sf[0].max(sf[1]) - TOL_FD * (1.0 + s_peak),
            &[span1, span2, z1, z2],
        );
        let tf = law.tension(span1, span2, z)?;
        t6.push(
            tf[0].abs().max(tf[1].abs()) - TOL_FD * (1.0 + t_peak),
            &[span1, span2, z1, z2],
        );
    }

    Ok(vec![
        s1.report("S1", 0.0, &grid),
        s2.report("S2", 0.0, &grid),
        s3.report("S3", 0.0, &grid),
        t1.report("T1", 0.0, &grid),
        t2.report("T2", 1e-14, &grid),
        t3.report("T3", TOL_EXACT, &grid),
        t4.report("T4", 0.0, &grid),
        t5.report("T5", 0.0, &grid),
        t6.report("T6", 0.0, &grid),
    ])
}

// ---------------------------------------------------------------------------
// Gradient dichotomy
// ---------------------------------------------------------------------------

/// Reports the maximum gap between the non-potential tension T and grad Phi
/// over the grid. The two coincide (to closed-form precision) exactly when the
/// directions are uncoupled; for coupled densities the gap must be bounded
/// away from zero.
pub fn check_gradient_consistency(
    tension_law: &MixedModeLaw,
    potential_law: &MixedModeLaw,
    spec: &GridSpec,
) -> Result<CheckReport, LawError> {
    if tension_law.density.coupling.phi1 != potential_law.density.coupling.phi1
        || tension_law.density.coupling.phi2 != potential_law.density.coupling.phi2
        || tension_law.density.coupling.alpha != potential_law.density.coupling.alpha
        || tension_law.density.psi1 != potential_law.density.psi1
        || tension_law.density.psi2 != potential_law.density.psi2
    {
        return Err(LawError::IncompatibleLaws);
    }
    let density = &tension_law.density;
    let (span1, span2) = spans(density);
    let grid = spec.describe(span1, span2);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let ref1 = density.psi1.reference_opening();
    let ref2 = density.psi2.reference_opening();
    let mut gap = 0.0f64;
    let mut witness = [0.0; 4];
    let mut peak = 0.0f64;
    for _ in 0..spec.n_random.max(1000) {
        let z1 = rng.gen::<f64>() * 1.2 * ref1 + 1e-3 * ref1;
        let z2 = rng.gen::<f64>() * 1.2 * ref2 + 1e-3 * ref2;
        let z = HistoryPair::new(z1, z2)?;
        let far = rng.gen::<f64>() < 0.3;
        let y1 = rng.gen::<f64>() * if far { span1 } else { 1.5 * ref1 };
        let y2 = rng.gen::<f64>() * if far { span2 } else { 1.5 * ref2 };
        let t = tension_law.tension(y1, y2, z)?;
        let g = potential_law.grad_phi(y1, y2, z)?;
        peak = peak.max(t[0]).max(t[1]).max(g[0].abs()).max(g[1].abs());
        let d = (t[0] - g[0]).abs().max((t[1] - g[1]).abs());
        if d > gap {
            gap = d;
            witness = [y1, y2, z1, z2];
        }
    }

    let uncoupled = density.coupling.alpha == 0.0;
    let consistent = if uncoupled {
        gap <= 1e-10
    } else {
        gap > 1e-4 * peak
    };
    Ok(CheckReport {
        id: "gradient-consistency".to_string(),
        status: if consistent {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        worst: gap,
        witness: witness.to_vec(),
        grid,
    })
}

/// Runs every applicable family for a law and merges the reports in a fixed
/// order: 1-D densities, Psi, then Phi (potential) or S/T (non-potential).
pub fn check_all(law: &MixedModeLaw, spec: &GridSpec) -> Result<Vec<CheckReport>, LawError> {
    let mut out = Vec::new();
    for (tag, psi) in [("psi1", &law.density.psi1), ("psi2", &law.density.psi2)] {
        for mut r in check_psi1d(psi, 1000)? {
            r.id = format!("{}:{}", tag, r.id);
            out.push(r);
        }
    }
    out.extend(check_loading_density(&law.density, spec)?);
    match law.mode() {
        crate::mixedmode::CouplingMode::Potential => {
            out.extend(check_constructed_potential(law, spec)?);
        }
        crate::mixedmode::CouplingMode::NonPotential => {
            out.extend(check_tension(law, spec)?);
        }
    }
    Ok(out)
}

/// Hand-constructed counterexamples, one per hypothesis family. Every
/// parameter-admissible law built from the bilinear coupling provably
/// satisfies the tension conditions, so the tension fixture flips the sign of
/// the coupling term directly.
pub mod fixtures {
    use super::*;
    use crate::mixedmode::{CouplingF, CouplingMode};

    /// 1-D density with a steep initial-slope indicator: the slope condition
    /// psi' >= y psi'' fails below the stress peak (targets
    /// `psi-assumption-a`).
    pub fn density_steep_slope() -> CohesiveLaw1D {
        CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.6, 2.0).expect("valid parameters")
    }

    /// Partially coupled density: the edge derivatives of the coupling do not
    /// vanish, so the gradient cannot decay at infinity (targets `Psi5`).
    pub fn density_partial_coupling() -> LoadingDensity {
        let psi = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 2.0).expect("valid parameters");
        LoadingDensity::new(
            CouplingF::new(2.0, 2.0, 0.5, CouplingMode::Potential).expect("valid coupling"),
            psi.clone(),
            psi,
        )
    }

    /// Potential-mode law with mismatched fracture energies: monotonicity of
    /// the constructed potential fails (targets `Phi5`/`Phi6`).
    pub fn potential_mismatched_energies() -> MixedModeLaw {
        let psi1 = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 6.0).expect("valid parameters");
        let psi2 = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 2.0).expect("valid parameters");
        MixedModeLaw::new(LoadingDensity::new(
            CouplingF::ppr(6.0, 2.0, CouplingMode::Potential).expect("valid coupling"),
            psi1,
            psi2,
        ))
    }

    /// Tension law with a sign-flipped coupling term (positive cross
    /// derivative of the coupling): the loading tension increases in the
    /// cross direction (targets `S3`, and `T5` downstream).
    pub fn tension_sign_flipped_coupling() -> MixedModeLaw {
        let psi = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 2.0).expect("valid parameters");
        let mut coupling =
            CouplingF::new(2.0, 2.0, 0.0, CouplingMode::NonPotential).expect("valid coupling");
        coupling.alpha = -1.0;
        MixedModeLaw::new(LoadingDensity::new(coupling, psi.clone(), psi))
    }
}
