//! Desk-scale quasistatic solver for two elastic laminates coupled through
//! the mixed-mode cohesive interface law.
//!
//! Two discrete schemes are provided: incremental global minimization of the
//! total energy (energetic scheme) and a damped fixed-point iteration on the
//! equilibrium system (equilibrium scheme).

pub mod mesh;
pub mod minimize;

use crate::error::SolverError;
use crate::mixedmode::{HistoryPair, MixedModeLaw};
use mesh::{EdgeSide, RectMesh};
use minimize::{minimize, MinimizeOutcome};
use nalgebra::{DMatrix, DVector};

/// Isotropic Lame parameters of one layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lame {
    pub lambda: f64,
    pub mu: f64,
}

/// A clamped boundary side with per-layer displacement amplitudes; the
/// prescribed value at time t is `amplitude * program(t)`. Later clamps
/// override earlier ones on shared (corner) nodes.
#[derive(Debug, Clone)]
pub struct DirichletClamp {
    pub side: EdgeSide,
    /// Amplitude vectors for layer 1 and layer 2.
    pub amplitude: [[f64; 2]; 2],
}

/// Scalar loading multiplier, piecewise linear in time through the given
/// (t, value) knots, constant outside their span.
#[derive(Debug, Clone)]
pub struct LoadProgram {
    pub knots: Vec<(f64, f64)>,
}

impl LoadProgram {
    pub fn ramp(t_end: f64, value: f64) -> Self {
        Self {
            knots: vec![(0.0, 0.0), (t_end, value)],
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        assert!(!self.knots.is_empty());
        if t <= self.knots[0].0 {
            return self.knots[0].1;
        }
        for w in self.knots.windows(2) {
            let ((t0, v0), (t1, v1)) = (w[0], w[1]);
            if t <= t1 {
                if t1 == t0 {
                    return v1;
                }
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
            }
        }
        self.knots.last().unwrap().1
    }
}

/// The full problem description: geometry, materials, boundary program,
/// interface law, and time grid.
#[derive(Debug, Clone)]
pub struct LaminateProblem {
    pub mesh: RectMesh,
    pub lame: [Lame; 2],
    pub clamps: Vec<DirichletClamp>,
    pub program: LoadProgram,
    pub law: MixedModeLaw,
    pub tau: f64,
    pub n_steps: usize,
}

/// Tolerances and iteration limits for both schemes.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Stationarity tolerance for the energetic minimization, in the
    /// energy-dual norm.
    pub tol_min: f64,
    pub max_iter_min: usize,
    /// Relative fixed-point tolerance for the equilibrium scheme.
    pub tol_fp: f64,
    pub max_iter_fp: usize,
    /// Initial damping of the fixed-point update.
    pub theta: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol_min: 1e-8,
            max_iter_min: 5000,
            tol_fp: 1e-8,
            max_iter_fp: 200,
            theta: 0.5,
        }
    }
}

/// State of the evolution at one time step.
#[derive(Debug, Clone)]
pub struct QuasistaticState {
    /// Nodal displacements per layer, dof (node n, component d) at 2n + d.
    pub u: [DVector<f64>; 2],
    /// Irreversible history pair at the one quadrature point of each element.
    pub gamma: Vec<HistoryPair>,
    pub t: f64,
}

/// Per-step energy ledger.
#[derive(Debug, Clone, Copy)]
pub struct LedgerRow {
    pub t: f64,
    pub elastic: f64,
    pub cohesive: f64,
    pub total: f64,
    pub work: f64,
    pub balance: f64,
    pub max_gamma1: f64,
    pub max_gamma2: f64,
    pub max_slip: f64,
}

/// Outcome of one incremental step.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub state: QuasistaticState,
    pub converged: bool,
    pub iterations: usize,
    pub residual: f64,
}

/// Which discrete scheme drives the evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Energetic,
    Equilibrium,
}

/// A full trajectory with its ledger.
#[derive(Debug, Clone)]
pub struct Evolution {
    pub states: Vec<QuasistaticState>,
    pub ledger: Vec<LedgerRow>,
}

impl Evolution {
    /// The per-step ledger as CSV.
    pub fn ledger_csv(&self) -> String {
        let mut out =
            String::from("t,elastic,cohesive,total,work,balance_residual,max_gamma1,max_gamma2,max_slip\n");
        for r in &self.ledger {
            out.push_str(&format!(
                "{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e}\n",
                r.t,
                r.elastic,
                r.cohesive,
                r.total,
                r.work,
                r.balance,
                r.max_gamma1,
                r.max_gamma2,
                r.max_slip
            ));
        }
        out
    }

    /// Per-node fields of the final state as CSV.
    pub fn final_fields_csv(&self, mesh: &RectMesh) -> String {
        let mut out = String::from("x,y,u1x,u1y,u2x,u2y,slip1,slip2\n");
        if let Some(s) = self.states.last() {
            for (n, p) in mesh.nodes.iter().enumerate() {
                let (u1x, u1y) = (s.u[0][2 * n], s.u[0][2 * n + 1]);
                let (u2x, u2y) = (s.u[1][2 * n], s.u[1][2 * n + 1]);
                out.push_str(&format!(
                    "{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e}\n",
                    p[0],
                    p[1],
                    u1x,
                    u1y,
                    u2x,
                    u2y,
                    u1x - u2x,
                    u1y - u2y
                ));
            }
        }
        out
    }
}

/// Assembled discrete operators: full stiffness per layer, the free/fixed dof
/// partition (shared by both layers), and Cholesky factors of the
/// free-free blocks.
pub struct Assembled {
    pub n_dofs: usize,
    pub a: [DMatrix<f64>; 2],
    pub free: Vec<usize>,
    pub fixed: Vec<usize>,
    /// Per fixed dof, per layer: the amplitude multiplied by the program.
    pub fixed_amp: [Vec<f64>; 2],
    pub chol: [nalgebra::Cholesky<f64, nalgebra::Dyn>; 2],
    free_pos: Vec<Option<usize>>,
}

impl Assembled {
    pub fn n_free(&self) -> usize {
        self.free.len()
    }

    /// Full nodal lift at time t: prescribed values on fixed dofs, zero on
    /// free dofs.
    pub fn lift(&self, program: &LoadProgram, t: f64) -> [DVector<f64>; 2] {
        let lam = program.value(t);
        let mut out = [DVector::zeros(self.n_dofs), DVector::zeros(self.n_dofs)];
        for layer in 0..2 {
            for (k, &dof) in self.fixed.iter().enumerate() {
                out[layer][dof] = self.fixed_amp[layer][k] * lam;
            }
        }
        out
    }

    fn scatter(&self, layer: usize, x_free: &[f64], lift: &DVector<f64>) -> DVector<f64> {
        debug_assert_eq!(x_free.len(), self.free.len());
        let mut u = lift.clone_owned();
        let _ = layer;
        for (k, &dof) in self.free.iter().enumerate() {
            u[dof] = x_free[k];
        }
        u
    }

    fn gather(&self, u: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.free.len(), self.free.iter().map(|&d| u[d]))
    }
}

/// The 6x6 stiffness of one linear triangle:
/// a(u, v) = int lambda div u div v + 2 mu e(u):e(v).
pub fn element_stiffness(area: f64, grads: [[f64; 2]; 3], lame: Lame) -> [[f64; 6]; 6] {
    let mut k = [[0.0; 6]; 6];
    for i in 0..3 {
        for a in 0..2 {
            for j in 0..3 {
                for b in 0..2 {
                    let dot = grads[i][0] * grads[j][0] + grads[i][1] * grads[j][1];
                    let kron = if a == b { dot } else { 0.0 };
                    k[2 * i + a][2 * j + b] = area
                        * (lame.lambda * grads[i][a] * grads[j][b]
                            + lame.mu * (grads[i][b] * grads[j][a] + kron));
                }
            }
        }
    }
    k
}

/// Assembles the per-layer stiffness operators and the Dirichlet partition.
pub fn assemble(problem: &LaminateProblem) -> Result<Assembled, SolverError> {
    let mesh = &problem.mesh;
    let n_dofs = 2 * mesh.n_nodes();
    let mut a = [DMatrix::zeros(n_dofs, n_dofs), DMatrix::zeros(n_dofs, n_dofs)];
    for e in 0..mesh.n_elements() {
        let (area, grads) = mesh.element_geometry(e);
        let tri = mesh.tris[e];
        for layer in 0..2 {
            let ke = element_stiffness(area, grads, problem.lame[layer]);
            for i in 0..3 {
                for ai in 0..2 {
                    for j in 0..3 {
                        for bj in 0..2 {
                            a[layer][(2 * tri[i] + ai, 2 * tri[j] + bj)] +=
                                ke[2 * i + ai][2 * j + bj];
                        }
                    }
                }
            }
        }
    }

    // Dirichlet partition: later clamps override earlier ones per node.
    let mut amp: Vec<Option<[[f64; 2]; 2]>> = vec![None; mesh.n_nodes()];
    for clamp in &problem.clamps {
        for n in mesh.side_nodes(clamp.side) {
            amp[n] = Some(clamp.amplitude);
        }
    }
    let mut fixed = Vec::new();
    let mut fixed_amp = [Vec::new(), Vec::new()];
    let mut free = Vec::new();
    for n in 0..mesh.n_nodes() {
        match amp[n] {
            Some(v) => {
                for d in 0..2 {
                    fixed.push(2 * n + d);
                    fixed_amp[0].push(v[0][d]);
                    fixed_amp[1].push(v[1][d]);
                }
            }
            None => {
                free.push(2 * n);
                free.push(2 * n + 1);
            }
        }
    }
    if fixed.is_empty() {
        return Err(SolverError::SingularOperator);
    }

    let mut free_pos = vec![None; n_dofs];
    for (k, &d) in free.iter().enumerate() {
        free_pos[d] = Some(k);
    }

    let nf = free.len();
    let mut chol = Vec::with_capacity(2);
    for layer in 0..2 {
        let mut aff = DMatrix::zeros(nf, nf);
        for (i, &di) in free.iter().enumerate() {
            for (j, &dj) in free.iter().enumerate() {
                aff[(i, j)] = a[layer][(di, dj)];
            }
        }
        chol.push(nalgebra::Cholesky::new(aff).ok_or(SolverError::SingularOperator)?);
    }
    let c1 = chol.pop().unwrap();
    let c0 = chol.pop().unwrap();

    Ok(Assembled {
        n_dofs,
        a,
        free,
        fixed,
        fixed_amp,
        chol: [c0, c1],
        free_pos,
    })
}

/// Slip vector at the barycenter of element `e`.
fn element_slip(mesh: &RectMesh, u: &[DVector<f64>; 2], e: usize) -> [f64; 2] {
    let tri = mesh.tris[e];
    let mut d = [0.0; 2];
    for &n in &tri {
        for l in 0..2 {
            d[l] += (u[0][2 * n + l] - u[1][2 * n + l]) / 3.0;
        }
    }
    d
}

/// Total energy (elastic, cohesive, sum) of a state at its own time.
///
/// Errors with `BoundaryMismatch` if the Dirichlet trace is violated beyond
/// 1e-10.
pub fn total_energy(
    problem: &LaminateProblem,
    asm: &Assembled,
    state: &QuasistaticState,
) -> Result<(f64, f64, f64), SolverError> {
    let lift = asm.lift(&problem.program, state.t);
    let mut worst = 0.0f64;
    for layer in 0..2 {
        for &dof in &asm.fixed {
            worst = worst.max((state.u[layer][dof] - lift[layer][dof]).abs());
        }
    }
    if worst > 1e-10 {
        return Err(SolverError::BoundaryMismatch(worst));
    }

    let mut elastic = 0.0;
    for layer in 0..2 {
        elastic += 0.5 * state.u[layer].dot(&(&asm.a[layer] * &state.u[layer]));
    }
    let mut cohesive = 0.0;
    for e in 0..problem.mesh.n_elements() {
        let (area, _) = problem.mesh.element_geometry(e);
        let d = element_slip(&problem.mesh, &state.u, e);
        cohesive += area
            * problem
                .law
                .phi(d[0].abs(), d[1].abs(), state.gamma[e])?;
    }
    Ok((elastic, cohesive, elastic + cohesive))
}

/// Updates the history: gamma^k = gamma^{k-1} v g(delta) per element.
fn updated_gamma(
    problem: &LaminateProblem,
    prev_gamma: &[HistoryPair],
    u: &[DVector<f64>; 2],
) -> Vec<HistoryPair> {
    (0..problem.mesh.n_elements())
        .map(|e| {
            let d = element_slip(&problem.mesh, u, e);
            prev_gamma[e].join(d[0].abs(), d[1].abs())
        })
        .collect()
}

struct EnergeticObjective<'a> {
    problem: &'a LaminateProblem,
    asm: &'a Assembled,
    gamma: &'a [HistoryPair],
    lift: [DVector<f64>; 2],
    /// Smoothing width of |.| used inside the minimizer only.
    eps: f64,
}

impl EnergeticObjective<'_> {
    fn split<'b>(&self, x: &'b DVector<f64>) -> (&'b [f64], &'b [f64]) {
        let nf = self.asm.n_free();
        (&x.as_slice()[..nf], &x.as_slice()[nf..])
    }

    fn full_u(&self, x: &DVector<f64>) -> [DVector<f64>; 2] {
        let (x1, x2) = self.split(x);
        [
            self.asm.scatter(0, x1, &self.lift[0]),
            self.asm.scatter(1, x2, &self.lift[1]),
        ]
    }

    fn eval(&self, x: &DVector<f64>) -> (f64, DVector<f64>) {
        let nf = self.asm.n_free();
        let u = self.full_u(x);
        let mut value = 0.0;
        let mut grad = DVector::zeros(2 * nf);
        for layer in 0..2 {
            let au = &self.asm.a[layer] * &u[layer];
            value += 0.5 * u[layer].dot(&au);
            for (k, &dof) in self.asm.free.iter().enumerate() {
                grad[layer * nf + k] = au[dof];
            }
        }
        let mesh = &self.problem.mesh;
        for e in 0..mesh.n_elements() {
            let (area, _) = mesh.element_geometry(e);
            let d = element_slip(mesh, &u, e);
            let mut y = [0.0; 2];
            let mut dy = [0.0; 2];
            for l in 0..2 {
                let r = (d[l] * d[l] + self.eps * self.eps).sqrt();
                y[l] = r - self.eps;
                dy[l] = d[l] / r;
            }
            let law = &self.problem.law;
            let g = self.gamma[e];
            value += area * law.phi(y[0], y[1], g).expect("opening nonnegative");
            let t = law.grad_phi(y[0], y[1], g).expect("opening nonnegative");
            for &n in &mesh.tris[e] {
                for l in 0..2 {
                    if let Some(k) = self.asm.free_pos[2 * n + l] {
                        let c = area * t[l] * dy[l] / 3.0;
                        grad[k] += c;
                        grad[nf + k] -= c;
                    }
                }
            }
        }
        (value, grad)
    }

    fn precondition(&self, g: &DVector<f64>) -> DVector<f64> {
        let nf = self.asm.n_free();
        let (g1, g2) = self.split(g);
        let s1 = self.asm.chol[0].solve(&DVector::from_column_slice(g1));
        let s2 = self.asm.chol[1].solve(&DVector::from_column_slice(g2));
        let mut out = DVector::zeros(2 * nf);
        out.rows_mut(0, nf).copy_from(&s1);
        out.rows_mut(nf, nf).copy_from(&s2);
        out
    }
}

/// One step of the energetic scheme: approximately minimize the total energy
/// at time t with frozen history, then update the history.
///
/// Multi-start: the lifted previous state and the pure lift; the lower final
/// energy wins. Starting from the lifted previous state guarantees the
/// per-step descent property.
pub fn energetic_step(
    problem: &LaminateProblem,
    asm: &Assembled,
    prev: &QuasistaticState,
    t: f64,
    opts: &SolverOptions,
) -> Result<StepOutcome, SolverError> {
    let obj = EnergeticObjective {
        problem,
        asm,
        gamma: &prev.gamma,
        lift: asm.lift(&problem.program, t),
        eps: 1e-8 * problem.mesh.diameter(),
    };
    let nf = asm.n_free();
    let mut x_prev = DVector::zeros(2 * nf);
    x_prev
        .rows_mut(0, nf)
        .copy_from(&asm.gather(&prev.u[0]));
    x_prev
        .rows_mut(nf, nf)
        .copy_from(&asm.gather(&prev.u[1]));
    let starts = [x_prev, DVector::zeros(2 * nf)];

    let mut best: Option<MinimizeOutcome> = None;
    for x0 in starts {
        let out = minimize(
            |x| obj.eval(x),
            |g| obj.precondition(g),
            x0,
            opts.tol_min,
            opts.max_iter_min,
        );
        let better = match &best {
            None => true,
            Some(b) => out.value < b.value,
        };
        if better {
            best = Some(out);
        }
    }
    let best = best.unwrap();
    let u = obj.full_u(&best.x);
    let gamma = updated_gamma(problem, &prev.gamma, &u);
    Ok(StepOutcome {
        state: QuasistaticState { u, gamma, t },
        converged: best.converged,
        iterations: best.iterations,
        residual: best.residual,
    })
}

/// One step of the equilibrium scheme: damped Picard iteration on the
/// discrete weak form with the traction frozen at the current iterate, then
/// the same history update as the energetic step.
///
/// The subgradient row of the slip map at delta_l = 0 is selected as
/// sign(0) = 0, keeping the map single-valued and force-free at contact.
pub fn equilibrium_step(
    problem: &LaminateProblem,
    asm: &Assembled,
    prev: &QuasistaticState,
    t: f64,
    opts: &SolverOptions,
) -> Result<StepOutcome, SolverError> {
    let lift = asm.lift(&problem.program, t);
    let mesh = &problem.mesh;
    let nf = asm.n_free();

    // Start from the lifted previous state.
    let mut s = [lift[0].clone_owned(), lift[1].clone_owned()];
    for layer in 0..2 {
        for &dof in &asm.free {
            s[layer][dof] = prev.u[layer][dof];
        }
    }

    let mut theta = opts.theta.clamp(1e-6, 1.0);
    let mut last_res = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    let mut residual = f64::INFINITY;

    while iterations < opts.max_iter_fp {
        iterations += 1;
        // Cohesive nodal force on layer 1 (layer 2 gets the opposite sign).
        let mut c: DVector<f64> = DVector::zeros(asm.n_dofs);
        for e in 0..mesh.n_elements() {
            let (area, _) = mesh.element_geometry(e);
            let d = element_slip(mesh, &s, e);
            let tr = problem
                .law
                .traction(d[0].abs(), d[1].abs(), prev.gamma[e])?;
            for &n in &mesh.tris[e] {
                for l in 0..2 {
                    c[2 * n + l] += area * tr[l] * sign0(d[l]) / 3.0;
                }
            }
        }

        // Solve the linear elasticity system of each layer with the cohesive
        // force as load.
        let mut candidate = [lift[0].clone_owned(), lift[1].clone_owned()];
        let mut delta_norm = 0.0;
        let mut s_norm = 0.0;
        for layer in 0..2 {
            let al = &asm.a[layer] * &lift[layer];
            let sgn = if layer == 0 { -1.0 } else { 1.0 };
            let mut rhs = DVector::zeros(nf);
            for (k, &dof) in asm.free.iter().enumerate() {
                rhs[k] = sgn * c[dof] - al[dof];
            }
            let uf = asm.chol[layer].solve(&rhs);
            for (k, &dof) in asm.free.iter().enumerate() {
                candidate[layer][dof] = uf[k];
                let dlt = uf[k] - s[layer][dof];
                delta_norm += dlt * dlt;
                s_norm += s[layer][dof] * s[layer][dof];
            }
        }
        residual = delta_norm.sqrt() / (1.0 + s_norm.sqrt());
        if residual <= opts.tol_fp {
            s = candidate;
            converged = true;
            break;
        }
        if residual > last_res {
            theta = (theta * 0.5).max(1.0 / 64.0);
        } else {
            // Residual shrinking: relax the damping back toward a full step.
            theta = (theta * 1.5).min(1.0);
        }
        last_res = residual;
        for layer in 0..2 {
            for &dof in &asm.free {
                s[layer][dof] = (1.0 - theta) * s[layer][dof] + theta * candidate[layer][dof];
            }
        }
    }

    let gamma = updated_gamma(problem, &prev.gamma, &s);
    Ok(StepOutcome {
        state: QuasistaticState { u: s, gamma, t },
        converged,
        iterations,
        residual,
    })
}

fn sign0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Runs the full quasistatic evolution: an initial step at t = 0 followed by
/// `n_steps` increments of size tau. The ledger records energies, the
/// trapezoidal work integral, and the energy-balance residual
/// |F(t^k) - F(0) - W(t^k)|.
pub fn run_evolution(
    problem: &LaminateProblem,
    scheme: Scheme,
    opts: &SolverOptions,
) -> Result<Evolution, SolverError> {
    let asm = assemble(problem)?;
    let n_dofs = asm.n_dofs;
    let gamma0 = vec![HistoryPair::default(); problem.mesh.n_elements()];
    let mut prev = QuasistaticState {
        u: [DVector::zeros(n_dofs), DVector::zeros(n_dofs)],
        gamma: gamma0,
        t: 0.0,
    };

    let mut states = Vec::with_capacity(problem.n_steps + 1);
    let mut ledger = Vec::with_capacity(problem.n_steps + 1);
    let mut work = 0.0;
    let mut total0 = 0.0;

    for k in 0..=problem.n_steps {
        let t = k as f64 * problem.tau;
        let out = match scheme {
            Scheme::Energetic => energetic_step(problem, &asm, &prev, t, opts)?,
            Scheme::Equilibrium => equilibrium_step(problem, &asm, &prev, t, opts)?,
        };
        if !out.converged {
            return Err(match scheme {
                Scheme::Energetic => SolverError::NonConvergence {
                    iterations: out.iterations,
                    residual: out.residual,
                },
                Scheme::Equilibrium => SolverError::FixedPointStall {
                    iterations: out.iterations,
                    residual: out.residual,
                },
            });
        }
        let state = out.state;

        if k > 0 {
            // Trapezoidal quadrature of the power of the boundary loading.
            let lift_prev = asm.lift(&problem.program, prev.t);
            let lift_now = asm.lift(&problem.program, t);
            for layer in 0..2 {
                let dl = &lift_now[layer] - &lift_prev[layer];
                let au_prev = &asm.a[layer] * &prev.u[layer];
                let au_now = &asm.a[layer] * &state.u[layer];
                work += 0.5 * (au_prev.dot(&dl) + au_now.dot(&dl));
            }
        }

        let (elastic, cohesive, total) = total_energy(problem, &asm, &state)?;
        if k == 0 {
            total0 = total;
        }
        let mut max_gamma1 = 0.0f64;
        let mut max_gamma2 = 0.0f64;
        let mut max_slip = 0.0f64;
        for (e, g) in state.gamma.iter().enumerate() {
            max_gamma1 = max_gamma1.max(g.z1);
            max_gamma2 = max_gamma2.max(g.z2);
            let d = element_slip(&problem.mesh, &state.u, e);
            max_slip = max_slip.max((d[0] * d[0] + d[1] * d[1]).sqrt());
        }
        ledger.push(LedgerRow {
            t,
            elastic,
            cohesive,
            total,
            work,
            balance: (total - total0 - work).abs(),
            max_gamma1,
            max_gamma2,
            max_slip,
        });
        states.push(state.clone());
        prev = state;
    }
    Ok(Evolution { states, ledger })
}

/// Energy norm sqrt(sum_L d_L . A_L d_L) of the difference between two
/// states' displacements, used for scheme cross-validation.
pub fn energy_norm_diff(asm: &Assembled, a: &QuasistaticState, b: &QuasistaticState) -> f64 {
    let mut acc = 0.0;
    for layer in 0..2 {
        let d = &a.u[layer] - &b.u[layer];
        acc += d.dot(&(&asm.a[layer] * &d));
    }
    acc.max(0.0).sqrt()
}
