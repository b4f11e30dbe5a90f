//! The 2-D loading density Psi = F(psi1, psi2), the loading/unloading
//! potential Phi with exact derivatives over the regions R1-R4, the loading
//! tension S, and the non-potential tension T.
//!
//! All evaluation is pure; laws are immutable after construction.

use crate::error::LawError;
use crate::laws1d::CohesiveLaw1D;

/// Which construction a mixed-mode law uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingMode {
    /// Tractions are the gradient of the potential Phi.
    Potential,
    /// Tractions are built directly from the loading tension S.
    NonPotential,
}

/// The bilinear auxiliary function F(xi1, xi2) = Phi1 xi1 + Phi2 xi2 - alpha xi1 xi2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingF {
    pub phi1: f64,
    pub phi2: f64,
    pub alpha: f64,
    pub mode: CouplingMode,
}

impl CouplingF {
    pub fn new(phi1: f64, phi2: f64, alpha: f64, mode: CouplingMode) -> Result<Self, LawError> {
        for (name, v) in [("phi1", phi1), ("phi2", phi2), ("alpha_couple", alpha)] {
            if !(v >= 0.0) {
                return Err(LawError::InvalidParameter {
                    name,
                    value: v,
                    reason: "coupling constants must be nonnegative",
                });
            }
        }
        Ok(Self {
            phi1,
            phi2,
            alpha,
            mode,
        })
    }

    /// PPR-style coupling: alpha = Phi1 v Phi2.
    pub fn ppr(phi1: f64, phi2: f64, mode: CouplingMode) -> Result<Self, LawError> {
        Self::new(phi1, phi2, phi1.max(phi2), mode)
    }

    /// Admissibility of the coupling for the declared mode.
    pub fn admissible(&self) -> bool {
        match self.mode {
            CouplingMode::Potential => self.alpha <= self.phi1.min(self.phi2),
            CouplingMode::NonPotential => self.alpha >= self.phi1.max(self.phi2),
        }
    }

    /// True when dF/dxi1(.,1) = dF/dxi2(1,.) = 0, i.e. gradients vanish at
    /// saturation. Holds iff alpha = Phi1 = Phi2.
    pub fn vanishing_at_saturation(&self) -> bool {
        self.alpha == self.phi1 && self.alpha == self.phi2
    }

    pub fn value(&self, xi1: f64, xi2: f64) -> f64 {
        self.phi1 * xi1 + self.phi2 * xi2 - self.alpha * xi1 * xi2
    }
}

/// Value and derivatives of Psi at a point, through second order plus the two
/// third derivatives needed by dPhi/dz in R4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiEval {
    pub value: f64,
    /// (d1 Psi, d2 Psi)
    pub grad: [f64; 2],
    /// d12 Psi
    pub d12: f64,
    /// (d11 Psi, d22 Psi)
    pub diag: [f64; 2],
    /// (d112 Psi, d122 Psi)
    pub third: [f64; 2],
}

/// The loading potential Psi(y1, y2) = F(psi1(y1), psi2(y2)).
#[derive(Debug, Clone, PartialEq)]
pub struct LoadingDensity {
    pub coupling: CouplingF,
    pub psi1: CohesiveLaw1D,
    pub psi2: CohesiveLaw1D,
}

impl LoadingDensity {
    pub fn new(coupling: CouplingF, psi1: CohesiveLaw1D, psi2: CohesiveLaw1D) -> Self {
        Self {
            coupling,
            psi1,
            psi2,
        }
    }

    /// Evaluates Psi and its derivatives by the closed-form chain rule through
    /// the bilinear F.
    pub fn eval(&self, y1: f64, y2: f64) -> Result<PsiEval, LawError> {
        let (p1, p1d, p1dd) = self.psi1.eval(y1)?;
        let (p2, p2d, p2dd) = self.psi2.eval(y2)?;
        let f = &self.coupling;
        let df1 = f.phi1 - f.alpha * p2;
        let df2 = f.phi2 - f.alpha * p1;
        Ok(PsiEval {
            value: f.value(p1, p2),
            grad: [df1 * p1d, df2 * p2d],
            d12: -f.alpha * p1d * p2d,
            diag: [df1 * p1dd, df2 * p2dd],
            third: [-f.alpha * p1dd * p2d, -f.alpha * p1d * p2dd],
        })
    }

    /// Loading tension S = (d1 Psi)+ , (d2 Psi)+.
    pub fn loading_tension(&self, y1: f64, y2: f64) -> Result<[f64; 2], LawError> {
        let e = self.eval(y1, y2)?;
        Ok([e.grad[0].max(0.0), e.grad[1].max(0.0)])
    }
}

/// The per-point irreversible history variables z = (z1, z2).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HistoryPair {
    pub z1: f64,
    pub z2: f64,
}

impl HistoryPair {
    pub fn new(z1: f64, z2: f64) -> Result<Self, LawError> {
        if z1 < 0.0 {
            return Err(LawError::NegativeOpening(z1));
        }
        if z2 < 0.0 {
            return Err(LawError::NegativeOpening(z2));
        }
        Ok(Self { z1, z2 })
    }

    /// Componentwise running maximum z v y.
    pub fn join(&self, y1: f64, y2: f64) -> Self {
        Self {
            z1: self.z1.max(y1),
            z2: self.z2.max(y2),
        }
    }
}

/// Partition of the opening space given the history (z1, z2). Ties y_i = z_i
/// go to the loading side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// y1 >= z1, y2 >= z2: pure loading.
    R1,
    /// y1 < z1, y2 >= z2: unloading in direction 1.
    R2,
    /// y1 >= z1, y2 < z2: unloading in direction 2.
    R3,
    /// y1 < z1, y2 < z2: pure unloading.
    R4,
}

/// Classifies the opening y against the history z.
pub fn classify_region(y1: f64, y2: f64, z: HistoryPair) -> Region {
    match (y1 >= z.z1, y2 >= z.z2) {
        (true, true) => Region::R1,
        (false, true) => Region::R2,
        (true, false) => Region::R3,
        (false, false) => Region::R4,
    }
}

/// A mixed-mode cohesive law: either potential-based (tractions from grad Phi)
/// or non potential-based (tractions T built from the loading tension S).
#[derive(Debug, Clone, PartialEq)]
pub struct MixedModeLaw {
    pub density: LoadingDensity,
    /// Set when the coupling constants violate the admissibility constraint of
    /// the declared mode (e.g. a potential law with unequal delamination
    /// energies and PPR coupling). Such laws are deliberately allowed.
    pub nonphysical_coupling: bool,
}

impl MixedModeLaw {
    pub fn new(density: LoadingDensity) -> Self {
        let nonphysical_coupling = !density.coupling.admissible();
        Self {
            density,
            nonphysical_coupling,
        }
    }

    pub fn mode(&self) -> CouplingMode {
        self.density.coupling.mode
    }

    /// The potential Phi(y, z), piecewise over R1-R4.
    ///
    /// When z_i = 0 the region classification routes y_i to the loading side,
    /// so the unloading factors y_i/z_i are only ever evaluated with z_i > 0.
    pub fn phi(&self, y1: f64, y2: f64, z: HistoryPair) -> Result<f64, LawError> {
        check_opening(y1, y2)?;
        let d = &self.density;
        Ok(match classify_region(y1, y2, z) {
            Region::R1 => d.eval(y1, y2)?.value,
            Region::R2 => {
                let e = d.eval(z.z1, y2)?;
                let q1 = sq(y1 / z.z1);
                e.value - z.z1 / 2.0 * e.grad[0] * (1.0 - q1)
            }
            Region::R3 => {
                let e = d.eval(y1, z.z2)?;
                let q2 = sq(y2 / z.z2);
                e.value - z.z2 / 2.0 * e.grad[1] * (1.0 - q2)
            }
            Region::R4 => {
                let e = d.eval(z.z1, z.z2)?;
                let q1 = sq(y1 / z.z1);
                let q2 = sq(y2 / z.z2);
                e.value - z.z1 / 2.0 * e.grad[0] * (1.0 - q1)
                    - z.z2 / 2.0 * e.grad[1] * (1.0 - q2)
                    + z.z1 * z.z2 / 4.0 * e.d12 * (1.0 - q1) * (1.0 - q2)
            }
        })
    }

    /// Closed-form gradient of Phi with respect to the opening y.
    pub fn grad_phi(&self, y1: f64, y2: f64, z: HistoryPair) -> Result<[f64; 2], LawError> {
        check_opening(y1, y2)?;
        let d = &self.density;
        Ok(match classify_region(y1, y2, z) {
            Region::R1 => d.eval(y1, y2)?.grad,
            Region::R2 => {
                let e = d.eval(z.z1, y2)?;
                let q1 = sq(y1 / z.z1);
                [
                    e.grad[0] * y1 / z.z1,
                    e.grad[1] - z.z1 / 2.0 * e.d12 * (1.0 - q1),
                ]
            }
            Region::R3 => {
                let e = d.eval(y1, z.z2)?;
                let q2 = sq(y2 / z.z2);
                [
                    e.grad[0] - z.z2 / 2.0 * e.d12 * (1.0 - q2),
                    e.grad[1] * y2 / z.z2,
                ]
            }
            Region::R4 => {
                let e = d.eval(z.z1, z.z2)?;
                let q1 = sq(y1 / z.z1);
                let q2 = sq(y2 / z.z2);
                [
                    (e.grad[0] - z.z2 / 2.0 * e.d12 * (1.0 - q2)) * y1 / z.z1,
                    (e.grad[1] - z.z1 / 2.0 * e.d12 * (1.0 - q1)) * y2 / z.z2,
                ]
            }
        })
    }

    /// Closed-form derivative of Phi with respect to the history z. Uses the
    /// exact third derivatives of Psi from the chain rule.
    pub fn dz_phi(&self, y1: f64, y2: f64, z: HistoryPair) -> Result<[f64; 2], LawError> {
        check_opening(y1, y2)?;
        let d = &self.density;
        Ok(match classify_region(y1, y2, z) {
            Region::R1 => [0.0, 0.0],
            Region::R2 => {
                let e = d.eval(z.z1, y2)?;
                let q1 = sq(y1 / z.z1);
                [
                    (e.grad[0] - z.z1 * e.diag[0]) / 2.0 * (1.0 - q1),
                    0.0,
                ]
            }
            Region::R3 => {
                let e = d.eval(y1, z.z2)?;
                let q2 = sq(y2 / z.z2);
                [
                    0.0,
                    (e.grad[1] - z.z2 * e.diag[1]) / 2.0 * (1.0 - q2),
                ]
            }
            Region::R4 => {
                let e = d.eval(z.z1, z.z2)?;
                let q1 = sq(y1 / z.z1);
                let q2 = sq(y2 / z.z2);
                [
                    ((e.grad[0] - z.z1 * e.diag[0]) / 2.0
                        - z.z2 / 4.0 * (e.d12 - z.z1 * e.third[0]) * (1.0 - q2))
                        * (1.0 - q1),
                    ((e.grad[1] - z.z2 * e.diag[1]) / 2.0
                        - z.z1 / 4.0 * (e.d12 - z.z2 * e.third[1]) * (1.0 - q1))
                        * (1.0 - q2),
                ]
            }
        })
    }

    /// The non-potential tension T built from the loading tension S.
    pub fn tension(&self, y1: f64, y2: f64, z: HistoryPair) -> Result<[f64; 2], LawError> {
        check_opening(y1, y2)?;
        let d = &self.density;
        Ok(match classify_region(y1, y2, z) {
            Region::R1 => d.loading_tension(y1, y2)?,
            Region::R2 => {
                let s = d.loading_tension(z.z1, y2)?;
                [s[0] * y1 / z.z1, s[1]]
            }
            Region::R3 => {
                let s = d.loading_tension(y1, z.z2)?;
                [s[0], s[1] * y2 / z.z2]
            }
            Region::R4 => {
                let s = d.loading_tension(z.z1, z.z2)?;
                [s[0] * y1 / z.z1, s[1] * y2 / z.z2]
            }
        })
    }

    /// The traction according to the declared mode: grad Phi for potential
    /// laws, T for non-potential ones.
    pub fn traction(&self, y1: f64, y2: f64, z: HistoryPair) -> Result<[f64; 2], LawError> {
        match self.mode() {
            CouplingMode::Potential => self.grad_phi(y1, y2, z),
            CouplingMode::NonPotential => self.tension(y1, y2, z),
        }
    }
}

fn check_opening(y1: f64, y2: f64) -> Result<(), LawError> {
    if y1 < 0.0 {
        return Err(LawError::NegativeOpening(y1));
    }
    if y2 < 0.0 {
        return Err(LawError::NegativeOpening(y2));
    }
    Ok(())
}

#[inline]
fn sq(x: f64) -> f64 {
    x * x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn case1_density(mode: CouplingMode) -> LoadingDensity {
        let psi = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 2.0).unwrap();
        LoadingDensity::new(
            CouplingF::ppr(2.0, 2.0, mode).unwrap(),
            psi.clone(),
            psi,
        )
    }

    fn uncoupled_density(mode: CouplingMode) -> LoadingDensity {
        let psi = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 2.0).unwrap();
        LoadingDensity::new(
            CouplingF::new(2.0, 2.0, 0.0, mode).unwrap(),
            psi.clone(),
            psi,
        )
    }

    #[test]
    fn psi_vanishes_at_origin() {
        let d = case1_density(CouplingMode::Potential);
        assert_eq!(d.eval(0.0, 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn psi_mixed_derivative_sign() {
        let d = case1_density(CouplingMode::Potential);
        for &(y1, y2) in &[(0.2, 0.3), (0.7, 0.9), (1.2, 0.4)] {
            let e = d.eval(y1, y2).unwrap();
            let (_, p1d, _) = d.psi1.eval(y1).unwrap();
            let (_, p2d, _) = d.psi2.eval(y2).unwrap();
            assert_relative_eq!(e.d12, -2.0 * p1d * p2d, max_relative = 1e-14);
            assert!(e.d12 <= 0.0);
        }
    }

    #[test]
    fn psi_uncoupled_is_separable() {
        let d = uncoupled_density(CouplingMode::Potential);
        let e = d.eval(0.4, 0.9).unwrap();
        let (p1, _, _) = d.psi1.eval(0.4).unwrap();
        let (p2, _, _) = d.psi2.eval(0.9).unwrap();
        assert_eq!(e.d12, 0.0);
        assert_relative_eq!(e.value, 2.0 * p1 + 2.0 * p2, max_relative = 1e-14);
    }

    #[test]
    fn region_classification() {
        let z = HistoryPair::new(0.5, 0.5).unwrap();
        assert_eq!(classify_region(1.0, 1.0, z), Region::R1);
        assert_eq!(classify_region(0.2, 1.0, z), Region::R2);
        assert_eq!(classify_region(1.0, 0.2, z), Region::R3);
        assert_eq!(classify_region(0.2, 0.2, z), Region::R4);
        // boundary assigned to the loading side
        assert_eq!(classify_region(0.5, 0.5, z), Region::R1);
    }

    #[test]
    fn phi_trivial_values() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        assert_eq!(law.phi(0.0, 0.0, HistoryPair::default()).unwrap(), 0.0);
        // y = z: all unloading brackets vanish
        let z = HistoryPair::new(0.8, 0.6).unwrap();
        let psi = law.density.eval(0.8, 0.6).unwrap().value;
        assert_relative_eq!(law.phi(0.8, 0.6, z).unwrap(), psi, max_relative = 1e-14);
    }

    #[test]
    fn phi_at_origin_with_history() {
        // y = (0,0), z > 0: substitute into the R4 branch
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        let z = HistoryPair::new(0.9, 0.7).unwrap();
        let e = law.density.eval(0.9, 0.7).unwrap();
        let expected = e.value - 0.9 / 2.0 * e.grad[0] - 0.7 / 2.0 * e.grad[1]
            + 0.9 * 0.7 / 4.0 * e.d12;
        assert_relative_eq!(law.phi(0.0, 0.0, z).unwrap(), expected, max_relative = 1e-13);

        // verify against quadrature of grad Phi along the segment z -> 0
        let n = 20_000;
        let mut integral = 0.0;
        for k in 0..n {
            let s0 = k as f64 / n as f64;
            let s1 = (k + 1) as f64 / n as f64;
            let mid = 0.5 * (s0 + s1);
            let g = law.grad_phi(mid * 0.9, mid * 0.7, z).unwrap();
            integral += (g[0] * 0.9 + g[1] * 0.7) * (s1 - s0);
        }
        let phi_z = law.phi(0.9, 0.7, z).unwrap();
        assert_relative_eq!(phi_z - integral, expected, max_relative = 1e-6);
    }

    #[test]
    fn grad_phi_matches_gradient_at_y_eq_z() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        let z = HistoryPair::new(0.8, 0.8).unwrap();
        let g = law.grad_phi(0.8, 0.8, z).unwrap();
        let e = law.density.eval(0.8, 0.8).unwrap();
        assert_relative_eq!(g[0], e.grad[0], max_relative = 1e-14);
        assert_relative_eq!(g[1], e.grad[1], max_relative = 1e-14);
    }

    #[test]
    fn grad_phi_finite_difference_match() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        let z = HistoryPair::new(0.8, 0.8).unwrap();
        let (y1, y2) = (0.5, 0.5);
        let h = 1e-5;
        let g = law.grad_phi(y1, y2, z).unwrap();
        let fd1 = (law.phi(y1 + h, y2, z).unwrap() - law.phi(y1 - h, y2, z).unwrap()) / (2.0 * h);
        let fd2 = (law.phi(y1, y2 + h, z).unwrap() - law.phi(y1, y2 - h, z).unwrap()) / (2.0 * h);
        assert_relative_eq!(g[0], fd1, max_relative = 1e-6);
        assert_relative_eq!(g[1], fd2, max_relative = 1e-6);
    }

    #[test]
    fn grad_phi_zero_at_origin_in_r4() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        let z = HistoryPair::new(0.8, 0.8).unwrap();
        let g = law.grad_phi(0.0, 0.3, z).unwrap();
        assert_eq!(g[0], 0.0);
    }

    #[test]
    fn dz_phi_zero_on_loading() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        let z = HistoryPair::new(0.5, 0.5).unwrap();
        assert_eq!(law.dz_phi(0.7, 0.9, z).unwrap(), [0.0, 0.0]);
        // y = z: the (1 - (y_i/z_i)^2) factors vanish
        assert_eq!(law.dz_phi(0.5, 0.5, z).unwrap(), [0.0, 0.0]);
    }

    #[test]
    fn dz_phi_nonnegative_in_r2() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        let z = HistoryPair::new(0.8, 0.4).unwrap();
        for i in 1..20 {
            let y1 = 0.8 * i as f64 / 20.0;
            let dz = law.dz_phi(y1, 0.6, z).unwrap();
            let e = law.density.eval(0.8, 0.6).unwrap();
            let expected =
                (e.grad[0] - 0.8 * e.diag[0]) / 2.0 * (1.0 - (y1 / 0.8) * (y1 / 0.8));
            assert_relative_eq!(dz[0], expected, max_relative = 1e-13);
            assert!(dz[0] >= 0.0);
            assert_eq!(dz[1], 0.0);
        }
    }

    #[test]
    fn dz_phi_finite_difference_match() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        let h = 1e-5;
        // interior points of each unloading region
        for &(y1, y2, z1, z2) in &[
            (0.3, 0.9, 0.7, 0.5),  // R2
            (0.9, 0.3, 0.5, 0.7),  // R3
            (0.3, 0.25, 0.7, 0.6), // R4
        ] {
            let dz = law.dz_phi(y1, y2, HistoryPair::new(z1, z2).unwrap()).unwrap();
            let fd1 = (law.phi(y1, y2, HistoryPair::new(z1 + h, z2).unwrap()).unwrap()
                - law.phi(y1, y2, HistoryPair::new(z1 - h, z2).unwrap()).unwrap())
                / (2.0 * h);
            let fd2 = (law.phi(y1, y2, HistoryPair::new(z1, z2 + h).unwrap()).unwrap()
                - law.phi(y1, y2, HistoryPair::new(z1, z2 - h).unwrap()).unwrap())
                / (2.0 * h);
            assert_relative_eq!(dz[0], fd1, epsilon = 1e-8, max_relative = 1e-5);
            assert_relative_eq!(dz[1], fd2, epsilon = 1e-8, max_relative = 1e-5);
        }
    }

    #[test]
    fn loading_tension_clips_negative_gradient() {
        // Case 3: Phi1=6, Phi2=2, alpha=6; d2 Psi < 0 once psi1 > 1/3
        let psi1 = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 6.0).unwrap();
        let psi2 = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 2.0).unwrap();
        let d = LoadingDensity::new(
            CouplingF::ppr(6.0, 2.0, CouplingMode::NonPotential).unwrap(),
            psi1,
            psi2,
        );
        let mut clipped = false;
        for i in 0..50 {
            for j in 0..50 {
                let y1 = 4.0 * i as f64 / 49.0;
                let y2 = 1.5 * j as f64 / 49.0;
                let e = d.eval(y1, y2).unwrap();
                let s = d.loading_tension(y1, y2).unwrap();
                assert!(s[0] >= 0.0 && s[1] >= 0.0);
                if e.grad[1] < 0.0 {
                    clipped = true;
                    assert_eq!(s[1], 0.0);
                }
            }
        }
        assert!(clipped, "expected at least one clipped point");
    }

    #[test]
    fn tension_equals_loading_tension_at_y_eq_z() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::NonPotential));
        let z = HistoryPair::new(0.6, 0.9).unwrap();
        let t = law.tension(0.6, 0.9, z).unwrap();
        let s = law.density.loading_tension(0.6, 0.9).unwrap();
        assert_eq!(t, s);
    }

    #[test]
    fn tension_vanishes_at_origin_in_r4() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::NonPotential));
        let z = HistoryPair::new(0.6, 0.9).unwrap();
        assert_eq!(law.tension(0.0, 0.0, z).unwrap(), [0.0, 0.0]);
    }

    #[test]
    fn uncoupled_tension_is_gradient() {
        let law = MixedModeLaw::new(uncoupled_density(CouplingMode::NonPotential));
        let z = HistoryPair::new(0.7, 0.5).unwrap();
        for &(y1, y2) in &[(0.3, 0.2), (0.9, 0.2), (0.3, 0.8), (1.1, 0.9)] {
            let t = law.tension(y1, y2, z).unwrap();
            let g = law.grad_phi(y1, y2, z).unwrap();
            assert_relative_eq!(t[0], g[0], epsilon = 1e-14);
            assert_relative_eq!(t[1], g[1], epsilon = 1e-14);
        }
    }

    #[test]
    fn replacement_identity() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        // y above z in one or both components: Phi(y,z) = Phi(y, y v z)
        for &(y1, y2, z1, z2) in &[
            (0.9, 0.3, 0.5, 0.5),
            (0.9, 0.9, 0.5, 0.5),
            (0.2, 0.9, 0.5, 0.5),
        ] {
            let z = HistoryPair::new(z1, z2).unwrap();
            let joined = z.join(y1, y2);
            assert_eq!(
                law.phi(y1, y2, z).unwrap(),
                law.phi(y1, y2, joined).unwrap()
            );
            assert_eq!(
                law.tension(y1, y2, z).unwrap(),
                law.tension(y1, y2, joined).unwrap()
            );
        }
    }

    #[test]
    fn continuity_across_region_boundaries() {
        let law = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        let z = HistoryPair::new(0.7, 0.5).unwrap();
        let eps = 1e-9;
        // crossing y1 = z1 at fixed y2 below and above z2
        for &y2 in &[0.3, 0.8] {
            let below = law.phi(0.7 - eps, y2, z).unwrap();
            let at = law.phi(0.7, y2, z).unwrap();
            assert!((below - at).abs() < 1e-8, "phi jump {}", (below - at).abs());
            let gb = law.grad_phi(0.7 - eps, y2, z).unwrap();
            let ga = law.grad_phi(0.7, y2, z).unwrap();
            assert!((gb[0] - ga[0]).abs() < 1e-7 && (gb[1] - ga[1]).abs() < 1e-7);
            let tb = law.tension(0.7 - eps, y2, z).unwrap();
            let ta = law.tension(0.7, y2, z).unwrap();
            assert!((tb[0] - ta[0]).abs() < 1e-7 && (tb[1] - ta[1]).abs() < 1e-7);
        }
    }

    #[test]
    fn nonphysical_coupling_flagged() {
        let psi1 = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 6.0).unwrap();
        let psi2 = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 2.0).unwrap();
        let law = MixedModeLaw::new(LoadingDensity::new(
            CouplingF::ppr(6.0, 2.0, CouplingMode::Potential).unwrap(),
            psi1,
            psi2,
        ));
        assert!(law.nonphysical_coupling);
        let ok = MixedModeLaw::new(case1_density(CouplingMode::Potential));
        assert!(!ok.nonphysical_coupling);
    }
}
