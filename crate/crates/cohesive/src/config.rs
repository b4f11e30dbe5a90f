//! TOML configuration schemas for laws and laminate problems.
//!
//! Unknown keys are rejected everywhere; parse errors report the file and the
//! offending key/line.

use crate::error::ConfigError;
use crate::laminate::{
    mesh::{EdgeSide, RectMesh},
    DirichletClamp, Lame, LaminateProblem, LoadProgram, Scheme,
};
use crate::laws1d::CohesiveLaw1D;
use crate::mixedmode::{CouplingF, CouplingMode, LoadingDensity, MixedModeLaw};
use serde::Deserialize;
use std::path::Path;

/// Which construction the law uses.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeConfig {
    Potential,
    Nonpotential,
}

/// The coupling constants; `alpha` defaults to max(phi1, phi2).
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingConfig {
    pub phi1: f64,
    pub phi2: f64,
    pub alpha: Option<f64>,
}

/// One scalar cohesive density. The fracture energy is taken from the
/// coupling block (phi1 for psi1, phi2 for psi2).
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, tag = "family", rename_all = "lowercase")]
pub enum PsiConfig {
    /// Polynomial law with shape `alpha`, peak stress `sigma`, and optional
    /// initial-slope indicator `lambda` (omitted: extrinsic/rigid variant).
    Ppr {
        alpha: f64,
        sigma: f64,
        lambda: Option<f64>,
    },
    /// 1 - exp(-y / rho); optional elastic regularization width `eps`.
    Exponential { rho: f64, eps: Option<f64> },
    /// Cubic saturating law with full opening `delta`; optional `eps`.
    Cubic { delta: f64, eps: Option<f64> },
}

/// A complete mixed-mode law.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawConfig {
    pub mode: ModeConfig,
    pub coupling: CouplingConfig,
    pub psi1: PsiConfig,
    pub psi2: PsiConfig,
}

impl LawConfig {
    pub fn build(&self, origin: &str) -> Result<MixedModeLaw, ConfigError> {
        let invalid = |message: String| ConfigError::Invalid {
            path: origin.to_string(),
            message,
        };
        let mode = match self.mode {
            ModeConfig::Potential => CouplingMode::Potential,
            ModeConfig::Nonpotential => CouplingMode::NonPotential,
        };
        let alpha = self
            .alpha_or_default();
        let coupling = CouplingF::new(self.coupling.phi1, self.coupling.phi2, alpha, mode)
            .map_err(|e| invalid(format!("coupling: {e}")))?;
        let psi1 = build_psi(&self.psi1, self.coupling.phi1)
            .map_err(|e| invalid(format!("psi1: {e}")))?;
        let psi2 = build_psi(&self.psi2, self.coupling.phi2)
            .map_err(|e| invalid(format!("psi2: {e}")))?;
        Ok(MixedModeLaw::new(LoadingDensity::new(coupling, psi1, psi2)))
    }

    fn alpha_or_default(&self) -> f64 {
        self.coupling
            .alpha
            .unwrap_or_else(|| self.coupling.phi1.max(self.coupling.phi2))
    }
}

fn build_psi(cfg: &PsiConfig, phi: f64) -> Result<CohesiveLaw1D, crate::error::LawError> {
    match *cfg {
        PsiConfig::Ppr {
            alpha,
            sigma,
            lambda,
        } => match lambda {
            Some(l) => CohesiveLaw1D::ppr_intrinsic(alpha, sigma, l, phi),
            None => CohesiveLaw1D::ppr_extrinsic(alpha, sigma, phi),
        },
        PsiConfig::Exponential { rho, eps } => {
            let base = CohesiveLaw1D::exponential(rho)?;
            match eps {
                Some(e) => CohesiveLaw1D::make_intrinsic(base, e),
                None => Ok(base),
            }
        }
        PsiConfig::Cubic { delta, eps } => {
            let base = CohesiveLaw1D::cubic(delta)?;
            match eps {
                Some(e) => CohesiveLaw1D::make_intrinsic(base, e),
                None => Ok(base),
            }
        }
    }
}

/// Reads and builds a law from a TOML file.
pub fn load_law(path: &Path) -> Result<MixedModeLaw, ConfigError> {
    let cfg: LawConfig = read_toml(path)?;
    cfg.build(&path.display().to_string())
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerConfig {
    pub lambda: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClampConfig {
    pub side: EdgeSide,
    pub layer1: [f64; 2],
    pub layer2: [f64; 2],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgramConfig {
    /// Piecewise-linear knots (t, multiplier).
    pub knots: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub tau: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeConfig {
    Energetic,
    Equilibrium,
}

/// A complete laminate problem. The law is given either inline (`[law]`) or
/// by `law_file` (path relative to this file); exactly one must be present.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub mesh: MeshConfig,
    pub layer1: LayerConfig,
    pub layer2: LayerConfig,
    #[serde(rename = "clamp")]
    pub clamps: Vec<ClampConfig>,
    pub program: ProgramConfig,
    pub time: TimeConfig,
    pub scheme: SchemeConfig,
    pub law: Option<LawConfig>,
    pub law_file: Option<String>,
}

impl ProblemConfig {
    pub fn build(&self, origin: &Path) -> Result<(LaminateProblem, Scheme), ConfigError> {
        let origin_str = origin.display().to_string();
        let invalid = |message: String| ConfigError::Invalid {
            path: origin_str.clone(),
            message,
        };
        if self.mesh.nx == 0 || self.mesh.ny == 0 {
            return Err(invalid("mesh: nx and ny must be at least 1".into()));
        }
        if !(self.mesh.lx > 0.0 && self.mesh.ly > 0.0) {
            return Err(invalid("mesh: lx and ly must be positive".into()));
        }
        for (name, l) in [("layer1", self.layer1), ("layer2", self.layer2)] {
            if !(l.mu > 0.0) || !(l.lambda >= 0.0) {
                return Err(invalid(format!(
                    "{name}: requires mu > 0 and lambda >= 0, got mu = {}, lambda = {}",
                    l.mu, l.lambda
                )));
            }
        }
        if self.clamps.is_empty() {
            return Err(invalid("at least one [[clamp]] block is required".into()));
        }
        if self.program.knots.is_empty() {
            return Err(invalid("program: at least one knot is required".into()));
        }
        if !self
            .program
            .knots
            .windows(2)
            .all(|w| w[1][0] >= w[0][0])
        {
            return Err(invalid("program: knot times must be nondecreasing".into()));
        }
        if !(self.time.tau > 0.0) {
            return Err(invalid("time: tau must be positive".into()));
        }

        let law = match (&self.law, &self.law_file) {
            (Some(cfg), None) => cfg.build(&origin_str)?,
            (None, Some(file)) => {
                let base = origin.parent().unwrap_or_else(|| Path::new("."));
                load_law(&base.join(file))?
            }
            _ => {
                return Err(invalid(
                    "exactly one of `law` (inline) or `law_file` must be given".into(),
                ))
            }
        };

        let problem = LaminateProblem {
            mesh: RectMesh::new(self.mesh.nx, self.mesh.ny, self.mesh.lx, self.mesh.ly),
            lame: [
                Lame {
                    lambda: self.layer1.lambda,
                    mu: self.layer1.mu,
                },
                Lame {
                    lambda: self.layer2.lambda,
                    mu: self.layer2.mu,
                },
            ],
            clamps: self
                .clamps
                .iter()
                .map(|c| DirichletClamp {
                    side: c.side,
                    amplitude: [c.layer1, c.layer2],
                })
                .collect(),
            program: LoadProgram {
                knots: self.program.knots.iter().map(|k| (k[0], k[1])).collect(),
            },
            law,
            tau: self.time.tau,
            n_steps: self.time.steps,
        };
        let scheme = match self.scheme {
            SchemeConfig::Energetic => Scheme::Energetic,
            SchemeConfig::Equilibrium => Scheme::Equilibrium,
        };
        Ok((problem, scheme))
    }
}

/// Reads and builds a laminate problem from a TOML file.
pub fn load_problem(path: &Path) -> Result<(LaminateProblem, Scheme), ConfigError> {
    let cfg: ProblemConfig = read_toml(path)?;
    cfg.build(path)
}

fn read_toml<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| ConfigError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Parses a law from a TOML string (used by tests and inline defaults).
pub fn law_from_str(text: &str, origin: &str) -> Result<MixedModeLaw, ConfigError> {
    let cfg: LawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })?;
    cfg.build(origin)
}
