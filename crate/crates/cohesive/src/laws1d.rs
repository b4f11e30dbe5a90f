//! One-dimensional cohesive density families.
//!
//! Every law is normalized so that `sup psi = 1`; the magnitude of the
//! delamination energy lives in the mixed-mode coupling, not here. All
//! evaluations report right-derivatives at junction points (cubic law at its
//! opening, intrinsic law at its elastic threshold, PPR laws at their final
//! slip width).

use crate::error::LawError;

/// Derived PPR constants together with the concavity diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PprParams {
    /// Shape exponent m = alpha (alpha-1) lambda^2 / (1 - alpha lambda^2).
    pub m: f64,
    /// Final slip width (delamination opening).
    pub delta: f64,
    /// Set when lambda exceeds 1/sqrt(2 alpha - 1); the density is then not
    /// guaranteed concave past delta*lambda. Non-fatal.
    pub concavity_warning: bool,
}

/// Computes the PPR constants m and delta from the primitive parameters.
pub fn ppr_parameters(alpha: f64, sigma: f64, lambda: f64, phi: f64) -> Result<PprParams, LawError> {
    if !(alpha > 1.0) {
        return Err(LawError::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "shape index must exceed 1",
        });
    }
    if !(sigma > 0.0) {
        return Err(LawError::InvalidParameter {
            name: "sigma",
            value: sigma,
            reason: "cohesive strength must be positive",
        });
    }
    if !(phi > 0.0) {
        return Err(LawError::InvalidParameter {
            name: "phi",
            value: phi,
            reason: "delamination energy must be positive",
        });
    }
    let limit = 1.0 / alpha.sqrt();
    if !(lambda > 0.0 && lambda < limit) {
        return Err(LawError::LambdaOutOfRange { lambda, limit });
    }
    let m = alpha * (alpha - 1.0) * lambda * lambda / (1.0 - alpha * lambda * lambda);
    let delta = phi / sigma
        * alpha
        * lambda
        * (1.0 - lambda).powf(alpha - 1.0)
        * (1.0 + alpha / m)
        * (1.0 + lambda * alpha / m).powf(m - 1.0);
    let concavity_warning = lambda > 1.0 / (2.0 * alpha - 1.0).sqrt();
    Ok(PprParams {
        m,
        delta,
        concavity_warning,
    })
}

/// A scalar cohesive density psi with value and two derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum CohesiveLaw1D {
    /// psi(y) = 1 - exp(-rho y). Infinite delamination opening.
    Exponential { rho: f64 },
    /// Cubic polynomial reaching 1 at the opening delta and flat beyond.
    Cubic { delta: f64 },
    /// A concave base density prefixed with a quadratic elastic segment on
    /// [0, zbar], rescaled so the supremum stays 1.
    Intrinsic {
        base: Box<CohesiveLaw1D>,
        eps: f64,
        zbar: f64,
        scale: f64,
    },
    /// Intrinsic PPR density with derived constants m and delta.
    PprIntrinsic {
        alpha: f64,
        sigma: f64,
        lambda: f64,
        phi: f64,
        m: f64,
        delta: f64,
    },
    /// Extrinsic PPR density (lambda -> 0 limit), opening delta_bar = phi alpha / sigma.
    PprExtrinsic {
        alpha: f64,
        sigma: f64,
        phi: f64,
        delta_bar: f64,
    },
}

impl CohesiveLaw1D {
    pub fn exponential(rho: f64) -> Result<Self, LawError> {
        if !(rho > 0.0) {
            return Err(LawError::InvalidParameter {
                name: "rho",
                value: rho,
                reason: "decay rate must be positive",
            });
        }
        Ok(Self::Exponential { rho })
    }

    pub fn cubic(delta: f64) -> Result<Self, LawError> {
        if !(delta > 0.0) {
            return Err(LawError::InvalidParameter {
                name: "delta",
                value: delta,
                reason: "opening must be positive",
            });
        }
        Ok(Self::Cubic { delta })
    }

    pub fn ppr_intrinsic(alpha: f64, sigma: f64, lambda: f64, phi: f64) -> Result<Self, LawError> {
        let p = ppr_parameters(alpha, sigma, lambda, phi)?;
        Ok(Self::PprIntrinsic {
            alpha,
            sigma,
            lambda,
            phi,
            m: p.m,
            delta: p.delta,
        })
    }

    pub fn ppr_extrinsic(alpha: f64, sigma: f64, phi: f64) -> Result<Self, LawError> {
        if !(alpha > 1.0) {
            return Err(LawError::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "shape index must exceed 1",
            });
        }
        if !(sigma > 0.0) {
            return Err(LawError::InvalidParameter {
                name: "sigma",
                value: sigma,
                reason: "cohesive strength must be positive",
            });
        }
        if !(phi > 0.0) {
            return Err(LawError::InvalidParameter {
                name: "phi",
                value: phi,
                reason: "delamination energy must be positive",
            });
        }
        Ok(Self::PprExtrinsic {
            alpha,
            sigma,
            phi,
            delta_bar: phi * alpha / sigma,
        })
    }

    /// Builds an intrinsic law from a concave base by inserting a quadratic
    /// elastic segment up to the threshold zbar solving zbar = eps * psi'(zbar).
    pub fn make_intrinsic(base: CohesiveLaw1D, eps: f64) -> Result<Self, LawError> {
        if !(eps > 0.0) {
            return Err(LawError::InvalidParameter {
                name: "eps",
                value: eps,
                reason: "elastic compliance must be positive",
            });
        }
        let (_, slope0, _) = base.eval(0.0)?;
        if !(slope0 > 0.0) {
            return Err(LawError::NoRoot);
        }
        // h(z) = z - eps psi'(z) is increasing for concave bases; h(0) < 0 and
        // h(eps * psi'(0)) >= 0 bracket the root.
        let h = |z: f64| -> Result<f64, LawError> {
            let (_, d1, _) = base.eval(z)?;
            Ok(z - eps * d1)
        };
        let mut lo = 0.0;
        let mut hi = eps * slope0;
        let mut expansions = 0;
        while h(hi)? < 0.0 {
            hi *= 2.0;
            expansions += 1;
            if expansions > 60 {
                return Err(LawError::NoRoot);
            }
        }
        let tol = 1e-12 * eps.max(1.0);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if h(mid)? < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let zbar = 0.5 * (lo + hi);
        let (base_at_zbar, _, _) = base.eval(zbar)?;
        let scale = 1.0 / (1.0 - base_at_zbar + zbar * zbar / (2.0 * eps));
        Ok(Self::Intrinsic {
            base: Box::new(base),
            eps,
            zbar,
            scale,
        })
    }

    /// Evaluates (psi, psi', psi'') at the opening y >= 0.
    pub fn eval(&self, y: f64) -> Result<(f64, f64, f64), LawError> {
        if y < 0.0 {
            return Err(LawError::NegativeOpening(y));
        }
        Ok(match self {
            Self::Exponential { rho } => {
                let e = (-rho * y).exp();
                (1.0 - e, rho * e, -rho * rho * e)
            }
            Self::Cubic { delta } => {
                if y >= *delta {
                    (1.0, 0.0, 0.0)
                } else {
                    let u = y / delta;
                    let v = 1.0 - u;
                    (
                        u * (u * u - 3.0 * u + 3.0),
                        3.0 * v * v / delta,
                        -6.0 * v / (delta * delta),
                    )
                }
            }
            Self::Intrinsic {
                base,
                eps,
                zbar,
                scale,
            } => {
                if y < *zbar {
                    (
                        scale * y * y / (2.0 * eps),
                        scale * y / eps,
                        scale / eps,
                    )
                } else {
                    let (b, b1, b2) = base.eval(y)?;
                    let (bz, _, _) = base.eval(*zbar)?;
                    (
                        scale * (b - bz + zbar * zbar / (2.0 * eps)),
                        scale * b1,
                        scale * b2,
                    )
                }
            }
            Self::PprIntrinsic {
                alpha, m, delta, ..
            } => {
                if y >= *delta {
                    (1.0, 0.0, 0.0)
                } else {
                    let x = y / delta;
                    let xp = 1.0 - x;
                    let am = alpha / m;
                    let g = 1.0 + am * x;
                    let value = 1.0 - xp.powf(*alpha) * g.powf(*m);
                    let d1 = alpha / delta
                        * (1.0 + am)
                        * x
                        * xp.powf(alpha - 1.0)
                        * g.powf(m - 1.0);
                    let d2 = alpha / (delta * delta)
                        * (1.0 + am)
                        * xp.powf(alpha - 2.0)
                        * g.powf(m - 2.0)
                        * (1.0 - am * (alpha + m - 1.0) * x * x);
                    (value, d1, d2)
                }
            }
            Self::PprExtrinsic {
                alpha, delta_bar, ..
            } => {
                if y >= *delta_bar {
                    (1.0, 0.0, 0.0)
                } else {
                    let xp = 1.0 - y / delta_bar;
                    (
                        1.0 - xp.powf(*alpha),
                        alpha / delta_bar * xp.powf(alpha - 1.0),
                        -alpha * (alpha - 1.0) / (delta_bar * delta_bar) * xp.powf(alpha - 2.0),
                    )
                }
            }
        })
    }

    /// Delamination opening: the slip at which psi saturates. Infinite for the
    /// exponential law.
    pub fn opening(&self) -> f64 {
        match self {
            Self::Exponential { .. } => f64::INFINITY,
            Self::Cubic { delta } => *delta,
            Self::Intrinsic { base, .. } => base.opening(),
            Self::PprIntrinsic { delta, .. } => *delta,
            Self::PprExtrinsic { delta_bar, .. } => *delta_bar,
        }
    }

    /// A finite length scale for sampling grids: the opening when finite,
    /// otherwise the decay length of the exponential tail.
    pub fn reference_opening(&self) -> f64 {
        match self {
            Self::Exponential { rho } => 1.0 / rho,
            Self::Intrinsic { base, .. } => base.reference_opening(),
            other => other.opening(),
        }
    }

    /// Threshold below which loading-zone concavity is not required (initial
    /// elastic segment). Zero for laws without one.
    pub fn concavity_threshold(&self) -> f64 {
        match self {
            Self::Intrinsic { zbar, .. } => *zbar,
            Self::PprIntrinsic { delta, lambda, .. } => delta * lambda,
            _ => 0.0,
        }
    }
}
