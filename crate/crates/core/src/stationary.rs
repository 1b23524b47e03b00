//! The four exact solutions of `μΦ = −Φ'' + G₃Φ³ + G₅Φ⁵`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::similarity::{linspace, CouplingConstants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    /// `sech ζ` with `μ = −1, G₃ = −2`.
    CubicBright,
    /// `tanh ζ` with `μ = 2, G₃ = 2`.
    CubicDark,
    /// `(1+ζ²)^{-1/2}` with `μ = 0, G₃ = 2, G₅ = −3`.
    CqBright,
    /// `ζ (1+ζ²)^{-1/2}` with `μ = 3, G₃ = 6, G₅ = −3`.
    CqDark,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 4] = [
        ProfileKind::CubicBright,
        ProfileKind::CubicDark,
        ProfileKind::CqBright,
        ProfileKind::CqDark,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ProfileKind::CubicBright => "cubic-bright",
            ProfileKind::CubicDark => "cubic-dark",
            ProfileKind::CqBright => "cq-bright",
            ProfileKind::CqDark => "cq-dark",
        }
    }

    pub fn is_bright(self) -> bool {
        matches!(self, ProfileKind::CubicBright | ProfileKind::CqBright)
    }

    pub fn is_cubic(self) -> bool {
        matches!(self, ProfileKind::CubicBright | ProfileKind::CubicDark)
    }

    /// `(μ, G₃, G₅)` of the family.
    pub fn parameters(self) -> (f64, f64, f64) {
        match self {
            ProfileKind::CubicBright => (-1.0, -2.0, 0.0),
            ProfileKind::CubicDark => (2.0, 2.0, 0.0),
            ProfileKind::CqBright => (0.0, 2.0, -3.0),
            ProfileKind::CqDark => (3.0, 6.0, -3.0),
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.tag())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProfileKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::UnknownBranch(s.to_owned()))
    }
}

/// `Φ`, `Φ'`, `Φ''` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub phi: f64,
    pub dphi: f64,
    pub d2phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryProfile {
    pub kind: ProfileKind,
    pub mu: f64,
    pub g3: f64,
    pub g5: f64,
}

impl StationaryProfile {
    pub fn new(kind: ProfileKind) -> Self {
        let (mu, g3, g5) = kind.parameters();
        Self { kind, mu, g3, g5 }
    }

    /// Same shape with a different eigenvalue; no longer an exact solution
    /// unless `mu` equals the family value.
    pub fn with_mu(self, mu: f64) -> Self {
        Self { mu, ..self }
    }

    pub fn couplings(&self) -> CouplingConstants {
        let g_odd = if self.kind.is_cubic() {
            vec![self.g3]
        } else {
            vec![self.g3, self.g5]
        };
        CouplingConstants { mu: self.mu, g_odd }
    }

    pub fn value(&self, zeta: f64) -> f64 {
        match self.kind {
            ProfileKind::CubicBright => 1.0 / zeta.cosh(),
            ProfileKind::CubicDark => zeta.tanh(),
            ProfileKind::CqBright => 1.0 / zeta.hypot(1.0),
            ProfileKind::CqDark => zeta / zeta.hypot(1.0),
        }
    }

    pub fn eval(&self, zeta: f64) -> ProfileSample {
        match self.kind {
            ProfileKind::CubicBright => {
                let sech = 1.0 / zeta.cosh();
                let tanh = zeta.tanh();
                ProfileSample {
                    phi: sech,
                    dphi: -sech * tanh,
                    d2phi: sech * (1.0 - 2.0 * sech * sech),
                }
            }
            ProfileKind::CubicDark => {
                let tanh = zeta.tanh();
                let sech2 = 1.0 / zeta.cosh().powi(2);
                ProfileSample {
                    phi: tanh,
                    dphi: sech2,
                    d2phi: -2.0 * tanh * sech2,
                }
            }
            ProfileKind::CqBright => {
                let r = 1.0 / zeta.hypot(1.0);
                let r2 = r * r;
                ProfileSample {
                    phi: r,
                    dphi: -zeta * r * r2,
                    d2phi: (2.0 * zeta * zeta - 1.0) * r * r2 * r2,
                }
            }
            ProfileKind::CqDark => {
                let r = 1.0 / zeta.hypot(1.0);
                let r2 = r * r;
                ProfileSample {
                    phi: zeta * r,
                    dphi: r * r2,
                    d2phi: -3.0 * zeta * r * r2 * r2,
                }
            }
        }
    }

    /// `μΦ + Φ'' − G₃Φ³ − G₅Φ⁵` with analytic derivatives.
    pub fn residual(&self, zeta: f64) -> f64 {
        let s = self.eval(zeta);
        let p2 = s.phi * s.phi;
        self.mu * s.phi + s.d2phi - self.g3 * p2 * s.phi - self.g5 * p2 * p2 * s.phi
    }
}

/// Largest absolute residual of the reduced equation over `samples`.
pub fn stationary_residual(profile: &StationaryProfile, samples: &[f64]) -> f64 {
    samples
        .iter()
        .map(|&z| profile.residual(z).abs())
        .fold(0.0, f64::max)
}

/// 1001 uniform points on `[−10, 10]`.
pub fn default_samples() -> Vec<f64> {
    linspace(-10.0, 10.0, 1001)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        let s = StationaryProfile::new(ProfileKind::CubicBright).eval(0.0);
        assert_eq!((s.phi, s.dphi, s.d2phi), (1.0, 0.0, -1.0));
        let s = StationaryProfile::new(ProfileKind::CubicDark).eval(0.0);
        assert_eq!((s.phi, s.dphi, s.d2phi), (0.0, 1.0, 0.0));
    }

    #[test]
    fn cq_bright_at_one() {
        let s = StationaryProfile::new(ProfileKind::CqBright).eval(1.0);
        assert!((s.phi - 0.5f64.sqrt()).abs() < 1e-15);
        let expected = 2.0 * 2f64.powf(-1.5) - 3.0 * 2f64.powf(-2.5);
        assert!((s.d2phi - expected).abs() < 1e-15);
        let f = |z: f64| 1.0 / (1.0 + z * z).sqrt();
        let h = 1e-3;
        let fd = (-f(1.0 + 2.0 * h) + 16.0 * f(1.0 + h) - 30.0 * f(1.0) + 16.0 * f(1.0 - h)
            - f(1.0 - 2.0 * h))
            / (12.0 * h * h);
        assert!((fd - expected).abs() < 1e-9);
    }

    #[test]
    fn exact_for_every_family() {
        let samples = default_samples();
        for kind in ProfileKind::ALL {
            let r = stationary_residual(&StationaryProfile::new(kind), &samples);
            assert!(r < 1e-12, "{kind}: {r}");
        }
    }

    #[test]
    fn perturbed_eigenvalue_is_detected() {
        let p = StationaryProfile::new(ProfileKind::CubicBright).with_mu(-1.1);
        let r = stationary_residual(&p, &default_samples());
        // |Δμ| · max Φ = 0.1
        assert!((r - 0.1).abs() < 1e-12, "{r}");
    }

    #[test]
    fn derivatives_match_fourth_order_differences() {
        let h = 1e-2;
        for kind in ProfileKind::ALL {
            let p = StationaryProfile::new(kind);
            for z in linspace(-5.0, 5.0, 201) {
                let f = |z: f64| p.value(z);
                let d1 = (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h);
                let d2 = (-f(z + 2.0 * h) + 16.0 * f(z + h) - 30.0 * f(z) + 16.0 * f(z - h)
                    - f(z - 2.0 * h))
                    / (12.0 * h * h);
                let s = p.eval(z);
                assert!((d1 - s.dphi).abs() < 1e-7, "{kind} z={z}");
                assert!((d2 - s.d2phi).abs() < 1e-6, "{kind} z={z}");
            }
        }
    }

    #[test]
    fn parity_and_asymptotes() {
        for kind in ProfileKind::ALL {
            let p = StationaryProfile::new(kind);
            let sign = if kind.is_bright() { 1.0 } else { -1.0 };
            for z in linspace(0.0, 10.0, 101) {
                assert!((p.value(-z) - sign * p.value(z)).abs() < 1e-14);
            }
            let far = p.value(1e8).abs();
            if kind.is_bright() {
                assert!(far < 1e-7);
            } else {
                assert!((far - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unknown_tag_is_rejected() {
        assert_eq!("cq-dark".parse::<ProfileKind>().unwrap(), ProfileKind::CqDark);
        assert!(matches!("quartic".parse::<ProfileKind>(), Err(Error::UnknownBranch(_))));
    }
}
