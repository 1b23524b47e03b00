//! Closed-form ingredients of the similarity map
//! `Ψ(x,t) = ρ(x,t) e^{iφ(x,t)} Φ(ζ(x,t))`.
//!
//! Everything here is a pure function of `(x, t)`. Time-only quantities
//! (`χ`, `χ'`, `χ''`, `ω`) are gathered in a [`Frame`] so that callers
//! sampling many positions at one instant evaluate the trigonometric part
//! once.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stationary::{ProfileKind, StationaryProfile};

/// Breathing width `χ(t) = 1 / (1 + s(t)²)` with
/// `s(t) = 1 + α sin t + β sin(√2 t)`.
///
/// `β = 0` gives a 2π-periodic width, `β ≠ 0` a quasiperiodic one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WidthProfile {
    pub alpha: f64,
    pub beta: f64,
}

/// `χ` and its first two time derivatives at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthSample {
    pub chi: f64,
    pub chi_dot: f64,
    pub chi_ddot: f64,
}

impl WidthProfile {
    pub const fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    /// `α = 0.1, β = 0`.
    pub const fn periodic() -> Self {
        Self::new(0.1, 0.0)
    }

    /// `α = β = 0.1`.
    pub const fn quasiperiodic() -> Self {
        Self::new(0.1, 0.1)
    }

    pub fn eval(&self, t: f64) -> WidthSample {
        let (sin1, cos1) = t.sin_cos();
        let (sin2, cos2) = (SQRT_2 * t).sin_cos();
        let s = 1.0 + self.alpha * sin1 + self.beta * sin2;
        let s_dot = self.alpha * cos1 + SQRT_2 * self.beta * cos2;
        let s_ddot = -self.alpha * sin1 - 2.0 * self.beta * sin2;

        // chi = 1/q with q = 1 + s^2
        let q = 1.0 + s * s;
        let q_dot = 2.0 * s * s_dot;
        let q_ddot = 2.0 * (s_dot * s_dot + s * s_ddot);
        let inv = 1.0 / q;
        WidthSample {
            chi: inv,
            chi_dot: -q_dot * inv * inv,
            chi_ddot: (2.0 * q_dot * q_dot * inv - q_ddot) * inv * inv,
        }
    }

    /// Trap frequency `ω(t) = −χ''/(4χ)`. Positive is attractive, negative
    /// expulsive.
    pub fn omega(&self, t: f64) -> f64 {
        let w = self.eval(t);
        -w.chi_ddot / (4.0 * w.chi)
    }
}

/// Gaussian modulation `u(ξ) = 1 + λ exp(−ξ²)`; requires `λ > −1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulationShape {
    lambda: f64,
}

impl ModulationShape {
    pub const DEFAULT_LAMBDA: f64 = 0.5;

    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= -1.0 {
            return Err(Error::invalid(
                "lambda",
                format!("must be finite and > -1, got {lambda}"),
            ));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn u(&self, xi: f64) -> f64 {
        1.0 + self.lambda * (-xi * xi).exp()
    }

    pub fn du(&self, xi: f64) -> f64 {
        -2.0 * self.lambda * xi * (-xi * xi).exp()
    }

    pub fn d2u(&self, xi: f64) -> f64 {
        self.lambda * (4.0 * xi * xi - 2.0) * (-xi * xi).exp()
    }

    /// `∫₀^ξ u = ξ + λ (√π/2) erf(ξ)`.
    pub fn integral(&self, xi: f64) -> f64 {
        xi + self.lambda * 0.5 * PI.sqrt() * libm::erf(xi)
    }

    /// `(1/√u)'' · √u = −u''/(2u) + 3u'²/(4u²)`.
    pub fn curvature(&self, xi: f64) -> f64 {
        let e = (-xi * xi).exp();
        let u = 1.0 + self.lambda * e;
        let du = -2.0 * self.lambda * xi * e;
        let d2u = self.lambda * (4.0 * xi * xi - 2.0) * e;
        -d2u / (2.0 * u) + 0.75 * du * du / (u * u)
    }
}

/// Eigenvalue `μ` and the odd-order couplings `G₃, G₅, …` of the reduced
/// stationary equation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingConstants {
    pub mu: f64,
    pub g_odd: Vec<f64>,
}

impl CouplingConstants {
    pub fn new(mu: f64, g_odd: Vec<f64>) -> Result<Self> {
        let c = Self { mu, g_odd };
        c.validate()?;
        Ok(c)
    }

    pub fn cubic(mu: f64, g3: f64) -> Result<Self> {
        Self::new(mu, vec![g3])
    }

    pub fn cubic_quintic(mu: f64, g3: f64, g5: f64) -> Result<Self> {
        Self::new(mu, vec![g3, g5])
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(Error::invalid("mu", "must be finite"));
        }
        match self.g_odd.first() {
            None => return Err(Error::invalid("g_odd", "at least G3 is required")),
            Some(&g3) if g3 == 0.0 => return Err(Error::invalid("g_odd", "G3 must be non-zero")),
            _ => {}
        }
        if self.g_odd.iter().any(|g| !g.is_finite()) {
            return Err(Error::invalid("g_odd", "all couplings must be finite"));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.g_odd.len()
    }

    pub fn g3(&self) -> f64 {
        self.g_odd[0]
    }

    /// `G₅`, zero when only the cubic term is configured.
    pub fn g5(&self) -> f64 {
        self.g_odd.get(1).copied().unwrap_or(0.0)
    }
}

/// Time-only quantities at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub t: f64,
    pub chi: f64,
    pub chi_dot: f64,
    pub chi_ddot: f64,
}

impl Frame {
    pub fn omega(&self) -> f64 {
        -self.chi_ddot / (4.0 * self.chi)
    }
}

/// Potential selector for [`SimilarityMap::eval_potential`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialForm {
    /// The general expression with the map's own `μ` and `G₃`.
    Generic,
    /// The simplified potential of one of the four solution
    /// families, with its constants baked in.
    Branch(ProfileKind),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityMap {
    width: WidthProfile,
    shape: ModulationShape,
    couplings: CouplingConstants,
    #[serde(skip)]
    abs_g3: f64,
}

impl SimilarityMap {
    pub fn new(
        width: WidthProfile,
        shape: ModulationShape,
        couplings: CouplingConstants,
    ) -> Result<Self> {
        if !width.alpha.is_finite() || !width.beta.is_finite() {
            return Err(Error::invalid("alpha/beta", "must be finite"));
        }
        couplings.validate()?;
        let abs_g3 = couplings.g3().abs();
        Ok(Self {
            width,
            shape,
            couplings,
            abs_g3,
        })
    }

    /// Map carrying the couplings of one of the four exact families.
    pub fn for_profile(
        width: WidthProfile,
        shape: ModulationShape,
        profile: &StationaryProfile,
    ) -> Result<Self> {
        Self::new(width, shape, profile.couplings())
    }

    pub fn width(&self) -> &WidthProfile {
        &self.width
    }

    pub fn shape(&self) -> &ModulationShape {
        &self.shape
    }

    pub fn couplings(&self) -> &CouplingConstants {
        &self.couplings
    }

    pub fn frame(&self, t: f64) -> Frame {
        let w = self.width.eval(t);
        Frame {
            t,
            chi: w.chi,
            chi_dot: w.chi_dot,
            chi_ddot: w.chi_ddot,
        }
    }

    pub fn xi(&self, frame: &Frame, x: f64) -> f64 {
        x / frame.chi
    }

    /// `F(ξ) = |G₃|^{-1/3} (ξ + λ (√π/2) erf ξ)`, normalised by `F(0) = 0`.
    pub fn profile_coordinate(&self, xi: f64) -> f64 {
        self.shape.integral(xi) / self.abs_g3.cbrt()
    }

    /// `dF/dξ = |G₃|^{-1/3} u(ξ)`.
    pub fn profile_coordinate_slope(&self, xi: f64) -> f64 {
        self.shape.u(xi) / self.abs_g3.cbrt()
    }

    pub fn zeta(&self, frame: &Frame, x: f64) -> f64 {
        self.profile_coordinate(self.xi(frame, x))
    }

    /// `∂ζ/∂x = F'(ξ)/χ`.
    pub fn zeta_x(&self, frame: &Frame, x: f64) -> f64 {
        self.profile_coordinate_slope(self.xi(frame, x)) / frame.chi
    }

    /// `ρ = |G₃|^{1/6} (χ u)^{-1/2}`.
    pub fn rho(&self, frame: &Frame, x: f64) -> f64 {
        let u = self.shape.u(self.xi(frame, x));
        self.abs_g3.powf(1.0 / 6.0) / (frame.chi * u).sqrt()
    }

    /// `φ = χ' x² / (4χ)`.
    pub fn phase(&self, frame: &Frame, x: f64) -> f64 {
        frame.chi_dot * x * x / (4.0 * frame.chi)
    }

    /// `∂φ/∂x = χ' x / (2χ)`.
    pub fn phase_gradient(&self, frame: &Frame, x: f64) -> f64 {
        frame.chi_dot * x / (2.0 * frame.chi)
    }

    /// `∂φ/∂t = (χ''/χ − χ'²/χ²) x² / 4`.
    pub fn phase_rate(&self, frame: &Frame, x: f64) -> f64 {
        let r = frame.chi_dot / frame.chi;
        (frame.chi_ddot / frame.chi - r * r) * x * x / 4.0
    }

    /// `f = ρ_xx / ρ = h(ξ)/χ²`.
    pub fn curvature_term(&self, frame: &Frame, x: f64) -> f64 {
        self.shape.curvature(self.xi(frame, x)) / (frame.chi * frame.chi)
    }

    /// `v = ω x² + f − μ u² / (|G₃|^{2/3} χ²)`.
    pub fn potential(&self, frame: &Frame, x: f64) -> f64 {
        let xi = self.xi(frame, x);
        let u = self.shape.u(xi);
        let chi2 = frame.chi * frame.chi;
        frame.omega() * x * x + self.shape.curvature(xi) / chi2
            - self.couplings.mu * u * u / (self.abs_g3.powf(2.0 / 3.0) * chi2)
    }

    /// Simplified branch potentials, with the numeric constants folded in.
    pub fn branch_potential(&self, kind: ProfileKind, frame: &Frame, x: f64) -> f64 {
        let xi = self.xi(frame, x);
        let u = self.shape.u(xi);
        let chi2 = frame.chi * frame.chi;
        let base = frame.omega() * x * x + self.shape.curvature(xi) / chi2;
        let well = u * u / chi2;
        match kind {
            ProfileKind::CubicBright => base + 2f64.powf(-2.0 / 3.0) * well,
            ProfileKind::CubicDark => base - 2f64.cbrt() * well,
            ProfileKind::CqBright => base,
            ProfileKind::CqDark => base - 0.75f64.cbrt() * well,
        }
    }

    /// `g_{2n+1} = G_{2n+1} / (χ⁴ ρ^{4+2n})` for `n ≥ 1`.
    pub fn nonlinearity(&self, n: usize, frame: &Frame, x: f64) -> Result<f64> {
        if n == 0 || n > self.couplings.order() {
            return Err(Error::OrderOutOfRange {
                order: n,
                available: self.couplings.order(),
            });
        }
        Ok(self.nonlinearity_unchecked(n, frame, self.rho(frame, x)))
    }

    pub(crate) fn nonlinearity_unchecked(&self, n: usize, frame: &Frame, rho: f64) -> f64 {
        let chi4 = frame.chi.powi(4);
        self.couplings.g_odd[n - 1] / (chi4 * rho.powi(4 + 2 * n as i32))
    }

    /// Cubic coefficient in the simplified form `sgn(G₃) u³ / χ`.
    pub fn cubic_modulation(&self, frame: &Frame, x: f64) -> f64 {
        let u = self.shape.u(self.xi(frame, x));
        self.couplings.g3().signum() * u.powi(3) / frame.chi
    }

    /// Quintic coefficient in the simplified form `G₅ |G₃|^{-4/3} u⁴`.
    pub fn quintic_modulation(&self, frame: &Frame, x: f64) -> f64 {
        let u = self.shape.u(self.xi(frame, x));
        self.couplings.g5() * self.abs_g3.powf(-4.0 / 3.0) * u.powi(4)
    }

    /// `ρ e^{iφ} Φ(ζ)` without checking that the profile matches the map.
    pub fn compose(&self, profile: &StationaryProfile, frame: &Frame, x: f64) -> Complex64 {
        let amp = self.rho(frame, x) * profile.value(self.zeta(frame, x));
        Complex64::from_polar(amp, self.phase(frame, x))
    }

    fn check_profile(&self, profile: &StationaryProfile) -> Result<()> {
        let c = &self.couplings;
        let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()));
        let extra_zero = c.g_odd.iter().skip(2).all(|&g| g == 0.0);
        if same(c.mu, profile.mu) && same(c.g3(), profile.g3) && same(c.g5(), profile.g5) && extra_zero
        {
            Ok(())
        } else {
            Err(Error::CouplingMismatch {
                profile_mu: profile.mu,
                profile_g3: profile.g3,
                profile_g5: profile.g5,
                map_mu: c.mu,
                map_g3: c.g3(),
                map_g5: c.g5(),
            })
        }
    }

    // Point-wise conveniences in (x, t).

    pub fn eval_chi(&self, t: f64) -> WidthSample {
        self.width.eval(t)
    }

    pub fn eval_omega(&self, t: f64) -> f64 {
        self.width.omega(t)
    }

    /// `(ξ, ζ)` at `(x, t)`.
    pub fn eval_zeta(&self, x: f64, t: f64) -> (f64, f64) {
        let frame = self.frame(t);
        let xi = self.xi(&frame, x);
        (xi, self.profile_coordinate(xi))
    }

    pub fn eval_rho(&self, x: f64, t: f64) -> f64 {
        self.rho(&self.frame(t), x)
    }

    pub fn eval_phase(&self, x: f64, t: f64) -> f64 {
        self.phase(&self.frame(t), x)
    }

    pub fn eval_curvature_term(&self, x: f64, t: f64) -> f64 {
        self.curvature_term(&self.frame(t), x)
    }

    pub fn eval_potential(&self, form: PotentialForm, x: f64, t: f64) -> f64 {
        let frame = self.frame(t);
        match form {
            PotentialForm::Generic => self.potential(&frame, x),
            PotentialForm::Branch(kind) => self.branch_potential(kind, &frame, x),
        }
    }

    pub fn eval_nonlinearity(&self, n: usize, x: f64, t: f64) -> Result<f64> {
        self.nonlinearity(n, &self.frame(t), x)
    }

    pub fn assemble_wavefunction(
        &self,
        profile: &StationaryProfile,
        x: f64,
        t: f64,
    ) -> Result<Complex64> {
        self.check_profile(profile)?;
        Ok(self.compose(profile, &self.frame(t), x))
    }

    /// Checks the three transport constraints by central differences. See
    /// [`ConstraintReport`].
    pub fn verify_constraints(&self, lattice: &Lattice) -> ConstraintReport {
        let h = lattice.step;
        let rho = |x: f64, t: f64| self.eval_rho(x, t);
        let zeta = |x: f64, t: f64| self.eval_zeta(x, t).1;
        let phase = |x: f64, t: f64| self.eval_phase(x, t);
        let dx = |f: &dyn Fn(f64, f64) -> f64, x: f64, t: f64| (f(x + h, t) - f(x - h, t)) / (2.0 * h);
        let dt = |f: &dyn Fn(f64, f64) -> f64, x: f64, t: f64| (f(x, t + h) - f(x, t - h)) / (2.0 * h);

        let mass_flux = |x: f64, t: f64| rho(x, t).powi(2) * dx(&phase, x, t);
        let zeta_flux = |x: f64, t: f64| rho(x, t).powi(2) * dx(&zeta, x, t);

        let mut report = ConstraintReport {
            step: h,
            continuity: 0.0,
            transport: 0.0,
            flux: 0.0,
            flux_identity: 0.0,
        };
        for (x, t) in lattice.points() {
            let r = rho(x, t);
            let continuity = r * dt(&rho, x, t) + dx(&mass_flux, x, t);
            let transport = dt(&zeta, x, t) + 2.0 * dx(&phase, x, t) * dx(&zeta, x, t);
            let flux = dx(&zeta_flux, x, t);

            let frame = self.frame(t);
            let exact_flux = self.rho(&frame, x).powi(2) * self.zeta_x(&frame, x);
            let identity = (exact_flux - 1.0 / (frame.chi * frame.chi)).abs();

            report.continuity = report.continuity.max(continuity.abs());
            report.transport = report.transport.max(transport.abs());
            report.flux = report.flux.max(flux.abs());
            report.flux_identity = report.flux_identity.max(identity);
        }
        report
    }
}

/// Maximum absolute residuals of the constraints
/// `ρρ_t + (ρ²φ_x)_x`, `ζ_t + 2φ_xζ_x` and `(ρ²ζ_x)_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub step: f64,
    pub continuity: f64,
    pub transport: f64,
    pub flux: f64,
    /// `max |ρ²ζ_x − 1/χ²|` with the closed-form `ζ_x`; no differencing.
    pub flux_identity: f64,
}

impl ConstraintReport {
    pub fn residuals(&self) -> [f64; 3] {
        [self.continuity, self.transport, self.flux]
    }
}

/// Tensor-product sample points in `(x, t)` plus the differencing step used
/// at each point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub nt: usize,
    pub step: f64,
}

impl Lattice {
    pub fn new(x: (f64, f64, usize), t: (f64, f64, usize), step: f64) -> Self {
        Self {
            x_min: x.0,
            x_max: x.1,
            nx: x.2,
            t_min: t.0,
            t_max: t.1,
            nt: t.2,
            step,
        }
    }

    /// Same points, differencing step halved.
    pub fn refined(&self) -> Self {
        Self {
            step: self.step / 2.0,
            ..*self
        }
    }

    pub fn xs(&self) -> Vec<f64> {
        linspace(self.x_min, self.x_max, self.nx)
    }

    pub fn ts(&self) -> Vec<f64> {
        linspace(self.t_min, self.t_max, self.nt)
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> {
        let xs = self.xs();
        self.ts()
            .into_iter()
            .flat_map(move |t| xs.clone().into_iter().map(move |x| (x, t)))
    }
}

/// `n` evenly spaced points including both ends.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(lambda: f64, alpha: f64, beta: f64, kind: ProfileKind) -> SimilarityMap {
        SimilarityMap::for_profile(
            WidthProfile::new(alpha, beta),
            ModulationShape::new(lambda).unwrap(),
            &StationaryProfile::new(kind),
        )
        .unwrap()
    }

    /// Fourth-order central differences of `χ` as an independent check.
    fn chi_fd(w: &WidthProfile, t: f64, h: f64) -> (f64, f64) {
        let c = |t: f64| 1.0 / (1.0 + (1.0 + w.alpha * t.sin() + w.beta * (SQRT_2 * t).sin()).powi(2));
        let d1 = (-c(t + 2.0 * h) + 8.0 * c(t + h) - 8.0 * c(t - h) + c(t - 2.0 * h)) / (12.0 * h);
        let d2 = (-c(t + 2.0 * h) + 16.0 * c(t + h) - 30.0 * c(t) + 16.0 * c(t - h) - c(t - 2.0 * h))
            / (12.0 * h * h);
        (d1, d2)
    }

    #[test]
    fn constant_width_without_oscillation() {
        let w = WidthProfile::new(0.0, 0.0);
        for t in [0.0, 1.3, 17.0, -4.0] {
            let s = w.eval(t);
            assert_eq!(s.chi, 0.5);
            assert_eq!(s.chi_dot, 0.0);
            assert_eq!(s.chi_ddot, 0.0);
            assert_eq!(w.omega(t), 0.0);
        }
    }

    #[test]
    fn chi_at_origin_matches_finite_differences() {
        let w = WidthProfile::periodic();
        let s = w.eval(0.0);
        assert_eq!(s.chi, 0.5);
        let (_, d2) = chi_fd(&w, 0.0, 1e-4);
        // frozen from the finite-difference oracle
        assert!((d2 - 0.005).abs() < 1e-7, "fd chi'' = {d2}");
        assert!((s.chi_ddot - 0.005).abs() < 1e-15);
        assert!((w.omega(0.0) + 0.0025).abs() < 1e-15);
    }

    #[test]
    fn chi_derivatives_are_consistent() {
        for w in [WidthProfile::periodic(), WidthProfile::quasiperiodic(), WidthProfile::new(0.7, -0.4)] {
            for k in 0..50 {
                let t = 0.37 * k as f64;
                let s = w.eval(t);
                assert!(s.chi > 0.0 && s.chi <= 1.0);
                let (d1, d2) = chi_fd(&w, t, 1e-3);
                assert!((d1 - s.chi_dot).abs() < 1e-10, "t={t}");
                assert!((d2 - s.chi_ddot).abs() < 1e-7, "t={t}");
            }
        }
    }

    #[test]
    fn width_is_two_pi_periodic_without_beta() {
        let w = WidthProfile::periodic();
        for k in 0..200 {
            let t = 0.25 * k as f64;
            assert!((w.eval(t + 2.0 * PI).chi - w.eval(t).chi).abs() < 1e-12);
            assert!((w.omega(t + 2.0 * PI) - w.omega(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_must_exceed_minus_one() {
        assert!(ModulationShape::new(-1.0).is_err());
        assert!(ModulationShape::new(-1.5).is_err());
        assert!(ModulationShape::new(f64::NAN).is_err());
        assert!(ModulationShape::new(-0.999).is_ok());
    }

    #[test]
    fn zero_cubic_coupling_is_rejected() {
        assert!(CouplingConstants::cubic(1.0, 0.0).is_err());
        assert!(CouplingConstants::new(1.0, vec![]).is_err());
    }

    #[test]
    fn zeta_examples() {
        let m = map(0.0, 0.1, 0.0, ProfileKind::CubicBright);
        assert!((m.profile_coordinate(1.0) - 2f64.powf(-1.0 / 3.0)).abs() < 1e-15);
        let m = map(0.5, 0.1, 0.0, ProfileKind::CubicBright);
        assert_eq!(m.eval_zeta(0.0, 3.3), (0.0, 0.0));
        let expected = 2f64.powf(-1.0 / 3.0) * (10.0 + 0.5 * PI.sqrt() / 2.0);
        assert!((m.profile_coordinate(10.0) - expected).abs() < 1e-10);
    }

    #[test]
    fn rho_examples() {
        let m = map(0.0, 0.0, 0.0, ProfileKind::CubicBright);
        assert!((m.eval_rho(3.0, 1.0) - 2f64.powf(2.0 / 3.0)).abs() < 1e-14);
        let m = map(0.5, 0.0, 0.0, ProfileKind::CubicBright);
        let expected = 2f64.powf(1.0 / 6.0) / (0.5f64 * 1.5).sqrt();
        assert!((m.eval_rho(0.0, 0.0) - expected).abs() < 1e-14);
    }

    #[test]
    fn phase_examples() {
        let m = map(0.5, 0.0, 0.0, ProfileKind::CubicBright);
        assert_eq!(m.eval_phase(3.0, 2.0), 0.0);
        let m = map(0.5, 0.1, 0.0, ProfileKind::CubicBright);
        assert_eq!(m.eval_phase(0.0, 2.0), 0.0);
        let t = PI / 2.0;
        let (d1, _) = chi_fd(m.width(), t, 1e-3);
        let chi = m.eval_chi(t).chi;
        let fd = d1 / (4.0 * chi) * 4.0;
        assert!((m.eval_phase(2.0, t) - fd).abs() < 1e-10);
    }

    #[test]
    fn curvature_term_matches_differenced_rho() {
        let m = map(0.0, 0.1, 0.0, ProfileKind::CubicBright);
        assert_eq!(m.eval_curvature_term(1.2, 0.4), 0.0);

        let m = map(0.5, 0.1, 0.1, ProfileKind::CubicBright);
        let t = 0.9;
        let chi = m.eval_chi(t).chi;
        assert!((m.eval_curvature_term(0.0, t) - 1.0 / (3.0 * chi * chi)).abs() < 1e-13);
        let h = 1e-3;
        for k in -20..=20 {
            let x = 0.1 * k as f64;
            let r = |x: f64| m.eval_rho(x, t);
            let d2 = (-r(x + 2.0 * h) + 16.0 * r(x + h) - 30.0 * r(x) + 16.0 * r(x - h) - r(x - 2.0 * h))
                / (12.0 * h * h);
            assert!((d2 / r(x) - m.eval_curvature_term(x, t)).abs() < 1e-6, "x={x}");
        }
        assert!(m.eval_curvature_term(12.0, t).abs() < 1e-30);
    }

    #[test]
    fn branch_potentials_match_generic() {
        for kind in ProfileKind::ALL {
            let m = map(0.5, 0.1, 0.1, kind);
            for (x, t) in Lattice::new((-10.0, 10.0, 100), (0.0, 50.0, 100), 0.0).points() {
                let g = m.eval_potential(PotentialForm::Generic, x, t);
                let b = m.eval_potential(PotentialForm::Branch(kind), x, t);
                assert!((g - b).abs() < 1e-12 * (1.0 + g.abs()), "{kind:?} x={x} t={t}");
            }
        }
    }

    #[test]
    fn potential_limits() {
        let m = map(0.0, 0.0, 0.0, ProfileKind::CqBright);
        for x in [-3.0, 0.0, 7.5] {
            assert_eq!(m.eval_potential(PotentialForm::Generic, x, 1.0), 0.0);
        }
        let m = map(0.5, 0.1, 0.0, ProfileKind::CubicBright);
        let t = 1.1;
        let w = m.eval_chi(t);
        let x = 30.0;
        let far = m.width().omega(t) * x * x + 2f64.powf(-2.0 / 3.0) / (w.chi * w.chi);
        assert!((m.eval_potential(PotentialForm::Generic, x, t) - far).abs() < 1e-12);
    }

    #[test]
    fn nonlinearity_examples() {
        let m = map(0.0, 0.1, 0.0, ProfileKind::CubicBright);
        let chi = m.eval_chi(0.7).chi;
        assert!((m.eval_nonlinearity(1, 2.0, 0.7).unwrap() + 1.0 / chi).abs() < 1e-13);
        let m = map(0.5, 0.1, 0.0, ProfileKind::CubicDark);
        let chi = m.eval_chi(0.7).chi;
        assert!((m.eval_nonlinearity(1, 0.0, 0.7).unwrap() - 3.375 / chi).abs() < 1e-12);
        assert!(matches!(
            m.eval_nonlinearity(2, 0.0, 0.7),
            Err(Error::OrderOutOfRange { order: 2, available: 1 })
        ));
        assert!(m.eval_nonlinearity(0, 0.0, 0.7).is_err());
    }

    #[test]
    fn phase_terms_reduce_to_trap() {
        let m = map(0.5, 0.1, 0.1, ProfileKind::CubicBright);
        for (x, t) in Lattice::new((-10.0, 10.0, 41), (0.0, 50.0, 41), 0.0).points() {
            let f = m.frame(t);
            let lhs = -m.phase_gradient(&f, x).powi(2) - m.phase_rate(&f, x);
            assert!((lhs - f.omega() * x * x).abs() < 1e-12);
        }
    }

    #[test]
    fn wavefunction_rejects_mismatched_profile() {
        let m = map(0.5, 0.1, 0.0, ProfileKind::CubicBright);
        let dark = StationaryProfile::new(ProfileKind::CubicDark);
        assert!(matches!(
            m.assemble_wavefunction(&dark, 0.0, 0.0),
            Err(Error::CouplingMismatch { .. })
        ));
    }

    #[test]
    fn wavefunction_at_centre() {
        let m = map(0.5, 0.1, 0.0, ProfileKind::CubicBright);
        let bright = StationaryProfile::new(ProfileKind::CubicBright);
        let t = 2.0;
        let chi = m.eval_chi(t).chi;
        let psi = m.assemble_wavefunction(&bright, 0.0, t).unwrap();
        assert!((psi.re - 2f64.powf(1.0 / 6.0) / (chi * 1.5).sqrt()).abs() < 1e-14);
        assert_eq!(psi.im, 0.0);

        let m = map(0.5, 0.1, 0.0, ProfileKind::CubicDark);
        let dark = StationaryProfile::new(ProfileKind::CubicDark);
        assert_eq!(m.assemble_wavefunction(&dark, 0.0, t).unwrap().norm(), 0.0);
    }

    #[test]
    fn trivial_constraints_vanish() {
        let m = map(0.0, 0.0, 0.0, ProfileKind::CubicBright);
        for step in [0.1, 0.01] {
            let r = m.verify_constraints(&Lattice::new((-5.0, 5.0, 21), (0.0, 5.0, 6), step));
            for v in r.residuals() {
                assert!(v < 1e-10, "{r:?}");
            }
        }
    }
}
