//! Profile ODE of the biconservative rotational hypersurface in 𝕊⁵.
//!
//! The profile radius h₁ satisfies h₁h₁″ + h₁′² + 2h₁² − 1 = 0 with prime
//! integral h₁²h₁′² + h₁⁴ − h₁² = C, C ∈ (−1/4, 0). Only h₁ enters the
//! curvatures, so the other profile coordinates are not tracked.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{Epsilon, PrincipalSpectrum};

/// Trajectory integration aborts once the prime-integral residual exceeds this.
pub const RESIDUAL_MONITOR: f64 = 1e-6;
const TURNING_GUARD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileState {
    pub c: f64,
    pub s: f64,
    pub h1: f64,
    pub h1p: f64,
}

fn check_constant(c: f64) -> Result<()> {
    if c > -0.25 && c < 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("C = {c} outside (-1/4, 0)")))
    }
}

/// Range (h₁_min, h₁_max) allowed by the prime integral: h₁² lies between the
/// roots of x² − x − C.
pub fn admissible_range(c: f64) -> Result<(f64, f64)> {
    check_constant(c)?;
    let d = (1.0 + 4.0 * c).sqrt();
    Ok((((1.0 - d) / 2.0).sqrt(), ((1.0 + d) / 2.0).sqrt()))
}

impl ProfileState {
    pub fn new(c: f64, s: f64, h1: f64, h1p: f64) -> Result<Self> {
        check_constant(c)?;
        if !(h1 > 0.0 && h1 < 1.0) {
            return Err(Error::Domain(format!("h1 = {h1} outside (0, 1)")));
        }
        Ok(Self { c, s, h1, h1p })
    }

    /// State at the outer turning point (h₁_max, 0).
    pub fn initial(c: f64) -> Result<Self> {
        let (_, hmax) = admissible_range(c)?;
        Self::new(c, 0.0, hmax, 0.0)
    }

    /// State with h₁ given and h₁′ ≥ 0 taken from the prime integral.
    pub fn on_integral(c: f64, h1: f64) -> Result<Self> {
        let sq = c / (h1 * h1) + 1.0 - h1 * h1;
        if sq < -1e-15 {
            return Err(Error::Domain(format!(
                "h1 = {h1} outside the admissible range for C = {c}"
            )));
        }
        Self::new(c, 0.0, h1, sq.max(0.0).sqrt())
    }

    /// h₁²h₁′² + h₁⁴ − h₁² − C.
    pub fn prime_residual(&self) -> f64 {
        let h2 = self.h1 * self.h1;
        h2 * self.h1p * self.h1p + h2 * h2 - h2 - self.c
    }

    /// h₁″ = −(C + h₁⁴)/h₁³.
    pub fn acceleration(&self) -> Result<f64> {
        acceleration(self.c, self.h1)
    }

    /// Principal curvatures (k₁, k₂) with multiplicities (1, 3):
    /// k₂ = −√(−C)/h₁², k₁ = −k₂.
    pub fn curvatures(&self) -> Result<(f64, f64)> {
        self.check_admissible()?;
        let k2 = -(-self.c).sqrt() / (self.h1 * self.h1);
        Ok((-k2, k2))
    }

    /// Curvatures from the raw profile expressions
    /// k₁ = (h₁ + h₁″)/√(1 − h₁² − h₁′²), k₂ = −√(1 − h₁² − h₁′²)/h₁.
    pub fn profile_curvatures(&self) -> Result<(f64, f64)> {
        self.check_admissible()?;
        let w = 1.0 - self.h1 * self.h1 - self.h1p * self.h1p;
        if w <= 0.0 {
            return Err(Error::Domain(format!("1 - h1² - h1'² = {w} is not positive")));
        }
        let root = w.sqrt();
        Ok(((self.h1 + self.acceleration()?) / root, -root / self.h1))
    }

    pub fn spectrum(&self) -> Result<PrincipalSpectrum> {
        let (k1, k2) = self.curvatures()?;
        PrincipalSpectrum::new([(k1, 1), (k2, 3)], 4)
    }

    /// H = −√(−C)/(2h₁²).
    pub fn mean_curvature(&self) -> Result<f64> {
        Ok(0.5 * self.curvatures()?.1)
    }

    pub fn scalar_curvature(&self) -> Result<f64> {
        Ok(self.spectrum()?.scalar_curvature_spaceform(Epsilon::Spherical))
    }

    /// Normal coefficient 4(H″ + 3(h₁′/h₁)H′ + 8H³ + 2H) of the c-bitension field,
    /// with H′, H″ taken analytically along the profile.
    pub fn ctension_residual(&self) -> Result<f64> {
        self.check_admissible()?;
        let rc = (-self.c).sqrt();
        let (h1, h1p) = (self.h1, self.h1p);
        let h1pp = self.acceleration()?;
        let h = self.mean_curvature()?;
        let dh = rc * h1p / h1.powi(3);
        let ddh = rc * (h1pp * h1 - 3.0 * h1p * h1p) / h1.powi(4);
        Ok(4.0 * (ddh + 3.0 * (h1p / h1) * dh + 8.0 * h.powi(3) + 2.0 * h))
    }

    fn check_admissible(&self) -> Result<()> {
        check_constant(self.c)?;
        if !(self.h1 > 0.0 && self.h1 < 1.0) {
            return Err(Error::Domain(format!("h1 = {} outside (0, 1)", self.h1)));
        }
        Ok(())
    }
}

pub fn acceleration(c: f64, h1: f64) -> Result<f64> {
    if !(h1 > 0.0) {
        return Err(Error::Domain(format!("h1 = {h1} must be positive")));
    }
    let num = c + h1.powi(4);
    if num.abs() < TURNING_GUARD {
        return Ok(0.0);
    }
    Ok(-num / h1.powi(3))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub state: ProfileState,
    pub prime_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub c: f64,
    pub step: f64,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn max_drift(&self) -> f64 {
        self.samples.iter().map(|s| s.prime_residual.abs()).fold(0.0, f64::max)
    }

    /// Writes `s,h1,h1p,prime_residual,H,ctension_residual`, one row per sample.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "s,h1,h1p,prime_residual,H,ctension_residual")?;
        for smp in &self.samples {
            let st = &smp.state;
            writeln!(
                w,
                "{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e}",
                st.s,
                st.h1,
                st.h1p,
                smp.prime_residual,
                st.mean_curvature()?,
                st.ctension_residual()?
            )?;
        }
        Ok(())
    }
}

fn rhs(c: f64, h1: f64, h1p: f64) -> Result<(f64, f64)> {
    Ok((h1p, acceleration(c, h1)?))
}

/// Classical fourth-order Runge–Kutta from (h₁_max, 0), sampled every step.
pub fn integrate(c: f64, s_max: f64, step: f64) -> Result<Trajectory> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    if !(s_max >= 0.0) || !s_max.is_finite() {
        return Err(Error::Domain(format!("s_max must be non-negative, got {s_max}")));
    }
    let start = ProfileState::initial(c)?;
    let n = (s_max / step).round() as usize;
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(Sample {
        state: start,
        prime_residual: start.prime_residual(),
    });

    let (mut y, mut v) = (start.h1, start.h1p);
    for i in 1..=n {
        let (k1y, k1v) = rhs(c, y, v)?;
        let (k2y, k2v) = rhs(c, y + 0.5 * step * k1y, v + 0.5 * step * k1v)?;
        let (k3y, k3v) = rhs(c, y + 0.5 * step * k2y, v + 0.5 * step * k2v)?;
        let (k4y, k4v) = rhs(c, y + step * k3y, v + step * k3v)?;
        y += step / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        let s = i as f64 * step;
        let state = ProfileState { c, s, h1: y, h1p: v };
        let residual = state.prime_residual();
        if !(residual.abs() <= RESIDUAL_MONITOR) {
            return Err(Error::StepTooLarge { s, residual });
        }
        samples.push(Sample {
            state,
            prime_residual: residual,
        });
    }
    Ok(Trajectory { c, step, samples })
}
