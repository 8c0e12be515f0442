//! Isoparametric families in 𝕊ᵐ⁺¹ and their c-biharmonicity residual.
//!
//! A family of degree ℓ has principal curvatures kᵢ(s) = cot(s + (i−1)π/ℓ)
//! for s ∈ (0, π/ℓ), with multiplicities alternating m₁, m₂, m₁, …

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{rat, CubicPoly};
use crate::spectra::{Epsilon, PrincipalSpectrum};

/// Distance from a cotangent pole below which evaluation is refused.
pub const POLE_GUARD: f64 = 1e-9;
/// Samples used by the sign scan in [`solve_cbih`].
pub const SCAN_SAMPLES: usize = 4096;
/// The scan interval is the open domain shrunk by this much at each end.
pub const SCAN_SHRINK: f64 = 1e-6;
pub const DEFAULT_SOLVE_TOL: f64 = 1e-12;
/// |H| below this marks a root as minimal.
pub const MINIMAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IsoparametricFamily {
    ell: u32,
    m1: u32,
    m2: u32,
}

impl IsoparametricFamily {
    /// For ℓ = 1 only `m1` is used; for ℓ = 3, 6 the multiplicities must agree.
    pub fn new(ell: u32, m1: u32, m2: u32) -> Result<Self> {
        if m1 == 0 {
            return Err(Error::Domain("multiplicity m1 must be positive".into()));
        }
        match ell {
            1 => {
                if m1 < 2 {
                    return Err(Error::Domain(format!("degree 1 needs m ≥ 2, got {m1}")));
                }
                Ok(Self { ell, m1, m2: 0 })
            }
            2 | 4 => {
                if m2 == 0 {
                    return Err(Error::Domain("multiplicity m2 must be positive".into()));
                }
                Ok(Self { ell, m1, m2 })
            }
            3 | 6 => {
                let allowed: &[u32] = if ell == 3 { &[1, 2, 4, 8] } else { &[1, 2] };
                if m1 != m2 {
                    return Err(Error::Domain(format!(
                        "degree {ell} needs equal multiplicities, got ({m1}, {m2})"
                    )));
                }
                if !allowed.contains(&m1) {
                    return Err(Error::Domain(format!(
                        "degree {ell} multiplicity must be one of {allowed:?}, got {m1}"
                    )));
                }
                Ok(Self { ell, m1, m2 })
            }
            _ => Err(Error::Domain(format!("degree must be 1, 2, 3, 4 or 6, got {ell}"))),
        }
    }

    /// Equal multiplicities, or the single multiplicity for ℓ = 1.
    pub fn uniform(ell: u32, mult: u32) -> Result<Self> {
        Self::new(ell, mult, mult)
    }

    pub fn degree(&self) -> u32 {
        self.ell
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u32 {
        self.m2
    }

    pub fn multiplicity(&self, i: u32) -> u32 {
        if self.ell == 1 || i.is_multiple_of(2) {
            self.m1
        } else {
            self.m2
        }
    }

    /// Dimension m of the hypersurface.
    pub fn dim(&self) -> u32 {
        (0..self.ell).map(|i| self.multiplicity(i)).sum()
    }

    pub fn has_equal_multiplicities(&self) -> bool {
        self.ell == 1 || self.m1 == self.m2
    }

    /// Right end π/ℓ of the parameter domain.
    pub fn upper(&self) -> f64 {
        PI / self.ell as f64
    }

    fn check_parameter(&self, s: f64) -> Result<()> {
        let upper = self.upper();
        if !(s > 0.0 && s < upper) {
            return Err(Error::Domain(format!("s = {s} outside (0, π/{})", self.ell)));
        }
        if s < POLE_GUARD || upper - s < POLE_GUARD {
            return Err(Error::Pole(format!(
                "s = {s} within {POLE_GUARD:e} of a cotangent pole"
            )));
        }
        Ok(())
    }

    pub fn spectrum_at(&self, s: f64) -> Result<PrincipalSpectrum> {
        self.check_parameter(s)?;
        let step = self.upper();
        let entries = (0..self.ell).map(|i| {
            let x = s + i as f64 * step;
            (x.cos() / x.sin(), self.multiplicity(i) as usize)
        });
        PrincipalSpectrum::new(entries, self.dim() as usize)
    }

    /// Hm(5|A|² − 2m²H² − 2m² + 11m − 6) − 6 tr A³ at parameter s.
    pub fn residual(&self, s: f64) -> Result<f64> {
        Ok(sphere_residual(&self.spectrum_at(s)?))
    }

    /// Parameter at which the family is minimal.
    pub fn minimal_parameter(&self) -> f64 {
        let (m1, m2) = (self.m1 as f64, self.m2 as f64);
        match self.ell {
            1 => PI / 2.0,
            2 if self.m1 != self.m2 => (m1 / m2).sqrt().atan(),
            4 if self.m1 != self.m2 => 0.25 * ((m2 - m1) / (m1 + m2)).acos(),
            ell => PI / (2.0 * ell as f64),
        }
    }

    /// Squared radii (sin²s, cos²s) of the Clifford torus Sᵐ¹(r₁)×Sᵐ²(r₂).
    pub fn torus_radii(&self, s: f64) -> Result<(f64, f64)> {
        if self.ell != 2 {
            return Err(Error::Domain(format!("torus radii need degree 2, got {}", self.ell)));
        }
        self.check_parameter(s)?;
        Ok((s.sin().powi(2), s.cos().powi(2)))
    }
}

/// Normal residual of a hypersurface of 𝕊ᵐ⁺¹ with constant principal curvatures.
pub fn sphere_residual(spec: &PrincipalSpectrum) -> f64 {
    let m = spec.dim() as f64;
    let h = spec.mean_curvature();
    h * m * (5.0 * spec.norm_a_squared() - 2.0 * m * m * h * h - 2.0 * m * m + 11.0 * m - 6.0)
        - 6.0 * spec.trace_a_cubed()
}

/// Closed form of the degree-3 residual:
/// −27 m₁ cos 3s (2m₁² + m₁ cos 6s − 6m₁ + 6) / (sin³s (2 cos 2s + 1)³).
///
/// The overall sign is fixed so the value equals [`IsoparametricFamily::residual`].
pub fn residual_l3_closed(m1: u32, s: f64) -> Result<f64> {
    if ![1, 2, 4, 8].contains(&m1) {
        return Err(Error::Domain(format!(
            "degree 3 multiplicity must be 1, 2, 4 or 8, got {m1}"
        )));
    }
    if !(s > 0.0 && s < PI / 3.0) {
        return Err(Error::Domain(format!("s = {s} outside (0, π/3)")));
    }
    let den = 2.0 * (2.0 * s).cos() + 1.0;
    if den.abs() < 1e-12 {
        return Err(Error::Pole(format!("2cos2s + 1 vanishes at s = {s}")));
    }
    let m = m1 as f64;
    Ok(
        -27.0 * m * (3.0 * s).cos() * (2.0 * m * m + m * (6.0 * s).cos() - 6.0 * m + 6.0)
            / (s.sin().powi(3) * den.powi(3)),
    )
}

/// Zeros on (0, π/3) of the degree-3 residual, read off its factors
/// cos 3s and 2m₁² + m₁ cos 6s − 6m₁ + 6. Repeated zeros are listed once.
pub fn degree3_zeros(m1: u32) -> Result<Vec<f64>> {
    if ![1, 2, 4, 8].contains(&m1) {
        return Err(Error::Domain(format!(
            "degree 3 multiplicity must be 1, 2, 4 or 8, got {m1}"
        )));
    }
    let m = m1 as i64;
    let mut zeros = vec![PI / 6.0];
    // cos 6s = (6m − 6 − 2m²)/m; c = −1 gives 6s = π again, c = 1 lies outside (0, π/3)
    let (num, den) = (6 * m - 6 - 2 * m * m, m);
    if num.abs() < den {
        let a = (num as f64 / den as f64).acos();
        zeros.extend([a / 6.0, (2.0 * PI - a) / 6.0]);
    }
    zeros.sort_by(f64::total_cmp);
    zeros.dedup();
    Ok(zeros)
}

/// Degree-4 residual numerator as a cubic in y = cos 4s, with exact integer
/// coefficients.
pub fn quartic_poly(m1: u32, m2: u32) -> CubicPoly {
    let (a, b) = (m1 as i64, m2 as i64);
    let sq = a * a + b * b;
    let cu = a * a * a + b * b * b;
    let sum = a + b;
    let p = a * b;
    let a0 = 4 * (a - b) * (4 * sq - 13 * sum + 12);
    let a1 = 4 * (8 * cu - 23 * sq - 6 * p + 24 * sum);
    let a2 = 4 * (a - b) * (4 * sq + 8 * p - 7 * sum + 12);
    let a3 = 12 * sum * sum;
    CubicPoly::new(rat(a0), rat(a1), rat(a2), rat(a3))
}

/// Trigonometric form A(s) of the degree-4 numerator.
pub fn quartic_trig(m1: u32, m2: u32, s: f64) -> f64 {
    let (a, b) = (m1 as f64, m2 as f64);
    let sq = a * a + b * b;
    let sum = a + b;
    let p = a * b;
    2.0 * (a - b) * (12.0 * sq + 8.0 * p - 33.0 * sum + 36.0)
        + (32.0 * (a.powi(3) + b.powi(3)) - 83.0 * sq - 6.0 * p + 96.0 * sum) * (4.0 * s).cos()
        + 2.0 * (a - b) * (4.0 * sq + 8.0 * p - 7.0 * sum + 12.0) * (8.0 * s).cos()
        + 3.0 * sum * sum * (12.0 * s).cos()
}

/// Limits of A at s → 0⁺ and s → π/4⁻: (32m₁(6 + m₁(2m₁ − 5)), −32m₂(6 + m₂(2m₂ − 5))).
pub fn quartic_limits(m1: u32, m2: u32) -> (i64, i64) {
    let (a, b) = (m1 as i64, m2 as i64);
    (32 * a * (6 + a * (-5 + 2 * a)), -32 * b * (6 + b * (-5 + 2 * b)))
}

/// 48(m₁² − m₂²)/√(m₁m₂), the degree-4 residual at the minimal parameter.
pub fn quartic_residual_at_minimal(m1: u32, m2: u32) -> f64 {
    let (a, b) = (m1 as f64, m2 as f64);
    48.0 * (a * a - b * b) / (a * b).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootRecord {
    pub s: f64,
    pub residual: f64,
    pub mean_curvature: f64,
    pub norm_a_squared: f64,
    pub trace_a_cubed: f64,
    pub scalar_curvature: f64,
    pub is_minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub degree: u32,
    pub m1: u32,
    pub m2: u32,
    pub m: u32,
    pub interval: (f64, f64),
    pub s_star: Vec<f64>,
    pub roots: Vec<RootRecord>,
    pub residual_tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub samples: usize,
    pub shrink: f64,
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            samples: SCAN_SAMPLES,
            shrink: SCAN_SHRINK,
            tol: DEFAULT_SOLVE_TOL,
        }
    }
}

/// Uniform samples of the shrunk open parameter interval.
pub fn scan_grid(fam: &IsoparametricFamily, samples: usize, shrink: f64) -> Vec<f64> {
    let lo = shrink;
    let hi = fam.upper() - shrink;
    let n = samples.max(2);
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// (s, residual) pairs on the shrunk open interval.
pub fn scan(fam: &IsoparametricFamily, samples: usize) -> Result<Vec<(f64, f64)>> {
    scan_grid(fam, samples, SCAN_SHRINK)
        .into_iter()
        .map(|s| Ok((s, fam.residual(s)?)))
        .collect()
}

/// Indices i where the residual changes sign between sample i and i+1,
/// ignoring exact zeros.
pub fn sign_changes(values: &[(f64, f64)]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut last: Option<(usize, f64)> = None;
    for (i, &(_, v)) in values.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        if let Some((j, prev)) = last {
            if prev.signum() != v.signum() {
                out.push(j);
            }
        }
        last = Some((i, v));
    }
    out
}

/// All zeros of the residual on (0, π/ℓ) found by sign scan and bisection.
pub fn solve_cbih(fam: &IsoparametricFamily, tol: f64) -> Result<SolveReport> {
    solve_with(
        fam,
        SolveOptions {
            tol,
            ..SolveOptions::default()
        },
    )
}

pub fn solve_with(fam: &IsoparametricFamily, opts: SolveOptions) -> Result<SolveReport> {
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let grid = scan_grid(fam, opts.samples, opts.shrink);
    let values: Vec<f64> = grid.iter().map(|&s| fam.residual(s)).collect::<Result<_>>()?;

    let mut roots = Vec::new();
    let mut i = 0;
    while i < grid.len() {
        if values[i] == 0.0 {
            roots.push(grid[i]);
            i += 1;
            continue;
        }
        if i + 1 < grid.len() && values[i + 1] != 0.0 && values[i].signum() != values[i + 1].signum() {
            roots.push(bisect(fam, grid[i], grid[i + 1], values[i], opts.tol)?);
        }
        i += 1;
    }

    let records = roots
        .iter()
        .map(|&s| {
            let spec = fam.spectrum_at(s)?;
            let h = spec.mean_curvature();
            Ok(RootRecord {
                s,
                residual: sphere_residual(&spec),
                mean_curvature: h,
                norm_a_squared: spec.norm_a_squared(),
                trace_a_cubed: spec.trace_a_cubed(),
                scalar_curvature: spec.scalar_curvature_spaceform(Epsilon::Spherical),
                is_minimal: h.abs() < MINIMAL_TOL,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SolveReport {
        degree: fam.ell,
        m1: fam.m1,
        m2: if fam.ell == 1 { fam.m1 } else { fam.m2 },
        m: fam.dim(),
        interval: (0.0, fam.upper()),
        s_star: roots,
        roots: records,
        residual_tolerance: opts.tol,
    })
}

fn bisect(fam: &IsoparametricFamily, mut a: f64, mut b: f64, fa: f64, tol: f64) -> Result<f64> {
    let sa = fa.signum();
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = fam.residual(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
