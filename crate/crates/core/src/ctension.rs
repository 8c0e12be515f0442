//! Components of the c-biharmonic tension field and its specializations.
//!
//! The normal part is always returned as the scalar coefficient of the unit
//! normal η.

use nalgebra::DVector;
use num_rational::Ratio;
use serde::Serialize;

use crate::ambient::PointState;
use crate::error::{Error, Result};
use crate::spectra::{Epsilon, PrincipalSpectrum};

#[derive(Debug, Clone, PartialEq)]
pub struct CTensionComponents {
    pub tangential: DVector<f64>,
    pub normal: f64,
}

impl CTensionComponents {
    pub fn vanishes(&self, tol: f64) -> bool {
        self.tangential.amax() <= tol && self.normal.abs() <= tol
    }
}

/// Tangential and normal components for a hypersurface in 𝕃ᵐ(ε)×ℝ.
///
/// T(cos α) is derived from the shape operator as −⟨A(T), T⟩.
pub fn product_components(st: &PointState) -> CTensionComponents {
    let m = st.dim() as f64;
    let eps = st.eps().value();
    let h = st.mean_curvature();
    let a = st.shape_operator();
    let ca = st.cos_alpha();
    let grad_h = st.grad_h();
    let t = st.t();

    let tangential = (a * grad_h) * (-2.0 * m)
        - grad_h * (m * m * h)
        - t * (2.0 * m * (m - 1.0) * eps * h * ca)
        - (a * t) * (4.0 / 3.0 * (m - 1.0) * eps * ca)
        - st.grad_a2() / 3.0
        + grad_h * (2.0 / 3.0 * m * m * h);

    let normal = -m * st.lap_h()
        + 2.0 / 3.0 * m * (m - 1.0) * (3.0 - m) * eps * h
        + 1.0 / 3.0 * m * (7.0 * m - 13.0) * eps * h * st.sin2_alpha()
        + 5.0 / 3.0 * m * h * st.norm_a_squared()
        + 2.0 * (m - 2.0) * eps * st.t_of_cos_alpha()
        - 2.0 * st.trace_a_cubed()
        - 2.0 / 3.0 * m * m * m * h * h * h;

    CTensionComponents { tangential, normal }
}

/// Tangential component when H and |A|² are constant:
/// −(2/3) ε (m−1) cos α (3mH T + 2A(T)).
pub fn constant_spectrum_tangential(st: &PointState) -> DVector<f64> {
    let m = st.dim() as f64;
    let coeff = -2.0 / 3.0 * st.eps().value() * (m - 1.0) * st.cos_alpha();
    (st.t() * (3.0 * m * st.mean_curvature()) + (st.shape_operator() * st.t()) * 2.0) * coeff
}

/// Isoparametric hypersurfaces of Euclidean space ℝᵐ⁺¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EuclideanIsoFamily {
    Hyperplane {
        m: usize,
    },
    Sphere {
        r: f64,
        m: usize,
    },
    /// Sᵏ(r) × ℝᵐ⁻ᵏ.
    Cylinder {
        r: f64,
        k: usize,
        m: usize,
    },
}

impl EuclideanIsoFamily {
    pub fn spectrum(&self) -> Result<PrincipalSpectrum> {
        match *self {
            EuclideanIsoFamily::Hyperplane { m } => PrincipalSpectrum::zero(m),
            EuclideanIsoFamily::Sphere { r, m } => {
                check_radius(r)?;
                PrincipalSpectrum::umbilical(1.0 / r, m)
            }
            EuclideanIsoFamily::Cylinder { r, k, m } => {
                check_radius(r)?;
                if k == 0 || k >= m {
                    return Err(Error::Domain(format!("cylinder needs 1 ≤ k ≤ m−1, got k={k}, m={m}")));
                }
                PrincipalSpectrum::new([(1.0 / r, k), (0.0, m - k)], m)
            }
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must be positive, got {r}")))
    }
}

/// (5/3) m H |A|² − 2 tr A³ − (2/3) m³ H³ for a Euclidean isoparametric hypersurface.
pub fn euclidean_isoparametric_residual(fam: &EuclideanIsoFamily) -> Result<f64> {
    let spec = fam.spectrum()?;
    let m = spec.dim() as f64;
    let h = spec.mean_curvature();
    Ok(5.0 / 3.0 * m * h * spec.norm_a_squared() - 2.0 * spec.trace_a_cubed() - 2.0 / 3.0 * m.powi(3) * h.powi(3))
}

/// Normal coefficient for a hypersurface of a space form with constant
/// scalar curvature:
/// m(−ΔH + (H/3)(5|A|² − 2m²H² − ε(2m² − 11m + 6)) − (2/m) tr A³).
pub fn residual_const_scal(spec: &PrincipalSpectrum, eps: Epsilon, lap_h: f64) -> f64 {
    let m = spec.dim() as f64;
    let h = spec.mean_curvature();
    let bracket = 5.0 * spec.norm_a_squared() - 2.0 * m * m * h * h - eps.value() * (2.0 * m * m - 11.0 * m + 6.0);
    m * (-lap_h + h / 3.0 * bracket - 2.0 / m * spec.trace_a_cubed())
}

/// Components for a totally umbilical hypersurface (A = H·Id) of 𝕃ᵐ(ε)×ℝ.
pub fn umbilical_components(
    m: usize,
    eps: Epsilon,
    h: f64,
    grad_h: &DVector<f64>,
    t: &DVector<f64>,
    cos_alpha: f64,
    lap_h: f64,
) -> CTensionComponents {
    debug_assert_eq!(grad_h.len(), m);
    debug_assert_eq!(t.len(), m);
    let mf = m as f64;
    let e = eps.value();
    let sin2 = 1.0 - cos_alpha * cos_alpha;
    let tangential =
        grad_h * (-mf * (mf + 8.0) * h / 3.0) - t * (2.0 / 3.0 * (mf - 1.0) * (3.0 * mf + 2.0) * e * h * cos_alpha);
    let normal = -mf * lap_h
        + 2.0 / 3.0 * mf * (mf - 1.0) * (3.0 - mf) * e * h
        + (mf - 1.0) * (7.0 * mf - 12.0) / 3.0 * e * h * sin2
        - mf * (2.0 * mf * mf - 5.0 * mf + 6.0) / 3.0 * h.powi(3);
    CTensionComponents { tangential, normal }
}

/// 5m² − 10m − 4.
pub fn umbilical_quadratic(m: i64) -> i128 {
    let m = m as i128;
    5 * m * m - 10 * m - 4
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootFreeReport {
    pub m_max: i64,
    pub root_free: bool,
    /// Real roots 1 ± 3√5/5 of 5m² − 10m − 4, larger first.
    pub real_roots: (f64, f64),
}

/// Checks that 5m² − 10m − 4 has no integer zero for 2 ≤ m ≤ `m_max`.
pub fn umbilical_coefficient_rootfree(m_max: i64) -> Result<RootFreeReport> {
    if m_max < 2 {
        return Err(Error::Domain(format!("m_max must be at least 2, got {m_max}")));
    }
    let root_free = (2..=m_max).all(|m| umbilical_quadratic(m) != 0);
    let d = 3.0 * 5f64.sqrt() / 5.0;
    Ok(RootFreeReport {
        m_max,
        root_free,
        real_roots: (1.0 + d, 1.0 - d),
    })
}

/// Exact coefficients of the umbilical tangential component, built up from the
/// general tangential formula with A = H·Id and ∇|A|² = 2mH∇H.
///
/// Returns (coefficient of H∇H, coefficient of εH cos α T).
pub fn umbilical_tangential_coefficients(m: i64) -> (Ratio<i64>, Ratio<i64>) {
    let m = Ratio::from_integer(m);
    let third = Ratio::new(1, 3);
    let two = Ratio::from_integer(2);
    // −2mA(∇H) − m²H∇H − (1/3)∇|A|² + (2/3)m²H∇H
    let grad_coeff = -two * m - m * m - third * two * m + two * third * m * m;
    // −2m(m−1)εH cos α T − (4/3)(m−1)ε cos α H T
    let one = Ratio::from_integer(1);
    let t_coeff = -two * m * (m - one) - Ratio::new(4, 3) * (m - one);
    (grad_coeff, t_coeff)
}

/// Coefficient of εH cos α T after substituting ∇H = −ε cos α T into the
/// umbilical tangential component (ε² = 1 for ε ≠ 0).
pub fn umbilical_substituted_coefficient(m: i64) -> Ratio<i64> {
    let (grad_coeff, t_coeff) = umbilical_tangential_coefficients(m);
    -grad_coeff + t_coeff
}

/// ± (m−1) b³ / (1+b²)^{3/2}.
pub fn hyperbolic_trace_a_cubed(b: f64, m: usize, sign: i8) -> f64 {
    let s = if sign < 0 { -1.0 } else { 1.0 };
    s * (m as f64 - 1.0) * b.powi(3) / (1.0 + b * b).powf(1.5)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForcedGeodesicWitness {
    /// Principal curvature of T supplied by the caller.
    pub t_eigenvalue: f64,
    pub mean_curvature: f64,
    /// Parameter of the remaining m−1 curvatures ±b/√(1+b²) forced by tr A³ = 0.
    pub forced_b: f64,
    pub trace_a_cubed_at_forced_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Classification {
    /// ε = 0: only hyperplanes survive.
    EuclideanOnlyGeodesic,
    /// cos α = 0: a cylinder over a hypersurface of the space form.
    CylinderOverSpaceForm,
    /// ε ≠ 0, cos α ≠ 0: forced to be totally geodesic.
    HyperbolicForcedGeodesic(ForcedGeodesicWitness),
}

const RELATION_TOL: f64 = 1e-10;

/// Case analysis for c-biharmonic hypersurfaces of 𝕃ᵐ(ε)×ℝ with constant
/// principal curvatures. `a_of_t_eigenvalue` is the principal curvature of T.
pub fn classify_constant_spectrum(
    eps: Epsilon,
    cos_alpha: f64,
    spec: &PrincipalSpectrum,
    a_of_t_eigenvalue: f64,
) -> Result<Classification> {
    if eps == Epsilon::Flat {
        return Ok(Classification::EuclideanOnlyGeodesic);
    }
    if cos_alpha == 0.0 {
        return Ok(Classification::CylinderOverSpaceForm);
    }
    let m = spec.dim();
    let h = spec.mean_curvature();
    let required = -1.5 * m as f64 * h;
    if (a_of_t_eigenvalue - required).abs() > RELATION_TOL * (1.0 + required.abs()) {
        return Err(Error::InvalidCase(format!(
            "A(T) = {a_of_t_eigenvalue} T but c-biharmonicity needs A(T) = -3mH/2 T = {required} T"
        )));
    }
    // T principal with cos α ≠ 0 and constant curvatures: ε = −1 and A(T) = 0.
    if eps == Epsilon::Spherical {
        return Err(Error::InvalidCase(
            "T principal with cos α ≠ 0 and constant principal curvatures requires ε = -1".into(),
        ));
    }
    if a_of_t_eigenvalue.abs() > RELATION_TOL {
        return Err(Error::InvalidCase(format!(
            "principal curvature of T must vanish, got {a_of_t_eigenvalue}"
        )));
    }
    let forced_b = 0.0;
    Ok(Classification::HyperbolicForcedGeodesic(ForcedGeodesicWitness {
        t_eigenvalue: a_of_t_eigenvalue,
        mean_curvature: h,
        forced_b,
        trace_a_cubed_at_forced_b: hyperbolic_trace_a_cubed(forced_b, m, 1),
    }))
}
