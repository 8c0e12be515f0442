//! Pointwise data of a hypersurface in 𝕃ᵐ(ε)×ℝ.
//!
//! All vectors and matrices are components in one orthonormal tangent frame
//! fixed by the caller. Gradients and the Laplacian of H are free inputs; at
//! points of constant curvature they are zero.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectra::Epsilon;

const SYMMETRY_TOL: f64 = 1e-12;
const UNIT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PointState {
    m: usize,
    eps: Epsilon,
    a: DMatrix<f64>,
    t: DVector<f64>,
    cos_alpha: f64,
    grad_h: DVector<f64>,
    grad_a2: DVector<f64>,
    lap_h: f64,
}

impl PointState {
    /// Shape operator `a`, tangential part `t` of ∂t and the angle cosine.
    /// Gradients and ΔH start at zero.
    pub fn new(eps: Epsilon, a: DMatrix<f64>, t: DVector<f64>, cos_alpha: f64) -> Result<Self> {
        let m = a.nrows();
        if m < 2 {
            return Err(Error::Domain(format!("dimension must be at least 2, got {m}")));
        }
        if a.ncols() != m || t.len() != m {
            return Err(Error::Domain(format!(
                "shape operator is {}x{} but T has {} components",
                a.nrows(),
                a.ncols(),
                t.len()
            )));
        }
        let asym = (&a - a.transpose()).amax();
        if asym > SYMMETRY_TOL {
            return Err(Error::Domain(format!("shape operator not symmetric (defect {asym:e})")));
        }
        let unit = t.norm_squared() + cos_alpha * cos_alpha;
        if (unit - 1.0).abs() > UNIT_TOL {
            return Err(Error::Domain(format!("|T|² + cos²α = {unit}, expected 1")));
        }
        Ok(Self {
            m,
            eps,
            a,
            t,
            cos_alpha,
            grad_h: DVector::zeros(m),
            grad_a2: DVector::zeros(m),
            lap_h: 0.0,
        })
    }

    /// Attaches ∇H, ∇|A|² and ΔH.
    pub fn with_derivatives(mut self, grad_h: DVector<f64>, grad_a2: DVector<f64>, lap_h: f64) -> Result<Self> {
        if grad_h.len() != self.m || grad_a2.len() != self.m {
            return Err(Error::Domain(format!("gradients must have {} components", self.m)));
        }
        self.grad_h = grad_h;
        self.grad_a2 = grad_a2;
        self.lap_h = lap_h;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn eps(&self) -> Epsilon {
        self.eps
    }

    pub fn shape_operator(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn t(&self) -> &DVector<f64> {
        &self.t
    }

    pub fn cos_alpha(&self) -> f64 {
        self.cos_alpha
    }

    /// sin²α, taken as 1 − cos²α.
    pub fn sin2_alpha(&self) -> f64 {
        1.0 - self.cos_alpha * self.cos_alpha
    }

    pub fn grad_h(&self) -> &DVector<f64> {
        &self.grad_h
    }

    pub fn grad_a2(&self) -> &DVector<f64> {
        &self.grad_a2
    }

    pub fn lap_h(&self) -> f64 {
        self.lap_h
    }

    pub fn mean_curvature(&self) -> f64 {
        self.a.trace() / self.m as f64
    }

    pub fn norm_a_squared(&self) -> f64 {
        self.a.norm_squared()
    }

    pub fn trace_a_cubed(&self) -> f64 {
        (&self.a * &self.a * &self.a).trace()
    }

    /// Derivative of cos α along T: −⟨A(T), T⟩.
    pub fn t_of_cos_alpha(&self) -> f64 {
        -(&self.a * &self.t).dot(&self.t)
    }

    /// Ricci operator ε(m−1)I − ε|T|²I − ε(m−2) T⊗T − A² + mH A.
    pub fn ricci_operator(&self) -> DMatrix<f64> {
        let m = self.m as f64;
        let eps = self.eps.value();
        let id = DMatrix::<f64>::identity(self.m, self.m);
        let tt = &self.t * self.t.transpose();
        let mh = self.a.trace();
        id * (eps * (m - 1.0) - eps * self.t.norm_squared()) - tt * (eps * (m - 2.0)) - &self.a * &self.a + &self.a * mh
    }

    /// Scalar curvature εm(m−1) − 2ε(m−1)|T|² − |A|² + m²H².
    pub fn scalar_curvature_product(&self) -> f64 {
        let m = self.m as f64;
        let eps = self.eps.value();
        let h = self.mean_curvature();
        eps * m * (m - 1.0) - 2.0 * eps * (m - 1.0) * self.t.norm_squared() - self.norm_a_squared() + m * m * h * h
    }
}
