//! Verification toolkit for conformal-biharmonic (c-biharmonic) hypersurfaces.
//!
//! - [`spectra`]: invariants of constant principal-curvature spectra.
//! - [`ambient`]: pointwise data of hypersurfaces in 𝕃ᵐ(ε)×ℝ.
//! - [`ctension`]: the c-biharmonic tension field and its specializations.
//! - [`sphere`]: isoparametric families in 𝕊ᵐ⁺¹ and the parameter solver.
//! - [`poly`]: exact Sturm root counting for the classification cubics.
//! - [`ode`]: the rotational profile ODE and its prime integral.
//! - [`report`], [`verify`], [`tables`], [`config`]: reports and settings for the CLI.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ambient;
pub mod config;
pub mod ctension;
pub mod error;
pub mod ode;
pub mod poly;
pub mod report;
pub mod spectra;
pub mod sphere;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
