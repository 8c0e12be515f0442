//! Constant principal-curvature spectra and their scalar invariants.

use serde::Serialize;

use crate::error::{Error, Result};

/// Sectional curvature of the ambient space form: −1, 0 or +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Epsilon {
    Hyperbolic,
    Flat,
    Spherical,
}

impl Epsilon {
    pub fn value(self) -> f64 {
        match self {
            Epsilon::Hyperbolic => -1.0,
            Epsilon::Flat => 0.0,
            Epsilon::Spherical => 1.0,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Epsilon::Hyperbolic => -1,
            Epsilon::Flat => 0,
            Epsilon::Spherical => 1,
        }
    }
}

impl TryFrom<i32> for Epsilon {
    type Error = Error;

    fn try_from(v: i32) -> Result<Self> {
        match v {
            -1 => Ok(Epsilon::Hyperbolic),
            0 => Ok(Epsilon::Flat),
            1 => Ok(Epsilon::Spherical),
            _ => Err(Error::Domain(format!("epsilon must be -1, 0 or 1, got {v}"))),
        }
    }
}

/// One principal curvature value together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Curvature {
    pub k: f64,
    pub mult: usize,
}

/// Principal curvatures with multiplicities of a hypersurface of dimension `m`.
///
/// Entries with equal curvature are kept as given; nothing is merged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrincipalSpectrum {
    entries: Vec<Curvature>,
    m: usize,
}

impl PrincipalSpectrum {
    /// Builds a spectrum, checking that the multiplicities add up to `m`.
    pub fn new(entries: impl IntoIterator<Item = (f64, usize)>, m: usize) -> Result<Self> {
        let entries: Vec<Curvature> = entries.into_iter().map(|(k, mult)| Curvature { k, mult }).collect();
        if m < 2 {
            return Err(Error::Domain(format!("dimension must be at least 2, got {m}")));
        }
        if let Some(c) = entries.iter().find(|c| c.mult == 0) {
            return Err(Error::Domain(format!("zero multiplicity for curvature {}", c.k)));
        }
        if let Some(c) = entries.iter().find(|c| !c.k.is_finite()) {
            return Err(Error::Domain(format!("non-finite curvature {}", c.k)));
        }
        let total: usize = entries.iter().map(|c| c.mult).sum();
        if total != m {
            return Err(Error::Domain(format!(
                "multiplicities sum to {total}, expected m = {m}"
            )));
        }
        Ok(Self { entries, m })
    }

    /// Totally umbilical spectrum: one curvature of multiplicity `m`.
    pub fn umbilical(k: f64, m: usize) -> Result<Self> {
        Self::new([(k, m)], m)
    }

    /// Totally geodesic spectrum.
    pub fn zero(m: usize) -> Result<Self> {
        Self::umbilical(0.0, m)
    }

    pub fn entries(&self) -> &[Curvature] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    fn power_sum(&self, p: i32) -> f64 {
        self.entries.iter().map(|c| c.mult as f64 * c.k.powi(p)).sum()
    }

    /// H = (Σ mᵢ kᵢ) / m.
    pub fn mean_curvature(&self) -> f64 {
        self.power_sum(1) / self.m as f64
    }

    /// |A|² = Σ mᵢ kᵢ².
    pub fn norm_a_squared(&self) -> f64 {
        self.power_sum(2)
    }

    /// tr A³ = Σ mᵢ kᵢ³.
    pub fn trace_a_cubed(&self) -> f64 {
        self.power_sum(3)
    }

    /// Scalar curvature of the hypersurface in a space form of curvature ε:
    /// ε m(m−1) + m²H² − |A|².
    pub fn scalar_curvature_spaceform(&self, eps: Epsilon) -> f64 {
        let m = self.m as f64;
        let h = self.mean_curvature();
        eps.value() * m * (m - 1.0) + m * m * h * h - self.norm_a_squared()
    }

    /// Multiplies every curvature by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|c| Curvature {
                    k: c.k * lambda,
                    mult: c.mult,
                })
                .collect(),
            m: self.m,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rejects_bad_multiplicities() {
        assert!(PrincipalSpectrum::new([(1.0, 1), (2.0, 1)], 3).is_err());
        assert!(PrincipalSpectrum::new([(1.0, 0), (2.0, 2)], 2).is_err());
        assert!(PrincipalSpectrum::new([(1.0, 1)], 1).is_err());
        assert!(PrincipalSpectrum::new([(f64::NAN, 2)], 2).is_err());
        assert!(Epsilon::try_from(2).is_err());
    }

    #[test]
    fn mean_curvature_examples() {
        let s3 = 3f64.sqrt();
        let l3 = PrincipalSpectrum::new([(s3, 1), (0.0, 1), (-s3, 1)], 3).unwrap();
        assert!(close(l3.mean_curvature(), 0.0, 1e-15));

        let r = 0.7;
        let sph = PrincipalSpectrum::umbilical(1.0 / r, 5).unwrap();
        assert!(close(sph.mean_curvature(), 1.0 / r, 1e-15));

        // S¹ × S² torus at tan²s = 3.6516
        let t = 3.6516f64.sqrt();
        let torus = PrincipalSpectrum::new([(1.0 / t, 1), (-t, 2)], 3).unwrap();
        assert!(close(torus.mean_curvature(), -1.0995, 1e-3));
    }

    #[test]
    fn norm_and_cubic_trace_examples() {
        let r2 = 2f64.sqrt();
        let l4 = PrincipalSpectrum::new([(r2 + 1.0, 1), (r2 - 1.0, 1), (1.0 - r2, 1), (-1.0 - r2, 1)], 4).unwrap();
        assert!(close(l4.norm_a_squared(), 12.0, 1e-12));
        assert!(close(l4.trace_a_cubed(), 0.0, 1e-12));
        assert_eq!(PrincipalSpectrum::zero(3).unwrap().norm_a_squared(), 0.0);

        let r = 1.3;
        let sph = PrincipalSpectrum::umbilical(1.0 / r, 4).unwrap();
        assert!(close(sph.trace_a_cubed(), 4.0 / r.powi(3), 1e-14));

        // S²×S² torus with tan²s = 2 − √3: cot²s = 2 + √3.
        let cot2 = 2.0 + 3f64.sqrt();
        let tan2 = 2.0 - 3f64.sqrt();
        let torus = PrincipalSpectrum::new([(cot2.sqrt(), 2), (-tan2.sqrt(), 2)], 4).unwrap();
        assert!(close(torus.norm_a_squared(), 8.0, 1e-13));
        // 2((2+√3)^{3/2} − (2−√3)^{3/2}) = 10√2
        assert!(close(torus.trace_a_cubed(), 10.0 * 2f64.sqrt(), 1e-9));
    }

    #[test]
    fn scalar_curvature_examples() {
        let eps = Epsilon::Spherical;
        assert!(close(
            PrincipalSpectrum::zero(4).unwrap().scalar_curvature_spaceform(eps),
            12.0,
            1e-14
        ));
        let sph = PrincipalSpectrum::umbilical(1.0 / 3f64.sqrt(), 4).unwrap();
        assert!(close(sph.scalar_curvature_spaceform(eps), 16.0, 1e-13));
        let r2 = 2f64.sqrt();
        let l4 = PrincipalSpectrum::new([(r2 + 1.0, 1), (r2 - 1.0, 1), (1.0 - r2, 1), (-1.0 - r2, 1)], 4).unwrap();
        assert!(close(l4.scalar_curvature_spaceform(eps), 0.0, 1e-12));
    }

    fn spectrum_strategy() -> impl Strategy<Value = Vec<(f64, usize)>> {
        prop::collection::vec((-5.0f64..5.0, 1usize..4), 1..6)
    }

    proptest! {
        #[test]
        fn invariants_ignore_entry_order(entries in spectrum_strategy(), seed in any::<u64>()) {
            let m: usize = entries.iter().map(|e| e.1).sum();
            prop_assume!(m >= 2);
            let a = PrincipalSpectrum::new(entries.clone(), m).unwrap();
            let mut shuffled = entries;
            let n = shuffled.len();
            shuffled.rotate_left((seed as usize) % n);
            shuffled.reverse();
            let b = PrincipalSpectrum::new(shuffled, m).unwrap();
            prop_assert!(close(a.mean_curvature(), b.mean_curvature(), 1e-12));
            prop_assert!(close(a.norm_a_squared(), b.norm_a_squared(), 1e-11));
            prop_assert!(close(a.trace_a_cubed(), b.trace_a_cubed(), 1e-10));
            let eps = Epsilon::Hyperbolic;
            prop_assert!(close(a.scalar_curvature_spaceform(eps), b.scalar_curvature_spaceform(eps), 1e-10));
        }

        #[test]
        fn invariants_are_homogeneous(entries in spectrum_strategy(), lambda in -3.0f64..3.0) {
            let m: usize = entries.iter().map(|e| e.1).sum();
            prop_assume!(m >= 2);
            let a = PrincipalSpectrum::new(entries, m).unwrap();
            let b = a.scaled(lambda);
            let scale = 1.0 + a.trace_a_cubed().abs() * lambda.abs().powi(3);
            prop_assert!(close(b.mean_curvature(), lambda * a.mean_curvature(), 1e-12 * (1.0 + lambda.abs() * 5.0)));
            prop_assert!(close(b.norm_a_squared(), lambda * lambda * a.norm_a_squared(), 1e-11 * (1.0 + a.norm_a_squared() * lambda * lambda)));
            prop_assert!(close(b.trace_a_cubed(), lambda.powi(3) * a.trace_a_cubed(), 1e-10 * scale));
        }

        #[test]
        fn equal_curvatures_split_freely(k in -4.0f64..4.0, a in 1usize..5, b in 1usize..5, other in -4.0f64..4.0) {
            let merged = PrincipalSpectrum::new([(k, a + b), (other, 1)], a + b + 1).unwrap();
            let split = PrincipalSpectrum::new([(k, a), (other, 1), (k, b)], a + b + 1).unwrap();
            prop_assert!(close(merged.mean_curvature(), split.mean_curvature(), 1e-13));
            prop_assert!(close(merged.norm_a_squared(), split.norm_a_squared(), 1e-12));
            prop_assert!(close(merged.trace_a_cubed(), split.trace_a_cubed(), 1e-11));
        }
    }
}
