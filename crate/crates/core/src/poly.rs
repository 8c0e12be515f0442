//! Exact root counting and isolation for the classification cubics.
//!
//! Coefficients and all Sturm-sequence arithmetic are exact rationals; floats
//! only appear in the displayed approximation of a refined root.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shift applied to an interval endpoint that is itself a root.
pub fn endpoint_shift() -> BigRational {
    ratio(1, 1_000_000_000)
}

/// c₀ + c₁x + c₂x² + c₃x³ with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPoly {
    coeffs: [BigRational; 4],
}

impl CubicPoly {
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational, c3: BigRational) -> Self {
        Self {
            coeffs: [c0, c1, c2, c3],
        }
    }

    pub fn from_ints(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        Self::new(rat(c0), rat(c1), rat(c2), rat(c3))
    }

    /// 9T³ − 19T² + 3T − 1.
    pub fn p3() -> Self {
        Self::from_ints(-1, 3, -19, 9)
    }

    /// 8T³ − 32T² + 11T − 3.
    pub fn s1_s2_cubic() -> Self {
        Self::from_ints(-3, 11, -32, 8)
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    fn dense(&self) -> Dense {
        Dense::new(self.coeffs.to_vec())
    }

    /// Number of distinct real roots in the open interval (lo, hi).
    ///
    /// An endpoint that is a root is moved inward by [`endpoint_shift`].
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::Degenerate("identically zero polynomial".into()));
        }
        let (lo, hi) = self.open_endpoints(lo, hi)?;
        Ok(SturmChain::new(&self.dense()).count_between(&lo, &hi))
    }

    fn open_endpoints(&self, lo: &BigRational, hi: &BigRational) -> Result<(BigRational, BigRational)> {
        if lo >= hi {
            return Err(Error::Domain(format!("empty interval ({lo}, {hi})")));
        }
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        if self.eval(&lo).is_zero() {
            lo += endpoint_shift();
        }
        if self.eval(&hi).is_zero() {
            hi -= endpoint_shift();
        }
        if lo >= hi {
            return Err(Error::Domain("interval too short after endpoint shift".into()));
        }
        Ok((lo, hi))
    }

    /// Isolates every root in (lo, hi) and refines each isolating interval
    /// by exact bisection until its width is below `tol`.
    pub fn isolate_and_refine(&self, lo: &BigRational, hi: &BigRational, tol: f64) -> Result<Vec<RootCertificate>> {
        if self.is_zero() {
            return Err(Error::Degenerate("identically zero polynomial".into()));
        }
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        let tol_q = BigRational::from_f64(tol).ok_or_else(|| Error::Domain("bad tolerance".into()))?;
        let (lo, hi) = self.open_endpoints(lo, hi)?;
        let chain = SturmChain::new(&self.dense());

        let mut pending = vec![(lo, hi)];
        let mut isolated = Vec::new();
        while let Some((a, b)) = pending.pop() {
            match chain.count_between(&a, &b) {
                0 => {}
                1 => isolated.push((a, b)),
                _ => {
                    let mid = split_point(self, &a, &b);
                    pending.push((mid.clone(), b));
                    pending.push((a, mid));
                }
            }
        }
        isolated.sort_by(|x, y| x.0.cmp(&y.0));

        let two = rat(2);
        let mut certs = Vec::with_capacity(isolated.len());
        for (mut a, mut b) in isolated {
            // Shrink until the root is strictly inside with a sign change, or the
            // interval is narrow enough (even-multiplicity roots never change sign).
            loop {
                let sa = self.eval(&a).signum();
                let sb = self.eval(&b).signum();
                let width = &b - &a;
                if width < tol_q && !(sa.is_zero() || sb.is_zero()) {
                    break;
                }
                let mid = (&a + &b) / &two;
                let sm = self.eval(&mid);
                if sm.is_zero() {
                    // exact root: close it in symmetrically
                    let half = (&tol_q / &two).min(&width / rat(4));
                    a = &mid - &half;
                    b = &mid + &half;
                    continue;
                }
                if sa * sm.signum() < BigRational::zero() || chain.count_between(&a, &mid) == 1 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            certs.push(RootCertificate::new(self, a, b));
        }
        Ok(certs)
    }
}

/// Bisection point for isolation; nudged off roots so Sturm counts stay valid.
fn split_point(p: &CubicPoly, a: &BigRational, b: &BigRational) -> BigRational {
    let mut mid = (a + b) / rat(2);
    let mut nudge = (b - a) / rat(7);
    while p.eval(&mid).is_zero() {
        mid += &nudge;
        nudge /= rat(3);
    }
    mid
}

impl fmt::Display for CubicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2, c3] = &self.coeffs;
        write!(f, "({c3})x^3 + ({c2})x^2 + ({c1})x + ({c0})")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootCertificate {
    /// Exact isolating interval, as reduced fractions.
    pub lo: String,
    pub hi: String,
    #[serde(skip)]
    pub lo_exact: BigRational,
    #[serde(skip)]
    pub hi_exact: BigRational,
    /// Signs of p at lo and hi.
    pub sign_change: (i8, i8),
    pub refined_value: f64,
    pub width: f64,
}

impl RootCertificate {
    fn new(p: &CubicPoly, lo: BigRational, hi: BigRational) -> Self {
        let sgn = |x: &BigRational| -> i8 {
            match p.eval(x).cmp(&BigRational::zero()) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            }
        };
        let mid = (&lo + &hi) / rat(2);
        Self {
            lo: lo.to_string(),
            hi: hi.to_string(),
            sign_change: (sgn(&lo), sgn(&hi)),
            refined_value: mid.to_f64().unwrap_or(f64::NAN),
            width: (&hi - &lo).to_f64().unwrap_or(f64::NAN),
            lo_exact: lo,
            hi_exact: hi,
        }
    }
}

/// Dense polynomial, lowest degree first, trailing zeros trimmed.
#[derive(Debug, Clone)]
struct Dense(Vec<BigRational>);

impl Dense {
    fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Dense(c)
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn derivative(&self) -> Self {
        Dense::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Remainder of self divided by d.
    fn rem(&self, d: &Dense) -> Dense {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = &d.0[dd];
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let q = &r[k] / lead;
            if !q.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    let idx = k - dd + j;
                    r[idx] = &r[idx] - &q * dc;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Dense::new(r)
    }

    fn neg(self) -> Self {
        Dense(self.0.into_iter().map(|c| -c).collect())
    }
}

struct SturmChain(Vec<Dense>);

impl SturmChain {
    fn new(p: &Dense) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if d.degree().is_some() {
            chain.push(d);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]).neg();
                if r.degree().is_none() {
                    break;
                }
                chain.push(r);
            }
        }
        SturmChain(chain)
    }

    fn sign_variations(&self, x: &BigRational) -> usize {
        let signs: Vec<i32> = self
            .0
            .iter()
            .map(|q| q.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| if v.is_positive() { 1 } else { -1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots in (a, b]; exact count in (a, b) when b is not a root.
    fn count_between(&self, a: &BigRational, b: &BigRational) -> usize {
        self.sign_variations(a).saturating_sub(self.sign_variations(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid_sign_changes(p: &CubicPoly, lo: f64, hi: f64, n: usize) -> usize {
        let mut prev = p.eval_f64(lo + (hi - lo) / n as f64 * 0.5);
        let mut count = 0;
        for i in 1..n {
            let x = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
            let v = p.eval_f64(x);
            if v != 0.0 && prev != 0.0 && v.signum() != prev.signum() {
                count += 1;
            }
            if v != 0.0 {
                prev = v;
            }
        }
        count
    }

    #[test]
    fn exact_evaluation() {
        let p = CubicPoly::p3();
        assert_eq!(p.eval(&rat(1)), rat(-8));
        assert_eq!(p.eval(&rat(2)), rat(1));
        assert_eq!(p.eval(&BigRational::zero()), rat(-1));
        assert_eq!(p.eval(&ratio(1, 3)), ratio(1, 3) - ratio(19, 9) + ratio(1, 1) - rat(1));
    }

    #[test]
    fn counts_on_p3() {
        let p = CubicPoly::p3();
        assert_eq!(p.count_roots(&rat(1), &rat(2)).unwrap(), 1);
        assert_eq!(p.count_roots(&rat(0), &rat(1)).unwrap(), 0);
        assert_eq!(p.count_roots(&rat(-100), &rat(100)).unwrap(), 1);
        assert!(CubicPoly::from_ints(0, 0, 0, 0).count_roots(&rat(0), &rat(1)).is_err());
        assert!(p.count_roots(&rat(2), &rat(1)).is_err());
    }

    #[test]
    fn endpoint_roots_are_shifted() {
        // (x − 1)(x − 2)(x − 3)
        let p = CubicPoly::from_ints(-6, 11, -6, 1);
        assert_eq!(p.count_roots(&rat(1), &rat(3)).unwrap(), 1);
        assert_eq!(p.count_roots(&rat(0), &rat(3)).unwrap(), 2);
    }

    #[test]
    fn refinement_examples() {
        let c = CubicPoly::p3().isolate_and_refine(&rat(1), &rat(2), 1e-10).unwrap();
        assert_eq!(c.len(), 1);
        assert!((c[0].refined_value - 1.9705689393946684).abs() < 1e-10);
        assert!(c[0].width < 1e-10);
        assert_eq!(c[0].sign_change, (-1, 1));

        let c = CubicPoly::s1_s2_cubic()
            .isolate_and_refine(&rat(0), &rat(10), 1e-10)
            .unwrap();
        assert_eq!(c.len(), 1);
        assert!((c[0].refined_value - 3.6515736286406324).abs() < 1e-10);

        let p = CubicPoly::from_ints(-6, 11, -6, 1);
        let c = p.isolate_and_refine(&rat(0), &rat(4), 1e-10).unwrap();
        let vals: Vec<f64> = c.iter().map(|r| r.refined_value).collect();
        assert_eq!(vals.len(), 3);
        for (v, want) in vals.iter().zip([1.0, 2.0, 3.0]) {
            assert!((v - want).abs() < 1e-10, "{vals:?}");
        }
    }

    #[test]
    fn double_root_is_isolated() {
        // (x − 1)²(x + 2) = x³ − 3x + 2
        let p = CubicPoly::from_ints(2, -3, 0, 1);
        assert_eq!(p.count_roots(&rat(-5), &rat(5)).unwrap(), 2);
        let c = p.isolate_and_refine(&rat(-5), &rat(5), 1e-8).unwrap();
        assert_eq!(c.len(), 2);
        assert!((c[0].refined_value + 2.0).abs() < 1e-8);
        assert!((c[1].refined_value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn linear_and_constant_polys() {
        let lin = CubicPoly::from_ints(-1, 2, 0, 0);
        assert_eq!(lin.count_roots(&rat(0), &rat(1)).unwrap(), 1);
        let c = lin.isolate_and_refine(&rat(0), &rat(1), 1e-12).unwrap();
        assert!((c[0].refined_value - 0.5).abs() < 1e-12);
        assert_eq!(
            CubicPoly::from_ints(3, 0, 0, 0).count_roots(&rat(0), &rat(1)).unwrap(),
            0
        );
    }

    #[test]
    fn sturm_count_matches_fine_grid_on_classification_cubics() {
        let p = CubicPoly::p3();
        assert_eq!(
            p.count_roots(&rat(-10), &rat(10)).unwrap(),
            grid_sign_changes(&p, -10.0, 10.0, 1_000_000)
        );
        let q = CubicPoly::s1_s2_cubic();
        assert_eq!(
            q.count_roots(&rat(-10), &rat(10)).unwrap(),
            grid_sign_changes(&q, -10.0, 10.0, 1_000_000)
        );
    }

    proptest! {
        #[test]
        fn certificates_bracket_sign_changes(r1 in -20i64..20, r2 in -20i64..20, r3 in -20i64..20, d in 1i64..5) {
            prop_assume!(r1 != r2 && r2 != r3 && r1 != r3);
            // d³ (x − r1/d)(x − r2/d)(x − r3/d)
            let s1 = r1 + r2 + r3;
            let s2 = r1 * r2 + r2 * r3 + r1 * r3;
            let s3 = r1 * r2 * r3;
            let p = CubicPoly::from_ints(-s3, s2 * d, -s1 * d * d, d * d * d);
            let lo = ratio(-41, 2 * d);
            let hi = ratio(41, 2 * d);
            prop_assert_eq!(p.count_roots(&lo, &hi).unwrap(), 3);
            let certs = p.isolate_and_refine(&lo, &hi, 1e-9).unwrap();
            prop_assert_eq!(certs.len(), 3);
            let mut roots = [r1 as f64 / d as f64, r2 as f64 / d as f64, r3 as f64 / d as f64];
            roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (c, r) in certs.iter().zip(roots) {
                prop_assert!(p.eval(&c.lo_exact) * p.eval(&c.hi_exact) < BigRational::zero());
                prop_assert!((c.refined_value - r).abs() < 1e-9);
            }
        }
    }
}
