//! Named verification suites behind `cbih-lab verify`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{RngExt, SeedableRng};
use rand_xorshift::XorShiftRng;

use crate::ambient::PointState;
use crate::ctension::{
    euclidean_isoparametric_residual, hyperbolic_trace_a_cubed, product_components, residual_const_scal,
    umbilical_coefficient_rootfree, umbilical_components, umbilical_substituted_coefficient, EuclideanIsoFamily,
};
use crate::ode::{integrate, Trajectory};
use crate::poly::{rat, CubicPoly, RootCertificate};
use crate::report::{Check, VerificationReport};
use crate::spectra::{Epsilon, PrincipalSpectrum};
use crate::sphere::{
    degree3_zeros, quartic_limits, quartic_poly, quartic_residual_at_minimal, residual_l3_closed, scan_grid,
    solve_cbih, sphere_residual, IsoparametricFamily, DEFAULT_SOLVE_TOL, SCAN_SHRINK,
};
use crate::{Error, Result};

pub const SUITES: [&str; 7] = ["spectra", "ctension", "sphere", "poly", "ode", "umbilical", "all"];

pub const SEED: u64 = 0x5eed_c0de;
pub const RANDOM_SAMPLES: usize = 10_000;

/// Accuracy of bisection at the triple zero π/6 of the degree-3, m₁ = 2 residual.
pub const L3_TRIPLE_ZERO_TOL: f64 = 1e-6;

/// Quartic multiplicity pairs with m₁ < m₂.
pub const QUARTIC_PAIRS: [(u32, u32); 5] = [(1, 2), (2, 4), (3, 4), (4, 5), (1, 7)];

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Check ids whose measured value is deliberately corrupted.
    pub corrupt: Vec<String>,
    pub timestamp: Option<u64>,
}

pub fn run_suite(suite: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut checks = match suite {
        "spectra" => spectra_checks()?,
        "ctension" => ctension_checks()?,
        "sphere" => sphere_checks()?,
        "poly" => poly_checks()?,
        "ode" => ode_checks()?,
        "umbilical" => umbilical_checks()?,
        "all" => {
            let mut all = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                all.extend(run_suite(s, &VerifyOptions::default())?.checks);
            }
            all
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    for id in &opts.corrupt {
        let check = checks
            .iter_mut()
            .find(|c| &c.id == id)
            .ok_or_else(|| Error::Config(format!("no check named {id} in suite {suite}")))?;
        check.corrupt();
    }
    let mut report = VerificationReport::new(suite, checks);
    report.timestamp = opts.timestamp;
    Ok(report)
}

/// Zeros of the family's residual from the default solver.
pub fn family_roots(fam: &IsoparametricFamily) -> Result<Vec<f64>> {
    Ok(solve_cbih(fam, DEFAULT_SOLVE_TOL)?.s_star)
}

/// The single positive root of `p` in (lo, hi), certified by Sturm counting.
pub fn certified_root(p: &CubicPoly, lo: i64, hi: i64, tol: f64) -> Result<RootCertificate> {
    let mut certs = p.isolate_and_refine(&rat(lo), &rat(hi), tol)?;
    if certs.len() != 1 {
        return Err(Error::Degenerate(format!(
            "expected one root of {p} in ({lo}, {hi}), found {}",
            certs.len()
        )));
    }
    Ok(certs.remove(0))
}

/// Number of positive real roots, counted on (0, Cauchy bound].
pub fn positive_root_count(p: &CubicPoly) -> Result<usize> {
    let [c0, c1, c2, c3] = p.coeffs();
    let bound = rat(1)
        + [c0, c1, c2]
            .iter()
            .map(|c| (*c / c3).abs())
            .fold(rat(0), |a, b| a.max(b));
    p.count_roots(&rat(0), &(bound + rat(1)))
}

fn non_minimal(fam: &IsoparametricFamily, roots: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for &s in roots {
        if fam.spectrum_at(s)?.mean_curvature().abs() > 1e-8 {
            out.push(s);
        }
    }
    Ok(out)
}

/// Scalar curvatures of the c-biharmonic hypersurfaces of 𝕊⁵: (label, measured, expected).
pub fn scal_rows() -> Result<Vec<(&'static str, f64, f64)>> {
    let scal = |fam: &IsoparametricFamily, s: f64| -> Result<(f64, f64)> {
        let spec = fam.spectrum_at(s)?;
        Ok((
            spec.scalar_curvature_spaceform(Epsilon::Spherical),
            spec.mean_curvature(),
        ))
    };
    let sphere = IsoparametricFamily::new(1, 4, 0)?;
    let small = non_minimal(&sphere, &family_roots(&sphere)?)?;
    let clifford = IsoparametricFamily::uniform(2, 2)?;
    let tori = family_roots(&clifford)?;
    let second = tori
        .iter()
        .copied()
        .find(|s| (s - PI / 4.0).abs() > 1e-6)
        .ok_or_else(|| Error::Degenerate("no non-minimal S²×S² root".into()))?;
    let s1s3 = IsoparametricFamily::new(2, 1, 3)?;
    let s1s3_root = single(&family_roots(&s1s3)?)?;
    let quartic = IsoparametricFamily::uniform(4, 1)?;

    let (geodesic, _) = scal(&sphere, PI / 2.0)?;
    let small = small
        .first()
        .copied()
        .ok_or_else(|| Error::Degenerate("no small hypersphere".into()))?;
    let (small_scal, _) = scal(&sphere, small)?;
    let (clifford_scal, _) = scal(&clifford, PI / 4.0)?;
    let (second_scal, _) = scal(&clifford, second)?;
    let (s1s3_scal, h) = scal(&s1s3, s1s3_root)?;
    let (quartic_scal, _) = scal(&quartic, PI / 8.0)?;
    Ok(vec![
        ("S4 totally geodesic", geodesic, 12.0),
        ("S4(sqrt3/2)", small_scal, 16.0),
        ("S2(1/sqrt2)xS2(1/sqrt2)", clifford_scal, 8.0),
        ("S2xS2 non-minimal", second_scal, 12.0),
        ("S1xS3", s1s3_scal, 5.0 + 16.0 * h * h),
        ("degree-4 minimal", quartic_scal, 0.0),
    ])
}

fn single(roots: &[f64]) -> Result<f64> {
    match roots {
        [s] => Ok(*s),
        _ => Err(Error::Degenerate(format!("expected one root, found {}", roots.len()))),
    }
}

/// Upper bound 1/lo + 3hi of |A|² = 1/T + 3T over an interval T ∈ [lo, hi] with lo > 1/√3.
pub fn norm_bound(lo: &num_rational::BigRational, hi: &num_rational::BigRational) -> num_rational::BigRational {
    lo.recip() + rat(3) * hi
}

fn spectra_checks() -> Result<Vec<Check>> {
    let mut c = Vec::new();
    let quartic = IsoparametricFamily::uniform(4, 1)?.spectrum_at(PI / 8.0)?;
    c.push(Check::close(
        "spectra.l4_minimal.norm_a2",
        quartic.norm_a_squared(),
        12.0,
        1e-12,
    ));
    c.push(Check::close(
        "spectra.l4_minimal.trace_a3",
        quartic.trace_a_cubed(),
        0.0,
        1e-12,
    ));
    let sphere = PrincipalSpectrum::umbilical(1.0 / 3f64.sqrt(), 4)?;
    c.push(Check::close(
        "spectra.small_s4.mean",
        sphere.mean_curvature(),
        1.0 / 3f64.sqrt(),
        1e-15,
    ));
    for (label, measured, expected) in scal_rows()? {
        let id = format!("spectra.scal.{}", slug(label));
        if label == "S1xS3" {
            c.push(Check::at_least(id, measured, expected));
        } else {
            c.push(Check::close(id, measured, expected, 1e-10));
        }
    }
    Ok(c)
}

fn slug(label: &str) -> String {
    label
        .chars()
        .map(|ch| {
            if ch.is_ascii_alphanumeric() {
                ch.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect()
}

/// Random constant spectra: up to four distinct curvatures in [−3, 3].
pub fn random_spectrum(rng: &mut XorShiftRng) -> PrincipalSpectrum {
    let n = rng.random_range(1..=4usize);
    let mut entries: Vec<(f64, usize)> = (0..n)
        .map(|_| (rng.random_range(-3.0..3.0), rng.random_range(1..=3usize)))
        .collect();
    if entries.iter().map(|e| e.1).sum::<usize>() < 2 {
        entries[0].1 += 1;
    }
    let m = entries.iter().map(|e| e.1).sum();
    PrincipalSpectrum::new(entries, m).expect("valid random spectrum")
}

fn random_eps(rng: &mut XorShiftRng) -> Epsilon {
    [Epsilon::Hyperbolic, Epsilon::Flat, Epsilon::Spherical][rng.random_range(0..3usize)]
}

/// Random (T, cos α) with |T|² + cos²α = 1.
fn random_direction(rng: &mut XorShiftRng, m: usize) -> (DVector<f64>, f64) {
    loop {
        let v: DVector<f64> = DVector::from_fn(m + 1, |_, _| rng.random_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 {
            let v: DVector<f64> = v / n;
            return (v.rows(0, m).into_owned(), v[m]);
        }
    }
}

fn random_vector(rng: &mut XorShiftRng, m: usize, r: f64) -> DVector<f64> {
    DVector::from_fn(m, |_, _| rng.random_range(-r..r))
}

/// Random point states with symmetric A in dimension 2..=6.
pub fn random_point_state(rng: &mut XorShiftRng) -> PointState {
    let m = rng.random_range(2..=6usize);
    let mut a = DMatrix::from_fn(m, m, |_, _| rng.random_range(-2.0..2.0));
    a = (&a + a.transpose()) * 0.5;
    let (t, cos_alpha) = random_direction(rng, m);
    PointState::new(random_eps(rng), a, t, cos_alpha).expect("valid random state")
}

/// Largest |umbilical − general| over random umbilical states, per component.
pub fn umbilical_agreement(rng: &mut XorShiftRng, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let m = rng.random_range(2..=8usize);
        let h = rng.random_range(-2.0..2.0);
        let eps = random_eps(rng);
        let (t, cos_alpha) = random_direction(rng, m);
        let grad_h = random_vector(rng, m, 1.0);
        let lap_h = rng.random_range(-1.0..1.0);
        let st = PointState::new(eps, DMatrix::identity(m, m) * h, t.clone(), cos_alpha)?.with_derivatives(
            grad_h.clone(),
            &grad_h * (2.0 * m as f64 * h),
            lap_h,
        )?;
        let general = product_components(&st);
        let umb = umbilical_components(m, eps, h, &grad_h, &t, cos_alpha, lap_h);
        worst = worst
            .max((general.normal - umb.normal).abs())
            .max((&general.tangential - &umb.tangential).amax());
    }
    Ok(worst)
}

fn ctension_checks() -> Result<Vec<Check>> {
    let mut c = Vec::new();
    let mut rng = XorShiftRng::seed_from_u64(SEED);

    let mut worst = 0.0f64;
    for _ in 0..RANDOM_SAMPLES {
        let spec = random_spectrum(&mut rng);
        let d = sphere_residual(&spec) - 3.0 * residual_const_scal(&spec, Epsilon::Spherical, 0.0);
        worst = worst.max(d.abs());
    }
    c.push(Check::at_most("ctension.sphere_vs_const_scal.max_abs", worst, 1e-10));

    let mut worst = 0.0f64;
    for _ in 0..RANDOM_SAMPLES {
        let st = random_point_state(&mut rng);
        worst = worst.max((st.ricci_operator().trace() - st.scalar_curvature_product()).abs());
    }
    c.push(Check::at_most("ctension.ricci_trace_vs_scal.max_abs", worst, 1e-10));

    c.push(Check::at_most(
        "ctension.umbilical_vs_general.max_abs",
        umbilical_agreement(&mut rng, RANDOM_SAMPLES)?,
        1e-11,
    ));

    let (min_abs, hyperplane) = euclidean_sweep()?;
    c.push(Check::at_least(
        "ctension.euclidean.sphere_cylinder.min_abs",
        min_abs,
        f64::MIN_POSITIVE,
    ));
    c.push(Check::close(
        "ctension.euclidean.hyperplane.max_abs",
        hyperplane,
        0.0,
        0.0,
    ));

    let (zeros, origin) = hyperbolic_zero_scan();
    c.push(Check::count("ctension.hyperbolic.grid_zeros", zeros, 1));
    c.push(Check::flag("ctension.hyperbolic.zero_at_origin", origin));
    Ok(c)
}

/// Log grid r ∈ [1e−3, 1e3] with 61 points.
pub fn log_radii() -> Vec<f64> {
    (0..=60).map(|i| 10f64.powf(-3.0 + i as f64 * 0.1)).collect()
}

/// (min |residual| over spheres and cylinders, max |residual| over hyperplanes), m ≤ 12.
pub fn euclidean_sweep() -> Result<(f64, f64)> {
    let mut min_abs = f64::INFINITY;
    let mut hyper = 0.0f64;
    for m in 2..=12 {
        hyper = hyper.max(euclidean_isoparametric_residual(&EuclideanIsoFamily::Hyperplane { m })?.abs());
        for r in log_radii() {
            min_abs = min_abs.min(euclidean_isoparametric_residual(&EuclideanIsoFamily::Sphere { r, m })?.abs());
            for k in 1..m {
                let v = euclidean_isoparametric_residual(&EuclideanIsoFamily::Cylinder { r, k, m })?;
                min_abs = min_abs.min(v.abs());
            }
        }
    }
    Ok((min_abs, hyper))
}

/// 20001-point grid of [−10, 10] (so b = 0 is a node), all m ≤ 12 and both signs.
/// Returns (number of distinct zero nodes, whether b = 0 is one of them).
pub fn hyperbolic_zero_scan() -> (usize, bool) {
    let n = 20_001;
    let mut zero_nodes = std::collections::BTreeSet::new();
    for m in 2..=12 {
        for sign in [-1i8, 1] {
            for i in 0..n {
                let b = -10.0 + 20.0 * i as f64 / (n - 1) as f64;
                if hyperbolic_trace_a_cubed(b, m, sign) == 0.0 {
                    zero_nodes.insert(i);
                }
            }
        }
    }
    let origin = zero_nodes.contains(&((n - 1) / 2));
    (zero_nodes.len(), origin)
}

fn sphere_checks() -> Result<Vec<Check>> {
    let mut c = Vec::new();
    for (m, target) in [(2u32, 1.0 / 3f64.sqrt()), (3, 0.5f64.sqrt()), (4, 3f64.sqrt() / 2.0)] {
        let fam = IsoparametricFamily::new(1, m, 0)?;
        let roots = non_minimal(&fam, &family_roots(&fam)?)?;
        c.push(Check::count(format!("sphere.l1.m{m}.nonminimal_roots"), roots.len(), 2));
        for (j, s) in roots.iter().enumerate() {
            c.push(Check::close(format!("sphere.l1.m{m}.sin_s{j}"), s.sin(), target, 1e-10));
        }
    }

    for (m1, m2) in [(1u32, 2u32), (1, 3)] {
        let fam = IsoparametricFamily::new(2, m1, m2)?;
        let roots = family_roots(&fam)?;
        c.push(Check::count(format!("sphere.l2.m{m1}_{m2}.roots"), roots.len(), 1));
        let p = if m2 == 2 {
            CubicPoly::s1_s2_cubic()
        } else {
            CubicPoly::p3()
        };
        let cert = certified_root(&p, 0, 100, 1e-14)?;
        let s = single(&roots)?;
        c.push(Check::close(
            format!("sphere.l2.m{m1}_{m2}.tan2"),
            s.tan().powi(2),
            cert.refined_value,
            1e-9,
        ));
    }

    for m1 in [1u32, 2, 4, 8] {
        let fam = IsoparametricFamily::uniform(3, m1)?;
        let roots = family_roots(&fam)?;
        c.push(Check::count(format!("sphere.l3.m{m1}.roots"), roots.len(), 1));
        let zeros = degree3_zeros(m1)?;
        c.push(Check::count(format!("sphere.l3.m{m1}.factor_zeros"), zeros.len(), 1));
        c.push(Check::close(
            format!("sphere.l3.m{m1}.factor_zero"),
            zeros[0],
            PI / 6.0,
            1e-10,
        ));
        // bisection on the f64 residual resolves a triple zero only to ~cbrt(rounding)
        let tol = if m1 == 2 { L3_TRIPLE_ZERO_TOL } else { 1e-10 };
        c.push(Check::close(
            format!("sphere.l3.m{m1}.solver_root"),
            roots.first().copied().unwrap_or(f64::NAN),
            PI / 6.0,
            tol,
        ));
        c.push(Check::at_most(
            format!("sphere.l3.m{m1}.closed_form_rel"),
            l3_closed_form_error(m1)?,
            1e-9,
        ));
    }

    for m1 in [1u32, 2] {
        let fam = IsoparametricFamily::uniform(6, m1)?;
        let roots = family_roots(&fam)?;
        c.push(Check::count(format!("sphere.l6.m{m1}.roots"), roots.len(), 1));
        c.push(Check::close(
            format!("sphere.l6.m{m1}.root"),
            roots.first().copied().unwrap_or(f64::NAN),
            PI / 12.0,
            1e-10,
        ));
    }

    for m1 in [1u32, 2] {
        let fam = IsoparametricFamily::uniform(4, m1)?;
        let roots = family_roots(&fam)?;
        c.push(Check::count(format!("sphere.l4.m{m1}_{m1}.roots"), roots.len(), 1));
        c.push(Check::close(
            format!("sphere.l4.m{m1}_{m1}.root"),
            roots.first().copied().unwrap_or(f64::NAN),
            PI / 8.0,
            1e-10,
        ));
        let spec = fam.spectrum_at(PI / 8.0)?;
        c.push(Check::close(
            format!("sphere.l4.m{m1}_{m1}.trace_a3"),
            spec.trace_a_cubed(),
            0.0,
            1e-12,
        ));
    }

    for (m1, m2) in QUARTIC_PAIRS {
        let fam = IsoparametricFamily::new(4, m1, m2)?;
        let id = format!("sphere.l4.m{m1}_{m2}");
        let roots = family_roots(&fam)?;
        c.push(Check::count(format!("{id}.roots"), roots.len(), 1));
        let s_tilde = fam.minimal_parameter();
        c.push(Check::close(
            format!("{id}.residual_at_minimal"),
            fam.residual(s_tilde)?,
            quartic_residual_at_minimal(m1, m2),
            1e-8,
        ));
        if let Some(&s) = roots.first() {
            c.push(Check::at_least(format!("{id}.root_gap"), (s - s_tilde).abs(), 1e-6));
            c.push(Check::at_least(
                format!("{id}.abs_mean_curvature"),
                fam.spectrum_at(s)?.mean_curvature().abs(),
                1e-6,
            ));
            let cert = certified_root(&quartic_poly(m1, m2), -1, 1, 1e-14)?;
            c.push(Check::close(
                format!("{id}.cos4s"),
                (4.0 * s).cos(),
                cert.refined_value,
                1e-9,
            ));
        }
    }
    Ok(c)
}

/// Largest relative deviation of the degree-3 closed form from the generic
/// residual on the 500-point scan grid.
pub fn l3_closed_form_error(m1: u32) -> Result<f64> {
    let fam = IsoparametricFamily::uniform(3, m1)?;
    let mut worst = 0.0f64;
    for s in scan_grid(&fam, 500, SCAN_SHRINK) {
        let generic = fam.residual(s)?;
        let closed = residual_l3_closed(m1, s)?;
        worst = worst.max((closed - generic).abs() / generic.abs().max(1.0));
    }
    Ok(worst)
}

fn poly_checks() -> Result<Vec<Check>> {
    let mut c = Vec::new();
    let p3 = CubicPoly::p3();
    c.push(Check::flag("poly.p3_at_1_exact", p3.eval(&rat(1)) == rat(-8)));
    c.push(Check::flag("poly.p3_at_2_exact", p3.eval(&rat(2)) == rat(1)));
    c.push(Check::count("poly.p3.positive_roots", positive_root_count(&p3)?, 1));
    c.push(Check::count(
        "poly.s1_s2.positive_roots",
        positive_root_count(&CubicPoly::s1_s2_cubic())?,
        1,
    ));

    // T* ∈ (1, 2) from the sign change alone gives 1/T* + 3T* < 1 + 6.
    let crude = norm_bound(&rat(1), &rat(2));
    c.push(Check::at_most(
        "poly.norm_bound.crude",
        crude.to_f64().unwrap_or(f64::NAN),
        7.0,
    ));
    let cert = certified_root(&p3, 1, 2, 1e-12)?;
    let fine = norm_bound(&cert.lo_exact, &cert.hi_exact);
    c.push(Check::flag(
        "poly.norm_bound.certified_exact",
        fine <= rat(7) && cert.lo_exact > rat(1),
    ));
    c.push(Check::at_most(
        "poly.norm_bound.certified",
        fine.to_f64().unwrap_or(f64::NAN),
        7.0,
    ));

    for (m1, m2) in QUARTIC_PAIRS {
        let p = quartic_poly(m1, m2);
        let id = format!("poly.quartic.m{m1}_{m2}");
        c.push(Check::count(
            format!("{id}.roots_in_unit"),
            p.count_roots(&rat(-1), &rat(1))?,
            1,
        ));
        let (at_one, at_minus_one) = quartic_limits(m1, m2);
        c.push(Check::flag(
            format!("{id}.limit_at_1_exact"),
            p.eval(&rat(1)) == rat(at_one),
        ));
        c.push(Check::flag(
            format!("{id}.limit_at_minus_1_exact"),
            p.eval(&rat(-1)) == rat(at_minus_one),
        ));
    }
    c.push(Check::flag(
        "poly.quartic.equal_multiplicities_zero",
        quartic_poly(1, 1).eval(&rat(0)).is_zero(),
    ));
    Ok(c)
}

pub const ODE_C: f64 = -0.1;
pub const ODE_S_MAX: f64 = 20.0;
pub const ODE_STEP: f64 = 1e-3;
/// Step pair for the halving study; both well inside the stable range.
pub const CONVERGENCE_STEPS: (f64, f64) = (0.01, 0.005);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence {
    /// max drift(step) / max drift(step/2).
    pub drift_ratio: f64,
    /// state error at s_max against a step/100 reference, same ratio.
    pub state_ratio: f64,
}

pub fn convergence_study(c: f64, s_max: f64, steps: (f64, f64)) -> Result<Convergence> {
    let coarse = integrate(c, s_max, steps.0)?;
    let fine = integrate(c, s_max, steps.1)?;
    let reference = integrate(c, s_max, steps.1 / 50.0)?;
    let end = |t: &Trajectory| t.samples.last().map(|s| s.state).expect("non-empty trajectory");
    let r = end(&reference);
    let err = |t: &Trajectory| {
        let st = end(t);
        (st.h1 - r.h1).abs().max((st.h1p - r.h1p).abs())
    };
    Ok(Convergence {
        drift_ratio: coarse.max_drift() / fine.max_drift(),
        state_ratio: err(&coarse) / err(&fine),
    })
}

/// Pointwise statistics of a trajectory: (max |ctension − 16H|, min |ctension|, max |Scal − 12|, h1 range excess).
pub fn trajectory_stats(traj: &Trajectory) -> Result<(f64, f64, f64, f64)> {
    let (lo, hi) = crate::ode::admissible_range(traj.c)?;
    let mut identity = 0.0f64;
    let mut min_abs = f64::INFINITY;
    let mut scal = 0.0f64;
    let mut excess = 0.0f64;
    for smp in &traj.samples {
        let st = &smp.state;
        let tau = st.ctension_residual()?;
        identity = identity.max((tau - 16.0 * st.mean_curvature()?).abs());
        min_abs = min_abs.min(tau.abs());
        scal = scal.max((st.scalar_curvature()? - 12.0).abs());
        excess = excess.max(lo - st.h1).max(st.h1 - hi);
    }
    Ok((identity, min_abs, scal, excess))
}

fn ode_checks() -> Result<Vec<Check>> {
    let mut c = Vec::new();
    let traj = integrate(ODE_C, ODE_S_MAX, ODE_STEP)?;
    c.push(Check::at_most("ode.max_drift", traj.max_drift(), 1e-8));
    let (identity, min_abs, scal, excess) = trajectory_stats(&traj)?;
    c.push(Check::at_most("ode.ctension_minus_16h", identity, 1e-12));
    c.push(Check::at_least("ode.min_abs_ctension", min_abs, 8.0 * (-ODE_C).sqrt()));
    c.push(Check::at_most("ode.scal_minus_12", scal, 1e-10));
    c.push(Check::at_most("ode.h1_range_excess", excess, 1e-9));

    let conv = convergence_study(ODE_C, ODE_S_MAX, CONVERGENCE_STEPS)?;
    // RK4: the state error is 4th order; the prime integral drifts at 5th order here.
    c.push(Check::at_least("ode.state_error_ratio.lower", conv.state_ratio, 12.0));
    c.push(Check::at_most("ode.state_error_ratio.upper", conv.state_ratio, 20.0));
    c.push(Check::at_least("ode.drift_ratio.lower", conv.drift_ratio, 24.0));
    c.push(Check::at_most("ode.drift_ratio.upper", conv.drift_ratio, 40.0));

    let near = integrate(-0.24999, ODE_S_MAX, ODE_STEP)?;
    let (lo, hi) = near
        .samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| {
            (a.min(s.state.h1), b.max(s.state.h1))
        });
    c.push(Check::at_most("ode.near_circle.h1_variation", hi - lo, 1e-2));
    Ok(c)
}

fn umbilical_checks() -> Result<Vec<Check>> {
    let mut c = Vec::new();
    let report = umbilical_coefficient_rootfree(1_000_000)?;
    c.push(Check::flag("umbilical.quadratic.root_free_to_1e6", report.root_free));
    let exact =
        (2..=20).all(|m| umbilical_substituted_coefficient(m) == num_rational::Ratio::new(-5 * m * m + 10 * m + 4, 3));
    c.push(Check::flag("umbilical.substituted_coefficient.m2_to_20", exact));
    let mut rng = XorShiftRng::seed_from_u64(SEED ^ 1);
    c.push(Check::at_most(
        "umbilical.vs_general.max_abs",
        umbilical_agreement(&mut rng, 2_000)?,
        1e-11,
    ));
    Ok(c)
}
