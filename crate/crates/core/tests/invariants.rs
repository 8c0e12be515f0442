use std::f64::consts::PI;

use proptest::prelude::*;

use cbih_lab::ctension::residual_const_scal;
use cbih_lab::ode::{admissible_range, integrate, ProfileState};
use cbih_lab::spectra::Epsilon;
use cbih_lab::sphere::{quartic_trig, solve_cbih, IsoparametricFamily};

fn family() -> impl Strategy<Value = IsoparametricFamily> {
    prop_oneof![
        (2u32..7).prop_map(|m| IsoparametricFamily::new(1, m, 0).unwrap()),
        (1u32..5, 1u32..5).prop_map(|(a, b)| IsoparametricFamily::new(2, a, b).unwrap()),
        prop::sample::select(vec![1u32, 2, 4, 8]).prop_map(|m| IsoparametricFamily::uniform(3, m).unwrap()),
        (1u32..6, 1u32..6).prop_map(|(a, b)| IsoparametricFamily::new(4, a, b).unwrap()),
        (1u32..3).prop_map(|m| IsoparametricFamily::uniform(6, m).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_roots_are_zeros_and_sorted(fam in family()) {
        let rep = solve_cbih(&fam, 1e-12).unwrap();
        prop_assert!(rep.s_star.windows(2).all(|w| w[0] < w[1]));
        for r in &rep.roots {
            let h = (fam.residual(r.s + 1e-9).unwrap() - fam.residual(r.s - 1e-9).unwrap()).abs();
            prop_assert!(r.residual.abs() <= h.max(1e-6), "{r:?}");
            prop_assert!(r.s > 0.0 && r.s < fam.upper());
        }
    }

    #[test]
    fn sphere_residual_is_three_const_scal(fam in family(), u in 0.01f64..0.99) {
        let s = u * fam.upper();
        let spec = fam.spectrum_at(s).unwrap();
        let a = fam.residual(s).unwrap();
        let b = 3.0 * residual_const_scal(&spec, Epsilon::Spherical, 0.0);
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn quartic_numerator_has_residual_sign(m1 in 1u32..6, m2 in 1u32..6, u in 0.02f64..0.98) {
        let fam = IsoparametricFamily::new(4, m1, m2).unwrap();
        let s = u * PI / 4.0;
        let (r, a) = (fam.residual(s).unwrap(), quartic_trig(m1, m2, s));
        // residual · 32 sin³s cos⁹s (tan²s − 1)³ = A, and tan²s < 1 on (0, π/4)
        if r.abs() > 1e-6 && a.abs() > 1e-6 {
            prop_assert_eq!(r.signum(), -a.signum());
        }
    }

    #[test]
    fn profile_stays_in_admissible_band(c in -0.24f64..-0.02) {
        let traj = integrate(c, 5.0, 2e-3).unwrap();
        let (lo, hi) = admissible_range(c).unwrap();
        prop_assert!(traj.max_drift() < 1e-8);
        for smp in &traj.samples {
            prop_assert!(smp.state.h1 >= lo - 1e-9 && smp.state.h1 <= hi + 1e-9);
        }
    }

    #[test]
    fn ctension_is_sixteen_h(c in -0.249f64..-0.001, v in 0.0f64..1.0) {
        let (lo, hi) = admissible_range(c).unwrap();
        let st = ProfileState::on_integral(c, lo + v * (hi - lo)).unwrap();
        let h = st.mean_curvature().unwrap();
        prop_assert!((st.ctension_residual().unwrap() - 16.0 * h).abs() < 1e-12 * (1.0 + h.abs()));
        prop_assert!((st.scalar_curvature().unwrap() - 12.0).abs() < 1e-10);
    }
}
