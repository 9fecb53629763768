//! Property tests for the algebraic invariants.

use nalgebra::Vector3;
use num_complex::Complex64;
use proptest::prelude::*;

use levcool::darkmode::{hybridize_five_mode, hybridize_two_mode, three_mode_transform};
use levcool::harness::{load_config, LoadedConfig, RawConfig};
use levcool::optics::{far_tensor, green_tensor, near_tensor};

fn unit_vector() -> impl Strategy<Value = Vector3<f64>> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter_map("degenerate direction", |(x, y, z)| {
            let v = Vector3::new(x, y, z);
            let n = v.norm();
            (n > 1e-3).then(|| v / n)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // far-field tensor is transverse, near-field tensor doubles the radial
    // component
    #[test]
    fn tensor_identities(r in unit_vector()) {
        prop_assert!((far_tensor(r) * r).norm() < 1e-12);
        prop_assert!((near_tensor(r) * r - 2.0 * r).norm() < 1e-12);
    }

    // G(r) = G(-r) entrywise
    #[test]
    fn green_parity(r in unit_vector(), scale in 0.2f64..5.0) {
        let k = 2.0 * std::f64::consts::PI / 1064e-9;
        let rv = r * (scale * 1064e-9);
        let g1 = green_tensor(rv, k).unwrap();
        let g2 = green_tensor(-rv, k).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let m = g1[(i, j)].norm().max(1e-30);
                prop_assert!((g1[(i, j)] - g2[(i, j)]).norm() <= 1e-12 * m);
            }
        }
    }

    // the two-mode rotation is orthogonal and preserves the mechanical
    // quadratic form
    #[test]
    fn rotation_preserves_energy(
        g1 in -1.0f64..1.0,
        g2 in -1.0f64..1.0,
        point in proptest::array::uniform4(-5.0f64..5.0),
    ) {
        prop_assume!(g1 * g1 + g2 * g2 > 1e-6);
        let h = hybridize_two_mode(1.0, 0.75, g1, g2, -0.046).unwrap();
        let t = three_mode_transform(&h);
        let v = nalgebra::DVector::from_row_slice(&[point[0], point[1], point[2], point[3], 0.0, 0.0]);
        let w = &t * &v;
        let before: f64 = point.iter().map(|x| x * x).sum();
        let after: f64 = w.iter().take(4).map(|x| x * x).sum();
        prop_assert!((before - after).abs() <= 1e-12 * before.max(1.0));
    }

    // the five-mode sector transforms stay unitary for arbitrary complex
    // couplings
    #[test]
    fn sector_transforms_unitary(
        re in proptest::array::uniform4(-1.0f64..1.0),
        im in proptest::array::uniform4(-1.0f64..1.0),
    ) {
        let g = [
            Complex64::new(re[0], im[0]),
            Complex64::new(re[1], im[1]),
            Complex64::new(re[2], im[2]),
            Complex64::new(re[3], im[3]),
        ];
        prop_assume!(g[0].norm_sqr() + g[1].norm_sqr() > 1e-6);
        prop_assume!(g[2].norm_sqr() + g[3].norm_sqr() > 1e-6);
        let h = hybridize_five_mode(g[0], g[1], g[2], g[3], -0.02, -0.03).unwrap();
        for u in [h.x_transform, h.z_transform] {
            let id = u * u.adjoint();
            for i in 0..2 {
                for j in 0..2 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((id[(i, j)] - expect).norm() <= 1e-12);
                }
            }
        }
    }

    // emitting a parsed config and re-loading it reproduces every field
    #[test]
    fn config_round_trip(
        omega2 in 0.1f64..2.0,
        g1 in -0.5f64..0.5,
        g2 in -0.5f64..0.5,
        gx in -0.2f64..0.2,
        detuning in 0.1f64..2.0,
        kappa in 0.01f64..2.0,
        n_th in 0.0f64..1e6,
    ) {
        prop_assume!(g1.abs() + g2.abs() > 1e-9);
        let text = format!(
            "mode = reduced3\nomega2 = {omega2}\ng1 = {g1}\ng2 = {g2}\ngx = {gx}\n\
             detuning = {detuning}\nkappa = {kappa}\ngamma = 1e-8\nn_th = {n_th}\n"
        );
        let LoadedConfig::Reduced3(p) = load_config(&text).unwrap() else {
            return Err(TestCaseError::fail("wrong mode"));
        };
        let raw = RawConfig::parse(&text).unwrap();
        let LoadedConfig::Reduced3(q) = load_config(&raw.emit()).unwrap() else {
            return Err(TestCaseError::fail("wrong mode after round trip"));
        };
        prop_assert_eq!(p, q);
    }
}
