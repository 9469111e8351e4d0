use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use entangling_power::entanglement::{
    concurrence, concurrence_via_sqrt, eof, eof_from_concurrence, factor_concurrence,
};
use entangling_power::gates::{apply_local, random_local_unitary};
use entangling_power::qmat::{hermitian_eig, psd_sqrt, tensor2x2, ComplexMat2, ComplexMat4, C64};
use entangling_power::states::{
    mems, product_factor, product_state, rho_diag, sample_prob_vector, DensityMatrix4, StateFactor,
    ESD_PURITY,
};
use entangling_power::{apply_gate, cartan_kernel, CartanAngles};
use proptest::prelude::*;

fn hermitian(re: [f64; 16], im: [f64; 16]) -> ComplexMat4 {
    let mut m = ComplexMat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = C64::new(re[4 * i + j], im[4 * i + j]);
        }
    }
    m.hermitian_part()
}

fn mat2(v: [f64; 8]) -> ComplexMat2 {
    ComplexMat2([
        [C64::new(v[0], v[1]), C64::new(v[2], v[3])],
        [C64::new(v[4], v[5]), C64::new(v[6], v[7])],
    ])
}

fn arr16() -> impl Strategy<Value = [f64; 16]> {
    prop::array::uniform16(-1.0..1.0f64)
}

fn arr8() -> impl Strategy<Value = [f64; 8]> {
    prop::array::uniform8(-1.0..1.0f64)
}

/// Density matrix `A A† / Tr(A A†)`.
fn density(re: [f64; 16], im: [f64; 16]) -> DensityMatrix4 {
    let mut a = ComplexMat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            a[(i, j)] = C64::new(re[4 * i + j], im[4 * i + j]);
        }
    }
    let g = a * a.adjoint();
    let tr = g.trace().re;
    DensityMatrix4::new(g.scale(1.0 / tr)).unwrap()
}

fn direction() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("nonzero", |d| d.iter().map(|x| x * x).sum::<f64>() > 1e-4)
}

fn cartan() -> impl Strategy<Value = CartanAngles> {
    (0.0..FRAC_PI_2, 0.0..FRAC_PI_2, 0.0..FRAC_PI_2)
        .prop_map(|(x, y, z)| CartanAngles::new(x, y, z).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn eigendecomposition_reconstructs(re in arr16(), im in arr16()) {
        let h = hermitian(re, im);
        let e = hermitian_eig(&h).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&h) <= 1e-11);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let v = e.eigenvectors;
        prop_assert!((v.adjoint() * v).max_abs_diff(&ComplexMat4::identity()) <= 1e-12);
    }

    #[test]
    fn spectrum_is_unitarily_invariant(re in arr16(), im in arr16(), angles in cartan(), seed in any::<u64>()) {
        let h = hermitian(re, im);
        let l = tensor2x2(&random_local_unitary(seed).matrix, &random_local_unitary(seed ^ 1).matrix);
        let u = cartan_kernel(angles).unwrap().matrix * l;
        let a = hermitian_eig(&h).unwrap().eigenvalues;
        let b = hermitian_eig(&u.conjugate(&h)).unwrap().eigenvalues;
        for (x, y) in a.iter().zip(b) {
            prop_assert!((x - y).abs() <= 1e-11);
        }
    }

    #[test]
    fn psd_sqrt_squares_back(re in arr16(), im in arr16()) {
        let rho = density(re, im);
        let r = psd_sqrt(rho.matrix()).unwrap();
        prop_assert!((r * r).max_abs_diff(rho.matrix()) <= 1e-12);
        prop_assert!(r.hermitian_defect() <= 1e-14);
    }

    #[test]
    fn tensor_product_rule(a in arr8(), b in arr8(), c in arr8(), d in arr8()) {
        let (a, b, c, d) = (mat2(a), mat2(b), mat2(c), mat2(d));
        let lhs = tensor2x2(&a, &b) * tensor2x2(&c, &d);
        let rhs = tensor2x2(&(a * c), &(b * d));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-14);
    }

    #[test]
    fn eof_is_local_unitary_invariant(re in arr16(), im in arr16(), seed in any::<u64>()) {
        let rho = density(re, im);
        let moved = apply_local(&random_local_unitary(seed), &random_local_unitary(seed.wrapping_add(7)), &rho);
        prop_assert!((eof(&rho).unwrap() - eof(&moved).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn eof_is_monotone_in_concurrence(a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(eof_from_concurrence(lo) <= eof_from_concurrence(hi));
        prop_assert!((0.0..=1.0).contains(&eof_from_concurrence(a)));
    }

    #[test]
    fn low_purity_states_are_unentangled(re in arr16(), im in arr16(), t in 0.0..1.0f64) {
        let rho = density(re, im);
        let mu0 = rho.purity();
        let target = 0.25 + t * (ESD_PURITY - 0.25);
        let w = if mu0 <= target { 0.0 } else { 1.0 - ((target - 0.25) / (mu0 - 0.25)).sqrt() };
        let mixed = rho.mix(&DensityMatrix4::maximally_mixed(), w);
        prop_assert!(mixed.purity() <= ESD_PURITY + 1e-12);
        prop_assert!(concurrence(&mixed).unwrap() <= 1e-10);
    }

    #[test]
    fn gates_preserve_trace_and_purity(re in arr16(), im in arr16(), angles in cartan()) {
        let rho = density(re, im);
        let out = apply_gate(&cartan_kernel(angles).unwrap(), &rho);
        prop_assert!((out.matrix().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!((out.purity() - rho.purity()).abs() <= 1e-12);
    }

    #[test]
    fn theta_z_does_not_change_the_pi8_action(a in 0.5..1.0f64, chi in 0.0..FRAC_PI_2) {
        let rho = rho_diag(a).unwrap();
        let base = apply_gate(&cartan_kernel(CartanAngles::PI_8).unwrap(), &rho);
        let u = cartan_kernel(CartanAngles::new(FRAC_PI_8, FRAC_PI_8, chi).unwrap()).unwrap();
        prop_assert!(apply_gate(&u, &rho).matrix().max_abs_diff(base.matrix()) <= 1e-14);
    }

    #[test]
    fn wootters_routes_agree(re in arr16(), im in arr16()) {
        let rho = density(re, im).mix(&DensityMatrix4::maximally_mixed(), 0.05);
        let a = concurrence(&rho).unwrap();
        let b = concurrence_via_sqrt(&rho).unwrap();
        prop_assert!((a - b).abs() <= 1e-8);
    }

    #[test]
    fn factor_route_matches_density_route(re in arr16(), im in arr16(), angles in cartan()) {
        let rho = density(re, im);
        let u = cartan_kernel(angles).unwrap();
        let f = StateFactor::from_density(&rho).unwrap().transformed(&u.matrix);
        let direct = concurrence(&apply_gate(&u, &rho)).unwrap();
        prop_assert!((factor_concurrence(&f) - direct).abs() <= 1e-12);
    }

    #[test]
    fn product_states_stay_unentangled(
        mu_a in 0.5..=1.0f64, mu_b in 0.5..=1.0f64, da in direction(), db in direction()
    ) {
        let rho = product_state(mu_a, mu_b, da, db).unwrap();
        prop_assert!((rho.purity() - mu_a * mu_b).abs() <= 1e-12);
        prop_assert!(concurrence(&rho).unwrap() <= 1e-12);
        prop_assert!(factor_concurrence(&product_factor(mu_a, mu_b, da, db).unwrap()) <= 1e-12);
    }

    #[test]
    fn sampler_hits_any_purity(mu in 0.25..=1.0f64, seed in any::<u64>()) {
        let p = sample_prob_vector(mu, seed).unwrap();
        prop_assert!((p.sum_squares() - mu).abs() <= 1e-12);
        prop_assert!(p.values().iter().all(|&x| x >= 0.0));
        prop_assert!((p.values().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn mems_concurrence_equals_gamma(gamma in 0.0..=1.0f64, phi in -3.0..3.0f64) {
        let c = concurrence(&mems(gamma, phi).unwrap()).unwrap();
        prop_assert!((c - gamma).abs() <= 1e-12);
    }
}

#[test]
fn cnot_kernel_from_rho_c_is_chi_independent() {
    use entangling_power::states::rho_c;
    let rho = rho_c(0.4).unwrap();
    let reference = apply_gate(&cartan_kernel(CartanAngles::CNOT).unwrap(), &rho);
    for chi in [0.3, FRAC_PI_4, 1.1, FRAC_PI_2] {
        let u = cartan_kernel(CartanAngles::CNOT.with_theta_z(chi).unwrap()).unwrap();
        assert!(
            apply_gate(&u, &rho)
                .matrix()
                .max_abs_diff(reference.matrix())
                < 1e-14
        );
    }
}
