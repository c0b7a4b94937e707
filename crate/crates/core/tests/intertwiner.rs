use num_complex::Complex64;
use qcluster::grid::{GridSpec, Gaussian, KappaConvention, Sign};
use qcluster::intertwiner::*;
use qcluster::Seed;

fn a2() -> Seed {
    Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap()
}

fn b2() -> Seed {
    Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap()
}

#[test]
fn closed_form_kernel_intertwines_at_several_hbar() {
    let grid = GridParams::default();
    for hbar in [0.7, 1.0] {
        for s in [a2(), b2()] {
            for k in s.labels().to_vec() {
                let ks = KernelSpec::new(&s, &k, hbar, KernelConvention::PaperGhat).unwrap();
                let r = verify_intertwiner(&ks, &grid).unwrap();
                assert!(r.pass, "hbar={hbar} {s} k={k}: {r:?}");
            }
        }
    }
}

#[test]
fn small_hbar_on_a_larger_grid() {
    let grid = GridParams {
        points: 512,
        half_width: 16.0,
        ..Default::default()
    };
    for s in [a2(), b2()] {
        for k in s.labels().to_vec() {
            let ks = KernelSpec::new(&s, &k, 0.3, KernelConvention::PaperGhat).unwrap();
            let r = verify_intertwiner(&ks, &grid).unwrap();
            for c in &r.intertwining {
                assert!(c.residual <= 5e-2, "{s} k={k}: {c:?}");
            }
        }
    }
}

#[test]
fn phase_of_the_constant_does_not_matter() {
    let spec = GridSpec::uniform(2, 12.0, 256).unwrap();
    let f = Gaussian::isotropic(2, 1.2).sample(&spec).unwrap();
    let ks = KernelSpec::new(&a2(), &2.into(), 1.0, KernelConvention::PaperGhat).unwrap();
    let ks2 = rotated(&ks, 1.234);
    for i in [1, 2] {
        for sign in Sign::BOTH {
            let a = intertwining_residual(&ks, &f, &i.into(), sign).unwrap();
            let b = intertwining_residual(&ks2, &f, &i.into(), sign).unwrap();
            assert!((a - b).abs() <= 1e-12 + 1e-9 * a, "{a} {b}");
        }
    }
    let k1 = apply_k(&ks, &f).unwrap();
    let k2 = apply_k(&ks2, &f).unwrap();
    let ratio = k2.inner(&k1).unwrap();
    assert!((ratio - Complex64::from_polar(1.0, 1.234)).norm() < 1e-10);
}

#[test]
fn literal_signs_break_the_minus_relations() {
    let spec = GridSpec::uniform(2, 12.0, 256).unwrap();
    let f = Gaussian::isotropic(2, 1.0).sample(&spec).unwrap();
    let ks = KernelSpec::new(&a2(), &2.into(), 1.0, KernelConvention::PaperGhat)
        .unwrap()
        .with_kappa(KappaConvention::Literal);
    let plus = intertwining_residual(&ks, &f, &1.into(), Sign::Plus).unwrap();
    let minus = intertwining_residual(&ks, &f, &1.into(), Sign::Minus).unwrap();
    assert!(plus <= 1e-2, "{plus}");
    assert!(minus > 0.1, "{minus}");
}

#[test]
fn grid_mismatch_is_reported() {
    let ks = KernelSpec::new(&a2(), &1.into(), 1.0, KernelConvention::PaperGhat).unwrap();
    let f = Gaussian::isotropic(3, 1.0)
        .sample(&GridSpec::uniform(3, 8.0, 16).unwrap())
        .unwrap();
    assert!(apply_k(&ks, &f).is_err());
}
