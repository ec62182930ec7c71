//! End-to-end construction of the solution family through the public API.

use num_complex::Complex64;
use veronese_core::algebra::{BiRationalFn, WeightedMatrix};
use veronese_core::geometry::{gellmann_basis, immersion, radius_squared, sample_surface, GridConfig};
use veronese_core::model::{
    closed_form_fk, closed_form_projector, el_residual_projector, el_residual_vector, has_conformal_denominators,
    perturbed_projector, perturbed_vector, projector_from_vector, raise, Ladder, ModelInstance,
};
use veronese_core::spin::{projector_recurrence_spin, spin_matrices, Direction};

#[test]
fn family_for_small_orders() {
    for n in 1..=3 {
        let inst = ModelInstance::new(n).unwrap();
        let mut sum = WeightedMatrix::zeros(n);
        for k in inst.levels() {
            let f = closed_form_fk(inst, k).unwrap();
            assert!(el_residual_vector(&f).unwrap().is_zero(), "N={n} k={k}");
            assert!(has_conformal_denominators(&f.vec));
            let p = projector_from_vector(&f).unwrap();
            assert_eq!(p.mat, closed_form_projector(inst, k).unwrap().mat);
            assert!(el_residual_projector(&p.mat).is_zero());
            sum = &sum + &p.mat;
        }
        assert_eq!(sum, WeightedMatrix::identity(n));
        let top = closed_form_fk(inst, n).unwrap();
        assert!(matches!(raise(&top), Ladder::Annihilated));
    }
}

#[test]
fn perturbations_are_not_solutions() {
    assert!(!el_residual_vector(&perturbed_vector()).unwrap().is_zero());
    assert!(!el_residual_projector(&perturbed_projector().mat).is_zero());
}

#[test]
fn spin_route_reaches_every_level() {
    let inst = ModelInstance::new(4).unwrap();
    let s = spin_matrices(inst);
    let mut p = closed_form_projector(inst, 0).unwrap();
    for k in 1..=4 {
        p = projector_recurrence_spin(&s, &p, Direction::Raise).value().unwrap();
        assert_eq!(p.mat, closed_form_projector(inst, k).unwrap().mat);
    }
    assert!(projector_recurrence_spin(&s, &p, Direction::Raise).is_annihilated());
}

#[test]
fn sampled_surfaces_lie_on_spheres() {
    for n in 1..=3 {
        let inst = ModelInstance::new(n).unwrap();
        for k in inst.levels() {
            let grid = GridConfig {
                resolution: 7,
                radius_bound: 4.0,
            };
            let set = sample_surface(inst, k, grid).unwrap();
            assert_eq!(set.samples.len(), 49);
            assert_eq!(set.samples[0].coords.len(), (n + 1) * (n + 1) - 1);
            assert!(set.max_norm_deviation() < 1e-10, "N={n} k={k}");
        }
    }
}

#[test]
fn coordinates_reconstruct_the_immersion() {
    let inst = ModelInstance::new(3).unwrap();
    let d = inst.dim();
    let x = immersion(inst, 2).unwrap().x;
    let xi = Complex64::new(0.7, -1.3);
    let dense = x.eval_numeric(xi).unwrap();
    let basis = gellmann_basis(d);
    let grid = GridConfig {
        resolution: 2,
        radius_bound: 1.0,
    };
    let set = sample_surface(inst, 2, grid).unwrap();
    // first grid point is (-1, -1)
    let at = x.eval_numeric(Complex64::new(-1.0, -1.0)).unwrap();
    for idx in 0..d * d {
        let v: Complex64 = set.samples[0].coords.iter().zip(&basis).map(|(c, b)| b[idx] * *c).sum();
        assert!((v - at[idx]).norm() < 1e-12);
    }
    let norm: f64 = -0.5 * (0..d).map(|i| (0..d).map(|l| dense[i * d + l] * dense[l * d + i]).sum::<Complex64>().re).sum::<f64>();
    let r2 = radius_squared(inst, 2).unwrap().unwrap();
    let r2 = BiRationalFn::constant(veronese_core::algebra::GaussianRational::real(r2));
    assert!((norm - r2.eval_numeric(xi).unwrap().re).abs() < 1e-12);
}
