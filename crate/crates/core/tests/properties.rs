use monodromy_core::homology::{build_lotka_volterra, build_parabolic, HomologyModel};
use monodromy_core::invariant::{gamma_closure, orbit};
use monodromy_core::linalg::{dot, int, Vector};
use monodromy_core::monodromy::MonodromyGroupSpec;
use monodromy_core::{Matrix, Subspace};
use num_traits::{One, Signed};
use proptest::prelude::*;

const PARABOLIC: &[(u32, u32)] = &[(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (2, 5), (4, 3), (5, 3)];

fn small_vectors(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..=max)
        .prop_map(|vs| vs.into_iter().map(|v| v.into_iter().map(int).collect()).collect())
}

fn family_model() -> impl Strategy<Value = HomologyModel> {
    prop_oneof![
        prop::sample::select(PARABOLIC).prop_map(|(p, q)| build_parabolic(p, q).unwrap()),
        (1u32..=5).prop_map(|p| build_lotka_volterra(p).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_generating_set(
        vs in small_vectors(5, 4),
        mix in prop::collection::vec(-2i64..=2, 16),
    ) {
        let a = Subspace::span(&vs, 5).unwrap();
        // Adding combinations of the generators, then reversing, spans the same space.
        let mut other: Vec<Vector> = vs.iter().rev().cloned().collect();
        for (k, w) in mix.chunks(4).enumerate() {
            let mut v = vec![int(0); 5];
            for (c, u) in w.iter().zip(&vs) {
                for (x, y) in v.iter_mut().zip(u) {
                    *x += int(*c) * y;
                }
            }
            other.insert(k.min(other.len()), v);
        }
        let b = Subspace::span(&other, 5).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn modular_dimension_law(a in small_vectors(6, 4), b in small_vectors(6, 4)) {
        let a = Subspace::span(&a, 6).unwrap();
        let b = Subspace::span(&b, 6).unwrap();
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(a.contains_subspace(&i).unwrap() && b.contains_subspace(&i).unwrap());
    }

    #[test]
    fn power_is_additive(model in family_model(), a in -6i64..=6, b in -6i64..=6) {
        let m = &model.mon0;
        let lhs = m.power(a + b).unwrap();
        let rhs = m.power(a).unwrap().mul(&m.power(b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monodromy_is_unimodular(model in family_model()) {
        prop_assert!(model.mon0.determinant().unwrap().abs().is_one());
        let monc = model.monc.as_ref().unwrap();
        prop_assert!(monc.determinant().unwrap().is_one());
    }

    #[test]
    fn monc_is_unipotent_with_gamma_image(model in family_model()) {
        let monc = model.monc.as_ref().unwrap();
        let nil = monc.sub(&Matrix::identity(model.rank())).unwrap();
        prop_assert!(nil.mul(&nil).unwrap().is_zero());
        let image = Subspace::span(&(0..model.rank()).map(|j| nil.column(j)).collect::<Vec<_>>(), model.rank()).unwrap();
        prop_assert_eq!(image, Subspace::span(&[model.gamma()], model.rank()).unwrap());
    }

    #[test]
    fn monc_preserves_iota(model in family_model(), v in prop::collection::vec(-4i64..=4, 1..=20)) {
        let n = model.rank();
        let v: Vector = (0..n).map(|i| int(v[i % v.len()])).collect();
        let iota = model.iota().unwrap();
        let image = model.monc.as_ref().unwrap().apply(&v).unwrap();
        prop_assert_eq!(dot(iota, &image), dot(iota, &v));
    }

    #[test]
    fn quotient_is_well_defined(model in family_model()) {
        let span = |m: &Matrix| {
            let rows: Vec<Vector> = model
                .relations
                .iter()
                .map(|r| m.apply(&r.iter().map(|&x| int(x)).collect::<Vector>()).unwrap())
                .collect();
            Subspace::span(&rows, model.generator_names.len()).unwrap()
        };
        let relations = span(&Matrix::identity(model.generator_names.len()));
        prop_assert_eq!(span(&model.generator_mon0), relations);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn closure_stable_under_doubling(model in family_model(), extra in 0u64..=2) {
        let bound = model.torsion_order() * (2 + extra);
        let closure = gamma_closure(&model, bound).unwrap();
        prop_assert!(closure.stable_under_doubling);
        prop_assert!(closure.is_fixpoint(&model).unwrap());
        prop_assert!(closure.is_monc_compatible(&model).unwrap());
        let doubled = gamma_closure(&model, 2 * bound).unwrap();
        prop_assert_eq!(doubled.subspace, closure.subspace);
    }

    #[test]
    fn finite_orbits_are_closed(model in family_model()) {
        let closure = gamma_closure(&model, 2 * model.torsion_order()).unwrap();
        let spec = MonodromyGroupSpec::from_model(&model).unwrap();
        let result = orbit(&closure.subspace, &spec, 64).unwrap();
        prop_assert!(result.finite);
        prop_assert!(result.is_closed_under(&spec).unwrap());
    }
}
