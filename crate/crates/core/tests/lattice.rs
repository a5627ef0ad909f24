mod common;

use common::{generated_graphs, ldl_determinant, ldl_negative_definite, ldl_pivots, random_tree};
use plumb_hf::families::{brieskorn_graph, mazur_graph};
use plumb_hf::{
    distinguished_vertex, intersection_form, validate, ArAdvisory, Cycle, IntersectionForm,
    PlumbingGraph, ValidateOptions,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cycle<R: Rng>(rng: &mut R, dim: usize) -> Cycle {
    Cycle::from_coefficients((0..dim).map(|_| rng.gen_range(-50..=50)).collect())
}

#[test]
fn pairing_bilinear_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in generated_graphs().into_iter().take(8) {
        let form = intersection_form(&g);
        let n = g.len();
        for _ in 0..1000 {
            let (a, b, c) = (random_cycle(&mut rng, n), random_cycle(&mut rng, n), random_cycle(&mut rng, n));
            let k: i64 = rng.gen_range(-9..=9);
            let ab = form.pairing(&a, &b).unwrap();
            assert_eq!(ab, form.pairing(&b, &a).unwrap(), "{name}: symmetry");
            let bc = b.checked_add(&c).unwrap();
            assert_eq!(
                form.pairing(&a, &bc).unwrap(),
                ab + form.pairing(&a, &c).unwrap(),
                "{name}: additivity"
            );
            let ka = Cycle::from_coefficients(a.coefficients().iter().map(|x| k * x).collect());
            assert_eq!(form.pairing(&ka, &b).unwrap(), k * ab, "{name}: homogeneity");
        }
    }
}

#[test]
fn generated_graphs_are_unimodular_and_definite() {
    for (name, g) in generated_graphs() {
        let form = intersection_form(&g);
        assert_eq!(form.determinant().unwrap().abs(), 1, "{name}");
        assert!(form.is_negative_definite().unwrap(), "{name}");
        assert_eq!(ldl_determinant(&form).unwrap().abs(), 1, "{name}: oracle");
        let report = validate(&g, ValidateOptions { rationality_check: true, v0: None }).unwrap();
        assert!(report.pipeline_ready(), "{name}");
        assert_eq!(report.distinguished_vertex, Some(0), "{name}: center");
        assert_eq!(report.ar_advisory, ArAdvisory::Pass, "{name}");
    }
}

#[test]
fn negative_definiteness_agrees_with_ldl() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut definite, mut indefinite) = (0, 0);
    for _ in 0..400 {
        let n = rng.gen_range(1..=9);
        let g = random_tree(&mut rng, n, 4);
        let form = intersection_form(&g);
        let ours = form.is_negative_definite().unwrap();
        assert_eq!(ours, ldl_negative_definite(&form), "{:?}", g);
        if ours {
            definite += 1;
            assert_eq!(
                form.determinant().unwrap() as i128,
                ldl_determinant(&form).unwrap()
            );
        } else {
            indefinite += 1;
        }
    }
    // both outcomes exercised
    assert!(definite >= 100 && indefinite >= 50, "{definite} / {indefinite}");
}

#[test]
fn leading_minors_match_rational_elimination() {
    // G_1 in the order (-1, -2, -5, -4, -2)
    let g1 = intersection_form(&mazur_graph(1).unwrap());
    assert_eq!(g1.leading_minors().unwrap(), vec![-1, 1, -3, 2, -1]);
    let e8 = intersection_form(&brieskorn_graph(&common::triple(2, 3, 5)).unwrap());
    assert_eq!(e8.leading_minors().unwrap(), vec![-2, 3, -4, 5, -4, 3, -2, 1]);
    for form in [g1, e8] {
        let pivots = ldl_pivots(&form).unwrap();
        let mut acc = num_rational::Ratio::from_integer(1i128);
        for (p, d) in pivots.iter().zip(form.leading_minors().unwrap()) {
            acc *= p;
            assert_eq!(acc, num_rational::Ratio::from_integer(d as i128));
        }
    }
}

#[test]
fn validate_examples() {
    let g2 = mazur_graph(2).unwrap();
    let r = validate(&g2, ValidateOptions::default()).unwrap();
    assert!(r.is_tree && r.is_negative_definite && r.is_integral_homology_sphere);
    assert_eq!(r.determinant.abs(), 1);
    assert_eq!(r.distinguished_vertex, Some(0));
    assert_eq!(r.ar_advisory, ArAdvisory::Unknown);

    let path = PlumbingGraph::from_weights(vec![-1, -2], &[(0, 1)]).unwrap();
    assert_eq!(distinguished_vertex(&path), None);
    assert_eq!(intersection_form(&path).determinant().unwrap(), 1);
}

proptest! {
    #[test]
    fn form_is_equivariant_under_relabeling(
        seed in any::<u64>(),
        n in 1usize..10,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_tree(&mut rng, n, 6);
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let h = g.permuted(&perm).unwrap();
        let (a, b) = (intersection_form(&g), intersection_form(&h));
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(a.get(i, j), b.get(perm[i], perm[j]));
            }
        }
        prop_assert_eq!(a.determinant().unwrap(), b.determinant().unwrap());
        prop_assert_eq!(a.is_negative_definite().unwrap(), b.is_negative_definite().unwrap());
    }

    #[test]
    fn form_from_rows_roundtrips(seed in any::<u64>(), n in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_tree(&mut rng, n, 5);
        let form = intersection_form(&g);
        prop_assert_eq!(IntersectionForm::from_rows(&form.rows()).unwrap(), form);
    }
}
