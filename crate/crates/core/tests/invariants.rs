use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diagram_periods::endo::{end_algebra, hom_space};
use diagram_periods::fixtures::{random_diagram, random_representation};
use diagram_periods::linalg::{bareiss, field::rat, Matrix, Q};
use diagram_periods::periods::{period_space, psi};
use diagram_periods::rigidity::{is_isometry, isometry_inverse, sample_isometries};
use diagram_periods::torsor::{check_torsor, group_at, groups, torsor_from_group};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psi_is_bijective(seed in any::<u64>(), nv in 1usize..4, ne in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, nv, ne);
        let t1 = random_representation(&Q, &mut rng, &d, None, 3, 2);
        let t2 = random_representation(&Q, &mut rng, &d, Some(&t1.dims), 3, 2);
        let p = psi(&d, &t1, &t2, &d.vertex_ids()).unwrap();
        prop_assert!(p.bijective);
        prop_assert_eq!(p.dim_periods, p.dim_hom);
    }

    #[test]
    fn end_contains_identity_and_matches_periods(seed in any::<u64>(), nv in 1usize..4, ne in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, nv, ne);
        let t = random_representation(&Q, &mut rng, &d, None, 3, 2);
        let vs = d.vertex_ids();
        let a = end_algebra(&d, &t, &vs).unwrap();
        let ids: Vec<Matrix<_>> = vs.iter().map(|v| Matrix::identity(Q, t.dim(v))).collect();
        prop_assert!(a.space.coordinates(&ids).is_some());
        prop_assert_eq!(period_space(&d, &t, &t, &vs).unwrap().dim(), a.dim());
        let laws = a.check_laws();
        prop_assert!(laws.associative && laws.unital);
    }

    #[test]
    fn hom_dimension_is_monotone_under_adding_edges(seed in any::<u64>(), nv in 1usize..4, ne in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, nv, ne);
        let t = random_representation(&Q, &mut rng, &d, None, 3, 2);
        let full = hom_space(&d, &t, &t, &d.vertex_ids()).unwrap().dim();
        let free: usize = d.vertex_ids().iter().map(|v| t.dim(v) * t.dim(v)).sum();
        prop_assert!(full <= free);
    }

    #[test]
    fn bareiss_agrees_with_echelon(entries in prop::collection::vec(-4i64..5, 1..30), cols in 1usize..6) {
        let rows: Vec<Vec<_>> = entries.chunks(cols).filter(|c| c.len() == cols).map(|c| c.iter().map(|&x| rat(x)).collect()).collect();
        prop_assume!(!rows.is_empty());
        let m = Matrix::from_fn(Q, rows.len(), cols, |i, j| rows[i][j].clone());
        prop_assert_eq!(bareiss::rank(&rows), m.rank().unwrap());
    }

    #[test]
    fn torsor_round_trip_at_any_basepoint(a in 1usize..5, b in 1usize..4, e in 0usize..12) {
        let g = groups::product(&groups::cyclic(a), &groups::cyclic(b));
        let x = torsor_from_group(&g);
        prop_assert!(check_torsor(&x).is_ok());
        let h = group_at(&x, e % x.n).unwrap();
        prop_assert!(h.check().is_ok());
        prop_assert_eq!(h.n, g.n);
    }

    #[test]
    fn sampled_isometries_are_invertible(seed in any::<u64>(), a in 1i64..4, b in 1i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = Matrix::from_fn(Q, 2, 2, |i, j| if i != j { rat(0) } else if i == 0 { rat(a) } else { rat(b) });
        for x in sample_isometries(&form, &mut rng, 4).unwrap() {
            prop_assert!(is_isometry(&form, &x).unwrap());
            let y = isometry_inverse(&form, &x).unwrap();
            prop_assert!(y.mul(&x).unwrap().is_identity());
            prop_assert!(x.mul(&y).unwrap().is_identity());
        }
    }
}
