//! Property tests over randomized polygons and sampled group elements:
//! canonical-form invariants, support-function laws, metric axioms, group
//! action axioms, selector equivariance, and document round-trips.

use proptest::prelude::*;

use equigeo::blend;
use equigeo::body::{hausdorff, minkowski_combination, ConvexBody};
use equigeo::selectors::{self, SelectorId};
use equigeo::transform::{sample, GroupTag, SampleBounds};
use equigeo::{doc, point, Point};

fn polygon() -> impl Strategy<Value = ConvexBody> {
    prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 3..9).prop_filter_map(
        "degenerate point set",
        |pts| {
            let points: Vec<Point> = pts.iter().map(|(x, y)| point(&[*x, *y])).collect();
            ConvexBody::canonicalize(&points)
                .ok()
                .filter(|b| b.dimension() == 2)
        },
    )
}

fn bounds() -> SampleBounds {
    SampleBounds::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_idempotent(body in polygon()) {
        let again = ConvexBody::canonicalize(body.vertices()).unwrap();
        prop_assert_eq!(again.vertices().len(), body.vertices().len());
        for (u, v) in again.vertices().iter().zip(body.vertices()) {
            for (a, b) in u.iter().zip(v.iter()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn vertices_are_sorted_and_extreme(body in polygon()) {
        for w in body.vertices().windows(2) {
            let le = w[0][0].total_cmp(&w[1][0]) != std::cmp::Ordering::Greater
                || (w[0][0] == w[1][0]
                    && w[0][1].total_cmp(&w[1][1]) != std::cmp::Ordering::Greater);
            prop_assert!(le, "lexicographic vertex order");
        }
        if body.vertices().len() > 2 {
            for (i, v) in body.vertices().iter().enumerate() {
                let others: Vec<Point> = body
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, p)| p.clone())
                    .collect();
                let rest = ConvexBody::canonicalize(&others).unwrap();
                let (dist, _) = rest.point_distance(v).unwrap();
                prop_assert!(dist > 1e-10, "vertex {i} is not extreme");
            }
        }
    }

    #[test]
    fn support_is_sublinear(body in polygon(),
                            u in (-1.0..1.0f64, -1.0..1.0f64),
                            v in (-1.0..1.0f64, -1.0..1.0f64)) {
        let pu = point(&[u.0, u.1]);
        let pv = point(&[v.0, v.1]);
        let ps = point(&[u.0 + v.0, u.1 + v.1]);
        prop_assume!(pu.norm() > 1e-3 && pv.norm() > 1e-3 && ps.norm() > 1e-3);
        let hu = body.support(&pu).unwrap().0;
        let hv = body.support(&pv).unwrap().0;
        let hs = body.support(&ps).unwrap().0;
        prop_assert!(hs <= hu + hv + 1e-9);
    }

    #[test]
    fn minkowski_supports_add(a in polygon(), b in polygon(),
                              t in 0.0..=1.0f64, angle in 0.0..std::f64::consts::TAU) {
        let mix = minkowski_combination(&a, &b, t).unwrap();
        let u = point(&[angle.cos(), angle.sin()]);
        let expected = (1.0 - t) * a.support(&u).unwrap().0 + t * b.support(&u).unwrap().0;
        prop_assert!((mix.support(&u).unwrap().0 - expected).abs() <= 1e-9);
    }

    #[test]
    fn hausdorff_is_a_metric(a in polygon(), b in polygon(), c in polygon()) {
        let dab = hausdorff(&a, &b).unwrap();
        let dba = hausdorff(&b, &a).unwrap();
        let dbc = hausdorff(&b, &c).unwrap();
        let dac = hausdorff(&a, &c).unwrap();
        prop_assert!(dab >= 0.0);
        prop_assert!((dab - dba).abs() <= 1e-12);
        prop_assert!(hausdorff(&a, &a).unwrap() == 0.0);
        prop_assert!(dac <= dab + dbc + 1e-9);
        if dab > 1e-9 {
            prop_assert!(!a.approx_eq(&b, 1e-12));
        }
    }

    #[test]
    fn hausdorff_respects_the_group(a in polygon(), b in polygon(), seed in any::<u64>()) {
        let dab = hausdorff(&a, &b).unwrap();
        let g = sample(GroupTag::Euclidean, &bounds(), seed).unwrap();
        let diso = hausdorff(&g.apply(&a).unwrap(), &g.apply(&b).unwrap()).unwrap();
        prop_assert!((diso - dab).abs() <= 1e-9);
        let s = sample(GroupTag::Sim, &bounds(), seed).unwrap();
        let lambda = s.sim_decompose().unwrap().lambda;
        let dsim = hausdorff(&s.apply(&a).unwrap(), &s.apply(&b).unwrap()).unwrap();
        prop_assert!((dsim - lambda * dab).abs() <= 1e-9);
    }

    #[test]
    fn composition_acts_like_the_action(body in polygon(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let g = sample(GroupTag::Sim, &bounds(), s1).unwrap();
        let h = sample(GroupTag::Sim, &bounds(), s2).unwrap();
        let composed = g.compose(&h).unwrap().apply(&body).unwrap();
        let stepwise = g.apply(&h.apply(&body).unwrap()).unwrap();
        prop_assert!(hausdorff(&composed, &stepwise).unwrap() <= 1e-8);
    }

    #[test]
    fn inverse_undoes_the_action(body in polygon(), seed in any::<u64>()) {
        let g = sample(GroupTag::Aff, &bounds(), seed).unwrap();
        let back = g.inverse().unwrap().apply(&g.apply(&body).unwrap()).unwrap();
        prop_assert!(hausdorff(&back, &body).unwrap() <= 1e-8);
    }

    #[test]
    fn sampled_elements_respect_nesting(seed in any::<u64>()) {
        let pairs = [
            (GroupTag::Translation, GroupTag::Euclidean),
            (GroupTag::Orthogonal, GroupTag::Euclidean),
            (GroupTag::Euclidean, GroupTag::Sim),
            (GroupTag::Sim, GroupTag::Aff),
        ];
        for (sub, sup) in pairs {
            prop_assert!(sub != sup && GroupTag::contains(sup, sub));
            let g = sample(sub, &bounds(), seed).unwrap();
            prop_assert!(g.is_in(sup), "{sub} sample must lie in {sup}");
        }
    }

    #[test]
    fn cheap_selectors_are_equivariant(body in polygon(), seed in any::<u64>()) {
        for (id, group) in [
            (SelectorId::Centroid, GroupTag::Aff),
            (SelectorId::Steiner, GroupTag::Euclidean),
            (SelectorId::Circumcenter, GroupTag::Sim),
        ] {
            let g = sample(group, &bounds(), seed).unwrap();
            let direct = selectors::evaluate(id, &g.apply(&body).unwrap()).unwrap();
            let mapped = g.apply_point(&selectors::evaluate(id, &body).unwrap());
            let gap = (&direct - &mapped).norm() / (1.0 + mapped.norm());
            prop_assert!(gap <= 1e-6, "{id} under {group}: gap {gap:.3e}");
        }
    }

    #[test]
    fn body_documents_round_trip(body in polygon()) {
        let text = doc::body_doc(&body);
        let back = doc::parse_body(&text).unwrap();
        prop_assert_eq!(back.vertices().len(), body.vertices().len());
        for (u, v) in back.vertices().iter().zip(body.vertices()) {
            for (a, b) in u.iter().zip(v.iter()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn connect_interpolates_endpoints(a in (-5.0..5.0f64, -5.0..5.0f64),
                                      b in (-5.0..5.0f64, -5.0..5.0f64),
                                      t in 0.0..=1.0f64) {
        let pa = point(&[a.0, a.1]);
        let pb = point(&[b.0, b.1]);
        let at0 = blend::connect(&pa, &pb, 0.0).unwrap();
        let at1 = blend::connect(&pa, &pb, 1.0).unwrap();
        prop_assert!((at0 - &pa).norm() <= 1e-12);
        prop_assert!((at1 - &pb).norm() <= 1e-12);
        let mid = blend::connect(&pa, &pb, t).unwrap();
        prop_assert!((mid - (&pa + (&pb - &pa) * t)).norm() <= 1e-12);
        prop_assert!(blend::connect(&pa, &pb, 1.5).is_err());
    }

    #[test]
    fn diameter_scales_with_similarities(body in polygon(), seed in any::<u64>()) {
        let s = sample(GroupTag::Sim, &bounds(), seed).unwrap();
        let lambda = s.sim_decompose().unwrap().lambda;
        let scaled = s.apply(&body).unwrap().diameter();
        prop_assert!((scaled - lambda * body.diameter()).abs() <= 1e-9 * (1.0 + scaled));
    }
}
