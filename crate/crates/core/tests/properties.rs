use num_complex::Complex;
use num_traits::Zero;
use proptest::prelude::*;
use qdlab::cover::build_cover;
use qdlab::delaunay::{delaunayize, flip_edge, is_delaunay, is_flippable};
use qdlab::homology::{homology_data, BasisKind};
use qdlab::io::{parse_surface, surface_to_json, to_pretty, AnySurface};
use qdlab::periods::PeriodVector;
use qdlab::random::random_surface;
use qdlab::scalar::{CQ, Q};
use qdlab::strata::SymbolPoset;
use qdlab::FlatSurface;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn surface(seed: u64) -> FlatSurface<Q> {
    random_surface(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn cq(pairs: &[(i64, i64)], n: usize) -> Vec<CQ> {
    (0..n)
        .map(|i| {
            let (a, b) = pairs[i % pairs.len()];
            Complex::new(Q::from_integer(a.into()), Q::new(b.into(), 3.into()))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flips_preserve_area_and_symbol(seed in any::<u64>(), pick in any::<usize>()) {
        let s = surface(seed);
        let edges: Vec<usize> = s.edge_representatives().into_iter().filter(|&e| is_flippable(&s, e)).collect();
        prop_assume!(!edges.is_empty());
        let t = flip_edge(&s, edges[pick % edges.len()]).unwrap();
        prop_assert_eq!(t.area(), s.area());
        prop_assert_eq!(t.symbol(), s.symbol());
        prop_assert_eq!(t.genus(), s.genus());
    }

    #[test]
    fn delaunay_output_is_certified_and_fixed(seed in any::<u64>()) {
        let s = surface(seed);
        let (d, _) = delaunayize(&s).unwrap();
        prop_assert!(is_delaunay(&d).0);
        let (again, flips) = delaunayize(&d).unwrap();
        prop_assert!(flips.is_empty());
        prop_assert_eq!(again, d);
    }

    #[test]
    fn lift_then_evaluate_is_identity(
        seed in any::<u64>(),
        entries in prop::collection::vec((-9i64..=9, -9i64..=9), 1..8),
    ) {
        let h = homology_data(&build_cover(&surface(seed))).unwrap();
        for kind in [BasisKind::Relative, BasisKind::Absolute] {
            let f = cq(&entries, h.rank(kind));
            let a = h.lift(kind, &f).unwrap();
            prop_assert!(h.is_closed(&a));
            prop_assert_eq!(h.evaluate_on_basis(kind, &a), f);
        }
    }

    #[test]
    fn wedge_is_antisymmetric(
        seed in any::<u64>(),
        x in prop::collection::vec((-9i64..=9, -9i64..=9), 1..8),
        y in prop::collection::vec((-9i64..=9, -9i64..=9), 1..8),
    ) {
        let h = homology_data(&build_cover(&surface(seed))).unwrap();
        let n = h.rank(BasisKind::Absolute);
        let (x, y) = (cq(&x, n), cq(&y, n));
        prop_assert_eq!(h.wedge_absolute(&x, &y), -h.wedge_absolute(&y, &x));
        prop_assert!(h.wedge_absolute(&x, &x).is_zero());
    }

    #[test]
    fn surfaces_round_trip_through_json(seed in any::<u64>()) {
        let s = surface(seed);
        let text = to_pretty(&surface_to_json(&s));
        prop_assert_eq!(parse_surface(&text).unwrap(), AnySurface::Exact(s.clone()));
        let f = AnySurface::Exact(s).into_mode(qdlab::ScalarMode::Float).unwrap();
        let text = to_pretty(&serde_json::to_value(f.raw()).unwrap());
        prop_assert_eq!(parse_surface(&text).unwrap(), f);
    }

    #[test]
    fn period_vectors_round_trip_through_json(
        seed in any::<u64>(),
        entries in prop::collection::vec((-9i64..=9, -9i64..=9), 1..8),
    ) {
        let h = homology_data(&build_cover(&surface(seed))).unwrap();
        let v = PeriodVector::new(cq(&entries, h.rank(BasisKind::Relative)), BasisKind::Relative, &h);
        prop_assert_eq!(PeriodVector::<Q>::from_json(&v.to_json()).unwrap(), v);
    }

    #[test]
    fn degeneration_is_a_strict_order(g in 0usize..3, m in 0usize..5) {
        let p = SymbolPoset::new(g, m);
        let n = p.nodes.len();
        let d = |a: usize, b: usize| p.degenerates_to(&p.nodes[a], &p.nodes[b]).unwrap();
        for a in 0..n {
            prop_assert!(!d(a, a));
            for b in 0..n {
                if d(a, b) {
                    prop_assert!(p.dims[b] < p.dims[a]);
                    prop_assert!(!d(b, a));
                    for c in 0..n {
                        if d(b, c) {
                            prop_assert!(d(a, c));
                        }
                    }
                }
            }
        }
        for &(a, b) in &p.edges {
            prop_assert!(d(a, b));
            prop_assert!(!(0..n).any(|c| d(a, c) && d(c, b)));
        }
    }
}
