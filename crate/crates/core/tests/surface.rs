use std::collections::BTreeMap;

use num_complex::Complex;
use qdlab::bundled::{self, Bundled};
use qdlab::scalar::{q, qr, Q};
use qdlab::{stratum_dim, FlatSurface, QdError, StratumSymbol};

fn c(re: i64, im: i64) -> Complex<Q> {
    Complex::new(q(re), q(im))
}

#[test]
fn pillowcase_has_four_marked_poles() {
    let s = bundled::pillowcase();
    assert_eq!(s.genus(), 0);
    assert_eq!(s.vertex_count(), 4);
    assert!(s.orders().iter().all(|&o| o == -1));
    assert_eq!(s.marked_count(), 4);
    assert_eq!(s.area(), q(2));
    let sym = s.symbol();
    assert_eq!(sym, StratumSymbol { m_free: 0, n_poles: 4, n_zeros: BTreeMap::new(), epsilon: -1 });
    assert_eq!(stratum_dim(&sym, 0).unwrap(), 2);
}

#[test]
fn marked_torus_symbol() {
    let s = bundled::marked_torus();
    assert_eq!(s.genus(), 1);
    assert_eq!(s.orders(), &[0]);
    assert_eq!(s.area(), q(1));
    let sym = s.symbol();
    assert_eq!(sym, StratumSymbol { m_free: 1, n_poles: 0, n_zeros: BTreeMap::new(), epsilon: 1 });
    assert_eq!(stratum_dim(&sym, 1).unwrap(), 2);
}

#[test]
fn l_origami_symbol() {
    let s = bundled::l_origami();
    assert_eq!(s.genus(), 2);
    assert_eq!(s.orders(), &[4]);
    assert_eq!(s.marked_count(), 0);
    assert_eq!(s.area(), q(3));
    let sym = s.symbol();
    assert_eq!(sym, StratumSymbol { m_free: 0, n_poles: 0, n_zeros: BTreeMap::from([(4, 1)]), epsilon: 1 });
    assert_eq!(stratum_dim(&sym, 2).unwrap(), 4);
}

#[test]
fn generic_genus2_symbol() {
    let s = bundled::generic_genus2();
    assert_eq!(s.triangle_count(), 16);
    assert_eq!(s.genus(), 2);
    let mut orders = s.orders().to_vec();
    orders.sort();
    assert_eq!(orders, vec![0, 0, 1, 1, 1, 1]);
    assert_eq!(s.marked_count(), 0);
    assert_eq!(s.area(), q(6));
    let sym = s.symbol();
    assert_eq!(sym.epsilon, -1);
    assert_eq!(sym.n_zeros, BTreeMap::from([(1, 4)]));
    assert_eq!(stratum_dim(&sym, 2).unwrap(), 6);
}

#[test]
fn normalized_areas_are_below_one() {
    let expect = [qr(1, 2), qr(1, 4), qr(3, 4), qr(3, 8)];
    for (b, a) in Bundled::ALL.iter().zip(expect) {
        assert_eq!(b.normalized().area(), a, "{}", b.name());
    }
}

#[test]
fn zero_edge_vector_is_degenerate() {
    let tri = vec![[0, 1, 2], [3, 4, 5]];
    let vectors = vec![c(1, 0), c(-1, 0), c(0, 0), c(1, 0), c(-1, 0), c(0, 0)];
    let err = FlatSurface::new(tri, vectors, &[(0, 3, -1), (1, 4, -1), (2, 5, 1)], &[]).unwrap_err();
    assert_eq!(err.name(), "DegenerateTriangle");
}

#[test]
fn open_triangle_is_rejected() {
    let tri = vec![[0, 1, 2], [3, 4, 5]];
    let vectors = vec![c(1, 0), c(0, 1), c(-1, -2), c(1, 1), c(-1, 0), c(0, -1)];
    let err = FlatSurface::new(tri, vectors, &[(0, 4, 1), (1, 5, 1), (2, 3, 1)], &[0]).unwrap_err();
    assert!(matches!(err, QdError::ClosureViolation { triangle: 0 }));
}

#[test]
fn unmarked_pole_is_rejected() {
    let s = bundled::pillowcase();
    let tri = s.triangles().to_vec();
    let gl: Vec<_> = (0..s.edge_count()).map(|e| (e, s.partner(e), s.sign(e))).collect();
    let err = FlatSurface::new(tri, s.vectors().to_vec(), &gl, &[0, 1, 2]).unwrap_err();
    assert_eq!(err.name(), "UnmarkedPole");
}

#[test]
fn wrong_sign_is_a_gluing_mismatch() {
    let s = bundled::marked_torus();
    let tri = s.triangles().to_vec();
    let gl: Vec<_> = (0..s.edge_count())
        .map(|e| (e, s.partner(e), if e == 0 || s.partner(e) == 0 { -1 } else { s.sign(e) }))
        .collect();
    let err = FlatSurface::new(tri, s.vectors().to_vec(), &gl, &[0]).unwrap_err();
    assert_eq!(err.name(), "GluingMismatch");
}

#[test]
fn scaling_multiplies_area_by_square() {
    let s = bundled::l_origami();
    let r = qr(3, 7);
    assert_eq!(bundled::scale(&s, &r).area(), s.area() * r.clone() * r);
}

#[test]
fn symbol_invariant_under_subdivision() {
    for b in Bundled::ALL {
        let s = b.surface();
        let t = s.subdivide_triangle(1).unwrap();
        assert_eq!(t.symbol(), s.symbol());
        assert_eq!(t.area(), s.area());
        assert_eq!(t.genus(), s.genus());
    }
}

#[test]
fn float_mode_orders_match() {
    for b in Bundled::ALL {
        let s = b.surface();
        let f = bundled::apply_linear(&s.map_vectors(|z| qdlab::scalar::convert_c::<Q, f64>(z)).unwrap(), [1.0, 0.3, 0.0, 1.7])
            .unwrap();
        assert_eq!(f.orders(), s.orders());
        assert_eq!(f.symbol(), s.symbol());
    }
}

#[test]
fn stratum_dim_rejects_inconsistent_symbols() {
    let bad = StratumSymbol { m_free: 0, n_poles: 3, n_zeros: BTreeMap::new(), epsilon: -1 };
    assert_eq!(stratum_dim(&bad, 0).unwrap_err().name(), "InconsistentSymbol");
    let odd_square = StratumSymbol { m_free: 0, n_poles: 0, n_zeros: BTreeMap::from([(1, 4)]), epsilon: 1 };
    assert_eq!(stratum_dim(&odd_square, 2).unwrap_err().name(), "InconsistentSymbol");
}
