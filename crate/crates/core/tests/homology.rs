use num_complex::Complex;
use qdlab::bundled::Bundled;
use qdlab::cover::build_cover;
use qdlab::homology::{homology_data, BasisKind};
use qdlab::linalg::QMatrix;
use qdlab::periods::{hermitian_pairing, period_map, wedge};
use qdlab::scalar::{q, Q};

#[test]
fn ranks_match_stratum_dimension() {
    for b in Bundled::ALL {
        let s = b.surface();
        let c = build_cover(&s);
        let h = homology_data(&c).unwrap();
        assert_eq!(h.rank(BasisKind::Relative), b.expected_rank(), "{}", b.name());
        assert_eq!(h.rank(BasisKind::Relative), s.stratum_dim().unwrap());
    }
}

#[test]
fn involution_squares_to_identity() {
    for b in Bundled::ALL {
        let h = homology_data(&build_cover(&b.surface())).unwrap();
        for m in [h.involution_absolute(), h.involution_relative()] {
            assert_eq!(m.mul(m), QMatrix::identity(m.rows()), "{}", b.name());
        }
        for y in h.anti_basis(BasisKind::Absolute) {
            let x = h.embed_chain(y);
            let ix: Vec<Q> = h.involute_chain(&x);
            assert!(x.iter().zip(&ix).all(|(a, b)| *a == -b.clone()));
        }
    }
}

#[test]
fn area_identity_on_bundled_surfaces() {
    for b in Bundled::ALL {
        let s = b.surface();
        let c = build_cover(&s);
        let h = homology_data(&c).unwrap();
        let u = period_map(&c, &h).unwrap();
        let w = wedge(&h, &u, &u.conj()).unwrap();
        assert_eq!(w.re, q(0), "{}", b.name());
        assert_eq!(-w.im, q(4) * s.area(), "{}", b.name());
        let hp = hermitian_pairing(&h, &u, &u).unwrap();
        assert_eq!(hp, Complex::new(s.area(), q(0)));
    }
}

#[test]
fn intersection_matrix_is_antisymmetric() {
    for b in Bundled::ALL {
        let h = homology_data(&build_cover(&b.surface())).unwrap();
        let j = h.intersection_matrix();
        assert_eq!(j.transpose(), {
            let mut m = j.clone();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    m.set(r, c, -j.get(r, c).clone());
                }
            }
            m
        });
    }
}
