use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qdlab::bundled::{self, Bundled};
use qdlab::cover::build_cover;
use qdlab::deformation::*;
use qdlab::homology::BasisKind;
use qdlab::levi::random_period;
use qdlab::periods::{period_map, PeriodVector};
use qdlab::scalar::{qr, CQ, Q};
use qdlab::{QdError, Scalar};

#[test]
fn flow_halves_the_torus() {
    let s = bundled::marked_torus();
    let t = 0.5 * 2f64.ln();
    let f = geodesic_flow(&s, t);
    assert!((f.area() - 0.5).abs() < 1e-15);
    assert_eq!(f.symbol(), s.symbol());
    let zero = geodesic_flow(&s, 0.0);
    for (a, b) in zero.vectors().iter().zip(s.vectors()) {
        assert_eq!(a.re, b.re.to_f64());
        assert_eq!(a.im, b.im.to_f64());
    }
}

#[test]
fn flow_scales_area_and_periods() {
    for b in Bundled::ALL {
        let s = b.surface();
        let base = Base::new(s.clone()).unwrap();
        let u = base.periods();
        for t in [0.1, 1.0, 5.0] {
            let f = geodesic_flow(&s, t);
            let k = (-2.0 * t).exp();
            let a0: f64 = s.area().to_f64();
            assert!((f.area() - k * a0).abs() <= 1e-12 * k * a0);
            assert_eq!(f.symbol(), s.symbol());
            let c = build_cover(&f);
            let p = period_map(&c, &base.homology).unwrap();
            for (x, y) in p.coords.iter().zip(&u.coords) {
                let re: f64 = y.re.to_f64();
                let im: f64 = y.im.to_f64();
                assert!((x.re - re).abs() <= 1e-12 * (1.0 + re.abs()));
                assert!((x.im - k * im).abs() <= 1e-12 * (1.0 + im.abs()));
            }
        }
    }
}

#[test]
fn shortening_the_torus_is_additive() {
    let base = Base::new(bundled::marked_torus()).unwrap();
    let u = base.periods();
    let j = u.coords.iter().position(|z| z.re.is_zero() && !z.im.is_zero()).expect("a vertical period");
    let mut coords = vec![CQ::zero(); u.len()];
    coords[j] = Complex::new(Q::zero(), -qr(1, 10) * u.coords[j].im.clone());
    let v = PeriodVector::new(coords, BasisKind::Relative, &base.homology);
    let out = affine_deform(&base.cover, &base.homology, &v).unwrap();
    assert_eq!(period_map(&out, &base.homology).unwrap(), u.add(&v).unwrap());
    assert_eq!(out.base().area(), qr(9, 10));
}

#[test]
fn zero_deformation_is_identity() {
    let base = Base::new(bundled::l_origami()).unwrap();
    let v = PeriodVector::zero(BasisKind::Relative, &base.homology);
    let out = affine_deform(&base.cover, &base.homology, &v).unwrap();
    assert_eq!(out.base().vectors(), base.surface.vectors());
    assert!(lift_to_cochain(&base.homology, &v).unwrap().iter().all(|z| z.is_zero()));
}

#[test]
fn collapsing_deformation_flips() {
    for b in Bundled::ALL {
        let base = Base::new(b.surface()).unwrap();
        let v = base.periods().scale(&Complex::new(-Q::one(), Q::zero()));
        let r = affine_deform(&base.cover, &base.homology, &v);
        assert!(matches!(r, Err(QdError::TriangleFlip { .. })), "{}", b.name());
    }
}

#[test]
fn random_small_deformations_are_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for b in Bundled::ALL {
        let base = Base::new(b.surface()).unwrap();
        let u = base.periods();
        let mut done = 0;
        for _ in 0..40 {
            let v = random_period(&mut rng, &base.homology, BasisKind::Relative, 5, 100);
            match affine_deform(&base.cover, &base.homology, &v) {
                Ok(out) => {
                    assert_eq!(period_map(&out, &base.homology).unwrap(), u.add(&v).unwrap());
                    assert_eq!(out.base().symbol(), base.surface.symbol());
                    done += 1;
                }
                Err(QdError::TriangleFlip { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(done > 20, "{}: only {done} deformations valid", b.name());
    }
}

#[test]
fn wrong_basis_is_rejected() {
    let a = Base::new(bundled::pillowcase()).unwrap();
    let b = Base::new(bundled::l_origami()).unwrap();
    let v = PeriodVector::<Q>::zero(BasisKind::Relative, &b.homology);
    assert!(matches!(affine_deform(&a.cover, &a.homology, &v), Err(QdError::BasisMismatch { .. })));
}

#[test]
fn lift_reproduces_dual_vectors() {
    let base = Base::new(bundled::generic_genus2()).unwrap();
    let h = &base.homology;
    for k in 0..h.rank(BasisKind::Relative) {
        let mut coords = vec![CQ::zero(); h.rank(BasisKind::Relative)];
        coords[k] = Complex::new(Q::one(), Q::zero());
        let v = PeriodVector::new(coords, BasisKind::Relative, h);
        let a = lift_to_cochain(h, &v).unwrap();
        assert!(h.is_closed(&a));
        assert_eq!(h.evaluate_on_basis(BasisKind::Relative, &a), v.coords);
    }
}

#[test]
fn disk_distance_is_monotone_on_the_real_ray() {
    let s = Bundled::LOrigami.normalized();
    let t = 0.7f64.tanh();
    let mut last = 0.0;
    for i in 0..20 {
        let lambda = -t + (0.999 - (-t)) * f64::from(i) / 20.0;
        let p = teich_disk_point(&s, 0.7, Complex::new(lambda, 0.0)).unwrap();
        let m = (lambda + t) / (1.0 + t * lambda);
        assert!((p.distance - m.abs().atanh()).abs() < 1e-12);
        assert!(p.distance >= last);
        last = p.distance;
    }
}

#[test]
fn teich_disk_family_matches_the_disk_norm() {
    let base = Arc::new(Base::new(Bundled::Pillowcase.normalized()).unwrap());
    let fam = DeformationFamily::teich_disk(base.clone()).unwrap();
    let t = 0.5f64;
    for l in [Complex::new(0.01, 0.0), Complex::new(0.0, -0.02), Complex::new(-0.01, 0.01)] {
        let lb = l.conj();
        let m = (lb + t) / (1.0 + t * lb);
        let n = fam.norm(l).unwrap();
        assert!((n - m.norm()).abs() < 1e-3, "{n} vs {}", m.norm());
    }
    let geo = DeformationFamily::geodesic(base);
    assert!((geo.norm(Complex::new(0.5, 0.0)).unwrap() - (-1f64).exp() * 0.5).abs() < 1e-15);
}

#[test]
fn fiber_distance_inverse_pair() {
    let s = bundled::scale(&bundled::marked_torus(), &qr(1, 2));
    let d = fiber_distance(&s).unwrap();
    assert!((d - 0.25f64.atanh()).abs() < 1e-15);
}
