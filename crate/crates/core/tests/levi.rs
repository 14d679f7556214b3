use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qdlab::bundled::{self, Bundled};
use qdlab::deformation::{Base, DeformationFamily};
use qdlab::homology::BasisKind;
use qdlab::levi::*;
use qdlab::periods::PeriodVector;
use qdlab::scalar::{qr, Q};
use qdlab::QdError;

fn base(b: Bundled) -> Arc<Base<Q>> {
    Arc::new(Base::new(b.normalized()).unwrap())
}

fn family(b: &Arc<Base<Q>>, rng: &mut ChaCha8Rng) -> DeformationFamily {
    let h = &b.homology;
    let v1 = random_period(rng, h, BasisKind::Relative, 10, 40);
    let v2 = random_period(rng, h, BasisKind::Relative, 10, 40);
    DeformationFamily::linear(b.clone(), v1, v2).unwrap()
}

#[test]
fn first_variation_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cfg = FDConfig::default();
    for b in Bundled::ALL {
        let base = base(b);
        for _ in 0..10 {
            let fam = family(&base, &mut rng);
            let r = first_variation_check(&fam, &cfg).unwrap();
            assert!(r.report.passed, "{}: {:?}", b.name(), r.report.cases);
            assert!(r.reduced_error > 10.0 * cfg.tolerance, "{}: {}", b.name(), r.reduced_error);
        }
    }
}

#[test]
fn constant_family_has_zero_derivatives() {
    let base = base(Bundled::LOrigami);
    let z = PeriodVector::zero(BasisKind::Relative, &base.homology);
    let fam = DeformationFamily::linear(base, z.clone(), z).unwrap();
    let cfg = FDConfig::default();
    let r = first_variation_check(&fam, &cfg).unwrap();
    assert!(r.report.passed);
    assert_eq!(r.formula, [0.0, 0.0]);
    let l = laplacian_check_linear(&fam, &cfg.with_tolerance(1e-5)).unwrap();
    assert!(l.passed && l.cases[0].expected == 0.0);
    let n0 = fam.norm(Complex::new(0.0, 0.0)).unwrap();
    assert_eq!(n0, fam.norm(Complex::new(0.1, -0.2)).unwrap());
}

#[test]
fn laplacian_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cfg = FDConfig::default().with_tolerance(1e-5);
    for b in Bundled::ALL {
        let base = base(b);
        for _ in 0..5 {
            let fam = family(&base, &mut rng);
            let r = laplacian_check_linear(&fam, &cfg).unwrap();
            assert!(r.passed, "{}: {:?}", b.name(), r.cases);
        }
    }
}

#[test]
fn norm_is_its_own_quadratic_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for b in Bundled::ALL {
        let base = base(b);
        let fam = family(&base, &mut rng);
        let sc = fam.scenario().unwrap();
        assert_eq!(norm_expansion(&sc, &Complex::new(Q::zero(), Q::zero())), base.surface.area());
        for _ in 0..10 {
            let l = random_cq(&mut rng, 5, 100);
            assert_eq!(norm_expansion(&sc, &l), fam.norm_exact(&l).unwrap());
        }
    }
}

#[test]
fn fiber_scenarios_satisfy_the_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for b in Bundled::ALL {
        let base = base(b);
        let u = base.periods_absolute();
        for _ in 0..25 {
            let sc = random_fiber_scenario(&mut rng, &base.homology, &u).unwrap();
            let id = check_scenario(&sc);
            assert!(id.all(), "{}: {id:?}", b.name());
            let n = normal_scenario(&mut rng, &base.homology, &u).unwrap();
            assert!(check_scenario(&n).all());
            assert!(n.levi_green().is_zero());
        }
    }
}

#[test]
fn unconstrained_scenarios_break_the_reduced_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let base = base(Bundled::GenericGenus2);
    let h = &base.homology;
    let u = base.periods_absolute();
    let v1 = random_period(&mut rng, h, BasisKind::Absolute, 12, 7);
    let v2 = random_period(&mut rng, h, BasisKind::Absolute, 12, 7);
    let b = random_period(&mut rng, h, BasisKind::Absolute, 12, 7);
    let sc = PairingScenario::from_vectors(h, &u, &v1, &v2, &b).unwrap();
    let id = check_scenario(&sc);
    assert!(id.area_identity);
    assert!(!id.fiber_relations && !id.levi_distance && !id.first_variation);
}

#[test]
fn normal_vector_is_levi_orthogonal_to_the_complex_tangent_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for b in Bundled::ALL {
        let base = base(b);
        let h = &base.homology;
        let u = base.periods_absolute();
        let t = base.surface.area();
        let sinh2d = Q::from_integer(2.into()) * t.clone() / (Q::one() - t.clone() * t);
        let zero = PeriodVector::zero(BasisKind::Absolute, h);
        let n = TangentData { v1: zero, v2: u.scale(&Complex::new(Q::one() / sinh2d, Q::zero())) };
        let v1 = random_period(&mut rng, h, BasisKind::Absolute, 9, 5);
        let w = random_period(&mut rng, h, BasisKind::Absolute, 9, 5);
        let uu = h.wedge_absolute(&u.coords, &u.conj().coords);
        let uw = h.wedge_absolute(&u.coords, &w.conj().coords);
        let k = -uw / uu;
        let v2 = w.add(&u.scale(&Complex::new(k.re, -k.im))).unwrap();
        assert!(h.wedge_absolute(&u.coords, &v2.conj().coords).is_zero());
        let v = TangentData { v1, v2 };
        assert!(levi_hermitian(h, &u, &v, &n).unwrap().is_zero());
        let nn = levi_hermitian(h, &u, &n, &n).unwrap();
        let sc = PairingScenario::from_vectors(h, &u, &n.v1, &n.v2, &PeriodVector::zero(BasisKind::Absolute, h));
        assert_eq!(nn, sc.unwrap().levi_distance_fiber());
    }
}

#[test]
fn thurston_examples() {
    let b = Base::new(bundled::pillowcase()).unwrap();
    let h = &b.homology;
    let u = b.periods();
    let iu = u.scale(&Complex::new(Q::zero(), Q::one()));
    let v = thurston_pairing(h, &u, &iu).unwrap();
    assert_eq!(v.real_route, qr(-1, 2));
    assert!(v.agree());
    assert!(thurston_pairing(h, &u, &u).unwrap().real_route.is_zero());
}

#[test]
fn thurston_routes_agree_on_the_hodge_frame() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for b in Bundled::ALL {
        let base = base(b);
        let h = &base.homology;
        let frame = HodgeFrame::new(h, &base.periods()).unwrap();
        assert_eq!(2 * frame.dim(), h.rank(BasisKind::Absolute));
        for _ in 0..20 {
            let p = frame.random_element(&mut rng, 9, 4);
            let q = frame.random_element(&mut rng, 9, 4);
            let v = thurston_pairing(h, &p, &q).unwrap();
            assert!(v.agree(), "{}: {v:?}", b.name());
            let w = thurston_pairing(h, &q, &p).unwrap();
            assert_eq!(w.real_route, -v.real_route);
            let herm = qdlab::periods::hermitian_pairing(h, &p, &p).unwrap();
            assert!(herm.re > Q::zero());
        }
    }
}

#[test]
fn levi_nonneg_labels() {
    let b = Base::new(Bundled::Pillowcase.normalized()).unwrap();
    let h = &b.homology;
    let u = b.periods();
    let zero = PeriodVector::zero(BasisKind::Relative, h);
    let z = levi_nonneg_quantity(h, &u, &zero, &zero, &Complex::new(Q::zero(), Q::zero())).unwrap();
    assert!(z.satisfied && z.lhs == 0.0 && z.rhs == 0.0);
    let minus_i = u.scale(&Complex::new(Q::zero(), -Q::one()));
    let r = levi_nonneg_quantity(h, &u, &u, &minus_i, &Complex::new(Q::zero(), Q::zero())).unwrap();
    assert!(r.satisfied && (r.lhs - 0.125).abs() < 1e-15);
    assert_eq!(r.label, CERTIFIED_LABEL);
    let plus_i = u.scale(&Complex::new(Q::zero(), Q::one()));
    let r = levi_nonneg_quantity(h, &u, &u, &plus_i, &Complex::new(Q::zero(), Q::zero())).unwrap();
    assert!(!r.satisfied && (r.lhs + 0.125).abs() < 1e-15);
    assert_eq!(r.label, UNCERTIFIED_LABEL);
}

#[test]
fn disk_is_harmonic() {
    let s = Bundled::GenericGenus2.normalized();
    let cfg = FDConfig::default().with_tolerance(1e-5);
    for d0 in [0.3, 0.7, 1.2] {
        let r = disk_harmonicity_check(&s, d0, &default_disk_grid(), &cfg).unwrap();
        assert!(r.passed, "{d0}: {:?}", r.cases);
        assert_eq!(r.cases.len(), 25);
    }
    assert!(disk_negative_control(&s, 0.7, &cfg).unwrap() > 1e-3);
    let bad = [Complex::new(-(0.3f64.tanh()), 0.0)];
    assert!(matches!(disk_harmonicity_check(&s, 0.3, &bad, &cfg), Err(QdError::SingularPoint { .. })));
}

#[test]
fn demailly_limits() {
    for (dx, dy) in [(0.3, 0.7), (0.1, 1.0)] {
        let r = demailly_ratio(dx, dy, &[4.0, 6.0, 8.0, 10.0]);
        assert!(r.monotone);
        assert!(r.final_gap < 1e-3, "{r:?}");
    }
    assert!(log_tanh(10.0) < 0.0);
}
