//! Teichmüller flow, Teichmüller disks and piecewise affine deformations.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::cover::{build_cover, DoubleCover};
use crate::error::{QdError, Result};
use crate::homology::{homology_data, BasisKind, HomologyData};
use crate::periods::{period_map, PeriodVector};
use crate::scalar::{cross, to_cf64, Scalar, CQ, Q};
use crate::surface::FlatSurface;

/// A surface together with its cover and homology.
#[derive(Clone, Debug)]
pub struct Base<S: Scalar> {
    pub surface: FlatSurface<S>,
    pub cover: DoubleCover<S>,
    pub homology: HomologyData,
}

impl<S: Scalar> Base<S> {
    pub fn new(surface: FlatSurface<S>) -> Result<Self> {
        let cover = build_cover(&surface);
        let homology = homology_data(&cover)?;
        Ok(Base { surface, cover, homology })
    }

    pub fn periods(&self) -> PeriodVector<S> {
        period_map(&self.cover, &self.homology).expect("a base is consistent with its own homology")
    }

    pub fn periods_absolute(&self) -> PeriodVector<S> {
        self.periods().to_absolute(&self.homology).expect("a base is consistent with its own homology")
    }
}

/// Edge vectors `z ↦ Re z + i·e^{-2t}·Im z`.
pub fn geodesic_flow<S: Scalar>(s: &FlatSurface<S>, t: f64) -> FlatSurface<f64> {
    let k = (-2.0 * t).exp();
    s.map_vectors(|z| Complex::new(z.re.to_f64(), k * z.im.to_f64()))
        .expect("diagonal stretching keeps a surface valid")
}

/// Exact counterpart of the flow for a rational contraction factor `k = e^{-2t}`.
pub fn stretch<S: Scalar>(s: &FlatSurface<S>, k: &S) -> FlatSurface<S> {
    assert!(*k > S::zero(), "stretch factor must be positive");
    s.map_vectors(|z| Complex::new(z.re.clone(), z.im.clone() * k.clone()))
        .expect("diagonal stretching keeps a surface valid")
}

/// The anti-invariant closed cochain with periods `v` on the relative basis,
/// in base-edge values, vanishing on the greedily chosen complement.
pub fn lift_to_cochain<S: Scalar>(h: &HomologyData, v: &PeriodVector<S>) -> Result<Vec<Complex<S>>> {
    v.check(h, None)?;
    h.lift(v.kind, &v.coords)
}

/// New surface whose edge vectors are `ǔ + v̌`.
pub fn affine_deform<S: Scalar>(
    c: &DoubleCover<S>,
    h: &HomologyData,
    v: &PeriodVector<S>,
) -> Result<DoubleCover<S>> {
    v.check(h, Some(BasisKind::Relative))?;
    let a = lift_to_cochain(h, v)?;
    let base = c.base();
    let vectors: Vec<Complex<S>> =
        (0..base.edge_count()).map(|e| base.vector(e).clone() + h.cochain_on_base_edge(&a, e)).collect();
    for (t, tri) in base.triangles().iter().enumerate() {
        let area = cross(&vectors[tri[0]], &vectors[tri[1]]);
        let scale = crate::scalar::norm_f64(&vectors[tri[0]]) * crate::scalar::norm_f64(&vectors[tri[1]]);
        if area.sign_tol(scale.max(f64::MIN_POSITIVE)) <= 0 {
            return Err(QdError::TriangleFlip { triangle: t });
        }
    }
    let surface = base.with_vectors(vectors).map_err(|e| match e {
        QdError::DegenerateTriangle { triangle } => QdError::TriangleFlip { triangle },
        other => other,
    })?;
    Ok(build_cover(&surface))
}

/// `tanh⁻¹(area)` for a surface of area below 1.
pub fn fiber_distance<S: Scalar>(s: &FlatSurface<S>) -> Result<f64> {
    let a = s.area().to_f64();
    if !(a > 0.0 && a < 1.0) {
        return Err(QdError::NormOutOfRange { norm: a });
    }
    Ok(a.atanh())
}

/// Point of the Teichmüller disk through `s`.
#[derive(Clone, Debug)]
pub struct DiskPoint {
    /// `None` at the centre `λ = -tanh d₀`, where the differential vanishes.
    pub surface: Option<FlatSurface<f64>>,
    pub m: Complex<f64>,
    pub distance: f64,
}

/// Möbius coordinate `m(λ̄) = (λ̄ + t)/(1 + t·λ̄)` with `t = tanh d₀`.
pub fn disk_coordinate(d0: f64, lambda: Complex<f64>) -> Result<Complex<f64>> {
    if lambda.norm() >= 1.0 || !lambda.norm().is_finite() {
        return Err(QdError::OutOfDisk { modulus: lambda.norm() });
    }
    let t = d0.tanh();
    let lb = lambda.conj();
    Ok((lb + t) / (Complex::new(1.0, 0.0) + lb * t))
}

/// Surface representing `m(λ̄)·q₀/‖q₀‖` and its distance `tanh⁻¹|m|`.
pub fn teich_disk_point<S: Scalar>(s: &FlatSurface<S>, d0: f64, lambda: Complex<f64>) -> Result<DiskPoint> {
    let m = disk_coordinate(d0, lambda)?;
    let distance = m.norm().atanh();
    if m.norm() == 0.0 {
        return Ok(DiskPoint { surface: None, m, distance });
    }
    let k = m.sqrt() / s.area().to_f64().sqrt();
    let surface = s.map_vectors(|z| to_cf64(z) * k)?;
    Ok(DiskPoint { surface: Some(surface), m, distance })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    LinearPeriod,
    TeichDisk,
    Geodesic,
}

/// Family `u + λ·v₁ + λ̄·v₂` in absolute period coordinates over a base surface.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub base: Arc<Base<Q>>,
    pub u: PeriodVector<Q>,
    pub v1: PeriodVector<Q>,
    pub v2: PeriodVector<Q>,
    pub kind: FamilyKind,
}

impl DeformationFamily {
    pub fn linear(base: Arc<Base<Q>>, v1: PeriodVector<Q>, v2: PeriodVector<Q>) -> Result<Self> {
        let h = &base.homology;
        let v1 = v1.to_absolute(h)?;
        let v2 = v2.to_absolute(h)?;
        let u = base.periods_absolute();
        Ok(DeformationFamily { base, u, v1, v2, kind: FamilyKind::LinearPeriod })
    }

    /// Tangent data of the Teichmüller disk at the base point, whose area is `tanh d₀`:
    /// `v₁ = 0`, `v₂ = u / sinh(2d₀)`.
    pub fn teich_disk(base: Arc<Base<Q>>) -> Result<Self> {
        let t = base.surface.area();
        if t >= Q::one() {
            return Err(QdError::NormOutOfRange { norm: t.to_f64() });
        }
        let inv_sinh = (Q::one() - t.clone() * t.clone()) / (t * Q::from_integer(2.into()));
        let u = base.periods_absolute();
        let v1 = PeriodVector { coords: vec![CQ::zero(); u.len()], ..u.clone() };
        let v2 = u.scale(&Complex::new(inv_sinh, Q::zero()));
        Ok(DeformationFamily { base, u, v1, v2, kind: FamilyKind::TeichDisk })
    }

    /// Geodesic ray through the base; `norm` at `λ` is `e^{-2 Re λ}·area`.
    pub fn geodesic(base: Arc<Base<Q>>) -> Self {
        let u = base.periods_absolute();
        let zero = PeriodVector { coords: vec![CQ::zero(); u.len()], ..u.clone() };
        DeformationFamily { base, u, v1: zero.clone(), v2: zero, kind: FamilyKind::Geodesic }
    }

    pub fn homology(&self) -> &HomologyData {
        &self.base.homology
    }

    fn combination<S: Scalar>(&self, lambda: Complex<S>) -> Vec<Complex<S>> {
        let u: PeriodVector<S> = self.u.convert();
        let v1: PeriodVector<S> = self.v1.convert();
        let v2: PeriodVector<S> = self.v2.convert();
        let lb = Complex::new(lambda.re.clone(), -lambda.im.clone());
        (0..u.len())
            .map(|i| u.coords[i].clone() + lambda.clone() * v1.coords[i].clone() + lb.clone() * v2.coords[i].clone())
            .collect()
    }

    fn norm_generic<S: Scalar>(&self, lambda: Complex<S>) -> S {
        let x = self.combination(lambda);
        let xb: Vec<Complex<S>> = x.iter().map(|z| Complex::new(z.re.clone(), -z.im.clone())).collect();
        let w = self.homology().wedge_absolute(&x, &xb);
        -w.im * S::from_ratio(1, 4)
    }

    /// `(i/4)·wedge(U, Ū)` with `U = u + λv₁ + λ̄v₂`; for the geodesic kind, `e^{-2 Re λ}·area`.
    pub fn norm(&self, lambda: Complex<f64>) -> Result<f64> {
        let n = match self.kind {
            FamilyKind::Geodesic => (-2.0 * lambda.re).exp() * self.base.surface.area().to_f64(),
            _ => self.norm_generic(lambda),
        };
        if n <= 0.0 || !n.is_finite() {
            return Err(QdError::NegativeNorm { norm: n });
        }
        Ok(n)
    }

    pub fn norm_exact(&self, lambda: &CQ) -> Result<Q> {
        if self.kind == FamilyKind::Geodesic {
            return Err(QdError::MismatchedType("the geodesic family has no rational norm".into()));
        }
        let n = self.norm_generic(lambda.clone());
        if n <= Q::zero() {
            return Err(QdError::NegativeNorm { norm: n.to_f64() });
        }
        Ok(n)
    }
}

pub fn norm_of_linear_family(fam: &DeformationFamily, lambda: Complex<f64>) -> Result<f64> {
    fam.norm(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn disk_centre_and_origin() {
        let s = bundled::Bundled::MarkedTorus.normalized();
        let p = teich_disk_point(&s, 0.7, Complex::new(0.0, 0.0)).unwrap();
        assert!((p.distance - 0.7).abs() < 1e-12);
        let area = p.surface.unwrap().area();
        assert!((area - 0.7f64.tanh()).abs() < 1e-12);
        let c = teich_disk_point(&s, 0.7, Complex::new(-(0.7f64.tanh()), 0.0)).unwrap();
        assert!(c.distance.abs() < 1e-15);
        assert!(c.surface.is_none());
        assert!(matches!(
            teich_disk_point(&s, 0.7, Complex::new(0.6, 0.8)),
            Err(QdError::OutOfDisk { .. })
        ));
    }

    #[test]
    fn fiber_distance_examples() {
        let half = bundled::Bundled::Pillowcase.normalized();
        assert!((fiber_distance(&half).unwrap() - 0.5493061443340549).abs() < 1e-12);
        assert!(matches!(fiber_distance(&bundled::pillowcase()), Err(QdError::NormOutOfRange { .. })));
    }
}
