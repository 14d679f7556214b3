//! Period coordinates.

use num_complex::Complex;
use serde::Serialize;

use crate::cover::DoubleCover;
use crate::error::{QdError, Result};
use crate::homology::{BasisKind, HomologyData};
use crate::scalar::{convert_c, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodVector<S: Scalar> {
    pub coords: Vec<Complex<S>>,
    pub kind: BasisKind,
    pub tag: String,
}

#[derive(Serialize)]
struct PeriodJson {
    basis: BasisKind,
    tag: String,
    coords: Vec<[String; 2]>,
}

impl<S: Scalar> PeriodVector<S> {
    pub fn new(coords: Vec<Complex<S>>, kind: BasisKind, h: &HomologyData) -> Self {
        PeriodVector { coords, kind, tag: h.tag().to_string() }
    }

    pub fn zero(kind: BasisKind, h: &HomologyData) -> Self {
        let n = h.rank(kind);
        Self::new(vec![Complex::new(S::zero(), S::zero()); n], kind, h)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn check(&self, h: &HomologyData, kind: Option<BasisKind>) -> Result<()> {
        if self.tag != h.tag() || kind.is_some_and(|k| k != self.kind) || self.coords.len() != h.rank(self.kind) {
            return Err(QdError::BasisMismatch {
                expected: format!("{}/{:?}", h.tag(), kind.unwrap_or(self.kind)),
                found: format!("{}/{:?}", self.tag, self.kind),
            });
        }
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag || self.kind != other.kind || self.len() != other.len() {
            return Err(QdError::BasisMismatch {
                expected: format!("{}/{:?}", self.tag, self.kind),
                found: format!("{}/{:?}", other.tag, other.kind),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(PeriodVector { coords, kind: self.kind, tag: self.tag.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(PeriodVector { coords, kind: self.kind, tag: self.tag.clone() })
    }

    pub fn scale(&self, k: &Complex<S>) -> Self {
        let coords = self.coords.iter().map(|a| a.clone() * k.clone()).collect();
        PeriodVector { coords, kind: self.kind, tag: self.tag.clone() }
    }

    pub fn conj(&self) -> Self {
        let coords = self.coords.iter().map(|a| Complex::new(a.re.clone(), -a.im.clone())).collect();
        PeriodVector { coords, kind: self.kind, tag: self.tag.clone() }
    }

    pub fn real_part(&self) -> Self {
        let coords = self.coords.iter().map(|a| Complex::new(a.re.clone(), S::zero())).collect();
        PeriodVector { coords, kind: self.kind, tag: self.tag.clone() }
    }

    pub fn imag_part(&self) -> Self {
        let coords = self.coords.iter().map(|a| Complex::new(a.im.clone(), S::zero())).collect();
        PeriodVector { coords, kind: self.kind, tag: self.tag.clone() }
    }

    pub fn convert<T: Scalar>(&self) -> PeriodVector<T> {
        PeriodVector { coords: self.coords.iter().map(convert_c).collect(), kind: self.kind, tag: self.tag.clone() }
    }

    pub fn to_absolute(&self, h: &HomologyData) -> Result<Self> {
        self.check(h, None)?;
        Ok(match self.kind {
            BasisKind::Absolute => self.clone(),
            BasisKind::Relative => PeriodVector {
                coords: h.relative_to_absolute(&self.coords),
                kind: BasisKind::Absolute,
                tag: self.tag.clone(),
            },
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PeriodJson {
            basis: self.kind,
            tag: self.tag.clone(),
            coords: self.coords.iter().map(|z| [z.re.render(), z.im.render()]).collect(),
        })
        .expect("period vectors serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| QdError::Malformed(format!("period vector: {m}"));
        let kind = match v.get("basis").and_then(|b| b.as_str()) {
            Some("relative") => BasisKind::Relative,
            Some("absolute") => BasisKind::Absolute,
            _ => return Err(bad("basis must be \"relative\" or \"absolute\"")),
        };
        let tag = v.get("tag").and_then(|t| t.as_str()).ok_or_else(|| bad("missing tag"))?.to_string();
        let coords = v
            .get("coords")
            .and_then(|c| c.as_array())
            .ok_or_else(|| bad("missing coords"))?
            .iter()
            .map(|pair| {
                let re = pair.get(0).and_then(|x| x.as_str()).and_then(S::parse);
                let im = pair.get(1).and_then(|x| x.as_str()).and_then(S::parse);
                match (re, im) {
                    (Some(re), Some(im)) => Ok(Complex::new(re, im)),
                    _ => Err(bad("coordinates must be pairs of number strings")),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodVector { coords, kind, tag })
    }
}

/// The edge-vector cochain of the cover in base-edge values.
pub fn chain_period_cochain<S: Scalar>(c: &DoubleCover<S>, h: &HomologyData) -> Vec<Complex<S>> {
    h.base_representatives().iter().map(|&e| c.base().vector(e).clone()).collect()
}

/// Periods of the cover's abelian differential on the relative anti-invariant basis.
pub fn period_map<S: Scalar>(c: &DoubleCover<S>, h: &HomologyData) -> Result<PeriodVector<S>> {
    if c.base().edge_representatives() != h.base_representatives() {
        return Err(QdError::BasisMismatch { expected: h.tag().to_string(), found: "different triangulation".into() });
    }
    let u = chain_period_cochain(c, h);
    Ok(PeriodVector::new(h.evaluate_on_basis(BasisKind::Relative, &u), BasisKind::Relative, h))
}

/// Periods on the absolute anti-invariant basis.
pub fn period_map_absolute<S: Scalar>(c: &DoubleCover<S>, h: &HomologyData) -> Result<PeriodVector<S>> {
    period_map(c, h)?.to_absolute(h)
}

pub fn wedge<S: Scalar>(h: &HomologyData, x: &PeriodVector<S>, y: &PeriodVector<S>) -> Result<Complex<S>> {
    let xa = x.to_absolute(h)?;
    let ya = y.to_absolute(h)?;
    Ok(h.wedge_absolute(&xa.coords, &ya.coords))
}

/// `(i/4)·wedge(x, ȳ)`.
pub fn hermitian_pairing<S: Scalar>(h: &HomologyData, x: &PeriodVector<S>, y: &PeriodVector<S>) -> Result<Complex<S>> {
    let w = wedge(h, x, &y.conj())?;
    let quarter = S::from_ratio(1, 4);
    Ok(Complex::new(-w.im * quarter.clone(), w.re * quarter))
}
