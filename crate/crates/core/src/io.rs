//! JSON persistence for surfaces, covers and homology data.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cover::{build_cover, DoubleCover};
use crate::error::{QdError, Result};
use crate::homology::{BasisKind, HomologyData};
use crate::linalg::QMatrix;
use crate::scalar::{Scalar, ScalarMode, Q};
use crate::surface::FlatSurface;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVector {
    pub re: String,
    pub im: String,
}

/// The on-disk surface format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSurface {
    pub triangles: Vec<[usize; 3]>,
    pub edges: BTreeMap<usize, RawVector>,
    pub gluings: Vec<(usize, usize, i8)>,
    #[serde(default)]
    pub marked: Vec<usize>,
    pub mode: ScalarMode,
}

impl RawSurface {
    pub fn from_surface<S: Scalar>(s: &FlatSurface<S>) -> Self {
        let edges = s
            .vectors()
            .iter()
            .enumerate()
            .map(|(e, z)| (e, RawVector { re: z.re.render(), im: z.im.render() }))
            .collect();
        let gluings = s.edge_representatives().into_iter().map(|e| (e, s.partner(e), s.sign(e))).collect();
        RawSurface { triangles: s.triangles().to_vec(), edges, gluings, marked: s.marked_vertices(), mode: S::MODE }
    }

    fn vectors<S: Scalar>(&self) -> Result<Vec<Complex<S>>> {
        let n = 3 * self.triangles.len();
        if let Some(k) = self.edges.keys().find(|&&k| k >= n) {
            return Err(QdError::Malformed(format!("edge {k} does not belong to any of the {n} triangle slots")));
        }
        (0..n)
            .map(|e| {
                let v = self.edges.get(&e).ok_or_else(|| QdError::Malformed(format!("edge {e} has no vector")))?;
                let parse = |x: &str| {
                    S::parse(x).ok_or_else(|| QdError::Malformed(format!("edge {e}: cannot parse `{x}`")))
                };
                Ok(Complex::new(parse(&v.re)?, parse(&v.im)?))
            })
            .collect()
    }

    pub fn to_surface<S: Scalar>(&self) -> Result<FlatSurface<S>> {
        FlatSurface::new(self.triangles.clone(), self.vectors()?, &self.gluings, &self.marked)
    }

    pub fn build(&self) -> Result<AnySurface> {
        Ok(match self.mode {
            ScalarMode::Exact => AnySurface::Exact(self.to_surface()?),
            ScalarMode::Float => AnySurface::Float(self.to_surface()?),
        })
    }
}

/// A surface in either scalar mode.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySurface {
    Exact(FlatSurface<Q>),
    Float(FlatSurface<f64>),
}

impl AnySurface {
    pub fn mode(&self) -> ScalarMode {
        match self {
            AnySurface::Exact(_) => ScalarMode::Exact,
            AnySurface::Float(_) => ScalarMode::Float,
        }
    }

    pub fn raw(&self) -> RawSurface {
        match self {
            AnySurface::Exact(s) => RawSurface::from_surface(s),
            AnySurface::Float(s) => RawSurface::from_surface(s),
        }
    }

    /// Converts to the requested mode; float to exact uses the binary values.
    pub fn into_mode(self, mode: ScalarMode) -> Result<AnySurface> {
        Ok(match (self, mode) {
            (AnySurface::Exact(s), ScalarMode::Float) => AnySurface::Float(s.map_vectors(crate::scalar::convert_c)?),
            (AnySurface::Float(s), ScalarMode::Exact) => AnySurface::Exact(s.map_vectors(crate::scalar::convert_c)?),
            (s, _) => s,
        })
    }
}

pub fn surface_to_json<S: Scalar>(s: &FlatSurface<S>) -> Value {
    serde_json::to_value(RawSurface::from_surface(s)).expect("surfaces serialize")
}

pub fn parse_surface(text: &str) -> Result<AnySurface> {
    let raw: RawSurface =
        serde_json::from_str(text).map_err(|e| QdError::Malformed(format!("surface JSON: {e}")))?;
    raw.build()
}

pub fn surface_from_value(v: &Value) -> Result<AnySurface> {
    let raw: RawSurface =
        serde_json::from_value(v.clone()).map_err(|e| QdError::Malformed(format!("surface JSON: {e}")))?;
    raw.build()
}

pub fn cover_to_json<S: Scalar>(c: &DoubleCover<S>) -> Value {
    let cover = c.cover();
    let n = cover.edge_count();
    json!({
        "base": surface_to_json(c.base()),
        "cover": surface_to_json(cover),
        "components": c.components(),
        "euler_characteristic": c.euler_characteristic(),
        "genus": c.genus(),
        "component_genus": if c.components() == 1 { c.genus() } else { Some(c.base().genus()) },
        "base_genus": c.base().genus(),
        "sigma": c.sigma(),
        "lifted_sigma": c.lifted_sigma(),
        "involution": {
            "edges": (0..n).map(|d| c.edge_involution(d)).collect::<Vec<_>>(),
            "triangles": (0..cover.triangle_count()).map(|t| c.triangle_involution(t)).collect::<Vec<_>>(),
            "vertices": c.vertex_involutions(),
        },
        "projection": {
            "edges": (0..n).map(|d| c.edge_projection(d)).collect::<Vec<_>>(),
            "triangles": (0..cover.triangle_count()).map(|t| c.triangle_projection(t)).collect::<Vec<_>>(),
            "vertices": c.vertex_projections(),
        },
    })
}

/// Rebuilds a cover from its base surface entry.
pub fn cover_from_json(v: &Value) -> Result<AnyCover> {
    let base = v.get("base").ok_or_else(|| QdError::Malformed("cover JSON has no `base` surface".into()))?;
    Ok(match surface_from_value(base)? {
        AnySurface::Exact(s) => AnyCover::Exact(build_cover(&s)),
        AnySurface::Float(s) => AnyCover::Float(build_cover(&s)),
    })
}

#[derive(Clone, Debug)]
pub enum AnyCover {
    Exact(DoubleCover<Q>),
    Float(DoubleCover<f64>),
}

fn render_matrix(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

fn render_vectors(vs: &[Vec<Q>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn homology_to_json(h: &HomologyData) -> Value {
    json!({
        "tag": h.tag(),
        "ranks": {
            "relative": h.rank(BasisKind::Relative),
            "absolute": h.rank(BasisKind::Absolute),
            "h1_relative": h.relative_basis().len(),
            "h1_absolute": h.absolute_basis().len(),
        },
        "ub_vertices": h.ub_vertices(),
        "base_edges": h.base_representatives(),
        "anti_basis": {
            "relative": render_vectors(h.anti_basis(BasisKind::Relative)),
            "absolute": render_vectors(h.anti_basis(BasisKind::Absolute)),
        },
        "intersection": render_matrix(h.intersection_matrix()),
        "wedge": render_matrix(h.wedge_matrix()),
        "comparison": render_matrix(h.comparison()),
    })
}

/// The `tag` field of a homology file.
pub fn homology_tag(v: &Value) -> Result<String> {
    v.get("tag")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| QdError::Malformed("homology JSON has no `tag`".into()))
}

/// Keys sorted, two-space indentation, trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled::Bundled;

    #[test]
    fn bundled_round_trip() {
        for b in Bundled::ALL {
            let s = b.surface();
            let text = to_pretty(&surface_to_json(&s));
            assert_eq!(parse_surface(&text).unwrap(), AnySurface::Exact(s));
        }
    }

    #[test]
    fn square_covers_report_component_genus() {
        let v = cover_to_json(&build_cover(&Bundled::LOrigami.surface()));
        assert_eq!(v["components"], 2);
        assert!(v["genus"].is_null());
        assert_eq!(v["component_genus"], 2);
        let v = cover_to_json(&build_cover(&Bundled::GenericGenus2.surface()));
        assert_eq!(v["component_genus"], 5);
    }

    #[test]
    fn missing_vector_is_malformed() {
        let mut raw = RawSurface::from_surface(&Bundled::Pillowcase.surface());
        raw.edges.remove(&3);
        assert!(matches!(raw.build(), Err(QdError::Malformed(_))));
    }
}
