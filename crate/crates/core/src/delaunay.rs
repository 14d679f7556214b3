//! Delaunay triangulations of flat surfaces by edge flips.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{QdError, Result};
use crate::scalar::{cross, norm_f64, Scalar};
use crate::surface::{Checks, FlatSurface, Marks};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlipRecord {
    pub edge: usize,
    /// Incircle determinant of the flipped edge before the flip (positive).
    pub pre_incircle: String,
    /// Incircle determinant of the new edge after the flip (not positive).
    pub post_incircle: String,
}

/// Quadrilateral around the edge `e`, developed in the frame of the triangle
/// containing `e`: `e` runs from `a = 0` to `b`, `c` is the third vertex of
/// that triangle and `d` the third vertex of the triangle across `e`.
struct Quad<S: Scalar> {
    b: Complex<S>,
    c: Complex<S>,
    d: Complex<S>,
}

fn quad<S: Scalar>(s: &FlatSurface<S>, e: usize) -> Option<Quad<S>> {
    let p = s.partner(e);
    if s.triangle_of(e) == s.triangle_of(p) {
        return None;
    }
    let b = s.vector(e).clone();
    let c = b.clone() + s.vector(s.next(e)).clone();
    let f2 = s.vector(s.next(p)).clone();
    let d = if s.sign(e) == 1 { f2 } else { -f2 };
    Some(Quad { b, c, d })
}

fn lift<S: Scalar>(z: &Complex<S>) -> S {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

/// Incircle determinant of the quadrilateral at `e`: positive exactly when the
/// far vertex lies strictly inside the circumcircle of the near triangle.
/// `None` for edges with the same triangle on both sides.
pub fn incircle<S: Scalar>(s: &FlatSurface<S>, e: usize) -> Option<S> {
    let Quad { b, c, d } = quad(s, e)?;
    let ad = -d.clone();
    let bd = b - d.clone();
    let cd = c - d;
    Some(lift(&ad) * cross(&bd, &cd) + lift(&bd) * cross(&cd, &ad) + lift(&cd) * cross(&ad, &bd))
}

fn violates<S: Scalar>(s: &FlatSurface<S>, e: usize) -> Option<S> {
    let value = incircle(s, e)?;
    let Quad { b, c, d } = quad(s, e)?;
    let scale = [b, c, d].iter().map(|z| norm_f64(z)).fold(0.0f64, f64::max).powi(4);
    (value.sign_tol(scale) > 0).then_some(value)
}

/// Whether every edge satisfies the empty-circumcircle condition, together
/// with the violating edges (one directed representative each).
pub fn is_delaunay<S: Scalar>(s: &FlatSurface<S>) -> (bool, Vec<usize>) {
    let bad: Vec<usize> = s.edge_representatives().into_iter().filter(|&e| violates(s, e).is_some()).collect();
    (bad.is_empty(), bad)
}

/// Whether the quadrilateral at `e` is strictly convex, so that `e` can be flipped.
pub fn is_flippable<S: Scalar>(s: &FlatSurface<S>, e: usize) -> bool {
    let Some(Quad { b, c, d }) = quad(s, e) else {
        return false;
    };
    let a = Complex::new(S::zero(), S::zero());
    let h = c.clone() - d.clone();
    let scale = norm_f64(&h) * (norm_f64(&b) + norm_f64(&d));
    cross(&h, &(a - d.clone())).sign_tol(scale) > 0 && cross(&(d.clone() - c.clone()), &(b - c)).sign_tol(scale) > 0
}

/// Replaces the diagonal `e` of its quadrilateral by the other diagonal. The
/// ids of `e` and its partner are reused for the new edge.
pub fn flip_edge<S: Scalar>(s: &FlatSurface<S>, e: usize) -> Result<FlatSurface<S>> {
    if !is_flippable(s, e) {
        return Err(QdError::Malformed(format!("edge {e} does not bound a strictly convex quadrilateral")));
    }
    let p = s.partner(e);
    let sigma = s.sign(e);
    let (t, tp) = (s.triangle_of(e), s.triangle_of(p));
    let (f1, g1) = (s.next(e), s.prev(e));
    let (f2, g2) = (s.next(p), s.prev(p));
    let Quad { c, d, .. } = quad(s, e).expect("flippable edges have a quadrilateral");

    let mut vectors = s.vectors().to_vec();
    let mut partner = s.partners().to_vec();
    let mut sign = s.signs().to_vec();
    if sigma == -1 {
        for x in [f2, g2] {
            vectors[x] = -vectors[x].clone();
            sign[x] = -sign[x];
            let px = partner[x];
            sign[px] = -sign[px];
        }
    }
    vectors[e] = c.clone() - d.clone();
    vectors[p] = d - c;
    sign[e] = 1;
    sign[p] = 1;
    partner[e] = p;
    partner[p] = e;

    let mut triangles = s.triangles().to_vec();
    triangles[t] = [e, g1, f2];
    triangles[tp] = [p, g2, f1];
    let marks = Marks::EdgeTails(s.marks_avoiding(&[e, p]));
    FlatSurface::assemble(
        triangles,
        vectors,
        partner,
        sign,
        marks,
        Checks { connected: s.components() == 1, stable: false, mark_poles: false },
    )
}

/// Flips non-Delaunay edges (lowest id first) until none remain.
pub fn delaunayize<S: Scalar>(s: &FlatSurface<S>) -> Result<(FlatSurface<S>, Vec<FlipRecord>)> {
    let cap = 1000 * s.edge_count().max(1);
    let mut current = s.clone();
    let mut records = Vec::new();
    loop {
        let next = current.edge_representatives().into_iter().find_map(|e| violates(&current, e).map(|v| (e, v)));
        let Some((e, pre)) = next else {
            return Ok((current, records));
        };
        if records.len() >= cap {
            return Err(QdError::NonTerminating { cap });
        }
        current = flip_edge(&current, e)?;
        let post = incircle(&current, e).expect("flipped edge separates two triangles");
        records.push(FlipRecord { edge: e, pre_incircle: pre.render(), post_incircle: post.render() });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::scalar::{q, Q};

    #[test]
    fn square_torus_is_cocircular_delaunay() {
        let s = bundled::marked_torus();
        assert_eq!(incircle(&s, 2), Some(q(0)));
        for e in s.edge_representatives() {
            assert!(incircle(&s, e).unwrap() <= q(0));
        }
        assert!(is_delaunay(&s).0);
    }

    #[test]
    fn flip_is_an_involution_up_to_relabeling() {
        let s = bundled::marked_torus();
        let diag = 2;
        let t = flip_edge(&s, diag).unwrap();
        assert_eq!(t.area(), s.area());
        assert_eq!(t.symbol(), s.symbol());
        let back = flip_edge(&t, diag).unwrap();
        assert_eq!(back.area(), s.area());
        let mut a: Vec<Complex<Q>> = back.vectors().to_vec();
        let mut b: Vec<Complex<Q>> = s.vectors().to_vec();
        let key = |z: &Complex<Q>| (z.re.clone(), z.im.clone());
        a.sort_by_key(key);
        b.sort_by_key(key);
        assert_eq!(a, b);
    }
}
