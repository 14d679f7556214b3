//! Orientation double cover of a half-translation surface.
//!
//! Sheet `s ∈ {0, 1}` over base triangle `t` is cover triangle `2t + s`; the
//! lift of base directed edge `e` to sheet `s` is cover edge `2e + s` with
//! vector `(-1)^s·z(e)`. Crossing a gluing with sign -1 changes sheet.

use serde::Serialize;

use crate::scalar::Scalar;
use crate::surface::{Checks, FlatSurface, Marks};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SigmaClassification {
    /// Odd-order points: poles and odd zeros.
    pub sigma_o: Vec<usize>,
    /// Even-order zeros.
    pub sigma_e: Vec<usize>,
    /// Marked points of order 0.
    pub sigma_m_free: Vec<usize>,
    /// Marked points of nonzero order.
    pub sigma_sm: Vec<usize>,
    /// `sigma_e ∪ sigma_m_free`, sorted.
    pub sigma_ub: Vec<usize>,
}

pub fn classify_points<S: Scalar>(s: &FlatSurface<S>) -> SigmaClassification {
    let mut c = SigmaClassification::default();
    for v in 0..s.vertex_count() {
        let o = s.order(v);
        if o % 2 != 0 {
            c.sigma_o.push(v);
        } else if o > 0 {
            c.sigma_e.push(v);
        }
        if s.is_marked(v) {
            if o == 0 {
                c.sigma_m_free.push(v);
            } else {
                c.sigma_sm.push(v);
            }
        }
        if (o % 2 == 0 && o > 0) || (o == 0 && s.is_marked(v)) {
            c.sigma_ub.push(v);
        }
    }
    c
}

#[derive(Clone, Debug)]
pub struct DoubleCover<S: Scalar> {
    base: FlatSurface<S>,
    cover: FlatSurface<S>,
    sigma: SigmaClassification,
    lifted: SigmaClassification,
    vertex_projection: Vec<usize>,
    vertex_involution: Vec<usize>,
}

pub fn build_cover<S: Scalar>(s: &FlatSurface<S>) -> DoubleCover<S> {
    let n = s.edge_count();
    let mut triangles = Vec::with_capacity(2 * s.triangle_count());
    for tri in s.triangles() {
        for sheet in 0..2 {
            triangles.push(tri.map(|e| 2 * e + sheet));
        }
    }
    let mut vectors = Vec::with_capacity(2 * n);
    let mut partner = Vec::with_capacity(2 * n);
    for e in 0..n {
        let flip = usize::from(s.sign(e) == -1);
        for sheet in 0..2 {
            let z = s.vector(e).clone();
            vectors.push(if sheet == 0 { z } else { -z });
            partner.push(2 * s.partner(e) + (sheet ^ flip));
        }
    }
    let marked_edges: Vec<usize> = (0..2 * n).filter(|&d| s.is_marked(s.tail(d / 2))).collect();
    let cover = FlatSurface::assemble(
        triangles,
        vectors,
        partner,
        vec![1; 2 * n],
        Marks::EdgeTails(marked_edges),
        Checks { connected: false, stable: false, mark_poles: false },
    )
    .expect("the orientation cover of a valid surface is valid");

    let mut vertex_projection = vec![0; cover.vertex_count()];
    let mut vertex_involution = vec![0; cover.vertex_count()];
    for d in 0..2 * n {
        vertex_projection[cover.tail(d)] = s.tail(d / 2);
        vertex_involution[cover.tail(d)] = cover.tail(d ^ 1);
    }
    let sigma = classify_points(s);
    let lift = |vs: &[usize]| -> Vec<usize> {
        (0..cover.vertex_count()).filter(|&w| vs.contains(&vertex_projection[w])).collect()
    };
    let lifted = SigmaClassification {
        sigma_o: lift(&sigma.sigma_o),
        sigma_e: lift(&sigma.sigma_e),
        sigma_m_free: lift(&sigma.sigma_m_free),
        sigma_sm: lift(&sigma.sigma_sm),
        sigma_ub: lift(&sigma.sigma_ub),
    };
    DoubleCover { base: s.clone(), cover, sigma, lifted, vertex_projection, vertex_involution }
}

impl<S: Scalar> DoubleCover<S> {
    pub fn base(&self) -> &FlatSurface<S> {
        &self.base
    }

    pub fn cover(&self) -> &FlatSurface<S> {
        &self.cover
    }

    pub fn sigma(&self) -> &SigmaClassification {
        &self.sigma
    }

    pub fn lifted_sigma(&self) -> &SigmaClassification {
        &self.lifted
    }

    pub fn edge_involution(&self, d: usize) -> usize {
        d ^ 1
    }

    pub fn edge_projection(&self, d: usize) -> usize {
        d / 2
    }

    pub fn triangle_involution(&self, t: usize) -> usize {
        t ^ 1
    }

    pub fn triangle_projection(&self, t: usize) -> usize {
        t / 2
    }

    pub fn vertex_projection(&self, w: usize) -> usize {
        self.vertex_projection[w]
    }

    pub fn vertex_involution(&self, w: usize) -> usize {
        self.vertex_involution[w]
    }

    pub fn vertex_projections(&self) -> &[usize] {
        &self.vertex_projection
    }

    pub fn vertex_involutions(&self) -> &[usize] {
        &self.vertex_involution
    }

    pub fn preimages(&self, v: usize) -> Vec<usize> {
        (0..self.cover.vertex_count()).filter(|&w| self.vertex_projection[w] == v).collect()
    }

    pub fn components(&self) -> usize {
        self.cover.components()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cover.euler_characteristic()
    }

    /// Genus of a connected cover; `None` when the cover splits into two copies.
    pub fn genus(&self) -> Option<usize> {
        (self.components() == 1).then(|| ((2 - self.euler_characteristic()) / 2) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn pillowcase_cover_is_a_torus() {
        let c = build_cover(&bundled::pillowcase());
        assert_eq!(c.components(), 1);
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.genus(), Some(1));
        assert_eq!(c.sigma().sigma_o.len(), 4);
        for v in 0..4 {
            assert_eq!(c.preimages(v).len(), 1);
        }
    }

    #[test]
    fn torus_cover_is_two_tori() {
        let c = build_cover(&bundled::marked_torus());
        assert_eq!(c.components(), 2);
        assert_eq!(c.genus(), None);
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.sigma().sigma_m_free, vec![0]);
        assert_eq!(c.lifted_sigma().sigma_ub.len(), 2);
    }
}
