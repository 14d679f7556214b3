//! Square-tiled constructions and the bundled example surfaces.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{QdError, Result};
use crate::scalar::{q, qr, Scalar, CQ, Q};
use crate::surface::{Checks, FlatSurface, Marks};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    fn slot(self) -> usize {
        match self {
            Side::Bottom => 0,
            Side::Right => 1,
            Side::Top => 4,
            Side::Left => 5,
        }
    }
}

/// Directed edge id of a side of square `k` in a square-tiled surface.
pub fn side_edge(k: usize, side: Side) -> usize {
    6 * k + side.slot()
}

/// Surface made of `n` parallelogram tiles spanned by `h` and `v`, each split
/// along the diagonal into (bottom, right, back-diagonal) and (diagonal, top, left).
/// Gluing signs are read off from the side vectors. Poles are marked, as are
/// the tails of the directed edges listed in `marked_edges`.
pub fn square_tiled(
    n: usize,
    gluings: &[(usize, Side, usize, Side)],
    h: CQ,
    v: CQ,
    marked_edges: &[usize],
) -> Result<FlatSurface<Q>> {
    let mut vectors = Vec::with_capacity(6 * n);
    let mut partner = vec![usize::MAX; 6 * n];
    let mut sign = vec![0i8; 6 * n];
    let d = h.clone() + v.clone();
    let mut triangles = Vec::with_capacity(2 * n);
    for k in 0..n {
        vectors.extend([h.clone(), v.clone(), -d.clone(), d.clone(), -h.clone(), -v.clone()]);
        triangles.push([6 * k, 6 * k + 1, 6 * k + 2]);
        triangles.push([6 * k + 3, 6 * k + 4, 6 * k + 5]);
        partner[6 * k + 2] = 6 * k + 3;
        partner[6 * k + 3] = 6 * k + 2;
        sign[6 * k + 2] = 1;
        sign[6 * k + 3] = 1;
    }
    for &(a, sa, b, sb) in gluings {
        let (ea, eb) = (side_edge(a, sa), side_edge(b, sb));
        let s = if vectors[eb] == -vectors[ea].clone() {
            1
        } else if vectors[eb] == vectors[ea] {
            -1
        } else {
            return Err(QdError::GluingMismatch { edge: ea, partner: eb, reason: "sides are not parallel".into() });
        };
        for (x, y) in [(ea, eb), (eb, ea)] {
            if partner[x] != usize::MAX {
                return Err(QdError::GluingMismatch { edge: x, partner: y, reason: "side glued twice".into() });
            }
            partner[x] = y;
            sign[x] = s;
        }
    }
    if let Some(e) = partner.iter().position(|&p| p == usize::MAX) {
        return Err(QdError::GluingMismatch { edge: e, partner: e, reason: "side left unglued".into() });
    }
    FlatSurface::assemble(
        triangles,
        vectors,
        partner,
        sign,
        Marks::EdgeTails(marked_edges.to_vec()),
        Checks { mark_poles: true, ..Checks::STRICT },
    )
}

fn unit() -> (CQ, CQ) {
    (Complex::new(Q::one(), Q::zero()), Complex::new(Q::zero(), Q::one()))
}

/// Two unit squares glued into a sphere with four poles, all marked. Area 2.
pub fn pillowcase() -> FlatSurface<Q> {
    let (h, v) = unit();
    square_tiled(
        2,
        &[
            (0, Side::Bottom, 1, Side::Top),
            (0, Side::Top, 1, Side::Bottom),
            (0, Side::Right, 1, Side::Right),
            (0, Side::Left, 1, Side::Left),
        ],
        h,
        v,
        &[],
    )
    .expect("pillowcase is valid")
}

/// Unit square torus with its vertex marked.
pub fn marked_torus() -> FlatSurface<Q> {
    let (h, v) = unit();
    square_tiled(1, &[(0, Side::Right, 0, Side::Left), (0, Side::Top, 0, Side::Bottom)], h, v, &[0])
        .expect("torus is valid")
}

/// Three-square L-shaped origami: one unmarked zero of order 4, `q` a square.
pub fn l_origami() -> FlatSurface<Q> {
    let (h, v) = unit();
    square_tiled(
        3,
        &[
            (0, Side::Right, 1, Side::Left),
            (1, Side::Right, 0, Side::Left),
            (2, Side::Right, 2, Side::Left),
            (0, Side::Top, 2, Side::Bottom),
            (2, Side::Top, 0, Side::Bottom),
            (1, Side::Top, 1, Side::Bottom),
        ],
        h,
        v,
        &[],
    )
    .expect("L-origami is valid")
}

/// Cover of the pillowcase given by the four side permutations: front square
/// `j` meets back square `pb[j]` along its bottom, `pt[j]` along its top,
/// `pr[j]` along its right side and `pl[j]` along its left side.
pub fn pillowcase_cover(
    pb: &[usize],
    pt: &[usize],
    pr: &[usize],
    pl: &[usize],
    h: CQ,
    v: CQ,
) -> Result<FlatSurface<Q>> {
    let d = pb.len();
    let mut gluings = Vec::with_capacity(4 * d);
    for j in 0..d {
        gluings.push((j, Side::Bottom, d + pb[j], Side::Top));
        gluings.push((j, Side::Top, d + pt[j], Side::Bottom));
        gluings.push((j, Side::Right, d + pr[j], Side::Right));
        gluings.push((j, Side::Left, d + pl[j], Side::Left));
    }
    square_tiled(2 * d, &gluings, h, v, &[])
}

/// Genus-2 surface with four simple zeros, 16 triangles.
///
/// A degree-3 pillowcase cover with four zeros of angle 3π, with two
/// triangles subdivided at their centroids (two unmarked regular vertices).
pub fn generic_genus2() -> FlatSurface<Q> {
    let (h, v) = unit();
    let s = pillowcase_cover(&[0, 1, 2], &[2, 0, 1], &[1, 2, 0], &[1, 2, 0], h, v)
        .expect("genus-2 pillowcase cover is valid");
    s.subdivide_triangle(0)
        .and_then(|s| s.subdivide_triangle(7))
        .expect("subdivision keeps the surface valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundled {
    Pillowcase,
    MarkedTorus,
    LOrigami,
    GenericGenus2,
}

impl Bundled {
    pub const ALL: [Bundled; 4] = [Bundled::Pillowcase, Bundled::MarkedTorus, Bundled::LOrigami, Bundled::GenericGenus2];

    pub fn name(self) -> &'static str {
        match self {
            Bundled::Pillowcase => "pillowcase",
            Bundled::MarkedTorus => "marked_torus",
            Bundled::LOrigami => "l_origami",
            Bundled::GenericGenus2 => "generic_genus2",
        }
    }

    pub fn from_name(name: &str) -> Option<Bundled> {
        Self::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn surface(self) -> FlatSurface<Q> {
        match self {
            Bundled::Pillowcase => pillowcase(),
            Bundled::MarkedTorus => marked_torus(),
            Bundled::LOrigami => l_origami(),
            Bundled::GenericGenus2 => generic_genus2(),
        }
    }

    /// The shipped JSON file for this surface.
    pub fn data(self) -> &'static str {
        match self {
            Bundled::Pillowcase => include_str!("../data/pillowcase.json"),
            Bundled::MarkedTorus => include_str!("../data/marked_torus.json"),
            Bundled::LOrigami => include_str!("../data/l_origami.json"),
            Bundled::GenericGenus2 => include_str!("../data/generic_genus2.json"),
        }
    }

    /// Expected rank of the anti-invariant relative homology.
    pub fn expected_rank(self) -> usize {
        match self {
            Bundled::Pillowcase | Bundled::MarkedTorus => 2,
            Bundled::LOrigami => 4,
            Bundled::GenericGenus2 => 6,
        }
    }

    pub fn normalized(self) -> FlatSurface<Q> {
        normalize(&self.surface())
    }
}

/// Copy rescaled by a power of 1/2 so that the area is below 1.
pub fn normalize(s: &FlatSurface<Q>) -> FlatSurface<Q> {
    let mut r = Q::one();
    while s.area() * r.clone() * r.clone() >= Q::one() {
        r /= q(2);
    }
    scale(s, &r)
}

/// Applies the real linear map `(x, y) ↦ (a x + b y, c x + d y)` to every edge vector.
pub fn apply_linear<S: Scalar>(s: &FlatSurface<S>, m: [S; 4]) -> Result<FlatSurface<S>> {
    let [a, b, c, d] = m;
    s.map_vectors(|z| {
        Complex::new(
            a.clone() * z.re.clone() + b.clone() * z.im.clone(),
            c.clone() * z.re.clone() + d.clone() * z.im.clone(),
        )
    })
}

pub fn scale<S: Scalar>(s: &FlatSurface<S>, r: &S) -> FlatSurface<S> {
    s.map_vectors(|z| Complex::new(z.re.clone() * r.clone(), z.im.clone() * r.clone()))
        .expect("positive scaling keeps a surface valid")
}

/// Shear making the genus-2 example less symmetric, used for variety in tests.
pub fn shear_matrix() -> [Q; 4] {
    [q(1), qr(1, 3), q(0), qr(5, 4)]
}
