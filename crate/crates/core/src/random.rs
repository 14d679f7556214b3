//! Random surfaces for property tests and the verification suite.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bundled::{apply_linear, pillowcase_cover, square_tiled, Side};
use crate::delaunay::{flip_edge, is_flippable};
use crate::error::{QdError, Result};
use crate::scalar::{CQ, Q};
use crate::surface::FlatSurface;

fn permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn unit() -> (CQ, CQ) {
    (Complex::new(Q::one(), Q::zero()), Complex::new(Q::zero(), Q::one()))
}

/// Connected origami with at most `max_squares` squares; a flat torus gets its vertex 0 marked.
pub fn random_origami<R: Rng>(rng: &mut R, max_squares: usize) -> FlatSurface<Q> {
    loop {
        let n = rng.gen_range(1..=max_squares.max(1));
        let r = permutation(rng, n);
        let u = permutation(rng, n);
        let mut gluings = Vec::with_capacity(2 * n);
        for k in 0..n {
            gluings.push((k, Side::Right, r[k], Side::Left));
            gluings.push((k, Side::Top, u[k], Side::Bottom));
        }
        let (h, v) = unit();
        match square_tiled(n, &gluings, h.clone(), v.clone(), &[]) {
            Ok(s) => return s,
            Err(QdError::Unstable { .. }) => {
                return square_tiled(n, &gluings, h, v, &[0]).expect("a marked torus cover is stable");
            }
            Err(QdError::Disconnected) => continue,
            Err(e) => panic!("origami construction failed: {e}"),
        }
    }
}

/// Connected pillowcase cover of degree at most `max_degree`, marked where needed for stability.
pub fn random_pillowcase_cover<R: Rng>(rng: &mut R, max_degree: usize) -> FlatSurface<Q> {
    loop {
        let d = rng.gen_range(1..=max_degree.max(1));
        let perms: Vec<Vec<usize>> = (0..4).map(|_| permutation(rng, d)).collect();
        let (h, v) = unit();
        match pillowcase_cover(&perms[0], &perms[1], &perms[2], &perms[3], h, v) {
            Ok(s) => return s,
            Err(QdError::Disconnected) => continue,
            Err(QdError::Unstable { .. }) => {
                let mut gluings = Vec::new();
                for j in 0..d {
                    gluings.push((j, Side::Bottom, d + perms[0][j], Side::Top));
                    gluings.push((j, Side::Top, d + perms[1][j], Side::Bottom));
                    gluings.push((j, Side::Right, d + perms[2][j], Side::Right));
                    gluings.push((j, Side::Left, d + perms[3][j], Side::Left));
                }
                let (h, v) = unit();
                if let Ok(s) = square_tiled(2 * d, &gluings, h, v, &[0]) {
                    return s;
                }
            }
            Err(e) => panic!("pillowcase cover construction failed: {e}"),
        }
    }
}

/// Matrix in GL⁺(2, ℚ) with small entries.
pub fn random_gl2<R: Rng>(rng: &mut R) -> [Q; 4] {
    loop {
        let mut e = || Q::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into());
        let m = [e(), e(), e(), e()];
        let det = m[0].clone() * m[3].clone() - m[1].clone() * m[2].clone();
        if det.is_positive() {
            return m;
        }
    }
}

/// Up to `count` flips of randomly chosen flippable edges.
pub fn random_flips<R: Rng>(rng: &mut R, s: &FlatSurface<Q>, count: usize) -> FlatSurface<Q> {
    let mut cur = s.clone();
    for _ in 0..count {
        let edges: Vec<usize> = cur.edge_representatives().into_iter().filter(|&e| is_flippable(&cur, e)).collect();
        let Some(&e) = edges.choose(rng) else { break };
        cur = flip_edge(&cur, e).expect("flippable edges flip");
    }
    cur
}

/// An origami or pillowcase cover, sheared by a random element of GL⁺(2, ℚ) and flipped a few times.
pub fn random_surface<R: Rng>(rng: &mut R) -> FlatSurface<Q> {
    let s = if rng.gen_bool(0.5) { random_origami(rng, 10) } else { random_pillowcase_cover(rng, 5) };
    let s = apply_linear(&s, random_gl2(rng)).expect("orientation-preserving maps keep surfaces valid");
    let k = rng.gen_range(0..=s.edge_count() / 2);
    random_flips(rng, &s, k)
}

/// A random surface whose triangle count does not exceed `max_triangles`.
pub fn random_small_surface<R: Rng>(rng: &mut R, max_triangles: usize) -> Result<FlatSurface<Q>> {
    for _ in 0..1000 {
        let s = random_surface(rng);
        if s.triangle_count() <= max_triangles {
            return Ok(s);
        }
    }
    Err(QdError::NonTerminating { cap: 1000 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_surfaces_are_valid_and_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let s = random_surface(&mut rng);
            assert_eq!(s.components(), 1);
            let sym = s.symbol();
            assert!(sym.validate(s.genus()).is_ok());
            assert!(!Zero::is_zero(&s.area()));
        }
    }
}
