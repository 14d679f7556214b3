//! Exact homology of the orientation double cover.
//!
//! Cover edges are indexed as undirected edges `2k + s`, where `k` runs over
//! the base edge representatives (directed edges with id below their
//! partner's) and `s` is the sheet of the lift. Anti-invariant chains are
//! stored by their base coordinates `y`: the chain `Σ y_k (ẽ_{k,0} − ẽ_{k,1})`.
//! Anti-invariant cochains are stored by their values `a_k` on `ẽ_{k,0}`.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cover::DoubleCover;
use crate::error::{QdError, Result};
use crate::linalg::{coordinates_modulo, QMatrix, RowSpace};
use crate::scalar::{Scalar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Relative,
    Absolute,
}

#[derive(Clone, Debug)]
pub struct HomologyData {
    base_reps: Vec<usize>,
    /// Base directed edge → (edge index, coefficient of its sheet-0 lift in terms of the representative).
    base_index: Vec<(usize, Q)>,
    /// Cover directed edge → (undirected index, orientation ±1).
    cover_index: Vec<(usize, i8)>,
    cover_rotation: Vec<Vec<usize>>,
    cover_prev: Vec<usize>,
    cover_triangles: Vec<[usize; 3]>,
    cover_edge_count: usize,
    base_triangles: Vec<[usize; 3]>,
    boundary2: QMatrix,
    boundary1: QMatrix,
    ub_vertices: Vec<usize>,
    absolute_basis: Vec<Vec<Q>>,
    relative_basis: Vec<Vec<Q>>,
    involution_abs: QMatrix,
    involution_rel: QMatrix,
    anti_abs: Vec<Vec<Q>>,
    anti_rel: Vec<Vec<Q>>,
    comparison: QMatrix,
    intersection: QMatrix,
    wedge_form: QMatrix,
    lift_abs: QMatrix,
    lift_rel: QMatrix,
    tag: String,
}

pub fn homology_data<S: Scalar>(c: &DoubleCover<S>) -> Result<HomologyData> {
    let base = c.base();
    let cover = c.cover();
    let base_reps = base.edge_representatives();
    let nb = base_reps.len();
    let mut base_index = vec![(0, Q::zero()); base.edge_count()];
    for (k, &e) in base_reps.iter().enumerate() {
        base_index[e] = (k, Q::one());
        let p = base.partner(e);
        base_index[p] = (k, Q::from_integer((-base.sign(e)).into()));
    }
    let nc = 2 * nb;
    let mut cover_index = vec![(0, 0i8); cover.edge_count()];
    for (k, &e) in base_reps.iter().enumerate() {
        for sheet in 0..2 {
            let d = 2 * e + sheet;
            cover_index[d] = (2 * k + sheet, 1);
            cover_index[cover.partner(d)] = (2 * k + sheet, -1);
        }
    }

    let nt = cover.triangle_count();
    let mut boundary2 = QMatrix::zeros(nc, nt);
    for (t, tri) in cover.triangles().iter().enumerate() {
        for &d in tri {
            let (i, o) = cover_index[d];
            boundary2.add_to(i, t, &Q::from_integer(o.into()));
        }
    }
    let nv = cover.vertex_count();
    let mut boundary1 = QMatrix::zeros(nv, nc);
    for (k, &e) in base_reps.iter().enumerate() {
        for sheet in 0..2 {
            let d = 2 * e + sheet;
            boundary1.add_to(cover.head(d), 2 * k + sheet, &Q::one());
            boundary1.add_to(cover.tail(d), 2 * k + sheet, &-Q::one());
        }
    }
    let ub_vertices = c.lifted_sigma().sigma_ub.clone();
    let relative_rows: Vec<usize> = (0..nv).filter(|w| !ub_vertices.contains(w)).collect();
    let boundary1_rel = select_rows(&boundary1, &relative_rows);

    let boundaries = boundary2.columns();
    let absolute_basis = extend_basis(&boundaries, &boundary1.kernel());
    let relative_basis = extend_basis(&boundaries, &boundary1_rel.kernel());
    let swap = |x: &[Q]| -> Vec<Q> { (0..nc).map(|i| x[i ^ 1].clone()).collect() };
    let involution_abs = action_matrix(&absolute_basis, &boundaries, swap)?;
    let involution_rel = action_matrix(&relative_basis, &boundaries, swap)?;

    // Anti-invariant complex in base coordinates.
    let embed = |y: &[Q]| -> Vec<Q> {
        let mut x = vec![Q::zero(); nc];
        for (k, v) in y.iter().enumerate() {
            x[2 * k] = v.clone();
            x[2 * k + 1] = -v.clone();
        }
        x
    };
    let unit = |k: usize| -> Vec<Q> {
        let mut y = vec![Q::zero(); nb];
        y[k] = Q::one();
        y
    };
    let d1p = QMatrix::from_columns(nv, &(0..nb).map(|k| boundary1.mul_vec(&embed(&unit(k)))).collect::<Vec<_>>());
    let d1p_rel = select_rows(&d1p, &relative_rows);
    let anti_boundaries: Vec<Vec<Q>> = (0..base.triangle_count())
        .map(|t| {
            let x0 = boundary2.column(2 * t);
            let x1 = boundary2.column(2 * t + 1);
            (0..nb).map(|k| x0[2 * k].clone() - x1[2 * k].clone()).collect()
        })
        .collect();
    let anti_abs = extend_basis(&anti_boundaries, &d1p.kernel());
    let anti_rel = extend_basis(&anti_boundaries, &d1p_rel.kernel());
    let mut comparison = QMatrix::zeros(anti_rel.len(), anti_abs.len());
    for (j, a) in anti_abs.iter().enumerate() {
        let coords = coordinates_modulo(&anti_rel, &anti_boundaries, a).ok_or(QdError::InconsistentFunctional)?;
        for (i, x) in coords.into_iter().enumerate() {
            comparison.set(i, j, x);
        }
    }

    let cover_rotation: Vec<Vec<usize>> = (0..nv).map(|w| cover.rotation(w).to_vec()).collect();
    let cover_prev: Vec<usize> = (0..cover.edge_count()).map(|d| cover.prev(d)).collect();
    let mut data = HomologyData {
        base_reps,
        base_index,
        cover_index,
        cover_rotation,
        cover_prev,
        cover_triangles: cover.triangles().to_vec(),
        cover_edge_count: nc,
        base_triangles: base.triangles().to_vec(),
        boundary2,
        boundary1,
        ub_vertices,
        absolute_basis,
        relative_basis,
        involution_abs,
        involution_rel,
        anti_abs,
        anti_rel,
        comparison,
        intersection: QMatrix::zeros(0, 0),
        wedge_form: QMatrix::zeros(0, 0),
        lift_abs: QMatrix::zeros(0, 0),
        lift_rel: QMatrix::zeros(0, 0),
        tag: String::new(),
    };
    let r = data.anti_abs.len();
    let chains: Vec<Vec<Q>> = data.anti_abs.iter().map(|y| embed(y)).collect();
    let mut j = QMatrix::zeros(r, r);
    for a in 0..r {
        for b in 0..r {
            j.set(a, b, data.intersection_number(&chains[a], &chains[b]));
        }
    }
    let inv = j.inverse().ok_or(QdError::SingularJ)?;
    let mut g = QMatrix::zeros(r, r);
    for a in 0..r {
        for b in 0..r {
            g.set(a, b, -inv.get(a, b).clone());
        }
    }
    data.intersection = j;
    data.wedge_form = g;
    data.lift_abs = data.lift_matrix(&data.anti_abs)?;
    data.lift_rel = data.lift_matrix(&data.anti_rel)?;
    data.tag = data.compute_tag();
    Ok(data)
}

fn select_rows(m: &QMatrix, rows: &[usize]) -> QMatrix {
    let mut out = QMatrix::zeros(rows.len(), m.cols());
    for (r, &i) in rows.iter().enumerate() {
        for j in 0..m.cols() {
            out.set(r, j, m.get(i, j).clone());
        }
    }
    out
}

/// Greedy extension of the span of `boundaries` by vectors of `cycles`, in
/// order; returns the chosen cycles.
fn extend_basis(boundaries: &[Vec<Q>], cycles: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let Some(dim) = cycles.first().map(Vec::len).or_else(|| boundaries.first().map(Vec::len)) else {
        return Vec::new();
    };
    let mut span = RowSpace::new(dim);
    for b in boundaries {
        span.insert(b);
    }
    cycles.iter().filter(|z| span.insert(z)).cloned().collect()
}

fn action_matrix(basis: &[Vec<Q>], boundaries: &[Vec<Q>], f: impl Fn(&[Q]) -> Vec<Q>) -> Result<QMatrix> {
    let r = basis.len();
    let mut m = QMatrix::zeros(r, r);
    for (j, c) in basis.iter().enumerate() {
        let coords = coordinates_modulo(basis, boundaries, &f(c)).ok_or(QdError::InconsistentFunctional)?;
        for (i, x) in coords.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m)
}

fn scalar_of<S: Scalar>(x: &Q) -> S {
    S::from_rational(x)
}

impl HomologyData {
    fn value(&self, chain: &[Q], d: usize) -> Q {
        let (i, o) = self.cover_index[d];
        if o > 0 {
            chain[i].clone()
        } else {
            -chain[i].clone()
        }
    }

    /// Algebraic intersection number `c · d` of two cycles of the cover,
    /// counted by pushing `d` off itself to the left and crossing it with `c`.
    pub fn intersection_number(&self, c: &[Q], d: &[Q]) -> Q {
        let mut total = Q::zero();
        for cycle in &self.cover_rotation {
            let mut partial = Q::zero();
            for &o in cycle {
                let i = self.cover_prev[o];
                if self.cover_index[o].1 > 0 {
                    partial += self.value(d, o);
                }
                if self.cover_index[i].1 > 0 {
                    partial -= self.value(d, i);
                }
                if !partial.is_zero() {
                    let ci = self.value(c, i);
                    if !ci.is_zero() {
                        total += &partial * ci;
                    }
                }
            }
        }
        total
    }

    /// Linear map taking basis values `f` to the anti-invariant closed cochain
    /// realizing them, zero on greedily chosen lowest-id edges.
    fn lift_matrix(&self, basis: &[Vec<Q>]) -> Result<QMatrix> {
        let nb = self.base_reps.len();
        let mut span = RowSpace::new(nb);
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut cycle_rows = Vec::new();
        for tri in &self.base_triangles {
            let mut row = vec![Q::zero(); nb];
            for &e in tri {
                let (k, coeff) = &self.base_index[e];
                row[*k] += coeff;
            }
            if span.insert(&row) {
                rows.push(row);
            }
        }
        for y in basis {
            let row: Vec<Q> = y.iter().map(|v| v * Q::from_integer(2.into())).collect();
            if !span.insert(&row) {
                return Err(QdError::InconsistentFunctional);
            }
            cycle_rows.push(rows.len());
            rows.push(row);
        }
        for k in 0..nb {
            let mut row = vec![Q::zero(); nb];
            row[k] = Q::one();
            if span.insert(&row) {
                rows.push(row);
            }
        }
        let m = QMatrix::from_rows(&rows);
        let inv = m.inverse().ok_or(QdError::InconsistentFunctional)?;
        let mut lift = QMatrix::zeros(nb, cycle_rows.len());
        for (j, &r) in cycle_rows.iter().enumerate() {
            for i in 0..nb {
                lift.set(i, j, inv.get(i, r).clone());
            }
        }
        Ok(lift)
    }

    fn compute_tag(&self) -> String {
        let mut h = Sha256::new();
        for tri in &self.cover_triangles {
            h.update(format!("{tri:?}"));
        }
        for (i, o) in &self.cover_index {
            h.update(format!("{i}:{o};"));
        }
        for (name, basis) in [("rel", &self.anti_rel), ("abs", &self.anti_abs)] {
            h.update(name);
            for y in basis {
                for v in y {
                    h.update(format!("{v},"));
                }
                h.update("|");
            }
        }
        hex::encode(h.finalize())[..16].to_string()
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn base_edge_count(&self) -> usize {
        self.base_reps.len()
    }

    /// Base directed edge representing each base edge index.
    pub fn base_representatives(&self) -> &[usize] {
        &self.base_reps
    }

    /// Value of an anti-invariant cochain on base directed edge `e` (sheet 0 lift).
    pub fn cochain_on_base_edge<S: Scalar>(&self, a: &[Complex<S>], e: usize) -> Complex<S> {
        let (k, coeff) = &self.base_index[e];
        let c: S = scalar_of(coeff);
        Complex::new(a[*k].re.clone() * c.clone(), a[*k].im.clone() * c)
    }

    pub fn cover_edge_count(&self) -> usize {
        self.cover_edge_count
    }

    pub fn boundary2(&self) -> &QMatrix {
        &self.boundary2
    }

    pub fn boundary1(&self) -> &QMatrix {
        &self.boundary1
    }

    pub fn ub_vertices(&self) -> &[usize] {
        &self.ub_vertices
    }

    pub fn absolute_basis(&self) -> &[Vec<Q>] {
        &self.absolute_basis
    }

    pub fn relative_basis(&self) -> &[Vec<Q>] {
        &self.relative_basis
    }

    pub fn involution_absolute(&self) -> &QMatrix {
        &self.involution_abs
    }

    pub fn involution_relative(&self) -> &QMatrix {
        &self.involution_rel
    }

    /// Anti-invariant bases in base coordinates.
    pub fn anti_basis(&self, kind: BasisKind) -> &[Vec<Q>] {
        match kind {
            BasisKind::Relative => &self.anti_rel,
            BasisKind::Absolute => &self.anti_abs,
        }
    }

    pub fn rank(&self, kind: BasisKind) -> usize {
        self.anti_basis(kind).len()
    }

    /// Full cover chain of an anti-invariant chain given in base coordinates.
    pub fn embed_chain(&self, y: &[Q]) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.cover_edge_count];
        for (k, v) in y.iter().enumerate() {
            x[2 * k] = v.clone();
            x[2 * k + 1] = -v.clone();
        }
        x
    }

    /// Involution acting on a full cover chain.
    pub fn involute_chain(&self, x: &[Q]) -> Vec<Q> {
        (0..x.len()).map(|i| x[i ^ 1].clone()).collect()
    }

    /// Column `j` holds the relative coordinates of absolute basis cycle `j`.
    pub fn comparison(&self) -> &QMatrix {
        &self.comparison
    }

    pub fn intersection_matrix(&self) -> &QMatrix {
        &self.intersection
    }

    /// `-J⁻¹`, the matrix of the wedge pairing on absolute coordinates.
    pub fn wedge_matrix(&self) -> &QMatrix {
        &self.wedge_form
    }

    /// Absolute coordinates of a functional given on the relative basis.
    pub fn relative_to_absolute<S: Scalar>(&self, x: &[Complex<S>]) -> Vec<Complex<S>> {
        let a = &self.comparison;
        (0..a.cols())
            .map(|j| {
                let mut acc = Complex::new(S::zero(), S::zero());
                for (i, xi) in x.iter().enumerate() {
                    let c = a.get(i, j);
                    if !c.is_zero() {
                        let c: S = scalar_of(c);
                        acc = acc + Complex::new(xi.re.clone() * c.clone(), xi.im.clone() * c);
                    }
                }
                acc
            })
            .collect()
    }

    /// `Σ x_i G_ij y_j` with `G = -J⁻¹`, on absolute coordinates.
    pub fn wedge_absolute<S: Scalar>(&self, x: &[Complex<S>], y: &[Complex<S>]) -> Complex<S> {
        let g = &self.wedge_form;
        let mut acc = Complex::new(S::zero(), S::zero());
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let c = g.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let c: S = scalar_of(c);
                let p = x[i].clone() * y[j].clone();
                acc = acc + Complex::new(p.re * c.clone(), p.im * c);
            }
        }
        acc
    }

    /// Anti-invariant closed cochain with the prescribed values on the chosen
    /// basis cycles, in base-edge values `a_k`.
    pub fn lift<S: Scalar>(&self, kind: BasisKind, f: &[Complex<S>]) -> Result<Vec<Complex<S>>> {
        let l = match kind {
            BasisKind::Relative => &self.lift_rel,
            BasisKind::Absolute => &self.lift_abs,
        };
        if f.len() != l.cols() {
            return Err(QdError::InconsistentFunctional);
        }
        Ok((0..l.rows())
            .map(|i| {
                let mut acc = Complex::new(S::zero(), S::zero());
                for (j, fj) in f.iter().enumerate() {
                    let c = l.get(i, j);
                    if !c.is_zero() {
                        let c: S = scalar_of(c);
                        acc = acc + Complex::new(fj.re.clone() * c.clone(), fj.im.clone() * c);
                    }
                }
                acc
            })
            .collect())
    }

    /// Evaluation of an anti-invariant cochain on an anti-invariant chain.
    pub fn evaluate<S: Scalar>(&self, a: &[Complex<S>], y: &[Q]) -> Complex<S> {
        let mut acc = Complex::new(S::zero(), S::zero());
        for (ak, yk) in a.iter().zip(y) {
            if !yk.is_zero() {
                let c: S = scalar_of(&(yk * Q::from_integer(2.into())));
                acc = acc + Complex::new(ak.re.clone() * c.clone(), ak.im.clone() * c);
            }
        }
        acc
    }

    /// Values on the basis cycles of the given kind.
    pub fn evaluate_on_basis<S: Scalar>(&self, kind: BasisKind, a: &[Complex<S>]) -> Vec<Complex<S>> {
        self.anti_basis(kind).iter().map(|y| self.evaluate(a, y)).collect()
    }

    /// Whether an anti-invariant cochain vanishes on all boundaries.
    pub fn is_closed<S: Scalar>(&self, a: &[Complex<S>]) -> bool {
        self.base_triangles.iter().all(|tri| {
            let mut acc = Complex::new(S::zero(), S::zero());
            for &e in tri {
                let (k, coeff) = &self.base_index[e];
                let c: S = scalar_of(coeff);
                acc = acc + Complex::new(a[*k].re.clone() * c.clone(), a[*k].im.clone() * c);
            }
            acc.re.negligible(1.0) && acc.im.negligible(1.0)
        })
    }

    /// Full cover cochain (values on undirected cover edges) of an anti-invariant cochain.
    pub fn expand_cochain(&self, a: &[Q]) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.cover_edge_count];
        for (k, v) in a.iter().enumerate() {
            x[2 * k] = v.clone();
            x[2 * k + 1] = -v.clone();
        }
        x
    }

    /// Simplicial cup product of two cover 1-cocycles evaluated on the
    /// fundamental class, antisymmetrized: over each triangle with edges
    /// `d1, d2, d3` in counterclockwise order, `½(α(d1)β(d2) − α(d2)β(d1))`.
    pub fn cup_product(&self, alpha: &[Q], beta: &[Q]) -> Q {
        let half = Q::new(1.into(), 2.into());
        let mut total = Q::zero();
        for tri in &self.cover_triangles {
            let a1 = self.value(alpha, tri[0]);
            let a2 = self.value(alpha, tri[1]);
            let b1 = self.value(beta, tri[0]);
            let b2 = self.value(beta, tri[1]);
            total += a1 * b2 - a2 * b1;
        }
        total * half
    }

    /// Whether a full cover 1-cochain vanishes on every triangle boundary.
    pub fn is_cocycle(&self, alpha: &[Q]) -> bool {
        self.cover_triangles.iter().all(|tri| tri.iter().map(|&d| self.value(alpha, d)).sum::<Q>().is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::cover::build_cover;
    use crate::scalar::q;

    #[test]
    fn torus_intersection_sign() {
        let s = bundled::marked_torus();
        let c = build_cover(&s);
        let h = homology_data(&c).unwrap();
        // Horizontal and vertical curves on sheet 0: bottom side is base edge 0, right side is base edge 1.
        let mut a = vec![q(0); h.cover_edge_count()];
        let mut b = vec![q(0); h.cover_edge_count()];
        a[0] = q(1);
        b[2] = q(1);
        assert_eq!(h.intersection_number(&a, &b), q(1));
        assert_eq!(h.intersection_number(&b, &a), q(-1));
        assert_eq!(h.intersection_number(&a, &a), q(0));
    }
}
