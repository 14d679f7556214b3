//! Triangulated half-translation surfaces.
//!
//! A surface is a set of positively oriented triangles whose directed edges
//! carry holonomy vectors of a local branch of the square root of `q`. Each
//! directed edge is glued to exactly one partner with a sign `σ = ±1`, and
//! `z(partner) = -σ·z(edge)`.
//!
//! Vertices are numbered canonically: scanning directed edges by id, a vertex
//! receives the next free number the first time it appears as a tail.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{QdError, Result};
use crate::scalar::{cross, dot, norm_f64, Scalar, ScalarMode};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StratumSymbol {
    pub m_free: usize,
    pub n_poles: usize,
    pub n_zeros: BTreeMap<u32, usize>,
    pub epsilon: i8,
}

impl StratumSymbol {
    /// Σ l·n(l) over all singular points, poles included.
    pub fn total_order(&self) -> i64 {
        let zeros: i64 = self.n_zeros.iter().map(|(&l, &n)| l as i64 * n as i64).sum();
        zeros - self.n_poles as i64
    }

    pub fn singular_count(&self) -> usize {
        self.n_poles + self.n_zeros.values().sum::<usize>()
    }

    /// Genus forced by Gauss-Bonnet, if the total order allows one.
    pub fn genus(&self) -> Result<usize> {
        let t = self.total_order() + 4;
        if t < 0 || t % 4 != 0 {
            return Err(QdError::InconsistentSymbol(format!(
                "total order {} is not of the form 4g - 4",
                self.total_order()
            )));
        }
        Ok((t / 4) as usize)
    }

    pub fn validate(&self, g: usize) -> Result<()> {
        if self.epsilon != 1 && self.epsilon != -1 {
            return Err(QdError::InconsistentSymbol(format!("epsilon = {}", self.epsilon)));
        }
        if self.n_zeros.contains_key(&0) {
            return Err(QdError::InconsistentSymbol("order 0 listed among zeros".into()));
        }
        if self.total_order() != 4 * g as i64 - 4 {
            return Err(QdError::InconsistentSymbol(format!(
                "sum of orders {} differs from 4g - 4 = {}",
                self.total_order(),
                4 * g as i64 - 4
            )));
        }
        if self.epsilon == 1 && (self.n_poles > 0 || self.n_zeros.keys().any(|l| l % 2 == 1)) {
            return Err(QdError::InconsistentSymbol("a square has only even orders".into()));
        }
        Ok(())
    }
}

impl fmt::Display for StratumSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zeros: Vec<String> = self.n_zeros.iter().map(|(l, n)| format!("{l}:{n}")).collect();
        write!(
            f,
            "({}, {}, {{{}}}, {})",
            self.m_free,
            self.n_poles,
            zeros.join(", "),
            if self.epsilon > 0 { "+1" } else { "-1" }
        )
    }
}

/// Complex dimension of the stratum with the given symbol in genus `g`.
pub fn stratum_dim(p: &StratumSymbol, g: usize) -> Result<usize> {
    p.validate(g)?;
    let d = 2 * g as i64 + (p.epsilon as i64 - 3) / 2 + p.m_free as i64 + p.singular_count() as i64;
    if d < 0 {
        return Err(QdError::InconsistentSymbol(format!("negative dimension {d}")));
    }
    Ok(d as usize)
}

/// How to mark vertices while assembling a surface.
#[derive(Clone, Debug)]
pub(crate) enum Marks {
    /// Canonical vertex ids.
    Vertices(Vec<usize>),
    /// Mark the tails of these directed edges.
    EdgeTails(Vec<usize>),
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Checks {
    pub connected: bool,
    pub stable: bool,
    pub mark_poles: bool,
}

impl Checks {
    pub const STRICT: Checks = Checks { connected: true, stable: true, mark_poles: false };
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlatSurface<S: Scalar> {
    triangles: Vec<[usize; 3]>,
    vectors: Vec<Complex<S>>,
    partner: Vec<usize>,
    sign: Vec<i8>,
    marked: Vec<bool>,
    triangle_of: Vec<usize>,
    slot_of: Vec<usize>,
    tail: Vec<usize>,
    /// Outgoing edges of each vertex in counterclockwise order, starting at the smallest id.
    rotation: Vec<Vec<usize>>,
    orders: Vec<i32>,
    components: usize,
}

impl<S: Scalar> FlatSurface<S> {
    /// Builds and validates a surface. `gluings` lists each pair once or twice
    /// (consistently); `marked` uses canonical vertex ids.
    pub fn new(
        triangles: Vec<[usize; 3]>,
        vectors: Vec<Complex<S>>,
        gluings: &[(usize, usize, i8)],
        marked: &[usize],
    ) -> Result<Self> {
        let n = vectors.len();
        let mut partner = vec![usize::MAX; n];
        let mut sign = vec![0i8; n];
        for &(a, b, s) in gluings {
            if a >= n || b >= n {
                return Err(QdError::Malformed(format!("gluing ({a}, {b}) refers to a missing edge")));
            }
            if s != 1 && s != -1 {
                return Err(QdError::GluingMismatch { edge: a, partner: b, reason: format!("sign {s}") });
            }
            if a == b {
                return Err(QdError::GluingMismatch { edge: a, partner: b, reason: "edge glued to itself".into() });
            }
            for (x, y) in [(a, b), (b, a)] {
                if partner[x] != usize::MAX && (partner[x] != y || sign[x] != s) {
                    return Err(QdError::GluingMismatch {
                        edge: x,
                        partner: y,
                        reason: format!("edge {x} is already glued to {}", partner[x]),
                    });
                }
                partner[x] = y;
                sign[x] = s;
            }
        }
        if let Some(e) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(QdError::GluingMismatch { edge: e, partner: e, reason: "edge has no partner".into() });
        }
        Self::assemble(triangles, vectors, partner, sign, Marks::Vertices(marked.to_vec()), Checks::STRICT)
    }

    pub(crate) fn assemble(
        triangles: Vec<[usize; 3]>,
        vectors: Vec<Complex<S>>,
        partner: Vec<usize>,
        sign: Vec<i8>,
        marks: Marks,
        checks: Checks,
    ) -> Result<Self> {
        let n = vectors.len();
        if triangles.is_empty() || n != 3 * triangles.len() {
            return Err(QdError::Malformed(format!(
                "{} triangles need exactly {} edge vectors, found {}",
                triangles.len(),
                3 * triangles.len(),
                n
            )));
        }
        let mut triangle_of = vec![usize::MAX; n];
        let mut slot_of = vec![0; n];
        for (t, tri) in triangles.iter().enumerate() {
            for (k, &e) in tri.iter().enumerate() {
                if e >= n {
                    return Err(QdError::Malformed(format!("triangle {t} refers to missing edge {e}")));
                }
                if triangle_of[e] != usize::MAX {
                    return Err(QdError::Malformed(format!("edge {e} appears in two triangles")));
                }
                triangle_of[e] = t;
                slot_of[e] = k;
            }
        }
        for e in 0..n {
            let p = partner[e];
            if p >= n || partner[p] != e || p == e {
                return Err(QdError::GluingMismatch { edge: e, partner: p, reason: "not an involution".into() });
            }
            if sign[e] != sign[p] || (sign[e] != 1 && sign[e] != -1) {
                return Err(QdError::GluingMismatch { edge: e, partner: p, reason: "sign mismatch".into() });
            }
        }
        for (t, tri) in triangles.iter().enumerate() {
            let [a, b, c] = tri.map(|e| &vectors[e]);
            let sum = a.clone() + b.clone() + c.clone();
            let scale = norm_f64(a) + norm_f64(b) + norm_f64(c);
            if !(sum.re.negligible(scale) && sum.im.negligible(scale)) {
                return Err(QdError::ClosureViolation { triangle: t });
            }
            let twice_area = cross(a, b);
            if twice_area.sign_tol(norm_f64(a) * norm_f64(b)) <= 0 {
                return Err(QdError::DegenerateTriangle { triangle: t });
            }
        }
        for e in 0..n {
            let p = partner[e];
            if p < e {
                continue;
            }
            let expect = if sign[e] == 1 { -vectors[e].clone() } else { vectors[e].clone() };
            let diff = vectors[p].clone() - expect;
            let scale = norm_f64(&vectors[e]);
            if !(diff.re.negligible(scale) && diff.im.negligible(scale)) {
                return Err(QdError::GluingMismatch {
                    edge: e,
                    partner: p,
                    reason: "edge vectors do not match under the gluing sign".into(),
                });
            }
        }

        let prev = |e: usize| triangles[triangle_of[e]][(slot_of[e] + 2) % 3];
        let mut tail = vec![usize::MAX; n];
        let mut rotation = Vec::new();
        for e0 in 0..n {
            if tail[e0] != usize::MAX {
                continue;
            }
            let v = rotation.len();
            let mut cycle = Vec::new();
            let mut e = e0;
            loop {
                tail[e] = v;
                cycle.push(e);
                e = partner[prev(e)];
                if e == e0 {
                    break;
                }
            }
            rotation.push(cycle);
        }

        let components = count_components(&triangles, &partner, &triangle_of);
        if checks.connected && components != 1 {
            return Err(QdError::Disconnected);
        }

        let mut orders = Vec::with_capacity(rotation.len());
        for (v, cycle) in rotation.iter().enumerate() {
            orders.push(vertex_order(cycle, &vectors, &sign, &triangles, &triangle_of, &slot_of, v)?);
        }

        let mut marked = vec![false; rotation.len()];
        match marks {
            Marks::Vertices(vs) => {
                for v in vs {
                    if v >= rotation.len() {
                        return Err(QdError::Malformed(format!("marked vertex {v} does not exist")));
                    }
                    marked[v] = true;
                }
            }
            Marks::EdgeTails(es) => {
                for e in es {
                    if e >= n {
                        return Err(QdError::Malformed(format!("edge {e} does not exist")));
                    }
                    marked[tail[e]] = true;
                }
            }
        }
        if checks.mark_poles {
            for (v, &o) in orders.iter().enumerate() {
                if o == -1 {
                    marked[v] = true;
                }
            }
        }
        if let Some(v) = (0..orders.len()).find(|&v| orders[v] == -1 && !marked[v]) {
            return Err(QdError::UnmarkedPole { vertex: v });
        }

        let surface = FlatSurface {
            triangles,
            vectors,
            partner,
            sign,
            marked,
            triangle_of,
            slot_of,
            tail,
            rotation,
            orders,
            components,
        };
        debug_assert_eq!(
            surface.orders.iter().map(|&o| o as i64).sum::<i64>(),
            -2 * surface.euler_characteristic()
        );
        if checks.stable {
            let value = -surface.euler_characteristic() + surface.marked_count() as i64;
            if value <= 0 {
                return Err(QdError::Unstable { value });
            }
        }
        Ok(surface)
    }

    /// Same combinatorics and marks with new edge vectors, revalidated.
    pub fn with_vectors<T: Scalar>(&self, vectors: Vec<Complex<T>>) -> Result<FlatSurface<T>> {
        FlatSurface::assemble(
            self.triangles.clone(),
            vectors,
            self.partner.clone(),
            self.sign.clone(),
            Marks::Vertices(self.marked_vertices()),
            Checks { connected: self.components == 1, stable: false, mark_poles: false },
        )
    }

    pub fn map_vectors<T: Scalar>(&self, f: impl Fn(&Complex<S>) -> Complex<T>) -> Result<FlatSurface<T>> {
        self.with_vectors(self.vectors.iter().map(f).collect())
    }

    pub fn mode(&self) -> ScalarMode {
        S::MODE
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Number of directed edges (twice the number of edges).
    pub fn edge_count(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Complex<S>] {
        &self.vectors
    }

    pub fn vector(&self, e: usize) -> &Complex<S> {
        &self.vectors[e]
    }

    pub fn partner(&self, e: usize) -> usize {
        self.partner[e]
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.sign[e]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn signs(&self) -> &[i8] {
        &self.sign
    }

    pub fn triangle_of(&self, e: usize) -> usize {
        self.triangle_of[e]
    }

    pub fn slot_of(&self, e: usize) -> usize {
        self.slot_of[e]
    }

    pub fn next(&self, e: usize) -> usize {
        self.triangles[self.triangle_of[e]][(self.slot_of[e] + 1) % 3]
    }

    pub fn prev(&self, e: usize) -> usize {
        self.triangles[self.triangle_of[e]][(self.slot_of[e] + 2) % 3]
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tail[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.tail[self.next(e)]
    }

    /// Directed edges whose id is smaller than their partner's, one per edge.
    pub fn edge_representatives(&self) -> Vec<usize> {
        (0..self.edge_count()).filter(|&e| e < self.partner[e]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    /// Outgoing edges at `v` in counterclockwise order.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn order(&self, v: usize) -> i32 {
        self.orders[v]
    }

    pub fn orders(&self) -> &[i32] {
        &self.orders
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.marked[v]
    }

    pub fn marked_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.marked[v]).collect()
    }

    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - (self.edge_count() / 2) as i64 + self.triangle_count() as i64
    }

    /// Genus of a connected surface.
    pub fn genus(&self) -> usize {
        debug_assert_eq!(self.components, 1);
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    pub fn triangle_area(&self, t: usize) -> S {
        let [a, b, _] = self.triangles[t];
        cross(&self.vectors[a], &self.vectors[b]) * S::from_ratio(1, 2)
    }

    pub fn area(&self) -> S {
        (0..self.triangle_count()).fold(S::zero(), |acc, t| acc + self.triangle_area(t))
    }

    /// Triangle colouring by ±1 compatible with the gluing signs, if one exists.
    pub fn square_root_colouring(&self) -> Option<Vec<i8>> {
        let nt = self.triangle_count();
        let mut colour = vec![0i8; nt];
        for start in 0..nt {
            if colour[start] != 0 {
                continue;
            }
            colour[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for &e in &self.triangles[t] {
                    let p = self.partner[e];
                    let u = self.triangle_of[p];
                    let want = colour[t] * self.sign[e];
                    if colour[u] == 0 {
                        colour[u] = want;
                        stack.push(u);
                    } else if colour[u] != want {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn epsilon(&self) -> i8 {
        if self.square_root_colouring().is_some() {
            1
        } else {
            -1
        }
    }

    pub fn symbol(&self) -> StratumSymbol {
        let mut n_zeros = BTreeMap::new();
        let mut n_poles = 0;
        let mut m_free = 0;
        for v in 0..self.vertex_count() {
            match self.orders[v] {
                -1 => n_poles += 1,
                0 => {
                    if self.marked[v] {
                        m_free += 1;
                    }
                }
                l => *n_zeros.entry(l as u32).or_insert(0) += 1,
            }
        }
        StratumSymbol { m_free, n_poles, n_zeros, epsilon: self.epsilon() }
    }

    pub fn stratum_dim(&self) -> Result<usize> {
        stratum_dim(&self.symbol(), self.genus())
    }

    /// Replaces triangle `t` by three triangles meeting at its centroid, which
    /// becomes a new unmarked regular vertex.
    pub fn subdivide_triangle(&self, t: usize) -> Result<FlatSurface<S>> {
        let [e1, e2, e3] = self.triangles[t];
        let z1 = self.vectors[e1].clone();
        let z2 = self.vectors[e2].clone();
        let third = S::from_ratio(1, 3);
        let sc = |z: Complex<S>| Complex::new(z.re * third.clone(), z.im * third.clone());
        let p0c = sc(z1.clone() + z1.clone() + z2.clone());
        let p1c = sc(z2.clone() - z1.clone());
        let p2c = sc(-(z1.clone() + z2.clone() + z2.clone()));
        let n = self.edge_count();
        let mut vectors = self.vectors.clone();
        let mut partner = self.partner.clone();
        let mut sign = self.sign.clone();
        // new ids: n + 2k is p_k -> c, n + 2k + 1 is c -> p_k
        for (k, z) in [p0c, p1c, p2c].into_iter().enumerate() {
            vectors.push(z.clone());
            vectors.push(-z);
            partner.push(n + 2 * k + 1);
            partner.push(n + 2 * k);
            sign.push(1);
            sign.push(1);
        }
        let mut triangles = self.triangles.clone();
        triangles[t] = [e1, n + 2, n + 1];
        triangles.push([e2, n + 4, n + 3]);
        triangles.push([e3, n, n + 5]);
        let marks = Marks::EdgeTails(self.marked_vertices().iter().map(|&v| self.rotation[v][0]).collect());
        FlatSurface::assemble(triangles, vectors, partner, sign, marks, Checks { stable: false, ..Checks::STRICT })
    }

    /// Edge ids that will carry the marks of this surface after a local move
    /// that leaves all edges except `moved` attached to the same vertices.
    pub(crate) fn marks_avoiding(&self, moved: &[usize]) -> Vec<usize> {
        self.marked_vertices()
            .iter()
            .map(|&v| {
                *self.rotation[v]
                    .iter()
                    .find(|e| !moved.contains(e))
                    .expect("a vertex keeps an incident edge under a flip")
            })
            .collect()
    }
}

fn count_components(triangles: &[[usize; 3]], partner: &[usize], triangle_of: &[usize]) -> usize {
    let nt = triangles.len();
    let mut seen = vec![false; nt];
    let mut count = 0;
    for s in 0..nt {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(t) = stack.pop() {
            for &e in &triangles[t] {
                let u = triangle_of[partner[e]];
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    count
}

/// Position class of `w` relative to the ray through `w0`: 0 on the ray,
/// 1 strictly left, 2 opposite, 3 strictly right.
fn ray_class<S: Scalar>(w0: &Complex<S>, w: &Complex<S>) -> Option<u8> {
    let scale = norm_f64(w0) * norm_f64(w);
    match cross(w0, w).sign_tol(scale) {
        1 => Some(1),
        -1 => Some(3),
        _ => match dot(w0, w).sign_tol(scale) {
            1 => Some(0),
            -1 => Some(2),
            _ => None,
        },
    }
}

/// Order of the vertex whose outgoing edges are `cycle` (CCW), from the exact
/// turning of the developed edge directions.
fn vertex_order<S: Scalar>(
    cycle: &[usize],
    vectors: &[Complex<S>],
    sign: &[i8],
    triangles: &[[usize; 3]],
    triangle_of: &[usize],
    slot_of: &[usize],
    v: usize,
) -> Result<i32> {
    // Position counter: even 2k means angle exactly kπ, odd 2k+1 means inside (kπ, (k+1)π).
    let w0 = vectors[cycle[0]].clone();
    let mut position: i64 = 0;
    let mut s: i8 = 1;
    for j in 0..cycle.len() {
        let e = cycle[j];
        let prev = triangles[triangle_of[e]][(slot_of[e] + 2) % 3];
        s *= sign[prev];
        let next = cycle[(j + 1) % cycle.len()];
        let w = if s == 1 { vectors[next].clone() } else { -vectors[next].clone() };
        let class = ray_class(&w0, &w).ok_or(QdError::NonIntegerOrder { vertex: v })? as i64;
        let candidates: &[i64] = if position % 2 == 0 { &[1] } else { &[0, 1, 2] };
        position = candidates
            .iter()
            .map(|d| position + d)
            .find(|p| p.rem_euclid(4) == class)
            .ok_or(QdError::NonIntegerOrder { vertex: v })?;
    }
    if position % 2 != 0 || position < 2 {
        return Err(QdError::NonIntegerOrder { vertex: v });
    }
    Ok((position / 2 - 2) as i32)
}

impl<S: Scalar> FlatSurface<S> {
    /// Total angle at `v` as a multiple of π.
    pub fn angle_over_pi(&self, v: usize) -> i32 {
        self.orders[v] + 2
    }
}
