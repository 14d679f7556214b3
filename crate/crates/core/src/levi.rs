//! Numerical and exact checks of the distance, Levi-form and symplectic identities.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::deformation::{teich_disk_point, DeformationFamily};
use crate::error::{QdError, Result};
use crate::homology::{BasisKind, HomologyData};
use crate::periods::{hermitian_pairing, wedge, PeriodVector};
use crate::report::{CaseReport, CheckReport};
use crate::scalar::{Scalar, CQ, Q};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FDConfig {
    pub h: f64,
    pub richardson_levels: u32,
    pub tolerance: f64,
}

impl Default for FDConfig {
    fn default() -> Self {
        FDConfig { h: 1e-4, richardson_levels: 1, tolerance: 1e-6 }
    }
}

impl FDConfig {
    pub fn with_tolerance(self, tolerance: f64) -> Self {
        FDConfig { tolerance, ..self }
    }
}

/// Richardson table over step sizes `h, h/2, h/4, ...` for an `O(h²)` estimator.
fn richardson(estimate: impl Fn(f64) -> Result<f64>, cfg: &FDConfig) -> Result<f64> {
    let mut prev: Vec<f64> = Vec::new();
    for i in 0..=cfg.richardson_levels as usize {
        let mut row = vec![estimate(cfg.h / f64::from(1u32 << i))?];
        for k in 1..=i {
            let f = 4f64.powi(k as i32);
            row.push(row[k - 1] + (row[k - 1] - prev[k - 1]) / (f - 1.0));
        }
        prev = row;
    }
    Ok(*prev.last().expect("at least one level"))
}

/// `∂f/∂λ = ½(∂ₓ − i∂ᵧ)` by central differences.
pub fn fd_dlambda(f: impl Fn(Complex<f64>) -> Result<f64>, at: Complex<f64>, cfg: &FDConfig) -> Result<Complex<f64>> {
    let dx = richardson(|h| Ok((f(at + h)? - f(at - h)?) / (2.0 * h)), cfg)?;
    let i = Complex::new(0.0, 1.0);
    let dy = richardson(|h| Ok((f(at + i * h)? - f(at - i * h)?) / (2.0 * h)), cfg)?;
    Ok(Complex::new(dx, -dy) * 0.5)
}

/// Five-point Laplacian `Δf = 4·∂∂̄f`.
pub fn fd_laplacian(f: impl Fn(Complex<f64>) -> Result<f64>, at: Complex<f64>, cfg: &FDConfig) -> Result<f64> {
    let i = Complex::new(0.0, 1.0);
    richardson(
        |h| {
            let c = f(at)?;
            Ok((f(at + h)? + f(at - h)? + f(at + i * h)? + f(at - i * h)? - 4.0 * c) / (h * h))
        },
        cfg,
    )
}

fn conj(z: &CQ) -> CQ {
    Complex::new(z.re.clone(), -z.im.clone())
}

fn abs2(z: &CQ) -> Q {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

fn iq() -> CQ {
    Complex::new(Q::zero(), Q::one())
}

fn rq(x: Q) -> CQ {
    Complex::new(x, Q::zero())
}

fn cf(z: &CQ) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

/// `x ∧ ȳ`.
fn wbar(h: &HomologyData, x: &PeriodVector<Q>, y: &PeriodVector<Q>) -> CQ {
    h.wedge_absolute(&x.coords, &y.conj().coords)
}

/// The wedge numbers of a family `u + λv₁ + λ̄v₂ (+ |λ|²b)`, with `t = ‖q₀‖ = tanh d₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingScenario {
    pub t: Q,
    /// `u∧ū`
    pub uu: CQ,
    /// `u∧v̄₁`
    pub uv1: CQ,
    /// `u∧v̄₂`
    pub uv2: CQ,
    /// `v₁∧v̄₁`
    pub v1v1: CQ,
    /// `v₁∧v̄₂`
    pub v1v2: CQ,
    /// `v₂∧v̄₂`
    pub v2v2: CQ,
    /// `v₁∧ū`
    pub v1u: CQ,
    /// `v₂∧ū`
    pub v2u: CQ,
    /// `b∧ū`
    pub bu: CQ,
    /// `u∧b̄`
    pub ub: CQ,
}

impl PairingScenario {
    pub fn from_vectors(
        h: &HomologyData,
        u: &PeriodVector<Q>,
        v1: &PeriodVector<Q>,
        v2: &PeriodVector<Q>,
        b: &PeriodVector<Q>,
    ) -> Result<Self> {
        let [u, v1, v2, b] = [u, v1, v2, b].map(|x| x.to_absolute(h));
        let (u, v1, v2, b) = (u?, v1?, v2?, b?);
        let uu = wbar(h, &u, &u);
        let t = -uu.im.clone() / Q::from_integer(4.into());
        Ok(PairingScenario {
            t,
            uv1: wbar(h, &u, &v1),
            uv2: wbar(h, &u, &v2),
            v1v1: wbar(h, &v1, &v1),
            v1v2: wbar(h, &v1, &v2),
            v2v2: wbar(h, &v2, &v2),
            v1u: wbar(h, &v1, &u),
            v2u: wbar(h, &v2, &u),
            bu: wbar(h, &b, &u),
            ub: wbar(h, &u, &b),
            uu,
        })
    }

    /// `cosh² d₀ = 1/(1 − t²)`.
    pub fn cosh2(&self) -> Q {
        Q::one() / (Q::one() - self.t.clone() * self.t.clone())
    }

    /// `sinh(2d₀) = 2t/(1 − t²)`.
    pub fn sinh2d(&self) -> Q {
        Q::from_integer(2.into()) * self.t.clone() * self.cosh2()
    }

    /// `√−1·u∧ū = 4t`.
    pub fn area_identity_holds(&self) -> bool {
        iq() * self.uu.clone() == rq(Q::from_integer(4.into()) * self.t.clone())
    }

    /// `N_λ = (√−1/4)(v₁∧ū + u∧v̄₂)`.
    pub fn n_lambda(&self) -> CQ {
        iq() * (self.v1u.clone() + self.uv2.clone()) / rq(Q::from_integer(4.into()))
    }

    /// `N_λλ̄ = (√−1/4)(v₁∧v̄₁ + v₂∧v̄₂ + b∧ū + u∧b̄)`.
    pub fn n_lambda_lambdabar(&self) -> CQ {
        iq() * (self.v1v1.clone() + self.v2v2.clone() + self.bu.clone() + self.ub.clone())
            / rq(Q::from_integer(4.into()))
    }

    /// `∂d/∂λ` at 0, with `d = tanh⁻¹ N`.
    pub fn first_variation(&self) -> CQ {
        self.n_lambda() * rq(self.cosh2())
    }

    /// `(√−1·cosh² d₀/4)·u∧v̄₂`.
    pub fn first_variation_reduced(&self) -> CQ {
        iq() * self.uv2.clone() * rq(self.cosh2() / Q::from_integer(4.into()))
    }

    /// `∂∂̄d` at 0 from the second-order expansion of the norm.
    pub fn levi_distance(&self) -> CQ {
        let c2 = self.cosh2();
        self.n_lambda_lambdabar() * rq(c2.clone())
            + rq(Q::from_integer(2.into()) * self.t.clone() * c2.clone() * c2 * abs2(&self.n_lambda()))
    }

    /// `(cosh³d₀ sinh d₀/8)|u∧v̄₂|² + (√−1 cosh²d₀/4)(v₂∧v̄₂ − v₁∧v̄₁)`.
    pub fn levi_distance_fiber(&self) -> CQ {
        let c2 = self.cosh2();
        let first = self.t.clone() * c2.clone() * c2.clone() / Q::from_integer(8.into()) * abs2(&self.uv2);
        rq(first) + iq() * (self.v2v2.clone() - self.v1v1.clone()) * rq(c2 / Q::from_integer(4.into()))
    }

    /// `∂∂̄ log N` at 0.
    pub fn levi_green(&self) -> CQ {
        let t = self.t.clone();
        self.n_lambda_lambdabar() / rq(t.clone()) - rq(abs2(&self.n_lambda()) / (t.clone() * t))
    }

    /// `(√−1/(4t))(v₂∧v̄₂ − v₁∧v̄₁) − |u∧v̄₂|²/(16t²)`.
    pub fn levi_green_fiber(&self) -> CQ {
        let t = self.t.clone();
        iq() * (self.v2v2.clone() - self.v1v1.clone()) / rq(Q::from_integer(4.into()) * t.clone())
            - rq(abs2(&self.uv2) / (Q::from_integer(16.into()) * t.clone() * t))
    }

    /// Whether `v₁∧ū = 0` and `u∧b̄ = −v₁∧v̄₁` hold.
    pub fn satisfies_fiber_relations(&self) -> bool {
        self.v1u.is_zero() && self.ub == -self.v1v1.clone()
    }
}

/// Tangent data `(∂v, ∂̄v)` of one tangent vector.
#[derive(Clone, Debug)]
pub struct TangentData {
    pub v1: PeriodVector<Q>,
    pub v2: PeriodVector<Q>,
}

/// Hermitian Levi form `L(a, b̄)` of the distance at `u`, from the fiber formula.
pub fn levi_hermitian(h: &HomologyData, u: &PeriodVector<Q>, a: &TangentData, b: &TangentData) -> Result<CQ> {
    let u = u.to_absolute(h)?;
    let uu = wbar(h, &u, &u);
    let t = -uu.im / Q::from_integer(4.into());
    let c2 = Q::one() / (Q::one() - t.clone() * t.clone());
    let (a1, a2, b1, b2) = (a.v1.to_absolute(h)?, a.v2.to_absolute(h)?, b.v1.to_absolute(h)?, b.v2.to_absolute(h)?);
    let ua = wbar(h, &u, &a2);
    let ub = h.wedge_absolute(&u.conj().coords, &b2.coords);
    let first = ua * ub * rq(t * c2.clone() * c2.clone() / Q::from_integer(8.into()));
    let second = iq() * (wbar(h, &b2, &a2) - wbar(h, &a1, &b1)) * rq(c2 / Q::from_integer(4.into()));
    Ok(first + second)
}

pub fn random_q<R: Rng>(rng: &mut R, n: i64, d: i64) -> Q {
    Q::new(rng.gen_range(-n..=n).into(), d.into())
}

pub fn random_cq<R: Rng>(rng: &mut R, n: i64, d: i64) -> CQ {
    Complex::new(random_q(rng, n, d), random_q(rng, n, d))
}

pub fn random_period<R: Rng>(rng: &mut R, h: &HomologyData, kind: BasisKind, n: i64, d: i64) -> PeriodVector<Q> {
    let coords = (0..h.rank(kind)).map(|_| random_cq(rng, n, d)).collect();
    PeriodVector::new(coords, kind, h)
}

/// Projects `v₁` onto `{v₁∧ū = 0}` and `b` onto `{b∧ū = −v₁∧v̄₁}` by adding multiples of `u`.
pub fn impose_fiber_relations(
    h: &HomologyData,
    u: &PeriodVector<Q>,
    v1: &PeriodVector<Q>,
    b: &PeriodVector<Q>,
) -> Result<(PeriodVector<Q>, PeriodVector<Q>)> {
    let (u, v1, b) = (u.to_absolute(h)?, v1.to_absolute(h)?, b.to_absolute(h)?);
    let uu = wbar(h, &u, &u);
    if uu.is_zero() {
        return Err(QdError::NormOutOfRange { norm: 0.0 });
    }
    let k1 = -wbar(h, &v1, &u) / uu.clone();
    let v1 = v1.add(&u.scale(&k1))?;
    let kb = (-wbar(h, &v1, &v1) - wbar(h, &b, &u)) / uu;
    let b = b.add(&u.scale(&kb))?;
    Ok((v1, b))
}

/// A random scenario satisfying the fiber relations at the base point `u`.
pub fn random_fiber_scenario<R: Rng>(rng: &mut R, h: &HomologyData, u: &PeriodVector<Q>) -> Result<PairingScenario> {
    let v1 = random_period(rng, h, BasisKind::Absolute, 12, 7);
    let v2 = random_period(rng, h, BasisKind::Absolute, 12, 7);
    let b = random_period(rng, h, BasisKind::Absolute, 12, 7);
    let (v1, b) = impose_fiber_relations(h, u, &v1, &b)?;
    PairingScenario::from_vectors(h, u, &v1, &v2, &b)
}

/// The scenario of the normal vector: `v₁ = 0`, `v₂ = u/sinh(2d₀)`.
pub fn normal_scenario<R: Rng>(rng: &mut R, h: &HomologyData, u: &PeriodVector<Q>) -> Result<PairingScenario> {
    let u = u.to_absolute(h)?;
    let zero = PeriodVector::zero(BasisKind::Absolute, h);
    let t = -wbar(h, &u, &u).im / Q::from_integer(4.into());
    let sinh2d = Q::from_integer(2.into()) * t.clone() / (Q::one() - t.clone() * t);
    let v2 = u.scale(&rq(Q::one() / sinh2d));
    let b = random_period(rng, h, BasisKind::Absolute, 12, 7);
    let (v1, b) = impose_fiber_relations(h, &u, &zero, &b)?;
    PairingScenario::from_vectors(h, &u, &v1, &v2, &b)
}

/// Outcome of the exact identity checks on one scenario.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioIdentities {
    pub area_identity: bool,
    pub fiber_relations: bool,
    pub levi_distance: bool,
    pub levi_green: bool,
    pub first_variation: bool,
}

impl ScenarioIdentities {
    pub fn all(&self) -> bool {
        self.area_identity && self.fiber_relations && self.levi_distance && self.levi_green && self.first_variation
    }
}

pub fn check_scenario(sc: &PairingScenario) -> ScenarioIdentities {
    ScenarioIdentities {
        area_identity: sc.area_identity_holds(),
        fiber_relations: sc.satisfies_fiber_relations(),
        levi_distance: sc.levi_distance() == sc.levi_distance_fiber() && sc.levi_distance().im.is_zero(),
        levi_green: sc.levi_green() == sc.levi_green_fiber() && sc.levi_green().im.is_zero(),
        first_variation: sc.first_variation() == sc.first_variation_reduced(),
    }
}

/// Degree-two expansion of `(√−1/4)·wedge(U, Ū)` in `(λ, λ̄)` from the wedge numbers.
pub fn norm_expansion(sc: &PairingScenario, lambda: &CQ) -> Q {
    let lb = conj(lambda);
    let l2 = lambda.clone() * lambda.clone();
    let ll = lambda.clone() * lb.clone();
    let v2v1 = -conj(&sc.v1v2);
    let w = sc.uu.clone()
        + lb.clone() * sc.uv1.clone()
        + lambda.clone() * sc.uv2.clone()
        + lambda.clone() * sc.v1u.clone()
        + lb.clone() * sc.v2u.clone()
        + ll * (sc.v1v1.clone() + sc.v2v2.clone())
        + l2 * sc.v1v2.clone()
        + lb.clone() * lb * v2v1;
    -w.im / Q::from_integer(4.into())
}

impl DeformationFamily {
    pub fn scenario(&self) -> Result<PairingScenario> {
        let zero = PeriodVector::zero(BasisKind::Absolute, self.homology());
        PairingScenario::from_vectors(self.homology(), &self.u, &self.v1, &self.v2, &zero)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FirstVariation {
    pub report: CheckReport,
    pub fd: [f64; 2],
    pub formula: [f64; 2],
    pub reduced: [f64; 2],
    /// Relative deviation of the reduced formula from the finite difference.
    pub reduced_error: f64,
}

fn distance_fn(fam: &DeformationFamily) -> impl Fn(Complex<f64>) -> Result<f64> + '_ {
    move |l| {
        let n = fam.norm(l)?;
        if n >= 1.0 {
            return Err(QdError::NormOutOfRange { norm: n });
        }
        Ok(n.atanh())
    }
}

/// Finite-difference `∂/∂λ tanh⁻¹‖q_λ‖` against the wedge formula.
pub fn first_variation_check(fam: &DeformationFamily, cfg: &FDConfig) -> Result<FirstVariation> {
    let sc = fam.scenario()?;
    check_base_norm(&sc)?;
    let fd = fd_dlambda(distance_fn(fam), Complex::new(0.0, 0.0), cfg)?;
    let formula = cf(&sc.first_variation());
    let reduced = cf(&sc.first_variation_reduced());
    let floor = 1e-3;
    let err = (fd - formula).norm() / formula.norm().max(floor);
    let mut cases = vec![CaseReport {
        label: "d_λ".into(),
        computed: fd.norm(),
        expected: formula.norm(),
        abs_error: (fd - formula).norm(),
        rel_error: err,
        passed: err <= cfg.tolerance,
        note: None,
    }];
    let reduced_error = (fd - reduced).norm() / reduced.norm().max(floor);
    if sc.v1u.is_zero() {
        cases.push(CaseReport {
            label: "d_λ reduced".into(),
            computed: fd.norm(),
            expected: reduced.norm(),
            abs_error: (fd - reduced).norm(),
            rel_error: reduced_error,
            passed: reduced_error <= cfg.tolerance,
            note: None,
        });
    }
    Ok(FirstVariation {
        report: CheckReport::new("first-variation", cfg.tolerance, cases),
        fd: [fd.re, fd.im],
        formula: [formula.re, formula.im],
        reduced: [reduced.re, reduced.im],
        reduced_error,
    })
}

fn check_base_norm(sc: &PairingScenario) -> Result<()> {
    if !(sc.t > Q::zero() && sc.t < Q::one()) {
        return Err(QdError::NormOutOfRange { norm: sc.t.to_f64() });
    }
    Ok(())
}

/// Finite-difference Laplacian of `tanh⁻¹‖q_λ‖` against the closed form.
pub fn laplacian_check_linear(fam: &DeformationFamily, cfg: &FDConfig) -> Result<CheckReport> {
    let sc = fam.scenario()?;
    check_base_norm(&sc)?;
    let fd = fd_laplacian(distance_fn(fam), Complex::new(0.0, 0.0), cfg)?;
    let expected = 4.0 * sc.levi_distance().re.to_f64();
    let case = CaseReport::relative("Δd", fd, expected, 1e-3, cfg.tolerance);
    Ok(CheckReport::new("laplacian", cfg.tolerance, vec![case]))
}

/// The 5×5 grid `{−0.45, −0.225, 0, 0.225, 0.45}²`.
pub fn default_disk_grid() -> Vec<Complex<f64>> {
    let xs = [-0.45, -0.225, 0.0, 0.225, 0.45];
    xs.iter().flat_map(|&y| xs.iter().map(move |&x| Complex::new(x, y))).collect()
}

fn log_tanh_disk<S: Scalar>(s: &crate::surface::FlatSurface<S>, d0: f64) -> impl Fn(Complex<f64>) -> Result<f64> + '_ {
    move |l| {
        let p = teich_disk_point(s, d0, l)?;
        match p.surface {
            Some(x) => Ok(x.area().ln()),
            None => Err(QdError::SingularPoint { lambda: format!("{}{:+}i", l.re, l.im) }),
        }
    }
}

/// Laplacian of `λ ↦ log tanh d(λ)` along the Teichmüller disk; vanishes identically.
pub fn disk_harmonicity_check<S: Scalar>(
    s: &crate::surface::FlatSurface<S>,
    d0: f64,
    grid: &[Complex<f64>],
    cfg: &FDConfig,
) -> Result<CheckReport> {
    let centre = Complex::new(-d0.tanh(), 0.0);
    let reach = cfg.h * 10.0;
    if let Some(l) = grid.iter().find(|l| (**l - centre).norm() <= reach) {
        return Err(QdError::SingularPoint { lambda: format!("{}{:+}i", l.re, l.im) });
    }
    let f = log_tanh_disk(s, d0);
    let cases = grid
        .iter()
        .map(|&l| {
            let lap = fd_laplacian(&f, l, cfg)?;
            Ok(CaseReport::absolute(format!("d0={d0} λ={}{:+}i", l.re, l.im), lap, 0.0, cfg.tolerance))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::new("disk", cfg.tolerance, cases))
}

/// Laplacian of `(log tanh d)²` at `λ = 0`, which is strictly positive.
pub fn disk_negative_control<S: Scalar>(s: &crate::surface::FlatSurface<S>, d0: f64, cfg: &FDConfig) -> Result<f64> {
    let f = log_tanh_disk(s, d0);
    fd_laplacian(|l| f(l).map(|x| x * x), Complex::new(0.0, 0.0), cfg)
}

/// `log tanh s`, accurate for large `s`.
pub fn log_tanh(s: f64) -> f64 {
    let e = (-2.0 * s).exp();
    (-e).ln_1p() - e.ln_1p()
}

#[derive(Clone, Debug, Serialize)]
pub struct DemaillyReport {
    pub target: f64,
    pub samples: Vec<DemaillySample>,
    pub monotone: bool,
    pub final_gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemaillySample {
    pub t: f64,
    pub value: f64,
    pub gap: f64,
}

/// `|log(log tanh(t − d_x) / log tanh(t − d_y))|` along the ray, against `2(d_y − d_x)`.
pub fn demailly_ratio(d_x: f64, d_y: f64, t_values: &[f64]) -> DemaillyReport {
    let target = 2.0 * (d_y - d_x);
    let samples: Vec<DemaillySample> = t_values
        .iter()
        .map(|&t| {
            let value = (log_tanh(t - d_x) / log_tanh(t - d_y)).ln().abs();
            DemaillySample { t, value, gap: (value - target).abs() }
        })
        .collect();
    let monotone = samples.windows(2).all(|w| w[1].gap <= w[0].gap);
    let final_gap = samples.last().map_or(0.0, |s| s.gap);
    DemaillyReport { target, samples, monotone, final_gap }
}

/// Both evaluations of the symplectic pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct ThurstonValue<S: Scalar> {
    /// `(1/8)·wedge(Re ψ₁, Re ψ₂)`.
    pub real_route: S,
    /// `(1/4)·Im h(ψ₁, ψ₂)` with `h(x, y) = (√−1/4)·wedge(x, ȳ)`.
    pub hermitian_route: S,
}

impl<S: Scalar> ThurstonValue<S> {
    pub fn agree(&self) -> bool {
        self.real_route == self.hermitian_route
    }
}

pub fn thurston_pairing<S: Scalar>(
    h: &HomologyData,
    psi1: &PeriodVector<S>,
    psi2: &PeriodVector<S>,
) -> Result<ThurstonValue<S>> {
    let w = wedge(h, &psi1.real_part(), &psi2.real_part())?;
    let herm = hermitian_pairing(h, psi1, psi2)?;
    Ok(ThurstonValue { real_route: w.re * S::from_ratio(1, 8), hermitian_route: herm.im * S::from_ratio(1, 4) })
}

/// A positive Lagrangian subspace of the absolute anti-invariant periods containing `u`:
/// `e_k = a_k + √−1·τ_k·b_k` for a rational symplectic basis `(a_k, b_k)` with
/// `a₁ = Re u`, `τ₁·b₁ = Im u`, and `τ_k = 1` otherwise.
#[derive(Clone, Debug)]
pub struct HodgeFrame {
    pub basis: Vec<PeriodVector<Q>>,
}

fn wq(h: &HomologyData, x: &[Q], y: &[Q]) -> Q {
    let g = h.wedge_matrix();
    let mut acc = Q::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            let c = g.get(i, j);
            if !c.is_zero() && !yj.is_zero() {
                acc += xi * c * yj;
            }
        }
    }
    acc
}

fn axpy(y: &mut [Q], k: &Q, x: &[Q]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += k * xi;
    }
}

impl HodgeFrame {
    pub fn new(h: &HomologyData, u: &PeriodVector<Q>) -> Result<Self> {
        let u = u.to_absolute(h)?;
        let a: Vec<Q> = u.coords.iter().map(|z| z.re.clone()).collect();
        let b: Vec<Q> = u.coords.iter().map(|z| z.im.clone()).collect();
        let tau = wq(h, &a, &b);
        if !tau.is_positive() {
            return Err(QdError::NormOutOfRange { norm: tau.to_f64() });
        }
        let n = a.len();
        let b1: Vec<Q> = b.iter().map(|x| x / &tau).collect();
        let mut pairs = vec![(a, b1, tau)];
        let project = |x: &mut Vec<Q>, pairs: &[(Vec<Q>, Vec<Q>, Q)]| {
            for (ak, bk, _) in pairs {
                let alpha = -wq(h, x, bk);
                let beta = wq(h, x, ak);
                axpy(x, &alpha, ak);
                axpy(x, &beta, bk);
            }
        };
        let mut candidates: Vec<Vec<Q>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
        while 2 * pairs.len() < n {
            for c in candidates.iter_mut() {
                project(c, &pairs);
            }
            candidates.retain(|c| c.iter().any(|x| !x.is_zero()));
            let x = candidates.remove(0);
            let (pos, w) = candidates
                .iter()
                .enumerate()
                .map(|(i, y)| (i, wq(h, &x, y)))
                .find(|(_, w)| !w.is_zero())
                .ok_or(QdError::SingularJ)?;
            let y: Vec<Q> = candidates.remove(pos).iter().map(|v| v / &w).collect();
            pairs.push((x, y, Q::one()));
        }
        let basis = pairs
            .into_iter()
            .map(|(ak, bk, t)| {
                let coords = ak.into_iter().zip(bk).map(|(x, y)| Complex::new(x, y * &t)).collect();
                PeriodVector::new(coords, BasisKind::Absolute, h)
            })
            .collect();
        Ok(HodgeFrame { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, coeffs: &[CQ]) -> PeriodVector<Q> {
        let mut acc = self.basis[0].scale(&coeffs[0]);
        for (e, c) in self.basis.iter().zip(coeffs).skip(1) {
            acc = acc.add(&e.scale(c)).expect("frame vectors share a basis");
        }
        acc
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R, n: i64, d: i64) -> PeriodVector<Q> {
        let coeffs: Vec<CQ> = (0..self.dim()).map(|_| random_cq(rng, n, d)).collect();
        self.combine(&coeffs)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeviNonneg {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub satisfied: bool,
    pub label: &'static str,
}

pub const CERTIFIED_LABEL: &str = "consistent with family data";
pub const UNCERTIFIED_LABEL: &str = "not certified as family data";

/// Both sides of `ω_Th(ψ₁, ψ₂) ≥ |u∧∂̄v|²/(16‖q₀‖)`.
pub fn levi_nonneg_quantity(
    h: &HomologyData,
    u: &PeriodVector<Q>,
    psi1: &PeriodVector<Q>,
    psi2: &PeriodVector<Q>,
    v2bar_wedge: &CQ,
) -> Result<LeviNonneg> {
    let lhs = thurston_pairing(h, psi1, psi2)?.real_route;
    let ua = u.to_absolute(h)?;
    let norm = -wbar(h, &ua, &ua).im / Q::from_integer(4.into());
    let rhs = if abs2(v2bar_wedge).is_zero() {
        Q::zero()
    } else if norm.is_positive() {
        abs2(v2bar_wedge) / (Q::from_integer(16.into()) * norm)
    } else {
        return Err(QdError::NormOutOfRange { norm: norm.to_f64() });
    };
    let satisfied = lhs >= rhs;
    Ok(LeviNonneg {
        lhs: lhs.to_f64(),
        rhs: rhs.to_f64(),
        gap: (lhs - rhs).to_f64(),
        satisfied,
        label: if satisfied { CERTIFIED_LABEL } else { UNCERTIFIED_LABEL },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_improves_central_difference() {
        let cfg = FDConfig { h: 1e-2, richardson_levels: 1, tolerance: 0.0 };
        let d = fd_dlambda(|z| Ok(z.re.exp() * z.im.cos()), Complex::new(0.3, 0.2), &cfg).unwrap();
        let exact = Complex::new(0.3f64.exp() * 0.2f64.cos(), 0.3f64.exp() * 0.2f64.sin()) * 0.5;
        assert!((d - exact).norm() < 1e-9);
        let lap = fd_laplacian(|z| Ok(z.re * z.re - z.im * z.im), Complex::new(0.1, 0.4), &cfg);
        assert!(lap.unwrap().abs() < 1e-8);
    }

    #[test]
    fn log_tanh_matches_naive() {
        for s in [0.1, 1.0, 3.0] {
            assert!((log_tanh(s) - s.tanh().ln()).abs() < 1e-14);
        }
        assert!(log_tanh(30.0) < 0.0);
    }

    #[test]
    fn demailly_examples() {
        let r = demailly_ratio(0.3, 0.7, &[4.0, 6.0, 8.0, 10.0]);
        assert!(r.monotone);
        assert!((r.samples[3].value - 0.8).abs() < 1e-3);
        let z = demailly_ratio(0.5, 0.5, &[4.0, 10.0]);
        assert!(z.samples.iter().all(|s| s.value == 0.0));
    }
}
