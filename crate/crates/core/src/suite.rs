//! The acceptance suite over the bundled surfaces.

use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bundled::{normalize, Bundled};
use crate::cover::build_cover;
use crate::deformation::{affine_deform, geodesic_flow, Base, DeformationFamily};
use crate::delaunay::{delaunayize, is_delaunay};
use crate::error::{QdError, Result};
use crate::homology::{homology_data, BasisKind, HomologyData};
use crate::levi::{
    check_scenario, default_disk_grid, demailly_ratio, disk_harmonicity_check, disk_negative_control,
    first_variation_check, laplacian_check_linear, normal_scenario, random_fiber_scenario, random_period,
    thurston_pairing, FDConfig, HodgeFrame,
};
use crate::periods::{period_map, wedge, PeriodVector};
use crate::random::{random_flips, random_surface};
use crate::report::{CaseReport, CheckReport};
use crate::scalar::{Scalar, CQ, Q};
use crate::strata::SymbolPoset;
use crate::surface::{FlatSurface, StratumSymbol};

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides every floating tolerance when set.
    pub tolerance: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 2024, tolerance: None }
    }
}

impl SuiteConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn rng(&self, criterion: u64, item: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (criterion << 48) ^ item.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "dimension identity"),
    (2, "cover bookkeeping"),
    (3, "area identity"),
    (4, "cup-product oracle"),
    (5, "geodesic flow"),
    (6, "period additivity"),
    (7, "first variation"),
    (8, "disk harmonicity"),
    (9, "Demailly limit"),
    (10, "Thurston pairing"),
    (11, "Levi-form algebra"),
    (12, "Delaunay"),
    (13, "stratum poset"),
];

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: QdError) -> String {
    e.to_string()
}

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> CriterionResult {
    let (_, name) = CRITERIA.iter().find(|(i, _)| *i == id).copied().expect("criterion ids run from 1 to 13");
    let start = Instant::now();
    let outcome = match id {
        1 => dimension_identity(),
        2 => cover_bookkeeping(),
        3 => area_identity(cfg),
        4 => cup_oracle(cfg),
        5 => flow(cfg),
        6 => additivity(cfg),
        7 => first_variation(cfg),
        8 => disk(cfg),
        9 => demailly(cfg),
        10 => thurston(cfg),
        11 => levi_algebra(cfg),
        12 => delaunay(cfg),
        13 => poset(),
        _ => unreachable!(),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let criteria: Vec<CriterionResult> = CRITERIA.iter().map(|(id, _)| run_criterion(*id, cfg)).collect();
    SuiteReport { seed: cfg.seed, passed: criteria.iter().all(|c| c.passed), criteria }
}

fn homology_of(s: &FlatSurface<Q>) -> std::result::Result<HomologyData, String> {
    homology_data(&build_cover(s)).map_err(err)
}

fn dimension_identity() -> Outcome {
    let start = Instant::now();
    let mut ranks = Vec::new();
    for b in Bundled::ALL {
        let s = b.surface();
        let h = homology_of(&s)?;
        let rank = h.rank(BasisKind::Relative);
        let dim = s.stratum_dim().map_err(err)?;
        ensure(rank == dim && rank == b.expected_rank(), || {
            format!("{}: rank {rank}, dimension {dim}, expected {}", b.name(), b.expected_rank())
        })?;
        ranks.push(format!("{}={rank}", b.name()));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("{} in {secs:.2} s", ranks.join(", ")))
}

fn cover_bookkeeping() -> Outcome {
    for b in Bundled::ALL {
        let s = b.surface();
        let c = build_cover(&s);
        let lhs = c.euler_characteristic();
        let rhs = 2 * s.euler_characteristic() - c.sigma().sigma_o.len() as i64;
        ensure(lhs == rhs, || format!("{}: χ(cover) = {lhs}, 2χ − |Σ_o| = {rhs}", b.name()))?;
    }
    let s = Bundled::GenericGenus2.surface();
    let c = build_cover(&s);
    let expected = 2 * s.genus() - 1 + c.sigma().sigma_o.len() / 2;
    ensure(c.genus() == Some(5) && expected == 5, || format!("genus-2 cover has genus {:?}", c.genus()))?;
    Ok("χ identity on 4 surfaces; genus-2 cover is connected of genus 5".into())
}

fn area_holds(s: &FlatSurface<Q>) -> std::result::Result<bool, String> {
    let c = build_cover(s);
    let h = homology_data(&c).map_err(err)?;
    let u = period_map(&c, &h).map_err(err)?;
    let w = wedge(&h, &u, &u.conj()).map_err(err)?;
    Ok(w.re.is_zero() && -w.im == Q::from_integer(4.into()) * s.area())
}

fn area_identity(cfg: &SuiteConfig) -> Outcome {
    for b in Bundled::ALL {
        ensure(area_holds(&b.surface())?, || format!("{} violates √−1·u∧ū = 4·area", b.name()))?;
    }
    let failures: Vec<String> = (0..100u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = cfg.rng(3, i);
            let b = Bundled::ALL[(i % 4) as usize];
            let s = random_flips(&mut rng, &b.surface(), 1 + (i as usize % 7));
            match area_holds(&s) {
                Ok(true) => None,
                Ok(false) => Some(format!("variant {i} of {}", b.name())),
                Err(e) => Some(format!("variant {i}: {e}")),
            }
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("exact on 4 bundled surfaces and 100 flip-perturbed variants".into())
}

fn random_real_cochain(rng: &mut ChaCha8Rng, h: &HomologyData) -> std::result::Result<(Vec<Q>, Vec<Q>), String> {
    let f: Vec<CQ> =
        (0..h.rank(BasisKind::Absolute)).map(|_| Complex::new(crate::levi::random_q(rng, 20, 7), Q::zero())).collect();
    let a = h.lift(BasisKind::Absolute, &f).map_err(err)?;
    Ok((f.into_iter().map(|z| z.re).collect(), a.into_iter().map(|z| z.re).collect()))
}

fn cup_oracle(cfg: &SuiteConfig) -> Outcome {
    let per_surface = 100u64;
    for (bi, b) in Bundled::ALL.iter().enumerate() {
        let h = homology_of(&b.surface())?;
        let bad: Vec<u64> = (0..per_surface)
            .into_par_iter()
            .filter(|&i| {
                let mut rng = cfg.rng(4, (bi as u64) << 32 | i);
                let (Ok((x, a)), Ok((y, c))) = (random_real_cochain(&mut rng, &h), random_real_cochain(&mut rng, &h))
                else {
                    return true;
                };
                let (ea, ec) = (h.expand_cochain(&a), h.expand_cochain(&c));
                if !h.is_cocycle(&ea) || !h.is_cocycle(&ec) {
                    return true;
                }
                let xc: Vec<CQ> = x.iter().map(|v| Complex::new(v.clone(), Q::zero())).collect();
                let yc: Vec<CQ> = y.iter().map(|v| Complex::new(v.clone(), Q::zero())).collect();
                h.wedge_absolute(&xc, &yc).re != h.cup_product(&ea, &ec)
            })
            .collect();
        ensure(bad.is_empty(), || format!("{}: {} of {per_surface} pairs disagree", b.name(), bad.len()))?;
    }
    Ok(format!("{per_surface} random cocycle pairs per surface, exact"))
}

fn flow(cfg: &SuiteConfig) -> Outcome {
    let tol = cfg.tol(1e-12);
    let mut surfaces: Vec<(String, FlatSurface<Q>)> =
        Bundled::ALL.iter().map(|b| (b.name().to_string(), b.surface())).collect();
    for i in 0..8 {
        let mut rng = cfg.rng(5, i);
        surfaces.push((format!("random {i}"), random_surface(&mut rng)));
    }
    let mut worst = 0.0f64;
    for (name, s) in &surfaces {
        let c = build_cover(s);
        let h = homology_data(&c).map_err(err)?;
        let u = period_map(&c, &h).map_err(err)?;
        let a0 = s.area().to_f64();
        for t in [0.1, 1.0, 5.0] {
            let f = geodesic_flow(s, t);
            let k = (-2.0 * t).exp();
            let rel = (f.area() - k * a0).abs() / (k * a0);
            worst = worst.max(rel);
            ensure(rel <= tol, || format!("{name}, t = {t}: area error {rel:e}"))?;
            ensure(f.symbol() == s.symbol(), || format!("{name}, t = {t}: symbol changed"))?;
            let p = period_map(&build_cover(&f), &h).map_err(err)?;
            for (x, y) in p.coords.iter().zip(&u.coords) {
                let (re, im) = (y.re.to_f64(), y.im.to_f64());
                let e = ((x.re - re).abs() / re.abs().max(1.0)).max((x.im - k * im).abs() / (k * im).abs().max(k));
                worst = worst.max(e);
                ensure(e <= tol, || format!("{name}, t = {t}: period error {e:e}"))?;
            }
        }
    }
    Ok(format!("{} surfaces, t ∈ {{0.1, 1, 5}}, worst relative error {worst:.1e}", surfaces.len()))
}

fn additivity(cfg: &SuiteConfig) -> Outcome {
    let per_surface = 100u64;
    let mut halvings = 0usize;
    for (bi, b) in Bundled::ALL.iter().enumerate() {
        let base = Base::new(b.surface()).map_err(err)?;
        let u = base.periods();
        let results: Vec<std::result::Result<usize, String>> = (0..per_surface)
            .into_par_iter()
            .map(|i| {
                let mut rng = cfg.rng(6, (bi as u64) << 32 | i);
                let mut v = random_period(&mut rng, &base.homology, BasisKind::Relative, 10, 100);
                let half = Complex::new(Q::new(1.into(), 2.into()), Q::zero());
                for steps in 0..40 {
                    match affine_deform(&base.cover, &base.homology, &v) {
                        Ok(out) => {
                            let p = period_map(&out, &base.homology).map_err(err)?;
                            return if p == u.add(&v).map_err(err)? {
                                Ok(steps)
                            } else {
                                Err(format!("{} sample {i}: periods not additive", b.name()))
                            };
                        }
                        Err(QdError::TriangleFlip { .. }) => v = v.scale(&half),
                        Err(e) => return Err(err(e)),
                    }
                }
                Err(format!("{} sample {i}: no valid step", b.name()))
            })
            .collect();
        for r in results {
            halvings += r?;
        }
        let minus_u = u.scale(&Complex::new(-Q::one(), Q::zero()));
        let flip = affine_deform(&base.cover, &base.homology, &minus_u);
        ensure(matches!(flip, Err(QdError::TriangleFlip { .. })), || {
            format!("{}: v = −u did not raise TriangleFlip", b.name())
        })?;
    }
    Ok(format!("{per_surface} random v per surface exact ({halvings} step halvings); v = −u flips"))
}

fn linear_families(
    cfg: &SuiteConfig,
    criterion: u64,
    key: u64,
    s: &FlatSurface<Q>,
    n: u64,
) -> Result<Vec<DeformationFamily>> {
    let base = Arc::new(Base::new(s.clone())?);
    (0..n)
        .map(|i| {
            let mut rng = cfg.rng(criterion, key << 32 | i);
            let v1 = random_period(&mut rng, &base.homology, BasisKind::Relative, 10, 40);
            let v2 = random_period(&mut rng, &base.homology, BasisKind::Relative, 10, 40);
            DeformationFamily::linear(base.clone(), v1, v2)
        })
        .collect()
}

fn families(
    cfg: &SuiteConfig,
    criterion: u64,
    b: Bundled,
    n: u64,
) -> std::result::Result<Vec<DeformationFamily>, String> {
    linear_families(cfg, criterion, b as u64, &b.normalized(), n).map_err(err)
}

fn first_variation(cfg: &SuiteConfig) -> Outcome {
    let fd = FDConfig::default().with_tolerance(cfg.tol(1e-6));
    let mut worst = 0.0f64;
    let mut weakest_control = f64::INFINITY;
    let mut controls = 0;
    for b in Bundled::ALL {
        let fams = families(cfg, 7, b, 50)?;
        let results: Vec<_> =
            fams.par_iter().map(|f| Ok::<_, QdError>((first_variation_check(f, &fd)?, f.scenario()?))).collect();
        for (i, r) in results.into_iter().enumerate() {
            let (r, sc) = r.map_err(err)?;
            worst = worst.max(r.report.max_error);
            ensure(r.report.passed, || format!("{} family {i}: error {:e}", b.name(), r.report.max_error))?;
            if sc.v1u.is_zero() {
                ensure(r.reduced_error <= fd.tolerance, || {
                    format!("{} family {i}: v₁∧ū = 0 but reduced form off by {:e}", b.name(), r.reduced_error)
                })?;
                continue;
            }
            controls += 1;
            weakest_control = weakest_control.min(r.reduced_error);
            ensure(r.reduced_error >= 10.0 * fd.tolerance, || {
                format!("{} family {i}: reduced form only off by {:e}", b.name(), r.reduced_error)
            })?;
        }
    }
    ensure(controls > 0, || "no family with v₁∧ū ≠ 0".into())?;
    Ok(format!(
        "200 families, worst relative error {worst:.1e}; reduced form off by ≥ {weakest_control:.1e} on {controls} controls"
    ))
}

fn disk(cfg: &SuiteConfig) -> Outcome {
    let fd = FDConfig::default().with_tolerance(cfg.tol(1e-5));
    let grid = default_disk_grid();
    let mut worst = 0.0f64;
    for b in Bundled::ALL {
        let s = b.normalized();
        for d0 in [0.3, 0.7, 1.2] {
            let r = disk_harmonicity_check(&s, d0, &grid, &fd).map_err(err)?;
            worst = worst.max(r.max_error);
            ensure(r.passed, || format!("{}, d0 = {d0}: |Δ| up to {:e}", b.name(), r.max_error))?;
        }
        let control = disk_negative_control(&s, 0.7, &fd).map_err(err)?;
        ensure(control > 0.0, || format!("{}: negative control Δ = {control:e}", b.name()))?;
    }
    Ok(format!("4 surfaces × 3 disks × 25 points, max |Δ| {worst:.1e}; control positive"))
}

fn demailly(cfg: &SuiteConfig) -> Outcome {
    let tol = cfg.tol(1e-3);
    let mut parts = Vec::new();
    for (dx, dy) in [(0.3, 0.7), (0.1, 1.0)] {
        let r = demailly_ratio(dx, dy, &[4.0, 6.0, 8.0, 10.0]);
        ensure(r.final_gap <= tol, || format!("({dx}, {dy}): gap {:e} at t = 10", r.final_gap))?;
        ensure(r.monotone, || format!("({dx}, {dy}): gap not monotone"))?;
        parts.push(format!("({dx}, {dy}) gap {:.1e}", r.final_gap));
    }
    Ok(parts.join(", "))
}

fn thurston(cfg: &SuiteConfig) -> Outcome {
    let mut count = 0;
    for b in Bundled::ALL {
        let base = Base::new(b.normalized()).map_err(err)?;
        let h = &base.homology;
        let frame = HodgeFrame::new(h, &base.periods()).map_err(err)?;
        let bad: Vec<String> = (0..100u64)
            .into_par_iter()
            .filter_map(|i| {
                let mut rng = cfg.rng(10, (b as u64) << 32 | i);
                let p = frame.random_element(&mut rng, 9, 4);
                let q = frame.random_element(&mut rng, 9, 4);
                let v = thurston_pairing(h, &p, &q).ok()?;
                let x = random_period(&mut rng, h, BasisKind::Absolute, 9, 4);
                let y = random_period(&mut rng, h, BasisKind::Absolute, 9, 4);
                let z = random_period(&mut rng, h, BasisKind::Absolute, 9, 4);
                let k = crate::levi::random_q(&mut rng, 9, 4);
                let kc = Complex::new(k.clone(), Q::zero());
                let tp = |a: &PeriodVector<Q>, b: &PeriodVector<Q>| thurston_pairing(h, a, b).map(|v| v.real_route);
                let lhs = tp(&x.add(&y.scale(&kc)).ok()?, &z).ok()?;
                let rhs = tp(&x, &z).ok()? + k * tp(&y, &z).ok()?;
                let anti = tp(&x, &y).ok()? == -tp(&y, &x).ok()?;
                let herm_anti = thurston_pairing(h, &q, &p).ok()?.hermitian_route == -v.hermitian_route.clone();
                (!(v.agree() && lhs == rhs && anti && herm_anti)).then(|| format!("{} pair {i}", b.name()))
            })
            .collect();
        ensure(bad.is_empty(), || bad.join("; "))?;
        count += 100;
    }
    Ok(format!("{count} Lagrangian pairs: both routes agree exactly; bilinear and antisymmetric"))
}

fn levi_algebra(cfg: &SuiteConfig) -> Outcome {
    let mut total = 0;
    for b in Bundled::ALL {
        let base = Base::new(b.normalized()).map_err(err)?;
        let h = &base.homology;
        let u = base.periods_absolute();
        let bad: Vec<String> = (0..250u64)
            .into_par_iter()
            .filter_map(|i| {
                let mut rng = cfg.rng(11, (b as u64) << 32 | i);
                let sc = match random_fiber_scenario(&mut rng, h, &u) {
                    Ok(sc) => sc,
                    Err(e) => return Some(format!("{} {i}: {e}", b.name())),
                };
                let id = check_scenario(&sc);
                if !id.all() {
                    return Some(format!("{} {i}: {id:?}", b.name()));
                }
                match normal_scenario(&mut rng, h, &u) {
                    Ok(n) if check_scenario(&n).all() && n.levi_green().is_zero() => None,
                    Ok(_) => Some(format!("{} {i}: L(n, n̄) ≠ 0", b.name())),
                    Err(e) => Some(format!("{} {i}: {e}", b.name())),
                }
            })
            .collect();
        ensure(bad.is_empty(), || bad.join("; "))?;
        total += 250;
    }
    Ok(format!("{total} fiber scenarios exact; L[u](n, n̄) = 0 on all"))
}

fn delaunay_case(s: &FlatSurface<Q>) -> std::result::Result<usize, String> {
    let (d, flips) = delaunayize(s).map_err(err)?;
    ensure(is_delaunay(&d).0, || "output is not Delaunay".into())?;
    ensure(d.area() == s.area(), || "area changed".into())?;
    ensure(d.symbol() == s.symbol(), || "symbol changed".into())?;
    let (again, more) = delaunayize(&d).map_err(err)?;
    ensure(more.is_empty() && again == d, || "not idempotent".into())?;
    Ok(flips.len())
}

fn delaunay(cfg: &SuiteConfig) -> Outcome {
    let mut flips = 0;
    for b in Bundled::ALL {
        flips += delaunay_case(&b.surface()).map_err(|e| format!("{}: {e}", b.name()))?;
    }
    let results: Vec<std::result::Result<usize, String>> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.rng(12, i);
            delaunay_case(&random_surface(&mut rng)).map_err(|e| format!("random {i}: {e}"))
        })
        .collect();
    for r in results {
        flips += r?;
    }
    Ok(format!("4 bundled + 100 random surfaces certified ({flips} flips in total)"))
}

fn symbol(m_free: usize, n_poles: usize, zeros: &[(u32, usize)], epsilon: i8) -> StratumSymbol {
    StratumSymbol { m_free, n_poles, n_zeros: zeros.iter().copied().collect(), epsilon }
}

fn poset() -> Outcome {
    let p04 = SymbolPoset::new(0, 4);
    let pillow = symbol(0, 4, &[], -1);
    ensure(p04.nodes == vec![pillow.clone()] && p04.edges.is_empty(), || format!("(0,4): {:?}", p04.nodes))?;
    let minus: Vec<usize> = (0..p04.nodes.len()).filter(|&i| p04.nodes[i].epsilon == -1).collect();
    let i = p04.index(&pillow).expect("pillowcase node");
    ensure(minus.iter().all(|&j| j == i || p04.degenerates_to(&pillow, &p04.nodes[j]).unwrap_or(false)), || {
        "pillowcase is not maximal".into()
    })?;
    let p11 = SymbolPoset::new(1, 1);
    ensure(p11.nodes == vec![symbol(1, 0, &[], 1)] && p11.edges.is_empty(), || format!("(1,1): {:?}", p11.nodes))?;
    let mut edges = 0;
    for (g, m) in [(0, 4), (1, 1), (0, 5), (1, 2), (2, 0), (2, 1)] {
        let p = SymbolPoset::new(g, m);
        for &(a, b) in &p.edges {
            ensure(p.dims[b] < p.dims[a], || {
                format!("({g},{m}): {} -> {} does not drop dimension", p.nodes[a], p.nodes[b])
            })?;
        }
        edges += p.edges.len();
    }
    Ok(format!("(0,4) = {{pillowcase}}, (1,1) = {{flat torus}}; {edges} covering edges checked on 6 posets"))
}

/// Linear families on `s` (rescaled below area 1) against the first variational formula.
pub fn first_variation_report(s: &FlatSurface<Q>, cfg: &SuiteConfig, n: u64) -> Result<CheckReport> {
    let fd = FDConfig::default().with_tolerance(cfg.tol(1e-6));
    let fams = linear_families(cfg, 7, 0, &normalize(s), n)?;
    let results =
        fams.par_iter().map(|f| Ok((first_variation_check(f, &fd)?, f.scenario()?))).collect::<Result<Vec<_>>>()?;
    let mut cases = Vec::new();
    for (i, (r, sc)) in results.into_iter().enumerate() {
        for c in r.report.cases {
            cases.push(CaseReport { label: format!("family {i}: {}", c.label), ..c });
        }
        if !sc.v1u.is_zero() {
            let holds = r.reduced_error >= 10.0 * fd.tolerance;
            cases.push(
                CaseReport::exact(format!("family {i}: reduced form rejected"), holds)
                    .with_note(format!("reduced form off by {:e}", r.reduced_error)),
            );
        }
    }
    Ok(CheckReport::new("first-variation", fd.tolerance, cases))
}

pub fn laplacian_report(s: &FlatSurface<Q>, cfg: &SuiteConfig, n: u64) -> Result<CheckReport> {
    let fd = FDConfig::default().with_tolerance(cfg.tol(1e-4));
    let fams = linear_families(cfg, 14, 0, &normalize(s), n)?;
    let reports = fams.par_iter().map(|f| laplacian_check_linear(f, &fd)).collect::<Result<Vec<_>>>()?;
    let cases = reports
        .into_iter()
        .enumerate()
        .flat_map(|(i, r)| {
            r.cases.into_iter().map(move |c| CaseReport { label: format!("family {i}: {}", c.label), ..c })
        })
        .collect();
    Ok(CheckReport::new("laplacian", fd.tolerance, cases))
}

pub fn disk_report(s: &FlatSurface<Q>, cfg: &SuiteConfig) -> Result<CheckReport> {
    let fd = FDConfig::default().with_tolerance(cfg.tol(1e-5));
    let s = normalize(s);
    let grid = default_disk_grid();
    let mut cases = Vec::new();
    for d0 in [0.3, 0.7, 1.2] {
        cases.extend(disk_harmonicity_check(&s, d0, &grid, &fd)?.cases);
    }
    let control = disk_negative_control(&s, 0.7, &fd)?;
    cases.push(CaseReport::exact("Δ(log tanh d)² > 0 at λ = 0", control > 0.0).with_note(format!("{control:e}")));
    Ok(CheckReport::new("disk", fd.tolerance, cases))
}

pub fn demailly_report(cfg: &SuiteConfig) -> CheckReport {
    let tol = cfg.tol(1e-3);
    let mut cases = Vec::new();
    for (dx, dy) in [(0.3, 0.7), (0.1, 1.0)] {
        let r = demailly_ratio(dx, dy, &[4.0, 6.0, 8.0, 10.0]);
        for sample in &r.samples {
            let c =
                CaseReport::absolute(format!("({dx}, {dy}) t = {}", sample.t), sample.value, r.target, f64::INFINITY);
            cases.push(if sample.t == 10.0 { CaseReport { passed: c.abs_error <= tol, ..c } } else { c });
        }
        cases.push(CaseReport::exact(format!("({dx}, {dy}) gap decreasing"), r.monotone));
    }
    CheckReport::new("demailly", tol, cases)
}

pub fn thurston_report(s: &FlatSurface<Q>, cfg: &SuiteConfig, n: u64) -> Result<CheckReport> {
    let base = Base::new(normalize(s))?;
    let h = &base.homology;
    let frame = HodgeFrame::new(h, &base.periods())?;
    let cases = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.rng(10, i);
            let p = frame.random_element(&mut rng, 9, 4);
            let q = frame.random_element(&mut rng, 9, 4);
            let v = thurston_pairing(h, &p, &q)?;
            let w = thurston_pairing(h, &q, &p)?;
            let holds = v.agree() && w.real_route == -v.real_route.clone();
            let c = CaseReport::absolute(format!("pair {i}"), v.real_route.to_f64(), v.hermitian_route.to_f64(), 0.0);
            Ok(CaseReport { passed: holds, ..c }.with_note(v.real_route.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::new("thurston", 0.0, cases))
}
