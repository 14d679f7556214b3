//! Developed triangle nets as SVG.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_complex::Complex;

use crate::cover::classify_points;
use crate::scalar::{to_cf64, Scalar};
use crate::surface::FlatSurface;

/// Glyph of a vertex: `∘` odd, `⊗` odd marked, `□` even, `⊠` even marked, `×` free marked.
pub fn glyph<S: Scalar>(s: &FlatSurface<S>, v: usize) -> Option<&'static str> {
    let o = s.order(v);
    match (o, s.is_marked(v)) {
        (0, true) => Some("×"),
        (0, false) => None,
        (o, false) if o % 2 != 0 => Some("∘"),
        (_, false) => Some("□"),
        (o, true) if o % 2 != 0 => Some("⊗"),
        (_, true) => Some("⊠"),
    }
}

/// Corner positions of every triangle after developing along a spanning tree of the dual graph.
pub fn develop<S: Scalar>(s: &FlatSurface<S>) -> Vec<[Complex<f64>; 3]> {
    let nt = s.triangle_count();
    let mut placed: Vec<Option<(Complex<f64>, f64)>> = vec![None; nt];
    let mut queue = VecDeque::new();
    let mut out = vec![[Complex::new(0.0, 0.0); 3]; nt];
    let corners = |t: usize, origin: Complex<f64>, k: f64| {
        let tri = s.triangles()[t];
        let a = origin;
        let b = a + to_cf64(s.vector(tri[0])) * k;
        let c = b + to_cf64(s.vector(tri[1])) * k;
        [a, b, c]
    };
    // components are developed side by side
    let mut shift = 0.0;
    for start in 0..nt {
        if placed[start].is_some() {
            continue;
        }
        placed[start] = Some((Complex::new(shift, 0.0), 1.0));
        queue.push_back(start);
        let mut max_x = shift;
        while let Some(t) = queue.pop_front() {
            let (origin, k) = placed[t].expect("queued triangles are placed");
            let pts = corners(t, origin, k);
            max_x = pts.iter().map(|p| p.re).fold(max_x, f64::max);
            out[t] = pts;
            for (slot, &e) in s.triangles()[t].iter().enumerate() {
                let p = s.partner(e);
                let u = s.triangle_of(p);
                if placed[u].is_some() {
                    continue;
                }
                let ku = k * f64::from(s.sign(e));
                // the tail of p sits at the head of e
                let head_e = pts[(slot + 1) % 3];
                let mut origin_u = head_e;
                let tri_u = s.triangles()[u];
                for &f in tri_u.iter().take(s.slot_of(p)) {
                    origin_u -= to_cf64(s.vector(f)) * ku;
                }
                placed[u] = Some((origin_u, ku));
                queue.push_back(u);
            }
        }
        shift = max_x + 1.0;
    }
    out
}

pub fn render<S: Scalar>(s: &FlatSurface<S>, title: &str) -> String {
    let tris = develop(s);
    let pts: Vec<Complex<f64>> = tris.iter().flatten().copied().collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in &pts {
        x0 = x0.min(p.re);
        y0 = y0.min(p.im);
        x1 = x1.max(p.re);
        y1 = y1.max(p.im);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = 480.0 / span;
    let pad = 40.0;
    let w = (x1 - x0) * scale + 2.0 * pad;
    let h = (y1 - y0) * scale + 2.0 * pad + 20.0;
    let map = |p: Complex<f64>| ((p.re - x0) * scale + pad, (y1 - p.im) * scale + pad + 20.0);
    let sigma = classify_points(s);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.1}\" height=\"{h:.1}\" viewBox=\"0 0 {w:.1} {h:.1}\">"
    );
    let _ = writeln!(out, "<text x=\"{pad}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">{}</text>", escape(title));
    for (t, corners) in tris.iter().enumerate() {
        let path: Vec<String> = corners
            .iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"#eef3fb\" stroke=\"#334\" stroke-width=\"1\"/>",
            path.join(" ")
        );
        let c = (corners[0] + corners[1] + corners[2]) / 3.0;
        let (cx, cy) = map(c);
        let _ = writeln!(
            out,
            "<text x=\"{cx:.2}\" y=\"{cy:.2}\" font-family=\"sans-serif\" font-size=\"9\" fill=\"#889\" text-anchor=\"middle\">{t}</text>"
        );
        for (slot, &e) in s.triangles()[t].iter().enumerate() {
            let v = s.tail(e);
            let (x, y) = map(corners[slot]);
            if let Some(g) = glyph(s, v) {
                let _ = writeln!(
                    out,
                    "<text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" dominant-baseline=\"central\">{g}<title>vertex {v}, order {}</title></text>",
                    s.order(v)
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "<!-- odd {:?} even {:?} free marked {:?} -->",
        sigma.sigma_o, sigma.sigma_e, sigma.sigma_m_free
    );
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled::Bundled;

    #[test]
    fn developed_triangles_keep_their_shape() {
        for b in Bundled::ALL {
            let s = b.surface();
            let tris = develop(&s);
            for (t, c) in tris.iter().enumerate() {
                let area = ((c[1] - c[0]).conj() * (c[2] - c[0])).im / 2.0;
                let expect: f64 = s.triangle_area(t).to_f64();
                assert!((area.abs() - expect).abs() < 1e-12, "{} triangle {t}", b.name());
            }
            let svg = render(&s, b.name());
            assert!(svg.starts_with("<svg") && svg.contains("polygon"));
        }
    }

    #[test]
    fn glyphs_follow_the_classification() {
        let p = Bundled::Pillowcase.surface();
        assert!((0..4).all(|v| glyph(&p, v) == Some("⊗")));
        let t = Bundled::MarkedTorus.surface();
        assert_eq!(glyph(&t, 0), Some("×"));
    }
}
