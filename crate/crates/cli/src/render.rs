use std::fmt::Write as _;

use cak_core::geometry::Arrangement;

/// Rendering parameters for the SVG output.
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    pub color_seed: u64,
    pub show_labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 800,
            height: 900,
            margin: 24,
            color_seed: 0,
            show_labels: true,
        }
    }
}

fn color(seed: u64, index: usize) -> String {
    // Splitmix-style scramble; presentation only.
    let mut x = seed
        .wrapping_mul(0x9e3779b97f4a7c15)
        .wrapping_add(index as u64 + 1);
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58476d1ce4e5b9);
    x ^= x >> 27;
    let hue = (x % 360) as f64;
    format!("hsl({hue:.0}, 70%, 45%)")
}

/// Renders the primal bodies on top and the dual support curves (sampled
/// support values over 720 angles, floating point, presentation only)
/// below. All combinatorial annotations come from the exact sweep, never
/// from the sampled picture.
pub fn render_svg(arr: &Arrangement, spec: &RenderSpec) -> String {
    let w = spec.width as f64;
    let h = spec.height as f64;
    let m = spec.margin as f64;
    let half = (h - 3.0 * m) / 2.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);

    // Primal pane: bodies drawn to fit.
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for poly in arr.bodies().values() {
        for v in poly.vertices() {
            min_x = min_x.min(v.x().to_f64());
            max_x = max_x.max(v.x().to_f64());
            min_y = min_y.min(v.y().to_f64());
            max_y = max_y.max(v.y().to_f64());
        }
    }
    let span_x = (max_x - min_x).max(1e-9);
    let span_y = (max_y - min_y).max(1e-9);
    let scale = ((w - 2.0 * m) / span_x).min(half / span_y);
    let px = |x: f64| m + (x - min_x) * scale;
    let py = |y: f64| m + half - (y - min_y) * scale;

    for (i, (label, poly)) in arr.bodies().iter().enumerate() {
        let c = color(spec.color_seed, i);
        let pts: Vec<String> = poly
            .vertices()
            .iter()
            .map(|v| format!("{:.3},{:.3}", px(v.x().to_f64()), py(v.y().to_f64())))
            .collect();
        match poly.len() {
            1 => {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{}" cy="{}" r="3" fill="{c}"/>"#,
                    px(poly.vertices()[0].x().to_f64()),
                    py(poly.vertices()[0].y().to_f64())
                );
            }
            2 => {
                let _ = writeln!(
                    svg,
                    r#"<polyline points="{}" stroke="{c}" stroke-width="2" fill="none"/>"#,
                    pts.join(" ")
                );
            }
            _ => {
                let _ = writeln!(
                    svg,
                    r#"<polygon points="{}" stroke="{c}" stroke-width="1.5" fill="{c}" fill-opacity="0.12"/>"#,
                    pts.join(" ")
                );
            }
        }
        if spec.show_labels {
            let v0 = &poly.vertices()[0];
            let _ = writeln!(
                svg,
                r#"<text x="{:.3}" y="{:.3}" font-size="12" fill="{c}">{label}</text>"#,
                px(v0.x().to_f64()) + 4.0,
                py(v0.y().to_f64()) - 4.0
            );
        }
    }

    // Dual pane: sampled support graphs.
    const SAMPLES: usize = 720;
    let mut min_v = f64::INFINITY;
    let mut max_v = f64::NEG_INFINITY;
    let mut curves: Vec<(String, Vec<f64>)> = Vec::new();
    for (label, poly) in arr.bodies() {
        let mut values = Vec::with_capacity(SAMPLES + 1);
        for s in 0..=SAMPLES {
            let t = (s as f64 + 0.5) / SAMPLES as f64 * std::f64::consts::TAU;
            let v = poly
                .vertices()
                .iter()
                .map(|p| p.x().to_f64() * t.cos() + p.y().to_f64() * t.sin())
                .fold(f64::NEG_INFINITY, f64::max);
            min_v = min_v.min(v);
            max_v = max_v.max(v);
            values.push(v);
        }
        curves.push((label.to_string(), values));
    }
    let span_v = (max_v - min_v).max(1e-9);
    let top = 2.0 * m + half;
    let vy = |v: f64| top + half - (v - min_v) / span_v * half;
    for (i, (label, values)) in curves.iter().enumerate() {
        let c = color(spec.color_seed, i);
        let pts: Vec<String> = values
            .iter()
            .enumerate()
            .map(|(s, v)| {
                let x = m + s as f64 / SAMPLES as f64 * (w - 2.0 * m);
                format!("{:.3},{:.3}", x, vy(*v))
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" stroke="{c}" stroke-width="1.2" fill="none"/>"#,
            pts.join(" ")
        );
        if spec.show_labels {
            let _ = writeln!(
                svg,
                r#"<text x="{:.3}" y="{:.3}" font-size="12" fill="{c}">{label}</text>"#,
                m + 2.0,
                vy(values[0]) - 3.0
            );
        }
    }

    // Exact crossing ticks along the dual pane's base line.
    for c in &arr.support_configuration().crossings {
        let x = m + c.dir.turn_f64() * (w - 2.0 * m);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="gray" stroke-width="1"/>"#,
            top + half,
            top + half + 6.0
        );
        if spec.show_labels {
            let _ = writeln!(
                svg,
                r#"<text x="{x:.3}" y="{:.3}" font-size="9" fill="dimgray" text-anchor="middle">{},{}</text>"#,
                top + half + 16.0,
                c.first,
                c.second
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}
