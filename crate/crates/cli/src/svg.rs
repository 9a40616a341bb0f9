//! Phase-portrait SVG.

use std::fmt::Write;

use bracketflow::normalized::{Bounds, FieldSample, NormalizedFixedPoint};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 56.0;

struct Frame {
    bounds: Bounds,
}

impl Frame {
    fn x(&self, m2: f64) -> f64 {
        MARGIN + (m2 - self.bounds.x0) / (self.bounds.x1 - self.bounds.x0) * (SIZE - 2.0 * MARGIN)
    }

    // screen y grows downward
    fn y(&self, m3: f64) -> f64 {
        SIZE - MARGIN
            - (m3 - self.bounds.y0) / (self.bounds.y1 - self.bounds.y0) * (SIZE - 2.0 * MARGIN)
    }
}

/// Arrows on an `n × n` grid with length proportional to `asinh(speed)`,
/// plus catalog fixed points inside the bounds.
pub fn portrait(
    beta: f64,
    bounds: &Bounds,
    n: usize,
    field: &[FieldSample],
    fixed: &[NormalizedFixedPoint],
) -> String {
    let frame = Frame { bounds: *bounds };
    let cell = (SIZE - 2.0 * MARGIN) / (n.max(2) - 1) as f64;
    let max_len = 0.85 * cell;
    let max_speed = field
        .iter()
        .map(|s| s.dm2.hypot(s.dm3))
        .filter(|v| v.is_finite())
        .fold(0.0_f64, f64::max);
    let norm = max_speed.asinh();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}" fill="none" stroke="black"/>"#,
        w = SIZE - 2.0 * MARGIN
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">beta = {beta}</text>"#,
        SIZE / 2.0,
        MARGIN / 2.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">m2</text>"#,
        SIZE / 2.0,
        SIZE - MARGIN / 4.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">m3</text>"#,
        MARGIN / 3.0,
        SIZE / 2.0,
        MARGIN / 3.0,
        SIZE / 2.0
    );
    for (v, anchor_x, anchor_y, text_anchor) in [
        (bounds.x0, frame.x(bounds.x0), SIZE - MARGIN + 16.0, "start"),
        (bounds.x1, frame.x(bounds.x1), SIZE - MARGIN + 16.0, "end"),
    ] {
        let _ = writeln!(
            s,
            r#"<text x="{anchor_x:.2}" y="{anchor_y:.2}" font-family="sans-serif" font-size="11" text-anchor="{text_anchor}">{v}</text>"#
        );
    }
    for (v, y) in [
        (bounds.y0, frame.y(bounds.y0)),
        (bounds.y1, frame.y(bounds.y1) + 10.0),
    ] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{y:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{v}</text>"#,
            MARGIN - 4.0
        );
    }

    let _ = writeln!(
        s,
        r#"<g stroke="steelblue" stroke-width="1.2" fill="none">"#
    );
    for p in field {
        let speed = p.dm2.hypot(p.dm3);
        if !(speed > 0.0 && speed.is_finite() && norm > 0.0) {
            continue;
        }
        let len = max_len * speed.asinh() / norm;
        // field direction in screen coordinates
        let (ux, uy) = (p.dm2 / speed, -p.dm3 / speed);
        let (x0, y0) = (
            frame.x(p.m2) - 0.5 * len * ux,
            frame.y(p.m3) - 0.5 * len * uy,
        );
        let (x1, y1) = (x0 + len * ux, y0 + len * uy);
        let head = 0.3 * len;
        let (hx, hy) = (x1 - head * ux, y1 - head * uy);
        let (px, py) = (-uy * head * 0.5, ux * head * 0.5);
        let _ = writeln!(
            s,
            r#"<path d="M{x0:.2},{y0:.2}L{x1:.2},{y1:.2}M{:.2},{:.2}L{x1:.2},{y1:.2}L{:.2},{:.2}"/>"#,
            hx + px,
            hy + py,
            hx - px,
            hy - py
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g fill="crimson" stroke="black" stroke-width="0.8">"#);
    for f in fixed.iter().filter(|f| bounds.contains(f.m2, f.m3)) {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="5"><title>({}, {}) {}</title></circle>"#,
            frame.x(f.m2),
            frame.y(f.m3),
            f.m2,
            f.m3,
            f.labels.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}
