//! SVG 1.1 rendering of a boundary curve.
//!
//! The viewport is the bounding box of the curve grown by 5% of its width and
//! height on each side. A point `w` maps to
//!
//! ```text
//! x = (Re w - x0) * scale,  y = (y1 - Im w) * scale
//! ```
//!
//! where `x0` is the left edge, `y1` the top edge and `scale` turns the box
//! width into [`WIDTH`] pixels.

use std::fmt::Write;

use schwarz_regions::Complex64;

pub const WIDTH: f64 = 800.0;
pub const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub y1: f64,
    pub scale: f64,
    pub width: f64,
    pub height: f64,
}

impl Viewport {
    pub fn fit(points: &[Complex64]) -> Self {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for p in points {
            xmin = xmin.min(p.re);
            xmax = xmax.max(p.re);
            ymin = ymin.min(p.im);
            ymax = ymax.max(p.im);
        }
        let w = (xmax - xmin).max(1e-300);
        let h = (ymax - ymin).max(1e-300);
        let (x0, x1) = (xmin - MARGIN * w, xmax + MARGIN * w);
        let (y0, y1) = (ymin - MARGIN * h, ymax + MARGIN * h);
        let scale = WIDTH / (x1 - x0);
        Self { x0, y1, scale, width: WIDTH, height: (y1 - y0) * scale }
    }

    pub fn map(&self, w: Complex64) -> (f64, f64) {
        ((w.re - self.x0) * self.scale, (self.y1 - w.im) * self.scale)
    }

    pub fn unmap(&self, x: f64, y: f64) -> Complex64 {
        Complex64::new(x / self.scale + self.x0, self.y1 - y / self.scale)
    }
}

fn path(vp: &Viewport, points: &[Complex64]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = vp.map(*p);
        let _ = write!(d, "{}{x:.9},{y:.9} ", if i == 0 { "M" } else { "L" });
    }
    d.push('Z');
    d
}

/// The closed curve, an optional overlay polygon and the two axes when they
/// cross the viewport.
pub fn render(curve: &[Complex64], overlay: Option<&[Complex64]>) -> String {
    let mut all = curve.to_vec();
    if let Some(o) = overlay {
        all.extend_from_slice(o);
    }
    let vp = Viewport::fit(&all);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = vp.width,
        h = vp.height
    );
    let _ = writeln!(
        s,
        r#"<desc>x = (re - x0) * scale, y = (y1 - im) * scale; x0 = {:e}; y1 = {:e}; scale = {:e}</desc>"#,
        vp.x0, vp.y1, vp.scale
    );
    let (ox, oy) = vp.map(Complex64::new(0.0, 0.0));
    if (0.0..=vp.height).contains(&oy) {
        let _ = writeln!(
            s,
            r#"<line id="real-axis" x1="0" y1="{oy:.9}" x2="{:.9}" y2="{oy:.9}" stroke="gray"/>"#,
            vp.width
        );
    }
    if (0.0..=vp.width).contains(&ox) {
        let _ = writeln!(
            s,
            r#"<line id="imag-axis" x1="{ox:.9}" y1="0" x2="{ox:.9}" y2="{:.9}" stroke="gray"/>"#,
            vp.height
        );
    }
    if let Some(o) = overlay {
        let _ =
            writeln!(s, r#"<path id="oracle" d="{}" fill="none" stroke="red" stroke-dasharray="4 2"/>"#, path(&vp, o));
    }
    let _ = writeln!(s, r#"<path id="boundary" d="{}" fill="none" stroke="black"/>"#, path(&vp, curve));
    s.push_str("</svg>\n");
    s
}

/// Reads the vertices of the path with the given id back into the plane.
pub fn read_path(svg: &str, id: &str) -> Option<Vec<Complex64>> {
    let start = svg.find(&format!(r#"id="{id}" d=""#))? + id.len() + 9;
    let end = start + svg[start..].find('"')?;
    let vp = viewport_from_desc(svg)?;
    svg[start..end]
        .split_whitespace()
        .filter(|t| *t != "Z")
        .map(|t| {
            let (x, y) = t[1..].split_once(',')?;
            Some(vp.unmap(x.parse().ok()?, y.parse().ok()?))
        })
        .collect()
}

fn viewport_from_desc(svg: &str) -> Option<Viewport> {
    let start = svg.find("<desc>")? + 6;
    let desc = &svg[start..start + svg[start..].find("</desc>")?];
    let field = |name: &str| -> Option<f64> {
        desc.split("; ").find_map(|kv| kv.strip_prefix(name)?.strip_prefix(" = ")?.parse().ok())
    };
    Some(Viewport { x0: field("x0")?, y1: field("y1")?, scale: field("scale")?, width: WIDTH, height: 0.0 })
}
