//! Planar helpers on points stored as complex numbers.

use num_complex::Complex64;

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull, counter-clockwise, collinear points dropped (monotone chain).
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.iter().copied().filter(|p| p.re.is_finite() && p.im.is_finite()).collect();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Signed shoelace area; positive for counter-clockwise polygons.
pub fn signed_area(poly: &[Complex64]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].re * poly[(i + 1) % n].im - poly[(i + 1) % n].re * poly[i].im).sum::<f64>() / 2.0
}

pub fn diameter(points: &[Complex64]) -> f64 {
    let mut best = 0.0f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max((a - b).norm());
        }
    }
    best
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Distance from `p` to the filled convex polygon (0 inside).
pub fn distance_to_convex(p: Complex64, poly: &[Complex64]) -> f64 {
    let n = poly.len();
    match n {
        0 => f64::INFINITY,
        1 => (p - poly[0]).norm(),
        _ => {
            let orient = signed_area(poly).signum();
            let inside = n >= 3 && (0..n).all(|i| orient * cross(poly[i], poly[(i + 1) % n], p) >= 0.0);
            if inside {
                0.0
            } else {
                (0..n).map(|i| segment_distance(p, poly[i], poly[(i + 1) % n])).fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Hausdorff distance between two filled convex polygons. Distance to a
/// convex set is convex along segments, so checking vertices suffices.
pub fn hausdorff_convex(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |x: &[Complex64], y: &[Complex64]| x.iter().map(|p| distance_to_convex(*p, y)).fold(0.0, f64::max);
    one_way(a, b).max(one_way(b, a))
}

/// Worst reflex turn of a closed polygon, normalized by diameter²; 0 when
/// convex. Orientation is taken from the signed area.
pub fn convexity_defect(poly: &[Complex64]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let diam2 = diameter(poly).powi(2);
    if diam2 == 0.0 {
        return 0.0;
    }
    let orient = if signed_area(poly) < 0.0 { -1.0 } else { 1.0 };
    (0..n)
        .map(|i| {
            let turn = orient * cross(poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
            (-turn).max(0.0)
        })
        .fold(0.0, f64::max)
        / diam2
}
