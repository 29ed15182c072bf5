//! SVG rendering of a realization: one group per circle, plain float
//! geometry, points drawn on top.

use num::{BigInt, BigRational};

use super::sphere::ratio_to_f64;
use super::{InvPoint, Realization};

fn fmt(v: f64) -> String {
    format!("{v:.4}")
}

fn int_to_f64(v: &BigInt) -> f64 {
    ratio_to_f64(&BigRational::from_integer(v.clone()))
}

/// Render the finite part of a realization as an SVG 1.1 document.
pub fn to_svg(real: &Realization) -> String {
    // bounding box over the finite points
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (_, p) in real.points() {
        if let InvPoint::Finite { x, y } = p {
            xs.push(ratio_to_f64(x));
            ys.push(ratio_to_f64(y));
        }
    }
    let (min_x, max_x) = (
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let (min_y, max_y) = (
        ys.iter().cloned().fold(f64::INFINITY, f64::min),
        ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let span = ((max_x - min_x).max(max_y - min_y)).max(1.0);
    let pad = span * 0.15;
    let (x0, y0) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    let stroke = span / 400.0;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        fmt(x0),
        fmt(y0),
        fmt(w),
        fmt(h)
    ));
    out.push_str(&format!(
        "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        fmt(x0),
        fmt(y0),
        fmt(w),
        fmt(h)
    ));
    for (label, c) in real.circles() {
        out.push_str(&format!(
            "  <g id=\"circle_{label}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\">\n",
            fmt(stroke)
        ));
        let (a, b, cc, d) = c.coefficients();
        if c.is_line() {
            // extend from a base point along the direction (c, −b)
            let bf = int_to_f64(b);
            let cf = int_to_f64(cc);
            let df = int_to_f64(d);
            let (px, py) = if cf != 0.0 { (0.0, -df / cf) } else { (-df / bf, 0.0) };
            let len = (bf * bf + cf * cf).sqrt();
            let (dx, dy) = (cf / len, -bf / len);
            let t = 4.0 * span;
            out.push_str(&format!(
                "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                fmt(px - t * dx),
                fmt(py - t * dy),
                fmt(px + t * dx),
                fmt(py + t * dy)
            ));
        } else {
            let two_a = BigInt::from(2) * a;
            let cx = ratio_to_f64(&BigRational::new(-b.clone(), two_a.clone()));
            let cy = ratio_to_f64(&BigRational::new(-cc.clone(), two_a));
            let disc = b * b + cc * cc - BigInt::from(4) * a * d;
            let r2 = BigRational::new(disc, BigInt::from(4) * a * a);
            let r = ratio_to_f64(&r2).max(0.0).sqrt();
            out.push_str(&format!(
                "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                fmt(cx),
                fmt(cy),
                fmt(r)
            ));
        }
        out.push_str("  </g>\n");
    }
    out.push_str("  <g id=\"points\" fill=\"black\">\n");
    for (label, p) in real.points() {
        if let InvPoint::Finite { x, y } = p {
            out.push_str(&format!(
                "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"><title>{label}</title></circle>\n",
                fmt(ratio_to_f64(x)),
                fmt(ratio_to_f64(y)),
                fmt(stroke * 3.0)
            ));
        }
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::{realize, DEFAULT_SEED};

    #[test]
    fn svg_contains_groups_and_points() {
        let r = realize(4, DEFAULT_SEED).unwrap();
        let svg = to_svg(&r);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("circle_{1}"));
        assert!(svg.contains("circle_{1,2,3}"));
        assert!(svg.contains("<line"));
        assert!(svg.ends_with("</svg>\n"));
        // byte-stable output for fixed seed
        assert_eq!(svg, to_svg(&r));
    }
}
