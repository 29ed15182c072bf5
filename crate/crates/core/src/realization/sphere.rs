//! Floating-point sphere model of a realization via inverse stereographic
//! projection: points go to the sphere, circles to plane sections.

use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde::Serialize;

use super::{InvCircle, InvPoint, Realization};
use crate::subset::FiniteSubset;

/// Convert a possibly huge rational to f64 without overflowing on the way:
/// scale the quotient into range first.
pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let scaled: BigInt = (r.numer() << 128u32) / r.denom();
    let bits = scaled.bits();
    if bits <= 1000 {
        scaled.to_f64().unwrap_or(0.0) / 2f64.powi(128)
    } else {
        let shift = bits - 900;
        let reduced: BigInt = scaled >> shift;
        reduced.to_f64().unwrap_or(f64::INFINITY) * 2f64.powf(shift as f64 - 128.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpherePoint {
    pub label: String,
    pub xyz: [f64; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereCircle {
    pub label: String,
    pub center: [f64; 3],
    pub normal: [f64; 3],
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereModel {
    pub radius: f64,
    pub points: Vec<SpherePoint>,
    pub circles: Vec<SphereCircle>,
    /// Largest incidence residual over all flags, in units of the radius.
    pub max_residual: f64,
}

impl SphereModel {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

fn project_point(p: &InvPoint, r: &BigRational) -> [f64; 3] {
    match p {
        InvPoint::Infinity => [0.0, 0.0, ratio_to_f64(r)],
        InvPoint::Finite { x, y } => {
            let r2 = r * r;
            let s = x * x + y * y;
            let denom = &s + &r2;
            let t = BigRational::from_integer(2.into()) * &r2 / &denom;
            let z = r * (&s - &r2) / &denom;
            [ratio_to_f64(&(&t * x)), ratio_to_f64(&(&t * y)), ratio_to_f64(&z)]
        }
    }
}

/// Plane of the image of a circle: for a(x²+y²)+bx+cy+d = 0 the section is
/// br·X + cr·Y + (ar²−d)·Z + (ar³+dr) = 0.
fn circle_plane(c: &InvCircle, r: &BigRational) -> (BigRational, BigRational, BigRational, BigRational) {
    let (a, b, cc, d) = c.coefficients();
    let a = BigRational::from_integer(a.clone());
    let b = BigRational::from_integer(b.clone());
    let cc = BigRational::from_integer(cc.clone());
    let d = BigRational::from_integer(d.clone());
    let nx = &b * r;
    let ny = &cc * r;
    let nz = &a * r * r - &d;
    let off = &a * r * r * r + &d * r;
    (nx, ny, nz, off)
}

/// Map a verified realization onto the sphere of the given radius centred at
/// the origin, with the point at infinity at the north pole.
pub fn stereographic(real: &Realization, radius: &BigRational) -> SphereModel {
    let rf = ratio_to_f64(radius);
    let points: Vec<(FiniteSubset, [f64; 3])> = real
        .points()
        .map(|(l, p)| (*l, project_point(p, radius)))
        .collect();
    let mut circles = Vec::new();
    let mut planes = Vec::new();
    for (l, c) in real.circles() {
        let (nx, ny, nz, off) = circle_plane(c, radius);
        let n = [ratio_to_f64(&nx), ratio_to_f64(&ny), ratio_to_f64(&nz)];
        let off = ratio_to_f64(&off);
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let unit = [n[0] / norm, n[1] / norm, n[2] / norm];
        let dist = off / norm; // signed distance of the plane from the origin
        let center = [-dist * unit[0], -dist * unit[1], -dist * unit[2]];
        let radius_c = (rf * rf - dist * dist).max(0.0).sqrt();
        planes.push((*l, unit, dist));
        circles.push(SphereCircle {
            label: l.to_string(),
            center,
            normal: unit,
            radius: radius_c,
        });
    }
    // residuals over the flags of the configuration
    let mut max_residual: f64 = 0.0;
    for (pl, xyz) in &points {
        for (cl, unit, dist) in &planes {
            if pl.adjacent(cl) {
                let res = (unit[0] * xyz[0] + unit[1] * xyz[1] + unit[2] * xyz[2] + dist).abs();
                max_residual = max_residual.max(res / rf);
            }
        }
    }
    SphereModel {
        radius: rf,
        points: points
            .into_iter()
            .map(|(l, xyz)| SpherePoint { label: l.to_string(), xyz })
            .collect(),
        circles,
        max_residual,
    }
}
