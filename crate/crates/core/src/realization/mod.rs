//! Certified realizations of Cox configurations by points and circles on the
//! inversive plane, built inductively with exact rational arithmetic.
//!
//! The empty set sits at the point at infinity, so the singleton blocks
//! become lines with seeded-random rational slopes. Every later point is the
//! second intersection of two circles already built, and every later circle
//! passes through three points already built; all remaining incidences are
//! then verified exactly rather than assumed.

mod circle;
mod cross;
pub mod json;
mod sphere;
mod svg;

pub use circle::{circle_through, second_intersection, GeomError, InvCircle, InvPoint};
pub use cross::{cross_ratio, CrossRatioError};
pub use sphere::{stereographic, SphereCircle, SphereModel};
pub use svg::to_svg;

use std::collections::BTreeMap;

use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::subset::FiniteSubset;

/// Fixed default seed for reproducible constructions.
pub const DEFAULT_SEED: u64 = 1;

/// Default upper bound on the ground-set size for direct realization;
/// coefficient sizes grow with every layer.
pub const DEFAULT_REALIZE_CAP: u8 = 10;

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("genericity failure at {label}: {detail}; retry with a new seed")]
    Genericity { label: String, detail: String },
    #[error("geometry error at {label}: {source}")]
    Geometry { label: String, source: GeomError },
    #[error("internal inconsistency at {label}: {detail}")]
    Inconsistent { label: String, detail: String },
    #[error("realization is not verified")]
    NotVerified,
}

/// Exact verification summary: flag incidences, accidental incidences on
/// non-flags, and duplicate objects.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub flags_checked: usize,
    pub flag_violations: Vec<(FiniteSubset, FiniteSubset)>,
    pub non_flags_checked: usize,
    pub accidental_incidences: Vec<(FiniteSubset, FiniteSubset)>,
    pub duplicate_points: Vec<(FiniteSubset, FiniteSubset)>,
    pub duplicate_circles: Vec<(FiniteSubset, FiniteSubset)>,
}

impl VerifyReport {
    pub fn clean(&self) -> bool {
        self.flag_violations.is_empty()
            && self.accidental_incidences.is_empty()
            && self.duplicate_points.is_empty()
            && self.duplicate_circles.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.clean() {
            format!(
                "all {} incidences exact; {} non-incidences checked; all objects pairwise distinct",
                self.flags_checked, self.non_flags_checked
            )
        } else {
            format!(
                "{} flag violations, {} accidental incidences, {} duplicate points, {} duplicate circles",
                self.flag_violations.len(),
                self.accidental_incidences.len(),
                self.duplicate_points.len(),
                self.duplicate_circles.len()
            )
        }
    }
}

/// An exact realization: even subsets as inversive points, odd subsets as
/// circles, with the empty set at infinity.
#[derive(Clone, Debug)]
pub struct Realization {
    n: u8,
    seed: u64,
    points: BTreeMap<FiniteSubset, InvPoint>,
    circles: BTreeMap<FiniteSubset, InvCircle>,
    verified: bool,
}

impl Realization {
    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn point(&self, label: &FiniteSubset) -> Option<&InvPoint> {
        self.points.get(label)
    }

    pub fn circle(&self, label: &FiniteSubset) -> Option<&InvCircle> {
        self.circles.get(label)
    }

    pub fn points(&self) -> impl Iterator<Item = (&FiniteSubset, &InvPoint)> {
        self.points.iter()
    }

    pub fn circles(&self) -> impl Iterator<Item = (&FiniteSubset, &InvCircle)> {
        self.circles.iter()
    }

    /// Assemble from raw parts (e.g. a parsed file): every even subset must
    /// map to a point, every odd subset to a circle, and ∅ to infinity.
    /// The result starts unverified.
    pub fn from_parts(
        n: u8,
        seed: u64,
        points: BTreeMap<FiniteSubset, InvPoint>,
        circles: BTreeMap<FiniteSubset, InvCircle>,
    ) -> Result<Self, RealizeError> {
        if !(3..=16).contains(&n) {
            return Err(RealizeError::BadParameter(format!("n={n} out of range")));
        }
        for s in FiniteSubset::all(n) {
            if s.is_even() {
                if !points.contains_key(&s) {
                    return Err(RealizeError::BadParameter(format!("missing point {s}")));
                }
            } else if !circles.contains_key(&s) {
                return Err(RealizeError::BadParameter(format!("missing circle {s}")));
            }
        }
        if points.len() != 1 << (n - 1) || circles.len() != 1 << (n - 1) {
            return Err(RealizeError::BadParameter("unexpected extra entries".into()));
        }
        if points[&FiniteSubset::empty(n)] != InvPoint::Infinity {
            return Err(RealizeError::BadParameter(
                "the empty set must map to the point at infinity".into(),
            ));
        }
        Ok(Realization { n, seed, points, circles, verified: false })
    }

    /// Exact check of every flag, every non-flag, and pairwise distinctness.
    pub fn verify(&self) -> VerifyReport {
        let mut report = VerifyReport::default();
        for (pl, pt) in &self.points {
            for (cl, c) in &self.circles {
                let incident = c.contains(pt);
                if pl.adjacent(cl) {
                    report.flags_checked += 1;
                    if !incident {
                        report.flag_violations.push((*pl, *cl));
                    }
                } else {
                    report.non_flags_checked += 1;
                    if incident {
                        report.accidental_incidences.push((*pl, *cl));
                    }
                }
            }
        }
        let pts: Vec<(&FiniteSubset, &InvPoint)> = self.points.iter().collect();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if pts[i].1 == pts[j].1 {
                    report.duplicate_points.push((*pts[i].0, *pts[j].0));
                }
            }
        }
        let circs: Vec<(&FiniteSubset, &InvCircle)> = self.circles.iter().collect();
        for i in 0..circs.len() {
            for j in (i + 1)..circs.len() {
                if circs[i].1 == circs[j].1 {
                    report.duplicate_circles.push((*circs[i].0, *circs[j].0));
                }
            }
        }
        report
    }

    /// Record a clean verification run on this value.
    pub fn set_verified(&mut self, report: &VerifyReport) {
        self.verified = report.clean();
    }

    #[cfg(test)]
    pub(crate) fn corrupt_point_for_tests(&mut self, label: &FiniteSubset) {
        use num::One;
        if let Some(InvPoint::Finite { x, .. }) = self.points.get_mut(label) {
            *x += BigRational::one();
        }
        self.verified = false;
    }
}

/// Seeded rational line for ground element `i`: the draw is keyed by
/// (seed, element), so extending a realization reproduces exactly the lines
/// a direct larger realization would draw.
fn draw_line(seed: u64, element: u8) -> InvCircle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(element as u64);
    let slope_num: i64 = rng.gen_range(-999..=999);
    let slope_den: i64 = rng.gen_range(1..=999);
    let icpt_num: i64 = rng.gen_range(-999..=999);
    let icpt_den: i64 = rng.gen_range(1..=999);
    let m = BigRational::new(slope_num.into(), slope_den.into());
    let c = BigRational::new(icpt_num.into(), icpt_den.into());
    // y = m x + c  ⇒  m·x − y + c = 0
    InvCircle::from_rationals(&BigRational::zero(), &m, &BigRational::from_integer((-1).into()), &c)
        .expect("a seeded line is never degenerate")
}

/// Build the layers above the lines: every even subset of size ≥ 2 is the
/// second intersection of two already-built circles, every odd subset of
/// size ≥ 3 the circle through three already-built points. The remaining
/// incidences of each new object are checked exactly as it appears.
fn fill_layers(
    points: &mut BTreeMap<FiniteSubset, InvPoint>,
    circles: &mut BTreeMap<FiniteSubset, InvCircle>,
    labels: impl Iterator<Item = FiniteSubset>,
) -> Result<(), RealizeError> {
    for s in labels {
        let elems: Vec<u8> = s.elems().collect();
        if s.is_even() {
            let (i, j) = (elems[0], elems[1]);
            let c1 = circles[&s.without(i)].clone();
            let c2 = circles[&s.without(j)].clone();
            let base = points[&s.without(i).without(j)].clone();
            let pt = second_intersection(&c1, &c2, &base).map_err(|e| match e {
                GeomError::TangentAtKnown => RealizeError::Genericity {
                    label: s.to_string(),
                    detail: "defining circles tangent at the base point".into(),
                },
                other => RealizeError::Geometry { label: s.to_string(), source: other },
            })?;
            // concurrency of all remaining circles through the new point
            for &l in &elems {
                if !circles[&s.without(l)].contains(&pt) {
                    return Err(RealizeError::Inconsistent {
                        label: s.to_string(),
                        detail: format!("circle {} misses the common point", s.without(l)),
                    });
                }
            }
            points.insert(s, pt);
        } else if elems.len() >= 3 {
            let (i, j, k) = (elems[0], elems[1], elems[2]);
            let c = circle_through(
                &points[&s.without(i)],
                &points[&s.without(j)],
                &points[&s.without(k)],
            )
            .map_err(|e| match e {
                GeomError::DuplicatePoints => RealizeError::Genericity {
                    label: s.to_string(),
                    detail: "defining points coincide".into(),
                },
                other => RealizeError::Geometry { label: s.to_string(), source: other },
            })?;
            for &l in &elems {
                if !c.contains(&points[&s.without(l)]) {
                    return Err(RealizeError::Inconsistent {
                        label: s.to_string(),
                        detail: format!("point {} misses the circle", s.without(l)),
                    });
                }
            }
            circles.insert(s, c);
        }
    }
    Ok(())
}

fn check_new_line(
    line: &InvCircle,
    existing: &BTreeMap<FiniteSubset, InvCircle>,
    label: FiniteSubset,
) -> Result<(), RealizeError> {
    for (l, c) in existing {
        if l.card() != 1 {
            continue;
        }
        if c == line {
            return Err(RealizeError::Genericity {
                label: label.to_string(),
                detail: format!("coincides with line {l}"),
            });
        }
        if c.line_slope() == line.line_slope() {
            return Err(RealizeError::Genericity {
                label: label.to_string(),
                detail: format!("parallel to line {l} (tangent at infinity)"),
            });
        }
    }
    Ok(())
}

fn realize_inner(n: u8, seed: u64) -> Result<Realization, RealizeError> {
    let mut points = BTreeMap::new();
    let mut circles = BTreeMap::new();
    points.insert(FiniteSubset::empty(n), InvPoint::Infinity);
    for i in 1..=n {
        let line = draw_line(seed, i);
        check_new_line(&line, &circles, FiniteSubset::singleton(n, i))?;
        circles.insert(FiniteSubset::singleton(n, i), line);
    }
    fill_layers(
        &mut points,
        &mut circles,
        FiniteSubset::all(n).into_iter().filter(|s| s.card() >= 2),
    )?;
    let mut r = Realization { n, seed, points, circles, verified: false };
    let report = r.verify();
    if !report.clean() {
        let label = report
            .accidental_incidences
            .first()
            .map(|(p, c)| format!("({p}, {c})"))
            .or_else(|| report.duplicate_points.first().map(|(a, b)| format!("({a}, {b})")))
            .or_else(|| report.duplicate_circles.first().map(|(a, b)| format!("({a}, {b})")))
            .unwrap_or_else(|| "unknown".into());
        return Err(RealizeError::Genericity {
            label,
            detail: report.summary(),
        });
    }
    r.set_verified(&report);
    Ok(r)
}

/// Realize `cox(n)` with the given seed; the result is fully verified.
pub fn realize(n: u8, seed: u64) -> Result<Realization, RealizeError> {
    realize_capped(n, seed, DEFAULT_REALIZE_CAP)
}

/// Same as [`realize`] with an explicit size cap.
pub fn realize_capped(n: u8, seed: u64, cap: u8) -> Result<Realization, RealizeError> {
    if n < 3 || n > cap.min(16) {
        return Err(RealizeError::BadParameter(format!(
            "realize requires 3 <= n <= {}, got {n}",
            cap.min(16)
        )));
    }
    realize_inner(n, seed)
}

fn regrounded(s: &FiniteSubset, n: u8) -> FiniteSubset {
    FiniteSubset::from_bits(n, s.bits()).expect("larger ground set")
}

/// Extend a verified realization by one ground element: add a fresh line,
/// then fill every subset containing the new element by the same induction.
/// Old assignments are unchanged (up to re-grounding of the labels).
pub fn extend(r: &Realization, seed: u64) -> Result<Realization, RealizeError> {
    if !r.verified {
        return Err(RealizeError::NotVerified);
    }
    let m = r.n + 1;
    if m > 16 {
        return Err(RealizeError::BadParameter("ground set would exceed 16".into()));
    }
    let mut points: BTreeMap<FiniteSubset, InvPoint> =
        r.points.iter().map(|(k, v)| (regrounded(k, m), v.clone())).collect();
    let mut circles: BTreeMap<FiniteSubset, InvCircle> =
        r.circles.iter().map(|(k, v)| (regrounded(k, m), v.clone())).collect();
    for (l, c) in &circles {
        if l.card() == 1 && !c.is_line() {
            return Err(RealizeError::BadParameter(format!(
                "circle {l} is not a line; the base realization must send the empty set to infinity"
            )));
        }
    }
    let line = draw_line(seed, m);
    check_new_line(&line, &circles, FiniteSubset::singleton(m, m))?;
    circles.insert(FiniteSubset::singleton(m, m), line);
    fill_layers(
        &mut points,
        &mut circles,
        FiniteSubset::all(m)
            .into_iter()
            .filter(|s| s.contains(m) && s.card() >= 2),
    )?;
    let mut out = Realization { n: m, seed, points, circles, verified: false };
    let report = out.verify();
    if !report.clean() {
        return Err(RealizeError::Genericity {
            label: format!("extension to {m}"),
            detail: report.summary(),
        });
    }
    out.set_verified(&report);
    Ok(out)
}
