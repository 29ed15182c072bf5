//! Exact points and circles of the inversive plane.
//!
//! A point is either the single point at infinity or a rational pair; a
//! circle is an integer-coefficient equation a(x²+y²) + bx + cy + d = 0 in
//! canonical form, with a = 0 exactly for lines. Lines are the circles
//! through the point at infinity.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("duplicate points")]
    DuplicatePoints,
    #[error("degenerate circle coefficients")]
    DegenerateCircle,
    #[error("the two circles coincide")]
    SameCircle,
    #[error("circle does not pass through the given point")]
    NotIncident,
    #[error("circles are tangent at the known point; no second intersection")]
    TangentAtKnown,
}

/// A point of the inversive plane: finite rational coordinates or the single
/// point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InvPoint {
    Infinity,
    Finite { x: BigRational, y: BigRational },
}

impl InvPoint {
    pub fn finite(x: BigRational, y: BigRational) -> Self {
        InvPoint::Finite { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        InvPoint::Finite {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, InvPoint::Infinity)
    }
}

impl std::fmt::Display for InvPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvPoint::Infinity => write!(f, "inf"),
            InvPoint::Finite { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Circle or line with reduced integer coefficients: gcd 1, first nonzero
/// coefficient positive, discriminant b² + c² − 4ad > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvCircle {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl InvCircle {
    /// Canonicalize integer coefficients, rejecting degenerate equations.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, GeomError> {
        if a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() {
            return Err(GeomError::DegenerateCircle);
        }
        let mut g = a.gcd(&b).gcd(&c).gcd(&d);
        let leading = [&a, &b, &c, &d]
            .into_iter()
            .find(|v| !v.is_zero())
            .expect("some coefficient nonzero");
        if leading.is_negative() {
            g = -g;
        }
        let circle = InvCircle { a: &a / &g, b: &b / &g, c: &c / &g, d: &d / &g };
        // b² + c² − 4ad > 0: real and nondegenerate
        let disc = &circle.b * &circle.b + &circle.c * &circle.c
            - BigInt::from(4) * &circle.a * &circle.d;
        if !disc.is_positive() {
            return Err(GeomError::DegenerateCircle);
        }
        Ok(circle)
    }

    /// Clear denominators of a rational equation and canonicalize.
    pub fn from_rationals(
        a: &BigRational,
        b: &BigRational,
        c: &BigRational,
        d: &BigRational,
    ) -> Result<Self, GeomError> {
        let lcm = a
            .denom()
            .lcm(b.denom())
            .lcm(c.denom())
            .lcm(d.denom());
        let scale = BigRational::from_integer(lcm);
        let to_int = |r: &BigRational| (r * &scale).to_integer();
        InvCircle::new(to_int(a), to_int(b), to_int(c), to_int(d))
    }

    pub fn coefficients(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn is_line(&self) -> bool {
        self.a.is_zero()
    }

    /// LHS of the defining equation at a finite point.
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let a = BigRational::from_integer(self.a.clone());
        let b = BigRational::from_integer(self.b.clone());
        let c = BigRational::from_integer(self.c.clone());
        let d = BigRational::from_integer(self.d.clone());
        a * (x * x + y * y) + b * x + c * y + d
    }

    /// Exact incidence test; the point at infinity lies on lines only.
    pub fn contains(&self, p: &InvPoint) -> bool {
        match p {
            InvPoint::Infinity => self.is_line(),
            InvPoint::Finite { x, y } => self.eval(x, y).is_zero(),
        }
    }

    /// For a line, its slope (`None` inside means vertical).
    pub fn line_slope(&self) -> Option<Option<BigRational>> {
        if !self.is_line() {
            return None;
        }
        if self.c.is_zero() {
            Some(None)
        } else {
            Some(Some(BigRational::new(-self.b.clone(), self.c.clone())))
        }
    }
}

impl std::fmt::Display for InvCircle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}(x^2+y^2) + {}x + {}y + {} = 0",
            self.a, self.b, self.c, self.d
        )
    }
}

/// The line through two distinct finite points.
fn line_through(
    x1: &BigRational,
    y1: &BigRational,
    x2: &BigRational,
    y2: &BigRational,
) -> Result<InvCircle, GeomError> {
    if x1 == x2 && y1 == y2 {
        return Err(GeomError::DuplicatePoints);
    }
    let b = y2 - y1;
    let c = x1 - x2;
    let d = -(&b * x1 + &c * y1);
    InvCircle::from_rationals(&BigRational::zero(), &b, &c, &d)
}

/// The unique circle (or line) through three pairwise distinct points, at
/// most one of which is infinite. An infinite input or collinear finite
/// inputs yield a line.
pub fn circle_through(p: &InvPoint, q: &InvPoint, r: &InvPoint) -> Result<InvCircle, GeomError> {
    if p == q || p == r || q == r {
        return Err(GeomError::DuplicatePoints);
    }
    // the point at infinity is unique, so distinct inputs have at most one
    let mut finite = Vec::with_capacity(3);
    let mut infinite = 0;
    for pt in [p, q, r] {
        match pt {
            InvPoint::Infinity => infinite += 1,
            InvPoint::Finite { x, y } => finite.push((x, y)),
        }
    }
    if infinite == 1 {
        let (x1, y1) = finite[0];
        let (x2, y2) = finite[1];
        return line_through(x1, y1, x2, y2);
    }
    let (x1, y1) = finite[0];
    let (x2, y2) = finite[1];
    let (x3, y3) = finite[2];
    let s1 = x1 * x1 + y1 * y1;
    let s2 = x2 * x2 + y2 * y2;
    let s3 = x3 * x3 + y3 * y3;
    let det3 = |a1: &BigRational,
                a2: &BigRational,
                a3: &BigRational,
                b1: &BigRational,
                b2: &BigRational,
                b3: &BigRational,
                c1: &BigRational,
                c2: &BigRational,
                c3: &BigRational| {
        a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)
    };
    let one = BigRational::one;
    let a = det3(x1, x2, x3, y1, y2, y3, &one(), &one(), &one());
    if a.is_zero() {
        // collinear: the "circle" is a line
        return line_through(x1, y1, x2, y2);
    }
    let b = -det3(&s1, &s2, &s3, y1, y2, y3, &one(), &one(), &one());
    let c = det3(&s1, &s2, &s3, x1, x2, x3, &one(), &one(), &one());
    let d = -det3(&s1, &s2, &s3, x1, x2, x3, y1, y2, y3);
    InvCircle::from_rationals(&a, &b, &c, &d)
}

/// The second common point of two distinct circles through `known`. Two
/// distinct rational circles sharing a rational point meet again in a
/// rational point unless they are tangent there.
pub fn second_intersection(
    c1: &InvCircle,
    c2: &InvCircle,
    known: &InvPoint,
) -> Result<InvPoint, GeomError> {
    if c1 == c2 {
        return Err(GeomError::SameCircle);
    }
    if !c1.contains(known) || !c2.contains(known) {
        return Err(GeomError::NotIncident);
    }
    if c1.is_line() && c2.is_line() {
        // two distinct lines share the point at infinity and at most one
        // finite point; parallel lines are tangent at infinity
        match known {
            InvPoint::Infinity => {
                let det = &c1.b * &c2.c - &c2.b * &c1.c;
                if det.is_zero() {
                    return Err(GeomError::TangentAtKnown);
                }
                let det = BigRational::from_integer(det);
                let x = BigRational::from_integer(&c1.c * &c2.d - &c2.c * &c1.d) / det.clone();
                let y = BigRational::from_integer(&c1.d * &c2.b - &c2.d * &c1.b) / det;
                return Ok(InvPoint::finite(x, y));
            }
            InvPoint::Finite { .. } => return Ok(InvPoint::Infinity),
        }
    }
    // with at least one genuine circle, the known point is finite
    let (kx, ky) = match known {
        InvPoint::Infinity => return Err(GeomError::NotIncident),
        InvPoint::Finite { x, y } => (x.clone(), y.clone()),
    };
    let (line, circle) = if c1.is_line() {
        (c1.clone(), c2.clone())
    } else if c2.is_line() {
        (c2.clone(), c1.clone())
    } else {
        // radical line of the two circles carries both intersections
        let b = &c2.a * &c1.b - &c1.a * &c2.b;
        let c = &c2.a * &c1.c - &c1.a * &c2.c;
        let d = &c2.a * &c1.d - &c1.a * &c2.d;
        let radical = InvCircle::new(BigInt::zero(), b, c, d)
            .map_err(|_| GeomError::SameCircle)?;
        (radical, c1.clone())
    };
    let ca = BigRational::from_integer(circle.a.clone());
    let cb = BigRational::from_integer(circle.b.clone());
    let cc = BigRational::from_integer(circle.c.clone());
    let second = if !line.c.is_zero() {
        // y = αx + β along the line; Vieta on the x-quadratic
        let alpha = BigRational::new(-line.b.clone(), line.c.clone());
        let beta = BigRational::new(-line.d.clone(), line.c.clone());
        let quad_a = &ca * (BigRational::one() + &alpha * &alpha);
        let quad_b = BigRational::from_integer(2.into()) * &ca * &alpha * &beta + &cb + &cc * &alpha;
        let x2 = -(&quad_b / &quad_a) - &kx;
        let y2 = &alpha * &x2 + &beta;
        InvPoint::finite(x2, y2)
    } else {
        // vertical line x = γ; Vieta on the y-quadratic
        let gamma = BigRational::new(-line.d.clone(), line.b.clone());
        let y2 = -(&cc / &ca) - &ky;
        InvPoint::finite(gamma, y2)
    };
    if second == *known {
        return Err(GeomError::TangentAtKnown);
    }
    debug_assert!(c1.contains(&second) && c2.contains(&second));
    Ok(second)
}
