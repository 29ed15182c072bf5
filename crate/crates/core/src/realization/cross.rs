//! The cross ratio of four concyclic points, computed through the planar
//! coordinates read as complex numbers. For concyclic inputs the value is an
//! exact real rational; the standard limit rules cover the point at infinity.

use num::{BigRational, Zero};
use thiserror::Error;

use super::circle::{circle_through, InvPoint};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrossRatioError {
    #[error("cross ratio requires four distinct points")]
    DuplicatePoints,
    #[error("at most one input may be the point at infinity")]
    TooManyInfinite,
    #[error("the four points are not concyclic")]
    NotConcyclic,
}

/// Rational complex number; only what the cross ratio needs.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CRat {
    re: BigRational,
    im: BigRational,
}

impl CRat {
    fn sub(&self, other: &CRat) -> CRat {
        CRat { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    fn mul(&self, other: &CRat) -> CRat {
        CRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn div(&self, other: &CRat) -> Option<CRat> {
        let norm = &other.re * &other.re + &other.im * &other.im;
        if norm.is_zero() {
            return None;
        }
        let conj = CRat { re: other.re.clone(), im: -other.im.clone() };
        let num = self.mul(&conj);
        Some(CRat { re: num.re / norm.clone(), im: num.im / norm })
    }
}

fn as_complex(p: &InvPoint) -> Option<CRat> {
    match p {
        InvPoint::Infinity => None,
        InvPoint::Finite { x, y } => Some(CRat { re: x.clone(), im: y.clone() }),
    }
}

/// Cross ratio (z₁, z₂; z₃, z₄) = ((z₁−z₃)(z₂−z₄)) / ((z₁−z₄)(z₂−z₃)),
/// with the usual cancellation when one point is infinite. The inputs must
/// be four distinct points on a common circle of the inversive plane.
pub fn cross_ratio(
    z1: &InvPoint,
    z2: &InvPoint,
    z3: &InvPoint,
    z4: &InvPoint,
) -> Result<BigRational, CrossRatioError> {
    let pts = [z1, z2, z3, z4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i] == pts[j] {
                return Err(CrossRatioError::DuplicatePoints);
            }
        }
    }
    if pts.iter().filter(|p| p.is_infinity()).count() > 1 {
        return Err(CrossRatioError::TooManyInfinite);
    }
    // concyclicity: the circle through the first three must carry the fourth
    let c = circle_through(z1, z2, z3).map_err(|_| CrossRatioError::NotConcyclic)?;
    if !c.contains(z4) {
        return Err(CrossRatioError::NotConcyclic);
    }

    let value = match (as_complex(z1), as_complex(z2), as_complex(z3), as_complex(z4)) {
        (Some(a), Some(b), Some(c3), Some(d)) => {
            let num = a.sub(&c3).mul(&b.sub(&d));
            let den = a.sub(&d).mul(&b.sub(&c3));
            num.div(&den).ok_or(CrossRatioError::DuplicatePoints)?
        }
        (None, Some(b), Some(c3), Some(d)) => {
            b.sub(&d).div(&b.sub(&c3)).ok_or(CrossRatioError::DuplicatePoints)?
        }
        (Some(a), None, Some(c3), Some(d)) => {
            a.sub(&c3).div(&a.sub(&d)).ok_or(CrossRatioError::DuplicatePoints)?
        }
        (Some(a), Some(b), None, Some(d)) => {
            b.sub(&d).div(&a.sub(&d)).ok_or(CrossRatioError::DuplicatePoints)?
        }
        (Some(a), Some(b), Some(c3), None) => {
            a.sub(&c3).div(&b.sub(&c3)).ok_or(CrossRatioError::DuplicatePoints)?
        }
        _ => unreachable!("at most one infinite input"),
    };
    // concyclic points have a real cross ratio; exactness makes this a hard
    // invariant rather than a tolerance
    debug_assert!(value.im.is_zero(), "cross ratio of concyclic points must be real");
    if !value.im.is_zero() {
        return Err(CrossRatioError::NotConcyclic);
    }
    Ok(value.re)
}
