//! JSON serialization of realizations. All big integers travel as decimal
//! strings so nothing is truncated; the file carries exactly the data needed
//! to reload, re-verify, extend, and export.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{InvCircle, InvPoint, Realization, RealizeError};
use crate::subset::FiniteSubset;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("json: {0}")]
    Serde(#[from] serde_json::Error),
    #[error("bad field {field}: {detail}")]
    BadField { field: String, detail: String },
    #[error(transparent)]
    Realize(#[from] RealizeError),
}

#[derive(Serialize, Deserialize)]
struct PointDto {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    inf: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x_num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x_den: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y_num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y_den: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CircleDto {
    label: String,
    a: String,
    b: String,
    c: String,
    d: String,
}

#[derive(Serialize, Deserialize)]
struct RealizationDto {
    n: u8,
    seed: String,
    points: Vec<PointDto>,
    circles: Vec<CircleDto>,
}

/// Serialize; entries appear in canonical label order.
pub fn to_json(real: &Realization) -> String {
    let points = real
        .points()
        .map(|(l, p)| match p {
            InvPoint::Infinity => PointDto {
                label: l.to_string(),
                inf: Some(true),
                x_num: None,
                x_den: None,
                y_num: None,
                y_den: None,
            },
            InvPoint::Finite { x, y } => PointDto {
                label: l.to_string(),
                inf: None,
                x_num: Some(x.numer().to_string()),
                x_den: Some(x.denom().to_string()),
                y_num: Some(y.numer().to_string()),
                y_den: Some(y.denom().to_string()),
            },
        })
        .collect();
    let circles = real
        .circles()
        .map(|(l, c)| {
            let (a, b, cc, d) = c.coefficients();
            CircleDto {
                label: l.to_string(),
                a: a.to_string(),
                b: b.to_string(),
                c: cc.to_string(),
                d: d.to_string(),
            }
        })
        .collect();
    let dto = RealizationDto {
        n: real.n(),
        seed: real.seed().to_string(),
        points,
        circles,
    };
    serde_json::to_string_pretty(&dto).expect("serializable") + "\n"
}

fn parse_int(field: &str, s: &str) -> Result<BigInt, JsonError> {
    BigInt::from_str(s).map_err(|e| JsonError::BadField {
        field: field.to_string(),
        detail: e.to_string(),
    })
}

fn parse_ratio(field: &str, num: &Option<String>, den: &Option<String>) -> Result<BigRational, JsonError> {
    let (num, den) = match (num, den) {
        (Some(n), Some(d)) => (n, d),
        _ => {
            return Err(JsonError::BadField {
                field: field.to_string(),
                detail: "missing coordinate".into(),
            })
        }
    };
    let n = parse_int(field, num)?;
    let d = parse_int(field, den)?;
    if d == BigInt::from(0) {
        return Err(JsonError::BadField {
            field: field.to_string(),
            detail: "zero denominator".into(),
        });
    }
    Ok(BigRational::new(n, d))
}

/// Parse a realization file; the result is unverified until
/// [`Realization::verify`] is run on it.
pub fn from_json(text: &str) -> Result<Realization, JsonError> {
    let dto: RealizationDto = serde_json::from_str(text)?;
    let n = dto.n;
    let seed: u64 = dto.seed.parse().map_err(|_| JsonError::BadField {
        field: "seed".into(),
        detail: format!("not a 64-bit integer: {}", dto.seed),
    })?;
    let mut points = BTreeMap::new();
    for p in &dto.points {
        let label = FiniteSubset::parse(n, &p.label).map_err(|e| JsonError::BadField {
            field: "points.label".into(),
            detail: e.to_string(),
        })?;
        let point = if p.inf == Some(true) {
            InvPoint::Infinity
        } else {
            InvPoint::Finite {
                x: parse_ratio(&format!("point {label} x"), &p.x_num, &p.x_den)?,
                y: parse_ratio(&format!("point {label} y"), &p.y_num, &p.y_den)?,
            }
        };
        if points.insert(label, point).is_some() {
            return Err(JsonError::BadField {
                field: "points".into(),
                detail: format!("duplicate label {label}"),
            });
        }
    }
    let mut circles = BTreeMap::new();
    for c in &dto.circles {
        let label = FiniteSubset::parse(n, &c.label).map_err(|e| JsonError::BadField {
            field: "circles.label".into(),
            detail: e.to_string(),
        })?;
        let circle = InvCircle::new(
            parse_int("a", &c.a)?,
            parse_int("b", &c.b)?,
            parse_int("c", &c.c)?,
            parse_int("d", &c.d)?,
        )
        .map_err(|e| JsonError::BadField {
            field: format!("circle {label}"),
            detail: e.to_string(),
        })?;
        if circles.insert(label, circle).is_some() {
            return Err(JsonError::BadField {
                field: "circles".into(),
                detail: format!("duplicate label {label}"),
            });
        }
    }
    Ok(Realization::from_parts(n, seed, points, circles)?)
}
