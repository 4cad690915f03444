//! JSON domain spec parsing with strict key checking.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::{Map, Value};

use super::Domain;
use crate::error::{Error, Result};


fn allowed_keys(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "sector" => &["alpha"],
        "double_sector" => &["alpha", "beta"],
        "triangle" => &["vertices"],
        "parallelogram" => &["r", "s", "alpha", "origin", "rotation"],
        "rhombus" => &["alpha"],
        "rectangle" => &["width", "height"],
        "ellipse" => &["a", "b"],
        "disk" => &["center", "radius"],
        "arc_slit" => &["a"],
        "half_plane" | "punctured_plane" | "twice_punctured_plane" | "disk_exterior" => &[],
        _ => return None,
    })
}

fn spec_err(msg: impl Into<String>) -> Error {
    Error::Spec(msg.into())
}

fn number(obj: &Map<String, Value>, key: &str) -> Result<f64> {
    match obj.get(key) {
        Some(v) => v
            .as_f64()
            .ok_or_else(|| spec_err(format!("\"{key}\" must be a number"))),
        None => Err(spec_err(format!("missing \"{key}\""))),
    }
}

fn angle(obj: &Map<String, Value>, key: &str) -> Result<f64> {
    let v = number(obj, key)?;
    if v.abs() > 2.0 * PI {
        return Err(spec_err(format!(
            "\"{key}\" = {v} exceeds 2π; angles are in radians (degrees are not accepted)"
        )));
    }
    Ok(v)
}

fn point(v: &Value, what: &str) -> Result<Complex64> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([x, y]) => match (x.as_f64(), y.as_f64()) {
            (Some(x), Some(y)) => Ok(Complex64::new(x, y)),
            _ => Err(spec_err(format!("{what} must be [x, y] numbers"))),
        },
        _ => Err(spec_err(format!("{what} must be a two-element array [x, y]"))),
    }
}

/// Parses a domain spec such as `{"type": "sector", "alpha": 1.0471975512}`.
///
/// Unknown keys are rejected; angles are radians only.
pub fn parse_domain_spec(text: &str) -> Result<Domain> {
    let value: Value = serde_json::from_str(text).map_err(|e| spec_err(format!("invalid JSON: {e}")))?;
    domain_from_value(&value)
}

pub(crate) fn domain_from_value(value: &Value) -> Result<Domain> {
    let obj = value
        .as_object()
        .ok_or_else(|| spec_err("domain spec must be a JSON object"))?;
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| spec_err("missing string field \"type\""))?;
    let allowed = allowed_keys(kind).ok_or_else(|| spec_err(format!("unknown domain type \"{kind}\"")))?;
    for key in obj.keys().filter(|k| k.as_str() != "type") {
        if key.contains("deg") {
            return Err(spec_err(format!(
                "key \"{key}\": degrees are not accepted; give angles in radians"
            )));
        }
        if !allowed.contains(&key.as_str()) {
            return Err(spec_err(format!("unknown key \"{key}\" for domain type \"{kind}\"")));
        }
    }
    let invalid = |e: Error| match e {
        Error::InvalidDomain(m) => spec_err(m),
        other => other,
    };
    let domain = match kind {
        "sector" => Domain::sector(angle(obj, "alpha")?),
        "double_sector" => Domain::double_sector(angle(obj, "alpha")?, angle(obj, "beta")?),
        "triangle" => {
            let v = obj
                .get("vertices")
                .and_then(Value::as_array)
                .ok_or_else(|| spec_err("\"vertices\" must be an array of three points"))?;
            if v.len() != 3 {
                return Err(spec_err("\"vertices\" must hold exactly three points"));
            }
            Domain::triangle(point(&v[0], "vertex")?, point(&v[1], "vertex")?, point(&v[2], "vertex")?)
        }
        "parallelogram" => {
            let origin = match obj.get("origin") {
                Some(v) => point(v, "\"origin\"")?,
                None => Complex64::new(0.0, 0.0),
            };
            let rotation = if obj.contains_key("rotation") { angle(obj, "rotation")? } else { 0.0 };
            Domain::parallelogram_placed(origin, number(obj, "r")?, number(obj, "s")?, angle(obj, "alpha")?, rotation)
        }
        "rhombus" => Domain::rhombus(angle(obj, "alpha")?),
        "rectangle" => Domain::rectangle(number(obj, "width")?, number(obj, "height")?),
        "ellipse" => Domain::ellipse(number(obj, "a")?, number(obj, "b")?),
        "disk" => {
            let center = match obj.get("center") {
                Some(v) => point(v, "\"center\"")?,
                None => Complex64::new(0.0, 0.0),
            };
            let radius = if obj.contains_key("radius") { number(obj, "radius")? } else { 1.0 };
            Domain::disk(center, radius)
        }
        "arc_slit" => Domain::arc_slit(angle(obj, "a")?),
        "half_plane" => Ok(Domain::HalfPlane),
        "punctured_plane" => Ok(Domain::PuncturedPlane),
        "twice_punctured_plane" => Ok(Domain::TwicePuncturedPlane),
        "disk_exterior" => Ok(Domain::DiskExterior),
        _ => unreachable!("type checked against the key table"),
    };
    domain.map_err(invalid)
}
