//! JSON envelopes, CSV tables and artifact readers.

use clap::ValueEnum;
use serde_json::{json, Value};

use pconst::geom::ExtComplex;
use pconst::ptolemy::PtolemyEstimate;
use pconst::qh::MetricSample;
use pconst::uniformity::{ConjectureReport, UniformityEstimate};
use pconst::verify::CriterionOutcome;

pub const SCHEMA: u32 = 1;
const META_KEYS: [&str; 2] = ["wall_time_ms", "elapsed_ms"];

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn strip_meta(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for key in META_KEYS {
                map.remove(key);
            }
            map.values_mut().for_each(strip_meta);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_meta),
        _ => {}
    }
}

/// Pretty JSON with the schema version; timings removed when `no_meta`.
pub fn envelope(command: &str, mut result: Value, no_meta: bool) -> String {
    if no_meta {
        strip_meta(&mut result);
    }
    let doc = json!({ "schema": SCHEMA, "command": command, "result": result });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    text.push('\n');
    text
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn ext(z: &ExtComplex) -> String {
    match z {
        ExtComplex::Finite(z) => format!("{},{}", z.re, z.im),
        ExtComplex::Infinity => "inf,inf".into(),
    }
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn ptolemy_csv(est: &PtolemyEstimate) -> String {
    let mut out = String::from("lower,closed_form,bound_lo,bound_hi");
    for i in 1..=4 {
        out.push_str(&format!(",p{i}_re,p{i}_im"));
    }
    out.push('\n');
    let (lo, hi) = est.bounds.map_or((None, None), |(lo, hi)| (Some(lo), Some(hi)));
    out.push_str(&format!("{},{},{},{}", est.lower, opt(est.closed_form), opt(lo), opt(hi)));
    for p in &est.witness.points {
        out.push(',');
        out.push_str(&ext(p));
    }
    out.push('\n');
    out
}

/// One row per sample, tagged with its family and ladder parameter.
pub fn samples_csv(rows: &[(String, Option<f64>, MetricSample)]) -> String {
    let mut out = String::from("family,param,x_re,x_im,y_re,y_im,j,k,k_method,ratio\n");
    for (family, param, s) in rows {
        let method = serde_json::to_value(s.k_method).expect("method serializes");
        out.push_str(&format!(
            "{family},{},{},{},{},{},{},{},{},{}\n",
            opt(*param),
            s.x.re,
            s.x.im,
            s.y.re,
            s.y.im,
            s.j,
            s.k,
            method.as_str().unwrap_or_default(),
            opt(s.ratio)
        ));
    }
    out
}

pub fn uniformity_csv(est: &UniformityEstimate) -> String {
    let mut rows: Vec<(String, Option<f64>, MetricSample)> = vec![("witness".into(), None, est.witness)];
    for ladder in &est.ladders {
        rows.extend(ladder.steps.iter().map(|st| (ladder.name.to_string(), Some(st.param), st.sample)));
    }
    samples_csv(&rows)
}

pub fn verify_csv(outcomes: &[CriterionOutcome]) -> String {
    let mut out = String::from("id,group,name,passed,check,measured,lo,hi,check_passed\n");
    for o in outcomes {
        for c in &o.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                o.id,
                o.group,
                quoted(o.name),
                o.passed,
                quoted(&c.label),
                c.measured,
                c.lo,
                c.hi,
                c.passed
            ));
        }
    }
    out
}

pub fn conjecture_csv(reports: &[ConjectureReport]) -> String {
    let mut out = String::from("domain,a_lower,a_sampled,a_certificate,one_plus_p_lower,p_closed_form,margin\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            quoted(&r.domain.to_string()),
            r.a_lower,
            r.a_sampled,
            opt(r.a_certificate),
            r.one_plus_p_lower,
            opt(r.p_closed_form),
            r.margin
        ));
    }
    out
}

/// Witness quadruple from a `ptolemy` JSON document.
pub fn witness_points(doc: &Value) -> Result<Vec<ExtComplex>, String> {
    let points = doc.pointer("/result/witness/points").ok_or("no result.witness.points in witness file")?;
    let points: Vec<ExtComplex> =
        serde_json::from_value(points.clone()).map_err(|e| format!("bad witness points: {e}"))?;
    if points.len() != 4 {
        return Err(format!("witness has {} points, expected 4", points.len()));
    }
    Ok(points)
}

/// Geodesic polyline from a `qhdist --geodesic` JSON document.
pub fn geodesic_points(doc: &Value) -> Result<Vec<num_complex::Complex64>, String> {
    let path = doc.pointer("/result/geodesic/path").ok_or("no result.geodesic.path; run qhdist with --geodesic")?;
    let pairs: Vec<[f64; 2]> = serde_json::from_value(path.clone()).map_err(|e| format!("bad geodesic path: {e}"))?;
    Ok(pairs.into_iter().map(|[re, im]| num_complex::Complex64::new(re, im)).collect())
}
