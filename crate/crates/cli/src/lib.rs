//! Output assembly for the `ngonal` binary: JSON documents with a stable key
//! order and fixed float formatting, plus the random curve generator used by
//! the bench command.

use ngonal_core::curve::SingularFiber;
use ngonal_core::exactalg::LaurentPoly;
use ngonal_core::numpoly::ComplexPoly;
use ngonal_core::tracker::MonodromyResult;
use ngonal_core::Curve;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::io;

/// Serializes floats at 12 significant digits so that parsing and
/// re-serializing a document is byte-identical.
struct SigFigFormatter;

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.11e}")
    }
}

/// Render a JSON value with insertion key order and fixed float formatting.
pub fn to_json_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("serializer emits UTF-8")
}

fn complex_json(x: num_complex::Complex64) -> Value {
    json!({ "re": x.re, "im": x.im })
}

pub fn fibers_json(curve: &Curve, fibers: &[SingularFiber]) -> Value {
    let items: Vec<Value> = fibers
        .iter()
        .map(|f| {
            let pairs: Vec<Value> = f.pairs.iter().map(|&(i, j, m)| json!([i, j, m])).collect();
            json!({ "x": complex_json(f.x), "pairs": pairs })
        })
        .collect();
    json!({ "curve": curve.source_text(), "n": curve.n(), "fibers": items })
}

pub fn monodromy_json(
    curve: &Curve,
    fibers: &[SingularFiber],
    results: &[MonodromyResult],
) -> Value {
    let mut doc = fibers_json(curve, fibers);
    let items: Vec<Value> = results
        .iter()
        .map(|r| {
            let fiber = match r.fiber {
                Some(x) => complex_json(x),
                None => Value::Null,
            };
            json!({
                "fiber": fiber,
                "word": r.word.letters(),
                "wordStr": r.word.to_string(),
            })
        })
        .collect();
    doc["monodromies"] = Value::Array(items);
    doc
}

pub fn alexander_json(
    curve: &Curve,
    fibers: &[SingularFiber],
    results: &[MonodromyResult],
    delta: &LaurentPoly,
) -> Value {
    let mut doc = monodromy_json(curve, fibers, results);
    let coeffs: Vec<i64> = delta
        .coeffs()
        .iter()
        .map(|c| c.to_i64().expect("normalized coefficients fit i64"))
        .collect();
    doc["alexander"] = json!({
        "coeffs": coeffs,
        "minDeg": delta.min_deg(),
        "display": ngonal_core::factored_display(delta),
    });
    doc
}

/// Random completely reducible trigonal curve of the given total degree:
/// one component of degree `degree - 2` and two lines, integer coefficients
/// in [-5, 5], resampled until the components are distinct and the fibers
/// land in distinct diagram cells.
pub fn random_trigonal_curve<R: Rng>(rng: &mut R, degree: usize) -> Curve {
    assert!(degree >= 3, "a trigonal curve needs total degree at least 3");
    let degrees = [degree - 2, 1, 1];
    loop {
        let comps: Vec<ComplexPoly> = degrees
            .iter()
            .map(|&d| random_component(rng, d))
            .collect();
        let Ok(curve) = Curve::new(comps) else { continue };
        let Ok(fibers) = curve.singular_fibers_default() else { continue };
        if fibers.is_empty() {
            continue;
        }
        let locations: Vec<_> = fibers.iter().map(|f| f.x).collect();
        if ngonal_core::rbd::Diagram::build(&locations, ngonal_core::rbd::DEFAULT_DEDUP_TOL)
            .is_ok()
        {
            return curve;
        }
    }
}

fn random_component<R: Rng>(rng: &mut R, degree: usize) -> ComplexPoly {
    let mut coeffs: Vec<f64> = (0..=degree)
        .map(|_| rng.gen_range(-5..=5i32) as f64)
        .collect();
    while coeffs[degree] == 0.0 {
        coeffs[degree] = rng.gen_range(-5..=5i32) as f64;
    }
    ComplexPoly::from_real(&coeffs)
}
