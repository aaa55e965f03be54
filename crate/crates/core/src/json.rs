//! JSON forms of the element kinds, with rationals as `"p/q"` strings.
//!
//! - `SeriesX`: `{"N":…,"D":…,"terms":[{"word":["0","g2",…],"coeff":"p/q"}]}`
//!   with letter tokens `"0"` for `x_0` and `"g<k>"` for `x_g`;
//! - `SeriesY` / module classes: terms carry `"yword":[[n,g],…]`;
//! - `CrossedElem`: terms carry `"word"` and `"g"`;
//! - `GAElem`: terms carry `"word"` as a string over `A a B b`
//!   (`X_0, X_0^{-1}, X_1, X_1^{-1}`);
//! - tensors: terms carry `"left"` and `"right"` y-words (z-words on the W
//!   side).
//!
//! Term order follows the canonical length-then-lex word order, so files
//! diff cleanly.

use serde_json::{json, Map, Value};

use crate::betti::{FreeWord, GAElem};
use crate::crossed::CrossedElem;
use crate::cyclic::CyclicElem;
use crate::dmr::DmrReport;
use crate::error::{Error, Result};
use crate::harmonic::{SeriesY, TensorSeriesY, YWord};
use crate::scalar::{format_q, parse_q};
use crate::series::{Letter, SeriesX, Word};

fn as_object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".to_string()))
}

fn get_u32(v: &Map<String, Value>, key: &str) -> Result<u32> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as u32)
        .ok_or_else(|| Error::Parse(format!("missing integer field {key:?}")))
}

fn get_terms(v: &Map<String, Value>) -> Result<&Vec<Value>> {
    v.get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"terms\" array".to_string()))
}

fn coeff_of(term: &Map<String, Value>) -> Result<crate::scalar::Q> {
    let raw = term
        .get("coeff")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing \"coeff\" string".to_string()))?;
    parse_q(raw)
}

fn word_to_tokens(w: &Word) -> Value {
    Value::Array(w.0.iter().map(|l| Value::String(l.token())).collect())
}

fn word_from_tokens(n: u32, v: &Value) -> Result<Word> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a token array".to_string()))?;
    let letters: Result<Vec<Letter>> = arr
        .iter()
        .map(|t| {
            t.as_str()
                .ok_or_else(|| Error::Parse("letter token must be a string".to_string()))
                .and_then(|s| Letter::from_token(n, s))
        })
        .collect();
    Ok(Word(letters?))
}

pub fn series_x_to_json(s: &SeriesX) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(w, c)| {
            json!({
                "word": word_to_tokens(w),
                "coeff": format_q(c),
            })
        })
        .collect();
    json!({"N": s.group_order(), "D": s.degree_cap(), "terms": terms})
}

pub fn series_x_from_json(v: &Value) -> Result<SeriesX> {
    let obj = as_object(v)?;
    let n = get_u32(obj, "N")?;
    let d = get_u32(obj, "D")? as usize;
    let mut out = SeriesX::zero(n, d);
    for t in get_terms(obj)? {
        let t = as_object(t)?;
        let w = word_from_tokens(
            n,
            t.get("word")
                .ok_or_else(|| Error::Parse("missing \"word\"".to_string()))?,
        )?;
        if w.len() > d {
            return Err(Error::Parse(format!(
                "word of length {} beyond truncation {d}",
                w.len()
            )));
        }
        out.add_term(w, coeff_of(t)?);
    }
    Ok(out)
}

fn yword_to_json(w: &YWord) -> Value {
    Value::Array(
        w.0.iter()
            .map(|(k, g)| json!([k, g.residue()]))
            .collect(),
    )
}

fn yword_from_json(n: u32, v: &Value) -> Result<YWord> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a yword array".to_string()))?;
    let mut letters = Vec::new();
    for pair in arr {
        let pair = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse("yword entries are [n, g] pairs".to_string()))?;
        let k = pair[0]
            .as_u64()
            .filter(|k| *k >= 1)
            .ok_or_else(|| Error::Parse("yword weight must be >= 1".to_string()))?;
        let g = pair[1]
            .as_u64()
            .ok_or_else(|| Error::Parse("yword group entry".to_string()))?;
        if g >= n as u64 {
            return Err(Error::Parse(format!("group entry {g} out of Z/{n}")));
        }
        letters.push((k as usize, CyclicElem::new(n, g as i64)));
    }
    Ok(YWord(letters))
}

pub fn series_y_to_json(s: &SeriesY) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(w, c)| json!({"yword": yword_to_json(w), "coeff": format_q(c)}))
        .collect();
    json!({"N": s.group_order(), "D": s.degree_cap(), "terms": terms})
}

pub fn series_y_from_json(v: &Value) -> Result<SeriesY> {
    let obj = as_object(v)?;
    let n = get_u32(obj, "N")?;
    let d = get_u32(obj, "D")? as usize;
    let mut out = SeriesY::zero(n, d);
    for t in get_terms(obj)? {
        let t = as_object(t)?;
        let w = yword_from_json(
            n,
            t.get("yword")
                .ok_or_else(|| Error::Parse("missing \"yword\"".to_string()))?,
        )?;
        if w.degree() > d {
            return Err(Error::Parse(format!(
                "yword of degree {} beyond truncation {d}",
                w.degree()
            )));
        }
        out.add_term(w, coeff_of(t)?);
    }
    Ok(out)
}

pub fn crossed_to_json(s: &CrossedElem) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|((w, g), c)| {
            json!({
                "word": word_to_tokens(w),
                "g": g.residue(),
                "coeff": format_q(c),
            })
        })
        .collect();
    json!({"N": s.group_order(), "D": s.degree_cap(), "terms": terms})
}

pub fn crossed_from_json(v: &Value) -> Result<CrossedElem> {
    let obj = as_object(v)?;
    let n = get_u32(obj, "N")?;
    let d = get_u32(obj, "D")? as usize;
    let mut out = CrossedElem::zero(n, d);
    for t in get_terms(obj)? {
        let t = as_object(t)?;
        let w = word_from_tokens(
            n,
            t.get("word")
                .ok_or_else(|| Error::Parse("missing \"word\"".to_string()))?,
        )?;
        let g = get_u32(t, "g")?;
        if g >= n {
            return Err(Error::Parse(format!("group component {g} out of Z/{n}")));
        }
        out.add_term(w, CyclicElem::new(n, g as i64), coeff_of(t)?);
    }
    Ok(out)
}

pub fn ga_to_json(a: &GAElem) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .map(|(w, c)| json!({"word": w.tokens(), "coeff": format_q(c)}))
        .collect();
    json!({"terms": terms})
}

pub fn ga_from_json(v: &Value) -> Result<GAElem> {
    let obj = as_object(v)?;
    let mut out = GAElem::zero();
    for t in get_terms(obj)? {
        let t = as_object(t)?;
        let w = t
            .get("word")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"word\" string".to_string()))?;
        out.add_term(FreeWord::from_tokens(w)?, coeff_of(t)?);
    }
    Ok(out)
}

/// Tensor with both legs in y-word coordinates (z-words on the W side).
pub fn tensor_y_to_json(t: &TensorSeriesY, kind: &str) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|((w1, w2), c)| {
            json!({
                "left": yword_to_json(w1),
                "right": yword_to_json(w2),
                "coeff": format_q(c),
            })
        })
        .collect();
    json!({
        "N": t.group_order(),
        "D": t.degree_cap(),
        "kind": kind,
        "terms": terms,
    })
}

pub fn dmr_report_to_json(r: &DmrReport) -> Value {
    let mut conditions = Map::new();
    let flag = |v: Option<bool>| match v {
        Some(b) => Value::Bool(b),
        None => Value::Null,
    };
    conditions.insert("i".to_string(), flag(r.cond_i));
    conditions.insert("ii".to_string(), Value::Bool(r.cond_ii));
    conditions.insert("iii".to_string(), flag(r.cond_iii));
    conditions.insert("iv".to_string(), flag(r.cond_iv));
    conditions.insert("v".to_string(), flag(r.cond_v));
    let mut out = Map::new();
    out.insert("conditions".to_string(), Value::Object(conditions));
    out.insert("degree".to_string(), json!(r.degree));
    out.insert("N".to_string(), json!(r.n));
    out.insert("lambda".to_string(), json!(format_q(&r.lambda)));
    out.insert("giota".to_string(), json!(r.g_iota));
    out.insert("pass".to_string(), json!(r.all_pass()));
    if let Some(v) = &r.depth_two_value {
        out.insert("depth_two".to_string(), json!(format_q(v)));
    }
    if let Some(v) = &r.difference_value {
        out.insert("difference".to_string(), json!(format_q(v)));
    }
    Value::Object(out)
}
