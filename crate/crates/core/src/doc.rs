//! Text documents for bodies, transforms, and blend scenarios: JSON whose
//! numerals carry 17 significant digits, so doubles round-trip bit-exactly.
//! Writers emit canonical forms; loaders accept inline JSON or file paths.

use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde_json::Value;

use crate::blend::{Pair, Scenario, Target};
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::selectors::SelectorId;
use crate::transform::{AffineTransform, GroupTag};
use crate::Point;

/// One numeral at 17 significant digits, the smallest count that
/// round-trips every finite double.
pub fn numeral(x: f64) -> String {
    debug_assert!(x.is_finite(), "documents carry finite numbers only");
    format!("{x:.16e}")
}

fn push_array(out: &mut String, xs: &[f64]) {
    out.push('[');
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&numeral(*x));
    }
    out.push(']');
}

/// Point as a bare JSON array.
pub fn point_doc(p: &Point) -> String {
    let mut out = String::new();
    push_array(&mut out, p.as_slice());
    out
}

/// Body document: `{"dim": n, "vertices": [[..], ..]}` in canonical vertex
/// order.
pub fn body_doc(body: &ConvexBody) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"dim\": {}, \"vertices\": [", body.dim_ambient());
    for (i, v) in body.vertices().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        push_array(&mut out, v.as_slice());
    }
    out.push_str("]}");
    out
}

/// Transform document: `{"matrix": [[row], ..], "translation": [..]}`.
pub fn transform_doc(g: &AffineTransform) -> String {
    let mut out = String::from("{\"matrix\": [");
    let m = g.matrix();
    for i in 0..m.nrows() {
        if i > 0 {
            out.push_str(", ");
        }
        let row: Vec<f64> = (0..m.ncols()).map(|j| m[(i, j)]).collect();
        push_array(&mut out, &row);
    }
    out.push_str("], \"translation\": ");
    push_array(&mut out, g.translation().as_slice());
    out.push('}');
    out
}

/// Scenario document: `{"group": .., "base_selector": .., "pairs":
/// [{"body": .., "target": {"point": ..}|{"body": ..}}], "delta": [..]}`.
/// The delta array appears once every pair carries one.
pub fn scenario_doc(s: &Scenario) -> String {
    let mut out = String::from("{\"group\": ");
    let _ = write!(out, "\"{}\", \"base_selector\": \"{}\", ", s.group, s.base_selector);
    out.push_str("\"pairs\": [");
    for (i, pair) in s.pairs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str("{\"body\": ");
        out.push_str(&body_doc(&pair.anchor));
        out.push_str(", \"target\": ");
        match &pair.target {
            Target::Point(p) => {
                out.push_str("{\"point\": ");
                out.push_str(&point_doc(p));
                out.push('}');
            }
            Target::Body(b) => {
                out.push_str("{\"body\": ");
                out.push_str(&body_doc(b));
                out.push('}');
            }
        }
        out.push('}');
    }
    out.push(']');
    if s.pairs.iter().all(|p| p.delta.is_some()) && !s.pairs.is_empty() {
        let deltas: Vec<f64> = s.pairs.iter().map(|p| p.delta.unwrap()).collect();
        out.push_str(", \"delta\": ");
        push_array(&mut out, &deltas);
    }
    out.push('}');
    out
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("invalid document: {e}")))
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(format!("{what}: expected a number")))
}

fn number_row(v: &Value, what: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("{what}: expected an array of numbers")))?;
    arr.iter().map(|x| as_f64(x, what)).collect()
}

/// Point from a JSON value (bare array of numbers).
pub fn point_from_value(v: &Value) -> Result<Point> {
    let row = number_row(v, "point")?;
    if row.is_empty() {
        return Err(bad("point: empty array"));
    }
    Ok(Point::from_column_slice(&row))
}

/// Body from a parsed JSON value; vertices are re-canonicalized.
pub fn body_from_value(v: &Value) -> Result<ConvexBody> {
    let obj = v.as_object().ok_or_else(|| bad("body: expected an object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("body: missing integer field `dim`"))? as usize;
    let rows = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("body: missing array field `vertices`"))?;
    let mut coords = Vec::with_capacity(rows.len());
    for row in rows {
        let c = number_row(row, "body vertex")?;
        if c.len() != dim {
            return Err(bad(format!(
                "body vertex has {} coordinates, dim is {dim}",
                c.len()
            )));
        }
        coords.push(c);
    }
    ConvexBody::from_coords(&coords)
}

pub fn parse_body(text: &str) -> Result<ConvexBody> {
    body_from_value(&parse_json(text)?)
}

/// Transform from a parsed JSON value.
pub fn transform_from_value(v: &Value) -> Result<AffineTransform> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("transform: expected an object"))?;
    let rows = obj
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("transform: missing array field `matrix`"))?;
    let n = rows.len();
    let mut entries = Vec::with_capacity(n * n);
    for row in rows {
        let r = number_row(row, "matrix row")?;
        if r.len() != n {
            return Err(bad(format!("matrix row has {} entries, expected {n}", r.len())));
        }
        entries.extend(r);
    }
    let translation = number_row(
        obj.get("translation")
            .ok_or_else(|| bad("transform: missing field `translation`"))?,
        "translation",
    )?;
    AffineTransform::new(
        DMatrix::from_row_slice(n, n, &entries),
        Point::from_column_slice(&translation),
    )
}

pub fn parse_transform(text: &str) -> Result<AffineTransform> {
    transform_from_value(&parse_json(text)?)
}

fn body_from_value_or_path(v: &Value) -> Result<ConvexBody> {
    match v {
        Value::String(path) => load_body(path),
        other => body_from_value(other),
    }
}

/// Scenario from a parsed JSON value; pair bodies may be inline documents
/// or path strings.
pub fn scenario_from_value(v: &Value) -> Result<Scenario> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("scenario: expected an object"))?;
    let group = GroupTag::from_str(
        obj.get("group")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("scenario: missing string field `group`"))?,
    )?;
    let base_selector = SelectorId::from_str(
        obj.get("base_selector")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("scenario: missing string field `base_selector`"))?,
    )?;
    let raw_pairs = obj
        .get("pairs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("scenario: missing array field `pairs`"))?;
    let mut pairs = Vec::with_capacity(raw_pairs.len());
    for rp in raw_pairs {
        let po = rp
            .as_object()
            .ok_or_else(|| bad("scenario pair: expected an object"))?;
        let anchor = body_from_value_or_path(
            po.get("body")
                .ok_or_else(|| bad("scenario pair: missing field `body`"))?,
        )?;
        let to = po
            .get("target")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("scenario pair: missing object field `target`"))?;
        let target = match (to.get("point"), to.get("body")) {
            (Some(p), None) => Target::Point(point_from_value(p)?),
            (None, Some(b)) => Target::Body(body_from_value_or_path(b)?),
            _ => {
                return Err(bad(
                    "scenario target: exactly one of `point` or `body` required",
                ))
            }
        };
        pairs.push(Pair {
            anchor,
            target,
            delta: None,
        });
    }
    if let Some(dv) = obj.get("delta") {
        let deltas = number_row(dv, "delta")?;
        if deltas.len() != pairs.len() {
            return Err(bad(format!(
                "delta has {} entries for {} pairs",
                deltas.len(),
                pairs.len()
            )));
        }
        for (pair, d) in pairs.iter_mut().zip(deltas) {
            pair.delta = Some(d);
        }
    }
    Ok(Scenario {
        group,
        base_selector,
        pairs,
    })
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    scenario_from_value(&parse_json(text)?)
}

fn inline_or_file(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| bad(format!("{arg}: {e}")))
    }
}

/// Body from inline JSON or a file path.
pub fn load_body(arg: &str) -> Result<ConvexBody> {
    parse_body(&inline_or_file(arg)?)
}

/// Transform from inline JSON or a file path.
pub fn load_transform(arg: &str) -> Result<AffineTransform> {
    parse_transform(&inline_or_file(arg)?)
}

/// Scenario from inline JSON or a file path.
pub fn load_scenario(arg: &str) -> Result<Scenario> {
    parse_scenario(&inline_or_file(arg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{point, shapes};

    #[test]
    fn numerals_round_trip_bitwise() {
        for x in [
            0.1,
            1.0 / 3.0,
            2f64.sqrt(),
            -0.0,
            1e-300,
            -12345.6789e77,
            f64::MIN_POSITIVE,
        ] {
            let back: f64 = numeral(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {}", numeral(x));
        }
    }

    #[test]
    fn body_documents_round_trip() {
        let body = shapes::regular_polygon(5, &point(&[0.3, -0.7]), 1.1, 0.4).unwrap();
        let text = body_doc(&body);
        let back = parse_body(&text).unwrap();
        assert_eq!(back.vertices().len(), body.vertices().len());
        for (u, v) in back.vertices().iter().zip(body.vertices()) {
            for (a, b) in u.iter().zip(v.iter()) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
        assert_eq!(body_doc(&back), text);
    }

    #[test]
    fn body_parse_canonicalizes() {
        let text = r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1],[0.5,0.5],[0,0]]}"#;
        let body = parse_body(text).unwrap();
        assert_eq!(body.vertices().len(), 4);
    }

    #[test]
    fn body_parse_rejects_malformed() {
        assert!(matches!(parse_body("not json"), Err(Error::Document(_))));
        assert!(matches!(
            parse_body(r#"{"vertices": [[0,0]]}"#),
            Err(Error::Document(_))
        ));
        assert!(matches!(
            parse_body(r#"{"dim": 2, "vertices": [[0,0,0]]}"#),
            Err(Error::Document(_))
        ));
    }

    #[test]
    fn transform_documents_round_trip() {
        let g = AffineTransform::new(
            DMatrix::from_row_slice(2, 2, &[0.6, -0.8, 0.8, 0.6]),
            point(&[0.25, -1.5]),
        )
        .unwrap();
        let text = transform_doc(&g);
        let back = parse_transform(&text).unwrap();
        assert!(back.approx_eq(&g, 0.0));
        assert_eq!(transform_doc(&back), text);
    }

    #[test]
    fn transform_parse_rejects_singular() {
        let text = r#"{"matrix": [[1, 0], [2, 0]], "translation": [0, 0]}"#;
        assert!(matches!(parse_transform(text), Err(Error::SingularMatrix(_))));
    }

    #[test]
    fn scenario_documents_round_trip() {
        let tri = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])
            .unwrap();
        let sq = shapes::unit_square();
        let scenario = Scenario {
            group: GroupTag::Euclidean,
            base_selector: SelectorId::Steiner,
            pairs: vec![
                Pair {
                    anchor: tri,
                    target: Target::Point(point(&[0.1, 0.2])),
                    delta: Some(0.25),
                },
                Pair {
                    anchor: sq.clone(),
                    target: Target::Body(sq),
                    delta: Some(0.5),
                },
            ],
        };
        let text = scenario_doc(&scenario);
        let back = parse_scenario(&text).unwrap();
        assert_eq!(back.group, scenario.group);
        assert_eq!(back.base_selector, scenario.base_selector);
        assert_eq!(back.pairs.len(), 2);
        assert_eq!(back.pairs[0].delta, Some(0.25));
        assert!(matches!(back.pairs[1].target, Target::Body(_)));
        assert_eq!(scenario_doc(&back), text);
    }

    #[test]
    fn scenario_accepts_body_paths() {
        let dir = std::env::temp_dir().join("equigeo-doc-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tri.json");
        let tri = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])
            .unwrap();
        std::fs::write(&path, body_doc(&tri)).unwrap();
        let text = format!(
            r#"{{"group": "euclidean", "base_selector": "steiner",
               "pairs": [{{"body": "{}", "target": {{"point": [0, 0]}}}}]}}"#,
            path.display()
        );
        let scenario = parse_scenario(&text).unwrap();
        assert_eq!(scenario.pairs[0].anchor.vertices().len(), 3);
        assert_eq!(scenario.pairs[0].delta, None);
    }

    #[test]
    fn scenario_rejects_ambiguous_target() {
        let text = r#"{"group": "euclidean", "base_selector": "steiner",
            "pairs": [{"body": {"dim": 2, "vertices": [[0,0],[1,0],[0,1]]},
                       "target": {"point": [0,0], "body": {"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}}}]}"#;
        assert!(matches!(parse_scenario(text), Err(Error::Document(_))));
    }
}
