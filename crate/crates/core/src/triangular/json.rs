use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};
use crate::triangular::{MatrixPoly, UTMatrix};

// File formats:
//   UTMatrix    {"n": 2, "ring": "Z", "entries": [["1","2"],["0","3"]]}
//   MatrixPoly  {"n": 2, "ring": "Q", "coeffs": [ <n x n array>, ... ]}
// Each n x n array is row major with ring elements as strings; strictly
// lower positions must hold zero.

/// The bare `n x n` array of entry strings.
pub fn ut_matrix_entries_json(m: &UTMatrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|e| Value::String(e.to_string())).collect()))
            .collect(),
    )
}

pub fn ut_matrix_to_json(m: &UTMatrix) -> Value {
    json!({
        "n": m.n(),
        "ring": m.ring().to_string(),
        "entries": ut_matrix_entries_json(m),
    })
}

pub fn mat_poly_to_json(f: &MatrixPoly) -> Value {
    json!({
        "n": f.n(),
        "ring": f.ring().to_string(),
        "coeffs": f.coeffs().iter().map(ut_matrix_entries_json).collect::<Vec<_>>(),
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadMatrixData(msg.into())
}

fn parse_header(value: &Value) -> Result<(usize, RingSpec)> {
    let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing or non-integer field \"n\""))? as usize;
    if n < 1 {
        return Err(bad("\"n\" must be at least 1"));
    }
    let ring = obj
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing field \"ring\""))?;
    Ok((n, RingSpec::parse(ring)?))
}

fn parse_square_array(value: &Value, n: usize, ring: RingSpec) -> Result<UTMatrix> {
    let rows = value
        .as_array()
        .ok_or_else(|| bad("expected an n x n array"))?;
    if rows.len() != n {
        return Err(bad(format!("expected {n} rows, got {}", rows.len())));
    }
    let mut parsed = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(format!("row {} is not an array", r + 1)))?;
        if row.len() != n {
            return Err(bad(format!(
                "row {} has {} entries, expected {n}",
                r + 1,
                row.len()
            )));
        }
        let mut out = Vec::with_capacity(n);
        for (c, cell) in row.iter().enumerate() {
            let text = cell
                .as_str()
                .ok_or_else(|| bad(format!("entry ({},{}) is not a string", r + 1, c + 1)))?;
            let elem = RingElem::parse(text, ring)
                .map_err(|e| bad(format!("entry ({},{}): {e}", r + 1, c + 1)))?;
            if r > c && !elem.is_zero() {
                return Err(bad(format!(
                    "strictly lower entry ({},{}) must be \"0\", got {text:?}",
                    r + 1,
                    c + 1
                )));
            }
            out.push(elem);
        }
        parsed.push(out);
    }
    UTMatrix::from_rows(ring, &parsed)
}

pub fn ut_matrix_from_json(value: &Value) -> Result<UTMatrix> {
    let (n, ring) = parse_header(value)?;
    let entries = value
        .get("entries")
        .ok_or_else(|| bad("missing field \"entries\""))?;
    parse_square_array(entries, n, ring)
}

pub fn mat_poly_from_json(value: &Value) -> Result<MatrixPoly> {
    let (n, ring) = parse_header(value)?;
    let coeffs = value
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array field \"coeffs\""))?;
    let coeffs = coeffs
        .iter()
        .map(|c| parse_square_array(c, n, ring))
        .collect::<Result<Vec<_>>>()?;
    MatrixPoly::from_coeffs(n, ring, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_roundtrip() {
        let m = UTMatrix::from_int_rows(RingSpec::Integers, &[&[1, 2], &[0, 3]]).unwrap();
        let v = ut_matrix_to_json(&m);
        assert_eq!(ut_matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn matrix_poly_roundtrip() {
        let f0 = UTMatrix::from_int_rows(RingSpec::Rationals, &[&[1, 0], &[0, 0]]).unwrap();
        let f1 = UTMatrix::from_int_rows(RingSpec::Rationals, &[&[0, 1], &[0, 2]]).unwrap();
        let f = MatrixPoly::from_coeffs(2, RingSpec::Rationals, vec![f0, f1]).unwrap();
        let v = mat_poly_to_json(&f);
        assert_eq!(mat_poly_from_json(&v).unwrap(), f);
    }

    #[test]
    fn lower_entries_validated() {
        let v = serde_json::json!({
            "n": 2,
            "ring": "Z",
            "entries": [["1", "2"], ["5", "3"]],
        });
        assert!(matches!(
            ut_matrix_from_json(&v),
            Err(Error::BadMatrixData(_))
        ));
    }

    #[test]
    fn shape_errors() {
        let v = serde_json::json!({"n": 2, "ring": "Z", "entries": [["1", "2"]]});
        assert!(ut_matrix_from_json(&v).is_err());
        let v = serde_json::json!({"n": 2, "ring": "F4", "entries": [["1","2"],["0","3"]]});
        assert!(ut_matrix_from_json(&v).is_err());
        let v = serde_json::json!({"n": 0, "ring": "Z", "entries": []});
        assert!(ut_matrix_from_json(&v).is_err());
    }

    #[test]
    fn rational_entries_parse() {
        let v = serde_json::json!({
            "n": 2,
            "ring": "Q",
            "coeffs": [[["1/2", "0"], ["0", "-1/3"]]],
        });
        let f = mat_poly_from_json(&v).unwrap();
        assert_eq!(
            f.coeff(0).get(2, 2),
            RingElem::rat_canon((-1).into(), 3.into()).unwrap()
        );
    }
}
