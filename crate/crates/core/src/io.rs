//! Plain-text formats: matrices, model descriptors, chart points and
//! candidate files.
//!
//! Matrices are written row-major with rows separated by `;`, for example
//! `B = 1 0 ; 0 -1`. Candidate files are `key = value` lines; `#` starts a
//! comment.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{ChartKind, ChartPoint};
use crate::linalg::{Mat, Vector};
use crate::model::{Case, SymplecticModel};
use crate::transitive::nilpotent::{solve_b_tilde, NilpotentCandidate};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_numbers(text: &str, line: usize) -> Result<Vec<f64>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| parse_err(line, format!("not a number: {t:?}")))
        })
        .collect()
}

/// Parse `a b ; c d`; every row must have the same length.
pub fn parse_matrix(text: &str, line: usize) -> Result<Mat> {
    let rows: Vec<Vec<f64>> = text
        .split(';')
        .map(|r| parse_numbers(r, line))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<f64>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let ncols = rows.first().map_or(0, Vec::len);
    if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(parse_err(
            line,
            "matrix rows must be nonempty and of equal length",
        ));
    }
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    Ok(Mat::from_row_slice(rows.len(), ncols, &flat))
}

pub fn parse_vector(text: &str, line: usize) -> Result<Vector> {
    Ok(Vector::from_vec(parse_numbers(text, line)?))
}

/// Shortest round-tripping decimal text of each entry.
pub fn format_matrix(m: &Mat) -> String {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| format!("{}", m[(i, j)]))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}

pub fn format_vector(v: &Vector) -> String {
    v.iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `key = value` (or `key=value`) lines, comments and blank lines skipped.
/// Returns each value with its line number.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, (String, usize)>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| parse_err(i + 1, "expected key = value"))?;
        let key = k.trim().to_string();
        if out
            .insert(key.clone(), (v.trim().to_string(), i + 1))
            .is_some()
        {
            return Err(parse_err(i + 1, format!("duplicate key {key}")));
        }
    }
    Ok(out)
}

fn scalar(map: &BTreeMap<String, (String, usize)>, key: &str, default: Option<f64>) -> Result<f64> {
    match map.get(key) {
        Some((v, line)) => v
            .parse()
            .map_err(|_| parse_err(*line, format!("{key}: not a number"))),
        None => default.ok_or_else(|| parse_err(0, format!("missing key {key}"))),
    }
}

/// Read a model descriptor as written by [`SymplecticModel::descriptor`].
pub fn parse_descriptor(text: &str) -> Result<(Case, usize)> {
    let map = parse_key_values(text)?;
    let case = map.get("case").map(|(v, _)| v.as_str()).unwrap_or("");
    let n = scalar(&map, "n", None)? as usize;
    let c = match case {
        "hyperbolic" => Case::Hyperbolic {
            k: scalar(&map, "k", Some(1.0))?,
        },
        "elliptic" => Case::Elliptic {
            k: scalar(&map, "k", Some(1.0))?,
            p: scalar(&map, "p", None)? as usize,
        },
        "nilpotent" => Case::Nilpotent {
            p: scalar(&map, "p", None)? as usize,
            q: scalar(&map, "q", None)? as usize,
        },
        other => return Err(parse_err(0, format!("unknown case {other:?}"))),
    };
    Ok((c, n))
}

/// `chart=<tag>` followed by `coords=<list>`.
pub fn format_chart_point(cp: &ChartPoint) -> String {
    format!(
        "chart={}\ncoords={}\n",
        cp.kind().tag(),
        format_vector(&cp.coords())
    )
}

pub fn parse_chart_point(model: &SymplecticModel, text: &str) -> Result<ChartPoint> {
    let map = parse_key_values(text)?;
    let (tag, line) = map
        .get("chart")
        .ok_or_else(|| parse_err(0, "missing key chart"))?;
    let kind = ChartKind::from_tag(tag)
        .ok_or_else(|| parse_err(*line, format!("unknown chart {tag:?}")))?;
    let (coords, line) = map
        .get("coords")
        .ok_or_else(|| parse_err(0, "missing key coords"))?;
    ChartPoint::from_coords(model, kind, parse_vector(coords, *line)?.as_slice())
}

/// Read a candidate block. Keys: `B` (required), `c` (required), `a`,
/// `a_tilde`, `b_tilde`, `c_tilde`, `epsilon`. A missing `b_tilde` is solved
/// from `a_tilde`; missing vectors default to zero.
pub fn parse_candidate(text: &str) -> Result<NilpotentCandidate> {
    let map = parse_key_values(text)?;
    const KNOWN: [&str; 7] = ["B", "c", "a", "a_tilde", "b_tilde", "c_tilde", "epsilon"];
    if let Some((k, (_, line))) = map.iter().find(|(k, _)| !KNOWN.contains(&k.as_str())) {
        return Err(parse_err(*line, format!("unknown key {k}")));
    }
    let (b_text, b_line) = map.get("B").ok_or_else(|| parse_err(0, "missing key B"))?;
    let b = parse_matrix(b_text, *b_line)?;
    let m2 = b.nrows();
    let vec_or_zero = |key: &str| -> Result<Vector> {
        match map.get(key) {
            Some((v, line)) => {
                let out = parse_vector(v, *line)?;
                if out.len() != m2 {
                    return Err(parse_err(*line, format!("{key} must have {m2} entries")));
                }
                Ok(out)
            }
            None => Ok(Vector::zeros(m2)),
        }
    };
    let c = scalar(&map, "c", None)?;
    let a_tilde = vec_or_zero("a_tilde")?;
    let b_tilde = if map.contains_key("b_tilde") {
        vec_or_zero("b_tilde")?
    } else {
        solve_b_tilde(&b, &a_tilde, c)
    };
    Ok(NilpotentCandidate {
        b,
        b_tilde,
        a_tilde,
        c_tilde: vec_or_zero("c_tilde")?,
        a: scalar(&map, "a", Some(0.0))?,
        c,
        epsilon: scalar(&map, "epsilon", Some(-1.0))?,
    })
}

pub fn format_candidate(c: &NilpotentCandidate) -> String {
    format!(
        "B = {}\nc = {}\na = {}\na_tilde = {}\nb_tilde = {}\nc_tilde = {}\nepsilon = {}\n",
        format_matrix(&c.b),
        c.c,
        c.a,
        format_vector(&c.a_tilde),
        format_vector(&c.b_tilde),
        format_vector(&c.c_tilde),
        c.epsilon
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_model;

    #[test]
    fn matrix_round_trip() {
        let m = parse_matrix("1 0 ; 0 -1", 1).unwrap();
        assert_eq!(m, Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]));
        assert_eq!(parse_matrix(&format_matrix(&m), 1).unwrap(), m);
        assert!(parse_matrix("1 2 ; 3", 1).is_err());
    }

    #[test]
    fn candidate_round_trip() {
        let c = parse_candidate("# sample\nB = 1 0 ; 0 1\nc = 1\na_tilde = 0.5 -1\na = 0.25\n")
            .unwrap();
        assert_eq!(parse_candidate(&format_candidate(&c)).unwrap(), c);
        assert!(parse_candidate("B = 1 0 ; 0 1\nc = 1\nbogus = 2\n").is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let (m, _) = build_model(Case::Nilpotent { p: 2, q: 1 }, 3).unwrap();
        assert_eq!(
            parse_descriptor(&m.descriptor()).unwrap(),
            (Case::Nilpotent { p: 2, q: 1 }, 3)
        );
    }

    #[test]
    fn chart_point_round_trip() {
        let (m, _) = build_model(Case::Nilpotent { p: 2, q: 1 }, 2).unwrap();
        let cp = ChartPoint::Darboux {
            y0: 0.1,
            y: Vector::from_vec(vec![0.2, -0.3]),
            gamma: 1.5,
        };
        assert_eq!(parse_chart_point(&m, &format_chart_point(&cp)).unwrap(), cp);
    }
}
