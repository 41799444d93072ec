//! JSON description of a Lie algebra with optional seminorm weights.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["P", "Q", "E"],
//!   "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}],
//!   "weights": ["1", "1", "1"]
//! }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{zero_vector, LieAlgebra, Validation};
use crate::rational::{fmt_rational, parse_rational};
use crate::seminorm::Seminorm;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileBracket {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<FileBracket>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<String>>,
}

/// A validated Lie algebra and the seminorm its file specifies.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub algebra: LieAlgebra,
    pub seminorm: Seminorm,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::AlgebraFile(msg.into())
}

/// Parses and validates an algebra description.
pub fn from_json(text: &str) -> Result<AlgebraSpec> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    if file.basis.len() != file.dim {
        return Err(bad(format!("dim is {} but {} basis names given", file.dim, file.basis.len())));
    }
    for (k, name) in file.basis.iter().enumerate() {
        if name == "z" || name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_')
            || name.starts_with(|c: char| c.is_ascii_digit())
        {
            return Err(bad(format!("invalid basis name {name:?}")));
        }
        if file.basis[..k].contains(name) {
            return Err(bad(format!("duplicate basis name {name:?}")));
        }
    }
    let mut brackets = Vec::new();
    for b in &file.brackets {
        let mut v = zero_vector(file.dim);
        for (key, value) in &b.coeffs {
            let k: usize = key.parse().map_err(|_| bad(format!("bad coefficient index {key:?}")))?;
            if k >= file.dim {
                return Err(bad(format!("coefficient index {k} out of range")));
            }
            v[k] = parse_rational(value).map_err(|e| bad(e.to_string()))?;
        }
        brackets.push((b.i, b.j, v));
    }
    let algebra = LieAlgebra::new(file.basis, brackets).map_err(|e| bad(e.to_string()))?;
    if let Validation::Violation { triple, residual } = algebra.validate() {
        let r: Vec<String> = residual.iter().map(fmt_rational).collect();
        return Err(bad(format!("Jacobi identity fails on {triple:?}, residual [{}]", r.join(", "))));
    }
    let seminorm = match file.weights {
        None => Seminorm::unit(file.dim),
        Some(ws) => {
            if ws.len() != file.dim {
                return Err(bad(format!("{} weights given for dim {}", ws.len(), file.dim)));
            }
            let ws = ws.iter().map(|w| parse_rational(w)).collect::<Result<Vec<_>>>().map_err(|e| bad(e.to_string()))?;
            Seminorm::new(ws).map_err(|e| bad(e.to_string()))?
        }
    };
    Ok(AlgebraSpec { algebra, seminorm })
}

pub fn load(path: &Path) -> Result<AlgebraSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

/// Serializes an algebra (and weights) in the file format.
pub fn to_json(algebra: &LieAlgebra, seminorm: Option<&Seminorm>) -> String {
    let brackets = algebra
        .nonzero_brackets()
        .map(|(i, j, v)| FileBracket {
            i,
            j,
            coeffs: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| (k.to_string(), fmt_rational(c)))
                .collect(),
        })
        .collect();
    let file = AlgebraFile {
        dim: algebra.dim(),
        basis: algebra.basis_names().to_vec(),
        brackets,
        weights: seminorm.map(|s| s.weights().iter().map(fmt_rational).collect()),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn heisenberg_file() {
        let spec = from_json(
            r#"{"dim": 3, "basis": ["P","Q","E"], "brackets": [{"i":0,"j":1,"coeffs":{"2":"1"}}], "weights": ["1","1","4"]}"#,
        )
        .unwrap();
        assert_eq!(spec.algebra, LieAlgebra::heisenberg());
        assert_eq!(spec.seminorm.weights(), &[int(1), int(1), int(4)]);
    }

    #[test]
    fn round_trip() {
        for alg in [LieAlgebra::sl2(), LieAlgebra::filiform4(), LieAlgebra::abelian(2)] {
            let spec = from_json(&to_json(&alg, None)).unwrap();
            assert_eq!(spec.algebra, alg);
            assert_eq!(spec.seminorm, Seminorm::unit(alg.dim()));
        }
    }

    #[test]
    fn rejections() {
        let cases = [
            r#"{"dim": 2, "basis": ["a","b"], "brackets": [], "extra": 1}"#,
            r#"{"dim": 2, "basis": ["a"], "brackets": []}"#,
            r#"{"dim": 2, "basis": ["a","a"], "brackets": []}"#,
            r#"{"dim": 2, "basis": ["a","z"], "brackets": []}"#,
            r#"{"dim": 2, "basis": ["a","b"], "brackets": [{"i":1,"j":0,"coeffs":{}}]}"#,
            r#"{"dim": 2, "basis": ["a","b"], "brackets": [{"i":0,"j":1,"coeffs":{"5":"1"}}]}"#,
            r#"{"dim": 2, "basis": ["a","b"], "brackets": [], "weights": ["1","-1"]}"#,
            r#"{"dim": 3, "basis": ["a","b","c"], "brackets": [{"i":0,"j":1,"coeffs":{"2":"1"}},{"i":0,"j":2,"coeffs":{"1":"1"}},{"i":1,"j":2,"coeffs":{"1":"1"}}]}"#,
        ];
        for c in cases {
            assert!(matches!(from_json(c), Err(Error::AlgebraFile(_))), "{c}");
        }
    }
}
