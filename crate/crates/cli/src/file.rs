//! The algebra file format: a JSON document listing nonzero basis products
//! with 1-based indices, an optional Gram matrix and optional basis names.

use std::collections::BTreeMap;
use std::path::Path;

use jordanis::{Algebra, InnerProduct, Matrix};
use serde::{Deserialize, Serialize};

use crate::InputError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative_close: Option<bool>,
}

/// A parsed and validated file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub file: AlgebraFile,
    pub algebra: Algebra<f64>,
    pub metric: InnerProduct<f64>,
    pub names: Vec<String>,
    pub bytes: Vec<u8>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            InputError::Parse {
                line: e.line(),
                column: e.column(),
                message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
            }
        })
    }

    /// Structure constants and metric, after checking indices, lengths,
    /// duplicates and the metric.
    pub fn build(&self) -> Result<(Algebra<f64>, InnerProduct<f64>), InputError> {
        let n = self.dim;
        let field = |f: String, m: String| InputError::Field { field: f, message: m };
        if n == 0 {
            return Err(field("dim".into(), "must be at least 1".into()));
        }
        let mut table: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
        for (k, p) in self.products.iter().enumerate() {
            for (name, v) in [("i", p.i), ("j", p.j)] {
                if v < 1 || v > n {
                    return Err(field(format!("products[{k}].{name}"), format!("index {v} is outside 1..={n}")));
                }
            }
            if p.coeffs.len() != n {
                return Err(field(
                    format!("products[{k}].coeffs"),
                    format!("expected {n} coefficients, found {}", p.coeffs.len()),
                ));
            }
            if let Some(bad) = p.coeffs.iter().position(|c| !c.is_finite()) {
                return Err(field(format!("products[{k}].coeffs[{bad}]"), "not a finite number".into()));
            }
            if table.insert((p.i - 1, p.j - 1), p.coeffs.clone()).is_some() {
                return Err(field(
                    format!("products[{k}]"),
                    format!("duplicate entry for ({}, {})", p.i, p.j),
                ));
            }
        }
        if self.commutative_close.unwrap_or(false) {
            let explicit: Vec<((usize, usize), Vec<f64>)> = table.iter().map(|(k, v)| (*k, v.clone())).collect();
            for ((i, j), v) in explicit {
                table.entry((j, i)).or_insert(v);
            }
        }
        let mut c = vec![0.0; n * n * n];
        for ((i, j), v) in &table {
            c[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(v);
        }
        let algebra = Algebra::new(n, c).map_err(|e| field("products".into(), e.to_string()))?;
        let metric = match &self.metric {
            None => InnerProduct::identity(n),
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(field("metric".into(), format!("must be a {n}x{n} matrix")));
                }
                InnerProduct::new(Matrix::from_rows(rows))
                    .map_err(|_| field("metric".into(), "must be symmetric positive definite".into()))?
            }
        };
        if let Some(names) = &self.names {
            if names.len() != n {
                return Err(field("names".into(), format!("expected {n} labels, found {}", names.len())));
            }
        }
        Ok((algebra, metric))
    }

    /// File listing every nonzero basis product of `a` explicitly.
    pub fn from_algebra(a: &Algebra<f64>, metric: Option<&Matrix<f64>>, names: Option<Vec<String>>) -> Self {
        let n = a.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = a.basis_product(i, j);
                if v.iter().any(|&x| x != 0.0) {
                    products.push(ProductEntry { i: i + 1, j: j + 1, coeffs: v });
                }
            }
        }
        AlgebraFile {
            dim: n,
            products,
            metric: metric.map(|m| (0..n).map(|i| m.row(i)).collect()),
            names,
            commutative_close: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("file serializes") + "\n"
    }
}

pub fn load(path: &Path) -> Result<Loaded, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| InputError::Parse {
        line: 0,
        column: 0,
        message: "file is not valid UTF-8".into(),
    })?;
    let file = AlgebraFile::parse(&text)?;
    let (algebra, metric) = file.build()?;
    let names = file
        .names
        .clone()
        .unwrap_or_else(|| (1..=file.dim).map(|i| format!("e{i}")).collect());
    Ok(Loaded {
        file,
        algebra,
        metric,
        names,
        bytes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutative_close_fills_mirror() {
        let f = AlgebraFile::parse(r#"{"dim": 2, "products": [{"i": 1, "j": 2, "coeffs": [0, 1]}], "commutative_close": true}"#)
            .unwrap();
        let (a, _) = f.build().unwrap();
        assert_eq!(a.basis_product(1, 0), vec![0.0, 1.0]);
        assert!(a.is_commutative(0.0));
    }

    #[test]
    fn duplicates_and_ranges_are_rejected() {
        let dup = r#"{"dim": 1, "products": [{"i": 1, "j": 1, "coeffs": [1]}, {"i": 1, "j": 1, "coeffs": [2]}]}"#;
        let e = AlgebraFile::parse(dup).unwrap().build().unwrap_err();
        assert!(e.to_string().contains("products[1]"), "{e}");
        let range = r#"{"dim": 1, "products": [{"i": 2, "j": 1, "coeffs": [1]}]}"#;
        let e = AlgebraFile::parse(range).unwrap().build().unwrap_err();
        assert!(e.to_string().contains("products[0].i"), "{e}");
        let len = r#"{"dim": 2, "products": [{"i": 1, "j": 1, "coeffs": [1]}]}"#;
        assert!(AlgebraFile::parse(len).unwrap().build().is_err());
        let metric = r#"{"dim": 2, "metric": [[1, 0], [0, -1]]}"#;
        assert!(AlgebraFile::parse(metric).unwrap().build().is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = AlgebraFile::parse("{\n  \"dim\": 2,\n  \"prodcts\": []\n}").unwrap_err();
        match e {
            InputError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}
