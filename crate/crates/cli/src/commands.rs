//! Command implementations. Each returns a report plus the exit code it
//! implies; input problems come back as `InputError` instead.

use std::path::Path;

use jordanis::geometry::{self, Curvature4};
use jordanis::structure;
use jordanis::{
    build_classical, canonical_metric, deform_to_einstein, einstein_constant_sign, nilpotent_no_einstein_certificate,
    Algebra, ClassicalSpec, Element, Family, JordanError, Matrix, ValidationReport,
};
use serde_json::Value;

use crate::file::{self, AlgebraFile, Loaded};
use crate::report::{digest, Report, Tensor};
use crate::InputError;

/// Curvature entries are listed in notes only up to this dimension.
const LIST_DIM: usize = 4;

#[derive(Clone, Debug)]
pub struct Settings {
    pub tol: f64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, exit: 0 }
    }

    fn domain_error(mut report: Report, e: &JordanError) -> Self {
        report.error = Some(e.to_string());
        Outcome { report, exit: 1 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct CurvatureFlags {
    pub ricci: bool,
    pub scalar: bool,
    pub moment_map: bool,
    /// 1-based basis indices.
    pub sectional: Option<(usize, usize)>,
}

fn file_report(command: &str, loaded: &Loaded, s: &Settings) -> Report {
    Report::new(command, digest(&loaded.bytes), s.seed, s.tol)
}

fn add_checks(r: &mut Report, prefix: &str, v: &ValidationReport) {
    for c in &v.checks {
        r.value(&format!("{prefix}.{}", c.name), c.residual);
    }
    r.verdict(prefix, v.passed());
}

/// Human rendering of a coordinate vector against basis labels, dropping
/// coefficients below `tol`.
pub fn format_vector(v: &[f64], names: &[String], tol: f64) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(names) {
        if c.abs() <= tol {
            continue;
        }
        let sign = if *c < 0.0 { "-" } else { "+" };
        let mag = c.abs();
        let term = if (mag - 1.0).abs() <= tol {
            name.clone()
        } else {
            format!("{mag}*{name}")
        };
        if out.is_empty() {
            out = if sign == "-" { format!("-{term}") } else { term };
        } else {
            out = format!("{out} {sign} {term}");
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn validate(path: &Path, s: &Settings) -> Result<Outcome, InputError> {
    let loaded = file::load(path)?;
    let a = &loaded.algebra;
    let mut r = file_report("validate", &loaded, s);
    r.value("dim", a.dim());

    r.verdict("is_commutative", a.is_commutative(s.tol * a.scale().max(1.0)));
    let jordan = a.check_jordan(s.tol);
    add_checks(&mut r, "is_jordan", &jordan);
    let fundamental = a.check_fundamental_identities(s.tol);
    add_checks(&mut r, "fundamental_identities", &fundamental);

    let nil = structure::nilpotency(a, s.tol);
    r.verdict("is_nilpotent", nil.nilpotent);
    if let Some(deg) = nil.degree {
        r.value("nilpotency_degree", deg);
    }
    r.tensor(
        "power_chain",
        Tensor::vector(&nil.chain.iter().map(|&d| d as f64).collect::<Vec<_>>()),
    );

    let identity = a.identity_element(s.tol);
    r.verdict("has_identity", identity.is_some());
    if let Some(e) = &identity {
        r.tensor("identity", Tensor::vector(e.coords()));
    }
    let radical = structure::radical(a, s.tol);
    r.value("radical_dim", radical.len());
    let semisimple = jordan.passed() && structure::is_semisimple(a, s.tol);
    r.verdict("is_semisimple", semisimple);
    let formally_real = jordan.passed() && structure::is_formally_real(a, s.tol);
    r.verdict("is_formally_real", formally_real);

    if formally_real {
        match structure::jordan_frame(a, s.tol, s.seed).and_then(|f| structure::peirce_decompose(a, &f, s.tol)) {
            Ok(p) => {
                r.value("rank", p.rank);
                r.value("peirce_d", p.d);
                let rules = p.check_multiplication_rules(a, s.tol);
                r.verdict("peirce_rules", rules.passed());
            }
            Err(e) => r.note(format!("no uniform Peirce decomposition: {e}")),
        }
        if let Ok(rt) = structure::rank_and_trace(a, 0, s.seed, s.tol) {
            r.tensor("reduced_trace", Tensor::vector(&rt.trace));
        }
    }

    let exit = if jordan.passed() { 0 } else { 1 };
    if exit == 1 {
        r.error = Some(format!(
            "not a Jordan algebra (residual {:e})",
            jordan.max_residual()
        ));
    }
    Ok(Outcome { report: r, exit })
}

fn connection_tensor(a: &Algebra<f64>, loaded: &Loaded) -> Result<Tensor, JordanError> {
    let conn = geometry::levi_civita(a, &loaded.metric)?;
    let n = a.dim();
    Ok(Tensor {
        shape: vec![n, n, n],
        data: conn.coefficients().to_vec(),
        columns: None,
    })
}

fn curvature_notes(r: &mut Report, curv: &Curvature4<f64>, labels: &[String], tol: f64) {
    let n = curv.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = curv.apply_basis(i, j, k);
                if v.iter().any(|x| x.abs() > tol) {
                    r.note(format!(
                        "R({},{}){} = {}",
                        labels[i],
                        labels[j],
                        labels[k],
                        format_vector(&v, labels, tol)
                    ));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = curv.cyclic_sum(i, j, k);
                if v.iter().any(|x| x.abs() > tol) {
                    r.note(format!(
                        "cyclic sum ({},{},{}) = {}",
                        labels[i],
                        labels[j],
                        labels[k],
                        format_vector(&v, labels, tol)
                    ));
                }
            }
        }
    }
}

pub fn curvature(path: &Path, flags: &CurvatureFlags, s: &Settings) -> Result<Outcome, InputError> {
    let loaded = file::load(path)?;
    let a = &loaded.algebra;
    let n = a.dim();
    let mut r = file_report("curvature", &loaded, s);
    if let Some((i, j)) = flags.sectional {
        for (name, v) in [("sectional i", i), ("sectional j", j)] {
            if v < 1 || v > n {
                return Err(InputError::Spec(format!("{name} = {v} is outside 1..={n}")));
            }
        }
    }
    let scale2 = a.scale().max(1.0).powi(2);

    let conn = match connection_tensor(a, &loaded) {
        Ok(t) => t,
        Err(e) => return Ok(Outcome::domain_error(r, &e)),
    };
    r.tensor("connection", conn);
    let curv = match geometry::curvature(a, &loaded.metric) {
        Ok(c) => c,
        Err(e) => return Ok(Outcome::domain_error(r, &e)),
    };
    r.tensor("frame", Tensor::matrix(curv.basis()));
    r.tensor(
        "curvature",
        Tensor {
            shape: vec![n, n, n, n],
            data: curv.entries().to_vec(),
            columns: None,
        },
    );
    let cyclic = curv.cyclic_residual();
    r.tolerance("curvature", s.tol * scale2);
    r.value("curvature_max_abs", curv.max_abs());
    r.value("cyclic_residual", cyclic);
    r.verdict("cyclic_sum_vanishes", cyclic <= s.tol * scale2);
    r.verdict("flat", curv.max_abs() <= s.tol * scale2);

    // the orthonormal frame is the given basis exactly when the metric is the identity
    let standard = curv.basis().sub(&Matrix::identity(n)).max_abs() == 0.0;
    let labels: Vec<String> = if standard {
        loaded.names.clone()
    } else {
        (1..=n).map(|i| format!("f{i}")).collect()
    };
    if n <= LIST_DIM {
        if !standard {
            r.note("curvature entries are given in the orthonormal frame f (tensor `frame`)");
        }
        curvature_notes(&mut r, &curv, &labels, s.tol * scale2);
    }

    let ricci = match geometry::ricci(a, &loaded.metric) {
        Ok(x) => x,
        Err(e) => return Ok(Outcome::domain_error(r, &e)),
    };
    let einstein_tol = 10.0 * s.tol * (n as f64).sqrt() * scale2;
    r.tolerance("einstein", einstein_tol);
    let einstein = ricci.einstein_residual <= einstein_tol;
    r.verdict("einstein", einstein);
    r.value("einstein_residual", ricci.einstein_residual);
    if einstein {
        r.value("einstein_constant", ricci.sc / n as f64);
    }
    r.verdict("ricci_formula_agrees", ricci.checks.passed());

    if flags.ricci {
        r.tensor("ric", Tensor::matrix(&ricci.ric));
        r.tensor("Ric", Tensor::matrix(&ricci.ric_sym));
        r.tensor("Ric_algebra_coords", Tensor::matrix(&ricci.ric_in_algebra_coords()));
        r.tensor("mean_curvature", Tensor::vector(ricci.h.coords()));
    }
    if flags.scalar {
        r.value("scalar_curvature", ricci.sc);
    }
    if flags.moment_map {
        match geometry::moment_map(a, &loaded.metric) {
            Ok(m) => {
                r.tensor("M_mu", Tensor::matrix(&m.m_mu));
                r.tensor("m", Tensor::matrix(&m.m));
                r.value("mu_norm_sq", m.norm_sq);
            }
            Err(e) => r.note(format!("moment map: {e}")),
        }
    }
    if let Some((i, j)) = flags.sectional {
        let x = Element::basis(n, i - 1);
        let y = Element::basis(n, j - 1);
        match geometry::jordan_sectional(&curv, &loaded.metric, &x, &y) {
            Ok(k) => r.value("sectional", k),
            Err(e) => return Ok(Outcome::domain_error(r, &e)),
        }
    }
    Ok(Outcome::ok(r))
}

fn parse_family(family: &str) -> Result<Family, InputError> {
    family.parse().map_err(|e: JordanError| InputError::Spec(e.to_string()))
}

pub fn einstein(family: &str, n: usize, scan: Option<(f64, f64, usize)>, s: &Settings) -> Result<Outcome, InputError> {
    let fam = parse_family(family)?;
    let mut r = Report::new(
        "einstein",
        digest(format!("einstein {} {n}", fam.name()).as_bytes()),
        s.seed,
        s.tol,
    );
    r.value("family", fam.name());
    r.value("n", n);
    let c = build_classical::<f64>(&ClassicalSpec::new(fam, n)).map_err(|e| InputError::Spec(e.to_string()))?;
    let res = match deform_to_einstein(&c.algebra, &c.frame) {
        Ok(x) => x,
        Err(e) => return Ok(Outcome::domain_error(r, &e)),
    };
    r.value("rank", res.rank());
    r.value("d", res.d());
    r.value("dim", res.dim());
    r.value("t_star", res.t_star);
    let sign = einstein_constant_sign(&res);
    r.value("einstein_constant", sign.einstein_constant);
    r.value("scalar_curvature", sign.scalar_curvature);
    r.value("einstein_residual", res.ricci_at_t_star.relative_einstein_residual());
    r.verdict("einstein_constant_negative", sign.negative);
    add_checks(&mut r, "checks", &res.checks);
    if let Some((t0, t1, steps)) = scan {
        if steps == 0 {
            return Err(InputError::Spec("--scan needs at least one step".into()));
        }
        let rows = match res.scan(t0, t1, steps) {
            Ok(x) => x,
            Err(e) => return Ok(Outcome::domain_error(r, &e)),
        };
        let data = rows.iter().flat_map(|row| [row.t, row.residual, row.sc]).collect();
        r.tensor(
            "scan",
            Tensor {
                shape: vec![rows.len(), 3],
                data,
                columns: Some(vec!["t".into(), "residual".into(), "sc".into()]),
            },
        );
    }
    Ok(Outcome::ok(r))
}

pub fn nilcert(path: &Path, s: &Settings) -> Result<Outcome, InputError> {
    let loaded = file::load(path)?;
    let mut r = file_report("nilcert", &loaded, s);
    let cert = match nilpotent_no_einstein_certificate(&loaded.algebra, &loaded.metric) {
        Ok(x) => x,
        Err(e) => return Ok(Outcome::domain_error(r, &e)),
    };
    r.tolerance("certificate", cert.tolerance);
    r.value("trace_ric", cert.trace_ric);
    r.value("trace_m", cert.trace_m);
    r.value("h_norm_sq", cert.h_norm_sq);
    let n = loaded.algebra.dim();
    let mut ann = Vec::new();
    for z in &cert.annihilator {
        ann.extend_from_slice(z.coords());
    }
    r.tensor(
        "annihilator",
        Tensor {
            shape: vec![cert.annihilator.len(), n],
            data: ann,
            columns: None,
        },
    );
    r.tensor("ric_on_annihilator", Tensor::vector(&cert.ric_on_annihilator));
    r.tensor("m_on_annihilator", Tensor::vector(&cert.m_on_annihilator));
    r.verdict("trace_ric_negative", cert.trace_negative());
    r.verdict("annihilator_ric_nonnegative", cert.annihilator_nonnegative());
    r.verdict("einstein_ruled_out", cert.rules_out_einstein());
    Ok(Outcome::ok(r))
}

/// Builds a classical algebra with its canonical trace metric and writes it
/// to `emit` as an algebra file.
pub fn classical(family: &str, n: usize, emit: &Path, s: &Settings) -> Result<Outcome, InputError> {
    let fam = parse_family(family)?;
    let c = build_classical::<f64>(&ClassicalSpec::new(fam, n)).map_err(|e| InputError::Spec(e.to_string()))?;
    let g = canonical_metric(&c.algebra, c.expected.rank).map_err(|e| InputError::Spec(e.to_string()))?;
    let f = AlgebraFile::from_algebra(&c.algebra, Some(g.matrix()), None);
    let text = f.to_json();
    std::fs::write(emit, &text).map_err(|e| InputError::Io {
        path: emit.display().to_string(),
        message: e.to_string(),
    })?;
    let mut r = Report::new("classical", digest(text.as_bytes()), s.seed, s.tol);
    r.value("family", fam.name());
    r.value("n", n);
    r.value("rank", c.expected.rank);
    r.value("d", c.expected.d);
    r.value("dim", c.expected.dim);
    r.value("emitted", Value::String(emit.display().to_string()));
    let back = AlgebraFile::parse(&text)?.build()?;
    r.verdict("round_trip_exact", back.0.constants() == c.algebra.constants());
    Ok(Outcome::ok(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_render_tersely() {
        let names: Vec<String> = ["e1", "e2", "e3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(format_vector(&[0.0, -1.0, 0.0], &names, 1e-9), "-e2");
        assert_eq!(format_vector(&[0.5, 0.0, -2.0], &names, 1e-9), "0.5*e1 - 2*e3");
        assert_eq!(format_vector(&[0.0; 3], &names, 1e-9), "0");
    }
}
