//! Constructors for the simple formally real Jordan algebras
//! `Sym(n, R)`, `Herm(n, C)`, `Herm(n, H)` and the spin factors.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Algebra, Element};
use crate::error::{JordanError, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    SymR,
    HermC,
    HermH,
    Spin,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::SymR, Family::HermC, Family::HermH, Family::Spin];

    pub fn name(self) -> &'static str {
        match self {
            Family::SymR => "sym-r",
            Family::HermC => "herm-c",
            Family::HermH => "herm-h",
            Family::Spin => "spin",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = JordanError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sym-r" | "symr" | "sym" => Ok(Family::SymR),
            "herm-c" | "hermc" => Ok(Family::HermC),
            "herm-h" | "hermh" => Ok(Family::HermH),
            "spin" => Ok(Family::Spin),
            other => Err(JordanError::InvalidSpec(format!(
                "unknown family '{other}' (expected sym-r, herm-c, herm-h or spin)"
            ))),
        }
    }
}

/// Which classical algebra to build. `n_param` is the matrix size, or the
/// total dimension for spin factors; `f` is the spin form on `R^(n-1)`
/// (identity when absent).
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalSpec {
    pub family: Family,
    pub n_param: usize,
    pub f: Option<Vec<Vec<f64>>>,
}

impl ClassicalSpec {
    pub fn new(family: Family, n_param: usize) -> Self {
        Self {
            family,
            n_param,
            f: None,
        }
    }

    pub fn with_form(mut self, f: Vec<Vec<f64>>) -> Self {
        self.f = Some(f);
        self
    }
}

/// `(rank, d, dim)` as listed in the classification table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub rank: usize,
    pub d: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct ClassicalAlgebra<S> {
    pub spec: ClassicalSpec,
    pub algebra: Algebra<S>,
    /// Diagonal unit idempotents, or `(1, +-u) / 2` for spin factors.
    pub frame: Vec<Element<S>>,
    pub expected: Invariants,
}

pub fn expected_invariants(family: Family, n: usize) -> Invariants {
    let (rank, d) = match family {
        Family::SymR => (n, 1),
        Family::HermC => (n, 2),
        Family::HermH => (n, 4),
        Family::Spin => (2, n.saturating_sub(2)),
    };
    // a rank-one algebra has no off-diagonal Peirce blocks
    let d = if rank == 1 { 0 } else { d };
    Invariants {
        rank,
        d,
        dim: rank + rank * rank.saturating_sub(1) * d / 2,
    }
}

/// Real composition algebra of dimension 1, 2 or 4 given by its unit table.
struct Composition {
    k: usize,
}

impl Composition {
    /// `u_a u_b = sign * u_c`.
    fn unit_product(&self, a: usize, b: usize) -> (f64, usize) {
        if a == 0 {
            return (1.0, b);
        }
        if b == 0 {
            return (1.0, a);
        }
        if a == b {
            return (-1.0, 0);
        }
        // quaternion units i, j, k = 1, 2, 3: ij = k, jk = i, ki = j
        let c = 6 - a - b;
        let cyclic = matches!((a, b), (1, 2) | (2, 3) | (3, 1));
        (if cyclic { 1.0 } else { -1.0 }, c)
    }

    fn mul(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.k];
        for a in 0..self.k {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..self.k {
                if y[b] == 0.0 {
                    continue;
                }
                let (s, c) = self.unit_product(a, b);
                out[c] += s * x[a] * y[b];
            }
        }
        out
    }

    fn conj_unit(&self, a: usize) -> f64 {
        if a == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Hermitian `n x n` matrices over a composition algebra, stored entrywise.
struct HermMatrix {
    n: usize,
    k: usize,
    data: Vec<Vec<f64>>,
}

impl HermMatrix {
    fn zero(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            data: vec![vec![0.0; k]; n * n],
        }
    }

    fn entry(&self, i: usize, j: usize) -> &[f64] {
        &self.data[i * self.n + j]
    }

    fn entry_mut(&mut self, i: usize, j: usize) -> &mut Vec<f64> {
        &mut self.data[i * self.n + j]
    }

    fn mul(&self, other: &Self, alg: &Composition) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = vec![0.0; self.k];
                for m in 0..self.n {
                    let p = alg.mul(self.entry(i, m), other.entry(m, j));
                    for (a, v) in p.into_iter().enumerate() {
                        acc[a] += v;
                    }
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        out
    }
}

fn matrix_family<S: Scalar>(n: usize, k: usize) -> Algebra<S> {
    let alg = Composition { k };
    // basis: E_ii, then for i < j and every unit u_a: u_a E_ij + conj(u_a) E_ji
    let mut basis = Vec::new();
    for i in 0..n {
        let mut m = HermMatrix::zero(n, k);
        m.entry_mut(i, i)[0] = 1.0;
        basis.push(m);
    }
    let mut offdiag = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..k {
                let mut m = HermMatrix::zero(n, k);
                m.entry_mut(i, j)[a] = 1.0;
                m.entry_mut(j, i)[a] = alg.conj_unit(a);
                basis.push(m);
                offdiag.push((i, j, a));
            }
        }
    }
    let coords = |m: &HermMatrix| -> Vec<S> {
        let mut v: Vec<S> = (0..n).map(|i| S::lit(m.entry(i, i)[0])).collect();
        for &(i, j, a) in &offdiag {
            v.push(S::lit(m.entry(i, j)[a]));
        }
        v
    };
    let dim = basis.len();
    Algebra::from_table(dim, |p, q| {
        let ab = basis[p].mul(&basis[q], &alg);
        let ba = basis[q].mul(&basis[p], &alg);
        let mut sym = HermMatrix::zero(n, k);
        for (idx, e) in sym.data.iter_mut().enumerate() {
            for a in 0..k {
                e[a] = 0.5 * (ab.data[idx][a] + ba.data[idx][a]);
            }
        }
        coords(&sym)
    })
    .expect("classical table")
}

fn spin_factor<S: Scalar>(n: usize, f: &Matrix<S>) -> Algebra<S> {
    Algebra::from_table(n, |i, j| {
        let mut v = vec![S::zero(); n];
        match (i, j) {
            (0, 0) => v[0] = S::one(),
            (0, j) => v[j] = S::one(),
            (i, 0) => v[i] = S::one(),
            (i, j) => v[0] = f[(i - 1, j - 1)],
        }
        v
    })
    .expect("spin table")
}

pub fn build_classical<S: Scalar>(spec: &ClassicalSpec) -> Result<ClassicalAlgebra<S>> {
    let n = spec.n_param;
    let expected = expected_invariants(spec.family, n);
    let (algebra, frame) = match spec.family {
        Family::SymR | Family::HermC | Family::HermH => {
            if n < 1 {
                return Err(JordanError::InvalidSpec("matrix size must be at least 1".into()));
            }
            if spec.f.is_some() {
                return Err(JordanError::InvalidSpec("a form is only meaningful for spin factors".into()));
            }
            let k = match spec.family {
                Family::SymR => 1,
                Family::HermC => 2,
                _ => 4,
            };
            let a: Algebra<S> = matrix_family(n, k);
            let dim = a.dim();
            let frame = (0..n).map(|i| Element::basis(dim, i)).collect();
            (a, frame)
        }
        Family::Spin => {
            if n < 3 {
                return Err(JordanError::InvalidSpec("spin factors need n >= 3".into()));
            }
            let f: Matrix<S> = match &spec.f {
                None => Matrix::identity(n - 1),
                Some(rows) => {
                    if rows.len() != n - 1 || rows.iter().any(|r| r.len() != n - 1) {
                        return Err(JordanError::InvalidSpec(format!("spin form must be {0}x{0}", n - 1)));
                    }
                    let m = Matrix::from_rows(
                        &rows
                            .iter()
                            .map(|r| r.iter().map(|&x| S::lit(x)).collect())
                            .collect::<Vec<Vec<S>>>(),
                    );
                    let scale = m.frobenius_norm().max(S::one());
                    if m.asymmetry() > S::lit(1e-12) * scale {
                        return Err(JordanError::InvalidSpec("spin form must be symmetric".into()));
                    }
                    let ev = linalg::sym_eigen(&m).values;
                    if ev[0] <= S::lit(1e-10) * ev[n - 2].abs() {
                        return Err(JordanError::InvalidSpec("spin form must be positive definite".into()));
                    }
                    m.symmetric_part()
                }
            };
            let a = spin_factor(n, &f);
            let half = S::lit(0.5);
            let u = half / f[(0, 0)].sqrt();
            let mut h1 = vec![S::zero(); n];
            let mut h2 = vec![S::zero(); n];
            h1[0] = half;
            h2[0] = half;
            h1[1] = u;
            h2[1] = -u;
            (a, vec![Element::new(h1), Element::new(h2)])
        }
    };
    let label = match spec.family {
        Family::SymR => format!("Sym({n},R)"),
        Family::HermC => format!("Herm({n},C)"),
        Family::HermH => format!("Herm({n},H)"),
        Family::Spin => format!("Spin({n})"),
    };
    Ok(ClassicalAlgebra {
        spec: spec.clone(),
        algebra: algebra.with_label(label),
        frame,
        expected,
    })
}
