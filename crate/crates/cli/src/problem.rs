use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use qfmin_core::{Matrix, QpProblem, Scalar, Tol, Vector};
use serde::Deserialize;

use crate::num::Entry;

/// Environment variable consulted for `rtol` when neither a flag nor the
/// problem file sets it.
pub const RTOL_ENV: &str = "QFMIN_RTOL";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub t: Vec<Vec<Entry>>,
    pub a: Vec<Vec<Entry>>,
    pub b: Vec<Entry>,
    #[serde(default)]
    pub tol: TolOverrides,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolOverrides {
    pub rtol: Option<f64>,
    pub pd_tol: Option<f64>,
    pub neg_tol: Option<f64>,
    pub angle_warn: Option<f64>,
}

impl TolOverrides {
    /// Values set in `self` win over those in `lower`.
    pub fn over(self, lower: Self) -> Self {
        Self {
            rtol: self.rtol.or(lower.rtol),
            pd_tol: self.pd_tol.or(lower.pd_tol),
            neg_tol: self.neg_tol.or(lower.neg_tol),
            angle_warn: self.angle_warn.or(lower.angle_warn),
        }
    }

    pub fn apply(self, mut tol: Tol) -> Result<Tol> {
        for (name, v) in [
            ("rtol", self.rtol),
            ("pd_tol", self.pd_tol),
            ("neg_tol", self.neg_tol),
            ("angle_warn", self.angle_warn),
        ] {
            if let Some(v) = v {
                ensure!(
                    v.is_finite() && v >= 0.0,
                    "tolerance {name} must be a finite non-negative number, got {v}"
                );
            }
        }
        tol.rtol = self.rtol.or(tol.rtol);
        tol.pd_tol = self.pd_tol.or(tol.pd_tol);
        tol.neg_tol = self.neg_tol.unwrap_or(tol.neg_tol);
        tol.angle_warn = self.angle_warn.unwrap_or(tol.angle_warn);
        Ok(tol)
    }
}

/// Parses the `QFMIN_RTOL` value, if any.
pub fn env_overrides(rtol: Option<&str>) -> Result<TolOverrides> {
    let rtol = rtol
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .with_context(|| format!("{RTOL_ENV}={s:?} is not a number"))
        })
        .transpose()?;
    Ok(TolOverrides {
        rtol,
        ..Default::default()
    })
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read problem file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("invalid problem file {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Any `[re, im]` entry switches the whole problem to complex arithmetic.
    pub fn is_complex(&self) -> bool {
        let rows = self.t.iter().chain(&self.a).flatten();
        rows.chain(&self.b).any(|e| e.is_complex())
    }

    pub fn t_matrix<S: Scalar<Real = f64>>(&self) -> Result<Matrix<S>> {
        to_matrix(&self.t, "t")
    }

    pub fn a_matrix<S: Scalar<Real = f64>>(&self) -> Result<Matrix<S>> {
        to_matrix(&self.a, "a")
    }

    pub fn problem<S: Scalar<Real = f64>>(&self, tol: Tol) -> Result<QpProblem<S>> {
        let b = self
            .b
            .iter()
            .map(|&e| to_scalar(e, "b"))
            .collect::<Result<Vec<S>>>()?;
        let b = Vector::new(b).context("vector b")?;
        Ok(QpProblem::with_tol(
            self.t_matrix()?,
            self.a_matrix()?,
            b,
            tol,
        )?)
    }
}

fn to_scalar<S: Scalar<Real = f64>>(e: Entry, name: &str) -> Result<S> {
    let (re, im) = e.parts();
    match S::from_parts(re, im) {
        Some(s) => Ok(s),
        None => bail!("complex entry in {name} for a real problem"),
    }
}

fn to_matrix<S: Scalar<Real = f64>>(rows: &[Vec<Entry>], name: &str) -> Result<Matrix<S>> {
    ensure!(!rows.is_empty(), "matrix {name} has no rows");
    let cols = rows[0].len();
    ensure!(cols > 0, "matrix {name} has empty rows");
    let mut data = Vec::with_capacity(rows.len() * cols);
    for (i, row) in rows.iter().enumerate() {
        ensure!(
            row.len() == cols,
            "matrix {name} is ragged: row {i} has {} entries, row 0 has {cols}",
            row.len()
        );
        for &e in row {
            data.push(to_scalar(e, name)?);
        }
    }
    Matrix::from_vec(rows.len(), cols, data).with_context(|| format!("matrix {name}"))
}
