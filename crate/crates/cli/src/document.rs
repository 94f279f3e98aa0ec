use qfmin_core::{Diagnostic, MinimizationResult, Scalar, Vector};
use serde::{Deserialize, Serialize};

use crate::num::{Entry, Num};

/// Output of `qfmin solve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub xhat: Vec<Entry>,
    pub min_value: Num,
    pub method: String,
    pub feasibility_residual: Num,
    pub diagnostics: Vec<DiagnosticDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticDoc {
    pub code: String,
    pub message: String,
    pub value: Option<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub oracle_min: Num,
    /// Larger of the relative gaps in minimum value and in minimizer.
    pub oracle_gap: Num,
}

impl From<&Diagnostic> for DiagnosticDoc {
    fn from(d: &Diagnostic) -> Self {
        Self {
            code: d.code.as_str().to_string(),
            message: d.message.clone(),
            value: d.value.filter(|v| v.is_finite()).map(Num),
        }
    }
}

pub fn entries<S: Scalar<Real = f64>>(v: &Vector<S>) -> Vec<Entry> {
    v.iter()
        .map(|&z| {
            if S::IS_COMPLEX {
                Entry::Complex([Num(z.re()), Num(z.im())])
            } else {
                Entry::Real(Num(z.re()))
            }
        })
        .collect()
}

impl ResultDocument {
    pub fn from_result<S: Scalar<Real = f64>>(r: &MinimizationResult<S>) -> Self {
        Self {
            xhat: entries(&r.xhat),
            min_value: Num(r.min_value),
            method: r.method.as_str().to_string(),
            feasibility_residual: Num(r.feasibility_residual),
            diagnostics: r.diagnostics.iter().map(DiagnosticDoc::from).collect(),
            verify: None,
        }
    }
}

/// Output of `qfmin check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub ep: bool,
    pub ep_residual: Num,
    /// `PD`, `PSD-singular`, `indefinite` or `non-Hermitian`.
    pub class: String,
    pub rank: usize,
    /// Eigenvalues of `T` (ascending) when `T` is Hermitian.
    pub eigenvalues: Option<Vec<Num>>,
    /// For the pair `(A, B)` with `B = R⁻¹` or `U₁R†`; absent when `T` is
    /// not positive semidefinite.
    pub reverse_order: Option<ReverseOrderDoc>,
    pub principal_angle: Option<AngleDoc>,
    pub diagnostics: Vec<DiagnosticDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReverseOrderDoc {
    pub holds: bool,
    pub residual_ii: Num,
    pub residual_iii: Num,
    pub direct_residual: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleDoc {
    pub angle: Num,
    pub intersection_dim: usize,
}

/// Output of `qfmin l2demo`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct L2Table {
    pub limit: Num,
    pub rows: Vec<L2Row>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct L2Row {
    pub n: usize,
    pub min_value: Num,
    pub abs_error: Num,
}

impl L2Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,min_value,abs_error\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, r.min_value, r.abs_error));
        }
        out
    }
}
