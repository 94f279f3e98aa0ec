//! Numerical tolerances.
//!
//! Every threshold used to turn a floating-point quantity into a decision
//! (rank, definiteness, feasibility, commutation) lives here so callers can
//! override them in one place.

use crate::scalar::RealScalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolConfig<R> {
    /// Relative singular value cut-off. `None` means `max(rows, cols)·ε`.
    pub rtol: Option<R>,
    /// Absolute floor under the rank threshold.
    pub abs_floor: R,
    /// Relative definiteness gate (eigenvalues `<= pd_tol·λ_max` count as zero).
    /// `None` reuses the rank cut-off.
    pub pd_tol: Option<R>,
    /// Eigenvalues in `[-neg_tol·‖T‖, 0)` are clamped to zero.
    pub neg_tol: R,
    /// Factorization reconstruction tolerance.
    pub ktol: R,
    /// Hermitian check: `‖A - A*‖ <= htol·‖A‖`.
    pub htol: R,
    /// Feasibility of `Ax = b`: `‖AA†b - b‖ <= feas_tol·max(1, ‖b‖)`.
    pub feas_tol: R,
    /// EP test, lattice invariance and commutator tolerances.
    pub ep_tol: R,
    pub lat_tol: R,
    pub commute_tol: R,
    /// Principal angles below this raise a warning.
    pub angle_warn: R,
    /// `σ_min/σ_max` below this raises an ill-conditioning warning.
    pub warn_ratio: R,
}

impl<R: RealScalar> Default for TolConfig<R> {
    fn default() -> Self {
        let tol = R::default_tol();
        Self {
            rtol: None,
            abs_floor: R::min_positive_value().max(R::lit(1e-300)),
            pd_tol: None,
            neg_tol: tol,
            ktol: tol,
            htol: tol,
            feas_tol: R::lit(1e-8).max(tol),
            ep_tol: tol,
            lat_tol: tol,
            commute_tol: tol,
            angle_warn: R::lit(1e-6).max(R::epsilon().sqrt()),
            warn_ratio: R::lit(1e-5),
        }
    }
}

impl<R: RealScalar> TolConfig<R> {
    /// Relative rank cut-off for a `rows × cols` operator.
    pub fn rank_rtol(&self, rows: usize, cols: usize) -> R {
        self.rtol
            .unwrap_or_else(|| R::epsilon() * R::lit(rows.max(cols).max(1) as f64))
    }

    /// Relative definiteness gate for an `n × n` quadratic form.
    pub fn pd_rtol(&self, n: usize) -> R {
        self.pd_tol.unwrap_or_else(|| self.rank_rtol(n, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let t = TolConfig::<f64>::default();
        assert_eq!(t.abs_floor, 1e-300);
        assert_eq!(t.neg_tol, 1e-10);
        assert_eq!(t.rank_rtol(3, 5), 5.0 * f64::EPSILON);
        assert_eq!(t.pd_rtol(4), 4.0 * f64::EPSILON);
        let t = TolConfig {
            rtol: Some(1e-12),
            ..t
        };
        assert_eq!(t.pd_rtol(4), 1e-12);
    }
}
