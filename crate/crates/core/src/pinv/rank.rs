use crate::scalar::RealScalar;
use crate::tol::TolConfig;

/// Outcome of thresholding a singular value sequence.
///
/// Singular values above `threshold` are inverted by [`pinv`](super::pinv);
/// the rest are treated as exact zeros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankDecision<R> {
    pub rank: usize,
    pub threshold: R,
    /// `+∞` when nothing is kept.
    pub sigma_kept_min: R,
    /// Zero when nothing is dropped.
    pub sigma_dropped_max: R,
    /// `sigma_kept_min / σ_max < warn_ratio`.
    pub ill_conditioned: bool,
}

impl<R: RealScalar> RankDecision<R> {
    /// `σ_kept_min / σ_max`, or one for rank zero.
    pub fn kept_ratio(&self, sigma_max: R) -> R {
        if self.rank == 0 || sigma_max == R::zero() {
            R::one()
        } else {
            self.sigma_kept_min / sigma_max
        }
    }
}

/// Numerical rank of a `shape`-sized operator from its descending singular
/// values: `threshold = max(rtol·σ_max, abs_floor)`.
pub fn rank_decide<R: RealScalar>(
    sigma: &[R],
    tol: &TolConfig<R>,
    shape: (usize, usize),
) -> RankDecision<R> {
    debug_assert!(sigma.windows(2).all(|w| w[0] >= w[1]));
    let sigma_max = sigma.first().copied().unwrap_or_else(R::zero);
    let threshold = (tol.rank_rtol(shape.0, shape.1) * sigma_max).max(tol.abs_floor);
    let rank = sigma.iter().take_while(|&&s| s > threshold).count();
    let sigma_kept_min = if rank == 0 {
        R::infinity()
    } else {
        sigma[rank - 1]
    };
    let sigma_dropped_max = sigma.get(rank).copied().unwrap_or_else(R::zero);
    let ill_conditioned = rank > 0 && sigma_kept_min / sigma_max < tol.warn_ratio;
    RankDecision {
        rank,
        threshold,
        sigma_kept_min,
        sigma_dropped_max,
        ill_conditioned,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_rtol(rtol: f64) -> TolConfig<f64> {
        TolConfig {
            rtol: Some(rtol),
            ..Default::default()
        }
    }

    #[test]
    fn machine_noise_tail_is_dropped() {
        let d = rank_decide(&[3.0, 1.0, 1e-16], &with_rtol(1e-12), (3, 3));
        assert_eq!(d.rank, 2);
        assert_eq!(d.threshold, 3e-12);
        assert_eq!(d.sigma_kept_min, 1.0);
        assert_eq!(d.sigma_dropped_max, 1e-16);
        assert!(!d.ill_conditioned);
    }

    #[test]
    fn all_zero_is_rank_zero() {
        let d = rank_decide(&[0.0, 0.0], &TolConfig::default(), (2, 2));
        assert_eq!(d.rank, 0);
        assert_eq!(d.threshold, 1e-300);
        assert!(d.sigma_kept_min > d.threshold);
    }

    #[test]
    fn small_but_kept_value_warns() {
        // 1e-6 > 1e-12·1, so it is kept; 1e-6 < warn_ratio = 1e-5 flags it.
        let d = rank_decide(&[1.0, 1e-6], &with_rtol(1e-12), (2, 2));
        assert_eq!(d.rank, 2);
        assert!(d.ill_conditioned);
        assert_eq!(d.kept_ratio(1.0), 1e-6);
    }

    #[test]
    fn default_rtol_scales_with_shape() {
        let s = [1.0, 4.0 * f64::EPSILON];
        assert_eq!(rank_decide(&s, &TolConfig::default(), (2, 2)).rank, 2);
        assert_eq!(rank_decide(&s, &TolConfig::default(), (2, 8)).rank, 1);
    }
}
