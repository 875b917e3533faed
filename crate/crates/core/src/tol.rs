//! Default tolerances. Every report records the thresholds it used.

/// Algebraic identities on unit-scale inputs.
pub const ALGEBRAIC: f64 = 1e-9;
/// Relative singular-value cutoff for rank and span membership.
pub const RANK_REL: f64 = 1e-7;
/// Absolute gap used to group eigenvalues.
pub const CLUSTER: f64 = 1e-6;
/// Central finite-difference step.
pub const FD_STEP: f64 = 1e-5;
/// Residual allowed for identities checked through finite differences.
pub const FD_CHECK: f64 = 1e-5;
/// Acceptance of a sampled point on Σ_A.
pub const SIGMA: f64 = 1e-12;
/// Acceptance of a user-supplied point on Σ_A.
pub const SIGMA_INPUT: f64 = 1e-9;
/// Closure residuals of bracket-closed subspaces.
pub const CLOSURE: f64 = 1e-10;
/// Decision threshold for span membership of A in k₁.
pub const MEMBERSHIP: f64 = 1e-7;

/// Bundle of tolerances threaded through the checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub algebraic: f64,
    pub rank: f64,
    pub fd_step: f64,
    pub fd_check: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            algebraic: ALGEBRAIC,
            rank: RANK_REL,
            fd_step: FD_STEP,
            fd_check: FD_CHECK,
        }
    }
}
