use std::fmt;

/// Normalized decoding parameters: every field is a fraction of `n`.
///
/// `rho = k/n`, `omega = w/n` (GV-linked), `lambda = ℓ/n`, `pi_p = p/n`,
/// `lambda_prime = ℓ'/n`, `eps_rel = ε/n`, `rho_r = log2(r)/n` for the
/// quantum-walk register size.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RateProfile {
    pub rho: f64,
    pub omega: f64,
    pub lambda: f64,
    pub pi_p: f64,
    pub lambda_prime: f64,
    pub eps_rel: f64,
    pub rho_r: f64,
}

impl RateProfile {
    #[must_use]
    pub fn new(rho: f64, omega: f64) -> Self {
        Self {
            rho,
            omega,
            ..Self::default()
        }
    }
}

/// Per-phase base-2 exponents (per `n`) of an algorithm model. Phases that
/// do not apply to a model are `NaN`.
#[derive(Clone, Copy, Debug)]
pub struct CostBreakdown {
    pub setup: f64,
    pub update: f64,
    pub check: f64,
    pub walk_total: f64,
    pub grover_total: f64,
    pub total: f64,
    pub space: f64,
}

impl CostBreakdown {
    pub(crate) fn infeasible() -> Self {
        Self {
            setup: f64::NAN,
            update: f64::NAN,
            check: f64::NAN,
            walk_total: f64::NAN,
            grover_total: f64::NAN,
            total: f64::INFINITY,
            space: f64::NAN,
        }
    }

    #[must_use]
    pub fn is_feasible(&self) -> bool {
        self.total.is_finite()
    }
}

/// The eleven cost models of the decoding laboratory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgorithmModel {
    PrangeC,
    PrangeQ,
    DumerC,
    DumerSsQ,
    MmtC,
    MmtQ,
    BjmmC,
    BjmmQ,
    NnDumerC,
    NnDumerQ,
    NnSsDumerQ,
}

impl AlgorithmModel {
    pub const ALL: [AlgorithmModel; 11] = [
        AlgorithmModel::PrangeC,
        AlgorithmModel::PrangeQ,
        AlgorithmModel::DumerC,
        AlgorithmModel::DumerSsQ,
        AlgorithmModel::MmtC,
        AlgorithmModel::MmtQ,
        AlgorithmModel::BjmmC,
        AlgorithmModel::BjmmQ,
        AlgorithmModel::NnDumerC,
        AlgorithmModel::NnDumerQ,
        AlgorithmModel::NnSsDumerQ,
    ];

    #[must_use]
    pub fn tag(&self) -> &'static str {
        match self {
            Self::PrangeC => "prange-c",
            Self::PrangeQ => "prange-q",
            Self::DumerC => "dumer-c",
            Self::DumerSsQ => "dumer-ss-q",
            Self::MmtC => "mmt-c",
            Self::MmtQ => "mmt-q",
            Self::BjmmC => "bjmm-c",
            Self::BjmmQ => "bjmm-q",
            Self::NnDumerC => "nn-dumer-c",
            Self::NnDumerQ => "nn-dumer-q",
            Self::NnSsDumerQ => "nn-ss-dumer-q",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.tag() == s)
    }

    #[must_use]
    pub fn is_quantum(&self) -> bool {
        matches!(
            self,
            Self::PrangeQ
                | Self::DumerSsQ
                | Self::MmtQ
                | Self::BjmmQ
                | Self::NnDumerQ
                | Self::NnSsDumerQ
        )
    }

    /// Number of free optimization parameters: `(π, λ)` plus `ε` for BJMM.
    #[must_use]
    pub fn free_params(&self) -> usize {
        match self {
            Self::PrangeC | Self::PrangeQ => 0,
            Self::BjmmC | Self::BjmmQ => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for AlgorithmModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}
