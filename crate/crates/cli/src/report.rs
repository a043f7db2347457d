//! The exponent-table report: every cost model optimized at its worst-case
//! rate (or a pinned rate), one CSV row per model.

use exponent_lab::{
    nn_geometry, optimize_params, worst_case_rate, AlgorithmModel, OptimizeOutcome,
};
use sha2::{Digest, Sha256};

/// Fixed CSV column set, version 1.
pub const TABLE_CSV_HEADER: &str = "model,rate,time_exponent,space_exponent,pi_p,lambda,lambda_prime,eps_rel,rho_r,alpha,beta,gamma,certificate";

#[derive(Clone, Debug)]
pub struct ReportRow {
    pub model: AlgorithmModel,
    pub outcome: Option<OptimizeOutcome>,
}

impl ReportRow {
    /// Renders the row; floats carry six decimals, near-neighbour geometry
    /// columns stay empty for models without one, and the certificate is a
    /// truncated digest of the parameter fields.
    #[must_use]
    pub fn to_csv(&self) -> String {
        let Some(out) = &self.outcome else {
            return format!("{},,inf,,,,,,,,,,", self.model.tag());
        };
        let p = &out.profile;
        let geo = nn_geometry(self.model, p);
        let (a, b, g) = match geo {
            Some((a, b, g)) => (format!("{a:.6}"), format!("{b:.6}"), format!("{g:.6}")),
            None => (String::new(), String::new(), String::new()),
        };
        let body = format!(
            "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{},{},{}",
            self.model.tag(),
            out.rate,
            out.cost.total,
            out.cost.space,
            p.pi_p,
            p.lambda,
            p.lambda_prime,
            p.eps_rel,
            p.rho_r,
            a,
            b,
            g
        );
        let mut hasher = Sha256::new();
        hasher.update(body.as_bytes());
        let digest = hasher.finalize();
        let cert: String = digest[..8].iter().map(|x| format!("{x:02x}")).collect();
        format!("{body},{cert}")
    }
}

/// Optimizes each model at its worst-case rate (default) or at a pinned
/// rate; infeasible combinations produce an `inf` row and the run continues.
#[must_use]
pub fn build_table(models: &[AlgorithmModel], rate: Option<f64>) -> Vec<ReportRow> {
    models
        .iter()
        .map(|&model| {
            let outcome = match rate {
                Some(r) => optimize_params(model, r),
                None => Some(worst_case_rate(model)),
            };
            ReportRow { model, outcome }
        })
        .collect()
}

/// Exponent-versus-rate curves for external plotting: `points` rates per
/// model across `(0.02, 0.5]`.
#[must_use]
pub fn build_sweep(models: &[AlgorithmModel], points: usize) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for &model in models {
        for i in 0..points {
            let rate = 0.02 + (0.5 - 0.02) * i as f64 / (points - 1).max(1) as f64;
            rows.push(ReportRow {
                model,
                outcome: optimize_params(model, rate),
            });
        }
    }
    rows
}

/// Renders a full CSV document.
#[must_use]
pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_schema_is_pinned() {
        let rows = build_table(&[AlgorithmModel::PrangeC], Some(0.45));
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), TABLE_CSV_HEADER);
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), TABLE_CSV_HEADER.split(',').count());
        assert!(row.starts_with("prange-c,0.450000,"));
    }

    #[test]
    fn pinned_rate_below_worst_case() {
        let rows = build_table(&[AlgorithmModel::PrangeC], Some(0.5));
        let t = rows[0].outcome.unwrap().cost.total;
        assert!(t < 0.1206);
    }

    #[test]
    fn deterministic_certificates() {
        let a = to_csv(&build_table(&[AlgorithmModel::DumerC], Some(0.45)));
        let b = to_csv(&build_table(&[AlgorithmModel::DumerC], Some(0.45)));
        assert_eq!(a, b);
    }
}
