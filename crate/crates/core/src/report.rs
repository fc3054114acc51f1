use serde::Serialize;

use crate::oracle::OracleValue;

/// A computed value with its truncation metadata and, when one is
/// available, the independent reference it was checked against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalReport {
    pub value: f64,
    pub truncation_index: usize,
    pub error_estimate: f64,
    pub oracle_value: Option<f64>,
    pub abs_error: Option<f64>,
}

impl EvalReport {
    pub fn new(value: f64, truncation_index: usize, error_estimate: f64) -> Self {
        EvalReport {
            value,
            truncation_index,
            error_estimate,
            oracle_value: None,
            abs_error: None,
        }
    }

    pub fn with_reference(mut self, reference: f64) -> Self {
        self.oracle_value = Some(reference);
        self.abs_error = Some((self.value - reference).abs());
        self
    }

    pub fn with_oracle(self, oracle: &OracleValue) -> Self {
        self.with_reference(oracle.value)
    }
}
