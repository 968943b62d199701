// SPDX-License-Identifier: Apache-2.0

//! Scalar reference for the sigmoid DPO loss on one preference pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sequence log-probabilities (natural log) of both answers under the policy
/// and the frozen reference model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DpoInputs {
    pub logp_policy_chosen: f64,
    pub logp_policy_rejected: f64,
    pub logp_ref_chosen: f64,
    pub logp_ref_rejected: f64,
    pub beta: f64,
}

impl DpoInputs {
    fn validate(&self) -> Result<()> {
        let fields = [
            ("logp_policy_chosen", self.logp_policy_chosen),
            ("logp_policy_rejected", self.logp_policy_rejected),
            ("logp_ref_chosen", self.logp_ref_chosen),
            ("logp_ref_rejected", self.logp_ref_rejected),
            ("beta", self.beta),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        for (name, value) in &fields[..4] {
            if *value > 0.0 {
                return Err(Error::out_of_range(
                    name,
                    format!("log-probability {value} > 0"),
                ));
            }
        }
        if self.beta <= 0.0 {
            return Err(Error::out_of_range(
                "beta",
                format!("{} is not positive", self.beta),
            ));
        }
        Ok(())
    }

    /// `logp_policy_chosen - logp_policy_rejected`.
    pub fn policy_margin(&self) -> f64 {
        self.logp_policy_chosen - self.logp_policy_rejected
    }

    /// `logp_ref_chosen - logp_ref_rejected`.
    pub fn reference_margin(&self) -> f64 {
        self.logp_ref_chosen - self.logp_ref_rejected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DpoLoss {
    pub loss: f64,
    /// d loss / d (logp_policy_chosen - logp_policy_rejected).
    pub grad_wrt_policy_margin: f64,
}

/// `-ln sigmoid(beta * (policy_margin - reference_margin))` and its
/// derivative `-beta * sigmoid(-z)`.
pub fn dpo_loss(inputs: &DpoInputs) -> Result<DpoLoss> {
    inputs.validate()?;
    let z = inputs.beta * (inputs.policy_margin() - inputs.reference_margin());
    Ok(DpoLoss {
        loss: softplus(-z),
        grad_wrt_policy_margin: -inputs.beta * sigmoid(-z),
    })
}

/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}
