// SPDX-License-Identifier: Apache-2.0

//! The sigmoid DPO loss and its gradient as the policy margin grows.
//!
//! `cargo run --example dpo_loss -- [beta]`

use handswap::prefs::{dpo_loss, DpoInputs};

fn main() -> handswap::Result<()> {
    let beta = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.1);
    println!("margin    loss      dloss/dmargin");
    for step in -4..=4 {
        let margin = step as f64 * 2.5;
        let out = dpo_loss(&DpoInputs {
            logp_policy_chosen: -20.0 + margin / 2.0,
            logp_policy_rejected: -20.0 - margin / 2.0,
            logp_ref_chosen: -20.0,
            logp_ref_rejected: -20.0,
            beta,
        })?;
        println!(
            "{margin:6.1}  {:.6}  {:+.6}",
            out.loss, out.grad_wrt_policy_margin
        );
    }
    Ok(())
}
