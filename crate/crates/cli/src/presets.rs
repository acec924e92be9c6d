//! Sweep presets that reproduce the reference result set: each preset
//! pins the parameter point of one figure and emits the matching Monte
//! Carlo and closed-form columns.

use crate::config::{
    FadingKind, FixedParams, NetworkConfig, QuantityKind, QuantitySpec, Spacing, SweepAxis,
    SweepSpec, SweepVar, ThetaSpec,
};

/// All known preset names.
pub const PRESET_NAMES: &[&str] = &[
    "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig10", "fig11", "fig12", "fig13",
    "fig14", "fig15",
];

fn axis(var: SweepVar, start: f64, stop: f64, count: usize) -> SweepAxis {
    SweepAxis { var, start, stop, count, spacing: Spacing::Linear }
}

fn spec(sweep: SweepAxis, fixed: FixedParams, quantities: Vec<QuantitySpec>) -> SweepSpec {
    SweepSpec {
        sweep,
        fixed,
        quantities,
        replicates: 10_000,
        n_points: 1000,
        master_seed: 0,
        output: None,
    }
}

fn beta_fixed(beta: f64) -> FixedParams {
    FixedParams { beta: Some(beta), ..Default::default() }
}

fn uniform_planar(alpha: f64) -> FixedParams {
    FixedParams {
        network: Some(NetworkConfig {
            d: 2,
            alpha,
            a: 1.0,
            b: 0.0,
            fading: FadingKind::None,
        }),
        ..Default::default()
    }
}

/// Build the sweep spec for a named figure preset.
pub fn figure_preset(name: &str) -> Option<SweepSpec> {
    let spec = match name {
        // Joint tail P(ξ_k⁻¹ > θ I_k) vs its closed form, β = 1/2,
        // k = 1..5.
        "fig2" => {
            let mut qs = Vec::new();
            for k in 1..=5 {
                qs.push(QuantitySpec::new(QuantityKind::McJointTail).with_k(k));
                qs.push(QuantitySpec::bound("thm1_exact").with_k(k));
            }
            spec(axis(SweepVar::ThetaDb, -10.0, 20.0, 31), beta_fixed(0.5), qs)
        }
        // p_k bounds in a 2-d uniform network with α = 3.
        "fig3" => {
            let mut qs = Vec::new();
            for k in 1..=3 {
                qs.push(QuantitySpec::new(QuantityKind::McPk).with_k(k));
                qs.push(QuantitySpec::bound("hr_lb").with_k(k));
                qs.push(QuantitySpec::bound("combined_ub").with_k(k));
                qs.push(QuantitySpec::bound("smud_ub").with_k(k));
            }
            spec(axis(SweepVar::ThetaDb, -10.0, 20.0, 31), uniform_planar(3.0), qs)
        }
        // Clustering: bounds vs the density exponent b at α = 4, θ = 1.
        "fig4" => {
            let mut qs = Vec::new();
            for k in 1..=3 {
                qs.push(QuantitySpec::new(QuantityKind::McPk).with_k(k));
                qs.push(QuantitySpec::bound("hr_lb").with_k(k));
                qs.push(QuantitySpec::bound("combined_ub").with_k(k));
                qs.push(QuantitySpec::bound("smud_lb").with_k(k));
                qs.push(QuantitySpec::bound("smud_ub").with_k(k));
            }
            let mut fixed = uniform_planar(4.0);
            fixed.theta = Some(ThetaSpec::linear(1.0));
            spec(axis(SweepVar::B, -1.0, 1.0, 9), fixed, qs)
        }
        // Mean decodable count and its four bounds, α = 4.
        "fig5" => spec(
            axis(SweepVar::ThetaDb, -20.0, 20.0, 21),
            beta_fixed(0.5),
            vec![
                QuantitySpec::new(QuantityKind::McEn),
                QuantitySpec::bound("en_lb"),
                QuantitySpec::bound("en_lr_lb"),
                QuantitySpec::bound("en_ub"),
                QuantitySpec::bound("en_smud_ub"),
            ],
        ),
        // Aggregate throughput with bounds and the 1/β − 1 asymptote.
        "fig6" => spec(
            axis(SweepVar::ThetaDb, -30.0, 20.0, 26),
            beta_fixed(0.5),
            vec![
                QuantitySpec::new(QuantityKind::McThroughput),
                QuantitySpec::bound("r_en_lb"),
                QuantitySpec::bound("r_en_lr_lb"),
                QuantitySpec::bound("r_en_ub"),
                QuantitySpec::bound("r_en_smud_ub"),
                QuantitySpec::bound("r_asymptotic"),
            ],
        ),
        // Laplace-transform throughput approximation, β ∈ {1/3, 1/2, 2/3}.
        "fig7" => {
            let mut qs = Vec::new();
            for (tag, beta) in [("b33", 1.0 / 3.0), ("b50", 0.5), ("b67", 2.0 / 3.0)] {
                qs.push(
                    QuantitySpec::new(QuantityKind::McThroughput)
                        .with_beta(beta)
                        .with_label(format!("mc_r_{tag}")),
                );
                qs.push(
                    QuantitySpec::bound("r_lt_approx")
                        .with_beta(beta)
                        .with_label(format!("r_lta_{tag}")),
                );
            }
            spec(axis(SweepVar::ThetaDb, -20.0, 20.0, 21), FixedParams::default(), qs)
        }
        // Noisy throughput, ā = π (uniform planar α = 4), W ∈ {0.1, 1, 10}.
        "fig8" => {
            let mut qs = Vec::new();
            for (tag, w) in [("w01", 0.1), ("w1", 1.0), ("w10", 10.0)] {
                qs.push(
                    QuantitySpec::new(QuantityKind::McThroughput)
                        .with_w(w)
                        .with_label(format!("mc_r_{tag}")),
                );
                qs.push(
                    QuantitySpec::bound("noisy_r_ub")
                        .with_w(w)
                        .with_label(format!("noisy_r_ub_{tag}")),
                );
            }
            spec(axis(SweepVar::ThetaDb, -20.0, 20.0, 21), uniform_planar(4.0), qs)
        }
        // Coverage with unbounded SIC vs θ, η = 0.6, α = 4.
        "fig10" => {
            let mut fixed = beta_fixed(0.5);
            fixed.eta = Some(0.6);
            spec(
                axis(SweepVar::ThetaDb, -20.0, 20.0, 21),
                fixed,
                vec![
                    QuantitySpec::new(QuantityKind::McCoverage),
                    QuantitySpec::new(QuantityKind::McCoverage).with_n(1),
                    QuantitySpec::bound("hcn_pc_sic_lb"),
                    QuantitySpec::bound("hcn_pc_sic_ub"),
                    QuantitySpec::bound("hcn_pc_sic_smud_ub"),
                    QuantitySpec::bound("hcn_pc_sic_lta"),
                    QuantitySpec::bound("hcn_pc_no_sic"),
                ],
            )
        }
        // Coverage vs the path-loss exponent, η = 0.8, θ = 1.
        "fig11" => {
            let fixed = FixedParams {
                eta: Some(0.8),
                theta: Some(ThetaSpec::linear(1.0)),
                ..Default::default()
            };
            spec(
                axis(SweepVar::Alpha, 2.5, 8.0, 23),
                fixed,
                vec![
                    QuantitySpec::new(QuantityKind::McCoverage),
                    QuantitySpec::new(QuantityKind::McCoverage).with_n(1),
                    QuantitySpec::bound("hcn_pc_sic_smud_ub"),
                    QuantitySpec::bound("hcn_pc_sic_smud_lb"),
                    QuantitySpec::bound("hcn_pc_no_sic"),
                ],
            )
        }
        // Average throughput vs θ, η = 0.6, α = 4.
        "fig12" => {
            let mut fixed = beta_fixed(0.5);
            fixed.eta = Some(0.6);
            spec(
                axis(SweepVar::ThetaDb, -20.0, 20.0, 21),
                fixed,
                vec![
                    QuantitySpec::new(QuantityKind::McAvgThroughput),
                    QuantitySpec::new(QuantityKind::McAvgThroughput).with_n(1),
                    QuantitySpec::bound("hcn_t_sic_lb"),
                    QuantitySpec::bound("hcn_t_sic_ub"),
                    QuantitySpec::bound("hcn_t_sic_smud_ub"),
                    QuantitySpec::bound("hcn_t_sic_lta"),
                    QuantitySpec::bound("hcn_t_no_sic"),
                ],
            )
        }
        // Finite SIC depth vs η at θ ∈ {0, 2} dB, α = 4, n ∈ {1, 2, 10}.
        "fig13" => {
            let mut qs = Vec::new();
            for (tag, db) in [("th0", 0.0), ("th2", 2.0)] {
                let theta = ThetaSpec::db(db);
                for n in [1usize, 2, 10] {
                    qs.push(
                        QuantitySpec::new(QuantityKind::McCoverage)
                            .with_n(n)
                            .with_theta(theta)
                            .with_label(format!("mc_pc{n}_{tag}")),
                    );
                }
                for n in [1usize, 2] {
                    qs.push(
                        QuantitySpec::bound("hcn_pcn_ub")
                            .with_n(n)
                            .with_theta(theta)
                            .with_label(format!("pcn_ub_n{n}_{tag}")),
                    );
                }
                qs.push(
                    QuantitySpec::bound("hcn_pc_sic_erf_closed")
                        .with_theta(theta)
                        .with_label(format!("pc_inf_ub_{tag}")),
                );
            }
            spec(axis(SweepVar::Eta, 0.05, 0.95, 19), beta_fixed(0.5), qs)
        }
        // θ = 0 dB, α ∈ {3.3, 3.5, 3.7}: closed forms vs simulation.
        "fig14" => {
            let mut qs = Vec::new();
            for (tag, alpha) in [("a33", 3.3), ("a35", 3.5), ("a37", 3.7)] {
                let beta = 2.0 / alpha;
                for n in [1usize, 10] {
                    qs.push(
                        QuantitySpec::new(QuantityKind::McCoverage)
                            .with_n(n)
                            .with_beta(beta)
                            .with_label(format!("mc_pc{n}_{tag}")),
                    );
                }
                qs.push(
                    QuantitySpec::bound("hcn_pcn_theta1")
                        .with_n(1)
                        .with_beta(beta)
                        .with_label(format!("pc1_{tag}")),
                );
                qs.push(
                    QuantitySpec::bound("hcn_pc_ml_closed")
                        .with_beta(beta)
                        .with_label(format!("pc_inf_ub_{tag}")),
                );
            }
            let fixed = FixedParams {
                theta: Some(ThetaSpec::db(0.0)),
                ..Default::default()
            };
            spec(axis(SweepVar::Eta, 0.05, 0.95, 19), fixed, qs)
        }
        // Coverage vs θ ≥ −5 dB for η ∈ {0.3, 0.6, 0.9}, α = 4.
        "fig15" => {
            let mut qs = Vec::new();
            for (tag, eta) in [("e30", 0.3), ("e60", 0.6), ("e90", 0.9)] {
                for n in [1usize, 2, 10] {
                    qs.push(
                        QuantitySpec::new(QuantityKind::McCoverage)
                            .with_n(n)
                            .with_eta(eta)
                            .with_label(format!("mc_pc{n}_{tag}")),
                    );
                }
                for n in [1usize, 2] {
                    qs.push(
                        QuantitySpec::bound("hcn_pcn_ub")
                            .with_n(n)
                            .with_eta(eta)
                            .with_label(format!("pcn_ub_n{n}_{tag}")),
                    );
                }
                qs.push(
                    QuantitySpec::bound("hcn_pc_sic_erf_closed")
                        .with_eta(eta)
                        .with_label(format!("pc_inf_ub_{tag}")),
                );
            }
            spec(axis(SweepVar::ThetaDb, -5.0, 15.0, 21), beta_fixed(0.5), qs)
        }
        _ => return None,
    };
    Some(spec)
}
