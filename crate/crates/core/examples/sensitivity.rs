//! Per-unit sensitivity of selected benchmark rows to the catalog stats.
//!
//! For each unit in a matchup, scales its DPS (and bonus DPS) or its health
//! by the given factors and re-runs the experiment with the same seed.
//!
//!     cargo run --release -p apx-core --example sensitivity

use apx_core::montecarlo::{run_experiment, ExperimentSpec};
use apx_core::scenarios::{find_matchup, Pairing};
use apx_core::{ModelId, UnitCatalog, UnitClass};

const TRIALS: u32 = 1000;
const SEED: u64 = 2012;
const FACTORS: [f64; 4] = [0.7, 0.85, 1.15, 1.3];

fn scaled(catalog: &UnitCatalog, name: &str, edit: impl Fn(&mut UnitClass)) -> UnitCatalog {
    UnitCatalog::from_units(catalog.iter().cloned().map(|mut u| {
        if u.name == name {
            edit(&mut u);
        }
        u
    }))
    .expect("scaled catalog stays valid")
}

fn win1(catalog: &UnitCatalog, round: u8, pairing: Pairing, model: ModelId) -> f64 {
    let spec = ExperimentSpec::new(find_matchup(round, pairing).unwrap(), model, TRIALS, SEED);
    run_experiment(&spec, catalog).unwrap().reported_win1
}

fn main() {
    let base = UnitCatalog::builtin();
    let rows = [
        (1, Pairing::PvT, ModelId::Apx1, 0.99),
        (4, Pairing::PvT, ModelId::Apx1, 1.00),
        (4, Pairing::TvZ, ModelId::Apx4, 0.00),
        (1, Pairing::TvZ, ModelId::Apx4, 0.55),
    ];
    for (round, pairing, model, published) in rows {
        let matchup = find_matchup(round, pairing).unwrap();
        println!(
            "R{round} {pairing} {}: published {published:.2}, shipped catalog {:.2}",
            model.label(),
            win1(&base, round, pairing, model)
        );
        let header: Vec<String> = FACTORS.iter().map(|f| format!("x{f:<5}")).collect();
        println!("  {:<18} {}", "unit / stat", header.join(" "));
        for entry in matchup.army1.iter().chain(&matchup.army2) {
            for stat in ["dps", "health"] {
                let cells: Vec<String> = FACTORS
                    .iter()
                    .map(|&f| {
                        let cat = scaled(&base, &entry.unit, |u| match stat {
                            "dps" => {
                                u.base_dps *= f;
                                u.bonus_base_dps *= f;
                            }
                            _ => {
                                u.base_health = (f64::from(u.base_health) * f).round() as u32;
                                u.shields = (f64::from(u.shields) * f).round() as u32;
                            }
                        });
                        format!("{:<6.2}", win1(&cat, round, pairing, model))
                    })
                    .collect();
                println!(
                    "  {:<18} {}",
                    format!("{} {stat}", entry.unit),
                    cells.join(" ")
                );
            }
        }
        println!();
    }
}
