use std::fmt::Write as _;

use anyhow::{Context, Result};
use apx_core::montecarlo::{run_experiment, run_experiment_with, Execution, ExperimentSpec};
use apx_core::report::{
    mae_by_model, render_comparison, render_mae, render_results, ComparisonRow, Format, ResultRow,
};
use apx_core::scenarios::{
    builtin_matchups, find_matchup, find_row, load_scenario_file, reference_table, MatchupSpec,
    RowKind,
};
use apx_core::{AggregateResult, ModelId, ModelRegistry, UnitCatalog};

use crate::{Cli, Command, Selection, SimArgs};

pub fn execute(cli: &Cli) -> Result<()> {
    let catalog = match &cli.catalog {
        Some(path) => UnitCatalog::load(path)
            .with_context(|| format!("loading unit catalog {}", path.display()))?,
        None => UnitCatalog::builtin(),
    };
    let report = match &cli.command {
        Command::Run {
            scenario,
            round,
            pairing,
            model,
            trials,
            seed,
        } => {
            let (matchup, file_model, file_trials, file_seed) = match (scenario, round, pairing) {
                (Some(path), _, _) => {
                    let s = load_scenario_file(path, &catalog)
                        .with_context(|| format!("loading scenario {}", path.display()))?;
                    (s.matchup, s.model, s.trials, s.seed)
                }
                (None, Some(r), Some(p)) => (find_matchup(*r, *p)?, None, None, None),
                _ => anyhow::bail!("run needs --scenario PATH or --round N --match PAIRING"),
            };
            let registry = ModelRegistry::builtin();
            let name = model
                .clone()
                .or_else(|| file_model.map(|m| m.to_string()))
                .unwrap_or_else(|| ModelId::Apx4.to_string());
            let strategy = registry.get(&name)?;
            let spec = ExperimentSpec::new(
                matchup,
                strategy.name().parse()?,
                trials
                    .or(file_trials)
                    .unwrap_or(apx_core::montecarlo::DEFAULT_TRIALS),
                seed.or(file_seed).unwrap_or(0),
            );
            let result =
                run_experiment_with(&spec, &catalog, strategy.as_ref(), Execution::Parallel)?;
            render_run(&result, cli.format)?
        }
        Command::Reproduce {
            selection,
            sim,
            with_reference,
        } => {
            let reference = reference_table();
            let mut rows = Vec::new();
            for matchup in selected_matchups(selection) {
                let id = matchup.id.expect("benchmark matchup");
                if *with_reference {
                    if let Some(test) = find_row(&reference, id, RowKind::Test) {
                        rows.push(ResultRow::from_reference(test));
                    }
                }
                for model in selected_models(selection) {
                    let result = simulate(&matchup, model, sim, &catalog)?;
                    if *with_reference {
                        if let Some(published) = find_row(&reference, id, RowKind::Model(model)) {
                            let mut row = ResultRow::from_reference(published);
                            row.kind = format!("{}*", row.kind);
                            rows.push(row);
                        }
                    }
                    rows.push(ResultRow::from_result(&result));
                }
            }
            render_results(&rows, cli.format)?
        }
        Command::Compare { selection, sim } => {
            let reference = reference_table();
            let mut rows = Vec::new();
            for matchup in selected_matchups(selection) {
                for model in selected_models(selection) {
                    let result = simulate(&matchup, model, sim, &catalog)?;
                    rows.push(ComparisonRow::from_result(&result, &reference)?);
                }
            }
            render_comparison(&rows, cli.format)?
        }
        Command::Mae {
            from_reference,
            sim,
        } => {
            let reference = reference_table();
            let summary = if *from_reference {
                mae_by_model(&reference, None)?
            } else {
                let mut results = Vec::new();
                for matchup in builtin_matchups() {
                    for model in ModelId::ALL {
                        results.push(simulate(&matchup, model, sim, &catalog)?);
                    }
                }
                mae_by_model(&reference, Some(&results))?
            };
            render_mae(&summary, cli.format)?
        }
        Command::ListUnits => render_units(&catalog, cli.format)?,
        Command::ListMatchups => render_matchups(cli.format)?,
    };
    match &cli.output {
        Some(path) => {
            std::fs::write(path, report).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{report}"),
    }
    Ok(())
}

fn selected_models(selection: &Selection) -> Vec<ModelId> {
    if selection.models.is_empty() {
        ModelId::ALL.to_vec()
    } else {
        selection.models.clone()
    }
}

fn selected_matchups(selection: &Selection) -> Vec<MatchupSpec> {
    builtin_matchups()
        .into_iter()
        .filter(|m| {
            let id = m.id.expect("benchmark matchup");
            selection.round.is_none_or(|r| r == id.round)
                && selection.pairing.is_none_or(|p| p == id.pairing)
        })
        .collect()
}

fn simulate(
    matchup: &MatchupSpec,
    model: ModelId,
    sim: &SimArgs,
    catalog: &UnitCatalog,
) -> apx_core::Result<AggregateResult> {
    let spec = ExperimentSpec::new(matchup.clone(), model, sim.trials, sim.seed);
    run_experiment(&spec, catalog)
}

fn render_run(result: &AggregateResult, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(result)? + "\n"),
        Format::Csv => Ok(render_results(&[ResultRow::from_result(result)], format)?),
        Format::Table => {
            let mut out = render_results(&[ResultRow::from_result(result)], format)?;
            let spec = &result.spec;
            let army = |a: &[apx_core::scenarios::ArmyEntry]| {
                a.iter()
                    .map(|e| format!("{} {}", e.count, e.unit))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            writeln!(out)?;
            writeln!(out, "army 1: {}", army(&spec.matchup.army1))?;
            writeln!(out, "army 2: {}", army(&spec.matchup.army2))?;
            writeln!(
                out,
                "model {}  trials {}  seed {}",
                spec.model, spec.trials, spec.master_seed
            )?;
            writeln!(
                out,
                "wins 1: {}  wins 2: {}  draws: {} (stalemates {})  mean rounds {:.2}",
                result.wins1, result.wins2, result.draws, result.stalemates, result.mean_rounds
            )?;
            Ok(out)
        }
    }
}

fn render_units(catalog: &UnitCatalog, format: Format) -> Result<String> {
    if format == Format::Json {
        let units: Vec<_> = catalog.iter().collect();
        return Ok(serde_json::to_string_pretty(&units)? + "\n");
    }
    let headers = [
        "name",
        "race",
        "health",
        "shields",
        "armor",
        "eff_health",
        "dps",
        "area",
        "eff_dps",
        "ranged",
        "bonus_dps",
        "bonus_vs",
    ];
    let rows: Vec<Vec<String>> = catalog
        .iter()
        .map(|u| {
            vec![
                u.name.clone(),
                u.race.to_string(),
                u.base_health.to_string(),
                u.shields.to_string(),
                u.armor.to_string(),
                format!("{:.2}", u.effective_health()),
                format!("{:.2}", u.base_dps),
                format!("{}", u.aoe_area),
                format!("{:.2}", u.effective_dps()),
                u.ranged.to_string(),
                format!("{:.2}", u.effective_bonus_dps()),
                u.bonus_vs
                    .iter()
                    .map(|a| a.as_str())
                    .collect::<Vec<_>>()
                    .join("+"),
            ]
        })
        .collect();
    plain_rows(&headers, &rows, format)
}

fn render_matchups(format: Format) -> Result<String> {
    let matchups = builtin_matchups();
    if format == Format::Json {
        return Ok(serde_json::to_string_pretty(&matchups)? + "\n");
    }
    let army = |a: &[apx_core::scenarios::ArmyEntry]| {
        a.iter()
            .map(|e| format!("{} {}", e.count, e.unit))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let rows: Vec<Vec<String>> = matchups
        .iter()
        .map(|m| {
            let id = m.id.expect("benchmark matchup");
            vec![
                id.round.to_string(),
                id.pairing.to_string(),
                army(&m.army1),
                army(&m.army2),
            ]
        })
        .collect();
    plain_rows(&["round", "match", "army1", "army2"], &rows, format)
}

fn plain_rows(headers: &[&str], rows: &[Vec<String>], format: Format) -> Result<String> {
    if format == Format::Csv {
        let mut w = csv_writer();
        w.write_record(headers)?;
        for row in rows {
            w.write_record(row)?;
        }
        return Ok(String::from_utf8(w.into_inner()?)?);
    }
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    for row in std::iter::once(&header).chain(rows) {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    Ok(out)
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::Writer::from_writer(Vec::new())
}
