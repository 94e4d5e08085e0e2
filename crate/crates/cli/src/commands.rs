use infoeval_core::analysis::{crossover_roots, p1_grid, rank_canonical};
use infoeval_core::{
    check_meta_order, detect_divergence_maximum, detect_mi_local_minimum, evaluate, evaluate_all, parse_selection,
    rank_with, sweep_delta_curves, CanonicalKind, CanonicalModel, MeasureId, MetaOrder, TieStyle,
};

use crate::args::{meta_order_path, EvalArgs, OmegaArgs, RankArgs, SweepArgs, TheoremArgs, Ties};
use crate::error::CliError;
use crate::input::{self, Model};
use crate::report::{format_number, Cell, Table};

/// Tables to print, plus a failure to report after printing them.
pub struct Outcome {
    pub tables: Vec<Table>,
    pub failure: Option<CliError>,
}

impl From<Vec<Table>> for Outcome {
    fn from(tables: Vec<Table>) -> Self {
        Self { tables, failure: None }
    }
}

fn decimals(round: Option<u32>, id: MeasureId) -> u32 {
    round.unwrap_or_else(|| id.group().default_decimals())
}

fn load(inputs: &crate::args::Inputs) -> Result<Vec<Model>, CliError> {
    input::load(&inputs.paths, inputs.input_format.map(Into::into))
}

pub fn eval(args: &EvalArgs) -> Result<Outcome, CliError> {
    let models = load(&args.inputs)?;
    let selection = parse_selection(&args.measures)?;
    let headers = std::iter::once("model".to_string()).chain(selection.iter().map(|m| m.name().to_string())).collect();
    let mut table = Table::new(headers);
    for model in &models {
        let values = evaluate_all(&model.record.matrix, &selection)?;
        let mut row = vec![Cell::text(&model.name)];
        row.extend(values.iter().map(|v| Cell::score(v.score, decimals(args.output.round, v.measure))));
        table.push(row);
    }
    Ok(vec![table].into())
}

fn meta_order(spec: &str, models: &[Model]) -> Result<MetaOrder, CliError> {
    match meta_order_path(spec) {
        None => {
            let grades: Vec<(&str, &str)> =
                models.iter().filter_map(|m| Some((m.name.as_str(), m.record.intuition.as_deref()?))).collect();
            if grades.is_empty() {
                return Err(CliError::input("--meta-order letters: no input record has an `intuition` letter"));
            }
            Ok(MetaOrder::from_letters(&grades)?)
        }
        Some(path) => {
            let text =
                std::fs::read_to_string(&path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            let pairs: Vec<(String, String)> = serde_json::from_str(&text).map_err(|e| {
                CliError::input(format!("{}: line {}: expected [[better, worse], ...]: {e}", path.display(), e.line()))
            })?;
            MetaOrder::new(pairs).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
        }
    }
}

pub fn rank(args: &RankArgs) -> Result<Outcome, CliError> {
    let models = load(&args.inputs)?;
    let selection = parse_selection(&args.measures)?;
    let style = match args.ties {
        Ties::Dense => TieStyle::Dense,
        Ties::Competition => TieStyle::Competition,
    };
    let order = args.meta_order.as_deref().map(|spec| meta_order(spec, &models)).transpose()?;
    let names: Vec<String> = models.iter().map(|m| m.name.clone()).collect();

    let mut ranking = Table::new(["measure", "model", "value", "letter"].map(String::from).to_vec()).titled("ranking");
    let mut violations =
        Table::new(["measure", "better", "worse", "better_value", "worse_value"].map(String::from).to_vec())
            .titled("violations");
    for &id in &selection {
        let places = decimals(args.output.round, id);
        let values = models.iter().map(|m| evaluate(id, &m.record.matrix)).collect::<Result<Vec<_>, _>>()?;
        let report = rank_with(names.clone(), values, places, style)?;
        for ((name, value), letter) in report.model_names.iter().zip(&report.values).zip(&report.letters) {
            ranking.push(vec![
                Cell::text(id.name()),
                Cell::text(name),
                Cell::score(value.score, places),
                letter.as_deref().map_or(Cell::Missing, Cell::text),
            ]);
        }
        if let Some(order) = &order {
            for v in check_meta_order(&report, order)? {
                let value = |x: Option<f64>| x.map_or(Cell::Singular, |x| Cell::Num(x, places));
                violations.push(vec![
                    Cell::text(id.name()),
                    Cell::text(v.better),
                    Cell::text(v.worse),
                    value(v.better_value),
                    value(v.worse_value),
                ]);
            }
        }
    }
    let mut tables = vec![ranking];
    if order.is_some() {
        tables.push(violations);
    }
    Ok(tables.into())
}

fn kind_name(kind: CanonicalKind) -> &'static str {
    match kind {
        CanonicalKind::ErrorSmall => "error-small",
        CanonicalKind::ErrorLarge => "error-large",
        CanonicalKind::RejectSmall => "reject-small",
        CanonicalKind::RejectLarge => "reject-large",
    }
}

pub fn theorems(args: &TheoremArgs) -> Result<Outcome, CliError> {
    let models = load(&args.inputs)?;
    let places = args.output.round.unwrap_or(3);
    let headers = [
        "model",
        "mi_local_minimum",
        "minimum_blocks",
        "divergence_maximum",
        "canonical",
        "cost_inequalities",
        "omega",
        "p1",
        "regime",
        "omega_rule",
    ];
    let mut table = Table::new(headers.map(String::from).to_vec());
    let mut broken = Vec::new();
    for model in &models {
        let matrix = &model.record.matrix;
        let witness = detect_mi_local_minimum(matrix);
        let blocks: Vec<String> = witness.blocks.iter().map(|b| format!("{}-{}", b + 1, b + 2)).collect();
        let mut row = vec![
            Cell::text(&model.name),
            Cell::Bool(witness.found()),
            Cell::text(blocks.join(";")),
            Cell::Bool(detect_divergence_maximum(matrix)),
        ];
        match CanonicalModel::recognize(matrix) {
            Some(canonical) => {
                let r = rank_canonical(canonical.large, canonical.small, canonical.d)?;
                if !r.cost_inequalities_hold || !r.matches_omega_rule {
                    broken.push(model.name.clone());
                }
                let regime = match r.regime {
                    infoeval_core::analysis::SkewRegime::General => "general",
                    infoeval_core::analysis::SkewRegime::LargelySkewed => "largely-skewed",
                };
                row.extend([
                    Cell::text(kind_name(canonical.kind)),
                    Cell::Bool(r.cost_inequalities_hold),
                    Cell::Num(r.omega, places),
                    Cell::Num(canonical.large as f64 / canonical.n() as f64, places),
                    Cell::text(regime),
                    Cell::Bool(r.matches_omega_rule),
                ]);
            }
            None => row.extend(std::iter::repeat(Cell::Missing).take(6)),
        }
        table.push(row);
    }
    let failure = (!broken.is_empty())
        .then(|| CliError::invariant(format!("canonical cost checks failed for {}", broken.join(", "))));
    Ok(Outcome { tables: vec![table], failure })
}

pub fn omega(args: &OmegaArgs) -> Result<(Option<Table>, String), CliError> {
    let roots = crossover_roots(args.n, args.d)?;
    let omega = match roots.as_slice() {
        [only] => *only,
        [] => return Err(infoeval_core::Error::NoSignChange { lo: 0.5, hi: 1.0 }.into()),
        _ => return Err(infoeval_core::Error::MultipleCrossings { roots }.into()),
    };
    let plain = format_number(omega, args.round, args.precision);
    let table = args.format.map(|_| {
        let mut t = Table::new(["n", "d", "omega"].map(String::from).to_vec());
        t.push(vec![Cell::Int(args.n), Cell::Int(args.d), Cell::Num(omega, args.round)]);
        t
    });
    Ok((table, plain))
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome, CliError> {
    if !(args.step.is_finite() && args.step > 0.0) {
        return Err(CliError::input(format!("--step must be positive, got {}", args.step)));
    }
    let grid = p1_grid(args.step)?;
    let points = sweep_delta_curves(args.n, args.d, &grid)?;
    let mut table = Table::new(["p1", "delta_10", "delta_20", "delta_30", "delta_40"].map(String::from).to_vec());
    for p in points {
        table.push(
            [p.p1, p.delta_10, p.delta_20, p.delta_30, p.delta_40].iter().map(|&v| Cell::Num(v, args.round)).collect(),
        );
    }
    Ok(vec![table].into())
}
