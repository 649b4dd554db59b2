mod args;
mod compute;
mod error;
mod output;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use isolyap_core::validate::{run_suite, Report, Suite, ValidationOptions};
use isolyap_core::{EnsembleSpec, ModelSpec, ShiftedGaussianSpec};

use args::{Cli, Command, Format, QueryArgs, SweepArgs, ValidateArgs};
use error::CliError;
use output::{emit, fmt_float, sink, write_json, Document};

fn load_spec(path: &Path) -> Result<ModelSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    // pick the layout by its distinguishing key so errors name the real problem
    let parsed = if value.get("rows").is_some() {
        serde_json::from_value::<EnsembleSpec>(value).map(ModelSpec::from)
    } else {
        serde_json::from_value::<ShiftedGaussianSpec>(value).map(ModelSpec::from)
    };
    parsed.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn query(a: &QueryArgs, mc: bool) -> Result<(), CliError> {
    let spec = load_spec(&a.spec)?;
    let computed = if mc {
        compute::monte_carlo(a.quantity, &spec, &a.params)?
    } else {
        compute::exact(a.quantity, &spec, &a.params)?
    };
    let mut doc = Document {
        command: if mc { "mc" } else { "exact" }.into(),
        quantity: a.quantity,
        method: computed.method.clone(),
        spec,
        master_seed: mc.then_some(a.params.seed),
        rows: Vec::new(),
        warnings: Vec::new(),
    };
    doc.push(a.quantity, computed, None);
    emit(&doc, a.output.format, a.output.out.as_deref())
}

fn sweep(a: &SweepArgs) -> Result<(), CliError> {
    let base = load_spec(&a.spec)?;
    let mut doc = Document {
        command: "sweep".into(),
        quantity: a.quantity,
        method: String::new(),
        spec: base.clone(),
        master_seed: a.mc.then_some(a.params.seed),
        rows: Vec::new(),
        warnings: Vec::new(),
    };
    for &v in &a.values {
        let (spec, params) = compute::apply(&base, &a.params, a.param, v)?;
        let c = if a.mc {
            compute::monte_carlo(a.quantity, &spec, &params)?
        } else {
            compute::exact(a.quantity, &spec, &params)?
        };
        if doc.method.is_empty() {
            doc.method = c.method.clone();
        } else if doc.method != c.method && !doc.method.contains(&c.method) {
            doc.method = format!("{}, {}", doc.method, c.method);
        }
        let label = Some((a.param.name().to_string(), v));
        if c.points.len() > 1 {
            return Err(CliError::Config(format!(
                "{} is not a scalar quantity and cannot be swept",
                a.quantity.name()
            )));
        }
        doc.push(a.quantity, c, label);
    }
    emit(&doc, a.format, a.out.as_deref())
}

fn write_report_csv(report: &Report, w: impl std::io::Write) -> Result<(), CliError> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["check", "reference", "estimate", "error", "score", "threshold", "passed"])?;
    for c in &report.checks {
        csv.write_record([
            c.name.clone(),
            fmt_float(c.reference),
            fmt_float(c.estimate),
            fmt_float(c.error),
            fmt_float(c.score),
            fmt_float(c.threshold),
            c.passed.to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

fn validate(a: &ValidateArgs) -> Result<(), CliError> {
    let suite: Suite = a.suite.parse().map_err(CliError::Config)?;
    let specs = a.spec.as_deref().map(load_spec).transpose()?.map(|s| vec![s]);
    let opts = ValidationOptions { samples: a.samples, seed: a.seed, z_limit: a.z_limit };
    let report = run_suite(suite, specs.as_deref(), &opts)?;
    let w = sink(a.output.out.as_deref())?;
    match a.output.format {
        Format::Json => write_json(&report, w)?,
        Format::Csv => write_report_csv(&report, w)?,
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {}: estimate {} reference {} score {}", c.name, c.estimate, c.reference, c.score);
    }
    eprintln!("{suite}: {} of {} checks passed", report.checks.len() - failed, report.checks.len());
    if failed > 0 {
        return Err(CliError::GateFailed { failed, total: report.checks.len() });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Exact(a) => query(a, false),
        Command::Mc(a) => query(a, true),
        Command::Validate(a) => validate(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("isolyap: {e}");
            e.exit_code()
        }
    }
}
