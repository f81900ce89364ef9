//! The three subcommands and the exit-code contract.

use hirota_core::chain::{spectrum, Spectrum, SpectrumOptions};
use hirota_core::Error;
use rayon::prelude::*;

use crate::config::{Cli, Command, RunConfig, Suite};
use crate::report::{pair, QEntry, Record, Report, StateEntry};
use crate::suites::{self, Context};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

/// Report (absent on configuration errors), exit code and diagnostic.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub exit_code: u8,
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn from_report(report: Report) -> Self {
        let exit_code = if report.all_pass() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        };
        let diagnostic = (!report.all_pass()).then(|| {
            let first = &report.records[0];
            format!(
                "{} of {} checks failed, first: {} {} {}",
                report.summary.failed,
                report.summary.total,
                first.check,
                first.relation,
                first.label
            )
        });
        Outcome {
            report: Some(report),
            exit_code,
            diagnostic,
        }
    }

    fn error(e: Error) -> Self {
        let exit_code = match e {
            Error::InvalidParameter { .. } | Error::Guard(_) => EXIT_CONFIG,
            _ => EXIT_FAIL,
        };
        Outcome {
            report: None,
            exit_code,
            diagnostic: Some(e.to_string()),
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    if let Err(e) = cli.config.validate() {
        return Outcome::error(e);
    }
    let result = match &cli.command {
        Command::Spectrum => cmd_spectrum(&cli.config),
        Command::Verify { which } => cmd_verify(&cli.config, *which),
        Command::SolveQ => cmd_solve_q(&cli.config),
    };
    match result {
        Ok(report) => Outcome::from_report(report),
        Err(e) => Outcome::error(e),
    }
}

fn chain_spectrum(config: &RunConfig) -> hirota_core::Result<Spectrum> {
    let options = SpectrumOptions {
        seed: config.seed,
        ..SpectrumOptions::default()
    };
    spectrum(&config.chain(), config.kmax, &options)
}

/// Energies and eigenvalue functions per eigenstate, with the interpolation
/// and normalization diagnostics of each level.
pub fn cmd_spectrum(config: &RunConfig) -> hirota_core::Result<Report> {
    let sp = chain_spectrum(config)?;
    let mut records = Vec::new();
    for n in &sp.normalization {
        records.push(
            Record::new("spectrum", "interpolation", "all")
                .k(n.k)
                .measured(n.interpolation_residual, config.tol),
        );
        records.push(
            Record::new("spectrum", "normalization-anchor", "all")
                .k(n.k)
                .measured(n.anchor_deviation, config.tol)
                .note(format!("cancelled factors {}", n.cancelled_factors)),
        );
    }
    let states = sp
        .families
        .iter()
        .map(|f| StateEntry {
            label: f.label.clone(),
            multiplicity: f.multiplicity,
            energy: f.energy,
            t: f.t.clone(),
        })
        .collect();
    let mut report = Report::new(Command::Spectrum.name(), config.clone(), records);
    report.states = Some(states);
    Ok(report)
}

/// Runs the named suites (or all of them) on the configured chain.
pub fn cmd_verify(config: &RunConfig, which: Suite) -> hirota_core::Result<Report> {
    let ctx = Context::new(config.clone(), chain_spectrum(config)?);
    let chosen: Vec<Suite> = if which == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![which]
    };
    let records = chosen
        .par_iter()
        .flat_map_iter(|s| match s {
            Suite::Hirota => suites::hirota(&ctx),
            Suite::Lax => suites::lax(&ctx),
            Suite::Tq => suites::tq(&ctx),
            Suite::HirotaLike => suites::hirota_like(&ctx),
            Suite::Plucker => suites::plucker(&ctx),
            Suite::Identities => suites::identities(&ctx),
            Suite::All => Vec::new(),
        })
        .collect();
    Ok(Report::new(
        Command::Verify { which }.name(),
        config.clone(),
        records,
    ))
}

/// `Q`, its roots and the per-eigenstate checks of [`suites::q_checks`].
pub fn cmd_solve_q(config: &RunConfig) -> hirota_core::Result<Report> {
    let ctx = Context::new(config.clone(), chain_spectrum(config)?);
    let records = ctx
        .spectrum
        .families
        .par_iter()
        .zip(ctx.q.par_iter())
        .flat_map_iter(|(f, q)| suites::q_checks(&ctx, f, q))
        .collect();
    let entries = ctx
        .spectrum
        .families
        .iter()
        .zip(&ctx.q)
        .filter_map(|(f, q)| {
            q.as_ref().ok().map(|q| QEntry {
                label: f.label.clone(),
                degree: q.degree(),
                coefficients: q.q.coeffs().iter().copied().map(pair).collect(),
                roots: q.roots.iter().copied().map(pair).collect(),
                paired: q.paired,
            })
        })
        .collect();
    let mut report = Report::new(Command::SolveQ.name(), config.clone(), records);
    report.q_functions = Some(entries);
    Ok(report)
}
