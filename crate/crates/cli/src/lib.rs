//! Command implementations behind the `polyad` binary. Each command returns
//! its rendered output and an exit status: 0 success, 1 verification
//! failure, 2 usage or parse error.

pub mod model_file;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use polyad::audit::{audit_counting, CoupleKind};
use polyad::counting::totals;
use polyad::hilbert::{phase_curve, write_phase_csv};
use polyad::quantum::{
    blocks, conserved_lattice, levels_of, write_spectrum_csv, TermKind, Truncation,
};
use polyad::tables::{compare_tables, published_table, regenerate_table, CountTable};
use polyad::terms::{enumerate_coupling, enumerate_dunham, GenMonomial, MPart};
use polyad::ResonanceSpec;
use serde_json::json;
use thiserror::Error;

use crate::model_file::{ModelFile, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] polyad::Error),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "polyad",
    version,
    about = "Counting, enumeration and spectra of p:q resonance Hamiltonians"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    All,
    Dunham,
    Coupling,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient and monomial counts of the expansion to order N.
    Count {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: u32,
    },
    /// List the independent monomials of the expansion.
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value_t = EnumerateKind::All)]
        kind: EnumerateKind,
    },
    /// Regenerate the three count tables and compare with the published cells.
    VerifyTables,
    /// Multiplicity bookkeeping of the 2- or 3-couples at order N.
    Audit {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        order: u32,
        /// 2 for 2-couples, 3 for 3-couples.
        #[arg(long, default_value_t = 2)]
        arity: u32,
    },
    /// Block-diagonalize a model file and write its levels.
    Spectrum {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        pmax: u32,
        #[arg(long)]
        n3max: u32,
    },
    /// Cross-section σ-1' = 0 of the reduced phase space.
    PhaseSpace {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Energy in units of ω2.
        #[arg(long)]
        h0: f64,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        /// Values of σ3..σn, comma separated.
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<f64>,
    },
}

/// Rendered command result.
#[derive(Debug, Default, PartialEq)]
pub struct Output {
    pub body: String,
    /// Short summary for the terminal; goes to stderr when `body` is on stdout.
    pub summary: String,
    pub status: u8,
}

impl Output {
    fn ok(body: String) -> Self {
        Self {
            body,
            ..Self::default()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    run_with_tables(cli, &|which| {
        regenerate_table(which).expect("tables 1 to 3")
    })
}

/// Same as [`run`], with the table generator replaceable for `verify-tables`.
pub fn run_with_tables(
    cli: &Cli,
    generator: &dyn Fn(u8) -> CountTable,
) -> Result<Output, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Count { p, q, n, order } => count(format, *n, *order, *p, *q),
        Command::Enumerate {
            p,
            q,
            n,
            order,
            kind,
        } => enumerate(format, *n, *order, *p, *q, *kind),
        Command::VerifyTables => Ok(verify_tables(format, generator)),
        Command::Audit { p, q, order, arity } => audit(format, *order, *p, *q, *arity),
        Command::Spectrum { model, pmax, n3max } => spectrum(format, model, *pmax, *n3max),
        Command::PhaseSpace {
            p,
            q,
            n,
            h0,
            samples,
            sigma,
        } => phase_space(format, *p, *q, *n, *h0, *samples, sigma),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn key_values(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn count(format: Format, n: usize, order: u32, p: u32, q: u32) -> Result<Output, CliError> {
    let r = totals(n, order, p, q)?;
    Ok(Output::ok(match format {
        Format::Json => to_json(&r),
        Format::Table => key_values(&[
            ("n", r.n.to_string()),
            ("N", r.order.to_string()),
            ("p:q", format!("{}:{}", r.p, r.q)),
            ("Q0", r.q0.to_string()),
            ("Q1", r.q1.to_string()),
            ("Lambda1", r.lambda1_raw.to_string()),
            ("Lambda2", r.lambda2_raw.to_string()),
            ("Delta1", r.delta1.to_string()),
            ("Delta2", r.delta2.to_string()),
            ("Lambda", r.lambda.to_string()),
            ("N_coef", r.n_coef.to_string()),
            ("N_op", r.n_op.to_string()),
            ("N_c", r.n_c.to_string()),
        ]),
    }))
}

fn monomial_text(m: &GenMonomial) -> String {
    let mut parts = Vec::new();
    if let Some(part) = m.m {
        let name = match part {
            MPart::MinusOne => "sigma-1",
            MPart::Zero => "sigma0",
        };
        parts.push(if m.m_exp == 1 {
            name.to_string()
        } else {
            format!("{name}^{}", m.m_exp)
        });
    }
    for (k, &e) in m.num_exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("sigma{}", k + 1)),
            _ => parts.push(format!("sigma{}^{e}", k + 1)),
        }
    }
    parts.join(" ")
}

fn enumerate(
    format: Format,
    n: usize,
    order: u32,
    p: u32,
    q: u32,
    kind: EnumerateKind,
) -> Result<Output, CliError> {
    ResonanceSpec::new(n, p, q)?;
    let mut list: Vec<GenMonomial> = Vec::new();
    if kind != EnumerateKind::Coupling {
        list.extend(enumerate_dunham(n, order));
    }
    if kind != EnumerateKind::Dunham {
        list.extend(enumerate_coupling(n, order, p, q));
    }
    let body = match format {
        Format::Json => to_json(&list),
        Format::Table => list
            .iter()
            .map(|m| format!("{:>3}  {}\n", m.z_degree(p, q), monomial_text(m)))
            .collect(),
    };
    Ok(Output {
        body,
        summary: format!("{} monomials\n", list.len()),
        status: 0,
    })
}

fn verify_tables(format: Format, generator: &dyn Fn(u8) -> CountTable) -> Output {
    let mut checks = Vec::new();
    for which in 1..=3 {
        checks.extend(compare_tables(
            &published_table(which).expect("tables 1 to 3"),
            &generator(which),
        ));
    }
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
    let summary: String = (1..=3u8)
        .map(|w| {
            let cells: Vec<_> = checks.iter().filter(|c| c.which == w).collect();
            format!(
                "table {w}: {}/{} cells match\n",
                cells.iter().filter(|c| c.pass).count(),
                cells.len()
            )
        })
        .collect();
    let body = match format {
        Format::Json => to_json(&json!({ "pass": failed.is_empty(), "cells": checks })),
        Format::Table => {
            let mut s = String::new();
            for c in &checks {
                let key = if c.which == 3 { "p+q" } else { "N" };
                let col = if c.which == 3 {
                    c.column.clone()
                } else {
                    format!("p+q={}", c.column)
                };
                let got = c.computed.map_or("missing".to_string(), |v| v.to_string());
                let _ = writeln!(
                    s,
                    "table {} {key}={} {col}: expected {} computed {got} {}",
                    c.which,
                    c.row,
                    c.expected,
                    if c.pass { "PASS" } else { "FAIL" }
                );
            }
            s.push_str(&summary);
            s
        }
    };
    let mut summary = summary;
    for c in &failed {
        let _ = writeln!(
            summary,
            "mismatch: table {} row {} column {}",
            c.which, c.row, c.column
        );
    }
    Output {
        body,
        summary,
        status: if failed.is_empty() { 0 } else { 1 },
    }
}

fn audit(format: Format, order: u32, p: u32, q: u32, arity: u32) -> Result<Output, CliError> {
    ResonanceSpec::new(2, p, q)?;
    let kind = CoupleKind::from_arity(arity)
        .ok_or_else(|| CliError::Usage(format!("arity must be 2 or 3, got {arity}")))?;
    let a = audit_counting(order, p, q, kind);
    Ok(Output::ok(match format {
        Format::Json => to_json(&a),
        Format::Table => key_values(&[
            ("N", a.order.to_string()),
            ("p:q", format!("{}:{}", a.p, a.q)),
            ("couples", format!("{arity}-couples")),
            (
                "k'",
                a.decomposition.map_or("-".into(), |d| d.kprime.to_string()),
            ),
            ("i", a.decomposition.map_or("-".into(), |d| d.i.to_string())),
            ("lambda_raw", a.lambda_raw.to_string()),
            ("pop_class_k'", a.pop_class_kprime.to_string()),
            ("pop_other_classes", a.pop_other_classes.to_string()),
            ("alpha", a.switched_off_alpha.to_string()),
            ("alpha_bar", a.present_without_multiplicity.to_string()),
            ("delta", a.delta.to_string()),
        ]),
    }))
}

pub const THREE_TO_ONE_NOTE: &str =
    "note: extra couplings are Hermitian pairs; the 3:1 term is a3+ a2^3 + a2+^3 a3 (the printed form a2+ a3 + a3+ a2^3 is not self-adjoint)";

fn spectrum(format: Format, path: &Path, pmax: u32, n3max: u32) -> Result<Output, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let file = ModelFile::parse(&text).map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })?;
    let model = file.to_model()?;
    if model.n() < 3 && n3max > 0 {
        return Err(CliError::Usage(
            "n3max needs at least three oscillators".into(),
        ));
    }
    let trunc = Truncation::new(pmax, n3max);
    let all = blocks(&model, &trunc);
    let levels = levels_of(&model, &all);
    let has_extra = model
        .terms()
        .any(|(t, c)| c != 0.0 && matches!(t, TermKind::ExtraCoupling { .. }));
    let lattice = conserved_lattice(&model);
    let mut summary = format!(
        "{} blocks, {} levels\nconserved forms: {lattice:?}\n",
        all.len(),
        levels.len()
    );
    if has_extra {
        summary.push_str(THREE_TO_ONE_NOTE);
        summary.push('\n');
    }
    let body = match format {
        Format::Json => to_json(&json!({
            "blocks": all.len(),
            "levels": levels,
            "conserved_forms": lattice,
            "note": if has_extra { Some(THREE_TO_ONE_NOTE) } else { None },
        })),
        Format::Table => {
            let mut buf = Vec::new();
            write_spectrum_csv(&levels, &mut buf).expect("write to memory");
            String::from_utf8(buf).expect("ascii")
        }
    };
    Ok(Output {
        body,
        summary,
        status: 0,
    })
}

fn phase_space(
    format: Format,
    p: u32,
    q: u32,
    n: usize,
    h0: f64,
    samples: usize,
    sigma: &[f64],
) -> Result<Output, CliError> {
    let spec = ResonanceSpec::new(n, p, q)?;
    let fixed = if sigma.is_empty() {
        vec![0.0; n - 2]
    } else {
        sigma.to_vec()
    };
    let omega2 = spec.frequencies()[1];
    let points = phase_curve(&spec, h0 * omega2, &fixed, samples)?;
    let body = match format {
        Format::Json => to_json(
            &points
                .iter()
                .map(|pt| json!({ "sigma1": pt.sigma1, "sigma0p": pt.sigma0p, "sigmam1p": pt.sigmam1p, "residual": pt.residual }))
                .collect::<Vec<_>>(),
        ),
        Format::Table => {
            let mut buf = Vec::new();
            write_phase_csv(&points, &mut buf).expect("write to memory");
            String::from_utf8(buf).expect("ascii")
        }
    };
    Ok(Output {
        body,
        summary: format!("{} points\n", points.len()),
        status: 0,
    })
}
