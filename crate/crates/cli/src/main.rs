//! `sdi` — batch lesion segmentation and evaluation.
//!
//! Exit codes: 0 on full success, 1 on fatal errors (missing inputs, nothing
//! to evaluate, unusable configuration), 2 when a run completed but some
//! images failed. Logs go to stderr (level via `SDI_LOG`); stdout carries one
//! machine-readable JSON summary line per invocation.

mod args;
mod eval_cmd;
mod manifest;
mod render;
mod segment_cmd;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command, EvalArgs, RunArgs, SegmentArgs};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SDI_LOG", "warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Segment(args) => cmd_segment(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Run(args) => cmd_run(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn cmd_segment(args: &SegmentArgs) -> anyhow::Result<ExitCode> {
    let cfg = args.config.resolve()?;
    let outcome = segment_cmd::run(args, &cfg)?;
    println!(
        "{}",
        serde_json::json!({
            "command": "segment",
            "images": outcome.manifest.results.len(),
            "failed": outcome.failed,
            "output": args.output.display().to_string(),
            "total_ms": outcome.manifest.total_ms,
        })
    );
    Ok(if outcome.failed > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_eval(args: &EvalArgs) -> anyhow::Result<ExitCode> {
    let report_path = match (&args.report, &args.output) {
        (Some(report), _) => report.clone(),
        (None, Some(output)) => output.join("report.csv"),
        (None, None) => args.input.join("report.csv"),
    };
    let outcome = eval_cmd::run(&args.input, &args.truth, &report_path, None)?;
    println!(
        "{}",
        serde_json::json!({
            "command": "eval",
            "evaluated": outcome.evaluated,
            "failed": outcome.failed,
            "mean_jaccard": outcome.mean_jaccard,
            "report": outcome.report_path.display().to_string(),
        })
    );
    Ok(if outcome.failed > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_run(args: &RunArgs) -> anyhow::Result<ExitCode> {
    let cfg = args.segment.config.resolve()?;
    let seg = segment_cmd::run(&args.segment, &cfg)?;
    let report_path = args
        .report
        .clone()
        .unwrap_or_else(|| args.segment.output.join("report.csv"));
    let eval = eval_cmd::run(
        &args.segment.output,
        &args.truth,
        &report_path,
        Some(&seg.manifest),
    )?;
    println!(
        "{}",
        serde_json::json!({
            "command": "run",
            "images": seg.manifest.results.len(),
            "segment_failed": seg.failed,
            "evaluated": eval.evaluated,
            "eval_failed": eval.failed,
            "mean_jaccard": eval.mean_jaccard,
            "report": eval.report_path.display().to_string(),
        })
    );
    Ok(if seg.failed > 0 || eval.failed > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}
