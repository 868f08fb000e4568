//! Batch CLI over the computational kernels: single-sum evaluation,
//! identity-verification grids, Petersson averages, density tables, prime
//! sum sweeps, and ingested-data processing.

mod cli;
mod commands;
mod config;
mod output;

use clap::Parser;

use cli::{
    AsumCmd, Cli, Command, DensityCmd, ExplicitCmd, PeterssonCmd, QstarCmd, SumCmd, VerifyCmd,
};
use config::{CliError, Ctx};
use output::{emit, render, Format, Table};

fn main() {
    let args = Cli::parse();
    std::process::exit(run(args));
}

fn run(args: Cli) -> i32 {
    let ctx = match &args.config {
        Some(path) => match Ctx::from_file(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("{e}");
                return e.exit_code();
            }
        },
        None => Ctx::empty(),
    };
    let outcome = dispatch(&args, &ctx);
    match outcome {
        Ok((name, table)) => {
            let format = match args
                .format
                .as_deref()
                .map(Format::parse)
                .unwrap_or(Ok(Format::Csv))
            {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("{e}");
                    return e.exit_code();
                }
            };
            let seed_note = args
                .seed
                .map(|s| format!(" seed={s}"))
                .unwrap_or_default();
            let provenance = format!("{}{}", ctx.provenance(), seed_note);
            let text = render(&name, provenance.trim(), format, &table);
            if let Err(e) = emit(&text, args.out.as_deref()) {
                eprintln!("{e}");
                return e.exit_code();
            }
            if args.assert && table.failures > 0 {
                eprintln!("{} row(s) failed verification", table.failures);
                return 1;
            }
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn dispatch(args: &Cli, ctx: &Ctx) -> Result<(String, Table), CliError> {
    let seed = args.seed.unwrap_or(0);
    Ok(match &args.command {
        Command::Sum { which } => match which {
            SumCmd::Kloosterman(a) => (
                "sum kloosterman".into(),
                commands::sum_kloosterman(ctx, a)?,
            ),
            SumCmd::Gauss(a) => ("sum gauss".into(), commands::sum_gauss(ctx, a)?),
            SumCmd::Ramanujan(a) => ("sum ramanujan".into(), commands::sum_ramanujan(ctx, a)?),
        },
        Command::Verify { which } => match which {
            VerifyCmd::Vonsterneck(a) => (
                "verify vonsterneck".into(),
                commands::verify_vonsterneck(ctx, a)?,
            ),
            VerifyCmd::Lemma62(a) => ("verify lemma62".into(), commands::verify_lemma62(ctx, a)?),
            VerifyCmd::Lemma63(a) => ("verify lemma63".into(), commands::verify_lemma63(ctx, a)?),
            VerifyCmd::Lemma64(a) => ("verify lemma64".into(), commands::verify_lemma64(ctx, a)?),
            VerifyCmd::Lemma65(a) => ("verify lemma65".into(), commands::verify_lemma65(ctx, a)?),
            VerifyCmd::Split(a) => (
                "verify split".into(),
                commands::verify_split(ctx, a, seed)?,
            ),
            VerifyCmd::Charprod(a) => (
                "verify charprod".into(),
                commands::verify_charprod(ctx, a)?,
            ),
        },
        Command::Petersson { which } => match which {
            PeterssonCmd::Delta(a) => (
                "petersson delta".into(),
                commands::petersson_delta(ctx, a)?,
            ),
        },
        Command::Density { which } => match which {
            DensityCmd::Table => ("density table".into(), commands::density_table(ctx)?),
            DensityCmd::MainTerm(a) => (
                "density main-term".into(),
                commands::density_main_term(ctx, a)?,
            ),
            DensityCmd::Pole(a) => ("density pole".into(), commands::density_pole(ctx, a)?),
            DensityCmd::PoleProduct(a) => (
                "density pole-product".into(),
                commands::density_pole_product(ctx, a)?,
            ),
        },
        Command::Qstar { which } => match which {
            QstarCmd::Brute(a) => ("qstar brute".into(), commands::qstar_single(ctx, a, false)?),
            QstarCmd::Main(a) => ("qstar main".into(), commands::qstar_single(ctx, a, true)?),
            QstarCmd::Sweep(a) => ("qstar sweep".into(), commands::qstar_sweep(ctx, a)?),
        },
        Command::Asum { which } => match which {
            AsumCmd::Sweep(a) => ("asum sweep".into(), commands::asum_sweep(ctx, a)?),
        },
        Command::Explicit { which } => match which {
            ExplicitCmd::S(a) => ("explicit s".into(), commands::explicit_s(ctx, a)?),
            ExplicitCmd::Density(a) => (
                "explicit density".into(),
                commands::explicit_density(ctx, a)?,
            ),
            ExplicitCmd::Residual(a) => (
                "explicit residual".into(),
                commands::explicit_residual(ctx, a)?,
            ),
        },
    })
}
