//! `sarkisov`: classify Sarkisov links for blowups of space curves.
//!
//! Exit codes: 0 for a conclusive answer, 2 when the classifier is
//! INCONCLUSIVE, 1 for usage, input and I/O errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use sarkisov_core::catalog::{catalog_from_env, lookup};
use sarkisov_core::expr::parse_divisor;
use sarkisov_core::k3::{is_free_kh_minus_c, is_nef_kh_minus_c, K3LatticeData};
use sarkisov_core::lattice::triple_product;
use sarkisov_core::report::{
    classification_json, classification_text, scan, scan_csv, scan_json, scan_text, ScanRequest,
    ScanStrategy,
};
use sarkisov_core::secant::quadrisecant_count;
use sarkisov_core::{classify, BlowupSetup, ClassifyOptions, Error, SearchBounds};

#[derive(Parser)]
#[command(
    name = "sarkisov",
    version,
    about = "Sarkisov links from blowups of curves in Fano threefolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the link starting from Bl_C of the ambient.
    Classify(ClassifyArgs),
    /// Classify every (d, g) in a grid and print one row per point.
    Scan(ScanArgs),
    /// Nef and free criteria for kH - C on a rank-two K3 lattice.
    K3(K3Args),
    /// Number of 4-secant lines of a general curve in P3.
    Secants(CurveArgs),
    /// Triple intersection D1.D2.D3 on Bl_C of the ambient.
    Triple(TripleArgs),
}

#[derive(Args)]
struct BoundArgs {
    /// Largest modulus tried for congruence obstructions.
    #[arg(long, default_value_t = SearchBounds::default().modulus_sweep_max)]
    modulus_max: u64,
    /// Box |x|, |y| <= BOX for representability witnesses.
    #[arg(long = "box", default_value_t = SearchBounds::default().search_box)]
    search_box: u64,
    /// Box |x|, |y| <= N for the E1 partner search.
    #[arg(long, default_value_t = SearchBounds::default().partner_box)]
    partner_box: u64,
    /// Do not assume C lies on a quartic K3 with Picard lattice ZH + ZC.
    #[arg(long)]
    no_k3_hypothesis: bool,
}

impl BoundArgs {
    fn options(&self) -> Result<ClassifyOptions, Error> {
        let mut options = ClassifyOptions {
            catalog: catalog_from_env()?,
            ..ClassifyOptions::default()
        };
        options.bounds.modulus_sweep_max = self.modulus_max;
        options.bounds.search_box = self.search_box;
        options.bounds.partner_box = self.partner_box;
        options.assumptions.k3_quartic = !self.no_k3_hypothesis;
        Ok(options)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RecordFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Degree of C (at least 5).
    #[arg(short, long = "degree", value_parser = clap::value_parser!(u64).range(5..))]
    d: u64,
    /// Genus of C.
    #[arg(short, long = "genus")]
    g: u64,
    /// Ambient label from the catalog.
    #[arg(long, default_value = "P3")]
    ambient: String,
    #[arg(long, value_enum, default_value = "text")]
    format: RecordFormat,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(5..))]
    d_min: u64,
    #[arg(long)]
    d_max: u64,
    #[arg(long, default_value_t = 0)]
    g_min: u64,
    #[arg(long)]
    g_max: u64,
    #[arg(long, default_value = "P3")]
    ambient: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Classify grid points one at a time.
    #[arg(long)]
    serial: bool,
    /// Write the table here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args)]
struct K3Args {
    /// H^2 = 2n.
    #[arg(long)]
    n: u64,
    /// H.C
    #[arg(long)]
    d: u64,
    /// C^2 = 2g - 2.
    #[arg(long)]
    g: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(short, long)]
    d: u64,
    #[arg(short, long)]
    g: u64,
}

#[derive(Args)]
struct TripleArgs {
    /// Divisors such as 4H-E.
    #[arg(allow_hyphen_values = true)]
    first: String,
    #[arg(allow_hyphen_values = true)]
    second: String,
    #[arg(allow_hyphen_values = true)]
    third: String,
    #[arg(short, long)]
    d: u64,
    #[arg(short, long)]
    g: u64,
    #[arg(long, default_value = "P3")]
    ambient: String,
}

fn setup(label: &str, d: u64, g: u64) -> Result<BlowupSetup, Error> {
    let catalog = catalog_from_env()?;
    BlowupSetup::new(lookup(&catalog, label)?.clone(), d, g)
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Error> {
    let io = |path: String, e: std::io::Error| Error::Io {
        path,
        reason: e.to_string(),
    };
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| io(path.display().to_string(), e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| io("<stdout>".into(), e)),
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Classify(args) => {
            let options = args.bounds.options()?;
            let s = BlowupSetup::new(
                lookup(&options.catalog, &args.ambient)?.clone(),
                args.d,
                args.g,
            )?;
            let c = classify(&s, &options);
            let text = match args.format {
                RecordFormat::Json => classification_json(&c),
                RecordFormat::Text => classification_text(&c),
            };
            emit(&text, None)?;
            Ok(if c.verdict.is_conclusive() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Scan(args) => {
            let options = args.bounds.options()?;
            let ambient = lookup(&options.catalog, &args.ambient)?.clone();
            let request =
                ScanRequest::new(args.d_min, args.d_max, args.g_min, args.g_max, ambient)?;
            let strategy = if args.serial {
                ScanStrategy::Serial
            } else {
                ScanStrategy::Parallel
            };
            let rows = scan(&request, &options, strategy);
            let text = match args.format {
                Format::Csv => scan_csv(&rows),
                Format::Json => scan_json(&request, &rows),
                Format::Text => scan_text(&rows),
            };
            emit(&text, args.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::K3(args) => {
            let l = K3LatticeData::new(args.n, args.d, args.g)?;
            let nef = is_nef_kh_minus_c(&l, args.k)?;
            let free = is_free_kh_minus_c(&l, args.k)?;
            let yes = |b: bool| if b { "yes" } else { "no" };
            emit(
                &format!("nef: {}, free: {}\n", yes(nef.holds), yes(free.holds)),
                None,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Secants(args) => {
            emit(&format!("{}\n", quadrisecant_count(args.d, args.g)?), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Triple(args) => {
            let s = setup(&args.ambient, args.d, args.g)?;
            let [a, b, c] = [&args.first, &args.second, &args.third].map(|t| parse_divisor(t));
            let value: BigInt = triple_product(&a?, &b?, &c?, &s);
            emit(&format!("{value}\n"), None)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
