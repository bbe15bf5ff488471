use clap::{Args, Parser, Subcommand};
use meandim_cli::{
    run_certify, run_construct, run_pipeline, run_plan, run_spectrum, run_synth, RunConfig,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "meandim",
    about = "Build minimal subshifts of prescribed mean dimension, embed them as band-limited signals, and emit finite-level certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive and validate construction parameters
    Plan {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        #[arg(long, default_value = "strict")]
        mode: String,
        #[arg(long, default_value_t = 64)]
        search_bound: u32,
    },
    /// Build pattern words up to kmax and report the star proportions
    Construct(CommonArgs),
    /// Synthesize a signal, dump samples and run the coefficient round trip
    Synth(CommonArgs),
    /// Band-energy report for the synthesis image, its modulation and realification
    Spectrum(CommonArgs),
    /// Mean-dimension certificates and minimality evidence
    Certify(CommonArgs),
    /// Run every stage and write a single summary with overall pass/fail
    Pipeline(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key=value config file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    eps0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long)]
    kmax: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "tol-band")]
    tol_band: Option<f64>,
    #[arg(long = "tol-roundtrip")]
    tol_roundtrip: Option<f64>,
    #[arg(long = "window-radius")]
    window_radius: Option<i64>,
    #[arg(long = "exp-sign")]
    exp_sign: Option<String>,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long = "search-bound")]
    search_bound: Option<u32>,
    #[arg(long = "spectrum-radius")]
    spectrum_radius: Option<f64>,
    #[arg(long = "spectrum-step")]
    spectrum_step: Option<f64>,
}

impl CommonArgs {
    fn build(&self) -> meandim::Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set_opt {
            ($field:ident, $key:literal) => {
                if let Some(v) = &self.$field {
                    cfg.set($key, &v.to_string())?;
                }
            };
        }
        set_opt!(a, "a");
        set_opt!(b, "b");
        set_opt!(s, "s");
        set_opt!(mode, "mode");
        set_opt!(p, "p");
        set_opt!(q, "q");
        set_opt!(eps0, "eps0");
        set_opt!(c, "c");
        set_opt!(kmax, "kmax");
        set_opt!(seed, "seed");
        set_opt!(tol_band, "tol_band");
        set_opt!(tol_roundtrip, "tol_roundtrip");
        set_opt!(window_radius, "window_radius");
        set_opt!(exp_sign, "exp_sign");
        set_opt!(trials, "trials");
        set_opt!(search_bound, "search_bound");
        set_opt!(spectrum_radius, "spectrum_radius");
        set_opt!(spectrum_step, "spectrum_step");
        if let Some(out) = &self.out {
            cfg.out = out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn print_report(name: &str, value: &serde_json::Value, pass: bool) {
    println!("{}", serde_json::to_string_pretty(value).unwrap());
    println!("{name}: {}", if pass { "PASS" } else { "FAIL" });
}

fn run(cli: Cli) -> meandim::Result<bool> {
    match cli.command {
        Command::Plan {
            a,
            b,
            s,
            mode,
            search_bound,
        } => {
            let cfg = RunConfig {
                a,
                b,
                s,
                mode: meandim::params::Mode::parse(&mode)?,
                search_bound,
                ..RunConfig::default()
            };
            let (params, value, pass) = run_plan(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            print!("{}", params.to_config());
            println!("plan: {}", if pass { "PASS" } else { "FAIL" });
            Ok(pass)
        }
        Command::Construct(args) => {
            let cfg = args.build()?;
            let (value, pass) = run_construct(&cfg)?;
            print_report("construct", &value, pass);
            Ok(pass)
        }
        Command::Synth(args) => {
            let cfg = args.build()?;
            let (value, pass) = run_synth(&cfg)?;
            print_report("synth", &value, pass);
            Ok(pass)
        }
        Command::Spectrum(args) => {
            let cfg = args.build()?;
            let (value, pass) = run_spectrum(&cfg)?;
            print_report("spectrum", &value, pass);
            Ok(pass)
        }
        Command::Certify(args) => {
            let cfg = args.build()?;
            let (value, pass) = run_certify(&cfg)?;
            println!(
                "{:>3} {:>9} {:>9} {:>12} {:>12} {:>12}",
                "k", "N_k", "stars", "lower", "upper", "gap"
            );
            if let Some(levels) = value["certificates"]["levels"].as_array() {
                for level in levels {
                    let r = &level["report"];
                    println!(
                        "{:>3} {:>9} {:>9} {:>12.6} {:>12.6} {:>12.6}",
                        r["k"],
                        r["n_len"],
                        r["stars"],
                        r["lower_k"].as_f64().unwrap_or(f64::NAN),
                        r["upper_k"].as_f64().unwrap_or(f64::NAN),
                        r["upper_k"].as_f64().unwrap_or(f64::NAN)
                            - r["lower_k"].as_f64().unwrap_or(f64::NAN),
                    );
                }
            }
            print_report("certify", &value, pass);
            Ok(pass)
        }
        Command::Pipeline(args) => {
            let cfg = args.build()?;
            let outcome = run_pipeline(&cfg)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&outcome.summary["stage_pass"]).unwrap()
            );
            println!(
                "pipeline: {} (summary at {})",
                if outcome.overall_pass { "PASS" } else { "FAIL" },
                cfg.out.join("summary.json").display()
            );
            Ok(outcome.overall_pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
