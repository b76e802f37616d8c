//! Command-line front end: loads a session config, parses element
//! expressions, dispatches the algebra operations, and renders text or
//! JSON. Exit codes: 0 success, 1 usage or parse error, 2 domain error,
//! 3 verification failure.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bichar_core::bichar::SymmetricBicharSpec;
use bichar_core::coeff::rat;
use bichar_core::heisenberg::{field_state, normal_ordered_apply, twisted_bullet_state, FieldWord};
use bichar_core::lattice::{flm_series, rank1_mode_bicharacter, run_flm_example};
use bichar_core::parse::{parse_element, parse_rational};
use bichar_core::quadop::QuadraticOperator;
use bichar_core::twist::{bullet_product, eq_map, twisted_product};
use bichar_core::{BicharSpec, Error, HopfElement, Result};

use config::SessionConfig;

#[derive(Parser)]
#[command(name = "bichar", version, about = "Exact bicharacter-twisted Hopf algebra calculator")]
struct Cli {
    /// Session config (TOML or JSON)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the EQ map of a named bicharacter to an element
    Eq {
        #[arg(long)]
        bichar: String,
        expr: String,
    },
    /// Apply the exponential of the quadratic operator to an element
    Expq {
        #[arg(long)]
        bichar: String,
        expr: String,
    },
    /// Bullet product of one or more factors (table symmetrized first)
    Bullet {
        #[arg(long)]
        bichar: String,
        #[arg(required = true)]
        factors: Vec<String>,
    },
    /// Twisted product of two elements by a named (possibly asymmetric) table
    Twist {
        #[arg(long)]
        bichar: String,
        left: String,
        right: String,
    },
    /// Convolution product of two named bicharacters
    Convolve { first: String, second: String },
    /// Symmetrization of a named bicharacter
    Symmetrize {
        #[arg(long)]
        bichar: String,
    },
    /// Square root of a symmetric bicharacter over the rationals
    Root {
        #[arg(long)]
        bichar: String,
    },
    /// Coefficients of the generating series to a total order
    FlmSeries {
        #[arg(long)]
        order: u32,
    },
    /// Run the worked lattice example end to end
    FlmExample,
    /// State of an untwisted normal ordered field word (orders as `0,1,2`)
    FieldState {
        #[arg(long)]
        word: String,
        /// Optional z-exponent window `LO..HI` to print instead of the z^0 state
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Bullet-product state of a twisted field word
    TwistedBullet {
        #[arg(long)]
        word: String,
        /// Lattice norm ⟨a|a⟩ (defaults to the config lattice, else 2)
        #[arg(long)]
        norm: Option<String>,
        /// Mode depth of the comparison table
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Run the seeded randomized verification suites
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not failures
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::ParseError { .. } | Error::UnknownGenerator(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn session(cli: &Cli) -> Result<SessionConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Invalid("this command needs --config".into()))?;
    SessionConfig::load(path)
}

fn print_element(cli: &Cli, e: &HopfElement) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("valid JSON"));
    } else {
        println!("{e}");
    }
}

fn print_spec(cli: &Cli, spec: &BicharSpec) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&spec.to_json()).expect("valid JSON")
        );
        return;
    }
    let sig = spec.signature();
    let l = sig.num_grouplike();
    if l > 0 {
        println!("gg:");
        for i in 0..l {
            let row: Vec<String> = (0..l).map(|j| spec.gg(i, j).to_string()).collect();
            println!("  [{}]", row.join(", "));
        }
    }
    for ((i, m), v) in spec.gp_entries() {
        println!("gp(a{}, {}): {v}", i + 1, sig.primitive_name(m));
    }
    for ((m, i), v) in spec.pg_entries() {
        println!("pg({}, a{}): {v}", sig.primitive_name(m), i + 1);
    }
    for ((m, n), v) in spec.pp_entries() {
        println!(
            "pp({}, {}): {v}",
            sig.primitive_name(m),
            sig.primitive_name(n)
        );
    }
}

fn parse_word(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<u32>().map_err(|_| Error::ParseError {
                offset: 0,
                expected: "a comma-separated list of derivative orders".into(),
            })
        })
        .collect()
}

fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text.split_once("..").ok_or_else(|| Error::ParseError {
        offset: 0,
        expected: "a window of the form LO..HI".into(),
    })?;
    let parse = |s: &str| {
        s.trim().parse::<i64>().map_err(|_| Error::ParseError {
            offset: 0,
            expected: "integer window bounds".into(),
        })
    };
    Ok((parse(lo)?, parse(hi)?))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Eq { bichar, expr } => {
            let cfg = session(cli)?;
            let spec = cfg.bicharacter(bichar)?;
            let a = parse_element(expr, &cfg.signature)?;
            print_element(cli, &eq_map(spec, &a)?);
        }
        Command::Expq { bichar, expr } => {
            let cfg = session(cli)?;
            let spec = cfg.bicharacter(bichar)?;
            let a = parse_element(expr, &cfg.signature)?;
            print_element(cli, &QuadraticOperator::new(spec.clone()).apply_exp_q(&a));
        }
        Command::Bullet { bichar, factors } => {
            let cfg = session(cli)?;
            let s = cfg.bicharacter(bichar)?.symmetrize();
            let mut acc: Option<HopfElement> = None;
            for text in factors {
                let f = parse_element(text, &cfg.signature)?;
                acc = Some(match acc {
                    None => f,
                    Some(prev) => bullet_product(&s, &prev, &f)?,
                });
            }
            print_element(cli, &acc.expect("at least one factor"));
        }
        Command::Twist { bichar, left, right } => {
            let cfg = session(cli)?;
            let spec = cfg.bicharacter(bichar)?;
            let a = parse_element(left, &cfg.signature)?;
            let b = parse_element(right, &cfg.signature)?;
            print_element(cli, &twisted_product(spec, &a, &b)?);
        }
        Command::Convolve { first, second } => {
            let cfg = session(cli)?;
            let r1 = cfg.bicharacter(first)?;
            let r2 = cfg.bicharacter(second)?;
            print_spec(cli, &r1.convolve(r2)?);
        }
        Command::Symmetrize { bichar } => {
            let cfg = session(cli)?;
            print_spec(cli, cfg.bicharacter(bichar)?.symmetrize().spec());
        }
        Command::Root { bichar } => {
            let cfg = session(cli)?;
            let sym = SymmetricBicharSpec::new(cfg.bicharacter(bichar)?.clone())?;
            print_spec(cli, &sym.grouplike_root()?);
        }
        Command::FlmSeries { order } => {
            let c = flm_series(*order);
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&c.to_json()).expect("valid JSON")
                );
            } else {
                for ((m, n), v) in c.iter() {
                    println!("c({m},{n}) = {v}");
                }
            }
        }
        Command::FlmExample => {
            let cfg = session(cli)?;
            let lattice = cfg
                .lattice
                .as_ref()
                .ok_or_else(|| Error::Invalid("flm-example needs a [lattice] section".into()))?;
            let report = run_flm_example(lattice)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("valid JSON")
                );
            } else {
                print!("{}", report.render_text());
            }
            if !report.all_equal() {
                return Ok(ExitCode::from(3));
            }
        }
        Command::FieldState { word, window } => {
            let w = FieldWord::new(parse_word(word)?, false)?;
            match window {
                None => print_element(cli, &field_state(&w)?),
                Some(win) => {
                    let (lo, hi) = parse_window(win)?;
                    let value = normal_ordered_apply(
                        &w,
                        &bichar_core::heisenberg::vacuum(false),
                        2 * lo,
                        2 * hi,
                    )?;
                    if cli.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&value.to_json()).expect("valid JSON")
                        );
                    } else {
                        for (e2, state) in value.iter() {
                            println!("z^{}: {state}", e2 / 2);
                        }
                    }
                }
            }
        }
        Command::TwistedBullet { word, norm, depth } => {
            let factors = parse_word(word)?;
            let norm = match norm {
                Some(text) => parse_rational(text)?,
                None => match session(cli) {
                    Ok(cfg) => match &cfg.lattice {
                        Some(lat) => lat.gram(0, 0),
                        None => rat(2, 1),
                    },
                    Err(_) => rat(2, 1),
                },
            };
            let depth =
                depth.unwrap_or_else(|| factors.iter().map(|&d| d + 1).max().unwrap_or(1));
            let r = rank1_mode_bicharacter(&norm, depth);
            let w = FieldWord::new(factors, true)?;
            print_element(cli, &twisted_bullet_state(&w, &r)?);
        }
        Command::Verify { seed } => {
            let reports = bichar_core::verify::run_all(*seed);
            let mut failed = false;
            for r in &reports {
                if r.passed() {
                    println!("{}: pass ({} cases)", r.name, r.cases);
                } else {
                    failed = true;
                    println!("{}: FAIL ({} of {} cases)", r.name, r.failures.len(), r.cases);
                    for f in &r.failures {
                        println!("  {f}");
                    }
                }
            }
            if failed {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
