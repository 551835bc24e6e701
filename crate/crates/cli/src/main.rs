use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use fcprofile::{AttributeType, FcParseError, FcValue, NamedParameter, ParseOptions, Profile, Statistic};
use fcprofile_cli::batch::{self, format_number};
use fcprofile_cli::io::{load_profile, save_profile, LoadOptions, Unit};
use fcprofile_cli::report::{self, ErrorJson};
use fcprofile_cli::service::{self, ServiceConfig, DEFAULT_MAX_POINTS};
use fcprofile_cli::fixtures;

#[derive(Parser)]
#[command(name = "fcprofile", version, about = "Feature characterization of surface profiles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// CSV (`z` or `x,z`) or SMD profile.
    #[arg(long, short)]
    input: PathBuf,
    /// Sampling interval for one-column CSV, in the file unit.
    #[arg(long)]
    dx: Option<f64>,
    /// Unit of CSV values: m, mm, um or nm.
    #[arg(long)]
    unit: Option<Unit>,
}

impl Input {
    fn load(&self) -> anyhow::Result<Profile> {
        let options = LoadOptions {
            dx: self.dx,
            unit: self.unit,
        };
        load_profile(&self.input, options).with_context(|| format!("cannot load {}", self.input.display()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one FC specification.
    Eval {
        #[command(flatten)]
        input: Input,
        /// e.g. "FC;D;Wolfprune 5 %;All;HDh;Mean"
        #[arg(long, short)]
        spec: String,
        /// Print the full JSON report.
        #[arg(long)]
        json: bool,
        /// Match keywords ignoring ASCII case.
        #[arg(long)]
        lenient: bool,
    },
    /// Print the motifs of an FC specification as JSON.
    Segment {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        spec: String,
        #[arg(long)]
        lenient: bool,
    },
    /// Evaluate named feature parameters.
    Named {
        #[command(flatten)]
        input: Input,
        /// All seven parameters (default when no --name is given).
        #[arg(long)]
        all: bool,
        /// Parameter name such as R5p or Rvd; repeatable.
        #[arg(long, value_parser = parse_named)]
        name: Vec<NamedParameter>,
        #[arg(long)]
        json: bool,
    },
    /// Named parameters for every profile file in a directory.
    Softgauge {
        #[arg(long)]
        dir: PathBuf,
        /// File extension to pick up.
        #[arg(long, default_value = "smd")]
        ext: String,
        /// Sampling interval for one-column CSV files.
        #[arg(long)]
        dx: Option<f64>,
        #[arg(long)]
        unit: Option<Unit>,
        #[arg(long, value_parser = parse_named)]
        name: Vec<NamedParameter>,
        #[arg(long)]
        json: bool,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Profiles with more points are rejected with 413.
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: usize,
        /// Allowed CORS origin; any origin when omitted.
        #[arg(long)]
        cors_origin: Option<String>,
        /// Directory with static files, e.g. a built UI.
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
    /// List the example profiles or write them as CSV and SMD.
    Examples {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_named(s: &str) -> Result<NamedParameter, String> {
    s.parse()
        .map_err(|_| format!("unknown parameter {s:?}; known: Rpd, Rvd, Rmpc, Rmvc, R5p, R5v, R10z"))
}

fn unit_of(attribute: AttributeType) -> &'static str {
    match attribute {
        AttributeType::Hdh | AttributeType::Hdw | AttributeType::Hdl | AttributeType::Pvh | AttributeType::Hdv => "µm",
        AttributeType::Curvature => "1/µm",
        AttributeType::Count => "",
    }
}

fn value_unit(attribute: AttributeType, statistic: Statistic) -> &'static str {
    match statistic {
        Statistic::Perc(_) => "",
        Statistic::Density => match unit_of(attribute) {
            "µm" => "",
            "" => "1/µm",
            _ => "1/µm²",
        },
        _ => unit_of(attribute),
    }
}

fn print_value(value: &FcValue, unit: &str) {
    match value {
        FcValue::Scalar(v) => {
            let v = format_number(*v);
            if unit.is_empty() {
                println!("value     {v}");
            } else {
                println!("value     {v} {unit}");
            }
        }
        FcValue::Histogram(h) => {
            println!("histogram {} bins", h.counts.len());
            for (k, c) in h.counts.iter().enumerate() {
                println!("  [{}, {})  {c}", format_number(h.edges[k]), format_number(h.edges[k + 1]));
            }
        }
    }
}

fn options(lenient: bool) -> ParseOptions {
    if lenient {
        ParseOptions::lenient()
    } else {
        ParseOptions::default()
    }
}

fn eval(input: &Input, spec: &str, json: bool, lenient: bool) -> anyhow::Result<()> {
    let profile = input.load()?;
    let (out, response) = report::evaluate(&profile, spec, options(lenient))?;
    if json {
        println!("{}", serde_json::to_string(&response)?);
        return Ok(());
    }
    let meta = &out.result.meta;
    println!("{}", response.meta.fc);
    print_value(&out.result.value, value_unit(meta.attribute, meta.statistic));
    println!("motifs    {} ({} significant)", out.motifs.len(), out.motifs.significant_count());
    for w in &out.result.warnings {
        println!("warning   {}", w.code());
    }
    Ok(())
}

fn named_list(all: bool, names: &[NamedParameter]) -> Vec<NamedParameter> {
    if all || names.is_empty() {
        NamedParameter::ALL.to_vec()
    } else {
        names.to_vec()
    }
}

fn write_examples(out: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    for e in fixtures::examples() {
        for ext in ["csv", "smd"] {
            let path = out.join(format!("{}.{ext}", e.name));
            save_profile(&path, &e.profile, e.name)?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Eval {
            input,
            spec,
            json,
            lenient,
        } => eval(&input, &spec, json, lenient),
        Command::Segment { input, spec, lenient } => {
            let profile = input.load()?;
            let (_, response) = report::evaluate(&profile, &spec, options(lenient))?;
            println!("{}", serde_json::to_string(&response.motifs)?);
            Ok(())
        }
        Command::Named { input, all, name, json } => {
            let profile = input.load()?;
            let values = batch::named_values(&profile, &named_list(all, &name));
            if json {
                println!("{}", serde_json::to_string(&values)?);
            } else {
                for v in values {
                    println!("{:<5} {}", v.name, format_number(v.value));
                }
            }
            Ok(())
        }
        Command::Softgauge {
            dir,
            ext,
            dx,
            unit,
            name,
            json,
        } => {
            let names = named_list(false, &name);
            let rows = batch::softgauge(&dir, &ext, LoadOptions { dx, unit }, &names)
                .with_context(|| format!("cannot read {}", dir.display()))?;
            if rows.is_empty() {
                bail!("no .{ext} files in {}", dir.display());
            }
            if json {
                println!("{}", serde_json::to_string(&rows)?);
            } else {
                print!("{}", batch::softgauge_table(&rows, &names));
            }
            Ok(())
        }
        Command::Serve {
            port,
            host,
            max_points,
            cors_origin,
            static_dir,
        } => {
            let config = ServiceConfig {
                max_points,
                cors_origin,
                static_dir,
            };
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(service::serve(SocketAddr::new(host, port), config))?;
            Ok(())
        }
        Command::Examples { out: Some(dir) } => write_examples(&dir),
        Command::Examples { out: None } => {
            for e in fixtures::examples() {
                println!("{:<14} {:>6} points  {}", e.name, e.profile.len(), e.description);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = matches!(cli.command, Command::Eval { json: true, .. });
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match e.downcast_ref::<FcParseError>() {
                Some(fc) if json => eprintln!("{}", serde_json::to_string(&ErrorJson::from(fc)).unwrap()),
                Some(fc) => eprintln!("error in {} field: {fc}", fc.field()),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::FAILURE
        }
    }
}
