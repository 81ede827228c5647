use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fea2vr_cli::convert::{self, check_field_name, ConvertOptions};
use fea2vr_cli::serve::{self, Served};
use fea2vr_cli::{load_document, Failure};
use fea2vr_core::{stats, validate, BuildOptions, ElementClass, MissingPolicy, TypeMapping};

#[derive(Parser)]
#[command(name = "fea2vr", version, about = "Turn finite-element listings into surface meshes for a VR viewer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert node/element listings (plus optional surface nodes and results) to vrmesh
    Convert(ConvertArgs),
    /// Print vertex, triangle and field statistics of a vrmesh file
    Inspect { file: PathBuf },
    /// Check a vrmesh file for bad indices, degenerate or duplicate triangles
    Validate { file: PathBuf },
    /// Serve a vrmesh file and the viewer over HTTP
    Serve(ServeArgs),
}

#[derive(Args)]
struct ConvertArgs {
    /// Node listing (id x y z)
    #[arg(long)]
    nodes: PathBuf,
    /// Element listing (EL MAT TYP REL ESY SEC nodes...)
    #[arg(long)]
    elements: PathBuf,
    /// Surface node listing; without it every node is kept
    #[arg(long)]
    surface_nodes: Option<PathBuf>,
    /// Per-node result listing as NAME=FILE, repeatable
    #[arg(long = "results", value_name = "NAME=FILE", value_parser = parse_results)]
    results: Vec<(String, PathBuf)>,
    /// Units of a result field as NAME=UNIT, repeatable
    #[arg(long = "units", value_name = "NAME=UNIT", value_parser = parse_units)]
    units: Vec<(String, String)>,
    /// Element type mapping as TYP=CLASS (shell, hex8, solid92, unsupported), repeatable
    #[arg(long = "etype", value_name = "N=CLASS", value_parser = parse_etype)]
    etype: Vec<(i64, ElementClass)>,
    /// Which value after the node id to read from result listings (1-based)
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    value_column: u32,
    /// Remove faces shared by two elements
    #[arg(long)]
    dedup_faces: bool,
    /// Remove zero-area triangles
    #[arg(long)]
    drop_degenerate: bool,
    /// Store missing result values as null instead of failing
    #[arg(long)]
    fill_missing: bool,
    /// Write an empty mesh instead of failing when nothing remains
    #[arg(long)]
    allow_empty: bool,
    /// Output vrmesh file
    #[arg(short = 'o', long = "output", value_name = "OUT.vrmesh.json")]
    output: PathBuf,
    /// Also write an OBJ file
    #[arg(long)]
    obj: Option<PathBuf>,
    /// Also write the conversion counts as JSON
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also write each field as a per-vertex listing NAME.lis into DIR
    #[arg(long, value_name = "DIR")]
    emit_remapped_results: Option<PathBuf>,
}

#[derive(Args)]
struct ServeArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
    /// Directory holding the viewer build
    #[arg(long, value_name = "DIR")]
    assets: Option<PathBuf>,
}

fn split_pair(s: &str) -> Result<(&str, &str), String> {
    s.split_once('=')
        .filter(|(k, v)| !k.is_empty() && !v.is_empty())
        .ok_or_else(|| format!("expected KEY=VALUE, got '{s}'"))
}

fn parse_results(s: &str) -> Result<(String, PathBuf), String> {
    let (name, path) = split_pair(s)?;
    check_field_name(name)?;
    Ok((name.to_string(), PathBuf::from(path)))
}

fn parse_units(s: &str) -> Result<(String, String), String> {
    let (name, unit) = split_pair(s)?;
    Ok((name.to_string(), unit.to_string()))
}

fn parse_etype(s: &str) -> Result<(i64, ElementClass), String> {
    TypeMapping::parse_pair(s).map_err(|e| e.to_string())
}

impl ConvertArgs {
    fn into_options(self) -> ConvertOptions {
        let mut mapping = TypeMapping::default();
        for (typ, class) in self.etype {
            mapping.insert(typ, class);
        }
        ConvertOptions {
            surface_nodes: self.surface_nodes,
            results: self.results,
            units: self.units,
            mapping,
            value_column: self.value_column as usize,
            build: BuildOptions {
                dedup_faces: self.dedup_faces,
                drop_degenerate: self.drop_degenerate,
                allow_empty: self.allow_empty,
            },
            missing: if self.fill_missing { MissingPolicy::Fill } else { MissingPolicy::Error },
            obj: self.obj,
            report: self.report,
            remapped_results: self.emit_remapped_results,
            ..ConvertOptions::new(self.nodes, self.elements, self.output)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Convert(args) => {
            let opts = args.into_options();
            let summary = convert::run(&opts)?;
            for w in &summary.conversion.warnings {
                eprintln!("warning: {w}");
            }
            print!("{summary}");
        }
        Command::Inspect { file } => {
            let loaded = load_document(&file, false)?;
            for w in &loaded.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", stats(&loaded.mesh));
        }
        Command::Validate { file } => {
            let loaded = load_document(&file, true)?;
            for w in &loaded.warnings {
                eprintln!("warning: {w}");
            }
            let issues = validate(&loaded.mesh);
            for issue in &issues {
                println!("issue: {issue}");
            }
            if !issues.is_empty() {
                println!("{} issues", issues.len());
                return Ok(ExitCode::from(1));
            }
            println!("ok");
        }
        Command::Serve(args) => {
            let served = Served::load(&args.file, args.assets)?;
            serve::run(served, &args.host, args.port)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.code)
        }
    }
}
