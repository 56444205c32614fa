use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multitile::json::{self, Scene};
use multitile::oracle::{self, BUILTIN_NAMES};
use multitile::{
    bolle_check, compute_lp, decide_multitile, strip_profile, svg, verify_multitiling, Error,
    FieldDescriptor, FieldElement, Mode, Window,
};
use serde_json::Value;

/// Decide and verify translational multi-tilings by centrally symmetric
/// convex polygons.
///
/// Exit status: 0 for a positive answer, 1 for a negative one, 2 on errors.
#[derive(Parser)]
#[command(name = "multitile", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a zonotope admits a multi-tiling and print a witness lattice.
    Decide { polygon: PathBuf },
    /// Check constancy of the covering function of a scene.
    Verify {
        scene: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Render a scene as SVG, faces colored by multiplicity.
    Render {
        scene: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
        /// x0,y0,x1,y1 (rationals); defaults to the scene's window.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Print the canonical lattice L_P of a zonotope.
    Lp { polygon: PathBuf },
    /// Run the lattice criterion for a zonotope and a lattice.
    Bolle { polygon: PathBuf, lattice: PathBuf },
    /// Covering counts of P + L on horizontal strips R × [n, n+1].
    Strips {
        polygon: PathBuf,
        lattice: PathBuf,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 6, allow_hyphen_values = true)]
        to: i64,
    },
    /// Emit the scene JSON of a builtin example.
    Examples {
        name: Option<String>,
        /// Offset of the second coset for the octagon family: a rational or a JSON element.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Radicands of the coordinate field, e.g. 2,3.
        #[arg(long, value_delimiter = ',')]
        field: Vec<u64>,
        /// Pattern window for the tetromino examples, x0,y0,x1,y1.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
}

enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print(v: &Value) {
    let _ = writeln!(std::io::stdout().lock(), "{}", json::to_pretty(v));
}

fn parse_window(text: &str, f: &FieldDescriptor) -> Result<Window, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Failure::Input(format!(
            "window must be x0,y0,x1,y1, got \"{text}\""
        )));
    }
    let vals = parts
        .iter()
        .map(|p| json::decode_element(&Value::String(p.trim().to_string()), f))
        .collect::<Result<Vec<_>, _>>()?;
    let [x0, y0, x1, y1]: [FieldElement; 4] = vals.try_into().expect("four parts");
    Ok(Window::new(x0, y0, x1, y1)?)
}

fn parse_element(text: &str, f: &FieldDescriptor) -> Result<FieldElement, Failure> {
    let v = if text.trim_start().starts_with('[') {
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("bad element: {e}")))?
    } else {
        Value::String(text.to_string())
    };
    Ok(json::decode_element(&v, f)?)
}

fn load_scene(path: &Path) -> Result<Scene, Failure> {
    Ok(json::scene_from_str(&read(path)?)?)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Decide { polygon } => {
            let z = json::zonotope_from_str(&read(&polygon)?)?;
            let d = decide_multitile(&z)?;
            print(&json::encode_decision(&d));
            Ok(d.multi_tiles)
        }
        Command::Verify {
            scene,
            mode,
            samples,
            seed,
        } => {
            let s = load_scene(&scene)?;
            let (default_samples, default_seed) = match s.mode {
                Mode::Sampled { samples, seed } => (samples, seed),
                Mode::Exact => (json::DEFAULT_SAMPLES, json::DEFAULT_SEED),
            };
            let sampled = Mode::Sampled {
                samples: samples.unwrap_or(default_samples),
                seed: seed.unwrap_or(default_seed),
            };
            let mode = match mode {
                Some(ModeArg::Exact) => Mode::Exact,
                Some(ModeArg::Sampled) => sampled,
                None if samples.is_some() || seed.is_some() => sampled,
                None => s.mode,
            };
            let report = verify_multitiling(&s.polygon, &s.lambda, mode)?;
            print(&json::encode_verify(&report, s.polygon.field()));
            Ok(report.constant)
        }
        Command::Render {
            scene,
            output,
            window,
        } => {
            let s = load_scene(&scene)?;
            let window = match window {
                Some(w) => parse_window(&w, s.polygon.field())?,
                None => s.window.clone().ok_or_else(|| {
                    Failure::Input("no window: pass --window or set \"window\" in the scene".into())
                })?,
            };
            let text = svg::render(&s.polygon, &s.lambda, &window)?;
            fs::write(&output, text)
                .map_err(|e| Failure::Input(format!("{}: {e}", output.display())))?;
            Ok(true)
        }
        Command::Lp { polygon } => {
            let z = json::zonotope_from_str(&read(&polygon)?)?;
            print(&json::encode_lp(&compute_lp(&z)?));
            Ok(true)
        }
        Command::Bolle { polygon, lattice } => {
            let z = json::zonotope_from_str(&read(&polygon)?)?;
            let l = json::lattice_from_str(&read(&lattice)?)?;
            let report = bolle_check(&z, &l)?;
            print(&json::encode_bolle(&report, &l));
            Ok(report.verdict)
        }
        Command::Strips {
            polygon,
            lattice,
            from,
            to,
        } => {
            let p = json::polygon_from_str(&read(&polygon)?)?;
            let l = json::lattice_from_str(&read(&lattice)?)?;
            let entries = strip_profile(&p, &l, from..to)?;
            print(&json::encode_strips(&entries));
            Ok(true)
        }
        Command::Examples {
            name,
            beta,
            field,
            window,
        } => {
            let Some(name) = name else {
                let mut out = std::io::stdout().lock();
                for n in BUILTIN_NAMES {
                    let _ = writeln!(out, "{n}");
                }
                return Ok(true);
            };
            let f = FieldDescriptor::new(&field)?;
            let beta = beta.map(|b| parse_element(&b, &f)).transpose()?;
            let window = match window {
                Some(w) => Some(parse_window(&w, &f)?),
                None if name.starts_with("tetromino") => Some(Window::ints(&f, -6, -6, 6, 6)?),
                None => None,
            };
            let beta = beta.unwrap_or_else(|| f.zero());
            let (polygon, lambda) = oracle::builtin_pattern(&name, Some(&beta), window.as_ref())?;
            let scene = Scene {
                polygon,
                lambda,
                mode: Mode::Exact,
                window,
            };
            print(&json::encode_scene(&scene));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
