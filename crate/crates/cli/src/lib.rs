//! Command-line front end: reads an input document, runs one command and
//! writes text or JSON.

pub mod input;
pub mod output;

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use mdcore::par::Execution;
use mdcore::presentation::abelianize;
use mdcore::rated::{self, Level, Rate, RatedError, RatedGraph, StructureMap};
use mdcore::rational::{format_rational, q, Q};
use mdcore::thickening::{decompose, extend_batch, PieceKind, SimplicialComplex, ThickeningError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use input::{InputDocument, InputError};
use output::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "mdinv", version, about = "Moderately discontinuous invariants of rated surface decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input document, `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    pub input: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Run Hurewicz, dd = 0 and constancy checks; exit 4 if any fails.
    #[arg(long, global = true)]
    pub check: bool,
    #[arg(long, global = true, default_value_t = 3)]
    pub max_degree: usize,
    /// Print nothing on success.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The rates where invariants may change.
    Jumps,
    /// Fundamental group and homology at one rate, or the whole filtration.
    Invariants {
        /// A rate `p/q`, `inf`, or `all`.
        #[arg(long, default_value = "all")]
        b: String,
    },
    /// Invariants of the cone over `link_complex` collapsing at rate `b`.
    Bcone {
        /// Collapse rate of the cone.
        #[arg(long)]
        b: String,
        /// Rate at which to evaluate.
        #[arg(long = "b-query")]
        b_query: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Skeleton thickening of the `thickening` complex and extension values.
    Thicken {
        /// Query point as comma-separated rationals; repeatable.
        #[arg(long)]
        point: Vec<String>,
        /// Number of seeded random query points.
        #[arg(long)]
        sample: Option<usize>,
    },
}

/// Exit status of a run.
#[derive(Debug)]
pub enum Failure {
    Input(InputError),
    Domain(String),
    Consistency(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Consistency(_) | Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(e) => format!("input error at {e}"),
            Failure::Domain(m) => format!("domain error: {m}"),
            Failure::Consistency(m) => format!("consistency check failed: {m}"),
            Failure::Io(m) => format!("i/o error: {m}"),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Failure::Io(e.to_string()))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| {
            Failure::Input(InputError {
                path: "--input".into(),
                message: format!("{path}: {e}"),
            })
        })?;
    }
    Ok(text)
}

fn level_doc(l: &Level, check: bool) -> LevelDoc {
    LevelDoc {
        b: l.b.to_string(),
        collapsed: l.collapsed.clone(),
        pi1: (&l.pi1).into(),
        pi1_abelian: (&l.pi1_abelian).into(),
        homology: l.homology.iter().map(GroupDoc::from).collect(),
        euler_characteristic: l.euler_characteristic,
        checks: check.then(|| LevelChecks {
            hurewicz: Check::from_ok(l.hurewicz.is_none() && l.d2_failures.is_empty()),
            d2: Check::from_ok(l.d2_failures.is_empty()),
        }),
    }
}

fn structure_doc(g: &RatedGraph, s: &StructureMap) -> StructureMapDoc {
    let source = rated::build_model(g, &s.from);
    let target = rated::build_model(g, &s.to);
    let names = target.presentation().generators();
    StructureMapDoc {
        from: s.from.to_string(),
        to: s.to.to_string(),
        homology: s.homology.iter().enumerate().map(|(n, m)| MatrixDoc::new(n, m)).collect(),
        generators: source
            .presentation()
            .generators()
            .iter()
            .zip(s.generators.images())
            .map(|(name, w)| GeneratorImage {
                generator: name.clone(),
                image: w.display_with(names).to_string(),
            })
            .collect(),
    }
}

fn jumps_of(g: &RatedGraph) -> Vec<String> {
    rated::jump_set(g).iter().map(Rate::to_string).collect()
}

fn cmd_jumps(doc: &InputDocument) -> Result<CommandOutput, Failure> {
    let g = input::to_graph(doc)?;
    Ok(CommandOutput::Jumps(JumpsDoc { jumps: jumps_of(&g) }))
}

fn cmd_invariants(doc: &InputDocument, b: &str, cli: &Cli) -> Result<(CommandOutput, bool), Failure> {
    let g = input::to_graph(doc)?;
    let single = match b.trim() {
        "all" => None,
        s => Some(input::parse_rate("--b", s)?),
    };
    let filtration = if single.is_none() || cli.check {
        Some(rated::filtration(&g, cli.max_degree, Execution::Parallel))
    } else {
        None
    };
    let mut out = InvariantsDoc {
        jumps: jumps_of(&g),
        levels: Vec::new(),
        intervals: Vec::new(),
        infinity: None,
        structure_maps: Vec::new(),
        checks: None,
    };
    let mut levels: Vec<Level> = Vec::new();
    match &single {
        Some(b) => {
            let level = rated::evaluate(&g, b, cli.max_degree);
            out.levels.push(level_doc(&level, cli.check));
            levels.push(level);
        }
        None => {
            let f = match filtration.clone().expect("computed for all") {
                Ok(f) => f,
                Err(RatedError::Consistency(m)) => return Err(Failure::Consistency(m)),
                Err(e) => return Err(Failure::Domain(e.to_string())),
            };
            for i in &f.intervals {
                out.intervals.push(IntervalDoc {
                    lower: i.lower.to_string(),
                    upper: i.upper.as_ref().map(Rate::to_string),
                    samples: i.samples.iter().map(Rate::to_string).collect(),
                    level: level_doc(&i.level, cli.check),
                });
                levels.push(i.level.clone());
            }
            out.infinity = Some(level_doc(&f.infinity, cli.check));
            levels.push(f.infinity.clone());
            out.structure_maps = f.structure_maps.iter().map(|s| structure_doc(&g, s)).collect();
        }
    }
    let mut ok = true;
    if cli.check {
        let checks = GlobalChecks {
            hurewicz: Check::from_ok(levels.iter().all(|l| l.hurewicz.is_none())),
            d2: Check::from_ok(levels.iter().all(|l| l.d2_failures.is_empty())),
            constancy: Check::from_ok(matches!(filtration, Some(Ok(_)))),
        };
        ok = checks.all_pass();
        out.checks = Some(checks);
    }
    Ok((CommandOutput::Invariants(out), ok))
}

fn cmd_bcone(doc: &InputDocument, b: &str, b_query: &str, degree: usize) -> Result<CommandOutput, Failure> {
    let (link, complex) = input::to_link(doc)?;
    let b = input::parse_rate("--b", b)?;
    let b_query = input::parse_rate("--b-query", b_query)?;
    let cone = rated::bcone(&link, &complex, &b, &b_query, degree).map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(CommandOutput::Bcone(ConeDoc {
        b: b.to_string(),
        b_query: b_query.to_string(),
        degree,
        pi1_abelian: (&abelianize(&cone.pi1)).into(),
        pi1: (&cone.pi1).into(),
        homology: (&cone.homology).into(),
    }))
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn kind_parts(k: &SimplicialComplex, simplex: usize, kind: &PieceKind) -> (String, Vec<usize>) {
    match kind {
        PieceKind::Core => ("core".into(), k.simplices()[simplex].clone()),
        PieceKind::Collar(face) => ("collar".into(), face.clone()),
    }
}

/// Seeded points of `|K|` with dyadic barycentric coordinates.
pub fn sample_points(k: &SimplicialComplex, count: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let t = rng.gen_range(0..k.simplices().len());
            let n = k.simplices()[t].len();
            let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=1024)).collect();
            cuts.extend([0, 1024]);
            cuts.sort_unstable();
            let bary: Vec<Q> = cuts.windows(2).map(|w| q(w[1] - w[0], 1024)).collect();
            k.point(t, &bary)
        })
        .collect()
}

fn cmd_thicken(doc: &InputDocument, points: &[String], sample: Option<usize>) -> Result<CommandOutput, Failure> {
    let (k, samples) = input::to_thickening(doc)?;
    let pieces = decompose(&k)
        .iter()
        .map(|p| {
            let (kind, face) = kind_parts(&k, p.simplex, &p.kind);
            PieceDoc {
                simplex: p.simplex,
                kind,
                face,
                vertices: p.vertices.iter().map(|v| strings(v)).collect(),
                volume_fraction: p.volume_fraction().as_ref().map(format_rational),
            }
        })
        .collect();
    let mut queries = Vec::new();
    for p in points {
        queries.push(input::parse_point(p)?);
    }
    queries.extend(sample_points(&k, sample.unwrap_or(0), 0));
    let results = extend_batch(&k, |t, nu| samples.eval(t, nu), &queries, Execution::Parallel);
    let mut docs = Vec::with_capacity(queries.len());
    for (x, r) in queries.iter().zip(results) {
        let e = r.map_err(|e| match e {
            ThickeningError::Outside => Failure::Domain(format!("point {} is outside the complex", tuple(x))),
            other => Failure::Input(InputError {
                path: "--point".into(),
                message: other.to_string(),
            }),
        })?;
        let (kind, face) = kind_parts(&k, e.location.simplex, &e.location.kind);
        let sum: Q = e.weights.iter().map(|(_, w)| w.clone()).sum();
        docs.push(PointDoc {
            point: strings(x),
            simplex: e.location.simplex,
            kind,
            face,
            barycentric: strings(&e.location.barycentric),
            value: strings(&e.value),
            weights: e
                .weights
                .iter()
                .map(|(s, w)| WeightDoc {
                    simplex: *s,
                    weight: format_rational(w),
                })
                .collect(),
            weight_sum: format_rational(&sum),
        });
    }
    Ok(CommandOutput::Thicken(ThickenDoc { pieces, points: docs }))
}

fn tuple(x: &[Q]) -> String {
    format!("({})", strings(x).join(", "))
}

/// Runs a parsed command line; returns the output document and whether all
/// requested checks passed.
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(OutputDocument, bool), Failure> {
    let text = read_input(&cli.input, stdin)?;
    let doc = input::parse_document(&text)?;
    let (result, ok) = match &cli.command {
        Command::Jumps => (cmd_jumps(&doc)?, true),
        Command::Invariants { b } => cmd_invariants(&doc, b, cli)?,
        Command::Bcone { b, b_query, degree } => (cmd_bcone(&doc, b, b_query, *degree)?, true),
        Command::Thicken { point, sample } => (cmd_thicken(&doc, point, *sample)?, true),
    };
    Ok((
        OutputDocument {
            schema_version: input::SCHEMA_VERSION.into(),
            result,
        },
        ok,
    ))
}

/// Full program: argument parsing, execution, rendering. Returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok((doc, ok)) => {
            if !cli.quiet {
                let body = match cli.format {
                    Format::Json => to_json(&doc),
                    Format::Text => to_text(&doc),
                };
                if stdout.write_all(body.as_bytes()).is_err() {
                    return 4;
                }
            }
            if ok {
                0
            } else {
                let _ = writeln!(stderr, "consistency check failed");
                4
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.message());
            f.code()
        }
    }
}
