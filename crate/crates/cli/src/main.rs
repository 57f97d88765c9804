//! `tiledim`: command-line frontend for the tiling library.
//!
//! Exit codes: 0 success/true, 1 checked-false (invalid/improper/unverified),
//! 2 invalid input or usage, 3 internal integrity or generation failure.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tiledim_core::complex::verify_realizer;
use tiledim_core::coord::{rat_from_str, rat_to_string};
use tiledim_core::{
    build_complex, build_digraph, check_depth, check_families, check_pairwise, collapse_corner,
    compute_separations, construct_realizer, coplanar_pairs, dm_dimension, fixture,
    perturb_general_position, random_proper, separation_is_box, Box as TBox, Coord, DmOptions,
    Error, ExtendedTiling, Fixture, GenSpec, PropernessReport, Rat, Realizer, Separation, Sign,
    SimplicialComplex, Tiling, Witness,
};

#[derive(Parser)]
#[command(name = "tiledim", version, about = "Proper box tilings of [-1,+1]^d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Positional tiling input: a JSON file path, or stdin when omitted.
#[derive(Args)]
struct Input {
    /// Tiling JSON file (stdin if omitted)
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Depth,
    Pairwise,
    Families,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CutSign {
    Minus,
    Plus,
}

#[derive(Subcommand)]
enum Command {
    /// Check the frame/overlap/coverage conditions of a tiling
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Decide properness; exit 0 if proper, 1 with a witness otherwise
    Proper {
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        #[command(flatten)]
        input: Input,
    },
    /// Intersect with a generic hyperplane x_axis = at, dropping the axis
    Slice {
        /// 1-based axis
        #[arg(long)]
        axis: usize,
        /// Rational hyperplane coordinate, e.g. -1/4
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Cut at a generic hyperplane, prolonging crossing boxes
    Cut {
        /// 1-based axis
        #[arg(long)]
        axis: usize,
        /// Rational hyperplane coordinate
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Prolong towards +1 (minus) or -1 (plus)
        #[arg(long, value_enum)]
        sign: CutSign,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// List all separations with their box forms and coplanar pairs
    Separations {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Perturb a proper tiling into general position
    Perturb {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Print the orientation digraph in DOT format
    Graph {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Construct a (d+1)-order realizer of the tiling's complex
    Realizer {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Check a realizer against a simplicial complex; exit 0/1
    Verify {
        /// Complex JSON file
        #[arg(long)]
        complex: PathBuf,
        /// Realizer JSON file
        #[arg(long)]
        realizer: PathBuf,
    },
    /// Print the simplicial complex of a tiling
    Complex {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Exact Dushnik-Miller dimension of a complex by exhaustive search
    Dmdim {
        #[arg(long)]
        kmax: usize,
        /// Refuse complexes with more vertices than this
        #[arg(long, default_value = "7")]
        max_vertices: usize,
        /// Search even past the vertex guard
        #[arg(long)]
        force: bool,
        /// Complex JSON file (stdin if omitted)
        file: Option<PathBuf>,
    },
    /// Emit a tiling: seeded random proper, or a named fixture
    Generate {
        #[arg(long, conflicts_with = "fixture")]
        d: Option<usize>,
        #[arg(long, requires = "d")]
        boxes: Option<usize>,
        #[arg(long, requires = "d")]
        seed: Option<u64>,
        /// Also perturb the result into general position
        #[arg(long)]
        general_position: bool,
        /// Named fixture, e.g. pinwheel, grid2x2, single(3), split(2)
        #[arg(long)]
        fixture: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Remove the box at the (-1,...,-1) corner of a general-position tiling
    Collapse {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Render a 2-tiling as a deterministic SVG
    RenderSvg {
        /// Overlay the separations as thick lines
        #[arg(long)]
        separations: bool,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            let code = match e {
                Error::Usage(_) | Error::Precondition(_) | Error::Parse(_) => 2,
                Error::Integrity(_) | Error::Generation(_) => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<String, Error> {
    match file {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_tiling(file: &Option<PathBuf>) -> Result<Tiling, Error> {
    Tiling::from_json(&read_input(file)?)
}

fn emit(out: &Output, s: &str) -> Result<(), Error> {
    match &out.output {
        Some(p) => fs::write(p, s)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{s}");
            Ok(())
        }
    }
}

/// Converts a 1-based CLI axis to the 0-based library index.
fn axis_index(axis: usize, d: usize) -> Result<usize, Error> {
    if axis == 0 || axis > d {
        return Err(Error::Usage(format!("axis must be in 1..={d}")));
    }
    Ok(axis - 1)
}

fn box_value(b: &TBox) -> Value {
    Value::Array(
        b.intervals()
            .iter()
            .map(|iv| json!([iv.lo().to_string(), iv.hi().to_string()]))
            .collect(),
    )
}

fn witness_value(w: &Witness) -> Value {
    match w {
        Witness::DeepPoint { point, ids } => json!({
            "type": "deep_point",
            "point": point.iter().map(rat_to_string).collect::<Vec<_>>(),
            "boxes": ids.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
        }),
        Witness::BadPair { a, b, meet } => json!({
            "type": "bad_pair",
            "a": a.to_string(),
            "b": b.to_string(),
            "meet": box_value(meet),
        }),
        Witness::BadFamily { ids, meet } => json!({
            "type": "bad_family",
            "boxes": ids.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            "meet": box_value(meet),
        }),
    }
}

fn report_value(r: &PropernessReport) -> Value {
    json!({
        "proper": r.proper,
        "witness": r.witness.as_ref().map(witness_value),
    })
}

fn separation_value(s: &Separation) -> Result<Value, Error> {
    let shape = separation_is_box(s)?;
    Ok(json!({
        "axis": s.axis + 1,
        "level": s.level.to_string(),
        "sides": s.sides.iter().map(|side| json!({
            "owner": side.owner.to_string(),
            "sign": side.sign.to_string(),
            "region": box_value(&side.region),
        })).collect::<Vec<_>>(),
        "is_box": shape.is_box,
        "box_form": shape.box_form.as_ref().map(box_value),
    }))
}

fn parse_coord(s: &str) -> Result<Coord, Error> {
    Ok(Coord::Finite(rat_from_str(s)?))
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Validate { input } => {
            let t = read_tiling(&input.file)?;
            let report = t.validate();
            let v = json!({
                "valid": report.is_valid(),
                "violations": report.violations.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Command::Proper { method, input } => {
            let t = read_tiling(&input.file)?;
            require_valid(&t)?;
            let ext = ExtendedTiling::new(t)?;
            let reports: Vec<(&str, PropernessReport)> = match method {
                Method::Depth => vec![("depth", check_depth(&ext))],
                Method::Pairwise => vec![("pairwise", check_pairwise(&ext))],
                Method::Families => vec![("families", check_families(&ext))],
                Method::All => vec![
                    ("depth", check_depth(&ext)),
                    ("pairwise", check_pairwise(&ext)),
                    ("families", check_families(&ext)),
                ],
            };
            let agree = reports.windows(2).all(|w| w[0].1.proper == w[1].1.proper);
            if !agree {
                return Err(Error::Integrity(
                    "properness methods disagree".into(),
                ));
            }
            let proper = reports[0].1.proper;
            let mut obj = serde_json::Map::new();
            obj.insert("proper".into(), json!(proper));
            for (name, r) in &reports {
                obj.insert((*name).into(), report_value(r));
            }
            println!("{}", serde_json::to_string_pretty(&Value::Object(obj)).unwrap());
            Ok(if proper { 0 } else { 1 })
        }
        Command::Slice { axis, at, input, out } => {
            let t = read_tiling(&input.file)?;
            let i = axis_index(axis, t.d())?;
            let m = t.slice(i, &parse_coord(&at)?)?;
            let v = json!({
                "tiling": serde_json::from_str::<Value>(&m.tiling.to_json()?).unwrap(),
                "source": m.source,
            });
            emit(&out, &serde_json::to_string_pretty(&v).unwrap())?;
            Ok(0)
        }
        Command::Cut { axis, at, sign, input, out } => {
            let t = read_tiling(&input.file)?;
            let i = axis_index(axis, t.d())?;
            let s = match sign {
                CutSign::Minus => Sign::Neg,
                CutSign::Plus => Sign::Pos,
            };
            let m = t.cut(i, &parse_coord(&at)?, s)?;
            let v = json!({
                "tiling": serde_json::from_str::<Value>(&m.tiling.to_json()?).unwrap(),
                "source": m.source,
            });
            emit(&out, &serde_json::to_string_pretty(&v).unwrap())?;
            Ok(0)
        }
        Command::Separations { input, out } => {
            let t = read_tiling(&input.file)?;
            require_valid(&t)?;
            let ext = ExtendedTiling::new(t)?;
            let seps = compute_separations(&ext)?;
            let values = seps
                .iter()
                .map(separation_value)
                .collect::<Result<Vec<_>, _>>()?;
            let v = json!({
                "separations": values,
                "coplanar_pairs": coplanar_pairs(&seps),
            });
            emit(&out, &serde_json::to_string_pretty(&v).unwrap())?;
            Ok(0)
        }
        Command::Perturb { input, out } => {
            let t = read_tiling(&input.file)?;
            let p = perturb_general_position(&t)?;
            let v = json!({
                "tiling": serde_json::from_str::<Value>(&p.tiling.to_json()?).unwrap(),
                "correspondence": p.correspondence,
                "epsilons": p.epsilons.iter().map(rat_to_string).collect::<Vec<_>>(),
            });
            emit(&out, &serde_json::to_string_pretty(&v).unwrap())?;
            Ok(0)
        }
        Command::Graph { input, out } => {
            let t = read_tiling(&input.file)?;
            require_valid(&t)?;
            let g = build_digraph(&t);
            let mut dot = String::from("digraph T {\n");
            for i in 0..g.n() {
                dot.push_str(&format!("  {i} [label=\"B{}\"];\n", i + 1));
            }
            for (a, b) in g.arcs() {
                dot.push_str(&format!("  {a} -> {b};\n"));
            }
            dot.push('}');
            emit(&out, &dot)?;
            Ok(0)
        }
        Command::Realizer { input, out } => {
            let t = read_tiling(&input.file)?;
            let r = construct_realizer(&t)?;
            emit(&out, &r.to_json()?)?;
            Ok(0)
        }
        Command::Verify { complex, realizer } => {
            let c = SimplicialComplex::from_json(
                &fs::read_to_string(&complex)
                    .map_err(|e| Error::Usage(format!("cannot read {}: {e}", complex.display())))?,
            )?;
            let r = Realizer::from_json(
                &fs::read_to_string(&realizer)
                    .map_err(|e| Error::Usage(format!("cannot read {}: {e}", realizer.display())))?,
            )?;
            let res = verify_realizer(&c, &r)?;
            let v = json!({
                "ok": res.ok,
                "violation": res.violation.as_ref().map(|(f, u)| json!({"face": f, "vertex": u})),
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            Ok(if res.ok { 0 } else { 1 })
        }
        Command::Complex { input, out } => {
            let t = read_tiling(&input.file)?;
            let c = build_complex(&t)?;
            emit(&out, &c.to_json()?)?;
            Ok(0)
        }
        Command::Dmdim { kmax, max_vertices, force, file } => {
            let c = SimplicialComplex::from_json(&read_input(&file)?)?;
            let opts = DmOptions { max_vertices, force };
            let res = dm_dimension(&c, kmax, &opts)?;
            match res.dimension {
                Some(k) => {
                    println!("{k}");
                    Ok(0)
                }
                None => {
                    println!("> {kmax}");
                    Ok(1)
                }
            }
        }
        Command::Generate { d, boxes, seed, general_position, fixture: fx, out } => {
            let t = match (fx, d) {
                (Some(name), None) => fixture(&name.parse::<Fixture>()?)?,
                (None, Some(d)) => {
                    let boxes = boxes
                        .ok_or_else(|| Error::Usage("--boxes is required with --d".into()))?;
                    let seed =
                        seed.ok_or_else(|| Error::Usage("--seed is required with --d".into()))?;
                    random_proper(&GenSpec::new(d, boxes, seed))?
                }
                _ => {
                    return Err(Error::Usage(
                        "pass either --fixture NAME or --d/--boxes/--seed".into(),
                    ))
                }
            };
            let t = if general_position {
                perturb_general_position(&t)?.tiling
            } else {
                t
            };
            emit(&out, &t.to_json()?)?;
            Ok(0)
        }
        Command::Collapse { input, out } => {
            let t = read_tiling(&input.file)?;
            let c = collapse_corner(&t)?;
            let v = json!({
                "removed": c.removed,
                "partner": c.partner,
                "axis": c.axis + 1,
                "mapping": c.mapping,
                "tiling": serde_json::from_str::<Value>(&c.tiling.to_json()?).unwrap(),
            });
            emit(&out, &serde_json::to_string_pretty(&v).unwrap())?;
            Ok(0)
        }
        Command::RenderSvg { separations, input, out } => {
            let t = read_tiling(&input.file)?;
            let svg = render_svg(&t, separations)?;
            emit(&out, &svg)?;
            Ok(0)
        }
    }
}

fn require_valid(t: &Tiling) -> Result<(), Error> {
    let report = t.validate();
    if !report.is_valid() {
        return Err(Error::Precondition(format!(
            "input is not a tiling: {}",
            report.violations[0]
        )));
    }
    Ok(())
}

const PALETTE: [&str; 8] = [
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#ffff99", "#1f78b4", "#33a02c",
];

/// Maps a frame coordinate in [-1,1] to SVG units, y axis flipped.
fn svg_x(r: &Rat) -> String {
    format!("{:.3}", (rat_f64(r) + 1.0) * 500.0)
}

fn svg_y(r: &Rat) -> String {
    format!("{:.3}", (1.0 - rat_f64(r)) * 500.0)
}

fn rat_f64(r: &Rat) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap();
    let d: f64 = r.denom().to_string().parse().unwrap();
    n / d
}

fn render_svg(t: &Tiling, with_separations: bool) -> Result<String, Error> {
    if t.d() != 2 {
        return Err(Error::Usage("render-svg requires a 2-tiling".into()));
    }
    require_valid(t)?;
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 1000 1000\">\n");
    for (i, b) in t.boxes().iter().enumerate() {
        let x0 = b.interval(0).lo().finite()?;
        let x1 = b.interval(0).hi().finite()?;
        let y1 = b.interval(1).hi().finite()?;
        let w = format!("{:.3}", (rat_f64(x1) - rat_f64(x0)) * 500.0);
        let h = format!(
            "{:.3}",
            (rat_f64(y1) - rat_f64(b.interval(1).lo().finite()?)) * 500.0
        );
        s.push_str(&format!(
            "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
            svg_x(x0),
            svg_y(y1),
            w,
            h,
            PALETTE[i % PALETTE.len()],
        ));
    }
    if with_separations {
        let ext = ExtendedTiling::new(t.clone())?;
        let frame = tiledim_core::Interval::ints(-1, 1);
        for sep in compute_separations(&ext)? {
            for piece in sep.pieces() {
                let other = 1 - sep.axis;
                let clipped = match piece.interval(other).intersect(&frame) {
                    Some(iv) if !iv.is_degenerate() => iv,
                    _ => continue,
                };
                let level = sep.level.finite()?;
                let (a, b) = (clipped.lo().finite()?, clipped.hi().finite()?);
                let (x1, y1, x2, y2) = if sep.axis == 0 {
                    (svg_x(level), svg_y(a), svg_x(level), svg_y(b))
                } else {
                    (svg_x(a), svg_y(level), svg_x(b), svg_y(level))
                };
                s.push_str(&format!(
                    "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#d62728\" stroke-width=\"8\"/>\n"
                ));
            }
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
