//! Command-line surface: scene tracing to CSV/SVG, claim verification with
//! JSON reports, occupancy-grid rasterization and the semi-inner-product
//! operator tools.
//!
//! Exit codes: 0 on success (all claims pass), 1 when a claim fails,
//! 2 on usage or configuration errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use conics_core::emit::{emit_csv, emit_pgm, emit_svg, trace_scene};
use conics_core::scene::{OutputFormat, Scene};
use conics_core::sip::{LinearMap2, SipSpace};
use conics_core::tracer::region_grid;
use conics_core::verify::{run_claim, Claim, ClaimReport};
use conics_core::{Degeneracy, UnitBall, Vec2};

#[derive(Parser)]
#[command(name = "conics", version, about = "Metric conics in normed planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace the loci of a scene and write CSV and/or SVG.
    Trace(TraceArgs),
    /// Run claim suites against a unit ball and report JSON.
    Verify(VerifyArgs),
    /// Rasterize scene loci into P2 occupancy grids.
    Grid(GridArgs),
    /// Semi-inner-product operator tools for an lp plane.
    Sip(SipArgs),
    /// Reproduce the max-norm counterexample separating the ellipse
    /// definitions.
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
struct TraceArgs {
    /// Scene JSON file.
    #[arg(long)]
    scene: PathBuf,
    /// CSV output path (one x,y row per point, blank line between curves).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// SVG output path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated claims (prop1, thm1, thm2, thm3, thm4, thm5,
    /// symmetry, counterexample) or "all".
    #[arg(long, default_value = "all")]
    claims: String,
    /// Unit ball: lp:<p>, lp:inf, octagon, or polygon:x,y;x,y;...
    #[arg(long, default_value = "lp:2")]
    ball: String,
    /// Seed recorded in the reports; claim checks are deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report array as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Scene JSON file.
    #[arg(long)]
    scene: PathBuf,
    /// Cells per side.
    #[arg(long, default_value_t = 256)]
    resolution: usize,
    /// PGM output path; an index is inserted when the scene has several loci.
    #[arg(long)]
    pgm: PathBuf,
}

#[derive(Args)]
struct SipArgs {
    /// Norm exponent, 1 < p < infinity.
    #[arg(long)]
    p: f64,
    /// Matrix entries a,b,c,d for [[a, b], [c, d]].
    #[arg(long)]
    matrix: String,
    /// Candidate root entries e,f,g,h: report whether the matrix equals
    /// the root composed with itself.
    #[arg(long)]
    square_root: Option<String>,
    /// Seed for the nonlinearity witness search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the result as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Trace(args) => trace(args),
        Command::Verify(args) => verify(args),
        Command::Grid(args) => grid(args),
        Command::Sip(args) => sip(args),
        Command::Counterexample(args) => counterexample(args),
    }
}

fn parse_ball(desc: &str) -> anyhow::Result<UnitBall> {
    if let Some(rest) = desc.strip_prefix("lp:") {
        if matches!(rest, "inf" | "infinity" | "oo") {
            return Ok(UnitBall::lp_infinity());
        }
        let p: f64 = rest
            .parse()
            .with_context(|| format!("bad exponent {rest:?}"))?;
        return Ok(UnitBall::lp(p)?);
    }
    if desc == "octagon" {
        return Ok(UnitBall::regular_polygon(8, std::f64::consts::PI / 8.0)?);
    }
    if let Some(rest) = desc.strip_prefix("polygon:") {
        let mut vertices = Vec::new();
        for pair in rest.split(';') {
            let mut it = pair.split(',');
            let x: f64 = it
                .next()
                .and_then(|t| t.trim().parse().ok())
                .with_context(|| format!("bad vertex {pair:?}"))?;
            let y: f64 = it
                .next()
                .and_then(|t| t.trim().parse().ok())
                .with_context(|| format!("bad vertex {pair:?}"))?;
            if it.next().is_some() {
                bail!("bad vertex {pair:?}");
            }
            vertices.push(Vec2::new(x, y));
        }
        return Ok(UnitBall::polygon(vertices)?);
    }
    bail!("unknown ball {desc:?}; use lp:<p>, lp:inf, octagon or polygon:x,y;...")
}

fn load_scene(path: &Path) -> anyhow::Result<Scene> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Scene::from_json(&text)?)
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn trace(args: TraceArgs) -> anyhow::Result<ExitCode> {
    let scene = load_scene(&args.scene)?;
    let renders = trace_scene(&scene)?;
    for (i, render) in renders.iter().enumerate() {
        let what = match render.degeneracy {
            Degeneracy::Nondegenerate => format!(
                "{} curve(s), {} straight run(s)",
                render.curves.len(),
                render.segments.len()
            ),
            other => format!("rasterized ({})", other.tag()),
        };
        println!("locus {i} [{}]: {what}", render.spec.kind_name());
    }
    let mut outputs: Vec<(OutputFormat, PathBuf)> = scene
        .outputs
        .iter()
        .map(|o| (o.format, PathBuf::from(&o.path)))
        .collect();
    if let Some(path) = args.csv {
        outputs.push((OutputFormat::Csv, path));
    }
    if let Some(path) = args.svg {
        outputs.push((OutputFormat::Svg, path));
    }
    for (format, path) in outputs {
        match format {
            OutputFormat::Csv => write_text(&path, &emit_csv(&renders))?,
            OutputFormat::Svg => write_text(&path, &emit_svg(&scene, &renders))?,
            OutputFormat::Pgm => {
                let Some(grid) = renders.iter().find_map(|r| r.region.as_ref()) else {
                    bail!("scene has no rasterized locus for a pgm output");
                };
                write_text(&path, &emit_pgm(grid))?;
            }
        }
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let ball = parse_ball(&args.ball)?;
    let claims: Vec<Claim> = if args.claims.trim() == "all" {
        Claim::ALL.to_vec()
    } else {
        args.claims
            .split(',')
            .map(Claim::from_str)
            .collect::<conics_core::Result<Vec<_>>>()?
    };
    let mut reports: Vec<ClaimReport> = Vec::new();
    for claim in claims {
        let mut batch = run_claim(&ball, claim)?;
        for report in &mut batch {
            report.params.insert("seed".into(), args.seed as f64);
        }
        reports.extend(batch);
    }
    let mut all_pass = true;
    for report in &reports {
        let status = if report.pass { "PASS" } else { "FAIL" };
        println!("{status} {} [{}]", report.claim, report.ball);
        all_pass &= report.pass;
    }
    if let Some(path) = args.json {
        let mut text = serde_json::to_string_pretty(&reports)?;
        text.push('\n');
        write_text(&path, &text)?;
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn grid(args: GridArgs) -> anyhow::Result<ExitCode> {
    let scene = load_scene(&args.scene)?;
    if args.resolution < 2 {
        bail!("resolution must be at least 2");
    }
    let cell = (scene.bbox.width() / args.resolution as f64)
        .max(scene.bbox.height() / args.resolution as f64);
    for (i, spec) in scene.specs.iter().enumerate() {
        let grid = region_grid(
            &scene.ball,
            spec,
            scene.bbox,
            args.resolution,
            args.resolution,
            0.75 * cell,
        )?;
        let path = if scene.specs.len() == 1 {
            args.pgm.clone()
        } else {
            indexed_path(&args.pgm, i)
        };
        write_text(&path, &emit_pgm(&grid))?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn indexed_path(path: &Path, index: usize) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("grid");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("pgm");
    path.with_file_name(format!("{stem}-{index}.{ext}"))
}

fn sip(args: SipArgs) -> anyhow::Result<ExitCode> {
    let space = SipSpace::new(args.p)?;
    let entries: Vec<f64> = args
        .matrix
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad matrix {:?}", args.matrix))?;
    if entries.len() != 4 {
        bail!("matrix needs exactly 4 entries a,b,c,d");
    }
    let map = LinearMap2::new(entries[0], entries[1], entries[2], entries[3]);

    let self_adjoint = space.is_self_adjoint(&map, 512, 1e-8, args.seed);
    let zeros = space.projective_conic_zeros(&map, 8192)?;
    let zeros_deg: Vec<f64> = zeros.iter().map(|z| z.to_degrees()).collect();

    // Random search for an additivity violation of the generalized adjoint.
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut witness: Option<(Vec2, Vec2, f64)> = None;
    for _ in 0..256 {
        let y1 = Vec2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let y2 = Vec2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if y1.is_zero() || y2.is_zero() || (y1 + y2).is_zero() {
            continue;
        }
        let lhs = space.generalized_adjoint(&map, y1 + y2)?;
        let rhs = space.generalized_adjoint(&map, y1)? + space.generalized_adjoint(&map, y2)?;
        let gap = space.norm(lhs - rhs);
        if witness.as_ref().is_none_or(|w| gap > w.2) {
            witness = Some((y1, y2, gap));
        }
    }

    let witness_json = match witness {
        Some((y1, y2, gap)) if gap > 1e-9 => serde_json::json!({
            "y1": [y1.x, y1.y],
            "y2": [y2.x, y2.y],
            "additivity_gap": gap,
        }),
        _ => serde_json::Value::Null,
    };
    let square_json = match &args.square_root {
        Some(raw) => {
            let root: Vec<f64> = raw
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .with_context(|| format!("bad square root {raw:?}"))?;
            if root.len() != 4 {
                bail!("square root needs exactly 4 entries e,f,g,h");
            }
            let b = LinearMap2::new(root[0], root[1], root[2], root[3]);
            serde_json::json!({
                "root": [[root[0], root[1]], [root[2], root[3]]],
                "is_square": map.is_square_of(&b, 1e-9),
            })
        }
        None => serde_json::Value::Null,
    };
    let result = serde_json::json!({
        "p": args.p,
        "matrix": [[entries[0], entries[1]], [entries[2], entries[3]]],
        "self_adjoint": self_adjoint,
        "zero_directions_deg": zeros_deg,
        "adjoint_nonlinearity_witness": witness_json,
        "square_check": square_json,
    });
    let mut text = serde_json::to_string_pretty(&result)?;
    text.push('\n');
    match args.json {
        Some(path) => write_text(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn counterexample(args: CounterexampleArgs) -> anyhow::Result<ExitCode> {
    let report = conics_core::verify::reproduce_linf_counterexample()?;
    let status = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "{status} {}: s={} r={} ratio_at_minus_z={}",
        report.claim, report.metrics["s"], report.metrics["r"], report.metrics["ratio_minus_z"]
    );
    if let Some(path) = args.json {
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        write_text(&path, &text)?;
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_descriptions_parse() {
        assert!(parse_ball("lp:2").is_ok());
        assert!(parse_ball("lp:inf").is_ok());
        assert!(parse_ball("octagon").is_ok());
        assert!(parse_ball("polygon:1,1;-1,1;-1,-1;1,-1").is_ok());
        assert!(parse_ball("lp:0.5").is_err());
        assert!(parse_ball("banana").is_err());
    }

    #[test]
    fn indexed_path_inserts_suffix() {
        let p = indexed_path(Path::new("out/grid.pgm"), 3);
        assert_eq!(p, PathBuf::from("out/grid-3.pgm"));
    }
}
