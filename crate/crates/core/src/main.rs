use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lr_grade::eg::{box_level_and_shape, Refiner, Variant};
use lr_grade::format::{parse_mesh, parse_set, write_mesh, write_set};
use lr_grade::lrset::LRSet;
use lr_grade::mesh::{Direction, LRMesh};
use lr_grade::render::{render_svg, RenderOptions};
use lr_grade::scenario::{rasterize, RegionSpec, Scenario};
use lr_grade::{shadow, verify, Error, Result};

#[derive(Parser)]
#[command(name = "lr-grade", version, about = "LR meshes refined by effective grading")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the one-box start mesh and its B-splines.
    Init(RunArgs),
    /// Run every step of a scenario, writing the mesh and set after each one.
    Refine(RunArgs),
    /// Check a mesh/set pair and print a JSON report; exit code 1 on failure.
    Verify(VerifyArgs),
    /// Draw a mesh as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Overrides the variant of the config.
    #[arg(long)]
    variant: Option<Variant>,
    /// Overrides the bidegree of the config.
    #[arg(long, num_args = 2, value_names = ["P1", "P2"])]
    degree: Option<Vec<usize>>,
}

/// Where a mesh/set pair comes from: saved files or a scenario run on the fly.
#[derive(Args)]
struct Source {
    /// Directory holding `mesh.lrmesh` and `set.lrset`.
    #[arg(long, conflicts_with_all = ["mesh", "config"])]
    dir: Option<PathBuf>,
    #[arg(long, conflicts_with = "config")]
    mesh: Option<PathBuf>,
    #[arg(long, requires = "mesh")]
    set: Option<PathBuf>,
    /// Runs this scenario instead of reading files.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, requires = "config")]
    variant: Option<Variant>,
    #[arg(long, num_args = 2, value_names = ["P1", "P2"], requires = "config")]
    degree: Option<Vec<usize>>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    src: Source,
    /// Write `report.json` into this directory instead of printing it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seeds the random evaluation points.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    points: usize,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    src: Source,
    /// SVG file, or a directory to receive `mesh.svg`.
    #[arg(long)]
    out: PathBuf,
    /// Highlights the boxes meeting a region given as scenario JSON, e.g. '{"rect":[0,0.5,0,0.5]}'.
    #[arg(long)]
    region: Option<String>,
    /// Also draws the generalized shadow of the region in this direction.
    #[arg(long, requires = "region")]
    shadow: Option<String>,
    /// Draws the support of the B-spline with this index in set order.
    #[arg(long)]
    support: Option<usize>,
    #[arg(long, default_value_t = 512)]
    size: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Init(a) => init(&a).map(|_| true),
        Cmd::Refine(a) => refine(&a).map(|_| true),
        Cmd::Verify(a) => verify_cmd(&a),
        Cmd::Render(a) => render(&a).map(|_| true),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_scenario(a: &RunArgs) -> Result<Scenario> {
    let mut s = Scenario::from_json(&fs::read_to_string(&a.config)?)?;
    if let Some(v) = a.variant {
        s.variant = Some(v.to_string());
    }
    if let Some(d) = &a.degree {
        s.degree = [d[0], d[1]];
    }
    Ok(s)
}

fn write_pair(dir: &Path, mesh_stem: &str, set_stem: &str, set: &LRSet) -> Result<()> {
    fs::write(dir.join(format!("{mesh_stem}.lrmesh")), write_mesh(set.mesh()))?;
    fs::write(dir.join(format!("{set_stem}.lrset")), write_set(set))?;
    Ok(())
}

fn init(a: &RunArgs) -> Result<()> {
    let r = load_scenario(a)?.refiner()?;
    fs::create_dir_all(&a.out)?;
    write_pair(&a.out, "mesh", "set", r.set())
}

fn stats_row(step: usize, r: &Refiner) -> Result<String> {
    let m = r.mesh();
    let dom = m.domain();
    let mut levels = m.boxes().map(|b| box_level_and_shape(&dom, b).map(|s| s.level));
    let first = levels.next().transpose()?.unwrap_or(0);
    let (mut lo, mut hi) = (first, first);
    for l in levels {
        let l = l?;
        lo = lo.min(l);
        hi = hi.max(l);
    }
    Ok(format!("{step},{},{},{},{}\n", m.num_boxes(), r.set().len(), lo, hi))
}

fn refine(a: &RunArgs) -> Result<()> {
    let s = load_scenario(a)?;
    fs::create_dir_all(&a.out)?;
    let mut csv = String::from("step,boxes,bsplines,min_level,max_level\n");
    let start = s.refiner()?;
    csv.push_str(&stats_row(0, &start)?);
    write_pair(&a.out, "step-000", "step-000", start.set())?;
    let r = s.run(|k, r| {
        csv.push_str(&stats_row(k, r)?);
        let stem = format!("step-{k:03}");
        write_pair(&a.out, &stem, &stem, r.set())
    })?;
    write_pair(&a.out, "mesh", "set", r.set())?;
    fs::write(a.out.join("stats.csv"), csv)?;
    Ok(())
}

enum Loaded {
    Mesh(LRMesh),
    Set(LRSet),
}

impl Loaded {
    fn mesh(&self) -> &LRMesh {
        match self {
            Loaded::Mesh(m) => m,
            Loaded::Set(s) => s.mesh(),
        }
    }

    fn set(&self) -> Result<&LRSet> {
        match self {
            Loaded::Set(s) => Ok(s),
            Loaded::Mesh(_) => Err(Error::Config("this needs a B-spline set (--set, --dir or --config)".into())),
        }
    }
}

fn load(src: &Source) -> Result<Loaded> {
    if let Some(config) = &src.config {
        let args =
            RunArgs { config: config.clone(), out: PathBuf::new(), variant: src.variant, degree: src.degree.clone() };
        return Ok(Loaded::Set(load_scenario(&args)?.run(|_, _| Ok(()))?.set().clone()));
    }
    let (mp, sp) = match (&src.dir, &src.mesh) {
        (Some(d), _) => (d.join("mesh.lrmesh"), Some(d.join("set.lrset"))),
        (None, Some(m)) => (m.clone(), src.set.clone()),
        _ => return Err(Error::Config("give --dir, --mesh or --config".into())),
    };
    let mesh = parse_mesh(&fs::read_to_string(mp)?)?;
    Ok(match sp {
        Some(sp) => Loaded::Set(parse_set(&fs::read_to_string(sp)?, &mesh)?),
        None => Loaded::Mesh(mesh),
    })
}

fn verify_cmd(a: &VerifyArgs) -> Result<bool> {
    let loaded = load(&a.src)?;
    let report = verify::verify(loaded.set()?, a.points, a.seed);
    let json = serde_json::to_string_pretty(&report)?;
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("report.json"), json + "\n")?;
        }
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        None => {
            let _ = writeln!(io::stdout(), "{json}");
        }
    }
    if !report.pass {
        eprintln!("verification failed");
    }
    Ok(report.pass)
}

fn render(a: &RenderArgs) -> Result<()> {
    let loaded = load(&a.src)?;
    let mesh = loaded.mesh();
    let mut opts = RenderOptions { size: a.size, ..Default::default() };
    if let Some(spec) = &a.region {
        let spec: RegionSpec = serde_json::from_str(spec)?;
        let region = rasterize(mesh, &spec)?;
        if let Some(d) = &a.shadow {
            let dir = Direction::from_letter(d)
                .ok_or_else(|| Error::Config(format!("shadow direction must be H or V, got {d:?}")))?;
            opts.shadow = Some(shadow::generalized_shadow(mesh, &region, dir, mesh.degree_along(dir)));
        }
        opts.region = Some(region);
    }
    if let Some(i) = a.support {
        let set = loaded.set()?;
        let b = set
            .members()
            .nth(i)
            .ok_or_else(|| Error::Config(format!("set has {} members, no index {i}", set.len())))?;
        opts.support = Some(b);
    }
    let path = if a.out.extension().is_some_and(|e| e == "svg") { a.out.clone() } else { a.out.join("mesh.svg") };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(&path, render_svg(mesh, &opts))?;
    Ok(())
}
