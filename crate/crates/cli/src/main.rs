use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rauzy::chain::{type_label, wedge_types, Chain, Face, WedgeType};
use rauzy::dual::exterior_matrices;
use rauzy::dynamics::chi::ChiVariant;
use rauzy::dynamics::coincidence::{strong_coincidence, DEFAULT_DEPTH_CAP};
use rauzy::dynamics::exchange::{coding_cross_check, exchange_orbit, first_return_check, ClassifierKind, Partition, DEFAULT_IFS_DEPTH};
use rauzy::fractal::approx::tile_outlines;
use rauzy::fractal::checks::{area_conservation, boundary_convergence_report, set_equation_check};
use rauzy::fractal::{approx_of_chain, rauzy_approx};
use rauzy::geometry::{self, nice, svg};
use rauzy::matrix::IntMatrix;
use rauzy::model::Model;
use rauzy::subst::{word_to_string, Substitution};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const MAX_LEVEL: usize = 14;
const MAX_ITERS: usize = 40;

#[derive(Parser)]
#[command(name = "rauzy", version, about = "Reducible Pisot substitutions: classification, dual maps, Rauzy fractals, dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// substitution definition file, one `a -> w1 w2 ...` rule per line
    #[arg(long = "sub", value_name = "FILE")]
    sub: PathBuf,
    /// write the JSON report here instead of standard output
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Pisot split, unit/reducible flags and the hypotheses (N), (P), (S1), (S2).
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Exterior matrices B_k, M_k*, M_{n-k} as integer CSV, plus the diagonal conjugator.
    Matrices {
        #[command(flatten)]
        common: Common,
        /// exterior degree; defaults to n̄ = n − d + 1
        #[arg(long)]
        k: Option<usize>,
    },
    /// Stepped-surface patch from a seed at the origin, optionally replaced by level-k tiles.
    Render {
        #[command(flatten)]
        common: Common,
        /// seed faces, e.g. `1^3,1^4,2^4,2^5,3^5`
        #[arg(long, value_name = "TYPES")]
        seed_faces: String,
        #[arg(long, default_value_t = 5)]
        exponent: usize,
        #[arg(long, default_value_t = 2)]
        iters: usize,
        /// replace every face by its level-k tile approximation
        #[arg(long)]
        level: Option<usize>,
        /// radius of the disk about 0 whose coverage is reported
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Level-k approximation of one Rauzy fractal with area, set-equation and boundary checks.
    Fractal {
        #[command(flatten)]
        common: Common,
        /// face type, e.g. `2^3`
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long, default_value_t = 10)]
        level: usize,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Strong coincidence table as CSV `a,b,k`.
    Scc {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
    },
    /// Orbit of a point under the modified domain exchange: `step letter x y` per line.
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y: f64,
        #[command(flatten)]
        dyn_opts: DynOpts,
    },
    /// Sampled first-return verification of the exchange.
    Return {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        dyn_opts: DynOpts,
    },
    /// First n letters of the orbit coding of the origin.
    Coding {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[command(flatten)]
        dyn_opts: DynOpts,
    },
}

#[derive(Args, Clone)]
struct DynOpts {
    #[arg(long, value_enum, default_value_t = Chi::Canonical)]
    chi: Chi,
    /// polygon classifier at this level instead of the graph-directed one
    #[arg(long)]
    level: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Chi {
    Canonical,
    FlipOne,
    FlipFive,
    FlipBoth,
}

impl From<Chi> for ChiVariant {
    fn from(c: Chi) -> Self {
        match c {
            Chi::Canonical => ChiVariant::Canonical,
            Chi::FlipOne => ChiVariant::FlipOne,
            Chi::FlipFive => ChiVariant::FlipFive,
            Chi::FlipBoth => ChiVariant::FlipBoth,
        }
    }
}

/// Failures in a run that completed: the report is written and the exit code is 2.
struct Outcome {
    report: Value,
    pass: bool,
}

fn main() -> ExitCode {
    rauzy::par::init_threads();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path) -> Result<Substitution> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Substitution::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn model_of(sub: Substitution) -> Result<Model> {
    Model::new(sub).context("building the Pisot model")
}

fn emit(common: &Common, o: Outcome) -> Result<bool> {
    let text = serde_json::to_string_pretty(&o.report)? + "\n";
    match &common.report {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(o.pass)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parse_type(s: &str, n: usize) -> Result<WedgeType> {
    let letters: Vec<u8> = s.split('^').map(|t| t.trim().parse::<u8>().with_context(|| format!("bad letter in `{s}`"))).collect::<Result<_>>()?;
    if letters.iter().any(|&a| a == 0 || a as usize > n) {
        bail!("type `{s}` uses a letter outside 1..{n}");
    }
    let (ty, sign) = rauzy::chain::wedge_normalize(&letters).with_context(|| format!("type `{s}` repeats a letter"))?;
    if sign != 1 {
        bail!("type `{s}` must be written in increasing order");
    }
    Ok(ty)
}

fn check_level(level: usize) -> Result<()> {
    if level > MAX_LEVEL {
        bail!("level {level} exceeds the cap {MAX_LEVEL}");
    }
    Ok(())
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Classify { common } => {
            let o = classify(&load(&common.sub)?)?;
            emit(&common, o)
        }
        Command::Matrices { common, k } => {
            let sub = load(&common.sub)?;
            let k = match k {
                Some(k) => k,
                None => model_of(sub.clone())?.nbar,
            };
            if k == 0 || k >= sub.n() {
                bail!("k must lie in 1..{}", sub.n() - 1);
            }
            let em = exterior_matrices(&sub, k)?;
            let mut out = String::new();
            for (name, m) in [("B_k", &em.b_k), ("M_k_star", &em.m_k_star), ("M_geom", &em.m_geom)] {
                out.push_str(&format!("# {name}\n{}", csv(m)));
            }
            match &em.conjugator {
                Some(nd) => out.push_str(&format!("# N\n{}\n", nd.iter().map(i64::to_string).collect::<Vec<_>>().join(","))),
                None => out.push_str("# N\n# none\n"),
            }
            print!("{out}");
            let pass = em.conjugator.is_some() && em.transpose_relation && em.sign_relation;
            let report = json!({
                "k": k,
                "types": wedge_types(sub.n(), k).iter().map(|t| type_label(t)).collect::<Vec<_>>(),
                "transpose_relation": em.transpose_relation,
                "sign_relation": em.sign_relation,
                "conjugator": em.conjugator,
            });
            if common.report.is_some() {
                emit(&common, Outcome { report, pass })
            } else {
                Ok(pass)
            }
        }
        Command::Render { common, seed_faces, exponent, iters, level, radius, tol, svg } => {
            if !(tol > 0.0) || !(radius > 0.0) {
                bail!("--tol and --radius must be positive");
            }
            if iters > MAX_ITERS {
                bail!("--iters {iters} exceeds the cap {MAX_ITERS}");
            }
            if let Some(l) = level {
                check_level(l)?;
            }
            let m = model_of(load(&common.sub)?)?;
            m.require_planar()?;
            let types: Vec<WedgeType> = seed_faces.split(',').map(|s| parse_type(s, m.n)).collect::<Result<_>>()?;
            let seed = Chain::from_terms(m.n, m.d - 1, false, types.iter().map(|t| (Face::at_origin(m.n, t.clone()), 1)));
            let o = render(&m, &seed, exponent, iters, level, radius, tol, svg.as_deref())?;
            emit(&common, o)
        }
        Command::Fractal { common, ty, level, svg } => {
            check_level(level)?;
            let m = model_of(load(&common.sub)?)?;
            m.require_planar()?;
            let ty = parse_type(&ty, m.n)?;
            if ty.len() != m.d - 1 {
                bail!("faces of this substitution have {} letters", m.d - 1);
            }
            let o = fractal(&m, &ty, level, svg.as_deref())?;
            emit(&common, o)
        }
        Command::Scc { common, depth_cap } => {
            let m = model_of(load(&common.sub)?)?;
            let tab = strong_coincidence(&m, depth_cap);
            print!("{}", tab.to_csv());
            let pass = tab.holds();
            if common.report.is_some() {
                emit(&common, Outcome { report: serde_json::to_value(&tab)?, pass })
            } else {
                Ok(pass)
            }
        }
        Command::Orbit { common, n, x, y, dyn_opts } => {
            let m = model_of(load(&common.sub)?)?;
            let p = partition(&m, &dyn_opts)?;
            let mut pt = [x, y];
            let mut out = String::new();
            let mut stopped = None;
            for i in 0..n {
                match p.classify(pt) {
                    rauzy::dynamics::exchange::Class::Tile(a) => {
                        out.push_str(&format!("{i} {a} {:.12} {:.12}\n", pt[0], pt[1]));
                        pt = p.step(pt, a);
                    }
                    other => {
                        stopped = Some((i, format!("{other:?}")));
                        break;
                    }
                }
            }
            print!("{out}");
            if let Some((i, why)) = &stopped {
                eprintln!("orbit stopped at step {i}: {why}");
            }
            Ok(stopped.is_none())
        }
        Command::Return { common, n, seed, dyn_opts } => {
            let m = model_of(load(&common.sub)?)?;
            let p = partition(&m, &dyn_opts)?;
            let r = first_return_check(&m, &p, n, seed, dyn_opts.chi.into())?;
            eprintln!(
                "verified {}/{} ({:.2}%), ambiguous {}, failed {}: {}",
                r.verified,
                r.samples,
                100.0 * r.verified_fraction,
                r.ambiguous,
                r.failed,
                if r.holds { "verified >= 99%" } else { "below 99% or failures" }
            );
            let pass = r.holds;
            emit(&common, Outcome { report: serde_json::to_value(&r)?, pass })
        }
        Command::Coding { common, n, dyn_opts } => {
            let m = model_of(load(&common.sub)?)?;
            let p = partition(&m, &dyn_opts)?;
            let c = exchange_orbit(&p, [0.0, 0.0], n)?;
            println!("{}", word_to_string(&c.letters));
            let pass = match c.ambiguous_at {
                Some(i) => {
                    eprintln!("coding stopped at an ambiguous point after {i} letters");
                    false
                }
                None => true,
            };
            if common.report.is_some() {
                let check = coding_cross_check(&m, &p, n, dyn_opts.chi.into())?;
                let pass = pass && check.holds;
                emit(&common, Outcome { report: json!({ "coding": word_to_string(&c.letters), "cross_check": check }), pass })
            } else {
                Ok(pass)
            }
        }
    }
}

fn partition(m: &Model, o: &DynOpts) -> Result<Partition> {
    let kind = match o.level {
        Some(l) => {
            check_level(l)?;
            ClassifierKind::Polygon { level: l, margin: rauzy::dynamics::exchange::AMBIGUITY_MARGIN }
        }
        None => ClassifierKind::Ifs { depth: DEFAULT_IFS_DEPTH },
    };
    if !matches!(ChiVariant::from(o.chi), ChiVariant::Canonical) {
        eprintln!("note: non-canonical χ variants are exposed without any claim about their tiles");
    }
    Ok(Partition::new(m, kind)?)
}

fn csv(m: &IntMatrix) -> String {
    m.to_rows().iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(",") + "\n").collect()
}

fn classify(sub: &Substitution) -> Result<Outcome> {
    let primitive = sub.is_primitive();
    let mut report = json!({
        "alphabet": sub.names(),
        "primitive": primitive,
        "incidence_charpoly": rauzy::algebra::char_poly(&sub.incidence_matrix()).to_string(),
    });
    let model = match Model::new(sub.clone()) {
        Ok(m) => m,
        Err(e) => {
            report["pisot"] = json!({ "ok": false, "reason": e.to_string() });
            report["nice"] = json!(false);
            return Ok(Outcome { report, pass: false });
        }
    };
    let pd = &model.pd;
    report["pisot"] = json!({
        "ok": true,
        "f": pd.f.to_string(),
        "g": pd.g.to_string(),
        "degree": pd.d,
        "beta": pd.beta,
        "beta_interval": [pd.beta_lo, pd.beta_hi],
        "max_conjugate_modulus": pd.max_conjugate_modulus(),
        "unit": pd.unit,
        "reducible": pd.reducible,
    });
    if model.require_planar().is_err() {
        report["nice"] = json!({ "verdict": false, "reason": "geometry implemented only for a two-dimensional contracting space" });
        return Ok(Outcome { report, pass: false });
    }
    let r = nice::check_nice(&model)?;
    report["hypotheses"] = json!({
        "N": r.neutral,
        "P": r.positivity,
        "S1": r.s1,
        "S2": r.s2,
    });
    report["nice"] = json!(r.nice);
    let pass = primitive && pd.unit && r.nice;
    Ok(Outcome { report, pass })
}

#[allow(clippy::too_many_arguments)]
fn render(m: &Model, seed: &Chain, exponent: usize, iters: usize, level: Option<usize>, radius: f64, tol: f64, svg_path: Option<&Path>) -> Result<Outcome> {
    let patch = geometry::stepped_surface(m, seed, exponent, iters)?;
    let pw = geometry::projects_well(m, &patch.chain, tol)?;
    let cov = geometry::coverage(m, &patch.chain);
    let mut report = json!({
        "seed": seed.faces().map(|f| type_label(&f.ty)).collect::<Vec<_>>(),
        "exponent": exponent,
        "iterations": iters,
        "faces": patch.chain.len(),
        "projects_well": { "holds": pw.holds, "total_overlap": pw.total_overlap, "tolerance": tol, "witnesses": pw.witnesses.len() },
        "coverage": { "covered_radius": cov.covered_radius, "inner_loops": cov.inner_loops, "requested_radius": radius, "covers": cov.inner_loops == 0 && cov.covered_radius >= radius },
    });
    let mut pass = pw.holds;
    let (polys, outlines) = match level {
        Some(k) => {
            let a = rauzy::fractal::aperiodic_tiling_audit(m, seed, exponent, iters, k)?;
            pass &= a.report.pass;
            report["tiling_audit"] = serde_json::to_value(&a)?;
            (approx_of_chain(m, &patch.chain, k), vec![])
        }
        None => (patch.polygons.clone(), geometry::boundary_loops(m, &patch.chain)),
    };
    if let Some(p) = svg_path {
        write_file(p, &svg::render(m.n, &polys, &outlines, 800.0))?;
        report["svg"] = json!(p.display().to_string());
    }
    Ok(Outcome { report, pass })
}

fn fractal(m: &Model, ty: &WedgeType, level: usize, svg_path: Option<&Path>) -> Result<Outcome> {
    let tile = rauzy_approx(m, ty, level);
    let area = area_conservation(m, ty, level);
    let seteq = set_equation_check(m, ty, level.saturating_sub(1));
    let conv = boundary_convergence_report(m, ty, level);
    let pass = area.holds && seteq.holds;
    let mut report = json!({
        "type": type_label(ty),
        "level": level,
        "polygons": tile.polygons.len(),
        "area": tile.area(),
        "area_conservation": area,
        "set_equation": seteq,
        "boundary_convergence": conv,
    });
    if let Some(p) = svg_path {
        write_file(p, &svg::render(m.n, &tile.polygons, &tile_outlines(m, ty, level), 800.0))?;
        report["svg"] = json!(p.display().to_string());
    }
    Ok(Outcome { report, pass })
}
