//! Command-line front end for the `bsmaps-core` library.
//!
//! Every subcommand accepts `--out FILE` and `--format`. Exit codes: 0 on
//! success, 2 when a check fails, 1 on a usage error.

pub mod error;
pub mod maps;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use bsmaps_core::catalog::bs_paired_order;
use bsmaps_core::conjugacy::{minkowski_q, minkowski_q_inv};
use bsmaps_core::dimension::{hausdorff_mme, lyapunov_bracket};
use bsmaps_core::freegroup::{ps_limit_cone_mass, ps_partial_cone_mass, sphere_sizes};
use bsmaps_core::symbolic::{entropy, exact_cylinder_mass, parry_measure, perron, sft_of};
use bsmaps_core::{mateability_report, CircleHomeo, GenSet, Rational, Variant};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

pub use error::CliError;
use maps::{load_group, load_map, LoadedMap, MapSource, CATALOG};
use render::{Palette, RenderSpec};

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable text.
    Text,
    /// JSON.
    Json,
    /// Comma-separated values.
    Csv,
    /// Scalable vector graphics.
    Svg,
}

/// Top-level arguments.
#[derive(Debug, Parser)]
#[command(
    name = "bsmaps",
    version,
    about = "Bowen-Series-like circle maps: checks, measures, conjugacies and pictures"
)]
pub struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// The command.
    #[command(subcommand)]
    pub command: Command,
}

/// A map given by catalog name or JSON file.
#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    /// Catalog name (bs, hbs, cfm, interp, B, C, nielsen, reflectN) or a JSON file.
    #[arg(long, default_value = "bs")]
    pub map: String,
    /// Parameter d of the Bowen-Series family.
    #[arg(long)]
    pub d: Option<usize>,
    /// Parameter k of the folding family.
    #[arg(long)]
    pub k: Option<usize>,
    /// Vertex selection for interpolating maps, e.g. 1,2,4.
    #[arg(long, value_delimiter = ',')]
    pub select: Option<Vec<usize>>,
}

impl MapArgs {
    fn load(&self) -> Result<LoadedMap, CliError> {
        load_map(&self.map, self.d, self.k, self.select.clone())
    }
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// List or build catalog maps.
    Catalog {
        /// Catalog action.
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Evaluate the five mateability conditions.
    Verify(VerifyArgs),
    /// Transition matrix of the Markov partition.
    Matrix(MatrixArgs),
    /// Topological entropy and the Perron data.
    Entropy(MapOnly),
    /// Parry mass of a cylinder.
    Measure(MeasureArgs),
    /// Sphere sizes of a Cayley graph.
    Growth(GrowthArgs),
    /// Patterson-Sullivan mass of a cone.
    Psmass(PsmassArgs),
    /// Subshift commands: matrix, entropy, mass.
    Sft {
        /// Subshift action.
        #[command(subcommand)]
        action: SftCmd,
    },
    /// Free-group commands: growth, psmass.
    Group {
        /// Group action.
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// Evaluate the conjugacy to the power map.
    Phi(PhiArgs),
    /// Minkowski question-mark function.
    Qmark(QmarkArgs),
    /// Exact interval maps and dimension estimates.
    Dim {
        /// Dimension action.
        #[command(subcommand)]
        action: DimCmd,
    },
    /// Draw pictures as SVG.
    Render {
        /// Render target.
        #[command(subcommand)]
        target: RenderCmd,
    },
}

/// `catalog` actions.
#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    /// List the catalog.
    List,
    /// Build a map and print its JSON.
    Build(MapArgs),
}

/// Map argument only.
#[derive(Debug, Args)]
pub struct MapOnly {
    /// The map.
    #[command(flatten)]
    pub map: MapArgs,
}

/// `verify` arguments.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// The map.
    #[command(flatten)]
    pub map: MapArgs,
    /// Search depth of the orbit-equivalence heuristic.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
}

/// `matrix` arguments.
#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// The map.
    #[command(flatten)]
    pub map: MapArgs,
    /// Order Bowen-Series arcs in generator pairs.
    #[arg(long)]
    pub paired: bool,
}

/// `measure` arguments.
#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// The map.
    #[command(flatten)]
    pub map: MapArgs,
    /// Cylinder word as 0-based arc indices, e.g. 0,2,5.
    #[arg(long, value_delimiter = ',', required = true)]
    pub word: Vec<usize>,
}

/// `growth` arguments.
#[derive(Debug, Args)]
pub struct GrowthArgs {
    /// Generating set: std (free basis) or hbs (four-element set of rank 2).
    #[arg(long, default_value = "std")]
    pub set: String,
    /// Rank of the free basis.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Largest radius.
    #[arg(long, default_value_t = 8)]
    pub rmax: usize,
}

/// `psmass` arguments.
#[derive(Debug, Args)]
pub struct PsmassArgs {
    /// Rank of the free group.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Length of the base word; omit for the limit measure.
    #[arg(long)]
    pub n: Option<usize>,
    /// Cone depth.
    #[arg(long)]
    pub r: usize,
}

/// `sft` actions.
#[derive(Debug, Subcommand)]
pub enum SftCmd {
    /// Transition matrix.
    Matrix(MatrixArgs),
    /// Entropy.
    Entropy(MapOnly),
    /// Parry mass of a cylinder.
    Mass(MeasureArgs),
}

/// `group` actions.
#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Sphere sizes.
    Growth(GrowthArgs),
    /// Cone masses.
    Psmass(PsmassArgs),
}

/// `phi` arguments.
#[derive(Debug, Args)]
pub struct PhiArgs {
    /// Optional action word `eval` (the only action).
    #[arg(value_parser = ["eval"])]
    pub action: Option<String>,
    /// The map.
    #[command(flatten)]
    pub map: MapArgs,
    /// Angle in turns, as a decimal or a fraction p/q.
    #[arg(long)]
    pub theta: String,
    /// Number of nested preimage steps.
    #[arg(long, default_value_t = 30)]
    pub depth: usize,
}

/// `qmark` arguments.
#[derive(Debug, Args)]
pub struct QmarkArgs {
    /// Point of [0, 1], as a decimal or a fraction p/q.
    #[arg(long)]
    pub x: String,
    /// Largest number of continued-fraction or binary digits used.
    #[arg(long, default_value_t = 64)]
    pub depth: usize,
    /// Evaluate the inverse function on a dyadic rational.
    #[arg(long)]
    pub inverse: bool,
}

/// Interval-map variant argument.
#[derive(Debug, Clone, Args)]
pub struct VariantArgs {
    /// bs3 or hbs3.
    #[arg(long, default_value = "bs3")]
    pub variant: String,
}

impl VariantArgs {
    fn parse(&self) -> Result<Variant, CliError> {
        self.variant
            .parse()
            .map_err(|e: bsmaps_core::DimensionError| CliError::Usage(e.to_string()))
    }
}

/// `dim` actions.
#[derive(Debug, Subcommand)]
pub enum DimCmd {
    /// Exact rank-n vertices.
    Vertices {
        /// Variant.
        #[command(flatten)]
        variant: VariantArgs,
        /// Rank.
        #[arg(long, default_value_t = 3)]
        rank: usize,
    },
    /// Lyapunov bracket at a fixed rank.
    Lyapunov {
        /// Variant.
        #[command(flatten)]
        variant: VariantArgs,
        /// Rank.
        #[arg(long, default_value_t = 6)]
        rank: usize,
    },
    /// Hausdorff dimension bracket of the maximal-entropy measure.
    Hausdorff {
        /// Variant.
        #[command(flatten)]
        variant: VariantArgs,
        /// Target bracket width.
        #[arg(long, default_value_t = 0.01)]
        width: f64,
    },
}

/// Picture options.
#[derive(Debug, Clone, Args)]
pub struct PictureArgs {
    /// Image size in pixels.
    #[arg(long, default_value_t = 800)]
    pub size: u32,
    /// Base stroke width.
    #[arg(long, default_value_t = 1.0)]
    pub stroke: f64,
    /// Black and grey only.
    #[arg(long)]
    pub mono: bool,
}

impl PictureArgs {
    fn spec(&self) -> Result<RenderSpec, CliError> {
        if self.size < 50 || self.stroke.is_nan() || self.stroke <= 0.0 {
            return Err(CliError::Usage(
                "size must be at least 50 and stroke positive".into(),
            ));
        }
        Ok(RenderSpec {
            size: self.size,
            stroke: self.stroke,
            palette: if self.mono { Palette::Mono } else { Palette::Color },
        })
    }
}

/// `render` targets.
#[derive(Debug, Subcommand)]
pub enum RenderCmd {
    /// Tessellation of the disk by translates of the fundamental polygon.
    Tessellation {
        /// Group: bs or thrice.
        #[arg(long, default_value = "bs")]
        group: String,
        /// Parameter d for the bs group.
        #[arg(long)]
        d: Option<usize>,
        /// Largest word length (at most 6).
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Picture options.
        #[command(flatten)]
        picture: PictureArgs,
    },
    /// Ideal polygon on the break points of a map.
    Domain {
        /// The map.
        #[command(flatten)]
        map: MapArgs,
        /// Picture options.
        #[command(flatten)]
        picture: PictureArgs,
    },
    /// Graph of an interval map.
    MapGraph {
        /// Variant.
        #[command(flatten)]
        variant: VariantArgs,
        /// Picture options.
        #[command(flatten)]
        picture: PictureArgs,
    },
    /// Graph of the log-derivative of an interval map.
    LogderivGraph {
        /// Variant.
        #[command(flatten)]
        variant: VariantArgs,
        /// Picture options.
        #[command(flatten)]
        picture: PictureArgs,
    },
    /// Vertex ticks of a given rank.
    VertexRuler {
        /// Variant.
        #[command(flatten)]
        variant: VariantArgs,
        /// Rank.
        #[arg(long, default_value_t = 3)]
        rank: usize,
        /// Picture options.
        #[command(flatten)]
        picture: PictureArgs,
    },
}

/// Result of a command: the rendered output and whether a check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    /// Text to print or write.
    pub body: String,
    /// Whether a check failed (exit code 2).
    pub failed: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, failed: false }
    }
}

/// Cone-mass result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsMass {
    /// Rank.
    pub d: usize,
    /// Base word length, `None` for the limit.
    pub n: Option<usize>,
    /// Cone depth.
    pub r: usize,
    /// Exact mass as `p/q`.
    pub mass: String,
}

/// Growth result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Growth {
    /// Generating set name.
    pub set: String,
    /// `|S(r)|` for `r = 0..=rmax`.
    pub sizes: Vec<u64>,
}

/// Cylinder mass result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderMass {
    /// The word.
    pub word: Vec<usize>,
    /// Exact mass as `p/q`, when the subshift has constant column sums.
    pub exact: Option<String>,
    /// Floating-point mass.
    pub mass: f64,
}

/// Parse a decimal such as `0.125` or a fraction such as `5/13` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("cannot parse {s} as a rational number"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let r = Rational::new(n, num_traits::pow(BigInt::from(10), frac.len()));
    Ok(if neg { -r } else { r })
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format], cmd: &str) -> Result<Format, CliError> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!(
            "{cmd} does not support --format {}",
            f.to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default()
        )))
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

use Format::{Csv, Json, Svg, Text};

fn catalog(action: &CatalogCmd, format: Option<Format>) -> Result<Output, CliError> {
    match action {
        CatalogCmd::List => match pick(format, Text, &[Text, Json, Csv], "catalog list")? {
            Json => {
                let v: Vec<_> = CATALOG
                    .iter()
                    .map(|(n, p, d)| json!({"name": n, "params": p, "description": d}))
                    .collect();
                Ok(Output::ok(pretty(&v)))
            }
            Csv => {
                let mut s = String::from("name,params,description\n");
                for (n, p, d) in CATALOG {
                    s.push_str(&format!("{n},\"{p}\",\"{d}\"\n"));
                }
                Ok(Output::ok(s))
            }
            _ => {
                let mut s = String::new();
                for (n, p, d) in CATALOG {
                    s.push_str(&format!("{n:<9} {p:<24} {d}\n"));
                }
                Ok(Output::ok(s))
            }
        },
        CatalogCmd::Build(args) => {
            let lm = MapSource::new(&args.map, args.d, args.k, args.select.clone())?.build()?;
            match pick(format, Json, &[Json, Text], "catalog build")? {
                Json => Ok(Output::ok(pretty(&lm.to_json()))),
                _ => {
                    let mut s = format!("{}: {} arcs\n", lm.name, lm.map.len());
                    let labels = lm.map.label_strings();
                    for (j, p) in lm.map.pieces().iter().enumerate() {
                        s.push_str(&format!(
                            "{j:>3}  start {:.12} turns  {}\n",
                            p.arc.start_turn(),
                            labels.get(j).cloned().unwrap_or_default()
                        ));
                    }
                    Ok(Output::ok(s))
                }
            }
        }
    }
}

fn verify(args: &VerifyArgs, format: Option<Format>) -> Result<Output, CliError> {
    let lm = args.map.load()?;
    let report = mateability_report(&lm.map, lm.group.as_ref(), args.depth);
    let failed = report
        .items
        .iter()
        .any(|i| i.status == bsmaps_core::ItemStatus::Fail);
    let body = match pick(format, Text, &[Text, Json], "verify")? {
        Json => pretty(&report),
        _ => format!(
            "{}\n{report}overall: {}\n",
            lm.name,
            if report.passed() {
                "pass"
            } else if failed {
                "fail"
            } else {
                "not established"
            }
        ),
    };
    Ok(Output { body, failed })
}

fn matrix(args: &MatrixArgs, format: Option<Format>) -> Result<Output, CliError> {
    let lm = args.map.load()?;
    let mut tm = lm.map.check_markov()?;
    if args.paired {
        match &lm.source {
            Some(MapSource { map, d: Some(d), .. }) if map == "bs" => tm = tm.permuted(&bs_paired_order(*d)),
            _ => return Err(CliError::Usage("--paired applies to bs maps only".into())),
        }
    }
    match pick(format, Csv, &[Csv, Json, Text], "matrix")? {
        Json => Ok(Output::ok(pretty(&tm))),
        _ => Ok(Output::ok(tm.to_csv())),
    }
}

fn entropy_cmd(args: &MapOnly, format: Option<Format>) -> Result<Output, CliError> {
    let lm = args.map.load()?;
    let sft = sft_of(&lm.map)?;
    let h = entropy(&sft)?;
    let p = perron(sft.matrix(), 1e-13)?;
    let degree = lm.map.covering_degree()?;
    match pick(format, Text, &[Text, Json], "entropy")? {
        Json => Ok(Output::ok(pretty(&json!({
            "map": lm.name, "arcs": sft.alphabet(), "degree": degree,
            "lambda": p.lambda, "entropy": h,
        })))),
        _ => Ok(Output::ok(format!(
            "{}: {} arcs, degree {degree}, lambda {:.15}, entropy {:.15}\n",
            lm.name,
            sft.alphabet(),
            p.lambda,
            h
        ))),
    }
}

fn measure(args: &MeasureArgs, format: Option<Format>) -> Result<Output, CliError> {
    let lm = args.map.load()?;
    let sft = sft_of(&lm.map)?;
    if let Some(&bad) = args.word.iter().find(|&&s| s >= sft.alphabet()) {
        return Err(CliError::Usage(format!(
            "symbol {bad} out of range 0..{}",
            sft.alphabet()
        )));
    }
    let mass = parry_measure(&sft)?.cylinder_mass(&args.word);
    let exact = exact_cylinder_mass(&sft, &args.word).ok().map(|r| r.to_string());
    let res = CylinderMass {
        word: args.word.clone(),
        exact,
        mass,
    };
    match pick(format, Text, &[Text, Json], "measure")? {
        Json => Ok(Output::ok(pretty(&res))),
        _ => Ok(Output::ok(match &res.exact {
            Some(e) => format!("{e} ({mass:.15e})\n"),
            None => format!("{mass:.15e}\n"),
        })),
    }
}

fn growth(args: &GrowthArgs, format: Option<Format>) -> Result<Output, CliError> {
    let gs = match args.set.as_str() {
        "std" => GenSet::standard(args.d),
        "hbs" => GenSet::hbs(),
        other => {
            return Err(CliError::Usage(format!(
                "unknown generating set {other}; expected std or hbs"
            )))
        }
    };
    let sizes = sphere_sizes(&gs, args.rmax)?;
    let g = Growth {
        set: args.set.clone(),
        sizes,
    };
    match pick(format, Csv, &[Csv, Json, Text], "growth")? {
        Json => Ok(Output::ok(pretty(&g))),
        _ => {
            let mut s = String::from("radius,size\n");
            for (r, n) in g.sizes.iter().enumerate() {
                s.push_str(&format!("{r},{n}\n"));
            }
            Ok(Output::ok(s))
        }
    }
}

fn psmass(args: &PsmassArgs, format: Option<Format>) -> Result<Output, CliError> {
    if args.d < 2 {
        return Err(CliError::Usage("psmass needs rank d >= 2".into()));
    }
    if args.n.is_some_and(|n| n < args.r) {
        return Err(CliError::Usage("psmass needs n >= r".into()));
    }
    let m = match args.n {
        Some(n) => ps_partial_cone_mass(args.d, n, args.r),
        None => ps_limit_cone_mass(args.d, args.r),
    };
    let res = PsMass {
        d: args.d,
        n: args.n,
        r: args.r,
        mass: m.to_string(),
    };
    match pick(format, Text, &[Text, Json], "psmass")? {
        Json => Ok(Output::ok(pretty(&res))),
        _ => Ok(Output::ok(format!(
            "{} ({:.15})\n",
            res.mass,
            m.to_f64().unwrap_or(f64::NAN)
        ))),
    }
}

fn phi(args: &PhiArgs, format: Option<Format>) -> Result<Output, CliError> {
    let lm = args.map.load()?;
    let theta = parse_rational(&args.theta)?;
    if theta < Rational::zero() || theta > Rational::one() {
        return Err(CliError::Usage("theta must lie in [0, 1]".into()));
    }
    let homeo = CircleHomeo::build(&lm.map, args.depth)?;
    let v = homeo.eval_rational_at(&theta, args.depth)?;
    match pick(format, Text, &[Text, Json], "phi")? {
        Json => Ok(Output::ok(pretty(&v))),
        _ => Ok(Output::ok(format!("{:.15} +- {:.3e}\n", v.turn, v.error))),
    }
}

fn qmark(args: &QmarkArgs, format: Option<Format>) -> Result<Output, CliError> {
    let x = parse_rational(&args.x)?;
    let y = if args.inverse {
        minkowski_q_inv(&x, args.depth)?
    } else {
        minkowski_q(&x, args.depth)?
    };
    match pick(format, Text, &[Text, Json], "qmark")? {
        Json => Ok(Output::ok(pretty(&json!({
            "x": x.to_string(), "inverse": args.inverse, "value": y.to_string(),
        })))),
        _ => Ok(Output::ok(format!("{y}\n"))),
    }
}

fn dim(action: &DimCmd, format: Option<Format>) -> Result<Output, CliError> {
    match action {
        DimCmd::Vertices { variant, rank } => {
            let imap = variant.parse()?.interval_map();
            let v = imap.vertex_set(*rank)?;
            match pick(format, Csv, &[Csv, Json, Text], "dim vertices")? {
                Json => Ok(Output::ok(pretty(
                    &v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                ))),
                _ => {
                    let mut s = String::from("index,vertex\n");
                    for (i, x) in v.iter().enumerate() {
                        s.push_str(&format!("{i},{x}\n"));
                    }
                    Ok(Output::ok(s))
                }
            }
        }
        DimCmd::Lyapunov { variant, rank } => {
            let b = lyapunov_bracket(&variant.parse()?.interval_map(), *rank)?;
            match pick(format, Text, &[Text, Json], "dim lyapunov")? {
                Json => Ok(Output::ok(pretty(&b))),
                _ => Ok(Output::ok(format!(
                    "rank {}: lyapunov [{:.9}, {:.9}], dimension [{:.9}, {:.9}]\n",
                    b.rank, b.lower, b.upper, b.hd_lower, b.hd_upper
                ))),
            }
        }
        DimCmd::Hausdorff { variant, width } => {
            let est = hausdorff_mme(variant.parse()?, *width)?;
            match pick(format, Json, &[Json, Text], "dim hausdorff")? {
                Json => Ok(Output::ok(pretty(&est))),
                _ => Ok(Output::ok(format!(
                    "dimension in [{:.9}, {:.9}] at rank {}{}\n",
                    est.lower,
                    est.upper,
                    est.rank,
                    if est.reached {
                        ""
                    } else {
                        " (target width not reached)"
                    }
                ))),
            }
        }
    }
}

fn render_cmd(target: &RenderCmd, format: Option<Format>) -> Result<Output, CliError> {
    pick(format, Svg, &[Svg], "render")?;
    let body = match target {
        RenderCmd::Tessellation {
            group,
            d,
            depth,
            picture,
        } => render::render_tessellation(&load_group(group, *d)?, *depth, &picture.spec()?)?,
        RenderCmd::Domain { map, picture } => render::render_domain(&map.load()?.map, &picture.spec()?)?,
        RenderCmd::MapGraph { variant, picture } => {
            render::render_map_graph(&variant.parse()?.interval_map(), &picture.spec()?)
        }
        RenderCmd::LogderivGraph { variant, picture } => {
            render::render_logderiv_graph(&variant.parse()?.interval_map(), &picture.spec()?)
        }
        RenderCmd::VertexRuler {
            variant,
            rank,
            picture,
        } => render::render_vertex_ruler(&variant.parse()?.interval_map(), *rank, &picture.spec()?)?,
    };
    Ok(Output::ok(body))
}

/// Run a parsed command.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Catalog { action } => catalog(action, f),
        Command::Verify(a) => verify(a, f),
        Command::Matrix(a)
        | Command::Sft {
            action: SftCmd::Matrix(a),
        } => matrix(a, f),
        Command::Entropy(a)
        | Command::Sft {
            action: SftCmd::Entropy(a),
        } => entropy_cmd(a, f),
        Command::Measure(a)
        | Command::Sft {
            action: SftCmd::Mass(a),
        } => measure(a, f),
        Command::Growth(a)
        | Command::Group {
            action: GroupCmd::Growth(a),
        } => growth(a, f),
        Command::Psmass(a)
        | Command::Group {
            action: GroupCmd::Psmass(a),
        } => psmass(a, f),
        Command::Phi(a) => phi(a, f),
        Command::Qmark(a) => qmark(a, f),
        Command::Dim { action } => dim(action, f),
        Command::Render { target } => render_cmd(target, f),
    }
}

/// Parse arguments, run, write the output and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(source) = std::fs::write(path, &out.body) {
                let e = CliError::Io {
                    path: path.display().to_string(),
                    source,
                };
                eprintln!("error: {e}");
                return e.exit_code();
            }
        }
        None => print!("{}", out.body),
    }
    if out.failed {
        2
    } else {
        0
    }
}
