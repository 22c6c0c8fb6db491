//! `pgf`: command-line front end for the curve-graph, marking-graph and
//! free-product computations, and for the experiment suite.
//!
//! Exit status: 0 on success, 1 when a check fails (reports are still
//! written) or a computation errors, 2 on malformed input or config.

mod config;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use pgf_core::farey::{
    curve_distance, curve_distance_oracle, curve_geodesic, curve_geodesic_oracle, is_pseudo_anosov, Slope,
    SurfaceModel,
};
use pgf_core::freeprod::{
    check_truncation_comparability, coned_distance, distance_terms, total_distance, Presentation, TreePoint, Word,
};
use pgf_core::lab::{
    d0_probe, edge_constant_harness, estimate_constants, estimator_comparability, flat_projection_check,
    injectivity_scan, local_qg_check, off_orbit_projection_check, orbit_distortion_check, orbit_filling_check,
    pa_scan, pell_slope, thin_translation_check, translation_lower_bound_check, translation_monotonicity,
    twist_word_length_check, ConstantsOptions, DistortionOptions, EstimatorOptions, OffOrbitOptions,
    RealizedGroup, Report, Verdict,
};
use pgf_core::markings::{
    distance_formula_estimate, distance_formula_oracle, marking_distance, marking_distance_unpruned, Marking,
    MarkingGraphConfig,
};
use pgf_core::metric::ConstantsLedger;
use pgf_core::projection::{annular_distance, bgim_diameter, lift_arc_distance, AnnularDomain};
use pgf_core::TreeLength;

use config::{parse_range, ExperimentConfig};

/// Malformed input: reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn parse<T: std::str::FromStr>(what: &str, s: &str) -> Result<T, UsageError>
where
    T::Err: fmt::Display,
{
    s.parse().map_err(|e| UsageError(format!("bad {what} {s:?}: {e}")))
}

#[derive(Parser, Debug)]
#[command(name = "pgf", version, about = "Curve graphs, marking graphs and twist free products on complexity-one surfaces")]
struct Cli {
    /// TOML experiment config; flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Use the brute-force reference computation instead of the fast path.
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long = "radius-cap", global = true)]
    radius_cap: Option<u64>,
    /// Truncation threshold for the distance-formula estimator.
    #[arg(long = "A2", global = true)]
    a2: Option<f64>,
    /// Directory for CSV reports and summaries.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for cached marking-graph balls.
    #[arg(long, global = true, env = "PGF_CACHE_DIR")]
    cache: Option<PathBuf>,
    /// `torus` or `sphere`.
    #[arg(long, global = true)]
    surface: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distances and geodesics in the Farey graph.
    #[command(subcommand)]
    Farey(FareyCommand),
    /// Annular subsurface projections.
    #[command(subcommand)]
    Proj(ProjCommand),
    /// The marking graph and the distance-formula estimator.
    #[command(subcommand)]
    Markings(MarkingsCommand),
    /// Words in the free product and their realization as mapping classes.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Experiments; each writes a CSV report and a summary.
    #[command(subcommand)]
    Exp(ExpCommand),
}

#[derive(Subcommand, Debug)]
enum FareyCommand {
    /// Curve-graph distance between two slopes.
    #[command(alias = "dist")]
    Distance {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// A geodesic between two slopes, one vertex per line.
    Geodesic {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
enum ProjCommand {
    /// Annular coefficient `d_Y(a, b)` for the annulus with the given core.
    #[command(alias = "coeff")]
    Coefficient {
        #[arg(allow_hyphen_values = true)]
        core: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Projection diameter of the geodesic from `a` to `b`; `none` when the
    /// geodesic passes through the core.
    Bgim {
        #[arg(allow_hyphen_values = true)]
        core: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
enum MarkingsCommand {
    /// Marking-graph distance, e.g. `"{0/1, 1/0} @1"`.
    #[command(alias = "dist")]
    Distance { m1: String, m2: String },
    /// Distance-formula estimate with its witness domains.
    Formula {
        m1: String,
        m2: String,
        /// Fan reach around the geodesic hull for candidate annuli.
        #[arg(long, default_value_t = 3)]
        reach: i64,
        /// Intersection cap on cores for the reference sum.
        #[arg(long = "intersection-cap", default_value_t = 12)]
        intersection_cap: u64,
    },
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Factor ranks `n,m` of `Z^n * Z^m`.
    #[arg(long, default_value = "1,1")]
    ranks: String,
}

#[derive(Args, Debug, Clone, Default)]
struct PairArgs {
    /// First curve; with `--beta`, replaces the default pair.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// Distance of the default pair `1/0` and its Pell partner.
    #[arg(long)]
    d: Option<u32>,
    /// Twist powers `pa,pb`.
    #[arg(long)]
    powers: Option<String>,
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// Normal form of a word such as `A(2)B(-1)`.
    #[command(alias = "nf")]
    NormalForm {
        word: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Matrix of the realized word.
    Realize {
        word: String,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Trace of the realized word and whether it is pseudo-Anosov.
    Trace {
        word: String,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Exact distance between `v0`-translates on the flat-and-edge complex,
    /// with its terms, the coned-off distance and the truncation check.
    Distance {
        w1: String,
        w2: String,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        kappa: Option<i64>,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct ExpArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Family of distances `lo..hi`.
    #[arg(long)]
    range: Option<String>,
    #[arg(long = "max-syll")]
    max_syllables: Option<usize>,
    #[arg(long = "max-exp")]
    max_exp: Option<i64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    radius: Option<u64>,
    /// Ledger text from `exp constants`.
    #[arg(long)]
    ledger: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ExpCommand {
    /// Smallest distance in a family at which no kernel element or
    /// non-pseudo-Anosov word appears within the word bounds.
    #[command(name = "free-group-probe", alias = "d0")]
    FreeGroupProbe(ExpArgs),
    /// Translation distance of `b^k` against `(2D - 4)/N`.
    #[command(name = "translation-bound", alias = "lemma31")]
    TranslationBound(ExpArgs),
    /// Translation distance against `2D - 2C0`, plus monotonicity in `D`.
    #[command(name = "thin-translation", alias = "lemma32")]
    ThinTranslation(ExpArgs),
    /// Images of adjacent tree edges are local quasigeodesics.
    #[command(name = "local-quasigeodesic", alias = "lemma33")]
    LocalQuasigeodesic {
        #[command(flatten)]
        args: ExpArgs,
        #[arg(long = "d-local")]
        d_local: Option<u64>,
    },
    /// Marking distance against the distance-formula estimate on a ball.
    #[command(name = "estimator", alias = "distance-formula")]
    Estimator(ExpArgs),
    /// Lower-bound slope of the orbit map into the marking graph.
    Distortion(ExpArgs),
    /// Bound on off-orbit annular coefficients, with the on-orbit contrast.
    #[command(name = "off-orbit-projection", alias = "thm510")]
    OffOrbitProjection(ExpArgs),
    /// Estimates every ledger constant for the configured pair.
    Constants(ExpArgs),
    /// Kernel scan of the realization.
    Injectivity(ExpArgs),
    /// Trace scan of words not conjugate into a factor.
    PseudoAnosov(ExpArgs),
    /// Orbit curves of distinct cosets are distinct and fill.
    OrbitFilling(ExpArgs),
    /// Annular coefficients of flat projections of orbit markings.
    FlatProjection(ExpArgs),
    /// Empirical edge and half-edge projection bounds.
    EdgeConstants(ExpArgs),
    /// Twist power against the annular coefficient at `α`.
    TwistWordLength(ExpArgs),
}

/// Flags layered over the config file.
struct Settings {
    cfg: ExperimentConfig,
    oracle: bool,
}

impl Settings {
    fn surface(&self) -> Result<SurfaceModel, UsageError> {
        parse("surface", self.cfg.surface.as_deref().unwrap_or("torus"))
    }

    fn seed(&self) -> u64 {
        self.cfg.seed.unwrap_or(1)
    }

    fn radius_cap(&self) -> u64 {
        self.cfg.radius_cap.unwrap_or(40)
    }

    fn a2(&self) -> f64 {
        self.cfg.a2.unwrap_or(6.0)
    }

    fn apply_exp(&mut self, a: &ExpArgs) -> Result<(), UsageError> {
        self.apply_pair(&a.pair)?;
        let c = &mut self.cfg;
        c.range = a.range.clone().or(c.range.take());
        c.max_syllables = a.max_syllables.or(c.max_syllables);
        c.max_exp = a.max_exp.or(c.max_exp);
        c.samples = a.samples.or(c.samples);
        c.radius = a.radius.or(c.radius);
        c.ledger = a.ledger.clone().or(c.ledger.take());
        c.validate()
    }

    fn apply_pair(&mut self, p: &PairArgs) -> Result<(), UsageError> {
        let c = &mut self.cfg;
        c.alpha = p.alpha.clone().or(c.alpha.take());
        c.beta = p.beta.clone().or(c.beta.take());
        c.d = p.d.or(c.d);
        if let Some(s) = &p.powers {
            let (a, b) = s
                .split_once(',')
                .ok_or_else(|| UsageError(format!("expected powers pa,pb, got {s:?}")))?;
            c.powers = Some([parse("power", a.trim())?, parse("power", b.trim())?]);
        }
        c.validate()
    }

    fn powers(&self) -> (i64, i64) {
        let [a, b] = self.cfg.powers.unwrap_or([1, 1]);
        (a, b)
    }

    fn group(&self) -> anyhow::Result<RealizedGroup> {
        let surface = self.surface()?;
        let (pa, pb) = self.powers();
        let (alpha, beta) = match (&self.cfg.alpha, &self.cfg.beta) {
            (Some(a), Some(b)) => (parse::<Slope>("slope", a)?, parse::<Slope>("slope", b)?),
            (None, None) => (Slope::infinity(), pell_slope(self.cfg.d.unwrap_or(6))),
            _ => bail!(UsageError("give both --alpha and --beta, or neither".into())),
        };
        RealizedGroup::new(surface, alpha, beta, pa, pb).map_err(|e| UsageError(e.to_string()).into())
    }

    fn family(&self) -> anyhow::Result<Vec<RealizedGroup>> {
        let (lo, hi) = parse_range(self.cfg.range.as_deref().unwrap_or("1..8"))?;
        let surface = self.surface()?;
        let (pa, pb) = self.powers();
        (lo..=hi)
            .map(|d| Ok(RealizedGroup::new(surface, Slope::infinity(), pell_slope(d), pa, pb)?))
            .collect()
    }

    fn max_syllables(&self, default: usize) -> usize {
        self.cfg.max_syllables.unwrap_or(default)
    }

    fn max_exp(&self, default: i64) -> i64 {
        self.cfg.max_exp.unwrap_or(default)
    }

    fn samples(&self, default: usize) -> usize {
        self.cfg.samples.unwrap_or(default)
    }

    /// Ledger from `--ledger`, else freshly estimated for `rg`.
    fn ledger(&self, rg: &RealizedGroup) -> anyhow::Result<ConstantsLedger> {
        if let Some(path) = &self.cfg.ledger {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return ConstantsLedger::from_text(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())).into());
        }
        let opts = ConstantsOptions { seed: self.seed(), a2: self.a2(), ..Default::default() };
        let report = estimate_constants(rg, &opts)?;
        Ok(report.ledger.expect("constants report carries its ledger"))
    }
}

fn presentation(ranks: &str) -> Result<Presentation, UsageError> {
    let (a, b) = ranks
        .split_once(',')
        .ok_or_else(|| UsageError(format!("expected ranks n,m, got {ranks:?}")))?;
    Presentation::new(parse("rank", a.trim())?, parse("rank", b.trim())?).map_err(|e| UsageError(e.to_string()))
}

/// `ann(p/q)` or a bare slope.
fn core_domain(s: &str) -> Result<AnnularDomain, UsageError> {
    if s.trim_start().starts_with("ann(") {
        parse("core", s)
    } else {
        Ok(AnnularDomain::new(parse("core", s)?))
    }
}

fn word(p: &Presentation, s: &str) -> Result<Word, UsageError> {
    p.parse(s).map_err(|e| UsageError(format!("bad word {s:?}: {e}")))
}

/// Writes `<id>.csv` and `<id>.summary.txt` under `out`, and the ledger
/// text alongside when the report carries one.
fn write_report(report: &Report, out: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    std::fs::write(out.join(format!("{}.csv", report.id)), report.to_csv())?;
    std::fs::write(out.join(format!("{}.summary.txt", report.id)), report.summary_text())?;
    if let Some(l) = &report.ledger {
        std::fs::write(out.join(format!("{}.ledger", report.id)), l.to_text())?;
    }
    Ok(())
}

fn emit(reports: &[Report], out: Option<&Path>) -> anyhow::Result<bool> {
    let mut ok = true;
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            println!();
        }
        print!("{}", r.summary_text());
        if let Some(dir) = out {
            write_report(r, dir)?;
        }
        ok &= r.get("verdict") != Some(&Verdict::Fail.to_string());
    }
    Ok(ok)
}

fn run_exp(cmd: &ExpCommand, s: &mut Settings, cache: Option<&Path>) -> anyhow::Result<Vec<Report>> {
    let seed = s.seed();
    let reports = match cmd {
        ExpCommand::FreeGroupProbe(a) => {
            s.apply_exp(a)?;
            vec![d0_probe(&s.family()?, s.max_syllables(5), s.max_exp(2), seed)?]
        }
        ExpCommand::TranslationBound(a) => {
            s.apply_exp(a)?;
            let rg = s.group()?;
            let ledger = s.ledger(&rg)?;
            let n = s.max_exp(10);
            let exps: Vec<i64> = (-n..=n).collect();
            let mut r = translation_lower_bound_check(&rg, &exps, &ledger)?;
            r.ledger = Some(ledger);
            vec![r]
        }
        ExpCommand::ThinTranslation(a) => {
            s.apply_exp(a)?;
            let rg = s.group()?;
            let ledger = s.ledger(&rg)?;
            let n = s.max_exp(10);
            let exps: Vec<i64> = (-n..=n).collect();
            let mut r = thin_translation_check(&rg, &exps, &ledger)?;
            r.ledger = Some(ledger);
            vec![r, translation_monotonicity(&s.family()?)?]
        }
        ExpCommand::LocalQuasigeodesic { args, d_local } => {
            s.apply_exp(args)?;
            let rg = s.group()?;
            let ledger = s.ledger(&rg)?;
            let n = s.max_exp(5);
            let exps: Vec<i64> = (-n..=n).collect();
            let mut r = local_qg_check(&rg, &exps, *d_local, &ledger)?;
            r.ledger = Some(ledger);
            vec![r]
        }
        ExpCommand::Estimator(a) => {
            s.apply_exp(a)?;
            let cfg = MarkingGraphConfig::standard(s.surface()?);
            let opts = EstimatorOptions {
                radius: s.cfg.radius.unwrap_or(4),
                pairs: s.samples(400),
                a2: s.a2(),
                seed,
                ..Default::default()
            };
            vec![estimator_comparability(&cfg, &opts, cache)?]
        }
        ExpCommand::Distortion(a) => {
            s.apply_exp(a)?;
            if s.cfg.d.is_none() && s.cfg.alpha.is_none() {
                s.cfg.d = Some(2);
            }
            let rg = s.group()?;
            let cfg = MarkingGraphConfig::standard(s.surface()?);
            let opts = DistortionOptions {
                words: s.samples(60),
                max_syllables: s.max_syllables(4),
                max_exp: s.max_exp(2),
                radius_cap: s.radius_cap(),
                seed,
                ..Default::default()
            };
            vec![orbit_distortion_check(&rg, &cfg, &opts)?]
        }
        ExpCommand::OffOrbitProjection(a) => {
            s.apply_exp(a)?;
            let rg = s.group()?;
            let opts = OffOrbitOptions {
                words: s.samples(200),
                max_syllables: s.max_syllables(4),
                max_exp: s.max_exp(3),
                seed,
                ..Default::default()
            };
            vec![off_orbit_projection_check(&rg, &opts)?]
        }
        ExpCommand::Constants(a) => {
            s.apply_exp(a)?;
            let rg = s.group()?;
            let opts = ConstantsOptions {
                bgim_samples: s.samples(500),
                max_syllables: s.max_syllables(3),
                max_exp: s.max_exp(2),
                a2: s.a2(),
                seed,
                ..Default::default()
            };
            vec![estimate_constants(&rg, &opts)?]
        }
        ExpCommand::Injectivity(a) => {
            s.apply_exp(a)?;
            vec![injectivity_scan(&s.group()?, s.max_syllables(4), s.max_exp(3))?]
        }
        ExpCommand::PseudoAnosov(a) => {
            s.apply_exp(a)?;
            vec![pa_scan(&s.group()?, s.max_syllables(4), s.max_exp(3), s.samples(50), seed)?]
        }
        ExpCommand::OrbitFilling(a) => {
            s.apply_exp(a)?;
            vec![orbit_filling_check(&s.group()?, s.max_syllables(3), s.max_exp(2))?]
        }
        ExpCommand::FlatProjection(a) => {
            s.apply_exp(a)?;
            let rg = s.group()?;
            let ledger = s.ledger(&rg)?;
            let mut r = flat_projection_check(&rg, s.samples(200), s.max_syllables(6), s.max_exp(3), seed, &ledger)?;
            r.ledger = Some(ledger);
            vec![r]
        }
        ExpCommand::EdgeConstants(a) => {
            s.apply_exp(a)?;
            vec![edge_constant_harness(&s.group()?, s.samples(400), seed)?]
        }
        ExpCommand::TwistWordLength(a) => {
            s.apply_exp(a)?;
            let n = s.max_exp(50);
            vec![twist_word_length_check(&s.group()?, &(-n..=n).collect::<Vec<_>>())?]
        }
    };
    Ok(reports)
}

/// Runs one command; `Ok(false)` means a check failed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    cfg.seed = cli.seed.or(cfg.seed);
    cfg.radius_cap = cli.radius_cap.or(cfg.radius_cap);
    cfg.a2 = cli.a2.or(cfg.a2);
    cfg.out = cli.out.clone().or(cfg.out);
    cfg.cache_dir = cli.cache.clone().or(cfg.cache_dir);
    cfg.surface = cli.surface.clone().or(cfg.surface);
    cfg.validate()?;
    let mut s = Settings { cfg, oracle: cli.oracle };
    let surface = s.surface()?;

    match &cli.command {
        Command::Farey(FareyCommand::Distance { a, b }) => {
            let (a, b): (Slope, Slope) = (parse("slope", a)?, parse("slope", b)?);
            let d = if s.oracle { curve_distance_oracle(&a, &b) } else { curve_distance(&a, &b, &surface) };
            println!("{d}");
        }
        Command::Farey(FareyCommand::Geodesic { a, b }) => {
            let (a, b): (Slope, Slope) = (parse("slope", a)?, parse("slope", b)?);
            let path = if s.oracle { curve_geodesic_oracle(&a, &b) } else { curve_geodesic(&a, &b, &surface) };
            for v in path {
                println!("{v}");
            }
        }
        Command::Proj(ProjCommand::Coefficient { core, a, b }) => {
            let y = core_domain(core)?;
            let (a, b): (Slope, Slope) = (parse("slope", a)?, parse("slope", b)?);
            let d = if s.oracle { lift_arc_distance(&y, &a, &b)? } else { annular_distance(&y, &a, &b)? };
            println!("{d}");
        }
        Command::Proj(ProjCommand::Bgim { core, a, b }) => {
            let y = core_domain(core)?;
            let (a, b): (Slope, Slope) = (parse("slope", a)?, parse("slope", b)?);
            match bgim_diameter(&curve_geodesic(&a, &b, &surface), &y, &surface)? {
                Some(d) => println!("{d}"),
                None => println!("none"),
            }
        }
        Command::Markings(MarkingsCommand::Distance { m1, m2 }) => {
            let (m1, m2): (Marking, Marking) = (parse("marking", m1)?, parse("marking", m2)?);
            let cfg = MarkingGraphConfig::standard(surface);
            let cap = s.cfg.radius_cap.unwrap_or(12);
            let d = if s.oracle {
                marking_distance_unpruned(&m1, &m2, &cfg, cap)?
            } else {
                marking_distance(&m1, &m2, &cfg, cap)?
            };
            match d {
                Some(d) => println!("{d}"),
                None => {
                    println!("exceeds {cap}");
                    return Ok(false);
                }
            }
        }
        Command::Markings(MarkingsCommand::Formula { m1, m2, reach, intersection_cap }) => {
            let (m1, m2): (Marking, Marking) = (parse("marking", m1)?, parse("marking", m2)?);
            let e = if s.oracle {
                distance_formula_oracle(&m1, &m2, s.a2(), *intersection_cap, &surface)?
            } else {
                distance_formula_estimate(&m1, &m2, s.a2(), *reach, &surface)?
            };
            println!("{}", e.total);
            for (domain, term) in &e.witnesses {
                println!("{domain},{term}");
            }
        }
        Command::Group(GroupCommand::NormalForm { word: w, group }) => {
            println!("{}", word(&presentation(&group.ranks)?, w)?);
        }
        Command::Group(GroupCommand::Realize { word: w, pair }) => {
            s.apply_pair(pair)?;
            let rg = s.group()?;
            println!("{}", rg.realize(&word(&rg.presentation(), w)?)?);
        }
        Command::Group(GroupCommand::Trace { word: w, pair }) => {
            s.apply_pair(pair)?;
            let rg = s.group()?;
            let m = rg.realize(&word(&rg.presentation(), w)?)?;
            println!("trace = {}", m.trace());
            println!("pseudo_anosov = {}", is_pseudo_anosov(&m));
        }
        Command::Group(GroupCommand::Distance { w1, w2, group, kappa }) => {
            let p = presentation(&group.ranks)?;
            let (g1, g2) = (word(&p, w1)?, word(&p, w2)?);
            let (x, y) = (TreePoint::v(g1.clone()), TreePoint::v(g2.clone()));
            let (tree, flats) = distance_terms(&x, &y)?;
            println!("total = {}", total_distance(&x, &y)?);
            println!("tree = {tree}");
            println!("flats = {flats:?}");
            println!("coned = {}", coned_distance(&g1, &g2));
            let kappa = kappa.or(s.cfg.kappa).unwrap_or(2);
            if kappa <= 0 {
                bail!(UsageError("kappa must be positive".into()));
            }
            let ok = check_truncation_comparability(&x, &y, TreeLength::from_integer(kappa))?;
            println!("truncation_comparable = {ok}");
            return Ok(ok);
        }
        Command::Exp(cmd) => {
            let cache = s.cfg.cache_dir.clone();
            let reports = run_exp(cmd, &mut s, cache.as_deref())?;
            let out = s.cfg.out.clone();
            return emit(&reports, out.as_deref());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
