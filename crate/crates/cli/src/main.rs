//! `fqlab` — experiment runner for exact finite-field incidence and
//! distance verification.
//!
//! Every subcommand emits a list of claim reports (JSON by default, CSV via
//! `--format csv`) and exits 0 when all claims are satisfied or vacuous,
//! 1 when a claim with a true premise failed, and 2 on usage or config
//! errors (including size budgets). Randomized experiments derive entirely
//! from `--seed`, so a rerun with the same flags reproduces the same
//! reports byte for byte (runtime fields aside).

mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fqlab_core::beck::{self, DeterminedConfig};
use fqlab_core::bigraph::{
    mixing_bound_check, third_eigenvalue_estimate, verify_walk_identity, VerifyMode,
    WalkIdentitySpec, EIGEN_TOL, FULL_VERIFY_ENTRY_CAP, MIN_SAMPLED_COLUMNS,
};
use fqlab_core::distances::{self, NonDegenerateForm};
use fqlab_core::incidence::{
    build_point_variety_graph, count_incidences, cube_identity_coefficients, lift_w_to_v,
    sample_experiment, verify_incidence_bound, IncidenceMode,
};
use fqlab_core::pldist::{self, all_nondegenerate_hyperplanes, all_nondegenerate_lines, PairMode};
use fqlab_core::report::Timer;
use fqlab_core::varieties::{self, VarietyFamily};
use fqlab_core::{ClaimReport, Error, FieldCtx, Result, SeededRng, DEFAULT_BUDGET_BYTES};

#[derive(Parser)]
#[command(
    name = "fqlab",
    version,
    about = "verification experiments over small finite fields"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Field characteristic (odd prime)
    #[arg(long, global = true, default_value_t = 3)]
    p: u64,
    /// Extension degree, q = p^e
    #[arg(long, global = true, default_value_t = 1)]
    e: u32,
    /// Seed for all randomized choices
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Sample count for randomized experiments
    #[arg(long, global = true, default_value_t = 200)]
    samples: u64,
    /// Max bitset bytes for graph construction and candidate scans
    /// (FQLAB_BUDGET_BYTES overrides)
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_BYTES)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write reports here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (affects speed only)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    /// h = 0, b = (1, ..., 1): k-flats
    Flat,
    /// k = 1, h = sum of squares: spheres with arbitrary radii
    Spheres,
    /// shifted sum-of-squares h with one twisted exponent per row
    Twisted,
}

#[derive(Args)]
struct FamilyOpts {
    /// Base dimension d
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Codimension count k
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_enum, default_value_t = FamilyKind::Flat)]
    family: FamilyKind,
    /// Family description JSON file (overrides --family)
    #[arg(long)]
    family_file: Option<PathBuf>,
}

impl FamilyOpts {
    fn build(&self, ctx: &FieldCtx) -> Result<VarietyFamily> {
        if let Some(path) = &self.family_file {
            return inputs::load_family(ctx, path);
        }
        match self.family {
            FamilyKind::Flat => VarietyFamily::flats(ctx, self.d, self.k),
            FamilyKind::Spheres => {
                if self.k != 1 {
                    return Err(Error::InvalidParameter("sphere family has k = 1".into()));
                }
                VarietyFamily::spheres(ctx, self.d)
            }
            FamilyKind::Twisted => VarietyFamily::twisted(ctx, self.d, self.k),
        }
    }
}

#[derive(Args)]
struct PointSource {
    /// Point set file (CSV rows of coordinates, or JSON array of arrays)
    #[arg(long)]
    points: Option<PathBuf>,
    /// Sample this many distinct random points instead
    #[arg(long)]
    random_points: Option<u64>,
}

impl PointSource {
    /// Point indices in `F_q^dim`; `None` means the full space.
    fn indices(&self, ctx: &FieldCtx, dim: usize, rng: &mut SeededRng) -> Result<Option<Vec<u64>>> {
        let space = ctx.q().pow(dim as u32);
        if let Some(path) = &self.points {
            return Ok(Some(inputs::load_points(ctx, path, dim)?));
        }
        if let Some(n) = self.random_points {
            if n > space {
                return Err(Error::InvalidParameter(format!(
                    "cannot sample {n} distinct points from a space of {space}"
                )));
            }
            return Ok(Some(rng.sample_distinct(space, n)));
        }
        Ok(None)
    }

    fn indices_or_full(&self, ctx: &FieldCtx, dim: usize, rng: &mut SeededRng) -> Result<Vec<u64>> {
        Ok(self
            .indices(ctx, dim, rng)?
            .unwrap_or_else(|| (0..ctx.q().pow(dim as u32)).collect()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Field construction summary and the |SQ| = (q-1)/2 identity
    FieldInfo,
    /// Cube identity M^3 = q^{dk} M + (q^d - 1) q^{k(d-1)} K, plus degree,
    /// distinctness, and third-eigenvalue audits
    VerifyIdentity {
        #[command(flatten)]
        family: FamilyOpts,
        /// Force sampled-column verification with this many columns
        #[arg(long)]
        columns: Option<usize>,
    },
    /// PL graph structure, common-neighbor case table, and its cubic
    /// identity (entrywise)
    VerifyPlIdentity {
        /// Vertex-pair sample size for the case-table comparison when the
        /// all-pairs scan is too large
        #[arg(long)]
        pairs: Option<u64>,
    },
    /// Expander mixing inequality on seeded random subset pairs
    MixingCheck {
        #[command(flatten)]
        family: FamilyOpts,
    },
    /// Incidence bound |I - |P||V|/q^k| <= q^{dk/2} sqrt(|P||V|) on seeded
    /// random experiments, plus the existence threshold
    IncidenceBound {
        #[command(flatten)]
        family: FamilyOpts,
        /// Count incidences in the W form (points in F_q^d) instead of V
        #[arg(long)]
        w_form: bool,
        /// Also cross-check counts through the lifted V-form experiment
        #[arg(long)]
        check_lift: bool,
        /// Experiment config JSON {p, e, d, k, family, mode, samples, seed,
        /// sizes}; overrides the flags above
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Pinned-value theorem for a non-degenerate form
    Pinned {
        /// Base dimension d
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        /// Form description JSON (default: the distance form)
        #[arg(long)]
        form: Option<PathBuf>,
        #[command(flatten)]
        source: PointSource,
    },
    /// Two-set pinned-value check
    TwoSetPinned {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        form: Option<PathBuf>,
        #[command(flatten)]
        source: PointSource,
        /// Second point set (defaults to the first)
        #[arg(long)]
        points_q: Option<PathBuf>,
    },
    /// Distinct circles determined by a plane point set
    BeckCircles {
        #[command(flatten)]
        source: PointSource,
        /// Incidence threshold for "determined"
        #[arg(long, default_value_t = 3)]
        min_points: usize,
        /// Count circles whose incident points are all collinear too
        #[arg(long)]
        allow_collinear: bool,
    },
    /// Distinct spheres determined by a space point set
    BeckSpheres {
        #[command(flatten)]
        source: PointSource,
        #[arg(long, default_value_t = 4)]
        min_points: usize,
        /// Count spheres whose incident points are all coplanar too
        #[arg(long)]
        allow_coplanar: bool,
    },
    /// Distinct radii of the determined circles/spheres
    BeckRadii {
        /// 2 for circles, 3 for spheres
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[command(flatten)]
        source: PointSource,
        #[arg(long)]
        min_points: Option<usize>,
        /// Keep objects whose incident points are all collinear/coplanar
        #[arg(long)]
        allow_degenerate_witness: bool,
    },
    /// Point-line distance theorem over a point set and line set
    PlDistances {
        #[arg(long, default_value_t = 0.9)]
        c: f64,
        #[command(flatten)]
        source: PointSource,
        /// Line set file (default: all non-degenerate lines)
        #[arg(long)]
        lines: Option<PathBuf>,
    },
    /// Point-hyperplane distance theorem in F_q^d
    HyperplaneDistances {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 0.9)]
        c: f64,
        #[command(flatten)]
        source: PointSource,
        /// Hyperplane set file (default: all non-degenerate hyperplanes)
        #[arg(long)]
        hyperplanes: Option<PathBuf>,
    },
    /// Lines spanned by a point set: Beck count and degenerate ceiling
    SpannedLines {
        #[command(flatten)]
        source: PointSource,
    },
    /// Zero counts of seeded random polynomials against k q^{d-1}
    SchwartzZippel {
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Max total degree sampled (1..=degree)
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Solve for the sphere through four points
    SphereThrough {
        /// Four points "x,y,z;x,y,z;x,y,z;x,y,z"
        #[arg(long)]
        pts: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let budget = match std::env::var("FQLAB_BUDGET_BYTES") {
        Ok(v) => match v.parse::<u64>() {
            Ok(b) => b,
            Err(e) => {
                eprintln!("fqlab: bad FQLAB_BUDGET_BYTES: {e}");
                return ExitCode::from(2);
            }
        },
        Err(_) => cli.global.budget,
    };

    match run(&cli, budget) {
        Ok(reports) => {
            let rendered = match cli.global.format {
                Format::Json => render_json(&reports),
                Format::Csv => render_csv(&reports),
            };
            if let Some(path) = &cli.global.out {
                if let Err(e) = std::fs::write(path, rendered) {
                    eprintln!("fqlab: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{rendered}");
            }
            if reports.iter().any(ClaimReport::failed_non_vacuously) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("fqlab: {e}");
            ExitCode::from(2)
        }
    }
}

fn render_json(reports: &[ClaimReport]) -> String {
    let mut out = serde_json::to_string_pretty(reports).expect("reports serialize");
    out.push('\n');
    out
}

fn render_csv(reports: &[ClaimReport]) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    let mut out =
        String::from("claim_name,satisfied,premise_satisfied,lhs,rhs,seed,runtime_ms,params\n");
    for r in reports {
        let premise = r
            .premise_satisfied
            .map(|b| b.to_string())
            .unwrap_or_default();
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            quote(&r.claim_name),
            r.satisfied,
            premise,
            quote(&r.lhs),
            quote(&r.rhs),
            seed,
            r.runtime_ms,
            quote(&params.join(";")),
        ));
    }
    out
}

fn run(cli: &Cli, budget: u64) -> Result<Vec<ClaimReport>> {
    let g = &cli.global;
    let ctx = FieldCtx::new(g.p, g.e)?;
    match &cli.command {
        Command::FieldInfo => field_info(&ctx),
        Command::VerifyIdentity { family, columns } => {
            verify_identity(&ctx, family, *columns, budget, g.seed)
        }
        Command::VerifyPlIdentity { pairs } => verify_pl(&ctx, *pairs, budget, g.seed),
        Command::MixingCheck { family } => mixing_check(&ctx, family, g.samples, g.seed, budget),
        Command::IncidenceBound {
            family,
            w_form,
            check_lift,
            config,
        } => match config {
            Some(path) => {
                let cfg = inputs::ExperimentConfig::load(path)?;
                let ctx = cfg.field()?;
                let fam = cfg.family(&ctx)?;
                let mode = match cfg.mode.as_str() {
                    "V" => IncidenceMode::V,
                    "W" => IncidenceMode::W,
                    other => {
                        return Err(Error::Parse(format!("mode must be V or W, got {other:?}")))
                    }
                };
                run_incidence_bound(
                    &ctx,
                    &fam,
                    mode,
                    *check_lift,
                    cfg.samples.unwrap_or(g.samples),
                    cfg.seed.unwrap_or(g.seed),
                    cfg.sizes,
                )
            }
            None => {
                let fam = family.build(&ctx)?;
                let mode = if *w_form {
                    IncidenceMode::W
                } else {
                    IncidenceMode::V
                };
                run_incidence_bound(&ctx, &fam, mode, *check_lift, g.samples, g.seed, None)
            }
        },
        Command::Pinned { d, c, form, source } => {
            let mut rng = SeededRng::new(g.seed);
            let form = build_form(&ctx, *d, form.as_deref())?;
            let points = source.indices_or_full(&ctx, *d, &mut rng)?;
            Ok(vec![distances::pinned_theorem_check(
                &ctx, &form, &points, *c,
            )?
            .seed(g.seed)])
        }
        Command::TwoSetPinned {
            d,
            form,
            source,
            points_q,
        } => {
            let mut rng = SeededRng::new(g.seed);
            let form = build_form(&ctx, *d, form.as_deref())?;
            let p = source.indices_or_full(&ctx, *d, &mut rng)?;
            let q = match points_q {
                Some(path) => inputs::load_points(&ctx, path, *d)?,
                None => p.clone(),
            };
            Ok(vec![
                distances::two_set_pinned_check(&ctx, &form, &p, &q)?.seed(g.seed)
            ])
        }
        Command::BeckCircles {
            source,
            min_points,
            allow_collinear,
        } => beck_count(
            &ctx,
            2,
            source,
            DeterminedConfig {
                min_points: *min_points,
                require_witness: !allow_collinear,
            },
            budget,
            g.seed,
        ),
        Command::BeckSpheres {
            source,
            min_points,
            allow_coplanar,
        } => beck_count(
            &ctx,
            3,
            source,
            DeterminedConfig {
                min_points: *min_points,
                require_witness: !allow_coplanar,
            },
            budget,
            g.seed,
        ),
        Command::BeckRadii {
            dim,
            source,
            min_points,
            allow_degenerate_witness,
        } => {
            if *dim != 2 && *dim != 3 {
                return Err(Error::InvalidParameter("--dim must be 2 or 3".into()));
            }
            let defaults = if *dim == 2 {
                DeterminedConfig::circles()
            } else {
                DeterminedConfig::spheres()
            };
            beck_radii(
                &ctx,
                *dim,
                source,
                DeterminedConfig {
                    min_points: min_points.unwrap_or(defaults.min_points),
                    require_witness: !allow_degenerate_witness,
                },
                budget,
                g.seed,
            )
        }
        Command::PlDistances { c, source, lines } => {
            let mut rng = SeededRng::new(g.seed);
            let points = source.indices_or_full(&ctx, 2, &mut rng)?;
            let line_set = match lines {
                Some(path) => inputs::load_lines(&ctx, path)?,
                None => all_nondegenerate_lines(&ctx),
            };
            Ok(vec![pldist::pl_distance_theorem_check(
                &ctx, &points, &line_set, *c,
            )?
            .seed(g.seed)])
        }
        Command::HyperplaneDistances {
            d,
            c,
            source,
            hyperplanes,
        } => {
            let mut rng = SeededRng::new(g.seed);
            let points = source.indices_or_full(&ctx, *d, &mut rng)?;
            let planes = match hyperplanes {
                Some(path) => inputs::load_hyperplanes(&ctx, path, *d)?,
                None => all_nondegenerate_hyperplanes(&ctx, *d),
            };
            Ok(vec![pldist::hyperplane_distance_theorem_check(
                &ctx, *d, &points, &planes, *c,
            )?
            .seed(g.seed)])
        }
        Command::SpannedLines { source } => {
            let mut rng = SeededRng::new(g.seed);
            let points = source.indices_or_full(&ctx, 2, &mut rng)?;
            let reports = pldist::spanned_lines_check(&ctx, &points)?;
            Ok(reports.into_iter().map(|r| r.seed(g.seed)).collect())
        }
        Command::SchwartzZippel { d, degree } => {
            schwartz_zippel(&ctx, *d, *degree, g.samples, g.seed)
        }
        Command::SphereThrough { pts } => sphere_through(&ctx, pts),
    }
}

fn field_info(ctx: &FieldCtx) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let sq = ctx.nonzero_squares().len() as u64;
    let modulus: Vec<String> = ctx.modulus().iter().map(|c| c.to_string()).collect();
    Ok(vec![timer.stamp(
        ClaimReport::new("field_info")
            .param("p", ctx.p())
            .param("e", ctx.e())
            .param("q", ctx.q())
            .param("modulus_low_to_high", modulus.join(","))
            .param("minus_one_is_square", ctx.minus_one_is_square())
            .param("smallest_nonsquare", ctx.smallest_nonsquare().index())
            .lhs(sq)
            .rhs((ctx.q() - 1) / 2)
            .satisfied(sq == (ctx.q() - 1) / 2),
    )])
}

fn verify_identity(
    ctx: &FieldCtx,
    family_opts: &FamilyOpts,
    columns: Option<usize>,
    budget: u64,
    seed: u64,
) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let family = family_opts.build(ctx)?;
    let graph = build_point_variety_graph(ctx, &family, budget)?;
    let (deg_a, deg_b) = graph.degrees()?;
    let want_a = ctx.q().pow((family.d() * family.k()) as u32);
    let want_b = family.base_point_count(ctx);
    let mut reports = vec![timer.stamp(
        ClaimReport::new("graph_degrees")
            .param("q", ctx.q())
            .param("d", family.d())
            .param("k", family.k())
            .param("n_a", graph.n_a())
            .param("n_b", graph.n_b())
            .lhs(format!("({deg_a},{deg_b})"))
            .rhs(format!("({want_a},{want_b})"))
            .satisfied(deg_a == want_a && deg_b == want_b),
    )];

    let (alpha, beta) = cube_identity_coefficients(ctx, &family);
    let spec = WalkIdentitySpec {
        alpha,
        beta,
        gamma: 0,
        aux: None,
    };
    let entries = graph.n_a() as u64 * graph.n_b() as u64;
    let mode = match columns {
        Some(cols) => VerifyMode::Sampled {
            columns: cols.max(MIN_SAMPLED_COLUMNS),
            seed,
        },
        None if entries <= FULL_VERIFY_ENTRY_CAP => VerifyMode::Full,
        None => VerifyMode::Sampled {
            columns: MIN_SAMPLED_COLUMNS,
            seed,
        },
    };
    reports.push(verify_walk_identity(&graph, &spec, mode)?);

    if family.tuple_count(ctx) <= varieties::DISTINCTNESS_CAP {
        let dtimer = Timer::start();
        let distinct =
            varieties::distinct_varieties_check(ctx, &family, varieties::DISTINCTNESS_CAP)?;
        reports.push(
            dtimer.stamp(
                ClaimReport::new("varieties_distinct")
                    .param("tuples", family.tuple_count(ctx))
                    .lhs(distinct)
                    .rhs(true)
                    .satisfied(distinct),
            ),
        );
    }

    let etimer = Timer::start();
    let estimate = third_eigenvalue_estimate(&graph, EIGEN_TOL)?;
    let bound = (alpha as f64).sqrt();
    reports.push(
        etimer.stamp(
            ClaimReport::new("lambda3_bound")
                .param("iterations", estimate.iterations)
                .param("suspect", estimate.suspect)
                .lhs(estimate.value)
                .rhs(bound * (1.0 + EIGEN_TOL))
                .satisfied(!estimate.suspect && estimate.value <= bound * (1.0 + EIGEN_TOL)),
        ),
    );
    Ok(reports)
}

fn verify_pl(
    ctx: &FieldCtx,
    pairs: Option<u64>,
    budget: u64,
    seed: u64,
) -> Result<Vec<ClaimReport>> {
    let mut reports = pldist::pl_structure_reports(ctx, budget)?;
    let quad_count = ctx.q() * pldist::s_set_count(ctx);
    let mode = match pairs {
        Some(n) => PairMode::Sampled { pairs: n, seed },
        // all-pairs is quadratic in |A| = q |S|; sample beyond ~200 vertices
        None if quad_count <= 200 => PairMode::AllPairs,
        None => PairMode::Sampled {
            pairs: 10_000,
            seed,
        },
    };
    reports.push(pldist::case_table_comparison(ctx, mode)?);
    reports.push(pldist::corrected_case_comparison(ctx, mode)?);
    reports.push(pldist::verify_pl_identity(ctx, budget)?);
    reports.push(pldist::pl_lambda3_check(ctx, EIGEN_TOL, budget)?);
    Ok(reports)
}

fn mixing_check(
    ctx: &FieldCtx,
    family_opts: &FamilyOpts,
    samples: u64,
    seed: u64,
    budget: u64,
) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let family = family_opts.build(ctx)?;
    let graph = build_point_variety_graph(ctx, &family, budget)?;
    let lambda3 = (ctx.q() as f64)
        .powi((family.d() * family.k()) as i32)
        .sqrt();
    let mut rng = SeededRng::new(seed);
    let mut violations_basic = 0u64;
    let mut violations_refined = 0u64;
    for _ in 0..samples {
        let x = rng.nonempty_subset(graph.n_a() as u64);
        let y = rng.nonempty_subset(graph.n_b() as u64);
        let pair = mixing_bound_check(&graph, &x, &y, lambda3)?;
        violations_basic += !pair[0].satisfied as u64;
        violations_refined += !pair[1].satisfied as u64;
    }
    let base = |name: &str, violations: u64| {
        timer.stamp(
            ClaimReport::new(name)
                .param("q", ctx.q())
                .param("d", family.d())
                .param("k", family.k())
                .param("samples", samples)
                .param("lambda3", lambda3)
                .lhs(violations)
                .rhs(0)
                .seed(seed)
                .satisfied(violations == 0),
        )
    };
    Ok(vec![
        base("mixing_violations", violations_basic),
        base("mixing_refined_violations", violations_refined),
    ])
}

fn run_incidence_bound(
    ctx: &FieldCtx,
    family: &VarietyFamily,
    mode: IncidenceMode,
    check_lift: bool,
    samples: u64,
    seed: u64,
    sizes: Option<(u64, u64)>,
) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let point_space = match mode {
        IncidenceMode::V => family.ambient_point_count(ctx),
        IncidenceMode::W => family.base_point_count(ctx),
    };
    let tuple_space = family.tuple_count(ctx);
    if let Some((p_size, v_size)) = sizes {
        if p_size > point_space || v_size > tuple_space {
            return Err(Error::InvalidParameter(format!(
                "sizes ({p_size}, {v_size}) exceed spaces ({point_space}, {tuple_space})"
            )));
        }
    }
    let mut rng = SeededRng::new(seed);
    let mut bound_violations = 0u64;
    let mut existence_violations = 0u64;
    let mut existence_active = 0u64;
    let mut lift_mismatches = 0u64;
    for _ in 0..samples {
        let exp = match sizes {
            None => sample_experiment(ctx, family, mode, &mut rng),
            Some((p_size, v_size)) => fqlab_core::incidence::IncidenceExperiment {
                mode,
                points: rng.sample_distinct(point_space, p_size),
                tuples: rng.sample_distinct(tuple_space, v_size),
            },
        };
        let reports = verify_incidence_bound(ctx, family, &exp, Some(seed))?;
        bound_violations += !reports[0].satisfied as u64;
        if reports[1].premise_satisfied == Some(true) {
            existence_active += 1;
            existence_violations += !reports[1].satisfied as u64;
        }
        if check_lift && mode == IncidenceMode::W {
            let lifted = lift_w_to_v(ctx, family, &exp)?;
            if count_incidences(ctx, family, &exp)? != count_incidences(ctx, family, &lifted)? {
                lift_mismatches += 1;
            }
        }
    }
    let mode_name = match mode {
        IncidenceMode::V => "V",
        IncidenceMode::W => "W",
    };
    let base = |name: &str, violations: u64| {
        timer.stamp(
            ClaimReport::new(name)
                .param("q", ctx.q())
                .param("d", family.d())
                .param("k", family.k())
                .param("mode", mode_name)
                .param("samples", samples)
                .lhs(violations)
                .rhs(0)
                .seed(seed)
                .satisfied(violations == 0),
        )
    };
    let mut reports = vec![
        base("incidence_bound_violations", bound_violations),
        base("incidence_existence_violations", existence_violations)
            .param("premise_active_samples", existence_active),
    ];
    if check_lift && mode == IncidenceMode::W {
        reports.push(base("lift_count_mismatches", lift_mismatches));
    }
    Ok(reports)
}

fn build_form(
    ctx: &FieldCtx,
    d: usize,
    path: Option<&std::path::Path>,
) -> Result<NonDegenerateForm> {
    match path {
        Some(p) => inputs::load_form(ctx, p),
        None => NonDegenerateForm::distance(ctx, d),
    }
}

fn beck_points(
    ctx: &FieldCtx,
    dim: usize,
    source: &PointSource,
    seed: u64,
) -> Result<Vec<Vec<fqlab_core::FieldElem>>> {
    if let Some(path) = &source.points {
        return inputs::load_coordinate_points(ctx, path, dim);
    }
    if let Some(n) = source.random_points {
        let mut rng = SeededRng::new(seed);
        let space = ctx.q().pow(dim as u32);
        if n > space {
            return Err(Error::InvalidParameter(format!(
                "cannot sample {n} distinct points from a space of {space}"
            )));
        }
        return Ok(rng
            .sample_distinct(space, n)
            .into_iter()
            .map(|i| varieties::index_point(ctx, i, dim))
            .collect());
    }
    Err(Error::InvalidParameter(
        "this command needs --points FILE or --random-points N".into(),
    ))
}

fn beck_count(
    ctx: &FieldCtx,
    dim: usize,
    source: &PointSource,
    cfg: DeterminedConfig,
    budget: u64,
    seed: u64,
) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let points = beck_points(ctx, dim, source, seed)?;
    let out = beck::distinct_objects(ctx, dim, &points, cfg, budget)?;
    let q = ctx.q() as f64;
    let (name, threshold, premise) = if dim == 2 {
        (
            "beck_circles",
            4.0 * q.powi(3) / 9.0,
            points.len() as f64 >= 5.0 * q,
        )
    } else {
        (
            "beck_spheres",
            q.powi(4) / 9.0,
            points.len() as f64 >= 8.0 * q * q,
        )
    };
    Ok(vec![timer.stamp(
        ClaimReport::new(name)
            .param("q", ctx.q())
            .param("points", points.len())
            .param("min_points", cfg.min_points)
            .param("require_witness", cfg.require_witness)
            .param("radii", out.radii)
            .lhs(out.objects)
            .rhs(threshold)
            .seed(seed)
            .premise(premise)
            .satisfied(!premise || out.objects as f64 >= threshold),
    )])
}

fn beck_radii(
    ctx: &FieldCtx,
    dim: usize,
    source: &PointSource,
    cfg: DeterminedConfig,
    budget: u64,
    seed: u64,
) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let points = beck_points(ctx, dim, source, seed)?;
    let out = beck::distinct_objects(ctx, dim, &points, cfg, budget)?;
    let q = ctx.q() as f64;
    let (threshold, premise) = if dim == 2 {
        (4.0 * q / 9.0, points.len() as f64 >= 5.0 * q)
    } else {
        (q / 9.0, points.len() as f64 >= 8.0 * q * q)
    };
    Ok(vec![timer.stamp(
        ClaimReport::new("beck_radii")
            .param("q", ctx.q())
            .param("dim", dim)
            .param("points", points.len())
            .param("objects", out.objects)
            .lhs(out.radii)
            .rhs(threshold)
            .seed(seed)
            .premise(premise)
            .satisfied(!premise || out.radii as f64 >= threshold),
    )])
}

fn schwartz_zippel(
    ctx: &FieldCtx,
    d: usize,
    max_degree: u32,
    samples: u64,
    seed: u64,
) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    if max_degree == 0 {
        return Err(Error::InvalidParameter("--degree must be >= 1".into()));
    }
    let mut rng = SeededRng::new(seed);
    let mut violations = 0u64;
    let mut max_ratio = 0.0f64;
    for _ in 0..samples {
        let degree = 1 + rng.below(max_degree as u64) as u32;
        let table = varieties::random_poly_table(ctx, d, degree, &mut rng);
        let out = varieties::schwartz_zippel_count(ctx, d, &table, degree)?;
        violations += (out.zeros > out.bound) as u64;
        max_ratio = max_ratio.max(out.zeros as f64 / out.bound as f64);
    }
    Ok(vec![timer.stamp(
        ClaimReport::new("schwartz_zippel_violations")
            .param("q", ctx.q())
            .param("d", d)
            .param("max_degree", max_degree)
            .param("samples", samples)
            .param("max_zero_ratio", max_ratio)
            .lhs(violations)
            .rhs(0)
            .seed(seed)
            .satisfied(violations == 0),
    )])
}

fn sphere_through(ctx: &FieldCtx, pts: &str) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let points = inputs::parse_inline_points(ctx, pts, 3)?;
    if points.len() != 4 {
        return Err(Error::InvalidParameter(format!(
            "sphere-through needs exactly 4 points, got {}",
            points.len()
        )));
    }
    let sphere = beck::sphere_through(ctx, &points[0], &points[1], &points[2], &points[3])?;
    let on = points.iter().filter(|p| sphere.contains(ctx, p)).count();
    let center: Vec<String> = sphere
        .center
        .iter()
        .map(|c| c.index().to_string())
        .collect();
    Ok(vec![timer.stamp(
        ClaimReport::new("sphere_through")
            .param("q", ctx.q())
            .param("center", format!("({})", center.join(",")))
            .param("r", sphere.r.index())
            .lhs(on)
            .rhs(4)
            .satisfied(on == 4),
    )])
}
