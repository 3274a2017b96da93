//! The `dhb` command line, callable in-process through [`run_with`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dhb::atlas::{basic_map, validate_atlas, BasicMapId};
use dhb::certify::{certify_cover, certify_dhb, generation_oracle, min_degree_search, SearchBounds};
use dhb::compose::{eval_str, ComposeError};
use dhb::construct::{build_pair, ConstructionPlan, Variant, S3_DEGREES, SMALL_DEGREES};
use dhb::frobenius::{bundled_source, CharacterTable};
use dhb::linlift::{least_primitive_root, lift_pair, lift_plan, LiftReport};
use dhb::report::{ComposeSummary, FrobeniusSummary, Payload, Report};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "dhb", version, about = "Build and certify Hurwitz generating pairs of alternating groups")]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for commands that handle several plans (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The basic maps A to N.
    Atlas {
        #[command(subcommand)]
        action: AtlasCmd,
    },
    /// Evaluate a composition expression such as "L(2)M".
    Compose {
        /// Expression over the letters A to N, e.g. "4G(1)A" or "F(2)E(1)G(1)H".
        expr: String,
    },
    /// Build the pair W_1, W_2 of a plan.
    Construct(PlanArgs),
    /// Certify a plan, or a whole family of plans.
    Certify {
        #[command(flatten)]
        plan: PlanArgs,
        /// Certify the least-degree plan of every residue class.
        #[arg(long, conflicts_with_all = ["r", "s", "variant", "small", "s3"])]
        all_minimal: bool,
        /// Certify every small-degree plan.
        #[arg(long, conflicts_with_all = ["r", "s", "variant", "s3"])]
        small: bool,
        /// Certify every s = 3 shortcut plan.
        #[arg(long, conflicts_with_all = ["r", "s", "variant"])]
        s3: bool,
        /// Also compute the group order by a stabilizer chain up to this degree.
        #[arg(long)]
        oracle_cap: Option<usize>,
    },
    /// Adjust a plan so that both triples lift to the double cover.
    Cover(PlanArgs),
    /// Least degree admitting two signatures with non-zero fixed point differences.
    MinDegree {
        /// Bounds as G,ALPHA,BETA,GAMMA.
        #[arg(long, value_parser = parse_bounds)]
        bounds: Option<SearchBounds>,
    },
    /// Structure constant of three classes from a character table.
    Frobenius {
        /// Character table file.
        #[arg(long, required_unless_present = "bundled", conflicts_with = "bundled")]
        table: Option<PathBuf>,
        /// Name of a bundled table: S3, S4, A4, A5 or L2(13).
        #[arg(long)]
        bundled: Option<String>,
        /// Three class names, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        classes: Vec<String>,
    },
    /// Lift a pair to matrices over the field with P elements.
    Lift {
        /// Prime field size.
        #[arg(long)]
        p: u64,
        /// Primitive root mod P; defaults to the least one.
        #[arg(long)]
        t1: Option<u64>,
        #[command(flatten)]
        plan: PlanArgs,
        /// Report holding the pair to lift.
        #[arg(long, requires = "points", conflicts_with_all = ["r", "s", "variant"])]
        input: Option<PathBuf>,
        /// Lift points a,b,a',b' for --input.
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<u32>>,
    },
    /// Re-verify a report document offline.
    Verify {
        /// JSON report, or array of reports, written by another subcommand.
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum AtlasCmd {
    /// Compare every basic map with its stored invariants.
    Validate,
    /// Print a basic map in the map file format.
    Export { id: BasicMapId },
}

#[derive(Args, Clone)]
struct PlanArgs {
    /// Residue class of the degree mod 14.
    #[arg(long)]
    r: Option<u8>,
    /// Stock parameter; 0 selects the small-degree recipe.
    #[arg(long)]
    s: Option<u32>,
    /// standard, shifted, r1-special, r8-special, small-n or s3-shortcut.
    #[arg(long)]
    variant: Option<Variant>,
}

fn parse_bounds(s: &str) -> Result<SearchBounds, String> {
    let v: Vec<u32> =
        s.split(',').map(|t| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"))).collect::<Result<_, _>>()?;
    match v[..] {
        [g_max, alpha_max, beta_max, gamma_max] => Ok(SearchBounds { g_max, alpha_max, beta_max, gamma_max }),
        _ => Err("expected four comma separated bounds".into()),
    }
}

struct UsageError(String);

type Outcome = Result<Vec<Report>, UsageError>;

impl PlanArgs {
    fn plan(&self) -> Result<ConstructionPlan, String> {
        let r = self.r.ok_or("--r is required")?;
        let plan = match (self.s, self.variant) {
            (Some(s), Some(v)) => ConstructionPlan::new(r, s, v),
            (Some(0), None) => ConstructionPlan::small(r),
            (Some(s), None) => ConstructionPlan::for_class(r, s),
            (None, Some(v)) => return Err(format!("--variant {v} needs --s")),
            (None, None) => ConstructionPlan::minimal(r),
        };
        plan.map_err(|e| e.to_string())
    }

    fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        if let Some(r) = self.r {
            m.insert("r".into(), r.to_string());
        }
        if let Some(s) = self.s {
            m.insert("s".into(), s.to_string());
        }
        if let Some(v) = self.variant {
            m.insert("variant".into(), v.to_string());
        }
        m
    }
}

fn failure(command: &str, input: BTreeMap<String, String>, error: String) -> Report {
    Report::new(command, input, false, vec![error.clone()], Payload::Failure { error })
}

fn plan_echo(plan: &ConstructionPlan) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("r".to_string(), plan.r.to_string()),
        ("s".to_string(), plan.s.to_string()),
        ("variant".to_string(), plan.variant.to_string()),
    ])
}

fn certify_one(plan: &ConstructionPlan, oracle_cap: Option<usize>) -> Report {
    let input = plan_echo(plan);
    match certify_dhb(plan) {
        Ok(cert) => {
            let oracle = oracle_cap.and_then(|cap| {
                let a = generation_oracle(&cert.pair.w1, cap)?;
                let b = generation_oracle(&cert.pair.w2, cap)?;
                Some(a && b)
            });
            let mut summary = vec![format!(
                "n = {}, p = {}: both triples generate A_n and satisfy the Beauville condition",
                cert.degree, cert.prime
            )];
            if let Some(o) = oracle {
                summary.push(format!("stabilizer chain order check: {}", if o { "n!/2" } else { "MISMATCH" }));
            }
            let passed = oracle != Some(false);
            Report::new(
                "certify",
                input,
                passed,
                summary,
                Payload::Certificate { certificate: cert, group_order_oracle: oracle },
            )
        }
        Err(e) => failure("certify", input, e.to_string()),
    }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool")
}

fn run(cli: &Cli) -> Outcome {
    let usage = |m: String| UsageError(m);
    Ok(match &cli.cmd {
        Cmd::Atlas { action: AtlasCmd::Validate } => {
            let report = validate_atlas();
            let mut summary: Vec<String> = report
                .failures()
                .iter()
                .map(|(id, field)| format!("map {id}: {field} differs from the stored value"))
                .collect();
            summary.push(format!("monodromy group of A has order {}", report.a_group_order));
            vec![Report::new("atlas validate", BTreeMap::new(), report.passed(), summary, Payload::Atlas { report })]
        }
        Cmd::Atlas { action: AtlasCmd::Export { .. } } => unreachable!("handled before reports"),
        Cmd::Compose { expr } => {
            let input = BTreeMap::from([("expression".to_string(), expr.clone())]);
            match eval_str(expr) {
                Ok(map) => {
                    let result = ComposeSummary {
                        expression: expr.clone(),
                        degree: map.n(),
                        genus: map.genus().ok(),
                        fixed_points: map.fixed_point_vector(),
                        handles: map.handle_counts(),
                        w_cycles: map.w_cycles().cycle_type().lengths().to_vec(),
                        primes: map.prime_set().into_iter().collect(),
                        map,
                    };
                    let summary = vec![format!("degree {}, w cycle type {:?}", result.degree, result.w_cycles)];
                    vec![Report::new("compose", input, true, summary, Payload::Compose { result })]
                }
                Err(e @ ComposeError::Parse { .. }) => return Err(usage(e.to_string())),
                Err(e) => vec![failure("compose", input, e.to_string())],
            }
        }
        Cmd::Construct(args) => {
            let plan = args.plan().map_err(usage)?;
            match build_pair(&plan) {
                Ok(b) => {
                    let summary = vec![format!("n = {}, certifying prime {}", b.pair.degree(), b.prime)];
                    let payload = Payload::Construct {
                        plan,
                        prime: b.prime,
                        degree: b.pair.degree(),
                        pair: b.pair,
                        joins: b.base.joins,
                    };
                    vec![Report::new("construct", plan_echo(&plan), true, summary, payload)]
                }
                Err(e) => vec![failure("construct", args.echo(), e.to_string())],
            }
        }
        Cmd::Certify { plan, all_minimal, small, s3, oracle_cap } => {
            let plans: Vec<Result<ConstructionPlan, String>> = if *all_minimal {
                (0..14).map(|r| ConstructionPlan::minimal(r).map_err(|e| e.to_string())).collect()
            } else if *small {
                SMALL_DEGREES.iter().map(|&(r, _)| ConstructionPlan::small(r).map_err(|e| e.to_string())).collect()
            } else if *s3 {
                S3_DEGREES.iter().map(|&(r, _)| ConstructionPlan::s3_shortcut(r).map_err(|e| e.to_string())).collect()
            } else {
                if plan.r.is_none() {
                    return Err(usage("give --r, --all-minimal, --small or --s3".into()));
                }
                vec![Ok(plan.plan().map_err(usage)?)]
            };
            pool(cli.jobs).install(|| {
                plans
                    .par_iter()
                    .map(|p| match p {
                        Ok(p) => certify_one(p, *oracle_cap),
                        Err(e) => failure("certify", BTreeMap::new(), e.clone()),
                    })
                    .collect()
            })
        }
        Cmd::Cover(args) => {
            let plan = args.plan().map_err(usage)?;
            match certify_cover(&plan) {
                Ok(c) => {
                    let summary = vec![format!(
                        "n = {}: tau(x_i) = {:?}, v-difference {:?} via {:?}",
                        c.dhb.degree, c.tau, c.v_difference, c.branch
                    )];
                    vec![Report::new("cover", plan_echo(&plan), true, summary, Payload::Cover { certificate: c })]
                }
                Err(e) => vec![failure("cover", plan_echo(&plan), e.to_string())],
            }
        }
        Cmd::MinDegree { bounds } => {
            let bounds = bounds.unwrap_or_default();
            let input = BTreeMap::from([(
                "bounds".to_string(),
                format!("{},{},{},{}", bounds.g_max, bounds.alpha_max, bounds.beta_max, bounds.gamma_max),
            )]);
            match min_degree_search(bounds) {
                Ok(result) => {
                    let mut summary = vec![format!("least degree {}", result.n)];
                    summary.extend(result.witnesses.iter().map(|(a, b)| format!("{a} and {b}")));
                    vec![Report::new("min-degree", input, true, summary, Payload::MinDegree { result })]
                }
                Err(e) => vec![failure("min-degree", input, e.to_string())],
            }
        }
        Cmd::Frobenius { table, bundled, classes } => {
            let (text, source) = match (table, bundled) {
                (Some(path), _) => (
                    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?,
                    path.display().to_string(),
                ),
                (None, Some(name)) => (
                    bundled_source(name).ok_or_else(|| usage(format!("no bundled table {name}")))?.to_string(),
                    format!("bundled:{name}"),
                ),
                (None, None) => return Err(usage("give --table or --bundled".into())),
            };
            if classes.len() != 3 {
                return Err(usage(format!("--classes needs three names, got {}", classes.len())));
            }
            let t = CharacterTable::parse(&text).map_err(|e| usage(e.to_string()))?;
            let input = BTreeMap::from([("table".to_string(), source), ("classes".to_string(), classes.join(","))]);
            let (x, y, z) = (&classes[0], &classes[1], &classes[2]);
            match t.frobenius_count(x, y, z).and_then(|n| Ok((n, t.class_sum_coefficient(x, y, z)?))) {
                Ok((n, c)) => {
                    let summary = vec![format!("{}: n({x}, {y}, {z}) = {n}, class sum coefficient {c}", t.name)];
                    let result = FrobeniusSummary {
                        table: text.clone(),
                        classes: [x.clone(), y.clone(), z.clone()],
                        count: n.to_string(),
                        coefficient: c.to_string(),
                    };
                    vec![Report::new("frobenius", input, true, summary, Payload::Frobenius { result })]
                }
                Err(e) => return Err(usage(e.to_string())),
            }
        }
        Cmd::Lift { p, t1, plan, input, points } => {
            let t1 = match t1 {
                Some(t) => *t,
                None => least_primitive_root(*p).ok_or_else(|| usage(format!("{p} is not prime")))?,
            };
            let mut echo = plan.echo();
            echo.insert("p".into(), p.to_string());
            echo.insert("t1".into(), t1.to_string());
            let result: Result<LiftReport, String> = match (input, points) {
                (Some(path), Some(pts)) => {
                    echo.insert("input".into(), path.display().to_string());
                    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    let reports = Report::many_from_json(&text).map_err(|e| usage(e.to_string()))?;
                    let (plan, pair) = reports
                        .into_iter()
                        .find_map(|r| match r.payload {
                            Payload::Construct { plan, pair, .. } => Some((plan, pair)),
                            Payload::Certificate { certificate, .. } => Some((certificate.plan, certificate.pair)),
                            Payload::Lift { report } => Some((report.plan, report.pair)),
                            _ => None,
                        })
                        .ok_or_else(|| usage("the input holds no map pair".into()))?;
                    let pts: [u32; 4] = pts
                        .as_slice()
                        .try_into()
                        .map_err(|_| usage(format!("--points needs four points, got {}", pts.len())))?;
                    lift_pair(&pair, pts, *p, t1)
                        .map(|(_, _, dims)| LiftReport {
                            plan,
                            degree: pair.degree(),
                            p: *p,
                            t1,
                            points: pts,
                            relations: dhb::linlift::VERIFIED_RELATIONS.iter().map(|s| s.to_string()).collect(),
                            dims,
                            pair,
                            generation_certified: false,
                        })
                        .map_err(|e| e.to_string())
                }
                _ => lift_plan(&plan.plan().map_err(usage)?, *p, t1).map_err(|e| e.to_string()),
            };
            match result {
                Ok(report) => {
                    let summary = vec![
                        format!(
                            "n = {}, p = {}, t1 = {}: relations and determinants verified",
                            report.degree, report.p, report.t1
                        ),
                        format!(
                            "fixed-space dimensions {:?}; generation of SL_n(p) not certified",
                            report.dims.positions.iter().map(|d| d.dims).collect::<Vec<_>>()
                        ),
                    ];
                    vec![Report::new("lift", echo, true, summary, Payload::Lift { report })]
                }
                Err(e) => vec![failure("lift", echo, e)],
            }
        }
        Cmd::Verify { file } => {
            let text = fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let reports = Report::many_from_json(&text).map_err(|e| usage(e.to_string()))?;
            let input = BTreeMap::from([("file".to_string(), file.display().to_string())]);
            let mut failed = Vec::new();
            for (i, r) in reports.iter().enumerate() {
                if let Err(e) = r.verify() {
                    failed.push(format!("document {i}: {e}"));
                } else if !r.passed {
                    failed.push(format!("document {i}: records a failed check"));
                }
            }
            let passed = failed.is_empty();
            let mut summary = vec![format!("{} document(s) checked", reports.len())];
            summary.extend(failed.clone());
            let payload = Payload::Verification { checked: reports.len(), failures: failed };
            vec![Report::new("verify", input, passed, summary, payload)]
        }
    })
}

fn emit(cli: &Cli, stdout: &mut dyn Write, text: &str) -> Result<(), UsageError> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display()))),
        None => match writeln!(stdout, "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(UsageError(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

/// Runs the `dhb` command line on `args` (program name first) and returns
/// the process exit status: 0 on success, 1 when a report fails, 2 on
/// usage errors.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{text}") } else { write!(stdout, "{text}") };
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    if let Cmd::Atlas { action: AtlasCmd::Export { id } } = &cli.cmd {
        let text = basic_map(*id).to_map_file();
        return match emit(&cli, stdout, text.trim_end()) {
            Ok(()) => 0,
            Err(UsageError(m)) => {
                let _ = writeln!(stderr, "error: {m}");
                2
            }
        };
    }
    let reports = match run(&cli) {
        Ok(r) => r,
        Err(UsageError(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            return 2;
        }
    };
    let text = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(&reports).expect("reports always serialize")
    };
    if let Err(UsageError(m)) = emit(&cli, stdout, &text) {
        let _ = writeln!(stderr, "error: {m}");
        return 2;
    }
    for r in &reports {
        for line in &r.summary {
            let _ = writeln!(stderr, "{}: {line}", r.command);
        }
    }
    u8::from(!reports.iter().all(|r| r.passed))
}
