//! The `cluster-workbench` command line.
//!
//! [`run`] parses arguments, executes one engine operation and writes JSON
//! (`--json`) or text. Exit codes: 0 success, 1 domain error, 2 integrity
//! error, 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cluster_core::cc::{caldero_chapoton, d4_three_lines, interval_module, QuiverRep};
use cluster_core::exchange::{all_cluster_variables, denominator_vector, exchange_graph, ExchangeOptions};
use cluster_core::knitting::{knit_one_period, DynkinType};
use cluster_core::periodicity::{parse_pair, phi_order_check, verify_restricted_periodicity, Mode, PeriodicityOptions};
use cluster_core::quiver::{classify, mutation_class, ClassOptions, ClassSize, Classification, QuiverJson, DEFAULT_CLASS_CAP};
use cluster_core::ydyn::YSeed;
use cluster_core::{Error, IceQuiver};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INTEGRITY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "cluster-workbench", version, about = "Exact computations with cluster algebras from quivers")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumerations (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate a quiver at a sequence of vertices.
    Mutate {
        #[arg(long)]
        file: PathBuf,
        /// 1-based vertex; repeat for a sequence.
        #[arg(long = "at", required = true)]
        at: Vec<usize>,
    },
    /// Enumerate the mutation class up to isomorphism.
    Class {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        cap: Cap,
        /// Report how many members contain a double arrow.
        #[arg(long)]
        count_double_arrows: bool,
        /// Print this many class members.
        #[arg(long, default_value_t = 0)]
        representatives: usize,
    },
    /// Decide finite type and name the Dynkin diagram.
    Classify {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Enumerate the exchange graph.
    Seeds {
        #[command(flatten)]
        input: QuiverInput,
        #[command(flatten)]
        cap: Cap,
    },
    /// List all cluster variables.
    Variables {
        #[command(flatten)]
        input: QuiverInput,
        #[command(flatten)]
        cap: Cap,
    },
    /// Knit one period of cluster variables on a Dynkin quiver.
    Knit {
        #[command(flatten)]
        input: QuiverInput,
    },
    /// Y-seed operations.
    Yseed {
        #[command(subcommand)]
        action: YseedAction,
    },
    /// Verify periodicity of the restricted Y-pattern of a pair of Dynkin types.
    Periodicity {
        /// Two simply laced types, e.g. `A3,A2`.
        #[arg(long)]
        pair: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, default_value_t = 3)]
        primes: usize,
        #[arg(long, default_value_t = 2)]
        points: usize,
        /// Also check that phi^(h+h') is the identity.
        #[arg(long)]
        phi: bool,
    },
    /// Caldero-Chapoton function of a representation.
    Cc {
        /// Representation JSON `{quiver, dims, mats}`.
        #[arg(long, conflicts_with_all = ["interval", "three_lines"])]
        file: Option<PathBuf>,
        /// Interval module `p,q` on the linear `A_n` given by `--dynkin`.
        #[arg(long, requires = "dynkin")]
        interval: Option<String>,
        #[arg(long)]
        dynkin: Option<String>,
        /// Three lines in general position in a plane (type D4).
        #[arg(long)]
        three_lines: bool,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Allowed CORS origin (default: any).
        #[arg(long)]
        origin: Option<String>,
        /// Requests running longer than this return a job token.
        #[arg(long, default_value_t = 2000)]
        job_threshold_ms: u64,
    },
}

#[derive(Subcommand, Debug)]
enum YseedAction {
    /// Mutate the initial Y-seed along a path.
    Mutate {
        #[command(flatten)]
        input: QuiverInput,
        /// Comma-separated 1-based vertices.
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<usize>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct QuiverInput {
    /// Quiver file, text or JSON.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Linear orientation of a Dynkin diagram, e.g. `A3`, `G2`.
    #[arg(long)]
    dynkin: Option<String>,
}

#[derive(Args, Debug)]
struct Cap {
    /// Enumeration cap.
    #[arg(long, env = "CLUSTER_WORKBENCH_CAP")]
    cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Modular,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Modular => Mode::Modular,
        }
    }
}

/// Exit code for an engine error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_domain() {
        EXIT_DOMAIN
    } else {
        EXIT_INTEGRITY
    }
}

/// Text and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        // Fails only if the pool was already built in this process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let json = cli.json;
    let result = match cli.command {
        Command::Serve {
            host,
            port,
            origin,
            job_threshold_ms,
        } => serve(&host, port, origin, job_threshold_ms, out),
        command => execute(command, cli.seed),
    };
    match result {
        Ok(o) => {
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&o.json).unwrap());
            } else {
                let _ = write!(out, "{}", o.text);
                if !o.text.is_empty() && !o.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            EXIT_OK
        }
        Err(e) => {
            if json {
                let body = json!({ "error": { "code": e.code(), "message": e.to_string() } });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).unwrap());
            }
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::domain("io", format!("{}: {e}", path.display())))
}

fn load_quiver(path: &Path) -> Result<IceQuiver, Error> {
    read_file(path)?.parse()
}

impl QuiverInput {
    fn quiver(&self) -> Result<IceQuiver, Error> {
        match (&self.file, &self.dynkin) {
            (Some(f), _) => load_quiver(f),
            (_, Some(t)) => Ok(t.parse::<DynkinType>()?.linear_orientation()),
            _ => unreachable!("clap requires one input"),
        }
    }
}

fn vertex(q: &IceQuiver, k: usize) -> Result<usize, Error> {
    if k == 0 || k > q.m() {
        return Err(Error::domain("vertex_out_of_range", format!("vertex {k} does not exist")));
    }
    Ok(k - 1)
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn execute(command: Command, seed: u64) -> Result<Output, Error> {
    match command {
        Command::Mutate { file, at } => {
            let mut q = load_quiver(&file)?;
            for k in at {
                q = q.mutate(vertex(&q, k)?)?;
            }
            Ok(Output {
                text: q.to_string(),
                json: json!(QuiverJson::from(q)),
            })
        }
        Command::Class {
            file,
            cap,
            count_double_arrows,
            representatives,
        } => {
            let q = load_quiver(&file)?;
            let options = ClassOptions {
                cap: cap.cap.unwrap_or(DEFAULT_CLASS_CAP),
                max_representatives: representatives,
            };
            let r = mutation_class(&q, &options);
            let size = match r.class_size {
                ClassSize::Exact(n) => json!(n),
                ClassSize::ExceededCap(_) => Value::Null,
            };
            let mut text = match r.class_size {
                ClassSize::Exact(n) => format!("{n} quivers up to isomorphism\n"),
                ClassSize::ExceededCap(c) => format!("more than {c} quivers up to isomorphism (cap reached)\n"),
            };
            let mut j = json!({
                "size": size,
                "complete": r.class_size.exact().is_some(),
                "explored": r.explored,
                "max_multiplicity": r.max_multiplicity,
                "high_multiplicity": r.high_multiplicity_count,
            });
            if count_double_arrows {
                text += &format!("{} with a double arrow\n", r.double_arrow_count);
                j["double"] = json!(r.double_arrow_count);
            }
            text += &format!("{} with an arrow of multiplicity >= 3\n", r.high_multiplicity_count);
            if representatives > 0 {
                for m in &r.representatives {
                    text += &format!("\n{m}");
                }
                j["representatives"] = json!(r.representatives);
            }
            Ok(Output { text, json: j })
        }
        Command::Classify { file, cap } => {
            let q = load_quiver(&file)?;
            let c = classify(&q, cap.cap.unwrap_or(DEFAULT_CLASS_CAP))?;
            let text = match &c {
                Classification::Finite { dynkin } => format!("finite type {dynkin}"),
                Classification::Infinite { evidence } => {
                    format!("infinite type ({})", serde_json::to_value(evidence).unwrap()["kind"].as_str().unwrap_or("?"))
                }
                Classification::Unknown { explored, cap } => {
                    format!("undecided after {explored} members (cap {cap})")
                }
            };
            Ok(Output {
                text,
                json: serde_json::to_value(&c).unwrap(),
            })
        }
        Command::Seeds { input, cap } => {
            let q = input.quiver()?;
            let g = exchange_graph(&q, &exchange_options(cap))?;
            let mut text = format!(
                "{} seeds, {} edges, {} variables{}\n",
                g.seeds.len(),
                g.edges.len(),
                g.variables.len(),
                if g.complete { "" } else { " (cap reached)" }
            );
            for (i, s) in g.seeds.iter().enumerate() {
                text += &format!("{}: {}\n", i + 1, s.cluster_strings().join(", "));
            }
            let seeds: Vec<Vec<String>> = g.seeds.iter().map(|s| s.cluster_strings()).collect();
            let edges: Vec<[usize; 2]> = g.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect();
            Ok(Output {
                text,
                json: json!({
                    "seeds": seeds,
                    "edges": edges,
                    "variables": strings(&g.variables),
                    "complete": g.complete,
                }),
            })
        }
        Command::Variables { input, cap } => {
            let q = input.quiver()?;
            let vars = all_cluster_variables(&q, &exchange_options(cap))?;
            let mut text = format!("{} cluster variables\n", vars.len());
            let mut dens = Vec::new();
            for v in &vars {
                let d = denominator_vector(v)?;
                text += &format!("{v}    d = {:?}\n", d.0);
                dens.push(d.0);
            }
            Ok(Output {
                text,
                json: json!({
                    "count": vars.len(),
                    "variables": strings(&vars),
                    "denominators": dens,
                }),
            })
        }
        Command::Knit { input } => {
            let f = knit_one_period(&input.quiver()?)?;
            let slices: Vec<Vec<String>> = f.slices.iter().map(|s| strings(s)).collect();
            let vars = f.variables();
            Ok(Output {
                text: format!("{}\n{} distinct variables\n", f.render(), vars.len()),
                json: json!({
                    "first": f.first,
                    "period": f.period,
                    "slices": slices,
                    "variables": strings(&vars),
                }),
            })
        }
        Command::Yseed {
            action: YseedAction::Mutate { input, path },
        } => {
            let q = input.quiver()?;
            let mut s = YSeed::initial(q)?;
            for &k in &path {
                s = s.mutate(vertex(s.quiver(), k)?)?;
            }
            if !s.identity_holds() {
                return Err(Error::integrity("Y = y^c prod F^b fails at the final node"));
            }
            let ys: Vec<String> = s.y_variables().iter().map(|r| r.display_with("y")).collect();
            let fs: Vec<String> = s.f_polynomials().iter().map(|p| p.display_with("y")).collect();
            let mut text = String::new();
            for j in 0..s.n() {
                text += &format!(
                    "{}: c = {:?}  F = {}  Y = {}\n",
                    j + 1,
                    s.c_vector(j),
                    fs[j],
                    ys[j]
                );
            }
            let mut j = serde_json::to_value(&s).unwrap();
            j["y_strings"] = json!(ys);
            j["f_strings"] = json!(fs);
            j["identity_holds"] = json!(true);
            Ok(Output { text, json: j })
        }
        Command::Periodicity {
            pair,
            mode,
            primes,
            points,
            phi,
        } => {
            let (t, t2) = parse_pair(&pair)?;
            let mut options = PeriodicityOptions::new(mode.into());
            options.seed = seed;
            options.primes = primes;
            options.points_per_prime = points;
            let cert = verify_restricted_periodicity(t, t2, &options)?;
            let mut text = format!(
                "({}) h = {}, h' = {}: period {} {} h + h' = {}\n",
                cert.pair,
                cert.h,
                cert.h_prime,
                cert.period.map(|p| p.to_string()).unwrap_or_else(|| "not found".into()),
                if cert.divides { "divides" } else { "does not divide" },
                cert.h + cert.h_prime
            );
            if !cert.primes.is_empty() {
                text += &format!("primes {:?}\n", cert.primes);
            }
            let mut j = serde_json::to_value(&cert).unwrap();
            if phi {
                let ok = phi_order_check(t, t2, mode.into(), seed)?;
                text += &format!("phi^(h+h') = id: {ok}\n");
                j["phi_identity"] = json!(ok);
            }
            Ok(Output { text, json: j })
        }
        Command::Cc {
            file,
            interval,
            dynkin,
            three_lines,
        } => {
            let rep = if let Some(f) = file {
                serde_json::from_str::<QuiverRep>(&read_file(&f)?).map_err(|e| Error::domain("parse", e.to_string()))?
            } else if three_lines {
                d4_three_lines()
            } else if let (Some(iv), Some(t)) = (interval, dynkin) {
                let q = t.parse::<DynkinType>()?.linear_orientation();
                let (p, r) = iv
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                    .ok_or_else(|| Error::domain("bad_interval", format!("expected `p,q`, got {iv:?}")))?;
                interval_module(&q, p, r)?
            } else {
                return Err(Error::domain("no_representation", "give --file, --three-lines or --interval with --dynkin"));
            };
            let cc = caldero_chapoton(&rep)?;
            Ok(Output {
                text: cc.to_string(),
                json: json!({ "cc": cc.to_string(), "terms": cc, "dims": rep.dims() }),
            })
        }
        Command::Serve { .. } => unreachable!("handled by run"),
    }
}

fn exchange_options(cap: Cap) -> ExchangeOptions {
    let mut o = ExchangeOptions::default();
    if let Some(c) = cap.cap {
        o.seed_cap = c;
        o.variable_cap = c;
    }
    o
}

fn serve(host: &str, port: u16, origin: Option<String>, threshold_ms: u64, out: &mut dyn Write) -> Result<Output, Error> {
    let config = cluster_service::Config {
        job_threshold: Duration::from_millis(threshold_ms),
        cors_origin: origin,
        ..Default::default()
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Error::domain("io", e.to_string()))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| Error::domain("io", format!("cannot bind {host}:{port}: {e}")))?;
        let addr = listener.local_addr().map_err(|e| Error::domain("io", e.to_string()))?;
        let _ = writeln!(out, "listening on http://{addr}");
        let _ = out.flush();
        cluster_service::serve(listener, config)
            .await
            .map_err(|e| Error::domain("io", e.to_string()))?;
        Ok(Output {
            text: String::new(),
            json: Value::Null,
        })
    })
}
