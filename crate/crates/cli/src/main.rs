use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use newton_sums::expsum::{char_sum_naive, expsum_decomposed};
use newton_sums::harness::checks::{describe_face, hyperplane_summary, max_series_order};
use newton_sums::harness::{run_verify, Corpus, RunConfig, Suite};
use newton_sums::invariants::{hyperplane_support, nondegeneracy_check, sigma_kappa, Mode};
use newton_sums::poly::parse_polynomial;
use newton_sums::rational::to_string;
use newton_sums::geom::newton_polyhedron;
use newton_sums::zeta::{igusa_zeta, pole_report, zeta_series_oracle, Poly};
use newton_sums::{Error, IntPolynomial, NewtonPolyhedron};

#[derive(Parser)]
#[command(name = "newton-sums", version, about = "Newton polyhedra, exponential sums and local zeta functions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Flat TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured sampling seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Polyhedron, faces, sigma/kappa, hyperplane data and non-degeneracy certificates.
    Analyze {
        #[arg(short = 'f', long)]
        poly: String,
        /// Primes to certify at (defaults to the configured primes).
        #[arg(short = 'p')]
        p: Vec<u64>,
    },
    /// The exponential sum E(p^{-m}) by brute force and/or the face decomposition.
    Expsum {
        #[arg(short = 'f', long)]
        poly: String,
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'm')]
        m: u32,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Igusa's local zeta function as an exact rational function of t = p^{-s}.
    Zeta {
        #[arg(short = 'f', long)]
        poly: String,
        #[arg(short = 'p')]
        p: u64,
        /// Print Taylor coefficients up to t^V.
        #[arg(long, value_name = "V")]
        series: Option<u32>,
        /// Compare the coefficients with residue counts.
        #[arg(long)]
        oracle: bool,
        /// Candidate poles, orders and the leading coefficient at -sigma.
        #[arg(long)]
        poles: bool,
    },
    /// Run verification suites over the corpus.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Naive,
    Decomposed,
    Both,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::NotCertified { .. } => 4,
        _ => 2,
    }
}

fn parse(text: &str) -> Result<IntPolynomial, Error> {
    parse_polynomial(text)
}

fn analyze(poly: &str, primes: &[u64], config: &RunConfig) -> Result<Value, Error> {
    let f = parse(poly)?;
    let np = polyhedron(&f)?;
    let inv = sigma_kappa(&np);
    let faces: Vec<Value> = np
        .faces()
        .iter()
        .map(|face| json!({ "id": face.id, "description": describe_face(&np, face), "face": face }))
        .collect();
    let hyper = hyperplane_support(&f);
    let mut certs = Vec::new();
    for &p in primes {
        certs.push(nondegeneracy_check(&f, &np, p, Mode::Strong, Some(config.k_max), config.budget)?);
    }
    Ok(json!({
        "poly": poly,
        "nvars": f.nvars(),
        "polyhedron": np,
        "faces": faces,
        "sigma": to_string(&inv.sigma),
        "kappa": inv.kappa,
        "invariants": inv,
        "tau0": describe_face(&np, np.face(inv.tau0)),
        "hyperplane": hyper,
        "hyperplane_summary": hyperplane_summary(&hyper),
        "certificates": certs,
    }))
}

fn expsum(poly: &str, p: u64, m: u32, method: Method, config: &RunConfig) -> Result<Value, Error> {
    let f = parse(poly)?;
    let mut out = Map::new();
    out.insert("poly".into(), json!(poly));
    out.insert("p".into(), json!(p));
    out.insert("m".into(), json!(m));
    let naive = match method {
        Method::Naive | Method::Both => Some(char_sum_naive(&f, p, m, 1, config.budget)?),
        Method::Decomposed => None,
    };
    let decomposed = match method {
        Method::Decomposed | Method::Both => Some(expsum_decomposed(&f, p, m, config.budget)?),
        Method::Naive => None,
    };
    if let Some(v) = &naive {
        out.insert("naive".into(), json!(v));
    }
    if let Some(v) = &decomposed {
        out.insert("decomposed".into(), json!(v));
    }
    if let (Some(a), Some(b)) = (&naive, &decomposed) {
        let diff = a.dist(b);
        out.insert("abs_diff".into(), json!(diff));
        out.insert("tolerance".into(), json!(config.tolerance));
        out.insert("pass".into(), json!(diff <= config.tolerance));
    }
    Ok(Value::Object(out))
}

fn zeta(poly: &str, p: u64, series: Option<u32>, oracle: bool, poles: bool, config: &RunConfig) -> Result<Value, Error> {
    let f = parse(poly)?;
    let zr = igusa_zeta(&f, p, config.budget)?;
    let mut out = match serde_json::to_value(&zr).expect("zeta result serializes") {
        Value::Object(m) => m,
        _ => unreachable!("zeta result is a JSON object"),
    };
    out.insert("poly".into(), json!(poly));
    let v = match (series, oracle) {
        (Some(v), _) => Some(v),
        (None, true) => Some(max_series_order(p, f.nvars(), config.budget)),
        (None, false) => None,
    };
    if let Some(v) = v {
        let coeffs = zr.z.series_expand(v as usize)?;
        out.insert("series".into(), strings(&coeffs));
        if oracle {
            let expected = zeta_series_oracle(&f, p, v, config.budget)?;
            out.insert("oracle".into(), strings(&expected));
            out.insert("oracle_match".into(), json!(expected == coeffs));
        }
    }
    if poles {
        let np = polyhedron(&f)?;
        let inv = sigma_kappa(&np);
        let rep = pole_report(&zr, &inv);
        let dichotomy = rep.dichotomy_holds();
        if let Value::Object(m) = serde_json::to_value(&rep).expect("pole report serializes") {
            for (k, val) in m {
                if k != "p" {
                    out.insert(k, val);
                }
            }
        }
        out.insert("dichotomy".into(), json!(dichotomy));
        out.insert("sigma_value".into(), json!(to_string(&inv.sigma)));
    }
    Ok(Value::Object(out))
}

fn polyhedron(f: &IntPolynomial) -> Result<NewtonPolyhedron, Error> {
    newton_polyhedron(&f.support())
}

fn strings(v: &Poly) -> Value {
    json!(v.iter().map(to_string).collect::<Vec<_>>())
}

fn load_config(common: &Common) -> Result<RunConfig, Error> {
    let mut config = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if common.json.is_some() {
        config.output = common.json.clone();
    }
    Ok(config)
}

fn run(cli: &Cli) -> Result<(Value, bool), Error> {
    let config = load_config(&cli.common)?;
    let report = match &cli.command {
        Command::Analyze { poly, p } => {
            let primes = if p.is_empty() { config.primes.clone() } else { p.clone() };
            (analyze(poly, &primes, &config)?, true)
        }
        Command::Expsum { poly, p, m, method } => {
            let v = expsum(poly, *p, *m, *method, &config)?;
            let ok = v.get("pass").and_then(Value::as_bool).unwrap_or(true);
            (v, ok)
        }
        Command::Zeta { poly, p, series, oracle, poles } => {
            let v = zeta(poly, *p, *series, *oracle, *poles, &config)?;
            let ok = v.get("oracle_match").and_then(Value::as_bool).unwrap_or(true);
            (v, ok)
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let corpus = match &config.corpus {
                Some(path) => Corpus::load(path)?,
                None => Corpus::builtin(),
            };
            let rep = run_verify(suite, &corpus, &config)?;
            let ok = rep.passed;
            (serde_json::to_value(&rep).expect("verify report serializes"), ok)
        }
    };
    if let Some(path) = &config.output {
        let text = serde_json::to_string_pretty(&report.0).expect("report serializes");
        std::fs::write(path, text + "\n")?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("error: {e}");
            println!("{}", json!({ "error": e.to_string(), "exit_code": code }));
            ExitCode::from(code)
        }
    }
}
