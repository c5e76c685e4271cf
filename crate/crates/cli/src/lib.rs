//! Batch front end: invariant suites, convergence sweeps and one-shot evaluations.
//!
//! Exit codes: 0 pass, 1 invariant failure, 2 usage or input error.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use brandt_l1::checks::{self, CheckConfig};
use brandt_l1::diagonals::{self, DefectReport};
use brandt_l1::json::{self, GroupSpec, JsonBasis};
use brandt_l1::scalar::{format_rational, parse_rational};
use brandt_l1::{blocks, l1, splitting, BrandtElement, Convolution, Group, GroupElement, L1Vector, Rational, Triple};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] brandt_l1::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invariant failure: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::Input(brandt_l1::Error::Axiom { .. }) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Everything a subcommand may need; unused fields are ignored.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group: GroupSpec,
    pub index_bound: usize,
    pub element: Option<PathBuf>,
    pub epsilon: Rational,
    pub length: usize,
    pub format: OutputFormat,
    pub jobs: Option<usize>,
    pub samples: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(group: GroupSpec) -> Self {
        RunConfig {
            group,
            index_bound: 3,
            element: None,
            epsilon: brandt_l1::scalar::rat(1, 10),
            length: 5,
            format: OutputFormat::Csv,
            jobs: None,
            samples: 200,
            seed: CheckConfig::default().seed,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.epsilon <= Rational::from_integer(0.into()) {
            return Err(CliError::Usage("--epsilon must be positive".into()));
        }
        if self.length == 0 {
            return Err(CliError::Usage("--length must be at least 1".into()));
        }
        if self.jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        Ok(())
    }
}

/// Reads `--group`: inline JSON when it looks like an object, a file path otherwise.
pub fn load_group_spec(arg: &str) -> CliResult<GroupSpec> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read_file(Path::new(arg))? };
    Ok(GroupSpec::parse(&text)?)
}

pub fn parse_epsilon(arg: &str) -> CliResult<Rational> {
    parse_rational(arg).map_err(|e| CliError::Usage(e.to_string()))
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| brandt_l1::Error::Json(format!("{}: {e}", path.display())).into())
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} worker threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Output of a successful command; `failed` maps to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub text: String,
    pub failed: bool,
}

impl CommandOutput {
    pub fn exit_code(&self) -> i32 {
        if self.failed {
            1
        } else {
            0
        }
    }
}

pub fn cmd_verify(config: &RunConfig) -> CliResult<CommandOutput> {
    config.validate()?;
    let group = config.group.build()?;
    let cfg = CheckConfig { index_bound: config.index_bound, samples: config.samples, seed: config.seed };
    let outcomes = with_pool(config.jobs, || checks::run_all(&group, &cfg))??;
    let failed = outcomes.iter().any(|o| !o.passed());
    let text = match config.format {
        OutputFormat::Json => {
            let report = json!({
                "group": group.name(),
                "index_bound": config.index_bound,
                "passed": !failed,
                "checks": outcomes,
            });
            serde_json::to_string_pretty(&report).expect("serializable") + "\n"
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "cases", "failed", "first_failure"]).expect("in-memory write");
            for o in &outcomes {
                let first = o.failures.first().cloned().unwrap_or_default();
                w.write_record([o.check.clone(), o.cases.to_string(), o.failed.to_string(), first])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
    };
    Ok(CommandOutput { text, failed })
}

pub const SWEEP_COLUMNS: [&str; 8] = [
    "k",
    "F_size",
    "lambda",
    "commutator_defect",
    "e9_rhs",
    "pi_defect",
    "epsilon_bound_commutator",
    "epsilon_bound_pi",
];

fn sweep_row(k: usize, r: &DefectReport<Rational>) -> [String; 8] {
    [
        k.to_string(),
        r.index.f().len().to_string(),
        r.index.lambda().to_string(),
        format_rational(&r.commutator_defect),
        format_rational(&r.e9_rhs),
        format_rational(&r.pi_defect),
        format_rational(&r.commutator_bound()),
        format_rational(&r.pi_bound()),
    ]
}

pub fn cmd_sweep(config: &RunConfig) -> CliResult<CommandOutput> {
    config.validate()?;
    let group = config.group.build()?;
    let path = config.element.as_ref().ok_or_else(|| CliError::Usage("sweep requires --element".into()))?;
    let a: L1Vector<Triple, Rational> = json::vector_from_value(&read_json(path)?)?;
    let schedule = diagonals::chain_schedule(config.length);
    let reports = with_pool(config.jobs, || diagonals::theorem_sweep(&group, &a, &schedule, &config.epsilon))??;

    let failed = reports.iter().any(|r| r.commutator_defect > r.e9_rhs || r.pi_defect > r.e10_rhs);
    let text = match config.format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(SWEEP_COLUMNS).expect("in-memory write");
            for (n, r) in reports.iter().enumerate() {
                w.write_record(sweep_row(n + 1, r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = reports
                .iter()
                .enumerate()
                .map(|(n, r)| {
                    let mut obj = serde_json::Map::new();
                    for (key, val) in SWEEP_COLUMNS.iter().zip(sweep_row(n + 1, r)) {
                        obj.insert((*key).into(), Value::String(val));
                    }
                    obj.insert("F0".into(), json!(r.f0));
                    obj.insert("lambda0".into(), json!(r.lambda0));
                    obj.insert("lambda1".into(), json!(r.lambda1));
                    obj.insert("M".into(), Value::String(format_rational(&r.diagonal_bound_m)));
                    Value::Object(obj)
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
        }
    };
    Ok(CommandOutput { text, failed })
}

/// Operations accepted by `eval`.
pub const EVAL_OPS: &[&str] = &[
    "convolve_g",
    "convolve_t",
    "convolve_s",
    "norm",
    "pi",
    "act_left",
    "act_right",
    "block",
    "embed_e",
    "embed_h",
    "psi",
    "phi",
    "theta",
    "to_pair",
    "from_pair",
    "lift",
    "brandt_w",
    "folner_diagonal",
    "exact_diagonal",
];

/// Extra arguments for `eval`.
#[derive(Debug, Clone, Default)]
pub struct EvalArgs {
    pub op: String,
    pub operands: Vec<PathBuf>,
    pub indices: Vec<usize>,
    pub lambda: Option<usize>,
}

fn arity(args: &EvalArgs, n: usize) -> CliResult<Vec<Value>> {
    if args.operands.len() != n {
        return Err(CliError::Usage(format!("{} takes {n} operand file(s), got {}", args.op, args.operands.len())));
    }
    args.operands.iter().map(|p| read_json(p)).collect()
}

fn indices<const N: usize>(args: &EvalArgs) -> CliResult<[usize; N]> {
    args.indices
        .clone()
        .try_into()
        .map_err(|_| CliError::Usage(format!("{} needs --indices with {N} values", args.op)))
}

fn vec_of<B: JsonBasis + Ord + Clone>(v: &Value) -> CliResult<L1Vector<B, Rational>> {
    Ok(json::vector_from_value(v)?)
}

fn out<B: JsonBasis + Ord + Clone>(v: &L1Vector<B, Rational>) -> Value {
    json::vector_to_value(v)
}

fn scalar_value(key: &str, r: &Rational) -> Value {
    json!({ key: format_rational(r) })
}

fn pair_value(p: &splitting::PairAlgebraElement<Rational>) -> Value {
    json!({"t_part": out(&p.t_part), "scalar_part": format_rational(&p.scalar_part)})
}

fn pi_as<B: Convolution + JsonBasis>(group: &Group, t: &Value) -> CliResult<Option<Value>>
where
    (B, B): JsonBasis,
{
    match json::vector_from_value::<(B, B)>(t) {
        Ok(t) => Ok(Some(out(&l1::pi(group, &t)?))),
        Err(brandt_l1::Error::BasisMismatch(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn act_as<B: Convolution + JsonBasis>(group: &Group, a: &Value, t: &Value, left: bool) -> CliResult<Option<Value>>
where
    (B, B): JsonBasis,
{
    let t = match json::vector_from_value::<(B, B)>(t) {
        Ok(t) => t,
        Err(brandt_l1::Error::BasisMismatch(_)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let a: L1Vector<B, Rational> = vec_of(a)?;
    let r = if left { l1::tensor_act_left(group, &a, &t)? } else { l1::tensor_act_right(group, &t, &a)? };
    Ok(Some(out(&r)))
}

fn norm_as<B: JsonBasis + Ord + Clone>(v: &Value) -> Option<Rational> {
    json::vector_from_value::<B>(v).ok().map(|x| x.norm())
}

fn mismatch(what: &str) -> CliError {
    brandt_l1::Error::BasisMismatch(what.into()).into()
}

pub fn cmd_eval(config: &RunConfig, args: &EvalArgs) -> CliResult<CommandOutput> {
    let group = config.group.build()?;
    let g = &group;
    let value = match args.op.as_str() {
        "convolve_g" => {
            let v = arity(args, 2)?;
            out(&l1::convolve(g, &vec_of::<GroupElement>(&v[0])?, &vec_of(&v[1])?)?)
        }
        "convolve_t" => {
            let v = arity(args, 2)?;
            let (a, b) = (vec_of::<Triple>(&v[0])?, vec_of(&v[1])?);
            let p = l1::convolve(g, &a, &b)?;
            if p != l1::convolve_t_pointwise(g, &a, &b)? {
                return Err(CliError::Invariant("the two l1(T) product routes disagree".into()));
            }
            out(&p)
        }
        "convolve_s" => {
            let v = arity(args, 2)?;
            out(&l1::convolve(g, &vec_of::<BrandtElement>(&v[0])?, &vec_of(&v[1])?)?)
        }
        "norm" => {
            let v = arity(args, 1)?;
            let n = norm_as::<GroupElement>(&v[0])
                .or_else(|| norm_as::<BrandtElement>(&v[0]))
                .or_else(|| norm_as::<(GroupElement, GroupElement)>(&v[0]))
                .or_else(|| norm_as::<(BrandtElement, BrandtElement)>(&v[0]))
                .ok_or_else(|| mismatch("not an l1 element over a known basis"))?;
            scalar_value("norm", &n)
        }
        "pi" => {
            let v = arity(args, 1)?;
            match pi_as::<GroupElement>(g, &v[0])? {
                Some(x) => x,
                None => match pi_as::<Triple>(g, &v[0])? {
                    Some(x) => x,
                    None => pi_as::<BrandtElement>(g, &v[0])?.ok_or_else(|| mismatch("pi needs a pair-basis tensor"))?,
                },
            }
        }
        "act_left" | "act_right" => {
            let v = arity(args, 2)?;
            let left = args.op == "act_left";
            let (a, t) = if left { (&v[0], &v[1]) } else { (&v[1], &v[0]) };
            match act_as::<GroupElement>(g, a, t, left)? {
                Some(x) => x,
                None => match act_as::<Triple>(g, a, t, left)? {
                    Some(x) => x,
                    None => act_as::<BrandtElement>(g, a, t, left)?
                        .ok_or_else(|| mismatch("tensor operand must be on a pair basis"))?,
                },
            }
        }
        "block" => {
            let v = arity(args, 1)?;
            let [u, w] = indices::<2>(args)?;
            out(&blocks::block(&vec_of::<Triple>(&v[0])?, u, w))
        }
        "embed_e" => {
            let v = arity(args, 1)?;
            let [i, j, i2, j2] = indices::<4>(args)?;
            let b = vec_of::<(GroupElement, GroupElement)>(&v[0])?;
            out(&blocks::embed_e(&b, blocks::EIndex::new(i, j, i2, j2)))
        }
        "embed_h" => {
            let v = arity(args, 1)?;
            let [i, j] = indices::<2>(args)?;
            out(&blocks::embed_h(&vec_of::<GroupElement>(&v[0])?, i, j))
        }
        "psi" => {
            let v = arity(args, 1)?;
            out(&splitting::psi(&vec_of::<Triple>(&v[0])?))
        }
        "phi" => {
            let v = arity(args, 1)?;
            scalar_value("phi", &splitting::phi(&vec_of::<BrandtElement>(&v[0])?))
        }
        "theta" => {
            let v = arity(args, 1)?;
            out(&splitting::theta(&vec_of::<BrandtElement>(&v[0])?))
        }
        "to_pair" => {
            let v = arity(args, 1)?;
            pair_value(&splitting::to_pair(&vec_of::<BrandtElement>(&v[0])?))
        }
        "from_pair" => {
            let v = arity(args, 1)?;
            let obj = v[0].as_object().ok_or_else(|| mismatch("from_pair needs {\"t_part\", \"scalar_part\"}"))?;
            let t = vec_of::<Triple>(obj.get("t_part").ok_or_else(|| mismatch("missing t_part"))?)?;
            let z = obj
                .get("scalar_part")
                .and_then(Value::as_str)
                .ok_or_else(|| mismatch("missing scalar_part"))?;
            out(&splitting::from_pair(&splitting::PairAlgebraElement::new(t, parse_rational(z)?)))
        }
        "lift" => {
            let v = arity(args, 1)?;
            out(&diagonals::lift_diagonal(&vec_of::<(Triple, Triple)>(&v[0])?))
        }
        "brandt_w" => {
            let v = arity(args, 1)?;
            let f: BTreeSet<usize> = args.indices.iter().copied().collect();
            out(&diagonals::brandt_w(&f, &vec_of::<(GroupElement, GroupElement)>(&v[0])?)?)
        }
        "folner_diagonal" => {
            arity(args, 0)?;
            let lambda = args.lambda.ok_or_else(|| CliError::Usage("folner_diagonal needs --lambda".into()))?;
            out(&diagonals::folner_diagonal::<Rational>(g, lambda))
        }
        "exact_diagonal" => {
            arity(args, 0)?;
            out(&diagonals::exact_diagonal::<Rational>(g)?)
        }
        other => {
            return Err(CliError::Usage(format!("unknown operation {other:?}; expected one of {}", EVAL_OPS.join(", "))))
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
    Ok(CommandOutput { text, failed: false })
}

/// Writes to `out` when given, stdout otherwise.
pub fn emit(output: &CommandOutput, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, &output.text).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            print!("{}", output.text);
            Ok(())
        }
    }
}
