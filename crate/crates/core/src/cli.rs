//! Command-line front end. Every subcommand prints JSON.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::ambient::Ambient;
use crate::codes::{enumerate_codes, SemisimpleCode};
use crate::decompose::Decomposition;
use crate::distance::{distance_bound, hensel_lift_distance_check, min_distance, DEFAULT_BUDGET};
use crate::duality::{
    build_nontrivial_selfdual, dual, is_selfdual, nontrivial_selfdual_criterion, selfdual_group_code_exists,
};
use crate::error::{Error, Result};
use crate::hensel::hensel_factor;
use crate::kerdock::run_demo;
use crate::oracle::{annihilator_bruteforce, distance_bruteforce, dual_bruteforce, ideal_census, ideal_span};
use crate::poly::PolyRing;
use crate::ring::{ChainRing, ChainRingDesc};
use crate::text;

#[derive(Parser, Debug)]
#[command(name = "chaincodes", version, about = "Semisimple multivariable codes over finite chain rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct AmbientArgs {
    /// Coefficient ring, e.g. '{"kind":"galois","p":2,"t":2,"l":1}'.
    #[arg(long)]
    pub ring: String,
    /// One univariate modulus per variable, e.g. "x^2-1" "y^2-1" or "x^2-1,y^2-1".
    #[arg(long, num_args = 1.., required = true)]
    pub moduli: Vec<String>,
    /// Seed for the randomized factorization.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CodeArgs {
    /// Exponent of each class in class order, comma separated.
    #[arg(long, conflicts_with = "generators")]
    pub exponents: Option<String>,
    /// Ideal generators as polynomials.
    #[arg(long, num_args = 1..)]
    pub generators: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArg {
    /// Maximum number of words to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    pub budget: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Census,
    Idempotents,
    Generators,
    Duality,
    Distance,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hensel-lifted factorization of every modulus.
    Factor {
        #[command(flatten)]
        ambient: AmbientArgs,
    },
    /// Cyclotomic classes of the ambient.
    Classes {
        #[command(flatten)]
        ambient: AmbientArgs,
        /// Include the class polynomials, idempotent and component ideal.
        #[arg(long)]
        full: bool,
    },
    /// Every semisimple code of the ambient, one JSON record per line.
    Enumerate {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[command(flatten)]
        budget: BudgetArg,
        /// Skip the minimum distance of each code.
        #[arg(long)]
        no_distance: bool,
    },
    /// Canonical description of one code.
    Info {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// The dual code (abelian ambients).
    Dual {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Self-duality test, existence criterion or construction.
    #[command(group(clap::ArgGroup::new("mode").required(true).args(["check", "exists", "construct"])))]
    SelfDual {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[command(flatten)]
        code: CodeArgs,
        /// Whether the given code equals its dual.
        #[arg(long)]
        check: bool,
        /// Whether a self-dual code other than <a^{t/2}> exists.
        #[arg(long)]
        exists: bool,
        /// Build such a code.
        #[arg(long)]
        construct: bool,
    },
    /// Exact minimum distance or the product bound.
    #[command(group(clap::ArgGroup::new("mode").required(true).args(["exact", "bound"])))]
    Distance {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        budget: BudgetArg,
        /// Minimum distance by enumerating the residue code.
        #[arg(long)]
        exact: bool,
        /// Product lower bound over groups of classes.
        #[arg(long)]
        bound: bool,
    },
    /// Cross-checks against brute-force enumeration over R.
    OracleCheck {
        /// Which checks to run.
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Ambient to check; without it a fixed set of small ambients is used.
        #[arg(long, requires = "moduli")]
        ring: Option<String>,
        /// Moduli of the ambient given with --ring.
        #[arg(long, num_args = 1..)]
        moduli: Vec<String>,
        /// Seed for the randomized factorization.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of ring vectors a single check may enumerate.
        #[arg(long, default_value_t = crate::oracle::SET_TIER_LIMIT)]
        budget: u64,
    },
    /// Generalized Kerdock code over Z4 and its polycyclic form.
    KerdockDemo {
        /// Residue field size; only 2 is supported.
        #[arg(long, default_value_t = 2)]
        q: usize,
        /// Degree of the extension, 3 or 5.
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
}

fn build_ambient(ring: &str, moduli: &[String], checked: bool) -> Result<Ambient> {
    let desc: ChainRingDesc = serde_json::from_str(ring).map_err(|e| Error::Parse(format!("ring descriptor: {e}")))?;
    let ring = ChainRing::new(&desc)?;
    let moduli: Vec<String> =
        moduli.iter().flat_map(|m| text::split_top(m, ',')).map(|m| m.trim().to_string()).filter(|m| !m.is_empty()).collect();
    if moduli.is_empty() {
        return Err(Error::Parse("no moduli given".into()));
    }
    Ambient::parse(ring, &moduli, checked)
}

fn decompose(args: &AmbientArgs) -> Result<Arc<Decomposition>> {
    let amb = build_ambient(&args.ring, &args.moduli, true)?;
    Ok(Arc::new(Decomposition::new(amb, args.seed)?))
}

fn parse_code(dec: &Arc<Decomposition>, args: &CodeArgs) -> Result<SemisimpleCode> {
    if let Some(e) = &args.exponents {
        let j = e
            .split(',')
            .map(|v| v.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        return SemisimpleCode::from_exponents(dec, j);
    }
    if args.generators.is_empty() {
        return Err(Error::Parse("give --exponents or --generators".into()));
    }
    let gens = args.generators.iter().map(|g| dec.ambient().parse_element(g)).collect::<Result<Vec<_>>>()?;
    SemisimpleCode::from_generators(dec, &gens)
}

fn code_info(k: &SemisimpleCode) -> Value {
    let amb = k.ambient();
    let mut v = k.to_json();
    let fam = k.canonical_generators().family;
    let obj = v.as_object_mut().unwrap();
    obj.insert("family".into(), json!(fam.iter().map(|g| amb.to_text(g)).collect::<Vec<_>>()));
    obj.insert("hensel_lift".into(), json!(k.is_hensel_lift()));
    obj.insert("log_q_cardinality".into(), json!(k.log_q_cardinality()));
    v
}

/// Outcome of one oracle cross-check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub ambient: Value,
    pub passed: bool,
    pub skipped: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, dec: &Decomposition, outcome: Result<String>) -> Self {
        let ambient = crate::codes::ambient_json(dec.ambient());
        match outcome {
            Ok(detail) => CheckResult { name, ambient, passed: true, skipped: false, detail },
            Err(Error::BudgetExceeded { needed, budget }) => CheckResult {
                name,
                ambient,
                passed: true,
                skipped: true,
                detail: format!("skipped: {needed} elements exceed the budget of {budget}"),
            },
            Err(e) => CheckResult { name, ambient, passed: false, skipped: false, detail: e.to_string() },
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "ambient": self.ambient,
            "passed": self.passed,
            "skipped": self.skipped,
            "detail": self.detail,
        })
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(what()))
    }
}

fn ambient_size(amb: &Ambient) -> BigUint {
    amb.ring().size().pow(amb.n() as u32)
}

/// The ideal census over `R` equals the set of enumerated codes.
pub fn check_census(dec: &Arc<Decomposition>, budget: u128) -> Result<String> {
    let amb = dec.ambient();
    let census = ideal_census(amb, budget)?;
    let codes: std::collections::HashSet<_> = enumerate_codes(dec).map(|k| ideal_span(amb, &[k.generator()])).collect();
    let found: std::collections::HashSet<_> = census.into_iter().collect();
    ensure(found == codes, || format!("census has {} ideals, enumeration {}", found.len(), codes.len()))?;
    Ok(format!("{} ideals", found.len()))
}

/// Idempotents are complete and orthogonal, components multiply to `|R|^n`,
/// and `Ann(h_C)` is the component ideal.
pub fn check_idempotents(dec: &Arc<Decomposition>, budget: u128) -> Result<String> {
    let amb = dec.ambient();
    let n = dec.num_classes();
    let sum = (0..n).fold(amb.zero(), |acc, c| amb.add(&acc, dec.idempotent(c)));
    ensure(sum == amb.one(), || "idempotents do not sum to one".into())?;
    for a in 0..n {
        let ea = dec.idempotent(a);
        ensure(amb.mul(ea, ea) == *ea, || format!("e_{a} is not idempotent"))?;
        for b in a + 1..n {
            ensure(amb.mul(ea, dec.idempotent(b)).is_zero(), || format!("e_{a} e_{b} != 0"))?;
        }
    }
    let product: BigUint = (0..n).map(|c| dec.class_data(c).component_size()).product();
    ensure(product == ambient_size(amb), || "component sizes do not multiply to |R|^n".into())?;
    for c in 0..n {
        let ann = annihilator_bruteforce(amb, &dec.class_data(c).h, budget)?;
        ensure(ann == ideal_span(amb, &dec.ideal_generators(c)), || format!("Ann(h_{c}) differs from I_{c}"))?;
    }
    Ok(format!("{n} components"))
}

/// Generator round trip and cardinality against the echelon span.
pub fn check_generators(dec: &Arc<Decomposition>) -> Result<String> {
    let amb = dec.ambient();
    let mut count = 0;
    for k in enumerate_codes(dec) {
        let g = k.canonical_generators().generator;
        let back = SemisimpleCode::from_generators(dec, std::slice::from_ref(&g))?;
        ensure(back == k, || format!("round trip changed {:?}", k.exponents()))?;
        let span = ideal_span(amb, &[g]);
        ensure(span.cardinality(amb.ring()) == k.cardinality(), || format!("cardinality of {:?}", k.exponents()))?;
        count += 1;
    }
    Ok(format!("{count} codes"))
}

/// Exponent-rule duals against brute force.
pub fn check_duality(dec: &Arc<Decomposition>, budget: u128) -> Result<String> {
    let amb = dec.ambient();
    let full = ambient_size(amb);
    let mut count = 0;
    for k in enumerate_codes(dec) {
        let d = dual(&k)?;
        let bf = dual_bruteforce(amb, &ideal_span(amb, &[k.generator()]), budget)?;
        ensure(bf == ideal_span(amb, &[d.generator()]), || format!("dual of {:?}", k.exponents()))?;
        ensure(dual(&d)? == k, || format!("double dual of {:?}", k.exponents()))?;
        ensure(k.cardinality() * d.cardinality() == full, || format!("|K||K^perp| for {:?}", k.exponents()))?;
        ensure(is_selfdual(&k)? == (d == k), || format!("self-duality of {:?}", k.exponents()))?;
        count += 1;
    }
    Ok(format!("{count} duals"))
}

/// Distances through the residue code against enumeration over `R`.
pub fn check_distance(dec: &Arc<Decomposition>, budget: u128) -> Result<String> {
    let amb = dec.ambient();
    let abelian = amb.abelian_exponents().is_some();
    let mut count = 0;
    for k in enumerate_codes(dec).filter(|k| !k.is_zero()) {
        let d = min_distance(&k, budget)?;
        let bf = distance_bruteforce(amb.ring(), &ideal_span(amb, &[k.generator()]), budget)?;
        ensure(d == bf, || format!("distance {d} vs {bf} for {:?}", k.exponents()))?;
        let s = min_distance(&crate::distance::socle(&k), budget)?;
        ensure(d == s, || format!("socle distance {s} vs {d} for {:?}", k.exponents()))?;
        if abelian {
            let b = distance_bound(&k, budget)?;
            ensure(b <= d, || format!("bound {b} above {d} for {:?}", k.exponents()))?;
        }
        hensel_lift_distance_check(&k, budget)?;
        count += 1;
    }
    Ok(format!("{count} nonzero codes"))
}

pub fn run_suite(dec: &Arc<Decomposition>, suite: Suite, budget: u128) -> Vec<CheckResult> {
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut out = Vec::new();
    if want(Suite::Census) {
        out.push(CheckResult::new("census", dec, check_census(dec, budget)));
    }
    if want(Suite::Idempotents) {
        out.push(CheckResult::new("idempotents", dec, check_idempotents(dec, budget)));
    }
    if want(Suite::Generators) {
        out.push(CheckResult::new("generators", dec, check_generators(dec)));
    }
    if want(Suite::Duality) && dec.ambient().abelian_exponents().is_some() {
        out.push(CheckResult::new("duality", dec, check_duality(dec, budget)));
    }
    if want(Suite::Distance) {
        out.push(CheckResult::new("distance", dec, check_distance(dec, budget)));
    }
    out
}

/// The ambients used by `oracle-check` when none is given.
pub fn default_suite_ambients() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        (r#"{"kind":"galois","p":2,"t":2,"l":1}"#, vec!["x^7-1"]),
        (r#"{"kind":"galois","p":2,"t":2,"l":1}"#, vec!["x^3-1", "y^3-1"]),
        (r#"{"kind":"galois","p":3,"t":2,"l":1}"#, vec!["x^2-1", "y^2-1"]),
    ]
}

enum Output {
    One(Value),
    Lines(Vec<Value>),
}

fn execute(command: &Command) -> Result<Output> {
    let one = |v: Value| Ok(Output::One(v));
    match command {
        Command::Factor { ambient } => {
            let amb = build_ambient(&ambient.ring, &ambient.moduli, false)?;
            let ring = amb.ring();
            let pr = PolyRing::new(ring);
            let fr_ring = ring.residue_field();
            let fr = PolyRing::new(&fr_ring);
            let mut out = Vec::new();
            for (i, t) in amb.moduli().iter().enumerate() {
                let var = text::var_name(i, amb.r());
                let lf = hensel_factor(ring, t, ambient.seed)?;
                let product = pr.product(&lf.factors);
                out.push(json!({
                    "modulus": pr.to_text(t, &var),
                    "factors": lf.factors.iter().map(|f| pr.to_text(f, &var)).collect::<Vec<_>>(),
                    "residue_factors": lf.residue_factors.iter().map(|f| fr.to_text(f, &var)).collect::<Vec<_>>(),
                    "product_matches": product == *t,
                }));
            }
            one(json!({ "ring": amb.ring().descriptor(), "moduli": out }))
        }
        Command::Classes { ambient, full } => {
            let dec = decompose(ambient)?;
            let sd = dec.splitting();
            let classes: Vec<Value> = (0..dec.num_classes())
                .map(|i| if *full { dec.class_json_full(i) } else { dec.classes()[i].to_json(sd) })
                .collect();
            one(json!({
                "ambient": crate::codes::ambient_json(dec.ambient()),
                "splitting_degree": sd.m,
                "count": classes.len(),
                "classes": classes,
            }))
        }
        Command::Enumerate { ambient, budget, no_distance } => {
            let dec = decompose(ambient)?;
            let mut lines = Vec::new();
            for k in enumerate_codes(&dec) {
                let mut v = k.to_json();
                if !no_distance {
                    let d = if k.is_zero() { Value::Null } else { json!(min_distance(&k, budget.budget as u128)?) };
                    v.as_object_mut().unwrap().insert("distance".into(), d);
                }
                lines.push(v);
            }
            Ok(Output::Lines(lines))
        }
        Command::Info { ambient, code } => {
            let dec = decompose(ambient)?;
            one(code_info(&parse_code(&dec, code)?))
        }
        Command::Dual { ambient, code } => {
            let dec = decompose(ambient)?;
            one(code_info(&dual(&parse_code(&dec, code)?)?))
        }
        Command::SelfDual { ambient, code, check, exists, construct } => {
            let dec = decompose(ambient)?;
            if *check {
                let k = parse_code(&dec, code)?;
                one(json!({ "selfdual": is_selfdual(&k)?, "code": k.to_json(), "dual": dual(&k)?.to_json() }))
            } else if *exists {
                let crit = nontrivial_selfdual_criterion(&dec)?;
                let ring = dec.ambient().ring();
                one(json!({
                    "exists": crit.exists,
                    "minus_one_power": crit.minus_one_power,
                    "note": crit.note,
                    "group_code_exists": selfdual_group_code_exists(ring.p(), ring.t(), dec.ambient().n() as u64),
                }))
            } else {
                debug_assert!(*construct);
                one(code_info(&build_nontrivial_selfdual(&dec)?))
            }
        }
        Command::Distance { ambient, code, budget, exact, bound: _ } => {
            let dec = decompose(ambient)?;
            let k = parse_code(&dec, code)?;
            let b = budget.budget as u128;
            if *exact {
                let h = hensel_lift_distance_check(&k, b)?;
                one(json!({
                    "distance": h.distance,
                    "residue_distance": h.residue_distance,
                    "equal": h.equal,
                    "hensel_lift": k.is_hensel_lift(),
                    "note": h.note,
                }))
            } else {
                one(json!({ "bound": distance_bound(&k, b)? }))
            }
        }
        Command::OracleCheck { suite, ring, moduli, seed, budget } => {
            let targets: Vec<(String, Vec<String>)> = match ring {
                Some(r) => vec![(r.clone(), moduli.clone())],
                None => default_suite_ambients()
                    .into_iter()
                    .map(|(r, m)| (r.to_string(), m.into_iter().map(String::from).collect()))
                    .collect(),
            };
            let mut results = Vec::new();
            for (r, m) in targets {
                let dec = Arc::new(Decomposition::new(build_ambient(&r, &m, true)?, *seed)?);
                results.extend(run_suite(&dec, *suite, *budget as u128));
            }
            let passed = results.iter().all(|c| c.passed);
            let v = json!({ "passed": passed, "checks": results.iter().map(CheckResult::to_json).collect::<Vec<_>>() });
            if !passed {
                return Err(Error::Internal(v.to_string()));
            }
            one(v)
        }
        Command::KerdockDemo { q, m } => {
            if *q != 2 || !(*m == 3 || *m == 5) {
                return Err(Error::Parse(format!("kerdock-demo supports q = 2 with m = 3 or 5, got q = {q}, m = {m}")));
            }
            one(run_demo(1, *m)?.to_json())
        }
    }
}

fn error_json(code: &str, message: &str) -> String {
    json!({ "code": code, "message": message }).to_string()
}

fn write_output(out: &Output, sink: &mut dyn Write) -> io::Result<()> {
    match out {
        Output::One(v) => writeln!(sink, "{v}")?,
        Output::Lines(vs) => {
            for v in vs {
                writeln!(sink, "{v}")?;
            }
        }
    }
    sink.flush()
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 on success, 1 on a domain error, 2 on a usage or budget error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = writeln!(stderr, "{}", error_json("usage", e.to_string().trim()));
            return 2;
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => File::create(path).and_then(|f| write_output(&out, &mut BufWriter::new(f))),
                None => write_output(&out, stdout),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "{}", error_json("io", &e.to_string()));
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(e.code(), &e.to_string()));
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}
