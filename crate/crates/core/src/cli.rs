//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a property fails (the
//! witness is printed), 2 for unusable input or an exceeded size bound.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{compose_affine, composition_conditions, equivalence_classes, AffineStructure};
use crate::catalog;
use crate::enumeration::{cache_dir, census_cached, enumerate_seeded, Kind};
use crate::error::{Error, Property, Result, Violation};
use crate::families;
use crate::group::{automorphisms, FiniteGroup, DEFAULT_AUTOMORPHISM_BOUND};
use crate::identify::identify;
use crate::io::{self, AffineFile, GroupFile, GroupRef, SemiBraceFile, SolutionFile};
use crate::map::{Permutation, SelfMap};
use crate::products::{conjugation_system, negation_system, MatchedSystem, SidedWitness, ZappaSystem};
use crate::semibrace::SemiBrace;
use crate::ybe::SetSolution;

#[derive(Parser, Debug)]
#[command(name = "affine-lab", version, about = "Affine structures, semi-braces and Yang-Baxter solutions on finite groups")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for exploration order; results do not depend on it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe a group.
    Group(GroupArgs),
    /// Check the axioms of a structure.
    #[command(subcommand)]
    Verify(Verify),
    /// Classification flags and derived properties.
    #[command(subcommand)]
    Classify(Classify),
    /// Convert between affine structures and semi-braces.
    #[command(subcommand)]
    Derive(Derive),
    /// Yang-Baxter solution properties.
    Solution(SolutionArgs),
    /// Compose two affine structures on the same group.
    Compose(ComposeArgs),
    /// Transport an affine structure along a relabeling.
    Transport(TransportArgs),
    /// Equivalence classes of a list of affine structures.
    EquivClasses(EquivArgs),
    /// Enumerate affine structures on a small group.
    Enumerate(EnumerateArgs),
    /// Zappa-Szep, bowtie and product constructions.
    #[command(subcommand)]
    Product(Product),
    /// Compare the product construction with the matched product.
    Compare(CompareArgs),
    /// Worked examples with recorded expectations.
    #[command(subcommand)]
    Catalog(Catalog),
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// Group file or constructor spec (cyclic:6, C6, D4, S3, C2*S3).
    #[arg(long)]
    pub group: String,
    /// Print the group as a JSON file instead of a description.
    #[arg(long)]
    pub emit: bool,
}

/// An affine structure: a JSON file, or a family spec such as `sign-flip:6`,
/// `parity-twist:8`, `omega-squared:8`, `trivial:S3`, `inverse-translation:C4`,
/// `conjugation:S3`.
#[derive(Args, Debug)]
pub struct SigmaArg {
    #[arg(long)]
    pub sigma: String,
    /// Group for a bare sigma table.
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    Group {
        #[arg(long)]
        group: String,
    },
    Affine(SigmaArg),
    Semibrace {
        /// File, `trivial:G`, `almost-trivial:G`, or an affine family spec.
        #[arg(long)]
        semibrace: String,
    },
    Matched {
        /// File, `negation:m`, `conjugation-id:G` or `conjugation-zero:G`.
        #[arg(long)]
        matched: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Classify {
    Affine(SigmaArg),
    Semibrace {
        #[arg(long)]
        semibrace: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Derive {
    Semibrace {
        #[arg(long = "from-affine")]
        from_affine: String,
        #[arg(long)]
        group: Option<String>,
    },
    Affine {
        #[arg(long = "from-semibrace")]
        from_semibrace: String,
    },
}

#[derive(Args, Debug)]
pub struct SolutionArgs {
    /// Solution JSON file to check.
    #[arg(long, conflicts_with = "semibrace")]
    pub check: Option<PathBuf>,
    /// Derive the solution from a semi-brace.
    #[arg(long)]
    pub semibrace: Option<String>,
    /// Print the solution as JSON.
    #[arg(long)]
    pub emit: bool,
}

#[derive(Args, Debug)]
pub struct ComposeArgs {
    #[arg(long)]
    pub phi: String,
    #[arg(long)]
    pub omega: String,
    #[arg(long)]
    pub group: Option<String>,
    /// Write the composed structure here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TransportArgs {
    #[command(flatten)]
    pub sigma: SigmaArg,
    /// Relabeling as a JSON array of images, e.g. [0,5,4,3,2,1].
    #[arg(long)]
    pub perm: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EquivArgs {
    /// JSON lines of affine structures, as printed by `enumerate`.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value = "all")]
    pub kind: Kind,
    /// Print equivalence classes instead of structures.
    #[arg(long)]
    pub census: bool,
    /// Census cache directory (default: $AFFINE_LAB_CACHE, else no cache).
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MatchedPair {
    #[arg(long)]
    pub matched: String,
    #[arg(long = "sigma-s")]
    pub sigma_s: String,
    #[arg(long = "sigma-t")]
    pub sigma_t: String,
}

#[derive(Subcommand, Debug)]
pub enum Product {
    /// Zappa-Szep system of a cancellative affine structure.
    Zappa {
        #[command(flatten)]
        sigma: SigmaArg,
    },
    /// The bowtie group of a matched system.
    Bowtie {
        #[arg(long)]
        matched: String,
    },
    /// Product affine structure from a matched system and two factors.
    Affine {
        #[command(flatten)]
        pair: MatchedPair,
        #[arg(long)]
        assert: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matched product of two semi-braces.
    Matched {
        #[arg(long)]
        matched: String,
        #[arg(long = "semibrace-s")]
        semibrace_s: String,
        #[arg(long = "semibrace-t")]
        semibrace_t: String,
        #[arg(long)]
        assert: bool,
    },
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub pair: MatchedPair,
}

#[derive(Subcommand, Debug)]
pub enum Catalog {
    List,
    Run {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        id: Option<String>,
        #[arg(long, requires = "id")]
        param: Option<usize>,
        #[arg(long)]
        all: bool,
        /// Exit 1 when any expectation differs.
        #[arg(long)]
        assert: bool,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Text and JSON renderings of one command's result.
struct Outcome {
    text: String,
    value: Value,
    code: i32,
    /// Output already written by the command itself.
    raw: bool,
}

impl Outcome {
    fn new(text: String, value: Value, ok: bool) -> Self {
        Outcome {
            text,
            value,
            code: if ok { 0 } else { 1 },
            raw: false,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Violation(_) | Error::Inconsistent(_) => 1,
        Error::Input(_) | Error::Bound { .. } | Error::Io(_) | Error::Json(_) => 2,
    }
}

/// Parses `args` and runs the command, writing the report to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        // A second in-process configuration attempt keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match dispatch(&cli, out, err) {
        Ok(outcome) => {
            let written = if outcome.raw {
                Ok(())
            } else if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&outcome.value).unwrap_or_default())
            } else {
                write!(out, "{}", outcome.text)
            };
            if written.is_err() {
                return 2;
            }
            outcome.code
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "ok": false, "error": e.to_string(), "exit": code }));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Group(a) => group_cmd(a),
        Command::Verify(v) => verify_cmd(v),
        Command::Classify(c) => classify_cmd(c),
        Command::Derive(d) => derive_cmd(d),
        Command::Solution(s) => solution_cmd(s),
        Command::Compose(c) => compose_cmd(c),
        Command::Transport(t) => transport_cmd(t),
        Command::EquivClasses(e) => equiv_cmd(e),
        Command::Enumerate(e) => enumerate_cmd(e, cli.seed, out, err),
        Command::Product(p) => product_cmd(p),
        Command::Compare(c) => compare_cmd(c),
        Command::Catalog(c) => catalog_cmd(c),
    }
}

// ---- loading -------------------------------------------------------------

/// An affine JSON document, or a bare `sigma` table.
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum SigmaInput {
    File(AffineFile),
    Table(Vec<Vec<usize>>),
}

fn family_arg(spec: &str) -> Result<(&str, &str)> {
    spec.split_once(':')
        .ok_or_else(|| Error::input(format!("expected a file or NAME:ARG, got {spec:?}")))
}

fn parse_order(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::input(format!("expected an integer, got {s:?}")))
}

/// Resolves a family spec such as `sign-flip:6` or `trivial:S3`.
pub fn affine_family(spec: &str) -> Result<AffineStructure> {
    let (name, arg) = family_arg(spec)?;
    match name {
        "trivial" => Ok(families::trivial(&io::load_group(arg)?)),
        "inverse-translation" => Ok(families::inverse_translation(&io::load_group(arg)?)),
        "conjugation" => {
            let g = io::load_group(arg)?;
            families::conjugation(&g, &SelfMap::identity(g.order()))
        }
        "sign-flip" => families::sign_flip(parse_order(arg)?),
        "parity-twist" => families::parity_twist(parse_order(arg)?),
        "omega-squared" => Ok(catalog::omega_squared_direct(&families::parity_twist(parse_order(arg)?)?)),
        _ => Err(Error::input(format!("unknown affine family {name:?}"))),
    }
}

fn load_sigma(spec: &str, group: Option<&str>) -> Result<AffineStructure> {
    let path = Path::new(spec);
    if !path.is_file() {
        return affine_family(spec);
    }
    match io::read_json::<SigmaInput>(path)? {
        SigmaInput::File(mut f) => {
            if let Some(g) = group {
                f.group = GroupRef::inline(&io::load_group(g)?);
            }
            f.to_affine()
        }
        SigmaInput::Table(rows) => {
            let g = group.ok_or_else(|| Error::input("a bare sigma table needs --group"))?;
            AffineStructure::new(io::load_group(g)?, &rows)
        }
    }
}

fn load_semibrace(spec: &str) -> Result<SemiBrace> {
    let path = Path::new(spec);
    if path.is_file() {
        return io::load_semibrace(path);
    }
    let (name, arg) = family_arg(spec)?;
    match name {
        "trivial" => Ok(SemiBrace::trivial(&io::load_group(arg)?)),
        "almost-trivial" => Ok(SemiBrace::almost_trivial(&io::load_group(arg)?)),
        _ => SemiBrace::from_affine(&affine_family(spec)?),
    }
}

fn load_matched(spec: &str) -> Result<MatchedSystem> {
    let path = Path::new(spec);
    if path.is_file() {
        return io::load_matched(path);
    }
    let (name, arg) = family_arg(spec)?;
    match name {
        "negation" => negation_system(parse_order(arg)?),
        "conjugation-id" => {
            let g = io::load_group(arg)?;
            conjugation_system(&g, &SelfMap::identity(g.order()))
        }
        "conjugation-zero" => {
            let g = io::load_group(arg)?;
            conjugation_system(&g, &SelfMap::constant(g.order(), g.identity()))
        }
        _ => Err(Error::input(format!("unknown matched system {name:?}"))),
    }
}

fn write_out(path: &Option<PathBuf>, value: &impl Serialize) -> Result<()> {
    if let Some(p) = path {
        io::write_json(p, value)?;
    }
    Ok(())
}

// ---- rendering -----------------------------------------------------------

fn labels(g: &FiniteGroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x)).collect()
}

fn tuple(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn label_tuple(ls: &[String]) -> String {
    format!("({})", ls.join(", "))
}

/// Symbolic labels for a witness whose entries live in `carriers`.
fn witness_value(v: &Violation, carriers: &[&FiniteGroup]) -> (String, Value) {
    let ls: Vec<String> = v
        .witness
        .iter()
        .enumerate()
        .map(|(i, &x)| carriers.get(i).or(carriers.last()).map_or(x.to_string(), |g| g.label(x)))
        .collect();
    let text = format!("{} fails at {} = {}", v.property, tuple(&v.witness), label_tuple(&ls));
    let value = json!({ "property": v.property, "witness": v.witness, "labels": ls });
    (text, value)
}

fn verdict(what: &str, result: std::result::Result<(), Violation>, carriers: &[&FiniteGroup]) -> Outcome {
    match result {
        Ok(()) => Outcome::new(format!("ok: {what}\n"), json!({ "ok": true, "what": what }), true),
        Err(v) => {
            let (text, value) = witness_value(&v, carriers);
            Outcome::new(
                format!("FAIL: {what}: {text}\n"),
                json!({ "ok": false, "what": what, "violation": value }),
                false,
            )
        }
    }
}

/// Carriers of each witness position of a matched-system property.
fn matched_carriers<'a>(m: &'a MatchedSystem, p: Property) -> Vec<&'a FiniteGroup> {
    let (s, t) = (m.s(), m.t());
    match p {
        Property::AlphaHomomorphism => vec![t, t],
        Property::BetaHomomorphism => vec![s, s],
        Property::MatchedAlpha => vec![s, s, t],
        Property::MatchedBeta => vec![s, t, t],
        Property::AlphaAdditiveAutomorphism => vec![t, s, s],
        Property::BetaAdditiveAutomorphism => vec![s, t, t],
        Property::LambdaAlphaCompatibility | Property::LambdaBetaCompatibility => vec![s, t],
        Property::ZappaActionProduct | Property::ZappaCoactionComposition => vec![t, s, s],
        Property::ZappaActionComposition | Property::ZappaCoactionProduct => vec![t, t, s],
        _ => vec![],
    }
}

fn matched_verdict(what: &str, m: &MatchedSystem, r: std::result::Result<(), Violation>) -> Outcome {
    let carriers = r
        .as_ref()
        .err()
        .map(|v| matched_carriers(m, v.property))
        .unwrap_or_default();
    verdict(what, r, &carriers)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Text lines `key: value` and the matching JSON object.
#[derive(Default)]
struct Fields {
    text: String,
    map: serde_json::Map<String, Value>,
}

impl Fields {
    fn add(&mut self, key: &str, text: impl std::fmt::Display, value: impl Serialize) -> &mut Self {
        let _ = writeln!(self.text, "{key}: {text}");
        self.map.insert(key.replace(' ', "_"), json!(value));
        self
    }

    fn flag(&mut self, key: &str, b: bool) -> &mut Self {
        self.add(key, yes(b), b)
    }

    fn finish(self, ok: bool) -> Outcome {
        Outcome::new(self.text, Value::Object(self.map), ok)
    }
}

// ---- commands ------------------------------------------------------------

fn group_cmd(a: &GroupArgs) -> Result<Outcome> {
    let g = io::load_group(&a.group)?;
    if a.emit {
        let file = GroupFile::from_group(&g);
        return Ok(Outcome::new(io::to_json_string(&file)?, json!(file), true));
    }
    let mut f = Fields::default();
    f.add("name", g.name(), g.name())
        .add("order", g.order(), g.order())
        .flag("abelian", g.is_abelian());
    let iso = identify(&g);
    f.add("type", &iso, &iso)
        .add("exponent", g.exponent(), g.exponent())
        .add("center size", g.center().len(), g.center().len());
    let gens = g.generators();
    f.add("generators", label_tuple(&labels(&g, &gens)), &gens);
    if g.order() <= DEFAULT_AUTOMORPHISM_BOUND {
        let n = automorphisms(&g)?.len();
        f.add("automorphisms", n, n);
    } else {
        f.add("automorphisms", "skipped (order above bound)", Value::Null);
    }
    Ok(f.finish(true))
}

fn verify_cmd(v: &Verify) -> Result<Outcome> {
    match v {
        Verify::Group { group } => {
            // Loading checks the group axioms.
            match io::load_group(group) {
                Ok(g) => Ok(verdict(&format!("group {}", g.name()), Ok(()), &[])),
                Err(Error::Violation(v)) => Ok(verdict("group", Err(v), &[])),
                Err(e) => Err(e),
            }
        }
        Verify::Affine(s) => {
            let sigma = load_sigma(&s.sigma, s.group.as_deref())?;
            let g = sigma.group().clone();
            Ok(verdict(&format!("affine structure on {}", g.name()), sigma.verify(), &[&g]))
        }
        Verify::Semibrace { semibrace } => {
            let b = load_semibrace(semibrace)?;
            let g = b.mul().clone();
            Ok(verdict(&format!("semi-brace on {}", g.name()), b.verify(), &[&g]))
        }
        Verify::Matched { matched } => {
            let m = load_matched(matched)?;
            Ok(matched_verdict(
                &format!("matched system {} x {}", m.s().name(), m.t().name()),
                &m,
                m.verify(),
            ))
        }
    }
}

fn classify_affine(sigma: &AffineStructure) -> Result<Fields> {
    let mut f = Fields::default();
    let flags = sigma.classify();
    f.add("group", sigma.group().name(), sigma.group().name())
        .flag("anti-homomorphism", flags.anti_hom)
        .flag("affine identity", flags.affine)
        .flag("cancellative", flags.cancellative)
        .flag("groupal", flags.groupal)
        .flag("abelian", flags.abelian);
    if flags.valid() {
        let b = SemiBrace::from_affine(sigma)?;
        classify_semibrace_into(&mut f, &b)?;
    }
    Ok(f)
}

fn classify_semibrace_into(f: &mut Fields, b: &SemiBrace) -> Result<()> {
    let flags = b.classify();
    f.flag("semi-brace", flags.semibrace)
        .flag("left cancellative", flags.left_cancellative)
        .flag("skew brace", flags.skew)
        .flag("brace", flags.brace);
    if flags.skew {
        f.flag("biskew", b.is_biskew()?)
            .flag("lambda homomorphic", b.is_lambda_homomorphic()?);
        let add = b.additive_report();
        let name = add.iso_type.as_ref().map_or("-".to_string(), |t| t.to_string());
        f.add("additive group", name, &add.iso_type);
    }
    let lr = b.lambda_rho_report();
    f.add("lambda/rho", format!(
        "lambda additive endo {}, lambda hom {}, lambda bijective {}, rho anti-hom {}, rho bijective {}",
        yes(lr.lambda_additive_endomorphism),
        yes(lr.lambda_homomorphism),
        yes(lr.lambda_bijective),
        yes(lr.rho_anti_homomorphism),
        yes(lr.rho_bijective)
    ), lr);
    let r = SetSolution::from_semibrace(b).report();
    f.add("solution", format!(
        "ybe {}, left non-degenerate {}, right non-degenerate {}, bijective {}, involutive {}",
        yes(r.ybe),
        yes(r.left_nondegenerate),
        yes(r.right_nondegenerate),
        yes(r.bijective),
        yes(r.involutive)
    ), r);
    Ok(())
}

fn classify_cmd(c: &Classify) -> Result<Outcome> {
    match c {
        Classify::Affine(s) => {
            let sigma = load_sigma(&s.sigma, s.group.as_deref())?;
            Ok(classify_affine(&sigma)?.finish(true))
        }
        Classify::Semibrace { semibrace } => {
            let b = load_semibrace(semibrace)?;
            b.verify()?;
            let mut f = Fields::default();
            f.add("group", b.mul().name(), b.mul().name());
            classify_semibrace_into(&mut f, &b)?;
            Ok(f.finish(true))
        }
    }
}

fn emit(value: &impl Serialize) -> Result<Outcome> {
    Ok(Outcome::new(io::to_json_string(value)?, json!(value), true))
}

fn derive_cmd(d: &Derive) -> Result<Outcome> {
    match d {
        Derive::Semibrace { from_affine, group } => {
            let sigma = load_sigma(from_affine, group.as_deref())?;
            emit(&SemiBraceFile::from_semibrace(&SemiBrace::from_affine(&sigma)?))
        }
        Derive::Affine { from_semibrace } => {
            let b = load_semibrace(from_semibrace)?;
            b.verify()?;
            emit(&AffineFile::from_affine(&b.to_affine()))
        }
    }
}

fn solution_cmd(s: &SolutionArgs) -> Result<Outcome> {
    let (r, carrier) = match (&s.check, &s.semibrace) {
        (Some(p), _) => (io::load_solution(p)?, None),
        (None, Some(b)) => {
            let b = load_semibrace(b)?;
            b.verify()?;
            (SetSolution::from_semibrace(&b), Some(b.mul().clone()))
        }
        (None, None) => return Err(Error::input("give --check FILE or --semibrace SPEC")),
    };
    if s.emit {
        return emit(&SolutionFile::from_solution(&r));
    }
    let rep = r.report();
    let mut f = Fields::default();
    f.add("size", r.size(), r.size());
    match r.check_ybe() {
        Ok(()) => {
            f.flag("ybe", true);
        }
        Err(v) => {
            let carriers: Vec<&FiniteGroup> = carrier.iter().collect();
            let (text, value) = witness_value(&v, &carriers);
            f.add("ybe", format!("no, {text}"), value);
        }
    }
    f.flag("left non-degenerate", rep.left_nondegenerate)
        .flag("right non-degenerate", rep.right_nondegenerate)
        .flag("bijective", rep.bijective)
        .flag("involutive", rep.involutive)
        .flag("cubic", rep.cubic);
    Ok(f.finish(rep.ybe))
}

fn compose_cmd(c: &ComposeArgs) -> Result<Outcome> {
    let phi = load_sigma(&c.phi, c.group.as_deref())?;
    let omega = load_sigma(&c.omega, c.group.as_deref())?;
    phi.verify()?;
    omega.verify()?;
    let g = phi.group().clone();
    let report = composition_conditions(&phi, &omega)?;
    let mut f = Fields::default();
    let cond = |w: &Option<Vec<usize>>, failures: usize| match w {
        None => "holds".to_string(),
        Some(w) => format!("fails on {failures} pairs, first {} = {}", tuple(w), label_tuple(&labels(&g, w))),
    };
    f.add("c1", cond(&report.c1, report.c1_failures), (&report.c1, report.c1_failures))
        .add("c2", cond(&report.c2, report.c2_failures), (&report.c2, report.c2_failures));
    if report.both_cancellative {
        f.add(
            "c2'",
            cond(&report.c2_prime, report.c2_prime_failures),
            (&report.c2_prime, report.c2_prime_failures),
        );
    }
    if !report.holds() {
        return Ok(f.finish(false));
    }
    let sigma = compose_affine(&phi, &omega)?;
    let flags = sigma.classify();
    f.flag("composed valid", flags.valid())
        .flag("composed cancellative", flags.cancellative)
        .flag("composed groupal", flags.groupal)
        .flag("composed abelian", flags.abelian);
    write_out(&c.out, &AffineFile::from_affine(&sigma))?;
    Ok(f.finish(true))
}

fn transport_cmd(t: &TransportArgs) -> Result<Outcome> {
    let sigma = load_sigma(&t.sigma.sigma, t.sigma.group.as_deref())?;
    let images: Vec<usize> = serde_json::from_str(&t.perm)?;
    let p = Permutation::new(images)?;
    let moved = sigma.transport_by(&p)?;
    let file = AffineFile::from_affine(&moved);
    write_out(&t.out, &file)?;
    let ok = moved.classify() == sigma.classify();
    let mut f = Fields::default();
    f.flag("flags preserved", ok);
    if t.out.is_none() {
        f.add("sigma", serde_json::to_string(&file.sigma)?, &file.sigma);
    }
    Ok(f.finish(ok))
}

fn read_lines(path: &Path) -> Result<Vec<AffineStructure>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .filter_map(|l| serde_json::from_str::<AffineFile>(l).ok().map(|f| f.to_affine()))
        .collect()
}

fn equiv_cmd(e: &EquivArgs) -> Result<Outcome> {
    let list = read_lines(&e.input)?;
    if list.is_empty() {
        return Err(Error::input("no affine structures in input"));
    }
    let classes = equivalence_classes(&list)?;
    let mut text = format!("{} structures, {} classes\n", list.len(), classes.len());
    let mut values = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        let rep = c.representative.rows();
        let _ = writeln!(text, "class {i}: size {}, representative {}", c.members.len(), serde_json::to_string(&rep)?);
        values.push(json!({ "size": c.members.len(), "members": c.members, "representative": rep }));
    }
    Ok(Outcome::new(
        text,
        json!({ "structures": list.len(), "classes": values }),
        true,
    ))
}

#[derive(Serialize)]
struct EnumLine<'a> {
    schema: &'static str,
    group: &'a GroupRef,
    sigma: Vec<Vec<usize>>,
    flags: crate::affine::AffineFlags,
}

fn enumerate_cmd(e: &EnumerateArgs, seed: Option<u64>, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    let g = io::load_group(&e.group)?;
    let group_ref = if Path::new(&e.group).is_file() {
        GroupRef::inline(&g)
    } else {
        GroupRef::Spec(e.group.clone())
    };
    let mut lines = String::new();
    if e.census {
        let dir = cache_dir(e.cache_dir.as_deref());
        let (census, hit) = census_cached(&g, e.kind, dir.as_deref())?;
        let header = json!({
            "schema": "affine-lab/census/1",
            "group": group_ref,
            "kind": e.kind,
            "structures": census.structures,
            "classes": census.class_count(),
        });
        lines.push_str(&serde_json::to_string(&header)?);
        lines.push('\n');
        for c in &census.classes {
            lines.push_str(&serde_json::to_string(c)?);
            lines.push('\n');
        }
        let _ = writeln!(
            err,
            "{}: {} structures, {} classes{}",
            g.name(),
            census.structures,
            census.class_count(),
            if hit { " (cached)" } else { "" }
        );
    } else {
        for s in enumerate_seeded(&g, e.kind, seed)? {
            let line = EnumLine {
                schema: io::AFFINE_SCHEMA,
                group: &group_ref,
                sigma: s.rows(),
                flags: s.classify(),
            };
            lines.push_str(&serde_json::to_string(&line)?);
            lines.push('\n');
        }
    }
    // JSON lines regardless of --json.
    out.write_all(lines.as_bytes())?;
    Ok(Outcome {
        raw: true,
        ..Outcome::new(String::new(), Value::Null, true)
    })
}

fn sided(f: &mut Fields, key: &str, w: &SidedWitness, alpha: &[&FiniteGroup], beta: &[&FiniteGroup]) {
    let render = |side: &Option<Vec<usize>>, carriers: &[&FiniteGroup]| match side {
        None => "holds".to_string(),
        Some(x) => {
            let ls: Vec<String> = x.iter().zip(carriers).map(|(&i, g)| g.label(i)).collect();
            format!("fails at {} = {}", tuple(x), label_tuple(&ls))
        }
    };
    f.add(
        key,
        format!("alpha side {}; beta side {}", render(&w.alpha, alpha), render(&w.beta, beta)),
        w,
    );
}

fn product_cmd(p: &Product) -> Result<Outcome> {
    match p {
        Product::Zappa { sigma } => {
            let sigma = load_sigma(&sigma.sigma, sigma.group.as_deref())?;
            sigma.verify()?;
            let z = ZappaSystem::from_affine(&sigma)?;
            let g = sigma.group().clone();
            let mut f = Fields::default();
            let verified = z.verify();
            f.flag("zappa axioms", verified.is_ok());
            if let Err(v) = &verified {
                let (text, value) = witness_value(v, &[&g]);
                f.add("violation", text, value);
            }
            let back = z.to_affine()?;
            let round_trip = back == sigma;
            f.flag("round trip", round_trip);
            let product = z.product_group()?;
            let iso = identify(&product);
            f.add("product group", &iso, &iso);
            Ok(f.finish(verified.is_ok() && round_trip))
        }
        Product::Bowtie { matched } => {
            let m = load_matched(matched)?;
            if let Err(v) = m.verify() {
                return Ok(matched_verdict("matched system", &m, Err(v)));
            }
            let g = m.bowtie_group()?;
            let mut f = Fields::default();
            let iso = identify(&g);
            f.add("bowtie group", &iso, &iso).add("order", g.order(), g.order());
            let zappa = m.check_zappa_isomorphism().is_ok();
            f.flag("isomorphic to zappa product", zappa);
            Ok(f.finish(zappa))
        }
        Product::Affine { pair, assert, out } => {
            let m = load_matched(&pair.matched)?;
            let ss = load_sigma(&pair.sigma_s, None)?;
            let st = load_sigma(&pair.sigma_t, None)?;
            let cond = m.product_conditions(&ss, &st)?;
            let (s, t) = (m.s().clone(), m.t().clone());
            let mut f = Fields::default();
            sided(&mut f, "condition I", &cond.condition_i, &[&t], &[&s]);
            sided(&mut f, "condition II", &cond.condition_ii, &[&t, &s], &[&s, &t]);
            sided(&mut f, "condition III", &cond.condition_iii, &[&s, &s, &t, &t], &[&s, &s, &t, &t]);
            let product = m.product_sigma(&ss, &st)?;
            let valid = product.is_valid();
            f.flag("product valid", valid);
            let holds = cond.holds();
            if holds != valid && ss.is_cancellative() && st.is_cancellative() {
                return Err(Error::Inconsistent(
                    "conditions and product verification disagree on cancellative factors".into(),
                ));
            }
            if holds {
                let sigma = m.product_affine(&ss, &st)?;
                let flags = sigma.classify();
                f.flag("cancellative", flags.cancellative)
                    .flag("groupal", flags.groupal)
                    .flag("abelian", flags.abelian);
                let b = SemiBrace::from_affine(&sigma)?;
                f.flag("skew brace", b.is_skew());
                if b.is_skew() {
                    let add = identify(&b.additive_group()?);
                    f.add("additive group", &add, &add);
                }
                let mul = identify(b.mul());
                f.add("multiplicative group", &mul, &mul);
                write_out(out, &AffineFile::from_affine(&sigma))?;
            }
            Ok(f.finish(holds || !assert))
        }
        Product::Matched {
            matched,
            semibrace_s,
            semibrace_t,
            assert,
        } => {
            let m = load_matched(matched)?;
            let bs = load_semibrace(semibrace_s)?;
            let bt = load_semibrace(semibrace_t)?;
            let mut f = Fields::default();
            let automorphisms = m.check_additive_automorphisms(&bs, &bt);
            let lambda = m.check_lambda_compatibility(&bs, &bt);
            for (key, r) in [("additive automorphisms", &automorphisms), ("lambda compatibility", &lambda)] {
                match r {
                    Ok(()) => {
                        f.flag(key, true);
                    }
                    Err(v) => {
                        let (text, value) = witness_value(v, &matched_carriers(&m, v.property));
                        f.add(key, format!("no, {text}"), value);
                    }
                }
            }
            let ok = automorphisms.is_ok() && lambda.is_ok();
            if ok {
                let mp = m.matched_product_semibrace(&bs, &bt)?;
                f.flag("closed formula matches", mp.sigma_bar_matches)
                    .flag("skew brace", mp.semibrace.is_skew());
                if mp.semibrace.is_skew() {
                    let add = identify(&mp.semibrace.additive_group()?);
                    f.add("additive group", &add, &add);
                }
            }
            Ok(f.finish(ok || !assert))
        }
    }
}

fn compare_cmd(c: &CompareArgs) -> Result<Outcome> {
    let m = load_matched(&c.pair.matched)?;
    let ss = load_sigma(&c.pair.sigma_s, None)?;
    let st = load_sigma(&c.pair.sigma_t, None)?;
    let cmp = m.compare_constructions(&ss, &st)?;
    let mut f = Fields::default();
    f.flag("sums coincide", cmp.sums_coincide)
        .flag("isomorphic", cmp.isomorphism.is_some());
    if let Some(iso) = &cmp.isomorphism {
        f.add("isomorphism", serde_json::to_string(iso)?, iso);
    }
    for (key, b) in [("product", &cmp.product), ("matched", &cmp.matched)] {
        if b.is_skew() {
            let add = identify(&b.additive_group()?);
            f.add(&format!("{key} additive group"), &add, &add);
        }
    }
    Ok(f.finish(true))
}

fn catalog_cmd(c: &Catalog) -> Result<Outcome> {
    match c {
        Catalog::List => {
            let mut text = String::new();
            let mut values = Vec::new();
            for e in catalog::entries() {
                let param = e.param.map(|p| format!(" [{}={}]", p.name, p.default)).unwrap_or_default();
                let _ = writeln!(text, "{:<4} {}{}  ({})", e.id, e.title, param, e.anchor);
                values.push(json!({ "id": e.id, "title": e.title, "anchor": e.anchor, "param": e.param }));
            }
            Ok(Outcome::new(text, json!(values), true))
        }
        Catalog::Run {
            id,
            param,
            all,
            assert,
            report,
        } => {
            let rep = if *all {
                catalog::run_all()?
            } else {
                let id = id.as_deref().ok_or_else(|| Error::input("give --id or --all"))?;
                catalog::CatalogReport::new(vec![catalog::run(id, *param)?])
            };
            write_out(report, &rep)?;
            let mut text = String::new();
            for e in &rep.entries {
                let param = e.param.as_ref().map(|(k, v)| format!(" [{k}={v}]")).unwrap_or_default();
                let status = if e.pass { "pass" } else { "FAIL" };
                let _ = writeln!(text, "{}{} {}: {} checks, {}", e.id, param, e.title, e.checks.len(), status);
                for f in e.failures() {
                    let _ = writeln!(
                        text,
                        "  {}: expected {}, got {} ({})",
                        f.property, f.expected, f.actual, f.anchor
                    );
                }
            }
            let passed = rep.entries.iter().filter(|e| e.pass).count();
            let _ = writeln!(text, "{passed}/{} entries pass", rep.entries.len());
            Ok(Outcome::new(text, json!(rep), rep.pass || !assert))
        }
    }
}
