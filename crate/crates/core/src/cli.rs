//! The `qf` command line.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith;
use crate::classfield::{self, ClassPolynomial, ClassPolynomialCache};
use crate::classgroup::{self, ClassGroup};
use crate::error::Error;
use crate::forms::{enumerate_reduced, Discriminant, Form};
use crate::isotropy;
use crate::represent::{self, MultipleSearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    UsageError,
    DomainError,
    BoundExhausted,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::UsageError => 1,
            Status::DomainError => 2,
            Status::BoundExhausted => 3,
        }
    }
}

/// Outcome of one invocation: a status, a JSON payload and its human
/// rendering.
#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub human: String,
    pub json: bool,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Whether the rendering belongs on stderr.
    pub fn is_error(&self) -> bool {
        matches!(self.status, Status::UsageError | Status::DomainError)
    }

    /// What the binary prints: pretty JSON under `--json`, text otherwise.
    pub fn render(&self) -> String {
        if self.json {
            serde_json::to_string_pretty(&self.payload).expect("payload serializes")
        } else {
            self.human.clone()
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qf",
    version,
    about = "Positive-definite binary quadratic forms"
)]
struct Cli {
    /// Print the JSON payload instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DiscArg {
    /// Negative discriminant, b^2 - 4ac.
    #[arg(long = "disc", allow_negative_numbers = true)]
    disc: i64,
}

#[derive(Args, Debug)]
struct FormArg {
    /// A form written a,b,c.
    #[arg(long, allow_hyphen_values = true)]
    form: String,
}

#[derive(Args, Debug)]
struct CacheArg {
    /// Class-polynomial cache file; overrides QF_CACHE.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a form and print the transforming matrix.
    Reduce(FormArg),
    /// List the reduced forms of a discriminant.
    Forms(DiscArg),
    /// Class group structure and element orders.
    Group(DiscArg),
    /// Compose two forms of one discriminant.
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        f1: String,
        #[arg(long, allow_hyphen_values = true)]
        f2: String,
    },
    /// Order of a form's class.
    Order(FormArg),
    /// A nonzero value represented by every form (odd class number).
    Witness(DiscArg),
    /// Find x, y with f(x, y) = m.
    Represents {
        #[command(flatten)]
        form: FormArg,
        #[arg(long, allow_negative_numbers = true)]
        value: BigInt,
        /// Require gcd(x, y) = 1.
        #[arg(long)]
        proper: bool,
    },
    /// Values up to a bound represented by every form of the given
    /// discriminants.
    Intersect {
        #[arg(long = "disc", allow_negative_numbers = true, required = true)]
        disc: Vec<i64>,
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
    /// Decide whether the forms of a discriminant share a nonzero value.
    Trivial(DiscArg),
    /// Local representability at every place.
    Local {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        value: BigInt,
    },
    /// Smallest k with neither k nor m*k square and m*k represented by one
    /// form (--form) or jointly by two (--f1, --f2).
    Multiple {
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["f1", "f2"])]
        form: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "f2")]
        f1: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "f1")]
        f2: Option<String>,
        #[arg(long)]
        value: BigInt,
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
    /// Hilbert class polynomial of a fundamental discriminant.
    Hcp {
        #[command(flatten)]
        disc: DiscArg,
        #[command(flatten)]
        cache: CacheArg,
    },
    /// How a prime decomposes in the Hilbert class field.
    Split {
        #[command(flatten)]
        disc: DiscArg,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        cache: CacheArg,
    },
    /// Check the class-order / splitting correspondence for one prime or for
    /// every admissible prime below --bound.
    #[command(name = "verify-thm8")]
    VerifyThm8 {
        #[command(flatten)]
        disc: DiscArg,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = 2_000)]
        bound: u64,
        #[command(flatten)]
        cache: CacheArg,
    },
    /// Reproduce the worked examples for discriminants -20, -23, -47 and the
    /// forms 2x^2 + bxy + 11y^2.
    #[command(name = "verify-paper")]
    VerifyPaper,
}

type Outcome = Result<(Status, Value, String), Error>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Ok,
                _ => Status::UsageError,
            };
            let text = e.render().to_string();
            let json = argv.iter().any(|a| a == "--json");
            return CommandResult {
                status,
                payload: json!({ "status": status, "message": text.trim_end() }),
                human: text.trim_end().to_string(),
                json,
            };
        }
    };
    let json = cli.json;
    let (status, payload, human) = match dispatch(cli.command) {
        Ok(r) => r,
        Err(e) => {
            let status = match e {
                Error::Parse(..) => Status::UsageError,
                _ => Status::DomainError,
            };
            let msg = format!("error: {e}");
            (
                status,
                json!({ "status": status, "error": e.to_string() }),
                msg,
            )
        }
    };
    CommandResult {
        status,
        payload,
        human,
        json,
    }
}

fn disc(v: i64) -> Result<Discriminant, Error> {
    Discriminant::new(v)
}

fn form(s: &str) -> Result<Form, Error> {
    s.parse()
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("payload serializes")
}

fn open_cache(flag: &Option<PathBuf>) -> Result<Option<ClassPolynomialCache>, Error> {
    match flag {
        Some(p) => ClassPolynomialCache::open(p).map(Some),
        None => ClassPolynomialCache::from_env().transpose(),
    }
}

fn class_polynomial(d: &Discriminant, cache: &Option<PathBuf>) -> Result<ClassPolynomial, Error> {
    match open_cache(cache)? {
        Some(mut c) => c.get_or_compute(d),
        None => classfield::hilbert_class_polynomial(d),
    }
}

fn ok(payload: Value, human: String) -> Outcome {
    Ok((Status::Ok, payload, human))
}

fn witness_json(w: &Option<(BigInt, BigInt)>) -> Value {
    match w {
        Some((x, y)) => json!([x.to_string(), y.to_string()]),
        None => Value::Null,
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Reduce(FormArg { form: s }) => {
            let f = form(&s)?;
            let (r, m) = f.reduce();
            let mat: Vec<Vec<String>> =
                m.0.iter()
                    .map(|row| row.iter().map(|x| x.to_string()).collect())
                    .collect();
            ok(
                json!({ "form": f, "discriminant": f.disc().to_string(), "reduced": r, "matrix": mat }),
                r.to_string(),
            )
        }
        Command::Forms(DiscArg { disc: v }) => {
            let d = disc(v)?;
            let forms = enumerate_reduced(&d);
            let human = forms
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            ok(
                json!({ "discriminant": v, "class_number": forms.len(), "forms": forms }),
                human,
            )
        }
        Command::Group(DiscArg { disc: v }) => {
            let g = ClassGroup::new(&disc(v)?)?;
            let elements: Vec<Value> = (0..g.class_number())
                .map(|i| json!({ "form": g.elements()[i], "order": g.order_of(i) }))
                .collect();
            let structure = if g.invariant_factors().is_empty() {
                "1".to_string()
            } else {
                g.invariant_factors()
                    .iter()
                    .map(|n| format!("Z/{n}"))
                    .collect::<Vec<_>>()
                    .join(" x ")
            };
            let mut human = format!("C({v}) = {structure}, h = {}\n", g.class_number());
            for i in 0..g.class_number() {
                human += &format!("{}  order {}\n", g.elements()[i], g.order_of(i));
            }
            ok(
                json!({
                    "discriminant": v,
                    "class_number": g.class_number(),
                    "invariant_factors": g.invariant_factors(),
                    "genus_count": g.genus_count(),
                    "elements": elements,
                }),
                human.trim_end().to_string(),
            )
        }
        Command::Compose { f1, f2 } => {
            let (f, g) = (form(&f1)?, form(&f2)?);
            let c = classgroup::compose(&f, &g)?;
            ok(json!({ "f1": f, "f2": g, "composition": c }), c.to_string())
        }
        Command::Order(FormArg { form: s }) => {
            let f = form(&s)?;
            let n = classgroup::order(&f)?;
            ok(json!({ "form": f, "order": n }), n.to_string())
        }
        Command::Witness(DiscArg { disc: v }) => {
            let d = disc(v)?;
            let w = classgroup::odd_witness(&d)?;
            let per_form: Vec<Value> = enumerate_reduced(&d)
                .iter()
                .map(|f| json!({ "form": f, "witness": witness_json(&represent::represents(f, &w)) }))
                .collect();
            ok(
                json!({ "discriminant": v, "witness": w.to_string(), "representations": per_form }),
                w.to_string(),
            )
        }
        Command::Represents {
            form: FormArg { form: s },
            value,
            proper,
        } => {
            let f = form(&s)?;
            let w = if proper {
                represent::properly_represents(&f, &value)
            } else {
                represent::represents(&f, &value)
            };
            let human = match &w {
                Some((x, y)) => format!("{f} represents {value} at ({x}, {y})"),
                None => format!(
                    "{f} does not {}represent {value}",
                    if proper { "properly " } else { "" }
                ),
            };
            ok(
                json!({
                    "form": f,
                    "value": value.to_string(),
                    "proper": proper,
                    "represented": w.is_some(),
                    "witness": witness_json(&w),
                }),
                human,
            )
        }
        Command::Intersect { disc: ds, bound } => {
            let mut forms = Vec::new();
            for v in ds {
                forms.extend(enumerate_reduced(&disc(v)?));
            }
            let r = represent::rep_set(&forms, bound)?;
            let shown: Vec<String> = r.values.iter().take(20).map(|v| v.to_string()).collect();
            let more = if r.values.len() > 20 { ", ..." } else { "" };
            let human = format!(
                "{} common values <= {bound}: {}{more}",
                r.values.len(),
                shown.join(", ")
            );
            ok(to_value(&r), human)
        }
        Command::Trivial(DiscArg { disc: v }) => {
            let verdict = isotropy::trivial_intersection(&disc(v)?)?;
            let human = if verdict.trivial {
                let c = verdict.certificate.as_ref();
                match c {
                    Some(c) => format!(
                        "trivial: forms {} and {} share no nonzero value (anisotropic at p = {})",
                        c.pair[0],
                        c.pair[1],
                        c.prime.map(|p| p.to_string()).unwrap_or_default()
                    ),
                    None => "trivial".into(),
                }
            } else {
                format!(
                    "nontrivial: {} is represented by every form",
                    verdict.witness.clone().unwrap_or_default()
                )
            };
            ok(to_value(&verdict), human)
        }
        Command::Local {
            form: FormArg { form: s },
            value,
        } => {
            let r = represent::locally_represented(&form(&s)?, &value)?;
            let mut human = format!(
                "{} {} locally represented by {}\n",
                r.value,
                if r.represented { "is" } else { "is not" },
                r.form
            );
            for p in &r.places {
                human += &format!(
                    "  {}: {}\n",
                    p.place,
                    if p.represented { "yes" } else { "no" }
                );
            }
            ok(to_value(&r), human.trim_end().to_string())
        }
        Command::Multiple {
            form: single,
            f1,
            f2,
            value,
            bound,
        } => {
            let (forms, result) = match (single, f1, f2) {
                (Some(s), None, None) => {
                    let f = form(&s)?;
                    let r = represent::nonsquare_multiple(&f, &value, bound)?;
                    (vec![f], r)
                }
                (None, Some(a), Some(b)) => {
                    let (f, g) = (form(&a)?, form(&b)?);
                    let r = represent::joint_nonsquare_multiple(&f, &g, &value, bound)?;
                    (vec![f, g], r)
                }
                _ => {
                    return Err(Error::Parse(
                        "multiple".into(),
                        "give either --form or both --f1 and --f2".into(),
                    ))
                }
            };
            match &result {
                MultipleSearch::Found {
                    k,
                    value: mk,
                    witnesses,
                } => {
                    let ws: Vec<Value> = witnesses
                        .iter()
                        .map(|w| witness_json(&Some(w.clone())))
                        .collect();
                    ok(
                        json!({
                            "forms": forms,
                            "m": value.to_string(),
                            "k": k,
                            "value": mk.to_string(),
                            "witnesses": ws,
                        }),
                        format!("k = {k}: {mk} is represented"),
                    )
                }
                MultipleSearch::BoundExhausted { bound } => Ok((
                    Status::BoundExhausted,
                    json!({ "forms": forms, "m": value.to_string(), "bound": bound, "found": false }),
                    result.to_string(),
                )),
            }
        }
        Command::Hcp {
            disc: DiscArg { disc: v },
            cache,
        } => {
            let poly = class_polynomial(&disc(v)?, &cache.cache)?;
            let human = poly.to_string();
            ok(to_value(&poly), human)
        }
        Command::Split {
            disc: DiscArg { disc: v },
            prime,
            cache,
        } => {
            let d = disc(v)?;
            let poly = class_polynomial(&d, &cache.cache)?;
            let r = classfield::splitting_count_with(&poly, prime)?;
            let human = format!(
                "p = {prime}: ({v}/p) = {}, f = {}, g = {}, {} primes above p in the Hilbert class field",
                r.kronecker, r.f, r.g, r.total
            );
            ok(to_value(&r), human)
        }
        Command::VerifyThm8 {
            disc: DiscArg { disc: v },
            prime,
            bound,
            cache,
        } => {
            let d = disc(v)?;
            let poly = class_polynomial(&d, &cache.cache)?;
            match prime {
                Some(p) => {
                    let c = classfield::verify_theorem8_with(&poly, p)?;
                    let human = format!(
                        "p = {p}: {} (m = {}, total = {})",
                        if c.holds { "holds" } else { "FAILS" },
                        c.order.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
                        c.report.total
                    );
                    let status = if c.holds {
                        Status::Ok
                    } else {
                        Status::DomainError
                    };
                    Ok((status, to_value(&c), human))
                }
                None => sweep_theorem8(&poly, &d, bound),
            }
        }
        Command::VerifyPaper => {
            let checks = paper_checks();
            let all = checks.iter().all(|c| c.pass);
            let human = checks
                .iter()
                .map(|c| {
                    format!(
                        "{} {}: {}",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.detail
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let status = if all { Status::Ok } else { Status::DomainError };
            Ok((status, json!({ "all_pass": all, "checks": checks }), human))
        }
    }
}

fn sweep_theorem8(poly: &ClassPolynomial, d: &Discriminant, bound: u64) -> Outcome {
    let mut checked = 0u64;
    let mut skipped = Vec::new();
    let mut failures = Vec::new();
    for p in arith::primes_in(2, bound) {
        match classfield::verify_theorem8_with(poly, p) {
            Ok(c) if c.holds => checked += 1,
            Ok(_) => failures.push(p),
            Err(Error::PrimeDividesDiscriminant(..)) | Err(Error::NonGenericPrime(..)) => {
                skipped.push(p)
            }
            Err(e) => return Err(e),
        }
    }
    let status = if failures.is_empty() {
        Status::Ok
    } else {
        Status::DomainError
    };
    let human = format!(
        "Δ = {d}: {checked} primes < {bound} checked, {} failures, skipped {:?}",
        failures.len(),
        skipped
    );
    Ok((
        status,
        json!({
            "discriminant": d.to_string(),
            "bound": bound,
            "checked": checked,
            "failures": failures,
            "skipped": skipped,
        }),
        human,
    ))
}

/// One line of `verify-paper`.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, result: Result<(bool, String), Error>) -> Check {
    match result {
        Ok((pass, detail)) => Check {
            name: name.into(),
            pass,
            detail,
        },
        Err(e) => Check {
            name: name.into(),
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}

fn forms_of(v: i64) -> Result<Vec<Form>, Error> {
    Ok(enumerate_reduced(&Discriminant::new(v)?))
}

fn parse_forms(list: &[&str]) -> Vec<Form> {
    list.iter()
        .map(|s| s.parse().expect("literal form"))
        .collect()
}

fn compose_all(fs: &[&Form]) -> Result<Form, Error> {
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = classgroup::compose(&acc, f)?;
    }
    Ok(acc)
}

fn all_represent(forms: &[Form], m: &BigInt) -> bool {
    forms.iter().all(|f| represent::represents(f, m).is_some())
}

/// Smallest prime outside `{2, 3, 7, 11, 29}` with `(p/11) = -1`,
/// `(p/7) = 1`, `p ≡ 3 (mod 8)`, `p ≡ 2 (mod 3)` and two primes above it in
/// the Hilbert class field of `Q(sqrt -87)`.
pub fn capstone_prime(limit: u64) -> Result<Option<u64>, Error> {
    let h87 = classfield::hilbert_class_polynomial(&Discriminant::new(-87)?)?;
    for p in arith::primes_in(2, limit) {
        if [2, 3, 7, 11, 29].contains(&p) {
            continue;
        }
        let residues = arith::kronecker_i64(p as i64, 11) == -1
            && arith::kronecker_i64(p as i64, 7) == 1
            && p % 8 == 3
            && p % 3 == 2;
        if !residues {
            continue;
        }
        match classfield::splitting_count_with(&h87, p) {
            Ok(r) if r.total == 2 => return Ok(Some(p)),
            Ok(_) | Err(Error::NonGenericPrime(..)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

fn paper_checks() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check(
        "forms of -47",
        (|| {
            let got = forms_of(-47)?;
            let want = parse_forms(&["1,1,12", "2,-1,6", "2,1,6", "3,-1,4", "3,1,4"]);
            Ok((got == want, fmt_forms(&got)))
        })(),
    ));
    out.push(check(
        "forms of -23",
        (|| {
            let got = forms_of(-23)?;
            let want = parse_forms(&["1,1,6", "2,-1,3", "2,1,3"]);
            Ok((got == want, fmt_forms(&got)))
        })(),
    ));
    out.push(check(
        "compositions at -23",
        (|| {
            let q = parse_forms(&["1,1,6", "2,1,3", "2,-1,3"]);
            let (q6, q7, q8) = (&q[0], &q[1], &q[2]);
            let pass = compose_all(&[q7, q8])? == *q6
                && compose_all(&[q8, q8])? == *q7
                && compose_all(&[q7, q7])? == *q8;
            Ok((pass, "Q6 = Q7 Q8, Q7 = Q8^2, Q8 = Q7^2".into()))
        })(),
    ));
    out.push(check(
        "compositions at -47",
        (|| {
            let q = parse_forms(&["1,1,12", "2,1,6", "2,-1,6", "3,1,4", "3,-1,4"]);
            let (q1, q2, q3, q4, q5) = (&q[0], &q[1], &q[2], &q[3], &q[4]);
            let pass = compose_all(&[q2, q3, q4, q5])? == *q1
                && compose_all(&[q2, q3, q4, q4])? == *q2
                && compose_all(&[q2, q3, q5, q5])? == *q3
                && compose_all(&[q4, q5, q3, q3])? == *q4
                && compose_all(&[q4, q5, q2, q2])? == *q5;
            Ok((pass, "five product identities".into()))
        })(),
    ));
    for (v, want) in [(-47, vec![5u64]), (-23, vec![3])] {
        out.push(check(
            &format!("class group of {v}"),
            (|| {
                let g = ClassGroup::new(&Discriminant::new(v)?)?;
                Ok((
                    g.invariant_factors() == want.as_slice(),
                    format!("{:?}", g.invariant_factors()),
                ))
            })(),
        ));
    }
    for (v, want) in [(-23, 6u64), (-47, 144)] {
        out.push(check(
            &format!("odd witness of {v}"),
            (|| {
                let w = classgroup::odd_witness(&Discriminant::new(v)?)?;
                let forms = forms_of(v)?;
                Ok((
                    w == BigInt::from(want) && all_represent(&forms, &w),
                    w.to_string(),
                ))
            })(),
        ));
    }
    out.push(check(
        "squares of witnesses",
        (|| {
            let s23 = forms_of(-23)?;
            let s47 = forms_of(-47)?;
            let pass = all_represent(&s23, &BigInt::from(36))
                && all_represent(&s47, &BigInt::from(144 * 144));
            Ok((pass, "36 in int(S_-23), 144^2 in int(S_-47)".into()))
        })(),
    ));
    out.push(check(
        "6^2 * 144^2 in both",
        (|| {
            let mut forms = forms_of(-23)?;
            forms.extend(forms_of(-47)?);
            let m = BigInt::from(36 * 144 * 144);
            Ok((
                all_represent(&forms, &m),
                format!("{m} represented by all {} forms", forms.len()),
            ))
        })(),
    ));
    out.push(check(
        "-20 is trivial",
        (|| {
            let v = isotropy::trivial_intersection(&Discriminant::new(-20)?)?;
            let detail = match &v.certificate {
                Some(c) => format!(
                    "pair {:?} anisotropic at p = {}",
                    c.pair,
                    c.prime.unwrap_or(0)
                ),
                None => "no certificate".into(),
            };
            Ok((v.trivial && v.certificate.is_some(), detail))
        })(),
    ));
    for (v, want) in [(-88, vec![2u64]), (-87, vec![6]), (-84, vec![2, 2])] {
        out.push(check(
            &format!("class group of {v}"),
            (|| {
                let g = ClassGroup::new(&Discriminant::new(v)?)?;
                Ok((
                    g.invariant_factors() == want.as_slice(),
                    format!("{:?}", g.invariant_factors()),
                ))
            })(),
        ));
    }
    out.push(check(
        "order 6 classes of -87",
        (|| {
            let g = ClassGroup::new(&Discriminant::new(-87)?)?;
            let six: Vec<Form> = (0..g.class_number())
                .filter(|&i| g.order_of(i) == 6)
                .map(|i| g.elements()[i].clone())
                .collect();
            Ok((six == parse_forms(&["2,-1,11", "2,1,11"]), fmt_forms(&six)))
        })(),
    ));
    out.push(check(
        "smallest admissible prime",
        (|| {
            let p = capstone_prime(10_000)?;
            Ok((
                p == Some(659),
                p.map(|p| p.to_string())
                    .unwrap_or("none".into())
                    .to_string(),
            ))
        })(),
    ));
    out.push(check("659 represented by 2x^2+bxy+11y^2", {
        let m = BigInt::from(659);
        let mut parts = Vec::new();
        let mut pass = true;
        for f in parse_forms(&["2,0,11", "2,1,11", "2,-1,11", "2,2,11"]) {
            match represent::represents(&f, &m) {
                Some((x, y)) if f.eval(&x, &y) == m => parts.push(format!("{f} at ({x},{y})")),
                _ => {
                    pass = false;
                    parts.push(format!("{f}: none"));
                }
            }
        }
        Ok((pass, parts.join("; ")))
    }));
    out
}

fn fmt_forms(fs: &[Form]) -> String {
    fs.iter()
        .map(|f| format!("({f})"))
        .collect::<Vec<_>>()
        .join(" ")
}
