//! Command-line front end: `enumerate`, `verify <check>` and `report`.
//!
//! Exit codes: 0 success, 2 input or configuration error, 3 cap exceeded,
//! 4 theorem violation. Errors are also written to standard output as a
//! JSON object so scripted callers can read the reason.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::GroupSpec;
use crate::correspondence::{
    crv_fixture, cyclic_scan, gaussian_subspace_count, primitive_chain_check, theorem32_check,
    theorem41_scan, verify_prop21, Context, Sample,
};
use crate::holomorph::enumerate_regular_subgroups;
use crate::nilring::{
    circle_group, cyclic_structure, enumerate_structures, nilpotency_index, primitive_structure,
    trivial_structure, RingStructure,
};
use crate::{Caps, Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "hopf-nilring",
    about = "Nilpotent ring structures on abelian p-groups and their ideal / sub-Hopf lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// List every nilpotent ring structure on a group.
    Enumerate(CommonArgs),
    /// Run one of the lattice/counting checks.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// Sub-Hopf versus intermediate-field counts for a family of structures.
    Report(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long)]
    p: Option<u64>,
    /// Cyclic factor exponents, nonincreasing, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "n")]
    exp: Option<Vec<u32>>,
    /// Shorthand for F_p^n (or Z/p^n for the cyclic family).
    #[arg(long)]
    n: Option<u32>,
    /// trivial | primitive | cyclic | cyclic:<d> | enumerate | fixture:crv
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    all_d: bool,
    #[arg(long)]
    all_structures: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = Caps::default().enumeration)]
    cap_enum: u64,
    #[arg(long, default_value_t = Caps::default().search)]
    cap_search: u64,
    #[arg(long, default_value_t = Caps::default().holomorph)]
    cap_hol: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Thm32,
    Thm41,
    Thm42,
    Prop43,
    Prop21,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Enumerate,
    Verify(Check),
    Report,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Trivial,
    Primitive,
    /// `None` means every `d`.
    Cyclic(Option<u64>),
    Enumerate,
    FixtureCrv,
}

impl Family {
    fn parse(s: &str, d: Option<u64>, all_d: bool) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown family {s:?}"));
        Ok(match s {
            "trivial" => Family::Trivial,
            "primitive" => Family::Primitive,
            "enumerate" => Family::Enumerate,
            "fixture:crv" => Family::FixtureCrv,
            "cyclic" => Family::Cyclic(if all_d { None } else { d }),
            _ => {
                let rest = s.strip_prefix("cyclic:").ok_or_else(bad)?;
                Family::Cyclic(Some(rest.parse().map_err(|_| bad())?))
            }
        })
    }

    fn name(&self) -> String {
        match self {
            Family::Trivial => "trivial".into(),
            Family::Primitive => "primitive".into(),
            Family::Cyclic(Some(d)) => format!("cyclic:{d}"),
            Family::Cyclic(None) => "cyclic".into(),
            Family::Enumerate => "enumerate".into(),
            Family::FixtureCrv => "fixture:crv".into(),
        }
    }
}

/// Fully resolved run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub p: Option<u64>,
    pub exponents: Option<Vec<u32>>,
    pub n: Option<u32>,
    pub family: Option<Family>,
    pub all_structures: bool,
    pub format: Format,
    pub caps: Caps,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn from_args(command: Command, a: CommonArgs) -> Result<Self> {
        if a.cap_enum == 0 || a.cap_search == 0 || a.cap_hol == 0 {
            return Err(Error::InvalidArgument("caps must be positive".into()));
        }
        let family = a
            .family
            .as_deref()
            .map(|f| Family::parse(f, a.d, a.all_d))
            .transpose()?
            .or_else(|| {
                (a.all_d || a.d.is_some()).then_some(Family::Cyclic(if a.all_d {
                    None
                } else {
                    a.d
                }))
            });
        Ok(RunConfig {
            command,
            p: a.p,
            exponents: a.exp,
            n: a.n,
            family,
            all_structures: a.all_structures,
            format: a.format,
            caps: Caps {
                enumeration: a.cap_enum,
                search: a.cap_search,
                holomorph: a.cap_hol,
            },
            seed: a.seed,
            out: a.out,
        })
    }

    fn prime(&self) -> Result<u64> {
        self.p
            .ok_or_else(|| Error::InvalidArgument("--p is required".into()))
    }

    fn n_value(&self) -> Result<u32> {
        match (&self.n, &self.exponents) {
            (Some(n), _) => Ok(*n),
            (None, Some(ex)) if ex.len() == 1 => Ok(ex[0]),
            (None, Some(ex)) if ex.iter().all(|&e| e == 1) => Ok(ex.len() as u32),
            _ => Err(Error::InvalidArgument("--n is required".into())),
        }
    }

    /// The group: `--exp` verbatim, or `--n` as `F_p^n` (`Z/p^n` for the
    /// cyclic family).
    fn spec(&self) -> Result<GroupSpec> {
        if matches!(self.family, Some(Family::FixtureCrv)) {
            return GroupSpec::cyclic(2, 2);
        }
        let p = self.prime()?;
        match (&self.exponents, self.n) {
            (Some(ex), _) => GroupSpec::new(p, ex.clone()),
            (None, Some(n)) if matches!(self.family, Some(Family::Cyclic(_))) => {
                GroupSpec::cyclic(p, n)
            }
            (None, Some(n)) => GroupSpec::elementary(p, n),
            (None, None) => Err(Error::InvalidArgument(
                "one of --exp or --n is required".into(),
            )),
        }
    }

    /// The structures selected by `--family` / `--all-structures`.
    fn structures(&self) -> Result<Vec<RingStructure>> {
        let family = if self.all_structures {
            Family::Enumerate
        } else {
            self.family.clone().unwrap_or(Family::Enumerate)
        };
        let spec = self.spec()?;
        match family {
            Family::Trivial => Ok(vec![trivial_structure(&spec)]),
            Family::Enumerate => enumerate_structures(&spec, &self.caps),
            Family::FixtureCrv => Ok(vec![crv_fixture().ring().clone()]),
            Family::Primitive => {
                if !spec.is_elementary() {
                    return Err(Error::InvalidArgument(
                        "the primitive family lives on an elementary abelian group".into(),
                    ));
                }
                Ok(vec![primitive_structure(spec.p(), spec.rank() as u32)?])
            }
            Family::Cyclic(d) => {
                if spec.rank() != 1 {
                    return Err(Error::InvalidArgument(
                        "the cyclic family needs a single cyclic factor".into(),
                    ));
                }
                let (p, n) = (spec.p(), spec.exponents()[0]);
                match d {
                    Some(d) => Ok(vec![cyclic_structure(p, n, d)?]),
                    None => {
                        // validates p before computing the range
                        cyclic_structure(p, n, 0)?;
                        (0..p.pow(n - 1))
                            .map(|d| cyclic_structure(p, n, d))
                            .collect()
                    }
                }
            }
        }
    }
}

/// Machine-readable output plus its aligned-text rendering.
struct Output {
    json: Value,
    table: String,
}

pub fn run(config: &RunConfig) -> Result<String> {
    let out = match &config.command {
        Command::Enumerate => cmd_enumerate(config)?,
        Command::Verify(check) => cmd_verify(config, *check)?,
        Command::Report => cmd_report(config)?,
    };
    Ok(match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Table => ascii_table(&out.table),
    })
}

/// Tables are plain ASCII with no trailing blanks.
fn ascii_table(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.lines() {
        out.push_str(line.replace('×', "x").replace('²', "^2").trim_end());
        out.push('\n');
    }
    out
}

fn fmt_type(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn cmd_enumerate(config: &RunConfig) -> Result<Output> {
    let spec = config.spec()?;
    let structures = enumerate_structures(&spec, &config.caps)?;
    let mut entries = Vec::new();
    let mut table = String::new();
    for a in &structures {
        let circle = circle_group(a, config.caps.enumeration)?;
        entries.push(json!({
            "structure": a,
            "circle_type": circle.isomorphism_type(),
            "nilpotency_index": nilpotency_index(a)?,
        }));
    }

    // ring count vs. regular subgroups of Hol(G), when the holomorph is small enough
    let (regular, abelian) = match enumerate_regular_subgroups(&spec, &config.caps) {
        Ok(regs) => {
            let abelian = regs.iter().filter(|t| t.is_abelian()).count();
            (Some(regs.len()), Some(abelian))
        }
        Err(Error::CapExceeded { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    if let Some(ab) = abelian {
        if ab != structures.len() {
            return Err(Error::violation(
                "nilpotent rings biject with abelian regular subgroups",
                json!({ "spec": spec, "structures": structures.len(), "abelian_regular_subgroups": ab }),
            ));
        }
    }

    let na = |x: Option<usize>| x.map_or("n/a".to_string(), |v| v.to_string());
    writeln!(
        table,
        "group {spec}  structures {}  regular subgroups {}  abelian {}",
        structures.len(),
        na(regular),
        na(abelian)
    )
    .unwrap();
    writeln!(
        table,
        "{:>4}  {:<12}  {:>3}  constants",
        "#", "circle", "nil"
    )
    .unwrap();
    for (i, (a, e)) in structures.iter().zip(&entries).enumerate() {
        let ty: Vec<u32> = serde_json::from_value(e["circle_type"].clone()).unwrap();
        writeln!(
            table,
            "{:>4}  {:<12}  {:>3}  {}",
            i,
            fmt_type(&ty),
            e["nilpotency_index"],
            a
        )
        .unwrap();
    }

    Ok(Output {
        json: json!({
            "spec": spec,
            "count": structures.len(),
            "structures": entries,
            "regular_subgroup_count": regular,
            "abelian_regular_subgroup_count": abelian,
        }),
        table,
    })
}

fn cmd_verify(config: &RunConfig, check: Check) -> Result<Output> {
    let mut table = String::new();
    let json = match check {
        Check::Thm32 => {
            let structures = config.structures()?;
            let mut reports = Vec::new();
            writeln!(
                table,
                "{:<28}  {:>6}  {:>6}  {:>8}  strong",
                "structure", "ideals", "fields", "circle"
            )
            .unwrap();
            for a in structures {
                let ctx = Context::new(a.clone(), config.caps.enumeration)?;
                let r = theorem32_check(&ctx, &config.caps)?;
                writeln!(
                    table,
                    "{:<28}  {:>6}  {:>6}  {:>8}  {}",
                    a.to_string(),
                    r.ideals.len(),
                    r.gamma_subgroup_count,
                    fmt_type(&r.circle_type),
                    r.strong_ftgt
                )
                .unwrap();
                reports.push(json!({ "structure": a, "report": r }));
            }
            writeln!(
                table,
                "thm32: {} structures, 0 mismatches: PASS",
                reports.len()
            )
            .unwrap();
            json!({ "check": check, "passed": true, "structures": reports.len(), "mismatches": 0, "reports": reports })
        }
        Check::Thm41 => {
            let r = theorem41_scan(&config.spec()?, &config.caps)?;
            writeln!(
                table,
                "thm41: {} structures on {}, {} with elementary abelian circle group, {} strong (trivial only): PASS",
                r.structures, r.spec, r.elementary_circle, r.strong
            )
            .unwrap();
            json!({ "check": check, "passed": true, "report": r })
        }
        Check::Thm42 => {
            let r = primitive_chain_check(config.prime()?, config.n_value()?, &config.caps)?;
            let sizes: Vec<String> = r.ideal_sizes.iter().map(|s| s.to_string()).collect();
            writeln!(
                table,
                "thm42: primitive p={} n={}: {} ideals forming a chain of sizes {}; {} intermediate fields: PASS",
                r.p,
                r.n,
                r.ideal_sizes.len(),
                sizes.join(" < "),
                r.gamma_subgroup_count
            )
            .unwrap();
            json!({ "check": check, "passed": true, "report": r })
        }
        Check::Prop43 => {
            let p = config.prime()?;
            let n = config.n_value()?;
            let ds: Option<Vec<u64>> = match &config.family {
                Some(Family::Cyclic(Some(d))) => Some(vec![*d]),
                _ => None,
            };
            let r = cyclic_scan(p, n, ds.as_deref(), &config.caps)?;
            for row in &r.rows {
                writeln!(
                    table,
                    "d={:<4} {}  ideals {}  strong {}",
                    row.d,
                    row.structure,
                    row.ideal_generators.len(),
                    row.strong_ftgt
                )
                .unwrap();
            }
            writeln!(
                table,
                "prop43: p={} n={}: {} of {} values of d checked, all strong: PASS",
                p,
                n,
                r.rows.len(),
                r.d_count
            )
            .unwrap();
            json!({ "check": check, "passed": true, "report": r })
        }
        Check::Prop21 => {
            let structures = config.structures()?;
            let mut reports = Vec::new();
            let mut passed = true;
            for a in structures {
                let ctx = Context::new(a.clone(), config.caps.enumeration)?;
                let n = ctx.elements().len();
                let sample = if n * n <= 10_000 {
                    Sample::All
                } else {
                    Sample::Random {
                        count: 2_000,
                        seed: config.seed,
                    }
                };
                let r = verify_prop21(&ctx, sample)?;
                passed &= r.passed();
                writeln!(
                    table,
                    "{:<28}  pairs {:>6}  failures {}",
                    a.to_string(),
                    r.checked,
                    r.failures.len()
                )
                .unwrap();
                reports.push(json!({ "structure": a, "report": r }));
            }
            if !passed {
                return Err(Error::violation("conjugation identities", json!(reports)));
            }
            writeln!(table, "prop21: {} structures: PASS", reports.len()).unwrap();
            json!({ "check": check, "passed": true, "reports": reports })
        }
    };
    Ok(Output { json, table })
}

fn cmd_report(config: &RunConfig) -> Result<Output> {
    let family = config.family.clone().unwrap_or(Family::Enumerate);
    let structures = config.structures()?;
    let mut rows = Vec::new();
    let mut table = String::new();
    writeln!(
        table,
        "{:<12}  {:<10}  {:<28}  {:>8}  {:>8}  {:>10}  {:<10}  {:<6}",
        "family", "group", "structure", "sub-hopf", "fields", "ratio", "circle", "strong"
    )
    .unwrap();
    for a in structures {
        let ctx = Context::new(a.clone(), config.caps.enumeration)?;
        let r = theorem32_check(&ctx, &config.caps)?;
        let sub_hopf = r.ideals.len() as u64;
        let ratio = r.gamma_subgroup_count as f64 / sub_hopf as f64;
        // cross-check of the field count against the subspace formula
        let formula = (r.circle_type.iter().all(|&e| e == 1)).then(|| {
            let sum = gaussian_subspace_count(a.spec().p(), r.circle_type.len() as u32);
            json!({
                "nonzero_subspaces": sum.to_string(),
                "with_zero_subspace": (sum + 1u32).to_string(),
            })
        });
        writeln!(
            table,
            "{:<12}  {:<10}  {:<28}  {:>8}  {:>8}  {:>10.3}  {:<10}  {:<6}",
            family.name(),
            a.spec().to_string(),
            a.to_string(),
            sub_hopf,
            r.gamma_subgroup_count,
            ratio,
            fmt_type(&r.circle_type),
            r.strong_ftgt
        )
        .unwrap();
        rows.push(json!({
            "family": family.name(),
            "structure": a,
            "sub_hopf_count": sub_hopf,
            "intermediate_field_count": r.gamma_subgroup_count,
            "field_count_source": "enumeration",
            "gaussian_formula": formula,
            "ratio": ratio,
            "circle_type": r.circle_type,
            "strong_ftgt": r.strong_ftgt,
        }));
    }
    Ok(Output {
        json: json!({ "rows": rows }),
        table,
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::TheoremViolation { .. } => 4,
        _ => 2,
    }
}

fn error_json(e: &Error) -> Value {
    match e {
        Error::CapExceeded { what, size, cap } => json!({
            "error": "cap_exceeded", "what": what, "size": size.to_string(), "cap": cap,
        }),
        Error::TheoremViolation { theorem, witness } => json!({
            "error": "theorem_violation", "theorem": theorem, "witness": witness,
        }),
        other => json!({ "error": "input", "message": other.to_string() }),
    }
}

/// Parses `args`, runs, writes output, and returns the process exit code.
pub fn main_with_args<I, T>(
    args: I,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let config = match cli.command {
        CliCommand::Enumerate(a) => RunConfig::from_args(Command::Enumerate, a),
        CliCommand::Verify { check, args } => RunConfig::from_args(Command::Verify(check), args),
        CliCommand::Report(a) => RunConfig::from_args(Command::Report, a),
    };
    let result = config.and_then(|c| run(&c).map(|s| (c, s)));
    match result {
        Ok((config, text)) => {
            if let Some(path) = &config.out {
                if let Err(e) = std::fs::write(path, &text) {
                    let _ = writeln!(stderr, "cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            let _ = writeln!(
                stdout,
                "{}",
                serde_json::to_string_pretty(&error_json(&e)).expect("serializable")
            );
            exit_code(&e)
        }
    }
}
