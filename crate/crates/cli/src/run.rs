//! Command execution. Every command assembles its whole report in memory
//! and hands back one string, so a failure never leaves a partial file.

use crate::{
    Cli, Command, ConjectureArgs, FamilyArgs, Format, GenerateArgs, GolombSpec, LemmaArgs,
    TheoremArgs, VerifyArgs, WelchSpec, XcorrArgs,
};
use costas_core::costas::{
    golomb, golomb_full_family, golomb_subfamily, golomb_with_table, is_costas, welch,
    welch_family, CostasPermutation,
};
use costas_core::ffield::{FieldElement, FieldSpec, LogTable};
use costas_core::numtheory::{is_prime, prime_power_decompose};
use costas_core::theorems::{
    conjecture_scan, lemma1_sweep, lemma2_sweep, lemma3_sweep, verdicts_to_csv, verify_theorem1,
    verify_theorem2, verify_theorem2_all_g2, LemmaSweep, TheoremVerdict, VerdictKind,
};
use costas_core::xcorr::{
    cross_correlation_at, cross_correlation_table, family_max, CorrelationTable,
};
use serde::Serialize;
use std::fmt;
use std::io::{self, Read, Write};
use std::path::Path;

pub struct Report {
    pub body: String,
    /// False when some verdict failed; drives the exit status.
    pub pass: bool,
}

impl Report {
    fn pass(body: String) -> Report {
        Report { body, pass: true }
    }
}

pub enum CliError {
    Usage(String),
    Core(costas_core::Error),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<costas_core::Error> for CliError {
    fn from(e: costas_core::Error) -> CliError {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct Ctx<'a> {
    format: Format,
    cache: Option<&'a Path>,
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let ctx = Ctx {
        format: cli.format,
        cache: cli.cache_dir.as_deref(),
    };
    match &cli.command {
        Command::Generate(a) => generate(a, &ctx),
        Command::VerifyCostas(a) => verify_costas(a, &ctx),
        Command::Xcorr(a) => xcorr(a, &ctx),
        Command::Family(a) => family(a, &ctx),
        Command::TheoremCheck(a) => theorem_check(a, &ctx),
        Command::LemmaCheck(a) => lemma_check(a, &ctx),
        Command::ConjectureScan(a) => conjecture(a, &ctx),
    }
}

/// Write the finished report: straight to stdout, or through a sibling
/// temp file plus rename so the target never holds a truncated report.
pub fn emit(output: Option<&Path>, body: &str) -> io::Result<()> {
    match output {
        None => io::stdout().write_all(body.as_bytes()),
        Some(path) => {
            let tmp = path.with_extension("partial");
            std::fs::write(&tmp, body)?;
            std::fs::rename(&tmp, path)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut body = serde_json::to_string_pretty(value).expect("report serializes");
    body.push('\n');
    body
}

fn build_welch(spec: &WelchSpec) -> Result<CostasPermutation, CliError> {
    Ok(welch(spec.p, spec.g, spec.shift)?)
}

fn build_golomb(s: &GolombSpec, ctx: &Ctx) -> Result<CostasPermutation, CliError> {
    let spec = FieldSpec::of_order(s.q)?;
    let g1 = spec.element(s.g1)?;
    let g2 = spec.element(s.g2)?;
    match ctx.cache {
        None => Ok(golomb(&spec, g1, g2)?),
        Some(dir) => {
            let table = LogTable::load_or_build(&spec, g2, dir)?;
            Ok(golomb_with_table(&spec, g1, &table)?)
        }
    }
}

fn subfamily_members(
    spec: &FieldSpec,
    g2: FieldElement,
    ctx: &Ctx,
) -> Result<Vec<CostasPermutation>, CliError> {
    match ctx.cache {
        None => Ok(golomb_subfamily(spec, g2)?),
        Some(dir) => {
            let table = LogTable::load_or_build(spec, g2, dir)?;
            spec.primitive_elements()
                .into_iter()
                .map(|g1| golomb_with_table(spec, g1, &table).map_err(CliError::from))
                .collect()
        }
    }
}

fn full_family_members(spec: &FieldSpec, ctx: &Ctx) -> Result<Vec<CostasPermutation>, CliError> {
    match ctx.cache {
        None => Ok(golomb_full_family(spec)?),
        Some(dir) => {
            let prims = spec.primitive_elements();
            let tables = prims
                .iter()
                .map(|&g2| LogTable::load_or_build(spec, g2, dir))
                .collect::<Result<Vec<_>, _>>()?;
            let mut members = Vec::with_capacity(prims.len() * prims.len());
            for &g1 in &prims {
                for table in &tables {
                    members.push(golomb_with_table(spec, g1, table)?);
                }
            }
            Ok(members)
        }
    }
}

fn generate(a: &GenerateArgs, ctx: &Ctx) -> Result<Report, CliError> {
    let f = match (&a.welch, &a.golomb) {
        (Some(w), None) => build_welch(w)?,
        (None, Some(g)) => build_golomb(g, ctx)?,
        _ => unreachable!("clap enforces exactly one spec"),
    };
    let body = match ctx.format {
        Format::Text => {
            let mut t = f.to_text();
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
        Format::Json => to_json(&f),
        Format::Csv => {
            let mut out = String::from("i,value\n");
            for (i, v) in f.values().iter().enumerate() {
                out.push_str(&format!("{},{v}\n", i + 1));
            }
            out
        }
    };
    Ok(Report::pass(body))
}

#[derive(Serialize)]
struct SequenceCheck {
    source: String,
    n: usize,
    ok: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    note: String,
}

fn check_values(source: String, raw: &str) -> SequenceCheck {
    let parsed: Result<Vec<u32>, _> = raw.split_whitespace().map(str::parse).collect();
    match parsed {
        Err(_) => SequenceCheck {
            source,
            n: 0,
            ok: false,
            note: "unparsable values".into(),
        },
        Ok(vals) => {
            let n = vals.len();
            match is_costas(&vals) {
                Ok(true) => SequenceCheck {
                    source,
                    n,
                    ok: true,
                    note: String::new(),
                },
                Ok(false) => SequenceCheck {
                    source,
                    n,
                    ok: false,
                    note: "repeated difference vector".into(),
                },
                Err(e) => SequenceCheck {
                    source,
                    n,
                    ok: false,
                    note: e.to_string(),
                },
            }
        }
    }
}

fn verify_costas(a: &VerifyArgs, ctx: &Ctx) -> Result<Report, CliError> {
    let mut items: Vec<SequenceCheck> = Vec::new();
    for (idx, raw) in a.values.iter().enumerate() {
        items.push(check_values(format!("values[{idx}]"), raw));
    }
    let text = match &a.input {
        Some(path) => std::fs::read_to_string(path)?,
        None if a.values.is_empty() => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf)?;
            buf
        }
        None => String::new(),
    };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(no, line)| (no + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty())
        .collect();
    let mut i = 0;
    while i < lines.len() {
        let (no, line) = lines[i];
        let header = line.trim_start_matches('#').trim_start();
        if header.starts_with("welch ") || header.starts_with("golomb ") {
            match lines.get(i + 1) {
                None => {
                    items.push(SequenceCheck {
                        source: line.to_string(),
                        n: 0,
                        ok: false,
                        note: "missing values line".into(),
                    });
                    i += 1;
                }
                Some((_, values_line)) => {
                    let block = format!("{line}\n{values_line}\n");
                    match CostasPermutation::from_text(&block) {
                        Ok(f) => {
                            let ok = matches!(is_costas(f.values()), Ok(true));
                            items.push(SequenceCheck {
                                source: f.provenance().to_string(),
                                n: f.n(),
                                ok,
                                note: if ok {
                                    String::new()
                                } else {
                                    "not a Costas permutation".into()
                                },
                            });
                        }
                        Err(e) => items.push(SequenceCheck {
                            source: line.to_string(),
                            n: 0,
                            ok: false,
                            note: e.to_string(),
                        }),
                    }
                    i += 2;
                }
            }
        } else {
            items.push(check_values(format!("line {no}"), line));
            i += 1;
        }
    }
    if items.is_empty() {
        return Err(usage("no sequences to verify; pass --input, --values, or pipe stdin"));
    }
    let passed = items.iter().filter(|c| c.ok).count();
    let pass = passed == items.len();
    let body = match ctx.format {
        Format::Json => to_json(&items),
        Format::Csv => {
            let mut out = String::from("source,n,ok,note\n");
            for c in &items {
                out.push_str(&format!("{},{},{},{}\n", c.source, c.n, c.ok, c.note));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in &items {
                if c.ok {
                    out.push_str(&format!("{}: ok (n = {})\n", c.source, c.n));
                } else {
                    out.push_str(&format!("{}: FAIL ({})\n", c.source, c.note));
                }
            }
            out.push_str(&format!("{passed} of {} sequences pass\n", items.len()));
            out
        }
    };
    Ok(Report { body, pass })
}

#[derive(Serialize)]
struct SingleEntry<'a> {
    pair: (&'a str, &'a str),
    u: i64,
    v: i64,
    count: u32,
}

fn table_text(t: &CorrelationTable) -> String {
    let n = t.n() as i64;
    let w = n - 1;
    let (max, mu, mv) = t.max_entry();
    let (p1, p2) = t.pair();
    let mut out = format!("pair: {p1} | {p2}\n");
    out.push_str(&format!(
        "n = {n}, max C = {max} at (u, v) = ({mu}, {mv})\n"
    ));
    let width = format!("-{w}").len().max(3) + 1;
    out.push_str(&format!("{:>width$}", "u\\v"));
    for v in -w..=w {
        out.push_str(&format!("{v:>width$}"));
    }
    out.push('\n');
    for u in -w..=w {
        out.push_str(&format!("{u:>width$}"));
        for v in -w..=w {
            let c = t.get(u, v).expect("in range");
            out.push_str(&format!("{c:>width$}"));
        }
        out.push('\n');
    }
    out
}

fn xcorr(a: &XcorrArgs, ctx: &Ctx) -> Result<Report, CliError> {
    let mut perms: Vec<CostasPermutation> = Vec::new();
    for w in &a.welch {
        perms.push(build_welch(w)?);
    }
    for g in &a.golomb {
        perms.push(build_golomb(g, ctx)?);
    }
    if perms.len() != 2 {
        return Err(usage(format!(
            "xcorr needs exactly two permutations, got {}",
            perms.len()
        )));
    }
    let (f1, f2) = (&perms[0], &perms[1]);
    let body = match (a.u, a.v) {
        (Some(u), Some(v)) => {
            let count = cross_correlation_at(f1, f2, u, v)?;
            match ctx.format {
                Format::Text => format!("{count}\n"),
                Format::Csv => format!("u,v,count\n{u},{v},{count}\n"),
                Format::Json => to_json(&SingleEntry {
                    pair: (
                        &f1.provenance().to_string(),
                        &f2.provenance().to_string(),
                    ),
                    u,
                    v,
                    count,
                }),
            }
        }
        (None, None) => {
            let table = cross_correlation_table(f1, f2)?;
            match ctx.format {
                Format::Text => table_text(&table),
                Format::Csv => table.to_csv(),
                Format::Json => to_json(&table),
            }
        }
        _ => unreachable!("clap ties --u and --v together"),
    };
    Ok(Report::pass(body))
}

fn family(a: &FamilyArgs, ctx: &Ctx) -> Result<Report, CliError> {
    if a.g2.is_some() && !a.golomb_sub {
        return Err(usage("--g2 applies only to --golomb-sub"));
    }
    let members = if a.welch {
        welch_family(a.p.expect("clap requires --p"))?
    } else {
        let spec = FieldSpec::of_order(a.q.expect("clap requires --q"))?;
        if a.golomb_sub {
            let g2 = match a.g2 {
                Some(v) => spec.element(v)?,
                None => spec.smallest_primitive(),
            };
            subfamily_members(&spec, g2, ctx)?
        } else {
            full_family_members(&spec, ctx)?
        }
    };
    let result = family_max(&members)?;
    let body = match ctx.format {
        Format::Json => to_json(&result),
        Format::Csv => format!(
            "family,size,max,f1,f2,u,v\n{},{},{},{},{},{},{}\n",
            result.family,
            result.size,
            result.max,
            result.witness.f1,
            result.witness.f2,
            result.witness.u,
            result.witness.v
        ),
        Format::Text => format!(
            "C({}) = {} over {} members\nwitness: f1 = {}, f2 = {}, u = {}, v = {}\n",
            result.family,
            result.max,
            result.size,
            result.witness.f1,
            result.witness.f2,
            result.witness.u,
            result.witness.v
        ),
    };
    Ok(Report::pass(body))
}

fn verdict_line(v: &TheoremVerdict) -> String {
    let notation = match v.theorem.as_str() {
        "welch" => format!("C(W_{})", v.instance),
        "golomb-full" => format!("C(L_{})", v.instance),
        _ => format!("C(G_{})", v.instance),
    };
    let inst = match v.theorem.as_str() {
        "welch" => format!("p={}", v.instance),
        _ => format!("q={}", v.instance),
    };
    let g2 = v.g2.map(|g| format!(" g2={g}")).unwrap_or_default();
    let claim = match v.kind {
        VerdictKind::Exact => format!("predicted = {}", v.predicted),
        VerdictKind::UpperBound => format!("bound {}", v.predicted),
    };
    let status = match (v.pass, v.kind) {
        (true, _) => "pass",
        (false, VerdictKind::UpperBound) => "EXCEEDS",
        (false, VerdictKind::Exact) => "MISMATCH",
    };
    format!(
        "{inst}{g2}: {notation} = {}, {claim} (t = {}): {status}",
        v.computed, v.t
    )
}

fn verdict_report(verdicts: &[TheoremVerdict], format: Format) -> Report {
    let pass = verdicts.iter().all(|v| v.pass);
    let body = match format {
        Format::Json => to_json(&verdicts),
        Format::Csv => verdicts_to_csv(verdicts),
        Format::Text => {
            let mut out = String::new();
            for v in verdicts {
                out.push_str(&verdict_line(v));
                out.push('\n');
                if !v.pass {
                    out.push_str(&format!(
                        "  witness: f1 = {}, f2 = {}, u = {}, v = {}\n",
                        v.witness.f1, v.witness.f2, v.witness.u, v.witness.v
                    ));
                }
            }
            let failed = verdicts.iter().filter(|v| !v.pass).count();
            out.push_str(&format!(
                "{} of {} verdicts pass\n",
                verdicts.len() - failed,
                verdicts.len()
            ));
            out
        }
    };
    Report { body, pass }
}

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(5)..=hi).filter(|&p| is_prime(p)).collect()
}

fn prime_powers_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(4)..=hi)
        .filter(|&q| prime_power_decompose(q).is_ok())
        .collect()
}

fn theorem_check(a: &TheoremArgs, ctx: &Ctx) -> Result<Report, CliError> {
    let mut verdicts: Vec<TheoremVerdict> = Vec::new();
    if a.welch {
        let hi = a.p_max.expect("clap requires --p-max");
        for p in primes_in(a.p_min, hi) {
            verdicts.push(verify_theorem1(p)?);
        }
    } else {
        let hi = a.q_max.expect("clap requires --q-max");
        for q in prime_powers_in(a.q_min, hi) {
            let spec = FieldSpec::of_order(q)?;
            if a.all_g2 {
                verdicts.extend(verify_theorem2_all_g2(&spec)?);
            } else {
                verdicts.push(verify_theorem2(&spec, spec.smallest_primitive())?);
            }
        }
    }
    if verdicts.is_empty() {
        return Err(usage("the requested range contains no valid parameters"));
    }
    Ok(verdict_report(&verdicts, ctx.format))
}

fn lemma_check(a: &LemmaArgs, ctx: &Ctx) -> Result<Report, CliError> {
    let sweeps: Vec<LemmaSweep> = match a.lemma {
        1 => {
            let hi = a
                .p_max
                .ok_or_else(|| usage("--p-max is required for --lemma 1"))?;
            primes_in(a.p_min, hi)
                .into_iter()
                .map(lemma1_sweep)
                .collect::<Result<_, _>>()?
        }
        lemma => {
            let hi = a
                .q_max
                .ok_or_else(|| usage("--q-max is required for --lemma 2 or 3"))?;
            prime_powers_in(a.q_min, hi)
                .into_iter()
                .map(|q| {
                    let spec = FieldSpec::of_order(q)?;
                    if lemma == 2 {
                        lemma2_sweep(&spec)
                    } else {
                        lemma3_sweep(&spec)
                    }
                })
                .collect::<Result<_, _>>()?
        }
    };
    if sweeps.is_empty() {
        return Err(usage("the requested range contains no valid parameters"));
    }
    let pass = sweeps.iter().all(|s| s.pass);
    let body = match ctx.format {
        Format::Json => to_json(&sweeps),
        Format::Csv => {
            let mut out = String::from("lemma,modulus,instances,max_count,bound,pass\n");
            for s in &sweeps {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    s.lemma, s.modulus, s.instances, s.max_count, s.bound, s.pass
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for s in &sweeps {
                out.push_str(&format!(
                    "lemma {}, modulus {}: max count {} over {} instances, bound {}: {}\n",
                    s.lemma,
                    s.modulus,
                    s.max_count,
                    s.instances,
                    s.bound,
                    if s.pass { "pass" } else { "EXCEEDS" }
                ));
            }
            let failed = sweeps.iter().filter(|s| !s.pass).count();
            out.push_str(&format!(
                "{} of {} sweeps pass\n",
                sweeps.len() - failed,
                sweeps.len()
            ));
            out
        }
    };
    Ok(Report { body, pass })
}

fn conjecture(a: &ConjectureArgs, ctx: &Ctx) -> Result<Report, CliError> {
    let (lo, hi) = match (a.q, a.q_min, a.q_max) {
        (Some(q), None, None) => (q, q),
        (None, Some(lo), Some(hi)) => (lo, hi),
        (None, None, None) => return Err(usage("provide --q, or --q-min with --q-max")),
        _ => unreachable!("clap ties the range flags together"),
    };
    if lo > hi {
        return Err(usage(format!("--q-min {lo} exceeds --q-max {hi}")));
    }
    if hi > 64 && !a.long_run {
        return Err(usage(
            "full-family scans above q = 64 take a long time; pass --long-run to confirm",
        ));
    }
    let orders = prime_powers_in(lo, hi);
    if orders.is_empty() {
        return Err(usage("the requested range contains no prime powers"));
    }
    let verdicts = orders
        .into_iter()
        .map(|q| conjecture_scan(&FieldSpec::of_order(q)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(verdict_report(&verdicts, ctx.format))
}
