//! Command-line front end: class descriptors, parameter assignments, report
//! rendering, JSON output, and verification-script emission.

use crate::engine::{self, EngineConfig, ParamMode};
use crate::poly::ParamPolynomial;
use crate::ratio::{fmt_rat, parse_rat, Rat};
use crate::singularity::{Normalization, SingularityClass};
use crate::{oracle, script, shift, strata, Error, Result};
use clap::{Args, Parser, Subcommand};
use num::Zero;
use serde_json::{json, Value};
use std::collections::BTreeSet;

#[derive(Parser, Debug)]
#[command(
    name = "bsshift",
    version,
    about = "Bernstein-Sato root shifts of semi-weighted-homogeneous singularities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Weights, Milnor number, and spectral numbers
    Spectrum(JobArgs),
    /// Deformation parameter table: weights γ_j and monomials
    Params(JobArgs),
    /// Order-one coefficient matrix g¹ (symbolic)
    G1(JobArgs),
    /// Shift vector, root set, and solitude data at a parameter point
    Shifts(JobArgs),
    /// Unshift subspace equations for a shiftable root (use --root)
    Subspace(JobArgs),
    /// Bistable subsets and the first affine stratification
    Strata(JobArgs),
    /// Root set of the reduced Bernstein-Sato polynomial at a point
    Roots(JobArgs),
    /// Singular verification script for the given parameter point
    Singular(JobArgs),
    /// Cross-check the engine against the path-sum oracle
    OracleCheck(JobArgs),
}

#[derive(Args, Debug)]
pub struct JobArgs {
    /// Class descriptor: bp:E1,E2[,E3...] | chain:A,B | loop:A,B | loop3:A,B,C
    pub class: String,
    /// Parameter assignments: u_K=P/Q (by index) or u[I,J]=P/Q (by monomial)
    pub assign: Vec<String>,
    /// Use monomial coefficients 1 in f₁
    #[arg(long, conflicts_with = "reciprocal")]
    pub unit: bool,
    /// Use coefficients 1/eᵢ in f₁ (the default)
    #[arg(long)]
    pub reciprocal: bool,
    /// Emit a JSON object instead of text
    #[arg(long)]
    pub json: bool,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Target root for `subspace`, e.g. 83/56
    #[arg(long)]
    pub root: Option<String>,
    /// Comma-separated parameters kept formal in `g1`; all others are zero
    #[arg(long)]
    pub only: Option<String>,
}

/// A fully resolved job.
pub struct JobSpec {
    pub class: SingularityClass,
    pub assignments: Vec<(usize, Rat)>,
    pub json: bool,
    pub out: Option<std::path::PathBuf>,
    pub root: Option<Rat>,
    pub only: Option<Vec<usize>>,
}

fn parse_class(descriptor: &str, normalization: Normalization) -> Result<SingularityClass> {
    let (kind, rest) = descriptor.split_once(':').ok_or_else(|| {
        Error::InvalidInput(format!(
            "class descriptor `{}` must look like bp:9,4 or loop:6,5",
            descriptor
        ))
    })?;
    let exps: Vec<u32> = rest
        .split(',')
        .map(|p| {
            p.parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("bad exponent `{}`", p)))
        })
        .collect::<Result<_>>()?;
    SingularityClass::make(kind, &exps, normalization)
}

/// Resolve `u_K` / `u[I,J]` to a 1-based J index.
fn parse_param_key(s: &SingularityClass, key: &str) -> Result<usize> {
    let bad = || Error::InvalidInput(format!("bad parameter name `{}`", key));
    if let Some(idx) = key.strip_prefix("u_") {
        let j: usize = idx.parse().map_err(|_| bad())?;
        if j == 0 || j > s.deformation_monomials().len() {
            return Err(Error::InvalidInput(format!(
                "parameter index {} out of range 1..={}",
                j,
                s.deformation_monomials().len()
            )));
        }
        return Ok(j);
    }
    if let Some(body) = key.strip_prefix("u[").and_then(|k| k.strip_suffix(']')) {
        let exps: Vec<u32> = body
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        return s
            .j_by_exponent(&exps)
            .map(|e| e.j)
            .ok_or_else(|| Error::InvalidInput(format!("no deformation monomial {:?}", exps)));
    }
    Err(bad())
}

/// Resolve argv-level job arguments against the validated class.
pub fn resolve_job(args: &JobArgs) -> Result<JobSpec> {
    let normalization = if args.unit {
        Normalization::Unit
    } else {
        Normalization::Reciprocal
    };
    let class = parse_class(&args.class, normalization)?;
    let mut assignments = Vec::new();
    let mut seen = BTreeSet::new();
    for a in &args.assign {
        let (key, value) = a.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("assignment `{}` must look like u_3=5/16", a))
        })?;
        let j = parse_param_key(&class, key)?;
        if !seen.insert(j) {
            return Err(Error::InvalidInput(format!(
                "parameter u_{} assigned twice",
                j
            )));
        }
        let v = parse_rat(value)
            .ok_or_else(|| Error::InvalidInput(format!("bad rational `{}`", value)))?;
        assignments.push((j, v));
    }
    let root = match &args.root {
        Some(r) => Some(
            parse_rat(r).ok_or_else(|| Error::InvalidInput(format!("bad root `{}`", r)))?,
        ),
        None => None,
    };
    let only = match &args.only {
        Some(list) => Some(
            list.split(',')
                .map(|k| parse_param_key(&class, k.trim()))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(JobSpec {
        class,
        assignments,
        json: args.json,
        out: args.out.clone(),
        root,
        only,
    })
}

fn point_values(job: &JobSpec) -> Vec<Rat> {
    let mut values = vec![Rat::zero(); job.class.deformation_monomials().len()];
    for (j, v) in &job.assignments {
        values[*j - 1] = v.clone();
    }
    values
}

fn uname(j0: usize) -> String {
    format!("u_{}", j0 + 1)
}

fn nu_str(nu: &[u32]) -> String {
    format!(
        "({})",
        nu.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    )
}

fn rat_vec(rs: impl IntoIterator<Item = Rat>) -> Value {
    Value::Array(rs.into_iter().map(|r| Value::String(fmt_rat(&r))).collect())
}

fn poly_json(p: &ParamPolynomial) -> Value {
    Value::Array(
        p.terms
            .iter()
            .map(|(m, c)| {
                json!({
                    "coeff": fmt_rat(c),
                    "exponents": m.0,
                })
            })
            .collect(),
    )
}

fn class_header(s: &SingularityClass) -> String {
    format!(
        "class: {}\nn = {}, mu = {}, M = {}, weights: {}, alpha_min = {}\n",
        s,
        s.n,
        s.mu(),
        s.weights.m,
        s.weights
            .w
            .iter()
            .map(fmt_rat)
            .collect::<Vec<_>>()
            .join(", "),
        fmt_rat(&s.alpha_min()),
    )
}

fn base_json(s: &SingularityClass) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("class".into(), Value::String(s.to_string()));
    m.insert("n".into(), json!(s.n));
    m.insert("mu".into(), json!(s.mu()));
    m.insert("m".into(), json!(s.weights.m));
    m.insert("weights".into(), rat_vec(s.weights.w.clone()));
    m.insert("alpha_min".into(), Value::String(fmt_rat(&s.alpha_min())));
    m
}

fn run_spectrum(job: &JobSpec) -> Result<String> {
    let s = &job.class;
    if job.json {
        let mut m = base_json(s);
        m.insert("spectrum".into(), rat_vec(s.spectrum()));
        m.insert(
            "eigenvalue_multiplicities".into(),
            Value::Object(
                s.eigenvalue_multiplicities()
                    .into_iter()
                    .map(|(r, c)| (fmt_rat(&r), json!(c)))
                    .collect(),
            ),
        );
        return Ok(Value::Object(m).to_string());
    }
    let mut out = class_header(s);
    out.push_str("spectrum:");
    for a in s.spectrum() {
        out.push(' ');
        out.push_str(&fmt_rat(&a));
    }
    out.push('\n');
    Ok(out)
}

fn run_params(job: &JobSpec) -> Result<String> {
    let s = &job.class;
    let m1 = s.check_m1(true);
    if job.json {
        let mut m = base_json(s);
        m.insert("delta".into(), json!(s.delta()));
        m.insert("regime".into(), json!(s.regime_check()));
        m.insert("m1_restricted".into(), json!(m1.holds));
        m.insert(
            "j".into(),
            Value::Array(
                s.deformation_monomials()
                    .iter()
                    .map(|e| {
                        json!({
                            "j": e.j,
                            "exponent": e.exponent,
                            "gamma": fmt_rat(&e.gamma),
                            "rank": e.spectral_rank,
                        })
                    })
                    .collect(),
            ),
        );
        return Ok(Value::Object(m).to_string());
    }
    let mut out = class_header(s);
    out.push_str(&format!(
        "|J| = {}, delta = {}, regime = {}, restricted (M1) = {}\n",
        s.deformation_monomials().len(),
        s.delta(),
        s.regime_check(),
        m1.holds
    ));
    out.push_str(&format!(
        "{:>3}  {:>9} {:>7}  {:<14} {:>5}\n",
        "j", "gamma", "gammaM", "monomial", "rank"
    ));
    for e in s.deformation_monomials() {
        out.push_str(&format!(
            "{:>3}  {:>9} {:>7}  {:<14} {:>5}\n",
            e.j,
            fmt_rat(&e.gamma),
            e.gamma_scaled,
            nu_str(&e.exponent),
            e.spectral_rank
        ));
    }
    Ok(out)
}

fn g1_modes(job: &JobSpec) -> Vec<ParamMode> {
    let s = &job.class;
    let mut modes = vec![ParamMode::Formal; s.deformation_monomials().len()];
    if let Some(only) = &job.only {
        for m in modes.iter_mut() {
            *m = ParamMode::Zero;
        }
        for j in only {
            modes[*j - 1] = ParamMode::Formal;
        }
    }
    for (j, v) in &job.assignments {
        modes[*j - 1] = ParamMode::Value(v.clone());
    }
    modes
}

fn run_g1(job: &JobSpec) -> Result<String> {
    let s = &job.class;
    let modes = g1_modes(job);
    let table = engine::build_gm_table(s, &modes, &EngineConfig::order1())?;
    let g1 = engine::g1_matrix(&table);
    let manual = !s.check_m1(true).holds;
    if job.json {
        let mut m = base_json(s);
        m.insert("manual_mode".into(), json!(manual));
        let mut entries = serde_json::Map::new();
        for ((k, l), p) in &g1 {
            entries.insert(format!("{},{}", k, l), poly_json(p));
        }
        m.insert("g1".into(), Value::Object(entries));
        return Ok(Value::Object(m).to_string());
    }
    let mut out = class_header(s);
    if manual {
        out.push_str(
            "restricted (M1) fails: raw entries keyed by basis monomials, no shift vector\n",
        );
    }
    out.push_str(&format!("nonzero g1 entries: {}\n", g1.len()));
    for ((k, l), p) in &g1 {
        out.push_str(&format!(
            "g1[{},{}] nu{} -> nu{}: {}\n",
            k,
            l,
            nu_str(&s.basis_element(*k).nu),
            nu_str(&s.basis_element(*l).nu),
            p.render(&uname)
        ));
    }
    Ok(out)
}

fn shift_report_json(
    s: &SingularityClass,
    rep: &shift::ShiftReport,
    sol: &Option<(Rat, Rat, Rat)>,
) -> Value {
    let mut m = base_json(s);
    m.insert(
        "shifts".into(),
        json!({
            "r": rep.r,
            "roots": rep.roots.iter().map(fmt_rat).collect::<Vec<_>>(),
            "shifted": rep.shifted.iter().map(fmt_rat).collect::<Vec<_>>(),
            "shiftable": rep.shiftable.iter().map(fmt_rat).collect::<Vec<_>>(),
            "point": rep.point.iter().map(fmt_rat).collect::<Vec<_>>(),
        }),
    );
    if let Some((alpha, sr, sd)) = sol {
        m.insert(
            "solitude".into(),
            json!({
                "alpha": fmt_rat(alpha),
                "sr": fmt_rat(sr),
                "sd": fmt_rat(sd),
            }),
        );
    }
    Value::Object(m)
}

fn unique_unshifted(rep: &shift::ShiftReport) -> Option<Rat> {
    let unshifted: Vec<&Rat> = rep.shiftable.intersection(&rep.roots).collect();
    if unshifted.len() == 1 {
        Some(unshifted[0].clone())
    } else {
        None
    }
}

fn run_shifts(job: &JobSpec, roots_only: bool) -> Result<String> {
    let s = &job.class;
    let values = point_values(job);
    let rep = shift::shifts_at_point(s, &values)?;
    let sol = unique_unshifted(&rep).map(|alpha| {
        let (sr, sd) = shift::solitude(s, &rep.roots, &alpha).expect("solitary root");
        (alpha, sr, sd)
    });
    if job.json {
        return Ok(shift_report_json(s, &rep, &sol).to_string());
    }
    let mut out = class_header(s);
    out.push_str(&format!(
        "point:{}\n",
        s.deformation_monomials()
            .iter()
            .zip(&values)
            .map(|(e, v)| format!(" u_{}={}", e.j, fmt_rat(v)))
            .collect::<String>()
    ));
    out.push_str(&format!(
        "roots: {}\n",
        rep.roots.iter().map(fmt_rat).collect::<Vec<_>>().join(" ")
    ));
    if roots_only {
        return Ok(out);
    }
    let shifted_ranks: Vec<String> = rep
        .r
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == 1)
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    out.push_str(&format!("shifted ranks: {}\n", shifted_ranks.join(" ")));
    out.push_str(&format!(
        "shifted spectral numbers: {}\n",
        rep.shifted.iter().map(fmt_rat).collect::<Vec<_>>().join(" ")
    ));
    out.push_str(&format!(
        "distribution: {}\n",
        shift::root_distribution_text(s, &rep)
    ));
    if let Some((alpha, sr, sd)) = &sol {
        out.push_str(&format!(
            "solitary unshifted shiftable root {}: SR = {}, SD = {}\n",
            fmt_rat(alpha),
            fmt_rat(sr),
            fmt_rat(sd)
        ));
    }
    Ok(out)
}

fn run_subspace(job: &JobSpec) -> Result<String> {
    let s = &job.class;
    let root = job
        .root
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("subspace needs --root P/Q".into()))?;
    let target_alpha = root * Rat::from_integer(num::BigInt::from(s.weights.m));
    let gamma_scaled = target_alpha
        - Rat::from_integer(num::BigInt::from(s.alpha_min_scaled() + s.weights.m));
    let je = s
        .deformation_monomials()
        .iter()
        .find(|e| Rat::from_integer(num::BigInt::from(e.gamma_scaled)) == gamma_scaled)
        .ok_or_else(|| {
            Error::InvalidInput(format!("{} is not a shiftable root", fmt_rat(root)))
        })?;
    let sys = shift::unshift_subspace(s, je.j)?;
    if job.json {
        let mut m = base_json(s);
        let eq_json = |eqs: &[(usize, ParamPolynomial)]| {
            Value::Array(
                eqs.iter()
                    .map(|(j, p)| json!({"u": j, "poly": poly_json(p)}))
                    .collect(),
            )
        };
        m.insert(
            "subspace".into(),
            json!({
                "root": fmt_rat(root),
                "j": sys.j,
                "rank": sys.target_rank,
                "codimension": sys.codimension(),
                "triangular": eq_json(&sys.equations),
                "solved": eq_json(&sys.solved),
            }),
        );
        return Ok(Value::Object(m).to_string());
    }
    let mut out = class_header(s);
    out.push_str(&format!(
        "unshift subspace of root {} (j = {}, rank {}), codimension {}\n",
        fmt_rat(root),
        sys.j,
        sys.target_rank,
        sys.codimension()
    ));
    out.push_str("triangular:\n");
    for (j, p) in &sys.equations {
        out.push_str(&format!("  u_{} = {}\n", j, p.render(&uname)));
    }
    out.push_str("solved:\n");
    for (j, p) in &sys.solved {
        out.push_str(&format!("  u_{} = {}\n", j, p.render(&uname)));
    }
    Ok(out)
}

fn run_strata(job: &JobSpec) -> Result<String> {
    let s = &job.class;
    let all = strata::enumerate_bistable(s);
    let mg = strata::minimal_generators(s);
    let nonempty = all.iter().filter(|b| !b.set.is_empty()).count();
    let proper_nonempty = all
        .iter()
        .filter(|b| !b.set.is_empty() && b.is_proper)
        .count();
    if job.json {
        let mut m = base_json(s);
        m.insert(
            "strata".into(),
            Value::Array(
                all.iter()
                    .map(|b| {
                        Value::Array(b.set.iter().map(|j| json!(j)).collect())
                    })
                    .collect(),
            ),
        );
        m.insert(
            "removable".into(),
            Value::Array(
                all.iter()
                    .map(|b| Value::Array(b.removable.iter().map(|j| json!(j)).collect()))
                    .collect(),
            ),
        );
        m.insert(
            "minimal_generators".into(),
            Value::Array(mg.iter().map(|j| json!(j)).collect()),
        );
        m.insert("nonempty".into(), json!(nonempty));
        return Ok(Value::Object(m).to_string());
    }
    let mut out = class_header(s);
    out.push_str(&format!(
        "{} bistable subsets ({} nonempty, {} proper nonempty), minimal generators: {}\n",
        all.len(),
        nonempty,
        proper_nonempty,
        mg.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(" ")
    ));
    let mut by_size: std::collections::BTreeMap<usize, usize> = Default::default();
    for b in &all {
        *by_size.entry(b.set.len()).or_insert(0) += 1;
    }
    out.push_str("by size:");
    for (size, count) in by_size.iter().rev() {
        out.push_str(&format!(" {}:{}", size, count));
    }
    out.push('\n');
    for b in &all {
        out.push_str(&format!(
            "  {{{}}} removable: {{{}}}\n",
            b.set.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(","),
            b.removable
                .iter()
                .map(|j| j.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ));
    }
    Ok(out)
}

fn run_singular(job: &JobSpec) -> Result<String> {
    let s = &job.class;
    let values = point_values(job);
    let text = script::emit_verification_script(s, &values);
    if job.json {
        let mut m = base_json(s);
        m.insert("script".into(), Value::String(text));
        return Ok(Value::Object(m).to_string());
    }
    Ok(text)
}

fn run_oracle_check(job: &JobSpec) -> Result<String> {
    let s = &job.class;
    let want = oracle::g1_full_matrix(s)?;
    let table = engine::build_gm_table(s, &engine::all_formal(s), &EngineConfig::default())?;
    let got = engine::g1_matrix(&table);
    let mut mismatches = Vec::new();
    let keys: BTreeSet<(usize, usize)> = want.keys().chain(got.keys()).copied().collect();
    for key in &keys {
        if want.get(key) != got.get(key) {
            mismatches.push(format!("g1[{},{}] disagrees", key.0, key.1));
        }
    }
    if !mismatches.is_empty() {
        return Err(Error::InvalidInput(format!(
            "oracle mismatch on {}: {}",
            s,
            mismatches.join("; ")
        )));
    }
    if job.json {
        let mut m = base_json(s);
        m.insert("oracle_entries".into(), json!(keys.len()));
        m.insert("agree".into(), json!(true));
        return Ok(Value::Object(m).to_string());
    }
    Ok(format!(
        "{}oracle and engine agree on all {} entries\n",
        class_header(s),
        keys.len()
    ))
}

/// Execute one subcommand, returning the rendered report.
pub fn run(cmd: &Cmd) -> Result<(String, bool, Option<std::path::PathBuf>)> {
    let (args, text) = match cmd {
        Cmd::Spectrum(a) => (a, run_spectrum(&resolve_job(a)?)?),
        Cmd::Params(a) => (a, run_params(&resolve_job(a)?)?),
        Cmd::G1(a) => (a, run_g1(&resolve_job(a)?)?),
        Cmd::Shifts(a) => (a, run_shifts(&resolve_job(a)?, false)?),
        Cmd::Subspace(a) => (a, run_subspace(&resolve_job(a)?)?),
        Cmd::Strata(a) => (a, run_strata(&resolve_job(a)?)?),
        Cmd::Roots(a) => (a, run_shifts(&resolve_job(a)?, true)?),
        Cmd::Singular(a) => (a, run_singular(&resolve_job(a)?)?),
        Cmd::OracleCheck(a) => (a, run_oracle_check(&resolve_job(a)?)?),
    };
    Ok((text, args.json, args.out.clone()))
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn main_with(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli.cmd) {
        Ok((mut text, json, out)) => {
            if json && !text.ends_with('\n') {
                text.push('\n');
            }
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {}", path.display(), e);
                        return 1;
                    }
                }
                None => print!("{}", text),
            }
            0
        }
        Err(e) => {
            eprintln!("error: {}", e);
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(args: &[&str]) -> Cmd {
        let mut argv = vec!["bsshift".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        Cli::try_parse_from(argv).unwrap().cmd
    }

    #[test]
    fn descriptor_and_assignment_parsing() {
        let cmd = job(&["shifts", "bp:9,4", "u_1=1", "u_2=7/18", "--unit"]);
        let Cmd::Shifts(a) = &cmd else { panic!() };
        let spec = resolve_job(a).unwrap();
        assert_eq!(spec.class.to_string(), "bp:9,4 (unit)");
        assert_eq!(spec.assignments.len(), 2);
        let cmd = job(&["spectrum", "loop:6,5"]);
        let Cmd::Spectrum(a) = &cmd else { panic!() };
        let spec = resolve_job(a).unwrap();
        assert_eq!(spec.class.to_string(), "loop:6,5 (reciprocal)");
    }

    #[test]
    fn monomial_keys_resolve() {
        let cmd = job(&["shifts", "loop:6,5", "u[5,2]=1", "u[4,4]=-1/3"]);
        let Cmd::Shifts(a) = &cmd else { panic!() };
        let spec = resolve_job(a).unwrap();
        assert_eq!(spec.assignments[0].0, 1);
        assert_eq!(spec.assignments[1].0, 5);
    }

    #[test]
    fn bad_inputs_are_domain_errors() {
        let cmd = job(&["spectrum", "bp:2,3"]);
        let Cmd::Spectrum(a) = &cmd else { panic!() };
        assert!(matches!(
            resolve_job(a),
            Err(Error::ExponentTooSmall(_))
        ));
        let cmd = job(&["shifts", "bp:9,4", "u_9=1"]);
        let Cmd::Shifts(a) = &cmd else { panic!() };
        assert!(matches!(resolve_job(a), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with(vec!["bsshift".into(), "--help".into()]), 0);
        assert_eq!(main_with(vec!["bsshift".into(), "nonsense".into()]), 2);
        assert_eq!(
            main_with(vec![
                "bsshift".into(),
                "spectrum".into(),
                "bp:2,3".into()
            ]),
            1
        );
    }
}
