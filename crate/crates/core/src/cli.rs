//! Batch verification harness and report rendering.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::detideal::{check_fixed_variable_factors, verify_ineq_description_of, IneqVerdict};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::polymatroid::{is_discrete_polymatroid, snp_check, SnpVerdict};
use crate::poly::{SparsePoly, VarNames};
use crate::schubert::{
    double_schubert, enumerate_pipe_dreams, ordinary_schubert, pipe_dream_sum, LevelSweep,
};

pub const MIN_P: usize = 2;
pub const MAX_P: usize = 7;
/// Largest `p` for which the pipe-dream oracle runs by default.
pub const MAX_P_WITH_PIPE_DREAMS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::InvalidConfig(format!("unknown format {other:?}"))),
        }
    }
}

/// Which checks run on each permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    /// Structural invariants of the recursion output: degree, sign pattern,
    /// variable bounds, positivity after `s ↦ -s`.
    pub recursion: bool,
    /// Agreement with the pipe-dream expansion.
    pub pipedream: bool,
    /// Saturation of the Newton polytope via exact LP.
    pub snp: bool,
    /// Discrete polymatroid certificate.
    pub polymatroid: bool,
    /// Inequality description with support-minimum constants, plus the
    /// variable-generator factorization.
    pub ineqs: bool,
}

impl Checks {
    pub const ALL: Checks = Checks {
        recursion: true,
        pipedream: true,
        snp: true,
        polymatroid: true,
        ineqs: true,
    };

    pub const NONE: Checks = Checks {
        recursion: false,
        pipedream: false,
        snp: false,
        polymatroid: false,
        ineqs: false,
    };
}

impl FromStr for Checks {
    type Err = Error;

    /// Comma-separated list of `recursion`, `pipedream`, `snp`, `polymatroid`,
    /// `ineqs`, `all`.
    fn from_str(s: &str) -> Result<Self> {
        let mut checks = Checks::NONE;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "all" => checks = Checks::ALL,
                "recursion" => checks.recursion = true,
                "pipedream" | "pipedreams" => checks.pipedream = true,
                "snp" => checks.snp = true,
                "polymatroid" => checks.polymatroid = true,
                "ineqs" => checks.ineqs = true,
                other => return Err(Error::InvalidConfig(format!("unknown check {other:?}"))),
            }
        }
        if checks == Checks::NONE {
            return Err(Error::InvalidConfig("no checks selected".into()));
        }
        Ok(checks)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub p: usize,
    /// `None` runs every permutation of `S_p`.
    pub permutation: Option<Permutation>,
    pub checks: Checks,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
    pub pipe_dream_oracle: bool,
}

impl RunConfig {
    pub fn exhaustive(p: usize) -> Self {
        Self {
            p,
            permutation: None,
            checks: Checks::ALL,
            format: Format::Json,
            out: None,
            threads: None,
            pipe_dream_oracle: true,
        }
    }

    pub fn single(perm: Permutation) -> Self {
        Self {
            p: perm.size(),
            permutation: Some(perm),
            ..Self::exhaustive(0)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_P..=MAX_P).contains(&self.p) {
            return Err(Error::InvalidConfig(format!(
                "p = {} outside the supported range {MIN_P}..={MAX_P}",
                self.p
            )));
        }
        if self.p > MAX_P_WITH_PIPE_DREAMS && self.pipe_dream_oracle && self.checks.pipedream {
            return Err(Error::InvalidConfig(format!(
                "p = {} requires --no-pipedream-oracle",
                self.p
            )));
        }
        if let Some(perm) = &self.permutation {
            if perm.size() != self.p {
                return Err(Error::InvalidConfig(format!(
                    "permutation {perm:?} is not in S_{}",
                    self.p
                )));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidConfig("thread count must be positive".into()));
        }
        Ok(())
    }

    fn runs_pipe_dreams(&self) -> bool {
        self.checks.pipedream && self.pipe_dream_oracle
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PermRecord {
    pub perm: Permutation,
    pub length: usize,
    pub terms: usize,
    pub support_size: usize,
    pub pipe_dreams: Option<usize>,
    pub recursion: Outcome,
    pub oracle_agreement: Outcome,
    pub snp: Outcome,
    pub polymatroid: Outcome,
    pub ineqs: Outcome,
    /// Failure witnesses keyed by check name.
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub witnesses: serde_json::Map<String, Value>,
}

impl PermRecord {
    pub fn passed(&self) -> bool {
        [self.recursion, self.oracle_agreement, self.snp, self.polymatroid, self.ineqs]
            .iter()
            .all(|o| *o != Outcome::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
    pub threads: usize,
    /// Microseconds per record, in record order.
    pub per_record_micros: Vec<u128>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub config: RunConfig,
    pub records: Vec<PermRecord>,
    pub summary: Summary,
    pub timing: Timing,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json_string(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Flat per-permutation rows; witnesses and timing stay in the JSON form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "perm,length,terms,support_size,pipe_dreams,recursion,oracle_agreement,snp,polymatroid,ineqs\n",
        );
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.perm,
                r.length,
                r.terms,
                r.support_size,
                r.pipe_dreams.map(|n| n.to_string()).unwrap_or_default(),
                r.recursion.as_str(),
                r.oracle_agreement.as_str(),
                r.snp.as_str(),
                r.polymatroid.as_str(),
                r.ineqs.as_str(),
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<10} {:>3} {:>6} {:>7} {:>6}  {:<9} {:<9} {:<9} {:<9} {:<9}",
            "perm", "len", "terms", "support", "dreams", "recursion", "oracle", "snp", "polymat", "ineqs"
        );
        for r in &self.records {
            let _ = writeln!(
                out,
                "{:<10} {:>3} {:>6} {:>7} {:>6}  {:<9} {:<9} {:<9} {:<9} {:<9}",
                r.perm.to_string(),
                r.length,
                r.terms,
                r.support_size,
                r.pipe_dreams.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                r.recursion.as_str(),
                r.oracle_agreement.as_str(),
                r.snp.as_str(),
                r.polymatroid.as_str(),
                r.ineqs.as_str(),
            );
            for (check, w) in &r.witnesses {
                let _ = writeln!(out, "    {check} witness: {w}");
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "\nsummary: {} records, {} passed, {} failed", s.records, s.passed, s.failed);
        if !s.failures.is_empty() {
            let _ = writeln!(out, "failures: {}", s.failures.join(" "));
        }
        let _ = writeln!(
            out,
            "\n[timing]\nwall_seconds = {:.3}\nthreads = {}",
            self.timing.wall_seconds, self.timing.threads
        );
        out
    }
}

/// Runs every selected check on one permutation.
pub fn verify_permutation(perm: &Permutation, f: &SparsePoly, config: &RunConfig) -> PermRecord {
    let p = perm.size();
    let support = f.support();
    let mut witnesses = serde_json::Map::new();

    let recursion = if config.checks.recursion {
        let failure = recursion_invariant_failure(perm, f);
        if let Some(msg) = &failure {
            witnesses.insert("recursion".into(), json!(msg));
        }
        Outcome::from_bool(failure.is_none())
    } else {
        Outcome::Skipped
    };

    let mut pipe_dreams = None;
    let oracle_agreement = if config.runs_pipe_dreams() {
        let dreams = enumerate_pipe_dreams(perm);
        pipe_dreams = Some(dreams.len());
        let oracle = pipe_dream_sum(p, &dreams);
        let agree = oracle == *f;
        let count_ok = f.substitute_s_zero().coefficient_sum() == BigInt::from(dreams.len());
        if !agree {
            let diff = f - &oracle;
            witnesses.insert(
                "oracle_agreement".into(),
                json!({"difference": diff.to_json_terms()}),
            );
        } else if !count_ok {
            witnesses.insert("oracle_agreement".into(), json!({"pipe_dream_count": dreams.len()}));
        }
        Outcome::from_bool(agree && count_ok)
    } else {
        Outcome::Skipped
    };

    let mut snp_ok = None;
    let snp = if config.checks.snp {
        let report = snp_check(f).expect("Schubert polynomials are nonzero");
        if let SnpVerdict::NotSnp { .. } = &report.verdict {
            witnesses.insert("snp".into(), serde_json::to_value(&report).unwrap());
        }
        snp_ok = Some(report.is_snp());
        Outcome::from_bool(report.is_snp())
    } else {
        Outcome::Skipped
    };

    let mut polymatroid_ok = None;
    let polymatroid = if config.checks.polymatroid {
        let cert = is_discrete_polymatroid(&support);
        let mut ok = cert.is_polymatroid();
        if !ok {
            witnesses.insert("polymatroid".into(), cert.to_json());
        }
        // a polymatroid base set has a saturated hull
        if ok && snp_ok == Some(false) {
            witnesses.insert("polymatroid_vs_snp".into(), json!("polymatroid but not SNP"));
            ok = false;
        }
        polymatroid_ok = Some(cert.is_polymatroid());
        Outcome::from_bool(ok)
    } else {
        Outcome::Skipped
    };

    let ineqs = if config.checks.ineqs {
        let report = verify_ineq_description_of(perm, f);
        let mut ok = report.passed();
        if let IneqVerdict::Fail { .. } = &report.verdict {
            witnesses.insert("ineqs".into(), serde_json::to_value(&report).unwrap());
        }
        if let Some(pm) = polymatroid_ok {
            if pm != report.passed() {
                witnesses.insert("ineqs_vs_polymatroid".into(), json!("verdicts disagree"));
                ok = false;
            }
        }
        if let Err((i, j)) = check_fixed_variable_factors(perm, f) {
            witnesses.insert(
                "fixed_variable_factor".into(),
                json!({"cell": [i, j], "factor": format!("t{i} + s{j}")}),
            );
            ok = false;
        }
        Outcome::from_bool(ok)
    } else {
        Outcome::Skipped
    };

    PermRecord {
        perm: perm.clone(),
        length: perm.length(),
        terms: f.num_terms(),
        support_size: support.len(),
        pipe_dreams,
        recursion,
        oracle_agreement,
        snp,
        polymatroid,
        ineqs,
        witnesses,
    }
}

/// Homogeneity, variable bounds, sign pattern and positivity; `None` if all hold.
pub fn recursion_invariant_failure(perm: &Permutation, f: &SparsePoly) -> Option<String> {
    let p = perm.size();
    if f.total_degree() != Some(perm.length()) || !f.is_homogeneous() {
        return Some(format!("not homogeneous of degree {}", perm.length()));
    }
    for (e, c) in f.terms() {
        let e = e.as_slice();
        for i in 1..=p {
            if e[i - 1] as usize > p - i || e[p + i - 1] as usize > p - i {
                return Some(format!("exponent {e:?} exceeds the staircase bound"));
            }
        }
        let sdeg: usize = e[p..].iter().map(|&x| x as usize).sum();
        let negative = c.sign() == num_bigint::Sign::Minus;
        if negative != (sdeg % 2 == 1) {
            return Some(format!("coefficient {c} of {e:?} has the wrong sign"));
        }
    }
    if !f.negate_s().all_coefficients_positive() {
        return Some("negate_s has a nonpositive coefficient".into());
    }
    if !f.substitute_s_zero().all_coefficients_nonnegative() {
        return Some("ordinary Schubert polynomial has a negative coefficient".into());
    }
    None
}

fn thread_pool(config: &RunConfig) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))
}

/// Runs the configured verification. Records come out in lexicographic order
/// of one-line words whatever the thread count.
pub fn run(config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    let pool = thread_pool(config)?;
    let started = Instant::now();

    let timed = |perm: &Permutation, f: &SparsePoly| {
        let t = Instant::now();
        let record = verify_permutation(perm, f, config);
        (record, t.elapsed().as_micros())
    };
    let mut records: Vec<(PermRecord, u128)> = match &config.permutation {
        Some(perm) => {
            let f = pool.install(|| double_schubert(perm));
            vec![timed(perm, &f)]
        }
        None => pool.install(|| {
            let mut out = Vec::new();
            for level in LevelSweep::new(config.p) {
                let verified: Vec<(PermRecord, u128)> = level
                    .par_iter()
                    .map(|(q, f): &(Permutation, Arc<SparsePoly>)| timed(q, f))
                    .collect();
                out.extend(verified);
            }
            out
        }),
    };
    records.sort_by(|a, b| a.0.perm.cmp(&b.0.perm));
    let (records, per_record_micros): (Vec<PermRecord>, Vec<u128>) = records.into_iter().unzip();

    let failures: Vec<String> = records
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.perm.to_string())
        .collect();
    let summary = Summary {
        records: records.len(),
        passed: records.len() - failures.len(),
        failed: failures.len(),
        failures,
    };
    let timing = Timing {
        wall_seconds: started.elapsed().as_secs_f64(),
        threads: pool.current_num_threads(),
        per_record_micros,
    };
    Ok(VerificationReport {
        config: config.clone(),
        records,
        summary,
        timing,
    })
}

/// Writes the rendered report to the configured path, or returns it for stdout.
pub fn emit(report: &VerificationReport, config: &RunConfig) -> Result<Option<String>> {
    let text = report.render(config.format);
    match &config.out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

/// `𝔖_π` (or `𝔖_π(t, 0)` when `ordinary`) as text or JSON.
pub fn print_polynomial(perm: &str, ordinary: bool, format: Format) -> Result<String> {
    let perm: Permutation = perm.parse()?;
    let f = if ordinary {
        ordinary_schubert(&perm)
    } else {
        double_schubert(&perm)
    };
    Ok(match format {
        Format::Text => format!("{}\n", f.display(VarNames::TS)),
        Format::Json | Format::Csv => {
            let dreams = enumerate_pipe_dreams(&perm).len();
            let v = json!({
                "perm": perm,
                "length": perm.length(),
                "polynomial": f.to_json_terms(),
                "num_pipe_dreams": dreams,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
    })
}
