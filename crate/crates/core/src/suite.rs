//! Suite orchestration and report emission.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bwb::{serre_selftest, shortcut_soundness, GradedRep, SelfTestOutcome};
use crate::partition::{evenize, mult, mult_with, partitions_up_to, MultMethod, Partition, Profile};
use crate::phi::{analyze_phi, stable_cone_decomposition, PhiSpec};
use crate::x1::{
    exceptionality_check, hom_algebra_check, p1_lemma_check, rhom_l, serre_symmetry_check, CaseId,
    Evidence, ShiftConvention, Status, Variant, VerificationRecord, X1Error, X1Model,
};
use crate::x2::{x2_explore, X2Model};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    X1(#[from] X1Error),
    #[error("emit: {0}")]
    Emit(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteName {
    #[serde(rename = "section3")]
    Section3,
    #[serde(rename = "phi")]
    Phi,
    #[serde(rename = "thm41")]
    Thm41,
    #[serde(rename = "exceptional")]
    Exceptional,
    #[serde(rename = "homalgebra")]
    HomAlgebra,
    #[serde(rename = "p1lemma")]
    P1Lemma,
    #[serde(rename = "x2explore")]
    X2Explore,
    #[serde(rename = "bwb-selftest")]
    BwbSelftest,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Section3,
        SuiteName::Phi,
        SuiteName::Thm41,
        SuiteName::Exceptional,
        SuiteName::HomAlgebra,
        SuiteName::P1Lemma,
        SuiteName::X2Explore,
        SuiteName::BwbSelftest,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Section3 => "section3",
            SuiteName::Phi => "phi",
            SuiteName::Thm41 => "thm41",
            SuiteName::Exceptional => "exceptional",
            SuiteName::HomAlgebra => "homalgebra",
            SuiteName::P1Lemma => "p1lemma",
            SuiteName::X2Explore => "x2explore",
            SuiteName::BwbSelftest => "bwb-selftest",
        }
    }

    pub fn is_exploration(&self) -> bool {
        *self == SuiteName::X2Explore
    }
}

impl FromStr for SuiteName {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, SuiteError> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| SuiteError::Usage(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, SuiteError> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(SuiteError::Usage(format!("unknown format {other:?}"))),
        }
    }
}

/// Which claims of the grouping theorem to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartSelection {
    One,
    Two,
    Three,
    #[default]
    All,
}

impl FromStr for PartSelection {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, SuiteError> {
        match s {
            "1" => Ok(PartSelection::One),
            "2" => Ok(PartSelection::Two),
            "3" => Ok(PartSelection::Three),
            "all" => Ok(PartSelection::All),
            other => Err(SuiteError::Usage(format!("unknown part {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub n: Vec<usize>,
    pub max_boxes: usize,
    pub max_m: usize,
    /// Width of the twist window of the `p1lemma` suite; defaults to `C(2n, 2)`.
    pub kmax: Option<usize>,
    pub part: PartSelection,
    pub shift: ShiftConvention,
    pub large: bool,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub jobs: usize,
}

impl SuiteConfig {
    pub fn new(suite: SuiteName) -> Self {
        let n = match suite {
            SuiteName::Section3 | SuiteName::BwbSelftest => vec![],
            SuiteName::Phi => vec![3],
            _ => vec![2, 3],
        };
        SuiteConfig {
            suite,
            n,
            max_boxes: 14,
            max_m: 3,
            kmax: None,
            part: PartSelection::All,
            shift: ShiftConvention::RelDim,
            large: false,
            samples: 10_000,
            seed: 0x5eed,
            jobs: 0,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = vec![n];
        self
    }

    pub fn validate(&self) -> Result<(), SuiteError> {
        let geometric = !matches!(
            self.suite,
            SuiteName::Section3 | SuiteName::Phi | SuiteName::BwbSelftest
        );
        for &n in &self.n {
            if geometric && n < 2 {
                return Err(SuiteError::Usage(format!("{} needs n ≥ 2", self.suite)));
            }
            if n == 0 {
                return Err(SuiteError::Usage("n must be positive".into()));
            }
            if n > 3 && !self.large {
                return Err(SuiteError::Usage(format!("n = {n} needs --large")));
            }
            if self.suite == SuiteName::X2Explore && n > 3 {
                return Err(SuiteError::Usage("x2explore supports n ≤ 3".into()));
            }
        }
        if self.max_boxes > 20 && !self.large {
            return Err(SuiteError::Usage("max boxes above 20 needs --large".into()));
        }
        if self.max_m > 4 && !self.large {
            return Err(SuiteError::Usage("m above 4 needs --large".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub exploration: usize,
}

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Self {
        let mut s = Summary {
            total: records.len(),
            ..Summary::default()
        };
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
                Status::Exploration => s.exploration += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: SuiteName,
    pub config: SuiteConfig,
    pub records: Vec<VerificationRecord>,
    pub summary: Summary,
    /// Kept out of the emitted bytes so identical configs give identical output.
    #[serde(skip)]
    pub wall_clock: Duration,
}

impl Report {
    pub fn new(config: SuiteConfig, mut records: Vec<VerificationRecord>) -> Self {
        records.sort_by(|a, b| a.case.cmp(&b.case));
        Report {
            suite: config.suite,
            summary: Summary::of(&records),
            config,
            records,
            wall_clock: Duration::ZERO,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.inconclusive == 0
    }

    /// 0 when every record passes (always for exploration suites), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.suite.is_exploration() || self.all_pass() {
            0
        } else {
            1
        }
    }
}

fn record(case: CaseId, claim: String, ok: bool, evidence: Vec<Evidence>) -> VerificationRecord {
    VerificationRecord {
        case,
        claim,
        status: if ok { Status::Pass } else { Status::Fail },
        evidence,
        euler: None,
        result: None,
    }
}

fn note(pair: &str, branch: &str, reason: String) -> Evidence {
    Evidence {
        pair: pair.into(),
        branch: branch.into(),
        cohomology: None,
        reason,
    }
}

fn error_record(case: CaseId, e: &X1Error) -> VerificationRecord {
    record(
        case,
        "computation completes".into(),
        false,
        vec![note("error", "internal", e.to_string())],
    )
}

fn section3_records(max_boxes: usize) -> Vec<VerificationRecord> {
    let all = partitions_up_to(max_boxes);
    let mut reference: BTreeMap<Profile, Partition> = BTreeMap::new();
    for l in all.iter().filter(|l| l.is_mildly_odd()) {
        reference.entry(l.profile()).or_insert_with(|| l.clone());
    }
    all.par_iter()
        .flat_map_iter(|lambda| {
            let ht = lambda.height();
            let case = |prop: &str| {
                CaseId::new("section3", 0)
                    .param(&lambda.to_string())
                    .variant(prop)
            };
            let slow: Vec<u64> = (0..=ht)
                .map(|k| mult_with(lambda, k, MultMethod::Enumerate))
                .collect();
            let fast: Vec<u64> = (0..=ht).map(|k| mult(lambda, k)).collect();
            let values = format!("mult = {slow:?}");
            let ev = |route: &str| vec![note("mult(λ, k), 0 ≤ k ≤ ht", route, values.clone())];
            let mut out = Vec::new();
            let agree = slow == fast && (lambda.is_mildly_odd() || slow.iter().all(|&v| v == 0));
            out.push(record(
                case("agreement"),
                format!("enumeration equals profile route for {lambda}"),
                agree,
                ev("enumerate vs evenize + convolution"),
            ));
            if !lambda.is_mildly_odd() {
                return out;
            }
            let odd = lambda.odd_column_count();
            let top = 2 * ht.div_ceil(2);
            let at = |k: usize| mult_with(lambda, k, MultMethod::Enumerate);
            out.push(record(
                case("head"),
                format!("mult({lambda}, k) = 0 for k < {odd}"),
                (0..odd).all(|k| at(k) == 0),
                ev("enumerate"),
            ));
            out.push(record(
                case("symmetry"),
                format!("mult({lambda}, k) = mult({lambda}, {top} − k)"),
                (0..=top).all(|k| at(k) == at(top - k)),
                ev("enumerate"),
            ));
            let parity: Vec<u64> = (0..=ht.div_ceil(2))
                .filter(|k| k % 2 == odd % 2)
                .map(at)
                .collect();
            out.push(record(
                case("monotone"),
                format!("mult({lambda}, ·) is non-decreasing on its parity class up to {}", ht.div_ceil(2)),
                parity.windows(2).all(|w| w[0] <= w[1]),
                ev("enumerate"),
            ));
            let h = lambda.profile();
            let rep = &reference[&h];
            let rep_vals: Vec<u64> = (0..=ht)
                .map(|k| mult_with(rep, k, MultMethod::Enumerate))
                .collect();
            out.push(record(
                case("profile"),
                format!("mult({lambda}, ·) equals mult({rep}, ·) for profile {h}"),
                rep_vals == slow,
                ev("enumerate"),
            ));
            let steps = evenize(lambda).map(|(p, s)| (p.is_even(), s));
            out.push(record(
                case("evenize"),
                format!("evenization of {lambda} takes {odd} steps"),
                steps == Ok((true, odd)),
                vec![note("evenize", "profile", format!("{steps:?}"))],
            ));
            out
        })
        .collect()
}

fn phi_records(max_n: usize, max_m: usize) -> Vec<VerificationRecord> {
    let triples: Vec<(usize, usize, usize)> = (1..=max_n)
        .flat_map(|n| (0..=n).flat_map(move |i| (0..=max_m).map(move |m| (n, i, m))))
        .collect();
    triples
        .par_iter()
        .flat_map_iter(|&(n, i, m)| {
            let case = |prop: &str| {
                CaseId::new("phi", n)
                    .ijk(Some(i as i64), None, None)
                    .param(&format!("m={m}"))
                    .variant(prop)
            };
            let mut out = Vec::new();
            let mut inj_ev = Vec::new();
            let mut rows_ev = Vec::new();
            let (mut inj, mut rows) = (true, true);
            for dim in 1..=2 * n {
                let a = PhiSpec::new(n, i, m, dim).map_err(X1Error::from).and_then(|s| Ok(analyze_phi(&s)?));
                match a {
                    Ok(a) => {
                        inj &= a.is_injective();
                        let bound = 2 * n - i + m;
                        let tall: Vec<String> = a
                            .coker_char
                            .weights()
                            .filter(|w| w.height() >= bound)
                            .map(|w| w.to_string())
                            .collect();
                        rows &= tall.is_empty();
                        inj_ev.push(note(
                            &format!("φ at N = {dim}"),
                            "rank oracle",
                            format!("rank {} of domain {}", a.rank, a.domain_dim),
                        ));
                        rows_ev.push(note(
                            &format!("coker at N = {dim}"),
                            "rank oracle",
                            format!("max height {} (bound < {bound}), offending {tall:?}", a.coker_char.max_height()),
                        ));
                    }
                    Err(e) => out.push(error_record(case("analyze"), &e)),
                }
            }
            out.push(record(case("injective"), format!("φ_{{{n},{i},{m}}} injective for N ≤ {}", 2 * n), inj, inj_ev));
            out.push(record(
                case("coker-rows"),
                format!("coker φ_{{{n},{i},{m}}} has fewer than {} rows for N ≤ {}", 2 * n - i + m, 2 * n),
                rows,
                rows_ev,
            ));
            match stable_cone_decomposition(n, i, m) {
                Ok(s) => {
                    let ker_ok = s.ker.weights().all(|w| w.height() > 2 * n);
                    let gap_ok = s
                        .ker
                        .weights()
                        .chain(s.coker.weights())
                        .all(|w| w.height() != 2 * n && w.height() + 1 != 2 * n);
                    let route = format!("stable {:?}", s.route);
                    out.push(record(
                        case("stable-ker-rows"),
                        format!("stable ker φ_{{{n},{i},{m}}} has more than {} rows", 2 * n),
                        ker_ok,
                        vec![note("stable kernel", &route, s.ker.to_string())],
                    ));
                    out.push(record(
                        case("cone-gap"),
                        format!("no {}- or {}-row diagram in the cone of φ_{{{n},{i},{m}}}", 2 * n, 2 * n - 1),
                        gap_ok,
                        vec![note("stable cokernel", &route, s.coker.to_string())],
                    ));
                }
                Err(e) => out.push(error_record(case("stable"), &X1Error::from(e))),
            }
            out
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
enum Task {
    Rhom(usize, usize, i64, Variant),
    Serre(usize, usize, i64),
    Exceptional(usize),
    Hom(usize, usize),
    P1(usize, i64, i64),
}

fn thm41_tasks(model: &X1Model, part: PartSelection) -> Vec<Task> {
    let n = model.n;
    let mut t = Vec::new();
    let want = |p: PartSelection| part == PartSelection::All || part == p;
    for i in 0..n {
        for j in 0..n {
            if want(PartSelection::One) && i > j {
                t.push(Task::Rhom(i, j, 0, Variant::Plain));
            }
            if want(PartSelection::Two) {
                for k in 1..=model.k_max as i64 {
                    t.push(Task::Rhom(i, j, k, Variant::Plain));
                    t.push(Task::Rhom(i, j, k, Variant::Delta));
                    t.push(Task::Serre(i, j, k));
                }
            }
        }
        if want(PartSelection::Three) {
            for k in model.tail_range() {
                t.push(Task::Rhom(0, i, k as i64, Variant::Plain));
            }
        }
    }
    t
}

fn run_task(task: Task, model: &X1Model) -> Vec<VerificationRecord> {
    let n = model.n;
    let res = match task {
        Task::Rhom(i, j, k, v) => rhom_l(i, j, k, v, model).map(|r| vec![r]),
        Task::Serre(i, j, k) => serre_symmetry_check(i, j, k, model).map(|r| vec![r]),
        Task::Exceptional(i) => exceptionality_check(i, model).map(|r| vec![r]),
        Task::Hom(i, j) => hom_algebra_check(i, j, model).map(|r| vec![r]),
        Task::P1(i, lo, hi) => p1_lemma_check(i, lo..=hi, model),
    };
    res.unwrap_or_else(|e| vec![error_record(CaseId::new("error", n).param(&format!("{task:?}")), &e)])
}

fn geometric_records(config: &SuiteConfig, n: usize) -> Result<Vec<VerificationRecord>, SuiteError> {
    let model = X1Model::new(n)?.with_shift(config.shift);
    let tasks: Vec<Task> = match config.suite {
        SuiteName::Thm41 => thm41_tasks(&model, config.part),
        SuiteName::Exceptional => (0..n).map(Task::Exceptional).collect(),
        SuiteName::HomAlgebra => (0..n).flat_map(|i| (i..n).map(move |j| Task::Hom(i, j))).collect(),
        SuiteName::P1Lemma => {
            let width = config.kmax.unwrap_or(model.big_n * (model.big_n - 1) / 2) as i64;
            (0..n)
                .map(|i| {
                    let lo = (n - i) as i64;
                    Task::P1(i, lo, lo + width)
                })
                .collect()
        }
        _ => unreachable!("not a geometric suite"),
    };
    Ok(tasks.par_iter().flat_map_iter(|&t| run_task(t, &model)).collect())
}

fn x2_records(n: usize) -> Result<Vec<VerificationRecord>, SuiteError> {
    let model = X2Model::new(n)?;
    let rep = x2_explore(&model)?;
    Ok(rep
        .entries
        .into_iter()
        .map(|e| VerificationRecord {
            case: CaseId::new("x2explore", n).ijk(Some(e.i as i64), Some(e.j as i64), Some(e.k)),
            claim: format!("EXPLORATION: χ(L̃_{}, L̃_{}(-{}H̃)) on X₂", e.i, e.j, e.k),
            status: Status::Exploration,
            evidence: vec![note(
                "constituent pairs",
                "Gr(2,V) BWB",
                if e.vanishes { "vanishes".into() } else { "nonzero".into() },
            )],
            euler: Some(e.euler),
            result: None,
        })
        .collect())
}

fn bwb_records(config: &SuiteConfig) -> Vec<VerificationRecord> {
    let to_record = |variant: &str, claim: String, o: SelfTestOutcome| {
        let ok = o.failures.is_empty() && o.checked > 0;
        let mut ev = vec![note(
            "tally",
            variant,
            format!("checked {}, nonzero {}, failures {}", o.checked, o.nonzero, o.failures.len()),
        )];
        ev.extend(o.failures.iter().take(20).map(|f| note("failure", variant, f.clone())));
        record(CaseId::new("bwb-selftest", 0).variant(variant), claim, ok, ev)
    };
    let (serre, sound) = rayon::join(
        || serre_selftest(config.samples, config.seed, 8),
        || shortcut_soundness(6, 6, 3, 2),
    );
    vec![
        to_record(
            "serre",
            format!("Serre duality on {} random summands with N ≤ 8", config.samples),
            serre,
        ),
        to_record(
            "shortcut",
            "acyclicity shortcuts agree with full BWB for N ≤ 6".into(),
            sound,
        ),
    ]
}

fn collect_records(config: &SuiteConfig) -> Result<Vec<VerificationRecord>, SuiteError> {
    Ok(match config.suite {
        SuiteName::Section3 => section3_records(config.max_boxes),
        SuiteName::Phi => {
            let max_n = config.n.iter().copied().max().unwrap_or(3);
            phi_records(max_n, config.max_m)
        }
        SuiteName::BwbSelftest => bwb_records(config),
        SuiteName::X2Explore => {
            let mut out = Vec::new();
            for &n in &config.n {
                out.extend(x2_records(n)?);
            }
            out
        }
        _ => {
            let mut out = Vec::new();
            for &n in &config.n {
                out.extend(geometric_records(config, n)?);
            }
            out
        }
    })
}

pub fn run_suite(config: &SuiteConfig) -> Result<Report, SuiteError> {
    config.validate()?;
    let start = Instant::now();
    let records = if config.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| SuiteError::Usage(e.to_string()))?;
        pool.install(|| collect_records(config))?
    } else {
        collect_records(config)?
    };
    let mut report = Report::new(config.clone(), records);
    report.wall_clock = start.elapsed();
    Ok(report)
}

fn dims_summary(g: &Option<GradedRep>) -> String {
    match g {
        None => String::new(),
        Some(g) if g.is_zero() => "0".into(),
        Some(g) => g
            .dims()
            .iter()
            .map(|(d, x)| format!("H{d}:{x}"))
            .collect::<Vec<_>>()
            .join(";"),
    }
}

fn euler_str(e: &Option<BigInt>) -> String {
    e.as_ref().map_or(String::new(), BigInt::to_string)
}

fn opt(v: Option<i64>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

/// Serializes a report; identical reports give identical bytes.
pub fn emit(report: &Report, format: OutputFormat) -> Result<String, SuiteError> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(report)
            .map(|s| s + "\n")
            .map_err(|e| SuiteError::Emit(e.to_string())),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| SuiteError::Emit(e.to_string());
            w.write_record([
                "suite", "kind", "n", "i", "j", "k", "param", "variant", "status", "euler", "cohomology",
                "evidence", "claim",
            ])
            .map_err(err)?;
            for r in &report.records {
                w.write_record([
                    report.suite.as_str(),
                    &r.case.kind,
                    &r.case.n.to_string(),
                    &opt(r.case.i),
                    &opt(r.case.j),
                    &opt(r.case.k),
                    &r.case.param,
                    &r.case.variant,
                    &r.status.to_string(),
                    &euler_str(&r.euler),
                    &dims_summary(&r.result),
                    &r.evidence.len().to_string(),
                    &r.claim,
                ])
                .map_err(err)?;
            }
            let bytes = w.into_inner().map_err(|e| SuiteError::Emit(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| SuiteError::Emit(e.to_string()))
        }
        OutputFormat::Text => {
            let rows: Vec<[String; 5]> = report
                .records
                .iter()
                .map(|r| {
                    [
                        r.status.to_string(),
                        r.case.to_string(),
                        euler_str(&r.euler),
                        dims_summary(&r.result),
                        r.claim.clone(),
                    ]
                })
                .collect();
            let header = ["STATUS", "CASE", "EULER", "COHOMOLOGY", "CLAIM"].map(String::from);
            let mut width = [0usize; 5];
            for row in std::iter::once(&header).chain(&rows) {
                for (w, cell) in width.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |row: &[String; 5]| {
                let mut s = String::new();
                for (c, (cell, w)) in row.iter().zip(width).enumerate() {
                    if c + 1 == row.len() {
                        s.push_str(cell);
                    } else {
                        s.push_str(cell);
                        s.push_str(&" ".repeat(w - cell.chars().count() + 2));
                    }
                }
                s.trim_end().to_string() + "\n"
            };
            let mut out = format!("suite {}\n", report.suite);
            out.push_str(&line(&header));
            for row in &rows {
                out.push_str(&line(row));
            }
            let s = &report.summary;
            out.push_str(&format!(
                "total {} pass {} fail {} inconclusive {} exploration {}\n",
                s.total, s.pass, s.fail, s.inconclusive, s.exploration
            ));
            Ok(out)
        }
    }
}
