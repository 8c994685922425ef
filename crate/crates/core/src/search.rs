//! Exhaustive sweeps over small groups.
//!
//! Pairs are enumerated up to translation of each operand: only `A` and `B`
//! containing 0 are generated. Every bound here is invariant under those
//! translations, so this loses nothing.
//!
//! A sweep is split into shards by hashing the rank of the `A` operand. Shards
//! share only immutable inputs, and their outputs merge associatively; the
//! merged witness list is sorted into enumeration order, so the result does
//! not depend on the shard count.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{names, BoundReport, BoundSet, Evaluator, LevelCheck, PairEvaluation, StrictCase};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, SubgroupLattice, DEFAULT_LATTICE_LIMIT};
use crate::setops::GSet;

/// One representative per isomorphism class of abelian groups of order <= 12.
pub const DEFAULT_CATALOG: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "Z9", "Z3xZ3",
    "Z10", "Z11", "Z12", "Z2xZ6",
];

/// All `(A, B)` with `0 ∈ A`, `0 ∈ B`, `|A| = size_a`, `|B| = size_b`, in
/// lexicographic order of `(A, B)`.
pub fn enumerate_pairs(
    g: &Arc<GroupSpec>,
    size_a: usize,
    size_b: usize,
) -> Result<impl Iterator<Item = (GSet, GSet)>> {
    if !(1 <= size_b && size_b <= size_a && size_a <= g.order()) {
        return Err(Error::Precondition(format!(
            "need 1 <= size_b <= size_a <= |G| = {}, got size_a = {size_a}, size_b = {size_b}",
            g.order()
        )));
    }
    let a_sets = normalized_subsets(g, size_a);
    let b_sets = normalized_subsets(g, size_b);
    Ok(a_sets
        .into_iter()
        .flat_map(move |a| b_sets.clone().into_iter().map(move |b| (a.clone(), b))))
}

/// Number of pairs [`enumerate_pairs`] yields.
pub fn pair_count(order: usize, size_a: usize, size_b: usize) -> u64 {
    binomial(order - 1, size_a - 1) * binomial(order - 1, size_b - 1)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Subsets of size `k` containing 0, in lexicographic order.
fn normalized_subsets(g: &Arc<GroupSpec>, k: usize) -> Vec<GSet> {
    (1..g.order())
        .combinations(k - 1)
        .map(|rest| {
            GSet::from_indices(g, std::iter::once(0).chain(rest)).expect("indices in range")
        })
        .collect()
}

fn shard_of(rank: u64, shards: usize) -> usize {
    // splitmix64 finalizer
    let mut z = rank.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    (z % shards as u64) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Check every bound; emit only violations.
    Verify,
    /// Also emit instances where a selected bound holds with equality.
    EqualityHunt,
    /// Also emit main-bound equalities with `t >= 3` and `alpha = 2`.
    ConjectureScan,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "verify" => Ok(Mode::Verify),
            "equality-hunt" => Ok(Mode::EqualityHunt),
            "conjecture-scan" => Ok(Mode::ConjectureScan),
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "mode must be verify, equality-hunt or conjecture-scan".into(),
            }),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Verify => "verify",
            Mode::EqualityHunt => "equality-hunt",
            Mode::ConjectureScan => "conjecture-scan",
        })
    }
}

/// An inclusive range of sizes; `hi = None` means "up to the natural maximum".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeRange {
    pub lo: usize,
    pub hi: Option<usize>,
}

impl SizeRange {
    pub const ALL: SizeRange = SizeRange { lo: 1, hi: None };

    pub fn exactly(n: usize) -> Self {
        SizeRange { lo: n, hi: Some(n) }
    }

    pub fn between(lo: usize, hi: usize) -> Self {
        SizeRange { lo, hi: Some(hi) }
    }

    /// The range clipped to `[1, max]`.
    fn clip(&self, max: usize) -> std::ops::RangeInclusive<usize> {
        self.lo.max(1)..=self.hi.map_or(max, |h| h.min(max))
    }
}

impl FromStr for SizeRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            token: s.to_string(),
            reason: "expected `all`, `n`, `lo..hi` or `lo..`".into(),
        };
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        if s == "all" {
            return Ok(Self::ALL);
        }
        let range = if let Some((lo, hi)) = s.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            SizeRange {
                lo: num(lo)?,
                hi: if hi.trim().is_empty() { None } else { Some(num(hi)?) },
            }
        } else {
            Self::exactly(num(s)?)
        };
        if range.lo == 0 || range.hi.is_some_and(|h| h < range.lo) {
            return Err(bad());
        }
        Ok(range)
    }
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (1, None) => f.write_str("all"),
            (lo, None) => write!(f, "{lo}.."),
            (lo, Some(hi)) if lo == hi => write!(f, "{lo}"),
            (lo, Some(hi)) => write!(f, "{lo}..{hi}"),
        }
    }
}

/// What to sweep and how.
///
/// The text form is one `key = value` per line; `#` starts a comment.
/// Keys: `groups` (comma-separated literals, or `default`), `size_a`,
/// `size_b`, `t` (ranges), `mode`, `shards`, `bounds` (comma-separated
/// names or `all`), `out` (witness file), `max_instances`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub groups: Vec<String>,
    pub size_a: SizeRange,
    pub size_b: SizeRange,
    pub t: SizeRange,
    pub bounds: BoundSet,
    pub mode: Mode,
    pub shards: usize,
    pub out: Option<PathBuf>,
    pub max_instances: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            groups: DEFAULT_CATALOG.iter().map(|s| s.to_string()).collect(),
            size_a: SizeRange::ALL,
            size_b: SizeRange::ALL,
            t: SizeRange::ALL,
            bounds: BoundSet::ALL,
            mode: Mode::Verify,
            shards: 1,
            out: None,
            max_instances: None,
        }
    }
}

impl SearchConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = SearchConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let value = value.trim();
            let at = |e: Error| Error::Config(format!("line {}: {e}", lineno + 1));
            match key.trim() {
                "groups" => {
                    config.groups = if value == "default" {
                        SearchConfig::default().groups
                    } else {
                        value
                            .split(',')
                            .map(str::trim)
                            .filter(|s| !s.is_empty())
                            .map(String::from)
                            .collect()
                    }
                }
                "size_a" => config.size_a = value.parse().map_err(at)?,
                "size_b" => config.size_b = value.parse().map_err(at)?,
                "t" => config.t = value.parse().map_err(at)?,
                "mode" => config.mode = value.parse().map_err(at)?,
                "bounds" => config.bounds = value.parse().map_err(at)?,
                "shards" => {
                    config.shards = value
                        .parse()
                        .map_err(|_| Error::Config(format!("line {}: bad shard count `{value}`", lineno + 1)))?
                }
                "max_instances" => {
                    config.max_instances = Some(value.parse().map_err(|_| {
                        Error::Config(format!("line {}: bad instance limit `{value}`", lineno + 1))
                    })?)
                }
                "out" => config.out = (!value.is_empty()).then(|| PathBuf::from(value)),
                other => {
                    return Err(Error::Config(format!("line {}: unknown key `{other}`", lineno + 1)))
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "groups = {}\nsize_a = {}\nsize_b = {}\nt = {}\nmode = {}\nshards = {}\nbounds = {}\n",
            self.groups.join(","),
            self.size_a,
            self.size_b,
            self.t,
            self.mode,
            self.shards,
            self.bounds.names().join(","),
        );
        if let Some(out_path) = &self.out {
            out.push_str(&format!("out = {}\n", out_path.display()));
        }
        if let Some(limit) = self.max_instances {
            out.push_str(&format!("max_instances = {limit}\n"));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if self.groups.is_empty() {
            return Err(Error::Config("no groups listed".into()));
        }
        if self.shards == 0 {
            return Err(Error::Config("shards must be at least 1".into()));
        }
        if self.mode == Mode::ConjectureScan && !self.bounds.main {
            return Err(Error::Config("conjecture-scan needs the main bound".into()));
        }
        for literal in &self.groups {
            let g = GroupSpec::parse(literal)?;
            if g.order() > DEFAULT_LATTICE_LIMIT {
                return Err(Error::Config(format!(
                    "group {g} has order {} above the search limit {DEFAULT_LATTICE_LIMIT}",
                    g.order()
                )));
            }
        }
        Ok(())
    }

    /// Number of `(A, B, t)` instances the sweep will visit in `g`.
    pub fn instance_count(&self, g: &GroupSpec) -> u64 {
        let n = g.order();
        let mut total = 0;
        for sa in self.size_a.clip(n) {
            for sb in self.size_b.clip(sa) {
                let levels = self.t.clip(sb).count() as u64;
                total += pair_count(n, sa, sb) * levels;
            }
        }
        total
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCategory {
    Violation,
    Equality,
    ConjectureEquality,
}

/// A reproducible record of one instance singled out by a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchWitness {
    pub category: WitnessCategory,
    pub group: String,
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
    pub t: usize,
    pub lhs: u64,
    pub alpha: usize,
    pub strict_case: StrictCase,
    pub rhs_main: Option<i64>,
    pub slack_main: Option<i64>,
    pub rhs_green_ruzsa: Option<i64>,
    pub slack_green_ruzsa: Option<i64>,
    pub rhs_pollard: Option<i64>,
    pub slack_pollard: Option<i64>,
    pub rhs_grynkiewicz: Option<i64>,
    pub slack_grynkiewicz: Option<i64>,
    /// Bounds holding with equality on this instance.
    pub tight_bounds: Vec<String>,
    pub violations: Vec<String>,
    #[serde(skip)]
    group_pos: usize,
}

impl SearchWitness {
    fn from_report(category: WitnessCategory, report: &BoundReport, tight: Vec<String>, group_pos: usize) -> Self {
        SearchWitness {
            category,
            group: report.group.clone(),
            set_a: report.set_a.clone(),
            set_b: report.set_b.clone(),
            t: report.t,
            lhs: report.lhs,
            alpha: report.alpha,
            strict_case: report.strict_case,
            rhs_main: report.rhs_main,
            slack_main: report.slack_main,
            rhs_green_ruzsa: report.rhs_green_ruzsa,
            slack_green_ruzsa: report.slack_green_ruzsa,
            rhs_pollard: report.rhs_pollard,
            slack_pollard: report.slack_pollard,
            rhs_grynkiewicz: report.grynkiewicz.as_ref().map(|g| g.rhs),
            slack_grynkiewicz: report.grynkiewicz.as_ref().map(|g| g.slack),
            tight_bounds: tight,
            violations: report.violations.clone(),
            group_pos,
        }
    }

    /// Re-evaluates the recorded instance with the given bound selection.
    pub fn reproduce(&self, bounds: BoundSet) -> Result<SearchWitness> {
        let g = GroupSpec::parse(&self.group)?;
        let lat = SubgroupLattice::new(&g)?;
        let ev = Evaluator::new(&lat).with_bounds(bounds);
        let a = GSet::from_indices(&g, self.set_a.iter().copied())?;
        let b = GSet::from_indices(&g, self.set_b.iter().copied())?;
        let pair = ev.pair(&a, &b)?;
        let level = ev.level(&pair, self.t)?;
        let report = ev.report(&pair, self.t)?;
        Ok(Self::from_report(
            self.category,
            &report,
            tight_bounds(&level, &pair, bounds),
            self.group_pos,
        ))
    }

    fn sort_key(&self) -> (usize, usize, usize, &[usize], &[usize], usize, WitnessCategory) {
        (
            self.group_pos,
            self.set_a.len(),
            self.set_b.len(),
            &self.set_a,
            &self.set_b,
            self.t,
            self.category,
        )
    }
}

fn tight_bounds(level: &LevelCheck, pair: &PairEvaluation, bounds: BoundSet) -> Vec<String> {
    let mut out = Vec::new();
    if bounds.main && level.slack_main() == Some(0) {
        out.push(names::MAIN.to_string());
    }
    if bounds.green_ruzsa && level.slack_green_ruzsa() == Some(0) {
        out.push(names::GREEN_RUZSA.to_string());
    }
    if bounds.pollard && level.slack_pollard() == Some(0) {
        out.push(names::POLLARD.to_string());
    }
    if level.t == 2 && pair.grynkiewicz.as_ref().is_some_and(|g| g.slack == 0) {
        out.push(names::GRYNKIEWICZ.to_string());
    }
    out
}

/// Counters for one group (or for a whole sweep). Merging is associative and
/// commutative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pairs: u64,
    pub instances: u64,
    /// Instances (pairs, for pair-level bounds) on which each bound was evaluated.
    pub checked: BTreeMap<String, u64>,
    pub min_slack: BTreeMap<String, i64>,
    pub equalities: BTreeMap<String, u64>,
    pub violations: BTreeMap<String, u64>,
    pub violation_count: u64,
    pub strict_instances: u64,
    pub kneser_applicable: u64,
    pub dicks_ivanov_condition_ii: u64,
    /// Instances with `t >= 3` and `alpha = 2`.
    pub conjecture_regime_instances: u64,
    /// Those of them where the main bound holds with equality.
    pub conjecture_equalities: u64,
}

impl Tally {
    fn record(&mut self, name: &str, slack: i64) {
        *self.checked.entry(name.to_string()).or_default() += 1;
        let min = self.min_slack.entry(name.to_string()).or_insert(slack);
        *min = (*min).min(slack);
        if slack == 0 {
            *self.equalities.entry(name.to_string()).or_default() += 1;
        }
    }

    fn violation(&mut self, name: &str) {
        *self.violations.entry(name.to_string()).or_default() += 1;
        self.violation_count += 1;
    }

    pub fn merge(&mut self, other: &Tally) {
        self.pairs += other.pairs;
        self.instances += other.instances;
        for (k, v) in &other.checked {
            *self.checked.entry(k.clone()).or_default() += v;
        }
        for (k, &v) in &other.min_slack {
            let e = self.min_slack.entry(k.clone()).or_insert(v);
            *e = (*e).min(v);
        }
        for (k, v) in &other.equalities {
            *self.equalities.entry(k.clone()).or_default() += v;
        }
        for (k, v) in &other.violations {
            *self.violations.entry(k.clone()).or_default() += v;
        }
        self.violation_count += other.violation_count;
        self.strict_instances += other.strict_instances;
        self.kneser_applicable += other.kneser_applicable;
        self.dicks_ivanov_condition_ii += other.dicks_ivanov_condition_ii;
        self.conjecture_regime_instances += other.conjecture_regime_instances;
        self.conjecture_equalities += other.conjecture_equalities;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTally {
    pub group: String,
    pub tally: Tally,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Complete,
    /// Stopped before a group whose instances would exceed `max_instances`;
    /// the summary covers the groups finished so far.
    LimitExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub mode: Mode,
    pub status: SweepStatus,
    pub bounds: Vec<String>,
    pub groups: Vec<GroupTally>,
    pub total: Tally,
    pub witnesses: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutput {
    pub summary: SweepSummary,
    pub witnesses: Vec<SearchWitness>,
}

impl SweepOutput {
    pub fn is_complete(&self) -> bool {
        self.summary.status == SweepStatus::Complete
    }

    pub fn violation_count(&self) -> u64 {
        self.summary.total.violation_count
    }

    /// Combines shard outputs of the same config.
    pub fn merge(parts: Vec<SweepOutput>) -> Result<SweepOutput> {
        let mut iter = parts.into_iter();
        let mut acc = iter
            .next()
            .ok_or_else(|| Error::Config("nothing to merge".into()))?;
        for part in iter {
            if part.summary.groups.len() != acc.summary.groups.len()
                || part.summary.mode != acc.summary.mode
            {
                return Err(Error::Config("shard outputs come from different configs".into()));
            }
            for (mine, theirs) in acc.summary.groups.iter_mut().zip(&part.summary.groups) {
                if mine.group != theirs.group {
                    return Err(Error::Config("shard outputs list different groups".into()));
                }
                mine.tally.merge(&theirs.tally);
            }
            acc.summary.total.merge(&part.summary.total);
            if part.summary.status == SweepStatus::LimitExceeded {
                acc.summary.status = SweepStatus::LimitExceeded;
            }
            acc.witnesses.extend(part.witnesses);
        }
        acc.witnesses.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
        acc.summary.witnesses = acc.witnesses.len() as u64;
        Ok(acc)
    }

    /// Writes witnesses as JSON lines.
    pub fn write_witnesses<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for witness in &self.witnesses {
            serde_json::to_writer(&mut w, witness)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes")
    }
}

/// Runs every shard of the sweep (concurrently) and merges the results.
pub fn sweep(config: &SearchConfig) -> Result<SweepOutput> {
    config.validate()?;
    let parts = (0..config.shards)
        .into_par_iter()
        .map(|shard| sweep_shard(config, shard))
        .collect::<Result<Vec<_>>>()?;
    SweepOutput::merge(parts)
}

/// Runs a single shard of the sweep.
pub fn sweep_shard(config: &SearchConfig, shard: usize) -> Result<SweepOutput> {
    config.validate()?;
    if shard >= config.shards {
        return Err(Error::Config(format!(
            "shard {shard} out of range for {} shards",
            config.shards
        )));
    }
    let mut summary = SweepSummary {
        mode: config.mode,
        status: SweepStatus::Complete,
        bounds: config.bounds.names().into_iter().map(String::from).collect(),
        groups: Vec::new(),
        total: Tally::default(),
        witnesses: 0,
    };
    let mut witnesses = Vec::new();
    let mut budget = config.max_instances;

    for (pos, literal) in config.groups.iter().enumerate() {
        let g = GroupSpec::parse(literal)?;
        let needed = config.instance_count(&g);
        if let Some(left) = budget.as_mut() {
            if needed > *left {
                summary.status = SweepStatus::LimitExceeded;
                break;
            }
            *left -= needed;
        }
        let lat = SubgroupLattice::new(&g)?;
        let ev = Evaluator::new(&lat).with_bounds(config.bounds);
        let tally = sweep_group(config, &ev, pos, shard, &mut witnesses)?;
        summary.total.merge(&tally);
        summary.groups.push(GroupTally {
            group: g.to_string(),
            tally,
        });
    }
    summary.witnesses = witnesses.len() as u64;
    Ok(SweepOutput { summary, witnesses })
}

fn sweep_group(
    config: &SearchConfig,
    ev: &Evaluator<'_>,
    pos: usize,
    shard: usize,
    witnesses: &mut Vec<SearchWitness>,
) -> Result<Tally> {
    let g = ev.group();
    let n = g.order();
    let mut tally = Tally::default();
    let mut rank = 0u64;
    for sa in config.size_a.clip(n) {
        let a_sets = normalized_subsets(g, sa);
        let b_sizes: Vec<_> = config.size_b.clip(sa).collect();
        let b_sets: Vec<Vec<GSet>> = b_sizes.iter().map(|&sb| normalized_subsets(g, sb)).collect();
        for a in &a_sets {
            rank += 1;
            if shard_of(rank - 1, config.shards) != shard {
                continue;
            }
            for (&sb, bs) in b_sizes.iter().zip(&b_sets) {
                for b in bs {
                    let pair = ev.pair(a, b)?;
                    visit_pair(config, ev, &pair, sb, pos, &mut tally, witnesses)?;
                }
            }
        }
    }
    Ok(tally)
}

fn visit_pair(
    config: &SearchConfig,
    ev: &Evaluator<'_>,
    pair: &PairEvaluation,
    size_b: usize,
    pos: usize,
    tally: &mut Tally,
    witnesses: &mut Vec<SearchWitness>,
) -> Result<()> {
    tally.pairs += 1;
    if let Some(gr) = &pair.grynkiewicz {
        tally.record(names::GRYNKIEWICZ, gr.slack);
    }
    if let Some(di) = &pair.dicks_ivanov {
        *tally.checked.entry(names::DICKS_IVANOV.to_string()).or_default() += 1;
        if di.outcome == crate::bounds::DicksIvanovOutcome::ConditionII {
            tally.dicks_ivanov_condition_ii += 1;
        }
    }
    if let Some(k) = &pair.kneser {
        *tally.checked.entry(names::KNESER.to_string()).or_default() += 1;
        if k.applicable {
            tally.kneser_applicable += 1;
        }
    }
    let pair_violations = pair.pair_violations();
    for name in &pair_violations {
        tally.violation(name);
    }

    for t in config.t.clip(size_b) {
        let level = ev.level(pair, t)?;
        tally.instances += 1;
        if let Some(s) = level.slack_main() {
            tally.record(names::MAIN, s);
            if level.strict_case.is_strict() {
                tally.strict_instances += 1;
            }
            if t >= 3 && pair.alpha == 2 {
                tally.conjecture_regime_instances += 1;
                if s == 0 {
                    tally.conjecture_equalities += 1;
                }
            }
        }
        if let Some(s) = level.slack_green_ruzsa() {
            tally.record(names::GREEN_RUZSA, s);
        }
        if let Some(s) = level.slack_pollard() {
            tally.record(names::POLLARD, s);
        }
        let level_violations = level.violations();
        for name in &level_violations {
            tally.violation(name);
        }

        let violated = !level_violations.is_empty() || !pair_violations.is_empty();
        let tight = tight_bounds(&level, pair, config.bounds);
        let category = if violated {
            Some(WitnessCategory::Violation)
        } else {
            match config.mode {
                Mode::Verify => None,
                Mode::EqualityHunt => (!tight.is_empty()).then_some(WitnessCategory::Equality),
                Mode::ConjectureScan => (t >= 3 && pair.alpha == 2 && level.slack_main() == Some(0))
                    .then_some(WitnessCategory::ConjectureEquality),
            }
        };
        if let Some(category) = category {
            let report = ev.report(pair, t)?;
            witnesses.push(SearchWitness::from_report(category, &report, tight, pos));
        }
    }
    Ok(())
}
