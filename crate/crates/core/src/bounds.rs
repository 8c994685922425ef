//! Lower bounds on `S_t = sum_{i<=t} |N_i(A,B)|` evaluated on concrete
//! instances, plus the structural Kneser and Dicks–Ivanov checks.
//!
//! Every bound is reported as `lhs`, `rhs` and `slack = lhs - rhs`. A
//! negative slack is recorded in `violations` and never dropped: on a correct
//! implementation it cannot happen, since each bound is a published theorem.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupSpec, SubgroupLattice};
use crate::setops::{alpha_of_sumset, period, GSet};
use crate::spectrum::{spectrum_unchecked, Spectrum};

/// Which refinement of the main bound promises strict inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StrictCase {
    #[serde(rename = "none")]
    None,
    /// `alpha >= 3` and `t >= 2`.
    #[serde(rename = "I")]
    I,
    /// `alpha >= 2` and `t = 2`.
    #[serde(rename = "II")]
    II,
    #[serde(rename = "I and II")]
    Both,
}

impl StrictCase {
    pub fn classify(alpha: usize, t: usize) -> Self {
        let case_i = alpha >= 3 && t >= 2;
        let case_ii = alpha >= 2 && t == 2;
        match (case_i, case_ii) {
            (true, true) => StrictCase::Both,
            (true, false) => StrictCase::I,
            (false, true) => StrictCase::II,
            (false, false) => StrictCase::None,
        }
    }

    pub fn is_strict(self) -> bool {
        self != StrictCase::None
    }
}

impl fmt::Display for StrictCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrictCase::None => "none",
            StrictCase::I => "I",
            StrictCase::II => "II",
            StrictCase::Both => "I and II",
        })
    }
}

/// Names used in `violations` and in bound selections.
pub mod names {
    pub const MAIN: &str = "main";
    pub const STRICTNESS: &str = "strictness";
    pub const GREEN_RUZSA: &str = "green_ruzsa";
    pub const POLLARD: &str = "pollard";
    pub const GRYNKIEWICZ: &str = "grynkiewicz";
    pub const DICKS_IVANOV: &str = "dicks_ivanov";
    pub const KNESER: &str = "kneser";
}

/// A selection of bounds to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSet {
    pub main: bool,
    pub green_ruzsa: bool,
    pub pollard: bool,
    pub grynkiewicz: bool,
    pub dicks_ivanov: bool,
    pub kneser: bool,
}

impl BoundSet {
    pub const ALL: BoundSet = BoundSet {
        main: true,
        green_ruzsa: true,
        pollard: true,
        grynkiewicz: true,
        dicks_ivanov: true,
        kneser: true,
    };

    pub const NONE: BoundSet = BoundSet {
        main: false,
        green_ruzsa: false,
        pollard: false,
        grynkiewicz: false,
        dicks_ivanov: false,
        kneser: false,
    };

    pub fn only(name: &str) -> Result<Self> {
        let mut set = Self::NONE;
        set.enable(name)?;
        Ok(set)
    }

    fn enable(&mut self, name: &str) -> Result<()> {
        match name {
            names::MAIN => self.main = true,
            names::GREEN_RUZSA => self.green_ruzsa = true,
            names::POLLARD => self.pollard = true,
            names::GRYNKIEWICZ => self.grynkiewicz = true,
            names::DICKS_IVANOV => self.dicks_ivanov = true,
            names::KNESER => self.kneser = true,
            "all" => *self = Self::ALL,
            other => {
                return Err(Error::Parse {
                    token: other.to_string(),
                    reason: "unknown bound name".into(),
                })
            }
        }
        Ok(())
    }

    pub fn names(&self) -> Vec<&'static str> {
        [
            (self.main, names::MAIN),
            (self.green_ruzsa, names::GREEN_RUZSA),
            (self.pollard, names::POLLARD),
            (self.grynkiewicz, names::GRYNKIEWICZ),
            (self.dicks_ivanov, names::DICKS_IVANOV),
            (self.kneser, names::KNESER),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect()
    }
}

impl Default for BoundSet {
    fn default() -> Self {
        Self::ALL
    }
}

impl FromStr for BoundSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut set = Self::NONE;
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            set.enable(name)?;
        }
        if set == Self::NONE {
            return Err(Error::Parse {
                token: s.to_string(),
                reason: "no bounds selected".into(),
            });
        }
        Ok(set)
    }
}

/// Outcome of the Kneser structural check on `A + B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserReport {
    /// `|A + B| <= |A| + |B| - 2`.
    pub applicable: bool,
    pub sumset_size: usize,
    pub small_sumset_threshold: i64,
    /// `|H|` for `H` the period of `A + B`.
    pub period_size: usize,
    pub period_nontrivial: Option<bool>,
    pub ah_size: Option<usize>,
    pub bh_size: Option<usize>,
    /// `|A+B| = |A+H| + |B+H| - |H|`.
    pub kn1: Option<bool>,
    /// `N_2(A,B) = A+B`.
    pub kn2: Option<bool>,
}

impl KneserReport {
    pub fn holds(&self) -> bool {
        !self.applicable
            || (self.period_nontrivial == Some(true) && self.kn1 == Some(true) && self.kn2 == Some(true))
    }
}

/// Which disjunct of the Dicks–Ivanov alternative an instance satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DicksIvanovOutcome {
    /// `|N_1| + |N_2| >= 2(|A| + |B| - 2)`.
    ConditionI,
    /// `N_2` contains a coset of size at least 3.
    ConditionII,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DicksIvanovReport {
    pub lhs: u64,
    pub rhs: i64,
    pub condition_i: bool,
    /// Only searched when condition (i) fails.
    pub largest_coset_in_n2: Option<usize>,
    pub outcome: DicksIvanovOutcome,
}

impl DicksIvanovReport {
    pub fn holds(&self) -> bool {
        self.outcome != DicksIvanovOutcome::Neither
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrynkiewiczReport {
    /// `|N_1| + |N_2|`.
    pub lhs: u64,
    pub rhs: i64,
    pub slack: i64,
    pub n2_size: usize,
    /// `|H|` for `H` the period of `N_2`.
    pub period_size: usize,
    /// `N_2` is empty, so its period is all of `G` and the bound is usually vacuous.
    pub n2_empty: bool,
}

/// Per-instance evaluation of every applicable bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub group: String,
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
    pub t: usize,
    /// `S_t`.
    pub lhs: u64,
    pub alpha: usize,
    pub w: usize,
    pub mu: Option<usize>,
    pub rhs_main: Option<i64>,
    pub slack_main: Option<i64>,
    pub strict_case: StrictCase,
    pub rhs_green_ruzsa: Option<i64>,
    pub slack_green_ruzsa: Option<i64>,
    pub rhs_pollard: Option<i64>,
    pub slack_pollard: Option<i64>,
    pub grynkiewicz: Option<GrynkiewiczReport>,
    pub dicks_ivanov: Option<DicksIvanovReport>,
    pub kneser: Option<KneserReport>,
    pub violations: Vec<String>,
    /// `[a0, b0]` when the operands were translated by `-a0` and `-b0`.
    pub normalization_shift: Option<[usize; 2]>,
    /// The operands were exchanged so that `|A| >= |B|`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub operands_swapped: bool,
}

impl BoundReport {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }

    pub const CSV_HEADER: &'static str = "group,set_a,set_b,t,lhs,alpha,w,mu,rhs_main,slack_main,strict_case,\
rhs_green_ruzsa,slack_green_ruzsa,rhs_pollard,slack_pollard,rhs_grynkiewicz,slack_grynkiewicz,violations,normalization_shift";

    /// One CSV row matching [`BoundReport::CSV_HEADER`]. Lists are
    /// space-separated so no field needs quoting.
    pub fn csv_row(&self) -> String {
        fn opt<T: ToString>(x: Option<T>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        fn list(xs: &[usize]) -> String {
            xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        }
        [
            self.group.clone(),
            list(&self.set_a),
            list(&self.set_b),
            self.t.to_string(),
            self.lhs.to_string(),
            self.alpha.to_string(),
            self.w.to_string(),
            opt(self.mu),
            opt(self.rhs_main),
            opt(self.slack_main),
            self.strict_case.to_string(),
            opt(self.rhs_green_ruzsa),
            opt(self.slack_green_ruzsa),
            opt(self.rhs_pollard),
            opt(self.slack_pollard),
            opt(self.grynkiewicz.as_ref().map(|g| g.rhs)),
            opt(self.grynkiewicz.as_ref().map(|g| g.slack)),
            self.violations.join(" "),
            opt(self.normalization_shift.map(|[a, b]| format!("{a} {b}"))),
        ]
        .join(",")
    }
}

/// `t(|A| + |B| - t - alpha + 1 + w) - w` with `w = min(alpha - 1, 1)`.
pub fn main_rhs(card_a: usize, card_b: usize, t: usize, alpha: usize) -> i64 {
    let w = main_w(alpha) as i64;
    let (a, b, t, alpha) = (card_a as i64, card_b as i64, t as i64, alpha as i64);
    t * (a + b - t - alpha + 1 + w) - w
}

pub fn main_w(alpha: usize) -> usize {
    alpha.saturating_sub(1).min(1)
}

/// `t * min(|G|, |A| + |B| - mu - t + 1)`.
pub fn green_ruzsa_rhs(order: usize, card_a: usize, card_b: usize, t: usize, mu: usize) -> i64 {
    let t = t as i64;
    t * (order as i64).min(card_a as i64 + card_b as i64 - mu as i64 - t + 1)
}

/// `t * min(p, |A| + |B| - t)`.
pub fn pollard_rhs(p: usize, card_a: usize, card_b: usize, t: usize) -> i64 {
    let t = t as i64;
    t * (p as i64).min(card_a as i64 + card_b as i64 - t)
}

/// `2(|A| + |B| - max(2, |H|))`.
pub fn grynkiewicz_rhs(card_a: usize, card_b: usize, period_size: usize) -> i64 {
    2 * (card_a as i64 + card_b as i64 - period_size.max(2) as i64)
}

/// Translates `A` by `-min(A)` and `B` by `-min(B)` so both contain 0.
/// Returns the normalized pair and the shift `[min(A), min(B)]`.
pub fn normalize_pair(a: &GSet, b: &GSet) -> Result<(GSet, GSet, [usize; 2])> {
    a.same_group(b)?;
    let a0 = a.first().ok_or(Error::EmptyOperand)?;
    let b0 = b.first().ok_or(Error::EmptyOperand)?;
    let g = a.group();
    Ok((a.translate_idx(g.neg_idx(a0)), b.translate_idx(g.neg_idx(b0)), [a0, b0]))
}

/// Everything about a pair `(A, B)` that does not depend on `t`.
#[derive(Debug, Clone)]
pub struct PairEvaluation {
    pub a: GSet,
    pub b: GSet,
    pub spectrum: Spectrum,
    pub sumset: GSet,
    pub alpha: usize,
    pub grynkiewicz: Option<GrynkiewiczReport>,
    pub dicks_ivanov: Option<DicksIvanovReport>,
    pub kneser: Option<KneserReport>,
}

impl PairEvaluation {
    /// Names of the `t`-independent checks that failed.
    pub fn pair_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.grynkiewicz.as_ref().is_some_and(|g| g.slack < 0) {
            out.push(names::GRYNKIEWICZ);
        }
        if self.dicks_ivanov.as_ref().is_some_and(|d| !d.holds()) {
            out.push(names::DICKS_IVANOV);
        }
        if self.kneser.as_ref().is_some_and(|k| !k.holds()) {
            out.push(names::KNESER);
        }
        out
    }
}

/// Evaluates bounds on many pairs of one group, sharing the subgroup lattice.
///
/// Bounds whose hypotheses an instance does not meet are left out of its
/// report instead of raising errors; the `check_*` functions are the strict
/// entry points.
pub struct Evaluator<'a> {
    lattice: &'a SubgroupLattice,
    mu: Option<usize>,
    prime: bool,
    bounds: BoundSet,
}

impl<'a> Evaluator<'a> {
    pub fn new(lattice: &'a SubgroupLattice) -> Self {
        let group = lattice.group();
        let mu = (!group.is_trivial()).then(|| lattice.subgroups()[1].card());
        Evaluator {
            lattice,
            mu,
            prime: group.has_prime_order(),
            bounds: BoundSet::ALL,
        }
    }

    pub fn with_bounds(mut self, bounds: BoundSet) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn group(&self) -> &Arc<GroupSpec> {
        self.lattice.group()
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice
    }

    pub fn bounds(&self) -> BoundSet {
        self.bounds
    }

    pub fn mu(&self) -> Option<usize> {
        self.mu
    }

    pub fn pair(&self, a: &GSet, b: &GSet) -> Result<PairEvaluation> {
        a.same_group_as(self.group())?;
        b.same_group_as(self.group())?;
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyOperand);
        }
        let spectrum = spectrum_unchecked(a, b);
        let sumset = spectrum.n_t_unchecked(1);
        let alpha = alpha_of_sumset(&sumset, self.lattice);
        let dicks_pre = b.card() >= 2 && a.card() >= b.card();
        let grynkiewicz = (self.bounds.grynkiewicz && dicks_pre).then(|| grynkiewicz_of(&spectrum));
        let dicks_ivanov =
            (self.bounds.dicks_ivanov && dicks_pre).then(|| dicks_ivanov_of(&spectrum, self.lattice));
        let kneser = self.bounds.kneser.then(|| kneser_of(a, b, &sumset, &spectrum));
        Ok(PairEvaluation {
            a: a.clone(),
            b: b.clone(),
            spectrum,
            sumset,
            alpha,
            grynkiewicz,
            dicks_ivanov,
            kneser,
        })
    }

    /// The `t`-dependent bounds for an evaluated pair, without building a report.
    pub fn level(&self, pair: &PairEvaluation, t: usize) -> Result<LevelCheck> {
        if t < 1 {
            return Err(Error::InvalidThreshold { t });
        }
        let (ca, cb) = (pair.a.card(), pair.b.card());
        let order = self.group().order();
        let alpha = pair.alpha;
        let main_ok = ca >= cb && cb >= t && pair.a.contains(0) && pair.b.contains(0);
        let within_min = t <= ca.min(cb);
        let main = self.bounds.main && main_ok;
        Ok(LevelCheck {
            t,
            lhs: pair.spectrum.partial_sum_unchecked(t),
            rhs_main: main.then(|| main_rhs(ca, cb, t, alpha)),
            strict_case: if main {
                StrictCase::classify(alpha, t)
            } else {
                StrictCase::None
            },
            rhs_green_ruzsa: self
                .mu
                .filter(|_| self.bounds.green_ruzsa && within_min)
                .map(|mu| green_ruzsa_rhs(order, ca, cb, t, mu)),
            rhs_pollard: (self.bounds.pollard && self.prime && within_min)
                .then(|| pollard_rhs(order, ca, cb, t)),
        })
    }

    /// The report for level `t` of an evaluated pair.
    pub fn report(&self, pair: &PairEvaluation, t: usize) -> Result<BoundReport> {
        let level = self.level(pair, t)?;
        let mut violations: Vec<String> = level.violations().into_iter().map(str::to_string).collect();
        violations.extend(pair.pair_violations().into_iter().map(str::to_string));
        Ok(BoundReport {
            group: self.group().to_string(),
            set_a: pair.a.to_vec(),
            set_b: pair.b.to_vec(),
            t,
            lhs: level.lhs,
            alpha: pair.alpha,
            w: main_w(pair.alpha),
            mu: self.mu,
            rhs_main: level.rhs_main,
            slack_main: level.slack_main(),
            strict_case: level.strict_case,
            rhs_green_ruzsa: level.rhs_green_ruzsa,
            slack_green_ruzsa: level.slack_green_ruzsa(),
            rhs_pollard: level.rhs_pollard,
            slack_pollard: level.slack_pollard(),
            grynkiewicz: pair.grynkiewicz.clone(),
            dicks_ivanov: pair.dicks_ivanov.clone(),
            kneser: pair.kneser.clone(),
            violations,
            normalization_shift: None,
            operands_swapped: false,
        })
    }
}

/// The `t`-dependent part of an evaluation. A `None` right-hand side means
/// the bound was not selected or its hypotheses do not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelCheck {
    pub t: usize,
    pub lhs: u64,
    pub rhs_main: Option<i64>,
    pub strict_case: StrictCase,
    pub rhs_green_ruzsa: Option<i64>,
    pub rhs_pollard: Option<i64>,
}

impl LevelCheck {
    fn slack(&self, rhs: Option<i64>) -> Option<i64> {
        rhs.map(|r| self.lhs as i64 - r)
    }

    pub fn slack_main(&self) -> Option<i64> {
        self.slack(self.rhs_main)
    }

    pub fn slack_green_ruzsa(&self) -> Option<i64> {
        self.slack(self.rhs_green_ruzsa)
    }

    pub fn slack_pollard(&self) -> Option<i64> {
        self.slack(self.rhs_pollard)
    }

    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.slack_main().is_some_and(|s| s < 0) {
            out.push(names::MAIN);
        }
        if self.strict_case.is_strict() && self.slack_main().is_some_and(|s| s < 1) {
            out.push(names::STRICTNESS);
        }
        if self.slack_green_ruzsa().is_some_and(|s| s < 0) {
            out.push(names::GREEN_RUZSA);
        }
        if self.slack_pollard().is_some_and(|s| s < 0) {
            out.push(names::POLLARD);
        }
        out
    }
}

fn grynkiewicz_of(spectrum: &Spectrum) -> GrynkiewiczReport {
    let n2 = spectrum.n_t_unchecked(2);
    let h = period(&n2);
    let lhs = spectrum.partial_sum_unchecked(2);
    let rhs = grynkiewicz_rhs(spectrum.card_a(), spectrum.card_b(), h.card());
    GrynkiewiczReport {
        lhs,
        rhs,
        slack: lhs as i64 - rhs,
        n2_size: n2.card(),
        period_size: h.card(),
        n2_empty: n2.is_empty(),
    }
}

fn dicks_ivanov_of(spectrum: &Spectrum, lat: &SubgroupLattice) -> DicksIvanovReport {
    let lhs = spectrum.partial_sum_unchecked(2);
    let rhs = 2 * (spectrum.card_a() as i64 + spectrum.card_b() as i64 - 2);
    let condition_i = lhs as i64 >= rhs;
    let (largest, outcome) = if condition_i {
        (None, DicksIvanovOutcome::ConditionI)
    } else {
        let largest = lat.largest_coset_in(&spectrum.n_t_unchecked(2));
        let outcome = if largest >= 3 {
            DicksIvanovOutcome::ConditionII
        } else {
            DicksIvanovOutcome::Neither
        };
        (Some(largest), outcome)
    };
    DicksIvanovReport {
        lhs,
        rhs,
        condition_i,
        largest_coset_in_n2: largest,
        outcome,
    }
}

fn kneser_of(a: &GSet, b: &GSet, sumset: &GSet, spectrum: &Spectrum) -> KneserReport {
    let threshold = a.card() as i64 + b.card() as i64 - 2;
    let h = period(sumset);
    let applicable = sumset.card() as i64 <= threshold;
    let mut report = KneserReport {
        applicable,
        sumset_size: sumset.card(),
        small_sumset_threshold: threshold,
        period_size: h.card(),
        period_nontrivial: None,
        ah_size: None,
        bh_size: None,
        kn1: None,
        kn2: None,
    };
    if applicable {
        let ah = a.sumset_unchecked(&h).card();
        let bh = b.sumset_unchecked(&h).card();
        report.period_nontrivial = Some(h.card() >= 2);
        report.ah_size = Some(ah);
        report.bh_size = Some(bh);
        report.kn1 = Some(sumset.card() as i64 == ah as i64 + bh as i64 - h.card() as i64);
        report.kn2 = Some(spectrum.n_t_unchecked(2) == *sumset);
    }
    report
}

fn require_same_group(a: &GSet, b: &GSet, lat: Option<&SubgroupLattice>) -> Result<()> {
    a.same_group(b)?;
    if let Some(lat) = lat {
        a.same_group_as(lat.group())?;
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    Ok(())
}

/// Evaluates the main bound. Requires `0 ∈ A ∩ B` and `|A| >= |B| >= t >= 1`.
pub fn check_main(a: &GSet, b: &GSet, t: usize, lat: &SubgroupLattice) -> Result<BoundReport> {
    require_same_group(a, b, Some(lat))?;
    if t < 1 {
        return Err(Error::InvalidThreshold { t });
    }
    if !a.contains(0) || !b.contains(0) {
        return Err(Error::Precondition(
            "both operands must contain 0; normalize by translation first".into(),
        ));
    }
    if !(a.card() >= b.card() && b.card() >= t) {
        return Err(Error::Precondition(format!(
            "need |A| >= |B| >= t, got |A| = {}, |B| = {}, t = {t}",
            a.card(),
            b.card()
        )));
    }
    let ev = Evaluator::new(lat).with_bounds(BoundSet::only(names::MAIN)?);
    ev.report(&ev.pair(a, b)?, t)
}

/// Evaluates the Green–Ruzsa bound. Requires `|G| >= 2` and `1 <= t <= min(|A|, |B|)`.
pub fn check_green_ruzsa(a: &GSet, b: &GSet, t: usize, lat: &SubgroupLattice) -> Result<BoundReport> {
    require_same_group(a, b, Some(lat))?;
    if a.group().is_trivial() {
        return Err(Error::TrivialGroup);
    }
    check_threshold(a, b, t)?;
    let ev = Evaluator::new(lat).with_bounds(BoundSet::only(names::GREEN_RUZSA)?);
    ev.report(&ev.pair(a, b)?, t)
}

/// Evaluates Pollard's bound. Requires prime order and `1 <= t <= min(|A|, |B|)`.
pub fn check_pollard(a: &GSet, b: &GSet, t: usize) -> Result<BoundReport> {
    require_same_group(a, b, None)?;
    let g = a.group();
    if !g.has_prime_order() {
        return Err(Error::NotPrimeOrder { order: g.order() });
    }
    check_threshold(a, b, t)?;
    let lat = SubgroupLattice::new(g)?;
    let ev = Evaluator::new(&lat).with_bounds(BoundSet::only(names::POLLARD)?);
    ev.report(&ev.pair(a, b)?, t)
}

/// Evaluates the Grynkiewicz bound on `|N_1| + |N_2|`; the report has `t = 2`.
/// Requires `2 <= |B| <= |A|`.
pub fn check_grynkiewicz(a: &GSet, b: &GSet) -> Result<BoundReport> {
    require_same_group(a, b, None)?;
    require_dicks_pre(a, b)?;
    let lat = SubgroupLattice::new(a.group())?;
    let ev = Evaluator::new(&lat).with_bounds(BoundSet::only(names::GRYNKIEWICZ)?);
    ev.report(&ev.pair(a, b)?, 2)
}

/// Kneser's structural conclusions for a small sumset.
pub fn check_kneser(a: &GSet, b: &GSet) -> Result<KneserReport> {
    require_same_group(a, b, None)?;
    let spectrum = spectrum_unchecked(a, b);
    let sumset = spectrum.n_t_unchecked(1);
    Ok(kneser_of(a, b, &sumset, &spectrum))
}

/// Which Dicks–Ivanov disjunct holds. Requires `2 <= |B| <= |A|`.
pub fn check_dicks_ivanov(a: &GSet, b: &GSet, lat: &SubgroupLattice) -> Result<DicksIvanovReport> {
    require_same_group(a, b, Some(lat))?;
    require_dicks_pre(a, b)?;
    Ok(dicks_ivanov_of(&spectrum_unchecked(a, b), lat))
}

fn check_threshold(a: &GSet, b: &GSet, t: usize) -> Result<()> {
    if t < 1 {
        return Err(Error::InvalidThreshold { t });
    }
    if t > a.card().min(b.card()) {
        return Err(Error::Precondition(format!(
            "need t <= min(|A|, |B|) = {}, got t = {t}",
            a.card().min(b.card())
        )));
    }
    Ok(())
}

fn require_dicks_pre(a: &GSet, b: &GSet) -> Result<()> {
    if b.card() < 2 || a.card() < b.card() {
        return Err(Error::Precondition(format!(
            "need 2 <= |B| <= |A|, got |A| = {}, |B| = {}",
            a.card(),
            b.card()
        )));
    }
    Ok(())
}
