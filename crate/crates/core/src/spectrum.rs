//! Representation-multiplicity spectra `x -> r_{A,B}(x)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::setops::GSet;

/// The full multiplicity vector of a pair `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    group: Arc<GroupSpec>,
    r: Vec<u32>,
    card_a: usize,
    card_b: usize,
}

impl Spectrum {
    pub fn group(&self) -> &Arc<GroupSpec> {
        &self.group
    }

    /// `r[x]` for every element index `x`.
    pub fn counts(&self) -> &[u32] {
        &self.r
    }

    pub fn r(&self, x: usize) -> u32 {
        self.r[x]
    }

    pub fn card_a(&self) -> usize {
        self.card_a
    }

    pub fn card_b(&self) -> usize {
        self.card_b
    }

    /// `N_t = {x : r(x) >= t}`.
    pub fn n_t(&self, t: usize) -> Result<GSet> {
        if t < 1 {
            return Err(Error::InvalidThreshold { t });
        }
        Ok(self.n_t_unchecked(t))
    }

    pub(crate) fn n_t_unchecked(&self, t: usize) -> GSet {
        let mut out = GSet::empty(&self.group);
        for (x, &r) in self.r.iter().enumerate() {
            if r as usize >= t {
                out.insert(x);
            }
        }
        out
    }

    /// `|N_t|` without materializing the set.
    pub fn n_t_card(&self, t: usize) -> usize {
        self.r.iter().filter(|&&r| r as usize >= t).count()
    }

    /// `S_t = sum_{i<=t} |N_i| = sum_x min(t, r(x))`.
    pub fn partial_sum(&self, t: usize) -> Result<u64> {
        if t < 1 {
            return Err(Error::InvalidThreshold { t });
        }
        Ok(self.partial_sum_unchecked(t))
    }

    pub(crate) fn partial_sum_unchecked(&self, t: usize) -> u64 {
        self.r.iter().map(|&r| (r as u64).min(t as u64)).sum()
    }

    /// `S_1, .., S_m` with `m = min(|A|, |B|)`.
    pub fn partial_sums(&self) -> Vec<u64> {
        (1..=self.card_a.min(self.card_b))
            .map(|t| self.partial_sum_unchecked(t))
            .collect()
    }

    pub fn min_multiplicity(&self) -> u32 {
        self.r.iter().copied().min().unwrap_or(0)
    }

    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            r: self.r.clone(),
            partial_sums: self.partial_sums(),
        }
    }
}

/// Serialized spectrum: `{"r": [..], "partial_sums": [S_1..S_m]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub r: Vec<u32>,
    pub partial_sums: Vec<u64>,
}

/// Counts representations by a double loop over `A x B`.
pub fn compute_spectrum(a: &GSet, b: &GSet) -> Result<Spectrum> {
    check_operands(a, b)?;
    Ok(spectrum_unchecked(a, b))
}

pub(crate) fn spectrum_unchecked(a: &GSet, b: &GSet) -> Spectrum {
    let group = a.group();
    let mut r = vec![0u32; group.order()];
    for x in a.iter() {
        for y in b.iter() {
            r[group.add_idx(x, y)] += 1;
        }
    }
    Spectrum {
        group: Arc::clone(group),
        r,
        card_a: a.card(),
        card_b: b.card(),
    }
}

/// Independent route: `r(x) = |(x - B) ∩ A|` via bitset intersections.
/// Used to cross-check [`compute_spectrum`].
pub fn spectrum_by_intersection(a: &GSet, b: &GSet) -> Result<Spectrum> {
    check_operands(a, b)?;
    let group = a.group();
    let neg_b = b.negate();
    let r = (0..group.order())
        .map(|x| neg_b.translate_idx(x).intersection_card(a) as u32)
        .collect();
    Ok(Spectrum {
        group: Arc::clone(group),
        r,
        card_a: a.card(),
        card_b: b.card(),
    })
}

/// `N_t(A, B)` directly from the spectrum.
pub fn n_t(s: &Spectrum, t: usize) -> Result<GSet> {
    s.n_t(t)
}

pub fn partial_sum(s: &Spectrum, t: usize) -> Result<u64> {
    s.partial_sum(t)
}

fn check_operands(a: &GSet, b: &GSet) -> Result<()> {
    a.same_group(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    Ok(())
}
