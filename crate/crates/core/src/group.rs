//! Finite abelian groups given as direct products of cyclic factors.
//!
//! Elements are dense indices in `[0, order)`. The index of the digit vector
//! `(x_1, .., x_k)` is the mixed-radix number with the first factor most
//! significant, so in `Z2xZ3` the pair `(a, b)` has index `3a + b`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::setops::GSet;

/// Largest group order accepted by [`GroupSpec::new`].
pub const DEFAULT_MAX_ORDER: usize = 4096;
/// Largest group order for which [`SubgroupLattice::new`] will enumerate subgroups.
pub const DEFAULT_LATTICE_LIMIT: usize = 512;
/// Groups up to this order get a precomputed addition table.
const TABLE_LIMIT: usize = 1024;

/// An element of some group, identified by its dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite abelian group `Z_{d_1} x .. x Z_{d_k}`.
///
/// No canonicalization is performed: `[2, 6]` and `[2, 2, 3]` are distinct
/// specs of isomorphic groups.
pub struct GroupSpec {
    factors: Vec<usize>,
    order: usize,
    strides: Vec<usize>,
    add_table: Option<Vec<u16>>,
}

impl GroupSpec {
    /// Builds the group with the given cyclic orders, capped at [`DEFAULT_MAX_ORDER`].
    pub fn new(factors: &[usize]) -> Result<Arc<Self>> {
        Self::with_limit(factors, DEFAULT_MAX_ORDER)
    }

    pub fn with_limit(factors: &[usize], limit: usize) -> Result<Arc<Self>> {
        if factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        if let Some(position) = factors.iter().position(|&d| d == 0) {
            return Err(Error::ZeroFactor { position });
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&n| n <= limit)
            .ok_or_else(|| Error::OrderTooLarge {
                order: factors.iter().fold(1usize, |acc, &d| acc.saturating_mul(d)),
                limit,
            })?;

        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }

        let mut spec = GroupSpec {
            factors: factors.to_vec(),
            order,
            strides,
            add_table: None,
        };
        if order <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for x in 0..order {
                for y in 0..order {
                    table.push(spec.add_slow(x, y) as u16);
                }
            }
            spec.add_table = Some(table);
        }
        Ok(Arc::new(spec))
    }

    /// Parses a literal such as `Z6` or `Z2xZ2xZ3`.
    pub fn parse(literal: &str) -> Result<Arc<Self>> {
        let factors = parse_group_literal(literal)?;
        Self::new(&factors)
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// True when the order is a prime number.
    pub fn has_prime_order(&self) -> bool {
        let n = self.order;
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        self.check(Element(index))?;
        Ok(Element(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    pub fn add(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element(self.add_idx(x.0, y.0)))
    }

    pub fn neg(&self, x: Element) -> Result<Element> {
        self.check(x)?;
        Ok(Element(self.neg_idx(x.0)))
    }

    pub fn sub(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element(self.sub_idx(x.0, y.0)))
    }

    /// Mixed-radix digits of an element, most significant factor first.
    pub fn digits(&self, x: Element) -> Result<Vec<usize>> {
        self.check(x)?;
        Ok(self
            .factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| (x.0 / s) % d)
            .collect())
    }

    pub fn from_digits(&self, digits: &[usize]) -> Result<Element> {
        if digits.len() != self.factors.len() {
            return Err(Error::Precondition(format!(
                "expected {} digits, got {}",
                self.factors.len(),
                digits.len()
            )));
        }
        let mut index = 0;
        for ((&x, &d), &s) in digits.iter().zip(&self.factors).zip(&self.strides) {
            if x >= d {
                return Err(Error::ElementOutOfRange { index: x, order: d });
            }
            index += x * s;
        }
        Ok(Element(index))
    }

    /// Order of an element (smallest k >= 1 with kx = 0).
    pub fn element_order(&self, x: Element) -> Result<usize> {
        self.check(x)?;
        let mut k = 1;
        let mut acc = x.0;
        while acc != 0 {
            acc = self.add_idx(acc, x.0);
            k += 1;
        }
        Ok(k)
    }

    #[inline]
    pub(crate) fn add_idx(&self, x: usize, y: usize) -> usize {
        match &self.add_table {
            Some(table) => table[x * self.order + y] as usize,
            None => self.add_slow(x, y),
        }
    }

    #[inline]
    pub(crate) fn neg_idx(&self, x: usize) -> usize {
        let mut index = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let digit = (x / s) % d;
            index += ((d - digit) % d) * s;
        }
        index
    }

    #[inline]
    pub(crate) fn sub_idx(&self, x: usize, y: usize) -> usize {
        self.add_idx(x, self.neg_idx(y))
    }

    fn add_slow(&self, x: usize, y: usize) -> usize {
        if self.factors.len() == 1 {
            return (x + y) % self.order;
        }
        let mut index = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            index += (((x / s) % d + (y / s) % d) % d) * s;
        }
        index
    }

    fn check(&self, x: Element) -> Result<()> {
        if x.0 < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: x.0,
                order: self.order,
            })
        }
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for GroupSpec {}

impl std::hash::Hash for GroupSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({self})")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

/// Parses `Z6`, `z2xZ2x Z3` and the like into cyclic orders.
pub fn parse_group_literal(literal: &str) -> Result<Vec<usize>> {
    let compact: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse {
            token: literal.to_string(),
            reason: "empty group literal".into(),
        });
    }
    compact
        .split(['x', 'X'])
        .map(|part| {
            let digits = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| Error::Parse {
                    token: part.to_string(),
                    reason: "expected a cyclic factor like Z6".into(),
                })?;
            let d: usize = digits.parse().map_err(|_| Error::Parse {
                token: part.to_string(),
                reason: "cyclic order is not a non-negative integer".into(),
            })?;
            if d == 0 {
                return Err(Error::Parse {
                    token: part.to_string(),
                    reason: "cyclic order must be at least 1".into(),
                });
            }
            Ok(d)
        })
        .collect()
}

/// Wrapper so a group literal can be parsed with `str::parse`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLiteral(pub Vec<usize>);

impl FromStr for GroupLiteral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_literal(s).map(GroupLiteral)
    }
}

/// Every subgroup of a group, largest first.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Arc<GroupSpec>,
    subgroups: Vec<GSet>,
    cosets: Vec<Vec<GSet>>,
}

impl SubgroupLattice {
    pub fn new(group: &Arc<GroupSpec>) -> Result<Self> {
        Self::with_limit(group, DEFAULT_LATTICE_LIMIT)
    }

    /// Enumerates subgroups by breadth-first closure: start from `{0}` and
    /// repeatedly adjoin one outside element to every known subgroup.
    pub fn with_limit(group: &Arc<GroupSpec>, limit: usize) -> Result<Self> {
        if group.order() > limit {
            return Err(Error::OrderTooLarge {
                order: group.order(),
                limit,
            });
        }
        let trivial = GSet::singleton(group, 0);
        let mut seen = HashSet::new();
        seen.insert(trivial.clone());
        let mut queue = VecDeque::from([trivial]);
        let mut subgroups = Vec::new();
        while let Some(h) = queue.pop_front() {
            for g in 0..group.order() {
                if h.contains(g) {
                    continue;
                }
                let joined = adjoin(&h, g);
                if !seen.contains(&joined) {
                    seen.insert(joined.clone());
                    queue.push_back(joined);
                }
            }
            subgroups.push(h);
        }
        subgroups.sort_by(|x, y| y.card().cmp(&x.card()).then_with(|| x.cmp(y)));
        let cosets = subgroups
            .iter()
            .map(|h| coset_partition(group, h))
            .collect();
        Ok(SubgroupLattice {
            group: Arc::clone(group),
            subgroups,
            cosets,
        })
    }

    pub fn group(&self) -> &Arc<GroupSpec> {
        &self.group
    }

    /// Subgroups sorted by cardinality, descending; ties by index list.
    pub fn subgroups(&self) -> &[GSet] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Cosets of the `i`-th subgroup, ordered by smallest member.
    pub fn cosets_of(&self, i: usize) -> &[GSet] {
        &self.cosets[i]
    }

    /// Iterates `(subgroup, cosets)` from the largest subgroup down.
    pub fn iter(&self) -> impl Iterator<Item = (&GSet, &[GSet])> {
        self.subgroups
            .iter()
            .zip(self.cosets.iter().map(Vec::as_slice))
    }

    /// Size of the largest coset of any subgroup fully contained in `x`;
    /// zero when `x` is empty.
    pub fn largest_coset_in(&self, x: &GSet) -> usize {
        for (h, cosets) in self.iter() {
            if h.card() > x.card() {
                continue;
            }
            if cosets.iter().any(|c| c.is_subset(x)) {
                return h.card();
            }
        }
        0
    }
}

/// The subgroup generated by `h` and `g`, where `h` is already a subgroup.
fn adjoin(h: &GSet, g: usize) -> GSet {
    let group = h.group();
    let mut out = h.clone();
    let mut shift = g;
    while !h.contains(shift) {
        out = out.union(&h.translate_idx(shift));
        shift = group.add_idx(shift, g);
    }
    out
}

fn coset_partition(group: &Arc<GroupSpec>, h: &GSet) -> Vec<GSet> {
    let mut covered = GSet::empty(group);
    let mut out = Vec::with_capacity(group.order() / h.card().max(1));
    for x in 0..group.order() {
        if covered.contains(x) {
            continue;
        }
        let coset = h.translate_idx(x);
        covered = covered.union(&coset);
        out.push(coset);
    }
    out
}

/// True when `h` is a subgroup: contains 0 and is closed under addition.
pub fn is_subgroup(h: &GSet) -> bool {
    h.contains(0) && h.iter().all(|x| h.translate_idx(x) == *h)
}

/// The `|G|/|H|` translates of `h`, which must be a subgroup of `group`.
pub fn cosets(group: &Arc<GroupSpec>, h: &GSet) -> Result<Vec<GSet>> {
    h.same_group_as(group)?;
    if !is_subgroup(h) {
        return Err(Error::NotSubgroup);
    }
    Ok(coset_partition(group, h))
}

/// The subgroup generated by `x` (closure under addition and negation).
pub fn generated_subgroup(x: &GSet) -> GSet {
    let group = x.group();
    let mut h = GSet::singleton(group, 0);
    for g in x.iter() {
        if !h.contains(g) {
            h = adjoin(&h, g);
        }
    }
    h
}
