//! Subsets of a group and the set algebra the bounds are phrased in:
//! sumsets, translates, periods, the largest contained coset, and `mu(G)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, SubgroupLattice};

type Words = SmallVec<[u64; 2]>;

/// A subset of a finite abelian group, stored as a bitset with a cached
/// cardinality.
#[derive(Clone)]
pub struct GSet {
    group: Arc<GroupSpec>,
    words: Words,
    card: usize,
}

impl GSet {
    pub fn empty(group: &Arc<GroupSpec>) -> Self {
        let words = SmallVec::from_elem(0, group.order().div_ceil(64));
        GSet {
            group: Arc::clone(group),
            words,
            card: 0,
        }
    }

    pub fn full(group: &Arc<GroupSpec>) -> Self {
        let mut s = Self::empty(group);
        for x in 0..group.order() {
            s.insert(x);
        }
        s
    }

    /// Panics if `x` is out of range.
    pub fn singleton(group: &Arc<GroupSpec>, x: usize) -> Self {
        let mut s = Self::empty(group);
        assert!(x < group.order(), "element {x} out of range");
        s.insert(x);
        s
    }

    /// Builds a set from element indices; duplicates are ignored.
    pub fn from_indices<I>(group: &Arc<GroupSpec>, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::empty(group);
        for x in indices {
            if x >= group.order() {
                return Err(Error::ElementOutOfRange {
                    index: x,
                    order: group.order(),
                });
            }
            s.insert(x);
        }
        Ok(s)
    }

    pub fn from_elements<I>(group: &Arc<GroupSpec>, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = Element>,
    {
        Self::from_indices(group, elements.into_iter().map(Element::index))
    }

    pub fn group(&self) -> &Arc<GroupSpec> {
        &self.group
    }

    pub fn card(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn is_full(&self) -> bool {
        self.card == self.group.order()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.group.order() && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn contains_element(&self, x: Element) -> bool {
        self.contains(x.index())
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    #[inline]
    pub(crate) fn insert(&mut self, x: usize) {
        let (w, b) = (x / 64, x % 64);
        if self.words[w] >> b & 1 == 0 {
            self.words[w] |= 1 << b;
            self.card += 1;
        }
    }

    pub(crate) fn same_group_as(&self, group: &Arc<GroupSpec>) -> Result<()> {
        if Arc::ptr_eq(&self.group, group) || *self.group == **group {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: group.to_string(),
            })
        }
    }

    pub(crate) fn same_group(&self, other: &GSet) -> Result<()> {
        self.same_group_as(&other.group)
    }

    fn zip_words(&self, other: &GSet, f: impl Fn(u64, u64) -> u64) -> GSet {
        debug_assert_eq!(self.words.len(), other.words.len());
        let words: Words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&x, &y)| f(x, y))
            .collect();
        let card = words.iter().map(|w| w.count_ones() as usize).sum();
        GSet {
            group: Arc::clone(&self.group),
            words,
            card,
        }
    }

    /// Panics on a group mismatch; see [`GSet::try_union`].
    pub fn union(&self, other: &GSet) -> GSet {
        self.zip_words(other, |x, y| x | y)
    }

    pub fn intersection(&self, other: &GSet) -> GSet {
        self.zip_words(other, |x, y| x & y)
    }

    pub fn difference(&self, other: &GSet) -> GSet {
        self.zip_words(other, |x, y| x & !y)
    }

    pub fn try_union(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        Ok(self.union(other))
    }

    pub fn try_intersection(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        Ok(self.intersection(other))
    }

    pub fn try_difference(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        Ok(self.difference(other))
    }

    pub fn is_subset(&self, other: &GSet) -> bool {
        self.card <= other.card
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(&x, &y)| x & !y == 0)
    }

    pub fn intersection_card(&self, other: &GSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(&x, &y)| (x & y).count_ones() as usize)
            .sum()
    }

    /// `{x + z : x in self}` for an index `z` known to be in range.
    pub(crate) fn translate_idx(&self, z: usize) -> GSet {
        let mut out = GSet::empty(&self.group);
        for x in self.iter() {
            out.insert(self.group.add_idx(x, z));
        }
        out
    }

    /// `{-x : x in self}`.
    pub fn negate(&self) -> GSet {
        let mut out = GSet::empty(&self.group);
        for x in self.iter() {
            out.insert(self.group.neg_idx(x));
        }
        out
    }

    pub(crate) fn sumset_unchecked(&self, other: &GSet) -> GSet {
        let (small, large) = if self.card <= other.card {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = GSet::empty(&self.group);
        for b in small.iter() {
            for a in large.iter() {
                out.insert(self.group.add_idx(a, b));
            }
            if out.is_full() {
                break;
            }
        }
        out
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words
            && (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group)
    }
}

impl Eq for GSet {}

impl Hash for GSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

/// Lexicographic order on the sorted member lists.
impl Ord for GSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for GSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.group, self)
    }
}

impl fmt::Display for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            self.current = *self.words.get(self.word)?;
        }
    }
}

/// Parses `[0,1,2]` or `0,1,2`; duplicates are dropped, order is irrelevant.
pub fn parse_set_literal(literal: &str) -> Result<Vec<usize>> {
    let trimmed = literal.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(trimmed);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = inner
        .split(',')
        .map(|tok| {
            tok.trim().parse::<usize>().map_err(|_| Error::Parse {
                token: tok.trim().to_string(),
                reason: "set members must be non-negative integers".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn nonempty(x: &GSet) -> Result<()> {
    if x.is_empty() {
        Err(Error::EmptyOperand)
    } else {
        Ok(())
    }
}

/// `A + B`.
pub fn sumset(a: &GSet, b: &GSet) -> Result<GSet> {
    a.same_group(b)?;
    nonempty(a)?;
    nonempty(b)?;
    Ok(a.sumset_unchecked(b))
}

/// `A + z`.
pub fn translate(a: &GSet, z: Element) -> Result<GSet> {
    if z.index() >= a.group().order() {
        return Err(Error::ElementOutOfRange {
            index: z.index(),
            order: a.group().order(),
        });
    }
    Ok(a.translate_idx(z.index()))
}

/// The stabilizer `{g : X + g = X}`.
///
/// For the empty set this is the whole group; callers that need Kneser-style
/// semantics must test for emptiness themselves.
pub fn period(x: &GSet) -> GSet {
    let group = x.group();
    let Some(x0) = x.first() else {
        return GSet::full(group);
    };
    let mut h = GSet::empty(group);
    // Any stabilizing g sends x0 into X, so g ranges over X - x0.
    for y in x.iter() {
        let g = group.sub_idx(y, x0);
        if x.iter().all(|z| x.contains(group.add_idx(z, g))) {
            h.insert(g);
        }
    }
    h
}

/// Size of the largest coset (of any subgroup, `G` included) inside `A + B`.
pub fn alpha(a: &GSet, b: &GSet, lat: &SubgroupLattice) -> Result<usize> {
    a.same_group_as(lat.group())?;
    let s = sumset(a, b)?;
    Ok(alpha_of_sumset(&s, lat))
}

pub(crate) fn alpha_of_sumset(s: &GSet, lat: &SubgroupLattice) -> usize {
    lat.largest_coset_in(s)
}

/// Order of the largest proper subgroup of `g`.
pub fn mu(g: &Arc<GroupSpec>, lat: &SubgroupLattice) -> Result<usize> {
    if **g != **lat.group() {
        return Err(Error::GroupMismatch {
            left: g.to_string(),
            right: lat.group().to_string(),
        });
    }
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    Ok(lat.subgroups()[1].card())
}
