//! Derivation trees for the main bound.
//!
//! [`build_certificate`] replays the induction on `|B|` for one concrete
//! instance: every node states a lower bound on `S_t(A, B)` and says how it
//! follows from its children. [`verify_certificate`] rechecks a tree from
//! scratch without trusting any recorded quantity.
//!
//! Node kinds, for a normalized instance `0 ∈ A ∩ B`, `|A| >= |B| >= t`:
//!
//! * `BaseCase`: `|B| = t`, so `S_t = |A||B|`.
//! * `PeriodicCase`: `A + B = A`. Then `A` is a union of cosets of `⟨B⟩` and
//!   each coset contributes `t` times its size, so `S_t = t|A|`.
//! * Otherwise pick `a ∈ A`, `b ∈ B` with `a + b ∉ A`, set `A' = A - a` and
//!   `v = |A' ∩ B|` (so `1 <= v < |B|`).
//!   * `SplitRecurseSame` (`t <= v`): bound by the child `(A' ∪ B, A' ∩ B)` at `t`.
//!   * `SplitRecurseDiff` (`t > v`): `v(|A| + |B| - v)` plus the child
//!     `(A' \ B, B \ A')`, translated to contain 0, at level `t - v`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bounds::main_rhs;
use crate::error::{Error, Result};
use crate::group::{generated_subgroup, GroupSpec, SubgroupLattice};
use crate::setops::{alpha_of_sumset, GSet};
use crate::spectrum::spectrum_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    BaseCase,
    PeriodicCase,
    SplitRecurseSame,
    SplitRecurseDiff,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateNode {
    pub kind: NodeKind,
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
    pub t: usize,
    /// Largest coset inside `A + B`; recorded so the monotonicity of `alpha`
    /// down the tree can be audited.
    pub alpha: usize,
    /// `[a, b]` with `a ∈ A`, `b ∈ B`, `a + b ∉ A` (split kinds).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
    /// `|(A - a) ∩ B|` (split kinds).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    /// Members `[s0, t0]` subtracted from `S` and `T` to normalize the child
    /// of a `SplitRecurseDiff` node.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub child_shift: Option<[usize; 2]>,
    /// The child of a `SplitRecurseDiff` node has `T` as its first operand.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub child_swapped: bool,
    /// Decomposition of `A` into cosets of `⟨B⟩` (periodic case).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
    pub claimed_bound: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CertificateNode>,
}

impl CertificateNode {
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Self::depth).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Self::node_count).sum::<usize>()
    }
}

/// A derivation tree together with the group it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub group: String,
    pub root: CertificateNode,
}

impl Certificate {
    pub fn claimed_bound(&self) -> u64 {
        self.root.claimed_bound
    }

    /// The main bound's right-hand side for the root instance.
    pub fn root_rhs_main(&self) -> i64 {
        let r = &self.root;
        main_rhs(r.set_a.len(), r.set_b.len(), r.t, r.alpha)
    }
}

/// Picks one of the candidate `(a, b)` pairs for a split step, by index.
pub type PairChooser<'a> = dyn FnMut(&[(usize, usize)]) -> usize + 'a;

/// Builds a certificate choosing the first `(a, b)` pair in index order.
pub fn build_certificate(a: &GSet, b: &GSet, t: usize) -> Result<Certificate> {
    build_certificate_with(a, b, t, &mut |_| 0)
}

/// Builds a certificate, letting `choose` pick the split pair at every split
/// node from the candidates (all `(a, b)` with `a + b ∉ A`, in index order).
pub fn build_certificate_with(
    a: &GSet,
    b: &GSet,
    t: usize,
    choose: &mut PairChooser<'_>,
) -> Result<Certificate> {
    let lat = SubgroupLattice::new(a.group())?;
    build_certificate_in(&lat, a, b, t, choose)
}

/// As [`build_certificate_with`], reusing a precomputed lattice of the group.
pub fn build_certificate_in(
    lat: &SubgroupLattice,
    a: &GSet,
    b: &GSet,
    t: usize,
    choose: &mut PairChooser<'_>,
) -> Result<Certificate> {
    a.same_group(b)?;
    a.same_group_as(lat.group())?;
    check_instance(a, b, t).map_err(Error::Precondition)?;
    let root = build_node(a, b, t, lat, choose)?;
    Ok(Certificate {
        group: a.group().to_string(),
        root,
    })
}

fn check_instance(a: &GSet, b: &GSet, t: usize) -> std::result::Result<(), String> {
    if a.is_empty() || b.is_empty() {
        return Err("operands must be nonempty".into());
    }
    if !a.contains(0) || !b.contains(0) {
        return Err("both operands must contain 0".into());
    }
    if !(a.card() >= b.card() && b.card() >= t && t >= 1) {
        return Err(format!(
            "need |A| >= |B| >= t >= 1, got |A| = {}, |B| = {}, t = {t}",
            a.card(),
            b.card()
        ));
    }
    Ok(())
}

fn build_node(
    a: &GSet,
    b: &GSet,
    t: usize,
    lat: &SubgroupLattice,
    choose: &mut PairChooser<'_>,
) -> Result<CertificateNode> {
    let group = a.group();
    let sum = a.sumset_unchecked(b);
    let mut node = CertificateNode {
        kind: NodeKind::BaseCase,
        set_a: a.to_vec(),
        set_b: b.to_vec(),
        t,
        alpha: alpha_of_sumset(&sum, lat),
        pair: None,
        v: None,
        child_shift: None,
        child_swapped: false,
        blocks: None,
        claimed_bound: (a.card() * b.card()) as u64,
        children: Vec::new(),
    };
    if b.card() == t {
        return Ok(node);
    }

    if sum == *a {
        let h = generated_subgroup(b);
        let mut rest = a.clone();
        let mut blocks = Vec::new();
        while let Some(x) = rest.first() {
            let coset = h.translate_idx(x);
            rest = rest.difference(&coset);
            blocks.push(coset.to_vec());
        }
        node.kind = NodeKind::PeriodicCase;
        node.blocks = Some(blocks);
        node.claimed_bound = (t * a.card()) as u64;
        return Ok(node);
    }

    let candidates: Vec<(usize, usize)> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| (x, y)))
        .filter(|&(x, y)| !a.contains(group.add_idx(x, y)))
        .collect();
    if candidates.is_empty() {
        return Err(Error::Internal(
            "A + B != A but every a + b lies in A".into(),
        ));
    }
    let (pa, pb) = candidates[choose(&candidates).min(candidates.len() - 1)];
    let shifted = a.translate_idx(group.neg_idx(pa));
    let inter = shifted.intersection(b);
    let v = inter.card();
    node.pair = Some([pa, pb]);
    node.v = Some(v);

    if t <= v {
        let child = build_node(&shifted.union(b), &inter, t, lat, choose)?;
        node.kind = NodeKind::SplitRecurseSame;
        node.claimed_bound = child.claimed_bound;
        node.children.push(child);
    } else {
        let s = shifted.difference(b);
        let tt = b.difference(&shifted);
        let (s0, t0) = match (s.first(), tt.first()) {
            (Some(s0), Some(t0)) => (s0, t0),
            _ => return Err(Error::Internal("empty split operand".into())),
        };
        let s = s.translate_idx(group.neg_idx(s0));
        let tt = tt.translate_idx(group.neg_idx(t0));
        let swapped = s.card() < tt.card();
        let (first, second) = if swapped { (&tt, &s) } else { (&s, &tt) };
        let child = build_node(first, second, t - v, lat, choose)?;
        node.kind = NodeKind::SplitRecurseDiff;
        node.child_shift = Some([s0, t0]);
        node.child_swapped = swapped;
        node.claimed_bound = split_diff_base(a.card(), b.card(), v) + child.claimed_bound;
        node.children.push(child);
    }
    Ok(node)
}

/// `v(|A| + |B| - v)`: the exact value of `S_v(A' ∩ B, A' ∪ B)`.
fn split_diff_base(card_a: usize, card_b: usize, v: usize) -> u64 {
    (v * (card_a + card_b - v)) as u64
}

/// One failed check, located by the child-index path from the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFailure {
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    pub nodes_checked: usize,
    pub failures: Vec<VerificationFailure>,
}

/// Rechecks every node of a certificate: the set equations, the recorded
/// parameters, the arithmetic linking a node to its children, and soundness
/// (`claimed_bound <= S_t` from a freshly computed spectrum).
///
/// A tree that does not even describe sets of its group (bad group literal,
/// out-of-range members) is an error rather than a failed verification.
pub fn verify_certificate(cert: &Certificate) -> Result<Verification> {
    let group = GroupSpec::parse(&cert.group)?;
    let lat = SubgroupLattice::new(&group)?;
    verify_certificate_in(&lat, cert)
}

/// As [`verify_certificate`], reusing a precomputed lattice of the
/// certificate's group.
pub fn verify_certificate_in(lat: &SubgroupLattice, cert: &Certificate) -> Result<Verification> {
    let group = GroupSpec::parse(&cert.group)?;
    if *group != **lat.group() {
        return Err(Error::GroupMismatch {
            left: group.to_string(),
            right: lat.group().to_string(),
        });
    }
    let mut checker = Checker {
        group: Arc::clone(lat.group()),
        lat,
        failures: Vec::new(),
        nodes: 0,
    };
    checker.node(&cert.root, "root")?;
    Ok(Verification {
        valid: checker.failures.is_empty(),
        nodes_checked: checker.nodes,
        failures: checker.failures,
    })
}

struct Checker<'a> {
    group: Arc<GroupSpec>,
    lat: &'a SubgroupLattice,
    failures: Vec<VerificationFailure>,
    nodes: usize,
}

impl Checker<'_> {
    fn fail(&mut self, path: &str, message: impl Into<String>) {
        self.failures.push(VerificationFailure {
            path: path.to_string(),
            message: message.into(),
        });
    }

    fn node(&mut self, node: &CertificateNode, path: &str) -> Result<()> {
        self.nodes += 1;
        let a = GSet::from_indices(&self.group, node.set_a.iter().copied())?;
        let b = GSet::from_indices(&self.group, node.set_b.iter().copied())?;
        if a.card() != node.set_a.len() || b.card() != node.set_b.len() {
            self.fail(path, "operand lists contain duplicates");
        }
        let t = node.t;
        if let Err(msg) = check_instance(&a, &b, t) {
            self.fail(path, msg);
            return Ok(());
        }

        let sum = a.sumset_unchecked(&b);
        let alpha = alpha_of_sumset(&sum, self.lat);
        if alpha != node.alpha {
            self.fail(path, format!("alpha recorded as {}, actual {alpha}", node.alpha));
        }
        let s_t = spectrum_unchecked(&a, &b).partial_sum_unchecked(t);
        if node.claimed_bound > s_t {
            self.fail(
                path,
                format!("claimed bound {} exceeds S_t = {s_t}", node.claimed_bound),
            );
        }
        for child in &node.children {
            if child.set_b.len() >= node.set_b.len() {
                self.fail(path, "child does not decrease |B|");
            }
        }

        match node.kind {
            NodeKind::BaseCase => {
                if b.card() != t {
                    self.fail(path, format!("base case needs |B| = t, got |B| = {}", b.card()));
                }
                self.expect_bound(path, node, (a.card() * b.card()) as u64);
                self.expect_children(path, node, 0);
            }
            NodeKind::PeriodicCase => {
                if sum != a {
                    self.fail(path, "periodic case needs A + B = A");
                }
                self.check_blocks(path, node, &a, &b)?;
                self.expect_bound(path, node, (t * a.card()) as u64);
                self.expect_children(path, node, 0);
            }
            NodeKind::SplitRecurseSame | NodeKind::SplitRecurseDiff => {
                self.check_split(path, node, &a, &b)?;
            }
        }

        for (i, child) in node.children.iter().enumerate() {
            self.node(child, &format!("{path}/{i}"))?;
        }
        Ok(())
    }

    fn expect_bound(&mut self, path: &str, node: &CertificateNode, expected: u64) {
        if node.claimed_bound != expected {
            self.fail(
                path,
                format!("claimed bound {} but this step yields {expected}", node.claimed_bound),
            );
        }
    }

    fn expect_children(&mut self, path: &str, node: &CertificateNode, n: usize) -> bool {
        if node.children.len() != n {
            self.fail(path, format!("expected {n} children, found {}", node.children.len()));
            return false;
        }
        true
    }

    fn check_blocks(&mut self, path: &str, node: &CertificateNode, a: &GSet, b: &GSet) -> Result<()> {
        let Some(blocks) = &node.blocks else {
            self.fail(path, "periodic case without a coset decomposition");
            return Ok(());
        };
        let h = generated_subgroup(b);
        let mut covered = GSet::empty(&self.group);
        for block in blocks {
            let block = GSet::from_indices(&self.group, block.iter().copied())?;
            let Some(x) = block.first() else {
                self.fail(path, "empty block");
                continue;
            };
            if block != h.translate_idx(x) {
                self.fail(path, format!("block {block} is not a coset of <B>"));
            }
            if block.intersection_card(&covered) != 0 {
                self.fail(path, "blocks overlap");
            }
            covered = covered.union(&block);
        }
        if covered != *a {
            self.fail(path, "blocks do not cover A exactly");
        }
        Ok(())
    }

    fn check_split(&mut self, path: &str, node: &CertificateNode, a: &GSet, b: &GSet) -> Result<()> {
        let g = Arc::clone(&self.group);
        let t = node.t;
        let Some([pa, pb]) = node.pair else {
            self.fail(path, "split node without a pair");
            return Ok(());
        };
        if !a.contains(pa) || !b.contains(pb) {
            self.fail(path, format!("pair ({pa}, {pb}) not in A x B"));
            return Ok(());
        }
        if a.contains(g.add_idx(pa, pb)) {
            self.fail(path, format!("pair ({pa}, {pb}) has a + b in A"));
        }
        let shifted = a.translate_idx(g.neg_idx(pa));
        let inter = shifted.intersection(b);
        let v = inter.card();
        if node.v != Some(v) {
            self.fail(path, format!("v recorded as {:?}, actual {v}", node.v));
            return Ok(());
        }
        if !self.expect_children(path, node, 1) {
            return Ok(());
        }
        let child = &node.children[0];

        match node.kind {
            NodeKind::SplitRecurseSame => {
                if t > v {
                    self.fail(path, format!("same-level split needs t <= v, got t = {t}, v = {v}"));
                }
                let union = shifted.union(b);
                if child.set_a != union.to_vec() || child.set_b != inter.to_vec() {
                    self.fail(path, "child is not (A' ∪ B, A' ∩ B)");
                }
                if child.t != t {
                    self.fail(path, format!("child level {} should be {t}", child.t));
                }
                if child.alpha > node.alpha {
                    self.fail(path, "alpha increased from parent to child");
                }
                self.expect_bound(path, node, child.claimed_bound);
            }
            NodeKind::SplitRecurseDiff => {
                if t <= v {
                    self.fail(path, format!("lower-level split needs t > v, got t = {t}, v = {v}"));
                }
                let s = shifted.difference(b);
                let tt = b.difference(&shifted);
                let Some([s0, t0]) = node.child_shift else {
                    self.fail(path, "missing child shift");
                    return Ok(());
                };
                if !s.contains(s0) || !tt.contains(t0) {
                    self.fail(path, "child shift is not a member of (S, T)");
                    return Ok(());
                }
                let s = s.translate_idx(g.neg_idx(s0)).to_vec();
                let tt = tt.translate_idx(g.neg_idx(t0)).to_vec();
                let (first, second) = if node.child_swapped { (&tt, &s) } else { (&s, &tt) };
                if child.set_a != *first || child.set_b != *second {
                    self.fail(path, "child is not the normalized (A' \\ B, B \\ A')");
                }
                if child.t + v != t {
                    self.fail(path, format!("child level {} should be t - v = {}", child.t, t.saturating_sub(v)));
                }
                if child.alpha > node.alpha {
                    self.fail(path, "alpha increased from parent to child");
                }
                self.expect_bound(
                    path,
                    node,
                    split_diff_base(a.card(), b.card(), v) + child.claimed_bound,
                );
            }
            _ => unreachable!(),
        }
        Ok(())
    }
}
