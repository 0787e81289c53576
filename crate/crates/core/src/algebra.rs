//! Tree constructors and their unique decompositions.
//!
//! Every operation here grafts onto the rightmost path, whose nodes each own
//! a suffix of the preorder arrays, so the constructors are array
//! concatenations plus label and size adjustments along a path prefix.
//!
//! - `λᵢ(T)` hangs `T` (root relabelled `i`) under a new root labelled `i + 1`.
//! - `U ⊕ V` merges the roots; the new root is `root(U) + root(V) - 1`.
//! - `ρ(T₁,…,T_k) = λ₀(T₁) ⊕ … ⊕ λ₀(T_k)`.
//! - `μᵢ(S, T)` glues the root of `S` (root label 1) onto the `i`th open node
//!   `x` of `T`, appending its children after those of `x`, and adds one to
//!   each node from the root down to `y` (the rightmost child of `x`, or `x`
//!   itself when it is a leaf).
//! - `σ(T₁,…,T_k) = μ₁(ρ(T_{k-1},…,T₁,ε), T_k)`.
//! - `νᵢ(S, T)` replaces the rightmost leaf of `S` (one open node) by the
//!   root of `T` with label 0 and adds `i - 1` along the rightmost path of `S`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::AlgebraError;
use crate::tree::BetaTree;

/// One step of the `(ρ, μ)` decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RhoMuStep {
    Rho(Vec<BetaTree>),
    Mu { i: u32, s: BetaTree, t: BetaTree },
}

/// One step of the `(σ, ν)` decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SigmaNuStep {
    Sigma(Vec<BetaTree>),
    Nu { i: u32, s: BetaTree, t: BetaTree },
}

/// One step of the `(λ, ⊕)` decomposition used by the map bijection.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LambdaOplusStep {
    Lambda { i: u32, t: BetaTree },
    /// Two or more irreducible summands, left to right.
    Oplus(Vec<BetaTree>),
}

/// `λᵢ(T)`, defined for `0 ≤ i ≤ root(T)`.
pub fn lambda_op(i: u32, t: &BetaTree) -> Result<BetaTree, AlgebraError> {
    if i > t.root() {
        return Err(AlgebraError::IndexOutOfRange { op: "lambda", index: i, min: 0, max: t.root() });
    }
    let n = t.len();
    let mut labels = Vec::with_capacity(n + 1);
    labels.extend_from_slice(&[i + 1, i]);
    labels.extend_from_slice(&t.labels()[1..]);
    let mut sizes = Vec::with_capacity(n + 1);
    sizes.push(n as u32 + 1);
    sizes.extend_from_slice(t.sizes());
    Ok(BetaTree::from_parts_unchecked(labels, sizes))
}

/// `U ⊕ V` for nontrivial `U`, `V`.
pub fn oplus(u: &BetaTree, v: &BetaTree) -> Result<BetaTree, AlgebraError> {
    oplus_all([u, v])
}

/// Left-to-right sum of one or more nontrivial trees.
pub fn oplus_all<'a, I>(parts: I) -> Result<BetaTree, AlgebraError>
where
    I: IntoIterator<Item = &'a BetaTree>,
{
    let mut labels = vec![1u32];
    let mut sizes = vec![1u32];
    let mut count = 0;
    for part in parts {
        if part.is_trivial() {
            return Err(AlgebraError::TrivialArgument { op: "oplus" });
        }
        labels[0] += part.root() - 1;
        labels.extend_from_slice(&part.labels()[1..]);
        sizes.extend_from_slice(&part.sizes()[1..]);
        count += 1;
    }
    if count == 0 {
        return Err(AlgebraError::EmptyParts { op: "oplus" });
    }
    sizes[0] = labels.len() as u32;
    Ok(BetaTree::from_parts_unchecked(labels, sizes))
}

/// `ρ(T₁,…,T_k)` for `k ≥ 1`; the parts may be trivial.
pub fn rho(parts: &[BetaTree]) -> Result<BetaTree, AlgebraError> {
    rho_iter(parts.iter())
}

fn rho_iter<'a, I>(parts: I) -> Result<BetaTree, AlgebraError>
where
    I: Iterator<Item = &'a BetaTree>,
{
    let mut labels = vec![1u32];
    let mut sizes = vec![0u32];
    for part in parts {
        labels.push(0);
        labels.extend_from_slice(&part.labels()[1..]);
        sizes.extend_from_slice(part.sizes());
    }
    if labels.len() == 1 {
        return Err(AlgebraError::EmptyParts { op: "rho" });
    }
    sizes[0] = labels.len() as u32;
    Ok(BetaTree::from_parts_unchecked(labels, sizes))
}

/// `μᵢ(S, T)`; requires `root(S) = 1` and `1 ≤ i ≤ open(T)`, or `T = ε`
/// with `i = 1`, in which case the result is `S`.
pub fn mu(i: u32, s: &BetaTree, t: &BetaTree) -> Result<BetaTree, AlgebraError> {
    if s.root() != 1 {
        return Err(AlgebraError::RootNotOne { op: "mu", found: s.root() });
    }
    if t.is_trivial() {
        return if i == 1 {
            Ok(s.clone())
        } else {
            Err(AlgebraError::IndexOutOfRange { op: "mu", index: i, min: 1, max: 1 })
        };
    }
    let open = t.open_positions();
    if i < 1 || i as usize > open.len() {
        return Err(AlgebraError::IndexOutOfRange {
            op: "mu",
            index: i,
            min: 1,
            max: open.len() as u32,
        });
    }
    let x = open[i as usize - 1];
    let mut labels = Vec::with_capacity(t.len() + s.len() - 1);
    labels.extend_from_slice(t.labels());
    labels.extend_from_slice(&s.labels()[1..]);
    let mut sizes = Vec::with_capacity(labels.capacity());
    sizes.extend_from_slice(t.sizes());
    sizes.extend_from_slice(&s.sizes()[1..]);

    let grow = s.len() as u32 - 1;
    let mut v = 0;
    loop {
        labels[v] += 1;
        if v == x {
            sizes[v] += grow;
            // y is the old rightmost child of x, which sits right before the
            // appended block; locate it before the sizes change.
            if let Some(y) = t.last_child(x) {
                labels[y] += 1;
            }
            break;
        }
        let next = t.last_child(v).expect("x lies on the rightmost path");
        sizes[v] += grow;
        v = next;
    }
    Ok(BetaTree::from_parts_unchecked(labels, sizes))
}

/// `σ(T₁,…,T_k) = μ₁(ρ(T_{k-1},…,T₁,ε), T_k)` for `k ≥ 1`.
pub fn sigma(parts: &[BetaTree]) -> Result<BetaTree, AlgebraError> {
    let (last, init) = parts.split_last().ok_or(AlgebraError::EmptyParts { op: "sigma" })?;
    let eps = BetaTree::trivial();
    let inner = rho_iter(init.iter().rev().chain(core::iter::once(&eps)))?;
    mu(1, &inner, last)
}

/// `νᵢ(S, T)`; requires `open(S) = 1` and `1 ≤ i ≤ root(T)`, or `T = ε`
/// with `i = 1`, in which case the result is `S`.
pub fn nu(i: u32, s: &BetaTree, t: &BetaTree) -> Result<BetaTree, AlgebraError> {
    let open_s = s.open();
    if open_s != 1 {
        return Err(AlgebraError::OpenNotOne { op: "nu", found: open_s });
    }
    if t.is_trivial() {
        return if i == 1 {
            Ok(s.clone())
        } else {
            Err(AlgebraError::IndexOutOfRange { op: "nu", index: i, min: 1, max: 1 })
        };
    }
    if i < 1 || i > t.root() {
        return Err(AlgebraError::IndexOutOfRange { op: "nu", index: i, min: 1, max: t.root() });
    }
    let mut labels = Vec::with_capacity(s.len() + t.len() - 1);
    labels.extend_from_slice(s.labels());
    labels.extend_from_slice(&t.labels()[1..]);
    let mut sizes = Vec::with_capacity(labels.capacity());
    sizes.extend_from_slice(s.sizes());
    sizes.extend_from_slice(&t.sizes()[1..]);

    let grow = t.len() as u32 - 1;
    let shift = i - 1;
    for v in s.rightmost_path() {
        labels[v] += shift;
        sizes[v] += grow;
    }
    Ok(BetaTree::from_parts_unchecked(labels, sizes))
}

/// The subtree at `c` turned into a tree of its own: the root gets
/// `1 + children's sum`, or stays 0 when `c` is a leaf (ε).
fn detach(u: &BetaTree, c: usize) -> BetaTree {
    let end = c + u.subtree_size(c);
    let mut labels = u.labels()[c..end].to_vec();
    if end - c > 1 {
        labels[0] = 1 + u.child_sum(c);
    } else {
        labels[0] = 0;
    }
    BetaTree::from_parts_unchecked(labels, u.sizes()[c..end].to_vec())
}

/// `λ`/`⊕` decomposition: `Lambda` iff `sub(U) = 1`.
pub fn decompose_lambda_oplus(u: &BetaTree) -> Result<LambdaOplusStep, AlgebraError> {
    if u.is_trivial() {
        return Err(AlgebraError::TrivialArgument { op: "decompose_lambda_oplus" });
    }
    if u.sub() == 1 {
        return Ok(LambdaOplusStep::Lambda { i: u.label(1), t: detach(u, 1) });
    }
    let parts = u
        .children(0)
        .map(|c| {
            let end = c + u.subtree_size(c);
            let mut labels = Vec::with_capacity(end - c + 1);
            labels.push(u.label(c) + 1);
            labels.extend_from_slice(&u.labels()[c..end]);
            let mut sizes = Vec::with_capacity(end - c + 1);
            sizes.push((end - c + 1) as u32);
            sizes.extend_from_slice(&u.sizes()[c..end]);
            BetaTree::from_parts_unchecked(labels, sizes)
        })
        .collect();
    Ok(LambdaOplusStep::Oplus(parts))
}

fn rho_parts(u: &BetaTree) -> Vec<BetaTree> {
    debug_assert_eq!(u.root(), 1);
    u.children(0).map(|c| detach(u, c)).collect()
}

/// `(ρ, μ)` decomposition: `Rho` iff `root(U) = 1`.
pub fn decompose_rho_mu(u: &BetaTree) -> Result<RhoMuStep, AlgebraError> {
    if u.is_trivial() {
        return Err(AlgebraError::TrivialArgument { op: "decompose_rho_mu" });
    }
    if u.root() == 1 {
        return Ok(RhoMuStep::Rho(rho_parts(u)));
    }
    let (i, s, t) = split_mu(u);
    Ok(RhoMuStep::Mu { i, s, t })
}

/// Inverts `μ` for `root(U) > 1`.
///
/// `x` is the parent of the first 0 on the rightmost path; the children of
/// `S` are the maximal suffix of 0-labelled children of `x`.
fn split_mu(u: &BetaTree) -> (u32, BetaTree, BetaTree) {
    let n = u.len();
    let path = u.rightmost_path();
    let zero_at = path.iter().position(|&v| u.label(v) == 0).expect("rightmost leaf is 0");
    debug_assert!(zero_at > 0);
    let x_depth = zero_at - 1;
    let x = path[x_depth];

    let children: Vec<usize> = u.children(x).collect();
    let keep = children.iter().rposition(|&c| u.label(c) != 0).map_or(0, |k| k + 1);
    let cut = if keep < children.len() { children[keep] } else { n };

    let mut s_labels = Vec::with_capacity(n - cut + 1);
    s_labels.push(1);
    s_labels.extend_from_slice(&u.labels()[cut..]);
    let mut s_sizes = Vec::with_capacity(n - cut + 1);
    s_sizes.push((n - cut + 1) as u32);
    s_sizes.extend_from_slice(&u.sizes()[cut..]);
    let s = BetaTree::from_parts_unchecked(s_labels, s_sizes);

    let mut labels = u.labels()[..cut].to_vec();
    let mut sizes = u.sizes()[..cut].to_vec();
    let shrink = (n - cut) as u32;
    for &v in &path[..=x_depth] {
        labels[v] -= 1;
        sizes[v] -= shrink;
    }
    if keep > 0 {
        labels[children[keep - 1]] -= 1;
    }
    let t = BetaTree::from_parts_unchecked(labels, sizes);
    let i = t.open_positions().iter().position(|&v| v == x).expect("x is open in T") + 1;
    (i as u32, s, t)
}

/// `(σ, ν)` decomposition: `Sigma` iff `open(U) = 1`.
pub fn decompose_sigma_nu(u: &BetaTree) -> Result<SigmaNuStep, AlgebraError> {
    if u.is_trivial() {
        return Err(AlgebraError::TrivialArgument { op: "decompose_sigma_nu" });
    }
    let open = u.open_positions();
    if open.len() == 1 {
        return Ok(SigmaNuStep::Sigma(split_sigma(u)));
    }
    let (i, s, t) = split_nu(u);
    Ok(SigmaNuStep::Nu { i, s, t })
}

/// Inverts `σ` for `open(U) = 1`: undo the `μ₁` wrapper (absent when
/// `root(U) = 1`), then undo `ρ`, whose last part is always ε, and reverse.
fn split_sigma(u: &BetaTree) -> Vec<BetaTree> {
    let (inner, last) = if u.root() == 1 {
        (None, BetaTree::trivial())
    } else {
        let (i, s, t) = split_mu(u);
        assert_eq!(i, 1, "σ-image must decompose with μ₁");
        (Some(s), t)
    };
    let mut parts = rho_parts(inner.as_ref().unwrap_or(u));
    let eps = parts.pop().expect("ρ has a part");
    assert!(eps.is_trivial(), "last ρ-part of a σ-image must be ε");
    parts.reverse();
    parts.push(last);
    parts
}

/// Inverts `ν` for `open(U) > 1`.
///
/// Between the root and the grafting node every node of `S` is excessive and
/// the grafting node itself is moderate (its label `i - 1` is at most the
/// sum of the children it received), so `x` is the first moderate node on
/// the rightmost path.
fn split_nu(u: &BetaTree) -> (u32, BetaTree, BetaTree) {
    let path = u.rightmost_path();
    let depth = path.iter().position(|&v| u.is_moderate(v)).expect("rightmost leaf is moderate");
    let x = path[depth];
    debug_assert!(depth > 0 && !u.is_leaf(x));
    let shift = u.label(x);
    let end = u.len();

    let mut labels = u.labels()[..=x].to_vec();
    let mut sizes = u.sizes()[..=x].to_vec();
    let shrink = (end - x - 1) as u32;
    for &v in &path[..=depth] {
        labels[v] -= shift;
        sizes[v] -= shrink;
    }
    let s = BetaTree::from_parts_unchecked(labels, sizes);

    let mut t_labels = u.labels()[x..].to_vec();
    t_labels[0] = 1 + u.child_sum(x);
    let t = BetaTree::from_parts_unchecked(t_labels, u.sizes()[x..].to_vec());
    (shift + 1, s, t)
}

/// Rebuilds the tree a `(ρ, μ)` step came from.
pub fn recompose_rho_mu(step: &RhoMuStep) -> Result<BetaTree, AlgebraError> {
    match step {
        RhoMuStep::Rho(parts) => rho(parts),
        RhoMuStep::Mu { i, s, t } => mu(*i, s, t),
    }
}

pub fn recompose_sigma_nu(step: &SigmaNuStep) -> Result<BetaTree, AlgebraError> {
    match step {
        SigmaNuStep::Sigma(parts) => sigma(parts),
        SigmaNuStep::Nu { i, s, t } => nu(*i, s, t),
    }
}

pub fn recompose_lambda_oplus(step: &LambdaOplusStep) -> Result<BetaTree, AlgebraError> {
    match step {
        LambdaOplusStep::Lambda { i, t } => lambda_op(*i, t),
        LambdaOplusStep::Oplus(parts) => oplus_all(parts),
    }
}
