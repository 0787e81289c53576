//! Independent reimplementations used as references.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use beta_trees::algebra::{decompose_rho_mu, decompose_sigma_nu, mu, nu, RhoMuStep, SigmaNuStep};
use beta_trees::enumerate::{a_seq, count_trees, excessive_marked_count, joint_distribution, trees};
use beta_trees::series::solve_f;
use beta_trees::tree::validate_tree;
use beta_trees::{BetaTree, LabeledTree, Stat};
use num_bigint::{BigInt, BigUint};

/// Every plane tree on `n` nodes with every label in `0..n`, filtered by the
/// validity rules.
fn brute_force_trees(n: usize) -> BTreeSet<BetaTree> {
    fn forests(nodes: usize, memo: &mut BTreeMap<usize, Vec<Vec<LabeledTree>>>) -> Vec<Vec<LabeledTree>> {
        if let Some(f) = memo.get(&nodes) {
            return f.clone();
        }
        let mut out = Vec::new();
        if nodes == 0 {
            out.push(Vec::new());
        }
        for first in 1..=nodes {
            for sub in forests(first - 1, memo) {
                for rest in forests(nodes - first, memo) {
                    let mut f = vec![LabeledTree::node(0, sub.clone())];
                    f.extend(rest);
                    out.push(f);
                }
            }
        }
        memo.insert(nodes, out.clone());
        out
    }
    let mut memo = BTreeMap::new();
    let mut result = BTreeSet::new();
    for forest in forests(n - 1, &mut memo) {
        let shape = LabeledTree::node(0, forest);
        let len = shape.len();
        let degrees: Vec<u32> = (0..len).map(|v| shape.degree(v) as u32).collect();
        let mut labels = vec![0u32; len];
        loop {
            let raw = LabeledTree::from_preorder_degrees(labels.clone(), &degrees).unwrap();
            if validate_tree(&raw).is_empty() {
                result.insert(BetaTree::try_from(raw).unwrap());
            }
            let mut k = 0;
            while k < len && labels[k] + 1 == len as u32 {
                labels[k] = 0;
                k += 1;
            }
            if k == len {
                break;
            }
            labels[k] += 1;
        }
    }
    result
}

#[test]
fn generator_matches_brute_force() {
    for n in 1..=6 {
        let fast: Vec<BetaTree> = trees(n as u32).collect();
        let slow = brute_force_trees(n);
        assert_eq!(fast.len(), slow.len(), "n = {n}");
        assert_eq!(fast.into_iter().collect::<BTreeSet<_>>(), slow, "n = {n}");
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

#[test]
fn closed_forms_match_direct_arithmetic() {
    for m in 1..=12u128 {
        // 3·2^{m−1}(2m)!/(m!(m+2)!) = 3·2^{m−1}·binom(2m, m) / ((m+1)(m+2))
        let direct = 3 * (1u128 << (m - 1)) * binomial(2 * m, m) / ((m + 1) * (m + 2));
        assert_eq!(count_trees(m as u32 + 1), BigUint::from(direct));
    }
    for n in 1..=15u128 {
        let direct = (1u128 << (n - 1)) * binomial(2 * n, n) / (n + 1);
        assert_eq!(a_seq(n as u32).unwrap(), BigUint::from(direct));
    }
}

/// All `(i, S, T)` with `op(i, S, T) = U`, for every `U` on `n` nodes.
fn preimages(
    n: usize,
    pool: &[BetaTree],
    op: impl Fn(u32, &BetaTree, &BetaTree) -> Option<BetaTree>,
) -> BTreeMap<BetaTree, Vec<(u32, BetaTree, BetaTree)>> {
    let mut out: BTreeMap<BetaTree, Vec<_>> = BTreeMap::new();
    for s in pool {
        for t in pool.iter().filter(|t| !t.is_trivial() && s.len() + t.len() == n + 1) {
            for i in 1..=n as u32 {
                if let Some(u) = op(i, s, t) {
                    out.entry(u).or_default().push((i, s.clone(), t.clone()));
                }
            }
        }
    }
    out
}

#[test]
fn mu_and_nu_splits_are_unique_and_found() {
    let pool: Vec<BetaTree> = (1..=7).flat_map(trees).collect();
    for n in 2..=7usize {
        let by_mu = preimages(n, &pool, |i, s, t| mu(i, s, t).ok());
        let by_nu = preimages(n, &pool, |i, s, t| nu(i, s, t).ok());
        for u in trees(n as u32) {
            match decompose_rho_mu(&u).unwrap() {
                RhoMuStep::Rho(_) => assert!(!by_mu.contains_key(&u), "{u} is both a rho and a mu image"),
                RhoMuStep::Mu { i, s, t } => assert_eq!(by_mu[&u], vec![(i, s, t)], "{u}"),
            }
            match decompose_sigma_nu(&u).unwrap() {
                SigmaNuStep::Sigma(_) => assert!(!by_nu.contains_key(&u), "{u} is both a sigma and a nu image"),
                SigmaNuStep::Nu { i, s, t } => assert_eq!(by_nu[&u], vec![(i, s, t)], "{u}"),
            }
        }
    }
}

#[test]
fn series_coefficients_match_enumeration() {
    let f = solve_f(8).unwrap();
    for n in 0..=8u32 {
        let table = joint_distribution(n + 1, (Stat::Root, Stat::Rmod));
        let mut expected: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for t in trees(n + 1) {
            let s = t.statistics();
            *expected.entry((s.root as usize, s.rmod as usize)).or_default() += 1;
        }
        let got: BTreeMap<(usize, usize), BigInt> =
            f.coeff(n as usize).terms().map(|(a, b, c)| ((a, b), c.clone())).collect();
        assert_eq!(got, expected, "n = {n}");
        assert_eq!(table.iter().count(), expected.len());
        if n >= 1 {
            assert!(f.coeff(n as usize).deg_x().unwrap() <= n as usize);
            assert!(f.coeff(n as usize).deg_y().unwrap() <= n as usize);
        }
    }
}

#[test]
fn marked_counts_by_direct_summation() {
    for n in 1..=6u32 {
        let direct: u64 = trees(n + 1)
            .map(|t| (0..t.len()).filter(|&v| t.label(v) > t.child_sum(v)).count() as u64)
            .sum();
        assert_eq!(excessive_marked_count(n), BigUint::from(direct));
    }
}
