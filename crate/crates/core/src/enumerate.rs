//! Exhaustive generation and counting.
//!
//! Trees on `n` nodes are produced shape by shape. Shapes (plane trees) come
//! in lexicographic order of their Dyck words with `(` before `)`, so the path
//! comes first and the star last. Within a shape the labels of the internal
//! non-root nodes are odometer digits: the digits are the nodes in reverse
//! preorder, the last digit turns fastest, and digit `v` ranges over
//! `0..=child_sum(v) + 1`. Leaves are 0 and the root label is forced. Every
//! digit only depends on digits before it (its descendants), so this visits
//! each valid labelling exactly once without rejection.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::tree::{BetaTree, StatVector};

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u32) -> BigUint {
    let mut c = BigUint::one();
    for k in 0..n {
        // C_{k+1} = C_k * 2(2k+1) / (k+2)
        c = c * (2 * (2 * k as u64 + 1)) / (k as u64 + 2);
    }
    c
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Rooted bicubic maps on `2m` vertices: `3·2^{m-1}(2m)! / (m!(m+2)!)`.
/// `None` for `m = 0`, where the formula is not an integer.
pub fn tutte_count(m: u32) -> Option<BigUint> {
    if m == 0 {
        return None;
    }
    let m = m as u64;
    let num = BigUint::from(3u32) * (BigUint::one() << (m - 1)) * factorial(2 * m);
    Some(num / (factorial(m) * factorial(m + 2)))
}

/// Number of trees on `n` nodes: 1 for `n = 1`, `tutte_count(n - 1)` beyond,
/// and 0 for `n = 0`.
pub fn count_trees(n: u32) -> BigUint {
    match n {
        0 => BigUint::zero(),
        1 => BigUint::one(),
        _ => tutte_count(n - 1).expect("n - 1 ≥ 1"),
    }
}

/// `a(n) = 2^{n-1} C_n`; `None` for `n = 0`.
pub fn a_seq(n: u32) -> Option<BigUint> {
    if n == 0 {
        return None;
    }
    Some(catalan(n) << (n as usize - 1))
}

/// A plane tree on `n` nodes, given by preorder subtree sizes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Shape {
    sizes: Vec<u32>,
    parent: Vec<u32>,
}

impl Shape {
    /// Builds the shape of a Dyck word over `(`/`)`, the root being implicit.
    pub fn from_dyck(word: &[bool]) -> Option<Shape> {
        let mut parent = vec![u32::MAX];
        let mut stack = vec![0usize];
        for &open in word {
            if open {
                parent.push(*stack.last().unwrap() as u32);
                stack.push(parent.len() - 1);
            } else {
                stack.pop();
                if stack.is_empty() {
                    return None;
                }
            }
        }
        if stack.len() != 1 {
            return None;
        }
        let n = parent.len();
        let mut sizes = vec![1u32; n];
        for v in (1..n).rev() {
            sizes[parent[v] as usize] += sizes[v];
        }
        Some(Shape { sizes, parent })
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// The Dyck word, `true` for `(`.
    pub fn dyck_word(&self) -> Vec<bool> {
        let n = self.len();
        let mut word = Vec::with_capacity(2 * (n - 1));
        let mut open: Vec<usize> = vec![0];
        for v in 1..n {
            while *open.last().unwrap() != self.parent[v] as usize {
                open.pop();
                word.push(false);
            }
            word.push(true);
            open.push(v);
        }
        word.resize(2 * (n - 1), false);
        word
    }

    /// Visits every labelling of this shape in odometer order.
    pub fn for_each_labeling<F: FnMut(&BetaTree)>(&self, mut f: F) {
        let mut l = Labelings::new(self);
        loop {
            f(&l.tree);
            if !l.advance() {
                break;
            }
        }
    }

    pub fn labelings(&self) -> impl Iterator<Item = BetaTree> + '_ {
        let mut state = Some(Labelings::new(self));
        core::iter::from_fn(move || {
            let l = state.as_mut()?;
            let out = l.tree.clone();
            if !l.advance() {
                state = None;
            }
            Some(out)
        })
    }
}

/// Odometer state over the labellings of one shape.
struct Labelings<'a> {
    shape: &'a Shape,
    /// Internal non-root nodes in reverse preorder.
    digits: Vec<usize>,
    child_sum: Vec<u32>,
    tree: BetaTree,
}

impl<'a> Labelings<'a> {
    fn new(shape: &'a Shape) -> Self {
        let n = shape.len();
        let digits = (1..n).rev().filter(|&v| shape.sizes[v] > 1).collect();
        let mut labels = vec![0u32; n];
        labels[0] = if n > 1 { 1 } else { 0 };
        let tree = BetaTree::from_parts_unchecked(labels, shape.sizes.clone());
        Labelings { shape, digits, child_sum: vec![0; n], tree }
    }

    fn set(&mut self, v: usize, label: u32) {
        let old = self.tree.label(v);
        let p = self.shape.parent[v] as usize;
        self.child_sum[p] = self.child_sum[p] + label - old;
        self.tree.set_label(v, label);
    }

    fn advance(&mut self) -> bool {
        for j in (0..self.digits.len()).rev() {
            let v = self.digits[j];
            let label = self.tree.label(v);
            if label <= self.child_sum[v] {
                self.set(v, label + 1);
                for k in j + 1..self.digits.len() {
                    self.set(self.digits[k], 0);
                }
                self.tree.set_label(0, self.child_sum[0] + 1);
                return true;
            }
        }
        false
    }
}

/// All shapes on `n ≥ 1` nodes in Dyck-word order; nothing for `n = 0`.
pub fn shapes(n: u32) -> Shapes {
    let m = n.saturating_sub(1) as usize;
    let word = if n == 0 {
        None
    } else {
        let mut w = vec![true; m];
        w.resize(2 * m, false);
        Some(w)
    };
    Shapes { word }
}

pub struct Shapes {
    word: Option<Vec<bool>>,
}

impl Iterator for Shapes {
    type Item = Shape;

    fn next(&mut self) -> Option<Shape> {
        let word = self.word.as_mut()?;
        let shape = Shape::from_dyck(word).expect("generator keeps words balanced");
        if !next_dyck(word) {
            self.word = None;
        }
        Some(shape)
    }
}

/// Advances to the lexicographically next Dyck word, `(` < `)`.
fn next_dyck(word: &mut [bool]) -> bool {
    let mut depth_before = vec![0i32; word.len()];
    let mut d = 0;
    for (k, &open) in word.iter().enumerate() {
        depth_before[k] = d;
        d += if open { 1 } else { -1 };
    }
    let mut opens_from = 0usize;
    for p in (0..word.len()).rev() {
        if word[p] {
            opens_from += 1;
            if depth_before[p] >= 1 {
                word[p] = false;
                let rest = &mut word[p + 1..];
                for (k, slot) in rest.iter_mut().enumerate() {
                    *slot = k < opens_from;
                }
                return true;
            }
        }
    }
    false
}

/// All trees on `n` nodes, in the documented order.
pub fn trees(n: u32) -> impl Iterator<Item = BetaTree> {
    shapes(n).flat_map(|shape| {
        let mut out = Vec::new();
        shape.for_each_labeling(|t| out.push(t.clone()));
        out
    })
}

/// Calls `f` on every tree with `n` nodes without allocating per tree.
pub fn for_each_tree<F: FnMut(&BetaTree)>(n: u32, mut f: F) {
    for shape in shapes(n) {
        shape.for_each_labeling(&mut f);
    }
}

/// One of the six tree statistics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Stat {
    Root,
    Sub,
    Rzero,
    Rmod,
    Open,
    Exc,
}

impl Stat {
    pub const ALL: [Stat; 6] = [Stat::Root, Stat::Sub, Stat::Rzero, Stat::Rmod, Stat::Open, Stat::Exc];

    pub fn name(self) -> &'static str {
        match self {
            Stat::Root => "root",
            Stat::Sub => "sub",
            Stat::Rzero => "rzero",
            Stat::Rmod => "rmod",
            Stat::Open => "open",
            Stat::Exc => "exc",
        }
    }

    pub fn of(self, s: &StatVector) -> u32 {
        match self {
            Stat::Root => s.root,
            Stat::Sub => s.sub,
            Stat::Rzero => s.rzero,
            Stat::Rmod => s.rmod,
            Stat::Open => s.open,
            Stat::Exc => s.exc,
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownStat;

impl fmt::Display for UnknownStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown statistic (expected root, sub, rzero, rmod, open or exc)")
    }
}

impl core::error::Error for UnknownStat {}

impl FromStr for Stat {
    type Err = UnknownStat;

    fn from_str(s: &str) -> Result<Stat, UnknownStat> {
        Stat::ALL.into_iter().find(|st| st.name() == s).ok_or(UnknownStat)
    }
}

/// Exact counts of trees by a pair of statistic values.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct JointDistTable {
    counts: BTreeMap<(u32, u32), BigUint>,
    total: BigUint,
}

impl JointDistTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: (u32, u32), count: BigUint) {
        if count.is_zero() {
            return;
        }
        self.total += &count;
        *self.counts.entry(key).or_default() += count;
    }

    pub fn merge(&mut self, other: JointDistTable) {
        for (key, count) in other.counts {
            self.add(key, count);
        }
    }

    pub fn get(&self, a: u32, b: u32) -> BigUint {
        self.counts.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Nonzero entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &BigUint)> {
        self.counts.iter()
    }

    pub fn transposed(&self) -> JointDistTable {
        let counts = self.counts.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect();
        JointDistTable { counts, total: self.total.clone() }
    }
}

impl From<BTreeMap<(u32, u32), u64>> for JointDistTable {
    fn from(small: BTreeMap<(u32, u32), u64>) -> Self {
        let mut table = JointDistTable::new();
        for (key, count) in small {
            table.add(key, BigUint::from(count));
        }
        table
    }
}

/// Joint table of `(a, b)` over all trees on `n` nodes.
pub fn joint_distribution(n: u32, pair: (Stat, Stat)) -> JointDistTable {
    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for_each_tree(n, |t| {
        let s = t.statistics();
        *counts.entry((pair.0.of(&s), pair.1.of(&s))).or_default() += 1;
    });
    counts.into()
}

/// Number of trees on `n` nodes fixed by `g`, and the trees themselves if asked.
pub fn fixed_points(n: u32, collect: bool) -> (u64, Vec<BetaTree>) {
    let mut count = 0;
    let mut list = Vec::new();
    for_each_tree(n, |t| {
        if crate::involution::g(t) == *t {
            count += 1;
            if collect {
                list.push(t.clone());
            }
        }
    });
    (count, list)
}

/// Trees on `n + 1` nodes with one excessive node marked.
pub fn excessive_marked_count(n: u32) -> BigUint {
    let mut sum = 0u64;
    for_each_tree(n + 1, |t| sum += t.statistics().exc as u64);
    BigUint::from(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;
    use alloc::collections::BTreeSet;
    use alloc::string::String;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn formulas() {
        let catalans: Vec<BigUint> = (0..8).map(catalan).collect();
        assert_eq!(catalans, [1u64, 1, 2, 5, 14, 42, 132, 429].map(big));
        assert_eq!(tutte_count(0), None);
        assert_eq!(tutte_count(2), Some(big(3)));
        let counts: Vec<BigUint> = (1..=7).map(count_trees).collect();
        assert_eq!(counts, [1u64, 1, 3, 12, 56, 288, 1584].map(big));
        assert_eq!(count_trees(11), big(2_149_888));
        assert_eq!(count_trees(12), big(13_891_584));
        let a: Vec<BigUint> = (1..=6).map(|n| a_seq(n).unwrap()).collect();
        assert_eq!(a, [1u64, 4, 20, 112, 672, 4224].map(big));
        assert_eq!(a_seq(0), None);
    }

    #[test]
    fn dyck_order_and_count() {
        let words: Vec<String> = shapes(4)
            .map(|s| s.dyck_word().iter().map(|&o| if o { '(' } else { ')' }).collect())
            .collect();
        assert_eq!(words, ["((()))", "(()())", "(())()", "()(())", "()()()"]);
        for n in 1..=9 {
            assert_eq!(shapes(n).count() as u64, if n == 1 { 1 } else { catalan(n - 1).try_into().unwrap() });
        }
        assert_eq!(shapes(0).count(), 0);
    }

    #[test]
    fn four_node_census() {
        let expected: BTreeSet<BetaTree> = [
            "(1 (0 (0 (0))))",
            "(2 (1 (0 (0))))",
            "(1 (0 (1 (0))))",
            "(2 (1 (1 (0))))",
            "(3 (2 (1 (0))))",
            "(1 (0 (0) (0)))",
            "(2 (1 (0) (0)))",
            "(1 (0 (0)) (0))",
            "(2 (1 (0)) (0))",
            "(1 (0) (0 (0)))",
            "(2 (0) (1 (0)))",
            "(1 (0) (0) (0))",
        ]
        .iter()
        .map(|s| parse_tree(s).unwrap())
        .collect();
        let got: Vec<BetaTree> = trees(4).collect();
        assert_eq!(got.len(), 12);
        assert_eq!(got.iter().cloned().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn enumeration_is_complete_and_valid() {
        for n in 1..=8 {
            let all: Vec<BetaTree> = trees(n).collect();
            assert_eq!(BigUint::from(all.len()), count_trees(n), "n = {n}");
            let distinct: BTreeSet<&BetaTree> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            for t in &all {
                assert!(crate::tree::validate_tree(t).is_empty(), "{t}");
                assert_eq!(t.len(), n as usize);
            }
        }
        assert_eq!(trees(1).collect::<Vec<_>>(), [BetaTree::trivial()]);
        assert_eq!(trees(0).count(), 0);
    }

    #[test]
    fn small_distributions() {
        let t = joint_distribution(3, (Stat::Root, Stat::Rmod));
        let entries: Vec<_> = t.iter().map(|(&k, v)| (k, v.clone())).collect();
        assert_eq!(entries, [((1, 1), big(1)), ((1, 2), big(1)), ((2, 1), big(1))]);
        assert_eq!(t, t.transposed());
        assert_eq!(*t.total(), big(3));
        let one = joint_distribution(1, (Stat::Exc, Stat::Sub));
        assert_eq!(one.iter().collect::<Vec<_>>(), [(&(0, 0), &big(1))]);
    }

    #[test]
    fn stat_names_parse() {
        for s in Stat::ALL {
            assert_eq!(s.name().parse::<Stat>(), Ok(s));
        }
        assert!("roots".parse::<Stat>().is_err());
    }

    #[test]
    fn small_fixed_points_and_marked_counts() {
        assert_eq!(fixed_points(2, true), (1, vec![BetaTree::edge()]));
        let counts: Vec<u64> = (2..=7).map(|n| fixed_points(n, false).0).collect();
        assert_eq!(counts, [1, 1, 4, 4, 20, 20]);
        let marked: Vec<BigUint> = (1..=5).map(excessive_marked_count).collect();
        assert_eq!(marked, [1u64, 4, 20, 112, 672].map(big));
    }
}
