#![allow(dead_code)]

use beta_trees::{BetaTree, LabeledTree};
use proptest::prelude::*;

/// A valid tree from a parent choice per node and a label choice per node.
///
/// Node `v > 0` hangs below `parent[v] % v`; each internal non-root node takes
/// `choice[v] % (child_sum + 2)`.
pub fn build(parent: &[u32], choice: &[u32]) -> BetaTree {
    let n = parent.len() + 1;
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 1..n {
        children[parent[v - 1] as usize % v].push(v);
    }
    let mut label = vec![0u32; n];
    for v in (0..n).rev() {
        if children[v].is_empty() {
            continue;
        }
        let sum: u32 = children[v].iter().map(|&c| label[c]).sum();
        label[v] = if v == 0 { sum + 1 } else { choice[v % choice.len()] % (sum + 2) };
    }
    let mut labels = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        labels.push(label[v]);
        degrees.push(children[v].len() as u32);
        stack.extend(children[v].iter().rev());
    }
    let raw = LabeledTree::from_preorder_degrees(labels, &degrees).expect("well formed");
    BetaTree::try_from(raw).expect("labels chosen within the rules")
}

pub fn tree_strategy(max_nodes: usize) -> impl Strategy<Value = BetaTree> {
    (0..max_nodes).prop_flat_map(|edges| {
        (prop::collection::vec(any::<u32>(), edges), prop::collection::vec(any::<u32>(), 1..8))
            .prop_map(|(parent, choice)| build(&parent, &choice))
    })
}

pub fn nontrivial(max_nodes: usize) -> impl Strategy<Value = BetaTree> {
    tree_strategy(max_nodes).prop_filter("nontrivial", |t| !t.is_trivial())
}

pub const EXAMPLE: &str = "(4 (0) (0) (1 (0)) (2 (1 (3 (2 (1 (0))) (0)))))";
