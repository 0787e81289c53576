//! β(0,1)-trees stored in preorder.
//!
//! A tree on `n` nodes is two parallel arrays indexed by preorder position:
//! the node labels and the subtree sizes. The children of `v` are `v + 1`,
//! then repeatedly `c + size(c)` until `v + size(v)` is reached. Every node on
//! the rightmost path owns a suffix of the arrays, which is what makes the
//! grafting operations in [`crate::algebra`] cheap appends.
//!
//! Nothing in this module recurses on the tree shape, so path-like trees with
//! millions of nodes are fine.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::Deref;
use core::str::FromStr;

use crate::error::ParseError;

/// A labelled plane tree with no constraint on the labels.
///
/// This is the input type of [`validate_tree`]; a [`BetaTree`] is a
/// `LabeledTree` that passed validation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LabeledTree {
    labels: Vec<u32>,
    sizes: Vec<u32>,
}

/// Child indices from the root down to a node.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct NodePath(pub Vec<u32>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        f.write_char('(')?;
        for (k, step) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_char(',')?;
            }
            write!(f, "{step}")?;
        }
        f.write_char(')')
    }
}

/// Iterator over the preorder positions of a node's children.
pub struct Children<'a> {
    sizes: &'a [u32],
    next: usize,
    end: usize,
}

impl Iterator for Children<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.next >= self.end {
            return None;
        }
        let c = self.next;
        self.next += self.sizes[c] as usize;
        Some(c)
    }
}

impl LabeledTree {
    pub fn leaf(label: u32) -> Self {
        LabeledTree { labels: vec![label], sizes: vec![1] }
    }

    /// Builds a node from its label and children, left to right.
    pub fn node(label: u32, children: Vec<LabeledTree>) -> Self {
        let total = 1 + children.iter().map(LabeledTree::len).sum::<usize>();
        let mut labels = Vec::with_capacity(total);
        let mut sizes = Vec::with_capacity(total);
        labels.push(label);
        sizes.push(total as u32);
        for child in children {
            labels.extend_from_slice(&child.labels);
            sizes.extend_from_slice(&child.sizes);
        }
        LabeledTree { labels, sizes }
    }

    /// Builds a tree from preorder labels and child counts.
    ///
    /// Returns `None` if the degree sequence does not describe exactly one tree.
    pub fn from_preorder_degrees(labels: Vec<u32>, degrees: &[u32]) -> Option<Self> {
        let n = labels.len();
        if n == 0 || degrees.len() != n {
            return None;
        }
        let mut sizes = vec![1u32; n];
        // (node, children still to read)
        let mut open: Vec<(usize, u32)> = Vec::new();
        for (v, &degree) in degrees.iter().enumerate() {
            if v > 0 {
                let top = open.last_mut()?;
                top.1 -= 1;
            }
            open.push((v, degree));
            while let Some(&(u, 0)) = open.last() {
                open.pop();
                sizes[u] = (v + 1 - u) as u32;
            }
            if open.is_empty() && v + 1 != n {
                return None;
            }
        }
        if !open.is_empty() {
            return None;
        }
        Some(LabeledTree { labels, sizes })
    }

    pub(crate) fn from_parts(labels: Vec<u32>, sizes: Vec<u32>) -> Self {
        debug_assert_eq!(labels.len(), sizes.len());
        debug_assert_eq!(sizes.first().copied(), Some(labels.len() as u32));
        LabeledTree { labels, sizes }
    }

    /// Number of nodes.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Labels in preorder.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Subtree sizes in preorder.
    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.sizes[v] as usize
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.sizes[v] == 1
    }

    pub fn children(&self, v: usize) -> Children<'_> {
        Children { sizes: &self.sizes, next: v + 1, end: v + self.sizes[v] as usize }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children(v).count()
    }

    pub fn child_sum(&self, v: usize) -> u32 {
        self.children(v).map(|c| self.labels[c]).sum()
    }

    /// Label exceeds the children's label sum.
    pub fn is_excessive(&self, v: usize) -> bool {
        self.labels[v] > self.child_sum(v)
    }

    pub fn is_moderate(&self, v: usize) -> bool {
        !self.is_excessive(v)
    }

    pub fn last_child(&self, v: usize) -> Option<usize> {
        self.children(v).last()
    }

    /// Preorder positions from the root to the rightmost leaf.
    pub fn rightmost_path(&self) -> Vec<usize> {
        let mut path = vec![0];
        let mut v = 0;
        while let Some(c) = self.last_child(v) {
            path.push(c);
            v = c;
        }
        path
    }

    pub fn path_of(&self, v: usize) -> NodePath {
        let mut steps = Vec::new();
        let mut cur = 0;
        while cur != v {
            let (k, c) = self
                .children(cur)
                .enumerate()
                .find(|&(_, c)| c <= v && v < c + self.sizes[c] as usize)
                .expect("position inside the tree");
            steps.push(k as u32);
            cur = c;
        }
        NodePath(steps)
    }

    pub fn node_at(&self, path: &NodePath) -> Option<usize> {
        let mut cur = 0;
        for &step in &path.0 {
            cur = self.children(cur).nth(step as usize)?;
        }
        Some(cur)
    }

    /// Canonical text form, e.g. `(1 (0) (0))`.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.len() * 4);
        let mut ends: Vec<usize> = Vec::new();
        for v in 0..self.len() {
            while ends.last() == Some(&v) {
                out.push(')');
                ends.pop();
            }
            if v > 0 {
                out.push(' ');
            }
            out.push('(');
            let _ = write!(out, "{}", self.labels[v]);
            ends.push(v + self.sizes[v] as usize);
        }
        for _ in ends {
            out.push(')');
        }
        out
    }

    /// Decodes `tree := "(" label { " " tree } ")"`. Whitespace between tokens
    /// is free; labels are validated later.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let bytes = text.as_bytes();
        let syntax = |position: usize, message: &str| ParseError::Syntax {
            position,
            message: String::from(message),
        };
        let skip_ws = |mut i: usize| {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            i
        };

        let mut labels = Vec::new();
        let mut sizes: Vec<u32> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut i = skip_ws(0);
        if bytes.get(i) != Some(&b'(') {
            return Err(syntax(i, "expected '('"));
        }
        i += 1;
        loop {
            // A node was just opened: read its label.
            i = skip_ws(i);
            let start = i;
            let mut label: u32 = 0;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                label = label
                    .checked_mul(10)
                    .and_then(|l| l.checked_add(u32::from(bytes[i] - b'0')))
                    .ok_or_else(|| syntax(start, "label too large"))?;
                i += 1;
            }
            if i == start {
                return Err(syntax(i, "expected a nonnegative integer label"));
            }
            stack.push(labels.len());
            labels.push(label);
            sizes.push(0);
            loop {
                i = skip_ws(i);
                match bytes.get(i) {
                    Some(b'(') => {
                        i += 1;
                        break;
                    }
                    Some(b')') => {
                        i += 1;
                        let v = stack.pop().expect("open node");
                        sizes[v] = (labels.len() - v) as u32;
                        if stack.is_empty() {
                            let rest = skip_ws(i);
                            if rest != bytes.len() {
                                return Err(syntax(rest, "trailing input after the tree"));
                            }
                            return Ok(LabeledTree { labels, sizes });
                        }
                    }
                    Some(_) => return Err(syntax(i, "expected '(' or ')'")),
                    None => return Err(syntax(i, "unexpected end of input")),
                }
            }
        }
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Which β(0,1) rule a node breaks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Rule {
    /// Leaves must be labelled 0.
    LeafNotZero { label: u32 },
    /// The root of a nontrivial tree is one more than its children's sum.
    RootSum { expected: u32, found: u32 },
    /// A non-root node exceeds its children's sum by more than one.
    ExceedsChildren { label: u32, child_sum: u32 },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Violation {
    pub path: NodePath,
    pub rule: Rule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule {
            Rule::LeafNotZero { label } => {
                write!(f, "leaf at {} has label {label}, leaves must be 0", self.path)
            }
            Rule::RootSum { expected, found } => {
                write!(f, "root label is {found} but must be 1 + children's sum = {expected}")
            }
            Rule::ExceedsChildren { label, child_sum } => write!(
                f,
                "node at {} has label {label}, more than 1 + children's sum {child_sum}",
                self.path
            ),
        }
    }
}

/// Checks the three β(0,1) rules; the result is empty iff the tree is valid.
pub fn validate_tree(tree: &LabeledTree) -> Vec<Violation> {
    let mut violations = Vec::new();
    let n = tree.len();
    for v in 0..n {
        let label = tree.labels[v];
        let rule = if tree.is_leaf(v) {
            (label != 0).then_some(Rule::LeafNotZero { label })
        } else {
            let child_sum = tree.child_sum(v);
            if v == 0 {
                (label != child_sum + 1)
                    .then_some(Rule::RootSum { expected: child_sum + 1, found: label })
            } else {
                (label > child_sum + 1).then_some(Rule::ExceedsChildren { label, child_sum })
            }
        };
        if let Some(rule) = rule {
            violations.push(Violation { path: tree.path_of(v), rule });
        }
    }
    violations
}

/// A valid β(0,1)-tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BetaTree(LabeledTree);

impl Deref for BetaTree {
    type Target = LabeledTree;

    fn deref(&self) -> &LabeledTree {
        &self.0
    }
}

impl TryFrom<LabeledTree> for BetaTree {
    type Error = Vec<Violation>;

    fn try_from(tree: LabeledTree) -> Result<Self, Self::Error> {
        let violations = validate_tree(&tree);
        if violations.is_empty() {
            Ok(BetaTree(tree))
        } else {
            Err(violations)
        }
    }
}

impl From<BetaTree> for LabeledTree {
    fn from(tree: BetaTree) -> LabeledTree {
        tree.0
    }
}

impl BetaTree {
    /// The single-node tree ε.
    pub fn trivial() -> Self {
        BetaTree(LabeledTree::leaf(0))
    }

    /// `(1 (0))`, the only tree on two nodes.
    pub fn edge() -> Self {
        BetaTree(LabeledTree { labels: vec![1, 0], sizes: vec![2, 1] })
    }

    /// Callers guarantee validity; checked in debug builds only when cheap enough.
    pub(crate) fn from_parts_unchecked(labels: Vec<u32>, sizes: Vec<u32>) -> Self {
        BetaTree(LabeledTree::from_parts(labels, sizes))
    }

    /// In-place relabelling for generators that maintain validity themselves.
    pub(crate) fn set_label(&mut self, v: usize, label: u32) {
        self.0.labels[v] = label;
    }

    pub fn into_labeled(self) -> LabeledTree {
        self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    /// `root(T)`: the root label.
    pub fn root(&self) -> u32 {
        self.0.labels[0]
    }

    /// `sub(T)`: number of children of the root.
    pub fn sub(&self) -> u32 {
        self.0.degree(0) as u32
    }

    /// Preorder positions of the open nodes, root first.
    ///
    /// A node on the rightmost path is open if its rightmost child is a
    /// non-leaf moderate node; the rightmost leaf is always open. Empty for ε.
    pub fn open_positions(&self) -> Vec<usize> {
        if self.is_trivial() {
            return Vec::new();
        }
        let path = self.rightmost_path();
        let mut open = Vec::new();
        for (k, &v) in path.iter().enumerate() {
            match path.get(k + 1) {
                None => open.push(v),
                Some(&c) if !self.is_leaf(c) && self.is_moderate(c) => open.push(v),
                Some(_) => {}
            }
        }
        open
    }

    /// `open(T)`.
    pub fn open(&self) -> u32 {
        self.open_positions().len() as u32
    }

    /// Open nodes ordered from the root down; the last one is the rightmost leaf.
    pub fn open_nodes(&self) -> Result<Vec<NodePath>, crate::AlgebraError> {
        if self.is_trivial() {
            return Err(crate::AlgebraError::TrivialArgument { op: "open_nodes" });
        }
        Ok(self.open_positions().into_iter().map(|v| self.path_of(v)).collect())
    }

    pub fn statistics(&self) -> StatVector {
        let nodes = self.len() as u32;
        if self.is_trivial() {
            return StatVector { nodes, ..StatVector::default() };
        }
        let path = self.rightmost_path();
        let rzero = path.iter().filter(|&&v| self.label(v) == 0).count() as u32;
        let rmod = path.iter().filter(|&&v| self.is_moderate(v)).count() as u32;
        let exc = (0..self.len()).filter(|&v| self.is_excessive(v)).count() as u32;
        StatVector {
            root: self.root(),
            sub: self.sub(),
            rzero,
            rmod,
            open: self.open(),
            exc,
            nodes,
            edges: nodes - 1,
        }
    }
}

impl fmt::Display for BetaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render())
    }
}

impl FromStr for BetaTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

/// Decodes and validates a tree in the canonical text form.
pub fn parse_tree(text: &str) -> Result<BetaTree, ParseError> {
    let raw = LabeledTree::parse(text)?;
    BetaTree::try_from(raw).map_err(ParseError::Invalid)
}

pub fn render_tree(tree: &BetaTree) -> String {
    tree.render()
}

/// The eight tree statistics. For ε every statistic is 0 except `nodes = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct StatVector {
    pub root: u32,
    pub sub: u32,
    pub rzero: u32,
    pub rmod: u32,
    pub open: u32,
    pub exc: u32,
    pub nodes: u32,
    pub edges: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "(4 (0) (0) (1 (0)) (2 (1 (3 (2 (1 (0))) (0)))))";

    fn t(s: &str) -> BetaTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn parse_and_render_fixtures() {
        assert!(t("(0)").is_trivial());
        assert_eq!(t(EXAMPLE).render(), EXAMPLE);
        assert_eq!(t(EXAMPLE).len(), 12);
        assert_eq!(BetaTree::edge().render(), "(1 (0))");
        assert_eq!(BetaTree::trivial().render(), "(0)");
        // whitespace is normalised
        assert_eq!(t("  ( 1(0 )   (0))").render(), "(1 (0) (0))");
    }

    #[test]
    fn root_rule_is_enforced() {
        let err = parse_tree("(2 (0))").unwrap_err();
        let ParseError::Invalid(v) = err else { panic!("expected validation error") };
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::RootSum { expected: 1, found: 2 });
        assert_eq!(v[0].path, NodePath::default());
    }

    #[test]
    fn leaf_rule_is_enforced() {
        let ParseError::Invalid(v) = parse_tree("(1 (1))").unwrap_err() else { panic!() };
        assert!(v.iter().any(|v| v.rule == Rule::LeafNotZero { label: 1 }
            && v.path == NodePath(vec![0])));

        let raw = LabeledTree::parse("(2 (1) (0))").unwrap();
        let v = validate_tree(&raw);
        assert_eq!(v, vec![Violation { path: NodePath(vec![0]), rule: Rule::LeafNotZero { label: 1 } }]);
    }

    #[test]
    fn inner_rule_is_enforced() {
        let raw = LabeledTree::parse("(4 (3 (1 (0))))").unwrap();
        let v = validate_tree(&raw);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::ExceedsChildren { label: 3, child_sum: 1 });
        assert_eq!(v[0].path, NodePath(vec![0]));
    }

    #[test]
    fn valid_small_trees() {
        assert!(validate_tree(&LabeledTree::parse("(1 (0) (0))").unwrap()).is_empty());
        assert!(validate_tree(&LabeledTree::parse("(3 (2 (0) (1 (0))))").unwrap()).is_empty());
        assert!(validate_tree(&LabeledTree::leaf(0)).is_empty());
        assert!(!validate_tree(&LabeledTree::leaf(1)).is_empty());
    }

    #[test]
    fn syntax_errors_report_positions() {
        let cases = [("", 0), ("(", 1), ("(1 (0)", 6), ("(1 x)", 3), ("(1 (0)) (0)", 8), ("()", 1)];
        for (text, pos) in cases {
            match LabeledTree::parse(text) {
                Err(ParseError::Syntax { position, .. }) => assert_eq!(position, pos, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(LabeledTree::parse("(99999999999)"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn example_statistics() {
        let s = t(EXAMPLE).statistics();
        assert_eq!((s.root, s.sub, s.rzero, s.rmod, s.open), (4, 4, 1, 2, 2));
        assert_eq!(s.exc, 6);
        assert_eq!((s.nodes, s.edges), (12, 11));
    }

    #[test]
    fn edge_and_trivial_statistics() {
        let s = BetaTree::edge().statistics();
        assert_eq!((s.root, s.sub, s.rzero, s.rmod, s.open, s.exc), (1, 1, 1, 1, 1, 1));
        let e = BetaTree::trivial().statistics();
        assert_eq!(e, StatVector { nodes: 1, ..StatVector::default() });
    }

    #[test]
    fn open_node_order_is_root_first() {
        let edge = BetaTree::edge();
        assert_eq!(edge.open_nodes().unwrap(), vec![NodePath(vec![0])]);

        let example = t(EXAMPLE);
        let open = example.open_nodes().unwrap();
        assert_eq!(open, vec![NodePath(vec![3]), NodePath(vec![3, 0, 0, 1])]);
        assert_eq!(example.label(example.node_at(&open[0]).unwrap()), 2);

        let tree = t("(3 (2 (1 (0)) (1 (0 (0)))))");
        assert_eq!(
            tree.open_nodes().unwrap(),
            vec![NodePath(vec![]), NodePath(vec![0, 1]), NodePath(vec![0, 1, 0, 0])]
        );
        assert!(BetaTree::trivial().open_nodes().is_err());
    }

    #[test]
    fn degrees_constructor_round_trips() {
        let tree = t(EXAMPLE);
        let degrees: Vec<u32> = (0..tree.len()).map(|v| tree.degree(v) as u32).collect();
        let rebuilt = LabeledTree::from_preorder_degrees(tree.labels().to_vec(), &degrees).unwrap();
        assert_eq!(&rebuilt, &*tree);
        assert!(LabeledTree::from_preorder_degrees(vec![0, 0], &[0, 0]).is_none());
        assert!(LabeledTree::from_preorder_degrees(vec![1], &[1]).is_none());
    }

    #[test]
    fn node_paths_round_trip() {
        let tree = t(EXAMPLE);
        for v in 0..tree.len() {
            assert_eq!(tree.node_at(&tree.path_of(v)), Some(v));
        }
        assert_eq!(tree.node_at(&NodePath(vec![7])), None);
    }

    #[test]
    fn deep_path_tree_is_handled_iteratively() {
        let n = 200_000;
        let mut text = String::new();
        text.push_str("(1");
        for _ in 1..n - 1 {
            text.push_str(" (0");
        }
        text.push_str(" (0");
        for _ in 0..n {
            text.push(')');
        }
        let tree = parse_tree(&text).unwrap();
        assert_eq!(tree.len(), n);
        let s = tree.statistics();
        assert_eq!(s.rzero, (n - 1) as u32);
        assert_eq!(tree.render(), text);
    }
}
