//! Bicolored parse trees and the involution `g`.
//!
//! Every tree has a unique `(ρ, μ)` expression and a unique `(σ, ν)`
//! expression. Both are recorded as the same kind of object: a plane tree whose
//! black nodes are `ρ`/`σ` applications and whose white nodes, labelled `i`,
//! are `μᵢ`/`νᵢ` applications. `g` reads the `(ρ, μ)` parse tree of `T` under
//! the `(σ, ν)` semantics.
//!
//! Expressions are stored in a flat preorder arena so that parsing, evaluation
//! and rendering all run without recursion.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{self, RhoMuStep, SigmaNuStep};
use crate::error::{AlgebraError, ParseError};
use crate::tree::BetaTree;

/// Which pair of operators the nodes of a [`DecompExpr`] stand for.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Semantics {
    /// Black = `ρ`, white `i` = `μᵢ`.
    RhoMu,
    /// Black = `σ`, white `i` = `νᵢ`.
    SigmaNu,
}

impl Semantics {
    pub fn dual(self) -> Semantics {
        match self {
            Semantics::RhoMu => Semantics::SigmaNu,
            Semantics::SigmaNu => Semantics::RhoMu,
        }
    }
}

pub type ExprId = usize;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExprNode {
    /// A `ρ`/`σ` application; no children encodes ε.
    Black(Vec<ExprId>),
    /// A `μᵢ`/`νᵢ` application with arguments `(left, right)`.
    White { i: u32, left: ExprId, right: ExprId },
}

/// A bicolored parse tree.
///
/// Nodes are laid out in preorder with the root at id 0, so every child id is
/// larger than its parent's and two expressions are equal exactly when their
/// arenas are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DecompExpr {
    nodes: Vec<ExprNode>,
}

impl DecompExpr {
    /// The single black leaf, standing for ε.
    pub fn eps() -> DecompExpr {
        DecompExpr { nodes: vec![ExprNode::Black(Vec::new())] }
    }

    pub fn black(children: Vec<DecompExpr>) -> DecompExpr {
        let total = 1 + children.iter().map(|c| c.nodes.len()).sum::<usize>();
        let mut nodes = Vec::with_capacity(total);
        nodes.push(ExprNode::Black(Vec::new()));
        let mut ids = Vec::with_capacity(children.len());
        for child in children {
            ids.push(nodes.len());
            append_shifted(&mut nodes, child);
        }
        nodes[0] = ExprNode::Black(ids);
        DecompExpr { nodes }
    }

    pub fn white(i: u32, left: DecompExpr, right: DecompExpr) -> DecompExpr {
        let mut nodes = Vec::with_capacity(1 + left.nodes.len() + right.nodes.len());
        let right_id = 1 + left.nodes.len();
        nodes.push(ExprNode::White { i, left: 1, right: right_id });
        append_shifted(&mut nodes, left);
        append_shifted(&mut nodes, right);
        DecompExpr { nodes }
    }

    pub fn nodes(&self) -> &[ExprNode] {
        &self.nodes
    }

    pub fn node(&self, id: ExprId) -> &ExprNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `κ` of every node, indexed by id.
    fn kappas(&self) -> Vec<u32> {
        let mut k = vec![0u32; self.nodes.len()];
        for id in (0..self.nodes.len()).rev() {
            k[id] = match &self.nodes[id] {
                ExprNode::Black(ch) => ch.last().map_or(0, |&c| 1 + k[c]),
                ExprNode::White { i, left, .. } => i - 1 + k[*left],
            };
        }
        k
    }

    /// `κ`: 0 on a leaf, `1 + κ(last child)` on a black node and
    /// `i - 1 + κ(left)` on a white node labelled `i`.
    ///
    /// Call on member expressions only: white labels must be at least 1.
    pub fn kappa(&self) -> u32 {
        self.kappas()[0]
    }

    /// Black nodes minus white nodes; equals the size of the encoded tree.
    pub fn weight(&self) -> i64 {
        self.nodes
            .iter()
            .map(|n| match n {
                ExprNode::Black(_) => 1,
                ExprNode::White { .. } => -1,
            })
            .sum()
    }

    /// Checks membership: every white node `(i, L, R)` has `1 ≤ i ≤ κ(R)`,
    /// and `L` is a nonempty black node (the first argument of `μᵢ` has
    /// root 1 and that of `νᵢ` one open node, so it is a `ρ`/`σ` image).
    pub fn validate(&self) -> Result<(), AlgebraError> {
        for (id, node) in self.nodes.iter().enumerate() {
            if let ExprNode::White { i, left, .. } = node {
                if *i == 0 {
                    return Err(AlgebraError::Membership { node: id, message: "white label must be at least 1".into() });
                }
                match &self.nodes[*left] {
                    ExprNode::Black(ch) if !ch.is_empty() => {}
                    _ => {
                        return Err(AlgebraError::Membership {
                            node: id,
                            message: "left argument must be a nonempty black node".into(),
                        })
                    }
                }
            }
        }
        let k = self.kappas();
        for (id, node) in self.nodes.iter().enumerate() {
            if let ExprNode::White { i, right, .. } = node {
                if *i > k[*right] {
                    return Err(AlgebraError::Membership {
                        node: id,
                        message: format!("label {i} exceeds kappa of right argument ({})", k[*right]),
                    });
                }
            }
        }
        Ok(())
    }

    /// Renders the expression literal, e.g. `mu(2, rho[eps], rho[eps, eps])`.
    pub fn to_literal(&self, semantics: Semantics) -> String {
        let (black, white) = match semantics {
            Semantics::RhoMu => ("rho", "mu"),
            Semantics::SigmaNu => ("sigma", "nu"),
        };
        enum Item<'a> {
            Node(ExprId),
            Text(&'a str),
        }
        let mut out = String::new();
        let mut stack = vec![Item::Node(0)];
        while let Some(item) = stack.pop() {
            match item {
                Item::Text(s) => out.push_str(s),
                Item::Node(id) => match &self.nodes[id] {
                    ExprNode::Black(ch) if ch.is_empty() => out.push_str("eps"),
                    ExprNode::Black(ch) => {
                        out.push_str(black);
                        out.push('[');
                        stack.push(Item::Text("]"));
                        for (k, &c) in ch.iter().enumerate().rev() {
                            stack.push(Item::Node(c));
                            if k > 0 {
                                stack.push(Item::Text(", "));
                            }
                        }
                    }
                    ExprNode::White { i, left, right } => {
                        out.push_str(white);
                        out.push_str(&format!("({i}, "));
                        stack.push(Item::Text(")"));
                        stack.push(Item::Node(*right));
                        stack.push(Item::Text(", "));
                        stack.push(Item::Node(*left));
                    }
                },
            }
        }
        out
    }
}

fn append_shifted(nodes: &mut Vec<ExprNode>, other: DecompExpr) {
    let shift = nodes.len();
    nodes.extend(other.nodes.into_iter().map(|n| match n {
        ExprNode::Black(ch) => ExprNode::Black(ch.into_iter().map(|c| c + shift).collect()),
        ExprNode::White { i, left, right } => ExprNode::White { i, left: left + shift, right: right + shift },
    }));
}

/// Decomposes `t` completely under the given semantics.
pub fn parse_expr(t: &BetaTree, semantics: Semantics) -> DecompExpr {
    // Work items: (tree, parent slot to patch). Popping in LIFO order with
    // children pushed in reverse yields preorder ids.
    let mut nodes: Vec<ExprNode> = Vec::with_capacity(t.len());
    let mut work: Vec<(BetaTree, Option<(ExprId, usize)>)> = vec![(t.clone(), None)];
    while let Some((tree, slot)) = work.pop() {
        let id = nodes.len();
        if let Some((parent, k)) = slot {
            match &mut nodes[parent] {
                ExprNode::Black(ch) => ch[k] = id,
                ExprNode::White { left, right, .. } => {
                    if k == 0 {
                        *left = id
                    } else {
                        *right = id
                    }
                }
            }
        }
        if tree.is_trivial() {
            nodes.push(ExprNode::Black(Vec::new()));
            continue;
        }
        let (parts, white) = match semantics {
            Semantics::RhoMu => match algebra::decompose_rho_mu(&tree).expect("nontrivial") {
                RhoMuStep::Rho(parts) => (parts, None),
                RhoMuStep::Mu { i, s, t } => (vec![s, t], Some(i)),
            },
            Semantics::SigmaNu => match algebra::decompose_sigma_nu(&tree).expect("nontrivial") {
                SigmaNuStep::Sigma(parts) => (parts, None),
                SigmaNuStep::Nu { i, s, t } => (vec![s, t], Some(i)),
            },
        };
        nodes.push(match white {
            Some(i) => ExprNode::White { i, left: 0, right: 0 },
            None => ExprNode::Black(vec![0; parts.len()]),
        });
        for (k, part) in parts.into_iter().enumerate().rev() {
            work.push((part, Some((id, k))));
        }
    }
    DecompExpr { nodes }
}

/// Evaluates a member expression; fails with the first membership
/// violation otherwise.
pub fn eval_expr(e: &DecompExpr, semantics: Semantics) -> Result<BetaTree, AlgebraError> {
    e.validate()?;
    let mut values: Vec<Option<BetaTree>> = vec![None; e.nodes.len()];
    for id in (0..e.nodes.len()).rev() {
        let value = match &e.nodes[id] {
            ExprNode::Black(ch) if ch.is_empty() => BetaTree::trivial(),
            ExprNode::Black(ch) => {
                let parts: Vec<BetaTree> = ch.iter().map(|&c| values[c].take().expect("child evaluated")).collect();
                match semantics {
                    Semantics::RhoMu => algebra::rho(&parts)?,
                    Semantics::SigmaNu => algebra::sigma(&parts)?,
                }
            }
            ExprNode::White { i, left, right } => {
                let s = values[*left].take().expect("child evaluated");
                let t = values[*right].take().expect("child evaluated");
                match semantics {
                    Semantics::RhoMu => algebra::mu(*i, &s, &t)?,
                    Semantics::SigmaNu => algebra::nu(*i, &s, &t)?,
                }
            }
        };
        values[id] = Some(value);
    }
    Ok(values[0].take().expect("root evaluated"))
}

/// The involution: the `(ρ, μ)` parse tree of `t` read with `(σ, ν)`.
pub fn g(t: &BetaTree) -> BetaTree {
    eval_expr(&parse_expr(t, Semantics::RhoMu), Semantics::SigmaNu)
        .expect("parse trees are members and both semantics accept them")
}

/// `g` by its recursive definition: `g(ε) = ε`,
/// `g(ρ(T₁,…,T_k)) = σ(g(T₁),…,g(T_k))`, `g(μᵢ(S,T)) = νᵢ(g(S), g(T))`.
///
/// Recursion depth equals the nesting depth of the expression, so this is
/// meant as a cross-check on moderately sized trees; [`g`] has no such limit.
pub fn g_by_definition(t: &BetaTree) -> BetaTree {
    if t.is_trivial() {
        return BetaTree::trivial();
    }
    match algebra::decompose_rho_mu(t).expect("nontrivial") {
        RhoMuStep::Rho(parts) => {
            let images: Vec<BetaTree> = parts.iter().map(g_by_definition).collect();
            algebra::sigma(&images).expect("nonempty")
        }
        RhoMuStep::Mu { i, s, t } => algebra::nu(i, &g_by_definition(&s), &g_by_definition(&t))
            .expect("open(g(S)) = root(S) = 1 and i ≤ open(T) = root(g(T))"),
    }
}

/// Maximum nesting accepted by [`parse_literal`].
pub const MAX_LITERAL_DEPTH: usize = 512;

/// Parses an expression literal such as
/// `mu(2, rho[eps], mu(1, rho[rho[eps]], rho[eps]))`.
///
/// The operator names fix the semantics; mixing the two pairs is an error.
/// A bare `eps` has no semantics and yields `None`.
pub fn parse_literal(text: &str) -> Result<(DecompExpr, Option<Semantics>), ParseError> {
    let mut p = LiteralParser { text: text.as_bytes(), pos: 0, semantics: None };
    let e = p.expr(0)?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.error("trailing input after the expression"));
    }
    Ok((e, p.semantics))
}

struct LiteralParser<'a> {
    text: &'a [u8],
    pos: usize,
    semantics: Option<Semantics>,
}

impl LiteralParser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.text.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        core::str::from_utf8(&self.text[start..self.pos]).unwrap_or("")
    }

    fn set_semantics(&mut self, s: Semantics, at: usize) -> Result<(), ParseError> {
        match self.semantics {
            Some(prev) if prev != s => Err(ParseError::Syntax {
                position: at,
                message: "expression mixes rho/mu with sigma/nu".into(),
            }),
            _ => {
                self.semantics = Some(s);
                Ok(())
            }
        }
    }

    fn expr(&mut self, depth: usize) -> Result<DecompExpr, ParseError> {
        if depth > MAX_LITERAL_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        self.skip_ws();
        let at = self.pos;
        let word = self.word();
        match word {
            "eps" => Ok(DecompExpr::eps()),
            "rho" | "sigma" => {
                let s = if word == "rho" { Semantics::RhoMu } else { Semantics::SigmaNu };
                self.set_semantics(s, at)?;
                self.expect(b'[')?;
                let mut children = vec![self.expr(depth + 1)?];
                loop {
                    self.skip_ws();
                    match self.text.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.expr(depth + 1)?);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ']'")),
                    }
                }
                Ok(DecompExpr::black(children))
            }
            "mu" | "nu" => {
                let s = if word == "mu" { Semantics::RhoMu } else { Semantics::SigmaNu };
                self.set_semantics(s, at)?;
                self.expect(b'(')?;
                let i = self.index()?;
                self.expect(b',')?;
                let left = self.expr(depth + 1)?;
                self.expect(b',')?;
                let right = self.expr(depth + 1)?;
                self.expect(b')')?;
                Ok(DecompExpr::white(i, left, right))
            }
            _ => Err(ParseError::Syntax {
                position: at,
                message: "expected eps, rho, sigma, mu or nu".into(),
            }),
        }
    }

    fn index(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = core::str::from_utf8(&self.text[start..self.pos]).unwrap_or("");
        digits.parse().map_err(|_| ParseError::Syntax { position: start, message: "expected an index".into() })
    }
}

impl fmt::Display for DecompExpr {
    /// Neutral rendering: `B[...]` for black nodes, `W_i(..., ...)` for white.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .to_literal(Semantics::RhoMu)
            .replace("rho", "B")
            .replace("mu(", "W(");
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    const EXAMPLE: &str = "(4 (0) (0) (1 (0)) (2 (1 (3 (2 (1 (0))) (0)))))";
    const EXAMPLE_RHO_MU: &str =
        "mu(2, rho[eps], mu(1, rho[mu(2, rho[eps], mu(1, rho[rho[eps]], rho[eps]))], mu(1, rho[eps], rho[eps, eps, rho[eps]])))";
    const EXAMPLE_SIGMA_NU: &str =
        "nu(2, sigma[sigma[nu(1, sigma[eps, eps, eps], sigma[eps])]], sigma[nu(2, sigma[sigma[eps]], sigma[sigma[eps]])])";
    const G_EXAMPLE: &str = "(2 (1 (2 (1 (0 (0)))) (0 (0 (1 (0) (0) (0))))))";

    fn t(s: &str) -> BetaTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn golden_expressions_evaluate_to_the_example() {
        let (e, sem) = parse_literal(EXAMPLE_RHO_MU).unwrap();
        assert_eq!(sem, Some(Semantics::RhoMu));
        assert_eq!(eval_expr(&e, Semantics::RhoMu).unwrap(), t(EXAMPLE));
        assert_eq!(parse_expr(&t(EXAMPLE), Semantics::RhoMu), e);

        let (e, sem) = parse_literal(EXAMPLE_SIGMA_NU).unwrap();
        assert_eq!(sem, Some(Semantics::SigmaNu));
        assert_eq!(eval_expr(&e, Semantics::SigmaNu).unwrap(), t(EXAMPLE));
        assert_eq!(parse_expr(&t(EXAMPLE), Semantics::SigmaNu), e);
    }

    #[test]
    fn g_examples() {
        assert_eq!(g(&BetaTree::trivial()), BetaTree::trivial());
        assert_eq!(g(&t("(1 (0 (0)))")), t("(2 (1 (0)))"));
        assert_eq!(g(&t("(2 (1 (0)))")), t("(1 (0 (0)))"));
        assert_eq!(g(&t(EXAMPLE)), t(G_EXAMPLE));
        assert_eq!(g_by_definition(&t(EXAMPLE)), t(G_EXAMPLE));
        let sn = parse_expr(&t(EXAMPLE), Semantics::SigmaNu);
        assert_eq!(eval_expr(&sn, Semantics::RhoMu).unwrap(), t(G_EXAMPLE));
    }

    #[test]
    fn kappa_and_weight() {
        assert_eq!(DecompExpr::eps().kappa(), 0);
        assert_eq!(DecompExpr::eps().weight(), 1);
        let edge = parse_expr(&BetaTree::edge(), Semantics::RhoMu);
        assert_eq!(edge, DecompExpr::black(vec![DecompExpr::eps()]));
        assert_eq!(edge.weight(), 2);
        let sn = parse_expr(&t(EXAMPLE), Semantics::SigmaNu);
        assert_eq!(sn.kappa(), 4);
        assert_eq!(sn.weight(), 12);
        assert_eq!(parse_expr(&t(EXAMPLE), Semantics::RhoMu).kappa(), 2);
    }

    #[test]
    fn literal_round_trip() {
        let (e, _) = parse_literal(EXAMPLE_RHO_MU).unwrap();
        assert_eq!(e.to_literal(Semantics::RhoMu), EXAMPLE_RHO_MU);
        let (e, _) = parse_literal(EXAMPLE_SIGMA_NU).unwrap();
        assert_eq!(e.to_literal(Semantics::SigmaNu), EXAMPLE_SIGMA_NU);
        assert_eq!(parse_literal(" eps ").unwrap(), (DecompExpr::eps(), None));
    }

    #[test]
    fn literal_errors() {
        assert!(matches!(parse_literal("rho[eps"), Err(ParseError::Syntax { position: 7, .. })));
        assert!(matches!(parse_literal("mu(1, sigma[eps], rho[eps])"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_literal("foo"), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(parse_literal("rho[]"), Err(ParseError::Syntax { .. })));
        let deep = "rho[".repeat(2000) + "eps" + &"]".repeat(2000);
        assert!(parse_literal(&deep).is_err());
    }

    #[test]
    fn membership_is_checked() {
        let (e, _) = parse_literal("mu(2, rho[eps], rho[eps])").unwrap();
        assert!(matches!(eval_expr(&e, Semantics::RhoMu), Err(AlgebraError::Membership { node: 0, .. })));
        let (e, _) = parse_literal("mu(1, eps, rho[eps])").unwrap();
        assert!(matches!(eval_expr(&e, Semantics::RhoMu), Err(AlgebraError::Membership { node: 0, .. })));
        let (e, _) = parse_literal("mu(1, rho[eps], rho[eps])").unwrap();
        assert_eq!(eval_expr(&e, Semantics::RhoMu).unwrap(), t("(2 (1 (0)))"));
    }

    #[test]
    fn deep_path_tree() {
        let n = 3000;
        let mut text = String::from("(1");
        for _ in 0..n - 2 {
            text.push_str(" (0");
        }
        text.push_str(" (0)");
        for _ in 0..n - 1 {
            text.push(')');
        }
        let path = t(&text);
        let image = g(&path);
        assert_eq!(image.len(), n);
        assert_eq!(g(&image), path);
    }
}
