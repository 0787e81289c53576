//! JSON shapes for trees, expressions, maps, statistics, series and reports.
//!
//! Nested values are converted without recursion. Decoding is bounded by
//! `serde_json`'s nesting limit, so use the parenthesised text form for very
//! deep trees.

use beta_trees::bicubic::MapStats;
use beta_trees::involution::{DecompExpr, ExprNode};
use beta_trees::series::Series3;
use beta_trees::verify::{Check, VerifyReport};
use beta_trees::{BetaTree, BicubicMap, JointDistTable, LabeledTree, ParseError, Stat, StatVector};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub label: u32,
    #[serde(default)]
    pub children: Vec<TreeJson>,
}

impl From<&BetaTree> for TreeJson {
    fn from(t: &BetaTree) -> TreeJson {
        // Reverse preorder leaves a node's children on the stack first-child on top.
        let mut built: Vec<TreeJson> = Vec::new();
        for v in (0..t.len()).rev() {
            let degree = t.degree(v);
            let mut children = Vec::with_capacity(degree);
            for _ in 0..degree {
                children.push(built.pop().expect("children built before parent"));
            }
            built.push(TreeJson { label: t.label(v), children });
        }
        built.pop().expect("nonempty tree")
    }
}

impl TreeJson {
    pub fn to_labeled(&self) -> LabeledTree {
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            labels.push(node.label);
            degrees.push(node.children.len() as u32);
            stack.extend(node.children.iter().rev());
        }
        LabeledTree::from_preorder_degrees(labels, &degrees).expect("degrees come from a tree")
    }

    pub fn to_tree(&self) -> Result<BetaTree, ParseError> {
        BetaTree::try_from(self.to_labeled()).map_err(ParseError::Invalid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExprJson {
    Black {
        #[serde(default)]
        children: Vec<ExprJson>,
    },
    White {
        i: u32,
        left: Box<ExprJson>,
        right: Box<ExprJson>,
    },
}

impl From<&DecompExpr> for ExprJson {
    fn from(e: &DecompExpr) -> ExprJson {
        // Child ids exceed parent ids, so a descending sweep sees children first.
        let mut done: Vec<Option<ExprJson>> = vec![None; e.len()];
        for id in (0..e.len()).rev() {
            let value = match e.node(id) {
                ExprNode::Black(ch) => ExprJson::Black {
                    children: ch.iter().map(|&c| done[c].take().expect("child built")).collect(),
                },
                ExprNode::White { i, left, right } => ExprJson::White {
                    i: *i,
                    left: Box::new(done[*left].take().expect("left built")),
                    right: Box::new(done[*right].take().expect("right built")),
                },
            };
            done[id] = Some(value);
        }
        done[0].take().expect("root built")
    }
}

impl ExprJson {
    pub fn to_expr(&self) -> DecompExpr {
        enum Task<'a> {
            Enter(&'a ExprJson),
            Exit(&'a ExprJson),
        }
        let mut tasks = vec![Task::Enter(self)];
        let mut values: Vec<DecompExpr> = Vec::new();
        while let Some(task) = tasks.pop() {
            match task {
                Task::Enter(node) => {
                    tasks.push(Task::Exit(node));
                    match node {
                        ExprJson::Black { children } => tasks.extend(children.iter().rev().map(Task::Enter)),
                        ExprJson::White { left, right, .. } => {
                            tasks.push(Task::Enter(right));
                            tasks.push(Task::Enter(left));
                        }
                    }
                }
                Task::Exit(ExprJson::Black { children }) => {
                    let parts = values.split_off(values.len() - children.len());
                    values.push(DecompExpr::black(parts));
                }
                Task::Exit(ExprJson::White { i, .. }) => {
                    let right = values.pop().expect("right operand");
                    let left = values.pop().expect("left operand");
                    values.push(DecompExpr::white(*i, left, right));
                }
            }
        }
        values.pop().expect("one result")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub alpha: Vec<u32>,
    pub rot: Vec<u32>,
    pub root: u32,
}

impl From<&BicubicMap> for MapJson {
    fn from(m: &BicubicMap) -> MapJson {
        MapJson { alpha: m.alpha().to_vec(), rot: m.rot().to_vec(), root: m.root() }
    }
}

impl MapJson {
    pub fn to_map(&self) -> Result<BicubicMap, CliError> {
        Ok(BicubicMap::new(self.alpha.clone(), self.rot.clone(), self.root)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsJson {
    pub root: u32,
    pub sub: u32,
    pub rzero: u32,
    pub rmod: u32,
    pub open: u32,
    pub exc: u32,
    pub nodes: u32,
    pub edges: u32,
}

impl From<StatVector> for StatsJson {
    fn from(s: StatVector) -> StatsJson {
        StatsJson {
            root: s.root,
            sub: s.sub,
            rzero: s.rzero,
            rmod: s.rmod,
            open: s.open,
            exc: s.exc,
            nodes: s.nodes,
            edges: s.edges,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapStatsJson {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub f1r3: u32,
    pub f3r2: u32,
    pub b: u32,
    pub s1r3: u32,
    pub one: u32,
}

impl MapStatsJson {
    pub fn of(m: &BicubicMap) -> MapStatsJson {
        let MapStats { f1r3, f3r2, b, s1r3, one } = m.statistics();
        MapStatsJson {
            vertices: m.vertex_count(),
            edges: m.edge_count(),
            faces: m.faces().orbits.len(),
            f1r3,
            f3r2,
            b,
            s1r3,
            one,
        }
    }
}

/// One coefficient `[tⁿ xᵃ yᵇ]` of a series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub coeff: String,
}

pub fn coefficients(f: &Series3) -> Vec<CoeffJson> {
    f.terms().map(|(n, a, b, c)| CoeffJson { n, a, b, coeff: c.to_string() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub a: u32,
    pub b: u32,
    pub count: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistJson {
    pub nodes: u32,
    pub pair: [String; 2],
    pub total: String,
    pub counts: Vec<CellJson>,
}

impl DistJson {
    pub fn new(nodes: u32, pair: (Stat, Stat), table: &JointDistTable) -> DistJson {
        DistJson {
            nodes,
            pair: [pair.0.name().into(), pair.1.name().into()],
            total: table.total().to_string(),
            counts: table
                .iter()
                .map(|(&(a, b), c)| CellJson { a, b, count: c.to_string() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub n: u32,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub check: String,
    pub n_min: u32,
    pub n_max: u32,
    pub passed: bool,
    pub counterexample: Option<String>,
    pub values: Vec<ValueJson>,
    pub notes: Vec<String>,
    pub elapsed_ms: Option<u64>,
}

impl From<&VerifyReport> for ReportJson {
    fn from(r: &VerifyReport) -> ReportJson {
        ReportJson {
            check: r.check.name().into(),
            n_min: r.n_min,
            n_max: r.n_max,
            passed: r.passed,
            counterexample: r.counterexample.clone(),
            values: r.values.iter().map(|(n, v)| ValueJson { n: *n, value: v.clone() }).collect(),
            notes: r.notes.clone(),
            elapsed_ms: r.elapsed_ms,
        }
    }
}

impl TryFrom<ReportJson> for VerifyReport {
    type Error = CliError;

    fn try_from(r: ReportJson) -> Result<VerifyReport, CliError> {
        let check: Check = r.check.parse().map_err(|e: beta_trees::verify::UnknownCheck| CliError::Usage(e.to_string()))?;
        Ok(VerifyReport {
            check,
            n_min: r.n_min,
            n_max: r.n_max,
            passed: r.passed,
            counterexample: r.counterexample,
            values: r.values.into_iter().map(|v| (v.n, v.value)).collect(),
            notes: r.notes,
            elapsed_ms: r.elapsed_ms,
        })
    }
}
