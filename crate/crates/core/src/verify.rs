//! Exhaustive verification checks.
//!
//! Each check folds over all trees of a size. A [`Driver`] decides how the
//! trees are walked: [`Sequential`] here, a thread pool in the CLI crate.
//! Work is split by tree shape and partial results are merged with
//! order-insensitive operations (sums, table merges, minimum counterexample),
//! so every driver produces identical reports.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};

use crate::algebra::{mu, nu, rho, sigma};
use crate::bicubic::{to_map, to_tree, validate_map, BicubicMap};
use crate::enumerate::{a_seq, count_trees, shapes, JointDistTable, Stat};
use crate::involution::g;
use crate::series::solve_f;
use crate::tree::{validate_tree, BetaTree};

/// A commutative, associative reduction over trees.
pub trait TreeFold: Sync {
    type Acc: Send;
    fn init(&self) -> Self::Acc;
    fn visit(&self, acc: &mut Self::Acc, t: &BetaTree);
    fn merge(&self, into: &mut Self::Acc, other: Self::Acc);
}

pub trait Driver {
    /// Folds `fold` over every tree with `n` nodes.
    fn fold<F: TreeFold>(&self, n: u32, fold: &F) -> F::Acc;
}

/// Single-threaded driver, one shape at a time.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Driver for Sequential {
    fn fold<F: TreeFold>(&self, n: u32, fold: &F) -> F::Acc {
        let mut acc = fold.init();
        for shape in shapes(n) {
            let mut part = fold.init();
            shape.for_each_labeling(|t| fold.visit(&mut part, t));
            fold.merge(&mut acc, part);
        }
        acc
    }
}

/// Counts trees and keeps the smallest one failing `pred`.
pub struct Pointwise<P>(pub P);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointwiseAcc {
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<BetaTree>,
}

impl<P: Fn(&BetaTree) -> bool + Sync> TreeFold for Pointwise<P> {
    type Acc = PointwiseAcc;

    fn init(&self) -> PointwiseAcc {
        PointwiseAcc::default()
    }

    fn visit(&self, acc: &mut PointwiseAcc, t: &BetaTree) {
        acc.checked += 1;
        if !(self.0)(t) {
            acc.failures += 1;
            if acc.first_failure.as_ref().is_none_or(|f| t < f) {
                acc.first_failure = Some(t.clone());
            }
        }
    }

    fn merge(&self, into: &mut PointwiseAcc, other: PointwiseAcc) {
        into.checked += other.checked;
        into.failures += other.failures;
        if let Some(t) = other.first_failure {
            if into.first_failure.as_ref().is_none_or(|f| t < *f) {
                into.first_failure = Some(t);
            }
        }
    }
}

/// Joint tables of several statistic pairs in one pass.
pub struct Tables(pub Vec<(Stat, Stat)>);

impl TreeFold for Tables {
    type Acc = Vec<BTreeMap<(u32, u32), u64>>;

    fn init(&self) -> Self::Acc {
        vec![BTreeMap::new(); self.0.len()]
    }

    fn visit(&self, acc: &mut Self::Acc, t: &BetaTree) {
        let s = t.statistics();
        for (table, &(a, b)) in acc.iter_mut().zip(&self.0) {
            *table.entry((a.of(&s), b.of(&s))).or_default() += 1;
        }
    }

    fn merge(&self, into: &mut Self::Acc, other: Self::Acc) {
        for (mine, theirs) in into.iter_mut().zip(other) {
            for (k, v) in theirs {
                *mine.entry(k).or_default() += v;
            }
        }
    }
}

/// Joint table of `pair` over trees on `n` nodes.
pub fn joint_distribution_with<D: Driver>(driver: &D, n: u32, pair: (Stat, Stat)) -> JointDistTable {
    let mut acc = driver.fold(n, &Tables(vec![pair]));
    acc.pop().expect("one table").into()
}

struct Sum<V>(V);

impl<V: Fn(&BetaTree) -> u64 + Sync> TreeFold for Sum<V> {
    type Acc = u64;

    fn init(&self) -> u64 {
        0
    }

    fn visit(&self, acc: &mut u64, t: &BetaTree) {
        *acc += (self.0)(t);
    }

    fn merge(&self, into: &mut u64, other: u64) {
        *into += other;
    }
}

/// Bijection, validity and statistic correspondence for the map of every
/// tree, plus the set of canonical maps for the count.
struct MapFold;

#[derive(Default)]
struct MapAcc {
    point: PointwiseAcc,
    forms: BTreeSet<BicubicMap>,
}

fn map_checks(t: &BetaTree) -> Option<BicubicMap> {
    let m = to_map(t).ok()?;
    if !validate_map(&m).is_empty() || to_tree(&m).ok()? != *t {
        return None;
    }
    let s = t.statistics();
    let ms = m.statistics();
    let agree = s.exc == ms.one && s.root == ms.f1r3 && s.rmod == ms.f3r2 && s.rzero == ms.b && s.sub == ms.s1r3;
    agree.then_some(m)
}

impl TreeFold for MapFold {
    type Acc = MapAcc;

    fn init(&self) -> MapAcc {
        MapAcc::default()
    }

    fn visit(&self, acc: &mut MapAcc, t: &BetaTree) {
        let ok = match map_checks(t) {
            Some(m) => {
                acc.forms.insert(m.canonical_form());
                true
            }
            None => false,
        };
        Pointwise(|_: &BetaTree| ok).visit(&mut acc.point, t);
    }

    fn merge(&self, into: &mut MapAcc, other: MapAcc) {
        Pointwise(|_: &BetaTree| true).merge(&mut into.point, other.point);
        into.forms.extend(other.forms);
    }
}

/// `φ³ = id` and validity pointwise; distributions of `f1r3` and `f3r2`;
/// whether `f1r3 ∘ φ = f3r2` pointwise.
struct PhiFold;

#[derive(Default)]
struct PhiAcc {
    point: PointwiseAcc,
    pointwise_transport: PointwiseAcc,
    f1r3: BTreeMap<u32, u64>,
    f3r2: BTreeMap<u32, u64>,
}

impl TreeFold for PhiFold {
    type Acc = PhiAcc;

    fn init(&self) -> PhiAcc {
        PhiAcc::default()
    }

    fn visit(&self, acc: &mut PhiAcc, t: &BetaTree) {
        let Ok(m) = to_map(t) else {
            Pointwise(|_: &BetaTree| false).visit(&mut acc.point, t);
            return;
        };
        let p = m.phi();
        let ok = validate_map(&p).is_empty() && p.phi().phi() == m;
        Pointwise(|_: &BetaTree| ok).visit(&mut acc.point, t);
        let s = m.statistics();
        let moved = p.statistics().f1r3 == s.f3r2;
        Pointwise(|_: &BetaTree| moved).visit(&mut acc.pointwise_transport, t);
        *acc.f1r3.entry(s.f1r3).or_default() += 1;
        *acc.f3r2.entry(s.f3r2).or_default() += 1;
    }

    fn merge(&self, into: &mut PhiAcc, other: PhiAcc) {
        let p = Pointwise(|_: &BetaTree| true);
        p.merge(&mut into.point, other.point);
        p.merge(&mut into.pointwise_transport, other.pointwise_transport);
        for (k, v) in other.f1r3 {
            *into.f1r3.entry(k).or_default() += v;
        }
        for (k, v) in other.f3r2 {
            *into.f3r2.entry(k).or_default() += v;
        }
    }
}

/// The available checks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Check {
    /// Tree counts against the map-counting formula.
    Census,
    /// `g ∘ g = id`.
    Involution,
    /// `root ∘ g = open` and `open ∘ g = root`.
    Transport,
    /// `rmod = open` on all trees and the operator identities on small tuples.
    Lemmas,
    /// `(root, rmod)` and `(rmod, root)` have the same joint distribution.
    Equidist,
    /// Tree/map bijection and the five statistic correspondences.
    Prop3,
    /// The rotation of the root on maps.
    Phi,
    /// Number of fixed points of `g` on `n` nodes is `a(⌊n/2⌋)`.
    ConjFp,
    /// `(root, rzero)` and `(rmod, sub)` have the same joint distribution.
    ConjJoint,
    /// Trees on `n + 1` nodes with a marked excessive node number `a(n)`.
    Prop15,
    /// The generating-function solution against enumeration.
    Gf,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Census,
        Check::Involution,
        Check::Transport,
        Check::Lemmas,
        Check::Equidist,
        Check::Prop3,
        Check::Phi,
        Check::ConjFp,
        Check::ConjJoint,
        Check::Prop15,
        Check::Gf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Census => "census",
            Check::Involution => "involution",
            Check::Transport => "transport",
            Check::Lemmas => "lemmas",
            Check::Equidist => "equidist",
            Check::Prop3 => "prop3",
            Check::Phi => "phi",
            Check::ConjFp => "conj-fp",
            Check::ConjJoint => "conj-joint",
            Check::Prop15 => "prop15",
            Check::Gf => "gf",
        }
    }

    /// Largest size checked by default. For `prop15` this is `n` in
    /// `a(n)`, for `gf` the series order; otherwise a node count.
    pub fn default_max(self) -> u32 {
        match self {
            Check::Census => 11,
            Check::Involution | Check::Transport | Check::Lemmas | Check::Equidist => 10,
            Check::Prop3 => 8,
            Check::Phi => 7,
            Check::ConjFp => 12,
            Check::ConjJoint => 11,
            Check::Prop15 => 10,
            Check::Gf => 12,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownCheck(pub String);

impl fmt::Display for UnknownCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown check '{}'", self.0)
    }
}

impl core::error::Error for UnknownCheck {}

impl FromStr for Check {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Check, UnknownCheck> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| UnknownCheck(s.into()))
    }
}

/// Outcome of one check over a size range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub check: Check,
    pub n_min: u32,
    pub n_max: u32,
    pub passed: bool,
    /// Smallest failing tree, for pointwise checks.
    pub counterexample: Option<String>,
    /// Observed quantity per size, as decimal text.
    pub values: Vec<(u32, String)>,
    pub notes: Vec<String>,
    /// Filled in by callers that can measure time.
    pub elapsed_ms: Option<u64>,
}

impl VerifyReport {
    fn new(check: Check, n_min: u32, n_max: u32) -> Self {
        VerifyReport {
            check,
            n_min,
            n_max,
            passed: true,
            counterexample: None,
            values: Vec::new(),
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    fn absorb(&mut self, n: u32, acc: &PointwiseAcc) {
        if acc.failures > 0 {
            self.passed = false;
            if self.counterexample.is_none() {
                self.counterexample = acc.first_failure.as_ref().map(|t| t.to_string());
            }
            self.notes.push(format!("n={n}: {} of {} failed", acc.failures, acc.checked));
        }
    }

    fn fail(&mut self, note: String) {
        self.passed = false;
        self.notes.push(note);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} n={}..={}", self.check, self.n_min, self.n_max)?;
        if !self.values.is_empty() {
            let vals: Vec<&str> = self.values.iter().map(|(_, v)| v.as_str()).collect();
            write!(f, " [{}]", vals.join(","))?;
        }
        if let Some(ms) = self.elapsed_ms {
            write!(f, " ({ms} ms)")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        for note in &self.notes {
            write!(f, "\n  {note}")?;
        }
        Ok(())
    }
}

/// Runs one check up to `n_max` (see [`Check::default_max`] for its meaning).
pub fn run_check<D: Driver>(driver: &D, check: Check, n_max: u32) -> VerifyReport {
    match check {
        Check::Census => census(driver, n_max),
        Check::Involution => pointwise_range(driver, check, 1, n_max, |t| g(&g(t)) == *t),
        Check::Transport => pointwise_range(driver, check, 1, n_max, |t| {
            let u = g(t);
            u.root() == t.open() && u.open() == t.root()
        }),
        Check::Lemmas => lemmas(driver, n_max),
        Check::Equidist => equidist(driver, check, n_max, (Stat::Root, Stat::Rmod), (Stat::Rmod, Stat::Root)),
        Check::ConjJoint => equidist(driver, check, n_max, (Stat::Root, Stat::Rzero), (Stat::Rmod, Stat::Sub)),
        Check::Prop3 => prop3(driver, n_max),
        Check::Phi => phi_check(driver, n_max),
        Check::ConjFp => fixed_point_check(driver, n_max),
        Check::Prop15 => prop15(driver, n_max),
        Check::Gf => gf_check(driver, n_max, n_max.min(9)),
    }
}

/// Runs several checks, each up to `n_max` or its default.
pub fn verify_suite<D: Driver>(driver: &D, checks: &[Check], n_max: Option<u32>) -> Vec<VerifyReport> {
    checks.iter().map(|&c| run_check(driver, c, n_max.unwrap_or(c.default_max()))).collect()
}

fn pointwise_range<D: Driver, P>(driver: &D, check: Check, n_min: u32, n_max: u32, pred: P) -> VerifyReport
where
    P: Fn(&BetaTree) -> bool + Sync,
{
    let mut report = VerifyReport::new(check, n_min, n_max);
    let fold = Pointwise(pred);
    for n in n_min..=n_max {
        let acc = driver.fold(n, &fold);
        report.values.push((n, acc.checked.to_string()));
        report.absorb(n, &acc);
    }
    report
}

fn census<D: Driver>(driver: &D, n_max: u32) -> VerifyReport {
    let mut report = VerifyReport::new(Check::Census, 1, n_max);
    let fold = Sum(|_: &BetaTree| 1);
    for n in 1..=n_max {
        let got = BigUint::from(driver.fold(n, &fold));
        let want = count_trees(n);
        if got != want {
            report.fail(format!("n={n}: enumerated {got}, formula {want}"));
        }
        report.values.push((n, got.to_string()));
    }
    report
}

fn equidist<D: Driver>(driver: &D, check: Check, n_max: u32, a: (Stat, Stat), b: (Stat, Stat)) -> VerifyReport {
    let mut report = VerifyReport::new(check, 1, n_max);
    report.notes.push(format!("({},{}) vs ({},{})", a.0, a.1, b.0, b.1));
    for n in 1..=n_max {
        let mut tables = driver.fold(n, &Tables(vec![a, b]));
        let tb: JointDistTable = tables.pop().expect("two tables").into();
        let ta: JointDistTable = tables.pop().expect("two tables").into();
        if ta != tb {
            let diff = ta.iter().find(|(k, v)| tb.get(k.0, k.1) != **v).map(|(k, _)| *k);
            report.fail(format!("n={n}: tables differ (first at {diff:?})"));
        }
        report.values.push((n, ta.iter().count().to_string()));
    }
    report
}

fn prop3<D: Driver>(driver: &D, n_max: u32) -> VerifyReport {
    let mut report = VerifyReport::new(Check::Prop3, 2, n_max);
    for n in 2..=n_max {
        let acc = driver.fold(n, &MapFold);
        report.absorb(n, &acc.point);
        let want = count_trees(n);
        if BigUint::from(acc.forms.len()) != want {
            report.fail(format!("n={n}: {} distinct maps, expected {want}", acc.forms.len()));
        }
        report.values.push((n, acc.forms.len().to_string()));
    }
    report
}

fn phi_check<D: Driver>(driver: &D, n_max: u32) -> VerifyReport {
    let mut report = VerifyReport::new(Check::Phi, 2, n_max);
    let mut pointwise = true;
    for n in 2..=n_max {
        let acc = driver.fold(n, &PhiFold);
        report.absorb(n, &acc.point);
        if acc.f1r3 != acc.f3r2 {
            report.fail(format!("n={n}: f1r3 and f3r2 distributions differ"));
        }
        pointwise &= acc.pointwise_transport.failures == 0;
        report.values.push((n, acc.point.checked.to_string()));
    }
    report.notes.push(format!(
        "f1r3(phi(M)) = f3r2(M) pointwise: {}",
        if pointwise { "holds" } else { "fails; distribution-level check used" }
    ));
    report
}

fn fixed_point_check<D: Driver>(driver: &D, n_max: u32) -> VerifyReport {
    let mut report = VerifyReport::new(Check::ConjFp, 2, n_max);
    let fold = Sum(|t: &BetaTree| u64::from(g(t) == *t));
    for n in 2..=n_max {
        let got = BigUint::from(driver.fold(n, &fold));
        let want = a_seq(n / 2).expect("n/2 ≥ 1");
        if got != want {
            report.fail(format!("n={n}: {got} fixed points, expected {want}"));
        }
        report.values.push((n, got.to_string()));
    }
    report
}

fn prop15<D: Driver>(driver: &D, n_max: u32) -> VerifyReport {
    let mut report = VerifyReport::new(Check::Prop15, 1, n_max);
    let fold = Sum(|t: &BetaTree| u64::from(t.statistics().exc));
    for n in 1..=n_max {
        let got = BigUint::from(driver.fold(n + 1, &fold));
        let want = a_seq(n).expect("n ≥ 1");
        if got != want {
            report.fail(format!("n={n}: marked count {got}, a(n) = {want}"));
        }
        report.values.push((n, got.to_string()));
    }
    report
}

/// Solves to `order` and compares with enumeration up to `cross` edges.
pub fn gf_check<D: Driver>(driver: &D, order: u32, cross: u32) -> VerifyReport {
    let mut report = VerifyReport::new(Check::Gf, 0, order);
    let f = match solve_f(order as usize) {
        Ok(f) => f,
        Err(e) => {
            report.fail(format!("solver: {e}"));
            return report;
        }
    };
    if !f.is_symmetric() {
        report.fail("F(x,y) != F(y,x)".into());
    }
    if f.terms().any(|(_, _, _, c)| c.sign() == num_bigint::Sign::Minus) {
        report.fail("negative coefficient".into());
    }
    let counts = f.substitute_x1().substitute_y1();
    for n in 0..=order {
        let got = counts.coeff(n as usize).coeff(0, 0);
        if got != BigInt::from(count_trees(n + 1)) {
            report.fail(format!("[t^{n}]F(1,1) = {got}, expected {}", count_trees(n + 1)));
        }
        report.values.push((n, got.to_string()));
    }
    for n in 0..=cross.min(order) {
        let table = joint_distribution_with(driver, n + 1, (Stat::Root, Stat::Rmod));
        let poly = f.coeff(n as usize);
        let from_table: Vec<(usize, usize, BigInt)> =
            table.iter().map(|(&(a, b), c)| (a as usize, b as usize, BigInt::from(c.clone()))).collect();
        let from_series: Vec<(usize, usize, BigInt)> = poly.terms().map(|(a, b, c)| (a, b, c.clone())).collect();
        if from_table != from_series {
            report.fail(format!("[t^{n}]F disagrees with the (root, rmod) table"));
        }
    }
    report.notes.push(format!("coefficients cross-checked against enumeration for n ≤ {}", cross.min(order)));
    report
}

/// All trees with at most `max_nodes` nodes.
fn small_trees(max_nodes: u32) -> Vec<BetaTree> {
    (1..=max_nodes).flat_map(crate::enumerate::trees).collect()
}

/// Tuples of length 1 to 3 over `pool`, in lexicographic order.
fn tuples(pool: &[BetaTree]) -> impl Iterator<Item = Vec<BetaTree>> + '_ {
    let n = pool.len();
    (1..=3u32).flat_map(move |k| {
        (0..n.pow(k)).map(move |mut code| {
            let mut v = Vec::with_capacity(k as usize);
            for _ in 0..k {
                v.push(pool[code % n].clone());
                code /= n;
            }
            v.reverse();
            v
        })
    })
}

/// Identity checks on tuples from trees with at most `small` nodes.
pub fn lemma_identities(small: u32) -> (u64, Vec<String>) {
    let pool = small_trees(small);
    let mut checked = 0u64;
    let mut failures = Vec::new();
    let mut fail = |what: String| {
        if failures.len() < 10 {
            failures.push(what);
        }
    };
    let valid = |t: &BetaTree| validate_tree(t).is_empty();

    for parts in tuples(&pool) {
        checked += 1;
        let last = parts.last().expect("nonempty");
        let r = rho(&parts).expect("nonempty");
        let s = sigma(&parts).expect("nonempty");
        if !valid(&r) || !valid(&s) {
            fail(format!("invalid rho/sigma image of {parts:?}"));
        }
        if r.open() != 1 + last.open() || r.root() != 1 {
            fail(format!("open(rho) of {parts:?}"));
        }
        if s.root() != 1 + last.root() || s.open() != 1 {
            fail(format!("root/open(sigma) of {parts:?}"));
        }
        // ρ(T₁,…,T_k) = ν₁(σ(T_{k−1},…,T₁,ε), T_k)
        let mut init: Vec<BetaTree> = parts[..parts.len() - 1].iter().rev().cloned().collect();
        init.push(BetaTree::trivial());
        match sigma(&init).and_then(|sg| nu(1, &sg, last)) {
            Ok(v) if v == r => {}
            _ => fail(format!("rho = nu1(sigma(...)) for {parts:?}")),
        }
        // g(σ(T…)) = ρ(g(T)…)
        let images: Vec<BetaTree> = parts.iter().map(g).collect();
        if g(&s) != rho(&images).expect("nonempty") {
            fail(format!("g(sigma) for {parts:?}"));
        }
    }

    for s in &pool {
        for t in &pool {
            if s.root() == 1 && !t.is_trivial() {
                for i in 1..=t.open() {
                    checked += 1;
                    let m = mu(i, s, t).expect("preconditions hold");
                    if !valid(&m) || m.root() != 1 + t.root() || m.open() != i - 1 + s.open() {
                        fail(format!("mu({i}, {s}, {t})"));
                    }
                }
            }
            if s.open() == 1 && !t.is_trivial() {
                for i in 1..=t.root() {
                    checked += 1;
                    let v = nu(i, s, t).expect("preconditions hold");
                    if !valid(&v) || v.root() != i - 1 + s.root() || v.open() != 1 + t.open() {
                        fail(format!("nu({i}, {s}, {t})"));
                    }
                    if g(&v) != mu(i, &g(s), &g(t)).expect("g swaps root and open") {
                        fail(format!("g(nu({i}, {s}, {t}))"));
                    }
                }
            }
        }
    }

    let opens: Vec<&BetaTree> = pool.iter().filter(|r| r.open() == 1).collect();
    let roots: Vec<&BetaTree> = pool.iter().filter(|s| s.root() == 1).collect();
    for &r in &opens {
        for &s in &roots {
            for t in pool.iter().filter(|t| !t.is_trivial()) {
                for i in 1..=t.root() {
                    for j in 1..=t.open() {
                        checked += 1;
                        // ν_{i+1}(R, μ_j(S,T)) = μ_{j+1}(S, νᵢ(R,T))
                        let left = mu(j, s, t).and_then(|m| nu(i + 1, r, &m));
                        let right = nu(i, r, t).and_then(|v| mu(j + 1, s, &v));
                        match (left, right) {
                            (Ok(a), Ok(b)) if a == b => {}
                            _ => fail(format!("nu/mu exchange i={i} j={j} R={r} S={s} T={t}")),
                        }
                    }
                }
            }
        }
        if r.root() == 1 {
            for s in &pool {
                for t in &pool {
                    checked += 1;
                    // μ₁(ν₁(R,S),T) = ν₁(μ₁(R,T),S)
                    let left = nu(1, r, s).and_then(|v| mu(1, &v, t));
                    let right = mu(1, r, t).and_then(|m| nu(1, &m, s));
                    match (left, right) {
                        (Ok(a), Ok(b)) if a == b => {}
                        _ => fail(format!("mu1/nu1 commute R={r} S={s} T={t}")),
                    }
                }
            }
        }
    }
    (checked, failures)
}

fn lemmas<D: Driver>(driver: &D, n_max: u32) -> VerifyReport {
    let mut report = pointwise_range(driver, Check::Lemmas, 1, n_max, |t| {
        let s = t.statistics();
        s.rmod == s.open
    });
    let (checked, failures) = lemma_identities(5);
    report.notes.push(format!("{checked} operator identities checked on trees with at most 5 nodes"));
    for f in failures {
        report.fail(f);
    }
    report
}
