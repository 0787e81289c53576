//! Rooted bicubic planar maps as rotation systems, and the bijection with
//! β(0,1)-trees.
//!
//! A map is a set of darts with an edge involution `alpha`, a vertex rotation
//! `rot` (counterclockwise successor around the origin vertex) and a root
//! dart. The face to the right of dart `d` is its orbit under
//! `d ↦ rot(alpha(d))`. The root vertex is black, the root face has colour 3,
//! and going counterclockwise around a white vertex the face colours increase
//! by one (so they decrease around a black vertex).
//!
//! Named faces, all relative to the root dart `r`:
//! `R3 = face(r)`, `R2 = face(rot r)`, `R1 = face(rot² r)` and
//! `S1 = face(rot² alpha r)`, the colour-1 face at the far end of the root edge.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{self, LambdaOplusStep};
use crate::error::MapError;
use crate::tree::BetaTree;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BicubicMap {
    alpha: Vec<u32>,
    rot: Vec<u32>,
    root: u32,
}

/// The five map statistics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct MapStats {
    /// Colour-1 faces sharing an edge with `R3`.
    pub f1r3: u32,
    /// Colour-3 faces sharing an edge with `R2`.
    pub f3r2: u32,
    /// Black vertices incident to both `R1` and `R2`.
    pub b: u32,
    /// Edges shared by `S1` and `R3`.
    pub s1r3: u32,
    /// Number of colour-1 faces.
    pub one: u32,
}

/// One broken invariant of a candidate map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MapViolation {
    Empty,
    LengthMismatch { alpha: usize, rot: usize },
    RootOutOfRange { root: u32, darts: usize },
    DartOutOfRange { dart: u32 },
    AlphaNotInvolution { dart: u32 },
    AlphaFixedPoint { dart: u32 },
    RotNotPermutation { dart: u32 },
    NotCubic { dart: u32, orbit: usize },
    Disconnected { components: usize },
    NotBipartite,
    NotPlanar { vertices: usize, edges: usize, faces: usize },
    ColoringInconsistent { dart: u32 },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::Empty => write!(f, "map has no darts"),
            MapViolation::LengthMismatch { alpha, rot } => {
                write!(f, "alpha has {alpha} entries but rot has {rot}")
            }
            MapViolation::RootOutOfRange { root, darts } => {
                write!(f, "root dart {root} outside 0..{darts}")
            }
            MapViolation::DartOutOfRange { dart } => write!(f, "dart {dart} has an out-of-range image"),
            MapViolation::AlphaNotInvolution { dart } => write!(f, "alpha is not an involution at dart {dart}"),
            MapViolation::AlphaFixedPoint { dart } => write!(f, "alpha fixes dart {dart}"),
            MapViolation::RotNotPermutation { dart } => write!(f, "rot is not a permutation (dart {dart} hit twice)"),
            MapViolation::NotCubic { dart, orbit } => {
                write!(f, "not 3-regular: vertex of dart {dart} has degree {orbit}")
            }
            MapViolation::Disconnected { components } => write!(f, "disconnected: {components} components"),
            MapViolation::NotBipartite => write!(f, "not bipartite"),
            MapViolation::NotPlanar { vertices, edges, faces } => {
                write!(f, "not planar: V - E + F = {vertices} - {edges} + {faces} != 2")
            }
            MapViolation::ColoringInconsistent { dart } => {
                write!(f, "face colouring inconsistent at dart {dart}")
            }
        }
    }
}

/// Vertex partition of the darts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertices {
    /// Vertex id of each dart's origin.
    pub vertex_of: Vec<u32>,
    /// Colour of each vertex; the root vertex is black.
    pub black: Vec<bool>,
}

/// Face partition of the darts and the face 3-colouring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Faces {
    /// Face id of the face to the right of each dart.
    pub face_of: Vec<u32>,
    /// Colour (1, 2 or 3) of each face.
    pub color: Vec<u8>,
    /// Darts of each face in boundary order.
    pub orbits: Vec<Vec<u32>>,
}

struct Analysis {
    vertices: Vertices,
    faces: Faces,
}

fn step_color(c: u8, up: bool) -> u8 {
    if up {
        c % 3 + 1
    } else {
        (c + 1) % 3 + 1
    }
}

impl BicubicMap {
    /// Builds and validates a map.
    pub fn new(alpha: Vec<u32>, rot: Vec<u32>, root: u32) -> Result<BicubicMap, MapError> {
        let m = BicubicMap { alpha, rot, root };
        let violations = validate_map(&m);
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(MapError::Invalid(violations))
        }
    }

    /// The two-vertex map with three parallel edges.
    pub fn theta() -> BicubicMap {
        BicubicMap { alpha: vec![3, 5, 4, 0, 2, 1], rot: vec![1, 2, 0, 4, 5, 3], root: 0 }
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn rot(&self) -> &[u32] {
        &self.rot
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.alpha.len() / 3
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    fn a(&self, d: u32) -> u32 {
        self.alpha[d as usize]
    }

    fn r(&self, d: u32) -> u32 {
        self.rot[d as usize]
    }

    fn r_inv(&self, d: u32) -> u32 {
        self.r(self.r(d))
    }

    fn vertices_unchecked(&self) -> Vertices {
        let n = self.alpha.len();
        let mut vertex_of = vec![u32::MAX; n];
        let mut count = 0;
        for d in 0..n as u32 {
            if vertex_of[d as usize] == u32::MAX {
                let mut e = d;
                loop {
                    vertex_of[e as usize] = count;
                    e = self.r(e);
                    if e == d {
                        break;
                    }
                }
                count += 1;
            }
        }
        // Two-colour by distance parity from the root vertex.
        let mut black: Vec<Option<bool>> = vec![None; count as usize];
        let root_v = vertex_of[self.root as usize];
        black[root_v as usize] = Some(true);
        let mut queue = VecDeque::from([self.root]);
        let mut seen = vec![false; n];
        seen[self.root as usize] = true;
        while let Some(d) = queue.pop_front() {
            let colour = black[vertex_of[d as usize] as usize].expect("coloured on discovery");
            for e in [self.r(d), self.a(d)] {
                let v = vertex_of[e as usize] as usize;
                if black[v].is_none() {
                    black[v] = Some(if e == self.a(d) { !colour } else { colour });
                }
                if !seen[e as usize] {
                    seen[e as usize] = true;
                    queue.push_back(e);
                }
            }
        }
        Vertices { vertex_of, black: black.into_iter().map(|b| b.unwrap_or(true)).collect() }
    }

    fn face_orbits(&self) -> (Vec<u32>, Vec<Vec<u32>>) {
        let n = self.alpha.len();
        let mut face_of = vec![u32::MAX; n];
        let mut orbits = Vec::new();
        // Root face first, then by smallest dart.
        for start in core::iter::once(self.root).chain(0..n as u32) {
            if face_of[start as usize] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                face_of[d as usize] = id;
                orbit.push(d);
                d = self.r(self.a(d));
                if d == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        (face_of, orbits)
    }

    /// Colours faces from the root face; returns the first dart where the
    /// rule is broken, if any.
    fn color_faces(&self, vertices: &Vertices, face_of: &[u32], faces: usize) -> (Vec<u8>, Option<u32>) {
        let n = self.alpha.len();
        let mut color = vec![0u8; faces];
        color[face_of[self.root as usize] as usize] = 3;
        // Propagate face(d) → face(rot d) over darts of already coloured faces.
        let mut queue = VecDeque::from([face_of[self.root as usize]]);
        let mut by_face: Vec<Vec<u32>> = vec![Vec::new(); faces];
        for d in 0..n as u32 {
            by_face[face_of[d as usize] as usize].push(d);
        }
        while let Some(f) = queue.pop_front() {
            for &d in &by_face[f as usize] {
                let up = !vertices.black[vertices.vertex_of[d as usize] as usize];
                let g = face_of[self.r(d) as usize] as usize;
                if color[g] == 0 {
                    color[g] = step_color(color[f as usize], up);
                    queue.push_back(g as u32);
                }
            }
        }
        for d in 0..n as u32 {
            let up = !vertices.black[vertices.vertex_of[d as usize] as usize];
            let f = face_of[d as usize] as usize;
            let g = face_of[self.r(d) as usize] as usize;
            if color[f] == 0 || color[g] != step_color(color[f], up) {
                return (color, Some(d));
            }
        }
        (color, None)
    }

    fn analyse(&self) -> Analysis {
        let vertices = self.vertices_unchecked();
        let (face_of, orbits) = self.face_orbits();
        let (color, _) = self.color_faces(&vertices, &face_of, orbits.len());
        Analysis { vertices, faces: Faces { face_of, color, orbits } }
    }

    /// Vertex ids and colours. The map must be valid.
    pub fn vertices(&self) -> Vertices {
        self.vertices_unchecked()
    }

    /// Face orbits and colours. The map must be valid.
    pub fn faces(&self) -> Faces {
        self.analyse().faces
    }

    pub fn statistics(&self) -> MapStats {
        stats_of(self, &self.analyse())
    }

    /// The same map rooted at the next dart counterclockwise; faces recolour
    /// by `1 ↦ 2 ↦ 3 ↦ 1`.
    pub fn phi(&self) -> BicubicMap {
        BicubicMap { alpha: self.alpha.clone(), rot: self.rot.clone(), root: self.r(self.root) }
    }

    /// Relabels darts in breadth-first order from the root (rotation before
    /// edge partner). Two rooted maps are isomorphic iff their canonical forms
    /// are equal.
    pub fn canonical_form(&self) -> BicubicMap {
        relabel_component(&self.alpha, &self.rot, self.root)
    }
}

/// Breadth-first relabelling of the component of `root`; darts outside it
/// are dropped.
fn relabel_component(alpha: &[u32], rot: &[u32], root: u32) -> BicubicMap {
    let mut new_id = vec![u32::MAX; alpha.len()];
    let mut order = vec![root];
    new_id[root as usize] = 0;
    let mut head = 0;
    while head < order.len() {
        let d = order[head];
        head += 1;
        for e in [rot[d as usize], alpha[d as usize]] {
            if new_id[e as usize] == u32::MAX {
                new_id[e as usize] = order.len() as u32;
                order.push(e);
            }
        }
    }
    let alpha2 = order.iter().map(|&d| new_id[alpha[d as usize] as usize]).collect();
    let rot2 = order.iter().map(|&d| new_id[rot[d as usize] as usize]).collect();
    BicubicMap { alpha: alpha2, rot: rot2, root: 0 }
}

fn stats_of(m: &BicubicMap, a: &Analysis) -> MapStats {
    let f = &a.faces;
    let face = |d: u32| f.face_of[d as usize];
    let r3 = face(m.root);
    let r2 = face(m.r(m.root));
    let r1 = face(m.r_inv(m.root));
    let s1 = face(m.r_inv(m.a(m.root)));

    let across = |of: u32, colour: u8| -> u32 {
        let set: BTreeSet<u32> = f.orbits[of as usize]
            .iter()
            .map(|&d| face(m.a(d)))
            .filter(|&g| f.color[g as usize] == colour)
            .collect();
        set.len() as u32
    };
    let s1r3 = f.orbits[r3 as usize].iter().filter(|&&d| face(m.a(d)) == s1).count() as u32;

    let mut touches = vec![(false, false); a.vertices.black.len()];
    for d in 0..m.dart_count() as u32 {
        let v = a.vertices.vertex_of[d as usize] as usize;
        touches[v].0 |= face(d) == r1;
        touches[v].1 |= face(d) == r2;
    }
    let b = touches
        .iter()
        .zip(&a.vertices.black)
        .filter(|(&(t1, t2), &black)| black && t1 && t2)
        .count() as u32;
    let one = f.color.iter().filter(|&&c| c == 1).count() as u32;
    MapStats { f1r3: across(r3, 1), f3r2: across(r2, 3), b, s1r3, one }
}

/// Checks every map invariant and reports each failure.
pub fn validate_map(m: &BicubicMap) -> Vec<MapViolation> {
    let mut out = Vec::new();
    let n = m.alpha.len();
    if n == 0 {
        out.push(MapViolation::Empty);
        return out;
    }
    if m.rot.len() != n {
        out.push(MapViolation::LengthMismatch { alpha: n, rot: m.rot.len() });
        return out;
    }
    if m.root as usize >= n {
        out.push(MapViolation::RootOutOfRange { root: m.root, darts: n });
    }
    for d in 0..n as u32 {
        if m.alpha[d as usize] as usize >= n || m.rot[d as usize] as usize >= n {
            out.push(MapViolation::DartOutOfRange { dart: d });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut hit = vec![false; n];
    for d in 0..n as u32 {
        let e = m.a(d);
        if e == d {
            out.push(MapViolation::AlphaFixedPoint { dart: d });
        } else if m.a(e) != d {
            out.push(MapViolation::AlphaNotInvolution { dart: d });
        }
        let r = m.r(d) as usize;
        if hit[r] {
            out.push(MapViolation::RotNotPermutation { dart: r as u32 });
        }
        hit[r] = true;
    }
    if !out.is_empty() {
        return out;
    }
    for d in 0..n as u32 {
        let mut len = 1;
        let mut e = m.r(d);
        while e != d && len <= 3 {
            e = m.r(e);
            len += 1;
        }
        if len != 3 {
            out.push(MapViolation::NotCubic { dart: d, orbit: len });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut components = 0;
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut stack = vec![start as u32];
        seen[start] = true;
        while let Some(d) = stack.pop() {
            for e in [m.r(d), m.a(d)] {
                if !seen[e as usize] {
                    seen[e as usize] = true;
                    stack.push(e);
                }
            }
        }
    }
    if components != 1 {
        out.push(MapViolation::Disconnected { components });
    }

    let vertices = m.vertices_unchecked();
    let bipartite = (0..n as u32).all(|d| {
        let u = vertices.vertex_of[d as usize] as usize;
        let v = vertices.vertex_of[m.a(d) as usize] as usize;
        vertices.black[u] != vertices.black[v]
    });
    if !bipartite {
        out.push(MapViolation::NotBipartite);
    }

    let (face_of, orbits) = m.face_orbits();
    let (v, e, f) = (n / 3, n / 2, orbits.len());
    if components == 1 && v + f != e + 2 {
        out.push(MapViolation::NotPlanar { vertices: v, edges: e, faces: f });
    }
    if bipartite && components == 1 {
        if let (_, Some(dart)) = m.color_faces(&vertices, &face_of, f) {
            out.push(MapViolation::ColoringInconsistent { dart });
        }
    }
    out
}

pub fn map_statistics(m: &BicubicMap) -> Result<MapStats, MapError> {
    let violations = validate_map(m);
    if !violations.is_empty() {
        return Err(MapError::Invalid(violations));
    }
    Ok(m.statistics())
}

/// Operation (1): subdivide the root edge twice and double the middle edge,
/// creating a colour-1 digon that touches the root face once.
pub fn op1(m: &BicubicMap) -> BicubicMap {
    let n = m.dart_count() as u32;
    let (root, s0) = (m.root, m.a(m.root));
    let (a0, a_lo, a_hi, b0, b_hi, b_lo) = (n, n + 1, n + 2, n + 3, n + 4, n + 5);
    let mut alpha = m.alpha.clone();
    let mut rot = m.rot.clone();
    alpha.extend([root, b_lo, b_hi, s0, a_hi, a_lo]);
    rot.extend([a_lo, a_hi, a0, b_hi, b_lo, b0]);
    alpha[root as usize] = a0;
    alpha[s0 as usize] = b0;
    BicubicMap { alpha, rot, root }
}

/// Operation (2): join the root edge to the edge separating `R3` from its
/// `i`th colour-1 neighbour, counted from the root going clockwise around
/// `R3`. The result has `f1r3 = i`.
pub fn op2(m: &BicubicMap, i: u32) -> Result<BicubicMap, MapError> {
    let analysis = m.analyse();
    let faces = &analysis.faces;
    let mut found: Vec<(u32, u32)> = Vec::new();
    let mut d = m.a(m.r_inv(m.root));
    loop {
        let g = faces.face_of[m.a(d) as usize];
        if faces.color[g as usize] == 1 && !found.iter().any(|&(h, _)| h == g) {
            found.push((g, d));
        }
        if d == m.root {
            break;
        }
        d = m.a(m.r_inv(d));
    }
    if i < 1 || i as usize > found.len() {
        return Err(MapError::IndexOutOfRange { index: i, max: found.len() as u32 });
    }
    let e_w = found[i as usize - 1].1;
    let e_b = m.a(e_w);
    let n = m.dart_count() as u32;
    let (a_s, a_p1, a_b) = (n, n + 1, n + 2);
    let (b_r, b_p2, b_a) = (n + 3, n + 4, n + 5);
    let (root, s0) = (m.root, m.a(m.root));
    let mut alpha = m.alpha.clone();
    let mut rot = m.rot.clone();
    alpha.extend([s0, e_w, b_a, root, e_b, a_b]);
    rot.extend([a_b, a_s, a_p1, b_p2, b_a, b_r]);
    alpha[root as usize] = b_r;
    alpha[s0 as usize] = a_s;
    alpha[e_b as usize] = b_p2;
    alpha[e_w as usize] = a_p1;
    Ok(BicubicMap { alpha, rot, root })
}

/// Operation (3): chain irreducible maps `M₁,…,M_k` (`k ≥ 2`) around a common
/// root face; the root is that of `M_k`.
pub fn op3(parts: &[BicubicMap]) -> Result<BicubicMap, MapError> {
    if parts.len() < 2 {
        return Err(MapError::TooFewParts);
    }
    if parts.iter().any(|p| p.statistics().s1r3 != 1) {
        return Err(MapError::Reducible);
    }
    Ok(op3_unchecked(parts))
}

fn op3_unchecked(parts: &[BicubicMap]) -> BicubicMap {
    let k = parts.len();
    let total: usize = parts.iter().map(|p| p.dart_count()).sum();
    let mut alpha = Vec::with_capacity(total);
    let mut rot = Vec::with_capacity(total);
    let mut p = Vec::with_capacity(k);
    let mut root = 0;
    for part in parts {
        let off = alpha.len() as u32;
        alpha.extend(part.alpha.iter().map(|&d| d + off));
        rot.extend(part.rot.iter().map(|&d| d + off));
        let pj = part.r(part.a(part.root)) + off;
        p.push(pj);
        root = part.root + off;
    }
    let q: Vec<u32> = p.iter().map(|&d| alpha[d as usize]).collect();
    for j in 0..k {
        let (x, y) = (q[j], p[(j + k - 1) % k]);
        alpha[x as usize] = y;
        alpha[y as usize] = x;
    }
    BicubicMap { alpha, rot, root }
}

/// The map of a nontrivial tree, built along its `λ`/`⊕` decomposition:
/// `λᵢ(T)` is operation (1) when `i = root(T)` and operation (2) with target
/// `i + 1` otherwise; `⊕` is operation (3).
pub fn to_map(t: &BetaTree) -> Result<BicubicMap, MapError> {
    if t.is_trivial() {
        return Err(MapError::TrivialTree);
    }
    enum Task {
        Expand(BetaTree),
        Lambda { i: u32, root: u32 },
        Sum(usize),
    }
    let mut tasks = vec![Task::Expand(t.clone())];
    let mut values: Vec<BicubicMap> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Expand(u) => match algebra::decompose_lambda_oplus(&u).expect("nontrivial") {
                LambdaOplusStep::Lambda { t, .. } if t.is_trivial() => values.push(BicubicMap::theta()),
                LambdaOplusStep::Lambda { i, t } => {
                    tasks.push(Task::Lambda { i, root: t.root() });
                    tasks.push(Task::Expand(t));
                }
                LambdaOplusStep::Oplus(parts) => {
                    tasks.push(Task::Sum(parts.len()));
                    tasks.extend(parts.into_iter().rev().map(Task::Expand));
                }
            },
            Task::Lambda { i, root } => {
                let inner = values.pop().expect("operand built");
                values.push(if i == root { op1(&inner) } else { op2(&inner, i + 1)? });
            }
            Task::Sum(k) => {
                let parts = values.split_off(values.len() - k);
                values.push(op3_unchecked(&parts));
            }
        }
    }
    Ok(values.pop().expect("result built"))
}

/// Splits a reducible map into its irreducible parts, in `⊕` order.
fn split_op3(m: &BicubicMap, a: &Analysis) -> Vec<BicubicMap> {
    let f = &a.faces;
    let r3 = f.face_of[m.root as usize];
    let s1 = f.face_of[m.r_inv(m.a(m.root)) as usize];
    let l: Vec<u32> =
        f.orbits[r3 as usize].iter().copied().filter(|&d| f.face_of[m.a(d) as usize] == s1).collect();
    let k = l.len();
    let mut alpha = m.alpha.clone();
    for j in 0..k {
        let (x, y) = (l[j], m.a(l[(j + k - 1) % k]));
        alpha[x as usize] = y;
        alpha[y as usize] = x;
    }
    let mut parts: Vec<BicubicMap> = l[1..]
        .iter()
        .map(|&p| relabel_component(&alpha, &m.rot, alpha[m.r_inv(p) as usize]))
        .collect();
    parts.push(relabel_component(&alpha, &m.rot, m.root));
    parts
}

/// The tree of a valid map.
pub fn to_tree(m: &BicubicMap) -> Result<BetaTree, MapError> {
    let violations = validate_map(m);
    if !violations.is_empty() {
        return Err(MapError::Invalid(violations));
    }
    enum Task {
        Expand(BicubicMap),
        Lambda(Option<u32>),
        Sum(usize),
    }
    let mut tasks = vec![Task::Expand(m.clone())];
    let mut values: Vec<BetaTree> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Expand(map) => {
                if map.dart_count() == 6 {
                    values.push(BetaTree::edge());
                    continue;
                }
                let a = map.analyse();
                let stats = stats_of(&map, &a);
                if stats.s1r3 > 1 {
                    let parts = split_op3(&map, &a);
                    tasks.push(Task::Sum(parts.len()));
                    tasks.extend(parts.into_iter().rev().map(Task::Expand));
                    continue;
                }
                let root = map.root;
                let x = map.r(map.a(root));
                let y = map.r(x);
                let mut alpha = map.alpha.clone();
                let (inner, i) = if a.vertices.vertex_of[map.a(x) as usize] == a.vertices.vertex_of[map.a(y) as usize] {
                    // Undo (1): the far end of the digon leads back to s0.
                    let b_lo = map.a(x);
                    let b0 = map.r(b_lo);
                    let s0 = map.a(b0);
                    alpha[root as usize] = s0;
                    alpha[s0 as usize] = root;
                    (relabel_component(&alpha, &map.rot, root), None)
                } else {
                    // Undo (2).
                    let b_r = map.a(root);
                    let b_p2 = map.r(b_r);
                    let b_a = map.r(b_p2);
                    let a_b = map.a(b_a);
                    let a_p1 = map.r(a_b);
                    let a_s = map.r(a_p1);
                    let (s0, e_b, e_w) = (map.a(a_s), map.a(b_p2), map.a(a_p1));
                    if [s0, e_b, e_w].iter().any(|&d| a.vertices.vertex_of[d as usize] == a.vertices.vertex_of[a_b as usize]) {
                        return Err(MapError::Undecomposable("root edge pattern"));
                    }
                    alpha[root as usize] = s0;
                    alpha[s0 as usize] = root;
                    alpha[e_b as usize] = e_w;
                    alpha[e_w as usize] = e_b;
                    (relabel_component(&alpha, &map.rot, root), Some(stats.f1r3))
                };
                if inner.dart_count() + 6 != map.dart_count() {
                    return Err(MapError::Undecomposable("removal disconnected the map"));
                }
                tasks.push(Task::Lambda(i));
                tasks.push(Task::Expand(inner));
            }
            Task::Lambda(target) => {
                let t = values.pop().expect("operand built");
                let i = match target {
                    None => t.root(),
                    Some(i) => i - 1,
                };
                values.push(algebra::lambda_op(i, &t).map_err(|_| MapError::Undecomposable("label out of range"))?);
            }
            Task::Sum(k) => {
                let parts = values.split_off(values.len() - k);
                values.push(algebra::oplus_all(&parts).expect("nontrivial parts"));
            }
        }
    }
    Ok(values.pop().expect("result built"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::trees;
    use crate::tree::parse_tree;

    const EXAMPLE: &str = "(4 (0) (0) (1 (0)) (2 (1 (3 (2 (1 (0))) (0)))))";

    fn t(s: &str) -> BetaTree {
        parse_tree(s).unwrap()
    }

    fn stats(f1r3: u32, f3r2: u32, b: u32, s1r3: u32, one: u32) -> MapStats {
        MapStats { f1r3, f3r2, b, s1r3, one }
    }

    #[test]
    fn theta_is_valid() {
        let m = BicubicMap::theta();
        assert!(validate_map(&m).is_empty());
        assert_eq!((m.vertex_count(), m.edge_count(), m.faces().orbits.len()), (2, 3, 3));
        assert_eq!(m.statistics(), stats(1, 1, 1, 1, 1));
        assert_eq!(m.canonical_form(), m.canonical_form());
        assert_eq!(to_tree(&m).unwrap(), BetaTree::edge());
        assert_eq!(to_map(&BetaTree::edge()).unwrap(), m);
    }

    #[test]
    fn operations_update_statistics() {
        let m = BicubicMap::theta();
        let m1 = op1(&m);
        assert!(validate_map(&m1).is_empty());
        assert_eq!(m1.vertex_count(), 4);
        assert_eq!(m1.statistics().f1r3, 2);
        assert_eq!(m1.statistics().b, 1);
        assert_eq!(m1.statistics().s1r3, 1);

        let m2 = op2(&m, 1).unwrap();
        assert!(validate_map(&m2).is_empty());
        assert_eq!(m2.statistics().f1r3, 1);
        assert_eq!(m2.statistics().b, 2);
        assert!(matches!(op2(&m, 2), Err(MapError::IndexOutOfRange { index: 2, max: 1 })));

        let m3 = op3(&[m.clone(), m.clone()]).unwrap();
        assert!(validate_map(&m3).is_empty());
        assert_eq!(m3.vertex_count(), 4);
        assert_eq!(m3.statistics().s1r3, 2);
        assert_eq!(to_tree(&m3).unwrap(), t("(1 (0) (0))"));
        assert_eq!(op3(core::slice::from_ref(&m)), Err(MapError::TooFewParts));
        assert_eq!(op3(&[m3.clone(), m.clone()]), Err(MapError::Reducible));
    }

    #[test]
    fn three_maps_on_four_vertices() {
        let forms: BTreeSet<BicubicMap> = trees(3).map(|u| to_map(&u).unwrap().canonical_form()).collect();
        assert_eq!(forms.len(), 3);
        for u in trees(3) {
            assert_eq!(to_tree(&to_map(&u).unwrap()).unwrap(), u);
        }
    }

    #[test]
    fn example_map() {
        let m = to_map(&t(EXAMPLE)).unwrap();
        assert_eq!(m.vertex_count(), 22);
        assert_eq!(m.statistics(), stats(4, 2, 1, 4, 6));
        assert_eq!(to_tree(&m).unwrap(), t(EXAMPLE));
    }

    #[test]
    fn phi_cycles_with_period_three() {
        let m = to_map(&t(EXAMPLE)).unwrap();
        let m3 = m.phi().phi().phi();
        assert_eq!(m3, m);
        assert_eq!(m.phi().statistics().f1r3, m.statistics().f3r2);
        assert!(validate_map(&m.phi()).is_empty());
    }

    #[test]
    fn violations_are_reported() {
        // K4 is cubic and planar but not bipartite.
        // Vertices 0..4, darts 3v..3v+3, dart 3v+k goes to the k-th other vertex.
        let mut alpha = vec![0u32; 12];
        let others = |v: u32| -> [u32; 3] {
            let mut o = [0; 3];
            let mut k = 0;
            for w in 0..4 {
                if w != v {
                    o[k] = w;
                    k += 1;
                }
            }
            o
        };
        for v in 0..4u32 {
            for (k, w) in others(v).into_iter().enumerate() {
                let back = others(w).iter().position(|&x| x == v).unwrap() as u32;
                alpha[(3 * v + k as u32) as usize] = 3 * w + back;
            }
        }
        let rot: Vec<u32> = (0..12u32).map(|d| 3 * (d / 3) + (d + 1) % 3).collect();
        let err = BicubicMap::new(alpha, rot, 0).unwrap_err();
        let MapError::Invalid(v) = err else { panic!() };
        assert!(v.contains(&MapViolation::NotBipartite), "{v:?}");

        let bad = BicubicMap::new(vec![1, 0], vec![0, 1], 0).unwrap_err();
        assert!(matches!(bad, MapError::Invalid(v) if v.iter().any(|x| matches!(x, MapViolation::NotCubic { .. }))));

        let two = op3_unchecked(&[BicubicMap::theta(), BicubicMap::theta()]);
        let mut alpha = BicubicMap::theta().alpha;
        alpha.extend(BicubicMap::theta().alpha.iter().map(|d| d + 6));
        let mut rot = BicubicMap::theta().rot;
        rot.extend(BicubicMap::theta().rot.iter().map(|d| d + 6));
        let err = BicubicMap::new(alpha, rot, 0).unwrap_err();
        assert!(matches!(err, MapError::Invalid(v) if v.contains(&MapViolation::Disconnected { components: 2 })));
        assert!(validate_map(&two).is_empty());
    }

    #[test]
    fn bijection_on_small_trees() {
        for n in 2..=6 {
            let mut forms = BTreeSet::new();
            for u in trees(n) {
                let m = to_map(&u).unwrap();
                assert!(validate_map(&m).is_empty(), "{u}");
                assert_eq!(to_tree(&m).unwrap(), u);
                let s = u.statistics();
                let ms = m.statistics();
                assert_eq!((s.exc, s.root, s.rmod, s.rzero, s.sub), (ms.one, ms.f1r3, ms.f3r2, ms.b, ms.s1r3), "{u}");
                forms.insert(m.canonical_form());
            }
            assert_eq!(Some(num_bigint::BigUint::from(forms.len())), crate::enumerate::tutte_count(n - 1));
        }
    }
}
