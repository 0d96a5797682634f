//! Well-formed matchings.
//!
//! Existence is decided as an edge orientation problem on the fs-relation
//! graph: every edge picks a head among its endpoints, every vertex absorbs
//! at most one edge, every `F1 ∪ F2` vertex absorbs exactly one, and an `E1`
//! edge may never point into an `F2` vertex. [`solve_orientation`] reduces
//! this to a flow with lower bounds. [`find_witness`] independently reads
//! the component structure and extracts an obstruction pattern, so the two
//! routes can be checked against each other.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::BoundedFlow;
use crate::fsgraph::{build, ComponentClass, EdgeClass, FsGraph};
use crate::instance::{Applicant, Category, ReducedInstance};

/// Head item of every edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub head: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum OrientationViolation {
    WrongLength { expected: usize, got: usize },
    NotAnEndpoint { edge: usize, head: usize },
    InDegree { item: usize, count: usize },
    F1WithoutE1 { item: usize },
    F2WithoutE2 { item: usize },
}

impl fmt::Display for OrientationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::WrongLength { expected, got } => {
                write!(f, "orientation covers {got} edges, graph has {expected}")
            }
            Self::NotAnEndpoint { edge, head } => {
                write!(f, "head {head} of edge {edge} is not one of its endpoints")
            }
            Self::InDegree { item, count } => write!(f, "item {item} has {count} incoming edges"),
            Self::F1WithoutE1 { item } => write!(f, "F1 item {item} has no incoming E1 edge"),
            Self::F2WithoutE2 { item } => write!(f, "F2 item {item} has no incoming E2 edge"),
        }
    }
}

/// Every violated orientation condition; empty means the orientation is valid.
pub fn check_orientation(graph: &FsGraph, orientation: &Orientation) -> Vec<OrientationViolation> {
    let mut out = Vec::new();
    if orientation.head.len() != graph.edges().len() {
        out.push(OrientationViolation::WrongLength {
            expected: graph.edges().len(),
            got: orientation.head.len(),
        });
        return out;
    }
    let mut incoming: Vec<Vec<EdgeClass>> = vec![Vec::new(); graph.order()];
    for (e, &head) in graph.edges().iter().zip(&orientation.head) {
        match graph.vertex_of_item(head) {
            Some(v) if e.touches(v) => incoming[v].push(e.class),
            _ => out.push(OrientationViolation::NotAnEndpoint { edge: e.id, head }),
        }
    }
    for (v, classes) in incoming.iter().enumerate() {
        let vertex = graph.vertex(v);
        if classes.len() > 1 {
            out.push(OrientationViolation::InDegree {
                item: vertex.item,
                count: classes.len(),
            });
        }
        if vertex.roles.in_f1 && !classes.contains(&EdgeClass::E1) {
            out.push(OrientationViolation::F1WithoutE1 { item: vertex.item });
        }
        if vertex.roles.in_f2 && !classes.contains(&EdgeClass::E2) {
            out.push(OrientationViolation::F2WithoutE2 { item: vertex.item });
        }
    }
    out
}

/// Feasible orientation of one component as `(edge id, head vertex)` pairs.
pub fn solve_component(graph: &FsGraph, component: usize) -> Option<Vec<(usize, usize)>> {
    let comp = &graph.components()[component];
    const SOURCE: usize = 0;
    const SINK: usize = 1;
    let edge_node = |i: usize| 2 + i;
    let vertex_node: HashMap<usize, usize> = comp
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, 2 + comp.edges.len() + i))
        .collect();
    let mut net = BoundedFlow::new(2 + comp.edges.len() + comp.vertices.len(), SOURCE, SINK);

    let mut choices = Vec::new();
    for (i, &id) in comp.edges.iter().enumerate() {
        net.add_arc(SOURCE, edge_node(i), 1, 1);
        let e = graph.edge(id);
        for v in [e.f, e.s] {
            if e.class == EdgeClass::E1 && graph.vertex(v).roles.in_f2 {
                continue;
            }
            let handle = net.add_arc(edge_node(i), vertex_node[&v], 0, 1);
            choices.push((id, v, handle));
        }
    }
    for &v in &comp.vertices {
        let lower = i64::from(graph.vertex(v).roles.is_f());
        net.add_arc(vertex_node[&v], SINK, lower, 1);
    }
    if !net.solve() {
        return None;
    }
    Some(
        choices
            .into_iter()
            .filter(|&(_, _, h)| net.flow(h) == 1)
            .map(|(id, v, _)| (id, v))
            .collect(),
    )
}

/// An orientation meeting all three conditions, if one exists.
pub fn solve_orientation(graph: &FsGraph) -> Option<Orientation> {
    let mut head = vec![usize::MAX; graph.edges().len()];
    for c in 0..graph.components().len() {
        for (edge, v) in solve_component(graph, c)? {
            head[edge] = graph.item(v);
        }
    }
    Some(Orientation { head })
}

/// Applicant-to-item assignment, A1 and A2 indexed separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
}

impl Matching {
    pub fn get(&self, applicant: Applicant) -> usize {
        match applicant.category {
            Category::A1 => self.a1[applicant.index],
            Category::A2 => self.a2[applicant.index],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Applicant, usize)> + '_ {
        let a1 = self.a1.iter().enumerate().map(|(index, &p)| {
            (
                Applicant {
                    category: Category::A1,
                    index,
                },
                p,
            )
        });
        let a2 = self.a2.iter().enumerate().map(|(index, &p)| {
            (
                Applicant {
                    category: Category::A2,
                    index,
                },
                p,
            )
        });
        a1.chain(a2)
    }

    /// Items in applicant order, A1 first.
    pub fn flat(&self) -> Vec<usize> {
        self.a1.iter().chain(&self.a2).copied().collect()
    }
}

/// Matching induced by a valid orientation: each applicant gets the head of
/// its edge.
pub fn to_matching(orientation: &Orientation, reduced: &ReducedInstance) -> Result<Matching> {
    let graph = build(reduced)?;
    let violations = check_orientation(&graph, orientation);
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InconsistentOrientation(text.join("; ")));
    }
    let n1 = reduced.n1();
    Ok(Matching {
        a1: orientation.head[..n1].to_vec(),
        a2: orientation.head[n1..].to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum WellFormedViolation {
    WrongSize { category: Category, expected: usize, got: usize },
    A1NotFOrS { index: usize, item: usize },
    A2NotFOrS { index: usize, item: usize },
    F1NotTakenByNamer { item: usize },
    F2NotTakenByNamer { item: usize },
    Shared { item: usize, applicants: Vec<Applicant> },
}

impl fmt::Display for WellFormedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongSize { category, expected, got } => {
                write!(f, "{category:?} has {got} assignments, expected {expected}")
            }
            Self::A1NotFOrS { index, item } => {
                write!(f, "x{index} matched to {item}, neither f1 nor s1 (condition 1)")
            }
            Self::A2NotFOrS { index, item } => {
                write!(f, "y{index} matched to {item}, neither f2 nor s2 (condition 2)")
            }
            Self::F1NotTakenByNamer { item } => {
                write!(f, "F1 item {item} not matched to an A1 applicant naming it first (condition 3)")
            }
            Self::F2NotTakenByNamer { item } => {
                write!(f, "F2 item {item} not matched to an A2 applicant naming it first (condition 4)")
            }
            Self::Shared { item, applicants } => {
                let names: Vec<String> = applicants.iter().map(|a| a.to_string()).collect();
                write!(f, "item {item} assigned to {}", names.join(", "))
            }
        }
    }
}

/// Checks the four well-formedness conditions plus injectivity.
pub fn verify_well_formed(matching: &Matching, reduced: &ReducedInstance) -> Vec<WellFormedViolation> {
    let mut out = Vec::new();
    for (category, expected, got) in [
        (Category::A1, reduced.n1(), matching.a1.len()),
        (Category::A2, reduced.n2(), matching.a2.len()),
    ] {
        if expected != got {
            out.push(WellFormedViolation::WrongSize {
                category,
                expected,
                got,
            });
        }
    }
    if !out.is_empty() {
        return out;
    }

    for (a, item) in matching.iter() {
        let (f, s) = reduced.items_of(a);
        if item != f && item != s {
            out.push(match a.category {
                Category::A1 => WellFormedViolation::A1NotFOrS { index: a.index, item },
                Category::A2 => WellFormedViolation::A2NotFOrS { index: a.index, item },
            });
        }
    }
    for p in reduced.set_f1() {
        let ok = (0..reduced.n1()).any(|i| reduced.f1()[i] == p && matching.a1[i] == p);
        if !ok {
            out.push(WellFormedViolation::F1NotTakenByNamer { item: p });
        }
    }
    for q in reduced.set_f2() {
        let ok = (0..reduced.n2()).any(|j| reduced.f2()[j] == q && matching.a2[j] == q);
        if !ok {
            out.push(WellFormedViolation::F2NotTakenByNamer { item: q });
        }
    }
    let mut holders: HashMap<usize, Vec<Applicant>> = HashMap::new();
    for (a, item) in matching.iter() {
        holders.entry(item).or_default().push(a);
    }
    let mut shared: Vec<_> = holders.into_iter().filter(|(_, v)| v.len() > 1).collect();
    shared.sort_by_key(|(item, _)| *item);
    out.extend(
        shared
            .into_iter()
            .map(|(item, applicants)| WellFormedViolation::Shared { item, applicants }),
    );
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessKind {
    G1,
    G2,
    G3,
}

/// An obstruction to orientability.
///
/// * `G1`: a walk `v1..vk` (items) with `edges[i]` joining `v(i+1)` and
///   `v(i+2)`; `(v1,v2)` and `(v(k-1),vk)` are E2 edges, `v2` and `v(k-1)`
///   lie in `S1 ∩ F2`, `(v2,v3)` and `(v(k-2),v(k-1))` are E1 edges.
/// * `G2`: a path `v1..vk` followed by a closed walk around a cycle through
///   `vk`, so `vertices` ends with `vk` again; `v2 ∈ S1 ∩ F2` with
///   `(v1,v2)` E2 and `(v2,v3)` E1.
/// * `G3`: vertex and edge sets (ascending) of a connected subgraph with two
///   independent cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Witness {
    /// A `G1` walk that closes on itself instead of being a simple path.
    ///
    /// This happens when the two E1 edges meet at a cycle whose remaining
    /// vertices are exhausted, e.g. the 4-cycle `f1 = [p, p]`, `s1 = [q, r]`,
    /// `f2 = [q, r]`, `s2 = [s, s]`.
    pub fn is_degenerate(&self) -> bool {
        if self.kind != WitnessKind::G1 {
            return false;
        }
        let distinct: BTreeSet<usize> = self.vertices.iter().copied().collect();
        distinct.len() != self.vertices.len()
    }
}

/// An obstruction in the first infeasible component (components scanned in
/// order of smallest item), or `None` when an orientation exists.
pub fn find_witness(graph: &FsGraph) -> Option<Witness> {
    (0..graph.components().len()).find_map(|c| component_witness(graph, c))
}

/// Obstruction inside one component, or `None` when it is orientable.
pub fn component_witness(graph: &FsGraph, component: usize) -> Option<Witness> {
    match graph.components()[component].class {
        ComponentClass::Multicyclic => Some(g3_witness(graph, component)),
        ComponentClass::Tree => tree_witness(graph, component),
        ComponentClass::Unicyclic => unicyclic_witness(graph, component),
    }
}

// E1 edges whose s-end is an F2 vertex. In any valid orientation such an
// edge points to its f-end.
fn forced_edges(graph: &FsGraph, component: usize) -> Vec<usize> {
    graph.components()[component]
        .edges
        .iter()
        .copied()
        .filter(|&id| {
            let e = graph.edge(id);
            e.class == EdgeClass::E1 && graph.vertex(e.s).roles.in_f2
        })
        .collect()
}

// Smallest-id E2 edge at an F2 vertex, preferring edges outside `avoid`.
fn e2_edge_at(graph: &FsGraph, v: usize, avoid: &[bool]) -> usize {
    let mut candidates = graph
        .incident(v)
        .iter()
        .copied()
        .filter(|&id| graph.edge(id).class == EdgeClass::E2);
    let all: Vec<usize> = candidates.by_ref().collect();
    all.iter()
        .copied()
        .find(|&id| !avoid[id])
        .or_else(|| all.first().copied())
        .expect("every F2 vertex carries an E2 edge")
}

// Vertices reachable from `start` without using edge `cut`.
fn side(graph: &FsGraph, start: usize, cut: usize) -> Vec<bool> {
    let mut seen = vec![false; graph.order()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &id in graph.incident(v) {
            if id == cut {
                continue;
            }
            let u = graph.edge(id).other(v);
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

// Parent edge of every vertex in the BFS forest grown from `roots`.
fn bfs_parents(graph: &FsGraph, roots: &[usize]) -> Vec<Option<usize>> {
    let mut parent = vec![None; graph.order()];
    let mut seen = vec![false; graph.order()];
    let mut queue = VecDeque::new();
    for &r in roots {
        seen[r] = true;
        queue.push_back(r);
    }
    while let Some(v) = queue.pop_front() {
        for &id in graph.incident(v) {
            let u = graph.edge(id).other(v);
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some(id);
                queue.push_back(u);
            }
        }
    }
    parent
}

fn g1_from_walk(graph: &FsGraph, walk: &[usize], walk_edges: &[usize]) -> Witness {
    Witness {
        kind: WitnessKind::G1,
        vertices: walk.iter().map(|&v| graph.item(v)).collect(),
        edges: walk_edges.to_vec(),
    }
}

// A tree is orientable iff some vertex outside F1 ∪ F2 can be the unique
// source, and every forced edge (p, u) needs the source on u's side. Those
// sides always share a non-F vertex unless two of them are disjoint, which
// is exactly a G1 path u_a, p_a, ..., p_b, u_b.
fn tree_witness(graph: &FsGraph, component: usize) -> Option<Witness> {
    let forced = forced_edges(graph, component);
    let sides: Vec<Vec<bool>> = forced
        .iter()
        .map(|&id| side(graph, graph.edge(id).s, id))
        .collect();
    for a in 0..forced.len() {
        for b in a + 1..forced.len() {
            let (ua, ub) = (graph.edge(forced[a]).s, graph.edge(forced[b]).s);
            if sides[a][ub] || sides[b][ua] {
                continue;
            }
            let parent = bfs_parents(graph, &[ua]);
            let mut path = vec![ub];
            let mut path_edges = Vec::new();
            let mut v = ub;
            while let Some(id) = parent[v] {
                path_edges.push(id);
                v = graph.edge(id).other(v);
                path.push(v);
            }
            path.reverse();
            path_edges.reverse();
            let none = vec![false; graph.edges().len()];
            let ea = e2_edge_at(graph, ua, &none);
            let eb = e2_edge_at(graph, ub, &none);
            let mut walk = vec![graph.edge(ea).other(ua)];
            walk.extend(&path);
            walk.push(graph.edge(eb).other(ub));
            let mut walk_edges = vec![ea];
            walk_edges.extend(&path_edges);
            walk_edges.push(eb);
            return Some(g1_from_walk(graph, &walk, &walk_edges));
        }
    }
    None
}

// A unicyclic component has in-degree exactly one everywhere: the cycle
// goes one way round and hanging trees point away from it. Infeasible iff a
// forced tree edge points toward the cycle (G2) or two forced cycle edges
// disagree on the direction (G1).
fn unicyclic_witness(graph: &FsGraph, component: usize) -> Option<Witness> {
    let (cycle, cycle_edges) = graph
        .unicyclic_cycle(component)
        .expect("unicyclic component has a cycle");
    let len = cycle.len();
    let mut on_cycle_edge = vec![false; graph.edges().len()];
    for &id in &cycle_edges {
        on_cycle_edge[id] = true;
    }
    let parent = bfs_parents(graph, &cycle);
    let forced = forced_edges(graph, component);

    // Forced tree edge whose f-end is the parent side.
    for &id in &forced {
        if on_cycle_edge[id] {
            continue;
        }
        let e = graph.edge(id);
        let u = e.s;
        if parent[u] != Some(id) {
            continue;
        }
        let e2 = e2_edge_at(graph, u, &on_cycle_edge);
        let mut path = vec![graph.edge(e2).other(u), u];
        let mut path_edges = vec![e2];
        let mut v = u;
        while let Some(pid) = parent[v] {
            path_edges.push(pid);
            v = graph.edge(pid).other(v);
            path.push(v);
        }
        let at = cycle.iter().position(|&c| c == v).expect("path ends on the cycle");
        let mut vertices: Vec<usize> = path.iter().map(|&x| graph.item(x)).collect();
        let mut edges = path_edges;
        for step in 1..=len {
            vertices.push(graph.item(cycle[(at + step) % len]));
            edges.push(cycle_edges[(at + step - 1) % len]);
        }
        return Some(Witness {
            kind: WitnessKind::G2,
            vertices,
            edges,
        });
    }

    // Direction demanded by each forced cycle edge: true when its f-end is
    // the next vertex in walk order.
    let demands: Vec<(usize, bool)> = (0..len)
        .filter(|&i| forced.contains(&cycle_edges[i]))
        .map(|i| (i, graph.edge(cycle_edges[i]).f == cycle[(i + 1) % len]))
        .collect();
    let k = demands.len();
    let (i, j) = (0..k)
        .map(|t| (demands[t], demands[(t + 1) % k]))
        .find(|&((_, di), (_, dj))| di && !dj)
        .map(|((i, _), (j, _))| (i, j))?;

    // Walk forward from u_i = cycle[i] to u_j = cycle[j + 1].
    let steps = (j + len - i) % len + 1;
    let mut walk: Vec<usize> = (0..=steps).map(|t| cycle[(i + t) % len]).collect();
    let mut walk_edges: Vec<usize> = (0..steps).map(|t| cycle_edges[(i + t) % len]).collect();
    let (ui, uj) = (walk[0], walk[steps]);
    let ei = e2_edge_at(graph, ui, &on_cycle_edge);
    let ej = if ui == uj {
        ei
    } else {
        e2_edge_at(graph, uj, &on_cycle_edge)
    };
    walk.insert(0, graph.edge(ei).other(ui));
    walk.push(graph.edge(ej).other(uj));
    walk_edges.insert(0, ei);
    walk_edges.push(ej);
    Some(g1_from_walk(graph, &walk, &walk_edges))
}

// Spanning tree plus its first two non-tree edges, joined by tree paths.
fn g3_witness(graph: &FsGraph, component: usize) -> Witness {
    let comp = &graph.components()[component];
    let root = comp.vertices[0];
    let parent = bfs_parents(graph, &[root]);
    let mut depth = vec![0usize; graph.order()];
    {
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &id in graph.incident(v) {
                let u = graph.edge(id).other(v);
                if parent[u] == Some(id) && u != root {
                    depth[u] = depth[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    let tree_edge: BTreeSet<usize> = comp.vertices.iter().filter_map(|&v| parent[v]).collect();
    let extra: Vec<usize> = comp
        .edges
        .iter()
        .copied()
        .filter(|id| !tree_edge.contains(id))
        .take(2)
        .collect();

    let tree_path = |mut a: usize, mut b: usize, out: &mut BTreeSet<usize>| {
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let id = parent[a].expect("non-root has a parent");
            out.insert(id);
            a = graph.edge(id).other(a);
        }
    };
    let (x, y) = (graph.edge(extra[0]), graph.edge(extra[1]));
    let mut edges: BTreeSet<usize> = extra.iter().copied().collect();
    tree_path(x.f, x.s, &mut edges);
    tree_path(y.f, y.s, &mut edges);
    tree_path(x.f, y.f, &mut edges);
    let vertices: BTreeSet<usize> = edges
        .iter()
        .flat_map(|&id| [graph.item(graph.edge(id).f), graph.item(graph.edge(id).s)])
        .collect();
    Witness {
        kind: WitnessKind::G3,
        vertices: vertices.into_iter().collect(),
        edges: edges.into_iter().collect(),
    }
}

/// Checks that `witness` occurs in `graph` as described on [`Witness`].
pub fn validate_witness(witness: &Witness, graph: &FsGraph) -> bool {
    let ne = graph.edges().len();
    if witness.edges.iter().any(|&id| id >= ne) {
        return false;
    }
    let Some(vs) = witness
        .vertices
        .iter()
        .map(|&item| graph.vertex_of_item(item))
        .collect::<Option<Vec<usize>>>()
    else {
        return false;
    };
    match witness.kind {
        WitnessKind::G1 => validate_g1(graph, &vs, &witness.edges),
        WitnessKind::G2 => validate_g2(graph, &vs, &witness.edges),
        WitnessKind::G3 => validate_g3(graph, &vs, &witness.edges),
    }
}

fn is_walk(graph: &FsGraph, vs: &[usize], es: &[usize]) -> bool {
    es.len() + 1 == vs.len()
        && es.iter().enumerate().all(|(i, &id)| {
            let e = graph.edge(id);
            (e.f == vs[i] && e.s == vs[i + 1]) || (e.s == vs[i] && e.f == vs[i + 1])
        })
}

fn all_distinct(xs: &[usize]) -> bool {
    xs.iter().collect::<BTreeSet<_>>().len() == xs.len()
}

fn in_s1_f2(graph: &FsGraph, v: usize) -> bool {
    let r = graph.vertex(v).roles;
    r.in_s1 && r.in_f2
}

fn validate_g1(graph: &FsGraph, vs: &[usize], es: &[usize]) -> bool {
    let k = vs.len();
    if k < 5 || !is_walk(graph, vs, es) {
        return false;
    }
    let class = |i: usize| graph.edge(es[i]).class;
    if class(0) != EdgeClass::E2
        || class(1) != EdgeClass::E1
        || class(k - 3) != EdgeClass::E1
        || class(k - 2) != EdgeClass::E2
        || !in_s1_f2(graph, vs[1])
        || !in_s1_f2(graph, vs[k - 2])
    {
        return false;
    }
    if all_distinct(vs) {
        return true;
    }
    // Closed variants: the interior v3..v(k-2) stays a simple path that
    // avoids the ends, and the two E1 edges remain distinct.
    let interior = &vs[2..k - 2];
    let ends = [vs[0], vs[1], vs[k - 2], vs[k - 1]];
    all_distinct(interior)
        && interior.iter().all(|v| !ends.contains(v))
        && all_distinct(&es[1..k - 2])
        && vs[0] == vs[k - 1]
        && vs[0] != vs[1]
        && (vs[1] != vs[k - 2] || all_distinct(&[vs[0], vs[1], vs[2]]))
        && (vs[1] == vs[k - 2] || es[0] != es[k - 2])
}

fn validate_g2(graph: &FsGraph, vs: &[usize], es: &[usize]) -> bool {
    let Some(&last) = vs.last() else {
        return false;
    };
    let j = vs.iter().position(|&v| v == last).expect("last is present");
    // Path v1..vk is vs[..=j], cycle is vs[j..].
    if j < 2 || vs.len() - 1 - j < 2 || !is_walk(graph, vs, es) {
        return false;
    }
    let (path, cycle) = (&vs[..=j], &vs[j..vs.len() - 1]);
    if !all_distinct(path) || !all_distinct(cycle) || !all_distinct(es) {
        return false;
    }
    if path[..j].iter().any(|v| cycle.contains(v)) {
        return false;
    }
    graph.edge(es[0]).class == EdgeClass::E2
        && in_s1_f2(graph, vs[1])
        && graph.edge(es[1]).class == EdgeClass::E1
}

fn validate_g3(graph: &FsGraph, vs: &[usize], es: &[usize]) -> bool {
    if vs.is_empty() || !all_distinct(vs) || !all_distinct(es) {
        return false;
    }
    let pos: HashMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut root: Vec<usize> = (0..vs.len()).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let mut touched = vec![false; vs.len()];
    for &id in es {
        let e = graph.edge(id);
        let (Some(&a), Some(&b)) = (pos.get(&e.f), pos.get(&e.s)) else {
            return false;
        };
        touched[a] = true;
        touched[b] = true;
        let (ra, rb) = (find(&mut root, a), find(&mut root, b));
        root[ra] = rb;
    }
    let r0 = find(&mut root, 0);
    let connected = (0..vs.len()).all(|i| find(&mut root, i) == r0);
    connected && touched.iter().all(|&t| t) && es.len() + 1 >= vs.len() + 2
}

/// Whether a 2-weighted popular matching exists; requires `w1 >= 2 w2`.
pub fn exists_2wpm(reduced: &ReducedInstance) -> Result<bool> {
    let w = reduced.weights();
    if !w.dominant() {
        return Err(Error::WeightsNotDominant {
            w1: w.w1(),
            w2: w.w2(),
        });
    }
    let graph = build(reduced)?;
    Ok(solve_orientation(&graph).is_some())
}

/// Result of the `check` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub feasible: bool,
    pub weights_dominant: bool,
    /// Items in applicant order, A1 first.
    pub matching: Option<Vec<usize>>,
    pub witness: Option<Witness>,
}

pub fn check(reduced: &ReducedInstance) -> Result<CheckReport> {
    let graph = build(reduced)?;
    let orientation = solve_orientation(&graph);
    let matching = match &orientation {
        Some(o) => Some(to_matching(o, reduced)?.flat()),
        None => None,
    };
    let witness = if orientation.is_some() {
        None
    } else {
        find_witness(&graph)
    };
    Ok(CheckReport {
        feasible: orientation.is_some(),
        weights_dominant: reduced.weights().dominant(),
        matching,
        witness,
    })
}
