//! The fs-relation multigraph: one vertex per item that is some applicant's
//! first or second item, one edge per applicant joining those two items.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{validate, Applicant, Category, ReducedInstance, Roles};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeClass {
    E1,
    E2,
}

impl EdgeClass {
    pub fn category(self) -> Category {
        match self {
            EdgeClass::E1 => Category::A1,
            EdgeClass::E2 => Category::A2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub item: usize,
    pub roles: Roles,
}

/// Edge of applicant `applicant` (index within its category). `f` and `s`
/// are vertex indices of its f-item and s-item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: usize,
    pub class: EdgeClass,
    pub applicant: usize,
    pub f: usize,
    pub s: usize,
}

impl Edge {
    pub fn applicant(&self) -> Applicant {
        Applicant {
            category: self.class.category(),
            index: self.applicant,
        }
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.f {
            self.s
        } else {
            debug_assert_eq!(v, self.s);
            self.f
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.f == v || self.s == v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentClass {
    Tree,
    Unicyclic,
    Multicyclic,
}

impl ComponentClass {
    pub fn from_counts(vertices: usize, edges: usize) -> Self {
        match edges.cmp(&vertices) {
            std::cmp::Ordering::Less => ComponentClass::Tree,
            std::cmp::Ordering::Equal => ComponentClass::Unicyclic,
            std::cmp::Ordering::Greater => ComponentClass::Multicyclic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Vertex indices, ascending (so ascending item ids).
    pub vertices: Vec<usize>,
    /// Edge ids, ascending.
    pub edges: Vec<usize>,
    pub class: ComponentClass,
}

#[derive(Debug, Clone)]
pub struct FsGraph {
    m: usize,
    n1: usize,
    n2: usize,
    vertices: Vec<Vertex>,
    index: HashMap<usize, usize>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    components: Vec<Component>,
    component_of: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Builds the graph. Edge ids are `0..n1` for A1 applicants in order, then
/// `n1..n1+n2` for A2 applicants.
pub fn build(reduced: &ReducedInstance) -> Result<FsGraph> {
    let violations = validate(reduced);
    if !violations.is_empty() {
        return Err(Error::InvalidInstance(violations));
    }
    let roles = reduced.roles();
    let vertices: Vec<Vertex> = roles
        .iter()
        .enumerate()
        .filter(|(_, r)| r.any())
        .map(|(item, &roles)| Vertex { item, roles })
        .collect();
    let index: HashMap<usize, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.item, i))
        .collect();

    let mut edges = Vec::with_capacity(reduced.n());
    let classes = [
        (EdgeClass::E1, reduced.f1(), reduced.s1()),
        (EdgeClass::E2, reduced.f2(), reduced.s2()),
    ];
    for (class, fs, ss) in classes {
        for (applicant, (&f, &s)) in fs.iter().zip(ss).enumerate() {
            edges.push(Edge {
                id: edges.len(),
                class,
                applicant,
                f: index[&f],
                s: index[&s],
            });
        }
    }

    let mut adjacency = vec![Vec::new(); vertices.len()];
    let mut uf = UnionFind::new(vertices.len());
    for e in &edges {
        adjacency[e.f].push(e.id);
        adjacency[e.s].push(e.id);
        uf.union(e.f, e.s);
    }

    // Components ordered by their smallest vertex index.
    let mut component_of = vec![usize::MAX; vertices.len()];
    let mut root_to_component = HashMap::new();
    let mut components: Vec<Component> = Vec::new();
    for (v, slot) in component_of.iter_mut().enumerate() {
        let root = uf.find(v);
        let c = *root_to_component.entry(root).or_insert_with(|| {
            components.push(Component {
                vertices: Vec::new(),
                edges: Vec::new(),
                class: ComponentClass::Tree,
            });
            components.len() - 1
        });
        *slot = c;
        components[c].vertices.push(v);
    }
    for e in &edges {
        components[component_of[e.f]].edges.push(e.id);
    }
    for c in &mut components {
        c.class = ComponentClass::from_counts(c.vertices.len(), c.edges.len());
    }

    Ok(FsGraph {
        m: reduced.m(),
        n1: reduced.n1(),
        n2: reduced.n2(),
        vertices,
        index,
        edges,
        adjacency,
        components,
        component_of,
    })
}

impl FsGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Vertex count `M`.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn item(&self, v: usize) -> usize {
        self.vertices[v].item
    }

    pub fn vertex_of_item(&self, item: usize) -> Option<usize> {
        self.index.get(&item).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    /// Edge id of the applicant's edge.
    pub fn edge_of(&self, applicant: Applicant) -> usize {
        match applicant.category {
            Category::A1 => applicant.index,
            Category::A2 => self.n1 + applicant.index,
        }
    }

    /// Vertices and edges of the unique cycle of a unicyclic component,
    /// in walk order: `edges[i]` joins `vertices[i]` and
    /// `vertices[(i + 1) % len]`.
    pub fn unicyclic_cycle(&self, component: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let comp = &self.components[component];
        if comp.class != ComponentClass::Unicyclic {
            return None;
        }
        let core = self.cycle_core(comp);
        let start = *comp.vertices.iter().find(|&&v| core[v])?;
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        let mut current = start;
        let mut previous_edge = usize::MAX;
        loop {
            let next_edge = *self.adjacency[current]
                .iter()
                .find(|&&e| e != previous_edge && core[self.edges[e].other(current)])?;
            let next = self.edges[next_edge].other(current);
            edges.push(next_edge);
            if next == start {
                break;
            }
            vertices.push(next);
            previous_edge = next_edge;
            current = next;
        }
        Some((vertices, edges))
    }

    // Marks the vertices left after repeatedly deleting degree-1 vertices.
    fn cycle_core(&self, comp: &Component) -> Vec<bool> {
        let mut alive = vec![false; self.vertices.len()];
        let mut degree = vec![0usize; self.vertices.len()];
        for &v in &comp.vertices {
            alive[v] = true;
            degree[v] = self.adjacency[v].len();
        }
        let mut stack: Vec<usize> = comp
            .vertices
            .iter()
            .copied()
            .filter(|&v| degree[v] <= 1)
            .collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &e in &self.adjacency[v] {
                let u = self.edges[e].other(v);
                if alive[u] {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        stack.push(u);
                    }
                }
            }
        }
        alive
    }

    /// Debug rendering in DOT format.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph fs {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {} [label=\"{} [{}]\"];", v.item, v.item, v.roles);
        }
        for e in &self.edges {
            let (name, style) = match e.class {
                EdgeClass::E1 => (format!("x{}", e.applicant), "solid"),
                EdgeClass::E2 => (format!("y{}", e.applicant), "dashed"),
            };
            let _ = writeln!(
                out,
                "  {} -- {} [label=\"{:?} {}\", style={}];",
                self.item(e.f),
                self.item(e.s),
                e.class,
                name,
                style
            );
        }
        out.push_str("}\n");
        out
    }
}

/// One independent cycle of the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleRecord {
    pub component: usize,
    /// Exact length for unicyclic components; `None` inside multicyclic ones.
    pub length: Option<usize>,
}

/// `E_c - V_c + 1` entries per component.
pub fn cycle_census(graph: &FsGraph) -> Vec<CycleRecord> {
    let mut out = Vec::new();
    for (c, comp) in graph.components.iter().enumerate() {
        match comp.class {
            ComponentClass::Tree => {}
            ComponentClass::Unicyclic => {
                let (vs, _) = graph.unicyclic_cycle(c).expect("unicyclic component has a cycle");
                out.push(CycleRecord {
                    component: c,
                    length: Some(vs.len()),
                });
            }
            ComponentClass::Multicyclic => {
                let rank = comp.edges.len() + 1 - comp.vertices.len();
                out.extend((0..rank).map(|_| CycleRecord {
                    component: c,
                    length: None,
                }));
            }
        }
    }
    out
}
