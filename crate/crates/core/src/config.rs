//! Finite windows of the configuration space `2^E`.
//!
//! Edges are stored undirected: the symmetric pair `(g, s·g)`, `(s·g, g)` is
//! one [`EdgeId`] whose direction is taken from the orientation subset `S⁺`.
//! A [`Configuration`] is a bitset over the deterministic edge order of a
//! [`Window`], together with the right translation carried by the shift
//! action.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// The undirected edge `{base, s·base}` with `s` the `dir`-th element of `S⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    pub base: GroupElement,
    pub dir: usize,
}

impl EdgeId {
    pub fn new(base: GroupElement, dir: usize) -> Self {
        EdgeId { base, dir }
    }

    /// The endpoint `s·base`.
    pub fn head(&self, spec: &GroupSpec) -> GroupElement {
        spec.mul(spec.positive_generator(self.dir), &self.base)
    }

    pub fn endpoints(&self, spec: &GroupSpec) -> (GroupElement, GroupElement) {
        (self.base.clone(), self.head(spec))
    }

    /// Right translation `{a, b} ↦ {a·t, b·t}`. The direction is unchanged
    /// because `s·a·t = s·(a·t)`.
    pub fn translate(&self, spec: &GroupSpec, t: &GroupElement) -> EdgeId {
        EdgeId {
            base: spec.mul(&self.base, t),
            dir: self.dir,
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, +{})", self.base, self.dir)
    }
}

/// Canonical undirected edge between adjacent vertices `a` and `b`.
pub fn canonical_edge(spec: &GroupSpec, a: &GroupElement, b: &GroupElement) -> Result<EdgeId> {
    if !spec.contains(a) || !spec.contains(b) {
        return Err(Error::usage(format!("{a} or {b} is not in {}", spec.id())));
    }
    let forward = spec.mul(b, &spec.inverse(a));
    if let Some(dir) = spec.positive_index(&forward) {
        return Ok(EdgeId::new(a.clone(), dir));
    }
    if let Some(dir) = spec.positive_index(&spec.inverse(&forward)) {
        return Ok(EdgeId::new(b.clone(), dir));
    }
    Err(Error::usage(format!("{a} and {b} are not adjacent")))
}

/// The edge set `E_R` of the word ball of radius `R`, with dense indices for
/// vertices and edges.
///
/// Edges are ordered by the larger word length of their endpoints, then by
/// base and direction, so `E_r` is a prefix of `E_R` for `r ≤ R`.
#[derive(Debug)]
pub struct Window {
    spec: Arc<GroupSpec>,
    radius: u32,
    vertices: Vec<GroupElement>,
    lengths: Vec<u32>,
    vertex_index: HashMap<GroupElement, usize>,
    edges: Vec<EdgeId>,
    edge_ends: Vec<(usize, usize)>,
    edge_index: HashMap<EdgeId, usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Window {
    pub fn new(spec: Arc<GroupSpec>, radius: u32) -> Result<Self> {
        let vertices = spec.word_ball(radius)?;
        let lengths: Vec<u32> = vertices.iter().map(|g| spec.word_length(g) as u32).collect();
        let vertex_index: HashMap<GroupElement, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();

        let mut keyed = Vec::new();
        for (i, g) in vertices.iter().enumerate() {
            for dir in 0..spec.positive().len() {
                let head = spec.mul(spec.positive_generator(dir), g);
                if let Some(&j) = vertex_index.get(&head) {
                    let outer = lengths[i].max(lengths[j]);
                    keyed.push((outer, EdgeId::new(g.clone(), dir), i, j));
                }
            }
        }
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut edges = Vec::with_capacity(keyed.len());
        let mut edge_ends = Vec::with_capacity(keyed.len());
        let mut edge_index = HashMap::with_capacity(keyed.len());
        for (k, (_, e, i, j)) in keyed.into_iter().enumerate() {
            adjacency[i].push((j, k));
            adjacency[j].push((i, k));
            edge_index.insert(e.clone(), k);
            edges.push(e);
            edge_ends.push((i, j));
        }
        Ok(Window {
            spec,
            radius,
            vertices,
            lengths,
            vertex_index,
            edges,
            edge_ends,
            edge_index,
            adjacency,
        })
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges with both endpoints within word length `r`.
    pub fn edge_count_within(&self, r: u32) -> usize {
        self.edge_ends
            .iter()
            .take_while(|&&(i, j)| self.lengths[i].max(self.lengths[j]) <= r)
            .count()
    }

    pub(crate) fn vertex_index(&self, g: &GroupElement) -> Option<usize> {
        self.vertex_index.get(g).copied()
    }

    pub(crate) fn edge_index(&self, e: &EdgeId) -> Option<usize> {
        self.edge_index.get(e).copied()
    }

    pub(crate) fn length(&self, v: usize) -> u32 {
        self.lengths[v]
    }

    pub(crate) fn adjacency(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }
}

/// Builds the window of radius `R` around the identity.
pub fn window_edges(spec: &Arc<GroupSpec>, radius: u32) -> Result<Arc<Window>> {
    Window::new(Arc::clone(spec), radius).map(Arc::new)
}

/// A configuration `ω` restricted to a (possibly translated) window.
///
/// The actual vertex set is `{v·offset : v ∈ word_ball(R)}`; the open edges
/// are the window edges whose bit is set, translated the same way.
#[derive(Clone, Debug)]
pub struct Configuration {
    window: Arc<Window>,
    offset: GroupElement,
    open: FixedBitSet,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.window.spec == other.window.spec
            && self.window.radius == other.window.radius
            && self.offset == other.offset
            && self.open == other.open
    }
}

impl Eq for Configuration {}

impl Configuration {
    pub fn empty(window: &Arc<Window>) -> Self {
        Configuration {
            window: Arc::clone(window),
            offset: window.spec.identity(),
            open: FixedBitSet::with_capacity(window.edge_count()),
        }
    }

    pub fn full(window: &Arc<Window>) -> Self {
        let mut c = Self::empty(window);
        c.open.insert_range(..);
        c
    }

    pub(crate) fn from_bits(window: &Arc<Window>, open: FixedBitSet) -> Self {
        debug_assert_eq!(open.len(), window.edge_count());
        Configuration {
            window: Arc::clone(window),
            offset: window.spec.identity(),
            open,
        }
    }

    /// Configuration on the untranslated window with the given edges open.
    pub fn from_edges<'a>(
        window: &Arc<Window>,
        edges: impl IntoIterator<Item = &'a EdgeId>,
    ) -> Result<Self> {
        Self::empty(window).insert(edges)
    }

    /// Same window and frame, different open set.
    pub(crate) fn with_bits(&self, open: FixedBitSet) -> Configuration {
        debug_assert_eq!(open.len(), self.window.edge_count());
        Configuration {
            window: Arc::clone(&self.window),
            offset: self.offset.clone(),
            open,
        }
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.window.spec
    }

    pub fn radius(&self) -> u32 {
        self.window.radius
    }

    /// Right translation of the window frame; identity for fresh windows.
    pub fn offset(&self) -> &GroupElement {
        &self.offset
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.open
    }

    pub fn open_count(&self) -> usize {
        self.open.count_ones(..)
    }

    pub(crate) fn is_open_index(&self, k: usize) -> bool {
        self.open.contains(k)
    }

    /// Window index of an actual vertex.
    pub(crate) fn frame_vertex(&self, g: &GroupElement) -> Option<usize> {
        let spec = &self.window.spec;
        if !spec.contains(g) {
            return None;
        }
        self.window
            .vertex_index(&spec.mul(g, &spec.inverse(&self.offset)))
    }

    /// Window index of an actual edge.
    pub(crate) fn frame_edge(&self, e: &EdgeId) -> Option<usize> {
        let spec = &self.window.spec;
        if !spec.contains(&e.base) || e.dir >= spec.positive().len() {
            return None;
        }
        self.window
            .edge_index(&e.translate(spec, &spec.inverse(&self.offset)))
    }

    /// Actual vertex for a window index.
    pub(crate) fn actual_vertex(&self, v: usize) -> GroupElement {
        self.window.spec.mul(&self.window.vertices[v], &self.offset)
    }

    pub(crate) fn actual_edge(&self, k: usize) -> EdgeId {
        self.window.edges[k].translate(&self.window.spec, &self.offset)
    }

    pub fn contains_vertex(&self, g: &GroupElement) -> bool {
        self.frame_vertex(g).is_some()
    }

    pub fn contains_edge(&self, e: &EdgeId) -> bool {
        self.frame_edge(e).is_some()
    }

    pub fn is_open(&self, e: &EdgeId) -> bool {
        self.frame_edge(e).is_some_and(|k| self.open.contains(k))
    }

    /// All edges of the (translated) window, in window order.
    pub fn window_edges(&self) -> Vec<EdgeId> {
        (0..self.window.edge_count()).map(|k| self.actual_edge(k)).collect()
    }

    /// Open edges in window order.
    pub fn open_edges(&self) -> Vec<EdgeId> {
        self.open.ones().map(|k| self.actual_edge(k)).collect()
    }

    /// The shift action `g.ω = ω·g⁻¹`: every open edge `{a, b}` moves to
    /// `{a·g⁻¹, b·g⁻¹}` and the window frame moves with it.
    pub fn shift(&self, g: &GroupElement) -> Result<Configuration> {
        let spec = &self.window.spec;
        if !spec.contains(g) {
            return Err(Error::usage(format!("{g} is not an element of {}", spec.id())));
        }
        Ok(Configuration {
            window: Arc::clone(&self.window),
            offset: spec.mul(&self.offset, &spec.inverse(g)),
            open: self.open.clone(),
        })
    }

    /// The insertion map `i_F(ω) = ω ∪ F`.
    pub fn insert<'a>(&self, edges: impl IntoIterator<Item = &'a EdgeId>) -> Result<Configuration> {
        let mut out = self.clone();
        for e in edges {
            let k = self
                .frame_edge(e)
                .ok_or_else(|| Error::usage(format!("edge {e} lies outside the window")))?;
            out.open.insert(k);
        }
        Ok(out)
    }

    /// Membership in the cylinder `U_F = {ω : F ⊆ ω}`.
    pub fn cylinder_contains<'a>(&self, edges: impl IntoIterator<Item = &'a EdgeId>) -> bool {
        edges.into_iter().all(|e| self.is_open(e))
    }
}
