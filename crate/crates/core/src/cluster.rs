//! Clusters, rooted balls and the ultrametric on rooted subgraphs.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::config::{Configuration, EdgeId};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::scalar::Real;

/// A finite connected subgraph of the Cayley graph containing the identity,
/// known exactly up to graph distance `truncation` from the root.
///
/// Equality, hashing and ordering use the labeled vertex and edge sets only.
#[derive(Clone, Debug)]
pub struct RootedGraph {
    spec: Arc<GroupSpec>,
    vertices: BTreeSet<GroupElement>,
    edges: BTreeSet<EdgeId>,
    truncation: u32,
}

impl PartialEq for RootedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for RootedGraph {}

impl Hash for RootedGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
        self.edges.hash(state);
    }
}

impl PartialOrd for RootedGraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootedGraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.vertices.len(), &self.vertices, &self.edges).cmp(&(
            other.vertices.len(),
            &other.vertices,
            &other.edges,
        ))
    }
}

impl RootedGraph {
    /// Validating constructor: the identity must be a vertex, every edge
    /// endpoint must be a vertex, and the graph must be connected.
    pub fn new(
        spec: Arc<GroupSpec>,
        vertices: BTreeSet<GroupElement>,
        edges: BTreeSet<EdgeId>,
        truncation: u32,
    ) -> Result<Self> {
        if !vertices.contains(&spec.identity()) {
            return Err(Error::usage("rooted graph must contain the identity"));
        }
        for e in &edges {
            let (a, b) = e.endpoints(&spec);
            if !vertices.contains(&a) || !vertices.contains(&b) {
                return Err(Error::usage(format!("edge {e} has an endpoint outside the vertex set")));
            }
        }
        let graph = RootedGraph {
            spec,
            vertices,
            edges,
            truncation,
        };
        if graph.distances().len() != graph.vertices.len() {
            return Err(Error::usage("rooted graph is not connected"));
        }
        Ok(graph)
    }

    /// The graph spanned by `edges` plus the root.
    pub fn from_edges(
        spec: Arc<GroupSpec>,
        edges: impl IntoIterator<Item = EdgeId>,
        truncation: u32,
    ) -> Result<Self> {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        let mut vertices = BTreeSet::from([spec.identity()]);
        for e in &edges {
            let (a, b) = e.endpoints(&spec);
            vertices.insert(a);
            vertices.insert(b);
        }
        Self::new(spec, vertices, edges, truncation)
    }

    pub fn single_vertex(spec: Arc<GroupSpec>, truncation: u32) -> Self {
        let root = spec.identity();
        RootedGraph {
            spec,
            vertices: BTreeSet::from([root]),
            edges: BTreeSet::new(),
            truncation,
        }
    }

    pub(crate) fn from_parts_unchecked(
        spec: Arc<GroupSpec>,
        vertices: BTreeSet<GroupElement>,
        edges: BTreeSet<EdgeId>,
        truncation: u32,
    ) -> Self {
        RootedGraph {
            spec,
            vertices,
            edges,
            truncation,
        }
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn vertices(&self) -> &BTreeSet<GroupElement> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn adjacency(&self) -> HashMap<&GroupElement, Vec<GroupElement>> {
        let mut adj: HashMap<&GroupElement, Vec<GroupElement>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for e in &self.edges {
            let (a, b) = e.endpoints(&self.spec);
            if let Some(list) = adj.get_mut(&a) {
                list.push(b.clone());
            }
            if let Some(list) = adj.get_mut(&b) {
                list.push(a);
            }
        }
        adj
    }

    /// Graph distances from the root, by BFS inside this graph.
    pub fn distances(&self) -> HashMap<GroupElement, u32> {
        let adj = self.adjacency();
        let root = self.spec.identity();
        let mut dist = HashMap::from([(root.clone(), 0u32)]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for u in &adj[&v] {
                if !dist.contains_key(u) {
                    dist.insert(u.clone(), d + 1);
                    queue.push_back(u.clone());
                }
            }
        }
        dist
    }

    /// The closed combinatorial ball of radius `r` around the root: vertices
    /// at graph distance at most `r` and every edge of this graph between two
    /// of them.
    pub fn ball(&self, r: u32) -> Result<RootedGraph> {
        if r > self.truncation {
            return Err(Error::Horizon {
                requested: r,
                truncation: self.truncation,
            });
        }
        let dist = self.distances();
        let vertices: BTreeSet<GroupElement> = self
            .vertices
            .iter()
            .filter(|v| dist.get(*v).is_some_and(|&d| d <= r))
            .cloned()
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| {
                let (a, b) = e.endpoints(&self.spec);
                vertices.contains(&a) && vertices.contains(&b)
            })
            .cloned()
            .collect();
        Ok(RootedGraph::from_parts_unchecked(
            Arc::clone(&self.spec),
            vertices,
            edges,
            r,
        ))
    }

    /// Right translation of every vertex and edge by `t`.
    pub fn translate(&self, t: &GroupElement) -> RootedGraph {
        let spec = &self.spec;
        RootedGraph {
            spec: Arc::clone(spec),
            vertices: self.vertices.iter().map(|v| spec.mul(v, t)).collect(),
            edges: self.edges.iter().map(|e| e.translate(spec, t)).collect(),
            truncation: self.truncation,
        }
    }
}

/// Window indices of the cluster of `start`, in BFS order with distances.
pub(crate) fn cluster_bfs(omega: &Configuration, start: usize, max_depth: u32) -> Vec<(usize, u32)> {
    let window = omega.window();
    let mut seen = vec![false; window.vertices().len()];
    seen[start] = true;
    let mut order = vec![(start, 0u32)];
    let mut head = 0;
    while head < order.len() {
        let (v, d) = order[head];
        head += 1;
        if d >= max_depth {
            continue;
        }
        for &(u, k) in window.adjacency(v) {
            if !seen[u] && omega.is_open_index(k) {
                seen[u] = true;
                order.push((u, d + 1));
            }
        }
    }
    order
}

/// Exact horizon of the cluster of a window vertex.
fn horizon(omega: &Configuration, v: usize) -> u32 {
    omega.radius() - omega.window().length(v)
}

fn rooted_from_indices(omega: &Configuration, members: &[usize], root: &GroupElement, truncation: u32) -> RootedGraph {
    let spec = omega.spec();
    let window = omega.window();
    let inverse_root = spec.inverse(root);
    let mut inside = vec![false; window.vertices().len()];
    for &v in members {
        inside[v] = true;
    }
    let vertices = members
        .iter()
        .map(|&v| spec.mul(&omega.actual_vertex(v), &inverse_root))
        .collect();
    let mut edges = BTreeSet::new();
    for &v in members {
        for &(u, k) in window.adjacency(v) {
            if v < u && inside[u] && omega.is_open_index(k) {
                edges.insert(omega.actual_edge(k).translate(spec, &inverse_root));
            }
        }
    }
    RootedGraph::from_parts_unchecked(Arc::clone(window.spec()), vertices, edges, truncation)
}

/// `C_g(ω)·g⁻¹`: the cluster of `g` inside the window, re-rooted at the
/// identity. Its truncation is the window radius minus the distance from the
/// window centre to `g`.
pub fn cluster_of(omega: &Configuration, g: &GroupElement) -> Result<RootedGraph> {
    let v = omega
        .frame_vertex(g)
        .ok_or_else(|| Error::usage(format!("{g} lies outside the window")))?;
    let members: Vec<usize> = cluster_bfs(omega, v, u32::MAX).into_iter().map(|(u, _)| u).collect();
    Ok(rooted_from_indices(omega, &members, g, horizon(omega, v)))
}

/// `ball(cluster_of(ω, 1), r)` without extracting the whole cluster.
pub fn identity_cluster_ball(omega: &Configuration, r: u32) -> Result<RootedGraph> {
    let identity = omega.spec().identity();
    let v = omega
        .frame_vertex(&identity)
        .ok_or_else(|| Error::usage("the identity lies outside the window"))?;
    let truncation = horizon(omega, v);
    if r > truncation {
        return Err(Error::Horizon {
            requested: r,
            truncation,
        });
    }
    let members: Vec<usize> = cluster_bfs(omega, v, r).into_iter().map(|(u, _)| u).collect();
    Ok(rooted_from_indices(omega, &members, &identity, r))
}

/// Result of comparing two rooted graphs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GhDistance<T> {
    /// `exp(-agreement_radius)`.
    pub value: T,
    /// False when the balls agree all the way to the smaller horizon, in
    /// which case `value` is only an upper bound.
    pub exact: bool,
    pub agreement_radius: u32,
}

// Vertex and edge layers by distance from the root, up to `limit`.
fn layers(h: &RootedGraph, limit: u32) -> Vec<(BTreeSet<&GroupElement>, BTreeSet<&EdgeId>)> {
    let dist = h.distances();
    let mut out: Vec<(BTreeSet<&GroupElement>, BTreeSet<&EdgeId>)> =
        (0..=limit).map(|_| Default::default()).collect();
    for v in &h.vertices {
        if let Some(&d) = dist.get(v) {
            if d <= limit {
                out[d as usize].0.insert(v);
            }
        }
    }
    for e in &h.edges {
        let (a, b) = e.endpoints(&h.spec);
        if let (Some(&da), Some(&db)) = (dist.get(&a), dist.get(&b)) {
            let d = da.max(db);
            if d <= limit {
                out[d as usize].1.insert(e);
            }
        }
    }
    out
}

/// `d(H, H') = exp(-ρ)` with `ρ` the largest radius, up to the smaller
/// truncation, at which the closed balls around the root coincide.
pub fn gh_distance<T: Real>(h: &RootedGraph, h2: &RootedGraph) -> GhDistance<T> {
    let limit = h.truncation.min(h2.truncation);
    let a = layers(h, limit);
    let b = layers(h2, limit);
    // Balls agree at r iff they agree at r - 1 and the r-th layers coincide.
    let mut rho = 0;
    for r in 1..=limit {
        if a[r as usize] != b[r as usize] {
            break;
        }
        rho = r;
    }
    let rho_t = T::from_u32(rho).expect("radius fits the scalar type");
    GhDistance {
        value: (-rho_t).exp(),
        exact: rho < limit,
        agreement_radius: rho,
    }
}

/// A cluster-relation move: `shift(ω, g)` for `g` in the identity's cluster.
pub fn reroot(omega: &Configuration, g: &GroupElement) -> Result<Configuration> {
    let identity = omega.spec().identity();
    let root = omega
        .frame_vertex(&identity)
        .ok_or_else(|| Error::usage("the identity lies outside the window"))?;
    let target = omega
        .frame_vertex(g)
        .ok_or_else(|| Error::NotInCluster(g.to_string()))?;
    if !cluster_bfs(omega, root, u32::MAX).iter().any(|&(v, _)| v == target) {
        return Err(Error::NotInCluster(g.to_string()));
    }
    omega.shift(g)
}

/// Whether the identity's cluster, using only vertices within distance
/// `radius` of the window centre, reaches distance exactly `radius`.
pub fn boundary_reach_within(omega: &Configuration, radius: u32) -> bool {
    let identity = omega.spec().identity();
    let Some(root) = omega.frame_vertex(&identity) else {
        return false;
    };
    let window = omega.window();
    if radius > window.radius() || window.length(root) > radius {
        return false;
    }
    let mut seen = vec![false; window.vertices().len()];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        if window.length(v) == radius {
            return true;
        }
        for &(u, k) in window.adjacency(v) {
            if !seen[u] && window.length(u) <= radius && omega.is_open_index(k) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    false
}

/// Finite-window proxy for an infinite cluster: the identity's cluster
/// touches the boundary sphere of the window.
pub fn boundary_reach(omega: &Configuration) -> bool {
    boundary_reach_within(omega, omega.radius())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{canonical_edge, window_edges, Window};
    use fixedbitset::FixedBitSet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z2() -> Arc<GroupSpec> {
        Arc::new(GroupSpec::lattice(2).unwrap())
    }

    fn p(x: i64, y: i64) -> GroupElement {
        GroupElement::lattice([x, y])
    }

    fn hx(x: i64, y: i64) -> EdgeId {
        EdgeId::new(p(x, y), 0)
    }

    fn vy(x: i64, y: i64) -> EdgeId {
        EdgeId::new(p(x, y), 1)
    }

    fn random_config(w: &Arc<Window>, q: f64, rng: &mut ChaCha8Rng) -> Configuration {
        let mut bits = FixedBitSet::with_capacity(w.edge_count());
        for k in 0..w.edge_count() {
            bits.set(k, rng.gen_bool(q));
        }
        Configuration::from_bits(w, bits)
    }

    #[test]
    fn clusters_of_small_configurations() {
        let w = window_edges(&z2(), 3).unwrap();
        let lone = cluster_of(&Configuration::empty(&w), &p(0, 0)).unwrap();
        assert_eq!(lone.vertex_count(), 1);
        assert_eq!(lone.edge_count(), 0);
        assert_eq!(lone.truncation(), 3);

        let full = cluster_of(&Configuration::full(&w), &p(0, 0)).unwrap();
        assert_eq!(full.vertex_count(), w.vertices().len());
        assert_eq!(full.edge_count(), w.edge_count());

        let omega = Configuration::from_edges(&w, &[hx(0, 0), vy(1, 0)]).unwrap();
        let c = cluster_of(&omega, &p(0, 0)).unwrap();
        assert_eq!(c.vertices(), &BTreeSet::from([p(0, 0), p(1, 0), p(1, 1)]));
        assert_eq!(c.edges(), &BTreeSet::from([hx(0, 0), vy(1, 0)]));

        // Re-rooted at (1,0): the same cluster translated by (-1,0).
        let c1 = cluster_of(&omega, &p(1, 0)).unwrap();
        assert_eq!(c1.vertices(), &BTreeSet::from([p(-1, 0), p(0, 0), p(0, 1)]));
        assert_eq!(c1.truncation(), 2);
        assert!(cluster_of(&omega, &p(4, 0)).is_err());
    }

    #[test]
    fn balls_of_known_graphs() {
        let w = window_edges(&z2(), 3).unwrap();
        let full = cluster_of(&Configuration::full(&w), &p(0, 0)).unwrap();
        let plus = full.ball(1).unwrap();
        assert_eq!((plus.vertex_count(), plus.edge_count(), plus.truncation()), (5, 4, 1));
        let root = full.ball(0).unwrap();
        assert_eq!((root.vertex_count(), root.edge_count()), (1, 0));
        assert!(matches!(full.ball(4), Err(Error::Horizon { requested: 4, truncation: 3 })));

        let square = RootedGraph::from_edges(z2(), [hx(0, 0), vy(0, 0), vy(1, 0), hx(0, 1)], 3).unwrap();
        let b1 = square.ball(1).unwrap();
        assert_eq!(b1.vertices(), &BTreeSet::from([p(0, 0), p(1, 0), p(0, 1)]));
        assert_eq!(b1.edges(), &BTreeSet::from([hx(0, 0), vy(0, 0)]));
    }

    #[test]
    fn rooted_graph_validation() {
        let disconnected = RootedGraph::new(
            z2(),
            BTreeSet::from([p(0, 0), p(2, 0)]),
            BTreeSet::new(),
            1,
        );
        assert!(disconnected.is_err());
        let dangling = RootedGraph::new(z2(), BTreeSet::from([p(0, 0)]), BTreeSet::from([hx(0, 0)]), 1);
        assert!(dangling.is_err());
        let rootless = RootedGraph::from_edges(z2(), [hx(3, 0)], 1);
        assert!(rootless.is_err());
    }

    #[test]
    fn gh_distance_examples() {
        let spec = z2();
        let w = window_edges(&spec, 5).unwrap();
        let full = cluster_of(&Configuration::full(&w), &p(0, 0)).unwrap();
        let same = gh_distance::<f64>(&full, &full);
        assert_eq!(same.agreement_radius, 5);
        assert!(!same.exact);
        assert!((same.value - (-5f64).exp()).abs() < 1e-15);

        let lone = RootedGraph::single_vertex(Arc::clone(&spec), 5);
        let plus = full.ball(1).unwrap();
        let d = gh_distance::<f64>(&lone, &plus);
        assert_eq!((d.value, d.exact, d.agreement_radius), (1.0, true, 0));

        // Two paths along +x: one of length 2, one of length 3. Their
        // clusters coincide through radius 2 and differ at radius 3.
        let short = Configuration::from_edges(&w, &[hx(0, 0), hx(1, 0)]).unwrap();
        let long = Configuration::from_edges(&w, &[hx(0, 0), hx(1, 0), hx(2, 0)]).unwrap();
        let a = cluster_of(&short, &p(0, 0)).unwrap();
        let b = cluster_of(&long, &p(0, 0)).unwrap();
        assert_eq!(a.ball(2).unwrap(), b.ball(2).unwrap());
        assert_ne!(a.ball(3).unwrap(), b.ball(3).unwrap());
        let d = gh_distance::<f64>(&a, &b);
        assert_eq!(d.agreement_radius, 2);
        assert!(d.exact);
        assert!((d.value - 0.1353352832366127).abs() < 1e-12);
        let d32 = gh_distance::<f32>(&a, &b);
        assert!((d32.value - 0.135_335_28).abs() < 1e-6);
    }

    #[test]
    fn gh_distance_agrees_with_ball_comparison() {
        let spec = z2();
        let w = window_edges(&spec, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = cluster_of(&random_config(&w, 0.6, &mut rng), &p(0, 0)).unwrap();
            let b = cluster_of(&random_config(&w, 0.6, &mut rng), &p(0, 0)).unwrap();
            let d = gh_distance::<f64>(&a, &b);
            let naive = (0..=6).take_while(|&r| a.ball(r).unwrap() == b.ball(r).unwrap()).last().unwrap();
            assert_eq!(d.agreement_radius, naive);
        }
    }

    #[test]
    fn reroot_moves() {
        let w = window_edges(&z2(), 3).unwrap();
        let omega = Configuration::from_edges(&w, &[hx(0, 0)]).unwrap();
        let moved = reroot(&omega, &p(1, 0)).unwrap();
        assert_eq!(moved.open_edges(), vec![hx(-1, 0)]);
        let c = cluster_of(&moved, &p(0, 0)).unwrap();
        assert_eq!(c.vertices(), &BTreeSet::from([p(-1, 0), p(0, 0)]));
        assert_eq!(reroot(&omega, &p(0, 0)).unwrap(), omega);
        assert!(matches!(
            reroot(&Configuration::empty(&w), &p(1, 0)),
            Err(Error::NotInCluster(_))
        ));
    }

    #[test]
    fn boundary_reach_examples() {
        let w = window_edges(&z2(), 4).unwrap();
        assert!(!boundary_reach(&Configuration::empty(&w)));
        assert!(boundary_reach(&Configuration::full(&w)));
        let path: Vec<EdgeId> = (0..4).map(|x| hx(x, 0)).collect();
        let omega = Configuration::from_edges(&w, &path).unwrap();
        assert!(boundary_reach(&omega));
        assert!(!boundary_reach(&Configuration::from_edges(&w, &path[..3]).unwrap()));
        assert!(boundary_reach_within(&Configuration::from_edges(&w, &path[..3]).unwrap(), 3));
    }

    // Independent connectivity check by union-find over the open edges.
    fn union_find_component(omega: &Configuration, g: &GroupElement) -> BTreeSet<GroupElement> {
        let spec = omega.spec();
        let verts: Vec<GroupElement> = omega.window_edges().iter().flat_map(|e| {
            let (a, b) = e.endpoints(spec);
            [a, b]
        }).chain(std::iter::once(g.clone())).collect::<BTreeSet<_>>().into_iter().collect();
        let index: HashMap<&GroupElement, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in omega.open_edges() {
            let (a, b) = e.endpoints(spec);
            let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
            parent[ra] = rb;
        }
        let root = find(&mut parent, index[g]);
        verts.iter().enumerate().filter(|(i, _)| find(&mut parent, *i) == root).map(|(_, v)| v.clone()).collect()
    }

    #[test]
    fn clusters_match_union_find_and_reroot_equivariantly() {
        for spec in [z2(), Arc::new(GroupSpec::free(2).unwrap())] {
            let w = window_edges(&spec, 4).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..300 {
                let omega = random_config(&w, 0.55, &mut rng);
                let id = spec.identity();
                let c = cluster_of(&omega, &id).unwrap();
                assert!(c.vertices().contains(&id));
                assert_eq!(c.vertices(), &union_find_component(&omega, &id));
                assert_eq!(c.distances().len(), c.vertex_count());

                let members: Vec<GroupElement> = c.vertices().iter().cloned().collect();
                let g = &members[rng.gen_range(0..members.len())];
                let moved = reroot(&omega, g).unwrap();
                let lhs = cluster_of(&moved, &id).unwrap();
                let rhs = cluster_of(&omega, g).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(lhs.truncation(), rhs.truncation());
                // The untranslated cluster of g equals C_1 translated by g⁻¹.
                assert_eq!(rhs, c.translate(&spec.inverse(g)));
            }
        }
    }

    #[test]
    fn identity_ball_matches_full_extraction_and_nests() {
        let w = window_edges(&z2(), 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let omega = random_config(&w, 0.5, &mut rng);
            let c = cluster_of(&omega, &p(0, 0)).unwrap();
            for r in 0..=5 {
                let ball = c.ball(r).unwrap();
                assert_eq!(identity_cluster_ball(&omega, r).unwrap(), ball);
                if r < 5 {
                    let bigger = c.ball(r + 1).unwrap();
                    assert!(ball.vertices().is_subset(bigger.vertices()));
                    assert!(ball.edges().is_subset(bigger.edges()));
                    assert_eq!(bigger.ball(r).unwrap(), ball);
                }
            }
        }
    }

    #[test]
    fn canonical_cluster_edges_are_window_edges() {
        let spec = z2();
        let w = window_edges(&spec, 3).unwrap();
        let c = cluster_of(&Configuration::full(&w), &p(0, 0)).unwrap();
        for e in c.edges() {
            let (a, b) = e.endpoints(&spec);
            assert_eq!(&canonical_edge(&spec, &b, &a).unwrap(), e);
        }
    }
}
