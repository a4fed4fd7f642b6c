//! Repetitive subgraphs of the square lattice and their finite-stage orbit
//! closures.
//!
//! A [`SubgraphModel`] is an edge oracle on `Z^2` that keeps every vertex.
//! Its orbit closure is approximated at radius `r` by the [`PatternLibrary`]
//! of all rooted `r`-balls `B_{g.H}(1, r)` seen over a scan window.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use crate::cluster::RootedGraph;
use crate::config::{window_edges, EdgeId};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

type Point = (i64, i64);

const HORIZONTAL: usize = 0;
const VERTICAL: usize = 1;

/// The real number `(a + b·√d) / c`, with `d` not a perfect square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticIrrational {
    a: i64,
    b: i64,
    d: u64,
    c: i64,
}

impl QuadraticIrrational {
    pub fn new(a: i64, b: i64, d: u64, c: i64) -> Result<Self> {
        if c <= 0 || b == 0 {
            return Err(Error::Config("quadratic irrational needs c > 0 and b != 0".into()));
        }
        if d.isqrt() * d.isqrt() == d {
            return Err(Error::Config(format!("{d} is a perfect square")));
        }
        Ok(QuadraticIrrational { a, b, d, c })
    }

    /// `(√5 − 1) / 2`, the inverse golden ratio.
    pub fn inverse_golden() -> Self {
        QuadraticIrrational { a: -1, b: 1, d: 5, c: 2 }
    }

    /// `⌊n·α⌋`, computed exactly with an integer square root.
    pub fn floor_mul(&self, n: i64) -> i64 {
        let n = n as i128;
        let linear = n * self.a as i128;
        let m = n * self.b as i128;
        let c = self.c as i128;
        if m == 0 {
            return linear.div_euclid(c) as i64;
        }
        // |m|·√d is irrational and lies strictly between k and k + 1.
        let k = (m.unsigned_abs() * m.unsigned_abs() * self.d as u128).isqrt() as i128;
        let below = if m > 0 { linear + k } else { linear - k - 1 };
        below.div_euclid(c) as i64
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64
    }

    fn check_unit_interval(&self) -> Result<()> {
        if self.floor_mul(1) == 0 {
            Ok(())
        } else {
            Err(Error::Config(format!("slope {self} is not in (0, 1)")))
        }
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
    }
}

/// The Sturmian letter `⌊(n+1)α⌋ − ⌊nα⌋`.
pub fn sturmian_letter(alpha: &QuadraticIrrational, n: i64) -> u8 {
    (alpha.floor_mul(n + 1) - alpha.floor_mul(n)) as u8
}

pub fn sturmian_word(alpha: &QuadraticIrrational, start: i64, len: usize) -> Vec<u8> {
    (0..len as i64).map(|i| sturmian_letter(alpha, start + i)).collect()
}

/// Number of distinct factors of length `n` in `word`.
pub fn factor_count(word: &[u8], n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    word.windows(n).collect::<HashSet<_>>().len()
}

/// A periodic subgraph of `Z^2`: invariant under a finite-index sublattice,
/// described by the edges based in one fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicModel {
    basis: [Point; 2],
    // Hermite normal form rows (p, q) and (0, s) of the period lattice.
    hnf: (i64, i64, i64),
    motif: BTreeSet<(Point, usize)>,
}

impl PeriodicModel {
    pub fn new(basis: [Point; 2], motif: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let (mut v1, mut v2) = (basis[0], basis[1]);
        while v2.0 != 0 {
            let t = v1.0 / v2.0;
            v1 = (v1.0 - t * v2.0, v1.1 - t * v2.1);
            std::mem::swap(&mut v1, &mut v2);
        }
        if v1.0 < 0 {
            v1 = (-v1.0, -v1.1);
        }
        let s = v2.1.abs();
        if v1.0 == 0 || s == 0 {
            return Err(Error::Config(format!(
                "period basis {basis:?} does not span a finite-index sublattice"
            )));
        }
        let mut model = PeriodicModel {
            basis,
            hnf: (v1.0, v1.1, s),
            motif: BTreeSet::new(),
        };
        for e in motif {
            let base = e
                .base
                .xy()
                .ok_or_else(|| Error::Config(format!("motif edge {e} is not a Z^2 edge")))?;
            if e.dir > VERTICAL {
                return Err(Error::Config(format!("motif edge {e} has an invalid direction")));
            }
            model.motif.insert((model.reduce(base), e.dir));
        }
        Ok(model)
    }

    /// Horizontal edges on even rows only, every vertical edge.
    pub fn even_rows() -> Self {
        let e = |x, y, dir| EdgeId::new(GroupElement::lattice([x, y]), dir);
        Self::new(
            [(1, 0), (0, 2)],
            [e(0, 0, HORIZONTAL), e(0, 0, VERTICAL), e(0, 1, VERTICAL)],
        )
        .expect("valid built-in model")
    }

    pub fn basis(&self) -> [Point; 2] {
        self.basis
    }

    /// Index of the period lattice in `Z^2`.
    pub fn index(&self) -> u64 {
        (self.hnf.0 * self.hnf.2) as u64
    }

    /// Canonical representative of `v` modulo the period lattice.
    pub fn reduce(&self, (x, y): Point) -> Point {
        let (p, q, s) = self.hnf;
        let k = x.div_euclid(p);
        (x - k * p, (y - k * q).rem_euclid(s))
    }

    fn has_edge(&self, base: Point, dir: usize) -> bool {
        self.motif.contains(&(self.reduce(base), dir))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// The whole Cayley graph of `Z^2`.
    Full,
    Periodic(PeriodicModel),
    /// Every vertical edge, and the horizontal edges of row `y` exactly when
    /// the Sturmian letter `s(y)` is 1.
    SturmianFence(QuadraticIrrational),
}

/// An infinite spanning subgraph `H` of the `Z^2` Cayley graph.
#[derive(Clone, Debug)]
pub struct SubgraphModel {
    kind: ModelKind,
    id: String,
    spec: Arc<GroupSpec>,
}

impl SubgraphModel {
    pub fn new(kind: ModelKind, id: impl Into<String>) -> Self {
        SubgraphModel {
            kind,
            id: id.into(),
            spec: Arc::new(GroupSpec::lattice(2).expect("Z^2")),
        }
    }

    pub fn full() -> Self {
        Self::new(ModelKind::Full, "full")
    }

    pub fn even_rows() -> Self {
        Self::new(ModelKind::Periodic(PeriodicModel::even_rows()), "even-rows")
    }

    pub fn fib_fence() -> Self {
        Self::new(
            ModelKind::SturmianFence(QuadraticIrrational::inverse_golden()),
            "fib-fence",
        )
    }

    pub fn sturmian_fence(alpha: QuadraticIrrational) -> Result<Self> {
        alpha.check_unit_interval()?;
        Ok(Self::new(ModelKind::SturmianFence(alpha), format!("fence:{alpha}")))
    }

    /// Resolves a model id: `full`, `even-rows`, `fib-fence`, or
    /// `periodic:<bx1,by1;bx2,by2;motif-file>` where the motif file is an
    /// edge list of the edges based in the fundamental domain.
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "full" => Ok(Self::full()),
            "even-rows" => Ok(Self::even_rows()),
            "fib-fence" => Ok(Self::fib_fence()),
            _ => {
                let body = id
                    .strip_prefix("periodic:")
                    .ok_or_else(|| Error::Config(format!("unknown model id {id:?}")))?;
                let parts: Vec<&str> = body.splitn(3, ';').collect();
                if parts.len() != 3 {
                    return Err(Error::Config(format!("malformed periodic model id {id:?}")));
                }
                let vector = |text: &str| -> Result<Point> {
                    let nums: Vec<i64> = text
                        .split(',')
                        .map(|t| t.trim().parse::<i64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| Error::Config(format!("bad basis vector {text:?}: {e}")))?;
                    match nums[..] {
                        [x, y] => Ok((x, y)),
                        _ => Err(Error::Config(format!("basis vector {text:?} needs two entries"))),
                    }
                };
                let basis = [vector(parts[0])?, vector(parts[1])?];
                let spec = GroupSpec::lattice(2)?;
                let motif = crate::io::read_edge_list_file(&spec, Path::new(parts[2]))?;
                let periodic = PeriodicModel::new(basis, motif)?;
                let model = Self::new(ModelKind::Periodic(periodic), id);
                let probe = model.connectivity_probe_radius();
                if !model.is_connected_on(probe) {
                    return Err(Error::Config(format!(
                        "periodic model {id:?} is not connected on the radius-{probe} probe"
                    )));
                }
                Ok(model)
            }
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    fn connectivity_probe_radius(&self) -> u32 {
        match &self.kind {
            ModelKind::Periodic(m) => (m.index() as u32).clamp(2, 16),
            _ => 8,
        }
    }

    fn has_edge(&self, base: Point, dir: usize) -> bool {
        match &self.kind {
            ModelKind::Full => true,
            ModelKind::Periodic(m) => m.has_edge(base, dir),
            ModelKind::SturmianFence(alpha) => dir == VERTICAL || sturmian_letter(alpha, base.1) == 1,
        }
    }

    /// The edge oracle.
    pub fn is_edge(&self, e: &EdgeId) -> bool {
        match e.base.xy() {
            Some(base) if e.dir <= VERTICAL => self.has_edge(base, e.dir),
            _ => false,
        }
    }

    fn neighbors(&self, (x, y): Point) -> impl Iterator<Item = Point> + '_ {
        [
            ((x, y), HORIZONTAL, (x + 1, y)),
            ((x - 1, y), HORIZONTAL, (x - 1, y)),
            ((x, y), VERTICAL, (x, y + 1)),
            ((x, y - 1), VERTICAL, (x, y - 1)),
        ]
        .into_iter()
        .filter(move |&(base, dir, _)| self.has_edge(base, dir))
        .map(|(_, _, to)| to)
    }

    // BFS distances in H from `from`, up to `depth`.
    fn bfs(&self, from: Point, depth: u32) -> HashMap<Point, u32> {
        let mut dist = HashMap::from([(from, 0u32)]);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            if d == depth {
                continue;
            }
            for u in self.neighbors(v) {
                dist.entry(u).or_insert_with(|| {
                    queue.push_back(u);
                    d + 1
                });
            }
        }
        dist
    }

    /// Whether every vertex of the radius-`r` word ball is reachable from the
    /// origin inside the radius-`3r` word ball.
    pub fn is_connected_on(&self, r: u32) -> bool {
        let outer = 3 * r as i64;
        let mut seen = HashSet::from([(0i64, 0i64)]);
        let mut stack = vec![(0i64, 0i64)];
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if u.0.abs() + u.1.abs() <= outer && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        let r = r as i64;
        (-r..=r).all(|x| {
            let span = r - x.abs();
            (-span..=span).all(|y| seen.contains(&(x, y)))
        })
    }

    fn ball_at(&self, g: Point, r: u32) -> RootedGraph {
        let dist = self.bfs(g, r);
        let shift = |(x, y): Point| GroupElement::lattice([x - g.0, y - g.1]);
        let vertices = dist.keys().map(|&v| shift(v)).collect();
        let mut edges = BTreeSet::new();
        for &(x, y) in dist.keys() {
            for (dir, to) in [(HORIZONTAL, (x + 1, y)), (VERTICAL, (x, y + 1))] {
                if dist.contains_key(&to) && self.has_edge((x, y), dir) {
                    edges.insert(EdgeId::new(shift((x, y)), dir));
                }
            }
        }
        RootedGraph::from_parts_unchecked(Arc::clone(&self.spec), vertices, edges, r)
    }
}

fn point(g: &GroupElement) -> Result<Point> {
    g.xy()
        .ok_or_else(|| Error::usage(format!("{g} is not a Z^2 element")))
}

/// `B_{g.H}(1, r)`: the ball of radius `r` around `g` in `H`, translated so
/// that `g` becomes the identity.
pub fn local_ball(model: &SubgraphModel, g: &GroupElement, r: u32) -> Result<RootedGraph> {
    Ok(model.ball_at(point(g)?, r))
}

/// Finite-stage orbit closure: the distinct rooted `r`-balls of `H`.
#[derive(Clone, Debug)]
pub struct PatternLibrary {
    model_id: String,
    r: u32,
    scan_radius: u32,
    stable: bool,
    patterns: Vec<RootedGraph>,
    index: HashMap<RootedGraph, usize>,
}

impl PatternLibrary {
    /// Assembles a library from known patterns; they are sorted and deduplicated.
    pub fn from_patterns(
        model_id: impl Into<String>,
        r: u32,
        scan_radius: u32,
        stable: bool,
        patterns: impl IntoIterator<Item = RootedGraph>,
    ) -> Result<Self> {
        let set: BTreeSet<RootedGraph> = patterns.into_iter().collect();
        if let Some(bad) = set.iter().find(|p| p.truncation() != r) {
            return Err(Error::usage(format!(
                "pattern with truncation {} in a radius-{r} library",
                bad.truncation()
            )));
        }
        let patterns: Vec<RootedGraph> = set.into_iter().collect();
        let index = patterns.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(PatternLibrary {
            model_id: model_id.into(),
            r,
            scan_radius,
            stable,
            patterns,
            index,
        })
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn scan_radius(&self) -> u32 {
        self.scan_radius
    }

    /// True when doubling the scan radius found no new pattern.
    pub fn stable(&self) -> bool {
        self.stable
    }

    pub fn patterns(&self) -> &[RootedGraph] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Position of an `r`-ball in the library.
    pub fn position(&self, ball: &RootedGraph) -> Option<usize> {
        self.index.get(ball).copied()
    }

    /// Errors unless the library is stable or `force` is set.
    pub fn require_stable(&self, force: bool) -> Result<()> {
        if self.stable || force {
            Ok(())
        } else {
            Err(Error::UnstableLibrary {
                r: self.r,
                scan_radius: self.scan_radius,
            })
        }
    }
}

fn scan(model: &SubgraphModel, r: u32, centers: &[GroupElement]) -> BTreeSet<RootedGraph> {
    centers
        .par_iter()
        .fold(BTreeSet::new, |mut acc, g| {
            acc.insert(model.ball_at(g.xy().expect("Z^2 ball"), r));
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// All rooted `r`-balls of `H` centred in the word ball of radius
/// `scan_radius`, plus a stability check against twice that radius.
pub fn patterns(model: &SubgraphModel, r: u32, scan_radius: u32) -> Result<PatternLibrary> {
    if scan_radius < r {
        return Err(Error::usage(format!("scan radius {scan_radius} is smaller than r = {r}")));
    }
    let doubled = scan_radius
        .checked_mul(2)
        .ok_or_else(|| Error::usage("scan radius overflow"))?;
    let outer = model.spec.word_ball(doubled)?;
    let inner_len = model.spec.ball_size(scan_radius) as usize;
    // BFS order puts the inner ball first.
    let found = scan(model, r, &outer[..inner_len]);
    let wider = scan(model, r, &outer[inner_len..]);
    let stable = wider.is_subset(&found);
    PatternLibrary::from_patterns(model.id(), r, scan_radius, stable, found)
}

/// Finite-stage membership of `K` in the orbit closure.
pub fn in_closure(k: &RootedGraph, lib: &PatternLibrary) -> Result<bool> {
    Ok(lib.position(&k.ball(lib.r)?).is_some())
}

#[derive(Clone, Debug)]
pub struct RepetitivenessReport {
    pub ok: bool,
    /// First `(pattern, centre)` pair for which the pattern does not occur
    /// within the reach of the centre.
    pub witness: Option<(RootedGraph, GroupElement)>,
    pub library: PatternLibrary,
}

/// Checks that every `r`-pattern occurs within `H`-distance `reach` of every
/// centre in the word ball of radius `scan_radius - reach`.
pub fn is_repetitive(model: &SubgraphModel, r: u32, reach: u32, scan_radius: u32) -> Result<RepetitivenessReport> {
    if scan_radius < reach + r {
        return Err(Error::usage(format!(
            "scan radius {scan_radius} must be at least reach + r = {}",
            reach + r
        )));
    }
    let library = patterns(model, r, scan_radius)?;
    let ball = model.spec.word_ball(scan_radius)?;
    let ids: HashMap<Point, usize> = ball
        .par_iter()
        .map(|g| {
            let p = g.xy().expect("Z^2 element");
            let id = library.position(&model.ball_at(p, r)).expect("scanned pattern");
            (p, id)
        })
        .collect();

    let centers = &ball[..model.spec.ball_size(scan_radius - reach) as usize];
    let missing_at = |g: &GroupElement| -> Option<usize> {
        let mut seen = vec![false; library.len()];
        let mut remaining = library.len();
        let start = g.xy().expect("Z^2 element");
        let mut visited = HashSet::from([start]);
        let mut frontier = vec![start];
        for depth in 0..=reach {
            for v in &frontier {
                let id = ids[v];
                if !seen[id] {
                    seen[id] = true;
                    remaining -= 1;
                    if remaining == 0 {
                        return None;
                    }
                }
            }
            if depth == reach {
                break;
            }
            let mut next = Vec::new();
            for &v in &frontier {
                for u in model.neighbors(v) {
                    if visited.insert(u) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        seen.iter().position(|s| !s)
    };
    let witness = centers
        .par_iter()
        .map(|g| missing_at(g).map(|id| (library.patterns()[id].clone(), g.clone())))
        .find_first(|w| w.is_some())
        .flatten();
    Ok(RepetitivenessReport {
        ok: witness.is_none(),
        witness,
        library,
    })
}

/// Whether some Cayley-graph edge of the scan window is missing from `H`.
pub fn is_proper(model: &SubgraphModel, scan_radius: u32) -> Result<bool> {
    let window = window_edges(&model.spec, scan_radius)?;
    Ok(window.edges().iter().any(|e| !model.is_edge(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> GroupElement {
        GroupElement::lattice([x, y])
    }

    #[test]
    fn floor_mul_is_exact() {
        let alpha = QuadraticIrrational::inverse_golden();
        // k = ⌊n(√5−1)/2⌋ iff 2k + n ≤ n√5 < 2k + n + 2, checked by squaring.
        for n in -3000i64..3000 {
            let k = alpha.floor_mul(n) as i128;
            let n = n as i128;
            let five_n2 = 5 * n * n;
            let lo = 2 * k + n;
            let hi = lo + 2;
            if n >= 0 {
                assert!(lo <= 0 || lo * lo <= five_n2, "n = {n}");
                assert!(hi > 0 && hi * hi > five_n2, "n = {n}");
            } else {
                // n√5 is negative: lo ≤ n√5 means |lo| ≥ |n|√5.
                assert!(lo < 0 && lo * lo >= five_n2, "n = {n}");
                assert!(hi >= 0 || hi * hi < five_n2, "n = {n}");
            }
        }
        let big = 3_000_000_000i64;
        assert_eq!(alpha.floor_mul(big), (big as f64 * alpha.to_f64()).floor() as i64);
    }

    #[test]
    fn quadratic_irrational_validation() {
        assert!(QuadraticIrrational::new(0, 1, 4, 3).is_err());
        assert!(QuadraticIrrational::new(0, 1, 2, 0).is_err());
        let sqrt2_minus_1 = QuadraticIrrational::new(-1, 1, 2, 1).unwrap();
        assert!(SubgraphModel::sturmian_fence(sqrt2_minus_1).is_ok());
        let sqrt2 = QuadraticIrrational::new(0, 1, 2, 1).unwrap();
        assert!(SubgraphModel::sturmian_fence(sqrt2).is_err());
    }

    #[test]
    fn sturmian_factor_complexity() {
        let alpha = QuadraticIrrational::inverse_golden();
        let word = sturmian_word(&alpha, -5000, 10_000);
        for n in 1..=12 {
            assert_eq!(factor_count(&word, n), n + 1, "n = {n}");
        }
        let density = word.iter().map(|&b| b as f64).sum::<f64>() / word.len() as f64;
        assert!((density - alpha.to_f64()).abs() < 1e-3);
    }

    #[test]
    fn even_rows_local_balls() {
        let m = SubgraphModel::even_rows();
        let b0 = local_ball(&m, &p(0, 0), 1).unwrap();
        assert_eq!((b0.vertex_count(), b0.edge_count()), (5, 4));
        let b1 = local_ball(&m, &p(0, 1), 1).unwrap();
        assert_eq!(b1.vertices(), &BTreeSet::from([p(0, -1), p(0, 0), p(0, 1)]));
        assert_eq!(b1.edge_count(), 2);
        let full = local_ball(&SubgraphModel::full(), &p(7, -3), 1).unwrap();
        assert_eq!(full, b0);
        assert!(local_ball(&m, &GroupElement::lattice([1]), 1).is_err());
    }

    #[test]
    fn periodic_reduction() {
        let m = PeriodicModel::new([(2, 1), (1, 3)], []).unwrap();
        assert_eq!(m.index(), 5);
        let reps: BTreeSet<Point> = (-6..6)
            .flat_map(|x| (-6..6).map(move |y| (x, y)))
            .map(|v| m.reduce(v))
            .collect();
        assert_eq!(reps.len(), 5);
        assert_eq!(m.reduce((2, 1)), m.reduce((0, 0)));
        assert_eq!(m.reduce((1 + 3, 3 + 4)), m.reduce((3, 4)));
        assert!(PeriodicModel::new([(1, 2), (2, 4)], []).is_err());
    }

    #[test]
    fn pattern_counts() {
        let full = patterns(&SubgraphModel::full(), 2, 8).unwrap();
        assert_eq!(full.len(), 1);
        assert!(full.stable());
        let even = patterns(&SubgraphModel::even_rows(), 1, 8).unwrap();
        assert_eq!(even.len(), 2);
        let fence = patterns(&SubgraphModel::fib_fence(), 1, 64).unwrap();
        assert!(fence.len() <= 4);
        assert!(fence.stable());
        assert!(matches!(patterns(&SubgraphModel::full(), 3, 2), Err(Error::Usage(_))));
    }

    #[test]
    fn periodic_models_have_at_most_index_patterns() {
        let m = SubgraphModel::even_rows();
        for r in 0..=5 {
            assert!(patterns(&m, r, 12).unwrap().len() <= 2);
        }
    }

    #[test]
    fn fence_patterns_obey_factor_bound() {
        let m = SubgraphModel::fib_fence();
        for r in 0..=4 {
            let lib = patterns(&m, r, 48).unwrap();
            assert!(lib.len() <= 2 * r as usize + 2, "r = {r}: {}", lib.len());
            assert!(lib.stable());
        }
    }

    #[test]
    fn libraries_are_truncation_coherent() {
        for m in [SubgraphModel::even_rows(), SubgraphModel::fib_fence()] {
            for r in 0..4 {
                let small = patterns(&m, r, 24).unwrap();
                let big = patterns(&m, r + 1, 24).unwrap();
                for pat in big.patterns() {
                    assert!(in_closure(pat, &small).unwrap());
                }
            }
        }
    }

    #[test]
    fn stable_patterns_recur() {
        for m in [SubgraphModel::even_rows(), SubgraphModel::fib_fence()] {
            let lib = patterns(&m, 2, 24).unwrap();
            let mut counts = vec![0; lib.len()];
            for g in m.spec().word_ball(24).unwrap() {
                let ball = local_ball(&m, &g, 2).unwrap();
                counts[lib.position(&ball).unwrap()] += 1;
            }
            assert!(counts.iter().all(|&c| c >= 2), "{counts:?}");
        }
    }

    #[test]
    fn repetitiveness_checks() {
        let even = SubgraphModel::even_rows();
        let ok = is_repetitive(&even, 1, 3, 12).unwrap();
        assert!(ok.ok);
        let bad = is_repetitive(&even, 1, 0, 12).unwrap();
        assert!(!bad.ok);
        let (pattern, center) = bad.witness.unwrap();
        assert_eq!(center, p(0, 0));
        assert_eq!(pattern, local_ball(&even, &p(0, 1), 1).unwrap());
        assert!(is_repetitive(&even, 1, 3, 3).is_err());
    }

    #[test]
    fn fence_is_linearly_recurrent_on_scan() {
        assert!(is_repetitive(&SubgraphModel::fib_fence(), 1, 20, 200).unwrap().ok);
    }

    #[test]
    fn closure_membership() {
        let fence = patterns(&SubgraphModel::fib_fence(), 1, 64).unwrap();
        let lone = RootedGraph::single_vertex(Arc::new(GroupSpec::lattice(2).unwrap()), 3);
        assert!(!in_closure(&lone, &fence).unwrap());
        let m = SubgraphModel::fib_fence();
        for g in [p(0, 0), p(3, -7), p(10, 2)] {
            assert!(in_closure(&local_ball(&m, &g, 2).unwrap(), &fence).unwrap());
        }
        let too_short = RootedGraph::single_vertex(Arc::new(GroupSpec::lattice(2).unwrap()), 0);
        assert!(matches!(in_closure(&too_short, &fence), Err(Error::Horizon { .. })));
    }

    #[test]
    fn properness() {
        assert!(!is_proper(&SubgraphModel::full(), 10).unwrap());
        assert!(is_proper(&SubgraphModel::even_rows(), 2).unwrap());
        assert!(is_proper(&SubgraphModel::fib_fence(), 3).unwrap());
    }

    #[test]
    fn built_in_models_are_connected() {
        for m in [SubgraphModel::full(), SubgraphModel::even_rows(), SubgraphModel::fib_fence()] {
            assert!(m.is_connected_on(10), "{}", m.id());
        }
        let rows_only = SubgraphModel::new(
            ModelKind::Periodic(PeriodicModel::new([(1, 0), (0, 1)], [EdgeId::new(p(0, 0), 0)]).unwrap()),
            "rows",
        );
        assert!(!rows_only.is_connected_on(3));
    }
}
