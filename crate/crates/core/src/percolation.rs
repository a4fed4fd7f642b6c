//! Bernoulli bond percolation on a window, exact cylinder and enumeration
//! probabilities, and the Monte Carlo estimators built on them.
//!
//! Every sample is a pure function of `(window, p, sample_index, seed)`:
//! sample `i` draws from its own ChaCha stream seeded by a 64-bit mix of the
//! master seed and `i`. Aggregation only sums counts, so results do not
//! depend on how samples are spread over threads.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cluster::{boundary_reach_within, cluster_bfs, identity_cluster_ball};
use crate::config::{window_edges, Configuration, EdgeId, Window};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::repetitive::{patterns, PatternLibrary, SubgraphModel};
use crate::scalar::{Probability, Real};

/// Largest edge count [`brute_force_probability`] will enumerate.
pub const MAX_ENUMERATED_EDGES: usize = 24;

/// Product measure on `2^E` keeping each edge with probability `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliLaw<T> {
    p: T,
}

impl<T: Probability> BernoulliLaw<T> {
    pub fn new(p: T) -> Result<Self> {
        if p < T::zero() || p > T::one() {
            return Err(Error::Config(format!("survival parameter {p:?} is outside [0, 1]")));
        }
        Ok(BernoulliLaw { p })
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    /// `p^open · (1-p)^closed`.
    pub fn weight(&self, open: usize, closed: usize) -> T {
        num_traits::pow(self.p.clone(), open) * num_traits::pow(T::one() - self.p.clone(), closed)
    }

    fn bernoulli(&self) -> Bernoulli {
        let p = self.p.to_f64().unwrap_or(0.0).clamp(0.0, 1.0);
        Bernoulli::new(p).expect("p in [0, 1]")
    }
}

/// Window radius, law, master seed and sample count of one sampling run.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSpec<T> {
    pub radius: u32,
    pub law: BernoulliLaw<T>,
    pub seed: u64,
    pub samples: u64,
}

impl<T: Probability> SampleSpec<T> {
    pub fn new(radius: u32, law: BernoulliLaw<T>, seed: u64, samples: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        Ok(SampleSpec {
            radius,
            law,
            seed,
            samples,
        })
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the stream for sample `index` under `master_seed`.
pub fn sample_seed(master_seed: u64, index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(index.wrapping_add(0x6a09_e667_f3bc_c909)))
}

/// One Bernoulli configuration on `window`. Edges are drawn in window
/// order, so the sample restricted to a smaller window is the sample of that
/// window with the same index and seed.
pub fn sample<T: Probability>(
    window: &Arc<Window>,
    law: &BernoulliLaw<T>,
    sample_index: u64,
    master_seed: u64,
) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(master_seed, sample_index));
    let coin = law.bernoulli();
    let mut open = FixedBitSet::with_capacity(window.edge_count());
    for k in 0..window.edge_count() {
        if coin.sample(&mut rng) {
            open.insert(k);
        }
    }
    Configuration::from_bits(window, open)
}

/// `μ(U_F) = p^|F|` for a set of distinct edges.
pub fn cylinder_probability<'a, T: Probability>(
    edges: impl IntoIterator<Item = &'a EdgeId>,
    law: &BernoulliLaw<T>,
) -> T {
    let distinct: std::collections::BTreeSet<&EdgeId> = edges.into_iter().collect();
    num_traits::pow(law.p.clone(), distinct.len())
}

/// Exact probability of `event` by summing over all `2^|E_R|` configurations.
pub fn brute_force_probability<T, F>(window: &Arc<Window>, law: &BernoulliLaw<T>, event: F) -> Result<T>
where
    T: Probability,
    F: Fn(&Configuration) -> bool + Sync,
{
    let m = window.edge_count();
    if m > MAX_ENUMERATED_EDGES {
        return Err(Error::ResourceGuard {
            what: "configurations",
            size: 1u128 << m.min(127),
            limit: 1u128 << MAX_ENUMERATED_EDGES,
        });
    }
    // counts[k]: configurations with k open edges in the event.
    let counts = (0u64..1 << m)
        .into_par_iter()
        .fold(
            || vec![0u64; m + 1],
            |mut acc, mask| {
                let bits = FixedBitSet::with_capacity_and_blocks(m, [mask as usize]);
                if event(&Configuration::from_bits(window, bits)) {
                    acc[mask.count_ones() as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; m + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut total = T::zero();
    for (k, &count) in counts.iter().enumerate() {
        if count > 0 {
            total = total + from_count::<T>(count) * law.weight(k, m - k);
        }
    }
    Ok(total)
}

/// `n` as a scalar, by double-and-add so any `Num` type works.
fn from_count<T: Probability>(n: u64) -> T {
    let mut acc = T::zero();
    for bit in (0..64 - n.leading_zeros()).rev() {
        acc = acc.clone() + acc;
        if n >> bit & 1 == 1 {
            acc = acc + T::one();
        }
    }
    acc
}

/// Membership in `i_F(B) = {ω ∪ F : ω ∈ B}`: `F ⊆ ω` and some resetting of
/// the coordinates in `F` lands in `B`.
pub fn in_insertion_image<F>(omega: &Configuration, edges: &[EdgeId], event: F) -> Result<bool>
where
    F: Fn(&Configuration) -> bool,
{
    if !omega.cylinder_contains(edges) {
        return Ok(false);
    }
    let indices = edges
        .iter()
        .map(|e| {
            omega
                .frame_edge(e)
                .ok_or_else(|| Error::usage(format!("edge {e} lies outside the window")))
        })
        .collect::<Result<Vec<_>>>()?;
    if indices.len() > 20 {
        return Err(Error::usage("insertion set too large to enumerate"));
    }
    for subset in 0u32..1 << indices.len() {
        let mut bits = omega.bits().clone();
        for (j, &k) in indices.iter().enumerate() {
            bits.set(k, subset >> j & 1 == 1);
        }
        if event(&omega.with_bits(bits)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Monte Carlo estimate `hits / n` with its normal-approximation error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EstimateRow {
    /// The radius the row belongs to.
    pub parameter: u32,
    pub hits: u64,
    /// Samples counted in the denominator.
    pub n: u64,
}

impl EstimateRow {
    /// Point estimate; `None` when no sample was counted.
    pub fn estimate<T: Real>(&self) -> Option<T> {
        (self.n > 0).then(|| T::from_u64(self.hits).unwrap() / T::from_u64(self.n).unwrap())
    }

    /// `sqrt(est·(1 − est)/n)`.
    pub fn std_error<T: Real>(&self) -> Option<T> {
        let est: T = self.estimate()?;
        Some((est * (T::one() - est) / T::from_u64(self.n).unwrap()).sqrt())
    }

    /// `parameter,estimate,stderr,n`, with `NA` for an undefined estimate.
    pub fn csv_line(&self) -> String {
        match (self.estimate::<f64>(), self.std_error::<f64>()) {
            (Some(e), Some(s)) => format!("{},{},{},{}", self.parameter, e, s, self.n),
            _ => format!("{},NA,NA,{}", self.parameter, self.n),
        }
    }
}

/// Counts over samples `0..n`: how many were counted, and per slot how many
/// of those scored a hit. `None` from `f` drops the sample.
pub(crate) fn tally<F>(n: u64, slots: usize, f: F) -> (u64, Vec<u64>)
where
    F: Fn(u64) -> Option<Vec<bool>> + Sync,
{
    (0..n)
        .into_par_iter()
        .fold(
            || (0u64, vec![0u64; slots]),
            |(mut counted, mut hits), i| {
                if let Some(outcome) = f(i) {
                    counted += 1;
                    for (h, hit) in hits.iter_mut().zip(outcome) {
                        *h += hit as u64;
                    }
                }
                (counted, hits)
            },
        )
        .reduce(
            || (0, vec![0; slots]),
            |(c1, mut h1), (c2, h2)| {
                h1.iter_mut().zip(h2).for_each(|(a, b)| *a += b);
                (c1 + c2, h1)
            },
        )
}

/// Options shared by the matching estimators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchOptions {
    pub scan_radius: u32,
    /// Condition on the identity's cluster reaching distance `R_c`.
    pub condition: Option<u32>,
    pub force_unstable: bool,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            scan_radius: 32,
            condition: None,
            force_unstable: false,
        }
    }
}

/// One row per library: the fraction of counted samples whose identity
/// cluster has its `r`-ball in the library. All libraries are evaluated on
/// the same samples, drawn on the window of radius `max(r_max, R_c)`.
pub fn match_probabilities<T: Probability>(
    libs: &[PatternLibrary],
    law: &BernoulliLaw<T>,
    n: u64,
    seed: u64,
    condition: Option<u32>,
    force_unstable: bool,
) -> Result<Vec<EstimateRow>> {
    for lib in libs {
        lib.require_stable(force_unstable)?;
    }
    let r_max = libs.iter().map(|l| l.r()).max().unwrap_or(0);
    let spec = Arc::new(GroupSpec::lattice(2)?);
    let window = window_edges(&spec, r_max.max(condition.unwrap_or(0)))?;
    let (counted, hits) = tally(n, libs.len(), |i| {
        let omega = sample(&window, law, i, seed);
        if let Some(rc) = condition {
            if !boundary_reach_within(&omega, rc) {
                return None;
            }
        }
        Some(
            libs.iter()
                .map(|lib| {
                    let ball = identity_cluster_ball(&omega, lib.r()).expect("window covers the ball");
                    lib.position(&ball).is_some()
                })
                .collect(),
        )
    });
    Ok(libs
        .iter()
        .zip(hits)
        .map(|(lib, h)| EstimateRow {
            parameter: lib.r(),
            hits: h,
            n: counted,
        })
        .collect())
}

/// Probability that the identity cluster's `r`-ball lies in the radius-`r`
/// pattern library of `model`.
pub fn match_probability<T: Probability>(
    model: &SubgraphModel,
    r: u32,
    law: &BernoulliLaw<T>,
    n: u64,
    seed: u64,
    options: MatchOptions,
) -> Result<EstimateRow> {
    let lib = patterns(model, r, options.scan_radius.max(r))?;
    let rows = match_probabilities(&[lib], law, n, seed, options.condition, options.force_unstable)?;
    Ok(rows[0])
}

fn check_translates(omega: &Configuration, edges: &[EdgeId], reach: u32) -> Result<()> {
    let spec = omega.spec();
    let too_small = || Error::usage(format!("window of radius {} is too small for reach {reach}", omega.radius()));
    if *omega.offset() == spec.identity() {
        let mut longest = 0;
        for e in edges {
            let (a, b) = e.endpoints(spec);
            longest = longest.max(spec.word_length(&a)).max(spec.word_length(&b));
        }
        if longest + reach as u64 <= omega.radius() as u64 {
            return Ok(());
        }
    }
    for g in spec.word_ball(reach)? {
        if edges.iter().any(|e| !omega.contains_edge(&e.translate(spec, &g))) {
            return Err(too_small());
        }
    }
    Ok(())
}

/// Smallest word length of a `g` in the identity's cluster with
/// `F·g ⊆ ω`, i.e. `g.ω ∈ U_F`.
pub fn saturation_radius(omega: &Configuration, edges: &[EdgeId]) -> Result<Option<u32>> {
    let spec = omega.spec();
    let identity = spec.identity();
    let root = omega
        .frame_vertex(&identity)
        .ok_or_else(|| Error::usage("the identity lies outside the window"))?;
    let mut best: Option<u32> = None;
    for (v, _) in cluster_bfs(omega, root, u32::MAX) {
        let g = omega.actual_vertex(v);
        let len = spec.word_length(&g) as u32;
        if best.is_some_and(|b| b <= len) {
            continue;
        }
        if edges.iter().all(|e| omega.is_open(&e.translate(spec, &g))) {
            best = Some(len);
        }
    }
    Ok(best)
}

/// Finite-stage membership in the saturation `R[U_F]`: some `g` in the
/// identity's cluster with `|g| ≤ reach` moves `ω` into `U_F`.
pub fn saturation_member(omega: &Configuration, edges: &[EdgeId], reach: u32) -> Result<bool> {
    check_translates(omega, edges, reach)?;
    Ok(saturation_radius(omega, edges)?.is_some_and(|d| d <= reach))
}

/// Saturation estimates for each reach, on common samples drawn on the
/// smallest window that holds every translate of `F`.
pub fn saturation_rows<T: Probability>(
    spec: &Arc<GroupSpec>,
    edges: &[EdgeId],
    reaches: &[u32],
    law: &BernoulliLaw<T>,
    n: u64,
    seed: u64,
    condition: Option<u32>,
) -> Result<Vec<EstimateRow>> {
    let max_reach = reaches.iter().copied().max().unwrap_or(0);
    let longest = edges
        .iter()
        .flat_map(|e| {
            let (a, b) = e.endpoints(spec);
            [spec.word_length(&a), spec.word_length(&b)]
        })
        .max()
        .unwrap_or(0) as u32;
    let radius = (max_reach + longest).max(condition.unwrap_or(0));
    let window = window_edges(spec, radius)?;
    check_translates(&Configuration::empty(&window), edges, max_reach)?;
    let (counted, hits) = tally(n, reaches.len(), |i| {
        let omega = sample(&window, law, i, seed);
        if let Some(rc) = condition {
            if !boundary_reach_within(&omega, rc) {
                return None;
            }
        }
        let d = saturation_radius(&omega, edges).expect("identity in window");
        Some(reaches.iter().map(|&r| d.is_some_and(|d| d <= r)).collect())
    });
    Ok(reaches
        .iter()
        .zip(hits)
        .map(|(&r, h)| EstimateRow {
            parameter: r,
            hits: h,
            n: counted,
        })
        .collect())
}
