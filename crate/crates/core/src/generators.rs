//! Random directed hypergraphs: the size-preserving null model, ReDi and the
//! no-reciprocity baseline generator.
//!
//! All generators are seeded (`ChaCha8`) and deterministic for a fixed
//! `(params, distributions, seed)`.
//!
//! Group bookkeeping for preferential attachment: each generated arc records
//! its full head set as a head group and its full tail set as a tail group;
//! single nodes act as groups whose count is the node's in- or out-degree.
//! Filling `m` slots first tries a size-`m` group drawn proportionally to its
//! count, then `m` distinct nodes drawn proportionally to degree, then
//! uniform nodes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use hashbrown::HashMap;
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::{DirectedHypergraph, Hyperarc, HypergraphBuilder, NodeId};
use crate::{Error, Result};

/// Empirical distribution over non-negative integers.
#[derive(Clone, Debug)]
pub struct Discrete {
    values: Vec<u32>,
    probs: Vec<f64>,
    index: WeightedIndex<f64>,
}

impl PartialEq for Discrete {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.probs == other.probs
    }
}

impl Discrete {
    /// From `(value, weight)` pairs; weights are normalized.
    pub fn from_weights<I: IntoIterator<Item = (u32, f64)>>(weights: I) -> Result<Self> {
        let mut merged: BTreeMap<u32, f64> = BTreeMap::new();
        for (v, w) in weights {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::Parameter(alloc::format!("invalid weight {w} for value {v}")));
            }
            *merged.entry(v).or_insert(0.0) += w;
        }
        merged.retain(|_, w| *w > 0.0);
        let total: f64 = merged.values().sum();
        if merged.is_empty() || total <= 0.0 {
            return Err(Error::Parameter("distribution without positive mass".into()));
        }
        let values: Vec<u32> = merged.keys().copied().collect();
        let probs: Vec<f64> = merged.values().map(|w| w / total).collect();
        let index = WeightedIndex::new(&probs).map_err(|e| Error::Parameter(alloc::format!("{e}")))?;
        Ok(Self { values, probs, index })
    }

    /// Empirical histogram of `samples`.
    pub fn from_samples<I: IntoIterator<Item = u32>>(samples: I) -> Result<Self> {
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        for s in samples {
            *counts.entry(s).or_insert(0) += 1;
        }
        Self::from_weights(counts.into_iter().map(|(v, c)| (v, c as f64)))
    }

    /// Point mass at `v`.
    pub fn point(v: u32) -> Self {
        Self::from_weights([(v, 1.0)]).expect("point mass is valid")
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        self.values[self.index.sample(rng)]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().zip(&self.probs).map(|(&v, &p)| v as f64 * p).sum()
    }

    pub fn max(&self) -> u32 {
        *self.values.last().expect("non-empty support")
    }

    /// `(value, probability)` pairs in ascending value order.
    pub fn support(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.values.iter().copied().zip(self.probs.iter().copied())
    }
}

/// `f_HD`, `f_TD` and `f_NP`.
#[derive(Clone, Debug, PartialEq)]
pub struct SizeDistributions {
    pub head: Discrete,
    pub tail: Discrete,
    /// New arcs per node.
    pub arcs_per_node: Discrete,
}

impl SizeDistributions {
    fn validate(&self) -> Result<()> {
        if self.head.values[0] == 0 || self.tail.values[0] == 0 {
            return Err(Error::Parameter("head and tail sizes must be positive".into()));
        }
        Ok(())
    }
}

/// Empirical size histograms of `reference`. Arcs are attributed to the
/// member node that appears last in first-appearance order over the arc
/// list; `f_NP` counts attributed arcs per node, zeros included.
pub fn estimate_distributions(reference: &DirectedHypergraph) -> Result<SizeDistributions> {
    if reference.is_empty() {
        return Err(Error::Undefined("size distributions of a hypergraph without arcs"));
    }
    let head = Discrete::from_samples(reference.arcs().iter().map(|a| a.head().len() as u32))?;
    let tail = Discrete::from_samples(reference.arcs().iter().map(|a| a.tail().len() as u32))?;

    let mut arrival = alloc::vec![usize::MAX; reference.num_nodes()];
    let mut next = 0usize;
    let mut per_node = alloc::vec![0u32; reference.num_nodes()];
    for arc in reference.arcs() {
        let mut latest = (0usize, NodeId(0));
        for &v in arc.head().iter().chain(arc.tail()) {
            if arrival[v.index()] == usize::MAX {
                arrival[v.index()] = next;
                next += 1;
            }
            if arrival[v.index()] >= latest.0 {
                latest = (arrival[v.index()], v);
            }
        }
        per_node[latest.1.index()] += 1;
    }
    let arcs_per_node = Discrete::from_samples(per_node)?;
    Ok(SizeDistributions { head, tail, arcs_per_node })
}

/// How fill nodes are drawn.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum AttachmentMode {
    /// Whole groups proportionally to group degree, falling back to nodes.
    #[default]
    GroupDegree,
    /// Individual nodes proportionally to node degree.
    NodeDegree,
}

/// ReDi inputs other than the size distributions.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorParams {
    /// Total node count `n`.
    pub n: usize,
    /// Initial arcs `N`, each `<{2k+1}, {2k}>`; needs `2N <= n`.
    pub initial_arcs: usize,
    /// Probability that a new arc is reciprocal.
    pub beta1: f64,
    /// Extent of reciprocity of reciprocal arcs.
    pub beta2: f64,
    pub seed: u64,
    pub attachment: AttachmentMode,
    /// Attempts per arc before giving up.
    pub max_retries: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self {
            n: 100,
            initial_arcs: 5,
            beta1: 0.0,
            beta2: 0.0,
            seed: 0,
            attachment: AttachmentMode::GroupDegree,
            max_retries: 100,
        }
    }
}

impl GeneratorParams {
    pub fn validate(&self) -> Result<()> {
        for (name, b) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::Parameter(alloc::format!("{name} must lie in [0, 1], got {b}")));
            }
        }
        if self.initial_arcs == 0 {
            return Err(Error::Parameter("at least one initial arc is needed".into()));
        }
        if 2 * self.initial_arcs > self.n {
            return Err(Error::Parameter(alloc::format!(
                "{} initial arcs need {} nodes but n = {}",
                self.initial_arcs,
                2 * self.initial_arcs,
                self.n
            )));
        }
        if u32::try_from(self.n).is_err() {
            return Err(Error::Parameter("node count exceeds u32".into()));
        }
        if self.max_retries == 0 {
            return Err(Error::Parameter("max_retries must be positive".into()));
        }
        Ok(())
    }
}

/// Group and node degree state of a partially generated hypergraph.
#[derive(Clone, Debug, Default)]
pub struct GroupDegreeIndex {
    /// Indexed by size; entry `(group, count)`.
    head_groups: Vec<Vec<(Vec<NodeId>, u64)>>,
    tail_groups: Vec<Vec<(Vec<NodeId>, u64)>>,
    head_lookup: HashMap<Vec<NodeId>, usize>,
    tail_lookup: HashMap<Vec<NodeId>, usize>,
    head_totals: Vec<u64>,
    tail_totals: Vec<u64>,
    /// One entry per head (tail) membership: uniform draws are degree-proportional.
    head_stubs: Vec<NodeId>,
    tail_stubs: Vec<NodeId>,
    d_in: Vec<u64>,
    d_out: Vec<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Side {
    Head,
    Tail,
}

impl GroupDegreeIndex {
    pub fn new(n: usize) -> Self {
        Self { d_in: alloc::vec![0; n], d_out: alloc::vec![0; n], ..Self::default() }
    }

    /// Records an arc's head and tail as groups and updates node degrees.
    pub fn record(&mut self, arc: &Hyperarc) {
        Self::bump(&mut self.head_groups, &mut self.head_lookup, &mut self.head_totals, arc.head());
        Self::bump(&mut self.tail_groups, &mut self.tail_lookup, &mut self.tail_totals, arc.tail());
        for &v in arc.head() {
            self.d_in[v.index()] += 1;
            self.head_stubs.push(v);
        }
        for &v in arc.tail() {
            self.d_out[v.index()] += 1;
            self.tail_stubs.push(v);
        }
    }

    fn bump(
        groups: &mut Vec<Vec<(Vec<NodeId>, u64)>>,
        lookup: &mut HashMap<Vec<NodeId>, usize>,
        totals: &mut Vec<u64>,
        set: &[NodeId],
    ) {
        let size = set.len();
        if groups.len() <= size {
            groups.resize_with(size + 1, Vec::new);
            totals.resize(size + 1, 0);
        }
        totals[size] += 1;
        match lookup.get(set) {
            Some(&i) => groups[size][i].1 += 1,
            None => {
                lookup.insert(set.to_vec(), groups[size].len());
                groups[size].push((set.to_vec(), 1));
            }
        }
    }

    /// Number of arcs whose head is exactly `group`.
    pub fn head_count(&self, group: &[NodeId]) -> u64 {
        self.head_lookup.get(group).map_or(0, |&i| self.head_groups[group.len()][i].1)
    }

    /// Number of arcs whose tail is exactly `group`.
    pub fn tail_count(&self, group: &[NodeId]) -> u64 {
        self.tail_lookup.get(group).map_or(0, |&i| self.tail_groups[group.len()][i].1)
    }

    pub fn in_degree(&self, v: NodeId) -> u64 {
        self.d_in[v.index()]
    }

    pub fn out_degree(&self, v: NodeId) -> u64 {
        self.d_out[v.index()]
    }

    fn sample_group<R: Rng>(&self, rng: &mut R, side: Side, m: usize, avoid: &[NodeId]) -> Option<Vec<NodeId>> {
        let (groups, totals) = match side {
            Side::Head => (&self.head_groups, &self.head_totals),
            Side::Tail => (&self.tail_groups, &self.tail_totals),
        };
        let list = groups.get(m)?;
        let total = totals[m];
        if total == 0 {
            return None;
        }
        let ok = |g: &[NodeId]| g.iter().all(|v| !avoid.contains(v));
        // a few proportional draws, then an exact filtered draw
        for _ in 0..8 {
            let mut x = rng.gen_range(0..total);
            for (g, c) in list {
                if x < *c {
                    if ok(g) {
                        return Some(g.clone());
                    }
                    break;
                }
                x -= c;
            }
        }
        let allowed: u64 = list.iter().filter(|(g, _)| ok(g)).map(|(_, c)| c).sum();
        if allowed == 0 {
            return None;
        }
        let mut x = rng.gen_range(0..allowed);
        for (g, c) in list.iter().filter(|(g, _)| ok(g)) {
            if x < *c {
                return Some(g.clone());
            }
            x -= c;
        }
        None
    }

    /// `m` distinct nodes of `0..available`, not in `avoid`; degree-weighted
    /// while possible, then uniform. `None` if too few nodes exist.
    fn sample_nodes<R: Rng>(&self, rng: &mut R, side: Side, m: usize, avoid: &[NodeId], available: usize) -> Option<Vec<NodeId>> {
        if available < avoid.len() + m {
            return None;
        }
        let stubs = match side {
            Side::Head => &self.head_stubs,
            Side::Tail => &self.tail_stubs,
        };
        let mut out: Vec<NodeId> = Vec::with_capacity(m);
        let taken = |out: &Vec<NodeId>, v: &NodeId| avoid.contains(v) || out.contains(v);
        let mut misses = 0;
        while out.len() < m && !stubs.is_empty() && misses < 4 * m + 8 {
            let v = stubs[rng.gen_range(0..stubs.len())];
            if v.index() < available && !taken(&out, &v) {
                out.push(v);
            } else {
                misses += 1;
            }
        }
        if out.len() < m {
            let mut rest: Vec<NodeId> = (0..available as u32).map(NodeId).filter(|v| !taken(&out, v)).collect();
            let need = m - out.len();
            let (picked, _) = rest.partial_shuffle(rng, need);
            out.extend_from_slice(picked);
        }
        Some(out)
    }

    fn fill<R: Rng>(
        &self,
        rng: &mut R,
        side: Side,
        m: usize,
        avoid: &[NodeId],
        available: usize,
        mode: AttachmentMode,
    ) -> Option<Vec<NodeId>> {
        if m == 0 {
            return Some(Vec::new());
        }
        if mode == AttachmentMode::GroupDegree && m >= 2 {
            if let Some(g) = self.sample_group(rng, side, m, avoid) {
                return Some(g);
            }
        }
        self.sample_nodes(rng, side, m, avoid, available)
    }
}

fn binomial<R: Rng>(rng: &mut R, trials: usize, p: f64) -> usize {
    (0..trials).filter(|_| rng.gen_bool(p)).count()
}

/// `k` distinct members of `from`, each draw proportional to `weight + 1`.
fn weighted_members<R: Rng>(rng: &mut R, from: &[NodeId], k: usize, weight: impl Fn(NodeId) -> u64) -> Vec<NodeId> {
    let mut pool: Vec<(NodeId, u64)> = from.iter().map(|&v| (v, weight(v) + 1)).collect();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k.min(pool.len()) {
        let total: u64 = pool.iter().map(|&(_, w)| w).sum();
        let mut x = rng.gen_range(0..total);
        let pos = pool
            .iter()
            .position(|&(_, w)| {
                if x < w {
                    true
                } else {
                    x -= w;
                    false
                }
            })
            .expect("draw falls inside the total");
        out.push(pool.swap_remove(pos).0);
    }
    out
}

fn step_error(node: usize, arc: usize, step: &'static str) -> Error {
    Error::Generation { node: node as u32, arc, step }
}

/// ReDi. Nodes `0..2N` start in `N` one-to-one arcs; then every node
/// `v_i` of `0..n` in turn adds `k ~ f_NP` arcs, each reciprocal with
/// probability `β₁`.
pub fn redi_generate(params: &GeneratorParams, dists: &SizeDistributions) -> Result<DirectedHypergraph> {
    params.validate()?;
    dists.validate()?;
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut index = GroupDegreeIndex::new(n);
    let mut arcs: Vec<Hyperarc> = Vec::new();
    // arcs containing each node, as positions in `arcs`
    let mut incident: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];

    let push = |arc: Hyperarc, arcs: &mut Vec<Hyperarc>, index: &mut GroupDegreeIndex, incident: &mut Vec<Vec<usize>>| {
        index.record(&arc);
        let pos = arcs.len();
        for &v in arc.head().iter().chain(arc.tail()) {
            incident[v.index()].push(pos);
        }
        arcs.push(arc);
    };

    for k in 0..params.initial_arcs as u32 {
        let arc = Hyperarc::from_ids(&[2 * k + 1], &[2 * k]);
        push(arc, &mut arcs, &mut index, &mut incident);
    }

    for i in 0..n {
        let vi = NodeId(i as u32);
        let available = (i + 1).max(2 * params.initial_arcs);
        let k = dists.arcs_per_node.sample(&mut rng) as usize;
        for j in 0..k {
            let mut made = None;
            for _ in 0..params.max_retries {
                let recip = rng.gen_bool(params.beta1);
                let head_side = rng.gen_bool(0.5);
                let h = dists.head.sample(&mut rng) as usize;
                let t = dists.tail.sample(&mut rng) as usize;
                let mut hs: Vec<NodeId>;
                let mut ts: Vec<NodeId>;
                if !recip {
                    if head_side {
                        hs = alloc::vec![vi];
                        ts = Vec::new();
                    } else {
                        hs = Vec::new();
                        ts = alloc::vec![vi];
                    }
                } else {
                    // opponent: an arc containing v_i, else any arc
                    let own = &incident[i];
                    let opp = if own.is_empty() {
                        &arcs[rng.gen_range(0..arcs.len())]
                    } else {
                        &arcs[own[rng.gen_range(0..own.len())]]
                    };
                    let n_h = binomial(&mut rng, h.min(opp.tail().len()), params.beta2).max(1);
                    hs = weighted_members(&mut rng, opp.tail(), n_h, |v| index.in_degree(v));
                    let n_t = binomial(&mut rng, t.min(opp.head().len()), params.beta2).max(1);
                    ts = weighted_members(&mut rng, opp.head(), n_t, |v| index.out_degree(v));
                    if head_side && h > hs.len() {
                        if !hs.contains(&vi) {
                            hs.push(vi);
                        }
                    } else if !head_side && t > ts.len() && !ts.contains(&vi) {
                        ts.push(vi);
                    }
                }
                let Some(extra_h) = index.fill(&mut rng, Side::Head, h.saturating_sub(hs.len()), &hs, available, params.attachment) else {
                    continue;
                };
                hs.extend(extra_h);
                let Some(extra_t) = index.fill(&mut rng, Side::Tail, t.saturating_sub(ts.len()), &ts, available, params.attachment) else {
                    continue;
                };
                ts.extend(extra_t);
                if let Ok(arc) = Hyperarc::new(hs, ts) {
                    made = Some(arc);
                    break;
                }
            }
            let arc = made.ok_or_else(|| step_error(i, j, "head and tail stayed overlapping"))?;
            push(arc, &mut arcs, &mut index, &mut incident);
        }
    }
    Ok(DirectedHypergraph::from_arcs(n, arcs))
}

/// ReDi with `β₁ = β₂ = 0`.
pub fn baseline_generate(params: &GeneratorParams, dists: &SizeDistributions) -> Result<DirectedHypergraph> {
    let p = GeneratorParams { beta1: 0.0, beta2: 0.0, ..params.clone() };
    redi_generate(&p, dists)
}

/// Same node count and per-arc `(|H|, |T|)` sizes as `reference`, with nodes
/// drawn uniformly. Repeated arcs are redrawn.
pub fn null_model(reference: &DirectedHypergraph, seed: u64) -> Result<DirectedHypergraph> {
    if reference.is_empty() {
        return Err(Error::Undefined("null model of a hypergraph without arcs"));
    }
    let n = reference.num_nodes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<NodeId> = (0..n as u32).map(NodeId).collect();
    let mut b = HypergraphBuilder::new().with_nodes(n);
    for (i, arc) in reference.arcs().iter().enumerate() {
        let (h, t) = (arc.head().len(), arc.tail().len());
        if h + t > n {
            return Err(Error::Parameter(alloc::format!("arc {i} needs {} nodes but only {n} exist", h + t)));
        }
        let mut placed = false;
        for _ in 0..1000 {
            let (chosen, _) = nodes.partial_shuffle(&mut rng, h + t);
            let (head, tail) = chosen.split_at(h);
            match b.add(head.iter().copied(), tail.iter().copied())? {
                crate::hypergraph::Added::New(_) => {
                    placed = true;
                    break;
                }
                _ => continue,
            }
        }
        if !placed {
            return Err(step_error(0, i, "could not place a distinct arc"));
        }
    }
    Ok(b.build())
}

/// `β₁` grid for hypergraphs with at most 10⁴ nodes: 0.05, 0.10, …, 0.60.
pub fn beta1_grid_small() -> Vec<f64> {
    (1..=12).map(|k| k as f64 * 0.05).collect()
}

/// `β₁` grid for dense large hypergraphs: 0.001, 0.0015, …, 0.005.
pub fn beta1_grid_dense() -> Vec<f64> {
    (2..=10).map(|k| k as f64 * 0.0005).collect()
}

/// `β₁` grid for sparse large hypergraphs: 0.01, 0.02, …, 0.15.
pub fn beta1_grid_sparse() -> Vec<f64> {
    (1..=15).map(|k| k as f64 * 0.01).collect()
}

/// `β₂` grid: 0.1, 0.2, …, 0.5.
pub fn beta2_grid() -> Vec<f64> {
    (1..=5).map(|k| k as f64 * 0.1).collect()
}

/// One grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint {
    pub beta1: f64,
    pub beta2: f64,
    /// Mean of the score over the seeds.
    pub mean: f64,
}

/// Grid search result: the point whose mean score is closest to the target.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSearch {
    pub best: GridPoint,
    pub points: Vec<GridPoint>,
}

/// Generates one hypergraph per seed for every `(β₁, β₂)` pair, scores each
/// with `score`, and keeps the pair whose mean is closest to `target`.
pub fn grid_search<F>(
    base: &GeneratorParams,
    dists: &SizeDistributions,
    beta1s: &[f64],
    beta2s: &[f64],
    seeds: &[u64],
    target: f64,
    mut score: F,
) -> Result<GridSearch>
where
    F: FnMut(&DirectedHypergraph) -> Result<f64>,
{
    if beta1s.is_empty() || beta2s.is_empty() || seeds.is_empty() {
        return Err(Error::Parameter("grid search needs betas and seeds".into()));
    }
    let mut points = Vec::new();
    for &beta1 in beta1s {
        for &beta2 in beta2s {
            let mut sum = 0.0;
            for &seed in seeds {
                let p = GeneratorParams { beta1, beta2, seed, ..base.clone() };
                sum += score(&redi_generate(&p, dists)?)?;
            }
            points.push(GridPoint { beta1, beta2, mean: sum / seeds.len() as f64 });
        }
    }
    let best = points
        .iter()
        .min_by(|a, b| (a.mean - target).abs().total_cmp(&(b.mean - target).abs()))
        .cloned()
        .expect("non-empty grid");
    Ok(GridSearch { best, points })
}
