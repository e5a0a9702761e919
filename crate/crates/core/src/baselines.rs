//! Baseline reciprocity measures B1–B7.
//!
//! - B1: trace ratio of the clique-expanded weighted digraph against its
//!   perfectly reciprocal augmentation.
//! - B2: Jaccard similarity of covered node pairs; B3 adds the size penalty.
//! - B4: HyperRec without the `|H|` normalization; B5 without the size
//!   penalty.
//! - B6 and B7: HyperRec at a fixed reciprocal set (all other arcs, or all
//!   inversely overlapping arcs) instead of the maximum.
//!
//! Arc-level baselines come in two forms: an explicit form taking a target arc
//! and a reciprocal list (repeats allowed), and a form over arc ids of a
//! hypergraph.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::hypergraph::{ArcId, DirectedHypergraph, Hyperarc, NodeId};
use crate::math::size_penalty;
use crate::measure::{divergence_sum, mean_value, reciprocity_of, ReciprocityConfig};
use crate::search::inverse_overlaps;
use crate::{Error, Result};

/// Pairwise projection of a hypergraph: `weight(u→v)` counts the arcs with
/// `u` in the tail and `v` in the head.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedDigraph {
    pub n: usize,
    pub weights: BTreeMap<(NodeId, NodeId), u64>,
}

impl WeightedDigraph {
    pub fn weight(&self, from: NodeId, to: NodeId) -> u64 {
        self.weights.get(&(from, to)).copied().unwrap_or(0)
    }

    /// `tr(A²) = Σ_{u,v} w(u→v)·w(v→u)`.
    pub fn trace_of_square(&self) -> u128 {
        self.weights
            .iter()
            .map(|(&(u, v), &w)| w as u128 * self.weight(v, u) as u128)
            .sum()
    }

    /// Dense row-major adjacency; row = source. Only sensible for small `n`.
    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut m = alloc::vec![alloc::vec![0; self.n]; self.n];
        for (&(u, v), &w) in &self.weights {
            m[u.index()][v.index()] = w;
        }
        m
    }
}

fn expand<'a, I: IntoIterator<Item = &'a Hyperarc>>(n: usize, arcs: I) -> WeightedDigraph {
    let mut weights = BTreeMap::new();
    for arc in arcs {
        for &u in arc.tail() {
            for &v in arc.head() {
                *weights.entry((u, v)).or_insert(0) += 1;
            }
        }
    }
    WeightedDigraph { n, weights }
}

/// Replaces each arc by the bi-clique from its tail to its head.
pub fn clique_expand(g: &DirectedHypergraph) -> WeightedDigraph {
    expand(g.num_nodes(), g.arcs())
}

/// B1 for an arc list: `tr(Ā²)/tr(Ā′²)`, where `Ā′` also contains the
/// perfect reciprocal of every arc whose reverse is absent. Repeated arcs
/// count with multiplicity, each copy contributing its own reverse.
pub fn b1_clique_arcs(arcs: &[&Hyperarc]) -> Result<f64> {
    let n = arcs
        .iter()
        .flat_map(|a| a.head().iter().chain(a.tail()))
        .map(|v| v.index() + 1)
        .max()
        .unwrap_or(0);
    let present: BTreeSet<&Hyperarc> = arcs.iter().copied().collect();
    let missing: Vec<Hyperarc> = arcs.iter().map(|a| a.perfect_reciprocal()).filter(|r| !present.contains(r)).collect();
    let num = expand(n, arcs.iter().copied()).trace_of_square();
    let den = expand(n, arcs.iter().copied().chain(missing.iter())).trace_of_square();
    if den == 0 {
        return Err(Error::Undefined("clique-expansion reciprocity of a hypergraph without arcs"));
    }
    Ok(num as f64 / den as f64)
}

/// B1 on a whole hypergraph.
pub fn b1_clique(g: &DirectedHypergraph) -> Result<f64> {
    let arcs: Vec<&Hyperarc> = g.arcs().iter().collect();
    b1_clique_arcs(&arcs)
}

/// B1 of `G_i = (V, {e_i} ∪ R_i)`, the arc-level reading used for axiom
/// comparisons.
pub fn b1_arc(target: &Hyperarc, reciprocal: &[&Hyperarc]) -> Result<f64> {
    let mut arcs = Vec::with_capacity(reciprocal.len() + 1);
    arcs.push(target);
    arcs.extend_from_slice(reciprocal);
    b1_clique_arcs(&arcs)
}

/// Set of ordered `(head node, tail node)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairSet {
    pub pairs: BTreeSet<(NodeId, NodeId)>,
}

impl PairSet {
    /// `K(e) = H × T`.
    pub fn of(e: &Hyperarc) -> Self {
        let pairs = e.head().iter().flat_map(|&h| e.tail().iter().map(move |&t| (h, t))).collect();
        Self { pairs }
    }

    /// `K⁻¹(e) = T × H`, the pairs `e` reciprocates.
    pub fn inverse_of(e: &Hyperarc) -> Self {
        Self::of(&e.perfect_reciprocal())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn jaccard(&self, other: &PairSet) -> f64 {
        let inter = self.pairs.intersection(&other.pairs).count();
        let union = self.pairs.len() + other.pairs.len() - inter;
        if union == 0 {
            0.0
        } else {
            inter as f64 / union as f64
        }
    }
}

fn non_empty(reciprocal: &[&Hyperarc]) -> Result<()> {
    if reciprocal.is_empty() {
        Err(Error::Precondition("empty reciprocal set".into()))
    } else {
        Ok(())
    }
}

/// B2: `|K(e) ∩ ∪K⁻¹(e_k)| / |K(e) ∪ ∪K⁻¹(e_k)|`.
pub fn b2_covered_pairs(target: &Hyperarc, reciprocal: &[&Hyperarc]) -> Result<f64> {
    non_empty(reciprocal)?;
    let mut covered = PairSet::default();
    for r in reciprocal {
        covered.pairs.extend(PairSet::inverse_of(r).pairs);
    }
    Ok(PairSet::of(target).jaccard(&covered))
}

/// B3: B2 times `(1/|R|)^α`.
pub fn b3_penalized_pairs(target: &Hyperarc, reciprocal: &[&Hyperarc], alpha: f64) -> Result<f64> {
    Ok(size_penalty(reciprocal.len(), alpha) * b2_covered_pairs(target, reciprocal)?)
}

/// B4: `(1/|R|)^α · (|H| − Σ JSD/L_max)`; ranges up to `|H|`.
pub fn b4_no_normalization(target: &Hyperarc, reciprocal: &[&Hyperarc], alpha: f64) -> Result<f64> {
    non_empty(reciprocal)?;
    let h = target.head().len() as f64;
    Ok(size_penalty(reciprocal.len(), alpha) * (h - divergence_sum(target, reciprocal)).max(0.0))
}

/// B5: HyperRec without `(1/|R|)^α`.
pub fn b5_no_size_penalty(target: &Hyperarc, reciprocal: &[&Hyperarc]) -> Result<f64> {
    non_empty(reciprocal)?;
    let d = divergence_sum(target, reciprocal) / target.head().len() as f64;
    Ok((1.0 - d).clamp(0.0, 1.0))
}

fn resolve<'g>(g: &'g DirectedHypergraph, ids: &[ArcId]) -> Result<Vec<&'g Hyperarc>> {
    ids.iter().map(|&k| g.try_arc(k)).collect()
}

pub fn b2_in(g: &DirectedHypergraph, target: ArcId, r: &[ArcId]) -> Result<f64> {
    b2_covered_pairs(g.try_arc(target)?, &resolve(g, r)?)
}

pub fn b3_in(g: &DirectedHypergraph, target: ArcId, r: &[ArcId], alpha: f64) -> Result<f64> {
    b3_penalized_pairs(g.try_arc(target)?, &resolve(g, r)?, alpha)
}

pub fn b4_in(g: &DirectedHypergraph, target: ArcId, r: &[ArcId], alpha: f64) -> Result<f64> {
    b4_no_normalization(g.try_arc(target)?, &resolve(g, r)?, alpha)
}

pub fn b5_in(g: &DirectedHypergraph, target: ArcId, r: &[ArcId]) -> Result<f64> {
    b5_no_size_penalty(g.try_arc(target)?, &resolve(g, r)?)
}

/// B6 for one arc: HyperRec with `R = E \ {e}`; zero when `e` is alone.
pub fn b6_all_arcs(g: &DirectedHypergraph, target: ArcId, cfg: &ReciprocityConfig) -> Result<f64> {
    let e = g.try_arc(target)?;
    let others: Vec<&Hyperarc> = g.arc_ids().filter(|&k| k != target).map(|k| g.arc(k)).collect();
    if others.is_empty() {
        return Ok(0.0);
    }
    reciprocity_of(e, &others, cfg.alpha)
}

/// B7 for one arc: HyperRec with `R = Ω`; zero when `Ω` is empty.
pub fn b7_overlapping_arcs(g: &DirectedHypergraph, target: ArcId, cfg: &ReciprocityConfig) -> Result<f64> {
    let e = g.try_arc(target)?;
    let omega: Vec<&Hyperarc> = inverse_overlaps(g, target).into_iter().map(|k| g.arc(k)).collect();
    if omega.is_empty() {
        return Ok(0.0);
    }
    reciprocity_of(e, &omega, cfg.alpha)
}

/// Mean of B6 over all arcs.
pub fn b6_reciprocity(g: &DirectedHypergraph, cfg: &ReciprocityConfig) -> Result<f64> {
    let per = g.arc_ids().map(|k| b6_all_arcs(g, k, cfg)).collect::<Result<Vec<_>>>()?;
    mean_value(per.into_iter())
}

/// Mean of B7 over all arcs.
pub fn b7_reciprocity(g: &DirectedHypergraph, cfg: &ReciprocityConfig) -> Result<f64> {
    let per = g.arc_ids().map(|k| b7_overlapping_arcs(g, k, cfg)).collect::<Result<Vec<_>>>()?;
    mean_value(per.into_iter())
}
