//! HyperRec: arc-level reciprocity for a given reciprocal set and the
//! hypergraph-level mean.
//!
//! For a target `e = <H, T>` and a non-empty reciprocal set `R`,
//!
//! ```text
//! r(e, R) = (1/|R|)^α · (1 − Σ_{v∈H} JSD(p_v, p*) / (|H|·L_MAX))
//! ```
//!
//! and `r(e)` is the maximum over all non-empty `R ⊆ E` (see [`crate::search`]).

use alloc::vec::Vec;

use crate::hypergraph::{ArcId, DirectedHypergraph, Hyperarc};
use crate::math::size_penalty;
use crate::probability::{jsd, optimal_distribution, transition_from};
use crate::{Error, Result};

/// Size-penalty exponent.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ReciprocityConfig {
    pub alpha: f64,
    /// Stand-in used wherever the analysis calls for "α ≈ 0".
    pub alpha_near_zero: f64,
}

impl Default for ReciprocityConfig {
    fn default() -> Self {
        Self { alpha: 1.0, alpha_near_zero: 1e-4 }
    }
}

impl ReciprocityConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        let cfg = Self { alpha, ..Self::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `alpha = alpha_near_zero` (1e-4 by default).
    pub fn near_zero() -> Self {
        let d = Self::default();
        Self { alpha: d.alpha_near_zero, ..d }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::Parameter(alloc::format!("alpha must be positive and finite, got {}", self.alpha)));
        }
        if !(self.alpha_near_zero > 0.0) {
            return Err(Error::Parameter("alpha_near_zero must be positive".into()));
        }
        Ok(())
    }
}

/// Result of maximizing `r(e, R)` for one arc.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcReciprocity {
    pub arc: ArcId,
    /// `r(e)` in `[0, 1]`.
    pub value: f64,
    /// An argmax set, ascending arc ids. Empty when no arc inversely overlaps.
    pub reciprocal_set: Vec<ArcId>,
    /// Number of candidate sets evaluated.
    pub searched: u64,
    /// `|Ω|`, the number of inversely overlapping arcs.
    pub omega: usize,
    /// `|Ψ|`, the size of the reduced search space.
    pub psi: usize,
}

/// `Σ_{v∈H} JSD(p_v, p*) / L_MAX`, the un-normalized penalty.
pub fn divergence_sum(target: &Hyperarc, reciprocal: &[&Hyperarc]) -> f64 {
    let opt = optimal_distribution(target);
    target
        .head()
        .iter()
        .map(|&h| jsd(&transition_from(h, reciprocal), &opt).normalized())
        .sum()
}

/// `r(e, R)` for an explicit reciprocal list. Repeated entries count as
/// distinct members, which lets fixtures express multisets.
pub fn reciprocity_of(target: &Hyperarc, reciprocal: &[&Hyperarc], alpha: f64) -> Result<f64> {
    if reciprocal.is_empty() {
        return Err(Error::Precondition("empty reciprocal set".into()));
    }
    let penalty = size_penalty(reciprocal.len(), alpha);
    let d = divergence_sum(target, reciprocal) / target.head().len() as f64;
    Ok(penalty * (1.0 - d).clamp(0.0, 1.0))
}

/// `r(e_target, R)` with `R` given as arc ids of `g`. Repeated ids are
/// collapsed since `R` is a set.
pub fn arc_reciprocity_given(g: &DirectedHypergraph, target: ArcId, r: &[ArcId], cfg: &ReciprocityConfig) -> Result<f64> {
    cfg.validate()?;
    let mut ids = r.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let arcs = ids.iter().map(|&k| g.try_arc(k)).collect::<Result<Vec<_>>>()?;
    reciprocity_of(g.try_arc(target)?, &arcs, cfg.alpha)
}

/// `r(G)`: mean of the per-arc values.
pub fn hypergraph_reciprocity(per_arc: &[ArcReciprocity]) -> Result<f64> {
    mean_value(per_arc.iter().map(|a| a.value))
}

pub(crate) fn mean_value<I: ExactSizeIterator<Item = f64>>(values: I) -> Result<f64> {
    let n = values.len();
    if n == 0 {
        return Err(Error::Undefined("reciprocity of a hypergraph without arcs"));
    }
    Ok(values.sum::<f64>() / n as f64)
}

/// Classic digraph reciprocity `|E↔| / |E|`.
pub fn digraph_reciprocity(g: &DirectedHypergraph) -> Result<f64> {
    if !g.is_digraph() {
        return Err(Error::Precondition("digraph reciprocity needs |H| = |T| = 1 on every arc".into()));
    }
    if g.is_empty() {
        return Err(Error::Undefined("reciprocity of a hypergraph without arcs"));
    }
    let mutual = g.arcs().iter().filter(|a| g.find_arc(&a.perfect_reciprocal()).is_some()).count();
    Ok(mutual as f64 / g.num_arcs() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_digraph() -> DirectedHypergraph {
        // 1→2, 2→1, 1→3 with ids shifted to 0-based: arc <H,T> = <{head},{tail}>
        DirectedHypergraph::from_id_lists(3, &[(&[1], &[0]), (&[0], &[1]), (&[2], &[0])])
    }

    #[test]
    fn perfect_reciprocal_scores_one_for_any_alpha() {
        let e = Hyperarc::from_ids(&[0, 1], &[2, 3, 4]);
        let rev = e.perfect_reciprocal();
        for alpha in [1e-4, 0.3, 1.0] {
            assert_eq!(reciprocity_of(&e, &[&rev], alpha).unwrap(), 1.0);
        }
    }

    #[test]
    fn no_inverse_overlap_scores_zero() {
        let e = Hyperarc::from_ids(&[0, 1], &[2, 3]);
        let unrelated = Hyperarc::from_ids(&[5], &[0]);
        assert_eq!(reciprocity_of(&e, &[&unrelated], 1.0).unwrap(), 0.0);
    }

    #[test]
    fn fixed_sets_on_small_digraph() {
        let g = small_digraph();
        let cfg = ReciprocityConfig::default();
        let v = |t: u32, r: &[u32]| {
            let r: Vec<ArcId> = r.iter().map(|&i| ArcId(i)).collect();
            arc_reciprocity_given(&g, ArcId(t), &r, &cfg).unwrap()
        };
        assert!((v(0, &[1, 2]) - 0.5).abs() < 1e-12);
        assert!((v(1, &[0, 2]) - 0.3444).abs() < 1e-4);
        assert_eq!(v(2, &[0, 1]), 0.0);
    }

    #[test]
    fn empty_set_is_rejected() {
        let g = small_digraph();
        assert!(matches!(
            arc_reciprocity_given(&g, ArcId(0), &[], &ReciprocityConfig::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn alpha_must_be_positive() {
        assert!(ReciprocityConfig::new(0.0).is_err());
        assert!(ReciprocityConfig::new(-1.0).is_err());
        assert!(ReciprocityConfig::new(f64::NAN).is_err());
        assert_eq!(ReciprocityConfig::near_zero().alpha, 1e-4);
    }

    #[test]
    fn digraph_measure() {
        assert!((digraph_reciprocity(&small_digraph()).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let none = DirectedHypergraph::from_id_lists(3, &[(&[1], &[0]), (&[2], &[1])]);
        assert_eq!(digraph_reciprocity(&none).unwrap(), 0.0);
        let full = DirectedHypergraph::from_id_lists(
            3,
            &[(&[1], &[0]), (&[0], &[1]), (&[2], &[0]), (&[0], &[2]), (&[2], &[1]), (&[1], &[2])],
        );
        assert_eq!(digraph_reciprocity(&full).unwrap(), 1.0);
        let hyper = DirectedHypergraph::from_id_lists(3, &[(&[1, 2], &[0])]);
        assert!(digraph_reciprocity(&hyper).is_err());
    }

    #[test]
    fn mean_needs_arcs() {
        assert!(hypergraph_reciprocity(&[]).is_err());
        let one = ArcReciprocity { arc: ArcId(0), value: 1.0, reciprocal_set: Vec::new(), searched: 1, omega: 1, psi: 1 };
        assert_eq!(hypergraph_reciprocity(&[one.clone(), one]).unwrap(), 1.0);
    }

    #[test]
    fn larger_alpha_lowers_multi_arc_sets_only() {
        let e = Hyperarc::from_ids(&[0, 1], &[2, 3]);
        let a = Hyperarc::from_ids(&[2], &[0]);
        let b = Hyperarc::from_ids(&[3], &[1]);
        let lo = reciprocity_of(&e, &[&a, &b], 0.2).unwrap();
        let hi = reciprocity_of(&e, &[&a, &b], 0.9).unwrap();
        assert!(hi < lo);
        assert_eq!(reciprocity_of(&e, &[&a], 0.2).unwrap(), reciprocity_of(&e, &[&a], 0.9).unwrap());
    }
}
