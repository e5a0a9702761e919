//! Random-walk transition distributions and the Jensen-Shannon divergence.
//!
//! A walker starts at a head node `v_h` of the target arc, picks uniformly one
//! reciprocal arc whose tail contains `v_h`, then a uniform node of that arc's
//! head. When no reciprocal tail contains `v_h` it lands on a virtual sink.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::hypergraph::{ArcId, DirectedHypergraph, Hyperarc, NodeId};
use crate::math::ln;
use crate::{Error, Result};

/// Largest possible divergence under the natural logarithm.
pub const L_MAX: f64 = LN_2;

/// Absolute tolerance on total mass.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Sparse distribution over `V ∪ {sink}`. Entries are sorted by node id with
/// the sink last, and only strictly positive masses are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionDistribution {
    source: NodeId,
    mass: Vec<(NodeId, f64)>,
}

impl TransitionDistribution {
    /// Builds a distribution from `(node, mass)` entries. Repeated nodes are
    /// summed and zero masses dropped.
    pub fn new<I: IntoIterator<Item = (NodeId, f64)>>(source: NodeId, entries: I) -> Result<Self> {
        let mut mass: Vec<(NodeId, f64)> = entries.into_iter().collect();
        if mass.iter().any(|&(_, m)| !(m >= 0.0) || !m.is_finite()) {
            return Err(Error::Precondition("negative or non-finite probability mass".into()));
        }
        mass.sort_by_key(|&(v, _)| v);
        let mass = merge_sorted(mass);
        let d = Self { source, mass };
        let total = d.total();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(total));
        }
        Ok(d)
    }

    /// All mass on the sink.
    pub fn sink(source: NodeId) -> Self {
        Self { source, mass: alloc::vec![(NodeId::SINK, 1.0)] }
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn entries(&self) -> &[(NodeId, f64)] {
        &self.mass
    }

    pub fn mass(&self, v: NodeId) -> f64 {
        match self.mass.binary_search_by_key(&v, |&(u, _)| u) {
            Ok(i) => self.mass[i].1,
            Err(_) => 0.0,
        }
    }

    pub fn sink_mass(&self) -> f64 {
        self.mass(NodeId::SINK)
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().map(|&(_, m)| m).sum()
    }
}

fn merge_sorted(sorted: Vec<(NodeId, f64)>) -> Vec<(NodeId, f64)> {
    let mut out: Vec<(NodeId, f64)> = Vec::with_capacity(sorted.len());
    for (v, m) in sorted {
        match out.last_mut() {
            Some((u, acc)) if *u == v => *acc += m,
            _ => out.push((v, m)),
        }
    }
    out.retain(|&(_, m)| m > 0.0);
    out
}

/// Transition distribution of `source` against an explicit reciprocal
/// multiset. `source` is not checked against any target here.
pub fn transition_from(source: NodeId, reciprocal: &[&Hyperarc]) -> TransitionDistribution {
    let mut entries = Vec::new();
    let mut hits = 0usize;
    for arc in reciprocal {
        if arc.tail().binary_search(&source).is_err() {
            continue;
        }
        hits += 1;
        let w = 1.0 / arc.head().len() as f64;
        entries.extend(arc.head().iter().map(|&v| (v, w)));
    }
    if hits == 0 {
        return TransitionDistribution::sink(source);
    }
    entries.sort_by_key(|&(v, _)| v);
    let mut mass = merge_sorted(entries);
    let denom = hits as f64;
    for (_, m) in &mut mass {
        *m /= denom;
    }
    TransitionDistribution { source, mass }
}

/// `p_h` for head node `source` of `target` given the reciprocal set `r`.
pub fn transition_distribution(
    g: &DirectedHypergraph,
    target: ArcId,
    r: &[ArcId],
    source: NodeId,
) -> Result<TransitionDistribution> {
    let arc = g.try_arc(target)?;
    if arc.head().binary_search(&source).is_err() {
        return Err(Error::Precondition(alloc::format!("{source} is not in the head set of {target}")));
    }
    if r.is_empty() {
        return Err(Error::Precondition("empty reciprocal set".into()));
    }
    let arcs = r.iter().map(|&k| g.try_arc(k)).collect::<Result<Vec<_>>>()?;
    Ok(transition_from(source, &arcs))
}

/// `p*_h`: uniform over the target's tail set, identical for every head node.
/// The reported source is the first head node.
pub fn optimal_distribution(target: &Hyperarc) -> TransitionDistribution {
    let w = 1.0 / target.tail().len() as f64;
    TransitionDistribution {
        source: target.head()[0],
        mass: target.tail().iter().map(|&v| (v, w)).collect(),
    }
}

/// A divergence in `[0, L_MAX]`.
#[derive(Copy, Clone, Debug, PartialEq, PartialOrd)]
pub struct DivergenceValue(pub f64);

impl DivergenceValue {
    pub fn value(self) -> f64 {
        self.0
    }

    /// `value / L_MAX`, in `[0, 1]`.
    pub fn normalized(self) -> f64 {
        self.0 / L_MAX
    }
}

/// Contribution of one support point: `p/2·ln(2p/(p+q)) + q/2·ln(2q/(p+q))`.
#[inline]
pub fn jsd_term(p: f64, q: f64) -> f64 {
    let s = p + q;
    let mut out = 0.0;
    if p > 0.0 {
        out += 0.5 * p * ln(2.0 * p / s);
    }
    if q > 0.0 {
        out += 0.5 * q * ln(2.0 * q / s);
    }
    out
}

fn union_fold(p: &TransitionDistribution, q: &TransitionDistribution, mut f: impl FnMut(f64, f64)) {
    let (a, b) = (&p.mass, &q.mass);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            f(a[i].1, 0.0);
            i += 1;
        } else if take_b {
            f(0.0, b[j].1);
            j += 1;
        } else {
            f(a[i].1, b[j].1);
            i += 1;
            j += 1;
        }
    }
}

/// Jensen-Shannon divergence under the natural logarithm, iterating only the
/// union of both supports. Clamped into `[0, L_MAX]` against rounding.
pub fn jsd(p: &TransitionDistribution, q: &TransitionDistribution) -> DivergenceValue {
    let mut total = 0.0;
    union_fold(p, q, |a, b| total += jsd_term(a, b));
    DivergenceValue(total.clamp(0.0, L_MAX))
}

/// Same divergence with logarithms taken in `base`. Its maximum is
/// `ln 2 / ln base`.
pub fn jsd_in_base(p: &TransitionDistribution, q: &TransitionDistribution, base: f64) -> f64 {
    let mut total = 0.0;
    union_fold(p, q, |a, b| total += jsd_term(a, b));
    total / ln(base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u32) -> NodeId {
        NodeId(v)
    }

    // target <{2,3,4},{6,7,8}> with reciprocal
    // arcs <{6,7},{2,3}> and <{1,6},{2}>.
    fn three_heads() -> DirectedHypergraph {
        DirectedHypergraph::from_id_lists(9, &[(&[2, 3, 4], &[6, 7, 8]), (&[6, 7], &[2, 3]), (&[1, 6], &[2])])
    }

    #[test]
    fn walker_splits_over_reciprocal_arcs() {
        let g = three_heads();
        let r = [ArcId(1), ArcId(2)];
        let p2 = transition_distribution(&g, ArcId(0), &r, n(2)).unwrap();
        assert!((p2.mass(n(7)) - 0.25).abs() < 1e-15);
        assert!((p2.mass(n(6)) - 0.5).abs() < 1e-15);
        assert_eq!(p2.mass(n(8)), 0.0);
        assert!((p2.total() - 1.0).abs() < 1e-12);

        let p3 = transition_distribution(&g, ArcId(0), &r, n(3)).unwrap();
        assert!((p3.mass(n(6)) - 0.5).abs() < 1e-15);

        let p4 = transition_distribution(&g, ArcId(0), &r, n(4)).unwrap();
        assert_eq!(p4.sink_mass(), 1.0);
    }

    #[test]
    fn source_must_be_in_head() {
        let g = three_heads();
        assert!(matches!(
            transition_distribution(&g, ArcId(0), &[ArcId(1)], n(6)),
            Err(Error::Precondition(_))
        ));
        assert!(transition_distribution(&g, ArcId(0), &[], n(2)).is_err());
    }

    #[test]
    fn optimal_is_uniform_over_tail() {
        let two = optimal_distribution(&Hyperarc::from_ids(&[0], &[1, 2]));
        assert_eq!(two.mass(n(1)), 0.5);
        assert_eq!(two.mass(n(2)), 0.5);
        assert_eq!(two.sink_mass(), 0.0);
        let one = optimal_distribution(&Hyperarc::from_ids(&[0], &[5]));
        assert_eq!(one.entries(), &[(n(5), 1.0)]);
    }

    #[test]
    fn perfect_reciprocal_reproduces_optimum() {
        let e = Hyperarc::from_ids(&[0, 1, 2], &[3, 4]);
        let rev = e.perfect_reciprocal();
        let opt = optimal_distribution(&e);
        for &h in e.head() {
            let p = transition_from(h, &[&rev]);
            assert_eq!(p.entries(), opt.entries());
        }
    }

    #[test]
    fn constructor_validates_mass() {
        assert!(matches!(
            TransitionDistribution::new(n(0), [(n(1), 0.5), (n(2), 0.4)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(TransitionDistribution::new(n(0), [(n(1), -0.5), (n(2), 1.5)]).is_err());
        let d = TransitionDistribution::new(n(0), [(n(2), 0.5), (n(1), 0.25), (n(2), 0.25), (n(3), 0.0)]).unwrap();
        assert_eq!(d.entries(), &[(n(1), 0.25), (n(2), 0.75)]);
    }

    #[test]
    fn jsd_basic_values() {
        let p = TransitionDistribution::new(n(0), [(n(1), 0.3), (n(2), 0.7)]).unwrap();
        assert_eq!(jsd(&p, &p).value(), 0.0);

        let s = TransitionDistribution::sink(n(0));
        let q = TransitionDistribution::new(n(0), [(n(1), 1.0)]).unwrap();
        assert!((jsd(&s, &q).value() - L_MAX).abs() < 1e-15);

        // p=(1,0), q=(1/2,1/2), written out term by term
        let p = TransitionDistribution::new(n(0), [(n(1), 1.0)]).unwrap();
        let q = TransitionDistribution::new(n(0), [(n(1), 0.5), (n(2), 0.5)]).unwrap();
        let m1: f64 = 0.75;
        let m2: f64 = 0.25;
        let kl_pm = 1.0 * (1.0 / m1).ln();
        let kl_qm = 0.5 * (0.5 / m1).ln() + 0.5 * (0.5 / m2).ln();
        let expected = 0.5 * kl_pm + 0.5 * kl_qm;
        assert!((jsd(&p, &q).value() - expected).abs() < 1e-15);
        assert!((jsd(&q, &p).value() - expected).abs() < 1e-15);
    }

    #[test]
    fn base_change_keeps_normalized_ratio() {
        let p = TransitionDistribution::new(n(0), [(n(1), 0.2), (n(3), 0.8)]).unwrap();
        let q = TransitionDistribution::new(n(0), [(n(1), 0.6), (n(2), 0.4)]).unwrap();
        let natural = jsd(&p, &q).normalized();
        for base in [2.0f64, 10.0] {
            let lmax = LN_2 / base.ln();
            assert!((jsd_in_base(&p, &q, base) / lmax - natural).abs() < 1e-12);
        }
    }
}
