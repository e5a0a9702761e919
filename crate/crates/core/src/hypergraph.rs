//! Directed hypergraphs: hyperarcs `<H, T>` pointing from a tail set `T` to a
//! head set `H`, with dense node ids and incidence indexes.
//!
//! A [`DirectedHypergraph`] is immutable once built. All construction goes
//! through [`HypergraphBuilder`], which enforces the arc invariants (non-empty,
//! sorted, duplicate-free, disjoint head and tail), drops repeated arcs while
//! keeping the first occurrence, and builds the incidence maps.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::math::sorted_intersects;
use crate::{Error, Result};

/// Dense node index. [`NodeId::SINK`] is reserved for the virtual sink and is
/// never a valid node of a hypergraph.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const SINK: NodeId = NodeId(u32::MAX);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_sink(self) -> bool {
        self == Self::SINK
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sink() {
            f.write_str("sink")
        } else {
            write!(f, "v{}", self.0)
        }
    }
}

/// Position of an arc in its hypergraph's arc list.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub u32);

impl ArcId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A hyperarc `<H, T>`: the arrow goes from the tail set to the head set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperarc {
    head: Vec<NodeId>,
    tail: Vec<NodeId>,
}

impl Hyperarc {
    /// Builds an arc, sorting and deduplicating both sides.
    ///
    /// Fails when either side is empty, contains the sink id, or when the two
    /// sides share a node.
    pub fn new<H, T>(head: H, tail: T) -> Result<Self>
    where
        H: IntoIterator<Item = NodeId>,
        T: IntoIterator<Item = NodeId>,
    {
        let head = normalize(head);
        let tail = normalize(tail);
        Self::validate(&head, &tail, 0)?;
        Ok(Self { head, tail })
    }

    /// Convenience constructor from raw ids; panics on invalid input.
    /// Meant for fixtures and tests.
    pub fn from_ids(head: &[u32], tail: &[u32]) -> Self {
        Self::new(head.iter().map(|&v| NodeId(v)), tail.iter().map(|&v| NodeId(v)))
            .expect("invalid hyperarc")
    }

    fn validate(head: &[NodeId], tail: &[NodeId], index: usize) -> Result<()> {
        if head.is_empty() {
            return Err(Error::InvalidArc { index, reason: "empty head set" });
        }
        if tail.is_empty() {
            return Err(Error::InvalidArc { index, reason: "empty tail set" });
        }
        if head.last().is_some_and(|v| v.is_sink()) || tail.last().is_some_and(|v| v.is_sink()) {
            return Err(Error::InvalidArc { index, reason: "reserved sink id used as a node" });
        }
        if let Some(node) = first_common(head, tail) {
            return Err(Error::OverlappingArc { index, node: node.0 });
        }
        Ok(())
    }

    #[inline]
    pub fn head(&self) -> &[NodeId] {
        &self.head
    }

    #[inline]
    pub fn tail(&self) -> &[NodeId] {
        &self.tail
    }

    /// The perfectly reciprocal arc `<T, H>`.
    pub fn perfect_reciprocal(&self) -> Hyperarc {
        Hyperarc { head: self.tail.clone(), tail: self.head.clone() }
    }

    /// `H_i ∩ T_k ≠ ∅` and `T_i ∩ H_k ≠ ∅`.
    pub fn inversely_overlaps(&self, other: &Hyperarc) -> bool {
        sorted_intersects(&self.head, &other.tail) && sorted_intersects(&self.tail, &other.head)
    }

    pub fn signature(&self) -> ArcSignature {
        ArcSignature::of(&self.head, &self.tail)
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.head.binary_search(&v).is_ok() || self.tail.binary_search(&v).is_ok()
    }

    fn max_node(&self) -> Option<NodeId> {
        let h = self.head.last().copied();
        let t = self.tail.last().copied();
        h.max(t)
    }
}

/// `<T_i, H_i>` for `e_i = <H_i, T_i>`.
pub fn perfect_reciprocal_of(e: &Hyperarc) -> Hyperarc {
    e.perfect_reciprocal()
}

fn normalize<I: IntoIterator<Item = NodeId>>(nodes: I) -> Vec<NodeId> {
    let mut v: Vec<NodeId> = nodes.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn first_common(a: &[NodeId], b: &[NodeId]) -> Option<NodeId> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

/// Canonical key of an arc: `[|H|, H.., T..]` over sorted ids. The length
/// prefix keeps `<{1,2},{3}>` and `<{1},{2,3}>` apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcSignature(Box<[u32]>);

impl ArcSignature {
    fn of(head: &[NodeId], tail: &[NodeId]) -> Self {
        let mut key = Vec::with_capacity(1 + head.len() + tail.len());
        key.push(head.len() as u32);
        key.extend(head.iter().map(|v| v.0));
        key.extend(tail.iter().map(|v| v.0));
        Self(key.into_boxed_slice())
    }
}

/// What to do with an arc whose head and tail share nodes.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum OverlapPolicy {
    #[default]
    Reject,
    /// Remove the shared nodes from the tail set.
    RepairTail,
}

/// Accumulates arcs and produces a [`DirectedHypergraph`].
#[derive(Debug, Default)]
pub struct HypergraphBuilder {
    num_nodes: usize,
    arcs: Vec<Hyperarc>,
    signatures: HashMap<ArcSignature, ArcId>,
    policy: OverlapPolicy,
    max_head_size: Option<usize>,
    offered: usize,
    duplicates: usize,
    filtered: usize,
}

/// Outcome of [`HypergraphBuilder::add`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Added {
    New(ArcId),
    Duplicate(ArcId),
    Filtered,
}

impl HypergraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares at least `n` nodes; isolated nodes are allowed.
    pub fn with_nodes(mut self, n: usize) -> Self {
        self.num_nodes = self.num_nodes.max(n);
        self
    }

    pub fn overlap_policy(mut self, policy: OverlapPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Drop arcs whose head set is larger than `limit`.
    pub fn max_head_size(mut self, limit: Option<usize>) -> Self {
        self.max_head_size = limit;
        self
    }

    pub fn add<H, T>(&mut self, head: H, tail: T) -> Result<Added>
    where
        H: IntoIterator<Item = NodeId>,
        T: IntoIterator<Item = NodeId>,
    {
        let index = self.offered;
        self.offered += 1;
        let head = normalize(head);
        let mut tail = normalize(tail);
        if self.policy == OverlapPolicy::RepairTail {
            tail.retain(|v| head.binary_search(v).is_err());
        }
        Hyperarc::validate(&head, &tail, index)?;
        if self.max_head_size.is_some_and(|limit| head.len() > limit) {
            self.filtered += 1;
            return Ok(Added::Filtered);
        }
        self.push(Hyperarc { head, tail })
    }

    pub fn add_arc(&mut self, arc: Hyperarc) -> Result<Added> {
        self.offered += 1;
        if self.max_head_size.is_some_and(|limit| arc.head.len() > limit) {
            self.filtered += 1;
            return Ok(Added::Filtered);
        }
        self.push(arc)
    }

    fn push(&mut self, arc: Hyperarc) -> Result<Added> {
        let sig = arc.signature();
        if let Some(&id) = self.signatures.get(&sig) {
            self.duplicates += 1;
            return Ok(Added::Duplicate(id));
        }
        let id = ArcId(u32::try_from(self.arcs.len()).map_err(|_| Error::Undefined("too many arcs"))?);
        if let Some(m) = arc.max_node() {
            self.num_nodes = self.num_nodes.max(m.index() + 1);
        }
        self.signatures.insert(sig, id);
        self.arcs.push(arc);
        Ok(Added::New(id))
    }

    /// Number of repeated arcs dropped so far.
    pub fn duplicates(&self) -> usize {
        self.duplicates
    }

    /// Number of arcs dropped by the head-size filter.
    pub fn filtered(&self) -> usize {
        self.filtered
    }

    pub fn build(self) -> DirectedHypergraph {
        let mut tail_incidence = alloc::vec![Vec::new(); self.num_nodes];
        let mut head_incidence = alloc::vec![Vec::new(); self.num_nodes];
        for (i, arc) in self.arcs.iter().enumerate() {
            let id = ArcId(i as u32);
            for v in &arc.head {
                head_incidence[v.index()].push(id);
            }
            for v in &arc.tail {
                tail_incidence[v.index()].push(id);
            }
        }
        DirectedHypergraph {
            num_nodes: self.num_nodes,
            arcs: self.arcs,
            tail_incidence,
            head_incidence,
            signatures: self.signatures,
        }
    }
}

/// Immutable directed hypergraph `G = (V, E)` with `V = {0..num_nodes}`.
#[derive(Clone, Debug)]
pub struct DirectedHypergraph {
    num_nodes: usize,
    arcs: Vec<Hyperarc>,
    tail_incidence: Vec<Vec<ArcId>>,
    head_incidence: Vec<Vec<ArcId>>,
    signatures: HashMap<ArcSignature, ArcId>,
}

impl PartialEq for DirectedHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.num_nodes == other.num_nodes && self.arcs == other.arcs
    }
}

impl DirectedHypergraph {
    /// Builds from validated arcs; repeated arcs are dropped.
    pub fn from_arcs<I: IntoIterator<Item = Hyperarc>>(num_nodes: usize, arcs: I) -> Self {
        let mut b = HypergraphBuilder::new().with_nodes(num_nodes);
        for arc in arcs {
            // add_arc only fails on id overflow
            b.add_arc(arc).expect("arc count overflow");
        }
        b.build()
    }

    /// Builds from `(head, tail)` id slices; panics on invalid arcs.
    pub fn from_id_lists(num_nodes: usize, arcs: &[(&[u32], &[u32])]) -> Self {
        Self::from_arcs(num_nodes, arcs.iter().map(|(h, t)| Hyperarc::from_ids(h, t)))
    }

    pub fn empty(num_nodes: usize) -> Self {
        HypergraphBuilder::new().with_nodes(num_nodes).build()
    }

    #[inline]
    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    #[inline]
    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    #[inline]
    pub fn arc(&self, id: ArcId) -> &Hyperarc {
        &self.arcs[id.index()]
    }

    pub fn try_arc(&self, id: ArcId) -> Result<&Hyperarc> {
        self.arcs.get(id.index()).ok_or(Error::ArcOutOfRange(id))
    }

    pub fn arcs(&self) -> &[Hyperarc] {
        &self.arcs
    }

    pub fn arc_ids(&self) -> impl ExactSizeIterator<Item = ArcId> + '_ {
        (0..self.arcs.len() as u32).map(ArcId)
    }

    /// Arcs that contain `v` in their tail set.
    pub fn tail_incidence(&self, v: NodeId) -> &[ArcId] {
        &self.tail_incidence[v.index()]
    }

    /// Arcs that contain `v` in their head set.
    pub fn head_incidence(&self, v: NodeId) -> &[ArcId] {
        &self.head_incidence[v.index()]
    }

    /// O(1) lookup of an arc by its exact `(head, tail)` pair.
    pub fn find_arc(&self, arc: &Hyperarc) -> Option<ArcId> {
        self.signatures.get(&arc.signature()).copied()
    }

    pub fn degrees(&self) -> DegreeReport {
        DegreeReport {
            d_in: self.head_incidence.iter().map(|a| a.len() as u32).collect(),
            d_out: self.tail_incidence.iter().map(|a| a.len() as u32).collect(),
        }
    }

    /// Every arc has a single tail node.
    pub fn is_unit_tail(&self) -> bool {
        self.arcs.iter().all(|a| a.tail.len() == 1)
    }

    /// Every arc has `|H| = |T| = 1`.
    pub fn is_digraph(&self) -> bool {
        self.arcs.iter().all(|a| a.head.len() == 1 && a.tail.len() == 1)
    }

    /// Rebuilds the incidence maps and signature table from the arc list and
    /// compares them with the stored ones.
    pub fn incidence_consistent(&self) -> bool {
        let rebuilt = Self::from_arcs(self.num_nodes, self.arcs.iter().cloned());
        rebuilt.arcs.len() == self.arcs.len()
            && rebuilt.tail_incidence == self.tail_incidence
            && rebuilt.head_incidence == self.head_incidence
            && self.arcs.iter().enumerate().all(|(i, a)| self.find_arc(a) == Some(ArcId(i as u32)))
    }

    /// This hypergraph plus each arc's perfect reciprocal where it is missing.
    pub fn with_perfect_reciprocals(&self) -> DirectedHypergraph {
        let extra: Vec<Hyperarc> = self
            .arcs
            .iter()
            .map(Hyperarc::perfect_reciprocal)
            .collect();
        Self::from_arcs(self.num_nodes, self.arcs.iter().cloned().chain(extra))
    }

    /// Same node set, only the given arcs (in the given order).
    pub fn restrict_to(&self, ids: &[ArcId]) -> DirectedHypergraph {
        Self::from_arcs(self.num_nodes, ids.iter().map(|&id| self.arc(id).clone()))
    }
}

/// Per-node in- and out-degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    /// Number of arcs with the node in the head set.
    pub d_in: Vec<u32>,
    /// Number of arcs with the node in the tail set.
    pub d_out: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn fig1_like() -> DirectedHypergraph {
        // the `1,2<TAB>5,6 / 7<TAB>1,3 / 6,7<TAB>4` example, ids shifted down by one
        DirectedHypergraph::from_id_lists(8, &[(&[0, 1], &[4, 5]), (&[6], &[0, 2]), (&[5, 6], &[3])])
    }

    #[test]
    fn arc_sides_are_sorted_and_deduplicated() {
        let a = Hyperarc::from_ids(&[3, 1, 3], &[7, 5]);
        assert_eq!(a.head(), &[NodeId(1), NodeId(3)]);
        assert_eq!(a.tail(), &[NodeId(5), NodeId(7)]);
    }

    #[test]
    fn invalid_arcs_are_rejected() {
        assert!(matches!(
            Hyperarc::new([], [NodeId(1)]),
            Err(Error::InvalidArc { reason: "empty head set", .. })
        ));
        assert!(matches!(
            Hyperarc::new([NodeId(1)], []),
            Err(Error::InvalidArc { reason: "empty tail set", .. })
        ));
        assert_eq!(
            Hyperarc::new([NodeId(1), NodeId(2)], [NodeId(2), NodeId(3)]),
            Err(Error::OverlappingArc { index: 0, node: 2 })
        );
        assert!(Hyperarc::new([NodeId::SINK], [NodeId(0)]).is_err());
    }

    #[test]
    fn repair_mode_strips_overlap_from_tail() {
        let mut b = HypergraphBuilder::new().overlap_policy(OverlapPolicy::RepairTail);
        b.add([NodeId(1), NodeId(2)], [NodeId(2), NodeId(3)]).unwrap();
        let g = b.build();
        assert_eq!(g.arc(ArcId(0)).tail(), &[NodeId(3)]);

        let mut b = HypergraphBuilder::new().overlap_policy(OverlapPolicy::RepairTail);
        assert!(b.add([NodeId(1)], [NodeId(1)]).is_err());
    }

    #[test]
    fn duplicates_keep_first_occurrence() {
        let mut b = HypergraphBuilder::new();
        assert_eq!(b.add([NodeId(0)], [NodeId(1)]).unwrap(), Added::New(ArcId(0)));
        assert_eq!(b.add([NodeId(2)], [NodeId(1)]).unwrap(), Added::New(ArcId(1)));
        assert_eq!(b.add([NodeId(0)], [NodeId(1)]).unwrap(), Added::Duplicate(ArcId(0)));
        assert_eq!(b.duplicates(), 1);
        assert_eq!(b.build().num_arcs(), 2);
    }

    #[test]
    fn head_size_filter() {
        let mut b = HypergraphBuilder::new().max_head_size(Some(2));
        assert_eq!(b.add([NodeId(0), NodeId(1), NodeId(2)], [NodeId(3)]).unwrap(), Added::Filtered);
        assert!(matches!(b.add([NodeId(0), NodeId(1)], [NodeId(3)]).unwrap(), Added::New(_)));
        assert_eq!(b.filtered(), 1);
    }

    #[test]
    fn signature_separates_set_boundaries() {
        let a = Hyperarc::from_ids(&[1, 2], &[3]);
        let b = Hyperarc::from_ids(&[1], &[2, 3]);
        assert_ne!(a.signature(), b.signature());
    }

    #[test]
    fn degrees_of_fig1_like_graph() {
        let g = fig1_like();
        let d = g.degrees();
        // node 6 of the example is index 5: head of the third arc, tail of the first
        assert_eq!(d.d_in[5], 1);
        assert_eq!(d.d_out[5], 1);
        let total_head: usize = g.arcs().iter().map(|a| a.head().len()).sum();
        let total_tail: usize = g.arcs().iter().map(|a| a.tail().len()).sum();
        assert_eq!(d.d_in.iter().sum::<u32>() as usize, total_head);
        assert_eq!(d.d_out.iter().sum::<u32>() as usize, total_tail);
    }

    #[test]
    fn degrees_of_trivial_graphs() {
        let d = DirectedHypergraph::empty(4).degrees();
        assert_eq!(d.d_in, vec![0; 4]);
        assert_eq!(d.d_out, vec![0; 4]);

        let g = DirectedHypergraph::from_id_lists(3, &[(&[0], &[1])]);
        let d = g.degrees();
        assert_eq!(d.d_in, vec![1, 0, 0]);
        assert_eq!(d.d_out, vec![0, 1, 0]);
    }

    #[test]
    fn perfect_reciprocal_is_an_involution() {
        let a = Hyperarc::from_ids(&[1, 2], &[5, 6]);
        let r = perfect_reciprocal_of(&a);
        assert_eq!(r, Hyperarc::from_ids(&[5, 6], &[1, 2]));
        assert_eq!(perfect_reciprocal_of(&r), a);
    }

    #[test]
    fn perfect_reciprocal_lookup_hits_signature_map() {
        let g = DirectedHypergraph::from_id_lists(4, &[(&[0, 1], &[2, 3]), (&[2, 3], &[0, 1])]);
        let rev = g.arc(ArcId(0)).perfect_reciprocal();
        assert_eq!(g.find_arc(&rev), Some(ArcId(1)));
        assert_eq!(fig1_like().find_arc(&fig1_like().arc(ArcId(0)).perfect_reciprocal()), None);
    }

    #[test]
    fn incidence_maps_match_arcs() {
        let g = fig1_like();
        assert!(g.incidence_consistent());
        assert_eq!(g.tail_incidence(NodeId(0)), &[ArcId(1)]);
        assert_eq!(g.head_incidence(NodeId(0)), &[ArcId(0)]);
        assert_eq!(g.head_incidence(NodeId(7)), &[] as &[ArcId]);
    }

    #[test]
    fn augmentation_adds_missing_reverses_only() {
        let g = DirectedHypergraph::from_id_lists(3, &[(&[1], &[0]), (&[0], &[1]), (&[2], &[0])]);
        let aug = g.with_perfect_reciprocals();
        assert_eq!(aug.num_arcs(), 4);
        assert!(aug.find_arc(&Hyperarc::from_ids(&[0], &[2])).is_some());
    }
}
