//! Fixtures and randomized configurations for the reciprocity axioms.
//!
//! Arc-level axioms compare two targets with their reciprocal sets,
//! `(e_i, R_i)` and `(e_j, R_j)`, and demand `r(e_i, R_i) < r(e_j, R_j)`.
//! [`sample`] draws random configurations satisfying each axiom's
//! preconditions; [`fixture`] holds one hand-made configuration per axiom.
//! [`satisfaction_matrix`] checks every measure against both.
//!
//! Node layout used throughout: a target with `nh` head and `nt` tail nodes
//! has head `0..nh` and tail `nh..nh+nt`; any other node is numbered after
//! those.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselines::{
    b1_arc, b1_clique, b2_covered_pairs, b3_penalized_pairs, b4_no_normalization, b5_no_size_penalty,
    b6_reciprocity, b7_reciprocity,
};
use crate::hypergraph::{DirectedHypergraph, Hyperarc, HypergraphBuilder, NodeId};
use crate::measure::{digraph_reciprocity, hypergraph_reciprocity, reciprocity_of, ReciprocityConfig};
use crate::search::{all_reciprocities, SearchConfig};
use crate::Result;

/// Arc-level axioms with an `r(e_i, R_i) < r(e_j, R_j)` conclusion.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Existence of inverse overlap.
    One,
    /// More overlap.
    TwoA,
    /// Smaller difference.
    TwoB,
    /// Fewer reciprocal arcs, shared tail sets.
    ThreeA,
    /// Fewer reciprocal arcs, shared head sets.
    ThreeB,
    /// No bias.
    Four,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [Axiom::One, Axiom::TwoA, Axiom::TwoB, Axiom::ThreeA, Axiom::ThreeB, Axiom::Four];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::One => "1",
            Axiom::TwoA => "2A",
            Axiom::TwoB => "2B",
            Axiom::ThreeA => "3A",
            Axiom::ThreeB => "3B",
            Axiom::Four => "4",
        }
    }

    /// The fixture panel illustrating this axiom.
    pub fn panel(self) -> Panel {
        match self {
            Axiom::One => Panel::A,
            Axiom::TwoA => Panel::B,
            Axiom::TwoB => Panel::C,
            Axiom::ThreeA => Panel::D,
            Axiom::ThreeB => Panel::E,
            Axiom::Four => Panel::F,
        }
    }
}

/// Two targets with their reciprocal lists. Lists may repeat an arc.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub target_i: Hyperarc,
    pub set_i: Vec<Hyperarc>,
    pub target_j: Hyperarc,
    pub set_j: Vec<Hyperarc>,
}

impl Comparison {
    /// `(f(e_i, R_i), f(e_j, R_j))`.
    pub fn evaluate<F>(&self, f: F) -> Result<(f64, f64)>
    where
        F: Fn(&Hyperarc, &[&Hyperarc]) -> Result<f64>,
    {
        let ri: Vec<&Hyperarc> = self.set_i.iter().collect();
        let rj: Vec<&Hyperarc> = self.set_j.iter().collect();
        Ok((f(&self.target_i, &ri)?, f(&self.target_j, &rj)?))
    }

    pub fn hyperrec(&self, alpha: f64) -> Result<(f64, f64)> {
        self.evaluate(|e, r| reciprocity_of(e, r, alpha))
    }
}

fn ids(range: core::ops::Range<u32>) -> Vec<NodeId> {
    range.map(NodeId).collect()
}

fn arc(head: &[u32], tail: &[u32]) -> Hyperarc {
    Hyperarc::from_ids(head, tail)
}

/// The six hand-made configurations, one per arc-level axiom.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Panel {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Panel {
    pub const ALL: [Panel; 6] = [Panel::A, Panel::B, Panel::C, Panel::D, Panel::E, Panel::F];

    pub fn letter(self) -> char {
        match self {
            Panel::A => 'a',
            Panel::B => 'b',
            Panel::C => 'c',
            Panel::D => 'd',
            Panel::E => 'e',
            Panel::F => 'f',
        }
    }
}

/// Hand-made configuration for `panel`.
pub fn fixture(panel: Panel) -> Comparison {
    // 4x4 target: head 0..4, tail 4..8
    let t44 = arc(&[0, 1, 2, 3], &[4, 5, 6, 7]);
    // 3x3 target: head 0..3, tail 3..6
    let t33 = arc(&[0, 1, 2], &[3, 4, 5]);
    match panel {
        Panel::A => Comparison {
            target_i: t44.clone(),
            set_i: alloc::vec![arc(&[4, 5, 6, 7], &[8])],
            target_j: t44,
            set_j: alloc::vec![arc(&[4, 5, 6, 7], &[0, 1, 2]), arc(&[4, 5, 8], &[0])],
        },
        Panel::B => Comparison {
            target_i: t33.clone(),
            set_i: alloc::vec![arc(&[3, 6], &[0, 1])],
            target_j: t33,
            set_j: alloc::vec![arc(&[3, 4], &[0, 1])],
        },
        Panel::C => Comparison {
            target_i: t33.clone(),
            set_i: alloc::vec![arc(&[3, 4, 6], &[0, 1])],
            target_j: t33,
            set_j: alloc::vec![arc(&[3, 4], &[0, 1])],
        },
        Panel::D => Comparison {
            target_i: t44.clone(),
            set_i: alloc::vec![arc(&[4], &[0, 1, 2]), arc(&[5, 6], &[0, 1, 2])],
            target_j: t44,
            set_j: alloc::vec![arc(&[4, 5, 6], &[0, 1, 2])],
        },
        Panel::E => Comparison {
            target_i: t44.clone(),
            set_i: alloc::vec![arc(&[4, 5, 6], &[0]), arc(&[4, 5, 6], &[1, 2])],
            target_j: t44,
            set_j: alloc::vec![arc(&[4, 5, 6], &[0, 1, 2])],
        },
        Panel::F => {
            let t = arc(&[0, 1], &[2, 3, 4, 5]);
            let pairs = |ps: &[[u32; 2]]| ps.iter().map(|p| arc(p, &[0, 1])).collect::<Vec<_>>();
            Comparison {
                target_i: t.clone(),
                set_i: pairs(&[[2, 3], [2, 3], [2, 4], [2, 5]]),
                target_j: t,
                set_j: pairs(&[[2, 3], [2, 4], [3, 5], [4, 5]]),
            }
        }
    }
}

/// The three-arc digraph `1→2, 2→1, 1→3` on nodes `0, 1, 2`.
pub fn small_digraph() -> DirectedHypergraph {
    DirectedHypergraph::from_id_lists(3, &[(&[1], &[0]), (&[0], &[1]), (&[2], &[0])])
}

/// Allocates fresh node ids past the target's nodes.
struct Fresh(u32);

impl Fresh {
    fn take(&mut self, k: usize) -> Vec<NodeId> {
        let out = ids(self.0..self.0 + k as u32);
        self.0 += k as u32;
        out
    }
}

fn pick<R: Rng>(rng: &mut R, from: &[NodeId], k: usize) -> Vec<NodeId> {
    from.choose_multiple(rng, k).copied().collect()
}

fn build(head: Vec<NodeId>, tail: Vec<NodeId>) -> Hyperarc {
    Hyperarc::new(head, tail).expect("sampled arcs are valid by construction")
}

fn target(nh: usize, nt: usize) -> (Hyperarc, Vec<NodeId>, Vec<NodeId>) {
    let h = ids(0..nh as u32);
    let t = ids(nh as u32..(nh + nt) as u32);
    (build(h.clone(), t.clone()), h, t)
}

/// Arc with `x` tail-side and `y` head-side nodes of the target plus fresh
/// padding: head `x` nodes of `t` + `hx` fresh, tail `y` nodes of `h` + `tx`
/// fresh.
#[allow(clippy::too_many_arguments)]
fn around<R: Rng>(rng: &mut R, h: &[NodeId], t: &[NodeId], x: usize, y: usize, hx: usize, tx: usize, fresh: &mut Fresh) -> Hyperarc {
    let mut head = pick(rng, t, x);
    head.extend(fresh.take(hx));
    let mut tail = pick(rng, h, y);
    tail.extend(fresh.take(tx));
    build(head, tail)
}

/// Random arc relative to a target whose inverse overlap is controlled:
/// when `covers_tail` some target tail nodes are in the head, when
/// `covers_head` some target head nodes are in the tail.
fn loose_arc<R: Rng>(rng: &mut R, h: &[NodeId], t: &[NodeId], covers_tail: bool, covers_head: bool, fresh: &mut Fresh) -> Hyperarc {
    let x = if covers_tail { rng.gen_range(1..=t.len()) } else { 0 };
    let y = if covers_head { rng.gen_range(1..=h.len()) } else { 0 };
    let hx = if x == 0 { rng.gen_range(1..=2) } else { rng.gen_range(0..=1) };
    let tx = if y == 0 { rng.gen_range(1..=2) } else { rng.gen_range(0..=1) };
    around(rng, h, t, x, y, hx, tx, fresh)
}

fn sample_one<R: Rng>(rng: &mut R) -> Comparison {
    let (nh_i, nt_i) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let (ti, hi, tti) = target(nh_i, nt_i);
    let mut fresh = Fresh((nh_i + nt_i) as u32);
    let set_i = (0..rng.gen_range(1..=3))
        .map(|_| {
            let side = rng.gen_range(0..3);
            loose_arc(rng, &hi, &tti, side == 1, side == 2, &mut fresh)
        })
        .collect();

    let (nh_j, nt_j) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let (tj, hj, ttj) = target(nh_j, nt_j);
    let mut fresh = Fresh((nh_j + nt_j) as u32);
    let k = rng.gen_range(1..=3);
    let set_j = (0..k)
        .map(|n| {
            if n == 0 {
                loose_arc(rng, &hj, &ttj, true, true, &mut fresh)
            } else {
                let (a, b) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
                loose_arc(rng, &hj, &ttj, a, b, &mut fresh)
            }
        })
        .collect();
    Comparison { target_i: ti, set_i, target_j: tj, set_j }
}

fn sample_two_a<R: Rng>(rng: &mut R) -> Comparison {
    loop {
        let (nh, nt) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let (mx, my) = (a.min(nt), b.min(nh));
        let xi = rng.gen_range(1..=mx);
        let xj = rng.gen_range(1..=mx);
        let yi = rng.gen_range(1..=my);
        let yj = rng.gen_range(1..=my);
        let case_i = xi < xj && yi <= yj;
        let case_ii = xi <= xj && yi < yj;
        if !(case_i || case_ii) {
            continue;
        }
        let (t, h, tt) = target(nh, nt);
        let mut fresh = Fresh((nh + nt) as u32);
        let ri = around(rng, &h, &tt, xi, yi, a - xi, b - yi, &mut fresh);
        let rj = around(rng, &h, &tt, xj, yj, a - xj, b - yj, &mut fresh);
        return Comparison { target_i: t.clone(), set_i: alloc::vec![ri], target_j: t, set_j: alloc::vec![rj] };
    }
}

fn sample_two_b<R: Rng>(rng: &mut R) -> Comparison {
    let (nh, nt) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let aj = rng.gen_range(1..=5);
    let ai = rng.gen_range(aj + 1..=aj + 4);
    let b = rng.gen_range(1..=5);
    let x = rng.gen_range(1..=aj.min(nt));
    let y = rng.gen_range(1..=b.min(nh));
    let (t, h, tt) = target(nh, nt);
    let mut fresh = Fresh((nh + nt) as u32);
    let ri = around(rng, &h, &tt, x, y, ai - x, b - y, &mut fresh);
    let rj = around(rng, &h, &tt, x, y, aj - x, b - y, &mut fresh);
    Comparison { target_i: t.clone(), set_i: alloc::vec![ri], target_j: t, set_j: alloc::vec![rj] }
}

/// `split` side shared by both arcs of `R_i`, the other side partitioned.
fn sample_three<R: Rng>(rng: &mut R, shared_tail: bool) -> Comparison {
    // the partitioned side needs at least two nodes
    let (nh, nt) = if shared_tail {
        (rng.gen_range(1..=5), rng.gen_range(2..=5))
    } else {
        (rng.gen_range(2..=5), rng.gen_range(1..=5))
    };
    let (t, h, tt) = target(nh, nt);
    let (shared_from, split_from) = if shared_tail { (&h, &tt) } else { (&tt, &h) };
    let s = rng.gen_range(1..=shared_from.len());
    let a = rng.gen_range(2..=split_from.len());
    let b1 = rng.gen_range(1..a);

    let shared_i = pick(rng, shared_from, s);
    let mut split = pick(rng, split_from, a);
    let second = split.split_off(b1);
    let shared_j = pick(rng, shared_from, s);
    let whole_j = pick(rng, split_from, a);

    let mk = |split: Vec<NodeId>, shared: Vec<NodeId>| {
        if shared_tail {
            build(split, shared)
        } else {
            build(shared, split)
        }
    };
    Comparison {
        target_i: t.clone(),
        set_i: alloc::vec![mk(split, shared_i.clone()), mk(second, shared_i)],
        target_j: t,
        set_j: alloc::vec![mk(whole_j, shared_j)],
    }
}

fn sample_four<R: Rng>(rng: &mut R) -> Comparison {
    let k = rng.gen_range(3..=6);
    let nh = rng.gen_range(1..=4);
    let (t, h, tt) = target(nh, k);
    let pair_arc = |a: NodeId, b: NodeId| build(alloc::vec![a, b], h.clone());

    let set_i = loop {
        let mut cover = alloc::vec![0usize; k];
        let arcs: Vec<Hyperarc> = (0..k)
            .map(|_| {
                let p = pick(rng, &tt, 2);
                cover[p[0].index() - nh] += 1;
                cover[p[1].index() - nh] += 1;
                pair_arc(p[0], p[1])
            })
            .collect();
        if cover.iter().any(|&c| c != cover[0]) {
            break arcs;
        }
    };
    let mut cycle = tt.clone();
    cycle.shuffle(rng);
    let set_j = (0..k).map(|n| pair_arc(cycle[n], cycle[(n + 1) % k])).collect();
    Comparison { target_i: t.clone(), set_i, target_j: t, set_j }
}

/// A random configuration meeting the preconditions of `axiom`.
pub fn sample<R: Rng>(axiom: Axiom, rng: &mut R) -> Comparison {
    match axiom {
        Axiom::One => sample_one(rng),
        Axiom::TwoA => sample_two_a(rng),
        Axiom::TwoB => sample_two_b(rng),
        Axiom::ThreeA => sample_three(rng, true),
        Axiom::ThreeB => sample_three(rng, false),
        Axiom::Four => sample_four(rng),
    }
}

/// Random hypergraph with up to `max_nodes` nodes, up to `max_arcs` arcs and
/// head and tail sizes in `1..=max_size`. Repeated arcs are dropped, so the
/// arc count can come out lower.
pub fn random_hypergraph<R: Rng>(rng: &mut R, max_nodes: usize, max_arcs: usize, max_size: usize) -> DirectedHypergraph {
    let n = rng.gen_range(2..=max_nodes.max(2));
    let m = rng.gen_range(1..=max_arcs.max(1));
    let nodes = ids(0..n as u32);
    let mut b = HypergraphBuilder::new().with_nodes(n);
    for _ in 0..m {
        let hs = rng.gen_range(1..=max_size.min(n - 1));
        let ts = rng.gen_range(1..=max_size.min(n - hs));
        let chosen = pick(rng, &nodes, hs + ts);
        let (head, tail) = chosen.split_at(hs);
        b.add(head.iter().copied(), tail.iter().copied()).expect("disjoint by construction");
    }
    b.build()
}

/// Random hypergraph in which every arc has a single tail node.
pub fn random_unit_tail<R: Rng>(rng: &mut R, max_nodes: usize, max_arcs: usize, max_head: usize) -> DirectedHypergraph {
    let n = rng.gen_range(2..=max_nodes.max(2));
    let m = rng.gen_range(1..=max_arcs.max(1));
    let nodes = ids(0..n as u32);
    let mut b = HypergraphBuilder::new().with_nodes(n);
    for _ in 0..m {
        let hs = rng.gen_range(1..=max_head.min(n - 1));
        let chosen = pick(rng, &nodes, hs + 1);
        b.add(chosen[1..].iter().copied(), [chosen[0]]).expect("disjoint by construction");
    }
    b.build()
}

/// Random simple digraph as a hypergraph with `|H| = |T| = 1`.
pub fn random_digraph<R: Rng>(rng: &mut R, max_nodes: usize, max_arcs: usize) -> DirectedHypergraph {
    random_hypergraph(rng, max_nodes, max_arcs, 1)
}

/// Arc-level measures compared in the matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArcMeasure {
    B1,
    B2,
    B3,
    B4,
    B5,
    HyperRec,
}

impl ArcMeasure {
    pub const ALL: [ArcMeasure; 6] =
        [ArcMeasure::B1, ArcMeasure::B2, ArcMeasure::B3, ArcMeasure::B4, ArcMeasure::B5, ArcMeasure::HyperRec];

    pub fn name(self) -> &'static str {
        match self {
            ArcMeasure::B1 => "B1",
            ArcMeasure::B2 => "B2",
            ArcMeasure::B3 => "B3",
            ArcMeasure::B4 => "B4",
            ArcMeasure::B5 => "B5",
            ArcMeasure::HyperRec => "HyperRec",
        }
    }

    pub fn eval(self, e: &Hyperarc, r: &[&Hyperarc], alpha: f64) -> Result<f64> {
        match self {
            ArcMeasure::B1 => b1_arc(e, r),
            ArcMeasure::B2 => b2_covered_pairs(e, r),
            ArcMeasure::B3 => b3_penalized_pairs(e, r, alpha),
            ArcMeasure::B4 => b4_no_normalization(e, r, alpha),
            ArcMeasure::B5 => b5_no_size_penalty(e, r),
            ArcMeasure::HyperRec => reciprocity_of(e, r, alpha),
        }
    }
}

/// Hypergraph-level measures compared in the matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GraphMeasure {
    B1,
    B6,
    B7,
    HyperRec,
}

impl GraphMeasure {
    pub const ALL: [GraphMeasure; 4] = [GraphMeasure::B1, GraphMeasure::B6, GraphMeasure::B7, GraphMeasure::HyperRec];

    pub fn name(self) -> &'static str {
        match self {
            GraphMeasure::B1 => "B1",
            GraphMeasure::B6 => "B6",
            GraphMeasure::B7 => "B7",
            GraphMeasure::HyperRec => "HyperRec",
        }
    }

    pub fn eval(self, g: &DirectedHypergraph, cfg: &ReciprocityConfig) -> Result<f64> {
        match self {
            GraphMeasure::B1 => b1_clique(g),
            GraphMeasure::B6 => b6_reciprocity(g, cfg),
            GraphMeasure::B7 => b7_reciprocity(g, cfg),
            GraphMeasure::HyperRec => hypergraph_reciprocity(&all_reciprocities(g, cfg, &SearchConfig::default())?),
        }
    }
}

/// One cell of the measure × axiom matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixCell {
    pub measure: &'static str,
    pub axiom: &'static str,
    pub satisfied: bool,
    pub checked: usize,
    pub violations: usize,
    /// First violation found, empty when satisfied.
    pub evidence: String,
}

struct Tally {
    checked: usize,
    violations: usize,
    evidence: String,
}

impl Tally {
    fn new() -> Self {
        Self { checked: 0, violations: 0, evidence: String::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            if self.violations == 0 {
                self.evidence = what();
            }
            self.violations += 1;
        }
    }

    fn cell(self, measure: &'static str, axiom: &'static str) -> MatrixCell {
        MatrixCell {
            measure,
            axiom,
            satisfied: self.violations == 0,
            checked: self.checked,
            violations: self.violations,
            evidence: self.evidence,
        }
    }
}

/// Checks every measure on the fixtures plus `trials` random configurations
/// per axiom. Arc-level cells cover axioms 1–5 (5 = values stay in `[0, 1]`);
/// hypergraph-level cells cover axioms 6–8.
pub fn satisfaction_matrix(trials: usize, seed: u64, alpha: f64) -> Result<Vec<MatrixCell>> {
    let cfg = ReciprocityConfig::new(alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<(Axiom, String, Comparison)> = Vec::new();
    for ax in Axiom::ALL {
        cases.push((ax, format!("panel ({})", ax.panel().letter()), fixture(ax.panel())));
        for n in 0..trials {
            cases.push((ax, format!("random case {n}"), sample(ax, &mut rng)));
        }
    }

    let mut out = Vec::new();
    for m in ArcMeasure::ALL {
        let mut range = Tally::new();
        for (group, axiom_label) in [("1", &[Axiom::One][..]), ("2", &[Axiom::TwoA, Axiom::TwoB]), ("3", &[Axiom::ThreeA, Axiom::ThreeB]), ("4", &[Axiom::Four])] {
            let mut t = Tally::new();
            for (ax, name, c) in cases.iter().filter(|(ax, _, _)| axiom_label.contains(ax)) {
                let (ri, rj) = c.evaluate(|e, r| m.eval(e, r, alpha))?;
                t.record(ri < rj, || format!("axiom {} {name}: {ri:.4} vs {rj:.4}", ax.label()));
                for v in [ri, rj] {
                    range.record((0.0..=1.0).contains(&v), || format!("{name}: value {v:.4}"));
                }
            }
            out.push(t.cell(m.name(), group));
        }
        out.push(range.cell(m.name(), "5"));
    }

    let digraphs: Vec<DirectedHypergraph> = core::iter::once(small_digraph())
        .chain((0..trials).map(|_| random_digraph(&mut rng, 6, 10)))
        .collect();
    let hypergraphs: Vec<DirectedHypergraph> = (0..trials).map(|_| random_hypergraph(&mut rng, 8, 6, 3)).collect();
    for m in GraphMeasure::ALL {
        let mut six = Tally::new();
        let mut seven = Tally::new();
        let mut eight = Tally::new();
        for (n, g) in digraphs.iter().enumerate() {
            let v = m.eval(g, &cfg)?;
            let want = digraph_reciprocity(g)?;
            six.record((v - want).abs() < 1e-9, || format!("digraph {n}: {v:.4} vs {want:.4}"));
            seven.record((0.0..=1.0).contains(&v), || format!("digraph {n}: value {v:.4}"));
        }
        for (n, g) in hypergraphs.iter().enumerate() {
            let v = m.eval(g, &cfg)?;
            seven.record((0.0..=1.0).contains(&v), || format!("hypergraph {n}: value {v:.4}"));
            let top = m.eval(&g.with_perfect_reciprocals(), &cfg)?;
            eight.record((top - 1.0).abs() < 1e-9, || format!("hypergraph {n}: augmented value {top:.4}"));
            let lone = g.restrict_to(&[crate::hypergraph::ArcId(0)]);
            let bottom = m.eval(&lone, &cfg).unwrap_or(f64::NAN);
            eight.record(bottom == 0.0, || format!("hypergraph {n}: single-arc value {bottom:.4}"));
        }
        out.push(six.cell(m.name(), "6"));
        out.push(seven.cell(m.name(), "7"));
        out.push(eight.cell(m.name(), "8"));
    }
    Ok(out)
}
