//! Exact maximization of `r(e, R)` over reciprocal sets.
//!
//! The pipeline per target arc `e_i = <H_i, T_i>`:
//!
//! 1. `Ω`: arcs `e_k` with `H_i ∩ T_k ≠ ∅` and `T_i ∩ H_k ≠ ∅`, found through
//!    the incidence indexes. An empty `Ω` gives `r = 0`.
//! 2. If the perfect reciprocal `<T_i, H_i>` exists, `r = 1`.
//! 3. `Ω` is grouped by `(H_i ∩ T_k, T_i ∩ H_k)`; each group keeps the member
//!    with the smallest head set (lowest id on ties). These representatives
//!    form `Ψ`, and every non-empty subset of `Ψ` is evaluated.
//!
//! When every arc has a single tail node only the prefixes of `Ψ` sorted by
//! head size need to be evaluated.
//!
//! Subsets are walked in Gray-code order so each step adds or removes one arc.
//! The walker state is integral: transition masses are kept scaled by the lcm
//! of the head sizes in `Ψ`, so the state of a subset does not depend on the
//! path that reached it. If the lcm overflows, per-size counts are kept
//! instead.
//!
//! Keeping one arc per group is not always enough: for small `α` a set with
//! two members of the same group can score higher, because the extra arc
//! shifts the walker's mixing weights while costing almost nothing in size
//! penalty. [`group_search_profile`] covers that case. Within a group a
//! smaller head set is never worse, so it evaluates every choice of "the
//! `c` smallest members" per group, which is exact over all subsets of `E`.
//!
//! Rather than one maximum per `α`, the search records the best divergence
//! term for each subset size. Any `α` is then resolved from that profile
//! without searching again.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::hypergraph::{ArcId, DirectedHypergraph, Hyperarc, NodeId};
use crate::math::size_penalty;
use crate::measure::{reciprocity_of, ArcReciprocity, ReciprocityConfig};
use crate::probability::jsd_term;
use crate::{Error, Result};

/// Which sets [`profile`] explores.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Subsets of `Ψ` (one representative per group); prefixes only on
    /// unit-tail hypergraphs.
    #[default]
    Representatives,
    /// Any number of members per group ([`group_search_profile`]).
    Groups,
}

/// Limits for the exhaustive searches.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest `|Ψ|` the exhaustive search accepts; group search accepts
    /// up to `2^max_psi` combinations.
    pub max_psi: usize,
    /// Largest `|E|` the brute-force oracle accepts.
    pub oracle_limit: usize,
    pub mode: SearchMode,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { max_psi: 25, oracle_limit: 15, mode: SearchMode::Representatives }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_psi > 40 {
            return Err(Error::Parameter(alloc::format!("max_psi {} is above the supported 40", self.max_psi)));
        }
        if self.oracle_limit > 24 {
            return Err(Error::Parameter(alloc::format!(
                "oracle_limit {} is above the supported 24",
                self.oracle_limit
            )));
        }
        Ok(())
    }
}

/// Arcs inversely overlapping `target`, ascending.
pub fn inverse_overlaps(g: &DirectedHypergraph, target: ArcId) -> Vec<ArcId> {
    let e = g.arc(target);
    let mut from_head: Vec<ArcId> = e.head().iter().flat_map(|&v| g.tail_incidence(v).iter().copied()).collect();
    let mut from_tail: Vec<ArcId> = e.tail().iter().flat_map(|&v| g.head_incidence(v).iter().copied()).collect();
    from_head.sort_unstable();
    from_head.dedup();
    from_tail.sort_unstable();
    from_tail.dedup();
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < from_head.len() && j < from_tail.len() {
        match from_head[i].cmp(&from_tail[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(from_head[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Group key `(H_i ∩ T_k, T_i ∩ H_k)`.
pub type GroupKey = (Vec<NodeId>, Vec<NodeId>);

fn intersection(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

/// `Ω` grouped by the nodes each arc covers.
pub fn group_table(g: &DirectedHypergraph, target: ArcId, omega: &[ArcId]) -> BTreeMap<GroupKey, Vec<ArcId>> {
    let e = g.arc(target);
    let mut groups: BTreeMap<GroupKey, Vec<ArcId>> = BTreeMap::new();
    for &k in omega {
        let other = g.arc(k);
        let key = (intersection(e.head(), other.tail()), intersection(e.tail(), other.head()));
        groups.entry(key).or_default().push(k);
    }
    groups
}

fn representative(g: &DirectedHypergraph, members: &[ArcId]) -> ArcId {
    *members
        .iter()
        .min_by_key(|&&k| (g.arc(k).head().len(), k))
        .expect("groups are never empty")
}

/// `Ω`, the perfect reciprocal if present, the groups and `Ψ`.
#[derive(Clone, Debug)]
pub struct ReducedSpace {
    pub omega: Vec<ArcId>,
    pub perfect: Option<ArcId>,
    pub groups: BTreeMap<GroupKey, Vec<ArcId>>,
    /// One representative per group, in group-key order.
    pub psi: Vec<ArcId>,
}

pub fn reduced_space(g: &DirectedHypergraph, target: ArcId) -> Result<ReducedSpace> {
    let e = g.try_arc(target)?;
    let omega = inverse_overlaps(g, target);
    let perfect = if omega.is_empty() { None } else { g.find_arc(&e.perfect_reciprocal()) };
    let groups = group_table(g, target, &omega);
    let psi = groups.values().map(|m| representative(g, m)).collect();
    Ok(ReducedSpace { omega, perfect, groups, psi })
}

/// Entry `s - 1`: best base value over sets of size `s`, with its set.
type BestBySize = Vec<Option<(f64, Vec<ArcId>)>>;

#[derive(Clone, Debug, PartialEq)]
enum Outcome {
    NoOverlap,
    Perfect(ArcId),
    /// Entry `s - 1` holds the best `1 − Σ JSD/(|H|·L_MAX)` over evaluated
    /// sets of size `s`, with its set.
    BySize(BestBySize),
}

/// Per-size search result for one arc, resolvable for any `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchProfile {
    pub arc: ArcId,
    pub omega: usize,
    pub psi: usize,
    pub searched: u64,
    outcome: Outcome,
}

impl SearchProfile {
    /// Maximum of `(1/s)^α · best(s)` over subset sizes `s`; ties go to the
    /// smaller size.
    pub fn resolve(&self, alpha: f64) -> ArcReciprocity {
        let (value, reciprocal_set) = match &self.outcome {
            Outcome::NoOverlap => (0.0, Vec::new()),
            Outcome::Perfect(k) => (1.0, alloc::vec![*k]),
            Outcome::BySize(best) => {
                let mut top: Option<(f64, &Vec<ArcId>)> = None;
                for (i, entry) in best.iter().enumerate() {
                    if let Some((base, set)) = entry {
                        let v = size_penalty(i + 1, alpha) * base;
                        if top.is_none_or(|(t, _)| v > t) {
                            top = Some((v, set));
                        }
                    }
                }
                let (v, set) = top.expect("non-empty search space");
                (v, set.clone())
            }
        };
        ArcReciprocity {
            arc: self.arc,
            value,
            reciprocal_set,
            searched: self.searched,
            omega: self.omega,
            psi: self.psi,
        }
    }
}

struct Member {
    id: ArcId,
    /// Positions in `H_i` of `H_i ∩ T_k`.
    heads: Vec<usize>,
    /// Positions in `T_i` of `T_i ∩ H_k`.
    tails: Vec<usize>,
    head_size: u64,
}

enum Scale {
    /// Masses scaled by `l`; arc `k` adds `w[k] = l / |H_k|`.
    Lcm { l: u64, w: Vec<u64> },
    /// Per distinct head size counts; `slot[k]` indexes `sizes`.
    Counts { sizes: Vec<u64>, slot: Vec<usize> },
}

/// Incremental walker state for subsets of `Ψ`.
struct Evaluator {
    nh: usize,
    nt: usize,
    q: f64,
    members: Vec<Member>,
    scale: Scale,
    /// Number of active arcs whose tail contains each head node.
    hits: Vec<u64>,
    /// Lcm: `nh × nt` scaled masses. Counts: `nh × nt × sizes`.
    mass: Vec<u64>,
    div: Vec<f64>,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn positions(of: &[NodeId], within: &[NodeId]) -> Vec<usize> {
    of.iter().filter_map(|v| within.binary_search(v).ok()).collect()
}

impl Evaluator {
    fn new(target: &Hyperarc, arcs: &[(ArcId, &Hyperarc)], force_counts: bool) -> Self {
        let nh = target.head().len();
        let nt = target.tail().len();
        let members: Vec<Member> = arcs
            .iter()
            .map(|&(id, a)| Member {
                id,
                heads: positions(a.tail(), target.head()),
                tails: positions(a.head(), target.tail()),
                head_size: a.head().len() as u64,
            })
            .collect();

        let lcm = members.iter().try_fold(1u64, |l, m| {
            (l / gcd(l, m.head_size)).checked_mul(m.head_size)
        });
        let bound = lcm.and_then(|l| l.checked_mul(members.len().max(1) as u64));
        let scale = match (lcm, bound, force_counts) {
            (Some(l), Some(_), false) => Scale::Lcm { l, w: members.iter().map(|m| l / m.head_size).collect() },
            _ => {
                let mut sizes: Vec<u64> = members.iter().map(|m| m.head_size).collect();
                sizes.sort_unstable();
                sizes.dedup();
                let slot = members.iter().map(|m| sizes.binary_search(&m.head_size).unwrap()).collect();
                Scale::Counts { sizes, slot }
            }
        };
        let width = match &scale {
            Scale::Lcm { .. } => 1,
            Scale::Counts { sizes, .. } => sizes.len(),
        };
        Self {
            nh,
            nt,
            q: 1.0 / nt as f64,
            members,
            scale,
            hits: alloc::vec![0; nh],
            mass: alloc::vec![0; nh * nt * width],
            div: alloc::vec![LN_2; nh],
        }
    }

    fn toggle(&mut self, k: usize, on: bool) {
        let m = &self.members[k];
        for &h in &m.heads {
            if on {
                self.hits[h] += 1;
            } else {
                self.hits[h] -= 1;
            }
            for &v in &m.tails {
                let (idx, add) = match &self.scale {
                    Scale::Lcm { w, .. } => (h * self.nt + v, w[k]),
                    Scale::Counts { sizes, slot } => ((h * self.nt + v) * sizes.len() + slot[k], 1),
                };
                if on {
                    self.mass[idx] += add;
                } else {
                    self.mass[idx] -= add;
                }
            }
        }
        for i in 0..self.members[k].heads.len() {
            let h = self.members[k].heads[i];
            self.div[h] = self.head_divergence(h);
        }
    }

    /// `JSD(p_h, uniform over T_i)`. Mass outside `T_i`, sink included,
    /// contributes `ln 2 / 2` per unit.
    fn head_divergence(&self, h: usize) -> f64 {
        let c = self.hits[h];
        if c == 0 {
            return LN_2;
        }
        let mut total = 0.0;
        let outside = match &self.scale {
            Scale::Lcm { l, .. } => {
                let denom = l * c;
                let row = &self.mass[h * self.nt..(h + 1) * self.nt];
                let mut inside = 0u64;
                for &s in row {
                    inside += s;
                    total += jsd_term(s as f64 / denom as f64, self.q);
                }
                (denom - inside) as f64 / denom as f64
            }
            Scale::Counts { sizes, .. } => {
                let ns = sizes.len();
                let mut inside = 0.0;
                for v in 0..self.nt {
                    let cell = &self.mass[(h * self.nt + v) * ns..(h * self.nt + v + 1) * ns];
                    let s: f64 = cell.iter().zip(sizes).map(|(&n, &sz)| n as f64 / sz as f64).sum();
                    let p = s / c as f64;
                    inside += p;
                    total += jsd_term(p, self.q);
                }
                (1.0 - inside).max(0.0)
            }
        };
        total += 0.5 * outside * LN_2;
        total.clamp(0.0, LN_2)
    }

    /// `1 − Σ_h JSD / (|H_i|·L_MAX)` for the current subset.
    fn base(&self) -> f64 {
        let s: f64 = self.div.iter().sum();
        (1.0 - s / (self.nh as f64 * LN_2)).clamp(0.0, 1.0)
    }

    fn ids(&self, mask: u64) -> Vec<ArcId> {
        let mut ids: Vec<ArcId> = (0..self.members.len())
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| self.members[k].id)
            .collect();
        ids.sort_unstable();
        ids
    }
}

fn exhaustive(target: &Hyperarc, psi: &[(ArcId, &Hyperarc)], force_counts: bool) -> (BestBySize, u64) {
    let m = psi.len();
    let mut ev = Evaluator::new(target, psi, force_counts);
    let mut best: Vec<Option<(f64, u64)>> = alloc::vec![None; m];
    let mut mask = 0u64;
    let mut size = 0usize;
    let total = 1u64 << m;
    for step in 1..total {
        let k = step.trailing_zeros() as usize;
        let on = mask >> k & 1 == 0;
        mask ^= 1 << k;
        if on {
            size += 1;
        } else {
            size -= 1;
        }
        ev.toggle(k, on);
        let b = ev.base();
        let slot = &mut best[size - 1];
        if slot.is_none_or(|(cur, _)| b > cur) {
            *slot = Some((b, mask));
        }
    }
    let out = best.into_iter().map(|e| e.map(|(b, mk)| (b, ev.ids(mk)))).collect();
    (out, total - 1)
}

fn prefixes(target: &Hyperarc, sorted: &[(ArcId, &Hyperarc)]) -> (BestBySize, u64) {
    let mut ev = Evaluator::new(target, sorted, false);
    let mut out = Vec::with_capacity(sorted.len());
    let mut mask = 0u64;
    for k in 0..sorted.len() {
        ev.toggle(k, true);
        mask |= 1 << k;
        out.push(Some((ev.base(), ev.ids(mask))));
    }
    (out, sorted.len() as u64)
}

fn profile_with(
    g: &DirectedHypergraph,
    target: ArcId,
    scfg: &SearchConfig,
    force_counts: bool,
) -> Result<SearchProfile> {
    scfg.validate()?;
    let space = reduced_space(g, target)?;
    let mut profile = SearchProfile {
        arc: target,
        omega: space.omega.len(),
        psi: space.psi.len(),
        searched: 0,
        outcome: Outcome::NoOverlap,
    };
    if space.omega.is_empty() {
        return Ok(profile);
    }
    if let Some(k) = space.perfect {
        profile.outcome = Outcome::Perfect(k);
        return Ok(profile);
    }
    if space.psi.len() > scfg.max_psi {
        return Err(Error::SearchBudget { arc: target, psi: space.psi.len(), cap: scfg.max_psi });
    }
    let psi: Vec<(ArcId, &Hyperarc)> = space.psi.iter().map(|&k| (k, g.arc(k))).collect();
    let (best, searched) = exhaustive(g.arc(target), &psi, force_counts);
    profile.searched = searched;
    profile.outcome = Outcome::BySize(best);
    Ok(profile)
}

/// Per-group member counts walked in reflected mixed-radix Gray order: each
/// step moves one group's count by one, i.e. toggles one arc.
fn group_walk(target: &Hyperarc, groups: &[Vec<(ArcId, &Hyperarc)>]) -> (BestBySize, u64) {
    let flat: Vec<(ArcId, &Hyperarc)> = groups.iter().flatten().copied().collect();
    let starts: Vec<usize> = groups
        .iter()
        .scan(0, |acc, g| {
            let s = *acc;
            *acc += g.len();
            Some(s)
        })
        .collect();
    let mut ev = Evaluator::new(target, &flat, false);
    let mut best: Vec<Option<(f64, Vec<usize>)>> = alloc::vec![None; flat.len()];
    let mut count = alloc::vec![0usize; groups.len()];
    let mut dir = alloc::vec![true; groups.len()];
    let mut size = 0usize;
    let mut searched = 0u64;
    loop {
        let mut j = 0;
        while j < groups.len() {
            let can = if dir[j] { count[j] < groups[j].len() } else { count[j] > 0 };
            if can {
                break;
            }
            dir[j] = !dir[j];
            j += 1;
        }
        if j == groups.len() {
            break;
        }
        if dir[j] {
            ev.toggle(starts[j] + count[j], true);
            count[j] += 1;
            size += 1;
        } else {
            count[j] -= 1;
            ev.toggle(starts[j] + count[j], false);
            size -= 1;
        }
        if size == 0 {
            continue;
        }
        searched += 1;
        let b = ev.base();
        let slot = &mut best[size - 1];
        if slot.as_ref().is_none_or(|(cur, _)| b > *cur) {
            *slot = Some((b, count.clone()));
        }
    }
    let out = best
        .into_iter()
        .map(|e| {
            e.map(|(b, counts)| {
                let mut ids: Vec<ArcId> =
                    counts.iter().zip(groups).flat_map(|(&c, g)| g[..c].iter().map(|&(id, _)| id)).collect();
                ids.sort_unstable();
                (b, ids)
            })
        })
        .collect();
    (out, searched)
}

/// Exact per-size profile over all subsets of `E`: for each group of `Ω`
/// every count `0..=|group|` of its smallest-head members is tried. The
/// number of combinations, `∏(|group| + 1) − 1`, is capped at `2^max_psi`.
pub fn group_search_profile(g: &DirectedHypergraph, target: ArcId, scfg: &SearchConfig) -> Result<SearchProfile> {
    scfg.validate()?;
    let space = reduced_space(g, target)?;
    let mut profile = SearchProfile {
        arc: target,
        omega: space.omega.len(),
        psi: space.psi.len(),
        searched: 0,
        outcome: Outcome::NoOverlap,
    };
    if space.omega.is_empty() {
        return Ok(profile);
    }
    if let Some(k) = space.perfect {
        profile.outcome = Outcome::Perfect(k);
        return Ok(profile);
    }
    let cap = 1u64 << scfg.max_psi;
    let states = space
        .groups
        .values()
        .try_fold(1u64, |acc, m| acc.checked_mul(m.len() as u64 + 1).filter(|&s| s <= cap.saturating_mul(2)));
    match states {
        Some(s) if s - 1 <= cap => {}
        _ => {
            return Err(Error::StateBudget { arc: target, states: states.map_or(u64::MAX, |s| s - 1), cap });
        }
    }
    let groups: Vec<Vec<(ArcId, &Hyperarc)>> = space
        .groups
        .values()
        .map(|members| {
            let mut m: Vec<(ArcId, &Hyperarc)> = members.iter().map(|&k| (k, g.arc(k))).collect();
            m.sort_by_key(|&(k, a)| (a.head().len(), k));
            m
        })
        .collect();
    let (best, searched) = group_walk(g.arc(target), &groups);
    profile.searched = searched;
    profile.outcome = Outcome::BySize(best);
    Ok(profile)
}

/// `r(e_target)` maximized over every subset of `E`, via
/// [`group_search_profile`].
pub fn exact_reciprocity(
    g: &DirectedHypergraph,
    target: ArcId,
    cfg: &ReciprocityConfig,
    scfg: &SearchConfig,
) -> Result<ArcReciprocity> {
    cfg.validate()?;
    Ok(group_search_profile(g, target, scfg)?.resolve(cfg.alpha))
}

/// Exhaustive per-size profile over `Ψ`.
pub fn search_profile(g: &DirectedHypergraph, target: ArcId, scfg: &SearchConfig) -> Result<SearchProfile> {
    profile_with(g, target, scfg, false)
}

/// Same as [`search_profile`] but always using the per-size count state
/// instead of lcm scaling. Exposed for cross-checking the two.
pub fn search_profile_counts(g: &DirectedHypergraph, target: ArcId, scfg: &SearchConfig) -> Result<SearchProfile> {
    profile_with(g, target, scfg, true)
}

/// Prefix-only profile for hypergraphs whose arcs all have one tail node.
pub fn unit_tail_profile(g: &DirectedHypergraph, target: ArcId) -> Result<SearchProfile> {
    if !g.is_unit_tail() {
        return Err(Error::Precondition("unit-tail search needs |T| = 1 on every arc".into()));
    }
    let space = reduced_space(g, target)?;
    let mut profile = SearchProfile {
        arc: target,
        omega: space.omega.len(),
        psi: space.psi.len(),
        searched: 0,
        outcome: Outcome::NoOverlap,
    };
    if space.omega.is_empty() {
        return Ok(profile);
    }
    if let Some(k) = space.perfect {
        profile.outcome = Outcome::Perfect(k);
        return Ok(profile);
    }
    let mut sorted: Vec<(ArcId, &Hyperarc)> = space.psi.iter().map(|&k| (k, g.arc(k))).collect();
    sorted.sort_by_key(|&(k, a)| (a.head().len(), k));
    let (best, searched) = prefixes(g.arc(target), &sorted);
    profile.searched = searched;
    profile.outcome = Outcome::BySize(best);
    Ok(profile)
}

/// Group search in [`SearchMode::Groups`]; otherwise the unit-tail path
/// when it applies and exhaustive search over `Ψ` if not.
pub fn profile(g: &DirectedHypergraph, target: ArcId, scfg: &SearchConfig) -> Result<SearchProfile> {
    match scfg.mode {
        SearchMode::Groups => group_search_profile(g, target, scfg),
        SearchMode::Representatives if g.is_unit_tail() => unit_tail_profile(g, target),
        SearchMode::Representatives => search_profile(g, target, scfg),
    }
}

/// `r(e_target)` by exhaustive search over `Ψ`.
pub fn best_reciprocity(
    g: &DirectedHypergraph,
    target: ArcId,
    cfg: &ReciprocityConfig,
    scfg: &SearchConfig,
) -> Result<ArcReciprocity> {
    cfg.validate()?;
    Ok(search_profile(g, target, scfg)?.resolve(cfg.alpha))
}

/// `r(e_target)` from prefix sets only; requires unit tails everywhere.
pub fn unit_tail_best(g: &DirectedHypergraph, target: ArcId, cfg: &ReciprocityConfig) -> Result<ArcReciprocity> {
    cfg.validate()?;
    Ok(unit_tail_profile(g, target)?.resolve(cfg.alpha))
}

/// Literal maximization over every non-empty subset of `E`, evaluated through
/// [`crate::probability`]. Ground truth for small inputs.
pub fn brute_force_reciprocity(
    g: &DirectedHypergraph,
    target: ArcId,
    cfg: &ReciprocityConfig,
    scfg: &SearchConfig,
) -> Result<ArcReciprocity> {
    scfg.validate()?;
    cfg.validate()?;
    let e = g.try_arc(target)?;
    let m = g.num_arcs();
    if m > scfg.oracle_limit {
        return Err(Error::OracleLimit { arcs: m, limit: scfg.oracle_limit });
    }
    let mut best = (f64::NEG_INFINITY, 0u64);
    let mut chosen: Vec<&Hyperarc> = Vec::with_capacity(m);
    for mask in 1u64..(1 << m) {
        chosen.clear();
        chosen.extend((0..m).filter(|&k| mask >> k & 1 == 1).map(|k| &g.arcs()[k]));
        let v = reciprocity_of(e, &chosen, cfg.alpha)?;
        if v > best.0 {
            best = (v, mask);
        }
    }
    let reciprocal_set = (0..m as u32).filter(|&k| best.1 >> k & 1 == 1).map(ArcId).collect();
    Ok(ArcReciprocity {
        arc: target,
        value: best.0,
        reciprocal_set,
        searched: (1 << m) - 1,
        omega: inverse_overlaps(g, target).len(),
        psi: 0,
    })
}

/// Profiles for every arc, in arc order.
pub fn all_profiles(g: &DirectedHypergraph, scfg: &SearchConfig) -> Result<Vec<SearchProfile>> {
    g.arc_ids().map(|id| profile(g, id, scfg)).collect()
}

/// `r(e)` for every arc, in arc order; stops at the first error.
pub fn all_reciprocities(g: &DirectedHypergraph, cfg: &ReciprocityConfig, scfg: &SearchConfig) -> Result<Vec<ArcReciprocity>> {
    cfg.validate()?;
    g.arc_ids().map(|id| Ok(profile(g, id, scfg)?.resolve(cfg.alpha))).collect()
}

/// Like [`all_reciprocities`] but keeps going past failing arcs.
pub fn all_reciprocities_lenient(
    g: &DirectedHypergraph,
    cfg: &ReciprocityConfig,
    scfg: &SearchConfig,
) -> Vec<Result<ArcReciprocity>> {
    g.arc_ids().map(|id| profile(g, id, scfg).map(|p| p.resolve(cfg.alpha))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_like() -> DirectedHypergraph {
        DirectedHypergraph::from_id_lists(8, &[(&[0, 1], &[4, 5]), (&[6], &[0, 2]), (&[5, 6], &[3])])
    }

    fn scan(g: &DirectedHypergraph, t: ArcId) -> Vec<ArcId> {
        g.arc_ids().filter(|&k| g.arc(t).inversely_overlaps(g.arc(k))).collect()
    }

    #[test]
    fn middle_arc_overlaps_both_neighbours() {
        let g = DirectedHypergraph::from_id_lists(8, &[(&[0, 1], &[4, 5]), (&[4, 6], &[0, 2]), (&[2, 5], &[6])]);
        assert_eq!(inverse_overlaps(&g, ArcId(1)), alloc::vec![ArcId(0), ArcId(2)]);
        for t in fig1_like().arc_ids() {
            assert_eq!(inverse_overlaps(&fig1_like(), t), scan(&fig1_like(), t));
        }
    }

    #[test]
    fn fresh_arc_has_empty_omega() {
        let g = DirectedHypergraph::from_id_lists(6, &[(&[0], &[1]), (&[2, 3], &[4, 5])]);
        assert!(inverse_overlaps(&g, ArcId(1)).is_empty());
        let r = best_reciprocity(&g, ArcId(1), &ReciprocityConfig::default(), &SearchConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.reciprocal_set.is_empty());
    }

    #[test]
    fn perfect_reciprocal_short_circuits() {
        let g = DirectedHypergraph::from_id_lists(
            5,
            &[(&[0, 1], &[2, 3]), (&[2], &[0]), (&[2, 3], &[0, 1]), (&[3, 4], &[1])],
        );
        let r = best_reciprocity(&g, ArcId(0), &ReciprocityConfig::default(), &SearchConfig::default()).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.reciprocal_set, alloc::vec![ArcId(2)]);
    }

    #[test]
    fn groups_keep_smallest_head() {
        // arcs 1 and 2 cover the same (H', T') = ({0},{2}); arc 2 has the larger head
        let g = DirectedHypergraph::from_id_lists(
            6,
            &[(&[0, 1], &[2, 3]), (&[2, 4], &[0]), (&[2, 4, 5], &[0]), (&[3], &[1])],
        );
        let space = reduced_space(&g, ArcId(0)).unwrap();
        assert_eq!(space.omega, alloc::vec![ArcId(1), ArcId(2), ArcId(3)]);
        assert_eq!(space.groups.len(), 2);
        assert!(space.psi.contains(&ArcId(1)));
        assert!(!space.psi.contains(&ArcId(2)));
        // ties go to the lower id
        let g = DirectedHypergraph::from_id_lists(5, &[(&[0], &[1]), (&[1, 3], &[0]), (&[1, 4], &[0])]);
        assert_eq!(reduced_space(&g, ArcId(0)).unwrap().psi, alloc::vec![ArcId(1)]);
    }

    #[test]
    fn budget_cap_names_the_arc() {
        let mut arcs: Vec<Hyperarc> = alloc::vec![Hyperarc::from_ids(&[0, 1, 2, 3], &[4, 5, 6, 7])];
        // 4 head nodes × 4 tail nodes → 16 distinct (H', T') keys with singleton sides
        for h in 0..4 {
            for t in 4..8 {
                arcs.push(Hyperarc::from_ids(&[t], &[h]));
            }
        }
        let g = DirectedHypergraph::from_arcs(8, arcs);
        let scfg = SearchConfig { max_psi: 10, ..SearchConfig::default() };
        assert_eq!(
            best_reciprocity(&g, ArcId(0), &ReciprocityConfig::default(), &scfg),
            Err(Error::SearchBudget { arc: ArcId(0), psi: 16, cap: 10 })
        );
    }

    #[test]
    fn brute_force_limits() {
        let g = DirectedHypergraph::from_id_lists(2, &[(&[0], &[1])]);
        let r = brute_force_reciprocity(&g, ArcId(0), &ReciprocityConfig::default(), &SearchConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);

        let g = DirectedHypergraph::from_id_lists(2, &[(&[0], &[1]), (&[1], &[0])]);
        for t in g.arc_ids() {
            let r = brute_force_reciprocity(&g, t, &ReciprocityConfig::default(), &SearchConfig::default()).unwrap();
            assert_eq!(r.value, 1.0);
        }

        let scfg = SearchConfig { oracle_limit: 1, ..SearchConfig::default() };
        assert_eq!(
            brute_force_reciprocity(&g, ArcId(0), &ReciprocityConfig::default(), &scfg),
            Err(Error::OracleLimit { arcs: 2, limit: 1 })
        );
    }

    #[test]
    fn small_digraph_maximum() {
        let g = DirectedHypergraph::from_id_lists(3, &[(&[1], &[0]), (&[0], &[1]), (&[2], &[0])]);
        let rs = all_reciprocities(&g, &ReciprocityConfig::default(), &SearchConfig::default()).unwrap();
        let vals: Vec<f64> = rs.iter().map(|r| r.value).collect();
        assert_eq!(vals, alloc::vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn lcm_and_count_states_agree() {
        let g = DirectedHypergraph::from_id_lists(
            9,
            &[
                (&[0, 1, 2], &[3, 4, 5]),
                (&[3, 6], &[0, 1]),
                (&[4, 5, 7, 8], &[2]),
                (&[3, 4, 5, 6, 7], &[1]),
                (&[5], &[0, 2]),
            ],
        );
        let scfg = SearchConfig::default();
        let a = search_profile(&g, ArcId(0), &scfg).unwrap();
        let b = search_profile_counts(&g, ArcId(0), &scfg).unwrap();
        for alpha in [1e-4, 0.5, 1.0] {
            assert!((a.resolve(alpha).value - b.resolve(alpha).value).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_tail_requires_unit_tails() {
        let g = DirectedHypergraph::from_id_lists(3, &[(&[0], &[1, 2])]);
        assert!(matches!(
            unit_tail_best(&g, ArcId(0), &ReciprocityConfig::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn unit_tail_singleton_psi_evaluates_once() {
        let g = DirectedHypergraph::from_id_lists(4, &[(&[0, 1], &[2]), (&[2, 3], &[0])]);
        let r = unit_tail_best(&g, ArcId(0), &ReciprocityConfig::default()).unwrap();
        assert_eq!(r.searched, 1);
        assert_eq!(r.psi, 1);
    }

    // arcs 5 and 6 share the group key ({0}, {3}) relative to arc 0
    fn two_member_optimum() -> DirectedHypergraph {
        DirectedHypergraph::from_id_lists(
            6,
            &[
                (&[0, 5], &[2, 3]),
                (&[2, 3], &[5]),
                (&[2, 5], &[0, 1, 3]),
                (&[4], &[0, 2]),
                (&[1, 3, 4], &[2, 5]),
                (&[3], &[0, 1, 2]),
                (&[3], &[0, 1]),
                (&[2, 4, 5], &[0]),
            ],
        )
    }

    #[test]
    fn small_alpha_can_prefer_two_members_of_one_group() {
        let g = two_member_optimum();
        let cfg = ReciprocityConfig::new(1e-4).unwrap();
        let scfg = SearchConfig::default();
        let psi_only = best_reciprocity(&g, ArcId(0), &cfg, &scfg).unwrap();
        let exact = exact_reciprocity(&g, ArcId(0), &cfg, &scfg).unwrap();
        let brute = brute_force_reciprocity(&g, ArcId(0), &cfg, &scfg).unwrap();
        assert!((exact.value - brute.value).abs() < 1e-12);
        assert_eq!(exact.reciprocal_set, [1, 2, 5, 6].map(ArcId).to_vec());
        assert!(psi_only.value < exact.value - 1e-4);
        // at α = 1 the size penalty outweighs the gain
        let cfg1 = ReciprocityConfig::default();
        let a = best_reciprocity(&g, ArcId(0), &cfg1, &scfg).unwrap().value;
        assert_eq!(a, exact_reciprocity(&g, ArcId(0), &cfg1, &scfg).unwrap().value);
    }

    #[test]
    fn group_search_counts_and_budget() {
        let g = two_member_optimum();
        let p = group_search_profile(&g, ArcId(0), &SearchConfig::default()).unwrap();
        // groups of sizes 2, 2, 1, 1: 3·3·2·2 − 1 combinations
        assert_eq!(p.searched, 35);
        let tight = SearchConfig { max_psi: 5, ..SearchConfig::default() };
        assert!(matches!(
            group_search_profile(&g, ArcId(0), &tight),
            Err(Error::StateBudget { arc: ArcId(0), states: 35, cap: 32 })
        ));
        let groups = SearchConfig { mode: SearchMode::Groups, ..SearchConfig::default() };
        assert_eq!(profile(&g, ArcId(0), &groups).unwrap(), p);
    }
}
