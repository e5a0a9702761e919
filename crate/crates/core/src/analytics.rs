//! Post-processing of measurement results: α tables, correlations, degree
//! splits, node-level curves, distribution distances and a z-test.

use alloc::vec::Vec;

use crate::hypergraph::DirectedHypergraph;
use crate::math::{erfc, ln, sqrt};
use crate::measure::mean_value;
use crate::search::SearchProfile;
use crate::{Error, Result};

/// One row of an α table.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct AlphaRow {
    pub alpha: f64,
    /// `r(G)` in `[0, 1]`.
    pub value: f64,
}

impl AlphaRow {
    pub fn percent(&self) -> f64 {
        100.0 * self.value
    }
}

/// `r(G)` for each `α`, re-maximizing every arc from its cached profile.
pub fn reciprocity_table(profiles: &[SearchProfile], alphas: &[f64]) -> Result<Vec<AlphaRow>> {
    alphas
        .iter()
        .map(|&alpha| {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::Parameter(alloc::format!("alpha must be positive and finite, got {alpha}")));
            }
            let value = mean_value(profiles.iter().map(|p| p.resolve(alpha).value))?;
            Ok(AlphaRow { alpha, value })
        })
        .collect()
}

fn check_pair(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Precondition(alloc::format!("length mismatch: {} vs {}", a.len(), b.len())));
    }
    if a.len() < 2 {
        return Err(Error::Precondition("correlation needs at least two observations".into()));
    }
    Ok(())
}

/// Pearson product-moment correlation.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64> {
    check_pair(a, b)?;
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::Undefined("correlation of a constant sample"));
    }
    Ok((sab / sqrt(saa * sbb)).clamp(-1.0, 1.0))
}

/// 1-based ranks; ties share the average of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = alloc::vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman rank correlation (Pearson on average ranks).
pub fn spearman(a: &[f64], b: &[f64]) -> Result<f64> {
    check_pair(a, b)?;
    pearson(&average_ranks(a), &average_ranks(b))
}

/// `(pearson, spearman)`.
pub fn robustness_correlations(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    Ok((pearson(a, b)?, spearman(a, b)?))
}

/// Mean out-degree of an arc's head nodes and mean in-degree of its tail nodes.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ArcDegreeStats {
    pub d_h_out: f64,
    pub d_t_in: f64,
}

pub fn arc_degree_stats(g: &DirectedHypergraph) -> Vec<ArcDegreeStats> {
    let deg = g.degrees();
    let mean = |nodes: &[crate::NodeId], d: &[u32]| nodes.iter().map(|v| d[v.index()] as f64).sum::<f64>() / nodes.len() as f64;
    g.arcs()
        .iter()
        .map(|a| ArcDegreeStats { d_h_out: mean(a.head(), &deg.d_out), d_t_in: mean(a.tail(), &deg.d_in) })
        .collect()
}

/// Five-number summary; quartiles by linear interpolation between order statistics.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Quartiles {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl Quartiles {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }

    /// `[Q1 − 1.5·IQR, Q3 + 1.5·IQR]`.
    pub fn fences(&self) -> (f64, f64) {
        (self.q1 - 1.5 * self.iqr(), self.q3 + 1.5 * self.iqr())
    }
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn quantile_sorted(s: &[f64], q: f64) -> f64 {
    let pos = q * (s.len() - 1) as f64;
    let lo = crate::math::floor(pos) as usize;
    let hi = (lo + 1).min(s.len() - 1);
    s[lo] + (pos - lo as f64) * (s[hi] - s[lo])
}

pub fn quartiles(values: &[f64]) -> Result<Quartiles> {
    if values.is_empty() {
        return Err(Error::Undefined("quartiles of an empty sample"));
    }
    let s = sorted(values);
    Ok(Quartiles {
        min: s[0],
        q1: quantile_sorted(&s, 0.25),
        median: quantile_sorted(&s, 0.5),
        q3: quantile_sorted(&s, 0.75),
        max: s[s.len() - 1],
    })
}

/// Values inside the Tukey fences, original order kept.
pub fn iqr_trim(values: &[f64]) -> Vec<f64> {
    let Ok(q) = quartiles(values) else {
        return Vec::new();
    };
    let (lo, hi) = q.fences();
    values.iter().copied().filter(|&v| v >= lo && v <= hi).collect()
}

/// Arcs split by `r(e) = 0` versus `r(e) > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeSplit {
    pub zero: Vec<ArcDegreeStats>,
    pub nonzero: Vec<ArcDegreeStats>,
}

impl DegreeSplit {
    pub fn head_out(&self, nonzero: bool, trim: bool) -> Vec<f64> {
        self.column(nonzero, trim, |s| s.d_h_out)
    }

    pub fn tail_in(&self, nonzero: bool, trim: bool) -> Vec<f64> {
        self.column(nonzero, trim, |s| s.d_t_in)
    }

    fn column(&self, nonzero: bool, trim: bool, f: impl Fn(&ArcDegreeStats) -> f64) -> Vec<f64> {
        let side = if nonzero { &self.nonzero } else { &self.zero };
        let v: Vec<f64> = side.iter().map(f).collect();
        if trim {
            iqr_trim(&v)
        } else {
            v
        }
    }
}

pub fn zero_nonzero_degree_split(g: &DirectedHypergraph, per_arc: &[f64]) -> Result<DegreeSplit> {
    if per_arc.len() != g.num_arcs() {
        return Err(Error::Precondition(alloc::format!("{} values for {} arcs", per_arc.len(), g.num_arcs())));
    }
    let mut split = DegreeSplit { zero: Vec::new(), nonzero: Vec::new() };
    for (s, &r) in arc_degree_stats(g).into_iter().zip(per_arc) {
        if r > 0.0 {
            split.nonzero.push(s);
        } else {
            split.zero.push(s);
        }
    }
    Ok(split)
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a − F_b|`.
pub fn ks_d_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Undefined("KS statistic of an empty sample"));
    }
    let (sa, sb) = (sorted(a), sorted(b));
    let (na, nb) = (sa.len() as f64, sb.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < sa.len() && j < sb.len() {
        let x = if sa[i] <= sb[j] { sa[i] } else { sb[j] };
        while i < sa.len() && sa[i] <= x {
            i += 1;
        }
        while j < sb.len() && sb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// One-sided two-sample z-test of `mean(real) > mean(null)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ZTest {
    pub z: f64,
    pub p: f64,
}

impl ZTest {
    pub fn rejects_at(&self, level: f64) -> bool {
        self.p < level
    }
}

fn mean_and_var(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, var)
}

/// `z = (m_r − m_n) / sqrt(s_r²/n_r + s_n²/n_n)` with unbiased variances;
/// `p = P(Z ≥ z)`.
pub fn significance_test(real: &[f64], null: &[f64]) -> Result<ZTest> {
    if real.len() < 2 || null.len() < 2 {
        return Err(Error::Undefined("z-test needs at least two values per sample"));
    }
    let (mr, vr) = mean_and_var(real);
    let (mn, vn) = mean_and_var(null);
    let se = sqrt(vr / real.len() as f64 + vn / null.len() as f64);
    if !(se > 0.0) {
        return Err(Error::Undefined("z-test with zero variance"));
    }
    let z = (mr - mn) / se;
    Ok(ZTest { z, p: 0.5 * erfc(z / core::f64::consts::SQRT_2) })
}

/// Per-node reciprocity and degree balance.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeReciprocity {
    /// Mean `r(e)` over arcs containing the node; `None` for isolated nodes.
    pub r: Vec<Option<f64>>,
    /// `ln(d_in + 1) − ln(d_out + 1)`.
    pub balance: Vec<f64>,
}

pub fn node_reciprocity(g: &DirectedHypergraph, per_arc: &[f64]) -> Result<NodeReciprocity> {
    if per_arc.len() != g.num_arcs() {
        return Err(Error::Precondition(alloc::format!("{} values for {} arcs", per_arc.len(), g.num_arcs())));
    }
    let n = g.num_nodes();
    let mut sum = alloc::vec![0.0; n];
    let mut count = alloc::vec![0u32; n];
    for (a, &r) in g.arcs().iter().zip(per_arc) {
        for v in a.head().iter().chain(a.tail()) {
            sum[v.index()] += r;
            count[v.index()] += 1;
        }
    }
    let deg = g.degrees();
    Ok(NodeReciprocity {
        r: sum.iter().zip(&count).map(|(&s, &c)| (c > 0).then(|| s / c as f64)).collect(),
        balance: (0..n).map(|i| ln(deg.d_in[i] as f64 + 1.0) - ln(deg.d_out[i] as f64 + 1.0)).collect(),
    })
}

/// Savitzky–Golay settings.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SmoothingConfig {
    pub window: usize,
    pub polyorder: usize,
    pub bins: usize,
}

impl Default for SmoothingConfig {
    fn default() -> Self {
        Self { window: 11, polyorder: 3, bins: 100 }
    }
}

impl SmoothingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window.is_multiple_of(2) {
            return Err(Error::Parameter(alloc::format!("window must be odd, got {}", self.window)));
        }
        if self.window <= self.polyorder {
            return Err(Error::Parameter(alloc::format!(
                "window {} must exceed polyorder {}",
                self.window, self.polyorder
            )));
        }
        if self.bins == 0 {
            return Err(Error::Parameter("bins must be positive".into()));
        }
        Ok(())
    }
}

/// Balance curve: bin centers, raw bin means and smoothed means.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveData {
    pub xs: Vec<f64>,
    pub ys_raw: Vec<f64>,
    pub ys_smooth: Vec<f64>,
    /// Nodes per bin.
    pub counts: Vec<usize>,
}

impl CurveData {
    /// `x` of the highest smoothed point.
    pub fn argmax(&self) -> Option<f64> {
        self.ys_smooth
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| self.xs[i])
    }

    /// Piecewise-linear interpolation of the smoothed curve.
    pub fn interpolate(&self, x: f64) -> Option<f64> {
        let (first, last) = (*self.xs.first()?, *self.xs.last()?);
        if x < first || x > last {
            return None;
        }
        let i = self.xs.partition_point(|&v| v < x);
        if i < self.xs.len() && self.xs[i] == x {
            return Some(self.ys_smooth[i]);
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys_smooth[i - 1], self.ys_smooth[i]);
        Some(y0 + (x - x0) / (x1 - x0) * (y1 - y0))
    }
}

/// Solves the square system `a·x = b` by Gaussian elimination.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = alloc::vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Value at `x0` of the least-squares polynomial of degree `order`
/// through `(xs, ys)`.
fn local_fit(xs: &[f64], ys: &[f64], x0: f64, scale: f64, order: usize) -> f64 {
    let m = order + 1;
    let mut ata = alloc::vec![alloc::vec![0.0; m]; m];
    let mut aty = alloc::vec![0.0; m];
    for (&x, &y) in xs.iter().zip(ys) {
        let u = (x - x0) / scale;
        let mut pw = alloc::vec![1.0; m];
        for k in 1..m {
            pw[k] = pw[k - 1] * u;
        }
        for r in 0..m {
            aty[r] += pw[r] * y;
            for c in 0..m {
                ata[r][c] += pw[r] * pw[c];
            }
        }
    }
    solve(ata, aty).map_or(ys[xs.len() / 2], |coef| coef[0])
}

/// Savitzky–Golay smoothing over possibly uneven `xs`: each point gets the
/// value of a degree-`polyorder` least-squares fit over the `window` nearest
/// samples (window shifted inward at the ends). Short inputs shrink the
/// window to the largest odd length available; if that leaves no room for
/// the polynomial the input is returned unchanged.
pub fn savitzky_golay(xs: &[f64], ys: &[f64], window: usize, polyorder: usize) -> Result<Vec<f64>> {
    SmoothingConfig { window, polyorder, bins: 1 }.validate()?;
    if xs.len() != ys.len() {
        return Err(Error::Precondition("xs and ys differ in length".into()));
    }
    let n = ys.len();
    let w = if n >= window { window } else if n % 2 == 1 { n } else { n.saturating_sub(1) };
    if w <= polyorder {
        return Ok(ys.to_vec());
    }
    let half = w / 2;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let start = i.saturating_sub(half).min(n - w);
        let (wx, wy) = (&xs[start..start + w], &ys[start..start + w]);
        let scale = (wx[w - 1] - wx[0]).abs().max(f64::MIN_POSITIVE);
        out.push(local_fit(wx, wy, xs[i], scale, polyorder));
    }
    Ok(out)
}

/// Node reciprocity against balance: nodes with at least one arc are binned
/// into `bins` equal-width bins over the observed balance range, empty bins
/// are dropped and the bin means are smoothed.
pub fn balance_curve(g: &DirectedHypergraph, per_arc: &[f64], cfg: &SmoothingConfig) -> Result<CurveData> {
    cfg.validate()?;
    let nr = node_reciprocity(g, per_arc)?;
    let points: Vec<(f64, f64)> = nr.balance.iter().zip(&nr.r).filter_map(|(&x, r)| r.map(|r| (x, r))).collect();
    if points.is_empty() {
        return Err(Error::Undefined("balance curve without non-isolated nodes"));
    }
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo) / cfg.bins as f64;
    let mut sums = alloc::vec![0.0; cfg.bins];
    let mut counts = alloc::vec![0usize; cfg.bins];
    for &(x, r) in &points {
        let b = if width > 0.0 { (((x - lo) / width) as usize).min(cfg.bins - 1) } else { 0 };
        sums[b] += r;
        counts[b] += 1;
    }
    let mut curve = CurveData { xs: Vec::new(), ys_raw: Vec::new(), ys_smooth: Vec::new(), counts: Vec::new() };
    for b in 0..cfg.bins {
        if counts[b] > 0 {
            curve.xs.push(if width > 0.0 { lo + (b as f64 + 0.5) * width } else { lo });
            curve.ys_raw.push(sums[b] / counts[b] as f64);
            curve.counts.push(counts[b]);
        }
    }
    curve.ys_smooth = savitzky_golay(&curve.xs, &curve.ys_raw, cfg.window, cfg.polyorder)?;
    Ok(curve)
}

/// Mean squared difference of two smoothed curves over the sample points of
/// either curve that lie in both x ranges; values between samples are
/// linearly interpolated.
pub fn mean_gap(a: &CurveData, b: &CurveData) -> Result<f64> {
    let mut d: Vec<f64> = Vec::new();
    for &x in a.xs.iter().chain(&b.xs) {
        if a.interpolate(x).is_some() && b.interpolate(x).is_some() {
            d.push(x);
        }
    }
    d.sort_by(f64::total_cmp);
    d.dedup();
    if d.is_empty() {
        return Err(Error::Undefined("curves with disjoint domains"));
    }
    let sum: f64 = d
        .iter()
        .map(|&x| {
            let diff = a.interpolate(x).unwrap() - b.interpolate(x).unwrap();
            diff * diff
        })
        .sum();
    Ok(sum / d.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn correlations_of_simple_lists() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(robustness_correlations(&a, &a).unwrap(), (1.0, 1.0));
        let rev = [9.0, 7.0, 3.0, 1.0];
        assert!(close(spearman(&a, &rev).unwrap(), -1.0, 1e-15));
        assert!(matches!(pearson(&a, &[1.0; 4]), Err(Error::Undefined(_))));
        assert!(pearson(&a, &[1.0]).is_err());
    }

    #[test]
    fn ties_get_average_ranks() {
        assert_eq!(average_ranks(&[10.0, 20.0, 10.0, 5.0]), alloc::vec![2.5, 4.0, 2.5, 1.0]);
    }

    #[test]
    fn quartiles_interpolate() {
        let q = quartiles(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!((q.q1, q.median, q.q3), (2.0, 3.0, 4.0));
        assert_eq!(q.fences(), (-1.0, 7.0));
        assert_eq!(iqr_trim(&[1.0, 2.0, 3.0, 4.0, 5.0, 100.0]), alloc::vec![1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn ks_extremes() {
        let a = [0.1, 0.4, 0.4, 0.9];
        assert_eq!(ks_d_statistic(&a, &a).unwrap(), 0.0);
        assert_eq!(ks_d_statistic(&a, &[2.0, 3.0]).unwrap(), 1.0);
        assert!(close(ks_d_statistic(&[1.0, 2.0], &[2.0, 3.0]).unwrap(), 0.5, 1e-15));
        assert!(ks_d_statistic(&[], &a).is_err());
    }

    #[test]
    fn z_test_directions() {
        let a = [0.1, 0.2, 0.3, 0.4];
        let t = significance_test(&a, &a).unwrap();
        assert_eq!(t.z, 0.0);
        assert!(close(t.p, 0.5, 1e-15));
        let hi: Vec<f64> = (0..50).map(|i| 0.9 + 0.001 * i as f64).collect();
        let lo: Vec<f64> = (0..50).map(|i| 0.1 + 0.001 * i as f64).collect();
        let t = significance_test(&hi, &lo).unwrap();
        assert!(t.z > 0.0 && t.rejects_at(1e-5));
        assert!(matches!(significance_test(&[1.0, 1.0], &[1.0, 1.0]), Err(Error::Undefined(_))));
    }

    #[test]
    fn savitzky_golay_preserves_cubics() {
        let xs: Vec<f64> = (0..30).map(|i| i as f64 * 0.3).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 - 2.0 * x + 0.5 * x * x - 0.1 * x * x * x).collect();
        let s = savitzky_golay(&xs, &ys, 11, 3).unwrap();
        for (a, b) in s.iter().zip(&ys) {
            assert!(close(*a, *b, 1e-8));
        }
        assert!(savitzky_golay(&xs, &ys, 10, 3).is_err());
        assert!(savitzky_golay(&xs, &ys, 3, 3).is_err());
        assert_eq!(savitzky_golay(&[0.0], &[0.7], 11, 3).unwrap(), alloc::vec![0.7]);
    }

    #[test]
    fn savitzky_golay_matches_convolution_weights_inside() {
        // window 5, order 2 interior weights are (-3, 12, 17, 12, -3) / 35
        let xs: Vec<f64> = (0..9).map(|i| i as f64).collect();
        let ys = [0.3, 1.1, 0.2, 0.9, 0.5, 0.4, 1.3, 0.0, 0.6];
        let s = savitzky_golay(&xs, &ys, 5, 2).unwrap();
        for i in 2..7 {
            let w = [-3.0, 12.0, 17.0, 12.0, -3.0];
            let expect: f64 = (0..5).map(|k| w[k] * ys[i - 2 + k]).sum::<f64>() / 35.0;
            assert!(close(s[i], expect, 1e-12));
        }
    }

    #[test]
    fn node_reciprocity_and_balance() {
        let g = DirectedHypergraph::from_id_lists(4, &[(&[0], &[1]), (&[1], &[0, 2])]);
        let nr = node_reciprocity(&g, &[0.5, 0.25]).unwrap();
        assert_eq!(nr.r, alloc::vec![Some(0.375), Some(0.375), Some(0.25), None]);
        assert_eq!(nr.balance[3], 0.0);
        assert!(close(nr.balance[2], -ln(2.0), 1e-15));
    }

    #[test]
    fn single_balance_value_gives_single_point() {
        let g = DirectedHypergraph::from_id_lists(2, &[(&[0], &[1]), (&[1], &[0])]);
        let c = balance_curve(&g, &[1.0, 1.0], &SmoothingConfig::default()).unwrap();
        assert_eq!(c.xs, alloc::vec![0.0]);
        assert_eq!(c.ys_smooth, c.ys_raw);
    }

    #[test]
    fn gap_of_offset_curves() {
        let c = CurveData { xs: alloc::vec![0.0, 1.0, 2.0], ys_raw: alloc::vec![0.0; 3], ys_smooth: alloc::vec![0.1, 0.5, 0.2], counts: alloc::vec![1; 3] };
        let mut d = c.clone();
        d.ys_smooth.iter_mut().for_each(|y| *y += 0.3);
        assert_eq!(mean_gap(&c, &c).unwrap(), 0.0);
        assert!(close(mean_gap(&c, &d).unwrap(), 0.09, 1e-15));
        let mut far = c.clone();
        far.xs = alloc::vec![5.0, 6.0, 7.0];
        assert!(mean_gap(&c, &far).is_err());
    }
}
