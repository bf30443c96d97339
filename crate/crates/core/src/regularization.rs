//! The regularized graph `G_tau`, CoreCut, and a checker for the conditions
//! under which CoreCut prefers a core cut over a peripheral one.
//!
//! Two regularizers are supported. `EdgeWise` adds `tau / n` to every entry of
//! the adjacency matrix, diagonal included, so row sums become `d_i + tau`.
//! `DegreeOnly` keeps the adjacency and shifts only the degrees by `tau`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cut_stats, Graph, NodeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    EdgeWise,
    DegreeOnly,
}

/// Regularization strength: an explicit value or the average degree of the
/// graph it is resolved against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Tau {
    Value(f64),
    AverageDegree,
}

impl std::str::FromStr for Tau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "avg-degree" | "average-degree" => Ok(Tau::AverageDegree),
            _ => {
                let v: f64 = s
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad tau '{s}'")))?;
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidTau(v));
                }
                Ok(Tau::Value(v))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularizationConfig {
    pub tau: Tau,
    pub variant: Variant,
}

impl RegularizationConfig {
    pub fn vanilla() -> Self {
        Self {
            tau: Tau::Value(0.0),
            variant: Variant::DegreeOnly,
        }
    }

    pub fn new(tau: Tau, variant: Variant) -> Self {
        Self { tau, variant }
    }

    /// Fixes the sentinel against `g`.
    pub fn resolve(&self, g: &Graph) -> Result<Regularization> {
        let tau = match self.tau {
            Tau::Value(t) => t,
            Tau::AverageDegree => average_degree(g)?,
        };
        Regularization::new(tau, self.variant)
    }
}

/// A regularizer with a concrete `tau`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Regularization {
    tau: f64,
    variant: Variant,
}

impl Regularization {
    pub fn new(tau: f64, variant: Variant) -> Result<Self> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidTau(tau));
        }
        Ok(Self { tau, variant })
    }

    pub fn vanilla() -> Self {
        Self {
            tau: 0.0,
            variant: Variant::DegreeOnly,
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn is_vanilla(&self) -> bool {
        self.tau == 0.0
    }
}

/// `vol(V) / n`.
pub fn average_degree(g: &Graph) -> Result<f64> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(g.total_volume() / n as f64)
}

/// Entry `(i, j)` of the regularized adjacency. `i == j` is allowed: the
/// edge-wise view carries `tau / n` on the diagonal.
pub fn regularized_weight(g: &Graph, reg: Regularization, i: usize, j: usize) -> f64 {
    let base = if i == j { 0.0 } else { g.weight(i, j) };
    match reg.variant {
        Variant::EdgeWise => base + reg.tau / g.node_count() as f64,
        Variant::DegreeOnly => base,
    }
}

/// Which side of the bipartition a CoreCut value was evaluated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Given,
    Complement,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoreCut {
    pub value: f64,
    pub side: Side,
}

/// CoreCut of `s`:
/// `(cut(S) + tau/n |S||S^c|) / (vol(S) + tau |S|)`, evaluated on whichever
/// side has the smaller regularized volume.
pub fn corecut(g: &Graph, tau: f64, s: &NodeSet) -> Result<CoreCut> {
    if !tau.is_finite() || tau < 0.0 {
        return Err(Error::InvalidTau(tau));
    }
    let n = g.node_count();
    let st = cut_stats(g, s)?;
    let size_s = s.len() as f64;
    let size_sc = (n - s.len()) as f64;
    let (value, side) = corecut_from_parts(st.cut, st.vol_s, st.vol_sc, size_s, size_sc, n, tau);
    Ok(CoreCut { value, side })
}

pub(crate) fn corecut_from_parts(
    cut: f64,
    vol_s: f64,
    vol_sc: f64,
    size_s: f64,
    size_sc: f64,
    n: usize,
    tau: f64,
) -> (f64, Side) {
    let num = cut + tau / n as f64 * size_s * size_sc;
    let reg_s = vol_s + tau * size_s;
    let reg_sc = vol_sc + tau * size_sc;
    let (den, side) = if reg_s <= reg_sc {
        (reg_s, Side::Given)
    } else {
        (reg_sc, Side::Complement)
    };
    let value = if den > 0.0 { num / den } else { 1.0 };
    (value, side)
}

/// Mean degree `vol(S) / |S|`.
pub fn mean_degree(g: &Graph, s: &NodeSet) -> f64 {
    g.volume(s) / s.len() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Violated,
    /// The premises fail or the admissible `tau` interval is empty.
    NotApplicable,
}

/// The three assumption clauses, evaluated on a concrete graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AssumptionClauses {
    /// `|S_eps| < eps n` and `vol(S_eps) < eps vol(V)`.
    pub small_periphery: bool,
    /// `dbar(S_eps) < (1 - eps) / (2 (1 + alpha)) dbar(S)`.
    pub dense_core: bool,
    /// `phi(S) < alpha (1 - eps) / (1 + alpha)`.
    pub good_core_cut: bool,
}

impl AssumptionClauses {
    pub fn all(&self) -> bool {
        self.small_periphery && self.dense_core && self.good_core_cut
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub tau: f64,
    pub corecut_periphery: f64,
    pub corecut_core: f64,
    /// `CoreCut(S_eps) > alpha (1 - eps) / (1 + alpha)`.
    pub periphery_bound: bool,
    /// `CoreCut(S) < phi(S) + delta`.
    pub core_bound: bool,
    /// `CoreCut(S) < CoreCut(S_eps)`.
    pub ordering: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssumptionParams {
    pub epsilon: f64,
    pub alpha: f64,
    pub delta: f64,
    pub dbar_s_eps: f64,
    pub dbar_s: f64,
    pub phi_s: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryCheck {
    pub params: AssumptionParams,
    pub clauses: AssumptionClauses,
    pub tau_interval: (f64, f64),
    pub grid: Vec<GridPoint>,
    pub verdict: Verdict,
}

/// Number of interior grid points used by [`check_corollary_bounds`].
pub const TAU_GRID_POINTS: usize = 11;

/// Evaluates whether CoreCut ranks the core set `s` below the peripheral set
/// `s_eps` for every `tau` in `[alpha dbar(S_eps), delta dbar(S)]`, where
/// `delta = alpha (1 - eps) / (1 + alpha) - phi(S)`.
///
/// The interval is probed at 11 evenly spaced interior points. The premises
/// are evaluated rather than assumed; when they fail or the interval is empty
/// the verdict is [`Verdict::NotApplicable`].
pub fn check_corollary_bounds(
    g: &Graph,
    s_eps: &NodeSet,
    s: &NodeSet,
    alpha: f64,
    epsilon: f64,
) -> Result<CorollaryCheck> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    let n = g.node_count();
    s_eps.ensure_proper(n)?;
    s.ensure_proper(n)?;

    let dbar_s_eps = mean_degree(g, s_eps);
    let dbar_s = mean_degree(g, s);
    let phi_s = cut_stats(g, s)?.conductance;
    let level = alpha * (1.0 - epsilon) / (1.0 + alpha);
    let delta = level - phi_s;

    let clauses = AssumptionClauses {
        small_periphery: (s_eps.len() as f64) < epsilon * n as f64
            && g.volume(s_eps) < epsilon * g.total_volume(),
        dense_core: dbar_s_eps < (1.0 - epsilon) / (2.0 * (1.0 + alpha)) * dbar_s,
        good_core_cut: phi_s < level,
    };
    let lo = alpha * dbar_s_eps;
    let hi = delta * dbar_s;

    let mut grid = Vec::new();
    if hi > lo {
        let step = (hi - lo) / (TAU_GRID_POINTS + 1) as f64;
        for k in 1..=TAU_GRID_POINTS {
            let tau = lo + step * k as f64;
            let cp = corecut(g, tau, s_eps)?.value;
            let cc = corecut(g, tau, s)?.value;
            grid.push(GridPoint {
                tau,
                corecut_periphery: cp,
                corecut_core: cc,
                periphery_bound: cp > level,
                core_bound: cc < phi_s + delta,
                ordering: cc < cp,
            });
        }
    }

    let verdict = if !clauses.all() || grid.is_empty() {
        Verdict::NotApplicable
    } else if grid.iter().all(|p| p.periphery_bound && p.core_bound && p.ordering) {
        Verdict::Verified
    } else {
        Verdict::Violated
    };

    Ok(CorollaryCheck {
        params: AssumptionParams {
            epsilon,
            alpha,
            delta,
            dbar_s_eps,
            dbar_s,
            phi_s,
        },
        clauses,
        tau_interval: (lo, hi),
        grid,
        verdict,
    })
}

/// Conductance of `s` on the explicitly materialized dense `G_tau`
/// (edge-wise, diagonal included). Test oracle for [`corecut`]; `O(n^2)`.
pub fn dense_regularized_conductance(g: &Graph, tau: f64, s: &NodeSet) -> Result<f64> {
    let n = g.node_count();
    s.ensure_proper(n)?;
    let reg = Regularization::new(tau, Variant::EdgeWise)?;
    let mask = s.mask(n);
    let (mut cut, mut vol_s, mut vol_sc) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            let w = regularized_weight(g, reg, i, j);
            row += w;
            if mask[i] && !mask[j] {
                cut += w;
            }
        }
        if mask[i] {
            vol_s += row;
        } else {
            vol_sc += row;
        }
    }
    let small = vol_s.min(vol_sc);
    Ok(if small > 0.0 { cut / small } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::BuildOptions;
    use proptest::prelude::*;

    #[test]
    fn average_degrees() {
        assert_eq!(average_degree(&complete(2)).unwrap(), 1.0);
        assert_eq!(average_degree(&complete(3)).unwrap(), 2.0);
        let star = Graph::from_unweighted(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(average_degree(&star).unwrap(), 8.0 / 5.0);
    }

    #[test]
    fn regularized_weights() {
        let g = complete(2);
        let zero = Regularization::new(0.0, Variant::EdgeWise).unwrap();
        assert_eq!(regularized_weight(&g, zero, 0, 1), 1.0);
        let reg = Regularization::new(2.0, Variant::EdgeWise).unwrap();
        assert_eq!(regularized_weight(&g, reg, 0, 1), 2.0);
        assert_eq!(regularized_weight(&g, reg, 0, 0), 1.0);
        let deg = Regularization::new(2.0, Variant::DegreeOnly).unwrap();
        assert_eq!(regularized_weight(&g, deg, 0, 1), 1.0);
    }

    #[test]
    fn corecut_k2() {
        let g = complete(2);
        let c = corecut(&g, 2.0, &set(&[0], 2)).unwrap();
        assert!((c.value - 2.0 / 3.0).abs() < 1e-15);
        assert!(corecut(&g, -1.0, &set(&[0], 2)).is_err());
    }

    #[test]
    fn corecut_at_zero_is_conductance() {
        let g = barbell();
        for members in [vec![0], vec![0, 1], vec![0, 1, 2], vec![1, 3, 5]] {
            let s = set(&members, 6);
            let c = corecut(&g, 0.0, &s).unwrap().value;
            assert_eq!(c, cut_stats(&g, &s).unwrap().conductance);
        }
    }

    #[test]
    fn corecut_reports_complement_side() {
        let g = barbell();
        let s = set(&[0, 1, 2, 3, 4], 6);
        assert_eq!(corecut(&g, 1.0, &s).unwrap().side, Side::Complement);
    }

    #[test]
    fn tau_parsing() {
        assert_eq!("avg-degree".parse::<Tau>().unwrap(), Tau::AverageDegree);
        assert_eq!("2.5".parse::<Tau>().unwrap(), Tau::Value(2.5));
        assert!("-1".parse::<Tau>().is_err());
        assert!("abc".parse::<Tau>().is_err());
    }

    /// Two dense blocks of 40 with a 5-node path hanging off block one.
    fn core_with_tail() -> (Graph, NodeSet, NodeSet) {
        let mut e = Vec::new();
        for b in 0..2 {
            for i in 0..40 {
                for j in i + 1..40 {
                    if (i * 7 + j * 3) % 4 != 0 {
                        e.push((40 * b + i, 40 * b + j));
                    }
                }
            }
        }
        for i in 0..5 {
            e.push((i, 40 + i));
        }
        e.push((80, 0));
        for k in 80..84 {
            e.push((k, k + 1));
        }
        let g = Graph::from_unweighted(85, &e).unwrap();
        let s_eps = NodeSet::new((80..85).collect(), 85).unwrap();
        let s = NodeSet::new((40..80).collect(), 85).unwrap();
        (g, s_eps, s)
    }

    #[test]
    fn corollary_verified_on_core_periphery() {
        let (g, s_eps, s) = core_with_tail();
        let chk = check_corollary_bounds(&g, &s_eps, &s, 1.0, 0.1).unwrap();
        assert!(chk.clauses.all(), "{chk:?}");
        assert_eq!(chk.grid.len(), TAU_GRID_POINTS);
        assert_eq!(chk.verdict, Verdict::Verified);
        let mid = (chk.tau_interval.0 + chk.tau_interval.1) / 2.0;
        let level = 0.5 * 0.9;
        assert!(corecut(&g, mid, &s_eps).unwrap().value > level);
    }

    #[test]
    fn corollary_not_applicable_for_empty_interval() {
        let (g, s_eps, s) = core_with_tail();
        // Tiny alpha drives delta below zero.
        let chk = check_corollary_bounds(&g, &s_eps, &s, 1e-3, 0.1).unwrap();
        assert!(chk.params.delta <= 0.0);
        assert_eq!(chk.verdict, Verdict::NotApplicable);
    }

    fn arb_instance() -> impl Strategy<Value = (Graph, NodeSet, f64)> {
        (3usize..40).prop_flat_map(|n| {
            (
                proptest::collection::vec((0..n, 0..n, 0.5f64..3.0), n..(4 * n)),
                proptest::collection::vec(any::<bool>(), n),
                0.01f64..10.0,
            )
                .prop_filter_map("proper set", move |(e, bits, tau)| {
                    let g = Graph::from_edges(n, &e, BuildOptions::default()).unwrap();
                    let s = NodeSet::from_mask(&bits);
                    (!s.is_empty() && s.len() < n).then_some((g, s, tau))
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig { max_global_rejects: 200_000, ..ProptestConfig::default() })]

        #[test]
        fn corecut_is_dense_regularized_conductance((g, s, tau) in arb_instance()) {
            let a = corecut(&g, tau, &s).unwrap().value;
            let b = dense_regularized_conductance(&g, tau, &s).unwrap();
            prop_assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
        }

        #[test]
        fn corecut_monotone_for_small_sets((g, s, tau) in arb_instance(), extra in 0.0f64..5.0) {
            let n = g.node_count();
            let st = cut_stats(&g, &s).unwrap();
            prop_assume!(2 * s.len() <= n && st.vol_s <= st.vol_sc && st.vol_s > 0.0);
            prop_assume!(st.cut / st.vol_s <= (n - s.len()) as f64 / n as f64);
            let lo = corecut(&g, tau, &s).unwrap().value;
            let hi = corecut(&g, tau + extra, &s).unwrap().value;
            prop_assert!(hi >= lo - 1e-12);
        }

        #[test]
        fn core_bound_below_interval((g, s, tau) in arb_instance(), delta in 0.01f64..1.0) {
            let dbar = mean_degree(&g, &s);
            prop_assume!(dbar > 0.0 && tau <= delta * dbar);
            let phi = cut_stats(&g, &s).unwrap().conductance;
            let c = corecut(&g, tau, &s).unwrap();
            prop_assume!(c.side == Side::Given);
            prop_assert!(c.value < phi + delta);
        }
    }
}
