use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::regularization::corecut_from_parts;

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Exact minimum conductance (or CoreCut at `tau`) over all proper subsets.
///
/// Subsets are visited in Gray-code order so each step updates the cut in
/// `O(deg)`. Values within `1e-12` relative tie; ties go to the
/// lexicographically smallest member list.
pub fn brute_force_min_conductance(g: &Graph, tau: Option<f64>) -> Result<(NodeSet, f64)> {
    let n = g.node_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force conductance",
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two nodes".into()));
    }
    if let Some(t) = tau {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidTau(t));
        }
    }
    let tau = tau.unwrap_or(0.0);
    let total = g.total_volume();
    let members = |mask: u32| -> Vec<usize> { (0..n).filter(|&v| mask >> v & 1 == 1).collect() };

    let mut mask = 0u32;
    let mut cut = 0.0;
    let mut vol = 0.0;
    let mut best: Option<(f64, u32)> = None;
    for step in 1u32..(1u32 << n) {
        let v = step.trailing_zeros() as usize;
        let inside: f64 = g.neighbors(v).filter(|&(u, _)| mask >> u & 1 == 1).map(|(_, w)| w).sum();
        if mask >> v & 1 == 1 {
            mask &= !(1 << v);
            cut -= g.degree(v) - 2.0 * inside;
            vol -= g.degree(v);
        } else {
            mask |= 1 << v;
            cut += g.degree(v) - 2.0 * inside;
            vol += g.degree(v);
        }
        let size = mask.count_ones() as usize;
        if size == n {
            continue;
        }
        let (value, _) = corecut_from_parts(cut.max(0.0), vol, total - vol, size as f64, (n - size) as f64, n, tau);
        best = match best {
            None => Some((value, mask)),
            Some((b, m)) => {
                let scale = b.abs().max(value.abs()).max(1e-300);
                if value < b && (b - value) > 1e-12 * scale {
                    Some((value, mask))
                } else if (b - value).abs() <= 1e-12 * scale && members(mask) < members(m) {
                    Some((b.min(value), mask))
                } else {
                    Some((b, m))
                }
            }
        };
    }
    let (value, m) = best.expect("n >= 2 has proper subsets");
    Ok((NodeSet::new(members(m), n)?, value))
}
