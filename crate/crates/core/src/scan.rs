//! Enumeration of order-4 branch types containing the fundamental mode.
//!
//! The search space up to index 35 holds ~3·10⁸ mode triples, so the scan
//! runs cheap necessary filters first (pairwise reducibility bitsets, the
//! triple conditions against the fundamental mode, and an integer positivity
//! interval test) and only hands survivors to the authoritative pattern
//! check on the full four-mode span.

use crate::galerkin::{AlgebraicSystem, Nonlinearity};
use crate::modes::{ModeIndex, ModeSet};
use crate::reducible::{n_mode_solution_unchecked, pair_is_reducible, triple_extra_conditions};
use crate::tree::fundamental_pair_reducible;
use rayon::prelude::*;

struct Candidate {
    mode: ModeIndex,
    c_sq: i64,
    d_sq: i64,
}

/// Nonempty positivity check for `{(0,0), p1, p2, p3}` in pure integer
/// arithmetic: every slope `4ΣC − 15c_k²` is odd (never zero), the window is
/// `max over positive slopes of r/s < min over negative slopes of r/s`.
fn positivity_nonempty(p1: &Candidate, p2: &Candidate, p3: &Candidate) -> bool {
    let sum_c = 1 + p1.c_sq + p2.c_sq + p3.c_sq;
    let sum_d = 1 + p1.d_sq + p2.d_sq + p3.d_sq;
    // (slope, intercept) of each constraint s·w > r.
    let constraints = [
        (4 * sum_c - 15, 4 * sum_d - 15),
        (4 * sum_c - 15 * p1.c_sq, 4 * sum_d - 15 * p1.d_sq),
        (4 * sum_c - 15 * p2.c_sq, 4 * sum_d - 15 * p2.d_sq),
        (4 * sum_c - 15 * p3.c_sq, 4 * sum_d - 15 * p3.d_sq),
    ];
    // Lower bound max(r/s over s>0, 0) and upper bound min(r/s over s<0),
    // tracked as fractions with positive denominators.
    let mut lo: (i64, i64) = (0, 1);
    let mut hi: Option<(i64, i64)> = None;
    for (s, r) in constraints {
        debug_assert!(s != 0, "slope parity guarantees nonzero");
        if s > 0 {
            if r > 0 && r * lo.1 > lo.0 * s {
                lo = (r, s);
            }
        } else {
            // w < r/s with s < 0: normalize to positive denominator.
            let (num, den) = (-r, -s);
            if num <= 0 {
                return false;
            }
            hi = Some(match hi {
                None => (num, den),
                Some((hn, hd)) => {
                    if num * hd < hn * den {
                        (num, den)
                    } else {
                        (hn, hd)
                    }
                }
            });
        }
    }
    match hi {
        None => true,
        Some((hn, hd)) => lo.0 * hd < hn * lo.1,
    }
}

/// All order-4 types `{(0,0), p₁, p₂, p₃}` with `1 ≤ m,n ≤ max_index` that
/// pass the full reducibility pattern check and have a nonempty positivity
/// domain. Deterministic ascending order.
pub fn order_four_scan(max_index: u32) -> Vec<ModeSet> {
    let modes: Vec<Candidate> = (1..=max_index)
        .flat_map(|m| (1..=max_index).map(move |n| ModeIndex::new(m, n)))
        .filter(|&p| fundamental_pair_reducible(p))
        .map(|mode| Candidate {
            mode,
            c_sq: mode.temporal_factor().pow(2),
            d_sq: mode.spatial_factor().pow(2),
        })
        .collect();
    let count = modes.len();
    let words = (count + 63) / 64;

    // compat[i] marks j > i with: pair (p_i, p_j) reducible AND the triple
    // {fundamental, p_i, p_j} conditions satisfied. Both are necessary for
    // the four-mode span, so pruning with them is safe.
    let compat: Vec<Vec<u64>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in (i + 1)..count {
                if pair_is_reducible(modes[i].mode, modes[j].mode)
                    && triple_extra_conditions(modes[i].mode, modes[j].mode)
                {
                    row[j / 64] |= 1u64 << (j % 64);
                }
            }
            row
        })
        .collect();

    let mut found: Vec<ModeSet> = (0..count)
        .into_par_iter()
        .flat_map_iter(|i| {
            let modes = &modes;
            let compat = &compat;
            (i + 1..count).flat_map(move |j| {
                let mut local = Vec::new();
                if compat[i][j / 64] & (1u64 << (j % 64)) == 0 {
                    return local;
                }
                for w in 0..words {
                    let mut bits = compat[i][w] & compat[j][w];
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let k = w * 64 + b;
                        if k <= j {
                            continue;
                        }
                        if !positivity_nonempty(&modes[i], &modes[j], &modes[k]) {
                            continue;
                        }
                        let set = ModeSet::new(vec![
                            ModeIndex::FUNDAMENTAL,
                            modes[i].mode,
                            modes[j].mode,
                            modes[k].mode,
                        ])
                        .expect("distinct modes");
                        let system = AlgebraicSystem::new(set.clone(), Nonlinearity::Defocusing);
                        if system.reducible_pattern_check().is_err() {
                            continue;
                        }
                        // Re-establish positivity in exact arithmetic.
                        if n_mode_solution_unchecked(&set).domain().is_some() {
                            local.push(set);
                        }
                    }
                }
                local
            })
        })
        .collect();
    found.sort_by(|a, b| a.modes().cmp(b.modes()));
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_quadruples_pass_all_filters() {
        for quad in [
            [(1u32, 2u32), (5, 9), (20, 35)],
            [(1, 3), (3, 8), (14, 35)],
        ] {
            let ps: Vec<ModeIndex> = quad.iter().map(|&(m, n)| ModeIndex::new(m, n)).collect();
            for a in 0..3 {
                for b in (a + 1)..3 {
                    assert!(pair_is_reducible(ps[a], ps[b]));
                    assert!(triple_extra_conditions(ps[a], ps[b]));
                }
            }
            let set = ModeSet::new(
                std::iter::once(ModeIndex::FUNDAMENTAL).chain(ps.iter().copied()).collect(),
            )
            .unwrap();
            let system = AlgebraicSystem::new(set.clone(), Nonlinearity::Defocusing);
            assert!(system.reducible_pattern_check().is_ok(), "{set} not reducible");
            assert!(n_mode_solution_unchecked(&set).domain().is_some(), "{set} has empty domain");
        }
    }

    #[test]
    fn small_scan_is_empty() {
        // No order-4 type exists with indices ≤ 9.
        assert!(order_four_scan(9).is_empty());
    }
}
