//! Structural invariants of the reducible tree: endpoint attachments,
//! determinism, and the pairwise-pruning soundness check.

use branchforge::exact::Rat;
use branchforge::modes::{ModeIndex, ModeSet};
use branchforge::reducible::{pair_is_reducible, triple_extra_conditions};
use branchforge::tree::{build_tree, is_reducible_span, Attachment, ElementKind};
use num_traits::Zero;
use std::fmt::Write;

#[test]
fn branch_endpoints_lie_on_their_attachments() {
    // Every endpoint with exactly one vanishing amplitude attaches to the
    // element spanned by the remaining modes, and the surviving amplitudes
    // agree with that element's closed form exactly.
    let tree = build_tree(9, 3, 6.0);
    let mut checked = 0;
    for el in &tree.elements {
        if el.kind != ElementKind::Branch {
            continue;
        }
        for ep in &el.endpoints {
            let Attachment::Element(rest) = &ep.attaches_to else {
                continue;
            };
            let vanished: Vec<ModeIndex> = el
                .type_tag
                .iter()
                .copied()
                .filter(|m| !rest.contains(*m))
                .collect();
            assert_eq!(
                vanished.len(),
                el.type_tag.len() - rest.len(),
                "attachment bookkeeping for {}",
                el.type_tag
            );
            // The remaining amplitudes at the endpoint equal the closed form
            // of the attachment element (exact rationals).
            let attach_sol = branchforge::reducible::n_mode_solution(rest).unwrap();
            for (k, mode) in el.type_tag.iter().enumerate() {
                let a_sq = el.solution.amplitude_sq_at(k, &ep.omega_sq);
                match rest.position(*mode) {
                    None => assert!(a_sq.is_zero(), "vanishing mode {mode} of {}", el.type_tag),
                    Some(pos) => {
                        let b_sq = attach_sol.amplitude_sq_at(pos, &ep.omega_sq);
                        assert_eq!(a_sq, b_sq, "surviving mode {mode} of {}", el.type_tag);
                    }
                }
            }
            checked += 1;
        }
    }
    assert!(checked >= 50, "only {checked} endpoints verified");
}

fn render_tree(tree: &branchforge::tree::ReducibleTree) -> String {
    let mut out = String::new();
    for el in &tree.elements {
        let _ = writeln!(out, "{:?} {}", el.kind, el.type_tag);
        for (p, q) in el.solution.coeff_sq() {
            let _ = writeln!(out, "  {p} {q}");
        }
        for ep in &el.endpoints {
            let _ = writeln!(out, "  @ {} E/pi={} -> {:?}", ep.omega_sq, ep.energy_over_pi, ep.attaches_to);
        }
    }
    out
}

#[test]
fn tree_output_is_byte_identical_across_builds() {
    let a = render_tree(&build_tree(6, 3, 6.0));
    let b = render_tree(&build_tree(6, 3, 6.0));
    assert_eq!(a, b);
}

#[test]
fn pairwise_pruning_is_sound_for_triples() {
    // Pairwise reducibility failure implies failure of the whole span:
    // verified exhaustively for triples with the fundamental mode and
    // indices ≤ 6 (cross terms never cancel across pairs).
    let modes: Vec<ModeIndex> = (1..=6)
        .flat_map(|m| (1..=6).map(move |n| ModeIndex::new(m, n)))
        .collect();
    for (i, &p1) in modes.iter().enumerate() {
        for &p2 in &modes[i + 1..] {
            let triple = match ModeSet::new(vec![ModeIndex::FUNDAMENTAL, p1, p2]) {
                Ok(t) => t,
                Err(_) => continue,
            };
            let pairwise_ok = branchforge::tree::fundamental_pair_reducible(p1)
                && branchforge::tree::fundamental_pair_reducible(p2)
                && pair_is_reducible(p1, p2);
            if !pairwise_ok {
                assert!(
                    !is_reducible_span(&triple),
                    "pairwise-failing triple {triple} passed the pattern check"
                );
            } else {
                // With clean pairs the only remaining obstructions are the
                // stated triple conditions.
                assert_eq!(
                    is_reducible_span(&triple),
                    triple_extra_conditions(p1, p2),
                    "triple {triple}"
                );
            }
        }
    }
}

#[test]
fn window_clipping_marks_endpoints() {
    // The primary trunk clipped at omega_max carries a window endpoint, not
    // a bifurcation.
    let tree = build_tree(3, 3, 2.0);
    let trunk = &tree.elements[0];
    assert_eq!(trunk.kind, ElementKind::Trunk);
    assert_eq!(trunk.endpoints.len(), 2);
    assert_eq!(trunk.endpoints[0].attaches_to, Attachment::Zero);
    assert_eq!(trunk.endpoints[1].attaches_to, Attachment::Window);
    assert_eq!(trunk.endpoints[1].omega_sq, Rat::from_float(4.0).unwrap());
}

#[test]
fn empty_trees_below_three() {
    let t2 = build_tree(2, 3, 6.0);
    assert_eq!(t2.stats().branches, 0);
    assert_eq!(t2.stats().trunks, 1);
}
