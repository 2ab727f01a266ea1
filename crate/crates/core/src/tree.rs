//! The N-reducible tree: the primary trunk together with all branches of
//! reducible subsystems of the N×N diagonal truncation that contain the
//! fundamental mode, plus the scaling symmetry and structural statistics.
//!
//! A subsystem qualifies when it contains the fundamental mode, passes the
//! reducibility pattern check, and its full-order solution has a nonempty
//! positivity domain inside the frequency window. The tree collects the
//! branches of all qualifying subsystems (deduplicated); trunks other than
//! the primary trunk appear only as endpoint attachment metadata.

use crate::exact::{rat_int, rat_to_f64, Rat};
use crate::galerkin::{AlgebraicSystem, Nonlinearity};
use crate::modes::{ModeIndex, ModeSet};
use crate::reducible::{n_mode_solution_unchecked, pair_is_reducible, BranchSolution};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum TreeError {
    #[error("rescaling factors must be odd (got n={n}, m={m}); even factors leave the odd-harmonic basis")]
    EvenRescaleFactor { n: u32, m: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Trunk,
    Branch,
}

/// What a branch endpoint lands on when its vanishing amplitudes are removed.
#[derive(Clone, Debug, PartialEq)]
pub enum Attachment {
    /// Every amplitude vanishes: bifurcation from the zero solution.
    Zero,
    /// The trunk or branch spanned by the surviving modes.
    Element(ModeSet),
    /// The endpoint is a frequency-window clip, not a bifurcation.
    Window,
}

/// One endpoint of a tree element, exact in Ω² and E/π.
#[derive(Clone, Debug)]
pub struct Endpoint {
    pub omega_sq: Rat,
    pub energy_over_pi: Rat,
    pub attaches_to: Attachment,
}

impl Endpoint {
    pub fn omega(&self) -> f64 {
        rat_to_f64(&self.omega_sq).sqrt()
    }

    pub fn energy(&self) -> f64 {
        rat_to_f64(&self.energy_over_pi) * PI
    }
}

/// A trunk or branch of the reducible tree.
#[derive(Clone, Debug)]
pub struct TreeElement {
    pub kind: ElementKind,
    pub type_tag: ModeSet,
    pub solution: BranchSolution,
    pub endpoints: Vec<Endpoint>,
}

impl TreeElement {
    pub fn order(&self) -> usize {
        self.type_tag.len()
    }

    pub fn is_primary_branch(&self) -> bool {
        self.kind == ElementKind::Branch
            && self.order() == 2
            && self.type_tag.contains(ModeIndex::FUNDAMENTAL)
    }

    /// Samples `(omega, energy, amplitudes)` rows over the element's domain.
    pub fn sample(&self, count: usize, omega_max: f64) -> Vec<(f64, f64, Vec<f64>)> {
        let Some(domain) = self.solution.domain() else {
            return Vec::new();
        };
        let lo = domain.lo.to_f64();
        let hi = domain.hi.as_ref().map(|h| h.to_f64()).unwrap_or(omega_max);
        if !(hi > lo) || count < 2 {
            return Vec::new();
        }
        let span = &self.type_tag;
        (0..count)
            .filter_map(|i| {
                let omega = lo + (hi - lo) * i as f64 / (count - 1) as f64;
                let amps = self.solution.amplitudes_at(omega)?;
                let energy = crate::galerkin::energy(omega, &amps, span);
                Some((omega, energy, amps))
            })
            .collect()
    }
}

/// Counts per structural class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub trunks: usize,
    pub branches: usize,
    pub primary_branches: usize,
    pub secondary_branches: usize,
    /// `(order, count)` pairs for branches, ascending order.
    pub branches_by_order: Vec<(usize, usize)>,
}

/// The N-reducible tree.
#[derive(Clone, Debug)]
pub struct ReducibleTree {
    pub truncation: u32,
    pub max_order: usize,
    pub omega_max: f64,
    pub elements: Vec<TreeElement>,
}

impl ReducibleTree {
    pub fn stats(&self) -> TreeStats {
        let mut stats = TreeStats::default();
        let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
        for el in &self.elements {
            match el.kind {
                ElementKind::Trunk => stats.trunks += 1,
                ElementKind::Branch => {
                    stats.branches += 1;
                    *by_order.entry(el.order()).or_insert(0) += 1;
                    if el.type_tag.contains(ModeIndex::FUNDAMENTAL) && el.order() == 2 {
                        stats.primary_branches += 1;
                    }
                    if !el.type_tag.contains(ModeIndex::FUNDAMENTAL) {
                        stats.secondary_branches += 1;
                    }
                }
            }
        }
        stats.branches_by_order = by_order.into_iter().collect();
        stats
    }

    pub fn find(&self, type_tag: &ModeSet) -> Option<&TreeElement> {
        self.elements.iter().find(|e| &e.type_tag == type_tag)
    }
}

fn endpoints_for(solution: &BranchSolution, clipped_hi: Option<&Rat>) -> Vec<Endpoint> {
    let Some(domain) = solution.domain() else {
        return Vec::new();
    };
    let mut endpoints = Vec::new();
    let mut push_endpoint = |w: &Rat, is_window_clip: bool| {
        let vanishing: Vec<usize> = (0..solution.order())
            .filter(|&k| solution.amplitude_sq_at(k, w).is_zero())
            .collect();
        let attaches_to = if is_window_clip && vanishing.is_empty() {
            Attachment::Window
        } else if vanishing.len() == solution.order() {
            Attachment::Zero
        } else if vanishing.is_empty() {
            // Domain endpoint with no vanishing amplitude would contradict
            // the affine closed form.
            unreachable!("interior endpoint without vanishing amplitude")
        } else {
            Attachment::Element(solution.mode_set().without(&vanishing))
        };
        endpoints.push(Endpoint {
            omega_sq: w.clone(),
            energy_over_pi: solution.energy_over_pi_at(w),
            attaches_to,
        });
    };

    push_endpoint(domain.lo.radicand(), false);
    if let Some(hi) = domain.hi.as_ref() {
        let w = hi.radicand();
        let is_clip = clipped_hi.map_or(false, |c| c == w);
        // Distinguish a true positivity boundary from the window cap: at the
        // cap no amplitude vanishes unless the boundary happens to coincide.
        let vanishes = (0..solution.order()).any(|k| solution.amplitude_sq_at(k, w).is_zero());
        push_endpoint(w, is_clip && !vanishes);
    }
    endpoints
}

fn element_from_solution(kind: ElementKind, mut solution: BranchSolution, omega_max: f64) -> Option<TreeElement> {
    let domain = solution.domain()?.clip_upper(omega_max);
    if domain.is_empty() {
        return None;
    }
    solution.set_domain(domain.clone());
    let clip_hi = domain.hi.as_ref().map(|h| h.radicand().clone());
    let endpoints = endpoints_for(&solution, clip_hi.as_ref());
    Some(TreeElement { kind, type_tag: solution.mode_set().clone(), solution, endpoints })
}

/// Is `{(0,0), p}` a reducible pair? Explicit index form of the pattern
/// check for pairs with the fundamental mode.
pub fn fundamental_pair_reducible(p: ModeIndex) -> bool {
    p.m >= 1 && p.n >= 1 && p != ModeIndex::new(1, 1)
}

/// Builds the N-reducible tree for the N×N truncation, keeping branches of
/// qualifying subsystems up to `max_order` whose positivity domain meets
/// `(0, omega_max]`. Deterministic output order.
pub fn build_tree(truncation: u32, max_order: usize, omega_max: f64) -> ReducibleTree {
    assert!(truncation >= 1, "truncation must be at least 1");
    assert!(max_order >= 1, "max_order must be at least 1");
    let mut elements: BTreeMap<Vec<ModeIndex>, TreeElement> = BTreeMap::new();

    let insert = |kind: ElementKind, set: &ModeSet, elements: &mut BTreeMap<Vec<ModeIndex>, TreeElement>| {
        let key = set.modes().to_vec();
        if elements.contains_key(&key) {
            return true;
        }
        let solution = n_mode_solution_unchecked(set);
        match element_from_solution(kind, solution, omega_max) {
            Some(el) => {
                elements.insert(key, el);
                true
            }
            None => false,
        }
    };

    // Primary trunk.
    let fundamental = ModeSet::from_pairs(&[(0, 0)]);
    insert(ElementKind::Trunk, &fundamental, &mut elements);

    // Non-fundamental grid modes compatible with the fundamental mode.
    let grid: Vec<ModeIndex> = (1..truncation)
        .flat_map(|m| (1..truncation).map(move |n| ModeIndex::new(m, n)))
        .filter(|&p| fundamental_pair_reducible(p))
        .collect();

    if max_order >= 2 {
        for &p in &grid {
            let set = ModeSet::new(vec![ModeIndex::FUNDAMENTAL, p]).unwrap();
            insert(ElementKind::Branch, &set, &mut elements);
        }
    }

    if max_order >= 3 {
        for (i, &p1) in grid.iter().enumerate() {
            for &p2 in &grid[i + 1..] {
                if !pair_is_reducible(p1, p2) {
                    continue;
                }
                let triple = ModeSet::new(vec![ModeIndex::FUNDAMENTAL, p1, p2]).unwrap();
                if !is_reducible_span(&triple) {
                    continue;
                }
                if insert(ElementKind::Branch, &triple, &mut elements) {
                    // Branches of the qualifying subsystem that do not
                    // contain the fundamental mode.
                    let secondary = ModeSet::new(vec![p1, p2]).unwrap();
                    insert(ElementKind::Branch, &secondary, &mut elements);
                }
            }
        }
    }

    if max_order >= 4 {
        for (i, &p1) in grid.iter().enumerate() {
            for (j, &p2) in grid.iter().enumerate().skip(i + 1) {
                if !pair_is_reducible(p1, p2) {
                    continue;
                }
                for &p3 in &grid[j + 1..] {
                    if !pair_is_reducible(p1, p3) || !pair_is_reducible(p2, p3) {
                        continue;
                    }
                    let quad = ModeSet::new(vec![ModeIndex::FUNDAMENTAL, p1, p2, p3]).unwrap();
                    if !is_reducible_span(&quad) {
                        continue;
                    }
                    if insert(ElementKind::Branch, &quad, &mut elements) {
                        for sub in [
                            vec![p1, p2],
                            vec![p1, p3],
                            vec![p2, p3],
                            vec![p1, p2, p3],
                        ] {
                            let set = ModeSet::new(sub).unwrap();
                            insert(ElementKind::Branch, &set, &mut elements);
                        }
                    }
                }
            }
        }
    }

    let mut ordered: Vec<TreeElement> = elements.into_values().collect();
    ordered.sort_by(|a, b| {
        (a.order(), a.type_tag.modes()).cmp(&(b.order(), b.type_tag.modes()))
    });
    ReducibleTree { truncation, max_order, omega_max, elements: ordered }
}

/// Full reducibility pattern check on a span.
pub fn is_reducible_span(set: &ModeSet) -> bool {
    AlgebraicSystem::new(set.clone(), Nonlinearity::Defocusing)
        .reducible_pattern_check()
        .is_ok()
}

/// `(N−2)(N−1)/2`, asserted against the enumerated tree.
pub fn primary_branch_count(truncation: u32) -> u64 {
    assert!(truncation >= 2, "primary branch count needs N >= 2");
    let n = truncation as u64;
    let formula = (n - 2) * (n - 1) / 2;
    let tree = build_tree(truncation, 2, f64::INFINITY);
    let counted = tree.stats().primary_branches as u64;
    assert_eq!(
        formula, counted,
        "primary branch count mismatch for N={truncation}"
    );
    formula
}

/// Applies the scaling symmetry `(u, Ω) → (n·u(mτ, nx), nΩ/m)` to a tree:
/// temporal factors multiply by `m`, spatial by `n`, frequencies by `n/m`,
/// amplitudes by `n`, energies by `n⁴`. Both factors must be odd.
pub fn rescale_tree(tree: &ReducibleTree, n: u32, m: u32) -> Result<ReducibleTree, TreeError> {
    if n % 2 == 0 || m % 2 == 0 || n == 0 || m == 0 {
        return Err(TreeError::EvenRescaleFactor { n, m });
    }
    let map_mode = |mode: ModeIndex| -> ModeIndex {
        let c = mode.temporal_factor() as u32 * m;
        let d = mode.spatial_factor() as u32 * n;
        ModeIndex::new((c - 1) / 2, (d - 1) / 2)
    };
    let map_set = |set: &ModeSet| -> ModeSet {
        ModeSet::new(set.iter().map(|&x| map_mode(x)).collect()).expect("injective mode map")
    };
    let m_sq = rat_int((m as i64) * (m as i64));
    let n_sq = rat_int((n as i64) * (n as i64));
    let freq_sq = &n_sq / &m_sq;
    let energy_factor = &n_sq * &n_sq;

    let elements = tree
        .elements
        .iter()
        .map(|el| {
            let type_tag = map_set(&el.type_tag);
            let coeff_sq = el
                .solution
                .coeff_sq()
                .iter()
                .map(|(p, q)| (p * &m_sq, q * &n_sq))
                .collect();
            let domain = el.solution.domain().map(|iv| crate::exact::OmegaInterval::new(
                crate::exact::SqrtRat::new(iv.lo.radicand() * &freq_sq),
                iv.hi
                    .as_ref()
                    .map(|h| crate::exact::SqrtRat::new(h.radicand() * &freq_sq)),
            ));
            let solution = BranchSolution::from_parts(type_tag.clone(), coeff_sq, domain);
            let endpoints = el
                .endpoints
                .iter()
                .map(|ep| Endpoint {
                    omega_sq: &ep.omega_sq * &freq_sq,
                    energy_over_pi: &ep.energy_over_pi * &energy_factor,
                    attaches_to: match &ep.attaches_to {
                        Attachment::Zero => Attachment::Zero,
                        Attachment::Window => Attachment::Window,
                        Attachment::Element(set) => Attachment::Element(map_set(set)),
                    },
                })
                .collect();
            TreeElement { kind: el.kind, type_tag, solution, endpoints }
        })
        .collect();
    Ok(ReducibleTree {
        truncation: tree.truncation,
        max_order: tree.max_order,
        omega_max: tree.omega_max * n as f64 / m as f64,
        elements,
    })
}

/// For each N, the lowest primary branch `(N−2, N−1)`: its trunk
/// bifurcation frequency minus one and the shoot energy.
pub fn lowest_branch_asymptotics(n_range: std::ops::RangeInclusive<u32>) -> Vec<(u32, f64, f64)> {
    assert!(*n_range.start() >= 3, "lowest branch requires N >= 3");
    n_range
        .map(|big_n| {
            let m = (big_n - 2) as i64;
            let n = (big_n - 1) as i64;
            let bif_sq = rat_int(12 * n * n + 12 * n - 1) / rat_int(12 * m * m + 12 * m - 1);
            let omega_minus_one = rat_to_f64(&bif_sq).sqrt() - 1.0;
            let (_, e_over_pi) =
                crate::reducible::shoot_of_primary_branch(m as u32, n as u32).expect("m < n");
            (big_n, omega_minus_one, rat_to_f64(&e_over_pi) * PI)
        })
        .collect()
}
