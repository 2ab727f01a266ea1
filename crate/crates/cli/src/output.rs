//! File emitters: the tree.json document (exact rationals as integer
//! pairs), trace markers, and the run-info sidecar.

use branchforge::continuation::{ContinuationCurve, MarkerKind};
use branchforge::exact::Rat;
use branchforge::galerkin::energy;
use branchforge::tree::{Attachment, ElementKind, ReducibleTree};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

fn rat_pair(r: &Rat) -> Value {
    let num = r.numer().to_i64().expect("tree rationals fit in i64");
    let den = r.denom().to_i64().expect("tree rationals fit in i64");
    json!([num, den])
}

/// The tree.json document: exact rational coefficients as integer pairs and
/// squared-frequency domain endpoints so everything stays rational.
pub fn tree_json(tree: &ReducibleTree) -> Value {
    let elements: Vec<Value> = tree
        .elements
        .iter()
        .map(|el| {
            let kind = match el.kind {
                ElementKind::Trunk => "trunk",
                ElementKind::Branch => "branch",
            };
            let type_tag: Vec<Value> = el.type_tag.iter().map(|m| json!([m.m, m.n])).collect();
            let coeff_sq: Vec<Value> = el
                .solution
                .coeff_sq()
                .iter()
                .map(|(p, q)| {
                    let pn = p.numer().to_i64().expect("coefficient fits i64");
                    let pd = p.denom().to_i64().expect("coefficient fits i64");
                    let qn = q.numer().to_i64().expect("coefficient fits i64");
                    let qd = q.denom().to_i64().expect("coefficient fits i64");
                    json!([pn, pd, qn, qd])
                })
                .collect();
            let domain: Vec<Value> = el
                .solution
                .domain()
                .into_iter()
                .map(|iv| {
                    let lo = iv.lo.radicand();
                    let hi = iv
                        .hi
                        .as_ref()
                        .expect("window-clipped domains are bounded")
                        .radicand();
                    let ln = lo.numer().to_i64().expect("endpoint fits i64");
                    let ld = lo.denom().to_i64().expect("endpoint fits i64");
                    let hn = hi.numer().to_i64().expect("endpoint fits i64");
                    let hd = hi.denom().to_i64().expect("endpoint fits i64");
                    json!([ln, ld, hn, hd])
                })
                .collect();
            let endpoints: Vec<Value> = el
                .endpoints
                .iter()
                .map(|ep| {
                    let attaches: Value = match &ep.attaches_to {
                        Attachment::Zero => json!("zero"),
                        Attachment::Window => json!("window"),
                        Attachment::Element(set) => {
                            json!(set.iter().map(|m| json!([m.m, m.n])).collect::<Vec<_>>())
                        }
                    };
                    json!({
                        "omega_sq": rat_pair(&ep.omega_sq),
                        "energy_over_pi": rat_pair(&ep.energy_over_pi),
                        "attaches_to": attaches,
                    })
                })
                .collect();
            json!({
                "kind": kind,
                "type": type_tag,
                "coeff_sq": coeff_sq,
                "domain": domain,
                "endpoints": endpoints,
            })
        })
        .collect();
    json!({
        "truncation": tree.truncation,
        "elements": elements,
    })
}

/// markers.json for a traced curve: every marker with its location.
pub fn markers_json(curve: &ContinuationCurve) -> Value {
    let span = curve.system.span();
    let markers: Vec<Value> = curve
        .markers
        .iter()
        .map(|(index, kind)| {
            let p = &curve.points[*index];
            let kind = match kind {
                MarkerKind::Fold => "fold",
                MarkerKind::BifurcationCandidate => "bifurcation-candidate",
                MarkerKind::ClosedLoop => "closed-loop",
                MarkerKind::Stall => "stall",
            };
            json!({
                "index": index,
                "kind": kind,
                "omega": p.omega,
                "energy": energy(p.omega, &p.amplitudes, span),
            })
        })
        .collect();
    json!({
        "points": curve.points.len(),
        "markers": markers,
    })
}

/// Sidecar run-info file; data files themselves stay timestamp-free.
pub fn run_meta(args: &[String]) -> String {
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_else(|_| "unknown".into());
    format!(
        "tool: branchforge {}\ncommand: {}\nunix_time: {}\n",
        env!("CARGO_PKG_VERSION"),
        args.join(" "),
        now
    )
}
