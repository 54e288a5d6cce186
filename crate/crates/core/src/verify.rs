//! Self-checks behind `bellshare verify`.
//!
//! Each check recomputes an invariant from scratch and reports pass/fail
//! with a one-line detail. Checks that fail are reported, never hidden.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adversary::{enumerate_branches, lying_p1_counterexample, run_scenario, Scenario};
use crate::bellalg::{collapse_table, epr_triple, simulate_collapse, BellLabel, OperatedQubit, Pauli};
use crate::error::Result;
use crate::neqr::{apply_pixel_setter, blank_image_state, build_image_state, neqr_decode, neqr_encode, share_image};
use crate::neqr::{reconstruct_image, GrayImage};
use crate::protocol::{
    bits_to_op, dealer_prepare, op_to_bits, BellTriple, Party, QubitPolicy, RoundPlan, ShareOp, TwoBits, P1_PAIR,
    P2_PAIR, P3_PAIR,
};
use crate::qsim::{Gate, StateVector, NORM_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<28} {}", self.name, self.detail)
    }
}

fn check(name: &'static str, result: Result<(bool, String)>) -> Check {
    match result {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn all_share_ops() -> impl Iterator<Item = ShareOp> {
    OperatedQubit::BOTH
        .into_iter()
        .flat_map(|q| Pauli::ALL.into_iter().map(move |op| ShareOp::new(op, q)))
}

fn random_state(num_qubits: usize, rng: &mut ChaCha8Rng) -> Result<StateVector> {
    let amps = (0..1usize << num_qubits)
        .map(|_| num_complex::Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect::<Vec<_>>();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect())
}

fn gates_unitary() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for gate in Gate::ALL {
        let m = gate.matrix();
        for i in 0..2 {
            for j in 0..2 {
                let dot: num_complex::Complex64 = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expect).norm());
            }
        }
    }
    Ok((worst < 1e-12, format!("max |U†U - I| = {worst:.1e}")))
}

fn bell_completeness() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let s = random_state(4, &mut rng)?;
        for (a, b) in [(1, 2), (1, 4), (3, 2)] {
            let total: f64 = s.bell_probabilities(a, b)?.iter().sum();
            worst = worst.max((total - 1.0).abs());
        }
    }
    Ok((worst < NORM_TOL, format!("max |sum p - 1| = {worst:.1e} over 60 cases")))
}

fn table_qubit_one() -> Result<(bool, String)> {
    let mut mismatches = 0;
    for op in Pauli::ALL {
        for outcome in BellLabel::ALL {
            let (p, sim) = simulate_collapse(op, OperatedQubit::One, outcome)?;
            let stored = collapse_table(op, OperatedQubit::One, outcome);
            if (sim.pair23, sim.pair56) != (stored.pair23, stored.pair56) || (p - 0.25).abs() > 1e-10 {
                mismatches += 1;
            }
        }
    }
    Ok((
        mismatches == 0,
        format!("{mismatches}/16 cells differ in labels or probability"),
    ))
}

fn encoding_bijection() -> Result<(bool, String)> {
    let ok = OperatedQubit::BOTH.into_iter().all(|q| {
        let images: BTreeSet<_> = TwoBits::ALL.iter().map(|&b| bits_to_op(b, q)).collect();
        images.len() == 4 && TwoBits::ALL.iter().all(|&b| op_to_bits(bits_to_op(b, q)) == b)
    });
    Ok((ok, "8 (bits, qubit) pairs".into()))
}

fn honest_exhaustive() -> Result<(bool, String)> {
    let (mut branches, mut bad) = (0, 0);
    for initial in BellTriple::all() {
        for share in all_share_ops() {
            for b in enumerate_branches(&RoundPlan::honest_with_initial(share, initial))? {
                branches += 1;
                if b.algebraic != Some(share) || b.oracle != BTreeSet::from([share]) {
                    bad += 1;
                }
            }
        }
    }
    Ok((
        bad == 0,
        format!("{bad} failures over {branches} branches (64 initial states x 8 ops)"),
    ))
}

fn outcome_distribution() -> Result<(bool, String)> {
    let mut bad = 0;
    for share in all_share_ops() {
        let state = dealer_prepare(share, BellTriple::ALPHA_PLUS);
        for p1 in BellLabel::ALL {
            let (_, post) = state.project_bell(P1_PAIR.0, P1_PAIR.1, p1)?;
            let dist = post.joint_distribution(&[P2_PAIR, P3_PAIR])?;
            if dist.len() != 4 || dist.values().any(|p| (p - 0.25).abs() > 1e-10) {
                bad += 1;
            }
        }
    }
    Ok((
        bad == 0,
        format!("{bad}/32 (op, P1 outcome) cells not uniform over 4 pairs"),
    ))
}

fn measurement_order() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for share in all_share_ops() {
        let s = dealer_prepare(share, BellTriple::ALPHA_PLUS);
        let forward = s.joint_distribution(&[P1_PAIR, P2_PAIR, P3_PAIR])?;
        let backward = s.joint_distribution(&[P3_PAIR, P2_PAIR, P1_PAIR])?;
        for (labels, p) in &forward {
            let rev = vec![labels[2], labels[1], labels[0]];
            worst = worst.max((p - backward.get(&rev).copied().unwrap_or(0.0)).abs());
        }
        worst = worst.max((forward.len() as f64 - backward.len() as f64).abs());
    }
    Ok((worst < 1e-10, format!("max probability difference {worst:.1e}")))
}

fn participant_purity() -> Result<(bool, String)> {
    let s = epr_triple(BellLabel::AlphaPlus, BellLabel::AlphaPlus, BellLabel::AlphaPlus);
    let mut worst: f64 = 0.0;
    for party in Party::ALL {
        let (a, b) = party.pair();
        worst = worst.max((s.reduced_density(&[a, b])?.purity() - 0.25).abs());
    }
    Ok((
        worst < 1e-12,
        format!("max |purity - 1/4| = {worst:.1e} over P1, P2, P3"),
    ))
}

fn withheld_shares() -> Result<(bool, String)> {
    let mut sizes: BTreeMap<(Party, usize), usize> = BTreeMap::new();
    let mut p1_algebraic = 0;
    for share in all_share_ops() {
        for party in Party::ALL {
            let mut plan = RoundPlan::honest(share);
            plan.withheld = Some(party);
            for b in enumerate_branches(&plan)? {
                *sizes.entry((party, b.oracle.len())).or_default() += 1;
                if party == Party::P1 && b.algebraic.is_some() {
                    p1_algebraic += 1;
                }
            }
        }
    }
    let ok = sizes.keys().all(|&(party, n)| party == Party::P1 || n == 4) && p1_algebraic == 0;
    Ok((
        ok,
        format!("candidate-set sizes {sizes:?}; P1-withheld algebraic results {p1_algebraic}"),
    ))
}

fn lying_p1() -> Result<(bool, String)> {
    let (got, truth) = lying_p1_counterexample();
    Ok((
        got.to_string() == "00" && truth.to_string() == "10",
        format!("reconstructed {got}, truth {truth}"),
    ))
}

fn forgery_invariance() -> Result<(bool, String)> {
    let (mut branches, mut bad) = (0, 0);
    for share in all_share_ops() {
        for target in [5, 6] {
            for gate in [Gate::X, Gate::Z, Gate::IY] {
                let mut plan = RoundPlan::honest(share);
                plan.forgery = Some((target, gate));
                for b in enumerate_branches(&plan)? {
                    branches += 1;
                    if b.algebraic != Some(share) || b.oracle != BTreeSet::from([share]) {
                        bad += 1;
                    }
                }
            }
        }
    }
    Ok((
        bad == 0,
        format!("{bad}/{branches} forged branches change the reconstruction"),
    ))
}

fn scenario_determinism() -> Result<(bool, String)> {
    let mut ok = true;
    for name in Scenario::NAMES {
        let s = Scenario::from_name(name)?;
        let bits: TwoBits = "10".parse()?;
        ok &= run_scenario(&s, bits, QubitPolicy::UniformRandom, 32, 77)?
            == run_scenario(&s, bits, QubitPolicy::UniformRandom, 32, 77)?;
    }
    Ok((ok, "5 scenarios, repeated with the same seed".into()))
}

fn neqr_equivalence() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut round_trips = true;
    for n in [1, 2] {
        for _ in 0..4 {
            let side = 1usize << n;
            let img = GrayImage::new(n, (0..side * side).map(|_| rng.random()).collect())?;
            let direct = neqr_encode(&img)?;
            worst = worst.max(1.0 - build_image_state(&img)?.fidelity_up_to_phase(&direct)?);
            round_trips &= neqr_decode(&direct)? == img;
        }
    }
    Ok((
        worst < 1e-10 && round_trips,
        format!("max 1 - fidelity {worst:.1e}; decode(encode) identity {round_trips}"),
    ))
}

fn pixel_setters() -> Result<(bool, String)> {
    let blank = blank_image_state(1)?;
    let mut ok = true;
    for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let twice = apply_pixel_setter(&apply_pixel_setter(&blank, 1, x, y, 0xA5)?, 1, x, y, 0xA5)?;
        ok &= twice.fidelity_up_to_phase(&blank)? > 1.0 - 1e-10;
        let (u, v) = (1 - x, y);
        let ab = apply_pixel_setter(&apply_pixel_setter(&blank, 1, x, y, 17)?, 1, u, v, 200)?;
        let ba = apply_pixel_setter(&apply_pixel_setter(&blank, 1, u, v, 200)?, 1, x, y, 17)?;
        ok &= ab.fidelity_up_to_phase(&ba)? > 1.0 - 1e-10;
    }
    Ok((ok, "involution and commutation on all 2x2 positions".into()))
}

fn image_round_trip() -> Result<(bool, String)> {
    let img = GrayImage::new(1, vec![0, 55, 128, 255])?;
    let mut ok = true;
    for seed in 0..8 {
        ok &= reconstruct_image(1, &share_image(&img, QubitPolicy::UniformRandom, seed)?)? == img;
    }
    Ok((ok, "2x2 image, 8 seeds".into()))
}

/// Runs every check.
pub fn run_checks() -> Vec<Check> {
    vec![
        check("gates-unitary", gates_unitary()),
        check("bell-completeness", bell_completeness()),
        check("collapse-table-qubit-1", table_qubit_one()),
        check("encoding-bijection", encoding_bijection()),
        check("honest-reconstruction", honest_exhaustive()),
        check("p2-p3-outcome-distribution", outcome_distribution()),
        check("measurement-order", measurement_order()),
        check("participant-purity", participant_purity()),
        check("withheld-share", withheld_shares()),
        check("lying-p1", lying_p1()),
        check("forgery-invariance", forgery_invariance()),
        check("scenario-determinism", scenario_determinism()),
        check("neqr-build-equals-encode", neqr_equivalence()),
        check("pixel-setters", pixel_setters()),
        check("image-round-trip", image_round_trip()),
    ]
}
