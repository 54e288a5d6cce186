//! Executable adversary scenarios: outside forgery, a dishonest dealer, a
//! dishonest first participant, and withheld shares.
//!
//! Each scenario rewrites an honest [`RoundPlan`]; trials then run the
//! ordinary round machinery and classify the algebraic reconstruction
//! against the dealer's true bits. The brute-force oracle runs alongside and
//! its candidate-set size feeds the ambiguity histogram.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bellalg::{BellLabel, OperatedQubit, Pauli};
use crate::error::{Error, Result};
use crate::protocol::{
    bits_to_op, derive_seed, execute_round, op_to_bits, reconstruct, reconstruct_op, reconstruct_oracle,
    share_secret_with, BellTriple, BitString, LabelSubstitution, Party, QubitPolicy, RoundAnnouncements, RoundPlan,
    RoundResult, ShareOp, TwoBits, P1_PAIR, P2_PAIR, P3_PAIR,
};
use crate::qsim::{Gate, ZERO_PROB};

/// How the reconstructing parties settle on an operated qubit when the
/// dealer does not reveal it truthfully.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitGuess {
    /// Parties guess qubit 1 or 4 uniformly at random.
    Uniform,
    /// Dealer announces the wrong qubit and the parties believe it.
    TrustLie,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    /// An outsider applies `gate` to one qubit between preparation and the
    /// first measurement.
    EveForgery { target_qubit: usize, gate: Gate },
    /// The dealer prepares `actual` but announces `announced`.
    LyingDealerState { actual: BellTriple, announced: BellTriple },
    /// The dealer always operates on `actual` and does not announce it
    /// truthfully.
    LyingDealerQubit { actual: OperatedQubit, guess: QubitGuess },
    /// P1 announces `substitution(measured)` instead of its outcome.
    LyingP1 { substitution: LabelSubstitution },
    /// One party keeps its outcome to itself.
    WithheldShare { party: Party },
}

impl Scenario {
    pub const NAMES: [&'static str; 5] = [
        "eve-forgery",
        "lying-dealer-state",
        "lying-dealer-qubit",
        "lying-p1",
        "withheld-share",
    ];

    /// Default instance for a command-line scenario name.
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "eve-forgery" => Scenario::EveForgery {
                target_qubit: 5,
                gate: Gate::X,
            },
            "lying-dealer-state" => Scenario::LyingDealerState {
                actual: BellTriple::uniform(BellLabel::AlphaMinus),
                announced: BellTriple::ALPHA_PLUS,
            },
            "lying-dealer-qubit" => Scenario::LyingDealerQubit {
                actual: OperatedQubit::Four,
                guess: QubitGuess::Uniform,
            },
            "lying-p1" => Scenario::LyingP1 {
                substitution: LabelSubstitution::transposition(BellLabel::AlphaPlus, BellLabel::AlphaMinus),
            },
            "withheld-share" => Scenario::WithheldShare { party: Party::P2 },
            other => return Err(Error::UnknownScenario(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::EveForgery { .. } => "eve-forgery",
            Scenario::LyingDealerState { .. } => "lying-dealer-state",
            Scenario::LyingDealerQubit { .. } => "lying-dealer-qubit",
            Scenario::LyingP1 { .. } => "lying-p1",
            Scenario::WithheldShare { .. } => "withheld-share",
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Scenario::EveForgery { target_qubit, .. } if !(1..=6).contains(&target_qubit) => Err(Error::InvalidQubit {
                label: target_qubit,
                num_qubits: 6,
            }),
            _ => Ok(()),
        }
    }

    /// Rewrites an honest plan into this scenario's plan.
    pub fn adjust<R: Rng + ?Sized>(&self, mut plan: RoundPlan, rng: &mut R) -> RoundPlan {
        match *self {
            Scenario::EveForgery { target_qubit, gate } => plan.forgery = Some((target_qubit, gate)),
            Scenario::LyingDealerState { actual, announced } => {
                plan.actual_initial = actual;
                plan.announced_initial = announced;
            }
            Scenario::LyingDealerQubit { actual, guess } => {
                plan.true_op = bits_to_op(op_to_bits(plan.true_op), actual);
                plan.announced_qubit = match guess {
                    QubitGuess::Uniform => QubitPolicy::UniformRandom.choose(rng),
                    QubitGuess::TrustLie => actual.other(),
                };
            }
            Scenario::LyingP1 { substitution } => plan.p1_substitution = Some(substitution),
            Scenario::WithheldShare { party } => plan.withheld = Some(party),
        }
        plan
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scenario::EveForgery { target_qubit, gate } => write!(f, "eve-forgery ({gate} on qubit {target_qubit})"),
            Scenario::LyingDealerState { actual, announced } => {
                write!(f, "lying-dealer-state (prepared {actual}, announced {announced})")
            }
            Scenario::LyingDealerQubit { actual, guess } => {
                write!(f, "lying-dealer-qubit (operates on {actual}, parties {guess:?})")
            }
            Scenario::LyingP1 { .. } => write!(f, "lying-p1"),
            Scenario::WithheldShare { party } => write!(f, "withheld-share ({party})"),
        }
    }
}

/// Aggregate of a scenario run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub trials: usize,
    pub correct_count: usize,
    pub wrong_count: usize,
    /// Algebraic path found no consistent term.
    pub aborted_count: usize,
    /// Algebraic path blocked by a withheld outcome.
    pub ambiguous_count: usize,
    pub per_round_correct_rate: f64,
    /// Oracle candidate-set size -> number of trials.
    pub ambiguity_histogram: BTreeMap<usize, usize>,
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials:          {}", self.trials)?;
        writeln!(f, "correct_rate:    {:.4}", self.per_round_correct_rate)?;
        writeln!(
            f,
            "correct/wrong/aborted/ambiguous: {}/{}/{}/{}",
            self.correct_count, self.wrong_count, self.aborted_count, self.ambiguous_count
        )?;
        let hist: Vec<String> = self
            .ambiguity_histogram
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect();
        write!(f, "oracle candidate-set sizes: {{{}}}", hist.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TrialClass {
    Correct,
    Wrong,
    Aborted,
    Ambiguous,
}

fn classify(result: &RoundResult, truth: TwoBits, announcements: &RoundAnnouncements) -> TrialClass {
    match result {
        RoundResult::Bits(b) if *b == truth => TrialClass::Correct,
        RoundResult::Bits(_) => TrialClass::Wrong,
        // A withheld field can only block the algebraic path.
        RoundResult::Aborted(_) if [announcements.p1, announcements.p2, announcements.p3].contains(&None) => {
            TrialClass::Ambiguous
        }
        RoundResult::Aborted(_) => TrialClass::Aborted,
    }
}

/// Runs `trials` independent rounds of `scenario`, each sharing
/// `secret_bits` with the qubit picked by `policy`.
///
/// Trial `t` draws everything from a stream derived from `(seed, t)`, so a
/// report depends only on its arguments.
pub fn run_scenario(
    scenario: &Scenario,
    secret_bits: TwoBits,
    policy: QubitPolicy,
    trials: usize,
    seed: u64,
) -> Result<ScenarioReport> {
    scenario.validate()?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut counts = [0usize; 4];
    let mut histogram = BTreeMap::new();
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
        let qubit = policy.choose(&mut rng);
        let plan = scenario.adjust(RoundPlan::honest(bits_to_op(secret_bits, qubit)), &mut rng);
        let transcript = execute_round(&plan, t, rng.next_u64())?;
        let class = classify(&transcript.reconstructed, secret_bits, &transcript.announcements);
        counts[class as usize] += 1;
        *histogram
            .entry(reconstruct_oracle(&transcript.announcements).len())
            .or_insert(0) += 1;
    }
    Ok(ScenarioReport {
        trials,
        correct_count: counts[TrialClass::Correct as usize],
        wrong_count: counts[TrialClass::Wrong as usize],
        aborted_count: counts[TrialClass::Aborted as usize],
        ambiguous_count: counts[TrialClass::Ambiguous as usize],
        per_round_correct_rate: counts[TrialClass::Correct as usize] as f64 / trials as f64,
        ambiguity_histogram: histogram,
    })
}

/// Multi-round view of a scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionReport {
    pub sessions: usize,
    pub rounds_per_session: usize,
    /// Fraction of sessions whose whole secret came back intact.
    pub session_correct_rate: f64,
    pub per_round_correct_rate: f64,
}

/// Shares the whole `secret` `sessions` times under `scenario`.
pub fn run_session_scenario(
    scenario: &Scenario,
    secret: &BitString,
    policy: QubitPolicy,
    sessions: usize,
    seed: u64,
) -> Result<SessionReport> {
    scenario.validate()?;
    if sessions == 0 {
        return Err(Error::InvalidArgument("sessions must be at least 1".into()));
    }
    let mut intact = 0;
    let mut rounds_ok = 0;
    let mut rounds_total = 0;
    for s in 0..sessions {
        let session_seed = derive_seed(seed, s as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(session_seed ^ 0x5eed);
        let session = share_secret_with(secret, policy, session_seed, |_, plan| scenario.adjust(plan, &mut rng))?;
        rounds_total += session.rounds.len();
        rounds_ok += session.rounds.iter().filter(|r| r.is_consistent()).count();
        if session.is_consistent() {
            intact += 1;
        }
    }
    Ok(SessionReport {
        sessions,
        rounds_per_session: secret.padded_to_even().len() / 2,
        session_correct_rate: intact as f64 / sessions as f64,
        per_round_correct_rate: rounds_ok as f64 / rounds_total as f64,
    })
}

/// One measurement branch of a planned round.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub measured: [BellLabel; 3],
    pub probability: f64,
    pub announcements: RoundAnnouncements,
    /// Algebraic reconstruction, `None` when it errored.
    pub algebraic: Option<ShareOp>,
    pub oracle: BTreeSet<ShareOp>,
}

/// Every measurement branch of `plan` with nonzero probability.
pub fn enumerate_branches(plan: &RoundPlan) -> Result<Vec<Branch>> {
    let state = plan.prepared_state()?;
    let dist = state.joint_distribution(&[P1_PAIR, P2_PAIR, P3_PAIR])?;
    Ok(dist
        .into_iter()
        .filter(|(_, p)| *p > ZERO_PROB)
        .map(|(labels, probability)| {
            let measured = [labels[0], labels[1], labels[2]];
            let announcements = plan.announce(measured);
            Branch {
                measured,
                probability,
                announcements,
                algebraic: reconstruct_op(&announcements).ok(),
                oracle: reconstruct_oracle(&announcements),
            }
        })
        .collect())
}

/// Announcements of the fixed round used by both dishonesty counterexamples:
/// all-`α+` announced, qubit 1, P2 = `β−` on (2,6), P3 = `β+` on (3,5).
fn counterexample_announcements(initial: BellTriple, p1: BellLabel) -> RoundAnnouncements {
    RoundAnnouncements {
        initial,
        operated_qubit: OperatedQubit::One,
        p1: Some(p1),
        p2: Some(BellLabel::BetaMinus),
        p3: Some(BellLabel::BetaPlus),
    }
}

/// The dealer shared `Z` on qubit 1 and P1 measured `α+`; P1 announces
/// `announced_p1`. Returns (reconstructed bits, true bits).
pub fn lying_p1_case(announced_p1: BellLabel) -> (TwoBits, TwoBits) {
    let truth = op_to_bits(ShareOp::new(Pauli::Z, OperatedQubit::One));
    let a = counterexample_announcements(BellTriple::ALPHA_PLUS, announced_p1);
    let got = reconstruct(&a).expect("complete announcements always reconstruct");
    (got, truth)
}

/// P1 reports `α−` where it measured `α+`.
pub fn lying_p1_counterexample() -> (TwoBits, TwoBits) {
    lying_p1_case(BellLabel::AlphaMinus)
}

/// The dealer prepared all-`α−` and shared `I` on qubit 1, announced
/// `announced`, and the parties report P1 = `β−`, P2 = `β−`, P3 = `β+`.
/// Returns (reconstructed operator, true operator).
pub fn lying_dealer_state_case(announced: BellTriple) -> (Pauli, Pauli) {
    let a = counterexample_announcements(announced, BellLabel::BetaMinus);
    let got = reconstruct_op(&a).expect("complete announcements always reconstruct");
    (got.op, Pauli::I)
}

/// Announces all-`α+` over an all-`α−` preparation.
pub fn lying_dealer_state_counterexample() -> (Pauli, Pauli) {
    lying_dealer_state_case(BellTriple::ALPHA_PLUS)
}

/// Honest control for the dishonest-dealer case: all-`α−` prepared and
/// announced, `I` on qubit 1, reconstructed on every reachable branch.
/// Returns the distinct reconstructed operators.
///
/// The counterexample's outcome triple cannot occur here (P3 = `β+` has
/// probability zero after P1 = `β−`, P2 = `β−`), so the control runs over
/// the branches that can.
pub fn lying_dealer_state_honest_control() -> Result<BTreeSet<Pauli>> {
    let plan = RoundPlan::honest_with_initial(
        ShareOp::new(Pauli::I, OperatedQubit::One),
        BellTriple::uniform(BellLabel::AlphaMinus),
    );
    enumerate_branches(&plan)?
        .into_iter()
        .map(|b| {
            b.algebraic
                .map(|s| s.op)
                .ok_or_else(|| Error::ReconstructionFailed(format!("branch {:?}", b.measured)))
        })
        .collect()
}
