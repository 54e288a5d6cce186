//! Dealer and participant state machine.
//!
//! The dealer distributes three Bell pairs, applies one Pauli to qubit 1 or
//! qubit 4, and hands the pairs out: P1 holds (1,4), P2 holds (2,6) and P3
//! holds (3,5). Each participant performs a Bell measurement, everyone
//! announces, and the operator (hence two secret bits) is recovered from
//! the announcements alone.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bellalg::{epr_triple, rebase, BellLabel, OperatedQubit, Pair, PairSide, Pauli};
use crate::error::{Error, Result};
use crate::qsim::{Gate, StateVector, ZERO_PROB};

pub const P1_PAIR: Pair = (1, 4);
pub const P2_PAIR: Pair = (2, 6);
pub const P3_PAIR: Pair = (3, 5);

/// Two secret bits, first bit most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBits(u8);

impl TwoBits {
    pub const ALL: [TwoBits; 4] = [TwoBits(0), TwoBits(1), TwoBits(2), TwoBits(3)];

    pub fn new(value: u8) -> Result<Self> {
        if value > 3 {
            return Err(Error::MalformedBits(value.to_string()));
        }
        Ok(TwoBits(value))
    }

    pub fn from_bools(high: bool, low: bool) -> Self {
        TwoBits(u8::from(high) << 1 | u8::from(low))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn bits(self) -> [bool; 2] {
        [self.0 & 2 != 0, self.0 & 1 != 0]
    }
}

impl fmt::Display for TwoBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02b}", self.0)
    }
}

impl FromStr for TwoBits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.as_bytes() {
            [a @ (b'0' | b'1'), b @ (b'0' | b'1')] => Ok(TwoBits::from_bools(*a == b'1', *b == b'1')),
            _ => Err(Error::MalformedBits(s.to_string())),
        }
    }
}

/// A classical bit string, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    /// `value` written with exactly `width` bits.
    pub fn from_value(value: u64, width: usize) -> Self {
        BitString((0..width).rev().map(|i| i < 64 && value >> i & 1 == 1).collect())
    }

    /// Binary form of a decimal value, left-padded to a whole number of
    /// bytes.
    pub fn from_decimal(value: u64) -> Self {
        let significant = (64 - value.leading_zeros() as usize).max(1);
        Self::from_value(value, significant.div_ceil(8) * 8)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Left-pads with one zero when the length is odd.
    pub fn padded_to_even(&self) -> BitString {
        let mut bits = self.0.clone();
        if bits.len() % 2 == 1 {
            bits.insert(0, false);
        }
        BitString(bits)
    }

    /// Two-bit chunks of an even-length string.
    pub fn chunks(&self) -> Vec<TwoBits> {
        self.0
            .chunks(2)
            .map(|c| TwoBits::from_bools(c[0], c.get(1).copied().unwrap_or(false)))
            .collect()
    }

    pub fn from_chunks(chunks: &[TwoBits]) -> Self {
        BitString(chunks.iter().flat_map(|c| c.bits()).collect())
    }

    /// Value of the bits as an unsigned integer.
    pub fn value(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| acc << 1 | u64::from(b))
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        BitString(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> BitString {
        BitString(self.0[start..end].to_vec())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::MalformedBits(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

/// The dealer's per-round secret carrier: which Pauli on which qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShareOp {
    pub op: Pauli,
    pub qubit: OperatedQubit,
}

impl ShareOp {
    pub fn new(op: Pauli, qubit: OperatedQubit) -> Self {
        ShareOp { op, qubit }
    }
}

impl fmt::Display for ShareOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.op, self.qubit)
    }
}

/// Operator for two bits on the chosen qubit.
///
/// Qubit 1: I=00, X=01, iY=11, Z=10. Qubit 4: I=11, X=10, iY=00, Z=01.
pub fn bits_to_op(bits: TwoBits, qubit: OperatedQubit) -> ShareOp {
    let op = Pauli::ALL
        .into_iter()
        .find(|&op| op_to_bits(ShareOp::new(op, qubit)) == bits)
        .expect("encoding is a bijection per qubit");
    ShareOp::new(op, qubit)
}

pub fn op_to_bits(share: ShareOp) -> TwoBits {
    let on_one = match share.op {
        Pauli::I => 0b00,
        Pauli::X => 0b01,
        Pauli::IY => 0b11,
        Pauli::Z => 0b10,
    };
    match share.qubit {
        OperatedQubit::One => TwoBits(on_one),
        OperatedQubit::Four => TwoBits(!on_one & 0b11),
    }
}

/// Bell labels of pairs (1,2), (3,4), (5,6).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BellTriple {
    pub pair12: BellLabel,
    pub pair34: BellLabel,
    pub pair56: BellLabel,
}

impl BellTriple {
    pub const ALPHA_PLUS: BellTriple = BellTriple::uniform(BellLabel::AlphaPlus);

    pub const fn new(pair12: BellLabel, pair34: BellLabel, pair56: BellLabel) -> Self {
        BellTriple { pair12, pair34, pair56 }
    }

    pub const fn uniform(label: BellLabel) -> Self {
        BellTriple::new(label, label, label)
    }

    pub fn state(&self) -> StateVector {
        epr_triple(self.pair12, self.pair34, self.pair56)
    }

    /// Every one of the 64 triples.
    pub fn all() -> impl Iterator<Item = BellTriple> {
        BellLabel::ALL.into_iter().flat_map(|a| {
            BellLabel::ALL
                .into_iter()
                .flat_map(move |b| BellLabel::ALL.into_iter().map(move |c| BellTriple::new(a, b, c)))
        })
    }
}

impl Default for BellTriple {
    fn default() -> Self {
        BellTriple::ALPHA_PLUS
    }
}

impl fmt::Display for BellTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(1,2) {}(3,4) {}(5,6)", self.pair12, self.pair34, self.pair56)
    }
}

/// Applies the dealer's operator to the initial triple.
pub fn dealer_prepare(share: ShareOp, initial: BellTriple) -> StateVector {
    initial
        .state()
        .apply_single(share.op.gate(), share.qubit.label())
        .expect("qubits 1 and 4 exist in a six-qubit register")
}

/// How the dealer picks the operated qubit for each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QubitPolicy {
    AlwaysOne,
    AlwaysFour,
    #[default]
    UniformRandom,
}

impl QubitPolicy {
    pub const ALL: [QubitPolicy; 3] = [
        QubitPolicy::AlwaysOne,
        QubitPolicy::AlwaysFour,
        QubitPolicy::UniformRandom,
    ];

    pub fn choose<R: Rng + ?Sized>(self, rng: &mut R) -> OperatedQubit {
        match self {
            QubitPolicy::AlwaysOne => OperatedQubit::One,
            QubitPolicy::AlwaysFour => OperatedQubit::Four,
            QubitPolicy::UniformRandom => {
                if rng.random::<bool>() {
                    OperatedQubit::Four
                } else {
                    OperatedQubit::One
                }
            }
        }
    }
}

impl FromStr for QubitPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one" | "1" => Ok(QubitPolicy::AlwaysOne),
            "four" | "4" => Ok(QubitPolicy::AlwaysFour),
            "random" | "uniform" => Ok(QubitPolicy::UniformRandom),
            other => Err(Error::InvalidArgument(format!(
                "qubit policy {other:?} (expected one, four or random)"
            ))),
        }
    }
}

/// The three participants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    P1,
    P2,
    P3,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::P1, Party::P2, Party::P3];

    pub fn pair(self) -> Pair {
        match self {
            Party::P1 => P1_PAIR,
            Party::P2 => P2_PAIR,
            Party::P3 => P3_PAIR,
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Everything said in public during one round. `None` marks a withheld
/// measurement outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoundAnnouncements {
    pub initial: BellTriple,
    pub operated_qubit: OperatedQubit,
    pub p1: Option<BellLabel>,
    pub p2: Option<BellLabel>,
    pub p3: Option<BellLabel>,
}

impl RoundAnnouncements {
    pub fn outcome(&self, party: Party) -> Option<BellLabel> {
        match party {
            Party::P1 => self.p1,
            Party::P2 => self.p2,
            Party::P3 => self.p3,
        }
    }
}

/// A total map over Bell labels, used for lying announcements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelSubstitution([BellLabel; 4]);

impl LabelSubstitution {
    pub fn identity() -> Self {
        LabelSubstitution(BellLabel::ALL)
    }

    /// Exchanges `a` and `b`, fixes the rest.
    pub fn transposition(a: BellLabel, b: BellLabel) -> Self {
        let mut map = BellLabel::ALL;
        map.swap(a.index(), b.index());
        LabelSubstitution(map)
    }

    /// `α+ ↔ α−` and `β+ ↔ β−`; moves every label.
    pub fn sign_flip() -> Self {
        use BellLabel::*;
        LabelSubstitution([AlphaMinus, AlphaPlus, BetaMinus, BetaPlus])
    }

    pub fn from_map(map: [BellLabel; 4]) -> Self {
        LabelSubstitution(map)
    }

    pub fn apply(&self, label: BellLabel) -> BellLabel {
        self.0[label.index()]
    }
}

/// Knobs for a single round. The honest plan has the dealer announce what
/// it actually did and every participant announce what it measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundPlan {
    pub true_op: ShareOp,
    pub actual_initial: BellTriple,
    pub announced_initial: BellTriple,
    pub announced_qubit: OperatedQubit,
    /// Gate applied by an outsider after preparation, before any
    /// measurement.
    pub forgery: Option<(usize, Gate)>,
    pub p1_substitution: Option<LabelSubstitution>,
    pub withheld: Option<Party>,
}

impl RoundPlan {
    pub fn honest(true_op: ShareOp) -> Self {
        Self::honest_with_initial(true_op, BellTriple::ALPHA_PLUS)
    }

    pub fn honest_with_initial(true_op: ShareOp, initial: BellTriple) -> Self {
        RoundPlan {
            true_op,
            actual_initial: initial,
            announced_initial: initial,
            announced_qubit: true_op.qubit,
            forgery: None,
            p1_substitution: None,
            withheld: None,
        }
    }
}

/// Result of one round's reconstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundResult {
    Bits(TwoBits),
    Aborted(String),
}

impl RoundResult {
    pub fn bits(&self) -> Option<TwoBits> {
        match self {
            RoundResult::Bits(b) => Some(*b),
            RoundResult::Aborted(_) => None,
        }
    }
}

/// Public record plus dealer-private truth for one round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundTranscript {
    pub round_index: usize,
    pub true_op: ShareOp,
    /// What the participants actually measured on (1,4), (2,6), (3,5).
    pub measured: [BellLabel; 3],
    pub announcements: RoundAnnouncements,
    pub reconstructed: RoundResult,
    pub rng_seed: u64,
}

impl RoundTranscript {
    pub fn true_bits(&self) -> TwoBits {
        op_to_bits(self.true_op)
    }

    /// Reconstruction succeeded and matches the dealer's bits.
    pub fn is_consistent(&self) -> bool {
        self.reconstructed.bits() == Some(self.true_bits())
    }

    pub fn record(&self) -> TranscriptRecord {
        let outcome = |o: Option<BellLabel>| o.map_or_else(|| "withheld".to_string(), |l| l.name().to_string());
        TranscriptRecord {
            record: "round".into(),
            round_index: self.round_index,
            dealer_op: self.true_op.op.name().into(),
            operated_qubit: self.true_op.qubit.label() as u8,
            p1_outcome: outcome(self.announcements.p1),
            p2_outcome: outcome(self.announcements.p2),
            p3_outcome: outcome(self.announcements.p3),
            reconstructed_bits: match &self.reconstructed {
                RoundResult::Bits(b) => b.to_string(),
                RoundResult::Aborted(_) => "aborted".into(),
            },
            consistent: self.is_consistent(),
            rng_seed: self.rng_seed,
        }
    }
}

/// Flat, line-delimited wire form of a round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    pub record: String,
    pub round_index: usize,
    pub dealer_op: String,
    pub operated_qubit: u8,
    pub p1_outcome: String,
    pub p2_outcome: String,
    pub p3_outcome: String,
    pub reconstructed_bits: String,
    pub consistent: bool,
    pub rng_seed: u64,
}

impl RoundPlan {
    /// State handed to the participants: the dealer's preparation followed
    /// by the forgery, if any.
    pub fn prepared_state(&self) -> Result<StateVector> {
        let state = dealer_prepare(self.true_op, self.actual_initial);
        match self.forgery {
            Some((qubit, gate)) => state.apply_single(gate, qubit),
            None => Ok(state),
        }
    }

    /// Public announcements given what was measured on (1,4), (2,6), (3,5).
    pub fn announce(&self, measured: [BellLabel; 3]) -> RoundAnnouncements {
        let [m1, m2, m3] = measured;
        let announced_p1 = self.p1_substitution.map_or(m1, |s| s.apply(m1));
        let keep = |party: Party, label: BellLabel| (self.withheld != Some(party)).then_some(label);
        RoundAnnouncements {
            initial: self.announced_initial,
            operated_qubit: self.announced_qubit,
            p1: keep(Party::P1, announced_p1),
            p2: keep(Party::P2, m2),
            p3: keep(Party::P3, m3),
        }
    }
}

/// Simulates the quantum part of a round and assembles the announcements.
pub fn simulate_round<R: Rng + ?Sized>(plan: &RoundPlan, rng: &mut R) -> Result<([BellLabel; 3], RoundAnnouncements)> {
    let state = plan.prepared_state()?;
    let (m1, state) = state.sample_bell(P1_PAIR.0, P1_PAIR.1, rng)?;
    let (m2, state) = state.sample_bell(P2_PAIR.0, P2_PAIR.1, rng)?;
    let (m3, _) = state.sample_bell(P3_PAIR.0, P3_PAIR.1, rng)?;
    let measured = [m1, m2, m3];
    Ok((measured, plan.announce(measured)))
}

/// Runs a planned round; reconstruction failures are recorded, not raised.
pub fn execute_round(plan: &RoundPlan, round_index: usize, rng_seed: u64) -> Result<RoundTranscript> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let (measured, announcements) = simulate_round(plan, &mut rng)?;
    let reconstructed = match reconstruct(&announcements) {
        Ok(bits) => RoundResult::Bits(bits),
        Err(e) => RoundResult::Aborted(e.to_string()),
    };
    Ok(RoundTranscript {
        round_index,
        true_op: plan.true_op,
        measured,
        announcements,
        reconstructed,
        rng_seed,
    })
}

/// One honest round sharing `bits` through the chosen qubit.
pub fn run_round(bits: TwoBits, qubit: OperatedQubit, rng_seed: u64) -> Result<RoundTranscript> {
    let transcript = execute_round(&RoundPlan::honest(bits_to_op(bits, qubit)), 0, rng_seed)?;
    match &transcript.reconstructed {
        RoundResult::Bits(b) if *b == bits => Ok(transcript),
        RoundResult::Bits(b) => Err(Error::ReconstructionFailed(format!(
            "honest round reconstructed {b}, dealer shared {bits}"
        ))),
        RoundResult::Aborted(reason) => Err(Error::ReconstructionFailed(reason.clone())),
    }
}

/// Intermediate results of the algebraic reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReconstructionTrace {
    /// State of (2,3) before P2 and P3 measured.
    pub pair23: BellLabel,
    /// Inferred state of the pair holding the operated qubit: (1,2) for
    /// qubit 1, (3,4) for qubit 4.
    pub touched_pair: BellLabel,
    pub share_op: ShareOp,
}

/// Algebraic reconstruction, keeping the intermediate labels.
///
/// 1. Rebase P2's (2,6) and P3's (3,5) outcomes onto (2,3),(5,6) and keep
///    the term whose (5,6) label is the announced one.
/// 2. Rebase P1's (1,4) outcome with that (2,3) label onto (1,2),(3,4) and
///    keep the term whose untouched pair matches the announcement.
/// 3. The Pauli that maps the announced touched-pair label onto the
///    inferred one is the dealer's operator.
pub fn reconstruct_trace(a: &RoundAnnouncements) -> Result<ReconstructionTrace> {
    let (Some(p2), Some(p3)) = (a.p2, a.p3) else {
        return Err(Error::Ambiguous("P2 or P3 withheld its outcome".into()));
    };
    let swapped = rebase(p2, P2_PAIR, p3, P3_PAIR, ((2, 3), (5, 6)))?;
    let pair23 = swapped
        .term_with_second(a.initial.pair56)
        .ok_or_else(|| Error::ReconstructionFailed("no term matches the announced (5,6) state".into()))?
        .labels
        .0;

    let Some(p1) = a.p1 else {
        return Err(Error::Ambiguous("P1 withheld its outcome".into()));
    };
    let regrouped = rebase(p1, P1_PAIR, pair23, (2, 3), ((1, 2), (3, 4)))?;
    let (touched_pair, announced, side) = match a.operated_qubit {
        OperatedQubit::One => {
            let term = regrouped
                .term_with_second(a.initial.pair34)
                .ok_or_else(|| Error::ReconstructionFailed("no term matches the announced (3,4) state".into()))?;
            (term.labels.0, a.initial.pair12, PairSide::First)
        }
        OperatedQubit::Four => {
            let term = regrouped
                .term_with_first(a.initial.pair12)
                .ok_or_else(|| Error::ReconstructionFailed("no term matches the announced (1,2) state".into()))?;
            (term.labels.1, a.initial.pair34, PairSide::Second)
        }
    };
    let op = Pauli::ALL
        .into_iter()
        .find(|&op| announced.apply_pauli(op, side).1 == touched_pair)
        .ok_or_else(|| Error::ReconstructionFailed("no Pauli links the announced and inferred states".into()))?;
    Ok(ReconstructionTrace {
        pair23,
        touched_pair,
        share_op: ShareOp::new(op, a.operated_qubit),
    })
}

pub fn reconstruct_op(a: &RoundAnnouncements) -> Result<ShareOp> {
    reconstruct_trace(a).map(|t| t.share_op)
}

/// Recovers the two secret bits from the public announcements.
pub fn reconstruct(a: &RoundAnnouncements) -> Result<TwoBits> {
    reconstruct_op(a).map(op_to_bits)
}

/// Brute-force check of the algebraic path: every operator on the announced
/// qubit under which the announced outcomes have nonzero probability.
/// Withheld outcomes are marginalized out.
pub fn reconstruct_oracle(a: &RoundAnnouncements) -> BTreeSet<ShareOp> {
    let present: Vec<(Pair, BellLabel)> = Party::ALL
        .into_iter()
        .filter_map(|p| a.outcome(p).map(|l| (p.pair(), l)))
        .collect();
    let pairs: Vec<Pair> = present.iter().map(|(p, _)| *p).collect();
    let labels: Vec<BellLabel> = present.iter().map(|(_, l)| *l).collect();
    Pauli::ALL
        .into_iter()
        .map(|op| ShareOp::new(op, a.operated_qubit))
        .filter(|&share| {
            let state = dealer_prepare(share, a.initial);
            let dist = state
                .joint_distribution(&pairs)
                .expect("participant pairs are disjoint");
            dist.get(&labels).copied().unwrap_or(0.0) > ZERO_PROB
        })
        .collect()
}

/// Independent per-index seed derived from a base seed.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(index);
    rng.next_u64()
}

/// A whole secret shared round by round.
#[derive(Debug, Clone, PartialEq)]
pub struct SecretSession {
    /// The secret after padding to even length.
    pub secret: BitString,
    pub seed: u64,
    pub rounds: Vec<RoundTranscript>,
}

impl SecretSession {
    /// Concatenated reconstructed bits, `None` if any round aborted.
    pub fn reconstructed(&self) -> Option<BitString> {
        self.rounds
            .iter()
            .map(|r| r.reconstructed.bits())
            .collect::<Option<Vec<_>>>()
            .map(|chunks| BitString::from_chunks(&chunks))
    }

    pub fn is_consistent(&self) -> bool {
        self.reconstructed().as_ref() == Some(&self.secret)
    }
}

/// Shares `secret` honestly, two bits per round.
pub fn share_secret(secret: &BitString, policy: QubitPolicy, seed: u64) -> Result<SecretSession> {
    share_secret_with(secret, policy, seed, |_, plan| plan)
}

/// Like [`share_secret`], with a hook that may alter each round's plan
/// before it runs.
pub fn share_secret_with<F>(secret: &BitString, policy: QubitPolicy, seed: u64, mut adjust: F) -> Result<SecretSession>
where
    F: FnMut(usize, RoundPlan) -> RoundPlan,
{
    if secret.is_empty() {
        return Err(Error::EmptySecret);
    }
    let padded = secret.padded_to_even();
    let mut session_rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rounds = Vec::with_capacity(padded.len() / 2);
    for (index, bits) in padded.chunks().into_iter().enumerate() {
        let qubit = policy.choose(&mut session_rng);
        let round_seed = session_rng.next_u64();
        let plan = adjust(index, RoundPlan::honest(bits_to_op(bits, qubit)));
        rounds.push(execute_round(&plan, index, round_seed)?);
    }
    Ok(SecretSession {
        secret: padded,
        seed,
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use BellLabel::*;

    fn bits(s: &str) -> TwoBits {
        s.parse().unwrap()
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(
            bits_to_op(bits("10"), OperatedQubit::One),
            ShareOp::new(Pauli::Z, OperatedQubit::One)
        );
        assert_eq!(
            bits_to_op(bits("00"), OperatedQubit::One),
            ShareOp::new(Pauli::I, OperatedQubit::One)
        );
        assert_eq!(
            bits_to_op(bits("00"), OperatedQubit::Four),
            ShareOp::new(Pauli::IY, OperatedQubit::Four)
        );
        assert_eq!(op_to_bits(ShareOp::new(Pauli::Z, OperatedQubit::One)), bits("10"));
        assert_eq!(op_to_bits(ShareOp::new(Pauli::I, OperatedQubit::Four)), bits("11"));
    }

    #[test]
    fn encoding_is_bijective() {
        for q in OperatedQubit::BOTH {
            for b in TwoBits::ALL {
                assert_eq!(op_to_bits(bits_to_op(b, q)), b);
            }
            let images: BTreeSet<_> = Pauli::ALL.iter().map(|&op| op_to_bits(ShareOp::new(op, q))).collect();
            assert_eq!(images.len(), 4);
        }
    }

    #[test]
    fn malformed_bits() {
        for s in ["", "1", "012", "ab", "2 "] {
            assert!(s.parse::<TwoBits>().is_err(), "{s}");
        }
        assert!("10a".parse::<BitString>().is_err());
    }

    #[test]
    fn bitstring_helpers() {
        assert_eq!(BitString::from_decimal(55).to_string(), "00110111");
        assert_eq!(BitString::from_decimal(0).to_string(), "00000000");
        assert_eq!(BitString::from_decimal(256).to_string(), "0000000100000000");
        let s: BitString = "0".parse().unwrap();
        assert_eq!(s.padded_to_even().to_string(), "00");
        let s: BitString = "101".parse().unwrap();
        assert_eq!(s.padded_to_even().to_string(), "0101");
        assert_eq!(BitString::from_value(3, 2).to_string(), "11");
    }

    #[test]
    fn dealer_prepare_examples() {
        let x1 = dealer_prepare(ShareOp::new(Pauli::X, OperatedQubit::One), BellTriple::ALPHA_PLUS);
        let expected = epr_triple(BetaPlus, AlphaPlus, AlphaPlus);
        assert!((x1.fidelity_up_to_phase(&expected).unwrap() - 1.0).abs() < 1e-12);
        let i1 = dealer_prepare(ShareOp::new(Pauli::I, OperatedQubit::One), BellTriple::ALPHA_PLUS);
        assert_eq!(i1, BellTriple::ALPHA_PLUS.state());
    }

    #[test]
    fn worked_reconstruction_example() {
        let a = RoundAnnouncements {
            initial: BellTriple::ALPHA_PLUS,
            operated_qubit: OperatedQubit::One,
            p1: Some(AlphaPlus),
            p2: Some(BetaMinus),
            p3: Some(BetaPlus),
        };
        let trace = reconstruct_trace(&a).unwrap();
        assert_eq!(trace.pair23, AlphaMinus);
        assert_eq!(trace.touched_pair, AlphaMinus);
        assert_eq!(trace.share_op.op, Pauli::Z);
        assert_eq!(reconstruct(&a).unwrap(), bits("10"));
        assert_eq!(
            reconstruct_oracle(&a),
            BTreeSet::from([ShareOp::new(Pauli::Z, OperatedQubit::One)])
        );
    }

    #[test]
    fn withheld_outcomes() {
        let mut a = RoundAnnouncements {
            initial: BellTriple::ALPHA_PLUS,
            operated_qubit: OperatedQubit::One,
            p1: Some(AlphaPlus),
            p2: None,
            p3: Some(BetaPlus),
        };
        assert!(matches!(reconstruct(&a), Err(Error::Ambiguous(_))));
        assert_eq!(reconstruct_oracle(&a).len(), 4);
        a.p2 = Some(BetaMinus);
        a.p1 = None;
        assert!(matches!(reconstruct(&a), Err(Error::Ambiguous(_))));
    }

    #[test]
    fn run_round_examples() {
        for seed in 0..20 {
            let t = run_round(bits("10"), OperatedQubit::One, seed).unwrap();
            assert_eq!(t.reconstructed, RoundResult::Bits(bits("10")));
            let t = run_round(bits("00"), OperatedQubit::One, seed).unwrap();
            assert_eq!(t.reconstructed, RoundResult::Bits(bits("00")));
        }
    }

    #[test]
    fn share_secret_running_example() {
        let s = share_secret(&"00110111".parse().unwrap(), QubitPolicy::AlwaysOne, 7).unwrap();
        let ops: Vec<Pauli> = s.rounds.iter().map(|r| r.true_op.op).collect();
        assert_eq!(ops, vec![Pauli::I, Pauli::IY, Pauli::X, Pauli::IY]);
        assert!(s.is_consistent());
    }

    #[test]
    fn share_secret_pads_and_rejects_empty() {
        for policy in QubitPolicy::ALL {
            let s = share_secret(&"0".parse().unwrap(), policy, 1).unwrap();
            assert_eq!(s.rounds.len(), 1);
            assert_eq!(s.secret.to_string(), "00");
            let op = s.rounds[0].true_op.op;
            assert!(op == Pauli::I || op == Pauli::IY);
        }
        assert_eq!(
            share_secret(&BitString::default(), QubitPolicy::AlwaysOne, 1),
            Err(Error::EmptySecret)
        );
    }

    #[test]
    fn record_serialization() {
        let t = run_round(bits("10"), OperatedQubit::One, 5).unwrap();
        let json = serde_json::to_string(&t.record()).unwrap();
        let back: TranscriptRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t.record());
        assert!(json.contains("\"dealer_op\":\"Z\""));
        assert!(json.contains("\"operated_qubit\":1"));
        assert!(json.contains("\"reconstructed_bits\":\"10\""));
    }

    #[test]
    fn derive_seed_is_stable_and_spread() {
        assert_eq!(derive_seed(9, 3), derive_seed(9, 3));
        assert_ne!(derive_seed(9, 3), derive_seed(9, 4));
        assert_ne!(derive_seed(9, 3), derive_seed(10, 3));
    }
}
