//! Bell states, the three-pair initial state, and the algebra of
//! re-expressing a product of two Bell pairs over a different pairing of the
//! same four qubits (entanglement swapping).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::{Gate, StateVector, NORM_TOL};

/// An ordered pair of qubit labels. Orientation matters for the
/// antisymmetric `β-` state.
pub type Pair = (usize, usize);

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BellLabel {
    /// `(|00> + |11>)/√2`
    #[serde(rename = "alpha+")]
    AlphaPlus,
    /// `(|00> - |11>)/√2`
    #[serde(rename = "alpha-")]
    AlphaMinus,
    /// `(|01> + |10>)/√2`
    #[serde(rename = "beta+")]
    BetaPlus,
    /// `(|01> - |10>)/√2`
    #[serde(rename = "beta-")]
    BetaMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::AlphaPlus,
        BellLabel::AlphaMinus,
        BellLabel::BetaPlus,
        BellLabel::BetaMinus,
    ];

    /// Amplitudes over `|00>, |01>, |10>, |11>` (first qubit most significant).
    pub fn amplitudes(self) -> [Complex64; 4] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = match self {
            BellLabel::AlphaPlus => [h, 0.0, 0.0, h],
            BellLabel::AlphaMinus => [h, 0.0, 0.0, -h],
            BellLabel::BetaPlus => [0.0, h, h, 0.0],
            BellLabel::BetaMinus => [0.0, h, -h, 0.0],
        };
        v.map(|x| Complex64::new(x, 0.0))
    }

    /// The two-qubit state.
    pub fn state(self) -> StateVector {
        bell_pair(self)
    }

    pub fn name(self) -> &'static str {
        match self {
            BellLabel::AlphaPlus => "alpha+",
            BellLabel::AlphaMinus => "alpha-",
            BellLabel::BetaPlus => "beta+",
            BellLabel::BetaMinus => "beta-",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BellLabel::AlphaPlus => "α+",
            BellLabel::AlphaMinus => "α−",
            BellLabel::BetaPlus => "β+",
            BellLabel::BetaMinus => "β−",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Applies a Pauli to one qubit of the pair and returns the resulting
    /// Bell state together with the sign picked up.
    pub fn apply_pauli(self, pauli: Pauli, side: PairSide) -> (i8, BellLabel) {
        let table = pauli_action_table();
        table[self.index()][pauli.index()][side as usize]
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha+" | "a+" | "α+" => Ok(BellLabel::AlphaPlus),
            "alpha-" | "a-" | "α-" | "α−" => Ok(BellLabel::AlphaMinus),
            "beta+" | "b+" | "β+" => Ok(BellLabel::BetaPlus),
            "beta-" | "b-" | "β-" | "β−" => Ok(BellLabel::BetaMinus),
            other => Err(Error::MalformedBits(other.to_string())),
        }
    }
}

/// Which qubit of a Bell pair an operator touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSide {
    First = 0,
    Second = 1,
}

/// The dealer's operator alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    #[serde(rename = "iY")]
    IY,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::IY, Pauli::Z];

    pub fn gate(self) -> Gate {
        match self {
            Pauli::I => Gate::Identity,
            Pauli::X => Gate::X,
            Pauli::IY => Gate::IY,
            Pauli::Z => Gate::Z,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        self.gate().name()
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Gate>()? {
            Gate::Identity => Ok(Pauli::I),
            Gate::X => Ok(Pauli::X),
            Gate::IY => Ok(Pauli::IY),
            Gate::Z => Ok(Pauli::Z),
            Gate::Hadamard => Err(Error::MalformedBits(s.to_string())),
        }
    }
}

/// The qubit the dealer operates on: qubit 1 of pair (1,2) or qubit 4 of
/// pair (3,4). Both belong to the first participant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatedQubit {
    One,
    Four,
}

impl OperatedQubit {
    pub const BOTH: [OperatedQubit; 2] = [OperatedQubit::One, OperatedQubit::Four];

    pub fn label(self) -> usize {
        match self {
            OperatedQubit::One => 1,
            OperatedQubit::Four => 4,
        }
    }

    pub fn from_label(label: usize) -> Result<Self> {
        match label {
            1 => Ok(OperatedQubit::One),
            4 => Ok(OperatedQubit::Four),
            other => Err(Error::InvalidQubit {
                label: other,
                num_qubits: 6,
            }),
        }
    }

    pub fn other(self) -> Self {
        match self {
            OperatedQubit::One => OperatedQubit::Four,
            OperatedQubit::Four => OperatedQubit::One,
        }
    }
}

impl fmt::Display for OperatedQubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The defining two-qubit state of a Bell label.
pub fn bell_pair(label: BellLabel) -> StateVector {
    StateVector::from_amplitudes(label.amplitudes().to_vec()).expect("Bell states are normalized")
}

/// Product of Bell states on pairs that together cover every qubit of an
/// `num_qubits`-register exactly once.
pub fn bell_product(num_qubits: usize, assignment: &[(Pair, BellLabel)]) -> Result<StateVector> {
    let mut seen = vec![false; num_qubits + 1];
    for &((a, b), _) in assignment {
        if a == b {
            return Err(Error::QubitCollision(a));
        }
        for q in [a, b] {
            if q == 0 || q > num_qubits {
                return Err(Error::InvalidQubit { label: q, num_qubits });
            }
            if seen[q] {
                return Err(Error::OverlappingPairs(q));
            }
            seen[q] = true;
        }
    }
    if seen[1..].iter().any(|s| !s) {
        return Err(Error::MismatchedQubitSets);
    }
    let bit = |i: usize, q: usize| (i >> (num_qubits - q)) & 1;
    let amplitudes = (0..1usize << num_qubits)
        .map(|i| {
            assignment
                .iter()
                .map(|&((a, b), label)| label.amplitudes()[2 * bit(i, a) + bit(i, b)])
                .product()
        })
        .collect();
    StateVector::from_amplitudes(amplitudes)
}

/// `l12` on (1,2), `l34` on (3,4), `l56` on (5,6).
pub fn epr_triple(l12: BellLabel, l34: BellLabel, l56: BellLabel) -> StateVector {
    bell_product(6, &[((1, 2), l12), ((3, 4), l34), ((5, 6), l56)]).expect("fixed pairing is valid")
}

/// Returns the Bell label of `(a, b)` when that pair is in a Bell
/// eigenstate, `None` otherwise.
pub fn identify_pair(state: &StateVector, a: usize, b: usize) -> Result<Option<BellLabel>> {
    let probs = state.bell_probabilities(a, b)?;
    Ok(BellLabel::ALL
        .into_iter()
        .zip(probs)
        .find(|(_, p)| (p - 1.0).abs() < NORM_TOL)
        .map(|(label, _)| label))
}

/// One term of a rebase expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RebaseTerm {
    pub coefficient: f64,
    pub labels: (BellLabel, BellLabel),
}

/// Expansion of a two-pair Bell product over another pairing of the same
/// four qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct RebaseExpansion {
    pub target: (Pair, Pair),
    pub terms: Vec<RebaseTerm>,
}

impl RebaseExpansion {
    pub fn terms(&self) -> &[RebaseTerm] {
        &self.terms
    }

    pub fn coefficient(&self, first: BellLabel, second: BellLabel) -> f64 {
        self.terms
            .iter()
            .find(|t| t.labels == (first, second))
            .map_or(0.0, |t| t.coefficient)
    }

    /// The unique term whose second-pair label is `label`.
    pub fn term_with_second(&self, label: BellLabel) -> Option<RebaseTerm> {
        unique(self.terms.iter().filter(|t| t.labels.1 == label))
    }

    /// The unique term whose first-pair label is `label`.
    pub fn term_with_first(&self, label: BellLabel) -> Option<RebaseTerm> {
        unique(self.terms.iter().filter(|t| t.labels.0 == label))
    }
}

fn unique<'a>(mut it: impl Iterator<Item = &'a RebaseTerm>) -> Option<RebaseTerm> {
    let first = it.next().copied();
    if it.next().is_some() {
        None
    } else {
        first
    }
}

const REBASE_GRID: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

/// Re-expresses `first` on `pair_a` times `second` on `pair_b` over the
/// pairing `target`.
///
/// Coefficients are computed as inner products against every target
/// product and snapped to `{0, ±1/2, ±1}`; a coefficient off that grid by
/// more than the norm tolerance is an error.
pub fn rebase(
    first: BellLabel,
    pair_a: Pair,
    second: BellLabel,
    pair_b: Pair,
    target: (Pair, Pair),
) -> Result<RebaseExpansion> {
    let mut source_qubits = vec![pair_a.0, pair_a.1, pair_b.0, pair_b.1];
    let mut target_qubits = vec![target.0 .0, target.0 .1, target.1 .0, target.1 .1];
    source_qubits.sort_unstable();
    target_qubits.sort_unstable();
    if let Some(w) = source_qubits.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::OverlappingPairs(w[0]));
    }
    if let Some(w) = target_qubits.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::OverlappingPairs(w[0]));
    }
    if source_qubits != target_qubits {
        return Err(Error::MismatchedQubitSets);
    }
    let local = |q: usize| source_qubits.iter().position(|&s| s == q).expect("checked above") + 1;
    let localize = |(a, b): Pair| (local(a), local(b));

    let source = bell_product(4, &[(localize(pair_a), first), (localize(pair_b), second)])?;
    let mut terms = Vec::new();
    for x in BellLabel::ALL {
        for y in BellLabel::ALL {
            let basis = bell_product(4, &[(localize(target.0), x), (localize(target.1), y)])?;
            let c = basis.inner(&source).re;
            let snapped = REBASE_GRID
                .into_iter()
                .min_by(|a, b| (a - c).abs().total_cmp(&(b - c).abs()))
                .expect("grid is non-empty");
            if (snapped - c).abs() > NORM_TOL {
                return Err(Error::RebaseSnap(c));
            }
            if snapped != 0.0 {
                terms.push(RebaseTerm {
                    coefficient: snapped,
                    labels: (x, y),
                });
            }
        }
    }
    Ok(RebaseExpansion { target, terms })
}

/// Indexed [label][pauli][side]: sign and resulting label.
type ActionTable = [[[(i8, BellLabel); 2]; 4]; 4];

fn pauli_action_table() -> &'static ActionTable {
    static TABLE: OnceLock<ActionTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [[[(1, BellLabel::AlphaPlus); 2]; 4]; 4];
        for label in BellLabel::ALL {
            for pauli in Pauli::ALL {
                for (side, qubit) in [(PairSide::First, 1), (PairSide::Second, 2)] {
                    let moved = label.state().apply_single(pauli.gate(), qubit).expect("valid label");
                    let (target, overlap) = BellLabel::ALL
                        .into_iter()
                        .map(|l| (l, l.state().inner(&moved).re))
                        .find(|(_, o)| (o.abs() - 1.0).abs() < NORM_TOL)
                        .expect("Paulis permute the Bell basis");
                    table[label.index()][pauli.index()][side as usize] = (if overlap > 0.0 { 1 } else { -1 }, target);
                }
            }
        }
        table
    })
}

/// A cell of the collapse table: the post-measurement state of pairs (2,3)
/// and (5,6) after the first participant's Bell outcome on (1,4), starting
/// from the all-`α+` triple. The sign is a global phase and carries no
/// physical meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollapseEntry {
    pub sign: i8,
    pub pair23: BellLabel,
    pub pair56: BellLabel,
}

const fn cell(sign: i8, pair23: BellLabel) -> CollapseEntry {
    CollapseEntry {
        sign,
        pair23,
        pair56: BellLabel::AlphaPlus,
    }
}

use BellLabel::{AlphaMinus as AM, AlphaPlus as AP, BetaMinus as BM, BetaPlus as BP};

/// Operated qubit 1, rows in [`Pauli::ALL`] order, columns in
/// [`BellLabel::ALL`] order. Hard-coded; checked against simulation in tests.
pub const COLLAPSE_TABLE_QUBIT_ONE: [[CollapseEntry; 4]; 4] = [
    [cell(1, AP), cell(1, AM), cell(1, BP), cell(1, BM)],
    [cell(1, BP), cell(-1, BM), cell(1, AP), cell(-1, AM)],
    [cell(1, BM), cell(-1, BP), cell(1, AM), cell(-1, AP)],
    [cell(1, AM), cell(1, AP), cell(1, BM), cell(1, BP)],
];

/// Simulates the collapse directly: prepare the all-`α+` triple, apply the
/// operator, project (1,4) on `outcome`, then read pairs (2,3) and (5,6).
/// Returns the outcome probability and the cell.
pub fn simulate_collapse(op: Pauli, qubit: OperatedQubit, outcome: BellLabel) -> Result<(f64, CollapseEntry)> {
    let prepared = epr_triple(AP, AP, AP).apply_single(op.gate(), qubit.label())?;
    let (prob, post) = prepared.project_bell(1, 4, outcome)?;
    let pair23 = identify_pair(&post, 2, 3)?
        .ok_or_else(|| Error::ReconstructionFailed("pair (2,3) is not a Bell state".into()))?;
    let pair56 = identify_pair(&post, 5, 6)?
        .ok_or_else(|| Error::ReconstructionFailed("pair (5,6) is not a Bell state".into()))?;
    let reference = bell_product(6, &[((1, 4), outcome), ((2, 3), pair23), ((5, 6), pair56)])?;
    let sign = if reference.inner(&post).re > 0.0 { 1 } else { -1 };
    Ok((prob, CollapseEntry { sign, pair23, pair56 }))
}

fn qubit_four_table() -> &'static [[CollapseEntry; 4]; 4] {
    static TABLE: OnceLock<[[CollapseEntry; 4]; 4]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [[cell(1, AP); 4]; 4];
        for op in Pauli::ALL {
            for outcome in BellLabel::ALL {
                table[op.index()][outcome.index()] = simulate_collapse(op, OperatedQubit::Four, outcome)
                    .expect("every outcome has probability 1/4")
                    .1;
            }
        }
        table
    })
}

/// Collapse table lookup. Qubit 1 uses the stored table; the qubit 4
/// table is generated by simulation on first use and cached.
pub fn collapse_table(op: Pauli, qubit: OperatedQubit, outcome: BellLabel) -> CollapseEntry {
    match qubit {
        OperatedQubit::One => COLLAPSE_TABLE_QUBIT_ONE[op.index()][outcome.index()],
        OperatedQubit::Four => qubit_four_table()[op.index()][outcome.index()],
    }
}
