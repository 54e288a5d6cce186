//! Dense statevector engine.
//!
//! Qubits carry 1-based labels. Label 1 is the most significant bit of the
//! basis index, so for a three-qubit register the basis state `|q1 q2 q3>`
//! lives at index `4*q1 + 2*q2 + q3`. Every module in the crate relies on
//! this convention.
//!
//! All operations are pure: they take a state by reference and return a new
//! one. Bell-basis measurements project the measured pair in place, the
//! measured qubits stay in the register.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::bellalg::BellLabel;
use crate::error::{Error, Result};

/// Largest register the engine will allocate.
pub const MAX_QUBITS: usize = 14;

/// Tolerance for norms, Hermiticity and trace checks.
pub const NORM_TOL: f64 = 1e-10;

/// Probabilities below this are treated as zero.
pub const ZERO_PROB: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Single-qubit gates used by the protocol and the image circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    Identity,
    X,
    /// `iY`, the real matrix `[[0, 1], [-1, 0]]`.
    IY,
    Z,
    Hadamard,
}

impl Gate {
    pub const ALL: [Gate; 5] = [Gate::Identity, Gate::X, Gate::IY, Gate::Z, Gate::Hadamard];

    /// Row-major 2x2 matrix.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let r = |x: f64| Complex64::new(x, 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Gate::Identity => [[ONE, ZERO], [ZERO, ONE]],
            Gate::X => [[ZERO, ONE], [ONE, ZERO]],
            Gate::IY => [[ZERO, ONE], [r(-1.0), ZERO]],
            Gate::Z => [[ONE, ZERO], [ZERO, r(-1.0)]],
            Gate::Hadamard => [[r(h), r(h)], [r(h), r(-h)]],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gate::Identity => "I",
            Gate::X => "X",
            Gate::IY => "iY",
            Gate::Z => "Z",
            Gate::Hadamard => "H",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" | "id" => Ok(Gate::Identity),
            "X" | "x" => Ok(Gate::X),
            "iY" | "iy" | "IY" => Ok(Gate::IY),
            "Z" | "z" => Ok(Gate::Z),
            "H" | "h" => Ok(Gate::Hadamard),
            other => Err(Error::MalformedBits(other.to_string())),
        }
    }
}

/// Normalized amplitudes of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        check_size(num_qubits)?;
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[0] = ONE;
        Ok(StateVector { num_qubits, amplitudes })
    }

    /// Wraps an explicit amplitude vector. The length must be a power of two
    /// and the norm must be 1 within [`NORM_TOL`].
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_size(num_qubits)?;
        let state = StateVector { num_qubits, amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Real amplitudes, normalized on the way in.
    pub fn from_real_unnormalized(values: &[f64]) -> Result<Self> {
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < ZERO_PROB {
            return Err(Error::NotNormalized(norm));
        }
        Self::from_amplitudes(values.iter().map(|v| Complex64::new(v / norm, 0.0)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Bit mask of a label inside the basis index.
    fn mask(&self, label: usize) -> Result<usize> {
        if label == 0 || label > self.num_qubits {
            return Err(Error::InvalidQubit {
                label,
                num_qubits: self.num_qubits,
            });
        }
        Ok(1 << (self.num_qubits - label))
    }

    /// Tensor product `self ⊗ other`; the qubits of `other` are relabelled
    /// to follow those of `self`.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        check_size(self.num_qubits + other.num_qubits)?;
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        })
    }

    pub fn apply_single(&self, gate: Gate, qubit: usize) -> Result<StateVector> {
        let mask = self.mask(qubit)?;
        let m = gate.matrix();
        let mut out = self.amplitudes.clone();
        for i in (0..out.len()).filter(|i| i & mask == 0) {
            let a0 = self.amplitudes[i];
            let a1 = self.amplitudes[i | mask];
            out[i] = m[0][0] * a0 + m[0][1] * a1;
            out[i | mask] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        })
    }

    pub fn apply_cnot(&self, control: usize, target: usize) -> Result<StateVector> {
        self.apply_controlled_x(&[(control, true)], target)
    }

    /// Flips `target` on every basis state whose control qubits hold the
    /// requested values. An empty control list is a plain X.
    pub fn apply_controlled_x(&self, controls: &[(usize, bool)], target: usize) -> Result<StateVector> {
        let target_mask = self.mask(target)?;
        let mut seen = vec![target];
        let mut care = 0usize;
        let mut want = 0usize;
        for &(label, value) in controls {
            if seen.contains(&label) {
                return Err(Error::QubitCollision(label));
            }
            seen.push(label);
            let m = self.mask(label)?;
            care |= m;
            if value {
                want |= m;
            }
        }
        let mut out = self.amplitudes.clone();
        for i in (0..out.len()).filter(|i| i & target_mask == 0 && i & care == want) {
            out.swap(i, i | target_mask);
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        })
    }

    fn pair_masks(&self, a: usize, b: usize) -> Result<(usize, usize)> {
        if a == b {
            return Err(Error::QubitCollision(a));
        }
        Ok((self.mask(a)?, self.mask(b)?))
    }

    /// Unnormalized projection of `(a, b)` onto a Bell state, plus its
    /// squared norm.
    fn project_raw(&self, a: usize, b: usize, outcome: BellLabel) -> Result<(f64, Vec<Complex64>)> {
        let (ma, mb) = self.pair_masks(a, b)?;
        let v = outcome.amplitudes();
        let mut out = vec![ZERO; self.amplitudes.len()];
        let mut prob = 0.0;
        for base in (0..out.len()).filter(|i| i & (ma | mb) == 0) {
            // Index k = 2*bit_a + bit_b, matching the Bell vector layout.
            let idx = [base, base | mb, base | ma, base | ma | mb];
            let overlap: Complex64 = idx.iter().zip(v.iter()).map(|(&i, &c)| self.amplitudes[i] * c).sum();
            prob += overlap.norm_sqr();
            for (&i, &c) in idx.iter().zip(v.iter()) {
                out[i] = overlap * c;
            }
        }
        Ok((prob, out))
    }

    /// Projects qubits `(a, b)` onto the Bell state `outcome`.
    ///
    /// Returns the outcome probability and the renormalized post-measurement
    /// state. An outcome with probability below [`ZERO_PROB`] is an error.
    pub fn project_bell(&self, a: usize, b: usize, outcome: BellLabel) -> Result<(f64, StateVector)> {
        let (prob, mut out) = self.project_raw(a, b, outcome)?;
        if prob < ZERO_PROB {
            return Err(Error::ZeroProbabilityOutcome(prob));
        }
        let scale = 1.0 / prob.sqrt();
        out.iter_mut().for_each(|x| *x *= scale);
        Ok((
            prob,
            StateVector {
                num_qubits: self.num_qubits,
                amplitudes: out,
            },
        ))
    }

    /// Outcome probabilities of a Bell measurement on `(a, b)`, in
    /// [`BellLabel::ALL`] order.
    pub fn bell_probabilities(&self, a: usize, b: usize) -> Result<[f64; 4]> {
        let mut probs = [0.0; 4];
        for (p, label) in probs.iter_mut().zip(BellLabel::ALL) {
            *p = self.project_raw(a, b, label)?.0;
        }
        Ok(probs)
    }

    /// Samples a Bell measurement on `(a, b)`.
    pub fn sample_bell<R: Rng + ?Sized>(&self, a: usize, b: usize, rng: &mut R) -> Result<(BellLabel, StateVector)> {
        let probs = self.bell_probabilities(a, b)?;
        let draw: f64 = rng.random::<f64>() * probs.iter().sum::<f64>();
        let mut acc = 0.0;
        let mut chosen = None;
        for (label, p) in BellLabel::ALL.into_iter().zip(probs) {
            if p < ZERO_PROB {
                continue;
            }
            acc += p;
            chosen = Some(label);
            if draw < acc {
                break;
            }
        }
        let label = chosen.expect("Bell probabilities sum to one");
        let (_, post) = self.project_bell(a, b, label)?;
        Ok((label, post))
    }

    /// Joint outcome distribution of sequential Bell measurements on
    /// disjoint pairs. Outcomes with zero probability are omitted.
    pub fn joint_distribution(&self, pairs: &[(usize, usize)]) -> Result<BTreeMap<Vec<BellLabel>, f64>> {
        let mut used = Vec::new();
        for &(a, b) in pairs {
            self.pair_masks(a, b)?;
            for q in [a, b] {
                if used.contains(&q) {
                    return Err(Error::OverlappingPairs(q));
                }
                used.push(q);
            }
        }
        let mut out = BTreeMap::new();
        let mut prefix = Vec::with_capacity(pairs.len());
        self.joint_rec(pairs, 1.0, &mut prefix, &mut out)?;
        Ok(out)
    }

    fn joint_rec(
        &self,
        pairs: &[(usize, usize)],
        weight: f64,
        prefix: &mut Vec<BellLabel>,
        out: &mut BTreeMap<Vec<BellLabel>, f64>,
    ) -> Result<()> {
        let Some((&(a, b), rest)) = pairs.split_first() else {
            out.insert(prefix.clone(), weight);
            return Ok(());
        };
        for label in BellLabel::ALL {
            let (p, _) = self.project_raw(a, b, label)?;
            if p < ZERO_PROB {
                continue;
            }
            let (_, post) = self.project_bell(a, b, label)?;
            prefix.push(label);
            post.joint_rec(rest, weight * p, prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }

    /// Partial trace over every qubit not in `keep`. Rows and columns follow
    /// the kept labels in ascending order.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        for w in kept.windows(2) {
            if w[0] == w[1] {
                return Err(Error::QubitCollision(w[0]));
            }
        }
        let kept_masks = kept.iter().map(|&q| self.mask(q)).collect::<Result<Vec<_>>>()?;
        let traced_masks: Vec<usize> = (1..=self.num_qubits)
            .filter(|q| !kept.contains(q))
            .map(|q| 1 << (self.num_qubits - q))
            .collect();

        let dim = 1 << kept.len();
        let env = 1 << traced_masks.len();
        let compose = |kept_idx: usize, env_idx: usize| -> usize {
            let mut i = 0;
            for (pos, m) in kept_masks.iter().enumerate() {
                if kept_idx >> (kept_masks.len() - 1 - pos) & 1 == 1 {
                    i |= m;
                }
            }
            for (pos, m) in traced_masks.iter().enumerate() {
                if env_idx >> (traced_masks.len() - 1 - pos) & 1 == 1 {
                    i |= m;
                }
            }
            i
        };
        let mut entries = vec![ZERO; dim * dim];
        for e in 0..env {
            let column: Vec<Complex64> = (0..dim).map(|k| self.amplitudes[compose(k, e)]).collect();
            for r in 0..dim {
                if column[r] == ZERO {
                    continue;
                }
                for c in 0..dim {
                    entries[r * dim + c] += column[r] * column[c].conj();
                }
            }
        }
        Ok(DensityMatrix { dim, entries })
    }

    /// `|<self|other>|`, insensitive to global phase.
    pub fn fidelity_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch(self.amplitudes.len(), other.amplitudes.len()));
        }
        Ok(self.inner(other).norm().min(1.0))
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Probability of each computational basis state of the listed qubits,
    /// indexed with the first listed qubit as most significant bit.
    pub fn computational_marginal(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        let masks = qubits.iter().map(|&q| self.mask(q)).collect::<Result<Vec<_>>>()?;
        let mut probs = vec![0.0; 1 << qubits.len()];
        for (i, amp) in self.amplitudes.iter().enumerate() {
            let k = masks.iter().fold(0, |acc, m| (acc << 1) | usize::from(i & m != 0));
            probs[k] += amp.norm_sqr();
        }
        Ok(probs)
    }
}

fn check_size(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::QubitCount(num_qubits));
    }
    Ok(())
}

/// `|0...0>` on `num_qubits` qubits.
pub fn zero_state(num_qubits: usize) -> Result<StateVector> {
    StateVector::zero(num_qubits)
}

/// Reduced density matrix over a power-of-two dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Row-major entries; `dim` must be a power of two.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        Ok(DensityMatrix { dim, entries })
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Self::from_entries(dim, entries)
    }

    /// `|ψ><ψ|`.
    pub fn pure(state: &StateVector) -> Self {
        let dim = state.amplitudes.len();
        let mut entries = vec![ZERO; dim * dim];
        for (r, a) in state.amplitudes.iter().enumerate() {
            for (c, b) in state.amplitudes.iter().enumerate() {
                entries[r * dim + c] = a * b.conj();
            }
        }
        DensityMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        let mut acc = ZERO;
        for r in 0..self.dim {
            for c in 0..self.dim {
                acc += self.get(r, c) * self.get(c, r);
            }
        }
        acc.re
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| (self.get(r, c) - self.get(c, r).conj()).norm() <= tol))
    }

    /// Largest entrywise deviation from another matrix of the same size.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// `Tr(ρ²)`.
pub fn purity(dm: &DensityMatrix) -> f64 {
    dm.purity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn basis(n: usize, index: usize) -> StateVector {
        let mut v = vec![0.0; 1 << n];
        v[index] = 1.0;
        StateVector::from_real_unnormalized(&v).unwrap()
    }

    #[test]
    fn zero_state_layout() {
        let s = zero_state(1).unwrap();
        assert_eq!(s.amplitudes(), &[ONE, ZERO]);
        let s = zero_state(2).unwrap();
        assert_eq!(s.amplitudes(), &[ONE, ZERO, ZERO, ZERO]);
        assert_abs_diff_eq!(zero_state(6).unwrap().norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_state_size_limits() {
        assert_eq!(zero_state(0), Err(Error::QubitCount(0)));
        assert_eq!(zero_state(15), Err(Error::QubitCount(15)));
        assert!(zero_state(14).is_ok());
    }

    #[test]
    fn x_flips_the_most_significant_label() {
        let s = zero_state(1).unwrap().apply_single(Gate::X, 1).unwrap();
        assert_eq!(s.amplitudes(), &[ZERO, ONE]);
        let s = zero_state(3).unwrap().apply_single(Gate::X, 1).unwrap();
        assert_eq!(s, basis(3, 0b100));
    }

    #[test]
    fn invalid_labels_are_rejected() {
        let s = zero_state(2).unwrap();
        assert!(matches!(s.apply_single(Gate::X, 0), Err(Error::InvalidQubit { .. })));
        assert!(matches!(s.apply_single(Gate::X, 3), Err(Error::InvalidQubit { .. })));
        assert_eq!(s.apply_cnot(1, 1), Err(Error::QubitCollision(1)));
        assert!(matches!(s.apply_cnot(1, 5), Err(Error::InvalidQubit { .. })));
    }

    #[test]
    fn gates_are_unitary() {
        for g in Gate::ALL {
            let m = g.matrix();
            for r in 0..2 {
                for c in 0..2 {
                    let dot: Complex64 = (0..2).map(|k| m[k][r].conj() * m[k][c]).sum();
                    let expect = if r == c { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(dot.re, expect, epsilon = 1e-12);
                    assert_abs_diff_eq!(dot.im, 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn cnot_definition_and_bell_construction() {
        let s = basis(2, 0b10).apply_cnot(1, 2).unwrap();
        assert_eq!(s, basis(2, 0b11));
        let epr = zero_state(2)
            .unwrap()
            .apply_single(Gate::Hadamard, 1)
            .unwrap()
            .apply_cnot(1, 2)
            .unwrap();
        let alpha = BellLabel::AlphaPlus.state();
        assert_abs_diff_eq!(epr.fidelity_up_to_phase(&alpha).unwrap(), 1.0, epsilon = 1e-12);
        let twice = epr.apply_cnot(1, 2).unwrap().apply_cnot(1, 2).unwrap();
        assert_abs_diff_eq!(twice.fidelity_up_to_phase(&epr).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn controlled_x_on_zero_control() {
        let s = zero_state(3)
            .unwrap()
            .apply_controlled_x(&[(1, false), (2, false)], 3)
            .unwrap();
        assert_eq!(s, basis(3, 0b001));
        let s = zero_state(3).unwrap().apply_controlled_x(&[(1, true)], 3).unwrap();
        assert_eq!(s, basis(3, 0));
    }

    #[test]
    fn projecting_an_eigenpair() {
        let s = BellLabel::AlphaPlus.state();
        let (p, post) = s.project_bell(1, 2, BellLabel::AlphaPlus).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(post.fidelity_up_to_phase(&s).unwrap(), 1.0, epsilon = 1e-12);
        assert!(matches!(
            s.project_bell(1, 2, BellLabel::BetaMinus),
            Err(Error::ZeroProbabilityOutcome(_))
        ));
    }

    #[test]
    fn sampling_an_eigenpair_is_deterministic() {
        let s = BellLabel::AlphaPlus.state();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert_eq!(s.sample_bell(1, 2, &mut rng).unwrap().0, BellLabel::AlphaPlus);
        }
    }

    #[test]
    fn fidelity_ignores_global_phase() {
        let s = BellLabel::BetaPlus.state();
        let neg = StateVector::from_amplitudes(s.amplitudes().iter().map(|a| -a).collect()).unwrap();
        assert_abs_diff_eq!(s.fidelity_up_to_phase(&s).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.fidelity_up_to_phase(&neg).unwrap(), 1.0, epsilon = 1e-12);
        let a = BellLabel::AlphaPlus.state();
        let b = BellLabel::AlphaMinus.state();
        assert_abs_diff_eq!(a.fidelity_up_to_phase(&b).unwrap(), 0.0, epsilon = 1e-12);
        assert_eq!(
            a.fidelity_up_to_phase(&zero_state(3).unwrap()),
            Err(Error::DimensionMismatch(4, 8))
        );
    }

    #[test]
    fn purity_reference_values() {
        let pure = DensityMatrix::pure(&BellLabel::AlphaPlus.state());
        assert_abs_diff_eq!(pure.purity(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            DensityMatrix::maximally_mixed(4).unwrap().purity(),
            0.25,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            DensityMatrix::maximally_mixed(2).unwrap().purity(),
            0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn reduced_density_keep_all_is_projector() {
        let s = BellLabel::BetaMinus.state();
        let rho = s.reduced_density(&[2, 1]).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::pure(&s)).unwrap() < 1e-12);
        assert_eq!(s.reduced_density(&[]), Err(Error::EmptyKeepSet));
    }

    #[test]
    fn reduced_density_of_half_a_bell_pair() {
        let rho = BellLabel::AlphaMinus.state().reduced_density(&[2]).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed(2).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn reduced_density_orders_by_label() {
        // |0>_1 |1>_2 |0>_3: keeping {3, 2} must read |1 0> as index 0b10.
        let s = basis(3, 0b010);
        let rho = s.reduced_density(&[3, 2]).unwrap();
        assert_abs_diff_eq!(rho.get(0b10, 0b10).re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn joint_distribution_rejects_overlap() {
        let s = zero_state(4).unwrap();
        assert_eq!(s.joint_distribution(&[(1, 2), (2, 3)]), Err(Error::OverlappingPairs(2)));
    }

    #[test]
    fn computational_marginal_order() {
        let s = basis(3, 0b100);
        assert_eq!(s.computational_marginal(&[3, 1]).unwrap(), vec![0.0, 1.0, 0.0, 0.0]);
    }
}
