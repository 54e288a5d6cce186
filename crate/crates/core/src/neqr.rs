//! NEQR image states and pixel-by-pixel image sharing.
//!
//! Register layout for a `2^n x 2^n` image: labels 1..=8 hold the intensity
//! (label 1 most significant), then `n` labels of row index `x`, then `n`
//! labels of column index `y`. The full quantum state is only materialized
//! for `n <= 2`; sharing works on classical bit strings at any size.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::protocol::{
    derive_seed, share_secret, share_secret_with, BitString, LabelSubstitution, QubitPolicy, RoundPlan,
    RoundTranscript, SecretSession,
};
use crate::qsim::{Gate, StateVector, NORM_TOL};

/// Bits of gray level.
pub const INTENSITY_QUBITS: usize = 8;
/// Largest `n` whose NEQR state fits the simulator.
pub const MAX_STATE_N: u32 = 2;
/// Largest `n` accepted by the classical pipeline.
pub const MAX_IMAGE_N: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrayImage {
    n: u32,
    /// Row-major: index `x * side + y`.
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(n: u32, pixels: Vec<u8>) -> Result<Self> {
        if n == 0 || n > MAX_IMAGE_N {
            return Err(Error::InvalidImage(format!(
                "side exponent {n} outside 1..={MAX_IMAGE_N}"
            )));
        }
        let side = 1usize << n;
        if pixels.len() != side * side {
            return Err(Error::InvalidImage(format!(
                "{} pixels for a {side}x{side} image",
                pixels.len()
            )));
        }
        Ok(GrayImage { n, pixels })
    }

    pub fn blank(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_IMAGE_N {
            return Err(Error::InvalidImage(format!(
                "side exponent {n} outside 1..={MAX_IMAGE_N}"
            )));
        }
        let side = 1usize << n;
        Self::new(n, vec![0; side * side])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn side(&self) -> usize {
        1 << self.n
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[x * self.side() + y]
    }

    pub fn set(&mut self, x: usize, y: usize, value: u8) -> Result<()> {
        self.check_position(x, y)?;
        let side = self.side();
        self.pixels[x * side + y] = value;
        Ok(())
    }

    fn check_position(&self, x: usize, y: usize) -> Result<()> {
        check_position(self.n, x, y)
    }

    /// `(x, y, self, other)` for every pixel where the two images differ.
    pub fn diff(&self, other: &GrayImage) -> Result<Vec<(usize, usize, u8, u8)>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.side(), other.side()));
        }
        let side = self.side();
        Ok(self
            .pixels
            .iter()
            .zip(&other.pixels)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, (&a, &b))| (i / side, i % side, a, b))
            .collect())
    }
}

impl fmt::Display for GrayImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.pixels.chunks(self.side()) {
            let cells: Vec<String> = row.iter().map(|p| format!("{p:>3}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn check_position(n: u32, x: usize, y: usize) -> Result<()> {
    if n == 0 || n > MAX_IMAGE_N {
        return Err(Error::InvalidImage(format!(
            "side exponent {n} outside 1..={MAX_IMAGE_N}"
        )));
    }
    let side = 1usize << n;
    if x >= side || y >= side {
        return Err(Error::InvalidImage(format!(
            "position ({x},{y}) outside a {side}x{side} image"
        )));
    }
    Ok(())
}

fn state_qubits(n: u32) -> Result<usize> {
    if n > MAX_STATE_N {
        return Err(Error::ImageTooLarge(n));
    }
    Ok(INTENSITY_QUBITS + 2 * n as usize)
}

/// Basis index of `|value>|x>|y>`.
fn basis_index(n: u32, x: usize, y: usize, value: u8) -> usize {
    ((value as usize) << (2 * n)) | (x << n) | y
}

/// Closed-form NEQR state of `img`.
pub fn neqr_encode(img: &GrayImage) -> Result<StateVector> {
    let q = state_qubits(img.n)?;
    let side = img.side();
    let amp = 1.0 / side as f64;
    let mut values = vec![0.0; 1 << q];
    for x in 0..side {
        for y in 0..side {
            values[basis_index(img.n, x, y, img.get(x, y))] = amp;
        }
    }
    StateVector::from_real_unnormalized(&values)
}

/// Controls selecting position `(x, y)` on the position register.
fn position_controls(n: u32, x: usize, y: usize) -> Vec<(usize, bool)> {
    let n = n as usize;
    let bit = |v: usize, k: usize| (v >> (n - 1 - k)) & 1 == 1;
    (0..n)
        .map(|k| (INTENSITY_QUBITS + 1 + k, bit(x, k)))
        .chain((0..n).map(|k| (INTENSITY_QUBITS + 1 + n + k, bit(y, k))))
        .collect()
}

/// The pixel-set operator for `(x, y)`: XORs `value` into the intensity
/// register of that one position, leaving all others alone.
pub fn apply_pixel_setter(state: &StateVector, n: u32, x: usize, y: usize, value: u8) -> Result<StateVector> {
    let q = state_qubits(n)?;
    if state.num_qubits() != q {
        return Err(Error::DimensionMismatch(state.num_qubits(), q));
    }
    check_position(n, x, y)?;
    let controls = position_controls(n, x, y);
    let mut out = state.clone();
    for k in 0..INTENSITY_QUBITS {
        if value & (0x80 >> k) != 0 {
            out = out.apply_controlled_x(&controls, k + 1)?;
        }
    }
    Ok(out)
}

/// Blank register with the position qubits in uniform superposition.
pub fn blank_image_state(n: u32) -> Result<StateVector> {
    let q = state_qubits(n)?;
    let mut state = StateVector::zero(q)?;
    for label in INTENSITY_QUBITS + 1..=q {
        state = state.apply_single(Gate::Hadamard, label)?;
    }
    Ok(state)
}

/// Builds the NEQR state gate by gate: Hadamards on the position register,
/// then one pixel setter per nonzero pixel.
pub fn build_image_state(img: &GrayImage) -> Result<StateVector> {
    let mut state = blank_image_state(img.n)?;
    for x in 0..img.side() {
        for y in 0..img.side() {
            let v = img.get(x, y);
            if v != 0 {
                state = apply_pixel_setter(&state, img.n, x, y, v)?;
            }
        }
    }
    Ok(state)
}

/// Reads the image back out of an NEQR state.
pub fn neqr_decode(state: &StateVector) -> Result<GrayImage> {
    let q = state.num_qubits();
    if q <= INTENSITY_QUBITS || !(q - INTENSITY_QUBITS).is_multiple_of(2) {
        return Err(Error::MalformedNeqrState(format!("{q} qubits is not 8 + 2n")));
    }
    let n = ((q - INTENSITY_QUBITS) / 2) as u32;
    let side = 1usize << n;
    let expected = 1.0 / side as f64;
    let amps = state.amplitudes();
    let reference = amps
        .iter()
        .find(|a| a.norm() > NORM_TOL)
        .copied()
        .ok_or_else(|| Error::MalformedNeqrState("zero vector".into()))?;
    let mut pixels = vec![0u8; side * side];
    for x in 0..side {
        for y in 0..side {
            let mut found = None;
            for value in 0..=255u8 {
                let a = amps[basis_index(n, x, y, value)];
                if a.norm() <= NORM_TOL {
                    continue;
                }
                if found.is_some() {
                    return Err(Error::MalformedNeqrState(format!(
                        "position ({x},{y}) holds more than one intensity"
                    )));
                }
                if (a - reference).norm() > NORM_TOL || (a.norm() - expected).abs() > NORM_TOL {
                    return Err(Error::MalformedNeqrState(format!(
                        "position ({x},{y}) amplitude {a} differs from {expected}"
                    )));
                }
                found = Some(value);
            }
            pixels[x * side + y] =
                found.ok_or_else(|| Error::MalformedNeqrState(format!("position ({x},{y}) is empty")))?;
        }
    }
    GrayImage::new(n, pixels)
}

/// One pixel shared as `intensity || x || y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelShareBundle {
    pub n: u32,
    pub x_bits: BitString,
    pub y_bits: BitString,
    pub intensity_bits: BitString,
    pub seed: u64,
    pub rounds: Vec<RoundTranscript>,
}

impl PixelShareBundle {
    /// Header position, as the dealer intended it.
    pub fn position(&self) -> (usize, usize) {
        (self.x_bits.value() as usize, self.y_bits.value() as usize)
    }

    pub fn shared_bits(&self) -> BitString {
        self.intensity_bits.concat(&self.x_bits).concat(&self.y_bits)
    }
}

fn pixel_bits(n: u32, x: usize, y: usize, value: u8) -> Result<(BitString, BitString, BitString)> {
    check_position(n, x, y)?;
    Ok((
        BitString::from_value(value as u64, INTENSITY_QUBITS),
        BitString::from_value(x as u64, n as usize),
        BitString::from_value(y as u64, n as usize),
    ))
}

fn bundle(n: u32, bits: (BitString, BitString, BitString), session: SecretSession) -> PixelShareBundle {
    let (intensity_bits, x_bits, y_bits) = bits;
    PixelShareBundle {
        n,
        x_bits,
        y_bits,
        intensity_bits,
        seed: session.seed,
        rounds: session.rounds,
    }
}

/// Shares pixel `(x, y)` of value `value` in a `2^n x 2^n` image.
pub fn share_pixel(n: u32, x: usize, y: usize, value: u8, policy: QubitPolicy, seed: u64) -> Result<PixelShareBundle> {
    let bits = pixel_bits(n, x, y, value)?;
    let secret = bits.0.concat(&bits.1).concat(&bits.2);
    let session = share_secret(&secret, policy, seed)?;
    Ok(bundle(n, bits, session))
}

/// Reconstructs `(x, y, value)` from a bundle's announcements.
pub fn reconstruct_pixel(bundle: &PixelShareBundle) -> Result<(usize, usize, u8)> {
    let mut bits = BitString::new(Vec::new());
    for round in &bundle.rounds {
        let chunk = round.reconstructed.bits().ok_or_else(|| {
            Error::ReconstructionFailed(format!(
                "round {} of pixel {:?} aborted",
                round.round_index,
                bundle.position()
            ))
        })?;
        bits = bits.concat(&BitString::from_chunks(&[chunk]));
    }
    let n = bundle.n as usize;
    if bits.len() != INTENSITY_QUBITS + 2 * n {
        return Err(Error::ReconstructionFailed(format!(
            "{} bits for a pixel of n = {n}",
            bits.len()
        )));
    }
    let value = bits.slice(0, INTENSITY_QUBITS).value() as u8;
    let x = bits.slice(INTENSITY_QUBITS, INTENSITY_QUBITS + n).value() as usize;
    let y = bits.slice(INTENSITY_QUBITS + n, INTENSITY_QUBITS + 2 * n).value() as usize;
    Ok((x, y, value))
}

/// Makes P1 lie in one round of one pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tamper {
    pub pixel_index: usize,
    pub round_index: usize,
}

/// Shares every pixel; pixel `i` uses the seed derived from `(seed, i)`.
pub fn share_image(img: &GrayImage, policy: QubitPolicy, seed: u64) -> Result<Vec<PixelShareBundle>> {
    share_image_with(img, policy, seed, None)
}

/// [`share_image`] with an optional dishonest P1 in one round. The liar
/// swaps `α+`/`α−` and `β+`/`β−`, which always changes that round's bits.
pub fn share_image_with(
    img: &GrayImage,
    policy: QubitPolicy,
    seed: u64,
    tamper: Option<Tamper>,
) -> Result<Vec<PixelShareBundle>> {
    let side = img.side();
    (0..side * side)
        .map(|i| {
            let (x, y) = (i / side, i % side);
            let bits = pixel_bits(img.n, x, y, img.get(x, y))?;
            let secret = bits.0.concat(&bits.1).concat(&bits.2);
            let pixel_seed = derive_seed(seed, i as u64);
            let session = share_secret_with(&secret, policy, pixel_seed, |round, mut plan: RoundPlan| {
                if tamper
                    == Some(Tamper {
                        pixel_index: i,
                        round_index: round,
                    })
                {
                    plan.p1_substitution = Some(LabelSubstitution::sign_flip());
                }
                plan
            })?;
            Ok(bundle(img.n, bits, session))
        })
        .collect()
}

/// Reassembles an image from its bundles, placing each pixel at its
/// reconstructed position.
pub fn reconstruct_image(n: u32, bundles: &[PixelShareBundle]) -> Result<GrayImage> {
    let mut img = GrayImage::blank(n)?;
    for b in bundles {
        let (x, y, value) = reconstruct_pixel(b)?;
        img.set(x, y, value)?;
    }
    Ok(img)
}
