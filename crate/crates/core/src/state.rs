//! Sparse multi-qubit pure states in the computational basis.
//!
//! A state over `N` sites is a map from basis bit strings to complex
//! amplitudes; absent keys are zero. Bit value 0 is `|0⟩` (σ_z eigenvalue
//! +1), bit value 1 is `|1⟩` (σ_z eigenvalue −1), and site 0 is the least
//! significant bit. Everything here is an immutable value: operations take
//! references and return fresh states, so concurrent use needs no locking.
//!
//! The structured states of interest (fixed-Hamming-weight superpositions,
//! singlet coverings, dimer products) occupy a combinatorially small corner
//! of the 2^N-dimensional space, which is what makes the sparse map pay off
//! up to N ≈ 24.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{KahanComplex, Scalar};

/// A computational-basis label: bit k holds the value of site k.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisIndex(pub u64);

impl BasisIndex {
    /// Value of the given site's bit (0 or 1).
    #[inline]
    pub fn bit(self, site: usize) -> u64 {
        (self.0 >> site) & 1
    }

    /// Number of sites in state `|1⟩`.
    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Bit string with site 0 leftmost, as used by the text dump format.
    pub fn format_bits(self, num_sites: usize) -> String {
        (0..num_sites)
            .map(|k| if self.bit(k) == 1 { '1' } else { '0' })
            .collect()
    }

    /// Parses a site-0-leftmost bit string.
    pub fn parse_bits(text: &str) -> Option<(BasisIndex, usize)> {
        let mut bits = 0u64;
        let mut n = 0;
        for ch in text.chars() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << n,
                _ => return None,
            }
            n += 1;
            if n > 64 {
                return None;
            }
        }
        if n == 0 {
            None
        } else {
            Some((BasisIndex(bits), n))
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One qubit of a product state: `a|0⟩ + b|1⟩`.
#[derive(Clone, Copy, Debug)]
pub struct SiteState<T: Scalar> {
    pub a: Complex<T>,
    pub b: Complex<T>,
}

impl<T: Scalar> SiteState<T> {
    pub fn new(a: Complex<T>, b: Complex<T>) -> Self {
        Self { a, b }
    }

    /// `|0⟩`
    pub fn zero() -> Self {
        Self::new(
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        )
    }

    /// `|1⟩`
    pub fn one() -> Self {
        Self::new(
            Complex::new(T::zero(), T::zero()),
            Complex::new(T::one(), T::zero()),
        )
    }

    /// `(|0⟩ + |1⟩)/√2`
    pub fn plus() -> Self {
        let h = T::from_f64(std::f64::consts::FRAC_1_SQRT_2);
        Self::new(Complex::new(h, T::zero()), Complex::new(h, T::zero()))
    }

    /// `(|0⟩ − |1⟩)/√2`
    pub fn minus() -> Self {
        let h = T::from_f64(std::f64::consts::FRAC_1_SQRT_2);
        Self::new(Complex::new(h, T::zero()), Complex::new(-h, T::zero()))
    }

    /// Bloch-sphere point: `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn bloch(theta: T, phi: T) -> Self {
        let half = theta / T::from_f64(2.0);
        Self::new(
            Complex::new(half.cos(), T::zero()),
            Complex::new(phi.cos(), phi.sin()) * half.sin(),
        )
    }

    pub fn norm_sq(&self) -> T {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - T::one()).abs() <= T::NORM_TOLERANCE
    }
}

/// An ordered perfect-matching fragment: each pair `(i, j)` denotes the
/// singlet `(|0_i 1_j⟩ − |1_i 0_j⟩)/√2`, so swapping a pair's order flips
/// the state's sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    /// Validates that no site appears twice.
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j) in &pairs {
            if i == j {
                return Err(Error::InvalidPairing {
                    reason: format!("pair ({i}, {j}) repeats a site"),
                });
            }
            for s in [i, j] {
                if !seen.insert(s) {
                    return Err(Error::InvalidPairing {
                        reason: format!("site {s} appears in more than one pair"),
                    });
                }
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// True when the pairs cover exactly the sites `0..n`.
    pub fn covers(&self, n: usize) -> bool {
        if 2 * self.pairs.len() != n {
            return false;
        }
        self.pairs.iter().all(|&(i, j)| i < n && j < n)
    }
}

/// Sparse pure state: `num_sites` qubits, amplitudes keyed by basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T: Scalar> {
    num_sites: usize,
    amplitudes: BTreeMap<u64, Complex<T>>,
}

impl<T: Scalar> PureState<T> {
    fn check_sites(&self, other: &Self) -> Result<()> {
        if self.num_sites != other.num_sites {
            return Err(Error::SiteCountMismatch {
                left: self.num_sites,
                right: other.num_sites,
            });
        }
        Ok(())
    }

    /// Builds a state from raw `(index, amplitude)` entries, summing
    /// duplicates and pruning below the drop tolerance.
    pub fn from_amplitudes<I>(num_sites: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisIndex, Complex<T>)>,
    {
        if num_sites == 0 || num_sites > 64 {
            return Err(Error::InvalidParams {
                reason: format!("unsupported site count {num_sites}"),
            });
        }
        let limit = if num_sites == 64 {
            u64::MAX
        } else {
            (1u64 << num_sites) - 1
        };
        let mut amplitudes: BTreeMap<u64, Complex<T>> = BTreeMap::new();
        for (idx, amp) in entries {
            if idx.0 > limit {
                return Err(Error::IndexOutOfRange {
                    bits: idx.0,
                    num_sites,
                });
            }
            let slot = amplitudes
                .entry(idx.0)
                .or_insert_with(|| Complex::new(T::zero(), T::zero()));
            *slot += amp;
        }
        amplitudes.retain(|_, a| a.norm() > T::DROP_TOLERANCE);
        Ok(Self {
            num_sites,
            amplitudes,
        })
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    /// Number of stored (nonzero) amplitudes.
    pub fn term_count(&self) -> usize {
        self.amplitudes.len()
    }

    /// Amplitude at a basis index; zero if absent.
    pub fn amplitude(&self, idx: BasisIndex) -> Complex<T> {
        self.amplitudes
            .get(&idx.0)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Stored entries in ascending basis-index order.
    pub fn iter(&self) -> impl Iterator<Item = (BasisIndex, Complex<T>)> + '_ {
        self.amplitudes.iter().map(|(&k, &v)| (BasisIndex(k), v))
    }

    /// Σ|amp|², compensated.
    pub fn norm_sq(&self) -> T {
        let mut acc = crate::scalar::Kahan::new();
        for amp in self.amplitudes.values() {
            acc.add(amp.norm_sqr());
        }
        acc.total()
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - T::one()).abs() <= T::NORM_TOLERANCE
    }

    /// Returns the unit-norm copy, or `ZeroNorm` when the norm is below the
    /// zero tolerance (which is how an empty projection surfaces in the
    /// cooling step).
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm <= T::ZERO_NORM_TOLERANCE {
            return Err(Error::ZeroNorm);
        }
        let inv = T::one() / norm;
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(&k, &v)| (k, v * inv))
            .collect();
        Ok(Self {
            num_sites: self.num_sites,
            amplitudes,
        })
    }
}

/// The basis state `|bits⟩` on `n` sites.
pub fn basis_state<T: Scalar>(bits: BasisIndex, n: usize) -> Result<PureState<T>> {
    if n == 0 || n > 64 {
        return Err(Error::InvalidParams {
            reason: format!("unsupported site count {n}"),
        });
    }
    if n < 64 && bits.0 >= (1u64 << n) {
        return Err(Error::IndexOutOfRange {
            bits: bits.0,
            num_sites: n,
        });
    }
    let mut amplitudes = BTreeMap::new();
    amplitudes.insert(bits.0, Complex::new(T::one(), T::zero()));
    Ok(PureState {
        num_sites: n,
        amplitudes,
    })
}

/// Product state `⊗_i (a_i|0⟩ + b_i|1⟩)`; each factor must be normalized.
///
/// The result stores exactly `Π_i (number of nonzero components of site i)`
/// amplitudes.
pub fn product_state<T: Scalar>(sites: &[SiteState<T>]) -> Result<PureState<T>> {
    if sites.is_empty() {
        return Err(Error::EmptyInput { what: "site list" });
    }
    if sites.len() > 64 {
        return Err(Error::InvalidParams {
            reason: format!("unsupported site count {}", sites.len()),
        });
    }
    for (index, site) in sites.iter().enumerate() {
        if !site.is_normalized() {
            return Err(Error::UnnormalizedSite {
                index,
                norm_sq: site.norm_sq().to_f64(),
            });
        }
    }
    let mut amplitudes: Vec<(u64, Complex<T>)> = vec![(0, Complex::new(T::one(), T::zero()))];
    for (k, site) in sites.iter().enumerate() {
        let mut next = Vec::with_capacity(amplitudes.len() * 2);
        let keep_a = site.a.norm() > T::DROP_TOLERANCE;
        let keep_b = site.b.norm() > T::DROP_TOLERANCE;
        for &(bits, amp) in &amplitudes {
            if keep_a {
                next.push((bits, amp * site.a));
            }
            if keep_b {
                next.push((bits | (1 << k), amp * site.b));
            }
        }
        amplitudes = next;
    }
    Ok(PureState {
        num_sites: sites.len(),
        amplitudes: amplitudes.into_iter().collect(),
    })
}

/// Pointwise linear combination `Σ_k c_k |s_k⟩`. Not normalized; exact
/// cancellations are pruned. All states must share a site count.
pub fn superpose<T: Scalar>(terms: &[(Complex<T>, &PureState<T>)]) -> Result<PureState<T>> {
    let (_, first) = terms.first().ok_or(Error::EmptyInput {
        what: "superposition terms",
    })?;
    for (_, s) in terms.iter().skip(1) {
        first.check_sites(s)?;
    }
    let mut amplitudes: BTreeMap<u64, Complex<T>> = BTreeMap::new();
    for (coeff, state) in terms {
        for (&bits, &amp) in &state.amplitudes {
            let slot = amplitudes
                .entry(bits)
                .or_insert_with(|| Complex::new(T::zero(), T::zero()));
            *slot += *coeff * amp;
        }
    }
    amplitudes.retain(|_, a| a.norm() > T::DROP_TOLERANCE);
    Ok(PureState {
        num_sites: first.num_sites,
        amplitudes,
    })
}

/// `⟨a|b⟩ = Σ conj(a_k) b_k` over shared basis indices.
pub fn inner_product<T: Scalar>(a: &PureState<T>, b: &PureState<T>) -> Result<Complex<T>> {
    a.check_sites(b)?;
    // Walk the smaller map, probe the larger.
    let (small, large) = if a.amplitudes.len() <= b.amplitudes.len() {
        (a, b)
    } else {
        (b, a)
    };
    let mut acc = KahanComplex::new();
    for (&bits, &amp_small) in &small.amplitudes {
        if let Some(&amp_large) = large.amplitudes.get(&bits) {
            let term = if std::ptr::eq(small, a) {
                amp_small.conj() * amp_large
            } else {
                amp_large.conj() * amp_small
            };
            acc.add(term);
        }
    }
    Ok(acc.total())
}

/// Normalized product of two-site singlets covering all `n` sites.
///
/// Every site in `0..n` must appear exactly once across the pairs; partial
/// coverings are rejected.
pub fn singlet_product<T: Scalar>(pairing: &Pairing, n: usize) -> Result<PureState<T>> {
    if !pairing.covers(n) {
        return Err(Error::InvalidPairing {
            reason: format!(
                "pairs must cover all {n} sites exactly once (got {} pairs)",
                pairing.pairs().len()
            ),
        });
    }
    let m = pairing.pairs().len();
    let amp = T::from_f64(std::f64::consts::FRAC_1_SQRT_2).powi(m as i32);
    let mut entries: Vec<(u64, Complex<T>)> = vec![(0, Complex::new(amp, T::zero()))];
    for &(i, j) in pairing.pairs() {
        let mut next = Vec::with_capacity(entries.len() * 2);
        for &(bits, a) in &entries {
            // |0_i 1_j⟩ keeps the sign, |1_i 0_j⟩ flips it.
            next.push((bits | (1 << j), a));
            next.push((bits | (1 << i), -a));
        }
        entries = next;
    }
    Ok(PureState {
        num_sites: n,
        amplitudes: entries.into_iter().collect(),
    })
}

/// Writes the text dump: header `N=<num_sites>`, then one
/// `<bitstring> <re> <im>` line per stored amplitude (site 0 leftmost,
/// ascending basis order). Floats use the shortest round-trip form.
pub fn dump<T: Scalar, W: Write>(state: &PureState<T>, mut out: W) -> Result<()> {
    writeln!(out, "N={}", state.num_sites)?;
    for (idx, amp) in state.iter() {
        writeln!(
            out,
            "{} {} {}",
            idx.format_bits(state.num_sites),
            amp.re,
            amp.im
        )?;
    }
    Ok(())
}

/// Parses the [`dump`] format.
pub fn load<T: Scalar, R: BufRead>(reader: R) -> Result<PureState<T>> {
    let mut lines = reader.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing header".into(),
    })?;
    let header = header?;
    let num_sites: usize = header
        .trim()
        .strip_prefix("N=")
        .and_then(|v| v.parse().ok())
        .ok_or(Error::Parse {
            line: 1,
            reason: format!("expected `N=<num_sites>`, got `{header}`"),
        })?;
    let mut entries = Vec::new();
    for (k, line) in lines {
        let line = line?;
        let line_no = k + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (bits_text, re_text, im_text) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    reason: "expected `<bitstring> <re> <im>`".into(),
                })
            }
        };
        let (idx, n) = BasisIndex::parse_bits(bits_text).ok_or_else(|| Error::Parse {
            line: line_no,
            reason: format!("bad bit string `{bits_text}`"),
        })?;
        if n != num_sites {
            return Err(Error::Parse {
                line: line_no,
                reason: format!("bit string length {n} does not match N={num_sites}"),
            });
        }
        let re: f64 = re_text.parse().map_err(|_| Error::Parse {
            line: line_no,
            reason: format!("bad real part `{re_text}`"),
        })?;
        let im: f64 = im_text.parse().map_err(|_| Error::Parse {
            line: line_no,
            reason: format!("bad imaginary part `{im_text}`"),
        })?;
        entries.push((idx, Complex::new(T::from_f64(re), T::from_f64(im))));
    }
    PureState::from_amplitudes(num_sites, entries)
}
