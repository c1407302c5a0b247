//! Bipartitions, maximal Schmidt coefficients, and the generalized geometric
//! measure (GGM).
//!
//! For a normalized pure state `|ψ⟩` on `n` sites the measure is
//! `1 − max λ²_{A:B}` where the maximum runs over all bipartitions `A:B` and
//! `λ_{A:B}` is the largest Schmidt coefficient of the cut. It vanishes
//! exactly when some cut is a product and is positive for genuinely
//! multiparty entangled states.
//!
//! The scan over cuts is a pure map-reduce: each cut is evaluated
//! independently (in parallel via rayon) and the maximum with a
//! deterministic first-in-enumeration-order tie-break is taken after
//! collection, so results never depend on evaluation order.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, SparseCutMatrix, MAX_DENSE_DIM};
use crate::scalar::Scalar;
use crate::state::PureState;

/// Full scans are refused above this many sites unless the caller raises the
/// cap or passes an explicit cut list; 2^{n−1} − 1 cuts is the real cost.
pub const DEFAULT_SITE_CAP: usize = 20;

/// One cut of `n` sites into part A and its complement. The canonical form
/// keeps site 0 in A, which identifies each cut with its complement.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Bipartition {
    mask: u64,
    n: usize,
}

impl Bipartition {
    /// Canonical cut from a site set; complements the set when site 0 is not
    /// in it.
    pub fn new<I: IntoIterator<Item = usize>>(part_a: I, n: usize) -> Result<Self> {
        let mut mask = 0u64;
        for site in part_a {
            if site >= n {
                return Err(Error::IndexOutOfRange {
                    bits: site as u64,
                    num_sites: n,
                });
            }
            mask |= 1 << site;
        }
        Self::from_mask(mask, n)
    }

    /// Canonical cut from a bitmask of A-sites.
    pub fn from_mask(mask: u64, n: usize) -> Result<Self> {
        let cut = Self::raw(mask, n)?;
        if cut.mask & 1 == 0 {
            Self::raw(cut.complement_mask(), n)
        } else {
            Ok(cut)
        }
    }

    /// Non-canonicalizing constructor: keeps the given side as A even when
    /// it does not contain site 0. Used to evaluate a cut and its complement
    /// independently (e.g. for the complement-symmetry property).
    pub fn raw(mask: u64, n: usize) -> Result<Self> {
        if !(2..=64).contains(&n) {
            return Err(Error::TooFewSites { n });
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if mask == 0 || mask & !full != 0 || mask == full {
            return Err(Error::InvalidBipartition { n });
        }
        Ok(Self { mask, n })
    }

    pub fn num_sites(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    fn complement_mask(&self) -> u64 {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        !self.mask & full
    }

    /// The complementary cut, non-canonicalized.
    pub fn complement(&self) -> Self {
        Self {
            mask: self.complement_mask(),
            n: self.n,
        }
    }

    pub fn part_a(&self) -> Vec<usize> {
        (0..self.n).filter(|&s| (self.mask >> s) & 1 == 1).collect()
    }

    pub fn part_b(&self) -> Vec<usize> {
        (0..self.n).filter(|&s| (self.mask >> s) & 1 == 0).collect()
    }

    pub fn size_a(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Size of the smaller side; the physically meaningful cut size.
    pub fn min_side(&self) -> usize {
        self.size_a().min(self.n - self.size_a())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_side = |sites: Vec<usize>| {
            sites
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{{{}}}:{{{}}}",
            fmt_side(self.part_a()),
            fmt_side(self.part_b())
        )
    }
}

/// All `2^{n−1} − 1` canonical bipartitions, ordered by increasing `|A|` and
/// lexicographically within a size class.
pub fn enumerate_bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    if n < 2 {
        return Err(Error::TooFewSites { n });
    }
    if n > 64 {
        return Err(Error::ResourceCap {
            what: "sites",
            value: n,
            cap: 64,
        });
    }
    // 2^{n−1} − 1 cuts; keep the up-front reservation bounded for large n.
    let mut cuts = Vec::with_capacity(((1usize << (n - 1).min(22)) - 1).max(1));
    // A always contains site 0; choose the remaining k−1 sites from 1..n in
    // lexicographic order.
    for size in 1..n {
        let extra = size - 1;
        let mut combo: Vec<usize> = (1..=extra).collect();
        loop {
            let mut mask = 1u64;
            for &s in &combo {
                mask |= 1 << s;
            }
            cuts.push(Bipartition { mask, n });
            if !next_combination(&mut combo, n - 1) {
                break;
            }
        }
    }
    Ok(cuts)
}

/// Advances a strictly increasing combination with values in `1..=max_value`
/// to its lexicographic successor; false when exhausted.
fn next_combination(combo: &mut [usize], max_value: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < max_value - (k - 1 - i) {
            combo[i] += 1;
            for j in (i + 1)..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Splits each stored basis index into its A-side and B-side sub-indices and
/// exposes the amplitude matrix with the smaller side as rows.
fn cut_matrix<T: Scalar>(state: &PureState<T>, cut: &Bipartition) -> Vec<(u64, u64, Complex<T>)> {
    let a_sites = cut.part_a();
    let b_sites = cut.part_b();
    let small_is_a = a_sites.len() <= b_sites.len();
    let mut rows = Vec::with_capacity(state.term_count());
    for (idx, amp) in state.iter() {
        let mut a_idx = 0u64;
        for (pos, &s) in a_sites.iter().enumerate() {
            a_idx |= idx.bit(s) << pos;
        }
        let mut b_idx = 0u64;
        for (pos, &s) in b_sites.iter().enumerate() {
            b_idx |= idx.bit(s) << pos;
        }
        if small_is_a {
            rows.push((a_idx, b_idx, amp));
        } else {
            rows.push((b_idx, a_idx, amp));
        }
    }
    rows
}

fn schmidt_sq_unchecked<T: Scalar>(state: &PureState<T>, cut: &Bipartition) -> Result<T> {
    let dim_small = 1usize << cut.min_side();
    let mut entries = cut_matrix(state, cut);
    // Sort by summed-side index so equal columns sit together.
    entries.sort_unstable_by_key(|&(s, b, _)| (b, s));
    if dim_small <= MAX_DENSE_DIM {
        let zero = Complex::new(T::zero(), T::zero());
        let mut gram = vec![zero; dim_small * dim_small];
        let mut start = 0usize;
        while start < entries.len() {
            let big = entries[start].1;
            let mut end = start;
            while end < entries.len() && entries[end].1 == big {
                end += 1;
            }
            for &(si, _, vi) in &entries[start..end] {
                for &(sj, _, vj) in &entries[start..end] {
                    gram[si as usize * dim_small + sj as usize] += vi * vj.conj();
                }
            }
            start = end;
        }
        linalg::hermitian_largest_eigenvalue(&gram, dim_small)
    } else {
        // Remap the summed side to compact column ids; the Gram matrix is
        // never formed.
        let mut remapped = Vec::with_capacity(entries.len());
        let mut num_big = 0u32;
        let mut last_big = None;
        for (s, b, v) in entries {
            if last_big != Some(b) {
                last_big = Some(b);
                num_big += 1;
            }
            remapped.push((s as u32, num_big - 1, v));
        }
        let matrix = SparseCutMatrix {
            dim_small,
            num_big: num_big as usize,
            entries: remapped,
        };
        linalg::power_largest_gram(&matrix)
    }
}

/// Largest squared Schmidt coefficient of the cut: the top eigenvalue of the
/// reduced state on the smaller side, computed from the Gram matrix of the
/// amplitude matrix (dense eigendecomposition up to dimension 64, power
/// iteration above).
pub fn max_schmidt_sq<T: Scalar>(state: &PureState<T>, cut: &Bipartition) -> Result<T> {
    if cut.num_sites() != state.num_sites() {
        return Err(Error::SiteCountMismatch {
            left: cut.num_sites(),
            right: state.num_sites(),
        });
    }
    if !state.is_normalized() {
        return Err(Error::UnnormalizedState {
            norm_sq: state.norm_sq().to_f64(),
        });
    }
    schmidt_sq_unchecked(state, cut)
}

/// GGM of a state together with the cut that realizes it.
#[derive(Clone, Debug)]
pub struct GgmResult<T: Scalar> {
    /// `1 − lambda_sq_max`, except that states product across some cut
    /// (λ²max within the product tolerance of 1) report exactly zero.
    pub ggm: T,
    /// Largest squared Schmidt coefficient over the scanned cuts, as computed.
    pub lambda_sq_max: T,
    /// First cut attaining the maximum, in enumeration (or input) order.
    pub dominant: Bipartition,
    /// Per-cut values when requested.
    pub per_partition: Option<Vec<(Bipartition, T)>>,
    /// True when the scan ran over a caller-supplied cut list; the value is
    /// then only an upper bound on the true GGM.
    pub restricted: bool,
}

/// Scan configuration for [`ggm_with`].
#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Explicit cut list; `None` scans all canonical bipartitions.
    pub cuts: Option<Vec<Bipartition>>,
    /// Site cap for the full scan.
    pub site_cap: usize,
    /// Retain the per-cut λ² values in the result.
    pub keep_per_partition: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            cuts: None,
            site_cap: DEFAULT_SITE_CAP,
            keep_per_partition: false,
        }
    }
}

/// GGM over all bipartitions (site cap [`DEFAULT_SITE_CAP`]).
pub fn ggm<T: Scalar>(state: &PureState<T>) -> Result<GgmResult<T>> {
    ggm_with(state, &ScanOptions::default())
}

/// GGM over all bipartitions with a caller-chosen site cap.
pub fn ggm_capped<T: Scalar>(state: &PureState<T>, site_cap: usize) -> Result<GgmResult<T>> {
    ggm_with(
        state,
        &ScanOptions {
            site_cap,
            ..ScanOptions::default()
        },
    )
}

/// GGM restricted to the given cuts; the result is flagged `restricted` and
/// upper-bounds the measure.
pub fn ggm_over<T: Scalar>(state: &PureState<T>, cuts: &[Bipartition]) -> Result<GgmResult<T>> {
    ggm_with(
        state,
        &ScanOptions {
            cuts: Some(cuts.to_vec()),
            ..ScanOptions::default()
        },
    )
}

pub fn ggm_with<T: Scalar>(state: &PureState<T>, options: &ScanOptions) -> Result<GgmResult<T>> {
    let n = state.num_sites();
    if !state.is_normalized() {
        return Err(Error::UnnormalizedState {
            norm_sq: state.norm_sq().to_f64(),
        });
    }
    let (cuts, restricted) = match &options.cuts {
        Some(list) => {
            if list.is_empty() {
                return Err(Error::EmptyInput { what: "cut list" });
            }
            for cut in list {
                if cut.num_sites() != n {
                    return Err(Error::SiteCountMismatch {
                        left: cut.num_sites(),
                        right: n,
                    });
                }
            }
            (list.clone(), true)
        }
        None => {
            if n > options.site_cap {
                return Err(Error::ResourceCap {
                    what: "sites in full bipartition scan",
                    value: n,
                    cap: options.site_cap,
                });
            }
            (enumerate_bipartitions(n)?, false)
        }
    };

    let values: Result<Vec<T>> = cuts
        .par_iter()
        .map(|cut| schmidt_sq_unchecked(state, cut))
        .collect();
    let values = values?;

    let mut best = 0usize;
    for (k, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = k;
        }
    }
    let lambda_sq_max = values[best];
    let ggm = if lambda_sq_max > T::one() - T::PRODUCT_TOLERANCE {
        T::zero()
    } else {
        T::one() - lambda_sq_max
    };
    let per_partition = options
        .keep_per_partition
        .then(|| cuts.iter().copied().zip(values.iter().copied()).collect());
    Ok(GgmResult {
        ggm,
        lambda_sq_max,
        dominant: cuts[best],
        per_partition,
        restricted,
    })
}

/// For each cut size `k = 1..⌊n/2⌋`, the maximum λ² over all cuts whose
/// smaller side has `k` sites.
pub fn dominant_partition_size_scan<T: Scalar>(state: &PureState<T>) -> Result<BTreeMap<usize, T>> {
    let result = ggm_with(
        state,
        &ScanOptions {
            keep_per_partition: true,
            ..ScanOptions::default()
        },
    )?;
    let mut by_size: BTreeMap<usize, T> = BTreeMap::new();
    for (cut, value) in result.per_partition.expect("per-partition values kept") {
        let entry = by_size.entry(cut.min_side()).or_insert(value);
        if value > *entry {
            *entry = value;
        }
    }
    Ok(by_size)
}
