//! Builders for six frustrated spin models: states, Hamiltonians, and
//! closed-form GGM/eigenvalue expressions.
//!
//! All states are exact sparse constructions (no diagonalization): cooled
//! fixed-weight superpositions for the Ising gas and Ising ring, coherent
//! singlet-covering sums for the RVB gas and the plaquette lattice, and
//! dimer products for Majumdar–Ghosh and Shastry–Sutherland. Hamiltonians
//! carry exact rational couplings for the frustration-degree machinery.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::frustration::{classical_ground_states, isingize, SpinHamiltonian};
use crate::scalar::{Rational, Scalar};
use crate::state::{singlet_product, superpose, BasisIndex, Pairing, PureState};

/// The RVB covering sum has m! terms; larger m is refused.
pub const RVB_M_CAP: usize = 8;

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

/// All `n`-bit words of the given Hamming weight in increasing numeric
/// order (Gosper's hack).
fn fixed_weight_indices(n: usize, weight: usize) -> Vec<u64> {
    if weight == 0 {
        return vec![0];
    }
    let limit = 1u64 << n;
    let mut word = (1u64 << weight) - 1;
    let mut out = Vec::with_capacity(binomial(n as u64, weight as u64) as usize);
    while word < limit {
        out.push(word);
        let lowest = word & word.wrapping_neg();
        let ripple = word + lowest;
        word = (((ripple ^ word) >> 2) / lowest) | ripple;
    }
    out
}

// ---------------------------------------------------------------------------
// Ising gas (long-range antiferromagnet)
// ---------------------------------------------------------------------------

/// Parameters of the 2m-spin Ising gas `H = (J/2m)(S − 2mλ)²`.
#[derive(Clone, Debug)]
pub struct GasParams {
    m: usize,
    lam: Rational,
    j: Rational,
}

impl GasParams {
    /// Requires m ≥ 1, J > 0, and λ ∈ [0, 1] with m(1±λ) integral (the
    /// cooled state needs integer block sizes).
    pub fn new(m: usize, lam: Rational, j: Rational) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParams {
                reason: "Ising gas needs m >= 1".into(),
            });
        }
        if j <= Rational::from_integer(0) {
            return Err(Error::InvalidParams {
                reason: format!("coupling J must be positive, got {j}"),
            });
        }
        if lam < Rational::from_integer(0) || lam > Rational::from_integer(1) {
            return Err(Error::InvalidParams {
                reason: format!("lambda must be in [0, 1], got {lam}"),
            });
        }
        let block = Rational::from_integer(m as i64) * (Rational::from_integer(1) - lam);
        if !block.is_integer() {
            return Err(Error::InvalidParams {
                reason: format!("m(1 - lambda) must be an integer, got {block}"),
            });
        }
        Ok(Self { m, lam, j })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> Rational {
        self.lam
    }

    pub fn coupling(&self) -> Rational {
        self.j
    }

    pub fn num_spins(&self) -> usize {
        2 * self.m
    }

    /// Number of down spins m(1−λ) in every cooled-state component.
    pub fn weight(&self) -> usize {
        let block = Rational::from_integer(self.m as i64) * (Rational::from_integer(1) - self.lam);
        block.to_integer() as usize
    }
}

/// Cooled state of the Ising gas: the normalized uniform superposition of
/// all basis states with exactly m(1−λ) down spins; C(2m, m(1−λ)) terms.
pub fn ising_gas_state<T: Scalar>(params: &GasParams) -> Result<PureState<T>> {
    let n = params.num_spins();
    let weight = params.weight();
    let indices = fixed_weight_indices(n, weight);
    let amp = T::one() / T::from_f64(indices.len() as f64).sqrt();
    PureState::from_amplitudes(
        n,
        indices
            .into_iter()
            .map(|bits| (BasisIndex(bits), Complex::new(amp, T::zero()))),
    )
}

/// Nonzero reduced eigenvalues of the λ=0 gas state across an n:2m−n cut:
/// `C(n,j)·C(2m−n, m−j)/C(2m,m)` for j = 0..n, sorted descending.
pub fn ising_gas_partition_eigs(m: usize, n: usize) -> Result<Vec<Rational>> {
    if m < 1 || n < 1 || n > m {
        return Err(Error::InvalidParams {
            reason: format!("need 1 <= n <= m, got n = {n}, m = {m}"),
        });
    }
    let total = binomial(2 * m as u64, m as u64) as i64;
    let mut eigs: Vec<Rational> = (0..=n)
        .map(|j| {
            let count = binomial(n as u64, j as u64) * binomial((2 * m - n) as u64, (m - j) as u64);
            Rational::new(count as i64, total)
        })
        .collect();
    eigs.sort_unstable_by(|a, b| b.cmp(a));
    Ok(eigs)
}

/// Closed-form GGM of the λ=0 gas: `(m−1)/(2m−1)`, realized on a 2:2m−2 cut
/// whose largest eigenvalue is m/(2m−1).
pub fn ising_gas_ggm_analytic(m: usize) -> Result<Rational> {
    if m < 1 {
        return Err(Error::InvalidParams {
            reason: "Ising gas needs m >= 1".into(),
        });
    }
    Ok(Rational::new(m as i64 - 1, 2 * m as i64 - 1))
}

/// Expanded gas Hamiltonian: z-z couplings J/m on every pair, fields −2Jλ
/// per site, constant J(1 + 2mλ²).
pub fn ising_gas_hamiltonian(params: &GasParams) -> SpinHamiltonian<Rational> {
    use crate::frustration::Axis::Z;
    let n = params.num_spins();
    let mut h = SpinHamiltonian::new(n);
    let pair_coupling = params.j / Rational::from_integer(params.m as i64);
    for i in 0..n {
        for j in (i + 1)..n {
            h.add_term(pair_coupling, vec![(i, Z), (j, Z)])
                .expect("valid sites");
        }
    }
    let field = -Rational::from_integer(2) * params.j * params.lam;
    if field != Rational::from_integer(0) {
        for i in 0..n {
            h.add_term(field, vec![(i, Z)]).expect("valid site");
        }
    }
    let constant = params.j
        * (Rational::from_integer(1)
            + Rational::from_integer(2 * params.m as i64) * params.lam * params.lam);
    h.add_term(constant, vec![]).expect("constant term");
    h
}

// ---------------------------------------------------------------------------
// RVB gas (long-range Heisenberg antiferromagnet)
// ---------------------------------------------------------------------------

/// Cooled RVB state: the coherent sum of all m! black→white singlet
/// coverings (black sites 0..m, white sites m..2m), normalized. Coverings
/// accumulate in lexicographic permutation order.
pub fn rvb_state<T: Scalar>(m: usize) -> Result<PureState<T>> {
    if m < 1 {
        return Err(Error::InvalidParams {
            reason: "RVB gas needs m >= 1".into(),
        });
    }
    if m > RVB_M_CAP {
        return Err(Error::ResourceCap {
            what: "RVB half-size m (m! coverings)",
            value: m,
            cap: RVB_M_CAP,
        });
    }
    let n = 2 * m;
    let mut assignment: Vec<usize> = (m..n).collect();
    let mut coverings: Vec<PureState<T>> = Vec::new();
    loop {
        let pairs: Vec<(usize, usize)> = assignment
            .iter()
            .enumerate()
            .map(|(black, &white)| (black, white))
            .collect();
        coverings.push(singlet_product(&Pairing::new(pairs)?, n)?);
        if !next_permutation(&mut assignment) {
            break;
        }
    }
    let one = Complex::new(T::one(), T::zero());
    let terms: Vec<(Complex<T>, &PureState<T>)> = coverings.iter().map(|s| (one, s)).collect();
    superpose(&terms)?.normalize()
}

fn next_permutation(values: &mut [usize]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// Long-range Heisenberg antiferromagnet: links J/2m on every pair of the
/// 2m spins.
pub fn rvb_hamiltonian(m: usize, j: Rational) -> Result<SpinHamiltonian<Rational>> {
    if m < 1 {
        return Err(Error::InvalidParams {
            reason: "RVB gas needs m >= 1".into(),
        });
    }
    let n = 2 * m;
    let coupling = j / Rational::from_integer(n as i64);
    let mut h = SpinHamiltonian::new(n);
    for i in 0..n {
        for k in (i + 1)..n {
            h.add_heisenberg(coupling, i, k)?;
        }
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// Plaquette J1-J2-J3 model
// ---------------------------------------------------------------------------

/// A set of four-site plaquettes (site order: top-left, top-right,
/// bottom-left, bottom-right) with a fixed count of vertical-singlet
/// plaquettes per covering.
#[derive(Clone, Debug)]
pub struct PlaquetteLayout {
    plaquettes: Vec<[usize; 4]>,
    density_v: usize,
}

impl PlaquetteLayout {
    /// The plaquettes must exactly partition sites 0..4·count, and the
    /// vertical count must not exceed the plaquette count.
    pub fn new(plaquettes: Vec<[usize; 4]>, density_v: usize) -> Result<Self> {
        if plaquettes.is_empty() {
            return Err(Error::EmptyInput { what: "plaquettes" });
        }
        let n = 4 * plaquettes.len();
        let mut seen = vec![false; n];
        for plaquette in &plaquettes {
            for &site in plaquette {
                if site >= n || seen[site] {
                    return Err(Error::InvalidParams {
                        reason: format!("plaquettes must partition sites 0..{n}"),
                    });
                }
                seen[site] = true;
            }
        }
        if density_v > plaquettes.len() {
            return Err(Error::InvalidParams {
                reason: format!(
                    "vertical count {density_v} exceeds plaquette count {}",
                    plaquettes.len()
                ),
            });
        }
        Ok(Self {
            plaquettes,
            density_v,
        })
    }

    /// 1×p chain with plaquette k on sites 4k..4k+4.
    pub fn chain(p: usize, density_v: usize) -> Result<Self> {
        let plaquettes = (0..p)
            .map(|k| [4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3])
            .collect();
        Self::new(plaquettes, density_v)
    }

    pub fn plaquettes(&self) -> &[[usize; 4]] {
        &self.plaquettes
    }

    pub fn density_v(&self) -> usize {
        self.density_v
    }

    pub fn num_sites(&self) -> usize {
        4 * self.plaquettes.len()
    }
}

fn plaquette_pairs(plaquette: &[usize; 4], vertical: bool) -> [(usize, usize); 2] {
    let [tl, tr, bl, br] = *plaquette;
    if vertical {
        [(tl, bl), (tr, br)]
    } else {
        [(tl, tr), (bl, br)]
    }
}

/// Cooled plaquette state: the normalized uniform superposition over all
/// C(P, v) assignments of v vertical-singlet plaquettes among P, each
/// assignment a full dimer covering with |hh⟩ = singlet(TL,TR)·singlet(BL,BR)
/// and |vv⟩ = singlet(TL,BL)·singlet(TR,BR).
///
/// A single plaquette cannot realize density 1/2, so P = 1 builds the equal
/// superposition |hh⟩ + |vv⟩ regardless of the requested vertical count.
pub fn plaquette_state<T: Scalar>(layout: &PlaquetteLayout) -> Result<PureState<T>> {
    let n = layout.num_sites();
    let p = layout.plaquettes.len();
    let assignments: Vec<Vec<bool>> = if p == 1 {
        vec![vec![false], vec![true]]
    } else {
        fixed_weight_indices(p, layout.density_v)
            .into_iter()
            .map(|mask| (0..p).map(|k| (mask >> k) & 1 == 1).collect())
            .collect()
    };
    let mut coverings: Vec<PureState<T>> = Vec::with_capacity(assignments.len());
    for assignment in &assignments {
        let mut pairs = Vec::with_capacity(2 * p);
        for (plaquette, &vertical) in layout.plaquettes.iter().zip(assignment) {
            pairs.extend(plaquette_pairs(plaquette, vertical));
        }
        coverings.push(singlet_product(&Pairing::new(pairs)?, n)?);
    }
    let one = Complex::new(T::one(), T::zero());
    let terms: Vec<(Complex<T>, &PureState<T>)> = coverings.iter().map(|s| (one, s)).collect();
    superpose(&terms)?.normalize()
}

/// J1-only plaquette Hamiltonian (the J2 = J3 = 0 point): all six
/// Heisenberg links inside every plaquette of a 1×p chain.
pub fn plaquette_hamiltonian(p: usize, j1: Rational) -> Result<SpinHamiltonian<Rational>> {
    let layout = PlaquetteLayout::chain(p, 0)?;
    let mut h = SpinHamiltonian::new(layout.num_sites());
    for plaquette in layout.plaquettes() {
        for i in 0..4 {
            for j in (i + 1)..4 {
                h.add_heisenberg(j1, plaquette[i], plaquette[j])?;
            }
        }
    }
    Ok(h)
}

/// Cut family generated by the plaquette structure: unions of whole
/// plaquettes, optionally together with a proper subset of one further
/// plaquette. Deduplicated, canonical, ordered by (size, mask).
///
/// Per-plaquette dimer structure makes the Schmidt spectrum of a cut depend
/// on how the cut splits individual plaquettes; splitting additional
/// plaquettes only mixes in more environment. The family's adequacy is
/// asserted against the full scan at P = 4 in the acceptance suite.
pub fn plaquette_restricted_cuts(layout: &PlaquetteLayout) -> Result<Vec<crate::Bipartition>> {
    use crate::Bipartition;
    let p = layout.plaquettes.len();
    let n = layout.num_sites();
    if p < 2 {
        return Err(Error::InvalidParams {
            reason: "restricted cut family needs at least two plaquettes".into(),
        });
    }
    let plaquette_masks: Vec<u64> = layout
        .plaquettes
        .iter()
        .map(|plaquette| plaquette.iter().fold(0u64, |mask, &s| mask | (1 << s)))
        .collect();
    let mut masks = std::collections::BTreeSet::new();
    let full = (1u64 << n) - 1;
    for selection in 0..(1u64 << p) {
        let base: u64 = (0..p)
            .filter(|&k| (selection >> k) & 1 == 1)
            .fold(0, |mask, k| mask | plaquette_masks[k]);
        if base != 0 && base != full {
            masks.insert(Bipartition::from_mask(base, n)?.mask());
        }
        for (k, &pm) in plaquette_masks.iter().enumerate() {
            if (selection >> k) & 1 == 1 {
                continue;
            }
            let sites: Vec<usize> = (0..n).filter(|&s| (pm >> s) & 1 == 1).collect();
            for sub in 1u64..15 {
                let sub_mask: u64 = sites
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| (sub >> idx) & 1 == 1)
                    .fold(0, |mask, (_, &s)| mask | (1 << s));
                let candidate = base | sub_mask;
                if candidate != full {
                    masks.insert(Bipartition::from_mask(candidate, n)?.mask());
                }
            }
        }
    }
    let mut cuts: Vec<Bipartition> = masks
        .into_iter()
        .map(|mask| Bipartition::from_mask(mask, n))
        .collect::<Result<_>>()?;
    cuts.sort_by_key(|cut| (cut.size_a(), cut.mask()));
    Ok(cuts)
}

// ---------------------------------------------------------------------------
// Majumdar–Ghosh chain
// ---------------------------------------------------------------------------

/// Majumdar–Ghosh parameters: half system size and the complex coefficient
/// of the second dimer covering in the cooled state.
#[derive(Clone, Debug)]
pub struct MgParams<T: Scalar> {
    pub m: usize,
    pub alpha: Complex<T>,
}

impl<T: Scalar> MgParams<T> {
    pub fn new(m: usize, alpha: Complex<T>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams {
                reason: "Majumdar-Ghosh chain needs m >= 2".into(),
            });
        }
        Ok(Self { m, alpha })
    }
}

/// The two dimer-covering ground states of the 2m-site periodic chain:
/// even-odd pairs (0,1)(2,3)… and odd-even pairs (1,2)(3,4)…(2m−1,0). The
/// second covering is oriented so that ⟨G¹|G²⟩ = +2^{1−m}, matching the
/// closed-form cut eigenvalues.
pub fn mg_ground_states<T: Scalar>(m: usize) -> Result<(PureState<T>, PureState<T>)> {
    if m < 2 {
        return Err(Error::InvalidParams {
            reason: "Majumdar-Ghosh chain needs m >= 2".into(),
        });
    }
    let n = 2 * m;
    let even_pairs: Vec<(usize, usize)> = (0..m).map(|i| (2 * i, 2 * i + 1)).collect();
    let odd_pairs: Vec<(usize, usize)> = (0..m).map(|i| (2 * i + 1, (2 * i + 2) % n)).collect();
    let g1 = singlet_product(&Pairing::new(even_pairs)?, n)?;
    let mut g2 = singlet_product(&Pairing::new(odd_pairs)?, n)?;
    let overlap = crate::state::inner_product(&g1, &g2)?;
    if overlap.re < T::zero() {
        g2 = superpose(&[(Complex::new(-T::one(), T::zero()), &g2)])?;
    }
    Ok((g1, g2))
}

/// Cooled Majumdar–Ghosh state `|G¹⟩ + α|G²⟩`, normalized.
pub fn mg_cooled_state<T: Scalar>(params: &MgParams<T>) -> Result<PureState<T>> {
    let (g1, g2) = mg_ground_states::<T>(params.m)?;
    let one = Complex::new(T::one(), T::zero());
    superpose(&[(one, &g1), (params.alpha, &g2)])?.normalize()
}

/// Closed-form largest eigenvalues of the two distinct two-site reduced
/// states of the cooled chain at real α: sites (0,1) inside a G¹ dimer and
/// sites (1,2) inside a G² dimer.
pub fn mg_eigs_analytic<T: Scalar>(m: usize, alpha: T) -> Result<(T, T)> {
    if m < 2 {
        return Err(Error::InvalidParams {
            reason: "Majumdar-Ghosh chain needs m >= 2".into(),
        });
    }
    let two_m = T::from_f64(2f64.powi(m as i32));
    let four = T::from_f64(4.0);
    let sixteen = T::from_f64(16.0);
    let denominator = four * (two_m + four * alpha + two_m * alpha * alpha);
    if denominator.abs() <= T::ZERO_NORM_TOLERANCE {
        return Err(Error::InvalidParams {
            reason: format!("vanishing normalization at alpha = {alpha}"),
        });
    }
    let e1 = (four * two_m + sixteen * alpha + two_m * alpha * alpha) / denominator;
    let e2 = (two_m + sixteen * alpha + four * two_m * alpha * alpha) / denominator;
    Ok((e1, e2))
}

/// Closed-form GGM of the cooled chain at the optimal α = 1:
/// `3/(8 + 2^{4−m})`, approaching 3/8 for long chains.
pub fn mg_ggm_analytic(m: usize) -> Result<Rational> {
    if !(2..=50).contains(&m) {
        return Err(Error::InvalidParams {
            reason: format!("Majumdar-Ghosh closed form supported for 2 <= m <= 50, got {m}"),
        });
    }
    if m <= 4 {
        Ok(Rational::new(3, 8 + (1i64 << (4 - m))))
    } else {
        let scale = 1i64 << (m - 4);
        Ok(Rational::new(3 * scale, 8 * scale + 1))
    }
}

/// Majumdar–Ghosh Hamiltonian on the 2m-site ring: nearest-neighbor links
/// J1 and next-nearest links J1/2.
pub fn mg_hamiltonian(m: usize, j1: Rational) -> Result<SpinHamiltonian<Rational>> {
    if m < 2 {
        return Err(Error::InvalidParams {
            reason: "Majumdar-Ghosh chain needs m >= 2".into(),
        });
    }
    let n = 2 * m;
    let mut h = SpinHamiltonian::new(n);
    let half = j1 / Rational::from_integer(2);
    for i in 0..n {
        h.add_heisenberg(j1, i, (i + 1) % n)?;
    }
    for i in 0..n {
        h.add_heisenberg(half, i, (i + 2) % n)?;
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// Shastry–Sutherland lattice
// ---------------------------------------------------------------------------

/// Dimer-product ground state of the Shastry–Sutherland model (the exact
/// ground state in the regime J1/J2 < 1/2): a singlet on every J2 diagonal.
/// The pairing must be a perfect matching of the n sites.
pub fn ss_ground_state<T: Scalar>(diagonal_pairs: &Pairing, n: usize) -> Result<PureState<T>> {
    singlet_product(diagonal_pairs, n)
}

/// The J2 diagonal matching of an l×l torus (l even): plaquettes at even
/// x+y carry one diagonal whose orientation alternates with the row, which
/// places every site on exactly one diagonal.
pub fn ss_dimer_pairing(l: usize) -> Result<Pairing> {
    if l < 2 || !l.is_multiple_of(2) {
        return Err(Error::InvalidParams {
            reason: format!("Shastry-Sutherland lattice needs an even l >= 2, got {l}"),
        });
    }
    let site = |x: usize, y: usize| (y % l) * l + (x % l);
    let mut pairs = Vec::with_capacity(l * l / 2);
    for y in 0..l {
        for x in 0..l {
            if (x + y) % 2 != 0 {
                continue;
            }
            if y % 2 == 0 {
                pairs.push((site(x, y), site(x + 1, y + 1)));
            } else {
                pairs.push((site(x + 1, y), site(x, y + 1)));
            }
        }
    }
    Pairing::new(pairs)
}

/// Shastry–Sutherland Hamiltonian on an l×l torus: nearest-neighbor links
/// J1 plus the alternating J2 diagonals of [`ss_dimer_pairing`].
pub fn ss_hamiltonian(l: usize, j1: Rational, j2: Rational) -> Result<SpinHamiltonian<Rational>> {
    let pairing = ss_dimer_pairing(l)?;
    let n = l * l;
    let site = |x: usize, y: usize| (y % l) * l + (x % l);
    let mut h = SpinHamiltonian::new(n);
    let mut seen = std::collections::BTreeSet::new();
    for y in 0..l {
        for x in 0..l {
            for (nx, ny) in [(x + 1, y), (x, y + 1)] {
                let (a, b) = (site(x, y), site(nx, ny));
                let key = (a.min(b), a.max(b));
                if a != b && seen.insert(key) {
                    h.add_heisenberg(j1, a, b)?;
                }
            }
        }
    }
    for &(i, j) in pairing.pairs() {
        h.add_heisenberg(j2, i, j)?;
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// Ising ring with one antiferromagnetic bond
// ---------------------------------------------------------------------------

/// Ring of 2m spins: ferromagnetic bonds −J on (i, i+1) for i < 2m−1 and a
/// single antiferromagnetic bond +J closing the ring.
pub fn ising_ring_hamiltonian(m: usize, j: Rational) -> Result<SpinHamiltonian<Rational>> {
    use crate::frustration::Axis::Z;
    if m < 2 {
        return Err(Error::InvalidParams {
            reason: "Ising ring needs m >= 2".into(),
        });
    }
    if j <= Rational::from_integer(0) {
        return Err(Error::InvalidParams {
            reason: format!("coupling J must be positive, got {j}"),
        });
    }
    let n = 2 * m;
    let mut h = SpinHamiltonian::new(n);
    for i in 0..(n - 1) {
        h.add_term(-j, vec![(i, Z), (i + 1, Z)])?;
    }
    h.add_term(j, vec![(n - 1, Z), (0, Z)])?;
    Ok(h)
}

/// Cooled Ising-ring state: the uniform superposition over all 4m classical
/// ground configurations, built from the enumerated ground set (identical
/// to projecting the all-|+⟩ product state onto the ground manifold).
pub fn ising_ring_cooled_state<T: Scalar>(m: usize) -> Result<PureState<T>> {
    let h = ising_ring_hamiltonian(m, Rational::from_integer(1))?;
    let ground = classical_ground_states(&isingize(&h))?;
    let amp = T::one() / T::from_f64(ground.configs.len() as f64).sqrt();
    PureState::from_amplitudes(
        2 * m,
        ground
            .configs
            .iter()
            .map(|&config| (config, Complex::new(amp, T::zero()))),
    )
}

/// Closed-form GGM of the cooled ring: `(3m − 1 − √(4 + m²))/(4m)`,
/// approaching 1/2 for large rings.
pub fn ising_ring_ggm_analytic<T: Scalar>(m: usize) -> Result<T> {
    if m < 2 {
        return Err(Error::InvalidParams {
            reason: "Ising ring needs m >= 2".into(),
        });
    }
    let mf = m as f64;
    Ok(T::from_f64(
        (3.0 * mf - 1.0 - (4.0 + mf * mf).sqrt()) / (4.0 * mf),
    ))
}
