//! Isingization, exhaustive classical ground-state enumeration, and the
//! frustration degree.
//!
//! A quantum spin Hamiltonian is "Isingized" by replacing every term —
//! one-body, two-body, or higher, and every Heisenberg link σ⃗_i·σ⃗_j taken
//! as a single interaction link — by a σ_z-only term on the same sites with
//! the coupling unchanged. Substituting classical variables s_i = ±1 turns
//! it into a classical energy function whose ground states are found by
//! exhaustive enumeration. For each ground state the terms split into
//! positive (frustrating) and non-positive (non-frustrating) energy
//! contributions; the frustration degree is the ratio of the positive sum
//! to the modulus of the negative sum, averaged over all ground states.
//!
//! Couplings are generic over [`Coupling`]: rational couplings give exact
//! energies, exact degeneracy counting, and an exact degree; `f64`
//! couplings fall back to a tie tolerance when collecting degenerate
//! minima.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{Coupling, Rational};
use crate::state::BasisIndex;

/// Exhaustive enumeration refuses more sites than this (2^N configurations).
pub const ENUMERATION_SITE_CAP: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

/// One Pauli product term: `coupling · Π σ_axis(site)`. An empty link list
/// is a constant.
#[derive(Clone, Debug)]
pub struct PauliTerm<C> {
    pub coupling: C,
    pub links: Vec<(usize, Axis)>,
}

/// A Heisenberg link `J σ⃗_i·σ⃗_j`, treated as one interaction link.
#[derive(Clone, Debug)]
pub struct HeisenbergLink<C> {
    pub coupling: C,
    pub sites: (usize, usize),
}

/// Quantum spin Hamiltonian: explicit Pauli terms plus Heisenberg links.
#[derive(Clone, Debug)]
pub struct SpinHamiltonian<C> {
    num_sites: usize,
    terms: Vec<PauliTerm<C>>,
    heisenberg_links: Vec<HeisenbergLink<C>>,
}

impl<C: Coupling> SpinHamiltonian<C> {
    pub fn new(num_sites: usize) -> Self {
        Self {
            num_sites,
            terms: Vec::new(),
            heisenberg_links: Vec::new(),
        }
    }

    fn check_coupling(&self, coupling: &C) -> Result<()> {
        if coupling.is_zero() || !coupling.to_f64().is_finite() {
            return Err(Error::InvalidParams {
                reason: format!("coupling must be finite and nonzero, got {coupling}"),
            });
        }
        Ok(())
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.num_sites {
            return Err(Error::IndexOutOfRange {
                bits: site as u64,
                num_sites: self.num_sites,
            });
        }
        Ok(())
    }

    /// Adds `coupling · Π σ_axis(site)`; empty links add a constant.
    pub fn add_term(&mut self, coupling: C, links: Vec<(usize, Axis)>) -> Result<()> {
        self.check_coupling(&coupling)?;
        for &(site, _) in &links {
            self.check_site(site)?;
        }
        self.terms.push(PauliTerm { coupling, links });
        Ok(())
    }

    /// Adds `J σ⃗_i·σ⃗_j` as a single link.
    pub fn add_heisenberg(&mut self, coupling: C, i: usize, j: usize) -> Result<()> {
        self.check_coupling(&coupling)?;
        self.check_site(i)?;
        self.check_site(j)?;
        if i == j {
            return Err(Error::InvalidParams {
                reason: format!("Heisenberg link needs two distinct sites, got ({i}, {j})"),
            });
        }
        self.heisenberg_links.push(HeisenbergLink {
            coupling,
            sites: (i, j),
        });
        Ok(())
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn terms(&self) -> &[PauliTerm<C>] {
        &self.terms
    }

    pub fn heisenberg_links(&self) -> &[HeisenbergLink<C>] {
        &self.heisenberg_links
    }
}

/// A z-only interaction term on a set of sites (bit mask).
#[derive(Clone, Debug)]
pub struct IsingTerm<C> {
    pub coupling: C,
    pub sites: u64,
}

/// Classical Ising Hamiltonian: merged z-only terms plus a site-free
/// constant that is excluded from frustration accounting.
#[derive(Clone, Debug)]
pub struct IsingHamiltonian<C> {
    num_sites: usize,
    terms: Vec<IsingTerm<C>>,
    constant_offset: C,
}

impl<C: Coupling> IsingHamiltonian<C> {
    /// Builds from (coupling, site-set mask) pairs, merging identical site
    /// sets, dropping terms that cancel to zero, and folding site-free
    /// couplings into the constant offset.
    pub fn from_terms<I>(num_sites: usize, terms: I, constant_offset: C) -> Result<Self>
    where
        I: IntoIterator<Item = (C, u64)>,
    {
        let full = if num_sites >= 64 {
            u64::MAX
        } else {
            (1u64 << num_sites) - 1
        };
        let mut merged: BTreeMap<u64, C> = BTreeMap::new();
        let mut offset = constant_offset;
        for (coupling, sites) in terms {
            if sites & !full != 0 {
                return Err(Error::IndexOutOfRange {
                    bits: sites,
                    num_sites,
                });
            }
            if sites == 0 {
                offset = offset + coupling;
                continue;
            }
            match merged.remove(&sites) {
                Some(existing) => {
                    let sum = existing + coupling;
                    if !sum.is_zero() {
                        merged.insert(sites, sum);
                    }
                }
                None => {
                    merged.insert(sites, coupling);
                }
            }
        }
        Ok(Self {
            num_sites,
            terms: merged
                .into_iter()
                .map(|(sites, coupling)| IsingTerm { coupling, sites })
                .collect(),
            constant_offset: offset,
        })
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn terms(&self) -> &[IsingTerm<C>] {
        &self.terms
    }

    pub fn constant_offset(&self) -> &C {
        &self.constant_offset
    }

    /// Interaction energy of a classical configuration (bit 0 ↔ s = +1,
    /// bit 1 ↔ s = −1); the constant offset is not included.
    pub fn interaction_energy(&self, config: BasisIndex) -> C {
        let mut total = C::zero();
        for term in &self.terms {
            total = total + term_contribution(term, config);
        }
        total
    }
}

#[inline]
fn term_contribution<C: Coupling>(term: &IsingTerm<C>, config: BasisIndex) -> C {
    if (config.0 & term.sites).count_ones().is_multiple_of(2) {
        term.coupling.clone()
    } else {
        -term.coupling.clone()
    }
}

/// Replaces every term by its Ising counterpart: Pauli products become
/// z-products on the same sites (repeated sites cancel pairwise since
/// σ_z² = 1), Heisenberg links become single z-z terms, couplings and signs
/// unchanged. Site-free constants accumulate in the offset.
pub fn isingize<C: Coupling>(h: &SpinHamiltonian<C>) -> IsingHamiltonian<C> {
    let raw = h
        .terms()
        .iter()
        .map(|term| {
            let mut sites = 0u64;
            for &(site, _) in &term.links {
                sites ^= 1 << site;
            }
            (term.coupling.clone(), sites)
        })
        .chain(h.heisenberg_links().iter().map(|link| {
            let (i, j) = link.sites;
            (link.coupling.clone(), (1u64 << i) | (1u64 << j))
        }));
    IsingHamiltonian::from_terms(h.num_sites(), raw, C::zero())
        .expect("sites were validated on construction")
}

/// All configurations attaining the exact minimum energy.
#[derive(Clone, Debug)]
pub struct GroundStateSet<C> {
    /// Minimum energy including the constant offset.
    pub energy: C,
    /// Ground configurations in ascending bit order.
    pub configs: Vec<BasisIndex>,
}

impl<C> GroundStateSet<C> {
    pub fn degeneracy(&self) -> usize {
        self.configs.len()
    }
}

struct Minima<C> {
    energy: Option<C>,
    configs: Vec<u64>,
}

impl<C: Coupling> Minima<C> {
    fn empty() -> Self {
        Self {
            energy: None,
            configs: Vec::new(),
        }
    }

    fn offer(&mut self, energy: C, config: u64) {
        match &self.energy {
            None => {
                self.energy = Some(energy);
                self.configs.push(config);
            }
            Some(best) => {
                if C::tie_eq(&energy, best) {
                    self.configs.push(config);
                } else if energy < *best {
                    self.energy = Some(energy);
                    self.configs.clear();
                    self.configs.push(config);
                }
            }
        }
    }

    fn merge(self, other: Self) -> Self {
        match (&self.energy, &other.energy) {
            (_, None) => self,
            (None, _) => other,
            (Some(a), Some(b)) => {
                if C::tie_eq(a, b) {
                    let mut merged = self;
                    merged.configs.extend(other.configs);
                    merged
                } else if *b < *a {
                    other
                } else {
                    self
                }
            }
        }
    }
}

/// Exhaustively enumerates all 2^N classical configurations and returns the
/// minimum-energy set. Chunked over rayon; merging is keyed on the exact
/// minimum and configs are sorted afterwards, so the result does not depend
/// on chunking.
pub fn classical_ground_states<C: Coupling>(hi: &IsingHamiltonian<C>) -> Result<GroundStateSet<C>> {
    let n = hi.num_sites();
    if n == 0 {
        return Err(Error::EmptyInput {
            what: "hamiltonian sites",
        });
    }
    if n > ENUMERATION_SITE_CAP {
        return Err(Error::ResourceCap {
            what: "sites in exhaustive enumeration",
            value: n,
            cap: ENUMERATION_SITE_CAP,
        });
    }
    let total = 1u64 << n;
    let chunk = 1u64 << n.min(12);
    let ranges: Vec<(u64, u64)> = (0..total)
        .step_by(chunk as usize)
        .map(|start| (start, (start + chunk).min(total)))
        .collect();
    let minima = ranges
        .into_par_iter()
        .map(|(start, end)| {
            let mut local = Minima::empty();
            for config in start..end {
                local.offer(hi.interaction_energy(BasisIndex(config)), config);
            }
            local
        })
        .reduce(Minima::empty, Minima::merge);
    let mut configs = minima.configs;
    configs.sort_unstable();
    let energy = minima.energy.expect("at least one configuration");
    Ok(GroundStateSet {
        energy: energy + hi.constant_offset().clone(),
        configs: configs.into_iter().map(BasisIndex).collect(),
    })
}

/// Per-ground-state split of the Hamiltonian into frustrating and
/// non-frustrating parts.
#[derive(Clone, Debug)]
pub struct GroundTermSplit<C> {
    pub config: BasisIndex,
    pub positive_sum: C,
    pub negative_sum_modulus: C,
    pub ratio: C,
}

/// Frustration degree and its per-ground-state breakdown.
#[derive(Clone, Debug)]
pub struct FrustrationReport<C> {
    /// Arithmetic mean of the per-ground-state ratios; in `[0, 1]`.
    pub degree: C,
    pub per_ground_state: Vec<GroundTermSplit<C>>,
    /// True when some term contributes positively for one ground state and
    /// negatively for another, i.e. the frustrating/non-frustrating labels
    /// are configuration-dependent.
    pub classification_varies: bool,
}

/// Frustration degree over a precomputed ground-state set.
///
/// Per ground state, each term's energy contribution goes to the positive
/// sum or to the modulus of the negative sum; exact zeros enter neither.
/// The per-state ratios are averaged arithmetically. A ground state with an
/// empty negative part leaves the ratio undefined and is reported as an
/// error naming the configuration.
pub fn frustration_degree_over<C: Coupling>(
    hi: &IsingHamiltonian<C>,
    ground: &GroundStateSet<C>,
) -> Result<FrustrationReport<C>> {
    if ground.configs.is_empty() {
        return Err(Error::EmptyInput {
            what: "ground states",
        });
    }
    let mut per_ground_state = Vec::with_capacity(ground.configs.len());
    let mut ratio_sum = C::zero();
    // per-term sign history: (seen positive, seen negative)
    let mut seen = vec![(false, false); hi.terms().len()];
    for &config in &ground.configs {
        let mut positive = C::zero();
        let mut negative = C::zero();
        for (k, term) in hi.terms().iter().enumerate() {
            let contribution = term_contribution(term, config);
            if contribution.is_positive() {
                positive = positive + contribution;
                seen[k].0 = true;
            } else if contribution.is_negative() {
                negative = negative + contribution.abs();
                seen[k].1 = true;
            }
        }
        if negative.is_zero() {
            return Err(Error::DegenerateDenominator {
                config: config.format_bits(hi.num_sites()),
            });
        }
        let ratio = positive.clone() / negative.clone();
        ratio_sum = ratio_sum + ratio.clone();
        per_ground_state.push(GroundTermSplit {
            config,
            positive_sum: positive,
            negative_sum_modulus: negative,
            ratio,
        });
    }
    let count = C::from_usize(ground.configs.len()).ok_or(Error::InvalidParams {
        reason: "ground-state count not representable in the coupling type".into(),
    })?;
    Ok(FrustrationReport {
        degree: ratio_sum / count,
        per_ground_state,
        classification_varies: seen.iter().any(|&(p, n)| p && n),
    })
}

/// Enumerates the ground states and computes the frustration degree.
pub fn frustration_degree<C: Coupling>(hi: &IsingHamiltonian<C>) -> Result<FrustrationReport<C>> {
    let ground = classical_ground_states(hi)?;
    frustration_degree_over(hi, &ground)
}

/// Models with a closed-form frustration degree.
#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticModel {
    /// Long-range antiferromagnetic Ising gas of 2m spins, field parameter
    /// λ ∈ [0, 1].
    IsingGas { m: usize, lambda: Rational },
    /// Ferromagnetic ring of 2m spins with one antiferromagnetic bond.
    IsingRing { m: usize },
    /// Shastry–Sutherland lattice in the dimer regime; large-size form in
    /// the coupling ratio J2/J1.
    ShastrySutherland { j2_over_j1: Rational },
    /// Majumdar–Ghosh chain (J2/J1 = 1/2 line).
    MajumdarGhosh,
    /// Plaquette J1-J2-J3 model at J2 = J3 = 0.
    J1J2J3,
}

/// Closed-form frustration degrees.
///
/// The Ising-gas value is `(1 + 2λ − λ² − 1/m) / (1 + λ)²`. Direct counting
/// in the weight sector m(1−λ): aligned pairs plus down-site fields give a
/// positive sum `Jm(1 + 2λ − λ² − 1/m)` per ground configuration, while
/// anti-aligned pairs plus up-site fields give `Jm(1 + λ)²` in modulus.
pub fn frustration_analytic(model: &AnalyticModel) -> Result<Rational> {
    let one = Rational::from_integer(1);
    match model {
        AnalyticModel::IsingGas { m, lambda } => {
            if *m < 1 {
                return Err(Error::InvalidParams {
                    reason: "Ising gas needs m >= 1".into(),
                });
            }
            if *lambda < Rational::zero() || *lambda > one {
                return Err(Error::InvalidParams {
                    reason: format!("lambda must be in [0, 1], got {lambda}"),
                });
            }
            let lam = *lambda;
            let m_rat = Rational::from_integer(*m as i64);
            let numerator = one + Rational::from_integer(2) * lam - lam * lam - one / m_rat;
            let denominator = (one + lam) * (one + lam);
            Ok(numerator / denominator)
        }
        AnalyticModel::IsingRing { m } => {
            if *m < 1 {
                return Err(Error::InvalidParams {
                    reason: "Ising ring needs m >= 1".into(),
                });
            }
            Ok(Rational::new(1, 2 * *m as i64 - 1))
        }
        AnalyticModel::ShastrySutherland { j2_over_j1 } => {
            if *j2_over_j1 <= Rational::zero() {
                return Err(Error::InvalidParams {
                    reason: format!("J2/J1 must be positive, got {j2_over_j1}"),
                });
            }
            Ok(one / (one + *j2_over_j1 / Rational::from_integer(2)))
        }
        AnalyticModel::MajumdarGhosh | AnalyticModel::J1J2J3 => Ok(Rational::new(1, 2)),
    }
}

/// Parses the Hamiltonian text format: one directive per line,
///
/// ```text
/// # optional comments
/// sites 3
/// term 1 0:z 1:z
/// term -1/2 2:x
/// heis 1 0 2
/// ```
///
/// Couplings accept integers, `p/q` rationals, and finite decimals (parsed
/// exactly). Without a `sites` line the site count is the highest
/// referenced index plus one.
pub fn parse_hamiltonian(text: &str) -> Result<SpinHamiltonian<Rational>> {
    let mut declared_sites: Option<usize> = None;
    let mut pauli_terms: Vec<(Rational, Vec<(usize, Axis)>)> = Vec::new();
    let mut heis_links: Vec<(Rational, usize, usize)> = Vec::new();
    let mut max_site = 0usize;
    let mut any_site = false;

    for (index, raw_line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let keyword = fields.next().unwrap();
        let parse_err = |reason: String| Error::Parse {
            line: line_no,
            reason,
        };
        match keyword {
            "sites" => {
                let n: usize = fields
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| parse_err("expected `sites <count>`".into()))?;
                declared_sites = Some(n);
            }
            "term" => {
                let coupling_text = fields
                    .next()
                    .ok_or_else(|| parse_err("missing coupling".into()))?;
                let coupling = parse_rational(coupling_text)
                    .ok_or_else(|| parse_err(format!("bad coupling `{coupling_text}`")))?;
                let mut links = Vec::new();
                for field in fields {
                    let (site_text, axis_text) = field
                        .split_once(':')
                        .ok_or_else(|| parse_err(format!("expected `site:axis`, got `{field}`")))?;
                    let site: usize = site_text
                        .parse()
                        .map_err(|_| parse_err(format!("bad site `{site_text}`")))?;
                    let axis = match axis_text {
                        "x" | "X" => Axis::X,
                        "y" | "Y" => Axis::Y,
                        "z" | "Z" => Axis::Z,
                        other => return Err(parse_err(format!("bad axis `{other}`"))),
                    };
                    max_site = max_site.max(site);
                    any_site = true;
                    links.push((site, axis));
                }
                pauli_terms.push((coupling, links));
            }
            "heis" => {
                let coupling_text = fields
                    .next()
                    .ok_or_else(|| parse_err("missing coupling".into()))?;
                let coupling = parse_rational(coupling_text)
                    .ok_or_else(|| parse_err(format!("bad coupling `{coupling_text}`")))?;
                let i: usize = fields
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| parse_err("expected `heis <J> <i> <j>`".into()))?;
                let j: usize = fields
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| parse_err("expected `heis <J> <i> <j>`".into()))?;
                max_site = max_site.max(i).max(j);
                any_site = true;
                heis_links.push((coupling, i, j));
            }
            other => {
                return Err(parse_err(format!("unknown directive `{other}`")));
            }
        }
    }

    let inferred = if any_site { max_site + 1 } else { 0 };
    let num_sites = match declared_sites {
        Some(n) if n >= inferred => n,
        Some(n) => {
            return Err(Error::InvalidParams {
                reason: format!("declared sites {n} but terms reference site {max_site}"),
            })
        }
        None => inferred,
    };
    if num_sites == 0 {
        return Err(Error::EmptyInput {
            what: "hamiltonian terms",
        });
    }
    let mut h = SpinHamiltonian::new(num_sites);
    for (coupling, links) in pauli_terms {
        h.add_term(coupling, links)?;
    }
    for (coupling, i, j) in heis_links {
        h.add_heisenberg(coupling, i, j)?;
    }
    Ok(h)
}

/// Exact rational from `p/q`, integer, or finite-decimal text.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((numer, denom)) = text.split_once('/') {
        let numer: i64 = numer.trim().parse().ok()?;
        let denom: i64 = denom.trim().parse().ok()?;
        if denom == 0 {
            return None;
        }
        return Some(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_value: i64 = if whole.is_empty() || whole == "-" {
            0
        } else {
            whole.parse().ok()?
        };
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let frac_value: i64 = frac.parse().ok()?;
        let scale = 10i64.checked_pow(frac.len() as u32)?;
        let magnitude =
            Rational::from_integer(whole_value.abs()) + Rational::new(frac_value, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    text.parse::<i64>().ok().map(Rational::from_integer)
}
