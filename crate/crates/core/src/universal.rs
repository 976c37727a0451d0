//! (m, κ)-universal set families over the ground set `{0, .., m-1}`.
//!
//! A family is universal when its traces on every κ-subset `S` realize all
//! `2^κ` subsets of `S`. Construction, by regime:
//!
//! * `κ = 0`: the single empty set.
//! * power set, whenever `2^m` does not exceed the random family size.
//! * seeded random family of [`random_family_size`] members, exhaustively
//!   checked with [`verify_universal`] and redrawn (next seed) on failure,
//!   while the check costs at most [`VERIFICATION_BUDGET`] trace operations.
//! * beyond that budget, a seeded random family sized so the union bound
//!   puts the probability of a missed trace below `2^-64`; the family
//!   records that it is only probabilistically certified.
//!
//! Families are cached per `(m, κ)` for the life of the process.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const MAX_KAPPA: usize = 20;

/// Upper bound on `C(m, κ) · |family|` for the exhaustive check.
pub const VERIFICATION_BUDGET: f64 = 4.0e8;

const FAILURE_LOG2: f64 = 64.0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniversalError {
    #[error("kappa {kappa} exceeds ground size {m}")]
    KappaAboveGround { m: usize, kappa: usize },
    #[error("kappa {0} exceeds the supported maximum of {MAX_KAPPA}")]
    KappaTooLarge(usize),
    #[error("malformed family file: {0}")]
    Format(String),
}

/// Subset of the ground set as a packed bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b))
    }

    /// Hex digits, most significant first; bit `i` has value `2^i`.
    fn to_hex(&self, len: usize) -> String {
        let digits = len.div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u8;
            for b in 0..4 {
                let i = d * 4 + b;
                if i < len && self.contains(i) {
                    nibble |= 1 << b;
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    fn from_hex(text: &str, len: usize) -> Result<Self, UniversalError> {
        let mut s = Self::new(len);
        for (pos, ch) in text.chars().rev().enumerate() {
            let nibble = ch.to_digit(16).ok_or_else(|| UniversalError::Format(format!("bad hex digit {ch:?}")))?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let i = pos * 4 + b;
                    if i >= len {
                        return Err(UniversalError::Format(format!("bit {i} beyond ground size {len}")));
                    }
                    s.insert(i);
                }
            }
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Certification {
    /// Every subset of the ground set is a member.
    PowerSet,
    /// Exhaustively verified.
    Verified,
    /// Not verified; union bound on the miss probability is `2^-log2_failure`.
    Probabilistic { log2_failure: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniversalFamily {
    pub ground_size: usize,
    pub kappa: usize,
    pub members: Vec<BitSet>,
    pub certification: Certification,
}

impl UniversalFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `m kappa count` header, then one hex line per member.
    pub fn to_cache_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.ground_size, self.kappa, self.members.len());
        for s in &self.members {
            writeln!(out, "{}", s.to_hex(self.ground_size)).unwrap();
        }
        out
    }

    /// Parses a cache file. The family is re-verified when feasible and
    /// otherwise marked probabilistic.
    pub fn from_cache_text(text: &str) -> Result<Self, UniversalError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| UniversalError::Format("empty file".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| UniversalError::Format(format!("bad header {header:?}"))))
            .collect::<Result<_, _>>()?;
        let [m, kappa, count] = nums[..] else {
            return Err(UniversalError::Format(format!("bad header {header:?}")));
        };
        let members = lines.map(|l| BitSet::from_hex(l.trim(), m)).collect::<Result<Vec<_>, _>>()?;
        if members.len() != count {
            return Err(UniversalError::Format(format!("header says {count} members, found {}", members.len())));
        }
        let mut family = UniversalFamily { ground_size: m, kappa, members, certification: Certification::Verified };
        if verification_cost(m, kappa, family.members.len()) <= VERIFICATION_BUDGET {
            if !verify_universal(&family) {
                return Err(UniversalError::Format("cached family is not universal".into()));
            }
        } else {
            family.certification = Certification::Probabilistic { log2_failure: 0.0 };
        }
        Ok(family)
    }
}

/// The published constant: verified families have at most
/// `size_bound_constant(κ) · log2(max(m, 2))` members.
pub fn size_bound_constant(kappa: usize) -> u64 {
    (1u64 << (kappa + 1)) * (kappa as u64 + 1)
}

/// `⌈2^κ (κ ln(2m) + 1)⌉`: makes the expected number of missed traces,
/// `C(m,κ) 2^κ (1 - 2^-κ)^N`, at most `1/κ!`.
pub fn random_family_size(m: usize, kappa: usize) -> usize {
    let scale = (1u64 << kappa) as f64;
    (scale * (kappa as f64 * (2.0 * m.max(1) as f64).ln() + 1.0)).ceil() as usize
}

fn ln_binomial(m: usize, k: usize) -> f64 {
    (0..k).map(|i| ((m - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

fn verification_cost(m: usize, kappa: usize, members: usize) -> f64 {
    ln_binomial(m, kappa).exp() * members as f64
}

type FamilyCache = Mutex<HashMap<(usize, usize), Arc<UniversalFamily>>>;

static CACHE: OnceLock<FamilyCache> = OnceLock::new();

pub fn construct_universal(m: usize, kappa: usize) -> Result<Arc<UniversalFamily>, UniversalError> {
    if kappa > m {
        return Err(UniversalError::KappaAboveGround { m, kappa });
    }
    if kappa > MAX_KAPPA {
        return Err(UniversalError::KappaTooLarge(kappa));
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&(m, kappa)) {
        return Ok(Arc::clone(f));
    }
    let family = Arc::new(build(m, kappa));
    cache.lock().unwrap().insert((m, kappa), Arc::clone(&family));
    Ok(family)
}

fn build(m: usize, kappa: usize) -> UniversalFamily {
    if kappa == 0 {
        return UniversalFamily {
            ground_size: m,
            kappa,
            members: vec![BitSet::new(m)],
            certification: Certification::Verified,
        };
    }
    if kappa == 1 {
        // every singleton sees both traces in {∅, Ω}
        return UniversalFamily {
            ground_size: m,
            kappa,
            members: vec![BitSet::new(m), BitSet::from_indices(m, 0..m)],
            certification: Certification::Verified,
        };
    }
    let size = random_family_size(m, kappa);
    if m < 63 && (1u64 << m) as usize <= size {
        return power_set(m, kappa);
    }
    if verification_cost(m, kappa, size) <= VERIFICATION_BUDGET {
        for attempt in 0u64.. {
            let family = UniversalFamily {
                ground_size: m,
                kappa,
                members: random_members(m, size, seed_for(m, kappa, attempt)),
                certification: Certification::Verified,
            };
            if verify_universal(&family) {
                return family;
            }
        }
        unreachable!()
    }
    let scale = (1u64 << kappa) as f64;
    let size = (scale
        * (ln_binomial(m, kappa) + kappa as f64 * std::f64::consts::LN_2 + FAILURE_LOG2 * std::f64::consts::LN_2))
        .ceil() as usize;
    if m < 63 && (1u64 << m) as usize <= size {
        return power_set(m, kappa);
    }
    UniversalFamily {
        ground_size: m,
        kappa,
        members: random_members(m, size, seed_for(m, kappa, 0)),
        certification: Certification::Probabilistic { log2_failure: FAILURE_LOG2 },
    }
}

fn power_set(m: usize, kappa: usize) -> UniversalFamily {
    let members = (0u64..1 << m).map(|mask| BitSet::from_indices(m, (0..m).filter(|&i| mask >> i & 1 == 1))).collect();
    UniversalFamily { ground_size: m, kappa, members, certification: Certification::PowerSet }
}

fn seed_for(m: usize, kappa: usize, attempt: u64) -> u64 {
    (m as u64) << 40 ^ (kappa as u64) << 32 ^ attempt
}

fn random_members(m: usize, count: usize, seed: u64) -> Vec<BitSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tail = m % 64;
    (0..count)
        .map(|_| {
            let mut s = BitSet::new(m);
            for w in s.words.iter_mut() {
                *w = rng.next_u64();
            }
            if tail != 0 {
                if let Some(last) = s.words.last_mut() {
                    *last &= (1u64 << tail) - 1;
                }
            }
            s
        })
        .collect()
}

/// Exhaustive coverage check over all κ-subsets of the ground set.
pub fn verify_universal(family: &UniversalFamily) -> bool {
    let (m, kappa) = (family.ground_size, family.kappa);
    if kappa > m || kappa > MAX_KAPPA {
        return false;
    }
    if kappa == 0 {
        return !family.members.is_empty();
    }
    let mut traces = vec![0u32; family.members.len()];
    let mut seen = vec![0u64; (1usize << kappa).div_ceil(64)];
    let mut chosen = Vec::with_capacity(kappa);
    check_subsets(family, 0, &mut chosen, &mut traces, &mut seen)
}

fn check_subsets(
    family: &UniversalFamily,
    from: usize,
    chosen: &mut Vec<usize>,
    traces: &mut [u32],
    seen: &mut [u64],
) -> bool {
    let kappa = family.kappa;
    let depth = chosen.len();
    if depth == kappa {
        let full = 1usize << kappa;
        seen.iter_mut().for_each(|w| *w = 0);
        let mut distinct = 0;
        for &t in traces.iter() {
            let (w, b) = (t as usize / 64, t % 64);
            if seen[w] >> b & 1 == 0 {
                seen[w] |= 1 << b;
                distinct += 1;
                if distinct == full {
                    return true;
                }
            }
        }
        return false;
    }
    let remaining = kappa - depth;
    for e in from..=family.ground_size - remaining {
        let bit = 1u32 << depth;
        for (t, s) in traces.iter_mut().zip(&family.members) {
            if s.contains(e) {
                *t |= bit;
            } else {
                *t &= !bit;
            }
        }
        chosen.push(e);
        let ok = check_subsets(family, e + 1, chosen, traces, seen);
        chosen.pop();
        if !ok {
            return false;
        }
    }
    true
}
