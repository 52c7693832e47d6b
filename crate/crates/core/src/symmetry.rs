//! Block structure around a fixed vertex pair `(u, v)` and the profile
//! classes of third vertices.
//!
//! Positions split into four blocks: `U` (only in `u`), `S` (shared), `V`
//! (only in `v`) and `O` (outside both). Permuting positions inside each block
//! fixes `u` and `v`, so a third vertex is determined up to that group by its
//! per-block weights, its [`Profile`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hamming::{binomial, check_width, distance, LevelIter, Word};
use crate::tables::{reference_word, PairCase};

pub const BLOCK_NAMES: [&str; 4] = ["U", "S", "V", "O"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    width: u32,
    u: Word,
    v: Word,
    blocks: [Vec<u32>; 4],
}

impl BlockPartition {
    pub fn blocks(&self) -> &[Vec<u32>; 4] {
        &self.blocks
    }

    pub fn sizes(&self) -> [u32; 4] {
        [0, 1, 2, 3].map(|i| self.blocks[i].len() as u32)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn pair(&self) -> (Word, Word) {
        (self.u, self.v)
    }
}

pub fn block_partition(u: Word, v: Word, width: u32) -> Result<BlockPartition> {
    check_width(width)?;
    if u.width() != width || v.width() != width {
        return Err(Error::usage(format!(
            "pair ({u}, {v}) is not of length {width}"
        )));
    }
    if u == v {
        return Err(Error::usage(format!(
            "block partition needs u != v, got {u} twice"
        )));
    }
    let mut blocks: [Vec<u32>; 4] = Default::default();
    for pos in 0..width {
        let slot = match (u.bit(pos), v.bit(pos)) {
            (true, false) => 0,
            (true, true) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        blocks[slot].push(pos);
    }
    Ok(BlockPartition {
        width,
        u,
        v,
        blocks,
    })
}

/// Per-block weights `(wU, wS, wV, wO)` of a word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(pub [u32; 4]);

impl Profile {
    pub fn weight(self) -> u32 {
        self.0.iter().sum()
    }

    /// `wU` and `wV` exchanged.
    pub fn swapped(self) -> Profile {
        let [a, b, c, d] = self.0;
        Profile([c, b, a, d])
    }

    /// File-name friendly form, e.g. `0-0-3-3`.
    pub fn slug(self) -> String {
        let [a, b, c, d] = self.0;
        format!("{a}-{b}-{c}-{d}")
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("malformed profile {s:?}"));
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts: Vec<u32> = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let arr: [u32; 4] = parts.try_into().map_err(|_| bad())?;
        Ok(Profile(arr))
    }
}

pub fn profile_of(w: Word, p: &BlockPartition) -> Profile {
    Profile([0, 1, 2, 3].map(|i| p.blocks[i].iter().filter(|&&pos| w.bit(pos)).count() as u32))
}

/// Number of words with this profile: product of per-block binomials.
pub fn orbit_size(profile: Profile, p: &BlockPartition) -> u64 {
    profile
        .0
        .iter()
        .zip(p.sizes())
        .map(|(&w, size)| binomial(size as u64, w as u64))
        .product()
}

/// Fills the lowest positions of each block.
pub fn representative(profile: Profile, p: &BlockPartition) -> Result<Word> {
    let mut bits = 0u32;
    for (i, block) in p.blocks.iter().enumerate() {
        let want = profile.0[i] as usize;
        if want > block.len() {
            return Err(Error::usage(format!(
                "profile {profile} exceeds block {} of size {}",
                BLOCK_NAMES[i],
                block.len()
            )));
        }
        for &pos in &block[..want] {
            bits |= 1 << pos;
        }
    }
    Word::new(bits, p.width)
}

/// A position permutation; `image[i]` is where position `i` is sent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<u32>,
}

impl Permutation {
    pub fn identity(width: u32) -> Self {
        Permutation {
            image: (0..width).collect(),
        }
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn apply(&self, w: Word) -> Word {
        let mut bits = 0u32;
        for pos in w.support() {
            bits |= 1 << self.image[pos as usize];
        }
        Word::from_raw(bits, w.width())
    }

    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &j)| self.image[j as usize] as usize == i)
    }
}

/// The `u <-> v` swap: pairs the `U` and `V` blocks position by position in
/// ascending order and fixes `S` and `O`. Requires `|U| = |V|`.
pub fn mirror_permutation(p: &BlockPartition) -> Result<Permutation> {
    let [uu, _, vv, _] = &p.blocks;
    if uu.len() != vv.len() {
        return Err(Error::usage(format!(
            "mirror needs |U| = |V|, got {} and {}",
            uu.len(),
            vv.len()
        )));
    }
    let mut perm = Permutation::identity(p.width);
    for (&a, &b) in uu.iter().zip(vv) {
        perm.image[a as usize] = b;
        perm.image[b as usize] = a;
    }
    Ok(perm)
}

pub fn mirror(profile: Profile, p: &BlockPartition) -> Result<(Profile, Permutation)> {
    Ok((profile.swapped(), mirror_permutation(p)?))
}

/// One profile class of third vertices relative to a fixed pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRecord {
    pub profile: Profile,
    pub representative: Word,
    pub orbit_size: u64,
    /// 1-based row in the reference table, when the class appears there.
    pub listed: Option<usize>,
    pub mirror: Profile,
}

impl TypeRecord {
    pub fn is_listed(&self) -> bool {
        self.listed.is_some()
    }

    pub fn is_self_mirror(&self) -> bool {
        self.mirror == self.profile
    }
}

/// Weight-`k` words that are neither `u`, `v`, nor adjacent to either.
pub fn pair_survivors(u: Word, v: Word, k: u32, width: u32) -> Vec<Word> {
    let half = width / 2;
    LevelIter::new(width, k)
        .filter(|&w| w != u && w != v)
        .filter(|&w| {
            distance(w, u).is_ok_and(|d| d != half)
                && distance(w, v).is_ok_and(|d| d != half)
        })
        .collect()
}

/// Groups the survivors of `(u, v)` in level `k` by profile.
pub fn enumerate_types(u: Word, v: Word, k: u32, width: u32) -> Result<Vec<TypeRecord>> {
    let p = block_partition(u, v, width)?;
    if u.weight() != k || v.weight() != k {
        return Err(Error::usage(format!("pair ({u}, {v}) is not on level {k}")));
    }
    if distance(u, v)? == width / 2 {
        return Err(Error::usage(format!("pair ({u}, {v}) is adjacent")));
    }
    let mut counts: BTreeMap<Profile, u64> = BTreeMap::new();
    for w in pair_survivors(u, v, k, width) {
        *counts.entry(profile_of(w, &p)).or_default() += 1;
    }
    let listed = listed_profiles(&p);
    counts
        .into_iter()
        .map(|(profile, count)| {
            let orbit = orbit_size(profile, &p);
            if orbit != count {
                return Err(Error::Invariant(format!(
                    "profile {profile} has {count} survivors but orbit size {orbit}"
                )));
            }
            Ok(TypeRecord {
                profile,
                representative: representative(profile, &p)?,
                orbit_size: orbit,
                listed: listed.iter().position(|&q| q == profile).map(|i| i + 1),
                mirror: profile.swapped(),
            })
        })
        .collect()
}

/// Profiles of the reference rows, when `(u, v)` is one of the canonical pairs.
fn listed_profiles(p: &BlockPartition) -> Vec<Profile> {
    PairCase::ALL
        .into_iter()
        .find(|case| case.pair() == p.pair())
        .map(|case| {
            case.reference_rows()
                .iter()
                .map(|row| profile_of(reference_word(row), p))
                .collect()
        })
        .unwrap_or_default()
}

/// Type census for one canonical case of `G_16`, level 6.
pub fn case_types(case: PairCase) -> Result<Vec<TypeRecord>> {
    let (u, v) = case.pair();
    enumerate_types(u, v, 6, 16)
}
