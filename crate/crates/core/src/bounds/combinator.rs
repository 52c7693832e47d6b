//! Case-split arithmetic for independent sets through a fixed vertex pair.
//!
//! Every other member of such a set lies in one of the profile classes. For a
//! chosen set `S` of classes, either the set avoids `S` entirely, and so has at
//! most `base + Σ_{i∉S} a_i` members, or it contains some `w` from a class
//! `i ∈ S`, and then it has at most `base + 1 + b_i` members, where `b_i`
//! bounds the independence number once `w` and its neighbours are removed.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombinatorEntry {
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorOutcome {
    pub value: u64,
    /// Indices of the entries placed in `S`, ascending.
    pub chosen: Vec<usize>,
    pub avoid_arm: u64,
    /// `None` when `S` is empty.
    pub hit_arm: Option<u64>,
}

/// `min_S max(base + Σ_{i∉S} a_i, base + 1 + max_{i∈S} b_i)`.
///
/// For a fixed largest `b` in `S`, every entry with a smaller or equal `b`
/// belongs in `S` as well, so only prefixes of the entries sorted by `b`
/// need to be scanned.
pub fn subset_combinator(entries: &[CombinatorEntry], base: u64) -> CombinatorOutcome {
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by_key(|&i| (entries[i].b, i));

    let total_a: u64 = entries.iter().map(|e| e.a).sum();
    let mut best = CombinatorOutcome {
        value: base + total_a,
        chosen: Vec::new(),
        avoid_arm: base + total_a,
        hit_arm: None,
    };
    let mut outside = total_a;
    for (len, &i) in order.iter().enumerate() {
        outside -= entries[i].a;
        let avoid = base + outside;
        let hit = base + 1 + entries[i].b;
        let value = avoid.max(hit);
        if value < best.value {
            let mut chosen = order[..=len].to_vec();
            chosen.sort_unstable();
            best = CombinatorOutcome {
                value,
                chosen,
                avoid_arm: avoid,
                hit_arm: Some(hit),
            };
        }
    }
    best
}
