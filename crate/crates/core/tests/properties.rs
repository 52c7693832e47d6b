use std::sync::OnceLock;

use proptest::prelude::*;

use telepathy_core::graph::{survivor_subgraph, LevelGraph};
use telepathy_core::symmetry::{block_partition, mirror_permutation, profile_of, BlockPartition};
use telepathy_core::tables::PairCase;
use telepathy_core::{build_level_graph, complement, distance, Word};

fn width() -> impl Strategy<Value = u32> {
    prop_oneof![Just(4u32), Just(8), Just(16), Just(32)]
}

fn word_pair() -> impl Strategy<Value = (Word, Word, Word)> {
    width().prop_flat_map(|n| {
        let w = move |x: u64| Word::new((x & ((1u64 << n) - 1)) as u32, n).unwrap();
        (any::<u64>(), any::<u64>(), any::<u64>()).prop_map(move |(a, b, c)| (w(a), w(b), w(c)))
    })
}

proptest! {
    #[test]
    fn distance_is_a_metric((x, y, z) in word_pair()) {
        let d = |a, b| distance(a, b).unwrap();
        prop_assert_eq!(d(x, x), 0);
        prop_assert_eq!(d(x, y), d(y, x));
        prop_assert!(d(x, z) <= d(x, y) + d(y, z));
    }

    #[test]
    fn hex_and_bit_strings_round_trip((x, _, _) in word_pair()) {
        prop_assert_eq!(Word::from_hex(&x.to_hex(), x.width()).unwrap(), x);
        prop_assert_eq!(Word::from_bit_string(&x.to_bit_string(), x.width()).unwrap(), x);
    }

    /// Adjacent words (distance N/2, an even number) share weight parity.
    #[test]
    fn parity_separates_components((x, y, _) in word_pair()) {
        if distance(x, y).unwrap() == x.width() / 2 {
            prop_assert_eq!(x.weight() % 2, y.weight() % 2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn complement_reflects_distance((x, y, _) in word_pair()) {
        let n = x.width();
        let cy = complement(y, n).unwrap();
        prop_assert_eq!(distance(x, cy).unwrap(), n - distance(x, y).unwrap());
        prop_assert_eq!(complement(cy, n).unwrap(), y);
    }
}

fn d12() -> &'static (LevelGraph, BlockPartition) {
    static CELL: OnceLock<(LevelGraph, BlockPartition)> = OnceLock::new();
    CELL.get_or_init(|| {
        let level = build_level_graph(16, 6).unwrap();
        let (u, v) = PairCase::D12.pair();
        (survivor_subgraph(&level, &[u, v]).unwrap(), block_partition(u, v, 16).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    /// The u <-> v swap preserves adjacency among d=12 survivors and sends
    /// each profile class to its mirror.
    #[test]
    fn mirror_is_an_automorphism(i in 0usize..3056, j in 0usize..3056) {
        let (g, p) = d12();
        let pi = mirror_permutation(p).unwrap();
        let (x, y) = (g.vertices()[i], g.vertices()[j]);
        let (px, py) = (pi.apply(x), pi.apply(y));
        let (a, b) = (g.index_of(px), g.index_of(py));
        prop_assert!(a.is_some() && b.is_some());
        prop_assert_eq!(g.adjacency().adjacent(i, j), g.adjacency().adjacent(a.unwrap(), b.unwrap()));
        prop_assert_eq!(profile_of(px, p), profile_of(x, p).swapped());
    }
}
