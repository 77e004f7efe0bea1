use std::collections::HashSet;

use proptest::prelude::*;

use hexdomino::correspondences::{
    lemma2_from_single, lemma2_to_single, lemma3_from_single, lemma3_to_single, thm2_map_from, THM2_EXTENDED_MIN_N,
};
use hexdomino::identities::list_identities;
use hexdomino::{
    classify_diagonal, fibonacci_comb, tetranacci, CrossingDescriptor, Enumerator, Tile, TileClass, TileClassSet,
    TileKind, Tiling,
};

/// Builds a tiling of length `n` by always covering the lowest free cell,
/// picking among the legal tiles with the next choice byte.
fn build(n: u32, classes: TileClassSet, choices: &[u8]) -> Option<Tiling> {
    let mut covered = vec![false; n as usize + 3];
    let mut tiles = Vec::new();
    let mut next = choices.iter().copied().cycle();
    let mut c = 1;
    while c <= n {
        if covered[c as usize] {
            c += 1;
            continue;
        }
        let options: Vec<Tile> = [Tile::square(c), Tile::inclined(c + 1), Tile::horizontal(c + 2)]
            .into_iter()
            .filter(|t| t.location <= n && t.cells().into_iter().all(|k| !covered[k as usize]))
            .filter(|t| classes.contains(t.class()))
            .collect();
        if options.is_empty() {
            return None;
        }
        let pick = options[next.next().unwrap_or(0) as usize % options.len()];
        for k in pick.cells() {
            covered[k as usize] = true;
        }
        tiles.push(pick);
    }
    Some(Tiling::from_unsorted(n, tiles).expect("built tiling is valid"))
}

fn tiling(max_n: u32) -> impl Strategy<Value = Tiling> {
    (0..=max_n, prop::collection::vec(any::<u8>(), 1..64))
        .prop_map(|(n, choices)| build(n, TileClassSet::ALL, &choices).unwrap())
}

fn restricted(max_n: u32, classes: TileClassSet) -> impl Strategy<Value = Tiling> {
    (0..=max_n, prop::collection::vec(any::<u8>(), 1..64))
        .prop_filter_map("no tiling of that length", move |(n, choices)| build(n, classes, &choices))
}

/// Choice made at each lowest free cell: 0 square, 1 inclined, 2 horizontal.
fn choice_sequence(t: &Tiling) -> Vec<u8> {
    let mut seq = Vec::new();
    let mut covered = vec![false; t.len() as usize + 1];
    for c in 1..=t.len() {
        if covered[c as usize] {
            continue;
        }
        let tile = t.tile_at(c).unwrap();
        seq.push(match tile.kind {
            TileKind::Square => 0,
            TileKind::Inclined => 1,
            TileKind::Horizontal => 2,
        });
        for k in tile.cells() {
            covered[k as usize] = true;
        }
    }
    seq
}

proptest! {
    #[test]
    fn tokens_round_trip(t in tiling(80)) {
        let back = Tiling::parse_tokens(&t.to_tokens(), t.len()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn every_cell_covered_once(t in tiling(80)) {
        let total: usize = t.tiles().iter().map(|tile| tile.cells().len()).sum();
        prop_assert_eq!(total, t.len() as usize);
        for c in 1..=t.len() {
            prop_assert!(t.tile_at(c).unwrap().covers(c));
        }
        prop_assert!(t.tiles().windows(2).all(|w| w[0].location < w[1].location));
    }

    #[test]
    fn breakable_iff_split(t in tiling(60)) {
        for d in 0..=t.len() {
            let breakable = t.is_breakable(d).unwrap();
            prop_assert_eq!(breakable, t.crossing(d).next().is_none());
            match t.split_at(d) {
                Ok((a, b)) => {
                    prop_assert!(breakable);
                    prop_assert_eq!((a.len(), b.len()), (d, t.len() - d));
                    prop_assert_eq!(a.tiles().len() + b.tiles().len(), t.tiles().len());
                }
                Err(_) => prop_assert!(!breakable),
            }
        }
    }

    #[test]
    fn crossing_has_at_most_two_tiles(t in tiling(60)) {
        for d in 0..=t.len() {
            let crossing: Vec<_> = t.crossing(d).collect();
            prop_assert!(crossing.len() <= 2);
            if crossing.len() == 2 {
                prop_assert!(crossing.iter().all(|c| c.kind == TileKind::Horizontal));
            }
        }
    }

    #[test]
    fn render_rows_and_inclined_orientation(t in tiling(40)) {
        let picture = t.render_ascii();
        let (upper, lower) = picture.split_once('\n').unwrap();
        prop_assert_eq!(upper.matches('[').count() as u32, t.len() / 2);
        prop_assert_eq!(lower.matches('[').count() as u32, t.len().div_ceil(2));
        for tile in t.tiles() {
            let class = tile.class();
            if tile.kind == TileKind::Inclined {
                let expect = if tile.location % 2 == 0 { TileClass::RightInclined } else { TileClass::LeftInclined };
                prop_assert_eq!(class, expect);
            }
            let label = format!("[{}{}]", class.letter(), tile.location);
            prop_assert_eq!(picture.matches(&label).count(), tile.cells().len());
        }
    }

    #[test]
    fn centre_breakable_iff_breakable_descriptor(t in tiling(40)) {
        if t.len() % 2 == 0 {
            let d = classify_diagonal(&t).unwrap();
            prop_assert_eq!(d == CrossingDescriptor::Breakable, t.is_breakable(t.len() / 2).unwrap());
        } else {
            prop_assert!(classify_diagonal(&t).is_err());
        }
    }

    #[test]
    fn doubling_images_are_valid(t in tiling(40)) {
        prop_assume!(t.len() + 1 >= THM2_EXTENDED_MIN_N);
        let (a, b, _) = thm2_map_from(&t, THM2_EXTENDED_MIN_N).unwrap();
        prop_assert_eq!(a.len(), t.len() + 1);
        prop_assert!(b.len() == t.len() + 1 || b.len() + 4 == t.len());
        prop_assert!(Tiling::new(b.len(), b.tiles().to_vec()).is_ok());
        prop_assert_ne!(a, b);
    }

    #[test]
    fn stretch_round_trip(t in restricted(60, TileClassSet::NO_HORIZONTAL)) {
        let s = lemma2_to_single(&t).unwrap();
        prop_assert_eq!(s.len(), t.len());
        prop_assert_eq!(lemma2_from_single(&s), t);
    }

    #[test]
    fn fold_round_trip(t in restricted(60, TileClassSet::NO_SQUARES)) {
        let s = lemma3_to_single(&t).unwrap();
        prop_assert_eq!(2 * s.len(), t.len());
        prop_assert_eq!(lemma3_from_single(&s), t);
    }

    #[test]
    fn recurrences(i in 4i64..600) {
        let t = |k| tetranacci(k).unwrap();
        prop_assert_eq!(t(i), t(i - 1) + t(i - 2) + t(i - 3) + t(i - 4));
        let f = |k| fibonacci_comb(k).unwrap();
        prop_assert_eq!(f(i), f(i - 1) + f(i - 2));
    }

    #[test]
    fn registry_evaluates(n in 0u32..=60) {
        for id in list_identities() {
            if n < id.n_min {
                continue;
            }
            let (lhs, rhs) = id.evaluate(n).unwrap();
            if !id.misprinted {
                prop_assert_eq!(lhs, rhs, "{} at n = {}", id.id, n);
            }
        }
    }
}

#[test]
fn canonical_order_and_no_duplicates() {
    let e = Enumerator::default();
    for n in 0..=12 {
        let all = e.enumerate(n, TileClassSet::ALL).unwrap();
        let seqs: Vec<Vec<u8>> = all.iter().map(choice_sequence).collect();
        assert!(seqs.windows(2).all(|w| w[0] < w[1]), "n = {n}");
        let distinct: HashSet<_> = all.iter().map(Tiling::to_tokens).collect();
        assert_eq!(distinct.len(), all.len());
        for t in &all {
            assert_eq!(&Tiling::parse_tokens(&t.to_tokens(), n).unwrap(), t);
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let e = Enumerator::default();
    for n in [7, 11] {
        assert_eq!(e.enumerate(n, TileClassSet::ALL).unwrap(), e.enumerate(n, TileClassSet::ALL).unwrap());
    }
}

#[test]
fn partitions_sum_to_total() {
    let e = Enumerator::default();
    for n in 0..=12 {
        let total = e.count(n, TileClassSet::ALL).unwrap();
        let parts = e.partition_by_first(n, TileClassSet::ANY_DOMINO).unwrap();
        assert_eq!(parts.values().sum::<hexdomino::BigCount>(), total);
    }
}

#[test]
fn misprinted_variants_differ_everywhere() {
    for id in list_identities().iter().filter(|i| i.misprinted) {
        for n in id.n_min..=40 {
            let (lhs, rhs) = id.evaluate(n).unwrap();
            assert_ne!(lhs, rhs, "{} at n = {n}", id.id);
        }
    }
}
