//! Randomized invariants: Smith forms are blind to row/column order and
//! transposition, the subset tuple recursion matches direct enumeration,
//! and free reduction behaves like a group word should.

mod common;

use proptest::prelude::*;

use common::dihedral_perm;
use wedgedeg_core::bitset::Bitset;
use wedgedeg_core::degrees::{relation_graph, tuple_count, RelationKind};
use wedgedeg_core::homology::{smith_normal_form, IntegerMatrix};
use wedgedeg_core::presentation::Word;

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-12i64..=12, c), r)
    })
}

fn gcdineq(rows: &[Vec<i64>]) -> u64 {
    let mut g: u64 = 0;
    for row in rows {
        for &v in row {
            g = num_integer::gcd(g, v.unsigned_abs());
        }
    }
    g
}

proptest! {
    #[test]
    fn smith_form_ignores_row_and_column_shuffles(
        rows in matrix_strategy(),
        row_seed in 0usize..24,
        col_seed in 0usize..24,
    ) {
        let base = smith_normal_form(&IntegerMatrix::from_rows(&rows));

        let mut shuffled = rows.clone();
        shuffled.rotate_left(row_seed % shuffled.len().max(1));
        let cols = shuffled[0].len();
        for row in &mut shuffled {
            row.rotate_left(col_seed % cols);
        }
        let permuted = smith_normal_form(&IntegerMatrix::from_rows(&shuffled));
        prop_assert_eq!(&base, &permuted);

        let transposed: Vec<Vec<i64>> = (0..cols)
            .map(|j| rows.iter().map(|row| row[j]).collect())
            .collect();
        let flipped = smith_normal_form(&IntegerMatrix::from_rows(&transposed));
        prop_assert_eq!(
            base.invariant_factors.iter().filter(|d| !num_traits::Zero::is_zero(*d)).collect::<Vec<_>>(),
            flipped.invariant_factors.iter().filter(|d| !num_traits::Zero::is_zero(*d)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn smith_form_divisibility_and_gcd(rows in matrix_strategy()) {
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&rows));
        for pair in snf.invariant_factors.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if !num_traits::Zero::is_zero(a) {
                prop_assert!(num_traits::Zero::is_zero(&(b % a)), "chain broke: {a} | {b}");
            } else {
                prop_assert!(num_traits::Zero::is_zero(b));
            }
        }
        let g = gcdineq(&rows);
        if g == 0 {
            prop_assert_eq!(snf.rank, 0);
        } else {
            prop_assert_eq!(snf.invariant_factors[0].clone(), g.into());
        }
    }

    #[test]
    fn tuple_counts_match_enumeration_on_subsets(
        members in proptest::collection::vec(any::<bool>(), 8),
        n in 0usize..=3,
    ) {
        let group = dihedral_perm(8);
        let graph = relation_graph(&group, RelationKind::Commuting, None).unwrap();
        let subset = Bitset::from_indices(8, members.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
        let fast = tuple_count(&graph, &subset, n);

        let elements: Vec<usize> = subset.iter().collect();
        let mut slow = 0u64;
        let mut tuple = vec![0usize; n + 1];
        if !elements.is_empty() {
            loop {
                let ok = (0..=n).all(|i| {
                    (i + 1..=n).all(|j| graph.related(elements[tuple[i]], elements[tuple[j]]))
                });
                if ok {
                    slow += 1;
                }
                let mut slot = n + 1;
                for s in (0..=n).rev() {
                    tuple[s] += 1;
                    if tuple[s] < elements.len() {
                        slot = s;
                        break;
                    }
                    tuple[s] = 0;
                }
                if slot == n + 1 {
                    break;
                }
            }
        }
        prop_assert_eq!(fast, slow.into());
    }

    #[test]
    fn words_cancel_against_their_inverses(letters in proptest::collection::vec(
        (1i32..=4, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g }),
        0..12,
    )) {
        let word = Word::new(letters.clone()).unwrap();
        let mut doubled = word.letters().to_vec();
        doubled.extend(word.inverse().letters());
        prop_assert!(Word::new(doubled).unwrap().is_empty());
        prop_assert_eq!(word.inverse().inverse().letters(), word.letters());
    }
}
