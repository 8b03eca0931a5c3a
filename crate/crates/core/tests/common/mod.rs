//! Group builders shared by the integration tests.

use wedgedeg_core::group::FiniteGroup;
use wedgedeg_core::presentation::{coset_action_to_group, todd_coxeter, Presentation, Word};

pub fn cyclic(m: usize) -> FiniteGroup {
    let rows: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
    FiniteGroup::from_cayley_table(&rows)
        .unwrap()
        .with_label(format!("Z{m}"))
}

pub fn sym3() -> FiniteGroup {
    FiniteGroup::from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]])
        .unwrap()
        .with_label("S3")
}

pub fn sym4() -> FiniteGroup {
    FiniteGroup::from_permutation_generators(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
        .unwrap()
        .with_label("S4")
}

pub fn alt4() -> FiniteGroup {
    FiniteGroup::from_permutation_generators(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
        .unwrap()
        .with_label("A4")
}

pub fn dihedral_perm(order: usize) -> FiniteGroup {
    assert!(order >= 4 && order % 2 == 0);
    let n = order / 2;
    let group = if n == 2 {
        // the n-gon action degenerates for n = 2; use two disjoint swaps
        FiniteGroup::from_permutation_generators(4, &[vec![1, 0, 2, 3], vec![0, 1, 3, 2]]).unwrap()
    } else {
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutation_generators(n, &[rotation, reflection]).unwrap()
    };
    assert_eq!(group.order(), order);
    group.with_label(format!("D{order}"))
}

/// Dihedral group of order `2n` presented as
/// `<a, b | a^2, b^n, (ab)^2>`.
pub fn dihedral_presented(order: usize) -> FiniteGroup {
    assert!(order >= 4 && order % 2 == 0);
    let n = order / 2;
    let mut bn = vec![2i32; n];
    let relators = vec![
        Word::new(vec![1, 1]).unwrap(),
        Word::new(std::mem::take(&mut bn)).unwrap(),
        Word::new(vec![1, 2, 1, 2]).unwrap(),
    ];
    let p = Presentation::new(2, relators).unwrap();
    let t = todd_coxeter(&p, &[], 4 * order).unwrap();
    assert_eq!(t.coset_count(), order);
    coset_action_to_group(&t, &p)
        .unwrap()
        .0
        .with_label(format!("D{order}"))
}

/// Generalized quaternion (dicyclic) group of order `4n` presented as
/// `<a, b | a^n = b^2 = (ab)^2>`.
pub fn quaternion_presented(order: usize) -> FiniteGroup {
    assert!(order >= 4 && order % 4 == 0);
    let n = order / 4;
    let mut r1: Vec<i32> = vec![1; n];
    r1.extend([-2, -2]);
    let r2 = vec![2, 2, -2, -1, -2, -1];
    let p = Presentation::new(2, vec![Word::new(r1).unwrap(), Word::new(r2).unwrap()]).unwrap();
    let t = todd_coxeter(&p, &[], 16 * order).unwrap();
    assert_eq!(t.coset_count(), order, "dicyclic presentation has order 4n");
    coset_action_to_group(&t, &p)
        .unwrap()
        .0
        .with_label(format!("Q{order}"))
}
