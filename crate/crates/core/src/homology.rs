//! Integral homology of finite groups via the bar complex.
//!
//! This is the independent oracle for the Schur multiplier: the second
//! homology of the (non-normalized) bar complex, with boundaries
//! `d2[g|h] = [h] - [gh] + [g]` and
//! `d3[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]`, computed over the
//! integers with Smith normal form. Because the kernel of a map into a
//! free module is a direct summand, the torsion of `ker d2 / im d3`
//! equals the torsion of the cokernel of `d3`, so the invariant factors
//! come straight from the Smith form of `d3`; the expected vanishing of
//! the free rank is checked against the rank of `d2`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Default cap on `|G|` for bar-complex computations (the `d3` matrix
/// has `|G|^3` rows).
pub const DEFAULT_BAR_CAP: usize = 24;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntegerMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.entries[i * c + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }
}

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix, zeros at
/// the tail; `rank` counts the nonzero factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigUint>,
    pub rank: usize,
}

impl SmithForm {
    /// The factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .filter(|d| **d > BigUint::one())
            .map(|d| u64::try_from(d).expect("torsion factor fits in u64"))
            .collect()
    }
}

/// Diagonalizes by elementary row/column operations, always pivoting on
/// a minimal-absolute-value entry, then folds the diagonal into a
/// divisibility chain.
pub fn smith_normal_form(matrix: &IntegerMatrix) -> SmithForm {
    let mut m = matrix.clone();
    let (rows, cols) = (m.rows, m.cols);
    let limit = rows.min(cols);
    let mut diagonal: Vec<BigInt> = Vec::new();

    for k in 0..limit {
        let Some((mut pi, mut pj)) = min_abs_pivot(&m, k) else {
            break;
        };
        loop {
            m.swap_rows(k, pi);
            m.swap_cols(k, pj);
            // clear column k below/above with division steps
            let mut clean = true;
            for i in 0..rows {
                if i == k || m.get(i, k).is_zero() {
                    continue;
                }
                let q = m.get(i, k) / m.get(k, k);
                if !q.is_zero() {
                    m.row_sub(i, k, &q);
                }
                if !m.get(i, k).is_zero() {
                    clean = false;
                }
            }
            for j in 0..cols {
                if j == k || m.get(k, j).is_zero() {
                    continue;
                }
                let q = m.get(k, j) / m.get(k, k);
                if !q.is_zero() {
                    m.col_sub(j, k, &q);
                }
                if !m.get(k, j).is_zero() {
                    clean = false;
                }
            }
            if clean
                && (0..rows).all(|i| i == k || m.get(i, k).is_zero())
                && (0..cols).all(|j| j == k || m.get(k, j).is_zero())
            {
                break;
            }
            let (ni, nj) = min_abs_pivot(&m, k).expect("nonzero block keeps a pivot");
            (pi, pj) = (ni, nj);
        }
        diagonal.push(m.get(k, k).abs());
    }

    // enforce d_i | d_{i+1} by gcd/lcm folding on the diagonal
    let count = diagonal.len();
    for i in 0..count {
        for j in i + 1..count {
            let a = diagonal[i].clone();
            let b = diagonal[j].clone();
            if (&b % &a).is_zero() {
                continue;
            }
            let g = gcd_big(&a, &b);
            let l = &a / &g * &b;
            diagonal[i] = g;
            diagonal[j] = l;
        }
    }

    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    let mut invariant_factors: Vec<BigUint> = diagonal
        .into_iter()
        .map(|d| d.to_biguint().expect("absolute values"))
        .collect();
    invariant_factors.resize(limit, BigUint::zero());
    SmithForm {
        invariant_factors,
        rank,
    }
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn min_abs_pivot(m: &IntegerMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..m.rows {
        for j in k..m.cols {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((_, _, current)) if *current <= a => {}
                _ => best = Some((i, j, a)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

impl IntegerMatrix {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * self.get(k, j);
            let v = self.get(i, j) - delta;
            self.set(i, j, v);
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * self.get(i, k);
            let v = self.get(i, j) - delta;
            self.set(i, j, v);
        }
    }
}

/// Sparse integer matrix reduced destructively: unit pivots are
/// eliminated sparsely (each contributes an invariant factor 1), and
/// whatever remains is densified and finished by [`smith_normal_form`].
struct SparseReducer {
    cols: usize,
    /// live rows, each sorted by column
    rows: Vec<Vec<(u32, i128)>>,
}

impl SparseReducer {
    fn new(cols: usize) -> Self {
        SparseReducer { cols, rows: Vec::new() }
    }

    fn push_row(&mut self, mut entries: Vec<(u32, i128)>) {
        entries.retain(|&(_, v)| v != 0);
        entries.sort_unstable_by_key(|&(c, _)| c);
        if !entries.is_empty() {
            self.rows.push(entries);
        }
    }

    /// Returns (rank, torsion factors > 1).
    fn reduce(mut self) -> (usize, Vec<u64>) {
        let mut unit_rank = 0usize;
        loop {
            // pick a +-1 pivot minimizing fill: fewest entries in its row
            let mut col_count = vec![0u32; self.cols];
            for row in &self.rows {
                for &(c, _) in row {
                    col_count[c as usize] += 1;
                }
            }
            let mut pivot: Option<(usize, u32, u64)> = None; // (row, col, score)
            for (ri, row) in self.rows.iter().enumerate() {
                for &(c, v) in row {
                    if v == 1 || v == -1 {
                        let score =
                            (row.len() as u64 - 1) * (col_count[c as usize] as u64 - 1);
                        if pivot.map_or(true, |(_, _, s)| score < s) {
                            pivot = Some((ri, c, score));
                        }
                        if score == 0 {
                            break;
                        }
                    }
                }
                if matches!(pivot, Some((_, _, 0))) {
                    break;
                }
            }
            let Some((pr, pc, _)) = pivot else { break };
            let pivot_row = self.rows.swap_remove(pr);
            let pivot_value = pivot_row
                .iter()
                .find(|&&(c, _)| c == pc)
                .expect("pivot entry")
                .1;
            let mut next_rows = Vec::with_capacity(self.rows.len());
            for row in self.rows.drain(..) {
                let coeff = row
                    .iter()
                    .find(|&&(c, _)| c == pc)
                    .map(|&(_, v)| v)
                    .unwrap_or(0);
                if coeff == 0 {
                    next_rows.push(row);
                    continue;
                }
                // row -= (coeff / pivot_value) * pivot_row
                let factor = coeff / pivot_value;
                let merged = merge_rows(&row, &pivot_row, factor, pc);
                if !merged.is_empty() {
                    next_rows.push(merged);
                }
            }
            self.rows = next_rows;
            unit_rank += 1;
        }

        if self.rows.is_empty() {
            return (unit_rank, Vec::new());
        }
        // densify the leftover block on its occupied columns
        let mut used: Vec<u32> = self
            .rows
            .iter()
            .flat_map(|r| r.iter().map(|&(c, _)| c))
            .collect();
        used.sort_unstable();
        used.dedup();
        let col_index: std::collections::HashMap<u32, usize> =
            used.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = IntegerMatrix::zero(self.rows.len(), used.len());
        for (i, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                dense.set(i, col_index[&c], BigInt::from(v));
            }
        }
        let snf = smith_normal_form(&dense);
        (unit_rank + snf.rank, snf.torsion())
    }
}

/// `row - factor * pivot_row`, dropping the pivot column entirely.
fn merge_rows(
    row: &[(u32, i128)],
    pivot_row: &[(u32, i128)],
    factor: i128,
    pivot_col: u32,
) -> Vec<(u32, i128)> {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot_row.len() {
        let ci = row.get(i).map(|&(c, _)| c).unwrap_or(u32::MAX);
        let cj = pivot_row.get(j).map(|&(c, _)| c).unwrap_or(u32::MAX);
        if ci < cj {
            if ci != pivot_col {
                out.push(row[i]);
            }
            i += 1;
        } else if cj < ci {
            if cj != pivot_col {
                let v = pivot_row[j]
                    .1
                    .checked_mul(factor)
                    .expect("sparse reduction overflow");
                out.push((cj, -v));
            }
            j += 1;
        } else {
            if ci != pivot_col {
                let v = row[i].1
                    - pivot_row[j]
                        .1
                        .checked_mul(factor)
                        .expect("sparse reduction overflow");
                if v != 0 {
                    out.push((ci, v));
                }
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// First integral homology: the abelianization's invariant factors
/// (greater than one).
pub fn bar_h1(group: &FiniteGroup) -> Result<Vec<u64>> {
    bar_h1_with_cap(group, DEFAULT_BAR_CAP)
}

pub fn bar_h1_with_cap(group: &FiniteGroup, cap: usize) -> Result<Vec<u64>> {
    let n = group.order();
    if n > cap {
        return Err(Error::GroupTooLarge { order: n, cap });
    }
    let mut reducer = SparseReducer::new(n);
    for g in 0..n {
        for h in 0..n {
            reducer.push_row(boundary2_row(group, g, h));
        }
    }
    let (rank, torsion) = reducer.reduce();
    // H1 of a finite group is finite: the boundary must hit a full-rank
    // sublattice of the chain group.
    assert_eq!(rank, n, "first boundary must have full rank");
    Ok(torsion)
}

/// Second integral homology of the group, as invariant factors greater
/// than one. This is the Schur multiplier oracle.
pub fn bar_h2(group: &FiniteGroup) -> Result<Vec<u64>> {
    bar_h2_with_cap(group, DEFAULT_BAR_CAP)
}

pub fn bar_h2_with_cap(group: &FiniteGroup, cap: usize) -> Result<Vec<u64>> {
    let n = group.order();
    if n > cap {
        return Err(Error::GroupTooLarge { order: n, cap });
    }
    let idx2 = |a: usize, b: usize| (a * n + b) as u32;

    let mut d2 = SparseReducer::new(n);
    for g in 0..n {
        for h in 0..n {
            d2.push_row(boundary2_row(group, g, h));
        }
    }
    let (rank_d2, _) = d2.reduce();

    let mut d3 = SparseReducer::new(n * n);
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                // [h|k] - [gh|k] + [g|hk] - [g|h]
                let mut entries = vec![
                    (idx2(h, k), 1i128),
                    (idx2(group.mul(g, h), k), -1),
                    (idx2(g, group.mul(h, k)), 1),
                    (idx2(g, h), -1),
                ];
                combine_duplicates(&mut entries);
                d3.push_row(entries);
            }
        }
    }
    let (rank_d3, torsion) = d3.reduce();

    let kernel_rank = n * n - rank_d2;
    assert_eq!(
        kernel_rank, rank_d3,
        "second homology of a finite group has no free part"
    );
    Ok(torsion)
}

fn boundary2_row(group: &FiniteGroup, g: usize, h: usize) -> Vec<(u32, i128)> {
    // [h] - [gh] + [g]
    let mut entries = vec![
        (h as u32, 1i128),
        (group.mul(g, h) as u32, -1),
        (g as u32, 1),
    ];
    combine_duplicates(&mut entries);
    entries
}

fn combine_duplicates(entries: &mut Vec<(u32, i128)>) {
    entries.sort_unstable_by_key(|&(c, _)| c);
    let mut out: Vec<(u32, i128)> = Vec::with_capacity(entries.len());
    for &(c, v) in entries.iter() {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    *entries = out;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(m: usize) -> FiniteGroup {
        let rows: Vec<Vec<usize>> =
            (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
        FiniteGroup::from_cayley_table(&rows).unwrap()
    }

    fn sym3() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    fn dihedral8() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(4, &[vec![1, 2, 3, 0], vec![2, 1, 0, 3]]).unwrap()
    }

    #[test]
    fn smith_form_of_identity() {
        let m = IntegerMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 3);
        assert_eq!(
            snf.invariant_factors,
            vec![BigUint::one(), BigUint::one(), BigUint::one()]
        );
        assert!(snf.torsion().is_empty());
    }

    #[test]
    fn smith_form_of_two_by_two() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 2);
        assert_eq!(
            snf.invariant_factors,
            vec![BigUint::from(2u32), BigUint::from(4u32)]
        );
    }

    #[test]
    fn smith_form_of_zero_matrix() {
        let m = IntegerMatrix::zero(2, 3);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 0);
        assert_eq!(snf.invariant_factors, vec![BigUint::zero(); 2]);
    }

    #[test]
    fn smith_form_divisibility_chain() {
        // diag(2, 3, 4): d1 = gcd = 1, d1*d2 = gcd of 2x2 minors = 2,
        // product = |det| = 24
        let m = IntegerMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 4]]);
        let snf = smith_normal_form(&m);
        let f: Vec<u64> = snf
            .invariant_factors
            .iter()
            .map(|d| u64::try_from(d).unwrap())
            .collect();
        assert_eq!(f, vec![1, 2, 12]);
    }

    #[test]
    fn h1_matches_abelianization() {
        assert_eq!(bar_h1(&cyclic(4)).unwrap(), vec![4]);
        assert_eq!(bar_h1(&sym3()).unwrap(), vec![2]);
        assert_eq!(bar_h1(&dihedral8()).unwrap(), vec![2, 2]);
        let z2z4 = cyclic(2).direct_product(&cyclic(4));
        assert_eq!(bar_h1(&z2z4).unwrap(), vec![2, 4]);
    }

    #[test]
    fn h1_agrees_with_derived_quotient() {
        for g in [sym3(), dihedral8(), cyclic(6)] {
            let q = g.quotient(&g.derived_subgroup()).unwrap();
            let expected: Vec<u64> = q
                .abelian_invariant_factors()
                .unwrap()
                .into_iter()
                .filter(|&d| d > 1)
                .collect();
            assert_eq!(bar_h1(&g).unwrap(), expected, "{g:?}");
        }
    }

    #[test]
    fn h2_of_cyclic_groups_is_trivial() {
        for m in 1..=8 {
            assert_eq!(bar_h2(&cyclic(m)).unwrap(), Vec::<u64>::new(), "Z_{m}");
        }
    }

    #[test]
    fn h2_of_klein_group() {
        let klein = cyclic(2).direct_product(&cyclic(2));
        assert_eq!(bar_h2(&klein).unwrap(), vec![2]);
    }

    #[test]
    fn h2_of_dihedral8() {
        assert_eq!(bar_h2(&dihedral8()).unwrap(), vec![2]);
    }

    #[test]
    fn h2_of_sym3_is_trivial() {
        assert_eq!(bar_h2(&sym3()).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn cap_is_enforced() {
        let g = cyclic(6);
        assert!(matches!(
            bar_h2_with_cap(&g, 4),
            Err(Error::GroupTooLarge { order: 6, cap: 4 })
        ));
    }
}
