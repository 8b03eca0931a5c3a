//! Exact commutativity and exterior degrees.
//!
//! `commuting_degree_n(G, n)` is the probability that `n + 1` uniform
//! elements pairwise commute; `exterior_degree_n` replaces commuting by
//! triviality of the exterior pairing. Both are computed exactly as
//! rationals via a memoized subset recursion over the relation graph,
//! reduced over conjugacy classes, and both come with an independent
//! brute-force evaluator for cross-checking.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub use num_rational::BigRational;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup};
use crate::wedge::{exterior_square, PairConfig, PairingMode, TensorStructure};

/// Default cap on the tuple space `|G|^(n+1)` a brute-force evaluation
/// may enumerate.
pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Commuting,
    WedgeTrivial,
}

/// Symmetric, reflexive relation on the elements of a group, one bitset
/// row per element.
pub struct RelationGraph {
    parent: FiniteGroup,
    kind: RelationKind,
    adjacency: Vec<Bitset>,
}

impl RelationGraph {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn row(&self, x: usize) -> &Bitset {
        &self.adjacency[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.adjacency[x].contains(y)
    }
}

/// Builds the relation graph of a group. The wedge-trivial kind needs an
/// exterior square over the same group; its rows are the exterior
/// centralizers, computed per conjugacy-class representative and
/// conjugated onto the rest of each class.
pub fn relation_graph(
    group: &FiniteGroup,
    kind: RelationKind,
    structure: Option<&TensorStructure>,
) -> Result<RelationGraph> {
    let n = group.order();
    let adjacency = match kind {
        RelationKind::Commuting => (0..n)
            .map(|x| {
                Bitset::from_indices(n, (0..n).filter(|&y| group.mul(x, y) == group.mul(y, x)))
            })
            .collect::<Vec<_>>(),
        RelationKind::WedgeTrivial => {
            let s = structure.ok_or(Error::MissingExteriorStructure)?;
            if s.mode() != PairingMode::Exterior || !s.base().same_group(group) {
                return Err(Error::MissingExteriorStructure);
            }
            (0..n).map(|x| s.centralizer_row(x)).collect::<Result<Vec<_>>>()?
        }
    };
    let graph = RelationGraph {
        parent: group.clone(),
        kind,
        adjacency,
    };
    debug_assert!((0..n).all(|x| graph.related(x, x)), "relation must be reflexive");
    debug_assert!(
        (0..n).all(|x| (0..n).all(|y| graph.related(x, y) == graph.related(y, x))),
        "relation must be symmetric"
    );
    debug_assert_eq!(graph.row(0).count(), n, "identity relates to everything");
    Ok(graph)
}

type Memo = HashMap<(Bitset, usize), BigUint>;

fn count_tuples(graph: &RelationGraph, set: &Bitset, n: usize, memo: &mut Memo) -> BigUint {
    if n == 0 {
        return BigUint::from(set.count());
    }
    let key = (set.clone(), n);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for x in set.iter() {
        let restricted = set.intersection(graph.row(x));
        total += count_tuples(graph, &restricted, n - 1, memo);
    }
    memo.insert(key, total.clone());
    total
}

/// Number of `(n+1)`-tuples drawn from `set` whose entries are pairwise
/// related, with the relation always evaluated in the ambient group.
pub fn tuple_count(graph: &RelationGraph, set: &Bitset, n: usize) -> BigUint {
    let mut memo = Memo::new();
    count_tuples(graph, set, n, &mut memo)
}

/// Class-reduced count over the whole group: the outermost sum collapses
/// to conjugacy-class representatives weighted by class size, since both
/// relations are conjugation-equivariant.
fn class_reduced_group_count(graph: &RelationGraph, n: usize) -> BigUint {
    let group = graph.parent();
    let order = group.order();
    if n == 0 {
        return BigUint::from(order);
    }
    let classes = group.conjugacy_classes();
    let mut memo = Memo::new();
    let mut total = BigUint::zero();
    for (k, &rep) in classes.representatives.iter().enumerate() {
        let inner = count_tuples(graph, graph.row(rep), n - 1, &mut memo);
        total += BigUint::from(classes.sizes[k]) * inner;
    }
    total
}

fn degree_from_count(count: BigUint, order: usize, n: usize) -> BigRational {
    let denom = BigInt::from(order).pow(n as u32 + 1);
    BigRational::new(BigInt::from(count), denom)
}

/// Exact probability that `n + 1` uniform elements pairwise commute.
pub fn commutativity_degree_n(group: &FiniteGroup, n: usize) -> BigRational {
    let graph = relation_graph(group, RelationKind::Commuting, None)
        .expect("commuting graph needs no extra structure");
    degree_from_count(class_reduced_group_count(&graph, n), group.order(), n)
}

/// Exact probability that `n + 1` uniform elements are pairwise
/// wedge-trivial in the exterior square.
pub fn exterior_degree_n(
    group: &FiniteGroup,
    structure: &TensorStructure,
    n: usize,
) -> Result<BigRational> {
    let graph = relation_graph(group, RelationKind::WedgeTrivial, Some(structure))?;
    Ok(degree_from_count(
        class_reduced_group_count(&graph, n),
        group.order(),
        n,
    ))
}

/// Same degree by explicit enumeration of all `|G|^(n+1)` tuples; used
/// as an oracle against the recursion.
pub fn brute_force_degree(
    group: &FiniteGroup,
    n: usize,
    kind: RelationKind,
    structure: Option<&TensorStructure>,
    cap: u128,
) -> Result<BigRational> {
    let order = group.order();
    let space = (order as u128)
        .checked_pow(n as u32 + 1)
        .ok_or(Error::TooLarge { space: u128::MAX, cap })?;
    if space > cap {
        return Err(Error::TooLarge { space, cap });
    }
    let related: Box<dyn Fn(usize, usize) -> bool + '_> = match kind {
        RelationKind::Commuting => {
            Box::new(move |x, y| group.mul(x, y) == group.mul(y, x))
        }
        RelationKind::WedgeTrivial => {
            let s = structure.ok_or(Error::MissingExteriorStructure)?;
            if s.mode() != PairingMode::Exterior || !s.base().same_group(group) {
                return Err(Error::MissingExteriorStructure);
            }
            Box::new(move |x, y| s.pair(x, y) == 0)
        }
    };
    let mut tuple = vec![0usize; n + 1];
    let mut count = BigUint::zero();
    'outer: loop {
        let ok = (0..=n).all(|i| (i + 1..=n).all(|j| related(tuple[i], tuple[j])));
        if ok {
            count += BigUint::one();
        }
        for slot in (0..=n).rev() {
            tuple[slot] += 1;
            if tuple[slot] < order {
                continue 'outer;
            }
            tuple[slot] = 0;
        }
        break;
    }
    Ok(degree_from_count(count, order, n))
}

fn pow_big(base: u64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// Exterior degree of the dihedral group of order `2n` for `n + 1`
/// tuples of length `m + 1`: `(n^m + 2^(m+1) - 1) / (2 (2n)^m)`.
pub fn dihedral_closed_form(n: u64, m: u32) -> BigRational {
    assert!(n >= 2 && m >= 1, "dihedral closed form needs n >= 2, m >= 1");
    closed_form(n, m)
}

/// The generalized quaternion group of order `4n` has the same closed
/// form for both its commutativity and exterior degrees.
pub fn quaternion_closed_form(n: u64, m: u32) -> BigRational {
    assert!(n >= 1 && m >= 1, "quaternion closed form needs n >= 1, m >= 1");
    closed_form(n, m)
}

fn closed_form(n: u64, m: u32) -> BigRational {
    let numerator = pow_big(n, m) + pow_big(2, m + 1) - BigInt::one();
    let denominator = BigInt::from(2) * pow_big(2 * n, m);
    BigRational::new(numerator, denominator)
}

pub const COMMUTING_NONABELIAN_BOUND: &str = "commuting_nonabelian_bound";
pub const COMMUTING_CENTER_DERIVED_TRIVIAL_BOUND: &str = "commuting_center_derived_trivial_bound";
pub const EXTERIOR_GAP_BOUND: &str = "exterior_gap_bound";
pub const EXTERIOR_BASIC_BOUND: &str = "exterior_basic_bound";
pub const EXTERIOR_SMALL_EXTERIOR_CENTER_BOUND: &str = "exterior_small_exterior_center_bound";
pub const EXTERIOR_CYCLIC_CHARACTERIZATION: &str = "exterior_cyclic_characterization";
pub const EXTERIOR_DEGREES_DESCENDING: &str = "exterior_degrees_descending";
pub const EXTERIOR_BELOW_COMMUTING: &str = "exterior_below_commuting";
pub const EXTERIOR_CENTER_REFINEMENT_BOUND: &str = "exterior_center_refinement_bound";
pub const EXTERIOR_NONCYCLIC_BOUND: &str = "exterior_noncyclic_bound";
pub const EXTERIOR_PROPER_CENTER_BOUND: &str = "exterior_proper_center_bound";
pub const EXTERIOR_CAPABLE_BOUND: &str = "exterior_capable_bound";

/// One evaluated bound: `lhs <= rhs` with applicability and equality
/// bookkeeping. Inapplicable bounds still carry their evaluated sides
/// (when they make sense) but are not violations.
#[derive(Clone, Debug)]
pub struct TheoremEntry {
    pub id: &'static str,
    pub n: usize,
    pub applicable: bool,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
    pub equality: bool,
    /// For bounds carrying an equality criterion: whether the stated
    /// structural condition is met.
    pub equality_condition_met: Option<bool>,
}

#[derive(Clone, Debug, Default)]
pub struct TheoremReport {
    pub entries: Vec<TheoremEntry>,
}

impl TheoremReport {
    pub fn all_applicable_hold(&self) -> bool {
        self.entries.iter().all(|e| !e.applicable || e.holds)
    }

    /// Equality flags must fire exactly when the structural condition is
    /// met, for every applicable entry that has such a condition.
    pub fn equality_flags_consistent(&self) -> bool {
        self.entries.iter().all(|e| {
            !e.applicable
                || e.equality_condition_met
                    .map_or(true, |cond| cond == e.equality)
        })
    }

    pub fn violations(&self) -> Vec<&TheoremEntry> {
        self.entries
            .iter()
            .filter(|e| e.applicable && (!e.holds || !e.equality_condition_met.map_or(true, |c| c == e.equality)))
            .collect()
    }
}

/// Whether `G/S` is elementary abelian of rank 2 for a central-ish
/// subgroup `S`: index `p^2` and all `p`-th powers inside `S`.
fn quotient_is_elementary_rank_two(group: &FiniteGroup, subgroup: &ElementSet, p: u64) -> bool {
    let index = group.order() / subgroup.order();
    if index as u64 != p * p {
        return false;
    }
    (0..group.order()).all(|x| subgroup.contains(group.power(x, p)))
}

/// Evaluates every bound relating the degrees at level `n` and returns
/// the per-bound records.
pub fn verify_bounds(
    group: &FiniteGroup,
    structure: &TensorStructure,
    n: usize,
) -> Result<TheoremReport> {
    assert!(n >= 1, "bounds are stated for n >= 1");
    let one = BigRational::one();
    let mut entries = Vec::new();
    if group.order() == 1 {
        // No prime divides the order; every bound is vacuous.
        for id in [
            COMMUTING_NONABELIAN_BOUND,
            COMMUTING_CENTER_DERIVED_TRIVIAL_BOUND,
            EXTERIOR_GAP_BOUND,
            EXTERIOR_BASIC_BOUND,
            EXTERIOR_SMALL_EXTERIOR_CENTER_BOUND,
            EXTERIOR_CYCLIC_CHARACTERIZATION,
            EXTERIOR_DEGREES_DESCENDING,
            EXTERIOR_BELOW_COMMUTING,
            EXTERIOR_CENTER_REFINEMENT_BOUND,
            EXTERIOR_NONCYCLIC_BOUND,
            EXTERIOR_PROPER_CENTER_BOUND,
            EXTERIOR_CAPABLE_BOUND,
        ] {
            entries.push(TheoremEntry {
                id,
                n,
                applicable: false,
                lhs: one.clone(),
                rhs: one.clone(),
                holds: true,
                equality: true,
                equality_condition_met: None,
            });
        }
        return Ok(TheoremReport { entries });
    }

    let order = group.order() as u64;
    let p = group.smallest_prime_divisor()?;
    let abelian = group.is_abelian();
    let cyclic = group.is_cyclic();
    let center = group.center();
    let derived = group.derived_subgroup();
    let exterior_center = structure.exterior_center()?;
    let capable = exterior_center.is_trivial();
    let z = center.order() as u64;
    let zw = exterior_center.order() as u64;

    let d_n = commutativity_degree_n(group, n);
    let d_1 = commutativity_degree_n(group, 1);
    let dw_n = exterior_degree_n(group, structure, n)?;
    let dw_prev = exterior_degree_n(group, structure, n - 1)?;
    let dw_1 = exterior_degree_n(group, structure, 1)?;

    let ratio = |num: BigInt, den: BigInt| BigRational::new(num, den);

    let mut push = |id: &'static str,
                    applicable: bool,
                    lhs: BigRational,
                    rhs: BigRational,
                    condition: Option<bool>| {
        let holds = lhs <= rhs;
        let equality = lhs == rhs;
        entries.push(TheoremEntry {
            id,
            n,
            applicable,
            lhs,
            rhs,
            holds,
            equality,
            equality_condition_met: condition,
        });
    };

    // d_n <= (p^(n+1) + p^n - 1) / p^(2n+1) for non-abelian groups,
    // equality iff G/Z(G) is elementary abelian of rank 2.
    let rank_bound = ratio(
        pow_big(p, n as u32 + 1) + pow_big(p, n as u32) - BigInt::one(),
        pow_big(p, 2 * n as u32 + 1),
    );
    push(
        COMMUTING_NONABELIAN_BOUND,
        !abelian,
        d_n.clone(),
        rank_bound.clone(),
        Some(quotient_is_elementary_rank_two(group, &center, p)),
    );

    // d_n <= 1/p^n when the center meets the derived subgroup trivially.
    let center_meets_derived_trivially = center.intersection(&derived).order() == 1;
    push(
        COMMUTING_CENTER_DERIVED_TRIVIAL_BOUND,
        !abelian && center_meets_derived_trivially,
        d_n.clone(),
        ratio(BigInt::one(), pow_big(p, n as u32)),
        None,
    );

    // dw_1 <= d_1 - ((p-1)/p) * (|Z| - |Zw|) / |G|
    let gap = ratio(
        BigInt::from(p - 1) * BigInt::from(z - zw),
        BigInt::from(p) * BigInt::from(order),
    );
    push(
        EXTERIOR_GAP_BOUND,
        true,
        dw_1.clone(),
        d_1.clone() - gap,
        None,
    );

    // dw_1 <= (p^2 + p - 1)/p^3 unless G is cyclic
    push(
        EXTERIOR_BASIC_BOUND,
        !cyclic,
        dw_1.clone(),
        ratio(
            pow_big(p, 2) + BigInt::from(p) - BigInt::one(),
            pow_big(p, 3),
        ),
        None,
    );

    // dw_1 <= (p^3 + p - 1)/p^4 when non-abelian with Zw a proper
    // subgroup of Z
    push(
        EXTERIOR_SMALL_EXTERIOR_CENTER_BOUND,
        !abelian && zw < z,
        dw_1.clone(),
        ratio(
            pow_big(p, 3) + BigInt::from(p) - BigInt::one(),
            pow_big(p, 4),
        ),
        None,
    );

    // dw_1 <= 1 with equality exactly for cyclic groups
    push(
        EXTERIOR_CYCLIC_CHARACTERIZATION,
        true,
        dw_1.clone(),
        one.clone(),
        Some(cyclic),
    );

    // descending in n and dominated by the commuting degree
    push(
        EXTERIOR_DEGREES_DESCENDING,
        true,
        dw_n.clone(),
        dw_prev.clone(),
        None,
    );
    push(EXTERIOR_BELOW_COMMUTING, true, dw_n.clone(), d_n.clone(), None);

    // dw_n <= d_1/p^(n-1) + ((1-p)|Z| - (1 - p^n dw_{n-1}) |Zw|) / (p^n |G|)
    let pn = pow_big(p, n as u32);
    let refinement = ratio(BigInt::one(), pow_big(p, n as u32 - 1)) * d_1.clone()
        + (BigRational::from(BigInt::from(1i64 - p as i64) * BigInt::from(z))
            - (BigRational::from(BigInt::one()) - BigRational::from(pn.clone()) * dw_prev.clone())
                * BigRational::from(BigInt::from(zw)))
            / BigRational::from(pn.clone() * BigInt::from(order));
    push(
        EXTERIOR_CENTER_REFINEMENT_BOUND,
        true,
        dw_n.clone(),
        refinement,
        None,
    );

    // dw_n <= (p^(n+1) + p^n - 1)/p^(2n+1) for non-cyclic groups,
    // equality iff G/Zw is elementary abelian of rank 2
    push(
        EXTERIOR_NONCYCLIC_BOUND,
        !cyclic,
        dw_n.clone(),
        rank_bound,
        Some(quotient_is_elementary_rank_two(group, &exterior_center, p)),
    );

    // dw_n <= (p^(2n+1)(p+1) + p^(2n) - 1) / (p^(3n+1)(p+1))
    push(
        EXTERIOR_PROPER_CENTER_BOUND,
        !abelian && zw < z,
        dw_n.clone(),
        ratio(
            pow_big(p, 2 * n as u32 + 1) * BigInt::from(p + 1) + pow_big(p, 2 * n as u32)
                - BigInt::one(),
            pow_big(p, 3 * n as u32 + 1) * BigInt::from(p + 1),
        ),
        None,
    );

    // dw_n <= 1/p^n for non-abelian capable groups
    push(
        EXTERIOR_CAPABLE_BOUND,
        !abelian && capable,
        dw_n,
        ratio(BigInt::one(), pow_big(p, n as u32)),
        None,
    );

    Ok(TheoremReport { entries })
}

/// One `n` of the quotient-monotonicity comparison `d_n(G) <= d_n(G/N)`.
#[derive(Clone, Debug)]
pub struct QuotientCheck {
    pub n: usize,
    pub group_value: BigRational,
    pub quotient_value: BigRational,
    pub holds: bool,
    /// Set when `N` meets the derived subgroup trivially, in which case
    /// the two degrees must be equal.
    pub equality_expected: bool,
    pub equality: bool,
}

impl QuotientCheck {
    pub fn passes(&self) -> bool {
        self.holds && (!self.equality_expected || self.equality)
    }
}

/// Checks `d_n(G) <= d_n(G/N)` for `n = 1..=max_n`.
pub fn verify_quotient_monotonicity(
    group: &FiniteGroup,
    normal: &ElementSet,
    max_n: usize,
) -> Result<Vec<QuotientCheck>> {
    let quotient = group.quotient(normal)?;
    let derived = group.derived_subgroup();
    let equality_expected = normal.intersection(&derived).order() == 1;
    let mut checks = Vec::new();
    for n in 1..=max_n {
        let group_value = commutativity_degree_n(group, n);
        let quotient_value = commutativity_degree_n(&quotient, n);
        checks.push(QuotientCheck {
            n,
            holds: group_value <= quotient_value,
            equality: group_value == quotient_value,
            group_value,
            quotient_value,
            equality_expected,
        });
    }
    Ok(checks)
}

#[derive(Clone, Debug)]
pub struct CoprimeCheck {
    pub n: usize,
    pub product_value: BigRational,
    pub factor_product: BigRational,
    pub holds: bool,
}

/// For coprime `|G|`, `|H|`: the exterior degree of `G x H` computed on
/// the product group directly must equal the product of the factors'
/// exterior degrees.
pub fn verify_coprime_multiplicativity(
    g: &FiniteGroup,
    h: &FiniteGroup,
    n: usize,
    config: &PairConfig,
) -> Result<CoprimeCheck> {
    let (a, b) = (g.order(), h.order());
    if num_integer::gcd(a, b) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    let product = g.direct_product(h);
    let product_structure = exterior_square(&product, config)?;
    let g_structure = exterior_square(g, config)?;
    let h_structure = exterior_square(h, config)?;
    let product_value = exterior_degree_n(&product, &product_structure, n)?;
    let factor_product =
        exterior_degree_n(g, &g_structure, n)? * exterior_degree_n(h, &h_structure, n)?;
    Ok(CoprimeCheck {
        n,
        holds: product_value == factor_product,
        product_value,
        factor_product,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnidegreeFlags {
    /// `Z(G) = Z^(G)`.
    pub unicentral: bool,
    /// `d(G) = dw(G)`.
    pub unidegree: bool,
    /// `d_n(G) = dw_n(G)` for every `n` up to the checked bound.
    pub multiple_unidegree: bool,
}

pub fn unidegree_flags(
    group: &FiniteGroup,
    structure: &TensorStructure,
    max_n: usize,
) -> Result<UnidegreeFlags> {
    assert!(max_n >= 1);
    let unicentral =
        structure.exterior_center()?.members() == group.center().members();
    let unidegree =
        commutativity_degree_n(group, 1) == exterior_degree_n(group, structure, 1)?;
    let mut multiple = true;
    for n in 1..=max_n {
        if commutativity_degree_n(group, n) != exterior_degree_n(group, structure, n)? {
            multiple = false;
            break;
        }
    }
    Ok(UnidegreeFlags {
        unicentral,
        unidegree,
        multiple_unidegree: multiple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

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

    fn quaternion8() -> FiniteGroup {
        use crate::presentation::{coset_action_to_group, todd_coxeter, Presentation, Word};
        let r1 = Word::new(vec![1, 1, -2, -2]).unwrap();
        let r2 = Word::new(vec![2, 2, -2, -1, -2, -1]).unwrap();
        let p = Presentation::new(2, vec![r1, r2]).unwrap();
        let t = todd_coxeter(&p, &[], 1000).unwrap();
        coset_action_to_group(&t, &p).unwrap().0
    }

    fn ext(g: &FiniteGroup) -> TensorStructure {
        exterior_square(g, &PairConfig::default()).unwrap()
    }

    fn rational(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn commuting_graph_of_abelian_group_is_complete() {
        let g = cyclic(6);
        let graph = relation_graph(&g, RelationKind::Commuting, None).unwrap();
        for x in 0..6 {
            assert_eq!(graph.row(x).count(), 6);
        }
    }

    #[test]
    fn wedge_graph_of_cyclic_group_is_complete() {
        let g = cyclic(5);
        let s = ext(&g);
        let graph = relation_graph(&g, RelationKind::WedgeTrivial, Some(&s)).unwrap();
        for x in 0..5 {
            assert_eq!(graph.row(x).count(), 5);
        }
    }

    #[test]
    fn wedge_graph_of_dihedral8_rotation_row() {
        let g = dihedral8();
        let s = ext(&g);
        let graph = relation_graph(&g, RelationKind::WedgeTrivial, Some(&s)).unwrap();
        let rotation = (1..8).find(|&x| g.element_order(x) == 4).unwrap();
        assert_eq!(graph.row(rotation).count(), 4);
    }

    #[test]
    fn wedge_graph_requires_matching_structure() {
        let g = dihedral8();
        assert!(matches!(
            relation_graph(&g, RelationKind::WedgeTrivial, None),
            Err(Error::MissingExteriorStructure)
        ));
        let other = ext(&sym3());
        assert!(matches!(
            relation_graph(&g, RelationKind::WedgeTrivial, Some(&other)),
            Err(Error::MissingExteriorStructure)
        ));
    }

    #[test]
    fn tuple_counts_against_hand_enumeration() {
        let g = sym3();
        let graph = relation_graph(&g, RelationKind::Commuting, None).unwrap();
        let all = Bitset::full(6);
        assert_eq!(tuple_count(&graph, &all, 0).to_u64(), Some(6));
        assert_eq!(tuple_count(&graph, &all, 1).to_u64(), Some(18));

        let d8 = dihedral8();
        let graph8 = relation_graph(&d8, RelationKind::Commuting, None).unwrap();
        let all8 = Bitset::full(8);
        assert_eq!(tuple_count(&graph8, &all8, 2).to_u64(), Some(176));

        let s = ext(&d8);
        let wedge8 = relation_graph(&d8, RelationKind::WedgeTrivial, Some(&s)).unwrap();
        assert_eq!(tuple_count(&wedge8, &all8, 2).to_u64(), Some(92));
    }

    #[test]
    fn commutativity_degrees_of_small_groups() {
        assert_eq!(commutativity_degree_n(&cyclic(7), 3), BigRational::one());
        assert_eq!(commutativity_degree_n(&sym3(), 1), rational(1, 2));
        assert_eq!(commutativity_degree_n(&sym3(), 2), rational(2, 9));
        assert_eq!(commutativity_degree_n(&dihedral8(), 1), rational(5, 8));
        assert_eq!(commutativity_degree_n(&dihedral8(), 2), rational(11, 32));
        assert_eq!(commutativity_degree_n(&dihedral8(), 0), BigRational::one());
    }

    #[test]
    fn exterior_degrees_of_small_groups() {
        let d8 = dihedral8();
        let s = ext(&d8);
        assert_eq!(exterior_degree_n(&d8, &s, 1).unwrap(), rational(7, 16));
        assert_eq!(exterior_degree_n(&d8, &s, 2).unwrap(), rational(23, 128));
        assert_eq!(exterior_degree_n(&d8, &s, 0).unwrap(), BigRational::one());

        let q8 = quaternion8();
        let sq = ext(&q8);
        assert_eq!(exterior_degree_n(&q8, &sq, 2).unwrap(), rational(11, 32));

        for m in 2..=6 {
            let z = cyclic(m);
            let sz = ext(&z);
            assert_eq!(exterior_degree_n(&z, &sz, 2).unwrap(), BigRational::one());
        }
    }

    #[test]
    fn class_reduction_agrees_with_plain_recursion() {
        for g in [sym3(), dihedral8(), quaternion8()] {
            let graph = relation_graph(&g, RelationKind::Commuting, None).unwrap();
            let all = Bitset::full(g.order());
            for n in 0..=3 {
                assert_eq!(
                    class_reduced_group_count(&graph, n),
                    tuple_count(&graph, &all, n)
                );
            }
        }
    }

    #[test]
    fn class_weighted_sum_is_order_independent() {
        // summing rep contributions in any order gives the same count
        let g = dihedral8();
        let graph = relation_graph(&g, RelationKind::Commuting, None).unwrap();
        let classes = g.conjugacy_classes();
        let n = 2;
        let mut terms: Vec<BigUint> = classes
            .representatives
            .iter()
            .enumerate()
            .map(|(k, &rep)| {
                BigUint::from(classes.sizes[k]) * tuple_count(&graph, graph.row(rep), n - 1)
            })
            .collect();
        let forward: BigUint = terms.iter().cloned().sum();
        terms.reverse();
        let backward: BigUint = terms.iter().cloned().sum();
        assert_eq!(forward, backward);
        assert_eq!(forward, class_reduced_group_count(&graph, n));
    }

    #[test]
    fn brute_force_matches_recursion() {
        for g in [cyclic(4), sym3(), dihedral8(), quaternion8()] {
            let s = ext(&g);
            for n in 0..=2 {
                let fast = commutativity_degree_n(&g, n);
                let slow =
                    brute_force_degree(&g, n, RelationKind::Commuting, None, DEFAULT_BRUTE_FORCE_CAP)
                        .unwrap();
                assert_eq!(fast, slow, "commuting degree mismatch for {g:?} n={n}");
                let fast_w = exterior_degree_n(&g, &s, n).unwrap();
                let slow_w = brute_force_degree(
                    &g,
                    n,
                    RelationKind::WedgeTrivial,
                    Some(&s),
                    DEFAULT_BRUTE_FORCE_CAP,
                )
                .unwrap();
                assert_eq!(fast_w, slow_w, "exterior degree mismatch for {g:?} n={n}");
            }
        }
    }

    #[test]
    fn brute_force_cap_is_enforced() {
        let g = dihedral8();
        assert!(matches!(
            brute_force_degree(&g, 3, RelationKind::Commuting, None, 100),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(dihedral_closed_form(4, 1), rational(7, 16));
        assert_eq!(dihedral_closed_form(4, 2), rational(23, 128));
        assert_eq!(quaternion_closed_form(2, 1), rational(5, 8));
        assert_eq!(quaternion_closed_form(2, 2), rational(11, 32));
        assert_eq!(quaternion_closed_form(1, 1), BigRational::one());
        assert_eq!(quaternion_closed_form(1, 3), BigRational::one());
    }

    #[test]
    fn bound_report_for_dihedral8() {
        let g = dihedral8();
        let s = ext(&g);
        let report = verify_bounds(&g, &s, 1).unwrap();
        assert!(report.all_applicable_hold());
        assert!(report.equality_flags_consistent());
        let noncyclic = report
            .entries
            .iter()
            .find(|e| e.id == EXTERIOR_NONCYCLIC_BOUND)
            .unwrap();
        assert!(noncyclic.applicable);
        assert_eq!(noncyclic.lhs, rational(7, 16));
        assert_eq!(noncyclic.rhs, rational(5, 8));
        assert!(noncyclic.holds && !noncyclic.equality);
        assert_eq!(noncyclic.equality_condition_met, Some(false));
        let rank = report
            .entries
            .iter()
            .find(|e| e.id == COMMUTING_NONABELIAN_BOUND)
            .unwrap();
        assert!(rank.equality, "d_1(D8) attains the bound");
        assert_eq!(rank.equality_condition_met, Some(true));
    }

    #[test]
    fn bound_report_for_klein_group() {
        let klein = cyclic(2).direct_product(&cyclic(2));
        let s = ext(&klein);
        let report = verify_bounds(&klein, &s, 1).unwrap();
        assert!(report.all_applicable_hold());
        assert!(report.equality_flags_consistent());
        let noncyclic = report
            .entries
            .iter()
            .find(|e| e.id == EXTERIOR_NONCYCLIC_BOUND)
            .unwrap();
        assert_eq!(noncyclic.lhs, rational(5, 8));
        assert_eq!(noncyclic.rhs, rational(5, 8));
        assert!(noncyclic.equality);
        assert_eq!(noncyclic.equality_condition_met, Some(true));
    }

    #[test]
    fn proper_center_bound_is_inapplicable_for_quaternion8() {
        let q8 = quaternion8();
        let s = ext(&q8);
        let report = verify_bounds(&q8, &s, 1).unwrap();
        let e = report
            .entries
            .iter()
            .find(|e| e.id == EXTERIOR_PROPER_CENTER_BOUND)
            .unwrap();
        assert!(!e.applicable, "Zw(Q8) = Z(Q8), hypothesis fails");
        assert!(report.all_applicable_hold());
    }

    #[test]
    fn bounds_hold_across_levels() {
        for g in [sym3(), dihedral8(), quaternion8(), cyclic(6)] {
            let s = ext(&g);
            for n in 1..=4 {
                let report = verify_bounds(&g, &s, n).unwrap();
                assert!(report.all_applicable_hold(), "violated bound for {g:?} n={n}");
                assert!(report.equality_flags_consistent(), "{g:?} n={n}");
            }
        }
    }

    #[test]
    fn quotient_monotonicity_for_dihedral8() {
        let g = dihedral8();
        let center = g.center();
        let checks = verify_quotient_monotonicity(&g, &center, 2).unwrap();
        assert_eq!(checks[0].group_value, rational(5, 8));
        assert_eq!(checks[0].quotient_value, BigRational::one());
        assert!(checks.iter().all(|c| c.passes()));
        assert!(!checks[0].equality_expected); // center meets derived subgroup
    }

    #[test]
    fn quotient_by_trivial_subgroup_gives_equality() {
        let g = sym3();
        let trivial = ElementSet::subgroup_closure(&g, []);
        let checks = verify_quotient_monotonicity(&g, &trivial, 3).unwrap();
        assert!(checks.iter().all(|c| c.equality_expected && c.equality));
    }

    #[test]
    fn coprime_multiplicativity_of_cyclic_factors() {
        let z2 = cyclic(2);
        let z3 = cyclic(3);
        let check = verify_coprime_multiplicativity(&z2, &z3, 2, &PairConfig::default()).unwrap();
        assert!(check.holds);
        assert_eq!(check.product_value, BigRational::one());
        assert!(matches!(
            verify_coprime_multiplicativity(&sym3(), &sym3(), 1, &PairConfig::default()),
            Err(Error::NotCoprime(6, 6))
        ));
    }

    #[test]
    fn unidegree_flags_of_small_groups() {
        let q8 = quaternion8();
        let flags = unidegree_flags(&q8, &ext(&q8), 3).unwrap();
        assert_eq!(
            flags,
            UnidegreeFlags {
                unicentral: true,
                unidegree: true,
                multiple_unidegree: true
            }
        );
        let d8 = dihedral8();
        let flags = unidegree_flags(&d8, &ext(&d8), 3).unwrap();
        assert!(!flags.unicentral && !flags.unidegree && !flags.multiple_unidegree);
        let z6 = cyclic(6);
        let flags = unidegree_flags(&z6, &ext(&z6), 2).unwrap();
        assert!(flags.unicentral && flags.unidegree && flags.multiple_unidegree);
    }
}
