//! Finite groups as dense multiplication tables.
//!
//! Elements are dense indices `0..order` with the identity at index `0`;
//! products and inverses are O(1) table lookups. Groups built here are
//! immutable and cheap to clone (the table is shared).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Default cap on the number of elements produced by closure of
/// permutation generators.
pub const DEFAULT_CLOSURE_LIMIT: usize = 1_000_000;

struct GroupData {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    label: Option<String>,
}

/// A finite group given by its complete multiplication table.
///
/// `table[i][j]` is the index of `g_i * g_j`; index `0` is the identity.
/// Cloning shares the underlying table.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label() {
            Some(l) => write!(f, "FiniteGroup({l}, order {})", self.order()),
            None => write!(f, "FiniteGroup(order {})", self.order()),
        }
    }
}

impl FiniteGroup {
    /// Validates an explicit multiplication table and builds the group.
    ///
    /// Checks that the table is a Latin square with an identity and
    /// inverses and that multiplication is associative (the full cubic
    /// check; intended for small user-supplied tables). The identity is
    /// relabelled to index `0` by swapping it with whatever sat there.
    pub fn from_cayley_table(rows: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has length {} in a table of size {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup(format!(
                        "entry ({i},{j}) = {v} is out of range"
                    )));
                }
            }
        }
        // Latin square: rows and columns are permutations.
        let mut seen = vec![false; n];
        for (i, row) in rows.iter().enumerate() {
            seen.fill(false);
            for &v in row {
                if seen[v] {
                    return Err(Error::NotAGroup(format!("row {i} is not a permutation")));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.fill(false);
            for (i, row) in rows.iter().enumerate() {
                let v = row[j];
                if seen[v] {
                    return Err(Error::NotAGroup(format!(
                        "column {j} is not a permutation (duplicate at row {i})"
                    )));
                }
                seen[v] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| rows[e][j] == j) && (0..n).all(|i| rows[i][e] == i))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rows[rows[i][j]][k] != rows[i][rows[j][k]] {
                        return Err(Error::NotAGroup(format!(
                            "not associative at triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        // Relabel so the identity is index 0 (swap 0 <-> identity).
        let perm = |x: usize| -> usize {
            if x == 0 {
                identity
            } else if x == identity {
                0
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = perm(rows[perm(i)][perm(j)]) as u32;
            }
        }
        FiniteGroup::from_validated_table(table, None)
    }

    /// Closes a set of permutations of `0..degree` under composition and
    /// returns the resulting group; element `0` is the identity.
    ///
    /// Elements are numbered breadth-first: the identity first, then new
    /// products `current * generator` in generator order.
    pub fn from_permutation_generators(
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<FiniteGroup> {
        FiniteGroup::from_permutation_generators_limited(degree, generators, DEFAULT_CLOSURE_LIMIT)
    }

    pub fn from_permutation_generators_limited(
        degree: usize,
        generators: &[Vec<usize>],
        limit: usize,
    ) -> Result<FiniteGroup> {
        if degree == 0 {
            // Only the empty permutation; the trivial group.
            return FiniteGroup::from_validated_table(vec![0], None);
        }
        let mut gens: Vec<Vec<u32>> = Vec::with_capacity(generators.len());
        for (k, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {k} has length {} for degree {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &img in g {
                if img >= degree || seen[img] {
                    return Err(Error::InvalidPermutation(format!(
                        "generator {k} is not a bijection on 0..{degree}"
                    )));
                }
                seen[img] = true;
            }
            gens.push(g.iter().map(|&x| x as u32).collect());
        }

        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements: Vec<Vec<u32>> = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut next = 0usize;
        while next < elements.len() {
            for g in &gens {
                // (a * g)(x) = a[g[x]]: apply g, then a.
                let prod: Vec<u32> = g.iter().map(|&x| elements[next][x as usize]).collect();
                if !index.contains_key(&prod) {
                    if elements.len() >= limit {
                        return Err(Error::SizeLimitExceeded(limit));
                    }
                    index.insert(prod.clone(), elements.len() as u32);
                    elements.push(prod);
                }
            }
            next += 1;
        }

        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod: Vec<u32> = elements[j]
                    .iter()
                    .map(|&x| elements[i][x as usize])
                    .collect();
                table[i * n + j] = index[&prod];
            }
        }
        FiniteGroup::from_validated_table(table, None)
    }

    /// Builds a group from a table already known to be associative
    /// (anything obtained by closure of an actual action). Still checks
    /// the Latin-square, identity and inverse structure.
    pub(crate) fn from_validated_table(
        table: Vec<u32>,
        label: Option<String>,
    ) -> Result<FiniteGroup> {
        let n2 = table.len();
        let n = (n2 as f64).sqrt().round() as usize;
        if n * n != n2 || n == 0 {
            return Err(Error::NotAGroup("table is not square".into()));
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.fill(false);
            for j in 0..n {
                let v = table[i * n + j] as usize;
                if v >= n || seen[v] {
                    return Err(Error::NotAGroup(format!("row {i} is not a permutation")));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.fill(false);
            for i in 0..n {
                let v = table[i * n + j] as usize;
                if seen[v] {
                    return Err(Error::NotAGroup(format!("column {j} is not a permutation")));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            if table[j] as usize != j || table[j * n] as usize != j {
                return Err(Error::NotAGroup("index 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![u32::MAX; n];
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == 0 {
                    inverse[i] = j as u32;
                    break;
                }
            }
            if inverse[i] == u32::MAX {
                return Err(Error::NotAGroup(format!("element {i} has no inverse")));
            }
        }
        Ok(FiniteGroup {
            data: Arc::new(GroupData {
                order: n,
                table,
                inverse,
                label,
            }),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FiniteGroup {
        // Only called right after construction, before the Arc is shared.
        Arc::get_mut(&mut self.data)
            .expect("with_label on a shared group")
            .label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.data.label.as_deref()
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.table[a * self.data.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.data.inverse[a] as usize
    }

    /// `x * g * x^-1`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// `a * b * a^-1 * b^-1`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.mul(a, b), self.inv(a)), self.inv(b))
    }

    pub fn power(&self, g: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut acc = g;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|g| self.element_order(g) == n)
    }

    /// Two handles refer to the same underlying group object.
    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    /// Full group-axiom audit, including the cubic associativity check.
    pub fn check_group_axioms(&self) -> Result<()> {
        let n = self.order();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.mul(self.mul(i, j), k) != self.mul(i, self.mul(j, k)) {
                        return Err(Error::NotAGroup(format!(
                            "not associative at triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            if self.mul(i, self.inv(i)) != 0 {
                return Err(Error::NotAGroup(format!("bad inverse for {i}")));
            }
        }
        Ok(())
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut conjugator = vec![0u32; n];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        for r in 0..n {
            if class_of[r] != u32::MAX {
                continue;
            }
            let class_index = representatives.len() as u32;
            representatives.push(r);
            let mut size = 0;
            for x in 0..n {
                let c = self.conj(x, r);
                if class_of[c] == u32::MAX {
                    class_of[c] = class_index;
                    conjugator[c] = x as u32;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        ConjugacyClasses {
            representatives,
            class_of,
            sizes,
            conjugator,
        }
    }

    pub fn centralizer(&self, x: usize) -> ElementSet {
        let n = self.order();
        let members = Bitset::from_indices(n, (0..n).filter(|&y| self.mul(x, y) == self.mul(y, x)));
        ElementSet::new_unchecked(self.clone(), members)
    }

    pub fn center(&self) -> ElementSet {
        let n = self.order();
        let members = Bitset::from_indices(
            n,
            (0..n).filter(|&y| (0..n).all(|x| self.mul(x, y) == self.mul(y, x))),
        );
        ElementSet::new_unchecked(self.clone(), members)
    }

    pub fn derived_subgroup(&self) -> ElementSet {
        let n = self.order();
        let mut gens = HashSet::new();
        for a in 0..n {
            for b in 0..n {
                gens.insert(self.commutator(a, b));
            }
        }
        ElementSet::subgroup_closure(self, gens.into_iter())
    }

    /// Coset multiplication table of `G/N`; errors unless `N` is a
    /// verified normal subgroup of this group. Cosets are numbered by
    /// their smallest member, ascending.
    pub fn quotient(&self, normal: &ElementSet) -> Result<FiniteGroup> {
        if !normal.parent().same_group(self) {
            return Err(Error::NotASubgroup);
        }
        if !normal.is_subgroup() {
            return Err(Error::NotASubgroup);
        }
        if !normal.is_normal() {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for m in normal.members().iter() {
                coset_of[self.mul(g, m)] = id;
            }
        }
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for (i, &ri) in reps.iter().enumerate() {
            for (j, &rj) in reps.iter().enumerate() {
                table[i * q + j] = coset_of[self.mul(ri, rj)];
            }
        }
        FiniteGroup::from_validated_table(table, None)
    }

    /// Direct product; element `(i, j)` gets index `i * |H| + j`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let n = self.order();
        let m = other.order();
        let nm = n * m;
        let mut table = vec![0u32; nm * nm];
        for i in 0..n {
            for j in 0..m {
                let a = i * m + j;
                for k in 0..n {
                    for l in 0..m {
                        let b = k * m + l;
                        table[a * nm + b] = (self.mul(i, k) * m + other.mul(j, l)) as u32;
                    }
                }
            }
        }
        let label = match (self.label(), other.label()) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        FiniteGroup::from_validated_table(table, label).expect("product of groups is a group")
    }

    pub fn smallest_prime_divisor(&self) -> Result<u64> {
        let n = self.order() as u64;
        if n < 2 {
            return Err(Error::TrivialGroupHasNoPrime);
        }
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                return Ok(p);
            }
            p += 1;
        }
        Ok(n)
    }

    /// Every subgroup, found by closing each subgroup-plus-one-element
    /// seed; sorted by order and then members for a stable result.
    pub fn all_subgroups(&self) -> Vec<ElementSet> {
        let n = self.order();
        let trivial = Bitset::from_indices(n, [0]);
        let mut known: HashSet<Bitset> = HashSet::new();
        known.insert(trivial.clone());
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for g in 0..n {
                if h.contains(g) {
                    continue;
                }
                let bigger = self.close_under_products(h.iter().chain([g]));
                if known.insert(bigger.clone()) {
                    queue.push_back(bigger);
                }
            }
        }
        let mut subgroups: Vec<Bitset> = known.into_iter().collect();
        subgroups.sort_by_key(|s| (s.count(), s.iter().collect::<Vec<_>>()));
        subgroups
            .into_iter()
            .map(|members| ElementSet::new_unchecked(self.clone(), members))
            .collect()
    }

    pub fn normal_subgroups(&self) -> Vec<ElementSet> {
        self.all_subgroups()
            .into_iter()
            .filter(|s| s.is_normal())
            .collect()
    }

    fn close_under_products<I: IntoIterator<Item = usize>>(&self, seed: I) -> Bitset {
        let mut members = Bitset::new(self.order());
        members.insert(0);
        let mut stack: Vec<usize> = vec![0];
        for g in seed {
            if !members.contains(g) {
                members.insert(g);
                stack.push(g);
            }
        }
        while let Some(a) = stack.pop() {
            let current: Vec<usize> = members.iter().collect();
            for b in current {
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !members.contains(p) {
                        members.insert(p);
                        stack.push(p);
                    }
                }
            }
        }
        members
    }

    /// Invariant factors `d_1 | d_2 | ...` (each > 1) of this group,
    /// which must be abelian.
    pub fn abelian_invariant_factors(&self) -> Result<Vec<u64>> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        abelian_invariants_of_subset(self, &Bitset::full(self.order()))
    }
}

/// Invariant factors of an abelian subgroup given as a member set.
///
/// Counts solutions of `x^(p^k) = 1` inside the set for each prime `p`
/// dividing its order and reads the exponent multiset off the counts.
pub fn abelian_invariants_of_subset(group: &FiniteGroup, members: &Bitset) -> Result<Vec<u64>> {
    let elements: Vec<usize> = members.iter().collect();
    for (i, &a) in elements.iter().enumerate() {
        for &b in &elements[i + 1..] {
            if group.mul(a, b) != group.mul(b, a) {
                return Err(Error::NotAbelian);
            }
        }
    }
    let n = elements.len() as u64;
    let mut rest = n;
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }

    // exponents[p] = multiset of cyclic p-power exponents, descending
    let mut per_prime: Vec<Vec<u32>> = Vec::new();
    for &p in &primes {
        let mut p_part = 1u64;
        let mut tmp = n;
        while tmp % p == 0 {
            p_part *= p;
            tmp /= p;
        }
        // c[k] = #{x : x^(p^k) = 1}
        let mut counts = vec![1u64];
        let mut k = 1;
        loop {
            let pk = p.checked_pow(k).expect("p^k fits in u64");
            let c = elements
                .iter()
                .filter(|&&x| group.power(x, pk) == 0)
                .count() as u64;
            counts.push(c);
            if c == p_part {
                break;
            }
            k += 1;
        }
        let log_p = |mut v: u64| {
            let mut e = 0u32;
            while v > 1 {
                v /= p;
                e += 1;
            }
            e
        };
        // r[k] = #{cyclic factors with exponent >= k}
        let r: Vec<u32> = (1..counts.len())
            .map(|k| log_p(counts[k]) - log_p(counts[k - 1]))
            .collect();
        let mut exps = Vec::new();
        for (k, &rk) in r.iter().enumerate() {
            let next = if k + 1 < r.len() { r[k + 1] } else { 0 };
            for _ in 0..(rk - next) {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(exps);
    }

    let parts = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = Vec::new();
    for i in 0..parts {
        let mut d = 1u64;
        for (pi, exps) in per_prime.iter().enumerate() {
            if let Some(&e) = exps.get(i) {
                d *= primes[pi].pow(e);
            }
        }
        factors.push(d);
    }
    factors.reverse(); // ascending, so each divides the next
    Ok(factors)
}

/// A subset of a group's elements, tracked as a bitset.
#[derive(Clone)]
pub struct ElementSet {
    parent: FiniteGroup,
    members: Bitset,
}

impl ElementSet {
    pub(crate) fn new_unchecked(parent: FiniteGroup, members: Bitset) -> Self {
        debug_assert_eq!(members.len(), parent.order());
        ElementSet { parent, members }
    }

    pub fn from_members(parent: &FiniteGroup, members: Bitset) -> Self {
        assert_eq!(members.len(), parent.order(), "bitset universe mismatch");
        ElementSet::new_unchecked(parent.clone(), members)
    }

    /// Smallest subgroup containing the given generators.
    pub fn subgroup_closure<I: IntoIterator<Item = usize>>(
        parent: &FiniteGroup,
        generators: I,
    ) -> Self {
        let members = parent.close_under_products(generators);
        ElementSet::new_unchecked(parent.clone(), members)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1 && self.contains(0)
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn is_subgroup(&self) -> bool {
        if !self.contains(self.parent.identity()) {
            return false;
        }
        let elems: Vec<usize> = self.iter().collect();
        elems.iter().all(|&a| {
            self.contains(self.parent.inv(a))
                && elems.iter().all(|&b| self.contains(self.parent.mul(a, b)))
        })
    }

    pub fn is_normal(&self) -> bool {
        if !self.is_subgroup() {
            return false;
        }
        let n = self.parent.order();
        self.iter()
            .all(|h| (0..n).all(|g| self.contains(self.parent.conj(g, h))))
    }

    /// Intersection of two sets over the same parent.
    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        assert!(self.parent.same_group(&other.parent));
        ElementSet::new_unchecked(self.parent.clone(), self.members.intersection(&other.members))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet({:?} of {:?})", self.members, self.parent)
    }
}

/// Conjugacy classes with deterministic minimal-index representatives.
///
/// `conjugator[x]` is some `w` with `w * rep * w^-1 = x` for the
/// representative of the class of `x`.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub representatives: Vec<usize>,
    pub class_of: Vec<u32>,
    pub sizes: Vec<usize>,
    pub conjugator: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_index(&self, g: usize) -> usize {
        self.class_of[g] as usize
    }
}

/// Tries to extend the generator correspondence `gens_a[i] -> gens_b[i]`
/// to an isomorphism; returns the element map if one exists.
pub fn generator_matched_isomorphism(
    a: &FiniteGroup,
    gens_a: &[usize],
    b: &FiniteGroup,
    gens_b: &[usize],
) -> Option<Vec<usize>> {
    if a.order() != b.order() || gens_a.len() != gens_b.len() {
        return None;
    }
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    let mut visited = vec![false; n];
    visited[0] = true;
    while let Some(x) = queue.pop_front() {
        for (&ga, &gb) in gens_a.iter().zip(gens_b) {
            let xa = a.mul(x, ga);
            let xb = b.mul(map[x], gb);
            if map[xa] == usize::MAX {
                map[xa] = xb;
            } else if map[xa] != xb {
                return None;
            }
            if !visited[xa] {
                visited[xa] = true;
                queue.push_back(xa);
            }
        }
    }
    if visited.iter().any(|&v| !v) {
        return None; // gens_a do not generate a
    }
    let mut image_seen = vec![false; n];
    for &y in &map {
        if image_seen[y] {
            return None;
        }
        image_seen[y] = true;
    }
    for x in 0..n {
        for y in 0..n {
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return None;
            }
        }
    }
    Some(map)
}
