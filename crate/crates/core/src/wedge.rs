//! Nonabelian tensor and exterior squares.
//!
//! For a finite group `G` we present an auxiliary group on two copies of
//! `G` (one generator per element per copy): each copy carries its full
//! multiplication-table relations, and for all `g`, `h`, `x` the
//! commutator `[g, h']` of a left and a right generator is forced to be
//! conjugation-compatible, `x [g, h'] x^-1 = [xgx^-1, (xhx^-1)']`, with
//! `x` taken from either copy. The subgroup generated by all such
//! commutators is the tensor square of `G`; adding the relators
//! `[g, g'] = 1` turns it into the exterior square. Enumerating the
//! presentation gives a concrete group in which the pairing
//! `(x, y) -> [x, y']` can be evaluated by table lookups.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{abelian_invariants_of_subset, ConjugacyClasses, ElementSet, FiniteGroup};
use crate::presentation::{
    coset_action_to_group, todd_coxeter_with_strategy, EnumerationStrategy, Presentation, Word,
};

/// Default cap on `|G|` for pair-presentation constructions.
pub const DEFAULT_PAIR_ORDER_CAP: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingMode {
    Tensor,
    Exterior,
}

#[derive(Clone, Copy, Debug)]
pub struct PairConfig {
    pub order_cap: usize,
    pub coset_limit: usize,
}

impl Default for PairConfig {
    fn default() -> Self {
        PairConfig {
            order_cap: DEFAULT_PAIR_ORDER_CAP,
            coset_limit: crate::presentation::DEFAULT_COSET_LIMIT,
        }
    }
}

/// The pair presentation of `G`: generators `1..=n` are the left copy,
/// `n+1..=2n` the right copy.
pub fn build_pair_presentation(
    group: &FiniteGroup,
    mode: PairingMode,
    config: &PairConfig,
) -> Result<Presentation> {
    let n = group.order();
    if n > config.order_cap {
        return Err(Error::GroupTooLarge {
            order: n,
            cap: config.order_cap,
        });
    }
    let left = |g: usize| (g + 1) as i32;
    let right = |g: usize| (n + g + 1) as i32;
    // [a, b'] as a word
    let pair_word = |a: usize, b: usize| [left(a), right(b), -left(a), -right(b)];

    let mut relators = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = group.mul(a, b);
            relators.push(Word::new(vec![left(a), left(b), -left(ab)])?);
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = group.mul(a, b);
            relators.push(Word::new(vec![right(a), right(b), -right(ab)])?);
        }
    }
    if mode == PairingMode::Exterior {
        for g in 0..n {
            relators.push(Word::new(pair_word(g, g).to_vec())?);
        }
    }
    for x in 0..n {
        for g in 0..n {
            for h in 0..n {
                let cg = group.conj(x, g);
                let ch = group.conj(x, h);
                let base = pair_word(g, h);
                let target = pair_word(cg, ch);
                let inverse_target = [-target[3], -target[2], -target[1], -target[0]];
                for conjugator in [left(x), right(x)] {
                    let mut w = Vec::with_capacity(10);
                    w.push(conjugator);
                    w.extend_from_slice(&base);
                    w.push(-conjugator);
                    w.extend_from_slice(&inverse_target);
                    relators.push(Word::new(w)?);
                }
            }
        }
    }
    Presentation::new(2 * n, relators)
}

/// A realized tensor or exterior square of a finite group.
///
/// `ambient` is the enumerated pair group; `pairing_subgroup` is the
/// subgroup generated by all `[g, h']`, which is the tensor square in
/// tensor mode and the exterior square in exterior mode.
pub struct TensorStructure {
    base: FiniteGroup,
    mode: PairingMode,
    ambient: FiniteGroup,
    left_embed: Vec<u32>,
    right_embed: Vec<u32>,
    pairing_subgroup: ElementSet,
    /// The projection of the ambient group onto `G` sending both copies
    /// of `g` to `g`; restricted to the pairing subgroup this is the
    /// commutator map `[g, h'] -> [g, h]`.
    projection: Vec<u32>,
    base_classes: OnceLock<ConjugacyClasses>,
    centralizer_cache: Mutex<HashMap<usize, Bitset>>,
}

pub fn tensor_square(group: &FiniteGroup, config: &PairConfig) -> Result<TensorStructure> {
    TensorStructure::build(group, PairingMode::Tensor, config)
}

pub fn exterior_square(group: &FiniteGroup, config: &PairConfig) -> Result<TensorStructure> {
    TensorStructure::build(group, PairingMode::Exterior, config)
}

impl TensorStructure {
    fn build(group: &FiniteGroup, mode: PairingMode, config: &PairConfig) -> Result<Self> {
        let n = group.order();
        let presentation = build_pair_presentation(group, mode, config)?;

        // The projection onto G must kill every relator; this also
        // guards the relator construction itself.
        let base_of_generator = |i: usize| if i < n { i } else { i - n };
        for relator in presentation.relators() {
            let mut acc = 0usize;
            for &l in relator.letters() {
                let g = base_of_generator(l.unsigned_abs() as usize - 1);
                let g = if l > 0 { g } else { group.inv(g) };
                acc = group.mul(acc, g);
            }
            debug_assert_eq!(acc, 0, "relator does not project to the identity");
        }

        // The pair presentation is hugely redundant (cubically many
        // compatibility relators); coset-fill keeps the table near its
        // final size where HLT gap-filling would balloon past the limit.
        let table = todd_coxeter_with_strategy(
            &presentation,
            &[],
            config.coset_limit,
            EnumerationStrategy::CosetFill,
        )?;
        let (ambient, images) = coset_action_to_group(&table, &presentation)?;

        let left_embed: Vec<u32> = images[..n].iter().map(|&x| x as u32).collect();
        let right_embed: Vec<u32> = images[n..].iter().map(|&x| x as u32).collect();

        // Extend the generator projection over the whole ambient group.
        let m = ambient.order();
        let mut projection = vec![u32::MAX; m];
        projection[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (k, &img) in images.iter().enumerate() {
                let next = ambient.mul(a, img);
                let value = group.mul(projection[a] as usize, base_of_generator(k)) as u32;
                if projection[next] == u32::MAX {
                    projection[next] = value;
                    queue.push_back(next);
                } else {
                    debug_assert_eq!(projection[next], value);
                }
            }
        }
        debug_assert!(projection.iter().all(|&v| v != u32::MAX));

        let mut pairing_generators = std::collections::HashSet::new();
        for g in 0..n {
            for h in 0..n {
                pairing_generators
                    .insert(ambient.commutator(left_embed[g] as usize, right_embed[h] as usize));
            }
        }
        let pairing_subgroup = ElementSet::subgroup_closure(&ambient, pairing_generators);

        assert_eq!(
            ambient.order(),
            n * n * pairing_subgroup.order(),
            "pair group order must be |G|^2 * |pairing|"
        );

        Ok(TensorStructure {
            base: group.clone(),
            mode,
            ambient,
            left_embed,
            right_embed,
            pairing_subgroup,
            projection,
            base_classes: OnceLock::new(),
            centralizer_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn mode(&self) -> PairingMode {
        self.mode
    }

    pub fn ambient(&self) -> &FiniteGroup {
        &self.ambient
    }

    pub fn left_embed(&self, g: usize) -> usize {
        self.left_embed[g] as usize
    }

    pub fn right_embed(&self, g: usize) -> usize {
        self.right_embed[g] as usize
    }

    pub fn pairing_subgroup(&self) -> &ElementSet {
        &self.pairing_subgroup
    }

    /// Image in `G` of an ambient element under the two-copies-to-one
    /// projection.
    pub fn project(&self, ambient_element: usize) -> usize {
        self.projection[ambient_element] as usize
    }

    /// `[x, y']` in the ambient group; the tensor or exterior pairing.
    pub fn pair(&self, x: usize, y: usize) -> usize {
        self.ambient
            .commutator(self.left_embed(x), self.right_embed(y))
    }

    /// The exterior pairing `x ∧ y`. Errors in tensor mode.
    pub fn wedge(&self, x: usize, y: usize) -> Result<usize> {
        if self.mode != PairingMode::Exterior {
            return Err(Error::WrongMode {
                expected: "exterior",
            });
        }
        Ok(self.pair(x, y))
    }

    fn require_exterior(&self) -> Result<()> {
        if self.mode != PairingMode::Exterior {
            return Err(Error::WrongMode {
                expected: "exterior",
            });
        }
        Ok(())
    }

    fn classes(&self) -> &ConjugacyClasses {
        self.base_classes
            .get_or_init(|| self.base.conjugacy_classes())
    }

    /// Members of `{y : x ∧ y = 1}` as a bitset, computed directly.
    fn centralizer_row_direct(&self, x: usize) -> Bitset {
        let n = self.base.order();
        Bitset::from_indices(n, (0..n).filter(|&y| self.pair(x, y) == 0))
    }

    /// Exterior-centralizer membership row for `x`, computed on the
    /// conjugacy-class representative and conjugated into place.
    pub(crate) fn centralizer_row(&self, x: usize) -> Result<Bitset> {
        self.require_exterior()?;
        let classes = self.classes();
        let rep = classes.representatives[classes.class_index(x)];
        let row_rep = {
            let mut cache = self.centralizer_cache.lock().unwrap();
            cache
                .entry(rep)
                .or_insert_with(|| self.centralizer_row_direct(rep))
                .clone()
        };
        if rep == x {
            return Ok(row_rep);
        }
        let w = classes.conjugator[x] as usize;
        let n = self.base.order();
        Ok(Bitset::from_indices(
            n,
            row_rep.iter().map(|y| self.base.conj(w, y)),
        ))
    }

    /// The exterior centralizer of `x`, verified to be a subgroup.
    pub fn exterior_centralizer(&self, x: usize) -> Result<ElementSet> {
        let row = self.centralizer_row(x)?;
        let set = ElementSet::from_members(&self.base, row);
        assert!(set.is_subgroup(), "exterior centralizer must be a subgroup");
        Ok(set)
    }

    /// Intersection of all exterior centralizers.
    pub fn exterior_center(&self) -> Result<ElementSet> {
        self.require_exterior()?;
        let n = self.base.order();
        let mut members = Bitset::full(n);
        for x in 0..n {
            members.intersect_with(&self.centralizer_row_direct(x));
        }
        let set = ElementSet::from_members(&self.base, members);
        debug_assert!(set.is_subgroup());
        Ok(set)
    }

    /// A group is capable exactly when its exterior center is trivial.
    pub fn is_capable(&self) -> Result<bool> {
        Ok(self.exterior_center()?.is_trivial())
    }

    /// Kernel of the projection restricted to the exterior square: the
    /// Schur multiplier.
    pub fn schur_multiplier(&self) -> Result<SchurData> {
        self.require_exterior()?;
        let members = Bitset::from_indices(
            self.ambient.order(),
            self.pairing_subgroup
                .iter()
                .filter(|&t| self.project(t) == 0),
        );
        let multiplier = ElementSet::from_members(&self.ambient, members);
        let multiplier_order = multiplier.order();
        // central in the exterior-square copy, hence abelian
        for m in multiplier.iter() {
            for t in self.pairing_subgroup.iter() {
                assert_eq!(
                    self.ambient.mul(m, t),
                    self.ambient.mul(t, m),
                    "multiplier must be central in the pairing subgroup"
                );
            }
        }
        let derived_order = self.base.derived_subgroup().order();
        assert_eq!(
            multiplier_order * derived_order,
            self.pairing_subgroup.order(),
            "multiplier order times |G'| must be the exterior square order"
        );
        let abelian_invariants = abelian_invariants_of_subset(&self.ambient, multiplier.members())?
            .into_iter()
            .filter(|&d| d > 1)
            .collect();
        Ok(SchurData {
            multiplier,
            multiplier_order,
            abelian_invariants,
        })
    }

    /// The subgroup generated by the diagonal pairs `[g, g']` and the
    /// kernel of the projection on the tensor square.
    pub fn nabla_and_j2(&self) -> Result<(ElementSet, ElementSet)> {
        if self.mode != PairingMode::Tensor {
            return Err(Error::WrongMode { expected: "tensor" });
        }
        let n = self.base.order();
        let nabla = ElementSet::subgroup_closure(&self.ambient, (0..n).map(|g| self.pair(g, g)));
        let j2 = ElementSet::from_members(
            &self.ambient,
            Bitset::from_indices(
                self.ambient.order(),
                self.pairing_subgroup
                    .iter()
                    .filter(|&t| self.project(t) == 0),
            ),
        );
        debug_assert!(nabla.members().is_subset_of(j2.members()));
        Ok((nabla, j2))
    }
}

/// Kernel-of-projection data for the exterior square.
pub struct SchurData {
    pub multiplier: ElementSet,
    pub multiplier_order: usize,
    /// Invariant factors `d_1 | d_2 | ...`, trivial factors dropped.
    pub abelian_invariants: Vec<u64>,
}
