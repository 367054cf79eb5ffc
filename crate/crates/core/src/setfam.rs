//! Set-family algebra over small ground sets.
//!
//! A [`Subset`] is a bitmask tagged with the size of its ground set. A
//! [`SetFamily`] keeps its members in canonical order (cardinality first,
//! then lexicographic on the ascending member lists) and free of duplicates,
//! so two families are equal exactly when their member lists are equal.
//!
//! Positions into a family's canonical list are themselves used as a ground
//! set: sections return positions, and a family of subsets of `A` indexed by
//! `B`'s positions is how sequences indexed by a family are represented.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::fintop::{PointSequence, Topology};

/// Largest ground set accepted anywhere in the crate.
pub const GROUND_LIMIT: usize = 16;

pub(crate) fn check_ground(n: usize) -> Result<()> {
    if n > GROUND_LIMIT {
        Err(Error::GroundTooLarge { ground: n, limit: GROUND_LIMIT })
    } else {
        Ok(())
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Ascending positions of the set bits of `bits`.
pub(crate) fn bit_positions(mut bits: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

/// Canonical comparison of two bitmasks: cardinality, then lexicographic
/// order of the ascending member lists.
pub(crate) fn canonical_cmp(a: u32, b: u32) -> Ordering {
    match a.count_ones().cmp(&b.count_ones()) {
        Ordering::Equal => {}
        other => return other,
    }
    let (mut x, mut y) = (a, b);
    while x != 0 && y != 0 {
        let (i, j) = (x.trailing_zeros(), y.trailing_zeros());
        if i != j {
            return i.cmp(&j);
        }
        x &= x - 1;
        y &= y - 1;
    }
    Ordering::Equal
}

/// A subset of `{0, .., ground - 1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    ground: usize,
    bits: u32,
}

impl Subset {
    pub fn new(ground: usize, members: &[usize]) -> Result<Self> {
        check_ground(ground)?;
        let mut bits = 0u32;
        for &m in members {
            if m >= ground {
                return Err(Error::IndexOutOfGround { index: m, ground });
            }
            bits |= 1 << m;
        }
        Ok(Self { ground, bits })
    }

    /// Builds a subset from a bitmask; bits at or above `ground` are rejected.
    pub fn from_bits(ground: usize, bits: u32) -> Result<Self> {
        check_ground(ground)?;
        if bits & !full_mask(ground) != 0 {
            let index = 31 - (bits & !full_mask(ground)).leading_zeros() as usize;
            return Err(Error::IndexOutOfGround { index, ground });
        }
        Ok(Self { ground, bits })
    }

    #[inline]
    pub(crate) fn raw(ground: usize, bits: u32) -> Self {
        debug_assert!(ground <= GROUND_LIMIT && bits & !full_mask(ground) == 0);
        Self { ground, bits }
    }

    pub fn empty(ground: usize) -> Result<Self> {
        Self::from_bits(ground, 0)
    }

    pub fn full(ground: usize) -> Result<Self> {
        check_ground(ground)?;
        Ok(Self { ground, bits: full_mask(ground) })
    }

    pub fn singleton(ground: usize, i: usize) -> Result<Self> {
        Self::new(ground, &[i])
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.ground)
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.ground && self.bits & (1 << i) != 0
    }

    /// Members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = usize> {
        bit_positions(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.ground, other.ground);
        Subset { ground: self.ground, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.ground, other.ground);
        Subset { ground: self.ground, bits: self.bits & other.bits }
    }

    pub fn complement(&self) -> Subset {
        Subset { ground: self.ground, bits: !self.bits & full_mask(self.ground) }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn meets(&self, other: &Subset) -> bool {
        self.bits & other.bits != 0
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground
            .cmp(&other.ground)
            .then_with(|| canonical_cmp(self.bits, other.bits))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

/// A finite family of subsets of one ground set, canonically ordered.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: usize,
    sets: Vec<Subset>,
}

impl SetFamily {
    pub fn empty(ground: usize) -> Result<Self> {
        check_ground(ground)?;
        Ok(Self { ground, sets: Vec::new() })
    }

    /// Canonicalizes (sorts and deduplicates) the given members.
    pub fn from_sets(ground: usize, sets: impl IntoIterator<Item = Subset>) -> Result<Self> {
        check_ground(ground)?;
        let mut sets: Vec<Subset> = sets.into_iter().collect();
        if let Some(s) = sets.iter().find(|s| s.ground != ground) {
            return Err(Error::GroundMismatch { expected: ground, found: s.ground });
        }
        sets.sort();
        sets.dedup();
        Ok(Self { ground, sets })
    }

    pub fn from_members(ground: usize, lists: &[&[usize]]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|m| Subset::new(ground, m))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sets(ground, sets)
    }

    pub(crate) fn from_masks(ground: usize, masks: impl IntoIterator<Item = u32>) -> Self {
        let mut bits: Vec<u32> = masks.into_iter().collect();
        bits.sort_by(|a, b| canonical_cmp(*a, *b));
        bits.dedup();
        Self { ground, sets: bits.into_iter().map(|b| Subset::raw(ground, b)).collect() }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.sets.iter()
    }

    pub fn get(&self, pos: usize) -> Option<&Subset> {
        self.sets.get(pos)
    }

    pub fn position(&self, s: &Subset) -> Option<usize> {
        if s.ground != self.ground {
            return None;
        }
        self.sets.binary_search(s).ok()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.position(s).is_some()
    }

    pub(crate) fn contains_bits(&self, bits: u32) -> bool {
        self.sets
            .binary_search_by(|probe| canonical_cmp(probe.bits, bits))
            .is_ok()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.sets.iter().all(|s| other.contains(s))
    }

    pub fn union(&self, other: &SetFamily) -> SetFamily {
        debug_assert_eq!(self.ground, other.ground);
        Self::from_masks(self.ground, self.sets.iter().chain(other.sets.iter()).map(|s| s.bits))
    }

    pub fn intersection(&self, other: &SetFamily) -> SetFamily {
        Self::from_masks(
            self.ground,
            self.sets.iter().filter(|s| other.contains(s)).map(|s| s.bits),
        )
    }

    pub(crate) fn masks(&self) -> Vec<u32> {
        self.sets.iter().map(|s| s.bits).collect()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sets.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

impl Ord for SetFamily {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground
            .cmp(&other.ground)
            .then(self.sets.len().cmp(&other.sets.len()))
            .then_with(|| self.sets.cmp(&other.sets))
    }
}

impl PartialOrd for SetFamily {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite set of families over one ground set, ordered by member count
/// and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FamilyCollection {
    ground: usize,
    families: Vec<SetFamily>,
}

impl FamilyCollection {
    pub fn new(ground: usize, families: impl IntoIterator<Item = SetFamily>) -> Result<Self> {
        check_ground(ground)?;
        let mut families: Vec<SetFamily> = families.into_iter().collect();
        if let Some(f) = families.iter().find(|f| f.ground != ground) {
            return Err(Error::GroundMismatch { expected: ground, found: f.ground });
        }
        families.sort();
        families.dedup();
        Ok(Self { ground, families })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn families(&self) -> &[SetFamily] {
        &self.families
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SetFamily> {
        self.families.iter()
    }

    pub fn contains(&self, fam: &SetFamily) -> bool {
        self.families.binary_search(fam).is_ok()
    }

    /// Union of all member families.
    pub fn union_all(&self) -> SetFamily {
        SetFamily::from_masks(
            self.ground,
            self.families.iter().flat_map(|f| f.sets.iter().map(|s| s.bits)),
        )
    }

    /// Intersection of all member families; the empty collection gives the
    /// whole powerset.
    pub fn intersection_all(&self) -> SetFamily {
        let mut acc = powerset_unchecked(self.ground);
        for f in &self.families {
            acc = acc.intersection(f);
        }
        acc
    }
}

fn powerset_unchecked(n: usize) -> SetFamily {
    SetFamily::from_masks(n, 0..=full_mask(n))
}

/// All `2^n` subsets of `{0, .., n - 1}`.
pub fn powerset(n: usize) -> Result<SetFamily> {
    check_ground(n)?;
    Ok(powerset_unchecked(n))
}

/// `E⁺`: every subset of the ground set that meets each member of `e`.
pub fn transversal_dual(e: &SetFamily) -> SetFamily {
    let masks = e.masks();
    SetFamily::from_masks(
        e.ground,
        (0..=full_mask(e.ground)).filter(|a| masks.iter().all(|m| a & m != 0)),
    )
}

pub fn upward_closure(e: &SetFamily) -> SetFamily {
    let masks = e.masks();
    SetFamily::from_masks(
        e.ground,
        (0..=full_mask(e.ground)).filter(|a| masks.iter().any(|m| m & !a == 0)),
    )
}

pub fn downward_closure(b: &SetFamily) -> SetFamily {
    let masks = b.masks();
    SetFamily::from_masks(
        b.ground,
        (0..=full_mask(b.ground)).filter(|a| masks.iter().any(|m| a & !m == 0)),
    )
}

pub fn is_upward_closed(e: &SetFamily) -> bool {
    let full = full_mask(e.ground);
    e.sets.iter().all(|s| {
        // adding one element at a time suffices
        bit_positions(!s.bits & full).all(|i| e.contains_bits(s.bits | 1 << i))
    })
}

/// Positions in `a` of the members containing point `i`.
pub fn point_section(i: usize, a: &SetFamily) -> Result<Subset> {
    if i >= a.ground {
        return Err(Error::IndexOutOfGround { index: i, ground: a.ground });
    }
    section(i, a)
}

/// Positions in `b` of the members containing element `a`.
///
/// Same computation as [`point_section`]; kept separate because `b` is a
/// family over the index set `A` rather than over points.
pub fn member_section(a: usize, b: &SetFamily) -> Result<Subset> {
    if a >= b.ground {
        return Err(Error::IndexOutOfGround { index: a, ground: b.ground });
    }
    section(a, b)
}

fn section(i: usize, fam: &SetFamily) -> Result<Subset> {
    check_ground(fam.len())?;
    let bits = fam
        .sets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.contains(i))
        .fold(0u32, |acc, (p, _)| acc | 1 << p);
    Ok(Subset::raw(fam.len(), bits))
}

pub fn is_filter(e: &SetFamily) -> bool {
    if e.is_empty() || e.contains_bits(0) || !is_upward_closed(e) {
        return false;
    }
    e.sets
        .iter()
        .all(|x| e.sets.iter().all(|y| e.contains_bits(x.bits & y.bits)))
}

pub fn is_ultrafilter(e: &SetFamily) -> bool {
    is_filter(e) && transversal_dual(e) == *e
}

/// Ultrafilter test through the complement criterion: exactly one of `a` and
/// its complement belongs to `e`, for every `a`.
pub fn is_ultrafilter_by_complements(e: &SetFamily) -> bool {
    let full = full_mask(e.ground);
    is_filter(e) && (0..=full).all(|a| e.contains_bits(a) != e.contains_bits(!a & full))
}

pub fn principal_ultrafilter(i: usize, n: usize) -> Result<SetFamily> {
    check_ground(n)?;
    if i >= n {
        return Err(Error::IndexOutOfGround { index: i, ground: n });
    }
    Ok(SetFamily::from_masks(n, (0..=full_mask(n)).filter(|a| a & (1 << i) != 0)))
}

/// Subsets of `{0, .., n - 1}` with fewer than `mu` elements.
pub fn family_card_below(n: usize, mu: usize) -> Result<SetFamily> {
    check_ground(n)?;
    Ok(SetFamily::from_masks(
        n,
        (0..=full_mask(n)).filter(|a| (a.count_ones() as usize) < mu),
    ))
}

/// The smallest `E` for which `x` is an `E`-accumulation point of `seq`:
/// the index sets `{i : seq(i) ∈ U}` for the open neighbourhoods `U` of `x`.
pub fn minimal_accumulation_family(
    seq: &PointSequence,
    x: usize,
    space: &Topology,
) -> Result<SetFamily> {
    space.check_point(x)?;
    seq.check_in(space)?;
    check_ground(seq.len())?;
    Ok(SetFamily::from_masks(
        seq.len(),
        space.neighbourhoods(x).iter().map(|&u| seq.index_set(u)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(ground: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_members(ground, lists).unwrap()
    }

    #[test]
    fn powerset_small() {
        assert_eq!(powerset(0).unwrap(), fam(0, &[&[]]));
        assert_eq!(powerset(1).unwrap(), fam(1, &[&[], &[0]]));
        let p2 = powerset(2).unwrap();
        let lists: Vec<Vec<usize>> = p2.iter().map(|s| s.to_vec()).collect();
        assert_eq!(lists, vec![vec![], vec![0], vec![1], vec![0, 1]]);
        assert!(matches!(powerset(17), Err(Error::GroundTooLarge { .. })));
    }

    #[test]
    fn canonical_order_is_cardinality_then_lex() {
        let p3 = powerset(3).unwrap();
        let lists: Vec<Vec<usize>> = p3.iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            lists,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn duplicates_collapse() {
        let f = fam(2, &[&[1], &[0], &[1]]);
        assert_eq!(f.len(), 2);
        assert_eq!(f, fam(2, &[&[0], &[1]]));
    }

    #[test]
    fn subset_rejects_out_of_range() {
        assert_eq!(
            Subset::new(2, &[2]),
            Err(Error::IndexOutOfGround { index: 2, ground: 2 })
        );
        assert!(Subset::from_bits(2, 0b100).is_err());
    }

    #[test]
    fn transversal_dual_examples() {
        assert_eq!(transversal_dual(&SetFamily::empty(2).unwrap()), powerset(2).unwrap());
        assert!(transversal_dual(&fam(2, &[&[]])).is_empty());
        let e = fam(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(
            transversal_dual(&e),
            fam(3, &[&[1], &[0, 2], &[0, 1], &[1, 2], &[0, 1, 2]])
        );
    }

    #[test]
    fn closures_examples() {
        let empty = SetFamily::empty(2).unwrap();
        assert_eq!(upward_closure(&empty), empty);
        assert_eq!(upward_closure(&fam(2, &[&[0]])), fam(2, &[&[0], &[0, 1]]));
        assert_eq!(
            upward_closure(&fam(2, &[&[0], &[1]])),
            fam(2, &[&[0], &[1], &[0, 1]])
        );
        assert_eq!(downward_closure(&empty), empty);
        assert_eq!(downward_closure(&fam(2, &[&[0, 1]])), powerset(2).unwrap());
        assert_eq!(
            downward_closure(&fam(3, &[&[0], &[1, 2]])),
            fam(3, &[&[], &[0], &[1], &[2], &[1, 2]])
        );
    }

    #[test]
    fn upward_closed_examples() {
        assert!(is_upward_closed(&SetFamily::empty(2).unwrap()));
        assert!(!is_upward_closed(&fam(2, &[&[0]])));
        assert!(is_upward_closed(&fam(2, &[&[0], &[0, 1]])));
    }

    #[test]
    fn sections() {
        let a = fam(2, &[&[0], &[1], &[0, 1]]);
        assert_eq!(point_section(0, &a).unwrap().to_vec(), vec![0, 2]);
        assert!(point_section(1, &fam(2, &[&[0]])).unwrap().is_empty());
        let p3 = powerset(3).unwrap();
        // {2}, {0,2}, {1,2}, {0,1,2} sit at positions 3, 5, 6, 7
        assert_eq!(point_section(2, &p3).unwrap().to_vec(), vec![3, 5, 6, 7]);
        assert!(point_section(3, &p3).is_err());

        assert_eq!(member_section(0, &fam(2, &[&[0], &[1]])).unwrap().to_vec(), vec![0]);
        assert!(member_section(0, &SetFamily::empty(2).unwrap()).unwrap().is_empty());
        // canonical order of {{0,1},{1},{0}} is {0},{1},{0,1}
        let b = fam(2, &[&[0, 1], &[1], &[0]]);
        assert_eq!(member_section(1, &b).unwrap().to_vec(), vec![1, 2]);
    }

    #[test]
    fn filters() {
        let principal = fam(2, &[&[0], &[0, 1]]);
        assert!(is_filter(&principal));
        assert!(is_ultrafilter(&principal));
        assert!(is_ultrafilter_by_complements(&principal));
        let top = fam(2, &[&[0, 1]]);
        assert!(is_filter(&top));
        assert!(!is_ultrafilter(&top));
        assert!(!is_filter(&fam(2, &[&[]])));
        assert!(!is_filter(&SetFamily::empty(2).unwrap()));
    }

    #[test]
    fn principal_ultrafilters() {
        assert_eq!(principal_ultrafilter(0, 1).unwrap(), fam(1, &[&[0]]));
        assert_eq!(principal_ultrafilter(0, 2).unwrap(), fam(2, &[&[0], &[0, 1]]));
        assert_eq!(
            principal_ultrafilter(1, 3).unwrap(),
            fam(3, &[&[1], &[0, 1], &[1, 2], &[0, 1, 2]])
        );
        assert!(principal_ultrafilter(2, 2).is_err());
    }

    #[test]
    fn card_below() {
        assert_eq!(family_card_below(2, 1).unwrap(), fam(2, &[&[]]));
        assert_eq!(family_card_below(2, 2).unwrap(), fam(2, &[&[], &[0], &[1]]));
        assert_eq!(family_card_below(3, 3).unwrap().len(), 7);
        assert_eq!(family_card_below(2, 9).unwrap(), powerset(2).unwrap());
    }

    #[test]
    fn collection_union_and_intersection() {
        let d0 = principal_ultrafilter(0, 2).unwrap();
        let d1 = principal_ultrafilter(1, 2).unwrap();
        let m = FamilyCollection::new(2, [d1.clone(), d0.clone()]).unwrap();
        assert_eq!(m.families()[0], d0);
        assert_eq!(m.union_all(), fam(2, &[&[0], &[1], &[0, 1]]));
        assert_eq!(m.intersection_all(), fam(2, &[&[0, 1]]));
        let none = FamilyCollection::new(2, []).unwrap();
        assert_eq!(none.intersection_all(), powerset(2).unwrap());
        assert!(none.union_all().is_empty());
    }
}
