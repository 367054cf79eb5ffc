//! Builders for the canonical counterexample spaces and the index families
//! the theorems re-index by.

use crate::error::{Error, Result};
use crate::fintop::Topology;
use crate::setfam::{check_ground, full_mask, point_section, SetFamily, Subset};

/// A space whose points are the members of a family `B ⊆ 𝒫(A)`: point `j`
/// is `labels[j]`, the `j`-th member of `B` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleSpace {
    pub space: Topology,
    pub labels: SetFamily,
    a_size: usize,
}

impl ExampleSpace {
    /// `a^≮ = {H ∈ B : a ∉ H}` as a set of points.
    pub fn avoiding(&self, a: usize) -> Subset {
        let bits = self
            .labels
            .iter()
            .enumerate()
            .filter(|(_, h)| !h.contains(a))
            .fold(0u32, |acc, (j, _)| acc | 1 << j);
        Subset::raw(self.labels.len(), bits)
    }

    /// `a^< = {H ∈ B : a ∈ H}` as a set of points.
    pub fn containing(&self, a: usize) -> Subset {
        self.avoiding(a).complement()
    }

    /// The cover `(a^≮)_{a∈A}`, which no `H ∈ B` reduces.
    pub fn subbase_cover(&self) -> Vec<Subset> {
        (0..self.a_size).map(|a| self.avoiding(a)).collect()
    }
}

fn check_example_input(a_size: usize, b: &SetFamily) -> Result<()> {
    if b.ground_size() != a_size {
        return Err(Error::GroundMismatch { expected: a_size, found: b.ground_size() });
    }
    if b.is_empty() {
        return Err(Error::PreconditionViolated("B must be nonempty".into()));
    }
    if b.iter().any(|h| h.is_full()) {
        return Err(Error::PreconditionViolated("B must not contain the full index set".into()));
    }
    check_ground(b.len())
}

fn example_space(a_size: usize, b: &SetFamily, both_sides: bool) -> Result<ExampleSpace> {
    check_example_input(a_size, b)?;
    let mut out = ExampleSpace {
        space: Topology::empty_space(),
        labels: b.clone(),
        a_size,
    };
    let mut subbase: Vec<Subset> = (0..a_size).map(|a| out.avoiding(a)).collect();
    if both_sides {
        subbase.extend((0..a_size).map(|a| out.containing(a)));
    }
    let subbase = SetFamily::from_sets(b.len(), subbase)?;
    out.space = Topology::from_subbase(b.len(), &subbase)?;
    Ok(out)
}

/// `B` topologized by the subbase `{a^≮ : a ∈ A}`.
pub fn example_space_a(a_size: usize, b: &SetFamily) -> Result<ExampleSpace> {
    example_space(a_size, b, false)
}

/// `B` topologized by the subbase `{a^≮, a^< : a ∈ A}`, the subspace of the
/// discrete product `{0, 1}^A`.
pub fn example_space_b(a_size: usize, b: &SetFamily) -> Result<ExampleSpace> {
    example_space(a_size, b, true)
}

/// `{i^<_A : i ∈ I}`, each section given as positions into `A`.
pub fn sections_family(i_size: usize, a: &SetFamily) -> Result<SetFamily> {
    if a.ground_size() != i_size {
        return Err(Error::GroundMismatch { expected: i_size, found: a.ground_size() });
    }
    check_ground(a.len())?;
    let sections = (0..i_size)
        .map(|i| point_section(i, a))
        .collect::<Result<Vec<_>>>()?;
    SetFamily::from_sets(a.len(), sections)
}

/// `{Z ⊆ B : ⋃Z = A}`, subfamilies given as positions into `B`.
pub fn cover_dual_family(a_size: usize, b: &SetFamily) -> Result<SetFamily> {
    if b.ground_size() != a_size {
        return Err(Error::GroundMismatch { expected: a_size, found: b.ground_size() });
    }
    if check_ground(b.len()).is_err() {
        return Err(Error::BudgetExceeded {
            required: 1u64.checked_shl(b.len() as u32).unwrap_or(u64::MAX),
            limit: 1 << crate::setfam::GROUND_LIMIT,
        });
    }
    Ok(covering_subfamilies(b, full_mask(a_size)))
}

/// `{Z ⊆ B : ⋃Z ⊇ target}` as positions into `B`; `b.len()` must be within
/// the ground limit.
pub(crate) fn covering_subfamilies(b: &SetFamily, target: u32) -> SetFamily {
    let masks = b.masks();
    SetFamily::from_masks(
        b.len(),
        (0..=full_mask(b.len())).filter(|&z| {
            let covered = crate::setfam::bit_positions(z).fold(0, |acc, p| acc | masks[p]);
            target & !covered == 0
        }),
    )
}

/// `𝒫(A) ∖ {A}`.
pub fn irreducible_test_family(a_size: usize) -> Result<SetFamily> {
    check_ground(a_size)?;
    let full = full_mask(a_size);
    Ok(SetFamily::from_masks(a_size, (0..full).filter(|&s| s != full)))
}

/// `{A ∖ {a} : a ∈ A}`.
pub fn complements_family(a_size: usize) -> Result<SetFamily> {
    check_ground(a_size)?;
    let full = full_mask(a_size);
    Ok(SetFamily::from_masks(a_size, (0..a_size).map(|a| full & !(1 << a))))
}

/// `{[0, n) : n < |A|}`.
pub fn initial_segments(a_size: usize) -> Result<SetFamily> {
    check_ground(a_size)?;
    Ok(SetFamily::from_masks(a_size, (0..a_size).map(full_mask)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectorMode {
    /// Exactly one element from each class.
    OneOf,
    /// At most `k` elements from each class.
    AtMost(usize),
}

/// Selector families over a partition `G` of `A`.
pub fn selector_families(a_size: usize, g: &SetFamily, mode: SelectorMode) -> Result<SetFamily> {
    check_partition(a_size, g)?;
    let classes: Vec<u32> = g.iter().map(|s| s.bits()).collect();
    Ok(SetFamily::from_masks(
        a_size,
        (0..=full_mask(a_size)).filter(|h| {
            classes.iter().all(|c| {
                let hit = (h & c).count_ones() as usize;
                match mode {
                    SelectorMode::OneOf => hit == 1,
                    SelectorMode::AtMost(k) => hit <= k,
                }
            })
        }),
    ))
}

fn check_partition(a_size: usize, g: &SetFamily) -> Result<()> {
    if g.ground_size() != a_size {
        return Err(Error::GroundMismatch { expected: a_size, found: g.ground_size() });
    }
    let mut seen = 0u32;
    for class in g {
        if class.is_empty() {
            return Err(Error::NotAPartition("empty class".into()));
        }
        if class.bits() & seen != 0 {
            return Err(Error::NotAPartition(format!("class {class:?} overlaps another class")));
        }
        seen |= class.bits();
    }
    if seen != full_mask(a_size) {
        let missing = Subset::raw(a_size, full_mask(a_size) & !seen);
        return Err(Error::NotAPartition(format!("elements {missing:?} are not covered")));
    }
    Ok(())
}
