use crate::fintop::Topology;
use crate::setfam::{FamilyCollection, SetFamily};

/// A class of covers, decided on the list of members `(O_a)_{a∈K}` given as
/// point bitmasks.
pub trait CoverClass {
    fn admits(&self, space: &Topology, members: &[u32]) -> bool;
}

/// Open covers of the whole space.
#[derive(Clone, Copy, Debug, Default)]
pub struct OpenCovers;

impl CoverClass for OpenCovers {
    fn admits(&self, space: &Topology, members: &[u32]) -> bool {
        members.iter().all(|&m| space.opens().contains_bits(m))
            && members.iter().fold(0, |acc, m| acc | m) == space.full()
    }
}

/// Families of open sets whose union is dense.
#[derive(Clone, Copy, Debug, Default)]
pub struct DenseOpenFamilies;

impl CoverClass for DenseOpenFamilies {
    fn admits(&self, space: &Topology, members: &[u32]) -> bool {
        let union = members.iter().fold(0, |acc, m| acc | m);
        members.iter().all(|&m| space.opens().contains_bits(m))
            && space.closure_bits(union) == space.full()
    }
}

/// A class listed extensionally: the set of members `{O_a : a ∈ K}` must
/// be one of the collection's families.
#[derive(Clone, Debug)]
pub struct ExplicitCovers(pub FamilyCollection);

impl CoverClass for ExplicitCovers {
    fn admits(&self, space: &Topology, members: &[u32]) -> bool {
        if self.0.ground_size() != space.point_count() {
            return false;
        }
        let fam = SetFamily::from_masks(space.point_count(), members.iter().copied());
        self.0.contains(&fam)
    }
}
