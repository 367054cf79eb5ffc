//! Condition-by-condition verifiers for the equivalence theorems, the
//! monotonicity facts, seeded instance generators and a counterexample
//! search driver.
//!
//! Each verifier evaluates every condition of a theorem on its own decision
//! path and reports whether they agree. Condition labels are descriptive;
//! variants with `𝓕` replaced by the closures of its members or by its
//! upward closure carry the suffixes `[closures]` and `[upward]`.

mod accumulation;
mod facts;
mod random;
mod search;
mod theorems;


pub use accumulation::{
    filter_reduction, verify_prop_ae, verify_prop_aeo, verify_theorem_r, verify_theorem_ree,
    verify_theorem_reef, verify_theorem_ro,
};
pub use facts::verify_facts;
pub use random::{random_family, random_topology, SplitMix64};
pub use search::{find_counterexample, Claim, SearchBounds};
pub use theorems::{verify_theorem_e, verify_theorem_eg, verify_theorem_eo, verify_theorem_eog};

use crate::checkers::{find_sequence, Checker, Verdict};
use crate::error::Result;
use crate::fintop::Topology;
use crate::setfam::{upward_closure, FamilyCollection, SetFamily, Subset};

/// The data a report was computed from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub space: Option<Topology>,
    pub a_size: Option<usize>,
    pub i_size: Option<usize>,
    pub a: Option<SetFamily>,
    pub b: Option<SetFamily>,
    pub b_prime: Option<SetFamily>,
    pub g: Option<SetFamily>,
    pub f: Option<SetFamily>,
    pub collection: Option<FamilyCollection>,
    pub seq: Option<Vec<usize>>,
    pub setseq: Option<Vec<Subset>>,
    pub point: Option<usize>,
}

impl Instance {
    pub(crate) fn on(space: &Topology) -> Self {
        Self { space: Some(space.clone()), ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub theorem: String,
    pub conditions: Vec<(String, bool)>,
    /// All condition values are equal.
    pub agree: bool,
    pub instance: Instance,
    /// Declared enumeration cost summed over all conditions.
    pub cost: u64,
}

impl ConditionReport {
    pub(crate) fn new(theorem: &str, conditions: Vec<(String, bool)>, instance: Instance, cost: u64) -> Self {
        let agree = conditions.windows(2).all(|w| w[0].1 == w[1].1);
        Self { theorem: theorem.to_string(), conditions, agree, instance, cost }
    }

    pub fn condition(&self, label: &str) -> Option<bool> {
        self.conditions.iter().find(|(l, _)| l == label).map(|&(_, v)| v)
    }

    /// The common value of all conditions, if they agree.
    pub fn value(&self) -> Option<bool> {
        match self.conditions.first() {
            Some(&(_, v)) if self.agree => Some(v),
            _ => None,
        }
    }

    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|&(_, v)| v)
    }

    /// Panics with the offending instance unless the conditions agree.
    pub fn expect_agreement(self) -> Self {
        if !self.agree {
            panic!(
                "{}: conditions disagree {:?} on {:?}",
                self.theorem, self.conditions, self.instance
            );
        }
        self
    }
}

/// Evaluation context: sums declared costs and enforces the checker's
/// budget on every enumeration.
pub(crate) struct Ctx<'a> {
    pub checker: &'a Checker,
    pub space: &'a Topology,
    pub cost: u64,
    pub conditions: Vec<(String, bool)>,
}

impl<'a> Ctx<'a> {
    pub fn new(checker: &'a Checker, space: &'a Topology) -> Self {
        Self { checker, space, cost: 0, conditions: Vec::new() }
    }

    /// Whether `pred` holds for every length-`len` sequence over `domain`.
    pub fn forall<T: Copy>(
        &mut self,
        domain: &[T],
        len: usize,
        per: usize,
        mut pred: impl FnMut(&[T]) -> bool,
    ) -> Result<bool> {
        let cost = self.checker.charge(domain.len(), len, per)?;
        self.cost = self.cost.saturating_add(cost);
        Ok(find_sequence(domain, len, |s| !pred(s)).is_none())
    }

    pub fn verdict(&mut self, v: Result<Verdict>) -> Result<bool> {
        let v = v?;
        self.cost = self.cost.saturating_add(v.cost);
        Ok(v.holds)
    }

    pub fn push(&mut self, label: impl Into<String>, value: bool) {
        self.conditions.push((label.into(), value));
    }

    pub fn finish(self, theorem: &str, instance: Instance) -> ConditionReport {
        ConditionReport::new(theorem, self.conditions, instance, self.cost)
    }

    pub fn full(&self) -> u32 {
        self.space.full()
    }

    pub fn cl(&self, m: u32) -> u32 {
        self.space.closure_bits(m)
    }

    pub fn all_subsets(&self) -> Vec<u32> {
        (0..=self.full()).collect()
    }

    /// Points as singleton masks, so gathering a point sequence over an
    /// index set is a union.
    pub fn point_masks(&self) -> Vec<u32> {
        (0..self.space.point_count()).map(|x| 1 << x).collect()
    }
}

/// `𝓕` and the two families the relativized theorems may substitute for
/// it: the closures of its members and its upward closure.
pub(crate) fn f_variants(space: &Topology, f: &SetFamily) -> Result<[(&'static str, SetFamily); 3]> {
    let closures = SetFamily::from_sets(
        space.point_count(),
        f.iter().map(|s| space.closure(s)),
    )?;
    Ok([("", f.clone()), ("[closures]", closures), ("[upward]", upward_closure(f))])
}

/// `F ⊆ m` for some `F ∈ fs`.
#[inline]
pub(crate) fn contains_member(fs: &[u32], m: u32) -> bool {
    fs.iter().any(|&f| f & !m == 0)
}
