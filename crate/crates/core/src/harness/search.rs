use super::Instance;
use crate::checkers::Checker;
use crate::error::{Error, Result};
use crate::fintop::all_topologies;
use crate::setfam::{powerset, principal_ultrafilter, FamilyCollection, SetFamily};

/// Implications the searcher can test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `[B, A]`-compact implies `[B′, A]`-compact whenever `B ⊆ B′`.
    SupersetMonotone,
    /// `[B′, A]`-compact implies `[B, A]`-compact whenever `B ⊊ B′`.
    SubsetMonotone,
    /// Weakly `M`-compact implies quasi `M`-compact.
    WeakImpliesQuasi,
    /// Quasi `M`-compact implies weakly `M`-compact.
    QuasiImpliesWeak,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::SupersetMonotone => "superset-monotone",
            Claim::SubsetMonotone => "subset-monotone",
            Claim::WeakImpliesQuasi => "weak-implies-quasi",
            Claim::QuasiImpliesWeak => "quasi-implies-weak",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Claim::SupersetMonotone,
            Claim::SubsetMonotone,
            Claim::WeakImpliesQuasi,
            Claim::QuasiImpliesWeak,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }
}

/// Search space: every labelled topology on up to `max_points` points and
/// every index set of size up to `max_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_points: usize,
    pub max_index: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self { max_points: 2, max_index: 2 }
    }
}

/// The first instance, in canonical order (points, then topologies in
/// enumeration order, then index size, then families by their choice
/// masks), where the premise of `claim` holds and its conclusion fails.
pub fn find_counterexample(
    checker: &Checker,
    claim: Claim,
    bounds: SearchBounds,
) -> Result<Option<Instance>> {
    let index_limit = match claim {
        Claim::SupersetMonotone | Claim::SubsetMonotone => 3,
        _ => 4,
    };
    if bounds.max_index > index_limit {
        return Err(Error::GroundTooLarge { ground: bounds.max_index, limit: index_limit });
    }
    for n in 0..=bounds.max_points {
        for space in all_topologies(n)? {
            for k in 0..=bounds.max_index {
                let found = match claim {
                    Claim::SupersetMonotone | Claim::SubsetMonotone => {
                        monotone(checker, &space, k, claim == Claim::SupersetMonotone)?
                    }
                    Claim::WeakImpliesQuasi | Claim::QuasiImpliesWeak => {
                        ultrafilters(checker, &space, k, claim == Claim::WeakImpliesQuasi)?
                    }
                };
                if let Some(mut instance) = found {
                    instance.space = Some(space);
                    return Ok(Some(instance));
                }
            }
        }
    }
    Ok(None)
}

fn monotone(
    checker: &Checker,
    space: &crate::fintop::Topology,
    k: usize,
    upward: bool,
) -> Result<Option<Instance>> {
    let all = powerset(k)?;
    let count = 1u64 << all.len();
    let family = |choice: u64| {
        SetFamily::from_sets(
            k,
            all.iter().enumerate().filter(|(p, _)| choice & (1 << p) != 0).map(|(_, s)| *s),
        )
    };
    let mut verdicts = Vec::with_capacity(count as usize);
    for choice in 0..count {
        verdicts.push(checker.ba_compact(space, k, &family(choice)?)?.holds);
    }
    for small in 0..count {
        for large in 0..count {
            if small & !large != 0 || small == large {
                continue;
            }
            let (premise, conclusion) = if upward {
                (verdicts[small as usize], verdicts[large as usize])
            } else {
                (verdicts[large as usize], verdicts[small as usize])
            };
            if premise && !conclusion {
                return Ok(Some(Instance {
                    a_size: Some(k),
                    b: Some(family(small)?),
                    b_prime: Some(family(large)?),
                    ..Instance::default()
                }));
            }
        }
    }
    Ok(None)
}

fn ultrafilters(
    checker: &Checker,
    space: &crate::fintop::Topology,
    k: usize,
    weak_first: bool,
) -> Result<Option<Instance>> {
    let principal = (0..k).map(|i| principal_ultrafilter(i, k)).collect::<Result<Vec<_>>>()?;
    for choice in 0u32..(1 << k) {
        let m = FamilyCollection::new(
            k,
            principal.iter().enumerate().filter(|(i, _)| choice & (1 << i) != 0).map(|(_, d)| d.clone()),
        )?;
        let weak = checker.weak_m_compact(space, &m)?.holds;
        let quasi = checker.quasi_m_compact(space, &m)?.holds;
        let (premise, conclusion) = if weak_first { (weak, quasi) } else { (quasi, weak) };
        if premise && !conclusion {
            return Ok(Some(Instance { i_size: Some(k), collection: Some(m), ..Instance::default() }));
        }
    }
    Ok(None)
}
