//! Exhaustive decision procedures for the covering and accumulation
//! properties.
//!
//! Every checker enumerates sequences (repetition allowed) in lexicographic
//! order of their entries' canonical positions and reports the first
//! counterexample it meets. Before enumerating, a checker declares its cost,
//! the number of sequences times the work per sequence, and refuses with
//! [`Error::BudgetExceeded`] when that exceeds the checker's budget; nothing
//! is ever truncated.
//!
//! Conventions: a union over an empty index set is `∅`, an intersection over
//! an empty index set is the whole point set.

mod cover_class;
mod property;

use std::ops::ControlFlow;

pub use cover_class::{CoverClass, DenseOpenFamilies, ExplicitCovers, OpenCovers};
pub use property::Property;

use crate::constructions::{complements_family, cover_dual_family, sections_family};
use crate::error::{Error, Result};
use crate::fintop::{index_set, PointSequence, SubsetSequence, Topology};
use crate::setfam::{
    bit_positions, full_mask, is_ultrafilter, powerset, FamilyCollection, SetFamily, Subset,
};

/// Default enumeration cap, in elementary checks.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Outcome of a checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Declared enumeration cost charged against the budget.
    pub cost: u64,
}

/// Re-checkable evidence attached to a [`Verdict`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Open sets indexed by `A`: a violating cover for a failed covering
    /// property, or the irreducible cover found by
    /// [`Checker::irreducible_cover`].
    OpenSequence(Vec<Subset>),
    /// Closed sets indexed by `A` violating a closed-set formulation.
    ClosedSequence(Vec<Subset>),
    /// A point sequence without an accumulation point.
    PointSequence(Vec<usize>),
    /// A sequence of members of `𝓕` without a limit point.
    SetSequence(Vec<Subset>),
    /// For a satisfied point accumulation property: each sequence, in
    /// enumeration order, with the first accumulation point found.
    Accumulation(Vec<(Vec<usize>, usize)>),
    /// Same as [`Witness::Accumulation`] for sequences of members of `𝓕`.
    LimitPoints(Vec<(Vec<Subset>, usize)>),
}

#[inline]
pub(crate) fn union_over(seq: &[u32], h: u32) -> u32 {
    bit_positions(h).fold(0, |acc, a| acc | seq[a])
}

#[inline]
pub(crate) fn inter_over(seq: &[u32], h: u32, full: u32) -> u32 {
    bit_positions(h).fold(full, |acc, a| acc & seq[a])
}

#[inline]
pub(crate) fn meets_all(u: u32, fam: &[u32]) -> bool {
    fam.iter().all(|f| u & f != 0)
}

/// Visits every length-`len` sequence over `domain` in lexicographic order,
/// handing over the chosen indices and the corresponding domain values.
pub(crate) fn try_sequences<T: Copy, B>(
    domain: &[T],
    len: usize,
    mut f: impl FnMut(&[usize], &[T]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if len == 0 {
        return f(&[], &[]);
    }
    if domain.is_empty() {
        return ControlFlow::Continue(());
    }
    let mut idx = vec![0usize; len];
    let mut vals = vec![domain[0]; len];
    loop {
        f(&idx, &vals)?;
        let mut p = len;
        loop {
            if p == 0 {
                return ControlFlow::Continue(());
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < domain.len() {
                vals[p] = domain[idx[p]];
                break;
            }
            idx[p] = 0;
            vals[p] = domain[0];
        }
    }
}

/// First sequence over `domain` satisfying `bad`.
pub(crate) fn find_sequence<T: Copy>(
    domain: &[T],
    len: usize,
    mut bad: impl FnMut(&[T]) -> bool,
) -> Option<Vec<T>> {
    match try_sequences(domain, len, |_, vals| {
        if bad(vals) {
            ControlFlow::Break(vals.to_vec())
        } else {
            ControlFlow::Continue(())
        }
    }) {
        ControlFlow::Break(v) => Some(v),
        ControlFlow::Continue(()) => None,
    }
}

fn ensure_ground(expected: usize, fam: &SetFamily) -> Result<()> {
    if fam.ground_size() != expected {
        Err(Error::GroundMismatch { expected, found: fam.ground_size() })
    } else {
        Ok(())
    }
}

fn ensure_collection_ground(expected: usize, c: &FamilyCollection) -> Result<()> {
    if c.ground_size() != expected {
        Err(Error::GroundMismatch { expected, found: c.ground_size() })
    } else {
        Ok(())
    }
}

fn ensure_index_limit(len: usize) -> Result<()> {
    crate::setfam::check_ground(len)
}

fn subsets(points: usize, masks: &[u32]) -> Vec<Subset> {
    masks.iter().map(|&b| Subset::raw(points, b)).collect()
}

/// Runs the exhaustive checkers under an enumeration budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checker {
    budget: u64,
}

impl Default for Checker {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET }
    }
}

impl Checker {
    pub fn new(budget: u64) -> Self {
        Self { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Declares `base^len` sequences with `per` units of work each.
    pub(crate) fn charge(&self, base: usize, len: usize, per: usize) -> Result<u64> {
        let required = u32::try_from(len)
            .ok()
            .and_then(|len| (base as u64).checked_pow(len))
            .and_then(|n| n.checked_mul(per.max(1) as u64));
        match required {
            Some(r) if r <= self.budget => Ok(r),
            Some(r) => Err(Error::BudgetExceeded { required: r, limit: self.budget }),
            None => Err(Error::BudgetExceeded { required: u64::MAX, limit: self.budget }),
        }
    }

    /// `[B, A]`-compactness: every open cover `(O_a)_{a∈A}` has some `H ∈ B`
    /// with `(O_a)_{a∈H}` covering.
    pub fn ba_compact(&self, space: &Topology, a_size: usize, b: &SetFamily) -> Result<Verdict> {
        ensure_ground(a_size, b)?;
        let opens = space.open_masks();
        let cost = self.charge(opens.len(), a_size, b.len())?;
        let full = space.full();
        let hs = b.masks();
        let bad = find_sequence(&opens, a_size, |seq| {
            union_over(seq, full_mask(a_size)) == full
                && !hs.iter().any(|&h| union_over(seq, h) == full)
        });
        Ok(covering_verdict(space, bad, cost, Witness::OpenSequence))
    }

    /// The closed-set formulation: if every `H ∈ B` has `⋂_{a∈H} C_a ≠ ∅`
    /// then `⋂_{a∈A} C_a ≠ ∅`.
    pub fn ba_compact_closed(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
    ) -> Result<Verdict> {
        ensure_ground(a_size, b)?;
        let closed = space.closed_sets().masks();
        let cost = self.charge(closed.len(), a_size, b.len())?;
        let full = space.full();
        let hs = b.masks();
        let bad = find_sequence(&closed, a_size, |seq| {
            hs.iter().all(|&h| inter_over(seq, h, full) != 0)
                && inter_over(seq, full_mask(a_size), full) == 0
        });
        Ok(covering_verdict(space, bad, cost, Witness::ClosedSequence))
    }

    /// `𝓕-[B, A]`-compactness: every open cover has some `H ∈ B` whose
    /// union meets every member of `𝓕`.
    pub fn f_ba_compact(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
        f: &SetFamily,
    ) -> Result<Verdict> {
        ensure_ground(a_size, b)?;
        ensure_ground(space.point_count(), f)?;
        let opens = space.open_masks();
        let cost = self.charge(opens.len(), a_size, b.len() * f.len().max(1))?;
        let full = space.full();
        let hs = b.masks();
        let fs = f.masks();
        let bad = find_sequence(&opens, a_size, |seq| {
            union_over(seq, full_mask(a_size)) == full
                && !hs.iter().any(|&h| meets_all(union_over(seq, h), &fs))
        });
        Ok(covering_verdict(space, bad, cost, Witness::OpenSequence))
    }

    /// Closed form of `𝓕-[B, A]`-compactness: if every `H ∈ B` has some
    /// `F ∈ 𝓕` inside `⋂_{a∈H} C_a`, then `⋂_{a∈A} C_a ≠ ∅`.
    pub fn f_ba_compact_closed(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
        f: &SetFamily,
    ) -> Result<Verdict> {
        ensure_ground(a_size, b)?;
        ensure_ground(space.point_count(), f)?;
        let closed = space.closed_sets().masks();
        let cost = self.charge(closed.len(), a_size, b.len() * f.len().max(1))?;
        let full = space.full();
        let hs = b.masks();
        let fs = f.masks();
        let bad = find_sequence(&closed, a_size, |seq| {
            hs.iter().all(|&h| {
                let c = inter_over(seq, h, full);
                fs.iter().any(|&m| m & !c == 0)
            }) && inter_over(seq, full_mask(a_size), full) == 0
        });
        Ok(covering_verdict(space, bad, cost, Witness::ClosedSequence))
    }

    /// `[B, G]`-compactness, or its `𝓕`-relativization when `f` is given:
    /// every open sequence covering along each `K ∈ G` has some `H ∈ B`
    /// covering (with union meeting every member of `𝓕`).
    pub fn bg_compact(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
        g: &SetFamily,
    ) -> Result<Verdict> {
        self.bg_open(space, a_size, b, g, None)
    }

    pub fn f_bg_compact(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
        g: &SetFamily,
        f: &SetFamily,
    ) -> Result<Verdict> {
        self.bg_open(space, a_size, b, g, Some(f))
    }

    fn bg_open(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
        g: &SetFamily,
        f: Option<&SetFamily>,
    ) -> Result<Verdict> {
        ensure_ground(a_size, b)?;
        ensure_ground(a_size, g)?;
        if let Some(f) = f {
            ensure_ground(space.point_count(), f)?;
        }
        let opens = space.open_masks();
        let per = (b.len() + g.len()) * f.map_or(1, |f| f.len().max(1));
        let cost = self.charge(opens.len(), a_size, per)?;
        let full = space.full();
        let hs = b.masks();
        let ks = g.masks();
        let fs = f.map(|f| f.masks());
        let bad = find_sequence(&opens, a_size, |seq| {
            ks.iter().all(|&k| union_over(seq, k) == full)
                && !hs.iter().any(|&h| {
                    let u = union_over(seq, h);
                    match &fs {
                        None => u == full,
                        Some(fs) => meets_all(u, fs),
                    }
                })
        });
        Ok(covering_verdict(space, bad, cost, Witness::OpenSequence))
    }

    /// Closed form of `[B, G]`-compactness: if every `H ∈ B` has
    /// `⋂_{a∈H} C_a ≠ ∅`, then some `K ∈ G` has `⋂_{a∈K} C_a ≠ ∅`.
    pub fn bg_compact_closed(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
        g: &SetFamily,
    ) -> Result<Verdict> {
        self.bg_closed(space, a_size, b, g, None)
    }

    /// Closed form of `𝓕-[B, G]`-compactness.
    pub fn f_bg_compact_closed(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
        g: &SetFamily,
        f: &SetFamily,
    ) -> Result<Verdict> {
        self.bg_closed(space, a_size, b, g, Some(f))
    }

    fn bg_closed(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
        g: &SetFamily,
        f: Option<&SetFamily>,
    ) -> Result<Verdict> {
        ensure_ground(a_size, b)?;
        ensure_ground(a_size, g)?;
        if let Some(f) = f {
            ensure_ground(space.point_count(), f)?;
        }
        let closed = space.closed_sets().masks();
        let per = (b.len() + g.len()) * f.map_or(1, |f| f.len().max(1));
        let cost = self.charge(closed.len(), a_size, per)?;
        let full = space.full();
        let hs = b.masks();
        let ks = g.masks();
        let fs = f.map(|f| f.masks());
        let bad = find_sequence(&closed, a_size, |seq| {
            hs.iter().all(|&h| {
                let c = inter_over(seq, h, full);
                match &fs {
                    None => c != 0,
                    Some(fs) => fs.iter().any(|&m| m & !c == 0),
                }
            }) && ks.iter().all(|&k| inter_over(seq, k, full) == 0)
        });
        Ok(covering_verdict(space, bad, cost, Witness::ClosedSequence))
    }

    /// `E`-accumulation property: every `I`-indexed point sequence has a
    /// point `x` with `{i : x_i ∈ U} ∈ E` for every open `U ∋ x`.
    pub fn e_accumulation(&self, space: &Topology, i_size: usize, e: &SetFamily) -> Result<Verdict> {
        ensure_ground(i_size, e)?;
        self.point_accumulation(space, i_size, |values, x| accumulates(space, values, x, e))
    }

    /// `𝓔`-accumulation property (or its `𝓕` form when `f` is given): every
    /// sequence has a point that is an `E`-accumulation (`E`-limit) point
    /// for some `E ∈ 𝓔`.
    pub fn cal_e_accumulation(
        &self,
        space: &Topology,
        i_size: usize,
        cal_e: &FamilyCollection,
        f: Option<&SetFamily>,
    ) -> Result<Verdict> {
        ensure_collection_ground(i_size, cal_e)?;
        match f {
            None => self.point_accumulation(space, i_size, |values, x| {
                cal_e.iter().any(|e| accumulates(space, values, x, e))
            }),
            Some(f) => self.set_accumulation(space, i_size, f, |values, x| {
                cal_e.iter().any(|e| limits(space, values, x, e))
            }),
        }
    }

    /// `𝓕-E`-accumulation property: every `I`-indexed sequence of members of
    /// `𝓕` has an `E`-limit point.
    pub fn f_e_accumulation(
        &self,
        space: &Topology,
        i_size: usize,
        e: &SetFamily,
        f: &SetFamily,
    ) -> Result<Verdict> {
        ensure_ground(i_size, e)?;
        self.set_accumulation(space, i_size, f, |values, x| limits(space, values, x, e))
    }

    fn point_accumulation(
        &self,
        space: &Topology,
        i_size: usize,
        is_point: impl Fn(&[usize], usize) -> bool,
    ) -> Result<Verdict> {
        ensure_index_limit(i_size)?;
        let n = space.point_count();
        let per = n * space.opens().len();
        let cost = self.charge(n, i_size, per)?;
        let points: Vec<usize> = (0..n).collect();
        let mut found = Vec::new();
        let outcome = try_sequences(&points, i_size, |_, values| {
            match (0..n).find(|&x| is_point(values, x)) {
                Some(x) => {
                    found.push((values.to_vec(), x));
                    ControlFlow::Continue(())
                }
                None => ControlFlow::Break(values.to_vec()),
            }
        });
        Ok(match outcome {
            ControlFlow::Break(seq) => Verdict {
                holds: false,
                witness: Some(Witness::PointSequence(seq)),
                cost,
            },
            ControlFlow::Continue(()) => Verdict {
                holds: true,
                witness: Some(Witness::Accumulation(found)),
                cost,
            },
        })
    }

    fn set_accumulation(
        &self,
        space: &Topology,
        i_size: usize,
        f: &SetFamily,
        is_point: impl Fn(&[u32], usize) -> bool,
    ) -> Result<Verdict> {
        ensure_index_limit(i_size)?;
        ensure_ground(space.point_count(), f)?;
        let n = space.point_count();
        let cost = self.charge(f.len(), i_size, n * space.opens().len())?;
        let domain = f.masks();
        let mut found = Vec::new();
        let outcome = try_sequences(&domain, i_size, |_, values| {
            match (0..n).find(|&x| is_point(values, x)) {
                Some(x) => {
                    found.push((subsets(n, values), x));
                    ControlFlow::Continue(())
                }
                None => ControlFlow::Break(subsets(n, values)),
            }
        });
        Ok(match outcome {
            ControlFlow::Break(seq) => Verdict {
                holds: false,
                witness: Some(Witness::SetSequence(seq)),
                cost,
            },
            ControlFlow::Continue(()) => Verdict {
                holds: true,
                witness: Some(Witness::LimitPoints(found)),
                cost,
            },
        })
    }

    /// `D`-compactness by `D`-convergence of every sequence.
    pub fn d_compact(&self, space: &Topology, d: &SetFamily) -> Result<Verdict> {
        if !is_ultrafilter(d) {
            return Err(Error::NotAnUltrafilter);
        }
        self.e_accumulation(space, d.ground_size(), d)
    }

    /// `D`-compactness as a covering property: every open cover
    /// `(O_Z)_{Z∈D}` has some `i ∈ I` with `(O_Z)_{i∈Z}` covering.
    pub fn d_compact_covering(&self, space: &Topology, d: &SetFamily) -> Result<Verdict> {
        if !is_ultrafilter(d) {
            return Err(Error::NotAnUltrafilter);
        }
        let b = sections_family(d.ground_size(), d)?;
        self.ba_compact(space, d.len(), &b)
    }

    fn check_ultrafilters(&self, i_size: usize, m: &FamilyCollection) -> Result<()> {
        ensure_collection_ground(i_size, m)?;
        if m.iter().all(is_ultrafilter) {
            Ok(())
        } else {
            Err(Error::NotAnUltrafilter)
        }
    }

    /// Weak `M`-compactness: the `E`-accumulation property for `E = ⋃M`.
    pub fn weak_m_compact(&self, space: &Topology, m: &FamilyCollection) -> Result<Verdict> {
        self.check_ultrafilters(m.ground_size(), m)?;
        self.e_accumulation(space, m.ground_size(), &m.union_all())
    }

    /// Covering form of weak `M`-compactness with `F = ⋂M`: every open
    /// cover `(O_Z)_{Z∈F}` has some `i` with `(O_Z)_{i∈Z∈F}` covering.
    pub fn weak_m_compact_covering(
        &self,
        space: &Topology,
        m: &FamilyCollection,
    ) -> Result<Verdict> {
        self.check_ultrafilters(m.ground_size(), m)?;
        let f = m.intersection_all();
        let b = sections_family(m.ground_size(), &f)?;
        self.ba_compact(space, f.len(), &b)
    }

    /// Quasi `M`-compactness: every sequence `D`-converges for some `D ∈ M`.
    pub fn quasi_m_compact(&self, space: &Topology, m: &FamilyCollection) -> Result<Verdict> {
        self.check_ultrafilters(m.ground_size(), m)?;
        self.cal_e_accumulation(space, m.ground_size(), m, None)
    }

    /// Covering form of quasi `M`-compactness with `A = ⋃M`: open sets
    /// `(O_a)_{a∈A}` covering along every `D ∈ M` admit some `i` with
    /// `(O_a)_{i∈a∈A}` covering.
    pub fn quasi_m_compact_covering(
        &self,
        space: &Topology,
        m: &FamilyCollection,
    ) -> Result<Verdict> {
        self.check_ultrafilters(m.ground_size(), m)?;
        let (a, b, g) = union_reindexing(m)?;
        self.bg_compact(space, a.len(), &b, &g)
    }

    /// `[B_𝓑, G_𝓐]`-compactness over arbitrary subsets `(O_a)_{a∈A}`:
    /// whenever every `(O_a)_{a∈K}`, `K ∈ G`, is a cover in `𝓐`, some
    /// `(O_a)_{a∈H}`, `H ∈ B`, is a cover in `𝓑`.
    pub fn selective_compact(
        &self,
        space: &Topology,
        a_size: usize,
        b: &SetFamily,
        g: &SetFamily,
        class_a: &dyn CoverClass,
        class_b: &dyn CoverClass,
    ) -> Result<Verdict> {
        ensure_ground(a_size, b)?;
        ensure_ground(a_size, g)?;
        let all: Vec<u32> = (0..=space.full()).collect();
        let cost = self.charge(all.len(), a_size, b.len() + g.len())?;
        let hs = b.masks();
        let ks = g.masks();
        let restrict = |seq: &[u32], k: u32| -> Vec<u32> { bit_positions(k).map(|a| seq[a]).collect() };
        let bad = find_sequence(&all, a_size, |seq| {
            ks.iter().all(|&k| class_a.admits(space, &restrict(seq, k)))
                && !hs.iter().any(|&h| class_b.admits(space, &restrict(seq, h)))
        });
        Ok(covering_verdict(space, bad, cost, Witness::OpenSequence))
    }

    /// Whether `space` has an irreducible cover indexed by `k` elements, i.e.
    /// fails `[𝒫(k) ∖ {k}, k]`-compactness; the witness is the cover.
    pub fn irreducible_cover(&self, space: &Topology, k: usize) -> Result<Verdict> {
        let all = powerset(k)?;
        let full = Subset::full(k)?;
        let b = SetFamily::from_sets(k, all.iter().copied().filter(|s| *s != full))?;
        let v = self.ba_compact(space, k, &b)?;
        Ok(Verdict { holds: !v.holds, witness: v.witness, cost: v.cost })
    }

    /// Companion of [`Checker::irreducible_cover`]: whether some sequence
    /// indexed by `B = {A ∖ {a}}` has no accumulation point for
    /// `E = {Z ⊆ B : ⋃Z = A}`. For `k ≥ 2` this says every point has a
    /// neighbourhood holding at most one index of the sequence.
    pub fn sparse_sequence(&self, space: &Topology, k: usize) -> Result<Verdict> {
        let b = complements_family(k)?;
        let e = cover_dual_family(k, &b)?;
        let v = self.e_accumulation(space, b.len(), &e)?;
        let witness = match v.witness {
            Some(Witness::PointSequence(seq)) => Some(Witness::PointSequence(seq)),
            _ => None,
        };
        Ok(Verdict { holds: !v.holds, witness, cost: v.cost })
    }
}

/// `A = ⋃M` as a family over `I`, the sections `B = {i^<_A}` and each
/// `D ∈ M` re-expressed as a set of positions in `A`.
pub(crate) fn union_reindexing(
    m: &FamilyCollection,
) -> Result<(SetFamily, SetFamily, SetFamily)> {
    let a = m.union_all();
    ensure_index_limit(a.len())?;
    let b = sections_family(m.ground_size(), &a)?;
    let g = positions_of(&a, m.families())?;
    Ok((a, b, g))
}

/// Each family in `fams` as the set of its members' positions in `a`.
pub(crate) fn positions_of(a: &SetFamily, fams: &[SetFamily]) -> Result<SetFamily> {
    let sets = fams
        .iter()
        .map(|f| {
            let bits = f.iter().fold(0u32, |acc, s| {
                acc | a.position(s).map_or(0, |p| 1 << p)
            });
            Subset::from_bits(a.len(), bits)
        })
        .collect::<Result<Vec<_>>>()?;
    SetFamily::from_sets(a.len(), sets)
}

fn covering_verdict(
    space: &Topology,
    bad: Option<Vec<u32>>,
    cost: u64,
    wrap: fn(Vec<Subset>) -> Witness,
) -> Verdict {
    match bad {
        Some(seq) => Verdict {
            holds: false,
            witness: Some(wrap(subsets(space.point_count(), &seq))),
            cost,
        },
        None => Verdict { holds: true, witness: None, cost },
    }
}

fn accumulates(space: &Topology, values: &[usize], x: usize, e: &SetFamily) -> bool {
    space
        .neighbourhoods(x)
        .iter()
        .all(|&u| e.contains_bits(index_set(values, u)))
}

fn limits(space: &Topology, values: &[u32], x: usize, e: &SetFamily) -> bool {
    space.neighbourhoods(x).iter().all(|&u| {
        let hit = values
            .iter()
            .enumerate()
            .filter(|(_, &f)| f & u != 0)
            .fold(0u32, |acc, (i, _)| acc | 1 << i);
        e.contains_bits(hit)
    })
}

/// `x` is an `E`-accumulation point of `seq`: `{i : seq(i) ∈ U} ∈ E` for
/// every open `U ∋ x`.
pub fn is_e_accumulation_point(
    space: &Topology,
    seq: &PointSequence,
    x: usize,
    e: &SetFamily,
) -> Result<bool> {
    space.check_point(x)?;
    seq.check_in(space)?;
    ensure_ground(seq.len(), e)?;
    Ok(accumulates(space, seq.values(), x, e))
}

/// `x` is an `E`-limit point of `seq`: `{i : F_i ∩ U ≠ ∅} ∈ E` for every
/// open `U ∋ x`.
pub fn is_e_limit_point(
    space: &Topology,
    seq: &SubsetSequence,
    x: usize,
    e: &SetFamily,
) -> Result<bool> {
    space.check_point(x)?;
    seq.check_in(space)?;
    ensure_ground(seq.len(), e)?;
    let masks: Vec<u32> = seq.values().iter().map(|s| s.bits()).collect();
    Ok(limits(space, &masks, x, e))
}
