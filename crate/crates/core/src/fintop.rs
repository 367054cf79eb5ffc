//! Finite topological spaces.
//!
//! A [`Topology`] stores its whole open-set family. On a finite space every
//! point has a smallest open neighbourhood, which is what closure, interior
//! and the separation checks run on.

use crate::error::{Error, Result};
use crate::setfam::{bit_positions, check_ground, full_mask, SetFamily, Subset, GROUND_LIMIT};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Topology {
    points: usize,
    opens: SetFamily,
    /// Open sets containing each point, in canonical order of `opens`.
    nbhds: Vec<Vec<u32>>,
    min_nbhd: Vec<u32>,
}

impl Topology {
    /// Validates that `opens` contains `∅` and the whole space and is closed
    /// under pairwise unions and intersections.
    pub fn new(points: usize, opens: SetFamily) -> Result<Self> {
        check_ground(points)?;
        if opens.ground_size() != points {
            return Err(Error::GroundMismatch { expected: points, found: opens.ground_size() });
        }
        let full = full_mask(points);
        if !opens.contains_bits(0) {
            return Err(Error::Invalid("opens must contain the empty set []".into()));
        }
        if !opens.contains_bits(full) {
            return Err(Error::Invalid(format!(
                "opens must contain the full point set {:?}",
                Subset::raw(points, full)
            )));
        }
        let masks = opens.masks();
        for (i, &u) in masks.iter().enumerate() {
            for &v in &masks[i + 1..] {
                if !opens.contains_bits(u | v) {
                    return Err(Error::Invalid(format!(
                        "opens not closed under union: missing {:?}",
                        Subset::raw(points, u | v)
                    )));
                }
                if !opens.contains_bits(u & v) {
                    return Err(Error::Invalid(format!(
                        "opens not closed under intersection: missing {:?}",
                        Subset::raw(points, u & v)
                    )));
                }
            }
        }
        Ok(Self::assemble(points, opens))
    }

    fn assemble(points: usize, opens: SetFamily) -> Self {
        let masks = opens.masks();
        let nbhds: Vec<Vec<u32>> = (0..points)
            .map(|x| masks.iter().copied().filter(|u| u & (1 << x) != 0).collect())
            .collect();
        let min_nbhd = nbhds
            .iter()
            .map(|us| us.iter().fold(full_mask(points), |acc, u| acc & u))
            .collect();
        Self { points, opens, nbhds, min_nbhd }
    }

    /// Smallest topology containing `subbase`. The intersection of no
    /// subbase members is the whole space, so an empty subbase gives the
    /// indiscrete topology.
    pub fn from_subbase(points: usize, subbase: &SetFamily) -> Result<Self> {
        check_ground(points)?;
        if subbase.ground_size() != points {
            return Err(Error::GroundMismatch { expected: points, found: subbase.ground_size() });
        }
        let full = full_mask(points);
        let mut base: Vec<u32> = vec![full];
        for s in subbase {
            let extra: Vec<u32> = base.iter().map(|b| b & s.bits()).collect();
            base.extend(extra);
            base.sort_unstable();
            base.dedup();
        }
        // a set is open iff it is the union of the basic sets it contains
        let opens = (0..=full).filter(|&a| {
            base.iter().filter(|&&b| b & !a == 0).fold(0, |acc, b| acc | b) == a
        });
        Ok(Self::assemble(points, SetFamily::from_masks(points, opens)))
    }

    pub fn discrete(points: usize) -> Result<Self> {
        check_ground(points)?;
        Ok(Self::assemble(points, SetFamily::from_masks(points, 0..=full_mask(points))))
    }

    pub fn indiscrete(points: usize) -> Result<Self> {
        check_ground(points)?;
        Ok(Self::assemble(points, SetFamily::from_masks(points, [0, full_mask(points)])))
    }

    /// Opens `∅`, `{0}`, `{0, 1}`.
    pub fn sierpinski() -> Self {
        Self::assemble(2, SetFamily::from_masks(2, [0b00, 0b01, 0b11]))
    }

    /// The space with no points.
    pub fn empty_space() -> Self {
        Self::assemble(0, SetFamily::from_masks(0, [0]))
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    pub fn closed_sets(&self) -> SetFamily {
        let full = full_mask(self.points);
        SetFamily::from_masks(self.points, self.opens.iter().map(|u| !u.bits() & full))
    }

    pub(crate) fn full(&self) -> u32 {
        full_mask(self.points)
    }

    pub(crate) fn open_masks(&self) -> Vec<u32> {
        self.opens.masks()
    }

    /// Open sets containing `x`.
    pub(crate) fn neighbourhoods(&self, x: usize) -> &[u32] {
        &self.nbhds[x]
    }

    pub(crate) fn check_point(&self, x: usize) -> Result<()> {
        if x >= self.points {
            Err(Error::IndexOutOfGround { index: x, ground: self.points })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_subset(&self, s: &Subset) -> Result<()> {
        if s.ground_size() != self.points {
            Err(Error::GroundMismatch { expected: self.points, found: s.ground_size() })
        } else {
            Ok(())
        }
    }

    pub fn is_open(&self, s: &Subset) -> bool {
        s.ground_size() == self.points && self.opens.contains(s)
    }

    pub fn is_closed(&self, s: &Subset) -> bool {
        s.ground_size() == self.points && self.opens.contains(&s.complement())
    }

    #[inline]
    pub(crate) fn closure_bits(&self, s: u32) -> u32 {
        let mut out = 0;
        for (x, &u) in self.min_nbhd.iter().enumerate() {
            if u & s != 0 {
                out |= 1 << x;
            }
        }
        out
    }

    #[inline]
    pub(crate) fn interior_bits(&self, s: u32) -> u32 {
        let mut out = 0;
        for (x, &u) in self.min_nbhd.iter().enumerate() {
            if u & !s == 0 {
                out |= 1 << x;
            }
        }
        out
    }

    pub fn closure(&self, s: &Subset) -> Subset {
        debug_assert_eq!(s.ground_size(), self.points);
        Subset::raw(self.points, self.closure_bits(s.bits()))
    }

    pub fn interior(&self, s: &Subset) -> Subset {
        debug_assert_eq!(s.ground_size(), self.points);
        Subset::raw(self.points, self.interior_bits(s.bits()))
    }

    pub fn is_t0(&self) -> bool {
        let masks = self.open_masks();
        (0..self.points).all(|x| {
            (x + 1..self.points).all(|y| {
                masks.iter().any(|u| ((u >> x) & 1) != ((u >> y) & 1))
            })
        })
    }

    pub fn is_t1(&self) -> bool {
        (0..self.points).all(|x| self.closure_bits(1 << x) == 1 << x)
    }

    /// Lexicographically least sorted open-mask list over all relabellings
    /// of the points; two spaces are homeomorphic iff their forms agree.
    pub fn canonical_form(&self) -> Vec<u32> {
        let masks = self.open_masks();
        let mut best: Option<Vec<u32>> = None;
        for_each_permutation(self.points, &mut |perm| {
            let mut relabelled: Vec<u32> = masks
                .iter()
                .map(|&u| bit_positions(u).fold(0, |acc, x| acc | 1 << perm[x]))
                .collect();
            relabelled.sort_unstable();
            if best.as_ref().is_none_or(|b| relabelled < *b) {
                best = Some(relabelled);
            }
        });
        best.unwrap_or_default()
    }
}

fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(perm: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(perm, k + 1, f);
            perm.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    go(&mut perm, 0, f);
}

/// Largest point count accepted by [`all_topologies`].
pub const ENUMERATION_POINT_LIMIT: usize = 4;

/// Every topology on `{0, .., n - 1}` (labelled, not up to homeomorphism),
/// in order of their candidate masks.
pub fn all_topologies(n: usize) -> Result<Vec<Topology>> {
    if n > ENUMERATION_POINT_LIMIT {
        return Err(Error::PreconditionViolated(format!(
            "topology enumeration supports at most {ENUMERATION_POINT_LIMIT} points"
        )));
    }
    let full = full_mask(n);
    let middle: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for choice in 0u32..(1 << middle.len()) {
        let mut masks = vec![0, full];
        masks.extend(bit_positions(choice).map(|i| middle[i]));
        let closed = masks
            .iter()
            .all(|&u| masks.iter().all(|&v| masks.contains(&(u | v)) && masks.contains(&(u & v))));
        if closed {
            out.push(Topology::assemble(n, SetFamily::from_masks(n, masks)));
        }
    }
    Ok(out)
}

/// An `I`-indexed sequence of points.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSequence {
    values: Vec<usize>,
}

impl PointSequence {
    pub fn new(values: Vec<usize>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn check_in(&self, space: &Topology) -> Result<()> {
        match self.values.iter().find(|&&v| v >= space.point_count()) {
            Some(&v) => Err(Error::IndexOutOfGround { index: v, ground: space.point_count() }),
            None => Ok(()),
        }
    }

    /// `{i : seq(i) ∈ u}` as a bitmask over the index set.
    pub(crate) fn index_set(&self, u: u32) -> u32 {
        index_set(&self.values, u)
    }
}

#[inline]
pub(crate) fn index_set(values: &[usize], u: u32) -> u32 {
    let mut out = 0;
    for (i, &v) in values.iter().enumerate() {
        if u & (1 << v) != 0 {
            out |= 1 << i;
        }
    }
    out
}

/// An `I`-indexed sequence of subsets of a space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubsetSequence {
    values: Vec<Subset>,
}

impl SubsetSequence {
    pub fn new(values: Vec<Subset>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Subset] {
        &self.values
    }

    pub fn check_in(&self, space: &Topology) -> Result<()> {
        self.values.iter().try_for_each(|s| space.check_subset(s))
    }
}

/// A finite directed preorder on `{0, .., size - 1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirectedSet {
    size: usize,
    /// `up[s]` holds every `t` with `s ≤ t`.
    up: Vec<u32>,
}

impl DirectedSet {
    /// Builds the relation from `(s, t)` pairs meaning `s ≤ t`; reflexive
    /// pairs may be omitted.
    pub fn new(size: usize, leq: &[(usize, usize)]) -> Result<Self> {
        check_ground(size)?;
        let mut up: Vec<u32> = (0..size).map(|s| 1 << s).collect();
        for &(s, t) in leq {
            for i in [s, t] {
                if i >= size {
                    return Err(Error::IndexOutOfGround { index: i, ground: size });
                }
            }
            up[s] |= 1 << t;
        }
        for s in 0..size {
            for t in bit_positions(up[s]) {
                if up[t] & !up[s] != 0 {
                    return Err(Error::Invalid(format!("relation is not transitive at ({s}, {t})")));
                }
            }
        }
        for s in 0..size {
            for t in s + 1..size {
                if up[s] & up[t] == 0 {
                    return Err(Error::Invalid(format!("{s} and {t} have no upper bound")));
                }
            }
        }
        Ok(Self { size, up })
    }

    /// `0 ≤ 1 ≤ .. ≤ size - 1`.
    pub fn chain(size: usize) -> Result<Self> {
        check_ground(size)?;
        let up = (0..size).map(|s| full_mask(size) & !full_mask(s)).collect();
        Ok(Self { size, up })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.up[s] & (1 << t) != 0
    }

    pub fn up_set(&self, s: usize) -> Subset {
        Subset::raw(self.size, self.up[s])
    }

    pub fn is_cofinal(&self, t: &Subset) -> bool {
        (0..self.size).all(|s| self.up[s] & t.bits() != 0)
    }
}

/// Whether `x` is a cluster point of the net `seq` restricted to `t`: for
/// every `τ ∈ t` and every open `U ∋ x` some `σ ≥ τ` has `seq(σ) ∈ U`.
pub fn restricted_cluster_point(
    space: &Topology,
    sigma: &DirectedSet,
    seq: &PointSequence,
    t: &Subset,
    x: usize,
) -> Result<bool> {
    space.check_point(x)?;
    seq.check_in(space)?;
    if seq.len() != sigma.size() {
        return Err(Error::GroundMismatch { expected: sigma.size(), found: seq.len() });
    }
    if t.ground_size() != sigma.size() {
        return Err(Error::GroundMismatch { expected: sigma.size(), found: t.ground_size() });
    }
    Ok(t.members().all(|tau| {
        space
            .neighbourhoods(x)
            .iter()
            .all(|&u| seq.index_set(u) & sigma.up[tau] != 0)
    }))
}

const _: () = assert!(ENUMERATION_POINT_LIMIT <= GROUND_LIMIT);
