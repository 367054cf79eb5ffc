use std::ops::ControlFlow;

use super::{
    accumulates, inter_over, limits, meets_all, try_sequences, union_over, union_reindexing,
    Checker, Verdict, Witness,
};
use crate::constructions::{irreducible_test_family, sections_family};
use crate::error::Result;
use crate::fintop::Topology;
use crate::setfam::{full_mask, FamilyCollection, SetFamily, Subset};

/// A named property together with its parameters, so that a verdict can be
/// produced and later re-validated from the same value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Property {
    BaCompact { a_size: usize, b: SetFamily },
    BaCompactClosed { a_size: usize, b: SetFamily },
    FBaCompact { a_size: usize, b: SetFamily, f: SetFamily },
    FBaCompactClosed { a_size: usize, b: SetFamily, f: SetFamily },
    BgCompact { a_size: usize, b: SetFamily, g: SetFamily },
    BgCompactClosed { a_size: usize, b: SetFamily, g: SetFamily },
    FBgCompact { a_size: usize, b: SetFamily, g: SetFamily, f: SetFamily },
    FBgCompactClosed { a_size: usize, b: SetFamily, g: SetFamily, f: SetFamily },
    DCompact { d: SetFamily },
    DCompactCovering { d: SetFamily },
    WeakM { m: FamilyCollection },
    WeakMCovering { m: FamilyCollection },
    QuasiM { m: FamilyCollection },
    QuasiMCovering { m: FamilyCollection },
    Accumulation { i_size: usize, e: SetFamily },
    FAccumulation { i_size: usize, e: SetFamily, f: SetFamily },
    CalEAccumulation { i_size: usize, cal_e: FamilyCollection, f: Option<SetFamily> },
    IrreducibleCover { k: usize },
}

/// Every property in the common shape its checker enumerates. `negated`
/// marks properties reported as the failure of the underlying one.
enum Normal {
    Cover {
        closed: bool,
        a_size: usize,
        b: SetFamily,
        g: SetFamily,
        f: Option<SetFamily>,
        negated: bool,
    },
    Accumulation {
        i_size: usize,
        cal_e: Vec<SetFamily>,
        f: Option<SetFamily>,
    },
}

fn whole(a_size: usize) -> Result<SetFamily> {
    SetFamily::from_sets(a_size, [Subset::full(a_size)?])
}

fn cover(closed: bool, a_size: usize, b: &SetFamily, f: Option<&SetFamily>) -> Result<Normal> {
    Ok(Normal::Cover {
        closed,
        a_size,
        b: b.clone(),
        g: whole(a_size)?,
        f: f.cloned(),
        negated: false,
    })
}

fn cover_g(closed: bool, a_size: usize, b: &SetFamily, g: &SetFamily, f: Option<&SetFamily>) -> Normal {
    Normal::Cover { closed, a_size, b: b.clone(), g: g.clone(), f: f.cloned(), negated: false }
}

impl Property {
    fn normal(&self) -> Result<Normal> {
        use Property::*;
        Ok(match self {
            BaCompact { a_size, b } => cover(false, *a_size, b, None)?,
            BaCompactClosed { a_size, b } => cover(true, *a_size, b, None)?,
            FBaCompact { a_size, b, f } => cover(false, *a_size, b, Some(f))?,
            FBaCompactClosed { a_size, b, f } => cover(true, *a_size, b, Some(f))?,
            BgCompact { a_size, b, g } => cover_g(false, *a_size, b, g, None),
            BgCompactClosed { a_size, b, g } => cover_g(true, *a_size, b, g, None),
            FBgCompact { a_size, b, g, f } => cover_g(false, *a_size, b, g, Some(f)),
            FBgCompactClosed { a_size, b, g, f } => cover_g(true, *a_size, b, g, Some(f)),
            DCompact { d } => Normal::Accumulation {
                i_size: d.ground_size(),
                cal_e: vec![d.clone()],
                f: None,
            },
            DCompactCovering { d } => {
                let b = sections_family(d.ground_size(), d)?;
                cover(false, d.len(), &b, None)?
            }
            WeakM { m } => Normal::Accumulation {
                i_size: m.ground_size(),
                cal_e: vec![m.union_all()],
                f: None,
            },
            WeakMCovering { m } => {
                let f = m.intersection_all();
                let b = sections_family(m.ground_size(), &f)?;
                cover(false, f.len(), &b, None)?
            }
            QuasiM { m } => Normal::Accumulation {
                i_size: m.ground_size(),
                cal_e: m.families().to_vec(),
                f: None,
            },
            QuasiMCovering { m } => {
                let (a, b, g) = union_reindexing(m)?;
                cover_g(false, a.len(), &b, &g, None)
            }
            Accumulation { i_size, e } => Normal::Accumulation {
                i_size: *i_size,
                cal_e: vec![e.clone()],
                f: None,
            },
            FAccumulation { i_size, e, f } => Normal::Accumulation {
                i_size: *i_size,
                cal_e: vec![e.clone()],
                f: Some(f.clone()),
            },
            CalEAccumulation { i_size, cal_e, f } => Normal::Accumulation {
                i_size: *i_size,
                cal_e: cal_e.families().to_vec(),
                f: f.clone(),
            },
            IrreducibleCover { k } => Normal::Cover {
                closed: false,
                a_size: *k,
                b: irreducible_test_family(*k)?,
                g: whole(*k)?,
                f: None,
                negated: true,
            },
        })
    }

    /// Re-validates `verdict` for this property on `space`: a witness is
    /// checked on its own, a verdict without one is recomputed.
    pub fn recheck(&self, space: &Topology, verdict: &Verdict) -> Result<bool> {
        let confirmed = match (self.normal()?, &verdict.witness) {
            (
                Normal::Cover { closed, a_size, b, g, f, negated },
                Some(Witness::OpenSequence(seq) | Witness::ClosedSequence(seq)),
            ) => {
                let right_kind = matches!(
                    (&verdict.witness, closed),
                    (Some(Witness::OpenSequence(_)), false) | (Some(Witness::ClosedSequence(_)), true)
                );
                // The witness refutes the underlying property.
                right_kind
                    && verdict.holds == negated
                    && refutes_cover(space, closed, a_size, &b, &g, f.as_ref(), seq)
            }
            (Normal::Accumulation { i_size, cal_e, f: None }, Some(Witness::PointSequence(seq))) => {
                !verdict.holds
                    && seq.len() == i_size
                    && seq.iter().all(|&x| x < space.point_count())
                    && !(0..space.point_count())
                        .any(|x| cal_e.iter().any(|e| accumulates(space, seq, x, e)))
            }
            (Normal::Accumulation { i_size, cal_e, f: Some(f) }, Some(Witness::SetSequence(seq))) => {
                let masks: Vec<u32> = seq.iter().map(|s| s.bits()).collect();
                !verdict.holds
                    && seq.len() == i_size
                    && seq.iter().all(|s| f.contains(s))
                    && !(0..space.point_count())
                        .any(|x| cal_e.iter().any(|e| limits(space, &masks, x, e)))
            }
            (Normal::Accumulation { i_size, cal_e, f: None }, Some(Witness::Accumulation(list))) => {
                let points: Vec<usize> = (0..space.point_count()).collect();
                verdict.holds
                    && covers_every_sequence(&points, i_size, list, |vals, entry| {
                        entry.0 == vals
                            && entry.1 < space.point_count()
                            && cal_e.iter().any(|e| accumulates(space, vals, entry.1, e))
                    })
            }
            (Normal::Accumulation { i_size, cal_e, f: Some(f) }, Some(Witness::LimitPoints(list))) => {
                let domain = f.masks();
                verdict.holds
                    && covers_every_sequence(&domain, i_size, list, |vals, entry| {
                        entry.0.iter().map(|s| s.bits()).eq(vals.iter().copied())
                            && entry.1 < space.point_count()
                            && cal_e.iter().any(|e| limits(space, vals, entry.1, e))
                    })
            }
            (_, None) => {
                let fresh = Checker::new(u64::MAX).check(space, self)?;
                fresh.holds == verdict.holds
            }
            _ => false,
        };
        Ok(confirmed)
    }
}

fn refutes_cover(
    space: &Topology,
    closed: bool,
    a_size: usize,
    b: &SetFamily,
    g: &SetFamily,
    f: Option<&SetFamily>,
    seq: &[Subset],
) -> bool {
    let n = space.point_count();
    if seq.len() != a_size || seq.iter().any(|s| s.ground_size() != n) {
        return false;
    }
    let full = full_mask(n);
    let masks: Vec<u32> = seq.iter().map(|s| s.bits()).collect();
    let fs = f.map(|f| f.masks());
    if closed {
        seq.iter().all(|s| space.is_closed(s))
            && b.iter().all(|h| {
                let c = inter_over(&masks, h.bits(), full);
                match &fs {
                    None => c != 0,
                    Some(fs) => fs.iter().any(|&m| m & !c == 0),
                }
            })
            && g.iter().all(|k| inter_over(&masks, k.bits(), full) == 0)
    } else {
        seq.iter().all(|s| space.is_open(s))
            && g.iter().all(|k| union_over(&masks, k.bits()) == full)
            && !b.iter().any(|h| {
                let u = union_over(&masks, h.bits());
                match &fs {
                    None => u == full,
                    Some(fs) => meets_all(u, fs),
                }
            })
    }
}

/// `list` names every length-`len` sequence over `domain`, in enumeration
/// order, each paired with a valid point.
fn covers_every_sequence<T: Copy, E>(
    domain: &[T],
    len: usize,
    list: &[E],
    ok: impl Fn(&[T], &E) -> bool,
) -> bool {
    let mut entries = list.iter();
    let walk = try_sequences(domain, len, |_, vals| match entries.next() {
        Some(entry) if ok(vals, entry) => ControlFlow::Continue(()),
        _ => ControlFlow::Break(()),
    });
    walk.is_continue() && entries.next().is_none()
}

impl Checker {
    /// Runs the checker for `property`.
    pub fn check(&self, space: &Topology, property: &Property) -> Result<Verdict> {
        use Property::*;
        match property {
            BaCompact { a_size, b } => self.ba_compact(space, *a_size, b),
            BaCompactClosed { a_size, b } => self.ba_compact_closed(space, *a_size, b),
            FBaCompact { a_size, b, f } => self.f_ba_compact(space, *a_size, b, f),
            FBaCompactClosed { a_size, b, f } => self.f_ba_compact_closed(space, *a_size, b, f),
            BgCompact { a_size, b, g } => self.bg_compact(space, *a_size, b, g),
            BgCompactClosed { a_size, b, g } => self.bg_compact_closed(space, *a_size, b, g),
            FBgCompact { a_size, b, g, f } => self.f_bg_compact(space, *a_size, b, g, f),
            FBgCompactClosed { a_size, b, g, f } => {
                self.f_bg_compact_closed(space, *a_size, b, g, f)
            }
            DCompact { d } => self.d_compact(space, d),
            DCompactCovering { d } => self.d_compact_covering(space, d),
            WeakM { m } => self.weak_m_compact(space, m),
            WeakMCovering { m } => self.weak_m_compact_covering(space, m),
            QuasiM { m } => self.quasi_m_compact(space, m),
            QuasiMCovering { m } => self.quasi_m_compact_covering(space, m),
            Accumulation { i_size, e } => self.e_accumulation(space, *i_size, e),
            FAccumulation { i_size, e, f } => self.f_e_accumulation(space, *i_size, e, f),
            CalEAccumulation { i_size, cal_e, f } => {
                self.cal_e_accumulation(space, *i_size, cal_e, f.as_ref())
            }
            IrreducibleCover { k } => self.irreducible_cover(space, *k),
        }
    }
}
