//! Verifiers for the equivalences around `[B, A]`- and `[B, G]`-compactness,
//! with sequences re-indexed by `B`.

use super::{contains_member, f_variants, ConditionReport, Ctx, Instance};
use crate::checkers::{inter_over, union_over, Checker};
use crate::constructions::{cover_dual_family, covering_subfamilies};
use crate::error::{Error, Result};
use crate::fintop::Topology;
use crate::setfam::{bit_positions, check_ground, full_mask, member_section, FamilyCollection, SetFamily};

fn check_index(a_size: usize, fam: &SetFamily) -> Result<()> {
    if fam.ground_size() != a_size {
        return Err(Error::GroundMismatch { expected: a_size, found: fam.ground_size() });
    }
    Ok(())
}

/// `a^<_B` for every `a`, as masks of positions in `B`.
fn sections(a_size: usize, b: &SetFamily) -> Result<Vec<u32>> {
    check_ground(b.len())?;
    (0..a_size).map(|a| Ok(member_section(a, b)?.bits())).collect()
}

/// `⋂_{a∈K} cl(⋃_{H∈a^<} vals[H])`, the set every "closure meet" condition
/// asks to be nonempty.
fn closure_meet(cx: &Ctx, vals: &[u32], secs: &[u32], k: u32) -> u32 {
    bit_positions(k).fold(cx.full(), |acc, a| acc & cx.cl(union_over(vals, secs[a])))
}

/// Some `x` has, in every neighbourhood `U` and for every `a`, some
/// `H ∋ a` with `vals[H]` meeting `U`.
fn neighbourhood_point(space: &Topology, vals: &[u32], secs: &[u32]) -> bool {
    (0..space.point_count()).any(|x| {
        space.neighbourhoods(x).iter().all(|&u| {
            secs.iter().all(|&s| bit_positions(s).any(|h| vals[h] & u != 0))
        })
    })
}

/// Condition-by-condition check of `[B, A]`-compactness against its
/// reformulations by arbitrary, bounded, point, nonempty, closed and open
/// `B`-indexed data.
pub fn verify_theorem_e(
    checker: &Checker,
    space: &Topology,
    a_size: usize,
    b: &SetFamily,
) -> Result<ConditionReport> {
    check_index(a_size, b)?;
    let secs = sections(a_size, b)?;
    let mut cx = Ctx::new(checker, space);
    let full = cx.full();
    let all_a = full_mask(a_size);
    let hs = b.masks();
    let nb = b.len();
    let per = nb + a_size;

    let v = cx.verdict(checker.ba_compact(space, a_size, b))?;
    cx.push("compact", v);

    let all = cx.all_subsets();
    let hyp = |p: &[u32]| hs.iter().all(|&h| inter_over(p, h, full) != 0);
    let meet = |p: &[u32]| bit_positions(all_a).fold(full, |acc, a| acc & space.closure_bits(p[a])) != 0;
    let v = cx.forall(&all, a_size, per, |p| !hyp(p) || meet(p))?;
    cx.push("closure-meet", v);

    let bounds: Vec<u32> = secs.iter().map(|s| s.count_ones()).collect();
    let v = cx.forall(&all, a_size, per, |p| {
        p.iter().zip(&bounds).any(|(v, &k)| v.count_ones() > k) || !hyp(p) || meet(p)
    })?;
    cx.push("closure-meet-bounded", v);

    let points = cx.point_masks();
    let v = forall_meet(&mut cx, &points, nb, &secs, all_a, |_| true)?;
    cx.push("point-closures", v);

    let v = cx.forall(&points, nb, per * space.opens().len(), |vals| {
        neighbourhood_point(space, vals, &secs)
    })?;
    cx.push("neighbourhoods", v);

    let nonempty: Vec<u32> = (1..=full).collect();
    let v = forall_meet(&mut cx, &nonempty, nb, &secs, all_a, |_| true)?;
    cx.push("nonempty-sets", v);

    let closed: Vec<u32> = space.closed_sets().masks().into_iter().filter(|&c| c != 0).collect();
    let v = forall_meet(&mut cx, &closed, nb, &secs, all_a, |_| true)?;
    cx.push("closed-sets", v);

    let proper: Vec<u32> = space.open_masks().into_iter().filter(|&o| o != full).collect();
    let v = cx.forall(&proper, nb, per, |o| !q_covers(space, o, &secs))?;
    cx.push("interior-noncover", v);

    Ok(cx.finish("theorem-e", Instance { a_size: Some(a_size), b: Some(b.clone()), ..Instance::on(space) }))
}

/// `(Q_a)` covers, for `Q_a` the interior of `⋂_{H∈a^<} O_H` (the whole
/// space when `a^<` is empty).
fn q_covers(space: &Topology, o: &[u32], secs: &[u32]) -> bool {
    let full = space.full();
    secs.iter().fold(0, |acc, &s| acc | space.interior_bits(inter_over(o, s, full))) == full
}

/// For every admissible sequence over `domain`, the closure meet along `k`
/// is nonempty.
fn forall_meet(
    cx: &mut Ctx,
    domain: &[u32],
    len: usize,
    secs: &[u32],
    k: u32,
    admissible: impl Fn(&[u32]) -> bool,
) -> Result<bool> {
    forall_meet_some(cx, domain, len, secs, &[k], admissible)
}

/// For every admissible sequence over `domain`, some `K ∈ ks` has a
/// nonempty closure meet.
fn forall_meet_some(
    cx: &mut Ctx,
    domain: &[u32],
    len: usize,
    secs: &[u32],
    ks: &[u32],
    admissible: impl Fn(&[u32]) -> bool,
) -> Result<bool> {
    let cost = cx.checker.charge(domain.len(), len, secs.len().max(1) * ks.len().max(1))?;
    cx.cost = cx.cost.saturating_add(cost);
    let c = &*cx;
    Ok(crate::checkers::find_sequence(domain, len, |vals| {
        admissible(vals) && !ks.iter().any(|&k| closure_meet(c, vals, secs, k) != 0)
    })
    .is_none())
}

/// The relativized verifier: every condition evaluated for `𝓕`, for the
/// closures of its members and for its upward closure.
pub fn verify_theorem_eo(
    checker: &Checker,
    space: &Topology,
    a_size: usize,
    b: &SetFamily,
    f: &SetFamily,
) -> Result<ConditionReport> {
    check_index(a_size, b)?;
    check_index(space.point_count(), f)?;
    let secs = sections(a_size, b)?;
    let e = cover_dual_family(a_size, b)?;
    let mut cx = Ctx::new(checker, space);
    for (suffix, fam) in f_variants(space, f)? {
        eo_conditions(&mut cx, a_size, b, &secs, &e, &fam, suffix)?;
    }
    let instance = Instance { a_size: Some(a_size), b: Some(b.clone()), f: Some(f.clone()), ..Instance::on(space) };
    Ok(cx.finish("theorem-eo", instance))
}

fn eo_conditions(
    cx: &mut Ctx,
    a_size: usize,
    b: &SetFamily,
    secs: &[u32],
    e: &SetFamily,
    f: &SetFamily,
    suffix: &str,
) -> Result<()> {
    let space = cx.space;
    let checker = cx.checker;
    let full = cx.full();
    let all_a = full_mask(a_size);
    let hs = b.masks();
    let fs = f.masks();
    let nb = b.len();
    let per = (nb + a_size) * fs.len().max(1);

    let v = cx.verdict(checker.f_ba_compact(space, a_size, b, f))?;
    cx.push(format!("compact{suffix}"), v);

    let all = cx.all_subsets();
    let hyp = |p: &[u32]| hs.iter().all(|&h| contains_member(&fs, inter_over(p, h, full)));
    let meet = |p: &[u32]| bit_positions(all_a).fold(full, |acc, a| acc & space.closure_bits(p[a])) != 0;
    let v = cx.forall(&all, a_size, per, |p| !hyp(p) || meet(p))?;
    cx.push(format!("closure-meet{suffix}"), v);

    // unions of at most k members, for each bound k that occurs
    let max_k = secs.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0);
    let mut reach = vec![vec![false; full as usize + 1]; max_k + 1];
    reach[0][0] = true;
    for k in 1..=max_k {
        for m in 0..=full as usize {
            if reach[k - 1][m] {
                reach[k][m] = true;
                for &g in &fs {
                    reach[k][m | g as usize] = true;
                }
            }
        }
    }
    let v = cx.forall(&all, a_size, per, |p| {
        let bounded = p
            .iter()
            .zip(secs)
            .all(|(&m, s)| reach[s.count_ones() as usize][m as usize]);
        !bounded || !hyp(p) || meet(p)
    })?;
    cx.push(format!("closure-meet-bounded{suffix}"), v);

    let v = forall_meet(cx, &fs, nb, secs, all_a, |_| true)?;
    cx.push(format!("member-closures{suffix}"), v);

    let v = cx.forall(&fs, nb, per * space.opens().len(), |vals| neighbourhood_point(space, vals, secs))?;
    cx.push(format!("neighbourhoods{suffix}"), v);

    let v = forall_meet(cx, &all, nb, secs, all_a, |ys| ys.iter().all(|&y| contains_member(&fs, y)))?;
    cx.push(format!("containing-sets{suffix}"), v);

    let closed = space.closed_sets().masks();
    let v = forall_meet(cx, &closed, nb, secs, all_a, |ds| ds.iter().all(|&d| contains_member(&fs, d)))?;
    cx.push(format!("containing-closed{suffix}"), v);

    let opens = space.open_masks();
    let v = cx.forall(&opens, nb, per, |o| {
        let admissible = o.iter().all(|&u| fs.iter().any(|&m| m & u == 0));
        !admissible || !q_covers(space, o, secs)
    })?;
    cx.push(format!("avoiding-opens{suffix}"), v);

    let v = cx.verdict(checker.f_e_accumulation(space, nb, e, f))?;
    cx.push(format!("limit-accumulation{suffix}"), v);
    Ok(())
}

/// `{E_K : K ∈ G}` with `E_K = {Z ⊆ B : ⋃Z ⊇ K}`, over positions of `B`.
fn cover_duals_along(b: &SetFamily, g: &SetFamily) -> Result<FamilyCollection> {
    check_ground(b.len())?;
    FamilyCollection::new(b.len(), g.iter().map(|k| covering_subfamilies(b, k.bits())))
}

/// Condition-by-condition check of `[B, G]`-compactness.
pub fn verify_theorem_eg(
    checker: &Checker,
    space: &Topology,
    a_size: usize,
    b: &SetFamily,
    g: &SetFamily,
) -> Result<ConditionReport> {
    check_index(a_size, b)?;
    check_index(a_size, g)?;
    let secs = sections(a_size, b)?;
    let cal_e = cover_duals_along(b, g)?;
    let mut cx = Ctx::new(checker, space);
    let full = cx.full();
    let hs = b.masks();
    let ks = g.masks();
    let nb = b.len();
    let per = (nb + a_size) * ks.len().max(1);

    let v = cx.verdict(checker.bg_compact(space, a_size, b, g))?;
    cx.push("compact", v);

    let all = cx.all_subsets();
    let v = cx.forall(&all, a_size, per, |p| {
        !hs.iter().all(|&h| inter_over(p, h, full) != 0)
            || ks.iter().any(|&k| bit_positions(k).fold(full, |acc, a| acc & space.closure_bits(p[a])) != 0)
    })?;
    cx.push("closure-meet", v);

    let points = cx.point_masks();
    let v = forall_meet_some(&mut cx, &points, nb, &secs, &ks, |_| true)?;
    cx.push("point-closures", v);

    let nonempty: Vec<u32> = (1..=full).collect();
    let v = forall_meet_some(&mut cx, &nonempty, nb, &secs, &ks, |_| true)?;
    cx.push("nonempty-sets", v);

    let v = cx.verdict(checker.cal_e_accumulation(space, nb, &cal_e, None))?;
    cx.push("accumulation", v);

    let instance = Instance { a_size: Some(a_size), b: Some(b.clone()), g: Some(g.clone()), ..Instance::on(space) };
    Ok(cx.finish("theorem-eg", instance))
}

/// Condition-by-condition check of `𝓕-[B, G]`-compactness.
pub fn verify_theorem_eog(
    checker: &Checker,
    space: &Topology,
    a_size: usize,
    b: &SetFamily,
    g: &SetFamily,
    f: &SetFamily,
) -> Result<ConditionReport> {
    check_index(a_size, b)?;
    check_index(a_size, g)?;
    check_index(space.point_count(), f)?;
    let secs = sections(a_size, b)?;
    let cal_e = cover_duals_along(b, g)?;
    let mut cx = Ctx::new(checker, space);
    let full = cx.full();
    let hs = b.masks();
    let ks = g.masks();
    let fs = f.masks();
    let nb = b.len();
    let per = (nb + a_size) * ks.len().max(1) * fs.len().max(1);

    let v = cx.verdict(checker.f_bg_compact(space, a_size, b, g, f))?;
    cx.push("compact", v);

    let all = cx.all_subsets();
    let v = cx.forall(&all, a_size, per, |p| {
        !hs.iter().all(|&h| contains_member(&fs, inter_over(p, h, full)))
            || ks.iter().any(|&k| bit_positions(k).fold(full, |acc, a| acc & space.closure_bits(p[a])) != 0)
    })?;
    cx.push("closure-meet", v);

    let v = forall_meet_some(&mut cx, &fs, nb, &secs, &ks, |_| true)?;
    cx.push("member-closures", v);

    let v = forall_meet_some(&mut cx, &all, nb, &secs, &ks, |ys| {
        ys.iter().all(|&y| contains_member(&fs, y))
    })?;
    cx.push("containing-sets", v);

    let v = cx.verdict(checker.cal_e_accumulation(space, nb, &cal_e, Some(f)))?;
    cx.push("limit-accumulation", v);

    let instance = Instance {
        a_size: Some(a_size),
        b: Some(b.clone()),
        g: Some(g.clone()),
        f: Some(f.clone()),
        ..Instance::on(space)
    };
    Ok(cx.finish("theorem-eog", instance))
}
