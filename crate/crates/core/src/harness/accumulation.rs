//! Verifiers for accumulation properties given by a transversal dual, in
//! their single- and multi-family forms, plus the pointwise statements.

use super::{contains_member, f_variants, ConditionReport, Ctx, Instance};
use crate::checkers::{inter_over, is_e_accumulation_point, is_e_limit_point, positions_of, union_over, Checker};
use crate::constructions::sections_family;
use crate::error::{Error, Result};
use crate::fintop::{PointSequence, SubsetSequence, Topology};
use crate::setfam::{
    bit_positions, check_ground, full_mask, is_filter, is_ultrafilter, point_section, transversal_dual,
    FamilyCollection, SetFamily,
};

fn check_index(i_size: usize, fam: &SetFamily) -> Result<()> {
    if fam.ground_size() != i_size {
        return Err(Error::GroundMismatch { expected: i_size, found: fam.ground_size() });
    }
    Ok(())
}

fn check_length(i_size: usize, len: usize) -> Result<()> {
    if len != i_size {
        return Err(Error::GroundMismatch { expected: i_size, found: len });
    }
    Ok(())
}

/// `i^<_A` for every `i`, as masks of positions in `A`.
fn point_sections(i_size: usize, a: &SetFamily) -> Result<Vec<u32>> {
    check_ground(a.len())?;
    (0..i_size).map(|i| Ok(point_section(i, a)?.bits())).collect()
}

/// `⋂_{a∈K} cl(⋃_{i∈a} vals[i])` for each `K` in `ks` (masks over `I`)
/// is tested for nonemptiness; true if some `K` passes.
fn some_meet(space: &Topology, vals: &[u32], ks: &[Vec<u32>]) -> bool {
    let full = space.full();
    ks.iter().any(|k| {
        k.iter().fold(full, |acc, &a| acc & space.closure_bits(union_over(vals, a))) != 0
    })
}

/// Conditions for the `A⁺`-accumulation property: the property itself, the
/// covering form through point sections, `[B, A]`-compactness for the
/// sections, and the closure form. For an ultrafilter `A` the two direct
/// forms of `D`-compactness are added.
pub fn verify_theorem_r(
    checker: &Checker,
    space: &Topology,
    i_size: usize,
    a: &SetFamily,
) -> Result<ConditionReport> {
    check_index(i_size, a)?;
    let isecs = point_sections(i_size, a)?;
    let mut cx = Ctx::new(checker, space);
    let full = cx.full();
    let na = a.len();
    let all_a = full_mask(na);

    let v = cx.verdict(checker.e_accumulation(space, i_size, &transversal_dual(a)))?;
    cx.push("accumulation", v);

    let opens = space.open_masks();
    let v = cx.forall(&opens, na, na + i_size, |o| {
        union_over(o, all_a) != full || isecs.iter().any(|&s| union_over(o, s) == full)
    })?;
    cx.push("section-cover", v);

    let b = sections_family(i_size, a)?;
    let v = cx.verdict(checker.ba_compact(space, na, &b))?;
    cx.push("sections-compact", v);

    let points = cx.point_masks();
    let ks = vec![a.masks()];
    let v = cx.forall(&points, i_size, na, |x| some_meet(space, x, &ks))?;
    cx.push("point-closures", v);

    if is_ultrafilter(a) {
        let v = cx.verdict(checker.d_compact(space, a))?;
        cx.push("ultrafilter-convergence", v);
        let v = cx.verdict(checker.d_compact_covering(space, a))?;
        cx.push("ultrafilter-covering", v);
    }

    let instance = Instance { i_size: Some(i_size), a: Some(a.clone()), ..Instance::on(space) };
    Ok(cx.finish("theorem-r", instance))
}

/// Relativized form of [`verify_theorem_r`], evaluated for `𝓕`, the
/// closures of its members and its upward closure.
pub fn verify_theorem_ro(
    checker: &Checker,
    space: &Topology,
    i_size: usize,
    a: &SetFamily,
    f: &SetFamily,
) -> Result<ConditionReport> {
    check_index(i_size, a)?;
    check_index(space.point_count(), f)?;
    let isecs = point_sections(i_size, a)?;
    let e = transversal_dual(a);
    let b = sections_family(i_size, a)?;
    let mut cx = Ctx::new(checker, space);
    let full = cx.full();
    let na = a.len();
    let all_a = full_mask(na);
    let ks = vec![a.masks()];
    for (suffix, fam) in f_variants(space, f)? {
        let fs = fam.masks();
        let per = (na + i_size) * fs.len().max(1);

        let v = cx.verdict(checker.f_e_accumulation(space, i_size, &e, &fam))?;
        cx.push(format!("limit-accumulation{suffix}"), v);

        let closed = space.closed_sets().masks();
        let v = cx.forall(&closed, na, per, |c| {
            let hyp = isecs.iter().all(|&s| contains_member(&fs, inter_over(c, s, full)));
            !hyp || inter_over(c, all_a, full) != 0
        })?;
        cx.push(format!("closed-sections{suffix}"), v);

        let v = cx.verdict(checker.f_ba_compact(space, na, &b, &fam))?;
        cx.push(format!("sections-compact{suffix}"), v);

        let v = cx.forall(&fs, i_size, per, |vals| some_meet(space, vals, &ks))?;
        cx.push(format!("member-closures{suffix}"), v);
    }
    let instance = Instance { i_size: Some(i_size), a: Some(a.clone()), f: Some(f.clone()), ..Instance::on(space) };
    Ok(cx.finish("theorem-ro", instance))
}

/// `𝓔 = {K⁺ : K ∈ 𝓖}` and the index family `A`: all members of `𝓖` and
/// of `𝓔`, so that every `K` is a set of positions in `A`.
fn multi_setup(i_size: usize, cal_g: &FamilyCollection) -> Result<(FamilyCollection, SetFamily, SetFamily)> {
    if cal_g.ground_size() != i_size {
        return Err(Error::GroundMismatch { expected: i_size, found: cal_g.ground_size() });
    }
    let duals: Vec<SetFamily> = cal_g.iter().map(transversal_dual).collect();
    let cal_e = FamilyCollection::new(i_size, duals)?;
    let a = cal_g.union_all().union(&cal_e.union_all());
    check_ground(a.len())?;
    let g = positions_of(&a, cal_g.families())?;
    Ok((cal_e, a, g))
}

/// Conditions for the `𝓔`-accumulation property with `𝓔 = {K⁺ : K ∈ 𝓖}`.
pub fn verify_theorem_ree(
    checker: &Checker,
    space: &Topology,
    i_size: usize,
    cal_g: &FamilyCollection,
) -> Result<ConditionReport> {
    let (cal_e, a, g) = multi_setup(i_size, cal_g)?;
    let isecs = point_sections(i_size, &a)?;
    let mut cx = Ctx::new(checker, space);
    let full = cx.full();
    let na = a.len();
    let gs = g.masks();

    let v = cx.verdict(checker.cal_e_accumulation(space, i_size, &cal_e, None))?;
    cx.push("accumulation", v);

    let opens = space.open_masks();
    let v = cx.forall(&opens, na, (na + i_size) * gs.len().max(1), |o| {
        !gs.iter().all(|&k| union_over(o, k) == full) || isecs.iter().any(|&s| union_over(o, s) == full)
    })?;
    cx.push("section-cover", v);

    let b = sections_family(i_size, &a)?;
    let v = cx.verdict(checker.bg_compact(space, na, &b, &g))?;
    cx.push("sections-compact", v);

    let ks: Vec<Vec<u32>> = cal_g.iter().map(|k| k.masks()).collect();
    let points = cx.point_masks();
    let v = cx.forall(&points, i_size, na * ks.len().max(1), |x| some_meet(space, x, &ks))?;
    cx.push("point-closures", v);

    let instance = Instance { i_size: Some(i_size), collection: Some(cal_g.clone()), ..Instance::on(space) };
    Ok(cx.finish("theorem-ree", instance))
}

/// Relativized form of [`verify_theorem_ree`].
pub fn verify_theorem_reef(
    checker: &Checker,
    space: &Topology,
    i_size: usize,
    cal_g: &FamilyCollection,
    f: &SetFamily,
) -> Result<ConditionReport> {
    check_index(space.point_count(), f)?;
    let (cal_e, a, g) = multi_setup(i_size, cal_g)?;
    let mut cx = Ctx::new(checker, space);
    let na = a.len();
    let fs = f.masks();

    let v = cx.verdict(checker.cal_e_accumulation(space, i_size, &cal_e, Some(f)))?;
    cx.push("limit-accumulation", v);

    let b = sections_family(i_size, &a)?;
    let v = cx.verdict(checker.f_bg_compact(space, na, &b, &g, f))?;
    cx.push("sections-compact", v);

    let ks: Vec<Vec<u32>> = cal_g.iter().map(|k| k.masks()).collect();
    let v = cx.forall(&fs, i_size, na * ks.len().max(1), |vals| some_meet(space, vals, &ks))?;
    cx.push("member-closures", v);

    let instance = Instance {
        i_size: Some(i_size),
        collection: Some(cal_g.clone()),
        f: Some(f.clone()),
        ..Instance::on(space)
    };
    Ok(cx.finish("theorem-reef", instance))
}

/// Pointwise: `x` is an `A⁺`-accumulation point of `seq` iff `x` lies in
/// every `cl{x_i : i ∈ a}`.
pub fn verify_prop_ae(
    space: &Topology,
    i_size: usize,
    a: &SetFamily,
    seq: &PointSequence,
    x: usize,
) -> Result<ConditionReport> {
    check_index(i_size, a)?;
    check_length(i_size, seq.len())?;
    let v1 = is_e_accumulation_point(space, seq, x, &transversal_dual(a))?;
    let vals: Vec<u32> = seq.values().iter().map(|&p| 1 << p).collect();
    let v2 = a.iter().all(|s| space.closure_bits(union_over(&vals, s.bits())) & (1 << x) != 0);
    let instance = Instance {
        i_size: Some(i_size),
        a: Some(a.clone()),
        seq: Some(seq.values().to_vec()),
        point: Some(x),
        ..Instance::on(space)
    };
    Ok(ConditionReport::new(
        "prop-ae",
        vec![("accumulation-point".into(), v1), ("in-closures".into(), v2)],
        instance,
        0,
    ))
}

/// Pointwise: `x` is an `A⁺`-limit point of `setseq` iff `x` lies in every
/// `cl(⋃_{i∈a} F_i)`.
pub fn verify_prop_aeo(
    space: &Topology,
    i_size: usize,
    a: &SetFamily,
    setseq: &SubsetSequence,
    x: usize,
) -> Result<ConditionReport> {
    check_index(i_size, a)?;
    check_length(i_size, setseq.len())?;
    let v1 = is_e_limit_point(space, setseq, x, &transversal_dual(a))?;
    let vals: Vec<u32> = setseq.values().iter().map(|s| s.bits()).collect();
    let v2 = a.iter().all(|s| space.closure_bits(union_over(&vals, s.bits())) & (1 << x) != 0);
    let instance = Instance {
        i_size: Some(i_size),
        a: Some(a.clone()),
        setseq: Some(setseq.values().to_vec()),
        point: Some(x),
        ..Instance::on(space)
    };
    Ok(ConditionReport::new(
        "prop-aeo",
        vec![("limit-point".into(), v1), ("in-closures".into(), v2)],
        instance,
        0,
    ))
}

/// All filters over `I` contained in some member of `𝓔`. Enumerates
/// `2^(2^|I|)` families, so `|I|` is limited to 4.
pub fn filter_reduction(cal_e: &FamilyCollection) -> Result<FamilyCollection> {
    let i_size = cal_e.ground_size();
    if i_size > 4 {
        return Err(Error::GroundTooLarge { ground: i_size, limit: 4 });
    }
    let subsets = 1usize << i_size;
    let mut filters = Vec::new();
    for choice in 0u64..(1u64 << subsets) {
        let fam = SetFamily::from_masks(
            i_size,
            bit_positions(choice as u32).map(|s| s as u32),
        );
        if is_filter(&fam) && cal_e.iter().any(|e| fam.is_subfamily_of(e)) {
            filters.push(fam);
        }
    }
    FamilyCollection::new(i_size, filters)
}
