//! Monotonicity facts for `[B, A]`-compactness, each checked over every
//! auxiliary choice on one instance.

use super::{ConditionReport, Instance};
use crate::checkers::Checker;
use crate::error::{Error, Result};
use crate::fintop::Topology;
use crate::setfam::{bit_positions, check_ground, downward_closure, full_mask, SetFamily};

/// The positions of `mask`'s members within `within`, packed to the low bits.
fn compress(mask: u32, within: u32) -> u32 {
    bit_positions(within)
        .enumerate()
        .fold(0, |acc, (j, p)| if mask & (1 << p) != 0 { acc | 1 << j } else { acc })
}

/// Inverse of [`compress`].
fn expand(mask: u32, within: u32) -> u32 {
    bit_positions(within)
        .enumerate()
        .fold(0, |acc, (j, p)| if mask & (1 << j) != 0 { acc | 1 << p } else { acc })
}

/// Every subfamily of `𝒫(k)`, as mask lists.
fn all_families(k: usize) -> Vec<Vec<u32>> {
    let subsets = 1usize << k;
    (0u64..(1u64 << subsets))
        .map(|choice| (0..subsets as u32).filter(|s| choice & (1 << s) != 0).collect())
        .collect()
}

struct Compact<'a> {
    checker: &'a Checker,
    space: &'a Topology,
    cost: u64,
}

impl Compact<'_> {
    fn test(&mut self, a_size: usize, masks: impl IntoIterator<Item = u32>) -> Result<bool> {
        let b = SetFamily::from_masks(a_size, masks);
        let v = self.checker.ba_compact(self.space, a_size, &b)?;
        self.cost = self.cost.saturating_add(v.cost);
        Ok(v.holds)
    }
}

/// Checks on one instance that compactness is forced when `A ∈ B`, passes
/// to supersets and to dominating families, restricts to subsets of `A`,
/// composes along `B`, pulls back along surjections onto `A` from sets of
/// size up to `|A| + 1`, and ignores downward closure of `B`. Every
/// condition is `true` when the instance respects the facts.
pub fn verify_facts(
    checker: &Checker,
    space: &Topology,
    a_size: usize,
    b: &SetFamily,
) -> Result<ConditionReport> {
    if b.ground_size() != a_size {
        return Err(Error::GroundMismatch { expected: a_size, found: b.ground_size() });
    }
    if a_size > 3 {
        return Err(Error::GroundTooLarge { ground: a_size, limit: 3 });
    }
    check_ground(b.len())?;
    let mut c = Compact { checker, space, cost: 0 };
    let full = full_mask(a_size);
    let hs = b.masks();
    let base = c.test(a_size, hs.iter().copied())?;
    let mut conditions = Vec::new();

    let whole = !hs.contains(&full) || base;
    conditions.push(("whole-index".to_string(), whole));

    let families = all_families(a_size);
    let mut superset = true;
    let mut domination = true;
    for other in &families {
        let dominates = hs.iter().all(|&h| other.iter().any(|&g| h & !g == 0));
        if !dominates {
            continue;
        }
        let holds = c.test(a_size, other.iter().copied())?;
        if base && !holds {
            domination = false;
            if hs.iter().all(|h| other.contains(h)) {
                superset = false;
            }
        }
    }
    conditions.push(("superset".to_string(), superset));
    conditions.push(("domination".to_string(), domination));

    let mut restriction = true;
    for sub in 0..=full {
        let k = sub.count_ones() as usize;
        let holds = c.test(k, hs.iter().map(|&h| compress(h & sub, sub)))?;
        restriction &= !base || holds;
    }
    conditions.push(("restriction".to_string(), restriction));

    // For each H, the compact choices of D_H ⊆ 𝒫(H), expanded back into A.
    let mut options: Vec<Vec<Vec<u32>>> = Vec::new();
    for &h in &hs {
        let k = h.count_ones() as usize;
        let mut ok = Vec::new();
        for d in all_families(k) {
            if c.test(k, d.iter().copied())? {
                ok.push(d.iter().map(|&m| expand(m, h)).collect());
            }
        }
        options.push(ok);
    }
    let mut composition = true;
    if base && options.iter().all(|o| !o.is_empty()) {
        let mut pick = vec![0usize; options.len()];
        'outer: loop {
            let union = pick.iter().zip(&options).flat_map(|(&i, o)| o[i].iter().copied());
            composition &= c.test(a_size, union)?;
            for p in (0..pick.len()).rev() {
                pick[p] += 1;
                if pick[p] < options[p].len() {
                    continue 'outer;
                }
                pick[p] = 0;
            }
            break;
        }
    }
    conditions.push(("composition".to_string(), composition));

    let mut pullback = true;
    for c_size in a_size..=a_size + 1 {
        if a_size == 0 && c_size > 0 {
            break;
        }
        let maps = (a_size as u64).pow(c_size as u32).max(1);
        for code in 0..maps {
            let f: Vec<usize> = (0..c_size)
                .scan(code, |rest, _| {
                    let v = (*rest % a_size as u64) as usize;
                    *rest /= a_size as u64;
                    Some(v)
                })
                .collect();
            if (0..a_size).any(|a| !f.contains(&a)) {
                continue;
            }
            let preimage = |h: u32| {
                f.iter().enumerate().fold(0u32, |acc, (x, &a)| if h & (1 << a) != 0 { acc | 1 << x } else { acc })
            };
            let holds = c.test(c_size, hs.iter().map(|&h| preimage(h)))?;
            pullback &= !base || holds;
        }
    }
    conditions.push(("pullback".to_string(), pullback));

    let closed_down = c.test(a_size, downward_closure(b).masks())?;
    conditions.push(("downward-closure".to_string(), closed_down == base));

    let instance = Instance { a_size: Some(a_size), b: Some(b.clone()), ..Instance::on(space) };
    Ok(ConditionReport::new("facts", conditions, instance, c.cost))
}
