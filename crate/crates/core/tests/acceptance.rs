//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL
//! line per criterion and exits nonzero if any fails.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use covlab::constructions::{example_space_a, example_space_b};
use covlab::fintop::all_topologies;
use covlab::harness::{
    filter_reduction, random_family, random_topology, verify_facts, verify_theorem_e, verify_theorem_eg,
    verify_theorem_eo, verify_theorem_eog, verify_theorem_r, verify_theorem_ree, verify_theorem_reef,
    verify_theorem_ro, ConditionReport, SplitMix64,
};
use covlab::setfam::{is_filter, is_ultrafilter, is_upward_closed, principal_ultrafilter, transversal_dual};
use covlab::{Checker, FamilyCollection, Property, SetFamily, Subset, Topology, Verdict, Witness};

/// Outcome of one criterion: the number of failed checks and how many
/// checks ran.
struct Tally {
    failures: u64,
    checks: u64,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self { failures: 0, checks: 0, notes: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.notes.len() < 3 {
                self.notes.push(what());
            }
        }
    }

    fn report(&mut self, r: &ConditionReport) {
        self.expect(r.agree, || format!("{} disagrees: {:?} on {:?}", r.theorem, r.conditions, r.instance));
    }
}

fn chk() -> Checker {
    Checker::default()
}

fn subsets(n: usize) -> Vec<Subset> {
    (0..1u32 << n).map(|b| Subset::from_bits(n, b).unwrap()).collect()
}

/// Every family over an `n`-element ground set.
fn families(n: usize) -> Vec<SetFamily> {
    let all = subsets(n);
    (0u64..1 << all.len())
        .map(|choice| {
            let members = all.iter().enumerate().filter(|(i, _)| choice & (1 << i) != 0).map(|(_, s)| *s);
            SetFamily::from_sets(n, members).unwrap()
        })
        .collect()
}

fn spaces(max_points: usize) -> Vec<Topology> {
    (0..=max_points).flat_map(|n| all_topologies(n).unwrap()).collect()
}

fn singletons(n: usize) -> SetFamily {
    SetFamily::from_sets(n, (0..n).map(|x| Subset::singleton(n, x).unwrap())).unwrap()
}

fn ultrafilter_collections(k: usize) -> Vec<FamilyCollection> {
    (0u32..1 << k)
        .map(|choice| {
            let fams = (0..k).filter(|i| choice & (1 << i) != 0).map(|i| principal_ultrafilter(i, k).unwrap());
            FamilyCollection::new(k, fams).unwrap()
        })
        .collect()
}

/// `(A, B)` for every `A ≤ max` and `B ⊆ 𝒫(A)`.
fn index_grid(max: usize) -> Vec<(usize, SetFamily)> {
    (0..=max).flat_map(|a| families(a).into_iter().map(move |b| (a, b))).collect()
}

/// Seeded random instance parts for 3-point spaces.
struct Random {
    rng: SplitMix64,
}

impl Random {
    fn new(seed: u64) -> Self {
        Self { rng: SplitMix64::new(seed) }
    }

    fn space(&mut self, n: usize) -> Topology {
        random_topology(n, self.rng.next_u64()).unwrap()
    }

    fn size(&mut self, max: usize) -> usize {
        self.rng.below(max as u64 + 1) as usize
    }

    fn family(&mut self, ground: usize, max_members: usize) -> SetFamily {
        random_family(ground, max_members, self.rng.next_u64()).unwrap()
    }

    fn collection(&mut self, ground: usize) -> FamilyCollection {
        let count = self.rng.below(3);
        FamilyCollection::new(ground, (0..count).map(|_| self.family(ground, 2)).collect::<Vec<_>>()).unwrap()
    }
}

fn criterion_1() -> Tally {
    let mut t = Tally::new();
    let types: HashSet<Vec<u32>> = all_topologies(3).unwrap().iter().map(Topology::canonical_form).collect();
    t.expect(types.len() == 9, || format!("{} homeomorphism types on 3 points", types.len()));
    for x in spaces(3) {
        for (a, b) in index_grid(2) {
            t.report(&verify_theorem_e(&chk(), &x, a, &b).unwrap());
        }
    }
    t
}

fn criterion_2() -> Tally {
    let mut t = Tally::new();
    let mut ultrafilters = 0;
    for x in spaces(3) {
        for (i, a) in index_grid(2) {
            let r = verify_theorem_r(&chk(), &x, i, &a).unwrap();
            if is_ultrafilter(&a) {
                ultrafilters += 1;
                let direct = r.condition("ultrafilter-convergence");
                let covering = r.condition("ultrafilter-covering");
                t.expect(direct.is_some() && direct == covering && direct == r.condition("accumulation"), || {
                    format!("ultrafilter forms differ on {:?}", r.instance)
                });
            }
            t.report(&r);
        }
    }
    t.expect(ultrafilters > 0, || "no ultrafilter instances".into());
    t
}

fn criterion_3() -> Tally {
    let mut t = Tally::new();
    for x in spaces(2) {
        for f in families(x.point_count()) {
            for (a, b) in index_grid(2) {
                t.report(&verify_theorem_eo(&chk(), &x, a, &b, &f).unwrap());
                t.report(&verify_theorem_ro(&chk(), &x, a, &b, &f).unwrap());
            }
        }
    }
    let mut rnd = Random::new(3);
    for _ in 0..300 {
        let x = rnd.space(3);
        let a = rnd.size(2);
        let b = rnd.family(a, 4);
        let f = rnd.family(3, 3);
        t.report(&verify_theorem_eo(&chk(), &x, a, &b, &f).unwrap());
        t.report(&verify_theorem_ro(&chk(), &x, a, &b, &f).unwrap());
    }
    t
}

fn same(t: &mut Tally, left: &ConditionReport, right: &ConditionReport, pairs: &[(&str, &str)]) {
    for (l, r) in pairs {
        let (lv, rv) = (left.condition(l), right.condition(r));
        t.expect(lv.is_some() && lv == rv, || {
            format!("{}:{l} vs {}:{r} on {:?}", left.theorem, right.theorem, left.instance)
        });
    }
}

fn criterion_4() -> Tally {
    let mut t = Tally::new();
    let mut rnd = Random::new(4);
    for _ in 0..200 {
        let x = rnd.space(3);
        let a = rnd.size(2);
        let (b, g) = (rnd.family(a, 4), rnd.family(a, 2));
        t.report(&verify_theorem_eg(&chk(), &x, a, &b, &g).unwrap());
    }
    for _ in 0..200 {
        let x = rnd.space(3);
        let a = rnd.size(2);
        let (b, g, f) = (rnd.family(a, 4), rnd.family(a, 2), rnd.family(3, 3));
        t.report(&verify_theorem_eog(&chk(), &x, a, &b, &g, &f).unwrap());
    }
    for _ in 0..200 {
        let x = rnd.space(3);
        let i = rnd.size(2);
        let cal_g = rnd.collection(i);
        t.report(&verify_theorem_ree(&chk(), &x, i, &cal_g).unwrap());
    }
    for _ in 0..200 {
        let x = rnd.space(3);
        let i = rnd.size(2);
        let (cal_g, f) = (rnd.collection(i), rnd.family(3, 3));
        t.report(&verify_theorem_reef(&chk(), &x, i, &cal_g, &f).unwrap());
    }

    let whole = |a: usize| SetFamily::from_sets(a, [Subset::full(a).unwrap()]).unwrap();
    let e_pairs = [
        ("compact", "compact"),
        ("closure-meet", "closure-meet"),
        ("point-closures", "point-closures"),
        ("nonempty-sets", "nonempty-sets"),
        ("accumulation", "neighbourhoods"),
    ];
    let eo_pairs = [
        ("compact", "compact"),
        ("closure-meet", "closure-meet"),
        ("member-closures", "member-closures"),
        ("containing-sets", "containing-sets"),
        ("limit-accumulation", "limit-accumulation"),
    ];
    let r_pairs = [
        ("accumulation", "accumulation"),
        ("section-cover", "section-cover"),
        ("sections-compact", "sections-compact"),
        ("point-closures", "point-closures"),
    ];
    let ro_pairs = [
        ("limit-accumulation", "limit-accumulation"),
        ("sections-compact", "sections-compact"),
        ("member-closures", "member-closures"),
    ];
    for x in spaces(3) {
        for (a, b) in index_grid(2) {
            let g = verify_theorem_eg(&chk(), &x, a, &b, &whole(a)).unwrap();
            same(&mut t, &g, &verify_theorem_e(&chk(), &x, a, &b).unwrap(), &e_pairs);
            let single = FamilyCollection::new(a, [b.clone()]).unwrap();
            let ree = verify_theorem_ree(&chk(), &x, a, &single).unwrap();
            same(&mut t, &ree, &verify_theorem_r(&chk(), &x, a, &b).unwrap(), &r_pairs);
        }
    }
    for x in spaces(2) {
        for f in families(x.point_count()) {
            for (a, b) in index_grid(2) {
                let g = verify_theorem_eog(&chk(), &x, a, &b, &whole(a), &f).unwrap();
                same(&mut t, &g, &verify_theorem_eo(&chk(), &x, a, &b, &f).unwrap(), &eo_pairs);
                let single = FamilyCollection::new(a, [b.clone()]).unwrap();
                let reef = verify_theorem_reef(&chk(), &x, a, &single, &f).unwrap();
                same(&mut t, &reef, &verify_theorem_ro(&chk(), &x, a, &b, &f).unwrap(), &ro_pairs);
            }
        }
    }
    t
}

fn criterion_5() -> Tally {
    let mut t = Tally::new();
    let mut self_dual = Vec::new();
    for n in 0..=3 {
        let all = subsets(n);
        for e in families(n) {
            let dual = transversal_dual(&e);
            let oracle_dual =
                SetFamily::from_sets(n, all.iter().copied().filter(|s| e.iter().all(|m| s.meets(m)))).unwrap();
            t.expect(dual == oracle_dual, || format!("dual of {e:?}"));
            let up =
                SetFamily::from_sets(n, all.iter().copied().filter(|s| e.iter().any(|m| m.is_subset_of(s)))).unwrap();
            t.expect(is_upward_closed(&dual), || format!("dual of {e:?} not upward closed"));
            let dd = transversal_dual(&dual);
            t.expect(dd == up, || format!("double dual of {e:?}"));
            t.expect((dd == e) == is_upward_closed(&e), || format!("fixed point test on {e:?}"));
            t.expect(!is_ultrafilter(&e) || dual == e, || format!("ultrafilter {e:?} not self-dual"));
            if is_filter(&e) {
                t.expect(is_ultrafilter(&e) == (dual == e), || format!("ultrafilter test on {e:?}"));
            } else if dual == e {
                self_dual.push(format!("{e:?}"));
            }
        }
    }
    // Self-duality characterizes ultrafilters among filters only.
    t.notes.push(format!("self-dual families that are not filters: {}", self_dual.join(", ")));
    t
}

fn criterion_6() -> Tally {
    let mut t = Tally::new();
    let mut separated = 0;
    for a in 1..=3 {
        let full = Subset::full(a).unwrap();
        for b in families(a) {
            if b.is_empty() || b.len() > 6 || b.contains(&full) {
                continue;
            }
            for (label, ex) in [("a", example_space_a(a, &b).unwrap()), ("b", example_space_b(a, &b).unwrap())] {
                let v = chk().ba_compact(&ex.space, a, &b).unwrap();
                t.expect(!v.holds, || format!("example {label} compact for {b:?}"));
                let claimed = Verdict {
                    holds: false,
                    witness: Some(Witness::OpenSequence(ex.subbase_cover())),
                    cost: 0,
                };
                let property = Property::BaCompact { a_size: a, b: b.clone() };
                t.expect(property.recheck(&ex.space, &claimed).unwrap(), || {
                    format!("subbase cover of example {label} rejected for {b:?}")
                });
                if label == "a" {
                    t.expect(ex.space.is_t0(), || format!("example a not T0 for {b:?}"));
                    if !ex.space.is_t1() {
                        separated += 1;
                    }
                }
            }
        }
    }
    t.expect(separated > 0, || "no T0 but not T1 instance".into());
    t
}

fn criterion_7() -> Tally {
    let mut t = Tally::new();
    for x in spaces(2) {
        for (a, b) in index_grid(2) {
            let r = verify_facts(&chk(), &x, a, &b).unwrap();
            t.expect(r.all_hold(), || format!("facts violated: {:?} on {:?}", r.conditions, r.instance));
        }
    }
    t
}

/// Both decision paths of every checker that has two, on one space.
fn cross_paths(t: &mut Tally, x: &Topology, a: usize, b: &SetFamily, g: &SetFamily, f: &SetFamily) {
    let c = chk();
    let pairs = [
        (c.ba_compact(x, a, b), c.ba_compact_closed(x, a, b), "compact"),
        (c.f_ba_compact(x, a, b, f), c.f_ba_compact_closed(x, a, b, f), "f-compact"),
        (c.bg_compact(x, a, b, g), c.bg_compact_closed(x, a, b, g), "bg-compact"),
        (c.f_bg_compact(x, a, b, g, f), c.f_bg_compact_closed(x, a, b, g, f), "fbg-compact"),
    ];
    for (l, r, name) in pairs {
        let (l, r) = (l.unwrap().holds, r.unwrap().holds);
        t.expect(l == r, || format!("{name} paths differ on {x:?} A={a} B={b:?} G={g:?} F={f:?}"));
    }
}

fn ultrafilter_paths(t: &mut Tally, x: &Topology) {
    let c = chk();
    for k in 1..=3 {
        for i in 0..k {
            let d = principal_ultrafilter(i, k).unwrap();
            let (l, r) = (c.d_compact(x, &d).unwrap().holds, c.d_compact_covering(x, &d).unwrap().holds);
            t.expect(l == r, || format!("d-compact paths differ on {x:?} D={d:?}"));
        }
        for m in ultrafilter_collections(k) {
            let weak = (c.weak_m_compact(x, &m).unwrap().holds, c.weak_m_compact_covering(x, &m).unwrap().holds);
            t.expect(weak.0 == weak.1, || format!("weak-m paths differ on {x:?} M={m:?}"));
            let quasi = (c.quasi_m_compact(x, &m).unwrap().holds, c.quasi_m_compact_covering(x, &m).unwrap().holds);
            t.expect(quasi.0 == quasi.1, || format!("quasi-m paths differ on {x:?} M={m:?}"));
        }
        let irr = (c.irreducible_cover(x, k).unwrap().holds, c.sparse_sequence(x, k).unwrap().holds);
        t.expect(irr.0 == irr.1, || format!("irreducible paths differ on {x:?} k={k}"));
    }
}

fn criterion_8() -> Tally {
    let mut t = Tally::new();
    for x in spaces(2) {
        let fams = families(x.point_count());
        for (a, b) in index_grid(2) {
            for g in families(a) {
                for f in &fams {
                    cross_paths(&mut t, &x, a, &b, &g, f);
                }
            }
        }
        ultrafilter_paths(&mut t, &x);
    }
    let mut rnd = Random::new(8);
    for _ in 0..500 {
        let x = rnd.space(3);
        let a = rnd.size(2);
        let (b, g, f) = (rnd.family(a, 4), rnd.family(a, 2), rnd.family(3, 3));
        cross_paths(&mut t, &x, a, &b, &g, &f);
        ultrafilter_paths(&mut t, &x);
    }
    t
}

fn criterion_9() -> Tally {
    let mut t = Tally::new();
    let c = chk();
    for x in spaces(2) {
        for i in 0..=2 {
            let upward: Vec<SetFamily> = families(i).into_iter().filter(is_upward_closed).collect();
            for choice in 0u64..1 << upward.len() {
                let fams = upward.iter().enumerate().filter(|(p, _)| choice & (1 << p) != 0).map(|(_, e)| e.clone());
                let cal_e = FamilyCollection::new(i, fams).unwrap();
                let reduced = filter_reduction(&cal_e).unwrap();
                let (l, r) = (
                    c.cal_e_accumulation(&x, i, &cal_e, None).unwrap().holds,
                    c.cal_e_accumulation(&x, i, &reduced, None).unwrap().holds,
                );
                // Over the empty index set no family is a filter, so the
                // reduction is empty and fails exactly where {∅} succeeds.
                let expected = if i == 0 { l && x.point_count() == 0 } else { l };
                t.expect(r == expected, || format!("filter reduction changes verdict on {x:?} {cal_e:?}"));
            }
        }
        let s = singletons(x.point_count());
        for (a, b) in index_grid(2) {
            let pairs = [
                (c.f_ba_compact(&x, a, &b, &s), c.ba_compact(&x, a, &b)),
                (c.f_ba_compact_closed(&x, a, &b, &s), c.ba_compact_closed(&x, a, &b)),
                (c.f_e_accumulation(&x, a, &b, &s), c.e_accumulation(&x, a, &b)),
            ];
            for (l, r) in pairs {
                t.expect(l.unwrap().holds == r.unwrap().holds, || format!("singletons differ on {x:?} {b:?}"));
            }
            for g in families(a) {
                let (l, r) = (c.f_bg_compact(&x, a, &b, &g, &s), c.bg_compact(&x, a, &b, &g));
                t.expect(l.unwrap().holds == r.unwrap().holds, || format!("singletons differ on {x:?} {b:?} {g:?}"));
            }
            let cal = FamilyCollection::new(a, [b.clone()]).unwrap();
            let (l, r) = (c.cal_e_accumulation(&x, a, &cal, Some(&s)), c.cal_e_accumulation(&x, a, &cal, None));
            t.expect(l.unwrap().holds == r.unwrap().holds, || format!("singletons differ on {x:?} {cal:?}"));
        }
    }
    t
}

fn golden_cases() -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut dirs: Vec<PathBuf> = fs::read_dir(root).unwrap().map(|e| e.unwrap().path()).collect();
    dirs.sort();
    dirs
}

fn criterion_10() -> Tally {
    let mut t = Tally::new();
    let dirs = golden_cases();
    t.expect(dirs.len() == 10, || format!("{} golden cases", dirs.len()));
    let mut kinds = Vec::new();
    for dir in dirs {
        let args = fs::read_to_string(dir.join("args")).unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_covlab"))
            .args(args.lines().filter(|l| !l.is_empty()))
            .current_dir(&dir)
            .output()
            .unwrap();
        let expected = fs::read_to_string(dir.join("expected.json")).unwrap();
        let exit: i32 = fs::read_to_string(dir.join("exit")).unwrap().trim().parse().unwrap();
        let stdout = String::from_utf8_lossy(&out.stdout);
        t.expect(stdout == expected && out.status.code() == Some(exit), || {
            format!("{} differs", dir.display())
        });
        if let Ok(v) = serde_json::from_str::<serde_json::Value>(&expected) {
            if let Some(k) = v.pointer("/error/kind").and_then(|k| k.as_str()) {
                kinds.push(k.to_string());
            }
        }
    }
    for kind in ["ValidationError", "BudgetExceeded"] {
        t.expect(kinds.iter().any(|k| k == kind), || format!("no {kind} case"));
    }
    t
}

/// Number, description, time limit in seconds, and the check itself.
type Criterion = (u32, &'static str, u64, fn() -> Tally);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "cover equivalences, exhaustive on 3 points", 60, criterion_1),
        (2, "accumulation equivalences, exhaustive on 3 points", 60, criterion_2),
        (3, "relativized equivalences, grid and random", 120, criterion_3),
        (4, "generalized equivalences, random and whole-index", 120, criterion_4),
        (5, "duality laws on ground up to 3", 10, criterion_5),
        (6, "canonical counterexample spaces", 30, criterion_6),
        (7, "monotonicity facts and downward closure", 60, criterion_7),
        (8, "cross-path agreement", 120, criterion_8),
        (9, "filter and singleton reductions", 30, criterion_9),
        (10, "CLI golden reports", 30, criterion_10),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let mut tally = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let pass = tally.failures == 0 && in_time;
        if !in_time {
            tally.notes.push(format!("took {:.2}s, limit {limit}s", elapsed.as_secs_f64()));
        }
        println!(
            "criterion {id:>2} {}: {name}: {} failures in {} checks, {:.2}s (limit {limit}s)",
            if pass { "PASS" } else { "FAIL" },
            tally.failures,
            tally.checks,
            elapsed.as_secs_f64(),
        );
        for note in &tally.notes {
            println!("    {note}");
        }
        failed += u32::from(!pass);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
