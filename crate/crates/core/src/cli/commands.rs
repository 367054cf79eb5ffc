use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

use super::doc::{
    bundle_from_instance, bundle_json, family_json, parse_value, parse_witness, subset_json, topology_json,
    witness_json, Bundle, DocError, InstanceDocument,
};
use super::{
    BuildName, CheckName, ClaimArg, Cli, CliError, CliResult, Command, Direction, Inputs, Report, SelectorArg,
    VerifyName,
};
use crate::checkers::{Checker, Property, Verdict};
use crate::constructions::{
    complements_family, cover_dual_family, example_space_a, example_space_b, initial_segments,
    sections_family, selector_families, SelectorMode,
};
use crate::fintop::{PointSequence, SubsetSequence, Topology};
use crate::harness::{self, ConditionReport, SearchBounds, SplitMix64};
use crate::setfam::{downward_closure, transversal_dual, upward_closure, FamilyCollection, SetFamily};

pub(super) fn run(cli: &Cli) -> CliResult<Report> {
    let checker = Checker::new(cli.budget);
    match &cli.command {
        Command::Check { property, inputs } => check(&checker, *property, &gather(inputs)?),
        Command::Dual { inputs } => {
            let e = need(family_input(inputs)?, "--family")?;
            Ok(computed(json!({"family": family_json(&e)}), family_json(&transversal_dual(&e))))
        }
        Command::Closure { direction, inputs } => {
            let e = need(family_input(inputs)?, "--family")?;
            let out = match direction {
                Direction::Up => upward_closure(&e),
                Direction::Down => downward_closure(&e),
            };
            Ok(computed(json!({"family": family_json(&e)}), family_json(&out)))
        }
        Command::Build { what, mode, n, inputs } => build(*what, *mode, *n, &gather(inputs)?),
        Command::Verify { theorem, inputs } => {
            let (report, bundle) = verify(&checker, *theorem, &gather(inputs)?)?;
            Ok(verify_report(&report, &bundle))
        }
        Command::Fuzz { seed, count, theorem, points, index } => {
            fuzz(&checker, *seed, *count, *theorem, *points, *index)
        }
        Command::FindCounterexample { claim, max_points, max_index } => {
            find(&checker, *claim, *max_points, *max_index)
        }
        Command::Recheck { report } => recheck(&checker, report),
    }
}

fn computed(instance: Value, result: Value) -> Report {
    Report { holds: true, instance: Some(instance), result: Some(result), ..Report::default() }
}

fn need<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("missing {flag}")))
}

/// A document given inline (starting with `{` or `[`) or as a file path.
fn load(src: &str) -> CliResult<Value> {
    let trimmed = src.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        src.to_string()
    } else {
        std::fs::read_to_string(Path::new(src)).map_err(|e| CliError::Io(format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| DocError::Parse(format!("malformed JSON in {src}: {e}")).into())
}

fn load_doc(src: &str) -> CliResult<InstanceDocument> {
    Ok(parse_value(&load(src)?)?)
}

fn wrong_kind(flag: &str, expected: &str) -> CliError {
    DocError::Parse(format!("{flag} expects a {expected} document")).into()
}

fn family_arg(src: &Option<String>, flag: &str) -> CliResult<Option<SetFamily>> {
    src.as_deref()
        .map(|s| match load_doc(s)? {
            InstanceDocument::Family(f) => Ok(f),
            _ => Err(wrong_kind(flag, "family")),
        })
        .transpose()
}

fn collection_arg(src: &Option<String>, flag: &str) -> CliResult<Option<FamilyCollection>> {
    src.as_deref()
        .map(|s| match load_doc(s)? {
            InstanceDocument::Collection(c) => Ok(c),
            _ => Err(wrong_kind(flag, "collection")),
        })
        .transpose()
}

fn family_input(inputs: &Inputs) -> CliResult<Option<SetFamily>> {
    match family_arg(&inputs.family, "--family")? {
        Some(f) => Ok(Some(f)),
        None => Ok(gather(inputs)?.e),
    }
}

/// The bundle from `--instance`, overridden by the individual flags.
fn gather(inputs: &Inputs) -> CliResult<Bundle> {
    let mut b = match inputs.instance.as_deref() {
        None => Bundle::default(),
        Some(src) => match load_doc(src)? {
            InstanceDocument::Bundle(b) => *b,
            _ => return Err(wrong_kind("--instance", "instance-bundle")),
        },
    };
    if let Some(src) = inputs.space.as_deref() {
        match load_doc(src)? {
            InstanceDocument::Topology(x) => b.space = Some(x),
            _ => return Err(wrong_kind("--space", "topology")),
        }
    }
    macro_rules! over {
        ($field:ident, $loader:ident, $flag:literal) => {
            if let Some(v) = $loader(&inputs.$field, $flag)? {
                b.$field = Some(v);
            }
        };
    }
    over!(a, family_arg, "--a-family");
    over!(b, family_arg, "--B");
    over!(d, family_arg, "--D");
    over!(e, family_arg, "--E");
    over!(f, family_arg, "--F");
    over!(g, family_arg, "--G");
    over!(m, collection_arg, "--M");
    over!(cal_e, collection_arg, "--calE");
    over!(cal_g, collection_arg, "--calG");
    b.a_size = inputs.a_size.or(b.a_size);
    b.i_size = inputs.i_size.or(b.i_size);
    b.k = inputs.k.or(b.k);
    b.point = inputs.point.or(b.point);
    if let Some(src) = inputs.seq.as_deref() {
        let v = load(src)?;
        let doc = json!({"kind": "instance-bundle", "seq": v});
        if let InstanceDocument::Bundle(parsed) = parse_value(&doc)? {
            b.seq = parsed.seq;
        }
    }
    if let Some(src) = inputs.setseq.as_deref() {
        let space = need(b.space.as_ref(), "--space")?;
        let doc = json!({"kind": "instance-bundle", "space": topology_json(space), "setseq": load(src)?});
        if let InstanceDocument::Bundle(parsed) = parse_value(&doc)? {
            b.setseq = parsed.setseq;
        }
    }
    Ok(b)
}

fn space(b: &Bundle) -> CliResult<Topology> {
    need(b.space.clone(), "--space")
}

fn fam(v: &Option<SetFamily>, flag: &str) -> CliResult<SetFamily> {
    need(v.clone(), flag)
}

fn coll(v: &Option<FamilyCollection>, flag: &str) -> CliResult<FamilyCollection> {
    need(v.clone(), flag)
}

/// `A` and `B`, with `A` defaulting to the ground of `B`.
fn a_and_b(b: &Bundle) -> CliResult<(usize, SetFamily)> {
    let fb = fam(&b.b, "--B")?;
    Ok((b.a_size.unwrap_or(fb.ground_size()), fb))
}

/// `I` and a family over it, `I` defaulting to the family's ground.
fn i_and(b: &Bundle, v: &Option<SetFamily>, flag: &str) -> CliResult<(usize, SetFamily)> {
    let f = fam(v, flag)?;
    Ok((b.i_size.unwrap_or(f.ground_size()), f))
}

fn property(name: CheckName, b: &Bundle) -> CliResult<Property> {
    use CheckName as N;
    Ok(match name {
        N::Compact | N::CompactClosed => {
            let (a_size, fb) = a_and_b(b)?;
            if name == N::Compact {
                Property::BaCompact { a_size, b: fb }
            } else {
                Property::BaCompactClosed { a_size, b: fb }
            }
        }
        N::FCompact | N::FCompactClosed => {
            let (a_size, fb) = a_and_b(b)?;
            let f = fam(&b.f, "--F")?;
            if name == N::FCompact {
                Property::FBaCompact { a_size, b: fb, f }
            } else {
                Property::FBaCompactClosed { a_size, b: fb, f }
            }
        }
        N::BgCompact | N::BgCompactClosed => {
            let (a_size, fb) = a_and_b(b)?;
            let g = fam(&b.g, "--G")?;
            if name == N::BgCompact {
                Property::BgCompact { a_size, b: fb, g }
            } else {
                Property::BgCompactClosed { a_size, b: fb, g }
            }
        }
        N::FbgCompact | N::FbgCompactClosed => {
            let (a_size, fb) = a_and_b(b)?;
            let (g, f) = (fam(&b.g, "--G")?, fam(&b.f, "--F")?);
            if name == N::FbgCompact {
                Property::FBgCompact { a_size, b: fb, g, f }
            } else {
                Property::FBgCompactClosed { a_size, b: fb, g, f }
            }
        }
        N::DCompact => Property::DCompact { d: fam(&b.d, "--D")? },
        N::DCompactCovering => Property::DCompactCovering { d: fam(&b.d, "--D")? },
        N::WeakM => Property::WeakM { m: coll(&b.m, "--M")? },
        N::WeakMCovering => Property::WeakMCovering { m: coll(&b.m, "--M")? },
        N::QuasiM => Property::QuasiM { m: coll(&b.m, "--M")? },
        N::QuasiMCovering => Property::QuasiMCovering { m: coll(&b.m, "--M")? },
        N::Accum => {
            let (i_size, e) = i_and(b, &b.e, "--E")?;
            Property::Accumulation { i_size, e }
        }
        N::FAccum => {
            let (i_size, e) = i_and(b, &b.e, "--E")?;
            Property::FAccumulation { i_size, e, f: fam(&b.f, "--F")? }
        }
        N::CaleAccum => {
            let cal_e = coll(&b.cal_e, "--calE")?;
            let i_size = b.i_size.unwrap_or(cal_e.ground_size());
            Property::CalEAccumulation { i_size, cal_e, f: b.f.clone() }
        }
        N::Irreducible => Property::IrreducibleCover { k: need(b.k, "--k")? },
    })
}

/// The parameters of `p` on `space`, as a bundle.
fn property_bundle(space: &Topology, p: &Property) -> Bundle {
    use Property::*;
    let mut out = Bundle { space: Some(space.clone()), ..Bundle::default() };
    match p.clone() {
        BaCompact { a_size, b } | BaCompactClosed { a_size, b } => {
            out.a_size = Some(a_size);
            out.b = Some(b);
        }
        FBaCompact { a_size, b, f } | FBaCompactClosed { a_size, b, f } => {
            out.a_size = Some(a_size);
            out.b = Some(b);
            out.f = Some(f);
        }
        BgCompact { a_size, b, g } | BgCompactClosed { a_size, b, g } => {
            out.a_size = Some(a_size);
            out.b = Some(b);
            out.g = Some(g);
        }
        FBgCompact { a_size, b, g, f } | FBgCompactClosed { a_size, b, g, f } => {
            out.a_size = Some(a_size);
            out.b = Some(b);
            out.g = Some(g);
            out.f = Some(f);
        }
        DCompact { d } | DCompactCovering { d } => out.d = Some(d),
        WeakM { m } | WeakMCovering { m } | QuasiM { m } | QuasiMCovering { m } => out.m = Some(m),
        Accumulation { i_size, e } => {
            out.i_size = Some(i_size);
            out.e = Some(e);
        }
        FAccumulation { i_size, e, f } => {
            out.i_size = Some(i_size);
            out.e = Some(e);
            out.f = Some(f);
        }
        CalEAccumulation { i_size, cal_e, f } => {
            out.i_size = Some(i_size);
            out.cal_e = Some(cal_e);
            out.f = f;
        }
        IrreducibleCover { k } => out.k = Some(k),
    }
    out
}

fn check(checker: &Checker, name: CheckName, b: &Bundle) -> CliResult<Report> {
    let x = space(b)?;
    let p = property(name, b)?;
    let v = checker.check(&x, &p)?;
    Ok(Report {
        holds: v.holds,
        instance: Some(bundle_json(&property_bundle(&x, &p))),
        witness: v.witness.as_ref().map(witness_json),
        budget_used: v.cost,
        ..Report::default()
    })
}

fn build(what: BuildName, mode: SelectorArg, n: usize, b: &Bundle) -> CliResult<Report> {
    let size = |b: &Bundle| need(b.a_size, "--A");
    let (instance, result) = match what {
        BuildName::ExampleA | BuildName::ExampleB => {
            let (a_size, fb) = a_and_b(b)?;
            let ex = if what == BuildName::ExampleA {
                example_space_a(a_size, &fb)?
            } else {
                example_space_b(a_size, &fb)?
            };
            let cover: Vec<Value> = ex.subbase_cover().iter().map(subset_json).collect();
            let result = json!({
                "space": topology_json(&ex.space),
                "labels": family_json(&ex.labels),
                "subbase_cover": cover,
            });
            (Bundle { a_size: Some(a_size), b: Some(fb), ..Bundle::default() }, result)
        }
        BuildName::Sections => {
            let (i_size, a) = i_and(b, &b.a, "--a-family")?;
            let out = sections_family(i_size, &a)?;
            (Bundle { i_size: Some(i_size), a: Some(a), ..Bundle::default() }, family_json(&out))
        }
        BuildName::CoverDual => {
            let (a_size, fb) = a_and_b(b)?;
            let out = cover_dual_family(a_size, &fb)?;
            (Bundle { a_size: Some(a_size), b: Some(fb), ..Bundle::default() }, family_json(&out))
        }
        BuildName::Selectors => {
            let g = fam(&b.g, "--G")?;
            let a_size = b.a_size.unwrap_or(g.ground_size());
            let mode = match mode {
                SelectorArg::OneOf => SelectorMode::OneOf,
                SelectorArg::AtMost => SelectorMode::AtMost(n),
            };
            let out = selector_families(a_size, &g, mode)?;
            (Bundle { a_size: Some(a_size), g: Some(g), ..Bundle::default() }, family_json(&out))
        }
        BuildName::Segments => {
            let a_size = size(b)?;
            (Bundle { a_size: Some(a_size), ..Bundle::default() }, family_json(&initial_segments(a_size)?))
        }
        BuildName::Complements => {
            let a_size = size(b)?;
            (Bundle { a_size: Some(a_size), ..Bundle::default() }, family_json(&complements_family(a_size)?))
        }
    };
    Ok(computed(bundle_json(&instance), result))
}

fn verify(checker: &Checker, name: VerifyName, b: &Bundle) -> CliResult<(ConditionReport, Bundle)> {
    use VerifyName as V;
    let x = space(b)?;
    let mut used = Bundle { space: Some(x.clone()), ..Bundle::default() };
    let report = match name {
        V::TheoremE | V::TheoremEo | V::TheoremEg | V::TheoremEog | V::Facts => {
            let (a_size, fb) = a_and_b(b)?;
            used.a_size = Some(a_size);
            used.b = Some(fb.clone());
            match name {
                V::TheoremE => harness::verify_theorem_e(checker, &x, a_size, &fb)?,
                V::Facts => harness::verify_facts(checker, &x, a_size, &fb)?,
                V::TheoremEo => {
                    let f = fam(&b.f, "--F")?;
                    used.f = Some(f.clone());
                    harness::verify_theorem_eo(checker, &x, a_size, &fb, &f)?
                }
                V::TheoremEg => {
                    let g = fam(&b.g, "--G")?;
                    used.g = Some(g.clone());
                    harness::verify_theorem_eg(checker, &x, a_size, &fb, &g)?
                }
                _ => {
                    let (g, f) = (fam(&b.g, "--G")?, fam(&b.f, "--F")?);
                    used.g = Some(g.clone());
                    used.f = Some(f.clone());
                    harness::verify_theorem_eog(checker, &x, a_size, &fb, &g, &f)?
                }
            }
        }
        V::TheoremR | V::TheoremRo | V::PropAe | V::PropAeo => {
            let (i_size, a) = i_and(b, &b.a, "--a-family")?;
            used.i_size = Some(i_size);
            used.a = Some(a.clone());
            match name {
                V::TheoremR => harness::verify_theorem_r(checker, &x, i_size, &a)?,
                V::TheoremRo => {
                    let f = fam(&b.f, "--F")?;
                    used.f = Some(f.clone());
                    harness::verify_theorem_ro(checker, &x, i_size, &a, &f)?
                }
                V::PropAe => {
                    let seq = need(b.seq.clone(), "--seq")?;
                    let p = need(b.point, "--x")?;
                    used.seq = Some(seq.clone());
                    used.point = Some(p);
                    harness::verify_prop_ae(&x, i_size, &a, &PointSequence::new(seq), p)?
                }
                _ => {
                    let seq = need(b.setseq.clone(), "--setseq")?;
                    let p = need(b.point, "--x")?;
                    used.setseq = Some(seq.clone());
                    used.point = Some(p);
                    harness::verify_prop_aeo(&x, i_size, &a, &SubsetSequence::new(seq), p)?
                }
            }
        }
        V::TheoremRee | V::TheoremReef => {
            let cal_g = coll(&b.cal_g, "--calG")?;
            let i_size = b.i_size.unwrap_or(cal_g.ground_size());
            used.i_size = Some(i_size);
            used.cal_g = Some(cal_g.clone());
            if name == V::TheoremRee {
                harness::verify_theorem_ree(checker, &x, i_size, &cal_g)?
            } else {
                let f = fam(&b.f, "--F")?;
                used.f = Some(f.clone());
                harness::verify_theorem_reef(checker, &x, i_size, &cal_g, &f)?
            }
        }
    };
    Ok((report, used))
}

fn verify_report(report: &ConditionReport, used: &Bundle) -> Report {
    Report {
        holds: report.agree,
        instance: Some(bundle_json(used)),
        conditions: Some(report.conditions.clone()),
        budget_used: report.cost,
        ..Report::default()
    }
}

/// A random instance for `name` on `points` points with index sets of size
/// at most `index`.
fn random_bundle(rng: &mut SplitMix64, name: VerifyName, points: usize, index: usize) -> CliResult<Bundle> {
    let x = harness::random_topology(points, rng.next_u64())?;
    let size = rng.below(index as u64 + 1) as usize;
    let mut b = Bundle { space: Some(x), ..Bundle::default() };
    b.a_size = Some(size);
    b.i_size = Some(size);
    b.b = Some(harness::random_family(size, 4, rng.next_u64())?);
    b.a = Some(harness::random_family(size, 3, rng.next_u64())?);
    b.g = Some(harness::random_family(size, 2, rng.next_u64())?);
    b.f = Some(harness::random_family(points, 3, rng.next_u64())?);
    let fams = (0..rng.below(3))
        .map(|_| harness::random_family(size, 2, rng.next_u64()))
        .collect::<crate::Result<Vec<_>>>()?;
    b.cal_g = Some(FamilyCollection::new(size, fams)?);
    if points > 0 {
        b.point = Some(rng.below(points as u64) as usize);
        b.seq = Some((0..size).map(|_| rng.below(points as u64) as usize).collect());
        let sets = (0..size).map(|_| crate::setfam::Subset::from_bits(points, rng.subset(points)));
        b.setseq = Some(sets.collect::<crate::Result<Vec<_>>>()?);
    }
    if matches!(name, VerifyName::PropAe | VerifyName::PropAeo) && points == 0 {
        return Err(CliError::Usage("pointwise checks need --points of at least 1".into()));
    }
    Ok(b)
}

fn fuzz(
    checker: &Checker,
    seed: u64,
    count: u64,
    name: VerifyName,
    points: usize,
    index: usize,
) -> CliResult<Report> {
    let mut rng = SplitMix64::new(seed);
    let mut cost = 0u64;
    let mut disagreements = 0u64;
    let mut first = None;
    for _ in 0..count {
        let b = random_bundle(&mut rng, name, points, index)?;
        let (report, used) = verify(checker, name, &b)?;
        cost = cost.saturating_add(report.cost);
        if !report.agree {
            disagreements += 1;
            first.get_or_insert_with(|| json!({"instance": bundle_json(&used), "conditions": report.conditions}));
        }
    }
    let mut report = Report {
        holds: disagreements == 0,
        instance: Some(json!({
            "seed": seed,
            "count": count,
            "theorem": super::value_name(&name),
            "points": points,
            "index": index,
        })),
        witness: first,
        budget_used: cost,
        ..Report::default()
    };
    report.extra.insert("disagreements".into(), json!(disagreements));
    Ok(report)
}

fn find(checker: &Checker, claim: ClaimArg, max_points: usize, max_index: usize) -> CliResult<Report> {
    let name = super::value_name(&claim);
    let parsed = harness::Claim::from_name(&name).expect("claim names match");
    let found = harness::find_counterexample(checker, parsed, SearchBounds { max_points, max_index })?;
    let key = if matches!(claim, ClaimArg::WeakImpliesQuasi | ClaimArg::QuasiImpliesWeak) { "m" } else { "cal_g" };
    Ok(Report {
        holds: found.is_none(),
        instance: Some(json!({"claim": name, "max_points": max_points, "max_index": max_index})),
        witness: found.map(|inst| bundle_json(&bundle_from_instance(&inst, key))),
        ..Report::default()
    })
}

fn recheck(checker: &Checker, path: &str) -> CliResult<Report> {
    let report = load(path)?;
    let bad = |m: &str| CliError::from(DocError::Parse(format!("report {m}")));
    let command = report.get("command").and_then(Value::as_str).ok_or_else(|| bad("has no command"))?;
    let instance = report.get("instance").ok_or_else(|| bad("has no instance"))?;
    let holds = report.get("holds").and_then(Value::as_bool).ok_or_else(|| bad("has no holds"))?;
    let bundle = match parse_value(instance)? {
        InstanceDocument::Bundle(b) => *b,
        _ => return Err(bad("instance is not an instance-bundle")),
    };
    let x = space(&bundle)?;
    let (valid, cost) = if let Some(name) = command.strip_prefix("check ") {
        let name = CheckName::from_str(name, false).map_err(|_| bad("names an unknown property"))?;
        let p = property(name, &bundle)?;
        let witness = report.get("witness").map(|w| parse_witness(w, x.point_count())).transpose()?;
        let cost = report.get("budget_used").and_then(Value::as_u64).unwrap_or(0);
        (p.recheck(&x, &Verdict { holds, witness, cost })?, 0)
    } else if let Some(name) = command.strip_prefix("verify ") {
        let name = VerifyName::from_str(name, false).map_err(|_| bad("names an unknown theorem"))?;
        let (fresh, used) = verify(checker, name, &bundle)?;
        let rerun = verify_report(&fresh, &used).to_json(command);
        let same = ["holds", "conditions", "instance"].iter().all(|k| rerun.get(k) == report.get(k));
        (same, fresh.cost)
    } else {
        return Err(CliError::Usage(format!("cannot recheck a {command:?} report")));
    };
    Ok(Report {
        holds: valid,
        instance: Some(instance.clone()),
        result: Some(json!({"command": command})),
        budget_used: cost,
        ..Report::default()
    })
}
