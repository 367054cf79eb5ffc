use covlab::checkers::{is_e_accumulation_point, is_e_limit_point};
use covlab::cli::{parse_instance, InstanceDocument};
use covlab::constructions::{cover_dual_family, sections_family};
use covlab::fintop::{restricted_cluster_point, DirectedSet, PointSequence, SubsetSequence};
use covlab::setfam::{
    downward_closure, is_ultrafilter, is_upward_closed, member_section, point_section, principal_ultrafilter,
    transversal_dual, upward_closure,
};
use covlab::{Checker, FamilyCollection, SetFamily, Subset, Topology};
use proptest::prelude::*;

fn family_from(n: usize, masks: &[u32]) -> SetFamily {
    let full = (1u32 << n) - 1;
    SetFamily::from_sets(n, masks.iter().map(|m| Subset::from_bits(n, m & full).unwrap())).unwrap()
}

fn family(max_ground: usize, max_len: usize) -> impl Strategy<Value = SetFamily> {
    (0..=max_ground).prop_flat_map(move |n| {
        prop::collection::vec(any::<u32>(), 0..=max_len).prop_map(move |ms| family_from(n, &ms))
    })
}

fn family_over(n: usize, max_len: usize) -> impl Strategy<Value = SetFamily> {
    prop::collection::vec(any::<u32>(), 0..=max_len).prop_map(move |ms| family_from(n, &ms))
}

fn topology(max_points: usize) -> impl Strategy<Value = Topology> {
    (0..=max_points).prop_flat_map(|n| {
        prop::collection::vec(any::<u32>(), 0..=4)
            .prop_map(move |ms| Topology::from_subbase(n, &family_from(n, &ms)).unwrap())
    })
}

fn all_subsets(n: usize) -> Vec<Subset> {
    (0..1u32 << n).map(|b| Subset::from_bits(n, b).unwrap()).collect()
}

/// Every subset meeting every member, by brute force.
fn dual_oracle(e: &SetFamily) -> SetFamily {
    let n = e.ground_size();
    SetFamily::from_sets(n, all_subsets(n).into_iter().filter(|s| e.iter().all(|m| s.meets(m)))).unwrap()
}

/// Every superset of a member, by brute force.
fn up_oracle(e: &SetFamily) -> SetFamily {
    let n = e.ground_size();
    SetFamily::from_sets(n, all_subsets(n).into_iter().filter(|s| e.iter().any(|m| m.is_subset_of(s)))).unwrap()
}

/// Intersection of all closed supersets.
fn closure_oracle(x: &Topology, s: &Subset) -> Subset {
    let n = x.point_count();
    x.opens()
        .iter()
        .map(Subset::complement)
        .filter(|c| s.is_subset_of(c))
        .fold(Subset::full(n).unwrap(), |acc, c| acc.intersection(&c))
}

fn closures(x: &Topology, f: &SetFamily) -> SetFamily {
    SetFamily::from_sets(f.ground_size(), f.iter().map(|s| x.closure(s))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dual_is_upward_closed_and_involutive_up_to_closure(e in family(4, 6)) {
        let d = transversal_dual(&e);
        prop_assert_eq!(&d, &dual_oracle(&e));
        prop_assert!(is_upward_closed(&d));
        prop_assert_eq!(transversal_dual(&d), up_oracle(&e));
    }

    #[test]
    fn dual_is_antitone(e in family_over(3, 5), extra in family_over(3, 3)) {
        let bigger = e.union(&extra);
        prop_assert!(transversal_dual(&bigger).is_subfamily_of(&transversal_dual(&e)));
    }

    #[test]
    fn double_dual_is_extensive(e in family(4, 6)) {
        let dd = transversal_dual(&transversal_dual(&e));
        prop_assert!(e.is_subfamily_of(&dd));
        prop_assert_eq!(dd == e, is_upward_closed(&e));
    }

    #[test]
    fn ultrafilters_are_self_dual(n in 1usize..=6, i in 0usize..6) {
        let d = principal_ultrafilter(i % n, n).unwrap();
        prop_assert!(is_ultrafilter(&d));
        prop_assert_eq!(transversal_dual(&d), d);
    }

    #[test]
    fn sections_are_adjoint(a in family(4, 6)) {
        for i in 0..a.ground_size() {
            let sec = point_section(i, &a).unwrap();
            prop_assert_eq!(sec.ground_size(), a.len());
            prop_assert_eq!(&sec, &member_section(i, &a).unwrap());
            for (j, s) in a.iter().enumerate() {
                prop_assert_eq!(sec.contains(j), s.contains(i));
            }
        }
    }

    #[test]
    fn family_closures_are_closure_operators(e in family_over(3, 5), extra in family_over(3, 3)) {
        let bigger = e.union(&extra);
        for op in [upward_closure, downward_closure] {
            let once = op(&e);
            prop_assert!(e.is_subfamily_of(&once));
            prop_assert_eq!(op(&once), once.clone());
            prop_assert!(once.is_subfamily_of(&op(&bigger)));
        }
    }

    #[test]
    fn closure_and_interior_axioms(x in topology(4), s in any::<u32>(), t in any::<u32>()) {
        let n = x.point_count();
        let full = (1u32 << n) - 1;
        let s = Subset::from_bits(n, s & full).unwrap();
        let st = Subset::from_bits(n, (s.bits() | t) & full).unwrap();
        let cl = x.closure(&s);
        let int = x.interior(&s);
        prop_assert_eq!(&cl, &closure_oracle(&x, &s));
        prop_assert!(s.is_subset_of(&cl) && int.is_subset_of(&s));
        prop_assert_eq!(x.closure(&cl), cl);
        prop_assert_eq!(x.interior(&int), int);
        prop_assert!(cl.is_subset_of(&x.closure(&st)));
        prop_assert!(int.is_subset_of(&x.interior(&st)));
        prop_assert_eq!(int, x.closure(&s.complement()).complement());
    }

    #[test]
    fn subbase_generates_a_topology(n in 0usize..=4, ms in prop::collection::vec(any::<u32>(), 0..5)) {
        let sub = family_from(n, &ms);
        let x = Topology::from_subbase(n, &sub).unwrap();
        let opens = x.opens();
        prop_assert!(opens.contains(&Subset::empty(n).unwrap()));
        prop_assert!(opens.contains(&Subset::full(n).unwrap()));
        for u in opens.iter() {
            for v in opens.iter() {
                prop_assert!(opens.contains(&u.union(v)) && opens.contains(&u.intersection(v)));
            }
        }
        prop_assert!(sub.is_subfamily_of(opens));
        prop_assert_eq!(Topology::new(n, opens.clone()).unwrap(), x.clone());
        prop_assert!(!x.is_t1() || x.is_t0());
    }

    #[test]
    fn restricted_cluster_point_matches_definition(
        n in 1usize..=5, x in topology(3), vals in prop::collection::vec(any::<usize>(), 5), t in any::<u32>()
    ) {
        prop_assume!(x.point_count() > 0);
        let p = x.point_count();
        let sigma = DirectedSet::chain(n).unwrap();
        let seq = PointSequence::new(vals[..n].iter().map(|v| v % p).collect());
        let tset = Subset::from_bits(n, (t & ((1 << n) - 1)) | 1 << (n - 1)).unwrap();
        for pt in 0..p {
            let classical = x.opens().iter().filter(|u| u.contains(pt)).all(|u| {
                (0..n).all(|s| (s..n).any(|s2| u.contains(seq.values()[s2])))
            });
            prop_assert_eq!(restricted_cluster_point(&x, &sigma, &seq, &tset, pt).unwrap(), classical);
        }
    }

    #[test]
    fn compactness_ignores_downward_closure(x in topology(3), b in family_over(2, 3)) {
        let c = Checker::default();
        prop_assert_eq!(
            c.ba_compact(&x, 2, &b).unwrap().holds,
            c.ba_compact(&x, 2, &downward_closure(&b)).unwrap().holds
        );
    }

    #[test]
    fn compactness_as_accumulation(x in topology(3), b in family(2, 3)) {
        let c = Checker::default();
        let a = b.ground_size();
        let e = cover_dual_family(a, &b).unwrap();
        prop_assert_eq!(
            c.ba_compact(&x, a, &b).unwrap().holds,
            c.e_accumulation(&x, b.len(), &e).unwrap().holds
        );
    }

    #[test]
    fn sections_compactness_is_accumulation(x in topology(3), a in family(2, 3)) {
        let c = Checker::default();
        let i = a.ground_size();
        prop_assert_eq!(
            c.ba_compact(&x, a.len(), &sections_family(i, &a).unwrap()).unwrap().holds,
            c.e_accumulation(&x, i, &transversal_dual(&a)).unwrap().holds
        );
    }

    #[test]
    fn open_and_closed_paths_agree(x in topology(3), b in family_over(2, 3), g in family_over(2, 2), f in family_over(3, 3)) {
        let c = Checker::default();
        let f = family_from(x.point_count(), &f.iter().map(|s| s.bits()).collect::<Vec<_>>());
        prop_assert_eq!(c.ba_compact(&x, 2, &b).unwrap().holds, c.ba_compact_closed(&x, 2, &b).unwrap().holds);
        prop_assert_eq!(c.bg_compact(&x, 2, &b, &g).unwrap().holds, c.bg_compact_closed(&x, 2, &b, &g).unwrap().holds);
        prop_assert_eq!(
            c.f_ba_compact(&x, 2, &b, &f).unwrap().holds,
            c.f_ba_compact_closed(&x, 2, &b, &f).unwrap().holds
        );
        prop_assert_eq!(
            c.f_bg_compact(&x, 2, &b, &g, &f).unwrap().holds,
            c.f_bg_compact_closed(&x, 2, &b, &g, &f).unwrap().holds
        );
    }

    #[test]
    fn relativized_verdicts_depend_on_equivalence_class(x in topology(3), b in family_over(2, 3), f in any::<Vec<u32>>()) {
        let c = Checker::default();
        let f = family_from(x.point_count(), &f[..f.len().min(3)]);
        let base = c.f_ba_compact(&x, 2, &b, &f).unwrap().holds;
        prop_assert_eq!(c.f_ba_compact(&x, 2, &b, &closures(&x, &f)).unwrap().holds, base);
        prop_assert_eq!(c.f_ba_compact(&x, 2, &b, &upward_closure(&f)).unwrap().holds, base);
        let e = transversal_dual(&b);
        let base = c.f_e_accumulation(&x, 2, &e, &f).unwrap().holds;
        prop_assert_eq!(c.f_e_accumulation(&x, 2, &e, &closures(&x, &f)).unwrap().holds, base);
    }

    #[test]
    fn quasi_implies_weak(x in topology(3), k in 1usize..=3, choice in any::<u32>()) {
        let c = Checker::default();
        let m = FamilyCollection::new(
            k,
            (0..k).filter(|i| choice & (1 << i) != 0).map(|i| principal_ultrafilter(i, k).unwrap()),
        ).unwrap();
        prop_assert!(!c.quasi_m_compact(&x, &m).unwrap().holds || c.weak_m_compact(&x, &m).unwrap().holds);
    }

    #[test]
    fn pointwise_accumulation_is_closure_membership(
        x in topology(3), a in family_over(2, 3), seq in prop::collection::vec(any::<usize>(), 2), pt in any::<usize>()
    ) {
        prop_assume!(x.point_count() > 0);
        let p = x.point_count();
        let seq: Vec<usize> = seq.iter().map(|v| v % p).collect();
        let pt = pt % p;
        let expected = a.iter().all(|s| {
            let img = Subset::new(p, &{
                let mut v: Vec<usize> = s.members().map(|i| seq[i]).collect();
                v.sort();
                v.dedup();
                v
            }).unwrap();
            closure_oracle(&x, &img).contains(pt)
        });
        let got = is_e_accumulation_point(&x, &PointSequence::new(seq.clone()), pt, &transversal_dual(&a)).unwrap();
        prop_assert_eq!(got, expected);

        let sets: Vec<Subset> = seq.iter().map(|&v| Subset::singleton(p, v).unwrap()).collect();
        let got = is_e_limit_point(&x, &SubsetSequence::new(sets), pt, &transversal_dual(&a)).unwrap();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn serialization_round_trip(e in family(4, 6), rev in any::<bool>()) {
        let mut sets: Vec<Vec<usize>> = e.iter().map(Subset::to_vec).collect();
        if rev {
            sets.reverse();
        }
        let text = serde_json::json!({"kind": "family", "ground": e.ground_size(), "sets": sets}).to_string();
        let doc = parse_instance(&text).unwrap();
        prop_assert_eq!(&doc, &InstanceDocument::Family(e));
        let once = doc.to_json().to_string();
        let twice = parse_instance(&once).unwrap().to_json().to_string();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn topology_round_trip(x in topology(4)) {
        let doc = InstanceDocument::Topology(x);
        let text = doc.to_json().to_string();
        prop_assert_eq!(parse_instance(&text).unwrap(), doc);
    }
}
