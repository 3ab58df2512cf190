use proptest::prelude::*;
use schurlab::ci::is_ci_subset;
use schurlab::rational::LetterMatrix;
use schurlab::sring::{closure, complete_traces, radical, SchurRing};
use schurlab::store::{canonical_json, inputs_digest};
use schurlab::{Group, Perm};
use serde_json::json;

fn small_group() -> impl Strategy<Value = Group> {
    prop::sample::select(vec![
        vec![4u64],
        vec![6],
        vec![8],
        vec![9],
        vec![10],
        vec![12],
        vec![2, 2],
        vec![2, 4],
        vec![3, 3],
        vec![2, 2, 2],
        vec![2, 6],
    ])
    .prop_map(|f| Group::new(&f).unwrap())
}

fn group_and_coloring() -> impl Strategy<Value = (Group, Vec<u32>)> {
    small_group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0u32..4, n))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn naive_is_sring(a: &SchurRing) -> bool {
    let g = a.group();
    let n = g.order();
    let classes = a.classes();
    if classes[0] != vec![0] {
        return false;
    }
    for x in classes {
        let inv: Vec<usize> = {
            let mut v: Vec<usize> = x.iter().map(|&e| g.neg(e)).collect();
            v.sort_unstable();
            v
        };
        if !classes.contains(&inv) {
            return false;
        }
        for y in classes {
            let mut c = vec![0u32; n];
            for &u in x {
                for &v in y {
                    c[g.add(u, v)] += 1;
                }
            }
            if classes.iter().any(|z| z.iter().any(|&e| c[e] != c[z[0]])) {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law(g in small_group(), a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.add(a, b), g.add(b, a));
        prop_assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
        prop_assert_eq!(g.add(a, g.neg(a)), 0);
        prop_assert_eq!(g.sub(g.add(a, b), b), a);
        prop_assert_eq!(g.elem(&g.coords(a).iter().map(|&x| x as i64).collect::<Vec<_>>()), a);
    }

    #[test]
    fn perm_composition(p in permutation(7), q in permutation(7), x in 0usize..7) {
        prop_assert_eq!(p.then(&q).apply(x), q.apply(p.apply(x)));
        prop_assert!(p.then(&p.inverse()).is_identity());
    }

    #[test]
    fn closure_is_an_sring_refining_the_coloring((g, color) in group_and_coloring()) {
        let a = closure(&g, &color);
        prop_assert!(naive_is_sring(&a));
        prop_assert!(SchurRing::validate_partition(&g, a.classes()).is_ok());
        for x in a.classes().iter().skip(1) {
            prop_assert!(x.iter().all(|&e| color[e] == color[x[0]]));
        }
    }

    #[test]
    fn closure_is_idempotent((g, color) in group_and_coloring()) {
        let a = closure(&g, &color);
        prop_assert_eq!(closure(&g, a.coloring()), a);
    }

    #[test]
    fn trace_classes_are_power_orbits(g in small_group(), x in 1usize..64) {
        let x = x % g.order();
        let w = complete_traces(&g);
        let e = g.exponent() as i64;
        for m in (1..e).filter(|m| num_gcd(*m, e) == 1) {
            prop_assert_eq!(w.class_of(g.scale(x, m)), w.class_of(x));
        }
    }

    #[test]
    fn radical_stabilizes(g in small_group(), mask in any::<u64>()) {
        let set: Vec<usize> = g.elements().filter(|&x| mask >> x & 1 == 1).collect();
        let rad = radical(&g, &set);
        for &r in rad.members() {
            let mut t = g.translate(&set, r);
            t.sort_unstable();
            prop_assert_eq!(&t, &set);
        }
    }

    #[test]
    fn ci_verdict_is_automorphism_invariant(n in prop::sample::select(vec![6u64, 8, 9]), mask in any::<u16>(), m in 1i64..9) {
        let g = Group::new(&[n]).unwrap();
        prop_assume!(num_gcd(m, n as i64) == 1);
        let set: Vec<usize> = (1..g.order()).filter(|x| mask >> x & 1 == 1).collect();
        let image: Vec<usize> = g.power_map(m).image_set(&set);
        prop_assert_eq!(is_ci_subset(&g, &set).unwrap().ci, is_ci_subset(&g, &image).unwrap().ci);
    }

    #[test]
    fn digest_ignores_key_order(a in any::<i32>(), b in "[a-z]{0,8}") {
        let x = json!({ "alpha": a, "beta": b, "nested": { "y": 1, "x": [a] } });
        let y: serde_json::Value = serde_json::from_str(&format!(
            r#"{{"nested":{{"x":[{a}],"y":1}},"beta":{},"alpha":{a}}}"#,
            serde_json::to_string(&b).unwrap()
        )).unwrap();
        prop_assert_eq!(canonical_json(&x), canonical_json(&y));
        prop_assert_eq!(inputs_digest("cmd", &x), inputs_digest("cmd", &y));
    }

    #[test]
    fn canonical_key_ignores_row_order(entries in prop::collection::vec(0u8..3, 12), rot in 0usize..3) {
        let m = LetterMatrix::new(3, 4, entries.clone()).unwrap();
        let mut rotated = entries[rot * 4..].to_vec();
        rotated.extend_from_slice(&entries[..rot * 4]);
        let r = LetterMatrix::new(3, 4, rotated).unwrap();
        prop_assert_eq!(m.canonical_key(), r.canonical_key());
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}
