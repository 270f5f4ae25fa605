use mdcore::chain::AbelianGroup;
use mdcore::presentation::{
    abelianize, graph_of_groups, mapping_torus, quotient, tietze_simplify, GroupEdge, GroupHom, Presentation, Word,
};
use proptest::prelude::*;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("g{i}")).collect()
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n, -2i64..=2), 0..=max_len).prop_map(|p| Word::from_powers(&p))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(word(n, 5), 0..=4).prop_map(move |rels| Presentation::new(names(n), rels).unwrap())
    })
}

fn torus(prefix: &str) -> Presentation {
    let p = Presentation::free([format!("a{prefix}"), format!("b{prefix}")]);
    quotient(&p, &[Word::commutator(&Word::generator(0), &Word::generator(1))]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tietze_keeps_abelianization(p in presentation()) {
        let s = tietze_simplify(&p);
        prop_assert_eq!(abelianize(&s), abelianize(&p));
        prop_assert!(s.num_generators() <= p.num_generators());
        prop_assert_eq!(tietze_simplify(&s), s);
    }

    #[test]
    fn empty_quotient_is_identity(p in presentation()) {
        prop_assert_eq!(quotient(&p, &[]).unwrap(), p);
    }

    #[test]
    fn node_order_does_not_change_abelianization(
        k0 in -2i64..=2, k1 in -2i64..=2, k2 in -2i64..=2, perm in 0usize..6, extra in any::<bool>(),
    ) {
        // three tori in a path, optionally closed to a cycle
        let nodes = [torus("0"), torus("1"), torus("2")];
        let glue = |k: i64| GroupHom::new(2, vec![Word::from_powers(&[(0, 1), (1, k)]), Word::generator(1)]).unwrap();
        let mut edges = vec![(0usize, 1usize, k0), (1, 2, k1)];
        if extra {
            edges.push((2, 0, k2));
        }
        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let order = orders[perm];
        let position = |v: usize| order.iter().position(|&o| o == v).unwrap();
        let build = |place: &dyn Fn(usize) -> usize| {
            let mut ps = vec![Presentation::trivial(); 3];
            for v in 0..3 {
                ps[place(v)] = nodes[v].clone();
            }
            let es: Vec<GroupEdge> = edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b, k))| GroupEdge {
                    source: place(a),
                    target: place(b),
                    to_source: GroupHom::identity(2),
                    to_target: glue(k),
                    stable_name: Some(format!("s{i}")),
                })
                .collect();
            graph_of_groups(&ps, &es).unwrap()
        };
        let base = build(&|v| v);
        let permuted = build(&position);
        prop_assert_eq!(base.num_generators(), permuted.num_generators());
        prop_assert_eq!(abelianize(&base), abelianize(&permuted));
    }
}

#[test]
fn identity_mapping_torus_is_free_abelian() {
    for r in 0..=4 {
        let p = mapping_torus(r, &GroupHom::identity(r)).unwrap();
        assert_eq!(p.num_generators(), r + 1);
        assert_eq!(abelianize(&p), AbelianGroup::free(r + 1));
    }
}

#[test]
fn amalgamated_tori() {
    let e = GroupEdge {
        source: 0,
        target: 1,
        to_source: GroupHom::identity(2),
        to_target: GroupHom::identity(2),
        stable_name: None,
    };
    let p = graph_of_groups(&[torus("0"), torus("1")], &[e]).unwrap();
    assert_eq!(abelianize(&p), AbelianGroup::free(2));
    assert_eq!(tietze_simplify(&p).num_generators(), 2);
}
