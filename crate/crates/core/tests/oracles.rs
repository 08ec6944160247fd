//! Domination polynomials against a naive subset oracle that shares no code
//! with the library's graph builders or enumerators.

use comaxdom_core::domination::{
    blowup_domination, blowup_g2, brute_force_counts, closed_pq, closed_pq_powers,
    closed_pq_powers_published, closed_prime, closed_prime_power, comaximal_domination,
    join_compose, union_compose, Method, PrimePowerVariant,
};
use comaxdom_core::numtheory::factorize;
use comaxdom_core::ringgraph::{
    build_blowup_spec, build_comaximal, expand_classes, verify_structure,
};
use comaxdom_core::{IntPoly, SimpleGraph};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn naive_counts(order: usize, adj: impl Fn(usize, usize) -> bool) -> Vec<u64> {
    let mut counts = vec![0u64; order + 1];
    for s in 0u64..1 << order {
        let ok =
            (0..order).all(|v| s >> v & 1 == 1 || (0..order).any(|u| s >> u & 1 == 1 && adj(u, v)));
        if ok {
            counts[s.count_ones() as usize] += 1;
        }
    }
    counts
}

fn as_poly(counts: &[u64]) -> IntPoly {
    IntPoly::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
}

fn comaximal_oracle(n: u64) -> IntPoly {
    as_poly(&naive_counts(n as usize, |a, b| {
        a != b && (a as u64).gcd(&(b as u64)).gcd(&n) == 1
    }))
}

fn graph_oracle(g: &SimpleGraph) -> IntPoly {
    as_poly(&naive_counts(g.order(), |a, b| g.has_edge(a, b)))
}

#[test]
fn blowup_equals_naive_oracle() {
    for n in 2..=16 {
        let spec = build_blowup_spec(n).unwrap();
        assert_eq!(
            blowup_domination(&spec).unwrap(),
            comaximal_oracle(n),
            "n = {n}"
        );
    }
}

#[test]
fn brute_force_equals_naive_oracle() {
    for n in 2..=16 {
        let g = build_comaximal(n).unwrap();
        assert_eq!(
            brute_force_counts(&g).unwrap(),
            comaximal_oracle(n),
            "n = {n}"
        );
    }
}

#[test]
fn blowup_equals_brute_force_to_24() {
    for n in 17..=24 {
        let g = build_comaximal(n).unwrap();
        let spec = build_blowup_spec(n).unwrap();
        assert_eq!(
            blowup_domination(&spec).unwrap(),
            brute_force_counts(&g).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn g2_blowup_equals_oracle() {
    for n in [12u64, 18, 20, 24, 30] {
        let spec = build_blowup_spec(n).unwrap();
        let g2 = expand_classes(&spec);
        let oracle = if g2.order() <= 16 {
            graph_oracle(&g2)
        } else {
            brute_force_counts(&g2).unwrap()
        };
        assert_eq!(blowup_g2(&spec).unwrap(), oracle, "n = {n}");
    }
}

#[test]
fn degree_lead_and_penultimate() {
    for n in 2..=200u64 {
        let d = comaximal_domination(n, Method::Blowup).unwrap().polynomial;
        assert_eq!(d.degree(), Some(n as usize), "n = {n}");
        assert_eq!(d.coeff(n as usize), BigInt::from(1));
        assert_eq!(d.coeff(n as usize - 1), BigInt::from(n), "n = {n}");
        assert_eq!(d.coeff(0), BigInt::from(0));
    }
}

#[test]
fn closed_forms_agree_with_blowup_to_200() {
    for n in 2..=200u64 {
        let f = factorize(n).unwrap();
        let closed = match f.factors() {
            [(p, 1)] => closed_prime(*p).unwrap(),
            [(p, m)] => closed_prime_power(*p, *m, PrimePowerVariant::Corrected).unwrap(),
            [(p, 1), (q, 1)] => closed_pq(*p, *q).unwrap(),
            [(p, a), (q, b)] => closed_pq_powers(*p, *a, *q, *b).unwrap(),
            _ => continue,
        };
        let spec = build_blowup_spec(n).unwrap();
        assert_eq!(closed, blowup_domination(&spec).unwrap(), "n = {n}");
    }
}

#[test]
fn published_variants_disagree() {
    for (p, m) in [(2u64, 3u32), (2, 4), (2, 5), (3, 3)] {
        let publ = closed_prime_power(p, m, PrimePowerVariant::Published).unwrap();
        let corr = closed_prime_power(p, m, PrimePowerVariant::Corrected).unwrap();
        assert_ne!(publ, corr, "{p}^{m}");
        assert_ne!(publ.degree(), Some(p.pow(m) as usize));
    }
    for (p, a, q, b) in [(2u64, 2u32, 3u64, 1u32), (2, 1, 3, 2), (2, 3, 3, 2)] {
        assert_ne!(
            closed_pq_powers_published(p, a, q, b).unwrap(),
            closed_pq_powers(p, a, q, b).unwrap()
        );
    }
}

#[test]
fn structure_and_vertex_degrees() {
    for n in 2..=64u64 {
        assert!(verify_structure(n).unwrap().matches, "n = {n}");
        let g = build_comaximal(n).unwrap();
        let phi = (1..n).filter(|a| a.gcd(&n) == 1).count();
        assert_eq!(g.degree(0), phi, "n = {n}");
        for u in (1..n).filter(|a| a.gcd(&n) == 1) {
            assert_eq!(g.degree(u as usize), n as usize - 1, "n = {n}, u = {u}");
        }
    }
}

fn random_graph() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=8).prop_flat_map(|order| {
        prop::collection::vec(any::<bool>(), order * (order - 1) / 2).prop_map(move |bits| {
            let mut g = SimpleGraph::new(order);
            let mut it = bits.into_iter();
            for u in 0..order {
                for v in u + 1..order {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn union_and_join_compose(a in random_graph(), b in random_graph()) {
        let da = graph_oracle(&a);
        let db = graph_oracle(&b);
        prop_assert_eq!(union_compose(&da, &db), graph_oracle(&a.disjoint_union(&b)));
        prop_assert_eq!(join_compose(&da, a.order(), &db, b.order()), graph_oracle(&a.join(&b)));
    }
}

#[test]
fn shape_holds_to_200() {
    use comaxdom_core::analysis::shape_analyze;
    for n in 2..=200u64 {
        let d = comaximal_domination(n, Method::Blowup).unwrap().polynomial;
        let r = shape_analyze(&d).unwrap();
        assert!(r.unimodal, "n = {n}, modes {:?}", r.mode_indices);
        assert!(
            r.log_concave,
            "n = {n}, index {:?}",
            r.first_log_concavity_violation
        );
    }
}
