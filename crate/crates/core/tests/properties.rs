//! Property tests over random small groups and partition families, each
//! compared against a brute-force oracle.

use std::collections::HashSet;

use minbase::bounds::involution_count_sym;
use minbase::catalog::{parse_group_spec, ALMOST_SIMPLE, SOLUBLE};
use minbase::cert::Witness;
use minbase::invariants::{alpha, theorem4_bound};
use minbase::lattice::{Lattice, HARD_ORDER_CAP};
use minbase::partition::{base_size_partitions, construct_theorem2_base, partition_stabilizer, theorem2_value};
use minbase::partition::{Ambient, Mode, Parity, SetPartition};
use minbase::{PermGroup, Permutation};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u16).collect::<Vec<u16>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// A degree and one to three random generators.
fn small_group(max_n: usize) -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2..=max_n).prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=3)))
}

fn partition(n: usize) -> impl Strategy<Value = SetPartition> {
    (1..=n)
        .prop_flat_map(move |k| prop::collection::vec(0..k, n))
        .prop_map(|labels| SetPartition::from_labels(&labels))
}

fn family(max_n: usize) -> impl Strategy<Value = Vec<SetPartition>> {
    (2..=max_n).prop_flat_map(|n| prop::collection::vec(partition(n), 1..=3))
}

fn closure(gens: &[Permutation], n: usize) -> HashSet<Permutation> {
    let mut seen = HashSet::from([Permutation::identity(n)]);
    let mut stack = vec![Permutation::identity(n)];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut out: Vec<Vec<u16>> = vec![Vec::new()];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u16>| {
                (0..=k).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k as u16);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|v| Permutation::from_images(v).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_and_membership_match_enumeration((n, gens) in small_group(6), probe in perm(6)) {
        let g = PermGroup::from_generators(n, gens.clone()).unwrap();
        let elements = closure(&gens, n);
        prop_assert_eq!(g.order().to_usize(), Some(elements.len()));
        for x in elements.iter().take(50) {
            prop_assert!(g.contains(x).unwrap());
        }
        if n == 6 {
            prop_assert_eq!(g.contains(&probe).unwrap(), elements.contains(&probe));
        }
    }

    #[test]
    fn rebuild_is_deterministic((n, gens) in small_group(7)) {
        let a = PermGroup::from_generators(n, gens.clone()).unwrap();
        let b = PermGroup::from_generators(n, gens).unwrap();
        prop_assert_eq!(a.base(), b.base());
        prop_assert_eq!(a.order(), b.order());
    }

    #[test]
    fn coset_action_bookkeeping((n, gens) in small_group(5), k in 0usize..3) {
        let g = PermGroup::from_generators(n, gens.clone()).unwrap();
        let h = PermGroup::from_generators(n, vec![gens[k % gens.len()].clone()]).unwrap();
        let action = g.coset_action(&h).unwrap();
        let degree = action.image.degree();
        prop_assert_eq!(g.order(), &(h.order() * degree));
        // Image order times kernel (the core of H) order is |G|.
        let l = Lattice::new(&g, HARD_ORDER_CAP).unwrap();
        let hset = l.table().closure(&h.generators().iter().map(|x| l.table().id_of(x).unwrap()).collect::<Vec<_>>());
        let core = l.core(l.index_of(&hset).unwrap());
        prop_assert_eq!(g.order(), &(action.image.order() * l.subgroup(core).order));
    }

    #[test]
    fn stabilizer_matches_filter(fam in family(7)) {
        let n = fam[0].ground_size();
        let g = partition_stabilizer(&fam, Parity::All).unwrap();
        for x in g.generators() {
            prop_assert!(fam.iter().all(|p| p.is_stabilized_by(x)));
        }
        let count = all_perms(n).iter().filter(|x| fam.iter().all(|p| p.is_stabilized_by(x))).count();
        prop_assert_eq!(g.order().to_usize(), Some(count));
        let even = partition_stabilizer(&fam, Parity::Even).unwrap();
        let even_count = all_perms(n)
            .iter()
            .filter(|x| x.is_even() && fam.iter().all(|p| p.is_stabilized_by(x)))
            .count();
        prop_assert_eq!(even.order().to_usize(), Some(even_count));
    }

    #[test]
    fn partition_witness_agrees_with_stabilizer(fam in family(7)) {
        let w = Witness::PartitionBase {
            degree: fam[0].ground_size(),
            even: false,
            partitions: fam.iter().map(|p| p.to_string()).collect(),
            base_size: fam.len(),
        };
        let ok = w.check().unwrap().iter().all(|c| c.1);
        prop_assert_eq!(ok, partition_stabilizer(&fam, Parity::All).unwrap().is_trivial());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_invariants((n, gens) in small_group(5)) {
        let g = PermGroup::from_generators(n, gens).unwrap();
        let l = Lattice::new(&g, HARD_ORDER_CAP).unwrap();
        let whole = l.whole();
        let maximals = l.maximal_subgroups();
        for &m in maximals {
            // Nothing strictly between m and G.
            prop_assert!(m != whole);
            prop_assert!((0..l.len()).all(|k| k == m || k == whole || !l.is_subgroup(m, k)));
        }
        for k in 0..whole {
            prop_assert!(maximals.iter().any(|&m| l.is_subgroup(k, m)));
        }
        let frat = l.frattini();
        prop_assert!(l.is_normal(frat));
        prop_assert!(maximals.iter().all(|&m| l.is_subgroup(frat, m)));

        let series = l.chief_series();
        let product: usize = series.factors.iter().map(|f| f.order).product();
        prop_assert_eq!(product, l.order());
        prop_assert!(series.delta() <= series.lambda());

        let a = alpha(&l);
        prop_assert!(a.verify(&l));
    }
}

#[test]
fn nilpotent_catalog_groups_have_alpha_equal_delta() {
    for (spec, nilpotent) in SOLUBLE {
        let l = Lattice::new(&parse_group_spec(spec).unwrap(), HARD_ORDER_CAP).unwrap();
        let series = l.chief_series();
        assert_eq!(l.is_nilpotent(), nilpotent, "{spec}");
        if nilpotent {
            let frat = l.frattini();
            let above = l.chief_series_between(l.whole(), frat).len() - 1;
            assert_eq!(series.delta(), above, "{spec}");
            assert_eq!(alpha(&l).value, series.delta(), "{spec}");
        }
    }
}

#[test]
fn chief_bound_holds_on_every_catalog_group() {
    let specs = ALMOST_SIMPLE.iter().chain(SOLUBLE.iter().map(|(s, _)| s));
    for spec in specs {
        let l = Lattice::new(&parse_group_spec(spec).unwrap(), HARD_ORDER_CAP).unwrap();
        let r = theorem4_bound(&l);
        assert!(r.pass, "{spec}: alpha {} bound {}", r.alpha, r.bound);
    }
}

#[test]
fn constructed_bases_are_minimal_where_exact_is_feasible() {
    for (a, b) in [(3, 2), (4, 2), (5, 2), (6, 2), (3, 3), (4, 3)] {
        let c = construct_theorem2_base(a, b).unwrap();
        assert!(partition_stabilizer(&c.partitions, Parity::All).unwrap().is_trivial());
        let exact = base_size_partitions(a, b, Mode::Exact, Ambient::Sym, Default::default()).unwrap();
        assert_eq!(
            exact.base_size,
            theorem2_value(a, b, Ambient::Sym).unwrap(),
            "({a},{b})"
        );
        if c.base_size == exact.base_size {
            let shorter = &c.partitions[..c.partitions.len() - 1];
            let order = partition_stabilizer(shorter, Parity::All).unwrap();
            assert!(!order.is_trivial(), "({a},{b})");
        }
    }
}

#[test]
fn involution_counts_match_brute_force() {
    for n in 1..=8 {
        let count = all_perms(n).iter().filter(|x| x.order() == 2).count();
        assert_eq!(involution_count_sym(n as u64).to_usize(), Some(count), "n = {n}");
    }
}
