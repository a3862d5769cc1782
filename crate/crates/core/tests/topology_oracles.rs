use std::collections::BTreeSet;

use lespec::instances::{catalog, ideal_lattice_le_module};
use lespec::{FiniteRing, FiniteSpace, LeModule, ModuleSpectrum, PointSet, TopologyKind};
use proptest::prelude::*;

fn catalog_modules() -> Vec<(String, LeModule)> {
    catalog().into_iter().map(|d| (d.name.clone(), d.build().unwrap())).collect()
}

fn zn_ideal_lattice(n: usize) -> LeModule {
    ideal_lattice_le_module(&FiniteRing::zn(n).unwrap()).unwrap()
}

fn point_for(m: &LeModule, generator: usize) -> usize {
    let ideal = m.ring().principal(generator);
    m.ideals().iter().position(|i| *i == ideal).unwrap()
}

/// Closes a family of subsets of `0..n` under pairwise `∪` and `∩` and adds
/// `∅` and the whole set.
fn close_family(n: usize, seeds: &[PointSet]) -> BTreeSet<PointSet> {
    let mut fam: BTreeSet<PointSet> = seeds.iter().cloned().collect();
    fam.insert(PointSet::new());
    fam.insert((0..n).collect());
    loop {
        let mut next = fam.clone();
        for a in &fam {
            for b in &fam {
                next.insert(a.union(b).copied().collect());
                next.insert(a.intersection(b).copied().collect());
            }
        }
        if next.len() == fam.len() {
            return fam;
        }
        fam = next;
    }
}

fn subsets(n: usize) -> impl Iterator<Item = PointSet> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

fn arb_space() -> impl Strategy<Value = FiniteSpace> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::btree_set(0..n, 0..=n), 0..5)
            .prop_map(move |seeds| FiniteSpace::new((0..n).collect(), close_family(n, &seeds)).unwrap())
    })
}

proptest! {
    #[test]
    fn point_set_properties_match_brute_force(space in arb_space()) {
        let n = space.points().len();
        let opens = space.open_sets();
        let t0 = space.points().iter().all(|&p| space.points().iter().all(|&q| {
            p == q || opens.iter().any(|u| u.contains(&p) != u.contains(&q))
        }));
        prop_assert_eq!(space.is_t0(), t0);
        let connected = subsets(n).all(|s| {
            s.is_empty() || s.len() == n || !(space.is_open(&s) && space.is_closed(&s))
        });
        prop_assert_eq!(space.is_connected(), connected);
        let t1 = space.points().iter().all(|&p| space.is_closed(&PointSet::from([p])));
        prop_assert_eq!(space.is_t1(), t1);
        // Finite spaces: spectral exactly when T0.
        prop_assert_eq!(space.spectral_clauses().holds(), t0);
        prop_assert!(space.spectral_clauses().generic_points);
    }

    #[test]
    fn irreducibility_matches_cover_definition(space in arb_space()) {
        let closed = space.closed_sets();
        for y in subsets(space.points().len()).filter(|s| !s.is_empty()) {
            let by_covers = closed.iter().all(|a| closed.iter().all(|b| {
                let covered = y.iter().all(|p| a.contains(p) || b.contains(p));
                !covered || y.is_subset(a) || y.is_subset(b)
            }));
            prop_assert_eq!(space.is_irreducible(&y).unwrap(), by_covers);
        }
    }

    #[test]
    fn components_match_brute_force(space in arb_space()) {
        let mut fast = space.irreducible_components();
        fast.sort();
        prop_assert_eq!(fast, space.irreducible_components_brute_force());
    }
}

#[test]
fn catalog_components_match_brute_force() {
    for (name, m) in catalog_modules() {
        let spec = ModuleSpectrum::new(&m);
        let space = spec.zariski();
        assert!(space.points().len() <= 12, "{name}");
        let mut fast = space.irreducible_components();
        fast.sort();
        assert_eq!(fast, space.irreducible_components_brute_force(), "{name}");
    }
}

#[test]
fn varieties_and_closures_on_the_catalog() {
    for (name, m) in catalog_modules() {
        let spec = ModuleSpectrum::new(&m);
        let space = spec.zariski();
        for &n in spec.submodule_elements() {
            assert!(spec.variety(n).is_subset(&spec.variety_star(n)), "{name}: V({n}) ⊆ V*({n})");
        }
        for &p in spec.points() {
            assert_eq!(space.point_closure(p), spec.variety_star(p), "{name}: closure of {p}");
            assert!(space.generic_points(&spec.variety_star(p)).unwrap().contains(&p));
        }
        let tops = spec.build_topologies().unwrap();
        assert_eq!(tops.star.space.closed_sets(), tops.prime.space.closed_sets(), "{name}");
        if let Some(quasi) = tops.quasi {
            assert!(tops.star.space.closed_sets().is_subset(quasi.space.closed_sets()), "{name}");
        }
        if spec.points().len() <= 1 {
            assert!(spec.is_top(), "{name}");
        }
    }
}

#[test]
fn z6_examples() {
    let m = zn_ideal_lattice(6);
    let spec = ModuleSpectrum::new(&m);
    let two = point_for(&m, 2);
    let three = point_for(&m, 3);
    assert_eq!(spec.variety(two), PointSet::from([two]));
    assert_eq!(spec.basic_open(2), PointSet::from([three]));
    assert!(spec.basic_open(2).intersection(&spec.basic_open(3)).next().is_none());
    assert!(spec.basic_open(0).is_empty());
    let space = spec.zariski();
    assert_eq!(spec.closure(&space, &PointSet::from([two])).unwrap(), PointSet::from([two]));
    let both = PointSet::from([two, three]);
    let meet = spec.im_meet(&both).unwrap();
    assert_eq!(meet, m.zero());
    assert!(!m.is_prime(meet));
    assert!(!m.ring().is_prime_ideal(&m.colon(meet)));
    assert!(!space.is_irreducible(&both).unwrap());
    spec.irreducibility_criteria(&space, &both).unwrap().unwrap();
    let top = spec.topology(TopologyKind::Star).unwrap();
    assert_eq!(top.space.closed_sets().len(), 4);
    let props = top.space.properties();
    assert!(props.t0 && props.t1 && !props.connected && props.quasi_compact && props.spectral);
    assert!(spec.is_top());
    spec.phi_and_t1_check().unwrap();
}

#[test]
fn z4_examples() {
    let m = zn_ideal_lattice(4);
    let spec = ModuleSpectrum::new(&m);
    assert_eq!(spec.points().len(), 1);
    let props = spec.zariski().properties();
    assert!(props.t0 && props.t1 && props.connected && props.spectral);
    spec.phi_and_t1_check().unwrap();
}

#[test]
fn z12_decompositions_and_basis() {
    let m = zn_ideal_lattice(12);
    let spec = ModuleSpectrum::new(&m);
    for &n in spec.submodule_elements() {
        spec.vstar_decomposition_check(n).unwrap();
    }
    spec.basis_checks().unwrap();
}

#[test]
fn t1_fails_on_both_sides_when_primes_share_a_colon() {
    let m = catalog()
        .into_iter()
        .find(|d| d.name == "Z2xZ2-over-Z2")
        .unwrap()
        .build()
        .unwrap();
    let spec = ModuleSpectrum::new(&m);
    assert!(!spec.zariski().is_t1());
    assert!(!spec.at_most_one_per_prime());
    spec.phi_and_t1_check().unwrap();
}
