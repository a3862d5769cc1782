use lespec::{Error, FiniteBoundedLattice};
use proptest::prelude::*;

/// Divisors of `n` ordered by divisibility.
fn divisor_lattice(n: usize) -> (Vec<usize>, FiniteBoundedLattice) {
    let ds: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let rows: Vec<Vec<bool>> = ds.iter().map(|a| ds.iter().map(|b| b % a == 0).collect()).collect();
    (ds, FiniteBoundedLattice::from_leq(&rows).unwrap())
}

/// Subsets of a `k`-element set ordered by inclusion.
fn boolean_lattice(k: u32) -> FiniteBoundedLattice {
    let n = 1usize << k;
    let rows: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a & b == a).collect()).collect();
    FiniteBoundedLattice::from_leq(&rows).unwrap()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn check_laws(l: &FiniteBoundedLattice) -> Result<(), TestCaseError> {
    for a in l.elements() {
        prop_assert_eq!(l.join2(a, a), a);
        prop_assert_eq!(l.meet2(a, a), a);
        prop_assert!(l.leq(l.bottom(), a) && l.leq(a, l.top()));
        for b in l.elements() {
            let j = l.join2(a, b);
            let m = l.meet2(a, b);
            prop_assert_eq!(j, l.join2(b, a));
            prop_assert_eq!(m, l.meet2(b, a));
            prop_assert_eq!(l.join2(a, m), a);
            prop_assert_eq!(l.meet2(a, j), a);
            prop_assert!(l.leq(a, j) && l.leq(b, j) && l.leq(m, a) && l.leq(m, b));
            prop_assert_eq!(l.leq(a, b), j == b);
            for c in l.elements() {
                prop_assert_eq!(l.join2(l.join2(a, b), c), l.join2(a, l.join2(b, c)));
                prop_assert_eq!(l.meet2(l.meet2(a, b), c), l.meet2(a, l.meet2(b, c)));
                if l.leq(a, c) && l.leq(b, c) {
                    prop_assert!(l.leq(j, c));
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn divisor_lattices_obey_the_laws(n in 1usize..=120) {
        let (ds, l) = divisor_lattice(n);
        check_laws(&l)?;
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(ds[l.meet2(a, b)], gcd(ds[a], ds[b]));
                prop_assert_eq!(ds[l.join2(a, b)], ds[a] * ds[b] / gcd(ds[a], ds[b]));
            }
        }
    }

    #[test]
    fn boolean_lattices_obey_the_laws(k in 0u32..=4) {
        let l = boolean_lattice(k);
        check_laws(&l)?;
        prop_assert_eq!(l.covers().len(), (k as usize) << k.saturating_sub(1));
    }

    #[test]
    fn family_join_matches_folded_binary_join(n in 1usize..=60, picks in proptest::collection::vec(0usize..64, 1..6)) {
        let (_, l) = divisor_lattice(n);
        let fam: Vec<usize> = picks.iter().map(|p| p % l.size()).collect();
        let folded = fam.iter().fold(l.bottom(), |acc, &x| l.join2(acc, x));
        prop_assert_eq!(l.join(fam.iter().copied()).unwrap(), folded);
    }

    #[test]
    fn chains_are_linear(n in 1usize..=12) {
        let l = FiniteBoundedLattice::chain(n).unwrap();
        check_laws(&l)?;
        prop_assert_eq!(l.covers().len(), n - 1);
    }
}

#[test]
fn empty_families_are_rejected() {
    let l = FiniteBoundedLattice::chain(3).unwrap();
    assert_eq!(l.join(std::iter::empty()), Err(Error::EmptyFamily));
    assert_eq!(l.meet(std::iter::empty()), Err(Error::EmptyFamily));
}

#[test]
fn divisor_lattice_of_twelve() {
    let (ds, l) = divisor_lattice(12);
    let idx = |d: usize| ds.iter().position(|&x| x == d).unwrap();
    assert_eq!(l.join2(idx(4), idx(6)), idx(12));
    assert_eq!(l.meet2(idx(4), idx(6)), idx(2));
}
