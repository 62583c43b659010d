use modforge_core::ideal::{enumerate_ideals, quotient_ring};
use modforge_core::module::{elements_of, flattening_ideal, hom_enumerate, minimal_presentation};
use modforge_core::ring::build_ring;
use modforge_core::{Caps, Elem, FPModule, Ideal, Presentation, RingRef, RingSpec};
use proptest::prelude::*;

fn rings() -> Vec<RingRef> {
    let caps = Caps::default();
    let dual_z4 =
        RingSpec::Table { orders: vec![4, 2], one: vec![1, 0], mul: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]] };
    [
        RingSpec::zmod(2),
        RingSpec::zmod(4),
        RingSpec::zmod(8),
        RingSpec::zmod(16),
        RingSpec::f4(),
        RingSpec::truncated_poly(RingSpec::zmod(2), 1, 2),
        RingSpec::truncated_poly(RingSpec::zmod(2), 2, 2),
        dual_z4,
        RingSpec::zmod(6),
    ]
    .iter()
    .map(|s| build_ring(s, &caps).unwrap())
    .collect()
}

fn elem(r: &RingRef, seed: u32) -> Elem {
    Elem(seed % r.order() as u32)
}

proptest! {
    #[test]
    fn ring_axioms(ri in 0usize..9, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let r = &rings()[ri];
        let (a, b, c) = (elem(r, a), elem(r, b), elem(r, c));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), Elem::ZERO);
        prop_assert_eq!(r.mul(r.one(), a), a);
    }

    #[test]
    fn flattening_ideal_ignores_presentation_changes(
        ri in 0usize..8,
        raw in proptest::collection::vec(any::<u32>(), 4),
        coeffs in proptest::collection::vec(any::<u32>(), 4),
    ) {
        let r = rings()[ri].clone();
        let entries: Vec<Vec<Elem>> = raw.chunks(2).map(|row| row.iter().map(|&x| elem(&r, x)).collect()).collect();
        let p = Presentation::new(r.clone(), 2, 2, entries.clone()).unwrap();
        let base = flattening_ideal(&FPModule::new(p.clone())).unwrap();

        // redundant relation: a combination of the existing columns
        let extra: Vec<Elem> = (0..2)
            .map(|i| r.add(r.mul(elem(&r, coeffs[0]), entries[i][0]), r.mul(elem(&r, coeffs[1]), entries[i][1])))
            .collect();
        let widened = p.with_columns(&[extra]).unwrap();
        prop_assert_eq!(&flattening_ideal(&FPModule::new(widened)).unwrap(), &base);

        // change of generators: add t·(row 1) to row 0
        let t = elem(&r, coeffs[2]);
        let mut sheared = entries.clone();
        for j in 0..2 {
            sheared[0][j] = r.add(entries[0][j], r.mul(t, entries[1][j]));
        }
        let sheared = Presentation::new(r.clone(), 2, 2, sheared).unwrap();
        prop_assert_eq!(&flattening_ideal(&FPModule::new(sheared)).unwrap(), &base);

        // scaling a relation by a unit
        let units = r.units();
        let u = units[coeffs[3] as usize % units.len()].0;
        let scaled: Vec<Vec<Elem>> = entries.iter().map(|row| vec![r.mul(u, row[0]), row[1]]).collect();
        let scaled = Presentation::new(r, 2, 2, scaled).unwrap();
        prop_assert_eq!(&flattening_ideal(&FPModule::new(scaled)).unwrap(), &base);
    }

    #[test]
    fn minimization_is_idempotent(ri in 0usize..8, raw in proptest::collection::vec(any::<u32>(), 4)) {
        let r = rings()[ri].clone();
        let entries: Vec<Vec<Elem>> = raw.chunks(2).map(|row| row.iter().map(|&x| elem(&r, x)).collect()).collect();
        let once = minimal_presentation(&FPModule::new(Presentation::new(r, 2, 2, entries).unwrap())).unwrap();
        let twice = minimal_presentation(&FPModule::new(once.clone())).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn hom_composition_is_associative(ri in 0usize..4, picks in proptest::collection::vec(any::<usize>(), 3)) {
        let r = rings()[ri].clone();
        let caps = Caps::default();
        let two = r.from_int(2);
        let e = FPModule::new(Presentation::new(r, 2, 1, vec![vec![two], vec![Elem::ZERO]]).unwrap());
        let el = elements_of(&e, &caps).unwrap();
        let ends = hom_enumerate(&el, &el, &caps).unwrap();
        let [f, g, h] = [0, 1, 2].map(|i| &ends[picks[i] % ends.len()]);
        let left = f.then(g).unwrap().then(h).unwrap();
        let right = f.then(&g.then(h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn ideal_lattice_is_closed(ri in 0usize..9, i in any::<usize>(), j in any::<usize>()) {
        let r = &rings()[ri];
        let ideals = enumerate_ideals(r, &Caps::default()).unwrap();
        let (a, b) = (&ideals[i % ideals.len()], &ideals[j % ideals.len()]);
        prop_assert!(ideals.contains(&a.sum(b).unwrap()));
        prop_assert!(ideals.contains(&a.product(b).unwrap()));
    }
}

#[test]
fn quotient_by_zero_is_isomorphic() {
    for r in rings() {
        let (q, proj) = quotient_ring(&Ideal::zero(&r)).unwrap();
        assert_eq!(q.order(), r.order());
        assert!(proj.is_bijective());
    }
}
