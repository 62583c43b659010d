use modforge_core::ideal::{enumerate_ideals, local_structure, minimal_generators};
use modforge_core::ring::build_ring;
use modforge_core::{Caps, Elem, Ideal, RingSpec};

/// No generating set with fewer elements exists, by exhaustive search.
#[test]
fn minimal_generators_are_minimal() {
    let caps = Caps::default();
    let specs = [
        RingSpec::zmod(4),
        RingSpec::zmod(8),
        RingSpec::zmod(16),
        RingSpec::f4(),
        RingSpec::truncated_poly(RingSpec::zmod(2), 1, 2),
        RingSpec::truncated_poly(RingSpec::zmod(2), 2, 2),
        RingSpec::truncated_poly(RingSpec::zmod(2), 2, 3),
    ];
    for spec in &specs {
        let r = build_ring(spec, &caps).unwrap();
        let m = local_structure(&r).maximal_ideal.unwrap();
        for i in enumerate_ideals(&r, &caps).unwrap() {
            let gens = minimal_generators(&i).unwrap();
            assert_eq!(Ideal::closure(&r, gens.clone()), i);
            let residue_dim =
                (i.len() / m.product(&i).unwrap().len()).trailing_zeros() as usize / (r.order() / m.len()).trailing_zeros().max(1) as usize;
            assert_eq!(gens.len(), residue_dim);
            if gens.is_empty() {
                continue;
            }
            let mut tuple = vec![0usize; gens.len() - 1];
            loop {
                let cand: Vec<Elem> = tuple.iter().map(|&k| i.elements()[k]).collect();
                assert_ne!(Ideal::closure(&r, cand), i, "{spec:?}: fewer generators suffice");
                let mut pos = 0;
                while pos < tuple.len() && tuple[pos] + 1 == i.len() {
                    tuple[pos] = 0;
                    pos += 1;
                }
                if pos == tuple.len() {
                    break;
                }
                tuple[pos] += 1;
            }
        }
    }
}
