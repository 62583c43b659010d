use modforge_core::group::gl_points;
use modforge_core::ideal::quotient_ring;
use modforge_core::module::{base_change, elements_of};
use modforge_core::ring::build_ring;
use modforge_core::{Caps, Elem, FPModule, Ideal, Presentation, RingHom, RingSpec};

/// Restricting along `R → T → U` agrees with restricting along the composite,
/// and each restriction is a group homomorphism.
#[test]
fn restriction_commutes_with_composition() {
    let caps = Caps::default();
    let r = build_ring(&RingSpec::zmod(8), &caps).unwrap();
    let e = FPModule::new(Presentation::new(r.clone(), 2, 1, vec![vec![Elem(2)], vec![Elem::ZERO]]).unwrap());
    let (t, rt) = quotient_ring(&Ideal::closure(&r, vec![Elem(4)])).unwrap();
    let (_, tu) = quotient_ring(&Ideal::closure(&t, vec![t.from_int(2)])).unwrap();
    let ru = rt.then(&tu).unwrap();

    let g = gl_points(&e, &RingHom::identity(&r), &caps).unwrap();
    let et = elements_of(&base_change(&e, &rt).unwrap(), &caps).unwrap();
    let eu = elements_of(&base_change(&e, &ru).unwrap(), &caps).unwrap();
    let gu = gl_points(&e, &ru, &caps).unwrap();
    for h in g.carrier() {
        let via_t = h.base_change(&rt, &et, &et).unwrap().base_change(&tu, &eu, &eu).unwrap();
        let direct = h.base_change(&ru, &eu, &eu).unwrap();
        assert_eq!(via_t, direct);
        assert!(gu.index_of(&direct).is_some());
    }
    for a in 0..g.len() {
        for b in 0..g.len() {
            let lhs = g.element(g.compose(a, b)).base_change(&ru, &eu, &eu).unwrap();
            let fa = gu.index_of(&g.element(a).base_change(&ru, &eu, &eu).unwrap()).unwrap();
            let fb = gu.index_of(&g.element(b).base_change(&ru, &eu, &eu).unwrap()).unwrap();
            assert_eq!(gu.index_of(&lhs), Some(gu.compose(fa, fb)));
        }
    }
}

/// `|P(R)| = |GL_n(R/I)|·|R/I|^{nm}·|GL_m(R)|` with every factor enumerated.
#[test]
fn parabolic_block_cardinality() {
    use modforge_core::group::parabolic_points;
    let caps = Caps { group: 4096, ..Caps::default() };
    for (spec, a, n, m) in [
        (RingSpec::zmod(4), vec![2], 1, 1),
        (RingSpec::zmod(4), vec![2], 1, 2),
        (RingSpec::zmod(4), vec![2], 2, 1),
        (RingSpec::truncated_poly(RingSpec::zmod(2), 1, 2), vec![0, 1], 1, 1),
    ] {
        let r = build_ring(&spec, &caps).unwrap();
        let a = r.elem_from_coeffs(&a).unwrap();
        let e = FPModule::new(Presentation::standard(r.clone(), a, n, m));
        let torsion: Vec<usize> = (0..n).collect();
        let p = parabolic_points(&e, &torsion, &RingHom::identity(&r), &caps).unwrap();

        let (q, _) = quotient_ring(&Ideal::closure(&r, vec![a])).unwrap();
        let gl_n = gl_points(&FPModule::free(q.clone(), n), &RingHom::identity(&q), &caps).unwrap().len();
        let gl_m = gl_points(&FPModule::free(r.clone(), m), &RingHom::identity(&r), &caps).unwrap().len();
        let y = q.order().pow((n * m) as u32);
        assert_eq!(p.len(), gl_n * y * gl_m, "n = {n}, m = {m}");
        assert!(p.quotient_free);
    }
}
