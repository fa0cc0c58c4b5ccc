use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use twisted_steinberg::algebra::{coboundary_iso, AlgebraContext, AlgebraElement, EquivariantModel};
use twisted_steinberg::catalog;
use twisted_steinberg::cocycle::{Coboundary, TwoCocycle};
use twisted_steinberg::coefficients::{check_t_inverse_involution, Involution, Ring, UnitSubgroup};
use twisted_steinberg::formats;
use twisted_steinberg::groupoid::FiniteGroupoid;
use twisted_steinberg::structure::{self, SimplicityMode};
use twisted_steinberg::twist::{self, DiscreteTwist};

fn twisted_contexts() -> Vec<AlgebraContext> {
    let mut out = Vec::new();
    for name in catalog::COCYCLE_NAMES {
        let (base, sigma) = catalog::named_cocycle(name).unwrap();
        let g = catalog::entry(base).unwrap().groupoid;
        out.push(
            AlgebraContext::standard(g.clone(), Ring::parse("Q(zeta_4)").unwrap(), sigma.clone(), Some(Involution::Conjugation))
                .unwrap(),
        );
        out.push(AlgebraContext::standard(g, Ring::parse("GF(5)").unwrap(), sigma, None).unwrap());
    }
    for e in catalog::entries().into_iter().filter(|e| e.groupoid.len() <= 8) {
        let g = e.groupoid;
        out.push(AlgebraContext::standard(g.clone(), Ring::parse("Z").unwrap(), TwoCocycle::trivial(&g, 2), Some(Involution::Identity)).unwrap());
    }
    out
}

fn pick<T: Clone>(xs: &[T], i: usize) -> T {
    xs[i % xs.len()].clone()
}

/// `Σ_{αβ=γ} f(α) g(β)` from the composition table alone.
fn untwisted_product(c: &AlgebraContext, f: &AlgebraElement, h: &AlgebraElement) -> AlgebraElement {
    let r = c.ring();
    let g = c.groupoid();
    let mut acc = BTreeMap::new();
    for a in g.arrows() {
        for b in g.arrows() {
            if let Some(ab) = g.compose(a, b) {
                let t = r.mul(&c.coeff(f, a), &c.coeff(h, b));
                let e = acc.entry(ab).or_insert_with(|| r.zero());
                *e = r.add(e, &t);
            }
        }
    }
    AlgebraElement::from_map(r, acc)
}

fn random_coboundary(g: &FiniteGroupoid, order: u32, rng: &mut StdRng) -> Coboundary {
    let values = g.arrows().map(|a| if g.is_unit(a) { 0 } else { rng.gen_range(0..order) }).collect();
    Coboundary::new(g, order, values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involutions_square_to_identity(i in 0usize..5, seed: u64) {
        let (ring, conj, order) = pick(&catalog::ring_contexts(), i);
        let mut rng = StdRng::seed_from_u64(seed);
        let (x, y) = (ring.random_element(&mut rng), ring.random_element(&mut rng));
        prop_assert_eq!(conj.apply(&ring, &conj.apply(&ring, &x)), x.clone());
        prop_assert_eq!(conj.apply(&ring, &ring.mul(&x, &y)), ring.mul(&conj.apply(&ring, &x), &conj.apply(&ring, &y)));
        prop_assert_eq!(conj.apply(&ring, &ring.add(&x, &y)), ring.add(&conj.apply(&ring, &x), &conj.apply(&ring, &y)));
        let t = UnitSubgroup::standard(&ring, order).unwrap();
        prop_assert!(check_t_inverse_involution(&ring, conj, &t));
        if ring.is_field() && !ring.is_zero(&x) {
            prop_assert!(ring.is_one(&ring.mul(&x, &ring.inv(&x).unwrap())));
        }
    }

    #[test]
    fn coboundaries_are_detected(i in 0usize..6, seed: u64) {
        let (base, sigma) = catalog::named_cocycle(catalog::COCYCLE_NAMES[i]).unwrap();
        let g = catalog::entry(base).unwrap().groupoid;
        let mut rng = StdRng::seed_from_u64(seed);
        let b = random_coboundary(&g, sigma.order(), &mut rng);
        let tau = sigma.apply_coboundary(&g, &b).unwrap();
        prop_assert!(tau.validate(&g).is_empty());
        let w = sigma.cohomologous_witness(&g, &tau).unwrap().expect("witness");
        prop_assert_eq!(tau.apply_coboundary(&g, &w).unwrap(), sigma.clone());
        prop_assert_eq!(sigma.multiply(&sigma.invert()).unwrap(), TwoCocycle::trivial(&g, sigma.order()));
    }

    #[test]
    fn cohomologous_twists_are_isomorphic(i in 0usize..6, seed: u64) {
        let (base, sigma) = catalog::named_cocycle(catalog::COCYCLE_NAMES[i]).unwrap();
        let g = catalog::entry(base).unwrap().groupoid;
        let mut rng = StdRng::seed_from_u64(seed);
        let b = random_coboundary(&g, sigma.order(), &mut rng);
        let tau = sigma.apply_coboundary(&g, &b).unwrap();
        let (s1, s2) = (DiscreteTwist::build(&g, &tau).unwrap(), DiscreteTwist::build(&g, &sigma).unwrap());
        prop_assert!(s1.validate().is_empty());
        let m = twist::coboundary_twist_iso(&s1, &s2, &b);
        prop_assert!(twist::check_twist_morphism(&s1, &s2, &m).is_empty());
        for e in s1.total().arrows() {
            for k in 0..s1.order() {
                prop_assert_eq!(m.at(s1.act(k, e)), s2.act(k, m.at(e)));
            }
        }
        let found = twist::twists_isomorphic(&s1, &s2).unwrap().expect("isomorphic");
        prop_assert!(twist::check_twist_morphism(&s1, &s2, &found).is_empty());
    }

    #[test]
    fn twist_fibres_are_torsors(i in 0usize..6) {
        let (base, sigma) = catalog::named_cocycle(catalog::COCYCLE_NAMES[i]).unwrap();
        let g = catalog::entry(base).unwrap().groupoid;
        let t = DiscreteTwist::build(&g, &sigma).unwrap();
        for a in g.arrows() {
            let fibre = t.fiber(a);
            prop_assert_eq!(fibre.len(), t.order() as usize);
            for &e in &fibre {
                prop_assert_eq!(t.project(e), a);
                let orbit: std::collections::BTreeSet<usize> = (0..t.order()).map(|k| t.act(k, e)).collect();
                prop_assert_eq!(orbit.into_iter().collect::<Vec<_>>(), fibre.clone());
            }
        }
        let p = t.find_section();
        prop_assert!(t.check_section(&p).is_empty());
        prop_assert!(t.induced_cocycle(&p).unwrap().cohomologous_witness(&g, &sigma).unwrap().is_some());
    }

    #[test]
    fn convolution_is_associative(i: usize, seed: u64) {
        let c = pick(&twisted_contexts(), i);
        let mut rng = StdRng::seed_from_u64(seed);
        let [f, g, h] = [0; 3].map(|_| c.random_element(&mut rng));
        prop_assert_eq!(c.convolve(&c.convolve(&f, &g), &h), c.convolve(&f, &c.convolve(&g, &h)));
        prop_assert_eq!(c.convolve(&f, &c.add(&g, &h)), c.add(&c.convolve(&f, &g), &c.convolve(&f, &h)));
    }

    #[test]
    fn involution_reverses_products(i: usize, seed: u64) {
        let c = pick(&twisted_contexts(), i);
        prop_assume!(c.involution().is_some());
        let mut rng = StdRng::seed_from_u64(seed);
        let (f, g) = (c.random_element(&mut rng), c.random_element(&mut rng));
        let star = |x: &AlgebraElement| c.involute(x).unwrap();
        prop_assert_eq!(star(&c.convolve(&f, &g)), c.convolve(&star(&g), &star(&f)));
        prop_assert_eq!(star(&star(&f)), f);
    }

    #[test]
    fn trivial_cocycle_gives_the_untwisted_product(i: usize, seed: u64) {
        let entries = catalog::entries();
        let g = pick(&entries, i).groupoid;
        let c = AlgebraContext::standard(g.clone(), Ring::parse("Q").unwrap(), TwoCocycle::trivial(&g, 2), None).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (f, h) = (c.random_element(&mut rng), c.random_element(&mut rng));
        prop_assert_eq!(c.convolve(&f, &h), untwisted_product(&c, &f, &h));
    }

    #[test]
    fn bisection_products(i: usize, j: usize, k: usize) {
        let c = pick(&twisted_contexts(), i);
        prop_assume!(c.involution().is_some());
        let g = c.groupoid();
        let bis = g.bisections(1 << 12).unwrap();
        let (b, d) = (pick(&bis, j), pick(&bis, k));
        let (fb, fd) = (c.char_fn(&b), c.char_fn(&d));
        let prod = c.convolve(&fb, &fd);
        prop_assert_eq!(prod.support(), b.product(g, &d).arrows().clone());
        for &x in b.arrows() {
            for &y in d.arrows() {
                if let Some(xy) = g.compose(x, y) {
                    prop_assert_eq!(&c.coeff(&prod, xy), c.sigma(x, y));
                }
            }
        }
        let bs = c.involute(&fb).unwrap();
        prop_assert_eq!(c.convolve(&fb, &bs), c.char_fn(&b.range(g)));
        prop_assert_eq!(c.convolve(&bs, &fb), c.char_fn(&b.source(g)));
    }

    #[test]
    fn decompositions_recompose(i: usize, seed: u64) {
        let c = pick(&twisted_contexts(), i);
        let mut rng = StdRng::seed_from_u64(seed);
        let f = c.random_element(&mut rng);
        prop_assume!(!f.is_zero());
        let terms = c.disjoint_decomposition(&f).unwrap();
        prop_assert_eq!(c.recompose(&terms), f);
        for (a, (_, b)) in terms.iter().enumerate() {
            for (_, d) in &terms[a + 1..] {
                prop_assert!(b.arrows().is_disjoint(d.arrows()));
            }
        }
    }

    #[test]
    fn gradings_split_the_algebra(i in 0usize..5, seed: u64) {
        let (base, grading) = catalog::named_grading(catalog::GRADING_NAMES[i]).unwrap();
        let g = catalog::entry(base).unwrap().groupoid;
        let c = AlgebraContext::untwisted(g, Ring::parse("GF(5)").unwrap(), None).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (f, h) = (c.random_element(&mut rng), c.random_element(&mut rng));
        let parts = c.graded_components(&f, &grading).unwrap();
        prop_assert_eq!(parts.values().fold(AlgebraElement::zero(), |acc, p| c.add(&acc, p)), f);
        for (&z, fz) in &parts {
            for (&y, hy) in &c.graded_components(&h, &grading).unwrap() {
                let d = grading.group().op(z, y);
                prop_assert!(c.convolve(fz, hy).support().iter().all(|&a| grading.degree(a) == d));
            }
        }
    }

    #[test]
    fn coboundary_iso_is_multiplicative(i in 0usize..6, seed: u64) {
        let (base, sigma) = catalog::named_cocycle(catalog::COCYCLE_NAMES[i]).unwrap();
        let g = catalog::entry(base).unwrap().groupoid;
        let mut rng = StdRng::seed_from_u64(seed);
        let b = random_coboundary(&g, sigma.order(), &mut rng);
        let ring = Ring::parse("Q(zeta_4)").unwrap();
        let from = AlgebraContext::standard(g.clone(), ring.clone(), sigma.apply_coboundary(&g, &b).unwrap(), None).unwrap();
        let to = AlgebraContext::standard(g, ring, sigma, None).unwrap();
        let (f, h) = (from.random_element(&mut rng), from.random_element(&mut rng));
        let theta = |x: &AlgebraElement| coboundary_iso(&from, &to, &b, x).unwrap();
        prop_assert_eq!(theta(&from.convolve(&f, &h)), to.convolve(&theta(&f), &theta(&h)));
    }

    #[test]
    fn psi_is_a_star_isomorphism(i in 0usize..6, seed: u64) {
        let (base, sigma) = catalog::named_cocycle(catalog::COCYCLE_NAMES[i]).unwrap();
        let g = catalog::entry(base).unwrap().groupoid;
        let t = DiscreteTwist::build(&g, &sigma).unwrap();
        let p = t.find_section();
        let m = EquivariantModel::new(t, p, Ring::parse("Q(zeta_4)").unwrap(), Some(Involution::Conjugation)).unwrap();
        let target = m.target_context().unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (f, h) = (m.random_element(&mut rng), m.random_element(&mut rng));
        prop_assert_eq!(m.psi_inverse(&m.psi(&f)).unwrap(), f.clone());
        prop_assert_eq!(m.psi(&m.convolve(&f, &h)), target.convolve(&m.psi(&f), &m.psi(&h)));
        prop_assert_eq!(m.psi(&m.involute(&f).unwrap()), target.involute(&m.psi(&f)).unwrap());
    }

    #[test]
    fn generated_ideals_are_closed(i: usize, seed: u64) {
        let entries: Vec<_> = catalog::entries().into_iter().filter(|e| e.groupoid.len() <= 9).collect();
        let e = pick(&entries, i);
        let c = AlgebraContext::untwisted(e.groupoid, Ring::parse("GF(3)").unwrap(), None).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let f = c.random_element(&mut rng);
        let ideal = structure::ideal_generated(&c, std::slice::from_ref(&f)).unwrap();
        prop_assert!(ideal.is_closed(&c));
        prop_assert!(ideal.contains(&c, &f));
        prop_assert_eq!(ideal.is_zero(), f.is_zero());
        if e.effective && !f.is_zero() {
            let v = structure::ck_witness(&c, &ideal).unwrap();
            let one_v = c.char_fn_of(v.iter().copied()).unwrap();
            prop_assert!(ideal.contains(&c, &one_v));
        }
    }

    #[test]
    fn element_files_round_trip(i: usize, seed: u64) {
        let c = pick(&twisted_contexts(), i);
        let mut rng = StdRng::seed_from_u64(seed);
        let f = c.random_element(&mut rng);
        let text = formats::emit_element(c.groupoid(), c.ring(), &f);
        prop_assert_eq!(formats::parse_element(&text, c.groupoid(), c.ring()).unwrap(), f);
        let sigma_text = formats::emit_cocycle(c.groupoid(), c.cocycle());
        prop_assert_eq!(&formats::parse_cocycle(&sigma_text, c.groupoid()).unwrap(), c.cocycle());
        let g_text = formats::emit_groupoid(c.groupoid());
        prop_assert_eq!(&formats::parse_groupoid(&g_text).unwrap(), c.groupoid());
    }
}

#[test]
fn simplicity_modes_agree_on_small_effective_groupoids() {
    for e in catalog::entries().into_iter().filter(|e| e.effective && e.groupoid.len() <= 8) {
        let c = AlgebraContext::untwisted(e.groupoid, Ring::parse("GF(2)").unwrap(), None).unwrap();
        let a = structure::is_simple(&c, SimplicityMode::Exhaustive { cap: 1 << 10 }).unwrap();
        let b = structure::is_simple(&c, SimplicityMode::Structural).unwrap();
        assert_eq!(a.as_bool(), b.as_bool(), "{}", e.name);
        assert_eq!(b.as_bool(), Some(e.minimal), "{}", e.name);
    }
}
