mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use nvs_core::auto::{enumerate_mult_autos, same_addition, MultAuto};
use nvs_core::canonical::{
    is_multiplicative, product_hypotheses, product_regroup, to_id_theta, to_theta_id, verify_iso,
};
use nvs_core::complexify::{decompose_over_real, minimal_poly_residual, reconstruct_from_real, restriction_agrees};
use nvs_core::galois::{same_addition_exponents, unit_classification, GfTable};
use nvs_core::grid;
use nvs_core::space::{
    compatibility_classes_bruteforce, coproduct, ddot_classes, nvs_axiom_check, plus_u, quasi_kernel_bruteforce,
    quasi_kernel_closed, quasi_kernel_refined, tilde_classes, SpaceSpec, SparseVector,
};
use nvs_core::{BaseStructure, Config, Scalar};

const FIELDS: [(u64, u32); 10] = [
    (2, 1),
    (2, 2),
    (3, 1),
    (5, 1),
    (7, 1),
    (2, 3),
    (3, 2),
    (11, 1),
    (13, 1),
    (2, 4),
];

fn field() -> impl Strategy<Value = BaseStructure> {
    prop::sample::select(FIELDS.to_vec()).prop_map(|(p, n)| BaseStructure::galois(p, n).unwrap())
}

fn finite_base() -> impl Strategy<Value = BaseStructure> {
    prop_oneof![4 => field(), 1 => Just(BaseStructure::dickson9())]
}

fn pick(autos: &[MultAuto], k: usize) -> MultAuto {
    autos[k % autos.len()].clone()
}

/// Specs small enough for exhaustive sweeps: `q^d <= 729`.
fn small_spec(base: impl Strategy<Value = BaseStructure>) -> impl Strategy<Value = SpaceSpec> {
    (base, 1usize..=3, prop::collection::vec(any::<usize>(), 6)).prop_filter_map("too large", |(b, d, ks)| {
        let q = b.order()? as u64;
        if q.pow(d as u32) > 729 {
            return None;
        }
        let autos = enumerate_mult_autos(&b).ok()?;
        let s = (0..d).map(|i| pick(&autos, ks[i])).collect();
        let r = (0..d).map(|i| pick(&autos, ks[3 + i])).collect();
        SpaceSpec::indexed(b, s, r).ok()
    })
}

fn cfg() -> Config {
    Config::default()
}

#[test]
fn same_addition_exponents_is_an_equivalence() {
    for (p, n) in FIELDS {
        let q = p.pow(n);
        if !(3..=64).contains(&q) {
            continue;
        }
        let m = q - 1;
        let units: Vec<u64> = (1..m).filter(|&a| common_gcd(a, m) == 1).collect();
        let rel = |a, b| same_addition_exponents(a, b, p, n).unwrap();
        for &a in &units {
            assert!(rel(a, a));
            for &b in &units {
                assert_eq!(rel(a, b), rel(b, a));
                for &c in &units {
                    if rel(a, b) && rel(b, c) {
                        assert!(rel(a, c));
                    }
                }
            }
        }
    }
}

fn common_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        common_gcd(b, a % b)
    }
}

#[test]
fn same_addition_is_an_equivalence_on_autos() {
    let cfg = cfg();
    let mut bases: Vec<BaseStructure> = FIELDS
        .iter()
        .filter(|(p, n)| p.pow(*n) <= 16)
        .map(|&(p, n)| BaseStructure::galois(p, n).unwrap())
        .collect();
    bases.push(BaseStructure::dickson9());
    for b in bases {
        let autos = enumerate_mult_autos(&b).unwrap();
        let n = autos.len();
        let rel: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| same_addition(&autos[i], &autos[j], &b, &cfg).unwrap())
                    .collect()
            })
            .collect();
        for i in 0..n {
            assert!(rel[i][i]);
            for j in 0..n {
                assert_eq!(rel[i][j], rel[j][i]);
                for k in 0..n {
                    assert!(!(rel[i][j] && rel[j][k]) || rel[i][k]);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn log_tables_round_trip(k in 0usize..FIELDS.len()) {
        let (p, n) = FIELDS[k];
        let t = GfTable::new(p, n).unwrap();
        let q = t.order();
        for a in 1..q {
            let l = t.log(a).unwrap();
            prop_assert_eq!(t.antilog(l as u64), a);
            prop_assert_eq!(t.pow(a, q as i64 - 1).unwrap(), 1);
        }
    }

    #[test]
    fn unit_classes_partition_the_units(k in 0usize..FIELDS.len()) {
        let (p, n) = FIELDS[k];
        prop_assume!(p.pow(n) >= 3);
        let c = unit_classification(p, n).unwrap();
        let m = c.modulus_m;
        let mut all: Vec<u64> = c.classes.iter().flatten().copied().collect();
        all.sort();
        prop_assert_eq!(&all, &c.units);
        for class in &c.classes {
            for &a in class {
                prop_assert!(class.contains(&(a * p % m)));
            }
        }
    }

    #[test]
    fn induced_addition_is_abelian_and_left_distributive(b in finite_base(), k in any::<usize>()) {
        let autos = enumerate_mult_autos(&b).unwrap();
        let s = pick(&autos, k);
        let els = b.elements().unwrap();
        let add = |x, y| b.induced_add(&s, x, y).unwrap();
        let zero = b.zero();
        for &x in &els {
            prop_assert_eq!(add(x, zero), x);
            for &y in &els {
                prop_assert_eq!(add(x, y), add(y, x));
                for &z in els.iter().step_by(2) {
                    prop_assert_eq!(add(add(x, y), z), add(x, add(y, z)));
                    let m = |u, v| b.mul(u, v).unwrap();
                    prop_assert_eq!(m(z, add(x, y)), add(m(z, x), m(z, y)));
                }
            }
        }
    }

    #[test]
    fn distributive_elements_of_fields_are_everything(b in field()) {
        prop_assume!(b.order().unwrap() <= 64);
        prop_assert_eq!(b.distributive_elements(None, &cfg()).unwrap(), b.elements().unwrap());
    }

    #[test]
    fn compose_with_inverse_is_a_nearfield_automorphism(b in finite_base(), k in any::<usize>()) {
        let autos = enumerate_mult_autos(&b).unwrap();
        let f = pick(&autos, k);
        let id = f.compose(&f.inverse(&b).unwrap(), &b).unwrap();
        prop_assert!(id.is_identity(&b));
        prop_assert!(b.is_nearfield_automorphism(&id, &cfg()).unwrap());
    }

    #[test]
    fn compose_applies_right_to_left(b in finite_base(), i in any::<usize>(), j in any::<usize>()) {
        let autos = enumerate_mult_autos(&b).unwrap();
        let (f, g) = (pick(&autos, i), pick(&autos, j));
        let fg = f.compose(&g, &b).unwrap();
        for x in b.elements().unwrap() {
            prop_assert_eq!(fg.apply(&b, x).unwrap(), f.apply(&b, g.apply(&b, x).unwrap()).unwrap());
        }
    }

    #[test]
    fn nearfield_automorphisms_keep_the_addition(b in finite_base(), i in any::<usize>(), j in any::<usize>()) {
        let cfg = cfg();
        let autos = enumerate_mult_autos(&b).unwrap();
        let nf: Vec<&MultAuto> = autos.iter().filter(|f| b.is_nearfield_automorphism(f, &cfg).unwrap()).collect();
        let f = nf[i % nf.len()];
        let a = pick(&autos, j);
        let fa = f.compose(&a, &b).unwrap();
        for x in b.elements().unwrap() {
            for y in b.elements().unwrap() {
                prop_assert_eq!(b.induced_add(&a, x, y).unwrap(), b.induced_add(&fa, x, y).unwrap());
            }
        }
    }

    #[test]
    fn inner_is_trivial_on_fields(b in field(), g in 1u32..64) {
        let q = b.order().unwrap();
        prop_assume!(q > 1);
        let inner = MultAuto::Inner(Scalar::Fin(1 + g % (q - 1)));
        for x in b.elements().unwrap() {
            prop_assert_eq!(inner.apply(&b, x).unwrap(), x);
        }
    }

    #[test]
    fn closed_form_matches_bruteforce_on_fields(spec in small_spec(field())) {
        let cfg = cfg();
        let brute = quasi_kernel_bruteforce(&spec, &cfg).unwrap();
        let closed = quasi_kernel_closed(&spec, &cfg).unwrap().materialize(&spec, &cfg).unwrap();
        prop_assert_eq!(&closed, &brute);
        prop_assert_eq!(&quasi_kernel_refined(&spec, &cfg).unwrap(), &brute);
    }

    #[test]
    fn refined_form_matches_bruteforce(spec in small_spec(finite_base())) {
        let cfg = cfg();
        prop_assert_eq!(quasi_kernel_refined(&spec, &cfg).unwrap(), quasi_kernel_bruteforce(&spec, &cfg).unwrap());
    }

    #[test]
    fn ddot_is_coarser_than_tilde(spec in small_spec(finite_base())) {
        let cfg = cfg();
        let t = tilde_classes(&spec, &cfg).unwrap();
        let d = ddot_classes(&spec, &cfg).unwrap();
        prop_assert!(d.is_coarser_or_equal(&t));
    }

    #[test]
    fn compatibility_classes_are_ddot_classes(spec in small_spec(finite_base())) {
        let cfg = cfg();
        prop_assert_eq!(compatibility_classes_bruteforce(&spec, &cfg).unwrap(), ddot_classes(&spec, &cfg).unwrap());
    }

    #[test]
    fn plus_u_does_not_depend_on_the_solving_index(spec in small_spec(finite_base()), k in any::<usize>()) {
        let cfg = cfg();
        let qk = quasi_kernel_bruteforce(&spec, &cfg).unwrap();
        let vs: Vec<SparseVector> = qk.vectors().into_iter().filter(|v| !v.is_zero()).collect();
        let u = &vs[k % vs.len()];
        let b = spec.base();
        for a in b.elements().unwrap() {
            for c in b.elements().unwrap() {
                let g = plus_u(&spec, u, a, c).unwrap();
                for (l, &x) in u.entries() {
                    let i = spec.index_of(l).unwrap();
                    let lhs = spec.add_at(i, spec.act_at(i, a, x).unwrap(), spec.act_at(i, c, x).unwrap()).unwrap();
                    prop_assert_eq!(spec.solve_at(i, lhs, x).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn injections_keep_plus_u(a in small_spec(field()), k in any::<usize>(), e in any::<usize>()) {
        let cfg = cfg();
        let b = a.base().clone();
        let autos = enumerate_mult_autos(&b).unwrap();
        let other = SpaceSpec::indexed(b.clone(), vec![pick(&autos, e)], vec![MultAuto::identity(&b)]).unwrap();
        let c = coproduct(&[a.clone(), other]).unwrap();
        let qk = quasi_kernel_bruteforce(&a, &cfg).unwrap();
        let vs: Vec<SparseVector> = qk.vectors().into_iter().filter(|v| !v.is_zero()).collect();
        let u = &vs[k % vs.len()];
        let iu = c.inject(0, u).unwrap();
        for x in b.elements().unwrap() {
            for y in b.elements().unwrap() {
                prop_assert_eq!(plus_u(&a, u, x, y).unwrap(), plus_u(&c.spec, &iu, x, y).unwrap());
            }
        }
    }

    #[test]
    fn minus_one_gives_the_additive_inverse(spec in small_spec(finite_base()), code in any::<u64>()) {
        let b = spec.base();
        let q = b.order().unwrap() as u64;
        let v = SparseVector::from_pairs(
            spec.labels().iter().enumerate().map(|(i, l)| (l.clone(), Scalar::Fin((code / q.pow(i as u32) % q) as u32))),
        );
        let w = spec.scalar_mul(b.minus_one(), &v).unwrap();
        prop_assert!(spec.vec_add(&v, &w).unwrap().is_zero());
    }

    #[test]
    fn canonical_forms_are_isomorphic(spec in small_spec(finite_base())) {
        let cfg = cfg();
        for (_, m) in [to_theta_id(&spec).unwrap(), to_id_theta(&spec).unwrap()] {
            let r = verify_iso(&m, 0, &cfg).unwrap();
            prop_assert!(r.pass, "{:?}", r.violations);
            prop_assert_eq!(&r.details["exhaustive"], &serde_json::Value::Bool(true));
        }
    }

    #[test]
    fn constructed_spaces_are_multiplicative(spec in small_spec(finite_base())) {
        let cfg = cfg();
        let m = is_multiplicative(&spec, &cfg).unwrap();
        prop_assert!(m.multiplicative);
        let b = spec.base();
        for c in &m.certificates {
            for x in b.elements().unwrap() {
                for y in b.elements().unwrap() {
                    prop_assert_eq!(plus_u(&spec, &c.vector, x, y).unwrap(), b.induced_add(&c.auto, x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn regrouped_products_are_near_vector_spaces(
        b in prop::sample::select(vec![(3u64, 1u32), (5, 1), (2, 2), (2, 3)]),
        ks in prop::collection::vec(any::<usize>(), 3),
    ) {
        let cfg = cfg();
        let base = BaseStructure::galois(b.0, b.1).unwrap();
        prop_assert!(product_hypotheses(&base, &cfg).unwrap().pass);
        let autos = enumerate_mult_autos(&base).unwrap();
        let specs: Vec<SpaceSpec> = ks
            .iter()
            .map(|&k| SpaceSpec::indexed(base.clone(), vec![pick(&autos, k)], vec![pick(&autos, k / 7)]).unwrap())
            .collect();
        let (spec, _) = product_regroup(&specs, &cfg).unwrap();
        let r = nvs_axiom_check(&spec, &cfg).unwrap();
        prop_assert!(r.pass, "{:?}", r.violations);
    }

    #[test]
    fn eps_extends_the_real_power(a in prop_oneof![0.1f64..5.0, -5.0f64..-0.1]) {
        let r = restriction_agrees(a, &Config { samples: 100, ..cfg() }).unwrap();
        prop_assert!(r.pass, "{:?}", r.violations);
    }

    #[test]
    fn minimal_polynomial_vanishes(re in prop_oneof![0.2f64..4.0, -4.0f64..-0.2], im in -3.0f64..3.0, conj in any::<bool>()) {
        prop_assert!(minimal_poly_residual(Complex64::new(re, im), conj).unwrap() <= 1e-9);
    }

    #[test]
    fn distinct_real_exponents_give_distinct_additions(a in 0.2f64..4.0, b in 0.2f64..4.0) {
        prop_assume!((a - b).abs() > 1e-3);
        let rb = BaseStructure::real();
        let (fa, fb) = (MultAuto::RealPower(a), MultAuto::RealPower(b));
        let grid = grid::real_grid();
        let differs = grid.iter().any(|&x| grid.iter().any(|&y| {
            let (x, y) = (Scalar::Real(x), Scalar::Real(y));
            !rb.approx_eq(rb.induced_add(&fa, x, y).unwrap(), rb.induced_add(&fb, x, y).unwrap())
        }));
        prop_assert!(differs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn decomposition_round_trips(a in prop_oneof![0.2f64..4.0, -4.0f64..-0.2], seed in any::<u64>()) {
        let mut rng = grid::rng(seed);
        for _ in 0..1000 {
            let z = grid::sample_complex(&mut rng);
            let (x, y) = decompose_over_real(z, a).unwrap();
            let back = reconstruct_from_real(x, y, a).unwrap();
            prop_assert!(grid::approx_eq_complex(back, z, 1e-9), "{z} -> ({x}, {y}) -> {back}");
        }
    }
}
