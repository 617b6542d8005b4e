#![allow(dead_code)]

use nvs_core::auto::enumerate_mult_autos;
use nvs_core::space::SpaceSpec;
use nvs_core::{BaseStructure, MultAuto};

/// Every `(sigma, rho)` built from the multiplicative automorphisms of `base`
/// (unit exponents on a field), dimensions `1..=max_dim`.
pub fn sweep(base: &BaseStructure, max_dim: usize) -> Vec<SpaceSpec> {
    let autos = enumerate_mult_autos(base).unwrap();
    let mut out = Vec::new();
    for d in 1..=max_dim {
        let tuples = tuples(&autos, d);
        for s in &tuples {
            for r in &tuples {
                out.push(SpaceSpec::indexed(base.clone(), s.clone(), r.clone()).unwrap());
            }
        }
    }
    out
}

pub fn tuples(autos: &[MultAuto], d: usize) -> Vec<Vec<MultAuto>> {
    let mut acc = vec![Vec::new()];
    for _ in 0..d {
        acc = acc
            .into_iter()
            .flat_map(|t| {
                autos.iter().map(move |a| {
                    let mut t = t.clone();
                    t.push(a.clone());
                    t
                })
            })
            .collect();
    }
    acc
}

pub fn swept_fields() -> Vec<BaseStructure> {
    [(2, 2), (5, 1), (7, 1)]
        .into_iter()
        .map(|(p, n)| BaseStructure::galois(p, n).unwrap())
        .collect()
}

pub fn exponents(spec: &SpaceSpec) -> (Vec<u64>, Vec<u64>) {
    let b = spec.base();
    let f = |v: &[MultAuto]| v.iter().map(|a| a.as_finite_power(b).unwrap()).collect();
    (f(spec.sigma()), f(spec.rho()))
}
