use serde_json::json;

use super::finite::FiniteSpace;
use super::{quasi_kernel_bruteforce, SpaceSpec};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::Config;

/// Exhaustive near-vector-space axioms over a finite base: abelian
/// componentwise addition, an action by additive endomorphisms with
/// `(ab)v = a(bv)`, `1v = v`, `0v = 0`, `(-1)v = -v`, freeness, and
/// generation of the whole space by the quasi-kernel under addition.
pub fn nvs_axiom_check(spec: &SpaceSpec, cfg: &Config) -> Result<Report> {
    let fs = FiniteSpace::new(spec, cfg)?;
    let size = fs.size_within(cfg)?;
    let (q, d) = (fs.q, fs.d);
    let work = (q as u128).pow(3) * d as u128;
    if work > cfg.bounds.work as u128 {
        return Err(Error::BoundExceeded {
            what: "axiom check",
            size: work,
            bound: cfg.bounds.work,
        });
    }
    let mut r = Report::new("nvs_axioms");
    let t = &fs.t;
    let minus_one = t.neg(1);
    for i in 0..d {
        let l = &spec.labels()[i];
        for x in 0..q {
            r.expect(fs.add_at(i, x, 0) == x, || format!("{l}: 0 is not neutral for {x}"));
            r.expect((0..q).any(|y| fs.add_at(i, x, y) == 0), || {
                format!("{l}: {x} has no negative")
            });
            r.expect(fs.act_at(i, 1, x) == x, || format!("{l}: 1 . {x} != {x}"));
            r.expect(fs.act_at(i, 0, x) == 0, || format!("{l}: 0 . {x} != 0"));
            r.expect(fs.add_at(i, x, fs.act_at(i, minus_one, x)) == 0, || {
                format!("{l}: (-1) . {x} is not the negative of {x}")
            });
            if x != 0 {
                let mut seen = vec![false; q as usize];
                let free = (0..q).all(|a| !std::mem::replace(&mut seen[fs.act_at(i, a, x) as usize], true));
                r.expect(free, || format!("{l}: action on {x} is not free"));
            }
            for y in 0..q {
                let s = fs.add_at(i, x, y);
                r.expect(s == fs.add_at(i, y, x), || {
                    format!("{l}: addition not commutative at ({x}, {y})")
                });
                for z in 0..q {
                    if fs.add_at(i, s, z) != fs.add_at(i, x, fs.add_at(i, y, z)) {
                        r.violation(format!("{l}: addition not associative at ({x}, {y}, {z})"));
                    }
                    // y, z as scalars
                    if fs.act_at(i, t.mul(y, z), x) != fs.act_at(i, y, fs.act_at(i, z, x)) {
                        r.violation(format!("{l}: ({y} {z}) . {x} != {y} . ({z} . {x})"));
                    }
                    if fs.act_at(i, z, s) != fs.add_at(i, fs.act_at(i, z, x), fs.act_at(i, z, y)) {
                        r.violation(format!("{l}: {z} . ({x} + {y}) is not distributed"));
                    }
                }
                r.checked += 3 * q as u64;
            }
        }
    }

    let qk = quasi_kernel_bruteforce(spec, cfg)?;
    let gens: Vec<Vec<u32>> = qk.nonzero().map(|c| fs.decode(c)).collect();
    let work = size as u128 * gens.len() as u128;
    if work > cfg.bounds.work as u128 {
        return Err(Error::BoundExceeded {
            what: "quasi-kernel closure",
            size: work,
            bound: cfg.bounds.work,
        });
    }
    // breadth-first closure of {0} under adding quasi-kernel elements
    let mut depth = vec![u32::MAX; size as usize];
    let mut parent = vec![(0u64, 0usize); size as usize];
    depth[0] = 0;
    let mut frontier = vec![0u64];
    let mut max_depth = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &c in &frontier {
            let v = fs.decode(c);
            for (k, g) in gens.iter().enumerate() {
                let w = fs.encode(&fs.add(&v, g));
                if depth[w as usize] == u32::MAX {
                    depth[w as usize] = depth[c as usize] + 1;
                    parent[w as usize] = (c, k);
                    max_depth = max_depth.max(depth[w as usize]);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let reached = depth.iter().filter(|&&x| x != u32::MAX).count() as u64;
    r.expect(reached == size, || {
        format!("quasi-kernel generates {reached} of {size} vectors")
    });
    r.detail("space_size", size);
    r.detail("quasi_kernel_size", qk.len());
    r.detail("generation_depth", max_depth);
    let ones = fs.encode(&vec![1; d]);
    if d > 0 && depth[ones as usize] != u32::MAX {
        let mut terms = Vec::new();
        let mut c = ones;
        while c != 0 {
            let (p, k) = parent[c as usize];
            terms.push(spec.vector_to_json(&fs.to_sparse(&gens[k])));
            c = p;
        }
        terms.reverse();
        r.detail("ones_decomposition", json!(terms));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseStructure;

    #[test]
    fn axiom_examples() {
        let cfg = Config::default();
        let s = SpaceSpec::theta_powers(BaseStructure::galois(5, 1).unwrap(), &[1, 3]).unwrap();
        let r = nvs_axiom_check(&s, &cfg).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert_eq!(r.details["generation_depth"], 2);
        assert_eq!(r.details["ones_decomposition"].as_array().unwrap().len(), 2);
        let one = SpaceSpec::theta_powers(BaseStructure::galois(7, 1).unwrap(), &[5]).unwrap();
        let r = nvs_axiom_check(&one, &cfg).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["quasi_kernel_size"], 7);
        let d9 = SpaceSpec::theta_powers(BaseStructure::dickson9(), &[1, 1]).unwrap();
        assert!(nvs_axiom_check(&d9, &cfg).unwrap().pass);
    }
}
