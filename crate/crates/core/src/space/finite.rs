//! Dense tables for spaces over finite bases. A vector is encoded as
//! `sum_i c_i q^i`, with `i` the position of its label.

use std::collections::BTreeMap;

use super::{SpaceSpec, SparseVector};
use crate::base::{FiniteTables, Scalar};
use crate::error::{Error, Result};
use crate::Config;

#[derive(Debug, Clone)]
pub struct FiniteSpace {
    pub q: u32,
    pub d: usize,
    pub t: FiniteTables,
    labels: Vec<String>,
    add: Vec<Vec<u32>>,
    act: Vec<Vec<u32>>,
    solve: Vec<Vec<u32>>,
}

/// Failing `(alpha, beta)` pair for a non-member, as component indices and codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseWitness {
    pub alpha: u32,
    pub beta: u32,
    pub anchor: usize,
    pub gamma: u32,
    pub conflict: usize,
    pub conflict_gamma: u32,
}

impl FiniteSpace {
    pub fn new(spec: &SpaceSpec, cfg: &Config) -> Result<Self> {
        let base = spec.base();
        let fb = base.require_finite()?;
        let q = fb.order();
        let d = spec.dim();
        let work = (q as u128).pow(2) * d.max(1) as u128;
        if work > cfg.bounds.work as u128 {
            return Err(Error::BoundExceeded {
                what: "component tables",
                size: work,
                bound: cfg.bounds.work,
            });
        }
        let t = fb.tables();
        let qq = (q * q) as usize;
        let mut add = Vec::with_capacity(d);
        let mut act = Vec::with_capacity(d);
        let mut solve = Vec::with_capacity(d);
        for i in 0..d {
            let s = spec.sigma()[i].table(base)?;
            let r = spec.rho()[i].table(base)?;
            add.push(s.addition_table(&t));
            let mut ac = Vec::with_capacity(qq);
            let mut so = Vec::with_capacity(qq);
            for a in 0..q {
                for x in 0..q {
                    ac.push(t.mul(r.apply(a), x));
                    // solve[y q + x]: gamma with rho(gamma) x = y
                    so.push(if x == 0 { 0 } else { r.unapply(t.mul(a, t.inv(x))) });
                }
            }
            act.push(ac);
            solve.push(so);
        }
        Ok(FiniteSpace {
            q,
            d,
            t,
            labels: spec.labels().to_vec(),
            add,
            act,
            solve,
        })
    }

    /// `q^d`, refusing spaces above the membership bound.
    pub fn size_within(&self, cfg: &Config) -> Result<u64> {
        let size = (self.q as u128).pow(self.d as u32);
        if size > cfg.bounds.membership as u128 {
            return Err(Error::BoundExceeded {
                what: "space enumeration",
                size,
                bound: cfg.bounds.membership,
            });
        }
        Ok(size as u64)
    }

    #[inline]
    pub fn add_at(&self, i: usize, x: u32, y: u32) -> u32 {
        self.add[i][(x * self.q + y) as usize]
    }

    #[inline]
    pub fn act_at(&self, i: usize, a: u32, x: u32) -> u32 {
        self.act[i][(a * self.q + x) as usize]
    }

    #[inline]
    pub fn solve_at(&self, i: usize, y: u32, x: u32) -> u32 {
        self.solve[i][(y * self.q + x) as usize]
    }

    pub fn addition_table(&self, i: usize) -> &[u32] {
        &self.add[i]
    }

    pub fn decode_into(&self, mut code: u64, out: &mut [u32]) {
        for c in out.iter_mut() {
            *c = (code % self.q as u64) as u32;
            code /= self.q as u64;
        }
    }

    pub fn decode(&self, code: u64) -> Vec<u32> {
        let mut v = vec![0; self.d];
        self.decode_into(code, &mut v);
        v
    }

    pub fn encode(&self, v: &[u32]) -> u64 {
        v.iter().rev().fold(0u64, |acc, &c| acc * self.q as u64 + c as u64)
    }

    pub fn add(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        (0..self.d).map(|i| self.add_at(i, u[i], v[i])).collect()
    }

    pub fn act(&self, a: u32, v: &[u32]) -> Vec<u32> {
        (0..self.d).map(|i| self.act_at(i, a, v[i])).collect()
    }

    pub fn to_sparse(&self, v: &[u32]) -> SparseVector {
        let map: BTreeMap<String, Scalar> = self
            .labels
            .iter()
            .zip(v)
            .map(|(l, &c)| (l.clone(), Scalar::Fin(c)))
            .collect();
        SparseVector::from_map(map)
    }

    pub fn from_sparse(&self, v: &SparseVector) -> Result<Vec<u32>> {
        let mut out = vec![0; self.d];
        for (l, x) in v.entries() {
            let i = self
                .labels
                .binary_search(l)
                .map_err(|_| Error::InvalidArgument(format!("label {l:?} is not in the index set")))?;
            out[i] = x
                .code()
                .filter(|&c| c < self.q)
                .ok_or_else(|| Error::InvalidArgument(format!("{x} is not an element of the base")))?;
        }
        Ok(out)
    }

    /// First `(alpha, beta)` in code order for which no `gamma` satisfies
    /// `alpha u + beta u = gamma u`; `None` when `u` is in the quasi-kernel.
    pub fn first_failure(&self, u: &[u32]) -> Option<DenseWitness> {
        let s = u.iter().position(|&c| c != 0)?;
        let rest: Vec<usize> = (s + 1..self.d).filter(|&i| u[i] != 0).collect();
        if rest.is_empty() {
            return None;
        }
        for a in 0..self.q {
            for b in 0..self.q {
                let lhs = self.add_at(s, self.act_at(s, a, u[s]), self.act_at(s, b, u[s]));
                let g = self.solve_at(s, lhs, u[s]);
                for &i in &rest {
                    let lhs_i = self.add_at(i, self.act_at(i, a, u[i]), self.act_at(i, b, u[i]));
                    if self.act_at(i, g, u[i]) != lhs_i {
                        return Some(DenseWitness {
                            alpha: a,
                            beta: b,
                            anchor: s,
                            gamma: g,
                            conflict: i,
                            conflict_gamma: self.solve_at(i, lhs_i, u[i]),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_member(&self, u: &[u32]) -> bool {
        self.first_failure(u).is_none()
    }

    /// `alpha +_u beta` for all pairs, row-major; `None` unless `u` is a
    /// nonzero quasi-kernel element.
    pub fn plus_table(&self, u: &[u32]) -> Option<Vec<u32>> {
        let s = u.iter().position(|&c| c != 0)?;
        let mut out = Vec::with_capacity((self.q * self.q) as usize);
        for a in 0..self.q {
            for b in 0..self.q {
                let lhs = self.add_at(s, self.act_at(s, a, u[s]), self.act_at(s, b, u[s]));
                let g = self.solve_at(s, lhs, u[s]);
                for (i, &ui) in u.iter().enumerate().skip(s + 1) {
                    if ui != 0 {
                        let lhs_i = self.add_at(i, self.act_at(i, a, ui), self.act_at(i, b, ui));
                        if self.act_at(i, g, ui) != lhs_i {
                            return None;
                        }
                    }
                }
                out.push(g);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseStructure;

    #[test]
    fn encode_decode_round_trip() {
        let spec = SpaceSpec::theta_powers(BaseStructure::galois(5, 1).unwrap(), &[1, 3, 1]).unwrap();
        let fs = FiniteSpace::new(&spec, &Config::default()).unwrap();
        for code in 0..125 {
            assert_eq!(fs.encode(&fs.decode(code)), code);
        }
        assert_eq!(fs.decode(1), vec![1, 0, 0]);
    }

    #[test]
    fn dense_ops_match_sparse() {
        let spec = SpaceSpec::powers(BaseStructure::dickson9(), &[1, 1], &[1, 1]).unwrap();
        let fs = FiniteSpace::new(&spec, &Config::default()).unwrap();
        for code in (0..81).step_by(7) {
            let u = fs.decode(code);
            let v = fs.decode(80 - code);
            let su = fs.to_sparse(&u);
            let sv = fs.to_sparse(&v);
            assert_eq!(fs.to_sparse(&fs.add(&u, &v)), spec.vec_add(&su, &sv).unwrap());
            for a in 0..9 {
                assert_eq!(
                    fs.to_sparse(&fs.act(a, &u)),
                    spec.scalar_mul(Scalar::Fin(a), &su).unwrap()
                );
            }
            assert_eq!(fs.from_sparse(&su).unwrap(), u);
        }
    }

    #[test]
    fn bound_is_enforced() {
        let spec = SpaceSpec::theta_powers(BaseStructure::galois(7, 1).unwrap(), &[1; 8]).unwrap();
        let fs = FiniteSpace::new(&spec, &Config::default()).unwrap();
        assert!(matches!(
            fs.size_within(&Config::default()),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
