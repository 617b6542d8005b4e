//! Compatibility of quasi-kernel vectors and the regular decomposition.

use super::finite::FiniteSpace;
use super::{ddot_classes, quasi_kernel_bruteforce, Partition, SpaceSpec, SparseVector};
use crate::base::Scalar;
use crate::error::{Error, Result};
use crate::{exec, Config};

/// First `lambda` (in code order) with `u + lambda v` in the quasi-kernel.
/// Both vectors must be nonzero quasi-kernel elements.
pub fn compatible(spec: &SpaceSpec, u: &SparseVector, v: &SparseVector, cfg: &Config) -> Result<Option<Scalar>> {
    let fs = FiniteSpace::new(spec, cfg)?;
    let du = fs.from_sparse(u)?;
    let dv = fs.from_sparse(v)?;
    for (name, x) in [("u", &du), ("v", &dv)] {
        if x.iter().all(|&c| c == 0) || !fs.is_member(x) {
            return Err(Error::InvalidArgument(format!(
                "{name} is not a nonzero quasi-kernel element"
            )));
        }
    }
    Ok(compatible_dense(&fs, &du, &dv).map(Scalar::Fin))
}

fn compatible_dense(fs: &FiniteSpace, u: &[u32], v: &[u32]) -> Option<u32> {
    (1..fs.q).find(|&l| fs.is_member(&fs.add(u, &fs.act(l, v))))
}

/// Whether every two nonzero quasi-kernel vectors are compatible.
pub fn is_regular_bruteforce(spec: &SpaceSpec, cfg: &Config) -> Result<bool> {
    let fs = FiniteSpace::new(spec, cfg)?;
    let q = quasi_kernel_bruteforce(spec, cfg)?;
    let star: Vec<Vec<u32>> = q.nonzero().map(|c| fs.decode(c)).collect();
    let work = (star.len() as u128).pow(2) * fs.q as u128;
    if work > cfg.bounds.work as u128 {
        return Err(Error::BoundExceeded {
            what: "pairwise compatibility",
            size: work,
            bound: cfg.bounds.work,
        });
    }
    let bad = exec::find_first(cfg.exec, star.len() as u64, |i| {
        let u = &star[i as usize];
        star.iter()
            .any(|v| !(1..fs.q).any(|l| q.contains_code(fs.encode(&fs.add(u, &fs.act(l, v))))))
            .then_some(())
    });
    Ok(bad.is_none())
}

/// Classes of the canonical basis under brute-force compatibility.
pub fn compatibility_classes_bruteforce(spec: &SpaceSpec, cfg: &Config) -> Result<Partition> {
    let fs = FiniteSpace::new(spec, cfg)?;
    let basis: Vec<Vec<u32>> = spec
        .canonical_basis()
        .iter()
        .map(|e| fs.from_sparse(e))
        .collect::<Result<_>>()?;
    Partition::from_relation(spec.labels(), |i, j| {
        Ok(compatible_dense(&fs, &basis[i], &basis[j]).is_some())
    })
}

/// One block of the regular decomposition; the embedding keeps labels.
#[derive(Debug, Clone)]
pub struct RegularBlock {
    pub labels: Vec<String>,
    pub spec: SpaceSpec,
}

impl RegularBlock {
    pub fn embed(&self, v: &SparseVector) -> Result<SparseVector> {
        if let Some(l) = v.support().find(|l| !self.labels.iter().any(|m| m == l)) {
            return Err(Error::InvalidArgument(format!("label {l:?} is outside the block")));
        }
        Ok(v.clone())
    }
}

/// One sub-space per `~~` class.
pub fn regular_decomposition(spec: &SpaceSpec, cfg: &Config) -> Result<Vec<RegularBlock>> {
    ddot_classes(spec, cfg)?
        .blocks
        .into_iter()
        .map(|labels| {
            Ok(RegularBlock {
                spec: spec.restrict(&labels)?,
                labels,
            })
        })
        .collect()
}

/// Restrictions of `v` to the regular blocks.
pub fn regular_components(spec: &SpaceSpec, v: &SparseVector, cfg: &Config) -> Result<Vec<SparseVector>> {
    for l in v.support() {
        spec.index_of(l)?;
    }
    Ok(ddot_classes(spec, cfg)?
        .blocks
        .iter()
        .map(|b| v.restricted(b))
        .collect())
}
