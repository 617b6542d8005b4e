use serde::Serialize;

use super::SpaceSpec;
use crate::auto::{same_addition, MultAuto};
use crate::base::Scalar;
use crate::error::Result;
use crate::Config;

/// Blocks of labels, each sorted, ordered by their smallest label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub blocks: Vec<Vec<String>>,
}

impl Partition {
    /// Groups `labels` (already sorted) by the union-find roots in `parent`.
    fn from_parents(labels: &[String], parent: &mut [usize]) -> Partition {
        let mut blocks: Vec<Vec<String>> = Vec::new();
        let mut slot = vec![usize::MAX; labels.len()];
        for (i, label) in labels.iter().enumerate() {
            let r = find(parent, i);
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[r]].push(label.clone());
        }
        Partition { blocks }
    }

    pub fn from_relation(labels: &[String], related: impl Fn(usize, usize) -> Result<bool>) -> Result<Partition> {
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if find(&mut parent, i) != find(&mut parent, j) && related(i, j)? {
                    union(&mut parent, i, j);
                }
            }
        }
        Ok(Partition::from_parents(labels, &mut parent))
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn representatives(&self) -> Vec<&str> {
        self.blocks.iter().map(|b| b[0].as_str()).collect()
    }

    pub fn block_of(&self, label: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.iter().any(|l| l == label))
    }

    /// Every block of `finer` lies inside one block of `self`.
    pub fn is_coarser_or_equal(&self, finer: &Partition) -> bool {
        finer.blocks.iter().all(|b| {
            let k = self.block_of(&b[0]);
            k.is_some() && b.iter().all(|l| self.block_of(l) == k)
        })
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], i: usize, j: usize) {
    let (a, b) = (find(parent, i), find(parent, j));
    if a != b {
        parent[a.max(b)] = a.min(b);
    }
}

fn thetas(spec: &SpaceSpec) -> Result<Vec<MultAuto>> {
    (0..spec.dim()).map(|i| spec.theta(i)).collect()
}

/// `i ~ j` iff `theta_i` and `theta_j` induce the same addition.
pub fn tilde_classes(spec: &SpaceSpec, cfg: &Config) -> Result<Partition> {
    let th = thetas(spec)?;
    Partition::from_relation(spec.labels(), |i, j| same_addition(&th[i], &th[j], spec.base(), cfg))
}

/// `i ~~ j` iff `theta_i o phi_g` and `theta_j` induce the same addition for
/// some nonzero `g`. Equal to [`tilde_classes`] over commutative bases.
pub fn ddot_classes(spec: &SpaceSpec, cfg: &Config) -> Result<Partition> {
    let base = spec.base();
    if base.is_commutative() {
        return tilde_classes(spec, cfg);
    }
    let th = thetas(spec)?;
    let q = base.require_finite()?.order();
    let units: Vec<Scalar> = (1..q).map(Scalar::Fin).collect();
    let twisted: Vec<Vec<MultAuto>> = th
        .iter()
        .map(|t| {
            units
                .iter()
                .map(|&g| t.compose(&MultAuto::Inner(g), base))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Partition::from_relation(spec.labels(), |i, j| {
        for t in &twisted[i] {
            if same_addition(t, &th[j], base, cfg)? {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auto::enumerate_mult_autos;
    use crate::base::BaseStructure;

    fn blocks(p: &Partition) -> Vec<Vec<&str>> {
        p.blocks
            .iter()
            .map(|b| b.iter().map(String::as_str).collect())
            .collect()
    }

    #[test]
    fn tilde_examples() {
        let cfg = Config::default();
        let s = SpaceSpec::theta_powers(BaseStructure::galois(5, 1).unwrap(), &[1, 3]).unwrap();
        assert_eq!(blocks(&tilde_classes(&s, &cfg).unwrap()), vec![vec!["1"], vec!["2"]]);
        let s = SpaceSpec::theta_powers(BaseStructure::galois(2, 2).unwrap(), &[1, 2]).unwrap();
        assert_eq!(blocks(&tilde_classes(&s, &cfg).unwrap()), vec![vec!["1", "2"]]);
        let s = SpaceSpec::theta_powers(BaseStructure::galois(7, 1).unwrap(), &[5]).unwrap();
        assert_eq!(tilde_classes(&s, &cfg).unwrap().len(), 1);
    }

    #[test]
    fn ddot_examples() {
        let cfg = Config::default();
        let s = SpaceSpec::theta_powers(BaseStructure::galois(7, 1).unwrap(), &[1, 5, 5]).unwrap();
        let d = ddot_classes(&s, &cfg).unwrap();
        assert_eq!(blocks(&d), vec![vec!["1"], vec!["2", "3"]]);
        assert_eq!(d, tilde_classes(&s, &cfg).unwrap());
    }

    #[test]
    fn dickson_inner_twist_merges_classes() {
        let cfg = Config::default();
        let d9 = BaseStructure::dickson9();
        // theta_2 differs from theta_1 = Id by an inner automorphism that is
        // not additive
        let g = (1..9)
            .map(Scalar::Fin)
            .find(|&g| !d9.is_nearfield_automorphism(&MultAuto::Inner(g), &cfg).unwrap())
            .unwrap();
        let phi = MultAuto::Inner(g).compose(&MultAuto::FinitePower(1), &d9).unwrap();
        let s = SpaceSpec::indexed(
            d9.clone(),
            vec![MultAuto::FinitePower(1), phi],
            vec![MultAuto::FinitePower(1); 2],
        )
        .unwrap();
        assert_eq!(tilde_classes(&s, &cfg).unwrap().len(), 2);
        assert_eq!(ddot_classes(&s, &cfg).unwrap().len(), 1);
    }

    #[test]
    fn ddot_is_coarser_than_tilde_on_dickson() {
        let cfg = Config::default();
        let d9 = BaseStructure::dickson9();
        let autos = enumerate_mult_autos(&d9).unwrap();
        for a in autos.iter().step_by(3) {
            for b in autos.iter().step_by(5) {
                let s = SpaceSpec::indexed(
                    d9.clone(),
                    vec![MultAuto::FinitePower(1), a.clone(), b.clone()],
                    vec![MultAuto::FinitePower(1); 3],
                )
                .unwrap();
                let t = tilde_classes(&s, &cfg).unwrap();
                let d = ddot_classes(&s, &cfg).unwrap();
                assert!(d.is_coarser_or_equal(&t));
            }
        }
    }
}
