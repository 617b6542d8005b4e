//! Quasi-kernel: closed form, addition-signature form, exhaustive oracle,
//! membership with witnesses, and the induced additions `+_u`.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::finite::{DenseWitness, FiniteSpace};
use super::{tilde_classes, Partition, SpaceSpec, SparseVector};
use crate::base::{BaseStructure, Scalar};
use crate::error::{Error, Result};
use crate::{exec, grid, Config};

/// Quasi-kernel as `~` classes plus, per label, the admissible coordinates
/// `{k : sigma_i(k) in F_d}` (`None` over the reals and complexes, where
/// every coordinate is admissible).
#[derive(Debug, Clone)]
pub struct QKDescription {
    pub classes: Partition,
    pub allowed: Option<BTreeMap<String, Vec<Scalar>>>,
}

/// Sorted vector codes of a quasi-kernel over a finite base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QkSet {
    pub q: u32,
    pub labels: Vec<String>,
    pub codes: Vec<u64>,
}

impl QkSet {
    fn new(fs: &FiniteSpace, labels: &[String], mut codes: Vec<u64>) -> Self {
        codes.sort_unstable();
        codes.dedup();
        QkSet {
            q: fs.q,
            labels: labels.to_vec(),
            codes,
        }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains_code(&self, code: u64) -> bool {
        self.codes.binary_search(&code).is_ok()
    }

    pub fn dense(&self, code: u64) -> Vec<u32> {
        let mut c = code;
        (0..self.labels.len())
            .map(|_| {
                let x = (c % self.q as u64) as u32;
                c /= self.q as u64;
                x
            })
            .collect()
    }

    pub fn vectors(&self) -> Vec<SparseVector> {
        self.codes
            .iter()
            .map(|&c| {
                SparseVector::from_pairs(
                    self.labels
                        .iter()
                        .zip(self.dense(c))
                        .map(|(l, x)| (l.as_str(), Scalar::Fin(x))),
                )
            })
            .collect()
    }

    /// Codes of the nonzero elements.
    pub fn nonzero(&self) -> impl Iterator<Item = u64> + '_ {
        self.codes.iter().copied().filter(|&c| c != 0)
    }

    /// Elements in one set but not the other, in code order.
    pub fn symmetric_difference(&self, other: &QkSet) -> (Vec<u64>, Vec<u64>) {
        let only_self = self
            .codes
            .iter()
            .copied()
            .filter(|&c| !other.contains_code(c))
            .collect();
        let only_other = other
            .codes
            .iter()
            .copied()
            .filter(|&c| !self.contains_code(c))
            .collect();
        (only_self, only_other)
    }
}

pub fn quasi_kernel_closed(spec: &SpaceSpec, cfg: &Config) -> Result<QKDescription> {
    let base = spec.base();
    let classes = tilde_classes(spec, cfg)?;
    let allowed = match base.finite() {
        None => None,
        Some(_) => {
            let fd = base.distributive_elements(None, cfg)?;
            let mut map = BTreeMap::new();
            for (i, l) in spec.labels().iter().enumerate() {
                let t = spec.sigma()[i].table(base)?;
                let ks: Vec<Scalar> = fd
                    .iter()
                    .filter_map(Scalar::code)
                    .map(|c| Scalar::Fin(t.unapply(c)))
                    .collect();
                let mut ks = ks;
                ks.sort_by_key(|k| k.code());
                map.insert(l.clone(), ks);
            }
            Some(map)
        }
    };
    Ok(QKDescription { classes, allowed })
}

impl QKDescription {
    /// All `lambda ._rho k` with `k` supported in one class and admissible
    /// coordinates, plus zero.
    pub fn materialize(&self, spec: &SpaceSpec, cfg: &Config) -> Result<QkSet> {
        let allowed = self
            .allowed
            .as_ref()
            .ok_or_else(|| Error::NotEnumerable(spec.base().name()))?;
        let fs = FiniteSpace::new(spec, cfg)?;
        fs.size_within(cfg)?;
        let mut codes = vec![0u64];
        for block in &self.classes.blocks {
            let idx: Vec<usize> = block.iter().map(|l| spec.index_of(l)).collect::<Result<_>>()?;
            let sets: Vec<Vec<u32>> = block
                .iter()
                .map(|l| allowed[l].iter().filter_map(Scalar::code).collect())
                .collect();
            let count: u128 = sets.iter().map(|s| s.len() as u128).product::<u128>() * fs.q as u128;
            if count > cfg.bounds.work as u128 {
                return Err(Error::BoundExceeded {
                    what: "closed-form materialization",
                    size: count,
                    bound: cfg.bounds.work,
                });
            }
            let mut k = vec![0u32; fs.d];
            let mut pos = vec![0usize; idx.len()];
            loop {
                for (j, &i) in idx.iter().enumerate() {
                    k[i] = sets[j][pos[j]];
                }
                for lambda in 1..fs.q {
                    codes.push(fs.encode(&fs.act(lambda, &k)));
                }
                // odometer over the admissible coordinates
                let mut j = 0;
                while j < pos.len() {
                    pos[j] += 1;
                    if pos[j] < sets[j].len() {
                        break;
                    }
                    pos[j] = 0;
                    j += 1;
                }
                if j == pos.len() {
                    break;
                }
            }
        }
        Ok(QkSet::new(&fs, spec.labels(), codes))
    }

    pub fn to_json(&self, base: &BaseStructure) -> Value {
        let allowed = self.allowed.as_ref().map(|m| {
            m.iter()
                .map(|(l, ks)| {
                    (
                        l.clone(),
                        ks.iter().map(|&k| base.scalar_to_json(k)).collect::<Vec<_>>(),
                    )
                })
                .collect::<BTreeMap<_, _>>()
        });
        json!({ "classes": self.classes.blocks, "allowed": allowed })
    }
}

/// Quasi-kernel from addition signatures: a nonzero `u` belongs iff the
/// additions induced by `phi_{sigma_i(u_i)} o theta_i` agree over its
/// support. Coordinates are grouped by signature and each group spans a
/// product set.
pub fn quasi_kernel_refined(spec: &SpaceSpec, cfg: &Config) -> Result<QkSet> {
    let base = spec.base();
    let fs = FiniteSpace::new(spec, cfg)?;
    fs.size_within(cfg)?;
    let (q, d, t) = (fs.q, fs.d, &fs.t);
    let work = (q as u128).pow(3) * d as u128;
    if work > cfg.bounds.work as u128 {
        return Err(Error::BoundExceeded {
            what: "addition signatures",
            size: work,
            bound: cfg.bounds.work,
        });
    }
    let mut ids: HashMap<Vec<u32>, usize> = HashMap::new();
    // members[sig][i] = nonzero coordinates x at label i with that signature
    let mut members: Vec<Vec<Vec<u32>>> = Vec::new();
    for i in 0..d {
        let sigma = spec.sigma()[i].table(base)?;
        let theta = spec.theta(i)?.table(base)?;
        for x in 1..q {
            let c = sigma.apply(x);
            let ci = t.inv(c);
            let f: Vec<u32> = (0..q).map(|a| t.mul(t.mul(ci, theta.apply(a)), c)).collect();
            let mut f_inv = vec![0u32; q as usize];
            for (a, &y) in f.iter().enumerate() {
                f_inv[y as usize] = a as u32;
            }
            let table: Vec<u32> = (0..q * q)
                .map(|ab| f_inv[t.add(f[(ab / q) as usize], f[(ab % q) as usize]) as usize])
                .collect();
            let next = ids.len();
            let id = *ids.entry(table).or_insert(next);
            if id == members.len() {
                members.push(vec![Vec::new(); d]);
            }
            members[id][i].push(x);
        }
    }
    let mut codes = vec![0u64];
    for group in &members {
        let sets: Vec<Vec<u32>> = group
            .iter()
            .map(|xs| std::iter::once(0).chain(xs.iter().copied()).collect())
            .collect();
        let mut pos = vec![0usize; d];
        let mut v = vec![0u32; d];
        loop {
            for i in 0..d {
                v[i] = sets[i][pos[i]];
            }
            codes.push(fs.encode(&v));
            let mut j = 0;
            while j < d {
                pos[j] += 1;
                if pos[j] < sets[j].len() {
                    break;
                }
                pos[j] = 0;
                j += 1;
            }
            if j == d {
                break;
            }
        }
    }
    Ok(QkSet::new(&fs, spec.labels(), codes))
}

/// Exact quasi-kernel by testing every vector against every `(alpha, beta)`.
pub fn quasi_kernel_bruteforce(spec: &SpaceSpec, cfg: &Config) -> Result<QkSet> {
    let fs = FiniteSpace::new(spec, cfg)?;
    let size = fs.size_within(cfg)?;
    let codes = exec::filter_map_range(cfg.exec, size, |code| {
        let u = fs.decode(code);
        fs.is_member(&u).then_some(code)
    });
    Ok(QkSet::new(&fs, spec.labels(), codes))
}

/// A pair `(alpha, beta)` for which `alpha u + beta u` is no multiple of `u`:
/// the anchor coordinate demands `gamma`, the conflicting one `conflict_gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub anchor: String,
    pub gamma: Scalar,
    pub conflict: String,
    pub conflict_gamma: Scalar,
}

impl Witness {
    pub fn to_json(&self, base: &BaseStructure) -> Value {
        json!({
            "alpha": base.scalar_to_json(self.alpha),
            "beta": base.scalar_to_json(self.beta),
            "anchor": self.anchor,
            "gamma": base.scalar_to_json(self.gamma),
            "conflict": self.conflict,
            "conflict_gamma": base.scalar_to_json(self.conflict_gamma),
        })
    }

    fn from_dense(w: DenseWitness, labels: &[String]) -> Self {
        Witness {
            alpha: Scalar::Fin(w.alpha),
            beta: Scalar::Fin(w.beta),
            anchor: labels[w.anchor].clone(),
            gamma: Scalar::Fin(w.gamma),
            conflict: labels[w.conflict].clone(),
            conflict_gamma: Scalar::Fin(w.conflict_gamma),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub member: bool,
    /// All `(alpha, beta)` were checked (finite bases).
    pub exhaustive: bool,
    pub pairs_checked: u64,
    pub witness: Option<Witness>,
}

/// Quasi-kernel membership. Finite bases: every `(alpha, beta)`. Reals and
/// complexes: the 49 grid pairs followed by seeded random pairs; a negative
/// answer carries an exact witness, a positive one is sample-supported.
pub fn in_quasi_kernel(spec: &SpaceSpec, v: &SparseVector, cfg: &Config) -> Result<Membership> {
    if spec.base().finite().is_some() {
        let fs = FiniteSpace::new(spec, cfg)?;
        let u = fs.from_sparse(v)?;
        let w = fs.first_failure(&u);
        return Ok(Membership {
            member: w.is_none(),
            exhaustive: true,
            pairs_checked: (fs.q as u64).pow(2),
            witness: w.map(|w| Witness::from_dense(w, spec.labels())),
        });
    }
    let support: Vec<(usize, Scalar)> = v
        .entries()
        .iter()
        .map(|(l, &x)| Ok((spec.index_of(l)?, spec.base().check(x)?)))
        .collect::<Result<_>>()?;
    let pairs = sample_pairs(spec.base(), cfg);
    let mut checked = 0;
    if support.len() > 1 {
        for &(a, b) in &pairs {
            checked += 1;
            if let Some(w) = check_pair(spec, &support, a, b)? {
                return Ok(Membership {
                    member: false,
                    exhaustive: false,
                    pairs_checked: checked,
                    witness: Some(w),
                });
            }
        }
    }
    Ok(Membership {
        member: true,
        exhaustive: false,
        pairs_checked: checked,
        witness: None,
    })
}

fn sample_pairs(base: &BaseStructure, cfg: &Config) -> Vec<(Scalar, Scalar)> {
    let values: Vec<Scalar> = match base {
        BaseStructure::Complex { .. } => grid::complex_pair_values().into_iter().map(Scalar::Complex).collect(),
        _ => grid::REAL_PAIR_VALUES.into_iter().map(Scalar::Real).collect(),
    };
    let mut pairs: Vec<(Scalar, Scalar)> = values
        .iter()
        .flat_map(|&a| values.iter().map(move |&b| (a, b)))
        .collect();
    let mut rng = grid::rng(cfg.seed);
    for _ in 0..cfg.samples / 10 {
        let mut draw = || match base {
            BaseStructure::Complex { .. } => Scalar::Complex(grid::sample_complex(&mut rng)),
            _ => Scalar::Real(grid::sample_real(&mut rng)),
        };
        let a = draw();
        let b = draw();
        pairs.push((a, b));
    }
    pairs
}

fn check_pair(spec: &SpaceSpec, support: &[(usize, Scalar)], a: Scalar, b: Scalar) -> Result<Option<Witness>> {
    let base = spec.base();
    let lhs = |i: usize, x: Scalar| spec.add_at(i, spec.act_at(i, a, x)?, spec.act_at(i, b, x)?);
    let (s, us) = support[0];
    let gamma = spec.solve_at(s, lhs(s, us)?, us)?;
    for &(i, x) in &support[1..] {
        let l = lhs(i, x)?;
        if !base.approx_eq(spec.act_at(i, gamma, x)?, l) {
            return Ok(Some(Witness {
                alpha: a,
                beta: b,
                anchor: spec.labels()[s].clone(),
                gamma,
                conflict: spec.labels()[i].clone(),
                conflict_gamma: spec.solve_at(i, l, x)?,
            }));
        }
    }
    Ok(None)
}

/// `a +_u b`: the `gamma` with `a u + b u = gamma u`, solved on the smallest
/// support label and verified on the others.
pub fn plus_u(spec: &SpaceSpec, u: &SparseVector, a: Scalar, b: Scalar) -> Result<Scalar> {
    let support: Vec<(usize, Scalar)> = u
        .entries()
        .iter()
        .map(|(l, &x)| Ok((spec.index_of(l)?, spec.base().check(x)?)))
        .collect::<Result<_>>()?;
    if support.is_empty() {
        return Err(Error::InvalidAnchor("the zero vector induces no addition".into()));
    }
    let base = spec.base();
    base.check(a)?;
    base.check(b)?;
    if let Some(w) = check_pair(spec, &support, a, b)? {
        return Err(Error::InvalidAnchor(format!(
            "not in the quasi-kernel: at ({}, {}) label {} needs {} but label {} needs {}",
            w.alpha, w.beta, w.anchor, w.gamma, w.conflict, w.conflict_gamma
        )));
    }
    let (s, us) = support[0];
    let l = spec.add_at(s, spec.act_at(s, a, us)?, spec.act_at(s, b, us)?)?;
    spec.solve_at(s, l, us)
}

/// Full `+_u` table over a finite base, row-major by element code.
pub fn plus_u_table(spec: &SpaceSpec, u: &SparseVector, cfg: &Config) -> Result<Vec<u32>> {
    let fs = FiniteSpace::new(spec, cfg)?;
    let dense = fs.from_sparse(u)?;
    if u.is_zero() {
        return Err(Error::InvalidAnchor("the zero vector induces no addition".into()));
    }
    fs.plus_table(&dense)
        .ok_or_else(|| Error::InvalidAnchor("vector is not in the quasi-kernel".into()))
}
