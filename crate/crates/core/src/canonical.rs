//! Canonical forms `F^{theta,Id}` and `F^{Id,theta}`, isomorphism checks,
//! multiplicativity certificates and the product hypotheses.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use serde_json::json;

use crate::auto::{enumerate_mult_autos, MultAuto};
use crate::base::{BaseStructure, Scalar};
use crate::error::{Error, Result};
use crate::galois::unit_classification_bounded;
use crate::report::Report;
use crate::space::{coproduct, ddot_classes, quasi_kernel_bruteforce, FiniteSpace, Partition, SpaceSpec, SparseVector};
use crate::{exec, grid, Config};

/// Coordinate-wise map: source coordinate `i` goes to target coordinate
/// `perm[i]` through `coord[i]`.
#[derive(Debug, Clone)]
pub struct IsoMap {
    pub source: SpaceSpec,
    pub target: SpaceSpec,
    pub perm: Vec<usize>,
    pub coord: Vec<MultAuto>,
}

impl IsoMap {
    pub fn new(source: SpaceSpec, target: SpaceSpec, perm: Vec<usize>, coord: Vec<MultAuto>) -> Result<Self> {
        source.base().ensure_same(target.base())?;
        if perm.len() != source.dim() || coord.len() != source.dim() {
            return Err(Error::InvalidArgument(
                "map must give one image per source coordinate".into(),
            ));
        }
        let mut seen = HashSet::new();
        if perm.iter().any(|&j| j >= target.dim() || !seen.insert(j)) {
            return Err(Error::InvalidArgument(
                "coordinate images must be distinct target indices".into(),
            ));
        }
        for c in &coord {
            c.validate(source.base())?;
        }
        Ok(IsoMap {
            source,
            target,
            perm,
            coord,
        })
    }

    pub fn identity(spec: &SpaceSpec) -> Self {
        let id = MultAuto::identity(spec.base());
        IsoMap {
            source: spec.clone(),
            target: spec.clone(),
            perm: (0..spec.dim()).collect(),
            coord: vec![id; spec.dim()],
        }
    }

    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        let base = self.source.base();
        let mut out = Vec::new();
        for (l, &x) in v.entries() {
            let i = self.source.index_of(l)?;
            out.push((
                self.target.labels()[self.perm[i]].clone(),
                self.coord[i].apply(base, x)?,
            ));
        }
        Ok(SparseVector::from_pairs(out))
    }

    fn apply_dense(&self, v: &[u32], target_dim: usize, tables: &[crate::auto::AutoTable]) -> Vec<u32> {
        let mut w = vec![0; target_dim];
        for (i, &x) in v.iter().enumerate() {
            w[self.perm[i]] = tables[i].apply(x);
        }
        w
    }
}

/// `F^{sigma,rho} -> F^{theta,Id}` by `v_i -> rho_i^-1(v_i)`.
pub fn to_theta_id(spec: &SpaceSpec) -> Result<(SpaceSpec, IsoMap)> {
    let base = spec.base();
    let id = MultAuto::identity(base);
    let mut comps = Vec::new();
    let mut coord = Vec::new();
    for (i, l) in spec.labels().iter().enumerate() {
        comps.push((l.clone(), spec.theta(i)?, id.clone()));
        coord.push(spec.rho()[i].inverse(base)?);
    }
    let target = SpaceSpec::new(base.clone(), comps)?;
    let map = IsoMap::new(spec.clone(), target.clone(), (0..spec.dim()).collect(), coord)?;
    Ok((target, map))
}

/// `F^{sigma,rho} -> F^{Id,theta}` by `v_i -> sigma_i(v_i)`.
pub fn to_id_theta(spec: &SpaceSpec) -> Result<(SpaceSpec, IsoMap)> {
    let base = spec.base();
    let id = MultAuto::identity(base);
    let mut comps = Vec::new();
    for (i, l) in spec.labels().iter().enumerate() {
        comps.push((l.clone(), id.clone(), spec.theta(i)?));
    }
    let target = SpaceSpec::new(base.clone(), comps)?;
    let map = IsoMap::new(
        spec.clone(),
        target.clone(),
        (0..spec.dim()).collect(),
        spec.sigma().to_vec(),
    )?;
    Ok((target, map))
}

/// Additivity and equivariance of `m`, plus bijectivity on finite spaces.
/// Exhaustive when the finite space fits the bounds, otherwise `trials`
/// seeded samples.
pub fn verify_iso(m: &IsoMap, trials: usize, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("verify_iso");
    let base = m.source.base();
    if let Some(fb) = base.finite() {
        let q = fb.order() as u128;
        let size = q.pow(m.source.dim() as u32);
        let work = size * size + size * q;
        if size <= cfg.bounds.membership as u128 && work <= cfg.bounds.work as u128 {
            exhaustive_iso(m, &mut r, cfg)?;
            r.detail("exhaustive", true);
            return Ok(r);
        }
    }
    r.detail("exhaustive", false);
    r.detail("seed", cfg.seed);
    let mut rng = grid::rng(cfg.seed);
    let src = &m.source;
    let tgt = &m.target;
    for _ in 0..trials {
        let u = random_vector(src, &mut rng);
        let v = random_vector(src, &mut rng);
        let a = random_scalar(base, &mut rng);
        let lhs = m.apply(&src.vec_add(&u, &v)?)?;
        let rhs = tgt.vec_add(&m.apply(&u)?, &m.apply(&v)?)?;
        r.expect(tgt.approx_eq(&lhs, &rhs), || format!("not additive at {u:?}, {v:?}"));
        let lhs = m.apply(&src.scalar_mul(a, &u)?)?;
        let rhs = tgt.scalar_mul(a, &m.apply(&u)?)?;
        r.expect(tgt.approx_eq(&lhs, &rhs), || format!("not equivariant at {a}, {u:?}"));
    }
    Ok(r)
}

fn exhaustive_iso(m: &IsoMap, r: &mut Report, cfg: &Config) -> Result<()> {
    let base = m.source.base();
    let fs = FiniteSpace::new(&m.source, cfg)?;
    let ft = FiniteSpace::new(&m.target, cfg)?;
    let tables = m.coord.iter().map(|c| c.table(base)).collect::<Result<Vec<_>>>()?;
    let size = fs.size_within(cfg)?;
    let image: Vec<Vec<u32>> = (0..size).map(|c| m.apply_dense(&fs.decode(c), ft.d, &tables)).collect();
    let image_codes: Vec<u64> = image.iter().map(|w| ft.encode(w)).collect();
    let distinct: HashSet<u64> = image_codes.iter().copied().collect();
    let target_size = (ft.q as u128).pow(ft.d as u32);
    r.expect(distinct.len() as u64 == size, || "map is not injective".into());
    r.expect(size as u128 == target_size, || {
        format!("{size} source vectors but {target_size} target vectors")
    });
    let failures = exec::filter_map_range(cfg.exec, size, |cu| {
        let u = fs.decode(cu);
        for cv in 0..size {
            let v = fs.decode(cv);
            let lhs = image_codes[fs.encode(&fs.add(&u, &v)) as usize];
            let rhs = ft.encode(&ft.add(&image[cu as usize], &image[cv as usize]));
            if lhs != rhs {
                return Some(format!("not additive at {u:?} + {v:?}"));
            }
        }
        for a in 0..fs.q {
            let lhs = image_codes[fs.encode(&fs.act(a, &u)) as usize];
            let rhs = ft.encode(&ft.act(a, &image[cu as usize]));
            if lhs != rhs {
                return Some(format!("not equivariant at {a} . {u:?}"));
            }
        }
        None
    });
    r.checked += size * (size + fs.q as u64);
    for f in failures {
        r.violation(f);
    }
    Ok(())
}

fn random_scalar<R: Rng>(base: &BaseStructure, rng: &mut R) -> Scalar {
    match base {
        BaseStructure::Real { .. } => Scalar::Real(grid::sample_real(rng)),
        BaseStructure::Complex { .. } => Scalar::Complex(grid::sample_complex(rng)),
        _ => Scalar::Fin(rng.gen_range(0..base.order().unwrap_or(1))),
    }
}

fn random_vector<R: Rng>(spec: &SpaceSpec, rng: &mut R) -> SparseVector {
    let mut entries = Vec::new();
    for l in spec.labels() {
        if rng.gen_bool(0.75) {
            entries.push((l.clone(), random_scalar(spec.base(), rng)));
        }
    }
    SparseVector::from_pairs(entries)
}

/// The images of the canonical basis span the target and admit no
/// nontrivial vanishing combination (exhaustive over coefficient tuples).
pub fn basis_transport_check(m: &IsoMap, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("basis_transport");
    let ft = FiniteSpace::new(&m.target, cfg)?;
    let target_size = ft.size_within(cfg)?;
    let fs = FiniteSpace::new(&m.source, cfg)?;
    let combos = fs.size_within(cfg)?;
    if combos as u128 * fs.d.max(1) as u128 > cfg.bounds.work as u128 {
        return Err(Error::BoundExceeded {
            what: "basis combinations",
            size: combos as u128 * fs.d as u128,
            bound: cfg.bounds.work,
        });
    }
    let images: Vec<Vec<u32>> = m
        .source
        .canonical_basis()
        .iter()
        .map(|e| ft.from_sparse(&m.apply(e)?))
        .collect::<Result<_>>()?;
    let mut reached = HashSet::new();
    let mut vanishing = 0u64;
    for c in 0..combos {
        let coeffs = fs.decode(c);
        let mut sum = vec![0; ft.d];
        for (a, b) in coeffs.iter().zip(&images) {
            sum = ft.add(&sum, &ft.act(*a, b));
        }
        if c != 0 && sum.iter().all(|&x| x == 0) {
            vanishing += 1;
        }
        reached.insert(ft.encode(&sum));
    }
    r.checked += combos;
    r.expect(reached.len() as u64 == target_size, || {
        format!("basis images span {} of {target_size} vectors", reached.len())
    });
    r.expect(vanishing == 0, || format!("{vanishing} nontrivial combinations vanish"));
    r.detail("span_size", reached.len());
    r.detail("target_size", target_size);
    Ok(r)
}

/// A quasi-kernel vector and an automorphism inducing the same addition.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub vector: SparseVector,
    pub auto: MultAuto,
}

#[derive(Debug, Clone)]
pub struct Multiplicativity {
    pub multiplicative: bool,
    pub certificates: Vec<Certificate>,
    /// Quasi-kernel vectors whose addition matched no enumerated automorphism.
    pub unmatched: Vec<SparseVector>,
}

impl Multiplicativity {
    pub fn to_json(&self, spec: &SpaceSpec) -> serde_json::Value {
        json!({
            "multiplicative": self.multiplicative,
            "certificates": self.certificates.iter().map(|c| json!({
                "vector": spec.vector_to_json(&c.vector),
                "auto": c.auto.to_json(spec.base()),
            })).collect::<Vec<_>>(),
            "unmatched": self.unmatched.iter().map(|v| spec.vector_to_json(v)).collect::<Vec<_>>(),
        })
    }
}

/// For each nonzero quasi-kernel vector `u`, the first enumerated
/// automorphism `s` with `+_u = +_s` (tables compared exhaustively).
pub fn is_multiplicative(spec: &SpaceSpec, cfg: &Config) -> Result<Multiplicativity> {
    let base = spec.base();
    let fs = FiniteSpace::new(spec, cfg)?;
    let autos = enumerate_mult_autos(base)?;
    let mut by_table: HashMap<Vec<u32>, usize> = HashMap::new();
    for (k, a) in autos.iter().enumerate() {
        by_table.entry(a.table(base)?.addition_table(&fs.t)).or_insert(k);
    }
    let qk = quasi_kernel_bruteforce(spec, cfg)?;
    let star: Vec<u64> = qk.nonzero().collect();
    let found = exec::map_slice(cfg.exec, &star, |&c| {
        let u = fs.decode(c);
        fs.plus_table(&u).and_then(|t| by_table.get(&t).copied())
    });
    let mut certificates = Vec::new();
    let mut unmatched = Vec::new();
    for (&c, k) in star.iter().zip(found) {
        let v = fs.to_sparse(&fs.decode(c));
        match k {
            Some(k) => certificates.push(Certificate {
                vector: v,
                auto: autos[k].clone(),
            }),
            None => unmatched.push(v),
        }
    }
    Ok(Multiplicativity {
        multiplicative: unmatched.is_empty(),
        certificates,
        unmatched,
    })
}

/// Finitely many induced additions and finite dimension over `F_d`.
pub fn product_hypotheses(base: &BaseStructure, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("product_hypotheses");
    r.detail("base", base.name());
    match base {
        BaseStructure::Galois(t) => {
            let q = t.order() as u64;
            let additions = if q >= 3 {
                unit_classification_bounded(t.p() as u64, t.n(), cfg.bounds.field_order)?.class_count()
            } else {
                1
            };
            let fd = if (q as u128).pow(3) <= cfg.bounds.work as u128 {
                base.distributive_elements(None, cfg)?.len() as u64
            } else {
                q
            };
            let deg = exact_log(fd, t.p() as u64)
                .ok_or_else(|| Error::InvalidArgument(format!("|F_d| = {fd} is not a power of {}", t.p())))?;
            r.expect(t.n() % deg == 0, || format!("degree {deg} does not divide {}", t.n()));
            r.detail("induced_additions", additions);
            r.detail("fd_size", fd);
            r.detail("dim_over_fd", t.n() / deg);
        }
        BaseStructure::Dickson9(_) => {
            let fb = base.require_finite()?;
            let tables = fb.tables();
            let autos = enumerate_mult_autos(base)?;
            let distinct: HashSet<Vec<u32>> = autos
                .iter()
                .map(|a| Ok(a.table(base)?.addition_table(&tables)))
                .collect::<Result<_>>()?;
            let fd = base.distributive_elements(None, cfg)?.len() as u64;
            let dim = exact_log(fb.order() as u64, fd);
            r.expect(dim.is_some(), || format!("|F| is not a power of |F_d| = {fd}"));
            r.detail("induced_additions", distinct.len());
            r.detail("fd_size", fd);
            r.detail("dim_over_fd", dim.unwrap_or(0));
        }
        BaseStructure::Real { .. } | BaseStructure::Complex { .. } => {
            let one = MultAuto::identity(base);
            let two = match base {
                BaseStructure::Real { .. } => MultAuto::RealPower(2.0),
                _ => MultAuto::complex_eps(num_complex::Complex64::new(2.0, 0.0), false)?,
            };
            let x = base.one();
            let a = base.induced_add(&one, x, x)?;
            let b = base.induced_add(&two, x, x)?;
            r.detail("induced_additions", "infinite");
            r.detail(
                "witness",
                json!({ "exponents": [1, 2], "one_plus_one": [base.scalar_to_json(a), base.scalar_to_json(b)] }),
            );
            r.fail(format!(
                "{} has infinitely many induced additions (1 + 1 is {a} under exponent 1 and {b} under exponent 2), so the product is not a near-vector space",
                base.name()
            ));
        }
    }
    Ok(r)
}

fn exact_log(x: u64, b: u64) -> Option<u32> {
    if b < 2 {
        return None;
    }
    let mut k = 0;
    let mut y = 1u64;
    while y < x {
        y = y.checked_mul(b)?;
        k += 1;
    }
    (y == x).then_some(k)
}

/// The product of `specs` (same carrier as their coproduct) with its
/// coordinates grouped by `~~` class across all factors.
pub fn product_regroup(specs: &[SpaceSpec], cfg: &Config) -> Result<(SpaceSpec, Partition)> {
    let c = coproduct(specs)?;
    let classes = ddot_classes(&c.spec, cfg)?;
    Ok((c.spec, classes))
}
