//! The multiplicative near-vector space `F^{sigma,rho}`: componentwise
//! addition `+_{sigma_i}` and scalar action `alpha . v_i = rho_i(alpha) v_i`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::auto::MultAuto;
use crate::base::{BaseDescriptor, BaseStructure, Scalar};
use crate::error::{Error, Result};
use crate::Config;

mod axioms;
pub(crate) mod finite;
mod partition;
mod quasi;
mod regular;

pub use axioms::nvs_axiom_check;
pub use finite::FiniteSpace;
pub use partition::{ddot_classes, tilde_classes, Partition};
pub use quasi::{
    in_quasi_kernel, plus_u, plus_u_table, quasi_kernel_bruteforce, quasi_kernel_closed, quasi_kernel_refined,
    Membership, QKDescription, QkSet, Witness,
};
pub use regular::{
    compatibility_classes_bruteforce, compatible, is_regular_bruteforce, regular_components, regular_decomposition,
    RegularBlock,
};

/// Index labels, automorphisms and base of `F^{sigma,rho}`.
///
/// Labels are kept in lexicographic order; `sigma[i]` and `rho[i]` belong to
/// `labels[i]`.
#[derive(Debug, Clone)]
pub struct SpaceSpec {
    base: BaseStructure,
    labels: Vec<String>,
    sigma: Vec<MultAuto>,
    rho: Vec<MultAuto>,
    sigma_inv: Vec<MultAuto>,
    rho_inv: Vec<MultAuto>,
}

impl SpaceSpec {
    pub fn new(
        base: BaseStructure,
        components: impl IntoIterator<Item = (String, MultAuto, MultAuto)>,
    ) -> Result<Self> {
        let mut comps: Vec<_> = components.into_iter().collect();
        comps.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = comps.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidSpace(format!("duplicate label {:?}", w[0].0)));
        }
        let mut spec = SpaceSpec {
            base,
            labels: Vec::with_capacity(comps.len()),
            sigma: Vec::with_capacity(comps.len()),
            rho: Vec::with_capacity(comps.len()),
            sigma_inv: Vec::with_capacity(comps.len()),
            rho_inv: Vec::with_capacity(comps.len()),
        };
        for (label, s, r) in comps {
            s.validate(&spec.base)?;
            r.validate(&spec.base)?;
            spec.sigma_inv.push(s.inverse(&spec.base)?);
            spec.rho_inv.push(r.inverse(&spec.base)?);
            spec.labels.push(label);
            spec.sigma.push(s);
            spec.rho.push(r);
        }
        Ok(spec)
    }

    /// Labels `"1"`, `"2"`, ... (zero-padded past nine) with the given
    /// automorphisms.
    pub fn indexed(base: BaseStructure, sigma: Vec<MultAuto>, rho: Vec<MultAuto>) -> Result<Self> {
        if sigma.len() != rho.len() {
            return Err(Error::InvalidSpace(format!(
                "{} sigma entries but {} rho entries",
                sigma.len(),
                rho.len()
            )));
        }
        let width = sigma.len().to_string().len();
        let comps = sigma
            .into_iter()
            .zip(rho)
            .enumerate()
            .map(|(i, (s, r))| (format!("{:0width$}", i + 1), s, r));
        SpaceSpec::new(base, comps)
    }

    /// Finite power maps `sigma_i = x^{s_i}`, `rho_i = x^{r_i}`.
    pub fn powers(base: BaseStructure, sigma: &[u64], rho: &[u64]) -> Result<Self> {
        let f = |e: &[u64]| e.iter().map(|&a| MultAuto::FinitePower(a)).collect();
        SpaceSpec::indexed(base, f(sigma), f(rho))
    }

    /// `sigma_i = x^{e_i}` with `rho = Id`.
    pub fn theta_powers(base: BaseStructure, exponents: &[u64]) -> Result<Self> {
        SpaceSpec::powers(base, exponents, &vec![1; exponents.len()])
    }

    /// Real power maps with `rho = Id`.
    pub fn real_powers(exponents: &[f64]) -> Result<Self> {
        let sigma = exponents
            .iter()
            .map(|&a| MultAuto::real_power(a))
            .collect::<Result<Vec<_>>>()?;
        let rho = vec![MultAuto::RealPower(1.0); exponents.len()];
        SpaceSpec::indexed(BaseStructure::real(), sigma, rho)
    }

    pub fn base(&self) -> &BaseStructure {
        &self.base
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sigma(&self) -> &[MultAuto] {
        &self.sigma
    }

    pub fn rho(&self) -> &[MultAuto] {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::InvalidArgument(format!("label {label:?} is not in the index set")))
    }

    /// `theta_i = sigma_i o rho_i`.
    pub fn theta(&self, i: usize) -> Result<MultAuto> {
        self.sigma[i].compose(&self.rho[i], &self.base)
    }

    /// The sub-space on the given labels.
    pub fn restrict(&self, labels: &[String]) -> Result<SpaceSpec> {
        let comps = labels
            .iter()
            .map(|l| {
                let i = self.index_of(l)?;
                Ok((l.clone(), self.sigma[i].clone(), self.rho[i].clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        SpaceSpec::new(self.base.clone(), comps)
    }

    pub fn add_at(&self, i: usize, x: Scalar, y: Scalar) -> Result<Scalar> {
        let s = &self.sigma[i];
        let sum = self.base.add(s.apply(&self.base, x)?, s.apply(&self.base, y)?)?;
        self.sigma_inv[i].apply(&self.base, sum)
    }

    pub fn act_at(&self, i: usize, alpha: Scalar, x: Scalar) -> Result<Scalar> {
        self.base.mul(self.rho[i].apply(&self.base, alpha)?, x)
    }

    /// The `gamma` with `rho_i(gamma) x = y`, for nonzero `x`.
    pub fn solve_at(&self, i: usize, y: Scalar, x: Scalar) -> Result<Scalar> {
        let r = self.base.mul(y, self.base.inv(x)?)?;
        self.rho_inv[i].apply(&self.base, r)
    }

    fn check_labels(&self, v: &SparseVector) -> Result<()> {
        for (l, &x) in &v.entries {
            self.index_of(l)?;
            self.base.check(x)?;
        }
        Ok(())
    }

    pub fn vec_add(&self, u: &SparseVector, v: &SparseVector) -> Result<SparseVector> {
        self.check_labels(u)?;
        self.check_labels(v)?;
        let zero = self.base.zero();
        let mut out = BTreeMap::new();
        for l in u.entries.keys().chain(v.entries.keys()) {
            if out.contains_key(l) {
                continue;
            }
            let i = self.index_of(l)?;
            out.insert(
                l.clone(),
                self.add_at(i, u.get(l).unwrap_or(zero), v.get(l).unwrap_or(zero))?,
            );
        }
        Ok(SparseVector::from_map(out))
    }

    pub fn scalar_mul(&self, alpha: Scalar, v: &SparseVector) -> Result<SparseVector> {
        self.check_labels(v)?;
        self.base.check(alpha)?;
        let mut out = BTreeMap::new();
        for (l, &x) in &v.entries {
            out.insert(l.clone(), self.act_at(self.index_of(l)?, alpha, x)?);
        }
        Ok(SparseVector::from_map(out))
    }

    pub fn neg(&self, v: &SparseVector) -> Result<SparseVector> {
        self.scalar_mul(self.base.minus_one(), v)
    }

    pub fn canonical_basis(&self) -> Vec<SparseVector> {
        self.labels
            .iter()
            .map(|l| SparseVector::single(l, self.base.one()))
            .collect()
    }

    pub fn approx_eq(&self, u: &SparseVector, v: &SparseVector) -> bool {
        let zero = self.base.zero();
        u.entries
            .keys()
            .chain(v.entries.keys())
            .all(|l| self.base.approx_eq(u.get(l).unwrap_or(zero), v.get(l).unwrap_or(zero)))
    }

    pub fn to_json(&self) -> Value {
        let mut sigma = Map::new();
        let mut rho = Map::new();
        for (i, l) in self.labels.iter().enumerate() {
            sigma.insert(l.clone(), self.sigma[i].to_json(&self.base));
            rho.insert(l.clone(), self.rho[i].to_json(&self.base));
        }
        json!({
            "base": self.base.descriptor(),
            "index": self.labels,
            "sigma": sigma,
            "rho": rho,
        })
    }

    /// Parses `{"base", "index", "sigma", "rho"}`.
    pub fn from_json(v: &Value, cfg: &Config) -> Result<SpaceSpec> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("space spec must be a JSON object".into()))?;
        let field = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
        let desc: BaseDescriptor = serde_json::from_value(field("base")?.clone())?;
        let base = desc.build(cfg.bounds.field_order)?;
        let index: Vec<String> = serde_json::from_value(field("index")?.clone())?;
        let sigma = field("sigma")?
            .as_object()
            .ok_or_else(|| Error::Parse("sigma must map labels to automorphisms".into()))?;
        let rho = field("rho")?
            .as_object()
            .ok_or_else(|| Error::Parse("rho must map labels to automorphisms".into()))?;
        for map in [sigma, rho] {
            if let Some(extra) = map.keys().find(|k| !index.contains(k)) {
                return Err(Error::InvalidSpace(format!("label {extra:?} is not in the index")));
            }
        }
        let comps = index
            .iter()
            .map(|l| {
                let missing = |what: &str| Error::InvalidSpace(format!("{what} has no entry for {l:?}"));
                let s = sigma.get(l).ok_or_else(|| missing("sigma"))?;
                let r = rho.get(l).ok_or_else(|| missing("rho"))?;
                Ok((
                    l.clone(),
                    MultAuto::from_json(s, &base)?,
                    MultAuto::from_json(r, &base)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        SpaceSpec::new(base, comps)
    }

    pub fn vector_to_json(&self, v: &SparseVector) -> Value {
        let entries: Map<String, Value> = v
            .entries
            .iter()
            .map(|(l, &x)| (l.clone(), self.base.scalar_to_json(x)))
            .collect();
        json!({ "entries": entries })
    }

    pub fn vector_from_json(&self, v: &Value) -> Result<SparseVector> {
        let entries = v
            .get("entries")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("vector must be {\"entries\": {label: scalar}}".into()))?;
        let mut out = BTreeMap::new();
        for (l, x) in entries {
            self.index_of(l)?;
            out.insert(l.clone(), self.base.scalar_from_json(x)?);
        }
        Ok(SparseVector::from_map(out))
    }
}

/// Finitely supported vector; zero coordinates are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVector {
    entries: BTreeMap<String, Scalar>,
}

impl SparseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_map(mut entries: BTreeMap<String, Scalar>) -> Self {
        entries.retain(|_, x| !x.is_zero());
        SparseVector { entries }
    }

    pub fn from_pairs<L: Into<String>>(pairs: impl IntoIterator<Item = (L, Scalar)>) -> Self {
        Self::from_map(pairs.into_iter().map(|(l, x)| (l.into(), x)).collect())
    }

    pub fn single(label: &str, x: Scalar) -> Self {
        Self::from_pairs([(label, x)])
    }

    pub fn get(&self, label: &str) -> Option<Scalar> {
        self.entries.get(label).copied()
    }

    pub fn entries(&self) -> &BTreeMap<String, Scalar> {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps only the given labels.
    pub fn restricted(&self, labels: &[String]) -> SparseVector {
        SparseVector {
            entries: self
                .entries
                .iter()
                .filter(|(l, _)| labels.contains(l))
                .map(|(l, &x)| (l.clone(), x))
                .collect(),
        }
    }
}

/// Disjoint union of spaces over one base, with label relocation.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub spec: SpaceSpec,
    /// `relabel[k]` maps factor `k`'s labels to labels of `spec`.
    pub relabel: Vec<BTreeMap<String, String>>,
}

impl Coproduct {
    /// The injection of factor `k`.
    pub fn inject(&self, k: usize, v: &SparseVector) -> Result<SparseVector> {
        let map = self
            .relabel
            .get(k)
            .ok_or_else(|| Error::InvalidArgument(format!("no factor {k}")))?;
        let mut out = BTreeMap::new();
        for (l, &x) in &v.entries {
            let t = map
                .get(l)
                .ok_or_else(|| Error::InvalidArgument(format!("label {l:?} not in factor {k}")))?;
            out.insert(t.clone(), x);
        }
        Ok(SparseVector::from_map(out))
    }
}

/// Labels become `"{k}:{label}"` when more than one factor is nonempty;
/// a single nonempty factor keeps its labels.
pub fn coproduct(specs: &[SpaceSpec]) -> Result<Coproduct> {
    let base = specs
        .first()
        .map(|s| s.base.clone())
        .ok_or_else(|| Error::InvalidArgument("coproduct of no spaces".into()))?;
    for s in specs {
        base.ensure_same(&s.base)?;
    }
    let prefix = specs.iter().filter(|s| s.dim() > 0).count() > 1;
    let width = specs.len().saturating_sub(1).to_string().len();
    let mut comps = Vec::new();
    let mut relabel = Vec::with_capacity(specs.len());
    for (k, s) in specs.iter().enumerate() {
        let mut map = BTreeMap::new();
        for (i, l) in s.labels.iter().enumerate() {
            let t = if prefix { format!("{k:0width$}:{l}") } else { l.clone() };
            map.insert(l.clone(), t.clone());
            comps.push((t, s.sigma[i].clone(), s.rho[i].clone()));
        }
        relabel.push(map);
    }
    Ok(Coproduct {
        spec: SpaceSpec::new(base, comps)?,
        relabel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, n: u32) -> BaseStructure {
        BaseStructure::galois(p, n).unwrap()
    }

    fn fin(pairs: &[(&str, u32)]) -> SparseVector {
        SparseVector::from_pairs(pairs.iter().map(|&(l, x)| (l, Scalar::Fin(x))))
    }

    #[test]
    fn vec_add_examples() {
        let s = SpaceSpec::theta_powers(gf(5, 1), &[1, 3]).unwrap();
        let v = fin(&[("1", 1), ("2", 1)]);
        assert_eq!(s.vec_add(&v, &v).unwrap(), fin(&[("1", 2), ("2", 3)]));
        assert_eq!(s.vec_add(&v, &SparseVector::zero()).unwrap(), v);
        let r = SpaceSpec::real_powers(&[2.0]).unwrap();
        let w = r
            .vec_add(
                &SparseVector::single("1", Scalar::Real(3.0)),
                &SparseVector::single("1", Scalar::Real(4.0)),
            )
            .unwrap();
        assert!((w.get("1").unwrap().real().unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_mul_examples() {
        let s = SpaceSpec::powers(gf(5, 1), &[1], &[3]).unwrap();
        let v = fin(&[("1", 1)]);
        assert_eq!(s.scalar_mul(Scalar::Fin(2), &v).unwrap(), fin(&[("1", 3)]));
        assert_eq!(s.scalar_mul(Scalar::Fin(1), &v).unwrap(), v);
        assert!(s.scalar_mul(Scalar::Fin(0), &v).unwrap().is_zero());
        let r = SpaceSpec::indexed(
            BaseStructure::real(),
            vec![MultAuto::RealPower(1.0)],
            vec![MultAuto::RealPower(2.0)],
        )
        .unwrap();
        let w = r
            .scalar_mul(Scalar::Real(3.0), &SparseVector::single("1", Scalar::Real(2.0)))
            .unwrap();
        assert_eq!(w.get("1"), Some(Scalar::Real(18.0)));
    }

    #[test]
    fn negation_is_additive_inverse() {
        let s = SpaceSpec::powers(gf(7, 1), &[5, 1], &[1, 5]).unwrap();
        let v = fin(&[("1", 3), ("2", 6)]);
        assert!(s.vec_add(&v, &s.neg(&v).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn canonical_basis_shapes() {
        let s = SpaceSpec::theta_powers(gf(7, 1), &[1, 1, 1]).unwrap();
        let b = s.canonical_basis();
        assert_eq!(b.len(), 3);
        assert_eq!(b[1], fin(&[("2", 1)]));
        let empty = SpaceSpec::theta_powers(gf(7, 1), &[]).unwrap();
        assert!(empty.canonical_basis().is_empty());
    }

    #[test]
    fn labels_are_sorted_and_unique() {
        let base = gf(5, 1);
        let id = MultAuto::FinitePower(1);
        let s = SpaceSpec::new(
            base.clone(),
            [
                ("b".to_string(), id.clone(), id.clone()),
                ("a".to_string(), id.clone(), id.clone()),
            ],
        )
        .unwrap();
        assert_eq!(s.labels(), ["a", "b"]);
        assert!(SpaceSpec::new(
            base,
            [
                ("a".to_string(), id.clone(), id.clone()),
                ("a".to_string(), id.clone(), id)
            ],
        )
        .is_err());
        let wide = SpaceSpec::theta_powers(gf(5, 1), &[1; 12]).unwrap();
        assert_eq!(wide.labels()[0], "01");
        assert_eq!(wide.labels()[11], "12");
    }

    #[test]
    fn unknown_label_is_rejected() {
        let s = SpaceSpec::theta_powers(gf(5, 1), &[1]).unwrap();
        assert!(s.vec_add(&fin(&[("9", 1)]), &SparseVector::zero()).is_err());
    }

    #[test]
    fn coproduct_examples() {
        let a = SpaceSpec::theta_powers(gf(5, 1), &[1]).unwrap();
        let b = SpaceSpec::theta_powers(gf(5, 1), &[3]).unwrap();
        let c = coproduct(&[a.clone(), b]).unwrap();
        assert_eq!(c.spec.labels(), ["0:1", "1:1"]);
        assert_eq!(c.spec.sigma()[1], MultAuto::FinitePower(3));
        assert_eq!(c.inject(1, &fin(&[("1", 2)])).unwrap(), fin(&[("1:1", 2)]));
        let empty = SpaceSpec::theta_powers(gf(5, 1), &[]).unwrap();
        let same = coproduct(&[a.clone(), empty]).unwrap();
        assert_eq!(same.spec.labels(), a.labels());
        assert!(coproduct(&[a, SpaceSpec::theta_powers(gf(7, 1), &[1]).unwrap()]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = SpaceSpec::powers(gf(3, 2), &[1, 3], &[5, 1]).unwrap();
        let back = SpaceSpec::from_json(&s.to_json(), &Config::default()).unwrap();
        assert_eq!(back.labels(), s.labels());
        assert_eq!(back.sigma(), s.sigma());
        assert_eq!(back.rho(), s.rho());
        let v = fin(&[("1", 4), ("2", 7)]);
        assert_eq!(s.vector_from_json(&s.vector_to_json(&v)).unwrap(), v);
        let bad = json!({"base": {"kind": "gf", "p": 5, "n": 1}, "index": ["1"], "sigma": {}, "rho": {}});
        assert!(SpaceSpec::from_json(&bad, &Config::default()).is_err());
    }
}
