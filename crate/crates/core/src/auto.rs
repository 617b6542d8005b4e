//! Multiplicative automorphisms: power maps, the complex `eps` family,
//! explicit permutation tables, inner automorphisms and compositions.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::base::{BaseStructure, FiniteBase, FiniteTables, Scalar};
use crate::error::{Error, Result};
use crate::galois::{gcd, mod_inverse, same_addition_exponents};
use crate::grid;
use crate::report::Report;
use crate::{exec, Config};

#[derive(Debug, Clone, PartialEq)]
pub enum MultAuto {
    /// `x -> x^alpha` on a finite base.
    FinitePower(u64),
    /// `x -> sign(x) |x|^alpha` on the reals.
    RealPower(f64),
    /// `r e^{it} -> r^alpha e^{+-it}` on the complexes.
    ComplexEps { alpha: Complex64, conj: bool },
    /// Explicit table on a finite base, indexed by element code.
    Perm(Arc<Vec<u32>>),
    /// `x -> g^-1 x g`.
    Inner(Scalar),
    /// Applied right to left.
    Comp(Vec<MultAuto>),
}

/// Forward and inverse tables of an automorphism of a finite base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoTable {
    fwd: Vec<u32>,
    inv: Vec<u32>,
}

impl AutoTable {
    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.fwd[x as usize]
    }

    #[inline]
    pub fn unapply(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }

    /// `a +_sigma b` for the automorphism this table represents.
    #[inline]
    pub fn induced_add(&self, t: &FiniteTables, a: u32, b: u32) -> u32 {
        self.unapply(t.add(self.apply(a), self.apply(b)))
    }

    pub fn forward(&self) -> &[u32] {
        &self.fwd
    }

    /// Full `+_sigma` table, row-major.
    pub fn addition_table(&self, t: &FiniteTables) -> Vec<u32> {
        let q = t.q;
        (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .map(|(a, b)| self.induced_add(t, a, b))
            .collect()
    }

    fn from_forward(fwd: Vec<u32>) -> Result<Self> {
        let q = fwd.len();
        let mut inv = vec![u32::MAX; q];
        for (x, &y) in fwd.iter().enumerate() {
            if y as usize >= q || inv[y as usize] != u32::MAX {
                return Err(Error::InvalidAutomorphism(format!(
                    "not a bijection: image {y} repeats or is out of range"
                )));
            }
            inv[y as usize] = x as u32;
        }
        Ok(AutoTable { fwd, inv })
    }
}

fn complex_unit(z: Complex64) -> Complex64 {
    z / z.norm()
}

fn wrong_base(a: &MultAuto, base: &BaseStructure) -> Error {
    Error::BaseMismatch {
        expected: base.name(),
        found: format!("{a:?}"),
    }
}

impl MultAuto {
    pub fn identity(base: &BaseStructure) -> MultAuto {
        match base {
            BaseStructure::Real { .. } => MultAuto::RealPower(1.0),
            BaseStructure::Complex { .. } => MultAuto::ComplexEps {
                alpha: Complex64::new(1.0, 0.0),
                conj: false,
            },
            _ => MultAuto::FinitePower(1),
        }
    }

    pub fn complex_eps(alpha: Complex64, conj: bool) -> Result<MultAuto> {
        if alpha.re == 0.0 || !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::InvalidAutomorphism(format!(
                "complex exponent {alpha} needs a nonzero finite real part"
            )));
        }
        Ok(MultAuto::ComplexEps { alpha, conj })
    }

    pub fn real_power(alpha: f64) -> Result<MultAuto> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidAutomorphism(format!(
                "real exponent must be finite and nonzero, got {alpha}"
            )));
        }
        Ok(MultAuto::RealPower(alpha))
    }

    /// Validated permutation table on a finite base.
    pub fn perm(base: &BaseStructure, table: Vec<u32>) -> Result<MultAuto> {
        let a = MultAuto::Perm(Arc::new(table));
        a.validate(base)?;
        Ok(a)
    }

    /// Checks the construction invariants against `base`.
    pub fn validate(&self, base: &BaseStructure) -> Result<()> {
        match (self, base) {
            (MultAuto::FinitePower(alpha), BaseStructure::Galois(t)) => {
                let m = t.unit_modulus();
                if m > 1 && gcd(alpha % m, m) != 1 {
                    return Err(Error::NotAUnit {
                        value: *alpha,
                        modulus: m,
                    });
                }
                Ok(())
            }
            (MultAuto::FinitePower(_), BaseStructure::Dickson9(_)) => {
                check_multiplicative_table(base, &self.forward_codes(base)?)
            }
            (MultAuto::RealPower(alpha), BaseStructure::Real { .. }) => MultAuto::real_power(*alpha).map(|_| ()),
            (MultAuto::ComplexEps { alpha, conj }, BaseStructure::Complex { .. }) => {
                MultAuto::complex_eps(*alpha, *conj).map(|_| ())
            }
            (MultAuto::Perm(table), _) if base.finite().is_some() => {
                let q = base.order().unwrap_or(0) as usize;
                if table.len() != q {
                    return Err(Error::InvalidAutomorphism(format!(
                        "table has {} entries, base has {q} elements",
                        table.len()
                    )));
                }
                if q >= 2 && (table[0] != 0 || table[1] != 1) {
                    return Err(Error::InvalidAutomorphism("table must fix 0 and 1".into()));
                }
                check_multiplicative_table(base, table)
            }
            (MultAuto::Inner(g), _) => {
                let g = base.check(*g)?;
                if g.is_zero() {
                    return Err(Error::InvalidAutomorphism("inner automorphism by 0".into()));
                }
                Ok(())
            }
            (MultAuto::Comp(parts), _) => parts.iter().try_for_each(|p| p.validate(base)),
            _ => Err(wrong_base(self, base)),
        }
    }

    pub fn apply(&self, base: &BaseStructure, x: Scalar) -> Result<Scalar> {
        let x = base.check(x)?;
        match (self, x) {
            (MultAuto::RealPower(alpha), Scalar::Real(v)) => Ok(Scalar::Real(if v == 0.0 {
                0.0
            } else {
                v.signum() * v.abs().powf(*alpha)
            })),
            (MultAuto::ComplexEps { alpha, conj }, Scalar::Complex(z)) => {
                if z.norm() == 0.0 {
                    return Ok(x);
                }
                let r = Complex64::new(z.norm().ln(), 0.0);
                let s = complex_unit(z);
                let s = if *conj { s.conj() } else { s };
                Ok(Scalar::Complex((alpha * r).exp() * s))
            }
            (MultAuto::FinitePower(_) | MultAuto::Perm(_), Scalar::Fin(c)) => {
                Ok(Scalar::Fin(self.apply_code(base.require_finite()?, c)?))
            }
            (MultAuto::Inner(g), _) => {
                let g = base.check(*g)?;
                base.mul(base.mul(base.inv(g)?, x)?, g)
            }
            (MultAuto::Comp(parts), _) => parts.iter().rev().try_fold(x, |acc, p| p.apply(base, acc)),
            _ => Err(wrong_base(self, base)),
        }
    }

    fn apply_code(&self, fb: FiniteBase<'_>, x: u32) -> Result<u32> {
        match self {
            MultAuto::FinitePower(alpha) => {
                if x == 0 {
                    Ok(0)
                } else {
                    fb.pow(x, (*alpha % (1 << 40)) as i64)
                }
            }
            MultAuto::Perm(t) => t
                .get(x as usize)
                .copied()
                .ok_or_else(|| Error::InvalidAutomorphism(format!("no image for {x}"))),
            MultAuto::Inner(Scalar::Fin(g)) => Ok(fb.mul(fb.mul(fb.inv(*g)?, x), *g)),
            MultAuto::Comp(parts) => parts.iter().rev().try_fold(x, |acc, p| p.apply_code(fb, acc)),
            other => Err(Error::InvalidAutomorphism(format!(
                "{other:?} does not act on a finite base"
            ))),
        }
    }

    fn forward_codes(&self, base: &BaseStructure) -> Result<Vec<u32>> {
        let fb = base.require_finite()?;
        (0..fb.order()).map(|x| self.apply_code(fb, x)).collect()
    }

    /// Materialized forward and inverse tables (finite bases).
    pub fn table(&self, base: &BaseStructure) -> Result<AutoTable> {
        AutoTable::from_forward(self.forward_codes(base)?)
    }

    /// Exponent of an equivalent power map on a Galois field.
    pub fn as_finite_power(&self, base: &BaseStructure) -> Option<u64> {
        let BaseStructure::Galois(t) = base else {
            return None;
        };
        let m = t.unit_modulus().max(1);
        match self {
            MultAuto::FinitePower(a) => Some(a % m),
            MultAuto::Inner(_) => Some(1 % m),
            MultAuto::Comp(parts) => parts.iter().try_fold(1 % m, |acc, p| {
                p.as_finite_power(base)
                    .map(|e| (acc as u128 * e as u128 % m as u128) as u64)
            }),
            _ => None,
        }
    }

    pub fn as_real_power(&self, base: &BaseStructure) -> Option<f64> {
        if !matches!(base, BaseStructure::Real { .. }) {
            return None;
        }
        match self {
            MultAuto::RealPower(a) => Some(*a),
            MultAuto::Inner(_) => Some(1.0),
            MultAuto::Comp(parts) => parts
                .iter()
                .try_fold(1.0, |acc, p| p.as_real_power(base).map(|e| acc * e)),
            _ => None,
        }
    }

    /// `(alpha, conj)` of an equivalent `eps` map on the complexes.
    pub fn as_complex_eps(&self, base: &BaseStructure) -> Option<(Complex64, bool)> {
        if !matches!(base, BaseStructure::Complex { .. }) {
            return None;
        }
        match self {
            MultAuto::ComplexEps { alpha, conj } => Some((*alpha, *conj)),
            MultAuto::Inner(_) => Some((Complex64::new(1.0, 0.0), false)),
            MultAuto::Comp(parts) => {
                let mut acc = (Complex64::new(1.0, 0.0), false);
                for p in parts {
                    acc = merge_eps(acc, p.as_complex_eps(base)?);
                }
                Some(acc)
            }
            _ => None,
        }
    }

    /// `self o other`, in normal form.
    pub fn compose(&self, other: &MultAuto, base: &BaseStructure) -> Result<MultAuto> {
        self.validate(base)?;
        other.validate(base)?;
        match base {
            BaseStructure::Galois(t) => {
                if let (Some(a), Some(b)) = (self.as_finite_power(base), other.as_finite_power(base)) {
                    let m = t.unit_modulus().max(1);
                    let e = (a as u128 * b as u128 % m as u128) as u64;
                    return Ok(MultAuto::FinitePower(if m == 1 { 1 } else { e }));
                }
                compose_tables(self, other, base)
            }
            BaseStructure::Dickson9(_) => compose_tables(self, other, base),
            BaseStructure::Real { .. } => {
                let a = self.as_real_power(base).ok_or_else(|| wrong_base(self, base))?;
                let b = other.as_real_power(base).ok_or_else(|| wrong_base(other, base))?;
                MultAuto::real_power(a * b)
            }
            BaseStructure::Complex { .. } => {
                let a = self.as_complex_eps(base).ok_or_else(|| wrong_base(self, base))?;
                let b = other.as_complex_eps(base).ok_or_else(|| wrong_base(other, base))?;
                let (alpha, conj) = merge_eps(a, b);
                MultAuto::complex_eps(alpha, conj)
            }
        }
    }

    pub fn inverse(&self, base: &BaseStructure) -> Result<MultAuto> {
        self.validate(base)?;
        match base {
            BaseStructure::Galois(t) => {
                if let Some(a) = self.as_finite_power(base) {
                    let m = t.unit_modulus();
                    if m <= 1 {
                        return Ok(MultAuto::FinitePower(1));
                    }
                    let inv = mod_inverse(a, m).ok_or(Error::NotAUnit { value: a, modulus: m })?;
                    return Ok(MultAuto::FinitePower(inv));
                }
                Ok(MultAuto::Perm(Arc::new(self.table(base)?.inv)))
            }
            BaseStructure::Dickson9(_) => {
                let tab = self.table(base)?;
                if tab.inv.iter().enumerate().all(|(i, &x)| i as u32 == x) {
                    return Ok(MultAuto::FinitePower(1));
                }
                Ok(MultAuto::Perm(Arc::new(tab.inv)))
            }
            BaseStructure::Real { .. } => {
                let a = self.as_real_power(base).ok_or_else(|| wrong_base(self, base))?;
                MultAuto::real_power(1.0 / a)
            }
            BaseStructure::Complex { .. } => {
                let (alpha, conj) = self.as_complex_eps(base).ok_or_else(|| wrong_base(self, base))?;
                let im = if conj { alpha.im } else { -alpha.im };
                MultAuto::complex_eps(Complex64::new(1.0, im) / alpha.re, conj)
            }
        }
    }

    pub fn is_identity(&self, base: &BaseStructure) -> bool {
        match base {
            BaseStructure::Real { tolerance } => self
                .as_real_power(base)
                .is_some_and(|a| grid::approx_eq_real(a, 1.0, *tolerance)),
            BaseStructure::Complex { tolerance } => self
                .as_complex_eps(base)
                .is_some_and(|(a, c)| !c && grid::approx_eq_complex(a, Complex64::new(1.0, 0.0), *tolerance)),
            _ => self
                .forward_codes(base)
                .is_ok_and(|f| f.iter().enumerate().all(|(i, &x)| i as u32 == x)),
        }
    }

    pub fn to_json(&self, base: &BaseStructure) -> Value {
        let d = match self {
            MultAuto::FinitePower(a) => AutoDescriptor::Fpow { alpha: *a },
            MultAuto::RealPower(a) => AutoDescriptor::Rpow { alpha: *a },
            MultAuto::ComplexEps { alpha, conj } => AutoDescriptor::Ceps {
                alpha: [alpha.re, alpha.im],
                conj: *conj,
            },
            MultAuto::Perm(t) => AutoDescriptor::Perm {
                table: t.as_ref().clone(),
            },
            MultAuto::Inner(g) => AutoDescriptor::Inner {
                gamma: base.scalar_to_json(*g),
            },
            MultAuto::Comp(parts) => AutoDescriptor::Comp {
                parts: parts.iter().map(|p| p.to_json(base)).collect(),
            },
        };
        serde_json::to_value(d).expect("descriptor serializes")
    }

    /// Parses and validates an automorphism against `base`.
    pub fn from_json(v: &Value, base: &BaseStructure) -> Result<MultAuto> {
        let d: AutoDescriptor = serde_json::from_value(v.clone())?;
        let a = match d {
            AutoDescriptor::Fpow { alpha } => MultAuto::FinitePower(alpha),
            AutoDescriptor::Rpow { alpha } => MultAuto::real_power(alpha)?,
            AutoDescriptor::Ceps { alpha, conj } => MultAuto::complex_eps(Complex64::new(alpha[0], alpha[1]), conj)?,
            AutoDescriptor::Perm { table } => MultAuto::Perm(Arc::new(table)),
            AutoDescriptor::Inner { gamma } => MultAuto::Inner(base.scalar_from_json(&gamma)?),
            AutoDescriptor::Comp { parts } => MultAuto::Comp(
                parts
                    .iter()
                    .map(|p| MultAuto::from_json(p, base))
                    .collect::<Result<_>>()?,
            ),
        };
        a.validate(base)?;
        Ok(a)
    }
}

/// `eps^{c1}_a o eps^{c2}_b = eps^{c1 xor c2}` with exponent
/// `a Re b + (c1 ? -1 : 1) i Im b`.
fn merge_eps(outer: (Complex64, bool), inner: (Complex64, bool)) -> (Complex64, bool) {
    let (a, c1) = outer;
    let (b, c2) = inner;
    let sign = if c1 { -1.0 } else { 1.0 };
    (a * b.re + Complex64::new(0.0, sign * b.im), c1 ^ c2)
}

fn compose_tables(a: &MultAuto, b: &MultAuto, base: &BaseStructure) -> Result<MultAuto> {
    let ta = a.forward_codes(base)?;
    let tb = b.forward_codes(base)?;
    let fwd: Vec<u32> = tb.iter().map(|&y| ta[y as usize]).collect();
    if fwd.iter().enumerate().all(|(i, &x)| i as u32 == x) {
        return Ok(MultAuto::FinitePower(1));
    }
    Ok(MultAuto::Perm(Arc::new(fwd)))
}

fn check_multiplicative_table(base: &BaseStructure, fwd: &[u32]) -> Result<()> {
    let fb = base.require_finite()?;
    let q = fb.order();
    AutoTable::from_forward(fwd.to_vec())?;
    for x in 0..q {
        for y in 0..q {
            if fwd[fb.mul(x, y) as usize] != fb.mul(fwd[x as usize], fwd[y as usize]) {
                return Err(Error::InvalidAutomorphism(format!("not multiplicative at ({x}, {y})")));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum AutoDescriptor {
    Fpow { alpha: u64 },
    Rpow { alpha: f64 },
    Ceps { alpha: [f64; 2], conj: bool },
    Perm { table: Vec<u32> },
    Inner { gamma: Value },
    Comp { parts: Vec<Value> },
}

/// All multiplicative automorphisms of a finite base.
///
/// Galois fields give the power maps over the units mod `p^n - 1`, in
/// ascending order. Other finite bases are searched by sending a generating
/// set of the unit group to every admissible tuple of images; results are
/// sorted by table, so the identity comes first.
pub fn enumerate_mult_autos(base: &BaseStructure) -> Result<Vec<MultAuto>> {
    match base {
        BaseStructure::Galois(t) => {
            let m = t.unit_modulus();
            if m <= 1 {
                return Ok(vec![MultAuto::FinitePower(1)]);
            }
            Ok((1..m).filter(|&a| gcd(a, m) == 1).map(MultAuto::FinitePower).collect())
        }
        BaseStructure::Dickson9(_) => {
            let fb = base.require_finite()?;
            let tables = search_group_autos(fb);
            Ok(tables
                .into_iter()
                .map(|t| {
                    if t.iter().enumerate().all(|(i, &x)| i as u32 == x) {
                        MultAuto::FinitePower(1)
                    } else {
                        MultAuto::Perm(Arc::new(t))
                    }
                })
                .collect())
        }
        _ => Err(Error::NotEnumerable(base.name())),
    }
}

fn search_group_autos(fb: FiniteBase<'_>) -> Vec<Vec<u32>> {
    let q = fb.order();
    let order_of = |x: u32| {
        let mut k = 1;
        let mut y = x;
        while y != 1 {
            y = fb.mul(y, x);
            k += 1;
        }
        k
    };
    // greedy generating set of the unit group
    let mut gens = Vec::new();
    let mut span: BTreeSet<u32> = [1].into();
    while span.len() < (q - 1) as usize {
        let g = (2..q).find(|x| !span.contains(x)).expect("group not yet spanned");
        gens.push(g);
        span = closure(fb, &gens);
    }
    let orders: Vec<u32> = (0..q).map(|x| if x == 0 { 0 } else { order_of(x) }).collect();
    let mut found = BTreeSet::new();
    let mut images = vec![0u32; gens.len()];
    extend_images(fb, &gens, &orders, 0, &mut images, &mut found);
    found.into_iter().collect()
}

fn closure(fb: FiniteBase<'_>, gens: &[u32]) -> BTreeSet<u32> {
    let mut span: BTreeSet<u32> = [1].into();
    let mut frontier = vec![1u32];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = fb.mul(x, g);
            if span.insert(y) {
                frontier.push(y);
            }
        }
    }
    span
}

fn extend_images(
    fb: FiniteBase<'_>,
    gens: &[u32],
    orders: &[u32],
    k: usize,
    images: &mut Vec<u32>,
    found: &mut BTreeSet<Vec<u32>>,
) {
    if k == gens.len() {
        if let Some(t) = homomorphism_from(fb, gens, images) {
            found.insert(t);
        }
        return;
    }
    for h in 1..fb.order() {
        if orders[h as usize] == orders[gens[k] as usize] {
            images[k] = h;
            extend_images(fb, gens, orders, k + 1, images, found);
        }
    }
}

/// The automorphism sending `gens[i]` to `images[i]`, if one exists.
fn homomorphism_from(fb: FiniteBase<'_>, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let q = fb.order() as usize;
    let mut map = vec![u32::MAX; q];
    map[0] = 0;
    map[1] = 1;
    let mut frontier = vec![1u32];
    while let Some(x) = frontier.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = fb.mul(x, g) as usize;
            let fy = fb.mul(map[x as usize], h);
            if map[y] == u32::MAX {
                map[y] = fy;
                frontier.push(y as u32);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    let mut seen = vec![false; q];
    for &v in &map {
        if v == u32::MAX || std::mem::replace(&mut seen[v as usize], true) {
            return None;
        }
    }
    (0..q as u32)
        .all(|x| (0..q as u32).all(|y| map[fb.mul(x, y) as usize] == fb.mul(map[x as usize], map[y as usize])))
        .then_some(map)
}

/// Checks `s(0) = 0`, `s(1) = 1`, `s(-x) = -s(x)`, `s(x^-1) = s(x)^-1` and
/// multiplicativity. Exhaustive on finite bases; on the reals and complexes
/// the grid plus `cfg.samples` seeded pairs, within tolerance.
pub fn mult_properties_check(a: &MultAuto, base: &BaseStructure, cfg: &Config) -> Result<Report> {
    a.validate(base)?;
    let mut r = Report::new("mult_properties");
    let zero = base.zero();
    let one = base.one();
    let s0 = a.apply(base, zero)?;
    r.expect(base.approx_eq(s0, zero), || format!("s(0) = {s0}"));
    let s1 = a.apply(base, one)?;
    r.expect(base.approx_eq(s1, one), || format!("s(1) = {s1}"));

    let (points, pairs): (Vec<Scalar>, Vec<(Scalar, Scalar)>) = match base {
        BaseStructure::Real { .. } | BaseStructure::Complex { .. } => {
            let real = matches!(base, BaseStructure::Real { .. });
            let pts: Vec<Scalar> = if real {
                grid::real_grid().into_iter().map(Scalar::Real).collect()
            } else {
                grid::complex_grid().into_iter().map(Scalar::Complex).collect()
            };
            let mut pairs: Vec<(Scalar, Scalar)> = pts.iter().flat_map(|&x| pts.iter().map(move |&y| (x, y))).collect();
            let mut rng = grid::rng(cfg.seed);
            let sample = |rng: &mut rand_chacha::ChaCha8Rng| {
                if real {
                    Scalar::Real(grid::sample_real(rng))
                } else {
                    Scalar::Complex(grid::sample_complex(rng))
                }
            };
            for _ in 0..cfg.samples.max(1000) {
                let x = sample(&mut rng);
                let y = if rng.gen_bool(0.1) { x } else { sample(&mut rng) };
                pairs.push((x, y));
            }
            (pts, pairs)
        }
        _ => {
            let q = base.require_finite()?.order();
            if (q as u128).pow(2) > cfg.bounds.work as u128 {
                return Err(Error::BoundExceeded {
                    what: "multiplicativity check",
                    size: (q as u128).pow(2),
                    bound: cfg.bounds.work,
                });
            }
            let pts: Vec<Scalar> = (0..q).map(Scalar::Fin).collect();
            let pairs = pts.iter().flat_map(|&x| pts.iter().map(move |&y| (x, y))).collect();
            (pts, pairs)
        }
    };

    for &x in &points {
        let sx = a.apply(base, x)?;
        let lhs = a.apply(base, base.neg(x)?)?;
        let rhs = base.neg(sx)?;
        r.expect(base.approx_eq(lhs, rhs), || {
            format!("s(-{x}) = {lhs} but -s({x}) = {rhs}")
        });
        if !x.is_zero() {
            let lhs = a.apply(base, base.inv(x)?)?;
            let rhs = base.inv(sx)?;
            r.expect(base.approx_eq(lhs, rhs), || {
                format!("s({x}^-1) = {lhs} but s({x})^-1 = {rhs}")
            });
        }
    }
    let failures = exec::map_slice(cfg.exec, &pairs, |&(x, y)| -> Result<Option<String>> {
        let lhs = a.apply(base, base.mul(x, y)?)?;
        let rhs = base.mul(a.apply(base, x)?, a.apply(base, y)?)?;
        Ok((!base.approx_eq(lhs, rhs)).then(|| format!("s({x} * {y}) = {lhs} but s({x}) s({y}) = {rhs}")))
    });
    r.checked += pairs.len() as u64;
    for f in failures {
        if let Some(msg) = f? {
            r.violation(msg);
        }
    }
    r.detail("pairs", pairs.len());
    Ok(r)
}

/// Whether `a` and `b` induce the same addition, i.e. `a o b^-1` is additive.
pub fn same_addition(a: &MultAuto, b: &MultAuto, base: &BaseStructure, cfg: &Config) -> Result<bool> {
    if let BaseStructure::Galois(t) = base {
        if let (Some(x), Some(y)) = (a.as_finite_power(base), b.as_finite_power(base)) {
            a.validate(base)?;
            b.validate(base)?;
            return same_addition_exponents(x, y, t.p() as u64, t.n());
        }
    }
    let ratio = a.compose(&b.inverse(base)?, base)?;
    base.is_nearfield_automorphism(&ratio, cfg)
}
