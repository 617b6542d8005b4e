//! Scalar groups and near-fields: finite fields, the reals, the complexes and
//! the order-9 Dickson near-field, with their native arithmetic, induced
//! additions and distributive elements.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::auto::MultAuto;
use crate::error::{Error, Result};
use crate::galois::{GfElement, GfTable, DEFAULT_FIELD_BOUND};
use crate::grid::{self, approx_eq_complex, approx_eq_real, DEFAULT_TOLERANCE};
use crate::report::Report;
use crate::{exec, Config};

/// A base element. Finite bases use element codes (see [`crate::galois`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Fin(u32),
    Real(f64),
    Complex(Complex64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match *self {
            Scalar::Fin(x) => x == 0,
            Scalar::Real(x) => x == 0.0,
            Scalar::Complex(z) => z == Complex64::new(0.0, 0.0),
        }
    }

    pub fn code(&self) -> Option<u32> {
        match *self {
            Scalar::Fin(x) => Some(x),
            _ => None,
        }
    }

    pub fn real(&self) -> Option<f64> {
        match *self {
            Scalar::Real(x) => Some(x),
            _ => None,
        }
    }

    pub fn complex(&self) -> Option<Complex64> {
        match *self {
            Scalar::Complex(z) => Some(z),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fin(x) => write!(f, "#{x}"),
            Scalar::Real(x) => write!(f, "{x}"),
            Scalar::Complex(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

/// The order-9 Dickson near-field: GF(9) addition with the product
/// `a o b = a b` when `a` is a square and `a o b = a b^3` otherwise.
#[derive(Debug, Clone)]
pub struct Dickson9 {
    field: GfTable,
    square: [bool; 9],
    mul: [[u32; 9]; 9],
    inv: [u32; 9],
}

impl Dickson9 {
    pub fn new() -> Self {
        let field = GfTable::new(3, 2).expect("GF(9) builds");
        let mut square = [false; 9];
        square[0] = true;
        for k in (0..8).step_by(2) {
            square[field.antilog(k) as usize] = true;
        }
        let mut mul = [[0u32; 9]; 9];
        for a in 0..9u32 {
            for b in 0..9u32 {
                mul[a as usize][b as usize] = if square[a as usize] {
                    field.mul(a, b)
                } else {
                    field.mul(a, field.pow(b, 3).unwrap_or(0))
                };
            }
        }
        let mut inv = [0u32; 9];
        for a in 1..9usize {
            inv[a] = (1..9u32).find(|&b| mul[a][b as usize] == 1).expect("group");
        }
        Dickson9 {
            field,
            square,
            mul,
            inv,
        }
    }

    /// The underlying GF(9), which supplies the additive structure.
    pub fn field(&self) -> &GfTable {
        &self.field
    }

    pub fn is_square(&self, a: u32) -> bool {
        self.square[a as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize][b as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return if e > 0 { Ok(0) } else { Err(Error::ZeroPower(e)) };
        }
        let base = if e < 0 { self.inv[a as usize] } else { a };
        let mut acc = 1;
        for _ in 0..(e.unsigned_abs() % 8) {
            acc = self.mul(acc, base);
        }
        Ok(acc)
    }
}

impl Default for Dickson9 {
    fn default() -> Self {
        Self::new()
    }
}

/// Borrowed view of a finite base, exposing arithmetic on element codes.
#[derive(Clone, Copy)]
pub enum FiniteBase<'a> {
    Galois(&'a GfTable),
    Dickson(&'a Dickson9),
}

impl FiniteBase<'_> {
    pub fn order(&self) -> u32 {
        match self {
            FiniteBase::Galois(t) => t.order(),
            FiniteBase::Dickson(_) => 9,
        }
    }

    fn field(&self) -> &GfTable {
        match self {
            FiniteBase::Galois(t) => t,
            FiniteBase::Dickson(d) => &d.field,
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.field().add(a, b)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.field().neg(a)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            FiniteBase::Galois(t) => t.mul(a, b),
            FiniteBase::Dickson(d) => d.mul(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        match self {
            FiniteBase::Galois(t) => t.inv(a),
            FiniteBase::Dickson(d) => d.inv(a),
        }
    }

    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        match self {
            FiniteBase::Galois(t) => t.pow(a, e),
            FiniteBase::Dickson(d) => d.pow(a, e),
        }
    }

    /// Dense operation tables, for brute-force sweeps over small bases.
    pub fn tables(&self) -> FiniteTables {
        let q = self.order();
        let mut add = Vec::with_capacity((q * q) as usize);
        let mut mul = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                add.push(self.add(a, b));
                mul.push(self.mul(a, b));
            }
        }
        let inv = (0..q).map(|a| self.inv(a).unwrap_or(0)).collect();
        let neg = (0..q).map(|a| self.neg(a)).collect();
        FiniteTables { q, add, mul, inv, neg }
    }
}

/// Flat `q x q` operation tables of a finite base.
#[derive(Debug, Clone)]
pub struct FiniteTables {
    pub q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    neg: Vec<u32>,
}

impl FiniteTables {
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }
    /// Inverse, with `inv(0) = 0`.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
}

#[derive(Debug, Clone)]
pub enum BaseStructure {
    Galois(Arc<GfTable>),
    Real { tolerance: f64 },
    Complex { tolerance: f64 },
    Dickson9(Arc<Dickson9>),
}

impl BaseStructure {
    pub fn galois(p: u64, n: u32) -> Result<Self> {
        Self::galois_bounded(p, n, DEFAULT_FIELD_BOUND)
    }

    pub fn galois_bounded(p: u64, n: u32, bound: u64) -> Result<Self> {
        Ok(BaseStructure::Galois(Arc::new(GfTable::with_bound(p, n, bound)?)))
    }

    pub fn real() -> Self {
        BaseStructure::Real {
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn complex() -> Self {
        BaseStructure::Complex {
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn dickson9() -> Self {
        BaseStructure::Dickson9(Arc::new(Dickson9::new()))
    }

    pub fn with_tolerance(self, tol: f64) -> Self {
        match self {
            BaseStructure::Real { .. } => BaseStructure::Real { tolerance: tol },
            BaseStructure::Complex { .. } => BaseStructure::Complex { tolerance: tol },
            other => other,
        }
    }

    pub fn name(&self) -> String {
        match self {
            BaseStructure::Galois(t) if t.n() == 1 => format!("GF({})", t.p()),
            BaseStructure::Galois(t) => format!("GF({}^{})", t.p(), t.n()),
            BaseStructure::Real { .. } => "R".into(),
            BaseStructure::Complex { .. } => "C".into(),
            BaseStructure::Dickson9(_) => "Dickson9".into(),
        }
    }

    /// Same underlying structure (tolerances are not compared).
    pub fn same_as(&self, other: &BaseStructure) -> bool {
        match (self, other) {
            (BaseStructure::Galois(a), BaseStructure::Galois(b)) => a.p() == b.p() && a.n() == b.n(),
            (BaseStructure::Real { .. }, BaseStructure::Real { .. })
            | (BaseStructure::Complex { .. }, BaseStructure::Complex { .. })
            | (BaseStructure::Dickson9(_), BaseStructure::Dickson9(_)) => true,
            _ => false,
        }
    }

    pub fn ensure_same(&self, other: &BaseStructure) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::BaseMismatch {
                expected: self.name(),
                found: other.name(),
            })
        }
    }

    pub fn finite(&self) -> Option<FiniteBase<'_>> {
        match self {
            BaseStructure::Galois(t) => Some(FiniteBase::Galois(t)),
            BaseStructure::Dickson9(d) => Some(FiniteBase::Dickson(d)),
            _ => None,
        }
    }

    pub fn require_finite(&self) -> Result<FiniteBase<'_>> {
        self.finite().ok_or_else(|| Error::NotEnumerable(self.name()))
    }

    pub fn order(&self) -> Option<u32> {
        self.finite().map(|f| f.order())
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self, BaseStructure::Dickson9(_))
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            BaseStructure::Real { tolerance } | BaseStructure::Complex { tolerance } => *tolerance,
            _ => 0.0,
        }
    }

    /// All elements, in code order; `None` for the reals and complexes.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.order().map(|q| (0..q).map(Scalar::Fin).collect())
    }

    pub fn zero(&self) -> Scalar {
        match self {
            BaseStructure::Real { .. } => Scalar::Real(0.0),
            BaseStructure::Complex { .. } => Scalar::Complex(Complex64::new(0.0, 0.0)),
            _ => Scalar::Fin(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            BaseStructure::Real { .. } => Scalar::Real(1.0),
            BaseStructure::Complex { .. } => Scalar::Complex(Complex64::new(1.0, 0.0)),
            _ => Scalar::Fin(1),
        }
    }

    pub fn minus_one(&self) -> Scalar {
        self.neg(self.one()).expect("one belongs to its base")
    }

    /// Checks that `x` is an element of this base.
    pub fn check(&self, x: Scalar) -> Result<Scalar> {
        let ok = match (self, x) {
            (BaseStructure::Real { .. }, Scalar::Real(v)) => v.is_finite(),
            (BaseStructure::Complex { .. }, Scalar::Complex(z)) => z.re.is_finite() && z.im.is_finite(),
            (_, Scalar::Fin(c)) => self.order().is_some_and(|q| c < q),
            _ => false,
        };
        if ok {
            Ok(x)
        } else {
            Err(Error::BaseMismatch {
                expected: self.name(),
                found: format!("scalar {x}"),
            })
        }
    }

    pub fn approx_eq(&self, x: Scalar, y: Scalar) -> bool {
        match (x, y) {
            (Scalar::Fin(a), Scalar::Fin(b)) => a == b,
            (Scalar::Real(a), Scalar::Real(b)) => approx_eq_real(a, b, self.tolerance()),
            (Scalar::Complex(a), Scalar::Complex(b)) => approx_eq_complex(a, b, self.tolerance()),
            _ => false,
        }
    }

    pub fn add(&self, x: Scalar, y: Scalar) -> Result<Scalar> {
        let (x, y) = (self.check(x)?, self.check(y)?);
        Ok(match (x, y) {
            (Scalar::Real(a), Scalar::Real(b)) => Scalar::Real(a + b),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a + b),
            (Scalar::Fin(a), Scalar::Fin(b)) => Scalar::Fin(self.require_finite()?.add(a, b)),
            _ => unreachable!("checked above"),
        })
    }

    pub fn mul(&self, x: Scalar, y: Scalar) -> Result<Scalar> {
        let (x, y) = (self.check(x)?, self.check(y)?);
        Ok(match (x, y) {
            (Scalar::Real(a), Scalar::Real(b)) => Scalar::Real(a * b),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a * b),
            (Scalar::Fin(a), Scalar::Fin(b)) => Scalar::Fin(self.require_finite()?.mul(a, b)),
            _ => unreachable!("checked above"),
        })
    }

    pub fn neg(&self, x: Scalar) -> Result<Scalar> {
        Ok(match self.check(x)? {
            Scalar::Real(a) => Scalar::Real(-a),
            Scalar::Complex(a) => Scalar::Complex(-a),
            Scalar::Fin(a) => Scalar::Fin(self.require_finite()?.neg(a)),
        })
    }

    pub fn inv(&self, x: Scalar) -> Result<Scalar> {
        let x = self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match x {
            Scalar::Real(a) => Scalar::Real(1.0 / a),
            Scalar::Complex(a) => Scalar::Complex(a.inv()),
            Scalar::Fin(a) => Scalar::Fin(self.require_finite()?.inv(a)?),
        })
    }

    /// `x +_sigma y = sigma^-1(sigma(x) + sigma(y))`.
    pub fn induced_add(&self, sigma: &MultAuto, x: Scalar, y: Scalar) -> Result<Scalar> {
        let sum = self.add(sigma.apply(self, x)?, sigma.apply(self, y)?)?;
        sigma.inverse(self)?.apply(self, sum)
    }

    /// Right-distributive elements under the native addition, or under
    /// `+_sigma` when `addition` is given. Exhaustive, finite bases only.
    pub fn distributive_elements(&self, addition: Option<&MultAuto>, cfg: &Config) -> Result<Vec<Scalar>> {
        let fb = self.require_finite()?;
        let q = fb.order();
        let work = (q as u128).pow(3);
        if work > cfg.bounds.work as u128 {
            return Err(Error::BoundExceeded {
                what: "distributive-element scan",
                size: work,
                bound: cfg.bounds.work,
            });
        }
        let t = fb.tables();
        let sum_tab: Vec<u32> = match addition {
            None => (0..q * q).map(|i| t.add(i / q, i % q)).collect(),
            Some(sigma) => sigma.table(self)?.addition_table(&t),
        };
        let sum = |a: u32, b: u32| sum_tab[(a * q + b) as usize];
        let codes = exec::filter_map_range(cfg.exec, q as u64, |g| {
            let g = g as u32;
            let ok = (0..q).all(|a| (0..q).all(|b| t.mul(sum(a, b), g) == sum(t.mul(a, g), t.mul(b, g))));
            ok.then_some(Scalar::Fin(g))
        });
        Ok(codes)
    }

    /// Whether `f` is additive as well as multiplicative.
    ///
    /// Finite bases: exhaustive additivity check (power maps on large fields
    /// use the Frobenius criterion instead). Reals: only the exponent-1 power
    /// map. Complexes: `f` must agree with the identity or with conjugation
    /// on the 25-point grid.
    pub fn is_nearfield_automorphism(&self, f: &MultAuto, cfg: &Config) -> Result<bool> {
        match self {
            BaseStructure::Real { tolerance } => {
                let alpha = f
                    .as_real_power(self)
                    .ok_or_else(|| Error::InvalidAutomorphism(format!("{f:?} is not a real power map")))?;
                Ok(approx_eq_real(alpha, 1.0, *tolerance))
            }
            BaseStructure::Complex { tolerance } => {
                let pts = grid::complex_grid();
                let mut images = Vec::with_capacity(pts.len());
                for &z in &pts {
                    images.push(f.apply(self, Scalar::Complex(z))?.complex().expect("complex"));
                }
                let same = |g: fn(Complex64) -> Complex64| {
                    pts.iter()
                        .zip(&images)
                        .all(|(&z, &w)| approx_eq_complex(g(z), w, *tolerance))
                };
                Ok(same(|z| z) || same(|z| z.conj()))
            }
            BaseStructure::Galois(t) => {
                let q = t.order() as u64;
                if q * q > cfg.bounds.work {
                    if let Some(alpha) = f.as_finite_power(self) {
                        return crate::galois::same_addition_exponents(alpha, 1, t.p() as u64, t.n());
                    }
                }
                self.additive_exhaustive(f, cfg)
            }
            BaseStructure::Dickson9(_) => self.additive_exhaustive(f, cfg),
        }
    }

    fn additive_exhaustive(&self, f: &MultAuto, cfg: &Config) -> Result<bool> {
        let fb = self.require_finite()?;
        let q = fb.order();
        if (q as u128).pow(2) > cfg.bounds.work as u128 {
            return Err(Error::BoundExceeded {
                what: "additivity check",
                size: (q as u128).pow(2),
                bound: cfg.bounds.work,
            });
        }
        let tab = f.table(self)?;
        let bad = exec::find_first(cfg.exec, q as u64, |x| {
            let x = x as u32;
            (0..q)
                .any(|y| tab.apply(fb.add(x, y)) != fb.add(tab.apply(x), tab.apply(y)))
                .then_some(())
        });
        Ok(bad.is_none())
    }

    /// JSON form of a scalar: coefficient array (finite), number (real) or
    /// `[re, im]` (complex).
    pub fn scalar_to_json(&self, x: Scalar) -> Value {
        match (self, x) {
            (BaseStructure::Galois(t), Scalar::Fin(c)) => json!(t.element(c).coeffs),
            (BaseStructure::Dickson9(d), Scalar::Fin(c)) => json!(d.field.element(c).coeffs),
            (_, Scalar::Real(v)) => json!(v),
            (_, Scalar::Complex(z)) => json!([z.re, z.im]),
            (_, Scalar::Fin(c)) => json!(c),
        }
    }

    pub fn scalar_from_json(&self, v: &Value) -> Result<Scalar> {
        let bad = || Error::Parse(format!("{v} is not a scalar of {}", self.name()));
        let x = match self {
            BaseStructure::Real { .. } => Scalar::Real(v.as_f64().ok_or_else(bad)?),
            BaseStructure::Complex { .. } => match v {
                Value::Array(a) if a.len() == 2 => Scalar::Complex(Complex64::new(
                    a[0].as_f64().ok_or_else(bad)?,
                    a[1].as_f64().ok_or_else(bad)?,
                )),
                _ => Scalar::Complex(Complex64::new(v.as_f64().ok_or_else(bad)?, 0.0)),
            },
            BaseStructure::Galois(_) | BaseStructure::Dickson9(_) => {
                let field = match self {
                    BaseStructure::Galois(t) => &**t,
                    BaseStructure::Dickson9(d) => &d.field,
                    _ => unreachable!(),
                };
                match v {
                    Value::Array(_) => {
                        let coeffs: Vec<u32> = serde_json::from_value(v.clone()).map_err(|_| bad())?;
                        Scalar::Fin(field.code(&GfElement::new(coeffs))?)
                    }
                    _ => Scalar::Fin(v.as_u64().ok_or_else(bad)? as u32),
                }
            }
        };
        self.check(x)
    }

    pub fn descriptor(&self) -> BaseDescriptor {
        match self {
            BaseStructure::Galois(t) => BaseDescriptor::Gf {
                p: t.p() as u64,
                n: t.n(),
                modulus: Some(t.modulus().to_vec()),
            },
            BaseStructure::Real { tolerance } => BaseDescriptor::Real {
                tolerance: Some(*tolerance),
            },
            BaseStructure::Complex { tolerance } => BaseDescriptor::Complex {
                tolerance: Some(*tolerance),
            },
            BaseStructure::Dickson9(_) => BaseDescriptor::Dickson9 {},
        }
    }
}

/// Serialized base description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BaseDescriptor {
    Gf {
        p: u64,
        n: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
    },
    Real {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    Complex {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    Dickson9 {},
}

impl BaseDescriptor {
    pub fn build(&self, field_bound: u64) -> Result<BaseStructure> {
        match self {
            BaseDescriptor::Gf { p, n, modulus } => {
                let base = BaseStructure::galois_bounded(*p, *n, field_bound)?;
                if let (Some(m), BaseStructure::Galois(t)) = (modulus, &base) {
                    if m.as_slice() != t.modulus() {
                        return Err(Error::Parse(format!(
                            "modulus {m:?} differs from the canonical modulus {:?}",
                            t.modulus()
                        )));
                    }
                }
                Ok(base)
            }
            BaseDescriptor::Real { tolerance } => Ok(BaseStructure::Real {
                tolerance: positive_tol(*tolerance)?,
            }),
            BaseDescriptor::Complex { tolerance } => Ok(BaseStructure::Complex {
                tolerance: positive_tol(*tolerance)?,
            }),
            BaseDescriptor::Dickson9 {} => Ok(BaseStructure::dickson9()),
        }
    }
}

fn positive_tol(t: Option<f64>) -> Result<f64> {
    match t {
        None => Ok(DEFAULT_TOLERANCE),
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(Error::Parse(format!("tolerance must be positive, got {t}"))),
    }
}

/// Verifies that `(sigma(F_d), +_{sigma^-1}, .)` is carried onto
/// `(F_d, +, .)` by `sigma^-1`, preserving both operations.
pub fn divisionring_transport_check(base: &BaseStructure, sigma: &MultAuto, cfg: &Config) -> Result<Report> {
    let fb = base.require_finite()?;
    let mut report = Report::new("divisionring_transport");
    let fd: Vec<u32> = base
        .distributive_elements(None, cfg)?
        .iter()
        .filter_map(Scalar::code)
        .collect();
    let tab = sigma.table(base)?;
    let image: Vec<u32> = fd.iter().map(|&x| tab.apply(x)).collect();
    report.detail("fd_size", fd.len());

    let mut back: Vec<u32> = image.iter().map(|&x| tab.unapply(x)).collect();
    back.sort_unstable();
    report.expect(back == fd, || "sigma^-1 does not map sigma(F_d) onto F_d".into());

    let in_fd = |x: u32| fd.binary_search(&x).is_ok();
    for &x in &image {
        for &y in &image {
            // x +_{sigma^-1} y = sigma(sigma^-1 x + sigma^-1 y)
            let s = tab.apply(fb.add(tab.unapply(x), tab.unapply(y)));
            let lhs_add = tab.unapply(s);
            let rhs_add = fb.add(tab.unapply(x), tab.unapply(y));
            report.expect(lhs_add == rhs_add && in_fd(lhs_add), || {
                format!("addition not preserved at ({x}, {y})")
            });
            let lhs_mul = tab.unapply(fb.mul(x, y));
            let rhs_mul = fb.mul(tab.unapply(x), tab.unapply(y));
            report.expect(lhs_mul == rhs_mul && in_fd(lhs_mul), || {
                format!("product not preserved at ({x}, {y})")
            });
        }
    }
    Ok(report)
}

/// Exhaustive scalar-group axioms: monoid laws, zero absorption, `x^2 = 1`
/// exactly for `x = +-1`, and a group on the nonzero elements.
pub fn scalar_group_axiom_check(base: &BaseStructure, cfg: &Config) -> Result<Report> {
    let fb = base.require_finite()?;
    let q = fb.order();
    if (q as u128).pow(3) > cfg.bounds.work as u128 {
        return Err(Error::BoundExceeded {
            what: "scalar-group axiom check",
            size: (q as u128).pow(3),
            bound: cfg.bounds.work,
        });
    }
    let t = fb.tables();
    let mut r = Report::new("scalar_group_axioms");
    let minus_one = t.neg(1);
    let assoc_failures = exec::filter_map_range(cfg.exec, q as u64, |a| {
        let a = a as u32;
        (0..q)
            .flat_map(|b| (0..q).map(move |c| (b, c)))
            .find(|&(b, c)| t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)))
            .map(|(b, c)| (a, b, c))
    });
    r.checked += (q as u64).pow(3);
    for (a, b, c) in assoc_failures {
        r.violation(format!("associativity fails at ({a}, {b}, {c})"));
    }
    for a in 0..q {
        r.expect(t.mul(1, a) == a && t.mul(a, 1) == a, || {
            format!("1 is not neutral for {a}")
        });
        r.expect(t.mul(0, a) == 0 && t.mul(a, 0) == 0, || {
            format!("0 does not absorb {a}")
        });
        let is_root = t.mul(a, a) == 1;
        r.expect(is_root == (a == 1 || a == minus_one), || {
            format!("x^2 = 1 solution set is wrong at {a}")
        });
        if a != 0 {
            let inv = (1..q).find(|&b| t.mul(a, b) == 1 && t.mul(b, a) == 1);
            r.expect(inv.is_some(), || format!("{a} has no two-sided inverse"));
            for b in 1..q {
                r.expect(t.mul(a, b) != 0, || format!("{a} * {b} = 0"));
            }
        }
    }
    r.detail("order", q);
    r.detail("minus_one", minus_one);
    Ok(r)
}

/// Exhaustive near-field axioms: abelian addition and left distributivity.
pub fn nearfield_axiom_check(base: &BaseStructure, cfg: &Config) -> Result<Report> {
    let fb = base.require_finite()?;
    let q = fb.order();
    if (q as u128).pow(3) > cfg.bounds.work as u128 {
        return Err(Error::BoundExceeded {
            what: "near-field axiom check",
            size: (q as u128).pow(3),
            bound: cfg.bounds.work,
        });
    }
    let t = fb.tables();
    let mut r = Report::new("nearfield_axioms");
    let failures = exec::filter_map_range(cfg.exec, q as u64, |a| {
        let a = a as u32;
        for b in 0..q {
            if t.add(a, b) != t.add(b, a) {
                return Some(format!("addition not commutative at ({a}, {b})"));
            }
            for c in 0..q {
                if t.add(t.add(a, b), c) != t.add(a, t.add(b, c)) {
                    return Some(format!("addition not associative at ({a}, {b}, {c})"));
                }
                if t.mul(a, t.add(b, c)) != t.add(t.mul(a, b), t.mul(a, c)) {
                    return Some(format!("left distributivity fails at ({a}, {b}, {c})"));
                }
            }
        }
        None
    });
    r.checked += (q as u64).pow(3);
    for f in failures {
        r.violation(f);
    }
    Ok(r)
}
