//! Real power automorphisms, complex `eps` automorphisms and the
//! complexification of real multiplicative spaces.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::auto::MultAuto;
use crate::base::{BaseStructure, Scalar};
use crate::error::{Error, Result};
use crate::grid;
use crate::report::Report;
use crate::space::{in_quasi_kernel, SpaceSpec, SparseVector};
use crate::Config;

/// `x -> sign(x) |x|^alpha`.
pub fn real_power_auto(alpha: f64) -> Result<MultAuto> {
    MultAuto::real_power(alpha)
}

/// Exponents of a real space `R^{phi_T, phi_S}` and the choice between the
/// two complexifications (`conj` picks the conjugate family).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexificationSpec {
    #[serde(rename = "T")]
    pub t: Vec<f64>,
    #[serde(rename = "S")]
    pub s: Vec<f64>,
    #[serde(default)]
    pub conj: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ComplexificationSpec {
    pub fn new(t: Vec<f64>, s: Vec<f64>, conj: bool) -> Self {
        ComplexificationSpec {
            t,
            s,
            conj,
            labels: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.t.len() != self.s.len() {
            return Err(Error::InvalidSpace(format!(
                "{} exponents in T but {} in S",
                self.t.len(),
                self.s.len()
            )));
        }
        if let Some(l) = &self.labels {
            if l.len() != self.t.len() {
                return Err(Error::InvalidSpace(format!(
                    "{} labels for {} exponents",
                    l.len(),
                    self.t.len()
                )));
            }
        }
        for &a in self.t.iter().chain(&self.s) {
            real_power_auto(a)?;
        }
        Ok(())
    }

    fn build(&self, base: BaseStructure, f: impl Fn(f64) -> Result<MultAuto>) -> Result<SpaceSpec> {
        self.validate()?;
        let sigma = self.t.iter().map(|&a| f(a)).collect::<Result<Vec<_>>>()?;
        let rho = self.s.iter().map(|&a| f(a)).collect::<Result<Vec<_>>>()?;
        match &self.labels {
            None => SpaceSpec::indexed(base, sigma, rho),
            Some(l) => SpaceSpec::new(base, l.iter().cloned().zip(sigma).zip(rho).map(|((l, s), r)| (l, s, r))),
        }
    }

    /// The real space being complexified.
    pub fn real_spec(&self) -> Result<SpaceSpec> {
        self.build(BaseStructure::real(), real_power_auto)
    }
}

/// `phi_a` becomes `eps_a` (or its conjugate variant), labels kept.
pub fn complexify(c: &ComplexificationSpec) -> Result<SpaceSpec> {
    c.build(BaseStructure::complex(), |a| {
        MultAuto::complex_eps(Complex64::new(a, 0.0), c.conj)
    })
}

fn real_samples(cfg: &Config) -> Vec<f64> {
    let mut xs = grid::real_grid();
    xs.extend([1.0, 0.0]);
    let mut rng = grid::rng(cfg.seed);
    xs.extend((0..cfg.samples).map(|_| grid::sample_real(&mut rng)));
    xs
}

/// `eps_alpha` (both variants) restricted to the reals equals `phi_alpha`.
pub fn restriction_agrees(alpha: f64, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("restriction_agrees");
    let rb = BaseStructure::real();
    let cb = BaseStructure::complex();
    let phi = real_power_auto(alpha)?;
    r.detail("alpha", alpha);
    r.detail("seed", cfg.seed);
    for conj in [false, true] {
        let eps = MultAuto::complex_eps(Complex64::new(alpha, 0.0), conj)?;
        for &x in &real_samples(cfg) {
            let a = phi.apply(&rb, Scalar::Real(x))?.real().unwrap_or(f64::NAN);
            let b = eps.apply(&cb, Scalar::Complex(Complex64::new(x, 0.0)))?;
            r.expect(cb.approx_eq(b, Scalar::Complex(Complex64::new(a, 0.0))), || {
                format!("eps({alpha}, conj={conj})({x}) = {b} but phi gives {a}")
            });
        }
    }
    Ok(r)
}

/// Coordinates `(a, b)` of `z` in the basis `{1, eps_alpha^-1(i)}` over
/// `R_{phi_alpha}`.
pub fn decompose_over_real(z: Complex64, alpha: f64) -> Result<(f64, f64)> {
    let cb = BaseStructure::complex();
    let eps = MultAuto::complex_eps(Complex64::new(alpha, 0.0), false)?;
    let w = eps.apply(&cb, Scalar::Complex(z))?.complex().unwrap_or_default();
    let back = real_power_auto(1.0 / alpha)?;
    let rb = BaseStructure::real();
    let a = back.apply(&rb, Scalar::Real(w.re))?.real().unwrap_or(0.0);
    let b = back.apply(&rb, Scalar::Real(w.im))?.real().unwrap_or(0.0);
    Ok((a, b))
}

/// `a +_{eps_alpha} b eps_alpha^-1(i)`.
pub fn reconstruct_from_real(a: f64, b: f64, alpha: f64) -> Result<Complex64> {
    let cb = BaseStructure::complex();
    let eps = MultAuto::complex_eps(Complex64::new(alpha, 0.0), false)?;
    let x = eps.inverse(&cb)?.apply(&cb, Scalar::Complex(Complex64::i()))?;
    let bx = cb.mul(Scalar::Complex(Complex64::new(b, 0.0)), x)?;
    let z = cb.induced_add(&eps, Scalar::Complex(Complex64::new(a, 0.0)), bx)?;
    Ok(z.complex().unwrap_or_default())
}

/// `|x x +_eps 1|` at `x = eps^-1(i)`.
pub fn minimal_poly_residual(alpha: Complex64, conj: bool) -> Result<f64> {
    let cb = BaseStructure::complex();
    let eps = MultAuto::complex_eps(alpha, conj)?;
    let x = eps.inverse(&cb)?.apply(&cb, Scalar::Complex(Complex64::i()))?;
    let v = cb.induced_add(&eps, cb.mul(x, x)?, cb.one())?;
    Ok(v.complex().unwrap_or_default().norm())
}

fn complex_samples(cfg: &Config) -> Vec<Complex64> {
    let mut zs = grid::complex_grid();
    zs.push(Complex64::new(0.0, 0.0));
    let mut rng = grid::rng(cfg.seed);
    zs.extend((0..cfg.samples / 10).map(|_| grid::sample_complex(&mut rng)));
    zs
}

/// `+_{eps_alpha}` and `+_{conj-eps_{conj alpha}}` agree, while the unpaired
/// exponent `alpha + 1` (`alpha + 2` when that has zero real part) gives a
/// different addition somewhere on the grid.
pub fn conj_pair_check(alpha: Complex64, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("conj_pair");
    let cb = BaseStructure::complex();
    let e = MultAuto::complex_eps(alpha, false)?;
    let pair = MultAuto::complex_eps(alpha.conj(), true)?;
    let control_alpha = if alpha.re == -1.0 { alpha + 2.0 } else { alpha + 1.0 };
    let control = MultAuto::complex_eps(control_alpha, false)?;
    r.detail("alpha", json!([alpha.re, alpha.im]));
    r.detail("seed", cfg.seed);
    let zs = complex_samples(cfg);
    let mut witness = None;
    for &x in &zs {
        for &y in &zs {
            let (x, y) = (Scalar::Complex(x), Scalar::Complex(y));
            let a = cb.induced_add(&e, x, y)?;
            let b = cb.induced_add(&pair, x, y)?;
            r.expect(cb.approx_eq(a, b), || format!("{x} + {y}: {a} vs {b}"));
            if witness.is_none() {
                let c = cb.induced_add(&control, x, y)?;
                if !cb.approx_eq(a, c) {
                    witness = Some(json!({
                        "x": cb.scalar_to_json(x),
                        "y": cb.scalar_to_json(y),
                        "paired": cb.scalar_to_json(a),
                        "unpaired": cb.scalar_to_json(c),
                    }));
                }
            }
        }
    }
    match witness {
        Some(w) => r.detail("unpaired_witness", w),
        None => r.fail(format!(
            "exponent {control_alpha} induced the same addition on every sample"
        )),
    }
    r.detail("unpaired_alpha", json!([control_alpha.re, control_alpha.im]));
    Ok(r)
}

/// Abelian group laws of `+_sigma` on `cfg.samples` seeded triples, relative
/// tolerance of `base`.
pub fn induced_addition_laws(base: &BaseStructure, sigma: &MultAuto, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("induced_addition_laws");
    let mut rng = grid::rng(cfg.seed);
    let mut draw = || match base {
        BaseStructure::Complex { .. } => Ok(Scalar::Complex(grid::sample_complex(&mut rng))),
        BaseStructure::Real { .. } => Ok(Scalar::Real(grid::sample_real(&mut rng))),
        _ => Err(Error::InvalidArgument(format!(
            "{} is not a continuous base",
            base.name()
        ))),
    };
    let mut triples = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        triples.push((draw()?, draw()?, draw()?));
    }
    let add = |x, y| base.induced_add(sigma, x, y);
    let zero = base.zero();
    for (x, y, z) in triples {
        r.expect(base.approx_eq(add(x, y)?, add(y, x)?), || {
            format!("not commutative at {x}, {y}")
        });
        let lhs = add(add(x, y)?, z)?;
        let rhs = add(x, add(y, z)?)?;
        r.expect(base.approx_eq(lhs, rhs), || {
            format!("not associative at {x}, {y}, {z}: {lhs} vs {rhs}")
        });
        r.expect(base.approx_eq(add(x, zero)?, x), || format!("0 is not neutral at {x}"));
        let nx = base.neg(x)?;
        r.expect(base.approx_eq(add(x, nx)?, zero), || {
            format!("{nx} is not the inverse of {x}")
        });
    }
    r.detail("samples", cfg.samples);
    r.detail("seed", cfg.seed);
    Ok(r)
}

/// In `R^{Phi,Id}` truncated to `exponents`: axis vectors are in the
/// quasi-kernel and every vector with two or more nonzero coordinates is
/// not, with a witness.
pub fn axis_quasi_kernel_report(exponents: &[f64], cfg: &Config) -> Result<Report> {
    if exponents.len() < 2 {
        return Err(Error::InvalidArgument("need at least two exponents".into()));
    }
    for (i, a) in exponents.iter().enumerate() {
        if exponents[..i].contains(a) {
            return Err(Error::InvalidArgument(format!("exponent {a} is repeated")));
        }
    }
    let spec = SpaceSpec::real_powers(exponents)?;
    let base = spec.base().clone();
    let labels = spec.labels().to_vec();
    let d = labels.len();
    let mut r = Report::new("axis_quasi_kernel");
    let scales = [1.0, -2.5, 0.5];
    for l in &labels {
        for &c in &scales {
            let v = SparseVector::single(l, Scalar::Real(c));
            let m = in_quasi_kernel(&spec, &v, cfg)?;
            r.expect(m.member, || format!("axis vector {c} e_{l} rejected"));
        }
    }
    let mut rng = grid::rng(cfg.seed);
    let mut witnesses = Vec::new();
    for mask in 1u32..(1 << d) {
        if mask.count_ones() < 2 {
            continue;
        }
        let support: Vec<&String> = (0..d).filter(|i| mask >> i & 1 == 1).map(|i| &labels[i]).collect();
        let ones = SparseVector::from_pairs(support.iter().map(|l| (l.as_str(), Scalar::Real(1.0))));
        let sampled = SparseVector::from_pairs(
            support
                .iter()
                .map(|l| (l.as_str(), Scalar::Real(grid::sample_real(&mut rng)))),
        );
        for v in [ones, sampled] {
            let m = in_quasi_kernel(&spec, &v, cfg)?;
            match m.witness {
                Some(w) if !m.member => witnesses.push(json!({
                    "vector": spec.vector_to_json(&v),
                    "witness": w.to_json(&base),
                })),
                _ => r.violation(format!("{v:?} passed every sampled pair")),
            }
            r.checked += 1;
        }
    }
    r.detail("exponents", exponents.to_vec());
    r.detail("seed", cfg.seed);
    r.detail("witnesses", witnesses);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_power_examples() {
        let rb = BaseStructure::real();
        let at = |a: f64, x: f64| {
            real_power_auto(a)
                .unwrap()
                .apply(&rb, Scalar::Real(x))
                .unwrap()
                .real()
                .unwrap()
        };
        assert_eq!(at(3.0, -2.0), -8.0);
        assert_eq!(at(1.0, -2.0), -2.0);
        assert!((at(0.5, 9.0) - 3.0).abs() < 1e-12);
        assert!(real_power_auto(0.0).is_err());
    }

    #[test]
    fn complexify_examples() {
        let s = complexify(&ComplexificationSpec::new(vec![2.0], vec![1.0], false)).unwrap();
        assert_eq!(s.sigma()[0], MultAuto::complex_eps(c(2.0, 0.0), false).unwrap());
        assert_eq!(s.rho()[0], MultAuto::identity(s.base()));
        let id = complexify(&ComplexificationSpec::new(vec![1.0], vec![1.0], false)).unwrap();
        assert!(id.sigma()[0].is_identity(id.base()));
        let s = complexify(&ComplexificationSpec::new(vec![3.0, 0.5], vec![1.0, 1.0], true)).unwrap();
        assert_eq!(s.sigma()[1], MultAuto::complex_eps(c(0.5, 0.0), true).unwrap());
        let mut spec = ComplexificationSpec::new(vec![2.0], vec![0.0], false);
        assert!(complexify(&spec).is_err());
        spec.s = vec![1.0];
        spec.labels = Some(vec!["x".into()]);
        assert_eq!(complexify(&spec).unwrap().labels(), ["x"]);
        assert_eq!(spec.real_spec().unwrap().labels(), ["x"]);
    }

    #[test]
    fn spec_json_shape() {
        let v: ComplexificationSpec = serde_json::from_str(r#"{"T":[2],"S":[1],"conj":true}"#).unwrap();
        assert_eq!(v, ComplexificationSpec::new(vec![2.0], vec![1.0], true));
        assert_eq!(
            serde_json::to_value(&v).unwrap(),
            json!({"T":[2.0],"S":[1.0],"conj":true})
        );
    }

    #[test]
    fn restriction_examples() {
        let cb = BaseStructure::complex();
        let e2 = MultAuto::complex_eps(c(2.0, 0.0), false).unwrap();
        let v = e2.apply(&cb, Scalar::Complex(c(-3.0, 0.0))).unwrap();
        assert!(cb.approx_eq(v, Scalar::Complex(c(-9.0, 0.0))));
        for a in [2.0, 0.5, -1.5, 1.0] {
            let r = restriction_agrees(a, &Config::default()).unwrap();
            assert!(r.pass, "{:?}", r.violations);
        }
    }

    #[test]
    fn decomposition_examples() {
        let (a, b) = decompose_over_real(c(3.0, 4.0), 2.0).unwrap();
        assert!((a - 15f64.sqrt()).abs() < 1e-12 && (b - 20f64.sqrt()).abs() < 1e-12);
        let z = reconstruct_from_real(a, b, 2.0).unwrap();
        assert!(grid::approx_eq_complex(z, c(3.0, 4.0), 1e-9));
        let (a, b) = decompose_over_real(c(-2.0, 0.0), 0.7).unwrap();
        assert!((a + 2.0).abs() < 1e-12 && b == 0.0);
        let (a, b) = decompose_over_real(Complex64::i(), 2.0).unwrap();
        assert!(a.abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        assert_eq!(decompose_over_real(c(0.0, 0.0), 3.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn residual_examples() {
        assert!(minimal_poly_residual(c(2.0, 0.0), false).unwrap() < 1e-9);
        assert!(minimal_poly_residual(c(2.0, 1.0), false).unwrap() < 1e-9);
        assert!(minimal_poly_residual(c(3.0, 0.0), true).unwrap() < 1e-9);
        let cb = BaseStructure::complex();
        let bar3 = MultAuto::complex_eps(c(3.0, 0.0), true).unwrap();
        let x = bar3
            .inverse(&cb)
            .unwrap()
            .apply(&cb, Scalar::Complex(Complex64::i()))
            .unwrap();
        assert!(cb.approx_eq(x, Scalar::Complex(c(0.0, -1.0))));
    }

    #[test]
    fn conj_pair_examples() {
        let cfg = Config::default();
        for a in [c(2.0, 0.0), c(1.0, 0.0), c(1.5, 0.0), c(2.0, 1.0)] {
            let r = conj_pair_check(a, &cfg).unwrap();
            assert!(r.pass, "{a}: {:?}", r.violations);
            assert!(r.details.contains_key("unpaired_witness"));
        }
    }

    #[test]
    fn induced_laws_hold() {
        let cfg = Config::default();
        let r = induced_addition_laws(&BaseStructure::real(), &MultAuto::RealPower(3.0), &cfg).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        let e = MultAuto::complex_eps(c(2.0, 1.0), true).unwrap();
        let r = induced_addition_laws(&BaseStructure::complex(), &e, &cfg).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert!(induced_addition_laws(&BaseStructure::galois(5, 1).unwrap(), &MultAuto::FinitePower(1), &cfg).is_err());
    }

    #[test]
    fn axis_examples() {
        let cfg = Config::default();
        let r = axis_quasi_kernel_report(&[1.0, 2.0], &cfg).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        let w = &r.details["witnesses"][0];
        assert_eq!(w["vector"], json!({"entries": {"1": 1.0, "2": 1.0}}));
        assert_eq!(w["witness"]["alpha"], json!(1.0));
        assert_eq!(w["witness"]["beta"], json!(1.0));
        assert_eq!(w["witness"]["gamma"], json!(2.0));
        assert!((w["witness"]["conflict_gamma"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let r = axis_quasi_kernel_report(&[1.0, 2.0, 3.0], &cfg).unwrap();
        assert!(r.pass);
        assert!(r.details["witnesses"]
            .as_array()
            .unwrap()
            .iter()
            .any(|w| w["vector"] == json!({"entries": {"1": 1.0, "3": 1.0}})));
        assert!(axis_quasi_kernel_report(&[1.0], &cfg).is_err());
        assert!(axis_quasi_kernel_report(&[2.0, 2.0], &cfg).is_err());
    }
}
