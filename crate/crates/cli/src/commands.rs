use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde_json::{json, Value};

use nvs_core::auto::{enumerate_mult_autos, mult_properties_check, same_addition};
use nvs_core::base::{divisionring_transport_check, nearfield_axiom_check, scalar_group_axiom_check};
use nvs_core::canonical::{is_multiplicative, product_hypotheses};
use nvs_core::complexify::{
    complexify, conj_pair_check, induced_addition_laws, minimal_poly_residual, restriction_agrees, ComplexificationSpec,
};
use nvs_core::galois::unit_classification_bounded;
use nvs_core::space::{
    ddot_classes, is_regular_bruteforce, nvs_axiom_check, quasi_kernel_bruteforce, quasi_kernel_closed,
    quasi_kernel_refined, regular_decomposition, tilde_classes, QkSet, SpaceSpec,
};
use nvs_core::{BaseStructure, Config, MultAuto, Report};

use crate::output::{self, cell, json as render, tsv, Output, REPORT_HEADER};
use crate::{Cli, Command, Format, SpaceAction};

pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = cli.config();
    match &cli.command {
        Command::Classify { p, n } => classify(cli, &cfg, *p, *n),
        Command::Autos { base } => autos(cli, &cfg, &parse_base(base, cli, &cfg)?),
        Command::CheckBase { base } => check_base(cli, &cfg, &parse_base(base, cli, &cfg)?),
        Command::Space { file, action } => {
            let spec = read_spec(file, cli, &cfg)?;
            space(cli, &cfg, &spec, *action)
        }
        Command::Complexify { file, conj } => run_complexify(cli, &cfg, file, *conj),
    }
}

/// `GF(p)`, `GF(p^n)`, `GF(q)` with `q` a prime power, `R`, `C` or `dickson9`.
pub fn parse_base(s: &str, cli: &Cli, cfg: &Config) -> Result<BaseStructure> {
    let t = s.trim().to_ascii_lowercase();
    let tol = cli.tolerance();
    let base = match t.as_str() {
        "r" | "real" | "reals" => BaseStructure::real().with_tolerance(tol),
        "c" | "complex" => BaseStructure::complex().with_tolerance(tol),
        "dickson9" | "d9" => BaseStructure::dickson9(),
        _ => {
            let inner = t
                .strip_prefix("gf(")
                .and_then(|r| r.strip_suffix(')'))
                .with_context(|| format!("unrecognised base {s:?}; expected GF(p^n), R, C or dickson9"))?;
            let (p, n) = match inner.split_once('^') {
                Some((p, n)) => (p.trim().parse::<u64>()?, n.trim().parse::<u32>()?),
                None => prime_power(inner.trim().parse::<u64>()?)
                    .with_context(|| format!("{inner} is not a prime power"))?,
            };
            BaseStructure::galois_bounded(p, n, cfg.bounds.field_order)?
        }
    };
    Ok(base)
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut n = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_spec(path: &Path, cli: &Cli, cfg: &Config) -> Result<SpaceSpec> {
    let mut v = read_json(path)?;
    if let (Some(t), Some(base)) = (cli.tol, v.get_mut("base").and_then(Value::as_object_mut)) {
        if matches!(base.get("kind").and_then(Value::as_str), Some("real" | "complex")) {
            base.insert("tolerance".into(), json!(t));
        }
    }
    SpaceSpec::from_json(&v, cfg).with_context(|| format!("in {}", path.display()))
}

fn classify(cli: &Cli, cfg: &Config, p: u64, n: u32) -> Result<Output> {
    let c = unit_classification_bounded(p, n, cfg.bounds.field_order)?;
    let text = match cli.format {
        Format::Json => render(&json!({
            "field": format!("GF({p}^{n})"),
            "order": p.pow(n),
            "class_count": c.class_count(),
            "representatives": c.representatives(),
            "classes": c.classes,
        })),
        Format::Tsv => {
            let rows: Vec<Vec<String>> = c
                .classes
                .iter()
                .enumerate()
                .map(|(i, cl)| {
                    let exps: Vec<String> = cl.iter().map(u64::to_string).collect();
                    vec![
                        (i + 1).to_string(),
                        cl.len().to_string(),
                        cl[0].to_string(),
                        exps.join(","),
                    ]
                })
                .collect();
            tsv(&["class", "size", "representative", "exponents"], &rows)
        }
    };
    Ok(Output::new(text, &[]))
}

fn autos(cli: &Cli, cfg: &Config, base: &BaseStructure) -> Result<Output> {
    let autos = enumerate_mult_autos(base)?;
    let mut reports = Vec::new();
    let mut entries = Vec::new();
    for (i, a) in autos.iter().enumerate() {
        let class = (0..=i)
            .find(|&j| same_addition(&autos[j], a, base, cfg).unwrap_or(false))
            .unwrap_or(i);
        let r = mult_properties_check(a, base, cfg)?;
        entries.push(json!({
            "index": i,
            "auto": a.to_json(base),
            "nearfield_automorphism": base.is_nearfield_automorphism(a, cfg)?,
            "addition_class": class,
            "properties": r.pass,
        }));
        reports.push(r);
    }
    let text = match cli.format {
        Format::Json => render(&json!({ "base": base.name(), "count": autos.len(), "automorphisms": entries })),
        Format::Tsv => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| {
                    [
                        "index",
                        "auto",
                        "nearfield_automorphism",
                        "addition_class",
                        "properties",
                    ]
                    .iter()
                    .map(|k| cell(&e[*k]))
                    .collect()
                })
                .collect();
            tsv(
                &[
                    "index",
                    "auto",
                    "nearfield_automorphism",
                    "addition_class",
                    "properties",
                ],
                &rows,
            )
        }
    };
    let refs: Vec<&Report> = reports.iter().collect();
    Ok(Output::new(text, &refs))
}

fn check_base(cli: &Cli, cfg: &Config, base: &BaseStructure) -> Result<Output> {
    let mut info = json!({ "base": base.name() });
    let mut reports = Vec::new();
    if base.finite().is_none() {
        let id = MultAuto::identity(base);
        reports.push(induced_addition_laws(base, &id, cfg)?);
        reports.push(mult_properties_check(&id, base, cfg)?);
        info["sampled"] = json!(true);
    } else {
        reports.push(scalar_group_axiom_check(base, cfg)?);
        reports.push(nearfield_axiom_check(base, cfg)?);
        let mut transport = Report::new("divisionring_transport");
        for a in enumerate_mult_autos(base)? {
            transport.absorb(divisionring_transport_check(base, &a, cfg)?);
        }
        transport.details.clear();
        reports.push(transport);
        let fd = base.distributive_elements(None, cfg)?;
        info["distributive_elements"] = fd.iter().map(|&x| base.scalar_to_json(x)).collect();
    }
    // reported, not part of the exit status
    let hyp = product_hypotheses(base, cfg)?;
    let text = match cli.format {
        Format::Json => {
            info["checks"] = serde_json::to_value(&reports)?;
            info["product_hypotheses"] = serde_json::to_value(&hyp)?;
            render(&info)
        }
        Format::Tsv => {
            let mut all: Vec<&Report> = reports.iter().collect();
            all.push(&hyp);
            tsv(&REPORT_HEADER, &output::report_rows(&all))
        }
    };
    let refs: Vec<&Report> = reports.iter().collect();
    Ok(Output::new(text, &refs))
}

fn set_json(spec: &SpaceSpec, q: &QkSet) -> Vec<Value> {
    q.vectors().iter().map(|v| spec.vector_to_json(v)).collect()
}

fn vector_rows(spec: &SpaceSpec, q: &QkSet) -> Vec<Vec<String>> {
    let base = spec.base();
    q.vectors()
        .iter()
        .map(|v| {
            spec.labels()
                .iter()
                .map(|l| cell(&base.scalar_to_json(v.get(l).unwrap_or(base.zero()))))
                .collect()
        })
        .collect()
}

fn space(cli: &Cli, cfg: &Config, spec: &SpaceSpec, action: SpaceAction) -> Result<Output> {
    let labels: Vec<&str> = spec.labels().iter().map(String::as_str).collect();
    match action {
        SpaceAction::Qk => {
            let tilde = tilde_classes(spec, cfg)?;
            let ddot = ddot_classes(spec, cfg)?;
            if spec.base().finite().is_none() {
                let text = match cli.format {
                    Format::Json => render(&json!({
                        "base": spec.base().name(),
                        "enumerable": false,
                        "axes": spec.dim(),
                        "tilde_classes": tilde.blocks,
                        "ddot_classes": ddot.blocks,
                    })),
                    Format::Tsv => tsv(&["class", "labels"], &class_rows(&ddot.blocks)),
                };
                return Ok(Output::new(text, &[]));
            }
            let q = quasi_kernel_bruteforce(spec, cfg)?;
            let text = match cli.format {
                Format::Json => render(&json!({
                    "base": spec.base().name(),
                    "size": q.len(),
                    "axes": spec.dim(),
                    "tilde_classes": tilde.blocks,
                    "ddot_classes": ddot.blocks,
                    "elements": set_json(spec, &q),
                })),
                Format::Tsv => tsv(&labels, &vector_rows(spec, &q)),
            };
            Ok(Output::new(text, &[]))
        }
        SpaceAction::Decompose => {
            let blocks = regular_decomposition(spec, cfg)?;
            let finite = spec.base().finite().is_some();
            let mut regular = Vec::new();
            for b in &blocks {
                regular.push(if finite {
                    Some(is_regular_bruteforce(&b.spec, cfg)?)
                } else {
                    None
                });
            }
            let pass = regular.iter().all(|r| r.unwrap_or(true));
            let text = match cli.format {
                Format::Json => render(&json!({
                    "base": spec.base().name(),
                    "blocks": blocks.iter().zip(&regular).map(|(b, r)| json!({
                        "labels": b.labels,
                        "regular": r,
                    })).collect::<Vec<_>>(),
                    "space_regular": if finite { Some(is_regular_bruteforce(spec, cfg)?) } else { None },
                })),
                Format::Tsv => {
                    let rows: Vec<Vec<String>> = blocks
                        .iter()
                        .zip(&regular)
                        .enumerate()
                        .map(|(i, (b, r))| {
                            vec![
                                (i + 1).to_string(),
                                b.labels.join(","),
                                r.map_or("unchecked".to_string(), |r| r.to_string()),
                            ]
                        })
                        .collect();
                    tsv(&["block", "labels", "regular"], &rows)
                }
            };
            Ok(Output::failing(text, pass, "a block failed the regularity check"))
        }
        SpaceAction::Axioms => {
            let r = nvs_axiom_check(spec, cfg)?;
            let text = match cli.format {
                Format::Json => render(&serde_json::to_value(&r)?),
                Format::Tsv => tsv(&REPORT_HEADER, &output::report_rows(&[&r])),
            };
            Ok(Output::new(text, &[&r]))
        }
        SpaceAction::Multiplicative => {
            let m = is_multiplicative(spec, cfg)?;
            let text = match cli.format {
                Format::Json => render(&m.to_json(spec)),
                Format::Tsv => {
                    let rows: Vec<Vec<String>> = m
                        .certificates
                        .iter()
                        .map(|c| {
                            vec![
                                cell(&spec.vector_to_json(&c.vector)["entries"]),
                                cell(&c.auto.to_json(spec.base())),
                            ]
                        })
                        .collect();
                    tsv(&["vector", "auto"], &rows)
                }
            };
            let n = m.unmatched.len();
            Ok(Output::failing(
                text,
                m.multiplicative,
                format!("{n} quasi-kernel vectors have no certificate"),
            ))
        }
        SpaceAction::OracleCompare => oracle_compare(cli, cfg, spec),
    }
}

fn class_rows(blocks: &[Vec<String>]) -> Vec<Vec<String>> {
    blocks
        .iter()
        .enumerate()
        .map(|(i, b)| vec![(i + 1).to_string(), b.join(",")])
        .collect()
}

fn oracle_compare(cli: &Cli, cfg: &Config, spec: &SpaceSpec) -> Result<Output> {
    if spec.base().finite().is_none() {
        bail!("oracle-compare needs a finite base, got {}", spec.base().name());
    }
    let brute = quasi_kernel_bruteforce(spec, cfg)?;
    let closed = quasi_kernel_closed(spec, cfg)?.materialize(spec, cfg)?;
    let refined = quasi_kernel_refined(spec, cfg)?;
    let (only_closed, only_brute) = closed.symmetric_difference(&brute);
    let identical = only_closed.is_empty() && only_brute.is_empty();
    let summary = if identical {
        format!("identical ({} elements)", brute.len())
    } else {
        format!(
            "differ: closed form {} elements, brute force {} ({} only in closed form, {} only in brute force)",
            closed.len(),
            brute.len(),
            only_closed.len(),
            only_brute.len()
        )
    };
    let fs = nvs_core::space::FiniteSpace::new(spec, cfg)?;
    let vecs = |codes: &[u64]| -> Vec<Value> {
        codes
            .iter()
            .map(|&c| spec.vector_to_json(&fs.to_sparse(&fs.decode(c))))
            .collect()
    };
    let text = match cli.format {
        Format::Json => render(&json!({
            "summary": summary,
            "identical": identical,
            "closed_size": closed.len(),
            "bruteforce_size": brute.len(),
            "refined_matches_bruteforce": refined == brute,
            "only_closed": vecs(&only_closed),
            "only_bruteforce": vecs(&only_brute),
        })),
        Format::Tsv => tsv(
            &["key", "value"],
            &[
                vec!["summary".into(), summary.clone()],
                vec!["closed_size".into(), closed.len().to_string()],
                vec!["bruteforce_size".into(), brute.len().to_string()],
                vec!["refined_matches_bruteforce".into(), (refined == brute).to_string()],
            ],
        ),
    };
    Ok(Output::failing(text, identical, summary))
}

fn run_complexify(cli: &Cli, cfg: &Config, path: &Path, conj: bool) -> Result<Output> {
    let mut c: ComplexificationSpec =
        serde_json::from_value(read_json(path)?).with_context(|| format!("in {}", path.display()))?;
    c.conj |= conj;
    let spec = complexify(&c)?;
    let tol = cli.tolerance();
    let exps: BTreeSet<u64> = c.t.iter().chain(&c.s).map(|a| a.to_bits()).collect();
    let mut reports = Vec::new();
    let mut residual = Report::new("minimal_poly_residual");
    let mut residuals = Vec::new();
    for bits in exps {
        let a = f64::from_bits(bits);
        reports.push(restriction_agrees(a, cfg)?);
        reports.push(conj_pair_check(Complex64::new(a, 0.0), cfg)?);
        let res = minimal_poly_residual(Complex64::new(a, 0.0), c.conj)?;
        residual.expect(res <= tol, || format!("residual {res:e} at exponent {a}"));
        residuals.push(json!({ "alpha": a, "conj": c.conj, "residual": res }));
    }
    residual.detail("tolerance", tol);
    residual.detail("values", residuals);
    reports.push(residual);
    let refs: Vec<&Report> = reports.iter().collect();
    let text = match cli.format {
        Format::Json => render(&json!({ "spec": spec.to_json(), "checks": serde_json::to_value(&reports)? })),
        Format::Tsv => tsv(&REPORT_HEADER, &output::report_rows(&refs)),
    };
    Ok(Output::new(text, &refs))
}
