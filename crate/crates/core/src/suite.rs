//! Named checks, parameter grids, and the default verification suite.
//!
//! Every check is a pure function from exact inputs to a `CheckRecord`; the
//! suite runner executes a configured list in order with one shared seed, so
//! reports are reproducible byte for byte.

use std::time::Instant;

use num_traits::{One, Zero};

use crate::casimir::{casimir_oracle, casimir_scalar, CasimirOutcome};
use crate::classify::{classify_and_predict, Prediction};
use crate::coherent::coherent_checks;
use crate::derham::{derham_image_check, witten_compare, DeRhamComplex};
use crate::expr::parse_twist_expr;
use crate::glmod::{parse_module_spec, GlModule};
use crate::hfree::{
    build_hfree, build_nilsson, nilsson_correspondence_check, verify_intertwiner,
    weighting_fiber_oracle_check, weighting_iso_check,
};
use crate::poly::MultiPoly;
use crate::present::build_omega;
use crate::prng::Prng;
use crate::rational::{rat_from_str, rat_to_string, rint, Rat};
use crate::report::{CheckRecord, CheckStatus};
use crate::simplicity::{simplicity_witness, SimplicityVerdict};
use crate::sl::sl_basis;
use crate::tensor::{model_equivalence_check, TensorContext, TensorVector};
use crate::weyl::Twist;
use crate::whittaker::{whittaker_check, WhittakerOutcome};

/// One executable check with its exact parameters.
#[derive(Debug, Clone)]
pub enum Check {
    /// Bracket-table verification of the differential-operator presentation.
    Relations { n: usize, v: String, s: Vec<usize> },
    /// Direct table equals the variable-twisted empty-set table; the twist
    /// has order four on every image.
    FourierCoherence { n: usize, v: String, s: Vec<usize> },
    /// Simplicity verdict against the classifier prediction.
    Simplicity { n: usize, v: String, s: Vec<usize>, g: String, box_n: i64, window: i64 },
    /// Image-of-differential certificate for exterior powers.
    ExteriorImage { n: usize, k: usize, s: Vec<usize>, g: String, box_n: i64 },
    /// Classifier against the weight-window search.
    ClassifierConsistency { n: usize, lam: Vec<Rat>, s: Vec<usize>, window: i64 },
    /// Square-zero and equivariance of the graded differential.
    DeRham { n: usize, s: Vec<usize>, g: String, box_n: i64, randoms: usize },
    /// Deformed differential against the classical one at full S.
    Witten { n: usize, g: String, deg: i64 },
    /// Eigenvector property of the exponential vector.
    Whittaker { n: usize, b: Vec<Rat>, s: Vec<usize>, v: String, l: usize },
    /// Weight multiplicities and root-map injectivity on a window.
    Coherent { n: usize, v: String, s: Vec<usize>, lam: Vec<Rat>, radius: i64 },
    /// Bracket table of the free realization plus h-multiplication shape.
    HFree { n: usize, b: Vec<Rat>, v: String, s: Vec<usize> },
    /// Bracket table of the rank-one difference realization.
    Nilsson { n: usize, b: Rat, s: Vec<usize> },
    /// Rank-one correspondence between the two realizations.
    NilssonCorrespondence { n: usize, a: Rat, b: Vec<Rat>, s: Vec<usize> },
    /// The explicit intertwiner transports the action.
    Intertwiner { n: usize, b: Vec<Rat>, v: String, s: Vec<usize>, deg: i64 },
    /// Weighting fibers against the coherent family, sampled.
    Weighting { n: usize, b: Vec<Rat>, v: String, s: Vec<usize>, samples: usize },
    /// Central element acts by the same scalar across realizations.
    Casimir { n: usize, v: String, lam: Vec<Rat>, g: String },
    /// Polynomial and corner models agree through the basis bijection.
    ModelEquivalence { n: usize, v: String, s: Vec<usize>, g: String, deg: i64 },
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Relations { .. } => "relations",
            Check::FourierCoherence { .. } => "fourier",
            Check::Simplicity { .. } => "simplicity",
            Check::ExteriorImage { .. } => "exterior",
            Check::ClassifierConsistency { .. } => "classify",
            Check::DeRham { .. } => "derham",
            Check::Witten { .. } => "witten",
            Check::Whittaker { .. } => "whittaker",
            Check::Coherent { .. } => "coherent",
            Check::HFree { .. } => "hfree",
            Check::Nilsson { .. } => "nilsson",
            Check::NilssonCorrespondence { .. } => "nilsson-correspondence",
            Check::Intertwiner { .. } => "intertwiner",
            Check::Weighting { .. } => "weighting",
            Check::Casimir { .. } => "casimir",
            Check::ModelEquivalence { .. } => "model-equivalence",
        }
    }
}

pub fn set_to_string(s: &[usize]) -> String {
    if s.is_empty() {
        "{}".to_string()
    } else {
        format!(
            "{{{}}}",
            s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

fn rats_to_string(v: &[Rat]) -> String {
    v.iter().map(rat_to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub entries: Vec<Check>,
}

/// Executes the configured checks in order. Unknown module specs or
/// malformed polynomials surface as errors before any check runs.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, String> {
    // validate first so a bad entry rejects the whole configuration
    for check in &cfg.entries {
        validate(check)?;
    }
    let mut prng = Prng::new(cfg.seed);
    let mut out = Vec::with_capacity(cfg.entries.len());
    for check in &cfg.entries {
        out.push(run_check(check, &mut prng));
    }
    Ok(out)
}

fn validate(check: &Check) -> Result<(), String> {
    // weight tuples must match the rank before anything runs
    match check {
        Check::ClassifierConsistency { n, lam, .. }
        | Check::Coherent { n, lam, .. }
        | Check::Casimir { n, lam, .. } => {
            if lam.len() != *n {
                return Err(format!(
                    "{}: lam needs {} components, got {}",
                    check.name(),
                    n,
                    lam.len()
                ));
            }
        }
        Check::Whittaker { n, b, .. } => {
            if b.len() != *n + 1 {
                return Err(format!(
                    "{}: b needs {} components, got {}",
                    check.name(),
                    n + 1,
                    b.len()
                ));
            }
        }
        Check::HFree { n, b, .. } | Check::Intertwiner { n, b, .. }
        | Check::Weighting { n, b, .. } => {
            if b.len() != *n {
                return Err(format!(
                    "{}: b needs {} components, got {}",
                    check.name(),
                    n,
                    b.len()
                ));
            }
        }
        _ => {}
    }
    let (n, v, g) = match check {
        Check::Relations { n, v, .. } | Check::FourierCoherence { n, v, .. } => {
            (*n, Some(v.clone()), None)
        }
        Check::Simplicity { n, v, g, .. } => (*n, Some(v.clone()), Some(g.clone())),
        Check::ExteriorImage { n, g, .. } => (*n, None, Some(g.clone())),
        Check::ClassifierConsistency { n, .. } => (*n, None, None),
        Check::DeRham { n, g, .. } => (*n, None, Some(g.clone())),
        Check::Witten { n, g, .. } => (*n, None, Some(g.clone())),
        Check::Whittaker { n, v, .. } => (*n, Some(v.clone()), None),
        Check::Coherent { n, v, .. } => (*n, Some(v.clone()), None),
        Check::HFree { n, v, .. } => (*n, Some(v.clone()), None),
        Check::Nilsson { n, .. } => (*n, None, None),
        Check::NilssonCorrespondence { n, .. } => (*n, None, None),
        Check::Intertwiner { n, v, .. } => (*n, Some(v.clone()), None),
        Check::Weighting { n, v, .. } => (*n, Some(v.clone()), None),
        Check::Casimir { n, v, g, .. } => (*n, Some(v.clone()), Some(g.clone())),
        Check::ModelEquivalence { n, v, g, .. } => (*n, Some(v.clone()), Some(g.clone())),
    };
    if let Some(v) = v {
        parse_module_spec(&v, n).map_err(|e| format!("{}: {e}", check.name()))?;
    }
    if let Some(g) = g {
        parse_twist_expr(&g, n).map_err(|e| format!("{}: {e}", check.name()))?;
    }
    Ok(())
}

pub fn run_check(check: &Check, prng: &mut Prng) -> CheckRecord {
    let start = Instant::now();
    let mut record = execute(check, prng);
    record.runtime_ms = start.elapsed().as_millis() as u64;
    record
}

fn execute(check: &Check, prng: &mut Prng) -> CheckRecord {
    match check {
        Check::Relations { n, v, s } => {
            let record = CheckRecord::new("relations")
                .param("n", n.to_string())
                .param("V", v.clone())
                .param("S", set_to_string(s));
            let module = parse_module_spec(v, *n).expect("validated");
            if let Err(e) = module.verify() {
                return record.fail(format!("module constructor: {e}"));
            }
            let verdict = build_omega(&module, s).verify();
            if verdict.passed() {
                record
            } else {
                let f = &verdict.failures[0];
                record.fail(format!(
                    "[{}, {}] residual {} ({} failing pairs)",
                    f.x.text(),
                    f.y.text(),
                    f.residual,
                    verdict.failures.len()
                ))
            }
        }
        Check::FourierCoherence { n, v, s } => {
            let record = CheckRecord::new("fourier")
                .param("n", n.to_string())
                .param("V", v.clone())
                .param("S", set_to_string(s));
            let module = parse_module_spec(v, *n).expect("validated");
            let base = build_omega(&module, &[]);
            let direct = build_omega(&module, s);
            let tw = Twist::Fourier(s.iter().map(|&i| i - 1).collect());
            let twisted = base.twist_operator(&tw);
            for x in sl_basis(*n) {
                if !direct.image(&x).equals(twisted.image(&x)) {
                    return record.fail(format!("tables differ at {}", x.text()));
                }
                let mut four = direct.image(&x).clone();
                for _ in 0..4 {
                    four = four.map_entries(|e| e.twist(&tw));
                }
                if !four.equals(direct.image(&x)) {
                    return record.fail(format!("twist order four fails at {}", x.text()));
                }
            }
            record
        }
        Check::Simplicity { n, v, s, g, box_n, window } => {
            let record = CheckRecord::new("simplicity")
                .param("n", n.to_string())
                .param("V", v.clone())
                .param("S", set_to_string(s))
                .param("g", g.clone())
                .param("box", box_n.to_string());
            let module = parse_module_spec(v, *n).expect("validated");
            let twist = parse_twist_expr(g, *n).expect("validated");
            let lam = module.top_weight();
            let expected = match classify_and_predict(&lam, s) {
                Ok((_, p)) => Some(p),
                Err(_) => None,
            };
            let ctx = match TensorContext::new(*n, s.clone(), twist, module) {
                Ok(c) => c,
                Err(e) => return record.fail(e),
            };
            let verdict = simplicity_witness(&ctx, *box_n, *window);
            let record = record.param("verdict", verdict.detail());
            match (&verdict, expected) {
                (SimplicityVerdict::Inconclusive { detail }, _) => {
                    record.inconclusive(detail.clone())
                }
                (v, Some(Prediction::Simple)) if v.is_simple() => record,
                (v, Some(Prediction::NotSimple)) if v.is_proper() => record,
                (v, None) => record.inconclusive(format!(
                    "no classifier prediction available; verdict: {}",
                    v.detail()
                )),
                (v, Some(p)) => record.fail(format!(
                    "verdict {} contradicts prediction {:?}",
                    v.detail(),
                    p
                )),
            }
        }
        Check::ExteriorImage { n, k, s, g, box_n } => {
            let record = CheckRecord::new("exterior")
                .param("n", n.to_string())
                .param("k", k.to_string())
                .param("S", set_to_string(s))
                .param("g", g.clone());
            let twist = parse_twist_expr(g, *n).expect("validated");
            if *k == 0 || *k == *n {
                // boundary degrees reduce to the one-dimensional branches
                let a = if *k == 0 { Rat::zero() } else { Rat::one() };
                let module = GlModule::one_dim(*n, a.clone());
                let lam: Vec<Rat> = vec![a; *n];
                let expected = classify_and_predict(&lam, s).expect("dominant").1;
                let ctx = TensorContext::new(*n, s.clone(), twist, module).expect("valid");
                let verdict = simplicity_witness(&ctx, *box_n, 4);
                return match (&verdict, expected) {
                    (v, Prediction::Simple) if v.is_simple() => record,
                    (v, Prediction::NotSimple) if v.is_proper() => record,
                    (v, p) => record.fail(format!(
                        "boundary degree verdict {} contradicts {:?}",
                        v.detail(),
                        p
                    )),
                };
            }
            match derham_image_check(*n, s.clone(), twist, *k, *box_n) {
                Ok(report) if report.certifies_nonsimplicity() => record,
                Ok(report) => record.fail(report.detail),
                Err(e) => record.fail(e),
            }
        }
        Check::ClassifierConsistency { n, lam, s, window } => {
            let record = CheckRecord::new("classify")
                .param("n", n.to_string())
                .param("lam", rats_to_string(lam))
                .param("S", set_to_string(s));
            let (class, prediction) = match classify_and_predict(lam, s) {
                Ok(x) => x,
                Err(e) => return record.fail(format!("classifier: {e}")),
            };
            let record = record.param("class", class.text());
            let module = match GlModule::highest_weight(*n, lam) {
                Ok(m) => m,
                Err(_) => {
                    // not constructible as a finite module: classification only
                    return record;
                }
            };
            let ctx = TensorContext::new(*n, s.clone(), MultiPoly::zero(*n, false), module)
                .expect("valid");
            let verdict = simplicity_witness(&ctx, *window, *window);
            let search = match &verdict {
                SimplicityVerdict::SimpleWitnessed { .. } => "simple",
                SimplicityVerdict::ProperSubmodule { .. } => "not-simple",
                SimplicityVerdict::Inconclusive { .. } => "inconclusive",
            };
            let record = record.param("search", search);
            match (&verdict, prediction) {
                (SimplicityVerdict::Inconclusive { .. }, _) => record,
                (v, Prediction::Simple) if v.is_simple() => record,
                (v, Prediction::NotSimple) if v.is_proper() => record,
                (v, p) => record.fail(format!(
                    "decided contradiction: search {} vs prediction {:?}",
                    v.detail(),
                    p
                )),
            }
        }
        Check::DeRham { n, s, g, box_n, randoms } => {
            let record = CheckRecord::new("derham")
                .param("n", n.to_string())
                .param("S", set_to_string(s))
                .param("g", g.clone())
                .param("N", box_n.to_string());
            let twist = parse_twist_expr(g, *n).expect("validated");
            let complex = match DeRhamComplex::new(*n, s.clone(), twist) {
                Ok(c) => c,
                Err(e) => return record.fail(e),
            };
            let mut random_vectors = Vec::new();
            for _ in 0..*randoms {
                let mut v = TensorVector::zero();
                for _ in 0..3 {
                    let m: Vec<i64> = complex
                        .ctx
                        .s_mask()
                        .iter()
                        .map(|&in_s| {
                            let r = prng.below(*box_n as u64 + 1) as i64;
                            if in_s {
                                -1 - r
                            } else {
                                r
                            }
                        })
                        .collect();
                    let l = prng.below(complex.ctx.module.dim as u64) as usize;
                    v.add_term(m, l, prng.small_rat());
                }
                if !v.is_zero() {
                    random_vectors.push(v);
                }
            }
            match complex.verify(*box_n, &random_vectors) {
                Ok(_) => record,
                Err(e) => record.fail(e),
            }
        }
        Check::Witten { n, g, deg } => {
            let record = CheckRecord::new("witten")
                .param("n", n.to_string())
                .param("g", g.clone())
                .param("N", deg.to_string());
            let twist = parse_twist_expr(g, *n).expect("validated");
            match witten_compare(*n, &twist, *deg) {
                Ok(_) => record,
                Err(e) => record.fail(e),
            }
        }
        Check::Whittaker { n, b, s, v, l } => {
            let record = CheckRecord::new("whittaker")
                .param("n", n.to_string())
                .param("b", rats_to_string(b))
                .param("S", set_to_string(s))
                .param("V", v.clone())
                .param("l", (l + 1).to_string());
            let module = parse_module_spec(v, *n).expect("validated");
            match whittaker_check(*n, b, s, &module, *l) {
                Ok(WhittakerOutcome::Pass { .. }) => record,
                Ok(WhittakerOutcome::PreconditionFailed { i, j }) => {
                    record.fail(format!("E{i}{j} does not annihilate the vector"))
                }
                Ok(WhittakerOutcome::EigenFailed { i, j, residual }) => {
                    record.fail(format!("e({i},{j}): {residual}"))
                }
                Err(e) => record.fail(e),
            }
        }
        Check::Coherent { n, v, s, lam, radius } => {
            let record = CheckRecord::new("coherent")
                .param("n", n.to_string())
                .param("V", v.clone())
                .param("S", set_to_string(s))
                .param("lam", rats_to_string(lam))
                .param("r", radius.to_string());
            let module = parse_module_spec(v, *n).expect("validated");
            match coherent_checks(*n, s.clone(), lam.clone(), module, *radius) {
                Ok(report) if report.passed() => record,
                Ok(report) => {
                    let witness = report
                        .multiplicity_failures
                        .iter()
                        .chain(report.injectivity_failures.iter())
                        .cloned()
                        .collect::<Vec<_>>()
                        .join("; ");
                    record.fail(witness)
                }
                Err(e) => record.fail(e),
            }
        }
        Check::HFree { n, b, v, s } => {
            let record = CheckRecord::new("hfree")
                .param("n", n.to_string())
                .param("b", rats_to_string(b))
                .param("V", v.clone())
                .param("S", set_to_string(s));
            let module = parse_module_spec(v, *n).expect("validated");
            let hf = match build_hfree(b, &module, s) {
                Ok(h) => h,
                Err(e) => return record.fail(e),
            };
            let verdict = hf.presentation.verify();
            if !verdict.passed() {
                let f = &verdict.failures[0];
                return record.fail(format!(
                    "[{}, {}] residual {}",
                    f.x.text(),
                    f.y.text(),
                    f.residual
                ));
            }
            // h-images must be literal multiplication by h_k on the diagonal
            for k in 1..=*n {
                let img = hf.presentation.image(&crate::sl::SlElement::H(k));
                let expect = crate::shift::ShiftOp::h(*n, k - 1);
                for r in 0..img.dim {
                    for c in 0..img.dim {
                        let e = &img.entries[r][c];
                        let ok = if r == c { *e == expect } else { e.is_zero() };
                        if !ok {
                            return record
                                .fail(format!("h{k} image is not multiplication by h{k}"));
                        }
                    }
                }
            }
            record
        }
        Check::Nilsson { n, b, s } => {
            let record = CheckRecord::new("nilsson")
                .param("n", n.to_string())
                .param("b", rat_to_string(b))
                .param("S", set_to_string(s));
            let p = build_nilsson(b, *n, s);
            let verdict = p.verify();
            if verdict.passed() {
                record
            } else {
                let f = &verdict.failures[0];
                record.fail(format!(
                    "[{}, {}] residual {}",
                    f.x.text(),
                    f.y.text(),
                    f.residual
                ))
            }
        }
        Check::NilssonCorrespondence { n, a, b, s } => {
            let record = CheckRecord::new("nilsson-correspondence")
                .param("n", n.to_string())
                .param("a", rat_to_string(a))
                .param("b", rats_to_string(b))
                .param("S", set_to_string(s));
            match nilsson_correspondence_check(a, b, *n, s) {
                Ok(report) => {
                    let mismatched: Vec<String> = report
                        .comparisons
                        .iter()
                        .filter(|c| !c.equal)
                        .map(|c| {
                            format!(
                                "{}: {} vs {}",
                                c.element.text(),
                                c.lhs,
                                c.rhs
                            )
                        })
                        .collect();
                    let record = record.param("detail", report.detail.clone());
                    if report.consistent {
                        if mismatched.is_empty() {
                            record
                        } else {
                            // convention finding, not a failure
                            record.param("findings", mismatched.join(" | "))
                        }
                    } else {
                        record.fail(mismatched.join(" | "))
                    }
                }
                Err(e) => record.fail(e),
            }
        }
        Check::Intertwiner { n, b, v, s, deg } => {
            let record = CheckRecord::new("intertwiner")
                .param("n", n.to_string())
                .param("b", rats_to_string(b))
                .param("V", v.clone())
                .param("S", set_to_string(s))
                .param("N", deg.to_string());
            let module = parse_module_spec(v, *n).expect("validated");
            match verify_intertwiner(*n, b, &module, s, *deg) {
                Ok(verdict) if verdict.passed() => record,
                Ok(verdict) => record.fail(verdict.failures.join("; ")),
                Err(e) => record.fail(e),
            }
        }
        Check::Weighting { n, b, v, s, samples } => {
            let record = CheckRecord::new("weighting")
                .param("n", n.to_string())
                .param("b", rats_to_string(b))
                .param("V", v.clone())
                .param("S", set_to_string(s))
                .param("samples", samples.to_string());
            let module = parse_module_spec(v, *n).expect("validated");
            // fiber action against the coset-reduction oracle first
            let hf = match build_hfree(b, &module, s) {
                Ok(h) => h,
                Err(e) => return record.fail(e),
            };
            if let Err(e) = weighting_fiber_oracle_check(&hf, 3, prng) {
                return record.fail(e);
            }
            match weighting_iso_check(b, &module, s, *samples, prng) {
                Ok(verdict) if verdict.passed() => record,
                Ok(verdict) => record.fail(verdict.failures.join("; ")),
                Err(e) => record.fail(e),
            }
        }
        Check::Casimir { n, v, lam, g } => {
            let record = CheckRecord::new("casimir")
                .param("n", n.to_string())
                .param("V", v.clone())
                .param("lam", rats_to_string(lam))
                .param("g", g.clone());
            let module = parse_module_spec(v, *n).expect("validated");
            let twist = parse_twist_expr(g, *n).expect("validated");
            let mut scalars: Vec<(String, Rat)> = Vec::new();
            for s in subsets(*n) {
                let p = build_omega(&module, &s);
                match casimir_scalar(&p) {
                    CasimirOutcome::Scalar(c) => scalars.push((set_to_string(&s), c)),
                    CasimirOutcome::NotScalar { residual } => {
                        return record.fail(format!(
                            "not scalar at S = {}: {residual}",
                            set_to_string(&s)
                        ))
                    }
                }
            }
            let c0 = scalars[0].1.clone();
            for (s, c) in &scalars {
                if c != &c0 {
                    return record.fail(format!(
                        "scalar differs across realizations at S = {s}: {} vs {}",
                        rat_to_string(c),
                        rat_to_string(&c0)
                    ));
                }
            }
            if !twist.is_zero() {
                let p = build_omega(&module, &[]).twist_operator(&Twist::Exp(twist));
                match casimir_scalar(&p) {
                    CasimirOutcome::Scalar(c) if c == c0 => {}
                    CasimirOutcome::Scalar(c) => {
                        return record.fail(format!(
                            "exponential twist changes the scalar: {} vs {}",
                            rat_to_string(&c),
                            rat_to_string(&c0)
                        ))
                    }
                    CasimirOutcome::NotScalar { residual } => {
                        return record.fail(format!("twisted image not scalar: {residual}"))
                    }
                }
            }
            // brute-force oracle on the shifted weight when it is dominant
            let mu: Vec<Rat> = lam.iter().map(|x| x - Rat::one()).collect();
            let record = record.param("scalar", rat_to_string(&c0));
            if let Some(oracle) = casimir_oracle(*n, &mu) {
                if oracle != c0 {
                    return record.fail(format!(
                        "oracle disagrees: {} vs {}",
                        rat_to_string(&oracle),
                        rat_to_string(&c0)
                    ));
                }
                record.param("oracle", "matched")
            } else {
                record.param("oracle", "not-applicable")
            }
        }
        Check::ModelEquivalence { n, v, s, g, deg } => {
            let record = CheckRecord::new("model-equivalence")
                .param("n", n.to_string())
                .param("V", v.clone())
                .param("S", set_to_string(s))
                .param("g", g.clone())
                .param("N", deg.to_string());
            let module = parse_module_spec(v, *n).expect("validated");
            let twist = parse_twist_expr(g, *n).expect("validated");
            let ctx = match TensorContext::new(*n, s.clone(), twist, module) {
                Ok(c) => c,
                Err(e) => return record.fail(e),
            };
            match model_equivalence_check(&ctx, *deg) {
                Ok(verdict) if verdict.passed() => record,
                Ok(verdict) => {
                    let f = &verdict.failures[0];
                    record.fail(format!(
                        "at t^{:?} (x) v{} under {}: {}",
                        f.k,
                        f.l + 1,
                        f.generator.text(),
                        f.difference
                    ))
                }
                Err(e) => record.inconclusive(e),
            }
        }
    }
}

pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 1..=n {
        let mut more = Vec::new();
        for s in &out {
            let mut s2 = s.clone();
            s2.push(i);
            more.push(s2);
        }
        out.extend(more);
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

fn a_grid() -> Vec<Rat> {
    ["0", "1/3", "1/2", "1", "4/3", "-2"]
        .iter()
        .map(|s| rat_from_str(s).expect("literal"))
        .collect()
}

fn v_grid(n: usize) -> Vec<String> {
    let mut out: Vec<String> = a_grid()
        .iter()
        .map(|a| format!("va:{}", rat_to_string(a)))
        .collect();
    for k in 0..=n {
        out.push(format!("wedge:{k}"));
    }
    if n == 2 {
        out.push("hw:2,1".to_string());
    }
    out
}

/// The default verification suite, one criterion at a time.
pub fn criterion_entries(criterion: usize) -> Vec<Check> {
    let mut out = Vec::new();
    match criterion {
        1 => {
            for n in 1..=3 {
                for v in v_grid(n) {
                    for s in subsets(n) {
                        out.push(Check::Relations { n, v: v.clone(), s });
                    }
                }
            }
        }
        2 => {
            for n in 1..=3 {
                for v in v_grid(n) {
                    for s in subsets(n) {
                        out.push(Check::FourierCoherence { n, v: v.clone(), s });
                    }
                }
            }
        }
        3 => {
            for n in 1..=2 {
                let gs: Vec<&str> = if n == 1 {
                    vec!["0", "t1"]
                } else {
                    vec!["0", "t1", "t1*t2"]
                };
                for a in a_grid() {
                    for s in subsets(n) {
                        for g in &gs {
                            out.push(Check::Simplicity {
                                n,
                                v: format!("va:{}", rat_to_string(&a)),
                                s: s.clone(),
                                g: g.to_string(),
                                box_n: 6,
                                window: 4,
                            });
                        }
                    }
                }
            }
        }
        4 => {
            for n in 2..=3 {
                for k in 0..=n {
                    for s in subsets(n) {
                        for g in ["0", "t1"] {
                            out.push(Check::ExteriorImage {
                                n,
                                k,
                                s: s.clone(),
                                g: g.to_string(),
                                box_n: 3,
                            });
                        }
                    }
                }
            }
        }
        5 => {
            let lams: Vec<Vec<Rat>> = vec![
                vec![rint(1), rint(1)],
                vec![rint(2), rint(1)],
                vec![rint(1), rint(0)],
                vec![rat_from_str("1/2").unwrap(), rint(0)],
                vec![rat_from_str("5/2").unwrap(), rint(1)],
                vec![rint(3), rint(1)],
            ];
            for lam in lams {
                for s in subsets(2) {
                    out.push(Check::ClassifierConsistency {
                        n: 2,
                        lam: lam.clone(),
                        s,
                        window: 4,
                    });
                }
            }
        }
        6 => {
            for s in subsets(2) {
                for g in ["0", "t1", "t1*t2"] {
                    out.push(Check::DeRham {
                        n: 2,
                        s: s.clone(),
                        g: g.to_string(),
                        box_n: 5,
                        randoms: 50,
                    });
                }
            }
            for s in subsets(3) {
                for g in ["0", "t1", "t1*t2"] {
                    out.push(Check::DeRham {
                        n: 3,
                        s: s.clone(),
                        g: g.to_string(),
                        box_n: 5,
                        randoms: 10,
                    });
                }
            }
            for g in ["t1", "t1*t2"] {
                out.push(Check::Witten { n: 2, g: g.to_string(), deg: 4 });
                out.push(Check::Witten { n: 3, g: g.to_string(), deg: 4 });
            }
        }
        7 => {
            let b_grids: Vec<Vec<Vec<Rat>>> = vec![
                vec![vec![rint(1)], vec![rint(2)], vec![rat_from_str("-1/2").unwrap()]],
                vec![
                    vec![rint(1), rint(1)],
                    vec![rint(1), rint(2)],
                    vec![rat_from_str("-1/2").unwrap(), rint(3)],
                ],
                vec![
                    vec![rint(1), rint(1), rint(1)],
                    vec![rint(1), rint(2), rint(3)],
                    vec![rat_from_str("-1/2").unwrap(), rint(1), rint(2)],
                ],
            ];
            for n in 1..=3usize {
                let vs: Vec<String> = match n {
                    1 => vec!["va:1/2".to_string(), "wedge:1".to_string()],
                    2 => vec![
                        "va:1/2".to_string(),
                        "wedge:1".to_string(),
                        "wedge:2".to_string(),
                        "hw:2,1".to_string(),
                    ],
                    _ => vec![
                        "va:1/2".to_string(),
                        "wedge:1".to_string(),
                        "wedge:2".to_string(),
                        "wedge:3".to_string(),
                    ],
                };
                for b in &b_grids[n - 1] {
                    for v in &vs {
                        for s in subsets(n) {
                            out.push(Check::HFree {
                                n,
                                b: b.clone(),
                                v: v.clone(),
                                s,
                            });
                        }
                    }
                }
            }
            for n in 1..=3usize {
                for b in ["0", "1/2", "1"] {
                    for s in subsets(n) {
                        out.push(Check::Nilsson {
                            n,
                            b: rat_from_str(b).unwrap(),
                            s,
                        });
                    }
                }
            }
            // intertwiner at the stated degrees
            for s in subsets(1) {
                out.push(Check::Intertwiner {
                    n: 1,
                    b: vec![rint(1)],
                    v: "va:0".to_string(),
                    s,
                    deg: 6,
                });
            }
            for s in subsets(2) {
                out.push(Check::Intertwiner {
                    n: 2,
                    b: vec![rint(1), rint(2)],
                    v: "wedge:1".to_string(),
                    s: s.clone(),
                    deg: 4,
                });
                out.push(Check::Intertwiner {
                    n: 2,
                    b: vec![rint(1), rint(2)],
                    v: "va:1/2".to_string(),
                    s,
                    deg: 4,
                });
            }
        }
        8 => {
            for a in ["0", "1/2"] {
                for s in subsets(1) {
                    out.push(Check::NilssonCorrespondence {
                        n: 1,
                        a: rat_from_str(a).unwrap(),
                        b: vec![rint(1)],
                        s,
                    });
                }
                for s in subsets(2) {
                    out.push(Check::NilssonCorrespondence {
                        n: 2,
                        a: rat_from_str(a).unwrap(),
                        b: vec![rint(1), rint(2)],
                        s,
                    });
                }
            }
        }
        9 => {
            for v in ["va:1/2", "wedge:1"] {
                for s in [vec![], vec![1], vec![1, 2]] {
                    for b in [vec![rint(1), rint(1)], vec![rint(1), rint(2)]] {
                        out.push(Check::Weighting {
                            n: 2,
                            b,
                            v: v.to_string(),
                            s: s.clone(),
                            samples: 20,
                        });
                    }
                }
            }
        }
        10 => {
            for n in 1..=3 {
                for a in a_grid() {
                    out.push(Check::Casimir {
                        n,
                        v: format!("va:{}", rat_to_string(&a)),
                        lam: vec![a.clone(); n],
                        g: "t1".to_string(),
                    });
                }
                for k in 0..=n {
                    let mut lam = vec![Rat::one(); k];
                    lam.extend(vec![Rat::zero(); n - k]);
                    out.push(Check::Casimir {
                        n,
                        v: format!("wedge:{k}"),
                        lam,
                        g: "t1".to_string(),
                    });
                }
            }
            out.push(Check::Casimir {
                n: 2,
                v: "hw:2,1".to_string(),
                lam: vec![rint(2), rint(1)],
                g: "t1".to_string(),
            });
        }
        11 => {
            let lams = [
                vec![rat_from_str("1/2").unwrap(), rat_from_str("1/3").unwrap()],
                vec![rat_from_str("-2/5").unwrap(), rat_from_str("3/7").unwrap()],
            ];
            for lam in &lams {
                for s in [vec![], vec![1], vec![1, 2]] {
                    out.push(Check::Coherent {
                        n: 2,
                        v: "wedge:1".to_string(),
                        s,
                        lam: lam.clone(),
                        radius: 2,
                    });
                }
            }
        }
        12 => {
            let b = vec![rint(2), rint(3), rint(1)];
            out.push(Check::Whittaker {
                n: 2,
                b: b.clone(),
                s: vec![2],
                v: "wedge:1".to_string(),
                l: 0,
            });
            out.push(Check::Whittaker {
                n: 2,
                b: b.clone(),
                s: vec![1, 2],
                v: "wedge:1".to_string(),
                l: 0,
            });
            out.push(Check::Whittaker {
                n: 2,
                b,
                s: vec![1, 2],
                v: "wedge:1".to_string(),
                l: 1,
            });
            out.push(Check::Whittaker {
                n: 2,
                b: vec![rat_from_str("1/2").unwrap(), rint(-3), rint(1)],
                s: vec![1],
                v: "va:1/3".to_string(),
                l: 0,
            });
            out.push(Check::Whittaker {
                n: 1,
                b: vec![rint(5), rint(1)],
                s: vec![1],
                v: "va:2".to_string(),
                l: 0,
            });
        }
        _ => {}
    }
    out
}

/// The full default suite: all twelve criteria plus the model-equivalence
/// cross-checks on their valid grid.
pub fn default_suite(seed: u64) -> SuiteConfig {
    let mut entries = Vec::new();
    for c in 1..=12 {
        entries.extend(criterion_entries(c));
    }
    // model equivalence on contexts where the bijection applies
    for (n, s, g) in [
        (1, vec![1], "0"),
        (1, vec![], "t1"),
        (2, vec![2], "t1"),
        (2, vec![1, 2], "0"),
    ] {
        entries.push(Check::ModelEquivalence {
            n,
            v: if n == 1 { "va:0".to_string() } else { "wedge:1".to_string() },
            s,
            g: g.to_string(),
            deg: 4,
        });
    }
    SuiteConfig { seed, entries }
}

/// Convenience: run and summarize a list of checks with one seed.
pub fn run_entries(entries: Vec<Check>, seed: u64) -> Result<Vec<CheckRecord>, String> {
    run_suite(&SuiteConfig { seed, entries })
}

pub fn count_failures(records: &[CheckRecord]) -> usize {
    records.iter().filter(|r| r.status == CheckStatus::Fail).count()
}
