//! End-to-end runs: normalize the input cubic, compute discriminant and index,
//! build the basis, certify it, and assemble a serializable report.

use serde::Serialize;

use crate::basis::{build, check_congruences, omega_scale, Branch, BuiltBasis, CubicModel, CubicParams, TriBasis};
use crate::disc::{IdealFactored, RamKind};
use crate::error::{Error, Result};
use crate::gf::{FfElem, Field};
use crate::poly::{Poly, ScaleInt};
use crate::ratfn::{Place, RatFn};
use crate::standard_form::{char3_standard_form, hasse_reduce, Char3Step};
use crate::verify::{
    char3_step_isomorphism, disc_of_basis, is_integral, model_is_irreducible, pmax_oracle,
    same_field_check, MultTable, PmaxVerdict, DEFAULT_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyLevel {
    /// Integrality, ring closure and discriminant match.
    Fast,
    /// Adds the brute-force maximality oracle at every prime whose square divides the discriminant.
    Full,
    /// Adds explicit and search-based same-field checks for model changes.
    Paranoid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputMode {
    /// y^3 - 3y - a (p != 3).
    CoeffA(RatFn),
    /// z^3 + bz + b^2 (p = 3).
    CoeffB(RatFn),
    /// X^3 + b X^2 + c X + d.
    GeneralCubic(RatFn, RatFn, RatFn),
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub field: Field,
    pub input: InputMode,
    pub verify: VerifyLevel,
    pub seed: u64,
    pub budget: u128,
}

impl JobSpec {
    pub fn new(field: Field, input: InputMode) -> JobSpec {
        JobSpec { field, input, verify: VerifyLevel::Full, seed: 0, budget: DEFAULT_BUDGET }
    }
}

/// Brings X^3 + bX^2 + cX + d to y^3 - 3y - a (p != 3) or z^3 + b'z + b'^2 (p = 3)
/// when only a translation and a scaling are needed.
pub fn reduce_general_cubic(b: &RatFn, c: &RatFn, d: &RatFn) -> Result<RatFn> {
    let field = b.field().clone();
    let p = field.characteristic();
    let general = CubicModelGeneral { b: b.clone(), c: c.clone(), d: d.clone() };
    if general.disc().is_zero() {
        return Err(Error::Inseparable);
    }
    let (c1, d1) = if p == 3 {
        if !b.is_zero() {
            return Err(Error::NotReducibleHere(
                "characteristic 3 with a quadratic term needs a general model change; supply --b".into(),
            ));
        }
        (c.clone(), d.clone())
    } else {
        general.depressed()?
    };
    let depressed = CubicModel::new(c1.clone(), d1.clone());
    if c1.is_zero() {
        return Err(Error::PureCubic);
    }
    if !model_is_irreducible(&depressed)? {
        return Err(Error::ReducibleCubic);
    }
    if p == 3 {
        // X = k z with k = c^2/d gives z^3 + b'z + b'^2, b' = d^2/c^3.
        return (&d1 * &d1).try_div(&(&(&c1 * &c1) * &c1));
    }
    let target = c1.try_div(&RatFn::from_int(&field, -3))?;
    let Some(u) = target.sqrt()? else {
        return Err(Error::NotReducibleHere(
            "-c/3 is not a square in F_q(x); supply the standard coefficient with --a".into(),
        ));
    };
    // X = -u y turns X^3 + cX + d into -u^3 (y^3 - 3y - d/u^3).
    d1.try_div(&(&(&u * &u) * &u))
}

struct CubicModelGeneral {
    b: RatFn,
    c: RatFn,
    d: RatFn,
}

impl CubicModelGeneral {
    fn disc(&self) -> RatFn {
        crate::poly::cubic_disc(&self.b, &self.c, &self.d)
    }

    /// X -> X - b/3.
    fn depressed(&self) -> Result<(RatFn, RatFn)> {
        let field = self.b.field();
        let s = self.b.try_div(&RatFn::from_int(field, 3))?;
        let c1 = &self.c - &(&self.b * &s);
        let s3 = &(&s * &s) * &s;
        let d1 = &(&self.d - &(&self.c * &s)) + &s3.scale_int(2);
        Ok((c1, d1))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub n: usize,
    /// Coefficients of the defining polynomial of GF(p^n), lowest degree first.
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorEntry {
    pub prime: String,
    pub exp: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealReport {
    pub generator: String,
    pub factors: Vec<FactorEntry>,
}

impl IdealReport {
    fn new(ideal: &IdealFactored, field: &Field) -> IdealReport {
        IdealReport {
            generator: ideal.generator(field).to_string(),
            factors: ideal
                .factors()
                .iter()
                .map(|(p, e)| FactorEntry { prime: p.to_string(), exp: *e })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RamReport {
    pub prime: String,
    pub kind: RamKind,
    pub disc_exponent: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisElemReport {
    /// Coefficients of 1, g, g^2.
    pub coords: [String; 3],
    pub den: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Char3StepReport {
    pub prime: String,
    pub before: String,
    pub after: String,
    pub w2: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HasseReport {
    pub b0: String,
    pub b_std: String,
    pub shift: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PmaxEntry {
    pub prime: String,
    #[serde(flatten)]
    pub verdict: PmaxVerdict,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum SameFieldVerdict {
    Same,
    Different,
    SkippedBudget { needed: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub level: VerifyLevel,
    pub integral: bool,
    pub closed: bool,
    pub disc_match: bool,
    pub index_identity: bool,
    /// p != 3: I | f'(T), I^2 | f(T), V = T^2 + c mod I.
    pub congruences: Option<bool>,
    pub pmax: Vec<PmaxEntry>,
    pub char3_steps_isomorphic: Option<bool>,
    pub same_field: Option<SameFieldVerdict>,
    pub passed: bool,
    pub budget_exceeded: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub field: FieldInfo,
    pub seed: u64,
    pub branch: Branch,
    /// The coefficient fed to the basis construction (a, or b in standard form).
    pub coefficient: String,
    pub input_coefficient: Option<String>,
    /// Minimal equation X^3 + cX + d of the generator the basis coordinates refer to.
    pub generator: String,
    pub generator_c: String,
    pub generator_d: String,
    /// p != 3: the generator is this multiple of y.
    pub generator_scale: Option<String>,
    pub params: Vec<(String, String)>,
    pub hasse: Option<HasseReport>,
    pub char3_trace: Vec<Char3StepReport>,
    pub delta_omega: String,
    pub disc: IdealReport,
    pub index: IdealReport,
    pub ell: Vec<(String, i64)>,
    pub ramification: Vec<RamReport>,
    pub basis: Vec<BasisElemReport>,
    pub t: Option<String>,
    pub v: Option<String>,
    pub used_fallback: bool,
    pub verification: Verification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Everything computed for one job, before rendering.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub params: CubicParams,
    pub built: BuiltBasis,
    pub trace: Vec<Char3Step>,
    pub input_model: Option<CubicModel>,
    pub input_coefficient: Option<RatFn>,
    pub verification: Verification,
}

pub fn run_pipeline(job: &JobSpec) -> Result<Report> {
    let out = compute(job)?;
    Ok(render(job, &out))
}

pub fn compute(job: &JobSpec) -> Result<Outcome> {
    let p = job.field.characteristic();
    let one = job.field.one();
    let (coef, input_model, input_coefficient) = match &job.input {
        InputMode::CoeffA(a) => {
            if p == 3 {
                return Err(Error::WrongCharacteristic { expected: "not 3 (use b)", got: p });
            }
            (a.clone(), None, None)
        }
        InputMode::CoeffB(b) => {
            if p != 3 {
                return Err(Error::WrongCharacteristic { expected: "3 (use a)", got: p });
            }
            (b.clone(), None, None)
        }
        InputMode::GeneralCubic(b, c, d) => {
            let coef = reduce_general_cubic(b, c, d)?;
            let model = CubicModelGeneral { b: b.clone(), c: c.clone(), d: d.clone() };
            let (c1, d1) = if p == 3 { (c.clone(), d.clone()) } else { model.depressed()? };
            (coef, Some(CubicModel::new(c1, d1)), None)
        }
    };
    if coef.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (coef, trace, input_coefficient) = if p == 3 {
        let form = char3_standard_form(&coef, &one)?;
        let orig = (!form.trace.is_empty()).then(|| coef.clone()).or(input_coefficient);
        (form.b, form.trace, orig)
    } else {
        (coef, Vec::new(), input_coefficient)
    };
    let model = if p == 3 { CubicModel::from_b(&coef) } else { CubicModel::from_a(&coef) };
    if !model_is_irreducible(&model)? {
        return Err(Error::ReducibleCubic);
    }
    let params = CubicParams::new(&coef)?;
    let built = build(&params)?;
    let verification = certify(job, &params, &built, &trace, input_model.as_ref())?;
    Ok(Outcome { params, built, trace, input_model, input_coefficient, verification })
}

/// Runs the checks for the requested level. Mathematical failures are recorded in
/// the verdicts; only malformed inputs surface as errors.
pub fn certify(
    job: &JobSpec,
    params: &CubicParams,
    built: &BuiltBasis,
    trace: &[Char3Step],
    input_model: Option<&CubicModel>,
) -> Result<Verification> {
    let model = &params.model;
    let basis = &built.basis;
    let mut integral = true;
    for row in basis.matrix() {
        integral &= is_integral(model, &row)?;
    }
    let closed = MultTable::new(model, basis)?.is_closed();
    let basis_disc = disc_of_basis(basis, model);
    let disc_match = basis_disc.as_ref().is_ok_and(|d| *d == params.report.disc);
    let index_identity = params.report.index_identity_holds()?;
    let congruences = match (&built.t, &built.v) {
        (Some(t), Some(v)) => Some(check_congruences(model, &params.index_poly, t, v)?.all()),
        _ => None,
    };
    let mut pmax = Vec::new();
    let mut budget_exceeded = false;
    if job.verify != VerifyLevel::Fast && integral && closed {
        if let Ok(d) = &basis_disc {
            for (place, e) in d.factors() {
                if *e < 2 {
                    continue;
                }
                let verdict = match pmax_oracle(model, basis, place, job.budget) {
                    Ok(true) => PmaxVerdict::Maximal,
                    Ok(false) => PmaxVerdict::NotMaximal,
                    Err(Error::BudgetExceeded { needed, .. }) => {
                        budget_exceeded = true;
                        PmaxVerdict::SkippedBudget { needed: needed.to_string() }
                    }
                    Err(e) => return Err(e),
                };
                pmax.push(PmaxEntry { prime: place.to_string(), verdict });
            }
        }
    }
    let mut steps_ok = None;
    let mut same_field = None;
    if job.verify == VerifyLevel::Paranoid {
        if !trace.is_empty() {
            let mut ok = true;
            for s in trace {
                ok &= char3_step_isomorphism(s)?;
            }
            steps_ok = Some(ok);
        }
        let original = input_model.cloned().or_else(|| trace.first().map(|s| CubicModel::from_b(&s.a_before)));
        if let Some(orig) = original {
            same_field = Some(match same_field_check(model, basis, &orig, job.budget) {
                Ok(true) => SameFieldVerdict::Same,
                Ok(false) => SameFieldVerdict::Different,
                Err(Error::BudgetExceeded { needed, .. }) => SameFieldVerdict::SkippedBudget { needed: needed.to_string() },
                Err(e) => return Err(e),
            });
        }
    }
    let passed = integral
        && closed
        && disc_match
        && index_identity
        && congruences.unwrap_or(true)
        && pmax.iter().all(|e| !matches!(e.verdict, PmaxVerdict::NotMaximal))
        && steps_ok.unwrap_or(true)
        && !matches!(same_field, Some(SameFieldVerdict::Different));
    Ok(Verification {
        level: job.verify,
        integral,
        closed,
        disc_match,
        index_identity,
        congruences,
        pmax,
        char3_steps_isomorphic: steps_ok,
        same_field,
        passed,
        budget_exceeded,
    })
}

fn elem_reports(basis: &TriBasis) -> Vec<BasisElemReport> {
    basis
        .elems
        .iter()
        .map(|e| BasisElemReport {
            coords: std::array::from_fn(|i| e.coords[i].to_string()),
            den: e.den.to_string(),
        })
        .collect()
}

fn fmt_place_list(v: &[(Place, i64)]) -> Vec<(String, i64)> {
    v.iter().map(|(p, l)| (p.to_string(), *l)).collect()
}

fn fmt_unit(field: &Field, u: &FfElem) -> String {
    field.fmt_elem(u)
}

pub fn render(job: &JobSpec, out: &Outcome) -> Report {
    let field = &job.field;
    let params = &out.params;
    let model = &params.model;
    let mut kv: Vec<(String, String)> = Vec::new();
    let mut scale = None;
    if let Some(d) = &params.pne3 {
        kv.push(("alpha".into(), d.alpha.to_string()));
        kv.push(("unit".into(), fmt_unit(field, &d.unit)));
        kv.push(("gamma".into(), d.gamma.to_string()));
        kv.push(("beta1".into(), d.beta1.to_string()));
        kv.push(("beta2".into(), d.beta2.to_string()));
        kv.push(("I".into(), params.index_poly.to_string()));
        if let Some((e1, e2)) = &params.report.eta {
            kv.push(("eta1".into(), e1.to_string()));
            kv.push(("eta2".into(), e2.to_string()));
        }
        if let Some(ai) = &params.alpha_index {
            kv.push(("alpha_I".into(), ai.to_string()));
        }
        if let Some(r) = &params.resolvent_root {
            kv.push(("resolvent_root".into(), r.to_string()));
        }
        scale = Some(omega_scale(d).to_string());
    }
    if let Some(d) = &params.p3 {
        kv.push(("xi1".into(), d.xi1.to_string()));
        kv.push(("xi2".into(), d.xi2.to_string()));
        kv.push(("unit".into(), fmt_unit(field, &d.unit)));
        kv.push(("beta".into(), d.beta.to_string()));
        kv.push(("P1".into(), crate::disc::p3_scale(d, 1).to_string()));
        kv.push(("P2".into(), crate::disc::p3_scale(d, 2).to_string()));
    }
    let hasse = (field.characteristic() == 2)
        .then(|| {
            let b0 = crate::disc::resolvent_as_param(&params.coef).ok()?;
            let red = hasse_reduce(&b0).ok()?;
            Some(HasseReport { b0: b0.to_string(), b_std: red.b_std.to_string(), shift: red.shift.to_string() })
        })
        .flatten();
    Report {
        field: FieldInfo {
            p: field.characteristic(),
            n: field.degree(),
            modulus: field.modulus().to_vec(),
        },
        seed: job.seed,
        branch: params.branch,
        coefficient: params.coef.to_string(),
        input_coefficient: out.input_coefficient.as_ref().map(|c| c.to_string()),
        generator: format!("X^3 + ({})*X + ({})", model.c, model.d),
        generator_c: model.c.to_string(),
        generator_d: model.d.to_string(),
        generator_scale: scale,
        params: kv,
        hasse,
        char3_trace: out
            .trace
            .iter()
            .map(|s| Char3StepReport {
                prime: s.place.to_string(),
                before: s.a_before.to_string(),
                after: s.a_after.to_string(),
                w2: s.w2.to_string(),
            })
            .collect(),
        delta_omega: params.report.delta_omega.to_string(),
        disc: IdealReport::new(&params.report.disc, field),
        index: IdealReport::new(&params.report.index, field),
        ell: fmt_place_list(&params.report.ell),
        ramification: params
            .report
            .ram
            .iter()
            .map(|r| RamReport { prime: r.place.to_string(), kind: r.kind, disc_exponent: r.disc_exponent })
            .collect(),
        basis: elem_reports(&out.built.basis),
        t: out.built.t.as_ref().map(Poly::to_string),
        v: out.built.v.as_ref().map(Poly::to_string),
        used_fallback: out.built.used_fallback,
        verification: out.verification.clone(),
        timing_ms: None,
    }
}
