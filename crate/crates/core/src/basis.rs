//! Triangular integral bases: the closed-form constructions for p >= 5, p = 2 and p = 3,
//! plus a direct solver for the index congruences.

use serde::Serialize;

use crate::disc::{
    alpha_index_part, disc_index_p2, disc_index_podd, disc_p3, p3_scale, resolvent_as_param,
    DiscReport, IdealFactored,
};
use crate::error::{Error, Result};
use crate::gf::{FfElem, Field};
use crate::poly::{crt, Poly};
use crate::ratfn::{decompose_p3, decompose_pne3, DecompP3, DecompPNe3, RatFn};
use crate::standard_form::{as_root, hasse_reduce};

/// Search-node cap for [`solve_t_fallback`].
pub const FALLBACK_NODE_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Podd,
    P2Galois,
    P2Nongalois,
    P3,
}

/// The monic depressed cubic X^3 + c X + d over F_q(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicModel {
    pub c: RatFn,
    pub d: RatFn,
}

impl CubicModel {
    pub fn new(c: RatFn, d: RatFn) -> CubicModel {
        CubicModel { c, d }
    }

    /// y^3 - 3y - a.
    pub fn from_a(a: &RatFn) -> CubicModel {
        CubicModel { c: RatFn::from_int(a.field(), -3), d: -a }
    }

    /// z^3 + b z + b^2.
    pub fn from_b(b: &RatFn) -> CubicModel {
        CubicModel { c: b.clone(), d: b * b }
    }

    pub fn field(&self) -> &Field {
        self.c.field()
    }

    /// -4 c^3 - 27 d^2.
    pub fn disc(&self) -> RatFn {
        crate::poly::cubic_disc(&RatFn::zero(self.field()), &self.c, &self.d)
    }

    pub fn is_integral(&self) -> bool {
        self.c.is_poly() && self.d.is_poly()
    }

    /// Value of X^3 + cX + d at a polynomial.
    pub fn eval_poly(&self, t: &Poly) -> Option<Poly> {
        let (c, d) = (self.c.to_poly()?, self.d.to_poly()?);
        Some(&(&(&t.square() * t) + &(&c * t)) + &d)
    }

    /// Value of 3X^2 + c at a polynomial.
    pub fn eval_deriv_poly(&self, t: &Poly) -> Option<Poly> {
        Some(&t.square().scale_int(3) + &self.c.to_poly()?)
    }
}

/// (c0 + c1 g + c2 g^2) / den in the power basis of the model generator g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub coords: [Poly; 3],
    pub den: Poly,
}

impl BasisElem {
    pub fn to_elem(&self) -> [RatFn; 3] {
        self.coords
            .clone()
            .map(|c| RatFn::new(c, self.den.clone()).expect("monic denominator"))
    }
}

/// Lower-triangular basis {b0, b1, b2}: b_k involves only g^0..g^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriBasis {
    pub elems: [BasisElem; 3],
}

impl TriBasis {
    pub fn power(field: &Field) -> TriBasis {
        let e = |k: usize| BasisElem {
            coords: std::array::from_fn(|i| if i == k { Poly::one(field) } else { Poly::zero(field) }),
            den: Poly::one(field),
        };
        TriBasis { elems: [e(0), e(1), e(2)] }
    }

    /// Rows are basis elements in power coordinates.
    pub fn matrix(&self) -> [[RatFn; 3]; 3] {
        self.elems.clone().map(|e| e.to_elem())
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..3).all(|k| (k + 1..3).all(|i| self.elems[k].coords[i].is_zero()))
    }

    /// Product of the diagonal (the determinant when triangular).
    pub fn det(&self) -> RatFn {
        let m = self.matrix();
        &(&m[0][0] * &m[1][1]) * &m[2][2]
    }

    pub fn field(&self) -> &Field {
        self.elems[0].den.field()
    }
}

#[derive(Debug, Clone)]
pub struct CubicParams {
    pub branch: Branch,
    /// a (p != 3) or b (p = 3).
    pub coef: RatFn,
    /// Minimal equation of the generator the basis coordinates refer to.
    pub model: CubicModel,
    pub pne3: Option<DecompPNe3>,
    pub p3: Option<DecompP3>,
    pub report: DiscReport,
    /// Monic generator of the denominator ideal I (p != 3).
    pub index_poly: Poly,
    /// The numerator part of I (characteristic 2).
    pub alpha_index: Option<Poly>,
    /// Characteristic 2: root of X^2 + X = 1/a^2 + 1 when the extension is Galois.
    pub resolvent_root: Option<RatFn>,
}

impl CubicParams {
    /// Dispatches on the characteristic: `coef` is a for y^3 - 3y - a when p != 3,
    /// and b for z^3 + bz + b^2 (already in standard form) when p = 3.
    pub fn new(coef: &RatFn) -> Result<CubicParams> {
        match coef.field().characteristic() {
            2 => CubicParams::p2(coef),
            3 => CubicParams::p3(coef),
            _ => CubicParams::podd(coef),
        }
    }

    pub fn podd(a: &RatFn) -> Result<CubicParams> {
        let d = decompose_pne3(a)?;
        let report = disc_index_podd(&d)?;
        let field = a.field().clone();
        let index_poly = report.index.generator(&field);
        Ok(CubicParams {
            branch: Branch::Podd,
            coef: a.clone(),
            model: omega_model(&d),
            pne3: Some(d),
            p3: None,
            report,
            index_poly,
            alpha_index: None,
            resolvent_root: None,
        })
    }

    pub fn p2(a: &RatFn) -> Result<CubicParams> {
        let d = decompose_pne3(a)?;
        let report = disc_index_p2(&d, a)?;
        let field = a.field().clone();
        let alpha_index = alpha_index_part(&d, &report.ell)?.generator(&field);
        let index_poly = report.index.generator(&field);
        let root = as_root(&resolvent_as_param(a)?)?;
        Ok(CubicParams {
            branch: if root.is_some() { Branch::P2Galois } else { Branch::P2Nongalois },
            coef: a.clone(),
            model: omega_model(&d),
            pne3: Some(d),
            p3: None,
            report,
            index_poly,
            alpha_index: Some(alpha_index),
            resolvent_root: root,
        })
    }

    pub fn p3(b: &RatFn) -> Result<CubicParams> {
        let d = decompose_p3(b)?;
        let report = disc_p3(&d)?;
        let field = b.field().clone();
        let index_poly = report.index.generator(&field);
        Ok(CubicParams {
            branch: Branch::P3,
            coef: b.clone(),
            model: CubicModel::from_b(b),
            pne3: None,
            p3: Some(d),
            report,
            index_poly,
            alpha_index: None,
            resolvent_root: None,
        })
    }

    fn decomp(&self) -> Result<&DecompPNe3> {
        self.pne3
            .as_ref()
            .ok_or(Error::WrongCharacteristic { expected: "not 3", got: 3 })
    }
}

/// gamma beta1 beta2, the scaling that makes the generator integral.
pub fn omega_scale(d: &DecompPNe3) -> Poly {
    &(&d.gamma * &d.beta1) * &d.beta2
}

/// X^3 - 3 G^2 X - alpha beta1^2 beta2 with G = gamma beta1 beta2.
pub fn omega_model(d: &DecompPNe3) -> CubicModel {
    let g = omega_scale(d);
    let c = g.square().scale_int(-3);
    let dd = -&(&d.alpha_full() * &(&d.beta1.square() * &d.beta2));
    CubicModel::new(RatFn::from_poly(c), RatFn::from_poly(dd))
}

/// The three congruences that make {1, w, (w^2 + T w + V)/I} an order closed under
/// multiplication with integral elements: I | f'(T), I^2 | f(T), V = T^2 + c mod I.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CongruenceCheck {
    pub derivative: bool,
    pub value: bool,
    pub v_matches: bool,
}

impl CongruenceCheck {
    pub fn all(&self) -> bool {
        self.derivative && self.value && self.v_matches
    }
}

pub fn check_congruences(model: &CubicModel, i: &Poly, t: &Poly, v: &Poly) -> Result<CongruenceCheck> {
    let (Some(ft), Some(dft), Some(c)) = (model.eval_poly(t), model.eval_deriv_poly(t), model.c.to_poly())
    else {
        return Err(Error::PreconditionViolated("model is not integral".into()));
    };
    Ok(CongruenceCheck {
        derivative: dft.rem(i).is_zero(),
        value: ft.rem(&i.square()).is_zero(),
        v_matches: (&(&t.square() + &c) - v).rem(i).is_zero(),
    })
}

/// The basis triple plus the data that produced it.
#[derive(Debug, Clone)]
pub struct BuiltBasis {
    pub basis: TriBasis,
    pub t: Option<Poly>,
    pub v: Option<Poly>,
    pub used_fallback: bool,
}

fn assemble_pne3(field: &Field, i: &Poly, t: &Poly, v: &Poly) -> TriBasis {
    let mut b = TriBasis::power(field);
    b.elems[2] = BasisElem { coords: [v.clone(), t.clone(), Poly::one(field)], den: i.clone() };
    b
}

fn v_for(model: &CubicModel, i: &Poly, t: &Poly) -> Poly {
    let c = model.c.to_poly().expect("integral model");
    (&t.square() + &c).rem(i)
}

fn finish_pne3(params: &CubicParams, t: Poly) -> Result<BuiltBasis> {
    let field = params.coef.field();
    let i = &params.index_poly;
    let t = t.rem(i);
    let v = v_for(&params.model, i, &t);
    if check_congruences(&params.model, i, &t, &v)?.all() {
        return Ok(BuiltBasis { basis: assemble_pne3(field, i, &t, &v), t: Some(t), v: Some(v), used_fallback: false });
    }
    let (t, v) = solve_t_fallback(params)?;
    Ok(BuiltBasis { basis: assemble_pne3(field, i, &t, &v), t: Some(t), v: Some(v), used_fallback: true })
}

/// p >= 5: T = -alpha/(2 gamma^2 beta2) mod eta2^2 and T = 0 mod beta1^2.
pub fn build_podd(params: &CubicParams) -> Result<BuiltBasis> {
    if params.branch != Branch::Podd {
        return Err(Error::PreconditionViolated("build_podd needs the odd-characteristic branch".into()));
    }
    let d = params.decomp()?;
    let (_, eta2) = params.report.eta.clone().expect("odd branch records eta");
    let m_eta = eta2.square();
    let denom = (&d.gamma.square() * &d.beta2).scale_int(2);
    let inv = denom.mod_inverse(&m_eta)?;
    let t_eta = (-&d.alpha_full()).mul_mod(&inv, &m_eta);
    let t = crt(&[(t_eta, m_eta), (Poly::zero(&eta2.field().clone()), d.beta1.square())])?;
    finish_pne3(params, t)
}

/// p = 2: the Galois branch uses the resolvent root, the other the Hasse shift of the
/// resolvent parameter; T = 0 mod beta1 in both.
pub fn build_p2(params: &CubicParams) -> Result<BuiltBasis> {
    let d = params.decomp()?;
    let field = params.coef.field().clone();
    let alpha_i = params.alpha_index.clone().ok_or_else(|| {
        Error::PreconditionViolated("build_p2 needs the characteristic 2 branch".into())
    })?;
    let lift = match params.branch {
        Branch::P2Galois => params.resolvent_root.clone().expect("Galois branch records a root"),
        Branch::P2Nongalois => hasse_reduce(&resolvent_as_param(&params.coef)?)?.shift,
        _ => return Err(Error::PreconditionViolated("build_p2 needs the characteristic 2 branch".into())),
    };
    let scale = RatFn::new(d.alpha_full(), &d.gamma.square() * &d.beta2)?;
    let target = (&scale * &lift).residue_mod(&alpha_i)?;
    let t = crt(&[(target, alpha_i), (Poly::zero(&field), d.beta1.clone())])?;
    finish_pne3(params, t)
}

/// p = 3: {1, P1 z / xi2, P2 z^2 / (xi1 xi2^2)}.
pub fn build_p3(params: &CubicParams) -> Result<BuiltBasis> {
    let d = params
        .p3
        .as_ref()
        .ok_or_else(|| Error::PreconditionViolated("build_p3 needs the characteristic 3 branch".into()))?;
    let field = params.coef.field().clone();
    let zero = Poly::zero(&field);
    let mut b = TriBasis::power(&field);
    b.elems[1] = BasisElem { coords: [zero.clone(), p3_scale(d, 1), zero.clone()], den: d.xi2.clone() };
    b.elems[2] = BasisElem {
        coords: [zero.clone(), zero, p3_scale(d, 2)],
        den: &d.xi1 * &d.xi2.square(),
    };
    Ok(BuiltBasis { basis: b, t: None, v: None, used_fallback: false })
}

pub fn build(params: &CubicParams) -> Result<BuiltBasis> {
    match params.branch {
        Branch::Podd => build_podd(params),
        Branch::P2Galois | Branch::P2Nongalois => build_p2(params),
        Branch::P3 => build_p3(params),
    }
}

/// All residues mod `m` as polynomials of degree < deg m, in index order.
pub(crate) fn residue(field: &Field, deg: usize, mut idx: u64) -> Poly {
    let q = field.order().expect("small field");
    let mut cs: Vec<FfElem> = Vec::with_capacity(deg);
    for _ in 0..deg {
        cs.push(field.element(idx % q));
        idx /= q;
    }
    Poly::new(field, cs)
}

/// Solves I | f'(T), I^2 | f(T) prime power by prime power, choosing T digit by digit
/// in the prime's adic expansion and pruning with the truncated conditions.
pub fn solve_t_fallback(params: &CubicParams) -> Result<(Poly, Poly)> {
    if params.branch == Branch::P3 {
        return Err(Error::WrongCharacteristic { expected: "not 3", got: 3 });
    }
    let field = params.coef.field().clone();
    let model = &params.model;
    let i = &params.index_poly;
    let mut pairs = Vec::new();
    let mut nodes = 0u64;
    for (pi, e) in IdealFactored::from_poly(i)?.factors() {
        let t = solve_local(model, pi.prime(), *e, &mut nodes)?
            .ok_or_else(|| Error::NoSolution(format!("no T modulo ({})^{e}", pi)))?;
        pairs.push((t, pi.prime().pow(*e as u64)));
    }
    let t = if pairs.is_empty() { Poly::zero(&field) } else { crt(&pairs)? };
    let v = v_for(model, i, &t);
    Ok((t, v))
}

fn solve_local(model: &CubicModel, pi: &Poly, e: u32, nodes: &mut u64) -> Result<Option<Poly>> {
    let field = pi.field().clone();
    let q = field
        .order()
        .ok_or(Error::BudgetExceeded { needed: u128::MAX, budget: FALLBACK_NODE_CAP as u128 })?;
    let d = pi.deg() as usize;
    let digits = q.checked_pow(d as u32).unwrap_or(u64::MAX);
    let mut stack: Vec<(Poly, u32)> = vec![(Poly::zero(&field), 0)];
    while let Some((t, k)) = stack.pop() {
        if k == e {
            return Ok(Some(t));
        }
        let pk = pi.pow(k as u64);
        let m1 = &pk * pi;
        let m2 = m1.square();
        for idx in 0..digits {
            *nodes += 1;
            if *nodes > FALLBACK_NODE_CAP {
                return Err(Error::BudgetExceeded { needed: *nodes as u128, budget: FALLBACK_NODE_CAP as u128 });
            }
            let cand = &t + &(&residue(&field, d, idx) * &pk);
            let ok = model.eval_deriv_poly(&cand).expect("integral").rem(&m1).is_zero()
                && model.eval_poly(&cand).expect("integral").rem(&m2).is_zero();
            if ok {
                stack.push((cand, k + 1));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    fn rf(field: &Field, n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(Poly::from_ints(field, n), Poly::from_ints(field, d)).unwrap()
    }

    #[test]
    fn podd_examples() {
        let f5 = FieldCtx::prime(5).unwrap();
        let params = CubicParams::new(&RatFn::x(&f5)).unwrap();
        let b = build(&params).unwrap();
        assert_eq!(b.basis, TriBasis::power(&f5));

        let params = CubicParams::new(&rf(&f5, &[1], &[0, 1])).unwrap();
        assert_eq!(params.index_poly, Poly::x(&f5));
        let b = build(&params).unwrap();
        assert!(!b.used_fallback);
        assert!(b.t.as_ref().unwrap().is_zero());
        assert!(b.v.as_ref().unwrap().is_zero());
        assert_eq!(b.basis.elems[2].den, Poly::x(&f5));

        let params = CubicParams::new(&rf(&f5, &[1], &[0, 0, 0, 1])).unwrap();
        assert_eq!(build(&params).unwrap().basis, TriBasis::power(&f5));
    }

    #[test]
    fn fallback_examples() {
        let f5 = FieldCtx::prime(5).unwrap();
        let params = CubicParams::new(&RatFn::x(&f5)).unwrap();
        let (t, v) = solve_t_fallback(&params).unwrap();
        assert!(t.is_zero() && v.is_zero());

        let params = CubicParams::new(&rf(&f5, &[1], &[0, 1])).unwrap();
        let (t, v) = solve_t_fallback(&params).unwrap();
        assert!(check_congruences(&params.model, &params.index_poly, &t, &v).unwrap().all());
    }

    #[test]
    fn p2_power_basis() {
        let f2 = FieldCtx::prime(2).unwrap();
        let params = CubicParams::new(&RatFn::x(&f2)).unwrap();
        assert_eq!(build(&params).unwrap().basis, TriBasis::power(&f2));
    }

    #[test]
    fn p3_examples() {
        let f3 = FieldCtx::prime(3).unwrap();
        let x = Poly::x(&f3);
        let b = build(&CubicParams::new(&rf(&f3, &[1], &[0, 1])).unwrap()).unwrap().basis;
        assert_eq!(b.elems[1].coords[1], x);
        assert_eq!(b.elems[2].coords[2], x.square());
        assert!(b.elems[1].den.is_one() && b.elems[2].den.is_one());

        let b = build(&CubicParams::new(&RatFn::x(&f3)).unwrap()).unwrap().basis;
        assert!(b.elems[1].coords[1].is_one());
        assert_eq!(b.elems[2].den, x);

        let b = build(&CubicParams::new(&RatFn::one(&f3)).unwrap()).unwrap().basis;
        assert_eq!(b, TriBasis::power(&f3));
    }
}
