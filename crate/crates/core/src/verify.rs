//! Independent certification of a claimed basis: integrality, ring closure,
//! discriminant match, brute-force local maximality, and same-field checks.

use serde::Serialize;

use crate::basis::{residue, CubicModel, TriBasis};
use crate::disc::IdealFactored;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::Poly;
use crate::ratfn::{Place, RatFn};
use crate::standard_form::Char3Step;

/// Default candidate budget for the enumeration checks.
pub const DEFAULT_BUDGET: u128 = 1 << 16;

/// An element of L in power coordinates of the model generator.
pub type Elem = [RatFn; 3];

fn zero_elem(field: &Field) -> Elem {
    std::array::from_fn(|_| RatFn::zero(field))
}

fn add_elem(u: &Elem, v: &Elem) -> Elem {
    std::array::from_fn(|i| &u[i] + &v[i])
}

fn scale_elem(s: &RatFn, u: &Elem) -> Elem {
    std::array::from_fn(|i| s * &u[i])
}

/// Product in F_q(x)[X]/(X^3 + cX + d).
pub fn mul_elem(model: &CubicModel, u: &Elem, v: &Elem) -> Elem {
    let field = model.field();
    let mut prod: Vec<RatFn> = vec![RatFn::zero(field); 5];
    for i in 0..3 {
        for j in 0..3 {
            if u[i].is_zero() || v[j].is_zero() {
                continue;
            }
            prod[i + j] = &prod[i + j] + &(&u[i] * &v[j]);
        }
    }
    // X^4 = -c X^2 - d X, X^3 = -c X - d
    for k in (3..5).rev() {
        let top = std::mem::replace(&mut prod[k], RatFn::zero(field));
        if top.is_zero() {
            continue;
        }
        prod[k - 2] = &prod[k - 2] - &(&top * &model.c);
        prod[k - 3] = &prod[k - 3] - &(&top * &model.d);
    }
    [prod[0].clone(), prod[1].clone(), prod[2].clone()]
}

/// Matrix of multiplication by u in the power basis (columns are images).
fn mult_matrix(model: &CubicModel, u: &Elem) -> [[RatFn; 3]; 3] {
    let field = model.field();
    let cols: [Elem; 3] = std::array::from_fn(|k| {
        let mut e = zero_elem(field);
        e[k] = RatFn::one(field);
        mul_elem(model, u, &e)
    });
    std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()))
}

fn trace3<T: Clone>(m: &[[T; 3]; 3]) -> T
where
    for<'a> &'a T: std::ops::Add<&'a T, Output = T>,
{
    &(&m[0][0] + &m[1][1]) + &m[2][2]
}

fn minors3<T: Clone>(m: &[[T; 3]; 3]) -> T
where
    for<'a> &'a T: std::ops::Add<&'a T, Output = T>
        + std::ops::Sub<&'a T, Output = T>
        + std::ops::Mul<&'a T, Output = T>,
{
    let minor = |i: usize, j: usize| &(&m[i][i] * &m[j][j]) - &(&m[i][j] * &m[j][i]);
    &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2)
}

fn det3<T: Clone>(m: &[[T; 3]; 3]) -> T
where
    for<'a> &'a T: std::ops::Add<&'a T, Output = T>
        + std::ops::Sub<&'a T, Output = T>
        + std::ops::Mul<&'a T, Output = T>,
{
    let a = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
    let b = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
    let c = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
    &(&a - &b) + &c
}

/// (e1, e2, e3) with u a root of X^3 - e1 X^2 + e2 X - e3.
pub fn char_poly_elem(model: &CubicModel, u: &Elem) -> Result<[RatFn; 3]> {
    if model.disc().is_zero() {
        return Err(Error::InseparableModel);
    }
    let m = mult_matrix(model, u);
    Ok([trace3(&m), minors3(&m), det3(&m)])
}

pub fn is_integral(model: &CubicModel, u: &Elem) -> Result<bool> {
    Ok(char_poly_elem(model, u)?.iter().all(RatFn::is_poly))
}

/// Coordinates of u in a lower-triangular basis, by back-substitution.
pub fn coords_in_basis(basis: &TriBasis, u: &Elem) -> Result<[RatFn; 3]> {
    let m = basis.matrix();
    let mut rest = u.clone();
    let mut out = zero_elem(basis.field());
    for k in (0..3).rev() {
        if m[k][k].is_zero() {
            return Err(Error::SingularBasisMatrix);
        }
        let t = rest[k].try_div(&m[k][k])?;
        for i in 0..=k {
            rest[i] = &rest[i] - &(&t * &m[k][i]);
        }
        out[k] = t;
    }
    Ok(out)
}

/// Structure constants: b_i b_j = sum_k consts[i][j][k] b_k.
#[derive(Debug, Clone)]
pub struct MultTable {
    pub consts: [[[RatFn; 3]; 3]; 3],
}

impl MultTable {
    pub fn new(model: &CubicModel, basis: &TriBasis) -> Result<MultTable> {
        let rows = basis.matrix();
        let mut consts: [[[RatFn; 3]; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| zero_elem(basis.field())));
        for i in 0..3 {
            for j in i..3 {
                let c = coords_in_basis(basis, &mul_elem(model, &rows[i], &rows[j]))?;
                consts[i][j] = c.clone();
                consts[j][i] = c;
            }
        }
        Ok(MultTable { consts })
    }

    /// The span is a ring iff every structure constant is a polynomial.
    pub fn is_closed(&self) -> bool {
        self.consts.iter().flatten().flatten().all(RatFn::is_poly)
    }

    /// Matrix of multiplication by b_i in the basis itself, entries polynomial.
    fn poly_matrix(&self, i: usize) -> Result<[[Poly; 3]; 3]> {
        let get = |r: usize, c: usize| {
            self.consts[i][c][r]
                .to_poly()
                .ok_or_else(|| Error::PreconditionViolated("basis span is not a ring".into()))
        };
        let mut rows: Vec<[Poly; 3]> = Vec::with_capacity(3);
        for r in 0..3 {
            rows.push([get(r, 0)?, get(r, 1)?, get(r, 2)?]);
        }
        Ok([rows[0].clone(), rows[1].clone(), rows[2].clone()])
    }
}

/// det(B)^2 times the model discriminant, as an ideal of F_q[x].
pub fn disc_of_basis(basis: &TriBasis, model: &CubicModel) -> Result<IdealFactored> {
    let det = basis.det();
    if det.is_zero() {
        return Err(Error::SingularBasisMatrix);
    }
    let d = &(&det * &det) * &model.disc();
    let p = d
        .to_poly()
        .ok_or_else(|| Error::VerifyFailed(format!("basis discriminant {d} is not a polynomial")))?;
    IdealFactored::from_poly(&p)
}

/// Number of candidates the oracle would enumerate at a place of residue degree `deg`.
fn residue_count(field: &Field, deg: usize) -> Option<u128> {
    (field.order()? as u128).checked_pow(deg as u32)
}

/// True iff the order spanned by the basis is maximal at `place`: no nonzero class
/// (c0 b0 + c1 b1 + c2 b2)/p with c_i residues mod p is integral.
pub fn pmax_oracle(model: &CubicModel, basis: &TriBasis, place: &Place, budget: u128) -> Result<bool> {
    let table = MultTable::new(model, basis)?;
    if !table.is_closed() {
        return Err(Error::PreconditionViolated("basis span is not a ring".into()));
    }
    for row in basis.matrix() {
        if !is_integral(model, &row)? {
            return Err(Error::PreconditionViolated("basis element is not integral".into()));
        }
    }
    let field = basis.field().clone();
    let pi = place.prime();
    let deg = place.degree();
    let m1 = pi.clone();
    let m2 = pi.square();
    let m3 = &m2 * pi;
    let mats: Vec<[[Poly; 3]; 3]> = (0..3)
        .map(|i| table.poly_matrix(i).map(|m| m.map(|r| r.map(|e| e.rem(&m3)))))
        .collect::<Result<_>>()?;
    let taus: Vec<Poly> = mats.iter().map(|m| trace3(m).rem(&m1)).collect();

    let q_res = residue_count(&field, deg);
    let over = |needed: Option<u128>| Error::BudgetExceeded { needed: needed.unwrap_or(u128::MAX), budget };
    let pivot = taus.iter().position(|t| !t.is_zero());
    let needed = match (pivot, q_res) {
        (_, None) => None,
        (Some(_), Some(q)) => q.checked_add(1),
        (None, Some(q)) => q.checked_mul(q).and_then(|s| s.checked_add(q + 1)),
    };
    match needed {
        Some(n) if n <= budget => {}
        other => return Err(over(other)),
    }
    let q_res = q_res.expect("checked above") as u64;

    let integral_quotient = |c: &[Poly; 3]| -> bool {
        let a: [[Poly; 3]; 3] = std::array::from_fn(|r| {
            std::array::from_fn(|col| {
                (0..3).fold(Poly::zero(&field), |acc, k| &acc + &(&c[k] * &mats[k][r][col])).rem(&m3)
            })
        });
        trace3(&a).rem(&m1).is_zero() && minors3(&a).rem(&m2).is_zero() && det3(&a).rem(&m3).is_zero()
    };

    let zero = Poly::zero(&field);
    let one = Poly::one(&field);
    match pivot {
        None => {
            for i in 0..q_res {
                for j in 0..q_res {
                    let c = [one.clone(), residue(&field, deg, i), residue(&field, deg, j)];
                    if integral_quotient(&c) {
                        return Ok(false);
                    }
                }
                let c = [zero.clone(), one.clone(), residue(&field, deg, i)];
                if integral_quotient(&c) {
                    return Ok(false);
                }
            }
            Ok(!integral_quotient(&[zero.clone(), zero, one]))
        }
        Some(k) => {
            // Kernel of the trace functional mod p is spanned by v_i, v_j.
            let inv = taus[k].mod_inverse(&m1)?;
            let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
            let kernel_vec = |i: usize| -> [Poly; 3] {
                let mut v = [zero.clone(), zero.clone(), zero.clone()];
                v[i] = one.clone();
                v[k] = (-&taus[i]).mul_mod(&inv, &m1);
                v
            };
            let vi = kernel_vec(others[0]);
            let vj = kernel_vec(others[1]);
            for s in 0..q_res {
                let sp = residue(&field, deg, s);
                let c: [Poly; 3] = std::array::from_fn(|t| (&vi[t] + &(&sp * &vj[t])).rem(&m1));
                if integral_quotient(&c) {
                    return Ok(false);
                }
            }
            Ok(!integral_quotient(&vj))
        }
    }
}

/// Root-size bound of an integral element: max_i deg(e_i)/i, scaled by 6.
fn height6(e: &[RatFn; 3]) -> Option<i64> {
    e.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| c.to_poly().map(|p| 6 * p.deg() / (i as i64 + 1)))
        .try_fold(i64::MIN, |acc, h| h.map(|h| acc.max(h)))
}

/// True iff g has a root in the field defined by f, decided by exhaustive search for an
/// integral root in the span of an integral basis of f, with degrees bounded via Cramer's rule.
pub fn same_field_check(
    f: &CubicModel,
    f_basis: &TriBasis,
    g: &CubicModel,
    budget: u128,
) -> Result<bool> {
    if f.disc().is_zero() || g.disc().is_zero() {
        return Err(Error::InseparableModel);
    }
    let field = f.field().clone();
    // Scale g to an integral model X^3 + D^2 c X + D^3 d.
    let dd = g.c.den().lcm(g.d.den())?;
    let dr = RatFn::from_poly(dd.clone());
    let gi = CubicModel::new(&(&dr * &dr) * &g.c, &(&(&dr * &dr) * &dr) * &g.d);
    let g_height = height6(&[RatFn::zero(&field), gi.c.clone(), -&gi.d])
        .ok_or_else(|| Error::InternalInconsistency("scaled model not integral".into()))?;

    let rows = f_basis.matrix();
    let mut heights = Vec::new();
    let mut traces = Vec::new();
    for row in &rows {
        let e = char_poly_elem(f, row)?;
        heights.push(
            height6(&e).ok_or_else(|| Error::PreconditionViolated("basis of f is not integral".into()))?,
        );
        traces.push(e[0].clone());
    }
    let disc_deg = disc_of_basis(f_basis, f)?.degree() as i64;
    let bounds: Vec<i64> = (0..3)
        .map(|i| {
            let s: i64 = (0..3).filter(|&k| k != i).map(|k| heights[k].max(0)).sum();
            (g_height.max(0) + s - 3 * disc_deg).div_euclid(6)
        })
        .collect();

    let q = field.order().map(|q| q as u128);
    let count = |b: i64| -> Option<u128> {
        if b < 0 {
            Some(1)
        } else {
            q?.checked_pow((b + 1) as u32)
        }
    };
    // The trace of a root of a depressed cubic vanishes, which pins t0 when tr(1) = 3 is a unit.
    let solve_t0 = field.characteristic() != 3;
    let free: Vec<usize> = if solve_t0 { vec![1, 2] } else { vec![0, 1, 2] };
    let needed = free
        .iter()
        .try_fold(1u128, |acc, &i| count(bounds[i]).and_then(|c| acc.checked_mul(c)));
    match needed {
        Some(n) if n <= budget => {}
        other => return Err(Error::BudgetExceeded { needed: other.unwrap_or(u128::MAX), budget }),
    }

    let poly_of = |b: i64, idx: u128| -> Poly {
        if b < 0 {
            return Poly::zero(&field);
        }
        residue(&field, (b + 1) as usize, idx as u64)
    };
    let sizes: Vec<u128> = (0..3).map(|i| count(bounds[i]).unwrap_or(1)).collect();
    let three_inv = if solve_t0 { Some(field.inv(&field.from_u64(3))?) } else { None };
    let mut idx = [0u128; 3];
    let total = needed.expect("checked above");
    for n in 0..total {
        let mut rem = n;
        for &i in &free {
            idx[i] = rem % sizes[i];
            rem /= sizes[i];
        }
        let mut t: [RatFn; 3] = std::array::from_fn(|i| RatFn::from_poly(poly_of(bounds[i], idx[i])));
        if let Some(inv3) = &three_inv {
            let s = &(&t[1] * &traces[1]) + &(&t[2] * &traces[2]);
            t[0] = (-&s).scale(inv3);
            if !t[0].is_poly() {
                continue;
            }
        }
        let mut cand = zero_elem(&field);
        for k in 0..3 {
            cand = add_elem(&cand, &scale_elem(&t[k], &rows[k]));
        }
        if eval_model(&gi, f, &cand).iter().all(RatFn::is_zero) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// g(u) computed in the field defined by f.
pub fn eval_model(g: &CubicModel, f: &CubicModel, u: &Elem) -> Elem {
    let u2 = mul_elem(f, u, u);
    let u3 = mul_elem(f, &u2, u);
    let mut out = add_elem(&u3, &scale_elem(&g.c, u));
    out[0] = &out[0] + &g.d;
    out
}

/// Checks that N (j y1 - w2)/a1^2 is a root of the reduced model in the field of the original one.
pub fn char3_step_isomorphism(step: &Char3Step) -> Result<bool> {
    let f = CubicModel::from_b(&step.a_before);
    let g = CubicModel::from_b(&step.a_after);
    let field = f.field().clone();
    let k = step.numerator().try_div(&(&step.a_before * &step.a_before))?;
    let j = RatFn::constant(&field, step.j.clone());
    let y2 = [-&(&k * &step.w2), &k * &j, RatFn::zero(&field)];
    Ok(eval_model(&g, &f, &y2).iter().all(RatFn::is_zero))
}

/// A root of the model in F_q(x), if any. Roots of the integral rescaling
/// X^3 + D^2 c X + D^3 d are polynomials dividing the constant term, so the
/// search runs over unit multiples of its monic divisors.
/// A root of the model in F_q(x), if any.
///
/// Roots of the integral rescaling X^3 + C X + E are polynomials of degree at most
/// max(deg C / 2, deg E / 3). Each one is the Hensel lift of a simple root modulo a
/// place of good reduction, so lifting every residue root far enough and testing
/// the result is exact.
pub fn rational_root(model: &CubicModel) -> Result<Option<RatFn>> {
    let field = model.field().clone();
    let dd = model.c.den().lcm(model.d.den())?;
    let dr = RatFn::from_poly(dd.clone());
    let c = (&(&dr * &dr) * &model.c).to_poly().expect("cleared denominators");
    let e = (&(&(&dr * &dr) * &dr) * &model.d).to_poly().expect("cleared denominators");
    if e.is_zero() {
        return Ok(Some(RatFn::zero(&field)));
    }
    let disc = crate::poly::cubic_disc(&Poly::zero(&field), &c, &e);
    if disc.is_zero() {
        return Err(Error::InseparableModel);
    }
    let eval = |r: &Poly| &(&(&r.square() * r) + &(&c * r)) + &e;
    let prime = good_prime(&field, &disc);
    let pdeg = prime.deg() as usize;
    let bound = (c.deg().max(0) as usize).div_ceil(2).max((e.deg() as usize).div_ceil(3));
    let k = (bound + 1).div_ceil(pdeg);
    let modulus = prime.pow(k as u64);
    let q = field.order().expect("small field");
    for idx in 0..q.pow(pdeg as u32) {
        let mut r = residue(&field, pdeg, idx);
        if !eval(&r).rem(&prime).is_zero() {
            continue;
        }
        let mut prec = 1;
        while prec < k {
            let fr = eval(&r).rem(&modulus);
            let dfr = (&r.square().scale_int(3) + &c).rem(&modulus);
            let step = fr.mul_mod(&dfr.mod_inverse(&modulus)?, &modulus);
            r = (&r - &step).rem(&modulus);
            prec *= 2;
        }
        if eval(&r).is_zero() {
            return Ok(Some(RatFn::new(r, dd.clone())?));
        }
    }
    Ok(None)
}

/// The first monic irreducible, by degree and then index, not dividing `d`.
fn good_prime(field: &Field, d: &Poly) -> Poly {
    let q = field.order().expect("small field");
    for deg in 1.. {
        for idx in 0..q.pow(deg as u32) {
            let mut cand = residue(field, deg, idx);
            cand = &cand + &Poly::monomial(field, field.one(), deg);
            if cand.is_irreducible() && !cand.divides(d) {
                return cand;
            }
        }
    }
    unreachable!("a nonzero polynomial has finitely many prime factors")
}

/// Separable with no root in F_q(x), hence irreducible.
pub fn model_is_irreducible(model: &CubicModel) -> Result<bool> {
    Ok(rational_root(model)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum PmaxVerdict {
    Maximal,
    NotMaximal,
    SkippedBudget { needed: String },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{BasisElem, TriBasis};
    use crate::gf::FieldCtx;

    fn rf(field: &Field, n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(Poly::from_ints(field, n), Poly::from_ints(field, d)).unwrap()
    }

    #[test]
    fn char_poly_examples() {
        let f5 = FieldCtx::prime(5).unwrap();
        let a = rf(&f5, &[1], &[0, 1]);
        let model = CubicModel::from_a(&a);
        let y = [RatFn::zero(&f5), RatFn::one(&f5), RatFn::zero(&f5)];
        let e = char_poly_elem(&model, &y).unwrap();
        assert!(e[0].is_zero());
        assert_eq!(e[1], RatFn::from_int(&f5, -3));
        assert_eq!(e[2], a);
        assert!(!is_integral(&model, &y).unwrap());

        // x y^2 for y^3 - 3y - 1/x
        let xy2 = [RatFn::zero(&f5), RatFn::zero(&f5), RatFn::x(&f5)];
        let e = char_poly_elem(&model, &xy2).unwrap();
        assert_eq!(e[0], rf(&f5, &[0, 6], &[1]));
        assert_eq!(e[1], rf(&f5, &[0, 0, 9], &[1]));
        assert_eq!(e[2], RatFn::x(&f5));

        let y2 = [RatFn::zero(&f5), RatFn::zero(&f5), RatFn::one(&f5)];
        let e = char_poly_elem(&model, &y2).unwrap();
        assert_eq!(e[2], rf(&f5, &[1], &[0, 0, 1]));

        let f3 = FieldCtx::prime(3).unwrap();
        let model = CubicModel::from_b(&RatFn::x(&f3));
        let u = [RatFn::zero(&f3), RatFn::zero(&f3), rf(&f3, &[1], &[0, 1])];
        let e = char_poly_elem(&model, &u).unwrap();
        assert_eq!(e, [RatFn::one(&f3), RatFn::one(&f3), RatFn::x(&f3)]);
    }

    #[test]
    fn inseparable_model() {
        let f3 = FieldCtx::prime(3).unwrap();
        let model = CubicModel::new(RatFn::zero(&f3), RatFn::x(&f3));
        let u = [RatFn::one(&f3), RatFn::zero(&f3), RatFn::zero(&f3)];
        assert_eq!(char_poly_elem(&model, &u), Err(Error::InseparableModel));
    }

    fn xy_basis(field: &Field) -> TriBasis {
        let x = Poly::x(field);
        let z = Poly::zero(field);
        let mut b = TriBasis::power(field);
        b.elems[1] = BasisElem { coords: [z.clone(), x.clone(), z.clone()], den: Poly::one(field) };
        b.elems[2] = BasisElem { coords: [z.clone(), z, x], den: Poly::one(field) };
        b
    }

    #[test]
    fn disc_of_basis_examples() {
        let f5 = FieldCtx::prime(5).unwrap();
        let model = CubicModel::from_a(&rf(&f5, &[1], &[0, 1]));
        let b = xy_basis(&f5);
        let expect = IdealFactored::from_poly(&Poly::from_ints(&f5, &[0, 0, -1, 0, 4])).unwrap();
        assert_eq!(disc_of_basis(&b, &model).unwrap(), expect);

        let f3 = FieldCtx::prime(3).unwrap();
        let model = CubicModel::from_b(&rf(&f3, &[1], &[0, 1]));
        let x = Poly::x(&f3);
        let z = Poly::zero(&f3);
        let mut b = TriBasis::power(&f3);
        b.elems[1] = BasisElem { coords: [z.clone(), x.clone(), z.clone()], den: Poly::one(&f3) };
        b.elems[2] = BasisElem { coords: [z.clone(), z, x.square()], den: Poly::one(&f3) };
        let expect = IdealFactored::from_poly(&x.pow(3)).unwrap();
        assert_eq!(disc_of_basis(&b, &model).unwrap(), expect);

        let model = CubicModel::from_a(&RatFn::x(&f5));
        let expect = IdealFactored::from_poly(&model.disc().to_poly().unwrap()).unwrap();
        assert_eq!(disc_of_basis(&TriBasis::power(&f5), &model).unwrap(), expect);
    }

    #[test]
    fn pmax_examples() {
        let f5 = FieldCtx::prime(5).unwrap();
        let x = Place::new(&Poly::x(&f5)).unwrap();
        // omega = x y has minimal polynomial X^3 - 3x^2 X - x^2
        let x2 = Poly::from_ints(&f5, &[0, 0, 1]);
        let omega = CubicModel::new(RatFn::from_poly(x2.scale_int(-3)), RatFn::from_poly(-&x2));
        assert!(!pmax_oracle(&omega, &TriBasis::power(&f5), &x, DEFAULT_BUDGET).unwrap());
        let mut b = TriBasis::power(&f5);
        b.elems[2].den = Poly::x(&f5);
        assert!(pmax_oracle(&omega, &b, &x, DEFAULT_BUDGET).unwrap());

        let model = CubicModel::from_a(&RatFn::x(&f5));
        let q = Place::new(&Poly::from_ints(&f5, &[1, 1])).unwrap();
        assert!(pmax_oracle(&model, &TriBasis::power(&f5), &q, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn pmax_budget() {
        let f5 = FieldCtx::prime(5).unwrap();
        let model = CubicModel::from_a(&RatFn::x(&f5));
        let q = Place::new(&Poly::from_ints(&f5, &[2, 0, 1])).unwrap();
        assert!(matches!(
            pmax_oracle(&model, &TriBasis::power(&f5), &q, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn same_field_examples() {
        let f5 = FieldCtx::prime(5).unwrap();
        let model = CubicModel::from_a(&RatFn::x(&f5));
        let b = TriBasis::power(&f5);
        assert!(same_field_check(&model, &b, &model, DEFAULT_BUDGET).unwrap());
        // y^3 - 3y - (x + 1) defines a field with a different discriminant support.
        let other = CubicModel::from_a(&rf(&f5, &[1, 1], &[1]));
        assert!(!same_field_check(&model, &b, &other, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn rational_root_finds_planted_roots() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for field in [FieldCtx::prime(2).unwrap(), FieldCtx::prime(3).unwrap(), FieldCtx::new(5, 2, None).unwrap()] {
            for _ in 0..30 {
                let r = RatFn::new(Poly::random(&field, 4, &mut rng), Poly::random_monic(&field, 2, &mut rng)).unwrap();
                let s = RatFn::from_poly(Poly::random(&field, 5, &mut rng));
                // (X - r)(X^2 + r X + s)
                let m = CubicModel::new(&s - &(&r * &r), -(&r * &s));
                if m.disc().is_zero() {
                    continue;
                }
                let root = rational_root(&m).unwrap().expect("planted root");
                let val = &(&(&(&root * &root) * &root) + &(&m.c * &root)) + &m.d;
                assert!(val.is_zero());
            }
        }
    }

    #[test]
    fn rational_root_examples() {
        let f5 = FieldCtx::prime(5).unwrap();
        assert!(model_is_irreducible(&CubicModel::from_a(&RatFn::x(&f5))).unwrap());
        // (X - 1/x)(X^2 + X/x + 1): roots include 1/x
        let inv = RatFn::x(&f5).inv().unwrap();
        let c = &RatFn::one(&f5) - &(&inv * &inv);
        let d = -&inv;
        let m = CubicModel::new(c, d);
        let r = rational_root(&m).unwrap().unwrap();
        assert!(eval_model(&m, &m, &[r, RatFn::zero(&f5), RatFn::zero(&f5)]).iter().all(RatFn::is_zero));
        assert!(!model_is_irreducible(&m).unwrap());
    }
}
