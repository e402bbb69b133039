//! Standard forms: Artin–Schreier reduction in characteristic 2 and the
//! iterative pole reduction for the characteristic 3 model z^3 + b z + b^2.

use crate::error::{Error, Result};
use crate::gf::{FfElem, Field};
use crate::poly::Poly;
use crate::ratfn::{approx_elem, ApproxTarget, Place, RatFn};

/// Default guard for [`char3_standard_form`].
pub const CHAR3_ITERATION_CAP: usize = 10_000;

/// b_std = b + shift^2 + shift, with every finite pole of b_std of odd order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASReduction {
    pub b_std: RatFn,
    pub shift: RatFn,
    /// (place, -v(b_std)) for each finite pole of b_std.
    pub ramified: Vec<(Place, u32)>,
}

fn require_char(field: &Field, p: u32, label: &'static str) -> Result<()> {
    let got = field.characteristic();
    if got != p {
        return Err(Error::WrongCharacteristic { expected: label, got });
    }
    Ok(())
}

/// Removes even-order finite poles of b one leading term at a time.
pub fn hasse_reduce(b: &RatFn) -> Result<ASReduction> {
    let field = b.field().clone();
    require_char(&field, 2, "2")?;
    let mut cur = b.clone();
    let mut shift = RatFn::zero(&field);
    loop {
        let poles = cur.poles()?;
        let Some((place, v)) = poles.iter().find(|(_, v)| v % 2 == 0) else {
            let ramified = poles.into_iter().map(|(pl, v)| (pl, (-v) as u32)).collect();
            return Ok(ASReduction { b_std: cur, shift, ramified });
        };
        let m = -v / 2;
        let u = (&cur * &place.power(2 * m)).residue_mod(place.prime())?;
        let s = u.pth_root_mod(place.prime());
        let w = &RatFn::from_poly(s) * &place.power(-m);
        cur = &(&cur + &(&w * &w)) + &w;
        shift = &shift + &w;
    }
}

/// A root of z^2 + z = b in F_q(x), if one exists.
pub fn as_root(b: &RatFn) -> Result<Option<RatFn>> {
    let field = b.field().clone();
    require_char(&field, 2, "2")?;
    let red = hasse_reduce(b)?;
    let Some(mut rest) = red.b_std.to_poly() else {
        return Ok(None);
    };
    let mut w = Poly::zero(&field);
    while rest.deg() >= 1 {
        let d = rest.deg() as usize;
        if d % 2 == 1 {
            return Ok(None);
        }
        let c = field.frob_root(&rest.lc());
        let term = Poly::monomial(&field, c, d / 2);
        rest = &(&rest - &term.square()) - &term;
        w = &w + &term;
    }
    let c0 = rest.coeff(0);
    let quad = Poly::new(&field, vec![c0, field.one(), field.one()]);
    let Some(r) = quad.roots().into_iter().next() else {
        return Ok(None);
    };
    let w = &w + &Poly::constant(&field, r);
    Ok(Some(&RatFn::from_poly(w) + &red.shift))
}

/// One pole-reduction step of the characteristic 3 model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Char3Step {
    pub place: Place,
    pub a_before: RatFn,
    pub a_after: RatFn,
    pub w2: RatFn,
    pub j: FfElem,
}

impl Char3Step {
    /// j a1^2 + w2^3 + a1 w2; the new generator is this times (j y1 - w2)/a1^2.
    pub fn numerator(&self) -> RatFn {
        step_numerator(&self.a_before, &self.w2, &self.j)
    }
}

fn step_numerator(a1: &RatFn, w2: &RatFn, j: &FfElem) -> RatFn {
    let a1sq = a1 * a1;
    &(&a1sq.scale(j) + &(&(w2 * w2) * w2)) + &(a1 * w2)
}

/// A coefficient b with no finite pole of order divisible by 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Char3Form {
    pub b: RatFn,
    pub trace: Vec<Char3Step>,
}

/// Raises v_p(a1) at a place where it is negative and divisible by 3,
/// leaving every other pole unchanged and creating no new ones.
pub fn char3_reduce_place(a1: &RatFn, place: &Place, j: &FfElem) -> Result<(RatFn, RatFn)> {
    let field = a1.field().clone();
    require_char(&field, 3, "3")?;
    if j.is_zero() {
        return Err(Error::PreconditionViolated("j must be a nonzero constant".into()));
    }
    let v = match a1.val_at(place) {
        Some(v) if v < 0 && v % 3 == 0 => v,
        other => {
            return Err(Error::PreconditionViolated(format!(
                "need a pole of order divisible by 3 at {place}, valuation is {other:?}"
            )))
        }
    };
    let m = -v / 3;
    let scale = approx_elem(&field, &[ApproxTarget::Monomial { place: place.clone(), exp: -2 * m }])?;

    // Leading unit of -j a1^2 / scale^3 at the place; its cube root seeds w1.
    let lead = (&(a1 * a1) * &place.power(6 * m)).scale(&field.neg(j));
    let u = lead.residue_mod(place.prime())?;
    let w0 = if RatFn::from_poly(u.clone()) == lead { &u + place.prime() } else { u };
    let w_star = w0.pth_root_mod(place.prime());

    let mut targets = vec![ApproxTarget::Congruence {
        place: place.clone(),
        residue: w_star,
        prec: 1,
    }];
    for (q, e) in a1.num().factor()?.factors {
        targets.push(ApproxTarget::Congruence {
            place: Place::new(&q)?,
            residue: Poly::zero(&field),
            prec: e,
        });
    }
    let w1 = approx_elem(&field, &targets)?;
    let w2 = &scale * &w1;
    let n = step_numerator(a1, &w2, j);
    let a2 = (&n * &n).try_div(&(&(a1 * a1) * a1))?;
    check_step(a1, &a2, place)?;
    Ok((a2, w2))
}

fn check_step(a1: &RatFn, a2: &RatFn, place: &Place) -> Result<()> {
    if a2.is_zero() {
        return Err(Error::PostconditionFailed("reduced coefficient vanished".into()));
    }
    let before = a1.val_at(place).unwrap_or(i64::MAX);
    let after = a2.val_at(place).unwrap_or(i64::MAX);
    if after <= before {
        return Err(Error::PostconditionFailed(format!(
            "valuation at {place} did not increase ({before} -> {after})"
        )));
    }
    for (q, v1) in a1.support()? {
        if q == *place {
            continue;
        }
        let v2 = a2.val_at(&q).unwrap_or(i64::MAX);
        if v1 < 0 && v2 != v1 {
            return Err(Error::PostconditionFailed(format!("pole at {q} changed ({v1} -> {v2})")));
        }
        if v1 > 0 && v2 <= 0 {
            return Err(Error::PostconditionFailed(format!("zero at {q} was lost ({v1} -> {v2})")));
        }
    }
    for (q, v2) in a2.poles()? {
        if q != *place && a1.val_at(&q).unwrap_or(0) >= 0 {
            return Err(Error::PostconditionFailed(format!("new pole at {q} of order {}", -v2)));
        }
    }
    Ok(())
}

/// Places where a has a pole of order divisible by 3.
pub fn char3_bad_places(a: &RatFn) -> Result<Vec<(Place, i64)>> {
    Ok(a.poles()?.into_iter().filter(|(_, v)| v % 3 == 0).collect())
}

pub fn char3_standard_form(a1: &RatFn, j: &FfElem) -> Result<Char3Form> {
    char3_standard_form_capped(a1, j, CHAR3_ITERATION_CAP)
}

pub fn char3_standard_form_capped(a1: &RatFn, j: &FfElem, cap: usize) -> Result<Char3Form> {
    require_char(a1.field(), 3, "3")?;
    if a1.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut cur = a1.clone();
    let mut trace: Vec<Char3Step> = Vec::new();
    loop {
        let bad = char3_bad_places(&cur)?;
        if bad.is_empty() {
            return Ok(Char3Form { b: cur, trace });
        }
        if trace.len() >= cap {
            return Err(Error::IterationCap(cap));
        }
        // Stay on the previous place while it is still bad.
        let place = trace
            .last()
            .map(|s| &s.place)
            .filter(|p| bad.iter().any(|(q, _)| q == *p))
            .cloned()
            .unwrap_or_else(|| bad[0].0.clone());
        let (next, w2) = char3_reduce_place(&cur, &place, j)?;
        trace.push(Char3Step { place, a_before: cur, a_after: next.clone(), w2, j: j.clone() });
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    fn rf(field: &Field, n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(Poly::from_ints(field, n), Poly::from_ints(field, d)).unwrap()
    }

    #[test]
    fn hasse_examples() {
        let f2 = FieldCtx::prime(2).unwrap();
        let b = rf(&f2, &[1, 0, 1], &[0, 0, 1]);
        let r = hasse_reduce(&b).unwrap();
        assert_eq!(r.b_std, rf(&f2, &[1, 1], &[0, 1]));
        assert_eq!(r.shift, rf(&f2, &[1], &[0, 1]));
        assert_eq!(r.ramified, vec![(Place::new(&Poly::x(&f2)).unwrap(), 1)]);

        let b = rf(&f2, &[1], &[0, 1]);
        let r = hasse_reduce(&b).unwrap();
        assert_eq!(r.b_std, b);
        assert!(r.shift.is_zero());

        let b = rf(&f2, &[1, 1, 0, 1], &[1]);
        let r = hasse_reduce(&b).unwrap();
        assert!(r.ramified.is_empty());
        assert!(r.b_std.is_poly());
    }

    #[test]
    fn hasse_wrong_char() {
        let f3 = FieldCtx::prime(3).unwrap();
        assert!(matches!(
            hasse_reduce(&RatFn::x(&f3)),
            Err(Error::WrongCharacteristic { .. })
        ));
    }

    #[test]
    fn hasse_over_extension() {
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let t = f4.generator();
        let x2x1 = Poly::from_ints(&f4, &[1, 1, 1]);
        // t / (x^2+x+1)^4 + 1/x^2
        let b = &RatFn::new(Poly::constant(&f4, t), x2x1.pow(4)).unwrap()
            + &rf(&f4, &[1], &[0, 0, 1]);
        let r = hasse_reduce(&b).unwrap();
        assert_eq!(&r.b_std - &b, &(&r.shift * &r.shift) + &r.shift);
        for (_, l) in &r.ramified {
            assert_eq!(l % 2, 1);
        }
        let again = hasse_reduce(&r.b_std).unwrap();
        assert!(again.shift.is_zero());
    }

    #[test]
    fn as_root_examples() {
        let f2 = FieldCtx::prime(2).unwrap();
        let w = as_root(&rf(&f2, &[0, 1, 1], &[1])).unwrap().unwrap();
        assert!(w == RatFn::x(&f2) || w == rf(&f2, &[1, 1], &[1]));
        assert_eq!(as_root(&rf(&f2, &[1, 1], &[0, 1])).unwrap(), None);
        assert_eq!(as_root(&RatFn::zero(&f2)).unwrap(), Some(RatFn::zero(&f2)));
        // z^2 + z = 1 has no root over GF(2)
        assert_eq!(as_root(&RatFn::one(&f2)).unwrap(), None);
    }

    #[test]
    fn char3_step_examples() {
        let f3 = FieldCtx::prime(3).unwrap();
        let x = Place::new(&Poly::x(&f3)).unwrap();
        let a1 = rf(&f3, &[1], &[0, 0, 0, 1]);
        let (a2, _) = char3_reduce_place(&a1, &x, &f3.one()).unwrap();
        let v = a2.val_at(&x).unwrap();
        assert!(v > -3);
        assert!(matches!(
            char3_reduce_place(&rf(&f3, &[1], &[0, 1]), &x, &f3.one()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn char3_explicit_generator_change() {
        // y2 = N (j y1 - w2) / a1^2 satisfies y2^3 + a2 y2 + a2^2 = 0.
        let f3 = FieldCtx::prime(3).unwrap();
        let x = Place::new(&Poly::x(&f3)).unwrap();
        let a1 = rf(&f3, &[2, 1], &[0, 0, 0, 0, 0, 0, 1]);
        for j in [f3.one(), f3.from_u64(2)] {
            let (a2, w2) = char3_reduce_place(&a1, &x, &j).unwrap();
            let n = step_numerator(&a1, &w2, &j);
            let k = n.try_div(&(&a1 * &a1)).unwrap();
            // Cubic in y1 of k^3 (j y1 - w2)^3 + a2 k (j y1 - w2) + a2^2, reduced by y1^3 = -a1 y1 - a1^2.
            let (jj, mw) = (RatFn::constant(&f3, j.clone()), -&w2);
            let k3 = &(&k * &k) * &k;
            // (j y1 + mw)^3 = j y1^3 + mw^3 = j(-a1 y1 - a1^2) + mw^3 in char 3
            let cube_lin = -&(&jj * &a1);
            let cube_const = &(-&(&jj * &(&a1 * &a1))) + &(&(&mw * &mw) * &mw);
            let lin = &(&k3 * &cube_lin) + &(&(&a2 * &k) * &jj);
            let cons = &(&(&k3 * &cube_const) + &(&(&a2 * &k) * &mw)) + &(&a2 * &a2);
            assert!(lin.is_zero());
            assert!(cons.is_zero());
        }
    }

    #[test]
    fn char3_standard_form_examples() {
        let f3 = FieldCtx::prime(3).unwrap();
        let a = rf(&f3, &[1], &[0, 1]);
        let s = char3_standard_form(&a, &f3.one()).unwrap();
        assert_eq!(s.b, a);
        assert!(s.trace.is_empty());

        let den = &Poly::x(&f3).pow(3) * &Poly::from_ints(&f3, &[1, 1]).pow(3);
        let a = RatFn::new(Poly::one(&f3), den).unwrap();
        let s = char3_standard_form(&a, &f3.one()).unwrap();
        assert!(char3_bad_places(&s.b).unwrap().is_empty());
        for st in &s.trace {
            assert!(st.a_after.val_at(&st.place) > st.a_before.val_at(&st.place));
        }
    }
}
