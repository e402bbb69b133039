//! Closed-form discriminant and index ideals, and ramification data at finite places.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::Poly;
use crate::ratfn::{DecompP3, DecompPNe3, Place, RatFn};
use crate::standard_form::hasse_reduce;

/// A nonzero ideal of F_q[x] as a product of prime powers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdealFactored {
    factors: Vec<(Place, u32)>,
}

impl IdealFactored {
    pub fn one() -> IdealFactored {
        IdealFactored::default()
    }

    /// Merges repeated places and drops zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Place, u32)>>(it: I) -> IdealFactored {
        let mut map: BTreeMap<Place, u32> = BTreeMap::new();
        for (p, e) in it {
            *map.entry(p).or_default() += e;
        }
        IdealFactored { factors: map.into_iter().filter(|(_, e)| *e > 0).collect() }
    }

    /// The ideal generated by a nonzero polynomial.
    pub fn from_poly(p: &Poly) -> Result<IdealFactored> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = p.factor()?;
        Ok(IdealFactored::from_factors(
            f.factors.into_iter().map(|(q, e)| (Place::from_irreducible(q), e)),
        ))
    }

    pub fn factors(&self) -> &[(Place, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, place: &Place) -> u32 {
        self.factors.iter().find(|(p, _)| p == place).map_or(0, |(_, e)| *e)
    }

    pub fn places(&self) -> impl Iterator<Item = &Place> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// The monic generator.
    pub fn generator(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(field), |acc, (p, e)| &acc * &p.prime().pow(*e as u64))
    }

    pub fn mul(&self, other: &IdealFactored) -> IdealFactored {
        IdealFactored::from_factors(self.factors.iter().chain(other.factors.iter()).cloned())
    }

    pub fn pow(&self, k: u32) -> IdealFactored {
        IdealFactored::from_factors(self.factors.iter().map(|(p, e)| (p.clone(), e * k)))
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(p, e)| p.degree() * *e as usize).sum()
    }
}

impl fmt::Display for IdealFactored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { format!("({p})") } else { format!("({p})^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RamKind {
    /// e = 3.
    TotalE3,
    /// e = 2 at a single place above.
    PartialE2,
}

/// Ramification at one finite place, with the exponent it contributes to the discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamEntry {
    pub place: Place,
    pub kind: RamKind,
    pub disc_exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscReport {
    /// Discriminant of the integral generator used for the basis.
    pub delta_omega: Poly,
    pub disc: IdealFactored,
    pub index: IdealFactored,
    /// Squarefree and square parts of 4 gamma^6 beta^2 - alpha^2 (odd p >= 5).
    pub eta: Option<(Poly, Poly)>,
    /// Characteristic 2: l_p at each prime of the numerator (-1 when unramified).
    /// Characteristic 3: pole orders of b.
    pub ell: Vec<(Place, i64)>,
    pub ram: Vec<RamEntry>,
}

impl DiscReport {
    /// (delta_omega) = index^2 * disc as ideals.
    pub fn index_identity_holds(&self) -> Result<bool> {
        let lhs = IdealFactored::from_poly(&self.delta_omega)?;
        Ok(lhs == self.index.pow(2).mul(&self.disc))
    }
}

fn char_of(field: &Field) -> u32 {
    field.characteristic()
}

/// 27 beta1^4 beta2^2 (4 gamma^6 beta^2 - alpha^2), the discriminant of the integral generator.
pub fn delta_of_omega(d: &DecompPNe3) -> Result<Poly> {
    let p = char_of(d.alpha.field());
    if p == 3 {
        return Err(Error::WrongCharacteristic { expected: "not 3", got: p });
    }
    Ok((&(&d.beta1.pow(4) * &d.beta2.square()) * &resolvent_part(d)).scale_int(27))
}

/// 4 gamma^6 beta^2 - alpha^2.
pub fn resolvent_part(d: &DecompPNe3) -> Poly {
    let alpha = d.alpha_full();
    &(&d.gamma.pow(6) * &d.beta.square()).scale_int(4) - &alpha.square()
}

fn ideal_of(parts: &[(&Poly, u32)]) -> Result<IdealFactored> {
    let mut acc = IdealFactored::one();
    for (p, e) in parts {
        acc = acc.mul(&IdealFactored::from_poly(p)?.pow(*e));
    }
    Ok(acc)
}

pub fn disc_index_podd(d: &DecompPNe3) -> Result<DiscReport> {
    let field = d.alpha.field().clone();
    let p = char_of(&field);
    if p == 2 || p == 3 {
        return Err(Error::WrongCharacteristic { expected: "at least 5", got: p });
    }
    let h = resolvent_part(d);
    if h.is_zero() {
        return Err(Error::DegenerateInput("4 gamma^6 beta^2 = alpha^2".into()));
    }
    let mut eta1 = Poly::one(&field);
    let mut eta2 = Poly::one(&field);
    for (q, e) in h.factor()?.factors {
        eta2 = &eta2 * &q.pow((e / 2) as u64);
        if e % 2 == 1 {
            eta1 = &eta1 * &q;
        }
    }
    let b12 = &d.beta1 * &d.beta2;
    let disc = ideal_of(&[(&b12, 2), (&eta1, 1)])?;
    let index = ideal_of(&[(&d.beta1, 1), (&eta2, 1)])?;
    Ok(DiscReport {
        delta_omega: delta_of_omega(d)?,
        disc,
        index,
        eta: Some((eta1, eta2)),
        ell: Vec::new(),
        ram: ram_classify(&d.reassemble())?,
    })
}

/// 1/a^2 + 1, the Artin–Schreier parameter of the quadratic resolvent in characteristic 2.
pub fn resolvent_as_param(a: &RatFn) -> Result<RatFn> {
    Ok(&(a * a).inv()? + &RatFn::one(a.field()))
}

/// l_p for each prime of alpha: the pole order of the reduced resolvent parameter, or -1.
pub fn ell_p2(d: &DecompPNe3, a: &RatFn) -> Result<Vec<(Place, i64)>> {
    let red = hasse_reduce(&resolvent_as_param(a)?)?;
    let mut out = Vec::new();
    for (q, _) in d.alpha.factor()?.factors {
        let place = Place::from_irreducible(q);
        let l = red
            .ramified
            .iter()
            .find(|(pl, _)| *pl == place)
            .map_or(-1, |(_, l)| *l as i64);
        out.push((place, l));
    }
    for (pl, _) in &red.ramified {
        if !out.iter().any(|(q, _)| q == pl) {
            return Err(Error::InternalInconsistency(format!(
                "resolvent ramifies at {pl}, which does not divide the numerator"
            )));
        }
    }
    Ok(out)
}

/// The alpha-part of the index: prod p^(v_p(alpha) - (l_p + 1)/2) over primes of alpha.
pub fn alpha_index_part(d: &DecompPNe3, ell: &[(Place, i64)]) -> Result<IdealFactored> {
    let mut parts = Vec::new();
    for (place, l) in ell {
        if (l + 1) % 2 != 0 {
            return Err(Error::InternalInconsistency(format!("l = {l} at {place} is even")));
        }
        let v = place.val_poly(&d.alpha).unwrap_or(0);
        let e = v - (l + 1) / 2;
        if e < 0 {
            return Err(Error::InternalInconsistency(format!(
                "negative index exponent {e} at {place}"
            )));
        }
        parts.push((place.clone(), e as u32));
    }
    Ok(IdealFactored::from_factors(parts))
}

pub fn disc_index_p2(d: &DecompPNe3, a: &RatFn) -> Result<DiscReport> {
    let field = d.alpha.field().clone();
    let p = char_of(&field);
    if p != 2 {
        return Err(Error::WrongCharacteristic { expected: "2", got: p });
    }
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ell = ell_p2(d, a)?;
    let b12 = &d.beta1 * &d.beta2;
    let ram_part = IdealFactored::from_factors(
        ell.iter().filter(|(_, l)| *l > 0).map(|(pl, l)| (pl.clone(), (*l + 1) as u32)),
    );
    let disc = ideal_of(&[(&b12, 2)])?.mul(&ram_part);
    let index = ideal_of(&[(&d.beta1, 1)])?.mul(&alpha_index_part(d, &ell)?);
    Ok(DiscReport {
        delta_omega: delta_of_omega(d)?,
        disc,
        index,
        eta: None,
        ell,
        ram: ram_classify(a)?,
    })
}

/// Exponent of p_i in P_j: 1 + floor(2 j l / 3).
pub fn p3_basis_exponent(l: u32, j: u32) -> u32 {
    1 + (2 * j * l) / 3
}

/// Index exponent at a pole of order l, relative to P_1 z.
pub fn p3_index_exponent(l: u32) -> u32 {
    2 + 3 * ((2 * l) / 3) - 2 * l
}

/// P_j = prod p_i^(1 + floor(2 j l_i / 3)).
pub fn p3_scale(d: &DecompP3, j: u32) -> Poly {
    let field = d.beta.field();
    d.places
        .iter()
        .fold(Poly::one(field), |acc, (pl, l)| &acc * &pl.prime().pow(p3_basis_exponent(*l, j) as u64))
}

/// Characteristic 3, relative to the integral generator P_1 z.
pub fn disc_p3(d: &DecompP3) -> Result<DiscReport> {
    let field = d.beta.field().clone();
    let p = char_of(&field);
    if p != 3 {
        return Err(Error::WrongCharacteristic { expected: "3", got: p });
    }
    for (pl, l) in &d.places {
        if l % 3 == 0 {
            return Err(Error::NotStandardForm(format!("pole of order {l} at {pl}")));
        }
    }
    let pole_part = IdealFactored::from_factors(d.places.iter().map(|(pl, l)| (pl.clone(), l + 2)));
    let disc = ideal_of(&[(&d.xi1, 1)])?.mul(&pole_part);
    let index = ideal_of(&[(&d.xi1, 1), (&d.xi2, 3)])?.mul(&IdealFactored::from_factors(
        d.places.iter().map(|(pl, l)| (pl.clone(), p3_index_exponent(*l))),
    ));
    // Discriminant of X^3 + b P1^2 X + b^2 P1^3 is 2 b^3 P1^6 in characteristic 3.
    let b = d.reassemble();
    let p1 = RatFn::from_poly(p3_scale(d, 1));
    let delta = (&(&(&b * &b) * &b) * &p1.pow(6)?).scale(&field.from_u64(2));
    let delta_omega = delta
        .to_poly()
        .ok_or_else(|| Error::InternalInconsistency("discriminant of P1 z is not integral".into()))?;
    Ok(DiscReport {
        delta_omega,
        disc,
        index,
        eta: None,
        ell: d.places.iter().map(|(pl, l)| (pl.clone(), *l as i64)).collect(),
        ram: ram_classify(&b)?,
    })
}

/// Ramification at finite places read directly off the model coefficient
/// (a for y^3 - 3y - a when p != 3, b for z^3 + bz + b^2 when p = 3).
pub fn ram_classify(coef: &RatFn) -> Result<Vec<RamEntry>> {
    let field = coef.field().clone();
    let p = char_of(&field);
    let mut out = Vec::new();
    match p {
        3 => {
            for (place, v) in coef.support()? {
                if v < 0 && v % 3 != 0 {
                    out.push(RamEntry { place, kind: RamKind::TotalE3, disc_exponent: (2 - v) as u32 });
                } else if v > 0 && v % 2 == 1 {
                    out.push(RamEntry { place, kind: RamKind::PartialE2, disc_exponent: 1 });
                }
            }
        }
        _ => {
            for (place, v) in coef.poles()? {
                if v % 3 != 0 {
                    out.push(RamEntry { place, kind: RamKind::TotalE3, disc_exponent: 2 });
                }
            }
            if p == 2 {
                let red = hasse_reduce(&resolvent_as_param(coef)?)?;
                for (place, l) in red.ramified {
                    out.push(RamEntry { place, kind: RamKind::PartialE2, disc_exponent: l + 1 });
                }
            } else {
                let d = crate::ratfn::decompose_pne3(coef)?;
                let h = resolvent_part(&d);
                if h.is_zero() {
                    return Err(Error::DegenerateInput("4 gamma^6 beta^2 = alpha^2".into()));
                }
                for (q, e) in h.factor()?.factors {
                    if e % 2 == 1 {
                        out.push(RamEntry {
                            place: Place::from_irreducible(q),
                            kind: RamKind::PartialE2,
                            disc_exponent: 1,
                        });
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.place.cmp(&b.place));
    Ok(out)
}

/// The discriminant ideal assembled from per-place ramification data.
pub fn disc_from_ram(ram: &[RamEntry]) -> IdealFactored {
    IdealFactored::from_factors(ram.iter().map(|r| (r.place.clone(), r.disc_exponent)))
}
