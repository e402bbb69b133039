//! The field F_q(x): normalized fractions, finite places and valuations,
//! the two denominator decompositions, and approximation at finitely many places.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{FfElem, Field};
use crate::poly::{crt, Poly, ScaleInt};

/// num/den with gcd(num, den) = 1 and den monic; zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        num.check_same_field(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFn::zero(num.field()));
        }
        let g = num.gcd(&den)?;
        let num = num.div_exact(&g);
        let den = den.div_exact(&g);
        let (lc, den) = den.monic_parts();
        let inv = num.field().inv(&lc)?;
        Ok(RatFn { num: num.scale(&inv), den })
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let den = Poly::one(p.field());
        RatFn { num: p, den }
    }

    pub fn zero(field: &Field) -> RatFn {
        RatFn { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &Field) -> RatFn {
        RatFn::from_poly(Poly::one(field))
    }

    pub fn constant(field: &Field, c: FfElem) -> RatFn {
        RatFn::from_poly(Poly::constant(field, c))
    }

    pub fn from_int(field: &Field, k: i64) -> RatFn {
        RatFn::from_poly(Poly::constant(field, field.from_i64(k)))
    }

    pub fn x(field: &Field) -> RatFn {
        RatFn::from_poly(Poly::x(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_poly(&self) -> Option<Poly> {
        self.is_poly().then(|| self.num.clone())
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<RatFn> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(RatFn { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn scale(&self, c: &FfElem) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.field());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// A square root in F_q(x), if one exists.
    pub fn sqrt(&self) -> Result<Option<RatFn>> {
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let field = self.field().clone();
        let root_of = |p: &Poly| -> Result<Option<Poly>> {
            let fac = p.factor()?;
            let unit_root = Poly::new(&field, vec![field.neg(&fac.unit), field.zero(), field.one()]).roots();
            let Some(u) = unit_root.into_iter().next() else {
                return Ok(None);
            };
            let mut acc = Poly::constant(&field, u);
            for (q, e) in &fac.factors {
                if e % 2 == 1 {
                    return Ok(None);
                }
                acc = &acc * &q.pow((e / 2) as u64);
            }
            Ok(Some(acc))
        };
        let (Some(n), Some(d)) = (root_of(&self.num)?, root_of(&self.den)?) else {
            return Ok(None);
        };
        Ok(Some(RatFn::new(n, d)?))
    }

    /// v_p(self); `None` stands for +infinity (self = 0).
    pub fn val_at(&self, place: &Place) -> Option<i64> {
        let vn = self.num.multiplicity(&place.prime)? as i64;
        let vd = self.den.multiplicity(&place.prime).unwrap_or(0) as i64;
        Some(vn - vd)
    }

    /// The image of self in F_q[x]/(m); den must be coprime to m.
    pub fn residue_mod(&self, m: &Poly) -> Result<Poly> {
        let inv = self.den.mod_inverse(m)?;
        Ok(self.num.mul_mod(&inv, m))
    }

    /// All finite places where self has nonzero valuation, with that valuation.
    pub fn support(&self) -> Result<Vec<(Place, i64)>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut out: Vec<(Place, i64)> = Vec::new();
        for (p, e) in self.num.factor()?.factors {
            out.push((Place::from_irreducible(p), e as i64));
        }
        for (p, e) in self.den.factor()?.factors {
            out.push((Place::from_irreducible(p), -(e as i64)));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Finite poles with their (negative) valuations.
    pub fn poles(&self) -> Result<Vec<(Place, i64)>> {
        Ok(self
            .den
            .factor()?
            .factors
            .into_iter()
            .map(|(p, e)| (Place::from_irreducible(p), -(e as i64)))
            .collect())
    }

    fn add_impl(&self, other: &RatFn) -> RatFn {
        if self.den == other.den {
            return RatFn::new(&self.num + &other.num, self.den.clone()).expect("nonzero den");
        }
        RatFn::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("nonzero den")
    }

    fn sub_impl(&self, other: &RatFn) -> RatFn {
        self.add_impl(&-other)
    }

    fn mul_impl(&self, other: &RatFn) -> RatFn {
        if self.is_poly() && other.is_poly() {
            return RatFn::from_poly(&self.num * &other.num);
        }
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = self.num.gcd(&other.den).unwrap_or_else(|_| Poly::one(self.field()));
        let g2 = other.num.gcd(&self.den).unwrap_or_else(|_| Poly::one(self.field()));
        let (g1, g2) = (
            if g1.is_zero() { Poly::one(self.field()) } else { g1 },
            if g2.is_zero() { Poly::one(self.field()) } else { g2 },
        );
        let num = &self.num.div_exact(&g1) * &other.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &other.den.div_exact(&g1);
        RatFn::new(num, den).expect("nonzero den")
    }
}

impl ScaleInt for RatFn {
    fn scale_int(&self, k: i64) -> RatFn {
        self.scale(&self.field().from_i64(k))
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> RatFn {
        RatFn::from_poly(p)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if s.contains(' ') || s.contains('*') || s.contains('^') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

macro_rules! rat_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a> $tr<&'a RatFn> for &'a RatFn {
            type Output = RatFn;
            fn $method(self, rhs: &'a RatFn) -> RatFn {
                self.$imp(rhs)
            }
        }
        impl $tr<RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, rhs: RatFn) -> RatFn {
                (&self).$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, rhs: &'a RatFn) -> RatFn {
                (&self).$imp(rhs)
            }
        }
        impl<'a> $tr<RatFn> for &'a RatFn {
            type Output = RatFn;
            fn $method(self, rhs: RatFn) -> RatFn {
                self.$imp(&rhs)
            }
        }
    };
}

rat_binop!(Add, add, add_impl);
rat_binop!(Sub, sub, sub_impl);
rat_binop!(Mul, mul, mul_impl);

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

/// A finite place of F_q(x), given by its monic irreducible generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Place {
    prime: Poly,
}

impl Place {
    /// Checks irreducibility and normalizes to the monic generator.
    pub fn new(prime: &Poly) -> Result<Place> {
        if !prime.is_irreducible() {
            return Err(Error::PreconditionViolated(format!("{prime} is not irreducible")));
        }
        Ok(Place { prime: prime.monic() })
    }

    pub(crate) fn from_irreducible(prime: Poly) -> Place {
        debug_assert!(prime.is_monic());
        Place { prime }
    }

    pub fn prime(&self) -> &Poly {
        &self.prime
    }

    /// Degree of the residue field over F_q.
    pub fn degree(&self) -> usize {
        self.prime.deg() as usize
    }

    pub fn val_poly(&self, p: &Poly) -> Option<i64> {
        p.multiplicity(&self.prime).map(|v| v as i64)
    }

    /// prime^e as a rational function (e may be negative).
    pub fn power(&self, e: i64) -> RatFn {
        let p = self.prime.pow(e.unsigned_abs());
        if e >= 0 {
            RatFn::from_poly(p)
        } else {
            RatFn::new(Poly::one(self.prime.field()), p).expect("nonzero")
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prime)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({})", self.prime)
    }
}

/// a = unit * alpha / (gamma^3 * beta1 * beta2^2), gcd(alpha, beta*gamma) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompPNe3 {
    /// Monic part of the numerator.
    pub alpha: Poly,
    pub beta: Poly,
    pub beta1: Poly,
    pub beta2: Poly,
    pub gamma: Poly,
    pub unit: FfElem,
}

impl DecompPNe3 {
    /// The numerator of a including its unit.
    pub fn alpha_full(&self) -> Poly {
        self.alpha.scale(&self.unit)
    }

    pub fn reassemble(&self) -> RatFn {
        let den = &self.gamma.pow(3) * &(&self.beta1 * &self.beta2.square());
        RatFn::new(self.alpha_full(), den).expect("nonzero")
    }
}

pub fn decompose_pne3(a: &RatFn) -> Result<DecompPNe3> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = a.field();
    let (unit, alpha) = a.num().monic_parts();
    let mut gamma = Poly::one(field);
    let mut beta1 = Poly::one(field);
    let mut beta2 = Poly::one(field);
    for (p, e) in a.den().factor()?.factors {
        gamma = &gamma * &p.pow((e / 3) as u64);
        match e % 3 {
            1 => beta1 = &beta1 * &p,
            2 => beta2 = &beta2 * &p,
            _ => {}
        }
    }
    let beta = &beta1 * &beta2.square();
    Ok(DecompPNe3 { alpha, beta, beta1, beta2, gamma, unit })
}

/// b = unit * xi1 * xi2^2 / beta with beta = prod p_i^{l_i}, every l_i prime to 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompP3 {
    pub xi1: Poly,
    pub xi2: Poly,
    pub unit: FfElem,
    pub beta: Poly,
    pub places: Vec<(Place, u32)>,
}

impl DecompP3 {
    pub fn reassemble(&self) -> RatFn {
        let num = (&self.xi1 * &self.xi2.square()).scale(&self.unit);
        RatFn::new(num, self.beta.clone()).expect("nonzero")
    }
}

pub fn decompose_p3(b: &RatFn) -> Result<DecompP3> {
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = b.field();
    let (unit, num) = b.num().monic_parts();
    let mut xi1 = Poly::one(field);
    let mut xi2 = Poly::one(field);
    for (p, e) in num.factor()?.factors {
        xi2 = &xi2 * &p.pow((e / 2) as u64);
        if e % 2 == 1 {
            xi1 = &xi1 * &p;
        }
    }
    let mut places = Vec::new();
    for (p, e) in b.den().factor()?.factors {
        if e % 3 == 0 {
            return Err(Error::NotStandardForm(format!("v_({p})(b) = -{e} is divisible by 3")));
        }
        places.push((Place::from_irreducible(p), e));
    }
    Ok(DecompP3 { xi1, xi2, unit, beta: b.den().clone(), places })
}

/// A local requirement for [`approx_elem`].
#[derive(Debug, Clone)]
pub enum ApproxTarget {
    /// v_p(f - p^e) >= e + 1 with e < 0: f has a pole of exact order -e at p,
    /// with leading coefficient 1.
    Monomial { place: Place, exp: i64 },
    /// v_p(f - residue) >= prec.
    Congruence { place: Place, residue: Poly, prec: u32 },
}

impl ApproxTarget {
    fn place(&self) -> &Place {
        match self {
            ApproxTarget::Monomial { place, .. } | ApproxTarget::Congruence { place, .. } => place,
        }
    }
}

/// An element meeting every target and integral at all other finite places.
/// Pole targets are met by monomials, congruence targets by CRT.
pub fn approx_elem(field: &Field, targets: &[ApproxTarget]) -> Result<RatFn> {
    for (i, t) in targets.iter().enumerate() {
        if targets[..i].iter().any(|s| s.place() == t.place()) {
            return Err(Error::ConflictingTargets(format!("place {} repeated", t.place())));
        }
    }
    let mut poles = RatFn::zero(field);
    for t in targets {
        if let ApproxTarget::Monomial { place, exp } = t {
            if *exp >= 0 {
                return Err(Error::ConflictingTargets(format!(
                    "monomial target at {place} needs a negative exponent, got {exp}"
                )));
            }
            poles = &poles + &place.power(*exp);
        }
    }
    let mut pairs = Vec::new();
    for t in targets {
        if let ApproxTarget::Congruence { place, residue, prec } = t {
            let m = place.prime().pow(*prec as u64);
            // The pole part is a unit-or-integral at other places; compensate for it.
            let adj = poles.residue_mod(&m)?;
            pairs.push(((residue - &adj).rem(&m), m));
        }
    }
    let poly_part = if pairs.is_empty() { Poly::zero(field) } else { crt(&pairs)? };
    Ok(&poles + &RatFn::from_poly(poly_part))
}
