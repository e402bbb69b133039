//! Dense univariate polynomials over a finite field: the ring F_q[x].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{FfElem, Field};

#[derive(Clone)]
pub struct Poly {
    field: Field,
    /// Lowest degree first; no trailing zeros. Empty for the zero polynomial.
    coeffs: Vec<FfElem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FfElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// From integer coefficients, lowest degree first.
    pub fn from_ints(field: &Field, cs: &[i64]) -> Poly {
        Poly::new(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: FfElem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: FfElem, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FfElem] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FfElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with -1 standing in for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> FfElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn same_field(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    pub fn check_same_field(&self, other: &Poly) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    /// Splits off the leading coefficient: returns (lc, self / lc). Zero maps to (0, 0).
    pub fn monic_parts(&self) -> (FfElem, Poly) {
        if self.is_zero() {
            return (self.field.zero(), self.clone());
        }
        let lc = self.lc();
        let inv = self.field.inv(&lc).expect("nonzero leading coefficient");
        (lc, self.scale(&inv))
    }

    pub fn monic(&self) -> Poly {
        self.monic_parts().1
    }

    pub fn scale(&self, c: &FfElem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn scale_int(&self, k: i64) -> Poly {
        self.scale(&self.field.from_i64(k))
    }

    /// Multiplies by x^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        Ok(self.add_impl(other))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        Ok(self.sub_impl(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        Ok(self.mul_impl(other))
    }

    fn add_impl(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f, coeffs)
    }

    fn sub_impl(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => f.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f, coeffs)
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        if f.degree() == 1 {
            let p = f.characteristic() as u64;
            let mut acc = vec![0u64; len];
            for (i, a) in self.coeffs.iter().enumerate() {
                let a = a.coords()[0] as u64;
                if a == 0 {
                    continue;
                }
                for (j, b) in other.coeffs.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + a * b.coords()[0] as u64) % p;
                }
            }
            return Poly::new(f, acc.into_iter().map(|c| f.from_u64(c)).collect());
        }
        let mut out = vec![f.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn square(&self) -> Poly {
        self * self
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Quotient and remainder with deg(rem) < deg(divisor).
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(&divisor.lc())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = f.mul(&r[i], &inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                r[i - db + j] = f.sub(&r[i - db + j], &f.mul(&c, d));
            }
            q[i - db] = c;
        }
        r.truncate(db);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    /// Remainder modulo `m`. Panics on a zero modulus.
    pub fn rem(&self, m: &Poly) -> Poly {
        self.divrem(m).expect("nonzero modulus").1
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, mut k: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// self^q mod m, as n successive p-th powers.
    pub fn frobenius_mod(&self, m: &Poly) -> Poly {
        let p = self.field.characteristic() as u64;
        let mut h = self.rem(m);
        for _ in 0..self.field.degree() {
            h = h.pow_mod(p, m);
        }
        h
    }

    /// The p-th root of self in F_q[x]/(m), m irreducible: self^(Q/p) with Q = q^deg m.
    pub fn pth_root_mod(&self, m: &Poly) -> Poly {
        let p = self.field.characteristic() as u64;
        let steps = self.field.degree() * m.deg().max(0) as usize;
        let mut h = self.rem(m);
        for _ in 1..steps {
            h = h.pow_mod(p, m);
        }
        h
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.scale_int(c, i as i64))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: &FfElem) -> FfElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// p-th root of a polynomial whose derivative vanishes.
    pub fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| f.frob_root(c))
            .collect();
        debug_assert!(self.coeffs.iter().enumerate().all(|(i, c)| i % p == 0 || c.is_zero()));
        Poly::new(f, coeffs)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns (g, s, t) with g monic and s*self + t*other = g.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = f.inv(&r0.lc())?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let g = self.gcd(other)?;
        Ok((self * other).div_exact(&g).monic())
    }

    pub fn is_coprime(&self, other: &Poly) -> bool {
        self.gcd(other).map(|g| g.is_one()).unwrap_or(false)
    }

    /// b with self * b = 1 mod m and deg(b) < deg(m).
    pub fn mod_inverse(&self, m: &Poly) -> Result<Poly> {
        self.check_same_field(m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if m.is_constant() {
            return Ok(Poly::zero(&self.field));
        }
        let a = self.rem(m);
        if a.is_zero() {
            return Err(Error::NotInvertible(m.to_string()));
        }
        let (g, s, _) = a.xgcd(m)?;
        if !g.is_one() {
            return Err(Error::NotInvertible(m.to_string()));
        }
        Ok(s.rem(m))
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.is_constant();
        }
        self.gcd(&d).map(|g| g.is_one()).unwrap_or(false)
    }

    /// Ben-Or test: no irreducible factor of degree <= deg/2.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let x = Poly::x(&self.field);
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.frobenius_mod(&f);
            if !(&h - &x).gcd(&f).expect("nonzero").is_one() {
                return false;
            }
        }
        true
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, max_deg: usize, rng: &mut R) -> Poly {
        Poly::new(field, (0..=max_deg).map(|_| field.random(rng)).collect())
    }

    pub fn random_monic<R: Rng + ?Sized>(field: &Field, deg: usize, rng: &mut R) -> Poly {
        let mut coeffs: Vec<FfElem> = (0..deg).map(|_| field.random(rng)).collect();
        coeffs.push(field.one());
        Poly::new(field, coeffs)
    }

    /// Multiplicity of the irreducible `prime` in self; `None` for zero.
    pub fn multiplicity(&self, prime: &Poly) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(prime).expect("nonzero prime");
            if !r.is_zero() {
                return Some(k);
            }
            cur = q;
            k += 1;
        }
    }

    /// Complete factorization into monic irreducibles. The random equal-degree
    /// splitting is driven by `seed`; factors are returned in canonical order,
    /// so the result does not depend on the seed.
    pub fn factor_seeded(&self, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (unit, monic) = self.monic_parts();
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        for (sqf, mult) in squarefree_decomposition(&monic) {
            for (part, d) in distinct_degree(&sqf) {
                for irr in equal_degree(&part, d, &mut rng) {
                    factors.push((irr, mult));
                }
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        // Squarefree parts are coprime, but merge defensively for equal primes.
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        Ok(Factorization { unit, factors: merged })
    }

    pub fn factor(&self) -> Result<Factorization> {
        self.factor_seeded(0)
    }

    /// Roots in the base field, sorted by field index.
    pub fn roots(&self) -> Vec<FfElem> {
        if self.is_zero() || self.is_constant() {
            return vec![];
        }
        let f = self.monic();
        let x = Poly::x(&self.field);
        let lin = (&x.frobenius_mod(&f) - &x).gcd(&f).expect("nonzero");
        if lin.is_constant() {
            return vec![];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let field = &self.field;
        let mut roots: Vec<FfElem> = equal_degree(&lin, 1, &mut rng)
            .into_iter()
            .map(|l| field.neg(&l.coeff(0)))
            .collect();
        roots.sort_by_key(|r| field.index_of(r));
        roots
    }

    /// Splits a nonzero polynomial into unit * beta1 * beta2^2 with beta1 and beta2
    /// squarefree, or reports a prime occurring to a power >= 3.
    pub fn sqfree_cubefree(&self) -> Result<CubeFreeSplit> {
        let fac = self.factor()?;
        let field = &self.field;
        let mut beta1 = Poly::one(field);
        let mut beta2 = Poly::one(field);
        for (p, e) in &fac.factors {
            match e {
                1 => beta1 = &beta1 * p,
                2 => beta2 = &beta2 * p,
                _ => return Ok(CubeFreeSplit::NotCubeFree { witness: p.clone() }),
            }
        }
        Ok(CubeFreeSplit::Split { unit: fac.unit, beta1, beta2 })
    }
}

/// Solution of T = r_i mod m_i for pairwise coprime moduli, of degree below
/// the sum of the moduli degrees.
pub fn crt(pairs: &[(Poly, Poly)]) -> Result<Poly> {
    let Some((_, m0)) = pairs.first() else {
        return Err(Error::ZeroInput);
    };
    let field = m0.field().clone();
    let mut x = Poly::zero(&field);
    let mut modulus = Poly::one(&field);
    for (r, m) in pairs {
        r.check_same_field(m)?;
        m.check_same_field(&modulus)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if m.is_constant() {
            continue;
        }
        let inv = modulus.mod_inverse(m).map_err(|_| Error::NonCoprimeModuli)?;
        let diff = (r - &x).rem(m);
        let k = diff.mul_mod(&inv, m);
        x = &x + &(&modulus * &k);
        modulus = &modulus * m;
    }
    Ok(x.rem(&modulus))
}

/// Δ = b²c² − 4c³ − 4b³d − 27d² + 18bcd for the monic cubic X³ + bX² + cX + d.
pub fn cubic_disc<T>(b: &T, c: &T, d: &T) -> T
where
    T: ScaleInt,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let b2 = b * b;
    let c2 = c * c;
    let bc = b * c;
    let t1 = &b2 * &c2;
    let t2 = (&c2 * c).scale_int(4);
    let t3 = (&(&b2 * b) * d).scale_int(4);
    let t4 = (d * d).scale_int(27);
    let t5 = (&bc * d).scale_int(18);
    &(&(&(&t1 - &t2) - &t3) - &t4) + &t5
}

/// Multiplication by an integer, reduced into the ring.
pub trait ScaleInt {
    fn scale_int(&self, k: i64) -> Self;
}

impl ScaleInt for Poly {
    fn scale_int(&self, k: i64) -> Self {
        Poly::scale_int(self, k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubeFreeSplit {
    Split { unit: FfElem, beta1: Poly, beta2: Poly },
    NotCubeFree { witness: Poly },
}

/// unit * prod(factor^exp), factors monic irreducible and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FfElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit.clone()), |acc, (p, e)| &acc * &p.pow(*e as u64))
    }
}

/// Yun-style squarefree decomposition of a monic polynomial, with the p-th root
/// step needed in positive characteristic. Returns (squarefree part, multiplicity).
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out
}

fn sqf_rec(f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
    if f.is_constant() {
        return;
    }
    let p = f.field().characteristic();
    let d = f.derivative();
    let mut c = f.gcd(&d).expect("nonzero");
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c).expect("nonzero");
        let fac = w.div_exact(&y);
        if !fac.is_constant() {
            out.push((fac.monic(), i * mult));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_constant() {
        sqf_rec(&c.pth_root().monic(), mult * p, out);
    }
}

/// Splits a squarefree monic polynomial into products of equal-degree irreducibles.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut f = f.monic();
    let x = Poly::x(f.field());
    let mut h = x.clone();
    let mut d = 1;
    while f.deg() >= 2 * d as i64 {
        h = h.frobenius_mod(&f);
        let g = (&h - &x).gcd(&f).expect("nonzero");
        if !g.is_one() {
            f = f.div_exact(&g);
            h = h.rem(&f);
            out.push((g, d));
        }
        d += 1;
    }
    if f.deg() > 0 {
        let k = f.deg() as usize;
        out.push((f, k));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree<R: Rng + ?Sized>(f: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = f.deg() as usize;
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let p = field.characteristic() as u64;
    let frob_steps = field.degree() * d;
    loop {
        let a = Poly::random(&field, n - 1, rng);
        if a.is_constant() {
            continue;
        }
        let g0 = a.gcd(f).expect("nonzero");
        let cand = if !g0.is_one() {
            g0
        } else if p == 2 {
            // Absolute trace map to GF(2).
            let mut t = a.rem(f);
            let mut s = t.clone();
            for _ in 1..frob_steps {
                t = t.mul_mod(&t, f);
                s = &s + &t;
            }
            s.gcd(f).expect("nonzero")
        } else {
            // a^((p^(nd) - 1)/2) = (prod_k a^(p^k))^((p-1)/2).
            let mut t = a.rem(f);
            let mut norm = t.clone();
            for _ in 1..frob_steps {
                t = t.pow_mod(p, f);
                norm = norm.mul_mod(&t, f);
            }
            let b = norm.pow_mod((p - 1) / 2, f);
            (&b - &Poly::one(&field)).gcd(f).expect("nonzero")
        };
        if !cand.is_constant() && cand.deg() < f.deg() {
            let rest = f.div_exact(&cand);
            let mut out = equal_degree(&cand, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.coeffs == other.coeffs && self.same_field(other)
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    /// Lowest degree first, e.g. `4 + x^2` or `(1 + t)*x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = field.fmt_elem(c);
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (i, c.is_one()) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                assert!(self.same_field(rhs), "polynomials over different fields");
                self.$imp(rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, add_impl);
poly_binop!(Sub, sub, sub_impl);
poly_binop!(Mul, mul, mul_impl);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
