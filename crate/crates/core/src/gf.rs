//! Arithmetic in GF(p^n) = GF(p)[t]/(modulus).
//!
//! Elements are dense coordinate vectors in the power basis of the modulus.
//! Residues are held in `u32`, so `p` must be below 2^31.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Shared handle to a field context.
pub type Field = Arc<FieldCtx>;

/// A finite field GF(p^n) presented by a monic irreducible modulus over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u32,
    n: usize,
    /// Monic, lowest degree first, length n + 1. For n = 1 this is `t`.
    modulus: Vec<u32>,
}

/// An element of a [`FieldCtx`]; always exactly `n` coordinates in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FfElem(SmallVec<[u32; 4]>);

impl FfElem {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0[0] == 1 && self.0[1..].iter().all(|&c| c == 0)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    /// Builds GF(p^n). Without an explicit modulus, the first irreducible monic
    /// polynomial of degree `n` in lexicographic coefficient order is used.
    /// `modulus` is lowest-degree first and may omit the leading 1.
    pub fn new(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NonPrimeP(p));
        }
        if n == 0 {
            return Err(Error::DegreeMismatch { expected: 1, got: 0 });
        }
        let p32 = p as u32;
        if n == 1 && modulus.is_none() {
            return Ok(Arc::new(FieldCtx { p: p32, n: 1, modulus: vec![0, 1] }));
        }
        let base = FieldCtx::prime(p)?;
        let lift = |cs: &[u32]| {
            Poly::new(&base, cs.iter().map(|&c| base.from_u64(c as u64)).collect())
        };
        let modulus = match modulus {
            Some(m) => {
                let mut m: Vec<u32> = m.iter().map(|&c| (c % p) as u32).collect();
                if m.len() == n {
                    m.push(1);
                }
                while m.len() > 1 && *m.last().unwrap() == 0 {
                    m.pop();
                }
                if m.len() != n + 1 {
                    return Err(Error::DegreeMismatch { expected: n, got: m.len().saturating_sub(1) });
                }
                if m[n] != 1 {
                    return Err(Error::ReducibleModulus(p32));
                }
                if !lift(&m).is_irreducible() {
                    return Err(Error::ReducibleModulus(p32));
                }
                m
            }
            None => {
                // Scan c_0 + c_1 t + ... + t^n with (c_0, .., c_{n-1}) as base-p digits.
                let mut digits = vec![0u32; n];
                loop {
                    let mut m = digits.clone();
                    m.push(1);
                    if lift(&m).is_irreducible() {
                        break m;
                    }
                    let mut i = 0;
                    loop {
                        digits[i] += 1;
                        if digits[i] < p32 {
                            break;
                        }
                        digits[i] = 0;
                        i += 1;
                    }
                }
            }
        };
        Ok(Arc::new(FieldCtx { p: p32, n, modulus }))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// q = p^n, if it fits in a u64.
    pub fn order(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.n as u32)
    }

    pub fn zero(&self) -> FfElem {
        FfElem(SmallVec::from_elem(0, self.n))
    }

    pub fn one(&self) -> FfElem {
        self.from_u64(1)
    }

    /// The class of `t` (for n = 1 this is just 0).
    pub fn generator(&self) -> FfElem {
        if self.n == 1 {
            return self.zero();
        }
        let mut e = self.zero();
        e.0[1] = 1;
        e
    }

    pub fn from_u64(&self, v: u64) -> FfElem {
        let mut e = self.zero();
        e.0[0] = (v % self.p as u64) as u32;
        e
    }

    pub fn from_i64(&self, v: i64) -> FfElem {
        let p = self.p as i64;
        self.from_u64(v.rem_euclid(p) as u64)
    }

    pub fn from_coords(&self, cs: &[u64]) -> FfElem {
        let mut e = self.zero();
        for (i, &c) in cs.iter().enumerate().take(self.n) {
            e.0[i] = (c % self.p as u64) as u32;
        }
        e
    }

    /// Element with base-p digit expansion `idx` (coordinate 0 least significant).
    pub fn element(&self, mut idx: u64) -> FfElem {
        let mut e = self.zero();
        for c in e.0.iter_mut() {
            *c = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        e
    }

    /// Inverse of [`FieldCtx::element`].
    pub fn index_of(&self, a: &FfElem) -> u64 {
        a.0.iter().rev().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// All q elements in index order. Panics if q does not fit in a u64.
    pub fn elements(&self) -> impl Iterator<Item = FfElem> + '_ {
        let q = self.order().expect("field too large to enumerate");
        (0..q).map(move |i| self.element(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FfElem {
        let mut e = self.zero();
        for c in e.0.iter_mut() {
            *c = rng.gen_range(0..self.p);
        }
        e
    }

    pub fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p;
        FfElem(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| {
            let s = x + y;
            if s >= p {
                s - p
            } else {
                s
            }
        }).collect())
    }

    pub fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p;
        FfElem(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| if x >= y { x - y } else { x + p - y }).collect())
    }

    pub fn neg(&self, a: &FfElem) -> FfElem {
        let p = self.p;
        FfElem(a.0.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
    }

    pub fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p as u64;
        if self.n == 1 {
            return FfElem(SmallVec::from_elem(((a.0[0] as u64 * b.0[0] as u64) % p) as u32, 1));
        }
        let n = self.n;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            // t^n = -(m_0 + ... + m_{n-1} t^{n-1})
            for j in 0..n {
                let m = self.modulus[j] as u64;
                prod[i - n + j] = (prod[i - n + j] + (p - c) * m) % p;
            }
            prod[i] = 0;
        }
        FfElem(prod[..n].iter().map(|&c| c as u32).collect())
    }

    pub fn scale_int(&self, a: &FfElem, k: i64) -> FfElem {
        self.mul(a, &self.from_i64(k))
    }

    pub fn pow(&self, a: &FfElem, mut k: u64) -> FfElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// a^p.
    pub fn frobenius(&self, a: &FfElem) -> FfElem {
        self.pow(a, self.p as u64)
    }

    /// The unique b with b^p = a, computed as a^(p^(n-1)).
    pub fn frob_root(&self, a: &FfElem) -> FfElem {
        let mut b = a.clone();
        for _ in 1..self.n {
            b = self.frobenius(&b);
        }
        b
    }

    pub fn inv(&self, a: &FfElem) -> Result<FfElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        if self.n == 1 {
            return Ok(FfElem(SmallVec::from_elem(inv_mod_p(a.0[0], p), 1)));
        }
        // Extended Euclid in GF(p)[t] between a and the modulus.
        let mut r0 = trim(self.modulus.clone());
        let mut r1 = trim(a.0.to_vec());
        let mut s0: Vec<u32> = vec![];
        let mut s1: Vec<u32> = vec![1];
        while !(r1.len() == 1 && r1[0] != 0) {
            let (q, r) = small_divrem(&r0, &r1, p);
            let s2 = small_sub(&s0, &small_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = inv_mod_p(r1[0], p);
        let mut out = self.zero();
        for (i, &s) in s1.iter().enumerate() {
            out.0[i] = ((s as u64 * c as u64) % p as u64) as u32;
        }
        Ok(out)
    }

    pub fn div(&self, a: &FfElem, b: &FfElem) -> Result<FfElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Absolute trace to GF(p), returned as an element of this field.
    pub fn abs_trace(&self, a: &FfElem) -> FfElem {
        let mut t = a.clone();
        let mut s = a.clone();
        for _ in 1..self.n {
            t = self.frobenius(&t);
            s = self.add(&s, &t);
        }
        s
    }

    pub fn fmt_elem(&self, a: &FfElem) -> String {
        ElemDisplay { field: self, elem: a }.to_string()
    }
}

struct ElemDisplay<'a> {
    field: &'a FieldCtx,
    elem: &'a FfElem,
}

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = &self.elem.0;
        if self.field.n == 1 {
            return write!(f, "{}", cs[0]);
        }
        let terms: Vec<String> = cs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}*t^{i}"),
            })
            .collect();
        match terms.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", terms[0]),
            _ => write!(f, "({})", terms.join(" + ")),
        }
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i64) as u32
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn small_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn small_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn small_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lc_inv = inv_mod_p(b[db], p) as u64;
    if r.len() < b.len() {
        return (vec![0], r);
    }
    let mut q = vec![0u32; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = (r[i] as u64 * lc_inv % p as u64) as u32;
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for j in 0..=db {
            let sub = (c as u64 * b[j] as u64 % p as u64) as u32;
            r[i - db + j] = (r[i - db + j] + p - sub) % p;
        }
    }
    (trim(q), trim(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_has_root(p: u64, m: &[u64]) -> bool {
        (0..p).any(|x| m.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0)
    }

    #[test]
    fn make_fields() {
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(f5.order(), Some(5));
        assert!(!brute_force_has_root(3, &[1, 0, 1]));
        let f9 = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.order(), Some(9));
        assert_eq!(FieldCtx::new(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus(2)));
        assert_eq!(FieldCtx::prime(9).unwrap_err(), Error::NonPrimeP(9));
        assert!(matches!(
            FieldCtx::new(3, 2, Some(&[1, 0, 0, 1])),
            Err(Error::DegreeMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn generated_modulus_is_first_irreducible() {
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f9 = FieldCtx::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f8 = FieldCtx::new(2, 3, None).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn basic_ops() {
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(f5.inv(&f5.from_u64(2)).unwrap(), f5.from_u64(3));
        let f9 = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let t = f9.generator();
        assert_eq!(f9.mul(&t, &t), f9.from_u64(2));
        let f7 = FieldCtx::prime(7).unwrap();
        assert!(f7.pow(&f7.from_u64(3), 6).is_one());
        assert_eq!(f5.inv(&f5.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn frob_root_examples() {
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(f3.frob_root(&f3.from_u64(2)), f3.from_u64(2));
        let f2 = FieldCtx::prime(2).unwrap();
        assert!(f2.frob_root(&f2.one()).is_one());
        let f9 = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        for a in f9.elements() {
            let r = f9.frob_root(&a);
            assert_eq!(f9.pow(&r, 3), a);
        }
    }

    #[test]
    fn element_indexing_round_trips() {
        let f = FieldCtx::new(5, 2, None).unwrap();
        for i in 0..25 {
            assert_eq!(f.index_of(&f.element(i)), i);
        }
    }

    #[test]
    fn display() {
        let f9 = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.fmt_elem(&f9.from_coords(&[2, 1])), "(2 + t)");
        assert_eq!(f9.fmt_elem(&f9.generator()), "t");
        assert_eq!(f9.fmt_elem(&f9.zero()), "0");
    }
}
