//! Prime-power fields GF(p^e) with q <= 256 and log/antilog tables.
//!
//! An element is stored as the integer whose base-p digits, low to high, are
//! its coordinates in the polynomial basis 1, x, x^2, ... modulo the field
//! modulus. Zero is 0 and one is 1.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element as its integer encoding. Carries no field; see [`Element`]
/// for the checked variant.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u8);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    e: u32,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<u8>,
    neg: Vec<u8>,
    exp: Vec<u8>,
    log: Vec<u16>,
    inv: Vec<u8>,
}

/// GF(p^e). Cheap to clone; tables are shared.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.modulus == other.t.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}; modulus {:?})",
            self.t.p, self.t.e, self.t.modulus
        )
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:{:x}", self.t.p, self.t.e, self.modulus_packed())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Remainder of `a` modulo the monic `b` over GF(p); coefficients low to high.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomials of degree `d` over GF(p), lower coefficients enumerated
/// as a base-p counter (low coefficient fastest).
fn monic_polys(d: u32, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(d);
    (0..count).map(move |mut k| {
        let mut c = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            c.push(k % p);
            k /= p;
        }
        c.push(1);
        c
    })
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = (f.len() - 1) as u32;
    (1..=e / 2).all(|d| monic_polys(d, p).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0)))
}

impl Field {
    /// GF(p^e) with the least monic irreducible modulus, ordered by the packed
    /// value of its coefficients.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        Self::check_order(p, e)?;
        let modulus = monic_polys(e, p)
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::build(p, e, modulus)
    }

    /// GF(p^e) with an explicit monic modulus, coefficients low to high.
    pub fn with_modulus(p: u32, e: u32, modulus: &[u32]) -> Result<Field> {
        Self::check_order(p, e)?;
        if modulus.len() != e as usize + 1
            || *modulus.last().unwrap() != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(Error::BadModulus { expected: e });
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        Self::build(p, e, modulus.to_vec())
    }

    /// Parses `p^e`, `p` or `p^e:hex`. The hex value packs the modulus
    /// coefficients low to high as base-p digits, leading coefficient included.
    pub fn parse(s: &str) -> Result<Field> {
        let bad = || Error::FieldSyntax(s.to_string());
        let (order, modulus) = match s.split_once(':') {
            Some((o, m)) => (o, Some(m)),
            None => (s, None),
        };
        let (p, e) = match order.split_once('^') {
            Some((p, e)) => (
                p.trim().parse().map_err(|_| bad())?,
                e.trim().parse().map_err(|_| bad())?,
            ),
            None => (order.trim().parse().map_err(|_| bad())?, 1),
        };
        match modulus {
            None => Field::new(p, e),
            Some(hex) => {
                let hex = hex.trim().trim_start_matches("0x");
                let mut packed = u64::from_str_radix(hex, 16).map_err(|_| bad())?;
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                let mut coeffs = Vec::new();
                while packed > 0 {
                    coeffs.push((packed % p as u64) as u32);
                    packed /= p as u64;
                }
                Field::with_modulus(p, e, &coeffs)
            }
        }
    }

    fn check_order(p: u32, e: u32) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || (p as u64).checked_pow(e).is_none_or(|q| q > 256) {
            return Err(Error::OrderOutOfRange { p, e });
        }
        Ok(())
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Result<Field> {
        let q = p.pow(e) as usize;
        let digits = |mut v: usize| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let d = (v % p as usize) as u32;
                    v /= p as usize;
                    d
                })
                .collect()
        };
        let pack = |c: &[u32]| -> usize {
            c.iter()
                .rev()
                .fold(0, |acc, &d| acc * p as usize + d as usize)
        };

        let mut add = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a);
            neg[a] = pack(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>()) as u8;
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&s) as u8;
            }
        }

        let slow_mul = |a: usize, b: usize| -> usize {
            let (da, db) = (digits(a), digits(b));
            let mut prod = vec![0u32; 2 * e as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(e as usize, 0);
            pack(&r)
        };

        let generator = (1..q)
            .find(|&g| {
                let mut x = g;
                let mut order = 1;
                while x != 1 {
                    x = slow_mul(x, g);
                    order += 1;
                }
                order == q - 1
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let n = q - 1;
        let mut exp = vec![0u8; 2 * n];
        let mut log = vec![0u16; q];
        let mut x = 1usize;
        for k in 0..n {
            exp[k] = x as u8;
            exp[k + n] = x as u8;
            log[x] = k as u16;
            x = slow_mul(x, generator);
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = exp[(n - log[a] as usize) % n];
        }

        Ok(Field {
            t: Arc::new(Tables {
                p,
                e,
                q,
                modulus,
                add,
                neg,
                exp,
                log,
                inv,
            }),
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.t.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.t.e
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.t.q
    }

    /// Modulus coefficients, low to high, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn modulus_packed(&self) -> u64 {
        self.t
            .modulus
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.t.p as u64 + d as u64)
    }

    /// The generator used for the log tables.
    pub fn primitive(&self) -> Fe {
        Fe(self.t.exp[1 % (self.t.q - 1).max(1)])
    }

    pub fn element(&self, value: usize) -> Result<Fe> {
        if value < self.t.q {
            Ok(Fe(value as u8))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.t.q })
        }
    }

    /// All elements: 0, 1, then the rest in increasing value.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.t.q).map(|v| Fe(v as u8))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.t.add[a.value() * self.t.q + b.value()])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.t.neg[a.value()])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let t = &self.t;
        Fe(t.exp[t.log[a.value()] as usize + t.log[b.value()] as usize])
    }

    /// `acc + a * b`.
    #[inline]
    pub fn mul_add(&self, acc: Fe, a: Fe, b: Fe) -> Fe {
        self.add(acc, self.mul(a, b))
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(Fe(self.t.inv[a.value()]))
        }
    }

    /// Inverse of a value the caller knows to be nonzero.
    #[inline]
    pub(crate) fn inv_nz(&self, a: Fe) -> Fe {
        debug_assert!(!a.is_zero());
        Fe(self.t.inv[a.value()])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let n = (self.t.q - 1) as u64;
        let l = (self.t.log[a.value()] as u64 * (k % n)) % n;
        Fe(self.t.exp[l as usize])
    }

    /// `a^k` for a possibly negative exponent; `a` must be nonzero when `k < 0`.
    pub fn pow_signed(&self, a: Fe, k: i64) -> Result<Fe> {
        if k >= 0 {
            Ok(self.pow(a, k as u64))
        } else {
            Ok(self.pow(self.inv(a)?, k.unsigned_abs()))
        }
    }

    /// Discrete log base [`Field::primitive`]; `None` for zero.
    #[inline]
    pub fn log(&self, a: Fe) -> Option<usize> {
        (!a.is_zero()).then(|| self.t.log[a.value()] as usize)
    }

    #[inline]
    pub fn exp(&self, k: usize) -> Fe {
        Fe(self.t.exp[k % (self.t.q - 1)])
    }

    /// Wraps a raw element for checked arithmetic.
    pub fn wrap(&self, a: Fe) -> Element {
        Element {
            field: self.clone(),
            fe: a,
        }
    }
}

/// A field element tagged with its field; operations check that both operands
/// share a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub field: Field,
    pub fe: Fe,
}

impl Element {
    fn same(&self, other: &Element) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, fe: Fe) -> Element {
        Element {
            field: self.field.clone(),
            fe,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        Ok(self.with(self.field.add(self.fe, other.fe)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        Ok(self.with(self.field.sub(self.fe, other.fe)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        Ok(self.with(self.field.mul(self.fe, other.fe)))
    }

    pub fn neg(&self) -> Element {
        self.with(self.field.neg(self.fe))
    }

    pub fn inv(&self) -> Result<Element> {
        Ok(self.with(self.field.inv(self.fe)?))
    }

    pub fn pow(&self, k: u64) -> Element {
        self.with(self.field.pow(self.fe, k))
    }
}
