//! The DFT `c -> (sum_P c_P h(P))_h` over the affine space, its explicit
//! inverse, and the syndrome extension map defined by a Gröbner basis.
//!
//! Arrays indexed by the reduced monomials `h = X1^a1 ... Xm^am`, `a_j < q`,
//! are stored densely at key `a1 + a2 q + ... + am q^(m-1)`. Serialized forms
//! list them in ascending monomial order.

use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::monomial::{box_monomials, GroebnerSet, Monomial, NormalForms};

#[inline]
pub fn box_key(exps: &[u16], q: usize) -> usize {
    exps.iter().rev().fold(0, |acc, &a| acc * q + a as usize)
}

pub fn box_exps(mut key: usize, nvars: usize, q: usize) -> Vec<u16> {
    (0..nvars)
        .map(|_| {
            let a = (key % q) as u16;
            key /= q;
            a
        })
        .collect()
}

/// A dense array over the reduced monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub nvars: usize,
    pub q: usize,
    pub values: Vec<Fe>,
}

impl Spectrum {
    pub fn zero(nvars: usize, q: usize) -> Spectrum {
        Spectrum {
            nvars,
            q,
            values: vec![Fe::ZERO; q.pow(nvars as u32)],
        }
    }

    pub fn get(&self, exps: &[u16]) -> Fe {
        self.values[box_key(exps, self.q)]
    }

    /// Values in ascending monomial order.
    pub fn ordered(&self) -> Vec<Fe> {
        box_monomials(self.nvars, (self.q - 1) as u16)
            .iter()
            .map(|h| self.get(&h.0))
            .collect()
    }

    pub fn from_ordered(nvars: usize, q: usize, ordered: &[Fe]) -> Result<Spectrum> {
        let len = q.pow(nvars as u32);
        if ordered.len() != len {
            return Err(Error::Length {
                expected: len,
                got: ordered.len(),
            });
        }
        let mut s = Spectrum::zero(nvars, q);
        for (h, &v) in box_monomials(nvars, (q - 1) as u16).iter().zip(ordered) {
            s.values[box_key(&h.0, q)] = v;
        }
        Ok(s)
    }
}

/// Known syndrome values over a subset of the reduced monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeArray {
    pub nvars: usize,
    pub q: usize,
    pub values: Vec<Option<Fe>>,
}

impl SyndromeArray {
    pub fn empty(nvars: usize, q: usize) -> SyndromeArray {
        SyndromeArray {
            nvars,
            q,
            values: vec![None; q.pow(nvars as u32)],
        }
    }

    pub fn get(&self, exps: &[u16]) -> Option<Fe> {
        self.values[box_key(exps, self.q)]
    }

    pub fn set(&mut self, exps: &[u16], v: Fe) {
        self.values[box_key(exps, self.q)] = Some(v);
    }

    /// Restriction of a spectrum to the given monomials.
    pub fn restrict(spectrum: &Spectrum, monos: &[Monomial]) -> SyndromeArray {
        let mut s = SyndromeArray::empty(spectrum.nvars, spectrum.q);
        for h in monos {
            s.set(&h.0, spectrum.get(&h.0));
        }
        s
    }

    pub fn known(&self) -> Vec<(Monomial, Fe)> {
        box_monomials(self.nvars, (self.q - 1) as u16)
            .into_iter()
            .filter_map(|h| self.get(&h.0).map(|v| (h, v)))
            .collect()
    }
}

/// Values `x^a` for `a` in `0..q`, with `0^0 = 1`.
fn power_row(field: &Field, x: Fe) -> Vec<Fe> {
    (0..field.q()).map(|a| field.pow(x, a as u64)).collect()
}

/// Adds `c * (h(P))_h` into `acc`, built as a tensor product over the
/// coordinates of `P`.
fn add_point_spectrum(field: &Field, acc: &mut [Fe], point: &[Fe], c: Fe, scratch: &mut Vec<Fe>) {
    let q = field.q();
    scratch.clear();
    scratch.push(c);
    for &x in point {
        let pw = power_row(field, x);
        let len = scratch.len();
        let mut next = Vec::with_capacity(len * q);
        for &p in &pw {
            next.extend(scratch[..len].iter().map(|&v| field.mul(v, p)));
        }
        *scratch = next;
    }
    for (a, &v) in acc.iter_mut().zip(scratch.iter()) {
        *a = field.add(*a, v);
    }
}

/// DFT of a word indexed by the affine space in odometer order.
pub fn dft(word: &[Fe], m: usize, field: &Field) -> Result<Spectrum> {
    let q = field.q();
    let len = q.pow(m as u32);
    if word.len() != len {
        return Err(Error::Length {
            expected: len,
            got: word.len(),
        });
    }
    let mut s = Spectrum::zero(m, q);
    let mut scratch = Vec::new();
    for (k, &c) in word.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p = crate::geometry::affine_coords(k, m, q);
        add_point_spectrum(field, &mut s.values, &p, c, &mut scratch);
    }
    Ok(s)
}

/// Inverse DFT by the explicit formula
/// `c_P = (-1)^s sum_l [ sum_J (-1)^|J| r_h(P,l,J) ] prod w_i^(-l_i)`,
/// where `s` counts the nonzero coordinates `w_i` of `P`, each `l_i` runs over
/// `1..q`, `J` runs over subsets of the zero coordinates, and `h(P,l,J)` has
/// exponent `l_i` on the support, `q - 1` on `J` and 0 elsewhere.
///
/// The sum factors over coordinates: a nonzero coordinate `w` weighs
/// exponent `a` by `-w^(-a)` for `a >= 1` and `0` for `a = 0`, a zero
/// coordinate weighs `a = 0` by `1` and `a = q - 1` by `-1`. The factors are
/// applied one axis at a time.
pub fn idft(spectrum: &Spectrum, field: &Field) -> Result<Vec<Fe>> {
    let (m, q) = (spectrum.nvars, field.q());
    let len = q.pow(m as u32);
    if spectrum.values.len() != len || spectrum.q != q {
        return Err(Error::Length {
            expected: len,
            got: spectrum.values.len(),
        });
    }
    // kernel[x * q + a]: weight of exponent `a` at coordinate value `x`.
    let mut kernel = vec![Fe::ZERO; q * q];
    kernel[0] = Fe::ONE;
    kernel[q - 1] = field.sub(kernel[q - 1], Fe::ONE);
    for x in 1..q {
        let inv = field.inv_nz(Fe(x as u8));
        let mut w = Fe::ONE;
        for a in 1..q {
            w = field.mul(w, inv);
            kernel[x * q + a] = field.neg(w);
        }
    }
    let mut buf = spectrum.values.clone();
    let mut next = vec![Fe::ZERO; len];
    let mut stride = 1;
    for _ in 0..m {
        for (idx, slot) in next.iter_mut().enumerate() {
            let x = (idx / stride) % q;
            let base = idx - x * stride;
            let row = &kernel[x * q..(x + 1) * q];
            *slot = row.iter().enumerate().fold(Fe::ZERO, |acc, (a, &k)| {
                if k.is_zero() {
                    acc
                } else {
                    field.mul_add(acc, k, buf[base + a * stride])
                }
            });
        }
        std::mem::swap(&mut buf, &mut next);
        stride *= q;
    }
    // `buf` is keyed with the first coordinate least significant.
    let mut out = vec![Fe::ZERO; len];
    for (k, o) in out.iter_mut().enumerate() {
        let p = crate::geometry::affine_coords(k, m, q);
        *o = buf[box_key(&p.iter().map(|x| x.0 as u16).collect::<Vec<_>>(), q)];
    }
    Ok(out)
}

/// Extends syndrome values known on the footprint of `locator` to every
/// reduced monomial: `r_g = sum_h v_h r_h` where `sum_h v_h h` is the normal
/// form of `g` modulo `locator`.
pub fn extend(syndrome: &SyndromeArray, locator: &GroebnerSet) -> Result<Spectrum> {
    let (m, q) = (syndrome.nvars, syndrome.q);
    let footprint = locator.footprint()?;
    let known: Vec<Fe> = footprint
        .iter()
        .map(|h| {
            if h.0.iter().any(|&a| a as usize >= q) {
                return None;
            }
            syndrome.get(&h.0)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            let missing = footprint
                .iter()
                .find(|h| h.0.iter().any(|&a| a as usize >= q) || syndrome.get(&h.0).is_none())
                .unwrap();
            Error::MissingSyndrome(missing.display(1))
        })?;
    let nf = NormalForms::build_for(
        locator,
        footprint,
        m * (q - 1),
        &box_monomials(m, (q - 1) as u16),
    );
    Ok(extend_with(&nf, &known, m, q, locator.field()))
}

pub(crate) fn extend_with(
    nf: &NormalForms,
    known: &[Fe],
    m: usize,
    q: usize,
    field: &Field,
) -> Spectrum {
    let mut s = Spectrum::zero(m, q);
    for key in 0..s.values.len() {
        let exps = box_exps(key, m, q);
        s.values[key] = nf
            .row(&exps)
            .iter()
            .zip(known)
            .fold(Fe::ZERO, |acc, (&v, &r)| field.mul_add(acc, v, r));
    }
    s
}

/// The DFT as an explicit `q^m x q^m` matrix (rows: monomials by key,
/// columns: points). Used as an independent check on the transforms.
pub fn dft_matrix(m: usize, field: &Field) -> crate::linalg::Matrix {
    let q = field.q();
    let len = q.pow(m as u32);
    let mut out = crate::linalg::Matrix::zeros(len, len);
    for c in 0..len {
        let p = crate::geometry::affine_coords(c, m, q);
        for r in 0..len {
            let e = box_exps(r, m, q);
            let v = e.iter().zip(&p).fold(Fe::ONE, |acc, (&a, &x)| {
                field.mul(acc, field.pow(x, a as u64))
            });
            out.set(r, c, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_at_origin() {
        let f = Field::new(2, 2).unwrap();
        let mut w = vec![Fe::ZERO; 16];
        w[0] = Fe::ONE;
        let s = dft(&w, 2, &f).unwrap();
        assert_eq!(s.values[0], Fe::ONE);
        assert!(s.values[1..].iter().all(|v| v.is_zero()));
        assert_eq!(idft(&s, &f).unwrap(), w);
    }

    #[test]
    fn idft_top_monomial_only() {
        let f = Field::new(2, 1).unwrap();
        let mut s = Spectrum::zero(1, 2);
        s.values[1] = Fe::ONE;
        let w = idft(&s, &f).unwrap();
        let back = dft(&w, 1, &f).unwrap();
        assert_eq!(back, s);
        assert_eq!(w, vec![Fe::ONE, Fe::ONE]);
    }

    #[test]
    fn rejects_wrong_lengths() {
        let f = Field::new(3, 1).unwrap();
        assert!(dft(&[Fe::ZERO; 8], 2, &f).is_err());
        let s = Spectrum {
            nvars: 2,
            q: 3,
            values: vec![Fe::ZERO; 8],
        };
        assert!(idft(&s, &f).is_err());
    }
}
