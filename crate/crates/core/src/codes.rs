//! Reed–Muller and projective Reed–Muller codes: parameters, generator
//! matrices, encoding, dual monomial sets and dual checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::geometry::{enumerate_affine, enumerate_projective, PointList};
use crate::linalg::Matrix;
use crate::monomial::{box_monomials, Monomial, Polynomial};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    #[serde(rename = "RM")]
    Rm,
    #[serde(rename = "PRM")]
    Prm,
}

/// A code together with all derived parameters.
///
/// Two quotient/remainder pairs are kept apart: `(r_prm, s_prm)` divides
/// `nu - 1` by `q - 1` and fixes the PRM minimum distance, while
/// `(r_rm, s_rm)` divides `nu` and fixes `t0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeSpec {
    pub family: Family,
    pub m: usize,
    #[serde(rename = "field")]
    pub field_spec: String,
    #[serde(skip)]
    pub field: Field,
    pub q: usize,
    pub nu: usize,
    pub mu: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r_prm: Option<usize>,
    pub s_prm: Option<usize>,
    pub r_rm: usize,
    pub s_rm: usize,
    pub t0: usize,
    pub t_md: usize,
    pub i0: Option<usize>,
}

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// Dimension of RM_nu(m, q) by the alternating binomial sum.
pub fn rm_dimension(m: usize, q: usize, nu: usize) -> usize {
    let (m, q) = (m as i64, q as i64);
    let mut k: i128 = 0;
    for t in 0..=nu as i64 {
        for j in 0..=m {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            k += sign * binom(m, j) * binom(t - j * q + m - 1, t - j * q);
        }
    }
    k as usize
}

/// `(q - s) q^(m - r - 1)` with `nu = r(q - 1) + s`; one when `r >= m`.
fn rm_distance_formula(m: usize, q: usize, nu: usize) -> usize {
    let (r, s) = (nu / (q - 1), nu % (q - 1));
    if r >= m {
        1
    } else {
        (q - s) * q.pow((m - r - 1) as u32)
    }
}

pub fn rm_params(m: usize, q: usize, nu: usize) -> Result<(usize, usize)> {
    let hi = m * (q - 1);
    if nu > hi {
        return Err(Error::OrderOutOfRangeNu { nu, lo: 0, hi });
    }
    Ok((rm_dimension(m, q, nu), rm_distance_formula(m, q, nu)))
}

/// Dimension of PRM_nu(m, q): sum over `0 < t <= nu`, `t = nu (mod q-1)`, of
/// the number of monomials of degree `t` in `m` variables with exponents
/// below `q`.
pub fn prm_dimension(m: usize, q: usize, nu: usize) -> usize {
    let (mi, qi) = (m as i64, q as i64);
    let mut k: i128 = 0;
    for t in (1..=nu as i64).filter(|t| (nu as i64 - t) % (qi - 1) == 0) {
        for j in 0..=mi + 1 {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            k += sign * binom(mi + 1, j) * binom(t - j * qi + mi, t - j * qi);
        }
    }
    k as usize
}

/// The dimension expression in the form in which it is usually quoted,
/// with `nu - 1 = r(q - 1) + s`. It disagrees with [`prm_dimension`] and with
/// the rank of the evaluation matrix; kept so the discrepancy stays visible.
pub fn prm_dimension_as_printed(m: usize, q: usize, nu: usize) -> i128 {
    let (r, s) = ((nu - 1) / (q - 1), (nu - 1) % (q - 1));
    let (mi, qi, si) = (m as i64, q as i64, s as i64);
    let mut k = 0;
    for t in 0..=r as i64 {
        for j in 0..=mi + 1 {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            k += sign
                * binom(mi + 1, j)
                * binom(si + mi - t + (t - j) * qi, si + 1 - t + (t - j) * qi);
        }
    }
    k
}

pub fn prm_min_distance(m: usize, q: usize, nu: usize) -> usize {
    let (r, s) = ((nu - 1) / (q - 1), (nu - 1) % (q - 1));
    (q - s) * q.pow((m - r - 1) as u32)
}

/// Guaranteed number of correctable errors of the chart-wise decoder.
pub fn prm_t0(m: usize, q: usize, nu: usize) -> usize {
    (rm_distance_formula(m, q, nu) - 1) / 2
}

/// First chart whose dual monomial set is the whole reduced monomial set:
/// `m - floor((mu - 1) / (q - 1))`, floor division.
pub fn prm_i0(m: usize, q: usize, mu: usize) -> usize {
    let v = (mu as i64 - 1).div_euclid(q as i64 - 1);
    (m as i64 - v).max(0) as usize
}

pub fn prm_params(m: usize, field: &Field, nu: usize) -> Result<CodeSpec> {
    let q = field.q();
    let hi = m * (q - 1);
    if m == 0 || nu == 0 || nu > hi {
        return Err(Error::OrderOutOfRangeNu { nu, lo: 1, hi });
    }
    let mu = hi - nu;
    let d = prm_min_distance(m, q, nu);
    Ok(CodeSpec {
        family: Family::Prm,
        m,
        field_spec: field.to_string(),
        field: field.clone(),
        q,
        nu,
        mu,
        n: crate::geometry::projective_len(m, q),
        k: prm_dimension(m, q, nu),
        d,
        r_prm: Some((nu - 1) / (q - 1)),
        s_prm: Some((nu - 1) % (q - 1)),
        r_rm: nu / (q - 1),
        s_rm: nu % (q - 1),
        t0: prm_t0(m, q, nu),
        t_md: (d - 1) / 2,
        i0: Some(prm_i0(m, q, mu)),
    })
}

pub fn rm_spec(m: usize, field: &Field, nu: usize) -> Result<CodeSpec> {
    let q = field.q();
    let (k, d) = rm_params(m, q, nu)?;
    Ok(CodeSpec {
        family: Family::Rm,
        m,
        field_spec: field.to_string(),
        field: field.clone(),
        q,
        nu,
        mu: m * (q - 1) - nu,
        n: q.pow(m as u32),
        k,
        d,
        r_prm: None,
        s_prm: None,
        r_rm: nu / (q - 1),
        s_rm: nu % (q - 1),
        t0: (d - 1) / 2,
        t_md: (d - 1) / 2,
        i0: None,
    })
}

impl CodeSpec {
    pub fn points(&self) -> PointList {
        match self.family {
            Family::Prm => enumerate_projective(self.m, &self.field),
            Family::Rm => enumerate_affine(self.m, &self.field),
        }
    }

    /// Monomials whose evaluations span the code: all degree-`nu` monomials
    /// in `m + 1` variables (PRM) or the reduced monomials of degree at most
    /// `nu` in `m` variables (RM).
    pub fn spanning_monomials(&self) -> Vec<Monomial> {
        match self.family {
            Family::Prm => homogeneous_monomials(self.m + 1, self.nu),
            Family::Rm => box_monomials(self.m, (self.q - 1) as u16)
                .into_iter()
                .filter(|h| h.degree() <= self.nu)
                .collect(),
        }
    }
}

/// All monomials of total degree exactly `deg` in `nvars` variables, ascending.
pub fn homogeneous_monomials(nvars: usize, deg: usize) -> Vec<Monomial> {
    crate::monomial::monomials_up_to_degree(nvars, deg)
        .into_iter()
        .filter(|m| m.degree() == deg)
        .collect()
}

/// Evaluation matrix: one row per monomial, one column per point.
pub fn evaluation_matrix(monos: &[Monomial], points: &PointList, field: &Field) -> Matrix {
    let n = points.len();
    let q = field.q();
    let mut out = Matrix::zeros(monos.len(), n);
    for (c, pt) in points.iter().enumerate() {
        // powers[j][a] = pt[j]^a for a < q; higher exponents fold back.
        let powers: Vec<Vec<Fe>> = pt
            .iter()
            .map(|&x| (0..q).map(|a| field.pow(x, a as u64)).collect())
            .collect();
        for (r, m) in monos.iter().enumerate() {
            let mut v = Fe::ONE;
            for (j, &a) in m.0.iter().enumerate() {
                let a = a as usize;
                let p = if a < q {
                    powers[j][a]
                } else {
                    field.pow(pt[j], a as u64)
                };
                v = field.mul(v, p);
                if v.is_zero() {
                    break;
                }
            }
            out.set(r, c, v);
        }
    }
    out
}

/// Row-reduced generator matrix with its pivot columns.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl GeneratorMatrix {
    pub fn k(&self) -> usize {
        self.matrix.rows
    }

    pub fn n(&self) -> usize {
        self.matrix.cols
    }

    pub fn to_csv(&self) -> String {
        (0..self.matrix.rows)
            .map(|r| {
                self.matrix
                    .row(r)
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

pub fn generator(spec: &CodeSpec) -> GeneratorMatrix {
    let mut matrix = evaluation_matrix(&spec.spanning_monomials(), &spec.points(), &spec.field);
    let pivots = matrix.rref(&spec.field);
    GeneratorMatrix { matrix, pivots }
}

pub fn prm_generator(spec: &CodeSpec) -> GeneratorMatrix {
    debug_assert_eq!(spec.family, Family::Prm);
    generator(spec)
}

/// Message times the generator matrix.
pub fn encode(gen: &GeneratorMatrix, field: &Field, message: &[Fe]) -> Result<Word> {
    if message.len() != gen.k() {
        return Err(Error::Length {
            expected: gen.k(),
            got: message.len(),
        });
    }
    Ok(Word(gen.matrix.left_mul(message, field)))
}

/// Evaluates a homogeneous polynomial of degree `nu` in `X0..Xm` at the
/// standard representatives.
pub fn encode_polynomial(spec: &CodeSpec, f: &Polynomial) -> Result<Word> {
    if f.nvars() != spec.m + 1 {
        return Err(Error::VariableCount(f.nvars(), spec.m + 1));
    }
    if !f.is_homogeneous(spec.nu) {
        return Err(Error::NotHomogeneous(spec.nu));
    }
    Ok(Word(spec.points().iter().map(|p| f.evaluate(p)).collect()))
}

/// Reduced dual monomials of chart `i`: monomials in `X_{i+1}..X_m` of degree
/// at most `mu - 1` with exponents below `q`, ascending. Exponent position
/// `j` belongs to `X_{i+1+j}`.
pub fn dual_monomials(spec: &CodeSpec, i: usize) -> Result<Vec<Monomial>> {
    if i > spec.m {
        return Err(Error::ChartOutOfRange {
            chart: i,
            m: spec.m,
        });
    }
    if spec.mu == 0 {
        return Ok(Vec::new());
    }
    Ok(box_monomials(spec.m - i, (spec.q - 1) as u16)
        .into_iter()
        .filter(|h| h.degree() < spec.mu)
        .collect())
}

/// The degree-`mu` form `X_i^(mu - |h|) * h` of a chart-`i` dual monomial,
/// in `X0..Xm`.
pub fn homogenize(spec: &CodeSpec, i: usize, h: &Monomial) -> Monomial {
    let mut e = vec![0u16; spec.m + 1];
    e[i] = (spec.mu - h.degree()) as u16;
    e[i + 1..].copy_from_slice(&h.0);
    Monomial(e)
}

/// Generator rows of the dual code: PRM_mu, plus the all-ones word when
/// `nu = 0 (mod q - 1)`. For RM codes, RM_(mu-1).
pub fn dual_generator(spec: &CodeSpec) -> Matrix {
    let f = &spec.field;
    let points = spec.points();
    let mut rows = match spec.family {
        Family::Prm => {
            evaluation_matrix(&homogeneous_monomials(spec.m + 1, spec.mu), &points, f).row_vecs()
        }
        Family::Rm => {
            let monos: Vec<Monomial> = if spec.mu == 0 {
                Vec::new()
            } else {
                box_monomials(spec.m, (spec.q - 1) as u16)
                    .into_iter()
                    .filter(|h| h.degree() < spec.mu)
                    .collect()
            };
            evaluation_matrix(&monos, &points, f).row_vecs()
        }
    };
    if spec.family == Family::Prm && spec.nu.is_multiple_of(spec.q - 1) {
        rows.push(vec![Fe::ONE; points.len()]);
    }
    let mut m = Matrix::from_rows(&rows, points.len());
    m.rref(f);
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    pub n: usize,
    pub rank_code: usize,
    pub rank_dual: usize,
    /// (code row, dual row) pairs whose inner product is nonzero.
    pub violations: Vec<(usize, usize)>,
}

impl DualReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.rank_code + self.rank_dual == self.n
    }
}

pub fn dual_check(spec: &CodeSpec) -> DualReport {
    let f = &spec.field;
    let g = generator(spec).matrix;
    let h = dual_generator(spec);
    let prod = g.mul(&h.transpose(), f);
    let mut violations = Vec::new();
    for r in 0..prod.rows {
        for c in 0..prod.cols {
            if !prod.get(r, c).is_zero() {
                violations.push((r, c));
            }
        }
    }
    DualReport {
        n: spec.n,
        rank_code: g.rows,
        rank_dual: h.rows,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one_formulas() {
        let expect = [(5, 21, 192), (8, 45, 144), (17, 168, 15), (29, 270, 3)];
        for (nu, k, d) in expect {
            assert_eq!(
                (prm_dimension(2, 16, nu), prm_min_distance(2, 16, nu)),
                (k, d)
            );
        }
    }

    #[test]
    fn rm_small() {
        assert_eq!(rm_params(2, 2, 1).unwrap(), (3, 2));
        assert_eq!(rm_params(3, 4, 0).unwrap(), (1, 64));
        assert_eq!(rm_params(2, 3, 4).unwrap(), (9, 1));
        assert!(rm_params(2, 3, 5).is_err());
    }

    #[test]
    fn prm_examples() {
        let f4 = Field::new(2, 2).unwrap();
        let s = prm_params(3, &f4, 5).unwrap();
        assert_eq!((s.n, s.k, s.t0, s.i0), (85, 50, 3, Some(2)));
        let f8 = Field::new(2, 3).unwrap();
        let s = prm_params(3, &f8, 9).unwrap();
        assert_eq!((s.t0, s.i0), (23, Some(2)));
        assert!(prm_params(3, &f4, 0).is_err());
        assert!(prm_params(3, &f4, 10).is_err());
        assert_eq!(prm_params(3, &f4, 9).unwrap().i0, Some(4));
    }

    #[test]
    fn polynomial_encoding_checks_degree() {
        let f = Field::new(2, 2).unwrap();
        let s = prm_params(2, &f, 2).unwrap();
        let good = Polynomial::parse("X0*X1 + 2*X2^2", &f, 3, 0).unwrap();
        assert_eq!(encode_polynomial(&s, &good).unwrap().len(), 21);
        let bad = Polynomial::parse("X0 + X1^2", &f, 3, 0).unwrap();
        assert_eq!(encode_polynomial(&s, &bad), Err(Error::NotHomogeneous(2)));
    }
}
