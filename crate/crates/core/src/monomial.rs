//! Monomials, the graded order, sparse polynomials, division by a Gröbner set,
//! and footprints.
//!
//! The order compares total degree first. Ties are broken from the
//! highest-indexed variable downward: the first differing exponent decides,
//! smaller exponent means smaller monomial. In three variables this gives
//! `1 < X1 < X2 < X3 < X1^2 < X1*X2 < X2^2 < X1*X3 < ...`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Fe, Field};

/// Exponent vector. Position `j` belongs to the context's `j`-th variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, j: usize, exp: u16) -> Monomial {
        let mut v = vec![0; nvars];
        v[j] = exp;
        Monomial(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Renders with variable names starting at `X{first}`.
    pub fn display(&self, first: usize) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(j, &a)| {
                if a == 1 {
                    format!("X{}", first + j)
                } else {
                    format!("X{}^{}", first + j, a)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// The graded order on exponent vectors of equal length.
pub fn cmp_exps(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    /// Total on all monomials: variable count first, then the graded order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| cmp_exps(&self.0, &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The graded monomial order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MonomialOrder;

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::VariableCount(a.nvars(), b.nvars()));
        }
        Ok(cmp_exps(&a.0, &b.0))
    }
}

/// All monomials in `nvars` variables with every exponent at most `max_exp`,
/// ascending.
pub fn box_monomials(nvars: usize, max_exp: u16) -> Vec<Monomial> {
    let side = max_exp as usize + 1;
    let total = side.pow(nvars as u32);
    let mut out: Vec<Monomial> = (0..total)
        .map(|mut k| {
            Monomial(
                (0..nvars)
                    .map(|_| {
                        let a = (k % side) as u16;
                        k /= side;
                        a
                    })
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out
}

/// All monomials in `nvars` variables of total degree at most `deg`, ascending.
pub fn monomials_up_to_degree(nvars: usize, deg: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(j: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if j == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur[j] = a as u16;
            rec(j + 1, left - a, cur, out);
        }
        cur[j] = 0;
    }
    rec(0, deg, &mut cur, &mut out);
    out.sort();
    out
}

/// Sparse polynomial over a field; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Fe>,
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Polynomial {
        Polynomial {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: Fe) -> Polynomial {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn term(field: &Field, mono: Monomial, c: Fe) -> Polynomial {
        let nvars = mono.nvars();
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Fe)>,
    ) -> Polynomial {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(
                m.nvars(),
                nvars,
                "monomial has the wrong number of variables"
            );
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, Fe)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> Fe {
        self.terms.get(m).copied().unwrap_or(Fe::ZERO)
    }

    pub fn add_term(&mut self, m: Monomial, c: Fe) {
        if c.is_zero() {
            return;
        }
        let f = self.field.clone();
        let e = self.terms.entry(m);
        match e {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, Fe)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, deg: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == deg)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        for (m, c) in other.terms() {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field.neg(Fe::ONE))
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> Polynomial {
        let mut r = Self::zero(&self.field, self.nvars);
        for (m, a) in self.terms() {
            r.add_term(m.clone(), self.field.mul(a, c));
        }
        r
    }

    /// `c * X^mono * self`.
    pub fn mul_term(&self, mono: &Monomial, c: Fe) -> Polynomial {
        let mut r = Self::zero(&self.field, self.nvars);
        for (m, a) in self.terms() {
            r.add_term(m.mul(mono), self.field.mul(a, c));
        }
        r
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut r = Self::zero(&self.field, self.nvars);
        for (m, c) in other.terms() {
            r = r.add(&self.mul_term(m, c));
        }
        r
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field.inv_nz(c)),
        }
    }

    pub fn evaluate(&self, point: &[Fe]) -> Fe {
        assert_eq!(
            point.len(),
            self.nvars,
            "point has the wrong number of coordinates"
        );
        let f = &self.field;
        self.terms().fold(Fe::ZERO, |acc, (m, c)| {
            let v =
                m.0.iter()
                    .zip(point)
                    .fold(c, |t, (&a, &x)| f.mul(t, f.pow(x, a as u64)));
            f.add(acc, v)
        })
    }

    /// Renders with variables named from `X{first}`, highest term first.
    pub fn display(&self, first: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.degree() == 0 {
                    c.to_string()
                } else if *c == Fe::ONE {
                    m.display(first)
                } else {
                    format!("{}*{}", c, m.display(first))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses `c*X0^a0*X1^a1 + ...`. Coefficients default to 1, exponents to
    /// 1; factors may appear in any order and repeat. Variable `X{first+j}`
    /// maps to position `j`.
    pub fn parse(s: &str, field: &Field, nvars: usize, first: usize) -> Result<Polynomial> {
        let bad = |why: &str| Error::PolySyntax(format!("{why} in {s:?}"));
        let mut p = Self::zero(field, nvars);
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if body.is_empty() {
            return Err(bad("empty input"));
        }
        for term in body.split('+') {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = Fe::ONE;
            let mut exps = vec![0u16; nvars];
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix('X') {
                    let (idx, e) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u16>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx < first || idx - first >= nvars {
                        return Err(bad("variable out of range"));
                    }
                    exps[idx - first] += e;
                } else {
                    let v: usize = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    let c = field
                        .element(v)
                        .map_err(|_| bad("coefficient out of range"))?;
                    coeff = field.mul(coeff, c);
                }
            }
            p.add_term(Monomial(exps), coeff);
        }
        Ok(p)
    }
}

/// A sequence of generators under the graded order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerSet {
    pub generators: Vec<Polynomial>,
    pub order: MonomialOrder,
    nvars: usize,
    field: Field,
}

impl GroebnerSet {
    pub fn new(field: &Field, nvars: usize, generators: Vec<Polynomial>) -> GroebnerSet {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        GroebnerSet {
            generators,
            order: MonomialOrder,
            nvars,
            field: field.clone(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Full reduction of `g`. `normal` is true when `g` was already reduced.
    pub fn divide(&self, g: &Polynomial) -> (Polynomial, bool) {
        let f = &self.field;
        let mut p = g.clone();
        let mut rem = Polynomial::zero(f, self.nvars);
        let mut normal = true;
        let leads: Vec<(Monomial, Fe)> = self
            .generators
            .iter()
            .map(|g| g.leading().map(|(m, c)| (m.clone(), c)).unwrap())
            .collect();
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c)) {
            match leads.iter().position(|(l, _)| l.divides(&m)) {
                Some(i) => {
                    normal = false;
                    let (l, lc) = &leads[i];
                    let factor = f.neg(f.mul(c, f.inv_nz(*lc)));
                    p = p.add(&self.generators[i].mul_term(&m.div(l), factor));
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, c);
                }
            }
        }
        (rem, normal)
    }

    pub fn is_autoreduced(&self) -> bool {
        let leads = self.leading_monomials();
        self.generators.iter().enumerate().all(|(i, g)| {
            leads
                .iter()
                .enumerate()
                .all(|(j, l)| i == j || g.terms().all(|(m, _)| !l.divides(m)))
        })
    }

    /// Buchberger criterion: every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let n = self.generators.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.divide(&self.s_polynomial(i, j)).0.is_zero()))
    }

    fn s_polynomial(&self, i: usize, j: usize) -> Polynomial {
        let f = &self.field;
        let (a, b) = (&self.generators[i], &self.generators[j]);
        let (la, ca) = a.leading().unwrap();
        let (lb, cb) = b.leading().unwrap();
        let l = la.lcm(lb);
        a.mul_term(&l.div(la), f.inv_nz(ca))
            .sub(&b.mul_term(&l.div(lb), f.inv_nz(cb)))
    }

    /// The reduced Gröbner basis of the ideal, assuming the generators already
    /// form a Gröbner basis: minimal, monic, fully interreduced, sorted by
    /// leading monomial.
    pub fn reduced(&self) -> GroebnerSet {
        let mut gens: Vec<Polynomial> = self.generators.iter().map(Polynomial::monic).collect();
        gens.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        let mut minimal: Vec<Polynomial> = Vec::new();
        for g in gens {
            let lm = g.leading_monomial().unwrap();
            if !minimal
                .iter()
                .any(|h| h.leading_monomial().unwrap().divides(lm))
            {
                minimal.push(g);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let rest = GroebnerSet::new(&self.field, self.nvars, others);
            let (lm, _) = minimal[i].leading().unwrap();
            let tail = Polynomial::from_terms(
                &self.field,
                self.nvars,
                minimal[i]
                    .terms()
                    .filter(|(m, _)| *m != lm)
                    .map(|(m, c)| (m.clone(), c)),
            );
            let (r, _) = rest.divide(&tail);
            out.push(Polynomial::term(&self.field, lm.clone(), Fe::ONE).add(&r));
        }
        GroebnerSet::new(&self.field, self.nvars, out)
    }

    /// Monomials not divisible by any leading monomial, ascending. Errors if
    /// some variable has no pure-power leading monomial.
    pub fn footprint(&self) -> Result<Vec<Monomial>> {
        let leads = self.leading_monomials();
        let mut bound = vec![0u16; self.nvars];
        for (j, b) in bound.iter_mut().enumerate() {
            *b = leads
                .iter()
                .filter(|l| l.0.iter().enumerate().all(|(k, &a)| k == j || a == 0))
                .map(|l| l.0[j])
                .min()
                .ok_or(Error::InfiniteFootprint(j))?;
        }
        if leads.iter().any(|l| l.degree() == 0) {
            return Ok(Vec::new());
        }
        let side: Vec<usize> = bound.iter().map(|&b| b as usize).collect();
        let total: usize = side.iter().product();
        let mut out = Vec::new();
        for mut k in 0..total {
            let m = Monomial(
                side.iter()
                    .map(|&s| {
                        let a = (k % s) as u16;
                        k /= s;
                        a
                    })
                    .collect(),
            );
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Footprint restricted to exponents below `q`, following the convention
    /// that the quotient is taken inside the reduced monomial set.
    pub fn footprint_within(&self, q: usize) -> Result<Vec<Monomial>> {
        Ok(self
            .footprint()?
            .into_iter()
            .filter(|m| m.0.iter().all(|&a| (a as usize) < q))
            .collect())
    }

    pub fn display(&self, first: usize) -> String {
        self.generators
            .iter()
            .map(|g| g.display(first))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// One generator per non-empty line.
    pub fn parse(s: &str, field: &Field, nvars: usize, first: usize) -> Result<GroebnerSet> {
        let gens = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| Polynomial::parse(l, field, nvars, first))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroebnerSet::new(field, nvars, gens))
    }
}

impl fmt::Display for GroebnerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(1))
    }
}

/// Dense normal forms modulo a monic Gröbner basis for every monomial up to a
/// degree bound. Row `k` holds the coefficients over the footprint of the
/// `k`-th monomial of that degree range.
pub struct NormalForms {
    pub footprint: Vec<Monomial>,
    nvars: usize,
    radix: usize,
    slot: Vec<u32>,
    rows: Vec<Fe>,
}

const NO_SLOT: u32 = u32::MAX;

impl NormalForms {
    /// Builds the table for all monomials of total degree at most `max_deg`.
    /// Each step reduces by the first generator (lowest index) whose leading
    /// monomial divides, as in the division algorithm.
    pub fn build(basis: &GroebnerSet, footprint: Vec<Monomial>, max_deg: usize) -> NormalForms {
        let monos = monomials_up_to_degree(basis.nvars(), max_deg);
        Self::build_for(basis, footprint, max_deg, &monos)
    }

    /// Like [`NormalForms::build`], but fills only the rows of `targets` and
    /// the rows they depend on. Every target must have degree at most
    /// `max_deg`.
    pub fn build_for(
        basis: &GroebnerSet,
        footprint: Vec<Monomial>,
        max_deg: usize,
        targets: &[Monomial],
    ) -> NormalForms {
        let f = basis.field();
        let nvars = basis.nvars();
        let radix = max_deg + 1;
        let width = footprint.len();
        // Monomials are packed as `sum a_j radix^j`; degrees stay below
        // `radix`, so products are sums of keys.
        let key = |m: &[u16]| {
            m.iter()
                .rev()
                .fold(0usize, |acc, &a| acc * radix + a as usize)
        };
        let gens: Vec<(Vec<u16>, usize, Vec<(usize, Fe)>)> = basis
            .generators
            .iter()
            .map(|g| {
                let g = g.monic();
                let (lm, _) = g.leading().expect("nonzero generator");
                let tail = g
                    .terms()
                    .filter(|(m, _)| *m != lm)
                    .map(|(m, c)| (key(&m.0), f.neg(c)))
                    .collect();
                (lm.0.clone(), key(&lm.0), tail)
            })
            .collect();
        let mut slot = vec![NO_SLOT; radix.pow(nvars as u32)];
        let mut fp_slot = vec![NO_SLOT; slot.len()];
        for (i, m) in footprint.iter().enumerate() {
            fp_slot[key(&m.0)] = i as u32;
        }
        let mut rows: Vec<Fe> = Vec::new();
        let mut row = vec![Fe::ZERO; width];
        let mut exps = vec![0u16; nvars];
        let mut stack: Vec<(usize, bool)> = Vec::new();
        for t in targets {
            stack.push((key(&t.0), false));
            while let Some((k, expanded)) = stack.pop() {
                if slot[k] != NO_SLOT {
                    continue;
                }
                row.iter_mut().for_each(|x| *x = Fe::ZERO);
                if fp_slot[k] != NO_SLOT {
                    row[fp_slot[k] as usize] = Fe::ONE;
                } else {
                    let mut r = k;
                    for e in exps.iter_mut() {
                        *e = (r % radix) as u16;
                        r /= radix;
                    }
                    let g = gens
                        .iter()
                        .find(|(lm, _, _)| lm.iter().zip(&exps).all(|(a, b)| a <= b));
                    if let Some((_, lm_key, tail)) = g {
                        let shift = k - lm_key;
                        if !expanded && tail.iter().any(|(b, _)| slot[b + shift] == NO_SLOT) {
                            stack.push((k, true));
                            stack.extend(tail.iter().map(|(b, _)| (b + shift, false)));
                            continue;
                        }
                        for &(b, c) in tail {
                            let src = slot[b + shift] as usize * width;
                            for (a, &x) in row.iter_mut().zip(&rows[src..src + width]) {
                                *a = f.mul_add(*a, c, x);
                            }
                        }
                    }
                }
                slot[k] = (rows.len() / width.max(1)) as u32;
                rows.extend_from_slice(&row);
            }
        }
        NormalForms {
            footprint,
            nvars,
            radix,
            slot,
            rows,
        }
    }

    pub fn width(&self) -> usize {
        self.footprint.len()
    }

    /// Coefficients of the normal form of `m` over the footprint.
    pub fn row(&self, m: &[u16]) -> &[Fe] {
        debug_assert_eq!(m.len(), self.nvars);
        let key = m
            .iter()
            .rev()
            .fold(0usize, |acc, &a| acc * self.radix + a as usize);
        let r = self.slot[key];
        assert!(r != NO_SLOT, "normal form of {m:?} not in the table");
        let (r, w) = (r as usize, self.width());
        &self.rows[r * w..(r + 1) * w]
    }
}
