//! Berlekamp–Massey–Sakata algorithm with majority voting.
//!
//! The syndrome array `u(a) = sum_P e_P P^a` is periodic: `x^e` depends only
//! on whether `e = 0` and on `e mod (q - 1)`, so every exponent vector folds
//! onto the box `[0, q)^m`. Points are processed in increasing monomial
//! order. Box points whose value is not supplied are filled in by a
//! Feng–Rao majority vote among the current minimal polynomials.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::monomial::{box_monomials, GroebnerSet, Monomial, NormalForms, Polynomial};
use crate::transform::{box_exps, SyndromeArray};

const MAXV: usize = 6;
type Pt = [u16; MAXV];

#[derive(Clone, Copy, Debug)]
pub struct BmsConfig {
    pub voting: bool,
    pub trace: bool,
}

impl Default for BmsConfig {
    fn default() -> Self {
        BmsConfig {
            voting: true,
            trace: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BmsFailure {
    /// The footprint grew past a box edge.
    OutsideBox,
    /// The footprint grew past the voting capacity.
    Capacity { footprint: usize, capacity: usize },
    /// No value reached a strict majority at an unknown point.
    Vote { at: Vec<u16> },
    /// No auxiliary polynomial spans the required shift.
    NoAuxiliary { at: Vec<u16> },
    /// Voting is off and an unknown point was reached before the stop rule.
    Incomplete { at: Vec<u16> },
}

impl std::fmt::Display for BmsFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BmsFailure::OutsideBox => write!(f, "footprint left the reduced monomial box"),
            BmsFailure::Capacity {
                footprint,
                capacity,
            } => {
                write!(f, "footprint size {footprint} exceeds capacity {capacity}")
            }
            BmsFailure::Vote { at } => write!(f, "no majority at {at:?}"),
            BmsFailure::NoAuxiliary { at } => write!(f, "no auxiliary polynomial at {at:?}"),
            BmsFailure::Incomplete { at } => {
                write!(f, "unknown syndrome at {at:?} with voting off")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BmsStats {
    pub points: usize,
    pub voted: usize,
    /// Votes in which some voter disagreed with the winner.
    pub contested: usize,
    pub basis_size: usize,
    pub footprint: usize,
    pub capacity: usize,
}

pub struct BmsOutcome {
    /// Reduced Gröbner basis of the locator ideal, sorted by leading monomial.
    pub basis: GroebnerSet,
    pub footprint: Vec<Monomial>,
    /// Supplied values plus every voted value.
    pub values: SyndromeArray,
    pub stats: BmsStats,
    pub failure: Option<BmsFailure>,
    pub trace: Vec<String>,
    /// Normal forms over `footprint` for all monomials up to degree `m(q-1)`.
    pub normal_forms: Option<NormalForms>,
}

#[derive(Clone)]
struct Poly {
    lm: Pt,
    /// Terms other than the leading one (which has coefficient one).
    tail: Vec<(Pt, Fe)>,
}

struct Aux {
    poly: Poly,
    span: Pt,
    disc: Fe,
}

struct Ctx<'a> {
    f: &'a Field,
    nv: usize,
    q: usize,
    red: Vec<u16>,
    stride: Vec<usize>,
}

fn le(a: &Pt, b: &Pt, nv: usize) -> bool {
    (0..nv).all(|j| a[j] <= b[j])
}

fn deg(a: &Pt, nv: usize) -> usize {
    a[..nv].iter().map(|&x| x as usize).sum()
}

fn cmp(a: &Pt, b: &Pt, nv: usize) -> std::cmp::Ordering {
    crate::monomial::cmp_exps(&a[..nv], &b[..nv])
}

impl Ctx<'_> {
    #[inline]
    fn key(&self, a: &Pt) -> usize {
        (0..self.nv)
            .map(|j| self.red[a[j] as usize] as usize * self.stride[j])
            .sum()
    }

    fn in_box(&self, a: &Pt) -> bool {
        a[..self.nv].iter().all(|&x| (x as usize) < self.q)
    }

    /// Residual of `f` at `a`: `sum_b f_b u(b + a - lm)`.
    fn residual(&self, p: &Poly, a: &Pt, vals: &[Fe]) -> Fe {
        let nv = self.nv;
        let mut shift = [0u16; MAXV];
        for j in 0..nv {
            shift[j] = a[j] - p.lm[j];
        }
        let mut acc = vals[self.key(a)];
        for (b, c) in &p.tail {
            let mut x = [0u16; MAXV];
            for j in 0..nv {
                x[j] = b[j] + shift[j];
            }
            acc = self.f.mul_add(acc, *c, vals[self.key(&x)]);
        }
        acc
    }

    /// Value making `f` valid at `a`.
    fn predict(&self, p: &Poly, a: &Pt, vals: &[Fe]) -> Fe {
        let nv = self.nv;
        let mut acc = Fe::ZERO;
        for (b, c) in &p.tail {
            let mut x = [0u16; MAXV];
            for j in 0..nv {
                x[j] = b[j] + a[j] - p.lm[j];
            }
            acc = self.f.mul_add(acc, *c, vals[self.key(&x)]);
        }
        self.f.neg(acc)
    }

    fn shift(&self, p: &Poly, w: &Pt) -> Poly {
        let nv = self.nv;
        let add = |x: &Pt| {
            let mut y = *x;
            for j in 0..nv {
                y[j] += w[j];
            }
            y
        };
        Poly {
            lm: add(&p.lm),
            tail: p.tail.iter().map(|(b, c)| (add(b), *c)).collect(),
        }
    }

    /// `a - lambda * b` where `b`'s leading monomial is below `a`'s.
    fn combine(&self, a: Poly, lambda: Fe, b: &Poly) -> Poly {
        let nl = self.f.neg(lambda);
        let mut terms: Vec<(Pt, Fe)> = a.tail;
        terms.push((b.lm, nl));
        terms.extend(b.tail.iter().map(|(x, c)| (*x, self.f.mul(*c, nl))));
        terms.sort_by_key(|x| x.0);
        let mut merged: Vec<(Pt, Fe)> = Vec::with_capacity(terms.len());
        for (x, c) in terms {
            match merged.last_mut() {
                Some((y, d)) if *y == x => *d = self.f.add(*d, c),
                _ => merged.push((x, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Poly {
            lm: a.lm,
            tail: merged,
        }
    }
}

fn show(a: &Pt, nv: usize) -> String {
    format!("{:?}", &a[..nv])
}

/// Voting capacity implied by the set of supplied values:
/// `floor((d - 1) / 2)` with `d` the least `prod(a_j + 1)` over unknown box
/// points. With no unknown point the capacity is the box size.
pub fn capacity(syndrome: &SyndromeArray) -> usize {
    let (nv, q) = (syndrome.nvars, syndrome.q);
    let d = (0..syndrome.values.len())
        .filter(|&k| syndrome.values[k].is_none())
        .map(|k| {
            box_exps(k, nv, q)
                .iter()
                .map(|&a| a as usize + 1)
                .product::<usize>()
        })
        .min();
    match d {
        Some(d) => (d - 1) / 2,
        None => syndrome.values.len(),
    }
}

/// Runs BMS on the supplied values. The supplied set must be closed under
/// taking divisors.
pub fn bms_run(syndrome: &SyndromeArray, field: &Field, cfg: &BmsConfig) -> Result<BmsOutcome> {
    let (nv, q) = (syndrome.nvars, syndrome.q);
    if nv > MAXV {
        return Err(Error::SearchTooLarge(q.pow(nv as u32) as u128));
    }
    let cap = capacity(syndrome);
    let box_len = q.pow(nv as u32);
    let max_coord = 2 * q;
    let red: Vec<u16> = (0..(nv + 4) * q + 4)
        .map(|x| {
            if x == 0 {
                0
            } else {
                (((x - 1) % (q - 1)) + 1) as u16
            }
        })
        .collect();
    let stride: Vec<usize> = (0..nv).map(|j| q.pow(j as u32)).collect();
    let cx = Ctx {
        f: field,
        nv,
        q,
        red,
        stride,
    };

    let mut vals = vec![Fe::ZERO; box_len];
    let mut known = vec![false; box_len];
    let mut max_known_deg: i64 = -1;
    for (k, v) in syndrome.values.iter().enumerate() {
        if let Some(v) = v {
            vals[k] = *v;
            known[k] = true;
            let d: usize = box_exps(k, nv, q).iter().map(|&a| a as usize).sum();
            max_known_deg = max_known_deg.max(d as i64);
        }
    }

    let mut polys: Vec<Poly> = vec![Poly {
        lm: [0; MAXV],
        tail: Vec::new(),
    }];
    let mut aux: Vec<Aux> = Vec::new();
    let mut delta = vec![false; box_len];
    let mut delta_pts: Vec<Pt> = Vec::new();
    let mut stats = BmsStats {
        capacity: cap,
        ..Default::default()
    };
    let mut failure = None;
    let mut trace = Vec::new();
    let in_delta = |delta: &[bool], a: &Pt| cx.in_box(a) && delta[cx.key(a)];

    let max_deg = nv * (max_coord - 1);
    'outer: for d in 0..=max_deg {
        for a in points_of_degree(d, nv) {
            if a[..nv].iter().any(|&x| x as usize >= max_coord) {
                continue;
            }
            stats.points += 1;
            let ka = cx.key(&a);
            let a_in_box = cx.in_box(&a);
            let mut voted = None;
            if a_in_box && !known[ka] {
                if !cfg.voting {
                    failure = Some(BmsFailure::Incomplete {
                        at: a[..nv].to_vec(),
                    });
                    break 'outer;
                }
                // Voters: c <= a with c and a - c both outside the footprint.
                let mut tally: Vec<(Fe, usize)> = Vec::new();
                let mut voters = 0usize;
                let mut preds: Vec<Option<Fe>> = vec![None; polys.len()];
                for c in below(&a, nv) {
                    let mut rest = [0u16; MAXV];
                    for j in 0..nv {
                        rest[j] = a[j] - c[j];
                    }
                    if in_delta(&delta, &c) || in_delta(&delta, &rest) {
                        continue;
                    }
                    let Some(i) = polys.iter().position(|p| le(&p.lm, &c, nv)) else {
                        continue;
                    };
                    let v = *preds[i].get_or_insert_with(|| cx.predict(&polys[i], &a, &vals));
                    voters += 1;
                    match tally.iter_mut().find(|(x, _)| *x == v) {
                        Some((_, n)) => *n += 1,
                        None => tally.push((v, 1)),
                    }
                }
                let winner = tally.iter().max_by_key(|(_, n)| *n).copied();
                match winner {
                    Some((v, n)) if 2 * n > voters => {
                        vals[ka] = v;
                        known[ka] = true;
                        stats.voted += 1;
                        if n < voters {
                            stats.contested += 1;
                        }
                        voted = Some((v, n, voters));
                    }
                    _ => {
                        failure = Some(BmsFailure::Vote {
                            at: a[..nv].to_vec(),
                        });
                        break 'outer;
                    }
                }
            }

            let residuals: Vec<Option<Fe>> = polys
                .iter()
                .map(|p| le(&p.lm, &a, nv).then(|| cx.residual(p, &a, &vals)))
                .collect();
            let failing: Vec<usize> = (0..polys.len())
                .filter(|&i| residuals[i].is_some_and(|r| !r.is_zero()))
                .collect();

            if cfg.trace {
                let mut line = format!("a={}", show(&a, nv));
                match voted {
                    Some((v, n, k)) => write!(line, " voted={v} ({n}/{k})").unwrap(),
                    None => write!(line, " u={}", vals[ka]).unwrap(),
                }
                write!(line, " fail={}", failing.len()).unwrap();
                trace.push(line);
            }

            if failing.is_empty() {
                continue;
            }

            // Footprint update.
            let mut new_delta = delta.clone();
            let mut new_pts = delta_pts.clone();
            let mut grew = false;
            for &i in &failing {
                let mut span = [0u16; MAXV];
                for j in 0..nv {
                    span[j] = a[j] - polys[i].lm[j];
                }
                if !cx.in_box(&span) {
                    failure = Some(BmsFailure::OutsideBox);
                    break 'outer;
                }
                for c in below(&span, nv) {
                    let k = cx.key(&c);
                    if !new_delta[k] {
                        new_delta[k] = true;
                        new_pts.push(c);
                        grew = true;
                    }
                }
            }
            if new_pts.len() > cap {
                failure = Some(BmsFailure::Capacity {
                    footprint: new_pts.len(),
                    capacity: cap,
                });
                break 'outer;
            }

            let corners = if grew {
                corners_of(&new_delta, &new_pts, &cx)
            } else {
                polys.iter().map(|p| p.lm).collect()
            };
            let mut next: Vec<Poly> = Vec::with_capacity(corners.len());
            for t in &corners {
                let cands: Vec<usize> = (0..polys.len())
                    .filter(|&i| le(&polys[i].lm, t, nv))
                    .collect();
                let valid = cands.iter().copied().find(|&i| !failing.contains(&i));
                let first = cands[0];
                let mut w = [0u16; MAXV];
                if !le(t, &a, nv) || valid.is_some() {
                    let i = valid.unwrap_or(first);
                    for j in 0..nv {
                        w[j] = t[j] - polys[i].lm[j];
                    }
                    next.push(cx.shift(&polys[i], &w));
                    continue;
                }
                let i = first;
                let df = residuals[i].unwrap();
                let g = aux
                    .iter()
                    .filter(|g| (0..nv).all(|j| g.span[j] as i64 >= a[j] as i64 - t[j] as i64))
                    .min_by(|x, y| cmp(&x.poly.lm, &y.poly.lm, nv));
                let Some(g) = g else {
                    failure = Some(BmsFailure::NoAuxiliary {
                        at: a[..nv].to_vec(),
                    });
                    break 'outer;
                };
                for j in 0..nv {
                    w[j] = t[j] - polys[i].lm[j];
                }
                let base = cx.shift(&polys[i], &w);
                let mut wg = [0u16; MAXV];
                for j in 0..nv {
                    wg[j] = t[j] + g.span[j] - a[j];
                }
                let other = cx.shift(&g.poly, &wg);
                next.push(cx.combine(base, field.mul(df, field.inv_nz(g.disc)), &other));
            }

            for &i in &failing {
                let mut span = [0u16; MAXV];
                for j in 0..nv {
                    span[j] = a[j] - polys[i].lm[j];
                }
                if in_delta(&delta, &span) {
                    continue;
                }
                aux.retain(|g| !le(&g.span, &span, nv));
                aux.push(Aux {
                    poly: polys[i].clone(),
                    span,
                    disc: residuals[i].unwrap(),
                });
            }
            polys = next;
            delta = new_delta;
            delta_pts = new_pts;
            if cfg.trace {
                let lms: Vec<String> = polys.iter().map(|p| show(&p.lm, nv)).collect();
                trace.push(format!("  F={} |delta|={}", lms.join(","), delta_pts.len()));
            }
        }
        // Stop rule, checked once a whole degree has been processed.
        let max_lm = polys.iter().map(|p| deg(&p.lm, nv)).max().unwrap_or(0) as i64;
        let delta_deg = delta_pts
            .iter()
            .map(|c| deg(c, nv) as i64)
            .max()
            .unwrap_or(-1);
        let bound = max_lm + delta_deg + cap as i64 - delta_pts.len() as i64;
        if d as i64 >= max_known_deg && d as i64 >= bound {
            break;
        }
    }

    let basis_size = polys.len();
    stats.basis_size = basis_size;
    stats.footprint = delta_pts.len();

    let to_poly = |p: &Poly| -> Polynomial {
        let mut out = Polynomial::term(field, Monomial(p.lm[..nv].to_vec()), Fe::ONE);
        for (b, c) in &p.tail {
            out.add_term(Monomial(b[..nv].to_vec()), *c);
        }
        out
    };
    let raw = GroebnerSet::new(field, nv, polys.iter().map(to_poly).collect());
    let mut footprint: Vec<Monomial> = delta_pts
        .iter()
        .map(|c| Monomial(c[..nv].to_vec()))
        .collect();
    footprint.sort();

    let mut values = SyndromeArray::empty(nv, q);
    for k in 0..box_len {
        if known[k] {
            values.values[k] = Some(vals[k]);
        }
    }

    let (basis, normal_forms) = if failure.is_none() {
        let top = polys
            .iter()
            .map(|p| deg(&p.lm, nv))
            .max()
            .unwrap_or(0)
            .max(nv * (q - 1));
        let mut targets = box_monomials(nv, (q - 1) as u16);
        targets.extend(
            raw.generators
                .iter()
                .map(|g| g.leading_monomial().unwrap().clone()),
        );
        let nf = NormalForms::build_for(&raw, footprint.clone(), top, &targets);
        let mut gens: Vec<Polynomial> = raw
            .generators
            .iter()
            .map(|g| {
                let lm = g.leading_monomial().unwrap().clone();
                let row = nf.row(&lm.0);
                let mut out = Polynomial::term(field, lm, Fe::ONE);
                for (h, &v) in footprint.iter().zip(row) {
                    out.add_term(h.clone(), field.neg(v));
                }
                out
            })
            .collect();
        gens.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        (GroebnerSet::new(field, nv, gens), Some(nf))
    } else {
        (raw, None)
    };

    Ok(BmsOutcome {
        basis,
        footprint,
        values,
        stats,
        failure,
        trace,
        normal_forms,
    })
}

/// Points of total degree `d` in increasing monomial order.
fn points_of_degree(d: usize, nv: usize) -> Vec<Pt> {
    let mut out = Vec::new();
    let mut cur = [0u16; MAXV];
    // Highest variable varies slowest.
    fn rec(j: usize, left: usize, cur: &mut Pt, out: &mut Vec<Pt>) {
        if j == 0 {
            cur[0] = left as u16;
            out.push(*cur);
            return;
        }
        for x in 0..=left {
            cur[j] = x as u16;
            rec(j - 1, left - x, cur, out);
        }
    }
    if nv == 0 {
        if d == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(nv - 1, d, &mut cur, &mut out);
    out
}

/// All `c <= a` componentwise.
fn below(a: &Pt, nv: usize) -> Vec<Pt> {
    let mut out = vec![[0u16; MAXV]];
    for j in 0..nv {
        let mut next = Vec::with_capacity(out.len() * (a[j] as usize + 1));
        for c in &out {
            for x in 0..=a[j] {
                let mut y = *c;
                y[j] = x;
                next.push(y);
            }
        }
        out = next;
    }
    out
}

/// Minimal points outside the order ideal `delta`, ascending.
fn corners_of(delta: &[bool], pts: &[Pt], cx: &Ctx) -> Vec<Pt> {
    let nv = cx.nv;
    let inside = |a: &Pt| cx.in_box(a) && delta[cx.key(a)];
    let mut cands: Vec<Pt> = Vec::new();
    if pts.is_empty() {
        cands.push([0; MAXV]);
    }
    for c in pts {
        for j in 0..nv {
            let mut t = *c;
            t[j] += 1;
            cands.push(t);
        }
    }
    cands.sort_by(|x, y| cmp(x, y, nv));
    cands.dedup();
    cands
        .into_iter()
        .filter(|t| {
            !inside(t)
                && (0..nv).all(|j| {
                    t[j] == 0 || {
                        let mut s = *t;
                        s[j] -= 1;
                        inside(&s)
                    }
                })
        })
        .collect()
}

/// Common zeros of the basis over the affine space, by exhaustive search.
pub fn locator_roots(basis: &GroebnerSet, field: &Field) -> Result<Vec<Vec<Fe>>> {
    let nv = basis.nvars();
    let q = field.q();
    let size = (q as u128).pow(nv as u32);
    if size > 65536 {
        return Err(Error::SearchTooLarge(size));
    }
    let pts = crate::geometry::enumerate_affine(nv, field);
    Ok(pts
        .iter()
        .filter(|p| basis.generators.iter().all(|g| g.evaluate(p).is_zero()))
        .map(|p| p.to_vec())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_order() {
        let pts = points_of_degree(2, 3);
        let shown: Vec<String> = pts.iter().map(|p| show(p, 3)).collect();
        assert_eq!(
            shown,
            [
                "[2, 0, 0]",
                "[1, 1, 0]",
                "[0, 2, 0]",
                "[1, 0, 1]",
                "[0, 1, 1]",
                "[0, 0, 2]"
            ]
        );
        for w in pts.windows(2) {
            assert_eq!(cmp(&w[0], &w[1], 3), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn zero_syndrome_gives_unit_ideal() {
        let f = Field::new(2, 2).unwrap();
        let mut s = SyndromeArray::empty(2, 4);
        for k in 0..16 {
            if box_exps(k, 2, 4).iter().map(|&a| a as usize).sum::<usize>() <= 3 {
                s.values[k] = Some(Fe::ZERO);
            }
        }
        let out = bms_run(&s, &f, &BmsConfig::default()).unwrap();
        assert!(out.failure.is_none());
        assert_eq!(out.basis.display(1), "1");
        assert!(out.footprint.is_empty());
    }
}
