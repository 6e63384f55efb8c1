//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use prm::monomial::{monomials_up_to_degree, GroebnerSet, Monomial, Polynomial};
use prm::{Fe, Field};

pub fn mono_eval(f: &Field, m: &Monomial, p: &[Fe]) -> Fe {
    m.0.iter()
        .zip(p)
        .fold(Fe::ONE, |acc, (&a, &x)| f.mul(acc, f.pow(x, a as u64)))
}

/// Standard monomials and reduced Gröbner basis of the ideal of polynomials
/// vanishing on `points`, by linear algebra on evaluation vectors: a
/// monomial is standard when its evaluation vector is independent of those
/// of the smaller standard monomials.
pub fn vanishing_ideal(
    f: &Field,
    nvars: usize,
    points: &[Vec<Fe>],
) -> (Vec<Monomial>, GroebnerSet) {
    let q = f.q();
    let mut standard: Vec<Monomial> = Vec::new();
    // Echelon rows: (vector, pivot, combination over `standard`).
    let mut rows: Vec<(Vec<Fe>, usize, Vec<Fe>)> = Vec::new();
    let mut gens = Vec::new();
    for t in monomials_up_to_degree(nvars, nvars * q) {
        if t.0.iter().any(|&a| a as usize > q) {
            continue;
        }
        let divisors_standard = (0..nvars).filter(|&j| t.0[j] > 0).all(|j| {
            let mut d = t.clone();
            d.0[j] -= 1;
            standard.contains(&d)
        });
        if !divisors_standard {
            continue;
        }
        let mut v: Vec<Fe> = points.iter().map(|p| mono_eval(f, &t, p)).collect();
        let mut comb = vec![Fe::ZERO; standard.len() + 1];
        comb[standard.len()] = Fe::ONE;
        for (r, piv, c) in &rows {
            let x = v[*piv];
            if x.is_zero() {
                continue;
            }
            let s = f.neg(x);
            for (a, &b) in v.iter_mut().zip(r) {
                *a = f.mul_add(*a, s, b);
            }
            for (a, &b) in comb.iter_mut().zip(c) {
                *a = f.mul_add(*a, s, b);
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(piv) => {
                let inv = f.inv(v[piv]).unwrap();
                let v: Vec<Fe> = v.iter().map(|&x| f.mul(x, inv)).collect();
                let comb: Vec<Fe> = comb.iter().map(|&x| f.mul(x, inv)).collect();
                rows.iter_mut().for_each(|r| r.2.push(Fe::ZERO));
                rows.push((v, piv, comb));
                standard.push(t);
            }
            None => {
                // comb is the vanishing combination; its top term is t.
                let terms = standard
                    .iter()
                    .cloned()
                    .chain(std::iter::once(t.clone()))
                    .zip(comb);
                gens.push(Polynomial::from_terms(f, nvars, terms));
            }
        }
    }
    // Keep only generators whose leading monomial is minimal.
    let lms: Vec<Monomial> = gens
        .iter()
        .map(|g: &Polynomial| g.leading_monomial().unwrap().clone())
        .collect();
    let minimal: Vec<Polynomial> = gens
        .iter()
        .zip(&lms)
        .filter(|(_, lm)| !lms.iter().any(|o| o != *lm && o.divides(lm)))
        .map(|(g, _)| g.monic())
        .collect();
    (standard, GroebnerSet::new(f, nvars, minimal))
}

pub fn sorted_display(g: &GroebnerSet) -> Vec<String> {
    let mut v: Vec<String> = g.generators.iter().map(|p| p.display(1)).collect();
    v.sort();
    v
}
