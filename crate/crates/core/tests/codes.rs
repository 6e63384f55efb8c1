use prm::codes::{
    dual_check, dual_generator, dual_monomials, encode, encode_polynomial, evaluation_matrix,
    generator, homogeneous_monomials, homogenize, prm_dimension, prm_dimension_as_printed,
    prm_params, rm_spec,
};
use prm::monomial::Polynomial;
use prm::{Fe, Field};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// (p, e, m) with at most a few hundred projective points.
const SMALL: [(u32, u32, usize); 9] = [
    (2, 1, 2),
    (3, 1, 2),
    (2, 2, 2),
    (5, 1, 2),
    (2, 3, 2),
    (2, 4, 2),
    (2, 1, 3),
    (3, 1, 3),
    (2, 2, 3),
];

fn weights(f: &Field, gen: &prm::linalg::Matrix) -> usize {
    let (k, n, q) = (gen.rows, gen.cols, f.q());
    let mut msg = vec![0usize; k];
    let mut best = usize::MAX;
    loop {
        let mut i = 0;
        while i < k && msg[i] == q - 1 {
            msg[i] = 0;
            i += 1;
        }
        if i == k {
            return best;
        }
        msg[i] += 1;
        let m: Vec<Fe> = msg.iter().map(|&v| Fe(v as u8)).collect();
        let w = gen.left_mul(&m, f).iter().filter(|x| !x.is_zero()).count();
        best = best.min(w);
        debug_assert!(w <= n);
    }
}

#[test]
fn dimension_matches_rank() {
    for (p, e, m) in SMALL {
        let f = Field::new(p, e).unwrap();
        for nu in 1..=m * (f.q() - 1) {
            let spec = prm_params(m, &f, nu).unwrap();
            let g = generator(&spec);
            assert_eq!(g.k(), spec.k, "PRM_{nu}({m},{})", f.q());
            assert_eq!(g.n(), spec.n);
            assert_eq!(prm_dimension(m, f.q(), nu), spec.k);
        }
        for nu in 0..=m * (f.q() - 1) {
            let spec = rm_spec(m, &f, nu).unwrap();
            assert_eq!(generator(&spec).k(), spec.k, "RM_{nu}({m},{})", f.q());
        }
    }
}

#[test]
fn minimum_distance_by_exhaustion() {
    let mut checked = 0;
    for (p, e, m) in SMALL {
        let f = Field::new(p, e).unwrap();
        for nu in 1..=m * (f.q() - 1) {
            let spec = prm_params(m, &f, nu).unwrap();
            if (f.q() as f64).powi(spec.k as i32) > 70_000.0 {
                continue;
            }
            let g = generator(&spec);
            assert_eq!(weights(&f, &g.matrix), spec.d, "PRM_{nu}({m},{})", f.q());
            assert_eq!(spec.t_md, (spec.d - 1) / 2);
            assert!(spec.t0 <= spec.t_md);
            checked += 1;
        }
    }
    assert!(checked >= 15, "{checked}");
}

#[test]
fn dual_codes_are_orthogonal_complements() {
    for (p, e, m) in SMALL {
        let f = Field::new(p, e).unwrap();
        for nu in 1..=m * (f.q() - 1) {
            let spec = prm_params(m, &f, nu).unwrap();
            let report = dual_check(&spec);
            assert!(report.holds(), "PRM_{nu}({m},{}): {report:?}", f.q());
            assert_eq!(report.rank_code, spec.k);
        }
        for nu in 0..=m * (f.q() - 1) {
            assert!(dual_check(&rm_spec(m, &f, nu).unwrap()).holds());
        }
    }
}

#[test]
fn chart_dual_monomials_are_parity_checks() {
    let f = Field::new(2, 2).unwrap();
    let spec = prm_params(3, &f, 5).unwrap();
    let g = generator(&spec);
    let points = spec.points();
    for i in 0..=spec.m {
        let hs: Vec<_> = dual_monomials(&spec, i)
            .unwrap()
            .iter()
            .map(|h| homogenize(&spec, i, h))
            .collect();
        assert!(hs.iter().all(|h| h.degree() == spec.mu));
        let checks = evaluation_matrix(&hs, &points, &f);
        let prod = g.matrix.mul(&checks.transpose(), &f);
        assert!(prod.data.iter().all(|v| v.is_zero()), "chart {i}");
    }
    assert!(dual_monomials(&spec, 4).is_err());
}

#[test]
fn quoted_dimension_formula_disagrees_somewhere() {
    let mut differ = Vec::new();
    for (p, e, m) in SMALL {
        let q = Field::new(p, e).unwrap().q();
        for nu in 1..=m * (q - 1) {
            if prm_dimension_as_printed(m, q, nu) != prm_dimension(m, q, nu) as i128 {
                differ.push((p, e, m, nu));
            }
        }
    }
    assert!(!differ.is_empty());
    for &(p, e, m, nu) in differ.iter().take(5) {
        let f = Field::new(p, e).unwrap();
        assert_eq!(
            generator(&prm_params(m, &f, nu).unwrap()).k(),
            prm_dimension(m, f.q(), nu)
        );
    }
}

#[test]
fn named_parameters() {
    let f = Field::new(2, 4).unwrap();
    let s = prm_params(2, &f, 17).unwrap();
    assert_eq!(
        (s.n, s.k, s.d, s.t0, s.t_md, s.i0),
        (273, 168, 15, 6, 7, Some(2))
    );
    let s = prm_params(2, &f, 20).unwrap();
    assert_eq!((s.k, s.d), (207, 12));
}

#[test]
fn homogeneous_monomial_count() {
    assert_eq!(homogeneous_monomials(3, 4).len(), 15);
    assert_eq!(homogeneous_monomials(4, 0).len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encodings_lie_in_the_dual_kernel(case in 0..SMALL.len(), nu_seed in 0usize..64, seed in any::<u64>()) {
        let (p, e, m) = SMALL[case];
        let f = Field::new(p, e).unwrap();
        let nu = 1 + nu_seed % (m * (f.q() - 1));
        let spec = prm_params(m, &f, nu).unwrap();
        let g = generator(&spec);
        let h = dual_generator(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let msg: Vec<Fe> = (0..spec.k).map(|_| Fe(rng.gen_range(0..f.q()) as u8)).collect();
        let c = encode(&g, &f, &msg).unwrap();
        prop_assert!(h.mul(&prm::linalg::Matrix::from_rows(std::slice::from_ref(&c.0), spec.n).transpose(), &f)
            .data.iter().all(|v| v.is_zero()));
        // A homogeneous polynomial of degree nu evaluates into the code too.
        let monos = homogeneous_monomials(m + 1, nu);
        let mut terms = Vec::new();
        for mo in &monos {
            if rng.gen_range(0..3) == 0 {
                terms.push(format!("{}*{}", rng.gen_range(1..f.q()), mo.display(0)));
            }
        }
        if !terms.is_empty() {
            let poly = Polynomial::parse(&terms.join(" + "), &f, m + 1, 0).unwrap();
            let w = encode_polynomial(&spec, &poly).unwrap();
            prop_assert!(h.mul(&prm::linalg::Matrix::from_rows(&[w.0], spec.n).transpose(), &f)
                .data.iter().all(|v| v.is_zero()));
        }
    }
}
