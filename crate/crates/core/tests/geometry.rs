use prm::geometry::*;
use prm::{Fe, Field};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    vec![
        Field::new(2, 1).unwrap(),
        Field::new(3, 1).unwrap(),
        Field::new(2, 2).unwrap(),
        Field::new(5, 1).unwrap(),
    ]
}

#[test]
fn charts_partition_projective_space() {
    for f in fields() {
        let q = f.q();
        for m in 0..=3usize {
            let all = enumerate_projective(m, &f);
            assert_eq!(all.len(), projective_len(m, q));
            let mut concat = Vec::new();
            for i in 0..=m {
                let ch = chart_points(m, &f, i).unwrap();
                assert_eq!(ch.len(), chart_len(m, q, i));
                assert_eq!(chart_offset(m, q, i), concat.len());
                for p in ch.iter() {
                    assert_eq!(p.iter().position(|x| !x.is_zero()), Some(i));
                    assert_eq!(p[i], Fe::ONE);
                    concat.push(p.to_vec());
                }
            }
            let listed: Vec<Vec<Fe>> = all.iter().map(|p| p.to_vec()).collect();
            assert_eq!(listed, concat);
            let mut dedup = concat.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), concat.len());
            assert!(chart_points(m, &f, m + 1).is_err());
        }
    }
}

#[test]
fn affine_index_round_trip() {
    for f in fields() {
        let q = f.q();
        let pts = enumerate_affine(2, &f);
        for (k, p) in pts.iter().enumerate() {
            assert_eq!(affine_index(p, q), k);
            assert_eq!(affine_coords(k, 2, q), p.to_vec());
        }
    }
}

proptest! {
    #[test]
    fn normalize_is_scale_invariant(fi in 0usize..4, raw in proptest::collection::vec(0u8..5, 1..5), s in 1u8..5) {
        let f = &fields()[fi];
        let q = f.q() as u8;
        let raw: Vec<Fe> = raw.into_iter().map(|x| Fe(x % q)).collect();
        let s = Fe(1 + s % (q - 1));
        if raw.iter().all(|x| x.is_zero()) {
            prop_assert!(normalize(&raw, f).is_err());
        } else {
            let p = normalize(&raw, f).unwrap();
            let scaled: Vec<Fe> = raw.iter().map(|&x| f.mul(x, s)).collect();
            prop_assert_eq!(&normalize(&scaled, f).unwrap(), &p);
            prop_assert_eq!(&normalize(&p.rep, f).unwrap(), &p);
            let m = raw.len() - 1;
            let listed = enumerate_projective(m, f);
            prop_assert_eq!(listed.point(p.index(f.q())), &p.rep[..]);
            prop_assert_eq!(listed.chart(p.index(f.q())), p.chart);
            let text = p.to_string();
            prop_assert_eq!(ProjectivePoint::parse(&text, f).unwrap(), p);
        }
    }
}
