use prm::{Fe, Field};
use proptest::prelude::*;

const ORDERS: [(u32, u32); 11] = [
    (2, 1),
    (3, 1),
    (2, 2),
    (5, 1),
    (2, 3),
    (7, 1),
    (3, 2),
    (2, 4),
    (5, 2),
    (3, 3),
    (2, 8),
];

/// Base-p digits, low first.
fn digits(v: usize, p: usize, e: usize) -> Vec<usize> {
    (0..e).map(|i| v / p.pow(i as u32) % p).collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Schoolbook product modulo the field's modulus, independent of the tables.
fn slow_mul(f: &Field, a: Fe, b: Fe) -> Fe {
    let (p, e) = (f.p() as usize, f.e() as usize);
    let (x, y) = (digits(a.value(), p, e), digits(b.value(), p, e));
    let mut prod = vec![0usize; 2 * e];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
        }
    }
    let m: Vec<usize> = f.modulus().iter().map(|&c| c as usize).collect();
    for k in (e..2 * e).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            prod[k - e + i] = (prod[k - e + i] + p * p - c * mi % p) % p;
        }
    }
    Fe(undigits(&prod[..e], p) as u8)
}

fn field_and_elems() -> impl Strategy<Value = (Field, Fe, Fe, Fe)> {
    (0..ORDERS.len()).prop_flat_map(|i| {
        let (p, e) = ORDERS[i];
        let f = Field::new(p, e).unwrap();
        let q = f.q() as u16;
        (Just(f), 0..q, 0..q, 0..q)
            .prop_map(|(f, a, b, c)| (f, Fe(a as u8), Fe(b as u8), Fe(c as u8)))
    })
}

proptest! {
    #[test]
    fn ring_axioms((f, a, b, c) in field_and_elems()) {
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, Fe::ONE), a);
        prop_assert_eq!(f.mul_add(c, a, b), f.add(c, f.mul(a, b)));
    }

    #[test]
    fn tables_agree_with_schoolbook((f, a, b, _c) in field_and_elems()) {
        prop_assert_eq!(f.mul(a, b), slow_mul(&f, a, b));
    }

    #[test]
    fn inverses_and_powers((f, a, _b, _c) in field_and_elems(), k in 0u64..600) {
        if a.is_zero() {
            prop_assert!(f.inv(a).is_err());
            prop_assert_eq!(f.pow(a, k), if k == 0 { Fe::ONE } else { Fe::ZERO });
        } else {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), Fe::ONE);
            let mut slow = Fe::ONE;
            for _ in 0..k % (f.q() as u64 - 1) {
                slow = f.mul(slow, a);
            }
            prop_assert_eq!(f.pow(a, k), slow);
            prop_assert_eq!(f.mul(f.pow_signed(a, -(k as i64)).unwrap(), f.pow(a, k)), Fe::ONE);
        }
    }
}

#[test]
fn frobenius_fixes_every_element() {
    for (p, e) in ORDERS {
        let f = Field::new(p, e).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(a, f.q() as u64), a);
        }
    }
}

#[test]
fn primitive_element_generates() {
    for (p, e) in ORDERS {
        let f = Field::new(p, e).unwrap();
        let g = f.primitive();
        let mut seen = std::collections::HashSet::new();
        let mut x = Fe::ONE;
        for _ in 0..f.q() - 1 {
            seen.insert(x);
            x = f.mul(x, g);
        }
        assert_eq!(seen.len(), f.q() - 1);
        assert_eq!(x, Fe::ONE);
    }
}

#[test]
fn explicit_moduli() {
    let f = Field::parse("2^4:13").unwrap();
    assert_eq!(f, Field::new(2, 4).unwrap());
    let g = Field::parse("2^4:19").unwrap();
    assert_eq!(g.modulus_packed(), 0x19);
    assert_ne!(f, g);
    let a = f.wrap(Fe(3));
    assert!(a.add(&g.wrap(Fe(3))).is_err());
    assert!(Field::parse("2^4:15").is_err());
    assert!(Field::parse("6^1").is_err());
}
