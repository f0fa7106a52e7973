use proptest::prelude::*;

use reflekt::catalog::get_group;
use reflekt::invariants::molien;
use reflekt::polynomials::{act, invariant_basis};
use reflekt::{CycNum, Mat, MatGroup, MPoly, Rational};

const CONDUCTORS: [u32; 9] = [1, 2, 3, 4, 5, 6, 8, 12, 15];

fn cyc() -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-9i64..10, 1i64..4, 0usize..CONDUCTORS.len(), 0i64..30), 0..4).prop_map(
        |terms| {
            let mut acc = CycNum::zero();
            for (a, b, n, k) in terms {
                acc = &acc + &CycNum::term(Rational::new(a, b), CONDUCTORS[n], k);
            }
            acc
        },
    )
}

fn poly2() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((-5i64..6, 0u32..4, 0u32..4), 1..5).prop_map(|terms| {
        let mut p = MPoly::zero(2);
        for (c, a, b) in terms {
            p = &p + &MPoly::monomial(2, vec![a, b], CycNum::from_int(c));
        }
        p
    })
}

fn word(g: &MatGroup, letters: &[usize]) -> Mat {
    let gens = g.generators();
    letters
        .iter()
        .fold(Mat::identity(g.dim()), |acc, &i| &acc * &gens[i % gens.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
        // the canonical form is unique, so equal values hash and compare equal
        prop_assert_eq!(a.canonical(), a.clone());
    }

    #[test]
    fn conjugation_is_a_ring_map(a in cyc(), b in cyc()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn action_axioms(p in poly2(), u in prop::collection::vec(0usize..8, 0..6),
                     v in prop::collection::vec(0usize..8, 0..6)) {
        let g = get_group("G12", &[]).unwrap();
        let (x, y) = (word(&g, &u), word(&g, &v));
        prop_assert_eq!(act(&(&x * &y), &p).unwrap(), act(&x, &act(&y, &p).unwrap()).unwrap());
        prop_assert_eq!(act(&Mat::identity(2), &p).unwrap(), p.clone());
        // the action is by ring automorphisms
        let q = &p * &p;
        prop_assert_eq!(act(&x, &q).unwrap(), &act(&x, &p).unwrap() * &act(&x, &p).unwrap());
    }

    #[test]
    fn lagrange(u in prop::collection::vec(0usize..8, 0..5),
                v in prop::collection::vec(0usize..8, 0..5)) {
        let w = get_group("G", &[6, 2, 3]).unwrap();
        let h = MatGroup::generate_in_dim(3, &[word(&w, &u), word(&w, &v)]).unwrap();
        prop_assert_eq!(w.order() % h.order(), 0);
        prop_assert!(w.contains_group(&h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn molien_counts_invariants(kind in 0usize..3, m in 2i64..7) {
        let g = match kind {
            0 => get_group("C", &[m]).unwrap(),
            1 => get_group("I2", &[m + 1]).unwrap(),
            _ => get_group("Itilde2", &[m.min(4)]).unwrap(),
        };
        let dims = molien(&g, 12).dims();
        for d in 0..=12u32 {
            prop_assert_eq!(invariant_basis(&g, d).unwrap().len(), dims[d as usize], "degree {}", d);
        }
    }
}
