use reflekt::catalog::get_group;
use reflekt::quotients::tables::{cyclic_diagonal, plus_minus_one, quaternion_subgroup};
use reflekt::quotients::{
    full_quotient, generated_by_codim_two, is_good, jacobian_matches, parabolic_inheritance,
    quotient_map, ramification_holds, Reason,
};
use reflekt::MatGroup;

fn good_pairs() -> Vec<(String, MatGroup, MatGroup)> {
    let mut out = Vec::new();
    for (name, params) in [
        ("G12", vec![]),
        ("G13", vec![]),
        ("I2", vec![8]),
        ("G", vec![6, 3, 2]),
    ] {
        let w = get_group(name, &params).unwrap();
        let g = plus_minus_one(&w).unwrap();
        out.push((format!("{name}{params:?} ±1"), w, g));
    }
    let w = get_group("G", &[6, 2, 2]).unwrap();
    out.push(("G(6,2,2) C3".into(), w, cyclic_diagonal(3).unwrap()));
    let w = get_group("G14", &[]).unwrap();
    let g = quaternion_subgroup(&w).unwrap();
    out.push(("G14 Q8".into(), w, g));
    let a3 = get_group("A", &[3]).unwrap();
    let klein = a3.derived_subgroup().unwrap().derived_subgroup().unwrap();
    out.push(("A3 Klein".into(), a3, klein));
    out
}

#[test]
fn good_pairs_are_good() {
    for (label, w, g) in good_pairs() {
        assert!(is_good(&w, &g).unwrap().good, "{label}");
    }
}

#[test]
fn kac_watanabe() {
    for (label, _, g) in good_pairs() {
        assert!(generated_by_codim_two(&g).unwrap(), "{label}");
    }
}

#[test]
fn ramification() {
    for (label, w, g) in good_pairs() {
        assert!(ramification_holds(&w, &g).unwrap(), "{label}");
    }
}

#[test]
fn parabolic_inheritance_on_good_pairs() {
    for (label, w, g) in good_pairs() {
        let flats = parabolic_inheritance(&w, &g).unwrap();
        assert!(!flats.is_empty());
        assert!(flats.iter().all(|&(_, good)| good), "{label}: {flats:?}");
    }
}

#[test]
fn jacobian_for_g12() {
    let w = get_group("G12", &[]).unwrap();
    let q = quotient_map(&w, &plus_minus_one(&w).unwrap()).unwrap();
    assert!(jacobian_matches(&w, &q).unwrap());
}

#[test]
fn degree_identity_on_good_pairs() {
    for (label, w, g) in good_pairs() {
        let (_, id) = full_quotient(&w, &g).unwrap();
        let id = id.unwrap();
        assert!(id.holds, "{label}: {id:?}");
    }
}

// C_d inside G(mn, n, 2) with d ≥ 3 is good exactly when m divides d.
#[test]
fn rank_two_cyclic_sweep() {
    for mn in 3..=12u32 {
        for m in (1..=mn).filter(|m| mn % m == 0) {
            let n = mn / m;
            let w = get_group("G", &[mn as i64, n as i64, 2]).unwrap();
            for d in (3..=12u32).filter(|d| mn % d == 0) {
                let g = cyclic_diagonal(d).unwrap();
                let r = is_good(&w, &g).unwrap();
                assert_eq!(r.good, d % m == 0, "C{d} in G({mn},{n},2): {:?}", r.reason);
            }
        }
    }
}

#[test]
fn non_good_pairs_carry_a_witness() {
    for (name, params) in [("ZpZq", vec![2, 4]), ("G", vec![4, 1, 2]), ("ZpZq", vec![4, 4])] {
        let w = get_group(name, &params).unwrap();
        let r = is_good(&w, &plus_minus_one(&w).unwrap()).unwrap();
        assert!(!r.good, "{name}{params:?}");
        assert!(matches!(r.reason, Reason::NonInvariantAlpha { .. }));
    }
}
