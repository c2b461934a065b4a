use super::*;
use crate::exactmath::qint;
use crate::webcore::{SliceDiagram, Tile};
use proptest::prelude::*;

fn e(n: usize, i: usize) -> Web {
    Web::generator_e1(n, i).unwrap()
}

#[test]
fn identity_is_irreducible() {
    let id = Web::identity(3).unwrap();
    assert_eq!(find_reducible_face(id.map()), None);
    let (c, t) = reduce(&id).unwrap();
    assert_eq!(c.single_term().unwrap().0, id.code());
    assert!(t.steps.is_empty());
}

#[test]
fn double_generator_has_bigon() {
    let w = e(2, 1).concatenate(&e(2, 1)).unwrap();
    let f = find_reducible_face(w.map()).unwrap();
    assert_eq!(f.kind, RuleKind::Bigon);
    let (c, _) = reduce(&w).unwrap();
    let (code, coeff) = c.single_term().unwrap();
    assert_eq!(code, e(2, 1).code());
    assert_eq!(*coeff, qint(2).unwrap());
}

#[test]
fn loop_removal() {
    // identity on two strands plus a closed loop drawn by a cup and a cap
    let mut d = SliceDiagram::identity(2).unwrap();
    d.push(2, Tile::Cup, Some((Dir::Left, Dir::Right))).unwrap();
    d.push(2, Tile::Cap, None).unwrap();
    let w = Web::from_diagram(d).unwrap();
    assert_eq!(w.map().loop_count(), 1);
    assert_eq!(find_reducible_face(w.map()).unwrap().kind, RuleKind::Loop);
    let (c, _) = reduce(&w).unwrap();
    let (code, coeff) = c.single_term().unwrap();
    assert_eq!(code, Web::identity(2).unwrap().code());
    assert_eq!(*coeff, qint(3).unwrap());
}

use crate::webcore::Dir;

#[test]
fn square_and_second_generator() {
    let w = e(3, 1).concatenate(&e(3, 2)).unwrap().concatenate(&e(3, 1)).unwrap();
    assert_eq!(find_reducible_face(w.map()).unwrap().kind, RuleKind::Square);
    let (c, _) = reduce(&w).unwrap();
    assert_eq!(c.len(), 2);
    let d2 = second_generator(3, 1).unwrap();
    // the square takes away four of the six vertices of the product
    assert_eq!(d2.internal_vertex_count(), 2);
    assert!(c.coeff(d2.code()).is_one());
    assert!(c.coeff(e(3, 1).code()).is_one());
}

#[test]
fn second_generator_relations() {
    let mut sp = Spider::new();
    let d = second_generator(3, 1).unwrap();
    let dd = sp.product(&[&d, &d]).unwrap();
    let expect = &qint(2).unwrap() * &qint(3).unwrap();
    assert_eq!(dd.coeff(d.code()), expect);
    assert_eq!(dd.len(), 1);

    let a = second_generator(4, 1).unwrap();
    let b = second_generator(4, 2).unwrap();
    let aba = sp.product(&[&a, &b, &a]).unwrap();
    assert_eq!(aba.len(), 1);
    assert_eq!(aba.coeff(a.code()), &qint(2).unwrap() * &qint(2).unwrap());
}

#[test]
fn non_monomial_basis_web() {
    // E2 E1 D2_2 - D2_2 reduces to a single irreducible web
    let mut sp = Spider::new();
    let d = second_generator(4, 2).unwrap();
    let prod = sp.product(&[&e(4, 2), &e(4, 1), &d]).unwrap();
    let diff = prod.sub(&WebCombo::from_web(&d)).unwrap();
    let (code, coeff) = diff.single_term().expect("single web");
    assert!(coeff.is_one(), "coefficient {coeff}");
    assert_ne!(code, d.code());
    let m = diff.map_of(code).unwrap();
    assert!(find_reducible_face(m).is_none());
}

#[test]
fn relation_suites_pass() {
    for n in 2..=4 {
        let r = relation_suite(n).unwrap();
        assert!(r.all_passed(), "{:?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    }
}

#[test]
fn corrupted_square_is_caught() {
    let r = suite::relation_suite_with(&mut Spider::corrupted(), 3).unwrap();
    assert!(!r.all_passed());
}

#[test]
fn theta_simple_cases() {
    let id = theta3(3, &[]).unwrap();
    assert!(id.same_terms(&WebCombo::identity(3).unwrap()));
    let g = theta3(2, &[1]).unwrap();
    let at1 = g.eval_q1();
    assert_eq!(at1.len(), 2);
    assert_eq!(at1[e(2, 1).code()], crate::exactmath::int(1));
    assert_eq!(at1[Web::identity(2).unwrap().code()], crate::exactmath::int(-1));
    assert!(theta3(3, &[1, 1]).is_err());
}

#[test]
fn theta_braid() {
    let a = theta3(3, &[1, 2, 1]).unwrap();
    let b = theta3(3, &[2, 1, 2]).unwrap();
    assert!(a.same_terms(&b));
}

#[test]
fn trace_replays() {
    let w = e(4, 2)
        .concatenate(&e(4, 1))
        .unwrap()
        .concatenate(&e(4, 3))
        .unwrap()
        .concatenate(&e(4, 2))
        .unwrap()
        .concatenate(&e(4, 2))
        .unwrap();
    let (c, t) = reduce(&w).unwrap();
    let replay = t.replay(w.code());
    let direct: std::collections::BTreeMap<_, _> =
        c.terms().map(|(k, v)| (k.clone(), v.clone())).collect();
    assert_eq!(replay, direct);
    assert!(!t.ordered_steps(w.code()).is_empty());
}

#[test]
fn expressions() {
    let mut sp = Spider::new();
    let c = parse_expression("E1*E1", 2, &mut sp).unwrap();
    assert_eq!(c.coeff(e(2, 1).code()), qint(2).unwrap());
    let d = parse_expression("(E1-1)*(E2-1) - (E1*E2 - E1 - E2 + Id)", 3, &mut sp).unwrap();
    assert!(d.is_zero());
    assert!(parse_expression("E1*", 2, &mut sp).is_err());
    assert!(parse_expression("E5", 2, &mut sp).is_err());
    let p = parse_expression("E1^2 - (q^0 + 1) * E1", 2, &mut sp).unwrap();
    // [2] != 2 at generic q
    assert!(!p.is_zero());
    assert!(p.eval_q1().is_empty());
}

fn random_word(n: usize, len: usize, seed: u64) -> Vec<usize> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(1..n)).collect()
}

fn word_web(n: usize, word: &[usize]) -> Web {
    let mut w = Web::identity(n).unwrap();
    for &i in word {
        w = w.concatenate(&e(n, i)).unwrap();
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn confluence(n in 2usize..=4, len in 1usize..=8, seed in any::<u64>()) {
        let w = word_web(n, &random_word(n, len, seed));
        let (canon, _) = reduce(&w).unwrap();
        for k in 0..5u64 {
            let mut sp = Spider::randomized(seed ^ (k + 1).wrapping_mul(0x9E37_79B9));
            let other = sp.reduce_web(&w).unwrap();
            prop_assert!(canon.same_terms(&other));
        }
        for (code, _) in canon.terms() {
            prop_assert!(find_reducible_face(canon.map_of(code).unwrap()).is_none());
        }
    }

    #[test]
    fn theta_multiplicative(seed in any::<u64>()) {
        use crate::perm::all_perms;
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perms = all_perms(4);
        let u = perms.choose(&mut rng).unwrap();
        let v = perms.choose(&mut rng).unwrap();
        let word: Vec<usize> = u.reduced_word().into_iter().chain(v.reduced_word()).collect();
        let uv = crate::perm::Perm::from_word(4, &word).unwrap();
        prop_assume!(uv.length() == u.length() + v.length());
        let mut sp = Spider::new();
        let tu = suite::theta3_with(&mut sp, 4, &u.reduced_word()).unwrap();
        let tv = suite::theta3_with(&mut sp, 4, &v.reduced_word()).unwrap();
        let prod = sp.multiply(&tu, &tv).unwrap();
        let tuv = suite::theta3_with(&mut sp, 4, &uv.reduced_word()).unwrap();
        prop_assert!(prod.same_terms(&tuv));
    }

    #[test]
    fn theta_word_independent(seed in any::<u64>()) {
        use crate::perm::all_perms;
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perms = all_perms(4);
        let w = perms.choose(&mut rng).unwrap();
        let words = w.all_reduced_words();
        let a = words.choose(&mut rng).unwrap();
        let b = words.choose(&mut rng).unwrap();
        let mut sp = Spider::new();
        let ta = suite::theta3_with(&mut sp, 4, a).unwrap();
        let tb = suite::theta3_with(&mut sp, 4, b).unwrap();
        prop_assert!(ta.same_terms(&tb));
    }
}

