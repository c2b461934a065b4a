use super::*;
use crate::exactmath::qint;
use crate::spider::{reduce, second_generator, Spider};
use crate::webcore::{Dir, RenderStyle, SliceDiagram, Tile};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(n: usize, i: usize) -> Web {
    Web::generator_e1(n, i).unwrap()
}

fn g(s: &str) -> BoundaryLabeling {
    BoundaryLabeling::parse(s).unwrap()
}

fn word_web(n: usize, word: &[usize]) -> Web {
    let mut w = Web::identity(n).unwrap();
    for &i in word {
        w = w.concatenate(&e(n, i)).unwrap();
    }
    w
}

#[test]
fn identity_labelings() {
    let id = Web::identity(3).unwrap();
    assert_eq!(enumerate_labelings(id.map(), Some(&g("1,2,3:1,2,3"))).unwrap().len(), 1);
    assert_eq!(enumerate_labelings(id.map(), Some(&g("1,2,3:1,3,2"))).unwrap().len(), 0);
    assert_eq!(enumerate_labelings(id.map(), None).unwrap().len(), 27);
}

#[test]
fn generator_labelings() {
    let w = e(2, 1);
    let ls = enumerate_labelings(w.map(), Some(&g("1,2:1,2"))).unwrap();
    assert_eq!(ls.len(), 1);
    // the middle edge is the only edge not on the boundary
    let mid: Vec<u8> = (0..w.map().edge_count())
        .filter(|&x| (0..4).all(|b| w.map().boundary_edge(b) != x))
        .map(|x| ls[0].edges[x])
        .collect();
    assert_eq!(mid, vec![3]);
    assert!(enumerate_labelings(w.map(), Some(&g("1,1:1,1"))).unwrap().is_empty());
}

#[test]
fn alpha_hand_values() {
    let w = e(2, 1);
    assert_eq!(qsize(&w, &g("1,2:1,2")).unwrap(), LaurentPoly::t_pow(2));
    assert_eq!(qsize(&w, &g("2,1:2,1")).unwrap(), LaurentPoly::t_pow(-2));
    assert_eq!(qsize(&Web::identity(2).unwrap(), &g("1,2:1,2")).unwrap(), LaurentPoly::one());
}

fn loop_web(clockwise: bool) -> Web {
    let mut d = SliceDiagram::identity(1).unwrap();
    // clockwise: the top of the loop runs rightward
    let dirs = if clockwise { (Dir::Right, Dir::Left) } else { (Dir::Left, Dir::Right) };
    d.push(1, Tile::Cup, Some(dirs)).unwrap();
    d.push(1, Tile::Cap, None).unwrap();
    Web::from_diagram(d).unwrap()
}

#[test]
fn loop_alpha() {
    let w = loop_web(true);
    for (i, q_exp) in [(1u8, 4), (2, 0), (3, -4)] {
        let f = Labeling { edges: vec![1], loops: vec![i] };
        assert_eq!(alpha_exponent(&w, &f), q_exp, "label {i}");
    }
    // the three labels together give [3]
    let total = qsize(&w, &g("1:1")).unwrap();
    assert_eq!(total, qint(3).unwrap());
    assert_eq!(qsize(&loop_web(false), &g("1:1")).unwrap(), qint(3).unwrap());
}

#[test]
fn kappa_identity() {
    let k = kappa(&Web::identity(1).unwrap()).unwrap();
    assert_eq!(k.entries.len(), 3);
    for l in 1..=3u8 {
        assert!(k.get(&BoundaryLabeling::new(vec![l], vec![l]).unwrap()).is_one());
    }
}

#[test]
fn kappa_generator_square() {
    let k = kappa(&e(2, 1)).unwrap();
    let k2 = k.mul(&k);
    let mut expect = KappaVector::default();
    expect.add_scaled(&k, &qint(2).unwrap());
    assert_eq!(k2, expect);
}

#[test]
fn bigon_fiber() {
    let w = e(2, 1).concatenate(&e(2, 1)).unwrap();
    let gg = g("1,2:1,2");
    let fibers = type_fibers(&w, &gg, SquareRule::default()).unwrap();
    assert_eq!(fibers.len(), 1);
    let fib = &fibers[e(2, 1).code()];
    assert_eq!(fib.count, 2);
    let c = coefficient_via_labelings(&w, &e(2, 1), &gg, SquareRule::default()).unwrap();
    assert_eq!(c, qint(2).unwrap());
}

#[test]
fn irreducible_type_is_itself() {
    let d = second_generator(3, 1).unwrap();
    for f in enumerate_labelings(d.map(), None).unwrap() {
        let (code, _, f2) = transport_and_type(&d, &f).unwrap();
        assert_eq!(&code, d.code());
        assert_eq!(f2, f);
    }
}

#[test]
fn boundary_balance() {
    let w = word_web(4, &[1, 2, 3, 1, 2]);
    for f in enumerate_labelings(w.map(), None).unwrap() {
        assert!(f.boundary(w.map()).is_balanced());
    }
}

fn check_theorem(w: &Web, rule: SquareRule) -> std::result::Result<(), String> {
    match coefficient_mismatch(w, rule) {
        Ok(None) => Ok(()),
        Ok(Some(msg)) => Err(msg),
        Err(e) => Err(e.to_string()),
    }
}

#[test]
fn theorem_on_small_products() {
    let words: &[(usize, &[usize])] = &[
        (2, &[1, 1]),
        (3, &[1, 2, 1]),
        (3, &[2, 1, 2]),
        (3, &[1, 2, 1, 2]),
        (3, &[1, 2, 2, 1]),
        (4, &[2, 1, 3, 2]),
        (4, &[2, 1, 3, 2, 2]),
        (4, &[1, 2, 3, 2, 1]),
    ];
    for &(n, word) in words {
        let w = word_web(n, word);
        if let Err(msg) = check_theorem(&w, SquareRule::default()) {
            panic!("word {word:?} on {n} strands: {msg}");
        }
    }
}

#[test]
fn kappa_injective_on_three_strands() {
    use crate::exactmath::ExactMatrix;
    let mut sp = Spider::new();
    let mut webs = std::collections::BTreeMap::new();
    for word in [vec![], vec![1], vec![2], vec![1, 2], vec![2, 1], vec![1, 2, 1]] {
        let c = sp.reduce_web(&word_web(3, &word)).unwrap();
        for (code, _) in c.terms() {
            webs.entry(code.clone()).or_insert_with(|| c.map_of(code).unwrap().clone());
        }
    }
    assert_eq!(webs.len(), 6);
    let gs = BoundaryLabeling::all_balanced(3);
    let rows: Vec<Vec<_>> = webs
        .values()
        .map(|m| {
            let k = kappa(&Web::from_map(m).unwrap()).unwrap().eval_q1();
            gs.iter().map(|x| k.get(x).cloned().unwrap_or_default()).collect()
        })
        .collect();
    assert_eq!(ExactMatrix::rank_of_rows(&rows), 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn alpha_embedding_independent(n in 2usize..=4, len in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..n)).collect();
        let w = word_web(n, &word);
        let base = kappa(&w).unwrap();
        for style in RenderStyle::ALL {
            let r = w.redrawn(style).unwrap();
            prop_assert_eq!(&kappa(&r).unwrap(), &base);
        }
    }

    #[test]
    fn kappa_multiplicative(n in 2usize..=3, la in 1usize..=3, lb in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let wa: Vec<usize> = (0..la).map(|_| rng.gen_range(1..n)).collect();
        let wb: Vec<usize> = (0..lb).map(|_| rng.gen_range(1..n)).collect();
        let (a, b) = (word_web(n, &wa), word_web(n, &wb));
        let prod = kappa(&a).unwrap().mul(&kappa(&b).unwrap());
        prop_assert_eq!(&kappa(&a.concatenate(&b).unwrap()).unwrap(), &prod);
        // reduced forms drawn from scratch give the same vector
        let (red, _) = reduce(&a.concatenate(&b).unwrap()).unwrap();
        prop_assert_eq!(&kappa_combo(&red).unwrap(), &prod);
    }

    #[test]
    fn theorem_random(n in 2usize..=4, len in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..n)).collect();
        let w = word_web(n, &word);
        prop_assert_eq!(check_theorem(&w, SquareRule::TieAscendingToA), Ok(()));
        prop_assert_eq!(check_theorem(&w, SquareRule::TieAscendingToB), Ok(()));
    }
}

