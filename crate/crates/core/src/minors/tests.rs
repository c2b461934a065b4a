use super::*;
use crate::exactmath::int;
use crate::webcore::Web;
use proptest::prelude::*;

fn triple(n: usize, rows: [&[usize]; 3], cols: [&[usize]; 3]) -> MinorTriple {
    MinorTriple::new(n, rows.map(<[usize]>::to_vec), cols.map(<[usize]>::to_vec)).unwrap()
}

#[test]
fn boundary_words() {
    let t = triple(2, [&[1], &[2], &[]], [&[1], &[2], &[]]);
    assert_eq!(boundary_from_triple(&t).to_string(), "(1,2|1',2')");
    let t = triple(2, [&[1, 2], &[], &[]], [&[1, 2], &[], &[]]);
    assert_eq!(boundary_from_triple(&t).to_string(), "(1,1|1',1')");
    let t = triple(4, [&[1, 4], &[2], &[3]], [&[1, 3], &[2], &[4]]);
    assert_eq!(boundary_from_triple(&t).to_string(), "(1,2,3,1|1',2',1',3')");
}

#[test]
fn invalid_triples() {
    assert!(MinorTriple::new(2, [vec![1], vec![1], vec![]], [vec![1], vec![2], vec![]]).is_err());
    assert!(MinorTriple::new(2, [vec![1], vec![], vec![]], [vec![1], vec![], vec![]]).is_err());
    assert!(MinorTriple::new(2, [vec![1, 2], vec![], vec![]], [vec![1], vec![2], vec![]]).is_err());
}

#[test]
fn minors_by_hand() {
    let x = ExactMatrix::from_ints(&[vec![2, 3, 1], vec![5, 7, 4], vec![1, 1, 9]]).unwrap();
    assert_eq!(minor(&x, &[], &[]).unwrap(), int(1));
    assert_eq!(minor(&x, &[1, 2, 3], &[1, 2, 3]).unwrap(), x.det());
    assert_eq!(minor(&x, &[1], &[2]).unwrap(), int(3));
    assert_eq!(minor(&x, &[1, 2], &[1, 3]).unwrap(), int(3));
    assert!(minor(&x, &[1], &[1, 2]).is_err());
}

#[test]
fn two_strand_decompositions() {
    let id = Web::identity(2).unwrap();
    let e1 = Web::generator_e1(2, 1).unwrap();
    let cases: [([&[usize]; 3], [&[usize]; 3], usize, usize); 3] = [
        ([&[1], &[2], &[]], [&[1], &[2], &[]], 1, 1),
        ([&[1, 2], &[], &[]], [&[1, 2], &[], &[]], 1, 0),
        ([&[1], &[2], &[]], [&[2], &[1], &[]], 0, 1),
    ];
    for (rows, cols, c_id, c_e) in cases {
        let d = decompose_triple(&triple(2, rows, cols)).unwrap();
        let nz = d.nonzero();
        assert_eq!(nz.get(id.code()).copied().unwrap_or(0), c_id);
        assert_eq!(nz.get(e1.code()).copied().unwrap_or(0), c_e);
        assert!(d.verify(3, 1).unwrap());
    }
}

#[test]
fn every_triple_on_three_strands() {
    for (k, t) in all_triples(3).iter().enumerate() {
        let d = decompose_triple(t).unwrap();
        assert!(d.verify(5, k as u64).unwrap(), "{t}");
    }
}

#[test]
fn fifty_triples_on_four_strands() {
    let all = all_triples(4);
    let step = all.len() / 50;
    for (k, t) in all.iter().step_by(step.max(1)).take(50).enumerate() {
        let d = decompose_triple(t).unwrap();
        assert!(d.verify(5, 100 + k as u64).unwrap(), "{t}");
    }
}

#[test]
fn figure_triple_support() {
    // Δ_{{1,4},{1,3}} · x22 · x34: the webs with nonzero coefficient are
    // exactly those admitting a labeling with this boundary
    let t = triple(4, [&[1, 4], &[2], &[3]], [&[1, 3], &[2], &[4]]);
    let d = decompose_triple(&t).unwrap();
    assert!(!d.nonzero().is_empty());
    assert!(d.verify(5, 9).unwrap());
}

#[test]
fn ranks() {
    for (n, r) in [(2, 2), (3, 6), (4, 23)] {
        let rep = rank_check(n).unwrap();
        assert_eq!(rep.rank, r, "n = {n}");
        assert!(rep.passed());
    }
}

#[test]
fn multiplicity_above_one_by_four_strands() {
    let rep = rank_check(4).unwrap();
    assert!(rep.max_coefficient > 1, "largest coefficient {}", rep.max_coefficient);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn swapping_roles_keeps_both_sides(idx in 0usize..10_000, a in 0usize..3, b in 0usize..3) {
        let all = all_triples(3);
        let t = &all[idx % all.len()];
        let s = t.swapped(a, b);
        let (dt, ds) = (decompose_triple(t).unwrap(), decompose_triple(&s).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(idx as u64);
        let x = ExactMatrix::random_small(3, &mut rng);
        prop_assert_eq!(triple_product(t, &x).unwrap(), triple_product(&s, &x).unwrap());
        prop_assert_eq!(dt.evaluate(&x).unwrap(), ds.evaluate(&x).unwrap());
        prop_assert_eq!(&dt.coeffs, &ds.coeffs);
    }
}
