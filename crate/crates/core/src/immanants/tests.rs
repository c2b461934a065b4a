use super::*;
use crate::exactmath::{int, rat};
use crate::labelings::{enumerate_labelings, BoundaryLabeling};
use crate::spider::second_generator;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Permutations of `S_n` containing no decreasing subsequence of length 4,
/// by brute force over index quadruples.
fn count_4321_avoiders(n: usize) -> usize {
    all_perms(n)
        .iter()
        .filter(|p| {
            let w = p.images();
            !(0..n).any(|a| {
                (a + 1..n).any(|b| {
                    w[a] > w[b]
                        && (b + 1..n).any(|c| w[b] > w[c] && (c + 1..n).any(|d| w[c] > w[d]))
                })
            })
        })
        .count()
}

/// Semistandard tableaux of shape `3^n` with content `2^n 1^n`.
fn kostka_3n(n: usize) -> usize {
    let mut left: Vec<usize> = (0..2 * n).map(|v| if v < n { 2 } else { 1 }).collect();
    let mut grid = vec![[0usize; 3]; n];
    fn fill(cell: usize, n: usize, grid: &mut Vec<[usize; 3]>, left: &mut Vec<usize>) -> usize {
        if cell == 3 * n {
            return 1;
        }
        let (r, c) = (cell / 3, cell % 3);
        let mut total = 0;
        for v in 0..left.len() {
            if left[v] == 0 {
                continue;
            }
            if c > 0 && grid[r][c - 1] > v {
                continue;
            }
            if r > 0 && grid[r - 1][c] >= v {
                continue;
            }
            left[v] -= 1;
            grid[r][c] = v;
            total += fill(cell + 1, n, grid, left);
            left[v] += 1;
        }
        total
    }
    fill(0, n, &mut grid, &mut left)
}

#[test]
fn oracles_agree_with_published_counts() {
    let want = [1, 2, 6, 23, 103];
    for n in 1..=5 {
        assert_eq!(count_4321_avoiders(n), want[n - 1]);
        assert_eq!(kostka_3n(n), want[n - 1]);
    }
}

#[test]
fn web_counts_up_to_four() {
    for n in 1..=4 {
        assert_eq!(immanant_table(n).unwrap().web_count(), count_4321_avoiders(n), "n = {n}");
    }
}

#[test]
fn web_count_five() {
    assert_eq!(immanant_table(5).unwrap().web_count(), kostka_3n(5));
}

#[test]
fn two_strand_table() {
    let t = immanant_table(2).unwrap();
    let id = Web::identity(2).unwrap();
    let e1 = Web::generator_e1(2, 1).unwrap();
    let e = Perm::identity(2);
    let s = Perm::from_word(2, &[1]).unwrap();
    assert_eq!(t.coefficient(id.code(), &e), Some(1));
    assert_eq!(t.coefficient(id.code(), &s), Some(-1));
    assert_eq!(t.coefficient(e1.code(), &e), Some(0));
    assert_eq!(t.coefficient(e1.code(), &s), Some(1));

    let x = ExactMatrix::from_ints(&[vec![2, 3], vec![5, 7]]).unwrap();
    assert_eq!(evaluate_immanant(id.code(), &x).unwrap(), x.det());
    assert_eq!(evaluate_immanant(e1.code(), &x).unwrap(), int(15));
}

#[test]
fn one_strand() {
    let t = immanant_table(1).unwrap();
    assert_eq!(t.web_count(), 1);
    let x = ExactMatrix::new(vec![vec![rat(3, 4)]]).unwrap();
    assert_eq!(t.evaluate(0, &x).unwrap(), rat(3, 4));
}

#[test]
fn size_mismatch_is_an_error() {
    let t = immanant_table(2).unwrap();
    assert!(t.evaluate(0, &ExactMatrix::identity(3)).is_err());
}

#[test]
fn identity_row_is_sign() {
    for n in 1..=4 {
        let t = immanant_table(n).unwrap();
        let id = Web::identity(n).unwrap();
        let d = t.index_of(id.code()).unwrap();
        assert_eq!(d, 0);
        for (k, w) in t.perms.iter().enumerate() {
            assert_eq!(t.coeffs[d][k], w.sign() as i64);
        }
    }
}

#[test]
fn table_round_trips_theta_on_three_strands() {
    let t = immanant_table(3).unwrap();
    for w in all_perms(3) {
        let direct = crate::spider::theta3_perm(&w).unwrap().at_q1();
        assert!(direct.same_terms(&t.theta(&w).unwrap()), "{}", w.one_line());
    }
}

#[test]
fn identity_matrix_values() {
    for n in 1..=4 {
        let t = immanant_table(n).unwrap();
        let v = t.evaluate_all(&ExactMatrix::identity(n)).unwrap();
        assert_eq!(v[0], int(1));
        assert!(v[1..].iter().all(|x| x.is_zero()));
    }
}

#[test]
fn parabolic_images() {
    for (n, i) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
        let e = WebCombo::from_web(&Web::generator_e1(n, i).unwrap());
        assert!(parabolic_image(n, i, i + 1).unwrap().same_terms(&e));
    }
    for (n, i) in [(3, 1), (4, 1), (4, 2)] {
        let d = WebCombo::from_web(&second_generator(n, i).unwrap());
        assert!(parabolic_image(n, i, i + 2).unwrap().same_terms(&d));
    }
    assert!(parabolic_image(4, 1, 4).unwrap().is_zero());
    assert!(parabolic_image(5, 2, 5).unwrap().is_zero());
}

fn all_one(n: usize) -> BoundaryLabeling {
    BoundaryLabeling::new(vec![1; n], vec![1; n]).unwrap()
}

#[test]
fn determinant_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=4 {
        let t = immanant_table(n).unwrap();
        let weights: Vec<Rational> = t
            .webs
            .iter()
            .map(|w| int(enumerate_labelings(&w.map, Some(&all_one(n))).unwrap().len() as i64))
            .collect();
        for _ in 0..3 {
            let x = ExactMatrix::random_small(n, &mut rng);
            let lhs: Rational = t
                .evaluate_all(&x)
                .unwrap()
                .iter()
                .zip(&weights)
                .map(|(a, b)| a * b)
                .sum();
            assert_eq!(lhs, x.det(), "n = {n}");
        }
    }
}

#[test]
fn non_tnn_matrix_may_go_negative() {
    // The antidiagonal permutation matrix is not totally nonnegative; this
    // only records the values, nothing is claimed about their signs.
    let t = immanant_table(4).unwrap();
    let mut x = ExactMatrix::zeros(4);
    for i in 0..4 {
        x.set(i, 3 - i, int(1));
    }
    let v = t.evaluate_all(&x).unwrap();
    assert_eq!(v.len(), 23);
}

#[test]
fn tnn_sampling_three_strands() {
    let r = tnn_check(3, 100, 11).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
}

#[test]
fn table_json_lists_every_web() {
    let j = immanant_table(3).unwrap().to_json();
    assert_eq!(j["webs"].as_array().unwrap().len(), 6);
}

fn random_reduced_word(w: &Perm, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ w.images().iter().fold(0u64, |a, &x| a * 31 + x as u64));
    let words = w.all_reduced_words();
    words.choose(&mut rng).cloned().unwrap_or_default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn reduced_word_independence(seed in any::<u64>()) {
        let n = 4;
        let other = ImmanantTable::build_with_words(n, &|w: &Perm| random_reduced_word(w, seed)).unwrap();
        let base = immanant_table(n).unwrap();
        prop_assert_eq!(other.web_count(), base.web_count());
        for (d, web) in base.webs.iter().enumerate() {
            let e = other.index_of(&web.code).unwrap();
            prop_assert_eq!(&other.coeffs[e], &base.coeffs[d]);
        }
    }
}
