//! Permutations of `{0, .., n-1}` and their reduced words.
//!
//! A word `(i_1, .., i_k)` of simple transpositions is read as a wiring
//! diagram from left to right: the crossing `s_{i_1}` is applied first. The
//! permutation it represents sends the strand entering at position `m` to the
//! position where it leaves, so `w(m) = s_{i_k}(..(s_{i_1}(m)))`. Generator
//! indices are 1-based, positions 0-based.

use std::fmt;

use crate::error::{domain, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return domain(format!("{images:?} is not a permutation"));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Parses one-line notation with 1-based values, e.g. `"231"` or `"2,3,1"`.
    pub fn parse_one_line(s: &str) -> Result<Self> {
        let vals: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| crate::error::Error::Domain(format!("bad permutation {s:?}")))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| crate::error::Error::Domain(format!("bad permutation {s:?}")))?
        };
        if vals.contains(&0) {
            return domain("permutation values are 1-based");
        }
        Self::from_images(vals.into_iter().map(|v| v - 1).collect())
    }

    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut pos: Vec<usize> = (0..n).collect();
        for &i in word {
            if i == 0 || i >= n {
                return domain(format!("generator s_{i} out of range for n = {n}"));
            }
            for p in pos.iter_mut() {
                if *p == i - 1 {
                    *p = i;
                } else if *p == i {
                    *p = i - 1;
                }
            }
        }
        Ok(Perm(pos))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, m: usize) -> usize {
        self.0[m]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (m, &w) in self.0.iter().enumerate() {
            inv[w] = m;
        }
        Perm(inv)
    }

    /// `self` followed by `other` in wiring order: `m -> other(self(m))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    /// Number of inversions, the Coxeter length.
    pub fn length(&self) -> usize {
        let w = &self.0;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Some reduced word, found by bubble sorting the strands into place.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.n();
        // arrangement[p] = strand at position p
        let mut arrangement: Vec<usize> = (0..n).collect();
        let mut word = Vec::with_capacity(self.length());
        loop {
            let swap = (0..n.saturating_sub(1))
                .find(|&p| self.0[arrangement[p]] > self.0[arrangement[p + 1]]);
            match swap {
                Some(p) => {
                    arrangement.swap(p, p + 1);
                    word.push(p + 1);
                }
                None => break,
            }
        }
        word
    }

    /// Every reduced word of `self`.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        fn go(target: &[usize], arr: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let mut any = false;
            for p in 0..arr.len().saturating_sub(1) {
                if target[arr[p]] > target[arr[p + 1]] {
                    any = true;
                    arr.swap(p, p + 1);
                    prefix.push(p + 1);
                    go(target, arr, prefix, out);
                    prefix.pop();
                    arr.swap(p, p + 1);
                }
            }
            if !any {
                out.push(prefix.clone());
            }
        }
        let mut out = Vec::new();
        let mut arr: Vec<usize> = (0..self.n()).collect();
        go(&self.0, &mut arr, &mut Vec::new(), &mut out);
        out
    }

    /// True when `word` is a reduced word for some permutation.
    pub fn is_reduced_word(n: usize, word: &[usize]) -> Result<bool> {
        Ok(Self::from_word(n, word)?.length() == word.len())
    }

    /// Classical pattern containment, brute force over index subsets.
    pub fn contains_pattern(&self, pattern: &[usize]) -> bool {
        fn go(w: &[usize], pattern: &[usize], from: usize, chosen: &mut Vec<usize>) -> bool {
            let k = chosen.len();
            if k == pattern.len() {
                return true;
            }
            for i in from..w.len() {
                let fits = chosen
                    .iter()
                    .enumerate()
                    .all(|(a, &ia)| (pattern[a] < pattern[k]) == (w[ia] < w[i]));
                if fits {
                    chosen.push(i);
                    if go(w, pattern, i + 1, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        go(&self.0, pattern, 0, &mut Vec::new())
    }

    pub fn avoids(&self, pattern: &[usize]) -> bool {
        !self.contains_pattern(pattern)
    }

    /// Permutation as one-line 1-based string.
    pub fn one_line(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        if self.n() < 10 {
            parts.concat()
        } else {
            parts.join(",")
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({})", self.one_line())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

/// All permutations of `n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Elements of the parabolic subgroup generated by `s_i, .., s_{j-1}`
/// (1-based `i < j`): permutations moving only positions `i-1..=j-1`.
pub fn parabolic_subgroup(n: usize, i: usize, j: usize) -> Result<Vec<Perm>> {
    if i < 1 || i >= j || j > n {
        return domain(format!("parabolic range [{i},{j}] invalid for n = {n}"));
    }
    let block = j - i + 1;
    Ok(all_perms(block)
        .into_iter()
        .map(|p| {
            let mut img: Vec<usize> = (0..n).collect();
            for (a, &b) in p.images().iter().enumerate() {
                img[i - 1 + a] = i - 1 + b;
            }
            Perm(img)
        })
        .collect())
}
