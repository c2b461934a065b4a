use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, int, parse_rational, rat, Rational};
use crate::error::{domain, Result};

/// Dense square matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return domain("matrix must be square");
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    /// Entries `p/q` with `|p| <= 9`, `1 <= q <= 4`.
    pub fn random_small<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n.max(1)).map(|c| c.to_vec()).take(self.n).collect()
    }

    /// Submatrix on the given (0-based) rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.len() != cols.len() {
            return domain("submatrix needs as many rows as columns");
        }
        if rows.iter().chain(cols).any(|&k| k >= self.n) {
            return domain("submatrix index out of range");
        }
        Ok(Self {
            n: rows.len(),
            entries: rows
                .iter()
                .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
                .map(|(r, c)| self.get(r, c).clone())
                .collect(),
        })
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                let f = &a[r * n + col] / &p;
                if f.is_zero() {
                    continue;
                }
                for k in col..n {
                    let v = &a[col * n + k] * &f;
                    a[r * n + k] -= v;
                }
            }
        }
        det
    }

    /// Minor with 0-based row set `rows` and column set `cols` (sorted
    /// ascending by the caller's convention); the empty minor is 1.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Rational> {
        if rows.is_empty() && cols.is_empty() {
            return Ok(Rational::one());
        }
        let mut r = rows.to_vec();
        let mut c = cols.to_vec();
        r.sort_unstable();
        c.sort_unstable();
        Ok(self.submatrix(&r, &c)?.det())
    }

    /// Rank of an arbitrary list of equal-length rows, by exact elimination.
    pub fn rank_of_rows(rows: &[Vec<Rational>]) -> usize {
        let mut a: Vec<Vec<Rational>> = rows.to_vec();
        let cols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][c].clone();
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &pivot;
                    for k in c..cols {
                        let d = &f * &a[rank][k];
                        a[r][k] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return domain("matrix size mismatch");
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for k in 0..n {
                    s += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, s);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        write!(f, "ExactMatrix{rows:?}")
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, v) in row.iter().enumerate() {
                let text = match v {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                    other => {
                        return Err(serde::de::Error::custom(format!(
                            "entry ({i},{j}): expected integer or \"p/q\" string, got {other}"
                        )))
                    }
                };
                let x = parse_rational(&text)
                    .map_err(|e| serde::de::Error::custom(format!("entry ({i},{j}): {e}")))?;
                r.push(x);
            }
            out.push(r);
        }
        ExactMatrix::new(out).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn determinants() {
        let m = ExactMatrix::from_ints(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(m.det(), int(-2));
        let m = ExactMatrix::from_ints(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]).unwrap();
        assert_eq!(m.det(), int(-5));
        assert_eq!(ExactMatrix::identity(4).det(), int(1));
        assert_eq!(ExactMatrix::zeros(0).det(), int(1));
    }

    #[test]
    fn minors() {
        let m = ExactMatrix::from_ints(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap();
        assert_eq!(m.minor(&[], &[]).unwrap(), int(1));
        assert_eq!(m.minor(&[0, 1, 2], &[0, 1, 2]).unwrap(), m.det());
        assert_eq!(m.minor(&[0], &[1]).unwrap(), int(2));
        assert_eq!(m.minor(&[2, 0], &[0, 2]).unwrap(), int(1 * 10 - 3 * 7));
        assert!(m.minor(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn det_multiplicative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let a = ExactMatrix::random_small(3, &mut rng);
            let b = ExactMatrix::random_small(3, &mut rng);
            assert_eq!(a.mul(&b).unwrap().det(), a.det() * b.det());
        }
    }

    #[test]
    fn json_round_trip() {
        let m = ExactMatrix::new(vec![vec![rat(1, 2), int(3)], vec![int(-1), rat(7, 3)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","3"],["-1","7/3"]]"#);
        let back: ExactMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ExactMatrix>(r#"[["1","2"]]"#).is_err());
    }
}
