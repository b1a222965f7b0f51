use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Presentation;

/// Nonzero elementary divisors `d_1 | d_2 | ...` of an integer matrix,
/// all positive.
pub fn smith_normal_form(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry of the remaining block as pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..n {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..n {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..m {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // Pivot must divide the rest of the block; otherwise fold the
        // offending row in and go again.
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = bad {
            for j in t..n {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Finitely generated abelian group `Z^free_rank + sum Z/torsion_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl Abelianization {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{}", d)).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{}", r)),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith normal form of the exponent-sum matrix of the relators.
pub fn abelianization(p: &Presentation) -> Abelianization {
    let n = p.num_gens();
    let rows: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
        .collect();
    let d = smith_normal_form(&rows);
    Abelianization {
        free_rank: n - d.len(),
        torsion: d.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FreeWord;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(smith_normal_form(&mat(&[&[3, 0], &[0, 5]])), ints(&[1, 15]));
        assert_eq!(smith_normal_form(&mat(&[&[2, 4], &[6, 8]])), ints(&[2, 4]));
        assert!(smith_normal_form(&mat(&[&[0, 0], &[0, 0]])).is_empty());
        assert!(smith_normal_form(&[]).is_empty());
    }

    #[test]
    fn abelianizations() {
        let a = abelianization(&Presentation::new(
            vec!["a".into()],
            [FreeWord::new([1, 1])],
        ));
        assert_eq!(a.to_string(), "Z/2");
        let f = abelianization(&Presentation::free(vec!["a".into(), "b".into()]));
        assert_eq!(f.to_string(), "Z^2");
        let t = abelianization(&Presentation::new(
            vec!["a".into(), "b".into()],
            [FreeWord::new([1, 2, 1, -2, -1, -2])],
        ));
        assert!(t.is_infinite_cyclic());
    }

    // Determinantal divisors: gcd of all k-minors equals d_1 ... d_k.
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::one();
        }
        let mut s = BigInt::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                s += term;
            } else {
                s -= term;
            }
        }
        s
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn divisibility_and_minors(
            m in 1usize..4,
            n in 1usize..4,
            seed in proptest::collection::vec(-6i64..=6, 9),
        ) {
            let a: Vec<Vec<BigInt>> = (0..m).map(|i| (0..n).map(|j| BigInt::from(seed[i * 3 + j])).collect()).collect();
            let d = smith_normal_form(&a);
            for w in d.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            for k in 1..=m.min(n) {
                let mut g = BigInt::zero();
                for rs in subsets(m, k) {
                    for cs in subsets(n, k) {
                        let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect()).collect();
                        g = g.gcd(&det(&sub));
                    }
                }
                let prod: BigInt = if k <= d.len() { d[..k].iter().product() } else { BigInt::zero() };
                prop_assert_eq!(g, prod);
            }
        }
    }
}
