use num_traits::One;

use super::gcd::exact_div;
use super::multi::MultiPoly;
use super::PolyError;
use crate::numeric::GaussianRational;

/// Square matrix of polynomials over a shared variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: Vec<Vec<MultiPoly>>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self, PolyError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PolyError::NotSquare);
        }
        if n == 0 {
            return Ok(PolyMatrix { rows });
        }
        // bring every entry onto one variable list
        let mut acc = rows[0][0].clone();
        for e in rows.iter().flatten() {
            acc = MultiPoly::unify(&acc, e).0;
        }
        let vars = acc.vars_arc().clone();
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| e.with_var_arc(vars.clone()).unwrap())
                    .collect()
            })
            .collect();
        Ok(PolyMatrix { rows })
    }

    pub fn identity<S: AsRef<str>>(vars: &[S], n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            MultiPoly::constant(vars, GaussianRational::one())
                        } else {
                            MultiPoly::zero(vars)
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<MultiPoly>] {
        &self.rows
    }

    pub fn vars(&self) -> Option<&[String]> {
        self.rows.first().and_then(|r| r.first()).map(|e| e.vars())
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        PolyMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|e| e.scale(c)).collect())
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Result<Self, PolyError> {
        PolyMatrix::from_rows(
            self.rows
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination. Every division
    /// is exact.
    pub fn det_bareiss(&self) -> MultiPoly {
        let n = self.size();
        if n == 0 {
            return MultiPoly::constant::<&str>(&[], GaussianRational::one());
        }
        let mut a = self.rows.clone();
        let mut negate = false;
        let mut prev = a[0][0].constant_like(GaussianRational::one());
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return a[0][0].empty_like(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Matrix of second partials of `f` with respect to `vars`.
    pub fn hessian(f: &MultiPoly, vars: &[&str]) -> Result<Self, PolyError> {
        let firsts = vars
            .iter()
            .map(|v| f.derivative(v))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = firsts
            .iter()
            .map(|d| {
                vars.iter()
                    .map(|v| d.derivative(v))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PolyMatrix::from_rows(rows)
    }
}

/// `det(Hessian(f))` with respect to `vars`.
pub fn hessian_det(f: &MultiPoly, vars: &[&str]) -> Result<MultiPoly, PolyError> {
    Ok(PolyMatrix::hessian(f, vars)?.det_bareiss())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::text::poly;
    use proptest::prelude::*;

    /// Leibniz expansion over all permutations; the oracle for Bareiss.
    fn det_leibniz(m: &PolyMatrix) -> MultiPoly {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], false)];
            }
            let mut out = Vec::new();
            for (p, odd) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    // inserting at pos moves the new element past n-1-pos others
                    let flips = (n - 1 - pos) % 2 == 1;
                    out.push((q, odd ^ flips));
                }
            }
            out
        }
        let n = m.size();
        let mut acc = m.entry(0, 0).empty_like();
        for (p, odd) in perms(n) {
            let mut t = acc.constant_like(GaussianRational::one());
            for (i, &j) in p.iter().enumerate() {
                t = &t * m.entry(i, j);
            }
            acc = if odd { &acc - &t } else { &acc + &t };
        }
        acc
    }

    #[test]
    fn small_determinants() {
        let v = ["x"];
        assert_eq!(PolyMatrix::identity(&v, 3).det_bareiss(), poly("1", &v));
        let swap = PolyMatrix::from_rows(vec![
            vec![poly("0", &v), poly("1", &v)],
            vec![poly("1", &v), poly("0", &v)],
        ])
        .unwrap();
        assert_eq!(swap.det_bareiss(), poly("-1", &v));
        let singular = PolyMatrix::from_rows(vec![
            vec![poly("x", &v), poly("x^2", &v)],
            vec![poly("1", &v), poly("x", &v)],
        ])
        .unwrap();
        assert!(singular.det_bareiss().is_zero());
    }

    #[test]
    fn hessian_examples() {
        let v = ["x", "y"];
        assert_eq!(
            hessian_det(&poly("x^2 + y^2", &v), &v).unwrap(),
            poly("4", &v)
        );
        assert_eq!(hessian_det(&poly("x*y", &v), &v).unwrap(), poly("-1", &v));
    }

    #[test]
    fn non_square_rejected() {
        let v = ["x"];
        assert!(PolyMatrix::from_rows(vec![vec![poly("1", &v), poly("x", &v)]]).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = PolyMatrix> {
        (1usize..=4).prop_flat_map(|n| {
            let entry = (-3i64..=3, -3i64..=3, 0u32..=2, -1i64..=1);
            proptest::collection::vec(entry, n * n).prop_map(move |es| {
                let v = ["x", "y"];
                let rows = es
                    .chunks(n)
                    .map(|r| {
                        r.iter()
                            .map(|&(a, b, e, im)| {
                                MultiPoly::from_terms(
                                    &v,
                                    [
                                        (vec![0, 0], GaussianRational::from_ratios(a, 1, im, 1)),
                                        (vec![e, 1], GaussianRational::from_int(b)),
                                    ],
                                )
                            })
                            .collect()
                    })
                    .collect();
                PolyMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn bareiss_matches_leibniz(m in arb_matrix()) {
            prop_assert_eq!(m.det_bareiss(), det_leibniz(&m));
        }
    }
}
