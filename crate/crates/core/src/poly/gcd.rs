//! Exact division and gcd over `Q[i][vars]`.
//!
//! The gcd recurses on the first occurring variable: contents are taken
//! recursively, and primitive parts run through a primitive pseudo-remainder
//! sequence, which keeps coefficient growth in check.

use num_traits::{One, Zero};

use super::multi::MultiPoly;
use super::PolyError;
use crate::numeric::GaussianRational;

/// `a / b` when `b` divides `a` exactly, `None` otherwise.
pub fn exact_div(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let (a, b) = MultiPoly::unify(a, b);
    let (lm, lc) = {
        let (m, c) = b.leading_term()?;
        (m.clone(), c.clone())
    };
    let lc_inv = lc.inv()?;
    if let Some(c) = b.constant_value() {
        return Some(a.scale(&c.inv()?));
    }
    let mut rem = a;
    let mut quot = rem.empty_like();
    while let Some((m, c)) = rem.leading_term() {
        if !lm.divides(m) {
            return None;
        }
        let qm = MultiPoly::divide_monomial(m, &lm);
        let qc = c * &lc_inv;
        rem.sub_scaled_shifted(&b, &qm, &qc);
        quot.add_term(qm, &qc);
    }
    Some(quot)
}

/// Scales so the graded-lex leading coefficient is 1.
pub fn normalize(p: &MultiPoly) -> MultiPoly {
    match p.leading_term() {
        Some((_, c)) if !c.is_one() => p.scale(&c.inv().unwrap()),
        _ => p.clone(),
    }
}

fn main_var(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars()).find(|&i| a.degree_at(i) > 0 || b.degree_at(i) > 0)
}

/// Content with respect to the variable at `idx`: gcd of the coefficients.
fn content_at(p: &MultiPoly, idx: usize) -> MultiPoly {
    let mut g = p.empty_like();
    for c in p.coefficients_at(idx) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn primitive_part_at(p: &MultiPoly, idx: usize) -> MultiPoly {
    let c = content_at(p, idx);
    if c.is_zero() {
        return p.clone();
    }
    exact_div(p, &c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to the variable at `idx`.
fn prem_at(a: &MultiPoly, b: &MultiPoly, idx: usize) -> MultiPoly {
    let db = b.degree_at(idx);
    let lcb = b.leading_coefficient_at(idx);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_at(idx) >= db {
        let dr = r.degree_at(idx);
        let lcr = r.leading_coefficient_at(idx);
        let mut shift = crate::poly::multi::Monomial::one(a.nvars());
        shift.0[idx] = dr - db;
        let mut t = &r * &lcb;
        let sub = (&lcr * b).mul_term(&shift, &GaussianRational::one());
        t = &t - &sub;
        r = t;
    }
    r
}

/// Greatest common divisor, normalized to leading coefficient 1
/// (`gcd(0, 0) = 0`).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (a, b) = MultiPoly::unify(a, b);
    if a.is_zero() {
        return normalize(&b);
    }
    if b.is_zero() {
        return normalize(&a);
    }
    let idx = match main_var(&a, &b) {
        None => return a.constant_like(GaussianRational::one()),
        Some(i) => i,
    };
    if a.degree_at(idx) == 0 {
        return gcd(&a, &content_at(&b, idx));
    }
    if b.degree_at(idx) == 0 {
        return gcd(&content_at(&a, idx), &b);
    }
    let ca = content_at(&a, idx);
    let cb = content_at(&b, idx);
    let g_content = gcd(&ca, &cb);
    let (mut x, mut y) = (
        exact_div(&a, &ca).expect("content divides"),
        exact_div(&b, &cb).expect("content divides"),
    );
    if x.degree_at(idx) < y.degree_at(idx) {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = prem_at(&x, &y, idx);
        if r.is_zero() {
            break;
        }
        if r.degree_at(idx) == 0 {
            return normalize(&g_content);
        }
        x = y;
        y = primitive_part_at(&r, idx);
    }
    normalize(&(&g_content * &primitive_part_at(&y, idx)))
}

/// `p / gcd(p, dp/dvar)`: same roots in `var`, each simple. When the
/// leading coefficient in `var` is a constant, the result is made monic.
pub fn squarefree_part(p: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let idx = p.var_index(var)?;
    let g = gcd(p, &p.derivative_at(idx));
    let q = exact_div(p, &g).expect("gcd divides");
    let lc = q.leading_coefficient_at(idx);
    Ok(match lc.constant_value() {
        Some(c) if !c.is_zero() => q.scale(&c.inv().unwrap()),
        _ => q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::text::poly;

    #[test]
    fn exact_division() {
        let a = poly("x^2 - y^2", &["x", "y"]);
        let b = poly("x - y", &["x", "y"]);
        assert_eq!(exact_div(&a, &b).unwrap(), poly("x + y", &["x", "y"]));
        assert!(exact_div(&b, &a).is_none());
        assert!(exact_div(&poly("x^2 + 1", &["x"]), &poly("x - 1", &["x"])).is_none());
        assert_eq!(
            exact_div(&a, &poly("2", &["x", "y"])).unwrap(),
            poly("1/2*x^2 - 1/2*y^2", &["x", "y"])
        );
    }

    #[test]
    fn gcd_univariate_and_bivariate() {
        let v = ["x", "y"];
        let g = gcd(&poly("x^2 - 1", &v), &poly("x^2 + 2*x + 1", &v));
        assert_eq!(g, poly("x + 1", &v));
        let f1 = &(&poly("x - y", &v) * &poly("x + 2*y", &v)) * &poly("y + 1", &v);
        let f2 = &(&poly("x - y", &v) * &poly("x - 3", &v)) * &poly("y + 1", &v);
        assert_eq!(
            gcd(&f1, &f2),
            normalize(&(&poly("x - y", &v) * &poly("y + 1", &v)))
        );
        assert_eq!(gcd(&poly("x + 1", &v), &poly("y", &v)), poly("1", &v));
    }

    #[test]
    fn gaussian_gcd() {
        let v = ["x"];
        let f = &poly("x - I", &v) * &poly("x + 2", &v);
        let g = &poly("x - I", &v) * &poly("x - 2", &v);
        assert_eq!(gcd(&f, &g), poly("x - I", &v));
    }

    #[test]
    fn squarefree_examples() {
        let v = ["X"];
        let p = &poly("X - 1", &v).pow(2) * &poly("X + 1", &v);
        assert_eq!(squarefree_part(&p, "X").unwrap(), poly("X^2 - 1", &v));
        assert_eq!(
            squarefree_part(&poly("X^2 + 1", &v), "X").unwrap(),
            poly("X^2 + 1", &v)
        );
        assert_eq!(
            squarefree_part(&poly("X^3", &v), "X").unwrap(),
            poly("X", &v)
        );
        assert!(squarefree_part(&poly("0", &v), "X").is_err());
    }

    #[test]
    fn squarefree_output_coprime_to_derivative() {
        let v = ["X", "Y"];
        let p = &poly("X^2 - Y", &v).pow(3) * &poly("X + Y", &v);
        let s = squarefree_part(&p, "X").unwrap();
        assert_eq!(s, &poly("X^2 - Y", &v) * &poly("X + Y", &v));
        let g = gcd(&s, &s.derivative("X").unwrap());
        assert!(g.is_constant());
    }
}
