use num_traits::One;

use super::gcd::exact_div;
use super::matrix::PolyMatrix;
use super::multi::MultiPoly;
use super::PolyError;
use crate::numeric::GaussianRational;

/// Sylvester matrix of `p` and `q` in the variable at `idx`: `deg q` shifted
/// rows of `p`'s coefficients (highest power first) followed by `deg p`
/// shifted rows of `q`'s.
fn sylvester(p: &MultiPoly, q: &MultiPoly, idx: usize) -> PolyMatrix {
    let cp = p.coefficients_at(idx);
    let cq = q.coefficients_at(idx);
    let (m, n) = (cp.len() - 1, cq.len() - 1);
    let size = m + n;
    let zero = p.empty_like();
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in cp.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in cq.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    PolyMatrix::from_rows(rows).expect("Sylvester matrix is square")
}

/// Resultant of `p` and `q` with respect to `var`, as the Sylvester
/// determinant. With this row order `Res(X - a, X - b) = a - b`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (p, q) = MultiPoly::unify(p, q);
    let idx = p.var_index(var)?;
    let s = sylvester(&p, &q, idx);
    if s.size() == 0 {
        return Ok(p.constant_like(GaussianRational::one()));
    }
    Ok(s.det_bareiss())
}

/// `(-1)^(d(d-1)/2) Res(P, dP/dvar) / lc(P)` with `d = deg_var P`.
pub fn discriminant(p: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let idx = p.var_index(var)?;
    let d = p.degree_at(idx) as u64;
    if d == 0 {
        return Err(PolyError::DegreeZero(var.to_string()));
    }
    let r = resultant(p, &p.derivative_at(idx), var)?;
    let lc = p.leading_coefficient_at(idx);
    let q = exact_div(&r, &lc).expect("leading coefficient divides Res(P, P')");
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

/// Whether `p` vanishes identically after discriminant in `var`, i.e. has a
/// repeated factor involving `var`.
pub fn has_repeated_roots(p: &MultiPoly, var: &str) -> Result<bool, PolyError> {
    Ok(discriminant(p, var)?.is_zero())
}
