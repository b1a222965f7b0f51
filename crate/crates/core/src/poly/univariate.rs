//! Dense univariate polynomials for the numeric hot paths.
//!
//! [`UniPoly`] has Gaussian-rational coefficients; [`RealPoly`] has rational
//! coefficients and carries the real-root tools (Sturm sequences, sign
//! variations). [`BivariatePoly`] stores a curve `P(X, Y)` as a dense
//! polynomial in the fiber variable `X` whose coefficients are dense in `Y`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::multi::MultiPoly;
use super::PolyError;
use crate::numeric::{sign_of, GaussianRational, Rational};

/// Dense polynomial over `Q[i]`, coefficients in increasing degree, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `X - a`
    pub fn linear_root(a: &GaussianRational) -> Self {
        UniPoly::new(vec![-a, GaussianRational::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        UniPoly::new(cs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    /// `prod (X - r)` over the given roots.
    pub fn from_roots(roots: &[GaussianRational]) -> Self {
        roots
            .iter()
            .fold(UniPoly::constant(GaussianRational::one()), |acc, r| {
                &acc * &UniPoly::linear_root(r)
            })
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// `(P(z), P'(z))` in one Horner pass.
    pub fn eval_with_derivative(
        &self,
        z: &GaussianRational,
    ) -> (GaussianRational, GaussianRational) {
        let mut p = GaussianRational::zero();
        let mut dp = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            dp = &(&dp * z) + &p;
            p = &(&p * z) + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `P(a + b t)` as a polynomial in `t`.
    pub fn compose_affine(&self, a: &GaussianRational, b: &GaussianRational) -> Self {
        let lin = UniPoly::new(vec![a.clone(), b.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Euclidean division over the field `Q[i]`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![GaussianRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    let t = &c * dj;
                    r[k + j] -= &t;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic gcd (`gcd(0, 0) = 0`).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Monic polynomial with the same roots, each simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Real and imaginary parts of the coefficients; when the variable is
    /// real these are the real and imaginary parts of the value.
    pub fn re_im_parts(&self) -> (RealPoly, RealPoly) {
        (
            RealPoly::new(self.coeffs.iter().map(|c| c.re.clone()).collect()),
            RealPoly::new(self.coeffs.iter().map(|c| c.im.clone()).collect()),
        )
    }

    pub fn to_multi(&self, var: &str) -> MultiPoly {
        MultiPoly::from_terms(
            &[var],
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32], c.clone())),
        )
    }

    /// Converts a polynomial in which only `var` occurs.
    pub fn from_multi(p: &MultiPoly, var: &str) -> Result<Self, PolyError> {
        let idx = match p.var_index(var) {
            Ok(i) => Some(i),
            Err(_) if p.is_constant() => None,
            Err(e) => return Err(e),
        };
        let mut coeffs =
            vec![GaussianRational::zero(); idx.map_or(0, |i| p.degree_at(i) as usize) + 1];
        for (m, c) in p.terms() {
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 && Some(j) != idx {
                    return Err(PolyError::NotUnivariate(var.to_string()));
                }
            }
            let k = idx.map_or(0, |i| m.0[i] as usize);
            coeffs[k] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }
}

impl<'b> Add<&'b UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'b UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = GaussianRational::zero();
        UniPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'b> Sub<&'b UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'b UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = GaussianRational::zero();
        UniPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) - rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'b> Mul<&'b UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'b UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j] += &t;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Dense polynomial over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RealPoly {
    coeffs: Vec<Rational>,
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        RealPoly::new(vec![c])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        RealPoly::new(
            cs.iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * t + c;
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        RealPoly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn derivative(&self) -> Self {
        RealPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn rem(&self, d: &RealPoly) -> RealPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = &r[k + dd] * &inv;
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        RealPoly::new(r)
    }

    /// `P(t0 * s / (1 + s)) * (1 + s)^deg`, whose coefficients all being
    /// positive certifies `P > 0` on `[0, t0]`.
    pub fn positivity_transform(&self, t0: &Rational) -> RealPoly {
        let d = match self.degree() {
            Some(d) => d,
            None => return RealPoly::default(),
        };
        // sum_k c_k t0^k s^k (1+s)^(d-k)
        let mut out = vec![Rational::zero(); d + 1];
        let binoms = binomial_rows(d);
        let mut t0k = Rational::one();
        for (k, c) in self.coeffs.iter().enumerate() {
            let ck = c * &t0k;
            if !ck.is_zero() {
                for (j, b) in binoms[d - k].iter().enumerate() {
                    out[k + j] += &ck * b;
                }
            }
            t0k *= t0;
        }
        RealPoly::new(out)
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<RealPoly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut prev = self.clone();
        let mut cur = self.derivative();
        while !cur.is_zero() {
            let r = prev.rem(&cur);
            seq.push(cur.clone());
            prev = cur;
            cur = RealPoly::new(r.coeffs.iter().map(|c| -c).collect());
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        let seq = self.sturm_sequence();
        let va = sign_variations(seq.iter().map(|p| sign_of(&p.eval(a))));
        let vb = sign_variations(seq.iter().map(|p| sign_of(&p.eval(b))));
        va.saturating_sub(vb)
    }

    /// Number of sign changes in the coefficient sequence.
    pub fn coefficient_sign_variations(&self) -> usize {
        sign_variations(self.coeffs.iter().map(sign_of))
    }

    pub fn all_coefficients_positive(&self) -> bool {
        !self.coeffs.is_empty() && self.coeffs.iter().all(|c| c.is_positive())
    }

    /// Sufficient test for `P > 0` on the closed interval `[0, t0]`: every
    /// coefficient of the transform is positive, the top one being `P(t0)`.
    pub fn positive_on(&self, t0: &Rational) -> bool {
        let t = self.positivity_transform(t0);
        t.coeffs.len() == self.coeffs.len() && t.all_coefficients_positive()
    }
}

/// Positive integer multiple of a [`RealPoly`], for fast sign tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Drops trailing zero coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Divided by the (positive) gcd of its coefficients.
    pub fn primitive(&self) -> Self {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn to_real(&self) -> RealPoly {
        RealPoly::new(
            self.coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// `p` times the least common multiple of its denominators.
    pub fn from_real(p: &RealPoly) -> Self {
        let l = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly {
            coeffs: p
                .coeffs
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect(),
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Same answer as [`RealPoly::positive_on`] at `t0 = 2^-k`, in integer
    /// arithmetic: the coefficients of `2^(kd) (1+s)^d P(2^-k s / (1+s))`
    /// are those of `rev(shift_1(rev(R)))` with `R(s) = 2^(kd) P(2^-k s)`.
    pub fn positive_on_dyadic(&self, k: u32) -> bool {
        let n = self.coeffs.len();
        if n == 0 || self.coeffs[n - 1].is_zero() {
            return false;
        }
        let d = n - 1;
        let mut r: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| c << (k as usize * (d - i)))
            .collect();
        // Taylor shift by 1 of the reversed polynomial
        for i in 0..d {
            for j in (i..d).rev() {
                let v = r[j + 1].clone();
                r[j] += v;
            }
        }
        r.iter().all(|c| c.is_positive())
    }
}

impl<'b> Add<&'b RealPoly> for &RealPoly {
    type Output = RealPoly;
    fn add(self, rhs: &'b RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        RealPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'b> Sub<&'b RealPoly> for &RealPoly {
    type Output = RealPoly;
    fn sub(self, rhs: &'b RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        RealPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) - rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'b> Mul<&'b RealPoly> for &RealPoly {
    type Output = RealPoly;
    fn mul(self, rhs: &'b RealPoly) -> RealPoly {
        if self.is_zero() || rhs.is_zero() {
            return RealPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::new(out)
    }
}

fn sign_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn binomial_rows(n: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for k in 1..=n {
        let prev = &rows[k - 1];
        let mut row = vec![Rational::one(); k + 1];
        for j in 1..k {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// A curve `P(X, Y) = sum_k c_k(Y) X^k`, dense in both variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    fiber: Vec<UniPoly>,
}

impl BivariatePoly {
    /// Splits `p` (which may only involve `fiber_var` and `base_var`) into
    /// coefficients of powers of the fiber variable.
    pub fn from_multi(p: &MultiPoly, fiber_var: &str, base_var: &str) -> Result<Self, PolyError> {
        let (fi, bi) = (p.var_index(fiber_var)?, p.var_index(base_var).ok());
        let d = p.degree_at(fi) as usize;
        let mut fiber: Vec<Vec<GaussianRational>> = vec![Vec::new(); d + 1];
        for (m, c) in p.terms() {
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 && j != fi && Some(j) != bi {
                    return Err(PolyError::UnknownVariable(p.vars()[j].clone()));
                }
            }
            let k = m.0[fi] as usize;
            let e = bi.map_or(0, |b| m.0[b] as usize);
            let row = &mut fiber[k];
            if row.len() <= e {
                row.resize(e + 1, GaussianRational::zero());
            }
            row[e] = c.clone();
        }
        Ok(BivariatePoly {
            fiber: fiber.into_iter().map(UniPoly::new).collect(),
        })
    }

    pub fn from_fiber_coeffs(fiber: Vec<UniPoly>) -> Self {
        let mut fiber = fiber;
        while fiber.last().is_some_and(|c| c.is_zero()) {
            fiber.pop();
        }
        BivariatePoly { fiber }
    }

    pub fn fiber_degree(&self) -> usize {
        self.fiber.len().saturating_sub(1)
    }

    pub fn fiber_coeffs(&self) -> &[UniPoly] {
        &self.fiber
    }

    /// Leading coefficient in the fiber variable (a polynomial in `Y`).
    pub fn leading_coefficient(&self) -> Option<&UniPoly> {
        self.fiber.last()
    }

    /// `P(X, y)` as a polynomial in `X`.
    pub fn at_base(&self, y: &GaussianRational) -> UniPoly {
        UniPoly::new(self.fiber.iter().map(|c| c.eval(y)).collect())
    }

    /// `P(x, Y)` as a polynomial in `Y`.
    pub fn at_fiber(&self, x: &GaussianRational) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.fiber.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    /// `dP/dX`.
    pub fn fiber_derivative(&self) -> Self {
        BivariatePoly::from_fiber_coeffs(
            self.fiber
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&GaussianRational::from_int(k as i64)))
                .collect(),
        )
    }
}
