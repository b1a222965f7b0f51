use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::PolyError;
use crate::numeric::{GaussianRational, Rational};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over `Q[i]` in an ordered list of named variables.
///
/// Zero coefficients are never stored. Binary operations between
/// polynomials over different variable lists first merge the lists
/// (left operand's variables first).
#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

pub(crate) fn var_list<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names
        .iter()
        .map(|s| s.as_ref().to_string())
        .collect::<Vec<_>>()
        .into()
}

impl MultiPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        MultiPoly {
            vars: var_list(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: GaussianRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        let idx = p.var_index(name)?;
        let mut m = Monomial::one(p.vars.len());
        m.0[idx] = 1;
        p.terms.insert(m, GaussianRational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, GaussianRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length mismatch");
            p.add_term(Monomial(e), &c);
        }
        p
    }

    pub(crate) fn empty_like(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn constant_like(&self, c: GaussianRational) -> Self {
        let mut p = self.empty_like();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(self.vars.len()), c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn vars_arc(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if !self.is_constant() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    pub fn coefficient(&self, exps: &[u32]) -> GaussianRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Leading term in graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree in the variable at `idx`; zero for the zero polynomial.
    pub fn degree_at(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> Result<u32, PolyError> {
        Ok(self.degree_at(self.var_index(var)?))
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.nvars())
            .filter(|&i| self.degree_at(i) > 0)
            .map(|i| self.vars[i].clone())
            .collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return self.empty_like();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&GaussianRational::from_rational(q.clone()))
    }

    /// `self * c * m` for a single term.
    pub(crate) fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.constant_like(GaussianRational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses `self` over `vars`, which must contain every variable
    /// that occurs in `self`.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self, PolyError> {
        self.with_var_arc(var_list(vars))
    }

    pub(crate) fn with_var_arc(&self, vars: Arc<[String]>) -> Result<Self, PolyError> {
        if Arc::ptr_eq(&vars, &self.vars) || *vars == *self.vars {
            return Ok(MultiPoly {
                vars,
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if self.degree_at(i) == 0 => map.push(None),
                None => return Err(PolyError::UnknownVariable(v.clone())),
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] = x;
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(MultiPoly { vars, terms })
    }

    /// Drops variables that do not occur.
    pub fn trim_vars(&self) -> Self {
        let used = self.used_vars();
        self.with_vars(&used)
            .expect("used variables are a valid list")
    }

    /// Brings two polynomials onto a common variable list.
    pub fn unify(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars {
            return (a.clone(), b.with_var_arc(a.vars.clone()).unwrap());
        }
        let mut vars: Vec<String> = a.vars.to_vec();
        for v in b.vars.iter() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        let vars: Arc<[String]> = vars.into();
        (
            a.with_var_arc(vars.clone()).unwrap(),
            b.with_var_arc(vars).unwrap(),
        )
    }

    pub fn derivative(&self, var: &str) -> Result<Self, PolyError> {
        let idx = self.var_index(var)?;
        Ok(self.derivative_at(idx))
    }

    pub(crate) fn derivative_at(&self, idx: usize) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[idx] -= 1;
            out.add_term(nm, &c.scale(&Rational::from_integer(e.into())));
        }
        out
    }

    /// Coefficients with respect to the variable at `idx`: entry `k` is the
    /// coefficient of `var^k`, expressed over the same variable list.
    pub(crate) fn coefficients_at(&self, idx: usize) -> Vec<MultiPoly> {
        let d = self.degree_at(idx) as usize;
        let mut out = vec![self.empty_like(); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[idx] as usize;
            let mut nm = m.clone();
            nm.0[idx] = 0;
            out[k].terms.insert(nm, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn coefficients_in(&self, var: &str) -> Result<Vec<MultiPoly>, PolyError> {
        Ok(self.coefficients_at(self.var_index(var)?))
    }

    /// Leading coefficient with respect to the variable at `idx`.
    pub(crate) fn leading_coefficient_at(&self, idx: usize) -> MultiPoly {
        self.coefficients_at(idx)
            .pop()
            .unwrap_or_else(|| self.empty_like())
    }

    pub fn leading_coefficient_in(&self, var: &str) -> Result<MultiPoly, PolyError> {
        Ok(self.leading_coefficient_at(self.var_index(var)?))
    }

    /// Simultaneous substitution `var -> target` for every binding.
    ///
    /// The result lives over the unbound variables of `self` followed by any
    /// new variables introduced by the targets.
    pub fn substitute(&self, bindings: &[(&str, MultiPoly)]) -> Result<Self, PolyError> {
        let mut bound: Vec<Option<usize>> = vec![None; self.nvars()];
        for (bi, (name, _)) in bindings.iter().enumerate() {
            let idx = self.var_index(name)?;
            bound[idx] = Some(bi);
        }
        let mut out_vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| bound[*i].is_none())
            .map(|(_, v)| v.clone())
            .collect();
        for (_, t) in bindings {
            for v in t.used_vars() {
                if !out_vars.contains(&v) {
                    out_vars.push(v);
                }
            }
        }
        let out_vars: Arc<[String]> = out_vars.into();
        let targets: Vec<MultiPoly> = bindings
            .iter()
            .map(|(_, t)| t.with_var_arc(out_vars.clone()))
            .collect::<Result<_, _>>()?;
        let free_pos: Vec<Option<usize>> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if bound[i].is_some() {
                    None
                } else {
                    out_vars.iter().position(|w| w == v)
                }
            })
            .collect();

        let mut powers: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly {
            vars: out_vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut mono = Monomial::one(out_vars.len());
            let mut factor: Option<MultiPoly> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match bound[i] {
                    None => mono.0[free_pos[i].unwrap()] += e,
                    Some(bi) => {
                        let pw = powers
                            .entry((bi, e))
                            .or_insert_with(|| targets[bi].pow(e))
                            .clone();
                        factor = Some(match factor {
                            None => pw,
                            Some(f) => &f * &pw,
                        });
                    }
                }
            }
            match factor {
                None => out.add_term(mono, c),
                Some(f) => {
                    for (fm, fc) in f.terms.iter() {
                        out.add_term(fm.mul(&mono), &(fc * c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Evaluates at a full point (one value per variable, in order).
    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u64) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous part of highest total degree.
    pub fn top_homogeneous_part(&self) -> Self {
        match self.total_degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    /// The common weighted degree of all monomials, or `None` when the
    /// polynomial is zero or not quasi-homogeneous for these weights.
    pub fn weighted_degree(&self, weights: &[u64]) -> Option<u64> {
        assert_eq!(weights.len(), self.nvars(), "one weight per variable");
        let mut degs = self.terms.keys().map(|m| {
            m.0.iter()
                .zip(weights)
                .map(|(&e, &w)| e as u64 * w)
                .sum::<u64>()
        });
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Weighted degree with weights given by variable name; unnamed
    /// variables must not occur.
    pub fn weighted_degree_named(&self, weights: &[(&str, u64)]) -> Result<Option<u64>, PolyError> {
        let mut w = vec![0; self.nvars()];
        for (i, v) in self.vars.iter().enumerate() {
            match weights.iter().find(|(n, _)| n == v) {
                Some((_, x)) => w[i] = *x,
                None if self.degree_at(i) == 0 => {}
                None => return Err(PolyError::UnknownVariable(v.clone())),
            }
        }
        Ok(self.weighted_degree(&w))
    }

    /// `self - lc * m * other` without intermediate allocation of the
    /// product.
    pub(crate) fn sub_scaled_shifted(
        &mut self,
        other: &MultiPoly,
        m: &Monomial,
        c: &GaussianRational,
    ) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), &-(oc * c));
        }
    }

    pub(crate) fn divide_monomial(m: &Monomial, by: &Monomial) -> Monomial {
        m.div(by)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = MultiPoly::unify(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl<'b> Add<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'b MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::unify(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, &c);
        }
        a
    }
}

impl<'b> Sub<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'b MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::unify(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, &-c);
        }
        a
    }
}

impl<'b> Mul<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'b MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::unify(self, rhs);
        let mut out = a.empty_like();
        if a.is_zero() || b.is_zero() {
            return out;
        }
        let mut acc: HashMap<Monomial, GaussianRational> = HashMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.vars.join(", "))
    }
}
