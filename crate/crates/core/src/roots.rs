//! Certified isolation of the roots of a squarefree polynomial over `Q[i]`.
//!
//! Everything is exact. Iterates are snapped to decimal grids so their
//! size stays proportional to the precision actually needed, and a set of
//! points is accepted only once the separation certificate holds:
//!
//! ```text
//! n^2 |P(x_i)|^2 < eps_i^2 |P'(x_i)|^2,   eps_i = min_{j != i} |x_i - x_j| / 2
//! ```
//!
//! Each closed disk `D(x_i, n |P(x_i) / P'(x_i)|)` contains a root, and the
//! disks `D(x_i, eps_i)` are disjoint, so each of them holds exactly one.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numeric::{floor_log10, gauss_norm, rat, truncate_decimal, GaussianRational, Rational};
use crate::poly::UniPoly;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("derivative vanishes at {0}")]
    CriticalPoint(GaussianRational),
    #[error("polynomial has degree < 1")]
    DegreeZero,
    #[error("root isolation did not converge within {steps} steps")]
    BudgetExhausted {
        steps: usize,
        best: Vec<GaussianRational>,
    },
}

/// Points certified to isolate the roots of `poly`, one per disk
/// `D(x_i, eps_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedConfiguration {
    poly: UniPoly,
    points: Vec<GaussianRational>,
    eps_sq: Vec<Rational>,
}

impl CertifiedConfiguration {
    /// Checks the certificate and wraps the points.
    pub fn new(poly: UniPoly, points: Vec<GaussianRational>) -> Option<Self> {
        let report = separation_test(&poly, &points);
        report.passed.then_some(CertifiedConfiguration {
            poly,
            points,
            eps_sq: report.eps_sq,
        })
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn points(&self) -> &[GaussianRational] {
        &self.points
    }

    pub fn eps_sq(&self) -> &[Rational] {
        &self.eps_sq
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    /// Same configuration with the points in lexicographic `(re, im)` order.
    pub fn sorted(&self) -> Self {
        let mut idx: Vec<usize> = (0..self.points.len()).collect();
        idx.sort_by(|&a, &b| self.points[a].lex_cmp(&self.points[b]));
        CertifiedConfiguration {
            poly: self.poly.clone(),
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            eps_sq: idx.iter().map(|&i| self.eps_sq[i].clone()).collect(),
        }
    }

    /// Squared lemma radius `n^2 |P(x_i) / P'(x_i)|^2` of point `i`.
    pub fn lemma_radius_sq(&self, i: usize) -> Rational {
        lemma_radius_sq(&self.poly, &self.points[i]).expect("certified points are not critical")
    }

    /// Newton-refines every point until its lemma radius is at most
    /// `10^-digits` times its isolation radius. Each step is accepted only
    /// if the new lemma disk stays inside the previous isolating disk, so
    /// point `i` keeps tracking the same root.
    pub fn refine(&self, digits: u32, guard: u32) -> Self {
        let mut cur = self.clone();
        let factor = crate::numeric::pow10(2 * digits as i64);
        for _ in 0..200 {
            let done = (0..cur.degree()).all(|i| cur.lemma_radius_sq(i) * &factor <= cur.eps_sq[i]);
            if done {
                break;
            }
            let mut next = cur.points.clone();
            for (i, x) in cur.points.iter().enumerate() {
                if let Ok(y) = newton_step(&cur.poly, x, guard + digits) {
                    let ok = lemma_radius_sq(&cur.poly, &y)
                        .is_some_and(|r| disk_inside(&y, &r, x, &cur.eps_sq[i]));
                    if ok {
                        next[i] = y;
                    }
                }
            }
            match CertifiedConfiguration::new(cur.poly.clone(), next) {
                Some(c) if c.points != cur.points => cur = c,
                _ => break,
            }
        }
        cur
    }
}

/// `n^2 |P(z)/P'(z)|^2` with `n = deg P`; `None` at critical points.
pub fn lemma_radius_sq(p: &UniPoly, z: &GaussianRational) -> Option<Rational> {
    let (v, d) = p.eval_with_derivative(z);
    let nd = gauss_norm(&d);
    if nd.is_zero() {
        return None;
    }
    let n = Rational::from_integer(p.degree().unwrap_or(0).into());
    Some(&n * &n * gauss_norm(&v) / nd)
}

/// Closed disk `D(a, sqrt(ra_sq))` lies in closed disk `D(b, sqrt(rb_sq))`,
/// decided exactly from squared quantities.
pub fn disk_inside(
    a: &GaussianRational,
    ra_sq: &Rational,
    b: &GaussianRational,
    rb_sq: &Rational,
) -> bool {
    // |a - b| + ra <= rb  <=>  C - A - B >= 2 sqrt(AB)
    let dist_sq = gauss_norm(&(a - b));
    if ra_sq > rb_sq {
        return false;
    }
    let slack = rb_sq - &dist_sq - ra_sq;
    if slack.is_negative() {
        return false;
    }
    &slack * &slack >= Rational::from_integer(4.into()) * &dist_sq * ra_sq
}

/// Truncated Newton step: `z - P(z)/P'(z)` snapped to the decimal grid
/// `10^k`, `k = floor_log10(max(|re q|, |im q|)) - guard` for the step `q`.
pub fn newton_step(
    p: &UniPoly,
    z: &GaussianRational,
    guard: u32,
) -> Result<GaussianRational, RootError> {
    let (v, d) = p.eval_with_derivative(z);
    let q = v
        .checked_div(&d)
        .ok_or_else(|| RootError::CriticalPoint(z.clone()))?;
    if q.is_zero() {
        return Ok(z.clone());
    }
    let k = floor_log10(&q.max_abs_part()) - guard as i64;
    Ok(truncate_decimal(&(z - &q), k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub passed: bool,
    pub eps_sq: Vec<Rational>,
    /// Indices whose certificate fails, with critical points included.
    pub failing: Vec<usize>,
}

/// Isolation radii of `points` (half the distance to the nearest other
/// point; 1 for a single point) and the certificate check against `p`.
pub fn separation_test(p: &UniPoly, points: &[GaussianRational]) -> SeparationReport {
    let n = points.len();
    let four = Rational::from_integer(4.into());
    let eps_sq: Vec<Rational> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| gauss_norm(&(&points[i] - &points[j])) / &four)
                .min()
                .unwrap_or_else(Rational::one)
        })
        .collect();
    let mut failing = Vec::new();
    if p.degree() != Some(n) || n == 0 {
        return SeparationReport {
            passed: false,
            failing: (0..n).collect(),
            eps_sq,
        };
    }
    for i in 0..n {
        let ok =
            !eps_sq[i].is_zero() && lemma_radius_sq(p, &points[i]).is_some_and(|r| r < eps_sq[i]);
        if !ok {
            failing.push(i);
        }
    }
    SeparationReport {
        passed: failing.is_empty(),
        eps_sq,
        failing,
    }
}

/// Fujiwara's root bound `2 max_k |a_{n-k} / a_n|^(1/k)`, with each
/// root rounded up to a power of two so the result is rational.
pub fn root_bound(p: &UniPoly) -> Rational {
    let cs = p.coeffs();
    let n = cs.len() - 1;
    let lead_inv = cs[n].inv().expect("nonzero polynomial");
    let two = Rational::from_integer(2.into());
    let mut best = Rational::zero();
    for k in 1..=n {
        let mut m = (&cs[n - k] * &lead_inv).modulus_upper_bound();
        if k == n {
            m /= &two;
        }
        if m.is_zero() {
            continue;
        }
        // smallest power of two r with r^k >= m
        let mut r = Rational::one();
        while num_traits::pow(r.clone(), k) < m {
            r *= &two;
        }
        while r > Rational::zero() && num_traits::pow(&r / &two, k) >= m {
            r /= &two;
        }
        if r > best {
            best = r;
        }
    }
    best * two
}

const PI_APPROX: (i64, i64) = (355, 113);

/// `(cos a, sin a)` from Taylor series, to about six decimals.
fn unit_vector(angle: &Rational) -> GaussianRational {
    let pi = rat(PI_APPROX.0, PI_APPROX.1);
    let two_pi = &pi * Rational::from_integer(2.into());
    // reduce into [-pi, pi]
    let mut a = angle.clone();
    let turns = (&a / &two_pi).round();
    a -= &turns * &two_pi;
    let tiny = rat(1, 100_000_000);
    let (mut cos, mut sin) = (Rational::zero(), Rational::zero());
    let mut term = Rational::one();
    let mut k: i64 = 0;
    while term.abs() > tiny || k < 2 {
        // term = a^k / k!
        if k % 2 == 0 {
            if (k / 2) % 2 == 0 {
                cos += &term;
            } else {
                cos -= &term;
            }
        } else if (k / 2) % 2 == 0 {
            sin += &term;
        } else {
            sin -= &term;
        }
        k += 1;
        term = truncate_decimal(
            &GaussianRational::from_rational(&term * &a / Rational::from_integer(k.into())),
            -12,
        )
        .re;
    }
    truncate_decimal(&GaussianRational::new(cos, sin), -6)
}

/// Starting points on a circle of radius `radius`, with phase `offset`
/// (in turns) added to every angle.
fn circle_points(n: usize, radius: &Rational, offset: &Rational) -> Vec<GaussianRational> {
    let two_pi = rat(2 * PI_APPROX.0, PI_APPROX.1);
    (0..n)
        .map(|k| {
            let turns = Rational::new((k as i64).into(), (n as i64).into()) + offset;
            unit_vector(&(turns * &two_pi)).scale(radius)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOptions {
    pub seed: u64,
    pub guard: u32,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { seed: 0, guard: 2 }
    }
}

/// Isolates all roots of the squarefree polynomial `p`.
///
/// Search runs simultaneous (Aberth-type) truncated Newton sweeps from a
/// circle outside a root bound, restarting with seeded random phases on
/// divergence or stagnation, until the certificate holds. Total budget is
/// `64 n^2` single-point steps.
pub fn certify_roots(p: &UniPoly, opts: &RootOptions) -> Result<CertifiedConfiguration, RootError> {
    let n = p.degree().ok_or(RootError::DegreeZero)?;
    if n == 0 {
        return Err(RootError::DegreeZero);
    }
    if n == 1 {
        let c = p.coeffs();
        let root = -(&c[0] / &c[1]);
        return Ok(
            CertifiedConfiguration::new(p.clone(), vec![root]).expect("exact root certifies")
        );
    }
    let bound = root_bound(p);
    let radius = &bound + Rational::one();
    let escape = &radius * &radius * Rational::from_integer(4.into());
    let budget = 64 * n * n;
    let restarts = 4;
    let per_start = budget / restarts / n;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut steps = 0;
    let mut best: Option<(usize, Vec<GaussianRational>)> = None;
    let mut offset = rat(1, 4 * n as i64);
    for _ in 0..restarts {
        let mut z = circle_points(n, &radius, &offset);
        for _ in 0..per_start {
            steps += n;
            let escaped = aberth_sweep(p, &mut z, opts.guard);
            if escaped || z.iter().any(|x| gauss_norm(x) > escape) {
                break;
            }
            let report = separation_test(p, &z);
            if report.passed {
                return Ok(CertifiedConfiguration {
                    poly: p.clone(),
                    points: z,
                    eps_sq: report.eps_sq,
                });
            }
            let fails = report.failing.len();
            if best.as_ref().is_none_or(|(f, _)| fails < *f) {
                best = Some((fails, z.clone()));
            }
        }
        offset = Rational::new(rng.gen_range(0..1_000_000i64).into(), 1_000_000i64.into());
    }
    Err(RootError::BudgetExhausted {
        steps,
        best: best.map(|b| b.1).unwrap_or_default(),
    })
}

/// One Gauss-Seidel sweep of `z_i -= P / (P' - P * sum_j 1/(z_i - z_j))`.
/// Returns true when the iteration broke down (coincident points or a zero
/// denominator), which calls for a restart.
fn aberth_sweep(p: &UniPoly, z: &mut [GaussianRational], guard: u32) -> bool {
    let n = z.len();
    for i in 0..n {
        let (v, d) = p.eval_with_derivative(&z[i]);
        if v.is_zero() {
            continue;
        }
        let mut s = GaussianRational::zero();
        for j in 0..n {
            if j != i {
                match (&z[i] - &z[j]).inv() {
                    Some(r) => s += &r,
                    None => return true,
                }
            }
        }
        let denom = &d - &(&v * &s);
        let w = match v.checked_div(&denom) {
            Some(w) => w,
            None => return true,
        };
        let k = floor_log10(&w.max_abs_part()) - guard as i64;
        z[i] = truncate_decimal(&(&z[i] - &w), k);
    }
    false
}

/// Orders points lexicographically by `(re, im)`.
pub fn lex_sort(points: &mut [GaussianRational]) {
    points.sort_by(|a, b| a.lex_cmp(b));
}

/// Position of the point in `targets` whose isolating disk contains the
/// lemma disk of `x` for `p`.
pub fn locate(
    p: &UniPoly,
    x: &GaussianRational,
    targets: &[GaussianRational],
    eps_sq: &[Rational],
) -> Option<usize> {
    let r = lemma_radius_sq(p, x)?;
    let hits: Vec<usize> = (0..targets.len())
        .filter(|&j| disk_inside(x, &r, &targets[j], &eps_sq[j]))
        .collect();
    match hits.as_slice() {
        [j] => Some(*j),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat_int, sign_of};
    use crate::poly::RealPoly;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ratios(re, 1, im, 1)
    }

    #[test]
    fn newton_examples() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(
            newton_step(&p, &g(2, 0), 40).unwrap(),
            GaussianRational::from_ratios(5, 4, 0, 1)
        );
        assert_eq!(newton_step(&p, &g(1, 0), 2).unwrap(), g(1, 0));
        assert!(matches!(
            newton_step(&UniPoly::from_ints(&[0, 0, 1]), &g(0, 0), 2),
            Err(RootError::CriticalPoint(_))
        ));
    }

    #[test]
    fn separation_examples() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        let r = separation_test(&p, &[g(1, 0), g(-1, 0)]);
        assert!(r.passed);
        assert_eq!(r.eps_sq, vec![rat_int(1), rat_int(1)]);
        let near = GaussianRational::from_ratios(9, 10, 0, 1);
        assert!(separation_test(&p, &[near, g(-1, 0)]).passed);
        let bad = separation_test(
            &p,
            &[
                GaussianRational::from_ratios(1, 10, 0, 1),
                GaussianRational::from_ratios(-1, 10, 0, 1),
            ],
        );
        assert!(!bad.passed);
        assert_eq!(bad.failing, vec![0, 1]);
        assert!(!separation_test(&UniPoly::from_ints(&[0, 0, 1]), &[g(0, 0), g(1, 0)]).passed);
    }

    #[test]
    fn separation_example_arithmetic() {
        // n^2 |P(9/10)|^2 = 361/2500 and eps^2 |P'(9/10)|^2 = 29241/10000
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        let x = GaussianRational::from_ratios(9, 10, 0, 1);
        let (v, d) = p.eval_with_derivative(&x);
        assert_eq!(rat_int(4) * gauss_norm(&v), rat(361, 2500));
        let eps = separation_test(&p, &[x, g(-1, 0)]).eps_sq[0].clone();
        assert_eq!(eps, rat(361, 400));
        assert_eq!(eps * gauss_norm(&d), rat(29241, 10000));
    }

    #[test]
    fn linear_is_exact() {
        let p = UniPoly::linear_root(&g(2, 3));
        let c = certify_roots(&p, &RootOptions::default()).unwrap();
        assert_eq!(c.points(), &[g(2, 3)]);
    }

    #[test]
    fn plus_minus_i() {
        let p = UniPoly::from_ints(&[1, 0, 1]);
        let c = certify_roots(&p, &RootOptions::default()).unwrap();
        for root in [g(0, -1), g(0, 1)] {
            let hits = c
                .points()
                .iter()
                .zip(c.eps_sq())
                .filter(|(x, e2)| gauss_norm(&(*x - &root)) < **e2);
            assert_eq!(hits.count(), 1);
        }
    }

    #[test]
    fn real_cubic_sign_change_oracle() {
        let p = UniPoly::from_ints(&[-6, 11, -6, 1]);
        let c = certify_roots(&p, &RootOptions::default()).unwrap().sorted();
        let real = p.re_im_parts().0;
        for (k, (x, e2)) in c.points().iter().zip(c.eps_sq()).enumerate() {
            // a real interval [x - h, x + h] with h^2 <= eps^2 inside the disk
            let h = {
                let mut h = Rational::one();
                while &h * &h > *e2 {
                    h /= Rational::from_integer(2.into());
                }
                h
            };
            let (a, b) = (&x.re - &h, &x.re + &h);
            assert!(sign_of(&real.eval(&a)) * sign_of(&real.eval(&b)) < 0);
            let root = rat_int(k as i64 + 1);
            assert!(a < root && root < b);
        }
    }

    #[test]
    fn refine_shrinks_lemma_radius() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let c = certify_roots(&p, &RootOptions::default()).unwrap();
        let r = c.refine(20, 2);
        for i in 0..2 {
            assert!(r.lemma_radius_sq(i) * crate::numeric::pow10(40) <= r.eps_sq()[i]);
            assert!(disk_inside(
                &r.points()[i],
                &r.lemma_radius_sq(i),
                &c.points()[i],
                &c.eps_sq()[i]
            ));
        }
    }

    #[test]
    fn root_bound_dominates() {
        let p = UniPoly::from_roots(&[g(10, 0), g(0, -7), g(3, 3)]);
        let b = root_bound(&p);
        assert!(&b * &b > rat_int(100));
        assert!(b <= rat_int(64));
    }

    #[test]
    fn disk_containment() {
        let one = rat_int(1);
        assert!(disk_inside(&g(0, 0), &one, &g(0, 0), &one));
        assert!(disk_inside(&g(1, 0), &one, &g(0, 0), &rat_int(4)));
        assert!(!disk_inside(&g(2, 0), &one, &g(0, 0), &rat_int(4)));
        assert!(!disk_inside(&g(0, 0), &rat_int(4), &g(0, 0), &one));
    }

    #[test]
    fn unit_vectors_are_close() {
        let v = unit_vector(&rat(355, 226));
        assert!((gauss_norm(&v) - rat_int(1)).abs() < rat(1, 10_000));
        assert!(v.re.abs() < rat(1, 1000));
    }

    #[test]
    fn determinism() {
        let p = UniPoly::from_roots(&[g(1, 1), g(-2, 0), g(0, 3), g(5, -5), g(2, 2)]);
        let opts = RootOptions { seed: 7, guard: 2 };
        assert_eq!(
            certify_roots(&p, &opts).unwrap(),
            certify_roots(&p, &opts).unwrap()
        );
    }

    #[test]
    fn sturm_agrees_on_real_roots() {
        let p = UniPoly::from_ints(&[-6, 11, -6, 1]);
        let real: RealPoly = p.re_im_parts().0;
        assert_eq!(real.count_roots(&rat_int(0), &rat_int(4)), 3);
    }

    fn planted() -> impl Strategy<Value = Vec<(i64, i64)>> {
        proptest::collection::btree_set((-7i64..=7, -7i64..=7), 1..=8)
            .prop_map(|s| {
                s.into_iter()
                    .filter(|&(a, b)| a * a + b * b <= 100)
                    .collect::<Vec<_>>()
            })
            .prop_filter("nonempty", |v| !v.is_empty())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn planted_roots_recovered(roots in planted(), seed in 0u64..1000) {
            let rs: Vec<GaussianRational> = roots.iter().map(|&(a, b)| g(a, b)).collect();
            let p = UniPoly::from_roots(&rs);
            let c = certify_roots(&p, &RootOptions { seed, guard: 2 }).unwrap();
            for (x, e2) in c.points().iter().zip(c.eps_sq()) {
                let hits = rs.iter().filter(|r| gauss_norm(&(x - *r)) < *e2).count();
                prop_assert_eq!(hits, 1);
            }
            for i in 0..c.degree() {
                for j in 0..c.degree() {
                    if i != j {
                        let d = gauss_norm(&(&c.points()[i] - &c.points()[j])) / rat_int(4);
                        prop_assert!(d >= c.eps_sq()[i].clone().max(c.eps_sq()[j].clone()));
                    }
                }
            }
        }
    }
}
