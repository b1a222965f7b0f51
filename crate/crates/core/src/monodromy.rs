//! Certified braid monodromy along segments of the base.
//!
//! Along a segment `Y = (1 - t) y0 + t y1` the roots of `P(X, Y)` are
//! followed by certified configurations. From a configuration `(x_i, eps_i)`
//! valid at `t`, the safety polynomial
//!
//! ```text
//! Q_i(s) = eps_i^2 |P'_s(x_i)|^2 - n^2 |P_s(x_i)|^2
//! ```
//!
//! stays positive on `[0, s0]`, so root `i` never leaves `D(x_i, eps_i)` and
//! the braid over that stretch is trivial up to the straight move to the
//! next configuration. Crossings of those straight moves in the real
//! projection give the Artin word.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::{gauss_norm, GaussianRational, Rational};
use crate::poly::{BivariatePoly, IntPoly, RealPoly, UniPoly};
use crate::roots::{
    disk_inside, lemma_radius_sq, newton_step, separation_test, CertifiedConfiguration, RootError,
};

pub type Point = GaussianRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MonodromyError {
    #[error("generator index {index} out of range for {strands} strands")]
    BadGenerator { index: i32, strands: usize },
    #[error("cannot parse braid word: {0}")]
    Parse(String),
    #[error("strings {0} and {1} collide")]
    Collision(usize, usize),
    #[error("simultaneous crossing of non-adjacent strings {0} and {1}")]
    DegenerateCrossing(usize, usize),
    #[error("safety polynomial is not positive at 0")]
    NotSafe,
    #[error("certification failed on segment {from} -> {to} at t = {t}: {reason}")]
    Certification {
        from: Point,
        to: Point,
        t: Rational,
        reason: String,
    },
    #[error("segment {from} -> {to} needs more than {limit} steps")]
    Budget {
        from: Point,
        to: Point,
        limit: usize,
    },
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Word in the Artin generators `sigma_1 .. sigma_{n-1}`; letter `i`
/// stands for `sigma_i`, `-i` for its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, MonodromyError> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(MonodromyError::BadGenerator { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Appends `other` and cancels `s s^-1` pairs at the seam.
    pub fn append(&mut self, other: &BraidWord) {
        debug_assert_eq!(self.strands, other.strands);
        for &l in &other.letters {
            if self.letters.last() == Some(&-l) {
                self.letters.pop();
            } else {
                self.letters.push(l);
            }
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut w = self.clone();
        w.append(other);
        w
    }

    /// Final arrangement: position `p` holds the string that started at
    /// position `perm[p]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut arr: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize;
            arr.swap(k - 1, k);
        }
        arr
    }

    /// Parses space-separated signed generator indices.
    pub fn parse(strands: usize, s: &str) -> Result<Self, MonodromyError> {
        let letters = s
            .split_whitespace()
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|_| MonodromyError::Parse(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A braid file: `strings: <n>` followed by one word per line.
pub fn format_braids(strands: usize, words: &[BraidWord]) -> String {
    let mut s = format!("strings: {}\n", strands);
    for w in words {
        s.push_str(&w.to_string());
        s.push('\n');
    }
    s
}

impl FromStr for BraidWord {
    type Err = MonodromyError;
    /// Strand count is taken as one more than the largest index.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let w = BraidWord::parse(usize::MAX, s)?;
        let n = w
            .letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
            + 1;
        Ok(BraidWord {
            strands: n,
            letters: w.letters,
        })
    }
}

/// Inverse of [`format_braids`].
pub fn parse_braids(s: &str) -> Result<(usize, Vec<BraidWord>), MonodromyError> {
    // after the header a blank line is the empty word
    let mut lines = s.lines().filter(|l| !l.trim_start().starts_with('#'));
    let head = lines
        .by_ref()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| MonodromyError::Parse("empty braid file".into()))?;
    let n: usize = head
        .trim()
        .strip_prefix("strings:")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| MonodromyError::Parse(format!("expected `strings: <n>`, got `{}`", head)))?;
    let words = lines
        .map(|l| BraidWord::parse(n, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((n, words))
}

/// Configuration of the fiber roots at one parameter of a segment.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: Rational,
    pub base: Point,
    pub config: CertifiedConfiguration,
}

/// Polynomials in `s` for `P(x, Y(s))` and `dP/dX(x, Y(s))` along
/// `Y(s) = y0 + s (y1 - y0)`.
fn along(
    curve: &BivariatePoly,
    dcurve: &BivariatePoly,
    y0: &Point,
    y1: &Point,
    x: &Point,
) -> (UniPoly, UniPoly) {
    let dir = y1 - y0;
    (
        curve.at_fiber(x).compose_affine(y0, &dir),
        dcurve.at_fiber(x).compose_affine(y0, &dir),
    )
}

fn safety_from(p: &UniPoly, dp: &UniPoly, n: usize, eps_sq: &Rational) -> RealPoly {
    let (a, b) = p.re_im_parts();
    let (c, d) = dp.re_im_parts();
    let n2 = Rational::from_integer(((n * n) as i64).into());
    let lhs = (&(&c * &c) + &(&d * &d)).scale(eps_sq);
    let rhs = (&(&a * &a) + &(&b * &b)).scale(&n2);
    &lhs - &rhs
}

/// `Q(s) = eps^2 (C^2 + D^2) - n^2 (A^2 + B^2)` where `A + iB = P(x, Y(s))`
/// and `C + iD = dP/dX (x, Y(s))` on the segment from `y0` to `y1`, with
/// `n` the degree in the fiber variable.
pub fn safety_polynomial(
    curve: &BivariatePoly,
    y0: &Point,
    y1: &Point,
    x: &Point,
    eps_sq: &Rational,
) -> RealPoly {
    let dcurve = curve.fiber_derivative();
    let (p, dp) = along(curve, &dcurve, y0, y1, x);
    safety_from(&p, &dp, curve.fiber_degree(), eps_sq)
}

type Zi = Complex<BigInt>;

/// `z = num / den` with `num` Gaussian integral and `den > 0`.
fn split(z: &Point) -> (Zi, BigInt) {
    let den = z.re.denom().lcm(z.im.denom());
    let re = z.re.numer() * (&den / z.re.denom());
    let im = z.im.numer() * (&den / z.im.denom());
    (Zi::new(re, im), den)
}

fn pow_table(b: &BigInt, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for k in 0..n {
        let next = &out[k] * b;
        out.push(next);
    }
    out
}

/// A positive integer multiple of a curve, rows indexed by `X` degree then
/// `Y` degree. Safety polynomials computed from it are positive multiples
/// of the rational ones, which is all the sign tests need.
struct IntegerCurve {
    rows: Vec<Vec<Zi>>,
    ydeg: usize,
}

impl IntegerCurve {
    fn new(curve: &BivariatePoly) -> Self {
        let mut den = BigInt::one();
        for c in curve.fiber_coeffs() {
            for z in c.coeffs() {
                den = den.lcm(&split(z).1);
            }
        }
        let ydeg = curve
            .fiber_coeffs()
            .iter()
            .map(|c| c.coeffs().len())
            .max()
            .unwrap_or(1)
            .max(1)
            - 1;
        let rows = curve
            .fiber_coeffs()
            .iter()
            .map(|c| {
                let mut row = vec![Zi::zero(); ydeg + 1];
                for (m, z) in c.coeffs().iter().enumerate() {
                    let (num, d) = split(z);
                    row[m] = num * (&den / d);
                }
                row
            })
            .collect();
        IntegerCurve { rows, ydeg }
    }

    fn safety(&self, y0: &Point, y1: &Point, x: &Point, eps_sq: &Rational) -> IntPoly {
        let n = self.rows.len().saturating_sub(1);
        let (xn, xd) = split(x);
        let dpow = pow_table(&xd, n + 1);
        let mut xpow = vec![Zi::one()];
        for j in 0..n {
            let next = &xpow[j] * &xn;
            xpow.push(next);
        }
        // P and dP/dX at x as polynomials in Y, both times xd^n
        let mut p = vec![Zi::zero(); self.ydeg + 1];
        let mut dp = vec![Zi::zero(); self.ydeg + 1];
        for (j, row) in self.rows.iter().enumerate() {
            let f = &xpow[j] * &dpow[n - j];
            let g = (j > 0).then(|| &xpow[j - 1] * (&dpow[n - j + 1] * BigInt::from(j)));
            for (m, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                p[m] += c * &f;
                if let Some(g) = &g {
                    dp[m] += c * g;
                }
            }
        }
        let (yn, yd) = split(y0);
        let (rn, rd) = split(&(y1 - y0));
        let lin = [yn.scale(rd.clone()), rn.scale(yd.clone())];
        let spow = pow_table(&(&yd * &rd), self.ydeg);
        let horner = |c: &[Zi]| -> Vec<Zi> {
            let mut acc = vec![c[self.ydeg].clone()];
            for m in (0..self.ydeg).rev() {
                let mut next = vec![Zi::zero(); acc.len() + 1];
                for (k, a) in acc.iter().enumerate() {
                    next[k] += a * &lin[0];
                    next[k + 1] += a * &lin[1];
                }
                next[0] += c[m].scale(spow[self.ydeg - m].clone());
                acc = next;
            }
            acc
        };
        let (ps, dps) = (horner(&p), horner(&dp));
        let norm_sq = |v: &[Zi]| -> Vec<BigInt> {
            let mut out = vec![BigInt::zero(); 2 * v.len() - 1];
            for (i, a) in v.iter().enumerate() {
                for (k, b) in v.iter().enumerate() {
                    out[i + k] += &a.re * &b.re + &a.im * &b.im;
                }
            }
            out
        };
        let (an, dn) = (norm_sq(&ps), norm_sq(&dps));
        let lhs_f = eps_sq.numer();
        let rhs_f = eps_sq.denom() * BigInt::from(n * n);
        let len = an.len().max(dn.len());
        let q = (0..len)
            .map(|i| {
                let l = dn.get(i).map_or_else(BigInt::zero, |c| c * lhs_f);
                let r = an.get(i).map_or_else(BigInt::zero, |c| c * &rhs_f);
                l - r
            })
            .collect();
        IntPoly::new(q)
    }
}

const DESCARTES_HALVINGS: usize = 20;
const MAX_HALVINGS: usize = 400;

/// Largest `t0 = 2^-k` for which `Q > 0` on `[0, t0]` is certified: by
/// positive coefficients after `t = t0 s / (1 + s)` for the first
/// halvings, then by Sturm sequences.
pub fn advance_t0(q: &RealPoly) -> Result<Rational, MonodromyError> {
    if !q.eval(&Rational::zero()).is_positive() {
        return Err(MonodromyError::NotSafe);
    }
    advance_int(&IntPoly::from_real(q))
}

fn advance_int(qi: &IntPoly) -> Result<Rational, MonodromyError> {
    if !qi.coeffs().first().is_some_and(|c| c.is_positive()) {
        return Err(MonodromyError::NotSafe);
    }
    let half = Rational::new(1.into(), 2.into());
    let mut t0 = Rational::one();
    for k in 0..=DESCARTES_HALVINGS {
        if qi.positive_on_dyadic(k as u32) {
            return Ok(t0);
        }
        t0 *= &half;
    }
    let q = qi.to_real();
    let sturm = q.sturm_sequence();
    let zero = Rational::zero();
    for _ in 0..MAX_HALVINGS {
        if q.eval(&t0).is_positive() && sturm_count(&sturm, &zero, &t0) == 0 {
            return Ok(t0);
        }
        t0 *= &half;
    }
    Err(MonodromyError::NotSafe)
}

fn sturm_count(seq: &[RealPoly], a: &Rational, b: &Rational) -> usize {
    let var = |t: &Rational| -> usize {
        let mut last = 0;
        let mut count = 0;
        for p in seq {
            let s = crate::numeric::sign_of(&p.eval(t));
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    };
    var(a).saturating_sub(var(b))
}

/// Artin word of the straight-line motion `before[i] -> after[i]`, read
/// in the real projection with strings ordered by `(re, im)`.
///
/// Lexicographic order is the order of `re + delta * im` for infinitesimal
/// `delta > 0`; crossings are sorted by time and, at equal times, by the
/// first-order shift `-delta * dIm / dRe'` this perturbation causes, then by
/// string index. A crossing contributes `sigma_k` when the string coming
/// from the left has the smaller imaginary part, `sigma_k^-1` otherwise.
pub fn lin_braid(before: &[Point], after: &[Point]) -> Result<BraidWord, MonodromyError> {
    let n = before.len();
    assert_eq!(n, after.len(), "lin_braid: point counts differ");
    struct Event {
        t: Rational,
        shift: Rational,
        i: usize,
        j: usize,
        im_i: Rational,
        im_j: Rational,
    }
    let mut events = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (b, a) = (before[i].lex_cmp(&before[j]), after[i].lex_cmp(&after[j]));
            if b == Ordering::Equal || a == Ordering::Equal {
                return Err(MonodromyError::Collision(i, j));
            }
            if a == b {
                continue;
            }
            let dre0 = &before[j].re - &before[i].re;
            let dre1 = (&after[j].re - &after[i].re) - &dre0;
            if dre1.is_zero() {
                // same real part throughout; the imaginary order flips
                return Err(MonodromyError::Collision(i, j));
            }
            let t = -(&dre0 / &dre1);
            let at = |p: &Point, q: &Point| &p.im + (&q.im - &p.im) * &t;
            let (im_i, im_j) = (at(&before[i], &after[i]), at(&before[j], &after[j]));
            let dim = &im_j - &im_i;
            if dim.is_zero() {
                return Err(MonodromyError::Collision(i, j));
            }
            let shift = -(&dim / &dre1);
            events.push(Event {
                t,
                shift,
                i,
                j,
                im_i,
                im_j,
            });
        }
    }
    events.sort_by(|a, b| {
        a.t.cmp(&b.t)
            .then_with(|| a.shift.cmp(&b.shift))
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    });
    let mut arr: Vec<usize> = (0..n).collect();
    arr.sort_by(|&a, &b| before[a].lex_cmp(&before[b]));
    let mut pos = vec![0; n];
    for (p, &s) in arr.iter().enumerate() {
        pos[s] = p;
    }
    let mut letters = Vec::with_capacity(events.len());
    for e in &events {
        let (pi, pj) = (pos[e.i], pos[e.j]);
        if pi.abs_diff(pj) != 1 {
            return Err(MonodromyError::DegenerateCrossing(e.i, e.j));
        }
        let k = pi.min(pj);
        let left_smaller = if pi < pj {
            e.im_i < e.im_j
        } else {
            e.im_j < e.im_i
        };
        let g = k as i32 + 1;
        letters.push(if left_smaller { g } else { -g });
        arr.swap(k, k + 1);
        pos[arr[k]] = k;
        pos[arr[k + 1]] = k + 1;
    }
    let mut expect: Vec<usize> = (0..n).collect();
    expect.sort_by(|&a, &b| after[a].lex_cmp(&after[b]));
    if arr != expect {
        return Err(MonodromyError::DegenerateCrossing(arr[0], expect[0]));
    }
    Ok(BraidWord {
        strands: n.max(1),
        letters,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FollowOptions {
    pub guard: u32,
    pub max_steps: usize,
    /// Keep every intermediate snapshot in the result.
    pub record: bool,
}

impl Default for FollowOptions {
    fn default() -> Self {
        FollowOptions {
            guard: 2,
            max_steps: 100_000,
            record: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentResult {
    pub word: BraidWord,
    /// Configuration at the segment end; point `i` follows start point `i`.
    pub end: CertifiedConfiguration,
    pub steps: usize,
    /// Snapshots at every accepted parameter, when requested.
    pub snapshots: Vec<Snapshot>,
}

/// Follows the roots of `curve` from `start` (a configuration for
/// `curve(X, y0)`) along the segment `y0 -> y1`.
pub fn follow_segment(
    curve: &BivariatePoly,
    y0: &Point,
    y1: &Point,
    start: &CertifiedConfiguration,
    opts: &FollowOptions,
) -> Result<SegmentResult, MonodromyError> {
    let n = curve.fiber_degree();
    let icurve = IntegerCurve::new(curve);
    let mut cur = start.clone();
    let mut t = Rational::zero();
    let mut y = y0.clone();
    let mut word = BraidWord::identity(n.max(1));
    let mut snapshots = Vec::new();
    if opts.record {
        snapshots.push(Snapshot {
            t: t.clone(),
            base: y.clone(),
            config: cur.clone(),
        });
    }
    let mut steps = 0;
    let fail = |t: &Rational, reason: String| MonodromyError::Certification {
        from: y0.clone(),
        to: y1.clone(),
        t: t.clone(),
        reason,
    };
    while t < Rational::one() {
        steps += 1;
        if steps > opts.max_steps {
            return Err(MonodromyError::Budget {
                from: y0.clone(),
                to: y1.clone(),
                limit: opts.max_steps,
            });
        }
        let mut s0 = Rational::one();
        for (x, e2) in cur.points().iter().zip(cur.eps_sq()) {
            let q = icurve.safety(&y, y1, x, e2);
            let si =
                advance_int(&q).map_err(|_| fail(&t, "safety polynomial not positive".into()))?;
            if si < s0 {
                s0 = si;
            }
        }
        let y_new = &y + &(y1 - &y).scale(&s0);
        let p_new = curve.at_base(&y_new);
        let next = match keep_or_move(&p_new, &cur, opts.guard) {
            Some(c) => c,
            // the old points certify P at the new base by construction
            None => CertifiedConfiguration::new(p_new, cur.points().to_vec())
                .ok_or_else(|| fail(&t, "frozen points lost their certificate".into()))?,
        };
        word.append(&lin_braid(cur.points(), next.points())?);
        t = &t + (Rational::one() - &t) * &s0;
        y = y_new;
        cur = next;
        if opts.record {
            snapshots.push(Snapshot {
                t: t.clone(),
                base: y.clone(),
                config: cur.clone(),
            });
        }
    }
    log::debug!("segment {} -> {}: {} steps", y0, y1, steps);
    Ok(SegmentResult {
        word,
        end: cur,
        steps,
        snapshots,
    })
}

/// The current points when they still certify `p` with lemma radii at
/// most a quarter of their isolation radii, otherwise a Newton move.
fn keep_or_move(
    p: &UniPoly,
    cur: &CertifiedConfiguration,
    guard: u32,
) -> Option<CertifiedConfiguration> {
    let sixteen = Rational::from_integer(16.into());
    let snug = cur
        .points()
        .iter()
        .zip(cur.eps_sq())
        .all(|(x, e2)| lemma_radius_sq(p, x).is_some_and(|r| r * &sixteen <= *e2));
    if snug {
        return CertifiedConfiguration::new(p.clone(), cur.points().to_vec());
    }
    newton_move(p, cur, guard)
}

/// One truncated Newton step per point for `p`, accepted only when the
/// result is certified and every new lemma disk lies in the old isolating
/// disk (so each point keeps its root) with the move strictly inside it.
fn newton_move(
    p: &UniPoly,
    cur: &CertifiedConfiguration,
    guard: u32,
) -> Option<CertifiedConfiguration> {
    let mut pts = Vec::with_capacity(cur.degree());
    for (x, e2) in cur.points().iter().zip(cur.eps_sq()) {
        let y = newton_step(p, x, guard).ok()?;
        let r = lemma_radius_sq(p, &y)?;
        if gauss_norm(&(&y - x)) >= *e2 || !disk_inside(&y, &r, x, e2) {
            return None;
        }
        pts.push(y);
    }
    CertifiedConfiguration::new(p.clone(), pts)
}

/// Word taking configuration `from` to `to`, two certified configurations
/// of the same polynomial, pairing points that isolate the same root. The
/// points of `to` are taken in `(re, im)` order.
pub fn connect(
    from: &CertifiedConfiguration,
    to: &CertifiedConfiguration,
) -> Result<BraidWord, MonodromyError> {
    let to = to.sorted();
    if let Some(m) = match_roots(from, &to) {
        return lin_braid(from.points(), &m);
    }
    let refined = from.refine(8, 2);
    for (a, (b, e2)) in refined
        .points()
        .iter()
        .zip(from.points().iter().zip(from.eps_sq()))
    {
        if gauss_norm(&(a - b)) >= *e2 {
            return Err(MonodromyError::Certification {
                from: Point::zero(),
                to: Point::zero(),
                t: Rational::one(),
                reason: "refinement left its disk".into(),
            });
        }
    }
    let m = match_roots(&refined, &to).ok_or_else(|| MonodromyError::Certification {
        from: Point::zero(),
        to: Point::zero(),
        t: Rational::one(),
        reason: "cannot match end configuration to vertex configuration".into(),
    })?;
    let mut w = lin_braid(from.points(), refined.points())?;
    w.append(&lin_braid(refined.points(), &m)?);
    Ok(w)
}

/// `to`'s points rearranged so entry `i` isolates the root of `from`'s
/// point `i`.
fn match_roots(from: &CertifiedConfiguration, to: &CertifiedConfiguration) -> Option<Vec<Point>> {
    let n = from.degree();
    let mut out: Vec<Option<Point>> = vec![None; n];
    for (j, c) in to.points().iter().enumerate() {
        let r = to.lemma_radius_sq(j);
        let hits: Vec<usize> = (0..n)
            .filter(|&i| {
                disk_inside(c, &r, &from.points()[i], &from.eps_sq()[i])
                    && gauss_norm(&(c - &from.points()[i])) < from.eps_sq()[i]
            })
            .collect();
        match hits.as_slice() {
            [i] if out[*i].is_none() => out[*i] = Some(c.clone()),
            _ => return None,
        }
    }
    out.into_iter().collect()
}

/// Certified configuration of `curve(X, y)` in `(re, im)` order, refined so
/// that end configurations arriving at `y` match it directly.
pub fn vertex_configuration(
    curve: &BivariatePoly,
    y: &Point,
    seed: u64,
    guard: u32,
) -> Result<CertifiedConfiguration, MonodromyError> {
    let p = curve.at_base(y);
    let c = crate::roots::certify_roots(&p, &crate::roots::RootOptions { seed, guard })?;
    Ok(c.refine(12, guard).sorted())
}

/// Braid of the segment between two vertices, from the configuration at
/// `y0` to the one at `y1`.
pub fn segment_braid(
    curve: &BivariatePoly,
    y0: &Point,
    y1: &Point,
    c0: &CertifiedConfiguration,
    c1: &CertifiedConfiguration,
    opts: &FollowOptions,
) -> Result<BraidWord, MonodromyError> {
    let r = follow_segment(curve, y0, y1, c0, opts)?;
    let mut w = r.word;
    w.append(&connect(&r.end, c1)?);
    Ok(w)
}

/// Separation test of frozen points against the polynomial at `y`.
pub fn frozen_certificate_holds(curve: &BivariatePoly, y: &Point, points: &[Point]) -> bool {
    separation_test(&curve.at_base(y), points).passed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};
    use crate::poly::MultiPoly;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> Point {
        Point::from_ratios(re, 1, im, 1)
    }

    fn curve(s: &str) -> BivariatePoly {
        let p = MultiPoly::parse_with_vars(s, &["X", "Y"]).unwrap();
        BivariatePoly::from_multi(&p, "X", "Y").unwrap()
    }

    #[test]
    fn safety_examples() {
        let c = curve("X^2 - Y");
        assert_eq!(
            safety_polynomial(&c, &g(1, 0), &g(1, 0), &g(1, 0), &rat_int(1)),
            RealPoly::from_ints(&[4])
        );
        assert_eq!(
            safety_polynomial(&c, &g(1, 0), &g(2, 0), &g(1, 0), &rat_int(1)),
            RealPoly::from_ints(&[4, 0, -4])
        );
    }

    #[test]
    fn advance_examples() {
        assert_eq!(advance_t0(&RealPoly::from_ints(&[4])).unwrap(), rat_int(1));
        assert_eq!(
            advance_t0(&RealPoly::from_ints(&[4, 0, -4])).unwrap(),
            rat(1, 2)
        );
        let t0 = advance_t0(&RealPoly::from_ints(&[1, -2])).unwrap();
        assert!(t0 <= rat(1, 2) && RealPoly::from_ints(&[1, -2]).eval(&t0).is_positive());
        assert!(advance_t0(&RealPoly::from_ints(&[0, 1])).is_err());
        assert!(advance_t0(&RealPoly::from_ints(&[-1])).is_err());
    }

    #[test]
    fn sturm_fallback_for_nearby_root() {
        // root at 1e-7: beyond 20 halvings of the positivity test
        let q = RealPoly::new(vec![rat(1, 10_000_000), rat_int(-1)]);
        let t0 = advance_t0(&q).unwrap();
        assert!(t0 < rat(1, 10_000_000) && q.eval(&t0).is_positive());
    }

    #[test]
    fn lin_braid_examples() {
        assert!(lin_braid(&[g(0, 0), g(1, 0)], &[g(0, 0), g(1, 0)])
            .unwrap()
            .is_empty());
        // the left string passes above (larger im): negative crossing
        let w = lin_braid(&[g(0, 0), g(1, 0)], &[g(1, 1), g(0, -1)]).unwrap();
        assert_eq!(w.letters(), &[-1]);
        let w = lin_braid(&[g(0, 0), g(1, 0)], &[g(1, -1), g(0, 1)]).unwrap();
        assert_eq!(w.letters(), &[1]);
        assert!(lin_braid(&[g(0, 0), g(2, 0)], &[g(2, 0), g(0, 0)]).is_err());
    }

    #[test]
    fn outer_pair_swap() {
        // strings 0 and 2 trade places; string 1 stays put
        let before = [g(0, 0), g(1, 0), g(2, 0)];
        let after = [g(2, 1), g(1, 0), g(0, -1)];
        let w = lin_braid(&before, &after).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.permutation(), vec![2, 1, 0]);
    }

    #[test]
    fn braid_text_round_trip() {
        let w = BraidWord::new(3, vec![1, -2, 1]).unwrap();
        assert_eq!(w.to_string(), "1 -2 1");
        assert_eq!(BraidWord::parse(3, "1 -2 1").unwrap(), w);
        assert!(BraidWord::new(3, vec![3]).is_err());
        let f = format_braids(3, &[w.clone(), BraidWord::identity(3)]);
        assert_eq!(
            parse_braids(&f).unwrap(),
            (3, vec![w, BraidWord::identity(3)])
        );
    }

    #[test]
    fn constant_strings_give_empty_word() {
        let c = curve("X^2 - 1");
        let start = vertex_configuration(&c, &g(0, 0), 0, 2).unwrap();
        let r = follow_segment(&c, &g(0, 0), &g(3, 2), &start, &FollowOptions::default()).unwrap();
        assert!(r.word.is_empty());
        assert_eq!(r.end.points(), start.points());
    }

    #[test]
    fn real_segment_gives_empty_word() {
        let c = curve("X^2 - Y");
        let start = vertex_configuration(&c, &g(1, 0), 0, 2).unwrap();
        let r = follow_segment(&c, &g(1, 0), &g(4, 0), &start, &FollowOptions::default()).unwrap();
        assert!(r.word.is_empty());
    }

    fn loop_word(c: &BivariatePoly, corners: &[Point]) -> BraidWord {
        let confs: Vec<CertifiedConfiguration> = corners
            .iter()
            .map(|y| vertex_configuration(c, y, 0, 2).unwrap())
            .collect();
        let mut w = BraidWord::identity(c.fiber_degree());
        for k in 0..corners.len() {
            let k1 = (k + 1) % corners.len();
            w.append(
                &segment_braid(
                    c,
                    &corners[k],
                    &corners[k1],
                    &confs[k],
                    &confs[k1],
                    &FollowOptions::default(),
                )
                .unwrap(),
            );
        }
        w
    }

    /// Roots of `X^2 - Y` sampled densely along the loop, paired by
    /// nearest neighbour, and the crossings read off: the independent oracle.
    fn sampled_word(corners: &[Point], samples: usize) -> BraidWord {
        let mut pts: Vec<Point> = Vec::new();
        for k in 0..corners.len() {
            let (a, b) = (&corners[k], &corners[(k + 1) % corners.len()]);
            for s in 0..samples {
                pts.push(a + &(b - a).scale(&rat(s as i64, samples as i64)));
            }
        }
        pts.push(corners[0].clone());
        let c = curve("X^2 - Y");
        let roots_at = |y: &Point| vertex_configuration(&c, y, 0, 2).unwrap().points().to_vec();
        let mut cur = roots_at(&pts[0]);
        let mut w = BraidWord::identity(2);
        for y in &pts[1..] {
            let next = roots_at(y);
            let d = |a: &Point, b: &Point| gauss_norm(&(a - b));
            let paired = if d(&cur[0], &next[0]) + d(&cur[1], &next[1])
                <= d(&cur[0], &next[1]) + d(&cur[1], &next[0])
            {
                vec![next[0].clone(), next[1].clone()]
            } else {
                vec![next[1].clone(), next[0].clone()]
            };
            w.append(&lin_braid(&cur, &paired).unwrap());
            cur = paired;
        }
        w
    }

    #[test]
    fn square_loop_around_branch_point() {
        let c = curve("X^2 - Y");
        let corners = [g(-1, -1), g(1, -1), g(1, 1), g(-1, 1)];
        let w = loop_word(&c, &corners);
        let oracle = sampled_word(&corners, 25);
        assert_eq!(w.len(), 1);
        assert_eq!(w, oracle);
    }

    #[test]
    fn safety_spot_checks() {
        let c = curve("X^3 - 3*X*Y + Y^2 - 2");
        let start = vertex_configuration(&c, &g(-2, 1), 0, 2).unwrap();
        let opts = FollowOptions {
            record: true,
            ..FollowOptions::default()
        };
        let (y0, y1) = (g(-2, 1), g(3, -1));
        let r = follow_segment(&c, &y0, &y1, &start, &opts).unwrap();
        let mut rng_state = 12345u64;
        for w in r.snapshots.windows(2) {
            for _ in 0..8 {
                rng_state = rng_state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let frac = rat(((rng_state >> 33) % 999 + 1) as i64, 1000);
                let t = &w[0].t + (&w[1].t - &w[0].t) * frac;
                let y = &y0 + &(&y1 - &y0).scale(&t);
                assert!(frozen_certificate_holds(&c, &y, w[0].config.points()));
            }
        }
    }

    fn arb_cubic() -> impl Strategy<Value = (BivariatePoly, Point, Point)> {
        let coef = -3i64..=3;
        (
            proptest::collection::vec((coef.clone(), coef.clone(), coef.clone()), 3),
            (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3),
        )
            .prop_map(|(cs, (a, b, c, d))| {
                // X^3 + (a0 + b0 Y + c0 Y^2) X^k terms
                let fiber = vec![
                    UniPoly::from_ints(&[cs[0].0, cs[0].1, cs[0].2]),
                    UniPoly::from_ints(&[cs[1].0, cs[1].1]),
                    UniPoly::from_ints(&[cs[2].0]),
                    UniPoly::from_ints(&[1]),
                ];
                (
                    BivariatePoly::from_fiber_coeffs(fiber),
                    Point::from_ratios(2 * a + 1, 2, b, 3),
                    Point::from_ratios(2 * c - 1, 2, d, 5),
                )
            })
    }

    fn avoids_discriminant(c: &BivariatePoly, y0: &Point, y1: &Point) -> bool {
        // squarefree at both ends and no root of the discriminant on the segment
        let p = {
            let mut terms = Vec::new();
            for (k, cy) in c.fiber_coeffs().iter().enumerate() {
                for (e, v) in cy.coeffs().iter().enumerate() {
                    terms.push((vec![k as u32, e as u32], v.clone()));
                }
            }
            MultiPoly::from_terms(&["X", "Y"], terms)
        };
        let disc = crate::poly::discriminant(&p, "X").unwrap();
        let du = UniPoly::from_multi(&disc, "Y").unwrap();
        if du.is_zero() {
            return false;
        }
        let along = du.compose_affine(y0, &(y1 - y0));
        let (re, im) = along.re_im_parts();
        // common real root of re and im parts on [0, 1]
        let g = gcd_real(&re, &im);
        g.degree().unwrap_or(0) == 0 || g.count_roots(&rat_int(-1), &rat_int(2)) == 0
    }

    fn gcd_real(a: &RealPoly, b: &RealPoly) -> RealPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn permutation_consistency((c, y0, y1) in arb_cubic()) {
            prop_assume!(avoids_discriminant(&c, &y0, &y1));
            let start = vertex_configuration(&c, &y0, 0, 2).unwrap();
            let r = follow_segment(&c, &y0, &y1, &start, &FollowOptions::default()).unwrap();
            let perm = r.word.permutation();
            let mut end_order: Vec<usize> = (0..3).collect();
            end_order.sort_by(|&a, &b| r.end.points()[a].lex_cmp(&r.end.points()[b]));
            // start points are sorted, so string index = start position
            prop_assert_eq!(perm, end_order);
            // arriving at the far end, every point isolates a root of the end configuration
            let target = vertex_configuration(&c, &y1, 1, 2).unwrap();
            let back = connect(&r.end, &target).unwrap();
            let mut total = r.word.clone();
            total.append(&back);
            let again = follow_segment(&c, &y1, &y0, &target, &FollowOptions::default()).unwrap();
            let mut closed = total.clone();
            closed.append(&again.word);
            closed.append(&connect(&again.end, &start).unwrap());
            prop_assert_eq!(closed.permutation(), vec![0, 1, 2]);
        }

        #[test]
        fn integer_safety_is_a_positive_multiple(
            (c, y0, y1) in arb_cubic(),
            (a, b, e) in (-20i64..=20, -20i64..=20, 1i64..=50),
        ) {
            let x = Point::from_ratios(a, 7, b, 3);
            let e2 = rat(e, 16);
            let exact = IntPoly::from_real(&safety_polynomial(&c, &y0, &y1, &x, &e2));
            let int = IntegerCurve::new(&c).safety(&y0, &y1, &x, &e2);
            prop_assert_eq!(exact.primitive(), int.primitive());
            prop_assert_eq!(exact.coeffs().first().map(|c| c.sign()), int.coeffs().first().map(|c| c.sign()));
        }

        #[test]
        fn lin_braid_permutation(
            pts in proptest::collection::btree_set((-9i64..=9, -9i64..=9), 6),
        ) {
            let v: Vec<Point> = pts.into_iter().map(|(a, b)| g(a, b)).collect();
            let (before, after) = (&v[..3], &v[3..]);
            if let Ok(w) = lin_braid(before, after) {
                let mut sb: Vec<usize> = (0..3).collect();
                sb.sort_by(|&a, &b| before[a].lex_cmp(&before[b]));
                let mut sa: Vec<usize> = (0..3).collect();
                sa.sort_by(|&a, &b| after[a].lex_cmp(&after[b]));
                let perm = w.permutation();
                let mapped: Vec<usize> = perm.iter().map(|&p| sb[p]).collect();
                prop_assert_eq!(mapped, sa);
            }
        }
    }
}
