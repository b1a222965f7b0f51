use std::fmt;

/// Freely reduced word; letter `k > 0` is generator `k - 1`, `-k` its
/// inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<i32>);

/// Sort key for letters: `x_0 < x_0^-1 < x_1 < ...`.
fn letter_key(l: i32) -> u32 {
    2 * (l.unsigned_abs() - 1) + u32::from(l < 0)
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// Reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn generator(g: usize) -> Self {
        FreeWord(vec![g as i32 + 1])
    }

    fn push(&mut self, l: i32) {
        assert!(l != 0, "letter 0 is not a generator");
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `h self h^-1`
    pub fn conjugate_by(&self, h: &FreeWord) -> Self {
        h.mul(self).mul(&h.inverse())
    }

    /// Strips inverse pairs between the two ends.
    pub fn cyclically_reduced(&self) -> Self {
        let v = &self.0;
        let (mut i, mut j) = (0, v.len());
        while j > i + 1 && v[i] == -v[j - 1] {
            i += 1;
            j -= 1;
        }
        FreeWord(v[i..j].to_vec())
    }

    /// Least rotation of the cyclic reduction of the word or its inverse,
    /// comparing letters as `x_0 < x_0^-1 < x_1 < ...`: equal for relators
    /// that define the same normal closure by rotation and inversion.
    pub fn cyclic_canonical(&self) -> Self {
        let r = self.cyclically_reduced();
        if r.is_empty() {
            return r;
        }
        let mut best: Option<Vec<i32>> = None;
        for cand in [r.0.clone(), r.inverse().0] {
            for k in 0..cand.len() {
                let rot: Vec<i32> = cand[k..].iter().chain(&cand[..k]).copied().collect();
                let better = match &best {
                    None => true,
                    Some(b) => rot
                        .iter()
                        .map(|&l| letter_key(l))
                        .lt(b.iter().map(|&l| letter_key(l))),
                };
                if better {
                    best = Some(rot);
                }
            }
        }
        FreeWord(best.unwrap())
    }

    /// Exponent sum of every generator.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut s = vec![0; ngens];
        for &l in &self.0 {
            s[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
        }
        s
    }

    /// Number of occurrences of generator `g` (either sign).
    pub fn occurrences(&self, g: usize) -> usize {
        self.0
            .iter()
            .filter(|l| l.unsigned_abs() as usize == g + 1)
            .count()
    }

    /// Replaces each generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut w = FreeWord::identity();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                w = w.mul(img);
            } else {
                w = w.mul(&img.inverse());
            }
        }
        w
    }

    /// Renames generators through `map` (generator `g` becomes `map[g]`,
    /// inverted when `invert` is set).
    pub fn relabel(&self, map: &[usize], invert: bool) -> Self {
        FreeWord::new(self.0.iter().map(|&l| {
            let g = map[l.unsigned_abs() as usize - 1] as i32 + 1;
            if (l < 0) != invert {
                -g
            } else {
                g
            }
        }))
    }

    /// Word in generator names, `'` marking inverses: `s t s' t'`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWord { w: self, names }
    }
}

struct DisplayWord<'a> {
    w: &'a FreeWord,
    names: &'a [String],
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &l) in self.w.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.names[l.unsigned_abs() as usize - 1])?;
            if l < 0 {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}
