use super::{FreeWord, GroupError, Presentation};

/// Enumeration schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Relator-based (Haselgrove–Leech–Trotter) with lookahead when the
    /// table fills up.
    #[default]
    Hlt,
    /// Definition-based with deduction processing.
    Felsch,
}

/// Complete coset table: the action of every generator on the cosets
/// `0 .. count`, coset 0 being the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    forward: Vec<Vec<u32>>,
    backward: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn count(&self) -> usize {
        self.forward.first().map_or(1, |c| c.len())
    }

    pub fn num_gens(&self) -> usize {
        self.forward.len()
    }

    /// Permutation of the cosets induced by generator `g`.
    pub fn permutation(&self, g: usize) -> &[u32] {
        &self.forward[g]
    }

    pub fn act(&self, coset: usize, letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.forward[g][coset] as usize
        } else {
            self.backward[g][coset] as usize
        }
    }

    pub fn apply(&self, coset: usize, w: &FreeWord) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }
}

const NONE: u32 = 0;

#[derive(Debug)]
struct Full;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    defined: usize,
    live: usize,
    max: usize,
    queue: Vec<u32>,
    deductions: Vec<(u32, usize)>,
    track_deductions: bool,
}

fn col(l: i32) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
}

impl Enumerator {
    fn new(ngens: usize, max: usize) -> Self {
        let ncols = 2 * ngens;
        // Row 0 is a sentinel; coset 1 is the subgroup.
        Enumerator {
            ncols,
            table: vec![NONE; 2 * ncols],
            parent: vec![0, 1],
            defined: 1,
            live: 1,
            max,
            queue: Vec::new(),
            deductions: Vec::new(),
            track_deductions: false,
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Full> {
        if self.defined >= self.max {
            return Err(Full);
        }
        self.defined += 1;
        self.live += 1;
        let d = self.defined as u32;
        self.table.resize((self.defined + 1) * self.ncols, NONE);
        self.parent.push(d);
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        if self.track_deductions {
            self.deductions.push((c, x));
        }
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                if self.get(d, x ^ 1) == g {
                    self.set(d, x ^ 1, NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != NONE {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                        if self.track_deductions {
                            self.deductions.push((mu, x));
                        }
                    }
                }
            }
        }
    }

    /// Traces `w` from `a` in both directions; closes a single gap as a
    /// deduction, or records a coincidence. With `fill`, gaps are bridged
    /// by new cosets.
    fn scan(&mut self, a: u32, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while i as isize <= j {
                let n = self.get(f, w[i]);
                if n == NONE {
                    break;
                }
                f = n;
                i += 1;
            }
            if i as isize > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Ok(());
            }
            while j >= i as isize {
                let n = self.get(b, w[j as usize] ^ 1);
                if n == NONE {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = w[i];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                if self.track_deductions {
                    self.deductions.push((f, x));
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Renumbers the live cosets in order; returns the old-to-new map.
    fn compact(&mut self) -> Vec<u32> {
        let mut map = vec![NONE; self.defined + 1];
        let mut next = 0u32;
        for c in 1..=self.defined as u32 {
            if self.is_live(c) {
                next += 1;
                map[c as usize] = next;
            }
        }
        let mut table = vec![NONE; (next as usize + 1) * self.ncols];
        for c in 1..=self.defined as u32 {
            let m = map[c as usize];
            if m == NONE {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.get(c, x);
                table[m as usize * self.ncols + x] = if v == NONE { NONE } else { map[v as usize] };
            }
        }
        self.table = table;
        self.defined = next as usize;
        self.live = next as usize;
        self.parent = (0..=next).collect();
        self.deductions.clear();
        map
    }

    fn finish(mut self, ngens: usize) -> CosetTable {
        self.compact();
        let n = self.defined;
        let mut forward = vec![vec![0u32; n]; ngens];
        let mut backward = vec![vec![0u32; n]; ngens];
        for c in 1..=n as u32 {
            for g in 0..ngens {
                forward[g][c as usize - 1] = self.get(c, 2 * g) - 1;
                backward[g][c as usize - 1] = self.get(c, 2 * g + 1) - 1;
            }
        }
        CosetTable { forward, backward }
    }
}

/// Index of the subgroup generated by `subgroup` in the group presented by
/// `p`, with the full coset table. Fails with [`GroupError::Overflow`]
/// once more than `max_cosets` cosets would be live at once.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup: &[FreeWord],
    max_cosets: usize,
) -> Result<CosetTable, GroupError> {
    todd_coxeter_with(p, subgroup, max_cosets, Strategy::Hlt)
}

pub fn todd_coxeter_with(
    p: &Presentation,
    subgroup: &[FreeWord],
    max_cosets: usize,
    strategy: Strategy,
) -> Result<CosetTable, GroupError> {
    let ngens = p.num_gens();
    let to_cols = |w: &FreeWord| w.letters().iter().map(|&l| col(l)).collect::<Vec<usize>>();
    let relators: Vec<Vec<usize>> = p.relators().iter().map(to_cols).collect();
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect();
    let overflow = GroupError::Overflow { limit: max_cosets };
    let mut e = Enumerator::new(ngens, max_cosets.max(1));
    match strategy {
        Strategy::Hlt => hlt(&mut e, &relators, &subgroup).map_err(|_| overflow)?,
        Strategy::Felsch => felsch(&mut e, &relators, &subgroup).map_err(|_| overflow)?,
    }
    Ok(e.finish(ngens))
}

/// Scans every relator at every live coset without defining anything,
/// then compacts. Returns the position of `a` (or the next live coset)
/// after renumbering, or `Full` when nothing was freed.
fn lookahead(e: &mut Enumerator, relators: &[Vec<usize>], a: u32) -> Result<u32, Full> {
    let before = e.defined;
    let mut c = 1u32;
    while c as usize <= e.defined {
        if e.is_live(c) {
            for r in relators {
                e.scan(c, r, false)?;
                if !e.is_live(c) {
                    break;
                }
            }
        }
        c += 1;
    }
    if e.live == before {
        return Err(Full);
    }
    let map = e.compact();
    let next = (a as usize..map.len())
        .find(|&i| map[i] != NONE)
        .map_or(e.defined as u32 + 1, |i| map[i]);
    Ok(next)
}

fn hlt(e: &mut Enumerator, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<(), Full> {
    loop {
        let mut ok = true;
        for w in subgroup {
            if e.scan(1, w, true).is_err() {
                ok = false;
                break;
            }
        }
        if ok {
            break;
        }
        lookahead(e, relators, 1)?;
    }
    let mut a = 1u32;
    while a as usize <= e.defined {
        if !e.is_live(a) {
            a += 1;
            continue;
        }
        match hlt_row(e, relators, a) {
            Ok(()) => a += 1,
            Err(Full) => a = lookahead(e, relators, a)?,
        }
    }
    Ok(())
}

fn hlt_row(e: &mut Enumerator, relators: &[Vec<usize>], a: u32) -> Result<(), Full> {
    for r in relators {
        e.scan(a, r, true)?;
        if !e.is_live(a) {
            return Ok(());
        }
    }
    for x in 0..e.ncols {
        if e.get(a, x) == NONE {
            e.define(a, x)?;
        }
    }
    Ok(())
}

fn felsch(
    e: &mut Enumerator,
    relators: &[Vec<usize>],
    subgroup: &[Vec<usize>],
) -> Result<(), Full> {
    e.track_deductions = true;
    // Every cyclic conjugate of every relator and its inverse, filed under
    // its first letter.
    let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); e.ncols];
    for r in relators {
        let inv: Vec<usize> = r.iter().rev().map(|x| x ^ 1).collect();
        for w in [r.clone(), inv] {
            for k in 0..w.len() {
                let rot: Vec<usize> = w[k..].iter().chain(&w[..k]).copied().collect();
                if !by_first[rot[0]].contains(&rot) {
                    by_first[rot[0]].push(rot);
                }
            }
        }
    }
    for w in subgroup {
        fill_subgroup(e, w)?;
    }
    process_deductions(e, &by_first, subgroup);
    let mut a = 1u32;
    while a as usize <= e.defined {
        if !e.is_live(a) {
            a += 1;
            continue;
        }
        let mut x = 0;
        while x < e.ncols && e.is_live(a) {
            if e.get(a, x) == NONE {
                if e.defined >= e.max {
                    let map = e.compact();
                    if e.defined >= e.max {
                        return Err(Full);
                    }
                    a = (a as usize..map.len())
                        .find(|&i| map[i] != NONE)
                        .map_or(e.defined as u32 + 1, |i| map[i]);
                    break;
                }
                e.define(a, x)?;
                process_deductions(e, &by_first, subgroup);
            }
            x += 1;
        }
        if x == e.ncols || !e.is_live(a) {
            a += 1;
        }
    }
    Ok(())
}

fn fill_subgroup(e: &mut Enumerator, w: &[usize]) -> Result<(), Full> {
    e.scan(1, w, true)
}

fn process_deductions(e: &mut Enumerator, by_first: &[Vec<Vec<usize>>], subgroup: &[Vec<usize>]) {
    while let Some((c, x)) = e.deductions.pop() {
        if !subgroup.is_empty() {
            for w in subgroup {
                let _ = e.scan(1, w, false);
            }
        }
        let c = if e.is_live(c) { c } else { continue };
        for r in &by_first[x] {
            let _ = e.scan(c, r, false);
            if !e.is_live(c) {
                break;
            }
        }
        let d = e.get(c, x);
        if d != NONE && e.is_live(d) {
            for r in &by_first[x ^ 1] {
                let _ = e.scan(d, r, false);
                if !e.is_live(d) {
                    break;
                }
            }
        }
    }
}

/// Whether the image of `w` in the regular permutation representation of
/// the quotient by `extra` commutes with every generator.
pub fn central_in_quotient(
    p: &Presentation,
    extra: &[FreeWord],
    w: &FreeWord,
    max_cosets: usize,
) -> Result<bool, GroupError> {
    let mut q = p.clone();
    for r in extra {
        q.add_relator(r.clone());
    }
    let t = todd_coxeter(&q, &[], max_cosets)?;
    Ok(is_central(&t, w))
}

/// Centrality of `w` in the group acting on the cosets of `t`.
pub fn is_central(t: &CosetTable, w: &FreeWord) -> bool {
    let img: Vec<usize> = (0..t.count()).map(|c| t.apply(c, w)).collect();
    (0..t.num_gens()).all(|g| {
        let perm = t.permutation(g);
        (0..t.count()).all(|c| img[perm[c] as usize] == perm[img[c]] as usize)
    })
}
