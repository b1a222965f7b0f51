use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FreeWord, Presentation};

/// Consecutive equal-length moves allowed before the search stops.
const PLATEAU: usize = 10;

/// Shortens `p` by Tietze transformations: duplicate relators are
/// dropped, generators that occur once in some relator are eliminated when
/// that does not lengthen the presentation, long common pieces of
/// relators are cancelled, and generators are replaced by conjugates by
/// other generators while the total length decreases (ties broken by
/// `seed`). `budget` bounds the number of conjugation moves.
pub fn tietze_simplify(p: &Presentation, seed: u64, budget: usize) -> Presentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = reduce(p.clone());
    let mut best = cur.clone();
    let mut seen: HashSet<Vec<FreeWord>> = HashSet::new();
    seen.insert(state_key(&cur));
    let mut plateau = 0;
    for _ in 0..budget {
        let total = cur.total_length();
        let mut cands: Vec<(usize, Presentation)> = Vec::new();
        for a in 0..cur.num_gens() {
            for b in 0..cur.num_gens() {
                if a == b {
                    continue;
                }
                for e in [1, -1] {
                    let q = reduce(conjugate_generator(&cur, a, b, e));
                    let key = state_key(&q);
                    if !seen.contains(&key) {
                        cands.push((q.total_length(), q));
                    }
                }
            }
        }
        let Some(min) = cands.iter().map(|c| c.0).min() else {
            break;
        };
        if min > total || (min == total && plateau >= PLATEAU) {
            break;
        }
        plateau = if min < total { 0 } else { plateau + 1 };
        let mut ties: Vec<Presentation> = cands
            .into_iter()
            .filter(|c| c.0 == min)
            .map(|c| c.1)
            .collect();
        ties.sort_by_key(state_key);
        cur = ties.choose(&mut rng).unwrap().clone();
        seen.insert(state_key(&cur));
        if better(&cur, &best) {
            best = cur.clone();
        }
    }
    finalize(best)
}

fn better(a: &Presentation, b: &Presentation) -> bool {
    (a.num_gens(), a.total_length(), a.relators().len())
        < (b.num_gens(), b.total_length(), b.relators().len())
}

fn state_key(p: &Presentation) -> Vec<FreeWord> {
    let mut v: Vec<FreeWord> = p.relators().iter().map(|r| r.cyclic_canonical()).collect();
    v.sort();
    v.push(FreeWord::new(std::iter::repeat_n(1, p.num_gens())));
    v
}

/// Substitutes `a -> b^e a b^-e` everywhere.
fn conjugate_generator(p: &Presentation, a: usize, b: usize, e: i32) -> Presentation {
    let mut images: Vec<FreeWord> = (0..p.num_gens()).map(FreeWord::generator).collect();
    images[a] = images[a].conjugate_by(&FreeWord::generator(b).pow(e));
    Presentation::new(
        p.gens().to_vec(),
        p.relators().iter().map(|r| r.substitute(&images)),
    )
}

/// Repeats cheap length-reducing moves until none applies.
fn reduce(mut p: Presentation) -> Presentation {
    loop {
        p = dedupe(p);
        if let Some(q) = eliminate(&p) {
            p = q;
            continue;
        }
        if let Some(q) = cancel_pieces(&p) {
            p = q;
            continue;
        }
        return p;
    }
}

fn dedupe(p: Presentation) -> Presentation {
    let mut seen = HashSet::new();
    let rels: Vec<FreeWord> = p
        .relators()
        .iter()
        .filter(|r| seen.insert(r.cyclic_canonical()))
        .cloned()
        .collect();
    Presentation::new(p.gens().to_vec(), rels)
}

/// Removes a generator occurring exactly once in some relator, choosing
/// the removal that leaves the shortest presentation; declines if every
/// choice lengthens it.
fn eliminate(p: &Presentation) -> Option<Presentation> {
    let total = p.total_length();
    let mut best: Option<Presentation> = None;
    for (ri, r) in p.relators().iter().enumerate() {
        for g in 0..p.num_gens() {
            if r.occurrences(g) != 1 {
                continue;
            }
            let q = eliminate_with(p, ri, g);
            if q.total_length() <= total
                && best
                    .as_ref()
                    .is_none_or(|b| q.total_length() < b.total_length())
            {
                best = Some(q);
            }
        }
    }
    best
}

fn eliminate_with(p: &Presentation, ri: usize, g: usize) -> Presentation {
    let r = p.relators()[ri].letters();
    let pos = r
        .iter()
        .position(|l| l.unsigned_abs() as usize == g + 1)
        .unwrap();
    // r rotated to g^e u, so g = (u^-1)^e.
    let u = FreeWord::new(r[pos + 1..].iter().chain(&r[..pos]).copied());
    let value = if r[pos] > 0 { u.inverse() } else { u };
    let mut images: Vec<FreeWord> = (0..p.num_gens()).map(FreeWord::generator).collect();
    images[g] = value;
    // Renumber the surviving generators.
    let map: Vec<usize> = (0..p.num_gens())
        .map(|h| if h > g { h - 1 } else { h })
        .collect();
    let rels = p
        .relators()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != ri)
        .map(|(_, s)| s.substitute(&images).relabel(&map, false));
    let mut gens = p.gens().to_vec();
    gens.remove(g);
    Presentation::new(gens, rels)
}

/// Finds relators `r`, `s` where more than half of a cyclic conjugate of
/// `r^{+-1}` appears in `s` cyclically, and replaces that piece of `s` by
/// the inverse of the rest of `r`.
fn cancel_pieces(p: &Presentation) -> Option<Presentation> {
    let rels = p.relators();
    for (ri, r) in rels.iter().enumerate() {
        let len = r.len();
        for (si, s) in rels.iter().enumerate() {
            if si == ri || s.len() < len / 2 + 1 {
                continue;
            }
            if let Some(new_s) = cancel_in(r, s) {
                let mut out: Vec<FreeWord> = rels.to_vec();
                out[si] = new_s;
                return Some(Presentation::new(p.gens().to_vec(), out));
            }
        }
    }
    None
}

fn cancel_in(r: &FreeWord, s: &FreeWord) -> Option<FreeWord> {
    let len = r.len();
    let sl = s.letters();
    let n = sl.len();
    let doubled: Vec<i32> = sl.iter().chain(sl).copied().collect();
    for k in (len / 2 + 1..=len.min(n)).rev() {
        for w in [r.clone(), r.inverse()] {
            let wl = w.letters();
            for rot in 0..len {
                let u: Vec<i32> = wl[rot..].iter().chain(&wl[..rot]).copied().collect();
                let piece = &u[..k];
                if let Some(at) = (0..n).find(|&i| &doubled[i..i + k] == piece) {
                    // s = piece * rest (cyclically); piece = (u[k..])^-1.
                    let rest = doubled[at + k..at + n].iter().copied();
                    let repl = FreeWord::new(u[k..].iter().copied()).inverse();
                    let new_s = repl.mul(&FreeWord::new(rest)).cyclically_reduced();
                    if new_s.len() < n {
                        return Some(new_s);
                    }
                }
            }
        }
    }
    None
}

fn finalize(p: Presentation) -> Presentation {
    let mut rels: Vec<FreeWord> = p.relators().iter().map(|r| r.cyclic_canonical()).collect();
    rels.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    rels.dedup();
    Presentation::new(p.gens().to_vec(), rels)
}
