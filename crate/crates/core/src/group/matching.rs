use super::{FreeWord, Presentation};

fn canonical_multiset<'a>(
    rels: impl Iterator<Item = &'a FreeWord>,
    map: &[usize],
    invert: bool,
) -> Vec<FreeWord> {
    let mut v: Vec<FreeWord> = rels
        .map(|r| r.relabel(map, invert).cyclic_canonical())
        .collect();
    v.sort();
    v
}

/// True when a bijection of generators, optionally followed by inverting
/// every generator, carries the relators of `p` onto those of `q` up to
/// rotation and inversion of each relator. A sufficient condition for
/// isomorphism only.
pub fn presentations_match(p: &Presentation, q: &Presentation) -> bool {
    let n = p.num_gens();
    if n != q.num_gens() || p.relators().len() != q.relators().len() {
        return false;
    }
    let identity: Vec<usize> = (0..n).collect();
    let target = canonical_multiset(q.relators().iter(), &identity, false);
    let mut perm = identity;
    loop {
        for invert in [false, true] {
            if canonical_multiset(p.relators().iter(), &perm, invert) == target {
                return true;
            }
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
