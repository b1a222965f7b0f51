use std::fmt;

use super::word::FreeWord;
use super::GroupError;
use crate::monodromy::BraidWord;

/// Finitely presented group. Relators are kept freely and cyclically
/// reduced, and empty relators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    gens: Vec<String>,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(gens: Vec<String>, relators: impl IntoIterator<Item = FreeWord>) -> Self {
        let mut p = Presentation {
            gens,
            relators: Vec::new(),
        };
        for r in relators {
            p.add_relator(r);
        }
        p
    }

    pub fn free(gens: Vec<String>) -> Self {
        Presentation::new(gens, [])
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn add_relator(&mut self, r: FreeWord) {
        let r = r.cyclically_reduced();
        if !r.is_empty() {
            self.relators.push(r);
        }
    }

    /// Sum of relator lengths.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    /// Builds a presentation from relations such as `"sts=tst"` or
    /// `"abc=bca=cab"` over one-letter generator names; an apostrophe
    /// after a letter inverts it.
    pub fn from_relations(gens: &str, relations: &[&str]) -> Result<Self, GroupError> {
        let names: Vec<String> = gens
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_string())
            .collect();
        let word = |s: &str| -> Result<FreeWord, GroupError> {
            let mut letters = Vec::new();
            for c in s.chars().filter(|c| !c.is_whitespace()) {
                if c == '\'' {
                    let last: &mut i32 = letters.last_mut().ok_or_else(|| GroupError::Parse {
                        line: 0,
                        reason: format!("dangling `'` in `{}`", s),
                    })?;
                    *last = -*last;
                    continue;
                }
                let g = names.iter().position(|n| n.starts_with(c)).ok_or_else(|| {
                    GroupError::Parse {
                        line: 0,
                        reason: format!("unknown generator `{}` in `{}`", c, s),
                    }
                })?;
                letters.push(g as i32 + 1);
            }
            Ok(FreeWord::new(letters))
        };
        let mut rels = Vec::new();
        for rel in relations {
            let sides = rel.split('=').map(word).collect::<Result<Vec<_>, _>>()?;
            for pair in sides.windows(2) {
                rels.push(pair[0].mul(&pair[1].inverse()));
            }
            if sides.len() == 1 {
                rels.push(sides[0].clone());
            }
        }
        Ok(Presentation::new(names, rels))
    }

    /// Word over this presentation's generator names, in the relation
    /// syntax of [`Presentation::from_relations`] (one-letter names) or as
    /// space-separated names.
    pub fn parse_word(&self, s: &str) -> Result<FreeWord, GroupError> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let single = tokens.len() == 1 && self.gens.iter().all(|g| g.chars().count() == 1);
        let mut letters: Vec<i32> = Vec::new();
        let err = |t: &str| GroupError::Parse {
            line: 0,
            reason: format!("unknown generator `{}`", t),
        };
        if single {
            for c in tokens[0].chars() {
                if c == '\'' {
                    if let Some(l) = letters.last_mut() {
                        *l = -*l;
                    }
                    continue;
                }
                let g = self
                    .gen_index(&c.to_string())
                    .ok_or_else(|| err(&c.to_string()))?;
                letters.push(g as i32 + 1);
            }
        } else {
            for t in tokens {
                let (name, inv) = match t.strip_suffix('\'') {
                    Some(n) => (n, true),
                    None => (t, false),
                };
                let g = self.gen_index(name).ok_or_else(|| err(t))? as i32 + 1;
                letters.push(if inv { -g } else { g });
            }
        }
        Ok(FreeWord::new(letters))
    }

    /// Adds `g^2` for every generator.
    pub fn with_quadratics(&self) -> Self {
        let mut p = self.clone();
        for g in 0..self.gens.len() {
            p.add_relator(FreeWord::generator(g).pow(2));
        }
        p
    }

    /// Drops relator `i`.
    pub fn without_relator(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.relators.remove(i);
        p
    }

    /// Parses the text format:
    ///
    /// ```text
    /// gens: s t u
    /// s t s t' s' t'
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut gens: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match &gens {
                None => {
                    let rest = line
                        .strip_prefix("gens:")
                        .ok_or_else(|| GroupError::Parse {
                            line: line_no,
                            reason: "expected `gens:` header".into(),
                        })?;
                    let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    for (i, n) in names.iter().enumerate() {
                        if n.contains('\'') || names[..i].contains(n) {
                            return Err(GroupError::Parse {
                                line: line_no,
                                reason: format!("bad or repeated generator `{}`", n),
                            });
                        }
                    }
                    gens = Some(names);
                }
                Some(names) => {
                    let mut letters = Vec::new();
                    for t in line.split_whitespace() {
                        let (name, inv) = match t.strip_suffix('\'') {
                            Some(n) => (n, true),
                            None => (t, false),
                        };
                        let g = names.iter().position(|n| n == name).ok_or_else(|| {
                            GroupError::Parse {
                                line: line_no,
                                reason: format!("unknown generator `{}`", name),
                            }
                        })? as i32
                            + 1;
                        letters.push(if inv { -g } else { g });
                    }
                    rels.push(FreeWord::new(letters));
                }
            }
        }
        let gens = gens.ok_or(GroupError::Parse {
            line: 0,
            reason: "missing `gens:` header".into(),
        })?;
        Ok(Presentation::new(gens, rels))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.gens.join(" "))?;
        for r in &self.relators {
            writeln!(f, "{}", r.display(&self.gens))?;
        }
        Ok(())
    }
}

/// Right action of a braid on a tuple of words: `sigma_i` sends
/// `(w_i, w_{i+1})` to `(w_i w_{i+1} w_i^-1, w_i)`, letters applied left
/// to right.
pub fn hurwitz_act(b: &BraidWord, words: &[FreeWord]) -> Result<Vec<FreeWord>, GroupError> {
    if words.len() != b.strands() {
        return Err(GroupError::StrandMismatch {
            strands: b.strands(),
            words: words.len(),
        });
    }
    let mut w = words.to_vec();
    for &l in b.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let (a, c) = (w[i].clone(), w[i + 1].clone());
        if l > 0 {
            w[i] = a.mul(&c).mul(&a.inverse());
            w[i + 1] = a;
        } else {
            w[i] = c.clone();
            w[i + 1] = c.inverse().mul(&a).mul(&c);
        }
    }
    Ok(w)
}

/// Generators `x1 .. xn` and, for each braid `b` and each `j`, the relator
/// `x_j^-1 b(x_j)`.
pub fn vankampen(n: usize, braids: &[BraidWord]) -> Result<Presentation, GroupError> {
    let gens: Vec<String> = (1..=n).map(|i| format!("x{}", i)).collect();
    let xs: Vec<FreeWord> = (0..n).map(FreeWord::generator).collect();
    let mut rels = Vec::new();
    for b in braids {
        let img = hurwitz_act(b, &xs)?;
        for (x, y) in xs.iter().zip(img) {
            rels.push(x.inverse().mul(&y));
        }
    }
    Ok(Presentation::new(gens, rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(ls: &[i32]) -> FreeWord {
        FreeWord::new(ls.iter().copied())
    }

    #[test]
    fn hurwitz_examples() {
        let ab = [w(&[1]), w(&[2])];
        assert_eq!(
            hurwitz_act(&BraidWord::identity(2), &ab).unwrap(),
            ab.to_vec()
        );
        let s1 = BraidWord::new(2, vec![1]).unwrap();
        assert_eq!(
            hurwitz_act(&s1, &ab).unwrap(),
            vec![w(&[1, 2, -1]), w(&[1])]
        );
        let back = hurwitz_act(&BraidWord::new(2, vec![1, -1]).unwrap(), &ab).unwrap();
        assert_eq!(back, ab.to_vec());
        assert!(hurwitz_act(&s1, &[w(&[1])]).is_err());
    }

    #[test]
    fn braid_relation_on_generators() {
        let abc = [w(&[1]), w(&[2]), w(&[3])];
        let l = hurwitz_act(&BraidWord::new(3, vec![1, 2, 1]).unwrap(), &abc).unwrap();
        let r = hurwitz_act(&BraidWord::new(3, vec![2, 1, 2]).unwrap(), &abc).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn vankampen_examples() {
        assert_eq!(vankampen(3, &[]).unwrap().relators().len(), 0);
        let p = vankampen(2, &[BraidWord::new(2, vec![1]).unwrap()]).unwrap();
        assert_eq!(p.relators(), &[w(&[2, -1]), w(&[-2, 1])]);
        let t = vankampen(2, &[BraidWord::new(2, vec![1, 1, 1]).unwrap()]).unwrap();
        let braid_rel = w(&[1, 2, 1, -2, -1, -2]).cyclic_canonical();
        assert!(t
            .relators()
            .iter()
            .all(|r| r.cyclic_canonical() == braid_rel));
    }

    #[test]
    fn text_round_trip() {
        let text = "gens: s t u\ns t s t' s' t'\nu u\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
        let e = Presentation::parse("gens: a\na b\n").unwrap_err();
        assert!(matches!(e, GroupError::Parse { line: 2, .. }));
        assert!(Presentation::parse("a b\n").is_err());
    }

    #[test]
    fn relations_syntax() {
        let p = Presentation::from_relations("stu", &["sts=tst", "stu=tus=ust"]).unwrap();
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[0], w(&[1, 2, 1, -2, -1, -2]));
        assert_eq!(p.parse_word("stu'").unwrap(), w(&[1, 2, -3]));
    }

    fn arb_word(ngens: i32) -> impl Strategy<Value = FreeWord> {
        proptest::collection::vec((1..=ngens, any::<bool>()), 0..6)
            .prop_map(|ls| FreeWord::new(ls.into_iter().map(|(g, s)| if s { g } else { -g })))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn hurwitz_respects_braid_relations(
            ws in proptest::collection::vec(arb_word(4), 4),
            i in 1i32..=2,
            j in 1i32..=3,
        ) {
            let act = |ls: Vec<i32>| hurwitz_act(&BraidWord::new(4, ls).unwrap(), &ws).unwrap();
            prop_assert_eq!(act(vec![i, i + 1, i]), act(vec![i + 1, i, i + 1]));
            if (i - j).abs() >= 2 {
                prop_assert_eq!(act(vec![i, j]), act(vec![j, i]));
            }
            prop_assert_eq!(act(vec![1, 3]), act(vec![3, 1]));
            prop_assert_eq!(act(vec![j, -j]), ws.clone());
        }
    }
}
