use std::fmt;

use super::FreeProdError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    A,
    B,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::A => Factor::B,
            Factor::B => Factor::A,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::A => "A",
            Factor::B => "B",
        })
    }
}

/// Ranks of the free abelian factors `H_A ≅ Z^n` and `H_B ≅ Z^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Presentation {
    rank_a: usize,
    rank_b: usize,
}

impl Presentation {
    pub fn new(rank_a: usize, rank_b: usize) -> Result<Self, FreeProdError> {
        if rank_a == 0 || rank_b == 0 {
            return Err(FreeProdError::ZeroRank);
        }
        Ok(Self { rank_a, rank_b })
    }

    pub fn cyclic() -> Self {
        Self { rank_a: 1, rank_b: 1 }
    }

    pub fn rank(&self, f: Factor) -> usize {
        match f {
            Factor::A => self.rank_a,
            Factor::B => self.rank_b,
        }
    }

    /// Parses `A(2)B(-1,3)A(1)`; `1`, `identity` and the empty string are
    /// the identity. The result is put in normal form.
    pub fn parse(&self, s: &str) -> Result<Word, FreeProdError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "1" || s == "identity" {
            return Ok(Word::identity());
        }
        let mut raw = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let factor = match rest.as_bytes()[0] {
                b'A' | b'a' => Factor::A,
                b'B' | b'b' => Factor::B,
                _ => return Err(FreeProdError::Parse(format!("expected A( or B( at {rest:?}"))),
            };
            let body = rest[1..]
                .strip_prefix('(')
                .ok_or_else(|| FreeProdError::Parse(format!("missing '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| FreeProdError::Parse(format!("missing ')' in {rest:?}")))?;
            let exps = body[..close]
                .split(',')
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| FreeProdError::Parse(format!("bad exponent {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if exps.len() != self.rank(factor) {
                return Err(FreeProdError::RankMismatch {
                    factor,
                    expected: self.rank(factor),
                    got: exps.len(),
                });
            }
            raw.push(Syllable::new(factor, exps));
            rest = &body[close + 1..];
        }
        Ok(normal_form(raw))
    }
}

/// One factor element: an exponent vector in `Z^rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: Factor,
    pub exps: Vec<i64>,
}

impl Syllable {
    pub fn new(factor: Factor, exps: Vec<i64>) -> Self {
        Self { factor, exps }
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn l1(&self) -> u64 {
        self.exps.iter().map(|e| e.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.factor, self.exps.iter().map(|e| -e).collect())
    }

    fn absorb(&mut self, other: &Syllable) {
        for (x, y) in self.exps.iter_mut().zip(&other.exps) {
            *x += y;
        }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        write!(f, "{}({})", self.factor, body.join(","))
    }
}

/// Element of `H_A * H_B` in normal form: alternating factors, no zero
/// syllable. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Merges adjacent same-factor syllables and drops zero syllables until
/// neither applies.
pub fn normal_form(raw: impl IntoIterator<Item = Syllable>) -> Word {
    let mut stack: Vec<Syllable> = Vec::new();
    for s in raw {
        if s.is_zero() {
            continue;
        }
        match stack.last_mut() {
            Some(top) if top.factor == s.factor => {
                top.absorb(&s);
                if top.is_zero() {
                    stack.pop();
                }
            }
            _ => stack.push(s),
        }
    }
    Word { syllables: stack }
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn syllable(factor: Factor, exps: Vec<i64>) -> Self {
        normal_form([Syllable::new(factor, exps)])
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Sum of the L¹ norms of the syllables.
    pub fn l1_length(&self) -> u64 {
        self.syllables.iter().map(Syllable::l1).sum()
    }

    pub fn first_factor(&self) -> Option<Factor> {
        self.syllables.first().map(|s| s.factor)
    }

    pub fn last_factor(&self) -> Option<Factor> {
        self.syllables.last().map(|s| s.factor)
    }

    pub fn mul(&self, other: &Word) -> Word {
        normal_form(self.syllables.iter().chain(&other.syllables).cloned())
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(Syllable::inverse).collect(),
        }
    }

    /// `self⁻¹ · other`.
    pub fn left_divide(&self, other: &Word) -> Word {
        self.inverse().mul(other)
    }

    /// Drops a trailing syllable in `factor`: the shortest representative of
    /// the coset `self · H_factor`.
    pub fn coset_rep(&self, factor: Factor) -> Word {
        let mut syllables = self.syllables.clone();
        if syllables.last().is_some_and(|s| s.factor == factor) {
            syllables.pop();
        }
        Word { syllables }
    }

    /// Returns `(r, c)` with `self = c · r · c⁻¹` and `r` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut r = self.clone();
        let mut c = Word::identity();
        while r.syllables.len() >= 2
            && r.syllables.first().map(|s| s.factor) == r.syllables.last().map(|s| s.factor)
        {
            let head = Word {
                syllables: vec![r.syllables[0].clone()],
            };
            r = head.inverse().mul(&r).mul(&head);
            c = c.mul(&head);
        }
        (r, c)
    }

    /// Conjugate into a factor: cyclic reduction leaves at most one syllable.
    pub fn is_conjugate_into_factor(&self) -> bool {
        self.cyclic_reduce().0.syllable_count() <= 1
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("identity");
        }
        for s in &self.syllables {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// All nonzero exponent vectors with entries in `[-max_exp, max_exp]`, in
/// lexicographic order.
pub fn nonzero_vectors(rank: usize, max_exp: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-max_exp..=max_exp).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&e| e != 0));
    out
}

/// Every nontrivial normal-form word with `1..=max_syllables` syllables and
/// entries bounded by `max_exp`, ordered by syllable count, then starting
/// factor (A first), then syllable exponents lexicographically. Each word
/// appears once.
pub fn enumerate_words(p: &Presentation, max_syllables: usize, max_exp: i64) -> Vec<Word> {
    let vecs = [
        nonzero_vectors(p.rank(Factor::A), max_exp),
        nonzero_vectors(p.rank(Factor::B), max_exp),
    ];
    let idx = |f: Factor| match f {
        Factor::A => 0,
        Factor::B => 1,
    };
    let mut out = Vec::new();
    for len in 1..=max_syllables {
        for start in [Factor::A, Factor::B] {
            let mut layer: Vec<Vec<Syllable>> = vec![Vec::new()];
            let mut factor = start;
            for _ in 0..len {
                layer = layer
                    .into_iter()
                    .flat_map(|prefix| {
                        vecs[idx(factor)].iter().map(move |v| {
                            let mut w = prefix.clone();
                            w.push(Syllable::new(factor, v.clone()));
                            w
                        })
                    })
                    .collect();
                factor = factor.other();
            }
            out.extend(layer.into_iter().map(|syllables| Word { syllables }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(s: &str) -> Word {
        Presentation::cyclic().parse(s).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        assert!(cyc("A(2)A(-2)").is_identity());
        assert_eq!(cyc("A(2)B(3)").to_string(), "A(2)B(3)");
        assert_eq!(cyc("A(1)B(0)A(1)"), cyc("A(2)"));
        assert_eq!(cyc("B(1)A(2)A(-2)B(-1)A(5)"), cyc("A(5)"));
    }

    #[test]
    fn parse_errors_and_ranks() {
        let p = Presentation::new(2, 1).unwrap();
        assert_eq!(p.parse("A(1,-2)B(3)").unwrap().to_string(), "A(1,-2)B(3)");
        assert!(matches!(
            p.parse("A(1)"),
            Err(FreeProdError::RankMismatch { factor: Factor::A, expected: 2, got: 1 })
        ));
        assert!(p.parse("C(1)").is_err());
        assert!(p.parse("A(1,2").is_err());
        assert!(p.parse("A(x,2)").is_err());
        assert!(Presentation::new(0, 1).is_err());
        assert!(p.parse("identity").unwrap().is_identity());
    }

    #[test]
    fn group_laws() {
        let w = cyc("A(2)B(-1)A(3)");
        assert!(w.mul(&w.inverse()).is_identity());
        assert!(w.inverse().mul(&w).is_identity());
        let v = cyc("A(-3)B(4)");
        assert_eq!(w.mul(&v).to_string(), "A(2)B(3)");
    }

    #[test]
    fn cyclic_reduction() {
        let (r, c) = cyc("B(1)A(2)B(-1)").cyclic_reduce();
        assert_eq!(r, cyc("A(2)"));
        assert_eq!(c, cyc("B(1)"));
        let w = cyc("A(2)B(3)");
        assert_eq!(w.cyclic_reduce(), (w.clone(), Word::identity()));
        assert_eq!(Word::identity().cyclic_reduce(), (Word::identity(), Word::identity()));
        let w = cyc("A(1)B(2)A(3)");
        let (r, c) = w.cyclic_reduce();
        assert_eq!(r.syllable_count(), 2);
        assert_eq!(c.mul(&r).mul(&c.inverse()), w);
        assert!(cyc("B(2)A(1)B(5)A(-1)B(-2)").is_conjugate_into_factor());
        assert!(!cyc("A(1)B(1)").is_conjugate_into_factor());
    }

    #[test]
    fn enumeration_counts() {
        let p = Presentation::cyclic();
        let one: HashSet<String> = enumerate_words(&p, 1, 1).iter().map(|w| w.to_string()).collect();
        let expect: HashSet<String> = ["A(1)", "A(-1)", "B(1)", "B(-1)"].iter().map(|s| s.to_string()).collect();
        assert_eq!(one, expect);
        assert_eq!(enumerate_words(&p, 2, 1).len(), 12);
        // k syllables: 2 * (2E)^k
        let words = enumerate_words(&p, 4, 3);
        assert_eq!(words.len(), 2 * (6 + 36 + 216 + 1296));
        let distinct: HashSet<&Word> = words.iter().collect();
        assert_eq!(distinct.len(), words.len());
        assert!(words.iter().all(|w| normal_form(w.syllables().to_vec()) == *w));
        let p21 = Presentation::new(2, 1).unwrap();
        assert_eq!(enumerate_words(&p21, 1, 1).len(), 8 + 2);
    }

    #[test]
    fn coset_representatives() {
        let w = cyc("A(2)B(3)");
        assert_eq!(w.coset_rep(Factor::B), cyc("A(2)"));
        assert_eq!(w.coset_rep(Factor::A), w);
    }
}
