//! Braid words and the relators of the standard presentation of `B_n`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the Artin generators of `B_n`. Letter `g > 0` is `σ_g`, letter
/// `-g` is `σ_g⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::input(format!("braid group needs n >= 2 strands, got {strands}")));
        }
        if let Some(&bad) = letters.iter().find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands) {
            return Err(Error::input(format!(
                "letter {bad} is not a generator of B_{strands} (need 1 <= |g| <= {})",
                strands - 1
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Parses space-separated signed integers, e.g. `"1 2 -1"`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|t| i32::from_str(t).map_err(|_| Error::input(format!("bad braid letter {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::input("cannot concatenate words on different strand counts"));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|g| -g).collect() }
    }

    /// Removes adjacent `g, -g` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if out.last() == Some(&-g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Which defining relation a relator word comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelatorKind {
    /// `σ_i σ_j σ_i⁻¹ σ_j⁻¹`, `|i - j| >= 2`.
    FarCommutation { i: usize, j: usize },
    /// `σ_i σ_{i+1} σ_i σ_{i+1}⁻¹ σ_i⁻¹ σ_{i+1}⁻¹`.
    Braid { i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub kind: RelatorKind,
    pub word: BraidWord,
}

/// One word per defining relation of `B_n`; each represents the identity.
pub fn relator_instances(n: usize) -> Result<Vec<Relator>> {
    if n < 2 {
        return Err(Error::input(format!("braid group needs n >= 2 strands, got {n}")));
    }
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let (a, b) = (i as i32, i as i32 + 1);
        out.push(Relator { kind: RelatorKind::Braid { i }, word: BraidWord::new(n, vec![a, b, a, -b, -a, -b])? });
    }
    for i in 1..n {
        for j in (i + 2)..n {
            let (a, b) = (i as i32, j as i32);
            out.push(Relator {
                kind: RelatorKind::FarCommutation { i, j },
                word: BraidWord::new(n, vec![a, b, -a, -b])?,
            });
        }
    }
    Ok(out)
}

/// Deterministic pseudorandom word: uniform generator, uniform sign.
pub fn random_word(n: usize, len: usize, seed: u64) -> Result<BraidWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_word_with(n, len, &mut rng)
}

pub fn random_word_with(n: usize, len: usize, rng: &mut impl Rng) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::input(format!("braid group needs n >= 2 strands, got {n}")));
    }
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n) as i32;
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(n, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        assert!(w(3, &[1, -1]).free_reduce().is_empty());
        assert!(w(3, &[1, 2, -2, -1]).free_reduce().is_empty());
        assert_eq!(w(3, &[1, 2, 1]).free_reduce(), w(3, &[1, 2, 1]));
    }

    #[test]
    fn validation() {
        assert!(BraidWord::new(1, vec![]).is_err());
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::parse(3, "1 x").is_err());
        assert_eq!(BraidWord::parse(3, " 1 2  -1 ").unwrap(), w(3, &[1, 2, -1]));
    }

    #[test]
    fn relators_small_n() {
        assert!(relator_instances(2).unwrap().is_empty());
        let r3 = relator_instances(3).unwrap();
        assert_eq!(r3.len(), 1);
        assert_eq!(r3[0].word.letters(), &[1, 2, 1, -2, -1, -2]);
        let r4 = relator_instances(4).unwrap();
        let braids = r4.iter().filter(|r| matches!(r.kind, RelatorKind::Braid { .. })).count();
        assert_eq!(braids, 2);
        let far: Vec<_> = r4.iter().filter(|r| matches!(r.kind, RelatorKind::FarCommutation { .. })).collect();
        assert_eq!(far.len(), 1);
        assert_eq!(far[0].kind, RelatorKind::FarCommutation { i: 1, j: 3 });
        assert!(relator_instances(1).is_err());
    }

    #[test]
    fn random_word_determinism() {
        assert!(random_word(3, 0, 42).unwrap().is_empty());
        assert_eq!(random_word(5, 9, 7).unwrap(), random_word(5, 9, 7).unwrap());
        // Frozen output of ChaCha8 for this seed.
        assert_eq!(random_word(4, 6, 1).unwrap().letters(), &[2, 1, 3, -1, 3, 2]);
    }

    proptest! {
        #[test]
        fn free_reduce_idempotent_and_shrinking(letters in prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..30)) {
            let word = BraidWord::new(4, letters).unwrap();
            let once = word.free_reduce();
            prop_assert!(once.len() <= word.len());
            prop_assert_eq!(once.free_reduce(), once.clone());
            prop_assert!(word.concat(&word.inverse()).unwrap().free_reduce().is_empty());
        }
    }
}
