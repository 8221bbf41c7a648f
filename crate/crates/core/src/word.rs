//! Basis indexing for permutative representations of O₂.
//!
//! A basis vector of `P₂(J)` is a one-sided infinite word over `{1, 2}` that
//! is eventually periodic with period `J`. It is stored as a finite prefix
//! followed by the cycle of `J` entered at some phase. The cycle is tracked
//! as a cycle of positions, not of letters, so a non-primitive `J` such as
//! `11` still has `|J|` distinct pure-tail basis vectors.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    One,
    Two,
}

impl Letter {
    pub fn from_digit(c: char) -> Option<Letter> {
        match c {
            '1' => Some(Letter::One),
            '2' => Some(Letter::Two),
            _ => None,
        }
    }

    pub fn index(self) -> u64 {
        match self {
            Letter::One => 1,
            Letter::Two => 2,
        }
    }

    pub fn flip(self) -> Letter {
        match self {
            Letter::One => Letter::Two,
            Letter::Two => Letter::One,
        }
    }

    pub fn digit(self) -> char {
        match self {
            Letter::One => '1',
            Letter::Two => '2',
        }
    }
}

/// A finite word over `{1, 2}`, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteWord(pub Vec<Letter>);

impl FiniteWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FiniteWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every word of exactly `len` letters, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = FiniteWord> {
        (0u64..(1u64 << len)).map(move |bits| {
            FiniteWord(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 1 {
                            Letter::Two
                        } else {
                            Letter::One
                        }
                    })
                    .collect(),
            )
        })
    }
}

impl FromStr for FiniteWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| {
                Letter::from_digit(c)
                    .ok_or_else(|| Error::Parse(format!("letter {c:?} is not 1 or 2")))
            })
            .collect::<Result<Vec<_>>>()
            .map(FiniteWord)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.digit())?;
        }
        Ok(())
    }
}

/// Canonical eventually-periodic word `prefix · rot_phase(period)^∞`.
///
/// Invariant: the prefix is empty or its last letter differs from
/// `period[phase - 1]` (the letter that would precede the tail), so the
/// prefix cannot be absorbed into the tail.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TailWord {
    period: Arc<[Letter]>,
    phase: usize,
    prefix: Vec<Letter>,
}

impl TailWord {
    /// The pure tail of `period` entered at `phase`.
    pub fn pure(period: Arc<[Letter]>, phase: usize) -> Self {
        assert!(!period.is_empty(), "empty period");
        assert!(phase < period.len(), "phase out of range");
        TailWord {
            period,
            phase,
            prefix: Vec::new(),
        }
    }

    /// Builds and canonicalizes `prefix · rot_phase(period)^∞`.
    pub fn new(prefix: Vec<Letter>, period: Arc<[Letter]>, phase: usize) -> Self {
        let mut w = TailWord::pure(period, phase);
        w.prefix = prefix;
        w.canonicalize();
        w
    }

    fn canonicalize(&mut self) {
        let k = self.period.len();
        while let Some(&last) = self.prefix.last() {
            let before = (self.phase + k - 1) % k;
            if self.period[before] != last {
                break;
            }
            self.prefix.pop();
            self.phase = before;
        }
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn period(&self) -> &Arc<[Letter]> {
        &self.period
    }

    pub fn phase(&self) -> usize {
        self.phase
    }

    pub fn is_pure(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn first_letter(&self) -> Letter {
        match self.prefix.first() {
            Some(&l) => l,
            None => self.period[self.phase],
        }
    }

    /// The `i`-th letter (0-based) of the infinite word.
    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            let k = self.period.len();
            self.period[(self.phase + i - self.prefix.len()) % k]
        }
    }

    /// `t_i` on a basis vector.
    pub fn prepend(&self, letter: Letter) -> TailWord {
        let k = self.period.len();
        if self.prefix.is_empty() {
            let before = (self.phase + k - 1) % k;
            if self.period[before] == letter {
                return TailWord {
                    period: self.period.clone(),
                    phase: before,
                    prefix: Vec::new(),
                };
            }
        }
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(letter);
        prefix.extend_from_slice(&self.prefix);
        TailWord {
            period: self.period.clone(),
            phase: self.phase,
            prefix,
        }
    }

    /// Prepends the letters of `word` so that `word[0]` ends up first.
    pub fn prepend_word(&self, word: &[Letter]) -> TailWord {
        word.iter().rev().fold(self.clone(), |w, &l| w.prepend(l))
    }

    /// `t_i*` on a basis vector: `None` when the first letter is not `i`.
    pub fn behead(&self, letter: Letter) -> Option<TailWord> {
        if self.first_letter() != letter {
            return None;
        }
        if self.prefix.is_empty() {
            Some(TailWord {
                period: self.period.clone(),
                phase: (self.phase + 1) % self.period.len(),
                prefix: Vec::new(),
            })
        } else {
            // dropping the first letter keeps the last one, so still canonical
            Some(TailWord {
                period: self.period.clone(),
                phase: self.phase,
                prefix: self.prefix[1..].to_vec(),
            })
        }
    }

    /// Removes the first letter, whatever it is.
    pub fn split_first(&self) -> (Letter, TailWord) {
        let l = self.first_letter();
        (l, self.behead(l).expect("first letter always beheads"))
    }

    /// Removes a leading block `2^{m-1} 1`, returning `m` and the remainder:
    /// the unique `m` with `s_m* w ≠ 0`. `None` for the all-2 word.
    pub fn peel_block(&self) -> Option<(u64, TailWord)> {
        // past prefix + one full period without a 1 means the tail is 2^∞
        let limit = self.prefix.len() + self.period.len();
        let mut cur = self.clone();
        let mut twos = 0u64;
        loop {
            match cur.first_letter() {
                Letter::One => return Some((twos + 1, cur.behead(Letter::One)?)),
                Letter::Two => {
                    if twos as usize > limit {
                        return None;
                    }
                    twos += 1;
                    cur = cur.behead(Letter::Two)?;
                }
            }
        }
    }

    /// `s_m` on a basis vector: prepend `2^{m-1} 1`.
    pub fn prepend_block(&self, m: u64) -> TailWord {
        assert!(m >= 1, "s_m needs m >= 1");
        let mut w = self.prepend(Letter::One);
        for _ in 1..m {
            w = w.prepend(Letter::Two);
        }
        w
    }

    /// All canonical words of this period with prefix length ≤ `depth`.
    pub fn enumerate(period: &Arc<[Letter]>, depth: usize) -> Vec<TailWord> {
        let mut out = std::collections::BTreeSet::new();
        for phase in 0..period.len() {
            for len in 0..=depth {
                for w in FiniteWord::all_of_length(len) {
                    out.insert(TailWord::new(w.0, period.clone(), phase));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Text form `prefix(period)`, with `@phase` appended for nonzero phase.
    pub fn render(&self) -> String {
        let mut s: String = self.prefix.iter().map(|l| l.digit()).collect();
        s.push('(');
        s.extend(self.period.iter().map(|l| l.digit()));
        s.push(')');
        if self.phase != 0 {
            s.push_str(&format!("@{}", self.phase));
        }
        s
    }

    /// Shortest t-word label: `t1t2Ω`, with the pure tail at phase `p`
    /// written as `t_{period[p..]}Ω`.
    pub fn t_label(&self) -> String {
        let mut s = String::new();
        let tail = if self.phase == 0 {
            &self.period[..0]
        } else {
            &self.period[self.phase..]
        };
        for l in self.prefix.iter().chain(tail.iter()) {
            s.push('t');
            s.push(l.digit());
        }
        s.push('Ω');
        s
    }
}

impl fmt::Display for TailWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for TailWord {
    type Err = Error;

    /// Parses `prefix(period)` or `prefix(period)@phase`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("missing '(' in {s:?}")))?;
        let close = s
            .find(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in {s:?}")))?;
        if close < open {
            return Err(Error::Parse(format!("malformed word {s:?}")));
        }
        let prefix: FiniteWord = s[..open].parse()?;
        let period: FiniteWord = s[open + 1..close].parse()?;
        if period.is_empty() {
            return Err(Error::Parse("empty period".into()));
        }
        let rest = &s[close + 1..];
        let phase = if rest.is_empty() {
            0
        } else {
            rest.strip_prefix('@')
                .and_then(|p| p.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad phase suffix {rest:?}")))?
        };
        if phase >= period.len() {
            return Err(Error::Parse(format!("phase {phase} out of range")));
        }
        Ok(TailWord::new(prefix.0, period.0.into(), phase))
    }
}

#[derive(Serialize, Deserialize)]
struct TailWordRepr {
    prefix: String,
    period: String,
    phase: usize,
}

impl Serialize for TailWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TailWordRepr {
            prefix: FiniteWord(self.prefix.clone()).to_string(),
            period: self.period.iter().map(|l| l.digit()).collect(),
            phase: self.phase,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TailWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = TailWordRepr::deserialize(d)?;
        let prefix: FiniteWord = r.prefix.parse().map_err(D::Error::custom)?;
        let period: FiniteWord = r.period.parse().map_err(D::Error::custom)?;
        if period.is_empty() || r.phase >= period.len() {
            return Err(D::Error::custom("invalid period/phase"));
        }
        Ok(TailWord::new(prefix.0, period.0.into(), r.phase))
    }
}

/// Index `n ≥ 1` of the standard basis vector `e_n` of ℓ₂(ℕ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisIndex(pub u64);

fn is_fock_period(w: &TailWord) -> bool {
    w.period().len() == 1 && w.period()[0] == Letter::One
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// The ℓ₂(ℕ) index of a basis word of `P₂(1)`: `idx(Ω) = 1`,
/// `idx(i·w) = 2(idx(w) − 1) + i`.
pub fn word_to_index(w: &TailWord) -> Result<BasisIndex> {
    if !is_fock_period(w) {
        return Err(Error::NotInFockSpace(w.render()));
    }
    let mut n: u64 = 1;
    for l in w.prefix().iter().rev() {
        n = (n - 1)
            .checked_mul(2)
            .and_then(|x| x.checked_add(l.index()))
            .ok_or_else(|| Error::IndexOverflow(w.render()))?;
    }
    Ok(BasisIndex(n))
}

pub fn fock_period() -> Arc<[Letter]> {
    Arc::from(vec![Letter::One])
}

/// Inverse of [`word_to_index`].
pub fn index_to_word(n: BasisIndex) -> Result<TailWord> {
    if n.0 == 0 {
        return Err(Error::Invalid("basis indices start at 1".into()));
    }
    let mut prefix = Vec::new();
    let mut m = n.0;
    while m > 1 {
        let letter = if m.is_multiple_of(2) {
            Letter::Two
        } else {
            Letter::One
        };
        prefix.push(letter);
        m = (m - letter.index()) / 2 + 1;
    }
    Ok(TailWord::new(prefix, fock_period(), 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn per(s: &str) -> Arc<[Letter]> {
        s.parse::<FiniteWord>().unwrap().0.into()
    }

    fn w(s: &str) -> TailWord {
        s.parse().unwrap()
    }

    /// Independent check: compare the first `n` letters of two infinite words.
    fn same_letters(a: &TailWord, b: &TailWord, n: usize) -> bool {
        (0..n).all(|i| a.letter_at(i) == b.letter_at(i))
    }

    #[test]
    fn prepend_to_fock_vacuum() {
        let omega = TailWord::pure(per("1"), 0);
        assert_eq!(omega.prepend(Letter::One), omega);
        let t2 = omega.prepend(Letter::Two);
        assert_eq!(t2.prefix(), &[Letter::Two]);
        assert_eq!(t2.render(), "2(1)");
    }

    #[test]
    fn prepend_rotates_gp_orbit() {
        let omega = TailWord::pure(per("21"), 0);
        let t1 = omega.prepend(Letter::One);
        assert!(t1.is_pure());
        assert_eq!(t1.phase(), 1);
        let expected_len = 2 * 2;
        let explicit = TailWord {
            period: per("21"),
            phase: 0,
            prefix: vec![Letter::One],
        };
        assert!(same_letters(&t1, &explicit, expected_len + 1));
        assert_eq!(t1.prepend(Letter::Two), omega);
    }

    #[test]
    fn behead_cases() {
        let omega = TailWord::pure(per("1"), 0);
        assert_eq!(w("2(1)").behead(Letter::Two), Some(omega.clone()));
        assert_eq!(w("2(1)").behead(Letter::One), None);
        assert_eq!(omega.behead(Letter::One), Some(omega.clone()));
    }

    #[test]
    fn canonicalization_absorbs_prefix() {
        assert_eq!(w("111(1)"), w("(1)"));
        assert_eq!(w("2121(21)"), w("(21)"));
        assert_eq!(w("1(21)"), w("(21)@1"));
        assert_eq!(w("12(1)").prefix().len(), 2);
    }

    #[test]
    fn index_codec_examples() {
        assert_eq!(word_to_index(&w("(1)")).unwrap(), BasisIndex(1));
        assert_eq!(word_to_index(&w("2(1)")).unwrap(), BasisIndex(2));
        assert_eq!(word_to_index(&w("12(1)")).unwrap(), BasisIndex(3));
        assert_eq!(index_to_word(BasisIndex(1)).unwrap(), w("(1)"));
        assert_eq!(index_to_word(BasisIndex(4)).unwrap(), w("22(1)"));
        assert_eq!(index_to_word(BasisIndex(5)).unwrap(), w("112(1)"));
        assert!(word_to_index(&w("(21)")).is_err());
        assert!(index_to_word(BasisIndex(0)).is_err());
    }

    #[test]
    fn index_codec_bijection() {
        for n in 1..=(1u64 << 14) {
            let word = index_to_word(BasisIndex(n)).unwrap();
            assert_eq!(word_to_index(&word).unwrap(), BasisIndex(n));
        }
    }

    #[test]
    fn prepend_behead_inverse_and_completeness() {
        for period in ["1", "2", "12", "21", "11", "122", "212", "111"] {
            let p = per(period);
            for word in TailWord::enumerate(&p, 8) {
                let nonzero = [Letter::One, Letter::Two]
                    .iter()
                    .filter(|&&l| word.behead(l).is_some())
                    .count();
                assert_eq!(nonzero, 1);
                for l in [Letter::One, Letter::Two] {
                    assert_eq!(word.prepend(l).behead(l), Some(word.clone()));
                    if let Some(rest) = word.behead(l) {
                        assert_eq!(rest.prepend(l), word);
                    }
                    let n = 2 * period.len() + word.prefix().len() + 2;
                    let explicit = TailWord {
                        period: word.period.clone(),
                        phase: word.phase,
                        prefix: std::iter::once(l)
                            .chain(word.prefix.iter().copied())
                            .collect(),
                    };
                    assert!(same_letters(&word.prepend(l), &explicit, n));
                }
            }
        }
    }

    #[test]
    fn peel_block_finds_unique_m() {
        let (m, rest) = w("221(1)").peel_block().unwrap();
        assert_eq!(m, 3);
        assert_eq!(rest, w("(1)"));
        assert!(TailWord::pure(per("2"), 0).peel_block().is_none());
        assert!(w("1(22)")
            .behead(Letter::One)
            .unwrap()
            .peel_block()
            .is_none());
        assert_eq!(w("(1)").prepend_block(3), w("221(1)"));
    }

    #[test]
    fn render_and_parse() {
        let x = w("12(21)@1");
        assert_eq!(x.to_string().parse::<TailWord>().unwrap(), x);
        let j = serde_json::to_value(w("12(1)")).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"prefix": "12", "period": "1", "phase": 0})
        );
        assert_eq!(w("12(1)").t_label(), "t1t2Ω");
        assert_eq!(TailWord::pure(per("21"), 1).t_label(), "t1Ω");
    }
}
