//! States of a permutative representation `P₂(J)` and the action of the
//! Cuntz generators on them.
//!
//! O_∞ sits inside O₂ through `s_m = t₂^{m−1} t₁`. The infinite sums in
//! `ρ(x) = Σ s_m x s_m*` are evaluated exactly: on a basis word only the
//! unique `m` for which the word starts with `2^{m−1}1` contributes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::OperatorExpr;
use crate::scalar::RadicalScalar;
use crate::word::{FiniteWord, Letter, TailWord};

/// The representation class `P₂(J)` for a nonempty word `J`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepSpace {
    word: Arc<[Letter]>,
}

impl RepSpace {
    pub fn new(word: FiniteWord) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Invalid("P2(J) needs a nonempty J".into()));
        }
        Ok(RepSpace {
            word: word.0.into(),
        })
    }

    /// `P₂(1)`, where the GP vector is the Fock vacuum.
    pub fn fock() -> Self {
        RepSpace {
            word: Arc::from(vec![Letter::One]),
        }
    }

    pub fn word(&self) -> &Arc<[Letter]> {
        &self.word
    }

    pub fn is_fock(&self) -> bool {
        self.word.len() == 1 && self.word[0] == Letter::One
    }

    pub fn contains(&self, w: &TailWord) -> bool {
        w.period() == &self.word
    }

    /// The GP vector as a basis word: empty prefix, phase 0.
    pub fn gp_word(&self) -> TailWord {
        TailWord::pure(self.word.clone(), 0)
    }

    /// Canonical basis word `prefix · Ω`.
    pub fn word_with_prefix(&self, prefix: &FiniteWord) -> TailWord {
        TailWord::new(prefix.0.clone(), self.word.clone(), 0)
    }

    pub fn basis(&self, depth: usize) -> Vec<TailWord> {
        TailWord::enumerate(&self.word, depth)
    }
}

impl fmt::Display for RepSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P2(")?;
        for l in self.word.iter() {
            write!(f, "{}", l.digit())?;
        }
        write!(f, ")")
    }
}

impl FromStr for RepSpace {
    type Err = Error;
    /// Accepts `21` or `P2(21)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix("P2(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        RepSpace::new(inner.parse()?)
    }
}

/// A finite linear combination of basis words of one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    space: RepSpace,
    terms: BTreeMap<TailWord, RadicalScalar>,
}

impl State {
    pub fn zero(space: &RepSpace) -> Self {
        State {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// A single basis word with the given coefficient.
    pub fn basis(space: &RepSpace, word: TailWord, coeff: RadicalScalar) -> Result<Self> {
        if !space.contains(&word) {
            return Err(Error::SpaceMismatch(space.to_string(), word.render()));
        }
        let mut s = State::zero(space);
        s.insert(word, coeff);
        Ok(s)
    }

    pub fn unit(space: &RepSpace, word: TailWord) -> Result<Self> {
        Self::basis(space, word, RadicalScalar::one())
    }

    pub fn space(&self) -> &RepSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis words with nonzero coefficient.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TailWord, &RadicalScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &TailWord) -> RadicalScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The single `(word, coeff)` pair if the state has exactly one term.
    pub fn single_term(&self) -> Option<(&TailWord, &RadicalScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn insert(&mut self, word: TailWord, coeff: RadicalScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_space(&self, other: &State) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                self.space.to_string(),
                other.space.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &State) -> Result<State> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &State) -> Result<State> {
        self.add(&other.scale(&RadicalScalar::from_integer(-1)))
    }

    pub fn scale(&self, c: &RadicalScalar) -> State {
        let mut out = State::zero(&self.space);
        if c.is_zero() {
            return out;
        }
        for (w, x) in &self.terms {
            out.insert(w.clone(), x.mul(c));
        }
        out
    }

    /// `⟨self, other⟩`; distinct canonical words are orthonormal.
    pub fn inner(&self, other: &State) -> Result<RadicalScalar> {
        self.check_space(other)?;
        let mut acc = RadicalScalar::zero();
        for (w, c) in &self.terms {
            if let Some(d) = other.terms.get(w) {
                acc += &c.mul(d);
            }
        }
        Ok(acc)
    }

    /// Linear extension of a map from basis words to (word, scalar) or zero.
    pub fn map_basis<F>(&self, f: F) -> State
    where
        F: Fn(&TailWord) -> Option<(TailWord, RadicalScalar)>,
    {
        let mut out = State::zero(&self.space);
        for (w, c) in &self.terms {
            if let Some((w2, k)) = f(w) {
                out.insert(w2, c.mul(&k));
            }
        }
        out
    }

    /// Linear extension of a map from basis words to states.
    pub fn map_linear<F>(&self, f: F) -> State
    where
        F: Fn(&TailWord) -> State,
    {
        let mut out = State::zero(&self.space);
        for (w, c) in &self.terms {
            for (w2, k) in f(w).terms {
                out.insert(w2, c.mul(&k));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("state serializes")
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut rendered: Vec<(String, &RadicalScalar)> =
            self.terms.iter().map(|(w, c)| (w.render(), c)).collect();
        rendered.sort_by(|a, b| a.0.cmp(&b.0));
        for (i, (w, c)) in rendered.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "[{c}] {w}")?;
            }
        }
        Ok(())
    }
}

// {"space": "P2(J)", "terms": [{"word": ..., "coeff": ...}]}, sorted by word rendering

#[derive(Serialize, Deserialize)]
struct StateTermRepr {
    word: TailWord,
    coeff: RadicalScalar,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    space: String,
    terms: Vec<StateTermRepr>,
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut terms: Vec<StateTermRepr> = self
            .terms
            .iter()
            .map(|(w, c)| StateTermRepr {
                word: w.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.sort_by_cached_key(|t| t.word.render());
        StateRepr {
            space: self.space.to_string(),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for State {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = StateRepr::deserialize(d)?;
        let space: RepSpace = r.space.parse().map_err(D::Error::custom)?;
        let mut out = State::zero(&space);
        for t in r.terms {
            if !space.contains(&t.word) {
                return Err(D::Error::custom("term outside the declared space"));
            }
            out.insert(t.word, t.coeff);
        }
        Ok(out)
    }
}

/// The GP vector `Ω` of `P₂(J)`, fixed by `t_J`.
pub fn gp_vector(space: &RepSpace) -> State {
    State::unit(space, space.gp_word()).expect("GP word belongs to its space")
}

pub fn apply_t(letter: Letter, psi: &State) -> State {
    psi.map_basis(|w| Some((w.prepend(letter), RadicalScalar::one())))
}

pub fn apply_t_star(letter: Letter, psi: &State) -> State {
    psi.map_basis(|w| w.behead(letter).map(|r| (r, RadicalScalar::one())))
}

/// `t_J = t_{j₁}⋯t_{j_k}`.
pub fn apply_t_word(word: &[Letter], psi: &State) -> State {
    psi.map_basis(|w| Some((w.prepend_word(word), RadicalScalar::one())))
}

/// `s_m = t₂^{m−1} t₁`.
pub fn apply_s(m: u64, psi: &State) -> State {
    assert!(m >= 1, "s_m needs m >= 1");
    psi.map_basis(|w| Some((w.prepend_block(m), RadicalScalar::one())))
}

/// `s_m* = t₁* (t₂*)^{m−1}`.
pub fn apply_s_star(m: u64, psi: &State) -> State {
    assert!(m >= 1, "s_m needs m >= 1");
    psi.map_basis(|w| {
        let mut cur = w.clone();
        for _ in 1..m {
            cur = cur.behead(Letter::Two)?;
        }
        cur.behead(Letter::One).map(|r| (r, RadicalScalar::one()))
    })
}

/// `ρ(x) ψ = Σ_m s_m x s_m* ψ`, one surviving summand per basis word.
pub fn apply_rho(op: &OperatorExpr, psi: &State) -> State {
    psi.map_linear(|w| match w.peel_block() {
        Some((m, rest)) => {
            let inner = State::unit(psi.space(), rest).expect("same space");
            apply_s(m, &op.apply(&inner))
        }
        None => State::zero(psi.space()),
    })
}

/// `ζ(y) ψ = t₁ y t₁* ψ − t₂ y t₂* ψ`.
pub fn apply_zeta(op: &OperatorExpr, psi: &State) -> State {
    psi.map_linear(|w| {
        let (first, rest) = w.split_first();
        let inner = State::unit(psi.space(), rest).expect("same space");
        let out = apply_t(first, &op.apply(&inner));
        match first {
            Letter::One => out,
            Letter::Two => out.scale(&RadicalScalar::from_integer(-1)),
        }
    })
}
