//! Bosons and fermions realized on permutative representations.
//!
//! Bosons: `b₁ = Σ_m √m s_m s_{m+1}*` and `b_n = ρ(b_{n−1})`. Fermions:
//! `a₁ = t₁t₂*` and `a_n = ζ(a_{n−1})`. Both are evaluated by transporting
//! the operator past leading letters (`s_n b_m = b_{m+1} s_n` and
//! `t_i a_m = (−1)^{i−1} a_{m+1} t_i`) instead of expanding the recursion.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::{RepSpace, State};
use crate::scalar::RadicalScalar;
use crate::word::{fock_period, Letter, TailWord};

/// Refusal thresholds for inputs whose cost grows quickly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_mode: u64,
    pub max_particles: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_mode: 16,
            max_particles: 12,
        }
    }
}

impl Limits {
    pub fn check_mode(&self, mode: u64) -> Result<()> {
        if mode > self.max_mode {
            return Err(Error::BoundExceeded {
                what: "mode",
                value: mode,
                limit: self.max_mode,
            });
        }
        Ok(())
    }

    pub fn check_particles(&self, n: u64) -> Result<()> {
        if n > self.max_particles {
            return Err(Error::BoundExceeded {
                what: "particle number",
                value: n,
                limit: self.max_particles,
            });
        }
        Ok(())
    }

    pub fn check_boson(&self, m: &BosonMonomial) -> Result<()> {
        if let Some(&(n, _)) = m.factors().last() {
            self.check_mode(n)?;
        }
        self.check_particles(m.particle_number())
    }

    pub fn check_fermion(&self, s: &FermionSubset) -> Result<()> {
        if let Some(&n) = s.elements().last() {
            self.check_mode(n)?;
        }
        self.check_particles(s.len() as u64)
    }
}

/// `(b*_{n₁})^{k₁}⋯(b*_{n_m})^{k_m}` with `n₁ < … < n_m` and all `k_i ≥ 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BosonMonomial {
    factors: Vec<(u64, u64)>,
}

impl BosonMonomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Validates strict mode order and positive modes/multiplicities.
    pub fn new(factors: Vec<(u64, u64)>) -> Result<Self> {
        for (i, &(n, k)) in factors.iter().enumerate() {
            if n == 0 || k == 0 {
                return Err(Error::Invalid(format!(
                    "boson factor ({n},{k}) needs mode and multiplicity >= 1"
                )));
            }
            if i > 0 && factors[i - 1].0 >= n {
                return Err(Error::Invalid("boson modes must strictly increase".into()));
            }
        }
        Ok(BosonMonomial { factors })
    }

    /// Builds from unordered `(mode, multiplicity)` pairs; bosons commute, so
    /// repeated modes merge.
    pub fn from_unordered(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut merged = std::collections::BTreeMap::new();
        for (n, k) in pairs {
            if n == 0 || k == 0 {
                return Err(Error::Invalid(format!(
                    "boson factor ({n},{k}) needs mode and multiplicity >= 1"
                )));
            }
            *merged.entry(n).or_insert(0) += k;
        }
        Self::new(merged.into_iter().collect())
    }

    pub fn factors(&self) -> &[(u64, u64)] {
        &self.factors
    }

    pub fn is_vacuum(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn particle_number(&self) -> u64 {
        self.factors.iter().map(|&(_, k)| k).sum()
    }

    /// Modes repeated by multiplicity, nondecreasing: `(1,2)(3,1)` → `[1,1,3]`.
    pub fn expanded_modes(&self) -> Vec<u64> {
        self.factors
            .iter()
            .flat_map(|&(n, k)| std::iter::repeat_n(n, k as usize))
            .collect()
    }

    /// `∏ √(k_i!)`.
    pub fn norm_constant(&self) -> RadicalScalar {
        self.factors
            .iter()
            .fold(RadicalScalar::one(), |acc, &(_, k)| {
                acc.mul(&RadicalScalar::sqrt_factorial(k))
            })
    }

    /// All monomials with exactly `n` particles and modes in `1..=max_mode`.
    pub fn all_with_particles(n: u64, max_mode: u64) -> Vec<BosonMonomial> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        multisets(n, 1, max_mode, &mut cur, &mut out);
        out.into_iter()
            .map(|modes| BosonMonomial::from_unordered(modes.into_iter().map(|m| (m, 1))).unwrap())
            .collect()
    }

    /// All monomials with at most `n` particles and modes in `1..=max_mode`.
    pub fn all_up_to(n: u64, max_mode: u64) -> Vec<BosonMonomial> {
        (0..=n)
            .flat_map(|k| Self::all_with_particles(k, max_mode))
            .collect()
    }
}

fn multisets(n: u64, lo: u64, hi: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for m in lo..=hi {
        cur.push(m);
        multisets(n - 1, m, hi, cur, out);
        cur.pop();
    }
}

impl fmt::Display for BosonMonomial {
    /// `b: 1^2 3`; the vacuum renders as `b:`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b:")?;
        for &(n, k) in &self.factors {
            if k == 1 {
                write!(f, " {n}")?;
            } else {
                write!(f, " {n}^{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BosonMonomial {
    type Err = Error;

    /// Whitespace-separated `mode[^mult]` tokens with an optional `b:` prefix.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("b:").unwrap_or(body);
        let mut pairs = Vec::new();
        for tok in body.split_whitespace() {
            let (mode, mult) = match tok.split_once('^') {
                Some((a, b)) => (a, b),
                None => (tok, "1"),
            };
            let n = mode
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad boson mode {mode:?}")))?;
            let k = mult
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad multiplicity {mult:?}")))?;
            if n == 0 || k == 0 {
                return Err(Error::Parse(format!("token {tok:?} needs values >= 1")));
            }
            pairs.push((n, k));
        }
        BosonMonomial::from_unordered(pairs)
    }
}

#[derive(Serialize, Deserialize)]
struct BosonFactorRepr {
    mode: u64,
    mult: u64,
}

impl Serialize for BosonMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.factors
            .iter()
            .map(|&(mode, mult)| BosonFactorRepr { mode, mult })
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BosonMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<BosonFactorRepr>::deserialize(d)?;
        BosonMonomial::new(v.into_iter().map(|f| (f.mode, f.mult)).collect())
            .map_err(D::Error::custom)
    }
}

/// A strictly increasing set of fermion modes `S`, denoting `a*_S`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FermionSubset {
    elements: Vec<u64>,
}

impl FermionSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if elements.contains(&0) {
            return Err(Error::Invalid("fermion modes start at 1".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "fermion modes must strictly increase".into(),
            ));
        }
        Ok(FermionSubset { elements })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Every subset of `{1, …, n}`, including the empty one.
    pub fn all_subsets_of(n: u64) -> Vec<FermionSubset> {
        (0u64..(1u64 << n))
            .map(|bits| FermionSubset {
                elements: (1..=n).filter(|i| bits >> (i - 1) & 1 == 1).collect(),
            })
            .collect()
    }
}

impl<'de> Deserialize<'de> for FermionSubset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        FermionSubset::new(Vec::<u64>::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl fmt::Display for FermionSubset {
    /// `a: 1 2 5`; the empty set renders as `a:`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a:")?;
        for n in &self.elements {
            write!(f, " {n}")?;
        }
        Ok(())
    }
}

/// A fermion monomial after normal ordering: `sign · a*_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSubset {
    pub sign: i8,
    pub subset: FermionSubset,
}

/// Parses `a: 3 1 2` style input. Unsorted modes are sorted with the CAR sign;
/// a repeated mode is an error.
pub fn parse_fermion_expr(s: &str) -> Result<SignedSubset> {
    let body = s.trim();
    let body = body.strip_prefix("a:").unwrap_or(body);
    let modes = body
        .split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Parse(format!("bad fermion mode {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let factors: Vec<(u64, bool)> = modes.iter().map(|&n| (n, true)).collect();
    normal_order_fermion(&factors)?
        .ok_or_else(|| Error::Parse("repeated fermion mode: a*_n a*_n = 0".into()))
}

/// Sorts a product of creation operators `a*_{n₁}⋯a*_{n_k}` into increasing
/// order. The sign is the parity of the sorting permutation; a repeated mode
/// gives zero (`None`). Annihilators are rejected.
pub fn normal_order_fermion(factors: &[(u64, bool)]) -> Result<Option<SignedSubset>> {
    if let Some(&(n, _)) = factors.iter().find(|&&(_, create)| !create) {
        return Err(Error::Invalid(format!(
            "normal_order_fermion handles creation operators only (got a_{n})"
        )));
    }
    let mut modes: Vec<u64> = factors.iter().map(|&(n, _)| n).collect();
    if modes.contains(&0) {
        return Err(Error::Invalid("fermion modes start at 1".into()));
    }
    // insertion sort, counting transpositions
    let mut swaps = 0usize;
    for i in 1..modes.len() {
        let mut j = i;
        while j > 0 && modes[j - 1] > modes[j] {
            modes.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    if modes.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    Ok(Some(SignedSubset {
        sign: if swaps.is_multiple_of(2) { 1 } else { -1 },
        subset: FermionSubset { elements: modes },
    }))
}

/// `b_n` or `b_n*` on a single basis word: `(weight, word)` meaning
/// `√weight · word`, or `None` for zero.
pub fn boson_on_word(create: bool, n: u64, w: &TailWord) -> Option<(u64, TailWord)> {
    assert!(n >= 1, "boson modes start at 1");
    // s_m b_{n-1} = b_n s_m: strip n-1 leading blocks, act with b_1, restore
    let mut blocks = Vec::with_capacity(n as usize - 1);
    let mut cur = w.clone();
    for _ in 1..n {
        let (m, rest) = cur.peel_block()?;
        blocks.push(m);
        cur = rest;
    }
    let (weight, mut out) = if create {
        // b_1* s_m v = √m s_{m+1} v
        let (m, rest) = cur.peel_block()?;
        (m, rest.prepend_block(m + 1))
    } else {
        // b_1 s_{m+1} v = √m s_m v; b_1 s_1 v = 0
        let (m, rest) = cur.peel_block()?;
        if m == 1 {
            return None;
        }
        (m - 1, rest.prepend_block(m - 1))
    };
    for &m in blocks.iter().rev() {
        out = out.prepend_block(m);
    }
    Some((weight, out))
}

/// `a_n` or `a_n*` on a single basis word: `(sign, word)` or `None`.
pub fn fermion_on_word(create: bool, n: u64, w: &TailWord) -> Option<(i8, TailWord)> {
    assert!(n >= 1, "fermion modes start at 1");
    // t_i a_m = (−1)^{i−1} a_{m+1} t_i: strip n-1 letters, each 2 flips the sign
    let mut letters = Vec::with_capacity(n as usize - 1);
    let mut sign = 1i8;
    let mut cur = w.clone();
    for _ in 1..n {
        let (l, rest) = cur.split_first();
        if l == Letter::Two {
            sign = -sign;
        }
        letters.push(l);
        cur = rest;
    }
    // a_1 = t₁t₂*: 2v ↦ 1v; a_1* = t₂t₁*: 1v ↦ 2v
    let (from, to) = if create {
        (Letter::One, Letter::Two)
    } else {
        (Letter::Two, Letter::One)
    };
    let out = cur.behead(from)?.prepend(to).prepend_word(&letters);
    Some((sign, out))
}

pub fn apply_boson(create: bool, n: u64, psi: &State) -> State {
    psi.map_basis(|w| {
        boson_on_word(create, n, w).map(|(k, w2)| (w2, RadicalScalar::sqrt_of_nat(k)))
    })
}

pub fn apply_fermion(create: bool, n: u64, psi: &State) -> State {
    psi.map_basis(|w| {
        fermion_on_word(create, n, w).map(|(s, w2)| (w2, RadicalScalar::from_integer(s as i64)))
    })
}

/// Closed form in `P₂(1)`:
/// `(b*_{n₁})^{k₁}⋯(b*_{n_m})^{k_m} Ω = ∏√(k_i!) · t₁^{n₁−1} t₂^{k₁} t₁^{n₂−n₁} t₂^{k₂}⋯ Ω`.
pub fn boson_state(m: &BosonMonomial, limits: &Limits) -> Result<State> {
    limits.check_boson(m)?;
    let mut prefix = Vec::new();
    let mut prev = 1u64;
    for &(n, k) in m.factors() {
        prefix.extend(std::iter::repeat_n(Letter::One, (n - prev) as usize));
        prefix.extend(std::iter::repeat_n(Letter::Two, k as usize));
        prev = n;
    }
    let word = TailWord::new(prefix, fock_period(), 0);
    State::basis(&RepSpace::fock(), word, m.norm_constant())
}

/// The same vector built by applying `b*` operators right to left.
pub fn boson_state_iterated(m: &BosonMonomial, limits: &Limits) -> Result<State> {
    limits.check_boson(m)?;
    let mut psi = crate::rep::gp_vector(&RepSpace::fock());
    for &(n, k) in m.factors().iter().rev() {
        for _ in 0..k {
            psi = apply_boson(true, n, &psi);
        }
    }
    Ok(psi)
}

/// Closed form in `P₂(1)`: `a*_{k₁}⋯a*_{k_l} Ω` is the word with letter 2
/// exactly at positions `k₁, …, k_l`, coefficient `+1`.
pub fn fermion_state(s: &FermionSubset, limits: &Limits) -> Result<State> {
    limits.check_fermion(s)?;
    let len = s.elements().last().copied().unwrap_or(0) as usize;
    let mut prefix = vec![Letter::One; len];
    for &k in s.elements() {
        prefix[k as usize - 1] = Letter::Two;
    }
    let word = TailWord::new(prefix, fock_period(), 0);
    State::unit(&RepSpace::fock(), word)
}

pub fn fermion_state_iterated(s: &FermionSubset, limits: &Limits) -> Result<State> {
    limits.check_fermion(s)?;
    let mut psi = crate::rep::gp_vector(&RepSpace::fock());
    for &k in s.elements().iter().rev() {
        psi = apply_fermion(true, k, &psi);
    }
    Ok(psi)
}

/// Reads `S` back off a `P₂(1)` basis word: the positions of the letter 2.
pub fn parse_fermion_word(w: &TailWord) -> Result<FermionSubset> {
    if !RepSpace::fock().contains(w) {
        return Err(Error::NotAFermionVector(w.render()));
    }
    let elements = w
        .prefix()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == Letter::Two)
        .map(|(i, _)| i as u64 + 1)
        .collect();
    Ok(FermionSubset { elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::gp_vector;
    use crate::word::{index_to_word, BasisIndex};

    fn fock_word(s: &str) -> TailWord {
        format!("{s}(1)").parse().unwrap()
    }

    fn unit(s: &str) -> State {
        State::unit(&RepSpace::fock(), fock_word(s)).unwrap()
    }

    fn e(n: u64) -> State {
        State::unit(&RepSpace::fock(), index_to_word(BasisIndex(n)).unwrap()).unwrap()
    }

    fn bm(s: &str) -> BosonMonomial {
        s.parse().unwrap()
    }

    fn fs(v: &[u64]) -> FermionSubset {
        FermionSubset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn boson_on_vacuum() {
        let omega = gp_vector(&RepSpace::fock());
        assert_eq!(apply_boson(true, 1, &omega), e(2));
        assert_eq!(apply_boson(false, 1, &e(2)), omega);
        for m in 1..=6 {
            assert!(apply_boson(false, m, &omega).is_zero());
        }
    }

    #[test]
    fn fermion_on_vacuum() {
        let omega = gp_vector(&RepSpace::fock());
        for m in 1..=6u64 {
            assert_eq!(apply_fermion(true, m, &omega), e((1 << (m - 1)) + 1));
            assert!(apply_fermion(false, m, &omega).is_zero());
        }
        let psi = e(7).add(&e(12)).unwrap();
        let twice = apply_fermion(true, 1, &apply_fermion(true, 1, &psi));
        assert!(twice.is_zero());
    }

    #[test]
    fn closed_form_states() {
        let lim = Limits::default();
        assert_eq!(
            boson_state(&BosonMonomial::vacuum(), &lim).unwrap(),
            gp_vector(&RepSpace::fock())
        );
        let b11 = boson_state(&bm("1^2"), &lim).unwrap();
        assert_eq!(b11, unit("22").scale(&RadicalScalar::sqrt_of_nat(2)));
        let b25 = boson_state(&bm("2 5"), &lim).unwrap();
        assert_eq!(b25, unit("121112"));
        assert_eq!(b25, boson_state_iterated(&bm("2 5"), &lim).unwrap());

        assert_eq!(fermion_state(&fs(&[1]), &lim).unwrap(), unit("2"));
        assert_eq!(fermion_state(&fs(&[1, 2, 3]), &lim).unwrap(), unit("222"));
        assert_eq!(fermion_state(&fs(&[2, 4]), &lim).unwrap(), unit("1212"));
        assert_eq!(
            fermion_state_iterated(&fs(&[2, 4]), &lim).unwrap(),
            unit("1212")
        );
    }

    #[test]
    fn parse_fermion_words() {
        assert_eq!(parse_fermion_word(&fock_word("2")).unwrap(), fs(&[1]));
        assert_eq!(parse_fermion_word(&fock_word("1212")).unwrap(), fs(&[2, 4]));
        assert_eq!(parse_fermion_word(&fock_word("")).unwrap(), fs(&[]));
        let other: TailWord = "2(21)".parse().unwrap();
        assert!(matches!(
            parse_fermion_word(&other),
            Err(Error::NotAFermionVector(_))
        ));
    }

    #[test]
    fn normal_ordering() {
        let r = normal_order_fermion(&[(2, true), (1, true)])
            .unwrap()
            .unwrap();
        assert_eq!((r.sign, r.subset), (-1, fs(&[1, 2])));
        assert_eq!(normal_order_fermion(&[(1, true), (1, true)]).unwrap(), None);
        let r = normal_order_fermion(&[(3, true), (1, true), (2, true)])
            .unwrap()
            .unwrap();
        assert_eq!((r.sign, r.subset), (1, fs(&[1, 2, 3])));
        assert!(normal_order_fermion(&[(1, false)]).is_err());
    }

    #[test]
    fn normal_ordering_matches_engine_sign() {
        // a*_3 a*_1 a*_2 Ω computed on states vs. the sorted monomial
        let lim = Limits::default();
        let mut psi = gp_vector(&RepSpace::fock());
        for n in [2u64, 1, 3] {
            psi = apply_fermion(true, n, &psi);
        }
        assert_eq!(psi, fermion_state(&fs(&[1, 2, 3]), &lim).unwrap());
        let mut psi = gp_vector(&RepSpace::fock());
        for n in [1u64, 2] {
            psi = apply_fermion(true, n, &psi);
        }
        // a*_2 a*_1 Ω = −a*_1 a*_2 Ω
        assert_eq!(
            psi,
            fermion_state(&fs(&[1, 2]), &lim)
                .unwrap()
                .scale(&RadicalScalar::from_integer(-1))
        );
    }

    #[test]
    fn monomial_grammar() {
        let m = bm("b: 3 1^2");
        assert_eq!(m.factors(), &[(1, 2), (3, 1)]);
        assert_eq!(m.to_string(), "b: 1^2 3");
        assert_eq!(bm("1 1"), bm("1^2"));
        assert!(bm("").is_vacuum());
        assert!("0".parse::<BosonMonomial>().is_err());
        assert!("x".parse::<BosonMonomial>().is_err());
        let f = parse_fermion_expr("a: 2 1").unwrap();
        assert_eq!((f.sign, f.subset.to_string()), (-1, "a: 1 2".to_string()));
        assert!(parse_fermion_expr("1 1").is_err());
        let j = serde_json::to_value(&m).unwrap();
        assert_eq!(
            j,
            serde_json::json!([{"mode": 1, "mult": 2}, {"mode": 3, "mult": 1}])
        );
        assert_eq!(serde_json::from_value::<BosonMonomial>(j).unwrap(), m);
        assert_eq!(
            serde_json::to_value(fs(&[2, 5])).unwrap(),
            serde_json::json!([2, 5])
        );
    }

    #[test]
    fn limits_refuse() {
        let lim = Limits::default();
        assert!(matches!(
            boson_state(&bm("17"), &lim),
            Err(Error::BoundExceeded { what: "mode", .. })
        ));
        assert!(matches!(
            boson_state(&bm("1^13"), &lim),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(fermion_state(&fs(&[20]), &lim).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(BosonMonomial::all_with_particles(3, 3).len(), 10);
        assert_eq!(BosonMonomial::all_up_to(6, 6).len(), 924);
        assert_eq!(
            BosonMonomial::all_with_particles(0, 5),
            vec![BosonMonomial::vacuum()]
        );
        assert_eq!(FermionSubset::all_subsets_of(12).len(), 4096);
    }
}
