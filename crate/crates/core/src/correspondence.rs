//! The unitary `U` from the Bose-Fock space to the Fermi-Fock space induced
//! by realizing both on `P₂(1)`, and its inverse.
//!
//! `U (b*_{n₁})^{k₁}⋯(b*_{n_m})^{k_m} Ω = C · A_{n₁−1,k₁} A_{n₂+k₁−1,k₂} ⋯ Ω`
//! with `A_{n,k} = a*_{n+1}⋯a*_{n+k}` and `C = √(k₁!⋯k_m!)`: each boson mode
//! becomes a block of consecutive fermion modes, shifted right by the number
//! of particles already placed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quant::{
    boson_state_iterated, parse_fermion_word, BosonMonomial, FermionSubset, Limits,
};
use crate::scalar::RadicalScalar;

/// A maximal run `{start, …, start + len − 1}` of consecutive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub start: u64,
    pub len: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondencePair {
    pub boson: BosonMonomial,
    pub fermion: FermionSubset,
    pub coeff: RadicalScalar,
}

impl CorrespondencePair {
    /// One TSV row: boson, fermion, exact coefficient, decimal coefficient.
    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.boson,
            self.fermion,
            self.coeff,
            self.coeff.to_decimal()
        )
    }
}

/// Splits `S` into maximal runs separated by gaps of at least 2.
pub fn block_decompose(s: &FermionSubset) -> Vec<Block> {
    let mut blocks: Vec<Block> = Vec::new();
    for &x in s.elements() {
        match blocks.last_mut() {
            Some(b) if b.start + b.len == x => b.len += 1,
            _ => blocks.push(Block { start: x, len: 1 }),
        }
    }
    blocks
}

/// Closed-form image of a boson monomial: pure index combinatorics.
pub fn forward(m: &BosonMonomial) -> CorrespondencePair {
    let mut elements = Vec::with_capacity(m.particle_number() as usize);
    let mut placed = 0u64;
    for &(n, k) in m.factors() {
        // A_{n + placed − 1, k} = a*_{n+placed} ⋯ a*_{n+placed+k−1}
        let start = n + placed;
        elements.extend(start..start + k);
        placed += k;
    }
    CorrespondencePair {
        boson: m.clone(),
        fermion: FermionSubset::new(elements).expect("blocks are separated by gaps"),
        coeff: m.norm_constant(),
    }
}

/// The same map computed through the engine: build the boson state in
/// `P₂(1)` by applying `b*` operators, then read the fermion subset off the
/// resulting basis word.
pub fn forward_operational(m: &BosonMonomial, limits: &Limits) -> Result<CorrespondencePair> {
    let psi = boson_state_iterated(m, limits)?;
    let (word, coeff) = psi.single_term().ok_or_else(|| {
        Error::Engine(format!(
            "boson state for {m} has {} terms, expected one",
            psi.len()
        ))
    })?;
    Ok(CorrespondencePair {
        boson: m.clone(),
        fermion: parse_fermion_word(word)?,
        coeff: coeff.clone(),
    })
}

/// `U* a*_S Ω`: block starts `x_j` with lengths `L_j` give boson modes
/// `x_j − Σ_{i<j} L_i` with multiplicities `L_j`, and coefficient
/// `D = (∏ L_j!)^{−1/2}`.
pub fn inverse(s: &FermionSubset) -> CorrespondencePair {
    let mut factors = Vec::new();
    let mut shift = 0u64;
    for b in block_decompose(s) {
        factors.push((b.start - shift, b.len));
        shift += b.len;
    }
    let boson = BosonMonomial::new(factors)
        .expect("gaps of at least two keep the shifted modes strictly increasing");
    let coeff = boson
        .norm_constant()
        .recip_term()
        .expect("√(∏ L_j!) is a single term");
    CorrespondencePair {
        boson,
        fermion: s.clone(),
        coeff,
    }
}

pub trait ParticleNumber {
    fn particle_number(&self) -> u64;
}

impl ParticleNumber for BosonMonomial {
    fn particle_number(&self) -> u64 {
        BosonMonomial::particle_number(self)
    }
}

impl ParticleNumber for FermionSubset {
    fn particle_number(&self) -> u64 {
        self.len() as u64
    }
}

pub fn particle_number<T: ParticleNumber>(x: &T) -> u64 {
    x.particle_number()
}

/// All `n`-particle boson monomials with modes `≤ max_mode`, paired with
/// their images, sorted by the nondecreasing list of boson modes.
pub fn enumerate_grade(n: u64, max_mode: u64, limits: &Limits) -> Result<Vec<CorrespondencePair>> {
    limits.check_particles(n)?;
    limits.check_mode(max_mode)?;
    let mut monomials = BosonMonomial::all_with_particles(n, max_mode);
    monomials.sort_by_key(|m| m.expanded_modes());
    Ok(monomials.par_iter().map(forward).collect())
}
