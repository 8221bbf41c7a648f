//! DOT rendering of the basis of `P₂(J)` as a tree under the generators.

use std::collections::BTreeMap;
use std::fmt::Write;

use clap::ValueEnum;
use cuntz_fock::quant::parse_fermion_word;
use cuntz_fock::{inverse, Error, Letter, RepSpace, Result, TailWord};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Label {
    Words,
    Bosons,
    Fermions,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Gens {
    /// Edges `t1`, `t2`.
    Cuntz,
    /// Edges `s_m = t2^{m-1} t1`.
    Oinfty,
}

const MAX_PERIOD: u64 = 3;
const MAX_DEPTH: u64 = 6;

fn fermion_label(w: &TailWord) -> Result<String> {
    let s = parse_fermion_word(w)?;
    let mut out = String::new();
    for n in s.elements() {
        write!(out, "a{n}* ").unwrap();
    }
    out.push('Ω');
    Ok(out)
}

fn boson_label(w: &TailWord) -> Result<String> {
    let pair = inverse(&parse_fermion_word(w)?);
    let mut out = String::new();
    if !pair.coeff.is_one() {
        write!(out, "[{}] ", pair.coeff).unwrap();
    }
    for &(n, k) in pair.boson.factors() {
        if k == 1 {
            write!(out, "b{n}* ").unwrap();
        } else {
            write!(out, "b{n}*^{k} ").unwrap();
        }
    }
    out.push('Ω');
    Ok(out)
}

pub fn render(space: &RepSpace, depth: usize, label: Label, gens: Gens) -> Result<String> {
    let period = space.word().len() as u64;
    if period > MAX_PERIOD {
        return Err(Error::BoundExceeded {
            what: "|J|",
            value: period,
            limit: MAX_PERIOD,
        });
    }
    if depth as u64 > MAX_DEPTH {
        return Err(Error::BoundExceeded {
            what: "depth",
            value: depth as u64,
            limit: MAX_DEPTH,
        });
    }
    if !matches!(label, Label::Words) && !space.is_fock() {
        return Err(Error::Invalid(format!(
            "boson and fermion labels need P2(1), not {space}"
        )));
    }
    let mut words = space.basis(depth);
    words.sort_by_cached_key(|w| (w.prefix().len(), w.render()));
    let ids: BTreeMap<&TailWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let mut dot = String::new();
    writeln!(dot, "digraph \"{space}\" {{").unwrap();
    writeln!(dot, "  node [shape=box];").unwrap();
    for (i, w) in words.iter().enumerate() {
        let text = match label {
            Label::Words => w.t_label(),
            Label::Fermions => fermion_label(w)?,
            Label::Bosons => boson_label(w)?,
        };
        writeln!(
            dot,
            "  n{i} [label=\"{text}\", tooltip=\"{}\"];",
            w.render()
        )
        .unwrap();
    }
    for (i, w) in words.iter().enumerate() {
        let edges: Vec<(String, TailWord)> = match gens {
            Gens::Cuntz => [Letter::One, Letter::Two]
                .iter()
                .map(|&l| (format!("t{}", l.digit()), w.prepend(l)))
                .collect(),
            Gens::Oinfty => (1..=depth as u64 + 1)
                .map(|m| (format!("s{m}"), w.prepend_block(m)))
                .collect(),
        };
        for (name, target) in edges {
            if let Some(j) = ids.get(&target) {
                writeln!(dot, "  n{i} -> n{j} [label=\"{name}\"];").unwrap();
            }
        }
    }
    dot.push_str("}\n");
    Ok(dot)
}
