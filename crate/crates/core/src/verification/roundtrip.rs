//! The correspondence checked against the engine: closed form versus
//! operator action, inverse consistency, grading, and the small-particle
//! example tables.

use std::collections::BTreeSet;

use super::{par_record, Recorder, SuiteReport};
use crate::correspondence::{enumerate_grade, forward, forward_operational, inverse};
use crate::quant::{
    apply_boson, apply_fermion, boson_state_iterated, fermion_state, BosonMonomial, FermionSubset,
    Limits,
};
use crate::rep::{gp_vector, RepSpace, State};
use crate::scalar::RadicalScalar;

/// For every monomial with `≤ particles` particles and modes `≤ modes`:
/// operational and closed-form images agree, the particle number is kept,
/// and the inverse returns the monomial with `C·D = 1`. Also checks that
/// each grade `n ≤ min(particles, 4)` has pairwise-distinct fermion sides.
pub fn check_forward_family(particles: u64, modes: u64) -> SuiteReport {
    let lim = Limits::default();
    let family = BosonMonomial::all_up_to(particles, modes);
    let mut report = SuiteReport::new("forward family")
        .param("particles", particles)
        .param("modes", modes)
        .param("monomials", family.len());
    report.absorb(par_record(&family, |m, r| {
        let closed = forward(m);
        match forward_operational(m, &lim) {
            Ok(op) => {
                r.eq(
                    || format!("fermion side of {m}"),
                    &closed.fermion,
                    &op.fermion,
                );
                r.eq(|| format!("coefficient of {m}"), &closed.coeff, &op.coeff);
            }
            Err(e) => r.eq(
                || format!("operational image of {m}"),
                &"ok".to_string(),
                &e.to_string(),
            ),
        }
        r.eq(
            || format!("particle number of {m}"),
            &m.particle_number(),
            &(closed.fermion.len() as u64),
        );
        let back = inverse(&closed.fermion);
        r.eq(|| format!("inverse of forward {m}"), m, &back.boson);
        r.truth(
            || format!("C·D for {m}"),
            closed.coeff.mul(&back.coeff).is_one(),
        );
    }));
    let mut r = Recorder::default();
    for n in 0..=particles.min(4) {
        let grade = enumerate_grade(n, modes, &lim).expect("within limits");
        let distinct: BTreeSet<_> = grade.iter().map(|p| p.fermion.clone()).collect();
        r.eq(
            || format!("distinct fermion sides in grade {n}"),
            &grade.len(),
            &distinct.len(),
        );
    }
    report.absorb(r);
    report
}

/// `forward ∘ inverse = id` on all subsets of `{1, …, max_subset}`, with the
/// boson state built by operators equal to `C · a*_S Ω`; plus
/// [`check_forward_family`] on `(particles, modes)`.
pub fn check_roundtrip(max_subset: u64, particles: u64, modes: u64) -> SuiteReport {
    let lim = Limits::default();
    let subsets = FermionSubset::all_subsets_of(max_subset);
    let mut report = SuiteReport::new("roundtrip")
        .param("max_subset", max_subset)
        .param("subsets", subsets.len());
    report.absorb(par_record(&subsets, |s, r| {
        let inv = inverse(s);
        let fwd = forward(&inv.boson);
        r.eq(|| format!("forward(inverse({s}))"), s, &fwd.fermion);
        r.truth(
            || format!("C·D for {s}"),
            fwd.coeff.mul(&inv.coeff).is_one(),
        );
        match (
            boson_state_iterated(&inv.boson, &lim),
            fermion_state(s, &lim),
        ) {
            (Ok(b), Ok(f)) => r.states(
                || format!("b-state of {} vs C·a*_S Ω", inv.boson),
                &f.scale(&fwd.coeff),
                &b,
            ),
            (Err(e), _) | (_, Err(e)) => r.eq(
                || format!("states for {s}"),
                &"ok".to_string(),
                &e.to_string(),
            ),
        }
    }));
    report.absorb_report(check_forward_family(particles, modes));
    report
}

fn fock() -> RepSpace {
    RepSpace::fock()
}

/// `b*_{m₁} ⋯ b*_{m_k} Ω` by operator action, rightmost first.
fn b_star(modes: &[u64]) -> State {
    modes
        .iter()
        .rev()
        .fold(gp_vector(&fock()), |acc, &m| apply_boson(true, m, &acc))
}

fn a_star(modes: &[u64]) -> State {
    modes
        .iter()
        .rev()
        .fold(gp_vector(&fock()), |acc, &m| apply_fermion(true, m, &acc))
}

fn root(n: u64) -> RadicalScalar {
    RadicalScalar::sqrt_of_nat(n)
}

/// The one-, two- and three-particle tables and the general block identities,
/// for `1 ≤ n < m < l ≤ max_index` and block lengths `≤ max_block`.
pub fn check_examples(max_index: u64, max_block: u64) -> SuiteReport {
    let mut report = SuiteReport::new("example tables")
        .param("max_index", max_index)
        .param("max_block", max_block);
    let mut r = Recorder::default();
    let one = RadicalScalar::one();
    let eq = |r: &mut Recorder, name: String, b: &[u64], c: &RadicalScalar, a: &[u64]| {
        r.states(|| name, &a_star(a).scale(c), &b_star(b));
    };
    for n in 1..=max_index {
        eq(&mut r, format!("b{n}* Ω"), &[n], &one, &[n]);
        eq(
            &mut r,
            format!("(b{n}*)^2 Ω"),
            &[n, n],
            &root(2),
            &[n, n + 1],
        );
        eq(
            &mut r,
            format!("(b{n}*)^3 Ω"),
            &[n, n, n],
            &root(6),
            &[n, n + 1, n + 2],
        );
        for m in n + 1..=max_index {
            eq(&mut r, format!("b{n}* b{m}* Ω"), &[n, m], &one, &[n, m + 1]);
            for l in m + 1..=max_index {
                eq(
                    &mut r,
                    format!("b{n}* b{m}* b{l}* Ω"),
                    &[n, m, l],
                    &one,
                    &[n, m + 1, l + 2],
                );
            }
            eq(
                &mut r,
                format!("b{n}* (b{m}*)^2 Ω"),
                &[n, m, m],
                &root(2),
                &[n, m + 1, m + 2],
            );
            eq(
                &mut r,
                format!("(b{n}*)^2 b{m}* Ω"),
                &[n, n, m],
                &root(2),
                &[n, n + 1, m + 2],
            );
        }
        // (b_n*)^{k} Ω = √(k!) a*_n ⋯ a*_{n+k−1} Ω
        for k in 1..=max_block {
            let b = vec![n; k as usize];
            let a: Vec<u64> = (n..n + k).collect();
            eq(
                &mut r,
                format!("(b{n}*)^{k} Ω"),
                &b,
                &RadicalScalar::sqrt_factorial(k),
                &a,
            );
        }
        // b*_n b*_{n+1} ⋯ b*_{n+l−1} Ω = a*_n a*_{n+2} ⋯ a*_{n+2(l−1)} Ω
        for l in 1..=max_block {
            let b: Vec<u64> = (n..n + l).collect();
            let a: Vec<u64> = (0..l).map(|i| n + 2 * i).collect();
            eq(
                &mut r,
                format!("consecutive run from {n}, length {l}"),
                &b,
                &one,
                &a,
            );
        }
    }
    // b*_{n₁} ⋯ b*_{n_l} Ω = a*_{n₁} a*_{n₂+1} ⋯ a*_{n_l+l−1} Ω
    for bits in 1u64..(1 << max_index) {
        let ns: Vec<u64> = (1..=max_index)
            .filter(|i| bits >> (i - 1) & 1 == 1)
            .collect();
        if ns.len() as u64 > max_block {
            continue;
        }
        let a: Vec<u64> = ns.iter().enumerate().map(|(i, &n)| n + i as u64).collect();
        eq(&mut r, format!("distinct modes {ns:?}"), &ns, &one, &a);
    }
    report.absorb(r);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let r = check_forward_family(3, 3);
        assert!(r.pass, "{:?}", r.failures.first());
        assert_eq!(r.params["monomials"], 20);
        let r = check_roundtrip(5, 2, 3);
        assert!(r.pass, "{:?}", r.failures.first());
        let r = check_examples(4, 3);
        assert!(r.pass, "{:?}", r.failures.first());
    }

    #[test]
    fn examples_are_not_vacuous() {
        // a wrong coefficient must be caught
        assert_ne!(b_star(&[2, 2]), a_star(&[2, 3]));
        assert_eq!(b_star(&[2, 2]), a_star(&[2, 3]).scale(&root(2)));
    }
}
