//! Defining relations of the classes `BF_{q,i}(λ)` and `FF_{p,i}`,
//! `FF*_{p,i}` as predicates on a concrete vector.

use std::ops::RangeInclusive;

use num_rational::BigRational;

use super::{Recorder, SuiteReport};
use crate::quant::{apply_boson, apply_fermion};
use crate::rep::State;
use crate::scalar::RadicalScalar;

fn unit_check(psi: &State, r: &mut Recorder) {
    let norm = psi.inner(psi).expect("same space");
    r.eq(
        || format!("<ψ,ψ> for ψ = {psi}"),
        &RadicalScalar::one(),
        &norm,
    );
}

/// `b_{q(n−1)+i} b*_{q(n−1)+i} ψ = λψ` and `b_{q(n−1)+j} ψ = 0` for `j ≠ i`.
pub fn check_bf_class(
    psi: &State,
    q: u64,
    i: u64,
    lambda: &BigRational,
    n_range: RangeInclusive<u64>,
    j_range: RangeInclusive<u64>,
) -> SuiteReport {
    let mut report = SuiteReport::new(format!("BF_{{{q},{i}}}({lambda})"))
        .param("vector", psi.to_string())
        .param("n", [*n_range.start(), *n_range.end()])
        .param("j", [*j_range.start(), *j_range.end()]);
    let mut r = Recorder::default();
    unit_check(psi, &mut r);
    let lam = RadicalScalar::from_rational(lambda.clone());
    for n in n_range {
        let mode = q * (n - 1) + i;
        let got = apply_boson(false, mode, &apply_boson(true, mode, psi));
        r.states(
            || format!("b_{mode} b*_{mode} ψ, n={n}"),
            &psi.scale(&lam),
            &got,
        );
        for j in j_range.clone().filter(|&j| j != i) {
            let mode = q * (n - 1) + j;
            r.zero(
                || format!("b_{mode} ψ, n={n}, j={j}"),
                &apply_boson(false, mode, psi),
            );
        }
    }
    report.absorb(r);
    report
}

/// Unstarred: `a_{p(n−1)+i} ψ = a*_{p(n−1)+j} ψ = 0` (`j ≠ i`).
/// Starred: the same with `a` and `a*` exchanged.
pub fn check_ff_class(
    psi: &State,
    p: u64,
    i: u64,
    starred: bool,
    n_range: RangeInclusive<u64>,
) -> SuiteReport {
    let star = if starred { "*" } else { "" };
    let mut report = SuiteReport::new(format!("FF{star}_{{{p},{i}}}"))
        .param("vector", psi.to_string())
        .param("n", [*n_range.start(), *n_range.end()]);
    let mut r = Recorder::default();
    unit_check(psi, &mut r);
    // unstarred kills with a at residue i and with a* elsewhere
    let (at_i, elsewhere) = (starred, !starred);
    let name = |create: bool| if create { "a*" } else { "a" };
    for n in n_range {
        for j in 1..=p {
            let mode = p * (n - 1) + j;
            let create = if j == i { at_i } else { elsewhere };
            r.zero(
                || format!("{}_{mode} ψ, n={n}, j={j}", name(create)),
                &apply_fermion(create, mode, psi),
            );
        }
    }
    report.absorb(r);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{apply_t, gp_vector, RepSpace};
    use crate::word::Letter;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn space(s: &str) -> RepSpace {
        s.parse().unwrap()
    }

    #[test]
    fn fock_vacuum_is_bf11_1() {
        let omega = gp_vector(&RepSpace::fock());
        assert!(check_bf_class(&omega, 1, 1, &q(1), 1..=5, 1..=1).pass);
        assert!(!check_bf_class(&omega, 1, 1, &q(2), 1..=5, 1..=1).pass);
    }

    #[test]
    fn period_12_shifted_vector_is_bf11_2() {
        // the cyclic vector fixed by s_2 is t_2 applied to the GP vector
        let omega = gp_vector(&space("12"));
        let shifted = apply_t(Letter::Two, &omega);
        assert!(check_bf_class(&shifted, 1, 1, &q(2), 1..=5, 1..=1).pass);
        // the GP vector itself sits in the first slot with weight 1
        assert!(!check_bf_class(&omega, 1, 1, &q(2), 1..=5, 1..=1).pass);
    }

    #[test]
    fn fock_vacuum_is_ff11() {
        let omega = gp_vector(&RepSpace::fock());
        assert!(check_ff_class(&omega, 1, 1, false, 1..=6).pass);
        assert!(!check_ff_class(&omega, 2, 1, false, 1..=3).pass);
        assert!(!check_ff_class(&omega, 1, 1, true, 1..=3).pass);
    }

    #[test]
    fn period_21_gp_vector() {
        let omega = gp_vector(&space("21"));
        assert!(check_ff_class(&omega, 2, 2, false, 1..=4).pass);
        assert!(check_ff_class(&omega, 2, 1, true, 1..=4).pass);
        assert!(!check_ff_class(&omega, 2, 1, false, 1..=4).pass);
    }

    #[test]
    fn non_unit_vector_fails() {
        let omega = gp_vector(&RepSpace::fock()).scale(&RadicalScalar::from_integer(2));
        assert!(!check_ff_class(&omega, 1, 1, false, 1..=2).pass);
    }
}
