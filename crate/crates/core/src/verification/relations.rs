//! Relation suites on finite samples of basis vectors.

use super::{par_record, Recorder, SuiteReport};
use crate::expr::{apply_expanded, OperatorExpr};
use crate::quant::{
    apply_boson, apply_fermion, boson_state, fermion_state, BosonMonomial, FermionSubset, Limits,
};
use crate::rep::{
    apply_s, apply_s_star, apply_t, apply_t_star, apply_t_word, gp_vector, RepSpace, State,
};
use crate::scalar::RadicalScalar;
use crate::word::{FiniteWord, Letter};

const LETTERS: [Letter; 2] = [Letter::One, Letter::Two];

/// Every `P₂(J)` with `1 ≤ |J| ≤ max_len`.
pub(crate) fn all_spaces(max_len: usize) -> Vec<RepSpace> {
    (1..=max_len)
        .flat_map(FiniteWord::all_of_length)
        .map(|w| RepSpace::new(w).expect("nonempty"))
        .collect()
}

/// Spaces whose period contains a 1. On `P₂(2)` every `s_m*` vanishes, so the
/// boson series are not defined there.
pub(crate) fn block_spaces(max_len: usize) -> Vec<RepSpace> {
    all_spaces(max_len)
        .into_iter()
        .filter(|s| s.word().contains(&Letter::One))
        .collect()
}

fn basis_states(spaces: &[RepSpace], depth: usize) -> Vec<State> {
    spaces
        .iter()
        .flat_map(|s| {
            s.basis(depth)
                .into_iter()
                .map(move |w| State::unit(s, w).expect("own basis"))
        })
        .collect()
}

fn sign(k: i64) -> RadicalScalar {
    RadicalScalar::from_integer(k)
}

/// `t_i* t_j = δ_ij`, `t₁t₁* + t₂t₂* = 1` on every basis vector of
/// `P₂(J)`, `|J| ≤ max_len`, prefix depth ≤ `depth`; and `t_J Ω = Ω`.
pub fn check_cuntz(max_len: usize, depth: usize) -> SuiteReport {
    let spaces = all_spaces(max_len);
    let mut report = SuiteReport::new("cuntz O2")
        .param("max_period", max_len)
        .param("depth", depth);
    let mut r = Recorder::default();
    for s in &spaces {
        let omega = gp_vector(s);
        r.states(
            || format!("t_J Ω in {s}"),
            &omega,
            &apply_t_word(s.word(), &omega),
        );
    }
    report.absorb(r);
    let states = basis_states(&spaces, depth);
    report.absorb(par_record(&states, |v, r| {
        for i in LETTERS {
            for j in LETTERS {
                let got = apply_t_star(i, &apply_t(j, v));
                let expected = if i == j {
                    v.clone()
                } else {
                    State::zero(v.space())
                };
                r.states(
                    || format!("t{}* t{} {v}", i.index(), j.index()),
                    &expected,
                    &got,
                );
            }
        }
        let sum = LETTERS
            .iter()
            .map(|&i| apply_t(i, &apply_t_star(i, v)))
            .fold(State::zero(v.space()), |a, b| {
                a.add(&b).expect("same space")
            });
        r.states(|| format!("(t1t1* + t2t2*) {v}"), v, &sum);
    }));
    report
}

/// `s_m* s_n = δ_mn`, partial sums of `s_m s_m*` are subprojections of the
/// identity, `s_m = t₂^{m−1}t₁` and `t₂ s_n = s_{n+1}`, for indices
/// `≤ max_index`.
pub fn check_oinfty(max_index: u64, depth: usize) -> SuiteReport {
    let states = basis_states(&all_spaces(3), depth);
    let mut report = SuiteReport::new("cuntz O_inf")
        .param("max_index", max_index)
        .param("depth", depth);
    report.absorb(par_record(&states, |v, r| {
        for m in 1..=max_index {
            for n in 1..=max_index {
                let got = apply_s_star(m, &apply_s(n, v));
                let expected = if m == n {
                    v.clone()
                } else {
                    State::zero(v.space())
                };
                r.states(|| format!("s{m}* s{n} {v}"), &expected, &got);
            }
            let mut t = vec![Letter::Two; m as usize - 1];
            t.push(Letter::One);
            r.states(
                || format!("s{m} = t2^{}t1 on {v}", m - 1),
                &apply_t_word(&t, v),
                &apply_s(m, v),
            );
            r.states(
                || format!("t2 s{m} = s{} on {v}", m + 1),
                &apply_s(m + 1, v),
                &apply_t(Letter::Two, &apply_s(m, v)),
            );
        }
        // basis vectors are eigenvectors of every s_m s_m*, so Σ ≤ I means
        // at most one projection fires and it returns v
        let mut hits = 0;
        for m in 1..=max_index {
            let p = apply_s(m, &apply_s_star(m, v));
            if !p.is_zero() {
                hits += 1;
                r.states(|| format!("s{m}s{m}* {v}"), v, &p);
            }
        }
        r.truth(
            || format!("Σ_{{m≤{max_index}}} s_m s_m* {v} has {hits} nonzero terms"),
            hits <= 1,
        );
    }));
    report
}

/// Fock boson states with `≤ particles` particles in modes `≤ modes`, plus
/// shallow basis vectors of two non-Fock spaces.
fn boson_sample(particles: u64, modes: u64) -> Vec<State> {
    let lim = Limits::default();
    let mut out: Vec<State> = BosonMonomial::all_up_to(particles, modes)
        .iter()
        .map(|m| boson_state(m, &lim).expect("within limits"))
        .collect();
    out.extend(basis_states(
        &["12".parse().unwrap(), "112".parse().unwrap()],
        3,
    ));
    out
}

fn fermion_sample(particles: u64, modes: u64) -> Vec<State> {
    let lim = Limits::default();
    let mut out: Vec<State> = FermionSubset::all_subsets_of(modes)
        .iter()
        .filter(|s| s.len() as u64 <= particles)
        .map(|s| fermion_state(s, &lim).expect("within limits"))
        .collect();
    out.extend(basis_states(
        &["21".parse().unwrap(), "122".parse().unwrap()],
        3,
    ));
    out
}

/// `[b_m, b_n*] = δ_mn`, `[b_m, b_n] = [b_m*, b_n*] = 0` for `m, n ≤ modes`.
pub fn check_ccr(particles: u64, modes: u64) -> SuiteReport {
    let states = boson_sample(particles, modes);
    let mut report = SuiteReport::new("ccr")
        .param("particles", particles)
        .param("modes", modes)
        .param("states", states.len());
    report.absorb(par_record(&states, |v, r| {
        for m in 1..=modes {
            for n in 1..=modes {
                let bb = |c1, m1, c2, n2| apply_boson(c1, m1, &apply_boson(c2, n2, v));
                let comm = bb(false, m, true, n).sub(&bb(true, n, false, m)).unwrap();
                let expected = if m == n {
                    v.clone()
                } else {
                    State::zero(v.space())
                };
                r.states(|| format!("[b{m}, b{n}*] {v}"), &expected, &comm);
                r.states(
                    || format!("[b{m}, b{n}] {v}"),
                    &bb(false, n, false, m),
                    &bb(false, m, false, n),
                );
                r.states(
                    || format!("[b{m}*, b{n}*] {v}"),
                    &bb(true, n, true, m),
                    &bb(true, m, true, n),
                );
            }
        }
    }));
    report
}

/// `{a_m, a_n*} = δ_mn`, `{a_m, a_n} = {a_m*, a_n*} = 0` for `m, n ≤ modes`.
pub fn check_car(particles: u64, modes: u64) -> SuiteReport {
    let states = fermion_sample(particles, modes);
    let mut report = SuiteReport::new("car")
        .param("particles", particles)
        .param("modes", modes)
        .param("states", states.len());
    report.absorb(par_record(&states, |v, r| {
        for m in 1..=modes {
            for n in 1..=modes {
                let aa = |c1, m1, c2, n2| apply_fermion(c1, m1, &apply_fermion(c2, n2, v));
                let anti = aa(false, m, true, n).add(&aa(true, n, false, m)).unwrap();
                let expected = if m == n {
                    v.clone()
                } else {
                    State::zero(v.space())
                };
                r.states(|| format!("{{a{m}, a{n}*}} {v}"), &expected, &anti);
                let anti = aa(false, m, false, n).add(&aa(false, n, false, m)).unwrap();
                r.zero(|| format!("{{a{m}, a{n}}} {v}"), &anti);
                let anti = aa(true, m, true, n).add(&aa(true, n, true, m)).unwrap();
                r.zero(|| format!("{{a{m}*, a{n}*}} {v}"), &anti);
            }
        }
    }));
    report
}

/// `s_n b_m = b_{m+1} s_n`, `s_n b_m* = b*_{m+1} s_n` and their adjoints.
pub fn check_boson_intertwining(particles: u64, modes: u64) -> SuiteReport {
    let states = boson_sample(particles, modes);
    let mut report = SuiteReport::new("intertwining s_n b_m")
        .param("particles", particles)
        .param("modes", modes);
    report.absorb(par_record(&states, |v, r| {
        for n in 1..=modes {
            for m in 1..=modes {
                for create in [false, true] {
                    let st = if create { "*" } else { "" };
                    r.states(
                        || format!("s{n} b{m}{st} {v}"),
                        &apply_boson(create, m + 1, &apply_s(n, v)),
                        &apply_s(n, &apply_boson(create, m, v)),
                    );
                    // adjoint form: b_m s_n* = s_n* b_{m+1}
                    r.states(
                        || format!("b{m}{st} s{n}* {v}"),
                        &apply_s_star(n, &apply_boson(create, m + 1, v)),
                        &apply_boson(create, m, &apply_s_star(n, v)),
                    );
                }
            }
        }
    }));
    report
}

/// `t_i a_m = (−1)^{i−1} a_{m+1} t_i`, `(−1)^{i−1} t_i a_m* = a*_{m+1} t_i`
/// and their adjoints.
pub fn check_fermion_intertwining(particles: u64, modes: u64) -> SuiteReport {
    let states = fermion_sample(particles, modes);
    let mut report = SuiteReport::new("intertwining t_i a_m")
        .param("particles", particles)
        .param("modes", modes);
    report.absorb(par_record(&states, |v, r| {
        for i in LETTERS {
            let eps = sign(if i == Letter::One { 1 } else { -1 });
            for m in 1..=modes {
                for create in [false, true] {
                    let st = if create { "*" } else { "" };
                    let lhs = apply_t(i, &apply_fermion(create, m, v)).scale(&eps);
                    let rhs = apply_fermion(create, m + 1, &apply_t(i, v));
                    r.states(|| format!("t{} a{m}{st} {v}", i.index()), &rhs, &lhs);
                    // adjoint form: a_m t_i* = (−1)^{i−1} t_i* a_{m+1}
                    let lhs = apply_fermion(create, m, &apply_t_star(i, v));
                    let rhs = apply_t_star(i, &apply_fermion(create, m + 1, v)).scale(&eps);
                    r.states(|| format!("a{m}{st} t{}* {v}", i.index()), &rhs, &lhs);
                }
            }
        }
    }));
    report
}

/// `t₁ⁿ t₂ᵐ = A_{n,m} t₁^{n+m}` with `A_{n,m} = a*_{n+1}⋯a*_{n+m}`, for
/// `0 ≤ n ≤ max`, `1 ≤ m ≤ max`.
pub fn check_word_identity(max: u64, depth: usize) -> SuiteReport {
    let states = basis_states(&all_spaces(2), depth);
    let mut report = SuiteReport::new("t1^n t2^m = A_{n,m} t1^{n+m}")
        .param("max", max)
        .param("depth", depth);
    report.absorb(par_record(&states, |v, r| {
        for n in 0..=max {
            for m in 1..=max {
                let mut w = vec![Letter::One; n as usize];
                w.extend(std::iter::repeat_n(Letter::Two, m as usize));
                let lhs = apply_t_word(&w, v);
                let mut rhs = apply_t_word(&vec![Letter::One; (n + m) as usize], v);
                for k in (n + 1..=n + m).rev() {
                    rhs = apply_fermion(true, k, &rhs);
                }
                r.states(|| format!("n={n} m={m} on {v}"), &lhs, &rhs);
            }
        }
    }));
    report
}

type Op<'a> = Box<dyn Fn(&State) -> State + Sync + 'a>;

/// `b₁ = Σ_{m≤cutoff} √m s_m s_{m+1}*` and its adjoint, summed literally.
fn series_b1(create: bool, cutoff: u64) -> Op<'static> {
    Box::new(move |v: &State| {
        (1..=cutoff).fold(State::zero(v.space()), |acc, m| {
            let term = if create {
                apply_s(m + 1, &apply_s_star(m, v))
            } else {
                apply_s(m, &apply_s_star(m + 1, v))
            };
            acc.add(&term.scale(&RadicalScalar::sqrt_of_nat(m)))
                .unwrap()
        })
    })
}

/// `ρ(x) = Σ_{m≤cutoff} s_m x s_m*`, summed literally.
fn series_rho(x: Op<'static>, cutoff: u64) -> Op<'static> {
    Box::new(move |v: &State| {
        (1..=cutoff).fold(State::zero(v.space()), |acc, m| {
            // zero summands are skipped so nested series stay linear in depth
            let inner = apply_s_star(m, v);
            if inner.is_zero() {
                return acc;
            }
            acc.add(&apply_s(m, &x(&inner))).unwrap()
        })
    })
}

/// Compares the block-peeling boson action with the truncated defining
/// series `b_n = ρ^{n−1}(Σ √m s_m s_{m+1}*)`, and with the symbolic `ρ`
/// evaluator, for modes `≤ 5`.
pub fn check_boson_series(depth: usize) -> SuiteReport {
    let spaces = block_spaces(3);
    let states = basis_states(&spaces, depth);
    // one block of a basis word spans at most the prefix plus one period
    let cutoff = depth as u64 + 3 + 1;
    let ops: Vec<(u64, bool, Op<'static>)> = (1..=5u64)
        .flat_map(|n| {
            [false, true].into_iter().map(move |create| {
                let op = (1..n).fold(series_b1(create, cutoff + n), |acc, _| {
                    series_rho(acc, cutoff + n)
                });
                (n, create, op)
            })
        })
        .collect();
    let mut report = SuiteReport::new("boson series oracle")
        .param("depth", depth)
        .param("cutoff", cutoff);
    report.absorb(par_record(&states, |v, r| {
        for (n, create, op) in &ops {
            let st = if *create { "*" } else { "" };
            let direct = apply_boson(*create, *n, v);
            r.states(|| format!("series b{n}{st} {v}"), &op(v), &direct);
            let symbolic = OperatorExpr::boson_via_rho(*n, *create).apply(v);
            r.states(|| format!("ρ^{}(b1){st} {v}", n - 1), &symbolic, &direct);
        }
    }));
    report
}

/// Expands `a_n = ζ^{n−1}(t₁t₂*)` into `2^{n−1}` signed generator words and
/// compares with the letter-peeling fermion action.
pub fn check_zeta_expansion(max_mode: u64, depth: usize) -> SuiteReport {
    let states = basis_states(&all_spaces(3), depth);
    let expansions: Vec<_> = (1..=max_mode)
        .flat_map(|n| {
            [false, true].into_iter().map(move |create| {
                let e = OperatorExpr::fermion_via_zeta(n, create)
                    .expand()
                    .expect("fermion expressions expand");
                (n, create, e)
            })
        })
        .collect();
    let mut report = SuiteReport::new("zeta expansion oracle")
        .param("max_mode", max_mode)
        .param("depth", depth);
    let mut r = Recorder::default();
    for (n, _, e) in &expansions {
        r.eq(
            || format!("term count of a{n}"),
            &(1usize << (n - 1)),
            &e.len(),
        );
    }
    report.absorb(r);
    report.absorb(par_record(&states, |v, r| {
        for (n, create, e) in &expansions {
            let st = if *create { "*" } else { "" };
            r.states(
                || format!("ζ-expanded a{n}{st} {v}"),
                &apply_fermion(*create, *n, v),
                &apply_expanded(e, v),
            );
        }
    }));
    report
}
