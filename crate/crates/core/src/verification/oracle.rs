//! The `ℓ₂(ℕ)` picture of `P₂(1)`: `t_i e_n = e_{2(n−1)+i}`. Exact checks of
//! the index formulas, and a floating-point oracle that rebuilds every
//! operator from truncated `t₁, t₂` matrices and their transposes.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Failure, Recorder, SuiteReport};
use crate::quant::{apply_boson, apply_fermion};
use crate::rep::{apply_s, apply_s_star, apply_t, apply_t_star, RepSpace, State};
use crate::word::{index_to_word, word_to_index, BasisIndex, FiniteWord, Letter};

/// Exhaustive bijection check on `1..=2^bits`, in both directions.
pub fn check_codec(bits: u32) -> SuiteReport {
    let mut report = SuiteReport::new("l2 codec").param("bits", bits);
    let mut r = Recorder::default();
    let top = 1u64 << bits;
    for n in 1..=top {
        let back = index_to_word(BasisIndex(n))
            .and_then(|w| word_to_index(&w))
            .map_or_else(|e| e.to_string(), |b| b.to_string());
        r.eq(|| format!("index {n}"), &BasisIndex(n).to_string(), &back);
    }
    // every word of prefix length ≤ bits has a distinct index ≤ 2^bits
    let mut seen = std::collections::BTreeSet::new();
    for len in 0..=bits as usize {
        for w in FiniteWord::all_of_length(len) {
            let tw = RepSpace::fock().word_with_prefix(&w);
            match word_to_index(&tw) {
                Ok(BasisIndex(n)) => {
                    seen.insert(n);
                    r.truth(
                        || format!("index of {} within 2^{bits}", tw.render()),
                        n <= top,
                    );
                    r.eq(
                        || format!("word of index {n}"),
                        &tw,
                        &index_to_word(BasisIndex(n)).unwrap(),
                    );
                }
                Err(e) => r.eq(|| tw.render(), &"ok".to_string(), &e.to_string()),
            }
        }
    }
    r.eq(|| "distinct indices".into(), &(top as usize), &seen.len());
    report.absorb(r);
    report
}

fn e(n: u64) -> State {
    State::unit(
        &RepSpace::fock(),
        index_to_word(BasisIndex(n)).expect("n >= 1"),
    )
    .unwrap()
}

/// `t_i e_n = e_{2(n−1)+i}`, `s_m e_n = e_{2^{m−1}(2n−1)}`, and
/// `a_m* e₁ = b_m* e₁ = e_{2^{m−1}+1}`, `a_m e₁ = b_m e₁ = 0`, for `m ≤ max_m`
/// and target indices inside `window`.
pub fn check_l2_equations(max_m: u64, window: u64) -> SuiteReport {
    let mut report = SuiteReport::new("l2 index formulas")
        .param("max_m", max_m)
        .param("window", window);
    let mut r = Recorder::default();
    for n in 1..=window / 2 {
        for l in [Letter::One, Letter::Two] {
            let target = 2 * (n - 1) + l.index();
            r.states(
                || format!("t{} e{n}", l.index()),
                &e(target),
                &apply_t(l, &e(n)),
            );
        }
    }
    for m in 1..=max_m {
        let scale = 1u64 << (m - 1);
        let mut n = 1;
        while scale * (2 * n - 1) <= window {
            r.states(
                || format!("s{m} e{n}"),
                &e(scale * (2 * n - 1)),
                &apply_s(m, &e(n)),
            );
            n += 1;
        }
        let target = e(scale + 1);
        r.states(
            || format!("a{m}* e1"),
            &target,
            &apply_fermion(true, m, &e(1)),
        );
        r.states(
            || format!("b{m}* e1"),
            &target,
            &apply_boson(true, m, &e(1)),
        );
        r.zero(|| format!("a{m} e1"), &apply_fermion(false, m, &e(1)));
        r.zero(|| format!("b{m} e1"), &apply_boson(false, m, &e(1)));
    }
    report.absorb(r);
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FloatOp {
    T { letter: u8, star: bool },
    S { m: u64, star: bool },
    Boson { n: u64, create: bool },
    Fermion { n: u64, create: bool },
}

impl fmt::Display for FloatOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let st = |b: bool| if b { "*" } else { "" };
        match *self {
            FloatOp::T { letter, star } => write!(f, "t{letter}{}", st(star)),
            FloatOp::S { m, star } => write!(f, "s{m}{}", st(star)),
            FloatOp::Boson { n, create } => write!(f, "b{n}{}", st(create)),
            FloatOp::Fermion { n, create } => write!(f, "a{n}{}", st(create)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleOutcome {
    /// Largest `|float − exact|` over components inside the window.
    pub deviation: f64,
    /// Some component left the window, in the float run or the exact result.
    pub overflow: bool,
}

type Vector = BTreeMap<u64, f64>;

/// Truncated matrix arithmetic on `span{e₁ … e_dim}`.
struct Window {
    dim: u64,
    /// Largest `m` with `s_m e₁` inside the window.
    max_block: u64,
    overflow: bool,
}

impl Window {
    fn new(dim: u64) -> Self {
        Window {
            dim,
            max_block: 64 - dim.leading_zeros() as u64,
            overflow: false,
        }
    }

    fn push(out: &mut Vector, k: u64, x: f64) {
        *out.entry(k).or_insert(0.0) += x;
    }

    fn t(&mut self, i: u64, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&n, &x) in v {
            let k = 2 * (n - 1) + i;
            if k <= self.dim {
                Self::push(&mut out, k, x);
            } else if x != 0.0 {
                self.overflow = true;
            }
        }
        out
    }

    fn t_tr(&mut self, i: u64, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&k, &x) in v {
            if k >= i && (k - i).is_multiple_of(2) {
                Self::push(&mut out, (k - i) / 2 + 1, x);
            }
        }
        out
    }

    fn s(&mut self, m: u64, v: &Vector) -> Vector {
        let mut w = self.t(1, v);
        for _ in 1..m {
            w = self.t(2, &w);
        }
        w
    }

    fn s_tr(&mut self, m: u64, v: &Vector) -> Vector {
        let mut w = v.clone();
        for _ in 1..m {
            w = self.t_tr(2, &w);
        }
        self.t_tr(1, &w)
    }

    fn add_scaled(acc: &mut Vector, v: &Vector, c: f64) {
        for (&k, &x) in v {
            Self::push(acc, k, c * x);
        }
    }

    /// `b₁ = Σ √m s_m s_{m+1}ᵀ`, `b₁ᵀ = Σ √m s_{m+1} s_mᵀ`; `b_n = Σ s_m b_{n−1} s_mᵀ`.
    fn boson(&mut self, n: u64, create: bool, v: &Vector) -> Vector {
        let mut acc = Vector::new();
        if n == 1 {
            for m in 1..=self.max_block {
                let w = if create {
                    let x = self.s_tr(m, v);
                    self.s(m + 1, &x)
                } else {
                    let x = self.s_tr(m + 1, v);
                    self.s(m, &x)
                };
                Self::add_scaled(&mut acc, &w, (m as f64).sqrt());
            }
        } else {
            for m in 1..=self.max_block {
                let x = self.s_tr(m, v);
                let y = self.boson(n - 1, create, &x);
                let w = self.s(m, &y);
                Self::add_scaled(&mut acc, &w, 1.0);
            }
        }
        acc
    }

    /// `a₁ = t₁t₂ᵀ`; `a_n = t₁ a_{n−1} t₁ᵀ − t₂ a_{n−1} t₂ᵀ`.
    fn fermion(&mut self, n: u64, create: bool, v: &Vector) -> Vector {
        if n == 1 {
            let (from, to) = if create { (1, 2) } else { (2, 1) };
            let x = self.t_tr(from, v);
            return self.t(to, &x);
        }
        let mut acc = Vector::new();
        for (i, c) in [(1, 1.0), (2, -1.0)] {
            let x = self.t_tr(i, v);
            let y = self.fermion(n - 1, create, &x);
            let w = self.t(i, &y);
            Self::add_scaled(&mut acc, &w, c);
        }
        acc
    }

    fn apply(&mut self, op: FloatOp, v: &Vector) -> Vector {
        match op {
            FloatOp::T {
                letter,
                star: false,
            } => self.t(letter as u64, v),
            FloatOp::T { letter, star: true } => self.t_tr(letter as u64, v),
            FloatOp::S { m, star: false } => self.s(m, v),
            FloatOp::S { m, star: true } => self.s_tr(m, v),
            FloatOp::Boson { n, create } => self.boson(n, create, v),
            FloatOp::Fermion { n, create } => self.fermion(n, create, v),
        }
    }
}

fn exact_apply(op: FloatOp, psi: &State) -> State {
    let letter = |l: u8| if l == 1 { Letter::One } else { Letter::Two };
    match op {
        FloatOp::T {
            letter: l,
            star: false,
        } => apply_t(letter(l), psi),
        FloatOp::T {
            letter: l,
            star: true,
        } => apply_t_star(letter(l), psi),
        FloatOp::S { m, star: false } => apply_s(m, psi),
        FloatOp::S { m, star: true } => apply_s_star(m, psi),
        FloatOp::Boson { n, create } => apply_boson(create, n, psi),
        FloatOp::Fermion { n, create } => apply_fermion(create, n, psi),
    }
}

/// Applies `ops` (first element acts first) to `e_start` both exactly and
/// with truncated `dim × dim` matrices, and compares inside the window.
pub fn float_oracle(dim: usize, ops: &[FloatOp], start: u64) -> OracleOutcome {
    assert!(
        dim.is_power_of_two() && dim <= 1 << 14,
        "dim must be a power of two ≤ 2^14"
    );
    assert!(start >= 1 && start <= dim as u64);
    let mut win = Window::new(dim as u64);
    let mut v: Vector = [(start, 1.0)].into_iter().collect();
    let mut psi = e(start);
    for &op in ops {
        v = win.apply(op, &v);
        psi = exact_apply(op, &psi);
    }
    let mut overflow = win.overflow;
    let mut exact = Vector::new();
    for (w, c) in psi.terms() {
        match word_to_index(w) {
            Ok(BasisIndex(k)) if k <= dim as u64 => {
                exact.insert(k, c.to_f64());
            }
            _ => overflow = true,
        }
    }
    let keys: std::collections::BTreeSet<u64> = v.keys().chain(exact.keys()).copied().collect();
    let deviation = keys
        .into_iter()
        .map(|k| {
            let a = v.get(&k).copied().unwrap_or(0.0);
            let b = exact.get(&k).copied().unwrap_or(0.0);
            (a - b).abs()
        })
        .fold(0.0, f64::max);
    OracleOutcome {
        deviation,
        overflow,
    }
}

/// A sequence of `1..=max_len` generators with indices `≤ max_index`.
pub fn random_sequence<R: Rng>(rng: &mut R, max_len: usize, max_index: u64) -> Vec<FloatOp> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            let star = rng.gen_bool(0.5);
            match rng.gen_range(0..4) {
                0 => FloatOp::T {
                    letter: rng.gen_range(1..=2),
                    star,
                },
                1 => FloatOp::S {
                    m: rng.gen_range(1..=max_index),
                    star,
                },
                2 => FloatOp::Boson {
                    n: rng.gen_range(1..=max_index),
                    create: star,
                },
                _ => FloatOp::Fermion {
                    n: rng.gen_range(1..=max_index),
                    create: star,
                },
            }
        })
        .collect()
}

pub const ORACLE_TOLERANCE: f64 = 1e-9;

/// Draws seeded random sequences of length `≤ 6` on random `e_k`, `k ≤ 16`,
/// until `samples` of them stay inside the window; overflowing draws are
/// counted separately and do not fail the suite.
pub fn float_oracle_suite(dim: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("float oracle")
        .param("dim", dim)
        .param("samples", samples)
        .param("seed", seed)
        .param("tolerance", ORACLE_TOLERANCE);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut in_window, mut overflowed, mut worst) = (0usize, 0usize, 0.0f64);
    let fixed = [
        (
            vec![
                FloatOp::T {
                    letter: 2,
                    star: false,
                },
                FloatOp::T {
                    letter: 1,
                    star: false,
                },
                FloatOp::T {
                    letter: 2,
                    star: true,
                },
            ],
            1,
        ),
        (
            vec![
                FloatOp::Boson { n: 1, create: true },
                FloatOp::Boson {
                    n: 1,
                    create: false,
                },
            ],
            1,
        ),
        (vec![FloatOp::Fermion { n: 3, create: true }], 1),
    ];
    let draws = (0..samples * 50).map(|_| {
        let ops = random_sequence(&mut rng, 6, 4);
        let start = rng.gen_range(1..=16u64.min(dim as u64));
        (ops, start)
    });
    for (ops, start) in fixed.into_iter().chain(draws) {
        if in_window >= samples + 3 {
            break;
        }
        let out = float_oracle(dim, &ops, start);
        if out.overflow {
            overflowed += 1;
            continue;
        }
        in_window += 1;
        report.cases += 1;
        worst = worst.max(out.deviation);
        if out.deviation > ORACLE_TOLERANCE {
            let seq: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
            report.failures.push(Failure {
                case: format!("{} on e{start}", seq.join(" ")),
                expected: format!("deviation <= {ORACLE_TOLERANCE:e}"),
                got: format!("{:e}", out.deviation),
            });
        }
    }
    if in_window < samples + 3 {
        report.failures.push(Failure {
            case: "sample budget".into(),
            expected: format!("{} in-window sequences", samples + 3),
            got: in_window.to_string(),
        });
    }
    report.pass = report.failures.is_empty();
    report.note(format!(
        "float oracle: {in_window} in-window sequences, {overflowed} overflowing draws skipped, max deviation {worst:e}"
    ));
    report
}
