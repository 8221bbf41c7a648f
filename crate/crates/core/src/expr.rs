//! Symbolic operator expressions over the Cuntz generators, so that `ρ` and
//! `ζ` can act on operators before the result is applied to a state.

use std::fmt;

use crate::error::{Error, Result};
use crate::quant::{apply_boson, apply_fermion};
use crate::rep::{apply_rho, apply_s, apply_s_star, apply_t, apply_t_star, apply_zeta, State};
use crate::scalar::RadicalScalar;
use crate::word::Letter;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Identity,
    T(Letter),
    TStar(Letter),
    S(u64),
    SStar(u64),
    Boson {
        mode: u64,
        create: bool,
    },
    Fermion {
        mode: u64,
        create: bool,
    },
    Rho(Box<OperatorExpr>),
    Zeta(Box<OperatorExpr>),
    /// `x₁ x₂ ⋯ x_k`; the rightmost factor acts first.
    Product(Vec<OperatorExpr>),
    Sum(Vec<OperatorExpr>),
    Scaled(RadicalScalar, Box<OperatorExpr>),
}

/// A generator letter in an expanded monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    T(Letter),
    TStar(Letter),
}

impl OperatorExpr {
    pub fn rho(x: OperatorExpr) -> Self {
        OperatorExpr::Rho(Box::new(x))
    }

    pub fn zeta(y: OperatorExpr) -> Self {
        OperatorExpr::Zeta(Box::new(y))
    }

    pub fn product(xs: impl IntoIterator<Item = OperatorExpr>) -> Self {
        OperatorExpr::Product(xs.into_iter().collect())
    }

    pub fn scaled(c: RadicalScalar, x: OperatorExpr) -> Self {
        OperatorExpr::Scaled(c, Box::new(x))
    }

    /// `a₁ = t₁t₂*`, and its adjoint `t₂t₁*`.
    pub fn a1(create: bool) -> Self {
        if create {
            OperatorExpr::product([
                OperatorExpr::T(Letter::Two),
                OperatorExpr::TStar(Letter::One),
            ])
        } else {
            OperatorExpr::product([
                OperatorExpr::T(Letter::One),
                OperatorExpr::TStar(Letter::Two),
            ])
        }
    }

    /// `a_n = ζ^{n−1}(a₁)` as an unevaluated expression.
    pub fn fermion_via_zeta(n: u64, create: bool) -> Self {
        assert!(n >= 1);
        (1..n).fold(Self::a1(create), |acc, _| Self::zeta(acc))
    }

    /// `b_n = ρ^{n−1}(b₁)` as an unevaluated expression.
    pub fn boson_via_rho(n: u64, create: bool) -> Self {
        assert!(n >= 1);
        (1..n).fold(OperatorExpr::Boson { mode: 1, create }, |acc, _| {
            Self::rho(acc)
        })
    }

    pub fn adjoint(&self) -> Self {
        use OperatorExpr::*;
        match self {
            Identity => Identity,
            T(l) => TStar(*l),
            TStar(l) => T(*l),
            S(m) => SStar(*m),
            SStar(m) => S(*m),
            Boson { mode, create } => Boson {
                mode: *mode,
                create: !create,
            },
            Fermion { mode, create } => Fermion {
                mode: *mode,
                create: !create,
            },
            Rho(x) => Rho(Box::new(x.adjoint())),
            Zeta(y) => Zeta(Box::new(y.adjoint())),
            Product(xs) => Product(xs.iter().rev().map(|x| x.adjoint()).collect()),
            Sum(xs) => Sum(xs.iter().map(|x| x.adjoint()).collect()),
            Scaled(c, x) => Scaled(c.clone(), Box::new(x.adjoint())),
        }
    }

    pub fn apply(&self, psi: &State) -> State {
        use OperatorExpr::*;
        match self {
            Identity => psi.clone(),
            T(l) => apply_t(*l, psi),
            TStar(l) => apply_t_star(*l, psi),
            S(m) => apply_s(*m, psi),
            SStar(m) => apply_s_star(*m, psi),
            Boson { mode, create } => apply_boson(*create, *mode, psi),
            Fermion { mode, create } => apply_fermion(*create, *mode, psi),
            Rho(x) => apply_rho(x, psi),
            Zeta(y) => apply_zeta(y, psi),
            Product(xs) => xs.iter().rev().fold(psi.clone(), |acc, x| x.apply(&acc)),
            Sum(xs) => xs.iter().fold(State::zero(psi.space()), |acc, x| {
                acc.add(&x.apply(psi))
                    .expect("operators preserve the space")
            }),
            Scaled(c, x) => x.apply(psi).scale(c),
        }
    }

    /// Expands into a signed sum of monomials in `t_i, t_i*`, distributing
    /// `ζ` and `s_m` symbolically. `None` if the expression contains a boson
    /// or `ρ`, whose expansions are infinite series.
    pub fn expand(&self) -> Option<Vec<(RadicalScalar, Vec<Gen>)>> {
        use OperatorExpr::*;
        let one = RadicalScalar::one();
        Some(match self {
            Identity => vec![(one, vec![])],
            T(l) => vec![(one, vec![Gen::T(*l)])],
            TStar(l) => vec![(one, vec![Gen::TStar(*l)])],
            S(m) => {
                let mut w = vec![Gen::T(Letter::Two); *m as usize - 1];
                w.push(Gen::T(Letter::One));
                vec![(one, w)]
            }
            SStar(m) => {
                let mut w = vec![Gen::TStar(Letter::One)];
                w.extend(std::iter::repeat_n(
                    Gen::TStar(Letter::Two),
                    *m as usize - 1,
                ));
                vec![(one, w)]
            }
            Fermion { mode, create } => Self::fermion_via_zeta(*mode, *create).expand()?,
            Boson { .. } | Rho(_) => return None,
            Zeta(y) => {
                let inner = y.expand()?;
                let mut out = Vec::with_capacity(2 * inner.len());
                for (c, w) in &inner {
                    let mut left = vec![Gen::T(Letter::One)];
                    left.extend_from_slice(w);
                    left.push(Gen::TStar(Letter::One));
                    out.push((c.clone(), left));
                    let mut right = vec![Gen::T(Letter::Two)];
                    right.extend_from_slice(w);
                    right.push(Gen::TStar(Letter::Two));
                    out.push((c.neg(), right));
                }
                out
            }
            Product(xs) => {
                let mut acc = vec![(one, vec![])];
                for x in xs {
                    let ex = x.expand()?;
                    let mut next = Vec::with_capacity(acc.len() * ex.len());
                    for (c1, w1) in &acc {
                        for (c2, w2) in &ex {
                            let mut w = w1.clone();
                            w.extend_from_slice(w2);
                            next.push((c1.mul(c2), w));
                        }
                    }
                    acc = next;
                }
                acc
            }
            Sum(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    out.extend(x.expand()?);
                }
                out
            }
            Scaled(k, x) => x
                .expand()?
                .into_iter()
                .map(|(c, w)| (c.mul(k), w))
                .collect(),
        })
    }

    /// Parses a product of generator tokens such as `b1* a2 t1 s3*`.
    /// Tokens: `t1 t2 sM bN aN`, each optionally followed by `*`; `I` is the
    /// identity. The rightmost token acts first.
    pub fn parse_product(s: &str) -> Result<Self> {
        let factors = s
            .split_whitespace()
            .map(Self::parse_token)
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorExpr::Product(factors))
    }

    fn parse_token(tok: &str) -> Result<Self> {
        if tok == "I" {
            return Ok(OperatorExpr::Identity);
        }
        let (body, star) = match tok.strip_suffix('*') {
            Some(b) => (b, true),
            None => (tok, false),
        };
        let mut chars = body.chars();
        let kind = chars
            .next()
            .ok_or_else(|| Error::Parse("empty operator token".into()))?;
        let index: u64 = chars
            .as_str()
            .parse()
            .ok()
            .filter(|&n: &u64| n >= 1)
            .ok_or_else(|| Error::Parse(format!("bad operator token {tok:?}")))?;
        Ok(match (kind, index) {
            ('t', 1) | ('t', 2) => {
                let l = if index == 1 { Letter::One } else { Letter::Two };
                if star {
                    OperatorExpr::TStar(l)
                } else {
                    OperatorExpr::T(l)
                }
            }
            ('s', m) => {
                if star {
                    OperatorExpr::SStar(m)
                } else {
                    OperatorExpr::S(m)
                }
            }
            ('b', n) => OperatorExpr::Boson {
                mode: n,
                create: star,
            },
            ('a', n) => OperatorExpr::Fermion {
                mode: n,
                create: star,
            },
            _ => return Err(Error::Parse(format!("unknown operator token {tok:?}"))),
        })
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use OperatorExpr::*;
        let star = |c: bool| if c { "*" } else { "" };
        match self {
            Identity => write!(f, "I"),
            T(l) => write!(f, "t{}", l.digit()),
            TStar(l) => write!(f, "t{}*", l.digit()),
            S(m) => write!(f, "s{m}"),
            SStar(m) => write!(f, "s{m}*"),
            Boson { mode, create } => write!(f, "b{mode}{}", star(*create)),
            Fermion { mode, create } => write!(f, "a{mode}{}", star(*create)),
            Rho(x) => write!(f, "rho({x})"),
            Zeta(y) => write!(f, "zeta({y})"),
            Product(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(" "))
            }
            Sum(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| format!("({x})")).collect();
                write!(f, "{}", parts.join(" + "))
            }
            Scaled(c, x) => write!(f, "[{c}]({x})"),
        }
    }
}

/// Applies an expanded monomial sum generator by generator.
pub fn apply_expanded(terms: &[(RadicalScalar, Vec<Gen>)], psi: &State) -> State {
    let mut out = State::zero(psi.space());
    for (c, word) in terms {
        let mut cur = psi.clone();
        for g in word.iter().rev() {
            cur = match g {
                Gen::T(l) => apply_t(*l, &cur),
                Gen::TStar(l) => apply_t_star(*l, &cur),
            };
            if cur.is_zero() {
                break;
            }
        }
        out = out.add(&cur.scale(c)).expect("same space");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::RepSpace;
    use crate::word::TailWord;

    fn fock_basis(depth: usize) -> Vec<State> {
        let sp = RepSpace::fock();
        sp.basis(depth)
            .into_iter()
            .map(|w| State::unit(&sp, w).unwrap())
            .collect()
    }

    #[test]
    fn zeta_of_a1_is_a2() {
        let a2 = OperatorExpr::Fermion {
            mode: 2,
            create: false,
        };
        let z = OperatorExpr::zeta(OperatorExpr::a1(false));
        let zz = OperatorExpr::zeta(z.clone());
        let a3 = OperatorExpr::Fermion {
            mode: 3,
            create: false,
        };
        for psi in fock_basis(10) {
            assert_eq!(z.apply(&psi), a2.apply(&psi));
            assert_eq!(zz.apply(&psi), a3.apply(&psi));
        }
    }

    #[test]
    fn rho_of_b1() {
        let omega = crate::rep::gp_vector(&RepSpace::fock());
        let rb1 = OperatorExpr::rho(OperatorExpr::Boson {
            mode: 1,
            create: false,
        });
        assert!(rb1.apply(&omega).is_zero());
        let e2 = crate::rep::apply_t(Letter::Two, &omega);
        assert!(rb1.apply(&e2).is_zero());
        let b2 = OperatorExpr::Boson {
            mode: 2,
            create: true,
        };
        let rb1s = OperatorExpr::boson_via_rho(2, true);
        for psi in fock_basis(6) {
            assert_eq!(rb1s.apply(&psi), b2.apply(&psi));
        }
    }

    #[test]
    fn expansion_matches_direct_fermions() {
        for n in 1..=6u64 {
            for create in [false, true] {
                let ex = OperatorExpr::Fermion { mode: n, create }.expand().unwrap();
                assert_eq!(ex.len(), 1 << (n - 1));
                for psi in fock_basis(7) {
                    assert_eq!(
                        apply_expanded(&ex, &psi),
                        apply_fermion(create, n, &psi),
                        "a_{n} create={create}"
                    );
                }
            }
        }
        assert!(OperatorExpr::Boson {
            mode: 1,
            create: true
        }
        .expand()
        .is_none());
    }

    #[test]
    fn adjoint_reverses_products() {
        let x = OperatorExpr::parse_product("t1 s2* b3 a1*").unwrap();
        assert_eq!(x.adjoint().to_string(), "a1 b3* s2 t1*");
        assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn parse_tokens() {
        let x = OperatorExpr::parse_product("t2 t1 t2*").unwrap();
        let omega = crate::rep::gp_vector(&RepSpace::fock());
        let w: TailWord = "212(1)".parse().unwrap();
        // t2* Ω = 0
        assert!(x.apply(&omega).is_zero());
        let start = State::unit(&RepSpace::fock(), "22(1)".parse().unwrap()).unwrap();
        assert_eq!(x.apply(&start), State::unit(&RepSpace::fock(), w).unwrap());
        assert!(OperatorExpr::parse_product("t3").is_err());
        assert!(OperatorExpr::parse_product("q1").is_err());
        assert!(OperatorExpr::parse_product("b0").is_err());
    }
}
