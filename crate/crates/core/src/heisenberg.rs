//! Rank-1 Heisenberg Fock space: creation/annihilation modes, normal
//! ordered field words evaluated lazily per `z`-exponent, field-state
//! correspondence at `z = 0`, the half-integer-moded twisted variant, and
//! the bullet-product state attached to a twisted word.
//!
//! Modes and `z`-exponents are stored doubled (`n2 = 2n`), so integer and
//! half-integer indexing share one representation: untwisted data is even,
//! twisted data is odd.

use std::collections::BTreeMap;

use num::One;

use crate::bichar::BicharSpec;
use crate::coeff::{factorial, Rational};
use crate::error::Error;
use crate::hopf::{AlgebraSignature, HopfElement, SigRef};
use crate::quadop::derive_primitive;
use crate::twist::{eq_map, BulletWord};
use crate::Result;

/// Signature of the Fock module: no grouplikes, `levels` variables named
/// `x1, x2, …` (untwisted, level `m`) or `y1/2, y3/2, …` (twisted, level
/// `m - 1/2`).
pub fn fock_signature(twisted: bool, levels: usize) -> SigRef {
    let names = (1..=levels)
        .map(|m| {
            if twisted {
                format!("y{}/2", 2 * m - 1)
            } else {
                format!("x{m}")
            }
        })
        .collect();
    AlgebraSignature::new(0, names).expect("generated names are unique")
}

/// The vacuum state `1`.
pub fn vacuum(twisted: bool) -> HopfElement {
    HopfElement::one(fock_signature(twisted, 0))
}

/// Doubled level of the `idx`-th Fock variable.
fn level2_of_index(idx: usize, twisted: bool) -> i64 {
    if twisted {
        2 * idx as i64 + 1
    } else {
        2 * (idx as i64 + 1)
    }
}

/// Variable index of a positive doubled level.
fn index_of_level2(level2: i64, twisted: bool) -> usize {
    debug_assert!(level2 > 0);
    if twisted {
        ((level2 - 1) / 2) as usize
    } else {
        (level2 / 2 - 1) as usize
    }
}

/// Multiplies a state by the level-`level2` variable, extending the
/// signature when the variable is new.
fn create(level2: i64, v: &HopfElement, twisted: bool) -> Result<HopfElement> {
    let idx = index_of_level2(level2, twisted);
    let sig = AlgebraSignature::merge(v.signature(), &fock_signature(twisted, idx + 1))?;
    let x = HopfElement::primitive(sig, idx);
    v.product(&x)
}

/// Applies the Heisenberg mode `h_{n2/2}`: creation modes multiply by the
/// corresponding variable, annihilation modes act as `n ∂/∂x_n`, and the
/// zero mode kills everything.
pub fn apply_mode(n2: i64, v: &HopfElement, twisted: bool) -> Result<HopfElement> {
    let odd = n2.rem_euclid(2) == 1;
    if odd != twisted {
        return Err(Error::ModeParityMismatch);
    }
    if n2 == 0 {
        return Ok(HopfElement::zero(v.signature().clone()));
    }
    if n2 < 0 {
        return create(-n2, v, twisted);
    }
    let idx = index_of_level2(n2, twisted);
    if idx >= v.signature().num_primitives() {
        return Ok(HopfElement::zero(v.signature().clone()));
    }
    Ok(derive_primitive(idx, v).scale_rat(&crate::coeff::rat(n2, 2)))
}

/// A normal ordered word of fields: each factor is `∂_z^d h(z) / d!`; all
/// factors share the twist flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldWord {
    factors: Vec<u32>,
    twisted: bool,
}

impl FieldWord {
    pub fn new(factors: Vec<u32>, twisted: bool) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Invalid("field word must be nonempty".into()));
        }
        Ok(FieldWord { factors, twisted })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn is_twisted(&self) -> bool {
        self.twisted
    }
}

/// Finitely many evaluated coefficients of a field word applied to a
/// state; keys are doubled `z`-exponents within the requested window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldValue {
    twisted: bool,
    terms: BTreeMap<i64, HopfElement>,
}

impl FieldValue {
    pub fn coeff2(&self, e2: i64) -> Option<&HopfElement> {
        self.terms.get(&e2)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &HopfElement)> {
        self.terms.iter().map(|(&e, v)| (e, v))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&e2, v)| {
                    let exp = if e2 % 2 == 0 {
                        serde_json::json!(e2 / 2)
                    } else {
                        serde_json::json!(format!("{e2}/2"))
                    };
                    serde_json::json!({ "z_exponent": exp, "state": v.to_string() })
                })
                .collect(),
        )
    }
}

/// Derivative-of-mode coefficient: the `z`-power of mode `n` in
/// `∂_z^d h(z)/d!` is `z^{-n-1-d}` with scalar `Π_{t=1..d} (-n-t) / d!`.
fn mode_coeff(n2: i64, d: u32) -> Rational {
    let mut num = Rational::one();
    for t in 1..=d as i64 {
        num *= crate::coeff::rat(-n2 - 2 * t, 2);
    }
    num / Rational::from(factorial(d as u64))
}

/// Largest doubled level-weight of any monomial in `v`: an upper bound on
/// the total annihilation weight any word can extract from `v`.
fn weight2(v: &HopfElement, twisted: bool) -> i64 {
    v.terms()
        .map(|(m, _)| {
            m.primitive_exponents()
                .iter()
                .map(|(&p, &k)| level2_of_index(p, twisted) * k as i64)
                .sum::<i64>()
        })
        .max()
        .unwrap_or(0)
}

/// Coefficient of `z^{e2/2}` in the nested normal ordered word applied to
/// `v`. The word `[A, R…]` unfolds as `A₊ R + R A₋`: annihilation modes of
/// the leftmost factor hit the state first, creation modes multiply last.
fn apply_word(factors: &[u32], v: &HopfElement, e2: i64, twisted: bool) -> Result<HopfElement> {
    let Some((&d, rest)) = factors.split_first() else {
        return Ok(if e2 == 0 {
            v.clone()
        } else {
            HopfElement::zero(v.signature().clone())
        });
    };
    let d_shift = 2 * (1 + d as i64);
    let mut out = HopfElement::zero(v.signature().clone());

    // R A₋ : finitely many annihilation modes act nontrivially on v
    let mut levels: Vec<i64> = v
        .terms()
        .flat_map(|(m, _)| {
            m.primitive_exponents()
                .keys()
                .map(|&p| level2_of_index(p, twisted))
                .collect::<Vec<_>>()
        })
        .collect();
    levels.sort_unstable();
    levels.dedup();
    for n2 in levels {
        let hv = apply_mode(n2, v, twisted)?;
        if hv.is_zero() {
            continue;
        }
        let inner = apply_word(rest, &hv, e2 + n2 + d_shift, twisted)?;
        if !inner.is_zero() {
            out = out.add(&inner.scale_rat(&mode_coeff(n2, d)))?;
        }
    }

    // A₊ R : creation levels are bounded because the rest-word value
    // vanishes below -Σ 2(1+d_j) - weight2(v)
    let min_rest: i64 =
        -(rest.iter().map(|&dj| 2 * (1 + dj as i64)).sum::<i64>()) - weight2(v, twisted);
    let k2_max = e2 + d_shift - min_rest;
    let mut k2 = if twisted { 1 } else { 2 };
    while k2 <= k2_max {
        let inner = apply_word(rest, v, e2 - (k2 - d_shift), twisted)?;
        if !inner.is_zero() {
            let made = create(k2, &inner, twisted)?;
            out = out.add(&made.scale_rat(&mode_coeff(-k2, d)))?;
        }
        k2 += 2;
    }
    Ok(out)
}

/// Evaluates the normal ordered word on `v` for every doubled `z`-exponent
/// in `lo2 ..= hi2`; each coefficient is a finite exact state.
pub fn normal_ordered_apply(
    w: &FieldWord,
    v: &HopfElement,
    lo2: i64,
    hi2: i64,
) -> Result<FieldValue> {
    let parity = if w.twisted {
        (w.factors.len() % 2) as i64
    } else {
        0
    };
    let mut terms = BTreeMap::new();
    for e2 in lo2..=hi2 {
        if e2.rem_euclid(2) != parity {
            continue;
        }
        let state = apply_word(&w.factors, v, e2, w.twisted)?;
        if !state.is_zero() {
            terms.insert(e2, state);
        }
    }
    Ok(FieldValue { twisted: w.twisted, terms })
}

/// Field-state correspondence: the `z^0` coefficient of the word applied
/// to the vacuum. A factor with derivative order `d` contributes the
/// variable `x_{d+1}`.
pub fn field_state(w: &FieldWord) -> Result<HopfElement> {
    if w.twisted {
        return Err(Error::TwistedWordHasNoZeroEvaluation);
    }
    apply_word(&w.factors, &vacuum(false), 0, false)
}

/// The state attached to a twisted word: `EQ_{r⁻¹}(x_{n1}…x_{nk})`,
/// cross-checked against the `•_{s⁻¹}` word with `s⁻¹` the inverse of the
/// symmetrization. The two routes must agree exactly.
pub fn twisted_bullet_state(w: &FieldWord, r: &BicharSpec) -> Result<HopfElement> {
    if !w.twisted {
        return Err(Error::Invalid(
            "bullet-state evaluation expects a twisted word".into(),
        ));
    }
    let max_level = w.factors.iter().map(|&d| d as usize + 1).max().expect("nonempty");
    let sig = AlgebraSignature::merge(
        r.signature(),
        &AlgebraSignature::plain(0, max_level),
    )?;
    let factors: Vec<HopfElement> = w
        .factors
        .iter()
        .map(|&d| HopfElement::primitive(sig.clone(), d as usize))
        .collect();
    let mut monomial = HopfElement::one(sig.clone());
    for f in &factors {
        monomial = monomial.product(f)?;
    }
    let eq_route = eq_map(&r.inverse(), &monomial)?;
    let s_inv = r.symmetrize().inverse();
    let bullet_route = BulletWord::new(factors, s_inv)?.evaluate()?;
    if eq_route != bullet_route {
        return Err(Error::Invalid(
            "EQ and bullet-word routes disagree on the twisted word".into(),
        ));
    }
    Ok(eq_route)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, LaurentPoly};
    use crate::hopf::Monomial;

    #[test]
    fn creation_and_annihilation() {
        let v = vacuum(false);
        // h_{-1} 1 = x1
        let x1 = apply_mode(-2, &v, false).unwrap();
        assert_eq!(x1, HopfElement::primitive(fock_signature(false, 1), 0));
        // h_1 (x1^2) = 2 x1
        let sq = x1.product(&x1).unwrap();
        assert_eq!(apply_mode(2, &sq, false).unwrap(), x1.scale(&LaurentPoly::from_int(2)));
        // h_0 = 0
        assert!(apply_mode(0, &sq, false).unwrap().is_zero());
        // parity enforcement
        assert_eq!(apply_mode(1, &v, false), Err(Error::ModeParityMismatch));
        assert_eq!(apply_mode(2, &vacuum(true), true), Err(Error::ModeParityMismatch));
    }

    #[test]
    fn heisenberg_commutator() {
        // [h_m, h_n] = m δ_{m+n,0} on a sample state, both variants
        for twisted in [false, true] {
            let step = 2;
            let start = if twisted { 1 } else { 2 };
            // v = (level-a variable)^2 * (level-b variable)
            let sig = fock_signature(twisted, 3);
            let m = Monomial::new(vec![], [(0, 2), (2, 1)].into_iter().collect());
            let v = HopfElement::from_monomial(sig, m, LaurentPoly::one());
            let mut modes: Vec<i64> = Vec::new();
            let mut k = start;
            while k <= 8 {
                modes.push(k);
                modes.push(-k);
                k += step;
            }
            for &m2 in &modes {
                for &n2 in &modes {
                    let ab = apply_mode(m2, &apply_mode(n2, &v, twisted).unwrap(), twisted)
                        .unwrap();
                    let ba = apply_mode(n2, &apply_mode(m2, &v, twisted).unwrap(), twisted)
                        .unwrap();
                    let bracket = ab.sub(&ba).unwrap();
                    let expected = if m2 + n2 == 0 {
                        v.scale_rat(&rat(m2, 2))
                    } else {
                        HopfElement::zero(v.signature().clone())
                    };
                    assert_eq!(bracket, expected, "m2={m2}, n2={n2}, twisted={twisted}");
                }
            }
        }
    }

    #[test]
    fn field_state_simple_words() {
        let sig = fock_signature(false, 3);
        let x = |n: usize| HopfElement::primitive(sig.clone(), n - 1);
        // two underived factors -> x1^2
        let w = FieldWord::new(vec![0, 0], false).unwrap();
        assert_eq!(field_state(&w).unwrap(), x(1).product(&x(1)).unwrap());
        // single derived factor -> x2
        let w = FieldWord::new(vec![1], false).unwrap();
        assert_eq!(field_state(&w).unwrap(), x(2));
        // mixed orders -> x1 x2 x3
        let w = FieldWord::new(vec![0, 1, 2], false).unwrap();
        assert_eq!(
            field_state(&w).unwrap(),
            x(1).product(&x(2)).unwrap().product(&x(3)).unwrap()
        );
    }

    #[test]
    fn twisted_word_has_no_zero_evaluation() {
        let w = FieldWord::new(vec![0], true).unwrap();
        assert_eq!(field_state(&w), Err(Error::TwistedWordHasNoZeroEvaluation));
    }

    #[test]
    fn windowed_single_field_on_vacuum() {
        // :h(z): 1 has z^n coefficient x_{n+1} for n >= 0 and nothing below
        let w = FieldWord::new(vec![0], false).unwrap();
        let fv = normal_ordered_apply(&w, &vacuum(false), -6, 6).unwrap();
        let sig = fock_signature(false, 4);
        for n in 0..=3i64 {
            assert_eq!(
                fv.coeff2(2 * n),
                Some(&HopfElement::primitive(sig.clone(), n as usize))
            );
        }
        assert!(fv.coeff2(-2).is_none());
    }

    #[test]
    fn windowed_double_field_on_vacuum() {
        // z^0 coefficient of :h(z)h(z): 1 is x1^2
        let w = FieldWord::new(vec![0, 0], false).unwrap();
        let fv = normal_ordered_apply(&w, &vacuum(false), 0, 0).unwrap();
        let sig = fock_signature(false, 1);
        let x1 = HopfElement::primitive(sig, 0);
        assert_eq!(fv.coeff2(0), Some(&x1.product(&x1).unwrap()));
    }

    #[test]
    fn normal_ordering_matches_mode_expansion() {
        // :h(z)h(z): v = Σ_k z^{-k-2} ( Σ_{n<-k/2... } h_n h_{k-n} ... ) —
        // cross-check a coefficient against the direct two-mode sum with
        // annihilators placed right.
        let sig = fock_signature(false, 2);
        let v = HopfElement::primitive(sig, 1); // x2
        let w = FieldWord::new(vec![0, 0], false).unwrap();
        let fv = normal_ordered_apply(&w, &v, -8, 4).unwrap();
        // direct: coefficient of z^{e} is Σ_{a+b = -e-2} N(h_a h_b) v with
        // creation modes applied after annihilation modes
        for e in -4..=2i64 {
            let mut expected = HopfElement::zero(v.signature().clone());
            for a in -8..=8i64 {
                let b = -e - 2 - a;
                if b < -8 || b > 8 {
                    continue;
                }
                let (first, second) = if a >= 0 { (b, a) } else { (a, b) };
                // `second` acts first; `first` is the later (creation-side)
                let inner = apply_mode(2 * second, &v, false).unwrap();
                let outer = apply_mode(2 * first, &inner, false).unwrap();
                expected = expected.add(&outer).unwrap();
            }
            let got = fv
                .coeff2(2 * e)
                .cloned()
                .unwrap_or_else(|| HopfElement::zero(v.signature().clone()));
            assert_eq!(got, expected, "exponent {e}");
        }
    }

    #[test]
    fn twisted_bullet_state_routes_agree() {
        let norm = rat(2, 1);
        let r = crate::lattice::rank1_mode_bicharacter(&norm, 3);
        // single factor: primitives are fixed by every EQ
        let w = FieldWord::new(vec![0], true).unwrap();
        let state = twisted_bullet_state(&w, &r).unwrap();
        assert_eq!(state, HopfElement::primitive(r.signature().clone(), 0));
        // two underived factors: x1^2 minus the symmetrized correction
        let w = FieldWord::new(vec![0, 0], true).unwrap();
        let state = twisted_bullet_state(&w, &r).unwrap();
        let x1 = HopfElement::primitive(r.signature().clone(), 0);
        let q11 = r.pp(0, 0);
        let expected = x1
            .product(&x1)
            .unwrap()
            .add(&HopfElement::scalar(
                r.signature().clone(),
                q11.scale(&rat(-2, 1)),
            ))
            .unwrap();
        assert_eq!(state, expected);
        // longer mixed word: the internal cross-check already asserts the
        // two routes agree
        let w = FieldWord::new(vec![0, 1, 2, 0], true).unwrap();
        twisted_bullet_state(&w, &r).unwrap();
    }
}
