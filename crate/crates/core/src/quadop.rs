//! Derivations in the primitive and grouplike directions, the quadratic
//! differential operator attached to a bicharacter table, and its
//! exponential through the commuting `Q0 · Q1 · Qp` factorization.

use crate::bichar::BicharSpec;
use crate::coeff::{binomial, rat_pow, LaurentPoly, Rational};
use crate::hopf::{HopfElement, Monomial};

use num::One;

/// Partial derivative `∂/∂x_n`; the grouplike factor is inert.
pub fn derive_primitive(n: usize, a: &HopfElement) -> HopfElement {
    let mut out = HopfElement::zero(a.signature().clone());
    for (m, c) in a.terms() {
        if let Some((lowered, k)) = m.derive_primitive(n) {
            out.add_term(lowered, c.scale(&crate::coeff::rat(k as i64, 1)));
        }
    }
    out
}

/// Derivation `∂/∂a_i`: scales each monomial `e^α x^I` by the `i`-th
/// grouplike exponent of `α`.
pub fn derive_grouplike(i: usize, a: &HopfElement) -> HopfElement {
    let mut out = HopfElement::zero(a.signature().clone());
    for (m, c) in a.terms() {
        let g = m.group_exponents()[i];
        if g != 0 {
            out.add_term(m.clone(), c.scale(&crate::coeff::rat(g, 1)));
        }
    }
    out
}

/// The quadratic operator built from a bicharacter table. Its exponential
/// splits into three commuting stages:
///
/// * `Q0` — pure grouplike part; `e^{Q0}` multiplies each monomial by the
///   eigenvalue `Π gg(i,j)^{m_i m_j}` (no logarithms are ever formed),
/// * `Q1` — mixed part `Σ (b_im + c_mi) ∂/∂a_i ∂/∂x_m`; `e^{Q1}` is the
///   polynomial shift `x_m ← x_m + Σ_i m_i (b_im + c_mi)`,
/// * `Qp` — pure primitive part `Σ q_mn ∂²/∂x_m ∂x_n`; `e^{Qp}` is a
///   terminating series since each application drops the degree by two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticOperator {
    spec: BicharSpec,
}

impl QuadraticOperator {
    pub fn new(spec: BicharSpec) -> Self {
        QuadraticOperator { spec }
    }

    pub fn spec(&self) -> &BicharSpec {
        &self.spec
    }

    /// Replaces the primitive–primitive table by its symmetrization halved,
    /// `(q_mn + q_nm) / 2`; `apply_exp_qp` output is unchanged.
    pub fn symmetrized_operator(&self) -> Self {
        let mut spec = self.spec.clone();
        let pairs: Vec<(usize, usize)> = self
            .spec
            .pp_entries()
            .map(|((m, n), _)| (m.min(n), m.max(n)))
            .collect();
        for (m, n) in pairs {
            let half = self
                .spec
                .pp(m, n)
                .add(&self.spec.pp(n, m))
                .scale(&crate::coeff::rat(1, 2));
            spec.set_pp(m, n, half.clone());
            spec.set_pp(n, m, half);
        }
        QuadraticOperator { spec }
    }

    /// One application of `Qp = Σ q_mn ∂²/∂x_m ∂x_n`.
    fn apply_qp(&self, a: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero(a.signature().clone());
        for ((m, n), q) in self.spec.pp_entries() {
            let d = derive_primitive(m, &derive_primitive(n, a));
            if !d.is_zero() {
                out = out.add(&d.scale(q)).expect("same signature");
            }
        }
        out
    }

    /// `e^{Qp}(a) = Σ_k Qp^k(a) / k!`, terminating at `k > deg(a)/2`.
    pub fn apply_exp_qp(&self, a: &HopfElement) -> HopfElement {
        let mut out = a.clone();
        let mut term = a.clone();
        let mut k: i64 = 0;
        loop {
            k += 1;
            term = self.apply_qp(&term).scale_rat(&crate::coeff::rat(1, k));
            if term.is_zero() {
                return out;
            }
            out = out.add(&term).expect("same signature");
        }
    }

    /// `e^{Q0}`: the grouplike eigenvalue factor `Π_{i,j} gg(i,j)^{m_i m_j}`
    /// on each monomial `e^{Σ m_i a_i} x^I`.
    pub fn apply_exp_q0(&self, a: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero(a.signature().clone());
        for (m, c) in a.terms() {
            let exps = m.group_exponents();
            let mut factor = Rational::one();
            for (i, &mi) in exps.iter().enumerate() {
                if mi == 0 {
                    continue;
                }
                for (j, &mj) in exps.iter().enumerate() {
                    if mj != 0 {
                        factor *= rat_pow(&self.spec.gg(i, j), mi * mj);
                    }
                }
            }
            out.add_term(m.clone(), c.scale(&factor));
        }
        out
    }

    /// `e^{Q1}`: on a monomial `e^α x^I` the substitution
    /// `x_m ← x_m + Σ_i m_i (b_im + c_mi)` expanded binomially.
    pub fn apply_exp_q1(&self, a: &HopfElement) -> HopfElement {
        let l = a.signature().num_grouplike();
        let mut out = HopfElement::zero(a.signature().clone());
        for (m, c) in a.terms() {
            let exps = m.group_exponents().to_vec();
            // expanded holds the image of the processed primitive factors
            let mut expanded: Vec<(Monomial, LaurentPoly)> =
                vec![(m.group_part(), LaurentPoly::one())];
            for (&p, &k) in m.primitive_exponents() {
                let mut shift = LaurentPoly::zero();
                for (i, &mi) in exps.iter().enumerate() {
                    if mi != 0 {
                        let t = self.spec.gp(i, p).add(&self.spec.pg(p, i));
                        shift = shift.add(&t.scale(&crate::coeff::rat(mi, 1)));
                    }
                }
                if shift.is_zero() {
                    for (mono, _) in &mut expanded {
                        *mono = mono.mul(&Monomial::new(vec![0; l], [(p, k)].into_iter().collect()));
                    }
                    continue;
                }
                let mut next = Vec::with_capacity(expanded.len() * (k as usize + 1));
                for (mono, w) in &expanded {
                    for j in 0..=k {
                        let b = Rational::from(binomial(k as u64, j as u64));
                        let xj = Monomial::new(vec![0; l], [(p, j)].into_iter().collect());
                        let coeff = w.mul(&shift.pow(k - j)).scale(&b);
                        next.push((mono.mul(&xj), coeff));
                    }
                }
                expanded = next;
            }
            for (mono, w) in expanded {
                out.add_term(mono, w.mul(c));
            }
        }
        out
    }

    /// `e^Q = e^{Q1} e^{Qp} e^{Q0}`; the three stages commute, so the
    /// composition order is immaterial.
    pub fn apply_exp_q(&self, a: &HopfElement) -> HopfElement {
        self.apply_exp_q1(&self.apply_exp_qp(&self.apply_exp_q0(a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::hopf::{AlgebraSignature, SigRef};
    use crate::twist::eq_map;

    fn sig() -> SigRef {
        AlgebraSignature::plain(2, 3)
    }

    fn sample_spec(sig: &SigRef) -> BicharSpec {
        let mut r = BicharSpec::identity(sig.clone());
        r.set_gg(0, 0, rat(4, 1)).unwrap();
        r.set_gg(0, 1, rat(2, 3)).unwrap();
        r.set_gg(1, 0, rat(-1, 2)).unwrap();
        r.set_gg(1, 1, rat(9, 1)).unwrap();
        r.set_gp(0, 0, LaurentPoly::monomial(-1, rat(1, 2)));
        r.set_pg(1, 1, LaurentPoly::from_int(3));
        r.set_pp(0, 1, LaurentPoly::monomial(-2, rat(1, 16)));
        r.set_pp(1, 0, LaurentPoly::from_int(5));
        r.set_pp(0, 0, LaurentPoly::monomial(-1, rat(-1, 4)));
        r
    }

    #[test]
    fn derivative_examples() {
        let s = sig();
        let x1 = HopfElement::primitive(s.clone(), 0);
        let sq = x1.product(&x1).unwrap();
        assert_eq!(derive_primitive(0, &sq), x1.scale(&LaurentPoly::from_int(2)));
        let g = HopfElement::grouplike(s.clone(), 0, 1);
        let gx = g.product(&x1).unwrap();
        assert_eq!(derive_primitive(0, &gx), g);
        assert!(derive_primitive(1, &x1).is_zero());
    }

    #[test]
    fn grouplike_derivative_examples() {
        let s = sig();
        let g = HopfElement::grouplike(s.clone(), 1, 1);
        assert_eq!(derive_grouplike(1, &g), g);
        assert!(derive_grouplike(0, &g).is_zero());
        // ∂_{a1}(e^{3a1 - a2} x3) = 3 e^{3a1 - a2} x3
        let m = crate::hopf::Monomial::new(vec![3, -1], [(2, 1)].into_iter().collect());
        let a = HopfElement::from_monomial(s.clone(), m, LaurentPoly::one());
        assert_eq!(derive_grouplike(0, &a), a.scale(&LaurentPoly::from_int(3)));
        assert!(derive_grouplike(0, &HopfElement::primitive(s, 2)).is_zero());
    }

    #[test]
    fn exp_qp_examples() {
        let s = sig();
        let q = QuadraticOperator::new(sample_spec(&s));
        let xm = HopfElement::primitive(s.clone(), 0);
        let xn = HopfElement::primitive(s.clone(), 1);
        assert_eq!(q.apply_exp_qp(&xm), xm);
        assert_eq!(q.apply_exp_qp(&HopfElement::one(s.clone())), HopfElement::one(s.clone()));
        let prod = xm.product(&xn).unwrap();
        let corr = q.spec().pp(0, 1).add(&q.spec().pp(1, 0));
        let expected = prod.add(&HopfElement::scalar(s, corr)).unwrap();
        assert_eq!(q.apply_exp_qp(&prod), expected);
    }

    #[test]
    fn exp_q_on_grouplikes() {
        let s = sig();
        let r = sample_spec(&s);
        let q = QuadraticOperator::new(r.clone());
        let gi = HopfElement::grouplike(s.clone(), 0, 1);
        assert_eq!(q.apply_exp_q(&gi), gi.scale_rat(&r.gg(0, 0)));
        let gij = gi.product(&HopfElement::grouplike(s, 1, 1)).unwrap();
        let factor = r.gg(0, 0) * r.gg(0, 1) * r.gg(1, 0) * r.gg(1, 1);
        assert_eq!(q.apply_exp_q(&gij), gij.scale_rat(&factor));
    }

    #[test]
    fn exp_q_shifts_mixed_monomial() {
        // e^Q(e^α x_m) = λ (e^α x_m + e^α Σ_i m_i (b_im + c_mi))
        let s = sig();
        let r = sample_spec(&s);
        let q = QuadraticOperator::new(r.clone());
        let g = HopfElement::grouplike(s.clone(), 0, 1);
        let gx = g.product(&HopfElement::primitive(s, 0)).unwrap();
        let shift = r.gp(0, 0).add(&r.pg(0, 0));
        let expected = gx.add(&g.scale(&shift)).unwrap().scale_rat(&r.gg(0, 0));
        assert_eq!(q.apply_exp_q(&gx), expected);
    }

    #[test]
    fn symmetrized_operator_halves_pp() {
        let s = sig();
        let mut spec = BicharSpec::identity(s.clone());
        let t = LaurentPoly::monomial(-1, rat(1, 3));
        spec.set_pp(0, 1, t.clone());
        let q = QuadraticOperator::new(spec);
        let sym = q.symmetrized_operator();
        let half = t.scale(&rat(1, 2));
        assert_eq!(sym.spec().pp(0, 1), half);
        assert_eq!(sym.spec().pp(1, 0), half);
        // a symmetric table is unchanged
        let q2 = sym.symmetrized_operator();
        assert_eq!(q2, sym);
        // e^{Qp} is insensitive to the antisymmetric part
        let x0 = HopfElement::primitive(s.clone(), 0);
        let x1 = HopfElement::primitive(s, 1);
        let a = x0.product(&x1).unwrap().product(&x0).unwrap();
        assert_eq!(q.apply_exp_qp(&a), sym.apply_exp_qp(&a));
    }

    #[test]
    fn stages_commute() {
        let s = sig();
        let q = QuadraticOperator::new(sample_spec(&s));
        let m = crate::hopf::Monomial::new(vec![1, -2], [(0, 2), (1, 1)].into_iter().collect());
        let a = HopfElement::from_monomial(s.clone(), m, LaurentPoly::one())
            .add(&HopfElement::primitive(s, 2))
            .unwrap();
        let stages: [fn(&QuadraticOperator, &HopfElement) -> HopfElement; 3] = [
            QuadraticOperator::apply_exp_q0,
            QuadraticOperator::apply_exp_q1,
            QuadraticOperator::apply_exp_qp,
        ];
        let orders = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let reference = q.apply_exp_q(&a);
        for order in orders {
            let mut v = a.clone();
            for idx in order {
                v = stages[idx](&q, &v);
            }
            assert_eq!(v, reference);
        }
    }

    #[test]
    fn exp_q_matches_eq_map() {
        let s = sig();
        let r = sample_spec(&s);
        let q = QuadraticOperator::new(r.clone());
        let m = crate::hopf::Monomial::new(vec![1, 1], [(0, 2), (1, 1)].into_iter().collect());
        let a = HopfElement::from_monomial(s.clone(), m, LaurentPoly::one())
            .add(&HopfElement::grouplike(s.clone(), 1, -1))
            .unwrap()
            .add(&HopfElement::primitive(s, 2).scale(&LaurentPoly::monomial(-1, rat(2, 1))))
            .unwrap();
        assert_eq!(q.apply_exp_q(&a), eq_map(&r, &a).unwrap());
    }
}
