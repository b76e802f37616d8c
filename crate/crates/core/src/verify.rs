//! Seeded randomized verification suites: Hopf axioms, bicharacter laws,
//! the convolution group, the exponential-operator oracle, and the
//! homomorphism/composition/invertibility/interchange identities. The same
//! suites back the acceptance tests and the CLI `verify` command.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bichar::BicharSpec;
use crate::coeff::{rat, LaurentPoly};
use crate::hopf::{AlgebraSignature, HopfElement, Monomial, SigRef};
use crate::quadop::QuadraticOperator;
use crate::twist::{bullet_product, eq_map, twisted_product};
use crate::Result;

/// Outcome of one suite: every failing case is described, none are hidden.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn rand_rational_nonzero(rng: &mut ChaCha8Rng) -> crate::coeff::Rational {
    loop {
        let n = rng.gen_range(-6i64..=6);
        if n != 0 {
            let d = rng.gen_range(1i64..=4);
            return rat(n, d);
        }
    }
}

fn rand_laurent(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for _ in 0..rng.gen_range(0..=2) {
        let e = rng.gen_range(-2i32..=2);
        let n = rng.gen_range(-4i64..=4);
        let d = rng.gen_range(1i64..=4);
        out = out.add(&LaurentPoly::monomial(e, rat(n, d)));
    }
    out
}

fn rand_signature(rng: &mut ChaCha8Rng) -> SigRef {
    AlgebraSignature::plain(rng.gen_range(0..=2), rng.gen_range(1..=3))
}

fn rand_monomial(rng: &mut ChaCha8Rng, sig: &SigRef, max_degree: u32) -> Monomial {
    let group = (0..sig.num_grouplike())
        .map(|_| rng.gen_range(-2i64..=2))
        .collect();
    let mut prim = std::collections::BTreeMap::new();
    let mut budget = max_degree;
    for p in 0..sig.num_primitives() {
        if budget == 0 {
            break;
        }
        let k = rng.gen_range(0..=budget.min(2));
        if k > 0 {
            prim.insert(p, k);
            budget -= k;
        }
    }
    Monomial::new(group, prim)
}

fn rand_element(rng: &mut ChaCha8Rng, sig: &SigRef, max_degree: u32) -> HopfElement {
    let mut out = HopfElement::zero(sig.clone());
    for _ in 0..rng.gen_range(1..=3) {
        let m = rand_monomial(rng, sig, max_degree);
        let mut c = rand_laurent(rng);
        if c.is_zero() {
            c = LaurentPoly::one();
        }
        out.add_term(m, c);
    }
    out
}

fn rand_spec(rng: &mut ChaCha8Rng, sig: &SigRef) -> BicharSpec {
    let mut spec = BicharSpec::identity(sig.clone());
    let l = sig.num_grouplike();
    let p = sig.num_primitives();
    for i in 0..l {
        for j in 0..l {
            spec.set_gg(i, j, rand_rational_nonzero(rng)).expect("nonzero");
        }
    }
    for i in 0..l {
        for m in 0..p {
            spec.set_gp(i, m, rand_laurent(rng));
            spec.set_pg(m, i, rand_laurent(rng));
        }
    }
    for m in 0..p {
        for n in 0..p {
            spec.set_pp(m, n, rand_laurent(rng));
        }
    }
    spec
}

fn suite<F>(name: &str, seed: u64, cases: usize, mut case: F) -> SuiteReport
where
    F: FnMut(&mut ChaCha8Rng) -> Result<Option<String>>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for index in 0..cases {
        match case(&mut rng) {
            Ok(None) => {}
            Ok(Some(msg)) => failures.push(format!("case {index}: {msg}")),
            Err(e) => failures.push(format!("case {index}: error {e}")),
        }
    }
    SuiteReport {
        name: name.to_string(),
        cases,
        failures,
    }
}

/// Coassociativity, cocommutativity, counit, antipode, the operator form
/// of the coproduct, and multiplicativity of the coproduct.
pub fn hopf_axioms(seed: u64, cases: usize) -> SuiteReport {
    suite("hopf-axioms", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let a = rand_element(rng, &sig, 4);
        let d = a.coproduct();
        if d.coproduct_left() != d.coproduct_right() {
            return Ok(Some(format!("coassociativity failed on {a}")));
        }
        if d.swap() != d {
            return Ok(Some(format!("cocommutativity failed on {a}")));
        }
        if d.counit_left() != a || d.counit_right() != a {
            return Ok(Some(format!("counit axiom failed on {a}")));
        }
        let eta = HopfElement::scalar(sig.clone(), a.counit());
        if d.contract_antipode_left() != eta || d.contract_antipode_right() != eta {
            return Ok(Some(format!("antipode axiom failed on {a}")));
        }
        if a.operator_coproduct() != d {
            return Ok(Some(format!("operator coproduct disagreed on {a}")));
        }
        let b = rand_element(rng, &sig, 3);
        if a.product(&b)?.coproduct() != d.mul(&b.coproduct())? {
            return Ok(Some(format!("coproduct not multiplicative on {a}, {b}")));
        }
        Ok(None)
    })
}

/// The defining laws of a bicharacter for the table extension, plus
/// agreement of table convolution with the slotwise definition.
pub fn bicharacter_laws(seed: u64, cases: usize) -> SuiteReport {
    suite("bicharacter-laws", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let r = rand_spec(rng, &sig);
        let a = rand_element(rng, &sig, 3);
        let b = rand_element(rng, &sig, 3);
        let c = rand_element(rng, &sig, 3);
        let one = HopfElement::one(sig.clone());
        if r.evaluate(&one, &a)? != a.counit() || r.evaluate(&a, &one)? != a.counit() {
            return Ok(Some(format!("unit law failed on {a}")));
        }
        // r(ab ⊗ c) = Σ r(a⊗c') r(b⊗c'')
        let lhs = r.evaluate(&a.product(&b)?, &c)?;
        let mut rhs = LaurentPoly::zero();
        for ((c1, c2), w) in c.coproduct().terms() {
            let e1 = HopfElement::from_monomial(sig.clone(), c1.clone(), LaurentPoly::one());
            let e2 = HopfElement::from_monomial(sig.clone(), c2.clone(), LaurentPoly::one());
            rhs = rhs.add(&r.evaluate(&a, &e1)?.mul(&r.evaluate(&b, &e2)?).mul(w));
        }
        if lhs != rhs {
            return Ok(Some(format!("left product law failed on {a}, {b}, {c}")));
        }
        // r(a ⊗ bc) = Σ r(a'⊗b) r(a''⊗c)
        let lhs = r.evaluate(&a, &b.product(&c)?)?;
        let mut rhs = LaurentPoly::zero();
        for ((a1, a2), w) in a.coproduct().terms() {
            let e1 = HopfElement::from_monomial(sig.clone(), a1.clone(), LaurentPoly::one());
            let e2 = HopfElement::from_monomial(sig.clone(), a2.clone(), LaurentPoly::one());
            rhs = rhs.add(&r.evaluate(&e1, &b)?.mul(&r.evaluate(&e2, &c)?).mul(w));
        }
        if lhs != rhs {
            return Ok(Some(format!("right product law failed on {a}, {b}, {c}")));
        }
        // table convolution = slotwise convolution
        let r2 = rand_spec(rng, &sig);
        let lhs = r.convolve(&r2)?.evaluate(&a, &b)?;
        let mut rhs = LaurentPoly::zero();
        for ((a1, a2), wa) in a.coproduct().terms() {
            for ((b1, b2), wb) in b.coproduct().terms() {
                let a1 = HopfElement::from_monomial(sig.clone(), a1.clone(), LaurentPoly::one());
                let a2 = HopfElement::from_monomial(sig.clone(), a2.clone(), LaurentPoly::one());
                let b1 = HopfElement::from_monomial(sig.clone(), b1.clone(), LaurentPoly::one());
                let b2 = HopfElement::from_monomial(sig.clone(), b2.clone(), LaurentPoly::one());
                let v = r.evaluate(&a1, &b1)?.mul(&r2.evaluate(&a2, &b2)?);
                rhs = rhs.add(&v.mul(&wa.mul(wb)));
            }
        }
        if lhs != rhs {
            return Ok(Some(format!("convolution law failed on {a}, {b}")));
        }
        Ok(None)
    })
}

/// Group axioms of the convolution product and symmetry of the
/// symmetrization.
pub fn convolution_group(seed: u64, cases: usize) -> SuiteReport {
    suite("convolution-group", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let r1 = rand_spec(rng, &sig);
        let r2 = rand_spec(rng, &sig);
        let r3 = rand_spec(rng, &sig);
        let eps = BicharSpec::identity(sig.clone());
        if r1.convolve(&r2)? != r2.convolve(&r1)? {
            return Ok(Some("convolution not commutative".into()));
        }
        if r1.convolve(&r2)?.convolve(&r3)? != r1.convolve(&r2.convolve(&r3)?)? {
            return Ok(Some("convolution not associative".into()));
        }
        if eps.convolve(&r1)? != r1 || r1.convolve(&eps)? != r1 {
            return Ok(Some("identity law failed".into()));
        }
        if !r1.convolve(&r1.inverse())?.is_identity()
            || !r1.inverse().convolve(&r1)?.is_identity()
        {
            return Ok(Some("inverse law failed".into()));
        }
        let s = r1.symmetrize();
        let a = rand_element(rng, &sig, 3);
        let b = rand_element(rng, &sig, 3);
        if s.evaluate(&a, &b)? != s.evaluate(&b, &a)? {
            return Ok(Some(format!("symmetrization not symmetric on {a}, {b}")));
        }
        Ok(None)
    })
}

/// Oracle equivalence: the exponential of the quadratic operator equals
/// the `EQ` map, case by case.
pub fn oracle_equivalence(seed: u64, cases: usize) -> SuiteReport {
    suite("oracle-equivalence", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let r = rand_spec(rng, &sig);
        let a = rand_element(rng, &sig, 4);
        let q = QuadraticOperator::new(r.clone());
        if q.apply_exp_q(&a) != eq_map(&r, &a)? {
            return Ok(Some(format!("e^Q disagreed with EQ on {a}")));
        }
        Ok(None)
    })
}

/// `EQ_r(ab) = EQ_r(a) • EQ_r(b)` with the symmetrized bullet.
pub fn eq_homomorphism(seed: u64, cases: usize) -> SuiteReport {
    suite("eq-homomorphism", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let r = rand_spec(rng, &sig);
        let a = rand_element(rng, &sig, 2);
        let b = rand_element(rng, &sig, 2);
        let lhs = eq_map(&r, &a.product(&b)?)?;
        let rhs = bullet_product(&r.symmetrize(), &eq_map(&r, &a)?, &eq_map(&r, &b)?)?;
        if lhs != rhs {
            return Ok(Some(format!("homomorphism failed on {a}, {b}")));
        }
        Ok(None)
    })
}

/// `EQ_{r1 ∘ r2} = EQ_{r1} ∘ EQ_{r2}`.
pub fn eq_composition(seed: u64, cases: usize) -> SuiteReport {
    suite("eq-composition", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let r1 = rand_spec(rng, &sig);
        let r2 = rand_spec(rng, &sig);
        let a = rand_element(rng, &sig, 4);
        let lhs = eq_map(&r1.convolve(&r2)?, &a)?;
        let rhs = eq_map(&r1, &eq_map(&r2, &a)?)?;
        if lhs != rhs {
            return Ok(Some(format!("composition failed on {a}")));
        }
        Ok(None)
    })
}

/// `EQ_{r⁻¹} ∘ EQ_r = Id`.
pub fn eq_invertibility(seed: u64, cases: usize) -> SuiteReport {
    suite("eq-invertibility", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let r = rand_spec(rng, &sig);
        let a = rand_element(rng, &sig, 4);
        if eq_map(&r.inverse(), &eq_map(&r, &a)?)? != a {
            return Ok(Some(format!("invertibility failed on {a}")));
        }
        Ok(None)
    })
}

/// Interchange: `EQ_r(a •_{s1} b) = EQ_r(a) •_{s2} EQ_r(b)` with
/// `s2 = s ∘ s1` for `s = symmetrize(r)`.
pub fn eq_interchange(seed: u64, cases: usize) -> SuiteReport {
    suite("eq-interchange", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let r = rand_spec(rng, &sig);
        let s1 = rand_spec(rng, &sig).symmetrize();
        let s2 = crate::bichar::SymmetricBicharSpec::new(
            r.symmetrize().spec().convolve(s1.spec())?,
        )?;
        let a = rand_element(rng, &sig, 2);
        let b = rand_element(rng, &sig, 2);
        let lhs = eq_map(&r, &bullet_product(&s1, &a, &b)?)?;
        let rhs = bullet_product(&s2, &eq_map(&r, &a)?, &eq_map(&r, &b)?)?;
        if lhs != rhs {
            return Ok(Some(format!("interchange failed on {a}, {b}")));
        }
        Ok(None)
    })
}

/// Associativity and unitality of the twisted product for arbitrary
/// tables; commutativity for symmetric ones.
pub fn twisted_product_laws(seed: u64, cases: usize) -> SuiteReport {
    suite("twisted-product-laws", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let r = rand_spec(rng, &sig);
        let a = rand_element(rng, &sig, 2);
        let b = rand_element(rng, &sig, 2);
        let c = rand_element(rng, &sig, 2);
        let one = HopfElement::one(sig.clone());
        if twisted_product(&r, &one, &a)? != a || twisted_product(&r, &a, &one)? != a {
            return Ok(Some(format!("unit law failed on {a}")));
        }
        let lhs = twisted_product(&r, &twisted_product(&r, &a, &b)?, &c)?;
        let rhs = twisted_product(&r, &a, &twisted_product(&r, &b, &c)?)?;
        if lhs != rhs {
            return Ok(Some(format!("associativity failed on {a}, {b}, {c}")));
        }
        let s = r.symmetrize();
        if bullet_product(&s, &a, &b)? != bullet_product(&s, &b, &a)? {
            return Ok(Some(format!("commutativity failed on {a}, {b}")));
        }
        Ok(None)
    })
}

/// `e^{Qp}` depends only on the symmetrization of the primitive table:
/// tables differing by an antisymmetric part act identically.
pub fn symmetrization_dependence(seed: u64, cases: usize) -> SuiteReport {
    suite("symmetrization-dependence", seed, cases, |rng| {
        let sig = AlgebraSignature::plain(0, rng.gen_range(2..=3));
        let r = rand_spec(rng, &sig);
        let mut r2 = r.clone();
        // antisymmetric perturbation: leaves the symmetrization unchanged
        for m in 0..sig.num_primitives() {
            for n in (m + 1)..sig.num_primitives() {
                let t = rand_laurent(rng);
                r2.set_pp(m, n, r.pp(m, n).add(&t));
                r2.set_pp(n, m, r.pp(n, m).sub(&t));
            }
        }
        if r.symmetrize() != r2.symmetrize() {
            return Ok(Some("perturbation changed the symmetrization".into()));
        }
        let a = rand_element(rng, &sig, 4);
        let q1 = QuadraticOperator::new(r);
        let q2 = QuadraticOperator::new(r2);
        if q1.apply_exp_qp(&a) != q2.apply_exp_qp(&a) {
            return Ok(Some(format!("e^(Qp) depended on the antisymmetric part on {a}")));
        }
        Ok(None)
    })
}

/// Stage commutation: the three exponential factors commute.
pub fn stage_commutation(seed: u64, cases: usize) -> SuiteReport {
    suite("stage-commutation", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let r = rand_spec(rng, &sig);
        let q = QuadraticOperator::new(r);
        let a = rand_element(rng, &sig, 4);
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
            if v != reference {
                return Ok(Some(format!("order {order:?} disagreed on {a}")));
            }
        }
        Ok(None)
    })
}

/// Render/parse round trip for random elements.
pub fn parse_round_trip(seed: u64, cases: usize) -> SuiteReport {
    suite("parse-round-trip", seed, cases, |rng| {
        let sig = rand_signature(rng);
        let a = rand_element(rng, &sig, 4);
        let rendered = a.to_string();
        let reparsed = crate::parse::parse_element(&rendered, &sig)?;
        if reparsed != a {
            return Ok(Some(format!("round trip failed on `{rendered}`")));
        }
        Ok(None)
    })
}

/// Runs every suite with per-suite case counts suitable for the CLI.
pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    vec![
        hopf_axioms(seed, 200),
        bicharacter_laws(seed.wrapping_add(1), 60),
        convolution_group(seed.wrapping_add(2), 200),
        oracle_equivalence(seed.wrapping_add(3), 200),
        eq_homomorphism(seed.wrapping_add(4), 200),
        eq_composition(seed.wrapping_add(5), 200),
        eq_invertibility(seed.wrapping_add(6), 200),
        eq_interchange(seed.wrapping_add(7), 200),
        twisted_product_laws(seed.wrapping_add(8), 60),
        symmetrization_dependence(seed.wrapping_add(9), 100),
        stage_commutation(seed.wrapping_add(10), 100),
        parse_round_trip(seed.wrapping_add(11), 200),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_smoke_of_all_suites() {
        for report in run_all_with_cases(7, 5) {
            assert!(report.passed(), "{}: {:?}", report.name, report.failures);
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = oracle_equivalence(42, 3);
        let b = oracle_equivalence(42, 3);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.cases, b.cases);
    }
}

/// Runs every suite with a uniform case count (used by fast smoke tests).
pub fn run_all_with_cases(seed: u64, cases: usize) -> Vec<SuiteReport> {
    vec![
        hopf_axioms(seed, cases),
        bicharacter_laws(seed.wrapping_add(1), cases),
        convolution_group(seed.wrapping_add(2), cases),
        oracle_equivalence(seed.wrapping_add(3), cases),
        eq_homomorphism(seed.wrapping_add(4), cases),
        eq_composition(seed.wrapping_add(5), cases),
        eq_invertibility(seed.wrapping_add(6), cases),
        eq_interchange(seed.wrapping_add(7), cases),
        twisted_product_laws(seed.wrapping_add(8), cases),
        symmetrization_dependence(seed.wrapping_add(9), cases),
        stage_commutation(seed.wrapping_add(10), cases),
        parse_round_trip(seed.wrapping_add(11), cases),
    ]
}
