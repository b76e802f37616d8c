//! Twisted products `m_r`, commutative bullet products, bullet words by
//! successive twisting, and the `EQ` map.

use crate::bichar::{BicharSpec, SymmetricBicharSpec};
use crate::hopf::HopfElement;
use crate::Result;

/// `m_r(a⊗b) = Σ a'b' r(a''⊗b'')`: associative and unital for any `r`,
/// commutative when `r` is symmetric.
pub fn twisted_product(r: &BicharSpec, a: &HopfElement, b: &HopfElement) -> Result<HopfElement> {
    let da = a.coproduct();
    let db = b.coproduct();
    let sig = crate::hopf::AlgebraSignature::merge(a.signature(), b.signature())?;
    let mut out = HopfElement::zero(sig.clone());
    for ((a1, a2), ca) in da.terms() {
        for ((b1, b2), cb) in db.terms() {
            let ea = HopfElement::from_monomial(sig.clone(), a2.clone(), crate::coeff::LaurentPoly::one());
            let eb = HopfElement::from_monomial(sig.clone(), b2.clone(), crate::coeff::LaurentPoly::one());
            let v = r.evaluate(&ea, &eb)?;
            if v.is_zero() {
                continue;
            }
            out.add_term(a1.mul(b1), v.mul(&ca.mul(cb)));
        }
    }
    Ok(out)
}

/// The bullet product `a • b`: twisting by a symmetric bicharacter.
pub fn bullet_product(
    s: &SymmetricBicharSpec,
    a: &HopfElement,
    b: &HopfElement,
) -> Result<HopfElement> {
    twisted_product(s.spec(), a, b)
}

/// A word of factors to be bullet-multiplied successively.
pub struct BulletWord {
    factors: Vec<HopfElement>,
    bichar: SymmetricBicharSpec,
}

impl BulletWord {
    pub fn new(factors: Vec<HopfElement>, bichar: SymmetricBicharSpec) -> Result<Self> {
        if factors.is_empty() {
            return Err(crate::Error::Invalid("bullet word must be nonempty".into()));
        }
        Ok(BulletWord { factors, bichar })
    }

    /// Left fold of the bullet product over the factors.
    pub fn evaluate(&self) -> Result<HopfElement> {
        let mut acc = self.factors[0].clone();
        for f in &self.factors[1..] {
            acc = bullet_product(&self.bichar, &acc, f)?;
        }
        Ok(acc)
    }
}

/// `EQ_r(a) = Σ r(a'⊗a'') a'''` over the iterated coproduct.
pub fn eq_map(r: &BicharSpec, a: &HopfElement) -> Result<HopfElement> {
    let sig = a.signature().clone();
    let mut out = HopfElement::zero(sig.clone());
    for ((m1, m2, m3), c) in a.coproduct2().terms() {
        let e1 = HopfElement::from_monomial(sig.clone(), m1.clone(), crate::coeff::LaurentPoly::one());
        let e2 = HopfElement::from_monomial(sig.clone(), m2.clone(), crate::coeff::LaurentPoly::one());
        let v = r.evaluate(&e1, &e2)?;
        if v.is_zero() {
            continue;
        }
        out.add_term(m3.clone(), v.mul(c));
    }
    Ok(out)
}
