//! The Hopf algebra `Q[e^{±a1},…,e^{±aL}] ⊗ Q[x1, x2, …]` over the
//! coefficient algebra `A = Q[z, z^-1]`.
//!
//! Monomials are exponent data `e^α · x^I`: an integer vector over the
//! grouplike generators and a sparse multi-index over the primitive
//! generators. Elements are finite `A`-linear combinations of monomials.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Signed};

use crate::coeff::{binomial, factorial, LaurentPoly, Rational};
use crate::error::Error;
use crate::Result;

/// Generator layout of the algebra: `num_grouplike` grouplike generators
/// `a1..aL` and an ordered list of primitive generator names.
///
/// Primitive generators are lazily extendable: a signature whose primitive
/// list is a prefix of another is compatible with it, and binary operations
/// unify to the longer list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSignature {
    num_grouplike: usize,
    primitive_names: Vec<String>,
}

pub type SigRef = Arc<AlgebraSignature>;

impl AlgebraSignature {
    pub fn new(num_grouplike: usize, primitive_names: Vec<String>) -> Result<SigRef> {
        let mut seen = std::collections::BTreeSet::new();
        for name in &primitive_names {
            if !seen.insert(name.clone()) {
                return Err(Error::Invalid(format!("duplicate primitive name `{name}`")));
            }
        }
        Ok(Arc::new(AlgebraSignature { num_grouplike, primitive_names }))
    }

    /// A signature with primitives named `x1..xN`.
    pub fn plain(num_grouplike: usize, num_primitives: usize) -> SigRef {
        let names = (1..=num_primitives).map(|i| format!("x{i}")).collect();
        AlgebraSignature::new(num_grouplike, names).expect("generated names are unique")
    }

    pub fn num_grouplike(&self) -> usize {
        self.num_grouplike
    }

    pub fn num_primitives(&self) -> usize {
        self.primitive_names.len()
    }

    pub fn primitive_names(&self) -> &[String] {
        &self.primitive_names
    }

    pub fn primitive_index(&self, name: &str) -> Option<usize> {
        self.primitive_names.iter().position(|n| n == name)
    }

    pub fn primitive_name(&self, index: usize) -> &str {
        &self.primitive_names[index]
    }

    /// True when the two signatures agree on grouplikes and one primitive
    /// list is a prefix of the other.
    pub fn compatible(&self, other: &AlgebraSignature) -> bool {
        if self.num_grouplike != other.num_grouplike {
            return false;
        }
        let n = self.primitive_names.len().min(other.primitive_names.len());
        self.primitive_names[..n] == other.primitive_names[..n]
    }

    pub fn merge(a: &SigRef, b: &SigRef) -> Result<SigRef> {
        if !a.compatible(b) {
            return Err(Error::SignatureMismatch);
        }
        if a.primitive_names.len() >= b.primitive_names.len() {
            Ok(a.clone())
        } else {
            Ok(b.clone())
        }
    }
}

/// Exponent data `e^α · x^I`; no zero entries are stored in the primitive
/// multi-index and the unit monomial has all-zero data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    group: Vec<i64>,
    prim: BTreeMap<usize, u32>,
}

impl Monomial {
    pub fn unit(num_grouplike: usize) -> Self {
        Monomial { group: vec![0; num_grouplike], prim: BTreeMap::new() }
    }

    pub fn new(group: Vec<i64>, prim: BTreeMap<usize, u32>) -> Self {
        let prim = prim.into_iter().filter(|&(_, k)| k != 0).collect();
        Monomial { group, prim }
    }

    pub fn primitive(num_grouplike: usize, index: usize) -> Self {
        let mut m = Self::unit(num_grouplike);
        m.prim.insert(index, 1);
        m
    }

    pub fn grouplike(num_grouplike: usize, index: usize, exponent: i64) -> Self {
        let mut m = Self::unit(num_grouplike);
        m.group[index] = exponent;
        m
    }

    pub fn group_exponents(&self) -> &[i64] {
        &self.group
    }

    pub fn primitive_exponents(&self) -> &BTreeMap<usize, u32> {
        &self.prim
    }

    pub fn is_unit(&self) -> bool {
        self.prim.is_empty() && self.group.iter().all(|&g| g == 0)
    }

    pub fn has_primitives(&self) -> bool {
        !self.prim.is_empty()
    }

    /// Total degree of the primitive part.
    pub fn primitive_degree(&self) -> u32 {
        self.prim.values().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.group.len(), other.group.len());
        let group = self
            .group
            .iter()
            .zip(&other.group)
            .map(|(a, b)| a + b)
            .collect();
        let mut prim = self.prim.clone();
        for (&p, &k) in &other.prim {
            *prim.entry(p).or_insert(0) += k;
        }
        Monomial { group, prim }
    }

    /// Grouplike-only part of the monomial.
    pub fn group_part(&self) -> Self {
        Monomial { group: self.group.clone(), prim: BTreeMap::new() }
    }

    /// Primitive-only part of the monomial.
    pub fn primitive_part(&self) -> Self {
        Monomial { group: vec![0; self.group.len()], prim: self.prim.clone() }
    }

    /// `∂/∂x_p` of the monomial: the lowered monomial and the scalar factor.
    pub fn derive_primitive(&self, p: usize) -> Option<(Monomial, u32)> {
        let &k = self.prim.get(&p)?;
        let mut m = self.clone();
        if k == 1 {
            m.prim.remove(&p);
        } else {
            m.prim.insert(p, k - 1);
        }
        Some((m, k))
    }
}

/// Finite `A`-linear combination of monomials, with no stored zero
/// coefficients and deterministic (lexicographic) term order.
#[derive(Debug, Clone)]
pub struct HopfElement {
    sig: SigRef,
    terms: BTreeMap<Monomial, LaurentPoly>,
}

impl PartialEq for HopfElement {
    fn eq(&self, other: &Self) -> bool {
        self.sig.compatible(&other.sig) && self.terms == other.terms
    }
}

impl Eq for HopfElement {}

impl HopfElement {
    pub fn zero(sig: SigRef) -> Self {
        HopfElement { sig, terms: BTreeMap::new() }
    }

    pub fn one(sig: SigRef) -> Self {
        let m = Monomial::unit(sig.num_grouplike());
        Self::from_monomial(sig, m, LaurentPoly::one())
    }

    pub fn scalar(sig: SigRef, c: LaurentPoly) -> Self {
        let m = Monomial::unit(sig.num_grouplike());
        Self::from_monomial(sig, m, c)
    }

    pub fn from_monomial(sig: SigRef, m: Monomial, c: LaurentPoly) -> Self {
        let mut el = Self::zero(sig);
        el.add_term(m, c);
        el
    }

    pub fn primitive(sig: SigRef, index: usize) -> Self {
        let m = Monomial::primitive(sig.num_grouplike(), index);
        Self::from_monomial(sig, m, LaurentPoly::one())
    }

    pub fn grouplike(sig: SigRef, index: usize, exponent: i64) -> Self {
        let m = Monomial::grouplike(sig.num_grouplike(), index, exponent);
        Self::from_monomial(sig, m, LaurentPoly::one())
    }

    pub fn signature(&self) -> &SigRef {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(LaurentPoly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(key) = key {
                self.terms.remove(&key);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let sig = AlgebraSignature::merge(&self.sig, &other.sig)?;
        let mut out = Self::zero(sig);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.clone());
        }
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.sig.clone());
        for (m, v) in self.terms() {
            out.add_term(m.clone(), v.mul(c));
        }
        out
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&LaurentPoly::constant(c.clone()))
    }

    /// Commutative algebra product: exponent-wise addition on monomials,
    /// coefficient multiplication.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let sig = AlgebraSignature::merge(&self.sig, &other.sig)?;
        let mut out = Self::zero(sig);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Counit: `η(e^α x^I) = 1` when `I` is empty, else `0`, extended
    /// linearly.
    pub fn counit(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in self.terms() {
            if !m.has_primitives() {
                out = out.add(c);
            }
        }
        out
    }

    /// Antipode: `S(e^α x^I) = (-1)^{|I|} e^{-α} x^I`, extended linearly.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(self.sig.clone());
        for (m, c) in self.terms() {
            let group = m.group_exponents().iter().map(|&g| -g).collect();
            let sm = Monomial::new(group, m.primitive_exponents().clone());
            let sign = if m.primitive_degree() % 2 == 0 { 1 } else { -1 };
            out.add_term(sm, c.scale(&crate::coeff::rat(sign, 1)));
        }
        out
    }

    /// Structural coproduct: `Δ(x_n) = x_n⊗1 + 1⊗x_n`, `Δ(e^α) = e^α⊗e^α`,
    /// extended as an algebra map (binomial expansion on powers).
    pub fn coproduct(&self) -> Tensor2 {
        let mut out = Tensor2::zero(self.sig.clone());
        for (m, c) in self.terms() {
            for (m1, m2, factor) in mono_coproduct(m) {
                out.add_term(m1, m2, c.scale(&factor));
            }
        }
        out
    }

    /// Iterated coproduct `(Δ⊗Id)∘Δ`, via multinomial expansion.
    pub fn coproduct2(&self) -> Tensor3 {
        let mut out = Tensor3::zero(self.sig.clone());
        for (m, c) in self.terms() {
            for (m1, m2, m3, factor) in mono_coproduct2(m) {
                out.add_term(m1, m2, m3, c.scale(&factor));
            }
        }
        out
    }

    /// Coproduct computed by the shift-substitution route: the primitive
    /// part by expanding `exp(Σ x_n^{(1)} ∂/∂x_n^{(2)})` term by term, the
    /// grouplike factor by the eigenvalue rule (on the eigenspace with
    /// eigenvalue `m_i` the exponential operator multiplies the first slot
    /// by `(e^{a_i})^{m_i}`).
    pub fn operator_coproduct(&self) -> Tensor2 {
        let l = self.sig.num_grouplike();
        let mut out = Tensor2::zero(self.sig.clone());
        for (m, c) in self.terms() {
            // Seed 1 ⊗ m, then apply D = Σ_n x_n^(1) ∂/∂x_n^(2) through
            // its exponential series; each step lowers slot-2 degree.
            let mut layer: Vec<(Monomial, Monomial, Rational)> =
                vec![(Monomial::unit(l), m.clone(), Rational::one())];
            let mut k: u64 = 0;
            let mut acc = layer.clone();
            while !layer.is_empty() {
                k += 1;
                let mut next = Vec::new();
                for (m1, m2, w) in &layer {
                    for (&p, _) in m2.primitive_exponents() {
                        if let Some((lowered, factor)) = m2.derive_primitive(p) {
                            let m1x = m1.mul(&Monomial::primitive(l, p));
                            next.push((m1x, lowered, w * Rational::from(num::BigInt::from(factor))));
                        }
                    }
                }
                for (m1, m2, w) in &next {
                    acc.push((m1.clone(), m2.clone(), w / Rational::from(factorial(k))));
                }
                // acc holds D^k/k! contributions; `next` carries raw D^k.
                layer = next;
            }
            for (m1, m2, w) in acc {
                // Eigenvalue rule for the grouplike exponential: multiply
                // slot 1 by e^α where α is slot 2's grouplike exponent.
                let shifted = Monomial::new(
                    m1.group_exponents()
                        .iter()
                        .zip(m2.group_exponents())
                        .map(|(a, b)| a + b)
                        .collect(),
                    m1.primitive_exponents().clone(),
                );
                out.add_term(shifted, m2, c.scale(&w));
            }
        }
        out
    }
}

/// Coproduct of a monomial as a list of `(left, right, coefficient)`.
pub(crate) fn mono_coproduct(m: &Monomial) -> Vec<(Monomial, Monomial, Rational)> {
    let g = m.group_part();
    let mut acc = vec![(g.clone(), g, Rational::one())];
    for (&p, &k) in m.primitive_exponents() {
        let l = m.group_exponents().len();
        let mut next = Vec::with_capacity(acc.len() * (k as usize + 1));
        for (m1, m2, w) in &acc {
            for j in 0..=k {
                let b = Rational::from(binomial(k as u64, j as u64));
                let x1 = Monomial::new(vec![0; l], [(p, j)].into_iter().collect());
                let x2 = Monomial::new(vec![0; l], [(p, k - j)].into_iter().collect());
                next.push((m1.mul(&x1), m2.mul(&x2), w * b));
            }
        }
        acc = next;
    }
    acc
}

/// Iterated coproduct of a monomial with trinomial coefficients.
fn mono_coproduct2(m: &Monomial) -> Vec<(Monomial, Monomial, Monomial, Rational)> {
    let g = m.group_part();
    let mut acc = vec![(g.clone(), g.clone(), g, Rational::one())];
    for (&p, &k) in m.primitive_exponents() {
        let l = m.group_exponents().len();
        let mut next = Vec::new();
        for (m1, m2, m3, w) in &acc {
            for j1 in 0..=k {
                for j2 in 0..=(k - j1) {
                    let j3 = k - j1 - j2;
                    let tri = factorial(k as u64)
                        / (factorial(j1 as u64) * factorial(j2 as u64) * factorial(j3 as u64));
                    let x1 = Monomial::new(vec![0; l], [(p, j1)].into_iter().collect());
                    let x2 = Monomial::new(vec![0; l], [(p, j2)].into_iter().collect());
                    let x3 = Monomial::new(vec![0; l], [(p, j3)].into_iter().collect());
                    next.push((
                        m1.mul(&x1),
                        m2.mul(&x2),
                        m3.mul(&x3),
                        w * Rational::from(tri),
                    ));
                }
            }
        }
        acc = next;
    }
    acc
}

/// Sweedler sum `Σ a' ⊗ a''` with sparse nonzero coefficients.
#[derive(Debug, Clone)]
pub struct Tensor2 {
    sig: SigRef,
    terms: BTreeMap<(Monomial, Monomial), LaurentPoly>,
}

impl PartialEq for Tensor2 {
    fn eq(&self, other: &Self) -> bool {
        self.sig.compatible(&other.sig) && self.terms == other.terms
    }
}

impl Eq for Tensor2 {}

impl Tensor2 {
    pub fn zero(sig: SigRef) -> Self {
        Tensor2 { sig, terms: BTreeMap::new() }
    }

    pub fn signature(&self) -> &SigRef {
        &self.sig
    }

    pub fn add_term(&mut self, m1: Monomial, m2: Monomial, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((m1, m2))
            .or_insert_with(LaurentPoly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.sig.clone());
        for ((m1, m2), c) in self.terms() {
            out.add_term(m2.clone(), m1.clone(), c.clone());
        }
        out
    }

    /// Slotwise product of two Sweedler sums.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let sig = AlgebraSignature::merge(&self.sig, &other.sig)?;
        let mut out = Self::zero(sig);
        for ((a1, a2), ca) in self.terms() {
            for ((b1, b2), cb) in other.terms() {
                out.add_term(a1.mul(b1), a2.mul(b2), ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Applies the counit to the first slot.
    pub fn counit_left(&self) -> HopfElement {
        let mut out = HopfElement::zero(self.sig.clone());
        for ((m1, m2), c) in self.terms() {
            if !m1.has_primitives() {
                out.add_term(m2.clone(), c.clone());
            }
        }
        out
    }

    /// Applies the counit to the second slot.
    pub fn counit_right(&self) -> HopfElement {
        let mut out = HopfElement::zero(self.sig.clone());
        for ((m1, m2), c) in self.terms() {
            if !m2.has_primitives() {
                out.add_term(m1.clone(), c.clone());
            }
        }
        out
    }

    /// `Σ S(a') a''` folded back into the algebra.
    pub fn contract_antipode_left(&self) -> HopfElement {
        let mut out = HopfElement::zero(self.sig.clone());
        for ((m1, m2), c) in self.terms() {
            let s = HopfElement::from_monomial(self.sig.clone(), m1.clone(), LaurentPoly::one())
                .antipode();
            for (sm, sc) in s.terms() {
                out.add_term(sm.mul(m2), sc.mul(c));
            }
        }
        out
    }

    /// `Σ a' S(a'')` folded back into the algebra.
    pub fn contract_antipode_right(&self) -> HopfElement {
        self.swap().contract_antipode_left()
    }

    /// Applies the coproduct to the first slot, yielding `(Δ⊗Id)` terms.
    pub fn coproduct_left(&self) -> Tensor3 {
        let mut out = Tensor3::zero(self.sig.clone());
        for ((m1, m2), c) in self.terms() {
            for (a, b, w) in mono_coproduct(m1) {
                out.add_term(a, b, m2.clone(), c.scale(&w));
            }
        }
        out
    }

    /// Applies the coproduct to the second slot, yielding `(Id⊗Δ)` terms.
    pub fn coproduct_right(&self) -> Tensor3 {
        let mut out = Tensor3::zero(self.sig.clone());
        for ((m1, m2), c) in self.terms() {
            for (a, b, w) in mono_coproduct(m2) {
                out.add_term(m1.clone(), a, b, c.scale(&w));
            }
        }
        out
    }
}

/// Triple Sweedler sum `Σ a' ⊗ a'' ⊗ a'''`.
#[derive(Debug, Clone)]
pub struct Tensor3 {
    sig: SigRef,
    terms: BTreeMap<(Monomial, Monomial, Monomial), LaurentPoly>,
}

impl PartialEq for Tensor3 {
    fn eq(&self, other: &Self) -> bool {
        self.sig.compatible(&other.sig) && self.terms == other.terms
    }
}

impl Eq for Tensor3 {}

impl Tensor3 {
    pub fn zero(sig: SigRef) -> Self {
        Tensor3 { sig, terms: BTreeMap::new() }
    }

    pub fn signature(&self) -> &SigRef {
        &self.sig
    }

    pub fn add_term(&mut self, m1: Monomial, m2: Monomial, m3: Monomial, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((m1, m2, m3))
            .or_insert_with(LaurentPoly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial, Monomial), &LaurentPoly)> {
        self.terms.iter()
    }
}

fn write_group(f: &mut fmt::Formatter<'_>, group: &[i64]) -> fmt::Result {
    write!(f, "e^(")?;
    let mut first = true;
    for (i, &g) in group.iter().enumerate() {
        if g == 0 {
            continue;
        }
        let name = format!("a{}", i + 1);
        if first {
            match g {
                1 => write!(f, "{name}")?,
                -1 => write!(f, "-{name}")?,
                _ => write!(f, "{g}*{name}")?,
            }
            first = false;
        } else if g > 0 {
            if g == 1 {
                write!(f, " + {name}")?;
            } else {
                write!(f, " + {g}*{name}")?;
            }
        } else if g == -1 {
            write!(f, " - {name}")?;
        } else {
            write!(f, " - {}*{name}", -g)?;
        }
    }
    write!(f, ")")
}

struct MonomialDisplay<'a>(&'a Monomial, &'a AlgebraSignature);

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let MonomialDisplay(m, sig) = self;
        if m.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        if m.group_exponents().iter().any(|&g| g != 0) {
            write_group(f, m.group_exponents())?;
            first = false;
        }
        for (&p, &k) in m.primitive_exponents() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = sig.primitive_name(p);
            if k == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = MonomialDisplay(m, &self.sig);
            if m.is_unit() {
                if c.as_constant().is_some() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})")?;
                }
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else if c.iter().count() == 1 && c.as_constant().map(|v| v.is_positive()).unwrap_or(true)
            {
                write!(f, "{c}*{mono}")?;
            } else if c.iter().count() == 1 {
                // single negative constant: still unambiguous inline
                write!(f, "{c}*{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl HopfElement {
    /// JSON rendering: a list of terms with grouplike exponents, primitive
    /// exponents by generator name, and the Laurent coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(m, c)| {
                    serde_json::json!({
                        "group": m.group_exponents(),
                        "primitive": m
                            .primitive_exponents()
                            .iter()
                            .map(|(&p, &k)| {
                                serde_json::json!([self.sig.primitive_name(p), k])
                            })
                            .collect::<Vec<_>>(),
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }
}
