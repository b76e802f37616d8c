//! Bicharacters as generator-level tables, their bilinear extension to the
//! whole algebra, and the convolution group (identity, product, transpose,
//! inverse, symmetrization) together with the grouplike square-root solver.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::coeff::{rat_pow, rational_sqrt, LaurentPoly, Rational};
use crate::error::Error;
use crate::hopf::{AlgebraSignature, HopfElement, Monomial, SigRef};
use crate::Result;

/// Generator table of a bicharacter.
///
/// Grouplike–grouplike values are stored multiplicatively as the rationals
/// `g_ij = r(e^{a_i} ⊗ e^{a_j})`; missing entries default to `1`.
/// Grouplike–primitive, primitive–grouplike and primitive–primitive entries
/// live in `A`; missing entries default to `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicharSpec {
    sig: SigRef,
    gg: BTreeMap<(usize, usize), Rational>,
    gp: BTreeMap<(usize, usize), LaurentPoly>,
    pg: BTreeMap<(usize, usize), LaurentPoly>,
    pp: BTreeMap<(usize, usize), LaurentPoly>,
}

impl BicharSpec {
    /// The identity bicharacter on the given signature.
    pub fn identity(sig: SigRef) -> Self {
        BicharSpec {
            sig,
            gg: BTreeMap::new(),
            gp: BTreeMap::new(),
            pg: BTreeMap::new(),
            pp: BTreeMap::new(),
        }
    }

    pub fn signature(&self) -> &SigRef {
        &self.sig
    }

    pub fn is_identity(&self) -> bool {
        self.gg.is_empty() && self.gp.is_empty() && self.pg.is_empty() && self.pp.is_empty()
    }

    pub fn gg(&self, i: usize, j: usize) -> Rational {
        self.gg.get(&(i, j)).cloned().unwrap_or_else(Rational::one)
    }

    pub fn gp(&self, i: usize, m: usize) -> LaurentPoly {
        self.gp.get(&(i, m)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn pg(&self, m: usize, i: usize) -> LaurentPoly {
        self.pg.get(&(m, i)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn pp(&self, m: usize, n: usize) -> LaurentPoly {
        self.pp.get(&(m, n)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn gp_entries(&self) -> impl Iterator<Item = ((usize, usize), &LaurentPoly)> {
        self.gp.iter().map(|(&k, v)| (k, v))
    }

    pub fn pg_entries(&self) -> impl Iterator<Item = ((usize, usize), &LaurentPoly)> {
        self.pg.iter().map(|(&k, v)| (k, v))
    }

    pub fn pp_entries(&self) -> impl Iterator<Item = ((usize, usize), &LaurentPoly)> {
        self.pp.iter().map(|(&k, v)| (k, v))
    }

    pub fn set_gg(&mut self, i: usize, j: usize, value: Rational) -> Result<()> {
        if value.is_zero() {
            return Err(Error::Invalid(
                "grouplike bicharacter values must be invertible".into(),
            ));
        }
        if value.is_one() {
            self.gg.remove(&(i, j));
        } else {
            self.gg.insert((i, j), value);
        }
        Ok(())
    }

    pub fn set_gp(&mut self, i: usize, m: usize, value: LaurentPoly) {
        if value.is_zero() {
            self.gp.remove(&(i, m));
        } else {
            self.gp.insert((i, m), value);
        }
    }

    pub fn set_pg(&mut self, m: usize, i: usize, value: LaurentPoly) {
        if value.is_zero() {
            self.pg.remove(&(m, i));
        } else {
            self.pg.insert((m, i), value);
        }
    }

    pub fn set_pp(&mut self, m: usize, n: usize, value: LaurentPoly) {
        if value.is_zero() {
            self.pp.remove(&(m, n));
        } else {
            self.pp.insert((m, n), value);
        }
    }

    /// Bilinear extension to arbitrary elements via the bicharacter laws,
    /// recursing generator by generator from the left slot.
    pub fn evaluate(&self, a: &HopfElement, b: &HopfElement) -> Result<LaurentPoly> {
        let sig = AlgebraSignature::merge(a.signature(), b.signature())?;
        if !sig.compatible(&self.sig) {
            return Err(Error::SignatureMismatch);
        }
        let mut memo = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let v = self.eval_mono(ma, mb, &mut memo);
                out = out.add(&v.mul(&ca.mul(cb)));
            }
        }
        Ok(out)
    }

    fn eval_mono(
        &self,
        m1: &Monomial,
        m2: &Monomial,
        memo: &mut BTreeMap<(Monomial, Monomial), LaurentPoly>,
    ) -> LaurentPoly {
        if m1.is_unit() {
            // r(1 ⊗ a) = η(a)
            return if m2.has_primitives() {
                LaurentPoly::zero()
            } else {
                LaurentPoly::one()
            };
        }
        if let Some(v) = memo.get(&(m1.clone(), m2.clone())) {
            return v.clone();
        }
        // Peel one generator from the left slot and expand over Δ(m2).
        let (gen, rest) = peel(m1);
        let mut out = LaurentPoly::zero();
        for (b1, b2, w) in crate::hopf::mono_coproduct(m2) {
            let head = self.eval_generator(&gen, &b1);
            if head.is_zero() {
                continue;
            }
            let tail = self.eval_mono(&rest, &b2, memo);
            if tail.is_zero() {
                continue;
            }
            out = out.add(&head.mul(&tail).scale(&w));
        }
        memo.insert((m1.clone(), m2.clone()), out.clone());
        out
    }

    /// Value of the bicharacter on `u ⊗ m` where `u` is a single generator
    /// factor (`e^{±a_i}` or `x_m`). Closed form from the two laws.
    fn eval_generator(&self, u: &Generator, m: &Monomial) -> LaurentPoly {
        match *u {
            Generator::Grouplike(i, eps) => {
                // multiplicative over the right slot's factors
                let mut acc = Rational::one();
                for (j, &g) in m.group_exponents().iter().enumerate() {
                    if g != 0 {
                        acc *= rat_pow(&self.gg(i, j), eps * g);
                    }
                }
                let mut out = LaurentPoly::constant(acc);
                for (&n, &k) in m.primitive_exponents() {
                    let b = self.gp(i, n).scale(&crate::coeff::rat(eps, 1));
                    out = out.mul(&b.pow(k));
                }
                out
            }
            Generator::Primitive(p) => {
                // only one nontrivial right factor survives the counit
                match m.primitive_degree() {
                    0 => {
                        let mut acc = LaurentPoly::zero();
                        for (j, &g) in m.group_exponents().iter().enumerate() {
                            if g != 0 {
                                acc = acc.add(
                                    &self.pg(p, j).scale(&crate::coeff::rat(g, 1)),
                                );
                            }
                        }
                        acc
                    }
                    1 => {
                        let (&n, _) = m.primitive_exponents().iter().next().expect("degree 1");
                        self.pp(p, n)
                    }
                    _ => LaurentPoly::zero(),
                }
            }
        }
    }

    /// Convolution product of generator tables: grouplike pairs multiply,
    /// all other entries add.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let sig = AlgebraSignature::merge(&self.sig, &other.sig)?;
        let mut out = Self::identity(sig);
        for key in self.gg.keys().chain(other.gg.keys()) {
            out.set_gg(key.0, key.1, self.gg(key.0, key.1) * other.gg(key.0, key.1))?;
        }
        for key in self.gp.keys().chain(other.gp.keys()) {
            out.set_gp(key.0, key.1, self.gp(key.0, key.1).add(&other.gp(key.0, key.1)));
        }
        for key in self.pg.keys().chain(other.pg.keys()) {
            out.set_pg(key.0, key.1, self.pg(key.0, key.1).add(&other.pg(key.0, key.1)));
        }
        for key in self.pp.keys().chain(other.pp.keys()) {
            out.set_pp(key.0, key.1, self.pp(key.0, key.1).add(&other.pp(key.0, key.1)));
        }
        Ok(out)
    }

    /// `r^t(a⊗b) = r(b⊗a)` on the generator table.
    pub fn transpose(&self) -> Self {
        let mut out = Self::identity(self.sig.clone());
        for (&(i, j), v) in &self.gg {
            out.gg.insert((j, i), v.clone());
        }
        for (&(i, m), v) in &self.gp {
            out.pg.insert((m, i), v.clone());
        }
        for (&(m, i), v) in &self.pg {
            out.gp.insert((i, m), v.clone());
        }
        for (&(m, n), v) in &self.pp {
            out.pp.insert((n, m), v.clone());
        }
        out
    }

    /// Convolution inverse `a⊗b ↦ r(S(a)⊗b)`: grouplike entries inverted,
    /// all other entries negated.
    pub fn inverse(&self) -> Self {
        let mut out = Self::identity(self.sig.clone());
        for (&k, v) in &self.gg {
            out.gg.insert(k, v.recip());
        }
        for (&k, v) in &self.gp {
            out.gp.insert(k, v.neg());
        }
        for (&k, v) in &self.pg {
            out.pg.insert(k, v.neg());
        }
        for (&k, v) in &self.pp {
            out.pp.insert(k, v.neg());
        }
        out
    }

    /// Symmetrization `s = r ∘ r^t`.
    pub fn symmetrize(&self) -> SymmetricBicharSpec {
        let s = self
            .convolve(&self.transpose())
            .expect("same signature by construction");
        SymmetricBicharSpec(s)
    }

    /// JSON rendering of the generator table.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = (0..self.sig.num_grouplike())
            .map(|i| {
                (0..self.sig.num_grouplike())
                    .map(|j| self.gg(i, j).to_string())
                    .collect()
            })
            .collect();
        let table = |m: &BTreeMap<(usize, usize), LaurentPoly>| {
            m.iter()
                .map(|(&(a, b), v)| serde_json::json!([a + 1, b + 1, v.to_string()]))
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "gg": rows,
            "gp": table(&self.gp),
            "pg": table(&self.pg),
            "pp": table(&self.pp),
        })
    }
}

enum Generator {
    Grouplike(usize, i64),
    Primitive(usize),
}

/// Splits one generator factor off a non-unit monomial; the peel order
/// (grouplikes first, then primitives) is fixed for determinism.
fn peel(m: &Monomial) -> (Generator, Monomial) {
    for (i, &g) in m.group_exponents().iter().enumerate() {
        if g != 0 {
            let eps = g.signum();
            let mut group = m.group_exponents().to_vec();
            group[i] -= eps;
            let rest = Monomial::new(group, m.primitive_exponents().clone());
            return (Generator::Grouplike(i, eps), rest);
        }
    }
    let (&p, _) = m
        .primitive_exponents()
        .iter()
        .next()
        .expect("non-unit monomial has a generator");
    let mut prim = m.primitive_exponents().clone();
    let k = prim[&p];
    if k == 1 {
        prim.remove(&p);
    } else {
        prim.insert(p, k - 1);
    }
    let rest = Monomial::new(m.group_exponents().to_vec(), prim);
    (Generator::Primitive(p), rest)
}

/// A bicharacter table that is symmetric: `gg` symmetric, `gp(i,m) =
/// pg(m,i)`, `pp` symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricBicharSpec(BicharSpec);

impl SymmetricBicharSpec {
    pub fn new(spec: BicharSpec) -> Result<Self> {
        let l = spec.sig.num_grouplike();
        let p = spec.sig.num_primitives();
        for i in 0..l {
            for j in 0..l {
                if spec.gg(i, j) != spec.gg(j, i) {
                    return Err(Error::Invalid("gg table is not symmetric".into()));
                }
            }
        }
        for i in 0..l {
            for m in 0..p {
                if spec.gp(i, m) != spec.pg(m, i) {
                    return Err(Error::Invalid("gp/pg tables are not mirror images".into()));
                }
            }
        }
        for m in 0..p {
            for n in 0..p {
                if spec.pp(m, n) != spec.pp(n, m) {
                    return Err(Error::Invalid("pp table is not symmetric".into()));
                }
            }
        }
        Ok(SymmetricBicharSpec(spec))
    }

    pub fn spec(&self) -> &BicharSpec {
        &self.0
    }

    pub fn identity(sig: SigRef) -> Self {
        SymmetricBicharSpec(BicharSpec::identity(sig))
    }

    /// Convolution inverse, still symmetric.
    pub fn inverse(&self) -> Self {
        SymmetricBicharSpec(self.0.inverse())
    }

    pub fn evaluate(&self, a: &HopfElement, b: &HopfElement) -> Result<LaurentPoly> {
        self.0.evaluate(a, b)
    }

    /// Finds `r` with `symmetrize(r) = s` over the working coefficient
    /// domain: primitive–primitive entries halved, grouplike–primitive
    /// entries put on the `gp` side, diagonal grouplike entries taken as
    /// exact rational square roots, off-diagonal entries put on the `i < j`
    /// side.
    pub fn grouplike_root(&self) -> Result<BicharSpec> {
        let s = &self.0;
        let l = s.sig.num_grouplike();
        let mut out = BicharSpec::identity(s.sig.clone());
        for i in 0..l {
            let diag = s.gg(i, i);
            match rational_sqrt(&diag) {
                Some(root) => out.set_gg(i, i, root)?,
                None => return Err(Error::NoSquareRoot(i + 1)),
            }
            for j in (i + 1)..l {
                out.set_gg(i, j, s.gg(i, j))?;
            }
        }
        for (&(i, m), v) in &s.gp {
            out.set_gp(i, m, v.clone());
        }
        for (&(m, n), v) in &s.pp {
            if m <= n {
                let half = v.scale(&crate::coeff::rat(1, 2));
                out.set_pp(m, n, half.clone());
                out.set_pp(n, m, half);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.0.to_json()
    }
}
