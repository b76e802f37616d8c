//! Lattices with rational Gram matrices, the generating series
//! `Σ c_mn x^m y^n = -log((√(1+x/z) + √(1+y/z)) / 2)`, assembly of the
//! induced bicharacter on the algebra generated by `e^{±a_i}` and the
//! primitives `x(i,m)` (representing the level-`m` modes), and an exact
//! end-to-end reproduction of the worked rank-`ℓ` example.

use num::{One, Zero};

use crate::bichar::BicharSpec;
use crate::coeff::{BivariateSeries, LaurentPoly, Rational};
use crate::error::Error;
use crate::hopf::{AlgebraSignature, HopfElement, Monomial, SigRef};
use crate::quadop::QuadraticOperator;
use crate::twist::eq_map;
use crate::Result;

/// A lattice of rank `ℓ` presented by its Gram matrix `⟨a_i|a_j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    rank: usize,
    gram: Vec<Vec<Rational>>,
}

impl Lattice {
    pub fn new(rank: usize, gram: Vec<Vec<Rational>>) -> Result<Self> {
        if rank == 0 || gram.len() != rank || gram.iter().any(|row| row.len() != rank) {
            return Err(Error::Invalid("Gram matrix shape must match the rank".into()));
        }
        for i in 0..rank {
            for j in 0..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invalid("Gram matrix must be symmetric".into()));
                }
            }
        }
        if determinant(&gram).is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Ok(Lattice { rank, gram })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self, i: usize, j: usize) -> Rational {
        self.gram[i][j].clone()
    }

    /// `⟨α|a_i⟩` for `α = Σ_j m_j a_j`.
    pub fn pair(&self, alpha: &[i64], i: usize) -> Rational {
        let mut acc = Rational::zero();
        for (j, &mj) in alpha.iter().enumerate() {
            if mj != 0 {
                acc += self.gram(j, i) * crate::coeff::rat(mj, 1);
            }
        }
        acc
    }
}

/// Determinant by fraction-free Gaussian elimination over the rationals.
fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !a[row][col].is_zero());
        let Some(pivot) = pivot else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for row in (col + 1)..n {
            let factor = &a[row][col] / &p;
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[row][k] -= delta;
            }
        }
    }
    det
}

/// The Maclaurin coefficients `c_mn` of the generating series, with
/// `c_mn = c_nm` by the `x ↔ y` symmetry of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCoefficients {
    series: BivariateSeries,
}

impl SeriesCoefficients {
    pub fn order(&self) -> u32 {
        self.series.order()
    }

    pub fn coeff(&self, m: u32, n: u32) -> LaurentPoly {
        self.series.coeff(m, n)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &LaurentPoly)> {
        self.series.iter()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.iter()
                .map(|((m, n), c)| serde_json::json!([m, n, c.to_string()]))
                .collect(),
        )
    }
}

/// Expands `-log((√(1+x/z) + √(1+y/z)) / 2)` to total degree `order`.
pub fn flm_series(order: u32) -> SeriesCoefficients {
    let mut base = BivariateSeries::one(order);
    base.set_coeff(1, 0, LaurentPoly::monomial(-1, Rational::one()));
    let sx = base.sqrt().expect("unit constant term");
    let sy = sx.swap_vars();
    let avg = sx.add(&sy).scale(&crate::coeff::rat(1, 2));
    let series = avg.log().expect("unit constant term").scale(&-Rational::one());
    SeriesCoefficients { series }
}

/// Signature of a lattice session: `ℓ` grouplikes and primitives `x(i,m)`
/// for `1 ≤ i ≤ ℓ`, `1 ≤ m ≤ depth`, representing the level-`m` mode of
/// the `i`-th lattice direction.
pub fn lattice_signature(rank: usize, depth: u32) -> SigRef {
    let mut names = Vec::new();
    for i in 1..=rank {
        for m in 1..=depth {
            names.push(format!("x({i},{m})"));
        }
    }
    AlgebraSignature::new(rank, names).expect("generated names are unique")
}

fn prim_index(depth: u32, i: usize, m: u32) -> usize {
    i * depth as usize + (m as usize - 1)
}

/// Assembles the induced bicharacter table on the lattice signature:
/// `gg(i,j) = 1` (from the vanishing constant coefficient), `gp` and `pg`
/// from the boundary coefficients `c_0m`, `c_m0`, and `pp((i,m),(j,n)) =
/// ⟨a_i|a_j⟩ c_mn`.
pub fn lattice_bicharacter(
    lattice: &Lattice,
    c: &SeriesCoefficients,
    depth: u32,
) -> Result<BicharSpec> {
    if depth == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    if c.order() < 2 * depth {
        return Err(Error::Invalid(format!(
            "series order {} too small for depth {depth} (need {})",
            c.order(),
            2 * depth
        )));
    }
    let c00 = c.coeff(0, 0);
    if c00.as_constant().is_none() {
        return Err(Error::NonConstantGrouplikeValue);
    }
    if !c00.is_zero() {
        // a nonzero constant would exponentiate to an irrational grouplike
        // value; only the vanishing case is representable over Q
        return Err(Error::NonConstantGrouplikeValue);
    }
    let sig = lattice_signature(lattice.rank(), depth);
    let mut spec = BicharSpec::identity(sig);
    for i in 0..lattice.rank() {
        for j in 0..lattice.rank() {
            let g = lattice.gram(i, j);
            for m in 1..=depth {
                let p = prim_index(depth, j, m);
                spec.set_gp(i, p, c.coeff(0, m).scale(&g));
                let p = prim_index(depth, i, m);
                spec.set_pg(p, j, c.coeff(m, 0).scale(&g));
            }
            for m in 1..=depth {
                for n in 1..=depth {
                    let pm = prim_index(depth, i, m);
                    let pn = prim_index(depth, j, n);
                    spec.set_pp(pm, pn, c.coeff(m, n).scale(&g));
                }
            }
        }
    }
    Ok(spec)
}

/// Rank-1, primitive-only restriction of the lattice table: variables
/// `x1..xD` stand for the level-`m` modes of a single direction with
/// `⟨a|a⟩ = norm`, and `pp(m,n) = norm · c_mn`. This is the table the
/// twisted Fock-space words are measured against.
pub fn rank1_mode_bicharacter(norm: &Rational, depth: u32) -> BicharSpec {
    let c = flm_series(2 * depth);
    let sig = AlgebraSignature::plain(0, depth as usize);
    let mut spec = BicharSpec::identity(sig);
    for m in 1..=depth {
        for n in 1..=depth {
            spec.set_pp(
                (m - 1) as usize,
                (n - 1) as usize,
                c.coeff(m, n).scale(norm),
            );
        }
    }
    spec
}

/// One verified identity of the worked example: the input, the value along
/// each computation route, the expected closed form, and the agreement flag.
#[derive(Debug, Clone)]
pub struct FlmIdentity {
    pub name: String,
    pub input: HopfElement,
    pub eq_route: HopfElement,
    pub exp_route: HopfElement,
    pub bullet_route: HopfElement,
    pub expected: HopfElement,
    pub equal: bool,
}

/// Full report of the worked example on a lattice.
#[derive(Debug, Clone)]
pub struct FlmReport {
    pub depth: u32,
    pub s_group_primitive: Vec<(usize, usize, LaurentPoly)>,
    pub s_primitive_primitive: Vec<(usize, usize, LaurentPoly)>,
    pub identities: Vec<FlmIdentity>,
}

impl FlmReport {
    pub fn all_equal(&self) -> bool {
        self.identities.iter().all(|i| i.equal)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "depth": self.depth,
            "s_group_primitive": self
                .s_group_primitive
                .iter()
                .map(|(i, j, v)| serde_json::json!([i + 1, j + 1, v.to_string()]))
                .collect::<Vec<_>>(),
            "s_primitive_primitive": self
                .s_primitive_primitive
                .iter()
                .map(|(i, j, v)| serde_json::json!([i + 1, j + 1, v.to_string()]))
                .collect::<Vec<_>>(),
            "identities": self
                .identities
                .iter()
                .map(|id| serde_json::json!({
                    "name": id.name,
                    "input": id.input.to_string(),
                    "eq_route": id.eq_route.to_string(),
                    "exp_route": id.exp_route.to_string(),
                    "bullet_route": id.bullet_route.to_string(),
                    "expected": id.expected.to_string(),
                    "equal": id.equal,
                }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("symmetrized values s(e^(a_i) (x) x(j,1)):\n");
        for (i, j, v) in &self.s_group_primitive {
            out.push_str(&format!("  i={}, j={}: {}\n", i + 1, j + 1, v));
        }
        out.push_str("symmetrized values s(x(i,1) (x) x(j,1)):\n");
        for (i, j, v) in &self.s_primitive_primitive {
            out.push_str(&format!("  i={}, j={}: {}\n", i + 1, j + 1, v));
        }
        for id in &self.identities {
            out.push_str(&format!(
                "{}\n  input:    {}\n  EQ route: {}\n  e^Q route: {}\n  bullet:   {}\n  expected: {}\n  equal: {}\n",
                id.name, id.input, id.eq_route, id.exp_route, id.bullet_route, id.expected, id.equal
            ));
        }
        out
    }
}

/// Runs the worked example on the given lattice: for every direction `i`
/// and `α = Σ_j a_j`, computes `e^Q(e^α)`, `e^Q(e^α x(i,1))`,
/// `e^Q(x(i,1)²)` and `e^Q(e^α x(i,1)²)` along the `EQ`, exponential and
/// bullet-word routes, and checks all of them against the closed forms.
pub fn run_flm_example(lattice: &Lattice) -> Result<FlmReport> {
    let depth = 1;
    let c = flm_series(2 * depth);
    let spec = lattice_bicharacter(lattice, &c, depth)?;
    let sig = spec.signature().clone();
    let sym = spec.symmetrize();
    let q = QuadraticOperator::new(spec.clone());
    let l = lattice.rank();

    let mut s_gp = Vec::new();
    let mut s_pp = Vec::new();
    for i in 0..l {
        for j in 0..l {
            s_gp.push((i, j, sym.spec().gp(i, prim_index(depth, j, 1))));
            s_pp.push((
                i,
                j,
                sym.spec().pp(prim_index(depth, i, 1), prim_index(depth, j, 1)),
            ));
        }
    }

    // α = Σ_j a_j
    let alpha: Vec<i64> = vec![1; l];
    let g_alpha = HopfElement::from_monomial(
        sig.clone(),
        Monomial::new(alpha.clone(), Default::default()),
        LaurentPoly::one(),
    );
    let half_z = LaurentPoly::monomial(-1, crate::coeff::rat(1, 2));
    let eighth_z2 = LaurentPoly::monomial(-2, crate::coeff::rat(1, 8));
    let quarter_z2 = LaurentPoly::monomial(-2, crate::coeff::rat(1, 4));

    let mut identities = Vec::new();
    let mut push = |name: String, input: HopfElement, expected: HopfElement| -> Result<()> {
        let eq_route = eq_map(&spec, &input)?;
        let exp_route = q.apply_exp_q(&input);
        // bullet route: fold the generator factors of the input monomial
        let bullet_route = bullet_word_of(&spec, &sym, &input)?;
        let equal = eq_route == exp_route && exp_route == bullet_route && exp_route == expected;
        identities.push(FlmIdentity {
            name,
            input,
            eq_route,
            exp_route,
            bullet_route,
            expected,
            equal,
        });
        Ok(())
    };

    // e^Q(e^α) = e^α (the grouplike values are all 1)
    push("e^Q(e^alpha)".into(), g_alpha.clone(), g_alpha.clone())?;

    for i in 0..l {
        let pair = lattice.pair(&alpha, i);
        let diag = lattice.gram(i, i);
        let xi = HopfElement::primitive(sig.clone(), prim_index(depth, i, 1));
        let xi2 = xi.product(&xi)?;
        let gxi = g_alpha.product(&xi)?;
        let gxi2 = g_alpha.product(&xi2)?;
        let shift = half_z.scale(&-pair.clone());

        // e^Q(e^α x(i,1)) = e^α x(i,1) - ⟨α|a_i⟩/(2z) e^α
        push(
            format!("e^Q(e^alpha x({},1))", i + 1),
            gxi.clone(),
            gxi.add(&g_alpha.scale(&shift))?,
        )?;

        // e^Q(x(i,1)²) = x(i,1)² + ⟨a_i|a_i⟩/(8z²)
        push(
            format!("e^Q(x({},1)^2)", i + 1),
            xi2.clone(),
            xi2.add(&HopfElement::scalar(sig.clone(), eighth_z2.scale(&diag)))?,
        )?;

        // e^Q(e^α x(i,1)²) = e^α (x(i,1)² - 2 x(i,1) ⟨α|a_i⟩/(2z)
        //                        + ⟨α|a_i⟩²/(4z²) + ⟨a_i|a_i⟩/(8z²))
        let expected = gxi2
            .add(&gxi.scale(&shift.scale(&crate::coeff::rat(2, 1))))?
            .add(&g_alpha.scale(&quarter_z2.scale(&(pair.clone() * pair))))?
            .add(&g_alpha.scale(&eighth_z2.scale(&diag)))?;
        push(format!("e^Q(e^alpha x({},1)^2)", i + 1), gxi2, expected)?;
    }

    Ok(FlmReport {
        depth,
        s_group_primitive: s_gp,
        s_primitive_primitive: s_pp,
        identities,
    })
}

/// Splits a single-monomial element into generator factors and folds the
/// bullet product over them. A grouplike factor `e^α` enters the word with
/// its normalization `e^α r(e^α ⊗ e^α)`.
fn bullet_word_of(
    spec: &BicharSpec,
    sym: &crate::bichar::SymmetricBicharSpec,
    a: &HopfElement,
) -> Result<HopfElement> {
    let sig = a.signature().clone();
    let mut terms = a.terms();
    let (m, c) = terms
        .next()
        .ok_or_else(|| Error::Invalid("bullet word of the zero element".into()))?;
    if terms.next().is_some() {
        return Err(Error::Invalid("bullet word requires a single monomial".into()));
    }
    let mut factors = Vec::new();
    if m.group_exponents().iter().any(|&g| g != 0) {
        let g = HopfElement::from_monomial(sig.clone(), m.group_part(), LaurentPoly::one());
        let norm = spec.evaluate(&g, &g)?;
        factors.push(g.scale(&norm));
    }
    for (&p, &k) in m.primitive_exponents() {
        for _ in 0..k {
            factors.push(HopfElement::primitive(sig.clone(), p));
        }
    }
    if factors.is_empty() {
        factors.push(HopfElement::one(sig.clone()));
    }
    let word = crate::twist::BulletWord::new(factors, sym.clone())?;
    Ok(word.evaluate()?.scale(c))
}
