//! Finite-precision witnesses: a truncated p-adic functional on the coordinate-projection
//! tower that no finite stage captures, and explicit solutions of abelian Higman systems.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::{self, KernelCriterion};
use crate::fgab::{FgAbGroup, FgAbHom};
use crate::tower::{FormulaHom, InverseTower, Thread, ThreadHom};
use crate::zlinalg::IntMatrix;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo `p^K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicTrunc {
    p: u64,
    precision: u32,
    value: BigInt,
}

impl PadicTrunc {
    pub fn new(p: u64, precision: u32, value: impl Into<BigInt>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if precision == 0 {
            return Err(Error::Input("precision must be positive".into()));
        }
        Ok(Self::reduce(p, precision, value.into()))
    }

    fn reduce(p: u64, precision: u32, value: BigInt) -> Self {
        let modulus = BigInt::from(p).pow(precision);
        PadicTrunc {
            p,
            precision,
            value: value.mod_floor(&modulus),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }

    /// Residue in `[0, p^K)`.
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Largest `k ≤ K` with `p^k | value`.
    pub fn valuation(&self) -> u32 {
        let p = BigInt::from(self.p);
        let mut v = self.value.clone();
        let mut k = 0;
        while k < self.precision && !v.is_zero() && (&v % &p).is_zero() {
            v /= &p;
            k += 1;
        }
        if v.is_zero() {
            self.precision
        } else {
            k
        }
    }

    fn check(&self, other: &Self) {
        assert!(
            self.p == other.p && self.precision == other.precision,
            "mixing residues of different moduli"
        );
    }
}

impl Add for &PadicTrunc {
    type Output = PadicTrunc;

    fn add(self, rhs: &PadicTrunc) -> PadicTrunc {
        self.check(rhs);
        PadicTrunc::reduce(self.p, self.precision, &self.value + &rhs.value)
    }
}

impl Mul for &PadicTrunc {
    type Output = PadicTrunc;

    fn mul(self, rhs: &PadicTrunc) -> PadicTrunc {
        self.check(rhs);
        PadicTrunc::reduce(self.p, self.precision, &self.value * &rhs.value)
    }
}

impl Neg for &PadicTrunc {
    type Output = PadicTrunc;

    fn neg(self) -> PadicTrunc {
        PadicTrunc::reduce(self.p, self.precision, -&self.value)
    }
}

impl fmt::Display for PadicTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.p, self.precision)
    }
}

impl Serialize for PadicTrunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PadicTrunc", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("valuation", &self.valuation())?;
        st.end()
    }
}

/// `Σ_{i≥1} xᵢ pⁱ mod p^K`, with `x[0] = x₁`.
pub fn padic_phi(p: u64, precision: u32, x: &[BigInt]) -> Result<PadicTrunc> {
    if precision < 2 {
        return Err(Error::Input(format!(
            "precision must be at least 2, got {precision}"
        )));
    }
    let mut acc = PadicTrunc::new(p, precision, 0)?;
    let pp = BigInt::from(p);
    let mut power = pp.clone();
    for (i, xi) in x.iter().enumerate() {
        if i + 1 >= precision as usize {
            break;
        }
        acc = &acc + &PadicTrunc::reduce(p, precision, xi * &power);
        power *= &pp;
    }
    Ok(acc)
}

/// The functional `x ↦ padic_phi(x_top)` into `ℤ/p^K` on the coordinate-projection tower.
pub fn padic_thread_hom(p: u64, precision: u32, t: &InverseTower) -> Result<ThreadHom> {
    padic_phi(p, precision, &[])?;
    let target = FgAbGroup::cyclic(BigInt::from(p).pow(precision));
    let top = t.window();
    Ok(ThreadHom::Formula(FormulaHom::new(
        format!("padic:{p}:{precision}"),
        target,
        move |th: &Thread| {
            Ok(vec![padic_phi(p, precision, th.component(top))?
                .value()
                .clone()])
        },
    )))
}

#[derive(Clone, Debug, Serialize)]
pub struct PadicWitness {
    pub level: usize,
    /// Top-level coordinates of the thread `e_{level+1}`.
    #[serde(serialize_with = "ser_vec")]
    pub thread: Vec<BigInt>,
    pub value: PadicTrunc,
    pub projects_to_zero: bool,
    pub value_nonzero: bool,
    /// The engine's kernel criterion also refutes factoring at this level.
    pub criterion_refutes: bool,
}

impl PadicWitness {
    pub fn verified(&self) -> bool {
        self.projects_to_zero && self.value_nonzero && self.criterion_refutes
    }
}

fn ser_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct NonFactoringReport {
    pub p: u64,
    pub precision: u32,
    pub window: usize,
    pub witnesses: Vec<PadicWitness>,
    pub refuted_levels: usize,
    /// Levels `≥ K−1` inside the window where the residue kills `e_{i+1}`.
    pub truncation_artifact_levels: Vec<usize>,
    pub conclusion: String,
}

impl NonFactoringReport {
    pub fn all_verified(&self) -> bool {
        self.witnesses.iter().all(PadicWitness::verified)
    }
}

/// Refutes factoring through levels `1..=min(J, K−2)` of the coordinate-projection tower.
pub fn non_factoring_report(p: u64, precision: u32, window: usize) -> Result<NonFactoringReport> {
    if window == 0 {
        return Err(Error::Input("window must be positive".into()));
    }
    // one extra level so that e_{J+1} exists
    let t = InverseTower::hawaii(window + 1);
    let phi = padic_thread_hom(p, precision, &t)?;
    let limit = window.min((precision as usize).saturating_sub(2));
    let mut witnesses = Vec::new();
    for level in 1..=limit {
        let mut top = vec![BigInt::zero(); window + 1];
        top[level] = BigInt::one();
        let u = t.thread_from_top(&top)?;
        let value = padic_phi(p, precision, &top)?;
        let criterion_refutes = matches!(
            factor::kernel_criterion(&t, &phi, level)?,
            KernelCriterion::Witness(_)
        );
        witnesses.push(PadicWitness {
            level,
            projects_to_zero: t.group(level).is_zero(u.component(level))?,
            value_nonzero: !value.is_zero(),
            thread: top,
            value,
            criterion_refutes,
        });
    }
    let truncation_artifact_levels: Vec<usize> = (limit + 1..=window).collect();
    let mut conclusion = format!("no factorization through any level <= {limit}");
    if !truncation_artifact_levels.is_empty() {
        conclusion.push_str(&format!(
            "; levels >= {} factor only because p^{} vanishes at this precision, choose K > {} to refute the whole window",
            limit + 1,
            precision,
            window + 1
        ));
    }
    Ok(NonFactoringReport {
        p,
        precision,
        window,
        refuted_levels: witnesses.len(),
        witnesses,
        truncation_artifact_levels,
        conclusion,
    })
}

/// `a₁ … a_D` truncated to length `D`: zeros before `i`, `1` at `i`, then `nᵢ, nᵢnᵢ₊₁, …`.
pub fn higman_vectors(coefficients: &[BigInt], d: usize) -> Result<Vec<Vec<BigInt>>> {
    if d == 0 {
        return Err(Error::Input("length must be positive".into()));
    }
    if coefficients.len() + 1 < d {
        return Err(Error::Input(format!(
            "{} coefficients needed, got {}",
            d - 1,
            coefficients.len()
        )));
    }
    if let Some(c) = coefficients.iter().find(|c| **c < BigInt::one()) {
        return Err(Error::Input(format!(
            "coefficients must be positive, got {c}"
        )));
    }
    Ok((0..d)
        .map(|i| {
            let mut a = vec![BigInt::zero(); d];
            let mut acc = BigInt::one();
            a[i] = acc.clone();
            for k in i + 1..d {
                acc *= &coefficients[k - 1];
                a[k] = acc.clone();
            }
            a
        })
        .collect())
}

/// `xᵢ = bᵢ + nᵢ·xᵢ₊₁` in `H`, with `bᵢ = φ(eᵢ)` for `φ : ℤ^D → H`.
#[derive(Clone, Debug)]
pub struct HigmanSystem {
    pub coefficients: Vec<BigInt>,
    pub phi: FgAbHom,
}

impl HigmanSystem {
    pub fn new(coefficients: Vec<BigInt>, phi: FgAbHom) -> Result<Self> {
        let d = phi.dom().ngens();
        if d == 0 {
            return Err(Error::Input("system needs at least one equation".into()));
        }
        if !phi.dom().is_torsion_free() || phi.dom().relations().cols() != 0 {
            return Err(Error::Input(
                "the domain must be a free group on the equations".into(),
            ));
        }
        if coefficients.len() + 1 < d {
            return Err(Error::Input(format!(
                "{} coefficients needed, got {}",
                d - 1,
                coefficients.len()
            )));
        }
        if coefficients.iter().any(|c| *c < BigInt::one()) {
            return Err(Error::Input("coefficients must be positive".into()));
        }
        Ok(HigmanSystem { coefficients, phi })
    }

    /// Targets given as elements of `H`.
    pub fn from_targets(
        coefficients: Vec<BigInt>,
        group: &FgAbGroup,
        targets: &[Vec<BigInt>],
    ) -> Result<Self> {
        let m = IntMatrix::from_columns(group.ngens(), targets)?;
        let phi = FgAbHom::new(FgAbGroup::free(targets.len()), group.clone(), m)?;
        Self::new(coefficients, phi)
    }

    pub fn len(&self) -> usize {
        self.phi.dom().ngens()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn target(&self, i: usize) -> Vec<BigInt> {
        self.phi.matrix().column(i)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HigmanEquation {
    pub index: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HigmanSolution {
    pub group: String,
    #[serde(serialize_with = "ser_vecs")]
    pub solution: Vec<Vec<BigInt>>,
    pub equations: Vec<HigmanEquation>,
    /// The last equation involves `x_{D+1}`, which the truncation does not see.
    pub boundary_index: usize,
    pub verified: bool,
}

fn ser_vecs<S: Serializer>(v: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter()
        .map(|x| x.iter().map(ToString::to_string).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .serialize(s)
}

pub fn higman_verify(sys: &HigmanSystem) -> Result<HigmanSolution> {
    let d = sys.len();
    let h = sys.phi.cod();
    let a = higman_vectors(&sys.coefficients, d)?;
    let x = a
        .iter()
        .map(|ai| h.normalize(&sys.phi.apply(ai)?))
        .collect::<Result<Vec<_>>>()?;
    let equations = (0..d - 1)
        .map(|i| {
            let rhs: Vec<BigInt> = sys
                .target(i)
                .iter()
                .zip(&x[i + 1])
                .map(|(b, y)| b + &sys.coefficients[i] * y)
                .collect();
            Ok(HigmanEquation {
                index: i + 1,
                holds: h.elements_equal(&x[i], &rhs)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HigmanSolution {
        group: h.canonical_form().to_string(),
        verified: equations.iter().all(|e| e.holds),
        solution: x,
        equations,
        boundary_index: d,
    })
}
