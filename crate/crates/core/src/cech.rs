//! Towers of finite polyhedra: homology towers, cohomology direct systems, the stage-wise
//! universal coefficient sequences and the ladder connecting them.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::{self, FindingStatus, NablaReport};
use crate::fgab::{self, ExtGroup, FgAbGroup, FgAbHom, HomGroup};
use crate::simplicial::{self, flatten, Cohomology, Homology, SimplicialComplex, SimplicialMap};
use crate::tower::{self, ColimClass, DirectSystem, InverseTower, ThreadHom};
use crate::zlinalg::{self, IntMatrix};

/// `X₁ ← X₂ ← … ← X_J`; `bonds[k] : complexes[k+1] → complexes[k]`.
#[derive(Clone, Debug)]
pub struct PolyhedralTower {
    complexes: Vec<SimplicialComplex>,
    bonds: Vec<SimplicialMap>,
}

impl PolyhedralTower {
    pub fn new(complexes: Vec<SimplicialComplex>, bonds: Vec<SimplicialMap>) -> Result<Self> {
        if complexes.is_empty() {
            return Err(Error::Input("a tower needs at least one complex".into()));
        }
        if bonds.len() + 1 != complexes.len() {
            return Err(Error::dims(
                format!("{} bonds", complexes.len() - 1),
                bonds.len(),
            ));
        }
        for (k, b) in bonds.iter().enumerate() {
            if b.dom() != &complexes[k + 1] || b.cod() != &complexes[k] {
                return Err(Error::Input(format!(
                    "bond {} does not map level {} to level {}",
                    k + 1,
                    k + 2,
                    k + 1
                )));
            }
        }
        Ok(PolyhedralTower { complexes, bonds })
    }

    /// Bouquets of `i` circles with the last circle collapsed at each step.
    pub fn hawaiian(window: usize) -> Result<Self> {
        let complexes = (1..=window).map(simplicial::bouquet).collect();
        let bonds = (2..=window)
            .map(simplicial::collapse)
            .collect::<Result<_>>()?;
        Self::new(complexes, bonds)
    }

    /// Circles of `3·p^{i-1}` vertices wrapped `p` times onto each other.
    pub fn solenoid(p: usize, window: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::Input(format!(
                "solenoid degree must be at least 2, got {p}"
            )));
        }
        let sizes: Vec<usize> = (0..window)
            .map(|i| {
                u32::try_from(i)
                    .ok()
                    .and_then(|e| p.checked_pow(e))
                    .and_then(|q| q.checked_mul(3))
                    .ok_or_else(|| Error::Input("solenoid tower is too deep".into()))
            })
            .collect::<Result<_>>()?;
        let complexes = sizes
            .iter()
            .map(|&m| simplicial::circle(m))
            .collect::<Result<_>>()?;
        let bonds = sizes[..window.saturating_sub(1)]
            .iter()
            .map(|&m| simplicial::degree(p, m))
            .collect::<Result<_>>()?;
        Self::new(complexes, bonds)
    }

    pub fn constant(k: &SimplicialComplex, window: usize) -> Result<Self> {
        let id = SimplicialMap::identity(k);
        Self::new(vec![k.clone(); window], vec![id; window.saturating_sub(1)])
    }

    /// `hawaiian`, `solenoid:p`, `const:<complex>`.
    pub fn by_name(name: &str, window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::Input("window must be positive".into()));
        }
        if name == "hawaiian" {
            return Self::hawaiian(window);
        }
        if let Some(p) = name.strip_prefix("solenoid:") {
            let p = p
                .parse()
                .map_err(|_| Error::Input(format!("bad solenoid degree in {name:?}")))?;
            return Self::solenoid(p, window);
        }
        if let Some(k) = name.strip_prefix("const:") {
            return Self::constant(&simplicial::complex_by_name(k)?, window);
        }
        Err(Error::Input(format!("unknown polyhedral tower {name:?}")))
    }

    pub fn window(&self) -> usize {
        self.complexes.len()
    }

    pub fn complex(&self, level: usize) -> &SimplicialComplex {
        &self.complexes[level - 1]
    }

    /// `X_{level+1} → X_level`.
    pub fn bond(&self, level: usize) -> &SimplicialMap {
        &self.bonds[level - 1]
    }

    pub fn truncate(&self, window: usize) -> Result<Self> {
        if window == 0 || window > self.window() {
            return Err(Error::Input(format!(
                "cannot truncate window {} to {window}",
                self.window()
            )));
        }
        Self::new(
            self.complexes[..window].to_vec(),
            self.bonds[..window - 1].to_vec(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct BondJson {
    from: usize,
    to: usize,
    vertex_map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PolyhedralTowerJson {
    complexes: Vec<SimplicialComplex>,
    bonds: Vec<BondJson>,
}

impl Serialize for PolyhedralTower {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyhedralTowerJson {
            complexes: self.complexes.clone(),
            bonds: self
                .bonds
                .iter()
                .enumerate()
                .map(|(k, b)| BondJson {
                    from: k + 1,
                    to: k,
                    vertex_map: b.vertex_map().to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyhedralTower {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PolyhedralTowerJson::deserialize(d)?;
        let n = j.complexes.len();
        let mut bonds: Vec<Option<SimplicialMap>> = vec![None; n.saturating_sub(1)];
        for b in j.bonds {
            if b.from != b.to + 1 || b.from >= n {
                return Err(D::Error::custom(format!(
                    "bond {} -> {} does not join consecutive levels",
                    b.from, b.to
                )));
            }
            let map = SimplicialMap::new(
                j.complexes[b.from].clone(),
                j.complexes[b.to].clone(),
                b.vertex_map,
            )
            .map_err(D::Error::custom)?;
            if bonds[b.to].replace(map).is_some() {
                return Err(D::Error::custom(format!(
                    "duplicate bond {} -> {}",
                    b.from, b.to
                )));
            }
        }
        let bonds = bonds
            .into_iter()
            .enumerate()
            .map(|(k, b)| {
                b.ok_or_else(|| D::Error::custom(format!("missing bond {} -> {k}", k + 1)))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PolyhedralTower::new(j.complexes, bonds).map_err(D::Error::custom)
    }
}

fn trivial_homology() -> FgAbGroup {
    FgAbGroup::trivial()
}

/// `H_n(X₁) ← H_n(X₂) ← …`.
pub fn homology_tower(pt: &PolyhedralTower, n: usize) -> Result<InverseTower> {
    let groups = (1..=pt.window())
        .map(|i| pt.complex(i).homology(n).group)
        .collect();
    let bonds = (1..pt.window())
        .map(|i| pt.bond(i).induced_homology(n))
        .collect::<Result<_>>()?;
    InverseTower::new(groups, bonds)
}

/// `H^n(X₁; G) → H^n(X₂; G) → …` with the stage cohomology data kept.
#[derive(Clone, Debug)]
pub struct CohomologySystem {
    pub system: DirectSystem,
    pub stages: Vec<Cohomology>,
}

pub fn cohomology_system(
    pt: &PolyhedralTower,
    n: usize,
    g: &FgAbGroup,
) -> Result<CohomologySystem> {
    let stages = (1..=pt.window())
        .map(|i| pt.complex(i).cohomology(n, g))
        .collect::<Result<Vec<_>>>()?;
    let bonds = (1..pt.window())
        .map(|i| {
            pt.bond(i)
                .induced_cohomology_between(n, &stages[i - 1], &stages[i])
        })
        .collect::<Result<_>>()?;
    let system = DirectSystem::new(stages.iter().map(|c| c.group().clone()).collect(), bonds)?;
    Ok(CohomologySystem { system, stages })
}

/// The two maps of `0 → Ext(H_{n-1}, G) → H^n(X; G) → Hom(H_n, G) → 0` at one complex.
#[derive(Clone, Debug)]
pub struct StageSequence {
    pub ext: ExtGroup,
    pub cohomology: Cohomology,
    pub hom: HomGroup,
    pub ext_to_cohomology: FgAbHom,
    pub cohomology_to_hom: FgAbHom,
}

pub fn stage_sequence(k: &SimplicialComplex, n: usize, g: &FgAbGroup) -> Result<StageSequence> {
    let cohomology = k.cohomology(n, g)?;
    let upper = k.homology(n);
    let hom = fgab::hom_group(&upper.group, g);
    let (ext, ext_to_cohomology) = if n == 0 {
        let ext = fgab::ext_group(&trivial_homology(), g);
        let zero = FgAbHom::zero(&ext.group, cohomology.group());
        (ext, zero)
    } else {
        let lower = k.homology(n - 1);
        let ext = fgab::ext_group(&lower.group, g);
        let map = ext_to_cohomology(k, n, &lower, &ext, &cohomology)?;
        (ext, map)
    };
    let cohomology_to_hom = cohomology_to_hom(&upper, &hom, &cohomology)?;
    Ok(StageSequence {
        ext,
        cohomology,
        hom,
        ext_to_cohomology,
        cohomology_to_hom,
    })
}

impl StageSequence {
    /// Injectivity, exactness in the middle and surjectivity, each with a counterexample on failure.
    pub fn verify(&self, stage: usize) -> Result<StageReport> {
        Ok(StageReport {
            stage,
            ext: self.ext.group.canonical_form().to_string(),
            cohomology: self.cohomology.group().canonical_form().to_string(),
            hom: self.hom.group.canonical_form().to_string(),
            injective: injectivity(&self.ext_to_cohomology)?,
            exact_middle: middle_exactness(&self.ext_to_cohomology, &self.cohomology_to_hom)?,
            surjective: surjectivity(&self.cohomology_to_hom)?,
        })
    }
}

/// A cocycle on the relation module `X` goes to the cochain `X·Q` where `R·Q` are the cycle
/// coordinates of `∂_n`.
fn ext_to_cohomology(
    k: &SimplicialComplex,
    n: usize,
    lower: &Homology,
    ext: &ExtGroup,
    cohomology: &Cohomology,
) -> Result<FgAbHom> {
    let boundary = k.boundary(n);
    let smith = zlinalg::snf(ext.resolution());
    let q_cols = boundary
        .columns()
        .map(|b| {
            let coords = lower.class_of(&b)?;
            zlinalg::solve_with(&smith, &coords)
                .ok_or_else(|| Error::IllDefined("boundary outside the relation lattice".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let q = IntMatrix::from_columns(ext.resolution().cols(), &q_cols)?;
    let cols = (0..ext.group.ngens())
        .map(|e| {
            let x = ext.cocycle_of(&ext.group.generator(e))?;
            cohomology.class_of(&flatten(&(&x * &q)))
        })
        .collect::<Result<Vec<_>>>()?;
    FgAbHom::new(
        ext.group.clone(),
        cohomology.group().clone(),
        IntMatrix::from_columns(cohomology.group().ngens(), &cols)?,
    )
}

/// Restriction of a cocycle to the cycle basis.
fn cohomology_to_hom(upper: &Homology, hom: &HomGroup, cohomology: &Cohomology) -> Result<FgAbHom> {
    let cols = (0..cohomology.group().ngens())
        .map(|e| {
            let phi =
                cohomology.as_matrix(&cohomology.representative(&cohomology.group().generator(e)));
            let f = FgAbHom::new(
                upper.group.clone(),
                cohomology.coeff.clone(),
                &phi * &upper.cycles,
            )?;
            hom.element_of(&f)
        })
        .collect::<Result<Vec<_>>>()?;
    FgAbHom::new(
        cohomology.group().clone(),
        hom.group.clone(),
        IntMatrix::from_columns(hom.group.ngens(), &cols)?,
    )
}

/// Outcome of one exactness or commutativity claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<String>>,
}

impl Verdict {
    fn ok() -> Self {
        Verdict {
            holds: true,
            counterexample: None,
        }
    }

    fn fail(x: &[BigInt]) -> Self {
        Verdict {
            holds: false,
            counterexample: Some(x.iter().map(ToString::to_string).collect()),
        }
    }
}

fn injectivity(f: &FgAbHom) -> Result<Verdict> {
    let kernel = fgab::kic(f).kernel.subgroup;
    for x in kernel.generators().columns() {
        if !f.dom().is_zero(&x)? {
            return Ok(Verdict::fail(&x));
        }
    }
    Ok(Verdict::ok())
}

fn surjectivity(f: &FgAbHom) -> Result<Verdict> {
    let image = f.image();
    for k in 0..f.cod().ngens() {
        let e = f.cod().generator(k);
        if !image.contains(&e)? {
            return Ok(Verdict::fail(&e));
        }
    }
    Ok(Verdict::ok())
}

/// `im α = ker β`; a counterexample lies in one side but not the other.
fn middle_exactness(alpha: &FgAbHom, beta: &FgAbHom) -> Result<Verdict> {
    let image = alpha.image();
    let kernel = fgab::kic(beta).kernel.subgroup;
    for x in image.generators().columns() {
        if !kernel.contains(&x)? {
            return Ok(Verdict::fail(&x));
        }
    }
    for x in kernel.generators().columns() {
        if !image.contains(&x)? {
            return Ok(Verdict::fail(&x));
        }
    }
    Ok(Verdict::ok())
}

fn square(left: &FgAbHom, right: &FgAbHom) -> Result<Verdict> {
    for k in 0..left.dom().ngens() {
        let e = left.dom().generator(k);
        if !left
            .cod()
            .elements_equal(&left.apply(&e)?, &right.apply(&e)?)?
        {
            return Ok(Verdict::fail(&e));
        }
    }
    Ok(Verdict::ok())
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: usize,
    pub ext: String,
    pub cohomology: String,
    pub hom: String,
    pub injective: Verdict,
    pub exact_middle: Verdict,
    pub surjective: Verdict,
}

impl StageReport {
    pub fn exact(&self) -> bool {
        self.injective.holds && self.exact_middle.holds && self.surjective.holds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareReport {
    pub bond: usize,
    pub ext_square: Verdict,
    pub hom_square: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColimitReport {
    /// Over a finite window the colimit is the last stage.
    pub stage: usize,
    pub ext: String,
    pub cohomology: String,
    pub hom: String,
    pub exact: bool,
    pub ext_isomorphic_from: Option<usize>,
    pub cohomology_isomorphic_from: Option<usize>,
    pub hom_isomorphic_from: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentificationStatus {
    Certified,
    Withheld,
    /// The identification is only claimed for torsion-free coefficients.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct NablaIdentification {
    pub status: IdentificationStatus,
    pub reason: String,
    pub ml_certified: bool,
    pub diagnostics: NablaReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct UctReport {
    pub dim: usize,
    pub coeff: String,
    pub window: usize,
    pub stages: Vec<StageReport>,
    pub squares: Vec<SquareReport>,
    pub colimit: ColimitReport,
    pub nabla: NablaIdentification,
}

impl UctReport {
    /// Stage exactness and commuting squares.
    pub fn ladder_holds(&self) -> bool {
        self.stages.iter().all(StageReport::exact)
            && self
                .squares
                .iter()
                .all(|s| s.ext_square.holds && s.hom_square.holds)
            && self.colimit.exact
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Verifies every stage sequence, every ladder square and the window colimit, and decides
/// whether `Hom(Ȟ_n, G)` may be identified with the colimit of the Hom system.
pub fn uct_ladder(pt: &PolyhedralTower, n: usize, g: &FgAbGroup) -> Result<UctReport> {
    let window = pt.window();
    let seqs = (1..=window)
        .map(|i| stage_sequence(pt.complex(i), n, g))
        .collect::<Result<Vec<_>>>()?;
    let stages = seqs
        .iter()
        .enumerate()
        .map(|(i, s)| s.verify(i + 1))
        .collect::<Result<Vec<_>>>()?;

    let upper = homology_tower(pt, n)?;
    let hom_bonds = (1..window)
        .map(|i| fgab::hom_map(upper.bond(i), &seqs[i - 1].hom, &seqs[i].hom))
        .collect::<Result<Vec<_>>>()?;
    let ext_bonds = if n == 0 {
        (1..window)
            .map(|i| FgAbHom::zero(&seqs[i - 1].ext.group, &seqs[i].ext.group))
            .collect()
    } else {
        let lower = homology_tower(pt, n - 1)?;
        (1..window)
            .map(|i| fgab::ext_map(lower.bond(i), &seqs[i - 1].ext, &seqs[i].ext))
            .collect::<Result<Vec<_>>>()?
    };
    let coh_bonds = (1..window)
        .map(|i| {
            pt.bond(i)
                .induced_cohomology_between(n, &seqs[i - 1].cohomology, &seqs[i].cohomology)
        })
        .collect::<Result<Vec<_>>>()?;

    let squares = (1..window)
        .map(|i| {
            let (a, b) = (&seqs[i - 1], &seqs[i]);
            let ext_square = square(
                &b.ext_to_cohomology.compose(&ext_bonds[i - 1])?,
                &coh_bonds[i - 1].compose(&a.ext_to_cohomology)?,
            )?;
            let hom_square = square(
                &b.cohomology_to_hom.compose(&coh_bonds[i - 1])?,
                &hom_bonds[i - 1].compose(&a.cohomology_to_hom)?,
            )?;
            Ok(SquareReport {
                bond: i,
                ext_square,
                hom_square,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let system = |groups: Vec<FgAbGroup>, bonds: Vec<FgAbHom>| DirectSystem::new(groups, bonds);
    let ext_sys = system(
        seqs.iter().map(|s| s.ext.group.clone()).collect(),
        ext_bonds,
    )?;
    let coh_sys = system(
        seqs.iter().map(|s| s.cohomology.group().clone()).collect(),
        coh_bonds,
    )?;
    let hom_sys = system(
        seqs.iter().map(|s| s.hom.group.clone()).collect(),
        hom_bonds,
    )?;
    let last = &stages[window - 1];
    let colimit = ColimitReport {
        stage: window,
        ext: last.ext.clone(),
        cohomology: last.cohomology.clone(),
        hom: last.hom.clone(),
        exact: last.exact(),
        ext_isomorphic_from: ext_sys.eventually_isomorphic_from(),
        cohomology_isomorphic_from: coh_sys.eventually_isomorphic_from(),
        hom_isomorphic_from: hom_sys.eventually_isomorphic_from(),
    };

    let nabla = nabla_identification(&upper, g)?;
    Ok(UctReport {
        dim: n,
        coeff: g.canonical_form().to_string(),
        window,
        stages,
        squares,
        colimit,
        nabla,
    })
}

fn nabla_identification(upper: &InverseTower, g: &FgAbGroup) -> Result<NablaIdentification> {
    let diagnostics = factor::nabla_diagnostics(upper, g)?;
    let ml_certified = tower::is_mittag_leffler(upper)?.certified;
    let stable = diagnostics.status(factor::NABLA_INJECTIVE_STABLE);
    let (status, reason) = if !g.is_torsion_free() {
        (
            IdentificationStatus::NotApplicable,
            "coefficient group has torsion".to_string(),
        )
    } else if !ml_certified {
        (
            IdentificationStatus::Withheld,
            "homology tower is not Mittag-Leffler within the window".to_string(),
        )
    } else if stable != Some(FindingStatus::Certified) {
        (
            IdentificationStatus::Withheld,
            "bonds between stable images are not onto within the window".to_string(),
        )
    } else {
        (
            IdentificationStatus::Certified,
            "Mittag-Leffler with onto bonds between stable images".to_string(),
        )
    };
    Ok(NablaIdentification {
        status,
        reason,
        ml_certified,
        diagnostics,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpeckerReport {
    pub window: usize,
    pub stage_ranks: Vec<usize>,
    pub bonds_injective: bool,
    pub independent_classes: usize,
    pub evaluation_matrix: Vec<Vec<String>>,
    pub evaluation_is_identity: bool,
    pub pushforward_consistent: bool,
    pub passed: bool,
}

/// On the polyhedral hawaiian tower with `G = ℤ`: the stage-`N` coordinate functionals give
/// `N` independent colimit classes, each read off uniquely from its values on threads.
pub fn specker_check(n: usize) -> Result<SpeckerReport> {
    if n == 0 {
        return Err(Error::Input("window must be positive".into()));
    }
    let z = FgAbGroup::free(1);
    let pt = PolyhedralTower::hawaiian(n)?;
    let t = homology_tower(&pt, 1)?;
    let hs = tower::hom_system(&t, &z)?;
    let stage_ranks: Vec<usize> = hs
        .hom_groups
        .iter()
        .map(|h| h.group.canonical_form().free_rank)
        .collect();
    let bonds_injective = (1..n).all(|i| hs.system.bond(i).is_injective());

    let top = &hs.hom_groups[n - 1];
    let functionals: Vec<FgAbHom> = (0..n)
        .map(|k| {
            let mut row = vec![BigInt::from(0); n];
            row[k] = BigInt::from(1);
            FgAbHom::new(t.group(n).clone(), z.clone(), IntMatrix::new(1, n, row)?)
        })
        .collect::<Result<_>>()?;
    let coords = functionals
        .iter()
        .map(|f| top.element_of(f))
        .collect::<Result<Vec<_>>>()?;
    let independent_classes = zlinalg::rank(&IntMatrix::from_columns(top.group.ngens(), &coords)?);

    let threads = t.thread_generators();
    let evaluation: Vec<Vec<BigInt>> = functionals
        .iter()
        .map(|f| {
            let th = tower::nabla_apply(n, f);
            threads
                .iter()
                .map(|u| Ok(th.evaluate(u)?[0].clone()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let evaluation_is_identity = evaluation.iter().enumerate().all(|(a, row)| {
        row.iter()
            .enumerate()
            .all(|(b, x)| *x == BigInt::from(i64::from(a == b)))
    });

    let mut pushforward_consistent = true;
    for stage in 1..n {
        for e in 0..hs.hom_groups[stage - 1].group.ngens() {
            let class = ColimClass::new(stage, hs.hom_groups[stage - 1].group.generator(e));
            let pushed = hs.system.push(&class, n)?;
            let here = ThreadHom::Factored {
                stage,
                hom: hs.hom_of(&class)?,
            };
            let there = ThreadHom::Factored {
                stage: n,
                hom: hs.hom_of(&pushed)?,
            };
            pushforward_consistent &= here.agrees_with(&there, &threads)?;
        }
    }

    let passed = independent_classes == n
        && evaluation_is_identity
        && bonds_injective
        && pushforward_consistent
        && stage_ranks.iter().enumerate().all(|(i, &r)| r == i + 1);
    Ok(SpeckerReport {
        window: n,
        stage_ranks,
        bonds_injective,
        independent_classes,
        evaluation_matrix: evaluation
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect(),
        evaluation_is_identity,
        pushforward_consistent,
        passed,
    })
}

/// Summary JSON for a polyhedral tower's homology in one degree.
pub fn homology_summary(pt: &PolyhedralTower, n: usize) -> Result<Value> {
    let t = homology_tower(pt, n)?;
    let ml = tower::is_mittag_leffler(&t)?;
    Ok(json!({
        "dim": n,
        "groups": t.groups().iter().map(|g| g.canonical_form().to_string()).collect::<Vec<_>>(),
        "mittag_leffler": ml,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homology_towers_match_algebraic_towers() {
        let t = homology_tower(&PolyhedralTower::hawaiian(5).unwrap(), 1).unwrap();
        let h = InverseTower::hawaii(5);
        for i in 1..5 {
            assert_eq!(t.bond(i).matrix(), h.bond(i).matrix());
        }
        let t = homology_tower(&PolyhedralTower::solenoid(2, 4).unwrap(), 1).unwrap();
        let s = InverseTower::solenoid(2, 4);
        for i in 1..4 {
            assert_eq!(t.bond(i).matrix(), s.bond(i).matrix());
        }
        for pt in [
            PolyhedralTower::hawaiian(3).unwrap(),
            PolyhedralTower::by_name("const:proj_plane", 3).unwrap(),
        ] {
            let t = homology_tower(&pt, 0).unwrap();
            for i in 1..3 {
                assert!(t.group(i).isomorphic(&FgAbGroup::free(1)));
                assert!(t.bond(i).is_isomorphism());
            }
        }
    }

    #[test]
    fn cohomology_systems() {
        let z = FgAbGroup::free(1);
        let cs = cohomology_system(&PolyhedralTower::solenoid(2, 4).unwrap(), 1, &z).unwrap();
        for i in 1..4 {
            let b = cs.system.bond(i);
            assert!(b.is_injective());
            assert_eq!(b.kic().cokernel.group.canonical_form().to_string(), "Z/2");
        }
        let cs = cohomology_system(&PolyhedralTower::hawaiian(4).unwrap(), 1, &z).unwrap();
        for i in 1..4 {
            assert!(cs.system.group(i).isomorphic(&FgAbGroup::free(i)));
            let b = cs.system.bond(i);
            assert!(b.is_injective());
            assert!(b.kic().cokernel.group.isomorphic(&z));
        }
        let cs = cohomology_system(&PolyhedralTower::hawaiian(3).unwrap(), 2, &z).unwrap();
        assert!((1..=3).all(|i| cs.system.group(i).is_trivial()));
    }

    #[test]
    fn projective_plane_ladder() {
        let pt = PolyhedralTower::by_name("const:proj_plane", 3).unwrap();
        let r = uct_ladder(&pt, 2, &FgAbGroup::free(1)).unwrap();
        assert!(r.ladder_holds());
        for s in &r.stages {
            assert_eq!(
                (s.ext.as_str(), s.cohomology.as_str(), s.hom.as_str()),
                ("Z/2", "Z/2", "0")
            );
        }
    }

    #[test]
    fn hawaiian_ladder_certifies_nabla() {
        let r = uct_ladder(
            &PolyhedralTower::hawaiian(5).unwrap(),
            1,
            &FgAbGroup::free(1),
        )
        .unwrap();
        assert!(r.ladder_holds());
        assert_eq!(r.nabla.status, IdentificationStatus::Certified);
        for s in &r.stages {
            assert_eq!(s.ext, "0");
            assert_eq!(s.cohomology, s.hom);
        }
        assert_eq!(r.colimit.hom, "Z^5");
    }

    #[test]
    fn solenoid_ladder_withholds_nabla() {
        let r = uct_ladder(
            &PolyhedralTower::solenoid(2, 4).unwrap(),
            1,
            &FgAbGroup::free(1),
        )
        .unwrap();
        assert!(r.ladder_holds());
        assert_eq!(r.nabla.status, IdentificationStatus::Withheld);
        assert!(!r.nabla.ml_certified);
    }

    #[test]
    fn torsion_coefficients_ladder() {
        let g = FgAbGroup::cyclic(6);
        for (pt, n) in [
            (PolyhedralTower::by_name("const:proj_plane", 2).unwrap(), 1),
            (PolyhedralTower::by_name("const:proj_plane", 2).unwrap(), 2),
            (PolyhedralTower::solenoid(2, 3).unwrap(), 1),
            (PolyhedralTower::hawaiian(3).unwrap(), 0),
        ] {
            let r = uct_ladder(&pt, n, &g).unwrap();
            assert!(r.ladder_holds());
            assert_eq!(r.nabla.status, IdentificationStatus::NotApplicable);
        }
    }

    #[test]
    fn specker_examples() {
        let r = specker_check(1).unwrap();
        assert!(r.passed);
        assert_eq!(r.independent_classes, 1);
        let r = specker_check(5).unwrap();
        assert!(r.passed);
        assert_eq!(r.independent_classes, 5);
        assert!(r.evaluation_is_identity);
    }

    #[test]
    fn tower_json_round_trip() {
        let pt = PolyhedralTower::solenoid(3, 3).unwrap();
        let s = serde_json::to_string(&pt).unwrap();
        let back: PolyhedralTower = serde_json::from_str(&s).unwrap();
        assert_eq!(back.window(), 3);
        assert_eq!(back.bond(2), pt.bond(2));
        let broken = s.replace("\"from\":2", "\"from\":7");
        assert!(serde_json::from_str::<PolyhedralTower>(&broken).is_err());
    }
}
