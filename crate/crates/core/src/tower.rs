//! Finite windows of inverse sequences and direct systems of finitely generated
//! abelian groups.
//!
//! Levels are numbered from 1, matching the usual `H₁ ← H₂ ← …` notation: in a window of
//! length `J` the groups are `H₁, …, H_J` and bond `k` maps `H_{k+1} → H_k`. The inverse
//! limit itself is never built; window threads (compatible sequences of length `J`) stand
//! in for its elements.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{self, ExtGroup, FgAbGroup, FgAbHom, HomGroup, Index, Subgroup};
use crate::zlinalg::IntMatrix;

/// Inverse sequence `H₁ ← H₂ ← … ← H_J`.
#[derive(Clone, Debug)]
pub struct InverseTower {
    groups: Vec<FgAbGroup>,
    bonds: Vec<FgAbHom>,
}

impl InverseTower {
    /// `bonds[k]` must map `groups[k + 1]` to `groups[k]`.
    pub fn new(groups: Vec<FgAbGroup>, bonds: Vec<FgAbHom>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Input("a tower needs at least one group".into()));
        }
        if bonds.len() + 1 != groups.len() {
            return Err(Error::dims(
                format!("{} bonds", groups.len() - 1),
                bonds.len(),
            ));
        }
        for (k, b) in bonds.iter().enumerate() {
            if b.dom() != &groups[k + 1] || b.cod() != &groups[k] {
                return Err(Error::Input(format!(
                    "bond {k} does not map group {} to group {k}",
                    k + 1
                )));
            }
        }
        Ok(InverseTower { groups, bonds })
    }

    /// Builds bonds from matrices, checking each is well defined.
    pub fn from_matrices(groups: Vec<FgAbGroup>, bonds: Vec<IntMatrix>) -> Result<Self> {
        if bonds.len() + 1 != groups.len() {
            return Err(Error::dims(
                format!("{} bonds", groups.len().saturating_sub(1)),
                bonds.len(),
            ));
        }
        let homs = bonds
            .into_iter()
            .enumerate()
            .map(|(k, m)| FgAbHom::new(groups[k + 1].clone(), groups[k].clone(), m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(groups, homs)
    }

    /// `ℤ^i` with the projections forgetting the last coordinate.
    pub fn hawaii(window: usize) -> Self {
        let groups: Vec<FgAbGroup> = (1..=window).map(FgAbGroup::free).collect();
        let bonds = (1..window)
            .map(|i| {
                let mut m = IntMatrix::zeros(i, i + 1);
                for k in 0..i {
                    m.set(k, k, BigInt::from(1));
                }
                FgAbHom::new(groups[i].clone(), groups[i - 1].clone(), m).expect("free domain")
            })
            .collect();
        InverseTower { groups, bonds }
    }

    /// `ℤ ←×p− ℤ ←×p− …`.
    pub fn solenoid(p: u64, window: usize) -> Self {
        let z = FgAbGroup::free(1);
        Self::repeated(&z, &IntMatrix::diagonal(1, 1, &[BigInt::from(p)]), window)
            .expect("multiplication is well defined on Z")
    }

    /// Constant tower with identity bonds.
    pub fn constant(g: &FgAbGroup, window: usize) -> Self {
        InverseTower {
            groups: vec![g.clone(); window],
            bonds: vec![FgAbHom::identity(g); window.saturating_sub(1)],
        }
    }

    /// Constant groups with the same bond matrix at every step.
    pub fn repeated(g: &FgAbGroup, bond: &IntMatrix, window: usize) -> Result<Self> {
        let hom = FgAbHom::new(g.clone(), g.clone(), bond.clone())?;
        Ok(InverseTower {
            groups: vec![g.clone(); window],
            bonds: vec![hom; window.saturating_sub(1)],
        })
    }

    pub fn window(&self) -> usize {
        self.groups.len()
    }

    /// `H_level`, 1-based.
    pub fn group(&self, level: usize) -> &FgAbGroup {
        &self.groups[level - 1]
    }

    pub fn groups(&self) -> &[FgAbGroup] {
        &self.groups
    }

    /// `p_level^{level+1}`.
    pub fn bond(&self, level: usize) -> &FgAbHom {
        &self.bonds[level - 1]
    }

    pub fn bonds(&self) -> &[FgAbHom] {
        &self.bonds
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level == 0 || level > self.window() {
            return Err(Error::Input(format!(
                "level {level} outside window 1..={}",
                self.window()
            )));
        }
        Ok(())
    }

    /// `p_i^j : H_j → H_i` for `i ≤ j`.
    pub fn composite(&self, i: usize, j: usize) -> Result<FgAbHom> {
        self.check_level(i)?;
        self.check_level(j)?;
        if i > j {
            return Err(Error::Input(format!(
                "composite needs i <= j, got {i} > {j}"
            )));
        }
        let mut c = FgAbHom::identity(self.group(j));
        for k in (i..j).rev() {
            c = self.bond(k).compose(&c)?;
        }
        Ok(c)
    }

    /// The descending chain `p_i^j(H_j)`, `j = i..=J`, as subgroups of `H_i`.
    pub fn image_chain(&self, i: usize) -> Result<Vec<Subgroup>> {
        self.check_level(i)?;
        let mut chain = vec![Subgroup::whole(self.group(i))];
        let mut c = FgAbHom::identity(self.group(i));
        for j in i + 1..=self.window() {
            c = c.compose(self.bond(j - 1))?;
            chain.push(c.image());
        }
        Ok(chain)
    }

    /// The window thread determined by an element of the top group.
    pub fn thread_from_top(&self, x: &[BigInt]) -> Result<Thread> {
        let top = self.window();
        let mut components = vec![Vec::new(); top];
        components[top - 1] = self.group(top).normalize(x)?;
        for level in (1..top).rev() {
            let y = self.bond(level).apply(&components[level])?;
            components[level - 1] = self.group(level).normalize(&y)?;
        }
        Ok(Thread { components })
    }

    /// Threads of the top group's generators; every window thread is a combination of these.
    pub fn thread_generators(&self) -> Vec<Thread> {
        let top = self.group(self.window());
        (0..top.ngens())
            .map(|k| {
                self.thread_from_top(&top.generator(k))
                    .expect("generator has the right length")
            })
            .collect()
    }

    /// The same tower cut down to its first `window` levels.
    pub fn truncate(&self, window: usize) -> Result<Self> {
        if window == 0 || window > self.window() {
            return Err(Error::Input(format!(
                "cannot truncate window {} to {window}",
                self.window()
            )));
        }
        Ok(InverseTower {
            groups: self.groups[..window].to_vec(),
            bonds: self.bonds[..window - 1].to_vec(),
        })
    }
}

/// A compatible sequence `(x₁, …, x_J)` with `p_i^{i+1}(x_{i+1}) = x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thread {
    #[serde(serialize_with = "ser_components")]
    components: Vec<Vec<BigInt>>,
}

fn ser_components<S: serde::Serializer>(
    c: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = c
        .iter()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .collect();
    strings.serialize(s)
}

impl Thread {
    /// Validates compatibility against the tower.
    pub fn new(tower: &InverseTower, components: Vec<Vec<BigInt>>) -> Result<Self> {
        if components.len() != tower.window() {
            return Err(Error::dims(
                format!("{} components", tower.window()),
                components.len(),
            ));
        }
        for level in 1..tower.window() {
            let pushed = tower.bond(level).apply(&components[level])?;
            if !tower
                .group(level)
                .elements_equal(&pushed, &components[level - 1])?
            {
                return Err(Error::Input(format!(
                    "components {level} and {} are not compatible",
                    level + 1
                )));
            }
        }
        Ok(Thread { components })
    }

    /// `x_level`, 1-based.
    pub fn component(&self, level: usize) -> &[BigInt] {
        &self.components[level - 1]
    }

    pub fn depth(&self) -> usize {
        self.components.len()
    }

    /// Smallest level with a nonzero component.
    pub fn first_nonzero_level(&self, tower: &InverseTower) -> Result<Option<usize>> {
        for level in 1..=self.depth() {
            if !tower.group(level).is_zero(self.component(level))? {
                return Ok(Some(level));
            }
        }
        Ok(None)
    }
}

/// How the image chain at one level behaves inside the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevelStatus {
    /// `p_i^j(H_j)` is constant for `at ≤ j ≤ J`, with `at < J`.
    Stabilized {
        at: usize,
    },
    NotStabilizedInWindow,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub status: LevelStatus,
    /// `[H_i : p_i^j(H_j)]` for `j = i..=J`.
    pub index_chain: Vec<Index>,
    #[serde(skip)]
    pub chain: Vec<Subgroup>,
}

/// Mittag-Leffler analysis of a window.
///
/// Only levels `1..=J-2` can show a stabilization index `s > i` followed by a confirming
/// step, so those are the decided levels; the last two levels are listed as undecided.
#[derive(Clone, Debug, Serialize)]
pub struct MlReport {
    pub window: usize,
    pub levels: Vec<LevelReport>,
    pub undecided_levels: Vec<usize>,
    pub certified: bool,
}

impl MlReport {
    pub fn level(&self, i: usize) -> Option<&LevelReport> {
        self.levels.iter().find(|l| l.level == i)
    }

    pub fn stabilization(&self, i: usize) -> Option<usize> {
        match self.level(i)?.status {
            LevelStatus::Stabilized { at } => Some(at),
            LevelStatus::NotStabilizedInWindow => None,
        }
    }
}

fn analyze_level(tower: &InverseTower, i: usize) -> Result<LevelReport> {
    let chain = tower.image_chain(i)?;
    let whole = &chain[0];
    let index_chain = chain
        .iter()
        .map(|s| fgab::index(s, whole))
        .collect::<Result<Vec<_>>>()?;
    let window = tower.window();
    let last = &chain[window - i];
    let mut status = LevelStatus::NotStabilizedInWindow;
    for j in i + 1..window {
        // descending chain: equality with the last term forces equality in between
        if chain[j - i].same_as(last)? {
            status = LevelStatus::Stabilized { at: j };
            break;
        }
    }
    Ok(LevelReport {
        level: i,
        status,
        index_chain,
        chain,
    })
}

pub fn is_mittag_leffler(tower: &InverseTower) -> Result<MlReport> {
    let window = tower.window();
    if window < 2 {
        return Err(Error::Precondition(
            "Mittag-Leffler analysis needs a window of at least 2".into(),
        ));
    }
    let decided = window.saturating_sub(2);
    let levels = (1..=decided)
        .map(|i| analyze_level(tower, i))
        .collect::<Result<Vec<_>>>()?;
    let certified = decided > 0
        && levels
            .iter()
            .all(|l| matches!(l.status, LevelStatus::Stabilized { .. }));
    Ok(MlReport {
        window,
        levels,
        undecided_levels: (decided + 1..=window).collect(),
        certified,
    })
}

/// `p_i(lim H)` as seen in the window: the stabilized image at level `i`.
pub fn stable_image(tower: &InverseTower, i: usize) -> Result<Subgroup> {
    let window = tower.window();
    if i == 0 || i > window {
        return Err(Error::Input(format!(
            "level {i} outside window 1..={window}"
        )));
    }
    let report = analyze_level(tower, i)?;
    match report.status {
        LevelStatus::Stabilized { at } => Ok(report.chain[at - i].clone()),
        LevelStatus::NotStabilizedInWindow => {
            Err(Error::NotStabilizedInWindow { level: i, window })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Lim1Status {
    /// The tower is Mittag-Leffler in the window, so `lim¹` vanishes.
    Lim1Vanishes { certificate: MlReport },
    /// No certificate; `lim¹` is not computed.
    Unknown,
}

pub fn lim1_status(tower: &InverseTower) -> Result<Lim1Status> {
    let report = is_mittag_leffler(tower)?;
    Ok(if report.certified {
        Lim1Status::Lim1Vanishes {
            certificate: report,
        }
    } else {
        Lim1Status::Unknown
    })
}

/// Direct system `A¹ → A² → … → A^J`; `bonds[k]` maps `groups[k]` to `groups[k + 1]`.
#[derive(Clone, Debug)]
pub struct DirectSystem {
    groups: Vec<FgAbGroup>,
    bonds: Vec<FgAbHom>,
}

impl DirectSystem {
    pub fn new(groups: Vec<FgAbGroup>, bonds: Vec<FgAbHom>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Input(
                "a direct system needs at least one group".into(),
            ));
        }
        if bonds.len() + 1 != groups.len() {
            return Err(Error::dims(
                format!("{} bonds", groups.len() - 1),
                bonds.len(),
            ));
        }
        for (k, b) in bonds.iter().enumerate() {
            if b.dom() != &groups[k] || b.cod() != &groups[k + 1] {
                return Err(Error::Input(format!(
                    "bond {k} does not map group {k} to group {}",
                    k + 1
                )));
            }
        }
        Ok(DirectSystem { groups, bonds })
    }

    pub fn window(&self) -> usize {
        self.groups.len()
    }

    /// `A^stage`, 1-based.
    pub fn group(&self, stage: usize) -> &FgAbGroup {
        &self.groups[stage - 1]
    }

    /// `u_stage^{stage+1}`.
    pub fn bond(&self, stage: usize) -> &FgAbHom {
        &self.bonds[stage - 1]
    }

    /// `u_i^j` for `i ≤ j`.
    pub fn composite(&self, i: usize, j: usize) -> Result<FgAbHom> {
        if i == 0 || j > self.window() || i > j {
            return Err(Error::Input(format!(
                "bad stages {i}..{j} for window {}",
                self.window()
            )));
        }
        let mut c = FgAbHom::identity(self.group(i));
        for k in i..j {
            c = self.bond(k).compose(&c)?;
        }
        Ok(c)
    }

    /// Pushes a class forward to a later stage.
    pub fn push(&self, class: &ColimClass, to: usize) -> Result<ColimClass> {
        let element = self.composite(class.stage, to)?.apply(&class.element)?;
        Ok(ColimClass { stage: to, element })
    }

    /// Smallest `s < J` with every bond from `s` on an isomorphism.
    pub fn eventually_isomorphic_from(&self) -> Option<usize> {
        let mut from = None;
        for s in (1..self.window()).rev() {
            if self.bond(s).is_isomorphism() {
                from = Some(s);
            } else {
                break;
            }
        }
        from
    }
}

/// An element of the direct limit, named by a stage and an element there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimClass {
    pub stage: usize,
    pub element: Vec<BigInt>,
}

impl ColimClass {
    pub fn new(stage: usize, element: Vec<BigInt>) -> Self {
        ColimClass { stage, element }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColimEquality {
    /// The two classes agree once pushed to `stage`.
    Equal {
        stage: usize,
    },
    DistinctInWindow,
}

#[derive(Clone, Debug)]
pub struct ColimAnswer {
    pub equality: ColimEquality,
    /// Present only when all bonds from `from_stage` on are isomorphisms.
    pub stabilized: Option<(usize, FgAbGroup)>,
}

pub fn colim_query(system: &DirectSystem, a: &ColimClass, b: &ColimClass) -> Result<ColimAnswer> {
    let window = system.window();
    for c in [a, b] {
        if c.stage == 0 || c.stage > window {
            return Err(Error::Input(format!(
                "stage {} outside window 1..={window}",
                c.stage
            )));
        }
    }
    let start = a.stage.max(b.stage);
    let mut equality = ColimEquality::DistinctInWindow;
    for k in start..=window {
        let (x, y) = (system.push(a, k)?, system.push(b, k)?);
        if system.group(k).elements_equal(&x.element, &y.element)? {
            equality = ColimEquality::Equal { stage: k };
            break;
        }
    }
    let stabilized = system
        .eventually_isomorphic_from()
        .map(|s| (s, system.group(window).clone()));
    Ok(ColimAnswer {
        equality,
        stabilized,
    })
}

/// `(Hom(H_i, G), (p_i^{i+1})^*)` with the Hom groups kept for realizing classes.
#[derive(Clone, Debug)]
pub struct HomSystem {
    pub system: DirectSystem,
    pub hom_groups: Vec<HomGroup>,
}

impl HomSystem {
    /// The stage homomorphism `H_stage → G` named by a class.
    pub fn hom_of(&self, class: &ColimClass) -> Result<FgAbHom> {
        self.hom_groups[class.stage - 1].hom_of(&class.element)
    }
}

pub fn hom_system(tower: &InverseTower, g: &FgAbGroup) -> Result<HomSystem> {
    let hom_groups: Vec<HomGroup> = tower
        .groups()
        .iter()
        .map(|h| fgab::hom_group(h, g))
        .collect();
    let bonds = (1..tower.window())
        .map(|i| fgab::hom_map(tower.bond(i), &hom_groups[i - 1], &hom_groups[i]))
        .collect::<Result<Vec<_>>>()?;
    let system = DirectSystem::new(hom_groups.iter().map(|h| h.group.clone()).collect(), bonds)?;
    Ok(HomSystem { system, hom_groups })
}

#[derive(Clone, Debug)]
pub struct ExtSystem {
    pub system: DirectSystem,
    pub ext_groups: Vec<ExtGroup>,
}

pub fn ext_system(tower: &InverseTower, g: &FgAbGroup) -> Result<ExtSystem> {
    let ext_groups: Vec<ExtGroup> = tower
        .groups()
        .iter()
        .map(|h| fgab::ext_group(h, g))
        .collect();
    let bonds = (1..tower.window())
        .map(|i| fgab::ext_map(tower.bond(i), &ext_groups[i - 1], &ext_groups[i]))
        .collect::<Result<Vec<_>>>()?;
    let system = DirectSystem::new(ext_groups.iter().map(|e| e.group.clone()).collect(), bonds)?;
    Ok(ExtSystem { system, ext_groups })
}

type Evaluator = dyn Fn(&Thread) -> Result<Vec<BigInt>> + Send + Sync;

/// A homomorphism out of the limit given only by how it evaluates on threads.
#[derive(Clone)]
pub struct FormulaHom {
    name: String,
    target: FgAbGroup,
    eval: Arc<Evaluator>,
}

impl FormulaHom {
    pub fn new(
        name: impl Into<String>,
        target: FgAbGroup,
        eval: impl Fn(&Thread) -> Result<Vec<BigInt>> + Send + Sync + 'static,
    ) -> Self {
        FormulaHom {
            name: name.into(),
            target,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for FormulaHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormulaHom({} → {})", self.name, self.target)
    }
}

/// A homomorphism `lim H → G`.
#[derive(Clone, Debug)]
pub enum ThreadHom {
    /// `φ̄ ∘ p_stage`.
    Factored {
        stage: usize,
        hom: FgAbHom,
    },
    Formula(FormulaHom),
}

impl ThreadHom {
    pub fn target(&self) -> &FgAbGroup {
        match self {
            ThreadHom::Factored { hom, .. } => hom.cod(),
            ThreadHom::Formula(f) => &f.target,
        }
    }

    pub fn evaluate(&self, t: &Thread) -> Result<Vec<BigInt>> {
        match self {
            ThreadHom::Factored { stage, hom } => {
                if *stage > t.depth() {
                    return Err(Error::Input(format!(
                        "thread of depth {} is too short for stage {stage}",
                        t.depth()
                    )));
                }
                hom.apply(t.component(*stage))
            }
            ThreadHom::Formula(f) => (f.eval)(t),
        }
    }

    /// Kernel membership test.
    pub fn vanishes_on(&self, t: &Thread) -> Result<bool> {
        self.target().is_zero(&self.evaluate(t)?)
    }

    /// True when both agree on every thread of the list.
    pub fn agrees_with(&self, other: &ThreadHom, threads: &[Thread]) -> Result<bool> {
        for t in threads {
            if !self
                .target()
                .elements_equal(&self.evaluate(t)?, &other.evaluate(t)?)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `h ↦ h ∘ p_stage`.
pub fn nabla_apply(stage: usize, hom: &FgAbHom) -> ThreadHom {
    ThreadHom::Factored {
        stage,
        hom: hom.clone(),
    }
}

/// Serializable form of an inverse tower.
#[derive(Serialize, Deserialize)]
pub struct TowerJson {
    pub window: usize,
    pub groups: Vec<FgAbGroup>,
    pub bonds: Vec<IntMatrix>,
}

impl TowerJson {
    pub fn into_tower(self) -> Result<InverseTower> {
        if self.window != self.groups.len() {
            return Err(Error::dims(
                format!("{} groups", self.window),
                self.groups.len(),
            ));
        }
        InverseTower::from_matrices(self.groups, self.bonds)
    }

    pub fn from_tower(t: &InverseTower) -> Self {
        TowerJson {
            window: t.window(),
            groups: t.groups().to_vec(),
            bonds: t.bonds().iter().map(|b| b.matrix().clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::to_bigints;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn hawaii_is_ml_with_next_level() {
        let r = is_mittag_leffler(&InverseTower::hawaii(5)).unwrap();
        assert!(r.certified);
        for l in &r.levels {
            assert_eq!(l.status, LevelStatus::Stabilized { at: l.level + 1 });
        }
        assert_eq!(r.undecided_levels, vec![4, 5]);
    }

    #[test]
    fn solenoid_never_stabilizes() {
        let t = InverseTower::solenoid(2, 8);
        let r = is_mittag_leffler(&t).unwrap();
        assert!(!r.certified);
        for l in &r.levels {
            assert_eq!(l.status, LevelStatus::NotStabilizedInWindow);
            for (k, idx) in l.index_chain.iter().enumerate() {
                assert_eq!(idx, &Index::Finite(BigInt::from(2).pow(k as u32)));
            }
        }
    }

    #[test]
    fn constant_torsion_is_ml() {
        let r = is_mittag_leffler(&InverseTower::constant(&FgAbGroup::cyclic(4), 5)).unwrap();
        assert!(r.certified);
        assert_eq!(r.stabilization(1), Some(2));
    }

    #[test]
    fn window_two_never_certifies() {
        let r = is_mittag_leffler(&InverseTower::hawaii(2)).unwrap();
        assert!(!r.certified);
        assert!(is_mittag_leffler(&InverseTower::hawaii(1)).is_err());
    }

    #[test]
    fn stable_image_examples() {
        let h = InverseTower::hawaii(5);
        assert!(stable_image(&h, 3)
            .unwrap()
            .same_as(&Subgroup::whole(h.group(3)))
            .unwrap());
        assert!(matches!(
            stable_image(&InverseTower::solenoid(2, 8), 1),
            Err(Error::NotStabilizedInWindow {
                level: 1,
                window: 8
            })
        ));
        // ℤ ←×2− ℤ ←id− ℤ ←id− …
        let z1 = FgAbGroup::free(1);
        let mut bonds = vec![IntMatrix::from_i64_rows(&[vec![2]])];
        bonds.extend(std::iter::repeat_n(IntMatrix::identity(1), 3));
        let t = InverseTower::from_matrices(vec![z1; 5], bonds).unwrap();
        let s = stable_image(&t, 1).unwrap();
        assert!(s.contains(&[z(2)]).unwrap() && !s.contains(&[z(1)]).unwrap());
    }

    #[test]
    fn lim1_examples() {
        assert!(matches!(
            lim1_status(&InverseTower::hawaii(5)).unwrap(),
            Lim1Status::Lim1Vanishes { .. }
        ));
        assert!(matches!(
            lim1_status(&InverseTower::solenoid(2, 6)).unwrap(),
            Lim1Status::Unknown
        ));
        assert!(matches!(
            lim1_status(&InverseTower::constant(&FgAbGroup::free(1), 4)).unwrap(),
            Lim1Status::Lim1Vanishes { .. }
        ));
    }

    #[test]
    fn hom_system_examples() {
        let hs = hom_system(&InverseTower::solenoid(2, 4), &FgAbGroup::free(1)).unwrap();
        for s in 1..4 {
            let img = hs.system.bond(s).apply(&[z(1)]).unwrap();
            assert_eq!(
                img.iter()
                    .map(|x| x.magnitude().clone())
                    .collect::<Vec<_>>(),
                vec![2u32.into()]
            );
        }
        let hs = hom_system(&InverseTower::hawaii(4), &FgAbGroup::free(1)).unwrap();
        for s in 1..=4 {
            assert_eq!(hs.system.group(s).canonical_form().free_rank, s);
        }
        for s in 1..4 {
            assert!(hs.system.bond(s).is_injective());
        }
        let hs = hom_system(&InverseTower::hawaii(4), &FgAbGroup::trivial()).unwrap();
        assert!((1..=4).all(|s| hs.system.group(s).is_trivial()));
    }

    #[test]
    fn ext_system_examples() {
        let es = ext_system(
            &InverseTower::constant(&FgAbGroup::cyclic(2), 4),
            &FgAbGroup::free(1),
        )
        .unwrap();
        for s in 1..4 {
            assert_eq!(
                es.system.group(s).canonical_form().torsion,
                to_bigints(&[2])
            );
            assert!(es
                .system
                .bond(s)
                .same_map(&FgAbHom::identity(es.system.group(s)))
                .unwrap());
        }
        let es = ext_system(&InverseTower::hawaii(4), &FgAbGroup::cyclic(6)).unwrap();
        assert!((1..=4).all(|s| es.system.group(s).is_trivial()));
        let es = ext_system(
            &InverseTower::constant(&FgAbGroup::cyclic(4), 3),
            &FgAbGroup::cyclic(6),
        )
        .unwrap();
        assert_eq!(
            es.system.group(2).canonical_form().torsion,
            to_bigints(&[2])
        );
    }

    #[test]
    fn colim_query_examples() {
        let z1 = FgAbGroup::free(1);
        let twice =
            FgAbHom::new(z1.clone(), z1.clone(), IntMatrix::from_i64_rows(&[vec![2]])).unwrap();
        let d = DirectSystem::new(vec![z1.clone(); 5], vec![twice; 4]).unwrap();
        let a = colim_query(
            &d,
            &ColimClass::new(1, vec![z(1)]),
            &ColimClass::new(2, vec![z(2)]),
        )
        .unwrap();
        assert_eq!(a.equality, ColimEquality::Equal { stage: 2 });
        assert!(a.stabilized.is_none());
        let a = colim_query(
            &d,
            &ColimClass::new(1, vec![z(1)]),
            &ColimClass::new(1, vec![z(0)]),
        )
        .unwrap();
        assert_eq!(a.equality, ColimEquality::DistinctInWindow);

        let twice =
            FgAbHom::new(z1.clone(), z1.clone(), IntMatrix::from_i64_rows(&[vec![2]])).unwrap();
        let id = FgAbHom::identity(&z1);
        let d = DirectSystem::new(vec![z1.clone(); 4], vec![twice, id.clone(), id]).unwrap();
        let a = colim_query(
            &d,
            &ColimClass::new(1, vec![z(1)]),
            &ColimClass::new(3, vec![z(2)]),
        )
        .unwrap();
        let (from, g) = a.stabilized.unwrap();
        assert_eq!(from, 2);
        assert_eq!(g, z1);
    }

    #[test]
    fn nabla_apply_examples() {
        let t = InverseTower::hawaii(5);
        let first = FgAbHom::new(
            t.group(3).clone(),
            FgAbGroup::free(1),
            IntMatrix::from_i64_rows(&[vec![1, 0, 0]]),
        )
        .unwrap();
        let th = nabla_apply(3, &first);
        for (k, thread) in t.thread_generators().iter().enumerate() {
            let expect = if k == 0 { 1 } else { 0 };
            assert_eq!(th.evaluate(thread).unwrap(), vec![z(expect)]);
        }
        // pushing along the Hom system gives the same thread homomorphism
        let hs = hom_system(&t, &FgAbGroup::free(1)).unwrap();
        let class = ColimClass::new(3, hs.hom_groups[2].element_of(&first).unwrap());
        let pushed = hs.system.push(&class, 5).unwrap();
        let th5 = nabla_apply(5, &hs.hom_of(&pushed).unwrap());
        assert!(th.agrees_with(&th5, &t.thread_generators()).unwrap());

        let zero = nabla_apply(2, &FgAbHom::zero(t.group(2), &FgAbGroup::free(1)));
        assert!(t
            .thread_generators()
            .iter()
            .all(|x| zero.vanishes_on(x).unwrap()));
    }

    #[test]
    fn threads_are_validated() {
        let t = InverseTower::solenoid(2, 3);
        assert!(Thread::new(&t, vec![vec![z(4)], vec![z(2)], vec![z(1)]]).is_ok());
        assert!(Thread::new(&t, vec![vec![z(1)], vec![z(2)], vec![z(1)]]).is_err());
    }

    #[test]
    fn tower_json_round_trip() {
        let t = InverseTower::hawaii(3);
        let s = serde_json::to_string(&TowerJson::from_tower(&t)).unwrap();
        let back = serde_json::from_str::<TowerJson>(&s)
            .unwrap()
            .into_tower()
            .unwrap();
        assert_eq!(back.groups(), t.groups());
        let bad = r#"{"window":2,"groups":[{"ngens":1,"relations":{"rows":1,"cols":1,"data":["2"]}},{"ngens":1,"relations":{"rows":1,"cols":0,"data":[]}}],"bonds":[{"rows":1,"cols":1,"data":["1"]}]}"#;
        let parsed: TowerJson = serde_json::from_str(bad).unwrap();
        assert!(parsed.into_tower().is_ok());
        let ill = r#"{"window":2,"groups":[{"ngens":1,"relations":{"rows":1,"cols":0,"data":[]}},{"ngens":1,"relations":{"rows":1,"cols":1,"data":["2"]}}],"bonds":[{"rows":1,"cols":1,"data":["1"]}]}"#;
        let parsed: TowerJson = serde_json::from_str(ill).unwrap();
        assert!(matches!(parsed.into_tower(), Err(Error::IllDefined(_))));
    }
}
