//! Factoring homomorphisms out of inverse limits through finite stages.
//!
//! The pipeline mirrors the argument for towers of finitely generated abelian groups:
//! replace each level by its torsion-free quotient, saturate the stable images inside the
//! free levels, find where the saturated images settle, and use the kernel criterion
//! `ker p_m ⊆ ker φ` to locate the stage through which `φ` factors.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fgab::{self, FgAbGroup, FgAbHom, Index, Subgroup};
use crate::tower::{self, InverseTower, LevelStatus, Thread, ThreadHom};
use crate::zlinalg::{self, IntMatrix};

/// The tower of torsion-free quotients `A_i = H_i / T_i` with the quotient maps.
#[derive(Clone, Debug)]
pub struct TorsionFreeTower {
    pub tower: InverseTower,
    /// `quotients[i-1] : H_i → A_i`.
    pub quotients: Vec<FgAbHom>,
}

pub fn torsion_free_tower(t: &InverseTower) -> Result<TorsionFreeTower> {
    let splits: Vec<_> = t.groups().iter().map(fgab::torsion_and_free).collect();
    let bonds = (1..t.window())
        .map(|i| {
            // induced map on quotients: q_i ∘ p ∘ (section of q_{i+1})
            let upper = &splits[i];
            let lower = &splits[i - 1];
            let m = lower
                .quotient
                .compose(&t.bond(i).compose(&upper.section)?)?;
            Ok(FgAbHom::new_unchecked(
                upper.free.clone(),
                lower.free.clone(),
                m.matrix().clone(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let tower = InverseTower::new(splits.iter().map(|s| s.free.clone()).collect(), bonds)?;
    Ok(TorsionFreeTower {
        tower,
        quotients: splits.into_iter().map(|s| s.quotient).collect(),
    })
}

impl TorsionFreeTower {
    /// Checks `q_i ∘ p_i^{i+1} = p̄_i^{i+1} ∘ q_{i+1}` at every step.
    pub fn squares_commute(&self, original: &InverseTower) -> Result<bool> {
        for i in 1..original.window() {
            let left = self.quotients[i - 1].compose(original.bond(i))?;
            let right = self.tower.bond(i).compose(&self.quotients[i])?;
            if !left.same_map(&right)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Saturated stable images `H'_i ⊆ H_i` for the decided levels of a free tower.
#[derive(Clone, Debug)]
pub struct PurifiedTower {
    pub tower: InverseTower,
    /// `levels[i-1] = H'_i`.
    pub levels: Vec<Subgroup>,
    /// `stable[i-1] = p_i(lim H)` as seen in the window.
    pub stable: Vec<Subgroup>,
}

pub fn purified_tower(t: &InverseTower) -> Result<PurifiedTower> {
    if let Some(i) = (1..=t.window()).find(|&i| !t.group(i).is_torsion_free()) {
        return Err(Error::Precondition(format!("level {i} is not free")));
    }
    let report = tower::is_mittag_leffler(t)?;
    if report.levels.is_empty() {
        return Err(Error::NotStabilizedInWindow {
            level: 1,
            window: t.window(),
        });
    }
    let mut levels = Vec::new();
    let mut stable = Vec::new();
    for l in &report.levels {
        let LevelStatus::Stabilized { at } = l.status else {
            return Err(Error::NotStabilizedInWindow {
                level: l.level,
                window: t.window(),
            });
        };
        let s = l.chain[at - l.level].clone();
        levels.push(fgab::purify(t.group(l.level), &s)?);
        stable.push(s);
    }
    Ok(PurifiedTower {
        tower: t.clone(),
        levels,
        stable,
    })
}

impl PurifiedTower {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// `p_{n,k}(H'_n)` inside `H_k`.
    pub fn pushed_image(&self, n: usize, k: usize) -> Result<Subgroup> {
        let p = self.tower.composite(k, n)?;
        self.levels[n - 1].image_under(&p)
    }
}

/// Certificate that `p_{n,k}(H'_n)` equals the stable image at level `k`.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizationCertificate {
    pub level: usize,
    pub index: usize,
    #[serde(skip)]
    pub subgroup: Subgroup,
    /// `[H'_k : p_{j,k}(H'_j)]` for `j = k..=depth`; weakly increasing.
    pub index_chain: Vec<Index>,
    /// `[p_{j,k}(H'_j) : p_k(lim H)]`; weakly decreasing to 1.
    pub gap_chain: Vec<Index>,
}

pub fn stabilization_index(p: &PurifiedTower, k: usize) -> Result<StabilizationCertificate> {
    let depth = p.depth();
    if k == 0 || k > depth {
        return Err(Error::NotStabilizedInWindow {
            level: k,
            window: p.tower.window(),
        });
    }
    let stable = &p.stable[k - 1];
    let purified = &p.levels[k - 1];
    let mut index_chain = Vec::new();
    let mut gap_chain = Vec::new();
    let mut found = None;
    for n in k..=depth {
        let img = p.pushed_image(n, k)?;
        index_chain.push(fgab::index(&img, purified)?);
        gap_chain.push(fgab::index(stable, &img)?);
        if found.is_none() && n > k && img.same_as(stable)? {
            found = Some((n, img));
        }
    }
    let (index, subgroup) = found.ok_or(Error::NotStabilizedInWindow {
        level: k,
        window: p.tower.window(),
    })?;
    Ok(StabilizationCertificate {
        level: k,
        index,
        subgroup,
        index_chain,
        gap_chain,
    })
}

/// Outcome of testing `ker p_level ⊆ ker φ` on window threads.
#[derive(Clone, Debug)]
pub enum KernelCriterion {
    Holds,
    /// A thread `u` with `p_level(u) = 0` and `φ(u) ≠ 0`.
    Witness(Thread),
}

/// Generators of `ker p_level` among window threads.
pub fn kernel_threads(t: &InverseTower, level: usize) -> Result<Vec<Thread>> {
    let top = t.window();
    let p = t.composite(level, top)?;
    let gens = fgab::kic(&p).kernel.subgroup;
    let group = t.group(top);
    gens.generators()
        .columns()
        .filter(|g| !group.is_zero(g).unwrap_or(true))
        .map(|g| t.thread_from_top(&g))
        .collect()
}

pub fn kernel_criterion(
    t: &InverseTower,
    phi: &ThreadHom,
    level: usize,
) -> Result<KernelCriterion> {
    for u in kernel_threads(t, level)? {
        if !phi.vanishes_on(&u)? {
            return Ok(KernelCriterion::Witness(u));
        }
    }
    Ok(KernelCriterion::Holds)
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelWitness {
    pub level: usize,
    pub thread: Thread,
    #[serde(serialize_with = "ser_vec")]
    pub value: Vec<BigInt>,
}

fn ser_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .serialize(s)
}

/// `φ = hom ∘ p_stage` on window threads; `level ≤ stage` is where the kernel criterion first holds.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub level: usize,
    pub stage: usize,
    pub hom: FgAbHom,
    pub refuted: Vec<LevelWitness>,
}

#[derive(Clone, Debug)]
pub enum FactorOutcome {
    Factors(Factorization),
    /// No level below the window top satisfies the kernel criterion.
    NoFactorWitness {
        witnesses: Vec<LevelWitness>,
    },
}

/// Finds the smallest level through which `φ` factors on window threads.
///
/// The target must be torsion-free; for finitely generated targets that means free,
/// hence slender.
pub fn factor_hom(t: &InverseTower, phi: &ThreadHom, g: &FgAbGroup) -> Result<FactorOutcome> {
    if !g.is_torsion_free() {
        return Err(Error::Precondition(format!("target {g} has torsion")));
    }
    if phi.target() != g {
        return Err(Error::Input(
            "homomorphism target differs from the given group".into(),
        ));
    }
    let top = t.window();
    let last_level = match phi {
        ThreadHom::Factored { stage, .. } if *stage > top => {
            return Err(Error::Input(format!("stage {stage} beyond window {top}")));
        }
        ThreadHom::Factored { stage, .. } => *stage,
        ThreadHom::Formula(_) => top.saturating_sub(1),
    };
    let mut refuted = Vec::new();
    for level in 1..=last_level {
        let criterion = match phi {
            ThreadHom::Factored { stage, .. } if *stage == level => KernelCriterion::Holds,
            _ => kernel_criterion(t, phi, level)?,
        };
        match criterion {
            KernelCriterion::Witness(u) => {
                let value = phi.evaluate(&u)?;
                refuted.push(LevelWitness {
                    level,
                    thread: u,
                    value,
                });
            }
            KernelCriterion::Holds => {
                let (stage, hom) = extend_through_stage(t, phi, level)?;
                return Ok(FactorOutcome::Factors(Factorization {
                    level,
                    stage,
                    hom,
                    refuted,
                }));
            }
        }
    }
    Ok(FactorOutcome::NoFactorWitness { witnesses: refuted })
}

/// Given `ker p_m ⊆ ker φ`, builds `φ̄ : H_n → G` with `φ = φ̄ ∘ p_n`, where `n ≥ m` is the
/// first stage whose image in `H_m` already equals the window image `p_m^J(H_J)`.
fn extend_through_stage(t: &InverseTower, phi: &ThreadHom, m: usize) -> Result<(usize, FgAbHom)> {
    let top = t.window();
    let chain = t.image_chain(m)?;
    let window_image = &chain[top - m];
    let mut n = top;
    for j in m..=top {
        if chain[j - m].same_as(window_image)? {
            n = j;
            break;
        }
    }
    let down = t.composite(m, n)?;
    let g = phi.target();
    let columns = (0..t.group(n).ngens())
        .map(|k| {
            let y = down.apply(&t.group(n).generator(k))?;
            let x = window_image
                .coordinates(&y)?
                .ok_or_else(|| Error::IllDefined("stage image escapes the window image".into()))?;
            let value = phi.evaluate(&t.thread_from_top(&x)?)?;
            g.normalize(&value)
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = FgAbHom::new(
        t.group(n).clone(),
        g.clone(),
        IntMatrix::from_columns(g.ngens(), &columns)?,
    )?;
    let candidate = ThreadHom::Factored {
        stage: n,
        hom: hom.clone(),
    };
    if !candidate.agrees_with(phi, &t.thread_generators())? {
        return Err(Error::IllDefined(
            "evaluator is not additive on window threads".into(),
        ));
    }
    Ok((n, hom))
}

/// Status of one finding in a ∇ report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingStatus {
    Certified,
    Refuted,
    /// Window evidence for a refutation that only a deeper (infinite) window could settle.
    RefutedCandidate,
    UnknownInWindow,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub finding: String,
    pub status: FindingStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub depth: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NablaReport {
    pub findings: Vec<Finding>,
}

impl NablaReport {
    pub fn status(&self, finding: &str) -> Option<FindingStatus> {
        self.findings
            .iter()
            .find(|f| f.finding == finding)
            .map(|f| f.status)
    }
}

pub const NABLA_SURJECTIVE: &str = "nabla_surjective_onto_factored";
pub const NABLA_INJECTIVE_STABLE: &str = "nabla_injective_on_stable_images";
pub const NABLA_INJECTIVE_RAW: &str = "nabla_injective_on_raw_system";

/// Three findings about `∇ : colim Hom(H_i, G) → Hom(lim H, G)` in the window.
pub fn nabla_diagnostics(t: &InverseTower, g: &FgAbGroup) -> Result<NablaReport> {
    let depth = t.window();
    let surjective = Finding {
        finding: NABLA_SURJECTIVE.into(),
        status: FindingStatus::Certified,
        witness: None,
        depth,
    };
    if g.is_trivial() {
        let certified = |name: &str| Finding {
            finding: name.into(),
            status: FindingStatus::Certified,
            witness: None,
            depth,
        };
        return Ok(NablaReport {
            findings: vec![
                surjective,
                certified(NABLA_INJECTIVE_STABLE),
                certified(NABLA_INJECTIVE_RAW),
            ],
        });
    }
    let ml = tower::is_mittag_leffler(t)?;

    let stable_status = if ml.certified && stable_bonds_surjective(t, &ml)? {
        FindingStatus::Certified
    } else {
        FindingStatus::UnknownInWindow
    };
    let stable = Finding {
        finding: NABLA_INJECTIVE_STABLE.into(),
        status: stable_status,
        witness: None,
        depth,
    };

    let raw = if ml.certified {
        Finding {
            finding: NABLA_INJECTIVE_RAW.into(),
            status: FindingStatus::Certified,
            witness: None,
            depth,
        }
    } else {
        match raw_injectivity_candidate(t, g, &ml)? {
            Some(witness) => Finding {
                finding: NABLA_INJECTIVE_RAW.into(),
                status: FindingStatus::RefutedCandidate,
                witness: Some(witness),
                depth,
            },
            None => Finding {
                finding: NABLA_INJECTIVE_RAW.into(),
                status: FindingStatus::UnknownInWindow,
                witness: None,
                depth,
            },
        }
    };
    Ok(NablaReport {
        findings: vec![surjective, stable, raw],
    })
}

fn stable_bonds_surjective(t: &InverseTower, ml: &tower::MlReport) -> Result<bool> {
    let stable_of = |i: usize| -> Option<Subgroup> {
        let l = ml.level(i)?;
        match l.status {
            LevelStatus::Stabilized { at } => Some(l.chain[at - i].clone()),
            LevelStatus::NotStabilizedInWindow => None,
        }
    };
    for l in &ml.levels {
        let i = l.level;
        let (Some(lower), Some(upper)) = (stable_of(i), stable_of(i + 1)) else {
            continue;
        };
        if !upper.image_under(t.bond(i))?.same_as(&lower)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Looks for a stage hom whose values on window threads are divisible by a strictly
/// growing amount as the window deepens: the class is window-distinct from zero while
/// every genuine thread (compatible at all depths) would be sent to zero.
fn raw_injectivity_candidate(
    t: &InverseTower,
    g: &FgAbGroup,
    ml: &tower::MlReport,
) -> Result<Option<Value>> {
    let split = fgab::torsion_and_free(g);
    let hs = tower::hom_system(t, g)?;
    for l in &ml.levels {
        if matches!(l.status, LevelStatus::Stabilized { .. }) {
            continue;
        }
        let i = l.level;
        for (b, phi) in hs.hom_groups[i - 1].basis().iter().enumerate() {
            let contents = l
                .chain
                .iter()
                .map(|s| {
                    let values = split.quotient.matrix() * &(phi.matrix() * s.generators());
                    Ok(zlinalg::content(values.data()))
                })
                .collect::<Result<Vec<BigInt>>>()?;
            let strictly_growing = contents.windows(2).all(|w| {
                !w[1].is_zero()
                    && !w[0].is_zero()
                    && (&w[1] % &w[0]).is_zero()
                    && w[1].abs() > w[0].abs()
            });
            if strictly_growing && !contents.last().is_some_and(Zero::is_zero) {
                let profile: Vec<Value> = contents
                    .iter()
                    .enumerate()
                    .map(|(k, c)| json!({"depth": i + k, "divisibility": c.to_string()}))
                    .collect();
                return Ok(Some(json!({
                    "classes": [
                        {"stage": i, "hom_basis_element": b},
                        {"stage": i, "zero": true}
                    ],
                    "window_distinct": true,
                    "profile": profile,
                    "discrepancy_bound": contents.last().map(ToString::to_string),
                })));
            }
        }
    }
    Ok(None)
}

/// One round of the diagonal construction.
#[derive(Clone, Debug, Serialize)]
pub struct DiagonalRound {
    pub round: usize,
    /// `u` lies in `ker p_searched`.
    pub searched: usize,
    pub thread: Thread,
    /// Minimal level with `p_k(u) ≠ 0`.
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiagonalStop {
    /// `ker p_level` has no window thread outside `ker φ`: φ factors at `level`.
    FactorsAt { round: usize, level: usize },
    /// `ker p_level` is trivial on window threads.
    WindowExhausted { round: usize, level: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalWitness {
    pub rounds: Vec<DiagonalRound>,
    pub stop: DiagonalStop,
}

/// Greedy construction: `u₁ ∈ ker p₁ − ker φ`, `k₁` minimal with `p_{k₁}(u₁) ≠ 0`,
/// `u₂ ∈ ker p_{k₁} − ker φ`, … until the window runs out. The resulting `uᵢ` define the
/// abelian map `xᵢ ↦ uᵢ`.
pub fn diagonal_witness(t: &InverseTower, phi: &ThreadHom) -> Result<DiagonalWitness> {
    let mut rounds = Vec::new();
    let mut level = 1;
    loop {
        let round = rounds.len() + 1;
        let kernel = kernel_threads(t, level)?;
        if kernel.is_empty() {
            return Ok(DiagonalWitness {
                rounds,
                stop: DiagonalStop::WindowExhausted { round, level },
            });
        }
        let mut found = None;
        for u in kernel {
            if !phi.vanishes_on(&u)? {
                found = Some(u);
                break;
            }
        }
        let Some(u) = found else {
            return Ok(DiagonalWitness {
                rounds,
                stop: DiagonalStop::FactorsAt { round, level },
            });
        };
        let k = u
            .first_nonzero_level(t)?
            .ok_or_else(|| Error::IllDefined("nonzero value on the zero thread".into()))?;
        rounds.push(DiagonalRound {
            round,
            searched: level,
            thread: u,
            k,
        });
        level = k;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::FormulaHom;
    use crate::zlinalg::to_bigints;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn coordinate(t: &InverseTower, c: usize) -> ThreadHom {
        let top = t.window();
        ThreadHom::Formula(FormulaHom::new(
            format!("x{c}"),
            FgAbGroup::free(1),
            move |th: &Thread| Ok(vec![th.component(top)[c - 1].clone()]),
        ))
    }

    #[test]
    fn torsion_free_replacement() {
        let g = FgAbGroup::free(1).direct_sum(&FgAbGroup::cyclic(2));
        let t = InverseTower::constant(&g, 4);
        let tf = torsion_free_tower(&t).unwrap();
        assert!(tf.squares_commute(&t).unwrap());
        for i in 1..=4 {
            assert_eq!(tf.tower.group(i), &FgAbGroup::free(1));
        }
        for i in 1..4 {
            assert!(tf.tower.bond(i).is_isomorphism());
        }

        let t = InverseTower::hawaii(4);
        let tf = torsion_free_tower(&t).unwrap();
        assert!(tf.quotients.iter().all(FgAbHom::is_isomorphism));

        let t = InverseTower::constant(&FgAbGroup::cyclic(4), 3);
        let tf = torsion_free_tower(&t).unwrap();
        assert!(tf.tower.groups().iter().all(FgAbGroup::is_trivial));
    }

    #[test]
    fn purified_examples() {
        let h = InverseTower::hawaii(5);
        let p = purified_tower(&h).unwrap();
        for (i, lvl) in p.levels.iter().enumerate() {
            assert!(lvl.same_as(&Subgroup::whole(h.group(i + 1))).unwrap());
        }

        let z2 = FgAbGroup::free(2);
        let t =
            InverseTower::repeated(&z2, &IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 2]]), 6)
                .unwrap();
        assert!(matches!(
            purified_tower(&t),
            Err(Error::NotStabilizedInWindow { level: 1, .. })
        ));

        let t =
            InverseTower::repeated(&z2, &IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 0]]), 5)
                .unwrap();
        let p = purified_tower(&t).unwrap();
        let axis =
            Subgroup::new(z2.clone(), IntMatrix::from_i64_rows(&[vec![1], vec![0]])).unwrap();
        assert!(p.levels.iter().all(|l| l.same_as(&axis).unwrap()));

        let torsion = InverseTower::constant(&FgAbGroup::cyclic(2), 4);
        assert!(matches!(
            purified_tower(&torsion),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn purification_adds_finite_index() {
        // ℤ² ← ℤ² via diag(2, 0): stable image 2ℤ × 0, purified ℤ × 0.
        let z2 = FgAbGroup::free(2);
        let t =
            InverseTower::repeated(&z2, &IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 0]]), 4)
                .unwrap();
        // not ML: 2ℤ ⊋ 4ℤ ⊋ …
        assert!(purified_tower(&t).is_err());
        let mut bonds = vec![IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 0]])];
        bonds.extend(std::iter::repeat_n(IntMatrix::identity(2), 3));
        let t = InverseTower::from_matrices(vec![z2.clone(); 5], bonds).unwrap();
        let p = purified_tower(&t).unwrap();
        assert_eq!(
            fgab::index(&p.stable[0], &p.levels[0]).unwrap(),
            Index::Finite(z(2))
        );
        assert!(
            fgab::torsion_and_free(&fgab::kic(&p.levels[0].as_group().1).cokernel.group)
                .torsion
                .canonical_form()
                .is_trivial()
        );
    }

    #[test]
    fn stabilization_examples() {
        let p = purified_tower(&InverseTower::hawaii(5)).unwrap();
        assert_eq!(stabilization_index(&p, 2).unwrap().index, 3);

        let p = purified_tower(&InverseTower::constant(&FgAbGroup::free(1), 5)).unwrap();
        for k in 1..=2 {
            assert_eq!(stabilization_index(&p, k).unwrap().index, k + 1);
        }

        let z2 = FgAbGroup::free(2);
        let t =
            InverseTower::repeated(&z2, &IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 0]]), 5)
                .unwrap();
        let p = purified_tower(&t).unwrap();
        let c = stabilization_index(&p, 1).unwrap();
        assert_eq!(c.index, 2);
        assert!(c.gap_chain.iter().all(|g| g == &Index::Finite(z(1))));
    }

    #[test]
    fn factor_factored_form() {
        let t = InverseTower::hawaii(6);
        let sum3 = FgAbHom::new(
            t.group(3).clone(),
            FgAbGroup::free(1),
            IntMatrix::from_i64_rows(&[vec![1, 1, 1]]),
        )
        .unwrap();
        let phi = tower::nabla_apply(3, &sum3);
        let FactorOutcome::Factors(f) = factor_hom(&t, &phi, &FgAbGroup::free(1)).unwrap() else {
            panic!("expected a factorization");
        };
        assert_eq!((f.level, f.stage), (3, 3));
        assert!(f.hom.same_map(&sum3).unwrap());
        assert_eq!(f.refuted.len(), 2);
    }

    #[test]
    fn factor_coordinate_functional() {
        let t = InverseTower::hawaii(7);
        let phi = coordinate(&t, 5);
        let FactorOutcome::Factors(f) = factor_hom(&t, &phi, &FgAbGroup::free(1)).unwrap() else {
            panic!("expected a factorization");
        };
        assert_eq!(f.level, 5);
        let w4 = f.refuted.iter().find(|w| w.level == 4).unwrap();
        let mut e5 = vec![z(0); 7];
        e5[4] = z(1);
        assert_eq!(w4.thread, t.thread_from_top(&e5).unwrap());
        let th = ThreadHom::Factored {
            stage: f.stage,
            hom: f.hom.clone(),
        };
        assert!(th.agrees_with(&phi, &t.thread_generators()).unwrap());
    }

    #[test]
    fn factor_rejects_torsion_target() {
        let t = InverseTower::hawaii(4);
        let g = FgAbGroup::cyclic(8);
        let phi = tower::nabla_apply(1, &FgAbHom::zero(t.group(1), &g));
        assert!(matches!(
            factor_hom(&t, &phi, &g),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn factor_needs_deeper_stage_for_extension() {
        // ℤ ←×2− ℤ ←id− ℤ …: φ(t) = x₂ factors at level 1 with φ' = half on 2ℤ,
        // which does not extend to H₁, so the factoring stage is 2.
        let z1 = FgAbGroup::free(1);
        let mut bonds = vec![IntMatrix::from_i64_rows(&[vec![2]])];
        bonds.extend(std::iter::repeat_n(IntMatrix::identity(1), 3));
        let t = InverseTower::from_matrices(vec![z1.clone(); 5], bonds).unwrap();
        let phi = ThreadHom::Formula(FormulaHom::new("x2", z1.clone(), |th: &Thread| {
            Ok(th.component(2).to_vec())
        }));
        let FactorOutcome::Factors(f) = factor_hom(&t, &phi, &z1).unwrap() else {
            panic!("expected a factorization");
        };
        assert_eq!((f.level, f.stage), (1, 2));
    }

    #[test]
    fn formula_with_no_factor_in_window() {
        // φ(t) = sum of top coordinates: ker p_i always has e_J with φ ≠ 0.
        let t = InverseTower::hawaii(5);
        let phi = ThreadHom::Formula(FormulaHom::new("sum", FgAbGroup::free(1), |th: &Thread| {
            Ok(vec![th.component(5).iter().sum()])
        }));
        let FactorOutcome::NoFactorWitness { witnesses } =
            factor_hom(&t, &phi, &FgAbGroup::free(1)).unwrap()
        else {
            panic!("expected no factorization");
        };
        assert_eq!(witnesses.len(), 4);
        for w in &witnesses {
            assert!(t
                .group(w.level)
                .is_zero(w.thread.component(w.level))
                .unwrap());
            assert!(!w.value.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn nabla_hawaii_all_certified() {
        let r = nabla_diagnostics(&InverseTower::hawaii(6), &FgAbGroup::free(1)).unwrap();
        assert!(r
            .findings
            .iter()
            .all(|f| f.status == FindingStatus::Certified));
    }

    #[test]
    fn nabla_solenoid_flags_raw_injectivity() {
        let r = nabla_diagnostics(&InverseTower::solenoid(2, 6), &FgAbGroup::free(1)).unwrap();
        assert_eq!(r.status(NABLA_SURJECTIVE), Some(FindingStatus::Certified));
        assert_eq!(
            r.status(NABLA_INJECTIVE_STABLE),
            Some(FindingStatus::UnknownInWindow)
        );
        let raw = r
            .findings
            .iter()
            .find(|f| f.finding == NABLA_INJECTIVE_RAW)
            .unwrap();
        assert_eq!(raw.status, FindingStatus::RefutedCandidate);
        let w = raw.witness.as_ref().unwrap();
        assert_eq!(w["discrepancy_bound"], json!("32"));
    }

    #[test]
    fn nabla_trivial_target() {
        let r = nabla_diagnostics(&InverseTower::solenoid(3, 4), &FgAbGroup::trivial()).unwrap();
        assert!(r
            .findings
            .iter()
            .all(|f| f.status == FindingStatus::Certified));
    }

    #[test]
    fn diagonal_coordinate_functional() {
        let t = InverseTower::hawaii(7);
        let d = diagonal_witness(&t, &coordinate(&t, 5)).unwrap();
        assert_eq!(d.rounds.len(), 1);
        assert_eq!(d.rounds[0].k, 5);
        assert_eq!(d.stop, DiagonalStop::FactorsAt { round: 2, level: 5 });
    }

    #[test]
    fn diagonal_already_factored() {
        let t = InverseTower::hawaii(5);
        let phi = tower::nabla_apply(
            1,
            &FgAbHom::new(
                t.group(1).clone(),
                FgAbGroup::free(1),
                IntMatrix::identity(1),
            )
            .unwrap(),
        );
        let d = diagonal_witness(&t, &phi).unwrap();
        assert!(d.rounds.is_empty());
        assert_eq!(d.stop, DiagonalStop::FactorsAt { round: 1, level: 1 });
    }

    #[test]
    fn kernel_threads_of_projection_tower_are_unit_vectors() {
        let t = InverseTower::hawaii(4);
        let ks = kernel_threads(&t, 2).unwrap();
        let tops: Vec<Vec<BigInt>> = ks.iter().map(|k| k.component(4).to_vec()).collect();
        assert_eq!(
            tops,
            vec![to_bigints(&[0, 0, 1, 0]), to_bigints(&[0, 0, 0, 1])]
        );
    }
}
