//! Finitely generated abelian groups given by presentations.
//!
//! A group is `ℤ^ngens / (column lattice of relations)`. Elements are integer vectors
//! on the generators; two vectors name the same element when their difference lies in
//! the relation lattice. Every group carries its Smith data from construction, which
//! gives the canonical form and a constant-time zero test in canonical coordinates.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::zlinalg::{self, IntMatrix, Smith};

/// Rank and invariant factors `d₁ | d₂ | …` (each > 1) of a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CanonicalForm {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            free_rank: usize,
            torsion: Vec<String>,
            display: String,
        }
        Repr {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(ToString::to_string).collect(),
            display: self.to_string(),
        }
        .serialize(s)
    }
}

#[derive(Debug)]
struct GroupSmith {
    u: IntMatrix,
    u_inv: IntMatrix,
    /// One modulus per canonical coordinate; zero means a free coordinate.
    moduli: Vec<BigInt>,
    canonical: CanonicalForm,
}

impl GroupSmith {
    fn new(ngens: usize, relations: &IntMatrix) -> Self {
        let Smith {
            d, u, u_inv, rank, ..
        } = zlinalg::snf(relations);
        let mut moduli = vec![BigInt::zero(); ngens];
        for (i, m) in moduli.iter_mut().enumerate().take(rank) {
            *m = d.get(i, i).clone();
        }
        let torsion = moduli[..rank]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        GroupSmith {
            u,
            u_inv,
            moduli,
            canonical: CanonicalForm {
                free_rank: ngens - rank,
                torsion,
            },
        }
    }

    fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        let torsion = (0..self.moduli.len()).filter(|&i| self.moduli[i] > BigInt::one());
        let free = (0..self.moduli.len()).filter(|&i| self.moduli[i].is_zero());
        torsion.chain(free)
    }
}

/// A finitely generated abelian group `ℤ^ngens / ⟨relations⟩`.
#[derive(Clone)]
pub struct FgAbGroup {
    ngens: usize,
    relations: IntMatrix,
    smith: Arc<GroupSmith>,
}

impl FgAbGroup {
    pub fn new(ngens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != ngens {
            return Err(Error::dims(
                format!("relations with {ngens} rows"),
                format!("{} rows", relations.rows()),
            ));
        }
        let smith = Arc::new(GroupSmith::new(ngens, &relations));
        Ok(FgAbGroup {
            ngens,
            relations,
            smith,
        })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("shape is consistent")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `ℤ/m`; `m = 0` gives `ℤ`.
    pub fn cyclic(m: impl Into<BigInt>) -> Self {
        let m: BigInt = m.into();
        if m.is_zero() {
            return Self::free(1);
        }
        Self::new(1, IntMatrix::diagonal(1, 1, &[m])).expect("shape is consistent")
    }

    /// `ℤ^free_rank ⊕ ⊕ ℤ/dᵢ`, torsion generators first.
    pub fn from_invariants(free_rank: usize, torsion: &[BigInt]) -> Self {
        let n = torsion.len() + free_rank;
        Self::new(n, IntMatrix::diagonal(n, torsion.len(), torsion)).expect("shape is consistent")
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn canonical_form(&self) -> &CanonicalForm {
        &self.smith.canonical
    }

    pub fn is_trivial(&self) -> bool {
        self.smith.canonical.is_trivial()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.smith.canonical.torsion.is_empty()
    }

    pub fn isomorphic(&self, other: &FgAbGroup) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::new(
            self.ngens + other.ngens,
            self.relations.direct_sum(&other.relations),
        )
        .expect("shape is consistent")
    }

    /// `G^k`, with element `j` of the power occupying coordinates `j·ngens .. (j+1)·ngens`.
    pub fn power(&self, k: usize) -> FgAbGroup {
        FgAbGroup::new(self.ngens * k, self.relations.block_diagonal(k))
            .expect("shape is consistent")
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ngens]
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut e = self.zero_element();
        e[i] = BigInt::one();
        e
    }

    fn check_len(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.ngens {
            return Err(Error::dims(
                format!("element with {} coordinates", self.ngens),
                x.len(),
            ));
        }
        Ok(())
    }

    /// Coordinates with respect to the Smith basis, reduced modulo each invariant factor.
    pub fn canonical_coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_len(x)?;
        let y = self.smith.u.mul_vec(x);
        Ok(y.into_iter()
            .zip(&self.smith.moduli)
            .map(|(c, m)| if m.is_zero() { c } else { c.mod_floor(m) })
            .collect())
    }

    pub fn is_zero(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.canonical_coordinates(x)?.iter().all(Zero::is_zero))
    }

    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool> {
        self.check_len(a)?;
        self.check_len(b)?;
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero(&diff)
    }

    /// A canonical representative: equal elements give identical vectors.
    pub fn normalize(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self.canonical_coordinates(x)?;
        Ok(self.smith.u_inv.mul_vec(&y))
    }

    /// Order of an element, `None` for elements of infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Result<Option<BigInt>> {
        let y = self.canonical_coordinates(x)?;
        let mut order = BigInt::one();
        for (c, m) in y.iter().zip(&self.smith.moduli) {
            if c.is_zero() {
                continue;
            }
            if m.is_zero() {
                return Ok(None);
            }
            order = order.lcm(&(m / c.gcd(m)));
        }
        Ok(Some(order))
    }

    /// The canonical presentation `⊕ ℤ/dᵢ ⊕ ℤ^r` with isomorphisms in both directions.
    pub fn smith_presentation(&self) -> SmithPresentation {
        let idx: Vec<usize> = self.smith.nontrivial().collect();
        let canon = FgAbGroup::from_invariants(
            self.smith.canonical.free_rank,
            &self.smith.canonical.torsion,
        );
        let to = FgAbHom::new_unchecked(
            self.clone(),
            canon.clone(),
            self.smith.u.select_rows(idx.iter().copied()),
        );
        let from = FgAbHom::new_unchecked(
            canon.clone(),
            self.clone(),
            self.smith.u_inv.select_columns(idx),
        );
        SmithPresentation {
            group: canon,
            to_canonical: to,
            from_canonical: from,
        }
    }
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ngens == other.ngens && self.relations == other.relations
    }
}

impl Eq for FgAbGroup {}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FgAbGroup({} gens ≅ {})",
            self.ngens, self.smith.canonical
        )
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.smith.canonical)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    ngens: usize,
    relations: IntMatrix,
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson {
            ngens: self.ngens,
            relations: self.relations.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GroupJson::deserialize(d)?;
        FgAbGroup::new(g.ngens, g.relations).map_err(D::Error::custom)
    }
}

/// Canonical presentation of a group together with the two isomorphisms.
#[derive(Clone, Debug)]
pub struct SmithPresentation {
    pub group: FgAbGroup,
    pub to_canonical: FgAbHom,
    pub from_canonical: FgAbHom,
}

/// A homomorphism given by the images of the domain generators (as matrix columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbHom {
    dom: FgAbGroup,
    cod: FgAbGroup,
    matrix: IntMatrix,
}

impl FgAbHom {
    /// Checks that every domain relation is sent to zero.
    pub fn new(dom: FgAbGroup, cod: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != cod.ngens() || matrix.cols() != dom.ngens() {
            return Err(Error::dims(
                format!("{}x{} matrix", cod.ngens(), dom.ngens()),
                format!("{}x{}", matrix.rows(), matrix.cols()),
            ));
        }
        let images = &matrix * dom.relations();
        for (j, col) in images.columns().enumerate() {
            if !cod.is_zero(&col)? {
                return Err(Error::IllDefined(format!(
                    "relation {j} of the domain is not sent to zero"
                )));
            }
        }
        Ok(FgAbHom { dom, cod, matrix })
    }

    pub(crate) fn new_unchecked(dom: FgAbGroup, cod: FgAbGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (cod.ngens(), dom.ngens()));
        FgAbHom { dom, cod, matrix }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.ngens()))
    }

    pub fn zero(dom: &FgAbGroup, cod: &FgAbGroup) -> Self {
        Self::new_unchecked(
            dom.clone(),
            cod.clone(),
            IntMatrix::zeros(cod.ngens(), dom.ngens()),
        )
    }

    pub fn dom(&self) -> &FgAbGroup {
        &self.dom
    }

    pub fn cod(&self) -> &FgAbGroup {
        &self.cod
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.dom.check_len(x)?;
        Ok(self.matrix.mul_vec(x))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FgAbHom) -> Result<FgAbHom> {
        if inner.cod != self.dom {
            return Err(Error::dims(
                format!("inner codomain {:?}", self.dom),
                format!("{:?}", inner.cod),
            ));
        }
        Ok(Self::new_unchecked(
            inner.dom.clone(),
            self.cod.clone(),
            &self.matrix * &inner.matrix,
        ))
    }

    /// Equality as homomorphisms: generator images agree in the codomain.
    pub fn same_map(&self, other: &FgAbHom) -> Result<bool> {
        if self.dom != other.dom || self.cod != other.cod {
            return Ok(false);
        }
        let diff = self.matrix.sub(&other.matrix)?;
        for col in diff.columns() {
            if !self.cod.is_zero(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.matrix
            .columns()
            .try_fold(true, |acc, c| Ok(acc && self.cod.is_zero(&c)?))
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::new_unchecked(self.cod.clone(), self.matrix.clone())
    }

    /// Kernel, image and cokernel.
    pub fn kic(&self) -> Kic {
        kic(self)
    }

    pub fn is_injective(&self) -> bool {
        self.kic().kernel.group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.kic().cokernel.group.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        let k = self.kic();
        k.kernel.group.is_trivial() && k.cokernel.group.is_trivial()
    }
}

#[derive(Serialize, Deserialize)]
struct HomJson {
    dom: FgAbGroup,
    cod: FgAbGroup,
    matrix: IntMatrix,
}

impl Serialize for FgAbHom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HomJson {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            matrix: self.matrix.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgAbHom {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let h = HomJson::deserialize(d)?;
        FgAbHom::new(h.dom, h.cod, h.matrix).map_err(D::Error::custom)
    }
}

/// Subgroup of an ambient group, generated by the columns of `generators`.
#[derive(Clone)]
pub struct Subgroup {
    ambient: FgAbGroup,
    generators: IntMatrix,
    lattice: Arc<OnceLock<Smith>>,
}

impl Subgroup {
    pub fn new(ambient: FgAbGroup, generators: IntMatrix) -> Result<Self> {
        if generators.rows() != ambient.ngens() {
            return Err(Error::dims(
                format!("generators with {} rows", ambient.ngens()),
                format!("{} rows", generators.rows()),
            ));
        }
        Ok(Self::new_unchecked(ambient, generators))
    }

    pub(crate) fn new_unchecked(ambient: FgAbGroup, generators: IntMatrix) -> Self {
        Subgroup {
            ambient,
            generators,
            lattice: Arc::new(OnceLock::new()),
        }
    }

    pub fn whole(ambient: &FgAbGroup) -> Self {
        Self::new_unchecked(ambient.clone(), IntMatrix::identity(ambient.ngens()))
    }

    pub fn zero(ambient: &FgAbGroup) -> Self {
        Self::new_unchecked(ambient.clone(), IntMatrix::zeros(ambient.ngens(), 0))
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    fn full_lattice(&self) -> &Smith {
        self.lattice.get_or_init(|| {
            let m = self
                .generators
                .hconcat(self.ambient.relations())
                .expect("row counts agree");
            zlinalg::snf(&m)
        })
    }

    /// Coefficients `c` with `generators·c = x` modulo the ambient relations.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        self.ambient.check_len(x)?;
        Ok(zlinalg::solve_with(self.full_lattice(), x).map(|mut c| {
            c.truncate(self.generators.cols());
            c
        }))
    }

    pub fn contains(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(x)?.is_some())
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool> {
        if other.ambient != self.ambient {
            return Err(Error::Input(
                "subgroups live in different ambient groups".into(),
            ));
        }
        for g in other.generators.columns() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual membership of generators.
    pub fn same_as(&self, other: &Subgroup) -> Result<bool> {
        Ok(self.contains_subgroup(other)? && other.contains_subgroup(self)?)
    }

    /// The subgroup as an abstract group on its generators, with the inclusion map.
    pub fn as_group(&self) -> (FgAbGroup, FgAbHom) {
        let k = self.generators.cols();
        let m = self
            .generators
            .hconcat(self.ambient.relations())
            .expect("row counts agree");
        let syz = zlinalg::kernel_basis(&m).select_rows(0..k);
        let group = FgAbGroup::new(k, syz).expect("shape is consistent");
        let incl =
            FgAbHom::new_unchecked(group.clone(), self.ambient.clone(), self.generators.clone());
        (group, incl)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.as_group().0.canonical_form().clone()
    }

    /// Image under a homomorphism out of the ambient group.
    pub fn image_under(&self, f: &FgAbHom) -> Result<Subgroup> {
        if f.dom() != &self.ambient {
            return Err(Error::Input(
                "homomorphism domain is not the ambient group".into(),
            ));
        }
        Ok(Subgroup::new_unchecked(
            f.cod().clone(),
            f.matrix() * &self.generators,
        ))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(in {:?}, gens {:?})",
            self.ambient, self.generators
        )
    }
}

/// `S/T` for subgroups `T ⊆ S` of the same ambient group, presented on `S`'s generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FgAbGroup,
    numerator: Subgroup,
    lattice: Arc<Smith>,
}

impl Subquotient {
    pub fn new(numerator: &Subgroup, denominator: &Subgroup) -> Result<Self> {
        if !numerator.contains_subgroup(denominator)? {
            return Err(Error::Input(
                "denominator is not contained in numerator".into(),
            ));
        }
        let k = numerator.generators.cols();
        let m = numerator
            .generators
            .hconcat(&denominator.generators)?
            .hconcat(numerator.ambient.relations())?;
        let syz = zlinalg::kernel_basis(&m).select_rows(0..k);
        let group = FgAbGroup::new(k, syz)?;
        Ok(Subquotient {
            group,
            numerator: numerator.clone(),
            lattice: Arc::new(zlinalg::snf(&m)),
        })
    }

    /// Class of an ambient element lying in the numerator, on the numerator's generators.
    pub fn class_of(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.numerator.ambient.check_len(x)?;
        let mut c = zlinalg::solve_with(&self.lattice, x)
            .ok_or_else(|| Error::Input("element is not in the numerator subgroup".into()))?;
        c.truncate(self.numerator.generators.cols());
        Ok(c)
    }

    /// Ambient representative of a class.
    pub fn representative(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.numerator.generators.mul_vec(c)
    }
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub subgroup: Subgroup,
    pub group: FgAbGroup,
    pub inclusion: FgAbHom,
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FgAbGroup,
    pub projection: FgAbHom,
}

/// Kernel, image, cokernel of a homomorphism.
#[derive(Clone, Debug)]
pub struct Kic {
    pub kernel: Kernel,
    pub image: Subgroup,
    pub cokernel: Cokernel,
}

pub fn kic(f: &FgAbHom) -> Kic {
    let n = f.dom().ngens();
    let m = f
        .matrix()
        .hconcat(f.cod().relations())
        .expect("row counts agree");
    let gens = zlinalg::kernel_basis(&m).select_rows(0..n);
    let subgroup = Subgroup::new_unchecked(f.dom().clone(), gens);
    let (group, inclusion) = subgroup.as_group();
    let coker = FgAbGroup::new(
        f.cod().ngens(),
        f.cod()
            .relations()
            .hconcat(f.matrix())
            .expect("row counts agree"),
    )
    .expect("shape is consistent");
    let projection = FgAbHom::new_unchecked(
        f.cod().clone(),
        coker.clone(),
        IntMatrix::identity(f.cod().ngens()),
    );
    Kic {
        kernel: Kernel {
            subgroup,
            group,
            inclusion,
        },
        image: f.image(),
        cokernel: Cokernel {
            group: coker,
            projection,
        },
    }
}

/// `Hom(A, B)` as a group, with each canonical generator realized as a homomorphism.
///
/// Internally `Hom(A, B) ⊆ B^n` (n = generators of `A`) is the kernel of
/// `X ↦ X·R_A`; homomorphism matrices are flattened column by column.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub dom: FgAbGroup,
    pub cod: FgAbGroup,
    pub group: FgAbGroup,
    inside: Subgroup,
    kernel_to_canon: FgAbHom,
    kernel_from_canon: FgAbHom,
}

fn flatten(m: &IntMatrix) -> Vec<BigInt> {
    m.columns().flatten().collect()
}

fn unflatten(rows: usize, cols: usize, v: &[BigInt]) -> IntMatrix {
    let columns: Vec<Vec<BigInt>> = v
        .chunks(rows.max(1))
        .take(cols)
        .map(<[BigInt]>::to_vec)
        .collect();
    if rows == 0 {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_columns(rows, &columns).expect("chunk lengths agree")
}

pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> HomGroup {
    let (n, m) = (a.ngens(), b.ngens());
    let raw = b.power(n);
    let target = b.power(a.relations().cols());
    let psi = FgAbHom::new_unchecked(raw, target, a.relations().right_action(m));
    let kernel = kic(&psi).kernel;
    let pres = kernel.group.smith_presentation();
    HomGroup {
        dom: a.clone(),
        cod: b.clone(),
        group: pres.group,
        inside: kernel.subgroup,
        kernel_to_canon: pres.to_canonical,
        kernel_from_canon: pres.from_canonical,
    }
}

impl HomGroup {
    /// The homomorphism named by an element of `group`.
    pub fn hom_of(&self, element: &[BigInt]) -> Result<FgAbHom> {
        let k = self.kernel_from_canon.apply(element)?;
        let v = self.inside.generators().mul_vec(&k);
        Ok(FgAbHom::new_unchecked(
            self.dom.clone(),
            self.cod.clone(),
            unflatten(self.cod.ngens(), self.dom.ngens(), &v),
        ))
    }

    /// Homomorphisms for the canonical generators of `group`.
    pub fn basis(&self) -> Vec<FgAbHom> {
        (0..self.group.ngens())
            .map(|i| {
                self.hom_of(&self.group.generator(i))
                    .expect("generator has the right length")
            })
            .collect()
    }

    /// Canonical coordinates of a homomorphism `dom → cod`.
    pub fn element_of(&self, f: &FgAbHom) -> Result<Vec<BigInt>> {
        if f.dom() != &self.dom || f.cod() != &self.cod {
            return Err(Error::Input(
                "homomorphism has the wrong domain or codomain".into(),
            ));
        }
        let c = self
            .inside
            .coordinates(&flatten(f.matrix()))?
            .ok_or_else(|| Error::IllDefined("homomorphism is not in the Hom group".into()))?;
        self.group.normalize(&self.kernel_to_canon.apply(&c)?)
    }

    /// The bilinear pairing `Hom(A,B) × A → B`.
    pub fn evaluate(&self, element: &[BigInt], x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.hom_of(element)?.apply(x)
    }
}

/// Precomposition `Hom(A, B) → Hom(A', B)`, `g ↦ g ∘ f` for `f: A' → A`.
pub fn hom_map(f: &FgAbHom, source: &HomGroup, target: &HomGroup) -> Result<FgAbHom> {
    if f.cod() != &source.dom || f.dom() != &target.dom || source.cod != target.cod {
        return Err(Error::Input(
            "Hom groups do not match the homomorphism".into(),
        ));
    }
    let columns = source
        .basis()
        .iter()
        .map(|g| target.element_of(&g.compose(f)?))
        .collect::<Result<Vec<_>>>()?;
    let matrix = IntMatrix::from_columns(target.group.ngens(), &columns)?;
    Ok(FgAbHom::new_unchecked(
        source.group.clone(),
        target.group.clone(),
        matrix,
    ))
}

/// `Ext(A, B)` from the resolution `0 → ℤ^s → ℤ^n → A → 0`.
///
/// With `R` the injective relation matrix (`n × s`), `Ext(A,B) = B^s / {X·R : X ∈ B^n}`.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub dom: FgAbGroup,
    pub cod: FgAbGroup,
    pub group: FgAbGroup,
    resolution: IntMatrix,
    raw: SmithPresentation,
}

pub fn ext_group(a: &FgAbGroup, b: &FgAbGroup) -> ExtGroup {
    let r = a.relations();
    let resolution = if zlinalg::rank(r) == r.cols() {
        r.clone()
    } else {
        zlinalg::image_basis(r)
    };
    let (m, s) = (b.ngens(), resolution.cols());
    let rels = b
        .relations()
        .block_diagonal(s)
        .hconcat(&resolution.right_action(m))
        .expect("row counts agree");
    let raw = FgAbGroup::new(m * s, rels)
        .expect("shape is consistent")
        .smith_presentation();
    ExtGroup {
        dom: a.clone(),
        cod: b.clone(),
        group: raw.group.clone(),
        resolution,
        raw,
    }
}

impl ExtGroup {
    /// Injective relation matrix used for the resolution (`n × s`).
    pub fn resolution(&self) -> &IntMatrix {
        &self.resolution
    }

    /// Class of a homomorphism `ℤ^s → B`, given as an `m × s` matrix.
    pub fn class_of_cocycle(&self, x: &IntMatrix) -> Result<Vec<BigInt>> {
        if x.rows() != self.cod.ngens() || x.cols() != self.resolution.cols() {
            return Err(Error::dims(
                format!("{}x{} matrix", self.cod.ngens(), self.resolution.cols()),
                format!("{}x{}", x.rows(), x.cols()),
            ));
        }
        self.group
            .normalize(&self.raw.to_canonical.apply(&flatten(x))?)
    }

    /// A cocycle `ℤ^s → B` (as an `m × s` matrix) representing a class.
    pub fn cocycle_of(&self, element: &[BigInt]) -> Result<IntMatrix> {
        let v = self.raw.from_canonical.apply(element)?;
        Ok(unflatten(self.cod.ngens(), self.resolution.cols(), &v))
    }
}

/// `Ext(f, B): Ext(A, B) → Ext(A', B)` for `f: A' → A`.
pub fn ext_map(f: &FgAbHom, source: &ExtGroup, target: &ExtGroup) -> Result<FgAbHom> {
    if f.cod() != &source.dom || f.dom() != &target.dom || source.cod != target.cod {
        return Err(Error::Input(
            "Ext groups do not match the homomorphism".into(),
        ));
    }
    // Lift f to the relation modules: R_A · F1 = F · R_A'.
    let pushed = f.matrix() * &target.resolution;
    let s = zlinalg::snf(&source.resolution);
    let lifted = pushed
        .columns()
        .map(|c| {
            zlinalg::solve_with(&s, &c).ok_or_else(|| {
                Error::IllDefined("relation is not sent into the relation lattice".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let f1 = IntMatrix::from_columns(source.resolution.cols(), &lifted)?;
    let columns = (0..source.group.ngens())
        .map(|i| {
            let x = source.cocycle_of(&source.group.generator(i))?;
            target.class_of_cocycle(&(&x * &f1))
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = IntMatrix::from_columns(target.group.ngens(), &columns)?;
    Ok(FgAbHom::new_unchecked(
        source.group.clone(),
        target.group.clone(),
        matrix,
    ))
}

/// Torsion subgroup and torsion-free quotient of a group.
#[derive(Clone, Debug)]
pub struct TorsionSplit {
    pub torsion: Subgroup,
    pub free: FgAbGroup,
    pub quotient: FgAbHom,
    /// A right inverse of `quotient`.
    pub section: FgAbHom,
}

pub fn torsion_and_free(g: &FgAbGroup) -> TorsionSplit {
    let sm = &g.smith;
    let torsion_idx: Vec<usize> = (0..g.ngens)
        .filter(|&i| sm.moduli[i] > BigInt::one())
        .collect();
    let free_idx: Vec<usize> = (0..g.ngens).filter(|&i| sm.moduli[i].is_zero()).collect();
    let torsion = Subgroup::new_unchecked(g.clone(), sm.u_inv.select_columns(torsion_idx));
    let free = FgAbGroup::free(free_idx.len());
    let quotient = FgAbHom::new_unchecked(
        g.clone(),
        free.clone(),
        sm.u.select_rows(free_idx.iter().copied()),
    );
    let section =
        FgAbHom::new_unchecked(free.clone(), g.clone(), sm.u_inv.select_columns(free_idx));
    TorsionSplit {
        torsion,
        free,
        quotient,
        section,
    }
}

/// Saturation of `B` in a free group `H`: the largest `C ⊇ B` with `C/B` finite.
///
/// `H/C` is torsion-free, so `C` is a direct summand.
pub fn purify(h: &FgAbGroup, b: &Subgroup) -> Result<Subgroup> {
    if !h.is_torsion_free() {
        return Err(Error::Precondition(format!(
            "ambient group {h} is not free"
        )));
    }
    if b.ambient() != h {
        return Err(Error::Input(
            "subgroup does not live in the given group".into(),
        ));
    }
    let split = torsion_and_free(h);
    let coords = split.quotient.matrix() * b.generators();
    let s = zlinalg::snf(&coords);
    let saturated = s.u_inv.select_columns(0..s.rank);
    let gens = zlinalg::hermite_columns(&(split.section.matrix() * &saturated));
    Ok(Subgroup::new_unchecked(h.clone(), gens))
}

/// Index `[A : B]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Index::Finite(n) => s.serialize_str(&n.to_string()),
            Index::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

pub fn index(b: &Subgroup, a: &Subgroup) -> Result<Index> {
    if !a.contains_subgroup(b)? {
        return Err(Error::Input(
            "subgroup is not contained in the larger one".into(),
        ));
    }
    let q = Subquotient::new(a, b)?;
    Ok(match q.group.canonical_form().order() {
        Some(n) => Index::Finite(n),
        None => Index::Infinite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::to_bigints;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn cf(rank: usize, torsion: &[i64]) -> CanonicalForm {
        CanonicalForm {
            free_rank: rank,
            torsion: to_bigints(torsion),
        }
    }

    fn group(ngens: usize, rels: &[Vec<i64>]) -> FgAbGroup {
        let m = if rels.is_empty() {
            IntMatrix::zeros(ngens, 0)
        } else {
            IntMatrix::from_i64_rows(rels)
        };
        FgAbGroup::new(ngens, m).unwrap()
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(group(1, &[]).canonical_form(), &cf(1, &[]));
        assert_eq!(
            group(2, &[vec![2, 0], vec![0, 3]]).canonical_form(),
            &cf(0, &[6])
        );
        assert_eq!(group(2, &[vec![2], vec![4]]).canonical_form(), &cf(1, &[2]));
    }

    #[test]
    fn kic_examples() {
        let zz = FgAbGroup::free(1);
        let twice =
            FgAbHom::new(zz.clone(), zz.clone(), IntMatrix::from_i64_rows(&[vec![2]])).unwrap();
        let k = twice.kic();
        assert!(k.kernel.group.is_trivial());
        assert_eq!(k.cokernel.group.canonical_form(), &cf(0, &[2]));
        assert!(k.image.contains(&[z(2)]).unwrap());
        assert!(!k.image.contains(&[z(1)]).unwrap());

        let id = FgAbHom::identity(&zz).kic();
        assert!(id.kernel.group.is_trivial() && id.cokernel.group.is_trivial());

        let z4 = FgAbGroup::cyclic(4);
        let k = FgAbHom::zero(&zz, &z4).kic();
        assert_eq!(k.kernel.group.canonical_form(), &cf(1, &[]));
        assert_eq!(k.image.canonical_form(), cf(0, &[]));
        assert_eq!(k.cokernel.group.canonical_form(), &cf(0, &[4]));
    }

    #[test]
    fn ill_defined_hom_rejected() {
        let z2 = FgAbGroup::cyclic(2);
        let zz = FgAbGroup::free(1);
        let r = FgAbHom::new(z2, zz, IntMatrix::from_i64_rows(&[vec![1]]));
        assert!(matches!(r, Err(Error::IllDefined(_))));
    }

    #[test]
    fn hom_examples() {
        let b = group(2, &[vec![3], vec![0]]);
        let h = hom_group(&FgAbGroup::free(1), &b);
        assert!(h.group.isomorphic(&b));

        let h = hom_group(&FgAbGroup::cyclic(6), &FgAbGroup::cyclic(4));
        assert_eq!(h.group.canonical_form(), &cf(0, &[2]));
        // the generator is x ↦ 2x
        let g = &h.basis()[0];
        assert!(FgAbGroup::cyclic(4)
            .elements_equal(&g.apply(&[z(1)]).unwrap(), &[z(2)])
            .unwrap());

        let h = hom_group(&FgAbGroup::free(2), &FgAbGroup::free(1));
        assert_eq!(h.group.canonical_form(), &cf(2, &[]));
    }

    #[test]
    fn hom_element_round_trip() {
        let a = group(2, &[vec![4], vec![2]]);
        let b = FgAbGroup::cyclic(6).direct_sum(&FgAbGroup::free(1));
        let h = hom_group(&a, &b);
        for (i, f) in h.basis().iter().enumerate() {
            assert_eq!(h.element_of(f).unwrap(), h.group.generator(i));
        }
    }

    #[test]
    fn ext_examples() {
        assert!(ext_group(&FgAbGroup::free(1), &FgAbGroup::cyclic(3))
            .group
            .is_trivial());
        assert_eq!(
            ext_group(&FgAbGroup::cyclic(5), &FgAbGroup::free(1))
                .group
                .canonical_form(),
            &cf(0, &[5])
        );
        assert_eq!(
            ext_group(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6))
                .group
                .canonical_form(),
            &cf(0, &[2])
        );
    }

    #[test]
    fn ext_with_dependent_relations() {
        let a = group(1, &[vec![4, 6]]);
        assert_eq!(
            ext_group(&a, &FgAbGroup::free(1)).group.canonical_form(),
            &cf(0, &[2])
        );
    }

    #[test]
    fn ext_map_of_multiplication() {
        // ×2 : Z/4 → Z/4 induces ×2 on Ext(Z/4, Z) = Z/4.
        let z4 = FgAbGroup::cyclic(4);
        let f = FgAbHom::new(z4.clone(), z4.clone(), IntMatrix::from_i64_rows(&[vec![2]])).unwrap();
        let e = ext_group(&z4, &FgAbGroup::free(1));
        let m = ext_map(&f, &e, &e).unwrap();
        let image = m.apply(&[z(1)]).unwrap();
        assert!(e.group.elements_equal(&image, &[z(2)]).unwrap());
    }

    #[test]
    fn torsion_split_examples() {
        let g = FgAbGroup::free(1).direct_sum(&FgAbGroup::cyclic(2));
        let s = torsion_and_free(&g);
        assert_eq!(s.torsion.canonical_form(), cf(0, &[2]));
        assert_eq!(s.free.canonical_form(), &cf(1, &[]));
        assert!(s.quotient.is_surjective());

        let s = torsion_and_free(&FgAbGroup::free(3));
        assert!(s.torsion.canonical_form().is_trivial());
        assert!(s.quotient.is_isomorphism());

        let s = torsion_and_free(&FgAbGroup::cyclic(12));
        assert_eq!(s.free.ngens(), 0);
        assert!(s.quotient.is_zero().unwrap());
    }

    #[test]
    fn purify_examples() {
        let h = FgAbGroup::free(2);
        let b = Subgroup::new(h.clone(), IntMatrix::from_i64_rows(&[vec![2], vec![0]])).unwrap();
        let c = purify(&h, &b).unwrap();
        assert_eq!(
            c.generators(),
            &IntMatrix::from_i64_rows(&[vec![1], vec![0]])
        );
        assert_eq!(index(&b, &c).unwrap(), Index::Finite(z(2)));

        let whole = Subgroup::whole(&h);
        assert!(purify(&h, &whole).unwrap().same_as(&whole).unwrap());

        let b = Subgroup::new(h.clone(), IntMatrix::from_i64_rows(&[vec![2], vec![4]])).unwrap();
        let c = purify(&h, &b).unwrap();
        assert_eq!(
            c.generators(),
            &IntMatrix::from_i64_rows(&[vec![1], vec![2]])
        );

        let torsion = FgAbGroup::cyclic(2);
        assert!(matches!(
            purify(&torsion, &Subgroup::zero(&torsion)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn index_examples() {
        let h = FgAbGroup::free(2);
        let a = Subgroup::whole(&h);
        let b = Subgroup::new(
            h.clone(),
            IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]),
        )
        .unwrap();
        assert_eq!(index(&b, &a).unwrap(), Index::Finite(z(4)));
        assert_eq!(index(&a, &a).unwrap(), Index::Finite(z(1)));
        let line = Subgroup::new(h.clone(), IntMatrix::from_i64_rows(&[vec![1], vec![0]])).unwrap();
        assert_eq!(index(&line, &a).unwrap(), Index::Infinite);
        assert!(index(&a, &line).is_err());
    }

    #[test]
    fn element_order_and_normalize() {
        let g = group(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(g.element_order(&[z(1), z(1)]).unwrap(), Some(z(6)));
        assert_eq!(
            g.normalize(&[z(3), z(4)]).unwrap(),
            g.normalize(&[z(1), z(1)]).unwrap()
        );
        assert_eq!(FgAbGroup::free(1).element_order(&[z(2)]).unwrap(), None);
    }

    #[test]
    fn group_json() {
        let g = group(2, &[vec![2], vec![4]]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"ngens":2,"relations":{"rows":2,"cols":1,"data":["2","4"]}}"#
        );
        assert_eq!(serde_json::from_str::<FgAbGroup>(&s).unwrap(), g);
    }
}
