//! Finite simplicial complexes, simplicial maps, integral homology and cohomology with
//! coefficients in a finitely generated abelian group.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fgab::{self, FgAbGroup, FgAbHom, Subgroup, Subquotient};
use crate::zlinalg::{self, IntMatrix, Smith};

type Simplex = Vec<usize>;

struct Cache {
    boundaries: Vec<OnceLock<IntMatrix>>,
    homology: Vec<OnceLock<Homology>>,
}

/// A finite simplicial complex on vertices `0..vertices`; every vertex is a 0-simplex.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: usize,
    /// `simplices[n]`: sorted `n`-simplices in lexicographic order.
    simplices: Vec<Vec<Simplex>>,
    index: Arc<Vec<HashMap<Simplex, usize>>>,
    cache: Arc<Cache>,
}

impl SimplicialComplex {
    /// Builds a complex from an explicit, face-closed list of simplices.
    pub fn new(vertices: usize, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![(0..vertices).map(|v| vec![v]).collect()];
        for mut s in simplices {
            if s.is_empty() {
                return Err(Error::Input("empty simplex".into()));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("simplex {s:?} repeats a vertex")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices) {
                return Err(Error::Input(format!(
                    "vertex {v} out of range 0..{vertices}"
                )));
            }
            let n = s.len() - 1;
            if by_dim.len() <= n {
                by_dim.resize_with(n + 1, BTreeSet::new);
            }
            if n > 0 && !by_dim[n].insert(s.clone()) {
                return Err(Error::Input(format!("duplicate simplex {s:?}")));
            }
        }
        for n in 1..by_dim.len() {
            for s in &by_dim[n] {
                for f in faces(s) {
                    if !by_dim[n - 1].contains(&f) {
                        return Err(Error::Input(format!("face {f:?} of {s:?} is missing")));
                    }
                }
            }
        }
        Ok(Self::from_sets(vertices, by_dim))
    }

    /// The smallest complex containing the given simplices.
    pub fn closure(vertices: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![(0..vertices).map(|v| vec![v]).collect()];
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if let Some(&v) = s.iter().find(|&&v| v >= vertices) {
                return Err(Error::Input(format!(
                    "vertex {v} out of range 0..{vertices}"
                )));
            }
            let k = s.len();
            if k == 0 {
                return Err(Error::Input("empty simplex".into()));
            }
            if k > 20 {
                return Err(Error::Input(format!(
                    "simplex of dimension {} is too large",
                    k - 1
                )));
            }
            if by_dim.len() < k {
                by_dim.resize_with(k, BTreeSet::new);
            }
            for mask in 1u32..(1 << k) {
                let face: Simplex = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| s[i])
                    .collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        Ok(Self::from_sets(vertices, by_dim))
    }

    fn from_sets(vertices: usize, mut by_dim: Vec<BTreeSet<Simplex>>) -> Self {
        while by_dim.len() > 1 && by_dim.last().is_some_and(BTreeSet::is_empty) {
            by_dim.pop();
        }
        let simplices: Vec<Vec<Simplex>> = by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let index = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        let slots = simplices.len() + 2;
        SimplicialComplex {
            vertices,
            cache: Arc::new(Cache {
                boundaries: (0..slots).map(|_| OnceLock::new()).collect(),
                homology: (0..slots).map(|_| OnceLock::new()).collect(),
            }),
            simplices,
            index: Arc::new(index),
        }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// Top dimension; a complex with no vertices has dimension 0 by convention.
    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, n: usize) -> &[Simplex] {
        self.simplices.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices(n).len()
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dimension())
            .map(|n| {
                if n % 2 == 0 {
                    self.count(n) as i64
                } else {
                    -(self.count(n) as i64)
                }
            })
            .sum()
    }

    /// `∂_n : C_n → C_{n-1}`, of shape `count(n-1) × count(n)`; `∂_0` has zero rows.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        match self.cache.boundaries.get(n) {
            Some(slot) => slot.get_or_init(|| self.compute_boundary(n)).clone(),
            None => IntMatrix::zeros(self.count(n.saturating_sub(1)), 0),
        }
    }

    fn compute_boundary(&self, n: usize) -> IntMatrix {
        if n == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        let mut m = IntMatrix::zeros(self.count(n - 1), self.count(n));
        for (j, s) in self.simplices(n).iter().enumerate() {
            for (k, f) in faces(s).into_iter().enumerate() {
                let i = self.simplex_index(&f).expect("complex is face-closed");
                m.set(
                    i,
                    j,
                    if k % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    },
                );
            }
        }
        m
    }

    /// `∂_0, ∂_1, …, ∂_{dim+1}`.
    pub fn boundary_matrices(&self) -> Vec<IntMatrix> {
        (0..=self.dimension() + 1)
            .map(|n| self.boundary(n))
            .collect()
    }

    pub fn homology(&self, n: usize) -> Homology {
        match self.cache.homology.get(n) {
            Some(slot) => slot.get_or_init(|| compute_homology(self, n)).clone(),
            None => compute_homology(self, n),
        }
    }

    pub fn cohomology(&self, n: usize, coeff: &FgAbGroup) -> Result<Cohomology> {
        Cohomology::new(self, n, coeff)
    }
}

fn faces(s: &[usize]) -> Vec<Simplex> {
    if s.len() <= 1 {
        return Vec::new();
    }
    (0..s.len())
        .map(|k| {
            s.iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.simplices.iter().map(Vec::len).collect();
        write!(
            f,
            "SimplicialComplex(vertices {}, counts {counts:?})",
            self.vertices
        )
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: usize,
    simplices: Vec<Vec<usize>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            vertices: self.vertices,
            simplices: self.simplices.iter().skip(1).flatten().cloned().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = ComplexJson::deserialize(d)?;
        SimplicialComplex::new(c.vertices, c.simplices).map_err(serde::de::Error::custom)
    }
}

/// `H_n` presented on a basis of cycles: generator `k` is the class of column `k` of `cycles`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: usize,
    pub group: FgAbGroup,
    pub cycles: IntMatrix,
    cycle_lattice: Arc<Smith>,
}

fn compute_homology(k: &SimplicialComplex, n: usize) -> Homology {
    let cycles = zlinalg::kernel_basis(&k.boundary(n));
    let cycle_lattice = Arc::new(zlinalg::snf(&cycles));
    let next = k.boundary(n + 1);
    let next = zlinalg::image_basis(&next);
    let coords: Vec<Vec<BigInt>> = next
        .columns()
        .map(|b| zlinalg::solve_with(&cycle_lattice, &b).expect("boundaries are cycles"))
        .collect();
    let relations = IntMatrix::from_columns(cycles.cols(), &coords)
        .expect("coordinates have cycle-basis length");
    Homology {
        degree: n,
        group: FgAbGroup::new(cycles.cols(), relations).expect("shape is consistent"),
        cycles,
        cycle_lattice,
    }
}

impl Homology {
    /// Class of an `n`-cycle in the cycle-basis coordinates.
    pub fn class_of(&self, chain: &[BigInt]) -> Result<Vec<BigInt>> {
        if chain.len() != self.cycles.rows() {
            return Err(Error::dims(
                format!("chain of length {}", self.cycles.rows()),
                chain.len(),
            ));
        }
        zlinalg::solve_with(&self.cycle_lattice, chain)
            .ok_or_else(|| Error::Input("chain is not a cycle".into()))
    }

    pub fn representative(&self, class: &[BigInt]) -> Vec<BigInt> {
        self.cycles.mul_vec(class)
    }
}

/// `H^n(K; G)` as `ker δ^n / im δ^{n-1}` inside the cochain group `G^{c_n}`.
///
/// A cochain is an `m × c_n` matrix (`m` generators of `G`) flattened column-major.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    pub coeff: FgAbGroup,
    pub cochains: FgAbGroup,
    pub cocycles: Subgroup,
    pub quotient: Subquotient,
}

/// `Hom(C_n, G) = G^{c_n}`.
pub fn cochain_group(k: &SimplicialComplex, n: usize, coeff: &FgAbGroup) -> FgAbGroup {
    coeff.power(k.count(n))
}

/// `δ^n : φ ↦ φ·∂_{n+1}`.
pub fn coboundary(k: &SimplicialComplex, n: usize, coeff: &FgAbGroup) -> FgAbHom {
    FgAbHom::new_unchecked(
        cochain_group(k, n, coeff),
        cochain_group(k, n + 1, coeff),
        k.boundary(n + 1).right_action(coeff.ngens()),
    )
}

impl Cohomology {
    pub fn new(k: &SimplicialComplex, n: usize, coeff: &FgAbGroup) -> Result<Self> {
        let cochains = cochain_group(k, n, coeff);
        let cocycles = fgab::kic(&coboundary(k, n, coeff)).kernel.subgroup;
        let coboundaries = match n {
            0 => Subgroup::zero(&cochains),
            _ => coboundary(k, n - 1, coeff).image(),
        };
        let quotient = Subquotient::new(&cocycles, &coboundaries)?;
        Ok(Cohomology {
            degree: n,
            coeff: coeff.clone(),
            cochains,
            cocycles,
            quotient,
        })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.quotient.group
    }

    /// Class of a cocycle given flattened.
    pub fn class_of(&self, cochain: &[BigInt]) -> Result<Vec<BigInt>> {
        self.quotient.class_of(cochain)
    }

    pub fn representative(&self, class: &[BigInt]) -> Vec<BigInt> {
        self.quotient.representative(class)
    }

    /// The cocycle `m × c_n` matrix of a flattened cochain.
    pub fn as_matrix(&self, cochain: &[BigInt]) -> IntMatrix {
        let m = self.coeff.ngens();
        let c = if m == 0 { 0 } else { cochain.len() / m };
        let mut out = IntMatrix::zeros(m, c);
        for j in 0..c {
            for i in 0..m {
                out.set(i, j, cochain[j * m + i].clone());
            }
        }
        out
    }
}

/// Flattens an `m × c` matrix column-major.
pub fn flatten(x: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(x.rows() * x.cols());
    for j in 0..x.cols() {
        out.extend(x.column(j));
    }
    out
}

/// A simplicial map given by a vertex assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    dom: SimplicialComplex,
    cod: SimplicialComplex,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        dom: SimplicialComplex,
        cod: SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != dom.vertices() {
            return Err(Error::dims(
                format!("{} vertex images", dom.vertices()),
                vertex_map.len(),
            ));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= cod.vertices()) {
            return Err(Error::Input(format!(
                "vertex image {v} out of range 0..{}",
                cod.vertices()
            )));
        }
        let f = SimplicialMap {
            dom,
            cod,
            vertex_map,
        };
        for n in 1..=f.dom.dimension() {
            for s in f.dom.simplices(n) {
                let img = f.image_vertices(s);
                if f.cod.simplex_index(&img).is_none() {
                    return Err(Error::Input(format!(
                        "image {img:?} of simplex {s:?} is not a simplex"
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        SimplicialMap {
            dom: k.clone(),
            cod: k.clone(),
            vertex_map: (0..k.vertices()).collect(),
        }
    }

    pub fn dom(&self) -> &SimplicialComplex {
        &self.dom
    }

    pub fn cod(&self) -> &SimplicialComplex {
        &self.cod
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    fn image_vertices(&self, s: &[usize]) -> Simplex {
        let mut img: Simplex = s.iter().map(|&v| self.vertex_map[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SimplicialMap) -> Result<SimplicialMap> {
        if inner.cod != self.dom {
            return Err(Error::Input("maps are not composable".into()));
        }
        Ok(SimplicialMap {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            vertex_map: inner
                .vertex_map
                .iter()
                .map(|&v| self.vertex_map[v])
                .collect(),
        })
    }

    /// `f_# : C_n(dom) → C_n(cod)`; simplices with repeated image vertices go to zero.
    pub fn chain_map(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.cod.count(n), self.dom.count(n));
        for (j, s) in self.dom.simplices(n).iter().enumerate() {
            let img: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
            let (sorted, sign) = sort_with_sign(&img);
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let i = self.cod.simplex_index(&sorted).expect("map was validated");
            m.set(i, j, BigInt::from(sign));
        }
        m
    }

    /// `H_n(f)`.
    pub fn induced_homology(&self, n: usize) -> Result<FgAbHom> {
        let (src, tgt) = (self.dom.homology(n), self.cod.homology(n));
        let image = &self.chain_map(n) * &src.cycles;
        let cols = image
            .columns()
            .map(|z| tgt.class_of(&z))
            .collect::<Result<Vec<_>>>()?;
        FgAbHom::new(
            src.group.clone(),
            tgt.group.clone(),
            IntMatrix::from_columns(tgt.group.ngens(), &cols)?,
        )
    }

    /// `f^* : H^n(cod; G) → H^n(dom; G)`.
    pub fn induced_cohomology(&self, n: usize, coeff: &FgAbGroup) -> Result<FgAbHom> {
        let src = self.cod.cohomology(n, coeff)?;
        let tgt = self.dom.cohomology(n, coeff)?;
        self.induced_cohomology_between(n, &src, &tgt)
    }

    pub(crate) fn induced_cohomology_between(
        &self,
        n: usize,
        src: &Cohomology,
        tgt: &Cohomology,
    ) -> Result<FgAbHom> {
        let pull = self.cochain_pullback(n, &src.coeff);
        let cols = (0..src.group().ngens())
            .map(|k| {
                let rep = src.representative(&src.group().generator(k));
                tgt.class_of(&pull.mul_vec(&rep))
            })
            .collect::<Result<Vec<_>>>()?;
        FgAbHom::new(
            src.group().clone(),
            tgt.group().clone(),
            IntMatrix::from_columns(tgt.group().ngens(), &cols)?,
        )
    }

    /// `φ ↦ φ·f_#` on flattened cochains.
    pub fn cochain_pullback(&self, n: usize, coeff: &FgAbGroup) -> IntMatrix {
        self.chain_map(n).right_action(coeff.ngens())
    }
}

fn sort_with_sign(v: &[usize]) -> (Vec<usize>, i64) {
    let mut a = v.to_vec();
    let mut sign = 1;
    for i in 0..a.len() {
        for j in 0..a.len() - 1 - i {
            if a[j] > a[j + 1] {
                a.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (a, sign)
}

/// Single point.
pub fn point() -> SimplicialComplex {
    SimplicialComplex::closure(1, &[]).expect("valid")
}

/// The boundary of an `m`-gon, `m ≥ 3`.
pub fn circle(m: usize) -> Result<SimplicialComplex> {
    if m < 3 {
        return Err(Error::Input(format!(
            "a simplicial circle needs at least 3 vertices, got {m}"
        )));
    }
    let edges: Vec<Vec<usize>> = (0..m).map(|k| vec![k, (k + 1) % m]).collect();
    SimplicialComplex::closure(m, &edges)
}

/// `i` triangles glued at vertex 0; circle `c` uses vertices `0, 2c+1, 2c+2`.
pub fn bouquet(i: usize) -> SimplicialComplex {
    let mut edges = Vec::new();
    for c in 0..i {
        let (a, b) = (2 * c + 1, 2 * c + 2);
        edges.extend([vec![0, a], vec![a, b], vec![0, b]]);
    }
    SimplicialComplex::closure(2 * i + 1, &edges).expect("valid")
}

/// Collapses the last circle of `bouquet(i)` onto the base vertex.
pub fn collapse(i: usize) -> Result<SimplicialMap> {
    if i == 0 {
        return Err(Error::Input("collapse needs at least one circle".into()));
    }
    let mut vm: Vec<usize> = (0..2 * i + 1).collect();
    vm[2 * i - 1] = 0;
    vm[2 * i] = 0;
    SimplicialMap::new(bouquet(i), bouquet(i - 1), vm)
}

/// The degree-`p` wrap of a `pm`-gon onto an `m`-gon, `k ↦ k mod m`.
pub fn degree(p: usize, m: usize) -> Result<SimplicialMap> {
    if p == 0 {
        return Err(Error::Input("degree must be positive".into()));
    }
    SimplicialMap::new(
        circle(p * m)?,
        circle(m)?,
        (0..p * m).map(|k| k % m).collect(),
    )
}

/// The octahedron; antipodal pairs `(0,1), (2,3), (4,5)`.
pub fn sphere2() -> SimplicialComplex {
    wedge_spheres(1)
}

/// `i` octahedra sharing vertex 0; sphere `c` uses `0` and `5c+1..=5c+5`.
pub fn wedge_spheres(i: usize) -> SimplicialComplex {
    let mut triangles = Vec::new();
    for c in 0..i {
        let o = 5 * c;
        let pairs = [[0, o + 1], [o + 2, o + 3], [o + 4, o + 5]];
        for a in pairs[0] {
            for b in pairs[1] {
                for d in pairs[2] {
                    triangles.push(vec![a, b, d]);
                }
            }
        }
    }
    SimplicialComplex::closure(5 * i + 1, &triangles).expect("valid")
}

/// The six-vertex real projective plane.
pub fn proj_plane() -> SimplicialComplex {
    let t = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    SimplicialComplex::closure(6, &t.map(|s| s.to_vec())).expect("valid")
}

fn parse_param(name: &str, s: Option<&str>) -> Result<usize> {
    s.ok_or_else(|| Error::Input(format!("{name} needs a parameter")))?
        .parse()
        .map_err(|_| Error::Input(format!("bad parameter for {name}")))
}

/// Named complexes: `point`, `circle:m`, `bouquet:i`, `sphere2`, `wedge_spheres:i`, `proj_plane`.
pub fn complex_by_name(name: &str) -> Result<SimplicialComplex> {
    let mut parts = name.split(':');
    let name = parts.next().unwrap_or_default();
    let arg = parts.next();
    let k = match name {
        "point" => point(),
        "circle" => circle(parse_param(name, arg)?)?,
        "bouquet" => bouquet(parse_param(name, arg)?),
        "sphere2" => sphere2(),
        "wedge_spheres" => wedge_spheres(parse_param(name, arg)?),
        "proj_plane" => proj_plane(),
        _ => return Err(Error::Input(format!("unknown complex {name:?}"))),
    };
    if parts.next().is_some() {
        return Err(Error::Input(format!("too many parameters in {name:?}")));
    }
    Ok(k)
}

/// Named maps: `collapse:i`, `degree:p:m`, `identity:<complex>`.
pub fn map_by_name(text: &str) -> Result<SimplicialMap> {
    let (name, rest) = text.split_once(':').unwrap_or((text, ""));
    match name {
        "collapse" => collapse(parse_param(name, Some(rest))?),
        "degree" => {
            let (p, m) = rest
                .split_once(':')
                .ok_or_else(|| Error::Input("degree needs p:m".into()))?;
            degree(parse_param(name, Some(p))?, parse_param(name, Some(m))?)
        }
        "identity" => Ok(SimplicialMap::identity(&complex_by_name(rest)?)),
        _ => Err(Error::Input(format!("unknown map {text:?}"))),
    }
}

/// Betti number `rank H_n`, by the rank formula `c_n − rank ∂_n − rank ∂_{n+1}`.
pub fn betti(k: &SimplicialComplex, n: usize) -> usize {
    k.count(n) - zlinalg::rank(&k.boundary(n)) - zlinalg::rank(&k.boundary(n + 1))
}

impl Homology {
    pub fn is_zero_class(&self, class: &[BigInt]) -> Result<bool> {
        self.group.is_zero(class)
    }
}
