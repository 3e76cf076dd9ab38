//! Independent oracles shared by the integration tests. Nothing here calls into the
//! library's reduction routines.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use prolim::zlinalg::IntMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(lo..=hi)))
        .collect();
    IntMatrix::new(rows, cols, data).unwrap()
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Fraction-free Gaussian elimination.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_rows(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Nonzero invariant factors `g_k / g_{k-1}` from gcds of `k × k` minors.
pub fn minor_gcd_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let data = rs
                    .iter()
                    .flat_map(|&r| cs.iter().map(move |&c| (r, c)))
                    .map(|(r, c)| m.get(r, c).clone())
                    .collect();
                g = g.gcd(&det_bareiss(&IntMatrix::new(k, k, data).unwrap()));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Random unimodular matrix as a product of elementary operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect())
        .collect();
    if n > 1 {
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = BigInt::from(rng.gen_range(-2i64..=2));
            let src = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(&src) {
                *x += &c * y;
            }
            if rng.gen_bool(0.2) {
                rows.swap(i, j);
            }
        }
    }
    IntMatrix::new(n, n, rows.into_iter().flatten().collect()).unwrap()
}

/// Integer lattice membership by row echelon reduction of the generators.
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn from_columns(m: &IntMatrix) -> Self {
        let gens: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| m.column(j)).collect();
        Self::new(m.rows(), gens)
    }

    pub fn new(dim: usize, mut gens: Vec<Vec<BigInt>>) -> Self {
        let mut basis = Vec::new();
        for col in 0..dim {
            // Euclid on the pivot column among remaining generators
            loop {
                gens.retain(|g| g.iter().any(|x| !x.is_zero()));
                let nonzero: Vec<usize> = (0..gens.len())
                    .filter(|&k| !gens[k][col].is_zero())
                    .collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let p = *nonzero.iter().min_by_key(|&&k| gens[k][col].abs()).unwrap();
                let pivot = gens[p].clone();
                for &k in &nonzero {
                    if k != p {
                        let q = gens[k][col].div_floor(&pivot[col]);
                        for (x, y) in gens[k].iter_mut().zip(&pivot) {
                            *x -= &q * y;
                        }
                    }
                }
            }
            if let Some(k) = (0..gens.len()).find(|&k| !gens[k][col].is_zero()) {
                basis.push((col, gens.remove(k)));
            }
        }
        Lattice {
            dim,
            basis: basis.into_iter().map(|(_, b)| b).collect(),
        }
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.dim);
        let mut r = x.to_vec();
        for b in &self.basis {
            let col = b.iter().position(|v| !v.is_zero()).unwrap();
            let (q, rem) = r[col].div_rem(&b[col]);
            if !rem.is_zero() {
                return false;
            }
            for (x, y) in r.iter_mut().zip(b) {
                *x -= &q * y;
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains_all(&self, m: &IntMatrix) -> bool {
        (0..m.cols()).all(|j| self.contains(&m.column(j)))
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Sublattice `B ⊆ ℤ^n` with a known saturation: `B = W·diag(d)·(unimodular)` plus redundant
/// generators, so the saturation is spanned by the first `r` columns of `W` and
/// `[C : B] = Π dᵢ`. Every `dᵢ` divides `e ≤ 6`.
pub struct SaturationInstance {
    pub n: usize,
    pub generators: IntMatrix,
    pub saturation: IntMatrix,
    pub index: BigInt,
    pub exponent: i64,
}

pub fn saturation_instance(rng: &mut impl Rng) -> SaturationInstance {
    let n = rng.gen_range(1..=3);
    let r = rng.gen_range(1..=n);
    let exponent = rng.gen_range(1..=6i64);
    let divisors: Vec<i64> = (1..=exponent).filter(|d| exponent % d == 0).collect();
    let d: Vec<i64> = (0..r)
        .map(|_| divisors[rng.gen_range(0..divisors.len())])
        .collect();
    let w = random_unimodular(rng, n, 6);
    let v = random_unimodular(rng, r, 4);
    let saturation = w.select_columns(0..r);
    let mut diag = IntMatrix::zeros(r, r);
    for (i, di) in d.iter().enumerate() {
        diag.set(i, i, BigInt::from(*di));
    }
    let core = &(&saturation * &diag) * &v;
    let extra_count = rng.gen_range(0..=1);
    let combo = random_matrix(rng, r, extra_count, -2, 2);
    let generators = core.hconcat(&(&core * &combo)).unwrap();
    SaturationInstance {
        n,
        generators,
        saturation,
        index: d.iter().map(|&x| BigInt::from(x)).product(),
        exponent,
    }
}

/// Vectors of `[-bound, bound]^n`.
pub fn box_vectors(n: usize, bound: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(BigInt::from(x));
                    w
                })
            })
            .collect();
    }
    out
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Random tower of groups `(ℤ/k)^b ⊕ ℤ^a` that the engine certifies as Mittag-Leffler.
pub fn random_ml_tower(rng: &mut impl Rng, window: usize) -> prolim::tower::InverseTower {
    use prolim::fgab::FgAbGroup;
    use prolim::tower::{is_mittag_leffler, InverseTower};
    loop {
        let k = [0i64, 2, 3, 4][rng.gen_range(0..4)];
        let shapes: Vec<(usize, usize)> = (0..window)
            .map(|_| {
                (
                    if k == 0 { 0 } else { rng.gen_range(0..=1) },
                    rng.gen_range(0..=3),
                )
            })
            .collect();
        let groups: Vec<FgAbGroup> = shapes
            .iter()
            .map(|&(b, a)| FgAbGroup::from_invariants(a, &vec![BigInt::from(k); b]))
            .collect();
        let bonds: Vec<IntMatrix> = (1..window)
            .map(|i| {
                let (bl, al) = shapes[i - 1];
                let (bu, au) = shapes[i];
                let mut m = IntMatrix::zeros(bl + al, bu + au);
                for r in 0..bl + al {
                    for c in 0..bu + au {
                        let torsion_col = c < bu;
                        let free_row = r >= bl;
                        let v = if torsion_col && free_row {
                            0
                        } else if !torsion_col && free_row {
                            if rng.gen_bool(0.6) {
                                0
                            } else {
                                rng.gen_range(-1..=1)
                            }
                        } else {
                            rng.gen_range(-2..=2)
                        };
                        m.set(r, c, BigInt::from(v));
                    }
                }
                m
            })
            .collect();
        let t =
            InverseTower::from_matrices(groups, bonds).expect("torsion columns avoid free rows");
        if is_mittag_leffler(&t).map(|r| r.certified).unwrap_or(false) {
            return t;
        }
    }
}
