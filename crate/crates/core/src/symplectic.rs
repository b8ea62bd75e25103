//! Symplectic matrices over the rationals.
//!
//! The standard form is the block matrix `J(g) = [[0, I], [-I, 0]]` on the
//! ordered basis `v_1..v_g, w_1..w_g`, so `<v_i, w_i> = 1` with
//! `<x, y> = x^T J y`. [`block_to_interleaved`] relates this to the
//! interleaved ordering `v_1, w_1, v_2, w_2, ...`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rational::{int, Rat};
use crate::rng::Lcg;

/// The block symplectic form `J(g)`.
pub fn form_matrix(g: usize) -> Mat {
    Mat::from_fn(2 * g, 2 * g, |i, j| {
        if i < g && j == i + g {
            Rat::one()
        } else if i >= g && j + g == i {
            -Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// Permutation matrix `P` taking interleaved coordinates to block
/// coordinates: column `2i` is `v_i`, column `2i+1` is `w_i`. Then
/// `P^T J(g) P` is the interleaved form `sum x_{2i-1} y_{2i} - x_{2i} y_{2i-1}`.
pub fn block_to_interleaved(g: usize) -> Mat {
    Mat::from_fn(2 * g, 2 * g, |i, j| {
        let target = if j % 2 == 0 { j / 2 } else { g + j / 2 };
        if i == target {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// `<x, y> = x^T J(g) y` for vectors of length `2g`.
pub fn symplectic_pairing(x: &[Rat], y: &[Rat]) -> Rat {
    let g = x.len() / 2;
    let mut s = Rat::zero();
    for i in 0..g {
        s += &x[i] * &y[g + i] - &x[g + i] * &y[i];
    }
    s
}

/// `true` iff `M^T J(g) M = J(g)`.
pub fn is_symplectic(m: &Mat, g: usize) -> Result<bool> {
    if m.rows() != 2 * g || m.cols() != 2 * g {
        return Err(Error::invalid(format!(
            "expected a {}x{} matrix for genus {g}, got {}x{}",
            2 * g,
            2 * g,
            m.rows(),
            m.cols()
        )));
    }
    let j = form_matrix(g);
    Ok(&(&m.transpose() * &j) * m == j)
}

/// A `2g x 2g` rational matrix preserving `J(g)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpMat {
    genus: usize,
    mat: Mat,
}

impl std::fmt::Debug for SpMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sp{}{:?}", 2 * self.genus, self.mat)
    }
}

impl SpMat {
    /// Validates the symplectic relation.
    pub fn new(mat: Mat) -> Result<Self> {
        if !mat.is_square() || !mat.rows().is_multiple_of(2) || mat.rows() == 0 {
            return Err(Error::invalid(format!(
                "symplectic matrices are 2g x 2g with g >= 1, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let genus = mat.rows() / 2;
        if !is_symplectic(&mat, genus)? {
            return Err(Error::Precondition(format!("matrix {mat:?} is not symplectic")));
        }
        Ok(SpMat { genus, mat })
    }

    /// Skips the symplectic check; callers guarantee it by construction.
    pub(crate) fn from_trusted(mat: Mat) -> Self {
        debug_assert!(is_symplectic(&mat, mat.rows() / 2).unwrap_or(false));
        SpMat { genus: mat.rows() / 2, mat }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(Mat::from_i64(rows))
    }

    pub fn identity(g: usize) -> Self {
        SpMat { genus: g, mat: Mat::identity(2 * g) }
    }

    /// `J(g)` itself, which is symplectic.
    pub fn form(g: usize) -> Self {
        SpMat { genus: g, mat: form_matrix(g) }
    }

    /// The rotation `[[0, -1], [1, 0]]` by a quarter turn (genus 1).
    pub fn quarter_turn() -> Self {
        SpMat { genus: 1, mat: Mat::from_i64(&[&[0, -1], &[1, 0]]) }
    }

    /// Rotation of `R^2` by `k` quarter turns; the integral points of `SO(2)`.
    pub fn rotation_quarters(k: i64) -> Self {
        let q = Self::quarter_turn();
        let mut out = Self::identity(1);
        for _ in 0..k.rem_euclid(4) {
            out = out.mul(&q);
        }
        out
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn is_integral(&self) -> bool {
        self.mat.is_integral()
    }

    pub fn neg(&self) -> SpMat {
        SpMat { genus: self.genus, mat: -&self.mat }
    }

    /// Product; panics on genus mismatch (see [`SpMat::try_mul`]).
    pub fn mul(&self, rhs: &SpMat) -> SpMat {
        self.try_mul(rhs).expect("genus mismatch")
    }

    pub fn try_mul(&self, rhs: &SpMat) -> Result<SpMat> {
        same_genus(self, rhs)?;
        Ok(SpMat { genus: self.genus, mat: &self.mat * &rhs.mat })
    }

    /// `M^{-1} = -J M^T J`.
    pub fn inverse(&self) -> SpMat {
        let j = form_matrix(self.genus);
        SpMat { genus: self.genus, mat: -&(&(&j * &self.mat.transpose()) * &j) }
    }

    /// `M v` for a column vector.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        (&self.mat * &Mat::column_vector(v)).column(0)
    }

    pub fn pow(&self, k: i64) -> SpMat {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = SpMat::identity(self.genus);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }
}

pub(crate) fn same_genus(a: &SpMat, b: &SpMat) -> Result<()> {
    if a.genus != b.genus {
        return Err(Error::invalid(format!("genus mismatch: {} vs {}", a.genus, b.genus)));
    }
    Ok(())
}

pub fn symplectic_inverse(m: &SpMat) -> SpMat {
    m.inverse()
}

/// The transvection `x -> x + c <x, v> v`.
pub fn transvection(v: &[Rat], c: &Rat) -> Result<SpMat> {
    if v.is_empty() || !v.len().is_multiple_of(2) {
        return Err(Error::invalid(format!("transvection vector must have even length, got {}", v.len())));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::invalid("transvection along the zero vector"));
    }
    let n = v.len();
    let g = n / 2;
    // <x, v> = x^T (J v), so the matrix is I + c v (J v)^T.
    let jv = form_matrix(g).try_mul(&Mat::column_vector(v))?.column(0);
    let mat = Mat::from_fn(n, n, |i, j| {
        let delta = if i == j { Rat::one() } else { Rat::zero() };
        delta + c * &v[i] * &jv[j]
    });
    Ok(SpMat::from_trusted(mat))
}

/// `[a, b] = a b a^{-1} b^{-1}`.
pub fn commutator(a: &SpMat, b: &SpMat) -> Result<SpMat> {
    same_genus(a, b)?;
    Ok(a.mul(b).mul(&a.inverse()).mul(&b.inverse()))
}

/// Extends `M` to genus `target` by the identity on the new hyperbolic
/// pairs `v_{g+1}, w_{g+1}, ...`, keeping the block basis order.
pub fn embed_stabilize(m: &SpMat, target: usize) -> Result<SpMat> {
    let g = m.genus;
    if target < g {
        return Err(Error::invalid(format!("cannot stabilize genus {g} down to {target}")));
    }
    if target == g {
        return Ok(m.clone());
    }
    let index = |i: usize| if i < g { i } else { target + (i - g) };
    let mut out = Mat::identity(2 * target);
    for i in 0..2 * g {
        for j in 0..2 * g {
            out.set(index(i), index(j), m.mat.get(i, j).clone());
        }
    }
    Ok(SpMat::from_trusted(out))
}

/// Direction vectors of the generator alphabet, in fixed order:
/// `e_i` (i.e. `v_i`), then `f_i` (`w_i`), then `e_i + f_i`, then
/// `e_i + e_j` for `i < j`.
pub fn alphabet_directions(g: usize) -> Vec<Vec<Rat>> {
    let unit = |k: usize| {
        let mut v = vec![Rat::zero(); 2 * g];
        v[k] = Rat::one();
        v
    };
    let mut out = Vec::new();
    out.extend((0..g).map(unit));
    out.extend((0..g).map(|i| unit(g + i)));
    for i in 0..g {
        let mut v = unit(i);
        v[g + i] = Rat::one();
        out.push(v);
    }
    for i in 0..g {
        for j in i + 1..g {
            let mut v = unit(i);
            v[j] = Rat::one();
            out.push(v);
        }
    }
    out
}

/// Transvections along [`alphabet_directions`] with coefficient `+c`
/// then `-c` for each direction; letters `2k` and `2k+1` are mutually inverse.
pub fn transvection_alphabet(g: usize, c: i64) -> Vec<SpMat> {
    let mut out = Vec::new();
    for v in alphabet_directions(g) {
        out.push(transvection(&v, &int(c)).expect("nonzero direction"));
        out.push(transvection(&v, &int(-c)).expect("nonzero direction"));
    }
    out
}

/// Product of `word_len` letters of a fixed alphabet drawn by `rng`.
pub fn random_word(alphabet: &[SpMat], g: usize, word_len: usize, rng: &mut Lcg) -> SpMat {
    let mut out = SpMat::identity(g);
    for _ in 0..word_len {
        let k = rng.below(alphabet.len() as u32) as usize;
        out = out.mul(&alphabet[k]);
    }
    out
}

/// Deterministic random element: a word of length `word_len` in the
/// coefficient-one transvection alphabet, seeded by `seed`.
pub fn random_symplectic(g: usize, word_len: usize, seed: u64) -> SpMat {
    let mut rng = Lcg::new(seed);
    random_symplectic_with(g, word_len, &mut rng)
}

pub fn random_symplectic_with(g: usize, word_len: usize, rng: &mut Lcg) -> SpMat {
    random_word(&transvection_alphabet(g, 1), g, word_len, rng)
}
