//! Lagrangian subspaces and the Wall-Maslov index of a triple.
//!
//! For inclusions `j_1, j_2, j_3` of three lagrangians in `(V, b)` the index
//! is the signature of the form `[[0, j_1^* b j_2], [0, 0]]` restricted to
//! `ker(j_3^* b j_1 | j_3^* b j_2) ⊂ L_1 ⊕ L_2`, i.e. `(a, b) x (a', b') ↦ b(a, b')`
//! on pairs with `a + b ∈ L_3`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::signature_of_symmetric;
use crate::matrix::Mat;
use crate::rational::{sign, Rat};
use crate::symplectic::{form_matrix, SpMat};

/// Anything that is a lagrangian for some ambient symplectic form.
pub trait AmbientLagrangian {
    /// Basis columns in canonical reduced column echelon form.
    fn basis(&self) -> &Mat;
    /// Gram matrix of the ambient form.
    fn ambient_form(&self) -> Mat;
    fn ambient_dim(&self) -> usize {
        self.basis().rows()
    }
    /// Tag distinguishing ambient forms of equal dimension.
    fn ambient_kind(&self) -> AmbientKind;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbientKind {
    /// `(Q^{2g}, J(g))`.
    Standard(usize),
    /// `(Q^{2g} ⊕ Q^{2g}, J(g) ⊕ -J(g))`.
    Doubled(usize),
}

fn check_isotropic(basis: &Mat, form: &Mat, rank: usize) -> Result<()> {
    if basis.rank() != rank {
        return Err(Error::invalid(format!("basis has rank {}, expected {rank}", basis.rank())));
    }
    let gram = &(&basis.transpose() * form) * basis;
    if !gram.is_zero() {
        return Err(Error::NotLagrangian(format!("span is not isotropic, gram {gram:?}")));
    }
    Ok(())
}

/// A lagrangian of `(Q^{2g}, J(g))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lagrangian {
    genus: usize,
    basis: Mat,
}

impl Lagrangian {
    pub fn from_basis(cols: &Mat, g: usize) -> Result<Self> {
        if g == 0 || cols.rows() != 2 * g || cols.cols() != g {
            return Err(Error::invalid(format!(
                "a genus-{g} lagrangian needs a {}x{g} basis, got {}x{}",
                2 * g,
                cols.rows(),
                cols.cols()
            )));
        }
        check_isotropic(cols, &form_matrix(g), g)?;
        Ok(Lagrangian { genus: g, basis: cols.column_echelon() })
    }

    /// `span{v_1, ..., v_g}`.
    pub fn standard(g: usize) -> Self {
        let basis = Mat::from_fn(2 * g, g, |i, j| if i == j { Rat::one() } else { Rat::zero() });
        Lagrangian { genus: g, basis }
    }

    /// The line spanned by `(p, q)` in genus 1.
    pub fn line(p: Rat, q: Rat) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::invalid("zero direction"));
        }
        Self::from_basis(&Mat::new(2, 1, vec![p, q])?, 1)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `alpha(L)`.
    pub fn image(&self, alpha: &SpMat) -> Result<Self> {
        if alpha.genus() != self.genus {
            return Err(Error::invalid("genus mismatch between matrix and lagrangian"));
        }
        let basis = (alpha.mat() * &self.basis).column_echelon();
        Ok(Lagrangian { genus: self.genus, basis })
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let ext = self.basis.hstack(&Mat::column_vector(v)).expect("matching rows");
        ext.rank() == self.genus
    }
}

impl AmbientLagrangian for Lagrangian {
    fn basis(&self) -> &Mat {
        &self.basis
    }
    fn ambient_form(&self) -> Mat {
        form_matrix(self.genus)
    }
    fn ambient_kind(&self) -> AmbientKind {
        AmbientKind::Standard(self.genus)
    }
}

/// `J(g) ⊕ -J(g)` on `Q^{2g} ⊕ Q^{2g}`.
pub fn doubled_form(g: usize) -> Mat {
    let j = form_matrix(g);
    j.block_diag(&-&j)
}

/// A lagrangian of the doubled form `J(g) ⊕ -J(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubledLagrangian {
    genus: usize,
    basis: Mat,
}

impl DoubledLagrangian {
    pub fn from_basis(cols: &Mat, g: usize) -> Result<Self> {
        if g == 0 || cols.rows() != 4 * g || cols.cols() != 2 * g {
            return Err(Error::invalid(format!("a doubled genus-{g} lagrangian needs a {}x{} basis", 4 * g, 2 * g)));
        }
        check_isotropic(cols, &doubled_form(g), 2 * g)?;
        Ok(DoubledLagrangian { genus: g, basis: cols.column_echelon() })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }
}

impl AmbientLagrangian for DoubledLagrangian {
    fn basis(&self) -> &Mat {
        &self.basis
    }
    fn ambient_form(&self) -> Mat {
        doubled_form(self.genus)
    }
    fn ambient_kind(&self) -> AmbientKind {
        AmbientKind::Doubled(self.genus)
    }
}

/// `grph(M) = {(x, M x)}`, spanned by the columns `(e_k, M e_k)`.
pub fn graph_lagrangian(m: &SpMat) -> DoubledLagrangian {
    let g = m.genus();
    let cols = Mat::identity(2 * g).vstack(m.mat()).expect("same width");
    DoubledLagrangian { genus: g, basis: cols.column_echelon() }
}

/// Wall-Maslov index of a triple over a common ambient form.
pub fn wall_maslov<L: AmbientLagrangian>(l1: &L, l2: &L, l3: &L) -> Result<i64> {
    let kind = l1.ambient_kind();
    if l2.ambient_kind() != kind || l3.ambient_kind() != kind {
        return Err(Error::invalid("lagrangians live in different ambient spaces"));
    }
    wall_index(&l1.ambient_form(), l1.basis(), l2.basis(), l3.basis())
}

/// Index for explicit basis matrices of three lagrangians of `form`.
pub(crate) fn wall_index(form: &Mat, b1: &Mat, b2: &Mat, b3: &Mat) -> Result<i64> {
    let k = b1.cols();
    let b3t_form = &b3.transpose() * form;
    let p31 = &b3t_form * b1;
    let p32 = &b3t_form * b2;
    let kernel = p31.hstack(&p32)?.kernel_basis();
    if kernel.cols() == 0 {
        return Ok(0);
    }
    let a12 = &(&b1.transpose() * form) * b2;
    let mut q = Mat::zeros(2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            q.set(i, k + j, a12.get(i, j).clone());
        }
    }
    let gram = &(&kernel.transpose() * &q) * &kernel;
    if !gram.is_symmetric() {
        return Err(Error::ConstructionBug(format!("Wall form on the kernel is not symmetric: {gram:?}")));
    }
    let inertia = signature_of_symmetric(&gram)?;
    Ok(inertia.signature())
}

/// Normalizes a nonzero direction to `q > 0`, or `q = 0, p > 0`.
pub fn normalize_direction(p: &Rat, q: &Rat) -> Result<(Rat, Rat)> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::invalid("zero direction"));
    }
    if q.is_negative() || (q.is_zero() && p.is_negative()) {
        Ok((-p, -q))
    } else {
        Ok((p.clone(), q.clone()))
    }
}

/// Genus-one closed form `-sign(sin π(a1-a2) sin π(a2-a3) sin π(a3-a1))`
/// for lines `L_a` with directions `(cos πa, sin πa) ∝ (p, q)`.
pub fn wall_maslov_g1_closed(d1: (&Rat, &Rat), d2: (&Rat, &Rat), d3: (&Rat, &Rat)) -> Result<i64> {
    let d = [
        normalize_direction(d1.0, d1.1)?,
        normalize_direction(d2.0, d2.1)?,
        normalize_direction(d3.0, d3.1)?,
    ];
    // sign of sin π(a_i - a_k) for normalized representatives
    let s = |i: usize, k: usize| sign(&(&d[i].1 * &d[k].0 - &d[i].0 * &d[k].1));
    Ok(-(s(0, 1) * s(1, 2) * s(2, 0)))
}

/// `L ⊕ span{v_{g+1}, ..., v_target}`.
pub fn stabilize_lagrangian(l: &Lagrangian, target: usize) -> Result<Lagrangian> {
    let g = l.genus;
    if target < g {
        return Err(Error::invalid(format!("cannot stabilize genus {g} down to {target}")));
    }
    if target == g {
        return Ok(l.clone());
    }
    let index = |i: usize| if i < g { i } else { target + (i - g) };
    let mut basis = Mat::zeros(2 * target, target);
    for i in 0..2 * g {
        for j in 0..g {
            basis.set(index(i), j, l.basis.get(i, j).clone());
        }
    }
    for extra in g..target {
        basis.set(extra, extra, Rat::one());
    }
    Ok(Lagrangian { genus: target, basis: basis.column_echelon() })
}
