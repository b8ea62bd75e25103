//! The Meyer cocycle `τ_g` and the Maslov cocycle `τ'_g` on `Sp(2g)`.

use crate::error::{Error, Result};
use crate::forms::signature_of_symmetric;
use crate::maslov::{graph_lagrangian, wall_maslov, Lagrangian};
use crate::matrix::Mat;
use crate::symplectic::{form_matrix, same_genus, SpMat};

/// Reading of Wall's form used on graph lagrangians so that
/// [`meyer_via_graphs`] reproduces [`meyer_cocycle`]. Meyer's kernel
/// description is derived from `((a,b,c),(a',b',c')) ↦ b(b, a')`, which is
/// the negative of the matrix reading `b(a, b')` used by [`wall_maslov`].
/// Recorded in `conventions.lock`.
pub const GRAPH_ROUTE_SIGN: i64 = -1;

/// Identifies a cocycle so extension elements only mix within one context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CocycleKind {
    Meyer,
    /// Maslov cocycle for a lagrangian; `None` is the default `span{v_i}`.
    Maslov(Option<Lagrangian>),
    Zero,
    Other(String),
}

/// An integer-valued function on pairs of symplectic matrices.
pub trait Cocycle {
    fn kind(&self) -> CocycleKind;
    fn eval(&self, a: &SpMat, b: &SpMat) -> Result<i64>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MeyerCocycle;

impl Cocycle for MeyerCocycle {
    fn kind(&self) -> CocycleKind {
        CocycleKind::Meyer
    }
    fn eval(&self, a: &SpMat, b: &SpMat) -> Result<i64> {
        meyer_cocycle(a, b)
    }
}

#[derive(Clone, Debug, Default)]
pub struct MaslovCocycle {
    pub lagrangian: Option<Lagrangian>,
}

impl Cocycle for MaslovCocycle {
    fn kind(&self) -> CocycleKind {
        CocycleKind::Maslov(self.lagrangian.clone())
    }
    fn eval(&self, a: &SpMat, b: &SpMat) -> Result<i64> {
        maslov_cocycle(a, b, self.lagrangian.as_ref())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroCocycle;

impl Cocycle for ZeroCocycle {
    fn kind(&self) -> CocycleKind {
        CocycleKind::Zero
    }
    fn eval(&self, a: &SpMat, b: &SpMat) -> Result<i64> {
        same_genus(a, b)?;
        Ok(0)
    }
}

impl<C: Cocycle + ?Sized> Cocycle for &C {
    fn kind(&self) -> CocycleKind {
        (**self).kind()
    }
    fn eval(&self, a: &SpMat, b: &SpMat) -> Result<i64> {
        (**self).eval(a, b)
    }
}

/// Meyer's description: the signature of
/// `((x,y),(x',y')) ↦ <x + y, (1 - β) y'>` on
/// `{(x, y) : (α^{-1} - 1) x + (β - 1) y = 0}`.
pub fn meyer_cocycle(alpha: &SpMat, beta: &SpMat) -> Result<i64> {
    same_genus(alpha, beta)?;
    let g = alpha.genus();
    let n = 2 * g;
    let id = Mat::identity(n);
    let lhs = &alpha.inverse().into_mat() - &id;
    let rhs = beta.mat() - &id;
    let kernel = lhs.hstack(&rhs)?.kernel_basis();
    if kernel.cols() == 0 {
        return Ok(0);
    }
    let m = &form_matrix(g) * &(&id - beta.mat());
    let mut q = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            q.set(i, n + j, m.get(i, j).clone());
            q.set(n + i, n + j, m.get(i, j).clone());
        }
    }
    let gram = &(&kernel.transpose() * &q) * &kernel;
    if !gram.is_symmetric() {
        return Err(Error::ConstructionBug(format!("Meyer form is not symmetric: {gram:?}")));
    }
    Ok(signature_of_symmetric(&gram)?.signature())
}

/// `τ(grph(1), grph(α), grph(αβ))` in the doubled space, under the
/// reading fixed by [`GRAPH_ROUTE_SIGN`].
pub fn meyer_via_graphs(alpha: &SpMat, beta: &SpMat) -> Result<i64> {
    same_genus(alpha, beta)?;
    let g = alpha.genus();
    let index = wall_maslov(
        &graph_lagrangian(&SpMat::identity(g)),
        &graph_lagrangian(alpha),
        &graph_lagrangian(&alpha.mul(beta)),
    )?;
    Ok(GRAPH_ROUTE_SIGN * index)
}

/// `τ(L, αL, αβL)`; `L` defaults to `span{v_1, ..., v_g}`.
pub fn maslov_cocycle(alpha: &SpMat, beta: &SpMat, l: Option<&Lagrangian>) -> Result<i64> {
    same_genus(alpha, beta)?;
    let g = alpha.genus();
    let default;
    let l = match l {
        Some(l) if l.genus() != g => {
            return Err(Error::invalid(format!("lagrangian of genus {} for matrices of genus {g}", l.genus())))
        }
        Some(l) => l,
        None => {
            default = Lagrangian::standard(g);
            &default
        }
    };
    wall_maslov(l, &l.image(alpha)?, &l.image(&alpha.mul(beta))?)
}

/// `τ(a,b) + τ(ab,c) = τ(b,c) + τ(a,bc)`, exactly.
pub fn check_cocycle_identity<C: Cocycle + ?Sized>(tau: &C, a: &SpMat, b: &SpMat, c: &SpMat) -> Result<bool> {
    let ab = a.try_mul(b)?;
    let bc = b.try_mul(c)?;
    Ok(tau.eval(a, b)? + tau.eval(&ab, c)? == tau.eval(b, c)? + tau.eval(a, &bc)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::random_symplectic;

    #[test]
    fn meyer_examples() {
        let j = SpMat::quarter_turn();
        let a = random_symplectic(2, 6, 11);
        let b = random_symplectic(2, 6, 12);
        assert_eq!(meyer_cocycle(&SpMat::identity(2), &b).unwrap(), 0);
        assert_eq!(meyer_cocycle(&a, &a.inverse()).unwrap(), 0);
        assert_eq!(meyer_cocycle(&j, &j).unwrap(), -2);
        assert_eq!(meyer_via_graphs(&j, &j).unwrap(), -2);
        assert_eq!(meyer_via_graphs(&SpMat::identity(1), &SpMat::identity(1)).unwrap(), 0);
        assert!(meyer_cocycle(&j, &a).is_err());
    }

    #[test]
    fn maslov_examples() {
        let j = SpMat::quarter_turn();
        let a = random_symplectic(2, 7, 3);
        assert_eq!(maslov_cocycle(&a, &SpMat::identity(2), None).unwrap(), 0);
        assert_eq!(maslov_cocycle(&j, &j, None).unwrap(), 0);
        let b = random_symplectic(2, 7, 4);
        let other = Lagrangian::standard(2).image(&random_symplectic(2, 9, 5)).unwrap();
        assert_eq!(maslov_cocycle(&a, &b, None).unwrap(), maslov_cocycle(&a, &b, Some(&other)).unwrap());
        assert!(maslov_cocycle(&j, &j, Some(&Lagrangian::standard(2))).is_err());
    }

    #[test]
    fn zero_cocycle_identity() {
        let a = random_symplectic(1, 4, 1);
        let b = random_symplectic(1, 4, 2);
        let c = random_symplectic(1, 4, 3);
        assert!(check_cocycle_identity(&ZeroCocycle, &a, &b, &c).unwrap());
        assert!(check_cocycle_identity(&MeyerCocycle, &a, &b, &c).unwrap());
        assert!(check_cocycle_identity(&MaslovCocycle::default(), &a, &b, &c).unwrap());
    }
}
