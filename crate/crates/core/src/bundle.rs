//! Surface bundle monodromies, cocycle-twisted central extensions and
//! bundle signatures.
//!
//! A bundle `Σ_g → E → Σ_h` is recorded by the images `(α_i, β_i)` of the
//! standard generators of `π_1(Σ_h)` in `Sp(2g, Z)`. It closes up over the
//! closed surface iff the relator `[α_1, β_1] ⋯ [α_h, β_h]` is the identity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::meyer::{Cocycle, CocycleKind, MeyerCocycle};
use crate::rng::Lcg;
use crate::symplectic::{commutator, embed_stabilize, random_word, same_genus, transvection_alphabet, SpMat};
use crate::Mat;

/// Coefficient group `Z` (modulus 0) or `Z/N` for `N >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoeffGroup {
    modulus: u32,
}

impl CoeffGroup {
    pub const INTEGERS: CoeffGroup = CoeffGroup { modulus: 0 };

    pub fn new(modulus: u32) -> Result<Self> {
        if modulus == 1 {
            return Err(Error::invalid("coefficient modulus must be 0 (integers) or at least 2"));
        }
        Ok(CoeffGroup { modulus })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Normal form: unchanged over `Z`, least residue in `[0, N)` otherwise.
    pub fn reduce(&self, x: i64) -> i64 {
        if self.modulus == 0 {
            x
        } else {
            x.rem_euclid(i64::from(self.modulus))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtContext {
    pub cocycle: CocycleKind,
    pub coeff: CoeffGroup,
}

/// An element `(m, a)` of the central extension `A ×_τ Sp(2g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    pub decoration: i64,
    pub elem: SpMat,
    pub context: ExtContext,
}

/// The group `A ×_τ Sp(2g)` with `(m, a)(n, b) = (m + n + τ(a, b), ab)`.
#[derive(Clone, Debug)]
pub struct Extension<C> {
    cocycle: C,
    coeff: CoeffGroup,
}

impl<C: Cocycle> Extension<C> {
    pub fn new(cocycle: C, coeff: CoeffGroup) -> Self {
        Extension { cocycle, coeff }
    }

    pub fn context(&self) -> ExtContext {
        ExtContext { cocycle: self.cocycle.kind(), coeff: self.coeff }
    }

    pub fn cocycle(&self) -> &C {
        &self.cocycle
    }

    fn check(&self, x: &ExtElement) -> Result<()> {
        if x.context != self.context() {
            return Err(Error::invalid("extension element from a different context"));
        }
        Ok(())
    }

    pub fn element(&self, decoration: i64, elem: SpMat) -> ExtElement {
        ExtElement { decoration: self.coeff.reduce(decoration), elem, context: self.context() }
    }

    /// `(0, a)`.
    pub fn lift(&self, elem: &SpMat) -> ExtElement {
        self.element(0, elem.clone())
    }

    pub fn mul(&self, x: &ExtElement, y: &ExtElement) -> Result<ExtElement> {
        self.check(x)?;
        self.check(y)?;
        let tau = self.cocycle.eval(&x.elem, &y.elem)?;
        Ok(self.element(x.decoration + y.decoration + tau, x.elem.try_mul(&y.elem)?))
    }

    /// `(-τ(1, 1), 1)`; the cocycle identity forces `τ(x, 1) = τ(1, x) = τ(1, 1)`.
    pub fn identity(&self, g: usize) -> Result<ExtElement> {
        let one = SpMat::identity(g);
        let t11 = self.cocycle.eval(&one, &one)?;
        Ok(self.element(-t11, one))
    }

    pub fn inv(&self, x: &ExtElement) -> Result<ExtElement> {
        self.check(x)?;
        let g = x.elem.genus();
        let one = SpMat::identity(g);
        let inv = x.elem.inverse();
        let t11 = self.cocycle.eval(&one, &one)?;
        let t = self.cocycle.eval(&x.elem, &inv)?;
        Ok(self.element(-x.decoration - t - t11, inv))
    }

    pub fn commutator(&self, x: &ExtElement, y: &ExtElement) -> Result<ExtElement> {
        let xy = self.mul(x, y)?;
        let xyx = self.mul(&xy, &self.inv(x)?)?;
        self.mul(&xyx, &self.inv(y)?)
    }

    /// Left-to-right product; the identity for an empty slice.
    pub fn product<'a>(&self, g: usize, xs: impl IntoIterator<Item = &'a ExtElement>) -> Result<ExtElement> {
        let mut acc = self.identity(g)?;
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }
}

/// Fiber genus `g`, base genus `h = pairs.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monodromy {
    fiber_genus: usize,
    pairs: Vec<(SpMat, SpMat)>,
}

impl Monodromy {
    pub fn new(pairs: Vec<(SpMat, SpMat)>) -> Result<Self> {
        let Some(first) = pairs.first() else {
            return Err(Error::invalid("monodromy needs base genus h >= 1"));
        };
        let g = first.0.genus();
        for (a, b) in &pairs {
            if a.genus() != g || b.genus() != g {
                return Err(Error::invalid("all monodromy matrices must share the fiber genus"));
            }
        }
        Ok(Monodromy { fiber_genus: g, pairs })
    }

    pub fn fiber_genus(&self) -> usize {
        self.fiber_genus
    }

    pub fn base_genus(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(SpMat, SpMat)] {
        &self.pairs
    }

    /// Commutators `γ_i = [α_i, β_i]`.
    pub fn commutators(&self) -> Vec<SpMat> {
        self.pairs.iter().map(|(a, b)| commutator(a, b).expect("same genus")).collect()
    }

    pub fn is_closed(&self) -> bool {
        relator(self).is_identity()
    }

    /// Juxtaposes the generator lists; closed if both parts are.
    pub fn concat(&self, other: &Monodromy) -> Result<Monodromy> {
        if other.fiber_genus != self.fiber_genus {
            return Err(Error::invalid("fiber genus mismatch"));
        }
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        Ok(Monodromy { fiber_genus: self.fiber_genus, pairs })
    }

    /// Conjugates every generator by `gamma`; preserves closedness.
    pub fn conjugate(&self, gamma: &SpMat) -> Result<Monodromy> {
        let gi = gamma.inverse();
        let pairs = self
            .pairs
            .iter()
            .map(|(a, b)| Ok((gamma.try_mul(a)?.mul(&gi), gamma.try_mul(b)?.mul(&gi))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monodromy { fiber_genus: self.fiber_genus, pairs })
    }

    pub fn stabilize(&self, target: usize) -> Result<Monodromy> {
        let pairs = self
            .pairs
            .iter()
            .map(|(a, b)| Ok((embed_stabilize(a, target)?, embed_stabilize(b, target)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monodromy { fiber_genus: target, pairs })
    }

    /// True iff every matrix is integral and congruent to `I` mod `n`.
    pub fn all_in_congruence(&self, n: u32) -> bool {
        self.pairs.iter().all(|(a, b)| {
            crate::congruence::in_principal_congruence(a, n) && crate::congruence::in_principal_congruence(b, n)
        })
    }
}

/// `∏ [α_i, β_i]`.
pub fn relator(m: &Monodromy) -> SpMat {
    m.commutators().iter().fold(SpMat::identity(m.fiber_genus), |acc, c| acc.mul(c))
}

fn require_closed(m: &Monodromy) -> Result<()> {
    if !m.is_closed() {
        return Err(Error::Precondition("monodromy relator is not the identity".into()));
    }
    Ok(())
}

/// Novikov-additivity sum over the building blocks of the base surface:
/// `σ(E) = -Σ_i d_i - Σ_{i<h} τ_g(γ_1⋯γ_i, γ_{i+1})` with `γ_i = [α_i, β_i]`
/// and the one-holed-torus term
/// `d_i = τ_g(α_i, β_i) + τ_g(α_iβ_i, α_i^{-1}) + τ_g(α_iβ_iα_i^{-1}, β_i^{-1})`.
///
/// With `open = true` the relator may be nontrivial and the value is the
/// signature of the bundle over the bounded surface `Σ_{h,1}`.
pub fn bundle_signature(m: &Monodromy, open: bool) -> Result<i64> {
    if !open {
        require_closed(m)?;
    }
    let tau = MeyerCocycle;
    let mut sigma = 0;
    let mut gammas = Vec::with_capacity(m.pairs.len());
    for (u, v) in &m.pairs {
        let uv = u.mul(v);
        let uvu = uv.mul(&u.inverse());
        sigma -= tau.eval(u, v)? + tau.eval(&uv, &u.inverse())? + tau.eval(&uvu, &v.inverse())?;
        gammas.push(uvu.mul(&v.inverse()));
    }
    let mut prefix = gammas[0].clone();
    for gamma in &gammas[1..] {
        sigma -= tau.eval(&prefix, gamma)?;
        prefix = prefix.mul(gamma);
    }
    Ok(sigma)
}

/// `-σ(E)` is the decoration of `(0,u_1)(0,v_1)(0,u_1^{-1})(0,v_1^{-1})⋯`
/// in `Z ×_{τ_g} Sp(2g, Z)`.
pub fn bundle_signature_lifts(m: &Monodromy) -> Result<i64> {
    let ext = Extension::new(MeyerCocycle, CoeffGroup::INTEGERS);
    let mut lifts = Vec::with_capacity(4 * m.base_genus());
    for (u, v) in &m.pairs {
        lifts.push(ext.lift(u));
        lifts.push(ext.lift(v));
        lifts.push(ext.lift(&u.inverse()));
        lifts.push(ext.lift(&v.inverse()));
    }
    let total = ext.product(m.fiber_genus, &lifts)?;
    if !total.elem.is_identity() {
        return Err(Error::Precondition("product of lifts does not lie over the identity".into()));
    }
    Ok(-total.decoration)
}

/// `<χ^*[τ], [Σ_h]> ∈ A` as the decoration of `∏ [(0, α_i), (0, β_i)]`
/// in `A ×_τ Sp(2g)`.
pub fn evaluate_class<C: Cocycle>(tau: C, m: &Monodromy, coeff: CoeffGroup) -> Result<i64> {
    require_closed(m)?;
    let ext = Extension::new(tau, coeff);
    let mut acc = ext.identity(m.fiber_genus)?;
    for (a, b) in &m.pairs {
        let c = ext.commutator(&ext.lift(a), &ext.lift(b))?;
        acc = ext.mul(&acc, &c)?;
    }
    debug_assert!(acc.elem.is_identity());
    let base = ext.identity(m.fiber_genus)?;
    Ok(coeff.reduce(acc.decoration - base.decoration))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureMod {
    pub modulus: u32,
    pub residue: i64,
    /// `σ/4 mod 2` when the modulus is 8.
    pub quarter_mod2: Option<i64>,
}

/// `σ(E) mod N` for `N ∈ {2, 4, 8}`. Eight is the largest modulus for which
/// the residue is governed by a finite quotient of `Sp(2g, Z)`.
pub fn signature_mod(m: &Monodromy, n: u32) -> Result<SignatureMod> {
    if !matches!(n, 2 | 4 | 8) {
        return Err(Error::invalid(format!(
            "modulus {n} unsupported: finite-quotient signature information exists only for N = 2, 4, 8"
        )));
    }
    let sigma = bundle_signature(m, false)?;
    let residue = sigma.rem_euclid(i64::from(n));
    let quarter_mod2 = (n == 8).then(|| (sigma.div_euclid(4)).rem_euclid(2));
    Ok(SignatureMod { modulus: n, residue, quarter_mod2 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleReport {
    pub sigma: i64,
    pub sigma_mod4: i64,
    pub sigma_mod8: i64,
    pub closed: bool,
}

pub fn bundle_report(m: &Monodromy, open: bool) -> Result<BundleReport> {
    let closed = m.is_closed();
    let sigma = bundle_signature(m, open)?;
    Ok(BundleReport { sigma, sigma_mod4: sigma.rem_euclid(4), sigma_mod8: sigma.rem_euclid(8), closed })
}

/// Closed monodromy `(α, β), (β, α)`: the relator is `[α,β][β,α] = 1`.
pub fn swap_block(alpha: &SpMat, beta: &SpMat) -> Result<Monodromy> {
    same_genus(alpha, beta)?;
    Monodromy::new(vec![(alpha.clone(), beta.clone()), (beta.clone(), alpha.clone())])
}

/// `blocks` concatenated swap blocks with random words of length
/// `word_len` in the transvection alphabet with coefficient `coeff`
/// (coefficient 4 keeps every matrix in the level-4 congruence subgroup).
pub fn random_swap_family(g: usize, blocks: usize, word_len: usize, coeff: i64, rng: &mut Lcg) -> Monodromy {
    let alphabet = transvection_alphabet(g, coeff);
    let mut pairs = Vec::with_capacity(2 * blocks.max(1));
    for _ in 0..blocks.max(1) {
        let a = random_word(&alphabet, g, word_len, rng);
        let b = random_word(&alphabet, g, word_len, rng);
        pairs.push((a.clone(), b.clone()));
        pairs.push((b, a));
    }
    Monodromy { fiber_genus: g, pairs }
}

/// A genus-2 pair with `[α, β] = -I`: `α` swaps the two hyperbolic pairs
/// and `β` is a quarter turn on the first pair and its inverse on the
/// second. Relators built from it close up because `(-I)^2 = I`.
pub fn involutive_commutator_pair() -> (SpMat, SpMat) {
    let alpha = Mat::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
    let beta = Mat::from_i64(&[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]);
    (SpMat::from_trusted(alpha), SpMat::from_trusted(beta))
}

/// Closed monodromy `(α, β), (α, β)` from [`involutive_commutator_pair`],
/// stabilized to genus `g >= 2` and conjugated by a random word. Unlike the
/// swap family its relator is not trivial in the free group.
pub fn random_involutive_family(g: usize, word_len: usize, rng: &mut Lcg) -> Result<Monodromy> {
    if g < 2 {
        return Err(Error::invalid("the involutive commutator family needs fiber genus >= 2"));
    }
    let (a, b) = involutive_commutator_pair();
    let base = Monodromy::new(vec![(a.clone(), b.clone()), (a, b)])?.stabilize(g)?;
    let gamma = random_word(&transvection_alphabet(g, 1), g, word_len, rng);
    base.conjugate(&gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::random_symplectic;

    fn t() -> SpMat {
        SpMat::from_i64(&[&[1, 1], &[0, 1]]).unwrap()
    }

    #[test]
    fn coeff_group() {
        assert!(CoeffGroup::new(1).is_err());
        assert_eq!(CoeffGroup::new(8).unwrap().reduce(-3), 5);
        assert_eq!(CoeffGroup::INTEGERS.reduce(-3), -3);
    }

    #[test]
    fn extension_examples() {
        let ext = Extension::new(MeyerCocycle, CoeffGroup::INTEGERS);
        let j = SpMat::quarter_turn();
        let beta = random_symplectic(1, 5, 8);
        let one = ext.identity(1).unwrap();
        assert_eq!(one, ext.lift(&SpMat::identity(1)));
        assert_eq!(ext.mul(&one, &ext.lift(&beta)).unwrap(), ext.lift(&beta));
        let jj = ext.mul(&ext.lift(&j), &ext.lift(&j)).unwrap();
        assert_eq!((jj.decoration, jj.elem), (-2, SpMat::identity(1).neg()));
        let x = ext.lift(&beta);
        assert_eq!(ext.mul(&ext.inv(&x).unwrap(), &x).unwrap(), one);

        let other = Extension::new(crate::meyer::ZeroCocycle, CoeffGroup::INTEGERS);
        assert!(ext.mul(&x, &other.lift(&beta)).is_err());
        let mod8 = Extension::new(MeyerCocycle, CoeffGroup::new(8).unwrap());
        assert!(ext.mul(&x, &mod8.lift(&beta)).is_err());
    }

    #[test]
    fn relator_examples() {
        let a = random_symplectic(2, 5, 1);
        let b = random_symplectic(2, 5, 2);
        assert!(relator(&swap_block(&a, &b).unwrap()).is_identity());
        let m = Monodromy::new(vec![(a.clone(), a.pow(3))]).unwrap();
        assert!(m.is_closed());
        let jt = Monodromy::new(vec![(SpMat::quarter_turn(), t())]).unwrap();
        assert_eq!(relator(&jt), commutator(&SpMat::quarter_turn(), &t()).unwrap());
        assert!(!jt.is_closed());
        assert!(Monodromy::new(vec![]).is_err());
    }

    #[test]
    fn involutive_pair() {
        let (a, b) = involutive_commutator_pair();
        assert_eq!(commutator(&a, &b).unwrap(), SpMat::identity(2).neg());
        let mut rng = Lcg::new(3);
        let m = random_involutive_family(3, 6, &mut rng).unwrap();
        assert!(m.is_closed());
        assert!(random_involutive_family(1, 6, &mut rng).is_err());
    }

    #[test]
    fn signature_examples() {
        let m = swap_block(&SpMat::quarter_turn(), &t()).unwrap();
        assert_eq!(bundle_signature(&m, false).unwrap(), 0);
        assert_eq!(bundle_signature_lifts(&m).unwrap(), 0);
        let a = random_symplectic(3, 6, 4);
        let aa = Monodromy::new(vec![(a.clone(), a)]).unwrap();
        assert_eq!(bundle_signature(&aa, false).unwrap(), 0);
        assert_eq!(bundle_signature_lifts(&aa).unwrap(), 0);

        let open = Monodromy::new(vec![(SpMat::quarter_turn(), t())]).unwrap();
        assert!(matches!(bundle_signature(&open, false), Err(Error::Precondition(_))));
        assert!(bundle_signature(&open, true).is_ok());
        assert!(matches!(bundle_signature_lifts(&open), Err(Error::Precondition(_))));
    }

    #[test]
    fn signature_mod_examples() {
        let m = swap_block(&random_symplectic(2, 5, 1), &random_symplectic(2, 5, 2)).unwrap();
        assert_eq!(signature_mod(&m, 4).unwrap().residue, 0);
        let r8 = signature_mod(&m, 8).unwrap();
        assert_eq!((r8.residue, r8.quarter_mod2), (0, Some(0)));
        assert!(signature_mod(&m, 3).is_err());
        assert!(signature_mod(&m, 16).is_err());
    }

    #[test]
    fn class_examples() {
        let m = swap_block(&random_symplectic(2, 5, 5), &random_symplectic(2, 5, 6)).unwrap();
        assert_eq!(evaluate_class(crate::meyer::ZeroCocycle, &m, CoeffGroup::INTEGERS).unwrap(), 0);
        let sigma = bundle_signature(&m, false).unwrap();
        assert_eq!(evaluate_class(MeyerCocycle, &m, CoeffGroup::INTEGERS).unwrap(), -sigma);
    }
}
