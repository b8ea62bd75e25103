//! Symplectic matrices over `Z/N`, the level-2 and level-4 subgroups, and
//! breadth-first enumeration of small finite symplectic groups.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use indexmap::IndexSet;
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rational::{int, residue};
use crate::symplectic::{transvection_alphabet, SpMat};

/// Default element budget for [`closure_bfs`].
pub const DEFAULT_BUDGET: usize = 2_000_000;

const CACHE_MAGIC: &[u8; 4] = b"SPGT";
const CACHE_VERSION: u32 = 1;

/// A `2g x 2g` matrix with entries in `[0, N)`, block basis `e_1..e_g, f_1..f_g`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMat {
    genus: usize,
    modulus: u32,
    entries: Vec<u32>,
}

impl ModMat {
    /// Reduces `entries` (row-major, `4g^2` of them) modulo `modulus`.
    pub fn new(genus: usize, modulus: u32, entries: &[i64]) -> Result<Self> {
        check_modulus(modulus)?;
        let n = 2 * genus;
        if entries.len() != n * n {
            return Err(Error::invalid(format!("expected {} entries for genus {genus}, got {}", n * n, entries.len())));
        }
        let m = i64::from(modulus);
        let entries = entries.iter().map(|&x| x.rem_euclid(m) as u32).collect();
        Ok(ModMat { genus, modulus, entries })
    }

    pub fn identity(genus: usize, modulus: u32) -> Self {
        let n = 2 * genus;
        let entries = (0..n * n).map(|k| u32::from(k / n == k % n) % modulus).collect();
        ModMat { genus, modulus, entries }
    }

    /// The standard form `[[0, I], [-I, 0]]` reduced mod `N`.
    pub fn form(genus: usize, modulus: u32) -> Self {
        let n = 2 * genus;
        let mut entries = vec![0; n * n];
        for i in 0..genus {
            entries[i * n + genus + i] = 1 % modulus;
            entries[(genus + i) * n + i] = modulus - 1;
        }
        ModMat { genus, modulus, entries }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim() + j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == ModMat::identity(self.genus, self.modulus)
    }

    fn compatible(&self, rhs: &ModMat) -> Result<()> {
        if self.genus != rhs.genus || self.modulus != rhs.modulus {
            return Err(Error::invalid(format!(
                "mixing genus {} mod {} with genus {} mod {}",
                self.genus, self.modulus, rhs.genus, rhs.modulus
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, rhs: &ModMat) -> Result<ModMat> {
        self.compatible(rhs)?;
        Ok(self.mul(rhs))
    }

    /// Panics on mismatched genus or modulus; see [`ModMat::try_mul`].
    pub fn mul(&self, rhs: &ModMat) -> ModMat {
        assert!(self.genus == rhs.genus && self.modulus == rhs.modulus, "ModMat shape mismatch");
        let n = self.dim();
        let m = u64::from(self.modulus);
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += u64::from(self.entries[i * n + k]) * u64::from(rhs.entries[k * n + j]);
                }
                entries[i * n + j] = (acc % m) as u32;
            }
        }
        ModMat { genus: self.genus, modulus: self.modulus, entries }
    }

    pub fn transpose(&self) -> ModMat {
        let n = self.dim();
        let entries = (0..n * n).map(|k| self.entries[(k % n) * n + k / n]).collect();
        ModMat { genus: self.genus, modulus: self.modulus, entries }
    }

    fn neg(&self) -> ModMat {
        let m = self.modulus;
        let entries = self.entries.iter().map(|&x| (m - x) % m).collect();
        ModMat { genus: self.genus, modulus: m, entries }
    }

    /// `M^T J M == J` mod `N`.
    pub fn is_symplectic(&self) -> bool {
        let j = ModMat::form(self.genus, self.modulus);
        self.transpose().mul(&j).mul(self) == j
    }

    /// `-J M^T J`, the inverse of a symplectic matrix.
    pub fn inverse(&self) -> ModMat {
        let j = ModMat::form(self.genus, self.modulus);
        j.mul(&self.transpose()).mul(&j).neg()
    }

    pub fn commutator(&self, rhs: &ModMat) -> ModMat {
        self.mul(rhs).mul(&self.inverse()).mul(&rhs.inverse())
    }

    /// Reduction to a divisor of the modulus.
    pub fn reduce(&self, modulus: u32) -> Result<ModMat> {
        check_modulus(modulus)?;
        if !self.modulus.is_multiple_of(modulus) {
            return Err(Error::invalid(format!("{modulus} does not divide {}", self.modulus)));
        }
        let entries = self.entries.iter().map(|&x| x % modulus).collect();
        Ok(ModMat { genus: self.genus, modulus, entries })
    }

    fn width(modulus: u32) -> usize {
        if modulus <= 256 {
            1
        } else {
            4
        }
    }

    /// Fixed-width row-major residues: one byte each for `N <= 256`,
    /// four little-endian bytes otherwise.
    pub fn encode(&self) -> Vec<u8> {
        if ModMat::width(self.modulus) == 1 {
            self.entries.iter().map(|&x| x as u8).collect()
        } else {
            self.entries.iter().flat_map(|x| x.to_le_bytes()).collect()
        }
    }

    pub fn decode(genus: usize, modulus: u32, bytes: &[u8]) -> Result<ModMat> {
        check_modulus(modulus)?;
        let n = 2 * genus;
        let w = ModMat::width(modulus);
        if bytes.len() != n * n * w {
            return Err(Error::Parse(format!("encoded matrix has {} bytes, expected {}", bytes.len(), n * n * w)));
        }
        let entries: Vec<u32> = if w == 1 {
            bytes.iter().map(|&b| u32::from(b)).collect()
        } else {
            bytes.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect()
        };
        if entries.iter().any(|&x| x >= modulus) {
            return Err(Error::Parse("encoded residue out of range".into()));
        }
        Ok(ModMat { genus, modulus, entries })
    }

    /// Entries as a rational matrix with representatives in `[0, N)`.
    pub fn to_mat(&self) -> Mat {
        let n = self.dim();
        Mat::from_fn(n, n, |i, j| int(i64::from(self.get(i, j))))
    }
}

impl fmt::Debug for ModMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        write!(f, "Sp{}/{}[", n, self.modulus)?;
        for i in 0..n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

fn check_modulus(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!("modulus must be at least 2, got {n}")));
    }
    Ok(())
}

pub fn reduce_mod(m: &SpMat, n: u32) -> Result<ModMat> {
    check_modulus(n)?;
    let entries = m
        .mat()
        .entries()
        .iter()
        .map(|x| residue(x, n).ok_or_else(|| Error::invalid("cannot reduce a non-integral matrix")))
        .collect::<Result<Vec<u32>>>()?;
    Ok(ModMat { genus: m.genus(), modulus: n, entries })
}

/// `M ≡ I (mod N)`. Non-integral matrices are never in a congruence subgroup.
pub fn in_principal_congruence(m: &SpMat, n: u32) -> bool {
    if n <= 1 {
        return m.is_integral();
    }
    reduce_mod(m, n).map(|r| r.is_identity()).unwrap_or(false)
}

/// Membership in the level-4 parity subgroup of `Sp(2g, Z/4)`: writing
/// `M = [[I + 2a, 2b], [2c, I + 2d]]`, the diagonals of `b` and `c` and
/// the trace of `a` are even.
pub fn in_y(m: &ModMat) -> Result<bool> {
    if m.modulus != 4 {
        return Err(Error::invalid(format!("parity subgroup lives in Sp(2g, Z/4), got modulus {}", m.modulus)));
    }
    let g = m.genus;
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            let expect = u32::from(i == j);
            if m.get(i, j) % 2 != expect {
                return Ok(false);
            }
        }
    }
    // entries of b, c on the diagonal are 2 * (even) = 0 mod 4
    for i in 0..g {
        if m.get(i, g + i) != 0 || m.get(g + i, i) != 0 {
            return Ok(false);
        }
    }
    let trace_a: u32 = (0..g).map(|i| (m.get(i, i) + 3) % 4 / 2).sum();
    Ok(trace_a.is_multiple_of(2))
}

/// The same conditions as [`in_y`] for an integral symplectic matrix; they
/// only see its residue mod 4.
pub fn in_k(m: &SpMat) -> bool {
    match reduce_mod(m, 4) {
        Ok(r) => in_y(&r).unwrap_or(false),
        Err(_) => false,
    }
}

/// `M ≡ I (mod 2)` for a matrix over `Z/N` with even `N`.
pub fn is_identity_mod2(m: &ModMat) -> bool {
    m.modulus.is_multiple_of(2) && m.reduce(2).map(|r| r.is_identity()).unwrap_or(false)
}

/// Integral generators of the parity subgroup used for sampling:
/// `diag(A, A^{-T})` with `A = I + 2E_ij`, `[[I, B], [0, I]]` and its
/// transpose with `B = 2(E_ij + E_ji)` or `4E_ii`, and `diag(A, A)`
/// with `A = I - 2E_ii - 2E_jj`.
pub fn parity_generators(g: usize) -> Vec<SpMat> {
    let n = 2 * g;
    let mut out = Vec::new();
    let build = |f: &dyn Fn(&mut Vec<Vec<i64>>)| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        f(&mut m);
        let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
        SpMat::from_i64(&rows).expect("parity generator is symplectic")
    };
    for i in 0..g {
        for j in 0..g {
            if i != j {
                out.push(build(&|m| {
                    m[i][j] = 2;
                    m[g + j][g + i] = -2;
                }));
            }
        }
    }
    for i in 0..g {
        for j in i..g {
            let c = if i == j { 4 } else { 2 };
            out.push(build(&|m| {
                m[i][g + j] = c;
                m[j][g + i] = c;
            }));
            out.push(build(&|m| {
                m[g + i][j] = c;
                m[g + j][i] = c;
            }));
        }
    }
    for i in 0..g {
        for j in i + 1..g {
            out.push(build(&|m| {
                for k in [i, j] {
                    m[k][k] = -1;
                    m[g + k][g + k] = -1;
                }
            }));
        }
    }
    out
}

/// Which closed-form group order to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    SpMod2,
    SpMod4,
    H,
    Y,
    LieSpMod2,
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sp_mod2" => Ok(OrderKind::SpMod2),
            "sp_mod4" => Ok(OrderKind::SpMod4),
            "h" => Ok(OrderKind::H),
            "y" => Ok(OrderKind::Y),
            "lie_sp_mod2" => Ok(OrderKind::LieSpMod2),
            other => Err(Error::invalid(format!(
                "unknown group {other:?}; expected sp_mod2, sp_mod4, h, y or lie_sp_mod2"
            ))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrderKind::SpMod2 => "sp_mod2",
            OrderKind::SpMod4 => "sp_mod4",
            OrderKind::H => "h",
            OrderKind::Y => "y",
            OrderKind::LieSpMod2 => "lie_sp_mod2",
        };
        f.write_str(s)
    }
}

pub fn group_order_formula(g: usize, which: OrderKind) -> Result<BigUint> {
    if g == 0 {
        return Err(Error::invalid("genus must be at least 1"));
    }
    let two_pow = |e: usize| BigUint::one() << e;
    let prod: BigUint = (1..=g).map(|i| two_pow(2 * i) - BigUint::one()).product();
    Ok(match which {
        OrderKind::SpMod2 => two_pow(g * g) * prod,
        OrderKind::SpMod4 => two_pow(g * (3 * g + 1)) * prod,
        OrderKind::H => two_pow((g + 1) * (g + 1)) * prod,
        OrderKind::Y => two_pow((2 * g + 1) * (g - 1)),
        OrderKind::LieSpMod2 => two_pow(g * (2 * g + 1)),
    })
}

/// Coefficient-one transvection alphabet reduced mod `N`.
pub fn standard_generators(g: usize, n: u32) -> Result<Vec<ModMat>> {
    transvection_alphabet(g, 1).iter().map(|t| reduce_mod(t, n)).collect()
}

/// A finite subgroup of `Sp(2g, Z/N)` as a set of encoded elements in
/// breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct GroupTable {
    genus: usize,
    modulus: u32,
    generators: Vec<ModMat>,
    elements: IndexSet<Box<[u8]>>,
}

impl GroupTable {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generators(&self) -> &[ModMat] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &ModMat) -> bool {
        m.genus == self.genus && m.modulus == self.modulus && self.elements.contains(m.encode().as_slice())
    }

    fn decode(&self, bytes: &[u8]) -> ModMat {
        ModMat::decode(self.genus, self.modulus, bytes).expect("table entries are well formed")
    }

    pub fn iter(&self) -> impl Iterator<Item = ModMat> + '_ {
        self.elements.iter().map(|b| self.decode(b))
    }

    /// Writes the table with a versioned header keyed by genus, modulus and
    /// the generator hash.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut out = Vec::with_capacity(64 + self.elements.len() * 4 * self.genus * self.genus);
        out.extend_from_slice(CACHE_MAGIC);
        out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        out.extend_from_slice(&(self.genus as u32).to_le_bytes());
        out.extend_from_slice(&self.modulus.to_le_bytes());
        out.extend_from_slice(&generator_hash(&self.generators));
        out.extend_from_slice(&(self.generators.len() as u64).to_le_bytes());
        out.extend_from_slice(&(self.elements.len() as u64).to_le_bytes());
        for gen in &self.generators {
            out.extend_from_slice(&gen.encode());
        }
        for e in &self.elements {
            out.extend_from_slice(e);
        }
        std::fs::write(path, out)?;
        Ok(())
    }

    /// Loads a cache written by [`GroupTable::write_cache`], rejecting any
    /// file whose header does not match `(g, N, generators)`.
    pub fn read_cache(path: &Path, g: usize, n: u32, generators: &[ModMat]) -> Result<GroupTable> {
        let bytes = std::fs::read(path)?;
        let mut r = Reader { bytes: &bytes, pos: 0 };
        if r.take(4)? != CACHE_MAGIC {
            return Err(Error::Parse("not a group table cache".into()));
        }
        let version = r.u32()?;
        if version != CACHE_VERSION {
            return Err(Error::Parse(format!("cache version {version}, expected {CACHE_VERSION}")));
        }
        let (cg, cn) = (r.u32()? as usize, r.u32()?);
        if (cg, cn) != (g, n) {
            return Err(Error::Parse(format!("cache is for genus {cg} mod {cn}, wanted genus {g} mod {n}")));
        }
        if r.take(32)? != generator_hash(generators).as_slice() {
            return Err(Error::Parse("cache was built from a different generator set".into()));
        }
        let ngens = r.u64()? as usize;
        let count = r.u64()? as usize;
        let size = 4 * g * g * ModMat::width(n);
        let gens = (0..ngens).map(|_| ModMat::decode(g, n, r.take(size)?)).collect::<Result<Vec<_>>>()?;
        let mut elements = IndexSet::with_capacity(count);
        for _ in 0..count {
            let e = r.take(size)?;
            ModMat::decode(g, n, e)?;
            elements.insert(e.to_vec().into_boxed_slice());
        }
        if r.pos != bytes.len() {
            return Err(Error::Parse("trailing bytes in cache".into()));
        }
        Ok(GroupTable { genus: g, modulus: n, generators: gens, elements })
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(k).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Parse("truncated cache".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn u64(&mut self) -> Result<u64> {
        let mut a = [0u8; 8];
        a.copy_from_slice(self.take(8)?);
        Ok(u64::from_le_bytes(a))
    }
}

/// SHA-256 over the concatenated encodings of the generators.
pub fn generator_hash(generators: &[ModMat]) -> [u8; 32] {
    let mut h = Sha256::new();
    for gen in generators {
        h.update((gen.genus as u32).to_le_bytes());
        h.update(gen.modulus.to_le_bytes());
        h.update(gen.encode());
    }
    h.finalize().into()
}

/// Breadth-first closure of `generators` under right multiplication by the
/// generators and their inverses.
pub fn closure_bfs(g: usize, n: u32, generators: &[ModMat], budget: usize) -> Result<GroupTable> {
    check_modulus(n)?;
    for gen in generators {
        if gen.genus != g || gen.modulus != n {
            return Err(Error::invalid(format!("generator {gen:?} is not in genus {g} mod {n}")));
        }
        if !gen.is_symplectic() {
            return Err(Error::invalid(format!("generator {gen:?} is not symplectic mod {n}")));
        }
    }
    let mut steps: Vec<ModMat> = Vec::new();
    for gen in generators {
        for s in [gen.clone(), gen.inverse()] {
            if !s.is_identity() && !steps.contains(&s) {
                steps.push(s);
            }
        }
    }
    let mut elements: IndexSet<Box<[u8]>> = IndexSet::new();
    let id = ModMat::identity(g, n);
    elements.insert(id.encode().into_boxed_slice());
    let mut frontier = VecDeque::from([id]);
    while let Some(x) = frontier.pop_front() {
        for s in &steps {
            let y = x.mul(s);
            let key = y.encode().into_boxed_slice();
            if !elements.contains(&key) {
                if elements.len() >= budget {
                    return Err(Error::Budget { budget, reached: elements.len() });
                }
                elements.insert(key);
                frontier.push_back(y);
            }
        }
    }
    Ok(GroupTable { genus: g, modulus: n, generators: generators.to_vec(), elements })
}

/// [`closure_bfs`] backed by a cache file: a valid cache is loaded, a
/// missing or mismatched one is rebuilt and overwritten.
pub fn closure_bfs_cached(g: usize, n: u32, generators: &[ModMat], budget: usize, path: &Path) -> Result<GroupTable> {
    if let Ok(t) = GroupTable::read_cache(path, g, n, generators) {
        return Ok(t);
    }
    let t = closure_bfs(g, n, generators, budget)?;
    t.write_cache(path)?;
    Ok(t)
}

/// A subset of a [`GroupTable`], usually cut out by a predicate.
#[derive(Clone, Debug)]
pub struct Subset {
    genus: usize,
    modulus: u32,
    elements: IndexSet<Box<[u8]>>,
}

impl Subset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &ModMat) -> bool {
        m.genus == self.genus && m.modulus == self.modulus && self.elements.contains(m.encode().as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = ModMat> + '_ {
        self.elements.iter().map(|b| ModMat::decode(self.genus, self.modulus, b).expect("well formed"))
    }
}

pub fn subgroup_filter(tbl: &GroupTable, mut predicate: impl FnMut(&ModMat) -> bool) -> Subset {
    let elements = tbl.elements.iter().filter(|b| predicate(&tbl.decode(b))).cloned().collect();
    Subset { genus: tbl.genus, modulus: tbl.modulus, elements }
}

/// Conjugation by every generator of the table maps the subset into itself.
pub fn is_normal(tbl: &GroupTable, subset: &Subset) -> bool {
    tbl.generators.iter().all(|s| {
        let si = s.inverse();
        subset.iter().all(|x| subset.contains(&s.mul(&x).mul(&si)))
    })
}

/// All squares and all pairwise commutators are trivial.
pub fn is_elementary_abelian(subset: &Subset) -> bool {
    let elems: Vec<ModMat> = subset.iter().collect();
    elems.iter().all(|x| x.mul(x).is_identity())
        && elems.iter().enumerate().all(|(i, x)| elems[i + 1..].iter().all(|y| x.mul(y) == y.mul(x)))
}

/// Left cosets `xN` of a normal subset `N` inside a subset, each
/// represented by its smallest encoding.
#[derive(Clone, Debug)]
pub struct CosetQuotient {
    genus: usize,
    modulus: u32,
    normal: Vec<ModMat>,
    reps: IndexSet<Box<[u8]>>,
}

impl CosetQuotient {
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn canonical(&self, x: &ModMat) -> Box<[u8]> {
        self.normal.iter().map(|y| x.mul(y).encode().into_boxed_slice()).min().expect("normal subset contains 1")
    }

    pub fn representatives(&self) -> impl Iterator<Item = ModMat> + '_ {
        self.reps.iter().map(|b| ModMat::decode(self.genus, self.modulus, b).expect("well formed"))
    }

    /// Coset products stay inside the quotient, every coset squares to the
    /// trivial one and any two cosets commute.
    pub fn is_elementary_abelian(&self) -> bool {
        let one = self.canonical(&ModMat::identity(self.genus, self.modulus));
        let reps: Vec<ModMat> = self.representatives().collect();
        reps.iter().all(|x| {
            self.canonical(&x.mul(x)) == one
                && reps.iter().all(|y| {
                    self.reps.contains(&self.canonical(&x.mul(y))) && self.canonical(&x.commutator(y)) == one
                })
        })
    }
}

/// Counts the cosets of `normal` (which must contain the identity) in
/// the elements produced by `elems`.
pub fn coset_quotient<I>(elems: I, normal: &Subset) -> Result<CosetQuotient>
where
    I: IntoIterator<Item = ModMat>,
{
    let id = ModMat::identity(normal.genus, normal.modulus);
    if !normal.contains(&id) {
        return Err(Error::invalid("normal subset must contain the identity"));
    }
    let normal_elems: Vec<ModMat> = normal.iter().collect();
    let mut q = CosetQuotient { genus: normal.genus, modulus: normal.modulus, normal: normal_elems, reps: IndexSet::new() };
    let mut covered: std::collections::HashSet<Box<[u8]>> = std::collections::HashSet::new();
    for x in elems {
        if covered.contains(x.encode().as_slice()) {
            continue;
        }
        let coset: Vec<Box<[u8]>> = q.normal.iter().map(|y| x.mul(y).encode().into_boxed_slice()).collect();
        let rep = coset.iter().min().expect("nonempty").clone();
        covered.extend(coset);
        q.reps.insert(rep);
    }
    Ok(q)
}

/// One line of the order table export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderRow {
    pub g: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub formula_order: String,
    pub enumerated_order: usize,
}

pub fn orders_csv(rows: &[OrderRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// Enumerates `Sp(2g, Z/N)` and compares with the closed-form order.
pub fn order_row(g: usize, n: u32, budget: usize) -> Result<OrderRow> {
    let which = match n {
        2 => OrderKind::SpMod2,
        4 => OrderKind::SpMod4,
        _ => return Err(Error::invalid(format!("closed-form orders are known for N = 2, 4, not {n}"))),
    };
    let formula = group_order_formula(g, which)?;
    let tbl = closure_bfs(g, n, &standard_generators(g, n)?, budget)?;
    Ok(OrderRow { g, n, formula_order: formula.to_string(), enumerated_order: tbl.len() })
}

/// Order of the group named by `which`, found by enumeration inside
/// `Sp(2g, Z/2)` or `Sp(2g, Z/4)`.
pub fn enumerated_order(g: usize, which: OrderKind, budget: usize) -> Result<u128> {
    let n = if which == OrderKind::SpMod2 { 2 } else { 4 };
    let tbl = closure_bfs(g, n, &standard_generators(g, n)?, budget)?;
    Ok(match which {
        OrderKind::SpMod2 | OrderKind::SpMod4 => tbl.len() as u128,
        OrderKind::Y => subgroup_filter(&tbl, |m| in_y(m).unwrap_or(false)).len() as u128,
        OrderKind::LieSpMod2 => subgroup_filter(&tbl, is_identity_mod2).len() as u128,
        OrderKind::H => {
            let y = subgroup_filter(&tbl, |m| in_y(m).unwrap_or(false));
            coset_quotient(tbl.iter(), &y)?.order() as u128
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Lcg;
    use crate::symplectic::random_word;

    fn sp(rows: &[&[i64]]) -> SpMat {
        SpMat::from_i64(rows).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert!(reduce_mod(&SpMat::identity(2), 4).unwrap().is_identity());
        assert!(reduce_mod(&sp(&[&[1, 4], &[0, 1]]), 4).unwrap().is_identity());
        let j = reduce_mod(&SpMat::quarter_turn(), 2).unwrap();
        assert_eq!(j.entries(), &[0, 1, 1, 0]);
        assert!(j.is_symplectic());
        assert!(reduce_mod(&SpMat::identity(1), 1).is_err());
    }

    #[test]
    fn congruence_examples() {
        let m = sp(&[&[1, 4], &[0, 1]]);
        assert!(in_principal_congruence(&m, 4));
        assert!(!in_principal_congruence(&SpMat::quarter_turn(), 2));
        assert!(in_principal_congruence(&sp(&[&[1, 2], &[0, 1]]), 2));
        assert!(!in_principal_congruence(&sp(&[&[1, 2], &[0, 1]]), 4));
    }

    #[test]
    fn parity_examples() {
        assert!(in_k(&SpMat::identity(1)));
        assert!(!in_k(&sp(&[&[1, 2], &[0, 1]])));
        assert!(in_k(&sp(&[&[1, 4], &[0, 1]])));
        assert!(!in_k(&SpMat::quarter_turn()));
        // -I: a = -I has trace -g
        assert!(!in_k(&SpMat::identity(1).neg()));
        assert!(in_k(&SpMat::identity(2).neg()));
        for g in 1..=3 {
            assert!(parity_generators(g).iter().all(in_k));
        }
        assert!(in_y(&ModMat::identity(1, 2)).is_err());
    }

    #[test]
    fn order_formula_examples() {
        let o = |g, k| group_order_formula(g, k).unwrap().to_string();
        assert_eq!(o(1, OrderKind::SpMod2), "6");
        assert_eq!(o(1, OrderKind::SpMod4), "48");
        assert_eq!(o(1, OrderKind::H), "48");
        assert_eq!(o(1, OrderKind::Y), "1");
        assert_eq!(o(1, OrderKind::LieSpMod2), "8");
        assert_eq!(o(2, OrderKind::SpMod2), "720");
        assert_eq!(o(2, OrderKind::SpMod4), "737280");
        assert_eq!(o(2, OrderKind::H), "23040");
        assert_eq!(o(2, OrderKind::Y), "32");
        assert!(group_order_formula(0, OrderKind::Y).is_err());
        assert_eq!("lie_sp_mod2".parse::<OrderKind>().unwrap(), OrderKind::LieSpMod2);
    }

    #[test]
    fn closure_small() {
        let t = closure_bfs(1, 4, &[], DEFAULT_BUDGET).unwrap();
        assert_eq!(t.len(), 1);
        let s = reduce_mod(&SpMat::quarter_turn(), 2).unwrap();
        let tt = reduce_mod(&sp(&[&[1, 1], &[0, 1]]), 2).unwrap();
        assert_eq!(closure_bfs(1, 2, &[s, tt], DEFAULT_BUDGET).unwrap().len(), 6);
        let s = reduce_mod(&SpMat::quarter_turn(), 4).unwrap();
        let tt = reduce_mod(&sp(&[&[1, 1], &[0, 1]]), 4).unwrap();
        let tbl = closure_bfs(1, 4, &[s, tt], DEFAULT_BUDGET).unwrap();
        assert_eq!(tbl.len(), 48);
        assert!(tbl.iter().all(|m| m.is_symplectic()));
        assert!(matches!(closure_bfs(1, 4, tbl.generators(), 10), Err(Error::Budget { budget: 10, .. })));
        let bad = ModMat::new(1, 4, &[2, 0, 0, 1]).unwrap();
        assert!(closure_bfs(1, 4, &[bad], 100).is_err());
    }

    #[test]
    fn genus_one_structure() {
        let tbl = closure_bfs(1, 4, &standard_generators(1, 4).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(tbl.len(), 48);
        let y = subgroup_filter(&tbl, |m| in_y(m).unwrap());
        assert_eq!(y.len(), 1);
        assert!(is_normal(&tbl, &y));
        let gamma2 = subgroup_filter(&tbl, is_identity_mod2);
        assert_eq!(gamma2.len(), 8);
        let q = coset_quotient(gamma2.iter(), &y).unwrap();
        assert_eq!(q.order(), 8);
        assert!(q.is_elementary_abelian());
        assert!(is_elementary_abelian(&gamma2));
        assert_eq!(coset_quotient(tbl.iter(), &y).unwrap().order(), 48);
    }

    #[test]
    fn not_normal_detected() {
        let tbl = closure_bfs(1, 2, &standard_generators(1, 2).unwrap(), DEFAULT_BUDGET).unwrap();
        let t = reduce_mod(&sp(&[&[1, 1], &[0, 1]]), 2).unwrap();
        let sub = subgroup_filter(&tbl, |m| m.is_identity() || *m == t);
        assert!(!is_normal(&tbl, &sub));
        assert!(is_elementary_abelian(&sub));
    }

    #[test]
    fn encoding_round_trip() {
        let m = reduce_mod(&crate::symplectic::random_symplectic(2, 6, 3), 1000).unwrap();
        assert_eq!(m.encode().len(), 64);
        assert_eq!(ModMat::decode(2, 1000, &m.encode()).unwrap(), m);
        let m4 = m.reduce(4).unwrap();
        assert_eq!(ModMat::decode(2, 4, &m4.encode()).unwrap(), m4);
        assert!(ModMat::decode(2, 4, &[0; 3]).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sp2_4.bin");
        let gens = standard_generators(1, 4).unwrap();
        let built = closure_bfs_cached(1, 4, &gens, DEFAULT_BUDGET, &path).unwrap();
        let loaded = GroupTable::read_cache(&path, 1, 4, &gens).unwrap();
        assert_eq!(loaded.len(), built.len());
        assert!(built.iter().zip(loaded.iter()).all(|(a, b)| a == b));
        assert!(GroupTable::read_cache(&path, 1, 2, &gens).is_err());
        assert!(GroupTable::read_cache(&path, 1, 4, &gens[..2]).is_err());
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[4] = 9;
        std::fs::write(&path, &bytes).unwrap();
        assert!(GroupTable::read_cache(&path, 1, 4, &gens).is_err());
        // a stale cache is rebuilt
        assert_eq!(closure_bfs_cached(1, 4, &gens, DEFAULT_BUDGET, &path).unwrap().len(), 48);
    }

    #[test]
    fn csv_export() {
        let rows = vec![order_row(1, 2, DEFAULT_BUDGET).unwrap(), order_row(1, 4, DEFAULT_BUDGET).unwrap()];
        assert_eq!(orders_csv(&rows).unwrap(), "g,N,formula_order,enumerated_order\n1,2,6,6\n1,4,48,48\n");
    }

    #[test]
    fn parity_subgroup_is_conjugation_stable() {
        let mut rng = Lcg::new(17);
        for g in 1..=3 {
            let kgens = parity_generators(g);
            for _ in 0..20 {
                let k = random_word(&kgens, g, 6, &mut rng);
                let s = crate::symplectic::random_symplectic_with(g, 6, &mut rng);
                assert!(in_k(&s.mul(&k).mul(&s.inverse())));
            }
        }
    }
}
