//! Nice cochains and piecewise-constant cocycles on the discrete circle
//! `[0, 1)`, their covering numbers, and the genus-one closed forms.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{frac, fract, int, to_i64, Rat};
use crate::rng::Lcg;

/// The sawtooth `((x))`: `{x} - 1/2` off the integers, `0` on them.
pub fn dedekind(x: &Rat) -> Rat {
    if x.is_integer() {
        Rat::zero()
    } else {
        fract(x) - frac(1, 2)
    }
}

/// Sign of `sin(πx)`, computed from the parity of `⌊x⌋`.
pub fn sign_sin_pi(x: &Rat) -> i64 {
    if x.is_integer() {
        0
    } else if x.floor().to_integer() % 2 == num_bigint::BigInt::zero() {
        1
    } else {
        -1
    }
}

fn integral(r: Rat) -> i64 {
    to_i64(&r).expect("closed form is an integer")
}

/// `4(((a)) + ((b)) - ((a+b)))`, the genus-one Meyer cocycle on rotation
/// angles measured in turns.
pub fn tau1_closed(a: &Rat, b: &Rat) -> i64 {
    integral(int(4) * (dedekind(a) + dedekind(b) - dedekind(&(a + b))))
}

/// `2(((2a)) + ((2b)) - ((2a+2b)))`, the genus-one Maslov cocycle.
pub fn tau1prime_closed(a: &Rat, b: &Rat) -> i64 {
    let two = int(2);
    let (a2, b2) = (&two * a, &two * b);
    integral(&two * (dedekind(&a2) + dedekind(&b2) - dedekind(&(&a2 + &b2))))
}

/// Index `i` with `breaks[i] <= x < breaks[i+1]`; `breaks[0] <= x` is assumed.
fn locate(breaks: &[Rat], x: &Rat) -> usize {
    breaks.partition_point(|b| b <= x) - 1
}

fn check_breaks(name: &str, breaks: &[Rat]) -> Result<()> {
    if breaks.first() != Some(&Rat::zero()) {
        return Err(Error::invalid(format!("{name} must start at 0")));
    }
    if breaks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!("{name} must be strictly increasing")));
    }
    if breaks.last().is_some_and(|b| *b >= Rat::one()) {
        return Err(Error::invalid(format!("{name} must lie in [0, 1)")));
    }
    Ok(())
}

/// A piecewise-constant integer function on `[0, 1)`, right-continuous:
/// `values[i]` on `[breaks[i], breaks[i+1])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceCochain {
    breaks: Vec<Rat>,
    values: Vec<i64>,
}

impl NiceCochain {
    pub fn new(breaks: Vec<Rat>, values: Vec<i64>) -> Result<Self> {
        check_breaks("cochain breakpoints", &breaks)?;
        if breaks.len() != values.len() {
            return Err(Error::invalid(format!("{} breakpoints but {} values", breaks.len(), values.len())));
        }
        Ok(NiceCochain { breaks, values })
    }

    pub fn constant(c: i64) -> Self {
        NiceCochain { breaks: vec![Rat::zero()], values: vec![c] }
    }

    /// `p` on `[0, 1/2)` and `q` on `[1/2, 1)`.
    pub fn two_step(p: i64, q: i64) -> Self {
        NiceCochain { breaks: vec![Rat::zero(), frac(1, 2)], values: vec![p, q] }
    }

    pub fn breaks(&self) -> &[Rat] {
        &self.breaks
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value at `x mod 1`.
    pub fn eval(&self, x: &Rat) -> i64 {
        self.values[locate(&self.breaks, &fract(x))]
    }

    /// Seeded cochain with `1..=max_breaks` breakpoints of denominator at
    /// most `max_den` and values in `[-5, 5]`.
    pub fn random(rng: &mut Lcg, max_breaks: usize, max_den: i64) -> Self {
        let k = 1 + rng.below(max_breaks.max(1) as u32) as usize;
        let mut breaks = vec![Rat::zero()];
        for _ in 1..k {
            let q = rng.range_i64(2, max_den.max(2));
            let p = rng.range_i64(1, q - 1);
            breaks.push(frac(p, q));
        }
        breaks.sort();
        breaks.dedup();
        let values = (0..breaks.len()).map(|_| rng.range_i64(-5, 5)).collect();
        NiceCochain { breaks, values }
    }
}

/// `δf(a, b) = f(a) + f(b) - f(a + b)`, all arguments mod 1.
pub fn coboundary_eval(f: &NiceCochain, a: &Rat, b: &Rat) -> i64 {
    f.eval(a) + f.eval(b) - f.eval(&(a + b))
}

/// The standard cocycle: `0` for `a + b < 1`, `1` otherwise (mod 1 inputs).
pub fn standard_cocycle(a: &Rat, b: &Rat) -> i64 {
    i64::from(fract(a) + fract(b) >= Rat::one())
}

/// A function on `[0, 1)²` constant on the cells of the arrangement cut by
/// `x = a_i`, `y = b_j` and `x + y = d` for the diagonal constants `d`.
/// Cell `(i, j, k)` is the part of `[a_i, a_{i+1}) × [b_j, b_{j+1})` in the
/// band `D_k <= x + y < D_{k+1}`, with `D = 0, diag.., 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseCocycle {
    a_breaks: Vec<Rat>,
    b_breaks: Vec<Rat>,
    diag: Vec<Rat>,
    cells: Vec<Option<i64>>,
}

/// One maximal diagonal segment between arrangement lines and its
/// contribution `(above - below) * length` to the covering number, the
/// length being measured along the `a` axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSegment {
    pub d: Rat,
    pub x0: Rat,
    pub x1: Rat,
    pub above: i64,
    pub below: i64,
}

impl DiagonalSegment {
    pub fn contribution(&self) -> Rat {
        int(self.above - self.below) * (&self.x1 - &self.x0)
    }
}

impl PiecewiseCocycle {
    fn bands(diag: &[Rat]) -> Vec<Rat> {
        let mut d = Vec::with_capacity(diag.len() + 2);
        d.push(Rat::zero());
        d.extend(diag.iter().cloned());
        d.push(int(2));
        d
    }

    fn ends(breaks: &[Rat]) -> Vec<Rat> {
        let mut v = breaks.to_vec();
        v.push(Rat::one());
        v
    }

    fn check_arrangement(a_breaks: &[Rat], b_breaks: &[Rat], diag: &[Rat]) -> Result<()> {
        check_breaks("a breakpoints", a_breaks)?;
        check_breaks("b breakpoints", b_breaks)?;
        if diag.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("diagonal constants must be strictly increasing"));
        }
        if diag.iter().any(|d| !d.is_positive() || *d >= int(2)) {
            return Err(Error::invalid("diagonal constants must lie in (0, 2)"));
        }
        Ok(())
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.b_breaks.len() + j) * (self.diag.len() + 1) + k
    }

    /// An interior point of cell `(i, j, k)`, or `None` if the cell is empty.
    fn interior_point(a: &[Rat], b: &[Rat], d: &[Rat], i: usize, j: usize, k: usize) -> Option<(Rat, Rat)> {
        let lo = (&a[i] + &b[j]).max(d[k].clone());
        let hi = (&a[i + 1] + &b[j + 1]).min(d[k + 1].clone());
        if lo >= hi {
            return None;
        }
        let s = (lo + hi) / int(2);
        let xlo = (&s - &b[j + 1]).max(a[i].clone());
        let xhi = (&s - &b[j]).min(a[i + 1].clone());
        let x = (xlo + xhi) / int(2);
        let y = &s - &x;
        Some((x, y))
    }

    fn from_parts(a_breaks: Vec<Rat>, b_breaks: Vec<Rat>, diag: Vec<Rat>, mut value: impl FnMut(usize, usize, usize, &Rat, &Rat) -> Result<i64>) -> Result<Self> {
        Self::check_arrangement(&a_breaks, &b_breaks, &diag)?;
        let (a, b, d) = (Self::ends(&a_breaks), Self::ends(&b_breaks), Self::bands(&diag));
        let mut cells = Vec::with_capacity(a_breaks.len() * b_breaks.len() * (diag.len() + 1));
        for i in 0..a_breaks.len() {
            for j in 0..b_breaks.len() {
                for k in 0..=diag.len() {
                    cells.push(match Self::interior_point(&a, &b, &d, i, j, k) {
                        Some((x, y)) => Some(value(i, j, k, &x, &y)?),
                        None => None,
                    });
                }
            }
        }
        Ok(PiecewiseCocycle { a_breaks, b_breaks, diag, cells })
    }

    /// Samples `f` at one interior point of every cell.
    pub fn from_fn(a_breaks: Vec<Rat>, b_breaks: Vec<Rat>, diag: Vec<Rat>, mut f: impl FnMut(&Rat, &Rat) -> i64) -> Result<Self> {
        Self::from_parts(a_breaks, b_breaks, diag, |_, _, _, x, y| Ok(f(x, y)))
    }

    /// Explicit cell values `(i, j, k, value)`; every nonempty cell must be
    /// given exactly once and no empty cell may be given.
    pub fn from_cells(a_breaks: Vec<Rat>, b_breaks: Vec<Rat>, diag: Vec<Rat>, values: &[(usize, usize, usize, i64)]) -> Result<Self> {
        Self::check_arrangement(&a_breaks, &b_breaks, &diag)?;
        let mut given = std::collections::HashMap::new();
        for &(i, j, k, v) in values {
            if given.insert((i, j, k), v).is_some() {
                return Err(Error::invalid(format!("cell ({i}, {j}, {k}) given twice")));
            }
        }
        let t = Self::from_parts(a_breaks, b_breaks, diag, |i, j, k, _, _| {
            given.remove(&(i, j, k)).ok_or_else(|| Error::invalid(format!("no value for cell ({i}, {j}, {k})")))
        })?;
        if let Some(((i, j, k), _)) = given.into_iter().next() {
            return Err(Error::invalid(format!("cell ({i}, {j}, {k}) is empty or out of range")));
        }
        Ok(t)
    }

    /// `m · standard + δf` on the arrangement of `f`'s breakpoints with
    /// diagonals `1` and `x, x + 1` for every nonzero breakpoint `x`.
    pub fn from_standard_plus_coboundary(m: i64, f: &NiceCochain) -> Result<Self> {
        let mut diag: Vec<Rat> = vec![Rat::one()];
        for x in &f.breaks[1..] {
            diag.push(x.clone());
            diag.push(x + Rat::one());
        }
        diag.sort();
        diag.dedup();
        Self::from_fn(f.breaks.clone(), f.breaks.clone(), diag, |x, y| m * standard_cocycle(x, y) + coboundary_eval(f, x, y))
    }

    pub fn standard() -> Self {
        Self::from_standard_plus_coboundary(1, &NiceCochain::constant(0)).expect("valid arrangement")
    }

    /// The picture of the closed form [`tau1_closed`].
    pub fn tau1() -> Self {
        Self::from_fn(vec![Rat::zero()], vec![Rat::zero()], vec![Rat::one()], tau1_closed).expect("valid arrangement")
    }

    /// The picture of the closed form [`tau1prime_closed`].
    pub fn tau1prime() -> Self {
        let half = frac(1, 2);
        let breaks = vec![Rat::zero(), half.clone()];
        Self::from_fn(breaks.clone(), breaks, vec![half, Rat::one(), frac(3, 2)], tau1prime_closed).expect("valid arrangement")
    }

    pub fn a_breaks(&self) -> &[Rat] {
        &self.a_breaks
    }

    pub fn b_breaks(&self) -> &[Rat] {
        &self.b_breaks
    }

    pub fn diag(&self) -> &[Rat] {
        &self.diag
    }

    /// Nonempty cells and their values in `(i, j, k)` order.
    pub fn cells(&self) -> Vec<(usize, usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.a_breaks.len() {
            for j in 0..self.b_breaks.len() {
                for k in 0..=self.diag.len() {
                    if let Some(v) = self.cells[self.index(i, j, k)] {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    /// Value at `(a mod 1, b mod 1)` with right-continuous lookup on every line.
    pub fn eval(&self, a: &Rat, b: &Rat) -> i64 {
        let (x, y) = (fract(a), fract(b));
        let s = &x + &y;
        let i = locate(&self.a_breaks, &x);
        let j = locate(&self.b_breaks, &y);
        let k = self.diag.partition_point(|d| *d <= s);
        self.cells[self.index(i, j, k)].expect("a point lies in a nonempty cell")
    }

    /// Pointwise sum on the common refinement of both arrangements.
    pub fn add(&self, other: &PiecewiseCocycle) -> Result<Self> {
        let merge = |u: &[Rat], v: &[Rat]| {
            let mut w: Vec<Rat> = u.iter().chain(v).cloned().collect();
            w.sort();
            w.dedup();
            w
        };
        Self::from_fn(
            merge(&self.a_breaks, &other.a_breaks),
            merge(&self.b_breaks, &other.b_breaks),
            merge(&self.diag, &other.diag),
            |x, y| self.eval(x, y) + other.eval(x, y),
        )
    }

    pub fn scale(&self, m: i64) -> Self {
        let mut t = self.clone();
        for c in t.cells.iter_mut().flatten() {
            *c *= m;
        }
        t
    }

    /// Least common denominator of every arrangement constant.
    fn lattice(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.a_breaks
            .iter()
            .chain(&self.b_breaks)
            .chain(&self.diag)
            .fold(num_bigint::BigInt::one(), |acc, r| acc.lcm(r.denom()))
    }

    /// Checks `t(a,b) + t(a+b,c) = t(a,b+c) + t(b,c)` at points
    /// `(n + 1/10 + k/4) / L`, `k < 4`, where `L` is the common denominator
    /// of the arrangement. No sum of one, two or three such coordinates is a
    /// multiple of `1/L`, so every argument avoids every line, and the four
    /// offsets meet every piece of the unit cube cut by `x + y`, `y + z`,
    /// `x + y + z ∈ Z`. The full grid is checked when `L <= 8`; otherwise
    /// `samples` seeded triples are drawn from it.
    pub fn check_cocycle(&self, samples: usize, seed: u64) -> Result<()> {
        let l = self.lattice();
        let grid = ScaledGrid::new(self, &l)
            .ok_or_else(|| Error::invalid(format!("arrangement denominator {l} too large to check")))?;
        let pts = |n: i64, k: i64| 20 * n + 2 + 5 * k;
        let check = |a: i64, b: i64, c: i64| -> Result<()> {
            let lhs = grid.eval(a, b) + grid.eval(a + b, c);
            let rhs = grid.eval(a, b + c) + grid.eval(b, c);
            if lhs != rhs {
                let show = |x: i64| frac(x, grid.modulus);
                return Err(Error::NotCocycle(format!(
                    "identity fails at ({}, {}, {}): {lhs} != {rhs}",
                    show(a),
                    show(b),
                    show(c)
                )));
            }
            Ok(())
        };
        let lsmall = grid.modulus / 20;
        if lsmall <= 8 {
            let all: Vec<i64> = (0..lsmall).flat_map(|n| (0..4).map(move |k| pts(n, k))).collect();
            for &a in &all {
                for &b in &all {
                    for &c in &all {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = Lcg::new(seed);
            let mut draw = || pts((rng.next_u64() % lsmall as u64) as i64, i64::from(rng.below(4)));
            for _ in 0..samples {
                let (a, b, c) = (draw(), draw(), draw());
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    /// Maximal pieces of the diagonal lines, cut at the vertical and
    /// horizontal breakpoints, with values sampled just above and below
    /// each piece's midpoint.
    pub fn diagonal_segments(&self) -> Vec<DiagonalSegment> {
        let bands = Self::bands(&self.diag);
        let mut out = Vec::new();
        let one = Rat::one();
        for d in &self.diag {
            let lo = (d - &one).max(Rat::zero());
            let hi = d.clone().min(one.clone());
            let mut cuts: Vec<Rat> = vec![lo.clone(), hi.clone()];
            cuts.extend(self.a_breaks.iter().filter(|x| **x > lo && **x < hi).cloned());
            cuts.extend(self.b_breaks.iter().map(|y| d - y).filter(|x| *x > lo && *x < hi));
            cuts.sort();
            cuts.dedup();
            for w in cuts.windows(2) {
                let xm = (&w[0] + &w[1]) / int(2);
                let ym = d - &xm;
                let mut gap = (&one - &ym).min(ym.clone());
                for y in &self.b_breaks[1..] {
                    gap = gap.min((&ym - y).abs());
                }
                for e in bands.iter().filter(|e| *e != d) {
                    gap = gap.min((e - d).abs());
                }
                let delta = gap / int(2);
                out.push(DiagonalSegment {
                    d: d.clone(),
                    x0: w[0].clone(),
                    x1: w[1].clone(),
                    above: self.eval(&xm, &(&ym + &delta)),
                    below: self.eval(&xm, &(&ym - &delta)),
                });
            }
        }
        out
    }

    /// Sum of `(above - below) × length` over all diagonal segments, after
    /// checking the cocycle identity.
    pub fn covering_number(&self) -> Result<i64> {
        self.check_cocycle(4096, 0x5eed)?;
        let total: Rat = self.diagonal_segments().iter().map(DiagonalSegment::contribution).sum();
        to_i64(&total).ok_or_else(|| Error::NotCocycle(format!("covering total {total} is not an integer")))
    }
}

/// The arrangement rescaled by `20L` so that the cocycle check runs on
/// machine integers.
struct ScaledGrid<'a> {
    t: &'a PiecewiseCocycle,
    modulus: i64,
    a: Vec<i64>,
    b: Vec<i64>,
    diag: Vec<i64>,
}

impl<'a> ScaledGrid<'a> {
    fn new(t: &'a PiecewiseCocycle, l: &num_bigint::BigInt) -> Option<Self> {
        let l = i64::try_from(l).ok().filter(|&l| l < 1 << 40)?;
        let modulus = 20 * l;
        let scale = |v: &[Rat]| v.iter().map(|r| to_i64(&(r * int(modulus)))).collect::<Option<Vec<i64>>>();
        Some(ScaledGrid { t, modulus, a: scale(&t.a_breaks)?, b: scale(&t.b_breaks)?, diag: scale(&t.diag)? })
    }

    fn eval(&self, x: i64, y: i64) -> i64 {
        let (x, y) = (x.rem_euclid(self.modulus), y.rem_euclid(self.modulus));
        let i = self.a.partition_point(|&b| b <= x) - 1;
        let j = self.b.partition_point(|&b| b <= y) - 1;
        let k = self.diag.partition_point(|&d| d <= x + y);
        self.t.cells[self.t.index(i, j, k)].expect("a point lies in a nonempty cell")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rat;

    fn r(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind(&r("1/4")), r("-1/4"));
        assert_eq!(dedekind(&r("0")), r("0"));
        assert_eq!(dedekind(&r("3/2")), r("0"));
        assert_eq!(dedekind(&r("-1/4")), r("1/4"));
        assert_eq!(dedekind(&r("7/3")), r("-1/6"));
    }

    #[test]
    fn sign_sin_examples() {
        assert_eq!(sign_sin_pi(&r("1/4")), 1);
        assert_eq!(sign_sin_pi(&r("5/4")), -1);
        assert_eq!(sign_sin_pi(&r("2")), 0);
        assert_eq!(sign_sin_pi(&r("-1/4")), -1);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(tau1_closed(&r("1/4"), &r("1/4")), -2);
        assert_eq!(tau1_closed(&r("0"), &r("2/7")), 0);
        assert_eq!(tau1_closed(&r("3/4"), &r("3/4")), 2);
        assert_eq!(tau1prime_closed(&r("1/4"), &r("1/4")), 0);
        assert_eq!(tau1prime_closed(&r("1/8"), &r("1/8")), -1);
    }

    #[test]
    fn coboundary_examples() {
        let c = NiceCochain::constant(3);
        assert_eq!(coboundary_eval(&c, &r("1/3"), &r("5/7")), 3);
        let (p, q) = (5, -2);
        let f = NiceCochain::two_step(p, q);
        assert_eq!(coboundary_eval(&f, &r("1/4"), &r("1/4")), 2 * p - q);
        assert_eq!(coboundary_eval(&NiceCochain::two_step(1, -1), &r("1/4"), &r("1/4")), 3);
        assert!(NiceCochain::new(vec![r("1/2")], vec![1]).is_err());
        assert!(NiceCochain::new(vec![r("0"), r("1/2")], vec![1]).is_err());
    }

    #[test]
    fn standard_picture() {
        let s = PiecewiseCocycle::standard();
        assert_eq!(s.cells(), vec![(0, 0, 0, 0), (0, 0, 1, 1)]);
        assert_eq!(s.covering_number().unwrap(), 1);
    }

    #[test]
    fn eight_region_picture() {
        let (m, p, q) = (3, 2, -1);
        let t = PiecewiseCocycle::from_standard_plus_coboundary(m, &NiceCochain::two_step(p, q)).unwrap();
        let mut vals: Vec<i64> = t.cells().iter().map(|c| c.3).collect();
        vals.sort();
        let mut expect = vec![p, 2 * p - q, p, m + q, p, m + q, m - p + 2 * q, m + q];
        expect.sort();
        assert_eq!(vals, expect);
        assert_eq!(t.eval(&r("1/4"), &r("1/8")), p);
        assert_eq!(t.eval(&r("1/4"), &r("3/8")), 2 * p - q);
        assert_eq!(t.eval(&r("3/4"), &r("5/8")), m - p + 2 * q);
        assert_eq!(t.covering_number().unwrap(), m);
        let five = PiecewiseCocycle::from_standard_plus_coboundary(5, &NiceCochain::two_step(2, -3)).unwrap();
        assert_eq!(five.covering_number().unwrap(), 5);
    }

    #[test]
    fn constant_coboundary_is_constant() {
        let t = PiecewiseCocycle::from_standard_plus_coboundary(0, &NiceCochain::constant(7)).unwrap();
        assert!(t.cells().iter().all(|c| c.3 == 7));
        assert_eq!(t.covering_number().unwrap(), 0);
    }

    #[test]
    fn genus_one_pictures() {
        let t = PiecewiseCocycle::tau1();
        let d = PiecewiseCocycle::from_standard_plus_coboundary(4, &NiceCochain::constant(-2)).unwrap();
        assert_eq!(t, d);
        assert_eq!(t.covering_number().unwrap(), 4);
        let tp = PiecewiseCocycle::tau1prime();
        let dp = PiecewiseCocycle::from_standard_plus_coboundary(4, &NiceCochain::two_step(-1, -3)).unwrap();
        assert_eq!(tp, dp);
        assert_eq!(tp.covering_number().unwrap(), 4);
    }

    #[test]
    fn non_cocycle_rejected() {
        let bad = PiecewiseCocycle::from_fn(vec![r("0")], vec![r("0"), r("1/2")], vec![], |_, y| i64::from(*y < r("1/2"))).unwrap();
        assert!(matches!(bad.covering_number(), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn explicit_cells() {
        let s = PiecewiseCocycle::standard();
        let t = PiecewiseCocycle::from_cells(vec![r("0")], vec![r("0")], vec![r("1")], &[(0, 0, 0, 0), (0, 0, 1, 1)]).unwrap();
        assert_eq!(s, t);
        assert!(PiecewiseCocycle::from_cells(vec![r("0")], vec![r("0")], vec![r("1")], &[(0, 0, 0, 0)]).is_err());
        assert!(PiecewiseCocycle::from_cells(vec![r("0")], vec![r("0")], vec![r("1")], &[(0, 0, 0, 0), (0, 0, 1, 1), (0, 0, 2, 1)]).is_err());
        assert!(PiecewiseCocycle::from_cells(vec![r("0")], vec![r("0")], vec![r("2")], &[]).is_err());
    }

    #[test]
    fn random_decompositions() {
        let mut rng = Lcg::new(21);
        for _ in 0..20 {
            let f = NiceCochain::random(&mut rng, 6, 12);
            let m = rng.range_i64(-6, 6);
            let t = PiecewiseCocycle::from_standard_plus_coboundary(m, &f).unwrap();
            assert_eq!(t.covering_number().unwrap(), m);
            let g = NiceCochain::random(&mut rng, 4, 8);
            let u = PiecewiseCocycle::from_standard_plus_coboundary(1, &g).unwrap();
            assert_eq!(t.add(&u).unwrap().covering_number().unwrap(), m + 1);
        }
    }
}
