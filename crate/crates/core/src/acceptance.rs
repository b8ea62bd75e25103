//! The end-to-end acceptance checks, shared by the `acceptance` test target
//! and the command-line `selftest`.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::bundle::{
    bundle_signature, bundle_signature_lifts, evaluate_class, random_involutive_family, random_swap_family, CoeffGroup,
    Monodromy,
};
use crate::circle::{
    coboundary_eval, dedekind, sign_sin_pi, tau1_closed, tau1prime_closed, NiceCochain, PiecewiseCocycle,
};
use crate::congruence::{
    closure_bfs, coset_quotient, group_order_formula, in_y, is_identity_mod2, is_normal, standard_generators,
    subgroup_filter, OrderKind, DEFAULT_BUDGET,
};
use crate::conventions::lock;
use crate::error::Result;
use crate::maslov::{stabilize_lagrangian, wall_maslov, Lagrangian};
use crate::meyer::{check_cocycle_identity, maslov_cocycle, meyer_cocycle, meyer_via_graphs, MaslovCocycle, MeyerCocycle};
use crate::rational::{frac, int, Rat};
use crate::rng::Lcg;
use crate::symplectic::{embed_stabilize, random_symplectic_with, SpMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct Config {
    pub seed: u64,
    /// Cuts every sample count by a factor of ten; limits are unchanged.
    pub quick: bool,
}


impl Config {
    fn count(&self, n: usize) -> usize {
        if self.quick {
            n.div_ceil(10)
        } else {
            n
        }
    }

    fn rng(&self, criterion: u64) -> Lcg {
        Lcg::new(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(criterion))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] criterion {}: {} ({} checks, {} failures, {} ms", self.id, self.title, self.checks, self.failures, self.elapsed_ms)?;
        if let Some(l) = self.limit_ms {
            write!(f, ", limit {l} ms")?;
        }
        write!(f, ") {}", self.detail)
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    first: Option<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(msg());
            }
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, got: Result<T>, want: Result<T>, what: impl FnOnce() -> String) {
        match (got, want) {
            (Ok(g), Ok(w)) => {
                let ok = g == w;
                self.check(ok, || format!("{}: got {g:?}, expected {w:?}", what()));
            }
            (Err(e), _) | (_, Err(e)) => self.check(false, || format!("{}: error {e}", what())),
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self, id: u32, title: &'static str, start: Instant, limit_ms: Option<u128>) -> CriterionReport {
        let elapsed_ms = start.elapsed().as_millis();
        let in_time = limit_ms.is_none_or(|l| elapsed_ms < l);
        let mut detail = self.notes.join("; ");
        if let Some(first) = &self.first {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str("first failure: ");
            detail.push_str(first);
        }
        if !in_time {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str("over the time limit");
        }
        CriterionReport {
            id,
            title,
            passed: self.failures == 0 && in_time && self.checks > 0,
            checks: self.checks,
            failures: self.failures,
            detail,
            elapsed_ms,
            limit_ms,
        }
    }
}

fn random_element(g: usize, max_len: usize, rng: &mut Lcg) -> SpMat {
    let len = 1 + rng.below(max_len as u32) as usize;
    random_symplectic_with(g, len, rng)
}

/// A seeded lagrangian `αL` for the standard `L`, sometimes the standard
/// one itself or its transverse partner.
fn random_lagrangian(g: usize, rng: &mut Lcg) -> Lagrangian {
    let base = Lagrangian::standard(g);
    match rng.below(8) {
        0 => base,
        1 => base.image(&SpMat::form(g)).expect("same genus"),
        _ => base.image(&random_element(g, 6, rng)).expect("same genus"),
    }
}

/// Three or four lagrangians, occasionally with repeats to exercise
/// degenerate configurations.
fn random_lagrangians(g: usize, n: usize, rng: &mut Lcg) -> Vec<Lagrangian> {
    let mut out: Vec<Lagrangian> = Vec::with_capacity(n);
    for _ in 0..n {
        if !out.is_empty() && rng.below(6) == 0 {
            let k = rng.below(out.len() as u32) as usize;
            out.push(out[k].clone());
        } else {
            out.push(random_lagrangian(g, rng));
        }
    }
    out
}

pub fn criterion1() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let sign = lock().tau1_closed_sign;
    let mut table = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let (a, b) = (SpMat::rotation_quarters(i), SpMat::rotation_quarters(j));
            let delta = meyer_cocycle(&a, &b);
            let graphs = meyer_via_graphs(&a, &b);
            t.eq(graphs, delta.clone(), || format!("graph route at ({i}/4, {j}/4)"));
            let closed = sign * tau1_closed(&frac(i, 4), &frac(j, 4));
            t.eq(delta.clone(), Ok(closed), || format!("closed form at ({i}/4, {j}/4)"));
            if let Ok(v) = delta {
                t.check([0, 2, -2].contains(&v), || format!("value {v} outside {{0, ±2}}"));
                table.push(v);
            }
        }
    }
    t.note(format!("table {table:?}, lock sign {sign:+}"));
    t.finish(1, "closed-form calibration table", start, Some(1_000))
}

pub fn criterion2(cfg: &Config) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = cfg.rng(2);
    let per_genus = cfg.count(1000);
    for g in 1..=3 {
        for n in 0..per_genus {
            let a = random_element(g, 8, &mut rng);
            let b = random_element(g, 8, &mut rng);
            let c = random_element(g, 8, &mut rng);
            for (name, r) in [
                ("meyer", check_cocycle_identity(&MeyerCocycle, &a, &b, &c)),
                ("maslov", check_cocycle_identity(&MaslovCocycle::default(), &a, &b, &c)),
            ] {
                t.eq(r, Ok(true), || format!("{name} identity, genus {g}, triple {n}"));
            }
        }
    }
    t.note(format!("{per_genus} triples per genus for both cocycles"));
    t.finish(2, "cocycle identity", start, Some(60_000))
}

/// Seeded closed monodromies of fiber genus `g`, flagged by whether every
/// matrix lies in the level-4 congruence subgroup.
pub fn closed_sample(g: usize, count: usize, rng: &mut Lcg) -> Vec<(Monodromy, bool)> {
    let mut out = Vec::with_capacity(count + if g == 3 { count } else { 0 });
    for n in 0..count {
        let len = 2 + rng.below(5) as usize;
        let m = match (n % 3, g) {
            (0, _) => random_swap_family(g, 1 + rng.below(2) as usize, len, 1, rng),
            (1, 1) => {
                let a = random_element(g, 5, rng);
                let k = rng.range_i64(-3, 3);
                let commuting = Monodromy::new(vec![(a.clone(), a.pow(k))]).expect("one pair");
                commuting.concat(&random_swap_family(g, 1, len, 1, rng)).expect("same genus")
            }
            (1, _) => random_involutive_family(g, len, rng).expect("genus at least 2"),
            _ => {
                let m = random_swap_family(g, 2, len, 1, rng);
                let gamma = random_element(g, 6, rng);
                m.conjugate(&gamma).expect("same genus")
            }
        };
        out.push((m, false));
    }
    if g == 3 {
        for _ in 0..count {
            let len = 2 + rng.below(4) as usize;
            out.push((random_swap_family(g, 1 + rng.below(2) as usize, len, 4, rng), true));
        }
    }
    out
}

pub fn criterion3(cfg: &Config) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = cfg.rng(3);
    let count = cfg.count(200);
    for g in 1..=3 {
        let mut hist = std::collections::BTreeMap::new();
        for (n, (m, level4)) in closed_sample(g, count, &mut rng).into_iter().enumerate() {
            t.check(m.is_closed(), || format!("genus {g} sample {n} is not closed"));
            if level4 {
                t.check(m.all_in_congruence(4), || format!("genus {g} sample {n} leaves the level-4 subgroup"));
            }
            match bundle_signature(&m, false) {
                Ok(s) => {
                    *hist.entry(s).or_insert(0usize) += 1;
                    let ok = match g {
                        1 | 2 => s == 0,
                        _ if level4 => s.rem_euclid(8) == 0,
                        _ => s.rem_euclid(4) == 0,
                    };
                    t.check(ok, || format!("genus {g} sample {n}: signature {s}"));
                }
                Err(e) => t.check(false, || format!("genus {g} sample {n}: {e}")),
            }
        }
        t.note(format!("g={g} signatures {hist:?}"));
    }
    t.finish(3, "signature divisibility", start, Some(120_000))
}

pub fn criterion4(cfg: &Config) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    // the same sample as criterion 3
    let mut rng = cfg.rng(3);
    let count = cfg.count(200);
    for g in 1..=3 {
        for (n, (m, _)) in closed_sample(g, count, &mut rng).into_iter().enumerate() {
            let sigma = bundle_signature(&m, false);
            t.eq(bundle_signature_lifts(&m), sigma.clone(), || format!("genus {g} sample {n}: lifts"));
            let meyer = evaluate_class(MeyerCocycle, &m, CoeffGroup::INTEGERS);
            let maslov = evaluate_class(MaslovCocycle::default(), &m, CoeffGroup::INTEGERS);
            t.eq(maslov, meyer.clone(), || format!("genus {g} sample {n}: Maslov class"));
            t.eq(meyer, sigma.map(|s| -s), || format!("genus {g} sample {n}: Meyer class"));
        }
    }
    t.finish(4, "dual oracle", start, None)
}

pub fn criterion5() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut sizes = Vec::new();
    for (g, n, kind) in [(1, 2, OrderKind::SpMod2), (1, 4, OrderKind::SpMod4), (2, 2, OrderKind::SpMod2), (2, 4, OrderKind::SpMod4)] {
        let table = standard_generators(g, n).and_then(|gens| closure_bfs(g, n, &gens, DEFAULT_BUDGET));
        let formula = group_order_formula(g, kind).map(|o| o.to_string());
        let enumerated = table.as_ref().map(|tb| tb.len().to_string()).map_err(Clone::clone);
        sizes.push(format!("|Sp({},Z/{n})|={}", 2 * g, enumerated.clone().unwrap_or_default()));
        t.eq(enumerated, formula, || format!("order of Sp({}, Z/{n})", 2 * g));
        if n != 4 {
            continue;
        }
        let Ok(tbl) = table else { continue };
        let y = subgroup_filter(&tbl, |m| in_y(m).unwrap_or(false));
        sizes.push(format!("|Y|={}", y.len()));
        t.eq(Ok(y.len().to_string()), group_order_formula(g, OrderKind::Y).map(|o| o.to_string()), || format!("|Y| in genus {g}"));
        let h = coset_quotient(tbl.iter(), &y).map(|q| q.order().to_string());
        sizes.push(format!("|H|={}", h.clone().unwrap_or_default()));
        t.eq(h, group_order_formula(g, OrderKind::H).map(|o| o.to_string()), || format!("|Sp/Y| in genus {g}"));
    }
    t.note(sizes.join(", "));
    t.finish(5, "group orders", start, Some(90_000))
}

pub fn criterion6() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for g in 1..=2 {
        let tbl = match standard_generators(g, 4).and_then(|gens| closure_bfs(g, 4, &gens, DEFAULT_BUDGET)) {
            Ok(tbl) => tbl,
            Err(e) => {
                t.check(false, || format!("genus {g}: {e}"));
                continue;
            }
        };
        let y = subgroup_filter(&tbl, |m| in_y(m).unwrap_or(false));
        t.check(is_normal(&tbl, &y), || format!("Y is not normal in genus {g}"));
        let level2 = subgroup_filter(&tbl, is_identity_mod2);
        t.eq(Ok(level2.len().to_string()), group_order_formula(g, OrderKind::LieSpMod2).map(|o| o.to_string()), || {
            format!("level-2 image in genus {g}")
        });
        match coset_quotient(level2.iter(), &y) {
            Ok(q) => {
                t.eq(Ok(q.order()), Ok(1usize << (2 * g + 1)), || format!("quotient order in genus {g}"));
                t.check(q.is_elementary_abelian(), || format!("quotient is not elementary abelian in genus {g}"));
                t.note(format!("g={g}: |level-2 image|={}, quotient order {}", level2.len(), q.order()));
            }
            Err(e) => t.check(false, || format!("genus {g}: {e}")),
        }
    }
    t.finish(6, "subgroup structure", start, None)
}

pub fn criterion7(cfg: &Config) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = cfg.rng(7);
    t.eq(PiecewiseCocycle::standard().covering_number(), Ok(1), || "standard cocycle".into());
    for n in 0..cfg.count(20) {
        let f = NiceCochain::random(&mut rng, 6, 12);
        let cover = PiecewiseCocycle::from_standard_plus_coboundary(0, &f).and_then(|c| c.covering_number());
        t.eq(cover, Ok(0), || format!("coboundary {n} ({f:?})"));
    }
    for n in 0..cfg.count(100) {
        let f = NiceCochain::random(&mut rng, 6, 12);
        let m = rng.range_i64(-8, 8);
        let cover = PiecewiseCocycle::from_standard_plus_coboundary(m, &f).and_then(|c| c.covering_number());
        t.eq(cover, Ok(m), || format!("case {n}: {m} standard + coboundary of {f:?}"));
    }
    for (name, picture, f) in [
        ("tau1", PiecewiseCocycle::tau1(), NiceCochain::constant(-2)),
        ("tau1'", PiecewiseCocycle::tau1prime(), NiceCochain::two_step(-1, -3)),
    ] {
        t.eq(picture.covering_number(), Ok(4), || format!("{name} picture"));
        t.eq(PiecewiseCocycle::from_standard_plus_coboundary(4, &f), Ok(picture), || format!("{name} decomposition"));
    }
    t.finish(7, "covering numbers", start, Some(10_000))
}

fn random_rational(rng: &mut Lcg) -> Rat {
    let q = rng.range_i64(1, 48);
    let p = rng.range_i64(-4 * q, 4 * q);
    frac(p, q)
}

pub fn criterion8(cfg: &Config) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = cfg.rng(8);
    let count = cfg.count(200);
    for n in 0..count {
        let g = 1 + n % 3;
        let ls = random_lagrangians(g, 4, &mut rng);
        let (l1, l2, l3, l4) = (&ls[0], &ls[1], &ls[2], &ls[3]);
        let base = wall_maslov(l1, l2, l3);

        let alpha = random_element(g, 8, &mut rng);
        let moved: Result<Vec<Lagrangian>> = [l1, l2, l3].iter().map(|l| l.image(&alpha)).collect();
        let moved_index = moved.and_then(|m| wall_maslov(&m[0], &m[1], &m[2]));
        t.eq(moved_index, base.clone(), || format!("Sp-invariance, instance {n}"));

        let four = (|| Ok(wall_maslov(l1, l2, l3)? - wall_maslov(l1, l2, l4)? + wall_maslov(l1, l3, l4)? - wall_maslov(l2, l3, l4)?))();
        t.eq(four, Ok(0), || format!("four-term relation, instance {n}"));

        t.eq(wall_maslov(l2, l3, l1), base.clone(), || format!("cyclic symmetry, instance {n}"));
        t.eq(wall_maslov(l2, l1, l3), base.clone().map(|v| -v), || format!("transposition, instance {n}"));

        let target = g + 1 + rng.below(2) as usize;
        let stab: Result<Vec<Lagrangian>> = [l1, l2, l3].iter().map(|l| stabilize_lagrangian(l, target)).collect();
        t.eq(stab.and_then(|s| wall_maslov(&s[0], &s[1], &s[2])), base, || format!("stabilization, instance {n}"));

        let (a, b) = (random_element(g, 6, &mut rng), random_element(g, 6, &mut rng));
        let stab_pair = (|| Ok((embed_stabilize(&a, target)?, embed_stabilize(&b, target)?)))();
        let stab_meyer = stab_pair.clone().and_then(|(x, y)| meyer_cocycle(&x, &y));
        t.eq(stab_meyer, meyer_cocycle(&a, &b), || format!("Meyer stabilization, instance {n}"));
        let stab_maslov = stab_pair.and_then(|(x, y)| maslov_cocycle(&x, &y, None));
        t.eq(stab_maslov, maslov_cocycle(&a, &b, None), || format!("Maslov cocycle stabilization, instance {n}"));
    }
    let (two, four) = (int(2), int(4));
    let f = NiceCochain::two_step(1, -1);
    for n in 0..cfg.count(1000) {
        let (x, y, z) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
        let x2 = &two * &x;
        t.check(&two * dedekind(&x2) - &four * dedekind(&x) == int(sign_sin_pi(&x2)), || format!("doubling identity at {x}"));
        let xy = &x + &y;
        let lhs = &two * (dedekind(&x) + dedekind(&y) - dedekind(&xy));
        let rhs = int(-sign_sin_pi(&x) * sign_sin_pi(&y) * sign_sin_pi(&xy));
        t.check(lhs == rhs, || format!("three-term sine identity at ({x}, {y})"));
        for (name, tau) in [("tau1", tau1_closed as fn(&Rat, &Rat) -> i64), ("tau1'", tau1prime_closed)] {
            let ok = tau(&x, &y) + tau(&xy, &z) == tau(&y, &z) + tau(&x, &(&y + &z));
            t.check(ok, || format!("{name} cocycle identity at ({x}, {y}, {z})"));
        }
        if n < cfg.count(500) {
            let y2 = &two * &y;
            let diff = tau1_closed(&x, &y) - tau1prime_closed(&x, &y);
            let sines = -sign_sin_pi(&x2) - sign_sin_pi(&y2) + sign_sin_pi(&(&x2 + &y2));
            t.check(diff == sines, || format!("closed-form difference at ({x}, {y})"));
            // the cochain f(1,-1) agrees with sign(sin 2πa) off the half-integers
            if !x2.is_integer() && !y2.is_integer() && !(&x2 + &y2).is_integer() {
                t.check(diff == -coboundary_eval(&f, &x, &y), || format!("coboundary difference at ({x}, {y})"));
            }
        }
    }
    t.note(format!("{count} instances per lagrangian suite, {} rationals", cfg.count(1000)));
    t.finish(8, "property suites", start, None)
}

pub fn run_all(cfg: &Config) -> Vec<CriterionReport> {
    vec![
        criterion1(),
        criterion2(cfg),
        criterion3(cfg),
        criterion4(cfg),
        criterion5(),
        criterion6(),
        criterion7(cfg),
        criterion8(cfg),
    ]
}
