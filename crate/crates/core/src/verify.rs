//! Exhaustive and seeded checks of the main identities. Each check reports the
//! number of cases it ran and the first counterexample it met.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohooks::{cocore, cohooks, remove_cohook, same_block};
use crate::crystal::{e_tilde, f_tilde, sl2_weight, Order};
use crate::decomp::{decomp_entry_closed, decomp_matrix, BlockSeries, Method, ProofTracer};
use crate::dsmall::{canonical_word, dsmall_regions, is_dsmall, labels, rewrite_regions, updown_word};
use crate::enumerate::{bipartitions, bipartitions_up_to, block_representatives, dsmall_symbols};
use crate::error::Error;
use crate::fock::{fock_e, fock_f, FockVector};
use crate::kl::{canonical_basis_with, cached_basis, CosetWord, DescentChoice};
use crate::symbols::{Charge, Symbol};
use crate::word::{cocore_word, word_e_tilde, word_f_tilde, UpDownWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Crystal,
    Blocks,
    Cocore,
    Decomp,
    Kl,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Crystal, Suite::Blocks, Suite::Cocore, Suite::Decomp, Suite::Kl];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "crystal" => Ok(Suite::Crystal),
            "blocks" => Ok(Suite::Blocks),
            "cocore" => Ok(Suite::Cocore),
            "decomp" => Ok(Suite::Decomp),
            "kl" => Ok(Suite::Kl),
            _ => Err(Error::Parse { pos: 1, msg: format!("unknown suite {s:?}") }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Crystal => "crystal",
            Suite::Blocks => "blocks",
            Suite::Cocore => "cocore",
            Suite::Decomp => "decomp",
            Suite::Kl => "kl",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Largest `d/2` for word-level and symbol-level checks.
    pub max_halfd: usize,
    /// Largest `|λ|`.
    pub max_size: u32,
    /// Largest number of oriented letters.
    pub max_n: usize,
    pub seed: u64,
    /// Random symbols per `d` in the Fock check.
    pub samples: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_halfd: 5, max_size: 8, max_n: 8, seed: 0, samples: 1000 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub cases: usize,
    pub counterexample: Option<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    fn from_results(name: &str, results: Vec<Result<(), String>>) -> Report {
        Report {
            name: name.to_string(),
            cases: results.len(),
            counterexample: results.into_iter().find_map(|r| r.err()),
            notes: Vec::new(),
        }
    }

    fn merge(name: &str, parts: Vec<Report>) -> Report {
        let mut out = Report { name: name.to_string(), ..Report::default() };
        for p in parts {
            out.cases += p.cases;
            if out.counterexample.is_none() {
                out.counterexample = p.counterexample.map(|c| format!("{}: {c}", p.name));
            }
            out.notes.extend(p.notes.into_iter().map(|n| format!("{}: {n}", p.name)));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases)", self.name, self.cases)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

fn orders(halves: impl IntoIterator<Item = usize>) -> Vec<Order> {
    halves.into_iter().map(|h| Order::new(2 * h as i64).expect("even")).collect()
}

fn max_defect(d: Order) -> i64 {
    3 * d.get() + 10
}

/// Symbol-level `ẽ_i`, `f̃_i` against the local word rules, for every region
/// choice with middle length `0` or `d`.
pub fn crystal_conformance(ds: &[Order], max_size: u32) -> Report {
    let mut results = Vec::new();
    for &d in ds {
        let family = dsmall_symbols(d, max_size, max_defect(d));
        results.par_extend(family.par_iter().map(|th| conformance_one(th, d)));
    }
    Report::from_results("crystal conformance", results)
}

fn conformance_one(th: &Symbol, d: Order) -> Result<(), String> {
    for r in dsmall_regions(th, d).into_iter().filter(|r| r.k <= 1) {
        let w = updown_word(th, d, &r).map_err(|e| e.to_string())?;
        let lab = labels(d, &r);
        for i in 0..d.get() {
            let pair = (1..w.len()).find(|&j| lab[j - 1] == i);
            let expect = |op: fn(&UpDownWord, usize) -> crate::Result<Option<UpDownWord>>| match pair {
                Some(j) => op(&w, j)
                    .map_err(|e| e.to_string())?
                    .map(|w2| rewrite_regions(&w2, th, d, &r).map_err(|e| e.to_string()))
                    .transpose(),
                None => Ok(None),
            };
            let want_e = expect(word_e_tilde)?;
            let got_e = e_tilde(th, i, d);
            if got_e != want_e {
                return Err(format!("ẽ_{i} on {th} at d = {d} ({r}, word {w}): got {got_e:?}, word rule gives {want_e:?}"));
            }
            if pair.is_some() {
                let want_f = expect(word_f_tilde)?;
                let got_f = f_tilde(th, i, d);
                if got_f != want_f {
                    return Err(format!(
                        "f̃_{i} on {th} at d = {d} ({r}, word {w}): got {got_f:?}, word rule gives {want_f:?}"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `(ef − fe)·θ = ⟨h_i, wt θ⟩·θ` on seeded random symbols.
pub fn fock_commutator(ds: &[Order], samples: usize, seed: u64, max_size: u32) -> Report {
    let bps = bipartitions_up_to(max_size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::new();
    for &d in ds {
        for _ in 0..samples {
            let bp = bps.choose(&mut rng).expect("nonempty").clone();
            let th = Symbol::new(bp, Charge::new(rng.gen_range(-6..=6), rng.gen_range(-6..=6)));
            let i = rng.gen_range(0..d.get());
            let v = FockVector::basis(th.clone());
            let lhs = &fock_e(&fock_f(&v, i, d), i, d) - &fock_f(&fock_e(&v, i, d), i, d);
            let rhs = v.scale(&BigRational::from_integer(sl2_weight(&th, i, d).into()));
            results.push(if (&lhs - &rhs).is_zero() {
                Ok(())
            } else {
                Err(format!("{th}, d = {d}, i = {i}: (ef - fe) gives {lhs}, weight gives {rhs}"))
            });
        }
    }
    Report::from_results("fock commutator", results)
}

fn terminal_cocores(th: &Symbol, e: u32) -> BTreeSet<Symbol> {
    let mut seen = HashSet::new();
    let mut stack = vec![th.clone()];
    let mut out = BTreeSet::new();
    while let Some(s) = stack.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        let hs = cohooks(&s, e);
        for &h in &hs {
            stack.push(remove_cohook(&s, h).expect("listed co-hook"));
        }
        if hs.is_empty() {
            out.insert(s);
        }
    }
    out
}

fn small_charge_symbols(max_size: u32, range: i64) -> Vec<Symbol> {
    let bps = bipartitions_up_to(max_size);
    let mut out = Vec::new();
    for s1 in -range..=range {
        for s2 in -range..=range {
            out.extend(bps.iter().map(|bp| Symbol::new(bp.clone(), Charge::new(s1, s2))));
        }
    }
    out
}

/// Every order of co-hook removals ends at the same co-core.
pub fn cocore_orders(max_size: u32, charge_range: i64, max_e: u32) -> Report {
    let syms = small_charge_symbols(max_size, charge_range);
    let results = syms
        .par_iter()
        .flat_map_iter(|th| {
            (1..=max_e).map(move |e| {
                let t = terminal_cocores(th, e);
                let c = cocore(th, e);
                if t.len() == 1 && t.contains(&c) {
                    Ok(())
                } else {
                    let all: Vec<String> = t.iter().map(|s| s.to_string()).collect();
                    Err(format!("{th}, e = {e}: removal orders end at {{{}}}", all.join("; ")))
                }
            })
        })
        .collect();
    Report::from_results("cocore order independence", results)
}

/// The co-core of a d-small symbol is d-small with a region of middle length
/// 0 whose word is the original word with every `∧` turned into `∨`.
pub fn cocore_lemma(max_size: u32, charge_range: i64, max_e: u32) -> Report {
    let syms = small_charge_symbols(max_size, charge_range);
    let results = syms
        .par_iter()
        .flat_map_iter(|th| {
            (1..=max_e).filter_map(move |e| {
                let d = Order::new(2 * e as i64).expect("even");
                let w = canonical_word(th, d).ok()?;
                let c = cocore(th, e);
                let want = cocore_word(&w).normal_form();
                let ok = dsmall_regions(&c, d)
                    .into_iter()
                    .filter(|r| r.k == 0)
                    .any(|r| updown_word(&c, d, &r).map(|x| x.normal_form() == want).unwrap_or(false));
                Some(if ok {
                    Ok(())
                } else {
                    Err(format!("{th}, d = {d}: co-core {c} has no middle-free region reading {want}"))
                })
            })
        })
        .collect();
    Report::from_results("cocore lemma", results)
}

/// Same charge and same block as a d-small symbol, among all symbols of the
/// same size, is exactly the set of rearrangements of its `∧`s and `∨`s.
pub fn blocks_lemma(ds: &[Order], max_size: u32) -> Report {
    let mut results = Vec::new();
    for &d in ds {
        let e = d.half() as u32;
        let family = dsmall_symbols(d, max_size, max_defect(d));
        let mut classes: HashMap<(Charge, u32, Symbol), BTreeSet<Symbol>> = HashMap::new();
        let charges: BTreeSet<Charge> = family.iter().map(|t| t.charge).collect();
        let keyed: Vec<((Charge, u32, Symbol), Symbol)> = charges
            .par_iter()
            .flat_map_iter(|&c| {
                (0..=max_size).flat_map(move |n| {
                    bipartitions(n).into_iter().map(move |bp| {
                        let s = Symbol::new(bp, c);
                        ((c, n, cocore(&s, e)), s)
                    })
                })
            })
            .collect();
        for (k, s) in keyed {
            classes.entry(k).or_default().insert(s);
        }
        results.par_extend(family.par_iter().map(|th| {
            let block = BlockSeries::from_symbol(th, d).map_err(|e| format!("{th}, d = {d}: {e}"))?;
            let members: BTreeSet<Symbol> = block.symbols.iter().cloned().collect();
            let class = &classes[&(th.charge, th.size(), cocore(th, e))];
            if &members != class {
                let extra: Vec<String> = class.difference(&members).map(|s| s.to_string()).collect();
                let missing: Vec<String> = members.difference(class).map(|s| s.to_string()).collect();
                return Err(format!(
                    "{th}, d = {d}: same block but not a rearrangement {{{}}}; rearrangement outside the block {{{}}}",
                    extra.join("; "),
                    missing.join("; ")
                ));
            }
            if let Some(bad) = block.symbols.iter().find(|s| !is_dsmall(s, d) || !same_block(th, s, d)) {
                return Err(format!("{th}, d = {d}: member {bad} fails"));
            }
            Ok(())
        }));
    }
    Report::from_results("blocks lemma", results)
}

/// Closed formula, proof trace and KL agree on every block of words of length
/// up to `max_halfd` with at most `max_slots` oriented letters; every matrix
/// is structurally sound, does not depend on placeholders, and random proof
/// traces agree with the default one.
pub fn decomp_agreement(max_halfd: usize, max_slots: usize, seed: u64) -> Report {
    let reps: Vec<UpDownWord> = (1..=max_halfd).flat_map(|l| block_representatives(l, max_slots)).collect();
    let results = reps
        .par_iter()
        .enumerate()
        .map(|(n, w)| {
            let block = BlockSeries::from_word(w);
            let ms = Method::ALL
                .iter()
                .map(|&m| decomp_matrix(&block, m).map_err(|e| format!("{w} by {m}: {e}")))
                .collect::<Result<Vec<_>, String>>()?;
            for (m, x) in Method::ALL.iter().zip(&ms).skip(1) {
                if *x != ms[0] {
                    return Err(format!("block of {w}: {m} disagrees with closed"));
                }
            }
            ms[0].check_structure().map_err(|e| format!("block of {w}: {e}"))?;
            let bare = UpDownWord::new(w.oriented());
            let bare_m = decomp_matrix(&BlockSeries::from_word(&bare), Method::Closed).map_err(|e| e.to_string())?;
            if bare_m.entries != ms[0].entries {
                return Err(format!("block of {w}: placeholders change the matrix"));
            }
            let mut tracer = ProofTracer::with_seed(seed.wrapping_add(n as u64));
            for (c, th) in block.members.iter().enumerate() {
                let col = tracer.column(th).map_err(|e| e.to_string())?;
                for (r, psi) in block.members.iter().enumerate() {
                    if col.get(psi).copied().unwrap_or(0) != ms[0].entries[r][c] {
                        return Err(format!("column {th}: random proof trace differs at {psi}"));
                    }
                }
            }
            Ok(())
        })
        .collect();
    Report::from_results("decomposition three-way agreement", results)
}

/// Every method's matrix on the block of each d-small symbol is
/// upper-unitriangular with 0/1 entries, `2^cups` column supports and unit
/// highest-weight columns.
pub fn block_structure(ds: &[Order], max_size: u32) -> Report {
    let mut results = Vec::new();
    for &d in ds {
        let family = dsmall_symbols(d, max_size, max_defect(d));
        let mut blocks: BTreeSet<Vec<Symbol>> = BTreeSet::new();
        for (th, b) in family.iter().zip(family.par_iter().map(|th| BlockSeries::from_symbol(th, d)).collect::<Vec<_>>()) {
            match b {
                Ok(b) => {
                    blocks.insert(b.symbols);
                }
                Err(e) => results.push(Err(format!("{th} at d = {d}: {e}"))),
            }
        }
        results.par_extend(blocks.par_iter().map(|syms| {
            let b = BlockSeries::from_symbol(&syms[0], d).map_err(|e| e.to_string())?;
            for m in Method::ALL {
                let x = decomp_matrix(&b, m).map_err(|e| format!("{} by {m}: {e}", syms[0]))?;
                x.check_structure().map_err(|e| format!("block of {} at d = {d} by {m}: {e}", syms[0]))?;
            }
            Ok(())
        }));
    }
    Report::from_results("block structure", results)
}

/// Canonical-basis shape, support bound, independence of descent choices and
/// agreement at `v = 1` with the closed cup formula, for all `N ≤ max_n`.
/// Polynomials with more than one term are listed as notes.
pub fn kl_checks(max_n: usize, seed: u64) -> Report {
    let shapes: Vec<(usize, usize)> = (0..=max_n).flat_map(|n| (0..=n).map(move |k| (n, k))).collect();
    let mut notes = Vec::new();
    let results: Vec<Result<(), String>> = shapes
        .iter()
        .map(|&(n, k)| {
            let b = cached_basis(n, k).map_err(|e| format!("N = {n}, {k} ∧: {e}"))?;
            for p in b.non_monomial() {
                notes.push(format!("m[{}, {}] = {}", p.0, p.1, p.2));
            }
            let rand = canonical_basis_with(n, k, DescentChoice::Random(seed)).map_err(|e| e.to_string())?;
            let words = CosetWord::all(n, k);
            for x in &words {
                if rand.element(x) != b.element(x) {
                    return Err(format!("b[{x}] depends on the descent chosen"));
                }
                let xw = UpDownWord::new(x.letters());
                for y in &words {
                    let m = b.polynomial(y, x);
                    let yw = UpDownWord::new(y.letters());
                    let closed = decomp_entry_closed(&xw, &yw).map_err(|e| e.to_string())? as i64;
                    if m.eval_at_one() != closed {
                        return Err(format!("m[{y}, {x}] = {m} but the cup formula gives {closed}"));
                    }
                    if !m.is_zero() {
                        let dominated = y.up_positions().iter().zip(x.up_positions()).all(|(a, b)| *a <= b);
                        if y.length() > x.length() || !dominated {
                            return Err(format!("m[{y}, {x}] = {m} outside the support bound"));
                        }
                    }
                    if y != x && !m.in_v_zv() {
                        return Err(format!("m[{y}, {x}] = {m} not in vZ[v]"));
                    }
                }
            }
            Ok(())
        })
        .collect();
    let mut r = Report::from_results("kl", results);
    r.cases = shapes.iter().map(|&(n, k)| CosetWord::all(n, k).len().pow(2)).sum();
    r.notes = notes;
    r
}

pub fn run(suite: Suite, b: &Bounds) -> Report {
    let halves = |lo: usize| orders(lo..=b.max_halfd);
    match suite {
        Suite::Crystal => Report::merge(
            "crystal",
            vec![
                crystal_conformance(&halves(2), b.max_size),
                fock_commutator(&orders(1..=b.max_halfd.min(4)), b.samples, b.seed, b.max_size),
            ],
        ),
        Suite::Blocks => Report::merge("blocks", vec![blocks_lemma(&halves(1), b.max_size)]),
        Suite::Cocore => Report::merge(
            "cocore",
            vec![
                cocore_orders(b.max_size, 4, b.max_halfd as u32),
                cocore_lemma(b.max_size, 4, b.max_halfd as u32),
            ],
        ),
        Suite::Decomp => Report::merge(
            "decomp",
            vec![decomp_agreement(b.max_halfd, b.max_n, b.seed), block_structure(&halves(1), b.max_size)],
        ),
        Suite::Kl => Report::merge("kl", vec![kl_checks(b.max_n, b.seed)]),
    }
}
