//! Parabolic Kazhdan–Lusztig polynomials for `(S_N, S_{n_down} × S_{n_up})`,
//! computed as canonical-basis coefficients in the antispherical module.
//!
//! Basis vectors `n_x` are indexed by words in `∧`/`∨` with a fixed number of
//! each letter; the word `∧…∧∨…∨` has length 0.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::word::{Letter, UpDownWord};

/// A word in `∧`/`∨` of length at most 64; bit `i` set means `∨` at position `i + 1`.
/// Ordered by length, then by the sorted `∧` positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CosetWord {
    len: u8,
    downs: u64,
}

impl Ord for CosetWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len, self.up_positions()).cmp(&(other.len, other.up_positions()))
    }
}

impl PartialOrd for CosetWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl CosetWord {
    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        if letters.len() > 64 {
            return Err(Error::Internal("coset words are limited to 64 letters".into()));
        }
        let mut downs = 0u64;
        for (i, &l) in letters.iter().enumerate() {
            match l {
                Letter::Down => downs |= 1 << i,
                Letter::Up => {}
                other => {
                    return Err(Error::Parse { pos: i + 1, msg: format!("{} is not ∧ or ∨", other.unicode()) })
                }
            }
        }
        Ok(CosetWord { len: letters.len() as u8, downs })
    }

    /// Drop the `×` and `∘` letters.
    pub fn from_updown(w: &UpDownWord) -> Result<Self> {
        CosetWord::from_letters(&w.oriented())
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// 1-based.
    pub fn at(&self, i: usize) -> Letter {
        if self.downs >> (i - 1) & 1 == 1 {
            Letter::Down
        } else {
            Letter::Up
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        (1..=self.len()).map(|i| self.at(i)).collect()
    }

    pub fn n_up(&self) -> usize {
        self.len() - self.downs.count_ones() as usize
    }

    /// Swap the letters at `s` and `s + 1`.
    pub fn swap(&self, s: usize) -> CosetWord {
        let (a, b) = ((self.downs >> (s - 1)) & 1, (self.downs >> s) & 1);
        let mut downs = self.downs & !(0b11 << (s - 1));
        downs |= b << (s - 1) | a << s;
        CosetWord { len: self.len, downs }
    }

    /// Number of pairs `∨ … ∧`.
    pub fn length(&self) -> usize {
        let mut downs_seen = 0;
        let mut l = 0;
        for i in 1..=self.len() {
            match self.at(i) {
                Letter::Down => downs_seen += 1,
                _ => l += downs_seen,
            }
        }
        l
    }

    /// Positions `s` with `∨` at `s` and `∧` at `s + 1`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len()).filter(|&s| self.at(s) == Letter::Down && self.at(s + 1) == Letter::Up).collect()
    }

    pub fn up_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.at(i) == Letter::Up).collect()
    }

    /// All words with `n` letters of which `n_up` are `∧`, in increasing
    /// lexicographic order of their `∧` positions.
    pub fn all(n: usize, n_up: usize) -> Vec<CosetWord> {
        (0..n)
            .combinations(n_up)
            .map(|ups| {
                let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                let up_mask: u64 = ups.iter().map(|&i| 1u64 << i).sum();
                CosetWord { len: n as u8, downs: all & !up_mask }
            })
            .collect()
    }
}

impl fmt::Display for CosetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.unicode())?;
        }
        Ok(())
    }
}

impl Serialize for CosetWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.letters().iter().map(|l| l.ascii()).collect::<String>())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParabolicModuleElement {
    terms: BTreeMap<CosetWord, LaurentPoly>,
}

impl ParabolicModuleElement {
    pub fn basis(x: CosetWord) -> Self {
        let mut m = ParabolicModuleElement::default();
        m.add(x, &LaurentPoly::one());
        m
    }

    pub fn add(&mut self, x: CosetWord, p: &LaurentPoly) {
        let e = self.terms.entry(x).or_default();
        *e += p;
        if e.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn coeff(&self, x: &CosetWord) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CosetWord, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn sub_scaled(&mut self, other: &ParabolicModuleElement, k: i64) {
        for (x, p) in &other.terms {
            self.add(*x, &(p * -k));
        }
    }
}

impl fmt::Display for ParabolicModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(x, p)| format!("({p})·n[{x}]")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Right action of the Kazhdan–Lusztig generator `C_s`:
/// `n_x·C_s = n_{sx} + v·n_x` when `x` reads `∧∨` at `(s, s+1)`,
/// `n_{sx} + v^{-1}·n_x` when it reads `∨∧`, and `0` on equal letters.
pub fn cs_action(m: &ParabolicModuleElement, s: usize) -> Result<ParabolicModuleElement> {
    let mut out = ParabolicModuleElement::default();
    for (x, p) in m.iter() {
        if s == 0 || s >= x.len() {
            return Err(Error::IndexOutOfRange { index: s, bound: x.len() });
        }
        let shift = match (x.at(s), x.at(s + 1)) {
            (Letter::Up, Letter::Down) => 1,
            (Letter::Down, Letter::Up) => -1,
            _ => continue,
        };
        out.add(x.swap(s), p);
        out.add(*x, &p.shift(shift));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentChoice {
    First,
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    pub n: usize,
    pub n_up: usize,
    elements: BTreeMap<CosetWord, ParabolicModuleElement>,
}

impl CanonicalBasis {
    pub fn element(&self, x: &CosetWord) -> Option<&ParabolicModuleElement> {
        self.elements.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CosetWord, &ParabolicModuleElement)> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `m_{y,x}`: the coefficient of `n_y` in `b_x`.
    pub fn polynomial(&self, y: &CosetWord, x: &CosetWord) -> LaurentPoly {
        self.elements.get(x).map(|b| b.coeff(y)).unwrap_or_default()
    }

    /// Nonzero off-diagonal polynomials with more than one term.
    pub fn non_monomial(&self) -> Vec<(CosetWord, CosetWord, LaurentPoly)> {
        let mut out = Vec::new();
        for (x, b) in &self.elements {
            for (y, p) in b.iter() {
                if !p.is_monomial() {
                    out.push((*y, *x, p.clone()));
                }
            }
        }
        out
    }
}

fn element_for(
    x: CosetWord,
    lower: &HashMap<CosetWord, ParabolicModuleElement>,
    choice: DescentChoice,
) -> Result<ParabolicModuleElement> {
    let ds = x.descents();
    let s = match choice {
        DescentChoice::First => ds[0],
        DescentChoice::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (x.downs.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
            *ds.choose(&mut rng).expect("positive length has a descent")
        }
    };
    let sx = x.swap(s);
    let mut c = cs_action(&lower[&sx], s)?;
    let mut ys: Vec<CosetWord> = c.iter().map(|(y, _)| *y).filter(|y| *y != x).collect();
    ys.sort_by_key(|y| std::cmp::Reverse(y.length()));
    for y in ys {
        let k = c.coeff(&y).constant_term();
        if k != 0 {
            let by = lower.get(&y).ok_or_else(|| Error::KlShape(x.to_string()))?;
            c.sub_scaled(by, k);
        }
    }
    let shape_ok = c.coeff(&x) == LaurentPoly::one() && c.iter().all(|(y, p)| *y == x || p.in_v_zv());
    if !shape_ok {
        return Err(Error::KlShape(x.to_string()));
    }
    Ok(c)
}

/// Build `b_x` for every word, one length layer at a time; elements of a layer
/// are independent and built in parallel.
pub fn canonical_basis_with(n: usize, n_up: usize, choice: DescentChoice) -> Result<CanonicalBasis> {
    if n_up > n || n > 64 {
        return Err(Error::Internal(format!("no coset words with {n_up} ∧ among {n} letters")));
    }
    let mut layers: BTreeMap<usize, Vec<CosetWord>> = BTreeMap::new();
    for x in CosetWord::all(n, n_up) {
        layers.entry(x.length()).or_default().push(x);
    }
    let mut done: HashMap<CosetWord, ParabolicModuleElement> = HashMap::new();
    for (len, xs) in layers {
        let built: Vec<(CosetWord, ParabolicModuleElement)> = if len == 0 {
            xs.iter().map(|&x| (x, ParabolicModuleElement::basis(x))).collect()
        } else {
            xs.par_iter().map(|&x| element_for(x, &done, choice).map(|b| (x, b))).collect::<Result<_>>()?
        };
        done.extend(built);
    }
    Ok(CanonicalBasis { n, n_up, elements: done.into_iter().collect() })
}

pub fn canonical_basis(n: usize, n_up: usize) -> Result<CanonicalBasis> {
    canonical_basis_with(n, n_up, DescentChoice::First)
}

type Cache = Mutex<HashMap<(usize, usize), Arc<CanonicalBasis>>>;

/// Process-wide memo of [`canonical_basis`].
pub fn cached_basis(n: usize, n_up: usize) -> Result<Arc<CanonicalBasis>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("cache lock").get(&(n, n_up)) {
        return Ok(b.clone());
    }
    let b = Arc::new(canonical_basis(n, n_up)?);
    cache.lock().expect("cache lock").insert((n, n_up), b.clone());
    Ok(b)
}

/// `m_{Ψ,Θ}(1)` after deleting the placeholders of both words.
pub fn kl_at_one(theta: &UpDownWord, psi: &UpDownWord) -> Result<i64> {
    if theta.len() != psi.len() {
        return Err(Error::LengthMismatch(theta.len(), psi.len()));
    }
    if !theta.same_block_shape(psi) {
        return Err(Error::IncompatibleWord { word: psi.to_string(), template: theta.to_string() });
    }
    let x = CosetWord::from_updown(theta)?;
    let y = CosetWord::from_updown(psi)?;
    let basis = cached_basis(x.len(), x.n_up())?;
    Ok(basis.polynomial(&y, &x).eval_at_one())
}
