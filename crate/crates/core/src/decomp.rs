//! Decomposition submatrices of a d-small series inside a block.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::crystal::Order;
use crate::dsmall::{canonical_region, dsmall_regions, symbol_from_word_with, updown_word, RegionChoice};
use crate::error::{Error, Result};
use crate::kl::kl_at_one;
use crate::symbols::{Charge, Symbol};
use crate::word::{block_members, cup_diagram, is_hw_pattern, raising_pairs, standard_e, word_e_tilde, Letter, UpDownWord};

/// Lexicographic order on the sorted `∧` positions.
pub fn canonical_member_order(words: &mut [UpDownWord]) {
    words.sort_by_key(|w| w.up_positions());
}

/// Members of one block, in canonical order. When built from a symbol, the
/// members also carry their symbols and a region valid for all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSeries {
    pub d: Option<Order>,
    pub charge: Option<Charge>,
    pub template: Option<Symbol>,
    pub region: Option<RegionChoice>,
    pub members: Vec<UpDownWord>,
    pub symbols: Vec<Symbol>,
}

impl BlockSeries {
    pub fn from_word(w: &UpDownWord) -> Self {
        BlockSeries {
            d: None,
            charge: None,
            template: None,
            region: None,
            members: block_members(w),
            symbols: Vec::new(),
        }
    }

    /// The block of a d-small symbol. Words are read off the first region (by
    /// start of the right window) that is admissible for every member.
    pub fn from_symbol(th: &Symbol, d: Order) -> Result<Self> {
        let r0 = canonical_region(th, d)?;
        let w0 = updown_word(th, d, &r0)?;
        let symbols: Vec<Symbol> = block_members(&w0)
            .iter()
            .map(|w| symbol_from_word_with(w, th, d, &r0))
            .collect::<Result<_>>()?;
        let region = dsmall_regions(th, d)
            .into_iter()
            .find(|r| symbols.iter().all(|s| dsmall_regions(s, d).contains(r)))
            .ok_or_else(|| Error::Internal(format!("no region shared by the block of {th}")))?;
        let mut pairs: Vec<(UpDownWord, Symbol)> = symbols
            .into_iter()
            .map(|s| Ok((updown_word(&s, d, &region)?, s)))
            .collect::<Result<_>>()?;
        pairs.sort_by_key(|(w, _)| w.up_positions());
        let (members, symbols) = pairs.into_iter().unzip();
        Ok(BlockSeries {
            d: Some(d),
            charge: Some(th.charge),
            template: Some(th.clone()),
            region: Some(region),
            members,
            symbols,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, w: &UpDownWord) -> Option<usize> {
        self.members.iter().position(|m| m == w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    ProofTrace,
    Kl,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Closed, Method::ProofTrace, Method::Kl];
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::Closed),
            "prooftrace" => Ok(Method::ProofTrace),
            "kl" => Ok(Method::Kl),
            _ => Err(Error::Parse { pos: 1, msg: format!("unknown method {s:?}") }),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Closed => "closed",
            Method::ProofTrace => "prooftrace",
            Method::Kl => "kl",
        })
    }
}

/// 1 when `psi` is `theta` with some of its cups reversed, else 0.
pub fn decomp_entry_closed(theta: &UpDownWord, psi: &UpDownWord) -> Result<u8> {
    if theta.len() != psi.len() {
        return Err(Error::LengthMismatch(theta.len(), psi.len()));
    }
    if !theta.same_block_shape(psi) {
        return Ok(0);
    }
    let cups = cup_diagram(theta).cups;
    let mut on_cup = vec![false; theta.len() + 1];
    for &(a, b) in &cups {
        on_cup[a] = true;
        on_cup[b] = true;
    }
    let rest_equal = (1..=theta.len()).all(|j| on_cup[j] || theta.at(j) == psi.at(j));
    let cups_ok = cups.iter().all(|&(a, b)| {
        matches!((psi.at(a), psi.at(b)), (Letter::Down, Letter::Up) | (Letter::Up, Letter::Down))
    });
    Ok((rest_equal && cups_ok) as u8)
}

type Column = BTreeMap<UpDownWord, i64>;

/// `e^{(n)}` on a standard basis word at the pair `(j, j+1)`.
fn divided_standard_e(w: &UpDownWord, j: usize, n: u32) -> Result<BTreeMap<UpDownWord, i64>> {
    let mut cur: BTreeMap<UpDownWord, BigRational> = BTreeMap::from([(w.clone(), BigRational::one())]);
    for _ in 0..n {
        let mut next: BTreeMap<UpDownWord, BigRational> = BTreeMap::new();
        for (v, c) in &cur {
            for u in standard_e(v, j)? {
                *next.entry(u).or_insert_with(BigRational::zero) += c;
            }
        }
        cur = next;
    }
    let fact: BigRational = (1..=n as i64).map(|k| BigRational::from_integer(k.into())).product();
    cur.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(u, c)| {
            let q = c / &fact;
            if !q.is_integer() {
                return Err(Error::NonIntegral);
            }
            Ok((u, q.to_integer().to_i64().ok_or(Error::NonIntegral)?))
        })
        .collect()
}

/// Columns `[P_W : Δ_Ψ]` by reduction to highest-weight words.
///
/// With a seed, each step picks a random raising pair instead of the first
/// one and nothing is memoized.
pub struct ProofTracer {
    memo: HashMap<UpDownWord, Column>,
    rng: Option<ChaCha8Rng>,
}

impl Default for ProofTracer {
    fn default() -> Self {
        Self::new()
    }
}

impl ProofTracer {
    pub fn new() -> Self {
        ProofTracer { memo: HashMap::new(), rng: None }
    }

    pub fn with_seed(seed: u64) -> Self {
        ProofTracer { memo: HashMap::new(), rng: Some(ChaCha8Rng::seed_from_u64(seed)) }
    }

    pub fn column(&mut self, w: &UpDownWord) -> Result<Column> {
        if let Some(c) = self.memo.get(w) {
            return Ok(c.clone());
        }
        let col = if is_hw_pattern(w) {
            Column::from([(w.clone(), 1)])
        } else {
            let pairs = raising_pairs(w);
            let (j, n) = match self.rng.as_mut() {
                Some(rng) => *pairs.choose(rng).expect("non-hw word has a raising pair"),
                None => pairs[0],
            };
            let mut up = w.clone();
            for _ in 0..n {
                up = word_e_tilde(&up, j)?.ok_or_else(|| Error::Internal(format!("ẽ stalls on {w} at {j}")))?;
            }
            let lower = self.column(&up)?;
            let mut col = Column::new();
            for psi in block_members(w) {
                debug_assert!(
                    divided_standard_e(&psi, j, n + 1)?.is_empty(),
                    "e^(n+1) does not vanish on {psi} at {j}"
                );
                let mut val = 0;
                for (phi, c) in divided_standard_e(&psi, j, n)? {
                    val += c * lower.get(&phi).copied().unwrap_or(0);
                }
                if val != 0 {
                    col.insert(psi, val);
                }
            }
            col
        };
        if self.rng.is_none() {
            self.memo.insert(w.clone(), col.clone());
        }
        Ok(col)
    }
}

/// Square matrix with `entries[row][col] = [P_col : Δ_row]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompMatrix {
    pub order: Vec<UpDownWord>,
    pub entries: Vec<Vec<i64>>,
}

impl DecompMatrix {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        self.entries.iter().map(|row| row[c]).collect()
    }

    /// Unitriangular, 0/1, cup-count supports and unit hw columns.
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        let n = self.len();
        for c in 0..n {
            let th = &self.order[c];
            let col = self.column(c);
            let support = col.iter().filter(|&&x| x != 0).count();
            let want = 1usize << cup_diagram(th).n_cups();
            if support != want {
                return Err(format!("column {th}: {support} nonzero entries, expected {want}"));
            }
            if is_hw_pattern(th) && support != 1 {
                return Err(format!("column {th}: highest-weight column is not a unit vector"));
            }
            for (r, &x) in col.iter().enumerate() {
                let psi = &self.order[r];
                if x != 0 && x != 1 {
                    return Err(format!("entry [{psi}][{th}] = {x}"));
                }
                if r == c && x != 1 {
                    return Err(format!("diagonal entry at {th} is {x}"));
                }
                if x != 0 && r > c {
                    return Err(format!("entry [{psi}][{th}] below the diagonal"));
                }
                if x != 0 {
                    let dominated =
                        psi.up_positions().iter().zip(th.up_positions()).all(|(a, b)| *a <= b);
                    if !dominated {
                        return Err(format!("entry [{psi}][{th}] not dominated by ∧ positions"));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn decomp_matrix(block: &BlockSeries, method: Method) -> Result<DecompMatrix> {
    let members = &block.members;
    let n = members.len();
    let mut entries = vec![vec![0i64; n]; n];
    let mut tracer = ProofTracer::new();
    for (c, th) in members.iter().enumerate() {
        match method {
            Method::Closed => {
                for (r, psi) in members.iter().enumerate() {
                    entries[r][c] = decomp_entry_closed(th, psi)? as i64;
                }
            }
            Method::Kl => {
                for (r, psi) in members.iter().enumerate() {
                    entries[r][c] = kl_at_one(th, psi)?;
                }
            }
            Method::ProofTrace => {
                for (psi, x) in tracer.column(th)? {
                    let r = block.index_of(&psi).ok_or_else(|| Error::Internal(format!("{psi} outside the block")))?;
                    entries[r][c] = x;
                }
            }
        }
    }
    Ok(DecompMatrix { order: members.clone(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> UpDownWord {
        s.parse().unwrap()
    }

    fn matrices(s: &str) -> Vec<DecompMatrix> {
        let b = BlockSeries::from_word(&w(s));
        Method::ALL.iter().map(|&m| decomp_matrix(&b, m).unwrap()).collect()
    }

    #[test]
    fn closed_entries() {
        assert_eq!(decomp_entry_closed(&w("∨∧"), &w("∧∨")).unwrap(), 1);
        assert_eq!(decomp_entry_closed(&w("∧∨"), &w("∨∧")).unwrap(), 0);
        assert_eq!(decomp_entry_closed(&w("∧∨"), &w("×∘")).unwrap(), 0);
        assert!(decomp_entry_closed(&w("∧∨"), &w("∧∨∧")).is_err());
        let th = w("∧∨×∨∧∧");
        let rows: Vec<String> = block_members(&th)
            .into_iter()
            .filter(|p| decomp_entry_closed(&th, p).unwrap() == 1)
            .map(|p| p.to_string())
            .collect();
        assert_eq!(rows, vec!["∧∧×∧∨∨", "∧∧×∨∧∨", "∧∨×∧∨∧", "∧∨×∨∧∧"]);
    }

    #[test]
    fn two_member_block() {
        for m in matrices("∨∧") {
            assert_eq!(m.order, vec![w("∧∨"), w("∨∧")]);
            assert_eq!(m.entries, vec![vec![1, 1], vec![0, 1]]);
        }
        for m in matrices("×∘") {
            assert_eq!(m.entries, vec![vec![1]]);
        }
    }

    #[test]
    fn nested_cups_column() {
        let ms = matrices("∨∨∧∧");
        let m = &ms[0];
        let c = m.order.iter().position(|x| *x == w("∨∨∧∧")).unwrap();
        let support: Vec<String> =
            m.order.iter().zip(m.column(c)).filter(|(_, x)| *x == 1).map(|(p, _)| p.to_string()).collect();
        assert_eq!(support, vec!["∧∧∨∨", "∧∨∧∨", "∨∧∨∧", "∨∨∧∧"]);
        assert!(ms.iter().all(|x| x == m));
        m.check_structure().unwrap();
    }

    #[test]
    fn trace_columns() {
        let mut t = ProofTracer::new();
        assert_eq!(t.column(&w("∧∨")).unwrap(), Column::from([(w("∧∨"), 1)]));
        assert_eq!(t.column(&w("∨∧")).unwrap(), Column::from([(w("∧∨"), 1), (w("∨∧"), 1)]));
        let th = w("∧∨×∨∧∧");
        let closed: Column = block_members(&th)
            .into_iter()
            .filter(|p| decomp_entry_closed(&th, p).unwrap() == 1)
            .map(|p| (p, 1))
            .collect();
        assert_eq!(t.column(&th).unwrap(), closed);
        for seed in 0..20 {
            assert_eq!(ProofTracer::with_seed(seed).column(&th).unwrap(), closed);
        }
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![w("∨×∧∧∧"), w("∧×∨∧∧"), w("∧×∧∨∧"), w("∧×∧∧∨")];
        canonical_member_order(&mut v);
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, vec!["∧×∧∧∨", "∧×∧∨∧", "∧×∨∧∧", "∨×∧∧∧"]);
        assert_eq!(BlockSeries::from_word(&w("∨×∧∧∧")).members, v);
    }

    #[test]
    fn symbol_block() {
        let d = Order::new(10).unwrap();
        let b = BlockSeries::from_symbol(&"2,1|1 @ -4,3".parse().unwrap(), d).unwrap();
        assert_eq!(b.len(), 4);
        let syms: Vec<String> = b.symbols.iter().map(|s| s.to_string()).collect();
        assert!(syms.contains(&"|1,1,1,1 @ -4,3".to_string()));
        for s in &b.symbols {
            assert!(crate::cohooks::same_block(s, &b.symbols[0], d));
        }
        for m in Method::ALL {
            decomp_matrix(&b, m).unwrap().check_structure().unwrap();
        }
    }
}
