//! Partitions, charges and two-row symbols.
//!
//! A symbol is stored as a charge plus a bipartition. The β-sets
//! `X_k = { s_k + λ_j - j + 1 : j ≥ 1 }` are derived on demand as [`BetaSet`]s,
//! which keep the finitely many "interesting" beads explicitly and everything at
//! or below `floor` implicitly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are treated as padding and dropped; any other zero or an
    /// increase between consecutive parts is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `j` (0-based), zero past the end.
    pub fn part(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

fn parse_parts(s: &str, offset: usize) -> Result<Partition> {
    if s.trim().is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    let mut pos = offset;
    for tok in s.split(',') {
        let t = tok.trim();
        let col = pos + (tok.len() - tok.trim_start().len()) + 1;
        let v: u32 = t.parse().map_err(|_| Error::Parse {
            pos: col,
            msg: format!("expected a nonnegative integer part, found {t:?}"),
        })?;
        parts.push(v);
        pos += tok.len() + 1;
    }
    Partition::new(parts).map_err(|e| Error::Parse { pos: offset + 1, msg: e.to_string() })
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_parts(s, 0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub first: Partition,
    pub second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Bipartition { first, second }
    }

    pub fn from_parts(first: &[u32], second: &[u32]) -> Result<Self> {
        Ok(Bipartition::new(Partition::new(first.to_vec())?, Partition::new(second.to_vec())?))
    }

    pub fn size(&self) -> u32 {
        self.first.size() + self.second.size()
    }

    pub fn component(&self, row: Row) -> &Partition {
        match row {
            Row::One => &self.first,
            Row::Two => &self.second,
        }
    }
}

/// Text syntax `a,b,c|d,e`; either side may be empty.
impl FromStr for Bipartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bar = s.find('|').ok_or(Error::Parse {
            pos: 1,
            msg: "a bipartition needs a '|' separating its two components".into(),
        })?;
        if let Some(extra) = s[bar + 1..].find('|') {
            return Err(Error::Parse { pos: bar + extra + 2, msg: "more than one '|'".into() });
        }
        Ok(Bipartition::new(parse_parts(&s[..bar], 0)?, parse_parts(&s[bar + 1..], bar + 1)?))
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.first, self.second)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Charge {
    pub s1: i64,
    pub s2: i64,
}

impl Charge {
    pub fn new(s1: i64, s2: i64) -> Self {
        Charge { s1, s2 }
    }

    pub fn get(&self, row: Row) -> i64 {
        match row {
            Row::One => self.s1,
            Row::Two => self.s2,
        }
    }

    pub fn swapped(&self) -> Charge {
        Charge::new(self.s2, self.s1)
    }
}

impl FromStr for Charge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let comma = s.find(',').ok_or(Error::Parse {
            pos: 1,
            msg: "a charge is written s1,s2".into(),
        })?;
        let num = |t: &str, pos: usize| -> Result<i64> {
            t.trim().parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("expected an integer, found {:?}", t.trim()),
            })
        };
        Ok(Charge::new(num(&s[..comma], 1)?, num(&s[comma + 1..], comma + 2)?))
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.s1, self.s2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Row {
    One,
    Two,
}

impl Row {
    pub const BOTH: [Row; 2] = [Row::One, Row::Two];

    pub fn other(self) -> Row {
        match self {
            Row::One => Row::Two,
            Row::Two => Row::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Row::One => 1,
            Row::Two => 2,
        }
    }

    pub fn index(self) -> usize {
        self.number() as usize - 1
    }
}

impl TryFrom<u8> for Row {
    type Error = Error;
    fn try_from(v: u8) -> Result<Row> {
        match v {
            1 => Ok(Row::One),
            2 => Ok(Row::Two),
            _ => Err(Error::Parse { pos: 1, msg: format!("row must be 1 or 2, got {v}") }),
        }
    }
}

impl From<Row> for u8 {
    fn from(r: Row) -> u8 {
        r.number()
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A β-set `{x ≤ floor} ∪ top`, normalised so that `floor + 1` is a space and
/// `top` is strictly decreasing with every element above `floor + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaSet {
    floor: i64,
    top: Vec<i64>,
}

impl BetaSet {
    pub fn from_partition(p: &Partition, s: i64) -> Self {
        let top = p.parts().iter().enumerate().map(|(j, &l)| s + l as i64 - j as i64).collect();
        BetaSet { floor: s - p.len() as i64, top }
    }

    /// The set `{x < lo} ∪ beads`. Every listed bead must be `≥ lo` and appear once.
    pub fn from_beads(lo: i64, beads: &[i64]) -> Result<Self> {
        let mut top: Vec<i64> = beads.to_vec();
        top.sort_unstable_by(|a, b| b.cmp(a));
        if let Some(&m) = top.last() {
            if m < lo {
                return Err(Error::InvalidBetaSet(format!("bead {m} lies below the window start {lo}")));
            }
        }
        if top.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidBetaSet("repeated bead".into()));
        }
        let mut b = BetaSet { floor: lo - 1, top };
        b.normalize();
        Ok(b)
    }

    fn normalize(&mut self) {
        while self.top.last() == Some(&(self.floor + 1)) {
            self.top.pop();
            self.floor += 1;
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        x <= self.floor || self.top.contains(&x)
    }

    /// Largest bead.
    pub fn max_bead(&self) -> i64 {
        self.top.first().copied().unwrap_or(self.floor)
    }

    /// Smallest space.
    pub fn first_space(&self) -> i64 {
        self.floor + 1
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// Beads above the solid part, in decreasing order.
    pub fn top(&self) -> &[i64] {
        &self.top
    }

    pub fn charge(&self) -> i64 {
        self.floor + self.top.len() as i64
    }

    pub fn partition(&self) -> Partition {
        let s = self.charge();
        Partition(self.top.iter().enumerate().map(|(j, &x)| (x - s + j as i64) as u32).collect())
    }

    pub fn insert(&mut self, x: i64) -> Result<()> {
        if self.contains(x) {
            return Err(Error::InvalidBetaSet(format!("{x} is already a bead")));
        }
        let pos = self.top.iter().position(|&y| y < x).unwrap_or(self.top.len());
        self.top.insert(pos, x);
        self.normalize();
        Ok(())
    }

    pub fn remove(&mut self, x: i64) -> Result<()> {
        if let Some(pos) = self.top.iter().position(|&y| y == x) {
            self.top.remove(pos);
        } else if x <= self.floor {
            self.top.extend((x + 1..=self.floor).rev());
            self.floor = x - 1;
        } else {
            return Err(Error::InvalidBetaSet(format!("{x} is not a bead")));
        }
        self.normalize();
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub charge: Charge,
    pub bipartition: Bipartition,
}

impl Symbol {
    pub fn new(bipartition: Bipartition, charge: Charge) -> Self {
        Symbol { charge, bipartition }
    }

    pub fn from_betasets(x1: &BetaSet, x2: &BetaSet) -> Self {
        Symbol {
            charge: Charge::new(x1.charge(), x2.charge()),
            bipartition: Bipartition::new(x1.partition(), x2.partition()),
        }
    }

    pub fn beta(&self, row: Row) -> BetaSet {
        BetaSet::from_partition(self.bipartition.component(row), self.charge.get(row))
    }

    pub fn betas(&self) -> [BetaSet; 2] {
        [self.beta(Row::One), self.beta(Row::Two)]
    }

    pub fn contains(&self, row: Row, x: i64) -> bool {
        let p = self.bipartition.component(row);
        let s = self.charge.get(row);
        x <= s - p.len() as i64 || (0..p.len()).any(|j| s + p.part(j) as i64 - j as i64 == x)
    }

    pub fn defect(&self) -> i64 {
        self.charge.s2 - self.charge.s1
    }

    pub fn size(&self) -> u32 {
        self.bipartition.size()
    }

    /// `|λ| + ⌊defect² / 4⌋`: the rank of the classical group whose unipotent
    /// characters this symbol labels.
    pub fn rank(&self) -> i64 {
        let d = self.defect();
        self.size() as i64 + d * d / 4
    }

    /// Swap the two rows together with the two charge components.
    pub fn flip(&self) -> Symbol {
        Symbol {
            charge: self.charge.swapped(),
            bipartition: Bipartition::new(self.bipartition.second.clone(), self.bipartition.first.clone()),
        }
    }

    pub fn window(&self, lo: i64, hi: i64) -> AbacusWindow {
        let [x1, x2] = self.betas();
        let flags = |b: &BetaSet| (lo..=hi).map(|x| b.contains(x)).collect();
        AbacusWindow { lo, hi: hi.max(lo), rows: [flags(&x1), flags(&x2)] }
    }

    /// A window that shows every non-trivial bead with one solid column on the left.
    pub fn default_window(&self) -> (i64, i64) {
        let [x1, x2] = self.betas();
        (x1.floor().min(x2.floor()), x1.max_bead().max(x2.max_bead()) + 1)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.bipartition, self.charge)
    }
}

/// `a,b|c @ s1,s2`.
impl FromStr for Symbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let at = s.find('@').ok_or(Error::Parse { pos: 1, msg: "expected 'bipartition @ charge'".into() })?;
        let bp: Bipartition = s[..at].trim().parse()?;
        let c: Charge = s[at + 1..].trim().parse().map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + at + 1, msg },
            e => e,
        })?;
        Ok(Symbol::new(bp, c))
    }
}

/// Recover the bipartition from a pair of β-sets, checking that they carry the
/// expected charge.
pub fn bipartition_from_betasets(x1: &BetaSet, x2: &BetaSet, c: Charge) -> Result<Bipartition> {
    if x1.charge() != c.s1 || x2.charge() != c.s2 {
        return Err(Error::InvalidBetaSet(format!(
            "bead counts give charge {},{} but {c} was expected",
            x1.charge(),
            x2.charge()
        )));
    }
    Ok(Bipartition::new(x1.partition(), x2.partition()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Glyphs {
    pub bead: char,
    pub space: char,
}

impl Glyphs {
    pub const UNICODE: Glyphs = Glyphs { bead: '●', space: '·' };
    pub const ASCII: Glyphs = Glyphs { bead: 'o', space: '.' };
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbacusWindow {
    pub lo: i64,
    pub hi: i64,
    /// `rows[0]` is row 1.
    pub rows: [Vec<bool>; 2],
}

impl AbacusWindow {
    pub fn bead(&self, row: Row, x: i64) -> Option<bool> {
        if x < self.lo || x > self.hi {
            return None;
        }
        Some(self.rows[row.index()][(x - self.lo) as usize])
    }

    /// Row 2 on top, row 1 below it, integer ruler underneath.
    pub fn render(&self, g: Glyphs) -> String {
        let w = self.lo.to_string().len().max(self.hi.to_string().len());
        let line = |label: &str, cells: Vec<String>| {
            let body: Vec<String> = cells.iter().map(|c| format!("{c:>w$}")).collect();
            format!("{label} {}", body.join(" ")).trim_end().to_string()
        };
        let glyph_row = |r: &Vec<bool>| {
            r.iter().map(|&b| if b { g.bead } else { g.space }.to_string()).collect::<Vec<_>>()
        };
        let ruler = (self.lo..=self.hi).map(|x| x.to_string()).collect();
        [line("2", glyph_row(&self.rows[1])), line("1", glyph_row(&self.rows[0])), line(" ", ruler)].join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_symbol() -> Symbol {
        "1,1,1|2,2,1 @ -4,3".parse().unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap().parts(), &[2, 1]);
        assert_eq!("3, 1,1".parse::<Partition>().unwrap().size(), 5);
    }

    #[test]
    fn bipartition_syntax() {
        for s in ["|", "2|", "|1,1", "3,1|2,2"] {
            let bp: Bipartition = s.parse().unwrap();
            assert_eq!(bp.to_string(), s);
        }
        let e = "1,x|2".parse::<Bipartition>().unwrap_err();
        assert_eq!(e, Error::Parse { pos: 3, msg: "expected a nonnegative integer part, found \"x\"".into() });
        assert!("1,2".parse::<Bipartition>().is_err());
        assert!("1|2|3".parse::<Bipartition>().is_err());
    }

    #[test]
    fn trivial_symbol() {
        let t = Symbol::new(Bipartition::default(), Charge::new(0, 0));
        for row in Row::BOTH {
            let b = t.beta(row);
            assert_eq!(b.max_bead(), 0);
            assert!(b.contains(-5) && !b.contains(1));
        }
        assert_eq!(t.flip(), t);
    }

    #[test]
    fn example_betasets() {
        let th = example_symbol();
        let [x1, x2] = th.betas();
        let beads = |b: &BetaSet| (-9..=7).filter(|&x| b.contains(x)).collect::<Vec<_>>();
        assert_eq!(beads(&x1), vec![-9, -8, -7, -5, -4, -3]);
        assert_eq!(beads(&x2), vec![-9, -8, -7, -6, -5, -4, -3, -2, -1, 0, 2, 4, 5]);
        assert_eq!(th.flip().to_string(), "2,2,1|1,1,1 @ 3,-4");
        assert_eq!(th.flip().flip(), th);
    }

    #[test]
    fn single_row_example() {
        let th: Symbol = "2| @ 1,0".parse().unwrap();
        let x1 = th.beta(Row::One);
        assert!(x1.contains(3) && !x1.contains(2) && !x1.contains(1) && x1.contains(0));
        let w = th.window(0, 3);
        assert_eq!(w.rows[0], vec![true, false, false, true]);
        assert_eq!(w.rows[1], vec![true, false, false, false]);
        let back = BetaSet::from_beads(1, &[3]).unwrap();
        assert_eq!(back.partition().parts(), &[2]);
        assert_eq!(back.charge(), 1);
    }

    #[test]
    fn inverse_from_beads() {
        let x1 = BetaSet::from_beads(-6, &[-3, -4, -5]).unwrap();
        let x2 = BetaSet::from_beads(-6, &[5, 4, 2, 0, -1, -2, -3, -4, -5, -6]).unwrap();
        let bp = bipartition_from_betasets(&x1, &x2, Charge::new(-4, 3)).unwrap();
        assert_eq!(bp.to_string(), "1,1,1|2,2,1");
        assert!(bipartition_from_betasets(&x1, &x2, Charge::new(-4, 2)).is_err());
        assert!(BetaSet::from_beads(0, &[1, 1]).is_err());
        assert!(BetaSet::from_beads(0, &[-1]).is_err());
    }

    #[test]
    fn insert_remove() {
        let mut b = BetaSet::from_partition(&Partition::empty(), 0);
        b.insert(2).unwrap();
        assert_eq!(b.partition().parts(), &[1]);
        assert_eq!(b.charge(), 1);
        b.remove(-3).unwrap();
        assert_eq!(b.charge(), 0);
        assert!(!b.contains(-3) && b.contains(-2) && b.contains(-4));
        assert!(b.remove(-3).is_err());
        assert!(b.insert(0).is_err());
    }

    #[test]
    fn render_trivial() {
        let t = Symbol::new(Bipartition::default(), Charge::new(0, 0));
        assert_eq!(t.window(-2, 1).render(Glyphs::ASCII), "2  o  o  o  .\n1  o  o  o  .\n  -2 -1  0  1");
    }

    #[test]
    fn contains_matches_betaset() {
        let th = example_symbol();
        for row in Row::BOTH {
            let b = th.beta(row);
            for x in -20..20 {
                assert_eq!(th.contains(row, x), b.contains(x), "{row} {x}");
            }
        }
    }

    #[test]
    fn rank_of_series_charges() {
        let th: Symbol = "| @ 4,-5".parse().unwrap();
        assert_eq!(th.rank(), 20);
    }
}
