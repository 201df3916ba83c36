//! i-boxes, signature words and the crystal operators on symbols.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbols::{BetaSet, Row, Symbol};

/// The even integer `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Order(u32);

impl Order {
    pub fn new(d: i64) -> Result<Order> {
        if d < 2 || d % 2 != 0 || d > u32::MAX as i64 {
            return Err(Error::InvalidOrder(d));
        }
        Ok(Order(d as u32))
    }

    pub fn get(self) -> i64 {
        self.0 as i64
    }

    pub fn half(self) -> i64 {
        self.0 as i64 / 2
    }

    pub fn reduce(self, i: i64) -> i64 {
        i.rem_euclid(self.get())
    }
}

impl TryFrom<i64> for Order {
    type Error = Error;
    fn try_from(d: i64) -> Result<Order> {
        Order::new(d)
    }
}

impl From<Order> for i64 {
    fn from(d: Order) -> i64 {
        d.get()
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A box of a symbol, identified by the bead position `x` it is attached to:
/// an addable box moves the bead at `x` to `x + 1`, a removable one moves the
/// bead at `x + 1` to `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxPosition {
    pub row: Row,
    pub x: i64,
    pub residue: i64,
}

impl BoxPosition {
    pub fn new(row: Row, x: i64, d: Order) -> Self {
        BoxPosition { row, x, residue: d.reduce(x - row.index() as i64 * d.half()) }
    }

    /// Content taken with the row-2 charge shifted up by `d/2`.
    pub fn content(&self, d: Order) -> i64 {
        self.x + self.row.index() as i64 * d.half()
    }

    fn sort_key(&self, d: Order) -> (i64, u8) {
        (self.content(d), (self.row == Row::One) as u8)
    }
}

impl fmt::Display for BoxPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(row {}, {})", self.row, self.x)
    }
}

fn scan(th: &Symbol, i: i64, d: Order, addable: bool) -> Vec<BoxPosition> {
    let i = d.reduce(i);
    let mut out = Vec::new();
    for row in Row::BOTH {
        let b = th.beta(row);
        for x in b.floor()..=b.max_bead() {
            let hit = if addable {
                b.contains(x) && !b.contains(x + 1)
            } else {
                !b.contains(x) && b.contains(x + 1)
            };
            if hit {
                let bx = BoxPosition::new(row, x, d);
                if bx.residue == i {
                    out.push(bx);
                }
            }
        }
    }
    out.sort_by_key(|b| b.sort_key(d));
    out
}

pub fn addable_boxes(th: &Symbol, i: i64, d: Order) -> Vec<BoxPosition> {
    scan(th, i, d, true)
}

pub fn removable_boxes(th: &Symbol, i: i64, d: Order) -> Vec<BoxPosition> {
    scan(th, i, d, false)
}

fn move_bead(th: &Symbol, row: Row, from: i64, to: i64) -> Result<Symbol> {
    let mut betas: [BetaSet; 2] = th.betas();
    let b = &mut betas[row.index()];
    b.remove(from)?;
    b.insert(to)?;
    Ok(Symbol::from_betasets(&betas[0], &betas[1]))
}

pub fn add_box(th: &Symbol, b: BoxPosition) -> Result<Symbol> {
    if !(th.contains(b.row, b.x) && !th.contains(b.row, b.x + 1)) {
        return Err(Error::NoSuchBox { kind: "addable", row: b.row.number(), x: b.x });
    }
    move_bead(th, b.row, b.x, b.x + 1)
}

pub fn remove_box(th: &Symbol, b: BoxPosition) -> Result<Symbol> {
    if !(!th.contains(b.row, b.x) && th.contains(b.row, b.x + 1)) {
        return Err(Error::NoSuchBox { kind: "removable", row: b.row.number(), x: b.x });
    }
    move_bead(th, b.row, b.x + 1, b.x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "A")]
    Addable,
    #[serde(rename = "R")]
    Removable,
}

/// Addable and removable boxes of one residue in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureWord {
    pub letters: Vec<(Sign, BoxPosition)>,
}

impl SignatureWord {
    /// Cancel `R A` neighbours until the word reads `A…A R…R`.
    pub fn reduce(&self) -> SignatureWord {
        let mut out: Vec<(Sign, BoxPosition)> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if l.0 == Sign::Addable && out.last().is_some_and(|t| t.0 == Sign::Removable) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        SignatureWord { letters: out }
    }

    pub fn good_removable(&self) -> Option<BoxPosition> {
        self.reduce().letters.iter().find(|l| l.0 == Sign::Removable).map(|l| l.1)
    }

    pub fn good_addable(&self) -> Option<BoxPosition> {
        self.reduce().letters.iter().rev().find(|l| l.0 == Sign::Addable).map(|l| l.1)
    }
}

impl fmt::Display for SignatureWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, _) in &self.letters {
            f.write_str(match s {
                Sign::Addable => "A",
                Sign::Removable => "R",
            })?;
        }
        Ok(())
    }
}

pub fn signature(th: &Symbol, i: i64, d: Order) -> SignatureWord {
    let mut letters: Vec<(Sign, BoxPosition)> = addable_boxes(th, i, d)
        .into_iter()
        .map(|b| (Sign::Addable, b))
        .chain(removable_boxes(th, i, d).into_iter().map(|b| (Sign::Removable, b)))
        .collect();
    letters.sort_by_key(|l| l.1.sort_key(d));
    SignatureWord { letters }
}

pub fn e_tilde(th: &Symbol, i: i64, d: Order) -> Option<Symbol> {
    let b = signature(th, i, d).good_removable()?;
    Some(remove_box(th, b).expect("good box is removable"))
}

pub fn f_tilde(th: &Symbol, i: i64, d: Order) -> Option<Symbol> {
    let b = signature(th, i, d).good_addable()?;
    Some(add_box(th, b).expect("good box is addable"))
}

/// `#addable − #removable` i-boxes.
pub fn sl2_weight(th: &Symbol, i: i64, d: Order) -> i64 {
    addable_boxes(th, i, d).len() as i64 - removable_boxes(th, i, d).len() as i64
}

/// Number of boxes of each residue, contents taken with the row-2 charge
/// shifted by `d/2`.
pub fn residue_content_vector(th: &Symbol, d: Order) -> Vec<u32> {
    let mut n = vec![0u32; d.get() as usize];
    for row in Row::BOTH {
        let s = th.charge.get(row) + row.index() as i64 * d.half();
        for (a, &len) in th.bipartition.component(row).parts().iter().enumerate() {
            for b in 0..len as i64 {
                n[d.reduce(b - a as i64 + s) as usize] += 1;
            }
        }
    }
    n
}
