//! Co-hooks, co-cores and block membership.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crystal::Order;
use crate::error::{Error, Result};
use crate::symbols::{Charge, Row, Symbol};

/// The pair `(x, x - e)` with `x` a bead of `row` and `x - e` a space of the other row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoHook {
    pub row: Row,
    pub x: i64,
    pub e: u32,
}

impl fmt::Display for CoHook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(row {}, {} -> {})", self.row, self.x, self.x - self.e as i64)
    }
}

/// Every e-co-hook, ordered by row and then by `x`.
pub fn cohooks(th: &Symbol, e: u32) -> Vec<CoHook> {
    let betas = th.betas();
    let mut out = Vec::new();
    for row in Row::BOTH {
        let own = &betas[row.index()];
        let other = &betas[row.other().index()];
        let lo = other.first_space() + e as i64;
        for x in lo..=own.max_bead() {
            if own.contains(x) && !other.contains(x - e as i64) {
                out.push(CoHook { row, x, e });
            }
        }
    }
    out
}

pub fn is_cohook(th: &Symbol, h: CoHook) -> bool {
    h.e >= 1 && th.contains(h.row, h.x) && !th.contains(h.row.other(), h.x - h.e as i64)
}

/// Move the bead at `x` to `x - e` in the other row, then swap the rows.
pub fn remove_cohook(th: &Symbol, h: CoHook) -> Result<Symbol> {
    if !is_cohook(th, h) {
        return Err(Error::InvalidCoHook { row: h.row.number(), x: h.x, e: h.e });
    }
    let mut betas = th.betas();
    betas[h.row.index()].remove(h.x)?;
    betas[h.row.other().index()].insert(h.x - h.e as i64)?;
    let out = Symbol::from_betasets(&betas[1], &betas[0]);
    let c = th.charge;
    debug_assert_eq!(
        out.charge,
        match h.row {
            Row::Two => Charge::new(c.s2 - 1, c.s1 + 1),
            Row::One => Charge::new(c.s2 + 1, c.s1 - 1),
        }
    );
    debug_assert_eq!(out.rank(), th.rank() - h.e as i64);
    Ok(out)
}

/// Remove the first co-hook until none is left.
pub fn cocore(th: &Symbol, e: u32) -> Symbol {
    let mut cur = th.clone();
    while let Some(&h) = cohooks(&cur, e).first() {
        cur = remove_cohook(&cur, h).expect("listed co-hook is removable");
    }
    cur
}

/// Symbols of equal rank lie in the same block when their `d/2`-co-cores coincide.
pub fn same_block(th: &Symbol, psi: &Symbol, d: Order) -> bool {
    th.rank() == psi.rank() && cocore(th, d.half() as u32) == cocore(psi, d.half() as u32)
}
