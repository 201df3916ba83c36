//! d-small symbols: left/right regions, up-down words and residue labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crystal::Order;
use crate::error::{Error, Result};
use crate::symbols::{BetaSet, Bipartition, Partition, Row, Symbol};
use crate::word::{Letter, UpDownWord};

/// Two windows of length `d/2`, the right one `k·d` positions past the end of
/// the left one, with the right window in `active_right_row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegionChoice {
    pub left: (i64, i64),
    pub right: (i64, i64),
    pub k: i64,
    pub active_right_row: Row,
}

impl RegionChoice {
    pub fn left_row(&self) -> Row {
        self.active_right_row.other()
    }
}

impl fmt::Display for RegionChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "left [{},{}] (row {}), right [{},{}] (row {}), middle {}d",
            self.left.0,
            self.left.1,
            self.left_row(),
            self.right.0,
            self.right.1,
            self.active_right_row,
            self.k
        )
    }
}

/// Start points `a` of the windows `[a, a + d/2 - 1]` that cover every mixed
/// position of the row: the first space and the last bead. An empty row needs
/// the window to reach its charge or the position just above.
fn window_starts(b: &BetaSet, h: i64) -> std::ops::RangeInclusive<i64> {
    (b.max_bead() - h + 1)..=b.first_space()
}

/// Every admissible choice of regions, sorted by the start of the right region
/// (row 1 first on ties). Empty when the symbol is not d-small.
pub fn dsmall_regions(th: &Symbol, d: Order) -> Vec<RegionChoice> {
    let h = d.half();
    let [x1, x2] = th.betas();
    let mut out = Vec::new();
    for a1 in window_starts(&x1, h) {
        for a2 in window_starts(&x2, h) {
            let (b1, b2) = (a1 + h - 1, a2 + h - 1);
            if (b2 - b1 - h).rem_euclid(d.get()) != 0 {
                continue;
            }
            let (left, right, row) = if b2 > b1 {
                ((a1, b1), (a2, b2), Row::Two)
            } else {
                ((a2, b2), (a1, b1), Row::One)
            };
            out.push(RegionChoice { left, right, k: (right.0 - left.1 - 1) / d.get(), active_right_row: row });
        }
    }
    out.sort_by_key(|r| (r.right.0, r.active_right_row));
    out
}

pub fn is_dsmall(th: &Symbol, d: Order) -> bool {
    !dsmall_regions(th, d).is_empty()
}

pub fn canonical_region(th: &Symbol, d: Order) -> Result<RegionChoice> {
    dsmall_regions(th, d).into_iter().next().ok_or(Error::NotDSmall(d.get() as u32))
}

fn check_region(th: &Symbol, d: Order, r: &RegionChoice) -> Result<()> {
    if dsmall_regions(th, d).contains(r) {
        Ok(())
    } else {
        Err(Error::InvalidRegion(format!("{r} for {th} at d = {d}")))
    }
}

/// Position `i` compares the right region in its row with the left region in
/// the other row: `×` both beads, `∧` only the right one, `∨` only the left
/// one, `∘` neither.
pub fn updown_word(th: &Symbol, d: Order, r: &RegionChoice) -> Result<UpDownWord> {
    check_region(th, d, r)?;
    Ok(word_unchecked(th, d, r))
}

pub(crate) fn word_unchecked(th: &Symbol, d: Order, r: &RegionChoice) -> UpDownWord {
    let act = th.beta(r.active_right_row);
    let opp = th.beta(r.left_row());
    UpDownWord::new(
        (0..d.half())
            .map(|i| {
                let p = r.right.0 + i;
                let q = r.left.0 + i;
                match (act.contains(p), opp.contains(q)) {
                    (true, true) => Letter::Cross,
                    (true, false) => Letter::Up,
                    (false, true) => Letter::Down,
                    (false, false) => Letter::Circle,
                }
            })
            .collect(),
    )
}

/// Word under the canonical region.
pub fn canonical_word(th: &Symbol, d: Order) -> Result<UpDownWord> {
    let r = canonical_region(th, d)?;
    Ok(word_unchecked(th, d, &r))
}

/// Residue attached to the pair of positions `(j, j+1)` of the word, for each `j`.
pub fn residue_labels(th: &Symbol, d: Order, r: &RegionChoice) -> Result<Vec<i64>> {
    check_region(th, d, r)?;
    Ok(labels(d, r))
}

pub(crate) fn labels(d: Order, r: &RegionChoice) -> Vec<i64> {
    let base = match r.active_right_row {
        Row::One => r.right.0,
        Row::Two => r.left.0,
    };
    (0..d.half()).map(|j| d.reduce(base + j)).collect()
}

fn set_bead(b: &mut BetaSet, x: i64, on: bool) {
    match (b.contains(x), on) {
        (false, true) => b.insert(x).expect("space"),
        (true, false) => b.remove(x).expect("bead"),
        _ => {}
    }
}

/// Rewrite the regions of `template` (under `r`) so that they read `w`.
pub fn symbol_from_word_with(w: &UpDownWord, template: &Symbol, d: Order, r: &RegionChoice) -> Result<Symbol> {
    let tw = updown_word(template, d, r)?;
    if !w.same_block_shape(&tw) {
        return Err(Error::IncompatibleWord { word: w.to_string(), template: tw.to_string() });
    }
    rewrite_regions(w, template, d, r)
}

/// Overwrite the two windows of `r` in `template` with the letters of `w`,
/// whatever they are. The charge changes when `w` moves beads between rows.
pub fn rewrite_regions(w: &UpDownWord, template: &Symbol, d: Order, r: &RegionChoice) -> Result<Symbol> {
    if w.len() as i64 != d.half() {
        return Err(Error::LengthMismatch(w.len(), d.half() as usize));
    }
    let mut betas = template.betas();
    let (ai, oi) = (r.active_right_row.index(), r.left_row().index());
    for (i, &l) in w.letters().iter().enumerate() {
        let i = i as i64;
        set_bead(&mut betas[ai], r.right.0 + i, matches!(l, Letter::Cross | Letter::Up));
        set_bead(&mut betas[oi], r.left.0 + i, matches!(l, Letter::Cross | Letter::Down));
    }
    Ok(Symbol::from_betasets(&betas[0], &betas[1]))
}

pub fn symbol_from_word(w: &UpDownWord, template: &Symbol, d: Order) -> Result<Symbol> {
    let r = canonical_region(template, d)?;
    symbol_from_word_with(w, template, d, &r)
}

/// d-smallness read off the residues of box contents, with the row-2 charge
/// shifted by `d/2`: all box residues must fit in `d/2 - 1` consecutive
/// residues `r, …, r + d/2 - 2`, and the shifted charge of every empty
/// component must lie in `r - 1, …, r + d/2 - 1`.
pub fn is_dsmall_by_content(th: &Symbol, d: Order) -> bool {
    let h = d.half();
    let mut boxes = Vec::new();
    let mut empties = Vec::new();
    for row in Row::BOTH {
        let s = th.charge.get(row) + row.index() as i64 * h;
        let p = th.bipartition.component(row);
        if p.is_empty() {
            empties.push(d.reduce(s));
        }
        for (a, &len) in p.parts().iter().enumerate() {
            for b in 0..len as i64 {
                boxes.push(d.reduce(b - a as i64 + s));
            }
        }
    }
    let within = |x: i64, lo: i64, len: i64| d.reduce(x - lo) < len;
    (0..d.get()).any(|r| {
        boxes.iter().all(|&x| within(x, r, h - 1)) && empties.iter().all(|&x| within(x, r - 1, h + 1))
    })
}

/// Shape and charge that a symbol annihilated by every raising operator must
/// have: a `n_up × n_down` rectangle in the row of the left region, with the
/// charge difference fixed modulo `d`.
pub fn hw_rectangle_holds(th: &Symbol, d: Order, r: &RegionChoice, n_up: usize, n_down: usize) -> bool {
    let rect = if n_up > 0 && n_down > 0 {
        Partition::new(vec![n_up as u32; n_down]).expect("rectangle")
    } else {
        Partition::empty()
    };
    let (w, h) = (n_up as i64, n_down as i64);
    let (s1, s2) = (th.charge.s1, th.charge.s2);
    let dd = d.get();
    let first = Bipartition::new(rect.clone(), Partition::empty());
    let second = Bipartition::new(Partition::empty(), rect.clone());
    let row_ok = |row: Row| rect.is_empty() || r.left_row() == row;
    let k1 = s2 + d.half() - s1 - w + h;
    let k2 = s1 - s2 - d.half() - w + h;
    let case1 = th.bipartition == first && row_ok(Row::One) && k1 > 0 && k1 % dd == 0;
    let case2 = th.bipartition == second && row_ok(Row::Two) && k2 >= 0 && k2 % dd == 0;
    case1 || case2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Symbol {
        s.parse().unwrap()
    }

    fn d(n: i64) -> Order {
        Order::new(n).unwrap()
    }

    fn sym_from_beads(lo: i64, row1: &[i64], row2: &[i64]) -> Symbol {
        Symbol::from_betasets(&BetaSet::from_beads(lo, row1).unwrap(), &BetaSet::from_beads(lo, row2).unwrap())
    }

    #[test]
    fn unique_region_d12() {
        let th = sym("1,1,1|2,2,1 @ -4,3");
        let rs = dsmall_regions(&th, d(12));
        assert_eq!(rs.len(), 1);
        let r = rs[0];
        assert_eq!((r.left, r.right, r.k, r.active_right_row), ((-6, -1), (0, 5), 0, Row::Two));
        let w = updown_word(&th, d(12), &r).unwrap();
        assert_eq!(w.to_string(), "∧∨×∨∧∧");
        assert_eq!(canonical_region(&th, d(12)).unwrap(), r);
        assert_eq!(updown_word(&th.flip(), d(12), &dsmall_regions(&th.flip(), d(12))[0]).unwrap(), w);
    }

    #[test]
    fn middle_region_d10() {
        let th = sym("2,1,1|1,1 @ -8,7");
        let rs = dsmall_regions(&th, d(10));
        assert!(rs.iter().any(|r| r.left == (-10, -6) && r.right == (5, 9) && r.k == 1));
    }

    #[test]
    fn four_choices_d16() {
        let th = sym_from_beads(-10, &[5, 3, 2, 1, 0, -1, -2, -3, -4, -5, -6, -7, -8, -9, -10], &[-2, -4, -7, -8, -9, -10]);
        let rs = dsmall_regions(&th, d(16));
        let got: Vec<_> = rs.iter().map(|r| (r.left, r.right, r.active_right_row)).collect();
        assert_eq!(
            got,
            vec![
                ((-9, -2), (-1, 6), Row::One),
                ((-8, -1), (0, 7), Row::One),
                ((-7, 0), (1, 8), Row::One),
                ((-6, 1), (2, 9), Row::One),
            ]
        );
        let words: Vec<_> = rs.iter().map(|r| updown_word(&th, d(16), r).unwrap().normal_form()).collect();
        assert!(words.windows(2).all(|p| p[0] == p[1]));
    }

    #[test]
    fn not_dsmall() {
        let th = sym("5| @ 0,0");
        assert!(dsmall_regions(&th, d(4)).is_empty());
        assert_eq!(canonical_region(&th, d(4)), Err(Error::NotDSmall(4)));
        assert!(!is_dsmall_by_content(&th, d(4)));
    }

    #[test]
    fn content_corner_cases() {
        assert!(!is_dsmall(&sym("2| @ 0,0"), d(4)));
        assert!(!is_dsmall_by_content(&sym("2| @ 0,0"), d(4)));
        assert!(!is_dsmall(&sym("1| @ 0,0"), d(4)));
        assert!(!is_dsmall_by_content(&sym("1| @ 0,0"), d(4)));
        assert!(is_dsmall(&sym("1| @ 0,-2"), d(4)));
        assert!(is_dsmall_by_content(&sym("1| @ 0,-2"), d(4)));
    }

    #[test]
    fn labels_cocore_example() {
        let th = sym("3,1|3,1,1 @ -10,9");
        let r = dsmall_regions(&th, d(12)).into_iter().find(|r| r.right == (7, 12)).unwrap();
        assert_eq!((r.left, r.k, r.active_right_row), ((-11, -6), 1, Row::Two));
        assert_eq!(updown_word(&th, d(12), &r).unwrap().to_string(), "∘×∧∘∨∧");
        assert_eq!(residue_labels(&th, d(12), &r).unwrap(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn block_example_inverse() {
        let th = sym("2,1|1 @ -4,3");
        let r = dsmall_regions(&th, d(10)).into_iter().find(|r| r.right == (0, 4)).unwrap();
        assert_eq!(updown_word(&th, d(10), &r).unwrap().to_string(), "∧×∧∨∧");
        let psi = symbol_from_word_with(&"∨×∧∧∧".parse().unwrap(), &th, d(10), &r).unwrap();
        assert_eq!(psi, sym("|1,1,1,1 @ -4,3"));
        let same = symbol_from_word_with(&"∧×∧∨∧".parse().unwrap(), &th, d(10), &r).unwrap();
        assert_eq!(same, th);
        assert!(symbol_from_word_with(&"∧×∧∧∧".parse().unwrap(), &th, d(10), &r).is_err());
    }

    #[test]
    fn rectangle_d22() {
        let th = sym("|3,3,3,3,3 @ 4,-5");
        let rs = dsmall_regions(&th, d(22));
        assert!(!rs.is_empty());
        for r in &rs {
            let w = updown_word(&th, d(22), r).unwrap();
            assert!(crate::word::is_hw_pattern(&w));
            assert!(hw_rectangle_holds(&th, d(22), r, w.n_up(), w.n_down()));
        }
        assert_eq!(updown_word(&th, d(22), &rs[0]).unwrap().to_string(), "×××∧∧∧∨∨∨∨∨");
    }
}
