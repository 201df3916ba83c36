//! Up-down words over `{∧, ∨, ×, ∘}` and their cup diagrams.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "u")]
    Up,
    #[serde(rename = "d")]
    Down,
    #[serde(rename = "x")]
    Cross,
    #[serde(rename = "o")]
    Circle,
}

use Letter::{Circle, Cross, Down, Up};

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            '∧' | 'u' | '^' => Some(Up),
            '∨' | 'd' | 'v' => Some(Down),
            '×' | 'x' => Some(Cross),
            '∘' | 'o' => Some(Circle),
            _ => None,
        }
    }

    pub fn unicode(self) -> char {
        match self {
            Up => '∧',
            Down => '∨',
            Cross => '×',
            Circle => '∘',
        }
    }

    pub fn ascii(self) -> char {
        match self {
            Up => 'u',
            Down => 'd',
            Cross => 'x',
            Circle => 'o',
        }
    }

    /// `∧` or `∨`.
    pub fn is_oriented(self) -> bool {
        matches!(self, Up | Down)
    }

    fn hw_rank(self) -> u8 {
        match self {
            Cross => 0,
            Up => 1,
            Down => 2,
            Circle => 3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UpDownWord(pub Vec<Letter>);

impl UpDownWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        UpDownWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based.
    pub fn at(&self, j: usize) -> Letter {
        self.0[j - 1]
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    pub fn n_up(&self) -> usize {
        self.count(Up)
    }

    pub fn n_down(&self) -> usize {
        self.count(Down)
    }

    /// 1-based positions of the `∧`s, increasing.
    pub fn up_positions(&self) -> Vec<usize> {
        self.positions(Up)
    }

    pub fn positions(&self, l: Letter) -> Vec<usize> {
        (1..=self.len()).filter(|&j| self.at(j) == l).collect()
    }

    /// The word with `×` and `∘` replaced by a common marker, so two words in
    /// one block have equal skeletons.
    pub fn skeleton(&self) -> Vec<Option<Letter>> {
        self.0.iter().map(|&l| if l.is_oriented() { None } else { Some(l) }).collect()
    }

    /// Same placeholders and the same number of `∧`s.
    pub fn same_block_shape(&self, other: &UpDownWord) -> bool {
        self.skeleton() == other.skeleton() && self.n_up() == other.n_up()
    }

    /// Only the `∧`/`∨` letters.
    pub fn oriented(&self) -> Vec<Letter> {
        self.0.iter().copied().filter(|l| l.is_oriented()).collect()
    }

    /// Leading `×`s moved to the end as `∘`s. Different region choices of one
    /// symbol give words with equal normal forms.
    pub fn normal_form(&self) -> UpDownWord {
        let lead = self.0.iter().take_while(|&&l| l == Cross).count();
        let mut v = self.0[lead..].to_vec();
        v.extend(std::iter::repeat_n(Circle, lead));
        UpDownWord(v)
    }

    pub fn ascii(&self) -> String {
        self.0.iter().map(|l| l.ascii()).collect()
    }

    fn with_pair(&self, j: usize, a: Letter, b: Letter) -> UpDownWord {
        let mut v = self.0.clone();
        v[j - 1] = a;
        v[j] = b;
        UpDownWord(v)
    }

    fn check_pair(&self, j: usize) -> Result<()> {
        if j == 0 || j >= self.len() {
            return Err(Error::IndexOutOfRange { index: j, bound: self.len() });
        }
        Ok(())
    }
}

impl FromStr for UpDownWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(n, c)| {
                Letter::from_char(c).ok_or(Error::Parse {
                    pos: n + 1,
                    msg: format!("{c:?} is not one of ∧ ∨ × ∘ (or u d x o)"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(UpDownWord)
    }
}

impl fmt::Display for UpDownWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.unicode())?;
        }
        Ok(())
    }
}

/// Cups `(a, b)` join a `∨` at `a` to a `∧` at `b`; rays sit on the unmatched
/// letters. Positions are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupDiagram {
    pub cups: Vec<(usize, usize)>,
    pub rays: Vec<usize>,
}

impl CupDiagram {
    pub fn n_cups(&self) -> usize {
        self.cups.len()
    }
}

pub fn cup_diagram(w: &UpDownWord) -> CupDiagram {
    let mut stack = Vec::new();
    let mut cups = Vec::new();
    let mut rays = Vec::new();
    for j in 1..=w.len() {
        match w.at(j) {
            Down => stack.push(j),
            Up => match stack.pop() {
                Some(a) => cups.push((a, j)),
                None => rays.push(j),
            },
            _ => {}
        }
    }
    rays.extend(stack);
    cups.sort_unstable();
    rays.sort_unstable();
    CupDiagram { cups, rays }
}

/// All rearrangements of the `∧`s and `∨`s of `w`, ordered by their sorted
/// `∧`-position tuples.
pub fn block_members(w: &UpDownWord) -> Vec<UpDownWord> {
    let slots: Vec<usize> = (1..=w.len()).filter(|&j| w.at(j).is_oriented()).collect();
    slots
        .iter()
        .copied()
        .combinations(w.n_up())
        .map(|ups| {
            let mut v = w.0.clone();
            for &j in &slots {
                v[j - 1] = if ups.contains(&j) { Up } else { Down };
            }
            UpDownWord(v)
        })
        .collect()
}

/// `×…× ∧…∧ ∨…∨ ∘…∘`.
pub fn is_hw_pattern(w: &UpDownWord) -> bool {
    w.0.windows(2).all(|p| p[0].hw_rank() <= p[1].hw_rank())
}

pub fn cocore_word(w: &UpDownWord) -> UpDownWord {
    UpDownWord(w.0.iter().map(|&l| if l == Up { Down } else { l }).collect())
}

fn e_rule(a: Letter, b: Letter) -> Option<(Letter, Letter)> {
    match (a, b) {
        (Up | Down, Cross) => Some((Cross, a)),
        (Circle, Up | Down) => Some((b, Circle)),
        (Circle, Cross) => Some((Down, Up)),
        (Down, Up) => Some((Cross, Circle)),
        _ => None,
    }
}

fn f_rule(a: Letter, b: Letter) -> Option<(Letter, Letter)> {
    match (a, b) {
        (Cross, Up | Down) => Some((b, Cross)),
        (Up | Down, Circle) => Some((Circle, a)),
        (Down, Up) => Some((Circle, Cross)),
        (Cross, Circle) => Some((Down, Up)),
        _ => None,
    }
}

/// The crystal operator on the pair at positions `(j, j+1)`.
pub fn word_e_tilde(w: &UpDownWord, j: usize) -> Result<Option<UpDownWord>> {
    w.check_pair(j)?;
    Ok(e_rule(w.at(j), w.at(j + 1)).map(|(a, b)| w.with_pair(j, a, b)))
}

pub fn word_f_tilde(w: &UpDownWord, j: usize) -> Result<Option<UpDownWord>> {
    w.check_pair(j)?;
    Ok(f_rule(w.at(j), w.at(j + 1)).map(|(a, b)| w.with_pair(j, a, b)))
}

/// `e` on the standard basis, acting on the pair `(j, j+1)`.
pub fn standard_e(w: &UpDownWord, j: usize) -> Result<Vec<UpDownWord>> {
    w.check_pair(j)?;
    Ok(match (w.at(j), w.at(j + 1)) {
        (Up, Down) | (Down, Up) => vec![w.with_pair(j, Cross, Circle)],
        (a @ (Up | Down), Cross) => vec![w.with_pair(j, Cross, a)],
        (Circle, b @ (Up | Down)) => vec![w.with_pair(j, b, Circle)],
        (Circle, Cross) => vec![w.with_pair(j, Down, Up), w.with_pair(j, Up, Down)],
        _ => vec![],
    })
}

/// The first pair that admits a crystal move, with the number of moves needed
/// to turn it into `×∘` or a shifted letter.
pub fn first_raising_pair(w: &UpDownWord) -> Option<(usize, u32)> {
    raising_pairs(w).into_iter().next()
}

pub fn raising_pairs(w: &UpDownWord) -> Vec<(usize, u32)> {
    (1..w.len())
        .filter_map(|j| match (w.at(j), w.at(j + 1)) {
            (Circle, Cross) => Some((j, 2)),
            (a, b) if e_rule(a, b).is_some() => Some((j, 1)),
            _ => None,
        })
        .collect()
}
