//! Group types, cuspidal charges and Harish-Chandra series.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbols::{Charge, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupType {
    B,
    C,
    D,
    #[serde(rename = "2D")]
    TwoD,
}

impl FromStr for GroupType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(GroupType::B),
            "C" | "c" => Ok(GroupType::C),
            "D" | "d" => Ok(GroupType::D),
            "2D" | "2d" | "TwoD" => Ok(GroupType::TwoD),
            other => Err(Error::Parse { pos: 1, msg: format!("unknown group type {other:?}; expected B, C, D or 2D") }),
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupType::B => "B",
            GroupType::C => "C",
            GroupType::D => "D",
            GroupType::TwoD => "2D",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesLabel {
    pub group: GroupType,
    pub t: i64,
    pub charge: Charge,
    pub cuspidal_rank: u32,
}

impl SeriesLabel {
    pub fn new(group: GroupType, t: i64) -> Result<Self> {
        let charge = sigma_charge(group, t)?;
        let t = match group {
            GroupType::B | GroupType::C => canonical_bc_t(t),
            _ => t,
        };
        let cuspidal_rank = match group {
            GroupType::B | GroupType::C => t * t + t,
            GroupType::D | GroupType::TwoD => t * t,
        } as u32;
        Ok(SeriesLabel { group, t, charge, cuspidal_rank })
    }

    pub fn defect(&self) -> i64 {
        self.charge.s2 - self.charge.s1
    }
}

/// `t` and `-1-t` name the same cuspidal character in types B and C.
pub fn canonical_bc_t(t: i64) -> i64 {
    if t < 0 {
        -1 - t
    } else {
        t
    }
}

pub fn sigma_charge(group: GroupType, t: i64) -> Result<Charge> {
    let even = t.rem_euclid(2) == 0;
    match (group, even) {
        (GroupType::B | GroupType::C, true) => Ok(Charge::new(t, -1 - t)),
        (GroupType::B | GroupType::C, false) => Ok(Charge::new(-1 - t, t)),
        (GroupType::D, true) => Ok(Charge::new(t, -t)),
        (GroupType::TwoD, false) => Ok(Charge::new(-t, t)),
        (GroupType::D, false) => Err(Error::InvalidSeries(format!("type D needs even t, got {t}"))),
        (GroupType::TwoD, true) => Err(Error::InvalidSeries(format!("type 2D needs odd t, got {t}"))),
    }
}

/// All series of the group of rank `n`, as `(label, m)` with the series
/// labelled by bipartitions of `m`.
pub fn enumerate_series(group: GroupType, n: u32) -> Vec<(SeriesLabel, u32)> {
    let n = n as i64;
    let mut out = Vec::new();
    let push = |t: i64, out: &mut Vec<(SeriesLabel, u32)>| {
        let l = SeriesLabel::new(group, t).expect("parity checked by caller");
        let m = n - l.cuspidal_rank as i64;
        out.push((l, m as u32));
    };
    match group {
        GroupType::B | GroupType::C => {
            let mut t = 0;
            while t * t + t <= n {
                push(t, &mut out);
                t += 1;
            }
        }
        GroupType::D | GroupType::TwoD => {
            let mut t = if group == GroupType::D { 0 } else { 1 };
            while t * t <= n {
                push(t, &mut out);
                if t != 0 {
                    push(-t, &mut out);
                }
                t += 2;
            }
        }
    }
    out
}

/// Flip a type B/C symbol if needed so that its charge has the orientation of
/// the listed cuspidal charges (defect congruent to 3 mod 4).
pub fn canonicalize_bc(th: &Symbol) -> Result<Symbol> {
    match th.defect().rem_euclid(4) {
        3 => Ok(th.clone()),
        1 => Ok(th.flip()),
        _ => Err(Error::InvalidSeries(format!("{th} has even defect and is not a B/C symbol"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charges() {
        assert_eq!(sigma_charge(GroupType::B, 0).unwrap(), Charge::new(0, -1));
        assert_eq!(sigma_charge(GroupType::B, 1).unwrap(), Charge::new(-2, 1));
        assert_eq!(sigma_charge(GroupType::TwoD, 1).unwrap(), Charge::new(-1, 1));
        assert_eq!(sigma_charge(GroupType::D, 2).unwrap(), Charge::new(2, -2));
        assert!(sigma_charge(GroupType::D, 1).is_err());
        assert!(sigma_charge(GroupType::TwoD, 2).is_err());
        assert_eq!(sigma_charge(GroupType::C, -1).unwrap(), sigma_charge(GroupType::C, 0).unwrap());
    }

    fn tm(v: &[(SeriesLabel, u32)]) -> Vec<(i64, u32)> {
        v.iter().map(|(l, m)| (l.t, *m)).collect()
    }

    #[test]
    fn series_lists() {
        assert_eq!(tm(&enumerate_series(GroupType::B, 4)), vec![(0, 4), (1, 2)]);
        assert_eq!(tm(&enumerate_series(GroupType::D, 4)), vec![(0, 4), (2, 0), (-2, 0)]);
        assert_eq!(tm(&enumerate_series(GroupType::D, 0)), vec![(0, 0)]);
        assert!(tm(&enumerate_series(GroupType::B, 35)).contains(&(4, 15)));
        assert_eq!(tm(&enumerate_series(GroupType::TwoD, 4)), vec![(1, 3), (-1, 3)]);
    }

    #[test]
    fn defects() {
        for t in 0..5 {
            let l = SeriesLabel::new(GroupType::B, t).unwrap();
            assert_eq!(l.defect(), if t % 2 == 0 { -2 * t - 1 } else { 2 * t + 1 });
        }
        assert_eq!(SeriesLabel::new(GroupType::D, -2).unwrap().defect(), 4);
        assert_eq!(SeriesLabel::new(GroupType::TwoD, 3).unwrap().defect(), 6);
    }

    #[test]
    fn bc_canonical() {
        let th: Symbol = "1|2 @ -1,0".parse().unwrap();
        assert_eq!(canonicalize_bc(&th).unwrap(), th.flip());
        let th: Symbol = "1|2 @ 0,-1".parse().unwrap();
        assert_eq!(canonicalize_bc(&th).unwrap(), th);
        assert!(canonicalize_bc(&"| @ 0,0".parse().unwrap()).is_err());
    }
}
