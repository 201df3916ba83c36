//! Formal rational combinations of symbols and the operators `e_i`, `f_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::crystal::{add_box, addable_boxes, remove_box, removable_boxes, Order};
use crate::error::{Error, Result};
use crate::symbols::Symbol;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<Symbol, BigRational>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn basis(th: Symbol) -> Self {
        let mut v = FockVector::zero();
        v.add_term(th, BigRational::one());
        v
    }

    pub fn add_term(&mut self, th: Symbol, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(th).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn coeff(&self, th: &Symbol) -> BigRational {
        self.terms.get(th).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> FockVector {
        let mut out = FockVector::zero();
        for (th, a) in &self.terms {
            out.add_term(th.clone(), a * c);
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl Add for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (th, c) in &rhs.terms {
            out.add_term(th.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (th, c) in &rhs.terms {
            out.add_term(th.clone(), -c);
        }
        out
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (th, c)) in self.terms.iter().enumerate() {
            let sign = match (n, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let a = c.abs();
            if a.is_one() {
                write!(f, "{sign}[{th}]")?;
            } else {
                write!(f, "{sign}{a}[{th}]")?;
            }
        }
        Ok(())
    }
}

/// Removes every removable i-box of every term.
pub fn fock_e(v: &FockVector, i: i64, d: Order) -> FockVector {
    let mut out = FockVector::zero();
    for (th, c) in v.iter() {
        for b in removable_boxes(th, i, d) {
            out.add_term(remove_box(th, b).expect("box was listed as removable"), c.clone());
        }
    }
    out
}

/// Adds every addable i-box of every term.
pub fn fock_f(v: &FockVector, i: i64, d: Order) -> FockVector {
    let mut out = FockVector::zero();
    for (th, c) in v.iter() {
        for b in addable_boxes(th, i, d) {
            out.add_term(add_box(th, b).expect("box was listed as addable"), c.clone());
        }
    }
    out
}

fn divided(v: &FockVector, n: u32, step: impl Fn(&FockVector) -> FockVector) -> Result<FockVector> {
    let mut w = v.clone();
    for _ in 0..n {
        w = step(&w);
    }
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let out = w.scale(&BigRational::new(BigInt::one(), fact));
    if v.is_integral() && !out.is_integral() {
        return Err(Error::NonIntegral);
    }
    Ok(out)
}

/// `e_i^n / n!`.
pub fn fock_e_divided(v: &FockVector, i: i64, n: u32, d: Order) -> Result<FockVector> {
    divided(v, n, |w| fock_e(w, i, d))
}

/// `f_i^n / n!`.
pub fn fock_f_divided(v: &FockVector, i: i64, n: u32, d: Order) -> Result<FockVector> {
    divided(v, n, |w| fock_f(w, i, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{e_tilde, sl2_weight};

    fn sym(s: &str) -> Symbol {
        s.parse().unwrap()
    }

    fn d(n: i64) -> Order {
        Order::new(n).unwrap()
    }

    #[test]
    fn e_on_empty_is_zero() {
        let v = FockVector::basis(sym("| @ 0,0"));
        for i in 0..4 {
            assert!(fock_e(&v, i, d(4)).is_zero());
        }
    }

    #[test]
    fn e_on_cocore_example() {
        let th = sym("3,1|3,1,1 @ -10,9");
        let v = fock_e(&FockVector::basis(th.clone()), 5, d(12));
        assert_eq!(v.len(), 1);
        let (t, c) = v.iter().next().unwrap();
        assert!(c.is_one());
        assert_eq!(Some(t.clone()), e_tilde(&th, 5, d(12)));
    }

    #[test]
    fn divided_powers() {
        let th = sym("2,1|1 @ 1,-2");
        let v = FockVector::basis(th.clone());
        assert_eq!(fock_e_divided(&v, 0, 0, d(4)).unwrap(), v);
        for i in 0..4 {
            assert_eq!(fock_e_divided(&v, i, 1, d(4)).unwrap(), fock_e(&v, i, d(4)));
            assert!(fock_f_divided(&v, i, 3, d(4)).unwrap().is_integral());
        }
    }

    #[test]
    fn commutator_small() {
        let th = sym("2,1|3 @ 0,2");
        for i in 0..6 {
            let b = FockVector::basis(th.clone());
            let ef = fock_e(&fock_f(&b, i, d(6)), i, d(6));
            let fe = fock_f(&fock_e(&b, i, d(6)), i, d(6));
            let w = BigRational::from_integer(sl2_weight(&th, i, d(6)).into());
            assert_eq!(&ef - &fe, b.scale(&w));
        }
    }

    #[test]
    fn display() {
        let mut v = FockVector::basis(sym("1| @ 0,0"));
        v.add_term(sym("|1 @ 0,0"), BigRational::from_integer((-2).into()));
        assert_eq!(v.to_string(), "-2[|1 @ 0,0] + [1| @ 0,0]");
    }
}
