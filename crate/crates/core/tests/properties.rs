use proptest::prelude::*;

use unidecomp::crystal::{e_tilde, f_tilde, Order};
use unidecomp::dsmall::{dsmall_regions, hw_rectangle_holds, is_dsmall, is_dsmall_by_content, residue_labels, updown_word};
use unidecomp::enumerate::{bipartitions_up_to, dsmall_symbols};
use unidecomp::symbols::{Bipartition, Charge, Partition, Symbol};
use unidecomp::word::{cup_diagram, is_hw_pattern, Letter, UpDownWord};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..6, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn symbol() -> impl Strategy<Value = Symbol> {
    (partition(), partition(), -12i64..12, -12i64..12)
        .prop_map(|(a, b, s1, s2)| Symbol::new(Bipartition::new(a, b), Charge::new(s1, s2)))
}

fn word() -> impl Strategy<Value = UpDownWord> {
    prop::collection::vec(prop_oneof![Just(Letter::Up), Just(Letter::Down), Just(Letter::Cross), Just(Letter::Circle)], 0..12)
        .prop_map(UpDownWord::new)
}

fn order() -> impl Strategy<Value = Order> {
    (1i64..7).prop_map(|h| Order::new(2 * h).unwrap())
}

proptest! {
    #[test]
    fn flip_is_an_involution(th in symbol()) {
        prop_assert_eq!(th.flip().flip(), th.clone());
        prop_assert_eq!(th.flip().defect(), -th.defect());
        prop_assert_eq!(th.flip().rank(), th.rank());
    }

    #[test]
    fn symbol_text_round_trip(th in symbol()) {
        prop_assert_eq!(th.to_string().parse::<Symbol>().unwrap(), th.clone());
        let json = serde_json::to_string(&th).unwrap();
        prop_assert_eq!(serde_json::from_str::<Symbol>(&json).unwrap(), th);
    }

    #[test]
    fn betasets_round_trip(th in symbol()) {
        let [x1, x2] = th.betas();
        prop_assert_eq!(Symbol::from_betasets(&x1, &x2), th);
    }

    #[test]
    fn word_round_trip(w in word()) {
        prop_assert_eq!(w.to_string().parse::<UpDownWord>().unwrap(), w.clone());
        prop_assert_eq!(w.ascii().parse::<UpDownWord>().unwrap(), w);
    }

    #[test]
    fn crystal_operators_are_partial_inverses(th in symbol(), d in order(), i in 0i64..12) {
        if let Some(up) = e_tilde(&th, i, d) {
            prop_assert_eq!(f_tilde(&up, i, d), Some(th.clone()));
        }
        if let Some(down) = f_tilde(&th, i, d) {
            prop_assert_eq!(e_tilde(&down, i, d), Some(th));
        }
    }

    #[test]
    fn cups_are_noncrossing(w in word()) {
        let c = cup_diagram(&w);
        let oriented = w.letters().iter().filter(|l| l.is_oriented()).count();
        prop_assert_eq!(2 * c.n_cups() + c.rays.len(), oriented);
        for &(a, b) in &c.cups {
            prop_assert_eq!(w.at(a), Letter::Down);
            prop_assert_eq!(w.at(b), Letter::Up);
            for &(x, y) in &c.cups {
                prop_assert!(!(a < x && x < b && b < y));
            }
            for &r in &c.rays {
                prop_assert!(!(a < r && r < b));
            }
        }
        let rays: Vec<Letter> = c.rays.iter().map(|&r| w.at(r)).collect();
        prop_assert!(rays.windows(2).all(|p| !(p[0] == Letter::Down && p[1] == Letter::Up)));
    }

    #[test]
    fn regions_are_admissible(th in symbol(), d in order()) {
        for r in dsmall_regions(&th, d) {
            prop_assert_eq!(r.right.1 - r.right.0 + 1, d.half());
            prop_assert_eq!(r.left.1 - r.left.0 + 1, d.half());
            prop_assert!(r.right.0 > r.left.1);
            prop_assert_eq!((r.right.0 - r.left.1 - 1).rem_euclid(d.get()), 0);
            let w = updown_word(&th, d, &r).unwrap();
            prop_assert_eq!(w.len() as i64, d.half());
        }
    }
}

#[test]
fn content_test_matches_regions() {
    let mut small = 0;
    for h in 1..=6 {
        let d = Order::new(2 * h).unwrap();
        for bp in bipartitions_up_to(7) {
            for s2 in -(4 * h + 10)..=(4 * h + 10) {
                for s1 in 0..2 {
                    let th = Symbol::new(bp.clone(), Charge::new(s1, s2));
                    assert_eq!(is_dsmall(&th, d), is_dsmall_by_content(&th, d), "{th} at d = {d}");
                    small += is_dsmall(&th, d) as usize;
                }
            }
        }
    }
    assert!(small > 1000, "{small}");
}

#[test]
fn highest_weight_words_are_rectangles() {
    let mut hw = 0;
    for h in 1..=5 {
        let d = Order::new(2 * h).unwrap();
        for th in dsmall_symbols(d, 8, 3 * d.get() + 10) {
            for r in dsmall_regions(&th, d) {
                let w = updown_word(&th, d, &r).unwrap();
                let labels = residue_labels(&th, d, &r).unwrap();
                let annihilated = (1..w.len()).all(|j| e_tilde(&th, labels[j - 1], d).is_none());
                assert_eq!(is_hw_pattern(&w), annihilated, "{th} at d = {d}, {r}");
                hw += annihilated as usize;
                assert_eq!(
                    is_hw_pattern(&w),
                    hw_rectangle_holds(&th, d, &r, w.n_up(), w.n_down()),
                    "{th} at d = {d}, {r}, word {w}"
                );
            }
        }
    }
    assert!(hw > 100, "{hw}");
}
