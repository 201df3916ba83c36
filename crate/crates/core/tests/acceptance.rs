use std::process::ExitCode;
use std::time::{Duration, Instant};

use unidecomp::cohooks::{cocore, cohooks};
use unidecomp::crystal::{addable_boxes, e_tilde, signature, Order};
use unidecomp::decomp::BlockSeries;
use unidecomp::dsmall::{canonical_region, dsmall_regions, residue_labels, updown_word, RegionChoice};
use unidecomp::kl::canonical_basis;
use unidecomp::symbols::{BetaSet, Row, Symbol};
use unidecomp::verify::{
    blocks_lemma, block_structure, cocore_lemma, cocore_orders, crystal_conformance, decomp_agreement,
    fock_commutator, kl_checks, Report,
};
use unidecomp::word::{cocore_word, cup_diagram, is_hw_pattern, word_e_tilde, UpDownWord};

type Check = Result<(), String>;
type Golden = (&'static str, fn() -> Check);

fn sym(s: &str) -> Symbol {
    s.parse().unwrap()
}

fn d(n: i64) -> Order {
    Order::new(n).unwrap()
}

fn w(s: &str) -> UpDownWord {
    s.parse().unwrap()
}

fn beads(lo: i64, row1: &[i64], row2: &[i64]) -> Symbol {
    Symbol::from_betasets(&BetaSet::from_beads(lo, row1).unwrap(), &BetaSet::from_beads(lo, row2).unwrap())
}

fn ensure(ok: bool, msg: impl Into<String>) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn region_with_right(th: &Symbol, dd: Order, right: (i64, i64)) -> Result<RegionChoice, String> {
    dsmall_regions(th, dd).into_iter().find(|r| r.right == right).ok_or(format!("no region with right {right:?}"))
}

fn golden_a() -> Check {
    let th = sym("1,1,1|2,2,1 @ -4,3");
    ensure(th.beta(Row::One) == BetaSet::from_beads(-7, &[-3, -4, -5, -7]).unwrap(), "row 1 β-set")?;
    ensure(th.beta(Row::Two) == BetaSet::from_beads(0, &[5, 4, 2, 0]).unwrap(), "row 2 β-set")?;
    ensure((-20..-7).all(|x| th.contains(Row::One, x)) && !th.contains(Row::One, -6), "row 1 tail")?;
    ensure(!th.contains(Row::Two, 1) && !th.contains(Row::Two, 3) && th.contains(Row::Two, -1), "row 2 gaps")
}

fn golden_b() -> Check {
    let th = sym("1,1,1|2,2,1 @ -4,3");
    let boxes: Vec<(Row, i64)> = addable_boxes(&th, 1, d(8)).iter().map(|b| (b.row, b.x)).collect();
    ensure(boxes == vec![(Row::One, -7), (Row::Two, 5)], format!("addable 1-boxes {boxes:?}"))?;
    let good = signature(&th, 1, d(8)).good_addable().ok_or("no good box")?;
    ensure((good.row, good.x) == (Row::Two, 5), format!("good box {good}"))
}

fn golden_c() -> Check {
    let hs = cohooks(&sym("1,1,1|2,2,1 @ -4,3"), 4);
    let mut xs: Vec<i64> = hs.iter().map(|h| h.x).collect();
    xs.sort_unstable_by(|a, b| b.cmp(a));
    ensure(xs == vec![5, 4, 2, -2] && hs.iter().all(|h| h.row == Row::Two), format!("co-hooks {xs:?}"))
}

fn golden_d() -> Check {
    let rs = dsmall_regions(&sym("1,1,1|2,2,1 @ -4,3"), d(12));
    ensure(rs.len() == 1 && rs[0].left == (-6, -1) && rs[0].right == (0, 5), format!("regions {rs:?}"))
}

fn golden_e() -> Check {
    let th = sym("2,1,1|1,1 @ -8,7");
    let r = region_with_right(&th, d(10), (5, 9))?;
    ensure(r.left == (-10, -6) && r.right.0 - r.left.1 - 1 == 10 && r.k == 1, format!("{r}"))
}

fn golden_f() -> Check {
    let th = beads(-10, &[5, 3, 2, 1, 0, -1, -2, -3, -4, -5, -6, -7, -8, -9, -10], &[-2, -4, -7, -8, -9, -10]);
    let got: Vec<((i64, i64), (i64, i64))> = dsmall_regions(&th, d(16)).iter().map(|r| (r.left, r.right)).collect();
    let want = vec![((-9, -2), (-1, 6)), ((-8, -1), (0, 7)), ((-7, 0), (1, 8)), ((-6, 1), (2, 9))];
    ensure(got == want, format!("regions {got:?}"))
}

fn golden_g() -> Check {
    let th = sym("1,1,1|2,2,1 @ -4,3");
    let word = updown_word(&th, d(12), &canonical_region(&th, d(12)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(word == w("∧∨×∨∧∧"), format!("word {word}"))?;
    let c = cup_diagram(&word);
    ensure(c.cups == vec![(2, 6), (4, 5)] && c.rays == vec![1], format!("{c:?}"))
}

fn golden_h() -> Check {
    let th = beads(-13, &[-2, -3, -4, -7, -10, -11], &[13, 10, 9, 8, 6, 2, 1, 0, -1, -2, -3, -4, -5, -6, -7, -8, -9, -10, -11, -12, -13]);
    let r = dsmall_regions(&th, d(28)).into_iter().find(|r| r.right.0 == 1).ok_or("no region starting at 1")?;
    let word = updown_word(&th, d(28), &r).map_err(|e| e.to_string())?;
    ensure(word == w("∧∧∨∨∘∧∨∧∧×∨∨∧∘"), format!("word {word}"))?;
    let c = cup_diagram(&word);
    ensure(c.cups == vec![(3, 9), (4, 6), (7, 8), (12, 13)] && c.rays == vec![1, 2, 11], format!("{c:?}"))
}

fn golden_i() -> Check {
    let th = sym("3,1|3,1,1 @ -10,9");
    let r = region_with_right(&th, d(12), (7, 12))?;
    let word = updown_word(&th, d(12), &r).map_err(|e| e.to_string())?;
    ensure(word == w("∘×∧∘∨∧"), format!("word {word}"))?;
    let labels = residue_labels(&th, d(12), &r).map_err(|e| e.to_string())?;
    let j = (1..word.len()).find(|&j| labels[j - 1] == 5).ok_or("no pair labelled 5")?;
    let up = word_e_tilde(&word, j).map_err(|e| e.to_string())?.ok_or("ẽ₅ vanishes on the word")?;
    ensure(up == w("∘×∧∘×∘"), format!("ẽ₅ word {up}"))?;
    let e = e_tilde(&th, 5, d(12)).ok_or("ẽ₅ vanishes on the symbol")?;
    ensure(e.contains(Row::Two, 11) && !e.contains(Row::Two, 12), "bead 12 → 11")?;
    ensure(updown_word(&e, d(12), &r).map_err(|e| e.to_string())? == up, "ẽ₅ symbol word")
}

fn golden_j() -> Check {
    let th = sym("3,1|3,1,1 @ -10,9");
    let word = w("∘×∧∘∨∧");
    ensure(cocore_word(&word) == w("∘×∨∘∨∨"), "cocore word")?;
    let c = cocore(&th, 6);
    let want = w("∘×∨∘∨∨").normal_form();
    let ok = dsmall_regions(&c, d(12))
        .iter()
        .filter(|r| r.k == 0)
        .any(|r| updown_word(&c, d(12), r).map(|x| x.normal_form() == want).unwrap_or(false));
    ensure(ok, format!("co-core {c} does not read ∘×∨∘∨∨"))
}

fn golden_k() -> Check {
    let b = BlockSeries::from_symbol(&sym("2,1|1 @ -4,3"), d(10)).map_err(|e| e.to_string())?;
    let words: Vec<String> = b.members.iter().map(|m| m.to_string()).collect();
    ensure(words == ["∧×∧∧∨", "∧×∧∨∧", "∧×∨∧∧", "∨×∧∧∧"], format!("members {words:?}"))?;
    ensure(b.symbols.contains(&sym("|1,1,1,1 @ -4,3")) && b.symbols.contains(&sym("2,1|1 @ -4,3")), "member symbols")
}

fn golden_l() -> Check {
    let th = sym("|3,3,3,3,3 @ 4,-5");
    let dd = d(22);
    let r = canonical_region(&th, dd).map_err(|e| e.to_string())?;
    let word = updown_word(&th, dd, &r).map_err(|e| e.to_string())?;
    ensure(is_hw_pattern(&word), format!("word {word}"))?;
    ensure(word.normal_form() == w("∧∧∧∨∨∨∨∨∘∘∘"), format!("normal form {}", word.normal_form()))?;
    let labels = residue_labels(&th, dd, &r).map_err(|e| e.to_string())?;
    for j in 1..word.len() {
        ensure(e_tilde(&th, labels[j - 1], dd).is_none(), format!("ẽ_{} acts", labels[j - 1]))?;
    }
    Ok(())
}

struct Outcome {
    name: String,
    ok: bool,
    detail: String,
}

fn timed(name: &str, budget: Duration, f: impl FnOnce() -> Check) -> Outcome {
    let t = Instant::now();
    let r = f();
    let el = t.elapsed();
    let (ok, detail) = match r {
        Ok(()) if el <= budget => (true, String::new()),
        Ok(()) => (false, format!("over budget {budget:?}")),
        Err(e) => (false, e),
    };
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{status} {name} [{el:.2?}]{}", if detail.is_empty() { String::new() } else { format!(": {detail}") });
    Outcome { name: name.to_string(), ok, detail }
}

fn report(r: Report) -> Check {
    for n in &r.notes {
        println!("    note: {n}");
    }
    match r.counterexample {
        None => {
            println!("    {} cases", r.cases);
            Ok(())
        }
        Some(c) => Err(c),
    }
}

fn orders(ds: &[i64]) -> Vec<Order> {
    ds.iter().map(|&x| d(x)).collect()
}

fn main() -> ExitCode {
    let sec = Duration::from_secs;
    let goldens: [Golden; 12] = [
        ("a: β-sets of the running example", golden_a),
        ("b: addable 1-boxes at d = 8, good one in row 2", golden_b),
        ("c: four 4-co-hooks in row 2", golden_c),
        ("d: d = 12 regions [-6,-1] / [0,5]", golden_d),
        ("e: d = 10 regions with middle length 10", golden_e),
        ("f: four region choices at d = 16", golden_f),
        ("g: ∧∨×∨∧∧ with cups (2,6),(4,5) and ray 1", golden_g),
        ("h: d = 28 word and cup diagram", golden_h),
        ("i: ẽ₅ on ∘×∧∘∨∧ moves bead 12 to 11", golden_i),
        ("j: co-core word ∘×∨∘∨∨", golden_j),
        ("k: four-member d = 10 block", golden_k),
        ("l: d = 22 rectangle is highest weight", golden_l),
    ];
    let mut out = Vec::new();
    for (name, f) in goldens {
        out.push(timed(&format!("golden {name}"), sec(1), f));
    }
    out.push(timed("three-way agreement of decomposition matrices", sec(600), || {
        report(decomp_agreement(8, 8, 2024))
    }));
    out.push(timed("canonical-basis shape and value at 1 (N ≤ 8)", sec(600), || report(kl_checks(8, 2024))));
    out.push(timed("canonical basis for N = 8 with four ∧ (70 elements)", sec(60), || {
        let b = canonical_basis(8, 4).map_err(|e| e.to_string())?;
        ensure(b.len() == 70, format!("{} elements", b.len()))
    }));
    out.push(timed("crystal conformance, d ∈ {4,6,8,10}, |λ| ≤ 8", sec(300), || {
        report(crystal_conformance(&orders(&[4, 6, 8, 10]), 8))
    }));
    out.push(timed("Fock commutator, 1000 symbols per d ∈ {2,4,6,8}", sec(30), || {
        report(fock_commutator(&orders(&[2, 4, 6, 8]), 1000, 42, 8))
    }));
    out.push(timed("co-core independent of removal order", sec(600), || report(cocore_orders(8, 4, 5))));
    out.push(timed("co-core of a d-small symbol: middle length 0, ∧ → ∨", sec(600), || {
        report(cocore_lemma(8, 4, 5))
    }));
    out.push(timed("blocks: co-core test equals ∧/∨ rearrangements, d ≤ 10", sec(600), || {
        report(blocks_lemma(&orders(&[2, 4, 6, 8, 10]), 8))
    }));
    out.push(timed("structure of every block matrix, d ≤ 10", sec(600), || {
        report(block_structure(&orders(&[2, 4, 6, 8, 10]), 8))
    }));
    let failed: Vec<&Outcome> = out.iter().filter(|o| !o.ok).collect();
    println!("\n{} of {} criteria passed", out.len() - failed.len(), out.len());
    for f in &failed {
        println!("FAILED {}: {}", f.name, f.detail);
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
