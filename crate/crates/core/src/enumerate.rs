//! Exhaustive enumeration of partitions, bipartitions and d-small symbols.

use crate::crystal::Order;
use crate::dsmall::is_dsmall;
use crate::symbols::{Bipartition, Charge, Partition, Symbol};
use crate::word::{Letter, UpDownWord};

fn parts_at_most(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition::new(prefix.clone()).expect("weakly decreasing"));
        return;
    }
    for p in (1..=n.min(max)).rev() {
        prefix.push(p);
        parts_at_most(n - p, p, prefix, out);
        prefix.pop();
    }
}

/// Partitions of `n` in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    parts_at_most(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn bipartitions(n: u32) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in 0..=n {
        for a in partitions(k) {
            for b in partitions(n - k) {
                out.push(Bipartition::new(a.clone(), b));
            }
        }
    }
    out
}

pub fn bipartitions_up_to(n: u32) -> Vec<Bipartition> {
    (0..=n).flat_map(bipartitions).collect()
}

/// d-small symbols with `|λ| ≤ max_size`, `s₁ = 0` and `|s₂| ≤ max_defect`.
/// Shifting both charges by the same amount preserves d-smallness, so this
/// covers every d-small symbol up to translation.
pub fn dsmall_symbols(d: Order, max_size: u32, max_defect: i64) -> Vec<Symbol> {
    let bps = bipartitions_up_to(max_size);
    let mut out = Vec::new();
    for s2 in -max_defect..=max_defect {
        for bp in &bps {
            let th = Symbol::new(bp.clone(), Charge::new(0, s2));
            if is_dsmall(&th, d) {
                out.push(th);
            }
        }
    }
    out
}

/// One representative word per block: every `×`/`∘`/slot skeleton of the
/// given length, with each possible number of `∧` in the slots (filled first).
pub fn block_representatives(len: usize, max_slots: usize) -> Vec<UpDownWord> {
    let mut out = Vec::new();
    let n_skel = 3usize.pow(len as u32);
    for code in 0..n_skel {
        let mut c = code;
        let skel: Vec<u8> = (0..len)
            .map(|_| {
                let t = (c % 3) as u8;
                c /= 3;
                t
            })
            .collect();
        let slots = skel.iter().filter(|&&t| t == 2).count();
        if slots > max_slots {
            continue;
        }
        for n_up in 0..=slots {
            let mut seen = 0;
            let letters = skel
                .iter()
                .map(|&t| match t {
                    0 => Letter::Cross,
                    1 => Letter::Circle,
                    _ => {
                        seen += 1;
                        if seen <= n_up {
                            Letter::Up
                        } else {
                            Letter::Down
                        }
                    }
                })
                .collect();
            out.push(UpDownWord::new(letters));
        }
    }
    out
}
