//! CSV, JSON, aligned text and TikZ renderings.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::decomp::DecompMatrix;
use crate::kl::CanonicalBasis;
use crate::symbols::{Row, Symbol};
use crate::word::{cup_diagram, UpDownWord};

pub const SCHEMA: u32 = 1;

fn word_str(w: &UpDownWord, ascii: bool) -> String {
    if ascii {
        w.ascii()
    } else {
        w.to_string()
    }
}

pub fn matrix_csv(m: &DecompMatrix, ascii: bool) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(m.order.iter().map(|w| word_str(w, ascii)));
    wtr.write_record(&header).expect("in-memory write");
    for (w, row) in m.order.iter().zip(&m.entries) {
        let mut rec = vec![word_str(w, ascii)];
        rec.extend(row.iter().map(|x| x.to_string()));
        wtr.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("flush")).expect("utf-8")
}

pub fn matrix_json(m: &DecompMatrix) -> Value {
    json!({
        "schema": SCHEMA,
        "order": m.order.iter().map(|w| w.ascii()).collect::<Vec<_>>(),
        "entries": m.entries,
    })
}

/// Rows are `Δ_Ψ`, columns `P_Θ`.
pub fn matrix_text(m: &DecompMatrix, ascii: bool) -> String {
    let names: Vec<String> = m.order.iter().map(|w| word_str(w, ascii)).collect();
    let width = names.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let pad = |s: &str| format!("{}{s}", " ".repeat(width - s.chars().count()));
    let mut out = String::new();
    let head: Vec<String> = names.iter().map(|s| pad(s)).collect();
    writeln!(out, "{} {}", " ".repeat(width), head.join(" ")).unwrap();
    for (name, row) in names.iter().zip(&m.entries) {
        let cells: Vec<String> = row.iter().map(|x| pad(&x.to_string())).collect();
        writeln!(out, "{} {}", pad(name), cells.join(" ")).unwrap();
    }
    out
}

pub fn matrix_tex(m: &DecompMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "\\begin{{array}}{{r|{}}}", "c".repeat(m.len())).unwrap();
    let head: Vec<String> = m.order.iter().map(|w| format!("\\mathtt{{{}}}", w.ascii())).collect();
    writeln!(out, " & {} \\\\ \\hline", head.join(" & ")).unwrap();
    for (w, row) in m.order.iter().zip(&m.entries) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(out, "\\mathtt{{{}}} & {} \\\\", w.ascii(), cells.join(" & ")).unwrap();
    }
    out.push_str("\\end{array}\n");
    out
}

pub fn cups_json(w: &UpDownWord) -> Value {
    let c = cup_diagram(w);
    json!({
        "schema": SCHEMA,
        "letters": w.ascii(),
        "cups": c.cups,
        "rays": c.rays,
    })
}

fn tex_letter(c: char) -> &'static str {
    match c {
        'u' => "$\\wedge$",
        'd' => "$\\vee$",
        'x' => "$\\times$",
        _ => "$\\circ$",
    }
}

/// Letters on a line with cups and rays drawn below it.
pub fn cups_tikz(w: &UpDownWord) -> String {
    let c = cup_diagram(w);
    let mut out = String::from("\\begin{tikzpicture}[scale=.5]\n");
    for (j, ch) in w.ascii().chars().enumerate() {
        writeln!(out, "  \\node at ({},0) {{{}}};", j + 1, tex_letter(ch)).unwrap();
    }
    let depth = c.cups.iter().map(|(a, b)| b - a).max().unwrap_or(1) as f64 * 0.5 + 1.0;
    for &(a, b) in &c.cups {
        let h = (b - a) as f64 * 0.5 + 0.5;
        writeln!(out, "  \\draw ({a},-.4) .. controls ({a},-{h}) and ({b},-{h}) .. ({b},-.4);").unwrap();
    }
    for &r in &c.rays {
        writeln!(out, "  \\draw ({r},-.4) -- ({r},-{depth});").unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// Two-row abacus on `[lo, hi]`, row 2 on top.
pub fn abacus_tikz(th: &Symbol, lo: i64, hi: i64) -> String {
    let mut out = String::from("\\begin{tikzpicture}[scale=.5]\n");
    for (y, row) in [(1, Row::Two), (0, Row::One)] {
        writeln!(out, "  \\node at ({},{y}) {{{}}};", lo - 2, row).unwrap();
        for x in lo..=hi {
            let style = if th.contains(row, x) { "fill" } else { "draw" };
            writeln!(out, "  \\{style} ({x},{y}) circle (.2);").unwrap();
        }
    }
    for x in lo..=hi {
        writeln!(out, "  \\node[font=\\tiny] at ({x},-1) {{{x}}};").unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// One record per nonzero coefficient: `x, y, exponent, coefficient`.
pub fn kl_table_csv(b: &CanonicalBasis) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["x", "y", "exponent", "coefficient"]).expect("in-memory write");
    for (x, bx) in b.iter() {
        for (y, p) in bx.iter() {
            for (e, c) in p.terms() {
                let (xs, ys) = (x.letters(), y.letters());
                let xs: String = xs.iter().map(|l| l.ascii()).collect();
                let ys: String = ys.iter().map(|l| l.ascii()).collect();
                wtr.write_record([xs, ys, e.to_string(), c.to_string()]).expect("in-memory write");
            }
        }
    }
    String::from_utf8(wtr.into_inner().expect("flush")).expect("utf-8")
}

pub fn kl_table_json(b: &CanonicalBasis) -> Value {
    let elements: Vec<Value> = b
        .iter()
        .map(|(x, bx)| {
            let terms: Vec<Value> = bx
                .iter()
                .map(|(y, p)| json!({ "y": y, "poly": p.terms().collect::<Vec<_>>() }))
                .collect();
            json!({ "x": x, "length": x.length(), "terms": terms })
        })
        .collect();
    json!({ "schema": SCHEMA, "n": b.n, "n_up": b.n_up, "elements": elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{decomp_matrix, BlockSeries, Method};

    fn two() -> DecompMatrix {
        decomp_matrix(&BlockSeries::from_word(&"∨∧".parse().unwrap()), Method::Closed).unwrap()
    }

    #[test]
    fn csv_and_json() {
        assert_eq!(matrix_csv(&two(), true), ",ud,du\nud,1,1\ndu,0,1\n");
        assert_eq!(matrix_json(&two()).to_string(), r#"{"entries":[[1,1],[0,1]],"order":["ud","du"],"schema":1}"#);
    }

    #[test]
    fn text_table() {
        assert_eq!(matrix_text(&two(), false), "   ∧∨ ∨∧\n∧∨  1  1\n∨∧  0  1\n");
    }

    #[test]
    fn cups() {
        let v = cups_json(&"∧∨×∨∧∧".parse().unwrap());
        assert_eq!(v["cups"], json!([[2, 6], [4, 5]]));
        assert_eq!(v["rays"], json!([1]));
        assert!(cups_tikz(&"∨∧".parse().unwrap()).contains("controls (1,-1) and (2,-1)"));
    }

    #[test]
    fn kl_dump() {
        let b = crate::kl::canonical_basis(2, 1).unwrap();
        assert_eq!(kl_table_csv(&b), "x,y,exponent,coefficient\nud,ud,0,1\ndu,ud,1,1\ndu,du,0,1\n");
        assert_eq!(kl_table_json(&b)["elements"][1]["x"], json!("du"));
    }
}
